//! Explicit families of independent events.
//!
//! Everything is built around the block set `B(n)`: blocks `{1, ..., m}` of
//! length `m = n - 1` repeating with period `2m`. Its measure is `1/(1 + r^m)`
//! and every `A = {0, m} + T` with `T` a nonempty subset of `B(n)` is
//! independent of it for all `r`.

use num_bigint::BigInt;
use num_traits::One;

use crate::arith::{Polynomial, Rational};
use crate::error::{Error, Result};
use crate::sets::{minkowski, FiniteSet, Set};

/// Largest total period `prod 2(n_i - 1)` that [`build_sequence`] materializes.
pub const SEQUENCE_PERIOD_CAP: usize = 1 << 16;

fn block_len(n: usize) -> Result<usize> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "n must be at least 2, got {n}"
        )));
    }
    Ok(n - 1)
}

/// `{0, n - 1}`
pub fn shift_pair(n: usize) -> FiniteSet {
    FiniteSet::new([0, n - 1])
}

pub fn build_b(n: usize) -> Result<Set> {
    let m = block_len(n)?;
    Set::periodic(0, &[], 2 * m, &(1..=m).collect::<Vec<_>>())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSpec {
    pub n: usize,
    pub t: Set,
    pub a: Set,
    pub b: Set,
}

/// `A = {0, n-1} + T` paired with `B(n)`.
pub fn build_pair(n: usize, t: &Set) -> Result<PairSpec> {
    let b = build_b(n)?;
    if t.is_empty() {
        return Err(Error::InvalidParameter("T must be nonempty".into()));
    }
    if !t.is_subset(&b) {
        return Err(Error::NotSubset(t.to_string(), b.to_string()));
    }
    let a = minkowski(&shift_pair(n), t)?;
    Ok(PairSpec {
        n,
        t: t.clone(),
        a,
        b,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleSpec {
    pub n: usize,
    pub b: usize,
    /// `(n - 1) / (2(b - 1))`
    pub k: usize,
    pub t: Set,
    /// The finite block pattern inside `{1, ..., n-1}`.
    pub b1_prime: FiniteSet,
    pub b1: Set,
    /// `{0, b-1} + T`
    pub t1: Set,
    pub a1: Set,
    pub a2: Set,
    pub big_b: Set,
}

impl TripleSpec {
    pub fn sets(&self) -> [Set; 3] {
        [self.a1.clone(), self.a2.clone(), self.big_b.clone()]
    }
}

/// Blocks of length `b - 1` inside the first block of `B(n)`, repeated with
/// period `2(n - 1)`.
pub fn build_b1(n: usize, b: usize) -> Result<(usize, FiniteSet, Set)> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "triples need n >= 3, got {n}"
        )));
    }
    if !(2..n).contains(&b) {
        return Err(Error::InvalidParameter(format!(
            "b must lie in 2..={}, got {b}",
            n - 1
        )));
    }
    let m = n - 1;
    let w = b - 1;
    if !m.is_multiple_of(2 * w) {
        return Err(Error::InvalidParameter(format!(
            "2(b-1) must divide n-1 for (n, b) = ({n}, {b})"
        )));
    }
    let k = m / (2 * w);
    let b1_prime = FiniteSet::new((0..k).flat_map(|i| 2 * i * w + 1..=(2 * i + 1) * w));
    let b1 = Set::periodic(0, &[], 2 * m, b1_prime.elements())?;
    Ok((k, b1_prime, b1))
}

pub fn build_triple(n: usize, b: usize, t: &Set) -> Result<TripleSpec> {
    let (k, b1_prime, b1) = build_b1(n, b)?;
    if t.is_empty() {
        return Err(Error::InvalidParameter("T must be nonempty".into()));
    }
    if !t.is_subset(&b1) {
        return Err(Error::NotSubset(t.to_string(), b1.to_string()));
    }
    let outer = shift_pair(n);
    let t1 = minkowski(&FiniteSet::new([0, b - 1]), t)?;
    let a1 = minkowski(&outer, &t1)?;
    let a2 = minkowski(&outer, &b1)?;
    Ok(TripleSpec {
        n,
        b,
        k,
        t: t.clone(),
        b1_prime,
        b1,
        t1,
        a1,
        a2,
        big_b: build_b(n)?,
    })
}

/// `A = {1, ..., n}` and `B = {n, 2n, 3n, ...}`.
pub fn build_remark2(n: usize) -> Result<(FiniteSet, Set)> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let a = FiniteSet::range(1, n);
    let b = Set::from_fn(1, n, |x| x > 0 && x % n == 0);
    Ok((a, b))
}

/// The pair `({1,4,6}, odds)` together with `r^4 + r^2 - 1`, whose root
/// `r = 1/sqrt(phi)` makes the pair independent.
pub fn build_remark1() -> (FiniteSet, Set, Polynomial) {
    let odds = build_b(2).expect("n = 2 is valid");
    (
        FiniteSet::new([1, 4, 6]),
        odds,
        Polynomial::from_i64s(&[-1, 0, 1, 0, 1]),
    )
}

fn check_classes(s: &Set) -> Result<()> {
    if s.contains(0) {
        return Err(Error::InvalidParameter(
            "class 0 is empty and cannot be lifted".into(),
        ));
    }
    Ok(())
}

/// Replaces each class index `k` by block `k` of `B(n)`, i.e.
/// `{(2k-2)(n-1)+1, ..., (2k-1)(n-1)}`.
pub fn quotient_lift(n: usize, s: &Set) -> Result<Set> {
    let m = block_len(n)?;
    check_classes(s)?;
    let member = |x: usize| x >= 1 && (x - 1) % (2 * m) < m && s.contains((x - 1) / (2 * m) + 1);
    Ok(match s {
        Set::Finite(f) => Set::finite(
            f.elements()
                .iter()
                .flat_map(|&k| (2 * k - 2) * m + 1..=(2 * k - 1) * m),
        ),
        Set::Periodic(e) => Set::from_fn(2 * m * e.plen() + 1, 2 * m * e.qlen(), member),
    })
}

/// Lift followed by the Minkowski sum with `{0, n-1}`. The measure of the
/// result equals the measure of `s` under the ratio `r^(2(n-1))`.
pub fn lower(n: usize, s: &Set) -> Result<Set> {
    let lifted = quotient_lift(n, s)?;
    if lifted.is_empty() {
        return Ok(lifted);
    }
    minkowski(&shift_pair(n), &lifted)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceSpec {
    pub params: Vec<usize>,
    pub sets: Vec<Set>,
}

/// `S_0 = B(n_0)` and `S_i = lower_{n_0}(lower_{n_1}(... lower_{n_{i-1}}(B(n_i))))`.
pub fn build_sequence(params: &[usize]) -> Result<SequenceSpec> {
    if params.is_empty() {
        return Err(Error::InvalidParameter(
            "need at least one parameter".into(),
        ));
    }
    let mut period = 1usize;
    for &n in params {
        let m = block_len(n)?;
        period = period
            .checked_mul(2 * m)
            .filter(|&p| p <= SEQUENCE_PERIOD_CAP)
            .ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "total period of {params:?} exceeds {SEQUENCE_PERIOD_CAP}"
                ))
            })?;
    }
    let sets = (0..params.len())
        .map(|i| {
            params[..i]
                .iter()
                .rev()
                .try_fold(build_b(params[i])?, |s, &n| lower(n, &s))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SequenceSpec {
        params: params.to_vec(),
        sets,
    })
}

/// Result of the finite-space check with `P(k) = q^k` on `{1, ..., n}`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteSpaceCheck {
    pub n: usize,
    pub s: usize,
    pub q: f64,
    pub q_lo: Rational,
    pub q_hi: Rational,
    pub residual: f64,
    pub a: FiniteSet,
    pub b: FiniteSet,
}

pub const FINITE_SPACE_THRESHOLD: f64 = 1e-12;

/// For `n = s t` with `s, t >= 2`: `A = {1..s}`, `B = {1, s+1, ..., (t-1)s+1}`,
/// and `q` the positive root of `q + q^2 + ... + q^n = 1`.
pub fn finite_space_check(n: usize, s: usize) -> Result<FiniteSpaceCheck> {
    if s < 2 || !n.is_multiple_of(s) || n / s < 2 {
        return Err(Error::InvalidParameter(format!(
            "need n = s*t with s, t >= 2, got n = {n}, s = {s}"
        )));
    }
    let t = n / s;
    let a = FiniteSet::range(1, s);
    let b = FiniteSet::new((0..t).map(|i| i * s + 1));

    let mut g = Polynomial::from_exponents(1..=n);
    g = &g - &Polynomial::one();
    let half = Rational::new(BigInt::one(), 2.into());
    let (mut lo, mut hi) = (Rational::from_integer(0.into()), Rational::one());
    for _ in 0..64 {
        let mid = (&lo + &hi) * &half;
        if g.eval(&mid) < Rational::from_integer(0.into()) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let q = (&lo + &hi) * &half;
    let mass = |set: &FiniteSet| -> Rational {
        set.elements()
            .iter()
            .map(|&k| num_traits::pow(q.clone(), k))
            .sum()
    };
    let both = FiniteSet::new(a.elements().iter().copied().filter(|&k| b.contains(k)));
    let residual = mass(&both) - mass(&a) * mass(&b);
    Ok(FiniteSpaceCheck {
        n,
        s,
        q: crate::arith::rational_to_f64(&q),
        q_lo: lo,
        q_hi: hi,
        residual: crate::arith::rational_to_f64(&residual).abs(),
        a,
        b,
    })
}
