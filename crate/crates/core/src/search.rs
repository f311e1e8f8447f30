//! Exhaustive search for independent events at a fixed rational ratio.
//!
//! For `r = p/q` and atoms up to `N`, the mass of atom `k >= 1` is
//! `(q - p) p^(k-1) q^(N-k) / q^N`. The common factor cancels from the product
//! rule, so with `P(B) = u/v` a finite `A` is independent of `B` exactly when
//! `v * W(A & B) = u * W(A)` for the integer weights `W_k = p^(k-1) q^(N-k)`.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arith::{check_ratio, format_rational, Rational};
use crate::constructions::{build_b, shift_pair};
use crate::error::{Error, Result};
use crate::measure::measure_at;
use crate::sets::{minkowski, FiniteSet, Set};
use crate::thresholds::{solve_threshold, DEFAULT_TOL};

/// Largest atom index the enumeration accepts (`2^(N+1)` subsets).
pub const MAX_BOUND: usize = 24;
pub const DEFAULT_BOUND: usize = 20;

/// Low bits enumerated from a shared table; high bits pick the partition.
const LOW_BITS: usize = 12;

fn check_bound(n: usize) -> Result<()> {
    if n > MAX_BOUND {
        return Err(Error::BoundTooLarge(n, MAX_BOUND));
    }
    Ok(())
}

fn mask_to_set(mask: u64) -> FiniteSet {
    FiniteSet::new((0..64).filter(|k| mask >> k & 1 == 1))
}

/// Integer weights `W_k` for `k = 0..=bound` (`W_0 = 0`).
fn weights(r: &Rational, bound: usize) -> Vec<BigInt> {
    let (p, q) = (r.numer(), r.denom());
    (0..=bound)
        .map(|k| {
            if k == 0 {
                BigInt::zero()
            } else {
                num_traits::pow(p.clone(), k - 1) * num_traits::pow(q.clone(), bound - k)
            }
        })
        .collect()
}

/// Masks `m` over atoms `0..=bound` with `v * W(m & b) == u * W(m)`.
fn matching_masks_u128(w: &[u128], b_mask: u64, u: u128, v: u128) -> Vec<u64> {
    let atoms = w.len();
    let low = atoms.min(LOW_BITS);
    let low_table = |sel: u64| -> Vec<u128> {
        (0u64..1 << low)
            .map(|m| {
                (0..low)
                    .filter(|k| (m & sel) >> k & 1 == 1)
                    .map(|k| w[k])
                    .sum()
            })
            .collect()
    };
    let all = low_table(u64::MAX);
    let in_b = low_table(b_mask);
    (0u64..1 << (atoms - low))
        .into_par_iter()
        .flat_map_iter(|hi| {
            let base = hi << low;
            let (hs, hb) = (low..atoms)
                .filter(|k| base >> k & 1 == 1)
                .fold((0u128, 0u128), |(s, sb), k| {
                    (s + w[k], if b_mask >> k & 1 == 1 { sb + w[k] } else { sb })
                });
            let (all, in_b) = (&all, &in_b);
            (0u64..1 << low).filter_map(move |lo| {
                let sa = hs + all[lo as usize];
                let sab = hb + in_b[lo as usize];
                (v * sab == u * sa).then_some(base | lo)
            })
        })
        .collect()
}

fn matching_masks_big(w: &[BigInt], b_mask: u64, u: &BigInt, v: &BigInt) -> Vec<u64> {
    let atoms = w.len();
    (0u64..1 << atoms)
        .into_par_iter()
        .filter(|&m| {
            let (sa, sab) = (0..atoms).filter(|k| m >> k & 1 == 1).fold(
                (BigInt::zero(), BigInt::zero()),
                |(s, sb), k| {
                    let sb = if b_mask >> k & 1 == 1 { sb + &w[k] } else { sb };
                    (s + &w[k], sb)
                },
            );
            v * sab == u * sa
        })
        .collect()
}

/// All nontrivial `A` inside `{0, ..., bound}` with `P(A & B) = P(A) P(B)` at
/// `r`, sorted lexicographically. `A` and `A + {0}` are both reported.
pub fn enumerate_independent(b: &Set, r: &Rational, bound: usize) -> Result<Vec<FiniteSet>> {
    check_ratio(r)?;
    check_bound(bound)?;
    let pb = measure_at(b, r)?;
    let (u, v) = (pb.numer().clone(), pb.denom().clone());
    let w = weights(r, bound);
    let b_mask = (0..=bound)
        .filter(|&k| b.contains(k))
        .fold(0u64, |acc, k| acc | 1 << k);

    let total: BigInt = w.iter().sum();
    let fits = |x: &BigInt| (x * &total).to_u128().is_some();
    let masks = if fits(&u) && fits(&v) {
        let w: Vec<u128> = w.iter().map(|x| x.to_u128().unwrap()).collect();
        matching_masks_u128(&w, b_mask, u.to_u128().unwrap(), v.to_u128().unwrap())
    } else {
        matching_masks_big(&w, b_mask, &u, &v)
    };
    // Nontrivial: at least one atom of positive mass.
    let mut found: Vec<FiniteSet> = masks
        .into_iter()
        .filter(|m| m >> 1 != 0)
        .map(mask_to_set)
        .collect();
    found.sort();
    Ok(found)
}

/// How `r` compares with the certified bracket around `t_{n-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdCheck {
    pub m: usize,
    pub r: Rational,
    pub lo: Rational,
    pub hi: Rational,
    pub certified_below: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConverseReport {
    pub n: usize,
    pub r: Rational,
    pub bound: usize,
    pub found: Vec<FiniteSet>,
    /// Independent sets whose positive-mass part is not `{0, n-1} + T`.
    pub violations: Vec<FiniteSet>,
    pub threshold_check: ThresholdCheck,
}

/// True when `a` minus the null atom equals `{0, n-1} + T` for a nonempty
/// `T` inside `B(n)`. Such a `T` can only be `a & B(n)`.
pub fn is_shifted_form(a: &FiniteSet, n: usize, b: &Set) -> bool {
    let a0 = Set::Finite(a.without_zero());
    let t = a0.intersect(b);
    if t.is_empty() {
        return false;
    }
    minkowski(&shift_pair(n), &t).is_ok_and(|s| s == a0)
}

/// Enumerates every independent partner of `B(n)` inside `{0..bound}` and
/// reports those not of the form `{0, n-1} + T`. Requires `r` to be certified
/// below `t_{n-1}`.
pub fn verify_converse(n: usize, r: &Rational, bound: usize) -> Result<ConverseReport> {
    let b = build_b(n)?;
    check_ratio(r)?;
    check_bound(bound)?;
    let m = n - 1;
    let t = solve_threshold(m, DEFAULT_TOL)?;
    let threshold_check = ThresholdCheck {
        m,
        r: r.clone(),
        lo: t.lo.clone(),
        hi: t.hi.clone(),
        certified_below: t.certifies_below(r),
    };
    if !threshold_check.certified_below {
        return Err(Error::Precondition(format!(
            "r = {} is not certified below t_{m}, which lies in [{}, {}]",
            format_rational(r),
            format_rational(&t.lo),
            format_rational(&t.hi),
        )));
    }
    let found = enumerate_independent(&b, r, bound)?;
    let violations = found
        .iter()
        .filter(|a| !is_shifted_form(a, n, &b))
        .cloned()
        .collect();
    Ok(ConverseReport {
        n,
        r: r.clone(),
        bound,
        found,
        violations,
        threshold_check,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct LemmaBound {
    /// Smallest element of `L`, written `s = (2i - 1) m + j` with `1 <= j <= m`.
    pub s: usize,
    pub i: usize,
    pub j: usize,
    pub lhs: Rational,
    pub rhs: Rational,
    pub holds: bool,
}

/// Tail bound for a set `L` avoiding `B(n)`:
/// `P(L) <= r^(s-1) - r^(2im) / (1 + r^m)`.
pub fn lemma_bound_check(l: &FiniteSet, n: usize, r: &Rational) -> Result<LemmaBound> {
    let b = build_b(n)?;
    check_ratio(r)?;
    let m = n - 1;
    let s = l
        .min()
        .ok_or_else(|| Error::Precondition("L must be nonempty".into()))?;
    let l_set = Set::Finite(l.clone());
    if let Some(x) = l_set.intersect(&b).iter().next() {
        return Err(Error::Precondition(format!("L meets B({n}) at {x}")));
    }
    if s < n {
        return Err(Error::Precondition(format!(
            "smallest element {s} of L must be at least n = {n}"
        )));
    }
    let i = ((s - 1) / m).div_ceil(2);
    let j = (s - 1) % m + 1;
    debug_assert_eq!(s, (2 * i - 1) * m + j);
    let lhs = measure_at(&l_set, r)?;
    let rm = num_traits::pow(r.clone(), m);
    let rhs = num_traits::pow(r.clone(), s - 1)
        - num_traits::pow(r.clone(), 2 * i * m) / (Rational::one() + rm);
    Ok(LemmaBound {
        s,
        i,
        j,
        holds: lhs <= rhs,
        lhs,
        rhs,
    })
}
