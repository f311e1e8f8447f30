//! The geometric measure `P_r`: atom `k >= 1` has mass `(1-r) r^(k-1)` and
//! atom `0` has mass zero.

use num_bigint::BigInt;
use num_traits::One;

use crate::arith::{check_ratio, Polynomial, Rational, RationalFunction};
use crate::error::{Error, Result};
use crate::sets::Set;

/// `1 + r + ... + r^(q-1)`
pub(crate) fn repunit(q: usize) -> Polynomial {
    Polynomial::from_exponents(0..q)
}

/// Exact measure as a rational function of `r`.
///
/// For a periodic set each residue `o` contributes the progression
/// `P+o, P+o+Q, ...`, whose mass is `r^(e-1) / (1 + r + ... + r^(Q-1))` with `e`
/// its first element of index at least one.
pub fn measure_symbolic(s: &Set) -> RationalFunction {
    let one_minus_r = Polynomial::from_i64s(&[1, -1]);
    match s {
        Set::Finite(f) => {
            let sum =
                Polynomial::from_exponents(f.elements().iter().filter(|&&k| k >= 1).map(|k| k - 1));
            RationalFunction::from_poly(&one_minus_r * &sum)
        }
        Set::Periodic(e) => {
            let (p, q) = (e.plen(), e.qlen());
            let den = repunit(q);
            let pre = Polynomial::from_exponents(e.pre().filter(|&k| k >= 1).map(|k| k - 1));
            let tail = Polynomial::from_exponents(e.off().map(|o| {
                let first = if p + o == 0 { q } else { p + o };
                first - 1
            }));
            let num = &(&(&one_minus_r * &den) * &pre) + &tail;
            RationalFunction::new(num, den).expect("repunit is nonzero")
        }
    }
}

/// Exact measure at a rational ratio `0 < r < 1`.
pub fn measure_at(s: &Set, r: &Rational) -> Result<Rational> {
    check_ratio(r)?;
    Ok(measure_symbolic(s)
        .eval(r)
        .expect("measure denominators have no roots in (0,1)"))
}

/// Truncated-series approximation. Sums atoms `1..=K` where `K` is the least
/// index with `r^K <= tol`; the omitted tail is exactly `r^K`.
pub fn measure_numeric(s: &Set, r: f64, tol: f64) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::RatioOutOfRange(r.to_string()));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let mut total = 0.0;
    let mut weight = 1.0 - r; // mass of atom k, starting at k = 1
    let mut tail = r; // r^k
    let mut k = 1usize;
    loop {
        if s.contains(k) {
            total += weight;
        }
        if tail <= tol {
            return Ok(total);
        }
        weight *= r;
        tail *= r;
        k += 1;
    }
}

/// Measure of a single atom, `(1-r) r^(k-1)`, or zero for `k = 0`.
pub fn atom_mass(k: usize, r: &Rational) -> Rational {
    if k == 0 {
        return Rational::from_integer(BigInt::from(0));
    }
    (Rational::one() - r) * num_traits::pow(r.clone(), k - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::FiniteSet;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64s(c)
    }

    fn b_of(n: usize) -> Set {
        let m = n - 1;
        Set::periodic(0, &[], 2 * m, &(1..=m).collect::<Vec<_>>()).unwrap()
    }

    fn odds() -> Set {
        b_of(2)
    }

    #[test]
    fn symbolic_examples() {
        for n in 2..=6 {
            let mut den = vec![0i64; n];
            den[0] = 1;
            den[n - 1] = 1;
            let expected = RationalFunction::new(Polynomial::one(), p(&den)).unwrap();
            assert_eq!(measure_symbolic(&b_of(n)), expected, "n={n}");
        }
        assert_eq!(measure_symbolic(&Set::naturals()), RationalFunction::one());
        // (1-r)/r (r + r^2) = 1 - r^2
        assert_eq!(
            measure_symbolic(&Set::finite([1, 2])),
            RationalFunction::from_poly(p(&[1, 0, -1]))
        );
        assert!(measure_symbolic(&Set::finite([0])).is_zero());
        let evens = Set::periodic(0, &[], 2, &[0]).unwrap();
        // r/(1+r): atom 0 is excluded
        assert_eq!(
            measure_symbolic(&evens),
            RationalFunction::new(p(&[0, 1]), p(&[1, 1])).unwrap()
        );
    }

    #[test]
    fn exact_examples() {
        assert_eq!(measure_at(&Set::finite([1]), &q(1, 2)).unwrap(), q(1, 2));
        assert_eq!(measure_at(&odds(), &q(1, 3)).unwrap(), q(3, 4));
        assert_eq!(measure_at(&Set::finite([0]), &q(2, 7)).unwrap(), q(0, 1));
        assert!(measure_at(&odds(), &q(1, 1)).is_err());
        assert!(measure_at(&odds(), &q(0, 1)).is_err());
        assert!(measure_at(&odds(), &q(-1, 2)).is_err());
    }

    #[test]
    fn numeric_examples() {
        let v = measure_numeric(&odds(), 0.5, 1e-9).unwrap();
        assert!((v - 2.0 / 3.0).abs() <= 1e-9);
        let v = measure_numeric(&Set::naturals(), 0.9, 1e-12).unwrap();
        assert!((v - 1.0).abs() <= 1e-12);
        assert_eq!(measure_numeric(&Set::empty(), 0.3, 1e-6).unwrap(), 0.0);
        assert!(measure_numeric(&odds(), 1.0, 1e-6).is_err());
        assert!(measure_numeric(&odds(), 0.5, 0.0).is_err());
    }

    #[test]
    fn atom_masses_sum_to_finite_measure() {
        let s = FiniteSet::new([0, 2, 3, 7]);
        let r = q(2, 5);
        let direct: Rational = s.elements().iter().map(|&k| atom_mass(k, &r)).sum();
        assert_eq!(measure_at(&Set::Finite(s), &r).unwrap(), direct);
    }

    fn arb_set() -> impl Strategy<Value = Set> {
        prop_oneof![
            prop::collection::vec(0usize..14, 0..6).prop_map(Set::finite),
            (0usize..5, 1usize..7, any::<u64>())
                .prop_map(|(p, q, bits)| { Set::from_fn(p, q, |x| bits >> (x % 64) & 1 == 1) }),
        ]
    }

    fn arb_ratio() -> impl Strategy<Value = Rational> {
        (2i64..30).prop_flat_map(|d| (1..d).prop_map(move |n| q(n, d)))
    }

    proptest! {
        #[test]
        fn additive(a in arb_set(), b in arb_set()) {
            let lhs = &measure_symbolic(&a) + &measure_symbolic(&b);
            let rhs = &measure_symbolic(&a.union(&b)) + &measure_symbolic(&a.intersect(&b));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn values_in_unit_interval(a in arb_set(), r in arb_ratio()) {
            let v = measure_at(&a, &r).unwrap();
            prop_assert!(v >= q(0, 1) && v <= q(1, 1));
        }

        #[test]
        fn translation_scales_by_r(a in arb_set()) {
            let a = a.difference(&Set::finite([0]));
            let shifted = measure_symbolic(&a.translate(1));
            let scaled = &measure_symbolic(&a) * &RationalFunction::from_poly(p(&[0, 1]));
            prop_assert_eq!(shifted, scaled);
        }

        #[test]
        fn numeric_within_tolerance(a in arb_set(), r in arb_ratio(), e in 3i32..12) {
            let tol = 10f64.powi(-e);
            let exact = crate::arith::rational_to_f64(&measure_at(&a, &r).unwrap());
            let approx = measure_numeric(&a, crate::arith::rational_to_f64(&r), tol).unwrap();
            prop_assert!((exact - approx).abs() <= tol + 1e-14);
        }

        #[test]
        fn null_atom_is_invisible(a in arb_set()) {
            let without = a.difference(&Set::finite([0]));
            prop_assert_eq!(measure_symbolic(&a), measure_symbolic(&without));
        }
    }
}
