//! The threshold `t_m`: the unique root in (1/2, 1) of
//! `f(x) = (2x - 1)(1 + x^m) - x^m`.
//!
//! `f` is strictly increasing on [0,1] with `f(1/2) = -2^-m` and `f(1) = 1`, so
//! plain bisection on exact rational endpoints yields a certified bracket.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::arith::{to_decimal_truncated, Polynomial, Rational};
use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-12;

/// Certified bracket `lo < t_m < hi` with `hi - lo <= tol`.
#[derive(Clone, Debug, PartialEq)]
pub struct Threshold {
    pub m: usize,
    pub value: f64,
    pub tol: f64,
    pub lo: Rational,
    pub hi: Rational,
}

impl Threshold {
    /// True when `r <= lo`, which certifies `r < t_m`.
    pub fn certifies_below(&self, r: &Rational) -> bool {
        r <= &self.lo
    }
}

fn check_m(m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidParameter(
            "block length m must be at least 1".into(),
        ));
    }
    Ok(())
}

/// `f` as a polynomial: `2x^(m+1) - 2x^m + 2x - 1`.
pub fn f_poly(m: usize) -> Result<Polynomial> {
    check_m(m)?;
    let two_x_minus_one = Polynomial::from_i64s(&[-1, 2]);
    let one_plus = &Polynomial::one() + &Polynomial::monomial(BigInt::one(), m);
    Ok(&(&two_x_minus_one * &one_plus) - &Polynomial::monomial(BigInt::one(), m))
}

pub fn f_eval(m: usize, x: &Rational) -> Result<Rational> {
    check_m(m)?;
    let xm = num_traits::pow(x.clone(), m);
    let two = Rational::from_integer(2.into());
    Ok((two * x - Rational::one()) * (Rational::one() + &xm) - xm)
}

fn half() -> Rational {
    Rational::new(1.into(), 2.into())
}

/// Bisects until `done(lo, hi)` holds.
fn bisect<F>(m: usize, mut lo: Rational, mut hi: Rational, done: F) -> (Rational, Rational)
where
    F: Fn(&Rational, &Rational) -> bool,
{
    let f = f_poly(m).expect("m checked by caller");
    while !done(&lo, &hi) {
        let mid = (&lo + &hi) * half();
        if f.eval(&mid).is_negative() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

pub fn solve_threshold(m: usize, tol: f64) -> Result<Threshold> {
    check_m(m)?;
    let tol_q = Rational::from_float(tol)
        .filter(|t| t.is_positive())
        .ok_or_else(|| Error::InvalidParameter(format!("tolerance must be positive, got {tol}")))?;
    let (lo, hi) = bisect(m, half(), Rational::one(), |lo, hi| hi - lo <= tol_q);
    let mid = (&lo + &hi) * half();
    Ok(Threshold {
        m,
        value: crate::arith::rational_to_f64(&mid),
        tol,
        lo,
        hi,
    })
}

/// First `digits` decimals of `t_m`, truncated. The bracket is narrowed until
/// both endpoints truncate to the same string, so every digit is certified.
pub fn threshold_digits(m: usize, digits: usize) -> Result<String> {
    check_m(m)?;
    if digits > 200 {
        return Err(Error::InvalidParameter(format!(
            "at most 200 digits, got {digits}"
        )));
    }
    let (lo, _) = bisect(m, half(), Rational::one(), |lo, hi| {
        to_decimal_truncated(lo, digits) == to_decimal_truncated(hi, digits)
    });
    Ok(to_decimal_truncated(&lo, digits))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn f_examples() {
        assert_eq!(f_eval(3, &q(1, 2)).unwrap(), q(-1, 8));
        for m in 1..=12 {
            assert_eq!(f_eval(m, &q(1, 1)).unwrap(), q(1, 1));
            assert_eq!(f_eval(m, &q(1, 2)).unwrap(), q(-1, 1 << m));
        }
        // m = 1: f = 2x^2 - 1
        assert_eq!(f_eval(1, &q(7, 10)).unwrap(), q(-1, 50));
        assert!(f_eval(0, &q(1, 2)).is_err());
        assert_eq!(f_poly(1).unwrap(), Polynomial::from_i64s(&[-1, 0, 2]));
    }

    #[test]
    fn poly_and_direct_evaluation_agree() {
        for m in 1..=8 {
            let f = f_poly(m).unwrap();
            for k in 0..=10 {
                let x = q(k, 10);
                assert_eq!(f.eval(&x), f_eval(m, &x).unwrap());
            }
        }
    }

    #[test]
    fn reported_values() {
        let t1 = solve_threshold(1, DEFAULT_TOL).unwrap();
        assert!((t1.value - 0.5f64.sqrt()).abs() < 1e-11);
        assert!((solve_threshold(4, DEFAULT_TOL).unwrap().value - 0.539).abs() <= 1e-3);
        assert!((solve_threshold(10, DEFAULT_TOL).unwrap().value - 0.5005).abs() <= 5e-4);
    }

    #[test]
    fn bracket_is_certified() {
        for m in 1..=10 {
            let t = solve_threshold(m, 1e-9).unwrap();
            assert!(f_eval(m, &t.lo).unwrap().is_negative());
            assert!(f_eval(m, &t.hi).unwrap().is_positive());
            assert!(&t.hi - &t.lo <= Rational::from_float(1e-9).unwrap());
        }
        assert!(solve_threshold(1, 0.0).is_err());
        assert!(solve_threshold(1, -1.0).is_err());
    }

    #[test]
    fn digits_are_truncated() {
        // 1/sqrt(2) = 0.70710678118654...
        assert_eq!(threshold_digits(1, 10).unwrap(), "0.7071067811");
        assert_eq!(threshold_digits(1, 3).unwrap(), "0.707");
    }

    #[test]
    fn residual_shrinks_with_tolerance() {
        for m in [1, 3, 7] {
            let coarse = solve_threshold(m, 1e-4).unwrap();
            let fine = solve_threshold(m, 1e-10).unwrap();
            let f = f_poly(m).unwrap();
            assert!(f.eval_f64(fine.value).abs() < f.eval_f64(coarse.value).abs().max(1e-12));
        }
    }
}
