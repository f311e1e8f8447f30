//! Pairwise, mutual, and conditional independence under `P_r`.
//!
//! A family of `k` sets is mutually independent when the product rule holds
//! for every sub-family of size at least two, which is `2^k - k - 1`
//! conditions. Each condition is checked in one of three modes:
//!
//! * symbolic: equality of rational functions, i.e. for every `r` in (0,1);
//! * at a rational `r`, with exact arithmetic;
//! * modulo a polynomial: the cross-multiplied difference must be divisible by
//!   it, so the identity holds at each of its roots.

use std::fmt;

use rayon::prelude::*;

use crate::arith::{check_ratio, format_rational, Polynomial, Rational, RationalFunction};
use crate::error::{Error, Result};
use crate::measure::{measure_at, measure_symbolic};
use crate::sets::Set;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Symbolic,
    AtRational(Rational),
    ModMinpoly(Polynomial),
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Symbolic => f.write_str("symbolic"),
            Mode::AtRational(r) => write!(f, "at_rational({})", format_rational(r)),
            Mode::ModMinpoly(p) => write!(f, "mod_minpoly({p})"),
        }
    }
}

/// One side of a product-rule condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Symbolic(RationalFunction),
    Exact(Rational),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Symbolic(v) => v.fmt(f),
            Value::Exact(v) => f.write_str(&format_rational(v)),
        }
    }
}

/// `P(intersection of the indexed sets)` against the product of their measures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub indices: Vec<usize>,
    pub lhs: Value,
    pub rhs: Value,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependenceReport {
    pub mode: Mode,
    pub conditions: Vec<Condition>,
    pub independent: bool,
}

impl IndependenceReport {
    fn new(mode: Mode, conditions: Vec<Condition>) -> Self {
        let independent = conditions.iter().all(|c| c.passed);
        IndependenceReport {
            mode,
            conditions,
            independent,
        }
    }

    pub fn failed(&self) -> impl Iterator<Item = &Condition> {
        self.conditions.iter().filter(|c| !c.passed)
    }
}

/// All index subsets of size at least two, in lexicographic order.
pub fn condition_subsets(k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0u64..1 << k)
        .filter(|m| m.count_ones() >= 2)
        .map(|m| (0..k).filter(|i| m >> i & 1 == 1).collect())
        .collect();
    out.sort();
    out
}

fn intersection(sets: &[Set], idx: &[usize]) -> Set {
    idx[1..]
        .iter()
        .fold(sets[idx[0]].clone(), |acc, &i| acc.intersect(&sets[i]))
}

fn check_family(sets: &[Set]) -> Result<()> {
    if sets.len() < 2 {
        return Err(Error::TooFewSets(sets.len()));
    }
    Ok(())
}

/// Symbolic products: lhs and rhs of every condition as rational functions.
fn symbolic_sides(sets: &[Set]) -> Vec<(Vec<usize>, RationalFunction, RationalFunction)> {
    let singles: Vec<RationalFunction> = sets.par_iter().map(measure_symbolic).collect();
    condition_subsets(sets.len())
        .into_par_iter()
        .map(|idx| {
            let lhs = measure_symbolic(&intersection(sets, &idx));
            let rhs = idx
                .iter()
                .fold(RationalFunction::one(), |acc, &i| &acc * &singles[i]);
            (idx, lhs, rhs)
        })
        .collect()
}

/// Checks every product-rule condition as an identity in `r`.
pub fn indep_family_symbolic(sets: &[Set]) -> Result<IndependenceReport> {
    check_family(sets)?;
    let conditions = symbolic_sides(sets)
        .into_iter()
        .map(|(indices, lhs, rhs)| Condition {
            passed: lhs == rhs,
            indices,
            lhs: Value::Symbolic(lhs),
            rhs: Value::Symbolic(rhs),
        })
        .collect();
    Ok(IndependenceReport::new(Mode::Symbolic, conditions))
}

/// Checks every condition by exact arithmetic at the given ratio.
pub fn indep_family_at(sets: &[Set], r: &Rational) -> Result<IndependenceReport> {
    check_family(sets)?;
    check_ratio(r)?;
    let singles: Vec<Rational> = sets
        .par_iter()
        .map(|s| measure_at(s, r))
        .collect::<Result<_>>()?;
    let conditions = condition_subsets(sets.len())
        .into_par_iter()
        .map(|indices| {
            let lhs = measure_at(&intersection(sets, &indices), r)?;
            let rhs: Rational = indices.iter().map(|&i| singles[i].clone()).product();
            Ok(Condition {
                passed: lhs == rhs,
                indices,
                lhs: Value::Exact(lhs),
                rhs: Value::Exact(rhs),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IndependenceReport::new(
        Mode::AtRational(r.clone()),
        conditions,
    ))
}

/// Checks every condition modulo `minpoly`: a condition passes when `minpoly`
/// divides the cross-multiplied difference of its two sides. Irreducibility of
/// `minpoly` is not checked.
pub fn indep_family_mod(sets: &[Set], minpoly: &Polynomial) -> Result<IndependenceReport> {
    check_family(sets)?;
    if minpoly.is_constant() {
        return Err(Error::InvalidParameter(format!(
            "minimal polynomial must be nonconstant, got {minpoly}"
        )));
    }
    let conditions = symbolic_sides(sets)
        .into_iter()
        .map(|(indices, lhs, rhs)| {
            let den = lhs.den() * rhs.den();
            if !den.gcd(minpoly).is_constant() {
                return Err(Error::SharedFactor(minpoly.to_string()));
            }
            Ok(Condition {
                passed: lhs.cross_difference(&rhs).is_divisible_by(minpoly),
                indices,
                lhs: Value::Symbolic(lhs),
                rhs: Value::Symbolic(rhs),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IndependenceReport::new(
        Mode::ModMinpoly(minpoly.clone()),
        conditions,
    ))
}

/// Conditional independence of `t1` and `t2` given `b`, for `t1, t2` inside
/// `b`: checks `P(t1 & t2) P(b) = P(t1) P(t2)` as an identity in `r`.
pub fn cond_indep_given(t1: &Set, t2: &Set, b: &Set) -> Result<IndependenceReport> {
    for t in [t1, t2] {
        if !t.is_subset(b) {
            return Err(Error::NotSubset(t.to_string(), b.to_string()));
        }
    }
    let pb = measure_symbolic(b);
    if pb.is_zero() {
        return Err(Error::Precondition(format!("{b} has measure zero")));
    }
    let lhs = &measure_symbolic(&t1.intersect(t2)) * &pb;
    let rhs = &measure_symbolic(t1) * &measure_symbolic(t2);
    let cond = Condition {
        indices: vec![0, 1],
        passed: lhs == rhs,
        lhs: Value::Symbolic(lhs),
        rhs: Value::Symbolic(rhs),
    };
    Ok(IndependenceReport::new(Mode::Symbolic, vec![cond]))
}

/// True when the measure is identically 0 or identically 1.
pub fn is_trivial(s: &Set) -> bool {
    let m = measure_symbolic(s);
    m.is_zero() || m.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Polynomial;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn b_of(n: usize) -> Set {
        let m = n - 1;
        Set::periodic(0, &[], 2 * m, &(1..=m).collect::<Vec<_>>()).unwrap()
    }

    fn odds() -> Set {
        b_of(2)
    }

    #[test]
    fn subset_order_and_count() {
        assert_eq!(
            condition_subsets(3),
            vec![vec![0, 1], vec![0, 1, 2], vec![0, 2], vec![1, 2]]
        );
        for k in 2..=6 {
            assert_eq!(condition_subsets(k).len(), (1 << k) - k - 1);
        }
    }

    #[test]
    fn symbolic_examples() {
        assert!(
            indep_family_symbolic(&[Set::finite([1, 2]), odds()])
                .unwrap()
                .independent
        );
        assert!(
            !indep_family_symbolic(&[Set::finite([1]), odds()])
                .unwrap()
                .independent
        );
        let rep = indep_family_symbolic(&[b_of(2), b_of(3), b_of(5)]).unwrap();
        assert_eq!(rep.conditions.len(), 4);
        assert!(rep.independent);
        // triple intersection {1}+8N has measure (1-r)/(1-r^8)
        let triple = &rep.conditions[1];
        assert_eq!(triple.indices, vec![0, 1, 2]);
        let expected = RationalFunction::new(
            Polynomial::from_i64s(&[1, -1]),
            Polynomial::from_i64s(&[1, 0, 0, 0, 0, 0, 0, 0, -1]),
        )
        .unwrap();
        assert_eq!(triple.lhs, Value::Symbolic(expected));
        assert!(matches!(
            indep_family_symbolic(&[odds()]),
            Err(Error::TooFewSets(1))
        ));
    }

    #[test]
    fn exact_examples() {
        let rep = indep_family_at(&[Set::finite([1, 2]), odds()], &q(1, 2)).unwrap();
        assert!(rep.independent);
        assert_eq!(rep.conditions[0].lhs, Value::Exact(q(1, 2)));
        assert!(
            !indep_family_at(&[Set::finite([1, 4, 6]), odds()], &q(1, 2))
                .unwrap()
                .independent
        );
        assert!(
            indep_family_at(&[Set::naturals(), Set::finite([3, 9])], &q(5, 7))
                .unwrap()
                .independent
        );
        assert!(indep_family_at(&[odds(), odds()], &q(3, 2)).is_err());
    }

    #[test]
    fn modular_examples() {
        let golden = Polynomial::from_i64s(&[-1, 0, 1, 0, 1]);
        let pair = [Set::finite([1, 4, 6]), odds()];
        assert!(indep_family_mod(&pair, &golden).unwrap().independent);
        let half = Polynomial::from_i64s(&[-1, 2]);
        assert!(!indep_family_mod(&pair, &half).unwrap().independent);
        assert!(
            indep_family_mod(&[Set::finite([1, 2]), odds()], &golden)
                .unwrap()
                .independent
        );
        // 1+r divides the denominator of P(odds)
        assert!(matches!(
            indep_family_mod(&pair, &Polynomial::from_i64s(&[1, 1])),
            Err(Error::SharedFactor(_))
        ));
        assert!(indep_family_mod(&pair, &Polynomial::from_i64s(&[3])).is_err());
    }

    #[test]
    fn conditional_examples() {
        let b3 = b_of(3);
        let t2 = Set::periodic(0, &[], 4, &[1]).unwrap();
        assert!(
            cond_indep_given(&Set::finite([1, 2]), &t2, &b3)
                .unwrap()
                .independent
        );
        assert!(cond_indep_given(&b3, &b3, &b3).unwrap().independent);
        assert!(
            !cond_indep_given(&Set::finite([1]), &Set::finite([2]), &b3)
                .unwrap()
                .independent
        );
        assert!(matches!(
            cond_indep_given(&Set::finite([3]), &Set::finite([1]), &b3),
            Err(Error::NotSubset(..))
        ));
    }

    #[test]
    fn triviality() {
        assert!(is_trivial(&Set::finite([0])));
        assert!(is_trivial(&Set::naturals().difference(&Set::finite([0]))));
        assert!(!is_trivial(&Set::finite([1])));
        assert!(is_trivial(&Set::empty()));
    }

    fn arb_set() -> impl Strategy<Value = Set> {
        prop_oneof![
            prop::collection::vec(0usize..10, 0..5).prop_map(Set::finite),
            (0usize..4, 1usize..5, any::<u64>())
                .prop_map(|(p, q, bits)| { Set::from_fn(p, q, |x| bits >> (x % 64) & 1 == 1) }),
            (2usize..5).prop_map(b_of),
        ]
    }

    proptest! {
        #[test]
        fn complement_stability(a in arb_set(), b in arb_set()) {
            let x = indep_family_symbolic(&[a.clone(), b.clone()]).unwrap().independent;
            let y = indep_family_symbolic(&[a, b.complement()]).unwrap().independent;
            prop_assert_eq!(x, y);
        }

        #[test]
        fn permutation_invariance(a in arb_set(), b in arb_set(), c in arb_set()) {
            let f = |v: [&Set; 3]| {
                indep_family_symbolic(&v.map(Clone::clone)).unwrap().independent
            };
            let base = f([&a, &b, &c]);
            prop_assert_eq!(base, f([&b, &a, &c]));
            prop_assert_eq!(base, f([&c, &b, &a]));
            prop_assert_eq!(base, f([&b, &c, &a]));
        }

        #[test]
        fn modes_agree(a in arb_set(), b in arb_set(), n in 1i64..9, d in 2i64..10) {
            prop_assume!(n < d);
            let sets = [a, b];
            let r = q(n, d);
            let sym = indep_family_symbolic(&sets).unwrap().independent;
            let at = indep_family_at(&sets, &r).unwrap();
            if sym {
                prop_assert!(at.independent);
            }
            // d*r - n encodes the same ratio; repunit denominators never vanish on (0,1).
            let lin = Polynomial::from_i64s(&[-n, d]);
            let md = indep_family_mod(&sets, &lin).unwrap();
            prop_assert_eq!(md.independent, at.independent);
            prop_assert_eq!(md.conditions.len(), 1);
        }
    }
}
