//! Finite and eventually periodic subsets of the naturals.
//!
//! An [`EpSet`] is stored as a preperiod word of length `P` followed by a period
//! word of length `Q` that repeats forever. Every constructor returns the
//! canonical form (smallest period, then smallest preperiod), so structural
//! equality is extensional equality.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Finite subset of the naturals, stored sorted and duplicate-free.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteSet {
    elems: Vec<usize>,
}

impl FiniteSet {
    /// Builds a set from arbitrary elements, sorting and deduplicating.
    pub fn new<I: IntoIterator<Item = usize>>(elems: I) -> Self {
        let mut elems: Vec<usize> = elems.into_iter().collect();
        elems.sort_unstable();
        elems.dedup();
        FiniteSet { elems }
    }

    pub fn empty() -> Self {
        FiniteSet::default()
    }

    /// `{lo, lo+1, ..., hi}`
    pub fn range(lo: usize, hi: usize) -> Self {
        FiniteSet {
            elems: (lo..=hi).collect(),
        }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, k: usize) -> bool {
        self.elems.binary_search(&k).is_ok()
    }

    pub fn max(&self) -> Option<usize> {
        self.elems.last().copied()
    }

    pub fn min(&self) -> Option<usize> {
        self.elems.first().copied()
    }

    pub fn without_zero(&self) -> FiniteSet {
        FiniteSet {
            elems: self.elems.iter().copied().filter(|&x| x != 0).collect(),
        }
    }

    /// Promotes to an eventually periodic set with an all-zero period word.
    pub fn to_ep(&self) -> EpSet {
        let plen = self.max().map_or(0, |m| m + 1);
        EpSet::from_fn(plen, 1, |x| self.contains(x))
    }
}

/// Eventually periodic subset of the naturals, always canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EpSet {
    pre: Vec<bool>,
    off: Vec<bool>,
}

impl EpSet {
    /// Builds from the text-form fields. `pre` must lie in `[0, plen)`, `off`
    /// in `[0, qlen)`, and `qlen >= 1`.
    pub fn new(plen: usize, pre: &[usize], qlen: usize, off: &[usize]) -> Result<Self> {
        if qlen == 0 {
            return Err(Error::InvalidParameter(
                "period length must be at least 1".into(),
            ));
        }
        if let Some(&x) = pre.iter().find(|&&x| x >= plen) {
            return Err(Error::InvalidParameter(format!(
                "preperiod element {x} outside [0,{plen})"
            )));
        }
        if let Some(&x) = off.iter().find(|&&x| x >= qlen) {
            return Err(Error::InvalidParameter(format!(
                "period offset {x} outside [0,{qlen})"
            )));
        }
        let mut pw = vec![false; plen];
        pre.iter().for_each(|&x| pw[x] = true);
        let mut ow = vec![false; qlen];
        off.iter().for_each(|&x| ow[x] = true);
        Ok(Self::from_words(pw, ow))
    }

    /// Samples `member` on `[0, plen + qlen)`. The caller guarantees that the
    /// set is periodic with period `qlen` from `plen` on.
    pub fn from_fn<F: Fn(usize) -> bool>(plen: usize, qlen: usize, member: F) -> Self {
        assert!(qlen >= 1);
        let pre = (0..plen).map(&member).collect();
        let off = (plen..plen + qlen).map(&member).collect();
        Self::from_words(pre, off)
    }

    fn from_words(mut pre: Vec<bool>, mut off: Vec<bool>) -> Self {
        let q = off.len();
        if let Some(d) = (1..=q)
            .filter(|&d| q.is_multiple_of(d))
            .find(|&d| (d..q).all(|i| off[i] == off[i % d]))
        {
            off.truncate(d);
        }
        while let Some(&last) = pre.last() {
            if last != *off.last().unwrap() {
                break;
            }
            pre.pop();
            off.rotate_right(1);
        }
        EpSet { pre, off }
    }

    pub fn naturals() -> Self {
        Self::from_words(Vec::new(), vec![true])
    }

    /// Preperiod length `P`.
    pub fn plen(&self) -> usize {
        self.pre.len()
    }

    /// Period length `Q`.
    pub fn qlen(&self) -> usize {
        self.off.len()
    }

    /// Preperiod elements, ascending.
    pub fn pre(&self) -> impl Iterator<Item = usize> + '_ {
        self.pre
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i)
    }

    /// Period offsets, ascending.
    pub fn off(&self) -> impl Iterator<Item = usize> + '_ {
        self.off
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i)
    }

    pub fn contains(&self, k: usize) -> bool {
        match k.checked_sub(self.plen()) {
            None => self.pre[k],
            Some(d) => self.off[d % self.qlen()],
        }
    }

    /// True when the period word is empty of elements, i.e. the set is finite.
    pub fn is_finite(&self) -> bool {
        !self.off.contains(&true)
    }

    fn aligned<F: Fn(bool, bool) -> bool>(&self, other: &EpSet, op: F) -> EpSet {
        let plen = self.plen().max(other.plen());
        let qlen = self.qlen().lcm(&other.qlen());
        EpSet::from_fn(plen, qlen, |x| op(self.contains(x), other.contains(x)))
    }
}

/// A finite or eventually periodic subset of the naturals in canonical form.
///
/// Sets whose period word is empty are always stored as [`Set::Finite`], so two
/// `Set`s are equal exactly when they have the same elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Set {
    Finite(FiniteSet),
    Periodic(EpSet),
}

/// Boolean operation selector for [`bool_op`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoolOp {
    Union,
    Intersect,
    Diff,
    Complement,
}

impl From<FiniteSet> for Set {
    fn from(s: FiniteSet) -> Self {
        Set::Finite(s)
    }
}

impl From<EpSet> for Set {
    fn from(s: EpSet) -> Self {
        if s.is_finite() {
            Set::Finite(FiniteSet::new(s.pre()))
        } else {
            Set::Periodic(s)
        }
    }
}

impl Set {
    pub fn empty() -> Self {
        Set::Finite(FiniteSet::empty())
    }

    pub fn naturals() -> Self {
        Set::Periodic(EpSet::naturals())
    }

    pub fn finite<I: IntoIterator<Item = usize>>(elems: I) -> Self {
        Set::Finite(FiniteSet::new(elems))
    }

    /// Builds from the `ep(...)` fields.
    pub fn periodic(plen: usize, pre: &[usize], qlen: usize, off: &[usize]) -> Result<Self> {
        EpSet::new(plen, pre, qlen, off).map(Set::from)
    }

    pub fn from_fn<F: Fn(usize) -> bool>(plen: usize, qlen: usize, member: F) -> Self {
        EpSet::from_fn(plen, qlen, member).into()
    }

    pub fn contains(&self, k: usize) -> bool {
        match self {
            Set::Finite(s) => s.contains(k),
            Set::Periodic(s) => s.contains(k),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Set::Finite(s) if s.is_empty())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Set::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&FiniteSet> {
        match self {
            Set::Finite(s) => Some(s),
            Set::Periodic(_) => None,
        }
    }

    pub fn to_ep(&self) -> EpSet {
        match self {
            Set::Finite(s) => s.to_ep(),
            Set::Periodic(s) => s.clone(),
        }
    }

    /// Length of the region `[0, P + Q)` that determines the set.
    pub fn span(&self) -> usize {
        match self {
            Set::Finite(s) => s.max().map_or(0, |m| m + 1),
            Set::Periodic(s) => s.plen() + s.qlen(),
        }
    }

    pub fn union(&self, other: &Set) -> Set {
        bool_op(BoolOp::Union, self, Some(other))
    }

    pub fn intersect(&self, other: &Set) -> Set {
        bool_op(BoolOp::Intersect, self, Some(other))
    }

    pub fn difference(&self, other: &Set) -> Set {
        bool_op(BoolOp::Diff, self, Some(other))
    }

    pub fn complement(&self) -> Set {
        bool_op(BoolOp::Complement, self, None)
    }

    pub fn is_subset(&self, other: &Set) -> bool {
        self.difference(other).is_empty()
    }

    pub fn translate(&self, t: usize) -> Set {
        match self {
            Set::Finite(s) => Set::finite(s.elements().iter().map(|x| x + t)),
            Set::Periodic(s) => {
                Set::from_fn(s.plen() + t, s.qlen(), |x| x >= t && s.contains(x - t))
            }
        }
    }

    /// `{x in self : x <= n}`
    pub fn prefix(&self, n: usize) -> FiniteSet {
        match self {
            Set::Finite(s) => FiniteSet::new(s.elements().iter().copied().filter(|&x| x <= n)),
            Set::Periodic(s) => FiniteSet::new((0..=n).filter(|&x| s.contains(x))),
        }
    }

    /// Iterates the members in increasing order (unbounded for periodic sets).
    pub fn iter(&self) -> Box<dyn Iterator<Item = usize> + '_> {
        match self {
            Set::Finite(s) => Box::new(s.elements().iter().copied()),
            Set::Periodic(s) => Box::new((0..).filter(move |&x| s.contains(x))),
        }
    }
}

/// Applies a boolean operation. `other` is ignored for `Complement` and
/// required otherwise.
pub fn bool_op(op: BoolOp, a: &Set, other: Option<&Set>) -> Set {
    if op == BoolOp::Complement {
        let a = a.to_ep();
        return Set::from_fn(a.plen(), a.qlen(), |x| !a.contains(x));
    }
    let b = other.expect("binary set operation needs two operands");
    let f = |x: bool, y: bool| match op {
        BoolOp::Union => x || y,
        BoolOp::Intersect => x && y,
        BoolOp::Diff => x && !y,
        BoolOp::Complement => unreachable!(),
    };
    if let (Set::Finite(x), Set::Finite(y)) = (a, b) {
        let all = x.elements().iter().chain(y.elements()).copied();
        return Set::finite(all.filter(|&k| f(x.contains(k), y.contains(k))));
    }
    a.to_ep().aligned(&b.to_ep(), f).into()
}

pub fn translate(s: &Set, t: usize) -> Set {
    s.translate(t)
}

/// Minkowski sum `{e + t : e in e_set, t in t_set}`.
pub fn minkowski(e_set: &FiniteSet, t_set: &Set) -> Result<Set> {
    let emax = e_set.max().ok_or(Error::EmptySummand)?;
    Ok(match t_set {
        Set::Finite(t) => Set::finite(
            e_set
                .elements()
                .iter()
                .flat_map(|e| t.elements().iter().map(move |x| e + x)),
        ),
        Set::Periodic(t) => Set::from_fn(t.plen() + emax, t.qlen(), |x| {
            e_set
                .elements()
                .iter()
                .any(|&e| x >= e && t.contains(x - e))
        }),
    })
}

pub fn normalize_equal(a: &Set, b: &Set) -> bool {
    a == b
}

pub fn prefix(s: &Set, n: usize) -> FiniteSet {
    s.prefix(n)
}

fn write_list<I: Iterator<Item = usize>>(f: &mut fmt::Formatter<'_>, it: I) -> fmt::Result {
    for (i, x) in it.enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

impl fmt::Display for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("fin(")?;
        write_list(f, self.elems.iter().copied())?;
        f.write_str(")")
    }
}

impl fmt::Display for EpSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ep(P={};pre=", self.plen())?;
        write_list(f, self.pre())?;
        write!(f, ";Q={};off=", self.qlen())?;
        write_list(f, self.off())?;
        f.write_str(")")
    }
}

impl fmt::Display for Set {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Set::Finite(s) => s.fmt(f),
            Set::Periodic(s) => s.fmt(f),
        }
    }
}

/// Cursor over set text forms; positions in errors are byte offsets.
struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            input: self.text.to_string(),
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        if self.rest().starts_with(lit) {
            self.pos += lit.len();
            Ok(())
        } else {
            Err(self.err(format!("expected `{lit}`")))
        }
    }

    fn number(&mut self) -> Result<usize> {
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.err("expected a natural number"));
        }
        let n = self.rest()[..digits]
            .parse()
            .map_err(|_| self.err("number too large"))?;
        self.pos += digits;
        Ok(n)
    }

    /// Comma-separated strictly ascending naturals, ended by `end` (not consumed).
    fn list(&mut self, end: char) -> Result<Vec<usize>> {
        let mut out: Vec<usize> = Vec::new();
        if self.rest().starts_with(end) {
            return Ok(out);
        }
        loop {
            let at = self.pos;
            let n = self.number()?;
            if out.last().is_some_and(|&last| last >= n) {
                self.pos = at;
                return Err(self.err("elements must be strictly ascending"));
            }
            out.push(n);
            if self.rest().starts_with(',') {
                self.pos += 1;
            } else {
                return Ok(out);
            }
        }
    }
}

impl FromStr for Set {
    type Err = Error;

    /// Parses `fin(1,4,6)` or `ep(P=0;pre=;Q=2;off=1)`.
    fn from_str(text: &str) -> Result<Self> {
        let mut c = Cursor { text, pos: 0 };
        let set = if c.rest().starts_with("fin(") {
            c.expect("fin(")?;
            let elems = c.list(')')?;
            c.expect(")")?;
            Set::finite(elems)
        } else if c.rest().starts_with("ep(") {
            c.expect("ep(P=")?;
            let plen = c.number()?;
            c.expect(";pre=")?;
            let pre_at = c.pos;
            let pre = c.list(';')?;
            c.expect(";Q=")?;
            let q_at = c.pos;
            let qlen = c.number()?;
            c.expect(";off=")?;
            let off_at = c.pos;
            let off = c.list(')')?;
            c.expect(")")?;
            let at = |pos: usize, msg: String| Error::Parse {
                input: text.to_string(),
                pos,
                msg,
            };
            if qlen == 0 {
                return Err(at(q_at, "period length must be at least 1".into()));
            }
            if let Some(x) = pre.iter().find(|&&x| x >= plen) {
                return Err(at(
                    pre_at,
                    format!("preperiod element {x} is not below P={plen}"),
                ));
            }
            if let Some(x) = off.iter().find(|&&x| x >= qlen) {
                return Err(at(off_at, format!("offset {x} is not below Q={qlen}")));
            }
            Set::periodic(plen, &pre, qlen, &off)?
        } else {
            return Err(c.err("expected `fin(` or `ep(`"));
        };
        if c.pos != text.len() {
            return Err(c.err("trailing characters"));
        }
        Ok(set)
    }
}
