//! Exact set functions `f: 2^N → ℚ ∪ {−∞}` stored as dense tables, price
//! vectors, and the concave conjugate `g(p) = max_X f(X) − p(X)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::rational::{format_rational, Rational};
use crate::subset::{all_subsets, Subset, MAX_GROUND};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetFnError {
    #[error("ground set size {0} outside 1..={MAX_GROUND}")]
    GroundSize(usize),
    #[error("table has {got} entries, expected {expected}")]
    TableLength { expected: usize, got: usize },
    #[error("effective domain is empty")]
    EmptyDomain,
    #[error("subset {subset} is not contained in a ground set of size {n}")]
    SubsetOutOfRange { subset: Subset, n: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("slot count {slots} below r - r' = {required}")]
    TooFewSlots { slots: usize, required: usize },
}

/// Ground set `{1, …, n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroundSet(usize);

impl GroundSet {
    pub fn new(n: usize) -> Result<Self, SetFnError> {
        if (1..=MAX_GROUND).contains(&n) {
            Ok(GroundSet(n))
        } else {
            Err(SetFnError::GroundSize(n))
        }
    }

    pub fn size(self) -> usize {
        self.0
    }

    pub fn full(self) -> Subset {
        Subset::full(self.0)
    }

    pub fn contains(self, x: Subset) -> bool {
        x.is_subset_of(self.full())
    }

    pub fn table_len(self) -> usize {
        1 << self.0
    }
}

/// A finite rational or `−∞`. The derived order puts `−∞` below every
/// finite value.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtValue {
    NegInfinity,
    Finite(Rational),
}

impl ExtValue {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtValue::Finite(_))
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtValue::Finite(v) => Some(v),
            ExtValue::NegInfinity => None,
        }
    }

    pub fn zero() -> Self {
        ExtValue::Finite(Rational::zero())
    }
}

impl From<Rational> for ExtValue {
    fn from(v: Rational) -> Self {
        ExtValue::Finite(v)
    }
}

impl Add for &ExtValue {
    type Output = ExtValue;

    fn add(self, rhs: &ExtValue) -> ExtValue {
        match (self, rhs) {
            (ExtValue::Finite(a), ExtValue::Finite(b)) => ExtValue::Finite(a + b),
            _ => ExtValue::NegInfinity,
        }
    }
}

impl Add for ExtValue {
    type Output = ExtValue;

    fn add(self, rhs: ExtValue) -> ExtValue {
        &self + &rhs
    }
}

impl Add<&Rational> for &ExtValue {
    type Output = ExtValue;

    fn add(self, rhs: &Rational) -> ExtValue {
        match self {
            ExtValue::Finite(a) => ExtValue::Finite(a + rhs),
            ExtValue::NegInfinity => ExtValue::NegInfinity,
        }
    }
}

impl fmt::Display for ExtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtValue::Finite(v) => f.write_str(&format_rational(v)),
            ExtValue::NegInfinity => f.write_str("-inf"),
        }
    }
}

/// Vector of exact prices indexed by ground-set elements (1-based accessors).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PriceVector(Vec<Rational>);

impl PriceVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        PriceVector(entries)
    }

    pub fn zeros(n: usize) -> Self {
        PriceVector(vec![Rational::zero(); n])
    }

    /// `scale · e_i`.
    pub fn unit(n: usize, i: usize, scale: Rational) -> Self {
        let mut p = Self::zeros(n);
        p.0[i - 1] = scale;
        p
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.0
    }

    /// Price of element `i` (1-based).
    pub fn get(&self, i: usize) -> &Rational {
        &self.0[i - 1]
    }

    pub fn set(&mut self, i: usize, v: Rational) {
        self.0[i - 1] = v;
    }

    /// `p(X) = Σ_{i∈X} p_i`.
    pub fn sum_over(&self, x: Subset) -> Rational {
        let mut acc = Rational::zero();
        for e in x.elements() {
            acc += &self.0[e - 1];
        }
        acc
    }

    /// `self + scale · e_i`.
    pub fn bumped(&self, i: usize, scale: &Rational) -> Self {
        let mut p = self.clone();
        p.0[i - 1] += scale;
        p
    }

    pub fn join(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "price vector lengths differ");
        PriceVector(self.0.iter().zip(&other.0).map(|(a, b)| a.max(b).clone()).collect())
    }

    pub fn meet(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "price vector lengths differ");
        PriceVector(self.0.iter().zip(&other.0).map(|(a, b)| a.min(b).clone()).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "price vector lengths differ");
        PriceVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "price vector lengths differ");
        PriceVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn concat(&self, other: &Self) -> Self {
        PriceVector(self.0.iter().chain(&other.0).cloned().collect())
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Serialize for PriceVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        crate::rational::serde_vec::serialize(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for PriceVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        crate::rational::serde_vec::deserialize(d).map(PriceVector)
    }
}

impl fmt::Display for PriceVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&format_rational(v))?;
        }
        f.write_str(")")
    }
}

/// Dense table over all `2^n` subsets with a nonempty effective domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFn {
    ground: GroundSet,
    table: Vec<ExtValue>,
    dom: Vec<Subset>,
}

impl SetFn {
    pub fn new(n: usize, table: Vec<ExtValue>) -> Result<Self, SetFnError> {
        let ground = GroundSet::new(n)?;
        if table.len() != ground.table_len() {
            return Err(SetFnError::TableLength {
                expected: ground.table_len(),
                got: table.len(),
            });
        }
        let dom: Vec<Subset> = all_subsets(n)
            .filter(|x| table[x.mask() as usize].is_finite())
            .collect();
        if dom.is_empty() {
            return Err(SetFnError::EmptyDomain);
        }
        Ok(SetFn { ground, table, dom })
    }

    /// Builds `f` from its finite entries; every other subset maps to `−∞`.
    /// Later duplicates overwrite earlier ones.
    pub fn from_finite<I>(n: usize, entries: I) -> Result<Self, SetFnError>
    where
        I: IntoIterator<Item = (Subset, Rational)>,
    {
        let ground = GroundSet::new(n)?;
        let mut table = vec![ExtValue::NegInfinity; ground.table_len()];
        for (x, v) in entries {
            if !ground.contains(x) {
                return Err(SetFnError::SubsetOutOfRange { subset: x, n });
            }
            table[x.mask() as usize] = ExtValue::Finite(v);
        }
        SetFn::new(n, table)
    }

    /// Builds `f` by evaluating `value` on every subset.
    pub fn from_fn<F>(n: usize, mut value: F) -> Result<Self, SetFnError>
    where
        F: FnMut(Subset) -> ExtValue,
    {
        GroundSet::new(n)?;
        let table = all_subsets(n).map(&mut value).collect();
        SetFn::new(n, table)
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.size()
    }

    pub fn table(&self) -> &[ExtValue] {
        &self.table
    }

    /// Members of `dom f` in ascending mask order.
    pub fn domain(&self) -> &[Subset] {
        &self.dom
    }

    pub fn eval(&self, x: Subset) -> &ExtValue {
        &self.table[x.mask() as usize]
    }

    /// `f(X)` for `X ∈ dom f`.
    pub fn finite_value(&self, x: Subset) -> Option<&Rational> {
        self.eval(x).finite()
    }

    pub fn in_domain(&self, x: Subset) -> bool {
        self.eval(x).is_finite()
    }

    /// `F = max{|f(X)| : X ∈ dom f}`.
    pub fn max_abs_value(&self) -> Rational {
        self.dom
            .iter()
            .filter_map(|&x| self.finite_value(x))
            .map(num::Signed::abs)
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Largest and smallest cardinality over `dom f`.
    pub fn cardinality_range(&self) -> (usize, usize) {
        let sizes = self.dom.iter().map(|x| x.len());
        let max = sizes.clone().max().unwrap_or(0);
        let min = sizes.min().unwrap_or(0);
        (max, min)
    }

    fn check_dim(&self, p: &PriceVector) {
        assert_eq!(
            p.len(),
            self.n(),
            "price vector has {} entries for a ground set of size {}",
            p.len(),
            self.n()
        );
    }

    /// `g(p) = max{ f(X) − p(X) }`. Panics if `p` has the wrong length.
    pub fn conjugate(&self, p: &PriceVector) -> Rational {
        self.conjugate_argmax(p).0
    }

    /// `g(p)` together with the first maximizer in ascending mask order.
    pub fn conjugate_argmax(&self, p: &PriceVector) -> (Rational, Subset) {
        self.check_dim(p);
        let mut best: Option<(Rational, Subset)> = None;
        for &x in &self.dom {
            let v = self.finite_value(x).expect("domain member is finite") - p.sum_over(x);
            match &best {
                Some((b, _)) if v.cmp(b) != Ordering::Greater => {}
                _ => best = Some((v, x)),
            }
        }
        best.expect("domain is nonempty")
    }

    /// `f_p(X) = f(X) + p(X)`; `−∞` entries stay `−∞`.
    pub fn tilt(&self, p: &PriceVector) -> SetFn {
        self.check_dim(p);
        let table = all_subsets(self.n())
            .map(|x| self.eval(x) + &p.sum_over(x))
            .collect();
        SetFn {
            ground: self.ground,
            table,
            dom: self.dom.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn s(e: &[usize]) -> Subset {
        Subset::from_elements(e.iter().copied())
    }

    fn pairs_fail() -> SetFn {
        SetFn::from_finite(
            4,
            crate::subset::subsets_of_size(4, 2).map(|x| {
                let v = if x == s(&[1, 2]) || x == s(&[3, 4]) { 1 } else { 0 };
                (x, int(v))
            }),
        )
        .unwrap()
    }

    fn two_point() -> SetFn {
        SetFn::from_finite(2, [(s(&[]), int(0)), (s(&[1]), int(1)), (s(&[2]), int(1)), (s(&[1, 2]), int(1))])
            .unwrap()
    }

    #[test]
    fn ext_value_order_and_sum() {
        let ninf = ExtValue::NegInfinity;
        let one = ExtValue::Finite(int(1));
        assert!(ninf < ExtValue::Finite(int(-1_000_000)));
        assert_eq!(&ninf + &one, ExtValue::NegInfinity);
        assert_eq!(&one + &one, ExtValue::Finite(int(2)));
        assert_eq!(ninf.to_string(), "-inf");
    }

    #[test]
    fn construction_errors() {
        assert_eq!(SetFn::from_finite(0, []).unwrap_err(), SetFnError::GroundSize(0));
        assert_eq!(SetFn::from_finite(21, []).unwrap_err(), SetFnError::GroundSize(21));
        assert_eq!(SetFn::from_finite(3, []).unwrap_err(), SetFnError::EmptyDomain);
        assert!(matches!(
            SetFn::from_finite(2, [(s(&[3]), int(0))]),
            Err(SetFnError::SubsetOutOfRange { .. })
        ));
        assert!(matches!(
            SetFn::new(2, vec![ExtValue::zero(); 3]),
            Err(SetFnError::TableLength { expected: 4, got: 3 })
        ));
    }

    #[test]
    fn eval_examples() {
        let single = SetFn::from_finite(3, [(Subset::EMPTY, int(0))]).unwrap();
        assert_eq!(single.eval(Subset::EMPTY), &ExtValue::Finite(int(0)));
        let f = pairs_fail();
        assert_eq!(f.eval(s(&[1, 3])), &ExtValue::Finite(int(0)));
        assert_eq!(f.eval(s(&[1])), &ExtValue::NegInfinity);
    }

    #[test]
    fn conjugate_examples() {
        let single = SetFn::from_finite(2, [(Subset::EMPTY, int(0))]).unwrap();
        assert_eq!(single.conjugate(&PriceVector::new(vec![int(7), frac(-1, 3)])), int(0));

        let f = two_point();
        assert_eq!(f.conjugate_argmax(&PriceVector::zeros(2)), (int(1), s(&[1])));
        assert_eq!(
            f.conjugate_argmax(&PriceVector::new(vec![int(2), int(2)])),
            (int(0), Subset::EMPTY)
        );

        let half = PriceVector::new(vec![frac(1, 2); 4]);
        assert_eq!(pairs_fail().conjugate_argmax(&half), (int(0), s(&[1, 2])));
    }

    #[test]
    fn tilt_examples() {
        let f = pairs_fail();
        assert_eq!(f.tilt(&PriceVector::zeros(4)), f);

        let g = SetFn::from_finite(1, [(Subset::EMPTY, int(0)), (s(&[1]), int(1))]).unwrap();
        let t = g.tilt(&PriceVector::new(vec![int(-1)]));
        assert_eq!(t.eval(s(&[1])), &ExtValue::Finite(int(0)));
        assert_eq!(t.eval(Subset::EMPTY), &ExtValue::Finite(int(0)));

        let t = f.tilt(&PriceVector::unit(4, 1, int(1)));
        let expect = [
            (&[1, 2][..], 2),
            (&[3, 4], 1),
            (&[1, 3], 1),
            (&[1, 4], 1),
            (&[2, 3], 0),
            (&[2, 4], 0),
        ];
        for (x, v) in expect {
            assert_eq!(t.eval(s(x)), &ExtValue::Finite(int(v)), "at {x:?}");
        }
        assert_eq!(t.eval(s(&[1])), &ExtValue::NegInfinity);
        assert_eq!(t.domain(), f.domain());
    }

    #[test]
    fn lattice_ops() {
        let p = PriceVector::new(vec![int(1), int(-2), frac(1, 2)]);
        let q = PriceVector::new(vec![int(0), int(3), frac(1, 2)]);
        assert_eq!(p.join(&q), PriceVector::new(vec![int(1), int(3), frac(1, 2)]));
        assert_eq!(p.meet(&q), PriceVector::new(vec![int(0), int(-2), frac(1, 2)]));
        assert_eq!(p.sum_over(s(&[1, 3])), frac(3, 2));
        assert!(p.meet(&q).le(&p.join(&q)));
    }
}
