//! Equicardinal lift: extend `N` by slack elements `S = {n+1, …, n+s}` and
//! pad every domain member up to the maximum cardinality `r`.

use crate::rational::Rational;
use crate::setfn::{ExtValue, PriceVector, SetFn, SetFnError};
use crate::subset::{all_subsets, Subset, MAX_GROUND};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedSetFn {
    base: SetFn,
    slots: usize,
    r_max: usize,
    r_min: usize,
    lifted: SetFn,
}

impl LiftedSetFn {
    pub fn base(&self) -> &SetFn {
        &self.base
    }

    /// `s = |S|`.
    pub fn slots(&self) -> usize {
        self.slots
    }

    /// `r`, the largest cardinality in `dom f`.
    pub fn r_max(&self) -> usize {
        self.r_max
    }

    /// `r'`, the smallest cardinality in `dom f`.
    pub fn r_min(&self) -> usize {
        self.r_min
    }

    /// `f̃` on `N ∪ S`.
    pub fn lifted(&self) -> &SetFn {
        &self.lifted
    }

    /// The slack elements `S` as a subset of the lifted ground set.
    pub fn slack(&self) -> Subset {
        Subset::full(self.base.n() + self.slots).difference(Subset::full(self.base.n()))
    }

    /// Conjugate of `f̃` at `(p, q)` computed from `f` directly: each
    /// `X ∈ dom f` is completed with the `r − |X|` cheapest slack elements.
    pub fn conjugate(&self, p: &PriceVector, q: &PriceVector) -> Result<Rational, SetFnError> {
        if p.len() != self.base.n() {
            return Err(SetFnError::DimensionMismatch {
                expected: self.base.n(),
                got: p.len(),
            });
        }
        if q.len() != self.slots {
            return Err(SetFnError::DimensionMismatch {
                expected: self.slots,
                got: q.len(),
            });
        }
        let mut sorted: Vec<&Rational> = q.entries().iter().collect();
        sorted.sort();
        let mut cheapest = Vec::with_capacity(self.slots + 1);
        let mut acc = Rational::default();
        cheapest.push(acc.clone());
        for v in sorted {
            acc += v;
            cheapest.push(acc.clone());
        }
        let best = self
            .base
            .domain()
            .iter()
            .map(|&x| {
                let fx = self.base.finite_value(x).expect("domain member is finite");
                fx - p.sum_over(x) - &cheapest[self.r_max - x.len()]
            })
            .max()
            .expect("domain is nonempty");
        Ok(best)
    }
}

/// Smallest slot count that keeps every member of `dom f` reachable.
pub fn min_slots(f: &SetFn) -> usize {
    let (r, r_min) = f.cardinality_range();
    r - r_min
}

/// Slot count used when none is given: `r − r' + 2`.
pub fn default_slots(f: &SetFn) -> usize {
    min_slots(f) + 2
}

/// Builds `f̃(Z) = f(Z ∩ N)` for `|Z| = r`, `−∞` otherwise.
pub fn lift(f: &SetFn, slots: Option<usize>) -> Result<LiftedSetFn, SetFnError> {
    let (r_max, r_min) = f.cardinality_range();
    let required = r_max - r_min;
    let slots = slots.unwrap_or(required + 2);
    if slots < required {
        return Err(SetFnError::TooFewSlots { slots, required });
    }
    let n = f.n();
    let total = n + slots;
    if total > MAX_GROUND {
        return Err(SetFnError::GroundSize(total));
    }
    let base_mask = Subset::full(n);
    let table = all_subsets(total)
        .map(|z| {
            if z.len() == r_max {
                f.eval(z.intersection(base_mask)).clone()
            } else {
                ExtValue::NegInfinity
            }
        })
        .collect();
    let lifted = SetFn::new(total, table)?;
    Ok(LiftedSetFn {
        base: f.clone(),
        slots,
        r_max,
        r_min,
        lifted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::subset::subsets_of_size;

    fn s(e: &[usize]) -> Subset {
        Subset::from_elements(e.iter().copied())
    }

    fn step() -> SetFn {
        SetFn::from_finite(2, [(Subset::EMPTY, int(0)), (s(&[1]), int(1))]).unwrap()
    }

    #[test]
    fn lift_of_step_function() {
        let lf = lift(&step(), None).unwrap();
        assert_eq!((lf.r_max(), lf.r_min(), lf.slots()), (1, 0, 3));
        let g = lf.lifted();
        assert_eq!(g.n(), 5);
        assert_eq!(g.eval(s(&[1])), &ExtValue::Finite(int(1)));
        for e in 3..=5 {
            assert_eq!(g.eval(s(&[e])), &ExtValue::Finite(int(0)));
        }
        assert_eq!(g.eval(s(&[2])), &ExtValue::NegInfinity);
        assert_eq!(g.domain().len(), 4);
        assert!(g.domain().iter().all(|z| z.len() == 1));
        assert_eq!(lf.slack(), s(&[3, 4, 5]));
    }

    #[test]
    fn lift_of_equicardinal_function() {
        let f = SetFn::from_finite(
            4,
            subsets_of_size(4, 2).map(|x| (x, int(if x == s(&[1, 2]) || x == s(&[3, 4]) { 1 } else { 0 }))),
        )
        .unwrap();
        let lf = lift(&f, None).unwrap();
        assert_eq!(lf.slots(), 2);
        for z in all_subsets(6) {
            let expect = if z.is_subset_of(Subset::full(4)) {
                f.eval(z).clone()
            } else {
                ExtValue::NegInfinity
            };
            assert_eq!(lf.lifted().eval(z), &expect, "at {z}");
        }
    }

    #[test]
    fn lift_of_single_point() {
        let f = SetFn::from_finite(1, [(Subset::EMPTY, int(4))]).unwrap();
        let lf = lift(&f, None).unwrap();
        assert_eq!(lf.slots(), 2);
        assert_eq!(lf.lifted().domain(), &[Subset::EMPTY]);
        assert_eq!(lf.lifted().eval(Subset::EMPTY), &ExtValue::Finite(int(4)));
    }

    #[test]
    fn lift_rejections() {
        let f = step();
        assert_eq!(
            lift(&f, Some(0)).unwrap_err(),
            SetFnError::TooFewSlots { slots: 0, required: 1 }
        );
        assert!(lift(&f, Some(1)).is_ok());
        assert_eq!(lift(&f, Some(19)).unwrap_err(), SetFnError::GroundSize(21));
    }

    #[test]
    fn lifted_conjugate_examples() {
        let lf = lift(&step(), None).unwrap();
        let p0 = PriceVector::zeros(2);
        assert_eq!(lf.conjugate(&p0, &PriceVector::zeros(3)).unwrap(), int(1));
        assert_eq!(lf.conjugate(&p0, &PriceVector::new(vec![int(5); 3])).unwrap(), int(1));
        let p = PriceVector::new(vec![int(3), int(0)]);
        assert_eq!(lf.conjugate(&p, &PriceVector::zeros(3)).unwrap(), step().conjugate(&p));
        assert!(matches!(
            lf.conjugate(&p0, &PriceVector::zeros(2)),
            Err(SetFnError::DimensionMismatch { expected: 3, got: 2 })
        ));
    }
}
