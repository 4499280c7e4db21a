//! Pointwise checks of submodularity of a conjugate function.
//!
//! All checks are written against an arbitrary conjugate oracle so the same
//! code probes `g` of a base function and `g̃` of its lift.

use num::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::Verdict;
use crate::rational::{frac, int, Rational};
use crate::setfn::{PriceVector, SetFn};

/// The four conjugate values of `g(p) + g(q) ≥ g(p ∨ q) + g(p ∧ q)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairEvaluation {
    pub p: PriceVector,
    pub q: PriceVector,
    pub join: PriceVector,
    pub meet: PriceVector,
    #[serde(with = "crate::rational::serde_str")]
    pub g_p: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub g_q: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub g_join: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub g_meet: Rational,
}

impl PairEvaluation {
    pub fn holds(&self) -> bool {
        &self.g_p + &self.g_q >= &self.g_join + &self.g_meet
    }

    /// `g(p ∨ q) + g(p ∧ q) − g(p) − g(q)`; positive exactly on violation.
    pub fn excess(&self) -> Rational {
        &self.g_join + &self.g_meet - &self.g_p - &self.g_q
    }
}

/// The four values of `g(p + a e_i) + g(p + b e_j) ≥ g(p) + g(p + a e_i + b e_j)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitEvaluation {
    pub p: PriceVector,
    pub i: usize,
    pub j: usize,
    #[serde(with = "crate::rational::serde_str")]
    pub a: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub b: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub g_p: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub g_pi: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub g_pj: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub g_pij: Rational,
}

impl UnitEvaluation {
    pub fn holds(&self) -> bool {
        &self.g_pi + &self.g_pj >= &self.g_p + &self.g_pij
    }

    pub fn excess(&self) -> Rational {
        &self.g_p + &self.g_pij - &self.g_pi - &self.g_pj
    }
}

/// Evaluates the pair inequality with any conjugate oracle.
pub fn evaluate_pair<G>(g: G, p: &PriceVector, q: &PriceVector) -> PairEvaluation
where
    G: Fn(&PriceVector) -> Rational,
{
    let join = p.join(q);
    let meet = p.meet(q);
    PairEvaluation {
        g_p: g(p),
        g_q: g(q),
        g_join: g(&join),
        g_meet: g(&meet),
        p: p.clone(),
        q: q.clone(),
        join,
        meet,
    }
}

/// Evaluates the unit-perturbation inequality with any conjugate oracle.
/// Panics unless `i ≠ j` and `a, b ≥ 0`.
pub fn evaluate_unit<G>(g: G, p: &PriceVector, i: usize, j: usize, a: &Rational, b: &Rational) -> UnitEvaluation
where
    G: Fn(&PriceVector) -> Rational,
{
    assert_ne!(i, j, "unit perturbation needs distinct coordinates");
    assert!(!a.is_negative() && !b.is_negative(), "perturbations must be nonnegative");
    let pi = p.bumped(i, a);
    let pj = p.bumped(j, b);
    let pij = pi.bumped(j, b);
    UnitEvaluation {
        g_p: g(p),
        g_pi: g(&pi),
        g_pj: g(&pj),
        g_pij: g(&pij),
        p: p.clone(),
        i,
        j,
        a: a.clone(),
        b: b.clone(),
    }
}

pub fn check_unit_submodular_at(
    f: &SetFn,
    p: &PriceVector,
    i: usize,
    j: usize,
    a: &Rational,
    b: &Rational,
) -> Verdict<UnitEvaluation> {
    let e = evaluate_unit(|v| f.conjugate(v), p, i, j, a, b);
    if e.holds() {
        Verdict::Pass
    } else {
        Verdict::Fail(e)
    }
}

pub fn check_submodular_pair(f: &SetFn, p: &PriceVector, q: &PriceVector) -> Verdict<PairEvaluation> {
    let e = evaluate_pair(|v| f.conjugate(v), p, q);
    if e.holds() {
        Verdict::Pass
    } else {
        Verdict::Fail(e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FalsifyError {
    #[error("at least one trial is required")]
    NoTrials,
}

/// Randomized search for a unit-perturbation violation. Prices come from
/// `{−2F, −F, −1, 0, 1, F, 2F}` and step sizes from `{1/2, 1, F}` where
/// `F = max |f|`. Deterministic in `seed`.
pub fn falsify_submodularity(f: &SetFn, trials: usize, seed: u64) -> Result<Option<UnitEvaluation>, FalsifyError> {
    if trials == 0 {
        return Err(FalsifyError::NoTrials);
    }
    let n = f.n();
    if n < 2 {
        return Ok(None);
    }
    let big = f.max_abs_value();
    let grid = [
        -(&big * int(2)),
        -big.clone(),
        int(-1),
        Rational::zero(),
        int(1),
        big.clone(),
        &big * int(2),
    ];
    let steps = [frac(1, 2), int(1), big.clone()];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coords: Vec<usize> = (1..=n).collect();
    for _ in 0..trials {
        let p = PriceVector::new((0..n).map(|_| grid[rng.gen_range(0..grid.len())].clone()).collect());
        let picked: Vec<usize> = coords.choose_multiple(&mut rng, 2).copied().collect();
        let a = steps.choose(&mut rng).expect("nonempty");
        let b = steps.choose(&mut rng).expect("nonempty");
        if let Verdict::Fail(e) = check_unit_submodular_at(f, &p, picked[0], picked[1], a, b) {
            return Ok(Some(e));
        }
    }
    Ok(None)
}
