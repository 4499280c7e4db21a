//! Closed-form dual of maximum-weight perfect matching on `K₄`.
//!
//! With `{1,2}, {3,4}` the unique optimal matching, a dual vector `p̂`
//! tight on the matching and strictly slack on every other finite edge is
//! found by writing
//!
//! ```text
//! p̂ = ((u+v)/2, α₁₂ − (u+v)/2, (u−v)/2, α₃₄ − (u−v)/2)
//! ```
//!
//! which reduces the four strict inequalities to two open intervals
//! `u ∈ (α₁₃, α₁₂+α₃₄−α₂₄)` and `v ∈ (α₁₄−α₃₄, α₁₂−α₂₃)`.

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use super::CertificateError;
use crate::rational::{int, Rational};
use crate::setfn::ExtValue;

/// Edge order used for all six-tuples: 12, 13, 14, 23, 24, 34.
pub const EDGES: [(usize, usize); 6] = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

const E12: usize = 0;
const E13: usize = 1;
const E14: usize = 2;
const E23: usize = 3;
const E24: usize = 4;
const E34: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingDual {
    #[serde(with = "crate::rational::serde_vec")]
    pub phat: Vec<Rational>,
    /// `β_ij = α_ij − p̂_i − p̂_j` in [`EDGES`] order; `None` for `−∞`.
    pub beta: Vec<Option<SerRational>>,
}

/// Rational that serializes as its canonical string.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SerRational(#[serde(with = "crate::rational::serde_str")] pub Rational);

impl MatchingDual {
    pub fn phat(&self, i: usize) -> &Rational {
        &self.phat[i - 1]
    }

    pub fn beta(&self, edge: usize) -> Option<&Rational> {
        self.beta[edge].as_ref().map(|b| &b.0)
    }

    /// `min |β_ij|` over finite off-matching edges.
    pub fn min_slack(&self) -> Option<Rational> {
        [E13, E14, E23, E24]
            .iter()
            .filter_map(|&e| self.beta(e))
            .map(|b| -b)
            .min()
    }
}

/// `α₁₂ + α₃₄ > max(α₁₃ + α₂₄, α₁₄ + α₂₃)` with both matching edges finite.
pub fn has_unique_matching(alpha: &[ExtValue; 6]) -> bool {
    if !alpha[E12].is_finite() || !alpha[E34].is_finite() {
        return false;
    }
    let matched = &alpha[E12] + &alpha[E34];
    matched > &alpha[E13] + &alpha[E24] && matched > &alpha[E14] + &alpha[E23]
}

struct Interval {
    lo: Option<Rational>,
    hi: Option<Rational>,
}

impl Interval {
    fn pick(&self, fallback: Rational) -> Rational {
        let two = int(2);
        match (&self.lo, &self.hi) {
            (Some(lo), Some(hi)) => (lo + hi) / two,
            (Some(lo), None) => lo + Rational::one(),
            (None, Some(hi)) => hi - Rational::one(),
            (None, None) => fallback,
        }
    }
}

fn diff(a: &Rational, b: &ExtValue) -> Option<Rational> {
    b.finite().map(|b| a - b)
}

/// Dual prices for the `K₄` matching with weights `α` in [`EDGES`] order.
pub fn matching_dual(alpha: &[ExtValue; 6]) -> Result<MatchingDual, CertificateError> {
    if !has_unique_matching(alpha) {
        return Err(CertificateError::UniqueMatchingRequired);
    }
    let a12 = alpha[E12].finite().expect("checked finite");
    let a34 = alpha[E34].finite().expect("checked finite");
    let matched = a12 + a34;
    let two = int(2);

    let u = Interval {
        lo: alpha[E13].finite().cloned(),
        hi: diff(&matched, &alpha[E24]),
    }
    .pick(&matched / &two);
    let v = Interval {
        lo: alpha[E14].finite().map(|a| a - a34),
        hi: diff(a12, &alpha[E23]),
    }
    .pick((a12 - a34) / &two);

    let s = (&u + &v) / &two;
    let d = (&u - &v) / &two;
    let phat = vec![s.clone(), a12 - &s, d.clone(), a34 - &d];
    let beta = EDGES
        .iter()
        .zip(alpha)
        .map(|(&(i, j), a)| a.finite().map(|a| SerRational(a - &phat[i - 1] - &phat[j - 1])))
        .collect();
    let dual = MatchingDual { phat, beta };
    debug_assert!(dual.beta(E12).is_some_and(Zero::is_zero));
    Ok(dual)
}
