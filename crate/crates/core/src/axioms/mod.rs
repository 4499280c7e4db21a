//! Decision procedures for the exchange axioms and the structural domain
//! properties that go with them.
//!
//! Every checker scans in a fixed order (ascending masks, then ascending
//! elements) so the same input always yields the same witness.

mod submodular;

pub use submodular::{
    check_submodular_pair, check_unit_submodular_at, evaluate_pair, evaluate_unit,
    falsify_submodularity, FalsifyError, PairEvaluation, UnitEvaluation,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::setfn::{ExtValue, SetFn};
use crate::subset::Subset;

/// Outcome of a checker.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<W> {
    Pass,
    Fail(W),
}

impl<W> Verdict<W> {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(w) => Some(w),
        }
    }

    pub fn into_witness(self) -> Option<W> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(w) => Some(w),
        }
    }

    fn from_option(w: Option<W>) -> Self {
        w.map_or(Verdict::Pass, Verdict::Fail)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExchangeKind {
    /// Valuated-matroid exchange.
    MConcave,
    /// Exchange allowing the lone removal `(X − i, Y + i)`.
    MNatConcave,
    /// Valuated-matroid exchange restricted to `|X \ Y| = 2`.
    Local,
}

/// A failing exchange instance `(X, Y, i)`; `candidates` lists the
/// elements of `Y \ X` that were tried and all failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExchangeWitness {
    pub kind: ExchangeKind,
    pub x: Subset,
    pub y: Subset,
    pub i: usize,
    pub candidates: Vec<usize>,
}

/// Two members of an equicardinal domain with `|X \ Y| ≥ 2` and no other
/// domain member in the interval `[X ∩ Y, X ∪ Y]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisconnectWitness {
    pub x: Subset,
    pub y: Subset,
}

impl DisconnectWitness {
    /// Rescans the interval `[X ∩ Y, X ∪ Y]` of `f`'s domain.
    pub fn is_valid_for(&self, f: &SetFn) -> bool {
        let (x, y) = (self.x, self.y);
        if !f.in_domain(x) || !f.in_domain(y) || x.len() != y.len() || x.difference(y).len() < 2 {
            return false;
        }
        let lo = x.intersection(y);
        let hi = x.union(y);
        f.domain()
            .iter()
            .all(|&z| z == x || z == y || !(lo.is_subset_of(z) && z.is_subset_of(hi)))
    }
}

/// Two domain members of different size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CardinalityWitness {
    pub x: Subset,
    pub y: Subset,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AxiomError {
    #[error("effective domain is not equicardinal: |{}| != |{}|", .0.x, .0.y)]
    NotEquicardinal(CardinalityWitness),
}

/// First failing condition of the local characterization of M-concavity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "condition", rename_all = "kebab-case")]
pub enum LocalCharacterizationFailure {
    NotEquicardinal(CardinalityWitness),
    Disconnected(DisconnectWitness),
    LocalExchange(ExchangeWitness),
}

fn pair_sum(f: &SetFn, x: Subset, y: Subset) -> ExtValue {
    f.eval(x) + f.eval(y)
}

/// `f(X) + f(Y) ≤ f(X − i + j) + f(Y + i − j)`.
fn swap_holds(f: &SetFn, base: &ExtValue, x: Subset, y: Subset, i: usize, j: usize) -> bool {
    *base <= pair_sum(f, x.swap(i, j), y.swap(j, i))
}

/// Some `j ∈ Y \ X` repairs the removal of `i` from `X`.
fn exchange_holds(f: &SetFn, base: &ExtValue, x: Subset, y: Subset, i: usize) -> bool {
    y.difference(x).elements().any(|j| swap_holds(f, base, x, y, i, j))
}

pub fn check_equicardinal(f: &SetFn) -> Verdict<CardinalityWitness> {
    let dom = f.domain();
    let first = dom[0];
    Verdict::from_option(
        dom.iter()
            .find(|z| z.len() != first.len())
            .map(|&y| CardinalityWitness { x: first, y }),
    )
}

fn require_equicardinal(f: &SetFn) -> Result<(), AxiomError> {
    match check_equicardinal(f) {
        Verdict::Pass => Ok(()),
        Verdict::Fail(w) => Err(AxiomError::NotEquicardinal(w)),
    }
}

/// Valuated-matroid exchange for every `X, Y ∈ dom f`, `i ∈ X \ Y`.
pub fn check_m_concave(f: &SetFn) -> Verdict<ExchangeWitness> {
    let dom = f.domain();
    for &x in dom {
        for &y in dom {
            let base = pair_sum(f, x, y);
            for i in x.difference(y).elements() {
                if !exchange_holds(f, &base, x, y, i) {
                    return Verdict::Fail(ExchangeWitness {
                        kind: ExchangeKind::MConcave,
                        x,
                        y,
                        i,
                        candidates: y.difference(x).to_vec(),
                    });
                }
            }
        }
    }
    Verdict::Pass
}

/// For every `X, Y ∈ dom f`, `i ∈ X \ Y`: either
/// `f(X) + f(Y) ≤ f(X − i) + f(Y + i)` or some swap `j ∈ Y \ X` works.
pub fn check_mnat_concave(f: &SetFn) -> Verdict<ExchangeWitness> {
    let dom = f.domain();
    for &x in dom {
        for &y in dom {
            let base = pair_sum(f, x, y);
            for i in x.difference(y).elements() {
                let lone = base <= pair_sum(f, x.without(i), y.with(i));
                if !lone && !exchange_holds(f, &base, x, y, i) {
                    return Verdict::Fail(ExchangeWitness {
                        kind: ExchangeKind::MNatConcave,
                        x,
                        y,
                        i,
                        candidates: y.difference(x).to_vec(),
                    });
                }
            }
        }
    }
    Verdict::Pass
}

/// Every pair of distinct members is joined by a single swap of `Y` toward
/// `X` inside the domain. The reported pair minimizes `|X \ Y|`, which makes
/// its interval `[X ∩ Y, X ∪ Y]` free of other domain members.
pub fn check_connected(f: &SetFn) -> Result<Verdict<DisconnectWitness>, AxiomError> {
    require_equicardinal(f)?;
    let dom = f.domain();
    let mut best: Option<(usize, DisconnectWitness)> = None;
    for &x in dom {
        for &y in dom {
            if x == y {
                continue;
            }
            let dist = x.difference(y).len();
            if best.as_ref().is_some_and(|(d, _)| *d <= dist) {
                continue;
            }
            let linked = x.difference(y).elements().any(|i| {
                y.difference(x)
                    .elements()
                    .any(|j| f.in_domain(y.swap(j, i)))
            });
            if !linked {
                best = Some((dist, DisconnectWitness { x, y }));
            }
        }
    }
    Ok(Verdict::from_option(best.map(|(_, w)| w)))
}

/// Exchange restricted to pairs at distance `|X \ Y| = 2`.
pub fn check_local_exchange(f: &SetFn) -> Result<Verdict<ExchangeWitness>, AxiomError> {
    require_equicardinal(f)?;
    let dom = f.domain();
    for &x in dom {
        for &y in dom {
            let out = x.difference(y);
            if out.len() != 2 {
                continue;
            }
            let inn = y.difference(x);
            let base = pair_sum(f, x, y);
            let ok = out
                .elements()
                .any(|i| inn.elements().any(|j| swap_holds(f, &base, x, y, i, j)));
            if !ok {
                return Ok(Verdict::Fail(ExchangeWitness {
                    kind: ExchangeKind::Local,
                    x,
                    y,
                    i: out.first().expect("two elements"),
                    candidates: inn.to_vec(),
                }));
            }
        }
    }
    Ok(Verdict::Pass)
}

/// M-concavity through the local characterization: equicardinal, connected,
/// and locally exchangeable, checked in that order.
pub fn check_m_via_local(f: &SetFn) -> Verdict<LocalCharacterizationFailure> {
    if let Verdict::Fail(w) = check_equicardinal(f) {
        return Verdict::Fail(LocalCharacterizationFailure::NotEquicardinal(w));
    }
    let connected = check_connected(f).expect("equicardinal");
    if let Verdict::Fail(w) = connected {
        return Verdict::Fail(LocalCharacterizationFailure::Disconnected(w));
    }
    match check_local_exchange(f).expect("equicardinal") {
        Verdict::Fail(w) => Verdict::Fail(LocalCharacterizationFailure::LocalExchange(w)),
        Verdict::Pass => Verdict::Pass,
    }
}

/// Every `(X, Y, i)` violating the valuated-matroid exchange, sorted by
/// `|Y \ X|`, then `X`, `Y`, `i`.
pub fn find_exchange_failures(f: &SetFn) -> Vec<ExchangeWitness> {
    let dom = f.domain();
    let mut out = Vec::new();
    for &x in dom {
        for &y in dom {
            let base = pair_sum(f, x, y);
            for i in x.difference(y).elements() {
                if !exchange_holds(f, &base, x, y, i) {
                    out.push(ExchangeWitness {
                        kind: ExchangeKind::MConcave,
                        x,
                        y,
                        i,
                        candidates: y.difference(x).to_vec(),
                    });
                }
            }
        }
    }
    out.sort_by_key(|w| (w.y.difference(w.x).len(), w.x, w.y, w.i));
    out
}
