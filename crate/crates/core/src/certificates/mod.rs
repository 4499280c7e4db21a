//! Explicit price pairs `(p, q)` with `g(p) + g(q) < g(p ∨ q) + g(p ∧ q)`.
//!
//! Two constructions exist for an equicardinal `f`:
//!
//! * a *disconnection* certificate, when two domain members have no other
//!   member between them, built from `±M` on the symmetric difference and
//!   `∓M²` rails on `X ∩ Y` and `N \ (X ∪ Y)`;
//! * a *local-exchange* certificate, when a pair at distance two breaks the
//!   exchange, built from the `K₄` matching dual and `∓M` rails.
//!
//! [`certify_not_mnat`] dispatches between them and falls back to the
//! equicardinal lift when `f` itself is not equicardinal.
//!
//! `M` starts at `⌈4F⌉ + n + 2` and doubles until the pair verifies
//! exactly, at most [`MAX_DOUBLINGS`] times.

mod matching;

pub use matching::{has_unique_matching, matching_dual, MatchingDual, SerRational, EDGES};

use num::{One, Signed};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::axioms::{
    check_connected, check_equicardinal, check_local_exchange, check_mnat_concave, evaluate_pair,
    DisconnectWitness, PairEvaluation, Verdict,
};
use crate::lift::lift;
use crate::rational::{int, Rational};
use crate::setfn::{ExtValue, PriceVector, SetFn, SetFnError};
use crate::subset::Subset;

pub const MAX_DOUBLINGS: u32 = 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("matching weights do not have {{1,2}},{{3,4}} as unique maximum perfect matching")]
    UniqueMatchingRequired,
    #[error("effective domain is not equicardinal")]
    NotEquicardinal,
    #[error("({x}, {y}) is not a disconnection witness")]
    NotADisconnection { x: Subset, y: Subset },
    #[error("({x}, {y}) is not a local exchange failure")]
    NotALocalFailure { x: Subset, y: Subset },
    #[error("no verifying M found after {MAX_DOUBLINGS} doublings")]
    SearchExhausted,
    #[error("function fails the exchange axiom but neither construction applies")]
    NoConstructionApplies,
    #[error(transparent)]
    Lift(#[from] SetFnError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "on", rename_all = "kebab-case")]
pub enum CertificateTarget {
    /// The pair violates submodularity of `g`.
    Base,
    /// The pair lives on `N ∪ S` and violates submodularity of `g̃`.
    Lifted { slots: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    Disconnection,
    LocalExchange,
}

/// Constants a certificate was built with.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateParams {
    pub construction: Construction,
    pub x: Subset,
    pub y: Subset,
    /// `m = |X \ Y|`.
    pub m: usize,
    /// `F = max |f|` over the domain.
    #[serde(with = "crate::rational::serde_str")]
    pub f_max: Rational,
    /// Final `M` after doubling.
    #[serde(rename = "big_m", with = "crate::rational::serde_str")]
    pub big_m: Rational,
    /// Rail constant: `M²|X ∩ Y|` (disconnection) or `M|X ∩ Y|` (local exchange).
    #[serde(with = "crate::rational::serde_str")]
    pub c: Rational,
    pub doublings: u32,
    /// Step size `a` of the local-exchange construction.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "crate::rational::serde_opt")]
    pub a: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual: Option<MatchingDual>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubmodularityCertificate {
    pub target: CertificateTarget,
    #[serde(flatten)]
    pub values: PairEvaluation,
    pub params: CertificateParams,
}

impl SubmodularityCertificate {
    /// Recomputes the four conjugate values of the target function and
    /// checks them against the recorded ones and the strict inequality.
    pub fn verify(&self, f: &SetFn) -> bool {
        let recomputed = match self.target {
            CertificateTarget::Base => evaluate_pair(|v| f.conjugate(v), &self.values.p, &self.values.q),
            CertificateTarget::Lifted { slots } => match lift(f, Some(slots)) {
                Ok(lf) => evaluate_pair(|v| lf.lifted().conjugate(v), &self.values.p, &self.values.q),
                Err(_) => return false,
            },
        };
        recomputed == self.values && !recomputed.holds()
    }

    /// `g(p ∨ q) + g(p ∧ q) − g(p) − g(q)`.
    pub fn excess(&self) -> Rational {
        self.values.excess()
    }
}

fn initial_big_m(f: &SetFn) -> Rational {
    (f.max_abs_value() * int(4)).ceil() + int(f.n() as i64 + 2)
}

/// Doubles `M` until `build(M)` yields a violated pair on `f`.
fn search_big_m<B>(f: &SetFn, mut build: B) -> Result<(Rational, u32, PairEvaluation), CertificateError>
where
    B: FnMut(&Rational) -> (PriceVector, PriceVector),
{
    let mut big_m = initial_big_m(f);
    for doublings in 0..=MAX_DOUBLINGS {
        let (p, q) = build(&big_m);
        let eval = evaluate_pair(|v| f.conjugate(v), &p, &q);
        if !eval.holds() {
            return Ok((big_m, doublings, eval));
        }
        big_m *= int(2);
    }
    Err(CertificateError::SearchExhausted)
}

fn require_equicardinal(f: &SetFn) -> Result<(), CertificateError> {
    if check_equicardinal(f).is_pass() {
        Ok(())
    } else {
        Err(CertificateError::NotEquicardinal)
    }
}

/// Certificate for two domain members with nothing in between.
pub fn disconnection_certificate(
    f: &SetFn,
    wit: &DisconnectWitness,
) -> Result<SubmodularityCertificate, CertificateError> {
    disconnection_on(f, wit, CertificateTarget::Base)
}

fn disconnection_on(
    f: &SetFn,
    wit: &DisconnectWitness,
    target: CertificateTarget,
) -> Result<SubmodularityCertificate, CertificateError> {
    require_equicardinal(f)?;
    if !wit.is_valid_for(f) {
        return Err(CertificateError::NotADisconnection { x: wit.x, y: wit.y });
    }
    let (x, y) = (wit.x, wit.y);
    let only_x = x.difference(y);
    let only_y = y.difference(x);
    let both = x.intersection(y);
    let i0 = only_x.first().expect("|X \\ Y| >= 2");
    let j0 = only_y.first().expect("|Y \\ X| >= 2");
    let n = f.n();

    let (big_m, doublings, values) = search_big_m(f, |m| {
        let sq = m * m;
        let mut p = PriceVector::zeros(n);
        let mut q = PriceVector::zeros(n);
        for e in 1..=n {
            let (pe, qe) = if e == i0 {
                (-m.clone(), int(0))
            } else if only_x.contains(e) {
                (int(0), -m.clone())
            } else if e == j0 {
                (-m.clone(), -m.clone())
            } else if only_y.contains(e) {
                (int(0), int(0))
            } else if both.contains(e) {
                (-sq.clone(), -sq.clone())
            } else {
                (sq.clone(), sq.clone())
            };
            p.set(e, pe);
            q.set(e, qe);
        }
        (p, q)
    })?;

    let c = &big_m * &big_m * int(both.len() as i64);
    Ok(SubmodularityCertificate {
        target,
        values,
        params: CertificateParams {
            construction: Construction::Disconnection,
            x,
            y,
            m: only_x.len(),
            f_max: f.max_abs_value(),
            big_m,
            c,
            doublings,
            a: None,
            dual: None,
        },
    })
}

/// Matching weights `α_ij = f((X ∩ Y) + i + j)` after relabeling the two
/// smallest-first elements of `X \ Y` as 1, 2 and of `Y \ X` as 3, 4.
fn local_weights(f: &SetFn, x: Subset, y: Subset) -> ([usize; 4], [ExtValue; 6]) {
    let only_x = x.difference(y).to_vec();
    let only_y = y.difference(x).to_vec();
    let label = [only_x[0], only_x[1], only_y[0], only_y[1]];
    let both = x.intersection(y);
    let alpha = EDGES.map(|(i, j)| f.eval(both.with(label[i - 1]).with(label[j - 1])).clone());
    (label, alpha)
}

/// Certificate for a pair at distance two that breaks the exchange, using
/// the largest admissible step `a = min |β|` over finite off-matching edges.
pub fn local_exchange_certificate(
    f: &SetFn,
    x: Subset,
    y: Subset,
) -> Result<SubmodularityCertificate, CertificateError> {
    local_exchange_on(f, x, y, None, CertificateTarget::Base)
}

/// As [`local_exchange_certificate`] with an explicit step `0 < a ≤ min |β|`.
pub fn local_exchange_certificate_with_step(
    f: &SetFn,
    x: Subset,
    y: Subset,
    a: Rational,
) -> Result<SubmodularityCertificate, CertificateError> {
    local_exchange_on(f, x, y, Some(a), CertificateTarget::Base)
}

fn local_exchange_on(
    f: &SetFn,
    x: Subset,
    y: Subset,
    step: Option<Rational>,
    target: CertificateTarget,
) -> Result<SubmodularityCertificate, CertificateError> {
    require_equicardinal(f)?;
    let not_local = CertificateError::NotALocalFailure { x, y };
    if !f.in_domain(x) || !f.in_domain(y) || x.difference(y).len() != 2 || y.difference(x).len() != 2 {
        return Err(not_local);
    }
    let (label, alpha) = local_weights(f, x, y);
    let dual = matching_dual(&alpha).map_err(|_| not_local.clone())?;
    let max_step = dual.min_slack().unwrap_or_else(Rational::one);
    let a = match step {
        Some(a) if a.is_positive() && a <= max_step => a,
        Some(_) => return Err(not_local),
        None => max_step,
    };
    let both = x.intersection(y);
    let n = f.n();

    let (big_m, doublings, values) = search_big_m(f, |m| {
        let mut p = PriceVector::zeros(n);
        for e in 1..=n {
            if both.contains(e) {
                p.set(e, -m.clone());
            } else if !x.union(y).contains(e) {
                p.set(e, m.clone());
            }
        }
        let mut q = p.clone();
        for (k, &e) in label.iter().enumerate() {
            q.set(e, dual.phat[k].clone());
            p.set(e, dual.phat[k].clone());
        }
        p.set(label[0], dual.phat(1) + &a);
        p.set(label[1], dual.phat(2) - &a);
        (p, q)
    })?;

    let c = &big_m * int(both.len() as i64);
    Ok(SubmodularityCertificate {
        target,
        values,
        params: CertificateParams {
            construction: Construction::LocalExchange,
            x,
            y,
            m: 2,
            f_max: f.max_abs_value(),
            big_m,
            c,
            doublings,
            a: Some(a),
            dual: Some(dual),
        },
    })
}

/// Runs the connectivity and local-exchange checks on an equicardinal `f`
/// and builds the certificate for the first failure found.
fn certify_equicardinal(f: &SetFn, target: CertificateTarget) -> Result<SubmodularityCertificate, CertificateError> {
    let connected = check_connected(f).map_err(|_| CertificateError::NotEquicardinal)?;
    if let Verdict::Fail(w) = connected {
        return disconnection_on(f, &w, target);
    }
    match check_local_exchange(f).map_err(|_| CertificateError::NotEquicardinal)? {
        Verdict::Fail(w) => local_exchange_on(f, w.x, w.y, None, target),
        Verdict::Pass => Err(CertificateError::NoConstructionApplies),
    }
}

/// `None` when `f` is M♮-concave, otherwise a verified certificate on `g`
/// (equicardinal `f`) or on the conjugate of the lift (other `f`).
pub fn certify_not_mnat(f: &SetFn) -> Result<Option<SubmodularityCertificate>, CertificateError> {
    if check_mnat_concave(f).is_pass() {
        return Ok(None);
    }
    if check_equicardinal(f).is_pass() {
        return certify_equicardinal(f, CertificateTarget::Base).map(Some);
    }
    let lf = lift(f, None)?;
    certify_equicardinal(lf.lifted(), CertificateTarget::Lifted { slots: lf.slots() }).map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;
    use crate::subset::{all_subsets, subsets_of_size};

    fn s(e: &[usize]) -> Subset {
        Subset::from_elements(e.iter().copied())
    }

    fn pairs(n: usize, extra: i64) -> SetFn {
        let hi = [s(&[1, 2]), s(&[3, 4])];
        SetFn::from_finite(n, subsets_of_size(4, 2).map(|x| (x, int(hi.contains(&x) as i64 + extra)))).unwrap()
    }

    fn pairs_disconnect(shift: i64) -> SetFn {
        SetFn::from_finite(4, [(s(&[1, 2]), int(1 + shift)), (s(&[3, 4]), int(1 + shift))]).unwrap()
    }

    /// Conjugate by scanning every subset of the table, independent of the
    /// domain list used by `SetFn::conjugate`.
    fn brute_conjugate(f: &SetFn, p: &PriceVector) -> Rational {
        all_subsets(f.n())
            .filter_map(|x| f.eval(x).finite().map(|v| v - p.sum_over(x)))
            .max()
            .unwrap()
    }

    fn brute_check(f: &SetFn, cert: &SubmodularityCertificate) {
        let v = &cert.values;
        assert_eq!(brute_conjugate(f, &v.p), v.g_p);
        assert_eq!(brute_conjugate(f, &v.q), v.g_q);
        assert_eq!(brute_conjugate(f, &v.p.join(&v.q)), v.g_join);
        assert_eq!(brute_conjugate(f, &v.p.meet(&v.q)), v.g_meet);
        assert!(&v.g_p + &v.g_q < &v.g_join + &v.g_meet);
    }

    #[test]
    fn disconnection_golden() {
        let f = pairs_disconnect(0);
        let wit = DisconnectWitness { x: s(&[1, 2]), y: s(&[3, 4]) };
        let cert = disconnection_certificate(&f, &wit).unwrap();
        assert_eq!(cert.params.big_m, int(10));
        assert_eq!(cert.params.doublings, 0);
        assert_eq!(cert.params.c, int(0));
        assert_eq!(cert.values.p, PriceVector::new(vec![int(-10), int(0), int(-10), int(0)]));
        assert_eq!(cert.values.q, PriceVector::new(vec![int(0), int(-10), int(-10), int(0)]));
        let v = &cert.values;
        assert_eq!((&v.g_p, &v.g_q, &v.g_join, &v.g_meet), (&int(11), &int(11), &int(11), &int(21)));
        brute_check(&f, &cert);
        assert!(cert.verify(&f));
    }

    #[test]
    fn disconnection_shifted_values() {
        let f = pairs_disconnect(5);
        let wit = DisconnectWitness { x: s(&[1, 2]), y: s(&[3, 4]) };
        let cert = disconnection_certificate(&f, &wit).unwrap();
        assert_eq!(cert.params.big_m, int(30));
        brute_check(&f, &cert);
        // g(p∨q) + g(p∧q) = f(X) + f(Y) + (m+1)M + 2C
        assert_eq!(&cert.values.g_join + &cert.values.g_meet, int(12 + 3 * 30));
    }

    #[test]
    fn disconnection_with_common_part() {
        let f = SetFn::from_finite(5, [(s(&[1, 2, 5]), int(1)), (s(&[3, 4, 5]), int(1))]).unwrap();
        let wit = check_connected(&f).unwrap().into_witness().unwrap();
        let cert = disconnection_certificate(&f, &wit).unwrap();
        let m = &cert.params.big_m;
        assert_eq!(cert.params.c, m * m);
        assert_eq!(cert.values.p.get(5), &-(m * m));
        brute_check(&f, &cert);
    }

    #[test]
    fn disconnection_rejects_bad_input() {
        let f = pairs(4, 0);
        let wit = DisconnectWitness { x: s(&[1, 2]), y: s(&[3, 4]) };
        assert!(matches!(
            disconnection_certificate(&f, &wit),
            Err(CertificateError::NotADisconnection { .. })
        ));
        let g = SetFn::from_finite(2, [(Subset::EMPTY, int(0)), (s(&[1]), int(0))]).unwrap();
        assert_eq!(
            disconnection_certificate(&g, &wit).unwrap_err(),
            CertificateError::NotEquicardinal
        );
    }

    #[test]
    fn local_exchange_golden() {
        let f = pairs(4, 0);
        let cert = local_exchange_certificate(&f, s(&[1, 2]), s(&[3, 4])).unwrap();
        assert_eq!(cert.params.dual.as_ref().unwrap().phat, vec![frac(1, 2); 4]);
        assert_eq!(cert.params.a, Some(int(1)));
        assert_eq!(
            cert.values.p,
            PriceVector::new(vec![frac(3, 2), frac(-1, 2), frac(1, 2), frac(1, 2)])
        );
        assert_eq!(cert.values.q, PriceVector::new(vec![frac(1, 2); 4]));
        let v = &cert.values;
        assert_eq!((&v.g_p, &v.g_q, &v.g_join, &v.g_meet), (&int(0), &int(0), &int(0), &int(1)));
        assert_eq!(cert.excess(), int(1));
        brute_check(&f, &cert);
        assert!(cert.verify(&f));
    }

    #[test]
    fn local_exchange_with_rails() {
        // Same pattern on {1,2,3,4} with 5 always present and 6 never.
        let hi = [s(&[1, 2]), s(&[3, 4])];
        let f = SetFn::from_finite(
            6,
            subsets_of_size(4, 2).map(|x| (x.with(5), int(hi.contains(&x) as i64))),
        )
        .unwrap();
        let cert = local_exchange_certificate(&f, s(&[1, 2, 5]), s(&[3, 4, 5])).unwrap();
        let m = cert.params.big_m.clone();
        assert_eq!(cert.values.p.get(5), &-m.clone());
        assert_eq!(cert.values.p.get(6), &m);
        assert_eq!(cert.params.c, m);
        assert_eq!(cert.excess(), int(1));
        brute_check(&f, &cert);
    }

    #[test]
    fn local_exchange_smaller_step() {
        let f = pairs(4, 0);
        for a in [frac(1, 2), frac(1, 4), frac(1, 1000)] {
            let cert = local_exchange_certificate_with_step(&f, s(&[1, 2]), s(&[3, 4]), a.clone()).unwrap();
            assert_eq!(cert.excess(), a);
            brute_check(&f, &cert);
        }
        assert!(local_exchange_certificate_with_step(&f, s(&[1, 2]), s(&[3, 4]), int(2)).is_err());
        assert!(local_exchange_certificate_with_step(&f, s(&[1, 2]), s(&[3, 4]), int(0)).is_err());
    }

    #[test]
    fn local_exchange_rejects_passing_pair() {
        let failing = pairs(4, 0);
        let f = SetFn::from_finite(4, subsets_of_size(4, 2).map(|x| (x, int(0)))).unwrap();
        assert!(matches!(
            local_exchange_certificate(&f, s(&[1, 2]), s(&[3, 4])),
            Err(CertificateError::NotALocalFailure { .. })
        ));
        assert!(matches!(
            local_exchange_certificate(&failing, s(&[1, 2]), s(&[1, 3])),
            Err(CertificateError::NotALocalFailure { .. })
        ));
    }

    #[test]
    fn certify_dispatch() {
        let cap = SetFn::from_fn(3, |x| int(x.len().min(1) as i64).into()).unwrap();
        assert_eq!(certify_not_mnat(&cap), Ok(None));

        let f = pairs(4, 0);
        let cert = certify_not_mnat(&f).unwrap().unwrap();
        assert_eq!(cert.target, CertificateTarget::Base);
        assert_eq!(cert.params.construction, Construction::LocalExchange);
        brute_check(&f, &cert);

        let g = pairs_disconnect(0);
        let cert = certify_not_mnat(&g).unwrap().unwrap();
        assert_eq!(cert.params.construction, Construction::Disconnection);
        brute_check(&g, &cert);
    }

    #[test]
    fn certify_non_equicardinal() {
        let f = SetFn::from_finite(
            2,
            [(Subset::EMPTY, int(0)), (s(&[1]), int(1)), (s(&[2]), int(1)), (s(&[1, 2]), int(3))],
        )
        .unwrap();
        let cert = certify_not_mnat(&f).unwrap().unwrap();
        assert_eq!(cert.target, CertificateTarget::Lifted { slots: 4 });
        assert_eq!(cert.values.p.len(), 6);
        assert!(cert.verify(&f));
        let lf = lift(&f, Some(4)).unwrap();
        brute_check(lf.lifted(), &cert);
        let split = |v: &PriceVector| {
            let (a, b) = v.entries().split_at(2);
            (PriceVector::new(a.to_vec()), PriceVector::new(b.to_vec()))
        };
        let (pn, ps) = split(&cert.values.meet);
        assert_eq!(lf.conjugate(&pn, &ps).unwrap(), cert.values.g_meet);
    }
}
