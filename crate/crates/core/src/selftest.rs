//! Randomized end-to-end check of conjugate submodularity, certificates
//! and the supporting characterizations. Every property keeps a count of instances examined
//! and of violations; a correct build reports zero violations everywhere.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::axioms::{
    check_equicardinal, check_m_concave, check_m_via_local, check_mnat_concave, check_submodular_pair,
    evaluate_unit,
};
use crate::certificates::{certify_not_mnat, CertificateTarget, SubmodularityCertificate};
use crate::generators::{fixture, perturbed, random_function, InstanceSpec, FIXTURE_NAMES};
use crate::lift::lift;
use crate::rational::{frac, int, Rational};
use crate::setfn::{ExtValue, PriceVector, SetFn};
use crate::subset::all_subsets;

pub const MAX_SELFTEST_N: usize = 6;
/// Largest lifted ground set examined by the lift properties.
pub const MAX_LIFTED_N: usize = 8;
const UNIT_PROBES: usize = 4;
const PAIR_PROBES: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SelftestError {
    #[error("--n must lie in 1..={MAX_SELFTEST_N}, got {0}")]
    BadSize(usize),
    #[error("--trials must be at least 1")]
    NoTrials,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PropertyCount {
    pub name: &'static str,
    pub checked: usize,
    pub violations: usize,
}

impl PropertyCount {
    fn record(&mut self, ok: bool) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelftestSummary {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub exhaustive: bool,
    pub properties: Vec<PropertyCount>,
}

impl SelftestSummary {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(|p| p.violations == 0)
    }
}

#[derive(Default)]
struct Tally {
    forward_unit: PropertyCount,
    forward_pair: PropertyCount,
    reverse: PropertyCount,
    local_characterization: PropertyCount,
    m_vs_mnat: PropertyCount,
    lift_preserves: PropertyCount,
    lifted_unit: PropertyCount,
    lifted_formula: PropertyCount,
}

/// `max f(X) − p(X)` by scanning the whole table.
fn table_conjugate(f: &SetFn, p: &PriceVector) -> Rational {
    all_subsets(f.n())
        .filter_map(|x| f.eval(x).finite().map(|v| v - p.sum_over(x)))
        .max()
        .expect("nonempty domain")
}

fn probe_price(rng: &mut ChaCha8Rng, n: usize, big: &Rational) -> PriceVector {
    let grid = [
        -(big * int(2)),
        -big.clone(),
        int(-1),
        frac(-1, 2),
        int(0),
        frac(1, 2),
        int(1),
        big.clone(),
        big * int(2),
    ];
    PriceVector::new(
        (0..n)
            .map(|_| {
                if rng.gen_bool(0.25) {
                    frac(rng.gen_range(-8..=8), 2)
                } else {
                    grid.choose(rng).expect("nonempty").clone()
                }
            })
            .collect(),
    )
}

fn probe_step(rng: &mut ChaCha8Rng, big: &Rational) -> Rational {
    [frac(1, 2), int(1), big.clone(), big * int(2) + int(1)]
        .choose(rng)
        .expect("nonempty")
        .clone()
}

fn two_coords(rng: &mut ChaCha8Rng, n: usize) -> (usize, usize) {
    let i = rng.gen_range(1..=n);
    let mut j = rng.gen_range(1..n);
    if j >= i {
        j += 1;
    }
    (i, j)
}

fn certificate_checks_out(f: &SetFn, cert: &SubmodularityCertificate) -> bool {
    let target = match cert.target {
        CertificateTarget::Base => f.clone(),
        CertificateTarget::Lifted { slots } => match lift(f, Some(slots)) {
            Ok(lf) => lf.lifted().clone(),
            Err(_) => return false,
        },
    };
    let v = &cert.values;
    let g = |p: &PriceVector| table_conjugate(&target, p);
    let (gp, gq, gj, gm) = (g(&v.p), g(&v.q), g(&v.p.join(&v.q)), g(&v.p.meet(&v.q)));
    gp == v.g_p && gq == v.g_q && gj == v.g_join && gm == v.g_meet && gp + gq < gj + gm
}

impl Tally {
    /// Structural equivalences that hold for every function.
    fn structural(&mut self, f: &SetFn, rng: &mut ChaCha8Rng) {
        let m = check_m_concave(f).is_pass();
        let mnat = check_mnat_concave(f).is_pass();
        let equi = check_equicardinal(f).is_pass();
        self.local_characterization.record(m == check_m_via_local(f).is_pass());
        self.m_vs_mnat.record(m == (mnat && equi));

        let Ok(lf) = lift(f, None) else { return };
        if lf.lifted().n() > MAX_LIFTED_N {
            return;
        }
        self.lift_preserves.record(mnat == check_m_concave(lf.lifted()).is_pass());
        let total = lf.lifted().n();
        let big = lf.lifted().max_abs_value();
        let p = probe_price(rng, f.n(), &big);
        let q = probe_price(rng, lf.slots(), &big);
        let formula = lf.conjugate(&p, &q).expect("dimensions match");
        self.lifted_formula.record(formula == lf.lifted().conjugate(&p.concat(&q)));

        if mnat && total >= 2 {
            let (i, j) = two_coords(rng, total);
            let (a, b) = (probe_step(rng, &big), probe_step(rng, &big));
            let split = |v: &PriceVector| {
                let (head, tail) = v.entries().split_at(f.n());
                lf.conjugate(&PriceVector::new(head.to_vec()), &PriceVector::new(tail.to_vec()))
                    .expect("dimensions match")
            };
            let e = evaluate_unit(split, &p.concat(&q), i, j, &a, &b);
            self.lifted_unit.record(e.holds());
        }
    }

    fn forward(&mut self, f: &SetFn, rng: &mut ChaCha8Rng) {
        let n = f.n();
        let big = f.max_abs_value();
        if n >= 2 {
            for _ in 0..UNIT_PROBES {
                let p = probe_price(rng, n, &big);
                let (i, j) = two_coords(rng, n);
                let (a, b) = (probe_step(rng, &big), probe_step(rng, &big));
                self.forward_unit.record(evaluate_unit(|v| f.conjugate(v), &p, i, j, &a, &b).holds());
            }
        }
        for _ in 0..PAIR_PROBES {
            let p = probe_price(rng, n, &big);
            let q = probe_price(rng, n, &big);
            self.forward_pair.record(check_submodular_pair(f, &p, &q).is_pass());
        }
    }

    fn reverse(&mut self, f: &SetFn) {
        let ok = match certify_not_mnat(f) {
            Ok(Some(cert)) => cert.verify(f) && certificate_checks_out(f, &cert),
            Ok(None) | Err(_) => false,
        };
        self.reverse.record(ok);
    }

    fn examine(&mut self, f: &SetFn, rng: &mut ChaCha8Rng) {
        self.structural(f, rng);
        if check_mnat_concave(f).is_pass() {
            self.forward(f, rng);
        } else {
            self.reverse(f);
        }
    }

    fn into_vec(self) -> Vec<PropertyCount> {
        let named = |name, c: PropertyCount| PropertyCount { name, ..c };
        vec![
            named("forward-unit-submodular", self.forward_unit),
            named("forward-pair-submodular", self.forward_pair),
            named("reverse-certificate", self.reverse),
            named("local-characterization", self.local_characterization),
            named("m-iff-mnat-and-equicardinal", self.m_vs_mnat),
            named("mnat-iff-lift-m", self.lift_preserves),
            named("lifted-unit-submodular", self.lifted_unit),
            named("lifted-conjugate-formula", self.lifted_formula),
        ]
    }
}

/// Every function on `n ≤ 2` elements with the given domain pattern,
/// values drawn from `rng`.
fn exhaustive_instances(n: usize, rng: &mut ChaCha8Rng) -> Vec<SetFn> {
    let cells = 1usize << n;
    (1u32..(1 << cells))
        .map(|pattern| {
            let table = (0..cells)
                .map(|c| {
                    if pattern >> c & 1 == 1 {
                        ExtValue::Finite(frac(rng.gen_range(-6..=6), rng.gen_range(1..=2)))
                    } else {
                        ExtValue::NegInfinity
                    }
                })
                .collect();
            SetFn::new(n, table).expect("nonempty domain")
        })
        .collect()
}

/// Runs the self-test on ground sets of size `1..=n`.
pub fn run_selftest(n: usize, trials: usize, seed: u64) -> Result<SelftestSummary, SelftestError> {
    if !(1..=MAX_SELFTEST_N).contains(&n) {
        return Err(SelftestError::BadSize(n));
    }
    if trials == 0 {
        return Err(SelftestError::NoTrials);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally::default();

    for name in FIXTURE_NAMES {
        let f = fixture(name).expect("known fixture");
        if f.n() <= n {
            tally.examine(&f, &mut rng);
        }
    }

    let exhaustive = n <= 2;
    if exhaustive {
        for size in 1..=n {
            for _ in 0..trials {
                for f in exhaustive_instances(size, &mut rng) {
                    tally.examine(&f, &mut rng);
                }
            }
        }
    }

    for t in 0..trials {
        let size = 1 + t % n;
        let s = seed.wrapping_add(t as u64);
        let positive = InstanceSpec::random(size, s).build().expect("n within limits");
        tally.examine(&positive, &mut rng);

        let magnitude = [frac(1, 2), int(2), int(8)][t % 3].clone();
        let noisy = perturbed(&positive, &magnitude, s).expect("nonnegative magnitude");
        tally.examine(&noisy, &mut rng);

        let density = [0.3, 0.6, 0.9][t % 3];
        let random = random_function(size, density, s).expect("n within limits");
        tally.examine(&random, &mut rng);
    }

    Ok(SelftestSummary {
        n,
        trials,
        seed,
        exhaustive,
        properties: tally.into_vec(),
    })
}
