//! Deterministic fixtures and seeded instance families.
//!
//! Positive families (cardinality-concave, weighted matroid bases and
//! independent sets, block-separable concave) are M♮-concave by
//! construction; negative instances come from named fixtures and from
//! perturbing positive ones.

use num::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{frac, int, Rational};
use crate::setfn::{ExtValue, SetFn, SetFnError};
use crate::subset::{all_subsets, subsets_of_size, Subset};

/// Generated families stay small: checker suites are quadratic in `2^n`.
pub const MAX_GENERATED_N: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("expected {expected} values, got {got}")]
    Length { expected: usize, got: usize },
    #[error("breakpoints are not concave at {0}")]
    NotConcave(usize),
    #[error("malformed matroid: {0}")]
    Malformed(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("perturbation magnitude must be nonnegative")]
    NegativeMagnitude,
    #[error("generated ground set {0} exceeds {MAX_GENERATED_N}")]
    TooLarge(usize),
    #[error(transparent)]
    SetFn(#[from] SetFnError),
}

fn concave_at(phi: &[Rational]) -> Option<usize> {
    (1..phi.len().saturating_sub(1)).find(|&k| &phi[k] - &phi[k - 1] < &phi[k + 1] - &phi[k])
}

/// `f(X) = φ(|X|)` with `φ(0), …, φ(n)` concave.
pub fn cardinality_concave(n: usize, phi: &[Rational]) -> Result<SetFn, GenError> {
    if phi.len() != n + 1 {
        return Err(GenError::Length {
            expected: n + 1,
            got: phi.len(),
        });
    }
    cardinality_concave_on_range(n, 0, phi)
}

/// `f(X) = φ(|X| − lo)` when `lo ≤ |X| < lo + φ.len()`, `−∞` otherwise.
pub fn cardinality_concave_on_range(n: usize, lo: usize, phi: &[Rational]) -> Result<SetFn, GenError> {
    if phi.is_empty() || lo + phi.len() > n + 1 {
        return Err(GenError::Length {
            expected: n + 1 - lo.min(n + 1),
            got: phi.len(),
        });
    }
    if let Some(k) = concave_at(phi) {
        return Err(GenError::NotConcave(k + lo));
    }
    Ok(SetFn::from_fn(n, |x| {
        let k = x.len();
        if k >= lo && k < lo + phi.len() {
            ExtValue::Finite(phi[k - lo].clone())
        } else {
            ExtValue::NegInfinity
        }
    })?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MatroidKind {
    /// Sets of size at most `k` are independent.
    Uniform { k: usize },
    /// `blocks` partition `{1, …, n}`; at most `caps[b]` elements from block `b`.
    Partition { blocks: Vec<Vec<usize>>, caps: Vec<usize> },
    /// Element `e` is edge `edges[e − 1]` on vertices `0..vertices`; independent
    /// sets are forests.
    Graphic { vertices: usize, edges: Vec<(usize, usize)> },
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, v: usize) -> usize {
        let mut root = v;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut cur = v;
        while self.0[cur] != root {
            let next = self.0[cur];
            self.0[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

impl MatroidKind {
    fn validate(&self, n: usize) -> Result<(), GenError> {
        match self {
            MatroidKind::Uniform { k } if *k > n => Err(GenError::Malformed(format!("rank {k} exceeds {n} elements"))),
            MatroidKind::Uniform { .. } => Ok(()),
            MatroidKind::Partition { blocks, caps } => {
                if blocks.len() != caps.len() {
                    return Err(GenError::Malformed("one capacity per block required".into()));
                }
                let mut seen = vec![false; n + 1];
                for &e in blocks.iter().flatten() {
                    if e == 0 || e > n || seen[e] {
                        return Err(GenError::Malformed(format!("element {e} misplaced in partition")));
                    }
                    seen[e] = true;
                }
                if seen[1..].iter().any(|s| !s) {
                    return Err(GenError::Malformed("blocks do not cover the ground set".into()));
                }
                Ok(())
            }
            MatroidKind::Graphic { vertices, edges } => {
                if edges.len() != n {
                    return Err(GenError::Malformed(format!("{} edges for {n} weights", edges.len())));
                }
                match edges.iter().find(|(u, v)| u >= vertices || v >= vertices) {
                    Some(e) => Err(GenError::Malformed(format!("edge {e:?} leaves the vertex set"))),
                    None => Ok(()),
                }
            }
        }
    }

    pub fn is_independent(&self, x: Subset) -> bool {
        match self {
            MatroidKind::Uniform { k } => x.len() <= *k,
            MatroidKind::Partition { blocks, caps } => blocks
                .iter()
                .zip(caps)
                .all(|(b, &cap)| b.iter().filter(|&&e| x.contains(e)).count() <= cap),
            MatroidKind::Graphic { vertices, edges } => {
                let mut dsu = Dsu((0..*vertices).collect());
                x.elements().all(|e| {
                    let (u, v) = edges[e - 1];
                    dsu.union(u, v)
                })
            }
        }
    }
}

fn weighted_on<P>(weights: &[Rational], keep: P) -> Result<SetFn, GenError>
where
    P: Fn(Subset) -> bool,
{
    let n = weights.len();
    if n > MAX_GENERATED_N {
        return Err(GenError::TooLarge(n));
    }
    Ok(SetFn::from_fn(n, |x| {
        if keep(x) {
            ExtValue::Finite(x.elements().map(|e| &weights[e - 1]).sum())
        } else {
            ExtValue::NegInfinity
        }
    })?)
}

/// `f(X) = w(X)` on the bases of the matroid, `−∞` elsewhere.
pub fn matroid_weighted(kind: &MatroidKind, weights: &[Rational]) -> Result<SetFn, GenError> {
    let n = weights.len();
    kind.validate(n)?;
    let rank = all_subsets(n)
        .filter(|&x| kind.is_independent(x))
        .map(Subset::len)
        .max()
        .unwrap_or(0);
    weighted_on(weights, |x| x.len() == rank && kind.is_independent(x))
}

/// `f(X) = w(X)` on the independent sets of the matroid.
pub fn matroid_independent_weighted(kind: &MatroidKind, weights: &[Rational]) -> Result<SetFn, GenError> {
    kind.validate(weights.len())?;
    weighted_on(weights, |x| kind.is_independent(x))
}

/// `f(X) = Σ_b φ_b(|X ∩ B_b|) + w(X)` over a partition into blocks, each
/// `φ_b` concave.
pub fn block_concave(blocks: &[Vec<usize>], phis: &[Vec<Rational>], weights: &[Rational]) -> Result<SetFn, GenError> {
    let n = weights.len();
    MatroidKind::Partition {
        blocks: blocks.to_vec(),
        caps: vec![0; blocks.len()],
    }
    .validate(n)?;
    if phis.len() != blocks.len() {
        return Err(GenError::Length {
            expected: blocks.len(),
            got: phis.len(),
        });
    }
    for (b, phi) in blocks.iter().zip(phis) {
        if phi.len() != b.len() + 1 {
            return Err(GenError::Length {
                expected: b.len() + 1,
                got: phi.len(),
            });
        }
        if let Some(k) = concave_at(phi) {
            return Err(GenError::NotConcave(k));
        }
    }
    let masks: Vec<Subset> = blocks.iter().map(|b| Subset::from_elements(b.iter().copied())).collect();
    Ok(SetFn::from_fn(n, |x| {
        let sep: Rational = masks
            .iter()
            .zip(phis)
            .map(|(m, phi)| phi[x.intersection(*m).len()].clone())
            .sum();
        let lin: Rational = x.elements().map(|e| &weights[e - 1]).sum();
        ExtValue::Finite(sep + lin)
    })?)
}

pub const FIXTURE_NAMES: &[&str] = &[
    "pairs-fail",
    "pairs-disconnect",
    "two-point-n2",
    "nonequi-fail",
    "single-point",
    "step-n2",
    "single-failure",
    "uniform-2-4",
];

fn listed(n: usize, items: &[(&[usize], i64)]) -> Result<SetFn, GenError> {
    Ok(SetFn::from_finite(
        n,
        items.iter().map(|(x, v)| (Subset::from_elements(x.iter().copied()), int(*v))),
    )?)
}

/// Named golden fixtures.
pub fn fixture(name: &str) -> Result<SetFn, GenError> {
    match name {
        // connected; the matching {12, 34} strictly beats both cross matchings
        "pairs-fail" => Ok(SetFn::from_finite(
            4,
            subsets_of_size(4, 2).map(|x| {
                let hi = x == Subset::from_elements([1, 2]) || x == Subset::from_elements([3, 4]);
                (x, int(hi as i64))
            }),
        )?),
        "pairs-disconnect" => listed(4, &[(&[1, 2], 1), (&[3, 4], 1)]),
        "two-point-n2" => listed(2, &[(&[], 0), (&[1], 1), (&[2], 1), (&[1, 2], 1)]),
        "nonequi-fail" => listed(2, &[(&[], 0), (&[1], 1), (&[2], 1), (&[1, 2], 3)]),
        "single-point" => listed(1, &[(&[], 0)]),
        "step-n2" => listed(2, &[(&[], 0), (&[1], 1)]),
        // M♮-concave but not M-concave: exactly one failing exchange triple
        "single-failure" => listed(4, &[(&[1, 2], 0), (&[1, 2, 3], 0)]),
        "uniform-2-4" => matroid_weighted(&MatroidKind::Uniform { k: 2 }, &[int(0), int(0), int(0), int(0)]),
        other => Err(GenError::UnknownFixture(other.to_string())),
    }
}

/// Seeded rationals `k / den` with `|k| ≤ range · den`.
pub fn random_rationals(count: usize, range: i64, den: i64, seed: u64) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| frac(rng.gen_range(-range * den..=range * den), den))
        .collect()
}

/// Adds `magnitude · k/8`, `k ∈ [−8, 8]`, to every finite entry.
pub fn perturbed(base: &SetFn, magnitude: &Rational, seed: u64) -> Result<SetFn, GenError> {
    if magnitude.is_negative() {
        return Err(GenError::NegativeMagnitude);
    }
    if magnitude.is_zero() {
        return Ok(base.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let table = base
        .table()
        .iter()
        .map(|v| match v {
            ExtValue::Finite(v) => ExtValue::Finite(v + magnitude * frac(rng.gen_range(-8..=8), 8)),
            ExtValue::NegInfinity => ExtValue::NegInfinity,
        })
        .collect();
    Ok(SetFn::new(base.n(), table)?)
}

/// Random function whose domain keeps each subset with probability
/// `density` (the empty set is kept if nothing else is).
pub fn random_function(n: usize, density: f64, seed: u64) -> Result<SetFn, GenError> {
    if n > MAX_GENERATED_N {
        return Err(GenError::TooLarge(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut table: Vec<ExtValue> = all_subsets(n)
        .map(|_| {
            if rng.gen_bool(density) {
                ExtValue::Finite(frac(rng.gen_range(-12..=12), rng.gen_range(1..=3)))
            } else {
                ExtValue::NegInfinity
            }
        })
        .collect();
    if table.iter().all(|v| !v.is_finite()) {
        table[0] = ExtValue::zero();
    }
    Ok(SetFn::new(n, table)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    CardinalityConcave,
    TruncatedCardinalityConcave,
    UniformBases,
    PartitionBases,
    GraphicBases,
    UniformIndependent,
    GraphicIndependent,
    BlockConcave,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::CardinalityConcave,
        Family::TruncatedCardinalityConcave,
        Family::UniformBases,
        Family::PartitionBases,
        Family::GraphicBases,
        Family::UniformIndependent,
        Family::GraphicIndependent,
        Family::BlockConcave,
    ];

    /// Families whose domain is a matroid basis family.
    pub fn is_equicardinal(self) -> bool {
        matches!(self, Family::UniformBases | Family::PartitionBases | Family::GraphicBases)
    }
}

/// A reproducible M♮-concave instance: `family` on `n` elements, with every
/// random choice drawn from `seed`. `params` hold the linear weights used.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub family: Family,
    pub n: usize,
    pub seed: u64,
    #[serde(with = "crate::rational::serde_vec")]
    pub params: Vec<Rational>,
}

/// Random concave sequence of length `len`: start anywhere, then
/// nonincreasing increments.
fn random_concave(rng: &mut ChaCha8Rng, len: usize) -> Vec<Rational> {
    let mut incs: Vec<Rational> = (1..len).map(|_| frac(rng.gen_range(-12..=12), rng.gen_range(1..=2))).collect();
    incs.sort_by(|a, b| b.cmp(a));
    let mut out = Vec::with_capacity(len);
    let mut cur = frac(rng.gen_range(-6..=6), 1);
    out.push(cur.clone());
    for d in incs {
        cur += d;
        out.push(cur.clone());
    }
    out
}

fn random_graph(rng: &mut ChaCha8Rng, edges: usize) -> (usize, Vec<(usize, usize)>) {
    let vertices = rng.gen_range(2..=edges.max(2) + 1).min(5);
    let list = (0..edges)
        .map(|_| {
            let u = rng.gen_range(0..vertices);
            let mut v = rng.gen_range(0..vertices - 1);
            if v >= u {
                v += 1;
            }
            (u, v)
        })
        .collect();
    (vertices, list)
}

fn random_blocks(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<usize>> {
    let k = rng.gen_range(1..=n.min(3));
    let mut blocks = vec![Vec::new(); k];
    for e in 1..=n {
        blocks[if e <= k { e - 1 } else { rng.gen_range(0..k) }].push(e);
    }
    blocks
}

impl InstanceSpec {
    pub fn new(family: Family, n: usize, seed: u64) -> Self {
        InstanceSpec {
            family,
            n,
            seed,
            params: random_rationals(n, 5, 2, seed ^ 0x5eed),
        }
    }

    /// Picks a family from `seed` as well.
    pub fn random(n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let family = Family::ALL[rng.gen_range(0..Family::ALL.len())];
        InstanceSpec::new(family, n, seed)
    }

    pub fn build(&self) -> Result<SetFn, GenError> {
        let n = self.n;
        if n > MAX_GENERATED_N {
            return Err(GenError::TooLarge(n));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let w = &self.params;
        match self.family {
            Family::CardinalityConcave => {
                let phi = random_concave(&mut rng, n + 1);
                let base = cardinality_concave(n, &phi)?;
                Ok(base.tilt(&crate::setfn::PriceVector::new(w.clone())))
            }
            Family::TruncatedCardinalityConcave => {
                let lo = rng.gen_range(0..=n);
                let len = rng.gen_range(1..=n + 1 - lo);
                let phi = random_concave(&mut rng, len);
                let base = cardinality_concave_on_range(n, lo, &phi)?;
                Ok(base.tilt(&crate::setfn::PriceVector::new(w.clone())))
            }
            Family::UniformBases => matroid_weighted(&MatroidKind::Uniform { k: rng.gen_range(0..=n) }, w),
            Family::UniformIndependent => {
                matroid_independent_weighted(&MatroidKind::Uniform { k: rng.gen_range(0..=n) }, w)
            }
            Family::PartitionBases => {
                let blocks = random_blocks(&mut rng, n);
                let caps = blocks.iter().map(|b| rng.gen_range(0..=b.len())).collect();
                matroid_weighted(&MatroidKind::Partition { blocks, caps }, w)
            }
            Family::GraphicBases => {
                let (vertices, edges) = random_graph(&mut rng, n);
                matroid_weighted(&MatroidKind::Graphic { vertices, edges }, w)
            }
            Family::GraphicIndependent => {
                let (vertices, edges) = random_graph(&mut rng, n);
                matroid_independent_weighted(&MatroidKind::Graphic { vertices, edges }, w)
            }
            Family::BlockConcave => {
                let blocks = random_blocks(&mut rng, n);
                let phis: Vec<_> = blocks.iter().map(|b| random_concave(&mut rng, b.len() + 1)).collect();
                block_concave(&blocks, &phis, w)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{check_connected, check_equicardinal, check_m_concave, check_mnat_concave, Verdict};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn cardinality_examples() {
        let f = cardinality_concave(3, &ints(&[0, 1, 1, 1])).unwrap();
        assert_eq!(f.eval(Subset::from_elements([1, 3])), &ExtValue::Finite(int(1)));
        assert!(check_mnat_concave(&f).is_pass());
        assert!(check_mnat_concave(&cardinality_concave(3, &ints(&[0, 1, 2, 3])).unwrap()).is_pass());
        assert_eq!(cardinality_concave(2, &ints(&[0, 1, 3])), Err(GenError::NotConcave(1)));
        assert!(matches!(cardinality_concave(2, &ints(&[0, 1])), Err(GenError::Length { .. })));
    }

    #[test]
    fn matroid_examples() {
        let u = matroid_weighted(&MatroidKind::Uniform { k: 2 }, &ints(&[0, 0, 0, 0])).unwrap();
        assert_eq!(u.domain().len(), 6);
        assert!(check_m_concave(&u).is_pass());

        let tri = MatroidKind::Graphic {
            vertices: 3,
            edges: vec![(0, 1), (1, 2), (0, 2)],
        };
        let f = matroid_weighted(&tri, &random_rationals(3, 5, 3, 7)).unwrap();
        assert_eq!(f.domain().len(), 3);
        assert!(f.domain().iter().all(|x| x.len() == 2));
        assert!(check_m_concave(&f).is_pass());

        let part = MatroidKind::Partition {
            blocks: vec![vec![1, 2], vec![3, 4]],
            caps: vec![1, 1],
        };
        let f = matroid_weighted(&part, &ints(&[3, -1, 4, 1])).unwrap();
        let dom: Vec<_> = f.domain().iter().map(|x| x.to_vec()).collect();
        assert_eq!(dom, vec![vec![1, 3], vec![2, 3], vec![1, 4], vec![2, 4]]);
        assert!(!f.in_domain(Subset::from_elements([1, 2])));
        assert!(check_m_concave(&f).is_pass());
    }

    #[test]
    fn malformed_matroids() {
        let bad = [
            MatroidKind::Uniform { k: 5 },
            MatroidKind::Partition { blocks: vec![vec![1, 2]], caps: vec![1] },
            MatroidKind::Partition { blocks: vec![vec![1, 2, 3], vec![3, 4]], caps: vec![1, 1] },
            MatroidKind::Graphic { vertices: 2, edges: vec![(0, 1), (1, 2), (0, 0), (0, 1)] },
            MatroidKind::Graphic { vertices: 3, edges: vec![(0, 1)] },
        ];
        for kind in bad {
            assert!(matches!(matroid_weighted(&kind, &ints(&[0; 4])), Err(GenError::Malformed(_))), "{kind:?}");
        }
    }

    #[test]
    fn fixtures_behave_as_documented() {
        let pf = fixture("pairs-fail").unwrap();
        assert_eq!(pf.domain().len(), 6);
        assert_eq!(pf.eval(Subset::from_elements([1, 2])), &ExtValue::Finite(int(1)));
        assert_eq!(pf.eval(Subset::from_elements([2, 4])), &ExtValue::Finite(int(0)));
        assert_eq!(check_connected(&pf), Ok(Verdict::Pass));

        assert!(check_connected(&fixture("pairs-disconnect").unwrap()).unwrap().witness().is_some());
        assert!(check_mnat_concave(&fixture("two-point-n2").unwrap()).is_pass());

        let w = check_mnat_concave(&fixture("nonequi-fail").unwrap()).into_witness().unwrap();
        assert_eq!((w.x, w.y, w.i), (Subset::from_elements([1, 2]), Subset::EMPTY, 1));

        let sf = fixture("single-failure").unwrap();
        assert!(check_mnat_concave(&sf).is_pass());
        assert_eq!(crate::axioms::find_exchange_failures(&sf).len(), 1);

        assert!(check_m_concave(&fixture("uniform-2-4").unwrap()).is_pass());
        for name in FIXTURE_NAMES {
            assert!(fixture(name).is_ok());
        }
        assert_eq!(fixture("nope"), Err(GenError::UnknownFixture("nope".into())));
    }

    #[test]
    fn perturbation() {
        let base = fixture("uniform-2-4").unwrap();
        assert_eq!(perturbed(&base, &int(0), 3).unwrap(), base);
        assert_eq!(perturbed(&base, &int(-1), 3), Err(GenError::NegativeMagnitude));
        let noisy = perturbed(&base, &int(10), 3).unwrap();
        assert_eq!(noisy.domain(), base.domain());
        assert_eq!(noisy, perturbed(&base, &int(10), 3).unwrap());
    }

    /// Smallest margin by which an exchange inequality holds, ignoring
    /// inequalities that are invariant under any perturbation (the pair on
    /// the right is `{X, Y}` again). `None` if every inequality is invariant.
    fn robust_margin(f: &SetFn) -> Option<Rational> {
        let mut margin: Option<Rational> = None;
        for &x in f.domain() {
            for &y in f.domain() {
                for i in x.difference(y).elements() {
                    let lhs = f.eval(x) + f.eval(y);
                    let mut options = vec![(x.without(i), y.with(i))];
                    options.extend(y.difference(x).elements().map(|j| (x.swap(i, j), y.swap(j, i))));
                    if options.iter().any(|&(a, b)| (a, b) == (y, x) || (a, b) == (x, y)) {
                        continue;
                    }
                    let best = options
                        .iter()
                        .filter_map(|&(a, b)| (f.eval(a) + f.eval(b)).finite().cloned())
                        .max()
                        .expect("f is M♮-concave");
                    let gap = best - lhs.finite().unwrap();
                    margin = Some(margin.map_or(gap.clone(), |m: Rational| m.min(gap)));
                }
            }
        }
        margin
    }

    #[test]
    fn perturbation_within_margin_keeps_mnat() {
        let base = fixture("two-point-n2").unwrap();
        let margin = robust_margin(&base).unwrap();
        assert_eq!(margin, int(1));
        // Four values per inequality, each moved by at most `magnitude`.
        let magnitude = &margin / int(4);
        for seed in 0..50 {
            assert!(check_mnat_concave(&perturbed(&base, &magnitude, seed).unwrap()).is_pass());
        }
        // Twice the margin is enough to break it for some seed.
        let broken = (0..50).any(|seed| !check_mnat_concave(&perturbed(&base, &(&margin * int(2)), seed).unwrap()).is_pass());
        assert!(broken);
    }

    #[test]
    fn families_are_mnat_concave() {
        for seed in 0..120u64 {
            for n in 1..=5 {
                let spec = InstanceSpec::random(n, seed);
                let f = spec.build().unwrap();
                assert!(check_mnat_concave(&f).is_pass(), "{spec:?}");
                if spec.family.is_equicardinal() {
                    assert!(check_equicardinal(&f).is_pass());
                    assert!(check_m_concave(&f).is_pass(), "{spec:?}");
                }
                assert_eq!(spec.build().unwrap(), f);
            }
        }
    }

    #[test]
    fn every_family_is_reachable() {
        let mut seen = std::collections::HashSet::new();
        for seed in 0..200 {
            seen.insert(InstanceSpec::random(4, seed).family);
        }
        assert_eq!(seen.len(), Family::ALL.len());
    }
}
