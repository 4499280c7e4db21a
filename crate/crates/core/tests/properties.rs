use proptest::prelude::*;

use mnat::axioms::{check_equicardinal, check_m_concave, check_mnat_concave};
use mnat::generators::{fixture, random_function, InstanceSpec};
use mnat::rational::{frac, int};
use mnat::subset::all_subsets;
use mnat::{lift, PriceVector, Rational, SetFn};

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=4).prop_map(|(n, d)| frac(n, d))
}

fn prices(n: usize) -> impl Strategy<Value = PriceVector> {
    proptest::collection::vec(rational(), n).prop_map(PriceVector::new)
}

fn function() -> impl Strategy<Value = SetFn> {
    (1usize..=5, 0u64..10_000, 0.2f64..0.9).prop_map(|(n, seed, d)| random_function(n, d, seed).unwrap())
}

fn with_prices(k: usize) -> impl Strategy<Value = (SetFn, Vec<PriceVector>)> {
    function().prop_flat_map(move |f| {
        let n = f.n();
        (Just(f), proptest::collection::vec(prices(n), k))
    })
}

proptest! {
    #[test]
    fn conjugate_is_antitone((f, ps) in with_prices(2)) {
        let lo = ps[0].meet(&ps[1]);
        let hi = ps[0].join(&ps[1]);
        prop_assert!(f.conjugate(&lo) >= f.conjugate(&hi));
    }

    #[test]
    fn conjugate_translation((f, ps) in with_prices(2)) {
        let (p, q) = (&ps[0], &ps[1]);
        prop_assert_eq!(f.tilt(p).conjugate(q), f.conjugate(&q.sub(p)));
    }

    #[test]
    fn conjugate_is_attained((f, ps) in with_prices(1)) {
        let p = &ps[0];
        let (g, arg) = f.conjugate_argmax(p);
        for x in all_subsets(f.n()) {
            if let Some(v) = f.finite_value(x) {
                prop_assert!(g >= v - p.sum_over(x));
            }
        }
        prop_assert_eq!(g, f.finite_value(arg).unwrap() - p.sum_over(arg));
    }

    #[test]
    fn m_iff_mnat_and_equicardinal(f in function()) {
        let m = check_m_concave(&f).is_pass();
        prop_assert_eq!(m, check_mnat_concave(&f).is_pass() && check_equicardinal(&f).is_pass());
    }

    #[test]
    fn lift_preserves_concavity_class(n in 1usize..=4, seed in 0u64..5_000, noisy in any::<bool>()) {
        let base = InstanceSpec::random(n, seed).build().unwrap();
        let f = if noisy {
            mnat::generators::perturbed(&base, &int(3), seed).unwrap()
        } else {
            base
        };
        let lf = lift(&f, None).unwrap();
        prop_assume!(lf.lifted().n() <= 8);
        prop_assert_eq!(check_mnat_concave(&f).is_pass(), check_m_concave(lf.lifted()).is_pass());
    }

    #[test]
    fn lifted_conjugate_matches_table(f in function(), seed in any::<u64>()) {
        let lf = lift(&f, None).unwrap();
        prop_assume!(lf.lifted().n() <= 8);
        let p = PriceVector::new(mnat::generators::random_rationals(f.n(), 6, 2, seed));
        let q = PriceVector::new(mnat::generators::random_rationals(lf.slots(), 6, 2, seed ^ 1));
        prop_assert_eq!(lf.conjugate(&p, &q).unwrap(), lf.lifted().conjugate(&p.concat(&q)));
    }
}

/// Every point of `{−1, 0, 1}^(n+s)` on the lifts of small fixtures.
#[test]
fn lifted_conjugate_on_grid() {
    let grid = [int(-1), int(0), int(1)];
    for name in ["step-n2", "two-point-n2", "nonequi-fail", "single-point"] {
        let f = fixture(name).unwrap();
        let lf = lift(&f, None).unwrap();
        let total = lf.lifted().n();
        assert!(total <= 8);
        let mut idx = vec![0usize; total];
        loop {
            let v: Vec<Rational> = idx.iter().map(|&k| grid[k].clone()).collect();
            let (p, q) = v.split_at(f.n());
            let (p, q) = (PriceVector::new(p.to_vec()), PriceVector::new(q.to_vec()));
            assert_eq!(lf.conjugate(&p, &q).unwrap(), lf.lifted().conjugate(&p.concat(&q)), "{name}");
            let Some(pos) = idx.iter().position(|&k| k < 2) else { break };
            idx[pos] += 1;
            idx[..pos].iter_mut().for_each(|k| *k = 0);
        }
    }
}
