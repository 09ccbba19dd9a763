use proptest::prelude::*;
use specstat::torus::{
    bn_membership, flow_time_average, haar_sample, mc_expected_ks, mc_values, spacing_of, ks_to_poisson,
    TorusBox,
};
use specstat::{FlowDirection, McConfig, TorusPoint};

fn point() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..1.0, 2..30)
}

proptest! {
    #[test]
    fn diagonal_shift_keeps_spacing(ph in point(), c in 0.0f64..1.0) {
        let a = TorusPoint::new(ph).unwrap();
        let b = a.shifted(c);
        let (ma, mb) = (spacing_of(&a), spacing_of(&b));
        prop_assert_eq!(ma.atoms().len(), mb.atoms().len());
        for (x, y) in ma.atoms().iter().zip(mb.atoms()) {
            prop_assert!((x.location - y.location).abs() < 1e-9 * ph_len(&a));
            prop_assert!((x.mass - y.mass).abs() < 1e-12);
        }
    }

    #[test]
    fn membership_depends_on_gaps_only(ph in point(), c in 0.0f64..1.0, alpha in 0.5f64..3.0) {
        let a = TorusPoint::new(ph).unwrap();
        let d = ks_to_poisson(&a);
        let thr = (-(alpha / 2.0) * (a.dim() as f64).ln().sqrt()).exp();
        // skip points sitting on the threshold, where a shift's rounding decides
        prop_assume!((d - thr).abs() > 1e-9);
        prop_assert_eq!(bn_membership(&a, alpha), bn_membership(&a.shifted(c), alpha));
    }

    #[test]
    fn samples_are_reproducible(n in 2usize..40, seed in any::<u64>(), idx in 0u64..1000) {
        prop_assert_eq!(haar_sample(n, seed, idx).unwrap(), haar_sample(n, seed, idx).unwrap());
    }
}

fn ph_len(a: &TorusPoint) -> f64 {
    a.dim() as f64
}

#[test]
fn identity_is_far_from_poisson() {
    for n in [3usize, 10, 100] {
        let id = TorusPoint::identity(n).unwrap();
        assert!(bn_membership(&id, 4.0 / 3.0));
        assert_eq!(ks_to_poisson(&id), (n - 1) as f64 / n as f64);
    }
}

#[test]
fn estimates_do_not_depend_on_thread_count() {
    let cfg = McConfig { seed: 11, samples: 300, ..McConfig::default() };
    let many = mc_expected_ks(32, &cfg).unwrap();
    let one = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| mc_expected_ks(32, &cfg).unwrap());
    assert_eq!(many, one);
}

#[test]
fn uniform_coordinates() {
    let cfg = McConfig { seed: 5, samples: 100_000, ..McConfig::default() };
    let first = mc_values(8, &cfg, |a| a.phases()[0]).unwrap();
    let second = mc_values(8, &cfg, |a| a.phases()[1]).unwrap();
    let n = first.len() as f64;
    let mean = first.iter().sum::<f64>() / n;
    let sigma = (1.0f64 / 12.0 / n).sqrt();
    assert!((mean - 0.5).abs() < 3.0 * sigma);
    let m2 = second.iter().sum::<f64>() / n;
    let cov: f64 = first.iter().zip(&second).map(|(x, y)| (x - mean) * (y - m2)).sum::<f64>() / n;
    assert!((cov * 12.0).abs() < 3.0 / n.sqrt());
}

#[test]
fn box_average_error_shrinks_with_horizon() {
    let x = FlowDirection::unit_cube(vec![2f64.sqrt() - 1.0, 3f64.sqrt() - 1.0, 5f64.sqrt() - 2.0]).unwrap();
    let set = TorusBox::cube(3, 0.5).unwrap();
    let errs: Vec<f64> = [1e2, 1e3, 1e4]
        .iter()
        .map(|&t| (flow_time_average(&x, &set, t, (t * 40.0) as usize).unwrap().average - 0.125).abs())
        .collect();
    assert!(errs[2] < errs[0], "{errs:?}");
}
