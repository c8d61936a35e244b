use proptest::prelude::*;
use qocinfo::bounds::{
    epsilon_info_bound, epsilon_info_from_samples, epsilon_noise_bound, time_lower_bound,
    time_lower_bound_with_precision, time_noise_bound,
};

proptest! {
    #[test]
    fn info_bound_lies_in_unit_interval(t in 0.01f64..50.0, bw in 0.01f64..10.0, k in 0.0f64..64.0, d in 1usize..300) {
        let e = epsilon_info_bound(t, bw, k, d).unwrap();
        prop_assert!(e > 0.0 || t * bw * k / d as f64 > 1000.0);
        prop_assert!(e <= 1.0);
    }

    #[test]
    fn info_bound_is_monotone(t in 0.1f64..10.0, bw in 0.1f64..5.0, k in 0.5f64..16.0, d in 1usize..64, f in 1.01f64..3.0) {
        let e = epsilon_info_bound(t, bw, k, d).unwrap();
        prop_assert!(epsilon_info_bound(t * f, bw, k, d).unwrap() <= e);
        prop_assert!(epsilon_info_bound(t, bw * f, k, d).unwrap() <= e);
        prop_assert!(epsilon_info_bound(t, bw, k * f, d).unwrap() <= e);
        prop_assert!(epsilon_info_bound(t, bw, k, d + 1).unwrap() >= e);
    }

    #[test]
    fn noise_bound_matches_info_bound_at_equal_capacity(ns in 1usize..40, k in 0.5f64..20.0, d in 1usize..64) {
        let a = epsilon_noise_bound(ns, d, k.exp2() - 1.0).unwrap();
        let b = epsilon_info_from_samples(ns, k, d).unwrap();
        prop_assert!(((a - b) / b).abs() <= 1e-12);
        let c = epsilon_info_bound(ns as f64, 1.0, k, d).unwrap();
        prop_assert!(((a - c) / c).abs() <= 1e-12);
    }

    #[test]
    fn noise_bound_is_monotone(ns in 1usize..40, d in 1usize..64, snr in 0.01f64..1e4, f in 1.01f64..3.0) {
        let e = epsilon_noise_bound(ns, d, snr).unwrap();
        prop_assert!(epsilon_noise_bound(ns, d, snr * f).unwrap() <= e);
        prop_assert!(epsilon_noise_bound(ns + 1, d, snr).unwrap() <= e);
    }

    #[test]
    fn time_bounds_share_structure(d in 1usize..256, bw in 0.1f64..20.0, k in 1.0f64..20.0, bits in 1.0f64..30.0) {
        let eps = (-bits).exp2();
        let plain = time_lower_bound(d, bw).unwrap();
        let prec = time_lower_bound_with_precision(d, bw, k, eps).unwrap();
        prop_assert!((prec - plain * bits / k).abs() <= 1e-12 * prec.max(1.0));
        let noisy = time_noise_bound(d, bw, eps, k.exp2() - 1.0).unwrap();
        prop_assert!((noisy - prec).abs() <= 1e-10 * prec.max(1.0));
    }
}
