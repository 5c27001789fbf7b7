use hypwalk_core::group::{format_word, parse_word};
use hypwalk_core::rational::to_f64;
use hypwalk_core::walk::{
    distance_law_uniform_free, drift_estimate, drift_oracle, event_probability, expected_distance_uniform_free,
    sample_trial, validate_distribution, walk_endpoint, Distribution, DRIFT_STREAM, Z_95,
};
use hypwalk_core::GroupModel;

#[test]
fn drift_estimates_cover_the_exact_mean() {
    for k in [2, 3] {
        let m = GroupModel::free(k).unwrap();
        let d = Distribution::uniform_generators(&m);
        let n = 300;
        let est = drift_estimate(&m, &d, n, 400, 9).unwrap();
        let exact = expected_distance_uniform_free(k, n) / n as f64;
        let slack = 4.0 * est.std_error;
        assert!((est.mean_f64() - exact).abs() < slack, "k = {k}: {} vs {exact}", est.mean_f64());
        let oracle = to_f64(&drift_oracle(&m, &d).unwrap());
        assert!((exact - oracle).abs() < 0.01);
    }
}

#[test]
fn empirical_distance_law_matches_dynamic_programme() {
    let m = GroupModel::free(2).unwrap();
    let d = Distribution::uniform_generators(&m);
    let n = 12;
    let trials = 20_000;
    let mut counts = vec![0u64; n + 1];
    for t in 0..trials {
        counts[m.length(&walk_endpoint(&m, &d, n, t)) as usize] += 1;
    }
    let law = distance_law_uniform_free(2, n);
    for (r, &c) in counts.iter().enumerate() {
        let p = law[r];
        let se = (p * (1.0 - p) / trials as f64).sqrt();
        assert!((c as f64 / trials as f64 - p).abs() <= 4.0 * se + 1e-12, "radius {r}");
    }
}

#[test]
fn trials_are_reproducible_and_independent_of_order() {
    let m = GroupModel::free_product(&[2, 3]).unwrap();
    let d = Distribution::uniform_generators(&m);
    let dists = [d.clone(), d];
    let forward: Vec<_> = (0..20).map(|t| sample_trial(&m, &dists, 30, 5, DRIFT_STREAM, t)).collect();
    let backward: Vec<_> = (0..20).rev().map(|t| sample_trial(&m, &dists, 30, 5, DRIFT_STREAM, t)).collect();
    assert!(forward.iter().eq(backward.iter().rev()));
    assert_ne!(forward[0][0].endpoint(), forward[0][1].endpoint());
}

#[test]
fn event_probability_wilson_interval_contains_known_rate() {
    let m = GroupModel::free(2).unwrap();
    let d = Distribution::uniform_generators(&m);
    let est = event_probability(&m, std::slice::from_ref(&d), 2, 4000, 3, |w| w[0].endpoint().is_identity());
    let (lo, hi) = est.wilson;
    assert!(lo <= 0.25 && 0.25 <= hi, "{est:?}");
    assert!(hi - lo < 4.0 * Z_95 * (0.25f64 * 0.75 / 4000.0).sqrt());
}

#[test]
fn custom_distributions_validate() {
    let m = GroupModel::free(2).unwrap();
    let atoms: Vec<_> = ["a", "a^-1", "b", "b^-1", "a.b"].iter().map(|s| (parse_word(&m, s).unwrap(), 1.0)).collect();
    let d = Distribution::from_weights(&m, &atoms).unwrap();
    let report = validate_distribution(&m, &d).unwrap();
    assert!(!d.symmetric());
    assert!(d.full_support_generators());
    assert_eq!(d.max_step_length(&m), 2);
    assert!(format!("{report:?}").contains("symmetric"));
    assert_eq!(format_word(&atoms[4].0), "a^1.b^1");
}
