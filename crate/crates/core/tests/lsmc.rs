mod support;

use std::collections::BTreeMap;

use proptest::prelude::*;

use lsmc_stability::basis::{MultiIndex, TensorBasis};
use lsmc_stability::gram::build_design;
use lsmc_stability::lsmc::{
    fit, fit_with, run_pipeline, simulate_responses, validate, FitMethod, FitOptions, OutOfSpan,
    PipelineConfig, TruthSpec,
};
use lsmc_stability::sequences::{generate, GeneratorSpec};
use lsmc_stability::Error;

fn truth(beta: &[(Vec<u32>, f64)], sigma: f64, n_inner: u32, seed: u64) -> TruthSpec {
    let coefficients: BTreeMap<MultiIndex, f64> =
        beta.iter().map(|(i, b)| (MultiIndex::new(i.clone()), *b)).collect();
    TruthSpec {
        noise_sigma: sigma,
        n_inner,
        seed,
        ..TruthSpec::noiseless(coefficients)
    }
}

#[test]
fn noise_variance_matches_inner_average() {
    let n_inner = 16;
    let t = truth(&[(vec![0], 0.0)], 1.0, n_inner, 42);
    let ps = generate(&GeneratorSpec::van_der_corput(2), 10_000).unwrap();
    let y = simulate_responses(&t, &ps).unwrap();
    let mean = y.iter().sum::<f64>() / y.len() as f64;
    let var = y.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (y.len() - 1) as f64;
    let expected = 1.0 / f64::from(n_inner);
    assert!((var / expected - 1.0).abs() <= 0.2, "variance {var}, expected {expected}");
    assert!(mean.abs() <= 5.0 * (expected / y.len() as f64).sqrt());
}

#[test]
fn responses_are_reproducible_and_seeded() {
    let ps = generate(&GeneratorSpec::sobol(2), 200).unwrap();
    let a = simulate_responses(&truth(&[(vec![1, 0], 1.0)], 0.3, 4, 7), &ps).unwrap();
    let b = simulate_responses(&truth(&[(vec![1, 0], 1.0)], 0.3, 4, 7), &ps).unwrap();
    let c = simulate_responses(&truth(&[(vec![1, 0], 1.0)], 0.3, 4, 8), &ps).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, c);
    // point i's noise does not depend on how many points come before or after
    let head = simulate_responses(&truth(&[(vec![1, 0], 1.0)], 0.3, 4, 7), &ps.prefix(50)).unwrap();
    assert_eq!(&a[..50], &head[..]);
}

#[test]
fn estimates_are_stable_across_seeds() {
    let n = 1024;
    let (sigma, n_inner) = (0.1, 2);
    let basis = TensorBasis::graded(1, 3).unwrap();
    let ps = generate(&GeneratorSpec::van_der_corput(2), n).unwrap();
    let x = build_design(&ps, &basis).unwrap();
    let beta = [1.0, -0.5, 0.25];
    let spec: Vec<(Vec<u32>, f64)> = (0..3).map(|k| (vec![k as u32], beta[k])).collect();
    let fits: Vec<Vec<f64>> = (0..20)
        .map(|seed| {
            let y = simulate_responses(&truth(&spec, sigma, n_inner, seed), &ps).unwrap();
            fit(&x, &y).unwrap().beta_hat
        })
        .collect();
    // G ≈ I, so each coefficient has standard error ≈ σ / √(n_inner N)
    let se = sigma / (f64::from(n_inner) * n as f64).sqrt();
    for j in 0..3 {
        let mean = fits.iter().map(|f| f[j]).sum::<f64>() / 20.0;
        for f in &fits {
            assert!((f[j] - mean).abs() < 10.0 * se, "coefficient {j}");
        }
        assert!((mean - beta[j]).abs() < 10.0 * se / 20f64.sqrt() + 1e-3);
    }
}

#[test]
fn out_of_span_truth_is_approximated() {
    let basis = TensorBasis::graded(1, 8).unwrap();
    let mut t = truth(&[(vec![0], 0.0)], 0.0, 1, 0);
    t.out_of_span = Some(OutOfSpan::Exponential { amplitude: 1.0 });
    let ps = generate(&GeneratorSpec::van_der_corput(2), 2048).unwrap();
    let vps = generate(&GeneratorSpec::van_der_corput(2).with_skip(2048), 1000).unwrap();
    let f = fit(&build_design(&ps, &basis).unwrap(), &simulate_responses(&t, &ps).unwrap()).unwrap();
    let v = validate(&f, &t, &basis, &vps).unwrap();
    assert!(v.max_abs_error < 1e-5, "{v:?}");
}

#[test]
fn rmse_falls_with_more_scenarios() {
    let basis = TensorBasis::graded(2, 6).unwrap();
    let spec: Vec<(Vec<u32>, f64)> =
        basis.index_set().iter().map(|mi| (mi.indices().to_vec(), 0.5)).collect();
    let t = truth(&spec, 0.1, 2, 11);
    let rmse = |n: usize| {
        let g = GeneratorSpec::halton(vec![2, 3]);
        let ps = generate(&g, n).unwrap();
        let vps = generate(&g.clone().with_skip(n as u64), 1000).unwrap();
        let f = fit(&build_design(&ps, &basis).unwrap(), &simulate_responses(&t, &ps).unwrap()).unwrap();
        validate(&f, &t, &basis, &vps).unwrap().rmse
    };
    assert!(rmse(1 << 12) < rmse(1 << 8));
}

#[test]
fn pipeline_end_to_end() {
    let cfg = PipelineConfig::parse(
        "generator = halton\nbases = 2,3\ns = 2\nm = 6\nN = 2048\nvalidation_n = 500\n\
         n_inner = 4\nsigma = 0.05\nseed = 9\ntheta_target = 2\n",
    )
    .unwrap();
    let a = run_pipeline(&cfg).unwrap();
    let b = run_pipeline(&cfg).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.theta_met, Some(true));
    assert!(a.validation.rmse < 0.01);
    let csv = a.to_csv();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "N,m,s,kappa,rmse,max_abs_error,beta_hat_1,beta_hat_2,beta_hat_3,beta_hat_4,beta_hat_5,beta_hat_6"
    );
    assert!(lines.next().unwrap().starts_with("2048,6,2,"));
}

#[test]
fn pipeline_config_errors() {
    assert!(matches!(PipelineConfig::parse("generator = vdc\nbogus = 1\n"), Err(Error::Config { .. })));
    assert!(matches!(PipelineConfig::parse("N = 10\nN = 20\n"), Err(Error::Config { .. })));
    assert!(PipelineConfig::parse("generator = vdc\nbase = 2\ns = 1\nm = 3\n").is_err());
}

#[test]
fn refusal_propagates_through_pipeline() {
    let cfg = PipelineConfig::parse("generator = vdc\nbase = 2\ns = 1\nm = 40\nN = 45\n").unwrap();
    assert!(matches!(
        run_pipeline(&cfg),
        Err(Error::IllConditioned { .. } | Error::NotPositiveDefinite(_))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn normal_equations_match_qr(seed in any::<u64>(), m in 1usize..10, extra in 10usize..200, s in 1usize..3) {
        let n = m + extra;
        let ps = generate(&GeneratorSpec::pseudo_random(s, seed), n).unwrap();
        let basis = TensorBasis::graded(s, m).unwrap();
        let x = build_design(&ps, &basis).unwrap();
        let y: Vec<f64> = (0..n).map(|i| ((i as f64) * 1.7 + seed as f64 * 1e-9).sin()).collect();
        let opts = FitOptions { method: FitMethod::NormalEquations, refusal_threshold: 1e6 };
        let ne = fit_with(&x, &y, &opts);
        prop_assume!(ne.is_ok());
        let ne = ne.unwrap();
        let qr = fit_with(&x, &y, &FitOptions { method: FitMethod::OrthogonalFactorization, ..opts }).unwrap();
        let scale = qr.beta_hat.iter().fold(1e-300f64, |a, v| a.max(v.abs()));
        for (a, b) in ne.beta_hat.iter().zip(&qr.beta_hat) {
            prop_assert!((a - b).abs() <= 1e-8 * scale);
        }
    }
}
