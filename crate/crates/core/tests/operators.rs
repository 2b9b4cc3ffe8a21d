use inflap::linalg::Matrix;
use inflap::maps::MapJet;
use inflap::operators::{
    grad_norm_sq, infinity_laplacian, normal, orthogonal_projection, perturbed_scalar, tangential,
    DEFAULT_RANK_TOL,
};
use inflap::properties::{operator_suite, random_map_jet};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `Σ_j u^α_j ∂_j(½|Du|²)` with `∂_j(½|Du|²) = Σ_{β,i} u^β_i u^β_{ij}`, summed
/// directly from the jet entries.
fn tangential_oracle(m: &MapJet<f64>) -> Vec<f64> {
    let (big_n, n) = (m.target_dim(), m.domain_dim());
    let grad: Vec<f64> = (0..n)
        .map(|j| {
            let mut s = 0.0;
            for b in 0..big_n {
                for i in 0..n {
                    s += m.jacobian[(b, i)] * m.hess(b, i, j);
                }
            }
            s
        })
        .collect();
    (0..big_n)
        .map(|a| (0..n).map(|j| m.jacobian[(a, j)] * grad[j]).sum())
        .collect()
}

fn jet_strategy() -> impl Strategy<Value = MapJet<f64>> {
    (any::<u64>(), 1usize..5, 1usize..4).prop_map(|(seed, big_n, n)| {
        random_map_jet(&mut ChaCha8Rng::seed_from_u64(seed), big_n, n)
    })
}


proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn projection_is_an_orthogonal_projector(m in jet_strategy()) {
        let p = orthogonal_projection(&m.jacobian, DEFAULT_RANK_TOL);
        prop_assert!(p.sub(&p.transpose()).max_abs() <= 1e-12);
        prop_assert!(p.matmul(&p).sub(&p).max_abs() <= 1e-12);
        prop_assert!(p.matmul(&m.jacobian).max_abs() <= 1e-12 * m.jacobian.max_abs().max(1.0));
    }

    #[test]
    fn tangential_matches_direct_sum(m in jet_strategy()) {
        let t = tangential(&m);
        let o = tangential_oracle(&m);
        let scale = grad_norm_sq(&m).max(1.0) * m.hessian.iter().map(|h| h.max_abs()).fold(1.0, f64::max);
        for (a, b) in t.iter().zip(&o) {
            prop_assert!((a - b).abs() <= 1e-13 * scale);
        }
    }

    #[test]
    fn parts_are_perpendicular(m in jet_strategy()) {
        let v = infinity_laplacian(&m, DEFAULT_RANK_TOL);
        let dot: f64 = v.tangential.iter().zip(&v.normal).map(|(a, b)| a * b).sum();
        let norm = |x: &[f64]| x.iter().map(|a| a * a).sum::<f64>().sqrt();
        prop_assert!(dot.abs() <= 1e-9 * norm(&v.tangential) * norm(&v.normal));
        for ((f, t), n) in v.full.iter().zip(&v.tangential).zip(&v.normal) {
            prop_assert_eq!(*f, t + n);
        }
    }

    #[test]
    fn scalar_normal_part_vanishes(seed in any::<u64>(), n in 1usize..4) {
        let m = random_map_jet(&mut ChaCha8Rng::seed_from_u64(seed), 1, n);
        prop_assert_eq!(normal(&m, DEFAULT_RANK_TOL), vec![0.0]);
    }

    #[test]
    fn tangential_is_cubic_in_scaling(m in jet_strategy(), k in -3.0f64..3.0) {
        let t = tangential(&m);
        let ts = tangential(&m.scaled(k));
        let scale = grad_norm_sq(&m).max(1.0) * m.hessian.iter().map(|h| h.max_abs()).fold(1.0, f64::max);
        for (a, b) in t.iter().zip(&ts) {
            prop_assert!((k.powi(3) * a - b).abs() <= 1e-13 * scale * k.abs().powi(3).max(1.0));
        }
    }
}

#[test]
fn cubic_scalar_example() {
    // u = x³/3 in one variable: Δ∞u = u'² u'' = 2x⁵.
    let x = 1.2f64;
    let m = MapJet::new(
        vec![x.powi(3) / 3.0],
        Matrix::from_row_major(1, 1, vec![x * x]),
        vec![Matrix::from_row_major(1, 1, vec![2.0 * x])],
    )
    .unwrap();
    let v = infinity_laplacian(&m, DEFAULT_RANK_TOL);
    assert!((v.full[0] - 2.0 * x.powi(5)).abs() <= 1e-14);
    assert_eq!(v.normal, vec![0.0]);
}

#[test]
fn rank_one_curve_example() {
    // u(t) = (t, t²/2) at t = 1: Du = (1, 1), range spanned by (1,1)/√2,
    // Δu = (0, 1), [Du]⊥Δu = (−½, ½), |Du|² = 2.
    let m = MapJet::new(
        vec![1.0, 0.5],
        Matrix::from_row_major(2, 1, vec![1.0, 1.0]),
        vec![Matrix::from_row_major(1, 1, vec![0.0]), Matrix::from_row_major(1, 1, vec![1.0])],
    )
    .unwrap();
    let v = infinity_laplacian(&m, DEFAULT_RANK_TOL);
    assert_eq!(v.rank, 1);
    assert!((v.normal[0] + 1.0).abs() <= 1e-14 && (v.normal[1] - 1.0).abs() <= 1e-14);
    assert!((v.tangential[0] - 1.0).abs() <= 1e-14 && (v.tangential[1] - 1.0).abs() <= 1e-14);
}

#[test]
fn perturbed_scalar_dimension_checks() {
    let v = MapJet::<f64>::zeros(1, 2);
    assert!(perturbed_scalar(&v, &MapJet::zeros(2, 2)).is_err());
    assert!(perturbed_scalar(&v, &MapJet::zeros(1, 3)).is_err());
    assert_eq!(perturbed_scalar(&v, &MapJet::zeros(1, 2)).unwrap(), 0.0);
}

#[test]
fn suite_passes_on_500_cases() {
    let outcomes = operator_suite(3, 500).unwrap();
    assert!(outcomes.len() >= 6);
    for o in outcomes {
        assert!(o.pass && o.cases > 0, "{} {:e} > {:e}", o.name, o.max_error, o.tol);
    }
}
