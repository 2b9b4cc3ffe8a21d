use inflap::jet::fd_jet;
use inflap::profiles::{choose_speed_bound, ArcComplement, PhaseK, Profile};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

#[test]
fn profile_jets_match_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for p in [Profile::W1, Profile::Z1, Profile::RhoStar] {
        let (lo, hi) = p.search_interval();
        for _ in 0..200 {
            let t: f64 = rng.gen_range(lo..hi);
            let j = p.jet(t);
            let fd = fd_jet(|s| p.value(s), t, 1e-4);
            assert!(rel(j.d1, fd.d1) <= 1e-5, "{} d1 at {t}", p.name());
            assert!(rel(j.d2, fd.d2) <= 1e-3, "{} d2 at {t}", p.name());
            let d = |h: f64| fd_jet(|s| p.jet(s).d2, t, h).d1;
            let fd3 = (4.0 * d(5e-5) - d(1e-4)) / 3.0;
            assert!(rel(p.d3(t), fd3) <= 1e-5, "{} d3 at {t}", p.name());
        }
    }
}

#[test]
fn complements_have_constant_speed() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for p in [Profile::W1, Profile::Z1] {
        let bound = choose_speed_bound(&p, 0.05).unwrap();
        let q = ArcComplement::new(p, bound, 4096).unwrap();
        let m2 = bound.m * bound.m;
        for _ in 0..200 {
            let t: f64 = rng.gen_range(-4.0..5.0);
            let (dp, dq) = (p.jet(t).d1, q.jet(t).unwrap().d1);
            assert!((dp * dp + dq * dq - m2).abs() <= 1e-12 * m2);
            let fd = fd_jet(|s| q.value(s).unwrap(), t, 1e-4);
            let j = q.jet(t).unwrap();
            assert!(rel(j.d1, fd.d1) <= 1e-5);
            assert!(rel(j.d2, fd.d2) <= 1e-3);
        }
    }
}

#[test]
fn phase_satisfies_polar_speed_identity() {
    let bound = choose_speed_bound(&Profile::RhoStar, 0.05).unwrap();
    let k = PhaseK::new(bound, 2.0, 4096).unwrap();
    let m2 = bound.m * bound.m;
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..100 {
        let t: f64 = rng.gen_range(-2.0..2.0);
        let rho = Profile::RhoStar.jet(t);
        let dk = k.jet(t).unwrap().d1;
        let lhs = rho.d1 * rho.d1 + rho.val * rho.val * dk * dk;
        assert!((lhs - m2).abs() <= 1e-12 * m2, "at {t}: {lhs} vs {m2}");
    }
    assert_eq!(k.value(0.0).unwrap(), 0.0);
    assert!(k.value(2.5).is_err());
}

#[test]
fn speed_bounds_exceed_slope_suprema() {
    let w = choose_speed_bound(&Profile::<f64>::W1, 0.05).unwrap();
    assert!((w.sup_estimate - 0.79843).abs() < 1e-5);
    let r = choose_speed_bound(&Profile::<f64>::RhoStar, 0.05).unwrap();
    assert!((r.sup_estimate - (2.0f64 / std::f64::consts::E).sqrt()).abs() < 1e-12);
    assert!((r.m - 1.05 * r.sup_estimate).abs() < 1e-15);
}
