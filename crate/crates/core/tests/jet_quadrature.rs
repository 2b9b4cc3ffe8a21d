use inflap::jet::{fd_jet, Jet2};
use inflap::profiles::{choose_speed_bound, ArcComplement, Profile};
use inflap::quadrature::integrate;
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

/// `sin(a t) · exp(b t²) + c t³ + 1/(2 + t²)`, built twice: as jets and as plain floats.
fn composite_jet(t: f64, a: f64, b: f64, c: f64) -> Jet2<f64> {
    let x = Jet2::lift(t);
    (x * a).sin() * (x.square() * b).exp() + x.powi(3) * c + (x.square() + 2.0).recip()
}

fn composite(t: f64, a: f64, b: f64, c: f64) -> f64 {
    (a * t).sin() * (b * t * t).exp() + c * t.powi(3) + 1.0 / (2.0 + t * t)
}

proptest! {
    #[test]
    fn jets_match_finite_differences(
        t in -1.5f64..1.5, a in -2.0f64..2.0, b in -0.5f64..0.5, c in -1.0f64..1.0,
    ) {
        let j = composite_jet(t, a, b, c);
        let fd = fd_jet(|s| composite(s, a, b, c), t, 1e-4);
        prop_assert!((j.val - composite(t, a, b, c)).abs() <= 1e-14);
        prop_assert!(rel(j.d1, fd.d1) <= 1e-5, "d1 {} vs {}", j.d1, fd.d1);
        prop_assert!(rel(j.d2, fd.d2) <= 1e-3, "d2 {} vs {}", j.d2, fd.d2);
    }

    #[test]
    fn sqrt_and_powf_match_finite_differences(t in 0.2f64..3.0, p in -2.0f64..2.5) {
        let j = Jet2::lift(t).powf(p).unwrap();
        let fd = fd_jet(|s: f64| s.powf(p), t, 1e-5);
        prop_assert!(rel(j.d1, fd.d1) <= 1e-5);
        prop_assert!(rel(j.d2, fd.d2) <= 1e-3);
        let s = Jet2::lift(t).sqrt().unwrap();
        prop_assert!(rel(s.d2, -0.25 * t.powf(-1.5)) <= 1e-14);
    }

    #[test]
    fn integral_is_additive(a in -3.0f64..0.0, m in 0.0f64..1.0, b in 1.0f64..3.0) {
        let f = |x: f64| (3.0 * x).cos() * (-x * x).exp();
        let whole = integrate(f, a, b, 1e-12).unwrap().value;
        let split = integrate(f, a, m, 1e-12).unwrap().value + integrate(f, m, b, 1e-12).unwrap().value;
        prop_assert!((whole - split).abs() <= 1e-11);
    }

    #[test]
    fn odd_integrand_vanishes_on_symmetric_interval(a in 0.1f64..4.0) {
        let v = integrate(|x: f64| x.powi(3) * (-x * x).exp() + x.sin(), -a, a, 1e-12).unwrap().value;
        prop_assert!(v.abs() <= 1e-12);
    }
}

#[test]
fn sqrt_rejects_nonpositive() {
    assert!(Jet2::lift(0.0).sqrt().is_err());
    assert!(Jet2::lift(-1.0).sqrt().is_err());
}

/// Composite trapezoid with `2^k` panels.
fn trapezoid<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, k: u32) -> f64 {
    let n = 1usize << k;
    let h = (b - a) / n as f64;
    let inner: f64 = (1..n).map(|i| f(a + h * i as f64)).sum();
    h * (0.5 * (f(a) + f(b)) + inner)
}

#[test]
fn arc_complement_matches_trapezoid_oracle() {
    let bound = choose_speed_bound(&Profile::W1, 0.05).unwrap();
    let m = bound.m;
    let f = |s: f64| {
        let d = Profile::W1.jet(s).d1;
        (m * m - d * d).sqrt()
    };
    let coarse = trapezoid(&f, 0.0, 2.0, 19);
    let fine = trapezoid(&f, 0.0, 2.0, 20);
    let oracle = fine + (fine - coarse) / 3.0;
    let w2 = ArcComplement::new(Profile::W1, bound, 4096).unwrap();
    let direct = integrate(f, 0.0, 2.0, 1e-12).unwrap().value;
    assert!((direct - oracle).abs() <= 1e-10, "{direct} vs {oracle}");
    assert!((w2.value(2.0).unwrap() - oracle).abs() <= 1e-10);
    assert!((w2.value(3.0).unwrap() - (oracle + m)).abs() <= 1e-10);
}
