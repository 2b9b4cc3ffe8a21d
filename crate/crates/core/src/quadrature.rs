//! Globally adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! The interval with the largest error estimate is bisected until the summed
//! estimate drops below the requested absolute tolerance.

#![allow(clippy::excessive_precision)]

use crate::error::{Error, Result};
use crate::scalar::Real;

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

// Gauss weights on XGK[1], XGK[3], XGK[5] and the centre.
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_SUBDIVISIONS: usize = 2000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureResult<T> {
    pub value: T,
    pub error_estimate: T,
    pub evaluations: usize,
}

#[derive(Clone, Copy, Debug)]
struct Segment<T> {
    a: T,
    b: T,
    value: T,
    error: T,
}

fn rescale_error<T: Real>(err: T, res_abs: T, res_asc: T) -> T {
    let mut e = err.abs();
    if res_asc != T::zero() && e != T::zero() {
        let scale = (T::lit(200.0) * e / res_asc).powf(T::lit(1.5));
        e = if scale < T::one() { res_asc * scale } else { res_asc };
    }
    let floor = T::lit(50.0) * T::epsilon() * res_abs;
    if res_abs > T::min_positive_value() / (T::lit(50.0) * T::epsilon()) && floor > e {
        e = floor;
    }
    e
}

fn gauss_kronrod<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T) -> Segment<T> {
    let two = T::lit(2.0);
    let centre = (a + b) / two;
    let half = (b - a) / two;
    let fc = f(centre);
    let mut res_k = fc * T::lit(WGK[7]);
    let mut res_g = fc * T::lit(WG[3]);
    let mut res_abs = res_k.abs();
    let mut fv1 = [T::zero(); 7];
    let mut fv2 = [T::zero(); 7];
    for j in 0..7 {
        let dx = half * T::lit(XGK[j]);
        let f1 = f(centre - dx);
        let f2 = f(centre + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        let w = T::lit(WGK[j]);
        res_k = res_k + w * (f1 + f2);
        res_abs = res_abs + w * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g = res_g + T::lit(WG[j / 2]) * (f1 + f2);
        }
    }
    let mean = res_k / two;
    let mut res_asc = T::lit(WGK[7]) * (fc - mean).abs();
    for j in 0..7 {
        res_asc = res_asc + T::lit(WGK[j]) * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let err = (res_k - res_g) * half;
    let scale = half.abs();
    Segment {
        a,
        b,
        value: res_k * half,
        error: rescale_error(err, res_abs * scale, res_asc * scale),
    }
}

/// Oriented integral `∫ₐᵇ f` with absolute tolerance `tol`.
///
/// For `a > b` the result is `−∫ᵇₐ f`. Fails with [`Error::Quadrature`] after
/// `max_subdivisions` bisections, reporting the worst remaining interval.
pub fn integrate_with<T: Real, F: Fn(T) -> T>(
    f: F,
    a: T,
    b: T,
    tol: T,
    max_subdivisions: usize,
) -> Result<QuadratureResult<T>> {
    if a == b {
        return Ok(QuadratureResult {
            value: T::zero(),
            error_estimate: T::zero(),
            evaluations: 0,
        });
    }
    if a > b {
        let r = integrate_with(f, b, a, tol, max_subdivisions)?;
        return Ok(QuadratureResult {
            value: -r.value,
            ..r
        });
    }

    let mut segments = vec![gauss_kronrod(&f, a, b)];
    let mut evaluations = 15;
    let mut subdivisions = 0;
    loop {
        let total_err: T = segments.iter().map(|s| s.error).sum();
        if total_err <= tol {
            break;
        }
        let (worst_idx, worst) = segments
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.partial_cmp(&y.1.error).unwrap())
            .map(|(i, s)| (i, *s))
            .unwrap();
        let mid = (worst.a + worst.b) / T::lit(2.0);
        if subdivisions >= max_subdivisions || !(mid > worst.a && mid < worst.b) {
            return Err(Error::Quadrature {
                subdivisions,
                worst_a: worst.a.as_f64(),
                worst_b: worst.b.as_f64(),
                worst_error: worst.error.as_f64(),
            });
        }
        segments.swap_remove(worst_idx);
        segments.push(gauss_kronrod(&f, worst.a, mid));
        segments.push(gauss_kronrod(&f, mid, worst.b));
        evaluations += 30;
        subdivisions += 1;
    }
    // Sum in position order so the result does not depend on refinement history.
    segments.sort_by(|x, y| x.a.partial_cmp(&y.a).unwrap());
    Ok(QuadratureResult {
        value: segments.iter().map(|s| s.value).sum(),
        error_estimate: segments.iter().map(|s| s.error).sum(),
        evaluations,
    })
}

/// [`integrate_with`] using the default subdivision budget.
pub fn integrate<T: Real, F: Fn(T) -> T>(f: F, a: T, b: T, tol: T) -> Result<QuadratureResult<T>> {
    integrate_with(f, a, b, tol, DEFAULT_MAX_SUBDIVISIONS)
}
