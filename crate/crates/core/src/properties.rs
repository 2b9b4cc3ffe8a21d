//! Randomised operator identities over small map jets.
//!
//! Random jets are realised as quadratic maps so that the tangential part can
//! be compared against central differences of `½|Du|²` obtained by
//! re-evaluating the map at displaced points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::linalg::Matrix;
use crate::maps::{polar_decompose, MapJet, QuadraticMap, SmoothMap, SolutionMap};
use crate::operators::{
    self, euclid, grad_norm_sq, orthogonal_projection, DEFAULT_RANK_TOL,
};

pub const PROJECTION_SYMMETRY_TOL: f64 = 1e-13;
pub const PROJECTION_IDEMPOTENCE_TOL: f64 = 1e-12;
pub const PROJECTION_ANNIHILATION_TOL: f64 = 1e-12;
pub const PERPENDICULARITY_TOL: f64 = 1e-9;
pub const TANGENTIAL_FD_TOL: f64 = 1e-5;
pub const SCALE_COVARIANCE_TOL: f64 = 1e-13;
pub const POLAR_IDENTITY_TOL: f64 = 1e-9;
pub const POLAR_ORTHOGONALITY_TOL: f64 = 1e-12;

/// Worst error of one identity over all sampled cases.
#[derive(Clone, Debug, PartialEq)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub max_error: f64,
    pub tol: f64,
    pub pass: bool,
}

impl PropertyOutcome {
    fn new(name: &'static str, cases: usize, errors: impl Iterator<Item = f64>, tol: f64) -> Self {
        let max_error = errors.fold(0.0_f64, |m, e| if e.is_nan() { f64::NAN } else { m.max(e) });
        Self {
            name,
            cases,
            max_error,
            tol,
            pass: max_error <= tol,
        }
    }
}

const TARGET_DIMS: [usize; 4] = [1, 2, 3, 5];
const DOMAIN_DIMS: [usize; 3] = [1, 2, 3];

/// Random jet with entries uniform in `[−1, 1]` and symmetric Hessian blocks.
pub fn random_map_jet<R: Rng>(rng: &mut R, target_dim: usize, n: usize) -> MapJet<f64> {
    let mut u = || rng.gen_range(-1.0..=1.0);
    let value = (0..target_dim).map(|_| u()).collect();
    let jac = Matrix::from_row_major(target_dim, n, (0..target_dim * n).map(|_| u()).collect());
    let hessian = (0..target_dim)
        .map(|_| {
            let mut h = Matrix::zeros(n, n);
            for i in 0..n {
                for j in i..n {
                    let v = u();
                    h[(i, j)] = v;
                    h[(j, i)] = v;
                }
            }
            h
        })
        .collect();
    MapJet::new(value, jac, hessian).expect("consistent shapes")
}

fn cases<R: Rng>(rng: &mut R, count: usize) -> Vec<MapJet<f64>> {
    (0..count)
        .map(|k| {
            let big_n = TARGET_DIMS[k % TARGET_DIMS.len()];
            let n = DOMAIN_DIMS[(k / TARGET_DIMS.len()) % DOMAIN_DIMS.len()];
            random_map_jet(rng, big_n, n)
        })
        .collect()
}

/// `D_i(½|Du|²)` by central differences of re-evaluated Jacobians.
pub fn fd_half_grad_norm_sq<M: SmoothMap<f64>>(map: &M, x: &[f64], h: f64) -> Result<Vec<f64>> {
    (0..x.len())
        .map(|i| {
            let mut xp = x.to_vec();
            let mut xm = x.to_vec();
            xp[i] += h;
            xm[i] -= h;
            let gp = grad_norm_sq(&map.jet(&xp)?);
            let gm = grad_norm_sq(&map.jet(&xm)?);
            Ok((gp - gm) / (4.0 * h))
        })
        .collect()
}

fn hessian_norm(m: &MapJet<f64>) -> f64 {
    m.hessian
        .iter()
        .map(|h| h.frobenius().powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Projection, perpendicularity, tangential-vs-difference, scalar normal part
/// and cubic scaling, each over `count` random jets.
pub fn operator_suite(seed: u64, count: usize) -> Result<Vec<PropertyOutcome>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let jets = cases(&mut rng, count);
    let tol = DEFAULT_RANK_TOL;

    let mut sym = Vec::with_capacity(count);
    let mut idem = Vec::with_capacity(count);
    let mut annih = Vec::with_capacity(count);
    let mut perp = Vec::with_capacity(count);
    let mut tang = Vec::with_capacity(count);
    let mut scalar_normal = Vec::new();
    let mut scaling = Vec::with_capacity(count);

    for m in &jets {
        let j = &m.jacobian;
        let p = orthogonal_projection(j, tol);
        sym.push(p.sub(&p.transpose()).max_abs());
        idem.push(p.matmul(&p).sub(&p).max_abs());
        annih.push(p.matmul(j).max_abs() / j.frobenius().max(f64::MIN_POSITIVE));

        let op = operators::infinity_laplacian(m, tol);
        let dot: f64 = op.tangential.iter().zip(&op.normal).map(|(a, b)| a * b).sum();
        let scale = euclid(&op.tangential) * euclid(&op.normal);
        perp.push(if scale > 0.0 { dot.abs() / scale } else { dot.abs() });

        let quad = QuadraticMap::from_jet_at_origin(m);
        let origin = vec![0.0; m.domain_dim()];
        let g = fd_half_grad_norm_sq(&quad, &origin, 1e-4)?;
        let oracle = j.matvec(&g);
        let diff: Vec<f64> = op.tangential.iter().zip(&oracle).map(|(a, b)| a - b).collect();
        let mag = grad_norm_sq(m) * hessian_norm(m);
        tang.push(euclid(&diff) / mag.max(f64::MIN_POSITIVE));

        if m.target_dim() == 1 {
            scalar_normal.push(euclid(&op.normal));
        }

        let lambda = 1.75;
        let scaled = operators::tangential(&m.scaled(lambda));
        let diff: Vec<f64> = scaled
            .iter()
            .zip(&op.tangential)
            .map(|(a, b)| a - lambda.powi(3) * b)
            .collect();
        scaling.push(euclid(&diff) / (lambda.powi(3) * mag).max(f64::MIN_POSITIVE));
    }

    let scalar_cases = scalar_normal.len();
    Ok(vec![
        PropertyOutcome::new("projection_symmetry", count, sym.into_iter(), PROJECTION_SYMMETRY_TOL),
        PropertyOutcome::new("projection_idempotence", count, idem.into_iter(), PROJECTION_IDEMPOTENCE_TOL),
        PropertyOutcome::new("projection_annihilation", count, annih.into_iter(), PROJECTION_ANNIHILATION_TOL),
        PropertyOutcome::new("tangential_normal_perpendicular", count, perp.into_iter(), PERPENDICULARITY_TOL),
        PropertyOutcome::new("tangential_vs_fd_gradient", count, tang.into_iter(), TANGENTIAL_FD_TOL),
        PropertyOutcome::new("scalar_normal_vanishes", scalar_cases, scalar_normal.into_iter(), 0.0),
        PropertyOutcome::new("tangential_cubic_scaling", count, scaling.into_iter(), SCALE_COVARIANCE_TOL),
    ])
}

/// `|Du|² = |Dρ|² + ρ²|Dn|²` (relative) and `nᵀDn = 0` for `u³` at `count`
/// random points with `|x₁| ≤ 1.5`.
pub fn polar_suite(u3: &SolutionMap<f64>, seed: u64, count: usize) -> Result<Vec<PropertyOutcome>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = u3.domain_dim();
    let mut identity = Vec::with_capacity(count);
    let mut orth = Vec::with_capacity(count);
    for _ in 0..count {
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.5..=1.5)).collect();
        let m = u3.jet(&x)?;
        let parts = polar_decompose(&m)?;
        let lhs = grad_norm_sq(&m);
        let rhs = parts.grad_rho.iter().map(|g| g * g).sum::<f64>()
            + parts.rho * parts.rho * parts.direction_jacobian.frobenius().powi(2);
        identity.push((lhs - rhs).abs() / lhs);
        let nt_dn = parts.direction_jacobian.transpose().matvec(&parts.direction);
        orth.push(euclid(&nt_dn));
    }
    Ok(vec![
        PropertyOutcome::new("polar_norm_identity", count, identity.into_iter(), POLAR_IDENTITY_TOL),
        PropertyOutcome::new("polar_direction_orthogonality", count, orth.into_iter(), POLAR_ORTHOGONALITY_TOL),
    ])
}
