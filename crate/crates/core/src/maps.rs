//! Second-order jets of maps `ℝⁿ → ℝᴺ` and the counterexample constructions.
//!
//! Every construction depends on a single scalar variable (`x₁` or `|x|`); its
//! Jacobian and Hessian are assembled from univariate [`Jet2`]s. Planar
//! constructions are zero-padded when the target dimension exceeds 2.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::jet::Jet2;
use crate::linalg::Matrix;
use crate::profiles::{
    choose_speed_bound_with, gamma_circle, ArcComplement, PhaseK, Profile, SpeedBound,
    DEFAULT_CACHE_CELLS, DEFAULT_SAFETY, DEFAULT_SUP_SAMPLES, DEFAULT_T_MAX,
};
use crate::scalar::Real;

/// Value, Jacobian `Du` (`N × n`, entry `(α, i) = D_i u_α`) and Hessian
/// `D²u` (`N` symmetric `n × n` blocks, entry `(α, i, j) = D²_ij u_α`).
#[derive(Clone, Debug, PartialEq)]
pub struct MapJet<T> {
    pub value: Vec<T>,
    pub jacobian: Matrix<T>,
    pub hessian: Vec<Matrix<T>>,
}

impl<T: Real> MapJet<T> {
    pub fn new(value: Vec<T>, jacobian: Matrix<T>, hessian: Vec<Matrix<T>>) -> Result<Self> {
        let big_n = value.len();
        let n = jacobian.cols();
        if jacobian.rows() != big_n
            || hessian.len() != big_n
            || hessian.iter().any(|h| h.rows() != n || h.cols() != n)
        {
            return Err(Error::Dimension(format!(
                "map jet with {} values, {}×{} jacobian, {} hessian blocks",
                big_n,
                jacobian.rows(),
                jacobian.cols(),
                hessian.len()
            )));
        }
        Ok(Self {
            value,
            jacobian,
            hessian,
        })
    }

    pub fn zeros(target_dim: usize, n: usize) -> Self {
        Self {
            value: vec![T::zero(); target_dim],
            jacobian: Matrix::zeros(target_dim, n),
            hessian: vec![Matrix::zeros(n, n); target_dim],
        }
    }

    /// Lift jets in `t = x₁` to `n` dimensions, zero-padded to `target_dim`
    /// components.
    pub fn from_axis_jets(components: &[Jet2<T>], n: usize, target_dim: usize) -> Self {
        let mut m = Self::zeros(target_dim, n);
        for (alpha, c) in components.iter().enumerate() {
            m.value[alpha] = c.val;
            m.jacobian[(alpha, 0)] = c.d1;
            m.hessian[alpha][(0, 0)] = c.d2;
        }
        m
    }

    /// Lift jets in `r = |x|` by the radial chain rule:
    /// `D z(|x|) = z' x/r`, `D² z(|x|) = z'' x⊗x/r² + z' (I/r − x⊗x/r³)`.
    pub fn from_radial_jets(components: &[Jet2<T>], x: &[T], target_dim: usize) -> Self {
        let n = x.len();
        let r = norm(x);
        let mut m = Self::zeros(target_dim, n);
        for (alpha, c) in components.iter().enumerate() {
            m.value[alpha] = c.val;
            for i in 0..n {
                m.jacobian[(alpha, i)] = c.d1 * x[i] / r;
                for j in 0..n {
                    let outer = x[i] * x[j] / (r * r);
                    let delta = if i == j { T::one() } else { T::zero() };
                    m.hessian[alpha][(i, j)] = c.d2 * outer + c.d1 * (delta - outer) / r;
                }
            }
        }
        m
    }

    pub fn target_dim(&self) -> usize {
        self.value.len()
    }

    pub fn domain_dim(&self) -> usize {
        self.jacobian.cols()
    }

    #[inline]
    pub fn hess(&self, alpha: usize, i: usize, j: usize) -> T {
        self.hessian[alpha][(i, j)]
    }

    /// Laplacian vector `Δu`, component `β = Σ_i D²_ii u_β`.
    pub fn laplacian(&self) -> Vec<T> {
        self.hessian
            .iter()
            .map(|h| (0..h.rows()).map(|i| h[(i, i)]).sum())
            .collect()
    }

    /// Multiply value, Jacobian and Hessian by `k`.
    pub fn scaled(&self, k: T) -> Self {
        Self {
            value: self.value.iter().map(|&v| v * k).collect(),
            jacobian: self.jacobian.scale(k),
            hessian: self.hessian.iter().map(|h| h.scale(k)).collect(),
        }
    }
}

pub(crate) fn norm<T: Real>(x: &[T]) -> T {
    x.iter().map(|&v| v * v).sum::<T>().sqrt()
}

/// A smooth map that can produce its value and second-order jet at a point.
pub trait SmoothMap<T: Real>: Sync {
    fn domain_dim(&self) -> usize;
    fn target_dim(&self) -> usize;
    fn jet(&self, x: &[T]) -> Result<MapJet<T>>;
    fn value(&self, x: &[T]) -> Result<Vec<T>> {
        Ok(self.jet(x)?.value)
    }
}

/// Central-difference jet of a value-only map; the oracle for [`MapJet`]s.
///
/// Diagonal entries use the three-point second difference, mixed entries the
/// four-point cross difference.
pub fn fd_map_jet<T: Real, F>(f: F, x: &[T], h: T) -> Result<MapJet<T>>
where
    F: Fn(&[T]) -> Result<Vec<T>>,
{
    let n = x.len();
    let at = |shifts: &[(usize, T)]| {
        let mut y = x.to_vec();
        for &(i, s) in shifts {
            y[i] = y[i] + s;
        }
        f(&y)
    };
    let value = f(x)?;
    let big_n = value.len();
    let two = T::lit(2.0);
    let four = T::lit(4.0);
    let mut m = MapJet::zeros(big_n, n);
    m.value = value.clone();
    for i in 0..n {
        let fp = at(&[(i, h)])?;
        let fm = at(&[(i, -h)])?;
        for a in 0..big_n {
            m.jacobian[(a, i)] = (fp[a] - fm[a]) / (two * h);
            m.hessian[a][(i, i)] = (fp[a] - two * value[a] + fm[a]) / (h * h);
        }
        for j in (i + 1)..n {
            let fpp = at(&[(i, h), (j, h)])?;
            let fpm = at(&[(i, h), (j, -h)])?;
            let fmp = at(&[(i, -h), (j, h)])?;
            let fmm = at(&[(i, -h), (j, -h)])?;
            for a in 0..big_n {
                let v = (fpp[a] - fpm[a] - fmp[a] + fmm[a]) / (four * h * h);
                m.hessian[a][(i, j)] = v;
                m.hessian[a][(j, i)] = v;
            }
        }
    }
    Ok(m)
}

/// `u(x) = c + A x + ½ xᵀ B_α x`, componentwise. Affine when every `B_α = 0`.
#[derive(Clone, Debug)]
pub struct QuadraticMap<T> {
    pub offset: Vec<T>,
    pub linear: Matrix<T>,
    pub quadratic: Vec<Matrix<T>>,
}

impl<T: Real> QuadraticMap<T> {
    pub fn affine(offset: Vec<T>, linear: Matrix<T>) -> Self {
        let n = linear.cols();
        let quadratic = vec![Matrix::zeros(n, n); offset.len()];
        Self {
            offset,
            linear,
            quadratic,
        }
    }

    /// The unique quadratic map whose jet at the origin is `m`.
    pub fn from_jet_at_origin(m: &MapJet<T>) -> Self {
        Self {
            offset: m.value.clone(),
            linear: m.jacobian.clone(),
            quadratic: m.hessian.clone(),
        }
    }
}

impl<T: Real> SmoothMap<T> for QuadraticMap<T> {
    fn domain_dim(&self) -> usize {
        self.linear.cols()
    }

    fn target_dim(&self) -> usize {
        self.offset.len()
    }

    fn jet(&self, x: &[T]) -> Result<MapJet<T>> {
        if x.len() != self.domain_dim() {
            return Err(Error::Dimension(format!(
                "point of dimension {} for map on ℝ^{}",
                x.len(),
                self.domain_dim()
            )));
        }
        let big_n = self.target_dim();
        let n = x.len();
        let half = T::lit(0.5);
        let lin = self.linear.matvec(x);
        let mut value = Vec::with_capacity(big_n);
        let mut jac = self.linear.clone();
        for a in 0..big_n {
            let bx = self.quadratic[a].matvec(x);
            let quad: T = x.iter().zip(&bx).map(|(&p, &q)| p * q).sum();
            value.push(self.offset[a] + lin[a] + half * quad);
            for i in 0..n {
                jac[(a, i)] = jac[(a, i)] + bx[i];
            }
        }
        MapJet::new(value, jac, self.quadratic.clone())
    }
}

/// The constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `u¹(x) = (w₁(x₁), w₂(x₁))`.
    U1,
    /// `u²(x) = (z₁(|x|), z₂(|x|))`, defined for `x ≠ 0`.
    U2,
    /// `u³(x) = ρ*(x₁) (cos K(x₁), sin K(x₁))`.
    U3,
    /// `v(x) = w₁(x₁)`.
    V,
    /// `F(x) = ½ w₂'(x₁)² = ½ (M² − w₁'(x₁)²)`.
    F,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::U1 => "u1",
            Family::U2 => "u2",
            Family::U3 => "u3",
            Family::V => "v",
            Family::F => "F",
        }
    }

    pub fn is_scalar(&self) -> bool {
        matches!(self, Family::V | Family::F)
    }
}

/// Parameters of the profile caches shared by all constructions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProfileConfig {
    pub safety: f64,
    pub t_max: f64,
    pub cache_cells: usize,
    pub sup_samples: usize,
}

impl Default for ProfileConfig {
    fn default() -> Self {
        Self {
            safety: DEFAULT_SAFETY,
            t_max: DEFAULT_T_MAX,
            cache_cells: DEFAULT_CACHE_CELLS,
            sup_samples: DEFAULT_SUP_SAMPLES,
        }
    }
}

#[derive(Clone, Debug)]
enum Construction<T> {
    Curve(Arc<ArcComplement<T>>),
    Radial(Arc<ArcComplement<T>>),
    Polar(Arc<PhaseK<T>>),
    Scalar,
    Forcing(SpeedBound<T>),
}

/// One of the counterexample maps on `ℝⁿ`, with immutable profile caches.
#[derive(Clone, Debug)]
pub struct SolutionMap<T> {
    family: Family,
    n: usize,
    target_dim: usize,
    bound: SpeedBound<T>,
    construction: Construction<T>,
}

fn check_dims(family: Family, n: usize, target_dim: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::config("n", "domain dimension must be ≥ 1"));
    }
    if family.is_scalar() {
        if target_dim != 1 {
            return Err(Error::config("N", format!("{} is scalar", family.name())));
        }
    } else if target_dim < 2 {
        return Err(Error::config(
            "N",
            format!("{} needs target dimension ≥ 2, got {target_dim}", family.name()),
        ));
    }
    Ok(())
}

impl<T: Real> SolutionMap<T> {
    pub fn build(family: Family, n: usize, target_dim: usize, cfg: &ProfileConfig) -> Result<Self> {
        check_dims(family, n, target_dim)?;
        let safety = T::lit(cfg.safety);
        let bound_of = |p: Profile<T>| choose_speed_bound_with(&p, safety, cfg.sup_samples);
        let (bound, construction) = match family {
            Family::U1 => {
                let b = bound_of(Profile::W1)?;
                let w2 = ArcComplement::new(Profile::W1, b, cfg.cache_cells)?;
                (b, Construction::Curve(Arc::new(w2)))
            }
            Family::U2 => {
                let b = bound_of(Profile::Z1)?;
                let z2 = ArcComplement::new(Profile::Z1, b, cfg.cache_cells)?;
                (b, Construction::Radial(Arc::new(z2)))
            }
            Family::U3 => {
                let b = bound_of(Profile::RhoStar)?;
                let k = PhaseK::new(b, T::lit(cfg.t_max), cfg.cache_cells)?;
                (b, Construction::Polar(Arc::new(k)))
            }
            Family::V => (bound_of(Profile::W1)?, Construction::Scalar),
            Family::F => {
                let b = bound_of(Profile::W1)?;
                (b, Construction::Forcing(b))
            }
        };
        Ok(Self {
            family,
            n,
            target_dim,
            bound,
            construction,
        })
    }

    pub fn u1(n: usize, target_dim: usize, cfg: &ProfileConfig) -> Result<Self> {
        Self::build(Family::U1, n, target_dim, cfg)
    }

    pub fn u2(n: usize, target_dim: usize, cfg: &ProfileConfig) -> Result<Self> {
        Self::build(Family::U2, n, target_dim, cfg)
    }

    pub fn u3(n: usize, target_dim: usize, cfg: &ProfileConfig) -> Result<Self> {
        Self::build(Family::U3, n, target_dim, cfg)
    }

    pub fn v(n: usize, cfg: &ProfileConfig) -> Result<Self> {
        Self::build(Family::V, n, 1, cfg)
    }

    pub fn forcing(n: usize, cfg: &ProfileConfig) -> Result<Self> {
        Self::build(Family::F, n, 1, cfg)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Speed bound of the underlying profile (`M`).
    pub fn bound(&self) -> SpeedBound<T> {
        self.bound
    }

    pub fn speed(&self) -> T {
        self.bound.m
    }

    fn check_point(&self, x: &[T]) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::Dimension(format!(
                "{} is defined on ℝ^{}, got a point of dimension {}",
                self.family.name(),
                self.n,
                x.len()
            )));
        }
        Ok(())
    }

    fn radius(&self, x: &[T]) -> Result<T> {
        let r = norm(x);
        if !(r > T::zero()) {
            return Err(Error::Domain {
                what: "u2 is undefined at the origin",
                at: r.as_f64(),
            });
        }
        Ok(r)
    }
}

impl<T: Real> SmoothMap<T> for SolutionMap<T> {
    fn domain_dim(&self) -> usize {
        self.n
    }

    fn target_dim(&self) -> usize {
        self.target_dim
    }

    fn jet(&self, x: &[T]) -> Result<MapJet<T>> {
        self.check_point(x)?;
        let t = x[0];
        let (n, big_n) = (self.n, self.target_dim);
        Ok(match &self.construction {
            Construction::Curve(w2) => {
                MapJet::from_axis_jets(&[Profile::W1.jet(t), w2.jet(t)?], n, big_n)
            }
            Construction::Radial(z2) => {
                let r = self.radius(x)?;
                MapJet::from_radial_jets(&[Profile::Z1.jet(r), z2.jet(r)?], x, big_n)
            }
            Construction::Polar(k) => {
                let rho = Profile::RhoStar.jet(t);
                let (c, s) = gamma_circle(k.jet(t)?);
                MapJet::from_axis_jets(&[rho * c, rho * s], n, big_n)
            }
            Construction::Scalar => MapJet::from_axis_jets(&[Profile::W1.jet(t)], n, 1),
            Construction::Forcing(b) => {
                let p = Profile::W1.jet(t);
                let p3 = Profile::W1.d3(t);
                let half = T::lit(0.5);
                let f = Jet2::new(
                    half * (b.m * b.m - p.d1 * p.d1),
                    -p.d1 * p.d2,
                    -(p.d2 * p.d2 + p.d1 * p3),
                );
                MapJet::from_axis_jets(&[f], n, 1)
            }
        })
    }

    fn value(&self, x: &[T]) -> Result<Vec<T>> {
        self.check_point(x)?;
        let t = x[0];
        let mut out = vec![T::zero(); self.target_dim];
        match &self.construction {
            Construction::Curve(w2) => {
                out[0] = Profile::W1.value(t);
                out[1] = w2.value(t)?;
            }
            Construction::Radial(z2) => {
                let r = self.radius(x)?;
                out[0] = Profile::Z1.value(r);
                out[1] = z2.value(r)?;
            }
            Construction::Polar(k) => {
                let rho = Profile::RhoStar.value(t);
                let phase = k.value(t)?;
                out[0] = rho * phase.cos();
                out[1] = rho * phase.sin();
            }
            Construction::Scalar => out[0] = Profile::W1.value(t),
            Construction::Forcing(b) => {
                let d = Profile::W1.jet(t).d1;
                out[0] = T::lit(0.5) * (b.m * b.m - d * d);
            }
        }
        Ok(out)
    }
}

/// Polar parts of a map jet: `ρ = |u|`, `Dρ`, `n = u/|u|` and `Dn`.
#[derive(Clone, Debug)]
pub struct PolarParts<T> {
    pub rho: T,
    pub grad_rho: Vec<T>,
    pub direction: Vec<T>,
    pub direction_jacobian: Matrix<T>,
}

/// `u = ρ n` with `Dρ_i = u·D_iu / ρ` and `D_i n = (D_i u − n D_iρ) / ρ`.
pub fn polar_decompose<T: Real>(m: &MapJet<T>) -> Result<PolarParts<T>> {
    let rho = norm(&m.value);
    if !(rho > T::zero()) {
        return Err(Error::Domain {
            what: "polar decomposition of a vanishing value",
            at: rho.as_f64(),
        });
    }
    let big_n = m.target_dim();
    let n = m.domain_dim();
    let direction: Vec<T> = m.value.iter().map(|&v| v / rho).collect();
    let grad_rho: Vec<T> = (0..n)
        .map(|i| (0..big_n).map(|a| direction[a] * m.jacobian[(a, i)]).sum())
        .collect();
    let direction_jacobian = Matrix::from_fn(big_n, n, |a, i| {
        (m.jacobian[(a, i)] - direction[a] * grad_rho[i]) / rho
    });
    Ok(PolarParts {
        rho,
        grad_rho,
        direction,
        direction_jacobian,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    fn cfg() -> ProfileConfig {
        ProfileConfig {
            cache_cells: 1024,
            sup_samples: 20_001,
            ..Default::default()
        }
    }

    #[test]
    fn u1_outside_support() {
        let u = SolutionMap::<f64>::u1(3, 2, &cfg()).unwrap();
        let j = u.jet(&[5.0, 0.3, -1.0]).unwrap();
        assert_eq!(j.value[0], 0.0);
        assert_eq!(j.jacobian[(0, 0)], 0.0);
        assert_eq!(j.jacobian[(1, 0)], u.speed());
        for a in 0..2 {
            assert_eq!(j.jacobian[(a, 1)], 0.0);
            assert_eq!(j.jacobian[(a, 2)], 0.0);
        }
    }

    #[test]
    fn u2_inside_hole_and_origin() {
        let u = SolutionMap::<f64>::u2(2, 2, &cfg()).unwrap();
        let j = u.jet(&[0.3, 0.4]).unwrap();
        assert_eq!(j.value[0], 0.0);
        assert!((j.value[1] - 0.5 * u.speed()).abs() < 1e-13);
        assert!(matches!(u.jet(&[0.0, 0.0]), Err(Error::Domain { .. })));
    }

    #[test]
    fn u3_modulus_at_witnesses() {
        let u = SolutionMap::<f64>::u3(1, 2, &cfg()).unwrap();
        let m0 = u.jet(&[0.0]).unwrap();
        assert_eq!(norm(&m0.value), 1.0);
        for t in [1.0, -1.0] {
            let m = u.jet(&[t]).unwrap();
            assert!((norm(&m.value) - 1.0 / E).abs() < 1e-15);
        }
        assert!(matches!(u.jet(&[2.5]), Err(Error::Range { .. })));
    }

    #[test]
    fn v_and_forcing() {
        let v = SolutionMap::<f64>::v(2, &cfg()).unwrap();
        let f = SolutionMap::<f64>::forcing(2, &cfg()).unwrap();
        let m = f.speed();
        assert_eq!(v.jet(&[5.0, 1.0]).unwrap().value[0], 0.0);
        assert_eq!(f.jet(&[5.0, 1.0]).unwrap().value[0], 0.5 * m * m);
        assert!((v.jet(&[1.0, 0.0]).unwrap().value[0] + 1.0 / E).abs() < 1e-15);
        let x1 = 0.37;
        let p = Profile::<f64>::W1.jet(x1);
        let fj = f.jet(&[x1, 2.0]).unwrap();
        assert_eq!(fj.jacobian[(0, 0)], -p.d1 * p.d2);
    }

    #[test]
    fn padding_is_exact_zero() {
        let u = SolutionMap::<f64>::u3(2, 4, &cfg()).unwrap();
        let j = u.jet(&[0.4, 1.0]).unwrap();
        for a in 2..4 {
            assert_eq!(j.value[a], 0.0);
            for i in 0..2 {
                assert_eq!(j.jacobian[(a, i)], 0.0);
                for k in 0..2 {
                    assert_eq!(j.hess(a, i, k), 0.0);
                }
            }
        }
    }

    #[test]
    fn dimension_validation() {
        assert!(SolutionMap::<f64>::u1(1, 1, &cfg()).is_err());
        assert!(SolutionMap::<f64>::u1(0, 2, &cfg()).is_err());
        let u = SolutionMap::<f64>::u1(2, 2, &cfg()).unwrap();
        assert!(matches!(u.jet(&[1.0]), Err(Error::Dimension(_))));
    }

    #[test]
    fn polar_at_origin_of_u3() {
        let u = SolutionMap::<f64>::u3(1, 2, &cfg()).unwrap();
        let p = polar_decompose(&u.jet(&[0.0]).unwrap()).unwrap();
        assert_eq!(p.rho, 1.0);
        assert_eq!(p.direction, vec![1.0, 0.0]);
        assert!(polar_decompose(&MapJet::<f64>::zeros(2, 1)).is_err());
    }

    #[test]
    fn quadratic_map_jet_at_origin_round_trips() {
        let mut m = MapJet::<f64>::zeros(2, 2);
        m.value = vec![1.0, -2.0];
        m.jacobian = Matrix::from_row_major(2, 2, vec![0.5, 1.0, -1.0, 2.0]);
        m.hessian = vec![
            Matrix::from_row_major(2, 2, vec![1.0, 0.3, 0.3, -1.0]),
            Matrix::from_row_major(2, 2, vec![0.0, 2.0, 2.0, 0.5]),
        ];
        let q = QuadraticMap::from_jet_at_origin(&m);
        assert_eq!(q.jet(&[0.0, 0.0]).unwrap(), m);
    }
}
