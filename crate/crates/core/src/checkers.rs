//! Verdicts over sampled domains.
//!
//! Samples are evaluated in parallel; every reduction runs sequentially in
//! sample order with first-index tie breaking, so results do not depend on
//! scheduling.

use rayon::prelude::*;

use crate::domain::DomainSpec;
use crate::error::{Error, Result};
use crate::hull::{convex_hull, outside_distance, Point2};
use crate::maps::{fd_map_jet, MapJet, SmoothMap};
use crate::operators::{self, euclid, DEFAULT_RANK_TOL};
use crate::scalar::Real;

fn eval_all<T, R, F>(points: &[Vec<T>], f: F) -> Result<Vec<R>>
where
    T: Real,
    R: Send,
    F: Fn(&[T]) -> Result<R> + Sync,
{
    let results: Vec<Result<R>> = points.par_iter().map(|p| f(p)).collect();
    results.into_iter().collect()
}

/// Index of the largest value; the first one wins ties.
fn arg_max<T: Real>(values: &[T]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (k, &v) in values.iter().enumerate() {
        if best.is_none_or(|b| v > values[b]) {
            best = Some(k);
        }
    }
    best
}

fn arg_min<T: Real>(values: &[T]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (k, &v) in values.iter().enumerate() {
        if best.is_none_or(|b| v < values[b]) {
            best = Some(k);
        }
    }
    best
}

fn finite_or_err<T: Real>(v: T, x: &[T], what: &'static str) -> Result<T> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Domain {
            what,
            at: x.first().map_or(f64::NAN, |c| c.as_f64()),
        })
    }
}

/// Points at which the reported extrema are attained.
#[derive(Clone, Debug, PartialEq)]
pub struct PrincipleWitnesses<T> {
    pub sup_interior: Vec<T>,
    pub max_boundary: Vec<T>,
    pub inf_interior: Vec<T>,
    pub min_boundary: Vec<T>,
}

/// Extrema of a scalar field over interior and boundary samples.
#[derive(Clone, Debug, PartialEq)]
pub struct PrincipleVerdict<T> {
    pub sup_interior: T,
    pub max_boundary: T,
    pub inf_interior: T,
    pub min_boundary: T,
    /// `sup_interior − max_boundary`; positive iff the maximum principle fails.
    pub max_violation_margin: T,
    /// `min_boundary − inf_interior`; positive iff the minimum principle fails.
    pub min_violation_margin: T,
    pub witnesses: PrincipleWitnesses<T>,
}

impl<T: Real> PrincipleVerdict<T> {
    pub fn violates_max(&self) -> bool {
        self.max_violation_margin > T::zero()
    }

    pub fn violates_min(&self) -> bool {
        self.min_violation_margin > T::zero()
    }

    /// The larger of the two margins.
    pub fn margin(&self) -> T {
        self.max_violation_margin.max(self.min_violation_margin)
    }
}

/// Maximum and minimum principle margins of `field` over the samples of `d`.
pub fn max_principle_check<T, F>(field: F, d: &DomainSpec<T>) -> Result<PrincipleVerdict<T>>
where
    T: Real,
    F: Fn(&[T]) -> Result<T> + Sync,
{
    if d.interior.is_empty() || d.boundary.is_empty() {
        return Err(Error::Degenerate(format!(
            "{} has {} interior and {} boundary samples",
            d.label(),
            d.interior.len(),
            d.boundary.len()
        )));
    }
    let checked = |x: &[T]| finite_or_err(field(x)?, x, "non-finite field value");
    let inner = eval_all(&d.interior, checked)?;
    let outer = eval_all(&d.boundary, checked)?;
    let (si, ii) = (arg_max(&inner).unwrap(), arg_min(&inner).unwrap());
    let (sb, ib) = (arg_max(&outer).unwrap(), arg_min(&outer).unwrap());
    Ok(PrincipleVerdict {
        sup_interior: inner[si],
        max_boundary: outer[sb],
        inf_interior: inner[ii],
        min_boundary: outer[ib],
        max_violation_margin: inner[si] - outer[sb],
        min_violation_margin: outer[ib] - inner[ii],
        witnesses: PrincipleWitnesses {
            sup_interior: d.interior[si].clone(),
            max_boundary: d.boundary[sb].clone(),
            inf_interior: d.interior[ii].clone(),
            min_boundary: d.boundary[ib].clone(),
        },
    })
}

/// Principle check for the projection `ξ · u`.
pub fn directional_check<T, M>(map: &M, xi: &[T], d: &DomainSpec<T>) -> Result<PrincipleVerdict<T>>
where
    T: Real,
    M: SmoothMap<T> + ?Sized,
{
    if xi.len() != map.target_dim() {
        return Err(Error::Dimension(format!(
            "direction of length {} for a map into ℝ^{}",
            xi.len(),
            map.target_dim()
        )));
    }
    if !(euclid(xi) > T::zero()) {
        return Err(Error::Degenerate("direction ξ must be nonzero".into()));
    }
    max_principle_check(
        |x| Ok(map.value(x)?.iter().zip(xi).map(|(&u, &c)| u * c).sum()),
        d,
    )
}

/// Principle check for the modulus `|u|`.
pub fn modulus_check<T, M>(map: &M, d: &DomainSpec<T>) -> Result<PrincipleVerdict<T>>
where
    T: Real,
    M: SmoothMap<T> + ?Sized,
{
    max_principle_check(|x| Ok(euclid(&map.value(x)?)), d)
}

#[derive(Clone, Debug, PartialEq)]
pub struct HullVerdict<T> {
    pub contained: bool,
    pub max_outside_distance: T,
    pub witness_point: Vec<T>,
    pub witness_image: Point2<T>,
    pub hull_vertices: usize,
}

/// Containment of the interior image in the convex hull of the boundary image.
///
/// Only the first two image components are used; the constructions are planar
/// and any further components are zero padding.
pub fn hull_check<T, M>(map: &M, d: &DomainSpec<T>, hull_tol: T) -> Result<HullVerdict<T>>
where
    T: Real,
    M: SmoothMap<T> + ?Sized,
{
    if map.target_dim() < 2 {
        return Err(Error::Dimension("hull check needs a planar image".into()));
    }
    if d.boundary.is_empty() || d.interior.is_empty() {
        return Err(Error::Degenerate(format!("{} has no samples", d.label())));
    }
    let planar = |x: &[T]| -> Result<Point2<T>> {
        let v = map.value(x)?;
        for &c in &v[..2] {
            finite_or_err(c, x, "non-finite image point")?;
        }
        Ok([v[0], v[1]])
    };
    let boundary = eval_all(&d.boundary, planar)?;
    let hull = convex_hull(&boundary);
    let images = eval_all(&d.interior, planar)?;
    let distances: Vec<T> = images.iter().map(|&p| outside_distance(&hull, p)).collect();
    let k = arg_max(&distances).unwrap();
    Ok(HullVerdict {
        contained: distances[k] <= hull_tol,
        max_outside_distance: distances[k],
        witness_point: d.interior[k].clone(),
        witness_image: images[k],
        hull_vertices: hull.len(),
    })
}

/// Which residual to certify.
#[derive(Clone, Copy)]
pub enum Residual<'a, T> {
    /// `Du ⊗ Du : D²u`.
    Tangential,
    /// `|Du|² [Du]⊥ Δu`.
    Normal,
    /// `Δ∞u`.
    Full,
    /// `Dv ⊗ Dv : D²v + Dv · DF` with the given forcing `F`.
    Perturbed(&'a dyn SmoothMap<T>),
}

impl<T> Residual<'_, T> {
    pub fn name(&self) -> &'static str {
        match self {
            Residual::Tangential => "tangential",
            Residual::Normal => "normal",
            Residual::Full => "full",
            Residual::Perturbed(_) => "perturbed_scalar",
        }
    }
}

/// Where map jets come from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum JetSource<T> {
    Analytic,
    /// Central differences of map values with step `h`.
    FiniteDifference { h: T },
}

impl<T> JetSource<T> {
    pub fn name(&self) -> &'static str {
        match self {
            JetSource::Analytic => "analytic",
            JetSource::FiniteDifference { .. } => "finite_difference",
        }
    }
}

fn jet_from<T: Real, M: SmoothMap<T> + ?Sized>(map: &M, x: &[T], src: JetSource<T>) -> Result<MapJet<T>> {
    match src {
        JetSource::Analytic => map.jet(x),
        JetSource::FiniteDifference { h } => fd_map_jet(|y| map.value(y), x, h),
    }
}

/// Norm of the selected residual at one point.
pub fn residual_at<T, M>(map: &M, residual: Residual<'_, T>, x: &[T], src: JetSource<T>) -> Result<T>
where
    T: Real,
    M: SmoothMap<T> + ?Sized,
{
    let m = jet_from(map, x, src)?;
    let tol = T::lit(DEFAULT_RANK_TOL);
    Ok(match residual {
        Residual::Tangential => euclid(&operators::tangential(&m)),
        Residual::Normal => euclid(&operators::normal(&m, tol)),
        Residual::Full => euclid(&operators::infinity_laplacian(&m, tol).full),
        Residual::Perturbed(forcing) => {
            let f = jet_from(forcing, x, src)?;
            operators::perturbed_scalar(&m, &f)?.abs()
        }
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport<T> {
    pub sup_residual: T,
    pub tol: T,
    pub pass: bool,
    pub worst_point: Vec<T>,
}

/// Supremum of the residual norm over the interior samples; passes iff `≤ tol`.
pub fn residual_certify<T, M>(
    map: &M,
    residual: Residual<'_, T>,
    d: &DomainSpec<T>,
    tol: T,
    src: JetSource<T>,
) -> Result<ResidualReport<T>>
where
    T: Real,
    M: SmoothMap<T> + ?Sized,
{
    if d.interior.is_empty() {
        return Err(Error::Degenerate(format!("{} has no interior samples", d.label())));
    }
    let values = eval_all(&d.interior, |x| {
        finite_or_err(residual_at(map, residual, x, src)?, x, "non-finite residual")
    })?;
    let k = arg_max(&values).unwrap();
    Ok(ResidualReport {
        sup_residual: values[k],
        tol,
        pass: values[k] <= tol,
        worst_point: d.interior[k].clone(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConservationReport<T> {
    pub max_dev: T,
    pub worst_point: Vec<T>,
}

/// `max | |Du|² − speed² |` over interior and boundary samples.
pub fn conservation_check<T, M>(map: &M, d: &DomainSpec<T>, speed: T) -> Result<ConservationReport<T>>
where
    T: Real,
    M: SmoothMap<T> + ?Sized,
{
    let points: Vec<Vec<T>> = d.interior.iter().chain(&d.boundary).cloned().collect();
    let devs = eval_all(&points, |x| {
        let g = operators::grad_norm_sq(&map.jet(x)?);
        finite_or_err((g - speed * speed).abs(), x, "non-finite gradient")
    })?;
    let k = arg_max(&devs).ok_or_else(|| Error::Degenerate("empty domain".into()))?;
    Ok(ConservationReport {
        max_dev: devs[k],
        worst_point: points[k].clone(),
    })
}
