//! One-dimensional building blocks of the counterexample maps.
//!
//! Elementary profiles ([`Profile`]) have closed-form jets. The arc-length
//! complement `q(t) = ∫₀ᵗ √(M² − p'(s)²) ds` and the phase
//! `K(t) = ∫₀ᵗ √(M² − ρ'(s)²) / ρ(s) ds` have no closed form: their values come
//! from a pre-tabulated cumulative integral, while their derivatives are
//! closed-form in the integrand.

use crate::error::{Error, Result};
use crate::jet::Jet2;
use crate::quadrature::{integrate, DEFAULT_TOL};
use crate::scalar::Real;

/// Elementary scalar profiles.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Profile<T> {
    /// Odd bump: `−exp(1/((1−t)²−1))` on `(0,2)`, `+exp(1/((1+t)²−1))` on `(−2,0)`, zero elsewhere.
    W1,
    /// Bump `exp(1/((2−t)²−1))` on `(1,3)`, zero elsewhere.
    Z1,
    /// Gaussian `exp(−t²)`.
    RhoStar,
    /// Constant profile; only meaningful as a degenerate input.
    Constant(T),
}

/// Speed bound `M = sup|p'| · (1 + safety)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpeedBound<T> {
    pub m: T,
    pub sup_estimate: T,
    pub safety: T,
}

pub const DEFAULT_SAFETY: f64 = 0.05;
pub const DEFAULT_T_MAX: f64 = 2.0;
pub const DEFAULT_CACHE_CELLS: usize = 4096;
pub const DEFAULT_SUP_SAMPLES: usize = 100_001;

/// `exp(1/(s²−1))` for `|s| < 1`, the zero jet otherwise.
///
/// Once the exponent is below the underflow threshold the jet is exactly zero:
/// every derivative of the bump vanishes at its seam.
fn bump<T: Real>(s: Jet2<T>) -> Jet2<T> {
    if !(s.val.abs() < T::one()) {
        return Jet2::zero();
    }
    let q = s.square() - T::one();
    if !(q.val < T::zero()) {
        return Jet2::zero();
    }
    let g = q.recip();
    if g.val < T::min_positive_value().ln() || !g.is_finite() {
        return Jet2::zero();
    }
    g.exp()
}

/// Third derivative of `exp(g(s))`, `g = 1/(s²−1)`, for `|s| < 1`.
fn bump_d3<T: Real>(s: T) -> T {
    if !(s.abs() < T::one()) {
        return T::zero();
    }
    let q = s * s - T::one();
    let g = q.recip();
    if g < T::min_positive_value().ln() || !g.is_finite() {
        return T::zero();
    }
    let g1 = -T::lit(2.0) * s / (q * q);
    let g2 = (T::lit(6.0) * s * s + T::lit(2.0)) / (q * q * q);
    let g3 = -T::lit(24.0) * s * (s * s + T::one()) / (q * q * q * q);
    g.exp() * (g3 + T::lit(3.0) * g1 * g2 + g1 * g1 * g1)
}

impl<T: Real> Profile<T> {
    pub fn jet(&self, t: T) -> Jet2<T> {
        let x = Jet2::lift(t);
        match *self {
            Profile::W1 => {
                if t > T::zero() && t < T::lit(2.0) {
                    -bump(-x + T::one())
                } else if t < T::zero() && t > T::lit(-2.0) {
                    bump(x + T::one())
                } else {
                    Jet2::zero()
                }
            }
            Profile::Z1 => {
                if t > T::one() && t < T::lit(3.0) {
                    bump(-x + T::lit(2.0))
                } else {
                    Jet2::zero()
                }
            }
            Profile::RhoStar => (-x.square()).exp(),
            Profile::Constant(c) => Jet2::constant(c),
        }
    }

    pub fn value(&self, t: T) -> T {
        self.jet(t).val
    }

    /// Third derivative of the profile, closed-form per family.
    pub fn d3(&self, t: T) -> T {
        match *self {
            Profile::W1 => {
                if t > T::zero() && t < T::lit(2.0) {
                    // p(t) = −b(1 − t), so p‴(t) = b‴(1 − t)
                    bump_d3(T::one() - t)
                } else if t < T::zero() && t > T::lit(-2.0) {
                    bump_d3(T::one() + t)
                } else {
                    T::zero()
                }
            }
            Profile::Z1 => {
                if t > T::one() && t < T::lit(3.0) {
                    -bump_d3(T::lit(2.0) - t)
                } else {
                    T::zero()
                }
            }
            Profile::RhoStar => (T::lit(12.0) * t - T::lit(8.0) * t * t * t) * (-t * t).exp(),
            Profile::Constant(_) => T::zero(),
        }
    }

    /// Closed interval outside of which `p' ≡ 0`, if any.
    pub fn derivative_support(&self) -> Option<(T, T)> {
        match self {
            Profile::W1 => Some((T::lit(-2.0), T::lit(2.0))),
            Profile::Z1 => Some((T::one(), T::lit(3.0))),
            Profile::RhoStar => None,
            Profile::Constant(_) => Some((T::zero(), T::zero())),
        }
    }

    /// Interval on which `sup|p'|` is searched by [`choose_speed_bound`].
    pub fn search_interval(&self) -> (T, T) {
        match self {
            Profile::RhoStar => (T::lit(-6.0), T::lit(6.0)),
            Profile::Constant(_) => (T::lit(-1.0), T::one()),
            p => p.derivative_support().unwrap(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Profile::W1 => "w1",
            Profile::Z1 => "z1",
            Profile::RhoStar => "rho_star",
            Profile::Constant(_) => "constant",
        }
    }
}

fn golden_section_max<T: Real, F: Fn(T) -> T>(f: F, mut a: T, mut b: T, iters: usize) -> (T, T) {
    let inv_phi = T::lit(0.618_033_988_749_894_8);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..iters {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    if fc > fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Dense-grid maximum of `|p'|` on `[a, b]`, polished by golden-section search
/// in the two cells adjacent to the best grid point.
pub fn estimate_sup_abs_d1<T: Real>(p: &Profile<T>, a: T, b: T, samples: usize) -> T {
    let samples = samples.max(2);
    let last = T::from_usize_lossy(samples - 1);
    let at = |k: usize| {
        let kf = T::from_usize_lossy(k);
        (a * (last - kf) + b * kf) / last
    };
    let slope = |t: T| p.jet(t).d1.abs();
    let (best_k, best) = (0..samples)
        .map(|k| (k, slope(at(k))))
        .fold((0, T::zero()), |acc, x| if x.1 > acc.1 { x } else { acc });
    let lo = at(best_k.saturating_sub(1));
    let hi = at((best_k + 1).min(samples - 1));
    if hi > lo {
        let (_, polished) = golden_section_max(slope, lo, hi, 80);
        best.max(polished)
    } else {
        best
    }
}

/// Speed bound strictly above `sup|p'|`; fails for a profile with `p' ≡ 0`.
pub fn choose_speed_bound<T: Real>(p: &Profile<T>, safety: T) -> Result<SpeedBound<T>> {
    choose_speed_bound_with(p, safety, DEFAULT_SUP_SAMPLES)
}

pub fn choose_speed_bound_with<T: Real>(
    p: &Profile<T>,
    safety: T,
    samples: usize,
) -> Result<SpeedBound<T>> {
    if !(safety > T::zero()) || !safety.is_finite() {
        return Err(Error::config("safety", format!("must be > 0, got {safety}")));
    }
    let (a, b) = p.search_interval();
    let sup = estimate_sup_abs_d1(p, a, b, samples);
    if !(sup > T::zero()) {
        return Err(Error::Degenerate(format!(
            "profile {} has vanishing derivative; no positive speed bound",
            p.name()
        )));
    }
    Ok(SpeedBound {
        m: sup * (T::one() + safety),
        sup_estimate: sup,
        safety,
    })
}

/// Cumulative integral of an integrand tabulated on a uniform grid.
///
/// Off-grid values add a local adaptive integral from the nearest node.
/// Values are reported relative to `t = 0`.
#[derive(Clone, Debug)]
struct CumulativeTable<T> {
    lo: T,
    hi: T,
    cells: usize,
    nodes: Vec<T>,
    origin: T,
    tol: T,
}

impl<T: Real> CumulativeTable<T> {
    fn build<F: Fn(T) -> T>(f: &F, lo: T, hi: T, cells: usize, tol: T) -> Result<Self> {
        let cells = cells.max(1);
        let mut table = Self {
            lo,
            hi,
            cells,
            nodes: Vec::with_capacity(cells + 1),
            origin: T::zero(),
            tol,
        };
        let cell_tol = tol / T::from_usize_lossy(cells);
        let mut acc = T::zero();
        table.nodes.push(acc);
        for k in 0..cells {
            let r = integrate(f, table.node(k), table.node(k + 1), cell_tol)?;
            acc = acc + r.value;
            table.nodes.push(acc);
        }
        table.origin = table.cumulative(f, T::zero())?;
        Ok(table)
    }

    fn node(&self, k: usize) -> T {
        let n = T::from_usize_lossy(self.cells);
        let kf = T::from_usize_lossy(k);
        (self.lo * (n - kf) + self.hi * kf) / n
    }

    fn contains(&self, t: T) -> bool {
        t >= self.lo && t <= self.hi
    }

    /// `∫_lo^t f`, for `t` inside the table range.
    fn cumulative<F: Fn(T) -> T>(&self, f: &F, t: T) -> Result<T> {
        let pos = (t - self.lo) / (self.hi - self.lo) * T::from_usize_lossy(self.cells);
        let k = pos.round().to_usize().unwrap_or(0).min(self.cells);
        let node = self.node(k);
        if node == t {
            return Ok(self.nodes[k]);
        }
        let local = integrate(f, node, t, self.tol / T::from_usize_lossy(self.cells))?;
        Ok(self.nodes[k] + local.value)
    }

    fn value<F: Fn(T) -> T>(&self, f: &F, t: T) -> Result<T> {
        Ok(self.cumulative(f, t)? - self.origin)
    }
}

/// Arc-length complement `q(t) = ∫₀ᵗ √(M² − p'(s)²) ds`, making `(p, q)` a
/// curve of constant speed `M`.
#[derive(Clone, Debug)]
pub struct ArcComplement<T> {
    base: Profile<T>,
    bound: SpeedBound<T>,
    table: CumulativeTable<T>,
}

impl<T: Real> ArcComplement<T> {
    /// Tabulates `q` over the hull of `{0}` and the derivative support of `base`.
    /// Beyond that range `p' ≡ 0`, so `q` continues with slope exactly `M`.
    pub fn new(base: Profile<T>, bound: SpeedBound<T>, cells: usize) -> Result<Self> {
        let (a, b) = base.derivative_support().ok_or_else(|| {
            Error::Degenerate(format!(
                "arc complement of {} needs a compactly supported derivative",
                base.name()
            ))
        })?;
        let lo = a.min(T::zero());
        let hi = b.max(T::zero());
        let m = bound.m;
        let integrand = move |s: T| {
            let d = base.jet(s).d1;
            (m * m - d * d).max(T::zero()).sqrt()
        };
        let cells = if hi > lo { cells } else { 1 };
        let hi = if hi > lo { hi } else { lo + T::one() };
        let table = CumulativeTable::build(&integrand, lo, hi, cells, T::lit(DEFAULT_TOL))?;
        Ok(Self { base, bound, table })
    }

    pub fn base(&self) -> Profile<T> {
        self.base
    }

    pub fn bound(&self) -> SpeedBound<T> {
        self.bound
    }

    fn integrand(&self, s: T) -> T {
        let d = self.base.jet(s).d1;
        (self.bound.m * self.bound.m - d * d).max(T::zero()).sqrt()
    }

    pub fn value(&self, t: T) -> Result<T> {
        let f = |s| self.integrand(s);
        let tb = &self.table;
        if tb.contains(t) {
            tb.value(&f, t)
        } else if t > tb.hi {
            Ok(tb.value(&f, tb.hi)? + self.bound.m * (t - tb.hi))
        } else {
            Ok(tb.value(&f, tb.lo)? - self.bound.m * (tb.lo - t))
        }
    }

    /// `(q, √(M² − p'²), −p'p''/q')`; the derivative entries are closed-form.
    pub fn jet(&self, t: T) -> Result<Jet2<T>> {
        let p = self.base.jet(t);
        let m = self.bound.m;
        let slope = Jet2::new(p.d1, p.d2, T::zero());
        let speed = (-slope.square() + m * m).sqrt().map_err(|_| Error::Domain {
            what: "arc complement: M² − p'² ≤ 0",
            at: t.as_f64(),
        })?;
        Ok(Jet2::new(self.value(t)?, speed.val, speed.d1))
    }
}

/// Phase `K(t) = ∫₀ᵗ √(M² − ρ*'(s)²) / ρ*(s) ds`, restricted to `|t| ≤ t_max`.
#[derive(Clone, Debug)]
pub struct PhaseK<T> {
    bound: SpeedBound<T>,
    t_max: T,
    table: CumulativeTable<T>,
}

impl<T: Real> PhaseK<T> {
    pub fn new(bound: SpeedBound<T>, t_max: T, cells: usize) -> Result<Self> {
        if !(t_max > T::zero()) {
            return Err(Error::config("t_max", "must be > 0"));
        }
        let m = bound.m;
        let integrand = move |s: T| {
            let r = Profile::RhoStar.jet(s);
            (m * m - r.d1 * r.d1).max(T::zero()).sqrt() / r.val
        };
        let table = CumulativeTable::build(&integrand, -t_max, t_max, cells, T::lit(DEFAULT_TOL))?;
        Ok(Self {
            bound,
            t_max,
            table,
        })
    }

    pub fn bound(&self) -> SpeedBound<T> {
        self.bound
    }

    pub fn t_max(&self) -> T {
        self.t_max
    }

    fn integrand(&self, s: T) -> T {
        let r = Profile::RhoStar.jet(s);
        let m = self.bound.m;
        (m * m - r.d1 * r.d1).max(T::zero()).sqrt() / r.val
    }

    fn check_range(&self, t: T) -> Result<()> {
        if t.abs() > self.t_max || !t.is_finite() {
            return Err(Error::Range {
                what: "phase K",
                at: t.as_f64(),
                limit: self.t_max.as_f64(),
            });
        }
        Ok(())
    }

    pub fn value(&self, t: T) -> Result<T> {
        self.check_range(t)?;
        self.table.value(&|s| self.integrand(s), t)
    }

    /// `K'' ` is obtained by differentiating `K' = √(M² − ρ'²)/ρ` in jet arithmetic.
    pub fn jet(&self, t: T) -> Result<Jet2<T>> {
        self.check_range(t)?;
        let r = Profile::RhoStar.jet(t);
        let m = self.bound.m;
        let slope = Jet2::new(r.d1, r.d2, T::zero());
        let rho = Jet2::new(r.val, r.d1, T::zero());
        let root = (-slope.square() + m * m).sqrt().map_err(|_| Error::Domain {
            what: "phase K: M² − ρ'² ≤ 0",
            at: t.as_f64(),
        })?;
        let k1 = root / rho;
        Ok(Jet2::new(self.value(t)?, k1.val, k1.d1))
    }
}

/// Unit-speed circle `(cos s, sin s)` composed with a parameter jet.
pub fn gamma_circle<T: Real>(s: Jet2<T>) -> (Jet2<T>, Jet2<T>) {
    (s.cos(), s.sin())
}

pub fn eval_gamma_circle<T: Real>(s: T) -> (Jet2<T>, Jet2<T>) {
    gamma_circle(Jet2::lift(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    #[test]
    fn w1_examples() {
        assert_eq!(Profile::<f64>::W1.jet(3.0), Jet2::zero());
        let j = Profile::<f64>::W1.jet(1.0);
        assert!((j.val + 1.0 / E).abs() < 1e-15);
        assert_eq!(j.d1, 0.0);
        let j = Profile::<f64>::W1.jet(-1.0);
        assert!((j.val - 1.0 / E).abs() < 1e-15);
        assert_eq!(Profile::<f64>::W1.jet(0.0), Jet2::zero());
        assert_eq!(Profile::<f64>::W1.jet(2.0), Jet2::zero());
        assert_eq!(Profile::<f64>::W1.jet(-2.0), Jet2::zero());
    }

    #[test]
    fn z1_examples() {
        assert_eq!(Profile::<f64>::Z1.jet(0.5), Jet2::zero());
        let j = Profile::<f64>::Z1.jet(2.0);
        assert!((j.val - 1.0 / E).abs() < 1e-15);
        assert_eq!(j.d1, 0.0);
        // strictly decreasing on (2, 3)
        let mut prev = Profile::<f64>::Z1.value(2.0);
        for k in 1..1000 {
            let v = Profile::<f64>::Z1.value(2.0 + k as f64 / 1000.0);
            assert!(v < prev);
            assert!(v >= 0.0);
            prev = v;
        }
        let v = Profile::<f64>::Z1.value(2.9);
        assert!(v > 0.0 && v < 1.0 / E);
    }

    #[test]
    fn rho_star_examples() {
        assert_eq!(Profile::<f64>::RhoStar.jet(0.0), Jet2::new(1.0, 0.0, -2.0));
        assert!((Profile::<f64>::RhoStar.value(1.0) - 1.0 / E).abs() < 1e-16);
        let j = Profile::<f64>::RhoStar.jet(0.5_f64.sqrt());
        assert!((j.d1.abs() - (2.0 / E).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn seam_smoothness() {
        let eps = 1e-2;
        for t in [2.0 - eps, -2.0 + eps, eps, -eps] {
            let j = Profile::<f64>::W1.jet(t);
            assert!(j.val.abs() <= 1e-10, "{t}: {j:?}");
            assert!(j.d1.abs() <= 1e-10, "{t}: {j:?}");
            assert!(j.d2.abs() <= 1e-10, "{t}: {j:?}");
        }
        for t in [1.0 + eps, 3.0 - eps] {
            let j = Profile::<f64>::Z1.jet(t);
            assert!(j.val.abs().max(j.d1.abs()).max(j.d2.abs()) <= 1e-10);
        }
        // Near the underflow threshold the jet must stay finite.
        for t in [1.0 - 1e-9, 2.0 - 1e-9, 1e-300] {
            assert!(Profile::<f64>::W1.jet(t).is_finite());
        }
    }

    #[test]
    fn sup_of_gaussian_slope() {
        let s = estimate_sup_abs_d1(&Profile::<f64>::RhoStar, -6.0, 6.0, 100_000);
        assert!((s - (2.0 / E).sqrt()).abs() < 1e-6);
        assert_eq!(estimate_sup_abs_d1(&Profile::Constant(3.0), -1.0, 1.0, 1000), 0.0);
    }

    #[test]
    fn speed_bound_selection() {
        let b = choose_speed_bound(&Profile::<f64>::RhoStar, 0.05).unwrap();
        assert!((b.m - 1.05 * (2.0 / E).sqrt()).abs() < 1e-6);
        assert!(b.m > b.sup_estimate);
        assert!(matches!(
            choose_speed_bound(&Profile::Constant(0.0), 0.05),
            Err(Error::Degenerate(_))
        ));
        assert!(choose_speed_bound(&Profile::<f64>::W1, 0.0).is_err());
    }

    #[test]
    fn arc_complement_examples() {
        let b = choose_speed_bound(&Profile::<f64>::W1, 0.05).unwrap();
        let w2 = ArcComplement::new(Profile::W1, b, 1024).unwrap();
        let j = w2.jet(0.0).unwrap();
        assert_eq!(j.val, 0.0);
        assert_eq!(j.d1, b.m);
        assert_eq!(w2.jet(5.0).unwrap().d1, b.m);
        assert_eq!(w2.jet(-5.0).unwrap().d1, b.m);
        // linear continuation past the table
        let slope = (w2.value(5.0).unwrap() - w2.value(3.0).unwrap()) / 2.0;
        assert!((slope - b.m).abs() < 1e-14);
    }

    #[test]
    fn arc_complement_rejects_dominated_bound() {
        let bad = SpeedBound {
            m: 0.5,
            sup_estimate: 0.5,
            safety: 0.0,
        };
        let w2 = ArcComplement::new(Profile::W1, bad, 256).unwrap();
        // |w1'| reaches ~0.798 near t = 0.24
        assert!(matches!(w2.jet(0.24), Err(Error::Domain { .. })));
    }

    #[test]
    fn phase_examples_and_range_guard() {
        let b = choose_speed_bound(&Profile::<f64>::RhoStar, 0.05).unwrap();
        let k = PhaseK::new(b, 2.0, 1024).unwrap();
        let j = k.jet(0.0).unwrap();
        assert_eq!(j.val, 0.0);
        assert_eq!(j.d1, b.m);
        assert!(matches!(k.jet(2.5), Err(Error::Range { .. })));
        assert!(k.jet(-2.0).is_ok());
    }

    #[test]
    fn circle() {
        let (c, s) = eval_gamma_circle(0.0_f64);
        assert_eq!(c, Jet2::new(1.0, 0.0, -1.0));
        assert_eq!(s, Jet2::new(0.0, 1.0, 0.0));
        for k in 0..50 {
            let (c, s) = eval_gamma_circle(k as f64 * 0.37 - 4.0);
            assert!((c.val * c.val + s.val * s.val - 1.0).abs() < 1e-15);
            assert!((c.d1 * c.d1 + s.d1 * s.d1 - 1.0).abs() < 1e-15);
        }
    }
}
