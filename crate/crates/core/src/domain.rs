//! Sampled domains: interior and boundary point sets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq)]
pub enum DomainKind<T> {
    /// `(a, b) × ℝⁿ⁻¹`, sampled on the section `|x_k| ≤ cross_extent / 2`, `k ≥ 2`.
    Slab { a: T, b: T, cross_extent: T },
    /// `{ r_in < |x| < r_out }`.
    Annulus { r_in: T, r_out: T },
    /// Product of open intervals.
    Box { intervals: Vec<(T, T)> },
}

/// Sampling resolution.
#[derive(Clone, Debug, PartialEq)]
pub struct Sampling<T> {
    /// Grid points per axis including both endpoints; the `grid_points − 2`
    /// inner points are interior samples.
    pub grid_points: usize,
    /// Extra abscissas (slab) or radii (annulus) added to the interior when
    /// strictly inside.
    pub witnesses: Vec<T>,
    pub cross_extent: T,
    /// Points per transverse axis of a slab.
    pub cross_points: usize,
    /// Directions per sphere of an annulus in `n ≥ 2`.
    pub directions: usize,
    pub seed: u64,
}

impl<T: Real> Default for Sampling<T> {
    fn default() -> Self {
        Self {
            grid_points: 2001,
            witnesses: Vec::new(),
            cross_extent: T::one(),
            cross_points: 3,
            directions: 16,
            seed: 0,
        }
    }
}

impl<T: Real> Sampling<T> {
    pub fn with_grid(grid_points: usize) -> Self {
        Self {
            grid_points,
            ..Default::default()
        }
    }

    pub fn witnesses(mut self, w: &[T]) -> Self {
        self.witnesses = w.to_vec();
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DomainSpec<T> {
    pub kind: DomainKind<T>,
    pub n: usize,
    pub interior: Vec<Vec<T>>,
    pub boundary: Vec<Vec<T>>,
}

/// `k`-th of `count` equispaced points on `[a, b]`; exact at both ends and
/// identical on nested grids (`count' = 2 count − 1`, `k' = 2k`).
pub fn grid_point<T: Real>(a: T, b: T, k: usize, count: usize) -> T {
    let last = T::from_usize_lossy(count - 1);
    let kf = T::from_usize_lossy(k);
    (a * (last - kf) + b * kf) / last
}

fn inner_axis<T: Real>(a: T, b: T, s: &Sampling<T>) -> Vec<T> {
    let mut axis: Vec<T> = (1..s.grid_points - 1)
        .map(|k| grid_point(a, b, k, s.grid_points))
        .collect();
    axis.extend(s.witnesses.iter().copied().filter(|&w| w > a && w < b));
    axis.sort_by(|x, y| x.partial_cmp(y).unwrap());
    axis.dedup();
    axis
}

fn cross_section<T: Real>(dims: usize, extent: T, points: usize) -> Vec<Vec<T>> {
    let half = extent / T::lit(2.0);
    let axis: Vec<T> = if points <= 1 {
        vec![T::zero()]
    } else {
        (0..points).map(|k| grid_point(-half, half, k, points)).collect()
    };
    let mut out = vec![Vec::new()];
    for _ in 0..dims {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                axis.iter().map(move |&c| {
                    let mut p = prefix.clone();
                    p.push(c);
                    p
                })
            })
            .collect();
    }
    out
}

/// Uniform direction on the unit sphere from normalised Gaussian samples.
fn unit_vector<T: Real, R: Rng>(rng: &mut R, n: usize) -> Vec<T> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-8 {
            return v.into_iter().map(|x| T::lit(x / norm)).collect();
        }
    }
}

fn sphere_directions<T: Real>(n: usize, s: &Sampling<T>) -> Vec<Vec<T>> {
    let count = s.directions.max(1);
    if n == 2 {
        return (0..count)
            .map(|k| {
                let theta = T::TAU() * T::from_usize_lossy(k) / T::from_usize_lossy(count);
                vec![theta.cos(), theta.sin()]
            })
            .collect();
    }
    let mut dirs = Vec::with_capacity(2 * n + count);
    for i in 0..n {
        for sign in [T::one(), -T::one()] {
            let mut e = vec![T::zero(); n];
            e[i] = sign;
            dirs.push(e);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    dirs.extend((0..count).map(|_| unit_vector(&mut rng, n)));
    dirs
}

fn validate<T: Real>(n: usize, s: &Sampling<T>) -> Result<()> {
    if n == 0 {
        return Err(Error::config("n", "dimension must be ≥ 1"));
    }
    if s.grid_points < 3 {
        return Err(Error::config("grid_points", "need at least 3 points per axis"));
    }
    Ok(())
}

impl<T: Real> DomainSpec<T> {
    pub fn slab(a: T, b: T, n: usize, s: &Sampling<T>) -> Result<Self> {
        validate(n, s)?;
        if !(a < b) {
            return Err(Error::config("slab", format!("need a < b, got ({a}, {b})")));
        }
        let section = cross_section(n - 1, s.cross_extent, s.cross_points);
        let lift = |x1: T| {
            section.iter().map(move |c| {
                let mut p = Vec::with_capacity(n);
                p.push(x1);
                p.extend_from_slice(c);
                p
            })
        };
        let interior = inner_axis(a, b, s).into_iter().flat_map(lift).collect();
        let boundary = [a, b].into_iter().flat_map(lift).collect();
        Ok(Self {
            kind: DomainKind::Slab {
                a,
                b,
                cross_extent: s.cross_extent,
            },
            n,
            interior,
            boundary,
        })
    }

    /// For `n = 1` the annulus is `±(r_in, r_out)` with four boundary points.
    pub fn annulus(r_in: T, r_out: T, n: usize, s: &Sampling<T>) -> Result<Self> {
        validate(n, s)?;
        if !(r_in > T::zero() && r_in < r_out) {
            return Err(Error::config(
                "annulus",
                format!("need 0 < r_in < r_out, got ({r_in}, {r_out})"),
            ));
        }
        let dirs = if n == 1 {
            vec![vec![T::one()], vec![-T::one()]]
        } else {
            sphere_directions(n, s)
        };
        let shell = |r: T| dirs.iter().map(move |d| d.iter().map(|&c| c * r).collect::<Vec<T>>());
        let interior = inner_axis(r_in, r_out, s).into_iter().flat_map(shell).collect();
        let boundary = [r_in, r_out].into_iter().flat_map(shell).collect();
        Ok(Self {
            kind: DomainKind::Annulus { r_in, r_out },
            n,
            interior,
            boundary,
        })
    }

    /// Tensor grid on a box; boundary samples are the grid points on its faces.
    pub fn cuboid(intervals: &[(T, T)], s: &Sampling<T>) -> Result<Self> {
        let n = intervals.len();
        validate(n, s)?;
        if intervals.iter().any(|&(a, b)| !(a < b)) {
            return Err(Error::config("box", "every interval needs a < b"));
        }
        let g = s.grid_points;
        let mut interior = Vec::new();
        let mut boundary = Vec::new();
        let total = g.pow(n as u32);
        for mut flat in 0..total {
            let mut p = Vec::with_capacity(n);
            let mut on_face = false;
            for &(a, b) in intervals {
                let k = flat % g;
                flat /= g;
                on_face |= k == 0 || k == g - 1;
                p.push(grid_point(a, b, k, g));
            }
            if on_face {
                boundary.push(p);
            } else {
                interior.push(p);
            }
        }
        Ok(Self {
            kind: DomainKind::Box {
                intervals: intervals.to_vec(),
            },
            n,
            interior,
            boundary,
        })
    }

    pub fn label(&self) -> String {
        match &self.kind {
            DomainKind::Slab { a, b, .. } => format!("slab({a},{b})"),
            DomainKind::Annulus { r_in, r_out } => format!("annulus({r_in},{r_out})"),
            DomainKind::Box { intervals } => {
                let parts: Vec<String> = intervals.iter().map(|(a, b)| format!("({a},{b})")).collect();
                format!("box{}", parts.join("x"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slab_grid_hits_midpoints_exactly() {
        let d = DomainSpec::<f64>::slab(-1.0, 1.0, 1, &Sampling::with_grid(2001)).unwrap();
        assert_eq!(d.interior.len(), 1999);
        assert!(d.interior.iter().any(|p| p[0] == 0.0));
        assert_eq!(d.boundary, vec![vec![-1.0], vec![1.0]]);
        assert!(d.interior.iter().all(|p| p[0] > -1.0 && p[0] < 1.0));
    }

    #[test]
    fn witnesses_are_injected_once() {
        let s = Sampling::with_grid(2001).witnesses(&[0.0, 1.0, -1.0, 2.0, -2.0, 7.0]);
        let d = DomainSpec::<f64>::slab(-3.0, 3.0, 1, &s).unwrap();
        for w in [0.0, 1.0, -1.0, 2.0, -2.0] {
            assert_eq!(d.interior.iter().filter(|p| p[0] == w).count(), 1, "{w}");
        }
        assert!(!d.interior.iter().any(|p| p[0] == 7.0));
    }

    #[test]
    fn slab_cross_section() {
        let d = DomainSpec::<f64>::slab(0.0, 2.0, 3, &Sampling::with_grid(5)).unwrap();
        assert_eq!(d.interior.len(), 3 * 9);
        assert_eq!(d.boundary.len(), 2 * 9);
        assert!(d.boundary.iter().all(|p| p[0] == 0.0 || p[0] == 2.0));
    }

    #[test]
    fn annulus_boundaries() {
        let d = DomainSpec::<f64>::annulus(1.0, 3.0, 1, &Sampling::with_grid(11)).unwrap();
        assert_eq!(d.boundary.len(), 4);
        let d = DomainSpec::<f64>::annulus(1.0, 3.0, 3, &Sampling::with_grid(11)).unwrap();
        for p in &d.boundary {
            let r = p.iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!((r - 1.0).abs() < 1e-14 || (r - 3.0).abs() < 1e-14);
        }
        let inner = d.boundary.iter().filter(|p| p.iter().map(|x| x * x).sum::<f64>() < 4.0).count();
        assert_eq!(2 * inner, d.boundary.len());
    }

    #[test]
    fn box_faces() {
        let d = DomainSpec::<f64>::cuboid(&[(0.0, 1.0), (-1.0, 1.0)], &Sampling::with_grid(5)).unwrap();
        assert_eq!(d.interior.len(), 9);
        assert_eq!(d.boundary.len(), 16);
    }

    #[test]
    fn invalid_domains() {
        assert!(DomainSpec::<f64>::slab(1.0, 0.0, 1, &Sampling::default()).is_err());
        assert!(DomainSpec::<f64>::slab(0.0, 1.0, 1, &Sampling::with_grid(2)).is_err());
        assert!(DomainSpec::<f64>::annulus(0.0, 1.0, 2, &Sampling::default()).is_err());
    }
}
