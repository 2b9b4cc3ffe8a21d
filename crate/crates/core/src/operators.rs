//! The ∞-Laplacian and its parts, applied to a [`MapJet`].
//!
//! `Δ∞u = (Du ⊗ Du + |Du|² [Du]⊥ ⊗ I) : D²u` splits into the tangential part
//! `Du ⊗ Du : D²u = Du · D(½|Du|²)`, which lies in the range of `Du`, and the
//! normal part `|Du|² [Du]⊥ Δu`, which lies in its orthogonal complement.

use crate::error::{Error, Result};
use crate::linalg::{jacobi_left_svd, Matrix};
use crate::maps::MapJet;
use crate::scalar::Real;

/// Singular values below `DEFAULT_RANK_TOL · σ_max` count as zero.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

/// `|Du|² = Du : Du`.
pub fn grad_norm_sq<T: Real>(m: &MapJet<T>) -> T {
    m.jacobian.as_slice().iter().map(|&x| x * x).sum()
}

/// `D_i(½|Du|²) = Σ_{β,j} D_j u_β D²_ij u_β`.
pub fn half_grad_norm_sq_gradient<T: Real>(m: &MapJet<T>) -> Vec<T> {
    let n = m.domain_dim();
    (0..n)
        .map(|i| {
            let mut acc = T::zero();
            for (beta, h) in m.hessian.iter().enumerate() {
                for j in 0..n {
                    acc = acc + m.jacobian[(beta, j)] * h[(i, j)];
                }
            }
            acc
        })
        .collect()
}

/// Tangential part, component `α = Σ_{i,j,β} D_i u_α D_j u_β D²_ij u_β`.
pub fn tangential<T: Real>(m: &MapJet<T>) -> Vec<T> {
    m.jacobian.matvec(&half_grad_norm_sq_gradient(m))
}

/// `[J]⊥` together with the spectrum that decided its rank.
#[derive(Clone, Debug)]
pub struct Projection<T> {
    pub matrix: Matrix<T>,
    pub rank: usize,
    pub singular_values: Vec<T>,
}

impl<T: Real> Projection<T> {
    /// Distance of the rank decision from the threshold: the smallest retained
    /// and the largest discarded singular value, both relative to `σ_max`.
    /// Zero when there is nothing on that side.
    pub fn singular_gap(&self) -> (T, T) {
        let smax = match self.singular_values.first() {
            Some(&s) if s > T::zero() => s,
            _ => return (T::zero(), T::zero()),
        };
        let kept = self.singular_values[..self.rank]
            .last()
            .map_or(T::zero(), |&s| s / smax);
        let dropped = self
            .singular_values
            .get(self.rank)
            .map_or(T::zero(), |&s| s / smax);
        (kept, dropped)
    }
}

/// Orthogonal projection onto the null space of `Jᵀ`: `I − Σ_r u_r u_rᵀ` over
/// left singular vectors with `σ_r > rank_tol · σ_max`.
pub fn projection_with_spectrum<T: Real>(j: &Matrix<T>, rank_tol: T) -> Projection<T> {
    let big_n = j.rows();
    let svd = jacobi_left_svd(j);
    let smax = svd.singular_values.first().copied().unwrap_or(T::zero());
    let rank = svd
        .singular_values
        .iter()
        .take_while(|&&s| s > rank_tol * smax)
        .count();
    // Full row rank: the null space of Jᵀ is {0} exactly.
    if rank == big_n {
        return Projection {
            matrix: Matrix::zeros(big_n, big_n),
            rank,
            singular_values: svd.singular_values,
        };
    }
    let mut p = Matrix::identity(big_n);
    for u in &svd.left_vectors[..rank] {
        for a in 0..big_n {
            for b in 0..big_n {
                p[(a, b)] = p[(a, b)] - u[a] * u[b];
            }
        }
    }
    Projection {
        matrix: p,
        rank,
        singular_values: svd.singular_values,
    }
}

pub fn orthogonal_projection<T: Real>(j: &Matrix<T>, rank_tol: T) -> Matrix<T> {
    projection_with_spectrum(j, rank_tol).matrix
}

/// Normal part `|Du|² [Du]⊥ Δu`.
pub fn normal<T: Real>(m: &MapJet<T>, rank_tol: T) -> Vec<T> {
    normal_with(m, &projection_with_spectrum(&m.jacobian, rank_tol))
}

fn normal_with<T: Real>(m: &MapJet<T>, p: &Projection<T>) -> Vec<T> {
    let g2 = grad_norm_sq(m);
    p.matrix
        .matvec(&m.laplacian())
        .into_iter()
        .map(|x| g2 * x)
        .collect()
}

/// Both parts of `Δ∞u` at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorValue<T> {
    pub tangential: Vec<T>,
    pub normal: Vec<T>,
    /// `tangential + normal`.
    pub full: Vec<T>,
    pub grad_norm_sq: T,
    pub rank: usize,
    /// See [`Projection::singular_gap`].
    pub singular_gap: (T, T),
}

pub fn infinity_laplacian<T: Real>(m: &MapJet<T>, rank_tol: T) -> OperatorValue<T> {
    let p = projection_with_spectrum(&m.jacobian, rank_tol);
    let tangential = tangential(m);
    let normal = normal_with(m, &p);
    let full = tangential.iter().zip(&normal).map(|(&a, &b)| a + b).collect();
    OperatorValue {
        tangential,
        normal,
        full,
        grad_norm_sq: grad_norm_sq(m),
        rank: p.rank,
        singular_gap: p.singular_gap(),
    }
}

/// Scalar `Dv ⊗ Dv : D²v + Dv · DF`.
pub fn perturbed_scalar<T: Real>(v: &MapJet<T>, forcing: &MapJet<T>) -> Result<T> {
    if v.target_dim() != 1 || forcing.target_dim() != 1 {
        return Err(Error::Dimension(format!(
            "perturbed equation is scalar; got N = {} and {}",
            v.target_dim(),
            forcing.target_dim()
        )));
    }
    if v.domain_dim() != forcing.domain_dim() {
        return Err(Error::Dimension(format!(
            "v on ℝ^{} but F on ℝ^{}",
            v.domain_dim(),
            forcing.domain_dim()
        )));
    }
    let n = v.domain_dim();
    let dv = |i| v.jacobian[(0, i)];
    let mut acc = T::zero();
    for i in 0..n {
        for j in 0..n {
            acc = acc + dv(i) * dv(j) * v.hess(0, i, j);
        }
        acc = acc + dv(i) * forcing.jacobian[(0, i)];
    }
    Ok(acc)
}

pub(crate) fn euclid<T: Real>(v: &[T]) -> T {
    v.iter().map(|&x| x * x).sum::<T>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar_jet(d: Vec<f64>, h: Vec<f64>) -> MapJet<f64> {
        let n = d.len();
        MapJet::new(
            vec![0.0],
            Matrix::from_row_major(1, n, d),
            vec![Matrix::from_row_major(n, n, h)],
        )
        .unwrap()
    }

    #[test]
    fn grad_norm_examples() {
        assert_eq!(grad_norm_sq(&MapJet::<f64>::zeros(2, 3)), 0.0);
        let mut m = MapJet::<f64>::zeros(2, 2);
        m.jacobian = Matrix::identity(2);
        assert_eq!(grad_norm_sq(&m), 2.0);
    }

    #[test]
    fn projection_examples() {
        let p = orthogonal_projection(&Matrix::<f64>::zeros(3, 2), 1e-10);
        assert_eq!(p, Matrix::identity(3));
        let j = Matrix::from_row_major(2, 2, vec![1.0, 0.0, 0.0, 0.0]);
        let p = orthogonal_projection(&j, 1e-10);
        assert_eq!(p, Matrix::from_row_major(2, 2, vec![0.0, 0.0, 0.0, 1.0]));
        let j = Matrix::from_row_major(2, 3, vec![1.0, 2.0, -1.0, 0.5, 0.1, 3.0]);
        assert_eq!(orthogonal_projection(&j, 1e-10), Matrix::zeros(2, 2));
    }

    #[test]
    fn tangential_of_linear_scalar_is_zero() {
        let m = scalar_jet(vec![1.0, 0.0], vec![0.0; 4]);
        assert_eq!(tangential(&m), vec![0.0]);
    }

    #[test]
    fn normal_vanishes_for_scalar_maps() {
        let m = scalar_jet(vec![0.3, -2.0], vec![1.0, 0.5, 0.5, 4.0]);
        assert_eq!(normal(&m, 1e-10), vec![0.0]);
        let flat = scalar_jet(vec![0.0, 0.0], vec![1.0, 0.5, 0.5, 4.0]);
        assert_eq!(normal(&flat, 1e-10), vec![0.0]);
        let full = infinity_laplacian(&m, 1e-10);
        assert_eq!(full.full, full.tangential);
    }

    #[test]
    fn affine_map_is_infinity_harmonic() {
        let mut m = MapJet::<f64>::zeros(3, 2);
        m.jacobian = Matrix::from_row_major(3, 2, vec![1.0, 2.0, 0.0, -1.0, 4.0, 0.5]);
        let op = infinity_laplacian(&m, 1e-10);
        assert!(op.full.iter().all(|&x| x == 0.0));
        assert_eq!(op.rank, 2);
    }

    #[test]
    fn perturbed_examples() {
        let zero_f = scalar_jet(vec![0.0], vec![0.0]);
        let v = scalar_jet(vec![1.0], vec![0.0]);
        assert_eq!(perturbed_scalar(&v, &zero_f).unwrap(), 0.0);
        // v = ½x², at x = 1.7: v'² v'' = x²
        let x: f64 = 1.7;
        let v = scalar_jet(vec![x], vec![1.0]);
        assert!((perturbed_scalar(&v, &zero_f).unwrap() - x * x).abs() < 1e-15);
        let two_d = scalar_jet(vec![0.0, 0.0], vec![0.0; 4]);
        assert!(matches!(
            perturbed_scalar(&v, &two_d),
            Err(Error::Dimension(_))
        ));
        assert!(perturbed_scalar(&MapJet::zeros(2, 1), &zero_f).is_err());
    }

    #[test]
    fn singular_gap_reports_threshold_distance() {
        let j = Matrix::from_row_major(2, 2, vec![1.0_f64, 0.0, 0.0, 1e-12]);
        let p = projection_with_spectrum(&j, 1e-10);
        assert_eq!(p.rank, 1);
        let (kept, dropped) = p.singular_gap();
        assert_eq!(kept, 1.0);
        assert!((dropped - 1e-12).abs() < 1e-24);
    }
}
