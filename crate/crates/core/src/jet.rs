//! Second-order forward-mode differentiation in one variable.
//!
//! A [`Jet2`] carries `(f, f', f'')` of a scalar function at a point. Every
//! construction in this crate depends on a single scalar parameter (`x₁` or
//! `|x|`), so multivariate Jacobians and Hessians are assembled from these
//! univariate jets by the `maps` module.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Value, first and second derivative of a scalar function of one variable.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Jet2<T> {
    pub val: T,
    pub d1: T,
    pub d2: T,
}

impl<T: Real> Jet2<T> {
    #[inline]
    pub fn new(val: T, d1: T, d2: T) -> Self {
        Self { val, d1, d2 }
    }

    /// The identity jet at `t`: `(t, 1, 0)`.
    #[inline]
    pub fn lift(t: T) -> Self {
        Self::new(t, T::one(), T::zero())
    }

    #[inline]
    pub fn constant(c: T) -> Self {
        Self::new(c, T::zero(), T::zero())
    }

    #[inline]
    pub fn zero() -> Self {
        Self::constant(T::zero())
    }

    /// Compose an outer function with known `(f, f', f'')` at `self.val`.
    ///
    /// `h = f∘g`: `h' = f'(g) g'`, `h'' = f''(g) g'² + f'(g) g''`.
    #[inline]
    pub fn chain(self, f0: T, f1: T, f2: T) -> Self {
        Self::new(f0, f1 * self.d1, f2 * self.d1 * self.d1 + f1 * self.d2)
    }

    pub fn exp(self) -> Self {
        let e = self.val.exp();
        self.chain(e, e, e)
    }

    pub fn sin(self) -> Self {
        let (s, c) = self.val.sin_cos();
        self.chain(s, c, -s)
    }

    pub fn cos(self) -> Self {
        let (s, c) = self.val.sin_cos();
        self.chain(c, -s, -c)
    }

    pub fn square(self) -> Self {
        self * self
    }

    pub fn powi(self, n: i32) -> Self {
        let nf = T::from_i32(n).unwrap();
        let f1 = if n == 0 {
            T::zero()
        } else {
            nf * self.val.powi(n - 1)
        };
        let f2 = if n == 0 || n == 1 {
            T::zero()
        } else {
            nf * (nf - T::one()) * self.val.powi(n - 2)
        };
        self.chain(self.val.powi(n), f1, f2)
    }

    /// Real power; requires a strictly positive base.
    pub fn powf(self, p: T) -> Result<Self> {
        if !(self.val > T::zero()) {
            return Err(Error::Domain {
                what: "jet powf",
                at: self.val.as_f64(),
            });
        }
        let f0 = self.val.powf(p);
        let f1 = p * f0 / self.val;
        let f2 = p * (p - T::one()) * f0 / (self.val * self.val);
        Ok(self.chain(f0, f1, f2))
    }

    /// Square root; fails unless `val > 0`.
    ///
    /// The strict inequality is what detects a speed bound `M` that does not
    /// dominate `|p'|` in `√(M² − p'²)`.
    pub fn sqrt(self) -> Result<Self> {
        if !(self.val > T::zero()) {
            return Err(Error::Domain {
                what: "jet sqrt",
                at: self.val.as_f64(),
            });
        }
        let r = self.val.sqrt();
        let two = T::lit(2.0);
        let f1 = T::one() / (two * r);
        let f2 = -f1 / (two * self.val);
        Ok(self.chain(r, f1, f2))
    }

    pub fn recip(self) -> Self {
        let inv = T::one() / self.val;
        let inv2 = inv * inv;
        self.chain(inv, -inv2, T::lit(2.0) * inv2 * inv)
    }

    pub fn scale(self, k: T) -> Self {
        Self::new(self.val * k, self.d1 * k, self.d2 * k)
    }

    pub fn is_finite(&self) -> bool {
        self.val.is_finite() && self.d1.is_finite() && self.d2.is_finite()
    }
}

impl<T: Real> Add for Jet2<T> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.val + o.val, self.d1 + o.d1, self.d2 + o.d2)
    }
}

impl<T: Real> Sub for Jet2<T> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.val - o.val, self.d1 - o.d1, self.d2 - o.d2)
    }
}

impl<T: Real> Mul for Jet2<T> {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        Self::new(
            self.val * o.val,
            self.d1 * o.val + self.val * o.d1,
            self.d2 * o.val + T::lit(2.0) * self.d1 * o.d1 + self.val * o.d2,
        )
    }
}

impl<T: Real> Div for Jet2<T> {
    type Output = Self;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.recip()
    }
}

impl<T: Real> Neg for Jet2<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.val, -self.d1, -self.d2)
    }
}

impl<T: Real> Add<T> for Jet2<T> {
    type Output = Self;
    #[inline]
    fn add(self, c: T) -> Self {
        Self::new(self.val + c, self.d1, self.d2)
    }
}

impl<T: Real> Sub<T> for Jet2<T> {
    type Output = Self;
    #[inline]
    fn sub(self, c: T) -> Self {
        Self::new(self.val - c, self.d1, self.d2)
    }
}

impl<T: Real> Mul<T> for Jet2<T> {
    type Output = Self;
    #[inline]
    fn mul(self, c: T) -> Self {
        self.scale(c)
    }
}

impl<T: Real> Div<T> for Jet2<T> {
    type Output = Self;
    #[inline]
    fn div(self, c: T) -> Self {
        Self::new(self.val / c, self.d1 / c, self.d2 / c)
    }
}

/// Default step for central differences at double precision.
pub const DEFAULT_FD_STEP: f64 = 1e-4;

/// Central-difference jet of `f` at `t`; an oracle independent of [`Jet2`]
/// arithmetic.
///
/// `d1 = (f(t+h) − f(t−h)) / 2h`, `d2 = (f(t+h) − 2f(t) + f(t−h)) / h²`.
pub fn fd_jet<T: Real, F: Fn(T) -> T>(f: F, t: T, h: T) -> Jet2<T> {
    let fp = f(t + h);
    let f0 = f(t);
    let fm = f(t - h);
    let two = T::lit(2.0);
    Jet2::new(f0, (fp - fm) / (two * h), (fp - two * f0 + fm) / (h * h))
}
