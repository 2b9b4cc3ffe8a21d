//! Explicit classical solutions of the tangential ∞-Laplace system
//! `Du ⊗ Du : D²u = 0` and of the perturbed scalar equation
//! `Dv ⊗ Dv : D²v + Dv · DF = 0` that violate the maximum principle, the
//! convex hull property, and the maximum principle for `|u|`.
//!
//! The crate evaluates each construction with exact second-order jets,
//! certifies that its residual vanishes on a sampled domain, and measures the
//! principle violations.
//!
//! All numerics are generic over [`Real`] (`f32` or `f64`); the aliases below
//! fix the scalar to `f64`, which is what the verification scenarios use.

// Negated comparisons are deliberate: NaN must fail every guard.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod checkers;
pub mod domain;
pub mod error;
pub mod hull;
pub mod jet;
pub mod linalg;
pub mod maps;
pub mod operators;
pub mod profiles;
pub mod properties;
pub mod quadrature;
pub mod report;
pub mod scalar;
pub mod scenario;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Jet2 = jet::Jet2<f64>;
pub type MapJet = maps::MapJet<f64>;
pub type Matrix = linalg::Matrix<f64>;
pub type SolutionMap = maps::SolutionMap<f64>;
pub type DomainSpec = domain::DomainSpec<f64>;
pub type PrincipleVerdict = checkers::PrincipleVerdict<f64>;
pub type HullVerdict = checkers::HullVerdict<f64>;
pub type SpeedBound = profiles::SpeedBound<f64>;

pub type Jet2F32 = jet::Jet2<f32>;
pub type MapJetF32 = maps::MapJet<f32>;
