//! Dynamics of the two-slope piecewise-linear area-preserving plane maps
//!
//! The map acts on the plane as `(x, y) ↦ (F(x)·x − y, x)` where `F(x)` picks
//! the slope `a` for `x ≥ 0` and `b` for `x < 0`. It is an area-preserving
//! homeomorphism that sends rays from the origin to rays from the origin, so
//! it induces a circle map with a well-defined rotation number. This crate
//! provides:
//!
//! * exact evaluation of the map, its inverse, iterates and cocycle matrix
//!   products ([`plane`]),
//! * the induced circle map, a globally correct lift and rotation-number
//!   estimation with a rigorous `1/N` error bound ([`circle`]),
//! * periodic-ray location and the rational-rotation trichotomy classifier
//!   ([`rational`]),
//! * closed-form rotation/period oracles for the known parameter families and
//!   the ν-solver for prescribed rotation numbers ([`families`]),
//! * boundedness probing and numerical invariant-circle construction
//!   ([`invariant`]).
//!
//! The crate is `no_std`-compatible (`alloc` required); disable the default
//! `std` feature and enable `libm` for embedded use.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

#[cfg(not(any(feature = "std", feature = "libm")))]
compile_error!("hingemap requires either the `std` or the `libm` feature");

extern crate alloc;

mod num;

pub mod circle;
pub mod config;
pub mod error;
pub mod extended;
pub mod families;
pub mod invariant;
pub mod plane;
pub mod rational;
pub mod rng;

pub use circle::{
    circle_apply, circle_derivative, detect_rational, lift_increment, rotation_number,
    LiftedAngle, Rational, RotationEstimate,
};
pub use config::Tolerances;
pub use error::{CocycleError, Error, Result};
pub use families::{
    hyperbola_family, period_mixed, rotnum_linear, rotnum_mixed, solve_nu,
    witness_upper_endpoint, HyperbolaFamily, PeriodicRayWitness, SolveResult,
};
pub use invariant::{
    boundedness_probe, build_circle, linear_ellipse_oracle, symmetry_defect, BoundednessReport,
    InvariantCircleProfile,
};
pub use plane::{
    apply, apply_inverse, cocycle_product, convert_parameters, iterate, MapParams, Mat2,
    OrbitSample, PlaneVec, Sign, SignWord,
};
pub use rational::{
    classify, classify_from_estimate, find_periodic_rays, is_finite_order,
    lambda_relations_check, orbit_divergence_check, periodic_type, symbolic_word, DivergenceReport,
    DynamicsClass, GrowthKind, LambdaReport, PeriodicRay, PeriodicTypeTag,
};
