//! Closed-form rotation-number and period oracles for the parameter families
//! where they are known, the endpoint witness construction, and the ν-solver
//! for prescribed rotation numbers.
//!
//! Three families admit exact formulas:
//!
//! * equal slopes `a = b = 2cos θ` — the map is linear and conjugate to a
//!   rotation by θ, so the rotation number is `θ/2π`;
//! * `a = 2cos(π/n)` with `b = 2cos θ` — rotation `θ/(π + nθ)`, periodic of
//!   period `2np + q` (half that for even `q`) when `θ/2π = p/q`;
//! * `a, b ≤ 0` on the hyperbola `ab = 4cos²(π/2n)` — rotation `(2n−1)/4n`
//!   and period `4n` (the 2n-th iterate is `−I`).
//!
//! The witness construction produces, for `a = 2cos θ` and `b` below the
//! trace bound, an explicit eigenvector whose ray is fixed by the
//! `(n+1)`-fold map with rotation `1/(n+1)`, `n = ⌊π/θ⌋` — the upper
//! endpoint of the rotation-number interval at fixed `a`. The solver inverts
//! the other direction: given `μ` and a target `p/q`, it finds the unique
//! `ν` making a prescribed ray periodic, by bisection on the strictly
//! ν-monotone q-step lift displacement.

use crate::circle::{lift_displacement, Rational};
use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::num;
use crate::plane::{MapParams, PlaneVec};
use alloc::vec::Vec;

/// A parameter point on the periodic hyperbola `ab = 4cos²(π/2n)`,
/// `a, b ≤ 0`, with its predicted rotation number and exact period.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperbolaFamily {
    pub params: MapParams,
    pub rotation: Rational,
    pub period: u64,
}

/// Explicit periodic-ray witness at the upper endpoint of the rotation
/// interval for fixed `a = 2cos θ`.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicRayWitness {
    /// Angle with `a = 2cos θ`.
    pub theta: f64,
    /// Number of consecutive right-half-plane steps, `⌊π/θ⌋`.
    pub n: u32,
    /// Slack in the trace condition, `c ≥ 0`.
    pub c: f64,
    /// Radial multiplier of the witness ray, the eigenvalue
    /// `k = 1 + (c + √(c(c+4)))/2 ≥ 1`.
    pub k: f64,
    /// The witness vector; `v.x ≤ 0`.
    pub v: PlaneVec,
    /// The intermediate x-coordinates `x_1 … x_n`, all positive.
    pub intermediate_x: Vec<f64>,
    /// Rotation number of the witness orbit, `1/(n+1)`.
    pub predicted_rotation: Rational,
}

/// Result of the ν-solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveResult {
    pub nu: f64,
    /// Lift-displacement defect at the returned ν, in radians.
    pub residual: f64,
    pub iterations: u32,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Rotation number `θ/2π` of the linear map with `a = b = 2cos θ`,
/// `0 < θ < π`.
pub fn rotnum_linear(theta: f64) -> Result<f64> {
    if !(theta > 0.0 && theta < num::PI) {
        return Err(Error::Domain("theta must lie in (0, π)"));
    }
    Ok(theta / num::TAU)
}

/// Rotation number `θ/(π + nθ)` of the family `a = 2cos(π/n)`,
/// `b = 2cos θ`, for `n ≥ 2` and `0 < θ < π`.
pub fn rotnum_mixed(n: u32, theta: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain("n must be at least 2"));
    }
    if !(theta > 0.0 && theta < num::PI) {
        return Err(Error::Domain("theta must lie in (0, π)"));
    }
    Ok(theta / (num::PI + n as f64 * theta))
}

/// Exact period of the mixed family at `θ/2π = p/q` in lowest terms:
/// `2np + q` for odd `q`, half that for even `q`.
pub fn period_mixed(n: u32, p: u64, q: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::Domain("n must be at least 2"));
    }
    if p == 0 || q == 0 || 2 * p >= q {
        return Err(Error::Domain("p/q must lie in (0, 1/2)"));
    }
    if gcd(p, q) != 1 {
        return Err(Error::Domain("p/q must be in lowest terms"));
    }
    let raw = 2 * n as u64 * p + q;
    Ok(if q % 2 == 0 { raw / 2 } else { raw })
}

/// Parameter point on the periodic hyperbola `ab = 4cos²(π/2n)` with both
/// slopes nonpositive, determined by `n ≥ 2` and `a < 0`.
pub fn hyperbola_family(n: u32, a: f64) -> Result<HyperbolaFamily> {
    if n < 2 {
        return Err(Error::Domain("n must be at least 2"));
    }
    if !(a < 0.0) {
        return Err(Error::Domain("a must be negative on the hyperbola"));
    }
    let half = num::cos(num::PI / (2.0 * n as f64));
    let b = 4.0 * half * half / a;
    Ok(HyperbolaFamily {
        params: MapParams::from_ab(a, b),
        rotation: Rational { p: 2 * n as i64 - 1, q: 4 * n as i64 },
        period: 4 * n as u64,
    })
}

/// Witness for the upper endpoint `1/(n+1)` of the rotation interval at
/// fixed `a = 2cos θ ∈ [−2, 2)`, `n = ⌊π/θ⌋`.
///
/// Feasibility requires the trace condition
/// `b ≤ 2(sin nθ + sin θ)/sin((n+1)θ)` (the denominator is ≤ 0 by the choice
/// of n). The construction solves `c·sin θ = b·sin((n+1)θ) − 2sin nθ − 2sin θ`
/// for the slack `c ≥ 0` and returns the eigenvector of the one-cycle matrix
/// with eigenvalue `k ≥ 1`, whose orbit spends exactly one step in the left
/// half-plane followed by `n` steps in the right half-plane.
pub fn witness_upper_endpoint(a: f64, b: f64) -> Result<PeriodicRayWitness> {
    if !(-2.0..2.0).contains(&a) {
        return Err(Error::Domain("a must lie in [-2, 2)"));
    }
    let theta = num::acos(0.5 * a);
    let n = num::floor(num::PI / theta) as u32;
    let sin_t = num::sin(theta);
    let sin_n = num::sin(n as f64 * theta);
    let sin_n1 = num::sin((n + 1) as f64 * theta);
    if num::abs(sin_n1) < 1e-12 || sin_t < 1e-12 {
        // boundary of validity of the trace condition (the adjacent n
        // covers such θ); includes the degenerate a = −2 endpoint
        return Err(Error::Infeasible("resonant theta: sin((n+1)θ) vanishes"));
    }
    let c = (b * sin_n1 - 2.0 * sin_n - 2.0 * sin_t) / sin_t;
    if c < 0.0 {
        return Err(Error::Infeasible("b lies above the trace bound"));
    }
    let disc = num::sqrt(c * (c + 4.0));
    let k = 1.0 + 0.5 * (c + disc);
    let v = PlaneVec::new(sin_n1 / sin_t, 0.5 * (c - disc) + 1.0 + sin_n / sin_t);
    let mut intermediate_x = Vec::with_capacity(n as usize);
    for m in 1..=n {
        let sin_m = num::sin(m as f64 * theta);
        let sin_rest = num::sin((n - m + 1) as f64 * theta);
        intermediate_x.push((sin_m * k + sin_rest) / sin_t);
    }
    Ok(PeriodicRayWitness {
        theta,
        n,
        c,
        k,
        v,
        intermediate_x,
        predicted_rotation: Rational { p: 1, q: n as i64 + 1 },
    })
}

/// The unique `ν` for which the ray at angle `theta` is a periodic point of
/// rotation number `p/q` of the map with slope asymmetry `mu`.
///
/// The q-step lift displacement at a fixed ray moves strictly clockwise as ν
/// increases, so the defect `S̃^q(θ) − θ − 2πp` is strictly decreasing in ν
/// and bisection is unconditionally safe once a sign change is bracketed.
/// The bracket starts at the hyperbola-family anchor
/// `ν₀ = −√(μ² + 4cos²(π/2q))`, where the rotation number is
/// `(2q−1)/4q > p/q`, and at `ν = 2 − μ + 1`, where the slope `a ≥ 2` forces
/// rotation number 0; both ends expand geometrically if the displacement
/// defect has not yet changed sign there.
pub fn solve_nu(mu: f64, p: i64, q: i64, theta: f64, cfg: &Tolerances) -> Result<SolveResult> {
    if q < 1 || p < 1 || 2 * p >= q {
        return Err(Error::Domain("p/q must lie in (0, 1/2)"));
    }
    if gcd(p as u64, q as u64) != 1 {
        return Err(Error::Domain("p/q must be in lowest terms"));
    }
    if !mu.is_finite() || !theta.is_finite() {
        return Err(Error::NonFinite);
    }
    let qu = q as u64;
    let target = num::TAU * p as f64;
    let defect = |nu: f64| {
        lift_displacement(MapParams::from_mu_nu(mu, nu), theta, qu) - target
    };

    let anchor = num::cos(num::PI / (2.0 * q as f64));
    let mut lo = -num::sqrt(mu * mu + 4.0 * anchor * anchor);
    let mut hi = 2.0 - mu + 1.0;
    let mut iterations = 0u32;

    // expand the ends until the defect brackets a sign change
    let mut step = 1.0;
    while defect(lo) <= 0.0 {
        lo -= step;
        step *= 2.0;
        iterations += 1;
        if !(lo > -1e8) {
            return Err(Error::NoBracket { lo, hi });
        }
    }
    step = 1.0;
    while defect(hi) >= 0.0 {
        hi += step;
        step *= 2.0;
        iterations += 1;
        if !(hi < 1e8) {
            return Err(Error::NoBracket { lo, hi });
        }
    }

    while hi - lo > cfg.solver_tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // interval at floating-point resolution
        }
        iterations += 1;
        if defect(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let nu = 0.5 * (lo + hi);
    Ok(SolveResult { nu, residual: num::abs(defect(nu)), iterations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Tolerances;
    use crate::num::{PI, TAU};
    use crate::rational::is_finite_order;

    #[test]
    fn linear_rotation_numbers() {
        assert_eq!(rotnum_linear(PI / 2.0).unwrap(), 0.25);
        assert!((rotnum_linear(2.0 * PI / 5.0).unwrap() - 0.2).abs() < 1e-15);
        assert!((rotnum_linear(1.0).unwrap() - 1.0 / TAU).abs() < 1e-16);
        assert!(rotnum_linear(0.0).is_err());
        assert!(rotnum_linear(PI).is_err());
        assert!(rotnum_linear(-0.3).is_err());
    }

    #[test]
    fn mixed_family_rotation_and_period() {
        assert!((rotnum_mixed(3, 2.0 * PI / 3.0).unwrap() - 2.0 / 9.0).abs() < 1e-15);
        assert!((rotnum_mixed(2, PI / 2.0).unwrap() - 0.25).abs() < 1e-15);
        let r = rotnum_mixed(4, 2.0 * PI / 5.0).unwrap();
        assert!((r - 2.0 / 13.0).abs() < 1e-15);

        assert_eq!(period_mixed(3, 1, 3).unwrap(), 9);
        assert_eq!(period_mixed(2, 1, 4).unwrap(), 4);
        assert_eq!(period_mixed(4, 1, 5).unwrap(), 13);
        assert!(period_mixed(3, 2, 4).is_err()); // not in lowest terms
        assert!(period_mixed(1, 1, 3).is_err());
    }

    #[test]
    fn mixed_family_period_confirmed_by_iteration() {
        // a = 2cos(π/4), b = 2cos(2π/5): period 13
        let p = MapParams::from_ab(2.0 * num::cos(PI / 4.0), 2.0 * num::cos(2.0 * PI / 5.0));
        let cfg = Tolerances::default();
        assert_eq!(is_finite_order(p, 20, 1e-9, &cfg), Some(13));
    }

    #[test]
    fn hyperbola_points() {
        let s2 = 2.0f64.sqrt();
        let f = hyperbola_family(2, -s2).unwrap();
        assert!((f.params.b + s2).abs() < 1e-15);
        assert_eq!(f.rotation, Rational { p: 3, q: 8 });
        assert_eq!(f.period, 8);

        let f = hyperbola_family(3, -1.0).unwrap();
        assert!((f.params.b + 3.0).abs() < 1e-12);
        assert_eq!(f.rotation, Rational { p: 5, q: 12 });
        assert_eq!(f.period, 12);

        let f = hyperbola_family(2, -2.0).unwrap();
        assert!((f.params.b + 1.0).abs() < 1e-15);
        assert_eq!(f.period, 8);

        assert!(hyperbola_family(2, 0.5).is_err());
        assert!(hyperbola_family(2, 0.0).is_err());
        assert!(hyperbola_family(1, -1.0).is_err());
    }

    #[test]
    fn hyperbola_point_is_periodic() {
        let f = hyperbola_family(2, -2.0f64.sqrt()).unwrap();
        let cfg = Tolerances::default();
        assert_eq!(is_finite_order(f.params, 16, 1e-9, &cfg), Some(8));
    }

    #[test]
    fn witness_reference_values() {
        let w = witness_upper_endpoint(0.0, -3.0).unwrap();
        assert_eq!(w.n, 2);
        assert!((w.c - 1.0).abs() <= 1e-12);
        let golden = (3.0 + 5.0f64.sqrt()) / 2.0;
        assert!((w.k - golden).abs() <= 1e-12);
        assert!((w.v.x + 1.0).abs() <= 1e-12);
        assert!((w.v.y - (3.0 - 5.0f64.sqrt()) / 2.0).abs() <= 1e-12);
        assert_eq!(w.intermediate_x.len(), 2);
        assert!((w.intermediate_x[0] - golden).abs() <= 1e-12);
        assert!((w.intermediate_x[1] - 1.0).abs() <= 1e-12);
        assert_eq!(w.predicted_rotation, Rational { p: 1, q: 3 });
    }

    #[test]
    fn witness_boundary_and_infeasible() {
        let w = witness_upper_endpoint(0.0, -2.0).unwrap();
        assert!(w.c.abs() <= 1e-12);
        assert!((w.k - 1.0).abs() <= 1e-12);
        assert!(matches!(witness_upper_endpoint(0.0, -1.0), Err(Error::Infeasible(_))));
        // degenerate endpoint a = −2 hits the resonance rejection
        assert!(matches!(witness_upper_endpoint(-2.0, -5.0), Err(Error::Infeasible(_))));
        assert!(witness_upper_endpoint(2.0, -3.0).is_err());
    }

    #[test]
    fn witness_ray_is_fixed_by_the_lift() {
        let w = witness_upper_endpoint(0.0, -3.0).unwrap();
        let params = MapParams::from_ab(0.0, -3.0);
        let disp = lift_displacement(params, w.v.angle(), 3);
        assert!((disp - TAU).abs() <= 1e-9, "displacement {disp}");
        // multiplier along the ray matches the eigenvalue
        let mut u = w.v.scale(1.0 / w.v.modulus());
        for _ in 0..3 {
            u = crate::plane::apply(params, u).unwrap();
        }
        assert!((u.modulus() - w.k).abs() <= 1e-9);
    }

    #[test]
    fn solver_reference_solutions() {
        let cfg = Tolerances::default();
        for theta in [0.7, PI / 2.0, 2.0] {
            let s = solve_nu(0.0, 1, 4, theta, &cfg).unwrap();
            assert!(s.nu.abs() <= 1e-9, "nu {}", s.nu);
            assert!(s.residual <= 1e-9);

            let s = solve_nu(0.0, 1, 5, theta, &cfg).unwrap();
            assert!((s.nu - 2.0 * num::cos(2.0 * PI / 5.0)).abs() <= 1e-9);
        }
        let s = solve_nu(1.0, 2, 9, PI / 2.0, &cfg).unwrap();
        assert!(s.nu.abs() <= 1e-9);
        assert!(s.residual <= 1e-9);
    }

    #[test]
    fn solver_rejects_bad_fractions() {
        let cfg = Tolerances::default();
        assert!(solve_nu(0.0, 2, 4, 0.3, &cfg).is_err());
        assert!(solve_nu(0.0, 1, 2, 0.3, &cfg).is_err());
        assert!(solve_nu(0.0, 0, 5, 0.3, &cfg).is_err());
    }

    #[test]
    fn solver_defect_changes_sign_monotonically() {
        let cfg = Tolerances::default();
        let s = solve_nu(0.5, 1, 3, 1.0, &cfg).unwrap();
        let delta = 1e-3;
        let d = |nu: f64| {
            lift_displacement(MapParams::from_mu_nu(0.5, nu), 1.0, 3) - TAU
        };
        let mut prev = f64::INFINITY;
        for k in 0..=20 {
            let nu = s.nu - delta + 2.0 * delta * k as f64 / 20.0;
            let v = d(nu);
            assert!(v < prev, "defect not strictly decreasing at {nu}");
            prev = v;
        }
        assert!(d(s.nu - delta) > 0.0 && d(s.nu + delta) < 0.0);
    }
}
