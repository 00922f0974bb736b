//! Tolerance and budget configuration.

/// Tolerances and iteration budgets used by the classification, solver and
/// profile operations. `Tolerances::default()` carries the reference values;
/// individual fields can be overridden for throughput/precision trades (the
/// parameter-space scan lowers `ray_grid_density`, for example).
#[derive(Debug, Clone, PartialEq)]
pub struct Tolerances {
    /// Relative band around zero for the sign word: a coordinate `x` at a
    /// point of modulus `m` records the symbol `0` when `|x| ≤ zero_tol · m`.
    pub zero_tol: f64,
    /// Angular identity tolerance (radians) for periodic-ray matching and
    /// bisection refinement.
    pub angle_tol: f64,
    /// Multiplier band around 1 separating parabolic rays from hyperbolic
    /// pairs: `|λ − 1| ≤ mult_tol` is treated as neutral.
    pub mult_tol: f64,
    /// Relative tolerance for periodic-point and identity-map checks.
    pub finite_order_tol: f64,
    /// Hard overflow threshold; orbits are truncated when any coordinate
    /// modulus exceeds this.
    pub hard_divergence: f64,
    /// Soft threshold used by classifiers and divergence reports.
    pub soft_divergence: f64,
    /// Grid samples per unit of period for the periodic-ray zero scan
    /// (the scan uses `ray_grid_density · q` points on the circle).
    pub ray_grid_density: usize,
    /// Acceptance threshold (radians) for tangential (double) zeros of the
    /// q-step displacement; these occur exactly at parabolic rays.
    pub tangent_tol: f64,
    /// Sup-norm threshold (radians) under which the q-step displacement is
    /// treated as identically zero, the finite-order signature.
    pub ident_tol: f64,
    /// Bisection tolerance on ν for the prescribed-rotation solver.
    pub solver_tol: f64,
    /// Run the extended-precision (double-double) periodicity re-check when a
    /// candidate multiplier falls inside `10 · mult_tol` of 1.
    pub extended_recheck: bool,
    /// Acceptance threshold for the extended-precision re-check; bounds the
    /// coordinate defect of the recomputed return point.
    pub extended_accept: f64,
    /// Maximum admissible `|n|` for orbit iteration.
    pub max_iterate: u64,
    /// Maximum angular gap (radians) tolerated between consecutive samples
    /// of an invariant-circle profile.
    pub closure_threshold: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            zero_tol: 1e-12,
            angle_tol: 1e-10,
            mult_tol: 1e-8,
            finite_order_tol: 1e-9,
            hard_divergence: 1e300,
            soft_divergence: 1e8,
            ray_grid_density: 4096,
            tangent_tol: 1e-9,
            ident_tol: 1e-8,
            solver_tol: 1e-12,
            extended_recheck: true,
            extended_accept: 1e-12,
            max_iterate: 100_000_000,
            closure_threshold: core::f64::consts::TAU / 100.0,
        }
    }
}
