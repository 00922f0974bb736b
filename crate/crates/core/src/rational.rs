//! Rational-rotation dynamics: periodic-ray location, the trichotomy
//! classifier, periodic-map detection, multiplier relation checks, and
//! symbolic words.
//!
//! When the induced circle map has rotation number `p/q`, exactly one of
//! three situations occurs: a single periodic ray orbit with unit radial
//! multiplier (all other plane orbits diverge), a reciprocal pair of orbits
//! with multipliers `λ` and `1/λ` (no periodic plane orbits at all), or at
//! least three orbits, in which case the q-th iterate of the plane map is the
//! identity. The classifier here locates fixed points of the q-fold lift by
//! grid scanning plus bisection, handles the tangential (parabolic) zeros
//! that plain sign scanning would miss, recognizes the identically-zero
//! displacement signature of finite order, and confirms every finite-order
//! claim with an explicit identity check before asserting it.

use crate::circle::{
    self, detect_rational, lift_displacement, rotation_number, LiftedAngle, Rational,
    RotationEstimate,
};
use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::extended::Dd;
use crate::num;
use crate::plane::{self, MapParams, OrbitSample, PlaneVec, Sign, SignWord};
use crate::rng::SplitMix64;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

/// Fixed seed for the reproducible identity-confirmation sample.
const IDENTITY_CHECK_SEED: u64 = 0x0005_DEEC_E66D;

/// A ray direction fixed by the q-fold circle map, with the radial scaling
/// of the q-fold plane map along it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodicRay {
    pub angle: LiftedAngle,
    /// Circle period of the orbit.
    pub q: i64,
    /// Winding number of one orbit traversal.
    pub p: i64,
    /// Radial multiplier `λ = |T^q(v)| / |v|` for `v` on the ray; positive.
    pub multiplier: f64,
}

/// Classification of the dynamics at one parameter pair.
#[derive(Debug, Clone, PartialEq)]
pub enum DynamicsClass {
    /// The q-th iterate of the plane map is the identity.
    FiniteOrder { period: u64, rotation: Rational },
    /// One periodic ray orbit with unit multiplier; every other orbit
    /// diverges in modulus in both time directions.
    UniqueParabolic { rotation: Rational, ray: PeriodicRay },
    /// Two periodic ray orbits with reciprocal multipliers; the plane map has
    /// no periodic orbits.
    HyperbolicPair { rotation: Rational, expanding: PeriodicRay, contracting: PeriodicRay },
    /// No confirmed rational rotation number at this resolution.
    Irrational { estimate: RotationEstimate },
    /// Numerical ambiguity; never silently mapped to another class.
    Unresolved { reason: String },
}

impl DynamicsClass {
    /// Single-letter tag used by the scan output.
    pub fn tag(&self) -> char {
        match self {
            DynamicsClass::FiniteOrder { .. } => 'F',
            DynamicsClass::UniqueParabolic { .. } => 'P',
            DynamicsClass::HyperbolicPair { .. } => 'H',
            DynamicsClass::Irrational { .. } => 'I',
            DynamicsClass::Unresolved { .. } => 'U',
        }
    }
}

/// Whether the rays `(0, 1)` and `(0, −1)` share one periodic orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PeriodicTypeTag {
    /// Both axis rays lie on the same orbit; the common period is even.
    OneOrbit { period: u64 },
    /// The axis rays lie on separate orbits.
    TwoOrbits { period_up: u64, period_down: u64 },
}

/// Growth regime observed along one time direction of an orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthKind {
    Bounded,
    Linear,
    Exponential,
}

/// Moduli summary for one time direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectionReport {
    pub max_modulus: f64,
    pub min_modulus: f64,
    /// First step at which the modulus exceeded the soft threshold.
    pub exceeded_soft_at: Option<u64>,
    pub growth: GrowthKind,
}

/// Divergence confirmation for a generic orbit against a classification,
/// plus the exceptional over-ray orbits in the hyperbolic case.
#[derive(Debug, Clone, PartialEq)]
pub struct DivergenceReport {
    pub forward: DirectionReport,
    pub backward: DirectionReport,
    /// `(forward modulus, backward modulus)` after `n` steps from a unit
    /// vector on the expanding ray; hyperbolic case only.
    pub expanding_ray_moduli: Option<(f64, f64)>,
    /// Same for the contracting ray.
    pub contracting_ray_moduli: Option<(f64, f64)>,
    /// Whether every observation matches the claimed class; `issues` lists
    /// each mismatch when it does not.
    pub consistent: bool,
    pub issues: Vec<String>,
}

/// Which multiplier relation applied at the axis rays.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaCase {
    /// `λ > 0`: all four axis-ray relations hold.
    Positive,
    /// `λ = −1` with `Tⁿ(0,1) = (0,−1)` and `Tⁿ(−1,0) = (1,0)`.
    NegativeOneUp,
    /// `λ = −1` with `Tⁿ(0,−1) = (0,1)` and `Tⁿ(1,0) = (−1,0)`.
    NegativeOneDown,
}

/// Result of checking the axis-ray multiplier relations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaReport {
    pub lambda: f64,
    pub case: LambdaCase,
    /// Largest relative deviation across the checked identities.
    pub max_residual: f64,
    pub holds: bool,
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Radial multiplier of the q-fold map along the ray at `theta`.
fn ray_multiplier(params: MapParams, theta: f64, q: u64) -> f64 {
    let mut v = PlaneVec::unit(theta);
    for _ in 0..q {
        v = plane::step(params, v);
    }
    v.modulus()
}

/// Circular distance between two angles.
fn circ_dist(x: f64, y: f64) -> f64 {
    let d = num::wrap_angle(x - y);
    d.min(num::TAU - d)
}

/// Golden-section minimization of `|g|` on `[lo, hi]`; returns the abscissa.
fn minimize_abs<F: Fn(f64) -> f64>(g: &F, mut lo: f64, mut hi: f64, xtol: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = num::abs(g(x1));
    let mut f2 = num::abs(g(x2));
    while hi - lo > xtol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = num::abs(g(x1));
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = num::abs(g(x2));
        }
    }
    0.5 * (lo + hi)
}

/// Bisection on a bracketed sign change of `g`.
fn bisect_zero<F: Fn(f64) -> f64>(g: &F, mut lo: f64, mut hi: f64, glo: f64, xtol: f64) -> f64 {
    let mut sign_lo = glo > 0.0;
    while hi - lo > xtol {
        let mid = 0.5 * (lo + hi);
        let gm = g(mid);
        if gm == 0.0 {
            return mid;
        }
        if (gm > 0.0) == sign_lo {
            lo = mid;
            sign_lo = gm > 0.0;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Three starting angles on pairwise-distinct orbits for the finite-order
/// (identically zero displacement) case, where every ray is periodic.
fn finite_order_witness_angles(params: MapParams, q: u64, angle_tol: f64) -> [f64; 3] {
    let mut taken: Vec<f64> = Vec::with_capacity(3 * q as usize);
    let mut picks = [0.0f64; 3];
    let mut candidate = 0.0f64;
    for pick in &mut picks {
        // shift until the candidate clears every angle already claimed
        let mut guard = 0;
        while taken.iter().any(|&t| circ_dist(candidate, t) <= 100.0 * angle_tol) {
            candidate = num::wrap_angle(candidate + 0.37);
            guard += 1;
            if guard > 64 {
                break;
            }
        }
        *pick = candidate;
        let mut t = candidate;
        for _ in 0..q {
            taken.push(t);
            t = circle::circle_apply(params, t);
        }
        candidate = num::wrap_angle(candidate + 0.61);
    }
    picks
}

/// All periodic ray orbits of rotation number `p/q`, one representative ray
/// per orbit, sorted by angle.
///
/// Fixed points of `θ ↦ S̃^q(θ) − 2πp` are located by sign-change scanning on
/// a grid of `ray_grid_density · q` samples plus bisection, together with two
/// detection channels the plain scan cannot see:
///
/// * tangential (double) zeros, where the displacement touches zero without
///   crossing — exactly the parabolic-ray situation — found by refining local
///   minima of the absolute displacement;
/// * the identically-zero displacement signature of a finite-order map, in
///   which case three witness orbits on pairwise distinct rays are returned.
///
/// At rotation number 0 an equal-slope (linear) map fixes both rays of an
/// eigenline; such antipodal copies carry equal multipliers and are folded
/// into one orbit, matching the dynamical count. An empty list means the
/// rotation number of these parameters is not `p/q`.
pub fn find_periodic_rays(
    params: MapParams,
    p: i64,
    q: i64,
    tol: &Tolerances,
) -> Result<Vec<PeriodicRay>> {
    if q < 1 {
        return Err(Error::Precondition("period q must be positive"));
    }
    if gcd(p, q) != 1 {
        return Err(Error::Precondition("p/q must be in lowest terms"));
    }
    if p < 0 || 2 * p > q {
        return Err(Error::Precondition("rotation number must lie in [0, 1/2]"));
    }
    let qu = q as u64;
    let target = num::TAU * p as f64;
    let g = |theta: f64| lift_displacement(params, theta, qu) - target;

    let m = tol.ray_grid_density.max(8) * q as usize;
    let h = num::TAU / m as f64;
    let mut values = Vec::with_capacity(m);
    let mut sup = 0.0f64;
    for i in 0..m {
        let gi = g(i as f64 * h);
        sup = sup.max(num::abs(gi));
        values.push(gi);
    }

    // identically zero displacement: the map is (numerically) of finite
    // order and every ray is periodic
    if sup <= tol.ident_tol {
        let picks = finite_order_witness_angles(params, qu, tol.angle_tol);
        return Ok(picks
            .iter()
            .map(|&theta| PeriodicRay {
                angle: LiftedAngle(theta),
                q,
                p,
                multiplier: ray_multiplier(params, theta, qu),
            })
            .collect());
    }

    let mut zeros: Vec<f64> = Vec::new();
    for i in 0..m {
        let a = values[i];
        let b = values[(i + 1) % m];
        let lo = i as f64 * h;
        if a == 0.0 {
            zeros.push(lo);
        } else if a * b < 0.0 {
            zeros.push(num::wrap_angle(bisect_zero(&g, lo, lo + h, a, tol.angle_tol)));
        }
    }

    // tangential zeros: local minima of |g| below the window that do not
    // already sit next to a crossing
    let window = 1e-3f64;
    for i in 0..m {
        let prev = values[(i + m - 1) % m];
        let cur = values[i];
        let next = values[(i + 1) % m];
        if cur == 0.0 || prev * cur < 0.0 || cur * next < 0.0 {
            continue;
        }
        if num::abs(cur) <= num::abs(prev)
            && num::abs(cur) < num::abs(next)
            && num::abs(cur) < window
        {
            let theta = minimize_abs(&g, i as f64 * h - h, i as f64 * h + h, tol.angle_tol);
            if num::abs(g(theta)) <= tol.tangent_tol {
                zeros.push(num::wrap_angle(theta));
            }
        }
    }

    if zeros.is_empty() {
        return Ok(Vec::new());
    }

    zeros.sort_unstable_by(f64::total_cmp);
    let merge_tol = 4.0 * tol.angle_tol;
    let mut merged: Vec<f64> = Vec::with_capacity(zeros.len());
    for &z in &zeros {
        if merged.last().is_none_or(|&last| z - last > merge_tol) {
            merged.push(z);
        }
    }
    if merged.len() > 1 && merged[0] + num::TAU - merged[merged.len() - 1] <= merge_tol {
        merged.pop();
    }

    // group into orbits by following the circle dynamics to the nearest zero
    let n_zeros = merged.len();
    let mut visited = alloc::vec![false; n_zeros];
    let mut orbits: Vec<(PeriodicRay, Vec<f64>)> = Vec::new();
    for i in 0..n_zeros {
        if visited[i] {
            continue;
        }
        visited[i] = true;
        let start = merged[i];
        let mut members = Vec::with_capacity(q as usize);
        members.push(start);
        let mut t = start;
        for _ in 1..q {
            t = circle::circle_apply(params, t);
            members.push(t);
            let mut best = usize::MAX;
            let mut best_d = f64::INFINITY;
            for (j, &z) in merged.iter().enumerate() {
                let d = circ_dist(t, z);
                if d < best_d {
                    best_d = d;
                    best = j;
                }
            }
            if best != usize::MAX && best_d <= 1e-3 {
                visited[best] = true;
            }
        }
        let ray = PeriodicRay {
            angle: LiftedAngle(start),
            q,
            p,
            multiplier: ray_multiplier(params, start, qu),
        };
        orbits.push((ray, members));
    }

    // fold antipodal copies with equal multipliers
    let mut keep: Vec<PeriodicRay> = Vec::with_capacity(orbits.len());
    let mut folded = alloc::vec![false; orbits.len()];
    for i in 0..orbits.len() {
        if folded[i] {
            continue;
        }
        for j in (i + 1)..orbits.len() {
            if folded[j] {
                continue;
            }
            let (ri, mi) = (&orbits[i].0, &orbits[i].1);
            let rj = &orbits[j].0;
            let mult_close =
                num::abs(ri.multiplier - rj.multiplier) <= 1e-6 * ri.multiplier.max(1.0);
            let antipodal = mi.iter().any(|&a| circ_dist(a + num::PI, rj.angle.0) <= 1e-6);
            if mult_close && antipodal {
                folded[j] = true;
            }
        }
        keep.push(orbits[i].0);
    }
    keep.sort_unstable_by(|x, y| x.angle.0.total_cmp(&y.angle.0));
    Ok(keep)
}

/// Extended-precision re-check of a periodic-return candidate: iterates the
/// orbit of `(0, 1)` in double-double arithmetic and bounds the coordinate
/// defect of the return point.
fn extended_return_defect(params: MapParams, n: u64) -> f64 {
    let a = Dd::from_f64(params.a);
    let b = Dd::from_f64(params.b);
    let mut x = Dd::ZERO;
    let mut y = Dd::from_f64(1.0);
    for _ in 0..n {
        let s = if x.is_sign_negative() { b } else { a };
        let nx = s * x - y;
        y = x;
        x = nx;
    }
    let dx = x.abs().to_f64();
    let dy = (y - Dd::from_f64(1.0)).abs().to_f64();
    dx.max(dy)
}

/// Identity confirmation on a reproducible sample: `Tⁿ` must fix 100 points
/// to relative tolerance `tol`.
fn confirm_identity(params: MapParams, n: u64, tol: f64) -> bool {
    let mut rng = SplitMix64::new(IDENTITY_CHECK_SEED);
    let mut checked = 0;
    while checked < 100 {
        let v = PlaneVec::new(rng.next_in(-2.0, 2.0), rng.next_in(-2.0, 2.0));
        if v.modulus() < 0.1 {
            continue;
        }
        checked += 1;
        let mut w = v;
        for _ in 0..n {
            w = plane::step(params, w);
            if !w.is_finite() {
                return false;
            }
        }
        if num::hypot(w.x - v.x, w.y - v.y) > tol * v.modulus() {
            return false;
        }
    }
    true
}

/// Smallest `n ≤ p_max` for which the map is of finite order with `Tⁿ = I`,
/// detected through the periodic return of `(0, 1)` and confirmed by an
/// identity check on 100 seeded random points.
///
/// Ray and modulus are compared separately: the return direction must match
/// `(0, 1)` within `angle_tol` while the radial multiplier must be 1 within
/// `tol`. A candidate whose multiplier lands in the ambiguous band up to
/// `10·mult_tol` is re-examined in double-double arithmetic, which removes
/// the f64 iteration noise before the verdict.
pub fn is_finite_order(params: MapParams, p_max: u64, tol: f64, cfg: &Tolerances) -> Option<u64> {
    let mut v = PlaneVec::new(0.0, 1.0);
    for n in 1..=p_max {
        v = plane::step(params, v);
        if !v.is_finite()
            || num::abs(v.x) > cfg.hard_divergence
            || num::abs(v.y) > cfg.hard_divergence
        {
            return None;
        }
        let m = v.modulus();
        let on_ray = v.y > 0.0 && num::abs(v.x) <= cfg.angle_tol * m;
        if !on_ray {
            continue;
        }
        let defect = num::abs(v.y - 1.0);
        let mut periodic = defect <= tol;
        if !periodic && defect < 10.0 * cfg.mult_tol && cfg.extended_recheck {
            periodic = extended_return_defect(params, n) <= cfg.extended_accept;
        }
        if periodic && confirm_identity(params, n, cfg.finite_order_tol.max(tol)) {
            return Some(n);
        }
    }
    None
}

/// Classify the dynamics from a fresh rotation-number estimate over `n`
/// iterates.
pub fn classify(params: MapParams, q_max: i64, n: u64, cfg: &Tolerances) -> DynamicsClass {
    let est = rotation_number(params, 0.0, n);
    classify_from_estimate(params, est, q_max, cfg)
}

/// Classify the dynamics given an existing rotation-number estimate.
///
/// A rational candidate is acted on only after `find_periodic_rays` confirms
/// it; the orbit count then selects the branch of the trichotomy, with
/// finite order additionally confirmed by the identity check. Anything that
/// fails coherence lands in `Unresolved` rather than being forced into a
/// class.
pub fn classify_from_estimate(
    params: MapParams,
    est: RotationEstimate,
    q_max: i64,
    cfg: &Tolerances,
) -> DynamicsClass {
    let mut est = est;
    let Some(r) = detect_rational(&est, q_max) else {
        return DynamicsClass::Irrational { estimate: est };
    };
    est.rational_candidate = Some(r);
    let rays = match find_periodic_rays(params, r.p, r.q, cfg) {
        Ok(rays) => rays,
        Err(e) => return DynamicsClass::Unresolved { reason: format!("ray scan failed: {e}") },
    };
    match rays.len() {
        0 => DynamicsClass::Irrational { estimate: est },
        1 => {
            let ray = rays[0];
            if num::abs(ray.multiplier - 1.0) <= cfg.mult_tol {
                // single neutral orbit: finite order only if the identity
                // check passes, otherwise this is the genuine parabolic case
                if let Some(period) =
                    is_finite_order(params, 2 * r.q as u64, cfg.finite_order_tol, cfg)
                {
                    DynamicsClass::FiniteOrder { period, rotation: r }
                } else {
                    DynamicsClass::UniqueParabolic { rotation: r, ray }
                }
            } else {
                DynamicsClass::Unresolved {
                    reason: format!(
                        "single periodic orbit with non-unit multiplier {}",
                        ray.multiplier
                    ),
                }
            }
        }
        2 => {
            let (lo, hi) = if rays[0].multiplier <= rays[1].multiplier {
                (rays[0], rays[1])
            } else {
                (rays[1], rays[0])
            };
            let reciprocal = num::abs(hi.multiplier * lo.multiplier - 1.0) <= 1e-6;
            if hi.multiplier > 1.0 + cfg.mult_tol
                && lo.multiplier < 1.0 - cfg.mult_tol
                && reciprocal
            {
                DynamicsClass::HyperbolicPair { rotation: r, expanding: hi, contracting: lo }
            } else {
                DynamicsClass::Unresolved {
                    reason: format!(
                        "two periodic orbits with multipliers {} and {} violate the reciprocal-pair structure",
                        lo.multiplier, hi.multiplier
                    ),
                }
            }
        }
        _ => {
            if let Some(period) = is_finite_order(params, 2 * r.q as u64, cfg.finite_order_tol, cfg)
            {
                DynamicsClass::FiniteOrder { period, rotation: r }
            } else {
                DynamicsClass::Unresolved {
                    reason: format!(
                        "{} periodic orbits found but the identity check failed",
                        rays.len()
                    ),
                }
            }
        }
    }
}

fn direction_report(
    params: MapParams,
    v: PlaneVec,
    n: u64,
    backward: bool,
    soft: f64,
) -> DirectionReport {
    let mut w = v;
    let mut max_m = v.modulus();
    let mut min_m = max_m;
    let mut exceeded = None;
    let mut mid_m = max_m;
    let half = n / 2;
    for k in 1..=n {
        w = if backward { plane::step_back(params, w) } else { plane::step(params, w) };
        if !w.is_finite() {
            return DirectionReport {
                max_modulus: f64::INFINITY,
                min_modulus: min_m,
                exceeded_soft_at: exceeded.or(Some(k)),
                growth: GrowthKind::Exponential,
            };
        }
        let m = w.modulus();
        max_m = max_m.max(m);
        min_m = min_m.min(m);
        if exceeded.is_none() && m > soft {
            exceeded = Some(k);
        }
        if k == half {
            mid_m = m;
        }
    }
    let final_m = w.modulus();
    let start_m = v.modulus().max(f64::MIN_POSITIVE);
    let growth = if max_m <= 10.0 * start_m && min_m >= 0.1 * start_m {
        GrowthKind::Bounded
    } else if mid_m > 0.0 && final_m / mid_m <= 3.0 {
        // modulus ∝ step count gives a ratio of 2 between steps n/2 and n
        GrowthKind::Linear
    } else {
        GrowthKind::Exponential
    };
    DirectionReport { max_modulus: max_m, min_modulus: min_m, exceeded_soft_at: exceeded, growth }
}

fn ray_endpoint_moduli(params: MapParams, theta: f64, n: u64) -> (f64, f64) {
    let mut f = PlaneVec::unit(theta);
    let mut b = PlaneVec::unit(theta);
    let mut fm = 1.0f64;
    let mut bm = 1.0f64;
    for _ in 0..n {
        f = plane::step(params, f);
        b = plane::step_back(params, b);
        fm = if f.is_finite() { f.modulus() } else { f64::INFINITY };
        bm = if b.is_finite() { b.modulus() } else { f64::INFINITY };
        if !f.is_finite() && !b.is_finite() {
            break;
        }
    }
    (fm, bm)
}

/// Confirm the divergence structure demanded by a parabolic or hyperbolic
/// classification on a generic start point `v`.
///
/// A generic orbit must escape in both time directions (linearly in the
/// parabolic case); over the hyperbolic rays the exceptional orbits must
/// contract toward 0 in exactly one direction and diverge in the other.
/// Every violated expectation is recorded in `issues` and clears
/// `consistent` — the check never silently passes.
pub fn orbit_divergence_check(
    params: MapParams,
    cls: &DynamicsClass,
    v: PlaneVec,
    n: u64,
    cfg: &Tolerances,
) -> Result<DivergenceReport> {
    let n = n.max(4);
    let rays = match cls {
        DynamicsClass::UniqueParabolic { .. } => None,
        DynamicsClass::HyperbolicPair { expanding, contracting, .. } => {
            Some((*expanding, *contracting))
        }
        _ => {
            return Err(Error::Precondition(
                "divergence check applies to the parabolic and hyperbolic classes",
            ))
        }
    };
    if v.modulus() == 0.0 {
        return Err(Error::Precondition("start point must be nonzero"));
    }
    if let Some((e, c)) = &rays {
        for ray in [e, c] {
            let mut t = num::wrap_angle(ray.angle.0);
            for _ in 0..ray.q {
                if circ_dist(v.angle(), t) <= cfg.angle_tol {
                    return Err(Error::Precondition("start point lies on a periodic ray"));
                }
                t = circle::circle_apply(params, t);
            }
        }
    }

    let soft = cfg.soft_divergence;
    let forward = direction_report(params, v, n, false, soft);
    let backward = direction_report(params, v, n, true, soft);
    let mut issues: Vec<String> = Vec::new();

    let escapes =
        |d: &DirectionReport| d.exceeded_soft_at.is_some() || d.growth != GrowthKind::Bounded;
    if !escapes(&forward) {
        issues.push(String::from("generic orbit stayed bounded forward"));
    }
    if !escapes(&backward) {
        issues.push(String::from("generic orbit stayed bounded backward"));
    }

    let mut expanding_ray_moduli = None;
    let mut contracting_ray_moduli = None;
    if let Some((expanding, contracting)) = rays {
        let em = ray_endpoint_moduli(params, expanding.angle.0, n);
        let cm = ray_endpoint_moduli(params, contracting.angle.0, n);
        if !(em.0 > 1e3 && em.1 < 1e-3) {
            issues.push(format!(
                "expanding-ray moduli ({}, {}) do not split divergent/contracting",
                em.0, em.1
            ));
        }
        if !(cm.0 < 1e-3 && cm.1 > 1e3) {
            issues.push(format!(
                "contracting-ray moduli ({}, {}) do not split contracting/divergent",
                cm.0, cm.1
            ));
        }
        expanding_ray_moduli = Some(em);
        contracting_ray_moduli = Some(cm);
    } else {
        // parabolic: escape is linear in the step count
        if forward.growth == GrowthKind::Exponential {
            issues.push(String::from("parabolic forward growth looks exponential"));
        }
        if backward.growth == GrowthKind::Exponential {
            issues.push(String::from("parabolic backward growth looks exponential"));
        }
    }

    Ok(DivergenceReport {
        forward,
        backward,
        expanding_ray_moduli,
        contracting_ray_moduli,
        consistent: issues.is_empty(),
        issues,
    })
}

fn iterate_n(params: MapParams, v: PlaneVec, n: u64) -> PlaneVec {
    let mut w = v;
    for _ in 0..n {
        w = plane::step(params, w);
    }
    w
}

/// Check the multiplier relations at the axis rays after `n` steps.
///
/// Requires the n-fold circle map to send `(0, 1)` or `(0, −1)` back to the
/// vertical axis within `angle_tol`. With multiplier `λ > 0` all four
/// identities `Tⁿ(0,1) = (0,λ)`, `Tⁿ(0,−1) = (0,−λ⁻¹)`, `Tⁿ(−1,0) = (−λ,0)`
/// and `Tⁿ(1,0) = (λ⁻¹,0)` are verified; with `λ = −1` the applicable pair
/// of exchange identities is.
pub fn lambda_relations_check(
    params: MapParams,
    n: u64,
    tol: f64,
    cfg: &Tolerances,
) -> Result<LambdaReport> {
    if n == 0 {
        return Err(Error::Precondition("n must be positive"));
    }
    let up = iterate_n(params, PlaneVec::new(0.0, 1.0), n);
    let down = iterate_n(params, PlaneVec::new(0.0, -1.0), n);
    if !up.is_finite() || !down.is_finite() {
        return Err(Error::Precondition("axis orbit overflowed before n steps"));
    }
    let on_axis = |w: PlaneVec| num::abs(w.x) <= cfg.angle_tol * w.modulus().max(1e-300);
    let up_axis = on_axis(up);
    let down_axis = on_axis(down);
    if !up_axis && !down_axis {
        return Err(Error::Precondition(
            "neither axis ray returns to the vertical axis after n steps",
        ));
    }

    let rel = |w: PlaneVec, target: PlaneVec| -> f64 {
        num::hypot(w.x - target.x, w.y - target.y) / target.modulus().max(1e-300)
    };

    if up_axis && up.y > 0.0 {
        let lambda = up.y;
        let left = iterate_n(params, PlaneVec::new(-1.0, 0.0), n);
        let right = iterate_n(params, PlaneVec::new(1.0, 0.0), n);
        let r = rel(down, PlaneVec::new(0.0, -1.0 / lambda))
            .max(rel(left, PlaneVec::new(-lambda, 0.0)))
            .max(rel(right, PlaneVec::new(1.0 / lambda, 0.0)));
        return Ok(LambdaReport {
            lambda,
            case: LambdaCase::Positive,
            max_residual: r,
            holds: r <= tol,
        });
    }
    if down_axis && down.y < 0.0 {
        let lambda = -1.0 / down.y;
        let left = iterate_n(params, PlaneVec::new(-1.0, 0.0), n);
        let right = iterate_n(params, PlaneVec::new(1.0, 0.0), n);
        let r = rel(up, PlaneVec::new(0.0, lambda))
            .max(rel(left, PlaneVec::new(-lambda, 0.0)))
            .max(rel(right, PlaneVec::new(1.0 / lambda, 0.0)));
        return Ok(LambdaReport {
            lambda,
            case: LambdaCase::Positive,
            max_residual: r,
            holds: r <= tol,
        });
    }
    if up_axis && up.y < 0.0 {
        let left = iterate_n(params, PlaneVec::new(-1.0, 0.0), n);
        let r = rel(up, PlaneVec::new(0.0, -1.0)).max(rel(left, PlaneVec::new(1.0, 0.0)));
        return Ok(LambdaReport {
            lambda: -1.0,
            case: LambdaCase::NegativeOneUp,
            max_residual: r,
            holds: r <= tol,
        });
    }
    // remaining case: (0,−1) returns to the axis pointing up
    let right = iterate_n(params, PlaneVec::new(1.0, 0.0), n);
    let r = rel(down, PlaneVec::new(0.0, 1.0)).max(rel(right, PlaneVec::new(-1.0, 0.0)));
    Ok(LambdaReport {
        lambda: -1.0,
        case: LambdaCase::NegativeOneDown,
        max_residual: r,
        holds: r <= tol,
    })
}

/// Whether `(0,1)` and `(0,−1)` share one periodic orbit (type i) or occupy
/// two (type ii). Requires the map to be of finite order within `p_max`.
pub fn periodic_type(params: MapParams, p_max: u64, cfg: &Tolerances) -> Result<PeriodicTypeTag> {
    let Some(period) = is_finite_order(params, p_max, cfg.finite_order_tol, cfg) else {
        return Err(Error::Precondition("map is not of finite order within p_max"));
    };
    let tol = cfg.finite_order_tol;
    let near = |w: PlaneVec, t: PlaneVec| num::hypot(w.x - t.x, w.y - t.y) <= tol;

    let mut w = PlaneVec::new(0.0, 1.0);
    for _ in 1..=period {
        w = plane::step(params, w);
        if near(w, PlaneVec::new(0.0, -1.0)) {
            return Ok(PeriodicTypeTag::OneOrbit { period });
        }
    }

    let point_period = |start: PlaneVec| -> u64 {
        let mut w = start;
        for k in 1..=period {
            w = plane::step(params, w);
            if near(w, start) {
                return k;
            }
        }
        period
    };
    Ok(PeriodicTypeTag::TwoOrbits {
        period_up: point_period(PlaneVec::new(0.0, 1.0)),
        period_down: point_period(PlaneVec::new(0.0, -1.0)),
    })
}

/// Sign itinerary of the x-coordinates along an orbit segment, one symbol
/// per step.
pub fn symbolic_word(orbit: &OrbitSample, zero_tol: f64) -> SignWord {
    let steps = orbit.steps();
    let mut w = Vec::with_capacity(steps);
    for p in &orbit.points[..steps] {
        w.push(Sign::of(p.x, p.modulus(), zero_tol));
    }
    SignWord(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::iterate;

    fn cfg() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn parabolic_shear_has_one_folded_ray() {
        let p = MapParams::from_ab(2.0, 2.0);
        let rays = find_periodic_rays(p, 0, 1, &cfg()).unwrap();
        assert_eq!(rays.len(), 1, "rays: {rays:?}");
        assert!((rays[0].angle.0 - num::PI / 4.0).abs() <= 1e-8);
        assert!((rays[0].multiplier - 1.0).abs() <= 1e-8);
    }

    #[test]
    fn hyperbolic_linear_map_has_two_rays() {
        let p = MapParams::from_ab(3.0, 3.0);
        let rays = find_periodic_rays(p, 0, 1, &cfg()).unwrap();
        assert_eq!(rays.len(), 2, "rays: {rays:?}");
        let l1 = (3.0 + 5.0f64.sqrt()) / 2.0;
        let l2 = (3.0 - 5.0f64.sqrt()) / 2.0;
        let mut ms = [rays[0].multiplier, rays[1].multiplier];
        ms.sort_by(f64::total_cmp);
        assert!((ms[0] - l2).abs() <= 1e-9);
        assert!((ms[1] - l1).abs() <= 1e-9);
    }

    #[test]
    fn brown_map_ray_scan_sees_finite_order() {
        let p = MapParams::from_mu_nu(1.0, 0.0);
        let rays = find_periodic_rays(p, 2, 9, &cfg()).unwrap();
        assert!(rays.len() >= 3);
        for r in &rays {
            assert!((r.multiplier - 1.0).abs() <= 1e-9);
        }
    }

    #[test]
    fn ray_scan_rejects_wrong_rotation() {
        // rotation number of this map is 2/9, not 1/4
        let p = MapParams::from_mu_nu(1.0, 0.0);
        let rays = find_periodic_rays(p, 1, 4, &cfg()).unwrap();
        assert!(rays.is_empty());
    }

    #[test]
    fn ray_scan_precondition_checks() {
        let p = MapParams::from_ab(1.0, -1.0);
        assert!(find_periodic_rays(p, 2, 4, &cfg()).is_err());
        assert!(find_periodic_rays(p, 3, 4, &cfg()).is_err());
        assert!(find_periodic_rays(p, 1, 0, &cfg()).is_err());
    }

    #[test]
    fn finite_order_examples() {
        let c = cfg();
        assert_eq!(is_finite_order(MapParams::from_mu_nu(1.0, 0.0), 20, 1e-9, &c), Some(9));
        assert_eq!(is_finite_order(MapParams::from_ab(0.0, 0.0), 10, 1e-9, &c), Some(4));
        assert_eq!(is_finite_order(MapParams::from_ab(3.0, 3.0), 1000, 1e-9, &c), None);
    }

    #[test]
    fn classify_the_three_reference_cases() {
        let c = cfg();
        match classify(MapParams::from_mu_nu(1.0, 0.0), 64, 100_000, &c) {
            DynamicsClass::FiniteOrder { period, rotation } => {
                assert_eq!(period, 9);
                assert_eq!(rotation, Rational { p: 2, q: 9 });
            }
            other => panic!("expected finite order, got {other:?}"),
        }
        match classify(MapParams::from_ab(3.0, 3.0), 64, 100_000, &c) {
            DynamicsClass::HyperbolicPair { rotation, expanding, contracting } => {
                assert_eq!(rotation, Rational { p: 0, q: 1 });
                assert!((expanding.multiplier * contracting.multiplier - 1.0).abs() <= 1e-9);
            }
            other => panic!("expected hyperbolic pair, got {other:?}"),
        }
        match classify(MapParams::from_ab(2.0, 2.0), 64, 100_000, &c) {
            DynamicsClass::UniqueParabolic { rotation, ray } => {
                assert_eq!(rotation, Rational { p: 0, q: 1 });
                assert!((ray.multiplier - 1.0).abs() <= 1e-8);
            }
            other => panic!("expected parabolic, got {other:?}"),
        }
    }

    #[test]
    fn lambda_relations_for_period_nine() {
        let p = MapParams::from_mu_nu(1.0, 0.0);
        let rep = lambda_relations_check(p, 9, 1e-9, &cfg()).unwrap();
        assert_eq!(rep.case, LambdaCase::Positive);
        assert!((rep.lambda - 1.0).abs() <= 1e-12);
        assert!(rep.holds);
    }

    #[test]
    fn lambda_relations_for_linear_period_five() {
        let theta = 2.0 * num::PI / 5.0;
        let p = MapParams::from_ab(2.0 * num::cos(theta), 2.0 * num::cos(theta));
        let rep = lambda_relations_check(p, 5, 1e-9, &cfg()).unwrap();
        assert!((rep.lambda - 1.0).abs() <= 1e-9);
        assert!(rep.holds);
    }

    #[test]
    fn lambda_relations_precondition_fails_off_axis() {
        let p = MapParams::from_ab(3.0, 3.0);
        assert!(matches!(
            lambda_relations_check(p, 1, 1e-9, &cfg()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn periodic_type_of_quarter_rotation_is_one_orbit() {
        let p = MapParams::from_ab(0.0, 0.0);
        assert_eq!(periodic_type(p, 10, &cfg()).unwrap(), PeriodicTypeTag::OneOrbit { period: 4 });
    }

    #[test]
    fn odd_period_forces_two_orbits() {
        let p = MapParams::from_ab(-1.0, -1.0);
        assert_eq!(
            periodic_type(p, 10, &cfg()).unwrap(),
            PeriodicTypeTag::TwoOrbits { period_up: 3, period_down: 3 }
        );
    }

    #[test]
    fn periodic_type_requires_finite_order() {
        let p = MapParams::from_ab(3.0, 3.0);
        assert!(matches!(periodic_type(p, 50, &cfg()), Err(Error::Precondition(_))));
    }

    #[test]
    fn symbolic_word_examples() {
        let c = cfg();
        let p = MapParams::from_mu_nu(1.0, 0.0);
        let orbit = iterate(p, PlaneVec::new(1.0, 0.0), 9, &c).unwrap();
        let w = symbolic_word(&orbit, c.zero_tol);
        assert_eq!(alloc::format!("{w}"), "++0-+++-0");

        let p = MapParams::from_ab(3.0, 0.0);
        let orbit = iterate(p, PlaneVec::new(1.0, 1.0), 3, &c).unwrap();
        let w = symbolic_word(&orbit, c.zero_tol);
        assert!(w.0.iter().all(|s| *s == Sign::Pos));

        let orbit = iterate(p, PlaneVec::new(0.0, 1.0), 1, &c).unwrap();
        let w = symbolic_word(&orbit, c.zero_tol);
        assert_eq!(w.0[0], Sign::Zero);
    }

    #[test]
    fn divergence_check_on_hyperbolic_pair() {
        let c = cfg();
        let p = MapParams::from_ab(3.0, 3.0);
        let cls = classify(p, 64, 10_000, &c);
        let rep = orbit_divergence_check(p, &cls, PlaneVec::new(1.0, 0.0), 120, &c).unwrap();
        assert!(rep.consistent, "issues: {:?}", rep.issues);
        assert!(rep.forward.exceeded_soft_at.is_some());
        assert!(rep.backward.exceeded_soft_at.is_some());
        let (ef, eb) = rep.expanding_ray_moduli.unwrap();
        assert!(ef > 1e6 && eb < 1e-6);
        let (cf, cb) = rep.contracting_ray_moduli.unwrap();
        assert!(cf < 1e-6 && cb > 1e6);
    }

    #[test]
    fn divergence_check_on_parabolic_shear_is_linear() {
        let c = cfg();
        let p = MapParams::from_ab(2.0, 2.0);
        let cls = classify(p, 64, 10_000, &c);
        let rep = orbit_divergence_check(p, &cls, PlaneVec::new(1.0, 0.0), 4000, &c).unwrap();
        assert!(rep.consistent, "issues: {:?}", rep.issues);
        assert_eq!(rep.forward.growth, GrowthKind::Linear);
        assert_eq!(rep.backward.growth, GrowthKind::Linear);
    }

    #[test]
    fn divergence_check_rejects_wrong_class() {
        let c = cfg();
        let p = MapParams::from_ab(0.0, 0.0);
        let cls = classify(p, 64, 10_000, &c);
        assert!(matches!(
            orbit_divergence_check(p, &cls, PlaneVec::new(1.0, 0.0), 100, &c),
            Err(Error::Precondition(_))
        ));
    }
}
