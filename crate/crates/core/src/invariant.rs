//! Boundedness probing and numerical invariant-circle construction.
//!
//! A scale-invariant homeomorphism with a forward orbit whose modulus stays
//! pinched between `1/C` and `C` has an invariant circle, and any invariant
//! circle here is symmetric under the swap `(x, y) ↦ (y, x)`. The profile
//! builder exploits the first fact directly: when an invariant circle exists
//! the orbit lies on it and (for irrational rotation) is angularly dense, so
//! sorting the orbit by polar angle recovers the circle as a radial profile.
//! The swap symmetry and an exact ellipse oracle for the equal-slope linear
//! case provide independent checks of the construction.

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::num;
use crate::plane::{self, MapParams, PlaneVec};
use alloc::vec::Vec;

/// Outcome of probing an orbit for pinched moduli.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundednessReport {
    /// All probed moduli stayed inside `[|v|/C, |v|·C]`.
    Bounded { min_modulus: f64, max_modulus: f64 },
    /// The modulus exceeded `|v|·C` at the recorded step.
    Diverged { at_step: u64 },
    /// The modulus fell below `|v|/C` at the recorded step.
    Contracted { at_step: u64 },
    /// The probe could not run (degenerate input).
    Inconclusive,
}

/// Angle-sorted radial profile of a candidate invariant circle.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantCircleProfile {
    /// `(angle, radius)` samples; angles strictly increasing in `[0, 2π)`,
    /// radii positive.
    pub samples: Vec<(f64, f64)>,
    /// Largest interpolated radial mismatch against the profile's own
    /// reflection across the line `x = y`.
    pub symmetry_defect: f64,
    /// Largest angular gap between consecutive samples (wrap included);
    /// small gaps mean trustworthy interpolation.
    pub closure_defect: f64,
}

impl InvariantCircleProfile {
    /// Piecewise-linear interpolation of the radius at `angle`, wrapping
    /// around the circle.
    pub fn radius_at(&self, angle: f64) -> f64 {
        let t = num::wrap_angle(angle);
        let n = self.samples.len();
        debug_assert!(n >= 2);
        // index of the first sample with angle > t
        let idx = self.samples.partition_point(|&(a, _)| a <= t);
        let (a0, r0, a1, r1) = if idx == 0 || idx == n {
            // between the last and first samples, across the wrap
            let (al, rl) = self.samples[n - 1];
            let (af, rf) = self.samples[0];
            (al, rl, af + num::TAU, rf)
        } else {
            let (a0, r0) = self.samples[idx - 1];
            let (a1, r1) = self.samples[idx];
            (a0, r0, a1, r1)
        };
        let t = if t < a0 { t + num::TAU } else { t };
        let span = a1 - a0;
        if span <= 0.0 {
            return r0;
        }
        let w = (t - a0) / span;
        r0 + w * (r1 - r0)
    }

    /// Scale every radius by `t > 0`.
    pub fn scaled(&self, t: f64) -> InvariantCircleProfile {
        InvariantCircleProfile {
            samples: self.samples.iter().map(|&(a, r)| (a, t * r)).collect(),
            symmetry_defect: t * self.symmetry_defect,
            closure_defect: self.closure_defect,
        }
    }
}

/// Iterate `n` steps from `v` and report whether the modulus stayed inside
/// the window `[|v|/C, |v|·C]`.
pub fn boundedness_probe(params: MapParams, v: PlaneVec, n: u64, c: f64) -> BoundednessReport {
    let start = v.modulus();
    if !v.is_finite() || start == 0.0 || !(c > 1.0) || n == 0 {
        return BoundednessReport::Inconclusive;
    }
    let upper = start * c;
    let lower = start / c;
    let mut w = v;
    let mut min_m = start;
    let mut max_m = start;
    for k in 1..=n {
        w = plane::step(params, w);
        if !w.is_finite() {
            return BoundednessReport::Diverged { at_step: k };
        }
        let m = w.modulus();
        if m > upper {
            return BoundednessReport::Diverged { at_step: k };
        }
        if m < lower {
            return BoundednessReport::Contracted { at_step: k };
        }
        min_m = min_m.min(m);
        max_m = max_m.max(m);
    }
    BoundednessReport::Bounded { min_modulus: min_m, max_modulus: max_m }
}

/// Symmetry defect of a profile: the largest radial mismatch between the
/// profile and its reflection across `x = y` (`φ ↦ π/2 − φ`), evaluated by
/// interpolation at every sample angle.
pub fn symmetry_defect(profile: &InvariantCircleProfile) -> f64 {
    let mut worst = 0.0f64;
    for &(angle, radius) in &profile.samples {
        let mirrored = num::wrap_angle(num::PI / 2.0 - angle);
        let rm = profile.radius_at(mirrored);
        worst = worst.max(num::abs(radius - rm));
    }
    worst
}

fn assemble_profile(
    mut polar: Vec<(f64, f64)>,
    closure_threshold: f64,
) -> Result<InvariantCircleProfile> {
    polar.sort_unstable_by(|x, y| x.0.total_cmp(&y.0));
    // collapse angular duplicates (revisits of the same ray)
    let mut samples: Vec<(f64, f64)> = Vec::with_capacity(polar.len());
    for (a, r) in polar {
        match samples.last() {
            Some(&(last, _)) if a - last <= 1e-12 => {}
            _ => samples.push((a, r)),
        }
    }
    if samples.len() < 2 {
        return Err(Error::SparseCoverage { closure_defect: num::TAU });
    }
    let mut gap = samples[0].0 + num::TAU - samples[samples.len() - 1].0;
    for w in samples.windows(2) {
        gap = gap.max(w[1].0 - w[0].0);
    }
    if gap > closure_threshold {
        return Err(Error::SparseCoverage { closure_defect: gap });
    }
    let mut profile =
        InvariantCircleProfile { samples, symmetry_defect: 0.0, closure_defect: gap };
    profile.symmetry_defect = symmetry_defect(&profile);
    Ok(profile)
}

/// Build a radial profile from the forward orbit of `v`: collect `n` orbit
/// points, sort by polar angle, and measure closure and symmetry defects.
///
/// Callers should have seen `Bounded` from [`boundedness_probe`] first.
/// Orbits that cover the circle too sparsely (rational rotation) are
/// rejected with a sparse-coverage error.
pub fn build_circle(
    params: MapParams,
    v: PlaneVec,
    n: u64,
    cfg: &Tolerances,
) -> Result<InvariantCircleProfile> {
    if !v.is_finite() {
        return Err(Error::NonFinite);
    }
    if v.modulus() == 0.0 {
        return Err(Error::Precondition("start point must be nonzero"));
    }
    let mut polar = Vec::with_capacity(n as usize + 1);
    let mut w = v;
    polar.push((w.angle(), w.modulus()));
    for k in 1..=n {
        w = plane::step(params, w);
        if !w.is_finite() || num::abs(w.x) > cfg.hard_divergence || num::abs(w.y) > cfg.hard_divergence
        {
            return Err(Error::Diverged { step: k as usize });
        }
        polar.push((w.angle(), w.modulus()));
    }
    assemble_profile(polar, cfg.closure_threshold)
}

/// Exact invariant-ellipse profile of the linear map `a = b = 2cos θ`
/// through `v`: the level set of `Q(x, y) = x² + y² − 2cos θ·xy`, sampled at
/// `samples` equispaced angles.
pub fn linear_ellipse_oracle(
    theta: f64,
    v: PlaneVec,
    samples: usize,
) -> Result<InvariantCircleProfile> {
    if !(theta > 0.0 && theta < num::PI) {
        return Err(Error::Domain("elliptic case requires θ in (0, π), i.e. |a| < 2"));
    }
    if samples < 4 {
        return Err(Error::Domain("need at least 4 samples"));
    }
    if !v.is_finite() || v.modulus() == 0.0 {
        return Err(Error::Domain("level point must be nonzero and finite"));
    }
    let ct = num::cos(theta);
    let level = v.x * v.x + v.y * v.y - 2.0 * ct * v.x * v.y;
    let mut polar = Vec::with_capacity(samples);
    for j in 0..samples {
        let phi = num::TAU * j as f64 / samples as f64;
        // Q on the unit circle: 1 − cos θ · sin 2φ, always positive here
        let q = 1.0 - ct * num::sin(2.0 * phi);
        polar.push((phi, num::sqrt(level / q)));
    }
    assemble_profile(polar, num::TAU * 2.0 / samples as f64)
}
