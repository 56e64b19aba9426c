//! Closed-form qutrit spectrum and the admissible `(|P|, Q)` region.
//!
//! With `ρ = (1 + 𝒜)/3` and `𝒜 = λ_a P_a`, the traces `Tr 𝒜² = 2|P|²`, `Tr 𝒜³ = 2Q` make
//! the characteristic polynomial of `𝒜` the depressed cubic `x³ - |P|² x - (2/3) Q = 0`,
//! whose three real roots have the trigonometric form
//!
//! ```text
//! x_1 = (2|P|/√3) [-½ cos(χ/3) - (√3/2) sin(χ/3)]
//! x_2 = (2|P|/√3) [-½ cos(χ/3) + (√3/2) sin(χ/3)]
//! x_3 = (2|P|/√3) cos(χ/3),        cos χ = √3 Q / |P|³
//! ```

use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_3;

use crate::{Error, Result};

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Roots of the qutrit characteristic cubic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QutritSpectrum {
    /// Eigenvalues `x_1 ≤ x_2 ≤ x_3` of `𝒜`.
    pub roots: [f64; 3],
    /// `χ ∈ [0, π]`; reported as 0 when `|P| = 0`.
    pub chi: f64,
}

impl QutritSpectrum {
    /// Eigenvalues `(1 + x_i)/3` of `ρ`.
    pub fn rho_eigenvalues(&self) -> [f64; 3] {
        self.roots.map(|x| (1.0 + x) / 3.0)
    }

    /// Residuals of `Σx = 0`, `Σ_{i<j} x_i x_j = -|P|²`, `Π x = (2/3) Q`.
    pub fn vieta_residuals(&self, p2: f64, q: f64) -> [f64; 3] {
        let [a, b, c] = self.roots;
        [(a + b + c).abs(), (a * b + a * c + b * c + p2).abs(), (a * b * c - 2.0 / 3.0 * q).abs()]
    }
}

/// `√3 Q / |P|³`, or `None` when `|P| = 0`.
fn cos_chi(p2: f64, q: f64) -> Option<f64> {
    if p2 <= 0.0 {
        return None;
    }
    let p = libm::sqrt(p2);
    Some(SQRT3 * q / (p2 * p))
}

/// Closed-form spectrum for invariants `(|P|², Q)`.
///
/// `cos χ` within `tolerance` outside `[-1, 1]` is clamped; further out the cubic has
/// complex roots and [`Error::DiscriminantViolation`] is returned. At `|P| = 0` the triple
/// root 0 is returned when `|Q| ≤ tolerance` and [`Error::DegenerateInput`] otherwise.
pub fn spectrum(p2: f64, q: f64, tolerance: f64) -> Result<QutritSpectrum> {
    let Some(cos) = cos_chi(p2, q) else {
        if q.abs() <= tolerance {
            return Ok(QutritSpectrum { roots: [0.0; 3], chi: 0.0 });
        }
        return Err(Error::DegenerateInput { q });
    };
    if cos.abs() > 1.0 + tolerance {
        return Err(Error::DiscriminantViolation { cos_chi: cos });
    }
    let chi = libm::acos(cos.clamp(-1.0, 1.0));
    let scale = 2.0 * libm::sqrt(p2) / SQRT3;
    let (s, c) = libm::sincos(chi / 3.0);
    let x1 = scale * (-0.5 * c - 0.5 * SQRT3 * s);
    let x2 = scale * (-0.5 * c + 0.5 * SQRT3 * s);
    let x3 = scale * c;
    Ok(QutritSpectrum { roots: [x1, x2, x3], chi })
}

/// Bit flags naming the admissibility conditions a point violates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct FailMask(pub u8);

impl FailMask {
    /// `|P|² ≤ 3`
    pub const NORM_BOUND: u8 = 1;
    /// `(2/3) Q ≥ |P|² - 1`
    pub const CONDITION1: u8 = 2;
    /// `-1 ≤ √3 Q / |P|³ ≤ 1`
    pub const DISCRIMINANT: u8 = 4;
    /// `1 + x_i ≥ 0` for every root; also set when the roots are not real
    pub const EIGEN_POSITIVITY: u8 = 8;

    pub fn contains(self, flag: u8) -> bool {
        self.0 & flag != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Condition names for every set bit, in bit order.
    pub fn names(self) -> Vec<&'static str> {
        [
            (Self::NORM_BOUND, "norm-bound"),
            (Self::CONDITION1, "condition1"),
            (Self::DISCRIMINANT, "discriminant"),
            (Self::EIGEN_POSITIVITY, "eigen-positivity"),
        ]
        .into_iter()
        .filter(|(bit, _)| self.contains(*bit))
        .map(|(_, name)| name)
        .collect()
    }
}

/// Verdict for one `(|P|², Q)` pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Admissibility {
    pub admissible: bool,
    pub failed: FailMask,
    /// Smallest eigenvalue of the realized `ρ`, when the roots are real.
    pub min_rho_eigenvalue: Option<f64>,
}

/// Whether some qutrit density matrix has invariants `(|P|², Q)`.
pub fn admissible(p2: f64, q: f64, tolerance: f64) -> Admissibility {
    let mut mask = 0u8;
    if p2 > 3.0 + tolerance {
        mask |= FailMask::NORM_BOUND;
    }
    if 2.0 / 3.0 * q < p2 - 1.0 - tolerance {
        mask |= FailMask::CONDITION1;
    }
    let min_rho_eigenvalue = match spectrum(p2, q, tolerance) {
        Ok(s) => {
            let min = s.rho_eigenvalues().into_iter().fold(f64::INFINITY, f64::min);
            if min < -tolerance {
                mask |= FailMask::EIGEN_POSITIVITY;
            }
            Some(min)
        }
        Err(_) => {
            mask |= FailMask::DISCRIMINANT | FailMask::EIGEN_POSITIVITY;
            None
        }
    };
    Admissibility { admissible: mask == 0, failed: FailMask(mask), min_rho_eigenvalue }
}

/// `|P|` upper edge of the plotted region.
pub const P_MAX: f64 = SQRT3;
/// `|Q|` edge of the plotted region.
pub const Q_MAX: f64 = 3.0;

/// One scanned grid point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegionCell {
    pub p: f64,
    pub q: f64,
    pub verdict: Admissibility,
}

/// Admissibility over `|P| ∈ [0, √3]`, `Q ∈ [-3, 3]`.
#[derive(Clone, Debug, PartialEq)]
pub struct RegionGrid {
    pub resolution: usize,
    pub p_axis: Vec<f64>,
    pub q_axis: Vec<f64>,
    /// Row-major with `Q` as the row index: `cells[iq * resolution + ip]`.
    pub cells: Vec<RegionCell>,
}

impl RegionGrid {
    pub fn cell(&self, ip: usize, iq: usize) -> &RegionCell {
        &self.cells[iq * self.resolution + ip]
    }

    pub fn admissible_count(&self) -> usize {
        self.cells.iter().filter(|c| c.verdict.admissible).count()
    }
}

fn axis(lo: f64, hi: f64, resolution: usize) -> Vec<f64> {
    let last = (resolution - 1) as f64;
    (0..resolution)
        .map(|i| if i + 1 == resolution { hi } else { lo + (hi - lo) * i as f64 / last })
        .collect()
}

/// Evaluates [`admissible`] on a `resolution × resolution` grid. `resolution` is raised to
/// at least 2.
pub fn region_scan(resolution: usize, tolerance: f64) -> RegionGrid {
    let resolution = resolution.max(2);
    let p_axis = axis(0.0, P_MAX, resolution);
    let q_axis = axis(-Q_MAX, Q_MAX, resolution);
    let mut cells = Vec::with_capacity(resolution * resolution);
    for &q in &q_axis {
        for &p in &p_axis {
            cells.push(RegionCell { p, q, verdict: admissible(p * p, q, tolerance) });
        }
    }
    RegionGrid { resolution, p_axis, q_axis, cells }
}

/// Sample of the analytic boundary curves at one `|P|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundarySample {
    pub p: f64,
    /// `Q = (3/2)(|P|² - 1)`
    pub condition1: f64,
    /// `Q = |P|³/√3`
    pub discriminant_upper: f64,
    /// `Q = -|P|³/√3`
    pub discriminant_lower: f64,
}

pub fn boundary_curves(samples: usize) -> Vec<BoundarySample> {
    axis(0.0, P_MAX, samples.max(2))
        .into_iter()
        .map(|p| {
            let cube = p * p * p / SQRT3;
            BoundarySample { p, condition1: 1.5 * (p * p - 1.0), discriminant_upper: cube, discriminant_lower: -cube }
        })
        .collect()
}

/// `χ/3` rotated by `±2π/3`; exposed for callers that want the cosine form of the roots.
pub fn root_angles(chi: f64) -> [f64; 3] {
    [chi / 3.0 + 2.0 * FRAC_PI_3, chi / 3.0 - 2.0 * FRAC_PI_3, chi / 3.0]
}
