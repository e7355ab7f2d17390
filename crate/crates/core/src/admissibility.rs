//! Admissible triples `(r, s, t)` for subordination to `√(1+z)` and scans of
//! the five `ψ` functions whose non-vanishing on those triples yields the
//! lemniscate results.
//!
//! Triples are parameterized by `θ ∈ (−π/4, π/4)` and `m >= 1`:
//!
//! ```text
//! r = √(2cos2θ) e^{iθ},   s = m e^{3iθ} / (2√(2cos2θ)),
//! Re((t + s) e^{−3iθ}) >= 3m² / (8√(2cos2θ))
//! ```

use std::f64::consts::{FRAC_PI_4, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::theorems::{condition_slack, lemniscate_constant, Params, TheoremId};

const SQRT_2: f64 = std::f64::consts::SQRT_2;

/// Clamp keeping scanned `θ` away from the endpoints `±π/4`.
pub const THETA_CLAMP: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdmissibleTriple {
    pub theta: f64,
    pub m: f64,
    pub r: Complex64,
    pub s: Complex64,
    pub t: Complex64,
}

impl AdmissibleTriple {
    /// Builds the triple for `(θ, m)` with the given `t`, checking the constraint on `t`.
    pub fn new(theta: f64, m: f64, t: Complex64) -> Result<Self> {
        let triple = Self::unchecked(theta, m, t)?;
        if triple.t_excess() < -1e-12 {
            return Err(Error::InvalidParameter(format!(
                "Re((t+s)e^(-3i theta)) >= 3m^2/(8 sqrt(2cos2theta)) violated by {}",
                -triple.t_excess()
            )));
        }
        Ok(triple)
    }

    fn unchecked(theta: f64, m: f64, t: Complex64) -> Result<Self> {
        if !(theta.abs() < FRAC_PI_4) {
            return Err(Error::InvalidParameter(format!(
                "theta must lie in (-pi/4, pi/4), got {theta}"
            )));
        }
        if !(m >= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "m >= 1 violated (m = {m})"
            )));
        }
        let root = (2.0 * (2.0 * theta).cos()).sqrt();
        Ok(Self {
            theta,
            m,
            r: Complex64::from_polar(root, theta),
            s: Complex64::from_polar(m / (2.0 * root), 3.0 * theta),
            t,
        })
    }

    /// Triple whose `t` puts `(t + s)e^{−3iθ}` at `real_min + excess + i·imag`.
    pub fn with_rotated_t(theta: f64, m: f64, excess: f64, imag: f64) -> Result<Self> {
        let mut triple = Self::unchecked(theta, m, Complex64::new(0.0, 0.0))?;
        let w = Complex64::new(triple.t_real_min() + excess, imag);
        triple.t = w * Complex64::from_polar(1.0, 3.0 * theta) - triple.s;
        Self::new(theta, m, triple.t)
    }

    /// `√(2cos2θ)`.
    pub fn root(&self) -> f64 {
        (2.0 * (2.0 * self.theta).cos()).sqrt()
    }

    /// `3m²/(8√(2cos2θ))`.
    pub fn t_real_min(&self) -> f64 {
        3.0 * self.m * self.m / (8.0 * self.root())
    }

    /// `Re((t+s)e^{−3iθ}) − 3m²/(8√(2cos2θ))`.
    pub fn t_excess(&self) -> f64 {
        ((self.t + self.s) * Complex64::from_polar(1.0, -3.0 * self.theta)).re - self.t_real_min()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ProofId {
    P1,
    P2,
    P3,
    P4,
    P5,
}

impl ProofId {
    pub const ALL: [ProofId; 5] = [
        ProofId::P1,
        ProofId::P2,
        ProofId::P3,
        ProofId::P4,
        ProofId::P5,
    ];

    /// The theorem whose hypothesis this `ψ` argument uses.
    pub fn theorem(&self) -> TheoremId {
        match self {
            ProofId::P1 => TheoremId::T1UPrime,
            ProofId::P2 => TheoremId::T2UConvex,
            ProofId::P3 => TheoremId::T3HConvex,
            ProofId::P4 => TheoremId::T4FConvex,
            ProofId::P5 => TheoremId::T5FPrime,
        }
    }

    /// Coefficient of `t` in `ψ` (zero when `ψ` does not depend on `t`).
    fn t_coefficient(&self) -> f64 {
        match self {
            ProofId::P1 => 4.0,
            ProofId::P2 => 0.0,
            _ => 1.0,
        }
    }
}

impl fmt::Display for ProofId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for ProofId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ProofId::ALL
            .into_iter()
            .find(|p| s.eq_ignore_ascii_case(&p.to_string()))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown proof id {s:?}")))
    }
}

fn mismatch(proof: ProofId, family: &'static str) -> Error {
    Error::FamilyMismatch {
        theorem: proof.theorem().as_str(),
        family,
    }
}

/// Evaluates `ψ(r, s, t; z)` for `proof`.
pub fn psi_value(
    proof: ProofId,
    params: &Params,
    triple: &AdmissibleTriple,
    z: Complex64,
) -> Result<Complex64> {
    let AdmissibleTriple { r, s, t, .. } = *triple;
    let one = Complex64::new(1.0, 0.0);
    match (proof, params) {
        (ProofId::P1, Params::Bessel(bp)) => {
            Ok(4.0 * t + 4.0 * (bp.kappa() + 1.0) * s + bp.c() * z * r)
        }
        (ProofId::P2, Params::Bessel(bp)) => {
            let x = r - one;
            Ok(4.0 * (s - x + x * x) + 4.0 * (bp.kappa() + 1.0) * x + bp.c() * z)
        }
        (ProofId::P3 | ProofId::P4, Params::Lommel(lp)) => {
            let mu = lp.mu();
            let x = r - one;
            let tail = if proof == ProofId::P3 {
                z / 2.0
            } else {
                z / 4.0
            };
            Ok(t + s
                + 3.0 * r * s
                + (mu - 2.0) * s
                + (mu + 1.0) * (r * r - one)
                + x * x * x
                + x * (lp.quarter_gap() - 2.0 * mu - 2.0 + z / 4.0)
                + tail)
        }
        (ProofId::P5, Params::Lommel(lp)) => {
            let q = lp.quarter_gap();
            Ok(t + (lp.mu() + 2.0) * s + (z / 4.0 + q) * r - q)
        }
        (ProofId::P1 | ProofId::P2, Params::Lommel(_)) => Err(mismatch(proof, "lommel")),
        (_, Params::Bessel(_)) => Err(mismatch(proof, "bessel")),
    }
}

/// Analytic lower bound for `|ψ|` over admissible triples and `|z| <= 1`.
pub fn analytic_bound(proof: ProofId, params: &Params) -> Result<f64> {
    let sqrt3 = 3f64.sqrt();
    match (proof, params) {
        (ProofId::P1, Params::Bessel(bp)) => Ok(4.0
            * (3.0 / (8.0 * SQRT_2) + bp.kappa().re / (2.0 * SQRT_2)
                - bp.c().norm() * SQRT_2 / 4.0)),
        (ProofId::P2, Params::Bessel(bp)) => {
            Ok(4.0
                * (lemniscate_constant() - sqrt3 * (bp.kappa() - 2.0).norm() - bp.c().norm() / 4.0))
        }
        (ProofId::P3 | ProofId::P4, Params::Lommel(lp)) => {
            let mu = lp.mu().re;
            let inner = (lp.quarter_gap() - 2.0 * lp.mu() - 2.0).norm();
            let trailing = if proof == ProofId::P3 { 0.5 } else { 0.25 };
            Ok(15.0 / (8.0 * SQRT_2) + 3.0 * mu / (2.0 * SQRT_2)
                - inner * sqrt3
                - 13.0 * sqrt3 / 4.0
                - trailing)
        }
        (ProofId::P5, Params::Lommel(lp)) => Ok(
            lp.mu().re / (2.0 * SQRT_2) + 3.0 / (8.0 * SQRT_2) - sqrt3 * lp.quarter_gap().norm()
        ),
        (ProofId::P1 | ProofId::P2, Params::Lommel(_)) => Err(mismatch(proof, "lommel")),
        (_, Params::Bessel(_)) => Err(mismatch(proof, "bessel")),
    }
}

/// Resolution of an admissibility scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanGrid {
    pub theta_points: usize,
    pub m_max: f64,
    pub m_points: usize,
    pub z_samples: usize,
    /// Interior offset applied to `Re((t+s)e^{−3iθ})` besides the boundary value.
    pub t_offset: f64,
}

impl Default for ScanGrid {
    fn default() -> Self {
        Self {
            theta_points: 200,
            m_max: 8.0,
            m_points: 50,
            z_samples: 8,
            t_offset: 0.25,
        }
    }
}

impl ScanGrid {
    fn validate(&self) -> Result<()> {
        if self.theta_points < 2 || self.m_points < 2 || self.z_samples < 1 {
            return Err(Error::InvalidParameter(
                "scan grid needs at least 2 theta points, 2 m points and 1 z sample".into(),
            ));
        }
        if !(self.m_max > 1.0) {
            return Err(Error::InvalidParameter(format!(
                "m_max > 1 violated (m_max = {})",
                self.m_max
            )));
        }
        if !(self.t_offset > 0.0) {
            return Err(Error::InvalidParameter("t_offset must be positive".into()));
        }
        Ok(())
    }

    pub fn thetas(&self) -> impl Iterator<Item = f64> {
        let limit = FRAC_PI_4 - THETA_CLAMP;
        let n = self.theta_points;
        (0..n).map(move |i| -limit + 2.0 * limit * i as f64 / (n - 1) as f64)
    }

    pub fn ms(&self) -> impl Iterator<Item = f64> {
        let (n, top) = (self.m_points, self.m_max);
        (0..n).map(move |i| 1.0 + (top - 1.0) * i as f64 / (n - 1) as f64)
    }

    pub fn zs(&self) -> impl Iterator<Item = Complex64> {
        let n = self.z_samples;
        (0..n).map(move |k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub proof: ProofId,
    pub min_abs_psi: f64,
    pub arg_min: AdmissibleTriple,
    pub arg_min_z: Complex64,
    pub analytic_bound: f64,
    /// `min_abs_psi >= analytic_bound − 1e−9` and `analytic_bound > 0`.
    pub contract_holds: bool,
    /// Minimum over triples of `|s + r² − 1|² − (9/8 + 1/√2)`.
    pub min_s_r2_excess: f64,
    /// Maximum over triples of `|r − 1|²`.
    pub max_r_minus_one_sq: f64,
    /// Both intermediate bounds hold at every scanned triple.
    pub intermediate_bounds_hold: bool,
    pub evaluations: usize,
}

/// Minimum of `|ψ|` over a grid of admissible triples with `|z| = 1`.
///
/// For each `(θ, m, z)` the imaginary part of `(t+s)e^{−3iθ}` is chosen to
/// cancel the imaginary part of the rest of `ψ`, which minimizes `|ψ|` over
/// it; the real part takes its boundary value and one interior offset.
pub fn admissibility_scan(
    proof: ProofId,
    params: &Params,
    grid: &ScanGrid,
) -> Result<AdmissibilityReport> {
    grid.validate()?;
    let slack = condition_slack(proof.theorem(), params)?;
    if !(slack > 0.0) {
        return Err(Error::ConditionNotSatisfied {
            what: proof.theorem().as_str().to_string(),
            slack,
        });
    }
    let bound = analytic_bound(proof, params)?;
    let lemniscate_sq = 9.0 / 8.0 + 1.0 / SQRT_2;
    let lambda = proof.t_coefficient();

    let mut min_abs = f64::INFINITY;
    let mut arg_min = None;
    let mut arg_min_z = Complex64::new(0.0, 0.0);
    let mut min_s_r2_excess = f64::INFINITY;
    let mut max_r_minus_one_sq = 0.0f64;
    let mut evaluations = 0usize;

    for theta in grid.thetas() {
        let unrotate = Complex64::from_polar(1.0, -3.0 * theta);
        for m in grid.ms() {
            let base = AdmissibleTriple::with_rotated_t(theta, m, 0.0, 0.0)?;
            min_s_r2_excess =
                min_s_r2_excess.min((base.s + base.r * base.r - 1.0).norm_sqr() - lemniscate_sq);
            max_r_minus_one_sq = max_r_minus_one_sq.max((base.r - 1.0).norm_sqr());

            for z in grid.zs() {
                let imag = if lambda == 0.0 {
                    0.0
                } else {
                    // ψ = λ e^{3iθ} W + rest, with rest = ψ at t = −s
                    let at_zero = AdmissibleTriple { t: -base.s, ..base };
                    let rest = psi_value(proof, params, &at_zero, z)?;
                    -(unrotate * rest / lambda).im
                };
                for excess in [0.0, grid.t_offset] {
                    let triple = AdmissibleTriple::with_rotated_t(theta, m, excess, imag)?;
                    let value = psi_value(proof, params, &triple, z)?.norm();
                    evaluations += 1;
                    if value < min_abs {
                        min_abs = value;
                        arg_min = Some(triple);
                        arg_min_z = z;
                    }
                }
            }
        }
    }

    let arg_min = arg_min.expect("grid is nonempty");
    let intermediate_bounds_hold = min_s_r2_excess >= -1e-12 && max_r_minus_one_sq <= 3.0 + 1e-12;
    Ok(AdmissibilityReport {
        proof,
        min_abs_psi: min_abs,
        arg_min,
        arg_min_z,
        analytic_bound: bound,
        contract_holds: bound > 0.0 && min_abs >= bound - 1e-9,
        min_s_r2_excess,
        max_r_minus_one_sq,
        intermediate_bounds_hold,
        evaluations,
    })
}
