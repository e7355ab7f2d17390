//! Truncated complex power series with certified evaluation.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `|z|` accepted by [`PowerSeries::eval`]: the closed unit disk plus a guard band.
pub const EVAL_RADIUS: f64 = 1.05;

/// Default number of retained coefficients beyond the constant term.
pub const DEFAULT_ORDER: usize = 64;

/// Stopping rule for series summation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationControl {
    pub abs_tol: f64,
    pub max_terms: usize,
}

impl Default for TruncationControl {
    fn default() -> Self {
        Self {
            abs_tol: 1e-13,
            max_terms: 64,
        }
    }
}

impl TruncationControl {
    pub fn new(abs_tol: f64, max_terms: usize) -> Result<Self> {
        if !(abs_tol.is_finite() && abs_tol > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "abs_tol must be positive, got {abs_tol}"
            )));
        }
        if max_terms < 8 {
            return Err(Error::InvalidParameter(format!(
                "max_terms must be at least 8, got {max_terms}"
            )));
        }
        Ok(Self { abs_tol, max_terms })
    }
}

/// Neumaier compensated accumulator, applied to real and imaginary parts separately.
#[derive(Debug, Default, Clone, Copy)]
struct CompensatedSum {
    sum: Complex64,
    carry: Complex64,
}

impl CompensatedSum {
    fn add(&mut self, x: Complex64) {
        self.sum.re = neumaier_step(self.sum.re, x.re, &mut self.carry.re);
        self.sum.im = neumaier_step(self.sum.im, x.im, &mut self.carry.im);
    }

    fn value(&self) -> Complex64 {
        self.sum + self.carry
    }
}

#[inline]
fn neumaier_step(sum: f64, x: f64, carry: &mut f64) -> f64 {
    let t = sum + x;
    if sum.abs() >= x.abs() {
        *carry += (sum - t) + x;
    } else {
        *carry += (x - t) + sum;
    }
    t
}

/// Finite coefficient sequence `Σ aₙ zⁿ`, `n = 0..=truncation_order`.
///
/// `tail_bound_hint` bounds the discarded part `|Σ_{n>N} aₙ zⁿ|` on the
/// closed unit disk. Series built here from explicit coefficient lists are
/// exact polynomials and carry a zero hint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerSeries {
    coeffs: Vec<Complex64>,
    tail_bound_hint: f64,
}

impl PowerSeries {
    /// Builds a series from its coefficients. An empty list is the zero series.
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let coeffs = if coeffs.is_empty() {
            vec![Complex64::new(0.0, 0.0)]
        } else {
            coeffs
        };
        Self {
            coeffs,
            tail_bound_hint: 0.0,
        }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![Complex64::new(0.0, 0.0); order + 1])
    }

    pub fn with_tail_bound(mut self, tail_bound_hint: f64) -> Self {
        self.tail_bound_hint = tail_bound_hint;
        self
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient `aₙ`, zero past the truncation order.
    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs
            .get(n)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn truncation_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn tail_bound_hint(&self) -> f64 {
        self.tail_bound_hint
    }

    /// Evaluates the series at `z` by ascending compensated summation.
    ///
    /// Summation stops at the first nonzero term with `|term| < abs_tol` whose
    /// successor is less than half its size, or when the retained nonzero
    /// coefficients run out. Neither within `max_terms` terms is an error.
    pub fn eval(&self, z: Complex64, ctl: &TruncationControl) -> Result<Complex64> {
        if !(z.norm() <= EVAL_RADIUS) {
            return Err(Error::Domain(format!(
                "|z| = {} exceeds evaluation radius {EVAL_RADIUS}",
                z.norm()
            )));
        }
        let end = match self
            .coeffs
            .iter()
            .rposition(|a| *a != Complex64::new(0.0, 0.0))
        {
            Some(last) => last + 1,
            None => return Ok(Complex64::new(0.0, 0.0)),
        };
        if z == Complex64::new(0.0, 0.0) {
            return Ok(self.coeffs[0]);
        }

        let mut acc = CompensatedSum::default();
        let mut zn = Complex64::new(1.0, 0.0);
        for n in 0..end {
            if n >= ctl.max_terms {
                break;
            }
            let term = self.coeffs[n] * zn;
            acc.add(term);
            if n + 1 == end {
                return Ok(acc.value());
            }
            zn *= z;
            let size = term.norm();
            if size != 0.0 && size < ctl.abs_tol {
                let next = (self.coeffs[n + 1] * zn).norm();
                if next < 0.5 * size {
                    return Ok(acc.value());
                }
            }
        }
        Err(Error::ToleranceNotMet {
            z,
            max_terms: ctl.max_terms,
        })
    }

    /// Term-wise derivative: coefficient `n` of the result is `(n+1)·a_{n+1}`.
    ///
    /// The tail hint is scaled by `2(N+2)`, which bounds `Σ n|aₙ|` over the
    /// tail whenever successive tail ratios stay below 1/2.
    pub fn derivative(&self) -> PowerSeries {
        let order = self.truncation_order();
        if order == 0 {
            return PowerSeries::zero(0).with_tail_bound(self.tail_bound_hint);
        }
        let coeffs = (0..order)
            .map(|n| self.coeffs[n + 1] * (n as f64 + 1.0))
            .collect();
        PowerSeries {
            coeffs,
            tail_bound_hint: 2.0 * (order as f64 + 2.0) * self.tail_bound_hint,
        }
    }

    /// Multiplies by `z`: coefficients shift up one place.
    pub fn mul_z(&self) -> PowerSeries {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Complex64::new(0.0, 0.0));
        coeffs.extend_from_slice(&self.coeffs);
        PowerSeries {
            coeffs,
            tail_bound_hint: self.tail_bound_hint,
        }
    }

    /// Divides by `z`. Requires `|a₀| < 1e-14`.
    pub fn div_z(&self) -> Result<PowerSeries> {
        if self.coeffs[0].norm() >= 1e-14 {
            return Err(Error::Domain(format!(
                "cannot divide by z: constant coefficient {} is nonzero",
                self.coeffs[0]
            )));
        }
        let coeffs = if self.coeffs.len() == 1 {
            vec![Complex64::new(0.0, 0.0)]
        } else {
            self.coeffs[1..].to_vec()
        };
        Ok(PowerSeries {
            coeffs,
            tail_bound_hint: self.tail_bound_hint,
        })
    }

    pub fn scale(&self, factor: Complex64) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|a| a * factor).collect(),
            tail_bound_hint: self.tail_bound_hint * factor.norm(),
        }
    }
}
