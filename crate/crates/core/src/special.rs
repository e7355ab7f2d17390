//! The normalized generalized Bessel function `u_{p,b,c}` and the normalized
//! Lommel function `h_{μ,p}`, together with residual checks of the identities
//! they satisfy.
//!
//! ```text
//! u_p(z) = Σ (−c/4)ⁿ / ((κ)ₙ n!) zⁿ,                 κ = p + (b+1)/2
//! h(z)   = z + Σ_{n≥1} (−1/4)ⁿ / ((K)ₙ (F)ₙ) zⁿ⁺¹,   K = (μ−p+3)/2, F = (μ+p+3)/2
//! ```

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::gamma;
use crate::series::{PowerSeries, TruncationControl, DEFAULT_ORDER, EVAL_RADIUS};

/// Minimum distance kept from the poles of the Pochhammer denominators.
pub const POLE_MARGIN: f64 = 1e-9;

/// Largest truncation order the coefficient builders accept.
pub const MAX_ORDER: usize = 200;

fn c64(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn near_nonpositive_integer(x: Complex64) -> bool {
    let n = x.re.round();
    n <= 0.0 && (x - n).norm() <= POLE_MARGIN
}

/// `x ∈ {−3, −5, …}`: the values making `K` or `F` a nonpositive integer.
/// `x = −1` only cancels the normalization of `s_{μ,p}` and leaves `h` entire.
fn near_series_pole(x: Complex64) -> bool {
    let n = x.re.round();
    n <= -3.0 && n.rem_euclid(2.0) == 1.0 && (x - n).norm() <= POLE_MARGIN
}

/// Parameters `(p, b, c)` of `u_{p,b,c}` and the derived `κ = p + (b+1)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BesselParams {
    p: Complex64,
    b: Complex64,
    c: Complex64,
    kappa: Complex64,
}

impl BesselParams {
    pub fn new(p: Complex64, b: Complex64, c: Complex64) -> Result<Self> {
        let kappa = p + (b + 1.0) / 2.0;
        if !(kappa.re.is_finite() && kappa.im.is_finite() && c.re.is_finite() && c.im.is_finite()) {
            return Err(Error::InvalidParameter(
                "p, b, c must be finite".to_string(),
            ));
        }
        if near_nonpositive_integer(kappa) {
            return Err(Error::InvalidParameter(format!(
                "kappa = p + (b+1)/2 = {kappa} must not be 0, -1, -2, ..."
            )));
        }
        Ok(Self { p, b, c, kappa })
    }

    /// Parameters with `b = 1` and `p = κ − 1`.
    pub fn from_kappa(kappa: Complex64, c: Complex64) -> Result<Self> {
        Self::new(kappa - 1.0, c64(1.0), c)
    }

    pub fn p(&self) -> Complex64 {
        self.p
    }
    pub fn b(&self) -> Complex64 {
        self.b
    }
    pub fn c(&self) -> Complex64 {
        self.c
    }
    pub fn kappa(&self) -> Complex64 {
        self.kappa
    }

    /// The same `b`, `c` with order `p + 1`.
    pub fn raised(&self) -> Result<Self> {
        Self::new(self.p + 1.0, self.b, self.c)
    }

    /// The same `b`, `c` with order `p − 1`.
    pub fn lowered(&self) -> Result<Self> {
        Self::new(self.p - 1.0, self.b, self.c)
    }
}

/// Parameters `(μ, p)` of `h_{μ,p}` with the derived constants used by the
/// series and by the convexity bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LommelParams {
    mu: Complex64,
    p: Complex64,
    k: Complex64,
    f: Complex64,
    m: Complex64,
    n: Complex64,
}

impl LommelParams {
    pub fn new(mu: Complex64, p: Complex64) -> Result<Self> {
        if !(mu.re.is_finite() && mu.im.is_finite() && p.re.is_finite() && p.im.is_finite()) {
            return Err(Error::InvalidParameter("mu, p must be finite".to_string()));
        }
        for (label, x) in [("mu + p", mu + p), ("mu - p", mu - p)] {
            if near_series_pole(x) {
                return Err(Error::InvalidParameter(format!(
                    "{label} = {x} must not be a negative odd integer below -1"
                )));
            }
        }
        Ok(Self {
            mu,
            p,
            k: (mu - p + 3.0) / 2.0,
            f: (mu + p + 3.0) / 2.0,
            m: (mu + 5.0) * (mu + 5.0) - p * p,
            n: (mu + 3.0) * (mu + 3.0) - p * p,
        })
    }

    pub fn real(mu: f64, p: f64) -> Result<Self> {
        Self::new(c64(mu), c64(p))
    }

    pub fn mu(&self) -> Complex64 {
        self.mu
    }
    pub fn p(&self) -> Complex64 {
        self.p
    }
    /// `K = (μ−p+3)/2`.
    pub fn k(&self) -> Complex64 {
        self.k
    }
    /// `F = (μ+p+3)/2`.
    pub fn f(&self) -> Complex64 {
        self.f
    }
    /// `M = (μ+5)² − p²`.
    pub fn m(&self) -> Complex64 {
        self.m
    }
    /// `N = (μ+3)² − p²`.
    pub fn n(&self) -> Complex64 {
        self.n
    }

    /// `((μ+1)² − p²)/4`, the constant shared by every h-identity.
    pub fn quarter_gap(&self) -> Complex64 {
        ((self.mu + 1.0) * (self.mu + 1.0) - self.p * self.p) / 4.0
    }

    pub fn is_real(&self) -> bool {
        self.mu.im == 0.0 && self.p.im == 0.0
    }
}

fn check_order(order: usize) -> Result<()> {
    if order == 0 || order > MAX_ORDER {
        return Err(Error::InvalidParameter(format!(
            "truncation order must be in 1..={MAX_ORDER}, got {order}"
        )));
    }
    Ok(())
}

/// Geometric tail bound `|a_{N+1}| / (1 − q)` on the unit disk, or infinity.
fn geometric_tail(next: Complex64, ratio_bound: f64) -> f64 {
    if ratio_bound.is_finite() && ratio_bound < 1.0 {
        next.norm() / (1.0 - ratio_bound)
    } else {
        f64::INFINITY
    }
}

/// Coefficients `bₙ = (−c/4)ⁿ / ((κ)ₙ n!)`, `n = 0..=order`.
pub fn bessel_u_coeffs(params: &BesselParams, order: usize) -> Result<PowerSeries> {
    check_order(order)?;
    let step = -params.c / 4.0;
    let kappa = params.kappa;
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut b = c64(1.0);
    coeffs.push(b);
    for n in 0..order {
        b = b * step / ((kappa + n as f64) * (n as f64 + 1.0));
        coeffs.push(b);
    }
    let next = b * step / ((kappa + order as f64) * (order as f64 + 1.0));
    // |κ+n| >= Re κ + n once that is positive
    let floor = kappa.re + order as f64 + 1.0;
    let ratio = if floor > 0.0 {
        step.norm() / (floor * (order as f64 + 2.0))
    } else {
        f64::INFINITY
    };
    Ok(PowerSeries::new(coeffs).with_tail_bound(geometric_tail(next, ratio)))
}

/// `u_{p,b,c}` at the default truncation order.
pub fn bessel_u(params: &BesselParams) -> Result<PowerSeries> {
    bessel_u_coeffs(params, DEFAULT_ORDER)
}

/// Coefficients of `h_{μ,p}`: `a₀ = 0`, `a₁ = 1`, `a_{n+1} = (−1/4)ⁿ/((K)ₙ(F)ₙ)`.
pub fn lommel_h_coeffs(params: &LommelParams, order: usize) -> Result<PowerSeries> {
    check_order(order)?;
    let (k, f) = (params.k, params.f);
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(c64(0.0));
    let mut a = c64(1.0);
    coeffs.push(a);
    // coefficient of z^{n+1} from that of z^n
    let advance =
        |a: Complex64, n: usize| a * (-0.25) / ((k + (n - 1) as f64) * (f + (n - 1) as f64));
    for n in 1..order {
        a = advance(a, n);
        coeffs.push(a);
    }
    let next = advance(a, order);
    let floor_k = k.re + order as f64;
    let floor_f = f.re + order as f64;
    let ratio = if floor_k > 0.0 && floor_f > 0.0 {
        0.25 / (floor_k * floor_f)
    } else {
        f64::INFINITY
    };
    Ok(PowerSeries::new(coeffs).with_tail_bound(geometric_tail(next, ratio)))
}

/// `h_{μ,p}` at the default truncation order.
pub fn lommel_h(params: &LommelParams) -> Result<PowerSeries> {
    lommel_h_coeffs(params, DEFAULT_ORDER)
}

/// Elementary closed forms of particular `u_{p,b,c}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosedForm {
    /// `sin√z / √z`, equal to `u_{1/2,1,1}`.
    SincSqrt,
    /// `sinh√z / √z`, equal to `u_{1/2,1,−1}`.
    SinhcSqrt,
    /// `3(sin√z/√z − cos√z)/z`, equal to `u_{3/2,1,1}`.
    J32Combo,
}

/// Evaluates a [`ClosedForm`] on the principal branch of `√z`.
pub fn closed_form(kind: ClosedForm, z: Complex64) -> Complex64 {
    if z == c64(0.0) {
        return c64(1.0);
    }
    let w = z.sqrt();
    match kind {
        ClosedForm::SincSqrt => w.sin() / w,
        ClosedForm::SinhcSqrt => w.sinh() / w,
        ClosedForm::J32Combo => {
            if z.norm() < 1e-3 {
                // 3 Σ_{n≥1} (−1)^{n+1} 2n z^{n−1} / (2n+1)!, cancellation-free near 0
                let mut sum = c64(0.0);
                let mut zn = c64(1.0);
                let mut fact = 1.0; // (2n+1)!
                for n in 1..=6 {
                    let k = 2 * n;
                    fact *= (k * (k + 1)) as f64;
                    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
                    sum += zn * (sign * k as f64 / fact);
                    zn *= z;
                }
                sum * 3.0
            } else {
                (w.sin() / w - w.cos()) * 3.0 / z
            }
        }
    }
}

/// `2ᵖΓ(p+1) z^{−p/2} Σ σⁿ/(n!Γ(p+n+1)) (√z/2)^{2n+p}`, summed term by term.
fn normalized_first_kind(p: Complex64, z: Complex64, sign: f64) -> Result<Complex64> {
    if !(z.norm() <= EVAL_RADIUS) {
        return Err(Error::Domain(format!(
            "|z| = {} exceeds evaluation radius {EVAL_RADIUS}",
            z.norm()
        )));
    }
    let gamma_head = gamma(p + 1.0)?;
    if z == c64(0.0) {
        return Ok(c64(1.0));
    }
    let half_root = z.sqrt() / 2.0;
    let mut sum = c64(0.0);
    let mut n_fact = 1.0;
    for n in 0..120usize {
        if n > 0 {
            n_fact *= n as f64;
        }
        let exponent = p + 2.0 * n as f64;
        let term =
            sign.powi(n as i32) / (n_fact * gamma(p + 1.0 + n as f64)?) * half_root.powc(exponent);
        sum += term;
        if n >= 2 && term.norm() <= 1e-18 * sum.norm() {
            break;
        }
    }
    let prefactor = c64(2.0).powc(p) * gamma_head * z.powc(-p / 2.0);
    Ok(prefactor * sum)
}

/// `𝒥_p(√z) = 2ᵖΓ(p+1) z^{−p/2} J_p(√z)` from the Bessel series of `J_p`.
pub fn bessel_j_normalized(p: Complex64, z: Complex64) -> Result<Complex64> {
    normalized_first_kind(p, z, -1.0)
}

/// `ℐ_p(√z) = 2ᵖΓ(p+1) z^{−p/2} I_p(√z)` from the series of the modified `I_p`.
pub fn bessel_i_normalized(p: Complex64, z: Complex64) -> Result<Complex64> {
    normalized_first_kind(p, z, 1.0)
}

/// `|4κ u′_p(z) + c u_{p+1}(z)|` for explicitly supplied series of `u_p` and `u_{p+1}`.
pub fn recurrence_residual_of(
    params: &BesselParams,
    u: &PowerSeries,
    u_raised: &PowerSeries,
    z: Complex64,
) -> Result<f64> {
    let ctl = TruncationControl::default();
    let du = u.derivative().eval(z, &ctl)?;
    let next = u_raised.eval(z, &ctl)?;
    Ok((params.kappa * 4.0 * du + params.c * next).norm())
}

/// `|4κ u′_p(z) + c u_{p+1}(z)|`.
pub fn recurrence_residual(params: &BesselParams, z: Complex64) -> Result<f64> {
    let raised = params.raised()?;
    recurrence_residual_of(params, &bessel_u(params)?, &bessel_u(&raised)?, z)
}

/// `|4z²u″ + 4κ z u′ + c z u|`.
pub fn ode_residual_u(params: &BesselParams, z: Complex64) -> Result<f64> {
    let ctl = TruncationControl::default();
    let u = bessel_u(params)?;
    let du = u.derivative();
    let d2u = du.derivative();
    let (u0, u1, u2) = (u.eval(z, &ctl)?, du.eval(z, &ctl)?, d2u.eval(z, &ctl)?);
    Ok((z * z * u2 * 4.0 + params.kappa * z * u1 * 4.0 + params.c * z * u0).norm())
}

/// Residual of the second-order equation satisfied by `h_{μ,p}`:
///
/// ```text
/// z²h″ + μzh′ + (((μ−1)²−p²)/4 + z/4) h = (μ+1−p)(μ+1+p) z/4
/// ```
///
/// The coefficient of `h` is `((μ+1)²−p²)/4 − μ`; see
/// [`ode_residual_h_as_printed`] for the variant without the `−μ`.
pub fn ode_residual_h(params: &LommelParams, z: Complex64) -> Result<f64> {
    let (mu, p) = (params.mu, params.p);
    let h_coeff = ((mu - 1.0) * (mu - 1.0) - p * p) / 4.0 + z / 4.0;
    h_ode_residual(params, z, h_coeff)
}

/// Residual of `z²h″ + μzh′ + (((μ+1)²−p²)/4 + z/4) h = (μ+1−p)(μ+1+p) z/4`.
///
/// `h_{μ,p}` does not satisfy this form: the residual equals `|μ h(z)|`.
pub fn ode_residual_h_as_printed(params: &LommelParams, z: Complex64) -> Result<f64> {
    let h_coeff = params.quarter_gap() + z / 4.0;
    h_ode_residual(params, z, h_coeff)
}

fn h_ode_residual(params: &LommelParams, z: Complex64, h_coeff: Complex64) -> Result<f64> {
    let ctl = TruncationControl::default();
    let (mu, p) = (params.mu, params.p);
    let h = lommel_h(params)?;
    let dh = h.derivative();
    let d2h = dh.derivative();
    let (h0, h1, h2) = (h.eval(z, &ctl)?, dh.eval(z, &ctl)?, d2h.eval(z, &ctl)?);
    let lhs = z * z * h2 + mu * z * h1 + h_coeff * h0;
    let rhs = (mu + 1.0 - p) * (mu + 1.0 + p) * z / 4.0;
    Ok((lhs - rhs).norm())
}
