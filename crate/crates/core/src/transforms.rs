//! Alexander, Libera and Hadamard operators as exact coefficient maps.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::series::{PowerSeries, TruncationControl};
use crate::special::{lommel_h, LommelParams};

fn require_vanishing_constant(s: &PowerSeries, op: &str) -> Result<()> {
    if s.coeff(0).norm() >= 1e-14 {
        return Err(Error::Domain(format!(
            "{op} requires a series with zero constant term, got a0 = {}",
            s.coeff(0)
        )));
    }
    Ok(())
}

/// `A[f](z) = ∫₀^z f(t)/t dt`: `aₙ ↦ aₙ/n`.
pub fn alexander(s: &PowerSeries) -> Result<PowerSeries> {
    require_vanishing_constant(s, "alexander transform")?;
    let coeffs = s
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, a)| {
            if n == 0 {
                Complex64::new(0.0, 0.0)
            } else {
                a / n as f64
            }
        })
        .collect();
    Ok(PowerSeries::new(coeffs).with_tail_bound(s.tail_bound_hint()))
}

/// `L[f](z) = (2/z) ∫₀^z f(t) dt`: `aₙ ↦ 2aₙ/(n+1)`.
pub fn libera(s: &PowerSeries) -> Result<PowerSeries> {
    require_vanishing_constant(s, "libera transform")?;
    let coeffs = s
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, a)| {
            if n == 0 {
                Complex64::new(0.0, 0.0)
            } else {
                a * (2.0 / (n as f64 + 1.0))
            }
        })
        .collect();
    Ok(PowerSeries::new(coeffs).with_tail_bound(s.tail_bound_hint()))
}

/// Coefficientwise product, truncated to the shorter operand.
pub fn hadamard(lhs: &PowerSeries, rhs: &PowerSeries) -> PowerSeries {
    let coeffs = lhs
        .coeffs()
        .iter()
        .zip(rhs.coeffs())
        .map(|(a, b)| a * b)
        .collect();
    PowerSeries::new(coeffs).with_tail_bound(lhs.tail_bound_hint() + rhs.tail_bound_hint())
}

/// `z/(1−z)`: the Hadamard identity on normalized series.
pub fn identity_kernel(order: usize) -> PowerSeries {
    PowerSeries::new(
        (0..=order)
            .map(|n| Complex64::new(if n == 0 { 0.0 } else { 1.0 }, 0.0))
            .collect(),
    )
}

/// `−log(1−z) = Σ zⁿ/n`, the Alexander kernel.
pub fn log_kernel(order: usize) -> PowerSeries {
    PowerSeries::new(
        (0..=order)
            .map(|n| Complex64::new(if n == 0 { 0.0 } else { 1.0 / n as f64 }, 0.0))
            .collect(),
    )
}

/// `−2(z + log(1−z))/z = Σ 2zⁿ/(n+1)`, the Libera kernel.
pub fn libera_kernel(order: usize) -> PowerSeries {
    PowerSeries::new(
        (0..=order)
            .map(|n| Complex64::new(if n == 0 { 0.0 } else { 2.0 / (n as f64 + 1.0) }, 0.0))
            .collect(),
    )
}

/// `f_{μ,p} = A[h_{μ,p}]`.
pub fn lommel_alexander(params: &LommelParams) -> Result<PowerSeries> {
    alexander(&lommel_h(params)?)
}

/// Residual of the third-order equation satisfied by `f_{μ,p}`:
/// `|z²f‴ + (μ+2)zf″ + (q + z/4)f′ − q|` with `q = ((μ+1)²−p²)/4`.
pub fn ode_residual_f(params: &LommelParams, z: Complex64) -> Result<f64> {
    let ctl = TruncationControl::default();
    let f1 = lommel_alexander(params)?.derivative();
    let f2 = f1.derivative();
    let f3 = f2.derivative();
    let (d1, d2, d3) = (f1.eval(z, &ctl)?, f2.eval(z, &ctl)?, f3.eval(z, &ctl)?);
    let q = params.quarter_gap();
    let mu = params.mu();
    Ok((z * z * d3 + (mu + 2.0) * z * d2 + (q + z / 4.0) * d1 - q).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::lommel_h_coeffs;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn transforms_of_z() {
        let z = PowerSeries::from_real(&[0.0, 1.0]);
        assert_eq!(alexander(&z).unwrap(), z);
        assert_eq!(libera(&z).unwrap(), z);
    }

    #[test]
    fn libera_of_z_plus_z2() {
        let s = PowerSeries::from_real(&[0.0, 1.0, 1.0]);
        let l = libera(&s).unwrap();
        assert_eq!(l.coeffs(), &[c(0.0), c(1.0), c(2.0 / 3.0)]);
    }

    #[test]
    fn alexander_of_geometric_series_is_log_kernel() {
        let geo = identity_kernel(20);
        assert_eq!(alexander(&geo).unwrap(), log_kernel(20));
    }

    #[test]
    fn lommel_images() {
        let h = lommel_h_coeffs(&LommelParams::real(8.0, 3.0).unwrap(), 12).unwrap();
        assert!((alexander(&h).unwrap().coeff(2) - c(-1.0 / 224.0)).norm() < 1e-17);
        assert!((libera(&h).unwrap().coeff(2) - c(-1.0 / 168.0)).norm() < 1e-17);
    }

    #[test]
    fn nonzero_constant_is_rejected() {
        let s = PowerSeries::from_real(&[1.0, 1.0]);
        assert!(matches!(alexander(&s), Err(Error::Domain(_))));
        assert!(matches!(libera(&s), Err(Error::Domain(_))));
    }

    #[test]
    fn hadamard_identities() {
        let h = lommel_h_coeffs(&LommelParams::real(8.0, 3.0).unwrap(), 30).unwrap();
        assert_eq!(hadamard(&h, &identity_kernel(30)).coeffs(), h.coeffs());
        let zero = PowerSeries::zero(30);
        assert_eq!(hadamard(&zero, &h).coeffs(), zero.coeffs());
        let short = hadamard(&h, &identity_kernel(5));
        assert_eq!(short.truncation_order(), 5);
    }

    #[test]
    fn f_equation_residual() {
        let lp = LommelParams::real(8.0, 3.0).unwrap();
        for z in [c(0.0), c(0.5), Complex64::new(-0.3, 0.9)] {
            assert!(ode_residual_f(&lp, z).unwrap() <= 1e-11);
        }
    }
}
