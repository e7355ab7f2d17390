use lemni::series::{PowerSeries, TruncationControl};
use lemni::special::{lommel_h, LommelParams};
use lemni::transforms::{alexander, hadamard, identity_kernel, libera, libera_kernel, log_kernel};
use num_complex::Complex64;
use proptest::prelude::*;

fn normalized(coeffs: &[f64]) -> PowerSeries {
    let mut all = vec![0.0, 1.0];
    all.extend_from_slice(coeffs);
    PowerSeries::from_real(&all)
}

fn close(a: &PowerSeries, b: &PowerSeries, tol: f64) -> bool {
    let n = a.truncation_order().max(b.truncation_order());
    (0..=n).all(|k| (a.coeff(k) - b.coeff(k)).norm() <= tol)
}

#[test]
fn alexander_inverts_z_times_derivative() {
    let h = lommel_h(&LommelParams::real(8.0, 3.0).unwrap()).unwrap();
    let f = alexander(&h).unwrap();
    assert!(close(&f.derivative().mul_z(), &h, 1e-15));
}

#[test]
fn libera_satisfies_its_differential_relation() {
    // (zL)′ = 2h
    let h = lommel_h(&LommelParams::real(9.0, 4.0).unwrap()).unwrap();
    let l = libera(&h).unwrap();
    assert!(close(
        &l.mul_z().derivative(),
        &h.scale(Complex64::new(2.0, 0.0)),
        1e-15
    ));
}

#[test]
fn transforms_reject_nonzero_constant() {
    let s = PowerSeries::from_real(&[1.0, 1.0]);
    assert!(alexander(&s).is_err());
    assert!(libera(&s).is_err());
}

#[test]
fn alexander_of_h_agrees_with_quadrature() {
    let h = lommel_h(&LommelParams::real(10.0, 5.5).unwrap()).unwrap();
    let f = alexander(&h).unwrap();
    let ctl = TruncationControl::default();
    let z = Complex64::from_polar(0.8, 0.9);
    // Simpson on t = sz, integrand h(t)/t = h(sz)/s
    let n = 400;
    let g = |s: f64| {
        if s == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            h.eval(z * s, &ctl).unwrap() / (z * s)
        }
    };
    let mut acc = g(0.0) + g(1.0);
    for k in 1..n {
        acc += g(k as f64 / n as f64) * if k % 2 == 1 { 4.0 } else { 2.0 };
    }
    let quad = acc * z / (3.0 * n as f64);
    assert!((quad - f.eval(z, &ctl).unwrap()).norm() < 1e-11);
}

proptest! {
    #[test]
    fn hadamard_algebra(a in prop::collection::vec(-1.0f64..1.0, 10),
                        b in prop::collection::vec(-1.0f64..1.0, 10),
                        d in prop::collection::vec(-1.0f64..1.0, 10)) {
        let (a, b, d) = (normalized(&a), normalized(&b), normalized(&d));
        prop_assert!(close(&hadamard(&a, &b), &hadamard(&b, &a), 0.0));
        prop_assert!(close(&hadamard(&hadamard(&a, &b), &d), &hadamard(&a, &hadamard(&b, &d)), 1e-15));
        prop_assert!(close(&hadamard(&a, &identity_kernel(11)), &a, 0.0));
        prop_assert!(close(&hadamard(&a, &log_kernel(11)), &alexander(&a).unwrap(), 1e-16));
        prop_assert!(close(&hadamard(&a, &libera_kernel(11)), &libera(&a).unwrap(), 1e-16));
    }
}
