use lemni::series::TruncationControl;
use lemni::special::{
    bessel_i_normalized, bessel_j_normalized, bessel_u, bessel_u_coeffs, lommel_h, lommel_h_coeffs,
    ode_residual_h, ode_residual_h_as_printed, BesselParams, LommelParams,
};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn disk_point(rng: &mut impl Rng, radius: f64) -> Complex64 {
    Complex64::from_polar(
        radius * rng.gen::<f64>().sqrt(),
        rng.gen_range(0.0..std::f64::consts::TAU),
    )
}

#[test]
fn derivative_matches_central_difference() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let ctl = TruncationControl::default();
    for _ in 0..20 {
        let params = BesselParams::new(
            c(rng.gen_range(0.0..3.0), 0.0),
            c(1.0, 0.0),
            c(rng.gen_range(-3.0..3.0), 0.5),
        )
        .unwrap();
        let u = bessel_u(&params).unwrap();
        let du = u.derivative();
        let z = disk_point(&mut rng, 0.9);
        let h = 1e-5;
        let fd = (u.eval(z + h, &ctl).unwrap() - u.eval(z - h, &ctl).unwrap()) / (2.0 * h);
        assert!((du.eval(z, &ctl).unwrap() - fd).norm() < 1e-8, "z = {z}");
    }
}

#[test]
fn bessel_coefficients_follow_ratio_recurrence() {
    let params = BesselParams::new(c(1.2, 0.3), c(0.7, 0.0), c(-2.0, 1.5)).unwrap();
    let u = bessel_u_coeffs(&params, 40).unwrap();
    let kappa = params.kappa();
    assert_eq!(u.coeff(0), c(1.0, 0.0));
    for n in 0..40 {
        let want = u.coeff(n) * (-params.c() / 4.0) / ((kappa + n as f64) * (n + 1) as f64);
        assert!((u.coeff(n + 1) - want).norm() <= 1e-13 * want.norm().max(1e-300));
    }
}

#[test]
fn lommel_coefficients_follow_ratio_recurrence() {
    let params = LommelParams::real(7.5, 2.25).unwrap();
    let h = lommel_h_coeffs(&params, 30).unwrap();
    assert_eq!(h.coeff(0), c(0.0, 0.0));
    assert_eq!(h.coeff(1), c(1.0, 0.0));
    for n in 0..29 {
        let want = h.coeff(n + 1) * (-0.25) / ((params.k() + n as f64) * (params.f() + n as f64));
        assert!((h.coeff(n + 2) - want).norm() <= 1e-13 * want.norm().max(1e-300));
        assert_eq!(h.coeff(n + 1).im, 0.0);
    }
}

#[test]
fn first_and_modified_kind_agree_with_series() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let ctl = TruncationControl::default();
    for _ in 0..25 {
        let p = c(rng.gen_range(-0.4..4.0), rng.gen_range(-0.5..0.5));
        let z = disk_point(&mut rng, 0.999);
        let one = c(1.0, 0.0);
        let j = bessel_u(&BesselParams::new(p, one, one).unwrap())
            .unwrap()
            .eval(z, &ctl)
            .unwrap();
        let i = bessel_u(&BesselParams::new(p, one, -one).unwrap())
            .unwrap()
            .eval(z, &ctl)
            .unwrap();
        assert!((j - bessel_j_normalized(p, z).unwrap()).norm() < 1e-12);
        assert!((i - bessel_i_normalized(p, z).unwrap()).norm() < 1e-12);
    }
}

#[test]
fn printed_h_equation_leaves_mu_h() {
    let params = LommelParams::real(8.0, 3.0).unwrap();
    let z = c(0.5, 0.0);
    let h = lommel_h(&params)
        .unwrap()
        .eval(z, &TruncationControl::default())
        .unwrap();
    assert!(ode_residual_h(&params, z).unwrap() < 1e-13);
    let printed = ode_residual_h_as_printed(&params, z).unwrap();
    assert!((printed - (params.mu() * h).norm()).abs() < 1e-12);
}

#[test]
fn invalid_parameters_name_the_invariant() {
    let err = BesselParams::new(c(-1.5, 0.0), c(0.0, 0.0), c(1.0, 0.0)).unwrap_err();
    assert!(err.to_string().contains("kappa"));
    assert!(LommelParams::real(0.0, 3.0).is_err());
}

proptest! {
    #[test]
    fn real_lommel_series_has_real_coefficients(mu in 0.0f64..16.0, p in 0.0f64..8.0) {
        prop_assume!(LommelParams::real(mu, p).is_ok());
        let h = lommel_h(&LommelParams::real(mu, p).unwrap()).unwrap();
        prop_assert!(h.coeffs().iter().all(|a| a.im == 0.0 && a.re.is_finite()));
    }

    #[test]
    fn u_ode_holds(kappa in 0.5f64..6.0, cre in -4.0f64..4.0, r in 0.0f64..0.999, t in 0.0f64..std::f64::consts::TAU) {
        let params = BesselParams::from_kappa(c(kappa, 0.0), c(cre, 0.0)).unwrap();
        let z = Complex64::from_polar(r, t);
        prop_assert!(lemni::special::ode_residual_u(&params, z).unwrap() < 1e-11);
    }
}
