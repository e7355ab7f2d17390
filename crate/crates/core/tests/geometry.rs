use lemni::lemniscate::{
    right_lemniscate_margin, subordination_check, DiskSamplingPlan, FunctionalKind, VerdictStatus,
};
use lemni::series::PowerSeries;
use lemni::special::{bessel_u, BesselParams, LommelParams};
use lemni::theorems::{verify_theorem, Params, TheoremId};
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `z e^{az}`; its starlikeness functional is `1 + az`.
fn z_exp(a: f64) -> PowerSeries {
    let mut coeffs = vec![0.0, 1.0];
    for n in 1..40 {
        coeffs.push(coeffs[n] * a / n as f64);
    }
    PowerSeries::from_real(&coeffs)
}

#[test]
fn starlikeness_matches_brute_force_oracle() {
    let plan = DiskSamplingPlan::default();
    for a in [1.0 / 3.0, 1.0] {
        let verdict =
            subordination_check(FunctionalKind::Starlikeness, &z_exp(a), None, &plan).unwrap();
        let oracle = plan
            .points()
            .map(|z| right_lemniscate_margin(1.0 + a * z))
            .fold(f64::INFINITY, f64::min);
        assert!((verdict.min_margin - oracle).abs() < 1e-12, "a = {a}");
        assert_eq!(verdict.holds, oracle > plan.margin_threshold());
    }
}

#[test]
fn starlikeness_of_z_exp_z_fails() {
    let verdict = subordination_check(
        FunctionalKind::Starlikeness,
        &z_exp(1.0),
        None,
        &DiskSamplingPlan::default(),
    )
    .unwrap();
    assert_eq!(verdict.status, VerdictStatus::Fails);
    assert!(verdict.worst_z.re > 0.9);
}

#[test]
fn verdicts_are_deterministic() {
    let plan = DiskSamplingPlan::default();
    let params: Params = LommelParams::real(8.0, 3.0).unwrap().into();
    let a = verify_theorem(TheoremId::T4FConvex, &params, &plan).unwrap();
    let b = verify_theorem(TheoremId::T4FConvex, &params, &plan).unwrap();
    assert_eq!(a, b);
}

#[test]
fn starlike_functional_chains_to_next_order() {
    // 1 + z u_p′/u_p = 1 − c z u_{p+1}/(4κ u_p)
    let params = BesselParams::new(c(2.5, 0.4), c(1.0, 0.0), c(1.7, -0.8)).unwrap();
    let u = bessel_u(&params).unwrap();
    let up = bessel_u(&params.raised().unwrap()).unwrap();
    let ctl = lemni::TruncationControl::default();
    for z in DiskSamplingPlan::default().points().step_by(37) {
        let direct =
            lemni::lemniscate::functional_value(FunctionalKind::Starlikeness, &u.mul_z(), None, z)
                .unwrap();
        let chained = 1.0
            - params.c() * z * up.eval(z, &ctl).unwrap()
                / (4.0 * params.kappa() * u.eval(z, &ctl).unwrap());
        assert!((direct - chained).norm() < 1e-10, "z = {z}");
    }
}

#[test]
fn convex_verdicts_are_strongly_convex() {
    let one = c(1.0, 0.0);
    let u = bessel_u(&BesselParams::new(c(0.5, 0.0), one, one).unwrap()).unwrap();
    let v = subordination_check(
        FunctionalKind::Convexity,
        &u,
        None,
        &DiskSamplingPlan::default(),
    )
    .unwrap();
    assert!(v.holds && v.strongly_convex());
    assert_eq!(v.circles.len(), 4);
}

proptest! {
    #[test]
    fn lemniscate_membership_pulls_back_to_disk(r in 0.0f64..0.999, t in 0.0f64..std::f64::consts::TAU) {
        let zeta = Complex64::from_polar(r, t);
        let w = (1.0 + zeta).sqrt();
        prop_assert!(right_lemniscate_margin(w) > 0.0);
    }

    #[test]
    fn positive_margin_means_inside(re in -0.5f64..2.0, im in -1.0f64..1.0) {
        let w = c(re, im);
        let margin = right_lemniscate_margin(w);
        let inside = (w * w - 1.0).norm() < 1.0 && w.re > 0.0;
        prop_assert_eq!(margin > 0.0, inside);
    }
}
