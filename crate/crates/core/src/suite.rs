//! The reproduction suite: each item checks one published identity, constant
//! or geometric conclusion at a fixed tolerance and runtime budget.

use std::f64::consts::{FRAC_PI_4, PI};
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::admissibility::{admissibility_scan, ProofId, ScanGrid};
use crate::error::Result;
use crate::lemniscate::{
    subordination_check, DiskSamplingPlan, FunctionalKind, SubordinationVerdict,
};
use crate::scan::{Axis, RegionScan};
use crate::series::{PowerSeries, TruncationControl};
use crate::special::{
    bessel_u, closed_form, lommel_h, ode_residual_h, ode_residual_u, recurrence_residual_of,
    BesselParams, ClosedForm, LommelParams,
};
use crate::theorems::{
    condition_slack, hprime_lower_bound, lemniscate_constant, verify_theorem, Family, Params,
    TheoremId,
};
use crate::transforms::{alexander, libera, ode_residual_f};

pub const RESIDUAL_TOL: f64 = 1e-11;
pub const CLOSED_FORM_TOL: f64 = 1e-12;
pub const CONSTANT_TOL: f64 = 1e-15;
pub const PSI_TOL: f64 = 1e-9;
pub const HPRIME_TOL: f64 = 1e-6;
/// `(2MN − 4M − 3N)/(N(2M − 3))` at `(μ, p) = (8, 3)`, rounded.
pub const HPRIME_BOUND_83: f64 = 0.981974;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SuiteItem {
    pub id: u8,
    pub name: &'static str,
    pub budget_secs: f64,
}

pub const ITEMS: [SuiteItem; 12] = [
    SuiteItem {
        id: 1,
        name: "recurrence_identity",
        budget_secs: 1.0,
    },
    SuiteItem {
        id: 2,
        name: "ode_residuals",
        budget_secs: 1.0,
    },
    SuiteItem {
        id: 3,
        name: "closed_form_equivalences",
        budget_secs: 1.0,
    },
    SuiteItem {
        id: 4,
        name: "exact_constant",
        budget_secs: 1.0,
    },
    SuiteItem {
        id: 5,
        name: "lemniscate_convexity",
        budget_secs: 10.0,
    },
    SuiteItem {
        id: 6,
        name: "lemniscate_starlikeness",
        budget_secs: 5.0,
    },
    SuiteItem {
        id: 7,
        name: "caratheodory_verdicts",
        budget_secs: 5.0,
    },
    SuiteItem {
        id: 8,
        name: "transform_convexity",
        budget_secs: 5.0,
    },
    SuiteItem {
        id: 9,
        name: "admissibility_scans",
        budget_secs: 30.0,
    },
    SuiteItem {
        id: 10,
        name: "region_scan_soundness",
        budget_secs: 300.0,
    },
    SuiteItem {
        id: 11,
        name: "hprime_lower_bound",
        budget_secs: 1.0,
    },
    SuiteItem {
        id: 12,
        name: "strong_convexity",
        budget_secs: 10.0,
    },
];

/// Deliberate corruptions used to check that the suite detects faults.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Negate the `z²` coefficient of `u_p` before the recurrence check.
    FlipB2Sign,
}

#[derive(Debug, Clone, Default)]
pub struct SuiteOptions {
    pub fault: Option<Fault>,
    pub workers: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ItemOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_secs: f64,
}

pub fn item(id: u8) -> Option<SuiteItem> {
    ITEMS.iter().copied().find(|i| i.id == id)
}

/// Runs one item; errors inside an item count as a failure of that item.
pub fn run_item(id: u8, options: &SuiteOptions) -> ItemOutcome {
    let entry = item(id).unwrap_or_else(|| panic!("no suite item {id}"));
    let start = Instant::now();
    let result = match id {
        1 => recurrence_identity(options),
        2 => ode_residuals(),
        3 => closed_form_equivalences(),
        4 => exact_constant(),
        5 => lemniscate_convexity(),
        6 => lemniscate_starlikeness(),
        7 => caratheodory_verdicts(),
        8 => transform_convexity(),
        9 => admissibility_scans(),
        10 => region_scan_soundness(options),
        11 => hprime_bound(),
        12 => strong_convexity(),
        _ => unreachable!(),
    };
    let elapsed = start.elapsed().as_secs_f64();
    let (mut passed, mut detail) = match result {
        Ok(check) => (check.passed, check.detail),
        Err(e) => (false, format!("error: {e}")),
    };
    if elapsed > entry.budget_secs {
        passed = false;
        detail.push_str(&format!(
            "; runtime {elapsed:.2}s exceeds budget {}s",
            entry.budget_secs
        ));
    }
    ItemOutcome {
        id,
        name: entry.name,
        passed,
        detail,
        elapsed_secs: elapsed,
    }
}

pub fn run_all(options: &SuiteOptions) -> Vec<ItemOutcome> {
    ITEMS.iter().map(|i| run_item(i.id, options)).collect()
}

struct Check {
    passed: bool,
    detail: String,
}

impl Check {
    fn new(passed: bool, detail: String) -> Self {
        Self { passed, detail }
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform point in the disk of the given radius.
fn disk_point(rng: &mut impl Rng, radius: f64) -> Complex64 {
    let r = radius * rng.gen::<f64>().sqrt();
    Complex64::from_polar(r, 2.0 * PI * rng.gen::<f64>())
}

/// `κ ∈ [0.5, 6]`, `b ∈ [0, 2]`, `|c| <= 4` with uniform phase.
fn draw_bessel(rng: &mut impl Rng) -> Result<BesselParams> {
    let kappa = rng.gen_range(0.5..=6.0);
    let b = rng.gen_range(0.0..=2.0);
    let cc = Complex64::from_polar(rng.gen_range(0.0..=4.0), rng.gen_range(0.0..2.0 * PI));
    BesselParams::new(c(kappa - (b + 1.0) / 2.0, 0.0), c(b, 0.0), cc)
}

fn draw_lommel(rng: &mut impl Rng) -> Result<LommelParams> {
    loop {
        let mu = rng.gen_range(0.0..=16.0);
        let p = rng.gen_range(0.0..=8.0);
        if let Ok(lp) = LommelParams::real(mu, p) {
            return Ok(lp);
        }
    }
}

/// Rejection-samples Bessel parameters with `κ = centre + ρe^{iφ}` whose
/// condition slack for `theorem` is positive.
fn draw_satisfying(
    rng: &mut impl Rng,
    theorem: TheoremId,
    centre: f64,
    spread: f64,
    c_max: f64,
) -> Result<BesselParams> {
    loop {
        let kappa = centre
            + Complex64::from_polar(rng.gen_range(0.0..spread), rng.gen_range(0.0..2.0 * PI));
        let cc = Complex64::from_polar(rng.gen_range(0.05..c_max), rng.gen_range(0.0..2.0 * PI));
        let b = rng.gen_range(0.0..=2.0);
        let bp = BesselParams::new(kappa - (b + 1.0) / 2.0, c(b, 0.0), cc)?;
        if condition_slack(theorem, &bp.into())? > 0.0 {
            return Ok(bp);
        }
    }
}

fn recurrence_identity(options: &SuiteOptions) -> Result<Check> {
    let mut rng = rng(1);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let bp = draw_bessel(&mut rng)?;
        let z = disk_point(&mut rng, 0.999);
        let mut u = bessel_u(&bp)?;
        if options.fault == Some(Fault::FlipB2Sign) {
            let coeffs = u.coeffs_mut();
            coeffs[2] = -coeffs[2];
        }
        let raised = bessel_u(&bp.raised()?)?;
        worst = worst.max(recurrence_residual_of(&bp, &u, &raised, z)?);
    }
    Ok(Check::new(
        worst <= RESIDUAL_TOL,
        format!("max |4k u'_p + c u_(p+1)| = {worst:.3e} over 100 draws (tol {RESIDUAL_TOL:e})"),
    ))
}

fn ode_residuals() -> Result<Check> {
    let mut rng = rng(2);
    let mut worst_u = 0.0f64;
    for _ in 0..100 {
        let bp = draw_bessel(&mut rng)?;
        worst_u = worst_u.max(ode_residual_u(&bp, disk_point(&mut rng, 0.999))?);
    }
    let mut worst_h = 0.0f64;
    for _ in 0..100 {
        let lp = draw_lommel(&mut rng)?;
        worst_h = worst_h.max(ode_residual_h(&lp, disk_point(&mut rng, 0.999))?);
    }
    Ok(Check::new(
        worst_u <= RESIDUAL_TOL && worst_h <= RESIDUAL_TOL,
        format!(
            "max u residual {worst_u:.3e}, max h residual {worst_h:.3e} (tol {RESIDUAL_TOL:e})"
        ),
    ))
}

fn closed_form_equivalences() -> Result<Check> {
    let ctl = TruncationControl::default();
    let one = c(1.0, 0.0);
    let sinc = bessel_u(&BesselParams::new(c(0.5, 0.0), one, one)?)?;
    let sinhc = bessel_u(&BesselParams::new(c(0.5, 0.0), one, -one)?)?;
    let j32 = bessel_u(&BesselParams::new(c(1.5, 0.0), one, one)?)?;
    let mut rng = rng(3);
    let mut worst = [0.0f64; 3];
    for _ in 0..200 {
        let z = disk_point(&mut rng, 0.999);
        worst[0] =
            worst[0].max((sinc.eval(z, &ctl)? - closed_form(ClosedForm::SincSqrt, z)).norm());
        worst[1] =
            worst[1].max((sinhc.eval(z, &ctl)? - closed_form(ClosedForm::SinhcSqrt, z)).norm());
        worst[2] = worst[2].max((j32.eval(z, &ctl)? - closed_form(ClosedForm::J32Combo, z)).norm());
    }
    Ok(Check::new(
        worst.iter().all(|w| *w <= CLOSED_FORM_TOL),
        format!(
            "max deviations sinc {:.3e}, sinhc {:.3e}, j3/2 {:.3e} over 200 points (tol {CLOSED_FORM_TOL:e})",
            worst[0], worst[1], worst[2]
        ),
    ))
}

fn exact_constant() -> Result<Check> {
    let k = lemniscate_constant();
    let diff = (k * k - (9.0 / 8.0 + 1.0 / std::f64::consts::SQRT_2)).abs();
    Ok(Check::new(
        diff <= CONSTANT_TOL,
        format!("(1 + 1/(2 sqrt 2))^2 - (9/8 + 1/sqrt 2) = {diff:e}"),
    ))
}

/// Named convexity verdicts behind items 5 and 12, with any precondition failures.
/// Labelled verdicts plus any unmet preconditions.
type Cases = (Vec<(String, SubordinationVerdict)>, Vec<String>);

fn convexity_cases() -> Result<Cases> {
    let plan = DiskSamplingPlan::default();
    let one = c(1.0, 0.0);
    let mut verdicts = Vec::new();
    let mut unmet = Vec::new();

    for (label, cc) in [("sin(sqrt z)/sqrt z", one), ("sinh(sqrt z)/sqrt z", -one)] {
        let u = bessel_u(&BesselParams::new(c(0.5, 0.0), one, cc)?)?;
        verdicts.push((
            label.to_string(),
            subordination_check(FunctionalKind::Convexity, &u, None, &plan)?,
        ));
    }

    let mut rng = rng(5);
    for i in 0..10 {
        let bp = draw_satisfying(&mut rng, TheoremId::T2UConvex, 2.0, 0.75, 4.0)?;
        let report = verify_theorem(TheoremId::T2UConvex, &bp.into(), &plan)?;
        verdicts.push((
            format!("u_p draw {i} (kappa {}, c {})", bp.kappa(), bp.c()),
            report.verdict,
        ));
    }

    for (mu, p) in [(8.0, 3.0), (10.0, 3.0), (12.0, 5.0)] {
        let params: Params = LommelParams::real(mu, p)?.into();
        let slack = condition_slack(TheoremId::T3HConvex, &params)?;
        if !(slack > 0.0) {
            unmet.push(format!(
                "T3 slack at (mu, p) = ({mu}, {p}) is {slack:.4} <= 0"
            ));
        }
        let report = verify_theorem(TheoremId::T3HConvex, &params, &plan)?;
        verdicts.push((format!("h({mu}, {p})"), report.verdict));
    }
    Ok((verdicts, unmet))
}

fn describe_failures(verdicts: &[(String, SubordinationVerdict)]) -> Vec<String> {
    verdicts
        .iter()
        .filter(|(_, v)| !v.holds)
        .map(|(name, v)| format!("{name}: {:?} (min margin {:.3e})", v.status, v.min_margin))
        .collect()
}

fn lemniscate_convexity() -> Result<Check> {
    let (verdicts, unmet) = convexity_cases()?;
    let failures = describe_failures(&verdicts);
    let min_margin = verdicts
        .iter()
        .map(|(_, v)| v.min_margin)
        .fold(f64::INFINITY, f64::min);
    let mut detail = format!(
        "{} convexity verdicts, {} failing, smallest margin {min_margin:.4}",
        verdicts.len(),
        failures.len()
    );
    for line in unmet.iter().chain(&failures) {
        detail.push_str("; ");
        detail.push_str(line);
    }
    Ok(Check::new(unmet.is_empty() && failures.is_empty(), detail))
}

fn lemniscate_starlikeness() -> Result<Check> {
    let plan = DiskSamplingPlan::default();
    let mut verdicts = Vec::new();
    let mut rng = rng(6);
    for i in 0..10 {
        let bp = draw_satisfying(&mut rng, TheoremId::C1ZuStarlike, 3.0, 0.75, 4.0)?;
        let report = verify_theorem(TheoremId::C1ZuStarlike, &bp.into(), &plan)?;
        verdicts.push((format!("z u_p draw {i}"), report.verdict));
    }

    // sin√z/√z − cos√z = Σ_{n≥1} (−1)^{n+1} 2n zⁿ/(2n+1)!, against (1/3)·z·u_{3/2,1,1}
    let one = c(1.0, 0.0);
    let zu = bessel_u(&BesselParams::new(c(1.5, 0.0), one, one)?)?
        .mul_z()
        .scale(c(1.0 / 3.0, 0.0));
    let mut taylor = vec![c(0.0, 0.0)];
    let mut fact = 1.0;
    for n in 1..=30usize {
        fact *= (2 * n * (2 * n + 1)) as f64;
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        taylor.push(c(sign * 2.0 * n as f64 / fact, 0.0));
    }
    let coeff_dev = taylor
        .iter()
        .enumerate()
        .map(|(n, a)| (zu.coeff(n) - a).norm() / a.norm().max(f64::MIN_POSITIVE))
        .skip(1)
        .fold(0.0f64, f64::max);
    let reconstructed = PowerSeries::new(taylor);
    verdicts.push((
        "(sin sqrt z - sqrt z cos sqrt z)/sqrt z".to_string(),
        subordination_check(FunctionalKind::Starlikeness, &reconstructed, None, &plan)?,
    ));

    let failures = describe_failures(&verdicts);
    let mut detail = format!(
        "{} starlikeness verdicts, {} failing; series vs Taylor max rel dev {coeff_dev:.2e}",
        verdicts.len(),
        failures.len()
    );
    for f in &failures {
        detail.push_str("; ");
        detail.push_str(f);
    }
    Ok(Check::new(
        failures.is_empty() && coeff_dev <= 1e-13,
        detail,
    ))
}

fn caratheodory_verdicts() -> Result<Check> {
    let plan = DiskSamplingPlan::default();
    let mut verdicts = Vec::new();
    let mut rng = rng(7);
    let mut drawn = 0;
    while drawn < 10 {
        let cc = Complex64::from_polar(rng.gen_range(0.05..4.0), rng.gen_range(0.0..2.0 * PI));
        let floor = (cc.norm() - 0.75).max(0.0);
        let kappa = c(rng.gen_range(floor..6.0), rng.gen_range(-1.0..1.0));
        let bp = BesselParams::new(kappa - 1.0, c(1.0, 0.0), cc)?;
        let params: Params = bp.into();
        if condition_slack(TheoremId::T1UPrime, &params)? <= 0.0 {
            continue;
        }
        let report = verify_theorem(TheoremId::T1UPrime, &params, &plan)?;
        verdicts.push((format!("T1 kappa {kappa}, c {cc}"), report.verdict));
        drawn += 1;
    }

    let mut drawn = 0;
    while drawn < 10 {
        let mu = c(rng.gen_range(-0.9..6.0), rng.gen_range(-0.5..0.5));
        let p =
            (mu + 1.0) * (1.0 + rng.gen_range(-0.05..0.05)) + c(0.0, rng.gen_range(-0.05..0.05));
        let Ok(lp) = LommelParams::new(mu, p) else {
            continue;
        };
        let params: Params = lp.into();
        if condition_slack(TheoremId::T5FPrime, &params)? <= 0.0 {
            continue;
        }
        let report = verify_theorem(TheoremId::T5FPrime, &params, &plan)?;
        verdicts.push((format!("T5 mu {mu}, p {p}"), report.verdict));
        drawn += 1;
    }

    let failures = describe_failures(&verdicts);
    let mut detail = format!(
        "{} Caratheodory-type verdicts, {} failing",
        verdicts.len(),
        failures.len()
    );
    for f in &failures {
        detail.push_str("; ");
        detail.push_str(f);
    }
    Ok(Check::new(failures.is_empty(), detail))
}

fn transform_pairs() -> [(f64, f64); 3] {
    [(8.0, 3.0), (9.0, 4.0), (10.0, 5.5)]
}

fn transform_verdicts() -> Result<Cases> {
    let plan = DiskSamplingPlan::default();
    let mut verdicts = Vec::new();
    let mut unmet = Vec::new();
    for (mu, p) in transform_pairs() {
        let lp = LommelParams::real(mu, p)?;
        let slack = condition_slack(TheoremId::T3HConvex, &lp.into())?;
        if !(slack > 0.0) {
            unmet.push(format!("T3 slack at ({mu}, {p}) is {slack:.4} <= 0"));
        }
        let h = lommel_h(&lp)?;
        for (name, image) in [("A", alexander(&h)?), ("L", libera(&h)?)] {
            let v = subordination_check(FunctionalKind::Convexity, &image, None, &plan)?;
            verdicts.push((format!("{name}[h({mu}, {p})]"), v));
        }
    }
    Ok((verdicts, unmet))
}

fn transform_convexity() -> Result<Check> {
    let (verdicts, unmet) = transform_verdicts()?;
    let mut rng = rng(8);
    let mut worst_ode = 0.0f64;
    for (mu, p) in transform_pairs() {
        let lp = LommelParams::real(mu, p)?;
        for _ in 0..20 {
            worst_ode = worst_ode.max(ode_residual_f(&lp, disk_point(&mut rng, 0.999))?);
        }
    }
    let failures = describe_failures(&verdicts);
    let mut detail = format!(
        "{} transform verdicts, {} failing; max third-order residual {worst_ode:.3e}",
        verdicts.len(),
        failures.len()
    );
    for line in unmet.iter().chain(&failures) {
        detail.push_str("; ");
        detail.push_str(line);
    }
    Ok(Check::new(
        unmet.is_empty() && failures.is_empty() && worst_ode <= RESIDUAL_TOL,
        detail,
    ))
}

fn admissibility_scans() -> Result<Check> {
    let one = c(1.0, 0.0);
    let cases: [(ProofId, Params); 5] = [
        (
            ProofId::P1,
            BesselParams::from_kappa(c(2.0, 0.0), one)?.into(),
        ),
        (ProofId::P2, BesselParams::new(one, one, one)?.into()),
        (ProofId::P3, LommelParams::real(8.0, 3.0)?.into()),
        (ProofId::P4, LommelParams::real(8.0, 3.0)?.into()),
        (ProofId::P5, LommelParams::real(0.2, 1.2)?.into()),
    ];
    let grid = ScanGrid::default();
    let mut passed = true;
    let mut parts = Vec::new();
    for (proof, params) in cases {
        let slack = condition_slack(proof.theorem(), &params)?;
        let report = admissibility_scan(proof, &params, &grid)?;
        let ok = slack > 0.0
            && report.contract_holds
            && report.min_abs_psi >= report.analytic_bound - PSI_TOL
            && report.intermediate_bounds_hold
            && report.arg_min.m < grid.m_max / 2.0;
        passed &= ok;
        parts.push(format!(
            "{proof}: min|psi| {:.6} >= bound {:.6}{}",
            report.min_abs_psi,
            report.analytic_bound,
            if ok { "" } else { " FAILED" }
        ));
    }
    Ok(Check::new(passed, parts.join("; ")))
}

/// Runs the Bessel region scan `κ ∈ [0, 5] × |c| ∈ (0, 3]` at step 0.05.
pub fn acceptance_region_scan(workers: Option<usize>) -> Result<crate::scan::RegionScanReport> {
    RegionScan::new(
        Family::Bessel,
        Axis::new("kappa", 0.0, 5.0, 0.05)?,
        Axis::new("c", 0.0, 3.0, 0.05)?,
        DiskSamplingPlan::default(),
    )?
    .run(workers)
}

fn region_scan_soundness(options: &SuiteOptions) -> Result<Check> {
    let report = acceptance_region_scan(options.workers)?;
    let counterexamples = report.counterexamples().count();
    let gaps_t2 = report
        .sufficiency_gaps()
        .filter(|c| c.theorem == TheoremId::T2UConvex)
        .count();
    let gaps = report.sufficiency_gaps().count();
    Ok(Check::new(
        counterexamples == 0 && gaps_t2 > 0,
        format!(
            "{} rows, {counterexamples} counterexamples, {gaps} sufficiency-gap rows ({gaps_t2} for T2)",
            report.cells.len()
        ),
    ))
}

fn hprime_bound() -> Result<Check> {
    let lp = LommelParams::real(8.0, 3.0)?;
    let bound = hprime_lower_bound(&lp)?;
    let dh = lommel_h(&lp)?.derivative();
    let ctl = TruncationControl::default();
    let mut min_mod = f64::INFINITY;
    for z in DiskSamplingPlan::default().points() {
        min_mod = min_mod.min(dh.eval(z, &ctl)?.norm());
    }
    Ok(Check::new(
        (bound - HPRIME_BOUND_83).abs() < HPRIME_TOL && min_mod >= HPRIME_BOUND_83 - HPRIME_TOL,
        format!("min |h'(z)| = {min_mod:.6} vs bound {bound:.6}"),
    ))
}

fn strong_convexity() -> Result<Check> {
    let (mut verdicts, _) = convexity_cases()?;
    verdicts.extend(transform_verdicts()?.0);
    let holding: Vec<_> = verdicts.iter().filter(|(_, v)| v.holds).collect();
    let worst = holding
        .iter()
        .map(|(_, v)| v.max_abs_arg)
        .fold(0.0f64, f64::max);
    let bad: Vec<_> = holding
        .iter()
        .filter(|(_, v)| !(v.max_abs_arg < FRAC_PI_4))
        .map(|(n, _)| n.as_str())
        .collect();
    Ok(Check::new(
        bad.is_empty(),
        format!(
            "{} holding convexity verdicts, max |arg P| = {worst:.4} < pi/4 = {FRAC_PI_4:.4}{}",
            holding.len(),
            if bad.is_empty() {
                String::new()
            } else {
                format!("; violated by {bad:?}")
            }
        ),
    ))
}
