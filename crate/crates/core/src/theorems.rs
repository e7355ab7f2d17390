//! Sufficient conditions for the lemniscate properties of `u_p`, `h_{μ,p}` and
//! `f_{μ,p} = A[h_{μ,p}]`, paired with sampled subordination verdicts.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lemniscate::{
    subordination_check, DiskSamplingPlan, FunctionalKind, SubordinationVerdict,
};
use crate::special::{bessel_u, lommel_h, BesselParams, LommelParams};
use crate::transforms::alexander;

const SQRT_2: f64 = std::f64::consts::SQRT_2;

/// `√(9/8 + 1/√2)`, evaluated through the identity `(1 + 1/(2√2))² = 9/8 + 1/√2`.
pub fn lemniscate_constant() -> f64 {
    1.0 + 1.0 / (2.0 * SQRT_2)
}

/// Right-hand side shared by the `h` and `f` convexity conditions, without the
/// trailing additive constant.
fn convexity_rhs_base() -> f64 {
    13.0 * 3f64.sqrt() / 4.0 - 15.0 / (8.0 * SQRT_2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    /// `(−4κ/c) u′_p ≺ √(1+z)`
    #[serde(rename = "T1_u_prime")]
    T1UPrime,
    /// `u_p` lemniscate convex
    #[serde(rename = "T2_u_convex")]
    T2UConvex,
    /// `z u_p` lemniscate starlike
    #[serde(rename = "C1_zu_starlike")]
    C1ZuStarlike,
    /// `h_{μ,p}` lemniscate convex
    #[serde(rename = "T3_h_convex")]
    T3HConvex,
    /// `f_{μ,p}` lemniscate convex
    #[serde(rename = "T4_f_convex")]
    T4FConvex,
    /// `f′_{μ,p} = h_{μ,p}/z ≺ √(1+z)`
    #[serde(rename = "T5_f_prime")]
    T5FPrime,
}

impl TheoremId {
    pub const ALL: [TheoremId; 6] = [
        TheoremId::T1UPrime,
        TheoremId::T2UConvex,
        TheoremId::C1ZuStarlike,
        TheoremId::T3HConvex,
        TheoremId::T4FConvex,
        TheoremId::T5FPrime,
    ];
    pub const BESSEL: [TheoremId; 3] = [
        TheoremId::T1UPrime,
        TheoremId::T2UConvex,
        TheoremId::C1ZuStarlike,
    ];
    pub const LOMMEL: [TheoremId; 3] = [
        TheoremId::T3HConvex,
        TheoremId::T4FConvex,
        TheoremId::T5FPrime,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            TheoremId::T1UPrime => "T1_u_prime",
            TheoremId::T2UConvex => "T2_u_convex",
            TheoremId::C1ZuStarlike => "C1_zu_starlike",
            TheoremId::T3HConvex => "T3_h_convex",
            TheoremId::T4FConvex => "T4_f_convex",
            TheoremId::T5FPrime => "T5_f_prime",
        }
    }

    pub fn short(&self) -> &'static str {
        &self.as_str()[..2]
    }

    pub fn family(&self) -> Family {
        match self {
            TheoremId::T1UPrime | TheoremId::T2UConvex | TheoremId::C1ZuStarlike => Family::Bessel,
            _ => Family::Lommel,
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| s.eq_ignore_ascii_case(t.as_str()) || s.eq_ignore_ascii_case(t.short()))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown theorem id {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Bessel,
    Lommel,
}

impl Family {
    pub fn as_str(&self) -> &'static str {
        match self {
            Family::Bessel => "bessel",
            Family::Lommel => "lommel",
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bessel" => Ok(Family::Bessel),
            "lommel" => Ok(Family::Lommel),
            _ => Err(Error::InvalidParameter(format!("unknown family {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Params {
    Bessel(BesselParams),
    Lommel(LommelParams),
}

impl Params {
    pub fn family(&self) -> Family {
        match self {
            Params::Bessel(_) => Family::Bessel,
            Params::Lommel(_) => Family::Lommel,
        }
    }

    fn bessel(&self, what: &'static str) -> Result<&BesselParams> {
        match self {
            Params::Bessel(bp) => Ok(bp),
            Params::Lommel(_) => Err(Error::FamilyMismatch {
                theorem: what,
                family: "lommel",
            }),
        }
    }

    fn lommel(&self, what: &'static str) -> Result<&LommelParams> {
        match self {
            Params::Lommel(lp) => Ok(lp),
            Params::Bessel(_) => Err(Error::FamilyMismatch {
                theorem: what,
                family: "bessel",
            }),
        }
    }
}

impl From<BesselParams> for Params {
    fn from(p: BesselParams) -> Self {
        Params::Bessel(p)
    }
}

impl From<LommelParams> for Params {
    fn from(p: LommelParams) -> Self {
        Params::Lommel(p)
    }
}

fn require_nonzero_c(bp: &BesselParams) -> Result<()> {
    if bp.c() == Complex64::new(0.0, 0.0) {
        return Err(Error::InvalidParameter("c != 0 violated".to_string()));
    }
    Ok(())
}

fn require_real(lp: &LommelParams, what: &str) -> Result<()> {
    if !lp.is_real() {
        return Err(Error::InvalidParameter(format!(
            "{what} requires real mu and p"
        )));
    }
    Ok(())
}

/// `3μ/(2√2) − √3 |((μ+1)²−p²)/4 − 2μ − 2| − (13√3/4 − 15/(8√2))`, before the
/// additive constant that distinguishes the `h` and `f` conditions.
fn convexity_slack_base(lp: &LommelParams) -> f64 {
    let mu = lp.mu().re;
    let inner = lp.quarter_gap() - 2.0 * lp.mu() - 2.0;
    3.0 * mu / (2.0 * SQRT_2) - 3f64.sqrt() * inner.norm() - convexity_rhs_base()
}

/// `Re μ/(2√2) + 3/(8√2) − √3 |((μ+1)² − p²)/divisor|`.
fn caratheodory_slack(lp: &LommelParams, divisor: f64) -> f64 {
    let gap = lp.quarter_gap() * 4.0 / divisor;
    lp.mu().re / (2.0 * SQRT_2) + 3.0 / (8.0 * SQRT_2) - 3f64.sqrt() * gap.norm()
}

/// Signed distance by which the sufficient condition of `theorem` holds:
/// positive iff the condition is satisfied.
///
/// For T5 the statement's divisor 2 is used and the slack is additionally
/// capped by `Re μ + 1` so that `Re μ <= −1` reports a nonpositive slack.
pub fn condition_slack(theorem: TheoremId, params: &Params) -> Result<f64> {
    let what = theorem.as_str();
    match theorem {
        TheoremId::T1UPrime => {
            let bp = params.bessel(what)?;
            require_nonzero_c(bp)?;
            Ok(bp.kappa().re - (bp.c().norm() - 0.75).max(0.0))
        }
        TheoremId::T2UConvex => {
            let bp = params.bessel(what)?;
            require_nonzero_c(bp)?;
            Ok(lemniscate_constant()
                - (3f64.sqrt() * (bp.kappa() - 2.0).norm() + bp.c().norm() / 4.0))
        }
        TheoremId::C1ZuStarlike => {
            let bp = params.bessel(what)?;
            Ok(lemniscate_constant()
                - (3f64.sqrt() * (bp.kappa() - 3.0).norm() + bp.c().norm() / 4.0))
        }
        TheoremId::T3HConvex => {
            let lp = params.lommel(what)?;
            require_real(lp, what)?;
            Ok(convexity_slack_base(lp) - 0.5)
        }
        TheoremId::T4FConvex => {
            let lp = params.lommel(what)?;
            require_real(lp, what)?;
            Ok(convexity_slack_base(lp) - 0.25)
        }
        TheoremId::T5FPrime => {
            let lp = params.lommel(what)?;
            Ok(caratheodory_slack(lp, 2.0).min(lp.mu().re + 1.0))
        }
    }
}

/// T5 slack with the divisor 4 that the admissibility argument actually needs.
pub fn t5_proof_slack(params: &LommelParams) -> f64 {
    caratheodory_slack(params, 4.0).min(params.mu().re + 1.0)
}

/// Lower bound `(2MN − 4M − 3N)/(N(2M − 3))` for `|h′_{μ,p}|` on the disk.
pub fn hprime_lower_bound(params: &LommelParams) -> Result<f64> {
    require_real(params, "the |h'| lower bound")?;
    let m = params.m().re;
    let n = params.n().re;
    if m <= 1.5 {
        return Err(Error::InvalidParameter(format!(
            "M = (mu+5)^2 - p^2 > 3/2 violated (M = {m})"
        )));
    }
    if n == 0.0 {
        return Err(Error::InvalidParameter(
            "N = (mu+3)^2 - p^2 != 0 violated".to_string(),
        ));
    }
    Ok((2.0 * m * n - 4.0 * m - 3.0 * n) / (n * (2.0 * m - 3.0)))
}

/// A theorem's condition paired with the sampled verdict of its conclusion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem_id: TheoremId,
    pub params: Params,
    pub condition_holds: bool,
    pub condition_slack: f64,
    /// T5 only: slack with the divisor 4 used in the admissibility argument.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub proof_slack: Option<f64>,
    pub verdict: SubordinationVerdict,
    /// False only for a counterexample: condition holds, verdict conclusively fails.
    pub consistent: bool,
}

/// Evaluates the condition of `theorem` and samples the matching subordination.
pub fn verify_theorem(
    theorem: TheoremId,
    params: &Params,
    plan: &DiskSamplingPlan,
) -> Result<TheoremReport> {
    let slack = condition_slack(theorem, params)?;
    let (verdict, proof_slack) = match theorem {
        TheoremId::T1UPrime | TheoremId::T2UConvex | TheoremId::C1ZuStarlike => {
            let bp = params.bessel(theorem.as_str())?;
            let u = bessel_u(bp)?;
            let verdict = match theorem {
                TheoremId::T1UPrime => {
                    let scale = -4.0 * bp.kappa() / bp.c();
                    subordination_check(FunctionalKind::CaratheodoryScaled, &u, Some(scale), plan)?
                }
                TheoremId::T2UConvex => {
                    subordination_check(FunctionalKind::Convexity, &u, None, plan)?
                }
                _ => subordination_check(FunctionalKind::Starlikeness, &u.mul_z(), None, plan)?,
            };
            (verdict, None)
        }
        TheoremId::T3HConvex | TheoremId::T4FConvex | TheoremId::T5FPrime => {
            let lp = params.lommel(theorem.as_str())?;
            let h = lommel_h(lp)?;
            match theorem {
                TheoremId::T3HConvex => (
                    subordination_check(FunctionalKind::Convexity, &h, None, plan)?,
                    None,
                ),
                TheoremId::T4FConvex => (
                    subordination_check(FunctionalKind::Convexity, &alexander(&h)?, None, plan)?,
                    None,
                ),
                _ => {
                    // f′ = h/z, the derivative of the Alexander transform
                    let one = Complex64::new(1.0, 0.0);
                    let verdict = subordination_check(
                        FunctionalKind::CaratheodoryScaled,
                        &alexander(&h)?,
                        Some(one),
                        plan,
                    )?;
                    (verdict, Some(t5_proof_slack(lp)))
                }
            }
        }
    };
    let condition_holds = slack > 0.0;
    let consistent = !(condition_holds && verdict.is_conclusive() && !verdict.holds);
    Ok(TheoremReport {
        theorem_id: theorem,
        params: *params,
        condition_holds,
        condition_slack: slack,
        proof_slack,
        verdict,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bessel(p: f64, b: f64, c: f64) -> Params {
        BesselParams::new(
            Complex64::new(p, 0.0),
            Complex64::new(b, 0.0),
            Complex64::new(c, 0.0),
        )
        .unwrap()
        .into()
    }

    fn lommel(mu: f64, p: f64) -> Params {
        LommelParams::real(mu, p).unwrap().into()
    }

    #[test]
    fn constant_identity() {
        let k = lemniscate_constant();
        assert!((k * k - (9.0 / 8.0 + 1.0 / SQRT_2)).abs() <= 1e-15);
    }

    #[test]
    fn slack_examples() {
        let s = condition_slack(TheoremId::T2UConvex, &bessel(1.0, 1.0, 1.0)).unwrap();
        assert!((s - (lemniscate_constant() - 0.25)).abs() < 1e-15);
        assert!((s - 1.1036).abs() < 1e-4);

        let s = condition_slack(TheoremId::T2UConvex, &bessel(3.0, 1.0, 1.0)).unwrap();
        assert!((s - (lemniscate_constant() - 2.0 * 3f64.sqrt() - 0.25)).abs() < 1e-14);
        assert!(s < 0.0);

        let s = condition_slack(TheoremId::T3HConvex, &lommel(8.0, 3.0)).unwrap();
        assert!((s - 3.682).abs() < 1e-3);

        let s = condition_slack(TheoremId::T1UPrime, &bessel(1.0, 1.0, 4.0)).unwrap();
        assert!((s - (2.0 - 3.25)).abs() < 1e-15);
    }

    #[test]
    fn t4_minus_t3_is_a_quarter() {
        for (mu, p) in [(8.0, 3.0), (2.5, 0.3), (13.0, 7.5)] {
            let params = lommel(mu, p);
            let t3 = condition_slack(TheoremId::T3HConvex, &params).unwrap();
            let t4 = condition_slack(TheoremId::T4FConvex, &params).unwrap();
            assert!((t4 - t3 - 0.25).abs() < 1e-14);
        }
    }

    #[test]
    fn slack_errors() {
        assert!(matches!(
            condition_slack(TheoremId::T1UPrime, &bessel(1.0, 1.0, 0.0)),
            Err(Error::InvalidParameter(m)) if m.contains("c != 0")
        ));
        assert!(condition_slack(TheoremId::T2UConvex, &bessel(1.0, 1.0, 0.0)).is_err());
        assert!(matches!(
            condition_slack(TheoremId::T3HConvex, &bessel(1.0, 1.0, 1.0)),
            Err(Error::FamilyMismatch { .. })
        ));
        assert!(matches!(
            condition_slack(TheoremId::T1UPrime, &lommel(8.0, 3.0)),
            Err(Error::FamilyMismatch { .. })
        ));
    }

    #[test]
    fn hprime_bound_values() {
        let lp = LommelParams::real(8.0, 3.0).unwrap();
        let b = hprime_lower_bound(&lp).unwrap();
        assert!((b - 34864.0 / 35504.0).abs() < 1e-15);
        // M = (μ+5)² − p² <= 3/2
        assert!(hprime_lower_bound(&LommelParams::real(-5.0, 0.5).unwrap()).is_err());
    }

    #[test]
    fn theorem_ids_parse() {
        assert_eq!("T2".parse::<TheoremId>().unwrap(), TheoremId::T2UConvex);
        assert_eq!(
            "c1_zu_starlike".parse::<TheoremId>().unwrap(),
            TheoremId::C1ZuStarlike
        );
        assert!("T9".parse::<TheoremId>().is_err());
    }

    #[test]
    fn sinc_is_lemniscate_convex() {
        let report = verify_theorem(
            TheoremId::T2UConvex,
            &bessel(0.5, 1.0, 1.0),
            &DiskSamplingPlan::default(),
        )
        .unwrap();
        assert!((report.condition_slack - 0.2375).abs() < 1e-4);
        assert!(report.condition_holds && report.verdict.holds && report.consistent);
    }

    #[test]
    fn failing_condition_is_still_consistent() {
        let report = verify_theorem(
            TheoremId::T2UConvex,
            &bessel(3.0, 1.0, 1.0),
            &DiskSamplingPlan::default(),
        )
        .unwrap();
        assert!(!report.condition_holds);
        assert!(report.consistent);
    }
}
