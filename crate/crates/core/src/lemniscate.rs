//! Membership in the right loop of the lemniscate `|w² − 1| = 1` and sampled
//! subordination checks `P(z) ≺ √(1+z)` for the convexity, starlikeness and
//! scaled Carathéodory functionals.
//!
//! The interior of the right loop is exactly the image of the unit disk under
//! the principal `√(1+z)`, so `P ≺ √(1+z)` reduces (with `P(0) = 1`) to every
//! value `P(z)` lying inside the loop.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{PowerSeries, TruncationControl};

/// Denominator modulus below which a functional is reported as undefined.
pub const DENOMINATOR_GUARD: f64 = 1e-12;

/// Default `min_margin` threshold separating a certified verdict from a
/// boundary-touching one.
pub const DEFAULT_MARGIN_THRESHOLD: f64 = 1e-6;

/// `min(1 − |w² − 1|, Re w)`: positive iff `w` is interior to the right loop.
pub fn right_lemniscate_margin(w: Complex64) -> f64 {
    let gap = 1.0 - (w * w - 1.0).norm();
    gap.min(w.re)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctionalKind {
    /// `1 + z f″(z)/f′(z)`
    Convexity,
    /// `z f′(z)/f(z)`
    Starlikeness,
    /// `λ f′(z)` for a supplied scale `λ`
    CaratheodoryScaled,
}

/// A functional with the derivative series it needs precomputed.
#[derive(Debug, Clone)]
pub struct Functional {
    kind: FunctionalKind,
    num: PowerSeries,
    den: PowerSeries,
    scale: Complex64,
}

impl Functional {
    pub fn new(kind: FunctionalKind, f: &PowerSeries, scale: Option<Complex64>) -> Result<Self> {
        let one = Complex64::new(1.0, 0.0);
        match kind {
            FunctionalKind::Convexity => {
                let d1 = f.derivative();
                Ok(Self {
                    kind,
                    num: d1.derivative(),
                    den: d1,
                    scale: one,
                })
            }
            FunctionalKind::Starlikeness => {
                // z f′/f = 1 + z g′/g with g = f/z, which stays defined at 0
                let g = f.div_z()?;
                Ok(Self {
                    kind,
                    num: g.derivative(),
                    den: g,
                    scale: one,
                })
            }
            FunctionalKind::CaratheodoryScaled => {
                let scale = scale.ok_or_else(|| {
                    Error::InvalidParameter(
                        "caratheodory_scaled functional needs a scale factor".to_string(),
                    )
                })?;
                Ok(Self {
                    kind,
                    num: f.derivative(),
                    den: PowerSeries::from_real(&[1.0]),
                    scale,
                })
            }
        }
    }

    pub fn kind(&self) -> FunctionalKind {
        self.kind
    }

    pub fn eval(&self, z: Complex64, ctl: &TruncationControl) -> Result<Complex64> {
        match self.kind {
            FunctionalKind::CaratheodoryScaled => Ok(self.scale * self.num.eval(z, ctl)?),
            FunctionalKind::Convexity | FunctionalKind::Starlikeness => {
                let den = self.den.eval(z, ctl)?;
                if den.norm() <= DENOMINATOR_GUARD {
                    return Err(Error::NearZeroDenominator {
                        z,
                        denominator: den.norm(),
                    });
                }
                if z == Complex64::new(0.0, 0.0) {
                    return Ok(Complex64::new(1.0, 0.0));
                }
                let num = self.num.eval(z, ctl)?;
                Ok(1.0 + z * num / den)
            }
        }
    }
}

/// Value of a functional of `f` at a single point.
pub fn functional_value(
    kind: FunctionalKind,
    f: &PowerSeries,
    scale: Option<Complex64>,
    z: Complex64,
) -> Result<Complex64> {
    Functional::new(kind, f, scale)?.eval(z, &TruncationControl::default())
}

/// Concentric sampling circles in the open unit disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiskSamplingPlan {
    radii: Vec<f64>,
    points_per_circle: usize,
    margin_threshold: f64,
}

impl Default for DiskSamplingPlan {
    fn default() -> Self {
        Self {
            radii: vec![0.5, 0.9, 0.99, 0.999],
            points_per_circle: 720,
            margin_threshold: DEFAULT_MARGIN_THRESHOLD,
        }
    }
}

impl DiskSamplingPlan {
    pub fn new(radii: Vec<f64>, points_per_circle: usize) -> Result<Self> {
        if radii.is_empty() {
            return Err(Error::InvalidParameter(
                "plan needs at least one radius".into(),
            ));
        }
        if radii.iter().any(|r| !(*r > 0.0 && *r < 1.0)) {
            return Err(Error::InvalidParameter(format!(
                "plan radii must lie in (0, 1), got {radii:?}"
            )));
        }
        if radii.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter(format!(
                "plan radii must be strictly ascending, got {radii:?}"
            )));
        }
        if points_per_circle < 64 {
            return Err(Error::InvalidParameter(format!(
                "points_per_circle must be at least 64, got {points_per_circle}"
            )));
        }
        Ok(Self {
            radii,
            points_per_circle,
            margin_threshold: DEFAULT_MARGIN_THRESHOLD,
        })
    }

    pub fn with_margin_threshold(mut self, threshold: f64) -> Self {
        self.margin_threshold = threshold;
        self
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn r_max(&self) -> f64 {
        *self.radii.last().expect("plan has at least one radius")
    }

    pub fn points_per_circle(&self) -> usize {
        self.points_per_circle
    }

    pub fn margin_threshold(&self) -> f64 {
        self.margin_threshold
    }

    /// Sample points of one circle, `r·e^{2πik/N}`, in ascending `k`.
    pub fn circle(&self, radius: f64) -> impl Iterator<Item = Complex64> + '_ {
        let n = self.points_per_circle;
        (0..n).map(move |k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / n as f64))
    }

    /// Every sample point, circle by circle in ascending radius.
    pub fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.radii.iter().flat_map(move |&r| self.circle(r))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictStatus {
    Holds,
    Fails,
    /// A denominator guard tripped; no evidence either way.
    Inconclusive,
}

/// Per-circle summary used to expose the trend toward the boundary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircleSummary {
    pub radius: f64,
    /// Minimum of [`right_lemniscate_margin`] on the circle.
    pub min_margin: f64,
    /// Minimum of `1 − |P² − 1|` on the circle.
    pub min_loop_gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubordinationVerdict {
    pub functional_kind: FunctionalKind,
    pub status: VerdictStatus,
    pub holds: bool,
    /// Minimum margin over every sample; NaN when inconclusive.
    pub min_margin: f64,
    /// Sample attaining `min_margin`, or the point where the guard tripped.
    pub worst_z: Complex64,
    pub margin_threshold: f64,
    pub circles: Vec<CircleSummary>,
    /// Whether `min_loop_gap` is nonincreasing in the radius.
    pub monotone_trend: bool,
    /// Maximum of `|arg P(z)|` over every sample.
    pub max_abs_arg: f64,
}

impl SubordinationVerdict {
    pub fn is_conclusive(&self) -> bool {
        self.status != VerdictStatus::Inconclusive
    }

    /// A lemniscate-convex function is strongly convex of order 1/2.
    pub fn strongly_convex(&self) -> bool {
        self.max_abs_arg < FRAC_PI_4
    }
}

/// Samples the functional of `f` over `plan` and decides `P ≺ √(1+z)`.
///
/// The reduction over samples runs in plan order, so identical inputs give
/// bit-identical verdicts.
pub fn subordination_check(
    kind: FunctionalKind,
    f: &PowerSeries,
    scale: Option<Complex64>,
    plan: &DiskSamplingPlan,
) -> Result<SubordinationVerdict> {
    let functional = Functional::new(kind, f, scale)?;
    let ctl = TruncationControl::default();

    let mut min_margin = f64::INFINITY;
    let mut worst_z = Complex64::new(0.0, 0.0);
    let mut max_abs_arg = 0.0f64;
    let mut circles = Vec::with_capacity(plan.radii().len());

    for &radius in plan.radii() {
        let mut circle = CircleSummary {
            radius,
            min_margin: f64::INFINITY,
            min_loop_gap: f64::INFINITY,
        };
        for z in plan.circle(radius) {
            let w = match functional.eval(z, &ctl) {
                Ok(w) => w,
                Err(Error::NearZeroDenominator { .. }) => {
                    return Ok(SubordinationVerdict {
                        functional_kind: kind,
                        status: VerdictStatus::Inconclusive,
                        holds: false,
                        min_margin: f64::NAN,
                        worst_z: z,
                        margin_threshold: plan.margin_threshold(),
                        circles,
                        monotone_trend: false,
                        max_abs_arg: f64::NAN,
                    });
                }
                Err(e) => return Err(e),
            };
            let margin = right_lemniscate_margin(w);
            circle.min_loop_gap = circle.min_loop_gap.min(1.0 - (w * w - 1.0).norm());
            if margin < circle.min_margin {
                circle.min_margin = margin;
            }
            if margin < min_margin {
                min_margin = margin;
                worst_z = z;
            }
            max_abs_arg = max_abs_arg.max(w.arg().abs());
        }
        circles.push(circle);
    }

    let monotone_trend = circles
        .windows(2)
        .all(|pair| pair[1].min_loop_gap <= pair[0].min_loop_gap + 1e-12);
    let holds = min_margin > plan.margin_threshold();
    Ok(SubordinationVerdict {
        functional_kind: kind,
        status: if holds {
            VerdictStatus::Holds
        } else {
            VerdictStatus::Fails
        },
        holds,
        min_margin,
        worst_z,
        margin_threshold: plan.margin_threshold(),
        circles,
        monotone_trend,
        max_abs_arg,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{bessel_u, BesselParams};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn margin_examples() {
        assert_eq!(right_lemniscate_margin(c(1.0, 0.0)), 1.0);
        assert!(right_lemniscate_margin(c(2f64.sqrt(), 0.0)).abs() < 1e-15);
        assert_eq!(right_lemniscate_margin(c(-1.0, 0.0)), -1.0);
        assert!((right_lemniscate_margin(c(1.2, 0.0)) - 0.56).abs() < 1e-15);
    }

    #[test]
    fn functionals_at_origin() {
        let z_series = PowerSeries::from_real(&[0.0, 1.0]);
        for z in [c(0.0, 0.0), c(0.3, 0.7)] {
            let v = functional_value(FunctionalKind::Convexity, &z_series, None, z).unwrap();
            assert_eq!(v, c(1.0, 0.0));
        }
        let bp = BesselParams::new(c(1.3, 0.2), c(0.5, 0.0), c(2.0, -1.0)).unwrap();
        let u = bessel_u(&bp).unwrap();
        let scale = -4.0 * bp.kappa() / bp.c();
        let v = functional_value(
            FunctionalKind::CaratheodoryScaled,
            &u,
            Some(scale),
            c(0.0, 0.0),
        )
        .unwrap();
        assert!((v - 1.0).norm() < 1e-15);
        let v = functional_value(FunctionalKind::Convexity, &u, None, c(0.0, 0.0)).unwrap();
        assert_eq!(v, c(1.0, 0.0));
        assert!(
            functional_value(FunctionalKind::CaratheodoryScaled, &u, None, c(0.0, 0.0)).is_err()
        );
    }

    #[test]
    fn near_zero_derivative_is_reported_with_point() {
        // f′(z) = 1 − 2z vanishes at z = 1/2
        let f = PowerSeries::from_real(&[0.0, 1.0, -1.0]);
        let err = functional_value(FunctionalKind::Convexity, &f, None, c(0.5, 0.0)).unwrap_err();
        assert!(matches!(err, Error::NearZeroDenominator { z, .. } if z == c(0.5, 0.0)));

        let plan = DiskSamplingPlan::new(vec![0.5], 64).unwrap();
        let v = subordination_check(FunctionalKind::Convexity, &f, None, &plan).unwrap();
        assert_eq!(v.status, VerdictStatus::Inconclusive);
        assert!(!v.holds);
    }

    #[test]
    fn identity_is_trivially_convex() {
        let f = PowerSeries::from_real(&[0.0, 1.0]);
        let v = subordination_check(
            FunctionalKind::Convexity,
            &f,
            None,
            &DiskSamplingPlan::default(),
        )
        .unwrap();
        assert!(v.holds);
        assert_eq!(v.min_margin, 1.0);
        assert!(v.monotone_trend);
    }

    #[test]
    fn plan_validation() {
        assert!(DiskSamplingPlan::new(vec![0.5, 1.0], 720).is_err());
        assert!(DiskSamplingPlan::new(vec![0.9, 0.5], 720).is_err());
        assert!(DiskSamplingPlan::new(vec![0.5], 63).is_err());
        let plan = DiskSamplingPlan::default();
        assert_eq!(plan.r_max(), 0.999);
        assert_eq!(plan.points().count(), 4 * 720);
    }
}
