//! Parameter-region scans: every grid cell gets each family theorem's
//! condition slack and sampled verdict margin, emitted as CSV.

use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lemniscate::DiskSamplingPlan;
use crate::special::{BesselParams, LommelParams};
use crate::theorems::{verify_theorem, Family, Params, TheoremId};

/// Exact CSV header of a region scan.
pub const CSV_HEADER: [&str; 7] = [
    "family",
    "theorem",
    "param1",
    "param2",
    "condition_slack",
    "verdict_margin",
    "consistent",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub name: String,
    pub min: f64,
    pub max: f64,
    pub step: f64,
}

impl Axis {
    pub fn new(name: &str, min: f64, max: f64, step: f64) -> Result<Self> {
        if !(min.is_finite() && max.is_finite() && step.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "axis {name}: bounds must be finite"
            )));
        }
        if !(step > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "axis {name}: step > 0 violated"
            )));
        }
        if max < min {
            return Err(Error::InvalidParameter(format!(
                "axis {name}: max >= min violated"
            )));
        }
        Ok(Self {
            name: name.to_string(),
            min,
            max,
            step,
        })
    }

    /// `min + i·step` up to `max`, rounded to 12 decimals.
    pub fn values(&self) -> Vec<f64> {
        let count = ((self.max - self.min) / self.step + 1e-9).floor() as usize;
        (0..=count)
            .map(|i| ((self.min + i as f64 * self.step) * 1e12).round() / 1e12)
            .collect()
    }

    fn within(&self, lo: f64, hi: f64) -> Result<()> {
        if self.min < lo || self.max > hi {
            return Err(Error::InvalidParameter(format!(
                "axis {} = [{}, {}] must lie within [{lo}, {hi}]",
                self.name, self.min, self.max
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanCell {
    pub theorem: TheoremId,
    pub param1: f64,
    pub param2: f64,
    /// NaN when the cell's parameters are invalid.
    pub condition_slack: f64,
    /// NaN when the verdict is inconclusive or the parameters are invalid.
    pub verdict_margin: f64,
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionScanReport {
    pub family: Family,
    pub axis1: Axis,
    pub axis2: Axis,
    /// Theorem-major, then axis1-major, then axis2.
    pub cells: Vec<ScanCell>,
}

/// Region scan request. Bessel axes are `(κ, |c|)` with `b = 1`, `p = κ − 1`
/// and `c` real positive; Lommel axes are `(μ, p)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionScan {
    pub family: Family,
    pub axis1: Axis,
    pub axis2: Axis,
    pub plan: DiskSamplingPlan,
}

impl RegionScan {
    pub fn new(family: Family, axis1: Axis, axis2: Axis, plan: DiskSamplingPlan) -> Result<Self> {
        match family {
            Family::Bessel => {
                axis1.within(-1.0, 8.0)?;
                axis2.within(0.0, 6.0)?;
            }
            Family::Lommel => {
                axis1.within(0.0, 16.0)?;
                axis2.within(0.0, 8.0)?;
            }
        }
        Ok(Self {
            family,
            axis1,
            axis2,
            plan,
        })
    }

    pub fn theorems(&self) -> [TheoremId; 3] {
        match self.family {
            Family::Bessel => TheoremId::BESSEL,
            Family::Lommel => TheoremId::LOMMEL,
        }
    }

    /// Grid points in axis1-major order. The `|c|` axis drops values `<= 0`.
    pub fn grid(&self) -> Vec<(f64, f64)> {
        let second: Vec<f64> = match self.family {
            Family::Bessel => self
                .axis2
                .values()
                .into_iter()
                .filter(|c| *c > 0.0)
                .collect(),
            Family::Lommel => self.axis2.values(),
        };
        self.axis1
            .values()
            .into_iter()
            .flat_map(|a| second.iter().map(move |&b| (a, b)))
            .collect()
    }

    fn params(&self, a: f64, b: f64) -> Result<Params> {
        let re = |x: f64| Complex64::new(x, 0.0);
        Ok(match self.family {
            Family::Bessel => BesselParams::from_kappa(re(a), re(b))?.into(),
            Family::Lommel => LommelParams::real(a, b)?.into(),
        })
    }

    fn cell(&self, theorem: TheoremId, a: f64, b: f64) -> Result<ScanCell> {
        let invalid = ScanCell {
            theorem,
            param1: a,
            param2: b,
            condition_slack: f64::NAN,
            verdict_margin: f64::NAN,
            consistent: true,
        };
        let params = match self.params(a, b) {
            Ok(p) => p,
            Err(Error::InvalidParameter(_)) => return Ok(invalid),
            Err(e) => return Err(e),
        };
        let report = verify_theorem(theorem, &params, &self.plan)?;
        Ok(ScanCell {
            condition_slack: report.condition_slack,
            verdict_margin: if report.verdict.is_conclusive() {
                report.verdict.min_margin
            } else {
                f64::NAN
            },
            consistent: report.consistent,
            ..invalid
        })
    }

    /// Runs the scan, optionally on a dedicated pool of `workers` threads.
    /// The cell order does not depend on the worker count.
    pub fn run(&self, workers: Option<usize>) -> Result<RegionScanReport> {
        let grid = self.grid();
        let jobs: Vec<(TheoremId, f64, f64)> = self
            .theorems()
            .into_iter()
            .flat_map(|t| grid.iter().map(move |&(a, b)| (t, a, b)))
            .collect();
        let compute = || -> Result<Vec<ScanCell>> {
            jobs.par_iter()
                .map(|&(t, a, b)| self.cell(t, a, b))
                .collect()
        };
        let cells = match workers {
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::InvalidParameter(format!("worker pool: {e}")))?
                .install(compute)?,
            None => compute()?,
        };
        Ok(RegionScanReport {
            family: self.family,
            axis1: self.axis1.clone(),
            axis2: self.axis2.clone(),
            cells,
        })
    }
}

impl RegionScanReport {
    /// Writes the CSV form: header row, LF line endings, one row per cell.
    pub fn write_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        writer.write_record(CSV_HEADER)?;
        for cell in &self.cells {
            writer.write_record([
                self.family.as_str().to_string(),
                cell.theorem.as_str().to_string(),
                cell.param1.to_string(),
                cell.param2.to_string(),
                cell.condition_slack.to_string(),
                cell.verdict_margin.to_string(),
                cell.consistent.to_string(),
            ])?;
        }
        writer.flush()
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("CSV output is UTF-8")
    }

    /// Cells where the condition holds but the verdict conclusively fails.
    pub fn counterexamples(&self) -> impl Iterator<Item = &ScanCell> {
        self.cells.iter().filter(|c| {
            c.condition_slack > 0.0 && c.verdict_margin.is_finite() && !(c.verdict_margin > 0.0)
        })
    }

    /// Cells where the condition fails yet the property holds numerically.
    pub fn sufficiency_gaps(&self) -> impl Iterator<Item = &ScanCell> {
        self.cells
            .iter()
            .filter(|c| c.condition_slack < 0.0 && c.verdict_margin > 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_values_are_inclusive() {
        let a = Axis::new("kappa", 0.0, 1.0, 0.25).unwrap();
        assert_eq!(a.values(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let a = Axis::new("c", 0.0, 3.0, 0.05).unwrap();
        assert_eq!(a.values().len(), 61);
        assert_eq!(a.values()[3], 0.15);
        assert!(Axis::new("x", 1.0, 0.0, 0.1).is_err());
        assert!(Axis::new("x", 0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn ranges_are_enforced() {
        let plan = DiskSamplingPlan::default();
        let k = Axis::new("kappa", -2.0, 1.0, 0.5).unwrap();
        let c = Axis::new("c", 0.0, 1.0, 0.5).unwrap();
        assert!(RegionScan::new(Family::Bessel, k, c, plan.clone()).is_err());
        let mu = Axis::new("mu", 0.0, 17.0, 1.0).unwrap();
        let p = Axis::new("p", 0.0, 1.0, 1.0).unwrap();
        assert!(RegionScan::new(Family::Lommel, mu, p, plan).is_err());
    }

    #[test]
    fn zero_c_is_skipped_and_invalid_kappa_is_nan() {
        let plan = DiskSamplingPlan::new(vec![0.5, 0.9], 64).unwrap();
        let scan = RegionScan::new(
            Family::Bessel,
            Axis::new("kappa", 0.0, 1.0, 1.0).unwrap(),
            Axis::new("c", 0.0, 1.0, 0.5).unwrap(),
            plan,
        )
        .unwrap();
        assert_eq!(
            scan.grid(),
            vec![(0.0, 0.5), (0.0, 1.0), (1.0, 0.5), (1.0, 1.0)]
        );
        let report = scan.run(Some(1)).unwrap();
        assert_eq!(report.cells.len(), 12);
        let first = &report.cells[0];
        assert_eq!(first.theorem, TheoremId::T1UPrime);
        assert!(first.condition_slack.is_nan() && first.consistent);
        let csv = report.to_csv_string();
        assert!(csv.starts_with(
            "family,theorem,param1,param2,condition_slack,verdict_margin,consistent\n"
        ));
        assert!(csv.contains("bessel,T1_u_prime,0,0.5,NaN,NaN,true\n"));
        assert!(!csv.contains('\r'));
    }
}
