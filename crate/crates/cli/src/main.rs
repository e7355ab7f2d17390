#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lemni::admissibility::{admissibility_scan, ProofId, ScanGrid};
use lemni::scan::{Axis, RegionScan};
use lemni::special::{
    bessel_i_normalized, bessel_j_normalized, bessel_u, closed_form, lommel_h, ClosedForm,
};
use lemni::suite::{self, Fault, SuiteOptions, ITEMS};
use lemni::transforms::lommel_alexander;
use lemni::{
    verify_theorem, BesselParams, DiskSamplingPlan, Error, Family, LommelParams, Params, TheoremId,
    TruncationControl, VerdictStatus,
};
use num_complex::Complex64;
use serde::Serialize;

const SCHEMA_VERSION: &str = "1";
const WORKERS_ENV: &str = "LEMNI_MAX_WORKERS";

#[derive(Parser)]
#[command(
    name = "lemni",
    version,
    about = "Normalized Bessel and Lommel series and lemniscate subordination checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a function at one point and print the value.
    Eval {
        #[arg(value_enum)]
        function: Function,
        #[command(flatten)]
        params: ParamArgs,
        /// Evaluation point, e.g. 0.25 or 0.1+0.3i.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        z: Complex64,
    },
    /// Check one theorem's condition and sampled conclusion; prints JSON.
    Verify {
        /// T1, T2, C1, T3, T4, T5 or the full id such as T2_u_convex.
        theorem: String,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        plan: PlanArgs,
    },
    /// Sweep a parameter rectangle and write CSV.
    Scan {
        #[arg(value_enum)]
        family: FamilyArg,
        #[command(flatten)]
        axes: AxisArgs,
        #[command(flatten)]
        plan: PlanArgs,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimize |psi| over admissible triples for one proof; prints JSON.
    Admissibility {
        /// P1 to P5.
        proof: String,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 200)]
        theta_points: usize,
        #[arg(long, default_value_t = 8.0)]
        m_max: f64,
        #[arg(long, default_value_t = 50)]
        m_points: usize,
        #[arg(long, default_value_t = 8)]
        z_samples: usize,
    },
    /// Run the reproduction suite; prints a JSON summary.
    PaperSuite {
        /// Print the item names without running them.
        #[arg(long)]
        list: bool,
        /// Run only these item ids.
        #[arg(long = "only", value_name = "ID")]
        only: Vec<u8>,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<FaultArg>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Function {
    U,
    H,
    #[value(name = "J")]
    J,
    #[value(name = "I")]
    I,
    Sinc,
    #[value(name = "alexander_h")]
    AlexanderH,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Bessel,
    Lommel,
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    #[value(name = "flip-b2")]
    FlipB2,
}

#[derive(Args)]
struct ParamArgs {
    /// Bessel order p.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    p: Option<Complex64>,
    /// Bessel b (default 1).
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    b: Option<Complex64>,
    /// Bessel c.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    c: Option<Complex64>,
    /// kappa = p + (b+1)/2; implies b = 1 and excludes --p/--b.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex, conflicts_with_all = ["p", "b"])]
    kappa: Option<Complex64>,
    /// Lommel mu.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    mu: Option<Complex64>,
    /// Lommel order p.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pp: Option<Complex64>,
}

#[derive(Args)]
struct PlanArgs {
    /// Comma-separated ascending radii in (0, 1).
    #[arg(long, value_delimiter = ',')]
    radii: Option<Vec<f64>>,
    /// Samples per circle.
    #[arg(long)]
    points: Option<usize>,
}

#[derive(Args)]
struct AxisArgs {
    #[arg(long, allow_hyphen_values = true)]
    x_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    x_max: Option<f64>,
    #[arg(long, default_value_t = 0.05)]
    x_step: f64,
    #[arg(long, allow_hyphen_values = true)]
    y_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    y_max: Option<f64>,
    #[arg(long, default_value_t = 0.05)]
    y_step: f64,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::invalid(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self {
            code: 4,
            message: format!("I/O error: {e}"),
        }
    }
}

/// A reader closing the pipe early is not an error.
fn quiet_pipe(result: io::Result<()>) -> io::Result<()> {
    match result {
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        other => other,
    }
}

fn emit(line: &str) -> Result<(), Failure> {
    Ok(quiet_pipe(writeln!(io::stdout().lock(), "{line}"))?)
}

type CliResult = std::result::Result<ExitCode, Failure>;

fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    s.trim()
        .parse::<Complex64>()
        .map_err(|_| format!("{s:?} is not a complex number (examples: 0.5, -1, 0.1+0.3i)"))
}

/// Rounds to 15 significant digits and prints the shortest form of the result.
fn fmt_real(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.14e}").parse().expect("formatted float parses");
    if rounded == 0.0 {
        "0".into()
    } else {
        rounded.to_string()
    }
}

fn fmt_complex(z: Complex64) -> String {
    let re = fmt_real(z.re);
    let im = fmt_real(z.im);
    if im == "0" {
        re
    } else if im.starts_with('-') {
        format!("{re}{im}i")
    } else {
        format!("{re}+{im}i")
    }
}

fn need(value: Option<Complex64>, flag: &str, what: &str) -> Result<Complex64, Failure> {
    value.ok_or_else(|| Failure::invalid(format!("{what} requires --{flag}")))
}

impl ParamArgs {
    fn bessel(&self, what: &str) -> Result<BesselParams, Failure> {
        let c = need(self.c, "c", what)?;
        match self.kappa {
            Some(kappa) => Ok(BesselParams::from_kappa(kappa, c)?),
            None => {
                let p = need(self.p, "p", what)?;
                let b = self.b.unwrap_or(Complex64::new(1.0, 0.0));
                Ok(BesselParams::new(p, b, c)?)
            }
        }
    }

    fn lommel(&self, what: &str) -> Result<LommelParams, Failure> {
        Ok(LommelParams::new(
            need(self.mu, "mu", what)?,
            need(self.pp, "pp", what)?,
        )?)
    }

    fn for_family(&self, family: Family, what: &str) -> Result<Params, Failure> {
        Ok(match family {
            Family::Bessel => self.bessel(what)?.into(),
            Family::Lommel => self.lommel(what)?.into(),
        })
    }
}

impl PlanArgs {
    fn plan(&self) -> Result<DiskSamplingPlan, Failure> {
        let default = DiskSamplingPlan::default();
        if self.radii.is_none() && self.points.is_none() {
            return Ok(default);
        }
        let radii = self
            .radii
            .clone()
            .unwrap_or_else(|| default.radii().to_vec());
        let points = self.points.unwrap_or(default.points_per_circle());
        Ok(DiskSamplingPlan::new(radii, points)?)
    }
}

fn max_workers() -> Result<Option<usize>, Failure> {
    match std::env::var(WORKERS_ENV) {
        Err(std::env::VarError::NotPresent) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Failure::invalid(format!(
                "{WORKERS_ENV} must be a positive integer, got {v:?}"
            ))),
        },
        Err(e) => Err(Failure::invalid(format!("{WORKERS_ENV}: {e}"))),
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Failure> {
    let mut json = serde_json::to_value(value).map_err(|e| Failure::invalid(e.to_string()))?;
    if let Some(map) = json.as_object_mut() {
        map.insert("schema_version".into(), SCHEMA_VERSION.into());
    }
    let text = serde_json::to_string_pretty(&json).map_err(|e| Failure::invalid(e.to_string()))?;
    emit(&text)
}

fn cmd_eval(function: Function, params: &ParamArgs, z: Complex64) -> CliResult {
    let ctl = TruncationControl::default();
    let value = match function {
        Function::U => bessel_u(&params.bessel("eval u")?)?.eval(z, &ctl)?,
        Function::H => lommel_h(&params.lommel("eval h")?)?.eval(z, &ctl)?,
        Function::AlexanderH => {
            lommel_alexander(&params.lommel("eval alexander_h")?)?.eval(z, &ctl)?
        }
        Function::J => bessel_j_normalized(need(params.p, "p", "eval J")?, z)?,
        Function::I => bessel_i_normalized(need(params.p, "p", "eval I")?, z)?,
        Function::Sinc => {
            if !(z.norm() <= lemni::series::EVAL_RADIUS) {
                return Err(Failure::invalid(format!(
                    "|z| <= {} violated (|z| = {})",
                    lemni::series::EVAL_RADIUS,
                    z.norm()
                )));
            }
            closed_form(ClosedForm::SincSqrt, z)
        }
    };
    emit(&fmt_complex(value))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(theorem: &str, params: &ParamArgs, plan: &PlanArgs) -> CliResult {
    let theorem: TheoremId = theorem.parse()?;
    let params = params.for_family(theorem.family(), theorem.as_str())?;
    let report = verify_theorem(theorem, &params, &plan.plan()?)?;
    print_json(&report)?;
    Ok(if report.verdict.status == VerdictStatus::Inconclusive {
        ExitCode::from(3)
    } else if report.consistent {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_scan(
    family: FamilyArg,
    axes: &AxisArgs,
    plan: &PlanArgs,
    out: Option<&PathBuf>,
) -> CliResult {
    let workers = max_workers()?;
    let (family, names, defaults) = match family {
        FamilyArg::Bessel => (Family::Bessel, ["kappa", "c"], [(-1.0, 8.0), (0.0, 6.0)]),
        FamilyArg::Lommel => (Family::Lommel, ["mu", "p"], [(0.0, 16.0), (0.0, 8.0)]),
    };
    let axis1 = Axis::new(
        names[0],
        axes.x_min.unwrap_or(defaults[0].0),
        axes.x_max.unwrap_or(defaults[0].1),
        axes.x_step,
    )?;
    let axis2 = Axis::new(
        names[1],
        axes.y_min.unwrap_or(defaults[1].0),
        axes.y_max.unwrap_or(defaults[1].1),
        axes.y_step,
    )?;
    let report = RegionScan::new(family, axis1, axis2, plan.plan()?)?.run(workers)?;
    match out {
        Some(path) => report.write_csv(BufWriter::new(File::create(path)?))?,
        None => quiet_pipe(report.write_csv(io::stdout().lock()))?,
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_admissibility(proof: &str, params: &ParamArgs, grid: ScanGrid) -> CliResult {
    let proof: ProofId = proof.parse()?;
    let theorem = proof.theorem();
    let params = params.for_family(theorem.family(), &proof.to_string())?;
    let report = admissibility_scan(proof, &params, &grid)?;
    print_json(&report)?;
    Ok(
        if report.contract_holds && report.intermediate_bounds_hold {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        },
    )
}

#[derive(Serialize)]
struct SuiteSummary {
    passed: bool,
    items: Vec<suite::ItemOutcome>,
}

fn cmd_paper_suite(list: bool, only: &[u8], fault: Option<FaultArg>) -> CliResult {
    if list {
        for item in ITEMS {
            emit(&format!("{:>2} {}", item.id, item.name))?;
        }
        return Ok(ExitCode::SUCCESS);
    }
    if let Some(bad) = only.iter().find(|id| suite::item(**id).is_none()) {
        return Err(Failure::invalid(format!(
            "suite item id must be 1..=12, got {bad}"
        )));
    }
    let options = SuiteOptions {
        fault: fault.map(|FaultArg::FlipB2| Fault::FlipB2Sign),
        workers: max_workers()?,
    };
    let mut items = Vec::new();
    for item in ITEMS
        .iter()
        .filter(|i| only.is_empty() || only.contains(&i.id))
    {
        let outcome = suite::run_item(item.id, &options);
        eprintln!(
            "[{}] {:>2} {} ({:.2}s): {}",
            if outcome.passed { "PASS" } else { "FAIL" },
            outcome.id,
            outcome.name,
            outcome.elapsed_secs,
            outcome.detail
        );
        items.push(outcome);
    }
    let first_failure = items.iter().find(|o| !o.passed).map(|o| (o.id, o.name));
    print_json(&SuiteSummary {
        passed: first_failure.is_none(),
        items,
    })?;
    match first_failure {
        None => Ok(ExitCode::SUCCESS),
        Some((id, name)) => {
            eprintln!("first failing item: {id} {name}");
            Ok(ExitCode::from(1))
        }
    }
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Eval {
            function,
            params,
            z,
        } => cmd_eval(function, &params, z),
        Command::Verify {
            theorem,
            params,
            plan,
        } => cmd_verify(&theorem, &params, &plan),
        Command::Scan {
            family,
            axes,
            plan,
            out,
        } => cmd_scan(family, &axes, &plan, out.as_ref()),
        Command::Admissibility {
            proof,
            params,
            theta_points,
            m_max,
            m_points,
            z_samples,
        } => {
            let grid = ScanGrid {
                theta_points,
                m_max,
                m_points,
                z_samples,
                ..ScanGrid::default()
            };
            cmd_admissibility(&proof, &params, grid)
        }
        Command::PaperSuite {
            list,
            only,
            inject_fault,
        } => cmd_paper_suite(list, &only, inject_fault),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(failure) => {
            let _ = io::stdout().flush();
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
