use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use lmo_kernel::diagrams::{DiagramSeries, TruncationPolicy};
use lmo_kernel::pipeline::{CheckResult, KnotInput, Pipeline, Route, Suite, SurgeryInput};
use lmo_kernel::rootsys::ExponentialWeightSum;
use lmo_kernel::HSeries;

#[derive(Parser)]
#[command(name = "lmo-kernel", version, about = "Weighted LMO invariants of knot surgeries and their comparison with root-system data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Weighted LMO invariant by one or both routes.
    Compute {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "both")]
        route: RouteArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Perturbative invariant from exponential weight data.
    Taupg {
        #[command(flatten)]
        common: Common,
        /// Required unless the knot is `unknot`.
        #[arg(long)]
        qdata: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Both sides and the identity between them.
    Compare {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        qdata: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "both")]
        route: RouteArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Identity checks.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value_t = 4)]
        order: i64,
    },
}

#[derive(Args)]
struct Common {
    /// `unknot` or a diagram series JSON file.
    #[arg(long)]
    knot: String,
    #[arg(long, allow_hyphen_values = true)]
    framing: i64,
    #[arg(long, default_value = "A1")]
    lie: String,
    #[arg(long, default_value_t = 3)]
    order: i64,
    /// Order to which a file knot's series is trusted; defaults to `--order`.
    #[arg(long)]
    declared_degree: Option<i64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Definition,
    Lemma,
    Both,
}

impl From<RouteArg> for Route {
    fn from(r: RouteArg) -> Self {
        match r {
            RouteArg::Definition => Route::Definition,
            RouteArg::Lemma => Route::Lemma,
            RouteArg::Both => Route::Both,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Omega,
    Theta,
    Circle,
    Bridge,
    Weyl,
    Bernoulli,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::All => Suite::All,
            SuiteArg::Omega => Suite::Omega,
            SuiteArg::Theta => Suite::Theta,
            SuiteArg::Circle => Suite::Circle,
            SuiteArg::Bridge => Suite::Bridge,
            SuiteArg::Weyl => Suite::Weyl,
            SuiteArg::Bernoulli => Suite::Bernoulli,
        }
    }
}

#[derive(Serialize)]
struct ComputeOutput {
    lie: String,
    framing: i64,
    order: i64,
    certified_order: i64,
    definition: Option<HSeries>,
    lemma: Option<HSeries>,
    checks: Vec<CheckResult>,
}

#[derive(Serialize)]
struct TaupgOutput {
    lie: String,
    framing: i64,
    order: i64,
    value: HSeries,
    checks: Vec<CheckResult>,
}

type Res<T> = Result<T, Box<dyn std::error::Error>>;

fn read(path: &Path) -> Res<String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()).into())
}

fn surgery_input(c: &Common) -> Res<SurgeryInput> {
    let knot = if c.knot == "unknot" {
        KnotInput::Unknot
    } else {
        KnotInput::Series(DiagramSeries::from_json(
            &read(Path::new(&c.knot))?,
            TruncationPolicy::new(usize::MAX, usize::MAX),
        )?)
    };
    let declared = match (&knot, c.declared_degree) {
        (_, Some(d)) => d,
        (KnotInput::Unknot, None) => i64::MAX,
        (KnotInput::Series(_), None) => c.order,
    };
    Ok(SurgeryInput::new(knot, c.framing, declared)?)
}

fn qdata(path: &Option<PathBuf>) -> Res<Option<ExponentialWeightSum>> {
    match path {
        Some(p) => Ok(Some(ExponentialWeightSum::from_json(&read(p)?)?)),
        None => Ok(None),
    }
}

fn emit<T: Serialize>(value: &T, out: &Option<PathBuf>) -> Res<()> {
    let text = serde_json::to_string_pretty(value)?;
    match out {
        Some(p) => std::fs::write(p, text + "\n").map_err(|e| format!("{}: {e}", p.display()))?,
        None => println!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Res<bool> {
    match cli.command {
        Command::Compute { common, route, out } => {
            let input = surgery_input(&common)?;
            let mut p = Pipeline::new(&common.lie, common.order)?;
            let certified = p.certified_order(&input).min(common.order);
            let route = Route::from(route);
            let definition = match route {
                Route::Lemma => None,
                _ => Some(p.lmo_via_definition(&input)?.truncate(certified)),
            };
            let lemma = match route {
                Route::Definition => None,
                _ => Some(p.lmo_via_lemma(&input)?.truncate(certified)),
            };
            let mut checks = Vec::new();
            if let (Some(a), Some(b)) = (&definition, &lemma) {
                checks.push(CheckResult {
                    name: "routes agree".into(),
                    passed: a == b,
                    detail: format!("to h^{certified}"),
                });
            }
            let ok = checks.iter().all(|c| c.passed);
            emit(
                &ComputeOutput {
                    lie: common.lie,
                    framing: common.framing,
                    order: common.order,
                    certified_order: certified,
                    definition,
                    lemma,
                    checks,
                },
                &out,
            )?;
            Ok(ok)
        }
        Command::Taupg { common, qdata: q, out } => {
            let input = surgery_input(&common)?;
            let p = Pipeline::new(&common.lie, common.order)?;
            let value = p.taupg(&input, qdata(&q)?.as_ref())?;
            let checks = vec![CheckResult {
                name: "taupg pole-free".into(),
                passed: value.is_power_series(),
                detail: format!("valuation {:?}", value.valuation()),
            }];
            let ok = checks[0].passed;
            emit(
                &TaupgOutput {
                    lie: common.lie,
                    framing: common.framing,
                    order: common.order,
                    value,
                    checks,
                },
                &out,
            )?;
            Ok(ok)
        }
        Command::Compare { common, qdata: q, route, out } => {
            let input = surgery_input(&common)?;
            let mut p = Pipeline::new(&common.lie, common.order)?;
            let report = p.compare(&input, qdata(&q)?.as_ref(), route.into())?;
            emit(&report, &out)?;
            Ok(report.all_passed())
        }
        Command::Verify { suite, order } => {
            let results = lmo_kernel::pipeline::verify_suite(suite.into(), order)?;
            for r in &results {
                eprintln!("{} {}: {}", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail);
            }
            let ok = results.iter().all(|r| r.passed);
            emit(&results, &None)?;
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
