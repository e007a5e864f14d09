//! Subcommand drivers. Each returns the rendered output and an exit status.

use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use stieltjes_core::barnes::{p_kernel, r_2_2n, BarnesKernelParams};
use stieltjes_core::densities::{DensitySpec, Family};
use stieltjes_core::laplace::{laplace_invert_with, semigroup_check, semigroup_density, BetaPower, InversionOptions};
use stieltjes_core::monotonicity::{lin_space, log_space};
use stieltjes_core::specfun;
use stieltjes_core::stieltjes::{stieltjes_eval, RepresentingMeasure};
use stieltjes_core::suites::{suite_cases, Case, SuiteOptions, SuiteOutcome, SUITES};
use stieltjes_core::Error as CoreError;

use crate::args::{Command, Format};
use crate::config::Settings;
use crate::error::{CliError, ExitStatus};
use crate::formats::{to_json, write_csv, MeasureDoc, SuiteDoc};

pub const EVAL_KEYS: [&str; 11] = [
    "beta",
    "digamma",
    "trigamma",
    "prym",
    "beta-a-lambda",
    "gamma-ratio-log",
    "si",
    "ci",
    "p-kernel",
    "r22",
    "measure",
];

#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub status: ExitStatus,
}

impl Output {
    fn pass(text: String) -> Self {
        Self { text, status: ExitStatus::Pass }
    }
}

/// Runs `f` on a pool capped at `jobs` threads, or on the global pool.
fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    match jobs {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::usage(format!("cannot start {n} workers: {e}")))?;
            Ok(pool.install(f))
        }
        None => Ok(f()),
    }
}

fn csv_string<const N: usize>(header: [&str; N], rows: &[[f64; N]]) -> Result<String, CliError> {
    let mut buf = Vec::new();
    write_csv(&mut buf, header, rows)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

pub fn run(command: &Command, settings: &Settings) -> Result<Output, CliError> {
    match command {
        Command::Eval { key, xs, grid, a, b, lambda, n, measure } => {
            let mut points = xs.clone();
            if let Some((lo, hi, count)) = grid {
                points.extend(log_space(*lo, *hi, *count));
            }
            if points.is_empty() {
                return Err(CliError::usage("eval needs at least one x"));
            }
            let f = evaluator(key, *a, *b, *lambda, *n, measure.as_deref())?;
            let values = with_jobs(settings.jobs, || {
                points.par_iter().map(|&x| f(x).map(|v| [x, v])).collect::<Result<Vec<_>, CoreError>>()
            })??;
            eval_output(&values, settings.format_or(Format::Csv))
        }
        Command::Check { suite, r } => check(suite, *r, settings),
        Command::Invert { key, c, t_min, t_max, points } => invert(key, *c, *t_min, *t_max, *points, settings),
        Command::Semigroup { c, d, dt, t_max, density_out } => {
            semigroup(*c, *d, *dt, *t_max, density_out.as_deref(), settings)
        }
        Command::Sample { family, a, count } => sample(family, *a, *count, settings),
    }
}

type Evaluator = Box<dyn Fn(f64) -> Result<f64, CoreError> + Send + Sync>;

fn evaluator(key: &str, a: f64, b: f64, lambda: f64, n: u32, measure: Option<&Path>) -> Result<Evaluator, CliError> {
    Ok(match key {
        "beta" => Box::new(specfun::nielsen_beta),
        "digamma" => Box::new(specfun::digamma),
        "trigamma" => Box::new(specfun::trigamma),
        "prym" => Box::new(specfun::prym_p),
        "beta-a-lambda" => Box::new(move |x| specfun::beta_a_lambda(x, a, lambda)),
        "gamma-ratio-log" => Box::new(move |x| specfun::gamma_ratio_log(x, a, b)),
        "si" => Box::new(|x| specfun::sin_cos_integrals(x).map(|v| v.0)),
        "ci" => Box::new(|x| specfun::sin_cos_integrals(x).map(|v| v.1)),
        "p-kernel" => {
            let p = BarnesKernelParams::new(n)?;
            Box::new(move |t| p_kernel(t, &p))
        }
        "r22" => {
            BarnesKernelParams::new(n)?;
            Box::new(move |w| r_2_2n(w, n))
        }
        "measure" => {
            let path = measure.ok_or_else(|| CliError::usage("the measure key needs --measure FILE"))?;
            let text = std::fs::read_to_string(path)
                .map_err(|source| CliError::Config { path: path.display().to_string(), source })?;
            let doc: MeasureDoc = serde_json::from_str(&text)?;
            let m = RepresentingMeasure::try_from(doc)?;
            Box::new(move |x| stieltjes_eval(&m, x))
        }
        _ => {
            return Err(CliError::usage(format!("unknown function '{key}'; expected one of {}", EVAL_KEYS.join(", "))))
        }
    })
}

#[derive(Serialize)]
struct XValue {
    x: f64,
    value: f64,
}

fn eval_output(rows: &[[f64; 2]], format: Format) -> Result<Output, CliError> {
    let text = match format {
        Format::Csv => csv_string(["x", "value"], rows)?,
        Format::Json => to_json(&rows.iter().map(|r| XValue { x: r[0], value: r[1] }).collect::<Vec<_>>())?,
    };
    Ok(Output::pass(text))
}

fn run_cases(name: &str, opts: &SuiteOptions, jobs: Option<usize>) -> Result<SuiteOutcome, CliError> {
    let cases = suite_cases(name, opts)?;
    let outcomes = with_jobs(jobs, || cases.par_iter().map(Case::run).collect::<Vec<_>>())?;
    Ok(SuiteOutcome::assemble(name, outcomes))
}

fn check(suite: &str, r: f64, settings: &Settings) -> Result<Output, CliError> {
    let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite] };
    let mut docs = Vec::new();
    let mut all_pass = true;
    for name in names {
        let opts = SuiteOptions { tol: settings.tol_for(name), seed: settings.seed, grid: settings.grid.clone(), r };
        let outcome = run_cases(name, &opts, settings.jobs)?;
        all_pass &= outcome.passed();
        docs.push(SuiteDoc::from(&outcome));
    }
    let text = match settings.format_or(Format::Json) {
        Format::Json if docs.len() == 1 => to_json(&docs[0])?,
        Format::Json => to_json(&docs)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["suite", "case", "verdict", "worst_margin"])?;
            for d in &docs {
                for c in &d.cases {
                    let margin = c.worst_margin.map(|m| format!("{m:e}")).unwrap_or_default();
                    w.write_record([d.suite.as_str(), c.label.as_str(), c.verdict.as_str(), margin.as_str()])?;
                }
            }
            String::from_utf8(w.into_inner().map_err(|e| CliError::Io(e.into_error()))?).expect("csv output is utf-8")
        }
    };
    let status = if all_pass { ExitStatus::Pass } else { ExitStatus::VerificationFailure };
    Ok(Output { text, status })
}

#[derive(Serialize)]
struct InversionRow {
    t: f64,
    value: f64,
    check: f64,
    spread: f64,
}

fn invert(key: &str, c: f64, t_min: f64, t_max: f64, points: usize, settings: &Settings) -> Result<Output, CliError> {
    if key != "beta-pow-c" {
        return Err(CliError::usage(format!("unknown transform '{key}'; expected beta-pow-c")));
    }
    if !(t_min > 0.0 && t_max >= t_min && points >= 1) {
        return Err(CliError::usage("need 0 < t-min <= t-max and points >= 1"));
    }
    let f = BetaPower::new(c)?;
    let mut opts = InversionOptions::default();
    if let Some(t) = settings.tol_for("invert") {
        opts.tol = t;
    }
    let ts = if points == 1 { vec![t_min] } else { lin_space(t_min, t_max, points) };
    let rows = with_jobs(settings.jobs, || {
        ts.par_iter()
            .map(|&t| {
                let d = laplace_invert_with(&f, t, &opts)?;
                if !d.agree {
                    return Err(CoreError::Disagreement {
                        what: "laplace inversion",
                        primary: d.primary,
                        check: d.check,
                    });
                }
                Ok(InversionRow { t, value: d.primary, check: d.check, spread: d.spread })
            })
            .collect::<Result<Vec<_>, CoreError>>()
    })?;
    let rows = rows.map_err(|e| match e {
        // Failure of a valid request is a verification failure, not bad input.
        CoreError::Domain { .. } => CliError::Core(CoreError::Evaluation { x: c, detail: e.to_string() }),
        e => CliError::Core(e),
    })?;
    let text = match settings.format_or(Format::Csv) {
        Format::Csv => csv_string(["t", "value"], &rows.iter().map(|r| [r.t, r.value]).collect::<Vec<_>>())?,
        Format::Json => to_json(&rows)?,
    };
    Ok(Output::pass(text))
}

#[derive(Serialize)]
struct SemigroupDoc {
    c: f64,
    d: f64,
    dt: f64,
    t_max: f64,
    sup_error: f64,
    at: f64,
    points: usize,
    tol: f64,
    verdict: &'static str,
}

fn semigroup(
    c: f64,
    d: f64,
    dt: f64,
    t_max: f64,
    density_out: Option<&Path>,
    settings: &Settings,
) -> Result<Output, CliError> {
    BetaPower::new(c)?;
    BetaPower::new(d)?;
    let tol = settings.tol_for("semigroup").unwrap_or(1e-4);
    let rep = with_jobs(settings.jobs, || semigroup_check(c, d, dt, t_max))??;
    if let Some(path) = density_out {
        let dens = semigroup_density(c + d, dt, t_max)?;
        let rows: Vec<[f64; 2]> = dens.times().zip(&dens.values).map(|(t, &v)| [t, v]).collect();
        write_csv(std::fs::File::create(path)?, ["t", "value"], &rows)?;
    }
    let pass = rep.sup_error < tol;
    let doc = SemigroupDoc {
        c,
        d,
        dt,
        t_max,
        sup_error: rep.sup_error,
        at: rep.at,
        points: rep.points,
        tol,
        verdict: if pass { "pass" } else { "fail" },
    };
    let text = match settings.format_or(Format::Json) {
        Format::Json => to_json(&doc)?,
        Format::Csv => csv_string(["c", "d", "sup_error", "at"], &[[c, d, rep.sup_error, rep.at]])?,
    };
    Ok(Output { text, status: if pass { ExitStatus::Pass } else { ExitStatus::VerificationFailure } })
}

#[derive(Serialize)]
struct SampleDoc<'a> {
    family: &'a str,
    a: f64,
    seed: u64,
    samples: Vec<f64>,
}

fn sample(family: &str, a: f64, count: usize, settings: &Settings) -> Result<Output, CliError> {
    let fam = Family::from_key(family)
        .ok_or_else(|| CliError::usage(format!("unknown family '{family}'; expected nu_a, tau_a or half_gumbel_a")))?;
    if count == 0 {
        return Err(CliError::usage("count must be at least 1"));
    }
    let tab = DensitySpec::new(fam, a)?.tabulate()?;
    let samples = tab.sample(count, settings.seed)?;
    let text = match settings.format_or(Format::Csv) {
        Format::Csv => csv_string(["t"], &samples.iter().map(|&t| [t]).collect::<Vec<_>>())?,
        Format::Json => to_json(&SampleDoc { family: fam.key(), a, seed: settings.seed, samples })?,
    };
    Ok(Output::pass(text))
}
