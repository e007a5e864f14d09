use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "stieltjes", version, about = "Evaluate, verify and tabulate Stieltjes-class functions")]
pub struct Cli {
    /// JSON run configuration; explicit flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Upper bound on worker threads.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Tolerance override for the selected suite or comparison.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Write the result here instead of standard output.
    #[arg(long, short, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate a special function as `x,value` rows.
    Eval {
        /// beta, digamma, trigamma, prym, beta-a-lambda, gamma-ratio-log, si, ci, p-kernel, r22 or measure.
        key: String,
        #[arg(allow_negative_numbers = true)]
        xs: Vec<f64>,
        /// Log-spaced points as `lo,hi,count`, appended to the listed ones.
        #[arg(long, value_parser = parse_grid)]
        grid: Option<(f64, f64, usize)>,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, default_value_t = 1.0)]
        b: f64,
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        /// Index of the Barnes kernel for p-kernel and r22.
        #[arg(long, default_value_t = 1)]
        n: u32,
        /// Measure document evaluated by the `measure` key.
        #[arg(long)]
        measure: Option<PathBuf>,
    },
    /// Run a verification suite and emit its report.
    Check {
        /// A suite name, or `all`.
        suite: String,
        /// Exponent for the counterexample suite.
        #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
        r: f64,
    },
    /// Invert a Laplace transform on a uniform `t` grid.
    Invert {
        /// beta-pow-c
        key: String,
        #[arg(long, allow_negative_numbers = true)]
        c: f64,
        #[arg(long, default_value_t = 0.1)]
        t_min: f64,
        #[arg(long, default_value_t = 5.0)]
        t_max: f64,
        #[arg(long, default_value_t = 50)]
        points: usize,
    },
    /// Compare m_c * m_d with m_{c+d}.
    Semigroup {
        #[arg(allow_negative_numbers = true)]
        c: f64,
        #[arg(allow_negative_numbers = true)]
        d: f64,
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
        #[arg(long, default_value_t = 12.0)]
        t_max: f64,
        /// Also tabulate m_{c+d} as `t,value` CSV into this file.
        #[arg(long)]
        density_out: Option<PathBuf>,
    },
    /// Draw samples from nu_a, tau_a or half_gumbel_a.
    Sample {
        family: String,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, default_value_t = 1000)]
        count: usize,
    },
}

fn parse_grid(s: &str) -> Result<(f64, f64, usize), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err("expected lo,hi,count".into());
    }
    let lo: f64 = parts[0].trim().parse().map_err(|e| format!("lo: {e}"))?;
    let hi: f64 = parts[1].trim().parse().map_err(|e| format!("hi: {e}"))?;
    let n: usize = parts[2].trim().parse().map_err(|e| format!("count: {e}"))?;
    if !(lo > 0.0 && hi > lo && n >= 1) {
        return Err("need 0 < lo < hi and count >= 1".into());
    }
    Ok((lo, hi, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        assert_eq!(parse_grid("0.5,2,3"), Ok((0.5, 2.0, 3)));
        assert!(parse_grid("2,1,3").is_err());
        assert!(parse_grid("1,2").is_err());
    }

    #[test]
    fn negative_positionals() {
        let cli = Cli::try_parse_from(["stieltjes", "eval", "beta", "-1", "2"]).unwrap();
        match cli.command {
            Command::Eval { xs, .. } => assert_eq!(xs, vec![-1.0, 2.0]),
            _ => panic!(),
        }
    }
}
