use std::process::ExitCode;
use std::time::Instant;

use stieltjes_core::suites::{suite_cases, CaseOutcome, SuiteOptions};

struct Criterion {
    id: u32,
    title: &'static str,
    parts: &'static [(&'static str, Option<&'static str>)],
}

const CRITERIA: &[Criterion] = &[
    Criterion { id: 1, title: "closed values of beta, trigamma, P", parts: &[("closed-values", None)] },
    Criterion { id: 2, title: "alternating measure reproduces beta", parts: &[("alternating-measure", None)] },
    Criterion { id: 3, title: "inversion of beta and the semigroup law", parts: &[("semigroup", None)] },
    Criterion { id: 4, title: "periodic-profile identity suite", parts: &[("identities-s3", None)] },
    Criterion {
        id: 5,
        title: "gamma-ratio measures and integer-b closed form",
        parts: &[("gamma-ratios", Some("measure vs")), ("gamma-ratios", Some("integer b"))],
    },
    Criterion { id: 6, title: "finite-zero log ratios", parts: &[("gamma-ratios", Some("finite zeros"))] },
    Criterion { id: 7, title: "log-gamma differences are Pick", parts: &[("pick", Some("log-gamma"))] },
    Criterion { id: 8, title: "Stirling remainder, Barnes kernels, positivity lemma", parts: &[("barnes", None)] },
    Criterion { id: 9, title: "iterated sums and three-way evaluation", parts: &[("cesaro", None)] },
    Criterion {
        id: 10,
        title: "monotonicity catalog and counterexample",
        parts: &[("cm-catalog", None), ("lcm-catalog", None), ("counterexample", None)],
    },
    Criterion { id: 11, title: "Hamburger identity", parts: &[("hamburger", None)] },
    Criterion { id: 12, title: "densities", parts: &[("densities", None)] },
];

fn run(c: &Criterion, opts: &SuiteOptions) -> Vec<CaseOutcome> {
    let mut out = Vec::new();
    for &(suite, filter) in c.parts {
        let cases = match suite_cases(suite, opts) {
            Ok(cases) => cases,
            Err(e) => panic!("suite {suite}: {e}"),
        };
        for case in cases.iter().filter(|k| filter.map_or(true, |f| k.label.starts_with(f))) {
            out.push(case.run());
        }
    }
    out
}

fn main() -> ExitCode {
    let opts = SuiteOptions::default();
    let mut failed = 0;
    for c in CRITERIA {
        let start = Instant::now();
        let outcomes = run(c, &opts);
        let bad: Vec<&CaseOutcome> = outcomes.iter().filter(|o| !o.report.passed() || o.error.is_some()).collect();
        let verdict = if bad.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "{verdict} {:>2}  {} ({} checks, {:.1}s)",
            c.id,
            c.title,
            outcomes.len(),
            start.elapsed().as_secs_f64()
        );
        for o in &bad {
            match &o.error {
                Some(e) => println!("       {}: error: {e}", o.label),
                None => println!(
                    "       {}: worst margin {:e}, first witness {:?}",
                    o.label,
                    o.report.worst_margin,
                    o.report.witnesses.first()
                ),
            }
        }
        if !bad.is_empty() {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
