//! Jobs behind the `hypersq` binary.

use serde_json::json;

use crate::analyzer::{analyze, check_totally_positive, AnalyzeOptions};
use crate::curve::NormalizeOptions;
use crate::error::{Error, Result};
use crate::expr::{parse_curve, parse_element, parse_form, parse_kn};
use crate::quadform::is_sum_of_k_squares;
use crate::report::AnalysisReport;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Analyze,
    Membership { element: String, assume_sum_of_squares: bool },
    Generators,
    /// A form `<a, b, ...>`, or an element with `squares = Some(k)`.
    Oracle { squares: Option<usize> },
}

#[derive(Clone, Debug)]
pub struct JobSpec {
    pub rank: usize,
    /// Curve for curve commands, form or element for the oracle.
    pub input: String,
    pub command: Command,
    pub json: bool,
    pub trace: bool,
    pub max_depth: Option<usize>,
    pub no_tower_extend: bool,
}

impl JobSpec {
    pub fn new(rank: usize, input: &str, command: Command) -> JobSpec {
        JobSpec {
            rank,
            input: input.to_string(),
            command,
            json: false,
            trace: false,
            max_depth: None,
            no_tower_extend: false,
        }
    }
}

pub fn run(job: &JobSpec) -> Result<String> {
    let n = job.rank;
    let norm = NormalizeOptions { no_tower_extend: job.no_tower_extend };
    let opts = |generators| AnalyzeOptions { prune: true, max_depth: job.max_depth, trace: job.trace, generators };
    match &job.command {
        Command::Analyze | Command::Generators => {
            let c = parse_curve(&job.input, n, &norm)?;
            let gens = job.command == Command::Generators;
            let a = analyze(&c, &opts(true))?;
            if gens {
                if let Some(g) = a.generators.iter().find(|g| g.error.is_some()) {
                    return Err(Error::WitnessConstructionFailed(g.error.clone().unwrap_or_default()));
                }
            }
            let rep = AnalysisReport::from(&a);
            Ok(if job.json { rep.to_json() } else { rep.to_text() })
        }
        Command::Membership { element, assume_sum_of_squares } => {
            let c = parse_curve(&job.input, n, &norm)?;
            let sigma = parse_element(element, &c)?;
            if sigma.is_zero() {
                return Err(Error::ZeroInput);
            }
            let positive = if sigma.q.is_zero() {
                check_totally_positive(&c, &sigma.p)?
            } else if *assume_sum_of_squares {
                true
            } else {
                return Err(Error::PreconditionUnverified(
                    "element has a square root part; pass --assume-sum-of-squares".into(),
                ));
            };
            let a = analyze(&c, &opts(false))?;
            let phi = crate::funfield::phi(&a.chains, &sigma)?;
            let member = positive && phi.iter().all(|&b| b == 0);
            let verdict = match (positive, member) {
                (false, _) => "not a sum of squares",
                (true, true) => "sum of 2 squares",
                (true, false) => "not a sum of 2 squares",
            };
            Ok(if job.json {
                let v = json!({"element": sigma.to_string(), "sum_of_squares": positive,
                    "sum_of_two_squares": member, "phi": phi, "m": a.m()});
                serde_json::to_string_pretty(&v).expect("serializable")
            } else {
                format!("{verdict}\nphi = {phi:?}\n")
            })
        }
        Command::Oracle { squares: None } => {
            let f = parse_form(&job.input, n)?;
            let iso = f.is_isotropic();
            let word = if iso { "isotropic" } else { "anisotropic" };
            Ok(if job.json {
                serde_json::to_string_pretty(&json!({"form": f.to_string(), "isotropic": iso})).expect("serializable")
            } else {
                format!("{word}\n")
            })
        }
        Command::Oracle { squares: Some(k) } => {
            let x = parse_kn(&job.input, n)?;
            let yes = is_sum_of_k_squares(&x, *k)?;
            Ok(if job.json {
                serde_json::to_string_pretty(&json!({"element": x.to_string(), "k": k, "sum_of_k_squares": yes}))
                    .expect("serializable")
            } else if yes {
                format!("sum of {k} squares\n")
            } else {
                format!("not a sum of {k} squares\n")
            })
        }
    }
}
