use std::fs;

use serde_json::{json, Value};

use hyperdiag::diagnoser::DiagnosisOutcome;
use hyperdiag::topology::{min_boundary_bruteforce, min_boundary_formula};
use hyperdiag::*;

use crate::args::{parse_edges, parse_vertices, Command, Common, StrategyArg};

pub const FORMAT_VERSION: u32 = 1;

/// Process exit codes.
pub const CONFIRMED: u8 = 0;
pub const REFUTED: u8 = 1;
pub const USAGE: u8 = 2;
pub const BUDGET: u8 = 3;

pub enum Output {
    /// A JSON report wrapped with the config echo.
    Report(Value),
    /// Raw text in one of the library file formats.
    Text(String),
}

pub struct Run {
    pub output: Output,
    pub code: u8,
}

impl Run {
    fn report(result: Value, code: u8) -> Self {
        Run {
            output: Output::Report(result),
            code,
        }
    }
}

fn options(c: &Common) -> SearchOptions {
    SearchOptions {
        budget: c.budget,
        workers: c.workers,
        seed: c.seed,
        samples: c.samples,
    }
}

fn io_error(e: std::io::Error) -> Error {
    Error::Domain(e.to_string())
}

pub fn execute(cmd: &Command) -> Result<Run> {
    match cmd {
        Command::Topo { n, fe, edge_list, .. } => {
            let g = Graph::hypercube(*n)?;
            let fe = parse_edges(fe, *n)?;
            let g_eff = g.remove_edges(&fe)?;
            if *edge_list {
                return Ok(Run {
                    output: Output::Text(g_eff.to_edge_list()),
                    code: CONFIRMED,
                });
            }
            let degrees: Vec<usize> = g_eff.vertices().map(|v| g_eff.degree(v)).collect();
            Ok(Run::report(
                json!({
                    "vertex_count": g_eff.vertex_count(),
                    "edge_count": g_eff.edge_count(),
                    "min_degree": degrees.iter().min(),
                    "max_degree": degrees.iter().max(),
                    "removed_edges": fe,
                    "fingerprint": g_eff.fingerprint(),
                }),
                CONFIRMED,
            ))
        }

        Command::DeltaV { n, m, check, common } => {
            let formula = min_boundary_formula(*m, *n as u64)?;
            let mut result = json!({ "formula": formula });
            let mut code = CONFIRMED;
            if check.is_some() {
                let g = Graph::hypercube(*n)?;
                let (brute, witness) = min_boundary_bruteforce(&g, *m as usize, common.budget)?;
                let agree = brute as u64 == formula;
                result["brute_force"] = json!(brute);
                result["witness"] = json!(witness);
                result["match"] = json!(agree);
                if !agree {
                    code = REFUTED;
                }
            }
            Ok(Run::report(result, code))
        }

        Command::Distinguish {
            n, fe, f1, f2, model, ..
        } => {
            let g = Graph::hypercube(*n)?;
            let fe = parse_edges(fe, *n)?;
            let (f1, f2) = (parse_vertices(f1, *n)?, parse_vertices(f2, *n)?);
            let verdict = distinguishable(&g, &fe, &f1, &f2, (*model).into())?;
            let mut record = verdict.record(&fe, &f1, &f2);
            record["revalidated"] = json!(verdict.revalidate(&g, &fe, &f1, &f2)?);
            let code = if verdict.distinguishable { CONFIRMED } else { REFUTED };
            Ok(Run::report(record, code))
        }

        Command::Tdiag {
            n, t, fe, model, common,
        } => {
            let g = Graph::hypercube(*n)?;
            let fe = parse_edges(fe, *n)?;
            let out = t_diagnosable_check(&g, &fe, *t, (*model).into(), &options(common))?;
            let code = if out.diagnosable { CONFIRMED } else { REFUTED };
            Ok(Run::report(json!(out), code))
        }

        Command::Thdiag { n, h, model, common } => {
            let g = Graph::hypercube(*n)?;
            let r = h_edge_tolerable_diagnosability(&g, *h, (*model).into(), &options(common))?;
            let code = match r.mode {
                SearchMode::Exact => CONFIRMED,
                SearchMode::Sampled => BUDGET,
            };
            Ok(Run::report(json!(r), code))
        }

        Command::VerifyTheorem { n, h, model, common } => {
            let r = verify_theorem(*n, *h, (*model).into(), &options(common))?;
            let code = match r.outcome {
                TheoremOutcome::Confirmed => CONFIRMED,
                TheoremOutcome::Refuted => REFUTED,
                TheoremOutcome::Supported => BUDGET,
            };
            Ok(Run::report(json!(r), code))
        }

        Command::Syndrome {
            n,
            fe,
            fv,
            model,
            strategy,
            target,
            common,
        } => {
            let g = Graph::hypercube(*n)?;
            let scenario = FaultScenario::new(parse_vertices(fv, *n)?, parse_edges(fe, *n)?);
            let strategy = match strategy {
                StrategyArg::Zeros => AdversaryStrategy::AllZeros,
                StrategyArg::Ones => AdversaryStrategy::AllOnes,
                StrategyArg::Random => AdversaryStrategy::SeededRandom { seed: common.seed },
                StrategyArg::Mimic => AdversaryStrategy::Mimic {
                    target: parse_vertices(target, *n)?,
                },
            };
            let sigma = generate_syndrome(&g, &scenario, (*model).into(), &strategy)?;
            Ok(Run {
                output: Output::Text(sigma.to_text(&g)?),
                code: CONFIRMED,
            })
        }

        Command::Diagnose {
            n,
            syndrome,
            t,
            model,
            common,
        } => {
            let g = Graph::hypercube(*n)?;
            let text = fs::read_to_string(syndrome).map_err(io_error)?;
            let sigma = Syndrome::from_text(&text, &g)?;
            let fe = sigma.removed_edges().clone();
            let r = diagnose(&g, &fe, &sigma, *t, (*model).into(), common.budget)?;
            let code = match r.outcome {
                DiagnosisOutcome::Unique(_) => CONFIRMED,
                _ => REFUTED,
            };
            let mut record = r.record();
            record["removed_edges"] = json!(fe);
            Ok(Run::report(record, code))
        }

        Command::Orbits { n, h, .. } => {
            let cat = edge_orbit_catalog(*n, *h)?;
            Ok(Run::report(json!(cat), CONFIRMED))
        }
    }
}

/// The report document: config echo, format version and result.
pub fn document(cmd: &Command, result: Value) -> Value {
    json!({
        "config": cmd,
        "format_version": FORMAT_VERSION,
        "result": result,
    })
}

pub fn error_code(e: &Error) -> u8 {
    match e {
        Error::Budget { .. } => BUDGET,
        _ => USAGE,
    }
}
