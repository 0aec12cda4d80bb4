use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use milnor_core::algebra::Rational;
use milnor_core::critical::{
    self, critical_points_on_sphere, link_points, projection_differential_sigma,
};
use milnor_core::fields::{self, certify_all, df_min_singular_sample, euler_certificates, IdentityCertificate};
use milnor_core::flow::{self, equivalence_report, sphere_fiber_sample, tube_fiber_sample};
use milnor_core::numeric::angle_between;
use milnor_core::weights::{infer_weights, QhStatus, QhVerdict, WeightSystem};
use milnor_core::MapGerm;
use serde_json::{json, Value};

use crate::report::{ExitCode, Format, PointRow, RunReport};
use crate::spec::{leading_degree, load_germ, LoadedGerm};

#[derive(Debug, Parser)]
#[command(name = "milnor", version, about = "Milnor fibrations of real quasi-homogeneous map germs")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Summarize a germ: polynomials, orders and inferred weights.
    Info { germ: PathBuf },

    /// Infer a weight system making P and Q quasi-homogeneous.
    Weights {
        germ: PathBuf,
        /// Allow P and Q to have different weighted degrees.
        #[arg(long)]
        allow_distinct_degrees: bool,
    },

    /// Check the Euler-field identities exactly.
    Identities {
        germ: PathBuf,
        /// Weights to certify against, e.g. `--weights 2,1` or `--weights 1/2,1`.
        #[arg(long, value_delimiter = ',', value_parser = parse_rational)]
        weights: Option<Vec<Rational>>,
        /// Common degree of P and Q; read off P when omitted.
        #[arg(long, value_parser = parse_rational, requires = "weights")]
        degree: Option<Rational>,
    },

    /// Locate critical points of f/|f| on the sphere of radius epsilon.
    Critical {
        germ: PathBuf,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value_t = 64)]
        starts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },

    /// Sample the link f⁻¹(0) ∩ S_ε.
    Link {
        germ: PathBuf,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },

    /// Sample a fiber of the tube or sphere fibration over the angle theta.
    Fiber {
        germ: PathBuf,
        #[arg(long, value_enum)]
        mode: FiberMode,
        #[arg(long, allow_negative_numbers = true)]
        theta: f64,
        #[arg(long)]
        epsilon: f64,
        /// Tube radius; required in tube mode.
        #[arg(long)]
        eta: Option<f64>,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },

    /// Check the Euler-flow map from the tube to the sphere numerically.
    Equivalence {
        germ: PathBuf,
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        eta: f64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },

    /// Smallest singular value of Df sampled on the sphere off the zero set.
    Rank {
        germ: PathBuf,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FiberMode {
    Tube,
    Sphere,
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    Rational::from_str(s.trim()).map_err(|_| format!("cannot parse {s:?} as an exact rational"))
}

/// What a run prints and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: i32,
}

impl Outcome {
    fn failure(message: impl std::fmt::Display, code: ExitCode) -> Outcome {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
            exit_code: code.into(),
        }
    }
}

fn library_error(e: milnor_core::Error) -> Outcome {
    let code = match e {
        milnor_core::Error::Precondition(_) | milnor_core::Error::DimensionMismatch { .. } => ExitCode::Usage,
        _ => ExitCode::Violation,
    };
    Outcome::failure(e, code)
}

/// Parses `args` (program name first), runs the command and renders its report.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    exit_code: e.exit_code(),
                }
            } else {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    exit_code: e.exit_code(),
                }
            };
        }
    };
    let report = match execute(&cli.command) {
        Ok(report) => report,
        Err(outcome) => return outcome,
    };
    let Some(text) = report.render(cli.format) else {
        return Outcome::failure(
            format!("`{}` has no point list; csv output is available for critical, link and fiber", report.command),
            ExitCode::Usage,
        );
    };
    let exit_code = i32::from(report.exit_code);
    match &cli.out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome {
                stdout: String::new(),
                stderr: String::new(),
                exit_code,
            },
            Err(e) => Outcome::failure(format!("cannot write {}: {e}", path.display()), ExitCode::Usage),
        },
        None => Outcome {
            stdout: text,
            stderr: String::new(),
            exit_code,
        },
    }
}

fn read_germ(path: &Path) -> Result<LoadedGerm, Outcome> {
    let bytes = std::fs::read(path)
        .map_err(|e| Outcome::failure(format!("cannot read {}: {e}", path.display()), ExitCode::Usage))?;
    load_germ(&bytes).map_err(|e| Outcome::failure(format!("{}: {e}", path.display()), ExitCode::Usage))
}

fn germ_inputs(path: &Path, germ: &MapGerm) -> serde_json::Map<String, Value> {
    let names = germ.variables();
    let mut map = serde_json::Map::new();
    map.insert("germ".into(), json!(path.display().to_string()));
    map.insert("variables".into(), json!(names));
    map.insert("P".into(), json!(germ.p().display_with(names).to_string()));
    map.insert("Q".into(), json!(germ.q().display_with(names).to_string()));
    map
}

fn with_flags(mut inputs: serde_json::Map<String, Value>, flags: Value) -> Value {
    if let Value::Object(flags) = flags {
        inputs.extend(flags);
    }
    Value::Object(inputs)
}

fn weights_json(ws: &WeightSystem) -> Value {
    json!({
        "weights": ws.weights().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "degrees": [ws.degree_p().to_string(), ws.degree_q().to_string()],
    })
}

fn verdict_json(verdict: &QhVerdict) -> Value {
    match &verdict.status {
        QhStatus::QuasiHomogeneous {
            weights,
            solution_dimension,
        } => {
            let mut v = weights_json(weights);
            v["quasi_homogeneous"] = json!(true);
            v["same_degree"] = json!(verdict.same_degree);
            v["solution_dimension"] = json!(solution_dimension);
            v
        }
        QhStatus::NotQuasiHomogeneous { reason } => json!({
            "quasi_homogeneous": false,
            "reason": reason,
        }),
    }
}

fn certificate_json(c: &IdentityCertificate, names: &[String]) -> Value {
    json!({
        "name": c.name,
        "holds": c.holds,
        "residual": c.residual.display_with(names).to_string(),
    })
}

/// Declared weights when present, otherwise inferred ones with b₁ = b₂.
fn flow_weights(loaded: &LoadedGerm) -> Result<Result<WeightSystem, String>, Outcome> {
    if let Some(ws) = &loaded.weights {
        return Ok(if ws.has_same_degree() {
            Ok(ws.clone())
        } else {
            Err(format!("declared weights {ws} give P and Q different degrees"))
        });
    }
    let verdict = infer_weights(&loaded.germ, true).map_err(library_error)?;
    Ok(match verdict.status {
        QhStatus::QuasiHomogeneous { weights, .. } => Ok(weights),
        QhStatus::NotQuasiHomogeneous { reason } => Err(reason),
    })
}

fn report(
    command: &str,
    inputs: Value,
    tolerances: Value,
    results: Value,
    exit_code: ExitCode,
    germ: &MapGerm,
) -> RunReport {
    RunReport {
        command: command.into(),
        inputs,
        tolerances,
        results,
        exit_code,
        rows: None,
        variables: germ.variables().to_vec(),
    }
}

fn execute(command: &Command) -> Result<RunReport, Outcome> {
    match command {
        Command::Info { germ: path } => {
            let loaded = read_germ(path)?;
            let germ = &loaded.germ;
            let verdict = infer_weights(germ, false).map_err(library_error)?;
            let results = json!({
                "num_vars": germ.num_vars(),
                "P_terms": germ.p().num_terms(),
                "Q_terms": germ.q().num_terms(),
                "order": germ.order(),
                "declared_weights": loaded.weights.as_ref().map(weights_json),
                "inferred_weights": verdict_json(&verdict),
            });
            Ok(report("info", Value::Object(germ_inputs(path, germ)), json!({}), results, ExitCode::Pass, germ))
        }

        Command::Weights {
            germ: path,
            allow_distinct_degrees,
        } => {
            let loaded = read_germ(path)?;
            let verdict = infer_weights(&loaded.germ, !allow_distinct_degrees).map_err(library_error)?;
            let mut results = verdict_json(&verdict);
            results["declared"] = json!(loaded.weights.as_ref().map(weights_json));
            let inputs = with_flags(
                germ_inputs(path, &loaded.germ),
                json!({ "allow_distinct_degrees": allow_distinct_degrees }),
            );
            let code = ExitCode::from_verdict(verdict.is_quasi_homogeneous());
            Ok(report("weights", inputs, json!({}), results, code, &loaded.germ))
        }

        Command::Identities {
            germ: path,
            weights,
            degree,
        } => {
            let loaded = read_germ(path)?;
            let germ = &loaded.germ;
            let names = germ.variables();
            let inputs = with_flags(
                germ_inputs(path, germ),
                json!({
                    "weights": weights.as_ref().map(|w| w.iter().map(ToString::to_string).collect::<Vec<_>>()),
                    "degree": degree.as_ref().map(ToString::to_string),
                }),
            );
            let tolerances = json!({ "residual": 0.0 });
            let (ws, source) = match weights {
                Some(w) => (override_weights(germ, w, degree.as_ref())?, "override"),
                None => match &loaded.weights {
                    Some(ws) => (ws.clone(), "declared"),
                    None => {
                        let verdict = infer_weights(germ, true).map_err(library_error)?;
                        match verdict.weights() {
                            Some(ws) => (ws.clone(), "inferred"),
                            None => {
                                let results = json!({ "weights": verdict_json(&verdict), "all_hold": false });
                                return Ok(report("identities", inputs, tolerances, results, ExitCode::Violation, germ));
                            }
                        }
                    }
                },
            };
            let certificates = if ws.has_same_degree() {
                certify_all(germ, &ws)
            } else {
                euler_certificates(germ, &ws).map(Vec::from)
            }
            .map_err(library_error)?;
            let all_hold = ws.has_same_degree() && certificates.iter().all(|c| c.holds);
            let mut weights_value = weights_json(&ws);
            weights_value["source"] = json!(source);
            let results = json!({
                "weights": weights_value,
                "certificates": certificates.iter().map(|c| certificate_json(c, names)).collect::<Vec<_>>(),
                "all_hold": all_hold,
            });
            Ok(report("identities", inputs, tolerances, results, ExitCode::from_verdict(all_hold), germ))
        }

        Command::Critical {
            germ: path,
            epsilon,
            starts,
            seed,
        } => {
            let loaded = read_germ(path)?;
            let germ = &loaded.germ;
            let result = critical_points_on_sphere(germ, *epsilon, *starts, *seed).map_err(library_error)?;
            let sigmas = result
                .points
                .iter()
                .map(|p| projection_differential_sigma(germ, p))
                .collect::<milnor_core::Result<Vec<f64>>>()
                .map_err(library_error)?;
            let mut results = serde_json::to_value(&result).expect("serializable");
            results["count"] = json!(result.len());
            results["differential_sigmas"] = json!(sigmas);
            let inputs = with_flags(
                germ_inputs(path, germ),
                json!({ "epsilon": epsilon, "starts": starts, "seed": seed }),
            );
            let tolerances = json!({
                "converged_residual": critical::CONVERGED_RESIDUAL,
                "accepted_residual": critical::ACCEPTED_RESIDUAL,
                "max_iterations": critical::MAX_ITERATIONS,
                "merge_radius": critical::MERGE_RADIUS,
                "near_link_tolerance": critical::NEAR_LINK_TOLERANCE,
                "singular_tolerance": critical::SINGULAR_TOLERANCE,
            });
            let rows = point_rows(&result.points, &result.residuals);
            let mut r = report(
                "critical",
                inputs,
                tolerances,
                results,
                ExitCode::from_verdict(result.is_empty()),
                germ,
            );
            r.rows = Some(rows);
            Ok(r)
        }

        Command::Link {
            germ: path,
            epsilon,
            samples,
            seed,
        } => {
            let loaded = read_germ(path)?;
            let germ = &loaded.germ;
            let link = link_points(germ, *epsilon, *samples, *seed).map_err(library_error)?;
            let rows = point_rows(&link.points, &link.f_norms);
            let mut results = serde_json::to_value(&link).expect("serializable");
            results["count"] = json!(link.points.len());
            let inputs = with_flags(
                germ_inputs(path, germ),
                json!({ "epsilon": epsilon, "samples": samples, "seed": seed }),
            );
            let tolerances = json!({
                "link_tolerance": critical::LINK_TOLERANCE,
                "merge_radius": critical::MERGE_RADIUS,
            });
            let mut r = report("link", inputs, tolerances, results, ExitCode::Pass, germ);
            r.rows = Some(rows);
            Ok(r)
        }

        Command::Fiber {
            germ: path,
            mode,
            theta,
            epsilon,
            eta,
            samples,
            seed,
        } => {
            let loaded = read_germ(path)?;
            let germ = &loaded.germ;
            let num = germ.to_numeric();
            let direction = [theta.cos(), theta.sin()];
            let (points, residuals, extra) = match mode {
                FiberMode::Tube => {
                    let Some(eta) = eta else {
                        return Err(Outcome::failure("tube mode needs --eta", ExitCode::Usage));
                    };
                    let tube = tube_fiber_sample(germ, *epsilon, *eta, *theta, *samples, *seed).map_err(library_error)?;
                    let target = [eta * direction[0], eta * direction[1]];
                    let residuals: Vec<f64> = tube
                        .iter()
                        .map(|p| (p.f_value[0] - target[0]).hypot(p.f_value[1] - target[1]))
                        .collect();
                    let within: Vec<bool> = tube.iter().map(|p| p.within_ball).collect();
                    let points: Vec<Vec<f64>> = tube.into_iter().map(|p| p.x).collect();
                    (points, residuals, json!({ "within_ball": within }))
                }
                FiberMode::Sphere => {
                    let points = sphere_fiber_sample(germ, *epsilon, *theta, *samples, *seed).map_err(library_error)?;
                    let residuals: Vec<f64> = points.iter().map(|p| angle_between(num.value(p), direction)).collect();
                    (points, residuals, json!({}))
                }
            };
            let mut results = json!({
                "mode": mode_name(*mode),
                "points": points,
                "residuals": residuals,
                "count": points.len(),
            });
            if let (Value::Object(r), Value::Object(e)) = (&mut results, extra) {
                r.extend(e);
            }
            let inputs = with_flags(
                germ_inputs(path, germ),
                json!({
                    "mode": mode_name(*mode),
                    "theta": theta,
                    "epsilon": epsilon,
                    "eta": eta,
                    "samples": samples,
                    "seed": seed,
                }),
            );
            let tolerances = json!({
                "tube_tolerance": flow::TUBE_TOLERANCE,
                "angular_tolerance": flow::ANGULAR_TOLERANCE,
                "near_link_tolerance": critical::NEAR_LINK_TOLERANCE,
                "merge_radius": critical::MERGE_RADIUS,
                "max_eta_ratio": flow::DEFAULT_ETA_RATIO,
            });
            let rows = point_rows(&points, &residuals);
            let mut r = report("fiber", inputs, tolerances, results, ExitCode::Pass, germ);
            r.rows = Some(rows);
            Ok(r)
        }

        Command::Equivalence {
            germ: path,
            epsilon,
            eta,
            samples,
            seed,
        } => {
            let loaded = read_germ(path)?;
            let germ = &loaded.germ;
            let inputs = with_flags(
                germ_inputs(path, germ),
                json!({ "epsilon": epsilon, "eta": eta, "samples": samples, "seed": seed }),
            );
            let tolerances = json!({
                "max_angular_deviation": flow::MAX_ANGULAR_DEVIATION,
                "max_sphere_residual": flow::MAX_SPHERE_RESIDUAL,
                "tube_tolerance": flow::TUBE_TOLERANCE,
                "injectivity_radius": flow::INJECTIVITY_RADIUS,
                "max_eta_ratio": flow::DEFAULT_ETA_RATIO,
            });
            let ws = match flow_weights(&loaded)? {
                Ok(ws) => ws,
                Err(reason) => {
                    let results = json!({ "status": "NotQuasiHomogeneous", "reason": reason });
                    return Ok(report("equivalence", inputs, tolerances, results, ExitCode::Violation, germ));
                }
            };
            let eq = equivalence_report(germ, &ws, *epsilon, *eta, *samples, *seed).map_err(library_error)?;
            let mut results = serde_json::to_value(&eq).expect("serializable");
            results["status"] = json!("QuasiHomogeneous");
            results["weights"] = weights_json(&ws);
            Ok(report("equivalence", inputs, tolerances, results, ExitCode::from_verdict(eq.verdict), germ))
        }

        Command::Rank {
            germ: path,
            epsilon,
            samples,
            seed,
        } => {
            let loaded = read_germ(path)?;
            let germ = &loaded.germ;
            let rank = df_min_singular_sample(germ, *epsilon, *samples, *seed).map_err(library_error)?;
            let results = serde_json::to_value(&rank).expect("serializable");
            let inputs = with_flags(
                germ_inputs(path, germ),
                json!({ "epsilon": epsilon, "samples": samples, "seed": seed }),
            );
            let tolerances = json!({ "off_variety_tolerance": fields::OFF_VARIETY_TOLERANCE });
            Ok(report("rank", inputs, tolerances, results, ExitCode::Pass, germ))
        }
    }
}

fn mode_name(mode: FiberMode) -> &'static str {
    match mode {
        FiberMode::Tube => "tube",
        FiberMode::Sphere => "sphere",
    }
}

fn point_rows(points: &[Vec<f64>], residuals: &[f64]) -> Vec<PointRow> {
    points
        .iter()
        .zip(residuals)
        .map(|(p, r)| PointRow {
            point: p.clone(),
            residual: *r,
        })
        .collect()
}

/// Weight system from `--weights`, with the degree read off P's first term
/// unless given.
fn override_weights(germ: &MapGerm, weights: &[Rational], degree: Option<&Rational>) -> Result<WeightSystem, Outcome> {
    if weights.len() != germ.num_vars() {
        return Err(Outcome::failure(
            format!("--weights has {} entries for {} variables", weights.len(), germ.num_vars()),
            ExitCode::Usage,
        ));
    }
    let degree = match degree {
        Some(b) => b.clone(),
        None => leading_degree(germ.p(), weights)
            .or_else(|| leading_degree(germ.q(), weights))
            .ok_or_else(|| Outcome::failure("cannot read a degree off P = Q = 0; pass --degree", ExitCode::Usage))?,
    };
    WeightSystem::with_same_degree(weights.to_vec(), degree).map_err(library_error)
}
