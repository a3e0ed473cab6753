//! `ctfuchs` command-line driver.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use ctfuchs::algebra::RatX;
use ctfuchs::basis::BasisFrame;
use ctfuchs::hermite::{hermite_reduce, is_integrable};
use ctfuchs::polyred::additive_decompose;
use ctfuchs::problem::{op_strings, parse_problem, Problem};
use ctfuchs::telescope::{
    check_double_root_infinity, suggest_substitution, telescope, verify_telescoper, Frames,
    Method, Strategy, TelescopeOptions,
};
use ctfuchs::Error;

#[derive(Parser)]
#[command(name = "ctfuchs", version, about = "Creative telescoping with integral bases")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for the random evaluation points used by pre-filters.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Load and validate a problem file.
    Check { file: PathBuf },
    /// Print e and the derivative matrix of W.
    Diffmatrix { file: PathBuf },
    /// Normalize W at infinity and print the reduction data.
    Normalize { file: PathBuf },
    /// Hermite reduction of f with respect to W.
    Hermite { file: PathBuf },
    /// Additive decomposition of f by polynomial reduction.
    Decompose { file: PathBuf },
    /// Decide integrability of f.
    Integrable { file: PathBuf },
    /// Compute a minimal telescoper for f.
    Telescope {
        file: PathBuf,
        #[arg(long, default_value = "polyred")]
        method: Method,
        #[arg(long)]
        max_order: Option<usize>,
        /// Also compute and verify the certificate.
        #[arg(long)]
        certificate: bool,
        /// Reduce each derivative from scratch instead of iterating.
        #[arg(long)]
        direct: bool,
    },
}

/// Failure with an exit code and an optional report.
struct Failure {
    code: u8,
    error: Error,
    report: Option<Value>,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        let code = match error {
            Error::VerificationFailed(_) => 1,
            Error::Inconclusive { .. } => 4,
            _ => 2,
        };
        Failure {
            code,
            error,
            report: None,
        }
    }
}

fn strs(v: &[RatX]) -> Value {
    json!(v.iter().map(|r| r.to_string()).collect::<Vec<_>>())
}

fn basis(frame: &BasisFrame) -> Value {
    json!(frame
        .elements()
        .iter()
        .map(|e| op_strings(&e.to_op()))
        .collect::<Vec<_>>())
}

fn load(path: &PathBuf) -> Result<Problem, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        Failure::from(Error::InvalidProblem(format!(
            "cannot read {}: {e}",
            path.display()
        )))
    })?;
    Ok(parse_problem(&text)?)
}

fn double_root_failure(p: &Problem) -> Failure {
    let s = suggest_substitution(&p.f, p.w.e());
    Failure {
        code: 3,
        error: Error::Precondition(
            "f does not have a double root at infinity; substitute x -> a + 1/x and \
             recompute the integral bases"
                .into(),
        ),
        report: Some(json!({
            "double_root_at_infinity": false,
            "substitution": {
                "a": s.a.to_string(),
                "L": op_strings(&s.l),
                "U": s.u.as_ref().map(op_strings),
                "f": op_strings(&s.f),
            }
        })),
    }
}

fn run(cli: &Cli) -> Result<Value, Failure> {
    match &cli.command {
        Command::Check { file } => {
            let p = load(file)?;
            Ok(json!({
                "name": p.file.name,
                "order": p.module.order(),
                "e": p.w.e().to_string(),
                "t_action": p.module.action().is_some(),
                "double_root_at_infinity": check_double_root_infinity(&p.f, &p.vinf)?,
            }))
        }
        Command::Diffmatrix { file } => {
            let p = load(file)?;
            let m: Vec<Vec<String>> = p
                .w
                .m()
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect())
                .collect();
            Ok(json!({ "e": p.w.e().to_string(), "M": m }))
        }
        Command::Normalize { file } => {
            let p = load(file)?;
            let fr = Frames::new(&p.w, &p.vinf, cli.seed)?;
            let nz = &fr.normalization;
            let b: Vec<Vec<String>> = fr
                .local
                .b
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect())
                .collect();
            let ech: Vec<Vec<String>> = fr
                .phi
                .echelon
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect())
                .collect();
            Ok(json!({
                "basis": basis(&fr.w),
                "tau": nz.tau,
                "iterations": nz.iterations,
                "tau_sums": nz.tau_sums,
                "bound": nz.bound,
                "lambda": fr.local.lambda,
                "e": fr.local.e.to_string(),
                "B": b,
                "delta": fr.local.delta,
                "deg_B": fr.local.deg_b(),
                "ell": fr.phi.ell,
                "window": [fr.phi.floor, fr.phi.top],
                "dim_V": fr.vspace.dim(),
                "dim_N_V": fr.phi.dim_nv(),
                "echelon": ech,
            }))
        }
        Command::Hermite { file } => {
            let p = load(file)?;
            let hf = hermite_reduce(&p.f, &p.w)?;
            Ok(json!({
                "g": strs(&hf.g),
                "h": strs(&hf.h_coords()),
                "steps": hf.steps,
            }))
        }
        Command::Decompose { file } => {
            let p = load(file)?;
            let fr = Frames::new(&p.w, &p.vinf, cli.seed)?;
            let dec = additive_decompose(&p.f, &fr.w, &fr.phi)?;
            Ok(json!({
                "basis": basis(&fr.w),
                "g": strs(&dec.g),
                "R": dec.r.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "d": dec.d.to_string(),
                "Q": dec.q.components.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "remainder": strs(&dec.remainder_coords(&fr.phi)),
                "integrable": dec.is_zero(),
            }))
        }
        Command::Integrable { file } => {
            let p = load(file)?;
            if !check_double_root_infinity(&p.f, &p.vinf)? {
                return Err(double_root_failure(&p));
            }
            let fr = Frames::new(&p.w, &p.vinf, cli.seed)?;
            let res = is_integrable(&p.f, &fr.w, &fr.vspace, &fr.ureducer, &fr.vinf)?;
            Ok(json!({
                "basis": basis(&fr.w),
                "integrable": res.integrable,
                "remainder": strs(&res.reduced.coords()),
                "antiderivative": res.antiderivative.as_deref().map(strs),
                "antiderivative_op": res
                    .antiderivative
                    .as_deref()
                    .map(|g| op_strings(&fr.w.element(g).to_op())),
            }))
        }
        Command::Telescope {
            file,
            method,
            max_order,
            certificate,
            direct,
        } => {
            let p = load(file)?;
            if *method == Method::Canonical && !check_double_root_infinity(&p.f, &p.vinf)? {
                return Err(double_root_failure(&p));
            }
            let fr = Frames::new(&p.w, &p.vinf, cli.seed)?;
            let opts = TelescopeOptions {
                method: *method,
                strategy: if *direct {
                    Strategy::Direct
                } else {
                    Strategy::Iterated
                },
                max_order: *max_order,
                certificate: *certificate,
                seed: cli.seed,
            };
            let run = telescope(&p.f, &fr, &opts)?;
            verify_telescoper(&run.telescoper, &p.f, &fr)?;
            let mut out = json!({
                "telescoper": run
                    .telescoper
                    .coeffs
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>(),
                "operator": run.telescoper.to_string(),
                "order": run.telescoper.order(),
                "order_bound": run.order_bound,
                "method": method.name(),
                "verified": true,
            });
            if let Some(g) = &run.telescoper.certificate {
                out["certificate"] = json!(op_strings(&g.to_op()));
            }
            Ok(out)
        }
    }
}

fn render_text(v: &Value) -> String {
    fn inline(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            Value::Array(a) => format!("[{}]", a.iter().map(inline).collect::<Vec<_>>().join(", ")),
            Value::Object(o) => format!(
                "{{{}}}",
                o.iter()
                    .map(|(k, v)| format!("{k}: {}", inline(v)))
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
            other => other.to_string(),
        }
    }
    let mut out = String::new();
    if let Value::Object(o) = v {
        for (k, v) in o {
            out.push_str(&format!("{k}: {}\n", inline(v)));
        }
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let emit = |v: &Value| {
        if cli.json {
            println!("{}", serde_json::to_string_pretty(v).unwrap());
        } else {
            print!("{}", render_text(v));
        }
    };
    match run(&cli) {
        Ok(v) => {
            emit(&v);
            ExitCode::SUCCESS
        }
        Err(f) => {
            if let Some(r) = &f.report {
                emit(r);
            }
            eprintln!("error: {}", f.error);
            ExitCode::from(f.code)
        }
    }
}
