//! Problem files: JSON documents holding `L`, the `∂t`-action `U`, a global
//! integral basis `W`, a local integral basis at infinity `Vinf` and an
//! optional integrand `f`. Operators are ascending lists of coefficient
//! expressions.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{parse_expr, parse_poly_x, Matrix, PolyX, RatX};
use crate::basis::BasisFrame;
use crate::error::{Error, Result};
use crate::ore::{AElement, OreModule, OreOp, TAction};

/// Raw contents of a problem file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemFile {
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub notes: String,
    #[serde(rename = "L")]
    pub l: Vec<String>,
    #[serde(rename = "U", default, skip_serializing_if = "Option::is_none")]
    pub u: Option<Vec<String>>,
    #[serde(rename = "W")]
    pub w: Vec<Vec<String>>,
    #[serde(rename = "Vinf")]
    pub vinf: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<String>>,
    /// Expected `e` of `W`, checked on load.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<String>,
    /// Expected derivative matrix of `W`, checked on load.
    #[serde(rename = "M", default, skip_serializing_if = "Option::is_none")]
    pub m: Option<Vec<Vec<String>>>,
}

/// A loaded and validated problem.
#[derive(Clone, Debug)]
pub struct Problem {
    pub file: ProblemFile,
    pub module: Arc<OreModule>,
    pub w: BasisFrame,
    pub vinf: BasisFrame,
    pub f: AElement,
}

/// Locates an expression string inside the source text so that errors
/// point into the file.
fn locate(text: &str, expr: &str, err: Error) -> Error {
    let Error::Parse {
        column, message, ..
    } = err
    else {
        return err;
    };
    let quoted = format!("\"{expr}\"");
    match text.find(&quoted) {
        Some(pos) => {
            let before = &text[..pos];
            let line = before.matches('\n').count() + 1;
            let line_start = before.rfind('\n').map_or(0, |i| i + 1);
            Error::Parse {
                line,
                column: pos - line_start + 1 + column,
                message,
            }
        }
        None => Error::Parse {
            line: 0,
            column,
            message: format!("{message} (in \"{expr}\")"),
        },
    }
}

fn parse_op(text: &str, coeffs: &[String], what: &str) -> Result<OreOp> {
    if coeffs.is_empty() {
        return Err(Error::InvalidProblem(format!("{what} has no coefficients")));
    }
    let cs = coeffs
        .iter()
        .map(|s| parse_expr(s).map_err(|e| locate(text, s, e)))
        .collect::<Result<Vec<RatX>>>()?;
    Ok(OreOp::new(cs))
}

fn parse_ops(text: &str, ops: &[Vec<String>], what: &str) -> Result<Vec<OreOp>> {
    ops.iter()
        .enumerate()
        .map(|(i, o)| parse_op(text, o, &format!("{what}[{i}]")))
        .collect()
}

/// Parses and validates a problem file.
pub fn parse_problem(text: &str) -> Result<Problem> {
    let file: ProblemFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    load(file, text)
}

/// Validates an already deserialized problem file.
pub fn load(file: ProblemFile, text: &str) -> Result<Problem> {
    let l = parse_op(text, &file.l, "L")?;
    let n = match l.order() {
        Some(n) if n >= 1 => n,
        _ => return Err(Error::InvalidProblem("L must have order at least 1".into())),
    };
    if file.w.len() != n || file.vinf.len() != n {
        return Err(Error::InvalidProblem(format!(
            "W and Vinf must have {n} elements (the order of L), found {} and {}",
            file.w.len(),
            file.vinf.len()
        )));
    }
    let module = match &file.u {
        Some(u) => OreModule::with_action(l, TAction {
            u: parse_op(text, u, "U")?,
        })?,
        None => OreModule::new(l)?,
    };
    let w = BasisFrame::from_ops(&module, &parse_ops(text, &file.w, "W")?)?;
    w.check_global_integral()?;
    let vinf = BasisFrame::from_ops(&module, &parse_ops(text, &file.vinf, "Vinf")?)?;
    vinf.check_local_at_infinity()?;
    if let Some(e) = &file.e {
        let e = parse_poly_x(e).map_err(|err| locate(text, e, err))?.monic();
        if &e != w.e() {
            return Err(Error::InvalidProblem(format!(
                "declared e = {e} differs from computed e = {}",
                w.e()
            )));
        }
    }
    if let Some(m) = &file.m {
        let parsed: Matrix<PolyX> = m
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| parse_poly_x(s).map_err(|err| locate(text, s, err)))
                    .collect()
            })
            .collect::<Result<_>>()?;
        if &parsed != w.m() {
            return Err(Error::InvalidProblem(
                "declared derivative matrix M differs from the computed one".into(),
            ));
        }
    }
    let f = match &file.f {
        Some(f) => AElement::from_op(&module, &parse_op(text, f, "f")?),
        None => AElement::one(&module),
    };
    Ok(Problem {
        file,
        module,
        w,
        vinf,
        f,
    })
}

impl Problem {
    /// Canonical form of the file: every expression re-rendered.
    pub fn canonical_file(&self) -> ProblemFile {
        let ops = |fr: &BasisFrame| -> Vec<Vec<String>> {
            fr.elements().iter().map(|e| op_strings(&e.to_op())).collect()
        };
        ProblemFile {
            name: self.file.name.clone(),
            notes: self.file.notes.clone(),
            l: op_strings(self.module.operator()),
            u: self.module.action().map(|a| op_strings(&a.u)),
            w: ops(&self.w),
            vinf: ops(&self.vinf),
            f: self.file.f.as_ref().map(|_| op_strings(&self.f.to_op())),
            e: self.file.e.as_ref().map(|_| self.w.e().to_string()),
            m: self.file.m.as_ref().map(|_| {
                self.w
                    .m()
                    .iter()
                    .map(|r| r.iter().map(|p| p.to_string()).collect())
                    .collect()
            }),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.canonical_file()).expect("serializable")
    }
}

/// Ascending coefficient strings of an operator.
pub fn op_strings(op: &OreOp) -> Vec<String> {
    if op.is_zero() {
        return vec!["0".into()];
    }
    op.coeffs().iter().map(|c| c.to_string()).collect()
}
