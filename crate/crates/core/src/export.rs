//! Serialization of matrices, tables and reports to JSON, LaTeX and CSV.

use serde_json::{json, Value};

use crate::exactalg::{QMatrix, RatFun};
use crate::moduli::{dim_m1, weight_space_dim, FixedPoint, WeightTable};
use crate::report::CheckReport;
use crate::rmatrix::{FullR, RBlock};
use crate::stablebasis::SymMatrix;

pub const MATRIX_SCHEMA: &str = "spin-rmatrix/matrix/v1";
pub const FULL_R_SCHEMA: &str = "spin-rmatrix/full-r/v1";
pub const NUMERIC_SCHEMA: &str = "spin-rmatrix/numeric-matrix/v1";
pub const FIXED_POINTS_SCHEMA: &str = "spin-rmatrix/fixed-points/v1";
pub const DIMS_SCHEMA: &str = "spin-rmatrix/dims/v1";
pub const WEIGHTS_SCHEMA: &str = "spin-rmatrix/weights/v1";
pub const REPORT_SCHEMA: &str = "spin-rmatrix/verify/v1";

fn grid(rows: usize, cols: usize, f: impl Fn(usize, usize) -> String) -> Vec<Vec<String>> {
    (0..rows).map(|i| (0..cols).map(|j| f(i, j)).collect()).collect()
}

/// Symbolic matrix with shape and labels; `kind` names what it is.
pub fn matrix_json(m: &SymMatrix, kind: &str) -> Value {
    json!({
        "schema": MATRIX_SCHEMA,
        "kind": kind,
        "rows": m.rows(),
        "cols": m.cols(),
        "row_labels": m.row_labels(),
        "col_labels": m.col_labels(),
        "entries": m.text_grid(),
    })
}

pub fn rblock_json(b: &RBlock) -> Value {
    let mut v = matrix_json(&b.entries, "r_block");
    v["k"] = json!(b.k);
    v
}

/// `{schema, ell, basis_order, entries}` with `phi = 1`.
pub fn full_r_json(r: &FullR) -> Value {
    json!({
        "schema": FULL_R_SCHEMA,
        "ell": r.ell,
        "basis_order": "lex(a,b)",
        "entries": r.text_grid(),
    })
}

pub fn numeric_json(q: &QMatrix) -> Value {
    json!({
        "schema": NUMERIC_SCHEMA,
        "rows": q.rows(),
        "cols": q.cols(),
        "entries": grid(q.rows(), q.cols(), |i, j| q.get(i, j).to_string()),
    })
}

/// `\begin{pmatrix} ... \end{pmatrix}` from LaTeX cells.
pub fn pmatrix(cells: &[Vec<String>]) -> String {
    let mut s = String::from("\\begin{pmatrix}\n");
    for (i, row) in cells.iter().enumerate() {
        s.push_str(&row.join(" & "));
        if i + 1 < cells.len() {
            s.push_str(" \\\\");
        }
        s.push('\n');
    }
    s.push_str("\\end{pmatrix}\n");
    s
}

pub fn matrix_latex(m: &SymMatrix) -> String {
    pmatrix(&grid(m.rows(), m.cols(), |i, j| m.ratfun(i, j).to_latex()))
}

pub fn full_r_latex(r: &FullR) -> String {
    pmatrix(&grid(r.dim(), r.dim(), |i, j| r.entry(i, j).to_latex()))
}

pub fn numeric_latex(q: &QMatrix) -> String {
    pmatrix(&grid(q.rows(), q.cols(), |i, j| RatFun::constant(q.get(i, j).clone()).to_latex()))
}

/// Comma-separated rows. Text forms never contain commas.
pub fn csv(cells: &[Vec<String>]) -> String {
    let mut s = String::new();
    for row in cells {
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}

/// Tab-separated rows.
pub fn text(cells: &[Vec<String>]) -> String {
    let mut s = String::new();
    for row in cells {
        s.push_str(&row.join("\t"));
        s.push('\n');
    }
    s
}

pub fn numeric_cells(q: &QMatrix) -> Vec<Vec<String>> {
    grid(q.rows(), q.cols(), |i, j| q.get(i, j).to_string())
}

pub fn fixed_points_json(k: u32, n: usize, ell: u32, pts: &[FixedPoint]) -> Value {
    json!({
        "schema": FIXED_POINTS_SCHEMA,
        "k": k,
        "n": n,
        "ell": ell,
        "fixed_points": pts.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
    })
}

/// One row per `k = 0..=n ell`: `(k, dim M_1 or None, weight space dim)`.
pub fn dims_rows(n: usize, ell: u32) -> Vec<(u32, Option<i64>, u128)> {
    (0..=n as u32 * ell).map(|k| (k, dim_m1(k, n, ell).ok(), weight_space_dim(k, n, ell))).collect()
}

pub fn dims_json(n: usize, ell: u32) -> Value {
    let rows: Vec<Value> = dims_rows(n, ell)
        .into_iter()
        .map(|(k, d, w)| {
            let w = u64::try_from(w).map(Value::from).unwrap_or_else(|_| Value::from(w.to_string()));
            json!({ "k": k, "dim_m1": d, "weight_space_dim": w })
        })
        .collect();
    json!({ "schema": DIMS_SCHEMA, "n": n, "ell": ell, "rows": rows })
}

pub fn weights_json(k: u32, j: u32, j_prime: u32, variant: &str, t: &WeightTable) -> Value {
    json!({
        "schema": WEIGHTS_SCHEMA,
        "k": k,
        "j": j,
        "j_prime": j_prime,
        "variant": variant,
        "net_dimension": t.net_dimension(),
        "table": t,
    })
}

pub fn reports_json(reports: &[CheckReport]) -> Value {
    let ok = reports.iter().all(CheckReport::passed);
    json!({
        "schema": REPORT_SCHEMA,
        "status": if ok { "pass" } else { "fail" },
        "reports": reports,
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialize");
    s.push('\n');
    s
}
