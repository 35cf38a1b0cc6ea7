//! Python bindings. Each binding is a thin wrapper over a plain Rust
//! function in this crate, so the logic is testable without an interpreter.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use hecke_forge::cli::expr::{eval_expr, eval_poly, parse, render};
use hecke_forge::exactalg::{parse_q, q_to_string, Q};
use hecke_forge::rootdata::{build_root_system, RootSystem, RootType};
use hecke_forge::strata::circuits;
use hecke_forge::{clans, Error, Result};

fn system(ty: &str, rank: usize) -> Result<RootSystem> {
    build_root_system(ty.parse()?, rank)
}

fn rationals(v: &[String]) -> Result<Vec<Q>> {
    v.iter()
        .map(|s| parse_q(s).ok_or_else(|| Error::InvalidArgument(format!("`{s}` is not a rational"))))
        .collect()
}

/// Canonical rendering of a parsed expression.
pub fn canonical_expr(text: &str) -> Result<String> {
    Ok(render(&parse(text)?))
}

/// Normal form `Σ g_w·[w]` of an expression.
pub fn normal_form(text: &str, ty: &str, rank: usize) -> Result<String> {
    let rs = system(ty, rank)?;
    Ok(eval_expr(&parse(text)?, &rs)?.render(&rs))
}

/// Applies an expression to a polynomial given in the same grammar.
pub fn apply(text: &str, poly: &str, ty: &str, rank: usize) -> Result<String> {
    let rs = system(ty, rank)?;
    let f = eval_poly(poly, &rs)?;
    Ok(eval_expr(&parse(text)?, &rs)?.apply(&rs, &f)?.render(&rs.var_names))
}

/// Circuit classes, rendered.
pub fn circuit_classes(ty: &str, rank: usize) -> Result<Vec<String>> {
    let rs = system(ty, rank)?;
    Ok(circuits(&rs).iter().map(|m| m.render(&rs)).collect())
}

/// `(interior point, generic)` for every `(c, λ)`-clan.
pub fn clan_list(c: &[String], lambda: &[String], ty: &str, rank: usize) -> Result<Vec<(Vec<String>, bool)>> {
    let rs = system(ty, rank)?;
    let (c, lambda) = (rationals(c)?, rationals(lambda)?);
    if c.len() != rs.n_orb() || lambda.len() != rs.rank {
        return Err(Error::RankMismatch(format!(
            "expected {} parameters and {} coordinates",
            rs.n_orb(),
            rs.rank
        )));
    }
    Ok(clans::clan_regions(&rs, &c, &lambda)
        .iter()
        .map(|r| (r.point.iter().map(q_to_string).collect(), clans::is_generic_clan(r)))
        .collect())
}

/// Runs a verify suite; returns whether it passed and its JSON report.
pub fn verify_suite(name: &str, system: Option<(&str, usize)>, maxlen: usize, seed: u64) -> Result<(bool, String)> {
    let system = match system {
        Some((t, n)) => Some((t.parse::<RootType>()?, n)),
        None => None,
    };
    let mut args = vec!["hecke-forge".to_string(), "--json".into(), "verify".into(), name.into()];
    if let Some((t, n)) = system {
        args.extend(["--type".into(), t.to_string(), "--rank".into(), n.to_string()]);
    }
    args.extend(["--maxlen".into(), maxlen.to_string(), "--seed".into(), seed.to_string()]);
    let out = hecke_forge::cli::run(args);
    match out.code {
        0 | 1 => Ok((out.code == 0, out.stdout)),
        _ => Err(Error::InvalidArgument(out.stderr.trim().to_string())),
    }
}

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyfunction(name = "canonical_expr")]
fn py_canonical_expr(text: &str) -> PyResult<String> {
    canonical_expr(text).map_err(py_err)
}

#[pyfunction(name = "normal_form")]
#[pyo3(signature = (text, r#type = "A", rank = 1))]
fn py_normal_form(text: &str, r#type: &str, rank: usize) -> PyResult<String> {
    normal_form(text, r#type, rank).map_err(py_err)
}

#[pyfunction(name = "apply")]
#[pyo3(signature = (text, poly, r#type = "A", rank = 1))]
fn py_apply(text: &str, poly: &str, r#type: &str, rank: usize) -> PyResult<String> {
    apply(text, poly, r#type, rank).map_err(py_err)
}

#[pyfunction(name = "circuits")]
fn py_circuits(r#type: &str, rank: usize) -> PyResult<Vec<String>> {
    circuit_classes(r#type, rank).map_err(py_err)
}

#[pyfunction(name = "clans")]
#[pyo3(signature = (c, lam, r#type = "A", rank = 1))]
fn py_clans(c: Vec<String>, lam: Vec<String>, r#type: &str, rank: usize) -> PyResult<Vec<(Vec<String>, bool)>> {
    clan_list(&c, &lam, r#type, rank).map_err(py_err)
}

#[pyfunction(name = "verify")]
#[pyo3(signature = (suite, r#type = None, rank = None, maxlen = 6, seed = 0))]
fn py_verify(
    suite: &str,
    r#type: Option<&str>,
    rank: Option<usize>,
    maxlen: usize,
    seed: u64,
) -> PyResult<(bool, String)> {
    let system = match (r#type, rank) {
        (Some(t), Some(n)) => Some((t, n)),
        (None, None) => None,
        _ => return Err(PyValueError::new_err("type and rank must be given together")),
    };
    verify_suite(suite, system, maxlen, seed).map_err(py_err)
}

#[pyfunction(name = "run")]
fn py_run(args: Vec<String>) -> (i32, String, String) {
    let out = hecke_forge::cli::run(std::iter::once("hecke-forge".to_string()).chain(args));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
#[pyo3(name = "_native")]
fn hecke_forge_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(py_canonical_expr, m)?)?;
    m.add_function(wrap_pyfunction!(py_normal_form, m)?)?;
    m.add_function(wrap_pyfunction!(py_apply, m)?)?;
    m.add_function(wrap_pyfunction!(py_circuits, m)?)?;
    m.add_function(wrap_pyfunction!(py_clans, m)?)?;
    m.add_function(wrap_pyfunction!(py_verify, m)?)?;
    m.add_function(wrap_pyfunction!(py_run, m)?)?;
    Ok(())
}
