//! Command-line front end. [`run`] parses arguments, dispatches to the
//! library, and returns the rendered output with an exit code.
//!
//! Every command builds a JSON value with a top-level `"schema"` field;
//! rationals are serialized as `"p/q"` strings and object keys are sorted.
//! Text mode renders the same value as indented `key: value` lines.

pub mod expr;
pub mod suites;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::cat_a::HomCtx;
use crate::chambers::{act_chamber, fundamental_chamber, minimal_gallery, nearby_signs, Chamber, Gallery};
use crate::clans::{
    antipodal_search, clan_regions, deep_coroot, is_generic_clan, kz_depth_bound, kz_genericity, local_chambers, Region,
};
use crate::error::{Error, Result};
use crate::exactalg::{parse_q, q, q_to_string, ParamPoint, Poly, Q};
use crate::nilhecke::{canonical_degree, theta_coeffs, NilOp};
use crate::rootdata::{build_root_system, RootSystem, RootType, WeylElem};
use crate::strata::{circuits, stratum_compare, MClass};
use crate::translation::{a1_example_check, gamma_rule, star, BimodElement, GridReport};

use expr::{eval_expr, eval_poly, parse};
use suites::{run_suite, SuiteOptions, SuiteReport};

pub const SCHEMA: &str = "hecke-forge/1";

#[derive(Parser, Debug)]
#[command(
    name = "hecke-forge",
    version,
    about = "Exact calculus for trigonometric DAHAs and the chamber category"
)]
struct Cli {
    /// Root system type (A, B, C, D, E, F, G, BC).
    #[arg(long = "type", global = true)]
    ty: Option<String>,
    /// Rank of the root system.
    #[arg(long, global = true)]
    rank: Option<usize>,
    /// Session length bound.
    #[arg(long, global = true, default_value_t = 6)]
    maxlen: usize,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized cases.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Describe the root system.
    Roots,
    /// List affine Weyl group elements up to the length bound.
    Weyl,
    #[command(subcommand)]
    Chamber(ChamberCmd),
    #[command(subcommand)]
    Gallery(GalleryCmd),
    #[command(subcommand)]
    Op(OpCmd),
    #[command(subcommand)]
    Hom(HomCmd),
    #[command(subcommand)]
    Bimodule(BimoduleCmd),
    #[command(subcommand)]
    Strata(StrataCmd),
    #[command(subcommand)]
    Clans(ClansCmd),
    /// Run a verification suite.
    Verify {
        /// One of demazure, iota, basis, galleries, gamma, a1, strata, clans, hc.
        suite: String,
    },
}

/// A chamber `w·κ_d`.
#[derive(Args, Debug, Clone)]
struct ChamberArg {
    /// Shift d, comma separated, one entry per orbit.
    #[arg(long, allow_hyphen_values = true)]
    d: Option<String>,
    /// Weyl word such as `s1*s0`, or `e`.
    #[arg(long, default_value = "e")]
    w: String,
}

#[derive(Subcommand, Debug)]
enum ChamberCmd {
    /// Signs of the walls near an interior point of `w·κ_d`.
    Signs {
        #[command(flatten)]
        at: ChamberArg,
        /// Report walls whose value has absolute value below this radius.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        radius: String,
    },
}

#[derive(Subcommand, Debug)]
enum GalleryCmd {
    /// Minimal gallery from `κ_{d}` (moved by `w`) to `y·κ_{e}`.
    Between {
        #[arg(long, allow_hyphen_values = true)]
        d: Option<String>,
        #[arg(long, default_value = "e")]
        w: String,
        #[arg(long, allow_hyphen_values = true)]
        e: Option<String>,
        #[arg(long, default_value = "e")]
        y: String,
    },
}

#[derive(Subcommand, Debug)]
enum OpCmd {
    /// Normal form, θ-coordinates and canonical degree of an expression.
    NormalForm { expr: String },
    /// Applies an expression to a polynomial.
    Apply {
        expr: String,
        #[arg(long)]
        to: String,
    },
}

#[derive(Subcommand, Debug)]
enum HomCmd {
    /// τ-basis of `Hom(κ_d, κ_e)` up to the length bound.
    Basis {
        #[arg(long, allow_hyphen_values = true)]
        source: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        target: Option<String>,
    },
    /// Decomposes an expression in `Hom(κ_d, κ_e)`.
    Member {
        expr: String,
        #[arg(long, allow_hyphen_values = true)]
        source: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        target: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum BimoduleCmd {
    /// `τ_{d,w} ⋆ τ_{e,y}` with its decomposition and the γ-rule.
    Star {
        #[arg(long, allow_hyphen_values = true)]
        d: Option<String>,
        #[arg(long, default_value = "e")]
        w: String,
        #[arg(long, allow_hyphen_values = true)]
        e: Option<String>,
        #[arg(long, default_value = "e")]
        y: String,
    },
    /// Decomposes an expression as an element of `𝐁⟨d⟩`.
    Member {
        expr: String,
        #[arg(long, allow_hyphen_values = true)]
        d: Option<String>,
    },
    /// The A1 worked example at a rational parameter.
    VerifyA1 {
        #[arg(long, default_value = "2/7", allow_hyphen_values = true)]
        c: String,
    },
}

#[derive(Subcommand, Debug)]
enum StrataCmd {
    /// The set of circuit classes.
    Circuits,
    /// Compares the strata of c and c′.
    Compare {
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long, allow_hyphen_values = true)]
        cprime: String,
    },
}

#[derive(Args, Debug, Clone)]
struct ClanArgs {
    #[arg(long, allow_hyphen_values = true)]
    c: String,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
}

#[derive(Subcommand, Debug)]
enum ClansCmd {
    /// The (c, λ)-clans with genericity flags.
    List {
        #[command(flatten)]
        at: ClanArgs,
    },
    /// Chambers of the local arrangement on 𝔞.
    Local {
        #[command(flatten)]
        at: ClanArgs,
    },
    /// KZ genericity of `w⁻¹(ν₀ − γ)` with `γ = −N·2ρ^∨`.
    KzCheck {
        #[command(flatten)]
        at: ClanArgs,
        /// Depth N; defaults to the computed bound.
        #[arg(long, allow_hyphen_values = true)]
        depth: Option<String>,
    },
    /// Searches y with `(w⁻¹κ₀)~` antipodal to `(y⁻¹κ_d)~`.
    Antipode {
        #[command(flatten)]
        at: ClanArgs,
        #[arg(long, allow_hyphen_values = true)]
        d: String,
        #[arg(long, default_value = "e")]
        w: String,
    },
}

/// Rendered output and exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Runs the CLI on the given arguments (the first is the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: 2,
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok((value, code)) => {
            let stdout = if cli.json {
                serde_json::to_string_pretty(&value).expect("serializable") + "\n"
            } else {
                render_text(&value)
            };
            Outcome {
                stdout,
                stderr: String::new(),
                code,
            }
        }
        Err(e) => {
            let stdout = if cli.json {
                serde_json::to_string_pretty(&json!({"schema": SCHEMA, "error": e.to_string()})).expect("serializable")
                    + "\n"
            } else {
                String::new()
            };
            Outcome {
                stdout,
                stderr: format!("error: {e}\n"),
                code: 2,
            }
        }
    }
}

fn system_choice(cli: &Cli) -> Result<Option<(RootType, usize)>> {
    match (&cli.ty, cli.rank) {
        (None, None) => Ok(None),
        (Some(t), Some(n)) => Ok(Some((t.parse()?, n))),
        _ => Err(Error::InvalidArgument(
            "--type and --rank must be given together".into(),
        )),
    }
}

fn system(cli: &Cli) -> Result<RootSystem> {
    let (ty, n) = system_choice(cli)?.unwrap_or((RootType::A, 1));
    build_root_system(ty, n)
}

fn qs(v: &[Q]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(q_to_string(x))).collect())
}

fn qv(x: &Q) -> Value {
    Value::String(q_to_string(x))
}

/// Parses a comma-separated list of rationals of the given length.
fn parse_qs(text: &str, len: usize, what: &str) -> Result<Vec<Q>> {
    let v = text
        .split(',')
        .map(|s| parse_q(s).ok_or_else(|| Error::InvalidArgument(format!("{what}: `{s}` is not a rational"))))
        .collect::<Result<Vec<Q>>>()?;
    if v.len() != len {
        return Err(Error::RankMismatch(format!(
            "{what} has {} entries, {len} expected",
            v.len()
        )));
    }
    Ok(v)
}

fn shift_or_zero(rs: &RootSystem, text: &Option<String>, what: &str) -> Result<Vec<Q>> {
    match text {
        Some(t) => parse_qs(t, rs.n_orb(), what),
        None => Ok(vec![q(0); rs.n_orb()]),
    }
}

/// Parses `e` or a product of simple reflections such as `s1*s0`.
pub fn parse_word(rs: &RootSystem, text: &str) -> Result<WeylElem> {
    let t = text.trim();
    if t == "e" || t.is_empty() {
        return Ok(rs.identity());
    }
    let mut word = Vec::new();
    for part in t.split('*') {
        let p = part.trim();
        let i: usize = p
            .strip_prefix('s')
            .and_then(|r| r.parse().ok())
            .ok_or_else(|| Error::UnknownSymbol(p.to_string()))?;
        if i > rs.rank {
            return Err(Error::RankMismatch(format!("s{i} in rank {}", rs.rank)));
        }
        word.push(i);
    }
    Ok(rs.word_to_elem(&word))
}

fn chamber_json(c: &Chamber) -> Value {
    json!({"u": qs(&c.u), "z": qs(&c.z)})
}

fn gallery_json(rs: &RootSystem, g: &Gallery) -> Value {
    json!({
        "length": g.len(),
        "chambers": g.chambers.iter().map(chamber_json).collect::<Vec<_>>(),
        "walls": g.walls.iter().map(|w| json!({
            "kind": if w.is_phi() { "phi" } else { "psi" },
            "function": w.render(rs),
        })).collect::<Vec<_>>(),
    })
}

fn op_json(rs: &RootSystem, a: &NilOp) -> Value {
    let terms: Vec<Value> = a
        .terms()
        .map(|(w, g)| json!({"w": rs.word_string(w), "coeff": g.render(&rs.var_names)}))
        .collect();
    json!({"normal_form": a.render(rs), "terms": terms})
}

fn coeffs_json(rs: &RootSystem, coeffs: &std::collections::BTreeMap<WeylElem, crate::exactalg::RatFunc>) -> Value {
    let mut items: Vec<(usize, String, String)> = coeffs
        .iter()
        .map(|(w, f)| (rs.length(w), rs.word_string(w), f.render(&rs.var_names)))
        .collect();
    items.sort();
    Value::Array(items.into_iter().map(|(_, w, f)| json!({"w": w, "coeff": f})).collect())
}

fn region_json(r: &Region, names: &[String]) -> Value {
    json!({
        "signs": r.signs,
        "point": qs(&r.point),
        "lineality": r.lineality.iter().map(|v| qs(v)).collect::<Vec<_>>(),
        "rays": r.rays.iter().map(|v| qs(v)).collect::<Vec<_>>(),
        "walls": r.arrangement.iter().map(|f| f.render(names)).collect::<Vec<_>>(),
    })
}

fn class_json(rs: &RootSystem, m: &MClass) -> Value {
    json!({"class": m.render(rs), "coords": m.coords})
}

fn grid_json(r: &GridReport) -> Value {
    json!({"checked": r.checked, "failures": r.failures})
}

fn report_json(r: &SuiteReport) -> Value {
    json!({
        "suite": r.suite,
        "passed": r.passed(),
        "repro": r.repro,
        "cases": r.cases.iter().map(|c| json!({
            "name": c.name,
            "pass": c.pass,
            "detail": c.detail,
            "repro": r.repro,
        })).collect::<Vec<_>>(),
    })
}

fn with_schema(rs: Option<&RootSystem>, body: Value) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), Value::String(SCHEMA.into()));
    if let Some(rs) = rs {
        m.insert("system".into(), Value::String(rs.name()));
    }
    if let Value::Object(b) = body {
        m.extend(b);
    }
    Value::Object(m)
}

fn dispatch(cli: &Cli) -> Result<(Value, i32)> {
    if let Cmd::Verify { suite } = &cli.cmd {
        let opts = SuiteOptions {
            system: system_choice(cli)?,
            maxlen: cli.maxlen,
            seed: cli.seed,
        };
        let rep = run_suite(suite, &opts)?;
        let code = if rep.passed() { 0 } else { 1 };
        return Ok((with_schema(None, report_json(&rep)), code));
    }
    let rs = system(cli)?;
    let rs = &rs;
    let body = match &cli.cmd {
        Cmd::Roots => roots_json(rs),
        Cmd::Weyl => {
            let ws = rs.enumerate_weyl(cli.maxlen);
            json!({
                "maxlen": cli.maxlen,
                "count": ws.len(),
                "elements": ws.iter().map(|w| json!({
                    "word": rs.word_string(w),
                    "length": rs.length(w),
                    "linear": w.lin().iter().map(|r| qs(r)).collect::<Vec<_>>(),
                    "translation": qs(w.trans()),
                })).collect::<Vec<_>>(),
            })
        }
        Cmd::Chamber(ChamberCmd::Signs { at, radius }) => {
            let d = shift_or_zero(rs, &at.d, "--d")?;
            let w = parse_word(rs, &at.w)?;
            let radius = parse_qs(radius, 1, "--radius")?.remove(0);
            let c = act_chamber(&w, &fundamental_chamber(rs, &d));
            let mut walls: Vec<(String, String, Q)> = nearby_signs(rs, &c, &radius)
                .into_iter()
                .map(|(wall, v)| {
                    (
                        (if wall.is_phi() { "phi" } else { "psi" }).to_string(),
                        wall.render(rs),
                        v,
                    )
                })
                .collect();
            walls.sort();
            json!({
                "chamber": chamber_json(&c),
                "walls": walls.into_iter().map(|(k, f, v)| json!({
                    "kind": k,
                    "function": f,
                    "value": qv(&v),
                    "sign": if v > q(0) { "+" } else { "-" },
                })).collect::<Vec<_>>(),
            })
        }
        Cmd::Gallery(GalleryCmd::Between { d, w, e, y }) => {
            let a = act_chamber(
                &parse_word(rs, w)?,
                &fundamental_chamber(rs, &shift_or_zero(rs, d, "--d")?),
            );
            let b = act_chamber(
                &parse_word(rs, y)?,
                &fundamental_chamber(rs, &shift_or_zero(rs, e, "--e")?),
            );
            let g = minimal_gallery(rs, &a, &b)?;
            json!({
                "gallery": gallery_json(rs, &g),
                "dinv": crate::chambers::dinv(rs, &a, &b).render(&rs.var_names),
            })
        }
        Cmd::Op(OpCmd::NormalForm { expr }) => {
            let e = parse(expr)?;
            let a = eval_expr(&e, rs)?;
            let (theta, integral) = theta_coeffs(rs, &a)?;
            let degree = if a.is_zero() {
                Value::Null
            } else {
                json!(canonical_degree(rs, &a)?)
            };
            json!({
                "expr": e.to_string(),
                "op": op_json(rs, &a),
                "theta": coeffs_json(rs, &theta),
                "integral": integral,
                "degree": degree,
            })
        }
        Cmd::Op(OpCmd::Apply { expr, to }) => {
            let a = eval_expr(&parse(expr)?, rs)?;
            let f = eval_poly(to, rs)?;
            let g = a.apply(rs, &f)?;
            json!({"input": f.render(&rs.var_names), "output": g.render(&rs.var_names)})
        }
        Cmd::Hom(HomCmd::Basis { source, target }) => {
            let (c, c2) = chambers_pair(rs, source, target)?;
            let ctx = HomCtx::new(rs, cli.maxlen);
            let mut items = Vec::new();
            for w in rs.enumerate_weyl(cli.maxlen) {
                let t = ctx.tau_basis_elem(&c, &c2, &w)?;
                items.push(json!({
                    "w": rs.word_string(&w),
                    "op": op_json(rs, &t.op),
                    "lead": t.lead.to_ratfunc().render(&rs.var_names),
                    "gallery_length": t.gallery.len(),
                }));
            }
            json!({"source": chamber_json(&c), "target": chamber_json(&c2), "basis": items})
        }
        Cmd::Hom(HomCmd::Member { expr, source, target }) => {
            let (c, c2) = chambers_pair(rs, source, target)?;
            let a = eval_expr(&parse(expr)?, rs)?;
            let ctx = HomCtx::new(rs, cli.maxlen);
            let (coeffs, member) = ctx.decompose(&c, &c2, &a)?;
            json!({"member": member, "coefficients": coeffs_json(rs, &coeffs)})
        }
        Cmd::Bimodule(BimoduleCmd::Star { d, w, e, y }) => {
            let d = shift_or_zero(rs, d, "--d")?;
            let e = shift_or_zero(rs, e, "--e")?;
            let w = parse_word(rs, w)?;
            let y = parse_word(rs, y)?;
            let ctx = HomCtx::new(rs, cli.maxlen);
            let a = BimodElement::tau(&ctx, &d, &w)?;
            let b = BimodElement::tau(&ctx, &e, &y)?;
            let p = star(rs, &a, &b);
            let (coeffs, member) = p.decompose(&ctx)?;
            let g = gamma_rule(&ctx, &d, &e, &w, &y)?;
            json!({
                "shift": qs(&p.shift),
                "product": op_json(rs, p.op()),
                "member": member,
                "coefficients": coeffs_json(rs, &coeffs),
                "gamma": {
                    "predicate": g.predicate,
                    "predicate_d": g.predicate_d,
                    "computed": format!("{:?}", g.computed).to_lowercase(),
                    "agrees": g.agrees(),
                },
            })
        }
        Cmd::Bimodule(BimoduleCmd::Member { expr, d }) => {
            let d = shift_or_zero(rs, d, "--d")?;
            let a = BimodElement::new(rs, eval_expr(&parse(expr)?, rs)?, d.clone());
            let ctx = HomCtx::new(rs, cli.maxlen);
            let (coeffs, member) = a.decompose(&ctx)?;
            json!({"shift": qs(&d), "member": member, "coefficients": coeffs_json(rs, &coeffs)})
        }
        Cmd::Bimodule(BimoduleCmd::VerifyA1 { c }) => {
            let c = parse_qs(c, 1, "--c")?.remove(0);
            let r = a1_example_check(cli.maxlen, &c)?;
            json!({
                "c": qv(&c),
                "maxlen": cli.maxlen,
                "passed": r.ok(),
                "membership": grid_json(&r.membership),
                "closure": grid_json(&r.closure),
                "converse": grid_json(&r.converse),
            })
        }
        Cmd::Strata(StrataCmd::Circuits) => {
            let cs = circuits(rs);
            json!({"classes": cs.iter().map(|m| class_json(rs, m)).collect::<Vec<_>>()})
        }
        Cmd::Strata(StrataCmd::Compare { c, cprime }) => {
            let c1 = ParamPoint::rational(&parse_qs(c, rs.n_orb(), "--c")?);
            let c2 = ParamPoint::rational(&parse_qs(cprime, rs.n_orb(), "--cprime")?);
            let cmp = stratum_compare(&circuits(rs), &c1, &c2)?;
            json!({
                "relation": cmp.relation(),
                "same": cmp.same,
                "antipodal": cmp.antipodal,
                "open_c": cmp.open_c,
                "open_cprime": cmp.open_c2,
                "signs": cmp.signs.iter().map(|(m, a, b)| json!({"class": m.render(rs), "c": a, "cprime": b})).collect::<Vec<_>>(),
            })
        }
        Cmd::Clans(cmd) => clans_cmd(rs, cli, cmd)?,
        Cmd::Verify { .. } => unreachable!("handled above"),
    };
    Ok((with_schema(Some(rs), body), 0))
}

fn chambers_pair(rs: &RootSystem, source: &Option<String>, target: &Option<String>) -> Result<(Chamber, Chamber)> {
    Ok((
        fundamental_chamber(rs, &shift_or_zero(rs, source, "--source")?),
        fundamental_chamber(rs, &shift_or_zero(rs, target, "--target")?),
    ))
}

fn roots_json(rs: &RootSystem) -> Value {
    let xnames: Vec<String> = rs.var_names[rs.n_orb()..].to_vec();
    let render_bar = |bar: &[Q]| Poly::linear(bar, &q(0)).render(&xnames);
    let mut positive: Vec<(String, String)> = rs
        .positive_families()
        .map(|f| (render_bar(&f.bar), f.orbit.symbol().to_string()))
        .collect();
    positive.sort();
    positive.dedup();
    json!({
        "type": rs.ty.to_string(),
        "rank": rs.rank,
        "variables": rs.var_names,
        "orbits": rs.orbits.iter().map(|o| o.symbol()).collect::<Vec<_>>(),
        "simple_roots": rs.simple.iter().map(|v| render_bar(v)).collect::<Vec<_>>(),
        "affine_simple_roots": rs.affine_simple.iter().map(|a| json!({
            "root": rs.root_poly(a).render(&rs.var_names),
            "orbit": a.orbit.symbol(),
        })).collect::<Vec<_>>(),
        "highest_root": render_bar(&rs.theta),
        "root_families": positive.into_iter().map(|(r, o)| json!({"root": r, "orbit": o})).collect::<Vec<_>>(),
        "coxeter": rs.coxeter.iter().map(|row| row.iter().map(|m| match m {
            Some(m) => json!(m),
            None => Value::Null,
        }).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "z0": qs(&rs.z0),
    })
}

fn clans_cmd(rs: &RootSystem, cli: &Cli, cmd: &ClansCmd) -> Result<Value> {
    let point = |at: &ClanArgs| -> Result<(Vec<Q>, Vec<Q>)> {
        let c = parse_qs(&at.c, rs.n_orb(), "--c")?;
        let lambda = match &at.lambda {
            Some(t) => parse_qs(t, rs.rank, "--lambda")?,
            None => vec![q(0); rs.rank],
        };
        Ok((c, lambda))
    };
    let xnames: Vec<String> = rs.var_names[rs.n_orb()..].to_vec();
    Ok(match cmd {
        ClansCmd::List { at } => {
            let (c, lambda) = point(at)?;
            let regions = clan_regions(rs, &c, &lambda);
            json!({
                "c": qs(&c),
                "lambda": qs(&lambda),
                "clans": regions.iter().map(|r| {
                    let mut v = region_json(r, &xnames);
                    v["generic"] = json!(is_generic_clan(r));
                    v
                }).collect::<Vec<_>>(),
            })
        }
        ClansCmd::Local { at } => {
            let (c, lambda) = point(at)?;
            let local = local_chambers(rs, &c, &lambda);
            json!({
                "c": qs(&c),
                "lambda": qs(&lambda),
                "phi": local.phi.iter().map(|a| rs.root_poly(a).render(&rs.var_names)).collect::<Vec<_>>(),
                "psi": local.psi.iter().map(|a| rs.psi_poly(a).render(&rs.var_names)).collect::<Vec<_>>(),
                "chambers": (0..local.regions.len()).map(|i| {
                    let mut v = region_json(&local.regions[i], &rs.var_names);
                    v["antipode"] = json!(local.antipode(i));
                    v
                }).collect::<Vec<_>>(),
            })
        }
        ClansCmd::KzCheck { at, depth } => {
            let (c, lambda) = point(at)?;
            let ws = rs.enumerate_weyl(cli.maxlen);
            let n = match depth {
                Some(t) => parse_qs(t, 1, "--depth")?.remove(0),
                None => kz_depth_bound(rs, &c, &lambda, &ws),
            };
            let gamma = deep_coroot(rs, &n);
            let rep = kz_genericity(rs, &c, &lambda, &gamma, &ws);
            json!({
                "c": qs(&c),
                "lambda": qs(&lambda),
                "depth": qv(&n),
                "gamma": qs(&gamma),
                "all_generic": rep.all_generic(),
                "clan_count": rep.clans.len(),
                "entries": rep.entries.iter().map(|e| json!({
                    "w": rs.word_string(&e.w),
                    "point": qs(&e.point),
                    "clan": e.clan,
                    "generic": e.generic,
                })).collect::<Vec<_>>(),
            })
        }
        ClansCmd::Antipode { at, d, w } => {
            let (c, lambda) = point(at)?;
            let d = parse_qs(d, rs.n_orb(), "--d")?;
            let w = parse_word(rs, w)?;
            let y = antipodal_search(rs, &c, &lambda, &d, &w, cli.maxlen)?;
            json!({"w": rs.word_string(&w), "y": rs.word_string(&y), "length": rs.length(&y)})
        }
    })
}

/// Plain-text rendering of a JSON value.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    text_into(v, 0, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => Some(format!(
            "[{}]",
            a.iter()
                .map(|x| scalar(x).unwrap_or_default())
                .collect::<Vec<_>>()
                .join(", ")
        )),
        _ => None,
    }
}

fn text_into(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        text_into(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        text_into(x, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}
