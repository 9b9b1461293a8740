//! Argument parsing and dispatch for the `qmatcount` binary.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::{BigInt, BigUint};
use serde::Serialize;
use serde_json::{json, Value};

use qmatcount::formulas::{
    combinatorial_limits, congruent, Evaluator, LimitKind, Method, QBasic, SymKind, ZyKind,
};
use qmatcount::oracle::{
    bruhat_cell_counts, count_restricted, CountQuery, MatrixClass, OracleOptions, Strategy, DEFAULT_BUDGET,
};
use qmatcount::polyprobe::{default_q_list, probe};
use qmatcount::rook::{q_analogue_check, q_rook_polynomial, rook_count_t1, AnalogueClass};
use qmatcount::{make_field, Character, Error, SupportSet};

use crate::report::{Format, Report};
use crate::shape::{parse_shape_spec, Dims};
use crate::suites::{run_suite, Check, SuiteContext};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

#[derive(Debug, Parser)]
#[command(name = "qmatcount", version, about = "Exact counts of matrices over finite fields with forbidden entries")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Common {
    /// Threads used inside oracle calls.
    #[arg(long, global = true, default_value_t = default_workers())]
    pub workers: usize,
    /// Largest estimated amount of enumeration work allowed.
    #[arg(long, global = true, env = "QMAT_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count matrices with the oracle.
    Count(CountArgs),
    /// Evaluate a closed form or recursion.
    Formula(FormulaArgs),
    /// Run a named verification suite.
    Verify(VerifyArgs),
    /// Rook numbers of the free cells, optionally checked against counts.
    Rook(RookArgs),
    /// Fit counts at several q by a polynomial and grade the fit.
    Probe(ProbeArgs),
    /// Tally invertible zero-diagonal matrices by Bruhat cell.
    Bruhat(BruhatArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ShapeArgs {
    /// Rows; defaults to --n.
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Forbidden positions in the shape language.
    #[arg(long, default_value = "none")]
    pub support: String,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CountArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub shape: ShapeArgs,
    #[arg(long)]
    pub q: u64,
    /// Omit for the whole rank distribution.
    #[arg(long)]
    pub rank: Option<usize>,
    #[arg(long, default_value = "general")]
    pub class: MatrixClass,
    #[arg(long, allow_hyphen_values = true)]
    pub character: Option<Character>,
    #[arg(long, default_value = "auto")]
    pub strategy: Strategy,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FormulaArgs {
    /// One of: frect, matz, g, sym, sym0_even, sk, sq, z, y, sym0_char,
    /// symz, qnumber, qfactorial, qdoublefactorial, derangements,
    /// partial_involutions.
    #[arg(long)]
    pub name: String,
    #[arg(long)]
    pub n: i64,
    #[arg(long)]
    pub k: Option<i64>,
    #[arg(long)]
    pub rank: Option<i64>,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long, default_value = "closed")]
    pub method: Method,
    #[arg(long, allow_hyphen_values = true)]
    pub character: Option<Character>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Restrict every suite to this field order.
    #[arg(long)]
    pub q: Option<u64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RookArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub shape: ShapeArgs,
    #[arg(long)]
    pub rank: usize,
    /// Also count over GF(q) and check the congruence.
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long, value_enum, default_value = "general")]
    pub class: AnalogueArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AnalogueArg {
    General,
    Symmetric,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ProbeArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub shape: ShapeArgs,
    #[arg(long)]
    pub rank: Option<usize>,
    #[arg(long, default_value = "general")]
    pub class: MatrixClass,
    #[arg(long, allow_hyphen_values = true)]
    pub character: Option<Character>,
    #[arg(long, default_value = "auto")]
    pub strategy: Strategy,
    /// Comma-separated field orders.
    #[arg(long, value_delimiter = ',')]
    pub qs: Option<Vec<u64>>,
    /// Largest q values held out from the fit.
    #[arg(long, default_value_t = 1)]
    pub holdout: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BruhatArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub q: u64,
}

/// Failure of a command, with the exit status it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
    /// Partial results worth reporting despite the failure.
    pub report: Option<Report>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
            report: None,
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
        report: None,
    }
}

fn dec(v: &BigUint) -> String {
    v.to_string()
}

fn decs(v: &[BigUint]) -> Vec<String> {
    v.iter().map(dec).collect()
}

impl Common {
    fn options(&self, strategy: Strategy) -> OracleOptions {
        OracleOptions::default()
            .with_strategy(strategy)
            .with_workers(self.workers)
            .with_budget(self.budget)
    }
}

fn inputs(common: &Common, args: &impl Serialize) -> Value {
    let mut v = serde_json::to_value(args).expect("arguments serialize");
    let map = v.as_object_mut().expect("argument struct");
    map.insert("workers".into(), json!(common.workers));
    map.insert("budget".into(), json!(common.budget.to_string()));
    v
}

fn support(shape: &ShapeArgs) -> Result<SupportSet, Failure> {
    let dims = Dims {
        m: shape.m.or(shape.n),
        n: shape.n,
    };
    parse_shape_spec(&shape.support, dims).map_err(|e| usage(format!("--support {:?}: {e}", shape.support)))
}

/// Builds the oracle query, rejecting incompatible flags before any work.
fn query(
    q: Option<u64>,
    s: SupportSet,
    rank: Option<usize>,
    class: MatrixClass,
    character: Option<Character>,
) -> Result<CountQuery, Failure> {
    if character.is_some() && class != MatrixClass::SymmetricWithCharacter {
        return Err(usage("--character needs --class symmetric_with_character"));
    }
    if class == MatrixClass::SymmetricWithCharacter && q.is_some_and(|q| q % 2 == 0) {
        return Err(Error::CharacterInEvenCharacteristic.into());
    }
    Ok(match class {
        MatrixClass::General => CountQuery::general(s, rank),
        MatrixClass::Symmetric => CountQuery::symmetric(s, rank),
        MatrixClass::Skew => CountQuery::skew(s, rank),
        MatrixClass::SymmetricWithCharacter => CountQuery::with_character(s, rank, character),
    })
}

/// Runs a parsed command and returns its report.
pub fn run(cli: &Cli) -> Result<Report, Failure> {
    let start = Instant::now();
    let common = &cli.common;
    if common.workers == 0 {
        return Err(usage("--workers must be positive"));
    }
    let mut report = match &cli.command {
        Command::Count(a) => count(common, a)?,
        Command::Formula(a) => formula(common, a)?,
        Command::Verify(a) => verify(common, a)?,
        Command::Rook(a) => rook(common, a)?,
        Command::Probe(a) => probe_cmd(common, a).map_err(|mut f| {
            if let Some(r) = f.report.as_mut() {
                r.set_elapsed(start.elapsed());
            }
            f
        })?,
        Command::Bruhat(a) => bruhat(common, a)?,
    };
    report.set_elapsed(start.elapsed());
    Ok(report)
}

/// Exit status for a finished report.
pub fn exit_code(report: &Report) -> i32 {
    if report.pass == Some(false) {
        EXIT_FAILED
    } else {
        EXIT_OK
    }
}

fn count(common: &Common, a: &CountArgs) -> Result<Report, Failure> {
    let field = make_field(a.q)?;
    let s = support(&a.shape)?;
    let query = query(Some(a.q), s, a.rank, a.class, a.character)?;
    let v = count_restricted(&field, &query, &common.options(a.strategy))?;
    let mut r = Report::new("count", inputs(common, a));
    r.value = Some(dec(&v.value));
    r.results = json!({
        "value": dec(&v.value),
        "method": v.method.to_string(),
        "work": v.work.to_string(),
        "transposed": v.transposed,
        "by_rank": v.by_rank.as_deref().map(decs),
        "by_rank_character": v.by_rank_character.as_ref().map(|t| {
            t.iter().map(|[p, m]| json!({"+": dec(p), "-": dec(m)})).collect::<Vec<_>>()
        }),
    });
    Ok(r)
}

fn need(v: Option<i64>, flag: &str, name: &str) -> Result<i64, Failure> {
    v.ok_or_else(|| usage(format!("formula {name} needs {flag}")))
}

fn formula(common: &Common, a: &FormulaArgs) -> Result<Report, Failure> {
    let name = a.name.as_str();
    let ev = || -> Result<Evaluator, Failure> {
        let q = a.q.ok_or_else(|| usage(format!("formula {name} needs --q")))?;
        Ok(Evaluator::new(q)?)
    };
    let character = || a.character.ok_or_else(|| usage(format!("formula {name} needs --character")));
    let value: BigInt = match name {
        "frect" => ev()?.f_rect(need(a.k, "--k", name)?, a.n, a.method)?,
        "matz" => ev()?.matz_count(a.n, need(a.k, "--k", name)?, need(a.rank, "--rank", name)?)?,
        "g" => ev()?.g_zero_diag(a.n, need(a.rank, "--rank", name)?, a.method)?,
        "sym" => {
            let kind = match (a.rank, a.character) {
                (None, None) => SymKind::Invertible,
                (Some(_), None) => SymKind::Rank,
                (_, Some(_)) => SymKind::RankCharacter,
            };
            let rank = if kind == SymKind::RankCharacter { Some(need(a.rank, "--rank", name)?) } else { a.rank };
            ev()?.sym_formulas(kind, a.n, rank, a.character)?
        }
        "sym0_even" => ev()?.sym0_even_q(a.n, need(a.rank, "--rank", name)?)?,
        "sk" => ev()?.sk_count(a.n, a.rank.unwrap_or(a.n), a.method)?,
        "sq" => ev()?.sq_table(a.n, character()?)?,
        "z" => ev()?.bilinear_zy(ZyKind::Z, a.n)?,
        "y" => ev()?.bilinear_zy(ZyKind::Y, a.n)?,
        "sym0_char" => {
            let (k, r) = (need(a.k, "--k", name)?, need(a.rank, "--rank", name)?);
            ev()?.sym0_char_recursive(a.n, k, r, character()?)?
        }
        "symz" => ev()?.symz_count(a.n, need(a.k, "--k", name)?, a.character, a.method)?,
        "qnumber" => ev()?.q_basics(QBasic::Number, a.n)?,
        "qfactorial" => ev()?.q_basics(QBasic::Factorial, a.n)?,
        "qdoublefactorial" => ev()?.q_basics(QBasic::DoubleFactorial, a.n)?,
        "derangements" => combinatorial_limits(LimitKind::Derangement, a.n, None)?,
        "partial_involutions" => combinatorial_limits(LimitKind::PartialInvolution, a.n, a.rank)?,
        other => return Err(usage(format!("unknown formula {other:?}"))),
    };
    let mut r = Report::new("formula", inputs(common, a));
    r.value = Some(value.to_string());
    r.results = json!({ "value": value.to_string(), "method": a.method.to_string() });
    Ok(r)
}

fn verify(common: &Common, a: &VerifyArgs) -> Result<Report, Failure> {
    let ctx = SuiteContext {
        options: common.options(Strategy::Auto),
        q: a.q,
    };
    if let Some(q) = a.q {
        make_field(q)?;
    }
    let checks = run_suite(&a.suite, &ctx)?;
    let passed = checks.iter().filter(|c| c.pass).count();
    let mut r = Report::new("verify", inputs(common, a));
    r.results = json!({ "checks": checks.len(), "passed": passed });
    Ok(r.with_checks(checks))
}

fn rook(common: &Common, a: &RookArgs) -> Result<Report, Failure> {
    let s = support(&a.shape)?;
    let t_1 = rook_count_t1(&s, a.rank)?;
    let mut r = Report::new("rook", inputs(common, a));
    let mut results = json!({
        "t_1": dec(&t_1),
        "q_rook_polynomial": q_rook_polynomial(&s, a.rank)?.to_string(),
    });
    r.value = Some(dec(&t_1));
    if let Some(q) = a.q {
        let field = make_field(q)?;
        let class = match a.class {
            AnalogueArg::General => AnalogueClass::General,
            AnalogueArg::Symmetric => AnalogueClass::Symmetric,
        };
        let rep = q_analogue_check(&field, &s, a.rank, class, &common.options(Strategy::Auto))?;
        results["analogue"] = serde_json::to_value(&rep).expect("serializes");
        results["analogue"]["t_q"] = json!(dec(&rep.t_q));
        results["analogue"]["t_1"] = json!(dec(&rep.t_1));
        results["analogue"]["modulus"] = json!(dec(&rep.modulus));
        results["analogue"]["t_q_residue"] = json!(dec(&rep.t_q_residue));
        results["analogue"]["t_1_residue"] = json!(dec(&rep.t_1_residue));
        r.results = results;
        return Ok(r.with_checks(vec![Check {
            suite: "rook",
            name: format!("congruence r={} q={q}", a.rank),
            pass: rep.holds,
            detail: format!("t_q={} t_1={} modulus={}", rep.t_q, rep.t_1, rep.modulus),
        }]));
    }
    r.results = results;
    Ok(r)
}

fn samples_json(samples: &[(u64, BigUint)]) -> Value {
    samples.iter().map(|(q, v)| json!({"q": q, "count": dec(v)})).collect()
}

fn probe_cmd(common: &Common, a: &ProbeArgs) -> Result<Report, Failure> {
    let s = support(&a.shape)?;
    let qs = a.qs.clone().unwrap_or_else(|| default_q_list(a.class));
    if a.class == MatrixClass::SymmetricWithCharacter && qs.iter().any(|q| q % 2 == 0) {
        return Err(Error::CharacterInEvenCharacteristic.into());
    }
    let query = query(None, s, a.rank, a.class, a.character)?;
    let mut r = Report::new("probe", inputs(common, a));
    match probe(&query, &qs, a.holdout, &common.options(a.strategy)) {
        Ok(res) => {
            let residuals: Vec<Value> = res
                .residuals
                .iter()
                .map(|x| json!({"q": x.q, "expected": x.expected.to_string(), "actual": dec(&x.actual)}))
                .collect();
            r.results = json!({
                "verdict": res.verdict,
                "fitted": res.fitted.as_ref().map(|p| p.to_string()),
                "samples": samples_json(&res.samples),
                "residuals": residuals,
                "degree_bound": res.degree_bound,
                "underdetermined": res.underdetermined,
                "even_fit": res.even_fit.as_ref().map(|p| p.to_string()),
                "odd_fit": res.odd_fit.as_ref().map(|p| p.to_string()),
            });
            Ok(r)
        }
        Err(fail) => {
            r.results = json!({ "samples": samples_json(&fail.samples) });
            r.error = Some(fail.error.to_string());
            let mut f = Failure::from(fail.error);
            f.report = Some(r);
            Err(f)
        }
    }
}

fn bruhat(common: &Common, a: &BruhatArgs) -> Result<Report, Failure> {
    let field = make_field(a.q)?;
    let cells = bruhat_cell_counts(&field, a.n, &common.options(Strategy::Auto))?;
    let f = Evaluator::new(a.q)?.f_rect(a.n as i64, a.n as i64, Method::Recursive)?;
    let total: BigInt = cells.values().map(|v| BigInt::from(v.clone())).sum();
    let q1 = BigInt::from(a.q - 1);
    let modulus = q1.pow(a.n as u32 + 1);
    let mut checks = vec![Check {
        suite: "bruhat",
        name: "cells sum to f(n,n)".into(),
        pass: total == f,
        detail: format!("sum={total} f={f}"),
    }];
    for (w, c) in &cells {
        let expected = if w.is_derangement() { q1.pow(a.n as u32) } else { BigInt::from(0) };
        checks.push(Check {
            suite: "bruhat",
            name: format!("cell {w}"),
            pass: congruent(&BigInt::from(c.clone()), &expected, &modulus),
            detail: format!("count={c} expected_residue={expected} modulus={modulus}"),
        });
    }
    let mut r = Report::new("bruhat", inputs(common, a));
    r.results = json!({
        "cells": cells.iter().map(|(w, c)| json!({"w": w.to_string(), "derangement": w.is_derangement(), "count": dec(c)})).collect::<Vec<_>>(),
        "total": total.to_string(),
    });
    r.value = Some(total.to_string());
    Ok(r.with_checks(checks))
}
