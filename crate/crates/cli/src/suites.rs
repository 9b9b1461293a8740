//! Named verification suites. Each compares formulas, identities or
//! congruences against oracle counts and reports one [`Check`] per case.
//!
//! Check details hold only exact values, never timings, so a suite's
//! checks are identical for every worker count.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use qmatcount::formulas::{combinatorial_limits, congruent, Evaluator, LimitKind, Method, SymKind, ZyKind};
use qmatcount::oracle::{
    bruhat_cell_counts, count_rank_character_table, count_restricted, quadratic_form_zero_count, CountQuery,
    OracleOptions, Strategy,
};
use qmatcount::poly::{interpolate, QPolynomial};
use qmatcount::rook::{
    haglund_rhs, q_rook_polynomial, rook_count_t1, symmetric_placements, AnalogueReport, HaglundReport,
};
use qmatcount::support::{Partition, SupportSet};
use qmatcount::{make_field, Character, Error, FieldSpec, Result};

pub const SUITES: &[&str] = &[
    "frect",
    "matz",
    "gzero",
    "macwilliams",
    "clover",
    "curious",
    "symz_shift",
    "sq",
    "char_recursion",
    "char_identities",
    "symz_closed",
    "bruhat",
    "haglund",
    "qanalogue",
    "fano",
    "zy",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct SuiteContext {
    pub options: OracleOptions,
    /// Restricts every suite to this field order when set.
    pub q: Option<u64>,
}

struct Run<'a> {
    suite: &'static str,
    ctx: &'a SuiteContext,
    checks: Vec<Check>,
}

fn int(v: &BigUint) -> BigInt {
    BigInt::from(v.clone())
}

fn qpow(q: u64, e: usize) -> BigInt {
    BigInt::from(q).pow(e as u32)
}

fn diag_rect(k: usize, n: usize) -> SupportSet {
    SupportSet::from_positions(k, n, (1..=k).map(|i| (i, i))).expect("in bounds")
}

impl Run<'_> {
    fn qs(&self, default: &[u64]) -> Vec<u64> {
        match self.ctx.q {
            Some(q) => vec![q],
            None => default.to_vec(),
        }
    }

    fn odd_qs(&self, default: &[u64]) -> Result<Vec<u64>> {
        let qs = self.qs(default);
        if qs.iter().any(|q| q % 2 == 0) {
            return Err(Error::EvenCharacteristic);
        }
        Ok(qs)
    }

    fn check(&mut self, name: String, pass: bool, detail: String) {
        self.checks.push(Check {
            suite: self.suite,
            name,
            pass,
            detail,
        });
    }

    fn equal(&mut self, name: String, values: &[(&str, &BigInt)]) {
        let pass = values.windows(2).all(|w| w[0].1 == w[1].1);
        let detail = values.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ");
        self.check(name, pass, detail);
    }

    fn count(&self, field: &FieldSpec, query: &CountQuery) -> Result<BigInt> {
        Ok(int(&count_restricted(field, query, &self.ctx.options)?.value))
    }

    /// Counts by rank.
    fn table(&self, field: &FieldSpec, query: &CountQuery) -> Result<Vec<BigInt>> {
        let v = count_restricted(field, query, &self.ctx.options)?;
        Ok(v.by_rank.expect("full table").iter().map(int).collect())
    }

    fn char_table(&self, field: &FieldSpec, s: &SupportSet) -> Result<Vec<[BigInt; 2]>> {
        let t = count_rank_character_table(field, s, &self.ctx.options)?;
        Ok(t.iter().map(|[a, b]| [int(a), int(b)]).collect())
    }
}

/// Runs one suite, or every suite for `"all"`.
pub fn run_suite(name: &str, ctx: &SuiteContext) -> Result<Vec<Check>> {
    if name == "all" {
        let mut out = Vec::new();
        for s in SUITES {
            out.extend(run_suite(s, ctx)?);
        }
        return Ok(out);
    }
    let suite = SUITES
        .iter()
        .copied()
        .find(|s| *s == name)
        .ok_or_else(|| Error::OutOfRange(format!("unknown suite {name:?}; known: all, {}", SUITES.join(", "))))?;
    let mut run = Run {
        suite,
        ctx,
        checks: Vec::new(),
    };
    match suite {
        "frect" => frect(&mut run)?,
        "matz" => matz(&mut run)?,
        "gzero" => gzero(&mut run)?,
        "macwilliams" => macwilliams(&mut run)?,
        "clover" => clover(&mut run)?,
        "curious" => curious(&mut run)?,
        "symz_shift" => symz_shift(&mut run)?,
        "sq" => sq(&mut run)?,
        "char_recursion" => char_recursion(&mut run)?,
        "char_identities" => char_identities(&mut run)?,
        "symz_closed" => symz_closed(&mut run)?,
        "bruhat" => bruhat(&mut run)?,
        "haglund" => haglund(&mut run)?,
        "qanalogue" => qanalogue(&mut run)?,
        "fano" => fano(&mut run)?,
        "zy" => zy(&mut run)?,
        _ => unreachable!("listed suite"),
    }
    Ok(run.checks)
}

fn frect(run: &mut Run) -> Result<()> {
    for q in run.qs(&[2, 3, 5, 7]) {
        let field = make_field(q)?;
        let ev = Evaluator::new(q)?;
        let max_n = if q <= 3 { 4 } else { 3 };
        for n in 1..=max_n {
            for k in 1..=n {
                let oracle = run.count(&field, &CountQuery::general(diag_rect(k, n), Some(k)))?;
                let closed = ev.f_rect(k as i64, n as i64, Method::Closed)?;
                let rec = ev.f_rect(k as i64, n as i64, Method::Recursive)?;
                run.equal(
                    format!("f({k},{n}) q={q}"),
                    &[("oracle", &oracle), ("closed", &closed), ("recursive", &rec)],
                );
            }
        }
    }
    Ok(())
}

fn matz(run: &mut Run) -> Result<()> {
    for q in run.qs(&[2, 3]) {
        let field = make_field(q)?;
        let ev = Evaluator::new(q)?;
        for n in 1..=4 {
            for k in 0..=n {
                let table = run.table(&field, &CountQuery::general(SupportSet::diagonal_prefix(n, k)?, None))?;
                for (r, oracle) in table.iter().enumerate() {
                    let formula = ev.matz_count(n as i64, k as i64, r as i64)?;
                    run.equal(format!("matz({n},{k},{r}) q={q}"), &[("oracle", oracle), ("recursion", &formula)]);
                }
            }
        }
    }
    Ok(())
}

fn gzero(run: &mut Run) -> Result<()> {
    for q in run.qs(&[2, 3]) {
        let field = make_field(q)?;
        let ev = Evaluator::new(q)?;
        for n in 1..=4 {
            let table = run.table(&field, &CountQuery::general(SupportSet::diagonal_prefix(n, n)?, None))?;
            for (r, oracle) in table.iter().enumerate() {
                let closed = ev.g_zero_diag(n as i64, r as i64, Method::Closed)?;
                let rec = ev.g_zero_diag(n as i64, r as i64, Method::Recursive)?;
                run.equal(
                    format!("g({n},{r}) q={q}"),
                    &[("oracle", oracle), ("closed", &closed), ("recursive", &rec)],
                );
            }
        }
    }
    for q in run.qs(&[2, 3, 4, 5, 7, 9]) {
        let ev = Evaluator::new(q)?;
        for n in 1..=8i64 {
            for r in 0..=n {
                let closed = ev.g_zero_diag(n, r, Method::Closed)?;
                let rec = ev.g_zero_diag(n, r, Method::Recursive)?;
                run.equal(format!("g({n},{r}) q={q} methods"), &[("closed", &closed), ("recursive", &rec)]);
            }
        }
    }
    Ok(())
}

fn macwilliams(run: &mut Run) -> Result<()> {
    for q in run.qs(&[2, 3, 4, 5]) {
        let field = make_field(q)?;
        let ev = Evaluator::new(q)?;
        for n in 1..=4 {
            let none = SupportSet::empty(n, n)?;
            let (table, chars) = if field.is_odd() {
                let chars = run.char_table(&field, &none)?;
                (chars.iter().map(|[a, b]| a + b).collect(), Some(chars))
            } else {
                (run.table(&field, &CountQuery::symmetric(none, None))?, None)
            };
            let inv = ev.sym_formulas(SymKind::Invertible, n as i64, None, None)?;
            run.equal(format!("sym({n}) q={q}"), &[("oracle", &table[n]), ("formula", &inv)]);
            for (r, oracle) in table.iter().enumerate() {
                let formula = ev.sym_formulas(SymKind::Rank, n as i64, Some(r as i64), None)?;
                run.equal(format!("sym({n},{r}) q={q}"), &[("oracle", oracle), ("formula", &formula)]);
            }
            for (r, cell) in chars.iter().flatten().enumerate() {
                for c in Character::BOTH {
                    let formula = ev.sym_formulas(SymKind::RankCharacter, n as i64, Some(r as i64), Some(c))?;
                    run.equal(
                        format!("sym^{c}({n},{r}) q={q}"),
                        &[("oracle", &cell[c.index()]), ("formula", &formula)],
                    );
                }
            }
        }
    }
    for q in run.qs(&[2, 4]) {
        if q % 2 == 1 {
            continue;
        }
        let field = make_field(q)?;
        let ev = Evaluator::new(q)?;
        for n in 1..=5 {
            let table = run.table(&field, &CountQuery::symmetric(SupportSet::diagonal_prefix(n, n)?, None))?;
            for (r, oracle) in table.iter().enumerate() {
                let formula = ev.sym0_even_q(n as i64, r as i64)?;
                run.equal(format!("sym0({n},{r}) q={q}"), &[("oracle", oracle), ("formula", &formula)]);
            }
        }
    }
    Ok(())
}

/// `sym(n-1) = sym₀(n)` for even n.
fn clover(run: &mut Run) -> Result<()> {
    for q in run.odd_qs(&[3, 5])? {
        let field = make_field(q)?;
        let ev = Evaluator::new(q)?;
        for n in [2usize, 4] {
            let sym_oracle = run.count(&field, &CountQuery::symmetric(SupportSet::empty(n - 1, n - 1)?, Some(n - 1)))?;
            let sym0_oracle = run.count(&field, &CountQuery::symmetric(SupportSet::diagonal_prefix(n, n)?, Some(n)))?;
            let sym = ev.sym_formulas(SymKind::Invertible, n as i64 - 1, None, None)?;
            let closed = ev.symz_count(n as i64, n as i64, None, Method::Closed)?;
            let rec = ev.symz_count(n as i64, n as i64, None, Method::Recursive)?;
            run.equal(
                format!("sym({}) = sym0({n}) q={q}", n - 1),
                &[
                    ("sym_oracle", &sym_oracle),
                    ("sym0_oracle", &sym0_oracle),
                    ("sym", &sym),
                    ("symz_closed", &closed),
                    ("symz_recursive", &rec),
                ],
            );
        }
    }
    for q in run.odd_qs(&[3, 5, 7, 9, 11])? {
        let ev = Evaluator::new(q)?;
        for n in [6i64, 8] {
            let sym = ev.sym_formulas(SymKind::Invertible, n - 1, None, None)?;
            let closed = ev.symz_count(n, n, None, Method::Closed)?;
            let rec = ev.symz_count(n, n, None, Method::Recursive)?;
            run.equal(
                format!("sym({}) = sym0({n}) q={q}", n - 1),
                &[("sym", &sym), ("symz_closed", &closed), ("symz_recursive", &rec)],
            );
        }
    }
    Ok(())
}

/// `sk(n) = sym(n-1)` for even n, and the partial-involution limit of sk.
fn curious(run: &mut Run) -> Result<()> {
    for q in run.qs(&[3, 5]) {
        let field = make_field(q)?;
        let ev = Evaluator::new(q)?;
        for n in [2usize, 4] {
            let sk_oracle = run.count(&field, &CountQuery::skew(SupportSet::diagonal_prefix(n, n)?, Some(n)))?;
            let sym_oracle = run.count(&field, &CountQuery::symmetric(SupportSet::empty(n - 1, n - 1)?, Some(n - 1)))?;
            let closed = ev.sk_count(n as i64, n as i64, Method::Closed)?;
            let rec = ev.sk_count(n as i64, n as i64, Method::Recursive)?;
            let sym = ev.sym_formulas(SymKind::Invertible, n as i64 - 1, None, None)?;
            run.equal(
                format!("sk({n}) = sym({}) q={q}", n - 1),
                &[
                    ("sk_oracle", &sk_oracle),
                    ("sym_oracle", &sym_oracle),
                    ("sk_closed", &closed),
                    ("sk_recursive", &rec),
                    ("sym", &sym),
                ],
            );
        }
    }
    for q in run.qs(&[2, 3, 4, 5, 7, 9, 11]) {
        let ev = Evaluator::new(q)?;
        for n in [6i64, 8] {
            let closed = ev.sk_count(n, n, Method::Closed)?;
            let rec = ev.sk_count(n, n, Method::Recursive)?;
            let sym = ev.sym_formulas(SymKind::Invertible, n - 1, None, None)?;
            run.equal(
                format!("sk({n}) = sym({}) q={q}", n - 1),
                &[("sk_closed", &closed), ("sk_recursive", &rec), ("sym", &sym)],
            );
        }
        for n in 0..=6i64 {
            for r in (0..=n).step_by(2) {
                let sk = ev.sk_count(n, r, Method::Recursive)?;
                let pi = combinatorial_limits(LimitKind::PartialInvolution, n, Some(r))?;
                let q1 = BigInt::from(q - 1);
                let scaled = &pi * q1.pow((r / 2) as u32);
                let modulus = q1.pow((r / 2 + 1) as u32);
                run.check(
                    format!("sk({n},{r}) partial involutions q={q}"),
                    congruent(&sk, &scaled, &modulus),
                    format!("sk={sk} partial_involutions={pi} modulus={modulus}"),
                );
            }
        }
    }
    Ok(())
}

/// `q·symz(n,k+1) = symz(n,k)` at n = 4.
fn symz_shift(run: &mut Run) -> Result<()> {
    let n = 4usize;
    for q in run.odd_qs(&[3, 5])? {
        let field = make_field(q)?;
        let ev = Evaluator::new(q)?;
        let mut oracle = Vec::new();
        for k in 0..=n {
            let v = run.count(&field, &CountQuery::symmetric(SupportSet::diagonal_prefix(n, k)?, Some(n)))?;
            let formula = ev.symz_count(n as i64, k as i64, None, Method::Recursive)?;
            run.equal(format!("symz({n},{k}) q={q}"), &[("oracle", &v), ("recursion", &formula)]);
            oracle.push(v);
        }
        for k in 0..n {
            let lhs = &oracle[k + 1] * BigInt::from(q);
            run.equal(
                format!("q*symz({n},{}) = symz({n},{k}) q={q}", k + 1),
                &[("lhs", &lhs), ("rhs", &oracle[k])],
            );
        }
    }
    Ok(())
}

fn sq(run: &mut Run) -> Result<()> {
    for q in run.odd_qs(&[3, 5, 7, 9])? {
        let field = make_field(q)?;
        let ev = Evaluator::new(q)?;
        for m in 1..=6usize {
            for c in Character::BOTH {
                let oracle = int(&quadratic_form_zero_count(&field, m, c)?);
                let formula = ev.sq_table(m as i64, c)?;
                run.equal(format!("sq^{c}({m}) q={q}"), &[("oracle", &oracle), ("table", &formula)]);
            }
        }
    }
    Ok(())
}

fn char_recursion(run: &mut Run) -> Result<()> {
    for q in run.odd_qs(&[3, 5])? {
        let field = make_field(q)?;
        let ev = Evaluator::new(q)?;
        for n in 1..=4usize {
            for k in 0..=n {
                let table = run.char_table(&field, &SupportSet::diagonal_prefix(n, k)?)?;
                for (r, cell) in table.iter().enumerate() {
                    for c in Character::BOTH {
                        let rec = ev.sym0_char_recursive(n as i64, k as i64, r as i64, c)?;
                        run.equal(
                            format!("sym0^{c}({n},{k},{r}) q={q}"),
                            &[("oracle", &cell[c.index()]), ("recursion", &rec)],
                        );
                    }
                }
                for c in Character::BOTH {
                    let rec = ev.symz_count(n as i64, k as i64, Some(c), Method::Recursive)?;
                    run.equal(
                        format!("symz^{c}({n},{k}) q={q}"),
                        &[("oracle", &table[n][c.index()]), ("recursion", &rec)],
                    );
                }
            }
        }
    }
    Ok(())
}

fn char_identities(run: &mut Run) -> Result<()> {
    for q in run.odd_qs(&[3, 5])? {
        let field = make_field(q)?;
        let ev = Evaluator::new(q)?;
        for n in 1..=4usize {
            let sym = |r: usize| ev.sym_formulas(SymKind::Rank, n as i64, Some(r as i64), None);
            for k in 0..=n {
                let table = run.char_table(&field, &SupportSet::diagonal_prefix(n, k)?)?;
                let at = |r: usize, c: Character| table.get(r).map_or_else(BigInt::zero, |x| x[c.index()].clone());
                let rec = |r: usize, c: Character| {
                    if r > n {
                        Ok(BigInt::zero())
                    } else {
                        ev.sym0_char_recursive(n as i64, k as i64, r as i64, c)
                    }
                };
                for s in 0..=n / 2 {
                    let odd = 2 * s + 1;
                    if odd <= n {
                        run.equal(
                            format!("sym0+({n},{k},{odd}) = sym0-({n},{k},{odd}) q={q}"),
                            &[
                                ("oracle_plus", &at(odd, Character::Plus)),
                                ("oracle_minus", &at(odd, Character::Minus)),
                                ("recursion_plus", &rec(odd, Character::Plus)?),
                                ("recursion_minus", &rec(odd, Character::Minus)?),
                            ],
                        );
                    }
                    let both = |r: usize| at(r, Character::Plus) + at(r, Character::Minus);
                    let lhs = (both(2 * s) + both(odd)) * qpow(q, k);
                    let rhs = sym(2 * s)? + if odd <= n { sym(odd)? } else { BigInt::zero() };
                    run.equal(
                        format!("q^k(sym0({n},{k},{}) + sym0({n},{k},{odd})) q={q}", 2 * s),
                        &[("oracle_lhs", &lhs), ("formula_rhs", &rhs)],
                    );
                }
            }
        }
    }
    Ok(())
}

fn symz_closed(run: &mut Run) -> Result<()> {
    for q in run.odd_qs(&[3, 5, 7])? {
        let ev = Evaluator::new(q)?;
        for n in 0..=7i64 {
            for k in 0..=n {
                let closed = ev.symz_count(n, k, None, Method::Closed)?;
                let rec = ev.symz_count(n, k, None, Method::Recursive)?;
                run.equal(format!("symz({n},{k}) q={q}"), &[("closed", &closed), ("recursive", &rec)]);
                for c in Character::BOTH {
                    let closed = ev.symz_count(n, k, Some(c), Method::Closed)?;
                    let rec = ev.symz_count(n, k, Some(c), Method::Recursive)?;
                    run.equal(format!("symz^{c}({n},{k}) q={q}"), &[("closed", &closed), ("recursive", &rec)]);
                }
            }
        }
    }
    Ok(())
}

fn bruhat(run: &mut Run) -> Result<()> {
    for q in run.qs(&[2, 3]) {
        let field = make_field(q)?;
        let ev = Evaluator::new(q)?;
        let q1 = BigInt::from(q - 1);
        for n in 1..=3usize {
            let cells = bruhat_cell_counts(&field, n, &run.ctx.options)?;
            let total: BigInt = cells.values().map(int).sum();
            let f = ev.f_rect(n as i64, n as i64, Method::Recursive)?;
            run.equal(format!("sum of cells n={n} q={q}"), &[("cells", &total), ("f", &f)]);
            let modulus = q1.pow(n as u32 + 1);
            for (w, count) in &cells {
                let count = int(count);
                let expected = if w.is_derangement() { q1.pow(n as u32) } else { BigInt::zero() };
                run.check(
                    format!("cell {w} n={n} q={q}"),
                    congruent(&count, &expected, &modulus),
                    format!(
                        "count={count} derangement={} expected_residue={expected} modulus={modulus}",
                        w.is_derangement()
                    ),
                );
            }
        }
    }
    Ok(())
}

fn haglund(run: &mut Run) -> Result<()> {
    for n in 1..=5usize {
        let r = q_rook_polynomial(&SupportSet::empty(n, n)?, n)?;
        let want = QPolynomial::q_factorial(n);
        run.check(
            format!("full board R_{n} = [{n}]!"),
            r == want,
            format!("rook={r} factorial={want}"),
        );
    }
    let n = 4;
    for q in run.qs(&[2, 3, 4, 5]) {
        let field = make_field(q)?;
        for lambda in Partition::all_in_box(n, n) {
            let s = SupportSet::straight(&lambda, n)?;
            let table = count_restricted(&field, &CountQuery::general(s, None), &run.ctx.options)?
                .by_rank
                .expect("full table");
            for (r, lhs) in table.into_iter().enumerate() {
                let rep = HaglundReport::new(lhs, haglund_rhs(q, &lambda, n, r)?);
                run.check(
                    format!("haglund {lambda} r={r} q={q}"),
                    rep.equal,
                    format!("lhs={} rhs={}", rep.lhs, rep.rhs),
                );
            }
        }
    }
    Ok(())
}

/// Random 4×4 forbidden sets, one cell in two on average.
pub fn random_supports(count: usize, seed: u64) -> Vec<SupportSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let rows = (0..4).map(|_| rng.gen::<u64>() & 0xF).collect();
            SupportSet::from_row_masks(4, rows).expect("4x4")
        })
        .collect()
}

fn qanalogue(run: &mut Run) -> Result<()> {
    let supports = random_supports(200, 0x5eed);
    for q in run.qs(&[2, 3, 4, 5]) {
        let field = make_field(q)?;
        for (idx, s) in supports.iter().enumerate() {
            let table = count_restricted(&field, &CountQuery::general(s.clone(), None), &run.ctx.options)?
                .by_rank
                .expect("full table");
            let mut residues = Vec::new();
            let mut pass = true;
            for (r, t_q) in table.into_iter().enumerate() {
                let rep = AnalogueReport::new(t_q, rook_count_t1(s, r)?, r, q);
                pass &= rep.holds;
                residues.push(format!("r{r}:{}/{}/{}", rep.t_q, rep.t_1, rep.t_q_residue));
            }
            run.check(format!("random #{idx} q={q}"), pass, format!("{} {}", s.to_string().replace('\n', "|"), residues.join(" ")));
        }
        // Zero diagonal: T_1 is the set of derangements.
        for n in 1..=4usize {
            let s = SupportSet::diagonal_prefix(n, n)?;
            let t_q = count_restricted(&field, &CountQuery::general(s.clone(), Some(n)), &run.ctx.options)?.value;
            let rep = AnalogueReport::new(t_q, rook_count_t1(&s, n)?, n, q);
            let d = combinatorial_limits(LimitKind::Derangement, n as i64, None)?;
            run.check(
                format!("zero diagonal n={n} q={q}"),
                rep.holds && int(&rep.t_1) == d,
                format!("t_q={} t_1={} derangements={d} residue={}", rep.t_q, rep.t_1, rep.t_q_residue),
            );
        }
        if field.is_odd() {
            // Symmetric variant on random symmetric sets containing the diagonal.
            for (idx, s) in supports.iter().take(20).enumerate() {
                let sym = s
                    .union(&s.transpose())?
                    .union(&SupportSet::diagonal_prefix(4, 4)?)?;
                let chars = count_rank_character_table(&field, &sym, &run.ctx.options)?;
                let mut pass = true;
                let mut parts = Vec::new();
                for r in (0..=4).step_by(2) {
                    let t_q = &chars[r][0] + &chars[r][1];
                    let rep = AnalogueReport::new(t_q, symmetric_placements(&sym, r / 2), r / 2, q);
                    pass &= rep.holds;
                    parts.push(format!("r{r}:{}/{}", rep.t_q, rep.t_1));
                }
                run.check(format!("symmetric #{idx} q={q}"), pass, parts.join(" "));
            }
        }
    }
    // f(n,n)/(q-1)^n at q = 1 is the derangement number.
    let q1 = QPolynomial::from_ints(&[-1, 1]);
    for n in 1..=4i64 {
        let points = (2..=n * n + 2)
            .map(|q| Ok((q, Evaluator::new(q as u64)?.f_rect(n, n, Method::Closed)?)))
            .collect::<Result<Vec<_>>>()?;
        let poly = interpolate(&points)?;
        let reduced = poly.div_exact(&q1.pow(n as usize));
        let d = combinatorial_limits(LimitKind::Derangement, n, None)?;
        let at_one = reduced.as_ref().map(|p| p.eval_int(1));
        run.check(
            format!("derangement limit n={n}"),
            at_one.as_ref().is_some_and(|v| v.is_integer() && v.to_integer() == d),
            format!("f={poly} limit={at_one:?} derangements={d}"),
        );
    }
    Ok(())
}

fn fano(run: &mut Run) -> Result<()> {
    let s = SupportSet::fano();
    let t_1 = rook_count_t1(&s, 7)?;
    run.check("fano T_1".into(), t_1 == BigUint::from(24u32), format!("t_1={t_1}"));
    for q in run.qs(&[2, 3]) {
        let field = make_field(q)?;
        let query = CountQuery::general(s.clone(), Some(7));
        let v = count_restricted(&field, &query, &run.ctx.options)?;
        if q == 2 {
            let opts = run.ctx.options.clone().with_strategy(Strategy::Exhaustive);
            let ex = count_restricted(&field, &query, &opts)?.value;
            run.equal(
                "fano q=2 strategies".into(),
                &[("dfs", &int(&v.value)), ("exhaustive", &int(&ex))],
            );
        }
        let rep = AnalogueReport::new(v.value.clone(), t_1.clone(), 7, q);
        run.check(
            format!("fano congruence q={q}"),
            rep.holds,
            format!("t_q={} method={} work={} residue={}", rep.t_q, v.method, v.work, rep.t_q_residue),
        );
    }
    Ok(())
}

/// Brute-force count of `(a, b) ∈ F^N × F^N` with `a·b = target`.
fn bilinear_count(field: &FieldSpec, big_n: usize, target: u32) -> BigInt {
    let q = field.q();
    let vectors: Vec<Vec<u32>> = (0..(q as usize).pow(big_n as u32))
        .map(|mut x| {
            (0..big_n)
                .map(|_| {
                    let d = (x % q as usize) as u32;
                    x /= q as usize;
                    d
                })
                .collect()
        })
        .collect();
    let mut count = 0u64;
    for a in &vectors {
        for b in &vectors {
            let dot = a.iter().zip(b).fold(0, |acc, (&x, &y)| field.add(acc, field.mul(x, y)));
            count += u64::from(dot == target);
        }
    }
    BigInt::from(count)
}

fn zy(run: &mut Run) -> Result<()> {
    for q in run.qs(&[2, 3, 4, 5, 7, 8, 9]) {
        let ev = Evaluator::new(q)?;
        let q1 = BigInt::from(q - 1);
        for big_n in 1..=6i64 {
            let z = ev.bilinear_zy(ZyKind::Z, big_n)?;
            let y = ev.bilinear_zy(ZyKind::Y, big_n)?;
            let total = &z + &y * &q1;
            run.equal(
                format!("z + (q-1)y = q^2N N={big_n} q={q}"),
                &[("sum", &total), ("power", &qpow(q, 2 * big_n as usize))],
            );
            run.check(
                format!("z = 1, y = 0 mod q-1 N={big_n} q={q}"),
                congruent(&z, &BigInt::one(), &q1) && congruent(&y, &BigInt::zero(), &q1),
                format!("z={z} y={y}"),
            );
        }
        if q <= 5 {
            let field = make_field(q)?;
            for big_n in 1..=2usize {
                let z = ev.bilinear_zy(ZyKind::Z, big_n as i64)?;
                let y = ev.bilinear_zy(ZyKind::Y, big_n as i64)?;
                run.equal(
                    format!("z({big_n}) q={q} oracle"),
                    &[("oracle", &bilinear_count(&field, big_n, 0)), ("formula", &z)],
                );
                run.equal(
                    format!("y({big_n}) q={q} oracle"),
                    &[("oracle", &bilinear_count(&field, big_n, 1)), ("formula", &y)],
                );
            }
        }
    }
    Ok(())
}
