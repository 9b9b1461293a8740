//! Ground-truth enumeration.
//!
//! Every count here comes from looking at matrices one way or another. Three
//! strategies exist for the general class and must agree where they overlap:
//!
//! * [`Strategy::Exhaustive`] walks every assignment of the free entries.
//! * [`Strategy::Projectivized`] lets each column range over zero and one
//!   representative per line, weighting by `(q-1)` per nonzero column.
//! * [`Strategy::PrunedColumnDfs`] does the same column by column with an
//!   incremental echelon basis, cuts branches that cannot reach the target
//!   rank and counts the last column in closed form.
//!
//! Symmetric and alternating classes are always enumerated exhaustively.
//!
//! Work is split into units fixed by the query alone, never by the worker
//! count, so results and work counters are identical for any `workers`.

mod columns;
mod exhaustive;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Character, Elem, FieldSpec};
use crate::matq::{bruhat_permutation, rank_in_place, Permutation};
use crate::support::SupportSet;

/// Default budget on estimated rank evaluations.
pub const DEFAULT_BUDGET: u128 = 1 << 34;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixClass {
    General,
    Symmetric,
    /// Alternating: `A = -Aᵀ` with zero diagonal.
    Skew,
    SymmetricWithCharacter,
}

impl fmt::Display for MatrixClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatrixClass::General => "general",
            MatrixClass::Symmetric => "symmetric",
            MatrixClass::Skew => "skew",
            MatrixClass::SymmetricWithCharacter => "symmetric_with_character",
        })
    }
}

impl std::str::FromStr for MatrixClass {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "general" => Ok(MatrixClass::General),
            "symmetric" => Ok(MatrixClass::Symmetric),
            "skew" => Ok(MatrixClass::Skew),
            "symmetric_with_character" | "character" => Ok(MatrixClass::SymmetricWithCharacter),
            other => Err(format!("unknown class {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Cheapest applicable strategy and orientation.
    #[default]
    Auto,
    Exhaustive,
    Projectivized,
    PrunedColumnDfs,
}

impl std::str::FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "auto" => Ok(Strategy::Auto),
            "exhaustive" => Ok(Strategy::Exhaustive),
            "projectivized" => Ok(Strategy::Projectivized),
            "pruned_column_dfs" | "dfs" => Ok(Strategy::PrunedColumnDfs),
            other => Err(format!("unknown strategy {other:?}")),
        }
    }
}

/// The strategy that actually ran.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exhaustive,
    Projectivized,
    PrunedColumnDfs,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exhaustive => "exhaustive",
            Method::Projectivized => "projectivized",
            Method::PrunedColumnDfs => "pruned_column_dfs",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleOptions {
    pub strategy: Strategy,
    pub workers: usize,
    pub budget: u128,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            strategy: Strategy::Auto,
            workers: 1,
            budget: DEFAULT_BUDGET,
        }
    }
}

impl OracleOptions {
    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn with_budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }
}

/// What to count: matrices of a class whose support avoids `support`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountQuery {
    pub support: SupportSet,
    /// `None` asks for the whole rank distribution.
    pub rank: Option<usize>,
    pub class: MatrixClass,
    /// Only meaningful for [`MatrixClass::SymmetricWithCharacter`].
    pub character: Option<Character>,
}

impl CountQuery {
    pub fn general(support: SupportSet, rank: Option<usize>) -> Self {
        CountQuery {
            support,
            rank,
            class: MatrixClass::General,
            character: None,
        }
    }

    pub fn symmetric(support: SupportSet, rank: Option<usize>) -> Self {
        CountQuery {
            support,
            rank,
            class: MatrixClass::Symmetric,
            character: None,
        }
    }

    pub fn skew(support: SupportSet, rank: Option<usize>) -> Self {
        CountQuery {
            support,
            rank,
            class: MatrixClass::Skew,
            character: None,
        }
    }

    pub fn with_character(support: SupportSet, rank: Option<usize>, character: Option<Character>) -> Self {
        CountQuery {
            support,
            rank,
            class: MatrixClass::SymmetricWithCharacter,
            character,
        }
    }

    pub fn max_rank(&self) -> usize {
        self.support.m().min(self.support.n())
    }

    fn validate(&self, field: &FieldSpec) -> Result<()> {
        if let Some(r) = self.rank {
            if r > self.max_rank() {
                return Err(Error::OutOfRange(format!(
                    "rank {r} exceeds min({}, {})",
                    self.support.m(),
                    self.support.n()
                )));
            }
        }
        match self.class {
            MatrixClass::General => {}
            MatrixClass::Symmetric | MatrixClass::Skew | MatrixClass::SymmetricWithCharacter => {
                if !self.support.is_symmetric() {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        if self.class == MatrixClass::SymmetricWithCharacter && !field.is_odd() {
            return Err(Error::CharacterInEvenCharacteristic);
        }
        if self.character.is_some() && self.class != MatrixClass::SymmetricWithCharacter {
            return Err(Error::Unsupported(format!("character filter on class {}", self.class)));
        }
        Ok(())
    }
}

/// Counts by rank, split by character for the character class (`+` in
/// slot 0, `-` in slot 1); other classes use slot 0 only.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Tally {
    pub cells: Vec<[u128; 2]>,
    pub work: u64,
}

impl Tally {
    pub(crate) fn new(max_rank: usize) -> Self {
        Tally {
            cells: vec![[0; 2]; max_rank + 1],
            work: 0,
        }
    }

    pub(crate) fn absorb(&mut self, other: &Tally) {
        for (a, b) in self.cells.iter_mut().zip(&other.cells) {
            a[0] += b[0];
            a[1] += b[1];
        }
        self.work += other.work;
    }

    pub fn rank_total(&self, r: usize) -> u128 {
        self.cells.get(r).map_or(0, |c| c[0] + c[1])
    }

    pub fn total(&self) -> u128 {
        self.cells.iter().map(|c| c[0] + c[1]).sum()
    }
}

/// An exact count with a record of how it was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountValue {
    pub value: BigUint,
    pub method: Method,
    /// Rank evaluations (or search nodes) performed.
    pub work: u64,
    pub elapsed: Duration,
    /// The enumeration ran on the transposed problem.
    pub transposed: bool,
    /// `by_rank[r]`, present when every rank was counted.
    pub by_rank: Option<Vec<BigUint>>,
    /// `by_rank_character[r] = [+, -]` for the character class.
    pub by_rank_character: Option<Vec<[BigUint; 2]>>,
}

impl CountValue {
    fn from_tally(query: &CountQuery, tally: Tally, method: Method, transposed: bool, start: Instant) -> Self {
        let value = match (query.rank, query.character) {
            (Some(r), None) => tally.rank_total(r),
            (Some(r), Some(c)) => tally.cells[r][c.index()],
            (None, None) => tally.total(),
            (None, Some(c)) => tally.cells.iter().map(|x| x[c.index()]).sum(),
        };
        let complete = query.rank.is_none() || method != Method::PrunedColumnDfs;
        let by_rank = complete.then(|| (0..tally.cells.len()).map(|r| BigUint::from(tally.rank_total(r))).collect());
        let by_rank_character = (query.class == MatrixClass::SymmetricWithCharacter).then(|| {
            tally
                .cells
                .iter()
                .map(|c| [BigUint::from(c[0]), BigUint::from(c[1])])
                .collect()
        });
        CountValue {
            value: BigUint::from(value),
            method,
            work: tally.work,
            elapsed: start.elapsed(),
            transposed,
            by_rank,
            by_rank_character,
        }
    }
}

/// Upper bound on the rank evaluations a strategy would perform.
pub fn estimate_work(field: &FieldSpec, query: &CountQuery, strategy: Strategy) -> Result<(Method, bool, u128)> {
    let q = field.q() as u128;
    let s = &query.support;
    let upper = |include_diag: bool| {
        (1..=s.n())
            .flat_map(|i| (i..=s.n()).map(move |j| (i, j)))
            .filter(|&(i, j)| (include_diag || i != j) && s.is_free(i, j))
            .count() as u32
    };
    let pow = |e: u32| q.checked_pow(e).unwrap_or(u128::MAX);
    match query.class {
        MatrixClass::General => {}
        MatrixClass::Symmetric | MatrixClass::SymmetricWithCharacter | MatrixClass::Skew => {
            if matches!(strategy, Strategy::Projectivized | Strategy::PrunedColumnDfs) {
                return Err(Error::Unsupported(format!(
                    "strategy {strategy:?} applies to the general class only"
                )));
            }
            let cells = upper(query.class != MatrixClass::Skew);
            return Ok((Method::Exhaustive, false, pow(cells)));
        }
    }
    let exhaustive = pow(s.free_count() as u32);
    let columns = |t: &SupportSet, skip_last: bool| -> u128 {
        let n = t.n() - usize::from(skip_last);
        (0..n).fold(1u128, |acc, j| {
            let f = t.free_column_mask(j).count_ones();
            let lines = (pow(f) - 1) / (q - 1);
            acc.saturating_mul(1 + lines)
        })
    };
    let pick = |skip_last: bool| {
        let (a, b) = (columns(s, skip_last), columns(&s.transpose(), skip_last));
        if b < a {
            (true, b)
        } else {
            (false, a)
        }
    };
    Ok(match strategy {
        Strategy::Exhaustive => (Method::Exhaustive, false, exhaustive),
        Strategy::Projectivized => {
            let (t, w) = pick(false);
            (Method::Projectivized, t, w)
        }
        Strategy::PrunedColumnDfs | Strategy::Auto => {
            let (t, w) = pick(true);
            (Method::PrunedColumnDfs, t, w)
        }
    })
}

/// Counts matrices in the query's class whose support avoids `S`.
pub fn count_restricted(field: &FieldSpec, query: &CountQuery, options: &OracleOptions) -> Result<CountValue> {
    let start = Instant::now();
    query.validate(field)?;
    if query.class == MatrixClass::Skew && query.rank.is_some_and(|r| r % 2 == 1) {
        let tally = Tally::new(query.max_rank());
        return Ok(CountValue::from_tally(query, tally, Method::Exhaustive, false, start));
    }
    let (method, transposed, estimate) = estimate_work(field, query, options.strategy)?;
    if estimate > options.budget {
        return Err(Error::BudgetExceeded {
            estimate,
            budget: options.budget,
        });
    }
    let workers = options.workers.max(1);
    let tally = match method {
        Method::Exhaustive => exhaustive::count(field, query, workers),
        Method::Projectivized | Method::PrunedColumnDfs => {
            let support = if transposed {
                query.support.transpose()
            } else {
                query.support.clone()
            };
            columns::count(field, &support, query.rank, method, workers)
        }
    };
    Ok(CountValue::from_tally(query, tally, method, transposed, start))
}

/// `table[r] = [+, -]`: symmetric matrices avoiding `S` by rank and
/// character, odd q only.
pub fn count_rank_character_table(
    field: &FieldSpec,
    support: &SupportSet,
    options: &OracleOptions,
) -> Result<Vec<[BigUint; 2]>> {
    let query = CountQuery::with_character(support.clone(), None, None);
    let value = count_restricted(field, &query, options)?;
    Ok(value.by_rank_character.expect("character class fills the table"))
}

/// Runs `f` on every unit index, in parallel when `workers > 1`, and returns
/// the results in unit order.
pub(crate) fn run_units<T, F>(units: usize, workers: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    if workers <= 1 || units <= 1 {
        return (0..units).map(f).collect();
    }
    pool(workers).install(|| (0..units).into_par_iter().map(f).collect())
}

fn pool(workers: usize) -> Arc<rayon::ThreadPool> {
    static POOLS: OnceLock<Mutex<HashMap<usize, Arc<rayon::ThreadPool>>>> = OnceLock::new();
    let mut pools = POOLS.get_or_init(Default::default).lock().expect("pool cache poisoned");
    pools
        .entry(workers)
        .or_insert_with(|| {
            Arc::new(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(workers)
                    .build()
                    .expect("thread pool"),
            )
        })
        .clone()
}

/// Decodes `index` into base-q digits, least significant first.
pub(crate) fn digits(mut index: u64, q: u32, out: &mut [Elem]) {
    for slot in out.iter_mut() {
        *slot = (index % q as u64) as Elem;
        index /= q as u64;
    }
}

/// Advances an odometer of base-q digits; false after the last state.
#[inline]
pub(crate) fn bump(values: &mut [Elem], q: u32) -> bool {
    for v in values.iter_mut() {
        *v += 1;
        if *v < q {
            return true;
        }
        *v = 0;
    }
    false
}

/// Number of leading cells fixed per work unit: enough for a few hundred
/// units when the search is large.
pub(crate) fn prefix_len(q: u32, cells: usize) -> usize {
    let mut k = 0;
    let mut units = 1u64;
    while k < cells && units < 256 && cells - k > 4 {
        units *= q as u64;
        k += 1;
    }
    k
}

/// Invertible n×n matrices with zero diagonal, tallied by Bruhat cell.
/// Every permutation appears in the map, with count zero if its cell is
/// empty.
pub fn bruhat_cell_counts(field: &FieldSpec, n: usize, options: &OracleOptions) -> Result<BTreeMap<Permutation, BigUint>> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be positive".into()));
    }
    let cells: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j)
        .collect();
    let q = field.q();
    let estimate = (q as u128).checked_pow(cells.len() as u32).unwrap_or(u128::MAX);
    if estimate > options.budget {
        return Err(Error::BudgetExceeded {
            estimate,
            budget: options.budget,
        });
    }
    let k = prefix_len(q, cells.len());
    let units = (q as usize).pow(k as u32);
    let perms = Permutation::all(n);
    let index: HashMap<Permutation, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let partial = run_units(units, options.workers, |unit| {
        let mut counts = vec![0u64; perms.len()];
        let mut values = vec![0; cells.len()];
        digits(unit as u64, q, &mut values[..k]);
        let mut a = crate::matq::MatrixGF::zeros(field, n, n);
        loop {
            for (&(i, j), &v) in cells.iter().zip(&values) {
                a.set(i, j, v);
            }
            let mut scratch = a.entries().to_vec();
            if rank_in_place(field, &mut scratch, n, n) == n {
                let w = bruhat_permutation(&a).expect("invertible");
                counts[index[&w]] += 1;
            }
            if !bump(&mut values[k..], q) {
                break;
            }
        }
        counts
    });
    let mut total = vec![0u64; perms.len()];
    for c in partial {
        for (t, x) in total.iter_mut().zip(c) {
            *t += x;
        }
    }
    Ok(perms.into_iter().zip(total).map(|(p, c)| (p, BigUint::from(c))).collect())
}

/// Solutions of `x₁² + … + x_m² = 0` (character `+`) or of
/// `x₁² + … + x_{m-1}² + z·x_m² = 0` with z the least nonsquare (`-`).
pub fn quadratic_form_zero_count(field: &FieldSpec, m: usize, character: Character) -> Result<BigUint> {
    if !field.is_odd() {
        return Err(Error::EvenCharacteristic);
    }
    if m == 0 {
        return Err(Error::OutOfRange("m must be positive".into()));
    }
    let q = field.q();
    let z = field.least_nonsquare().expect("odd field");
    let mut coeffs = vec![1; m];
    if character == Character::Minus {
        coeffs[m - 1] = z;
    }
    let squares: Vec<Elem> = (0..q).map(|x| field.mul(x, x)).collect();
    let mut values = vec![0; m];
    let mut count = 0u64;
    loop {
        let s = values
            .iter()
            .zip(&coeffs)
            .fold(0, |acc, (&x, &c)| field.add(acc, field.mul(c, squares[x as usize])));
        if s == 0 {
            count += 1;
        }
        if !bump(&mut values, q) {
            break;
        }
    }
    Ok(BigUint::from(count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use crate::support::SupportSet;

    fn diag(n: usize) -> SupportSet {
        SupportSet::diagonal_prefix(n, n).unwrap()
    }

    fn count(q: u64, query: &CountQuery, strategy: Strategy) -> u64 {
        let f = make_field(q).unwrap();
        let v = count_restricted(&f, query, &OracleOptions::default().with_strategy(strategy)).unwrap();
        v.value.try_into().unwrap()
    }

    #[test]
    fn examples() {
        let q = CountQuery::general(diag(2), Some(2));
        for s in [Strategy::Exhaustive, Strategy::Projectivized, Strategy::PrunedColumnDfs] {
            assert_eq!(count(2, &q, s), 1);
        }
        let skew = CountQuery::skew(SupportSet::empty(3, 3).unwrap(), Some(3));
        assert_eq!(count(2, &skew, Strategy::Auto), 0);
        let chi = CountQuery::with_character(diag(2), Some(2), Some(Character::Minus));
        assert_eq!(count(3, &chi, Strategy::Auto), 2);
    }

    #[test]
    fn character_tables() {
        let f3 = make_field(3).unwrap();
        let t = count_rank_character_table(&f3, &diag(2), &OracleOptions::default()).unwrap();
        let flat: Vec<[u32; 2]> = t.iter().map(|c| [c[0].clone().try_into().unwrap(), c[1].clone().try_into().unwrap()]).collect();
        assert_eq!(flat, vec![[1, 0], [0, 0], [0, 2]]);
        let f5 = make_field(5).unwrap();
        let t = count_rank_character_table(&f5, &SupportSet::empty(1, 1).unwrap(), &OracleOptions::default()).unwrap();
        let flat: Vec<[u32; 2]> = t.iter().map(|c| [c[0].clone().try_into().unwrap(), c[1].clone().try_into().unwrap()]).collect();
        assert_eq!(flat, vec![[1, 0], [2, 2]]);
        let q = CountQuery::symmetric(SupportSet::empty(2, 2).unwrap(), Some(1));
        assert_eq!(count(3, &q, Strategy::Auto), 8);
    }

    #[test]
    fn validation() {
        let f2 = make_field(2).unwrap();
        let chi = CountQuery::with_character(diag(2), Some(2), None);
        assert_eq!(
            count_restricted(&f2, &chi, &OracleOptions::default()).unwrap_err(),
            Error::CharacterInEvenCharacteristic
        );
        let lopsided = SupportSet::from_positions(2, 2, [(1, 2)]).unwrap();
        assert_eq!(
            count_restricted(&f2, &CountQuery::symmetric(lopsided, None), &OracleOptions::default()).unwrap_err(),
            Error::NotSymmetric
        );
        let big = CountQuery::general(SupportSet::empty(6, 6).unwrap(), Some(6));
        let err = count_restricted(
            &f2,
            &big,
            &OracleOptions::default().with_strategy(Strategy::Exhaustive).with_budget(1000),
        )
        .unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
        let bad_rank = CountQuery::general(diag(2), Some(3));
        assert!(count_restricted(&f2, &bad_rank, &OracleOptions::default()).is_err());
    }

    #[test]
    fn bruhat_examples() {
        let f2 = make_field(2).unwrap();
        let c = bruhat_cell_counts(&f2, 2, &OracleOptions::default()).unwrap();
        let swap = Permutation::new(vec![2, 1]).unwrap();
        assert_eq!(c[&swap], BigUint::from(1u32));
        assert_eq!(c[&Permutation::identity(2)], BigUint::from(0u32));
        let f3 = make_field(3).unwrap();
        let c = bruhat_cell_counts(&f3, 2, &OracleOptions::default()).unwrap();
        assert_eq!(c[&swap], BigUint::from(4u32));
        let c = bruhat_cell_counts(&f3, 1, &OracleOptions::default()).unwrap();
        assert_eq!(c[&Permutation::identity(1)], BigUint::from(0u32));
    }

    #[test]
    fn quadratic_forms() {
        let f5 = make_field(5).unwrap();
        assert_eq!(quadratic_form_zero_count(&f5, 2, Character::Plus).unwrap(), BigUint::from(9u32));
        let f3 = make_field(3).unwrap();
        assert_eq!(quadratic_form_zero_count(&f3, 2, Character::Plus).unwrap(), BigUint::from(1u32));
        for q in [3u64, 5, 7, 9] {
            let f = make_field(q).unwrap();
            assert_eq!(quadratic_form_zero_count(&f, 1, Character::Plus).unwrap(), BigUint::from(1u32));
        }
        assert_eq!(
            quadratic_form_zero_count(&make_field(4).unwrap(), 2, Character::Plus).unwrap_err(),
            Error::EvenCharacteristic
        );
    }
}
