//! Forbidden-position sets and the shape families built from them.
//!
//! Positions are 1-indexed `(row, column)` pairs throughout. Internally each
//! row is a bit mask with bit `j-1` set when column `j` is forbidden.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Widest supported grid.
pub const MAX_DIM: usize = 64;

/// A set S of forbidden positions inside an m×n grid.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "SupportRepr", try_from = "SupportRepr")]
pub struct SupportSet {
    m: usize,
    n: usize,
    rows: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct SupportRepr {
    m: usize,
    n: usize,
    forbidden: Vec<(usize, usize)>,
}

impl From<SupportSet> for SupportRepr {
    fn from(s: SupportSet) -> Self {
        SupportRepr {
            m: s.m,
            n: s.n,
            forbidden: s.forbidden_positions(),
        }
    }
}

impl TryFrom<SupportRepr> for SupportSet {
    type Error = Error;

    fn try_from(r: SupportRepr) -> Result<Self> {
        SupportSet::from_positions(r.m, r.n, r.forbidden)
    }
}

impl fmt::Debug for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SupportSet({}x{}, {:?})", self.m, self.n, self.forbidden_positions())
    }
}

/// Grid picture: `0` for a forbidden cell, `*` for a free one.
impl fmt::Display for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.m {
            for j in 1..=self.n {
                f.write_str(if self.is_forbidden(i, j) { "0" } else { "*" })?;
            }
            if i < self.m {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl SupportSet {
    /// The empty set on an m×n grid.
    pub fn empty(m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 || m > MAX_DIM || n > MAX_DIM {
            return Err(Error::OutOfRange(format!("grid {m}x{n} must be within 1..=64")));
        }
        Ok(SupportSet { m, n, rows: vec![0; m] })
    }

    /// Every cell forbidden.
    pub fn full(m: usize, n: usize) -> Result<Self> {
        Ok(Self::empty(m, n)?.complement())
    }

    pub fn from_positions(m: usize, n: usize, positions: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut s = Self::empty(m, n)?;
        for (i, j) in positions {
            if i == 0 || j == 0 || i > m || j > n {
                return Err(Error::OutOfRange(format!("position ({i},{j}) outside {m}x{n} grid")));
            }
            s.rows[i - 1] |= 1 << (j - 1);
        }
        Ok(s)
    }

    /// Builds from per-row forbidden masks (bit `j-1` for column `j`).
    pub fn from_row_masks(n: usize, rows: Vec<u64>) -> Result<Self> {
        let mut s = Self::empty(rows.len(), n)?;
        if rows.iter().any(|&r| r & !full_mask(n) != 0) {
            return Err(Error::OutOfRange("mask has bits beyond the grid".into()));
        }
        s.rows = rows;
        Ok(s)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_square(&self) -> bool {
        self.m == self.n
    }

    pub fn is_forbidden(&self, i: usize, j: usize) -> bool {
        self.rows[i - 1] >> (j - 1) & 1 == 1
    }

    pub fn is_free(&self, i: usize, j: usize) -> bool {
        !self.is_forbidden(i, j)
    }

    /// Forbidden mask of 0-indexed row `i`.
    #[inline]
    pub fn forbidden_mask(&self, i: usize) -> u64 {
        self.rows[i]
    }

    /// Free mask of 0-indexed row `i`.
    #[inline]
    pub fn free_mask(&self, i: usize) -> u64 {
        !self.rows[i] & full_mask(self.n)
    }

    /// Free rows of 0-indexed column `j`, as a mask over rows.
    pub fn free_column_mask(&self, j: usize) -> u64 {
        (0..self.m).filter(|&i| self.rows[i] >> j & 1 == 0).fold(0, |acc, i| acc | 1 << i)
    }

    /// Sorted list of forbidden positions.
    pub fn forbidden_positions(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=self.m {
            for j in 1..=self.n {
                if self.is_forbidden(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn free_positions(&self) -> Vec<(usize, usize)> {
        self.complement().forbidden_positions()
    }

    pub fn forbidden_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    /// Number of free cells; the degree bound for polynomiality probing.
    pub fn free_count(&self) -> usize {
        self.m * self.n - self.forbidden_count()
    }

    pub fn complement(&self) -> Self {
        SupportSet {
            m: self.m,
            n: self.n,
            rows: self.rows.iter().map(|r| !r & full_mask(self.n)).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = SupportSet {
            m: self.n,
            n: self.m,
            rows: vec![0; self.n],
        };
        for (i, j) in self.forbidden_positions() {
            t.rows[j - 1] |= 1 << (i - 1);
        }
        t
    }

    /// Rotation by 180°: (i, j) ↦ (m+1-i, n+1-j).
    pub fn rotate180(&self) -> Self {
        let positions = self
            .forbidden_positions()
            .into_iter()
            .map(|(i, j)| (self.m + 1 - i, self.n + 1 - j));
        Self::from_positions(self.m, self.n, positions).expect("rotation stays in the grid")
    }

    pub fn union(&self, other: &SupportSet) -> Result<Self> {
        if (self.m, self.n) != (other.m, other.n) {
            return Err(Error::DimensionMismatch("union of supports on different grids".into()));
        }
        Ok(SupportSet {
            m: self.m,
            n: self.n,
            rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a | b).collect(),
        })
    }

    pub fn is_subset(&self, other: &SupportSet) -> bool {
        (self.m, self.n) == (other.m, other.n) && self.rows.iter().zip(&other.rows).all(|(a, b)| a & !b == 0)
    }

    /// Invariant under transpose.
    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn contains_diagonal(&self) -> bool {
        self.is_square() && (1..=self.n).all(|i| self.is_forbidden(i, i))
    }

    /// The first k diagonal cells of an n×n grid.
    pub fn diagonal_prefix(n: usize, k: usize) -> Result<Self> {
        if k > n {
            return Err(Error::OutOfRange(format!("diagonal prefix {k} exceeds size {n}")));
        }
        Self::from_positions(n, n, (1..=k).map(|i| (i, i)))
    }

    /// Straight shape: row i forbids columns `1..=λᵢ`.
    pub fn straight(lambda: &Partition, n: usize) -> Result<Self> {
        if !lambda.fits_in(n, n) {
            return Err(Error::OutOfRange(format!("partition {lambda} does not fit in {n}x{n}")));
        }
        let mut s = Self::empty(n, n)?;
        for (i, &part) in lambda.parts().iter().enumerate() {
            s.rows[i] = full_mask(part);
        }
        Ok(s)
    }

    /// Skew shape `S_λ \ S_μ`.
    pub fn skew(lambda: &Partition, mu: &Partition, n: usize) -> Result<Self> {
        if !lambda.contains(mu) {
            return Err(Error::NotNested {
                outer: lambda.parts().to_vec(),
                inner: mu.parts().to_vec(),
            });
        }
        let outer = Self::straight(lambda, n)?;
        let inner = Self::straight(mu, n)?;
        Ok(SupportSet {
            m: n,
            n,
            rows: outer.rows.iter().zip(&inner.rows).map(|(a, b)| a & !b).collect(),
        })
    }

    /// Complement of the incidence pattern of the Fano plane: the free cells
    /// are the point-line incidences.
    pub fn fano() -> Self {
        const LINES: [[usize; 3]; 7] = [
            [1, 2, 7],
            [1, 3, 6],
            [1, 4, 5],
            [2, 3, 5],
            [2, 4, 6],
            [3, 4, 7],
            [5, 6, 7],
        ];
        let free = LINES
            .iter()
            .enumerate()
            .flat_map(|(i, line)| line.iter().map(move |&j| (i + 1, j)));
        Self::from_positions(7, 7, free).expect("fits").complement()
    }

    /// Support set of a graph on vertices `1..=vertices` whose last vertex is
    /// adjacent to every other: on the (v-1)×(v-1) grid, (i, j) with i ≠ j is
    /// forbidden exactly when `ij` is not an edge.
    pub fn graph(vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if vertices < 2 {
            return Err(Error::OutOfRange("a graph support needs at least two vertices".into()));
        }
        let mut adj = vec![vec![false; vertices + 1]; vertices + 1];
        for &(a, b) in edges {
            if a == 0 || b == 0 || a > vertices || b > vertices || a == b {
                return Err(Error::OutOfRange(format!("edge {a}-{b} invalid on {vertices} vertices")));
            }
            adj[a][b] = true;
            adj[b][a] = true;
        }
        if let Some(v) = (1..vertices).find(|&v| !adj[v][vertices]) {
            return Err(Error::ApexMissing(v));
        }
        let n = vertices - 1;
        let forbidden = (1..=n)
            .flat_map(|i| (1..=n).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && !adj[i][j]);
        Self::from_positions(n, n, forbidden)
    }
}

/// An integer partition λ₁ ≥ λ₂ ≥ … ≥ 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

impl Partition {
    /// Trailing zero parts are dropped.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::OutOfRange(format!("{parts:?} is not weakly decreasing")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Nonzero parts.
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn fits_in(&self, rows: usize, cols: usize) -> bool {
        self.parts.len() <= rows && self.part(0) <= cols
    }

    /// `S_μ ⊆ S_λ`, i.e. μᵢ ≤ λᵢ for all i.
    pub fn contains(&self, mu: &Partition) -> bool {
        mu.parts.iter().enumerate().all(|(i, &m)| m <= self.part(i))
    }

    /// Conjugate partition.
    pub fn conjugate(&self) -> Partition {
        let parts = (1..=self.part(0))
            .map(|c| self.parts.iter().filter(|&&p| p >= c).count())
            .collect();
        Partition { parts }
    }

    /// Every partition with at most `rows` parts, each at most `cols`.
    pub fn all_in_box(rows: usize, cols: usize) -> Vec<Partition> {
        fn rec(prefix: &mut Vec<usize>, rows: usize, max: usize, out: &mut Vec<Partition>) {
            out.push(Partition::new(prefix.clone()).expect("decreasing"));
            if prefix.len() == rows {
                return;
            }
            for p in 1..=max {
                prefix.push(p);
                rec(prefix, rows, p, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), rows, cols, &mut out);
        out.sort();
        out
    }
}

/// Free columns of 1-indexed row `row`.
pub fn free_columns(s: &SupportSet, row: usize) -> BTreeSet<usize> {
    (1..=s.n()).filter(|&j| s.is_free(row, j)).collect()
}
