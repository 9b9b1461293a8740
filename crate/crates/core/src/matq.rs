//! Dense matrices over GF(q).
//!
//! Besides the [`MatrixGF`] value type this module exposes the in-place
//! kernels ([`rank_in_place`], [`rank_gf2`], [`symmetric_rank_character`])
//! that the enumeration code calls on scratch buffers.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Character, Elem, FieldSpec};

/// A dense row-major matrix over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct MatrixGF {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for MatrixGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatrixGF(q={}, \"{}\")", self.field.q(), self)
    }
}

/// Matrix literal form: rows separated by `;`, entries by `,`.
impl fmt::Display for MatrixGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(";")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        Ok(())
    }
}

impl MatrixGF {
    pub fn new(field: &FieldSpec, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(&bad) = data.iter().find(|&&x| !field.contains(x)) {
            return Err(Error::OutOfRange(format!("entry {bad} not in GF({})", field.q())));
        }
        Ok(MatrixGF {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        MatrixGF {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from a function of 0-indexed (row, column).
    pub fn from_fn(field: &FieldSpec, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        MatrixGF {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn diagonal(field: &FieldSpec, entries: &[Elem]) -> Self {
        let n = entries.len();
        Self::from_fn(field, n, n, |i, j| if i == j { entries[i] } else { 0 })
    }

    /// Parses the literal form, e.g. `"0,1;1,0"`.
    pub fn parse(field: &FieldSpec, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::MatrixLiteral("empty literal".into()));
        }
        let mut data = Vec::new();
        let mut cols = None;
        let mut rows = 0;
        for row in text.split(';') {
            let entries: Vec<&str> = row.split(',').map(str::trim).collect();
            match cols {
                None => cols = Some(entries.len()),
                Some(c) if c != entries.len() => {
                    return Err(Error::MatrixLiteral(format!(
                        "row {} has {} entries, expected {c}",
                        rows + 1,
                        entries.len()
                    )))
                }
                _ => {}
            }
            for e in entries {
                let v: Elem = e
                    .parse()
                    .map_err(|_| Error::MatrixLiteral(format!("bad entry {e:?}")))?;
                data.push(v);
            }
            rows += 1;
        }
        Self::new(field, rows, cols.unwrap_or(0), data)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    /// Entry at 0-indexed (i, j).
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        debug_assert!(self.field.contains(v));
        self.data[i * self.cols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Alternating: `A = -Aᵀ` with zero diagonal in every characteristic.
    pub fn is_skew(&self) -> bool {
        let f = &self.field;
        self.is_square()
            && (0..self.rows).all(|i| {
                self.get(i, i) == 0 && (0..i).all(|j| self.get(i, j) == f.neg(self.get(j, i)))
            })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn mul(&self, other: &MatrixGF) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        Ok(Self::from_fn(f, self.rows, other.cols, |i, j| {
            (0..self.cols).fold(0, |acc, k| f.add(acc, f.mul(self.get(i, k), other.get(k, j))))
        }))
    }

    /// Copy of the submatrix on 0-indexed row and column ranges.
    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let (r0, c0) = (rows.start, cols.start);
        Self::from_fn(&self.field, rows.len(), cols.len(), |i, j| self.get(r0 + i, c0 + j))
    }

    pub fn rank(&self) -> usize {
        if self.field.q() == 2 && self.cols <= 64 {
            let mut packed: Vec<u64> = (0..self.rows)
                .map(|i| (0..self.cols).fold(0u64, |acc, j| acc | ((self.get(i, j) as u64) << j)))
                .collect();
            return rank_gf2(&mut packed);
        }
        let mut scratch = self.data.clone();
        rank_in_place(&self.field, &mut scratch, self.rows, self.cols)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let f = &self.field;
        let n = self.rows;
        let mut a = self.data.clone();
        let mut inv = Self::identity(f, n).data;
        for col in 0..n {
            let pivot = (col..n).find(|&r| a[r * n + col] != 0).ok_or(Error::Singular)?;
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                    inv.swap(pivot * n + j, col * n + j);
                }
            }
            let s = f.inv(a[col * n + col])?;
            for j in 0..n {
                a[col * n + j] = f.mul(a[col * n + j], s);
                inv[col * n + j] = f.mul(inv[col * n + j], s);
            }
            for r in 0..n {
                let c = a[r * n + col];
                if r == col || c == 0 {
                    continue;
                }
                let c = f.neg(c);
                for j in 0..n {
                    a[r * n + j] = f.add(a[r * n + j], f.mul(c, a[col * n + j]));
                    inv[r * n + j] = f.add(inv[r * n + j], f.mul(c, inv[col * n + j]));
                }
            }
        }
        Ok(MatrixGF {
            field: f.clone(),
            rows: n,
            cols: n,
            data: inv,
        })
    }
}

/// Rank of a row-major buffer; destroys its contents.
pub fn rank_in_place(f: &FieldSpec, a: &mut [Elem], rows: usize, cols: usize) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| a[r * cols + col] != 0) else {
            continue;
        };
        if pivot != rank {
            for j in col..cols {
                a.swap(pivot * cols + j, rank * cols + j);
            }
        }
        let inv = f.try_inv(a[rank * cols + col]).expect("pivot is nonzero");
        for r in rank + 1..rows {
            let v = a[r * cols + col];
            if v == 0 {
                continue;
            }
            let c = f.neg(f.mul(v, inv));
            for j in col..cols {
                a[r * cols + j] = f.add(a[r * cols + j], f.mul(c, a[rank * cols + j]));
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over GF(2) of rows packed as bit masks; destroys its contents.
pub fn rank_gf2(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    for i in 0..rows.len() {
        let row = rows[i];
        if row == 0 {
            continue;
        }
        let low = row & row.wrapping_neg();
        for r in rows[i + 1..].iter_mut() {
            if *r & low != 0 {
                *r ^= row;
            }
        }
        rank += 1;
    }
    rank
}

/// Symmetric elimination of an n×n symmetric buffer, in place.
///
/// Applies simultaneous row and column operations `A ← E A Eᵀ` until the
/// buffer is diagonal, recording every row operation in `track` when given.
/// Returns the rank and the product of the nonzero diagonal entries.
/// Requires odd characteristic.
fn symmetric_reduce(f: &FieldSpec, a: &mut [Elem], n: usize, mut track: Option<&mut [Elem]>) -> (usize, Elem) {
    let mut product = 1;
    let mut k = 0;
    while k < n {
        let pivot = match (k..n).find(|&i| a[i * n + i] != 0) {
            Some(i) => i,
            None => {
                // Smallest nonzero off-diagonal (i, j) with i < j.
                let Some((i, j)) = (k..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| a[i * n + j] != 0)
                else {
                    break;
                };
                add_row_col(f, a, n, i, j, 1, track.as_deref_mut());
                i
            }
        };
        if pivot != k {
            swap_row_col(a, n, pivot, k, track.as_deref_mut());
        }
        let d = a[k * n + k];
        let inv = f.try_inv(d).expect("pivot is nonzero");
        for r in k + 1..n {
            let v = a[r * n + k];
            if v != 0 {
                add_row_col(f, a, n, r, k, f.neg(f.mul(v, inv)), track.as_deref_mut());
            }
        }
        product = f.mul(product, d);
        k += 1;
    }
    (k, product)
}

/// Row `dst += c·row src`, then column `dst += c·column src`.
fn add_row_col(f: &FieldSpec, a: &mut [Elem], n: usize, dst: usize, src: usize, c: Elem, track: Option<&mut [Elem]>) {
    for j in 0..n {
        a[dst * n + j] = f.add(a[dst * n + j], f.mul(c, a[src * n + j]));
    }
    for i in 0..n {
        a[i * n + dst] = f.add(a[i * n + dst], f.mul(c, a[i * n + src]));
    }
    if let Some(e) = track {
        for j in 0..n {
            e[dst * n + j] = f.add(e[dst * n + j], f.mul(c, e[src * n + j]));
        }
    }
}

fn swap_row_col(a: &mut [Elem], n: usize, x: usize, y: usize, track: Option<&mut [Elem]>) {
    for j in 0..n {
        a.swap(x * n + j, y * n + j);
    }
    for i in 0..n {
        a.swap(i * n + x, i * n + y);
    }
    if let Some(e) = track {
        for j in 0..n {
            e.swap(x * n + j, y * n + j);
        }
    }
}

/// Rank and quadratic character of an n×n symmetric buffer; destroys it.
/// The zero matrix has character `+`. Requires odd characteristic.
pub fn symmetric_rank_character(f: &FieldSpec, a: &mut [Elem], n: usize) -> (usize, Character) {
    let (rank, product) = symmetric_reduce(f, a, n, None);
    let chi = if f.is_nonzero_square(product) {
        Character::Plus
    } else {
        Character::Minus
    };
    (rank, chi)
}

/// Writes `A = M·D·Mᵀ` with `D` diagonal.
pub fn congruence_diagonalize(a: &MatrixGF) -> Result<(MatrixGF, MatrixGF)> {
    let f = &a.field;
    if !f.is_odd() {
        return Err(Error::EvenCharacteristic);
    }
    if !a.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = a.rows;
    let mut d = a.data.clone();
    let mut e = MatrixGF::identity(f, n);
    symmetric_reduce(f, &mut d, n, Some(&mut e.data));
    let d = MatrixGF::new(f, n, n, d)?;
    Ok((d, e.inverse()?))
}

/// Quadratic character of a symmetric matrix in odd characteristic.
pub fn quadratic_character(a: &MatrixGF) -> Result<Character> {
    if !a.field.is_odd() {
        return Err(Error::EvenCharacteristic);
    }
    if !a.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let mut scratch = a.data.clone();
    Ok(symmetric_rank_character(&a.field, &mut scratch, a.rows).1)
}

/// A permutation of `1..=n` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// `images[i-1] = w(i)`, values 1-indexed.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(Error::OutOfRange(format!("{images:?} is not a permutation")));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// w(i) for 1-indexed i.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_derangement(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &w)| w != i + 1)
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|&(i, &w)| w == i + 1).count()
    }

    /// All permutations of `1..=n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            let n = used.len();
            if prefix.len() == n {
                out.push(Permutation { images: prefix.clone() });
                return;
            }
            for v in 1..=n {
                if !used[v - 1] {
                    used[v - 1] = true;
                    prefix.push(v);
                    rec(prefix, used, out);
                    prefix.pop();
                    used[v - 1] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }

    /// The matrix with a 1 at (w(i), i).
    pub fn matrix(&self, field: &FieldSpec) -> MatrixGF {
        let n = self.n();
        MatrixGF::from_fn(field, n, n, |r, c| (self.images[c] == r + 1) as Elem)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, w) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str("]")
    }
}

/// Bruhat normal form of an invertible matrix: `A = b·g` with `b` lower
/// triangular and `g` the canonical representative of its cell.
///
/// Row i of `A` is reduced against the rows of `g` already found, taken in
/// decreasing order of their pivot column; the rightmost surviving entry
/// becomes the new pivot and is scaled to 1.
pub fn bruhat_factor(a: &MatrixGF) -> Result<(Permutation, MatrixGF, MatrixGF)> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch("Bruhat form of a non-square matrix".into()));
    }
    let f = &a.field;
    let n = a.rows;
    let mut g = MatrixGF::zeros(f, n, n);
    let mut pivots: Vec<(usize, usize)> = Vec::with_capacity(n); // (column, row)
    let mut images = vec![0; n];
    for i in 0..n {
        let mut row: Vec<Elem> = (0..n).map(|j| a.get(i, j)).collect();
        pivots.sort_unstable_by(|x, y| y.0.cmp(&x.0));
        for &(c, k) in &pivots {
            let v = row[c];
            if v != 0 {
                let neg = f.neg(v);
                for (j, slot) in row.iter_mut().enumerate().take(c + 1) {
                    *slot = f.add(*slot, f.mul(neg, g.get(k, j)));
                }
            }
        }
        let c = (0..n).rev().find(|&j| row[j] != 0).ok_or(Error::Singular)?;
        let s = f.inv(row[c])?;
        for (j, v) in row.into_iter().enumerate() {
            g.set(i, j, f.mul(v, s));
        }
        pivots.push((c, i));
        images[c] = i + 1;
    }
    let b = a.mul(&g.inverse()?)?;
    Ok((Permutation { images }, b, g))
}

/// The permutation w with `A ∈ B·w·B`, B the lower-triangular Borel.
pub fn bruhat_permutation(a: &MatrixGF) -> Result<Permutation> {
    bruhat_factor(a).map(|(w, _, _)| w)
}

/// Bruhat permutation read off ranks: the top-right submatrix on rows
/// `1..=i` and columns `j..=n` has rank `#{c ≥ j : w(c) ≤ i}`.
pub fn bruhat_permutation_by_rank_profile(a: &MatrixGF) -> Result<Permutation> {
    if !a.is_invertible() {
        return Err(Error::Singular);
    }
    let n = a.rows;
    // rk[i][j] for i in 0..=n rows taken, j in 0..=n columns dropped from the left.
    let rk = |i: usize, j: usize| {
        if i == 0 || j == n {
            0
        } else {
            a.submatrix(0..i, j..n).rank()
        }
    };
    let mut images = vec![0; n];
    for c in 0..n {
        for i in 1..=n {
            // w(c+1) = i exactly when the corner count jumps at (i, c).
            let jump = rk(i, c) + rk(i - 1, c + 1) - rk(i - 1, c) - rk(i, c + 1);
            if jump == 1 {
                images[c] = i;
            }
        }
    }
    Permutation::new(images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    fn m(q: u64, s: &str) -> MatrixGF {
        MatrixGF::parse(&make_field(q).unwrap(), s).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(m(2, "1,0,0;0,1,0;0,0,1").rank(), 3);
        assert_eq!(m(2, "1,1;1,1").rank(), 1);
        assert_eq!(m(2, "0,1;1,0;1,1").rank(), 2);
        assert_eq!(m(3, "1,2;2,1").rank(), 1);
        assert_eq!(m(5, "0,0;0,0").rank(), 0);
    }

    #[test]
    fn parse_errors() {
        let f = make_field(3).unwrap();
        assert!(MatrixGF::parse(&f, "1,2;3").is_err());
        assert!(MatrixGF::parse(&f, "1,x").is_err());
        assert!(MatrixGF::parse(&f, "1,3").is_err());
        assert_eq!(m(3, "0,1;1,2").to_string(), "0,1;1,2");
    }

    #[test]
    fn rank_transpose_exhaustive_gf2() {
        let f = make_field(2).unwrap();
        for bits in 0u32..512 {
            let a = MatrixGF::from_fn(&f, 3, 3, |i, j| (bits >> (3 * i + j)) & 1);
            let mut scratch = a.entries().to_vec();
            let generic = rank_in_place(&f, &mut scratch, 3, 3);
            assert_eq!(a.rank(), generic);
            assert_eq!(a.rank(), a.transpose().rank());
        }
    }

    #[test]
    fn diagonalize_examples() {
        let a = m(3, "1,0;0,2");
        let (d, mm) = congruence_diagonalize(&a).unwrap();
        assert_eq!(d, a);
        assert_eq!(mm, MatrixGF::identity(a.field(), 2));

        let h = m(3, "0,1;1,0");
        let (d, mm) = congruence_diagonalize(&h).unwrap();
        assert_eq!(mm.mul(&d).unwrap().mul(&mm.transpose()).unwrap(), h);
        let f = h.field();
        let prod = f.mul(d.get(0, 0), d.get(1, 1));
        assert_eq!(f.legendre_symbol(prod).unwrap(), f.legendre_symbol(f.neg(1)).unwrap());

        let z = MatrixGF::zeros(f, 3, 3);
        let (d, mm) = congruence_diagonalize(&z).unwrap();
        assert_eq!(d, z);
        assert_eq!(mm, MatrixGF::identity(f, 3));

        assert_eq!(congruence_diagonalize(&m(2, "0,1;1,0")).unwrap_err(), Error::EvenCharacteristic);
    }

    #[test]
    fn character_examples() {
        assert_eq!(quadratic_character(&m(3, "1,0;0,1")).unwrap(), Character::Plus);
        assert_eq!(quadratic_character(&m(3, "0,1;1,0")).unwrap(), Character::Minus);
        assert_eq!(quadratic_character(&m(5, "0,0,0;0,0,0;0,0,0")).unwrap(), Character::Plus);
        assert_eq!(quadratic_character(&m(4, "1,0;0,1")).unwrap_err(), Error::EvenCharacteristic);
    }

    #[test]
    fn diagonalize_reconstructs_all_symmetric_3x3_gf3() {
        let f = make_field(3).unwrap();
        for code in 0..3u32.pow(6) {
            let mut c = code;
            let mut a = MatrixGF::zeros(&f, 3, 3);
            for i in 0..3 {
                for j in i..3 {
                    a.set(i, j, c % 3);
                    a.set(j, i, c % 3);
                    c /= 3;
                }
            }
            let (d, mm) = congruence_diagonalize(&a).unwrap();
            assert_eq!(mm.mul(&d).unwrap().mul(&mm.transpose()).unwrap(), a);
            assert_eq!(d.rank(), a.rank());
            assert!((0..3).all(|i| (0..3).all(|j| i == j || d.get(i, j) == 0)));
            if a.is_invertible() {
                let det = f.mul(f.mul(d.get(0, 0), d.get(1, 1)), d.get(2, 2));
                let mut scratch = a.entries().to_vec();
                let (_, chi) = symmetric_rank_character(&f, &mut scratch, 3);
                assert_eq!(chi, f.legendre_symbol(det).unwrap());
            }
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(7, "1,2,3;0,1,4;5,6,0");
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), MatrixGF::identity(a.field(), 3));
        assert_eq!(m(3, "1,1;1,1").inverse().unwrap_err(), Error::Singular);
    }

    #[test]
    fn bruhat_examples() {
        let f = make_field(2).unwrap();
        assert_eq!(bruhat_permutation(&MatrixGF::identity(&f, 3)).unwrap(), Permutation::identity(3));
        assert_eq!(bruhat_permutation(&m(5, "2,0,0;1,3,0;4,4,1")).unwrap(), Permutation::identity(3));
        assert_eq!(bruhat_permutation(&m(2, "0,1;1,0")).unwrap(), Permutation::new(vec![2, 1]).unwrap());
        assert_eq!(bruhat_permutation(&m(3, "1,1;1,1")).unwrap_err(), Error::Singular);
    }

    #[test]
    fn permutation_basics() {
        let w = Permutation::new(vec![2, 3, 1]).unwrap();
        assert!(w.is_derangement());
        assert_eq!(w.to_string(), "[2,3,1]");
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert_eq!(Permutation::all(4).len(), 24);
        let f = make_field(3).unwrap();
        let pm = w.matrix(&f);
        assert_eq!(pm.get(1, 0), 1);
        assert_eq!(bruhat_permutation(&pm).unwrap(), w);
    }
}
