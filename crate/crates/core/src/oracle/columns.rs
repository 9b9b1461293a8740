//! Column-projectivized enumeration, with and without pruning.
//!
//! Scaling a column by a nonzero scalar preserves rank and support, so each
//! column only ranges over zero and one representative per line (first
//! nonzero entry equal to 1); a configuration with c nonzero columns stands
//! for `(q-1)^c` matrices.

use super::{bump, run_units, Method, Tally};
use crate::gf::{Elem, FieldSpec};
use crate::matq::{rank_gf2, rank_in_place};
use crate::support::SupportSet;

/// Line representatives supported on the given rows of an m-vector.
fn representatives(field: &FieldSpec, m: usize, free_rows: &[usize]) -> Vec<Vec<Elem>> {
    let q = field.q();
    let mut out = Vec::new();
    for (t, &lead) in free_rows.iter().enumerate() {
        let tail = &free_rows[t + 1..];
        let mut values = vec![0; tail.len()];
        loop {
            let mut v = vec![0; m];
            v[lead] = 1;
            for (&row, &x) in tail.iter().zip(&values) {
                v[row] = x;
            }
            out.push(v);
            if !bump(&mut values, q) {
                break;
            }
        }
    }
    out
}

struct Setup<'a> {
    field: &'a FieldSpec,
    m: usize,
    n: usize,
    /// Per column: index 0 is the zero vector, the rest are representatives.
    options: Vec<Vec<Vec<Elem>>>,
    max_rank: usize,
}

pub(super) fn count(field: &FieldSpec, s: &SupportSet, target: Option<usize>, method: Method, workers: usize) -> Tally {
    let (m, n) = (s.m(), s.n());
    let options: Vec<Vec<Vec<Elem>>> = (0..n)
        .map(|j| {
            let free_rows: Vec<usize> = (0..m).filter(|&i| s.is_free(i + 1, j + 1)).collect();
            let mut opts = vec![vec![0; m]];
            opts.extend(representatives(field, m, &free_rows));
            opts
        })
        .collect();
    let setup = Setup {
        field,
        m,
        n,
        options,
        max_rank: m.min(n),
    };
    // Columns fixed per work unit; the last column is never fixed under DFS.
    let fixed = match method {
        Method::PrunedColumnDfs => n.saturating_sub(1).min(2),
        _ => n.min(2),
    };
    let radices: Vec<usize> = setup.options[..fixed].iter().map(Vec::len).collect();
    let units: usize = radices.iter().product();
    let parts = run_units(units, workers, |unit| {
        let mut choice = Vec::with_capacity(fixed);
        let mut rest = unit;
        for &r in &radices {
            choice.push(rest % r);
            rest /= r;
        }
        match method {
            Method::PrunedColumnDfs => dfs_unit(&setup, s, &choice, target),
            _ => projectivized_unit(&setup, &choice),
        }
    });
    let mut total = Tally::new(setup.max_rank);
    for p in &parts {
        total.absorb(p);
    }
    total
}

fn projectivized_unit(setup: &Setup, prefix: &[usize]) -> Tally {
    let Setup { field, m, n, .. } = *setup;
    let q = field.q();
    let mut tally = Tally::new(setup.max_rank);
    let mut choice = vec![0usize; n];
    choice[..prefix.len()].copy_from_slice(prefix);
    let radices: Vec<usize> = setup.options.iter().map(Vec::len).collect();
    let mut buf = vec![0 as Elem; n * m];
    let mut packed = vec![0u64; n];
    let unit_weight = (q - 1) as u128;
    loop {
        let mut nonzero = 0u32;
        let rank = if q == 2 && m <= 64 {
            for (j, &c) in choice.iter().enumerate() {
                let v = &setup.options[j][c];
                nonzero += u32::from(c != 0);
                packed[j] = v.iter().enumerate().fold(0, |acc, (i, &x)| acc | (x as u64) << i);
            }
            rank_gf2(&mut packed)
        } else {
            for (j, &c) in choice.iter().enumerate() {
                nonzero += u32::from(c != 0);
                buf[j * m..(j + 1) * m].copy_from_slice(&setup.options[j][c]);
            }
            // Rows of `buf` are the columns; rank is transpose-invariant.
            rank_in_place(field, &mut buf, n, m)
        };
        tally.cells[rank][0] += unit_weight.pow(nonzero);
        tally.work += 1;
        // Odometer over the columns after the prefix.
        let mut advanced = false;
        for j in prefix.len()..n {
            choice[j] += 1;
            if choice[j] < radices[j] {
                advanced = true;
                break;
            }
            choice[j] = 0;
        }
        if !advanced {
            break;
        }
    }
    tally
}

struct Dfs<'a> {
    setup: &'a Setup<'a>,
    target: Option<usize>,
    /// Echelon basis: each vector has a 1 at its pivot and zeros at the
    /// pivots of the vectors before it.
    basis: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
    /// Rows forbidden in the last column.
    last_forbidden: Vec<usize>,
    last_free: u32,
    scratch: Vec<Vec<Elem>>,
    projection: Vec<Elem>,
    tally: Tally,
}

fn dfs_unit(setup: &Setup, s: &SupportSet, prefix: &[usize], target: Option<usize>) -> Tally {
    let (m, n) = (setup.m, setup.n);
    let last_forbidden: Vec<usize> = (0..m).filter(|&i| s.is_forbidden(i + 1, n)).collect();
    let mut dfs = Dfs {
        setup,
        target,
        basis: Vec::with_capacity(n),
        pivots: Vec::with_capacity(n),
        last_free: (m - last_forbidden.len()) as u32,
        last_forbidden,
        scratch: vec![vec![0; m]; n + 1],
        projection: vec![0; n * m],
        tally: Tally::new(setup.max_rank),
    };
    let q1 = (setup.field.q() - 1) as u128;
    let mut weight = 1u128;
    for (j, &c) in prefix.iter().enumerate() {
        dfs.tally.work += 1;
        if c == 0 {
            continue;
        }
        weight *= q1;
        let mut v = setup.options[j][c].clone();
        if dfs.reduce(&mut v) {
            dfs.push(v);
        }
    }
    dfs.visit(prefix.len(), weight);
    dfs.tally
}

impl Dfs<'_> {
    /// Reduces `v` against the basis; true if a nonzero residue remains.
    fn reduce(&self, v: &mut [Elem]) -> bool {
        let f = self.setup.field;
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let c = v[p];
            if c != 0 {
                let neg = f.neg(c);
                for (x, &y) in v.iter_mut().zip(b) {
                    if y != 0 {
                        *x = f.add(*x, f.mul(neg, y));
                    }
                }
            }
        }
        v.iter().any(|&x| x != 0)
    }

    fn push(&mut self, mut v: Vec<Elem>) {
        let f = self.setup.field;
        let p = v.iter().position(|&x| x != 0).expect("nonzero residue");
        let inv = f.try_inv(v[p]).expect("nonzero");
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        self.basis.push(v);
        self.pivots.push(p);
    }

    fn visit(&mut self, j: usize, weight: u128) {
        let rho = self.basis.len();
        let n = self.setup.n;
        if let Some(r) = self.target {
            if rho > r || rho + (n - j) < r {
                return;
            }
        }
        if j + 1 == n {
            self.leaf(weight);
            return;
        }
        let q1 = (self.setup.field.q() - 1) as u128;
        let options = &self.setup.options[j];
        self.tally.work += 1;
        self.visit(j + 1, weight);
        for c in 1..options.len() {
            self.tally.work += 1;
            let mut v = std::mem::take(&mut self.scratch[j]);
            v.copy_from_slice(&options[c]);
            if self.reduce(&mut v) {
                self.push(v);
                self.visit(j + 1, weight * q1);
                let back = self.basis.pop().expect("pushed");
                self.pivots.pop();
                self.scratch[j] = back;
            } else {
                self.scratch[j] = v;
                self.visit(j + 1, weight * q1);
            }
        }
    }

    /// Counts every vector of the last column at once: those inside the
    /// current span keep the rank, the rest raise it by one.
    fn leaf(&mut self, weight: u128) {
        let f = self.setup.field;
        let q = f.q() as u128;
        let rho = self.basis.len();
        let k = self.last_forbidden.len();
        let buf = &mut self.projection[..rho * k];
        for (b, row) in self.basis.iter().zip(buf.chunks_mut(k.max(1))) {
            for (slot, &i) in row.iter_mut().zip(&self.last_forbidden) {
                *slot = b[i];
            }
        }
        let projected = if k == 0 { 0 } else { rank_in_place(f, buf, rho, k) };
        // Dimension of span ∩ {vectors vanishing on forbidden rows}.
        let d = (rho - projected) as u32;
        let inside = q.pow(d);
        let all = q.pow(self.last_free);
        self.tally.cells[rho][0] += weight * inside;
        if all > inside {
            self.tally.cells[rho + 1][0] += weight * (all - inside);
        }
        self.tally.work += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn representatives_cover_each_line_once() {
        for q in [2u64, 3, 4, 5] {
            let f = make_field(q).unwrap();
            let reps = representatives(&f, 4, &[0, 2, 3]);
            assert_eq!(reps.len() as u64, (q.pow(3) - 1) / (q - 1));
            for v in &reps {
                assert_eq!(v[1], 0);
                assert_eq!(*v.iter().find(|&&x| x != 0).unwrap(), 1);
            }
        }
    }
}
