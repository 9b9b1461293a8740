//! Plain enumeration over every assignment of the free entries.

use super::{bump, digits, prefix_len, run_units, CountQuery, MatrixClass, Tally};
use crate::gf::{Elem, FieldSpec};
use crate::matq::{rank_gf2, rank_in_place, symmetric_rank_character};

pub(super) fn count(field: &FieldSpec, query: &CountQuery, workers: usize) -> Tally {
    let s = &query.support;
    let (m, n) = (s.m(), s.n());
    let class = query.class;
    // 0-indexed cells that vary; mirrored cells are filled from these.
    let cells: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| s.is_free(i + 1, j + 1))
        .filter(|&(i, j)| match class {
            MatrixClass::General => true,
            MatrixClass::Symmetric | MatrixClass::SymmetricWithCharacter => i <= j,
            MatrixClass::Skew => i < j,
        })
        .collect();
    let q = field.q();
    let k = prefix_len(q, cells.len());
    let units = (q as usize).pow(k as u32);
    let max_rank = query.max_rank();
    let packed = q == 2 && n <= 64;
    let parts = run_units(units, workers, |unit| {
        let mut tally = Tally::new(max_rank);
        let mut values = vec![0; cells.len()];
        digits(unit as u64, q, &mut values[..k]);
        let mut a = vec![0 as Elem; m * n];
        let mut scratch = vec![0 as Elem; m * n];
        let mut rows = vec![0u64; m];
        loop {
            for (&(i, j), &v) in cells.iter().zip(&values) {
                a[i * n + j] = v;
                match class {
                    MatrixClass::General => {}
                    MatrixClass::Symmetric | MatrixClass::SymmetricWithCharacter => a[j * n + i] = v,
                    MatrixClass::Skew => a[j * n + i] = field.neg(v),
                }
            }
            let (rank, slot) = if class != MatrixClass::General && class != MatrixClass::Skew && field.is_odd() {
                scratch.copy_from_slice(&a);
                let (r, chi) = symmetric_rank_character(field, &mut scratch, n);
                (r, if class == MatrixClass::SymmetricWithCharacter { chi.index() } else { 0 })
            } else if packed {
                for (i, row) in rows.iter_mut().enumerate() {
                    *row = a[i * n..(i + 1) * n]
                        .iter()
                        .enumerate()
                        .fold(0, |acc, (j, &v)| acc | (v as u64) << j);
                }
                (rank_gf2(&mut rows), 0)
            } else {
                scratch.copy_from_slice(&a);
                (rank_in_place(field, &mut scratch, m, n), 0)
            };
            tally.cells[rank][slot] += 1;
            tally.work += 1;
            if !bump(&mut values[k..], q) {
                break;
            }
        }
        tally
    });
    let mut total = Tally::new(max_rank);
    for p in &parts {
        total.absorb(p);
    }
    total
}
