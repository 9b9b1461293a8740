//! Rook placements, q-rook polynomials and the congruences linking matrix
//! counts to them.
//!
//! Boards are given as a [`SupportSet`] whose *free* cells are the cells a
//! rook may occupy. For a forbidden set S this means rooks avoid S, which is
//! how placements arise as the `q = 1` shadow of matrices avoiding S.
//!
//! The statistic `inv(C)` of a placement C counts the board cells left
//! uncancelled when each rook cancels its own cell, every board cell below
//! it in its column and every board cell to its right in its row. With this
//! convention the full n×n board gives `R_n = [n]_q!`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::oracle::{count_restricted, CountQuery, OracleOptions};
use crate::poly::QPolynomial;
use crate::support::{Partition, SupportSet};

/// Visits every placement of `r` non-attacking rooks on the free cells of
/// `s`, passing the occupied column of each row (or `None`).
fn placements(s: &SupportSet, r: usize, mut visit: impl FnMut(&[Option<usize>])) {
    fn go(
        s: &SupportSet,
        row: usize,
        left: usize,
        used: u64,
        chosen: &mut Vec<Option<usize>>,
        visit: &mut dyn FnMut(&[Option<usize>]),
    ) {
        let m = s.m();
        if left == 0 {
            chosen.resize(m, None);
            visit(chosen);
            chosen.truncate(row);
            return;
        }
        if m - row < left {
            return;
        }
        let mut avail = s.free_mask(row) & !used;
        while avail != 0 {
            let j = avail.trailing_zeros() as usize;
            avail &= avail - 1;
            chosen.push(Some(j));
            go(s, row + 1, left - 1, used | 1 << j, chosen, visit);
            chosen.pop();
        }
        chosen.push(None);
        go(s, row + 1, left, used, chosen, visit);
        chosen.pop();
    }
    go(s, 0, r, 0, &mut Vec::with_capacity(s.m()), &mut visit);
}

fn check_rank(s: &SupportSet, r: usize) -> Result<()> {
    if r > s.m().min(s.n()) {
        return Err(Error::OutOfRange(format!("{r} rooks do not fit on a {}x{} board", s.m(), s.n())));
    }
    Ok(())
}

/// Number of placements of `r` non-attacking rooks on the free cells of `s`.
pub fn rook_count_t1(s: &SupportSet, r: usize) -> Result<BigUint> {
    check_rank(s, r)?;
    let mut count = 0u128;
    placements(s, r, |_| count += 1);
    Ok(BigUint::from(count))
}

/// `R_r(board, q)`: the sum of `q^inv(C)` over placements of `r` rooks on the
/// free cells of `board`.
pub fn q_rook_polynomial(board: &SupportSet, r: usize) -> Result<QPolynomial> {
    check_rank(board, r)?;
    let m = board.m();
    let cells = board.free_count();
    let mut by_inv = vec![0u128; cells + 1];
    placements(board, r, |cols| {
        let mut cancelled = vec![0u64; m];
        for (i, c) in cols.iter().enumerate() {
            if let Some(j) = *c {
                let bit = 1u64 << j;
                // Own cell and everything to the right in the row.
                cancelled[i] |= !(bit - 1);
                for row in cancelled.iter_mut().skip(i + 1) {
                    *row |= bit;
                }
            }
        }
        let inv: u32 = (0..m)
            .map(|i| (board.free_mask(i) & !cancelled[i]).count_ones())
            .sum();
        by_inv[inv as usize] += 1;
    });
    Ok(QPolynomial::new(
        by_inv
            .into_iter()
            .map(|c| BigRational::from_integer(BigInt::from(c)))
            .collect(),
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HaglundReport {
    pub lhs: BigUint,
    pub rhs: BigRational,
    pub equal: bool,
}

/// `(q-1)^r q^{n²-|λ|-r} R_r(free region of S_λ, 1/q)`.
pub fn haglund_rhs(q: u64, lambda: &Partition, n: usize, r: usize) -> Result<BigRational> {
    let s = SupportSet::straight(lambda, n)?;
    let q = BigRational::from_integer(BigInt::from(q));
    let rook = q_rook_polynomial(&s, r)?.eval(&q.recip());
    let exponent = (n * n) as i64 - lambda.size() as i64 - r as i64;
    Ok((&q - BigRational::one()).pow(r as i32) * q.pow(exponent as i32) * rook)
}

impl HaglundReport {
    pub fn new(lhs: BigUint, rhs: BigRational) -> Self {
        let equal = rhs.is_integer() && rhs.to_integer() == BigInt::from(lhs.clone());
        HaglundReport { lhs, rhs, equal }
    }
}

/// Compares the oracle count of rank-r n×n matrices avoiding `S_λ` with
/// [`haglund_rhs`].
pub fn haglund_check(
    field: &FieldSpec,
    lambda: &Partition,
    n: usize,
    r: usize,
    options: &OracleOptions,
) -> Result<HaglundReport> {
    let s = SupportSet::straight(lambda, n)?;
    let lhs = count_restricted(field, &CountQuery::general(s, Some(r)), options)?.value;
    Ok(HaglundReport::new(lhs, haglund_rhs(field.q() as u64, lambda, n, r)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AnalogueClass {
    General,
    Symmetric,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalogueReport {
    /// Oracle count over GF(q).
    pub t_q: BigUint,
    /// Rook placements (or matchings, for the symmetric class).
    pub t_1: BigUint,
    /// Power of `q-1` multiplying `t_1`: r, or r/2 when symmetric.
    pub exponent: usize,
    /// `(q-1)^{exponent+1}`.
    pub modulus: BigUint,
    pub t_q_residue: BigUint,
    pub t_1_residue: BigUint,
    pub holds: bool,
}

/// Number of matchings with `s` edges among the pairs `i < j` for which
/// both `(i,j)` and `(j,i)` are free.
pub fn symmetric_placements(support: &SupportSet, s: usize) -> BigUint {
    fn go(sup: &SupportSet, vertex: usize, left: usize, used: u64) -> u128 {
        let n = sup.n();
        if left == 0 {
            return 1;
        }
        if vertex >= n {
            return 0;
        }
        if used >> vertex & 1 == 1 {
            return go(sup, vertex + 1, left, used);
        }
        let mut total = go(sup, vertex + 1, left, used);
        for w in vertex + 1..n {
            if used >> w & 1 == 0 && sup.is_free(vertex + 1, w + 1) && sup.is_free(w + 1, vertex + 1) {
                total += go(sup, vertex + 1, left - 1, used | 1 << vertex | 1 << w);
            }
        }
        total
    }
    BigUint::from(go(support, 0, s, 0))
}

/// Checks `#T_q ≡ #T_1 (q-1)^e (mod (q-1)^{e+1})`, where `T_q` is the set of
/// rank-r matrices avoiding `s` and `e = r`; for the symmetric class the
/// matrices are symmetric, `s` must contain the diagonal, `r = 2e` and
/// `T_1` counts e-edge matchings off the diagonal.
pub fn q_analogue_check(
    field: &FieldSpec,
    s: &SupportSet,
    r: usize,
    class: AnalogueClass,
    options: &OracleOptions,
) -> Result<AnalogueReport> {
    check_rank(s, r)?;
    let (query, t_1, exponent) = match class {
        AnalogueClass::General => (CountQuery::general(s.clone(), Some(r)), rook_count_t1(s, r)?, r),
        AnalogueClass::Symmetric => {
            if !field.is_odd() {
                return Err(Error::EvenCharacteristic);
            }
            if r % 2 == 1 {
                return Err(Error::OddRank(r));
            }
            if !s.is_square() || !s.is_symmetric() {
                return Err(Error::NotSymmetric);
            }
            if !s.contains_diagonal() {
                return Err(Error::OutOfRange("symmetric check needs the whole diagonal forbidden".into()));
            }
            (CountQuery::symmetric(s.clone(), Some(r)), symmetric_placements(s, r / 2), r / 2)
        }
    };
    let t_q = count_restricted(field, &query, options)?.value;
    Ok(AnalogueReport::new(t_q, t_1, exponent, field.q() as u64))
}

impl AnalogueReport {
    /// Compares `t_q` and `t_1 (q-1)^exponent` modulo `(q-1)^{exponent+1}`.
    pub fn new(t_q: BigUint, t_1: BigUint, exponent: usize, q: u64) -> Self {
        let q1 = BigUint::from(q - 1);
        let modulus = q1.pow(exponent as u32 + 1);
        let scaled = &t_1 * q1.pow(exponent as u32);
        let (t_q_residue, t_1_residue) = if modulus.is_one() {
            (BigUint::zero(), BigUint::zero())
        } else {
            (&t_q % &modulus, &scaled % &modulus)
        };
        AnalogueReport {
            holds: t_q_residue == t_1_residue,
            t_q,
            t_1,
            exponent,
            modulus,
            t_q_residue,
            t_1_residue,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn t1_examples() {
        let diag = SupportSet::diagonal_prefix(2, 2).unwrap();
        assert_eq!(rook_count_t1(&diag, 2).unwrap(), big(1));
        assert_eq!(rook_count_t1(&SupportSet::empty(2, 2).unwrap(), 1).unwrap(), big(4));
        assert_eq!(rook_count_t1(&SupportSet::fano(), 7).unwrap(), big(24));
        assert!(rook_count_t1(&diag, 3).is_err());
    }

    #[test]
    fn full_board_is_q_factorial() {
        for n in 1..=5 {
            let board = SupportSet::empty(n, n).unwrap();
            assert_eq!(q_rook_polynomial(&board, n).unwrap(), QPolynomial::q_factorial(n));
        }
        let one_cell = SupportSet::from_positions(2, 2, [(1, 2), (2, 1), (2, 2)]).unwrap();
        assert_eq!(q_rook_polynomial(&one_cell, 1).unwrap(), QPolynomial::one());
        // No rooks cancel nothing: every board cell counts.
        assert_eq!(q_rook_polynomial(&one_cell, 0).unwrap(), QPolynomial::q());
        let full = SupportSet::empty(3, 3).unwrap();
        assert_eq!(q_rook_polynomial(&full, 0).unwrap(), QPolynomial::q().pow(9));
    }

    #[test]
    fn t1_is_rook_polynomial_at_one() {
        for lambda in Partition::all_in_box(3, 3) {
            let s = SupportSet::straight(&lambda, 3).unwrap();
            for r in 0..=3 {
                let at_one = q_rook_polynomial(&s, r).unwrap().eval_int(1);
                assert_eq!(at_one, BigRational::from_integer(BigInt::from(rook_count_t1(&s, r).unwrap())));
            }
        }
    }

    #[test]
    fn haglund_examples() {
        let opts = OracleOptions::default();
        let f3 = make_field(3).unwrap();
        let rep = haglund_check(&f3, &Partition::new(vec![1]).unwrap(), 2, 2, &opts).unwrap();
        assert_eq!(rep.lhs, big(12));
        assert!(rep.equal);
        let rep = haglund_check(&f3, &Partition::new(vec![2, 1]).unwrap(), 2, 2, &opts).unwrap();
        assert_eq!(rep.lhs, big(0));
        assert!(rep.equal);
        let f5 = make_field(5).unwrap();
        let rep = haglund_check(&f5, &Partition::empty(), 1, 1, &opts).unwrap();
        assert_eq!(rep.lhs, big(4));
        assert!(rep.equal);
    }

    #[test]
    fn analogue_examples() {
        let opts = OracleOptions::default();
        let f4 = make_field(4).unwrap();
        let rep = q_analogue_check(&f4, &SupportSet::empty(1, 1).unwrap(), 1, AnalogueClass::General, &opts).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.t_q, big(3));
        let f3 = make_field(3).unwrap();
        let diag = SupportSet::diagonal_prefix(2, 2).unwrap();
        let rep = q_analogue_check(&f3, &diag, 2, AnalogueClass::General, &opts).unwrap();
        assert_eq!((rep.t_q.clone(), rep.t_1.clone(), rep.modulus.clone()), (big(4), big(1), big(8)));
        assert!(rep.holds);
        let rep = q_analogue_check(&f3, &diag, 2, AnalogueClass::Symmetric, &opts).unwrap();
        assert_eq!((rep.t_q.clone(), rep.t_1.clone()), (big(2), big(1)));
        assert!(rep.holds);
        assert_eq!(
            q_analogue_check(&f3, &diag, 1, AnalogueClass::Symmetric, &opts).unwrap_err(),
            Error::OddRank(1)
        );
    }

    #[test]
    fn matchings() {
        let s = SupportSet::diagonal_prefix(4, 4).unwrap();
        assert_eq!(symmetric_placements(&s, 1), big(6));
        assert_eq!(symmetric_placements(&s, 2), big(3));
        assert_eq!(symmetric_placements(&s, 0), big(1));
    }
}
