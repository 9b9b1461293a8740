use num_bigint::{BigInt, BigUint};
use qmatcount::formulas::{Evaluator, Method};
use qmatcount::oracle::{bruhat_cell_counts, CountQuery, OracleOptions};
use qmatcount::poly::interpolate;
use qmatcount::polyprobe::{probe, Verdict};
use qmatcount::rook::haglund_rhs;
use qmatcount::{make_field, Partition, SupportSet};

/// Straight shapes count polynomially. Only shapes whose count has low
/// degree are probed, so that five field orders pin the polynomial down.
#[test]
fn straight_shapes_probe_consistent() {
    let n = 3;
    let mut probed = 0;
    for lambda in Partition::all_in_box(n, n) {
        for r in 0..=n {
            // The exact polynomial, from the rook side at many q.
            let points: Vec<(i64, BigInt)> = (2..=12)
                .map(|q| (q, haglund_rhs(q as u64, &lambda, n, r).unwrap().to_integer()))
                .collect();
            let exact = interpolate(&points).unwrap();
            if exact.degree().unwrap_or(0) > 3 {
                continue;
            }
            let query = CountQuery::general(SupportSet::straight(&lambda, n).unwrap(), Some(r));
            let res = probe(&query, &[2, 3, 4, 5, 7], 1, &OracleOptions::default()).unwrap();
            assert_eq!(res.verdict, Verdict::Consistent, "{lambda} r={r}");
            assert_eq!(res.fitted.as_ref(), Some(&exact), "{lambda} r={r}");
            probed += 1;
        }
    }
    assert!(probed >= 10);
}

#[test]
fn bruhat_cells_at_four() {
    let n = 4;
    for q in [2u64, 3] {
        let field = make_field(q).unwrap();
        let cells = bruhat_cell_counts(&field, n, &OracleOptions::default().with_workers(4)).unwrap();
        assert_eq!(cells.len(), 24);
        let total: BigUint = cells.values().sum();
        let f = Evaluator::new(q).unwrap().f_rect(4, 4, Method::Closed).unwrap();
        assert_eq!(BigInt::from(total), f);
        let q1 = BigUint::from(q - 1);
        let modulus = q1.pow(n as u32 + 1);
        for (w, c) in &cells {
            let want = if w.is_derangement() { q1.pow(n as u32) % &modulus } else { BigUint::from(0u8) };
            assert_eq!(c % &modulus, want, "{w} q={q}");
        }
    }
}
