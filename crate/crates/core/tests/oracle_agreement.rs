//! Enumeration strategies agree with each other and with the formulas.

use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;
use qmatcount::formulas::{Evaluator, Method, SymKind};
use qmatcount::gf::{make_field, Character};
use qmatcount::oracle::{count_rank_character_table, count_restricted, CountQuery, OracleOptions, Strategy};
use qmatcount::rook::{q_analogue_check, AnalogueClass};
use qmatcount::support::SupportSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn oracle(q: u64, query: &CountQuery) -> BigInt {
    let field = make_field(q).unwrap();
    BigInt::from(count_restricted(&field, query, &OracleOptions::default()).unwrap().value)
}

fn random_support(rng: &mut ChaCha8Rng, m: usize, n: usize) -> SupportSet {
    let rows = (0..m).map(|_| rng.gen::<u64>() & ((1 << n) - 1)).collect();
    SupportSet::from_row_masks(n, rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn strategies_agree(rows in prop::collection::vec(0u64..16, 1..=4), q in prop::sample::select(vec![2u64, 3, 4]), r in 0usize..=4) {
        let s = SupportSet::from_row_masks(4, rows).unwrap();
        let r = r.min(s.m());
        let field = make_field(q).unwrap();
        let query = CountQuery::general(s, Some(r));
        let values: Vec<BigUint> = [Strategy::Exhaustive, Strategy::Projectivized, Strategy::PrunedColumnDfs]
            .into_iter()
            .map(|st| count_restricted(&field, &query, &OracleOptions::default().with_strategy(st)).unwrap().value)
            .collect();
        prop_assert_eq!(&values[0], &values[1]);
        prop_assert_eq!(&values[0], &values[2]);
    }
}

#[test]
fn worker_count_is_invisible() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10 {
        let s = random_support(&mut rng, 4, 4);
        for q in [2u64, 3] {
            let field = make_field(q).unwrap();
            for query in [CountQuery::general(s.clone(), None), CountQuery::general(s.clone(), Some(3))] {
                let runs: Vec<_> = [1, 4, 16]
                    .into_iter()
                    .map(|w| {
                        let v = count_restricted(&field, &query, &OracleOptions::default().with_workers(w)).unwrap();
                        (v.value, v.work, v.by_rank)
                    })
                    .collect();
                assert!(runs.windows(2).all(|w| w[0] == w[1]));
            }
        }
    }
}

#[test]
fn rectangular_and_zero_diagonal_counts() {
    for q in [2u64, 3] {
        let ev = Evaluator::new(q).unwrap();
        for n in 1..=4 {
            for k in 1..=n {
                let s = SupportSet::from_positions(k, n, (1..=k).map(|i| (i, i))).unwrap();
                let query = CountQuery::general(s, Some(k));
                let want = oracle(q, &query);
                assert_eq!(ev.f_rect(k as i64, n as i64, Method::Closed).unwrap(), want);
                assert_eq!(ev.f_rect(k as i64, n as i64, Method::Recursive).unwrap(), want);
            }
            for r in 0..=n {
                let query = CountQuery::general(SupportSet::diagonal_prefix(n, n).unwrap(), Some(r));
                let want = oracle(q, &query);
                for m in [Method::Closed, Method::Recursive] {
                    assert_eq!(ev.g_zero_diag(n as i64, r as i64, m).unwrap(), want, "g({n},{r}) q={q}");
                }
            }
        }
    }
}

#[test]
fn symmetric_and_alternating_counts() {
    for q in [2u64, 3, 4, 5] {
        let ev = Evaluator::new(q).unwrap();
        for n in 1..=3 {
            let empty = SupportSet::empty(n, n).unwrap();
            for r in 0..=n {
                let sym = oracle(q, &CountQuery::symmetric(empty.clone(), Some(r)));
                assert_eq!(ev.sym_formulas(SymKind::Rank, n as i64, Some(r as i64), None).unwrap(), sym);
                let sk = oracle(q, &CountQuery::skew(SupportSet::diagonal_prefix(n, n).unwrap(), Some(r)));
                assert_eq!(ev.sk_count(n as i64, r as i64, Method::Recursive).unwrap(), sk, "sk({n},{r}) q={q}");
            }
        }
    }
}

#[test]
fn character_refinement_matches_table() {
    for q in [3u64, 5] {
        let ev = Evaluator::new(q).unwrap();
        let field = make_field(q).unwrap();
        for n in 1..=3 {
            for k in 0..=n {
                let table =
                    count_rank_character_table(&field, &SupportSet::diagonal_prefix(n, k).unwrap(), &OracleOptions::default())
                        .unwrap();
                for (r, cell) in table.iter().enumerate() {
                    for c in Character::BOTH {
                        let want = BigInt::from(cell[c.index()].clone());
                        assert_eq!(ev.sym0_char_recursive(n as i64, k as i64, r as i64, c).unwrap(), want);
                    }
                }
            }
        }
    }
}

#[test]
fn random_supports_satisfy_the_congruence() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let s = random_support(&mut rng, 3, 3);
        for q in [3u64, 4] {
            let field = make_field(q).unwrap();
            for r in 0..=3 {
                let rep = q_analogue_check(&field, &s, r, AnalogueClass::General, &OracleOptions::default()).unwrap();
                assert!(rep.holds, "{s} r={r} q={q}");
            }
        }
    }
}
