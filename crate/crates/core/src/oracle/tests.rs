use super::*;
use crate::poincare::ModelType::{A, B, D};

fn mask(labels: &[u32]) -> Support {
    labels.iter().fold(0, |m, l| m | (1 << (l - 1)))
}

fn plain(labels: &[u32]) -> Block {
    Block::plain(mask(labels))
}

fn elem(blocks: Vec<Block>) -> PosetElement {
    PosetElement::new(blocks)
}

fn names(model: ModelType, n: u32) -> Vec<String> {
    enumerate_elements(model, n)
        .unwrap()
        .iter()
        .map(|x| x.to_string())
        .collect()
}

#[test]
fn element_examples() {
    assert_eq!(names(A, 3), ["{(1,2)}", "{(1,3)}", "{(2,3)}", "{(1,2,3)}"]);
    let mut b2 = names(B, 2);
    b2.sort();
    assert_eq!(
        b2,
        [
            "{strong{1,2}}",
            "{strong{1}}",
            "{strong{2}}",
            "{weak(1,2|)}",
            "{weak(1|2)}"
        ]
    );
    let mut d2 = names(D, 2);
    d2.sort();
    assert_eq!(d2, ["{strong{1,2}}", "{weak(1,2|)}", "{weak(1|2)}"]);
    assert!(enumerate_elements(A, 1).unwrap().is_empty());
    assert_eq!(names(B, 1), ["{strong{1}}"]);
}

#[test]
fn element_counts_match_closed_forms() {
    // type A: set partitions minus the discrete one
    for (n, bell) in [(2, 2), (3, 5), (4, 15), (5, 52)] {
        assert_eq!(enumerate_elements(A, n).unwrap().len(), bell - 1);
    }
    assert_eq!(enumerate_elements(A, 5).unwrap().len(), 51);
    assert_eq!(enumerate_elements(B, 3).unwrap().len(), 23);
    assert_eq!(enumerate_elements(B, 4).unwrap().len(), 115);
    assert_eq!(enumerate_elements(D, 4).unwrap().len(), 71);
}

#[test]
fn type_a_order_example() {
    let x = elem(vec![plain(&[1, 2])]);
    let y = elem(vec![plain(&[1, 3]), plain(&[2, 4])]);
    assert!(!leq(&x, &y));
    assert!(leq(&x, &elem(vec![plain(&[1, 2, 3]), plain(&[4, 5])])));
}

#[test]
fn chain_counts() {
    assert_eq!(enumerate_chains(A, 2).unwrap().chains().count(), 2);
    assert_eq!(enumerate_chains(A, 3).unwrap().chains().count(), 8);
    assert_eq!(enumerate_chains(D, 2).unwrap().chains().count(), 6);
    assert_eq!(enumerate_chains(A, 5).unwrap().chains().count(), 872);
    assert_eq!(enumerate_chains(B, 3).unwrap().chains().count(), 118);
}

#[test]
fn chains_are_strict_and_distinct() {
    let poset = enumerate_chains(B, 3).unwrap();
    let chains: Vec<Chain> = poset.chains().collect();
    assert!(chains[0].is_empty());
    let distinct: std::collections::HashSet<_> = chains.iter().collect();
    assert_eq!(distinct.len(), chains.len());
    for c in &chains {
        assert!(c.is_strict());
        assert!(c.jumps().iter().all(|&d| d >= 1));
    }
}

#[test]
fn census_agrees_with_streamed_chains() {
    for (model, n) in [(A, 5), (B, 3), (D, 4)] {
        let poset = enumerate_chains(model, n).unwrap();
        let streamed = poset
            .chains()
            .fold(QPoly::zero(), |acc, c| acc.add(&chain_contribution(&c, 2)));
        assert_eq!(streamed, poset.poincare(2, Execution::Sequential));
        assert_eq!(streamed, poset.poincare(2, Execution::Parallel));
    }
}

fn big_a_chain() -> Chain {
    Chain::new(vec![
        elem(vec![plain(&[1, 2]), plain(&[10, 12])]),
        elem(vec![plain(&[1, 2, 4, 5]), plain(&[8, 10, 12])]),
        elem(vec![
            plain(&[1, 2, 3, 4, 5]),
            plain(&[8, 10, 12, 13, 14, 16]),
        ]),
    ])
}

#[test]
fn contribution_examples() {
    let q = |c: &[i64]| QPoly::from_integers(c.iter().copied());
    let top = Chain::new(vec![elem(vec![plain(&[1, 2, 3])])]);
    assert_eq!(chain_contribution(&top, 1), q(&[0, 1]));
    let two = Chain::new(vec![
        elem(vec![plain(&[1, 2])]),
        elem(vec![plain(&[1, 2, 3])]),
    ]);
    assert_eq!(chain_contribution(&two, 1), QPoly::zero());
    assert_eq!(chain_contribution(&Chain::new(vec![]), 1), QPoly::one());

    let big = big_a_chain();
    assert!(big.is_strict());
    assert_eq!(big.jumps(), [2, 3, 4]);
    let expected = q(&[0, 1]).mul(&q(&[0, 1, 1])).mul(&q(&[0, 1, 1, 1]));
    assert_eq!(chain_contribution(&big, 1), expected);
}

#[test]
fn forest_examples() {
    let f = forest_of_chain(&big_a_chain(), 16).unwrap();
    assert_eq!(f.level_sums(), [4, 3, 2]);
    assert_eq!(f.levels[0].len(), 2);

    let top = Chain::new(vec![elem(vec![plain(&[1, 2, 3])])]);
    let f = forest_of_chain(&top, 3).unwrap();
    assert_eq!(f.levels[0][0].out_degree, 3);
    assert_eq!(f.level_sums(), [2]);

    let strong = Chain::new(vec![elem(vec![Block::strong(mask(&[1, 2]))])]);
    let f = forest_of_chain(&strong, 2).unwrap();
    assert_eq!(f.levels[0][0].weak_out_degree, 2);
    assert_eq!(f.level_sums(), [2]);

    assert!(forest_of_chain(&Chain::new(vec![]), 3).is_none());
}

#[test]
fn level_sums_match_jumps() {
    for (model, n) in [(A, 5), (B, 3), (D, 3)] {
        let poset = enumerate_chains(model, n).unwrap();
        for c in poset.chains().skip(1) {
            let mut jumps = c.jumps();
            jumps.reverse();
            assert_eq!(forest_of_chain(&c, n).unwrap().level_sums(), jumps, "{c}");
        }
    }
}

#[test]
fn oracle_examples() {
    let q = |c: &[i64]| QPoly::from_integers(c.iter().copied());
    assert_eq!(oracle_poincare(A, 3, 1).unwrap(), q(&[1, 1]));
    assert_eq!(oracle_poincare(B, 2, 1).unwrap(), q(&[1, 1]));
    assert_eq!(oracle_poincare(A, 4, 1).unwrap(), q(&[1, 8, 1]));
    assert_eq!(oracle_poincare(A, 1, 1).unwrap(), QPoly::one());
    assert_eq!(oracle_poincare(B, 1, 1).unwrap(), QPoly::one());
    assert_eq!(oracle_poincare(D, 2, 1).unwrap(), q(&[1, 1]));
    assert_eq!(oracle_poincare(B, 3, 1).unwrap(), q(&[1, 14, 1]));
    assert!(matches!(oracle_poincare(A, 3, 0), Err(Error::Contract(_))));
}

#[test]
fn caps_are_enforced() {
    let limits = OracleLimits::default();
    assert!(matches!(
        limits.check(A, 9),
        Err(Error::ResourceGuard {
            kind: 'A',
            n: 9,
            cap: 8
        })
    ));
    assert!(matches!(
        limits.check(B, 6),
        Err(Error::ResourceGuard { kind: 'B', .. })
    ));
    assert!(limits.check(D, 5).is_ok());
    assert!(OracleLimits::unlimited().check(B, 6).is_ok());
    assert!(matches!(limits.check(A, 0), Err(Error::Domain(_))));
}

#[test]
fn two_power_examples() {
    let poset = enumerate_chains(B, 2).unwrap();
    let groups = two_power_groups(&poset);
    let find = |s: &str| {
        groups
            .iter()
            .find(|g| g.representative.to_string() == s)
            .unwrap()
    };
    let weak = groups
        .iter()
        .find(|g| g.representative.to_string().starts_with("{weak"))
        .unwrap();
    assert_eq!((weak.size, weak.exponent), (2, 1));
    assert_eq!(find("{strong{1,2}}").size, 1);

    let poset = enumerate_chains(B, 3).unwrap();
    let full = two_power_groups(&poset)
        .into_iter()
        .find(|g| {
            let r = &g.representative;
            let x = r.elements().first();
            r.len() == 1
                && x.is_some_and(|x| {
                    x.blocks().len() == 1 && x.blocks()[0].is_weak() && x.support() == 0b111
                })
        })
        .unwrap();
    assert_eq!(full.size, 4);

    for n in 2..=3 {
        assert!(verify_two_power_counts(B, n).unwrap());
        assert!(verify_two_power_counts(D, n).unwrap());
    }
    assert!(verify_two_power_counts(A, 3).is_err());
}

// every permutation of 1..=n
fn permutations(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn partial_order_axioms() {
    for (model, n) in [(A, 4), (B, 3), (D, 3)] {
        let xs = enumerate_elements(model, n).unwrap();
        for a in &xs {
            assert!(leq(a, a));
            for b in &xs {
                if a != b && leq(a, b) {
                    assert!(!leq(b, a), "{a} {b}");
                    assert!(a.dim() < b.dim());
                }
                for c in &xs {
                    if leq(a, b) && leq(b, c) {
                        assert!(leq(a, c));
                    }
                }
            }
        }
    }
}

#[test]
fn relabeling_preserves_the_poset() {
    for (model, n) in [(A, 4), (B, 3), (D, 4)] {
        let xs = enumerate_elements(model, n).unwrap();
        let set: std::collections::HashSet<_> = xs.iter().cloned().collect();
        for perm in permutations(n) {
            let moved: std::collections::HashSet<_> = xs.iter().map(|x| x.relabel(&perm)).collect();
            assert_eq!(moved, set);
            for a in xs.iter().take(8) {
                for b in &xs {
                    assert_eq!(leq(a, b), leq(&a.relabel(&perm), &b.relabel(&perm)));
                }
            }
        }
    }
}

#[test]
fn census_rows() {
    let poset = enumerate_chains(A, 3).unwrap();
    let rows: Vec<ChainRecord> = poset.chains().map(|c| ChainRecord::new(&c, 1)).collect();
    assert_eq!(rows[0].chain, "{}");
    assert_eq!(rows[0].contribution, "1");
    let top = rows.iter().find(|r| r.chain == "{(1,2,3)}").unwrap();
    assert_eq!((top.jumps.as_str(), top.contribution.as_str()), ("2", "q"));
}
