//! Cyclic-subgroup counting against exhaustive enumeration in `Z/p^a1 × … × Z/p^ak`.

use std::collections::HashSet;

use qga_core::abelian::{count_cyclic_subgroups, count_elements_of_order, perlis_walker};
use qga_core::arith::{pow, totient};
use qga_core::AbelianPType;

/// All partitions of `n` as nondecreasing exponent vectors.
fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, min: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in min..=rest {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 1, &mut Vec::new(), &mut out);
    out
}

fn types_up_to(p: u64, max_log: u32) -> impl Iterator<Item = AbelianPType> {
    (0..=max_log)
        .flat_map(partitions)
        .map(move |e| AbelianPType::new(p, e).unwrap())
}

/// Element orders and cyclic subgroups by brute force. A cyclic subgroup is
/// keyed by the least encoded generator among its generators.
struct Census {
    elements: Vec<u64>,
    cyclic: Vec<u64>,
}

fn census(p: u64, exps: &[u32]) -> Census {
    let moduli: Vec<u64> = exps.iter().map(|&e| pow(p, e)).collect();
    let order: u64 = moduli.iter().product();
    let top = exps.iter().copied().max().unwrap_or(0) as usize;
    let encode = |v: &[u64]| {
        v.iter()
            .zip(&moduli)
            .fold(0u64, |acc, (&x, &m)| acc * m + x)
    };
    let decode = |mut idx: u64| {
        let mut v = vec![0u64; moduli.len()];
        for (slot, &m) in v.iter_mut().zip(&moduli).rev() {
            *slot = idx % m;
            idx /= m;
        }
        v
    };
    let mut elements = vec![0u64; top + 1];
    let mut keys: Vec<HashSet<u64>> = vec![HashSet::new(); top + 1];
    for idx in 0..order {
        let x = decode(idx);
        let mut y = x.clone();
        let mut k = 1u64;
        let mut best = idx;
        while y.iter().any(|&c| c != 0) {
            if !k.is_multiple_of(p) {
                best = best.min(encode(&y));
            }
            for ((c, &d), &m) in y.iter_mut().zip(&x).zip(&moduli) {
                *c = (*c + d) % m;
            }
            k += 1;
        }
        let alpha = k.ilog(p) as usize;
        elements[alpha] += 1;
        keys[alpha].insert(best);
    }
    Census {
        elements,
        cyclic: keys.iter().map(|s| s.len() as u64).collect(),
    }
}

#[test]
fn lemma_matches_enumeration_up_to_p6() {
    for p in [2u64, 3, 5] {
        for t in types_up_to(p, 6) {
            let c = census(p, t.exponents());
            for alpha in 0..c.elements.len() as u32 {
                assert_eq!(
                    count_elements_of_order(&t, alpha),
                    c.elements[alpha as usize],
                    "elements of order p^{alpha} in {t}"
                );
                if alpha > 0 {
                    assert_eq!(
                        count_cyclic_subgroups(&t, alpha),
                        c.cyclic[alpha as usize],
                        "cyclic subgroups of order p^{alpha} in {t}"
                    );
                }
            }
            let above = t.exponent_log() + 1;
            assert_eq!(count_cyclic_subgroups(&t, above), 0);
        }
    }
}

#[test]
fn element_counts_sum_to_order_up_to_p8() {
    for p in [2u64, 3, 5] {
        for t in types_up_to(p, 8) {
            let total: u64 = (0..=t.exponent_log())
                .map(|a| count_elements_of_order(&t, a))
                .sum();
            assert_eq!(total, t.order(), "{t}");
        }
    }
}

#[test]
fn h_agrees_at_interval_boundaries() {
    for p in [2u64, 3, 5] {
        for t in types_up_to(p, 6) {
            for alpha in 1..=t.exponent_log() {
                let values: Vec<u128> = (1..=t.rank())
                    .filter_map(|j| t.h_with_index(alpha, j))
                    .collect();
                assert!(!values.is_empty(), "{t} alpha={alpha}");
                assert!(
                    values.windows(2).all(|w| w[0] == w[1]),
                    "{t} alpha={alpha}: {values:?}"
                );
            }
        }
    }
}

#[test]
fn perlis_walker_dimension_and_keys() {
    for p in [2u64, 3, 5, 7] {
        for t in types_up_to(p, 6) {
            let d = perlis_walker(&t);
            assert_eq!(d.dimension(), t.order(), "{t}");
            for c in d.components() {
                assert_eq!(c.matrix_size, 1);
                let lambda = c.conductor.ilog(p);
                assert_eq!(
                    c.multiplicity * totient(c.conductor),
                    count_elements_of_order(&t, lambda)
                );
            }
        }
    }
}

#[test]
fn spot_values() {
    let t = AbelianPType::new(3, [1, 2]).unwrap();
    assert_eq!(count_cyclic_subgroups(&t, 1), 4);
    assert_eq!(count_cyclic_subgroups(&t, 2), 3);
    assert_eq!(count_elements_of_order(&t, 2), 18);
    assert_eq!(
        count_elements_of_order(&AbelianPType::new(3, [1, 1]).unwrap(), 1),
        8
    );
    let c = AbelianPType::cyclic(5, 4).unwrap();
    assert!((1..=4).all(|a| count_cyclic_subgroups(&c, a) == 1));
}
