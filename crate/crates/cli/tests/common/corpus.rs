//! Deterministic corpora for the acceptance suite.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use torquad_core::classify::{cyclic_decompositions, enumerate_pairings, enumerate_refinements};
use torquad_core::lattice::{BilinearLattice, CharacteristicForm, Triple};
use torquad_core::torsion::{FiniteAbelianGroup, GroupIso, StructuredQuadratic};
use torquad_core::{IntMatrix, QmodZ};

/// Every refinement of every pairing on every cyclic decomposition of order at most `n`.
pub fn finite_corpus(n: u64) -> Vec<StructuredQuadratic> {
    let mut out = Vec::new();
    for order in 1..=n {
        for group in cyclic_decompositions(order) {
            for b in enumerate_pairings(&group) {
                out.extend(enumerate_refinements(&b, order).expect("within bound"));
            }
        }
    }
    out
}

pub fn symmetric(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = rng.gen_range(-bound..=bound);
            g[i][j] = v;
            g[j][i] = v;
        }
    }
    g
}

/// A characteristic form with coefficients in `[-bound, bound]`.
pub fn random_char(rng: &mut ChaCha8Rng, gram: &[Vec<i64>], bound: i64) -> Vec<i64> {
    (0..gram.len())
        .map(|i| {
            let parity = gram[i][i].rem_euclid(2);
            let choices: Vec<i64> = (-bound..=bound).filter(|c| c.rem_euclid(2) == parity).collect();
            *choices.choose(rng).expect("nonempty range")
        })
        .collect()
}

pub fn random_triple(rng: &mut ChaCha8Rng, max_rank: usize, bound: i64) -> Triple {
    let n = rng.gen_range(1..=max_rank);
    let gram = symmetric(rng, n, bound);
    let c = random_char(rng, &gram, bound);
    Triple::from_i64(&gram, &c).expect("valid triple")
}

pub fn triple_from(lattice: &BilinearLattice, c: &[BigInt]) -> Triple {
    let char = CharacteristicForm::new(lattice, c.to_vec()).expect("characteristic");
    Triple { lattice: lattice.clone(), char }
}

/// A random triangular automorphism of `group + (Q/Z)^s` with kernel entries in `[-1, 1]`.
pub fn random_automorphism(rng: &mut ChaCha8Rng, group: &FiniteAbelianGroup, s: usize) -> GroupIso {
    let k = group.rank();
    let orders = group.orders();
    loop {
        let mut a = IntMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                a.set(i, j, BigInt::from(rng.gen_range(0..orders[i])));
            }
        }
        let kernel = loop {
            let rows: Vec<Vec<i64>> = (0..s).map(|_| (0..s).map(|_| rng.gen_range(-1..=1)).collect()).collect();
            let m = if s == 0 { IntMatrix::identity(0) } else { IntMatrix::from_rows(&rows) };
            if m.is_unimodular() {
                break m;
            }
        };
        let mixing = (0..s)
            .map(|_| {
                (0..k)
                    .map(|j| QmodZ::from_frac(rng.gen_range(0..orders[j]) as i64, orders[j] as i64))
                    .collect()
            })
            .collect();
        if let Ok(psi) = GroupIso::new(group.clone(), group.clone(), a, kernel, mixing) {
            return psi;
        }
    }
}
