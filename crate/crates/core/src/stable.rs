//! Stable equivalence of triples: orthogonal sums with copies of `(Z, +-1, 1)`.
//!
//! Two triples are stably equivalent exactly when their discriminant quadratic functions are
//! isomorphic, so the decision reduces to [`decide_isomorphism`]. The stabilizers reported in a
//! positive certificate balance rank and signature.

use num_bigint::BigInt;

use crate::classify::{decide_isomorphism, Bounds, IsoDecision, Obstruction};
use crate::discriminant::discriminant_quadratic;
use crate::error::{Error, Result};
use crate::exact::IntMatrix;
use crate::lattice::{doubled_image, orthogonal_sum_triple, BilinearLattice, CharacteristicForm, Triple};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizationCertificate {
    pub verdict: bool,
    pub left_signs: Vec<i8>,
    pub right_signs: Vec<i8>,
    /// The separating invariant when the verdict is negative.
    pub reason: Option<Obstruction>,
}

/// `t + sum_i (Z, signs[i], 1)`.
pub fn stabilize(t: &Triple, signs: &[i8]) -> Triple {
    let diag: Vec<BigInt> = signs.iter().map(|&s| BigInt::from(s.signum())).collect();
    let lattice = BilinearLattice::new(IntMatrix::diagonal(&diag)).expect("diagonal is symmetric");
    let char = CharacteristicForm::new(&lattice, vec![BigInt::from(1); signs.len()]).expect("odd diagonal");
    orthogonal_sum_triple(t, &Triple { lattice, char })
}

pub fn stably_equivalent(t: &Triple, t2: &Triple) -> Result<StabilizationCertificate> {
    stably_equivalent_with(t, t2, Bounds::default())
}

pub fn stably_equivalent_with(t: &Triple, t2: &Triple, bounds: Bounds) -> Result<StabilizationCertificate> {
    let q = discriminant_quadratic(t)?;
    let q2 = discriminant_quadratic(t2)?;
    match decide_isomorphism(&q, &q2, bounds)? {
        IsoDecision::NotIsomorphic(ob) => Ok(StabilizationCertificate {
            verdict: false,
            left_signs: Vec::new(),
            right_signs: Vec::new(),
            reason: Some(ob),
        }),
        IsoDecision::Isomorphic(_) => {
            let (p, n, _) = t.lattice.signature();
            let (p2, n2, _) = t2.lattice.signature();
            let signs = |plus: usize, minus: usize| {
                let mut v = vec![1i8; plus];
                v.extend(std::iter::repeat_n(-1i8, minus));
                v
            };
            Ok(StabilizationCertificate {
                verdict: true,
                left_signs: signs(p2.saturating_sub(p), n2.saturating_sub(n)),
                right_signs: signs(p.saturating_sub(p2), n.saturating_sub(n2)),
                reason: None,
            })
        }
    }
}

/// Whether `x -> P x` is an isomorphism from `t` to `t2`: `P^T G2 P = G` and
/// `c - P^T c2` lies in `2 G Z^n`.
pub fn verify_triple_isomorphism(t: &Triple, t2: &Triple, p: &IntMatrix) -> Result<bool> {
    let n = t.rank();
    if t2.rank() != n || p.rows() != n || p.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix between lattices of rank {n} and {}",
            p.rows(),
            p.cols(),
            t2.rank()
        )));
    }
    if !p.is_unimodular() {
        return Ok(false);
    }
    let pulled = &(&p.transpose() * t2.lattice.gram()) * p;
    if &pulled != t.lattice.gram() {
        return Ok(false);
    }
    Ok(chars_match(t, t2, p))
}

fn chars_match(t: &Triple, t2: &Triple, p: &IntMatrix) -> bool {
    let pc = p.transpose().mul_vec(t2.char.coeffs());
    let diff: Vec<BigInt> = t.char.coeffs().iter().zip(&pc).map(|(a, b)| a - b).collect();
    doubled_image(&t.lattice).contains(&diff)
}

/// First triple isomorphism `P` with entries in `[-bound, bound]`, searched column by column.
pub fn find_triple_isomorphism(t: &Triple, t2: &Triple, bound: i64) -> Option<IntMatrix> {
    let n = t.rank();
    if t2.rank() != n {
        return None;
    }
    let g = t.lattice.gram();
    let g2 = t2.lattice.gram();
    let width = (2 * bound + 1) as usize;
    let vectors: Vec<Vec<BigInt>> = (0..width.pow(n as u32))
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let e = (code % width) as i64 - bound;
                    code /= width;
                    BigInt::from(e)
                })
                .collect()
        })
        .collect();
    let images: Vec<Vec<BigInt>> = vectors.iter().map(|v| g2.mul_vec(v)).collect();
    let dot = |a: &[BigInt], b: &[BigInt]| a.iter().zip(b).map(|(x, y)| x * y).sum::<BigInt>();
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|j| (0..vectors.len()).filter(|&v| dot(&vectors[v], &images[v]) == *g.get(j, j)).collect())
        .collect();

    fn go(
        j: usize,
        chosen: &mut Vec<usize>,
        candidates: &[Vec<usize>],
        accept: &mut dyn FnMut(&[usize]) -> bool,
        compatible: &dyn Fn(&[usize], usize, usize) -> bool,
    ) -> bool {
        if j == candidates.len() {
            return accept(chosen);
        }
        for &v in &candidates[j] {
            if !compatible(chosen, j, v) {
                continue;
            }
            chosen.push(v);
            if go(j + 1, chosen, candidates, accept, compatible) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    let compatible = |chosen: &[usize], j: usize, v: usize| {
        chosen.iter().enumerate().all(|(i, &u)| dot(&vectors[u], &images[v]) == *g.get(i, j))
    };
    let mut found = None;
    let mut accept = |chosen: &[usize]| {
        let columns: Vec<Vec<BigInt>> = chosen.iter().map(|&v| vectors[v].clone()).collect();
        let p = IntMatrix::from_columns(n, &columns).expect("square");
        if p.is_unimodular() && chars_match(t, t2, &p) {
            found = Some(p);
            true
        } else {
            false
        }
    };
    go(0, &mut Vec::with_capacity(n), &candidates, &mut accept, &compatible);
    found
}
