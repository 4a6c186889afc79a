//! Smith normal form, column echelon reduction and integer linear systems.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal, `d_1 | d_2 | ...`, `d_i >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|d| !d.is_zero()).count()
    }
}

/// Position of the smallest nonzero entry (by absolute value) in the block `[t.., t..]`.
/// Ties go to the lowest row, then the lowest column.
fn smallest_entry(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a.get(bi, bj).abs() <= v.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

pub fn smith_normal_form(a: &IntMatrix) -> Smith {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    'outer: for t in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = smallest_entry(&d, t) else {
                break 'outer;
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = d.get(t, t).clone();
            let mut remainder = false;
            for i in t + 1..m {
                let q = d.get(i, t) / &pivot;
                if !q.is_zero() {
                    d.add_row_multiple(i, t, &-&q);
                    u.add_row_multiple(i, t, &-&q);
                }
                remainder |= !d.get(i, t).is_zero();
            }
            for j in t + 1..n {
                let q = d.get(t, j) / &pivot;
                if !q.is_zero() {
                    d.add_col_multiple(j, t, &-&q);
                    v.add_col_multiple(j, t, &-&q);
                }
                remainder |= !d.get(t, j).is_zero();
            }
            if remainder {
                continue;
            }

            let bad_row = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !d.get(i, j).mod_floor(&pivot).is_zero())
            });
            match bad_row {
                Some(i) => {
                    d.add_row_multiple(t, i, &BigInt::from(1));
                    u.add_row_multiple(t, i, &BigInt::from(1));
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    Smith { u, d, v }
}

/// Basis (as columns) of the integer kernel `{x : A x = 0}`; it extends to a basis of `Z^n`.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let s = smith_normal_form(a);
    let r = s.rank();
    s.v.select_columns(r..a.cols())
}

/// Solves `A x = b` over Z. Deterministic: free coordinates of the Smith solution are zero.
pub fn solve_integer_system(a: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side has length {}, expected {}",
            b.len(),
            a.rows()
        )));
    }
    let s = smith_normal_form(a);
    let y = s.u.mul_vec(b);
    let diag = s.diagonal();
    let mut z = vec![BigInt::zero(); a.cols()];
    for (i, yi) in y.iter().enumerate() {
        match diag.get(i) {
            Some(di) if !di.is_zero() => {
                let (q, r) = yi.div_rem(di);
                if !r.is_zero() {
                    return Ok(None);
                }
                z[i] = q;
            }
            _ => {
                if !yi.is_zero() {
                    return Ok(None);
                }
            }
        }
    }
    Ok(Some(s.v.mul_vec(&z)))
}

/// Solves `(A x)_i = b_i (mod m_i)` where a modulus of zero means exact equality.
pub(crate) fn solve_mixed_system(
    a: &IntMatrix,
    b: &[BigInt],
    moduli: &[BigInt],
) -> Result<Option<Vec<BigInt>>> {
    if b.len() != a.rows() || moduli.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "{} equations but {} right-hand sides and {} moduli",
            a.rows(),
            b.len(),
            moduli.len()
        )));
    }
    let slack: Vec<usize> = (0..a.rows()).filter(|&i| !moduli[i].is_zero()).collect();
    let mut ext = IntMatrix::zeros(a.rows(), slack.len());
    for (k, &i) in slack.iter().enumerate() {
        ext.set(i, k, moduli[i].clone());
    }
    let full = a.hstack(&ext)?;
    Ok(solve_integer_system(&full, b)?.map(|x| x[..a.cols()].to_vec()))
}

/// Solves the congruence system `(A x)_i = b_i (mod moduli_i)`.
pub fn solve_congruences(
    a: &IntMatrix,
    b: &[BigInt],
    moduli: &[BigInt],
) -> Result<Option<Vec<BigInt>>> {
    if let Some(bad) = moduli.iter().find(|m| !m.is_positive()) {
        return Err(Error::Precondition(format!("modulus {bad} is not positive")));
    }
    solve_mixed_system(a, b, moduli)
}

/// Column echelon form of a lattice generated by the columns of a matrix, used to pick
/// canonical coset representatives.
#[derive(Clone, Debug)]
pub struct ColumnLattice {
    basis: IntMatrix,
    pivots: Vec<(usize, usize)>,
}

impl ColumnLattice {
    pub fn new(generators: &IntMatrix) -> Self {
        let mut h = generators.clone();
        let (n, m) = (h.rows(), h.cols());
        let mut c = 0;
        let mut pivots = Vec::new();
        for i in 0..n {
            if c == m {
                break;
            }
            loop {
                let best = (c..m)
                    .filter(|&j| !h.get(i, j).is_zero())
                    .min_by(|&x, &y| h.get(i, x).abs().cmp(&h.get(i, y).abs()));
                let Some(j0) = best else { break };
                h.swap_cols(c, j0);
                let p = h.get(i, c).clone();
                for j in c + 1..m {
                    let q = h.get(i, j).div_floor(&p);
                    h.add_col_multiple(j, c, &-q);
                }
                if (c + 1..m).all(|j| h.get(i, j).is_zero()) {
                    if h.get(i, c).is_negative() {
                        h.negate_col(c);
                    }
                    pivots.push((i, c));
                    c += 1;
                    break;
                }
            }
        }
        ColumnLattice { basis: h.select_columns(0..c), pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Echelon basis, one column per pivot.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Canonical representative of `v + L`.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut out = v.to_vec();
        for &(row, col) in &self.pivots {
            let p = self.basis.get(row, col);
            let q = out[row].div_floor(p);
            if !q.is_zero() {
                for (i, o) in out.iter_mut().enumerate() {
                    *o -= &q * self.basis.get(i, col);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }
}
