//! Exhaustive reference procedures: refinements and pairings of small groups, and an
//! isomorphism search that tries every triangular automorphism shape within bounds.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exact::{IntMatrix, QmodZ};
use crate::torsion::{some_quadratic_over, FiniteAbelianGroup, GroupIso, StructuredQuadratic, TorsionBilinear};

/// Limits for [`brute_force_isomorphic_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_order: u64,
    /// Kernel matrices are searched among entries in `[-bound, bound]`.
    pub kernel_entry_bound: i64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { max_order: 256, kernel_entry_bound: 2 }
    }
}

/// Every refinement `q0 + chi` of `b`, characters in lexicographic order of their numerators.
pub fn enumerate_refinements(b: &TorsionBilinear, bound: u64) -> Result<Vec<StructuredQuadratic>> {
    let group = b.group();
    let size = group.order()?;
    if size > bound {
        return Err(Error::SizeBound { limit: bound, actual: size.to_string() });
    }
    let base = some_quadratic_over(b);
    let dual = FiniteAbelianGroup::new(group.orders().to_vec())?;
    dual.elements()
        .map(|c| {
            let chi: Vec<QmodZ> = c
                .iter()
                .zip(group.orders())
                .map(|(&x, &n)| QmodZ::from_frac(x as i64, n as i64))
                .collect();
            base.add_character(&chi)
        })
        .collect()
}

/// Every symmetric pairing on `group`: `b_ii` in `(1/n_i) Z/Z`, `b_ij` in `(1/gcd(n_i, n_j)) Z/Z`.
pub fn enumerate_pairings(group: &FiniteAbelianGroup) -> Vec<TorsionBilinear> {
    let orders = group.orders();
    let k = orders.len();
    let slots: Vec<(usize, usize, u64)> = (0..k)
        .flat_map(|i| (i..k).map(move |j| (i, j, orders[i].gcd(&orders[j]))))
        .collect();
    let mut out = Vec::new();
    let mut digits = vec![0u64; slots.len()];
    loop {
        let mut matrix = vec![vec![QmodZ::zero(); k]; k];
        for (&(i, j, m), &d) in slots.iter().zip(&digits) {
            let v = QmodZ::from_frac(d as i64, m as i64);
            matrix[i][j] = v.clone();
            matrix[j][i] = v;
        }
        out.push(TorsionBilinear::new(group.clone(), matrix).expect("entries respect the orders"));
        let mut pos = 0;
        loop {
            if pos == slots.len() {
                return out;
            }
            digits[pos] += 1;
            if digits[pos] < slots[pos].2 {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

pub fn brute_force_isomorphic(q: &StructuredQuadratic, q2: &StructuredQuadratic) -> Result<Option<GroupIso>> {
    brute_force_isomorphic_with(q, q2, OracleConfig::default())
}

/// First iso `(t, v) -> (A t, M t + K v)` in enumeration order with `psi^* q2 = q` pointwise on
/// the torsion part and `K^T w2 = w`; `K` ranges over bounded unimodular matrices and `M` over
/// all matrices with entries in `(1/n_j) Z/Z`.
pub fn brute_force_isomorphic_with(
    q: &StructuredQuadratic,
    q2: &StructuredQuadratic,
    config: OracleConfig,
) -> Result<Option<GroupIso>> {
    let s = q.divisible_rank();
    if s != q2.divisible_rank() {
        return Ok(None);
    }
    let src = Side::new(q, config.max_order)?;
    let dst = Side::new(q2, config.max_order)?;
    if src.size != dst.size {
        return Ok(None);
    }
    let Some(kernel) = find_kernel_matrix(q.kernel_hom(), q2.kernel_hom(), config.kernel_entry_bound) else {
        return Ok(None);
    };
    let den = src.den.lcm(&dst.den);
    let (fa, fb) = (den / src.den, den / dst.den);
    let lhs: Vec<u64> = src.values.iter().map(|v| v * fa).collect();
    let rhs: Vec<u64> = dst.values.iter().map(|v| v * fb).collect();

    let k = src.orders.len();
    let w2 = q2.kernel_hom();
    let mut seen = std::collections::HashSet::new();
    for m in mixing_matrices(&src.orders, s) {
        // mu_j = sum_i w2_i m_ij / n_j
        let mu: Vec<u64> = (0..k)
            .map(|j| {
                let n = src.orders[j];
                let total: BigInt = (0..s).map(|i| &w2[i] * BigInt::from(m[i][j])).sum();
                crate::torsion::mod_u64(&total, n) * (den / n)
            })
            .collect();
        if !seen.insert(mu.clone()) {
            continue;
        }
        let mut images = Vec::with_capacity(k);
        if let Some(images) = search_images(&src, &dst, &lhs, &rhs, &mu, den, &mut images) {
            let mut matrix = IntMatrix::zeros(dst.orders.len(), k);
            for (j, &y) in images.iter().enumerate() {
                for (i, &c) in dst.coords(y).iter().enumerate() {
                    matrix.set(i, j, BigInt::from(c));
                }
            }
            let mixing = m
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(&src.orders)
                        .map(|(&x, &n)| QmodZ::from_frac(x as i64, n as i64))
                        .collect()
                })
                .collect();
            let psi = GroupIso::new(q.group().clone(), q2.group().clone(), matrix, kernel, mixing)?;
            return Ok(Some(psi));
        }
    }
    Ok(None)
}

struct Side {
    orders: Vec<u64>,
    size: usize,
    den: u64,
    values: Vec<u64>,
}

impl Side {
    fn new(q: &StructuredQuadratic, bound: u64) -> Result<Self> {
        let group = q.group();
        let size = group.order()?;
        if size > bound {
            return Err(Error::SizeBound { limit: bound, actual: size.to_string() });
        }
        let den = 2 * group.exponent();
        let values = group
            .elements()
            .map(|x| {
                q.evaluate_torsion(&x)
                    .scaled_to(den)
                    .ok_or_else(|| Error::Internal(format!("value outside (1/{den})Z/Z")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Side { orders: group.orders().to_vec(), size: size as usize, den, values })
    }

    fn coords(&self, mut x: usize) -> Vec<u64> {
        self.orders
            .iter()
            .map(|&n| {
                let c = (x % n as usize) as u64;
                x /= n as usize;
                c
            })
            .collect()
    }

    fn index(&self, c: &[u64]) -> usize {
        let mut idx = 0;
        let mut stride = 1;
        for (&x, &n) in c.iter().zip(&self.orders) {
            idx += (x % n) as usize * stride;
            stride *= n as usize;
        }
        idx
    }

    fn add(&self, x: usize, y: usize) -> usize {
        let (a, b) = (self.coords(x), self.coords(y));
        let sum: Vec<u64> = a.iter().zip(&b).map(|(p, q)| p + q).collect();
        self.index(&sum)
    }

    fn order_of(&self, x: usize) -> u64 {
        let mut m = x;
        let mut n = 1;
        while m != 0 {
            m = self.add(m, x);
            n += 1;
        }
        n
    }
}

/// Generator images `y_j` of exact order `n_j`, matching values on generators and their pairwise
/// sums, then a bijectivity and full pointwise check.
fn search_images(
    src: &Side,
    dst: &Side,
    lhs: &[u64],
    rhs: &[u64],
    mu: &[u64],
    den: u64,
    images: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    let k = src.orders.len();
    let j = images.len();
    if j == k {
        return leaf_matches(src, dst, lhs, rhs, mu, den, images).then(|| images.clone());
    }
    let n = src.orders[j];
    let mut unit = vec![0u64; k];
    unit[j] = 1;
    let ej = src.index(&unit);
    for y in 0..dst.size {
        if dst.order_of(y) != n || lhs[ej] != (rhs[y] + mu[j]) % den {
            continue;
        }
        let pairs_ok = images.iter().enumerate().all(|(i, &yi)| {
            let mut c = vec![0u64; k];
            c[i] = 1;
            c[j] = 1;
            lhs[src.index(&c)] == (rhs[dst.add(yi, y)] + mu[i] + mu[j]) % den
        });
        if !pairs_ok {
            continue;
        }
        images.push(y);
        if let Some(found) = search_images(src, dst, lhs, rhs, mu, den, images) {
            return Some(found);
        }
        images.pop();
    }
    None
}

fn leaf_matches(src: &Side, dst: &Side, lhs: &[u64], rhs: &[u64], mu: &[u64], den: u64, images: &[usize]) -> bool {
    let mut hit = vec![false; dst.size];
    for x in 0..src.size {
        let c = src.coords(x);
        let mut y = 0;
        let mut shift = 0u64;
        for (j, &cj) in c.iter().enumerate() {
            for _ in 0..cj {
                y = dst.add(y, images[j]);
            }
            shift = (shift + cj * mu[j]) % den;
        }
        if hit[y] || lhs[x] != (rhs[y] + shift) % den {
            return false;
        }
        hit[y] = true;
    }
    true
}

/// All `s x k` integer matrices with column `j` entries in `[0, n_j)`.
fn mixing_matrices(orders: &[u64], s: usize) -> Vec<Vec<Vec<u64>>> {
    let k = orders.len();
    let mut out = vec![vec![vec![0u64; k]; s]];
    for i in 0..s {
        for j in 0..k {
            out = out
                .into_iter()
                .flat_map(|m| {
                    (0..orders[j]).map(move |x| {
                        let mut m = m.clone();
                        m[i][j] = x;
                        m
                    })
                })
                .collect();
        }
    }
    out
}

/// First unimodular `K` with entries in `[-bound, bound]` and `K^T w2 = w`.
fn find_kernel_matrix(w: &[BigInt], w2: &[BigInt], bound: i64) -> Option<IntMatrix> {
    let s = w.len();
    if s == 0 {
        return Some(IntMatrix::identity(0));
    }
    let width = (2 * bound + 1) as u64;
    let total = width.checked_pow((s * s) as u32)?;
    (0..total).find_map(|mut code| {
        let entries: Vec<i64> = (0..s * s)
            .map(|_| {
                let e = (code % width) as i64 - bound;
                code /= width;
                e
            })
            .collect();
        let rows: Vec<Vec<i64>> = entries.chunks(s).map(|r| r.to_vec()).collect();
        let k = IntMatrix::from_rows(&rows);
        (k.is_unimodular() && k.transpose().mul_vec(w2) == w).then_some(k)
    })
}
