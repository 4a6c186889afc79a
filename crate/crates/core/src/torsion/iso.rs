use num_bigint::BigInt;
use num_traits::Zero;

use super::group::{Element, FiniteAbelianGroup};
use super::quadratic::mod_u64;
use crate::error::{Error, Result};
use crate::exact::{solve_congruences, IntMatrix, QmodZ};

/// An isomorphism `T + (Q/Z)^s -> T' + (Q/Z)^s` of the triangular shape
/// `(t, v) -> (A t, M t + K v)` with `A` integral, `M` a Q/Z matrix and `K` in `GL_s(Z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupIso {
    source: FiniteAbelianGroup,
    target: FiniteAbelianGroup,
    matrix: IntMatrix,
    kernel_matrix: IntMatrix,
    mixing: Vec<Vec<QmodZ>>,
}

impl GroupIso {
    /// Validates well-definedness and invertibility. Entries of `matrix` are reduced modulo the
    /// target orders.
    pub fn new(
        source: FiniteAbelianGroup,
        target: FiniteAbelianGroup,
        matrix: IntMatrix,
        kernel_matrix: IntMatrix,
        mixing: Vec<Vec<QmodZ>>,
    ) -> Result<Self> {
        let (k, k2) = (source.rank(), target.rank());
        if matrix.rows() != k2 || matrix.cols() != k {
            return Err(Error::InvalidIso(format!(
                "torsion matrix is {}x{}, expected {k2}x{k}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let s = kernel_matrix.rows();
        if kernel_matrix.cols() != s {
            return Err(Error::InvalidIso("kernel matrix is not square".into()));
        }
        if mixing.len() != s || mixing.iter().any(|row| row.len() != k) {
            return Err(Error::InvalidIso(format!("mixing matrix must be {s}x{k}")));
        }
        let mut reduced = IntMatrix::zeros(k2, k);
        for i in 0..k2 {
            for j in 0..k {
                reduced.set(i, j, BigInt::from(mod_u64(matrix.get(i, j), target.orders()[i])));
            }
        }
        for (j, &n) in source.orders().iter().enumerate() {
            for (i, &m) in target.orders().iter().enumerate() {
                if (reduced.get(i, j) * n) % m != BigInt::zero() {
                    return Err(Error::InvalidIso(format!(
                        "image of generator {j} (order {n}) has component of order not dividing {n}"
                    )));
                }
            }
            for row in &mixing {
                if !row[j].mul_i64(n as i64).is_zero() {
                    return Err(Error::InvalidIso(format!(
                        "divisible component of generator {j} is not killed by {n}"
                    )));
                }
            }
        }
        if !kernel_matrix.is_unimodular() {
            return Err(Error::InvalidIso("kernel matrix is not in GL(Z)".into()));
        }
        let iso = GroupIso { source, target, matrix: reduced, kernel_matrix, mixing };
        iso.torsion_inverse()?;
        Ok(iso)
    }

    pub fn identity(group: &FiniteAbelianGroup, divisible_rank: usize) -> Self {
        let k = group.rank();
        GroupIso {
            source: group.clone(),
            target: group.clone(),
            matrix: IntMatrix::identity(k),
            kernel_matrix: IntMatrix::identity(divisible_rank),
            mixing: vec![vec![QmodZ::zero(); k]; divisible_rank],
        }
    }

    /// `x -> -x`.
    pub fn negation(group: &FiniteAbelianGroup, divisible_rank: usize) -> Self {
        let id = Self::identity(group, divisible_rank);
        let neg = |m: &IntMatrix| {
            let mut out = m.clone();
            for i in 0..m.rows() {
                out.negate_row(i);
            }
            out
        };
        Self::new(
            group.clone(),
            group.clone(),
            neg(&id.matrix),
            neg(&id.kernel_matrix),
            id.mixing,
        )
        .expect("negation is an automorphism")
    }

    pub fn source(&self) -> &FiniteAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteAbelianGroup {
        &self.target
    }

    pub fn divisible_rank(&self) -> usize {
        self.kernel_matrix.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn kernel_matrix(&self) -> &IntMatrix {
        &self.kernel_matrix
    }

    pub fn mixing(&self) -> &[Vec<QmodZ>] {
        &self.mixing
    }

    pub fn image_of_generator(&self, j: usize) -> Element {
        let torsion = (0..self.target.rank()).map(|i| mod_u64(self.matrix.get(i, j), self.target.orders()[i])).collect();
        let divisible = self.mixing.iter().map(|row| row[j].clone()).collect();
        Element { torsion, divisible }
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        if !self.source.contains(&x.torsion) || x.divisible.len() != self.divisible_rank() {
            return Err(Error::DimensionMismatch("element does not lie in the source group".into()));
        }
        let t: Vec<BigInt> = x.torsion.iter().map(|&c| BigInt::from(c)).collect();
        let image = self.matrix.mul_vec(&t);
        let torsion = image.iter().zip(self.target.orders()).map(|(v, &m)| mod_u64(v, m)).collect();
        let divisible = (0..self.divisible_rank())
            .map(|i| {
                let mut acc = QmodZ::zero();
                for (j, tj) in t.iter().enumerate() {
                    acc += &self.mixing[i][j].mul_int(tj);
                }
                for (j, v) in x.divisible.iter().enumerate() {
                    acc += &v.mul_int(self.kernel_matrix.get(i, j));
                }
                acc
            })
            .collect();
        Ok(Element { torsion, divisible })
    }

    /// `self o other`: first `other`, then `self`.
    pub fn compose(&self, other: &GroupIso) -> Result<GroupIso> {
        if other.target != self.source || other.divisible_rank() != self.divisible_rank() {
            return Err(Error::InvalidIso("composition of incompatible isomorphisms".into()));
        }
        let matrix = &self.matrix * &other.matrix;
        let kernel_matrix = &self.kernel_matrix * &other.kernel_matrix;
        let s = self.divisible_rank();
        let k = other.source.rank();
        let mixing = (0..s)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        let mut acc = QmodZ::zero();
                        for (l, m2) in self.mixing[i].iter().enumerate() {
                            acc += &m2.mul_int(other.matrix.get(l, j));
                        }
                        for l in 0..s {
                            acc += &other.mixing[l][j].mul_int(self.kernel_matrix.get(i, l));
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Ok(GroupIso {
            source: other.source.clone(),
            target: self.target.clone(),
            matrix: reduce_rows(matrix, &self.target),
            kernel_matrix,
            mixing,
        })
    }

    /// Preimages of the target generators, as a `k x k'` matrix.
    fn torsion_inverse(&self) -> Result<IntMatrix> {
        let n_src = self.source.order()?;
        let n_tgt = self.target.order()?;
        if n_src != n_tgt {
            return Err(Error::InvalidIso(format!("groups of orders {n_src} and {n_tgt} are not isomorphic")));
        }
        let (k, k2) = (self.source.rank(), self.target.rank());
        let moduli: Vec<BigInt> = self.target.orders().iter().map(|&m| BigInt::from(m)).collect();
        let mut inv = IntMatrix::zeros(k, k2);
        for i in 0..k2 {
            let mut e = vec![BigInt::zero(); k2];
            e[i] = BigInt::from(1);
            let x = solve_congruences(&self.matrix, &e, &moduli)?
                .ok_or_else(|| Error::InvalidIso(format!("target generator {i} has no preimage")))?;
            for (j, v) in x.iter().enumerate() {
                inv.set(j, i, BigInt::from(mod_u64(v, self.source.orders()[j])));
            }
        }
        Ok(inv)
    }

    pub fn inverse(&self) -> GroupIso {
        let b = self.torsion_inverse().expect("validated at construction");
        let k_inv = self.kernel_matrix.unimodular_inverse().expect("validated at construction");
        let s = self.divisible_rank();
        let k2 = self.target.rank();
        // -K^{-1} M B
        let mixing = (0..s)
            .map(|i| {
                (0..k2)
                    .map(|j| {
                        let mut acc = QmodZ::zero();
                        for l in 0..s {
                            let mut mb = QmodZ::zero();
                            for (c, m) in self.mixing[l].iter().enumerate() {
                                mb += &m.mul_int(b.get(c, j));
                            }
                            acc += &mb.mul_int(k_inv.get(i, l));
                        }
                        -acc
                    })
                    .collect()
            })
            .collect();
        GroupIso {
            source: self.target.clone(),
            target: self.source.clone(),
            matrix: b,
            kernel_matrix: k_inv,
            mixing,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
            && self.matrix == IntMatrix::identity(self.source.rank())
            && self.kernel_matrix == IntMatrix::identity(self.divisible_rank())
            && self.mixing.iter().flatten().all(QmodZ::is_zero)
    }
}

fn reduce_rows(m: IntMatrix, target: &FiniteAbelianGroup) -> IntMatrix {
    let mut out = m;
    for i in 0..out.rows() {
        for j in 0..out.cols() {
            let v = BigInt::from(mod_u64(out.get(i, j), target.orders()[i]));
            out.set(i, j, v);
        }
    }
    out
}
