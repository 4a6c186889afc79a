use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::group::{Element, FiniteAbelianGroup};
use super::iso::GroupIso;
use crate::error::{Error, Result};
use crate::exact::{
    content, integer_kernel, smith_normal_form, ColumnLattice, IntMatrix, QmodZ, Rational,
};

/// A symmetric Q/Z-valued pairing on a finite abelian group, given on generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorsionBilinear {
    group: FiniteAbelianGroup,
    matrix: Vec<Vec<QmodZ>>,
}

impl TorsionBilinear {
    pub fn new(group: FiniteAbelianGroup, matrix: Vec<Vec<QmodZ>>) -> Result<Self> {
        let k = group.rank();
        if matrix.len() != k || matrix.iter().any(|row| row.len() != k) {
            return Err(Error::DimensionMismatch(format!(
                "pairing matrix must be {k}x{k} for a group with {k} generators"
            )));
        }
        for i in 0..k {
            for j in 0..k {
                if matrix[i][j] != matrix[j][i] {
                    return Err(Error::InvalidPairing(format!("entries ({i},{j}) and ({j},{i}) differ")));
                }
                if !matrix[i][j].mul_i64(group.orders()[i] as i64).is_zero() {
                    return Err(Error::InvalidPairing(format!(
                        "entry ({i},{j}) = {} is not killed by the order {} of generator {i}",
                        matrix[i][j],
                        group.orders()[i]
                    )));
                }
            }
        }
        Ok(TorsionBilinear { group, matrix })
    }

    pub fn zero(group: FiniteAbelianGroup) -> Self {
        let k = group.rank();
        TorsionBilinear { group, matrix: vec![vec![QmodZ::zero(); k]; k] }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn matrix(&self) -> &[Vec<QmodZ>] {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> &QmodZ {
        &self.matrix[i][j]
    }

    /// `b(x, y)` on torsion coordinates.
    pub fn pair(&self, x: &[u64], y: &[u64]) -> QmodZ {
        let mut acc = Rational::zero();
        for (i, &xi) in x.iter().enumerate().filter(|(_, &c)| c != 0) {
            for (j, &yj) in y.iter().enumerate().filter(|(_, &c)| c != 0) {
                acc += self.matrix[i][j].value() * Rational::from_integer(BigInt::from(xi) * yj);
            }
        }
        QmodZ::new(acc)
    }

    pub fn direct_sum(&self, other: &TorsionBilinear) -> TorsionBilinear {
        let (k1, k2) = (self.group.rank(), other.group.rank());
        let mut matrix = vec![vec![QmodZ::zero(); k1 + k2]; k1 + k2];
        for i in 0..k1 {
            for j in 0..k1 {
                matrix[i][j] = self.matrix[i][j].clone();
            }
        }
        for i in 0..k2 {
            for j in 0..k2 {
                matrix[k1 + i][k1 + j] = other.matrix[i][j].clone();
            }
        }
        TorsionBilinear { group: self.group.direct_sum(&other.group), matrix }
    }
}

/// A quadratic function on `T + (Q/Z)^s`: values on the torsion generators, the pairing on
/// `T`, and an integer vector `w` acting on the divisible part by `v -> w.v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StructuredQuadratic {
    pairing: TorsionBilinear,
    gen_values: Vec<QmodZ>,
    kernel_hom: Vec<BigInt>,
}

impl StructuredQuadratic {
    pub fn new(pairing: TorsionBilinear, gen_values: Vec<QmodZ>, kernel_hom: Vec<BigInt>) -> Result<Self> {
        let k = pairing.group.rank();
        if gen_values.len() != k {
            return Err(Error::DimensionMismatch(format!(
                "{} generator values for a group with {k} generators",
                gen_values.len()
            )));
        }
        for (i, q) in gen_values.iter().enumerate() {
            let n = pairing.group.orders()[i];
            let total = q.mul_i64(n as i64) + pairing.matrix[i][i].mul_int(&binom2(n));
            if !total.is_zero() {
                return Err(Error::InconsistentGenerator {
                    index: i,
                    detail: format!("q(n g) should vanish for n = {n}, got {total}"),
                });
            }
        }
        Ok(StructuredQuadratic { pairing, gen_values, kernel_hom })
    }

    /// A function on a finite group (no divisible part).
    pub fn finite(pairing: TorsionBilinear, gen_values: Vec<QmodZ>) -> Result<Self> {
        Self::new(pairing, gen_values, Vec::new())
    }

    pub fn trivial() -> Self {
        StructuredQuadratic {
            pairing: TorsionBilinear::zero(FiniteAbelianGroup::trivial()),
            gen_values: Vec::new(),
            kernel_hom: Vec::new(),
        }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.pairing.group
    }

    pub fn pairing(&self) -> &TorsionBilinear {
        &self.pairing
    }

    pub fn gen_values(&self) -> &[QmodZ] {
        &self.gen_values
    }

    pub fn divisible_rank(&self) -> usize {
        self.kernel_hom.len()
    }

    pub fn kernel_hom(&self) -> &[BigInt] {
        &self.kernel_hom
    }

    /// gcd of the kernel homomorphism, the invariant of `w` under `GL_s(Z)`.
    pub fn kernel_content(&self) -> BigInt {
        content(&self.kernel_hom)
    }

    /// The same function with the divisible part dropped.
    pub fn torsion_part(&self) -> StructuredQuadratic {
        StructuredQuadratic {
            pairing: self.pairing.clone(),
            gen_values: self.gen_values.clone(),
            kernel_hom: Vec::new(),
        }
    }

    pub fn with_kernel_hom(&self, kernel_hom: Vec<BigInt>) -> StructuredQuadratic {
        StructuredQuadratic { kernel_hom, ..self.clone() }
    }

    fn check_element(&self, x: &Element) -> Result<()> {
        if !self.group().contains(&x.torsion) || x.divisible.len() != self.divisible_rank() {
            return Err(Error::DimensionMismatch(format!(
                "element with {} torsion and {} divisible coordinates does not lie in {:?} + (Q/Z)^{}",
                x.torsion.len(),
                x.divisible.len(),
                self.group().orders(),
                self.divisible_rank()
            )));
        }
        Ok(())
    }

    pub fn evaluate(&self, x: &Element) -> Result<QmodZ> {
        self.check_element(x)?;
        let mut acc = self.evaluate_torsion(&x.torsion);
        for (w, v) in self.kernel_hom.iter().zip(&x.divisible) {
            acc += &v.mul_int(w);
        }
        Ok(acc)
    }

    /// `q` on the torsion part, coordinates assumed in range.
    pub fn evaluate_torsion(&self, x: &[u64]) -> QmodZ {
        let b = &self.pairing.matrix;
        let mut acc = Rational::zero();
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let xi_big = BigInt::from(xi);
            acc += self.gen_values[i].value() * Rational::from_integer(xi_big.clone());
            acc += b[i][i].value() * Rational::from_integer(binom2(xi));
            for (j, &xj) in x.iter().enumerate().skip(i + 1) {
                if xj != 0 {
                    acc += b[i][j].value() * Rational::from_integer(&xi_big * xj);
                }
            }
        }
        QmodZ::new(acc)
    }

    pub fn homogeneity_defect(&self) -> HomogeneityDefect {
        let two = BigInt::from(2);
        let torsion = self
            .gen_values
            .iter()
            .enumerate()
            .map(|(i, q)| q.mul_int(&two) - self.pairing.matrix[i][i].clone())
            .collect();
        let divisible = self.kernel_hom.iter().map(|w| w * &two).collect();
        HomogeneityDefect { torsion, divisible }
    }

    pub fn is_homogeneous(&self) -> bool {
        let d = self.homogeneity_defect();
        d.torsion.iter().all(QmodZ::is_zero) && d.divisible.iter().all(Zero::is_zero)
    }

    pub fn radical_restriction(&self) -> Radical {
        let generators = torsion_radical(&self.pairing);
        let values = generators.iter().map(|(g, _)| self.evaluate_torsion(g)).collect();
        let (generators, orders) = generators.into_iter().unzip();
        Radical {
            generators,
            orders,
            values,
            divisible_rank: self.divisible_rank(),
            kernel_hom: self.kernel_hom.clone(),
        }
    }

    /// `true` when the pairing has trivial radical and there is no divisible part.
    pub fn is_nondegenerate(&self) -> bool {
        self.divisible_rank() == 0 && torsion_radical(&self.pairing).is_empty()
    }

    /// `alpha . q = q + b(alpha, -)`.
    pub fn act(&self, alpha: &Element) -> Result<StructuredQuadratic> {
        self.check_element(alpha)?;
        let k = self.group().rank();
        let gen_values = (0..k)
            .map(|i| &self.gen_values[i] + &self.pairing.pair(&alpha.torsion, &self.group().generator(i)))
            .collect();
        Ok(StructuredQuadratic { gen_values, ..self.clone() })
    }

    /// Adds the character with the given values on the torsion generators.
    pub fn add_character(&self, chi: &[QmodZ]) -> Result<StructuredQuadratic> {
        let gen_values: Vec<QmodZ> = self.gen_values.iter().zip(chi).map(|(a, b)| a + b).collect();
        Self::new(self.pairing.clone(), gen_values, self.kernel_hom.clone())
    }
}

/// `n (n - 1) / 2`.
pub(crate) fn binom2(n: u64) -> BigInt {
    let n = BigInt::from(n);
    (&n * (&n - BigInt::one())) / 2
}

/// `d_q = q - q(-x)`, a homomorphism: values on torsion generators and the integer vector `2w`
/// on the divisible part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneityDefect {
    pub torsion: Vec<QmodZ>,
    pub divisible: Vec<BigInt>,
}

impl HomogeneityDefect {
    pub fn eval(&self, x: &Element) -> QmodZ {
        let mut acc = QmodZ::zero();
        for (d, &c) in self.torsion.iter().zip(&x.torsion) {
            acc += &d.mul_i64(c as i64);
        }
        for (d, v) in self.divisible.iter().zip(&x.divisible) {
            acc += &v.mul_int(d);
        }
        acc
    }
}

/// The radical of the pairing with the restriction of `q` to it. The divisible part always lies
/// in the radical, where `q` acts by the kernel homomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Radical {
    pub generators: Vec<Vec<u64>>,
    pub orders: Vec<u64>,
    pub values: Vec<QmodZ>,
    pub divisible_rank: usize,
    pub kernel_hom: Vec<BigInt>,
}

impl Radical {
    /// Order of the torsion part of the radical.
    pub fn torsion_order(&self) -> u64 {
        self.orders.iter().product()
    }
}

/// Generators of `Ker(b^)` in invariant-factor form, with their orders.
pub(crate) fn torsion_radical(b: &TorsionBilinear) -> Vec<(Vec<u64>, u64)> {
    let group = b.group();
    let k = group.rank();
    if k == 0 {
        return Vec::new();
    }
    let e = group.exponent();
    let e_big = BigInt::from(e);
    let mut system = IntMatrix::zeros(k, 2 * k);
    for i in 0..k {
        for j in 0..k {
            let num = b.matrix[i][j].scaled_to(e).expect("pairing values have denominators dividing the exponent");
            system.set(j, i, BigInt::from(num));
        }
        system.set(i, k + i, e_big.clone());
    }
    let kernel = integer_kernel(&system).select_rows(0..k);
    let lattice = ColumnLattice::new(&kernel);
    let w = lattice.basis().clone();
    debug_assert_eq!(w.cols(), k);
    let w_inv = w.rational_inverse().expect("radical lattice has full rank");
    let mut c = IntMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            let v = &w_inv[i][j] * Rational::from_integer(BigInt::from(group.orders()[j]));
            debug_assert!(v.is_integer());
            c.set(i, j, v.to_integer());
        }
    }
    let smith = smith_normal_form(&c);
    let u_inv = smith.u.unimodular_inverse().expect("unimodular");
    let gens = &w * &u_inv;
    smith
        .diagonal()
        .iter()
        .enumerate()
        .filter(|(_, d)| !d.is_one())
        .map(|(i, d)| {
            let col: Vec<i64> = gens
                .column(i)
                .iter()
                .zip(group.orders())
                .map(|(v, &n)| mod_u64(v, n) as i64)
                .collect();
            (group.reduce(&col), crate::exact::rational::to_u64(d, "radical order").expect("fits"))
        })
        .collect()
}

pub(crate) fn mod_u64(v: &BigInt, n: u64) -> u64 {
    use num_integer::Integer;
    use num_traits::ToPrimitive;
    v.mod_floor(&BigInt::from(n)).to_u64().expect("reduced value fits")
}

/// Some refinement of `b`: the smallest solution of `n_i q_i = -C(n_i, 2) b_ii` at each generator.
pub fn some_quadratic_over(b: &TorsionBilinear) -> StructuredQuadratic {
    let gen_values = b
        .group
        .orders()
        .iter()
        .enumerate()
        .map(|(i, &n)| (-b.matrix[i][i].mul_int(&binom2(n))).divide_smallest(n))
        .collect();
    StructuredQuadratic { pairing: b.clone(), gen_values, kernel_hom: Vec::new() }
}

/// `(psi^* q)(x) = q(psi(x))` for `psi: G' -> G` and `q` on `G`.
pub fn pullback(psi: &GroupIso, q: &StructuredQuadratic) -> Result<StructuredQuadratic> {
    if psi.target() != q.group() || psi.divisible_rank() != q.divisible_rank() {
        return Err(Error::InvalidIso(format!(
            "iso targets {:?} + (Q/Z)^{}, function lives on {:?} + (Q/Z)^{}",
            psi.target().orders(),
            psi.divisible_rank(),
            q.group().orders(),
            q.divisible_rank()
        )));
    }
    let source = psi.source().clone();
    let k = source.rank();
    let images: Vec<Element> = (0..k).map(|j| psi.image_of_generator(j)).collect();
    let mut matrix = vec![vec![QmodZ::zero(); k]; k];
    for i in 0..k {
        for j in i..k {
            let v = q.pairing.pair(&images[i].torsion, &images[j].torsion);
            matrix[i][j] = v.clone();
            matrix[j][i] = v;
        }
    }
    let gen_values = images.iter().map(|x| q.evaluate(x)).collect::<Result<Vec<_>>>()?;
    let kernel_hom = psi.kernel_matrix().transpose().mul_vec(&q.kernel_hom);
    let pairing = TorsionBilinear::new(source, matrix)?;
    StructuredQuadratic::new(pairing, gen_values, kernel_hom)
}

pub fn orthogonal_sum(q1: &StructuredQuadratic, q2: &StructuredQuadratic) -> StructuredQuadratic {
    let mut gen_values = q1.gen_values.clone();
    gen_values.extend(q2.gen_values.iter().cloned());
    let mut kernel_hom = q1.kernel_hom.clone();
    kernel_hom.extend(q2.kernel_hom.iter().cloned());
    StructuredQuadratic { pairing: q1.pairing.direct_sum(&q2.pairing), gen_values, kernel_hom }
}

/// Rewrites `q` on a group in invariant-factor form. The returned iso maps the original group
/// onto the normalized one, so pulling the normalized function back along it gives `q`.
pub fn normalize(q: &StructuredQuadratic) -> (StructuredQuadratic, GroupIso) {
    let group = q.group();
    let k = group.rank();
    let diag: Vec<BigInt> = group.orders().iter().map(|&n| BigInt::from(n)).collect();
    let smith = smith_normal_form(&IntMatrix::diagonal(&diag));
    let u_inv = smith.u.unimodular_inverse().expect("unimodular");
    let keep: Vec<usize> = (0..k).filter(|&i| !smith.d.get(i, i).is_one()).collect();
    let orders: Vec<u64> = keep
        .iter()
        .map(|&i| crate::exact::rational::to_u64(smith.d.get(i, i), "invariant factor").expect("fits"))
        .collect();
    let target = FiniteAbelianGroup::new(orders.clone()).expect("invariant factors exceed 1");

    let preimages: Vec<Vec<u64>> = keep
        .iter()
        .map(|&i| {
            let col: Vec<u64> =
                u_inv.column(i).iter().zip(group.orders()).map(|(v, &n)| mod_u64(v, n)).collect();
            col
        })
        .collect();
    let m = keep.len();
    let mut matrix = vec![vec![QmodZ::zero(); m]; m];
    for a in 0..m {
        for c in a..m {
            let v = q.pairing.pair(&preimages[a], &preimages[c]);
            matrix[a][c] = v.clone();
            matrix[c][a] = v;
        }
    }
    let gen_values = preimages.iter().map(|x| q.evaluate_torsion(x)).collect();
    let normalized = StructuredQuadratic {
        pairing: TorsionBilinear { group: target.clone(), matrix },
        gen_values,
        kernel_hom: q.kernel_hom.clone(),
    };

    let mut forward = IntMatrix::zeros(m, k);
    for (a, &i) in keep.iter().enumerate() {
        for j in 0..k {
            forward.set(a, j, BigInt::from(mod_u64(smith.u.get(i, j), orders[a])));
        }
    }
    let s = q.divisible_rank();
    let witness = GroupIso::new(
        group.clone(),
        target,
        forward,
        IntMatrix::identity(s),
        vec![vec![QmodZ::zero(); k]; s],
    )
    .expect("Smith transform induces an isomorphism");
    (normalized, witness)
}
