//! Symmetric bilinear lattices, characteristic forms and Wu classes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{content, smith_normal_form, ColumnLattice, IntMatrix, Rational};

/// A free abelian group `Z^n` with a symmetric integer Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearLattice {
    gram: IntMatrix,
}

impl BilinearLattice {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "gram matrix is {}x{}",
                gram.rows(),
                gram.cols()
            )));
        }
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(BilinearLattice { gram })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        if rows.iter().any(|r| r.len() != rows.len()) {
            return Err(Error::DimensionMismatch("gram matrix rows have unequal length".into()));
        }
        Self::new(IntMatrix::from_rows(rows))
    }

    /// The rank-0 lattice.
    pub fn zero() -> Self {
        BilinearLattice { gram: IntMatrix::zeros(0, 0) }
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn determinant(&self) -> BigInt {
        self.gram.determinant().expect("gram matrix is square")
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.determinant().is_zero()
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs().is_one()
    }

    /// `f_Q(x, y)`.
    pub fn pair(&self, x: &[Rational], y: &[Rational]) -> Rational {
        self.gram.bilinear_rat(x, y)
    }

    pub fn orthogonal_sum(&self, other: &BilinearLattice) -> BilinearLattice {
        BilinearLattice { gram: self.gram.block_diag(&other.gram) }
    }

    /// `(positive, negative, null)` counts of an exact rational diagonalization.
    pub fn signature(&self) -> (usize, usize, usize) {
        let n = self.rank();
        let mut a: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| Rational::from_integer(self.gram.get(i, j).clone())).collect())
            .collect();
        let (mut pos, mut neg) = (0, 0);
        let mut live: Vec<usize> = (0..n).collect();
        while let Some(k) = pick_pivot(&mut a, &live) {
            let p = a[k][k].clone();
            if p.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            live.retain(|&i| i != k);
            for &i in &live {
                let f = &a[i][k] / &p;
                if f.is_zero() {
                    continue;
                }
                for &j in &live {
                    let t = &f * &a[k][j];
                    a[i][j] -= t;
                }
                a[i][k] = Rational::zero();
                a[k][i] = Rational::zero();
            }
        }
        (pos, neg, n - pos - neg)
    }
}

/// Finds an index among `live` with a nonzero diagonal entry, creating one by a congruence
/// `e_i -> e_i + e_j` when the diagonal vanishes but an off-diagonal entry does not.
fn pick_pivot(a: &mut [Vec<Rational>], live: &[usize]) -> Option<usize> {
    if let Some(&k) = live.iter().find(|&&k| !a[k][k].is_zero()) {
        return Some(k);
    }
    let (i, j) = live
        .iter()
        .flat_map(|&i| live.iter().map(move |&j| (i, j)))
        .find(|&(i, j)| i != j && !a[i][j].is_zero())?;
    let n = a.len();
    for c in 0..n {
        let t = a[j][c].clone();
        a[i][c] += t;
    }
    for r in 0..n {
        let t = a[r][j].clone();
        a[r][i] += t;
    }
    Some(i)
}

/// An integer covector `c` with `c(x) = f(x, x) mod 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharacteristicForm {
    coeffs: Vec<BigInt>,
}

impl CharacteristicForm {
    pub fn new(lattice: &BilinearLattice, coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() != lattice.rank() {
            return Err(Error::DimensionMismatch(format!(
                "characteristic form has {} coefficients for a lattice of rank {}",
                coeffs.len(),
                lattice.rank()
            )));
        }
        for (i, c) in coeffs.iter().enumerate() {
            if (c - lattice.gram.get(i, i)).is_odd() {
                return Err(Error::InvalidCharacteristic { index: i });
            }
        }
        Ok(CharacteristicForm { coeffs })
    }

    pub fn from_i64(lattice: &BilinearLattice, coeffs: &[i64]) -> Result<Self> {
        Self::new(lattice, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `c_Q(x)`.
    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .zip(x)
            .fold(Rational::zero(), |acc, (c, v)| acc + Rational::from_integer(c.clone()) * v)
    }

    /// `c + 2 f(u, -)`.
    pub fn shifted(&self, lattice: &BilinearLattice, u: &[BigInt]) -> CharacteristicForm {
        let fu = lattice.gram.mul_vec(u);
        let coeffs = self.coeffs.iter().zip(&fu).map(|(c, v)| c + BigInt::from(2) * v).collect();
        CharacteristicForm { coeffs }
    }
}

/// The sublattice `2 f(M, -)` of covectors; characteristic forms matter modulo it.
pub fn doubled_image(lattice: &BilinearLattice) -> ColumnLattice {
    let two = BigInt::from(2);
    let n = lattice.rank();
    let mut g = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            g.set(i, j, lattice.gram.get(i, j) * &two);
        }
    }
    ColumnLattice::new(&g)
}

/// `true` when `c1 - c2` lies in `2 f(M, -)`.
pub fn chars_congruent(lattice: &BilinearLattice, c1: &CharacteristicForm, c2: &CharacteristicForm) -> bool {
    let diff: Vec<BigInt> = c1.coeffs.iter().zip(&c2.coeffs).map(|(a, b)| a - b).collect();
    doubled_image(lattice).contains(&diff)
}

/// A vector `w` of `M (x) Q` with `f(x, x) = f_Q(w, x) mod 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WuClass {
    pub coords: Vec<Rational>,
    pub integral: bool,
}

impl WuClass {
    pub fn new(coords: Vec<Rational>) -> Self {
        let integral = coords.iter().all(Rational::is_integer);
        WuClass { coords, integral }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WuOrChar {
    Wu(WuClass),
    Char(CharacteristicForm),
}

/// A lattice with a characteristic form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triple {
    pub lattice: BilinearLattice,
    pub char: CharacteristicForm,
}

impl Triple {
    pub fn new(lattice: BilinearLattice, char: CharacteristicForm) -> Result<Self> {
        let char = CharacteristicForm::new(&lattice, char.coeffs)?;
        Ok(Triple { lattice, char })
    }

    pub fn from_i64(gram: &[Vec<i64>], char: &[i64]) -> Result<Self> {
        let lattice = BilinearLattice::from_rows(gram)?;
        let char = CharacteristicForm::from_i64(&lattice, char)?;
        Ok(Triple { lattice, char })
    }

    pub fn canonical(lattice: BilinearLattice) -> Self {
        let char = canonical_char(&lattice);
        Triple { lattice, char }
    }

    pub fn empty() -> Self {
        Self::canonical(BilinearLattice::zero())
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }
}

pub fn canonical_char(f: &BilinearLattice) -> CharacteristicForm {
    let coeffs = (0..f.rank()).map(|i| f.gram.get(i, i).clone()).collect();
    CharacteristicForm { coeffs }
}

/// The decomposition `M = section(M_bar) + Ker f` derived from the Smith form of the Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Splitting {
    /// Nondegenerate quotient form on `M_bar = M / Ker f`.
    pub fbar: BilinearLattice,
    /// `M -> M_bar`, an `r x n` matrix.
    pub proj: IntMatrix,
    /// A right inverse of `proj`, `n x r`.
    pub section: IntMatrix,
    /// Basis of `Ker f` as columns, `n x s`.
    pub kernel: IntMatrix,
    /// `[section | kernel]`, a unimodular `n x n` matrix, and its inverse.
    pub basis: IntMatrix,
    pub basis_inv: IntMatrix,
}

impl Splitting {
    pub fn quotient_rank(&self) -> usize {
        self.section.cols()
    }

    pub fn kernel_rank(&self) -> usize {
        self.kernel.cols()
    }
}

pub fn split_nondegenerate(f: &BilinearLattice) -> Splitting {
    let n = f.rank();
    let smith = smith_normal_form(&f.gram);
    let r = smith.rank();
    let mut basis = smith.v;
    for j in r..n {
        let first = (0..n).map(|i| basis.get(i, j).clone()).find(|v| !v.is_zero());
        if first.is_some_and(|v| v.is_negative()) {
            basis.negate_col(j);
        }
    }
    let basis_inv = basis.unimodular_inverse().expect("Smith transform is unimodular");
    let section = basis.select_columns(0..r);
    let kernel = basis.select_columns(r..n);
    let proj = basis_inv.select_rows(0..r);
    let fbar_gram = &(&section.transpose() * &f.gram) * &section;
    Splitting {
        fbar: BilinearLattice { gram: fbar_gram },
        proj,
        section,
        kernel,
        basis,
        basis_inv,
    }
}

/// Saturated basis of `{x : f(x, -) = 0}`; each column has a positive leading entry.
pub fn kernel_of_adjoint(f: &BilinearLattice) -> IntMatrix {
    split_nondegenerate(f).kernel
}

/// Values of `c` on the kernel basis together with their gcd.
pub fn restrict_char_to_kernel(t: &Triple) -> (Vec<BigInt>, BigInt) {
    let k = kernel_of_adjoint(&t.lattice);
    let values = k.transpose().mul_vec(&t.char.coeffs);
    let g = content(&values);
    (values, g)
}

pub fn wu_to_char(f: &BilinearLattice, w: &WuClass) -> Result<CharacteristicForm> {
    if !f.is_nondegenerate() {
        return Err(Error::Degenerate);
    }
    if w.coords.len() != f.rank() {
        return Err(Error::DimensionMismatch(format!(
            "Wu class has {} coordinates for a lattice of rank {}",
            w.coords.len(),
            f.rank()
        )));
    }
    let image = f.gram.mul_rat_vec(&w.coords);
    let mut coeffs = Vec::with_capacity(image.len());
    for (i, v) in image.into_iter().enumerate() {
        if !v.is_integer() || (v.to_integer() - f.gram.get(i, i)).is_odd() {
            return Err(Error::InvalidWuClass { index: i });
        }
        coeffs.push(v.to_integer());
    }
    Ok(CharacteristicForm { coeffs })
}

pub fn char_to_wu(f: &BilinearLattice, c: &CharacteristicForm) -> Result<WuClass> {
    if c.coeffs.len() != f.rank() {
        return Err(Error::DimensionMismatch("characteristic form length".into()));
    }
    let rhs: Vec<Rational> = c.coeffs.iter().map(|v| Rational::from_integer(v.clone())).collect();
    let coords = crate::exact::solve_rational(&f.gram, &rhs).ok_or(Error::Degenerate)?;
    Ok(WuClass::new(coords))
}

pub fn wu_char_convert(f: &BilinearLattice, input: &WuOrChar) -> Result<WuOrChar> {
    match input {
        WuOrChar::Wu(w) => wu_to_char(f, w).map(WuOrChar::Char),
        WuOrChar::Char(c) => char_to_wu(f, c).map(WuOrChar::Wu),
    }
}

/// `s^* c`, a characteristic form of the quotient lattice.
pub fn retract_char(
    f: &BilinearLattice,
    section: &IntMatrix,
    c: &CharacteristicForm,
) -> Result<CharacteristicForm> {
    if section.rows() != f.rank() || c.coeffs.len() != f.rank() {
        return Err(Error::DimensionMismatch(format!(
            "section is {}x{} for a lattice of rank {}",
            section.rows(),
            section.cols(),
            f.rank()
        )));
    }
    let fbar = BilinearLattice::new(&(&section.transpose() * &f.gram) * section)?;
    CharacteristicForm::new(&fbar, section.transpose().mul_vec(&c.coeffs))
}

pub fn orthogonal_sum_triple(t1: &Triple, t2: &Triple) -> Triple {
    let mut coeffs = t1.char.coeffs.clone();
    coeffs.extend(t2.char.coeffs.iter().cloned());
    Triple {
        lattice: t1.lattice.orthogonal_sum(&t2.lattice),
        char: CharacteristicForm { coeffs },
    }
}
