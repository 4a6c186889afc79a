//! Exact elements of cyclotomic rings `Z[zeta_N]`, with a separate integer under a square root
//! so that normalized Gauss sums `S / sqrt(n)` can be compared without floating point.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{lcm_u64, QmodZ};
use crate::error::{Error, Result};

/// `sum_k coeffs[k] * zeta_level^k`, understood as divided by `sqrt(norm_square)`.
#[derive(Clone, Debug)]
pub struct CyclotomicNumber {
    level: u64,
    coeffs: Vec<BigInt>,
    norm_square: BigInt,
}

impl CyclotomicNumber {
    pub fn new(level: u64, coeffs: Vec<BigInt>, norm_square: BigInt) -> Result<Self> {
        if level == 0 {
            return Err(Error::Precondition("cyclotomic level must be positive".into()));
        }
        if coeffs.len() as u64 != level {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients at level {level}",
                coeffs.len()
            )));
        }
        if !norm_square.is_positive() {
            return Err(Error::Precondition("norm_square must be positive".into()));
        }
        Ok(CyclotomicNumber { level, coeffs, norm_square })
    }

    pub fn from_integer(n: impl Into<BigInt>, norm_square: impl Into<BigInt>) -> Self {
        CyclotomicNumber { level: 1, coeffs: vec![n.into()], norm_square: norm_square.into() }
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn norm_square(&self) -> &BigInt {
        &self.norm_square
    }

    pub fn with_norm_square(mut self, norm_square: BigInt) -> Self {
        self.norm_square = norm_square;
        self
    }

    /// Coefficients at level `target`, which must be a multiple of the current level.
    pub fn lifted(&self, target: u64) -> Vec<BigInt> {
        assert!(target.is_multiple_of(self.level), "level {target} is not a multiple of {}", self.level);
        let step = (target / self.level) as usize;
        let mut out = vec![BigInt::zero(); target as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k * step] += c;
        }
        out
    }

    pub fn conjugate(&self) -> Self {
        let n = self.level as usize;
        let coeffs = (0..n).map(|k| self.coeffs[(n - k) % n].clone()).collect();
        CyclotomicNumber { level: self.level, coeffs, norm_square: self.norm_square.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let level = lcm_u64(self.level, other.level);
        let a = self.lifted(level);
        let b = other.lifted(level);
        let n = level as usize;
        let mut out = vec![BigInt::zero(); n];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                out[(i + j) % n] += x * y;
            }
        }
        CyclotomicNumber { level, coeffs: out, norm_square: &self.norm_square * &other.norm_square }
    }

    /// Multiplies by `exp(2 pi i angle)`.
    pub fn times_root_of_unity(&self, angle: &QmodZ) -> Self {
        let den = angle.denom().to_u64().expect("root of unity of huge order");
        let num = angle.numer().to_u64().expect("root of unity of huge order");
        let level = lcm_u64(self.level, den);
        let shift = (num * (level / den)) as usize;
        let lifted = self.lifted(level);
        let n = level as usize;
        let mut out = vec![BigInt::zero(); n];
        for (k, c) in lifted.into_iter().enumerate() {
            out[(k + shift) % n] = c;
        }
        CyclotomicNumber { level, coeffs: out, norm_square: self.norm_square.clone() }
    }

    /// Canonical remainder modulo the `target`-th cyclotomic polynomial (`target` a multiple
    /// of the level). Two numbers have equal sums iff their remainders at a common level agree.
    pub fn reduced_at(&self, target: u64) -> Vec<BigInt> {
        let phi = cyclotomic_polynomial(target);
        let mut r = poly_rem(self.lifted(target), &phi);
        trim(&mut r);
        r
    }

    /// `true` when the unnormalized sums are equal complex numbers.
    pub fn same_sum(&self, other: &Self) -> bool {
        let level = lcm_u64(self.level, other.level);
        let a = self.lifted(level);
        let b = other.lifted(level);
        let diff: Vec<BigInt> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
        let phi = cyclotomic_polynomial(level);
        poly_rem(diff, &phi).iter().all(Zero::is_zero)
    }
}

/// Semantic equality of normalized values: equal sums and equal `norm_square`.
pub fn cyclotomic_equal(x: &CyclotomicNumber, y: &CyclotomicNumber) -> bool {
    x.norm_square == y.norm_square && x.same_sum(y)
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        cyclotomic_equal(self, other)
    }
}

impl Eq for CyclotomicNumber {}

fn trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Remainder of `num` modulo a monic polynomial (coefficients low to high).
fn poly_rem(mut num: Vec<BigInt>, monic: &[BigInt]) -> Vec<BigInt> {
    let d = monic.len() - 1;
    debug_assert!(monic[d].is_one());
    trim(&mut num);
    while num.len() > d {
        let top = num.len() - 1;
        let c = num[top].clone();
        if !c.is_zero() {
            let shift = top - d;
            for (k, m) in monic.iter().enumerate() {
                num[shift + k] -= &c * m;
            }
        }
        num.pop();
        trim(&mut num);
    }
    num
}

/// Exact quotient `num / monic`; panics if the division leaves a remainder.
fn poly_div_exact(num: &[BigInt], monic: &[BigInt]) -> Vec<BigInt> {
    let d = monic.len() - 1;
    let mut rem = num.to_vec();
    trim(&mut rem);
    if rem.len() <= d {
        assert!(rem.is_empty(), "inexact polynomial division");
        return vec![];
    }
    let mut q = vec![BigInt::zero(); rem.len() - d];
    while rem.len() > d {
        let top = rem.len() - 1;
        let c = rem[top].clone();
        let shift = top - d;
        for (k, m) in monic.iter().enumerate() {
            rem[shift + k] -= &c * m;
        }
        q[shift] = c;
        rem.pop();
        trim(&mut rem);
    }
    assert!(rem.is_empty(), "inexact polynomial division");
    q
}

fn phi_cache() -> &'static Mutex<HashMap<u64, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The `n`-th cyclotomic polynomial, obtained by dividing `x^n - 1` by every `Phi_d`, `d | n`,
/// `d < n`.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<BigInt>> {
    assert!(n >= 1);
    if let Some(p) = phi_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = -BigInt::one();
    p[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic_polynomial(d);
            p = poly_div_exact(&p, &phi_d);
        }
    }
    let p = Arc::new(p);
    phi_cache().lock().unwrap().insert(n, p.clone());
    p
}
