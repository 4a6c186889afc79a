//! Machine-word value tables for the finite part of a quadratic function.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exact::QmodZ;
use crate::torsion::StructuredQuadratic;

/// Values of `q` on every element of the torsion part, as numerators over a common
/// denominator `den`.
#[derive(Clone, Debug)]
pub(crate) struct ValueTable {
    pub orders: Vec<u64>,
    pub size: usize,
    pub den: u64,
    /// Flattened coordinates, `coords[x * k + i]`.
    pub coords: Vec<u64>,
    pub strides: Vec<usize>,
    pub q: Vec<u64>,
    pub b: Vec<Vec<u64>>,
    pub gen_q: Vec<u64>,
    /// Additive order of each element.
    pub elem_order: Vec<u64>,
}

pub(crate) fn natural_den(q: &StructuredQuadratic) -> u64 {
    2 * q.group().exponent()
}

fn scaled(v: &QmodZ, den: u64) -> Result<u64> {
    v.scaled_to(den)
        .ok_or_else(|| Error::Internal(format!("value {v} does not have denominator dividing {den}")))
}

impl ValueTable {
    pub fn new(q: &StructuredQuadratic, den: u64, bound: u64) -> Result<Self> {
        let group = q.group();
        let size = group.order()?;
        if size > bound {
            return Err(Error::SizeBound { limit: bound, actual: size.to_string() });
        }
        let size = size as usize;
        let orders = group.orders().to_vec();
        let k = orders.len();
        let b = (0..k)
            .map(|i| (0..k).map(|j| scaled(q.pairing().entry(i, j), den)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let gen_q = q.gen_values().iter().map(|v| scaled(v, den)).collect::<Result<Vec<_>>>()?;
        let mut strides = Vec::with_capacity(k);
        let mut acc = 1usize;
        for &n in &orders {
            strides.push(acc);
            acc *= n as usize;
        }
        let mut coords = vec![0u64; size * k];
        let mut tab = vec![0u64; size];
        let mut elem_order = vec![1u64; size];
        let d = den as u128;
        for x in 0..size {
            let mut rest = x;
            for (i, &n) in orders.iter().enumerate() {
                coords[x * k + i] = (rest % n as usize) as u64;
                rest /= n as usize;
            }
            let c = &coords[x * k..(x + 1) * k];
            let mut v: u128 = 0;
            let mut ord = 1u64;
            for i in 0..k {
                let xi = c[i] as u128;
                if xi == 0 {
                    continue;
                }
                ord = ord.lcm(&(orders[i] / orders[i].gcd(&c[i])));
                v += xi * gen_q[i] as u128 % d;
                v += (xi * (xi - 1) / 2) % d * b[i][i] as u128 % d;
                for j in i + 1..k {
                    v += xi * c[j] as u128 % d * b[i][j] as u128 % d;
                }
                v %= d;
            }
            tab[x] = v as u64;
            elem_order[x] = ord;
        }
        Ok(ValueTable { orders, size, den, coords, strides, q: tab, b, gen_q, elem_order })
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn coords_of(&self, x: usize) -> &[u64] {
        let k = self.rank();
        &self.coords[x * k..(x + 1) * k]
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        let k = self.rank();
        let (cx, cy) = (&self.coords[x * k..], &self.coords[y * k..]);
        let mut idx = 0;
        for i in 0..k {
            let n = self.orders[i];
            idx += ((cx[i] + cy[i]) % n) as usize * self.strides[i];
        }
        idx
    }

    pub fn generator(&self, i: usize) -> usize {
        self.strides[i]
    }

    /// `b(x, y)` as a numerator over `den`.
    pub fn pair(&self, x: usize, y: usize) -> u64 {
        let (cx, cy) = (self.coords_of(x), self.coords_of(y));
        let d = self.den as u128;
        let mut acc: u128 = 0;
        for (i, &xi) in cx.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in cy.iter().enumerate() {
                if yj != 0 {
                    acc = (acc + xi as u128 * yj as u128 % d * self.b[i][j] as u128) % d;
                }
            }
        }
        acc as u64
    }

    /// `d(x) = 2 q(x) - b(x, x)`.
    pub fn defect(&self, x: usize) -> u64 {
        let d = self.den;
        (2 * self.q[x] % d + d - self.pair(x, x)) % d
    }

    /// Images of all elements under the homomorphism sending generator `j` to `images[j]`
    /// in `target`.
    pub fn image_table(&self, target: &ValueTable, images: &[usize]) -> Vec<usize> {
        let k = self.rank();
        let mut out = vec![0usize; self.size];
        for x in 1..self.size {
            let c = self.coords_of(x);
            let j = (0..k).find(|&j| c[j] != 0).expect("nonzero element");
            out[x] = target.add(out[x - self.strides[j]], images[j]);
        }
        out
    }
}
