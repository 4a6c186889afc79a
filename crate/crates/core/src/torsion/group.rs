use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exact::QmodZ;

/// `Z/n_1 + ... + Z/n_k` with every `n_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FiniteAbelianGroup {
    orders: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if let Some(i) = orders.iter().position(|&n| n < 2) {
            return Err(Error::InvalidGroup(format!(
                "cyclic factor {i} has order {}; orders must be at least 2",
                orders[i]
            )));
        }
        Ok(FiniteAbelianGroup { orders })
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup { orders: Vec::new() }
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Number of cyclic factors.
    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> Result<u64> {
        self.orders.iter().try_fold(1u64, |acc, &n| {
            acc.checked_mul(n)
                .ok_or_else(|| Error::Overflow(format!("group order of {:?}", self.orders)))
        })
    }

    /// The order, or `None` if it exceeds `bound`.
    pub fn order_within(&self, bound: u64) -> Option<u64> {
        self.order().ok().filter(|&n| n <= bound)
    }

    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |acc, &n| acc.lcm(&n))
    }

    pub fn is_invariant_factor_form(&self) -> bool {
        self.orders.windows(2).all(|w| w[1] % w[0] == 0)
    }

    pub fn reduce(&self, coords: &[i64]) -> Vec<u64> {
        coords
            .iter()
            .zip(&self.orders)
            .map(|(&c, &n)| c.rem_euclid(n as i64) as u64)
            .collect()
    }

    pub fn contains(&self, coords: &[u64]) -> bool {
        coords.len() == self.orders.len() && coords.iter().zip(&self.orders).all(|(c, n)| c < n)
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter()
            .zip(y)
            .zip(&self.orders)
            .map(|((a, b), n)| (a + b) % n)
            .collect()
    }

    pub fn neg(&self, x: &[u64]) -> Vec<u64> {
        x.iter().zip(&self.orders).map(|(a, n)| (n - a) % n).collect()
    }

    pub fn scale(&self, k: u64, x: &[u64]) -> Vec<u64> {
        x.iter()
            .zip(&self.orders)
            .map(|(&a, &n)| ((a as u128 * k as u128) % n as u128) as u64)
            .collect()
    }

    pub fn element_order(&self, x: &[u64]) -> u64 {
        x.iter()
            .zip(&self.orders)
            .fold(1, |acc, (&a, &n)| acc.lcm(&(n / n.gcd(&a))))
    }

    pub fn generator(&self, i: usize) -> Vec<u64> {
        let mut e = vec![0; self.rank()];
        e[i] = 1;
        e
    }

    /// Coordinates of the element with mixed-radix index `idx`, first coordinate fastest.
    pub fn element_at(&self, mut idx: u64) -> Vec<u64> {
        self.orders
            .iter()
            .map(|&n| {
                let c = idx % n;
                idx /= n;
                c
            })
            .collect()
    }

    pub fn index_of(&self, x: &[u64]) -> u64 {
        x.iter().zip(&self.orders).rev().fold(0, |acc, (&c, &n)| acc * n + c)
    }

    /// All elements in index order. Panics if the order overflows.
    pub fn elements(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        let total = self.order().expect("group order overflows");
        (0..total).map(move |i| self.element_at(i))
    }

    pub fn direct_sum(&self, other: &FiniteAbelianGroup) -> FiniteAbelianGroup {
        let mut orders = self.orders.clone();
        orders.extend_from_slice(&other.orders);
        FiniteAbelianGroup { orders }
    }
}

/// An element of `T + (Q/Z)^s`: torsion coordinates reduced modulo the orders and a vector of
/// divisible coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Element {
    pub torsion: Vec<u64>,
    pub divisible: Vec<QmodZ>,
}

impl Element {
    pub fn new(torsion: Vec<u64>, divisible: Vec<QmodZ>) -> Self {
        Element { torsion, divisible }
    }

    pub fn torsion(torsion: Vec<u64>) -> Self {
        Element { torsion, divisible: Vec::new() }
    }

    pub fn zero(k: usize, s: usize) -> Self {
        Element { torsion: vec![0; k], divisible: vec![QmodZ::zero(); s] }
    }

    pub fn is_zero(&self) -> bool {
        self.torsion.iter().all(|&c| c == 0) && self.divisible.iter().all(QmodZ::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_trivial_factors() {
        assert!(FiniteAbelianGroup::new(vec![2, 1]).is_err());
        assert!(FiniteAbelianGroup::new(vec![0]).is_err());
    }

    #[test]
    fn arithmetic() {
        let g = FiniteAbelianGroup::new(vec![2, 4]).unwrap();
        assert_eq!(g.order().unwrap(), 8);
        assert_eq!(g.exponent(), 4);
        assert_eq!(g.add(&[1, 3], &[1, 2]), vec![0, 1]);
        assert_eq!(g.neg(&[1, 1]), vec![1, 3]);
        assert_eq!(g.element_order(&[1, 2]), 2);
        assert_eq!(g.element_order(&[0, 1]), 4);
        assert_eq!(g.reduce(&[-1, -1]), vec![1, 3]);
    }

    #[test]
    fn indexing_round_trip() {
        let g = FiniteAbelianGroup::new(vec![3, 2, 4]).unwrap();
        for (i, x) in g.elements().enumerate() {
            assert_eq!(g.index_of(&x), i as u64);
        }
        assert_eq!(g.elements().count(), 24);
    }

    #[test]
    fn overflow_is_reported() {
        let g = FiniteAbelianGroup::new(vec![u64::MAX, 3]).unwrap();
        assert!(matches!(g.order(), Err(Error::Overflow(_))));
        assert_eq!(g.order_within(100), None);
    }
}
