use num_bigint::BigInt;
use num_integer::Integer;

use super::table::{natural_den, ValueTable};
use super::Bounds;
use crate::error::Result;
use crate::exact::{lcm_u64, CyclotomicNumber};
use crate::torsion::StructuredQuadratic;

/// `sum_x exp(2 pi i q(x))` over the torsion part, with `norm_square = |T|`.
pub fn gauss_sum(q: &StructuredQuadratic) -> Result<CyclotomicNumber> {
    gauss_sum_bounded(q, Bounds::default().max_eval_order)
}

pub fn gauss_sum_bounded(q: &StructuredQuadratic, bound: u64) -> Result<CyclotomicNumber> {
    let table = ValueTable::new(q, natural_den(q), bound)?;
    Ok(gauss_from_table(&table))
}

pub(crate) fn gauss_from_table(table: &ValueTable) -> CyclotomicNumber {
    let den = table.den;
    let level = table.q.iter().fold(1, |acc, &v| lcm_u64(acc, den / den.gcd(&v)));
    let step = den / level;
    let mut coeffs = vec![BigInt::from(0); level as usize];
    for &v in &table.q {
        coeffs[(v / step) as usize] += 1;
    }
    CyclotomicNumber::new(level, coeffs, BigInt::from(table.size)).expect("well-formed sum")
}
