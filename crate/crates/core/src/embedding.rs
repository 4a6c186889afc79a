//! The affine map `[c] -> phi_{f,c}` from characteristic forms modulo `2 f(M)` to quadratic
//! refinements of the linking pairing, and its inverse.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::discriminant::{discriminant_with_group, DiscriminantGroup};
use crate::error::{Error, Result};
use crate::exact::snf::solve_mixed_system;
use crate::exact::{IntMatrix, QmodZ, Rational};
use crate::lattice::{canonical_char, doubled_image, split_nondegenerate, BilinearLattice, CharacteristicForm, Triple};
use crate::torsion::StructuredQuadratic;

/// `<alpha, x> = alpha(x) mod Z` for an integer covector `alpha` and `x in M#`.
pub fn dual_pairing(f: &BilinearLattice, alpha: &[BigInt], x: &[Rational]) -> Result<QmodZ> {
    let n = f.rank();
    if alpha.len() != n || x.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "covector of length {} and vector of length {} for rank {n}",
            alpha.len(),
            x.len()
        )));
    }
    if !f.gram().mul_rat_vec(x).iter().all(Rational::is_integer) {
        return Err(Error::NotInDualLattice);
    }
    let value: Rational = alpha.iter().zip(x).map(|(a, v)| Rational::from_integer(a.clone()) * v).sum();
    Ok(QmodZ::new(value))
}

fn check_compatible(g: &DiscriminantGroup, q0: &StructuredQuadratic, q: &StructuredQuadratic) -> Result<()> {
    if q.group().orders() != g.orders() || q.divisible_rank() != g.divisible_rank() {
        return Err(Error::PairingMismatch(format!(
            "function lives on orders {:?} with divisible rank {}, the lattice gives {:?} and {}",
            q.group().orders(),
            q.divisible_rank(),
            g.orders(),
            g.divisible_rank()
        )));
    }
    if q.pairing() != q0.pairing() {
        return Err(Error::PairingMismatch("pairing differs from the linking pairing".into()));
    }
    Ok(())
}

/// A characteristic form `c` with `phi_{f,c} = q`, reduced modulo `2 f(M)`, or `None` when `q` is
/// not in the image.
pub fn solve_char(f: &BilinearLattice, q: &StructuredQuadratic) -> Result<Option<CharacteristicForm>> {
    let c0 = canonical_char(f);
    let (q0, g) = discriminant_with_group(&Triple { lattice: f.clone(), char: c0.clone() })?;
    check_compatible(&g, &q0, q)?;

    // c = c0 + 2 alpha gives phi_c = phi_c0 - <alpha, ->, so <alpha, -> = -(q - q0)
    let n = f.rank();
    let reps = g.lifted_gen_reps();
    let kernel = g.kernel_basis();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    let mut moduli = Vec::new();
    for (j, rep) in reps.iter().enumerate() {
        let order = BigInt::from(g.orders()[j]);
        let scaled: Vec<BigInt> = rep.iter().map(|v| (v * Rational::from_integer(order.clone())).to_integer()).collect();
        let h = &q.gen_values()[j] - &q0.gen_values()[j];
        let target = (-h.value() * Rational::from_integer(order.clone())).to_integer();
        rows.push(scaled);
        rhs.push(target);
        moduli.push(order);
    }
    // w = w0 - K^T alpha
    for i in 0..g.divisible_rank() {
        rows.push(kernel.column(i));
        rhs.push(&q0.kernel_hom()[i] - &q.kernel_hom()[i]);
        moduli.push(BigInt::zero());
    }
    let a = if rows.is_empty() { IntMatrix::zeros(0, n) } else { IntMatrix::from_big_rows(&rows)? };
    let Some(alpha) = solve_mixed_system(&a, &rhs, &moduli)? else {
        return Ok(None);
    };
    let coeffs: Vec<BigInt> = c0.coeffs().iter().zip(&alpha).map(|(c, a)| c + a * 2).collect();
    let reduced = doubled_image(f).reduce(&coeffs);
    Ok(Some(CharacteristicForm::new(f, reduced)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    pub char: Option<CharacteristicForm>,
}

/// Whether `q` is `phi_{f,c}` for some `c`. Integral kernel homomorphisms are always realized, so
/// this is the solvability of the torsion system.
pub fn image_membership(f: &BilinearLattice, q: &StructuredQuadratic) -> Result<Membership> {
    let char = solve_char(f, q)?;
    Ok(Membership { member: char.is_some(), char })
}

/// The cokernel of `[c] -> phi_{f,c}` is `(Ker f (x) Zhat) / Ker f`, recorded here by its rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CokernelReport {
    pub divisible_rank: usize,
    pub description: String,
}

pub fn cokernel_report(f: &BilinearLattice) -> CokernelReport {
    let s = split_nondegenerate(f).kernel_rank();
    let description = if s == 0 {
        "trivial: the map is a bijection onto the refinements of the linking pairing".to_string()
    } else {
        format!("(Ker f (x) Zhat) / Ker f with Ker f of rank {s}")
    };
    CokernelReport { divisible_rank: s, description }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discriminant::discriminant_quadratic;
    use crate::exact::rat;

    fn lat(rows: &[Vec<i64>]) -> BilinearLattice {
        BilinearLattice::from_rows(rows).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn phi(gram: &[Vec<i64>], c: &[i64]) -> StructuredQuadratic {
        discriminant_quadratic(&Triple::from_i64(gram, c).unwrap()).unwrap()
    }

    #[test]
    fn pairing_examples() {
        let f = lat(&[vec![2]]);
        assert_eq!(dual_pairing(&f, &ints(&[1]), &[rat(1, 2)]).unwrap(), QmodZ::from_frac(1, 2));
        assert_eq!(dual_pairing(&f, &ints(&[2]), &[rat(1, 2)]).unwrap(), QmodZ::zero());
        assert!(matches!(dual_pairing(&f, &ints(&[1]), &[rat(1, 3)]), Err(Error::NotInDualLattice)));
        let f = lat(&[vec![2, 0], vec![0, 0]]);
        assert_eq!(dual_pairing(&f, &ints(&[0, 1]), &[rat(0, 1), rat(1, 2)]).unwrap(), QmodZ::from_frac(1, 2));
    }

    #[test]
    fn solve_char_examples() {
        let f = lat(&[vec![2]]);
        let q = phi(&[vec![2]], &[0]);
        assert_eq!(solve_char(&f, &q).unwrap().unwrap().coeffs(), &ints(&[0])[..]);
        let q = phi(&[vec![2]], &[2]);
        assert_eq!(q.gen_values(), &[QmodZ::from_frac(3, 4)]);
        assert_eq!(solve_char(&f, &q).unwrap().unwrap().coeffs(), &ints(&[2])[..]);
        let wrong = phi(&[vec![4]], &[0]);
        assert!(matches!(solve_char(&f, &wrong), Err(Error::PairingMismatch(_))));
    }

    #[test]
    fn membership_examples() {
        let f = lat(&[vec![0]]);
        let m = image_membership(&f, &phi(&[vec![0]], &[0])).unwrap();
        assert_eq!(m.char.unwrap().coeffs(), &ints(&[0])[..]);
        let q = phi(&[vec![0]], &[0]).with_kernel_hom(ints(&[-1]));
        assert_eq!(image_membership(&f, &q).unwrap().char.unwrap().coeffs(), &ints(&[2])[..]);

        let f = lat(&[vec![2, 0], vec![0, 0]]);
        let q = phi(&[vec![2, 0], vec![0, 0]], &[0, 0]).with_kernel_hom(ints(&[-3]));
        assert_eq!(q.gen_values(), &[QmodZ::from_frac(1, 4)]);
        let m = image_membership(&f, &q).unwrap();
        assert!(m.member);
        assert_eq!(m.char.unwrap().coeffs(), &ints(&[0, 6])[..]);
    }

    #[test]
    fn cokernel_reports() {
        assert_eq!(cokernel_report(&lat(&[vec![2]])).divisible_rank, 0);
        assert_eq!(cokernel_report(&lat(&[vec![2, 0], vec![0, 0]])).divisible_rank, 1);
    }
}
