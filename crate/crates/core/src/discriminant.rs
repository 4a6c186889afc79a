//! The discriminant construction `(M, f, c) -> (M#/M, phi_{f,c})`.
//!
//! The group is stored split as `T + (Q/Z)^s`, where `T` is the discriminant group of the
//! nondegenerate quotient and `(Q/Z)^s = Ker f (x) Q/Z`. The split uses the section chosen by
//! [`split_nondegenerate`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{smith_normal_form, IntMatrix, QmodZ, Rational};
use crate::exact::rational::to_u64;
use crate::lattice::{split_nondegenerate, BilinearLattice, Splitting, Triple};
use crate::torsion::{mod_u64, Element, FiniteAbelianGroup, StructuredQuadratic, TorsionBilinear};

pub type DiscriminantElement = Element;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantGroup {
    orders: Vec<u64>,
    divisible_rank: usize,
    /// Generator representatives in `M_bar (x) Q`.
    gen_reps: Vec<Vec<Rational>>,
    splitting: Splitting,
    /// Rows of the Smith transform `U` of the quotient Gram matrix for the nontrivial factors.
    coord_rows: IntMatrix,
    gram: IntMatrix,
}

impl DiscriminantGroup {
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn divisible_rank(&self) -> usize {
        self.divisible_rank
    }

    pub fn gen_reps(&self) -> &[Vec<Rational>] {
        &self.gen_reps
    }

    pub fn splitting(&self) -> &Splitting {
        &self.splitting
    }

    pub fn kernel_basis(&self) -> &IntMatrix {
        &self.splitting.kernel
    }

    pub fn torsion_group(&self) -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(self.orders.clone()).expect("orders exceed 1")
    }

    /// Generator representatives lifted to `M (x) Q` through the section.
    pub fn lifted_gen_reps(&self) -> Vec<Vec<Rational>> {
        self.gen_reps.iter().map(|x| self.splitting.section.mul_rat_vec(x)).collect()
    }

    /// Representative in `M#` of an element.
    pub fn representative(&self, x: &Element) -> Vec<Rational> {
        let r = self.splitting.quotient_rank();
        let mut z = vec![Rational::zero(); r];
        for (c, g) in x.torsion.iter().zip(&self.gen_reps) {
            for (zi, gi) in z.iter_mut().zip(g) {
                *zi += gi * Rational::from_integer(BigInt::from(*c));
            }
        }
        z.extend(x.divisible.iter().map(|v| v.value().clone()));
        self.splitting.basis.mul_rat_vec(&z)
    }

    /// Coordinates of the class of `x in M#`.
    pub fn coordinates(&self, x: &[Rational]) -> Result<Element> {
        check_dual(&self.gram, x)?;
        let z = rat_mul(&self.splitting.basis_inv, x);
        let r = self.splitting.quotient_rank();
        let fbar_x = rat_mul(self.splitting.fbar.gram(), &z[..r]);
        let t = rat_mul(&self.coord_rows, &fbar_x);
        let torsion = t
            .iter()
            .zip(&self.orders)
            .map(|(v, &n)| {
                debug_assert!(v.is_integer());
                mod_u64(&v.to_integer(), n)
            })
            .collect();
        let divisible = z[r..].iter().map(|v| QmodZ::new(v.clone())).collect();
        Ok(Element { torsion, divisible })
    }
}

fn rat_mul(m: &IntMatrix, x: &[Rational]) -> Vec<Rational> {
    m.mul_rat_vec(x)
}

fn check_dual(gram: &IntMatrix, x: &[Rational]) -> Result<()> {
    if x.len() != gram.rows() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} for a lattice of rank {}",
            x.len(),
            gram.rows()
        )));
    }
    if gram.mul_rat_vec(x).iter().all(Rational::is_integer) {
        Ok(())
    } else {
        Err(Error::NotInDualLattice)
    }
}

pub fn discriminant_group(f: &BilinearLattice) -> Result<DiscriminantGroup> {
    let splitting = split_nondegenerate(f);
    let r = splitting.quotient_rank();
    let smith = smith_normal_form(splitting.fbar.gram());
    let diag = smith.diagonal();
    let keep: Vec<usize> = (0..r).filter(|&i| !diag[i].is_one()).collect();
    let orders = keep
        .iter()
        .map(|&i| to_u64(&diag[i], "invariant factor of the discriminant group"))
        .collect::<Result<Vec<_>>>()?;
    let gen_reps = keep
        .iter()
        .map(|&i| {
            smith
                .v
                .column(i)
                .into_iter()
                .map(|v| Rational::new(v, diag[i].clone()))
                .collect()
        })
        .collect();
    let coord_rows = smith.u.select_rows(keep.iter().copied());
    Ok(DiscriminantGroup {
        orders,
        divisible_rank: splitting.kernel_rank(),
        gen_reps,
        splitting,
        coord_rows,
        gram: f.gram().clone(),
    })
}

fn check_group(g: &DiscriminantGroup, f: &BilinearLattice) -> Result<()> {
    if &g.gram != f.gram() {
        return Err(Error::DimensionMismatch("discriminant group was computed from another lattice".into()));
    }
    Ok(())
}

/// `L_f` on the torsion generators.
pub fn linking_pairing(g: &DiscriminantGroup, f: &BilinearLattice) -> Result<Vec<Vec<QmodZ>>> {
    check_group(g, f)?;
    let fbar = &g.splitting.fbar;
    let k = g.orders.len();
    let mut b = vec![vec![QmodZ::zero(); k]; k];
    for i in 0..k {
        for j in i..k {
            let v = QmodZ::new(fbar.pair(&g.gen_reps[i], &g.gen_reps[j]));
            b[i][j] = v.clone();
            b[j][i] = v;
        }
    }
    Ok(b)
}

/// `phi_{f,c}` in split form, together with the group it lives on.
pub fn discriminant_with_group(t: &Triple) -> Result<(StructuredQuadratic, DiscriminantGroup)> {
    let g = discriminant_group(&t.lattice)?;
    let b = linking_pairing(&g, &t.lattice)?;
    let pairing = TorsionBilinear::new(g.torsion_group(), b)?;
    let gen_values = g
        .lifted_gen_reps()
        .iter()
        .map(|x| phi_unchecked(t, x))
        .collect();
    let kernel_values = g.splitting.kernel.transpose().mul_vec(t.char.coeffs());
    let two = BigInt::from(2);
    let kernel_hom = kernel_values
        .iter()
        .map(|v| {
            let (q, r) = v.div_rem(&two);
            if !r.is_zero() {
                return Err(Error::Internal("characteristic form is odd on the kernel".into()));
            }
            Ok(-q)
        })
        .collect::<Result<Vec<_>>>()?;
    let q = StructuredQuadratic::new(pairing, gen_values, kernel_hom)?;
    Ok((q, g))
}

pub fn discriminant_quadratic(t: &Triple) -> Result<StructuredQuadratic> {
    discriminant_with_group(t).map(|(q, _)| q)
}

fn phi_unchecked(t: &Triple, x: &[Rational]) -> QmodZ {
    let fxx = t.lattice.pair(x, x);
    let cx = t.char.eval(x);
    QmodZ::new((fxx - cx) / Rational::from_integer(BigInt::from(2)))
}

/// `phi_{f,c}([x]) = (f_Q(x, x) - c_Q(x)) / 2 mod Z` for `x in M#`.
pub fn evaluate_phi(t: &Triple, x: &[Rational]) -> Result<QmodZ> {
    check_dual(t.lattice.gram(), x)?;
    Ok(phi_unchecked(t, x))
}
