//! Gauss sums and the isomorphism decision for quadratic functions.
//!
//! Two functions `q`, `q'` on `T + (Q/Z)^s` are compared through their invariants (divisible
//! rank, content of the kernel homomorphism, group structure, radical, pairing and defect
//! statistics, Gauss sum) and then by a pruned search for the torsion component of an
//! isomorphism. A returned witness is always checked against both functions.

mod gauss;
mod oracle;
mod search;
mod table;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use gauss::{gauss_sum, gauss_sum_bounded};
pub use oracle::{
    brute_force_isomorphic, brute_force_isomorphic_with, enumerate_pairings, enumerate_refinements,
    OracleConfig,
};

use crate::error::{Error, Result};
use crate::exact::{smith_normal_form, solve_integer_system, CyclotomicNumber, IntMatrix, QmodZ};
use crate::torsion::{
    normalize, pullback, Element, FiniteAbelianGroup, GroupIso, Radical, StructuredQuadratic,
};
use search::{Outcome, Search, Stage};
use table::{natural_den, ValueTable};

/// Size limits: `max_eval_order` bounds element-by-element evaluation (Gauss sums,
/// verification), `max_search_order` bounds the isomorphism search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_eval_order: u64,
    pub max_search_order: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_eval_order: 10_000, max_search_order: 512 }
    }
}

impl Bounds {
    /// The same limit for every operation.
    pub fn uniform(limit: u64) -> Self {
        Bounds { max_eval_order: limit, max_search_order: limit }
    }
}

/// The invariant that separates two non-isomorphic functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Obstruction {
    DivisibleRank,
    KernelContent,
    Group,
    Radical,
    Pairing,
    Defect,
    Gauss,
    Refinement,
}

impl Obstruction {
    pub fn as_str(self) -> &'static str {
        match self {
            Obstruction::DivisibleRank => "divisible_rank",
            Obstruction::KernelContent => "kernel_content",
            Obstruction::Group => "group",
            Obstruction::Radical => "radical",
            Obstruction::Pairing => "pairing",
            Obstruction::Defect => "defect",
            Obstruction::Gauss => "gauss",
            Obstruction::Refinement => "refinement",
        }
    }
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoDecision {
    Isomorphic(GroupIso),
    NotIsomorphic(Obstruction),
}

impl IsoDecision {
    pub fn witness(self) -> Option<GroupIso> {
        match self {
            IsoDecision::Isomorphic(psi) => Some(psi),
            IsoDecision::NotIsomorphic(_) => None,
        }
    }
}

/// Everything the decision needs about one function, computed once.
#[derive(Clone, Debug)]
pub struct InvariantBundle {
    original: StructuredQuadratic,
    normalized: StructuredQuadratic,
    to_normal: GroupIso,
    from_normal: GroupIso,
    radical: Radical,
    gauss: CyclotomicNumber,
    kernel_content: BigInt,
    table: ValueTable,
    gauss_key: Vec<BigInt>,
    self_pairs: Vec<u64>,
    defects: Vec<u64>,
    radical_value_order: u64,
}

impl InvariantBundle {
    pub fn new(q: &StructuredQuadratic, bounds: Bounds) -> Result<Self> {
        let (normalized, to_normal) = normalize(q);
        Self::from_normalized(q, normalized, to_normal, bounds)
    }

    fn from_normalized(
        q: &StructuredQuadratic,
        normalized: StructuredQuadratic,
        to_normal: GroupIso,
        bounds: Bounds,
    ) -> Result<Self> {
        let limit = bounds.max_search_order.min(bounds.max_eval_order);
        let table = ValueTable::new(&normalized, natural_den(&normalized), limit)?;
        let gauss = gauss::gauss_from_table(&table);
        let gauss_key = gauss.reduced_at(table.den);
        let mut self_pairs: Vec<u64> = (0..table.size).map(|x| table.pair(x, x)).collect();
        self_pairs.sort_unstable();
        let mut defects: Vec<u64> = (0..table.size).map(|x| table.defect(x)).collect();
        defects.sort_unstable();
        let radical = normalized.radical_restriction();
        let radical_value_order = radical
            .values
            .iter()
            .fold(1u64, |acc, v| acc.lcm(&v.order().to_u64().expect("small denominator")));
        let from_normal = to_normal.inverse();
        Ok(InvariantBundle {
            original: q.clone(),
            kernel_content: q.kernel_content(),
            normalized,
            to_normal,
            from_normal,
            radical,
            gauss,
            table,
            gauss_key,
            self_pairs,
            defects,
            radical_value_order,
        })
    }

    pub fn original(&self) -> &StructuredQuadratic {
        &self.original
    }

    pub fn normalized(&self) -> &StructuredQuadratic {
        &self.normalized
    }

    /// Iso from the original group onto the normalized one.
    pub fn to_normal(&self) -> &GroupIso {
        &self.to_normal
    }

    pub fn orders(&self) -> &[u64] {
        self.normalized.group().orders()
    }

    pub fn pairing(&self) -> &[Vec<QmodZ>] {
        self.normalized.pairing().matrix()
    }

    pub fn defect(&self) -> Vec<QmodZ> {
        self.normalized.homogeneity_defect().torsion
    }

    pub fn radical(&self) -> &Radical {
        &self.radical
    }

    /// Gauss sum of the torsion part.
    pub fn gauss(&self) -> &CyclotomicNumber {
        &self.gauss
    }

    pub fn kernel_content(&self) -> &BigInt {
        &self.kernel_content
    }
}

/// `Some(psi)` with `psi^* q' = q` when the functions are isomorphic.
pub fn is_isomorphic(q: &StructuredQuadratic, q2: &StructuredQuadratic) -> Result<Option<GroupIso>> {
    decide_isomorphism(q, q2, Bounds::default()).map(IsoDecision::witness)
}

pub fn decide_isomorphism(
    q: &StructuredQuadratic,
    q2: &StructuredQuadratic,
    bounds: Bounds,
) -> Result<IsoDecision> {
    if let Some(ob) = cheap_obstruction(q, q2) {
        return Ok(IsoDecision::NotIsomorphic(ob));
    }
    let (n1, nu1) = normalize(q);
    let (n2, nu2) = normalize(q2);
    if n1.group() != n2.group() {
        return Ok(IsoDecision::NotIsomorphic(Obstruction::Group));
    }
    let a = InvariantBundle::from_normalized(q, n1, nu1, bounds)?;
    let b = InvariantBundle::from_normalized(q2, n2, nu2, bounds)?;
    decide_bundles(&a, &b, bounds)
}

fn cheap_obstruction(q: &StructuredQuadratic, q2: &StructuredQuadratic) -> Option<Obstruction> {
    if q.divisible_rank() != q2.divisible_rank() {
        Some(Obstruction::DivisibleRank)
    } else if q.kernel_content() != q2.kernel_content() {
        Some(Obstruction::KernelContent)
    } else {
        None
    }
}

pub fn decide_bundles(a: &InvariantBundle, b: &InvariantBundle, bounds: Bounds) -> Result<IsoDecision> {
    if let Some(ob) = cheap_obstruction(&a.original, &b.original) {
        return Ok(IsoDecision::NotIsomorphic(ob));
    }
    if a.orders() != b.orders() {
        return Ok(IsoDecision::NotIsomorphic(Obstruction::Group));
    }
    let g = &a.kernel_content;
    let exact = g.is_zero();
    if a.radical.orders != b.radical.orders || (exact && a.radical_value_order != b.radical_value_order) {
        return Ok(IsoDecision::NotIsomorphic(Obstruction::Radical));
    }
    if a.self_pairs != b.self_pairs {
        return Ok(IsoDecision::NotIsomorphic(Obstruction::Pairing));
    }
    if exact && a.defects != b.defects {
        return Ok(IsoDecision::NotIsomorphic(Obstruction::Defect));
    }
    if exact && a.gauss_key != b.gauss_key {
        return Ok(IsoDecision::NotIsomorphic(Obstruction::Gauss));
    }

    let orders = a.orders();
    let gcd_with = |m: BigInt| -> Vec<u64> {
        orders
            .iter()
            .map(|&n| m.gcd(&BigInt::from(n)).to_u64().expect("divides a group order"))
            .collect()
    };
    let g_gcd = gcd_with(g.clone());
    let g2_gcd = gcd_with(g * 2);
    match Search::new(&a.table, &b.table, &g_gcd, &g2_gcd).run() {
        Outcome::Exhausted(stage) => Ok(IsoDecision::NotIsomorphic(match stage {
            Stage::Pairing => Obstruction::Pairing,
            Stage::Defect => Obstruction::Defect,
            Stage::Refinement => Obstruction::Refinement,
        })),
        Outcome::Found { images, alpha } => {
            let phi = assemble(a, b, &images, alpha)?;
            let psi = b.from_normal.compose(&phi)?.compose(&a.to_normal)?;
            if !verify_witness(&a.original, &b.original, &psi, bounds)? {
                return Err(Error::Internal("assembled isomorphism does not match the functions".into()));
            }
            Ok(IsoDecision::Isomorphic(psi))
        }
    }
}

fn coords_matrix(table: &ValueTable, images: &[usize]) -> IntMatrix {
    let k = table.rank();
    let mut m = IntMatrix::zeros(k, images.len());
    for (j, &y) in images.iter().enumerate() {
        for (i, &c) in table.coords_of(y).iter().enumerate() {
            m.set(i, j, BigInt::from(c));
        }
    }
    m
}

/// The iso between the normalized functions found by the search.
fn assemble(a: &InvariantBundle, b: &InvariantBundle, images: &[usize], alpha: Option<usize>) -> Result<GroupIso> {
    let src = a.normalized.group().clone();
    let dst = b.normalized.group().clone();
    let s = a.normalized.divisible_rank();
    let k = src.rank();
    let matrix = coords_matrix(&b.table, images);
    let torsion_only = GroupIso::new(src.clone(), dst.clone(), matrix.clone(), IntMatrix::identity(0), Vec::new())?;

    if let Some(alpha) = alpha {
        let p = pullback(&torsion_only, &b.normalized.torsion_part())?;
        let sigma = fundamental_automorphism(&p, &Element::torsion(a.table.coords_of(alpha).to_vec()))?;
        let composed = torsion_only.compose(&sigma)?;
        let kernel = if a.kernel_content.is_zero() {
            IntMatrix::identity(s)
        } else {
            kernel_matrix_between(a.normalized.kernel_hom(), b.normalized.kernel_hom(), &a.kernel_content)?
        };
        return GroupIso::new(src, dst, composed.matrix().clone(), kernel, vec![vec![QmodZ::zero(); k]; s]);
    }

    let g = &a.kernel_content;
    if g.is_zero() {
        return GroupIso::new(src, dst, matrix, IntMatrix::identity(s), vec![vec![QmodZ::zero(); k]; s]);
    }
    let w = a.normalized.kernel_hom();
    let w2 = b.normalized.kernel_hom();
    let kernel = kernel_matrix_between(w, w2, g)?;

    // w2 = g w'' with w'' primitive; y with w''.y = 1
    let primitive: Vec<BigInt> = w2.iter().map(|x| x / g).collect();
    let y = solve_integer_system(&IntMatrix::from_big_rows(&[primitive])?, &[BigInt::one()])?
        .ok_or_else(|| Error::Internal("primitive vector has no dual vector".into()))?;
    let den = a.table.den;
    let mut mixing = vec![vec![QmodZ::zero(); k]; s];
    for j in 0..k {
        let n = src.orders()[j];
        let chi = (a.table.gen_q[j] + den - b.table.q[images[j]]) % den;
        let c = chi / (den / n);
        let kj = solve_linear_mod(&(g % BigInt::from(n)), c, n)
            .ok_or_else(|| Error::Internal("correction outside the reachable characters".into()))?;
        for (i, yi) in y.iter().enumerate() {
            mixing[i][j] = QmodZ::from_big(yi * BigInt::from(kj), BigInt::from(n));
        }
    }
    GroupIso::new(src, dst, matrix, kernel, mixing)
}

/// Smallest `k` in `[0, n)` with `g k = c mod n`.
fn solve_linear_mod(g: &BigInt, c: u64, n: u64) -> Option<u64> {
    let g = g.to_u64()? % n;
    (0..n).find(|&k| ((g as u128 * k as u128) % n as u128) as u64 == c % n)
}

/// `K` in `GL_s(Z)` with `K^T w2 = w`, both of content `g`.
fn kernel_matrix_between(w: &[BigInt], w2: &[BigInt], g: &BigInt) -> Result<IntMatrix> {
    let r = reduce_to_axis(w, g)?;
    let r2 = reduce_to_axis(w2, g)?;
    let r_inv = r.unimodular_inverse().ok_or_else(|| Error::Internal("reduction is not unimodular".into()))?;
    Ok((&r_inv * &r2).transpose())
}

/// Unimodular `R` with `R w = g e_1`.
fn reduce_to_axis(w: &[BigInt], g: &BigInt) -> Result<IntMatrix> {
    let col = IntMatrix::from_columns(w.len(), &[w.to_vec()])?;
    let smith = smith_normal_form(&col);
    let mut u = smith.u;
    let first = &u.row(0).iter().zip(w).fold(BigInt::zero(), |acc, (a, b)| acc + a * b);
    if first.is_negative() {
        u.negate_row(0);
    }
    debug_assert_eq!(u.mul_vec(w)[0], *g);
    Ok(u)
}

/// Checks `psi^* q2 = q` structurally and, within the evaluation bound, pointwise on the
/// torsion part.
pub fn verify_witness(
    q: &StructuredQuadratic,
    q2: &StructuredQuadratic,
    psi: &GroupIso,
    bounds: Bounds,
) -> Result<bool> {
    if psi.source() != q.group() || psi.target() != q2.group() {
        return Ok(false);
    }
    if pullback(psi, q2)? != *q {
        return Ok(false);
    }
    if q.group().order_within(bounds.max_eval_order).is_some() {
        let s = q.divisible_rank();
        for x in q.group().elements() {
            let e = Element::new(x, vec![QmodZ::zero(); s]);
            if q.evaluate(&e)? != q2.evaluate(&psi.apply(&e)?)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The automorphism `sigma = Id + n(-) alpha` with `n(x) / 2 = b(alpha, x)`, which satisfies
/// `q o sigma = alpha . q` whenever `2 alpha = 0` and `q(alpha) = 0`.
pub fn fundamental_automorphism(q: &StructuredQuadratic, alpha: &Element) -> Result<GroupIso> {
    let value = q.evaluate(alpha)?;
    let group = q.group();
    let doubled_zero = group.scale(2, &alpha.torsion).iter().all(|&c| c == 0)
        && alpha.divisible.iter().all(|v| v.mul_i64(2).is_zero());
    if !doubled_zero {
        return Err(Error::Precondition("alpha must satisfy 2 alpha = 0".into()));
    }
    if !value.is_zero() {
        return Err(Error::Precondition(format!("q(alpha) = {value}, expected 0")));
    }
    let k = group.rank();
    let s = q.divisible_rank();
    let half = QmodZ::from_frac(1, 2);
    let n: Vec<u64> = (0..k)
        .map(|j| u64::from(q.pairing().pair(&alpha.torsion, &group.generator(j)) == half))
        .collect();
    let mut matrix = IntMatrix::identity(k);
    for j in 0..k {
        for i in 0..k {
            let v = matrix.get(i, j) + BigInt::from(n[j] * alpha.torsion[i]);
            matrix.set(i, j, v);
        }
    }
    let mixing = (0..s)
        .map(|i| (0..k).map(|j| alpha.divisible[i].mul_i64(n[j] as i64)).collect())
        .collect();
    let sigma = GroupIso::new(group.clone(), group.clone(), matrix, IntMatrix::identity(s), mixing)?;

    if !sigma.compose(&sigma)?.is_identity() {
        return Err(Error::Internal("sigma is not an involution".into()));
    }
    let acted = q.act(alpha)?;
    if !verify_witness(&acted, q, &sigma, Bounds::default())? {
        return Err(Error::Internal("q o sigma differs from alpha . q".into()));
    }
    Ok(sigma)
}

/// All `alpha` in the torsion part with `2 alpha = 0` and `q(alpha) = 0`.
pub fn admissible_alphas(q: &StructuredQuadratic, bound: u64) -> Result<Vec<Element>> {
    let table = ValueTable::new(q, natural_den(q), bound)?;
    let s = q.divisible_rank();
    Ok((0..table.size)
        .filter(|&x| table.elem_order[x] <= 2 && table.q[x] == 0)
        .map(|x| Element::new(table.coords_of(x).to_vec(), vec![QmodZ::zero(); s]))
        .collect())
}

/// Every group with cyclic factors of order at least 2 and total order `n`, as ordered
/// factorizations.
pub fn cyclic_decompositions(n: u64) -> Vec<FiniteAbelianGroup> {
    fn go(n: u64, prefix: &mut Vec<u64>, out: &mut Vec<FiniteAbelianGroup>) {
        if n == 1 {
            out.push(FiniteAbelianGroup::new(prefix.clone()).expect("factors exceed 1"));
            return;
        }
        for d in 2..=n {
            if n.is_multiple_of(d) {
                prefix.push(d);
                go(n / d, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut out);
    out
}
