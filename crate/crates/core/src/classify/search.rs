//! Depth-first search for a generator assignment `A: T -> T'` between two functions in
//! invariant-factor form, matching the pairing exactly and the defect modulo the corrections
//! reachable through the divisible part.

use super::table::ValueTable;

/// The first failing stage of an exhausted search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Stage {
    Pairing,
    Defect,
    Refinement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Outcome {
    /// Images of the source generators; `alpha` is set when the match needs a Fundamental
    /// Lemma correction by that 2-torsion element of the source.
    Found { images: Vec<usize>, alpha: Option<usize> },
    Exhausted(Stage),
}

pub(crate) struct Search<'a> {
    src: &'a ValueTable,
    dst: &'a ValueTable,
    /// `q - A^* q'` must vanish at generator `j` modulo `chi_step[j]`.
    chi_step: Vec<u64>,
    /// `d - A^* d'` must vanish at generator `j` modulo `d_step[j]`.
    d_step: Vec<u64>,
    use_defect: bool,
    candidates: Vec<Vec<usize>>,
    in_span: Vec<bool>,
    span: Vec<usize>,
    images: Vec<usize>,
    reached_leaf: bool,
    two_torsion: Vec<usize>,
}

impl<'a> Search<'a> {
    /// `g_gcd[j] = gcd(g, n_j)` and `g2_gcd[j] = gcd(2 g, n_j)` where `g` is the content of the
    /// kernel homomorphism (so `g = 0` gives `n_j`).
    pub fn new(src: &'a ValueTable, dst: &'a ValueTable, g_gcd: &[u64], g2_gcd: &[u64]) -> Self {
        debug_assert_eq!(src.orders, dst.orders);
        debug_assert_eq!(src.den, dst.den);
        let den = src.den;
        let chi_step = src.orders.iter().zip(g_gcd).map(|(&n, &h)| den / n * h).collect();
        let d_step = src.orders.iter().zip(g2_gcd).map(|(&n, &h)| den / n * h).collect();
        let two_torsion = (0..src.size).filter(|&x| src.elem_order[x] <= 2).collect();
        Search {
            src,
            dst,
            chi_step,
            d_step,
            use_defect: true,
            candidates: Vec::new(),
            in_span: vec![false; dst.size],
            span: Vec::new(),
            images: Vec::new(),
            reached_leaf: false,
            two_torsion,
        }
    }

    pub fn run(mut self) -> Outcome {
        if let Some(found) = self.explore() {
            return found;
        }
        if self.reached_leaf {
            return Outcome::Exhausted(Stage::Refinement);
        }
        self.use_defect = false;
        if self.explore_without_leaf_checks() {
            Outcome::Exhausted(Stage::Defect)
        } else {
            Outcome::Exhausted(Stage::Pairing)
        }
    }

    fn reset(&mut self) {
        let (src, dst) = (self.src, self.dst);
        let den = src.den;
        let dst_self: Vec<u64> = (0..dst.size).map(|y| dst.pair(y, y)).collect();
        let dst_defect: Vec<u64> = (0..dst.size).map(|y| dst.defect(y)).collect();
        self.candidates = (0..src.rank())
            .map(|j| {
                let n = src.orders[j];
                let e = src.generator(j);
                let (bjj, dj) = (src.b[j][j], src.defect(e));
                (0..dst.size)
                    .filter(|&y| {
                        dst.elem_order[y] == n
                            && dst_self[y] == bjj
                            && (!self.use_defect || (dj + den - dst_defect[y]).is_multiple_of(self.d_step[j]))
                    })
                    .collect()
            })
            .collect();
        self.in_span.iter_mut().for_each(|v| *v = false);
        self.in_span[0] = true;
        self.span = vec![0];
        self.images.clear();
    }

    fn explore(&mut self) -> Option<Outcome> {
        self.reset();
        let mut result = None;
        self.dfs(0, &mut |s| {
            s.reached_leaf = true;
            s.check_leaf()
        }, &mut result);
        result
    }

    fn explore_without_leaf_checks(&mut self) -> bool {
        self.reset();
        let mut result = None;
        self.dfs(0, &mut |_| Some(Outcome::Exhausted(Stage::Refinement)), &mut result);
        result.is_some()
    }

    fn dfs(
        &mut self,
        j: usize,
        leaf: &mut dyn FnMut(&mut Self) -> Option<Outcome>,
        result: &mut Option<Outcome>,
    ) {
        if j == self.src.rank() {
            *result = leaf(self);
            return;
        }
        let n = self.src.orders[j];
        for ci in 0..self.candidates[j].len() {
            let y = self.candidates[j][ci];
            if !self.pairs_match(j, y) || !self.independent(y, n) {
                continue;
            }
            let mark = self.span.len();
            self.extend_span(y, n);
            self.images.push(y);
            self.dfs(j + 1, leaf, result);
            self.images.pop();
            for &x in &self.span[mark..] {
                self.in_span[x] = false;
            }
            self.span.truncate(mark);
            if result.is_some() {
                return;
            }
        }
    }

    fn pairs_match(&self, j: usize, y: usize) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &yi)| self.dst.pair(yi, y) == self.src.b[i][j])
    }

    /// `m y` avoids the current span for `0 < m < n`.
    fn independent(&self, y: usize, n: u64) -> bool {
        let mut m = y;
        for _ in 1..n {
            if self.in_span[m] {
                return false;
            }
            m = self.dst.add(m, y);
        }
        true
    }

    fn extend_span(&mut self, y: usize, n: u64) {
        let base = self.span.len();
        let mut shift = y;
        for _ in 1..n {
            for i in 0..base {
                let x = self.dst.add(self.span[i], shift);
                self.in_span[x] = true;
                self.span.push(x);
            }
            shift = self.dst.add(shift, y);
        }
    }

    fn check_leaf(&self) -> Option<Outcome> {
        let (src, dst) = (self.src, self.dst);
        let den = src.den;
        let chi: Vec<u64> = self
            .images
            .iter()
            .enumerate()
            .map(|(j, &y)| (src.gen_q[j] + den - dst.q[y]) % den)
            .collect();
        if chi.iter().zip(&self.chi_step).all(|(&c, &s)| c % s == 0) {
            return Some(Outcome::Found { images: self.images.clone(), alpha: None });
        }
        if self.chi_step.iter().any(|&s| s != den) {
            return None;
        }
        // q = alpha . (A^* q') with 2 alpha = 0 and (A^* q')(alpha) = 0
        let image = src.image_table(dst, &self.images);
        self.two_torsion
            .iter()
            .copied()
            .find(|&a| {
                dst.q[image[a]] == 0
                    && (0..src.rank()).all(|j| src.pair(a, src.generator(j)) == chi[j])
            })
            .map(|a| Outcome::Found { images: self.images.clone(), alpha: Some(a) })
    }
}
