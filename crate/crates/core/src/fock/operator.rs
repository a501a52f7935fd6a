//! Words in Nakajima operators.
//!
//! An [`OperatorSum`] is a finite linear combination of words
//! `q_{n1}(b1) q_{n2}(b2) ... q_{nk}(bk)` over basis classes, kept unreduced.
//! Words act right to left. [`OperatorSum::normal_ordered`] rewrites a sum
//! into the canonical basis of creators (descending) followed by annihilators
//! (descending), using only the Heisenberg relation.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::scalar::{ratio, Rat};
use crate::surface::{CohClass, SurfaceModel};

/// `q_n(b)` with `n != 0` and `b` a basis index.
pub type Letter = (i32, u16);
pub type Word = Vec<Letter>;

#[derive(Clone, Debug, PartialEq, Default)]
pub struct OperatorSum {
    terms: BTreeMap<Word, Rat>,
}

impl OperatorSum {
    pub fn zero() -> Self {
        OperatorSum::default()
    }

    pub fn identity() -> Self {
        let mut s = Self::zero();
        s.add_term(Vec::new(), Rat::one());
        s
    }

    /// `q_n(α)`, expanded over the basis. `q_0` is the zero operator.
    pub fn q(n: i32, alpha: &CohClass) -> Self {
        let mut s = Self::zero();
        if n == 0 {
            return s;
        }
        for (b, c) in alpha.support() {
            s.add_term(vec![(n, b as u16)], c.clone());
        }
        s
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &[Letter]) -> Rat {
        self.terms.get(w).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, w: Word, c: Rat) {
        if c.is_zero() || w.iter().any(|&(n, _)| n == 0) {
            return;
        }
        let entry = self.terms.entry(w);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = Self::zero();
        for (w, v) in &self.terms {
            out.add_term(w.clone(), v * c);
        }
        out
    }

    /// Composition `self ∘ other` (other acts first).
    pub fn compose(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_term(w, ca * cb);
            }
        }
        out
    }

    /// Commutator `[self, other]`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.compose(other).add(&other.compose(self).scale(&-Rat::one()))
    }

    /// Derivative of every word by the Leibniz rule, with each `q_n(α)`
    /// replaced by `(n/2) Σ_ν q_ν q_{n-ν} δ(α) + (n(|n|-1)/2) q_n(Kα)`.
    /// The `ν` sum is restricted to `|ν|, |n-ν| <= window`.
    pub fn derivative(&self, model: &SurfaceModel, window: i32) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            for (pos, &(n, x)) in w.iter().enumerate() {
                for (replacement, rc) in letter_derivative(model, n, x as usize, window) {
                    let mut nw = Vec::with_capacity(w.len() + 1);
                    nw.extend_from_slice(&w[..pos]);
                    nw.extend(replacement);
                    nw.extend_from_slice(&w[pos + 1..]);
                    out.add_term(nw, c * &rc);
                }
            }
        }
        out
    }

    /// Rewrite into normal-ordered words (creators first, each block sorted
    /// by descending index then basis).
    pub fn normal_ordered(&self, model: &SurfaceModel) -> Self {
        let mut memo: HashMap<Word, Vec<(Word, Rat)>> = HashMap::new();
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            for (nw, nc) in normal_order_word(w, model, &mut memo) {
                out.add_term(nw, c * &nc);
            }
        }
        out
    }
}

fn order_key(l: &Letter) -> (bool, std::cmp::Reverse<i32>, std::cmp::Reverse<u16>) {
    (l.0 < 0, std::cmp::Reverse(l.0), std::cmp::Reverse(l.1))
}

/// `[q_n(b_x), q_m(b_y)] = n δ_{n+m} ∫ b_x b_y`.
pub fn bracket(model: &SurfaceModel, a: Letter, b: Letter) -> Rat {
    if a.0 + b.0 != 0 {
        return Rat::zero();
    }
    Rat::from_integer(a.0.into()) * model.pairing(a.1 as usize, b.1 as usize)
}

fn normal_order_word(
    w: &Word,
    model: &SurfaceModel,
    memo: &mut HashMap<Word, Vec<(Word, Rat)>>,
) -> Vec<(Word, Rat)> {
    if let Some(r) = memo.get(w) {
        return r.clone();
    }
    let inversion = (0..w.len().saturating_sub(1)).find(|&i| order_key(&w[i]) > order_key(&w[i + 1]));
    let result = match inversion {
        None => vec![(w.clone(), Rat::one())],
        Some(i) => {
            // x y = y x + [x, y]
            let mut swapped = w.clone();
            swapped.swap(i, i + 1);
            let mut acc = normal_order_word(&swapped, model, memo);
            let c = bracket(model, w[i], w[i + 1]);
            if !c.is_zero() {
                let mut shorter = w.clone();
                shorter.drain(i..=i + 1);
                for (nw, nc) in normal_order_word(&shorter, model, memo) {
                    acc.push((nw, nc * &c));
                }
            }
            acc
        }
    };
    memo.insert(w.clone(), result.clone());
    result
}

fn letter_derivative(model: &SurfaceModel, n: i32, x: usize, window: i32) -> Vec<(Word, Rat)> {
    let mut out = Vec::new();
    let half_n = ratio(n as i64, 2);
    for nu in -window..=window {
        let rest = n - nu;
        if nu == 0 || rest == 0 || rest.abs() > window {
            continue;
        }
        for (a, b, c) in model.basis_diagonal(x) {
            out.push((vec![(nu, *a as u16), (rest, *b as u16)], &half_n * c));
        }
    }
    let k_coeff = ratio(n as i64 * (n.abs() as i64 - 1), 2);
    if !k_coeff.is_zero() {
        let kx = model.cup(model.canonical(), &model.basis(x));
        for (y, c) in kx.support() {
            out.push((vec![(n, y as u16)], &k_coeff * c));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn normal_order_uses_heisenberg_relation() {
        let s = SurfaceModel::p2();
        let pt = s.point_index() as u16;
        // q_{-1}(1) q_1(pt) = q_1(pt) q_{-1}(1) - 1
        let mut op = OperatorSum::zero();
        op.add_term(vec![(-1, 0), (1, pt)], rat(1));
        let n = op.normal_ordered(&s);
        assert_eq!(n.coeff(&[(1, pt), (-1, 0)]), rat(1));
        assert_eq!(n.coeff(&[]), rat(-1));
        assert_eq!(n.len(), 2);
    }

    #[test]
    fn q_zero_is_zero() {
        let s = SurfaceModel::p2();
        assert!(OperatorSum::q(0, &s.one()).is_empty());
    }

    #[test]
    fn point_derivative_matches_quadratic_formula() {
        // q_1'(pt) = 1/2 Σ_ν q_ν(pt) q_{1-ν}(pt)
        let s = SurfaceModel::p1xp1();
        let pt = s.point_index() as u16;
        let d = OperatorSum::q(1, &s.point()).derivative(&s, 3);
        for nu in -2..=3 {
            if nu == 0 || nu == 1 {
                continue;
            }
            assert_eq!(d.coeff(&[(nu, pt), (1 - nu, pt)]), ratio(1, 2));
        }
        assert_eq!(d.len(), 4);
    }
}
