//! The Fock space of the Hilbert schemes of points, with the Nakajima
//! operators, the boundary operator `𝔡` and the derivative calculus.
//!
//! `𝔡` is multiplication by `c_1(O^{[n]})`. On a normal monomial it acts by
//! replacing each factor `q_l(b)` with
//! `(l/2) Σ_{0<i<l} q_i q_{l-i} δ(b) + (l(l-1)/2) q_l(K b)` and each unordered
//! pair of factors `q_{l1}(b) q_{l2}(b')` with `-l1 l2 q_{l1+l2}(b b')`.
//! The derivative `X' = [𝔡, X]` of an operator then never has to be written
//! out as an infinite word sum.

pub mod operator;
pub mod oracle;
pub mod vector;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use crate::error::FockError;
use crate::scalar::{binomial_int, ratio, Rat, Scalar};
use crate::surface::{CohClass, SurfaceModel};

pub use operator::{Letter, OperatorSum, Word};
pub use oracle::{monomial_integral_oracle, OracleLetter};
pub use vector::{Factor, FockVector, Monomial};

type DerivKey = (i32, usize, CohClass, i32);

/// Operator engine bound to one surface model.
#[derive(Debug)]
pub struct Fock {
    model: Arc<SurfaceModel>,
    // basis index -> K·b_x over the basis
    k_times: Vec<Vec<(u16, Rat)>>,
    memo: Mutex<HashMap<DerivKey, Arc<OperatorSum>>>,
}

impl Fock {
    pub fn new(model: Arc<SurfaceModel>) -> Self {
        let k_times = (0..model.dim())
            .map(|x| {
                model
                    .cup(model.canonical(), &model.basis(x))
                    .support()
                    .map(|(y, c)| (y as u16, c.clone()))
                    .collect()
            })
            .collect();
        Fock {
            model,
            k_times,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn model(&self) -> &SurfaceModel {
        &self.model
    }

    pub fn model_arc(&self) -> Arc<SurfaceModel> {
        self.model.clone()
    }

    /// `q_m(α) v` for any `m`; `q_0` gives zero.
    pub fn q<R: Scalar>(&self, m: i32, alpha: &CohClass, v: &FockVector<R>) -> FockVector<R> {
        let mut out = FockVector::zero();
        for (b, c) in alpha.support() {
            let part = self.letter(m, b as u16, v);
            out.add_scaled(&part, &R::from_rat(c));
        }
        out
    }

    /// One basis letter `q_m(b_x)`.
    pub fn letter<R: Scalar>(&self, m: i32, x: u16, v: &FockVector<R>) -> FockVector<R> {
        let mut out = FockVector::zero();
        if m > 0 {
            for (mono, c) in v.terms() {
                out.add_term(mono.with((m as u32, x)), c.clone());
            }
        } else if m < 0 {
            let l = (-m) as u32;
            for (mono, c) in v.terms() {
                for (pos, &(lm, b)) in mono.factors().iter().enumerate() {
                    if lm != l {
                        continue;
                    }
                    let pairing = self.model.pairing(x as usize, b as usize);
                    if pairing.is_zero() {
                        continue;
                    }
                    let coef = Rat::from_integer(m.into()) * pairing;
                    out.add_term(mono.without(pos), c.clone() * R::from_rat(&coef));
                }
            }
        }
        out
    }

    /// Apply an operator sum; each word acts right to left. Monomials that
    /// can no longer come back under `cap` are dropped along the way.
    pub fn apply<R: Scalar>(&self, op: &OperatorSum, v: &FockVector<R>, cap: usize) -> FockVector<R> {
        let mut out = FockVector::zero();
        for (word, c) in op.terms() {
            let w = self.apply_word(word, v, cap);
            out.add_scaled(&w, &R::from_rat(c));
        }
        out.truncate(cap)
    }

    fn apply_word<R: Scalar>(&self, word: &[Letter], v: &FockVector<R>, cap: usize) -> FockVector<R> {
        // remaining[i] = total annihilation still available left of position i
        let mut remaining = vec![0usize; word.len() + 1];
        for i in 0..word.len() {
            let m = word[i].0;
            remaining[i + 1] = remaining[i] + if m < 0 { (-m) as usize } else { 0 };
        }
        let mut cur = v.clone();
        for (i, &(m, x)) in word.iter().enumerate().rev() {
            cur = self.letter(m, x, &cur);
            if cur.is_zero() {
                break;
            }
            let bound = cap + remaining[i];
            if cur.max_conformal_degree().unwrap_or(0) > bound {
                cur = cur.truncate(bound);
            }
        }
        cur
    }

    /// Multiplication by `c_1` of the tautological bundle of `O_S`.
    pub fn apply_d<R: Scalar>(&self, v: &FockVector<R>) -> FockVector<R> {
        let model = &*self.model;
        let mut out = FockVector::zero();
        for (mono, c) in v.terms() {
            let fs = mono.factors();
            for (pos, &(l, x)) in fs.iter().enumerate() {
                if l >= 2 {
                    let rest = mono.without(pos);
                    let half = ratio(l as i64, 2);
                    for i in 1..l {
                        for (a, b, dc) in model.basis_diagonal(x as usize) {
                            let m = rest.with((i, *a as u16)).with((l - i, *b as u16));
                            out.add_term(m, c.clone() * R::from_rat(&(&half * dc)));
                        }
                    }
                    let kc = ratio(l as i64 * (l as i64 - 1), 2);
                    for (y, kv) in &self.k_times[x as usize] {
                        out.add_term(rest.with((l, *y)), c.clone() * R::from_rat(&(&kc * kv)));
                    }
                }
                for (pos2, &(l2, x2)) in fs.iter().enumerate().skip(pos + 1) {
                    let prod = model.basis_product(x as usize, x2 as usize);
                    if prod.is_zero() {
                        continue;
                    }
                    let rest = mono.without_pair(pos, pos2);
                    let pc = crate::scalar::rat(-(l as i64 * l2 as i64));
                    for (y, pv) in prod.support() {
                        out.add_term(rest.with((l + l2, y as u16)), c.clone() * R::from_rat(&(&pc * pv)));
                    }
                }
            }
        }
        out
    }

    /// `[v, 𝔡 v, 𝔡² v, ...]`, stopping before the first zero vector.
    pub fn d_powers<R: Scalar>(&self, v: &FockVector<R>) -> Vec<FockVector<R>> {
        let mut out = Vec::new();
        let mut cur = v.clone();
        while !cur.is_zero() {
            let next = self.apply_d(&cur);
            out.push(cur);
            cur = next;
        }
        out
    }

    /// `Σ_ν coeffs[ν] q_1^{(ν)}(α) v`, where `powers = d_powers(v)`.
    ///
    /// Uses `q^{(ν)} = Σ_j C(ν,j) 𝔡^j q (-𝔡)^{ν-j}` and a Horner pass in `j`.
    pub fn derivative_combination<R: Scalar>(
        &self,
        coeffs: &[R],
        alpha: &CohClass,
        powers: &[FockVector<R>],
    ) -> FockVector<R> {
        if powers.is_empty() || coeffs.is_empty() {
            return FockVector::zero();
        }
        let xs: Vec<FockVector<R>> = powers.iter().map(|y| self.q(1, alpha, y)).collect();
        // 𝔡 is nilpotent on H_{n+1} of order at most 2n+3.
        let top_n = powers[0].max_conformal_degree().unwrap_or(0) + 1;
        let jmax = (coeffs.len() - 1).min(2 * top_n);
        let mut ws = Vec::with_capacity(jmax + 1);
        for j in 0..=jmax {
            let mut w = FockVector::zero();
            for (i, x) in xs.iter().enumerate() {
                let Some(c) = coeffs.get(i + j) else { break };
                if c.is_zero() {
                    continue;
                }
                let mut b = binomial_int((i + j) as i64, j as u64);
                if i % 2 == 1 {
                    b = -b;
                }
                w.add_scaled(x, &(c.clone() * R::from_rat(&b)));
            }
            ws.push(w);
        }
        let mut acc = ws.pop().unwrap_or_default();
        while let Some(w) = ws.pop() {
            acc = self.apply_d(&acc);
            acc.add_assign(&w);
        }
        acc
    }

    /// `q_1^{(k)}(α) v`.
    pub fn derivative_action<R: Scalar>(&self, k: usize, alpha: &CohClass, v: &FockVector<R>) -> FockVector<R> {
        let mut coeffs = vec![R::zero(); k + 1];
        coeffs[k] = R::one();
        self.derivative_combination(&coeffs, alpha, &self.d_powers(v))
    }

    /// `q_1^{(k)}(α)` as an explicit word sum, normal ordered after every
    /// step, with creation and annihilation indices bounded by `window`.
    pub fn q_derivative(&self, k: usize, alpha: &CohClass, window: i32) -> Arc<OperatorSum> {
        self.q_index_derivative(1, k, alpha, window)
    }

    /// `q_m^{(k)}(α)` as an explicit word sum.
    pub fn q_index_derivative(&self, m: i32, k: usize, alpha: &CohClass, window: i32) -> Arc<OperatorSum> {
        let key = (m, k, alpha.clone(), window);
        if let Some(hit) = self.memo.lock().expect("memo poisoned").get(&key) {
            return hit.clone();
        }
        let value = if k == 0 {
            OperatorSum::q(m, alpha)
        } else {
            let prev = self.q_index_derivative(m, k - 1, alpha, window);
            prev.derivative(&self.model, window).normal_ordered(&self.model)
        };
        let value = Arc::new(value);
        // Racing fills compute the same value, so first writer wins.
        self.memo
            .lock()
            .expect("memo poisoned")
            .entry(key)
            .or_insert(value)
            .clone()
    }

    /// `∫_{S^[n]} v`: the coefficient of `q_1(pt)^n`.
    pub fn integrate_hilb<R: Scalar>(&self, v: &FockVector<R>, n: usize) -> Result<R, FockError> {
        let pt = self.model.point_index() as u16;
        let top = Monomial::from_factors(vec![(1, pt); n]);
        for (m, _) in v.terms() {
            if m.conformal_degree() != n {
                return Err(FockError::NotHomogeneous { expected: n });
            }
            if m.algebraic_degree(&self.model) as usize == 2 * n && *m != top {
                return Err(FockError::UnexpectedTopMonomial);
            }
        }
        Ok(v.coeff(&top))
    }

    /// `q_1(pt)^n 1`.
    pub fn point_class<R: Scalar>(&self, n: usize) -> FockVector<R> {
        let pt = self.model.point_index() as u16;
        FockVector::monomial(Monomial::from_factors(vec![(1, pt); n]), R::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn p2() -> Fock {
        Fock::new(Arc::new(SurfaceModel::p2()))
    }

    #[test]
    fn annihilator_examples() {
        let f = p2();
        let s = f.model().one();
        let p = f.model().point();
        let v = f.point_class::<Rat>(1);
        let r = f.q(-1, &s, &v);
        assert_eq!(r, FockVector::vacuum().scale(&rat(-1)));
        assert!(f.q(-1, &p, &v).is_zero());
        assert!(f.q(-2, &s, &FockVector::<Rat>::vacuum()).is_zero());
    }

    #[test]
    fn d_on_two_points() {
        // 𝔡 q_1(1)^2 1 / 2 = -q_2(1) 1 / 2
        let f = p2();
        let v = FockVector::monomial(Monomial::from_factors(vec![(1, 0), (1, 0)]), ratio(1, 2));
        let d = f.apply_d(&v);
        let want = FockVector::monomial(Monomial::from_factors(vec![(2, 0)]), ratio(-1, 2));
        assert_eq!(d, want);
    }

    #[test]
    fn integrate_points() {
        let f = p2();
        for n in 0..5 {
            assert_eq!(f.integrate_hilb(&f.point_class::<Rat>(n), n).unwrap(), rat(1));
        }
        let pt = f.model().point_index() as u16;
        let v = FockVector::<Rat>::monomial(Monomial::from_factors(vec![(2, pt), (1, pt)]), rat(1));
        assert_eq!(f.integrate_hilb(&v, 3).unwrap(), rat(0));
        assert!(f.integrate_hilb(&v, 2).is_err());
    }
}
