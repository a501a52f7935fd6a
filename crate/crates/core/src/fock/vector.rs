use std::collections::BTreeMap;

use crate::scalar::Scalar;
use crate::surface::SurfaceModel;

/// One creation symbol `q_m(b)` with `m >= 1` and `b` a basis index.
pub type Factor = (u32, u16);

/// A normal monomial `q_{m1}(b1) ... q_{mk}(bk) 1`, stored as a sorted multiset.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<Factor>);

impl Monomial {
    pub fn vacuum() -> Self {
        Monomial(Vec::new())
    }

    pub fn from_factors(mut factors: Vec<Factor>) -> Self {
        factors.sort_unstable();
        Monomial(factors)
    }

    pub fn factors(&self) -> &[Factor] {
        &self.0
    }

    pub fn conformal_degree(&self) -> usize {
        self.0.iter().map(|&(m, _)| m as usize).sum()
    }

    pub fn algebraic_degree(&self, model: &SurfaceModel) -> u32 {
        self.0
            .iter()
            .map(|&(m, b)| m - 1 + model.degree(b as usize))
            .sum()
    }

    pub fn with(&self, f: Factor) -> Self {
        let mut v = self.0.clone();
        let pos = v.partition_point(|x| *x < f);
        v.insert(pos, f);
        Monomial(v)
    }

    pub fn without(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v.remove(i);
        Monomial(v)
    }

    pub fn without_pair(&self, i: usize, j: usize) -> Self {
        debug_assert!(i < j);
        let mut v = self.0.clone();
        v.remove(j);
        v.remove(i);
        Monomial(v)
    }
}

/// A finite linear combination of normal monomials.
#[derive(Clone, Debug, PartialEq)]
pub struct FockVector<R> {
    terms: BTreeMap<Monomial, R>,
}

impl<R: Scalar> Default for FockVector<R> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<R: Scalar> FockVector<R> {
    pub fn zero() -> Self {
        FockVector { terms: BTreeMap::new() }
    }

    pub fn vacuum() -> Self {
        Self::monomial(Monomial::vacuum(), R::one())
    }

    pub fn monomial(m: Monomial, c: R) -> Self {
        let mut v = Self::zero();
        v.add_term(m, c);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &R)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> R {
        self.terms.get(m).cloned().unwrap_or_else(R::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &R) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v.clone() * c.clone());
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn map<S: Scalar>(&self, f: impl Fn(&R) -> S) -> FockVector<S> {
        let mut out = FockVector::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Drop monomials of conformal degree above `cap`.
    pub fn truncate(&self, cap: usize) -> Self {
        FockVector {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.conformal_degree() <= cap)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn conformal_part(&self, n: usize) -> Self {
        FockVector {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.conformal_degree() == n)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn algebraic_part(&self, k: u32, model: &SurfaceModel) -> Self {
        FockVector {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.algebraic_degree(model) == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn max_conformal_degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::conformal_degree).max()
    }
}
