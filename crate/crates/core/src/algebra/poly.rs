//! Sparse multivariate polynomials.
//!
//! Exponent vectors are stored with trailing zeros trimmed, so polynomials
//! built over different numbers of variables combine without a shared
//! context object. Variable names only matter for display and live in
//! [`PolyRing`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::{Rat, Scalar};

pub type Exponent = Vec<u32>;

fn trim(mut e: Exponent) -> Exponent {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<R> {
    terms: BTreeMap<Exponent, R>,
}

impl<R: Scalar> Poly<R> {
    pub fn constant(c: R) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Poly { terms }
    }

    /// The variable with index `i` (0-based).
    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Self::monomial(e, R::one())
    }

    pub fn monomial(exp: Exponent, c: R) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(trim(exp), c);
        }
        Poly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &R)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: &[u32]) -> R {
        self.terms
            .get(&trim(exp.to_vec()))
            .cloned()
            .unwrap_or_else(R::zero)
    }

    pub fn add_term(&mut self, exp: Exponent, c: R) {
        if c.is_zero() {
            return;
        }
        let exp = trim(exp);
        match self.terms.get_mut(&exp) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&exp);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == d)
    }

    /// The constant coefficient, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<R> {
        match self.terms.len() {
            0 => Some(R::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn scale_by(&self, c: &R) -> Self {
        let mut out = Poly::zero();
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = acc * self.clone();
        }
        acc
    }

    /// Evaluate at a point; missing coordinates are treated as zero.
    pub fn eval(&self, point: &[R]) -> R {
        let mut total = R::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                let x = point.get(i).cloned().unwrap_or_else(R::zero);
                for _ in 0..k {
                    t = t * x.clone();
                }
            }
            total = total + t;
        }
        total
    }

    /// Rename variables: variable `i` becomes variable `map[i]`.
    pub fn rename(&self, map: &[usize]) -> Self {
        let width = map.iter().copied().max().map_or(0, |m| m + 1);
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            let mut ne = vec![0u32; width];
            for (i, &k) in e.iter().enumerate() {
                ne[map[i]] += k;
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Coefficients of a univariate polynomial in variable 0, lowest first.
    pub fn univariate_coeffs(&self) -> Vec<R> {
        let deg = self.degree().unwrap_or(0) as usize;
        let mut out = vec![R::zero(); deg + 1];
        for (e, c) in &self.terms {
            assert!(e.len() <= 1, "polynomial is not univariate");
            let k = e.first().copied().unwrap_or(0) as usize;
            out[k] = c.clone();
        }
        out
    }

    pub fn from_univariate(coeffs: &[R]) -> Self {
        let mut out = Poly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            out.add_term(vec![k as u32], c.clone());
        }
        out
    }
}

impl<R: Scalar> Zero for Poly<R> {
    fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<R: Scalar> One for Poly<R> {
    fn one() -> Self {
        Poly::constant(R::one())
    }
}

impl<R: Scalar> Add for Poly<R> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl<R: Scalar> Sub for Poly<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<R: Scalar> Neg for Poly<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Poly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl<R: Scalar> Mul for Poly<R> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Self) -> Self {
        let mut out = Poly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let n = ea.len().max(eb.len());
                let e: Exponent = (0..n)
                    .map(|i| ea.get(i).copied().unwrap_or(0) + eb.get(i).copied().unwrap_or(0))
                    .collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<R: Scalar> Scalar for Poly<R> {
    fn from_rat(q: &Rat) -> Self {
        Poly::constant(R::from_rat(q))
    }

    fn try_inverse(&self) -> Option<Self> {
        self.as_constant()
            .and_then(|c| c.try_inverse())
            .map(Poly::constant)
    }

    fn scale(&self, q: &Rat) -> Self {
        self.scale_by(&R::from_rat(q))
    }
}

/// Display context for polynomials: the variable names.
#[derive(Clone, Debug)]
pub struct PolyRing {
    names: Vec<String>,
}

impl PolyRing {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        PolyRing {
            names: names.into_iter().map(Into::into).collect(),
        }
    }

    pub fn univariate(name: &str) -> Self {
        Self::new([name])
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn var(&self, name: &str) -> Option<Poly<Rat>> {
        self.names.iter().position(|n| n == name).map(Poly::var)
    }

    pub fn display<'a>(&'a self, p: &'a Poly<Rat>) -> PolyDisplay<'a> {
        PolyDisplay { ring: self, poly: p }
    }
}

pub struct PolyDisplay<'a> {
    ring: &'a PolyRing,
    poly: &'a Poly<Rat>,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        // highest total degree first
        let mut terms: Vec<_> = self.poly.terms().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| {
                    let name = self.ring.names.get(v).cloned().unwrap_or_else(|| format!("x{v}"));
                    if k == 1 {
                        name
                    } else {
                        format!("{name}^{k}")
                    }
                })
                .collect();
            let neg = c < &Rat::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{mag}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};

    type P = Poly<Rat>;

    #[test]
    fn square_of_sum() {
        let x = P::var(0);
        let y = P::var(1);
        let s = (x.clone() + y.clone()).pow(2);
        assert_eq!(s.coeff(&[1, 1]), rat(2));
        assert_eq!(s.coeff(&[2]), rat(1));
        assert_eq!(s.num_terms(), 3);
        assert!(s.is_homogeneous(2));
    }

    #[test]
    fn cancellation_removes_terms() {
        let x = P::var(0);
        let z = x.clone() - x;
        assert!(z.is_zero());
    }

    #[test]
    fn eval_and_rename() {
        let p = P::var(0) * P::var(1) + P::constant(ratio(1, 2));
        assert_eq!(p.eval(&[rat(2), rat(3)]), ratio(13, 2));
        let q = p.rename(&[2, 0]);
        assert_eq!(q.eval(&[rat(3), rat(0), rat(2)]), ratio(13, 2));
    }

    #[test]
    fn display_orders_by_degree() {
        let ring = PolyRing::univariate("s");
        let s = P::var(0);
        let p = s.clone() * s.clone().scale(&ratio(-1, 2)) + s.scale(&ratio(3, 2)) - P::one();
        assert_eq!(ring.display(&p).to_string(), "-1/2*s^2 + 3/2*s - 1");
    }
}
