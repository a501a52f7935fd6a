//! Univariate power series truncated at a fixed order.
//!
//! A series of order `N` stores exactly the coefficients of `x^0..=x^N`.
//! Binary operations demand equal orders; the `try_*` methods report a
//! mismatch as an error and the operator impls panic on it.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::AlgebraError;
use crate::scalar::{binomial_int, rat, Rat, Scalar};

#[derive(Clone, PartialEq, Debug)]
pub struct TruncatedSeries<R> {
    coeffs: Vec<R>,
}

impl<R: Scalar> TruncatedSeries<R> {
    /// Build a series of the given order; missing coefficients are zero and
    /// extra ones are dropped.
    pub fn new(mut coeffs: Vec<R>, order: usize) -> Self {
        coeffs.resize(order + 1, R::zero());
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(R::one(), order)
    }

    pub fn constant(c: R, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// The series `x`.
    pub fn var(order: usize) -> Self {
        Self::new(vec![R::zero(), R::one()], order)
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> R) -> Self {
        TruncatedSeries { coeffs: (0..=order).map(f).collect() }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &R {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        Self::new(self.coeffs[..=order].to_vec(), order)
    }

    /// Re-embed at a different order, padding with zeros when growing. Only
    /// meaningful when the caller knows the dropped or added tail is exact.
    pub fn with_order(&self, order: usize) -> Self {
        Self::new(self.coeffs.clone(), order)
    }

    pub fn map<S: Scalar>(&self, f: impl Fn(&R) -> S) -> TruncatedSeries<S> {
        TruncatedSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn scale(&self, c: &R) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    fn check_order(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.order() != other.order() {
            return Err(AlgebraError::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_order(other)?;
        Ok(TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_order(other)?;
        Ok(TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = vec![R::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_order(other)?;
        self.try_mul(&other.inverse()?)
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        let inv0 = self.coeffs[0]
            .try_inverse()
            .ok_or(AlgebraError::NonInvertibleConstant)?;
        let n = self.order();
        let mut out: Vec<R> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut acc = R::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc = acc + self.coeffs[j].clone() * out[k - j].clone();
                }
            }
            out.push(-(acc * inv0.clone()));
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Formal derivative. The result has order `N - 1` since the top
    /// coefficient of the derivative is not determined.
    pub fn derivative(&self) -> Self {
        let n = self.order();
        if n == 0 {
            return Self::zero(0);
        }
        TruncatedSeries {
            coeffs: (1..=n)
                .map(|k| self.coeffs[k].scale(&rat(k as i64)))
                .collect(),
        }
    }

    /// Formal antiderivative with the given constant; the order grows by one.
    pub fn integral(&self, constant: R) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(constant);
        for (k, a) in self.coeffs.iter().enumerate() {
            coeffs.push(a.scale(&Rat::new(1.into(), (k as i64 + 1).into())));
        }
        TruncatedSeries { coeffs }
    }

    pub fn log(&self) -> Result<Self, AlgebraError> {
        if !self.coeffs[0].is_one() {
            return Err(AlgebraError::ConstantTermNotOne("log"));
        }
        let n = self.order();
        let mut l = vec![R::zero(); n + 1];
        #[allow(clippy::needless_range_loop)]
        for m in 1..=n {
            // m a_m = sum_{k=1}^{m} k l_k a_{m-k}
            let mut acc = self.coeffs[m].scale(&rat(m as i64));
            for k in 1..m {
                if !l[k].is_zero() && !self.coeffs[m - k].is_zero() {
                    acc = acc - (l[k].clone() * self.coeffs[m - k].clone()).scale(&rat(k as i64));
                }
            }
            l[m] = acc.scale(&Rat::new(1.into(), (m as i64).into()));
        }
        Ok(TruncatedSeries { coeffs: l })
    }

    pub fn exp(&self) -> Result<Self, AlgebraError> {
        if !self.coeffs[0].is_zero() {
            return Err(AlgebraError::ConstantTermNotZero("exp"));
        }
        let n = self.order();
        let mut e = vec![R::zero(); n + 1];
        e[0] = R::one();
        for m in 1..=n {
            let mut acc = R::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc = acc + (self.coeffs[k].clone() * e[m - k].clone()).scale(&rat(k as i64));
                }
            }
            e[m] = acc.scale(&Rat::new(1.into(), (m as i64).into()));
        }
        Ok(TruncatedSeries { coeffs: e })
    }

    /// `self^e` for rational `e`, as `exp(e log self)`.
    pub fn pow(&self, e: &Rat) -> Result<Self, AlgebraError> {
        self.pow_scalar(&R::from_rat(e))
    }

    /// `self^e` for an exponent in the coefficient ring.
    pub fn pow_scalar(&self, e: &R) -> Result<Self, AlgebraError> {
        if !self.coeffs[0].is_one() {
            return Err(AlgebraError::ConstantTermNotOne("pow"));
        }
        self.log()?.scale(e).exp()
    }

    /// `self^k` by repeated multiplication; works for any constant term.
    pub fn powi(&self, k: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `outer(inner(x))`; `self` is the outer series.
    pub fn compose(&self, inner: &Self) -> Result<Self, AlgebraError> {
        self.check_order(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(AlgebraError::ConstantTermNotZero("compose"));
        }
        let n = self.order();
        let mut acc = Self::constant(self.coeffs[n].clone(), n);
        for k in (0..n).rev() {
            acc = acc.try_mul(inner)?;
            acc.coeffs[0] = acc.coeffs[0].clone() + self.coeffs[k].clone();
        }
        Ok(acc)
    }

    /// Compositional inverse of `a = a1 x + a2 x^2 + ...` with `a1` a unit,
    /// by Lagrange inversion: `[x^n] b = (1/n) [w^{n-1}] (w/a(w))^n`.
    pub fn reverse(&self) -> Result<Self, AlgebraError> {
        let n = self.order();
        if !self.coeffs[0].is_zero() {
            return Err(AlgebraError::ConstantTermNotZero("reverse"));
        }
        if n == 0 {
            return Ok(Self::zero(0));
        }
        if self.coeffs[1].try_inverse().is_none() {
            return Err(AlgebraError::NonUnitLinearTerm);
        }
        // a(w)/w to order n-1
        let quotient = TruncatedSeries::new(self.coeffs[1..].to_vec(), n - 1);
        let h = quotient.inverse()?;
        let mut out = vec![R::zero(); n + 1];
        let mut hp = TruncatedSeries::one(n - 1);
        #[allow(clippy::needless_range_loop)]
        for m in 1..=n {
            hp = hp.try_mul(&h)?;
            out[m] = hp.coeffs[m - 1].scale(&Rat::new(1.into(), (m as i64).into()));
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Evaluate as a polynomial (the truncation is taken literally).
    pub fn eval_poly(&self, x: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc * x.clone() + c.clone())
    }
}

impl<R: Scalar> Add for &TruncatedSeries<R> {
    type Output = TruncatedSeries<R>;
    fn add(self, rhs: Self) -> TruncatedSeries<R> {
        self.try_add(rhs).expect("series order mismatch")
    }
}

impl<R: Scalar> Sub for &TruncatedSeries<R> {
    type Output = TruncatedSeries<R>;
    fn sub(self, rhs: Self) -> TruncatedSeries<R> {
        self.try_sub(rhs).expect("series order mismatch")
    }
}

impl<R: Scalar> Mul for &TruncatedSeries<R> {
    type Output = TruncatedSeries<R>;
    fn mul(self, rhs: Self) -> TruncatedSeries<R> {
        self.try_mul(rhs).expect("series order mismatch")
    }
}

impl<R: Scalar> Neg for &TruncatedSeries<R> {
    type Output = TruncatedSeries<R>;
    fn neg(self) -> TruncatedSeries<R> {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl fmt::Display for TruncatedSeries<Rat> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rat::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

/// Both sides of the Lagrange–Bürmann identity for `f(z) = sum_n ([x^n] psi phi^n) z^n`.
#[derive(Clone, Debug)]
pub struct LagrangeForms<R> {
    /// Coefficients extracted directly from `psi * phi^n`.
    pub coefficient_form: TruncatedSeries<R>,
    /// `psi(w) / (phi(w) dz/dw)` with `w = z phi(w)`, expanded in `z`.
    pub closed_form: TruncatedSeries<R>,
}

impl<R: Scalar> LagrangeForms<R> {
    pub fn agree(&self) -> bool {
        self.coefficient_form == self.closed_form
    }
}

pub fn lagrange_transform<R: Scalar>(
    psi: &TruncatedSeries<R>,
    phi: &TruncatedSeries<R>,
) -> Result<LagrangeForms<R>, AlgebraError> {
    psi.check_order(phi)?;
    if !psi.coeff(0).is_one() || !phi.coeff(0).is_one() {
        return Err(AlgebraError::ConstantTermNotOne("lagrange_transform"));
    }
    let n = psi.order();

    let mut coefficient = Vec::with_capacity(n + 1);
    let mut acc = psi.clone();
    for k in 0..=n {
        coefficient.push(acc.coeff(k).clone());
        acc = acc.try_mul(phi)?;
    }

    // z(w) = w / phi(w), known to order n + 1 so that dz/dw is exact to order n.
    let phi_inv = phi.inverse()?;
    let mut z_of_w = vec![R::zero()];
    z_of_w.extend(phi_inv.coeffs.iter().cloned());
    let z_of_w = TruncatedSeries::new(z_of_w, n + 1);
    let dz_dw = z_of_w.derivative();
    let w_of_z = z_of_w.truncate(n).reverse()?;
    let in_w = psi.try_div(&phi.try_mul(&dz_dw)?)?;
    let closed = in_w.compose(&w_of_z)?;

    Ok(LagrangeForms {
        coefficient_form: TruncatedSeries::new(coefficient, n),
        closed_form: closed,
    })
}

/// Which of the two closed-form rank series to expand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinomialKind {
    /// `f_r(z) = sum_k binom((1 - r^2)(k - 1), k) z^k`
    F,
    /// `g_r(z) = sum_k binom(1 - (r^2 - 1)k, k) z^k / (1 - (r^2 - 1)k)`
    G,
}

pub fn binomial_series(kind: BinomialKind, r: i64, order: usize) -> TruncatedSeries<Rat> {
    let a = r * r - 1;
    TruncatedSeries::from_fn(order, |k| {
        let k = k as i64;
        match kind {
            BinomialKind::F => binomial_int(-a * (k - 1), k as u64),
            BinomialKind::G => {
                let top = 1 - a * k;
                binomial_int(top, k as u64) / rat(top)
            }
        }
    })
}
