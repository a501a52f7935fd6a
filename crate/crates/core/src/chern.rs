//! Chern classes of tautological sheaves via Lehn's operator
//! `𝔠(u) = Σ_{k=0..2} Σ_ν binom(rk u - k, ν) q_1^{(ν)}(c_k(u))`.

use rayon::prelude::*;

use crate::algebra::TruncatedSeries;
use crate::error::FockError;
use crate::fock::{Fock, FockVector, OperatorSum};
use crate::scalar::{binomial_int, rat, Rat, Scalar};
use crate::surface::{CohClass, SurfaceModel};

/// A K-theory class on the surface, recorded by rank and Chern classes.
#[derive(Clone, Debug, PartialEq)]
pub struct KClass {
    pub rank: i64,
    pub c1: CohClass,
    pub c2: CohClass,
}

impl KClass {
    pub fn new(rank: i64, c1: CohClass, c2: CohClass) -> Self {
        KClass { rank, c1, c2 }
    }

    /// `O_p`: rank 0, `c_1 = 0`, `c_2 = -pt`.
    pub fn point_sheaf(model: &SurfaceModel) -> Self {
        KClass::new(0, model.zero_class(), model.point().scale(&rat(-1)))
    }

    /// Rank `s`, `c_1 = L`, `c_2 = m·pt`.
    pub fn with_c2(model: &SurfaceModel, rank: i64, c1: CohClass, m: Rat) -> Self {
        KClass::new(rank, c1, model.point().scale(&m))
    }

    pub fn c2_number(&self, model: &SurfaceModel) -> Rat {
        model.integrate(&self.c2)
    }

    pub fn classes(&self, model: &SurfaceModel) -> [CohClass; 3] {
        [model.one(), self.c1.clone(), self.c2.clone()]
    }

    /// Whether odd derivative terms may be dropped before integrating:
    /// `𝔠(u)` then only involves `q_1(S)` and derivatives of a point class.
    pub fn odd_pruning_applies(&self) -> bool {
        self.rank == 0 && self.c1.is_zero()
    }
}

/// `𝔠(u)` as three coefficient lists against `q_1^{(ν)}(c_k)`.
#[derive(Clone, Debug)]
pub struct ChernOperator {
    terms: Vec<(CohClass, Vec<Rat>)>,
}

impl ChernOperator {
    /// Coefficients for `ν <= max_nu`. With `prune`, odd `ν` are dropped.
    pub fn new(model: &SurfaceModel, u: &KClass, max_nu: usize, prune: bool) -> Self {
        let mut terms = Vec::new();
        for (k, class) in u.classes(model).into_iter().enumerate() {
            if class.is_zero() {
                continue;
            }
            let coeffs: Vec<Rat> = (0..=max_nu)
                .map(|nu| {
                    if prune && nu % 2 == 1 {
                        rat(0)
                    } else {
                        binomial_int(u.rank - k as i64, nu as u64)
                    }
                })
                .collect();
            terms.push((class, coeffs));
        }
        ChernOperator { terms }
    }

    pub fn terms(&self) -> &[(CohClass, Vec<Rat>)] {
        &self.terms
    }

    /// `𝔠(u) v`.
    pub fn apply<R: Scalar>(&self, fock: &Fock, v: &FockVector<R>) -> FockVector<R> {
        let powers = fock.d_powers(v);
        let parts: Vec<FockVector<R>> = self
            .terms
            .par_iter()
            .map(|(class, coeffs)| {
                let cs: Vec<R> = coeffs.iter().map(R::from_rat).collect();
                fock.derivative_combination(&cs, class, &powers)
            })
            .collect();
        let mut out = FockVector::zero();
        for p in &parts {
            out.add_assign(p);
        }
        out
    }

    /// The same operator as an explicit word sum, for small windows.
    pub fn to_operator_sum(&self, fock: &Fock, window: i32) -> OperatorSum {
        let mut out = OperatorSum::zero();
        for (class, coeffs) in &self.terms {
            for (nu, c) in coeffs.iter().enumerate() {
                if c == &rat(0) {
                    continue;
                }
                out = out.add(&fock.q_derivative(nu, class, window).scale(c));
            }
        }
        out
    }
}

fn max_nu(order: usize) -> usize {
    2 * order + 2
}

/// `c(u^{[n]})` for `n = 0..=order`, from `v_n = 𝔠(u) v_{n-1} / n`.
pub fn total_chern(fock: &Fock, u: &KClass, order: usize) -> Vec<FockVector<Rat>> {
    total_chern_with(fock, u, order, false)
}

fn total_chern_with(fock: &Fock, u: &KClass, order: usize, prune: bool) -> Vec<FockVector<Rat>> {
    let op = ChernOperator::new(fock.model(), u, max_nu(order), prune);
    let mut out = Vec::with_capacity(order + 1);
    let mut v = FockVector::vacuum();
    out.push(v.clone());
    for n in 1..=order {
        v = op.apply(fock, &v).scale(&Rat::new(1.into(), (n as i64).into()));
        out.push(v.clone());
    }
    out
}

/// How odd derivative pruning is used in [`c2n_series`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Pruning {
    /// Prune whenever it is valid for the input class.
    #[default]
    Auto,
    Off,
    /// Prune, recompute without pruning, and assert the results agree.
    Checked,
}

/// `Σ_n ∫_{S^[n]} c_{2n}(u^{[n]}) w^n` through `w^order`.
pub fn c2n_series(
    fock: &Fock,
    u: &KClass,
    order: usize,
    pruning: Pruning,
) -> Result<TruncatedSeries<Rat>, FockError> {
    let prune = pruning != Pruning::Off && u.odd_pruning_applies();
    let series = top_integrals(fock, &total_chern_with(fock, u, order, prune), order)?;
    if prune && pruning == Pruning::Checked {
        let full = top_integrals(fock, &total_chern_with(fock, u, order, false), order)?;
        assert_eq!(series, full, "odd-derivative pruning changed the result");
    }
    Ok(series)
}

fn top_integrals(
    fock: &Fock,
    classes: &[FockVector<Rat>],
    order: usize,
) -> Result<TruncatedSeries<Rat>, FockError> {
    let coeffs = classes
        .iter()
        .enumerate()
        .map(|(n, v)| fock.integrate_hilb(v, n))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TruncatedSeries::new(coeffs, order))
}

/// Catalan numbers from `C = 1 + w C^2`, computed by iteration.
pub fn catalan_numbers(order: usize) -> Vec<Rat> {
    let mut c = TruncatedSeries::<Rat>::one(order);
    let w = TruncatedSeries::<Rat>::var(order);
    for _ in 0..=order {
        c = &TruncatedSeries::one(order) + &(&w * &(&c * &c));
    }
    c.into_coeffs()
}

#[derive(Clone, Debug, PartialEq)]
pub struct CatalanRow {
    pub n: usize,
    pub expected: Rat,
    /// `(surface name, value)`
    pub values: Vec<(String, Rat)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CatalanReport {
    pub rows: Vec<CatalanRow>,
    pub first_mismatch: Option<usize>,
}

impl CatalanReport {
    pub fn pass(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// `c_{2n}(O_p^{[n]}) = (-1)^n C_n` on every given surface.
pub fn catalan_check(models: &[std::sync::Arc<SurfaceModel>], order: usize) -> Result<CatalanReport, FockError> {
    let catalan = catalan_numbers(order);
    let series: Vec<(String, TruncatedSeries<Rat>)> = models
        .par_iter()
        .map(|m| {
            let fock = Fock::new(m.clone());
            let u = KClass::point_sheaf(m);
            c2n_series(&fock, &u, order, Pruning::Auto).map(|s| (m.name().to_string(), s))
        })
        .collect::<Result<_, _>>()?;
    let mut rows = Vec::new();
    let mut first_mismatch = None;
    #[allow(clippy::needless_range_loop)]
    for n in 0..=order {
        let expected = if n % 2 == 0 { catalan[n].clone() } else { -catalan[n].clone() };
        let values: Vec<(String, Rat)> = series.iter().map(|(name, s)| (name.clone(), s.coeff(n).clone())).collect();
        if first_mismatch.is_none() && values.iter().any(|(_, v)| *v != expected) {
            first_mismatch = Some(n);
        }
        rows.push(CatalanRow { n, expected, values });
    }
    Ok(CatalanReport { rows, first_mismatch })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    #[test]
    fn catalan_numbers_from_recurrence() {
        let c: Vec<Rat> = catalan_numbers(6);
        let want = [1, 1, 2, 5, 14, 42, 132];
        for (a, b) in c.iter().zip(want) {
            assert_eq!(*a, rat(b));
        }
    }

    #[test]
    fn point_sheaf_operator_coefficients() {
        // k = 2 coefficients are binom(-2, ν) = (-1)^ν (ν+1)
        let m = SurfaceModel::p2();
        let op = ChernOperator::new(&m, &KClass::point_sheaf(&m), 4, false);
        assert_eq!(op.terms().len(), 2);
        let (class, cs) = &op.terms()[1];
        assert_eq!(*class, m.point().scale(&rat(-1)));
        assert_eq!(cs[3], rat(-4));
        // on -pt this is (-1)^{ν+1}(ν+1) q^{(ν)}(pt)
        for (nu, c) in cs.iter().enumerate() {
            let sign = if nu % 2 == 0 { -1 } else { 1 };
            assert_eq!(-c.clone(), rat(sign * (nu as i64 + 1)));
        }
    }

    #[test]
    fn first_chern_class_of_point_sheaf() {
        let m = Arc::new(SurfaceModel::p1xp1());
        let f = Fock::new(m.clone());
        let v = total_chern(&f, &KClass::point_sheaf(&m), 1);
        assert_eq!(v[0], FockVector::vacuum());
        assert_eq!(f.integrate_hilb(&v[1], 1).unwrap(), rat(-1));
    }
}
