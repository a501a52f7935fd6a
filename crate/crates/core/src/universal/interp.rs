//! Recovering rank dependence: the coefficients of the universal series are
//! polynomials in the rank, so finitely many ranks determine them.

use crate::algebra::{interpolate, Poly, TruncatedSeries};
use crate::error::FitError;
use crate::scalar::{rat, Rat};
use crate::{PolySeries, Series};

/// A value known at an integer rank.
pub type RankSample = (i64, Rat);

/// The polynomial of degree `<= max_degree` through the first
/// `max_degree + 1` samples, checked against every remaining sample.
pub fn interpolate_in_rank(samples: &[RankSample], max_degree: usize) -> Result<Vec<Rat>, FitError> {
    let needed = max_degree + 1;
    if samples.len() < needed {
        return Err(FitError::TooFewDatapoints { needed, have: samples.len() });
    }
    let points: Vec<(Rat, Rat)> = samples[..needed].iter().map(|(x, y)| (rat(*x), y.clone())).collect();
    let mut coeffs: Vec<Rat> = interpolate(&points).map_err(|source| FitError::Linear { order: max_degree, source })?;
    for (r, y) in &samples[needed..] {
        let x = rat(*r);
        let value = coeffs.iter().rev().fold(rat(0), |acc, c| acc * &x + c);
        if &value != y {
            return Err(FitError::Interpolation { index: max_degree, rank: *r, residual: value - y });
        }
    }
    while coeffs.len() > 1 && coeffs.last() == Some(&rat(0)) {
        coeffs.pop();
    }
    Ok(coeffs)
}

/// Interpolate every coefficient of a family of series indexed by rank.
/// `max_degree(k)` bounds the degree of the `k`-th coefficient.
pub fn interpolate_series_in_rank(
    family: &[(i64, &Series)],
    order: usize,
    max_degree: impl Fn(usize) -> usize,
) -> Result<PolySeries, FitError> {
    let mut coeffs = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let samples: Vec<RankSample> = family.iter().map(|(x, s)| (*x, s.coeff(k).clone())).collect();
        let c = interpolate_in_rank(&samples, max_degree(k)).map_err(|e| match e {
            FitError::Interpolation { rank, residual, .. } => FitError::Interpolation { index: k, rank, residual },
            e => e,
        })?;
        coeffs.push(Poly::from_univariate(&c));
    }
    Ok(TruncatedSeries::new(coeffs, order))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_a_cubic_and_rejects_a_quartic() {
        let f = |x: i64| rat(2 * x * x * x - x + 5);
        let samples: Vec<RankSample> = (-3..=3).map(|x| (x, f(x))).collect();
        assert_eq!(interpolate_in_rank(&samples, 3).unwrap(), vec![rat(5), rat(-1), rat(0), rat(2)]);
        let g: Vec<RankSample> = (-3..=3i64).map(|x| (x, rat(x.pow(4)))).collect();
        assert!(matches!(interpolate_in_rank(&g, 3), Err(FitError::Interpolation { .. })));
        assert!(matches!(interpolate_in_rank(&g[..3], 3), Err(FitError::TooFewDatapoints { .. })));
    }
}
