//! Universal series: exact fits of the multiplicative generating series
//! against surface covariates, the change of variables relating them, and
//! the identities tying both families together.

pub mod interp;
pub mod tables;
pub mod verify;

use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::{solve_exact, TruncatedSeries};
use crate::chern::{c2n_series, KClass, Pruning};
use crate::chi::{BundleSpec, LocalizationTable, ToricSurface};
use crate::error::{FitError, LinearError};
use crate::fock::Fock;
use crate::scalar::{rat, Rat};
use crate::surface::{CohClass, SurfaceModel};
use crate::Series;

pub use interp::{interpolate_in_rank, interpolate_series_in_rank, RankSample};
pub use verify::*;

/// Which family a [`UniversalSet`] belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetKind {
    /// `V_s, W_s, X_s, Y_s, Z_s` for top Chern classes, indexed by `s`.
    C2n,
    /// `A_r, B_r` for Euler characteristics, indexed by `r`.
    Chi,
    /// `g_r, f_r, A_r, B_r` fitted without the closed forms for `g, f`.
    ChiFull,
}

impl SetKind {
    pub fn names(&self) -> &'static [&'static str] {
        match self {
            SetKind::C2n => &["V", "W", "X", "Y", "Z"],
            SetKind::Chi => &["A", "B"],
            SetKind::ChiFull => &["g", "f", "A", "B"],
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct UniversalSet {
    pub kind: SetKind,
    /// `s` for [`SetKind::C2n`], `r` otherwise.
    pub rank: i64,
    pub series: Vec<Series>,
}

impl UniversalSet {
    pub fn order(&self) -> usize {
        self.series.first().map_or(0, Series::order)
    }

    pub fn get(&self, name: &str) -> Option<&Series> {
        let i = self.kind.names().iter().position(|n| *n == name)?;
        self.series.get(i)
    }

    pub fn named(&self) -> impl Iterator<Item = (&'static str, &Series)> {
        self.kind.names().iter().copied().zip(&self.series)
    }
}

/// `[c_2, χ(L), χ(O)/2, c_1·K - K²/2, K²]`.
pub fn c2n_covariates(model: &SurfaceModel, l: &CohClass, c2: &Rat) -> Vec<Rat> {
    let mut row = vec![c2.clone()];
    row.extend(chi_covariates(model, l));
    row
}

/// `[χ(L), χ(O)/2, L·K - K²/2, K²]`.
pub fn chi_covariates(model: &SurfaceModel, l: &CohClass) -> Vec<Rat> {
    let k2 = model.k_squared();
    let lk = model.pair(l, model.canonical());
    vec![
        model.chi_line_bundle(l),
        model.chi_o() / rat(2),
        lk - &k2 / rat(2),
        k2,
    ]
}

/// A surface with a determinant class and second Chern number. The rank is
/// chosen at fit time.
#[derive(Clone)]
pub struct C2nDatapoint {
    pub fock: Arc<Fock>,
    pub c1: CohClass,
    pub c2: Rat,
}

impl C2nDatapoint {
    pub fn new(fock: Arc<Fock>, c1: CohClass, c2: Rat) -> Self {
        C2nDatapoint { fock, c1, c2 }
    }

    pub fn model(&self) -> &SurfaceModel {
        self.fock.model()
    }

    pub fn covariates(&self) -> Vec<Rat> {
        c2n_covariates(self.model(), &self.c1, &self.c2)
    }

    pub fn class(&self, rank: i64) -> KClass {
        KClass::with_c2(self.model(), rank, self.c1.clone(), self.c2.clone())
    }

    pub fn label(&self) -> String {
        let coords: Vec<String> = self.model().divisor_coords(&self.c1).iter().map(Rat::to_string).collect();
        format!("{} L=({}) c2={}", self.model().name(), coords.join(","), self.c2)
    }
}

/// A model with a two-dimensional `H^2`, intersection form the identity and
/// `K = (4, 2)`. It is not a geometric surface but the operator calculus and
/// the universal formula only see its intersection numbers.
pub fn formal_test_surface() -> SurfaceModel {
    SurfaceModel::formal(
        "formal",
        vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)]],
        vec![rat(4), rat(2)],
    )
    .expect("identity form is nondegenerate")
}

/// Five datapoints with independent covariates, then two redundant ones.
pub fn default_datapoints() -> Vec<C2nDatapoint> {
    let p2 = Arc::new(Fock::new(Arc::new(SurfaceModel::p2())));
    let q = Arc::new(Fock::new(Arc::new(SurfaceModel::p1xp1())));
    let formal = Arc::new(Fock::new(Arc::new(formal_test_surface())));
    let on = |f: &Arc<Fock>, coords: &[i64], c2: i64| {
        let coords: Vec<Rat> = coords.iter().map(|&c| rat(c)).collect();
        let c1 = f.model().divisor(&coords).expect("coordinates match b2");
        C2nDatapoint::new(f.clone(), c1, rat(c2))
    };
    vec![
        on(&p2, &[0], 0),
        on(&p2, &[1], 0),
        on(&p2, &[2], 0),
        on(&p2, &[0], 1),
        on(&q, &[1, 2], 0),
        on(&p2, &[1], 2),
        on(&formal, &[1, 0], 1),
    ]
}

/// Result of a fit, with the raw series it was fitted from.
#[derive(Clone, Debug)]
pub struct FitReport {
    pub set: UniversalSet,
    pub labels: Vec<String>,
    pub data: Vec<Series>,
    /// Number of (datapoint, order) residuals that were checked to vanish.
    pub residual_checks: usize,
}

/// Solve `Σ_j cov[i][j] log(U_j) = log(data_i)` order by order.
fn fit_logs(covariates: &[Vec<Rat>], logs: &[Series], order: usize) -> Result<(Vec<Series>, usize), FitError> {
    let unknowns = covariates.first().map_or(0, Vec::len);
    if covariates.len() < unknowns {
        return Err(FitError::TooFewDatapoints { needed: unknowns, have: covariates.len() });
    }
    let mut coeffs = vec![vec![rat(0); order + 1]; unknowns];
    #[allow(clippy::needless_range_loop)]
    for n in 1..=order {
        let rhs: Vec<Rat> = logs.iter().map(|l| l.coeff(n).clone()).collect();
        let x = solve_exact(covariates, &rhs).map_err(|e| match e {
            LinearError::Inconsistent { row, residual } => FitError::Residual { order: n, datapoint: row, residual },
            source => FitError::Linear { order: n, source },
        })?;
        for (j, v) in x.into_iter().enumerate() {
            coeffs[j][n] = v;
        }
    }
    let series = coeffs
        .into_iter()
        .map(|c| TruncatedSeries::new(c, order).exp())
        .collect::<Result<Vec<_>, _>>()?;
    Ok((series, (covariates.len() - unknowns) * order))
}

/// Fit `data_i = Π_j U_j^{cov[i][j]}` for the series `U_j`. Returns them
/// with the number of redundant (datapoint, order) residuals checked.
pub fn fit_series(covariates: &[Vec<Rat>], data: &[Series], order: usize) -> Result<(Vec<Series>, usize), FitError> {
    let logs = data.iter().map(Series::log).collect::<Result<Vec<_>, _>>()?;
    fit_logs(covariates, &logs, order)
}

/// `V_s, …, Z_s` through `w^order` from top Chern class computations.
pub fn fit_c2n(s: i64, points: &[C2nDatapoint], order: usize) -> Result<FitReport, FitError> {
    let data = points
        .par_iter()
        .map(|p| c2n_series(&p.fock, &p.class(s), order, Pruning::Auto))
        .collect::<Result<Vec<_>, _>>()?;
    let covariates: Vec<Vec<Rat>> = points.iter().map(C2nDatapoint::covariates).collect();
    let (series, residual_checks) = fit_series(&covariates, &data, order)?;
    Ok(FitReport {
        set: UniversalSet { kind: SetKind::C2n, rank: s, series },
        labels: points.iter().map(C2nDatapoint::label).collect(),
        data,
        residual_checks,
    })
}

/// Fits for several ranks, in parallel.
pub fn fit_c2n_ranks(ranks: &[i64], points: &[C2nDatapoint], order: usize) -> Result<Vec<FitReport>, FitError> {
    ranks.par_iter().map(|&s| fit_c2n(s, points, order)).collect()
}

/// `O(d) ± (|r - 1|)·O` on the given surface: rank `r`, determinant `O(d)`.
pub fn bundle_with_det(surface: ToricSurface, r: i64, degree: &[i64]) -> BundleSpec {
    let zero = vec![0; surface.degree_len()];
    let mut summands = vec![(1, degree.to_vec())];
    let sign = if r >= 1 { 1 } else { -1 };
    for _ in 0..(r - 1).abs() {
        summands.push((sign, zero.clone()));
    }
    BundleSpec::new(surface, summands).expect("degree shape matches surface")
}

/// Four independent determinants, then two redundant ones.
pub fn default_chi_datapoints(r: i64) -> Vec<BundleSpec> {
    use ToricSurface::*;
    vec![
        bundle_with_det(P2, r, &[0]),
        bundle_with_det(P2, r, &[1]),
        bundle_with_det(P1xP1, r, &[1, 2]),
        bundle_with_det(P1xP1, r, &[0, 0]),
        bundle_with_det(P2, r, &[2]),
        bundle_with_det(P1xP1, r, &[2, 1]),
    ]
}

fn bundle_covariates(bundle: &BundleSpec) -> Vec<Rat> {
    let model = bundle.surface.model();
    let coords: Vec<Rat> = bundle.det_degree().iter().map(|&d| rat(d)).collect();
    let l = model.divisor(&coords).expect("degree shape matches surface");
    chi_covariates(&model, &l)
}

/// The closed forms of `g_r` and `f_r`.
pub fn closed_g_f(r: i64, order: usize) -> (Series, Series) {
    use crate::algebra::{binomial_series, BinomialKind};
    (binomial_series(BinomialKind::G, r, order), binomial_series(BinomialKind::F, r, order))
}

#[derive(Clone, Debug)]
pub struct ChiFitReport {
    /// `A_r, B_r`, fitted with `g_r, f_r` fixed to their closed forms.
    pub set: UniversalSet,
    /// `g_r, f_r, A_r, B_r`, all four fitted.
    pub full: UniversalSet,
    pub labels: Vec<String>,
    pub data: Vec<Series>,
    pub residual_checks: usize,
}

impl ChiFitReport {
    /// Whether the unconstrained fit reproduces the closed forms.
    pub fn closed_forms_agree(&self) -> bool {
        let (g, f) = closed_g_f(self.set.rank, self.set.order());
        self.full.get("g") == Some(&g)
            && self.full.get("f") == Some(&f)
            && self.full.get("A") == self.set.get("A")
            && self.full.get("B") == self.set.get("B")
    }
}

/// `A_r, B_r` through `z^order` from localization on toric surfaces.
pub fn fit_chi(r: i64, bundles: &[BundleSpec], table: &LocalizationTable) -> Result<ChiFitReport, FitError> {
    for (index, b) in bundles.iter().enumerate() {
        if b.rank() != r {
            return Err(FitError::WrongRank { index, expected: r, got: b.rank() });
        }
    }
    let order = table.order();
    let data = bundles.par_iter().map(|b| table.series(b)).collect::<Result<Vec<_>, _>>()?;
    let logs = data.iter().map(Series::log).collect::<Result<Vec<_>, _>>()?;
    let covariates: Vec<Vec<Rat>> = bundles.iter().map(bundle_covariates).collect();

    let (full, checks_full) = fit_logs(&covariates, &logs, order)?;

    let (g, f) = closed_g_f(r, order);
    let (log_g, log_f) = (g.log()?, f.log()?);
    let reduced: Vec<Series> = logs
        .iter()
        .zip(&covariates)
        .map(|(l, c)| l - &(&log_g.scale(&c[0]) + &log_f.scale(&c[1])))
        .collect();
    let ab_cov: Vec<Vec<Rat>> = covariates.iter().map(|c| c[2..].to_vec()).collect();
    let (ab, checks_ab) = fit_logs(&ab_cov, &reduced, order)?;

    Ok(ChiFitReport {
        set: UniversalSet { kind: SetKind::Chi, rank: r, series: ab },
        full: UniversalSet { kind: SetKind::ChiFull, rank: r, series: full },
        labels: bundles.iter().map(|b| format!("{} {}", b.surface.name(), b)).collect(),
        data,
        residual_checks: checks_full + checks_ab,
    })
}

/// Localization data covering [`default_chi_datapoints`].
pub fn default_localization(order: usize, seed: u64) -> Result<LocalizationTable, FitError> {
    Ok(LocalizationTable::new(&[ToricSurface::P2, ToricSurface::P1xP1], order, seed)?)
}

pub fn fit_chi_ranks(ranks: &[i64], table: &LocalizationTable) -> Result<Vec<ChiFitReport>, FitError> {
    ranks.par_iter().map(|&r| fit_chi(r, &default_chi_datapoints(r), table)).collect()
}
