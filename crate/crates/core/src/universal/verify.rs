//! Identities between the two families of universal series, their small-rank
//! closed forms, and the Quot-scheme equality, recorded as ledger entries.

use std::sync::Arc;

use crate::algebra::TruncatedSeries;
use crate::chern::{c2n_series, KClass, Pruning};
use crate::chi::{BundleSpec, LocalizationTable, ToricSurface};
use crate::error::{AlgebraError, FitError};
use crate::fock::Fock;
use crate::scalar::{binomial_int, rat, ratio, Rat, Scalar};
use crate::surface::SurfaceModel;
use crate::Series;

use super::tables::{a_table, b_table};
use super::{closed_g_f, ChiFitReport, SetKind, UniversalSet};

/// One coefficient comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct LedgerEntry {
    pub identity: String,
    pub order: usize,
    pub lhs: Rat,
    pub rhs: Rat,
    pub pass: bool,
}

/// Compare two series coefficientwise for orders `1..=min(order)`.
pub fn compare(identity: &str, lhs: &Series, rhs: &Series) -> Vec<LedgerEntry> {
    let n = lhs.order().min(rhs.order());
    (1..=n)
        .map(|k| LedgerEntry {
            identity: identity.to_string(),
            order: k,
            lhs: lhs.coeff(k).clone(),
            rhs: rhs.coeff(k).clone(),
            pass: lhs.coeff(k) == rhs.coeff(k),
        })
        .collect()
}

pub fn all_pass(entries: &[LedgerEntry]) -> bool {
    entries.iter().all(|e| e.pass)
}

/// `w = z φ(w)` with `φ = V^e`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChangeOfVariables<R: Scalar> {
    pub phi: TruncatedSeries<R>,
    /// `z(w) = w / φ(w)`, one order beyond `φ`.
    pub z_of_w: TruncatedSeries<R>,
    pub dz_dw: TruncatedSeries<R>,
    pub w_of_z: TruncatedSeries<R>,
}

pub fn change_of_variables<R: Scalar>(v: &TruncatedSeries<R>, exponent: &R) -> Result<ChangeOfVariables<R>, AlgebraError> {
    let n = v.order();
    let phi = v.pow_scalar(exponent)?;
    let mut z = vec![R::zero()];
    z.extend(phi.inverse()?.into_coeffs());
    let z_of_w = TruncatedSeries::new(z, n + 1);
    let dz_dw = z_of_w.derivative();
    let w_of_z = z_of_w.truncate(n).reverse()?;
    Ok(ChangeOfVariables { phi, z_of_w, dz_dw, w_of_z })
}

/// The change of variables for `V_s`, exponent `2 - s`.
pub fn rank_change_of_variables(set: &UniversalSet) -> Result<ChangeOfVariables<Rat>, AlgebraError> {
    let v = set.get("V").expect("top Chern class set");
    change_of_variables(v, &rat(2 - set.rank))
}

/// `A_r, B_r` through `z^3` from the published tables.
pub fn printed_ab(r: i64) -> UniversalSet {
    UniversalSet { kind: SetKind::Chi, rank: r, series: vec![a_table().at(r), b_table().at(r)] }
}

/// The four identities between `V_s, …, Z_s` and `g_r, f_r, A_r, B_r`,
/// `r = s - 1`. `A, B` are compared through the smaller of the two orders.
pub fn verify_c1_c4(c2n: &UniversalSet, ab: &UniversalSet) -> Result<Vec<LedgerEntry>, AlgebraError> {
    let s = c2n.rank;
    let r = s - 1;
    assert_eq!(ab.rank, r, "A, B must be for r = s - 1");
    let n = c2n.order();
    let cv = rank_change_of_variables(c2n)?;
    let get = |name| c2n.get(name).expect("top Chern class set");
    let (g, f) = closed_g_f(r, n);
    let in_z = |x: &Series| x.compose(&cv.w_of_z);

    let mut out = Vec::new();
    let vw = get("V") * get("W");
    out.extend(compare(&format!("g_{r} = V_{s} W_{s}"), &g, &in_z(&vw)?));

    let denom = &cv.phi.powi(4) * &cv.dz_dw.powi(2);
    let xf = get("X").try_div(&denom)?;
    out.extend(compare(&format!("f_{r} = X_{s} / (phi^4 (dz/dw)^2)"), &f, &in_z(&xf)?));

    let m = n.min(ab.order());
    for (a, y) in [("A", "Y"), ("B", "Z")] {
        let lhs = ab.get(a).expect("A, B set").truncate(m);
        let rhs = in_z(get(y))?.truncate(m);
        out.extend(compare(&format!("{a}_{r} = {y}_{s}"), &lhs, &rhs));
    }
    Ok(out)
}

/// Number of identities in [`verify_c1_c4`] that failed.
pub fn falsified(entries: &[LedgerEntry]) -> Vec<&LedgerEntry> {
    entries.iter().filter(|e| !e.pass).collect()
}

/// `n`, `r` and `L` on a toric del Pezzo surface, with the derived rank
/// `s = r + 1`, Euler characteristic and second Chern number of the rank `s`
/// class whose top Chern class is compared with `χ(det F^[n])`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotSetup {
    pub surface: ToricSurface,
    pub r: i64,
    pub degree: Vec<i64>,
    pub n: usize,
}

impl QuotSetup {
    pub fn new(surface: ToricSurface, r: i64, degree: Vec<i64>, n: usize) -> Self {
        QuotSetup { surface, r, degree, n }
    }

    pub fn s(&self) -> i64 {
        self.r + 1
    }

    fn l(&self, model: &SurfaceModel) -> crate::surface::CohClass {
        let coords: Vec<Rat> = self.degree.iter().map(|&d| rat(d)).collect();
        model.divisor(&coords).expect("degree shape matches surface")
    }

    pub fn chi_l(&self) -> Rat {
        let model = self.surface.model();
        model.chi_line_bundle(&self.l(&model))
    }

    /// `n(r+1) - 2n + 1`.
    pub fn chi_v(&self) -> i64 {
        let n = self.n as i64;
        n * (self.r + 1) - 2 * n + 1
    }

    /// `χ(L) - (n-1)(r-1)`.
    pub fn c2(&self) -> Rat {
        self.chi_l() - rat((self.n as i64 - 1) * (self.r - 1))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuotOutcome {
    pub setup: QuotSetup,
    pub bundle: BundleSpec,
    /// `∫ c_{2n}` of the tautological sheaf of the rank `r + 1` class.
    pub lhs: Rat,
    /// `χ(det F^[n])`.
    pub rhs: Rat,
}

impl QuotOutcome {
    pub fn pass(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Compare both sides for one setup, with `F` given as a class of rank `r`
/// and determinant `O(L)`.
pub fn verify_quot(setup: &QuotSetup, bundle: &BundleSpec, table: &LocalizationTable) -> Result<QuotOutcome, FitError> {
    assert_eq!(bundle.rank(), setup.r, "bundle rank must be r");
    assert_eq!(bundle.det_degree(), setup.degree, "bundle determinant must be L");
    let model = Arc::new(setup.surface.model());
    let fock = Fock::new(model.clone());
    let u = KClass::with_c2(&model, setup.s(), setup.l(&model), setup.c2());
    let series = c2n_series(&fock, &u, setup.n, Pruning::Auto)?;
    let rhs = table.chi_det(bundle, setup.n)?;
    Ok(QuotOutcome { setup: setup.clone(), bundle: bundle.clone(), lhs: series.coeff(setup.n).clone(), rhs })
}

/// Several K-theory classes of rank `r` and determinant `O(degree)` built
/// from line bundles.
pub fn toric_decompositions(surface: ToricSurface, r: i64, degree: &[i64]) -> Vec<BundleSpec> {
    let zero = vec![0; surface.degree_len()];
    let shifted = |by: i64| degree.iter().map(|d| d + by).collect::<Vec<_>>();
    let unit: Vec<i64> = (0..surface.degree_len()).map(|_| 1).collect();
    let neg_unit: Vec<i64> = unit.iter().map(|x| -x).collect();
    let mut out = vec![super::bundle_with_det(surface, r, degree)];
    if r >= 2 {
        let mut s = vec![(1, shifted(-1)), (1, unit.clone())];
        s.extend(std::iter::repeat_n((1, zero.clone()), r as usize - 2));
        out.push(BundleSpec::new(surface, s).expect("shape"));
    }
    if r >= 2 {
        let mut s = vec![(1, shifted(1)), (1, neg_unit)];
        s.extend(std::iter::repeat_n((1, zero.clone()), r as usize - 2));
        out.push(BundleSpec::new(surface, s).expect("shape"));
    }
    if r >= 0 {
        // a virtual class: O(d+1) - O(1) + r O
        let mut v = vec![(1, shifted(1)), (-1, unit)];
        v.extend(std::iter::repeat_n((1, zero), r as usize));
        out.push(BundleSpec::new(surface, v).expect("shape"));
    }
    out
}

fn one_plus(x: &Series, c: i64) -> Series {
    &Series::one(x.order()) + &x.scale(&rat(c))
}

fn expect_one(name: &str, x: &Series, out: &mut Vec<LedgerEntry>) {
    out.extend(compare(name, &Series::one(x.order()), x));
}

/// Closed forms of `V_s, …, Z_s` for `s ∈ {-1, 0, 1, 2}`; other ranks in
/// `sets` are skipped.
pub fn small_rank_closed_forms(sets: &[UniversalSet]) -> Result<Vec<LedgerEntry>, AlgebraError> {
    let mut out = Vec::new();
    for set in sets.iter().filter(|s| s.kind == SetKind::C2n) {
        let n = set.order();
        let get = |name| set.get(name).expect("top Chern class set");
        let s = set.rank;
        match s {
            2 => {
                out.extend(compare("V_2 = 1 + w", &one_plus(&Series::var(n), 1), get("V")));
                for name in ["W", "X", "Y", "Z"] {
                    expect_one(&format!("{name}_2 = 1"), get(name), &mut out);
                }
            }
            1 => {
                for name in ["W", "X", "Y", "Z"] {
                    expect_one(&format!("{name}_1 = 1"), get(name), &mut out);
                }
                let cv = rank_change_of_variables(set)?;
                let z = Series::var(n);
                let geometric = Series::one(n).try_div(&one_plus(&z, -1))?;
                out.extend(compare("s=1: w = z/(1-z)", &(&z * &geometric), &cv.w_of_z));
                let rhs = cv.dz_dw.truncate(n).compose(&cv.w_of_z)?;
                out.extend(compare("s=1: dz/dw = (1-z)^2", &one_plus(&z, -1).powi(2), &rhs));
            }
            0 => {
                let w_of_z = &Series::var(n) * &one_plus(&Series::var(n), -1).powi(2).inverse()?;
                let z = w_of_z.reverse()?;
                let (omz, opz) = (one_plus(&z, -1), one_plus(&z, 1));
                out.extend(compare("V_0 = 1/(1-z)", &omz.inverse()?, get("V")));
                out.extend(compare("W_0 = (1-z)(1+z)", &(&omz * &opz), get("W")));
                out.extend(compare("X_0 = 1/((1-z)(1+z))^2", &(&omz * &opz).powi(2).inverse()?, get("X")));
                expect_one("W_0^2 X_0 = 1", &(&get("W").powi(2) * get("X")), &mut out);
                expect_one("Y_0 = 1", get("Y"), &mut out);
                expect_one("Z_0 = 1", get("Z"), &mut out);
                let cv = rank_change_of_variables(set)?;
                out.extend(compare("s=0: w = z/(1-z)^2", &w_of_z, &cv.w_of_z));
            }
            -1 => {
                // w = t(1+t)^2/2, u = t/(2(1+t))
                let t_var = Series::var(n);
                let w_of_t = (&t_var * &one_plus(&t_var, 1).powi(2)).scale(&ratio(1, 2));
                let t = w_of_t.reverse()?;
                let opt = one_plus(&t, 1);
                let u = t.try_div(&opt)?.scale(&ratio(1, 2));
                let opu = one_plus(&u, 1);
                out.extend(compare("V_-1 = (1+t)/(1+u)", &opt.try_div(&opu)?, get("V")));
                out.extend(compare("W_-1 = (1+u)^2/(1+t)", &opu.powi(2).try_div(&opt)?, get("W")));
                let x = opt.powi(5).try_div(&(&one_plus(&t, 3) * &opu.powi(4)))?;
                out.extend(compare("X_-1 = (1+t)^5/((1+3t)(1+u)^4)", &x, get("X")));
            }
            _ => {}
        }
    }
    Ok(out)
}

/// `g_r(z) = 1 + u`, `f_r(z) = (1+u)^{r²}/(1 + r² u)` with `z = u(1+u)^{r²-1}`.
pub fn substitution_forms(r: i64, order: usize) -> Result<Vec<LedgerEntry>, AlgebraError> {
    let a = r * r;
    let u_var = Series::var(order);
    let opu = one_plus(&u_var, 1);
    let z_of_u = &u_var * &opu.pow(&rat(a - 1))?;
    let u = z_of_u.reverse()?;
    let opu = one_plus(&u, 1);
    let (g, f) = closed_g_f(r, order);
    let mut out = compare(&format!("g_{r} = 1 + u"), &g, &opu);
    let f_sub = opu.pow(&rat(a))?.try_div(&one_plus(&u, a))?;
    out.extend(compare(&format!("f_{r} = (1+u)^{a}/(1+{a}u)"), &f, &f_sub));
    Ok(out)
}

/// `∫ c_{2n}` of a rank-two class with `c_1 = 0`, `c_2 = m` is `binom(m, n)`.
pub fn rank_two_binomial_law(fock: &Fock, max_m: i64, order: usize) -> Result<Vec<LedgerEntry>, FitError> {
    let model = fock.model();
    let mut out = Vec::new();
    for m in 0..=max_m {
        let u = KClass::with_c2(model, 2, model.zero_class(), rat(m));
        let got = c2n_series(fock, &u, order, Pruning::Auto)?;
        let want = TruncatedSeries::from_fn(order, |k| binomial_int(m, k as u64));
        out.extend(compare(&format!("{} rank 2, c2={m}: binom(c2, n)", model.name()), &want, &got));
    }
    Ok(out)
}

/// `Σ ∫ c_{2n}(O_p^[n]) w^n = 1 - z(w)` with `w = z/(1-z)^2`.
pub fn point_sheaf_law(fock: &Fock, order: usize) -> Result<Vec<LedgerEntry>, FitError> {
    let got = c2n_series(fock, &KClass::point_sheaf(fock.model()), order, Pruning::Auto)?;
    let w_of_z = &Series::var(order) * &one_plus(&Series::var(order), -1).powi(2).inverse()?;
    let z = w_of_z.reverse()?;
    Ok(compare(&format!("{} point sheaf: 1 - z(w)", fock.model().name()), &one_plus(&z, -1), &got))
}

/// Rank-parity symmetries among fitted sets: `B_{-r} = B_r`,
/// `A_r A_{-r} = 1`, `g, f` even in `r`, and on the top Chern side
/// `Z_s(w_s) = Z_{2-s}(w_{2-s})`, `Y_s(w_s) Y_{2-s}(w_{2-s}) = 1` in `z`.
pub fn symmetry_checks(chi: &[ChiFitReport], c2n: &[UniversalSet]) -> Result<Vec<LedgerEntry>, AlgebraError> {
    let mut out = Vec::new();
    for a in chi.iter().filter(|c| c.set.rank > 0) {
        let Some(b) = chi.iter().find(|c| c.set.rank == -a.set.rank) else { continue };
        let r = a.set.rank;
        let get = |x: &ChiFitReport, n: &str| x.set.get(n).expect("A, B").clone();
        out.extend(compare(&format!("B_{r} = B_-{r}"), &get(a, "B"), &get(b, "B")));
        let prod = &get(a, "A") * &get(b, "A");
        out.extend(compare(&format!("A_{r} A_-{r} = 1"), &Series::one(prod.order()), &prod));
        for name in ["g", "f"] {
            let x = a.full.get(name).expect("full set");
            let y = b.full.get(name).expect("full set");
            out.extend(compare(&format!("{name}_{r} = {name}_-{r}"), x, y));
        }
    }
    for a in c2n.iter().filter(|c| c.kind == SetKind::C2n && c.rank < 1) {
        let Some(b) = c2n.iter().find(|c| c.kind == SetKind::C2n && c.rank == 2 - a.rank) else { continue };
        let (s, t) = (a.rank, b.rank);
        let (ca, cb) = (rank_change_of_variables(a)?, rank_change_of_variables(b)?);
        let in_z = |set: &UniversalSet, cv: &ChangeOfVariables<Rat>, n: &str| set.get(n).expect("set").compose(&cv.w_of_z);
        out.extend(compare(&format!("Z_{s}(w_{s}) = Z_{t}(w_{t})"), &in_z(a, &ca, "Z")?, &in_z(b, &cb, "Z")?));
        let prod = &in_z(a, &ca, "Y")? * &in_z(b, &cb, "Y")?;
        out.extend(compare(&format!("Y_{s}(w_{s}) Y_{t}(w_{t}) = 1"), &Series::one(prod.order()), &prod));
    }
    Ok(out)
}

fn compare_polys(identity: &str, order: usize, printed: &[Rat], fitted: &[Rat]) -> Vec<LedgerEntry> {
    let len = printed.len().max(fitted.len());
    let at = |v: &[Rat], j: usize| v.get(j).cloned().unwrap_or_else(|| rat(0));
    (0..len)
        .map(|j| LedgerEntry {
            identity: format!("{identity} [rank^{j}]"),
            order,
            lhs: at(printed, j),
            rhs: at(fitted, j),
            pass: at(printed, j) == at(fitted, j),
        })
        .collect()
}

/// Interpolate the fitted `V_s, …, Z_s` in `s` (degree `<= 2k` at `w^k`) and
/// compare with the published polynomials through `w^3`.
pub fn printed_table_checks(sets: &[UniversalSet]) -> Result<Vec<LedgerEntry>, FitError> {
    let mut out = Vec::new();
    for table in super::tables::c2n_tables() {
        let family: Vec<(i64, &Series)> = sets
            .iter()
            .filter(|s| s.kind == SetKind::C2n)
            .map(|s| (s.rank, s.get(table.name).expect("top Chern class set")))
            .collect();
        let order = table.order().min(family.iter().map(|(_, s)| s.order()).min().unwrap_or(0));
        let fitted = super::interp::interpolate_series_in_rank(&family, order, |k| 2 * k)?;
        for k in 1..=order {
            let got = fitted.coeff(k).univariate_coeffs();
            out.extend(compare_polys(&format!("{}[w^{k}]", table.name), k, &table.coeffs[k], &got));
        }
    }
    Ok(out)
}

/// `w(z)` through `z^order` with coefficients polynomial in `r`, from `V_s`
/// through `w^{order-1}` interpolated in `r = s - 1` (degree `<= 2k` at `w^k`).
pub fn symbolic_w_of_z(sets: &[UniversalSet], order: usize) -> Result<crate::PolySeries, FitError> {
    use crate::algebra::Poly;
    let family: Vec<(i64, &Series)> = sets
        .iter()
        .filter(|s| s.kind == SetKind::C2n)
        .map(|s| (s.rank - 1, s.get("V").expect("top Chern class set")))
        .collect();
    let v = super::interp::interpolate_series_in_rank(&family, order.saturating_sub(1), |k| 2 * k)?;
    let exponent = Poly::constant(rat(1)) - Poly::var(0);
    Ok(change_of_variables(&v, &exponent)?.z_of_w.reverse()?)
}

/// Compare [`symbolic_w_of_z`] with the published `w(z)`.
pub fn printed_w_of_z_check(sets: &[UniversalSet], order: usize) -> Result<Vec<LedgerEntry>, FitError> {
    let table = super::tables::w_of_z_table();
    let order = order.min(table.order());
    let w = symbolic_w_of_z(sets, order)?;
    let mut out = Vec::new();
    for k in 1..=order {
        out.extend(compare_polys(&format!("w(z)[z^{k}]"), k, &table.coeffs[k], &w.coeff(k).univariate_coeffs()));
    }
    Ok(out)
}
