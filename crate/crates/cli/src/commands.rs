use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, ValueEnum};
use hilbseries::chern::catalan_check;
use hilbseries::chi::{BundleSpec, LocalizationTable, ToricSurface};
use hilbseries::fock::Fock;
use hilbseries::scalar::rat;
use hilbseries::trees::{
    cayley_oracle, d_n_closed, d_n_from_fock, d_n_from_log_catalan, d_n_from_trees, derivative_expansion_check,
    f_n, f_n_closed, recursion_holds,
};
use hilbseries::universal::*;
use hilbseries::{Rat, SurfaceModel};
use serde::Serialize;

use crate::report::{Report, Status};

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let bad = || format!("expected a..b or a single integer, got {s:?}");
    match s.split_once("..") {
        Some((a, b)) => {
            let b = b.trim_start_matches('=');
            let (a, b) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
            if a > b {
                return Err(bad());
            }
            Ok((a, b))
        }
        None => s.trim().parse().map(|a| (a, a)).map_err(|_| bad()),
    }
}

fn parse_surface(s: &str) -> Result<ToricSurface, String> {
    ToricSurface::from_name(s).map_err(|e| e.to_string())
}

/// A line bundle degree; an alias so clap parses it as one value.
type Degree = Vec<i64>;

fn parse_degree(s: &str) -> Result<Degree, String> {
    s.split([',', ':']).map(|p| p.trim().parse::<i64>().map_err(|_| format!("bad degree {s:?}"))).collect()
}

#[derive(Args, Serialize)]
pub struct C2nArgs {
    /// Rank s of the class.
    #[arg(long, allow_hyphen_values = true)]
    pub rank: i64,
    #[arg(long, default_value_t = 4)]
    pub order: usize,
    /// JSON file of datapoints replacing the defaults.
    #[arg(long)]
    #[serde(skip)]
    pub datapoints: Option<PathBuf>,
}

pub fn c2n(a: &C2nArgs, mut report: Report) -> Result<Report, String> {
    let points = match &a.datapoints {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            crate::datapoints::parse(&text)?
        }
        None => default_datapoints(),
    };
    let fit = fit_c2n(a.rank, &points, a.order).map_err(|e| format!("fit failed: {e}"))?;
    for label in &fit.labels {
        report.note("datapoint", label.clone());
    }
    report.note("redundant residuals checked", fit.residual_checks.to_string());
    for (name, s) in fit.set.named() {
        report.add_series(format!("{name}_{}", a.rank), s);
    }
    for (label, s) in fit.labels.iter().zip(&fit.data) {
        report.add_series(format!("data {label}"), s);
    }
    Ok(report)
}

#[derive(Args, Serialize)]
pub struct ChiArgs {
    #[arg(long, default_value = "p2", value_parser = parse_surface)]
    #[serde(serialize_with = "surface_name")]
    pub surface: ToricSurface,
    /// K-theory class as signed line bundles, e.g. "+1,+1" or "+1:2,-0:0".
    /// Repeat for several classes.
    #[arg(long, allow_hyphen_values = true, required = true)]
    pub bundles: Vec<String>,
    #[arg(long, default_value_t = 3)]
    pub order: usize,
    /// Also fit A_r, B_r for the rank of the first class.
    #[arg(long)]
    pub fit: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn surface_name<S: serde::Serializer>(s: &ToricSurface, ser: S) -> Result<S::Ok, S::Error> {
    ser.serialize_str(s.name())
}

pub fn chi(a: &ChiArgs, mut report: Report) -> Result<Report, String> {
    let bundles = a
        .bundles
        .iter()
        .map(|b| BundleSpec::parse(a.surface, b))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let mut surfaces = vec![a.surface];
    if a.fit {
        surfaces = vec![ToricSurface::P2, ToricSurface::P1xP1];
    }
    let table = LocalizationTable::new(&surfaces, a.order, a.seed).map_err(|e| e.to_string())?;
    report.note("method", "localization, checked at two specializations");
    for b in &bundles {
        let s = table.series(b).map_err(|e| e.to_string())?;
        report.add_series(format!("chi {} [{b}]", a.surface.name()), &s);
    }
    if a.fit {
        let r = bundles[0].rank();
        let fit = fit_chi(r, &default_chi_datapoints(r), &table).map_err(|e| format!("fit failed: {e}"))?;
        for label in &fit.labels {
            report.note("datapoint", label.clone());
        }
        for (name, s) in fit.set.named() {
            report.add_series(format!("{name}_{r}"), s);
        }
        let (g, f) = closed_g_f(r, a.order);
        let mut entries = compare(&format!("fitted g_{r} = closed form"), &g, fit.full.get("g").unwrap());
        entries.extend(compare(&format!("fitted f_{r} = closed form"), &f, fit.full.get("f").unwrap()));
        report.add_ledger(&entries, Status::Fail);
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AbSource {
    /// The published low-order coefficients (alias: table).
    #[value(alias = "table")]
    Paper,
    /// Fitted from localization.
    Localization,
}

#[derive(Args, Serialize)]
pub struct VerifyArgs {
    /// Ranks s, as a..b (inclusive) or a single integer.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range, default_value = "2..2")]
    pub ranks: (i64, i64),
    #[arg(long, default_value_t = 4)]
    pub order: usize,
    #[arg(long, value_enum, default_value_t = AbSource::Localization)]
    pub ab_source: AbSource,
    /// Order for A, B from localization; defaults to min(order, 5).
    #[arg(long)]
    pub ab_order: Option<usize>,
    /// Also check small-rank closed forms and rank symmetries.
    #[arg(long)]
    pub extras: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

pub fn verify(a: &VerifyArgs, mut report: Report) -> Result<Report, String> {
    let ranks: Vec<i64> = (a.ranks.0..=a.ranks.1).collect();
    let points = default_datapoints();
    let fits = fit_c2n_ranks(&ranks, &points, a.order).map_err(|e| format!("fit failed: {e}"))?;
    let ab_sets: Vec<UniversalSet>;
    let mut chi_fits = Vec::new();
    match a.ab_source {
        AbSource::Paper => {
            report.note("A, B source", "published table through z^3");
            ab_sets = ranks.iter().map(|s| printed_ab(s - 1)).collect();
        }
        AbSource::Localization => {
            let n = a.ab_order.unwrap_or(a.order.min(5));
            report.note("A, B source", format!("localization fit through z^{n}"));
            let table = default_localization(n, a.seed).map_err(|e| e.to_string())?;
            let mut rs: Vec<i64> = ranks.iter().map(|s| s - 1).collect();
            if a.extras {
                rs.extend(ranks.iter().map(|s| 1 - s));
                rs.sort();
                rs.dedup();
            }
            chi_fits = fit_chi_ranks(&rs, &table).map_err(|e| format!("fit failed: {e}"))?;
            ab_sets = ranks
                .iter()
                .map(|s| chi_fits.iter().find(|c| c.set.rank == s - 1).unwrap().set.clone())
                .collect();
        }
    }
    for label in &fits[0].labels {
        report.note("datapoint", label.clone());
    }
    for (fit, ab) in fits.iter().zip(&ab_sets) {
        for (name, s) in fit.set.named() {
            report.add_series(format!("{name}_{}", fit.set.rank), s);
        }
        for (name, s) in ab.named() {
            report.add_series(format!("{name}_{}", ab.rank), s);
        }
        let entries = verify_c1_c4(&fit.set, ab).map_err(|e| e.to_string())?;
        report.add_ledger(&entries, Status::Falsified);
    }
    if a.extras {
        let sets: Vec<UniversalSet> = fits.iter().map(|f| f.set.clone()).collect();
        report.add_ledger(&small_rank_closed_forms(&sets).map_err(|e| e.to_string())?, Status::Fail);
        report.add_ledger(&symmetry_checks(&chi_fits, &sets).map_err(|e| e.to_string())?, Status::Fail);
    }
    Ok(report)
}

#[derive(Args, Serialize)]
pub struct QuotArgs {
    #[arg(long, default_value = "p2", value_parser = parse_surface)]
    #[serde(serialize_with = "surface_name")]
    pub surface: ToricSurface,
    /// Rank r of F.
    #[arg(long, allow_hyphen_values = true)]
    pub rank: i64,
    /// Degree of L = det F, e.g. "2" or "1,2".
    #[arg(long, allow_hyphen_values = true, value_parser = parse_degree)]
    pub degree: Degree,
    #[arg(long, default_value_t = 3)]
    pub max_n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

pub fn quot(a: &QuotArgs, mut report: Report) -> Result<Report, String> {
    if a.degree.len() != a.surface.degree_len() {
        return Err(format!("{} needs {} degree entries", a.surface.name(), a.surface.degree_len()));
    }
    let table = LocalizationTable::new(&[a.surface], a.max_n, a.seed).map_err(|e| e.to_string())?;
    let mut entries = Vec::new();
    for n in 1..=a.max_n {
        let setup = QuotSetup::new(a.surface, a.rank, a.degree.clone(), n);
        for b in toric_decompositions(a.surface, a.rank, &a.degree) {
            let o = verify_quot(&setup, &b, &table).map_err(|e| e.to_string())?;
            entries.push(LedgerEntry {
                identity: format!("n={n} c2={} F={b}", setup.c2()),
                order: n,
                pass: o.pass(),
                lhs: o.lhs,
                rhs: o.rhs,
            });
        }
    }
    report.add_ledger(&entries, Status::Falsified);
    Ok(report)
}

#[derive(Args, Serialize)]
pub struct CatalanArgs {
    #[arg(long, default_value_t = 6)]
    pub max_n: usize,
}

pub fn catalan(a: &CatalanArgs, mut report: Report) -> Result<Report, String> {
    let models = vec![Arc::new(SurfaceModel::p2()), Arc::new(SurfaceModel::p1xp1())];
    let r = catalan_check(&models, a.max_n).map_err(|e| e.to_string())?;
    let mut entries = Vec::new();
    for row in &r.rows {
        for (name, v) in &row.values {
            entries.push(LedgerEntry {
                identity: format!("{name}: (-1)^n C_n"),
                order: row.n,
                lhs: row.expected.clone(),
                rhs: v.clone(),
                pass: *v == row.expected,
            });
        }
    }
    report.add_ledger(&entries, Status::Fail);
    Ok(report)
}

#[derive(Args, Serialize)]
pub struct TreesArgs {
    #[arg(long, default_value_t = 4)]
    pub max_n: usize,
}

fn flag(identity: String, order: usize, ok: bool) -> LedgerEntry {
    let b = |x: bool| if x { rat(1) } else { rat(0) };
    LedgerEntry { identity, order, lhs: rat(1), rhs: b(ok), pass: ok }
}

fn value(identity: String, order: usize, lhs: Rat, rhs: Rat) -> LedgerEntry {
    LedgerEntry { identity, order, pass: lhs == rhs, lhs, rhs }
}

pub fn trees(a: &TreesArgs, mut report: Report) -> Result<Report, String> {
    // the literal symmetrization is factorial in n; larger n use the
    // other oracles only
    let poly_cap = a.max_n.min(5);
    report.note("hook polynomial identity", format!("n <= {poly_cap}"));
    let fock = Fock::new(Arc::new(SurfaceModel::p2()));
    let mut entries = Vec::new();
    for n in 0..=poly_cap {
        entries.push(flag("hook polynomial identity".into(), n, f_n(n) == f_n_closed(n)));
        if n >= 1 {
            entries.push(flag("hook polynomial recursion".into(), n, recursion_holds(n)));
        }
    }
    for p in 2..=a.max_n.clamp(2, 6) {
        entries.push(flag("weighted Cayley formula".into(), p, cayley_oracle(p)));
    }
    for n in 1..=a.max_n {
        let c = d_n_closed(n);
        entries.push(value("D_n from trees".into(), n, c.clone(), d_n_from_trees(n)));
        entries.push(value("D_n from log C".into(), n, c.clone(), d_n_from_log_catalan(n)));
        let fk = d_n_from_fock(&fock, n).map_err(|e| e.to_string())?;
        entries.push(value("D_n from Fock engine".into(), n, c, fk));
    }
    for n in 0..=a.max_n.min(4) {
        for k in [-2, -1, 1, 2] {
            let bad = derivative_expansion_check(&fock, n, k, if n >= 4 { 2 } else { 3 });
            entries.push(flag(format!("tree expansion of q_{k} derivative"), n, bad.is_empty()));
        }
    }
    report.add_ledger(&entries, Status::Fail);
    Ok(report)
}
