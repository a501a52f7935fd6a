use std::sync::Arc;

use hilbseries::algebra::{rank, TruncatedSeries};
use hilbseries::chi::ToricSurface;
use hilbseries::error::{FitError, LinearError};
use hilbseries::fock::Fock;
use hilbseries::scalar::{binomial_int, ratio, rat};
use hilbseries::universal::tables::{a_table, b_table, v_table, w_table};
use hilbseries::universal::*;
use hilbseries::{Rat, Series, SurfaceModel};
use num_traits::{One, Zero};

fn series(c: &[i64], order: usize) -> Series {
    Series::new(c.iter().map(|&x| rat(x)).collect(), order)
}

fn is_one(s: &Series) -> bool {
    s.coeff(0).is_one() && s.coeffs()[1..].iter().all(Zero::is_zero)
}

#[test]
fn covariate_examples() {
    let p2 = SurfaceModel::p2();
    let q = SurfaceModel::p1xp1();
    let h = |d: i64| p2.divisor(&[rat(d)]).unwrap();
    assert_eq!(c2n_covariates(&p2, &h(1), &rat(0)), vec![rat(0), rat(3), ratio(1, 2), ratio(-15, 2), rat(9)]);
    assert_eq!(c2n_covariates(&p2, &h(0), &rat(0)), vec![rat(0), rat(1), ratio(1, 2), ratio(-9, 2), rat(9)]);
    let l = q.divisor(&[rat(1), rat(2)]).unwrap();
    assert_eq!(c2n_covariates(&q, &l, &rat(0)), vec![rat(0), rat(6), ratio(1, 2), rat(-10), rat(8)]);
}

#[test]
fn default_datapoints_are_independent() {
    let pts = default_datapoints();
    assert!(pts.len() > 5);
    let rows: Vec<Vec<Rat>> = pts.iter().take(5).map(C2nDatapoint::covariates).collect();
    assert_eq!(rank(&rows), 5);
}

#[test]
fn rank_two_and_rank_one_sets() {
    let pts = default_datapoints();
    let two = fit_c2n(2, &pts, 4).unwrap();
    assert_eq!(two.set.get("V").unwrap(), &series(&[1, 1], 4));
    for name in ["W", "X", "Y", "Z"] {
        assert!(is_one(two.set.get(name).unwrap()), "{name}");
    }
    assert_eq!(two.residual_checks, 2 * 4);
    let one = fit_c2n(1, &pts, 4).unwrap();
    for name in ["W", "X", "Y", "Z"] {
        assert!(is_one(one.set.get(name).unwrap()), "{name}");
    }
}

#[test]
fn rank_three_second_coefficient() {
    let fit = fit_c2n(3, &default_datapoints(), 2).unwrap();
    // -s^2/2 + 3s/2 - 1 at s = 3
    assert_eq!(*fit.set.get("V").unwrap().coeff(2), rat(-1));
    assert_eq!(*fit.set.get("V").unwrap().coeff(2), v_table().at(3).coeff(2).clone());
}

#[test]
fn rank_deficient_datapoints_are_reported() {
    let pts: Vec<C2nDatapoint> = default_datapoints().into_iter().take(4).chain(default_datapoints().into_iter().skip(5).take(1)).collect();
    // all on P^2: chi(O)/2 and K^2 columns are proportional
    match fit_c2n(3, &pts, 2) {
        Err(FitError::Linear { order: 1, source: LinearError::RankDeficient { rank: 4, null_direction, .. } }) => {
            assert_eq!(null_direction.len(), 5);
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn perturbed_redundant_datapoint_is_a_hard_error() {
    let pts = default_datapoints();
    let fit = fit_c2n(3, &pts, 3).unwrap();
    let cov: Vec<Vec<Rat>> = pts.iter().map(C2nDatapoint::covariates).collect();
    let mut data = fit.data.clone();
    let last = data.len() - 1;
    let mut c = data[last].coeffs().to_vec();
    c[3] += rat(1);
    data[last] = Series::new(c, 3);
    match fit_series(&cov, &data, 3) {
        Err(FitError::Residual { order: 3, datapoint, residual }) => {
            assert_eq!(datapoint, last);
            assert!(!residual.is_zero());
        }
        other => panic!("unexpected {other:?}"),
    }
    // unperturbed data refits to the same series
    let (again, _) = fit_series(&cov, &fit.data, 3).unwrap();
    assert_eq!(again, fit.set.series);
}

#[test]
fn chi_fits_at_small_ranks() {
    let table = default_localization(3, 1).unwrap();
    let one = fit_chi(1, &default_chi_datapoints(1), &table).unwrap();
    assert!(is_one(one.set.get("A").unwrap()) && is_one(one.set.get("B").unwrap()));
    assert!(one.closed_forms_agree());
    let two = fit_chi(2, &default_chi_datapoints(2), &table).unwrap();
    assert_eq!(*two.set.get("A").unwrap().coeff(2), rat(-1));
    assert_eq!(*two.set.get("B").unwrap().coeff(2), ratio(-1, 2));
    assert_eq!(two.set.get("A").unwrap(), &a_table().at(2));
    assert_eq!(two.set.get("B").unwrap(), &b_table().at(2));
    assert!(two.closed_forms_agree());
}

#[test]
fn chi_fit_rejects_wrong_rank() {
    let table = default_localization(1, 1).unwrap();
    let err = fit_chi(2, &default_chi_datapoints(3), &table).unwrap_err();
    assert!(matches!(err, FitError::WrongRank { expected: 2, got: 3, .. }));
}

#[test]
fn change_of_variables_examples() {
    // s = 2: exponent zero
    let v = series(&[1, 1], 5);
    let cv = change_of_variables(&v, &rat(0)).unwrap();
    assert_eq!(cv.w_of_z, Series::var(5));
    // s = 1: V = 1 + w gives w = z/(1-z)
    let cv = change_of_variables(&v, &rat(1)).unwrap();
    assert_eq!(cv.w_of_z, series(&[0, 1, 1, 1, 1, 1], 5));
    assert_eq!(cv.dz_dw, series(&[1, -2, 3, -4, 5, -6], 5));
    // general s: [z^2] w = 1 - r
    let pts = default_datapoints();
    for s in [0, 3, 4] {
        let set = fit_c2n(s, &pts, 2).unwrap().set;
        let cv = rank_change_of_variables(&set).unwrap();
        assert_eq!(*cv.w_of_z.coeff(2), rat(2 - s), "s={s}");
    }
}

#[test]
fn identities_at_ranks_two_and_one() {
    let pts = default_datapoints();
    for s in [2, 1] {
        let set = fit_c2n(s, &pts, 5).unwrap().set;
        let entries = verify_c1_c4(&set, &printed_ab(s - 1)).unwrap();
        assert!(all_pass(&entries), "s={s}");
        assert_eq!(entries.len(), 5 + 5 + 3 + 3);
    }
}

#[test]
fn rank_three_order_two_a_equals_y() {
    let set = fit_c2n(3, &default_datapoints(), 3).unwrap().set;
    let entries = verify_c1_c4(&set, &printed_ab(2)).unwrap();
    let e = entries.iter().find(|e| e.identity == "A_2 = Y_3" && e.order == 2).unwrap();
    assert_eq!((e.lhs.clone(), e.rhs.clone()), (rat(-1), rat(-1)));
    assert!(all_pass(&entries));
}

#[test]
fn a_wrong_series_is_reported_as_falsified() {
    let mut set = fit_c2n(3, &default_datapoints(), 3).unwrap().set;
    let mut y = set.series[3].coeffs().to_vec();
    y[3] += rat(1);
    set.series[3] = Series::new(y, 3);
    let entries = verify_c1_c4(&set, &printed_ab(2)).unwrap();
    let bad = falsified(&entries);
    assert_eq!(bad.len(), 1);
    assert_eq!((bad[0].identity.as_str(), bad[0].order), ("A_2 = Y_3", 3));
}

#[test]
fn quot_examples() {
    let table = default_localization(2, 3).unwrap();
    let setup = QuotSetup::new(ToricSurface::P2, 1, vec![2], 1);
    assert_eq!(setup.c2(), rat(6));
    assert_eq!(setup.chi_v(), 1);
    let o = verify_quot(&setup, &toric_decompositions(ToricSurface::P2, 1, &[2])[0], &table).unwrap();
    assert_eq!((o.lhs.clone(), o.rhs.clone()), (rat(6), rat(6)));
    for d in 0..=3 {
        let setup = QuotSetup::new(ToricSurface::P2, 1, vec![d], 2);
        let chi = (d + 1) * (d + 2) / 2;
        for b in toric_decompositions(ToricSurface::P2, 1, &[d]) {
            let o = verify_quot(&setup, &b, &table).unwrap();
            assert_eq!(o.lhs, binomial_int(chi, 2), "d={d} {b}");
            assert!(o.pass());
        }
    }
    let setup = QuotSetup::new(ToricSurface::P2, 2, vec![1], 2);
    assert_eq!(setup.s(), 3);
    assert_eq!(setup.chi_v(), 3);
    for b in toric_decompositions(ToricSurface::P2, 2, &[1]) {
        assert_eq!(b.rank(), 2);
        assert!(verify_quot(&setup, &b, &table).unwrap().pass(), "{b}");
    }
}

#[test]
fn small_rank_examples() {
    let pts = default_datapoints();
    let sets: Vec<_> = [0, -1, 1, 2].iter().map(|&s| fit_c2n(s, &pts, 4).unwrap().set).collect();
    let entries = small_rank_closed_forms(&sets).unwrap();
    assert!(all_pass(&entries));
    let v0 = entries.iter().find(|e| e.identity.starts_with("V_0") && e.order == 1).unwrap();
    assert_eq!((v0.lhs.clone(), v0.rhs.clone()), (rat(1), rat(1)));
    let w = entries.iter().find(|e| e.identity.starts_with("W_-1") && e.order == 2).unwrap();
    assert_eq!(w.rhs, rat(-3));
    assert_eq!(w.rhs, w_table().at(-1).coeff(2).clone());
    for r in [2, -2, 3] {
        assert!(all_pass(&substitution_forms(r, 6).unwrap()));
    }
}

#[test]
fn direct_small_rank_laws() {
    let fock = Fock::new(Arc::new(SurfaceModel::p2()));
    assert!(all_pass(&rank_two_binomial_law(&fock, 3, 4).unwrap()));
    assert!(all_pass(&point_sheaf_law(&fock, 5).unwrap()));
}

#[test]
fn symmetry_examples() {
    let (g1, f1) = closed_g_f(1, 5);
    let (gm1, fm1) = closed_g_f(-1, 5);
    assert!(is_one(&f1) && is_one(&fm1));
    assert_eq!(g1, gm1);
    assert_eq!(closed_g_f(2, 6), closed_g_f(-2, 6));

    let table = default_localization(3, 5).unwrap();
    let chi = fit_chi_ranks(&[2, -2], &table).unwrap();
    let a = chi[0].set.get("A").unwrap() * chi[1].set.get("A").unwrap();
    assert!(is_one(&a));
    let pts = default_datapoints();
    let sets: Vec<_> = [-1, 3].iter().map(|&s| fit_c2n(s, &pts, 4).unwrap().set).collect();
    let entries = symmetry_checks(&chi, &sets).unwrap();
    assert!(entries.iter().any(|e| e.identity.starts_with('Z')));
    assert!(all_pass(&entries));
}

#[test]
fn rank_interpolation_of_second_coefficient() {
    let pts = default_datapoints();
    let fits = fit_c2n_ranks(&[-1, 0, 1, 2, 3, 4], &pts, 2).unwrap();
    let family: Vec<(i64, &Series)> = fits.iter().map(|f| (f.set.rank, f.set.get("V").unwrap())).collect();
    let poly = interpolate_series_in_rank(&family, 2, |k| 2 * k).unwrap();
    assert_eq!(poly.coeff(2).univariate_coeffs(), vec![rat(-1), ratio(3, 2), ratio(-1, 2)]);
    let t: TruncatedSeries<_> = v_table().symbolic();
    assert_eq!(poly.coeff(2), t.coeff(2));
}
