use std::sync::Arc;

use hilbseries::chern::{c2n_series, catalan_check, total_chern, KClass, Pruning};
use hilbseries::fock::{Fock, FockVector};
use hilbseries::scalar::{binomial_int, rat, ratio};
use hilbseries::{Rat, Series, SurfaceModel};
use num_traits::{One, Zero};

fn engines() -> Vec<Fock> {
    vec![Fock::new(Arc::new(SurfaceModel::p2())), Fock::new(Arc::new(SurfaceModel::p1xp1()))]
}

#[test]
fn rank_two_binomial_law() {
    // rank 2, c_1 = 0: the series is (1 + w)^{c_2}
    for f in engines() {
        let m = f.model();
        for c2 in 0..=4 {
            let u = KClass::with_c2(m, 2, m.zero_class(), rat(c2));
            let s = c2n_series(&f, &u, 6, Pruning::Auto).unwrap();
            for n in 0..=6 {
                assert_eq!(*s.coeff(n), binomial_int(c2, n as u64), "{} c2={c2} n={n}", m.name());
            }
        }
    }
}

#[test]
fn line_bundles_have_trivial_top_class() {
    for f in engines() {
        let m = f.model();
        for d in [-1, 0, 2] {
            let coords = vec![rat(d); m.b2()];
            let u = KClass::new(1, m.divisor(&coords).unwrap(), m.zero_class());
            let s = c2n_series(&f, &u, 5, Pruning::Auto).unwrap();
            assert_eq!(s, Series::one(5), "{} d={d}", m.name());
        }
    }
}

#[test]
fn zero_class_gives_one() {
    for f in engines() {
        let m = f.model();
        let u = KClass::new(0, m.zero_class(), m.zero_class());
        // the total Chern class is the unit q_1(S)^n |0> / n!
        let v = total_chern(&f, &u, 4);
        let mut unit = FockVector::<Rat>::vacuum();
        for (n, c) in v.iter().enumerate().skip(1) {
            unit = f.q(1, &m.one(), &unit).scale(&ratio(1, n as i64));
            assert_eq!(*c, unit, "n={n}");
        }
        assert_eq!(c2n_series(&f, &u, 4, Pruning::Auto).unwrap(), Series::one(4));
    }
}

#[test]
fn checked_pruning_agrees() {
    for f in engines() {
        let u = KClass::point_sheaf(f.model());
        assert!(u.odd_pruning_applies());
        let a = c2n_series(&f, &u, 4, Pruning::Checked).unwrap();
        let b = c2n_series(&f, &u, 4, Pruning::Off).unwrap();
        assert_eq!(a, b);
    }
    let m = SurfaceModel::p2();
    assert!(!KClass::with_c2(&m, 1, m.zero_class(), rat(0)).odd_pruning_applies());
}

#[test]
fn catalan_through_five() {
    let models: Vec<_> = engines().iter().map(|f| f.model_arc()).collect();
    let report = catalan_check(&models, 5).unwrap();
    assert!(report.pass(), "{:?}", report.first_mismatch);
    let want = [1, -1, 2, -5, 14, -42];
    for (row, w) in report.rows.iter().zip(want) {
        assert_eq!(row.expected, rat(w));
        assert!(row.values.iter().all(|(_, v)| *v == rat(w)));
    }
}

#[test]
fn first_chern_integral_is_second_chern_number() {
    // on S^[1] = S, c_2(u) integrates to c_2
    for f in engines() {
        let m = f.model();
        let l = m.divisor(&vec![rat(1); m.b2()]).unwrap();
        let u = KClass::with_c2(m, 3, l, rat(7));
        let s = c2n_series(&f, &u, 1, Pruning::Auto).unwrap();
        assert_eq!(*s.coeff(1), rat(7));
        assert!(s.coeff(0).is_one() && !s.coeff(1).is_zero());
    }
}
