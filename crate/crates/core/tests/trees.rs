use std::sync::Arc;

use hilbseries::fock::Fock;
use hilbseries::trees::{
    cayley_oracle, d_n_closed, d_n_from_fock, d_n_from_log_catalan, d_n_from_trees, derivative_expansion_check,
    exp_d_series, f_n, f_n_closed, labelled_tree_degrees, recursion_holds,
};
use hilbseries::chern::catalan_numbers;
use hilbseries::SurfaceModel;

#[test]
fn hook_polynomial_identity() {
    for n in 0..=5 {
        assert_eq!(f_n(n), f_n_closed(n), "n={n}");
    }
}

#[test]
fn hook_polynomial_recursion() {
    for n in 1..=5 {
        assert!(recursion_holds(n), "n={n}");
    }
}

#[test]
fn weighted_cayley() {
    for p in 2..=6 {
        assert!(cayley_oracle(p), "p={p}");
    }
    assert_eq!(labelled_tree_degrees(2).len(), 1);
    assert_eq!(labelled_tree_degrees(5).len(), 125);
}

#[test]
fn d_n_three_ways() {
    let fock = Fock::new(Arc::new(SurfaceModel::p2()));
    for n in 1..=6 {
        let closed = d_n_closed(n);
        assert_eq!(d_n_from_trees(n), closed, "trees n={n}");
        assert_eq!(d_n_from_log_catalan(n), closed, "log n={n}");
        assert_eq!(d_n_from_fock(&fock, n).unwrap(), closed, "fock n={n}");
    }
    let c = exp_d_series(6);
    assert_eq!(c.coeffs(), catalan_numbers(6).as_slice());
}

#[test]
fn derivative_tree_expansion() {
    let fock = Fock::new(Arc::new(SurfaceModel::p1xp1()));
    for n in 0..=4usize {
        for k in -2..=2i32 {
            if k == 0 {
                continue;
            }
            let w0 = if n >= 4 { 2 } else { 3 };
            let bad = derivative_expansion_check(&fock, n, k, w0);
            assert!(bad.is_empty(), "n={n} k={k}: {:?}", &bad[..bad.len().min(3)]);
        }
    }
}
