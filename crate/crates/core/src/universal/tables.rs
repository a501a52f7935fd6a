//! Low-order coefficients of the universal series as published, kept as
//! polynomials in the rank parameter so they can be compared against fits.

use crate::algebra::{Poly, TruncatedSeries};
use crate::scalar::{ratio, Rat};

/// Which rank parameter a table is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankVariable {
    /// `s`, the rank of the class whose Chern classes are integrated.
    S,
    /// `r = s - 1`.
    R,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PrintedSeries {
    pub name: &'static str,
    pub variable: RankVariable,
    /// `coeffs[k]` is the polynomial (lowest degree first) multiplying the
    /// `k`-th power of the series variable.
    pub coeffs: Vec<Vec<Rat>>,
}

impl PrintedSeries {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficients at an integer value of the table's rank variable.
    pub fn at(&self, x: i64) -> TruncatedSeries<Rat> {
        let x = Rat::from_integer(x.into());
        TruncatedSeries::from_fn(self.order(), |k| {
            self.coeffs[k].iter().rev().fold(Rat::from_integer(0.into()), |acc, c| acc * &x + c)
        })
    }

    /// The table as a series over univariate polynomials.
    pub fn symbolic(&self) -> TruncatedSeries<Poly<Rat>> {
        TruncatedSeries::from_fn(self.order(), |k| Poly::from_univariate(&self.coeffs[k]))
    }
}

fn row(entries: &[(i64, i64)]) -> Vec<Rat> {
    entries.iter().map(|&(n, d)| ratio(n, d)).collect()
}

fn ints(entries: &[i64]) -> Vec<Rat> {
    entries.iter().map(|&n| ratio(n, 1)).collect()
}

fn printed(name: &'static str, variable: RankVariable, coeffs: Vec<Vec<Rat>>) -> PrintedSeries {
    PrintedSeries { name, variable, coeffs }
}

pub fn v_table() -> PrintedSeries {
    printed(
        "V",
        RankVariable::S,
        vec![
            ints(&[1]),
            ints(&[1]),
            row(&[(-1, 1), (3, 2), (-1, 2)]),
            row(&[(2, 1), (-17, 3), (6, 1), (-17, 6), (1, 2)]),
        ],
    )
}

pub fn w_table() -> PrintedSeries {
    printed(
        "W",
        RankVariable::S,
        vec![
            ints(&[1]),
            ints(&[0]),
            row(&[(-1, 1), (3, 2), (-1, 2)]),
            row(&[(4, 1), (-34, 3), (12, 1), (-17, 3), (1, 1)]),
        ],
    )
}

pub fn x_table() -> PrintedSeries {
    printed(
        "X",
        RankVariable::S,
        vec![
            ints(&[1]),
            ints(&[0]),
            row(&[(2, 1), (-6, 1), (13, 2), (-3, 1), (1, 2)]),
            row(&[(-8, 1), (36, 1), (-202, 3), (67, 1), (-112, 3), (11, 1), (-4, 3)]),
        ],
    )
}

pub fn y_table() -> PrintedSeries {
    printed(
        "Y",
        RankVariable::S,
        vec![
            ints(&[1]),
            ints(&[0]),
            row(&[(0, 1), (-1, 3), (1, 2), (-1, 6)]),
            row(&[(0, 1), (107, 60), (-121, 24), (127, 24), (-59, 24), (17, 40)]),
        ],
    )
}

pub fn z_table() -> PrintedSeries {
    printed(
        "Z",
        RankVariable::S,
        vec![
            ints(&[1]),
            ints(&[0]),
            row(&[(0, 1), (1, 12), (-5, 24), (1, 6), (-1, 24)]),
            row(&[(0, 1), (-53, 120), (1303, 720), (-35, 12), (83, 36), (-107, 120), (97, 720)]),
        ],
    )
}

pub fn a_table() -> PrintedSeries {
    printed(
        "A",
        RankVariable::R,
        vec![
            ints(&[1]),
            ints(&[0]),
            row(&[(0, 1), (1, 6), (0, 1), (-1, 6)]),
            row(&[(0, 1), (1, 5), (0, 1), (-5, 8), (0, 1), (17, 40)]),
        ],
    )
}

pub fn b_table() -> PrintedSeries {
    printed(
        "B",
        RankVariable::R,
        vec![
            ints(&[1]),
            ints(&[0]),
            row(&[(0, 1), (0, 1), (1, 24), (0, 1), (-1, 24)]),
            row(&[(0, 1), (0, 1), (29, 360), (0, 1), (-31, 144), (0, 1), (97, 720)]),
        ],
    )
}

/// `w(z)` inverting `z = w / V_s(w)^{2-s}`, in `r`.
pub fn w_of_z_table() -> PrintedSeries {
    printed(
        "w(z)",
        RankVariable::R,
        vec![
            ints(&[0]),
            ints(&[1]),
            ints(&[1, -1]),
            row(&[(1, 1), (-2, 1), (1, 2), (1, 2)]),
            row(&[(1, 1), (-3, 1), (5, 3), (3, 2), (-2, 3), (-1, 2)]),
            row(&[(1, 1), (-4, 1), (43, 12), (8, 3), (-73, 24), (-11, 6), (23, 24), (2, 3)]),
        ],
    )
}

/// `V, W, X, Y, Z` in that order.
pub fn c2n_tables() -> [PrintedSeries; 5] {
    [v_table(), w_table(), x_table(), y_table(), z_table()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    #[test]
    fn rank_two_tables_are_trivial() {
        // s = 2: V = 1 + w and the rest are 1 through w^3
        let v = v_table().at(2);
        assert_eq!(v.coeffs()[..2], [Rat::one(), Rat::one()]);
        assert!(v.coeffs()[2..].iter().all(Zero::is_zero));
        for t in [w_table(), x_table(), y_table(), z_table()] {
            let s = t.at(2);
            assert!(s.coeff(0).is_one() && s.coeffs()[1..].iter().all(Zero::is_zero), "{}", t.name);
        }
    }

    #[test]
    fn rank_one_w_and_x_vanish() {
        for t in [w_table(), x_table()] {
            assert!(t.at(1).coeffs()[1..].iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn a_and_b_trivial_for_line_bundles() {
        for r in [-1, 0, 1] {
            assert!(a_table().at(r).coeffs()[1..].iter().all(Zero::is_zero));
            assert!(b_table().at(r).coeffs()[1..].iter().all(Zero::is_zero));
        }
    }
}
