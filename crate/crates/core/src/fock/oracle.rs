use num_traits::{One, Zero};

use crate::scalar::Rat;

/// The three letters of point/fundamental-class words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OracleLetter {
    /// `q_1(pt)`
    Point,
    /// `q_{-1}(pt)`
    PointDual,
    /// `q_1(S)`
    Fundamental,
}

/// Closed combinatorial value of `∫ w 1` for a word `w` (leftmost letter
/// acts last) in `q_1(pt)`, `q_{-1}(pt)` and `q_1(S)`.
///
/// Each `q_{-1}(pt)` must be matched with a distinct `q_1(S)` standing to its
/// right, and every match contributes `-1`. The count is a product of falling
/// factorials over the blocks `q_{-1}(pt)^{p_l} q_1(S)^{k_l}`.
pub fn monomial_integral_oracle(word: &[OracleLetter], n: usize) -> Rat {
    let points = word.iter().filter(|l| **l == OracleLetter::Point).count();
    let duals = word.iter().filter(|l| **l == OracleLetter::PointDual).count();
    let funds = word.iter().filter(|l| **l == OracleLetter::Fundamental).count();
    if points != n || duals != funds {
        return Rat::zero();
    }
    // blocks after removing the point letters, which commute with the rest
    let mut blocks: Vec<(i64, i64)> = Vec::new();
    let mut prev_fund = true;
    for l in word {
        match l {
            OracleLetter::Point => {}
            OracleLetter::PointDual => {
                if prev_fund {
                    blocks.push((0, 0));
                }
                blocks.last_mut().unwrap().0 += 1;
                prev_fund = false;
            }
            OracleLetter::Fundamental => {
                if blocks.is_empty() {
                    blocks.push((0, 0));
                }
                blocks.last_mut().unwrap().1 += 1;
                prev_fund = true;
            }
        }
    }
    let mut total = Rat::one();
    let mut k_right = 0i64; // fundamental letters in this block and after
    let mut p_right = 0i64; // duals strictly after this block
    for &(p, k) in blocks.iter().rev() {
        k_right += k;
        for t in 0..p {
            total *= Rat::from_integer((-(k_right - p_right - t)).into());
        }
        p_right += p;
    }
    total
}
