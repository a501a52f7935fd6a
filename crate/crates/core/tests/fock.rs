use std::sync::Arc;

use hilbseries::fock::{monomial_integral_oracle, Fock, FockVector, Monomial, OperatorSum, OracleLetter};
use hilbseries::scalar::{factorial, ratio, rat};
use hilbseries::{CohClass, Rat, SurfaceModel};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn engines() -> Vec<Fock> {
    let formal = SurfaceModel::formal(
        "formal",
        vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)]],
        vec![rat(4), rat(2)],
    )
    .unwrap();
    vec![
        Fock::new(Arc::new(SurfaceModel::p2())),
        Fock::new(Arc::new(SurfaceModel::p1xp1())),
        Fock::new(Arc::new(formal)),
    ]
}

fn random_class(rng: &mut ChaCha8Rng, dim: usize) -> CohClass {
    CohClass::from_coeffs((0..dim).map(|_| rat(rng.gen_range(-2..=2))).collect())
}

fn random_vector(rng: &mut ChaCha8Rng, dim: usize, degree: usize) -> FockVector<Rat> {
    let mut v = FockVector::zero();
    for _ in 0..3 {
        let mut factors = Vec::new();
        let mut left = degree;
        while left > 0 {
            let m = rng.gen_range(1..=left);
            factors.push((m as u32, rng.gen_range(0..dim) as u16));
            left -= m;
        }
        v.add_term(Monomial::from_factors(factors), rat(rng.gen_range(-3..=3)));
    }
    v
}

#[test]
fn heisenberg_commutator_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for f in engines() {
        let dim = f.model().dim();
        for _ in 0..40 {
            let n = rng.gen_range(-3..=3i32);
            let m = if rng.gen_bool(0.5) { -n } else { rng.gen_range(-3..=3i32) };
            let a = random_class(&mut rng, dim);
            let b = random_class(&mut rng, dim);
            let deg = rng.gen_range(0..=3);
            let v = random_vector(&mut rng, dim, deg);
            let ab = f.q(n, &a, &f.q(m, &b, &v));
            let ba = f.q(m, &b, &f.q(n, &a, &v));
            let mut lhs = ab;
            lhs.add_scaled(&ba, &rat(-1));
            let c = if n + m == 0 && n != 0 {
                rat(n.into()) * f.model().pair(&a, &b)
            } else {
                Rat::zero()
            };
            assert_eq!(lhs, v.scale(&c), "n={n} m={m}");
        }
    }
}

#[test]
fn boundary_operator_commutes_by_derivative_formula() {
    // [𝔡, q_l(β)] = (l/2) Σ q_ν q_{l-ν} δβ + l(|l|-1)/2 q_l(Kβ)
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for f in engines() {
        let dim = f.model().dim();
        for _ in 0..30 {
            let l = loop {
                let l = rng.gen_range(-3..=3i32);
                if l != 0 {
                    break l;
                }
            };
            let beta = random_class(&mut rng, dim);
            let deg = rng.gen_range(0..=3usize);
            let v = random_vector(&mut rng, dim, deg);
            let mut lhs = f.apply_d(&f.q(l, &beta, &v));
            lhs.add_scaled(&f.q(l, &beta, &f.apply_d(&v)), &rat(-1));
            let window = (deg as i32) + l.abs() + 2;
            let op = OperatorSum::q(l, &beta).derivative(f.model(), window);
            let rhs = f.apply(&op, &v, deg + 4);
            assert_eq!(lhs, rhs, "l={l}");
        }
    }
}

#[test]
fn word_derivatives_match_boundary_operator_path() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for f in engines() {
        let dim = f.model().dim();
        for k in 0..=4usize {
            for _ in 0..3 {
                let alpha = random_class(&mut rng, dim);
                let deg = rng.gen_range(0..=2usize);
                let v = random_vector(&mut rng, dim, deg);
                let cap = deg + 1;
                let op = f.q_derivative(k, &alpha, 2 * cap as i32 + 2);
                let words = f.apply(&op, &v, cap);
                let fast = f.derivative_action(k, &alpha, &v);
                assert_eq!(words, fast, "k={k}");
            }
        }
    }
}

#[test]
fn derivative_memo_is_stable() {
    let f = &engines()[0];
    let p = f.model().point();
    let a = f.q_derivative(3, &p, 6);
    let b = f.q_derivative(3, &p, 6);
    assert!(Arc::ptr_eq(&a, &b));
}

#[test]
fn point_derivative_on_vacuum_vanishes() {
    for f in engines() {
        let p = f.model().point();
        let v = FockVector::<Rat>::vacuum();
        assert!(f.derivative_action(1, &p, &v).is_zero());
        let op = f.q_derivative(1, &p, 4);
        assert!(f.apply(&op, &v, 1).is_zero());
    }
}

#[test]
fn leading_coefficient_of_even_point_derivatives() {
    // coefficient of q_1(p)^n q_{-1}(p)^{n-1} in q_1^{(2n-2)}(p)
    for f in engines().into_iter().take(2) {
        let p = f.model().point();
        let pt = f.model().point_index() as u16;
        for n in 1..=3usize {
            let w = 2 * n as i32 + 1;
            let op = f.q_derivative(2 * n - 2, &p, w);
            let mut word = vec![(1, pt); n];
            word.extend(vec![(-1, pt); n - 1]);
            let want = factorial(2 * n as u64 - 2) / (factorial(n as u64) * factorial(n as u64 - 1));
            assert_eq!(op.coeff(&word), want, "n={n}");
        }
    }
}

#[test]
fn fundamental_class_normalisation() {
    for f in engines() {
        let s = f.model().one();
        let p = f.model().point();
        for n in 0..=4usize {
            let mut v = FockVector::<Rat>::vacuum();
            for _ in 0..n {
                v = f.q(1, &s, &v);
            }
            // pairing with the point class: apply n copies of q_{-1}(p)
            let mut w = v.clone();
            for _ in 0..n {
                w = f.q(-1, &p, &w);
            }
            let sign = if n % 2 == 0 { rat(1) } else { rat(-1) };
            assert_eq!(w.coeff(&Monomial::vacuum()), sign * factorial(n as u64));
            assert_eq!(f.integrate_hilb(&v, n).unwrap(), rat(if n == 0 { 1 } else { 0 }));
        }
    }
}

#[test]
fn engine_agrees_with_bijection_formula() {
    use OracleLetter::*;
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let engines = engines();
    for trial in 0..100 {
        let f = &engines[trial % engines.len()];
        let n = rng.gen_range(1..=5usize);
        let duals = rng.gen_range(0..=3usize);
        let funds = if rng.gen_bool(0.8) { duals } else { rng.gen_range(0..=3usize) };
        let mut word = vec![Point; n];
        word.extend(vec![PointDual; duals]);
        word.extend(vec![Fundamental; funds]);
        word.shuffle(&mut rng);
        let one = f.model().one();
        let p = f.model().point();
        let mut v = FockVector::<Rat>::vacuum();
        for l in word.iter().rev() {
            v = match l {
                Point => f.q(1, &p, &v),
                PointDual => f.q(-1, &p, &v),
                Fundamental => f.q(1, &one, &v),
            };
        }
        let deg = (n + funds) as i64 - duals as i64;
        let engine = if deg < 0 || v.is_zero() {
            Rat::zero()
        } else {
            f.integrate_hilb(&v, deg as usize).unwrap()
        };
        assert_eq!(engine, monomial_integral_oracle(&word, n), "{word:?}");
    }
}

#[test]
fn bijection_examples() {
    use OracleLetter::*;
    let f = &engines()[0];
    let p = f.model().point();
    let one = f.model().one();
    let v = f.q(1, &one, &FockVector::<Rat>::vacuum());
    let v = f.q(-1, &p, &v);
    let v = f.q(1, &p, &f.q(1, &p, &v));
    assert_eq!(f.integrate_hilb(&v, 2).unwrap(), rat(-1));
    assert_eq!(monomial_integral_oracle(&[Point, Point, PointDual, Fundamental], 2), rat(-1));
}

#[test]
fn odd_point_derivatives_integrate_to_zero() {
    // monomials in q_1(S) and derivatives of q_1(p) with an odd order vanish
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for f in engines() {
        let p = f.model().point();
        let one = f.model().one();
        for _ in 0..12 {
            let k = rng.gen_range(1..=3usize);
            let mut orders: Vec<usize> = (0..k).map(|_| 2 * rng.gen_range(0..=2usize)).collect();
            orders[0] += 1;
            orders.shuffle(&mut rng);
            let funds: usize = orders.iter().sum::<usize>() / 2 + rng.gen_range(0..=1usize);
            let mut v = FockVector::<Rat>::vacuum();
            let mut letters: Vec<Option<usize>> = orders.iter().copied().map(Some).collect();
            letters.extend(std::iter::repeat_n(None, funds));
            letters.shuffle(&mut rng);
            for l in letters.iter().rev() {
                v = match l {
                    Some(nu) => f.derivative_action(*nu, &p, &v),
                    None => f.q(1, &one, &v),
                };
            }
            let n = k + funds;
            assert_eq!(f.integrate_hilb(&v, n).unwrap(), Rat::zero(), "{letters:?}");
        }
    }
}

#[test]
fn second_point_derivative_value() {
    // q_1''(p) q_1(S) 1 integrates to -D_2 * 2 = -3 on S^[2]
    let f = &engines()[1];
    let p = f.model().point();
    let one = f.model().one();
    let v = f.q(1, &one, &FockVector::<Rat>::vacuum());
    let v = f.derivative_action(2, &p, &v);
    // -(2n-1) q^{(2n-2)} = -n D_n q_1(p)^n q_{-1}(p)^{n-1} + ..., n = 2
    let r2 = f.integrate_hilb(&v, 2).unwrap() * rat(-3);
    assert_eq!(r2, rat(-2) * ratio(3, 2) * rat(-1));
}
