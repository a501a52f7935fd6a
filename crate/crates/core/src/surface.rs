//! Formal models of the even cohomology ring of a surface with `b1 = 0`.
//!
//! The basis is `1` (degree 0), `e_1..e_b2` (degree 1, algebraic grading) and
//! `pt` (degree 2). A model is determined by the intersection form on the
//! middle classes and the canonical class; the Euler number is `2 + b2` and
//! `chi(O)` follows Noether's formula `(e + K^2) / 12`.

use num_traits::{One, Zero};

use crate::algebra::linsolve;
use crate::error::SurfaceError;
use crate::scalar::{rat, Rat};

/// A cohomology class, as coordinates in the model's basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CohClass {
    coeffs: Vec<Rat>,
}

impl CohClass {
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        CohClass { coeffs }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Rat {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        CohClass {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        CohClass {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    /// Nonzero coordinates as `(basis index, coefficient)`.
    pub fn support(&self) -> impl Iterator<Item = (usize, &Rat)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }
}

#[derive(Clone, Debug)]
pub struct SurfaceModel {
    name: String,
    b2: usize,
    /// `∫ b_i b_j` over the full basis.
    pairing: Vec<Vec<Rat>>,
    /// `b^i` in coordinates, so that `∫ b_i b^j = δ_ij`.
    dual: Vec<CohClass>,
    canonical: CohClass,
    /// `products[i][j] = b_i b_j`.
    products: Vec<Vec<CohClass>>,
    /// `δ(b_x)` as sparse `(a, b, coefficient)` for `b_a ⊗ b_b`.
    diagonals: Vec<Vec<(usize, usize, Rat)>>,
}

impl SurfaceModel {
    /// Build a model from the intersection form on `H^2` and the canonical class.
    pub fn formal(
        name: impl Into<String>,
        gram: Vec<Vec<Rat>>,
        canonical: Vec<Rat>,
    ) -> Result<Self, SurfaceError> {
        let b2 = gram.len();
        if canonical.len() != b2 {
            return Err(SurfaceError::Dimension { expected: b2, got: canonical.len() });
        }
        for row in &gram {
            if row.len() != b2 {
                return Err(SurfaceError::Dimension { expected: b2, got: row.len() });
            }
        }
        for (i, row) in gram.iter().enumerate() {
            for (j, g) in row.iter().enumerate() {
                if *g != gram[j][i] {
                    return Err(SurfaceError::AsymmetricGram);
                }
            }
        }
        if b2 > 0 && linsolve::rank(&gram) < b2 {
            return Err(SurfaceError::SingularGram);
        }

        let d = b2 + 2;
        let pt = d - 1;
        let mut pairing = vec![vec![Rat::zero(); d]; d];
        pairing[0][pt] = Rat::one();
        pairing[pt][0] = Rat::one();
        for i in 0..b2 {
            for j in 0..b2 {
                pairing[i + 1][j + 1] = gram[i][j].clone();
            }
        }

        // dual basis: column j of the inverse pairing matrix
        let mut dual = Vec::with_capacity(d);
        for j in 0..d {
            let rhs: Vec<Rat> = (0..d).map(|i| if i == j { Rat::one() } else { Rat::zero() }).collect();
            let x = linsolve::solve_exact(&pairing, &rhs).map_err(|_| SurfaceError::SingularGram)?;
            dual.push(CohClass::from_coeffs(x));
        }

        let zero_class = CohClass::from_coeffs(vec![Rat::zero(); d]);
        let basis_vec = |i: usize| {
            let mut c = vec![Rat::zero(); d];
            c[i] = Rat::one();
            CohClass::from_coeffs(c)
        };
        let degree = |i: usize| if i == 0 { 0 } else if i == pt { 2 } else { 1 };
        let mut products = vec![vec![zero_class.clone(); d]; d];
        for i in 0..d {
            for j in 0..d {
                products[i][j] = match (degree(i), degree(j)) {
                    (0, _) => basis_vec(j),
                    (_, 0) => basis_vec(i),
                    (1, 1) => basis_vec(pt).scale(&pairing[i][j]),
                    _ => zero_class.clone(),
                };
            }
        }

        let mut canon = vec![Rat::zero(); d];
        for (i, k) in canonical.into_iter().enumerate() {
            canon[i + 1] = k;
        }

        let mut model = SurfaceModel {
            name: name.into(),
            b2,
            pairing,
            dual,
            canonical: CohClass::from_coeffs(canon),
            products,
            diagonals: Vec::new(),
        };
        model.diagonals = (0..d)
            .map(|x| {
                let mut entries = Vec::new();
                let bx = model.basis(x);
                for a in 0..d {
                    // δ(α) = Σ_a (α b_a) ⊗ b^a
                    let left = model.cup(&bx, &model.basis(a));
                    for (i, ci) in left.support() {
                        for (j, cj) in model.dual[a].support() {
                            entries.push((i, j, ci * cj));
                        }
                    }
                }
                merge_entries(entries)
            })
            .collect();
        Ok(model)
    }

    pub fn p2() -> Self {
        Self::formal("p2", vec![vec![rat(1)]], vec![rat(-3)]).expect("valid preset")
    }

    pub fn p1xp1() -> Self {
        Self::formal(
            "p1xp1",
            vec![vec![rat(0), rat(1)], vec![rat(1), rat(0)]],
            vec![rat(-2), rat(-2)],
        )
        .expect("valid preset")
    }

    pub fn preset(name: &str) -> Result<Self, SurfaceError> {
        match name {
            "p2" => Ok(Self::p2()),
            "p1xp1" => Ok(Self::p1xp1()),
            other => Err(SurfaceError::UnknownPreset(other.to_string())),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn b2(&self) -> usize {
        self.b2
    }

    pub fn dim(&self) -> usize {
        self.b2 + 2
    }

    pub fn point_index(&self) -> usize {
        self.b2 + 1
    }

    /// Algebraic degree of basis element `i`.
    pub fn degree(&self, i: usize) -> u32 {
        if i == 0 {
            0
        } else if i == self.point_index() {
            2
        } else {
            1
        }
    }

    pub fn basis(&self, i: usize) -> CohClass {
        let mut c = vec![Rat::zero(); self.dim()];
        c[i] = Rat::one();
        CohClass::from_coeffs(c)
    }

    pub fn zero_class(&self) -> CohClass {
        CohClass::from_coeffs(vec![Rat::zero(); self.dim()])
    }

    pub fn one(&self) -> CohClass {
        self.basis(0)
    }

    pub fn point(&self) -> CohClass {
        self.basis(self.point_index())
    }

    /// A class in `H^2` from its coordinates in `e_1..e_b2`.
    pub fn divisor(&self, coords: &[Rat]) -> Result<CohClass, SurfaceError> {
        if coords.len() != self.b2 {
            return Err(SurfaceError::Dimension { expected: self.b2, got: coords.len() });
        }
        let mut c = vec![Rat::zero(); self.dim()];
        c[1..=self.b2].clone_from_slice(coords);
        Ok(CohClass::from_coeffs(c))
    }

    pub fn divisor_coords(&self, c: &CohClass) -> Vec<Rat> {
        c.coeffs[1..=self.b2].to_vec()
    }

    pub fn canonical(&self) -> &CohClass {
        &self.canonical
    }

    pub fn cup(&self, a: &CohClass, b: &CohClass) -> CohClass {
        let mut out = self.zero_class();
        for (i, ci) in a.support() {
            for (j, cj) in b.support() {
                let coef = ci * cj;
                for (k, ck) in self.products[i][j].support() {
                    out.coeffs[k] += &coef * ck;
                }
            }
        }
        out
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &CohClass {
        &self.products[i][j]
    }

    pub fn integrate(&self, a: &CohClass) -> Rat {
        a.coeffs[self.point_index()].clone()
    }

    /// `∫ b_i b_j`.
    pub fn pairing(&self, i: usize, j: usize) -> &Rat {
        &self.pairing[i][j]
    }

    pub fn pair(&self, a: &CohClass, b: &CohClass) -> Rat {
        self.integrate(&self.cup(a, b))
    }

    pub fn dual_basis(&self) -> &[CohClass] {
        &self.dual
    }

    /// `δ(α) = Σ_b (α b) ⊗ b^∨`, as a list of tensor factors.
    pub fn diagonal(&self, alpha: &CohClass) -> Vec<(CohClass, CohClass)> {
        (0..self.dim())
            .map(|b| (self.cup(alpha, &self.basis(b)), self.dual[b].clone()))
            .filter(|(l, r)| !l.is_zero() && !r.is_zero())
            .collect()
    }

    /// `δ(b_x)` as sparse coefficients of `b_a ⊗ b_b`.
    pub fn basis_diagonal(&self, x: usize) -> &[(usize, usize, Rat)] {
        &self.diagonals[x]
    }

    pub fn k_squared(&self) -> Rat {
        self.pair(&self.canonical, &self.canonical)
    }

    pub fn euler_number(&self) -> i64 {
        2 + self.b2 as i64
    }

    pub fn chi_o(&self) -> Rat {
        (rat(self.euler_number()) + self.k_squared()) / rat(12)
    }

    /// Riemann–Roch on the surface: `χ(L) = (L^2 - L.K)/2 + χ(O)`.
    pub fn chi_line_bundle(&self, l: &CohClass) -> Rat {
        (self.pair(l, l) - self.pair(l, &self.canonical)) / rat(2) + self.chi_o()
    }
}

fn merge_entries(mut entries: Vec<(usize, usize, Rat)>) -> Vec<(usize, usize, Rat)> {
    entries.sort_by_key(|e| (e.0, e.1));
    let mut out: Vec<(usize, usize, Rat)> = Vec::new();
    for (a, b, c) in entries {
        match out.last_mut() {
            Some(last) if last.0 == a && last.1 == b => last.2 += c,
            _ => out.push((a, b, c)),
        }
    }
    out.retain(|e| !e.2.is_zero());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p2_products() {
        let s = SurfaceModel::p2();
        let h = s.basis(1);
        assert_eq!(s.cup(&h, &h), s.point());
        assert!(s.cup(&s.point(), &s.point()).is_zero());
        assert_eq!(s.k_squared(), rat(9));
        assert_eq!(s.chi_o(), rat(1));
        assert_eq!(s.integrate(&s.cup(s.canonical(), s.canonical())), rat(9));
        assert_eq!(s.integrate(&s.point()), rat(1));
        assert_eq!(s.integrate(&s.one()), rat(0));
    }

    #[test]
    fn p1xp1_products() {
        let s = SurfaceModel::p1xp1();
        let (h1, h2) = (s.basis(1), s.basis(2));
        assert_eq!(s.cup(&h1, &h2), s.point());
        assert!(s.cup(&h1, &h1).is_zero());
        assert_eq!(s.k_squared(), rat(8));
        assert_eq!(s.chi_o(), rat(1));
    }

    #[test]
    fn formal_model_noether() {
        let s = SurfaceModel::formal(
            "formal",
            vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)]],
            vec![rat(4), rat(2)],
        )
        .unwrap();
        assert_eq!(s.k_squared(), rat(20));
        assert_eq!(s.chi_o(), rat(2));
    }

    #[test]
    fn singular_gram_rejected() {
        let err = SurfaceModel::formal("bad", vec![vec![rat(1), rat(1)], vec![rat(1), rat(1)]], vec![rat(0), rat(0)])
            .unwrap_err();
        assert_eq!(err, SurfaceError::SingularGram);
        assert!(SurfaceModel::preset("k3").is_err());
    }

    #[test]
    fn dual_basis_identity() {
        for s in [SurfaceModel::p2(), SurfaceModel::p1xp1()] {
            for i in 0..s.dim() {
                for j in 0..s.dim() {
                    let v = s.pair(&s.basis(i), &s.dual_basis()[j]);
                    assert_eq!(v, if i == j { rat(1) } else { rat(0) });
                }
            }
        }
    }

    #[test]
    fn diagonal_of_point_and_one() {
        let s = SurfaceModel::p2();
        let d = s.diagonal(&s.point());
        assert_eq!(d, vec![(s.point(), s.point())]);
        // δ(1) = 1⊗pt + h⊗h + pt⊗1
        let mut d1 = s.diagonal(&s.one());
        d1.sort();
        let mut expected = vec![(s.one(), s.point()), (s.basis(1), s.basis(1)), (s.point(), s.one())];
        expected.sort();
        assert_eq!(d1, expected);
    }

    #[test]
    fn diagonal_push_pull() {
        // Σ_i ∫(β_i γ) ∫(γ_i δ) = ∫(α γ δ)
        let s = SurfaceModel::p1xp1();
        let alpha = CohClass::from_coeffs(vec![rat(2), rat(-1), rat(3), rat(5)]);
        let gamma = CohClass::from_coeffs(vec![rat(1), rat(4), rat(-2), rat(7)]);
        let delta = CohClass::from_coeffs(vec![rat(-3), rat(1), rat(1), rat(2)]);
        let lhs = s
            .diagonal(&alpha)
            .iter()
            .fold(rat(0), |acc, (b, c)| acc + s.pair(b, &gamma) * s.pair(c, &delta));
        let rhs = s.integrate(&s.cup(&s.cup(&alpha, &gamma), &delta));
        assert_eq!(lhs, rhs);
    }
}
