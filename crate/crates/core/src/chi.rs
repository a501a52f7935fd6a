//! `χ(S^[n], det F^[n])` on the toric surfaces `P^2` and `P^1 x P^1` by
//! holomorphic Lefschetz over monomial-ideal fixed points.
//!
//! All weights are characters of functions: a chart with local weights
//! `(u, v)` has coordinate functions `x, y` of those weights, and a fixed
//! point contributes `e^{μ} / Π (1 - e^{w})`. After a one-parameter
//! specialization `t = (a, b) x` each term is `[x^{2n}] e^{μx} Π B(w x) / Π w`
//! with `B(y) = y / (e^y - 1)`.

use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::TruncatedSeries;
use crate::error::ChiError;
use crate::scalar::{as_integer, factorial, rat, Rat};
use crate::surface::SurfaceModel;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let len = self.0.first().copied().unwrap_or(0);
        Partition((0..len).map(|i| self.0.iter().filter(|&&p| p > i).count()).collect())
    }

    /// Cells `(i, j)`: row `j` has length `λ_j`, `i` runs along it.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().enumerate().flat_map(|(j, &len)| (0..len).map(move |i| (i, j)))
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=n.min(max)).rev() {
                cur.push(p);
                rec(n - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

/// `a t_1 + b t_2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct EquivWeight {
    pub a: i64,
    pub b: i64,
}

impl EquivWeight {
    pub const fn new(a: i64, b: i64) -> Self {
        EquivWeight { a, b }
    }

    pub fn specialize(&self, spec: (i64, i64)) -> i64 {
        self.a * spec.0 + self.b * spec.1
    }
}

impl std::ops::Add for EquivWeight {
    type Output = EquivWeight;
    fn add(self, o: EquivWeight) -> EquivWeight {
        EquivWeight::new(self.a + o.a, self.b + o.b)
    }
}

impl std::ops::Sub for EquivWeight {
    type Output = EquivWeight;
    fn sub(self, o: EquivWeight) -> EquivWeight {
        EquivWeight::new(self.a - o.a, self.b - o.b)
    }
}

impl std::ops::Mul<EquivWeight> for i64 {
    type Output = EquivWeight;
    fn mul(self, w: EquivWeight) -> EquivWeight {
        EquivWeight::new(self * w.a, self * w.b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ToricSurface {
    P2,
    P1xP1,
}

/// A torus-fixed chart: local weights of the two coordinate functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Chart {
    pub u: EquivWeight,
    pub v: EquivWeight,
}

impl ToricSurface {
    pub fn from_model(model: &SurfaceModel) -> Result<Self, ChiError> {
        Self::from_name(model.name())
    }

    pub fn from_name(name: &str) -> Result<Self, ChiError> {
        match name {
            "p2" => Ok(ToricSurface::P2),
            "p1xp1" => Ok(ToricSurface::P1xP1),
            other => Err(ChiError::UnsupportedSurface(other.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ToricSurface::P2 => "p2",
            ToricSurface::P1xP1 => "p1xp1",
        }
    }

    pub fn model(&self) -> SurfaceModel {
        match self {
            ToricSurface::P2 => SurfaceModel::p2(),
            ToricSurface::P1xP1 => SurfaceModel::p1xp1(),
        }
    }

    /// Number of entries in a line bundle degree.
    pub fn degree_len(&self) -> usize {
        match self {
            ToricSurface::P2 => 1,
            ToricSurface::P1xP1 => 2,
        }
    }

    pub fn charts(&self) -> Vec<Chart> {
        let t1 = EquivWeight::new(1, 0);
        let t2 = EquivWeight::new(0, 1);
        match self {
            ToricSurface::P2 => vec![
                Chart { u: t1, v: t2 },
                Chart { u: -1 * t1, v: t2 - t1 },
                Chart { u: -1 * t2, v: t1 - t2 },
            ],
            ToricSurface::P1xP1 => {
                let mut out = Vec::new();
                for s1 in [1, -1] {
                    for s2 in [1, -1] {
                        out.push(Chart { u: s1 * t1, v: s2 * t2 });
                    }
                }
                out
            }
        }
    }

    /// Fiber weight of the standard lift of `O(degree)` at each chart.
    pub fn default_lift(&self, degree: &[i64]) -> Vec<EquivWeight> {
        let t1 = EquivWeight::new(1, 0);
        let t2 = EquivWeight::new(0, 1);
        match self {
            ToricSurface::P2 => {
                let d = degree[0];
                vec![EquivWeight::default(), d * t1, d * t2]
            }
            ToricSurface::P1xP1 => self
                .charts()
                .iter()
                .map(|c| {
                    let mut w = EquivWeight::default();
                    if c.u.a < 0 {
                        w = w + degree[0] * t1;
                    }
                    if c.v.b < 0 {
                        w = w + degree[1] * t2;
                    }
                    w
                })
                .collect(),
        }
    }
}

/// One partition per chart.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HilbFixedPoint {
    pub parts: Vec<Partition>,
}

impl HilbFixedPoint {
    pub fn size(&self) -> usize {
        self.parts.iter().map(Partition::size).sum()
    }
}

pub fn hilb_fixed_points(surface: ToricSurface, n: usize) -> Vec<HilbFixedPoint> {
    let charts = surface.charts().len();
    let by_size: Vec<Vec<Partition>> = (0..=n).map(Partition::all).collect();
    let mut out = Vec::new();
    let mut cur: Vec<Partition> = Vec::new();
    fn rec(
        left: usize,
        charts: usize,
        by_size: &[Vec<Partition>],
        cur: &mut Vec<Partition>,
        out: &mut Vec<HilbFixedPoint>,
    ) {
        if cur.len() + 1 == charts {
            for p in &by_size[left] {
                cur.push(p.clone());
                out.push(HilbFixedPoint { parts: cur.clone() });
                cur.pop();
            }
            return;
        }
        for k in 0..=left {
            for p in &by_size[k] {
                cur.push(p.clone());
                rec(left - k, charts, by_size, cur, out);
                cur.pop();
            }
        }
    }
    rec(n, charts, &by_size, &mut cur, &mut out);
    out
}

/// The `2n` function weights of the tangent space at a fixed point.
pub fn tangent_weights(surface: ToricSurface, fp: &HilbFixedPoint) -> Vec<EquivWeight> {
    let mut out = Vec::with_capacity(2 * fp.size());
    for (chart, lambda) in surface.charts().iter().zip(&fp.parts) {
        let conj = lambda.conjugate();
        for (i, j) in lambda.cells() {
            let arm = (lambda.parts()[j] - i - 1) as i64;
            let leg = (conj.parts()[i] - j - 1) as i64;
            out.push((arm + 1) * chart.u - leg * chart.v);
            out.push(-arm * chart.u + (leg + 1) * chart.v);
        }
    }
    out
}

/// `F = Σ ± O(d_i)` in K-theory.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BundleSpec {
    pub surface: ToricSurface,
    /// `(sign, degree)` with sign `±1`.
    pub summands: Vec<(i64, Vec<i64>)>,
}

impl BundleSpec {
    pub fn new(surface: ToricSurface, summands: Vec<(i64, Vec<i64>)>) -> Result<Self, ChiError> {
        for (sign, d) in &summands {
            if d.len() != surface.degree_len() {
                return Err(ChiError::DegreeShape { expected: surface.degree_len(), got: d.len() });
            }
            if sign.abs() != 1 {
                return Err(ChiError::Parse(format!("sign {sign}")));
            }
        }
        Ok(BundleSpec { surface, summands })
    }

    pub fn line(surface: ToricSurface, degree: Vec<i64>) -> Result<Self, ChiError> {
        Self::new(surface, vec![(1, degree)])
    }

    /// Parse `"+1,-0"` (P^2) or `"+1:2,-(0,1)"` (P^1 x P^1). An empty string
    /// is the zero class.
    pub fn parse(surface: ToricSurface, text: &str) -> Result<Self, ChiError> {
        let bad = || ChiError::Parse(text.to_string());
        let mut summands = Vec::new();
        let mut depth = 0i32;
        let mut tokens = Vec::new();
        let mut cur = String::new();
        for ch in text.chars().filter(|c| !c.is_whitespace()) {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    tokens.push(std::mem::take(&mut cur));
                    continue;
                }
                _ => {}
            }
            cur.push(ch);
        }
        if !cur.is_empty() || !tokens.is_empty() {
            tokens.push(cur);
        }
        for tok in tokens {
            let (sign, rest) = match tok.chars().next() {
                Some('+') => (1, &tok[1..]),
                Some('-') | Some('−') => (-1, &tok[tok.chars().next().unwrap().len_utf8()..]),
                _ => (1, tok.as_str()),
            };
            let rest = rest.trim_start_matches('(').trim_end_matches(')');
            let degree = rest
                .split([':', ','])
                .map(|p| p.parse::<i64>().map_err(|_| bad()))
                .collect::<Result<Vec<_>, _>>()?;
            summands.push((sign, degree));
        }
        Self::new(surface, summands)
    }

    pub fn rank(&self) -> i64 {
        self.summands.iter().map(|(s, _)| s).sum()
    }

    pub fn det_degree(&self) -> Vec<i64> {
        let mut d = vec![0; self.surface.degree_len()];
        for (s, deg) in &self.summands {
            for (x, y) in d.iter_mut().zip(deg) {
                *x += s * y;
            }
        }
        d
    }
}

impl fmt::Display for BundleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .summands
            .iter()
            .map(|(s, d)| {
                let sign = if *s > 0 { '+' } else { '-' };
                let ds: Vec<String> = d.iter().map(i64::to_string).collect();
                if d.iter().any(|x| *x < 0) {
                    format!("{sign}({})", ds.join(","))
                } else {
                    format!("{sign}{}", ds.join(":"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Chart fiber weights of each summand of a bundle; `shift` is added to
/// every chart of every summand (a change of equivariant lift).
pub fn bundle_lifts(bundle: &BundleSpec, shift: EquivWeight) -> Vec<(i64, Vec<EquivWeight>)> {
    bundle
        .summands
        .iter()
        .map(|(s, d)| {
            let lift = bundle.surface.default_lift(d).into_iter().map(|w| w + shift).collect();
            (*s, lift)
        })
        .collect()
}

/// Weight of `det F^{[n]}` at a fixed point for the given chart lifts.
pub fn det_taut_weight(surface: ToricSurface, fp: &HilbFixedPoint, lifts: &[(i64, Vec<EquivWeight>)]) -> EquivWeight {
    let mut total = EquivWeight::default();
    for (s, lift) in lifts {
        for ((chart, lambda), mu) in surface.charts().iter().zip(&fp.parts).zip(lift) {
            for (i, j) in lambda.cells() {
                total = total + *s * (*mu + i as i64 * chart.u + j as i64 * chart.v);
            }
        }
    }
    total
}

/// `log(y / (e^y - 1))` through `y^order`.
fn log_bernoulli(order: usize) -> Vec<Rat> {
    let q = TruncatedSeries::from_fn(order, |k| Rat::one() / factorial(k as u64 + 1));
    q.inverse()
        .and_then(|b| b.log())
        .expect("series with constant term 1")
        .into_coeffs()
}

struct PointData {
    /// coefficients of `Π B(w_i x)` through `x^{2n}`
    product: Vec<Rat>,
    inv_weight: Rat,
    fp: HilbFixedPoint,
}

/// Fixed points of `S^[n]` with their specialized tangent data, reusable
/// for every bundle.
pub struct Localization {
    surface: ToricSurface,
    n: usize,
    spec: (i64, i64),
    points: Vec<PointData>,
}

impl Localization {
    /// Fails when some tangent weight specializes to zero.
    pub fn new(surface: ToricSurface, n: usize, spec: (i64, i64)) -> Result<Self, ChiError> {
        let fps = hilb_fixed_points(surface, n);
        let lb = log_bernoulli(2 * n);
        let points = fps
            .into_par_iter()
            .map(|fp| {
                let ws: Vec<i64> = tangent_weights(surface, &fp).iter().map(|w| w.specialize(spec)).collect();
                if ws.contains(&0) {
                    return Err(ChiError::NoGenericSpecialization);
                }
                let mut prod = Rat::one();
                for w in &ws {
                    prod *= rat(*w);
                }
                // log Π B(w x) = Σ_k lb_k p_k x^k with power sums p_k
                let mut log = vec![Rat::zero(); 2 * n + 1];
                for (k, l) in lb.iter().enumerate().skip(1) {
                    if l.is_zero() {
                        continue;
                    }
                    let pk: num_bigint::BigInt = ws.iter().map(|w| num_bigint::BigInt::from(*w).pow(k as u32)).sum();
                    log[k] = l * Rat::from_integer(pk);
                }
                let product = TruncatedSeries::new(log, 2 * n).exp().expect("zero constant term").into_coeffs();
                Ok(PointData { product, inv_weight: prod.recip(), fp })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Localization { surface, n, spec, points })
    }

    /// Default specialization `(1, n!+1)`, re-drawn from `seed` on degeneracy.
    pub fn generic(surface: ToricSurface, n: usize, seed: u64) -> Result<Self, ChiError> {
        let first = (1, (1..=n as i64).product::<i64>() + 1);
        if let Ok(l) = Self::new(surface, n, first) {
            return Ok(l);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..64 {
            let spec = (rng.gen_range(1..1000), rng.gen_range(1000..100_000));
            if let Ok(l) = Self::new(surface, n, spec) {
                return Ok(l);
            }
        }
        Err(ChiError::NoGenericSpecialization)
    }

    pub fn spec(&self) -> (i64, i64) {
        self.spec
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_fixed_points(&self) -> usize {
        self.points.len()
    }

    pub fn fixed_points(&self) -> impl Iterator<Item = &HilbFixedPoint> {
        self.points.iter().map(|p| &p.fp)
    }

    /// `χ(det F^{[n]})` for the bundle with the given lift shift.
    pub fn chi_det_lifted(&self, bundle: &BundleSpec, shift: EquivWeight) -> Rat {
        let lifts = bundle_lifts(bundle, shift);
        let top = 2 * self.n;
        self.points
            .par_iter()
            .map(|p| {
                let mu = rat(det_taut_weight(self.surface, &p.fp, &lifts).specialize(self.spec));
                // [x^{2n}] e^{μx} P(x)
                let mut acc = Rat::zero();
                let mut mu_pow = Rat::one();
                for k in 0..=top {
                    if k > 0 {
                        mu_pow = &mu_pow * &mu / rat(k as i64);
                    }
                    acc += &mu_pow * &p.product[top - k];
                }
                acc * &p.inv_weight
            })
            .reduce(Rat::zero, |a, b| a + b)
    }

    pub fn chi_det(&self, bundle: &BundleSpec) -> Rat {
        self.chi_det_lifted(bundle, EquivWeight::default())
    }
}

/// `χ(S^[n], det F^[n])`, checked against a second specialization and
/// required to be an integer.
pub fn chi_det(bundle: &BundleSpec, n: usize, seed: u64) -> Result<Rat, ChiError> {
    let a = Localization::generic(bundle.surface, n, seed)?;
    let va = a.chi_det(bundle);
    let b = second_specialization(bundle.surface, n, a.spec(), seed)?;
    let vb = b.chi_det(bundle);
    if va != vb || as_integer(&va).is_none() {
        return Err(ChiError::SpecializationMismatch { first: a.spec(), second: b.spec(), a: Box::new(va), b: Box::new(vb) });
    }
    Ok(va)
}

/// A specialization different from `avoid`.
pub fn second_specialization(
    surface: ToricSurface,
    n: usize,
    avoid: (i64, i64),
    seed: u64,
) -> Result<Localization, ChiError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    for _ in 0..64 {
        let spec = (rng.gen_range(2..50), rng.gen_range(100..10_000));
        if spec == avoid {
            continue;
        }
        if let Ok(l) = Localization::new(surface, n, spec) {
            return Ok(l);
        }
    }
    Err(ChiError::NoGenericSpecialization)
}

/// Localization data for `n = 1..=order` on one or more surfaces, each
/// with two independent specializations.
pub struct LocalizationTable {
    order: usize,
    levels: Vec<(ToricSurface, usize, Localization, Localization)>,
}

impl LocalizationTable {
    pub fn new(surfaces: &[ToricSurface], order: usize, seed: u64) -> Result<Self, ChiError> {
        let mut jobs = Vec::new();
        for s in surfaces {
            for n in 1..=order {
                jobs.push((*s, n));
            }
        }
        let levels = jobs
            .into_par_iter()
            .map(|(s, n)| {
                let a = Localization::generic(s, n, seed)?;
                let b = second_specialization(s, n, a.spec(), seed)?;
                Ok((s, n, a, b))
            })
            .collect::<Result<Vec<_>, ChiError>>()?;
        Ok(LocalizationTable { order, levels })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `χ(det F^[n])`, checked across both specializations.
    pub fn chi_det(&self, bundle: &BundleSpec, n: usize) -> Result<Rat, ChiError> {
        if n == 0 {
            return Ok(Rat::one());
        }
        let (_, _, a, b) = self
            .levels
            .iter()
            .find(|(s, m, _, _)| *s == bundle.surface && *m == n)
            .ok_or_else(|| ChiError::UnsupportedSurface(bundle.surface.name().to_string()))?;
        let va = a.chi_det(bundle);
        let vb = b.chi_det(bundle);
        if va != vb || as_integer(&va).is_none() {
            return Err(ChiError::SpecializationMismatch { first: a.spec(), second: b.spec(), a: Box::new(va), b: Box::new(vb) });
        }
        Ok(va)
    }

    /// `1 + Σ_{n=1..order} χ(det F^[n]) z^n`.
    pub fn series(&self, bundle: &BundleSpec) -> Result<TruncatedSeries<Rat>, ChiError> {
        let coeffs = (0..=self.order)
            .map(|n| self.chi_det(bundle, n))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TruncatedSeries::new(coeffs, self.order))
    }
}

/// `1 + Σ_{n=1..order} χ(det F^[n]) z^n` for several bundles at once.
pub fn chi_series(bundles: &[BundleSpec], order: usize, seed: u64) -> Result<Vec<TruncatedSeries<Rat>>, ChiError> {
    let mut surfaces: Vec<ToricSurface> = Vec::new();
    for b in bundles {
        if !surfaces.contains(&b.surface) {
            surfaces.push(b.surface);
        }
    }
    let table = LocalizationTable::new(&surfaces, order, seed)?;
    bundles.iter().map(|b| table.series(b)).collect()
}
