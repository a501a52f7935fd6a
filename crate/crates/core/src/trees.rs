//! Increasing binary trees, the hook polynomials `F_n`, the constants `D_n`
//! and the weighted Cayley identity, as brute-force oracles.

use num_traits::{One, Zero};

use crate::algebra::{Poly, TruncatedSeries};
use crate::chern::catalan_numbers;
use crate::error::FockError;
use crate::fock::{Fock, FockVector};
use crate::scalar::{binomial_int, factorial, rat, ratio, Rat};

/// Nodes are labelled `1..=n`; `children[k-1]` holds the left and right
/// child labels of node `k`. Node 1 is the root.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IncreasingBinaryTree {
    children: Vec<[Option<usize>; 2]>,
}

impl IncreasingBinaryTree {
    pub fn size(&self) -> usize {
        self.children.len()
    }

    pub fn children(&self, label: usize) -> [Option<usize>; 2] {
        self.children[label - 1]
    }

    pub fn is_increasing(&self) -> bool {
        self.children
            .iter()
            .enumerate()
            .all(|(i, cs)| cs.iter().flatten().all(|&c| c > i + 1))
    }

    /// Leaf ranges `[lo, hi)` of every internal node of the completed full
    /// tree, leaves numbered left to right.
    pub fn hook_ranges(&self) -> Vec<(usize, usize)> {
        fn walk(t: &IncreasingBinaryTree, node: usize, next: &mut usize, out: &mut Vec<(usize, usize)>) {
            let lo = *next;
            for side in 0..2 {
                match t.children(node)[side] {
                    Some(c) => walk(t, c, next, out),
                    None => *next += 1,
                }
            }
            out.push((lo, *next));
        }
        let mut out = Vec::new();
        if self.size() > 0 {
            walk(self, 1, &mut 0, &mut out);
        }
        out
    }

    /// Product of the weighted hook lengths as a polynomial in `x_0..x_n`.
    pub fn weight_poly(&self) -> Poly<Rat> {
        let mut acc = Poly::one();
        for (lo, hi) in self.hook_ranges() {
            let mut hook = Poly::zero();
            for i in lo..hi {
                hook = hook + Poly::var(i);
            }
            acc = acc * hook;
        }
        acc
    }

    pub fn weight_eval(&self, xs: &[Rat]) -> Rat {
        self.hook_ranges()
            .iter()
            .map(|&(lo, hi)| xs[lo..hi].iter().fold(Rat::zero(), |a, b| a + b))
            .fold(Rat::one(), |a, b| a * b)
    }
}

/// All increasing binary trees on `n` nodes (there are `n!`).
pub fn enumerate_trees(n: usize) -> Vec<IncreasingBinaryTree> {
    let mut trees = vec![IncreasingBinaryTree { children: Vec::new() }];
    for k in 1..=n {
        let mut next = Vec::with_capacity(trees.len() * k);
        for t in &trees {
            if k == 1 {
                next.push(IncreasingBinaryTree { children: vec![[None, None]] });
                continue;
            }
            for node in 0..t.size() {
                for side in 0..2 {
                    if t.children[node][side].is_none() {
                        let mut c = t.clone();
                        c.children[node][side] = Some(k);
                        c.children.push([None, None]);
                        next.push(c);
                    }
                }
            }
        }
        trees = next;
    }
    trees
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// `F_n(x_0, ..., x_n)` from the definition: sum over trees, then over all
/// permutations of the leaf variables.
pub fn f_n(n: usize) -> Poly<Rat> {
    let mut tree_sum = Poly::zero();
    for t in enumerate_trees(n) {
        tree_sum = tree_sum + t.weight_poly();
    }
    let mut out = Poly::zero();
    for perm in permutations(n + 1) {
        out = out + tree_sum.rename(&perm);
    }
    out
}

/// `2^n n! (x_0 + ... + x_n)^n`.
pub fn f_n_closed(n: usize) -> Poly<Rat> {
    let mut s = Poly::zero();
    for i in 0..=n {
        s = s + Poly::var(i);
    }
    s.pow(n as u32).scale_by(&(rat(1 << n) * factorial(n as u64)))
}

/// `Σ_{T ∈ B_n} T_wt(xs)` with `n = xs.len() - 1`, by splitting at the root:
/// a tree with `k` nodes is a root over subtrees of sizes `a` and `k-1-a`,
/// with `binom(k-1, a)` interleavings of the labels.
pub fn tree_sum_eval(xs: &[Rat]) -> Rat {
    let m = xs.len();
    // g[l][r] for leaves l..=r
    let mut g = vec![vec![Rat::zero(); m]; m];
    for (l, row) in g.iter_mut().enumerate() {
        row[l] = Rat::one();
    }
    for len in 2..=m {
        for l in 0..=m - len {
            let r = l + len - 1;
            let k = (len - 1) as i64;
            let hook: Rat = xs[l..=r].iter().fold(Rat::zero(), |a, b| a + b);
            let mut acc = Rat::zero();
            for a in 0..k {
                let mid = l + a as usize;
                acc += binomial_int(k - 1, a as u64) * &g[l][mid] * &g[mid + 1][r];
            }
            g[l][r] = hook * acc;
        }
    }
    g[0][m - 1].clone()
}

fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Product of the factorials of the multiplicities of the entries.
pub fn aut<T: Ord + Clone>(v: &[T]) -> Rat {
    let mut s = v.to_vec();
    s.sort();
    let mut out = Rat::one();
    let mut run = 1u64;
    for i in 1..=s.len() {
        if i < s.len() && s[i] == s[i - 1] {
            run += 1;
        } else {
            out *= factorial(run);
            run = 1;
        }
    }
    out
}

/// `F_n` evaluated at integer arguments, summing over distinct
/// rearrangements and weighting by the stabilizer order.
pub fn f_n_eval(point: &[i64]) -> Rat {
    let mut p = point.to_vec();
    p.sort();
    let mut total = Rat::zero();
    loop {
        let xs: Vec<Rat> = p.iter().map(|&x| rat(x)).collect();
        total += tree_sum_eval(&xs);
        if !next_permutation(&mut p) {
            break;
        }
    }
    total * aut(point)
}

/// Checks `F_n = (Σx) Σ_{S} binom(n-1,|S|-1) F_{|S|-1}(S) F_{n-|S|}(S^c)`
/// over proper nonempty subsets `S`.
pub fn recursion_holds(n: usize) -> bool {
    if n == 0 {
        return true;
    }
    let fs: Vec<Poly<Rat>> = (0..=n).map(f_n).collect();
    let vars = n + 1;
    let mut sum = Poly::zero();
    for mask in 1..(1usize << vars) - 1 {
        let s: Vec<usize> = (0..vars).filter(|i| mask >> i & 1 == 1).collect();
        let c: Vec<usize> = (0..vars).filter(|i| mask >> i & 1 == 0).collect();
        let a = fs[s.len() - 1].rename(&s);
        let b = fs[n - s.len()].rename(&c);
        sum = sum + (a * b).scale_by(&binomial_int(n as i64 - 1, s.len() as u64 - 1));
    }
    let mut total = Poly::zero();
    for i in 0..vars {
        total = total + Poly::var(i);
    }
    total * sum == fs[n]
}

/// Degree sequences of all labelled trees on `p` nodes, enumerated as
/// acyclic edge sets of size `p - 1`.
pub fn labelled_tree_degrees(p: usize) -> Vec<Vec<u32>> {
    let edges: Vec<(usize, usize)> = (0..p).flat_map(|i| (i + 1..p).map(move |j| (i, j))).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    fn rec(start: usize, p: usize, edges: &[(usize, usize)], chosen: &mut Vec<usize>, out: &mut Vec<Vec<u32>>) {
        if chosen.len() + 1 == p {
            let mut parent: Vec<usize> = (0..p).collect();
            let mut deg = vec![0u32; p];
            for &e in chosen.iter() {
                let (a, b) = edges[e];
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra == rb {
                    return;
                }
                parent[ra] = rb;
                deg[a] += 1;
                deg[b] += 1;
            }
            out.push(deg);
            return;
        }
        for e in start..edges.len() {
            chosen.push(e);
            rec(e + 1, p, edges, chosen, out);
            chosen.pop();
        }
    }
    let mut out = Vec::new();
    if p >= 1 {
        rec(0, p, &edges, &mut Vec::new(), &mut out);
    }
    out
}

/// `y_1 ... y_p (y_1 + ... + y_p)^{p-2} = Σ_T Π y_i^{deg_T(i)}`.
pub fn cayley_oracle(p: usize) -> bool {
    assert!(p >= 2);
    let mut rhs = Poly::zero();
    for deg in labelled_tree_degrees(p) {
        rhs.add_term(deg, Rat::one());
    }
    let mut sum = Poly::zero();
    let mut prod = Poly::one();
    for i in 0..p {
        sum = sum + Poly::var(i);
        prod = prod * Poly::var(i);
    }
    prod * sum.pow(p as u32 - 2) == rhs
}

/// `((2n-1)/n) C_{n-1}`.
pub fn d_n_closed(n: usize) -> Rat {
    ratio(2 * n as i64 - 1, n as i64) * catalan_numbers(n - 1)[n - 1].clone()
}

/// From the tree expansion: `(2n-1)/n` times the coefficient of
/// `q_1(p)^n q_{-1}(p)^{n-1}` in `q_1^{(2n-2)}(p)`, which is
/// `F_{2n-2}(1^n, (-1)^{n-1}) / (2^{2n-2} n! (n-1)!)`.
pub fn d_n_from_trees(n: usize) -> Rat {
    let mut point = vec![1i64; n];
    point.extend(vec![-1i64; n - 1]);
    let coeff = f_n_eval(&point) / (rat(1 << (2 * n - 2)) * aut(&point));
    ratio(2 * n as i64 - 1, n as i64) * coeff
}

/// `[x^n] log C(x)`.
pub fn d_n_from_log_catalan(n: usize) -> Rat {
    let c = TruncatedSeries::new(catalan_numbers(n), n);
    c.log().expect("constant term 1").coeff(n).clone()
}

/// From the operator engine: `∫ q_1^{(2n-2)}(p) q_1(S)^{n-1} 1` equals the
/// leading coefficient times `(-1)^{n-1} (n-1)!`.
pub fn d_n_from_fock(fock: &Fock, n: usize) -> Result<Rat, FockError> {
    let one = fock.model().one();
    let mut v = FockVector::<Rat>::vacuum();
    for _ in 1..n {
        v = fock.q(1, &one, &v);
    }
    let w = fock.derivative_action(2 * n - 2, &fock.model().point(), &v);
    let integral = fock.integrate_hilb(&w, n)?;
    let sign = if n % 2 == 1 { rat(1) } else { rat(-1) };
    let coeff = integral / (sign * factorial(n as u64 - 1));
    Ok(ratio(2 * n as i64 - 1, n as i64) * coeff)
}

/// Mismatch in the comparison of `q_k^{(n)}(p)` with the tree expansion.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionMismatch {
    pub indices: Vec<i32>,
    pub expected: Rat,
    pub actual: Rat,
}

/// Compare `q_k^{(n)}(p)` (as a word sum) with
/// `2^{-n} Σ_{i sorted} F_n(i)/Aut(i) q_{i_1}(p) ... q_{i_{n+1}}(p)` on all
/// monomials whose indices lie in `[-w0, w0]`.
pub fn derivative_expansion_check(fock: &Fock, n: usize, k: i32, w0: i32) -> Vec<ExpansionMismatch> {
    let pt = fock.model().point_index() as u16;
    let window = (n as i32 + 1) * w0;
    let op = fock.q_index_derivative(k, n, &fock.model().point(), window);
    let mut mismatches = Vec::new();
    // expected side
    let mut seen = std::collections::BTreeSet::new();
    let mut cur = Vec::new();
    fn rec(len: usize, max: i32, w0: i32, sum: i32, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        if cur.len() == len {
            if sum == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for i in (-w0..=max).rev() {
            if i == 0 {
                continue;
            }
            cur.push(i);
            rec(len, i, w0, sum - i, cur, out);
            cur.pop();
        }
    }
    let mut vectors = Vec::new();
    rec(n + 1, w0, w0, k, &mut cur, &mut vectors);
    for idx in vectors {
        let point: Vec<i64> = idx.iter().map(|&i| i as i64).collect();
        let expected = f_n_eval(&point) / (rat(1 << n) * aut(&point));
        let word: Vec<(i32, u16)> = idx.iter().map(|&i| (i, pt)).collect();
        let actual = op.coeff(&word);
        seen.insert(word);
        if expected != actual {
            mismatches.push(ExpansionMismatch { indices: idx, expected, actual });
        }
    }
    // nothing else inside the box
    for (word, c) in op.terms() {
        if word.iter().all(|&(i, _)| i.abs() <= w0) && !seen.contains(word) {
            mismatches.push(ExpansionMismatch {
                indices: word.iter().map(|&(i, _)| i).collect(),
                expected: Rat::zero(),
                actual: c.clone(),
            });
        }
    }
    mismatches
}

/// `exp(Σ_{n=1..order} D_n w^n)`.
pub fn exp_d_series(order: usize) -> TruncatedSeries<Rat> {
    let log = TruncatedSeries::from_fn(order, |n| if n == 0 { Rat::zero() } else { d_n_closed(n) });
    log.exp().expect("zero constant term")
}
