//! Independent oracles and random generators shared by integration tests.
//!
//! Nothing here calls the elimination or complex-building code under test.

#![allow(dead_code)]

use num_traits::{One, Zero};
use quotcoh::lie::{BracketEntry, LieAlgebra};
use quotcoh::scalar::{rat, Rational};
use quotcoh::ExactMatrix;
use rand::seq::SliceRandom;
use rand::Rng;

/// Gauss–Jordan over `ℚ` with full row reduction at every step.
pub fn naive_rank(m: &ExactMatrix) -> usize {
    let mut a: Vec<Vec<Rational>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let mut r = 0;
    for c in 0..m.cols() {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let lead = a[r][c].clone();
        for x in a[r].iter_mut() {
            *x /= &lead;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..m.cols() {
                    let d = &f * &a[r][j];
                    a[i][j] -= d;
                }
            }
        }
        r += 1;
    }
    r
}

/// Leibniz determinant.
pub fn det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Rational::zero();
    permute(&mut perm, 0, &mut |p| {
        let mut inversions = 0;
        for i in 0..n {
            for j in i + 1..n {
                if p[i] > p[j] {
                    inversions += 1;
                }
            }
        }
        let mut term = if inversions % 2 == 0 { Rational::one() } else { -Rational::one() };
        for (i, &pi) in p.iter().enumerate() {
            term *= &m[i][pi];
        }
        total += term;
    });
    total
}

fn permute(p: &mut Vec<usize>, start: usize, f: &mut impl FnMut(&[usize])) {
    if start == p.len() {
        f(p);
        return;
    }
    for i in start..p.len() {
        p.swap(start, i);
        permute(p, start + 1, f);
        p.swap(start, i);
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Largest `r` with a nonzero `r×r` minor.
pub fn minor_rank(m: &ExactMatrix) -> usize {
    let max = m.rows().min(m.cols());
    for r in (1..=max).rev() {
        for rows in subsets(m.rows(), r) {
            for cols in subsets(m.cols(), r) {
                let sub: Vec<Vec<Rational>> =
                    rows.iter().map(|&i| cols.iter().map(|&j| m[(i, j)].clone()).collect()).collect();
                if !det(&sub).is_zero() {
                    return r;
                }
            }
        }
    }
    0
}

/// `α(v_1, …, v_k)` for the dual monomial `e^I`: the minor of the `v`s on rows `I`.
fn eval_monomial(indices: &[usize], vectors: &[Vec<Rational>]) -> Rational {
    let sub: Vec<Vec<Rational>> = indices.iter().map(|&i| vectors.iter().map(|v| v[i].clone()).collect()).collect();
    det(&sub)
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

fn bracket(g: &LieAlgebra, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    let n = g.dim();
    let mut out = vec![Rational::zero(); n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                out[k] += &x[i] * &y[j] * g.structure(i, j, k);
            }
        }
    }
    out
}

/// CE differential `d: Λ^k → Λ^{k+1}` by direct evaluation of
/// `(dα)(Y_0..Y_k) = Σ_{i<j} (−1)^{i+j} α([Y_i,Y_j], Y_0, …, Ŷ_i, …, Ŷ_j, …)`
/// on all increasing tuples of basis vectors.
pub fn brute_force_ce(g: &LieAlgebra, k: usize) -> ExactMatrix {
    let n = g.dim();
    let sources = subsets_lex(n, k);
    let targets = subsets_lex(n, k + 1);
    let mut m = ExactMatrix::zeros(targets.len(), sources.len());
    for (row, big) in targets.iter().enumerate() {
        let ys: Vec<Vec<Rational>> = big.iter().map(|&i| unit(n, i)).collect();
        for (col, small) in sources.iter().enumerate() {
            let mut total = Rational::zero();
            for a in 0..ys.len() {
                for b in a + 1..ys.len() {
                    let mut args = vec![bracket(g, &ys[a], &ys[b])];
                    args.extend(ys.iter().enumerate().filter(|(t, _)| *t != a && *t != b).map(|(_, y)| y.clone()));
                    let v = eval_monomial(small, &args);
                    if (a + b) % 2 == 0 {
                        total += v;
                    } else {
                        total -= v;
                    }
                }
            }
            m[(row, col)] = total;
        }
    }
    m
}

/// Lexicographically ordered `k`-subsets, generated independently of the crate.
pub fn subsets_lex(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut s = subsets(n, k);
    s.sort();
    s
}

/// Betti numbers from the oracle matrices and [`naive_rank`].
pub fn oracle_betti(g: &LieAlgebra) -> Vec<usize> {
    let n = g.dim();
    let ranks: Vec<usize> = (0..n).map(|k| naive_rank(&brute_force_ce(g, k))).collect();
    (0..=n)
        .map(|k| {
            let dim = subsets_lex(n, k).len();
            dim - ranks.get(k).copied().unwrap_or(0) - if k > 0 { ranks[k - 1] } else { 0 }
        })
        .collect()
}

pub fn binomial(n: usize, k: usize) -> usize {
    subsets(n, k).len()
}

fn random_invertible(rng: &mut impl Rng, n: usize) -> ExactMatrix {
    loop {
        let rows: Vec<Vec<Rational>> = (0..n).map(|_| (0..n).map(|_| rat(rng.gen_range(-2..=2))).collect()).collect();
        let m = ExactMatrix::from_rows(rows);
        if naive_rank(&m) == n {
            return m;
        }
    }
}

/// A random Lie algebra of dimension `n`: one of several Jacobi-valid
/// families, then a random rational change of basis.
pub fn random_lie_algebra(rng: &mut impl Rng, n: usize) -> LieAlgebra {
    let family = rng.gen_range(0..4);
    let mut entries = Vec::new();
    match family {
        // ℝ ⋉_A ℝ^{n−1}
        0 => {
            for i in 1..n {
                for j in 1..n {
                    let a = rng.gen_range(-2..=2);
                    if a != 0 {
                        entries.push(BracketEntry::new(0, i, j, rat(a)));
                    }
                }
            }
        }
        // two-step nilpotent with a central tail
        1 => {
            let centre = rng.gen_range(1..n.max(2).min(n));
            let head = n - centre;
            for i in 0..head {
                for j in i + 1..head {
                    for c in head..n {
                        let a = rng.gen_range(-2..=2);
                        if a != 0 {
                            entries.push(BracketEntry::new(i, j, c, rat(a)));
                        }
                    }
                }
            }
        }
        // sl₂ ⊕ ℝ^{n−3}
        2 => {
            entries.push(BracketEntry::new(0, 1, 1, rat(2)));
            entries.push(BracketEntry::new(0, 2, 2, rat(-2)));
            entries.push(BracketEntry::new(1, 2, 0, rat(1)));
        }
        // Heisenberg ⊕ ℝ^{n−3}, plus a derivation-free abelian tail
        _ => {
            entries.push(BracketEntry::new(0, 1, 2, rat(1)));
        }
    }
    let base = LieAlgebra::from_brackets(n, &entries).expect("valid family");
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    base.permuted(&perm).change_basis(&random_invertible(rng, n)).expect("invertible")
}

/// A random antisymmetric table that violates the Jacobi identity.
pub fn random_non_lie(rng: &mut impl Rng, n: usize) -> LieAlgebra {
    loop {
        let mut entries = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    if rng.gen_bool(0.3) {
                        let a = rng.gen_range(-2..=2);
                        if a != 0 {
                            entries.push(BracketEntry::new(i, j, k, rat(a)));
                        }
                    }
                }
            }
        }
        let g = LieAlgebra::from_brackets(n, &entries).expect("antisymmetric by construction");
        if !jacobi_holds_oracle(&g) {
            return g;
        }
    }
}

/// Jacobiator on all basis triples, evaluated with the oracle bracket.
pub fn jacobi_holds_oracle(g: &LieAlgebra) -> bool {
    let n = g.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (x, y, z) = (unit(n, i), unit(n, j), unit(n, k));
                let a = bracket(g, &bracket(g, &x, &y), &z);
                let b = bracket(g, &bracket(g, &y, &z), &x);
                let c = bracket(g, &bracket(g, &z, &x), &y);
                if (0..n).any(|t| !(&a[t] + &b[t] + &c[t]).is_zero()) {
                    return false;
                }
            }
        }
    }
    true
}
