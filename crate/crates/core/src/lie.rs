//! Finite-dimensional Lie algebras over `ℚ` given by structure constants,
//! ideals, quotients and the Chevalley–Eilenberg complex with trivial
//! coefficients.
//!
//! Cochains are expanded in the dual monomials `e^I` of [`crate::exterior`].
//! The differential follows
//! `(dα)(Y_0,…,Y_k) = Σ_{i<j} (−1)^{i+j} α([Y_i,Y_j], Y_0,…,Ŷ_i,…,Ŷ_j,…,Y_k)`,
//! so in degree one `dα(X,Y) = −α([X,Y])`.

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::complex::CochainComplex;
use crate::error::LieError;
use crate::exterior::{enumerate_basis, remove_pair, wedge_insert};
use crate::matrix::ExactMatrix;
use crate::scalar::{rat, Rational};

/// `[e_i, e_j] = Σ_k c_{ij}^k e_k`, stored densely as `c[(i·n + j)·n + k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    c: Vec<Rational>,
}

/// One bracket entry `c_{ij}^k = value`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: Rational,
}

impl BracketEntry {
    pub fn new(i: usize, j: usize, k: usize, value: Rational) -> Self {
        BracketEntry { i, j, k, value }
    }
}

impl LieAlgebra {
    pub fn abelian(dim: usize) -> Self {
        LieAlgebra { dim, c: vec![Rational::zero(); dim * dim * dim] }
    }

    /// Builds the table from entries `c_{ij}^k`; the antisymmetric partner
    /// `c_{ji}^k = −c_{ij}^k` is filled in. Unlisted constants are zero.
    pub fn from_brackets(dim: usize, entries: &[BracketEntry]) -> Result<Self, LieError> {
        let mut g = Self::abelian(dim);
        let mut set = vec![false; dim * dim * dim];
        for e in entries {
            for index in [e.i, e.j, e.k] {
                if index >= dim {
                    return Err(LieError::IndexOutOfRange { index, dim });
                }
            }
            if e.i == e.j {
                return Err(LieError::SelfBracket(e.i));
            }
            let fwd = g.idx(e.i, e.j, e.k);
            let back = g.idx(e.j, e.i, e.k);
            if set[fwd] && g.c[fwd] != e.value {
                return Err(LieError::Conflict { i: e.i, j: e.j, k: e.k });
            }
            g.c[fwd] = e.value.clone();
            g.c[back] = -e.value.clone();
            set[fwd] = true;
            set[back] = true;
        }
        Ok(g)
    }

    /// Builds from a full table in `c[(i·n + j)·n + k]` layout, checking antisymmetry.
    pub fn from_table(dim: usize, c: Vec<Rational>) -> Result<Self, LieError> {
        let expected = dim * dim * dim;
        if c.len() != expected {
            return Err(LieError::TableShape { got: c.len(), expected });
        }
        let g = LieAlgebra { dim, c };
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    if g.structure(i, j, k) != &-g.structure(j, i, k).clone() {
                        return Err(LieError::NotAntisymmetric { i, j, k });
                    }
                }
            }
        }
        Ok(g)
    }

    /// Heisenberg algebra: `[e_0, e_1] = e_2`.
    pub fn heisenberg() -> Self {
        Self::from_brackets(3, &[BracketEntry::new(0, 1, 2, rat(1))]).unwrap()
    }

    /// `sl₂` in the basis `(h, e, f)`: `[h,e] = 2e`, `[h,f] = −2f`, `[e,f] = h`.
    pub fn sl2() -> Self {
        Self::from_brackets(
            3,
            &[
                BracketEntry::new(0, 1, 1, rat(2)),
                BracketEntry::new(0, 2, 2, rat(-2)),
                BracketEntry::new(1, 2, 0, rat(1)),
            ],
        )
        .unwrap()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn structure(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[self.idx(i, j, k)]
    }

    pub fn table(&self) -> &[Rational] {
        &self.c
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    /// `[e_i, e_j]` in coordinates.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Rational> {
        let start = self.idx(i, j, 0);
        self.c[start..start + self.dim].to_vec()
    }

    /// `[x, y]` for coordinate vectors.
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.dim;
        let mut out = vec![Rational::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() || i == j {
                    continue;
                }
                let w = &x[i] * &y[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.structure(i, j, k);
                    if !c.is_zero() {
                        *o += &w * c;
                    }
                }
            }
        }
        out
    }

    /// `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j] = 0` for all `i<j<k`.
    pub fn jacobi_check(&self) -> JacobiOutcome {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let jac = (0..n).all(|t| {
                        let mut s = Rational::zero();
                        for l in 0..n {
                            s += self.structure(i, j, l) * self.structure(l, k, t);
                            s += self.structure(j, k, l) * self.structure(l, i, t);
                            s += self.structure(k, i, l) * self.structure(l, j, t);
                        }
                        s.is_zero()
                    });
                    if !jac {
                        return JacobiOutcome::Violated { triple: (i, j, k) };
                    }
                }
            }
        }
        JacobiOutcome::Holds
    }

    /// Transports the structure to the basis `f_a = Σ_i p[i][a] e_i`.
    /// `p` must be invertible.
    pub fn change_basis(&self, p: &ExactMatrix) -> Result<Self, crate::error::MatrixError> {
        let n = self.dim;
        let p_inv = p.inverse()?;
        let cols: Vec<Vec<Rational>> = (0..n).map(|a| p.column(a)).collect();
        let mut c = vec![Rational::zero(); n * n * n];
        for a in 0..n {
            for b in 0..n {
                let br = self.bracket(&cols[a], &cols[b]);
                let coords = p_inv.mul_vec(&br);
                for (k, v) in coords.into_iter().enumerate() {
                    c[(a * n + b) * n + k] = v;
                }
            }
        }
        Ok(LieAlgebra { dim: n, c })
    }

    /// Relabels the basis so that new `e_a` is old `e_{perm[a]}`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.dim;
        assert_eq!(perm.len(), n);
        let mut inv = vec![0; n];
        for (a, &p) in perm.iter().enumerate() {
            inv[p] = a;
        }
        let mut c = vec![Rational::zero(); n * n * n];
        for a in 0..n {
            for b in 0..n {
                for k in 0..n {
                    c[(a * n + b) * n + inv[k]] = self.structure(perm[a], perm[b], k).clone();
                }
            }
        }
        LieAlgebra { dim: n, c }
    }
}

impl AsRef<LieAlgebra> for LieAlgebra {
    fn as_ref(&self) -> &LieAlgebra {
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JacobiOutcome {
    Holds,
    Violated { triple: (usize, usize, usize) },
}

impl JacobiOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, JacobiOutcome::Holds)
    }
}

pub fn jacobi_check(g: &LieAlgebra) -> JacobiOutcome {
    g.jacobi_check()
}

/// A rational subspace stored in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Span of `vectors`; dependent vectors are allowed and dropped.
    pub fn span(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Result<Self, LieError> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient_dim) {
            return Err(LieError::AmbientMismatch { got: v.len(), dim: ambient_dim });
        }
        if vectors.is_empty() {
            return Ok(Subspace { ambient_dim, basis: Vec::new(), pivots: Vec::new() });
        }
        let (basis, pivots) = ExactMatrix::from_rows(vectors.to_vec()).rref();
        Ok(Subspace { ambient_dim, basis, pivots })
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn whole(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim).map(|i| unit(ambient_dim, i)).collect();
        Subspace { ambient_dim, basis, pivots: (0..ambient_dim).collect() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Subtracts the echelon rows so that the pivot coordinates of the result vanish.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let f = out[p].clone();
            if f.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(row) {
                *o -= &f * r;
            }
        }
        out
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Standard coordinates that are not pivots of the echelon basis.
    pub fn non_pivot_coords(&self) -> Vec<usize> {
        (0..self.ambient_dim).filter(|c| !self.pivots.contains(c)).collect()
    }
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

/// `[x, v] ∈ h` for every basis vector `x` of `g` and `v` of `h`.
pub fn ideal_check(g: &LieAlgebra, h: &Subspace) -> bool {
    find_ideal_violation(g, h).is_none()
}

fn find_ideal_violation(g: &LieAlgebra, h: &Subspace) -> Option<(usize, usize)> {
    for x in 0..g.dim() {
        let ex = unit(g.dim(), x);
        for (member, v) in h.basis().iter().enumerate() {
            if !h.contains(&g.bracket(&ex, v)) {
                return Some((x, member));
            }
        }
    }
    None
}

/// `g/h` realised on the complement spanned by the non-pivot coordinates of `h`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientAlgebra {
    parent: LieAlgebra,
    ideal: Subspace,
    complement: Vec<usize>,
    algebra: LieAlgebra,
}

impl QuotientAlgebra {
    pub fn parent(&self) -> &LieAlgebra {
        &self.parent
    }

    pub fn ideal(&self) -> &Subspace {
        &self.ideal
    }

    /// Coordinates of `g` whose unit vectors form the complement.
    pub fn complement_coords(&self) -> &[usize] {
        &self.complement
    }

    pub fn complement_basis(&self) -> Vec<Vec<Rational>> {
        self.complement.iter().map(|&c| unit(self.parent.dim(), c)).collect()
    }

    /// Induced structure constants on the complement.
    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }
}

impl AsRef<LieAlgebra> for QuotientAlgebra {
    fn as_ref(&self) -> &LieAlgebra {
        &self.algebra
    }
}

/// Refuses with `NotAnIdeal` unless `h` is an ideal of `g`.
pub fn quotient(g: &LieAlgebra, h: &Subspace) -> Result<QuotientAlgebra, LieError> {
    if h.ambient_dim() != g.dim() {
        return Err(LieError::AmbientMismatch { got: h.ambient_dim(), dim: g.dim() });
    }
    if let Some((basis, member)) = find_ideal_violation(g, h) {
        return Err(LieError::NotAnIdeal { basis, member });
    }
    let complement = h.non_pivot_coords();
    let q = complement.len();
    let mut c = vec![Rational::zero(); q * q * q];
    for (a, &ca) in complement.iter().enumerate() {
        for (b, &cb) in complement.iter().enumerate() {
            // Projecting along h zeroes the pivot coordinates; the rest are
            // the coordinates on the complement.
            let projected = h.reduce(&g.bracket_basis(ca, cb));
            for (t, &ct) in complement.iter().enumerate() {
                c[(a * q + b) * q + t] = projected[ct].clone();
            }
        }
    }
    let algebra = LieAlgebra { dim: q, c };
    Ok(QuotientAlgebra { parent: g.clone(), ideal: h.clone(), complement, algebra })
}

/// The Chevalley–Eilenberg complex `(Λ^•𝔤*, d)` in lexicographic monomial bases.
pub fn ce_complex(g: &impl AsRef<LieAlgebra>) -> CochainComplex {
    let g = g.as_ref();
    let n = g.dim();
    let bases: Vec<_> = (0..=n).map(|k| enumerate_basis(n, k)).collect();
    let d: Vec<ExactMatrix> = (0..n)
        .into_par_iter()
        .map(|k| ce_differential(g, &bases[k], &bases[k + 1], n))
        .collect();
    CochainComplex::new(bases, d).expect("CE shapes are consistent by construction")
}

fn ce_differential(
    g: &LieAlgebra,
    source: &[crate::exterior::MultiIndex],
    target: &[crate::exterior::MultiIndex],
    n: usize,
) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(target.len(), source.len());
    for (row, big) in target.iter().enumerate() {
        let idx = big.indices();
        for a in 0..idx.len() {
            for b in a + 1..idx.len() {
                let (i, j) = (idx[a], idx[b]);
                // remove_pair carries (−1)^{a+b−1}; the formula wants (−1)^{a+b}.
                let (s_pair, rest) = remove_pair(big, i, j).expect("both indices present");
                for l in 0..n {
                    let c = g.structure(i, j, l);
                    if c.is_zero() {
                        continue;
                    }
                    if let Some((s_ins, small)) = wedge_insert(l, &rest) {
                        let col = small.rank(n);
                        debug_assert_eq!(&source[col], &small);
                        let sign = -(s_pair * s_ins);
                        m[(row, col)] += c * rat(sign as i64);
                    }
                }
            }
        }
    }
    m
}
