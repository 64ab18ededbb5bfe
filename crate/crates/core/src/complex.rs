//! Finite cochain complexes with monomial-tagged bases and their cohomology.

use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};

use crate::error::MatrixError;
use crate::exterior::MultiIndex;
use crate::matrix::ExactMatrix;
use crate::scalar::{format_rational, rat, Rational};

/// `C^0 → C^1 → … → C^top`, with `d[k]` a `dim(k+1) × dim(k)` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CochainComplex {
    bases: Vec<Vec<MultiIndex>>,
    d: Vec<ExactMatrix>,
}

impl CochainComplex {
    /// `d` must have one matrix fewer than `bases`, each shaped
    /// `bases[k+1].len() × bases[k].len()`.
    pub fn new(bases: Vec<Vec<MultiIndex>>, d: Vec<ExactMatrix>) -> Result<Self, MatrixError> {
        assert!(!bases.is_empty(), "a complex needs at least degree 0");
        assert_eq!(d.len() + 1, bases.len(), "one differential per consecutive pair of degrees");
        for (k, m) in d.iter().enumerate() {
            if m.cols() != bases[k].len() || m.rows() != bases[k + 1].len() {
                return Err(MatrixError::Shape(m.rows(), m.cols(), bases[k + 1].len(), bases[k].len()));
            }
        }
        Ok(CochainComplex { bases, d })
    }

    /// Highest degree.
    pub fn top_degree(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn dim(&self, k: usize) -> usize {
        self.bases.get(k).map_or(0, Vec::len)
    }

    pub fn basis(&self, k: usize) -> &[MultiIndex] {
        &self.bases[k]
    }

    pub fn differentials(&self) -> &[ExactMatrix] {
        &self.d
    }

    pub fn differential(&self, k: usize) -> Option<&ExactMatrix> {
        self.d.get(k)
    }

    /// `d_{k+1} · d_k` for every `k`.
    pub fn d_squared(&self) -> Vec<ExactMatrix> {
        self.d
            .windows(2)
            .map(|w| w[1].mul(&w[0]).expect("shapes validated at construction"))
            .collect()
    }

    /// First degree `k` with `d_{k+1} d_k ≠ 0`, if any.
    pub fn d_squared_violation(&self) -> Option<usize> {
        self.d_squared().iter().position(|m| !m.is_zero())
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.d.iter().map(ExactMatrix::rank).collect()
    }

    /// Betti numbers, ranks and one cocycle representative per cohomology class.
    pub fn betti(&self) -> BettiReport {
        let ranks = self.ranks();
        let rank_of = |k: isize| -> usize {
            if k < 0 {
                0
            } else {
                ranks.get(k as usize).copied().unwrap_or(0)
            }
        };
        let mut betti = Vec::with_capacity(self.bases.len());
        let mut generators = Vec::with_capacity(self.bases.len());
        for k in 0..self.bases.len() {
            let b = self.dim(k) - rank_of(k as isize) - rank_of(k as isize - 1);
            betti.push(b);
            let reps = self.class_representatives(k);
            debug_assert_eq!(reps.len(), b);
            generators.push(
                reps.into_iter()
                    .map(|v| Cochain::from_dense(&self.bases[k], &v))
                    .collect(),
            );
        }
        BettiReport { betti, ranks, generators }
    }

    /// Cocycles of degree `k` that are independent modulo coboundaries,
    /// chosen greedily in nullspace order.
    fn class_representatives(&self, k: usize) -> Vec<Vec<Rational>> {
        let dim = self.dim(k);
        let cocycles = match self.d.get(k) {
            Some(dk) => dk.nullspace_basis(),
            None => (0..dim)
                .map(|i| (0..dim).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
                .collect(),
        };
        let boundaries: Vec<Vec<Rational>> = match k.checked_sub(1).and_then(|j| self.d.get(j)) {
            Some(prev) => {
                let (rows, _) = prev.transpose().rref();
                rows
            }
            None => Vec::new(),
        };
        if cocycles.is_empty() {
            return Vec::new();
        }
        let offset = boundaries.len();
        let mut columns = boundaries;
        columns.extend(cocycles.iter().cloned());
        let (_, pivots) = ExactMatrix::from_columns(dim, &columns).rref();
        pivots
            .into_iter()
            .filter(|&p| p >= offset)
            .map(|p| cocycles[p - offset].clone())
            .collect()
    }

    /// Verifies `S_{k+1}·(−d_k) = d_k·S_k` with `S_k = (−1)^k·I` in every degree:
    /// the degree sign twist turns the negated differential into a cochain map.
    pub fn phi_sign_check(&self) -> bool {
        self.d.iter().enumerate().all(|(k, dk)| {
            let s_k = sign_twist(self.dim(k), k);
            let s_next = sign_twist(self.dim(k + 1), k + 1);
            let neg_d = dk.scale(&rat(-1));
            let lhs = s_next.mul(&neg_d).expect("square twist");
            let rhs = dk.mul(&s_k).expect("square twist");
            lhs == rhs
        })
    }
}

fn sign_twist(dim: usize, k: usize) -> ExactMatrix {
    let s = if k % 2 == 0 { rat(1) } else { rat(-1) };
    ExactMatrix::identity(dim).scale(&s)
}

/// Free function form of [`CochainComplex::betti`].
pub fn betti(c: &CochainComplex) -> BettiReport {
    c.betti()
}

/// Free function form of [`CochainComplex::phi_sign_check`].
pub fn phi_sign_check(c: &CochainComplex) -> bool {
    c.phi_sign_check()
}

/// Exact cohomology summary of a [`CochainComplex`].
#[derive(Clone, Debug, PartialEq)]
pub struct BettiReport {
    pub betti: Vec<usize>,
    /// `rank(d_k)` for each differential.
    pub ranks: Vec<usize>,
    /// Per degree, exactly `betti[k]` cocycles spanning a complement of the coboundaries.
    pub generators: Vec<Vec<Cochain>>,
}

impl BettiReport {
    pub fn euler_characteristic(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

/// A sparse combination of basis monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub terms: Vec<(MultiIndex, Rational)>,
}

impl Cochain {
    pub fn from_dense(basis: &[MultiIndex], coeffs: &[Rational]) -> Self {
        let terms = basis
            .iter()
            .zip(coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Cochain { terms }
    }

    /// Renders e.g. `dy∧dz - 2 dx` given a printer for single basis covectors.
    /// The empty monomial prints as `1`.
    pub fn render(&self, covector: impl Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (pos, (m, c)) in self.terms.iter().enumerate() {
            let mono = if m.degree() == 0 {
                "1".to_string()
            } else {
                m.indices().iter().map(|&i| covector(i)).collect::<Vec<_>>().join("∧")
            };
            let sign = if c.is_negative() { "-" } else { "+" };
            if pos == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                let _ = write!(out, " {sign} ");
            }
            let mag = c.abs();
            if mag.is_one() {
                out.push_str(&mono);
            } else if m.degree() == 0 {
                out.push_str(&format_rational(&mag));
            } else {
                let _ = write!(out, "{} {}", format_rational(&mag), mono);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::enumerate_basis;

    fn koszul_line() -> CochainComplex {
        // Λ(ℝ^2) with d = e_1 ∧ ·
        let bases: Vec<_> = (0..=2).map(|k| enumerate_basis(2, k)).collect();
        let d0 = ExactMatrix::from_i64(&[&[0], &[1]]);
        let d1 = ExactMatrix::from_i64(&[&[-1, 0]]);
        CochainComplex::new(bases, vec![d0, d1]).unwrap()
    }

    #[test]
    fn zero_differential_gives_binomials() {
        let bases: Vec<_> = (0..=3).map(|k| enumerate_basis(3, k)).collect();
        let d = (0..3).map(|k| ExactMatrix::zeros(bases[k + 1].len(), bases[k].len())).collect();
        let c = CochainComplex::new(bases, d).unwrap();
        let r = c.betti();
        assert_eq!(r.betti, vec![1, 3, 3, 1]);
        assert_eq!(r.generators[1].len(), 3);
        assert_eq!(r.euler_characteristic(), 0);
    }

    #[test]
    fn wedge_with_covector_is_acyclic() {
        let c = koszul_line();
        assert_eq!(c.d_squared_violation(), None);
        let r = c.betti();
        assert_eq!(r.betti, vec![0, 0, 0]);
        assert_eq!(r.ranks, vec![1, 1]);
        assert!(c.phi_sign_check());
    }

    #[test]
    fn rejects_bad_shapes() {
        let bases = vec![enumerate_basis(1, 0), enumerate_basis(1, 1)];
        assert!(CochainComplex::new(bases, vec![ExactMatrix::zeros(2, 1)]).is_err());
    }

    #[test]
    fn detects_nonzero_square() {
        let bases: Vec<_> = (0..=2).map(|k| enumerate_basis(2, k)).collect();
        let d0 = ExactMatrix::from_i64(&[&[1], &[0]]);
        let d1 = ExactMatrix::from_i64(&[&[1, 0]]);
        let c = CochainComplex::new(bases, vec![d0, d1]).unwrap();
        assert_eq!(c.d_squared_violation(), Some(0));
    }

    #[test]
    fn cochain_rendering() {
        let basis = enumerate_basis(3, 1);
        let c = Cochain::from_dense(&basis, &[rat(0), rat(-2), rat(1)]);
        let names = ["x", "y", "z"];
        assert_eq!(c.render(|i| format!("d{}", names[i])), "-2 dy + dz");
        let unit = Cochain::from_dense(&enumerate_basis(3, 0), &[rat(1)]);
        assert_eq!(unit.render(|i| i.to_string()), "1");
    }
}
