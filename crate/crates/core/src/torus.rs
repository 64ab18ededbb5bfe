//! Invariant basic cohomology of linear foliations of `T^n`.
//!
//! The complex of basic forms that are also invariant under dense translation
//! subgroups splits over Fourier modes `m ∈ ℤ^n`. A mode survives when its
//! character is constant along every foliation direction (`m·v = 0`) and along
//! every invariance coordinate (`m_j = 0`). On a surviving mode the complex is
//! the exterior algebra of the transverse covectors with differential
//! `μ_m ∧ ·`, `μ_m = Σ_j m_j dθ_j`; the factor `2πi` of Fourier
//! differentiation is normalized to `1`, which leaves every rank unchanged.
//!
//! Mode `0` carries the zero differential and therefore all of the
//! cohomology. Every other surviving mode is certified acyclic by an explicit
//! rank computation.
//!
//! Foliation directions live in `(ℚ + ℚα)^n` with `α` a symbolic irrational;
//! linear independence is decided over `ℚ(α)` treating `α` as
//! transcendental.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{BettiReport, CochainComplex};
use crate::error::TorusError;
use crate::exterior::{enumerate_basis, wedge_insert, MultiIndex};
use crate::lie::{ce_complex, quotient, LieAlgebra, Subspace};
use crate::matrix::ExactMatrix;
use crate::scalar::{rat, ExtScalar, Rational};

pub const DEFAULT_TRUNCATION: u32 = 3;

/// A linear foliation of `T^n` together with the invariance data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusSpec {
    pub n: usize,
    /// Spanning vectors of the tangent distribution.
    pub foliation_dirs: Vec<Vec<ExtScalar>>,
    /// Coordinates along which a dense subgroup of `S¹` translates.
    pub invariance_coords: BTreeSet<usize>,
    /// Audit sweep bound on `|m|_∞`.
    pub truncation: u32,
}

impl TorusSpec {
    pub fn new(n: usize, foliation_dirs: Vec<Vec<ExtScalar>>, invariance_coords: impl IntoIterator<Item = usize>) -> Self {
        TorusSpec {
            n,
            foliation_dirs,
            invariance_coords: invariance_coords.into_iter().collect(),
            truncation: DEFAULT_TRUNCATION,
        }
    }

    pub fn with_truncation(mut self, truncation: u32) -> Self {
        self.truncation = truncation;
        self
    }

    /// Number of foliation directions.
    pub fn leaf_dim(&self) -> usize {
        self.foliation_dirs.len()
    }

    pub fn has_irrational(&self) -> bool {
        self.foliation_dirs.iter().flatten().any(|s| !s.is_rational())
    }

    /// `x, y, z` up to three coordinates, `θ0, θ1, …` beyond.
    pub fn coordinate_name(&self, i: usize) -> String {
        if self.n <= 3 {
            ["x", "y", "z"][i].to_string()
        } else {
            format!("θ{i}")
        }
    }

    /// Checks shapes and independence and returns the transverse frame.
    pub fn frame(&self) -> Result<TransverseFrame, TorusError> {
        for (r, v) in self.foliation_dirs.iter().enumerate() {
            if v.len() != self.n {
                return Err(TorusError::InvalidSpec(format!(
                    "foliation direction {r} has {} entries, expected {}",
                    v.len(),
                    self.n
                )));
            }
        }
        if let Some(&c) = self.invariance_coords.iter().find(|&&c| c >= self.n) {
            return Err(TorusError::InvalidSpec(format!(
                "invariance coordinate {c} is outside [0, {})",
                self.n
            )));
        }
        let p = self.leaf_dim();
        let mut pivots = Vec::with_capacity(p);
        let mut prev_rank = 0;
        for j in 0..self.n {
            let r = self.generic_prefix_rank(j + 1);
            if r > prev_rank {
                pivots.push(j);
                prev_rank = r;
            }
        }
        if prev_rank < p {
            return Err(TorusError::InvalidSpec(format!(
                "foliation directions are dependent (rank {prev_rank} < {p})"
            )));
        }
        let transverse = (0..self.n).filter(|j| !pivots.contains(j)).collect();
        Ok(TransverseFrame { pivots, transverse })
    }

    /// Rational stand-ins `t = 0, 1, …, p` for `α`: a nonzero `r×r` minor is a
    /// polynomial of degree `≤ r ≤ p` in `α`, so one of them is not a root.
    fn stand_ins(&self) -> Vec<Rational> {
        if self.has_irrational() {
            (0..=self.leaf_dim() as i64).map(rat).collect()
        } else {
            vec![rat(0)]
        }
    }

    fn evaluated(&self, t: &Rational, cols: usize) -> ExactMatrix {
        ExactMatrix::from_rows(
            self.foliation_dirs
                .iter()
                .map(|v| v[..cols].iter().map(|s| s.eval_at(t)).collect())
                .collect(),
        )
    }

    /// Rank over `ℚ(α)` of the first `cols` columns.
    fn generic_prefix_rank(&self, cols: usize) -> usize {
        if self.foliation_dirs.is_empty() {
            return 0;
        }
        self.stand_ins().iter().map(|t| self.evaluated(t, cols).rank()).max().unwrap_or(0)
    }

    /// Rational specialization of the directions spanning a `p`-dimensional
    /// subspace: `α` is replaced by the first stand-in that keeps full rank.
    pub fn rational_skeleton(&self) -> Result<Vec<Vec<Rational>>, TorusError> {
        self.frame()?;
        let p = self.leaf_dim();
        self.stand_ins()
            .iter()
            .map(|t| self.evaluated(t, self.n))
            .find(|m| m.rank() == p)
            .map(|m| (0..m.rows()).map(|i| m.row(i).to_vec()).collect())
            .ok_or_else(|| TorusError::InvalidSpec("no full-rank rational skeleton".into()))
    }
}

/// Foliated coordinates (echelon pivots of the directions) and their complement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransverseFrame {
    pub pivots: Vec<usize>,
    pub transverse: Vec<usize>,
}

/// A Fourier mode `m ∈ ℤ^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mode(pub Vec<i64>);

impl Mode {
    pub fn zero(n: usize) -> Self {
        Mode(vec![0; n])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// `m·v` in `ℚ + ℚα`.
    pub fn pairing(&self, v: &[ExtScalar]) -> ExtScalar {
        self.0
            .iter()
            .zip(v)
            .filter(|(&m, _)| m != 0)
            .fold(ExtScalar::zero(), |acc, (&m, s)| &acc + &s.scale(&rat(m)))
    }
}

/// Whether mode `m` carries basic, invariant coefficient functions.
pub fn survives(m: &Mode, spec: &TorusSpec) -> bool {
    m.0.len() == spec.n
        && spec.invariance_coords.iter().all(|&j| m.0[j] == 0)
        && spec.foliation_dirs.iter().all(|v| m.pairing(v).is_zero())
}

/// The finite complex carried by one surviving mode.
#[derive(Clone, Debug, PartialEq)]
pub struct ModeComplex {
    pub mode: Mode,
    /// Coordinates whose covectors index the transverse exterior algebra.
    pub transverse_coords: Vec<usize>,
    /// `μ_m` in the transverse frame.
    pub covector: Vec<Rational>,
    pub complex: CochainComplex,
}

/// Realizes `d = μ_m ∧ ·` on `Λ^•` of the transverse covectors.
///
/// In the frame dual to the transverse coordinates, a surviving `μ_m` has
/// coordinates `m_c` on the transverse coordinates: its foliated components
/// are eliminated by `ι_v μ_m = m·v = 0`.
pub fn build_mode_complex(m: &Mode, spec: &TorusSpec) -> Result<ModeComplex, TorusError> {
    let frame = spec.frame()?;
    build_in_frame(m, spec, &frame)
}

fn build_in_frame(m: &Mode, spec: &TorusSpec, frame: &TransverseFrame) -> Result<ModeComplex, TorusError> {
    if !survives(m, spec) {
        return Err(TorusError::ModeKilled(m.0.clone()));
    }
    Ok(WedgeTable::new(frame.transverse.len()).complex_for(m, frame))
}

/// Sparsity pattern of `e^c ∧ ·` on `Λ^•ℝ^q`, shared by every mode of a spec.
struct WedgeTable {
    bases: Vec<Vec<MultiIndex>>,
    /// Per degree `k`: `(row, col, c, sign)` with `e^c ∧ basis_k[col] = sign · basis_{k+1}[row]`.
    entries: Vec<Vec<(usize, usize, usize, i64)>>,
}

impl WedgeTable {
    fn new(q: usize) -> Self {
        let bases: Vec<Vec<MultiIndex>> = (0..=q).map(|k| enumerate_basis(q, k)).collect();
        let entries = (0..q)
            .map(|k| {
                let mut out = Vec::new();
                for (col, src) in bases[k].iter().enumerate() {
                    for c in 0..q {
                        if let Some((sign, tgt)) = wedge_insert(c, src) {
                            out.push((tgt.rank(q), col, c, sign as i64));
                        }
                    }
                }
                out
            })
            .collect();
        WedgeTable { bases, entries }
    }

    fn complex_for(&self, m: &Mode, frame: &TransverseFrame) -> ModeComplex {
        let covector: Vec<i64> = frame.transverse.iter().map(|&c| m.0[c]).collect();
        let d = self
            .entries
            .iter()
            .enumerate()
            .map(|(k, entries)| {
                let mut dk = ExactMatrix::zeros(self.bases[k + 1].len(), self.bases[k].len());
                for &(row, col, c, sign) in entries {
                    if covector[c] != 0 {
                        dk[(row, col)] += rat(sign * covector[c]);
                    }
                }
                dk
            })
            .collect();
        let complex = CochainComplex::new(self.bases.clone(), d).expect("wedge shapes are consistent");
        ModeComplex {
            mode: m.clone(),
            transverse_coords: frame.transverse.clone(),
            covector: covector.into_iter().map(rat).collect(),
            complex,
        }
    }
}

/// Rank witness that a nonzero mode contributes no cohomology.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KoszulCertificate {
    pub mode: Vec<i64>,
    pub ranks: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum KoszulFailure {
    /// The zero mode is not eligible.
    ZeroMode,
    /// `b_degree ≠ 0`; impossible for a valid spec.
    NotAcyclic { mode: Vec<i64>, degree: usize, betti: usize },
}

pub fn koszul_certificate(mc: &ModeComplex) -> Result<KoszulCertificate, KoszulFailure> {
    if mc.mode.is_zero() {
        return Err(KoszulFailure::ZeroMode);
    }
    let ranks = mc.complex.ranks();
    let rank_of = |k: Option<usize>| k.and_then(|k| ranks.get(k)).copied().unwrap_or(0);
    for degree in 0..=mc.complex.top_degree() {
        let betti = mc.complex.dim(degree) - rank_of(Some(degree)) - rank_of(degree.checked_sub(1));
        if betti != 0 {
            return Err(KoszulFailure::NotAcyclic { mode: mc.mode.0.clone(), degree, betti });
        }
    }
    Ok(KoszulCertificate { mode: mc.mode.0.clone(), ranks })
}

/// Cohomology of the invariant basic complex together with its audit trail.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusBettiReport {
    /// `b_0 … b_{n−p}`; all higher degrees vanish.
    pub betti: Vec<usize>,
    /// Ranks of the mode-0 differentials.
    pub ranks: Vec<usize>,
    pub frame: TransverseFrame,
    pub mode_zero: BettiReport,
    pub certificates: Vec<KoszulCertificate>,
    pub failures: Vec<KoszulFailure>,
    pub audited_modes: usize,
    pub truncation: u32,
}

impl TorusBettiReport {
    pub fn betti_in_degree(&self, k: usize) -> usize {
        self.betti.get(k).copied().unwrap_or(0)
    }

    pub fn all_certified(&self) -> bool {
        self.failures.is_empty()
    }

    /// Mode-0 generators per degree, e.g. `["dy", "dz"]` in degree one.
    pub fn generator_labels(&self, spec: &TorusSpec) -> Vec<Vec<String>> {
        let frame = &self.frame;
        self.mode_zero
            .generators
            .iter()
            .map(|gens| {
                gens.iter()
                    .map(|c| c.render(|i| format!("d{}", spec.coordinate_name(frame.transverse[i]))))
                    .collect()
            })
            .collect()
    }
}

/// Every nonzero surviving mode with `|m|_∞ ≤ bound`, in lexicographic order.
pub fn surviving_modes(spec: &TorusSpec, bound: u32) -> Vec<Mode> {
    let free: Vec<usize> = (0..spec.n).filter(|j| !spec.invariance_coords.contains(j)).collect();
    let b = bound as i64;
    let mut out = Vec::new();
    let mut cur = vec![-b; free.len()];
    if free.is_empty() {
        return out;
    }
    loop {
        let mut m = vec![0; spec.n];
        for (slot, &j) in cur.iter().zip(&free) {
            m[j] = *slot;
        }
        let mode = Mode(m);
        if !mode.is_zero() && survives(&mode, spec) {
            out.push(mode);
        }
        let Some(pos) = (0..cur.len()).rev().find(|&p| cur[p] < b) else {
            break;
        };
        cur[pos] += 1;
        for slot in cur.iter_mut().skip(pos + 1) {
            *slot = -b;
        }
    }
    out
}

/// Betti numbers of the invariant basic complex, read off mode 0 and
/// audited over all surviving modes up to the spec's truncation.
pub fn torus_betti(spec: &TorusSpec) -> Result<TorusBettiReport, TorusError> {
    let frame = spec.frame()?;
    let table = WedgeTable::new(frame.transverse.len());
    let mode_zero = table.complex_for(&Mode::zero(spec.n), &frame).complex.betti();
    let modes = surviving_modes(spec, spec.truncation);
    let outcomes: Vec<Result<KoszulCertificate, KoszulFailure>> =
        modes.par_iter().map(|m| koszul_certificate(&table.complex_for(m, &frame))).collect();
    let mut certificates = Vec::with_capacity(outcomes.len());
    let mut failures = Vec::new();
    for o in outcomes {
        match o {
            Ok(c) => certificates.push(c),
            Err(f) => failures.push(f),
        }
    }
    Ok(TorusBettiReport {
        betti: mode_zero.betti.clone(),
        ranks: mode_zero.ranks.clone(),
        frame,
        mode_zero,
        certificates,
        failures,
        audited_modes: modes.len(),
        truncation: spec.truncation,
    })
}

/// Compares `torus_betti` with the Chevalley–Eilenberg Betti numbers of the
/// abelian quotient `ℝ^n / span(rational skeleton)`.
pub fn cross_check_ce(spec: &TorusSpec) -> Result<bool, TorusError> {
    let torus = torus_betti(spec)?;
    let skeleton = spec.rational_skeleton()?;
    let h = Subspace::span(spec.n, &skeleton).map_err(|e| TorusError::InvalidSpec(e.to_string()))?;
    if h.dim() != spec.leaf_dim() {
        return Ok(false);
    }
    let q = quotient(&LieAlgebra::abelian(spec.n), &h).map_err(|e| TorusError::InvalidSpec(e.to_string()))?;
    Ok(ce_complex(&q).betti().betti == torus.betti)
}
