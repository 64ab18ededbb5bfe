//! Numerical certificates for the two non-subduction examples.
//!
//! The bump family uses the profile `φ(x) = exp(−1/(x(1−x)))` on `(0,1)` and
//! `f_k(t) = e^{−k²} φ(2^{2k}(t − 2^{−k}))`, supported in
//! `I_k = (2^{−k}, 2^{−k} + 2^{−2k})`. Derivatives of `φ` are exact:
//! `φ^{(m)} = P_m(x) / (x(1−x))^{2m} · φ` with integer polynomials `P_m`.
//!
//! This is the only module that uses binary floating point.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::WitnessError;
use crate::exterior::enumerate_basis;

pub const DEFAULT_SAMPLES: usize = 10_001;
/// Relative slack for the bound comparison.
pub const BOUND_SLACK: f64 = 1e-9;
const MAX_ORDER: usize = 24;

/// Integer polynomial, coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq, Eq)]
struct IntPoly(Vec<BigInt>);

impl IntPoly {
    fn from_i64(c: &[i64]) -> Self {
        IntPoly(c.iter().map(|&x| BigInt::from(x)).collect()).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }

    fn add(&self, other: &IntPoly) -> IntPoly {
        let len = self.0.len().max(other.0.len());
        let zero = BigInt::zero();
        IntPoly(
            (0..len)
                .map(|i| self.0.get(i).unwrap_or(&zero) + other.0.get(i).unwrap_or(&zero))
                .collect(),
        )
        .trimmed()
    }

    fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.0.is_empty() || other.0.is_empty() {
            return IntPoly(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly(out).trimmed()
    }

    fn scale(&self, c: i64) -> IntPoly {
        IntPoly(self.0.iter().map(|x| x * c).collect()).trimmed()
    }

    fn derivative(&self) -> IntPoly {
        IntPoly(self.0.iter().enumerate().skip(1).map(|(i, c)| c * i as i64).collect()).trimmed()
    }

    fn eval(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }
}

/// `φ(x) = exp(−1/(x(1−x)))` on `(0,1)`, zero elsewhere, with exact
/// derivative numerators up to a fixed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BumpProfile {
    numerators: Vec<IntPoly>,
}

impl BumpProfile {
    pub fn new(max_order: usize) -> Self {
        // u = x − x², u' = 1 − 2x
        // P_{m+1} = P_m' u² − 2m u u' P_m + u' P_m
        let u = IntPoly::from_i64(&[0, 1, -1]);
        let du = IntPoly::from_i64(&[1, -2]);
        let u2 = u.mul(&u);
        let uu = u.mul(&du);
        let mut numerators = vec![IntPoly::from_i64(&[1])];
        for m in 0..max_order {
            let p = &numerators[m];
            let next = p
                .derivative()
                .mul(&u2)
                .add(&uu.mul(p).scale(-2 * m as i64))
                .add(&du.mul(p));
            numerators.push(next);
        }
        BumpProfile { numerators }
    }

    pub fn max_order(&self) -> usize {
        self.numerators.len() - 1
    }

    /// `φ^{(m)}(x)`. Panics if `m` exceeds the precomputed order.
    pub fn derivative(&self, m: usize, x: f64) -> f64 {
        if x <= 0.0 || x >= 1.0 {
            return 0.0;
        }
        let u = x * (1.0 - x);
        // Combine the pole and the exponential in log space.
        let scale = (-1.0 / u - 2.0 * m as f64 * u.ln()).exp();
        self.numerators[m].eval(x) * scale
    }

    pub fn value(&self, x: f64) -> f64 {
        self.derivative(0, x)
    }
}

/// `I_k = (2^{−k}, 2^{−k} + 2^{−2k})`.
pub fn interval(k: u32) -> (f64, f64) {
    let lo = 0.5f64.powi(k as i32);
    (lo, lo + 0.25f64.powi(k as i32))
}

#[derive(Clone, Debug, PartialEq)]
pub struct BumpFamily {
    pub profile: BumpProfile,
    pub k_range: Vec<u32>,
    pub samples_per_interval: usize,
    pub max_derivative_order: usize,
}

pub fn build_bumps(k_range: &[u32], max_derivative_order: usize, samples: usize) -> Result<BumpFamily, WitnessError> {
    if k_range.contains(&0) {
        return Err(WitnessError::InvalidFamily("k must be at least 1".into()));
    }
    if k_range.iter().any(|&k| k > 60) {
        return Err(WitnessError::InvalidFamily("k above 60 underflows the interval width".into()));
    }
    if max_derivative_order > MAX_ORDER {
        return Err(WitnessError::InvalidFamily(format!(
            "derivative order {max_derivative_order} exceeds {MAX_ORDER}"
        )));
    }
    if samples == 0 {
        return Err(WitnessError::InvalidFamily("at least one sample per interval is needed".into()));
    }
    let mut k_range = k_range.to_vec();
    k_range.sort_unstable();
    k_range.dedup();
    Ok(BumpFamily {
        profile: BumpProfile::new(max_derivative_order),
        k_range,
        samples_per_interval: samples,
        max_derivative_order,
    })
}

impl BumpFamily {
    /// Interior profile grid `x_i = (i+1)/(S+1)`; endpoints are excluded.
    pub fn profile_grid(&self) -> Vec<f64> {
        let s = self.samples_per_interval;
        (0..s).map(|i| (i + 1) as f64 / (s + 1) as f64).collect()
    }

    /// Image of the profile grid in `I_k`.
    pub fn grid(&self, k: u32) -> Vec<f64> {
        let (lo, _) = interval(k);
        let width = 0.25f64.powi(k as i32);
        self.profile_grid().into_iter().map(|x| lo + x * width).collect()
    }

    /// `f_k^{(m)}(t) = e^{−k²} 2^{2km} φ^{(m)}(2^{2k}(t − 2^{−k}))`.
    pub fn f_derivative(&self, k: u32, m: usize, t: f64) -> f64 {
        let (lo, _) = interval(k);
        let x = 4f64.powi(k as i32) * (t - lo);
        (-((k * k) as f64)).exp() * 2f64.powi((2 * k as usize * m) as i32) * self.profile.derivative(m, x)
    }

    pub fn f(&self, k: u32, t: f64) -> f64 {
        self.f_derivative(k, 0, t)
    }

    /// The unique `k` in range with `t ∈ I_k`.
    pub fn interval_of(&self, t: f64) -> Option<u32> {
        self.k_range.iter().copied().find(|&k| {
            let (lo, hi) = interval(k);
            lo < t && t < hi
        })
    }

    /// `α(t) = f_k(t)` on `I_k`, zero off the intervals.
    pub fn alpha(&self, t: f64) -> f64 {
        self.interval_of(t).map_or(0.0, |k| self.f(k, t))
    }

    /// `β(t) = 2^k f_k(t)` on `I_k`, zero off the intervals.
    pub fn beta(&self, t: f64) -> f64 {
        self.interval_of(t).map_or(0.0, |k| 2f64.powi(k as i32) * self.f(k, t))
    }

    /// `sup I_{k+1} < inf I_k` for consecutive `k` in range.
    pub fn intervals_disjoint(&self) -> bool {
        self.k_range.windows(2).all(|w| interval(w[1]).1 < interval(w[0]).0)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub k: u32,
    pub m: usize,
    pub sup_f: f64,
    pub bound_f: f64,
    pub sup_scaled: f64,
    pub bound_scaled: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonotoneRow {
    pub m: usize,
    /// Strict decrease of `sup |f_k^{(m)}|` and `sup |(2^k f_k)^{(m)}|` across the whole range.
    pub decreasing: bool,
    /// First consecutive pair `(k, k')` where a sup does not decrease.
    pub first_increase: Option<(u32, u32)>,
    /// Smallest `k` from which both sequences decrease strictly.
    pub decreasing_from: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ForcedLevel {
    pub k: u32,
    /// Exponent `n` of `β/α = 2^n`, if it is the same on every positive sample.
    pub level: Option<i32>,
    pub positive_samples: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    /// `C_m = max |φ^{(m)}|` on the profile grid.
    pub profile_sups: Vec<f64>,
    pub rows: Vec<BoundRow>,
    pub monotone: Vec<MonotoneRow>,
    pub intervals_disjoint: bool,
    pub forced_levels: Vec<ForcedLevel>,
    pub lift_obstruction: bool,
}

impl WitnessReport {
    pub fn all_monotone(&self) -> bool {
        self.monotone.iter().all(|r| r.decreasing)
    }

    pub fn forced_levels_match(&self) -> bool {
        self.forced_levels.iter().all(|f| f.level == Some(f.k as i32))
    }
}

fn sup_abs(values: impl Iterator<Item = f64>) -> f64 {
    values.fold(0.0, |acc, v| acc.max(v.abs()))
}

/// Measures derivative sups on the grid and checks them against
/// `C_m e^{−k²} 2^{2km}` and `C_m e^{−k²} 2^{k+2km}`.
pub fn verify_bounds(b: &BumpFamily) -> Result<WitnessReport, WitnessError> {
    let xs = b.profile_grid();
    let profile_sups: Vec<f64> = (0..=b.max_derivative_order)
        .map(|m| sup_abs(xs.iter().map(|&x| b.profile.derivative(m, x))))
        .collect();
    let mut rows = Vec::new();
    for &k in &b.k_range {
        let grid = b.grid(k);
        let decay = (-((k * k) as f64)).exp();
        let lift = 2f64.powi(k as i32);
        for (m, &c_m) in profile_sups.iter().enumerate() {
            let gain = 2f64.powi((2 * k as usize * m) as i32);
            let bound_f = c_m * decay * gain;
            let bound_scaled = bound_f * lift;
            let mut sup_f = 0.0f64;
            let mut sup_scaled = 0.0f64;
            for &t in &grid {
                let v = b.f_derivative(k, m, t).abs();
                let w = lift * v;
                if v > bound_f * (1.0 + BOUND_SLACK) {
                    return Err(WitnessError::BoundViolated { k, m, t, measured: v, bound: bound_f });
                }
                if w > bound_scaled * (1.0 + BOUND_SLACK) {
                    return Err(WitnessError::BoundViolated { k, m, t, measured: w, bound: bound_scaled });
                }
                sup_f = sup_f.max(v);
                sup_scaled = sup_scaled.max(w);
            }
            rows.push(BoundRow { k, m, sup_f, bound_f, sup_scaled, bound_scaled });
        }
    }
    let monotone = (0..=b.max_derivative_order)
        .map(|m| {
            let seq: Vec<&BoundRow> = rows.iter().filter(|r| r.m == m).collect();
            let drops: Vec<bool> = seq
                .windows(2)
                .map(|w| w[1].sup_f < w[0].sup_f && w[1].sup_scaled < w[0].sup_scaled)
                .collect();
            let first_increase = drops.iter().position(|&d| !d).map(|i| (seq[i].k, seq[i + 1].k));
            let decreasing_from = match drops.iter().rposition(|&d| !d) {
                None => seq.first().map(|r| r.k),
                Some(i) if i + 1 < seq.len() - 1 || seq.len() == 1 => Some(seq[i + 1].k),
                Some(_) => None,
            };
            MonotoneRow { m, decreasing: first_increase.is_none(), first_increase, decreasing_from }
        })
        .collect();
    let forced_levels = forced_levels(b);
    Ok(WitnessReport {
        profile_sups,
        rows,
        monotone,
        intervals_disjoint: b.intervals_disjoint(),
        lift_obstruction: lift_obstruction_from(b, &forced_levels),
        forced_levels,
    })
}

/// The level `n(t)` forced by `β(t) = 2^{n(t)} α(t)` on each sampled interval.
pub fn forced_levels(b: &BumpFamily) -> Vec<ForcedLevel> {
    b.k_range
        .iter()
        .map(|&k| {
            let mut level: Option<i32> = None;
            let mut consistent = true;
            let mut positive = 0;
            for t in b.grid(k) {
                let a = b.alpha(t);
                if a <= 0.0 {
                    continue;
                }
                positive += 1;
                match exact_power_of_two(b.beta(t) / a) {
                    Some(e) if level.is_none_or(|l| l == e) => level = Some(e),
                    _ => consistent = false,
                }
            }
            ForcedLevel { k, level: if consistent { level } else { None }, positive_samples: positive }
        })
        .collect()
}

fn exact_power_of_two(r: f64) -> Option<i32> {
    if !(r.is_finite() && r > 0.0) {
        return None;
    }
    let e = r.log2().round() as i32;
    (2f64.powi(e) == r).then_some(e)
}

/// Whether no locally constant `n(t)` can exist near `0`: every neighbourhood
/// `(0, ε)` meeting at least two intervals sees at least two forced levels.
pub fn lift_obstruction(b: &BumpFamily) -> bool {
    lift_obstruction_from(b, &forced_levels(b))
}

fn lift_obstruction_from(b: &BumpFamily, levels: &[ForcedLevel]) -> bool {
    if b.k_range.len() < 2 || !b.intervals_disjoint() {
        return false;
    }
    if !levels.iter().all(|f| f.level == Some(f.k as i32) && f.positive_samples > 0) {
        return false;
    }
    // (0, sup I_k) meets exactly the intervals I_{k'} with k' ≥ k.
    b.k_range.iter().all(|&k| {
        let met: Vec<&ForcedLevel> = levels.iter().filter(|f| f.k >= k).collect();
        if met.len() < 2 {
            return true;
        }
        let first = met[0].level;
        met.iter().any(|f| f.level != first)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PullbackConclusion {
    PullbackNotSurjective,
    PullbackSurjective,
}

/// `ℝ` with the point foliation and `ℝ_disc` acting by translations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeOneCertificate {
    pub quotient_degree1_dim: usize,
    pub invariant_basic_degree1_dim: usize,
    pub witness: String,
    pub conclusion: PullbackConclusion,
}

/// Compares `Ω^1` of the one-point quotient with the translation-invariant
/// constant-coefficient basic 1-forms on `ℝ`.
pub fn degree_one_obstruction() -> DegreeOneCertificate {
    // The point foliation leaves every covector transverse: Λ^1(ℝ^1) = span(dx).
    let invariant = enumerate_basis(1, 1).len();
    let quotient = enumerate_basis(0, 1).len();
    DegreeOneCertificate {
        quotient_degree1_dim: quotient,
        invariant_basic_degree1_dim: invariant,
        witness: "dx".to_string(),
        conclusion: if invariant > quotient {
            PullbackConclusion::PullbackNotSurjective
        } else {
            PullbackConclusion::PullbackSurjective
        },
    }
}
