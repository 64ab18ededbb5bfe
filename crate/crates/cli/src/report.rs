//! Report model and its table, csv and json renderings.

use std::fmt::Write as _;

use quotcoh::torus::{KoszulCertificate, KoszulFailure};
use quotcoh::witness::{DegreeOneCertificate, WitnessReport};
use serde::{Deserialize, Serialize};

use crate::config::{Format, JobMode};

/// Stated in every torus report: ranks are unaffected by the scaling.
pub const FOURIER_NORMALIZATION: &str = "2*pi*i factor of Fourier differentiation normalized to 1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub mode: JobMode,
    pub betti: Vec<usize>,
    pub ranks: Vec<usize>,
    pub generators: Vec<Vec<String>>,
    pub certificates: Certificates,
    pub audited_modes: usize,
    pub exit: i32,
    /// Wall-clock microseconds; not part of the canonical form.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_us: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Certificates {
    Lie(LieCertificates),
    Torus(TorusCertificates),
    Witness(WitnessCertificates),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieCertificates {
    pub dim: usize,
    pub ideal_dim: usize,
    pub quotient_dim: usize,
    /// Coordinates of `g` spanning the chosen complement of the ideal.
    pub complement_coords: Vec<usize>,
    pub jacobi: bool,
    pub ideal: bool,
    pub d_squared_zero: bool,
    pub phi_sign: bool,
    pub euler_characteristic: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusCertificates {
    pub n: usize,
    pub leaf_dim: usize,
    pub foliation: Vec<Vec<String>>,
    pub invariance: Vec<usize>,
    pub transverse_coords: Vec<String>,
    pub normalization: String,
    pub truncation: u32,
    pub koszul: Vec<KoszulCertificate>,
    pub failures: Vec<KoszulFailure>,
    pub phi_sign: bool,
    /// Present when the run was asked to cross-check against the CE side.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cross_check_ce: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessCertificates {
    pub k_range: Vec<u32>,
    pub max_derivative_order: usize,
    pub samples: usize,
    pub slack: f64,
    pub bounds_hold: bool,
    pub monotone_in_k: bool,
    pub forced_levels_match: bool,
    pub lift_obstruction: bool,
    pub measurements: WitnessReport,
    pub degree_one: DegreeOneCertificate,
}

impl Report {
    /// Pretty json without the timing field; byte-stable across runs.
    pub fn canonical_json(&self) -> String {
        let mut canon = self.clone();
        canon.timing_us = None;
        serde_json::to_string_pretty(&canon).expect("report serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json() + "\n",
            Format::Table => self.to_table(),
            Format::Csv => self.to_csv(),
        }
    }

    fn numbers(xs: &[usize]) -> String {
        xs.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let mode = serde_json::to_value(self.mode).expect("mode serializes");
        let _ = writeln!(out, "mode: {}", mode.as_str().unwrap_or_default());
        if let Certificates::Witness(w) = &self.certificates {
            write_witness_table(&mut out, w);
            let _ = writeln!(out, "exit: {}", self.exit);
            return out;
        }
        let _ = writeln!(out, "betti: {}", Self::numbers(&self.betti));
        let _ = writeln!(out, "ranks: {}", Self::numbers(&self.ranks));
        let gens: Vec<String> = self.generators.iter().map(|g| g.join(", ")).collect();
        let _ = writeln!(out, "generators: {}", gens.join(" | "));
        let _ = writeln!(out);
        let _ = writeln!(out, "{:<8}{:<8}{:<8}generators", "degree", "betti", "rank");
        for (k, b) in self.betti.iter().enumerate() {
            let rank = self.ranks.get(k).map_or("-".to_string(), usize::to_string);
            let _ = writeln!(out, "{:<8}{:<8}{:<8}{}", k, b, rank, self.generators[k].join(", "));
        }
        let _ = writeln!(out);
        match &self.certificates {
            Certificates::Lie(c) => {
                let _ = writeln!(
                    out,
                    "quotient: dim {} / ideal dim {} = {} (complement coords {:?})",
                    c.dim, c.ideal_dim, c.quotient_dim, c.complement_coords
                );
                let _ = writeln!(out, "jacobi: {}  ideal: {}  d^2 = 0: {}", c.jacobi, c.ideal, c.d_squared_zero);
                let _ = writeln!(out, "sign twist (-1)^k: {}", c.phi_sign);
                let _ = writeln!(out, "euler characteristic: {}", c.euler_characteristic);
            }
            Certificates::Torus(c) => {
                let _ = writeln!(out, "transverse frame: {}", c.transverse_coords.join(", "));
                let _ = writeln!(out, "normalization: {}", c.normalization);
                let status = if c.failures.is_empty() { "all certified acyclic" } else { "FAILURES PRESENT" };
                let _ = writeln!(
                    out,
                    "audited modes (|m|_inf <= {}): {} ({status})",
                    c.truncation, self.audited_modes
                );
                if let Some(ok) = c.cross_check_ce {
                    let _ = writeln!(out, "cross-check against CE of abelian quotient: {ok}");
                }
            }
            Certificates::Witness(_) => unreachable!(),
        }
        let _ = writeln!(out, "exit: {}", self.exit);
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        if let Certificates::Witness(w) = &self.certificates {
            out.push_str("k,m,sup_f,bound_f,sup_scaled,bound_scaled\n");
            for r in &w.measurements.rows {
                let _ = writeln!(
                    out,
                    "{},{},{:e},{:e},{:e},{:e}",
                    r.k, r.m, r.sup_f, r.bound_f, r.sup_scaled, r.bound_scaled
                );
            }
            return out;
        }
        out.push_str("degree,betti,rank,generators\n");
        for (k, b) in self.betti.iter().enumerate() {
            let rank = self.ranks.get(k).map_or(String::new(), usize::to_string);
            let gens = self.generators[k].join("; ").replace('"', "\"\"");
            let _ = writeln!(out, "{k},{b},{rank},\"{gens}\"");
        }
        out
    }
}

fn write_witness_table(out: &mut String, w: &WitnessCertificates) {
    let m = &w.measurements;
    let _ = writeln!(
        out,
        "k range: {}..={}  derivative orders: 0..={}  samples per interval: {}",
        w.k_range.first().copied().unwrap_or(0),
        w.k_range.last().copied().unwrap_or(0),
        w.max_derivative_order,
        w.samples
    );
    let _ = writeln!(out, "profile sups C_m: {}", fmt_floats(&m.profile_sups));
    let _ = writeln!(out);
    let _ = writeln!(out, "{:<4}{:<4}{:<18}{:<18}{:<18}{:<18}", "k", "m", "sup|f^(m)|", "bound", "sup|(2^k f)^(m)|", "bound");
    for r in &m.rows {
        let _ = writeln!(
            out,
            "{:<4}{:<4}{:<18.6e}{:<18.6e}{:<18.6e}{:<18.6e}",
            r.k, r.m, r.sup_f, r.bound_f, r.sup_scaled, r.bound_scaled
        );
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "bounds hold (relative slack {:e}): {}", w.slack, w.bounds_hold);
    for row in &m.monotone {
        let detail = match (row.first_increase, row.decreasing_from) {
            (None, _) => "strictly decreasing in k".to_string(),
            (Some((a, b)), Some(from)) => format!("increases from k={a} to k={b}; decreasing from k={from}"),
            (Some((a, b)), None) => format!("increases from k={a} to k={b}"),
        };
        let _ = writeln!(out, "m={}: {detail}", row.m);
    }
    let levels: Vec<String> = m
        .forced_levels
        .iter()
        .map(|f| format!("I_{}->{}", f.k, f.level.map_or("?".into(), |l| l.to_string())))
        .collect();
    let _ = writeln!(out, "forced levels: {}", levels.join(" "));
    let _ = writeln!(out, "intervals disjoint: {}", m.intervals_disjoint);
    let _ = writeln!(out, "lift_obstruction: {}", w.lift_obstruction);
    let d = &w.degree_one;
    let _ = writeln!(
        out,
        "degree-1 certificate: dim Omega^1(M/H) = {}, invariant basic degree-1 dim = {} (witness {}), conclusion {}",
        d.quotient_degree1_dim,
        d.invariant_basic_degree1_dim,
        d.witness,
        serde_json::to_value(d.conclusion).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
    );
}

fn fmt_floats(xs: &[f64]) -> String {
    xs.iter().map(|x| format!("{x:.6e}")).collect::<Vec<_>>().join(" ")
}
