//! Sectioned key-value job files.
//!
//! ```text
//! # comments start with '#'
//! [torus]
//! n = 3
//! foliation = 1,0,0
//! invariance = 1
//! truncation = 3
//!
//! [output]
//! format = json
//! ```
//!
//! `bracket`, `ideal` and `foliation` may repeat; every other key appears at
//! most once. Exactly one of `[lie]`, `[torus]`, `[witness]` must be present.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::str::FromStr;

use quotcoh::lie::BracketEntry;
use quotcoh::scalar::{parse_rational, Rational};
use quotcoh::torus::{TorusSpec, DEFAULT_TRUNCATION};
use quotcoh::witness::DEFAULT_SAMPLES;
use quotcoh::ExtScalar;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("parse error at line {line}, key `{key}`: {reason}")]
    Parse { line: usize, key: String, reason: String },
    #[error("validation error for `{key}`: {reason}")]
    Validation { key: String, reason: String },
}

fn parse_err(line: usize, key: &str, reason: impl Into<String>) -> ConfigError {
    ConfigError::Parse { line, key: key.to_string(), reason: reason.into() }
}

fn invalid(key: &str, reason: impl Into<String>) -> ConfigError {
    ConfigError::Validation { key: key.to_string(), reason: reason.into() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JobMode {
    Lie,
    Torus,
    Witness,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "table" => Ok(Format::Table),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format `{other}` (expected table, json or csv)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieJob {
    pub dim: usize,
    pub brackets: Vec<BracketEntry>,
    /// Spanning vectors of the ideal; empty means the zero ideal.
    pub ideal: Vec<Vec<Rational>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessJob {
    pub k_min: u32,
    pub k_max: u32,
    pub max_derivative_order: usize,
    pub samples: usize,
}

impl WitnessJob {
    pub fn k_range(&self) -> Vec<u32> {
        (self.k_min..=self.k_max).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Job {
    Lie(LieJob),
    Torus(TorusSpec),
    Witness(WitnessJob),
}

impl Job {
    pub fn mode(&self) -> JobMode {
        match self {
            Job::Lie(_) => JobMode::Lie,
            Job::Torus(_) => JobMode::Torus,
            Job::Witness(_) => JobMode::Witness,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OutputConfig {
    pub format: Option<Format>,
    pub path: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobConfig {
    pub job: Job,
    pub output: OutputConfig,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Section {
    Lie,
    Torus,
    Witness,
    Output,
}

impl Section {
    fn keys(self) -> &'static [&'static str] {
        match self {
            Section::Lie => &["dim", "bracket", "ideal"],
            Section::Torus => &["n", "foliation", "invariance", "truncation"],
            Section::Witness => &["k_min", "k_max", "max_derivative_order", "samples"],
            Section::Output => &["format", "path"],
        }
    }

    fn repeatable(key: &str) -> bool {
        matches!(key, "bracket" | "ideal" | "foliation")
    }
}

/// One `key = value` line.
#[derive(Clone, Debug)]
struct Entry {
    line: usize,
    key: String,
    value: String,
}

#[derive(Default)]
struct Sections {
    seen: BTreeSet<Section>,
    entries: Vec<(Section, Entry)>,
}

impl Sections {
    fn all<'a>(&'a self, section: Section, key: &'a str) -> impl Iterator<Item = &'a Entry> + 'a {
        self.entries.iter().filter(move |(s, e)| *s == section && e.key == key).map(|(_, e)| e)
    }

    fn one<'a>(&'a self, section: Section, key: &'a str) -> Option<&'a Entry> {
        self.all(section, key).next()
    }
}

fn tokenize(text: &str) -> Result<Sections, ConfigError> {
    let mut out = Sections::default();
    let mut current: Option<Section> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(name) = content.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let section = match name.trim() {
                "lie" => Section::Lie,
                "torus" => Section::Torus,
                "witness" => Section::Witness,
                "output" => Section::Output,
                other => return Err(parse_err(line, other, "unknown section")),
            };
            if !out.seen.insert(section) {
                return Err(parse_err(line, name.trim(), "section appears twice"));
            }
            current = Some(section);
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(parse_err(line, content, "expected `key = value`"));
        };
        let key = key.trim();
        let Some(section) = current else {
            return Err(parse_err(line, key, "key outside of any section"));
        };
        if !section.keys().contains(&key) {
            return Err(parse_err(line, key, "unknown key for this section"));
        }
        if !Section::repeatable(key) && out.one(section, key).is_some() {
            return Err(parse_err(line, key, "key given more than once"));
        }
        out.entries.push((section, Entry { line, key: key.to_string(), value: value.trim().to_string() }));
    }
    Ok(out)
}

fn parse_count(e: &Entry) -> Result<usize, ConfigError> {
    e.value
        .parse::<usize>()
        .map_err(|_| parse_err(e.line, &e.key, format!("expected a non-negative integer, got `{}`", e.value)))
}

/// Witness fields accept decimal spellings of integers such as `1e4` or `8.0`.
fn parse_lenient_count(e: &Entry) -> Result<usize, ConfigError> {
    if let Ok(v) = e.value.parse::<usize>() {
        return Ok(v);
    }
    let x: f64 = e
        .value
        .parse()
        .map_err(|_| parse_err(e.line, &e.key, format!("expected a number, got `{}`", e.value)))?;
    if x.is_finite() && x >= 0.0 && x.fract() == 0.0 && x <= u32::MAX as f64 {
        Ok(x as usize)
    } else {
        Err(invalid(&e.key, format!("`{}` is not a non-negative integer", e.value)))
    }
}

fn split_list(value: &str) -> Vec<&str> {
    let inner = value.trim();
    let inner = inner.strip_prefix('[').and_then(|s| s.strip_suffix(']')).unwrap_or(inner);
    if inner.trim().is_empty() {
        return Vec::new();
    }
    inner.split(',').map(str::trim).collect()
}

fn exact_rational(e: &Entry, text: &str) -> Result<Rational, ConfigError> {
    parse_rational(text).map_err(|err| invalid(&e.key, format!("line {}: {err}", e.line)))
}

fn parse_lie(s: &Sections) -> Result<LieJob, ConfigError> {
    let dim_entry = s.one(Section::Lie, "dim").ok_or_else(|| invalid("dim", "missing in [lie]"))?;
    let dim = parse_count(dim_entry)?;
    let mut brackets = Vec::new();
    for e in s.all(Section::Lie, "bracket") {
        let parts: Vec<&str> = e.value.split_whitespace().collect();
        if parts.len() != 4 {
            return Err(parse_err(e.line, &e.key, "expected `i j k p/q`"));
        }
        let mut idx = [0usize; 3];
        for (slot, text) in idx.iter_mut().zip(&parts[..3]) {
            *slot = text
                .parse()
                .map_err(|_| parse_err(e.line, &e.key, format!("bad index `{text}`")))?;
        }
        let value = exact_rational(e, parts[3])?;
        let [i, j, k] = idx;
        if let Some(&bad) = idx.iter().find(|&&x| x >= dim) {
            return Err(invalid(&e.key, format!("line {}: index {bad} is not below dim = {dim}", e.line)));
        }
        if i == j {
            return Err(invalid(
                &e.key,
                format!("line {}: antisymmetry forces c_{{{i}{i}}}^{k} = 0", e.line),
            ));
        }
        brackets.push(BracketEntry::new(i, j, k, value));
    }
    let mut ideal = Vec::new();
    for e in s.all(Section::Lie, "ideal") {
        let v = split_list(&e.value)
            .into_iter()
            .map(|x| exact_rational(e, x))
            .collect::<Result<Vec<_>, _>>()?;
        if v.len() != dim {
            return Err(invalid(&e.key, format!("line {}: vector has {} entries, dim = {dim}", e.line, v.len())));
        }
        ideal.push(v);
    }
    Ok(LieJob { dim, brackets, ideal })
}

fn parse_torus(s: &Sections) -> Result<TorusSpec, ConfigError> {
    let n_entry = s.one(Section::Torus, "n").ok_or_else(|| invalid("n", "missing in [torus]"))?;
    let n = parse_count(n_entry)?;
    if n == 0 {
        return Err(invalid("n", "torus dimension must be positive"));
    }
    let mut dirs = Vec::new();
    for e in s.all(Section::Torus, "foliation") {
        let v = split_list(&e.value)
            .into_iter()
            .map(|x| {
                ExtScalar::from_str(x).map_err(|err| invalid(&e.key, format!("line {}: {err}", e.line)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if v.len() != n {
            return Err(invalid(&e.key, format!("line {}: vector has {} entries, n = {n}", e.line, v.len())));
        }
        dirs.push(v);
    }
    let mut invariance = BTreeSet::new();
    if let Some(e) = s.one(Section::Torus, "invariance") {
        for text in split_list(&e.value) {
            let c: usize = text
                .parse()
                .map_err(|_| parse_err(e.line, &e.key, format!("bad coordinate `{text}`")))?;
            if c >= n {
                return Err(invalid(&e.key, format!("line {}: coordinate {c} is not below n = {n}", e.line)));
            }
            invariance.insert(c);
        }
    }
    let truncation = match s.one(Section::Torus, "truncation") {
        Some(e) => u32::try_from(parse_count(e)?).map_err(|_| invalid("truncation", "too large"))?,
        None => DEFAULT_TRUNCATION,
    };
    Ok(TorusSpec { n, foliation_dirs: dirs, invariance_coords: invariance, truncation })
}

fn parse_witness(s: &Sections) -> Result<WitnessJob, ConfigError> {
    let get = |key: &str, default: usize| -> Result<usize, ConfigError> {
        s.one(Section::Witness, key).map_or(Ok(default), parse_lenient_count)
    };
    let k_min = get("k_min", 2)?;
    let k_max = get("k_max", 8)?;
    let max_derivative_order = get("max_derivative_order", 4)?;
    let samples = get("samples", DEFAULT_SAMPLES)?;
    if k_min == 0 {
        return Err(invalid("k_min", "k starts at 1"));
    }
    if k_max < k_min {
        return Err(invalid("k_max", "must be at least k_min"));
    }
    if k_max > 60 {
        return Err(invalid("k_max", "must be at most 60"));
    }
    if samples == 0 {
        return Err(invalid("samples", "must be positive"));
    }
    Ok(WitnessJob { k_min: k_min as u32, k_max: k_max as u32, max_derivative_order, samples })
}

/// Parses and validates a job file.
pub fn parse_config(text: &str) -> Result<JobConfig, ConfigError> {
    let sections = tokenize(text)?;
    let modes: Vec<Section> = sections
        .seen
        .iter()
        .copied()
        .filter(|s| *s != Section::Output)
        .collect();
    let job = match modes.as_slice() {
        [Section::Lie] => Job::Lie(parse_lie(&sections)?),
        [Section::Torus] => Job::Torus(parse_torus(&sections)?),
        [Section::Witness] => Job::Witness(parse_witness(&sections)?),
        [] => return Err(invalid("mode", "one of [lie], [torus], [witness] is required")),
        _ => return Err(invalid("mode", "exactly one of [lie], [torus], [witness] may be given")),
    };
    let mut output = OutputConfig::default();
    if let Some(e) = sections.one(Section::Output, "format") {
        output.format = Some(e.value.parse().map_err(|r: String| parse_err(e.line, &e.key, r))?);
    }
    if let Some(e) = sections.one(Section::Output, "path") {
        output.path = Some(PathBuf::from(&e.value));
    }
    Ok(JobConfig { job, output })
}
