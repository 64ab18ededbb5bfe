//! Argument handling for the `engine` binary, kept in the library so the
//! whole command-line contract can be exercised without spawning a process.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use anyhow::Context;
use clap::error::ErrorKind;
use clap::Parser;

use crate::config::{parse_config, Format};
use crate::run::{run, RunOptions, EXIT_INTERNAL, EXIT_OK};

/// Exact de Rham cohomology of Lie-group quotients from a job file.
#[derive(Parser, Debug)]
#[command(name = "engine", version, about)]
pub struct Cli {
    /// Job file with a [lie], [torus] or [witness] section.
    #[arg(long)]
    pub input: PathBuf,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_parser = parse_format)]
    pub format: Option<Format>,
    /// Audit bound on |m|_inf for torus jobs.
    #[arg(long)]
    pub truncation: Option<u32>,
    /// Cross-check against the CE side and the sign twist; exit 3 on mismatch.
    #[arg(long)]
    pub check: bool,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

/// What one invocation would print and return.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Invocation {
    pub exit: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn invoke<I, T>(args: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let exit = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INTERNAL,
            };
            let text = e.render().to_string();
            return if exit == EXIT_OK {
                Invocation { exit, stdout: text, stderr: String::new() }
            } else {
                Invocation { exit, stdout: String::new(), stderr: text }
            };
        }
    };
    execute(&cli).unwrap_or_else(|e| Invocation {
        exit: EXIT_INTERNAL,
        stdout: String::new(),
        stderr: format!("error: {e:#}\n"),
    })
}

fn execute(cli: &Cli) -> anyhow::Result<Invocation> {
    let text = fs::read_to_string(&cli.input).with_context(|| format!("reading {}", cli.input.display()))?;
    let config = parse_config(&text)?;
    let options = RunOptions { check: cli.check, truncation: cli.truncation };
    let outcome = run(&config, &options);
    let mut inv = Invocation { exit: outcome.exit, ..Invocation::default() };
    for line in &outcome.diagnostics {
        inv.stderr.push_str(line);
        inv.stderr.push('\n');
    }
    if let Some(report) = &outcome.report {
        let format = cli.format.or(config.output.format).unwrap_or_default();
        let rendered = report.render(format);
        match cli.output.as_ref().or(config.output.path.as_ref()) {
            Some(path) => fs::write(path, rendered).with_context(|| format!("writing {}", path.display()))?,
            None => inv.stdout = rendered,
        }
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use std::path::Path;

    use super::*;
    use crate::report::{Certificates, Report};

    const X_LINES: &str = "[torus]\nn = 3\nfoliation = 1,0,0\ninvariance = [1]\n";
    const SL2: &str = "[lie]\ndim = 3\nbracket = 0 1 1 2\nbracket = 0 2 2 -2\nbracket = 1 2 0 1\n";

    fn engine(dir: &Path, config: &str, args: &[&str]) -> Invocation {
        let input = dir.join("job.cfg");
        fs::write(&input, config).unwrap();
        let mut argv: Vec<OsString> = vec!["engine".into(), "--input".into(), input.into()];
        argv.extend(args.iter().map(OsString::from));
        invoke(argv)
    }

    #[test]
    fn x_lines_table() {
        let dir = tempfile::tempdir().unwrap();
        let out = engine(dir.path(), X_LINES, &[]);
        assert_eq!(out.exit, 0, "{}", out.stderr);
        assert!(out.stdout.contains("betti: 1 2 1\n"), "{}", out.stdout);
        assert!(out.stdout.contains("generators: 1 | dy, dz | dy∧dz\n"), "{}", out.stdout);
    }

    #[test]
    fn not_an_ideal_exits_2() {
        let dir = tempfile::tempdir().unwrap();
        let out = engine(dir.path(), &format!("{SL2}ideal = 0,1,0\n"), &[]);
        assert_eq!(out.exit, 2);
        assert!(out.stderr.contains("NotAnIdeal"), "{}", out.stderr);
        assert!(out.stdout.is_empty());
    }

    #[test]
    fn jacobi_failure_exits_2() {
        let dir = tempfile::tempdir().unwrap();
        // [e0,e1]=e1, [e1,e2]=e0 violates Jacobi on (0,1,2).
        let out = engine(dir.path(), "[lie]\ndim = 3\nbracket = 0 1 1 1\nbracket = 1 2 0 1\n", &[]);
        assert_eq!(out.exit, 2, "{}", out.stderr);
        assert!(out.stderr.contains("Jacobi"), "{}", out.stderr);
    }

    #[test]
    fn invalid_torus_spec_exits_2() {
        let dir = tempfile::tempdir().unwrap();
        let out = engine(dir.path(), "[torus]\nn = 2\nfoliation = 1,1\nfoliation = 2,2\n", &[]);
        assert_eq!(out.exit, 2);
        assert!(out.stderr.contains("InvalidSpec"), "{}", out.stderr);
        // Out-of-range coordinates are caught earlier, while validating the config.
        let out = engine(dir.path(), "[torus]\nn = 2\ninvariance = 5\n", &[]);
        assert_eq!(out.exit, 1, "{}", out.stderr);
    }

    #[test]
    fn config_and_usage_errors_exit_1() {
        let dir = tempfile::tempdir().unwrap();
        let out = engine(dir.path(), "[torus]\nn = 3\nfoliation = 0.5,0,0\n", &[]);
        assert_eq!(out.exit, 1);
        assert!(out.stderr.contains("foliation"), "{}", out.stderr);
        assert_eq!(engine(dir.path(), "[lie]\ndim = 3\nbracket = 0 0 1 1\n", &[]).exit, 1);
        assert_eq!(invoke(["engine", "--input", "/nonexistent/job.cfg"]).exit, 1);
        assert_eq!(engine(dir.path(), X_LINES, &["--format", "xml"]).exit, 1);
        assert_eq!(invoke(["engine", "--help"]).exit, 0);
    }

    #[test]
    fn check_flag_passes_on_valid_jobs() {
        let dir = tempfile::tempdir().unwrap();
        for cfg in [X_LINES, SL2, "[torus]\nn = 2\nfoliation = 1,0+1*alpha\n"] {
            let out = engine(dir.path(), cfg, &["--check", "--format", "json"]);
            assert_eq!(out.exit, 0, "{cfg}: {}", out.stderr);
            let report = Report::from_json(&out.stdout).unwrap();
            if let Certificates::Torus(t) = &report.certificates {
                assert_eq!(t.cross_check_ce, Some(true));
            }
        }
    }

    #[test]
    fn json_has_contract_keys_and_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let out = engine(dir.path(), X_LINES, &["--format", "json"]);
        let value: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        for key in ["mode", "betti", "ranks", "generators", "certificates", "audited_modes", "exit"] {
            assert!(value.get(key).is_some(), "missing {key}");
        }
        assert_eq!(value["mode"], "torus");
        let report = Report::from_json(&out.stdout).unwrap();
        assert_eq!(Report::from_json(&report.to_json()).unwrap(), report);
    }

    #[test]
    fn witness_json_round_trips_and_reports_obstruction() {
        let dir = tempfile::tempdir().unwrap();
        let out = engine(dir.path(), "[witness]\nk_min = 2\nk_max = 6\nsamples = 2001.0\n", &["--format", "json"]);
        assert_eq!(out.exit, 0, "{}", out.stderr);
        let report = Report::from_json(&out.stdout).unwrap();
        let Certificates::Witness(w) = &report.certificates else { panic!("expected witness certificates") };
        assert!(w.lift_obstruction);
        assert!(w.bounds_hold);
        assert_eq!(Report::from_json(&report.to_json()).unwrap(), report);
    }

    #[test]
    fn output_section_and_flag_precedence() {
        let dir = tempfile::tempdir().unwrap();
        let target = dir.path().join("from_config.csv");
        let cfg = format!("{X_LINES}\n[output]\nformat = csv\npath = {}\n", target.display());
        let out = engine(dir.path(), &cfg, &[]);
        assert_eq!(out.exit, 0, "{}", out.stderr);
        assert!(out.stdout.is_empty());
        let csv = fs::read_to_string(&target).unwrap();
        assert_eq!(csv.lines().next(), Some("degree,betti,rank,generators"));
        assert_eq!(csv.lines().count(), 4);

        let flag_target = dir.path().join("from_flag.json");
        let out = engine(dir.path(), &cfg, &["--format", "json", "--output", flag_target.to_str().unwrap()]);
        assert_eq!(out.exit, 0);
        assert!(Report::from_json(&fs::read_to_string(&flag_target).unwrap()).is_ok());
    }

    #[test]
    fn truncation_flag_changes_audit_not_betti() {
        let dir = tempfile::tempdir().unwrap();
        let report = |n: &str| Report::from_json(&engine(dir.path(), X_LINES, &["--format", "json", "--truncation", n]).stdout).unwrap();
        let (small, large) = (report("1"), report("4"));
        assert_eq!(small.betti, large.betti);
        assert!(small.audited_modes < large.audited_modes);
    }

    #[test]
    fn repeated_runs_are_byte_identical() {
        let dir = tempfile::tempdir().unwrap();
        let canon = |o: Invocation| Report::from_json(&o.stdout).unwrap().canonical_json();
        let a = canon(engine(dir.path(), X_LINES, &["--format", "json"]));
        let b = canon(engine(dir.path(), X_LINES, &["--format", "json"]));
        assert_eq!(a, b);
    }
}
