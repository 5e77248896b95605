//! Report builders behind the `divfree` binary.
//!
//! Each subcommand produces a [`Report`] plus a human-readable rendering and
//! an exit status. The binary only parses arguments, sizes the thread pool
//! and prints.

use std::fmt::Write as _;
use std::io::Read;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::arrangement::{boolean, generic, parse_arrangement, random_arrangement, weyl, Arrangement, WeylFamily};
use crate::exact::{format_factored, integer_root_split};
use crate::freeness::{conjecture_scan, Certificate, Engine, Step, Verdict};
use crate::lattice::{b1b2_check, betti_numbers, char_poly, poincare_poly};
use crate::multi::{multi_b2, parse_multiarrangement, rank2_exponents, ziegler_restriction, Multiarrangement};

#[derive(Parser, Debug)]
#[command(name = "divfree", version, about = "Exact invariants and freeness certificates for central hyperplane arrangements")]
pub struct Cli {
    /// Cap on worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for randomized generation.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Emit the JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write an arrangement in `.arr` format.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Characteristic and Poincaré polynomials, Betti numbers.
    Charpoly { file: String },
    /// Certify FREE / NOT-FREE, or report UNDECIDED.
    Certify {
        file: String,
        /// Also examine every deletion `A \ {H}`.
        #[arg(long)]
        scan_deletions: bool,
        /// How many hyperplanes addition-deletion may peel off in a row.
        #[arg(long, default_value_t = 1)]
        depth: usize,
    },
    /// Ziegler restriction onto one hyperplane (0-based index in file order).
    Ziegler {
        file: String,
        #[arg(long, default_value_t = 0)]
        hyperplane: usize,
    },
    /// Exponents of a rank-two multiarrangement given in `.marr` format.
    Rank2exp { file: String },
    /// Per-hyperplane search for triples where `pi(A^H)` divides `pi(A)` and
    /// `pi(A \ {H})` but `A \ {H}` is not free.
    ScanConjecture { file: String },
    /// `b2(A) >= b2(A^H) + (|A| - |A^H|) |A^H|` for every hyperplane.
    B1b2 { file: String },
}

#[derive(Subcommand, Debug)]
pub enum GenKind {
    /// Reflection arrangement of type A, B or D on `Q^dim`.
    Weyl { family: String, dim: usize },
    /// Coordinate hyperplanes.
    Boolean { dim: usize },
    /// `n` hyperplanes in general position.
    Generic { dim: usize, n: usize },
    /// Seeded random integer normals with entries in `-bound..=bound`.
    Random {
        dim: usize,
        n: usize,
        #[arg(long, default_value_t = 3)]
        bound: i64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExitStatus {
    Computed,
    InputError,
    NotFree,
    Undecided,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        match self {
            ExitStatus::Computed => 0,
            ExitStatus::InputError => 1,
            ExitStatus::NotFree => 2,
            ExitStatus::Undecided => 3,
        }
    }

    fn of(v: &Verdict) -> Self {
        match v {
            Verdict::Free { .. } => ExitStatus::Computed,
            Verdict::NotFree { .. } => ExitStatus::NotFree,
            Verdict::Undecided => ExitStatus::Undecided,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrangementInfo {
    pub dim: usize,
    pub rank: usize,
    pub size: usize,
}

impl ArrangementInfo {
    fn of(a: &Arrangement) -> Self {
        ArrangementInfo {
            dim: a.dim(),
            rank: a.rank(),
            size: a.len(),
        }
    }
}

/// The JSON document every subcommand emits under `--json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arrangement: Option<ArrangementInfo>,
    pub results: serde_json::Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    pub exit: ExitStatus,
    pub elapsed_ms: f64,
}

pub struct Outcome {
    pub report: Report,
    pub text: String,
}

impl Outcome {
    pub fn code(&self) -> i32 {
        self.report.exit.code()
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            serde_json::to_string_pretty(&self.report).expect("reports serialize") + "\n"
        } else {
            self.text.clone()
        }
    }
}

/// Reads a file, or standard input for `-`.
pub fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn load(path: &str) -> Result<Arrangement> {
    let text = read_input(path)?;
    parse_arrangement(&text).with_context(|| format!("parsing {path}"))
}

fn load_multi(path: &str) -> Result<Multiarrangement> {
    let text = read_input(path)?;
    parse_multiarrangement(&text).with_context(|| format!("parsing {path}"))
}

/// Runs one subcommand. Input problems surface as `Err`; everything else,
/// including NOT-FREE and UNDECIDED outcomes, is an `Outcome`.
pub fn run(cli: &Cli) -> Result<Outcome> {
    let start = Instant::now();
    let mut out = match &cli.command {
        Command::Gen { kind } => gen(kind, cli.seed)?,
        Command::Charpoly { file } => charpoly(&load(file)?),
        Command::Certify {
            file,
            scan_deletions,
            depth,
        } => certify(&load(file)?, *scan_deletions, *depth),
        Command::Ziegler { file, hyperplane } => ziegler(&load(file)?, *hyperplane)?,
        Command::Rank2exp { file } => rank2exp(&load_multi(file)?)?,
        Command::ScanConjecture { file } => scan(&load(file)?),
        Command::B1b2 { file } => b1b2(&load(file)?),
    };
    out.report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(out)
}

fn outcome(command: &str, a: Option<&Arrangement>, results: serde_json::Value, text: String) -> Outcome {
    Outcome {
        report: Report {
            command: command.into(),
            arrangement: a.map(ArrangementInfo::of),
            results,
            certificate: None,
            exit: ExitStatus::Computed,
            elapsed_ms: 0.0,
        },
        text,
    }
}

pub fn gen(kind: &GenKind, seed: u64) -> Result<Outcome> {
    let a = match kind {
        GenKind::Weyl { family, dim } => weyl(family.parse::<WeylFamily>()?, *dim)?,
        GenKind::Boolean { dim } => boolean(*dim),
        GenKind::Generic { dim, n } => generic(*dim, *n)?,
        GenKind::Random { dim, n, bound } => {
            if *bound < 1 {
                bail!("--bound must be positive");
            }
            random_arrangement(*dim, *n, *bound, seed)
        }
    };
    let text = a.to_arr_string();
    Ok(outcome("gen", Some(&a), json!({ "arr": text }), text.clone()))
}

pub fn charpoly(a: &Arrangement) -> Outcome {
    let chi = char_poly(a);
    let pi = poincare_poly(a);
    let betti = betti_numbers(a);
    let roots = integer_root_split(&chi).expect("chi is monic");
    let shown = roots.as_deref().map_or_else(|| chi.to_string(), format_factored);
    let text = format!("chi(t) = {shown}\npi(t) = {pi}\nbetti = {betti:?}\n");
    let results = json!({
        "chi": chi,
        "chi_factored": roots.as_deref().map(format_factored),
        "roots": roots,
        "poincare": pi,
        "betti": betti,
    });
    outcome("charpoly", Some(a), results, text)
}

fn render_step(s: &Step, depth: usize, out: &mut String) {
    let params = serde_json::to_value(&s.rule).expect("rules serialize");
    let params = params.get("params").map(|p| format!(" {p}")).unwrap_or_default();
    let pad = "  ".repeat(depth);
    let _ = writeln!(out, "{pad}{}{params}: {} => {}", s.rule.id(), s.subject, s.conclusion);
    if !s.witness.is_empty() {
        let w: Vec<String> = s.witness.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(out, "{pad}  [{}]", w.join(", "));
    }
    for p in &s.premises {
        render_step(p, depth + 1, out);
    }
}

pub fn certify(a: &Arrangement, scan_deletions: bool, depth: usize) -> Outcome {
    let engine = Engine::with_deletion_depth(depth);
    let cert = engine.certify(a);
    let mut text = format!("{}\n", cert.verdict);
    for s in &cert.steps {
        render_step(s, 1, &mut text);
    }
    for n in &cert.notes {
        let _ = writeln!(text, "  note: {n}");
    }
    let mut results = json!({ "verdict": cert.verdict });
    if scan_deletions {
        let reports = engine.scan_deletions(a);
        text.push_str("deletions:\n");
        for r in &reports {
            let how = if r.ziegler.is_some() {
                " (ziegler)"
            } else if r.triple.is_some() {
                " (triple)"
            } else {
                ""
            };
            let _ = writeln!(
                text,
                "  {}: |A^H| = {}, slack {}, {}{how}",
                r.hyperplane, r.restriction_size, r.slack, r.verdict
            );
        }
        results["deletions"] = serde_json::to_value(&reports).expect("reports serialize");
    }
    let contradictions = engine.contradictions();
    if !contradictions.is_empty() {
        let _ = writeln!(text, "warning: {} contradictory verdicts recorded", contradictions.len());
        results["contradictions"] = serde_json::to_value(&contradictions).expect("serialize");
    }
    let mut o = outcome("certify", Some(a), results, text);
    o.report.exit = ExitStatus::of(&cert.verdict);
    o.report.certificate = Some(cert);
    o
}

pub fn ziegler(a: &Arrangement, h: usize) -> Result<Outcome> {
    let z = ziegler_restriction(a, h)?;
    let mb2 = multi_b2(&z);
    let exps = (z.base().rank() <= 2).then(|| rank2_exponents(&z).expect("rank checked"));
    let mut text = format!(
        "restriction onto {} ({} hyperplanes, total multiplicity {})\n{}multi b2 = {mb2}\n",
        a.hyperplanes()[h],
        z.base().len(),
        z.total(),
        z.to_marr_string()
    );
    if let Some(e) = &exps {
        let _ = writeln!(text, "exponents = ({}, {})", e.d1, e.d2);
    }
    let results = json!({
        "hyperplane": a.hyperplanes()[h],
        "multiarrangement": z,
        "total": z.total(),
        "multi_b2": mb2,
        "exponents": exps,
    });
    Ok(outcome("ziegler", Some(a), results, text))
}

pub fn rank2exp(m: &Multiarrangement) -> Result<Outcome> {
    let e = rank2_exponents(m)?;
    let text = format!("({}, {})\n", e.d1, e.d2);
    let results = json!({ "exponents": e, "total": m.total() });
    Ok(outcome("rank2exp", Some(m.base()), results, text))
}

pub fn scan(a: &Arrangement) -> Outcome {
    let engine = Engine::new();
    let r = conjecture_scan(&engine, a);
    let mut text = String::new();
    for row in &r.rows {
        let _ = writeln!(
            text,
            "{}: splits={} divides(A)={} divides(A')={} A={} A'={} A^H={} {}",
            row.hyperplane,
            row.restriction_splits,
            row.divides_whole,
            row.divides_deletion,
            row.whole.label(),
            row.deletion.label(),
            row.restriction.label(),
            serde_json::to_value(row.status).expect("serialize").as_str().unwrap_or_default(),
        );
    }
    if let Some(n) = &r.note {
        let _ = writeln!(text, "{n}");
    }
    let _ = writeln!(text, "candidates: {}, for review: {}", r.candidates, r.reviews);
    let results = serde_json::to_value(&r).expect("serialize");
    outcome("scan-conjecture", Some(a), results, text)
}

pub fn b1b2(a: &Arrangement) -> Outcome {
    let rows = b1b2_check(a);
    let mut text = String::new();
    for r in &rows {
        let _ = writeln!(
            text,
            "{}: b2 = {}, b2(A^H) = {}, |A^H| = {}, slack = {}{}",
            a.hyperplanes()[r.hyperplane],
            r.b2,
            r.b2_restriction,
            r.restriction_size,
            r.slack,
            if r.equality { " (equality)" } else { "" }
        );
    }
    outcome("b1b2", Some(a), json!({ "rows": rows }), text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_arrangement_charpoly() {
        let o = charpoly(&Arrangement::empty(3));
        assert!(o.text.starts_with("chi(t) = t^3\n"));
    }

    #[test]
    fn report_round_trips() {
        let o = certify(&weyl(WeylFamily::B, 3).unwrap(), true, 1);
        let text = o.render(true);
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, o.report);
        assert_eq!(o.code(), 0);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(ExitStatus::of(&Verdict::Undecided).code(), 3);
        assert_eq!(ExitStatus::of(&Verdict::Free { exponents: vec![] }).code(), 0);
        assert_eq!(certify(&generic(3, 5).unwrap(), false, 1).code(), 2);
        let cli = Cli::parse_from(["divfree", "charpoly", "/nonexistent.arr"]);
        assert!(run(&cli).is_err());
    }
}
