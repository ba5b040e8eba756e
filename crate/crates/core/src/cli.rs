//! The `divsets` command line.
//!
//! Exit codes: 0 for success, feasible or verified; 1 for excluded,
//! infeasible, node limit or failed verification; 2 for usage and input
//! errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::constructions::{direct_sum, lifted_mrd, spread};
use crate::criteria::{heden_tail_bound, quadratic_excludes, tau, tau_window, ExclusionReason};
use crate::format::{read_file, write_set};
use crate::incidence::{
    check_counting_identities, classify_spectrum, exponent_of_spectrum, hyperplane_spectrum, triple_spectrum,
    Classification, IdentityReport, IncidenceSpectrum, TripleSpectrum,
};
use crate::lp::{build_system, ilp_feasible, lp_feasible, FeasibilityResult, FeasibilityStatus, LinearSystem};
use crate::spectrum::{report, SpectrumOptions, Verdict};
use crate::subspace::SubspaceSet;
use crate::{algebra::pow, Error, Limits, Result};

#[derive(Debug, Parser)]
#[command(
    name = "divsets",
    version,
    about = "Bounds, spectra, constructions and verification of q^r-divisible sets of k-subspaces"
)]
pub struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lower bounds on the tail length of a vector space partition.
    Bounds {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        d1: u32,
        #[arg(long)]
        d2: u32,
        /// The tail length is a multiple of q^(d2-d1).
        #[arg(long)]
        multiple: bool,
    },
    /// Verdict for every cardinality up to nmax.
    Spectrum {
        #[command(flatten)]
        p: Params,
        #[arg(long)]
        nmax: u64,
        /// Also run the LP method over vmin..=vmax.
        #[arg(long)]
        lp: bool,
        #[arg(long, default_value_t = 1)]
        vmin: usize,
        #[arg(long, default_value_t = 12)]
        vmax: usize,
        #[arg(long)]
        triples: bool,
    },
    /// Write a subspace-set file for a construction.
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
        /// Output path; standard output when omitted.
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Check disjointness, spectra, identities and divisibility of a file.
    Verify {
        /// Required divisibility exponent.
        #[arg(long)]
        r: u32,
        /// Skip the triple spectrum.
        #[arg(long)]
        no_triples: bool,
        file: PathBuf,
    },
    /// Exact LP (or ILP) feasibility of the counting system.
    Feasible {
        #[command(flatten)]
        p: Params,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        v: usize,
        #[arg(long)]
        ilp: bool,
        #[arg(long)]
        triples: bool,
        #[arg(long, default_value_t = 10_000)]
        node_limit: u64,
    },
    /// Values of tau around its minimum in m.
    Tau {
        #[command(flatten)]
        p: Params,
        #[arg(long)]
        n: u64,
        #[arg(long, allow_negative_numbers = true)]
        m: Option<i64>,
    },
}

#[derive(Debug, Args)]
pub struct Params {
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub r: u32,
}

#[derive(Debug, Subcommand)]
pub enum ConstructKind {
    /// k-spread of GF(q)^(s*k).
    Spread {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        s: usize,
    },
    /// Lifted MRD partial spread of size q^(k+r) in GF(q)^(2k+r).
    Mrd {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
    },
    /// Direct sum of two subspace-set files.
    Sum { first: PathBuf, second: PathBuf },
}

/// Parses `argv` and runs the command, printing to standard output/error.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        // reader went away, e.g. `divsets ... | head`
        Err(e) if closed_pipe(&e) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn closed_pipe(e: &Error) -> bool {
    let kind = match e {
        Error::Io(io) => Some(io.kind()),
        Error::Json(j) => j.io_error_kind(),
        _ => None,
    };
    kind == Some(std::io::ErrorKind::BrokenPipe)
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let limits = Limits::default();
    match &cli.command {
        Command::Bounds { q, d1, d2, multiple } => {
            let rep = heden_tail_bound(*q, *d1, *d2, *multiple)?;
            if cli.json {
                emit(out, &rep)?;
            } else {
                let rel = if rep.heden_strict { ">" } else { ">=" };
                writeln!(out, "case ({}) q={} d1={} d2={}", rep.case, rep.q, rep.d1, rep.d2)?;
                writeln!(out, "heden:    u1 {rel} {}", rep.heden_bound)?;
                writeln!(out, "improved: u1 >= {}", rep.improved_bound)?;
                if let Some(b) = &rep.b_free_bound {
                    writeln!(out, "without remainder: u1 >= {b}")?;
                }
                writeln!(out, "attained by: {}", rep.attained_by)?;
                for note in &rep.notes {
                    writeln!(out, "note: {note}")?;
                }
            }
            Ok(0)
        }
        Command::Spectrum {
            p,
            nmax,
            lp,
            vmin,
            vmax,
            triples,
        } => {
            let opts = SpectrumOptions {
                use_lp: *lp,
                vmin: *vmin,
                vmax: *vmax,
                include_triples: *triples,
            };
            let rep = report(p.q, p.k, p.r, *nmax, &opts)?;
            if cli.json {
                emit(out, &rep)?;
            } else {
                writeln!(out, "{:>6}  {:<14}  detail", "n", "verdict")?;
                for e in &rep.entries {
                    let (tag, detail) = match &e.verdict {
                        Verdict::Excluded { reason } => ("excluded", reason.to_string()),
                        Verdict::OpenPossible => ("open", String::new()),
                        Verdict::Constructible { recipe, .. } => ("constructible", recipe.clone()),
                    };
                    writeln!(out, "{:>6}  {:<14}  {}", e.n, tag, detail)?;
                }
                let adm: Vec<String> = rep.admissible().iter().map(u64::to_string).collect();
                writeln!(out, "admissible: {{{}}}", adm.join(","))?;
                if let Some(n) = rep.largest_excluded {
                    writeln!(out, "largest excluded: {n}")?;
                }
                if let Some(f) = &rep.semigroup_frobenius {
                    writeln!(out, "every n > {f} is constructible")?;
                }
            }
            Ok(0)
        }
        Command::Construct { kind, output } => {
            let set = match kind {
                ConstructKind::Spread { q, k, s } => spread(*q, *k, *s, &limits)?,
                ConstructKind::Mrd { q, k, r } => lifted_mrd(*q, *k, *r, &limits)?,
                ConstructKind::Sum { first, second } => {
                    direct_sum(&read_file(first, &limits)?, &read_file(second, &limits)?)?
                }
            };
            let text = write_set(&set);
            match output {
                Some(path) => std::fs::write(path, text)?,
                None => out.write_all(text.as_bytes())?,
            }
            Ok(0)
        }
        Command::Verify { r, no_triples, file } => {
            let set = read_file(file, &limits)?;
            let rep = verify(&set, *r, !*no_triples, &limits)?;
            if cli.json {
                emit(out, &rep)?;
            } else {
                write_verify(out, &rep)?;
            }
            Ok(if rep.verified { 0 } else { 1 })
        }
        Command::Feasible {
            p,
            n,
            v,
            ilp,
            triples,
            node_limit,
        } => {
            let sys = build_system(p.q, p.k as usize, p.r, *n, *v, *triples)?;
            let res = if *ilp {
                ilp_feasible(&sys, *node_limit)
            } else {
                lp_feasible(&sys)
            };
            if cli.json {
                #[derive(Serialize)]
                struct Out<'a> {
                    system: &'a LinearSystem,
                    result: &'a FeasibilityResult,
                }
                emit(
                    out,
                    &Out {
                        system: &sys,
                        result: &res,
                    },
                )?;
            } else {
                write_feasibility(out, &sys, &res)?;
            }
            Ok(if res.is_feasible() { 0 } else { 1 })
        }
        Command::Tau { p, n, m } => {
            let (delta, u) = (pow(p.q, p.r), pow(p.q, p.k));
            let rows: Vec<(num_bigint::BigInt, num_bigint::BigInt)> = match m {
                Some(m) => vec![((*m).into(), tau(*n, delta.clone(), u.clone(), *m))],
                None => tau_window(p.q, p.k, p.r, *n),
            };
            let verdict = quadratic_excludes(p.q, p.k, p.r, *n);
            let certifies = |m: &num_bigint::BigInt, t: &num_bigint::BigInt| {
                t < &0.into() || (t == &0.into() && m != &0.into() && m != &1.into())
            };
            let excluded = match m {
                Some(_) => rows.iter().any(|(m, t)| certifies(m, t)),
                None => verdict.excluded,
            };
            if cli.json {
                #[derive(Serialize)]
                struct Row {
                    #[serde(serialize_with = "crate::format::ser_int")]
                    m: num_bigint::BigInt,
                    #[serde(serialize_with = "crate::format::ser_int")]
                    tau: num_bigint::BigInt,
                }
                #[derive(Serialize)]
                struct Out {
                    n: u64,
                    #[serde(serialize_with = "crate::format::ser_int")]
                    delta: num_bigint::BigInt,
                    #[serde(serialize_with = "crate::format::ser_int")]
                    u: num_bigint::BigInt,
                    rows: Vec<Row>,
                    excluded: bool,
                    reason: Option<ExclusionReason>,
                }
                emit(
                    out,
                    &Out {
                        n: *n,
                        delta,
                        u,
                        rows: rows.into_iter().map(|(m, tau)| Row { m, tau }).collect(),
                        excluded,
                        reason: if m.is_none() { verdict.reason } else { None },
                    },
                )?;
            } else {
                writeln!(out, "n={n} delta={delta} u={u}")?;
                writeln!(out, "{:>6}  {:>16}", "m", "tau")?;
                for (m, t) in &rows {
                    let mark = if certifies(m, t) { "  excludes" } else { "" };
                    writeln!(out, "{m:>6}  {t:>16}{mark}")?;
                }
                writeln!(out, "{}", if excluded { "excluded" } else { "not excluded" })?;
            }
            Ok(if excluded { 1 } else { 0 })
        }
    }
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub q: u64,
    pub k: usize,
    pub n: usize,
    pub declared_v: usize,
    pub span_v: usize,
    pub disjoint: bool,
    pub hyperplane_spectrum: Option<IncidenceSpectrum>,
    pub triple_spectrum: Option<TripleSpectrum>,
    pub identities: Option<IdentityReport>,
    pub exponent: Option<u32>,
    pub required_exponent: u32,
    pub classification: Option<Classification>,
    pub classification_error: Option<String>,
    pub verified: bool,
}

/// Full check of a set against a required divisibility exponent, computed in
/// the span of its members.
pub fn verify(set: &SubspaceSet, r: u32, with_triples: bool, limits: &Limits) -> Result<VerifyReport> {
    let (restricted, span_v) = set.span_and_restrict();
    let disjoint = set.pairwise_disjoint();
    let mut rep = VerifyReport {
        q: set.q(),
        k: set.member_dim(),
        n: set.len(),
        declared_v: set.ambient_dim(),
        span_v,
        disjoint,
        hyperplane_spectrum: None,
        triple_spectrum: None,
        identities: None,
        exponent: None,
        required_exponent: r,
        classification: None,
        classification_error: None,
        verified: false,
    };
    if !disjoint || set.is_empty() {
        return Ok(rep);
    }
    let a = hyperplane_spectrum(&restricted, limits)?;
    let b = with_triples.then(|| triple_spectrum(&restricted));
    let ids = check_counting_identities(&a, b.as_ref(), set.q(), span_v, set.member_dim(), set.len());
    let exponent = exponent_of_spectrum(&a);
    match classify_spectrum(&a, set.q(), span_v, set.member_dim()) {
        Ok(c) => rep.classification = Some(c),
        Err(e) => rep.classification_error = Some(e.to_string()),
    }
    rep.verified = ids.all_hold() && exponent >= r && rep.classification_error.is_none();
    rep.hyperplane_spectrum = Some(a);
    rep.triple_spectrum = b;
    rep.identities = Some(ids);
    rep.exponent = Some(exponent);
    Ok(rep)
}

fn write_verify(out: &mut dyn Write, rep: &VerifyReport) -> Result<()> {
    writeln!(
        out,
        "q={} k={} n={} v={} span={}",
        rep.q, rep.k, rep.n, rep.declared_v, rep.span_v
    )?;
    writeln!(out, "pairwise disjoint: {}", rep.disjoint)?;
    if let Some(a) = &rep.hyperplane_spectrum {
        let parts: Vec<String> = a.counts.iter().map(|(i, x)| format!("{i}:{x}")).collect();
        writeln!(out, "hyperplane spectrum: {{{}}}", parts.join(", "))?;
    }
    if let Some(b) = &rep.triple_spectrum {
        let parts: Vec<String> = b.counts.iter().map(|(i, x)| format!("{i}:{x}")).collect();
        writeln!(out, "triple spectrum (ordered): {{{}}}", parts.join(", "))?;
    }
    if let Some(ids) = &rep.identities {
        for c in &ids.checks {
            let rhs = c.rhs.as_ref().map_or("undefined".to_string(), |x| x.to_string());
            writeln!(
                out,
                "  {:<36} {} = {}  {}",
                c.name,
                c.lhs,
                rhs,
                if c.holds { "ok" } else { "FAIL" }
            )?;
        }
    }
    if let Some(e) = rep.exponent {
        writeln!(out, "measured exponent: {e} (required {})", rep.required_exponent)?;
    }
    match (&rep.classification, &rep.classification_error) {
        (Some(c), _) => writeln!(out, "classification: {c:?}")?,
        (None, Some(e)) => writeln!(out, "classification: {e}")?,
        _ => {}
    }
    writeln!(out, "{}", if rep.verified { "verified" } else { "NOT verified" })?;
    Ok(())
}

fn write_feasibility(out: &mut dyn Write, sys: &LinearSystem, res: &FeasibilityResult) -> Result<()> {
    let vars: Vec<String> = sys.variables.iter().map(ToString::to_string).collect();
    writeln!(out, "variables: {}", vars.join(" "))?;
    for c in &sys.constraints {
        let terms: Vec<String> = c
            .coeffs
            .iter()
            .zip(&vars)
            .filter(|(a, _)| !num_traits::Zero::is_zero(*a))
            .map(|(a, x)| format!("{a}*{x}"))
            .collect();
        writeln!(out, "  {:<36} {} = {}", c.name, terms.join(" + "), c.rhs)?;
    }
    let status = match res.status {
        FeasibilityStatus::Feasible => "feasible",
        FeasibilityStatus::Infeasible => "infeasible",
        FeasibilityStatus::NodeLimit => "node limit reached",
    };
    writeln!(out, "status: {status}")?;
    if let Some(x) = &res.point {
        for (name, val) in vars.iter().zip(x) {
            writeln!(out, "  {name} = {val}")?;
        }
    }
    if let Some(y) = &res.farkas {
        let ys: Vec<String> = y.iter().map(ToString::to_string).collect();
        writeln!(out, "phase-one optimum: {}", res.phase_one_optimum)?;
        writeln!(out, "farkas multipliers: {}", ys.join(" "))?;
    }
    if let Some(nodes) = res.nodes {
        writeln!(out, "nodes: {nodes}")?;
    }
    Ok(())
}
