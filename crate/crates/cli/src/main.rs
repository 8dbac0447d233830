//! `qfsep`: batch runs of the length inequality harness, spiral witnesses,
//! separation certificates and limit-set figures.
//!
//! Exit status: 0 when every check passed, 1 when a mathematical check failed,
//! 2 on usage, configuration or I/O errors.

mod config;
mod svg;

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use qfsep::boundary::{check_witness, find_spiral_witness, limit_set_sample, LIMIT_SET_SCHEMA};
use qfsep::certificates::{
    find_separation_certificate, triangle_harness, verify_certificate, SeparationCertificate, TRIANGLE_SCHEMA,
};
use qfsep::representations::{
    bend, compute_spectrum, estimate_growth, find_complex_trace_element, fuchsian_regular, within_bend_envelope,
    BEND_ENVELOPE,
};
use qfsep::{Error, Representation};

use config::{RunConfig, OUT_ENV};

const SPECTRUM_SCHEMA: &str = "qfsep/spectrum/v1";
const GROWTH_SCHEMA: &str = "qfsep/growth/v1";
const RUN_SCHEMA: &str = "qfsep/run/v1";
/// Word length bound for the complex-trace search in `bend` and `witness`.
const COMPLEX_TRACE_MAXLEN: usize = 4;

#[derive(Parser, Debug)]
#[command(name = "qfsep", version, about = "Surface-group length inequalities and separation certificates")]
struct Cli {
    /// JSON run configuration; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory; overrides the config file and the QFSEP_OUT variable.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    genus: Option<usize>,
    /// Bending angle in radians.
    #[arg(long, global = true, allow_negative_numbers = true)]
    bend_angle: Option<f64>,
    #[arg(long, global = true)]
    maxlen: Option<usize>,
    #[arg(long = "rmax", global = true)]
    rmax: Option<f64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct RepArg {
    /// `reference`, `bent`, or a representation JSON file.
    #[arg(long)]
    rep: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the Fuchsian reference representation.
    RefRep,
    /// Bend a Fuchsian representation by the configured angle.
    Bend(RepArg),
    /// Stable lengths of conjugacy representatives.
    Spectrum(RepArg),
    /// Orbit growth exponent.
    Growth(RepArg),
    /// Strict length inequalities over pairs of a Fuchsian representation.
    TriangleCheck(RepArg),
    /// Search for a spiraling witness.
    Witness(RepArg),
    /// Search for a separation certificate, or verify one with `--cert`.
    Certify {
        #[command(flatten)]
        rep: RepArg,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Limit-set sample as CSV and SVG.
    Limitset(RepArg),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::RefRep => "ref-rep",
            Command::Bend(_) => "bend",
            Command::Spectrum(_) => "spectrum",
            Command::Growth(_) => "growth",
            Command::TriangleCheck(_) => "triangle-check",
            Command::Witness(_) => "witness",
            Command::Certify { .. } => "certify",
            Command::Limitset(_) => "limitset",
        }
    }
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Pass,
    Falsified(String),
}

fn falsified(msg: impl Display) -> anyhow::Result<Outcome> {
    Ok(Outcome::Falsified(msg.to_string()))
}

struct Run {
    config: RunConfig,
    out: PathBuf,
    artifacts: Vec<String>,
}

#[derive(Serialize)]
struct Manifest<'a> {
    schema: &'static str,
    command: &'a str,
    status: &'a str,
    config: &'a RunConfig,
    artifacts: &'a [String],
}

impl Run {
    fn path(&self, name: &str) -> PathBuf {
        self.out.join(name)
    }

    fn write(&mut self, name: &str, contents: &str) -> anyhow::Result<()> {
        let path = self.path(name);
        fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
        println!("wrote {}", path.display());
        self.artifacts.push(name.to_string());
        Ok(())
    }

    fn write_json<T: Serialize>(&mut self, name: &str, value: &T) -> anyhow::Result<()> {
        let text = serde_json::to_string_pretty(value)?;
        self.write(name, &(text + "\n"))
    }

    /// CSV with the schema tag on a leading comment line.
    fn write_csv<R: Serialize>(&mut self, name: &str, schema: &str, rows: impl IntoIterator<Item = R>) -> anyhow::Result<()> {
        let mut buf = format!("# {schema}\n").into_bytes();
        {
            let mut w = csv::Writer::from_writer(&mut buf);
            for r in rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        self.write(name, &String::from_utf8(buf)?)
    }

    fn reference(&self) -> anyhow::Result<Representation> {
        Ok(fuchsian_regular(self.config.genus)?)
    }

    fn bent(&self) -> anyhow::Result<Representation> {
        Ok(bend(&self.reference()?, self.config.bend_angle)?)
    }

    /// Resolves `--rep`, falling back to `default`.
    fn rep(&self, arg: &RepArg, default: &str) -> anyhow::Result<Representation> {
        let rep = match arg.rep.as_deref().unwrap_or(default) {
            "reference" => self.reference()?,
            "bent" => self.bent()?,
            path => {
                let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
                Representation::from_json(&text).with_context(|| format!("loading {path}"))?
            }
        };
        let residual = rep.relator_residual();
        if residual > self.config.tolerances.relator {
            bail!("relator residual {residual:e} exceeds tolerance {:e}", self.config.tolerances.relator);
        }
        Ok(rep)
    }
}

fn load_config(cli: &Cli) -> anyhow::Result<RunConfig> {
    let mut config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(dir) = std::env::var_os(OUT_ENV) {
        config.output_dir = dir.into();
    }
    if let Some(dir) = &cli.out {
        config.output_dir = dir.clone();
    }
    if let Some(g) = cli.genus {
        config.genus = g;
    }
    if let Some(a) = cli.bend_angle {
        config.bend_angle = a;
    }
    if let Some(n) = cli.maxlen {
        config.maxlen = n;
    }
    if let Some(r) = cli.rmax {
        config.rmax = r;
    }
    if let Some(s) = cli.seed {
        config.seed = s;
    }
    config.validate()?;
    Ok(config)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match load_config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("config error: {e:#}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = fs::create_dir_all(&config.output_dir) {
        eprintln!("cannot create {}: {e}", config.output_dir.display());
        return ExitCode::from(2);
    }
    let mut run = Run { out: config.output_dir.clone(), config, artifacts: Vec::new() };
    let name = cli.command.name();
    let result = match &cli.command {
        Command::RefRep => ref_rep(&mut run),
        Command::Bend(r) => cmd_bend(&mut run, r),
        Command::Spectrum(r) => spectrum(&mut run, r),
        Command::Growth(r) => growth(&mut run, r),
        Command::TriangleCheck(r) => triangle_check(&mut run, r),
        Command::Witness(r) => witness(&mut run, r),
        Command::Certify { rep, cert } => certify(&mut run, rep, cert.as_deref()),
        Command::Limitset(r) => limitset(&mut run, r),
    };
    let (status, code) = match &result {
        Ok(Outcome::Pass) => ("pass", 0),
        Ok(Outcome::Falsified(msg)) => {
            eprintln!("FAILED: {msg}");
            ("falsified", 1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ("error", 2)
        }
    };
    let manifest = Manifest { schema: RUN_SCHEMA, command: name, status, config: &run.config, artifacts: &run.artifacts };
    let written = serde_json::to_string_pretty(&manifest)
        .map_err(anyhow::Error::from)
        .and_then(|t| Ok(fs::write(run.path(&format!("{name}.run.json")), t + "\n")?));
    if let Err(e) = written {
        eprintln!("cannot write run manifest: {e:#}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}

fn ref_rep(run: &mut Run) -> anyhow::Result<Outcome> {
    let rep = run.reference()?;
    let residual = rep.relator_residual();
    println!("genus {} reference {}: relator residual {residual:e}", run.config.genus, rep.id());
    run.write("reference.json", &(rep.to_json()? + "\n"))?;
    if residual > run.config.tolerances.relator {
        return falsified(format!("relator residual {residual:e} exceeds {:e}", run.config.tolerances.relator));
    }
    Ok(Outcome::Pass)
}

fn cmd_bend(run: &mut Run, arg: &RepArg) -> anyhow::Result<Outcome> {
    let angle = run.config.bend_angle;
    if !within_bend_envelope(angle) {
        println!("warning: angle {angle} lies outside the documented envelope |angle| <= {BEND_ENVELOPE}");
    }
    let base = run.rep(arg, "reference")?;
    let rep = match bend(&base, angle) {
        Ok(r) => r,
        Err(e @ Error::RelatorViolation(_)) => return falsified(e),
        Err(e) => return Err(e.into()),
    };
    let residual = rep.relator_residual();
    println!("bend({angle}) {}: relator residual {residual:e}", rep.id());
    match find_complex_trace_element(&rep, COMPLEX_TRACE_MAXLEN) {
        Ok(w) => println!("complex-trace element: {w}"),
        Err(e) => println!("{e}"),
    }
    run.write("bent.json", &(rep.to_json()? + "\n"))?;
    if residual > run.config.tolerances.relator {
        return falsified(format!("relator residual {residual:e} exceeds {:e}", run.config.tolerances.relator));
    }
    Ok(Outcome::Pass)
}

#[derive(Serialize)]
struct SpectrumRow {
    word: String,
    word_length: usize,
    length: f64,
}

fn spectrum(run: &mut Run, arg: &RepArg) -> anyhow::Result<Outcome> {
    let rep = run.rep(arg, "bent")?;
    let spec = compute_spectrum(&rep, run.config.maxlen);
    println!("{} conjugacy classes up to length {}", spec.len(), run.config.maxlen);
    let rows = spec.entries.iter().map(|(w, &l)| SpectrumRow { word: w.to_string(), word_length: w.len(), length: l });
    run.write_csv("spectrum.csv", SPECTRUM_SCHEMA, rows)?;
    if let Some((w, l)) = spec.entries.iter().find(|(_, l)| !(**l > 0.0)) {
        return falsified(format!("class {w} has non-positive length {l}"));
    }
    Ok(Outcome::Pass)
}

#[derive(Serialize)]
struct GrowthRow {
    radius: f64,
    count: u64,
}

#[derive(Serialize)]
struct GrowthSummary {
    schema: &'static str,
    rep_id: String,
    #[serde(rename = "Rmax")]
    rmax: f64,
    h: f64,
    residual: f64,
    explored: u64,
}

/// Growth exponents of Fuchsian references are checked against 1 within this margin.
const GROWTH_WINDOW: f64 = 0.2;

fn growth(run: &mut Run, arg: &RepArg) -> anyhow::Result<Outcome> {
    let rep = run.rep(arg, "reference")?;
    let g = estimate_growth(&rep, run.config.rmax)?;
    println!("h = {:.4} (fit residual {:.3e}, {} elements explored)", g.h, g.residual, g.explored);
    let rows = g.radii.iter().zip(&g.counts).map(|(&radius, &count)| GrowthRow { radius, count });
    run.write_csv("growth.csv", GROWTH_SCHEMA, rows)?;
    let summary = GrowthSummary {
        schema: GROWTH_SCHEMA,
        rep_id: rep.id(),
        rmax: run.config.rmax,
        h: g.h,
        residual: g.residual,
        explored: g.explored,
    };
    run.write_json("growth.json", &summary)?;
    if rep.is_fuchsian() && (g.h - 1.0).abs() > GROWTH_WINDOW {
        return falsified(format!("Fuchsian growth exponent {:.4} is not within {GROWTH_WINDOW} of 1", g.h));
    }
    Ok(Outcome::Pass)
}

#[derive(Serialize)]
struct TriangleRow {
    a: String,
    b: String,
    config: &'static str,
    ell_a: f64,
    ell_b: f64,
    ell_combined: f64,
    slack: f64,
}

fn triangle_check(run: &mut Run, arg: &RepArg) -> anyhow::Result<Outcome> {
    let rep = run.rep(arg, "reference")?;
    let maxlen = run.config.triangle_maxlen;
    let records = match triangle_harness(&rep, maxlen) {
        Ok(r) => r,
        Err(e @ Error::TriangleViolation { .. }) => return falsified(e),
        Err(e) => return Err(e.into()),
    };
    let tol = run.config.tolerances.triangle_slack;
    let weak = records.iter().filter(|r| r.slack <= tol).count();
    let min = records.iter().map(|r| r.slack).fold(f64::INFINITY, f64::min);
    println!("{} pairs up to length {maxlen}: {weak} with slack <= {tol:e}, min slack {min:e}", records.len());
    let rows = records.iter().map(|r| TriangleRow {
        a: r.a.to_string(),
        b: r.b.to_string(),
        config: r.config.name(),
        ell_a: r.ell_a,
        ell_b: r.ell_b,
        ell_combined: r.ell_combined,
        slack: r.slack,
    });
    run.write_csv("triangle.csv", TRIANGLE_SCHEMA, rows)?;
    if weak > 0 {
        return falsified(format!("{weak} pairs have slack <= {tol:e}"));
    }
    Ok(Outcome::Pass)
}

fn witness(run: &mut Run, arg: &RepArg) -> anyhow::Result<Outcome> {
    let rep = run.rep(arg, "bent")?;
    let gamma = match find_complex_trace_element(&rep, COMPLEX_TRACE_MAXLEN) {
        Ok(w) => w,
        Err(e @ Error::NoComplexTrace(_)) => return falsified(e),
        Err(e) => return Err(e.into()),
    };
    let w = match find_spiral_witness(&rep, &gamma, run.config.maxlen) {
        Ok(w) => w,
        Err(e @ Error::Witness(_)) => return falsified(e),
        Err(e) => return Err(e.into()),
    };
    println!("gamma {} aux {}: Theta {:.6}, n {:?}, m {:?}", w.gamma, w.aux, w.big_theta, w.n, w.m);
    run.write_json("witness.json", &w)?;
    let report = check_witness(&w, &rep);
    if !report.ok() {
        return falsified(report.failures.join("; "));
    }
    let gap = |g: Option<f64>| g.map_or("n/a".to_string(), |g| format!("{g:.3e}"));
    println!("cyclic orders verified (linked gap {}, aligned gap {})", gap(report.linked_gap), gap(report.aligned_gap));
    Ok(Outcome::Pass)
}

fn certify(run: &mut Run, arg: &RepArg, cert: Option<&Path>) -> anyhow::Result<Outcome> {
    let rep = run.rep(arg, "bent")?;
    let cert = match cert {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            // an unreadable certificate is a failed verification, not a usage error
            match SeparationCertificate::from_json(&text) {
                Ok(c) => c,
                Err(e) => return falsified(format!("{}: {e}", path.display())),
            }
        }
        None => {
            let c = match find_separation_certificate(&rep, run.config.maxlen, run.config.tolerances.min_ratio) {
                Ok(c) => c,
                Err(e @ Error::NoCertificate { .. }) => return falsified(e),
                Err(e) => return Err(e.into()),
            };
            run.write("certificate.json", &(c.to_json()? + "\n"))?;
            c
        }
    };
    println!("pair ({}, {}): ratio {:.10}, alpha {:.6e}", cert.a, cert.b, cert.ratio, cert.alpha);
    let report = verify_certificate(&cert, &rep);
    if !report.ok() {
        return falsified(report.failures.join("; "));
    }
    println!("certificate verified");
    Ok(Outcome::Pass)
}

#[derive(Serialize)]
struct LimitRow {
    word: String,
    angle_ref: f64,
    re: Option<f64>,
    im: Option<f64>,
}

fn limitset(run: &mut Run, arg: &RepArg) -> anyhow::Result<Outcome> {
    let rep = run.rep(arg, "bent")?;
    let sample = limit_set_sample(&rep, run.config.maxlen)?;
    println!("{} limit points from conjugacy representatives up to length {}", sample.entries.len(), sample.maxlen);
    let rows = sample.entries.iter().map(|e| LimitRow {
        word: e.word.to_string(),
        angle_ref: e.angle_ref,
        re: e.image.map(|z| z.re),
        im: e.image.map(|z| z.im),
    });
    run.write_csv("limitset.csv", LIMIT_SET_SCHEMA, rows)?;
    let figure = svg::limit_set_svg(&sample, LIMIT_SET_SCHEMA);
    run.write("limitset.svg", &figure)?;
    Ok(Outcome::Pass)
}
