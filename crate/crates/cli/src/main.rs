//! `superbridge`: command-line front end to `superbridge-core`.
//!
//! Exit status is 0 on success, 1 when a check fails (a certificate does not
//! verify, no certificate exists, a labeling is inconsistent, a reproduction
//! step fails) and 2 for usage errors, unreadable or missing input and odd
//! edge counts.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};

use superbridge_core::diagram::{parse_gauss, parse_pd, KnotDiagram};
use superbridge_core::gordan::{format_certificate, gordan_check, parse_certificate, verify_certificate, GordanVerdict};
use superbridge_core::homsearch::hom_search;
use superbridge_core::ledger::{conclude, KnowledgeTable};
use superbridge_core::poly::{edge_vectors, parse_polygon, sign_matrix, PolyError, PolygonalKnot, Vec3};
use superbridge_core::projection::project;
use superbridge_core::reproduce::{data_dir, reproduce_fixtures, ReproduceError};
use superbridge_core::superbridge::witness_search;
use superbridge_core::wirtinger::{
    labeling_from_specs, parse_labeling_lines, presentation, propagate, Propagation, TranspositionLabeling,
};
use superbridge_core::Execution;

#[derive(Parser)]
#[command(name = "superbridge", version, about = "Exact superbridge bounds for polygonal knots")]
struct Cli {
    /// Run every data-parallel loop on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a stored certificate against a polygon.
    VerifyCert {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Decide which side of Gordan's alternative holds and print the witness.
    FindCert {
        #[arg(long)]
        poly: PathBuf,
        /// Write the certificate here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a direction with many local maxima.
    Witness {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
    /// Project a polygon to a knot diagram.
    Project {
        #[arg(long)]
        poly: PathBuf,
        /// Projection direction as `x,y,z`.
        #[arg(long, value_parser = parse_direction)]
        direction: Option<Vec3>,
        #[arg(long, value_enum, default_value_t = Format::Pd)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for surjections onto S_m sending meridians to transpositions,
    /// or propagate the generator labels given with `--strands`.
    HomSearch {
        /// PD or Gauss code file.
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long, default_value_t = 5)]
        m: u8,
        /// Lines `<strand-spec> -> (i j)` to propagate instead of searching.
        #[arg(long)]
        strands: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Combine every available bound for the knot of a polygon.
    Conclude {
        #[arg(long)]
        poly: PathBuf,
        /// Diagram for the `--strands` labeling.
        #[arg(long, requires = "strands")]
        diagram: Option<PathBuf>,
        #[arg(long, requires = "diagram")]
        strands: Option<PathBuf>,
        /// Knot label, when the polygon file has no `name:` line.
        #[arg(long)]
        name: Option<String>,
    },
    /// Check every bundled realization and print the report.
    Reproduce {
        /// Fixture directory (default: `$GORDAN_DATA`, then `data`).
        #[arg(long)]
        data: Option<PathBuf>,
        /// Write the TSV report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Pd,
    Gauss,
}

fn parse_direction(s: &str) -> Result<Vec3, String> {
    let parts: Vec<i64> = s
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| format!("{t}: {e}")))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [x, y, z] if [x, y, z] != [0, 0, 0] => Ok([x, y, z]),
        _ => Err("expected three integers, not all zero".into()),
    }
}

/// A check that ran and came out negative.
#[derive(Debug)]
struct CheckFailed(String);

impl std::fmt::Display for CheckFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CheckFailed {}

fn fail(msg: impl Into<String>) -> anyhow::Error {
    CheckFailed(msg.into()).into()
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_polygon(path: &Path) -> anyhow::Result<PolygonalKnot> {
    let p = parse_polygon(&read(path)?).with_context(|| format!("in {}", path.display()))?;
    if p.name().is_none() {
        if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
            return Ok(p.with_name(stem));
        }
    }
    Ok(p)
}

fn load_diagram(path: &Path) -> anyhow::Result<KnotDiagram> {
    let text = read(path)?;
    let is_pd = text.contains("X[") || text.trim().is_empty();
    let d = if is_pd { parse_pd(&text) } else { parse_gauss(&text) };
    d.with_context(|| format!("in {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn replay(d: &KnotDiagram, strands: &Path, m: u8) -> anyhow::Result<TranspositionLabeling> {
    let specs = parse_labeling_lines(&read(strands)?).with_context(|| format!("in {}", strands.display()))?;
    let partial = labeling_from_specs(d, m, &specs)?;
    match propagate(&presentation(d), &partial) {
        Propagation::Complete(l) => Ok(l),
        Propagation::Conflict { crossing } => Err(fail(format!("labels conflict at crossing {}", crossing + 1))),
        Propagation::Incomplete { unreached, .. } => {
            Err(fail(format!("propagation stalls with {} arcs unlabelled", unreached.len())))
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let exec = if cli.sequential { Execution::Sequential } else { Execution::default() };
    match cli.command {
        Command::VerifyCert { poly, cert } => {
            let p = load_polygon(&poly)?;
            let e = sign_matrix(&edge_vectors(&p))?;
            let u = parse_certificate(&read(&cert)?).with_context(|| format!("in {}", cert.display()))?;
            let v = verify_certificate(&e, &u)?;
            let r = &v.residual;
            println!("residual ({}, {}, {})", r[0], r[1], r[2]);
            println!("nonnegative {}", v.nonnegative);
            println!("nonzero {}", v.nonzero);
            if !v.holds() {
                return Err(fail("certificate does not verify"));
            }
            println!("certificate verifies: sb <= {}", p.len() / 2 - 1);
        }
        Command::FindCert { poly, out } => {
            let p = load_polygon(&poly)?;
            let e = sign_matrix(&edge_vectors(&p))?;
            match gordan_check(&e)? {
                GordanVerdict::CertificateExists(u) => emit(out.as_deref(), &format_certificate(u.entries()))?,
                GordanVerdict::DirectionExists(v) => {
                    return Err(fail(format!(
                        "no certificate: direction {v} has {} local maxima",
                        p.len() / 2
                    )))
                }
            }
        }
        Command::Witness { poly, seed, budget } => {
            let p = load_polygon(&poly)?;
            println!("{}", witness_search(&p, budget, seed, exec)?);
        }
        Command::Project { poly, direction, format, out } => {
            let p = load_polygon(&poly)?;
            let (d, pose) = project(&p, direction)?;
            let [x, y, z] = pose.direction;
            eprintln!("projected along ({x}, {y}, {z}): {} crossings", d.num_crossings());
            let mut text = match format {
                Format::Pd => d.pd_code(),
                Format::Gauss => d.gauss_code(),
            };
            text.push('\n');
            emit(out.as_deref(), &text)?;
        }
        Command::HomSearch { diagram, m, strands, out } => {
            if m < 2 {
                return Err(anyhow!("--m must be at least 2"));
            }
            let d = load_diagram(&diagram)?;
            let text = match strands {
                Some(strands) => {
                    let l = replay(&d, &strands, m)?;
                    if !l.is_surjective() {
                        return Err(fail(format!("labeling is not surjective onto S_{m}")));
                    }
                    l.render(&d)
                }
                None => {
                    let homs = hom_search(&presentation(&d), m, exec);
                    if homs.is_empty() {
                        return Err(fail(format!("no surjection onto S_{m} sends meridians to transpositions")));
                    }
                    homs.iter().map(|l| l.render(&d)).collect::<Vec<_>>().join("\n")
                }
            };
            emit(out.as_deref(), &text)?;
        }
        Command::Conclude { poly, diagram, strands, name } => {
            let mut p = load_polygon(&poly)?;
            if let Some(name) = name {
                p = p.with_name(name);
            }
            let homs = match (diagram, strands) {
                (Some(d), Some(s)) => {
                    let d = load_diagram(&d)?;
                    let specs = parse_labeling_lines(&read(&s)?)?;
                    let m = specs.iter().map(|(_, t)| t.points().1).max().unwrap_or(2);
                    vec![replay(&d, &s, m)?]
                }
                _ => Vec::new(),
            };
            let ledger = conclude(&p, &homs, &KnowledgeTable::default())?;
            println!("knot {}", ledger.knot);
            println!("sb_lower {} [{}]", ledger.sb_lower.value, ledger.sb_lower.tags());
            if let Some(u) = &ledger.sb_upper {
                println!("sb_upper {} [{}]", u.value, u.tags());
            }
            if let Some(b) = &ledger.b_lower {
                println!("b_lower {} [{}]", b.value, b.tags());
            }
            println!("verdict {}", ledger.verdict());
        }
        Command::Reproduce { data, out } => {
            let dir = data_dir(data.as_deref());
            let report = reproduce_fixtures(&dir, exec).map_err(|e| match e {
                ReproduceError::MissingFixture { .. } => anyhow!(e),
                _ => fail(e.to_string()),
            })?;
            print!("{}", report.to_text());
            match out {
                Some(path) => emit(Some(&path), &report.to_tsv())?,
                None => print!("\n{}", report.to_tsv()),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<CheckFailed>() => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            if matches!(e.downcast_ref::<PolyError>(), Some(PolyError::OddEdgeCount(_))) {
                eprintln!("error: {e}: the certificate method needs an even number of edges");
            } else {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(2)
        }
    }
}
