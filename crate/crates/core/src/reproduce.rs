//! Batch check of every bundled realization.
//!
//! For each knot the data directory holds `<knot>.poly` and `<knot>.cert`;
//! the knots with a bridge-index argument also have `<knot>.pd` and
//! `<knot>.hom` (generating strand labels of a surjection onto `S_m`). Each
//! knot is checked independently: the stored certificate verifies, a fresh
//! certificate is found, a direction with `n/2 - 1` maxima exists, the
//! labeling propagates to a surjection, and the ledger verdict is the
//! expected one.

use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use thiserror::Error;

use crate::diagram::parse_pd;
use crate::exec::Execution;
use crate::gordan::{find_certificate, parse_certificate, verify_certificate};
use crate::ledger::{conclude, label_key, BoundLedger, KnowledgeTable, Verdict};
use crate::poly::{edge_vectors, parse_polygon, sign_matrix};
use crate::superbridge::witness_search;
use crate::wirtinger::{
    labeling_from_specs, parse_labeling_lines, presentation, propagate, Propagation,
    TranspositionLabeling,
};

/// Random directions tried per knot on top of the arrangement candidates.
pub const WITNESS_BUDGET: usize = 10_000;
pub const WITNESS_SEED: u64 = 1;

pub const TSV_HEADER: &str = "knot\tsb_lower\tsb_upper\tverdict\tcitations";

#[derive(Debug, Error)]
pub enum ReproduceError {
    #[error("{knot}: missing fixture {}", path.display())]
    MissingFixture { knot: String, path: PathBuf },
    #[error("{knot}: certificate does not verify, residual ({})", fmt_residual(residual))]
    VerificationFailure { knot: String, residual: [BigInt; 3] },
    #[error("{knot}: {message}")]
    CheckFailed { knot: String, message: String },
}

fn fmt_residual(r: &[BigInt; 3]) -> String {
    r.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

impl ReproduceError {
    pub fn knot(&self) -> &str {
        match self {
            ReproduceError::MissingFixture { knot, .. }
            | ReproduceError::VerificationFailure { knot, .. }
            | ReproduceError::CheckFailed { knot, .. } => knot,
        }
    }
}

/// The fixture directory: an explicit path, else `$GORDAN_DATA`, else `data`.
pub fn data_dir(explicit: Option<&Path>) -> PathBuf {
    explicit
        .map(Path::to_path_buf)
        .or_else(|| std::env::var_os("GORDAN_DATA").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("data"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotReport {
    pub knot: String,
    pub vertices: usize,
    pub witness_count: usize,
    pub ledger: BoundLedger,
}

impl KnotReport {
    pub fn verdict(&self) -> Verdict {
        self.ledger.verdict()
    }

    pub fn tsv_row(&self) -> String {
        let upper = self
            .ledger
            .sb_upper
            .as_ref()
            .map_or_else(|| "-".to_string(), |u| u.value.to_string());
        format!(
            "{}\t{}\t{}\t{}\t{}",
            self.knot,
            self.ledger.sb_lower.value,
            upper,
            self.verdict(),
            self.ledger.citation_summary()
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub rows: Vec<KnotReport>,
}

impl Report {
    pub fn to_tsv(&self) -> String {
        let mut out = String::from(TSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.tsv_row());
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self) -> String {
        let with = |pred: &dyn Fn(&Verdict) -> bool| -> Vec<&str> {
            self.rows
                .iter()
                .filter(|r| pred(&r.verdict()))
                .map(|r| r.knot.as_str())
                .collect()
        };
        let four = with(&|v| *v == Verdict::Exact(4));
        let five = with(&|v| *v == Verdict::Exact(5));
        let open = with(&|v| !matches!(v, Verdict::Exact(_)));
        let mut out = format!(
            "{} realizations checked: every stored certificate verifies, a fresh certificate was found, \
             and a direction with n/2 - 1 maxima was found.\n",
            self.rows.len()
        );
        out.push_str(&format!("sb = 4 ({}): {}\n", four.len(), four.join(" ")));
        out.push_str(&format!("sb = 5 ({}): {}\n", five.len(), five.join(" ")));
        for r in self.rows.iter().filter(|r| open.contains(&r.knot.as_str())) {
            out.push_str(&format!("sb[{}] is {}\n", r.knot, r.verdict()));
        }
        out
    }
}

fn read(knot: &str, path: PathBuf) -> Result<String, ReproduceError> {
    fs::read_to_string(&path).map_err(|_| ReproduceError::MissingFixture {
        knot: knot.to_string(),
        path,
    })
}

fn failed(knot: &str, message: impl Into<String>) -> ReproduceError {
    ReproduceError::CheckFailed {
        knot: knot.to_string(),
        message: message.into(),
    }
}

/// Loads `<knot>.pd` and `<knot>.hom` if present and propagates the stored
/// generator labels to a complete surjective labeling.
pub fn load_labeling(dir: &Path, knot: &str) -> Result<Option<TranspositionLabeling>, ReproduceError> {
    let hom_path = dir.join(format!("{knot}.hom"));
    if !hom_path.exists() {
        return Ok(None);
    }
    let diagram = parse_pd(&read(knot, dir.join(format!("{knot}.pd")))?)
        .map_err(|e| failed(knot, e.to_string()))?;
    let specs = parse_labeling_lines(&read(knot, hom_path)?).map_err(|e| failed(knot, e.to_string()))?;
    let m = specs.iter().map(|(_, t)| t.points().1).max().unwrap_or(2);
    let partial = labeling_from_specs(&diagram, m, &specs).map_err(|e| failed(knot, e.to_string()))?;
    let pres = presentation(&diagram);
    match propagate(&pres, &partial) {
        Propagation::Complete(l) if l.is_surjective() => Ok(Some(l)),
        Propagation::Complete(_) => Err(failed(knot, format!("labeling is not surjective onto S_{m}"))),
        Propagation::Conflict { crossing } => {
            Err(failed(knot, format!("labels conflict at crossing {}", crossing + 1)))
        }
        Propagation::Incomplete { unreached, .. } => {
            Err(failed(knot, format!("{} arcs left unlabelled", unreached.len())))
        }
    }
}

pub fn check_knot(dir: &Path, knot: &str, kb: &KnowledgeTable) -> Result<KnotReport, ReproduceError> {
    let poly = parse_polygon(&read(knot, dir.join(format!("{knot}.poly")))?)
        .map_err(|e| failed(knot, e.to_string()))?
        .with_name(knot);
    let cert = parse_certificate(&read(knot, dir.join(format!("{knot}.cert")))?)
        .map_err(|e| failed(knot, e.to_string()))?;
    let e = sign_matrix(&edge_vectors(&poly)).map_err(|e| failed(knot, e.to_string()))?;
    let report = verify_certificate(&e, &cert).map_err(|e| failed(knot, e.to_string()))?;
    if !report.holds() {
        return Err(ReproduceError::VerificationFailure {
            knot: knot.to_string(),
            residual: report.residual,
        });
    }
    let fresh = find_certificate(&e).ok_or_else(|| failed(knot, "no certificate found"))?;
    if !verify_certificate(&e, fresh.entries()).is_ok_and(|v| v.holds()) {
        return Err(failed(knot, "found certificate does not verify"));
    }
    let witness = witness_search(&poly, WITNESS_BUDGET, WITNESS_SEED, Execution::Sequential)
        .map_err(|e| failed(knot, e.to_string()))?;
    let target = poly.len() / 2 - 1;
    if witness.count != target {
        return Err(failed(
            knot,
            format!("best direction has {} maxima, expected {target}", witness.count),
        ));
    }
    let homs: Vec<TranspositionLabeling> = load_labeling(dir, knot)?.into_iter().collect();
    let mut ledger = conclude(&poly, &homs, kb).map_err(|e| failed(knot, e.to_string()))?;
    ledger.record_witness(&witness);
    if let Some(expected) = kb.expected_verdicts.get(knot) {
        if ledger.verdict() != *expected {
            return Err(failed(
                knot,
                format!("verdict {} differs from the expected {expected}", ledger.verdict()),
            ));
        }
    }
    Ok(KnotReport {
        knot: knot.to_string(),
        vertices: poly.len(),
        witness_count: witness.count,
        ledger,
    })
}

/// Checks every knot of the knowledge table; the first failure in label
/// order is returned.
pub fn reproduce_fixtures(dir: &Path, exec: Execution) -> Result<Report, ReproduceError> {
    let kb = KnowledgeTable::default();
    let mut knots = kb.knots();
    knots.sort_by_key(|k| label_key(k));
    let results = exec.map(&knots, |k| check_knot(dir, k, &kb));
    let rows = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(Report { rows })
}
