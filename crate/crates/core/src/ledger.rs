//! Bound bookkeeping for the superbridge index of a knot type.
//!
//! A [`BoundLedger`] holds the best known lower and upper bounds on `sb[K]`
//! and a lower bound on the bridge index `b[K]`. Facts only ever tighten a
//! bound, and citations of facts that tie are merged, so replaying the same
//! facts in any order gives the same ledger. Direction witnesses bound the
//! superbridge number of one realization only and are kept apart from the
//! knot-type bounds.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::poly::PolygonalKnot;
use crate::superbridge::{jin_bound, upper_bound_from_certificate, DirectionWitness, SuperbridgeError};
use crate::wirtinger::{bridge_lower_bound, TranspositionLabeling};

/// Where a bound comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Citation {
    /// `sb` of the `(p, q)` torus knot is `min(2p, q)`.
    KuiperTorus,
    /// `b[K] < sb[K]`.
    KuiperBridge,
    /// `sb[K] >= 4` away from a short list of small knots.
    JeonJin,
    /// `sb[K] <= stick[K] / 2`.
    JinStick,
    /// `sb[K] <= 3 b[K] - 1`.
    Adams,
    /// A nonnegative null vector of the alternating edge matrix.
    Gordan,
    /// A surjection onto `S_m` sending meridians to transpositions.
    HomSn,
    /// A direction with a given number of maxima on one realization.
    Witness,
}

impl Citation {
    pub const ALL: [Citation; 8] = [
        Citation::KuiperTorus,
        Citation::KuiperBridge,
        Citation::JeonJin,
        Citation::JinStick,
        Citation::Adams,
        Citation::Gordan,
        Citation::HomSn,
        Citation::Witness,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Citation::KuiperTorus => "kuiper-torus",
            Citation::KuiperBridge => "kuiper-bridge",
            Citation::JeonJin => "jeon-jin",
            Citation::JinStick => "jin-stick",
            Citation::Adams => "adams",
            Citation::Gordan => "gordan",
            Citation::HomSn => "hom-sn",
            Citation::Witness => "witness",
        }
    }
}

impl fmt::Display for Citation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Citation {
    type Err = LedgerError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Citation::ALL
            .into_iter()
            .find(|c| c.tag() == s)
            .ok_or_else(|| LedgerError::UnknownCitation(s.to_string()))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LedgerError {
    #[error("inconsistent bounds for {knot}: sb >= {lower} but sb <= {upper}")]
    InconsistentLedger { knot: String, lower: usize, upper: usize },
    #[error("unknown citation tag `{0}`")]
    UnknownCitation(String),
    #[error(transparent)]
    Superbridge(#[from] SuperbridgeError),
}

/// A single bound statement.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Fact {
    SbLower { value: usize, cite: Citation },
    SbUpper { value: usize, cite: Citation },
    /// A bridge-index lower bound; `cite` is absent for `b >= 2` of a
    /// nontrivial knot.
    BridgeLower { value: usize, cite: Option<Citation> },
}

/// A bound value with the union of the citations attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cited {
    pub value: usize,
    pub citations: BTreeSet<Citation>,
}

impl Cited {
    fn new(value: usize, citations: impl IntoIterator<Item = Citation>) -> Self {
        Cited {
            value,
            citations: citations.into_iter().collect(),
        }
    }

    /// Keeps the larger (`prefer_larger`) or smaller value, merging on ties.
    fn join(slot: &mut Option<Cited>, new: Cited, prefer_larger: bool) {
        match slot {
            None => *slot = Some(new),
            Some(old) if old.value == new.value => old.citations.extend(new.citations),
            Some(old) if (new.value > old.value) == prefer_larger => *slot = Some(new),
            Some(_) => {}
        }
    }

    pub fn tags(&self) -> String {
        self.citations
            .iter()
            .map(|c| c.tag())
            .collect::<Vec<_>>()
            .join(",")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Verdict {
    Exact(usize),
    Between(usize, usize),
    AtLeast(usize),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Verdict::Exact(v) => write!(f, "{v}"),
            Verdict::Between(lo, hi) if hi == lo + 1 => write!(f, "{lo} or {hi}"),
            Verdict::Between(lo, hi) => write!(f, "{lo}..{hi}"),
            Verdict::AtLeast(lo) => write!(f, ">= {lo}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundLedger {
    pub knot: String,
    pub sb_lower: Cited,
    pub sb_upper: Option<Cited>,
    pub b_lower: Option<Cited>,
    /// Every fact applied, in application order.
    pub facts: Vec<Fact>,
    /// Maxima counts of direction witnesses on the given realization.
    pub realization_maxima: Vec<usize>,
}

impl BoundLedger {
    /// Starts from `sb >= 1`, true of every knot.
    pub fn new(knot: impl Into<String>) -> Self {
        BoundLedger {
            knot: knot.into(),
            sb_lower: Cited::new(1, []),
            sb_upper: None,
            b_lower: None,
            facts: Vec::new(),
            realization_maxima: Vec::new(),
        }
    }

    pub fn apply(&mut self, fact: Fact) -> Result<(), LedgerError> {
        self.facts.push(fact.clone());
        match fact {
            Fact::SbLower { value, cite } => self.raise_lower(Cited::new(value, [cite])),
            Fact::SbUpper { value, cite } => {
                Cited::join(&mut self.sb_upper, Cited::new(value, [cite]), false)
            }
            Fact::BridgeLower { value, cite } => {
                Cited::join(&mut self.b_lower, Cited::new(value, cite), true);
                let b = self.b_lower.as_ref().unwrap();
                let mut cites = b.citations.clone();
                cites.insert(Citation::KuiperBridge);
                let derived = Cited::new(b.value + 1, cites);
                self.raise_lower(derived);
            }
        }
        self.check()
    }

    fn raise_lower(&mut self, new: Cited) {
        let mut slot = Some(self.sb_lower.clone());
        Cited::join(&mut slot, new, true);
        self.sb_lower = slot.unwrap();
    }

    fn check(&self) -> Result<(), LedgerError> {
        match &self.sb_upper {
            Some(u) if u.value < self.sb_lower.value => Err(LedgerError::InconsistentLedger {
                knot: self.knot.clone(),
                lower: self.sb_lower.value,
                upper: u.value,
            }),
            _ => Ok(()),
        }
    }

    /// Records a witness count; it says nothing about `sb[K]`.
    pub fn record_witness(&mut self, w: &DirectionWitness) {
        self.realization_maxima.push(w.count);
    }

    pub fn verdict(&self) -> Verdict {
        let lo = self.sb_lower.value;
        match &self.sb_upper {
            Some(u) if u.value == lo => Verdict::Exact(lo),
            Some(u) => Verdict::Between(lo, u.value),
            None => Verdict::AtLeast(lo),
        }
    }

    /// `lower=...;upper=...` citation summary.
    pub fn citation_summary(&self) -> String {
        let upper = self.sb_upper.as_ref().map_or_else(String::new, Cited::tags);
        format!("lower={};upper={}", self.sb_lower.tags(), upper)
    }
}

/// Reference data about specific knot types.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnowledgeTable {
    /// Nontrivial knots not known to satisfy `sb >= 4`.
    pub jeon_jin_exceptions: BTreeSet<String>,
    /// Verdicts the bundled realizations are expected to establish.
    pub expected_verdicts: BTreeMap<String, Verdict>,
}

const JEON_JIN_EXCEPTIONS: [&str; 11] = [
    "3_1", "4_1", "5_2", "6_1", "6_2", "6_3", "7_2", "7_3", "7_4", "8_4", "8_9",
];

const SB_FOUR: [&str; 20] = [
    "8_1", "8_2", "8_3", "8_5", "8_6", "8_7", "8_8", "8_10", "8_11", "8_12", "8_13", "8_14",
    "8_15", "9_7", "9_16", "9_20", "9_26", "9_28", "9_32", "9_33",
];

const SB_FIVE: [&str; 10] = [
    "13n_226", "13n_328", "13n_342", "13n_343", "13n_350", "13n_512", "13n_973", "13n_2641",
    "13n_5018", "14n_1753",
];

impl Default for KnowledgeTable {
    fn default() -> Self {
        let mut expected = BTreeMap::new();
        for k in SB_FOUR {
            expected.insert(k.to_string(), Verdict::Exact(4));
        }
        for k in SB_FIVE {
            expected.insert(k.to_string(), Verdict::Exact(5));
        }
        expected.insert("8_4".into(), Verdict::Between(3, 4));
        expected.insert("8_9".into(), Verdict::Between(3, 4));
        expected.insert("10_76".into(), Verdict::Between(4, 5));
        KnowledgeTable {
            jeon_jin_exceptions: JEON_JIN_EXCEPTIONS.iter().map(|s| s.to_string()).collect(),
            expected_verdicts: expected,
        }
    }
}

impl KnowledgeTable {
    /// Labels of the bundled knots in natural order.
    pub fn knots(&self) -> Vec<String> {
        let mut v: Vec<String> = self.expected_verdicts.keys().cloned().collect();
        v.sort_by_key(|k| label_key(k));
        v
    }

    /// A label is treated as a nontrivial knot when it is `C_i` or `Cn_i` /
    /// `Ca_i` with `C >= 3`.
    pub fn is_nontrivial(&self, label: &str) -> bool {
        label_key(label).0 >= 3
    }
}

/// Sort key putting `8_2` before `8_10` and `13n_350` after `9_7`.
pub fn label_key(label: &str) -> (u32, String, u64, String) {
    let Some((head, index)) = label.split_once('_') else {
        return (0, String::new(), 0, label.to_string());
    };
    let digits: String = head.chars().take_while(char::is_ascii_digit).collect();
    let suffix = head[digits.len()..].to_string();
    match (digits.parse(), index.parse()) {
        (Ok(c), Ok(i)) => (c, suffix, i, String::new()),
        _ => (0, String::new(), 0, label.to_string()),
    }
}

/// Combines everything known about the knot of `p` into a ledger: the Gordan
/// upper bound (or the stick bound when no certificate exists), the small-knot
/// lower bounds, and the bridge bound of each surjective labeling.
pub fn conclude(
    p: &PolygonalKnot,
    homs: &[TranspositionLabeling],
    kb: &KnowledgeTable,
) -> Result<BoundLedger, LedgerError> {
    let label = p.name().unwrap_or("unknown").to_string();
    let mut ledger = BoundLedger::new(label.clone());
    ledger.apply(Fact::SbUpper {
        value: jin_bound(p.len()),
        cite: Citation::JinStick,
    })?;
    if p.len() % 2 == 0 {
        if let Some(b) = upper_bound_from_certificate(p)? {
            ledger.apply(Fact::SbUpper {
                value: b.value,
                cite: Citation::Gordan,
            })?;
        }
    }
    if kb.is_nontrivial(&label) {
        ledger.apply(Fact::BridgeLower { value: 2, cite: None })?;
        if !kb.jeon_jin_exceptions.contains(&label) {
            ledger.apply(Fact::SbLower {
                value: 4,
                cite: Citation::JeonJin,
            })?;
        }
    }
    for h in homs {
        if let Ok(b) = bridge_lower_bound(h, h.m) {
            ledger.apply(Fact::BridgeLower {
                value: b,
                cite: Some(Citation::HomSn),
            })?;
        }
    }
    Ok(ledger)
}
