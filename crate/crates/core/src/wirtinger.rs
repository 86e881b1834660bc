//! Wirtinger presentations and transposition labelings.
//!
//! Every arc of a diagram is a meridian generator and every crossing gives a
//! conjugation relation. When meridians go to transpositions of `{1..m}`,
//! conjugation by an involution does not depend on the crossing sign, so each
//! relation reads `label(out) = label(over) · label(in) · label(over)`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::diagram::KnotDiagram;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WirtingerError {
    #[error("malformed strand spec `{0}`")]
    MalformedStrand(String),
    #[error("strand spec {0}: first and last entries must be negative, the rest positive")]
    SignPattern(String),
    #[error("strand {0} is not an arc of the diagram")]
    UnresolvableStrand(String),
    #[error("malformed transposition `{0}`")]
    MalformedTransposition(String),
    #[error("malformed labeling line `{0}`")]
    MalformedLine(String),
    #[error("labeling is not surjective onto S_{0}")]
    NotSurjective(u8),
}

/// A transposition `(a b)` with `1 <= a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transposition(u8, u8);

impl Transposition {
    pub fn new(a: u8, b: u8) -> Option<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less if a >= 1 => Some(Transposition(a, b)),
            std::cmp::Ordering::Greater if b >= 1 => Some(Transposition(b, a)),
            _ => None,
        }
    }

    pub fn points(self) -> (u8, u8) {
        (self.0, self.1)
    }

    pub fn apply(self, x: u8) -> u8 {
        if x == self.0 {
            self.1
        } else if x == self.1 {
            self.0
        } else {
            x
        }
    }

    /// `self · t · self`.
    pub fn conjugate(self, t: Transposition) -> Transposition {
        Transposition::new(self.apply(t.0), self.apply(t.1)).unwrap()
    }

    /// All transpositions of `{1..m}` in lexicographic order.
    pub fn all(m: u8) -> Vec<Transposition> {
        (1..=m)
            .flat_map(|a| (a + 1..=m).map(move |b| Transposition(a, b)))
            .collect()
    }
}

impl fmt::Display for Transposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {})", self.0, self.1)
    }
}

impl FromStr for Transposition {
    type Err = WirtingerError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || WirtingerError::MalformedTransposition(s.to_string());
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let nums: Vec<u8> = inner
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        match nums[..] {
            [a, b] => Transposition::new(a, b).ok_or_else(bad),
            _ => Err(bad()),
        }
    }
}

/// One conjugation relation `outgoing = over · incoming · over⁻¹`
/// (inverted for negative crossings). Arc indices are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub over: usize,
    pub incoming: usize,
    pub outgoing: usize,
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WirtingerPresentation {
    pub generators: usize,
    pub relations: Vec<Relation>,
}

impl WirtingerPresentation {
    /// Renames generators by `perm[old] = new`.
    pub fn relabeled(&self, perm: &[usize]) -> Self {
        WirtingerPresentation {
            generators: self.generators,
            relations: self
                .relations
                .iter()
                .map(|r| Relation {
                    over: perm[r.over],
                    incoming: perm[r.incoming],
                    outgoing: perm[r.outgoing],
                    sign: r.sign,
                })
                .collect(),
        }
    }
}

/// One generator per arc and one relation per crossing, in crossing order.
/// The 0-crossing diagram gives one generator and no relations.
pub fn presentation(d: &KnotDiagram) -> WirtingerPresentation {
    let relations = (0..d.num_crossings())
        .map(|c| Relation {
            over: d.over_arc(c),
            incoming: d.incoming_arc(c),
            outgoing: d.outgoing_arc(c),
            sign: d.crossings()[c].sign,
        })
        .collect();
    WirtingerPresentation {
        generators: d.num_arcs(),
        relations,
    }
}

/// An arc written as the crossings where it starts and ends under and the
/// crossings it passes over, e.g. `(-6, 7, 11, -9)`. Crossings are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StrandSpec {
    pub begins: usize,
    pub overs: Vec<usize>,
    pub ends: usize,
}

impl StrandSpec {
    pub fn of_arc(d: &KnotDiagram, arc: usize) -> Self {
        let a = &d.arcs()[arc];
        StrandSpec {
            begins: a.start + 1,
            overs: a.overs.iter().map(|c| c + 1).collect(),
            ends: a.end + 1,
        }
    }

    /// Index of the arc this spec names.
    pub fn resolve(&self, d: &KnotDiagram) -> Result<usize, WirtingerError> {
        (0..d.arcs().len())
            .find(|&a| StrandSpec::of_arc(d, a) == *self)
            .ok_or_else(|| WirtingerError::UnresolvableStrand(self.to_string()))
    }
}

impl fmt::Display for StrandSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = vec![format!("-{}", self.begins)];
        parts.extend(self.overs.iter().map(ToString::to_string));
        parts.push(format!("-{}", self.ends));
        write!(f, "({})", parts.join(", "))
    }
}

impl FromStr for StrandSpec {
    type Err = WirtingerError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || WirtingerError::MalformedStrand(s.to_string());
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let nums: Vec<i64> = inner
            .split(',')
            .map(|t| t.trim().parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        if nums.len() < 2 || nums.contains(&0) {
            return Err(bad());
        }
        let (first, last) = (nums[0], nums[nums.len() - 1]);
        let middle = &nums[1..nums.len() - 1];
        if first > 0 || last > 0 || middle.iter().any(|&x| x < 0) {
            return Err(WirtingerError::SignPattern(s.trim().to_string()));
        }
        Ok(StrandSpec {
            begins: (-first) as usize,
            overs: middle.iter().map(|&x| x as usize).collect(),
            ends: (-last) as usize,
        })
    }
}

pub fn parse_strand_spec(text: &str) -> Result<StrandSpec, WirtingerError> {
    text.parse()
}

/// A (possibly partial) assignment of transpositions of `{1..m}` to arcs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TranspositionLabeling {
    pub m: u8,
    pub labels: Vec<Option<Transposition>>,
}

impl TranspositionLabeling {
    pub fn empty(m: u8, arcs: usize) -> Self {
        TranspositionLabeling {
            m,
            labels: vec![None; arcs],
        }
    }

    pub fn complete(m: u8, labels: Vec<Transposition>) -> Self {
        TranspositionLabeling {
            m,
            labels: labels.into_iter().map(Some).collect(),
        }
    }

    pub fn set(&mut self, arc: usize, t: Transposition) {
        self.labels[arc] = Some(t);
    }

    pub fn get(&self, arc: usize) -> Option<Transposition> {
        self.labels[arc]
    }

    pub fn is_complete(&self) -> bool {
        self.labels.iter().all(Option::is_some)
    }

    /// Labels of a complete labeling, `None` otherwise.
    pub fn values(&self) -> Option<Vec<Transposition>> {
        self.labels.iter().copied().collect()
    }

    /// First crossing (0-based) whose relation fails among fully labelled ones.
    pub fn violated_relation(&self, p: &WirtingerPresentation) -> Option<usize> {
        p.relations.iter().position(|r| {
            match (self.labels[r.over], self.labels[r.incoming], self.labels[r.outgoing]) {
                (Some(o), Some(a), Some(b)) => o.conjugate(a) != b,
                _ => false,
            }
        })
    }

    /// The assigned transpositions generate `S_m` iff, as edges on `{1..m}`,
    /// they form a connected spanning graph.
    pub fn is_surjective(&self) -> bool {
        support_connected(self.m, self.labels.iter().flatten().copied())
    }

    /// The lexicographically least labeling in the orbit under relabeling of
    /// `{1..m}`, comparing labels arc by arc.
    ///
    /// Points are given images in order of first appearance. A label with one
    /// fresh point sends it to the smallest unused image; a label with two
    /// fresh points can order them either way, and only those ties branch.
    pub fn canonical(&self) -> Self {
        fn walk(
            labels: &[Option<Transposition>],
            map: &mut Vec<u8>,
            next: u8,
            best: &mut Option<Vec<u8>>,
        ) {
            let Some(pos) = labels.iter().position(|t| t.is_some_and(|t| map[t.0 as usize] == 0 || map[t.1 as usize] == 0)) else {
                if best.as_ref().is_none_or(|b| image(labels, map) < image(labels, b)) {
                    *best = Some(map.clone());
                }
                return;
            };
            let t = labels[pos].unwrap();
            let (a, b) = (t.0 as usize, t.1 as usize);
            match (map[a], map[b]) {
                (0, 0) => {
                    for (x, y) in [(a, b), (b, a)] {
                        map[x] = next;
                        map[y] = next + 1;
                        walk(labels, map, next + 2, best);
                        map[x] = 0;
                        map[y] = 0;
                    }
                }
                (0, _) | (_, 0) => {
                    let fresh = if map[a] == 0 { a } else { b };
                    map[fresh] = next;
                    walk(labels, map, next + 1, best);
                    map[fresh] = 0;
                }
                _ => unreachable!(),
            }
        }
        fn image(labels: &[Option<Transposition>], map: &[u8]) -> Vec<Option<Transposition>> {
            labels
                .iter()
                .map(|t| t.map(|t| Transposition::new(map[t.0 as usize], map[t.1 as usize]).unwrap()))
                .collect()
        }
        let mut best = None;
        walk(&self.labels, &mut vec![0u8; self.m as usize + 1], 1, &mut best);
        let mut map = best.unwrap();
        let mut next = map.iter().copied().max().unwrap_or(0) + 1;
        for x in map.iter_mut().skip(1) {
            if *x == 0 {
                *x = next;
                next += 1;
            }
        }
        self.relabeled(|x| map[x as usize])
    }

    pub fn relabeled(&self, f: impl Fn(u8) -> u8) -> Self {
        TranspositionLabeling {
            m: self.m,
            labels: self
                .labels
                .iter()
                .map(|t| t.map(|t| Transposition::new(f(t.0), f(t.1)).unwrap()))
                .collect(),
        }
    }

    /// One line per arc: `<strand-spec> -> (i j)`.
    pub fn render(&self, d: &KnotDiagram) -> String {
        let mut out = String::new();
        for (arc, t) in self.labels.iter().enumerate() {
            if arc >= d.arcs().len() {
                break;
            }
            let label = t.map_or_else(|| "?".to_string(), |t| t.to_string());
            out.push_str(&format!("{} -> {}\n", StrandSpec::of_arc(d, arc), label));
        }
        out
    }
}

pub fn support_connected(m: u8, edges: impl IntoIterator<Item = Transposition>) -> bool {
    let mut parent: Vec<usize> = (0..=m as usize).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut components = m as usize;
    for t in edges {
        let (a, b) = (find(&mut parent, t.0 as usize), find(&mut parent, t.1 as usize));
        if a != b {
            parent[a] = b;
            components -= 1;
        }
    }
    components == 1
}

/// Parses lines of the form `(-7, -5) -> (1 2)`, `#` comments allowed.
pub fn parse_labeling_lines(text: &str) -> Result<Vec<(StrandSpec, Transposition)>, WirtingerError> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (spec, t) = l
                .split_once("->")
                .ok_or_else(|| WirtingerError::MalformedLine(l.to_string()))?;
            Ok((spec.parse()?, t.parse()?))
        })
        .collect()
}

/// Resolves strand specs against `d` and builds the partial labeling.
pub fn labeling_from_specs(
    d: &KnotDiagram,
    m: u8,
    specs: &[(StrandSpec, Transposition)],
) -> Result<TranspositionLabeling, WirtingerError> {
    let mut l = TranspositionLabeling::empty(m, d.num_arcs());
    for (spec, t) in specs {
        if t.1 > m {
            return Err(WirtingerError::MalformedTransposition(t.to_string()));
        }
        l.set(spec.resolve(d)?, *t);
    }
    Ok(l)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Propagation {
    Complete(TranspositionLabeling),
    /// The relation at this crossing (0-based) cannot be satisfied.
    Conflict { crossing: usize },
    Incomplete {
        labeling: TranspositionLabeling,
        unreached: Vec<usize>,
    },
}

/// Fills in labels forced by relations with two known entries; in-place
/// version used by the search. Returns the first conflicting crossing.
pub(crate) fn propagate_in_place(p: &WirtingerPresentation, labels: &mut [Option<Transposition>]) -> Result<(), usize> {
    loop {
        let mut changed = false;
        for (c, r) in p.relations.iter().enumerate() {
            let Some(o) = labels[r.over] else { continue };
            match (labels[r.incoming], labels[r.outgoing]) {
                (Some(a), Some(b)) => {
                    if o.conjugate(a) != b {
                        return Err(c);
                    }
                }
                (Some(a), None) => {
                    labels[r.outgoing] = Some(o.conjugate(a));
                    changed = true;
                }
                (None, Some(b)) => {
                    labels[r.incoming] = Some(o.conjugate(b));
                    changed = true;
                }
                (None, None) => {}
            }
        }
        if !changed {
            return Ok(());
        }
    }
}

pub fn propagate(p: &WirtingerPresentation, partial: &TranspositionLabeling) -> Propagation {
    let mut labeling = partial.clone();
    if let Err(crossing) = propagate_in_place(p, &mut labeling.labels) {
        return Propagation::Conflict { crossing };
    }
    let unreached: Vec<usize> = (0..labeling.labels.len())
        .filter(|&a| labeling.labels[a].is_none())
        .collect();
    if unreached.is_empty() {
        Propagation::Complete(labeling)
    } else {
        Propagation::Incomplete { labeling, unreached }
    }
}

/// A surjection onto `S_m` sending meridians to transpositions gives
/// `b[K] >= m - 1`.
pub fn bridge_lower_bound(l: &TranspositionLabeling, m: u8) -> Result<usize, WirtingerError> {
    if l.m != m || !l.is_complete() || !l.is_surjective() {
        return Err(WirtingerError::NotSurjective(m));
    }
    Ok(m as usize - 1)
}
