//! Oriented knot diagrams in PD and signed Gauss notation.
//!
//! Edges are labelled `0..2N` internally along the orientation, so edge `e`
//! runs from the crossing it leaves to the crossing it enters, and the next
//! edge is `e + 1 (mod 2N)`. A PD tuple `X[a,b,c,d]` lists the incoming under
//! edge first and then the others counterclockwise, so `c` is the outgoing
//! under edge and `b`, `d` belong to the over strand. Text output is 1-based.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("malformed PD tuple `{0}`")]
    MalformedTuple(String),
    #[error("malformed Gauss token `{0}`")]
    MalformedGauss(String),
    #[error("invalid diagram: {0}")]
    Invalid(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Over,
    Under,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    /// Edge labels in PD order.
    pub pd: [u32; 4],
    pub over_in: u32,
    pub over_out: u32,
    /// `+1` when the over strand runs from `pd[3]` to `pd[1]`.
    pub sign: i8,
}

impl Crossing {
    pub fn under_in(&self) -> u32 {
        self.pd[0]
    }

    pub fn under_out(&self) -> u32 {
        self.pd[2]
    }

    /// Builds the PD tuple for a crossing from its four oriented edges.
    pub fn from_strands(under_in: u32, under_out: u32, over_in: u32, over_out: u32, sign: i8) -> Self {
        let pd = if sign > 0 {
            [under_in, over_out, under_out, over_in]
        } else {
            [under_in, over_in, under_out, over_out]
        };
        Crossing {
            pd,
            over_in,
            over_out,
            sign,
        }
    }
}

/// A maximal over-strand: leaves one crossing as the under strand, passes over
/// zero or more crossings and ends under another. Crossing indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arc {
    pub start: usize,
    pub overs: Vec<usize>,
    pub end: usize,
    pub edges: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotDiagram {
    crossings: Vec<Crossing>,
    /// `(crossing, role)` entered at the end of each edge.
    edge_end: Vec<(usize, Role)>,
    arcs: Vec<Arc>,
    edge_arc: Vec<usize>,
}

impl KnotDiagram {
    pub fn unknot() -> Self {
        KnotDiagram {
            crossings: Vec::new(),
            edge_end: Vec::new(),
            arcs: Vec::new(),
            edge_arc: Vec::new(),
        }
    }

    /// Validates oriented crossings and derives the arc structure.
    pub fn from_crossings(crossings: Vec<Crossing>) -> Result<Self, DiagramError> {
        let n = crossings.len();
        if n == 0 {
            return Ok(Self::unknot());
        }
        let m = 2 * n as u32;
        let next = |e: u32| (e + 1) % m;
        let mut count = vec![0u8; m as usize];
        let mut edge_end: Vec<Option<(usize, Role)>> = vec![None; m as usize];
        for (i, c) in crossings.iter().enumerate() {
            for &e in &c.pd {
                if e >= m {
                    return Err(DiagramError::Invalid(format!(
                        "edge label {} out of range at crossing {}",
                        e + 1,
                        i + 1
                    )));
                }
                count[e as usize] += 1;
            }
            if next(c.under_in()) != c.under_out() {
                return Err(DiagramError::Invalid(format!(
                    "under strand of crossing {} is not consecutive",
                    i + 1
                )));
            }
            if next(c.over_in) != c.over_out {
                return Err(DiagramError::Invalid(format!(
                    "over strand of crossing {} is not consecutive",
                    i + 1
                )));
            }
            for (e, role) in [(c.under_in(), Role::Under), (c.over_in, Role::Over)] {
                if edge_end[e as usize].replace((i, role)).is_some() {
                    return Err(DiagramError::Invalid(format!(
                        "edge {} enters two crossings",
                        e + 1
                    )));
                }
            }
        }
        if let Some(e) = count.iter().position(|&k| k != 2) {
            return Err(DiagramError::Invalid(format!(
                "edge {} appears {} times",
                e + 1,
                count[e]
            )));
        }
        let edge_end: Vec<(usize, Role)> = edge_end.into_iter().map(Option::unwrap).collect();

        let mut raw_arcs = Vec::with_capacity(n);
        for (i, c) in crossings.iter().enumerate() {
            let mut e = c.under_out();
            let mut arc = Arc {
                start: i,
                overs: Vec::new(),
                end: i,
                edges: Vec::new(),
            };
            loop {
                arc.edges.push(e);
                let (k, role) = edge_end[e as usize];
                match role {
                    Role::Under => {
                        arc.end = k;
                        break;
                    }
                    Role::Over => {
                        arc.overs.push(k);
                        e = next(e);
                    }
                }
            }
            raw_arcs.push(arc);
        }
        // number arcs by first appearance along the edges
        let mut raw_of_edge = vec![usize::MAX; m as usize];
        for (r, arc) in raw_arcs.iter().enumerate() {
            for &e in &arc.edges {
                raw_of_edge[e as usize] = r;
            }
        }
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        for &r in &raw_of_edge {
            if !seen[r] {
                seen[r] = true;
                order.push(r);
            }
        }
        let mut id_of_raw = vec![0; n];
        for (id, &r) in order.iter().enumerate() {
            id_of_raw[r] = id;
        }
        let edge_arc = raw_of_edge.iter().map(|&r| id_of_raw[r]).collect();
        let mut slots: Vec<Option<Arc>> = raw_arcs.into_iter().map(Some).collect();
        let arcs = order.iter().map(|&r| slots[r].take().unwrap()).collect();
        Ok(KnotDiagram {
            crossings,
            edge_end,
            arcs,
            edge_arc,
        })
    }

    /// Builds from PD tuples with 0-based labels, inferring the over-strand
    /// direction from consecutive labels.
    pub fn from_pd(tuples: &[[u32; 4]]) -> Result<Self, DiagramError> {
        let m = 2 * tuples.len() as u32;
        let crossings = tuples
            .iter()
            .map(|&pd| {
                let [_, b, _, d] = pd;
                let (over_in, over_out) = if (b + 1) % m == d { (b, d) } else { (d, b) };
                Crossing {
                    pd,
                    over_in,
                    over_out,
                    sign: if over_in == d { 1 } else { -1 },
                }
            })
            .collect();
        Self::from_crossings(crossings)
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn num_edges(&self) -> usize {
        2 * self.crossings.len()
    }

    /// Arcs in first-appearance order. Empty for the 0-crossing diagram, which
    /// nonetheless has a single (closed) arc.
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn num_arcs(&self) -> usize {
        self.arcs.len().max(1)
    }

    pub fn arc_of_edge(&self, e: u32) -> usize {
        self.edge_arc[e as usize]
    }

    pub fn over_arc(&self, crossing: usize) -> usize {
        self.arc_of_edge(self.crossings[crossing].over_in)
    }

    pub fn incoming_arc(&self, crossing: usize) -> usize {
        self.arc_of_edge(self.crossings[crossing].under_in())
    }

    pub fn outgoing_arc(&self, crossing: usize) -> usize {
        self.arc_of_edge(self.crossings[crossing].under_out())
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    /// Crossing events in traversal order, starting at the end of edge 0.
    pub fn events(&self) -> impl Iterator<Item = (usize, Role)> + '_ {
        self.edge_end.iter().copied()
    }

    /// Signed Gauss code: one token per event, `O3+` meaning "over crossing 3,
    /// which is positive".
    pub fn gauss_code(&self) -> String {
        self.events()
            .map(|(k, role)| {
                let r = if role == Role::Over { 'O' } else { 'U' };
                let s = if self.crossings[k].sign > 0 { '+' } else { '-' };
                format!("{r}{}{s}", k + 1)
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn pd_code(&self) -> String {
        self.crossings
            .iter()
            .map(|c| {
                let [a, b, cc, d] = c.pd.map(|x| x + 1);
                format!("X[{a},{b},{cc},{d}]")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for KnotDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pd_code())
    }
}

/// Parses PD notation: `X[a,b,c,d]` tuples separated by whitespace or commas,
/// `#` comment lines. Labels may start at 0 or 1.
pub fn parse_pd(text: &str) -> Result<KnotDiagram, DiagramError> {
    let body: String = text
        .lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .collect::<Vec<_>>()
        .join(" ");
    let mut body = body.trim();
    if let Some(inner) = body.strip_prefix("PD[").and_then(|b| b.strip_suffix(']')) {
        body = inner.trim();
    }
    let mut tuples = Vec::new();
    let mut rest = body;
    loop {
        rest = rest.trim_start_matches(|c: char| c.is_whitespace() || c == ',');
        if rest.is_empty() {
            break;
        }
        let Some(open) = rest.strip_prefix("X[") else {
            let tok = rest.split_whitespace().next().unwrap_or(rest);
            return Err(DiagramError::MalformedTuple(tok.to_string()));
        };
        let close = open
            .find(']')
            .ok_or_else(|| DiagramError::MalformedTuple(rest.to_string()))?;
        let inner = &open[..close];
        let entries: Result<Vec<u32>, _> = inner.split(',').map(|s| s.trim().parse::<u32>()).collect();
        match entries {
            Ok(v) if v.len() == 4 => tuples.push([v[0], v[1], v[2], v[3]]),
            _ => return Err(DiagramError::MalformedTuple(format!("X[{inner}]"))),
        }
        rest = &open[close + 1..];
    }
    if tuples.is_empty() {
        return Ok(KnotDiagram::unknot());
    }
    let min = tuples.iter().flatten().copied().min().unwrap();
    if min > 1 {
        return Err(DiagramError::Invalid(format!("edge labels start at {min}")));
    }
    for t in &mut tuples {
        for x in t.iter_mut() {
            *x -= min;
        }
    }
    KnotDiagram::from_pd(&tuples)
}

/// Parses the signed Gauss code emitted by [`KnotDiagram::gauss_code`].
pub fn parse_gauss(text: &str) -> Result<KnotDiagram, DiagramError> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.is_empty() {
        return Ok(KnotDiagram::unknot());
    }
    if tokens.len() % 2 != 0 {
        return Err(DiagramError::Invalid("odd number of crossing events".into()));
    }
    let n = tokens.len() / 2;
    let m = tokens.len() as u32;
    // (over event, under event, sign) per crossing
    let mut info: Vec<(Option<u32>, Option<u32>, Option<i8>)> = vec![(None, None, None); n];
    for (j, tok) in tokens.iter().enumerate() {
        let bad = || DiagramError::MalformedGauss(tok.to_string());
        let mut chars = tok.chars();
        let role = match chars.next() {
            Some('O') => Role::Over,
            Some('U') => Role::Under,
            _ => return Err(bad()),
        };
        let rest = chars.as_str();
        let (num, sign) = match rest.strip_suffix('+') {
            Some(num) => (num, 1i8),
            None => (rest.strip_suffix('-').ok_or_else(bad)?, -1i8),
        };
        let k: usize = num.parse().map_err(|_| bad())?;
        if k == 0 || k > n {
            return Err(DiagramError::Invalid(format!("crossing {k} out of range")));
        }
        let slot = &mut info[k - 1];
        let target = if role == Role::Over { &mut slot.0 } else { &mut slot.1 };
        if target.replace(j as u32).is_some() {
            return Err(DiagramError::Invalid(format!("crossing {k} repeats a role")));
        }
        if slot.2.replace(sign).is_some_and(|s| s != sign) {
            return Err(DiagramError::Invalid(format!("crossing {k} has inconsistent signs")));
        }
    }
    let crossings = info
        .into_iter()
        .enumerate()
        .map(|(i, (o, u, s))| match (o, u, s) {
            (Some(o), Some(u), Some(s)) => Ok(Crossing::from_strands(u, (u + 1) % m, o, (o + 1) % m, s)),
            _ => Err(DiagramError::Invalid(format!("crossing {} is not visited twice", i + 1))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    KnotDiagram::from_crossings(crossings)
}
