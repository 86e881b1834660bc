//! Polygonal knots with integer vertices.
//!
//! A polygon file is plain text with one integer triple per line, `#` comment
//! lines and an optional `name:` header:
//!
//! ```text
//! # 10-stick realization
//! name: 8_5
//! 0 0 0
//! 1000 0 0
//! ...
//! ```

use std::fmt;

use thiserror::Error;

/// Integer 3-vector.
pub type Vec3 = [i64; 3];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("line {line}: `{token}` is not an integer")]
    BadToken { line: usize, token: String },
    #[error("line {line}: expected 3 coordinates, found {found}")]
    WrongArity { line: usize, found: usize },
    #[error("polygon needs at least 3 vertices, found {0}")]
    TooFewVertices(usize),
    #[error("line {line}: zero edge between vertices {first} and {second}")]
    ZeroEdge {
        line: usize,
        first: usize,
        second: usize,
    },
    #[error("sign matrix needs an even number of edges, found {0}")]
    OddEdgeCount(usize),
    #[error("first three vertices are collinear")]
    CollinearFrame,
    #[error("polygon can only be posed by a general rotation, which is not exact")]
    RotationRequired,
}

pub fn dot(a: &Vec3, b: &Vec3) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

pub fn sub(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// A closed polygon, vertices in traversal order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolygonalKnot {
    name: Option<String>,
    vertices: Vec<Vec3>,
}

impl PolygonalKnot {
    pub fn new(name: Option<String>, vertices: Vec<Vec3>) -> Result<Self, PolyError> {
        let lines: Vec<usize> = (1..=vertices.len()).collect();
        Self::validated(name, vertices, &lines)
    }

    fn validated(
        name: Option<String>,
        vertices: Vec<Vec3>,
        lines: &[usize],
    ) -> Result<Self, PolyError> {
        let n = vertices.len();
        if n < 3 {
            return Err(PolyError::TooFewVertices(n));
        }
        for i in 0..n {
            let j = (i + 1) % n;
            if vertices[i] == vertices[j] {
                return Err(PolyError::ZeroEdge {
                    line: lines[j],
                    first: i + 1,
                    second: j + 1,
                });
            }
        }
        Ok(PolygonalKnot { name, vertices })
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Applies `f` to every vertex. The result is revalidated.
    pub fn map_vertices(&self, f: impl Fn(&Vec3) -> Vec3) -> Result<Self, PolyError> {
        Self::new(self.name.clone(), self.vertices.iter().map(f).collect())
    }

    /// Serializes in the polygon file format accepted by [`parse_polygon`].
    pub fn to_poly_string(&self) -> String {
        let mut out = String::new();
        if let Some(name) = &self.name {
            out.push_str("name: ");
            out.push_str(name);
            out.push('\n');
        }
        for v in &self.vertices {
            out.push_str(&format!("{} {} {}\n", v[0], v[1], v[2]));
        }
        out
    }
}

pub fn parse_polygon(text: &str) -> Result<PolygonalKnot, PolyError> {
    let mut name = None;
    let mut vertices = Vec::new();
    let mut lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("name:") {
            name = Some(rest.trim().to_string());
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let mut v = [0i64; 3];
        for (k, tok) in tokens.iter().enumerate() {
            let value: i64 = tok.parse().map_err(|_| PolyError::BadToken {
                line: line_no,
                token: tok.to_string(),
            })?;
            if k < 3 {
                v[k] = value;
            }
        }
        if tokens.len() != 3 {
            return Err(PolyError::WrongArity {
                line: line_no,
                found: tokens.len(),
            });
        }
        vertices.push(v);
        lines.push(line_no);
    }
    PolygonalKnot::validated(name, vertices, &lines)
}

/// Cyclic edge vectors `e_i = v_{i+1} - v_i`, the last one closing the loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeVectors {
    edges: Vec<Vec3>,
}

impl EdgeVectors {
    pub fn as_slice(&self) -> &[Vec3] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Vec3> {
        self.edges.iter()
    }

    /// Builds edge vectors directly. Fails unless the list closes up and has no
    /// zero edge.
    pub fn from_edges(edges: Vec<Vec3>) -> Result<Self, PolyError> {
        if edges.len() < 3 {
            return Err(PolyError::TooFewVertices(edges.len()));
        }
        let mut sum = [0i64; 3];
        for (i, e) in edges.iter().enumerate() {
            if *e == [0, 0, 0] {
                return Err(PolyError::ZeroEdge {
                    line: i + 1,
                    first: i + 1,
                    second: (i + 1) % edges.len() + 1,
                });
            }
            for k in 0..3 {
                sum[k] += e[k];
            }
        }
        assert_eq!(sum, [0, 0, 0], "edge vectors do not close up");
        Ok(EdgeVectors { edges })
    }
}

pub fn edge_vectors(p: &PolygonalKnot) -> EdgeVectors {
    let v = p.vertices();
    let n = v.len();
    let edges = (0..n).map(|i| sub(&v[(i + 1) % n], &v[i])).collect();
    EdgeVectors { edges }
}

/// A 3×n integer matrix, stored by columns.
///
/// Built from a polygon by [`sign_matrix`] (columns `(-1)^(i+1) e_i`, n even), or
/// from arbitrary columns for general feasibility queries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignMatrix {
    columns: Vec<Vec3>,
}

impl SignMatrix {
    pub fn from_columns(columns: Vec<Vec3>) -> Self {
        SignMatrix { columns }
    }

    pub fn columns(&self) -> &[Vec3] {
        &self.columns
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> i64 {
        self.columns[col][row]
    }

    pub fn scaled(&self, k: i64) -> Self {
        SignMatrix {
            columns: self
                .columns
                .iter()
                .map(|c| [c[0] * k, c[1] * k, c[2] * k])
                .collect(),
        }
    }
}

impl fmt::Display for SignMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in 0..3 {
            let cells: Vec<String> = self
                .columns
                .iter()
                .map(|c| format!("{:>6}", c[row]))
                .collect();
            writeln!(f, "[{} ]", cells.join(""))?;
        }
        Ok(())
    }
}

pub fn sign_matrix(edges: &EdgeVectors) -> Result<SignMatrix, PolyError> {
    let n = edges.len();
    if n % 2 != 0 {
        return Err(PolyError::OddEdgeCount(n));
    }
    let columns = edges
        .iter()
        .enumerate()
        .map(|(i, e)| if i % 2 == 0 { *e } else { [-e[0], -e[1], -e[2]] })
        .collect();
    Ok(SignMatrix { columns })
}

/// Whether the polygon is in the standard pose: first vertex at the origin,
/// second on the positive x-axis, third in the xy-plane with positive y.
pub fn is_posed(p: &PolygonalKnot) -> bool {
    let v = p.vertices();
    v[0] == [0, 0, 0] && v[1][0] > 0 && v[1][1] == 0 && v[1][2] == 0 && v[2][1] > 0 && v[2][2] == 0
}

/// The 24 orientation-preserving signed permutations of the axes, identity first.
pub fn proper_signed_permutations() -> Vec<[[i64; 3]; 3]> {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out = Vec::with_capacity(24);
    for perm in PERMS {
        for signs in 0..8u8 {
            let mut m = [[0i64; 3]; 3];
            for (row, &col) in perm.iter().enumerate() {
                m[row][col] = if signs >> row & 1 == 1 { -1 } else { 1 };
            }
            if det3(&m) == 1 {
                out.push(m);
            }
        }
    }
    out
}

fn det3(m: &[[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

pub fn apply(m: &[[i64; 3]; 3], v: &Vec3) -> Vec3 {
    [
        m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
        m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
        m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
    ]
}

/// Moves the polygon into the standard pose using only exact rigid motions:
/// a translation followed by one of the 24 proper signed axis permutations.
///
/// Polygons that would need a general rotation are rejected with
/// [`PolyError::RotationRequired`] rather than rounded.
pub fn normalize_pose(p: &PolygonalKnot) -> Result<PolygonalKnot, PolyError> {
    let v = p.vertices();
    let a = sub(&v[1], &v[0]);
    let b = sub(&v[2], &v[0]);
    if cross(&a, &b) == [0, 0, 0] {
        return Err(PolyError::CollinearFrame);
    }
    let origin = v[0];
    let translated = p.map_vertices(|x| sub(x, &origin))?;
    for m in proper_signed_permutations() {
        let candidate = translated.map_vertices(|x| apply(&m, x))?;
        if is_posed(&candidate) {
            return Ok(candidate);
        }
    }
    Err(PolyError::RotationRequired)
}
