//! Exact orthographic projection of a polygon to a knot diagram.
//!
//! The polygon is viewed from the tip of a direction `d`: points with larger
//! `x·d` are closer to the viewer and pass over. Planar coordinates use the
//! right-handed frame `a = ŷ × d`, `b = d × a` (the identity frame for
//! `d = (0,0,1)`). All predicates are exact; if any degeneracy shows up the
//! direction is advanced through a fixed schedule.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::diagram::{Crossing, DiagramError, KnotDiagram};
use crate::poly::{cross, sub, PolygonalKnot, Vec3};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProjectionError {
    #[error("polygon is planar")]
    PlanarInput,
    #[error("no generic projection after {0} directions")]
    NoGenericProjection(usize),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

pub const DEFAULT_DIRECTION: Vec3 = [0, 0, 1];
const SCHEDULE_LEN: i64 = 64;

/// Degeneracy predicates checked for every candidate direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Degeneracy {
    EdgeAlongDirection,
    FoldedAdjacentEdges,
    VertexOnEdge,
    OverlappingEdges,
    TriplePoint,
    SelfIntersection,
}

impl Degeneracy {
    pub const ALL: [Degeneracy; 6] = [
        Degeneracy::EdgeAlongDirection,
        Degeneracy::FoldedAdjacentEdges,
        Degeneracy::VertexOnEdge,
        Degeneracy::OverlappingEdges,
        Degeneracy::TriplePoint,
        Degeneracy::SelfIntersection,
    ];
}

/// The accepted direction and the outcome of each genericity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionPose {
    pub direction: Vec3,
    pub checks: Vec<(Degeneracy, bool)>,
    /// Directions tried before this one, with the first degeneracy each hit.
    pub rejected: Vec<(Vec3, Degeneracy)>,
}

/// Direction number `k` of the perturbation schedule starting at `base`.
pub fn schedule(base: Vec3, k: i64) -> Vec3 {
    [base[0] + k, base[1] + 3 * k + k * k, base[2] + 7 * k * k]
}

fn wide(v: &Vec3) -> [i128; 3] {
    v.map(|x| x as i128)
}

fn dot_w(a: &[i128; 3], b: &[i128; 3]) -> i128 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross_w(a: &[i128; 3], b: &[i128; 3]) -> [i128; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Planar frame `(a, b)` for viewing direction `d`.
pub fn frame(d: &Vec3) -> ([i128; 3], [i128; 3]) {
    let dw = wide(d);
    let mut a = cross_w(&[0, 1, 0], &dw);
    if a == [0, 0, 0] {
        a = cross_w(&[1, 0, 0], &dw);
    }
    let b = cross_w(&dw, &a);
    (a, b)
}

fn cross2(u: &[i128; 2], v: &[i128; 2]) -> i128 {
    u[0] * v[1] - u[1] * v[0]
}

fn sub2(u: &[i128; 2], v: &[i128; 2]) -> [i128; 2] {
    [u[0] - v[0], u[1] - v[1]]
}

pub fn is_planar(p: &PolygonalKnot) -> bool {
    let v = p.vertices();
    let Some(normal) = (2..v.len())
        .map(|k| cross(&sub(&v[1], &v[0]), &sub(&v[k], &v[0])))
        .find(|n| *n != [0, 0, 0])
    else {
        return true;
    };
    v.iter()
        .all(|x| crate::poly::dot(&sub(x, &v[0]), &normal) == 0)
}

struct RawCrossing {
    /// (segment, parameter) of both passes; the first is the over pass.
    over: (usize, BigRational),
    under: (usize, BigRational),
    point: (BigRational, BigRational),
    sign: i8,
}

fn try_direction(p: &PolygonalKnot, d: &Vec3) -> Result<Vec<RawCrossing>, Degeneracy> {
    let (a, b) = frame(d);
    let dw = wide(d);
    let verts = p.vertices();
    let n = verts.len();
    let pts: Vec<[i128; 2]> = verts.iter().map(|v| [dot_w(&wide(v), &a), dot_w(&wide(v), &b)]).collect();
    let depth: Vec<i128> = verts.iter().map(|v| dot_w(&wide(v), &dw)).collect();
    let seg = |i: usize| (pts[i], pts[(i + 1) % n]);
    let dir = |i: usize| sub2(&pts[(i + 1) % n], &pts[i]);

    for i in 0..n {
        if dir(i) == [0, 0] {
            return Err(Degeneracy::EdgeAlongDirection);
        }
    }
    for i in 0..n {
        let (u, v) = (dir(i), dir((i + 1) % n));
        if cross2(&u, &v) == 0 && u[0] * v[0] + u[1] * v[1] < 0 {
            return Err(Degeneracy::FoldedAdjacentEdges);
        }
    }

    let mut raw = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if j == i + 1 || (i == 0 && j == n - 1) {
                continue;
            }
            let (p0, _) = seg(i);
            let (q0, _) = seg(j);
            let r = dir(i);
            let w = dir(j);
            let qp = sub2(&q0, &p0);
            let den = cross2(&r, &w);
            if den == 0 {
                if cross2(&qp, &r) != 0 {
                    continue;
                }
                // collinear: compare extents along r
                let rr = r[0] * r[0] + r[1] * r[1];
                let t0 = qp[0] * r[0] + qp[1] * r[1];
                let t1 = t0 + w[0] * r[0] + w[1] * r[1];
                let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
                if hi >= 0 && lo <= rr {
                    return Err(Degeneracy::OverlappingEdges);
                }
                continue;
            }
            let (mut s_num, mut t_num, mut den) = (cross2(&qp, &w), cross2(&qp, &r), den);
            if den < 0 {
                s_num = -s_num;
                t_num = -t_num;
                den = -den;
            }
            if s_num < 0 || s_num > den || t_num < 0 || t_num > den {
                continue;
            }
            if s_num == 0 || s_num == den || t_num == 0 || t_num == den {
                return Err(Degeneracy::VertexOnEdge);
            }
            let big = |x: i128| BigInt::from(x);
            let s = BigRational::new(big(s_num), big(den));
            let t = BigRational::new(big(t_num), big(den));
            let zi = big(depth[i]) * big(den) + big(s_num) * big(depth[(i + 1) % n] - depth[i]);
            let zj = big(depth[j]) * big(den) + big(t_num) * big(depth[(j + 1) % n] - depth[j]);
            let point = (
                BigRational::from_integer(big(p0[0])) + &s * BigRational::from_integer(big(r[0])),
                BigRational::from_integer(big(p0[1])) + &s * BigRational::from_integer(big(r[1])),
            );
            let (over, under, o, u) = match zi.cmp(&zj) {
                Ordering::Greater => ((i, s), (j, t), r, w),
                Ordering::Less => ((j, t), (i, s), w, r),
                Ordering::Equal => return Err(Degeneracy::SelfIntersection),
            };
            let sign = if cross2(&o, &u) > 0 { 1 } else { -1 };
            raw.push(RawCrossing {
                over,
                under,
                point,
                sign,
            });
        }
    }
    let mut points: Vec<&(BigRational, BigRational)> = raw.iter().map(|c| &c.point).collect();
    points.sort();
    if points.windows(2).any(|w| w[0] == w[1]) {
        return Err(Degeneracy::TriplePoint);
    }
    Ok(raw)
}

fn assemble(raw: Vec<RawCrossing>) -> Result<KnotDiagram, DiagramError> {
    if raw.is_empty() {
        return Ok(KnotDiagram::unknot());
    }
    // events: (segment, parameter, raw crossing, is_over)
    let mut events: Vec<(usize, &BigRational, usize, bool)> = Vec::with_capacity(2 * raw.len());
    for (k, c) in raw.iter().enumerate() {
        events.push((c.over.0, &c.over.1, k, true));
        events.push((c.under.0, &c.under.1, k, false));
    }
    events.sort_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)));
    let m = events.len() as u32;
    let mut number = vec![usize::MAX; raw.len()];
    let mut next_id = 0;
    let mut over_ev = vec![0u32; raw.len()];
    let mut under_ev = vec![0u32; raw.len()];
    for (j, &(_, _, k, is_over)) in events.iter().enumerate() {
        if number[k] == usize::MAX {
            number[k] = next_id;
            next_id += 1;
        }
        if is_over {
            over_ev[k] = j as u32;
        } else {
            under_ev[k] = j as u32;
        }
    }
    let mut crossings = vec![None; raw.len()];
    for (k, c) in raw.iter().enumerate() {
        let (u, o) = (under_ev[k], over_ev[k]);
        crossings[number[k]] = Some(Crossing::from_strands(u, (u + 1) % m, o, (o + 1) % m, c.sign));
    }
    KnotDiagram::from_crossings(crossings.into_iter().map(Option::unwrap).collect())
}

/// Projects along `hint` (default `(0,0,1)`), perturbing deterministically
/// until the projection is generic. Crossings are numbered by their first
/// visit starting from vertex 1; edge 0 contains vertex 1.
pub fn project(
    p: &PolygonalKnot,
    hint: Option<Vec3>,
) -> Result<(KnotDiagram, ProjectionPose), ProjectionError> {
    if is_planar(p) {
        return Err(ProjectionError::PlanarInput);
    }
    let base = hint.unwrap_or(DEFAULT_DIRECTION);
    let mut rejected = Vec::new();
    for k in 0..SCHEDULE_LEN {
        let d = schedule(base, k);
        if d == [0, 0, 0] {
            continue;
        }
        match try_direction(p, &d) {
            Ok(raw) => {
                let diagram = assemble(raw)?;
                let pose = ProjectionPose {
                    direction: d,
                    checks: Degeneracy::ALL.iter().map(|&g| (g, true)).collect(),
                    rejected,
                };
                return Ok((diagram, pose));
            }
            Err(g) => rejected.push((d, g)),
        }
    }
    Err(ProjectionError::NoGenericProjection(rejected.len()))
}

/// Number of properly crossing pairs of projected segments, or the
/// degeneracy that prevents counting.
pub fn crossing_count(p: &PolygonalKnot, d: &Vec3) -> Result<usize, Degeneracy> {
    try_direction(p, d).map(|raw| raw.len())
}
