//! Local maxima of directional projections and the bounds built on them.
//!
//! For edge vectors `e_1..e_n` and a generic direction `v`, the number of
//! local maxima of the height function `x ↦ v·x` is the number of cyclic
//! descents `e_i·v > 0 > e_{i+1}·v`. The maximum over all `v` is the
//! superbridge number of the realization.

use std::cmp::Reverse;
use std::fmt;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exec::Execution;
use crate::gordan::{gordan_check, GordanCertificate, GordanError, GordanVerdict};
use crate::ledger::Citation;
use crate::poly::{edge_vectors, sign_matrix, EdgeVectors, PolyError, PolygonalKnot, Vec3};

/// Integer direction with wide components; perturbed arrangement vertices
/// exceed the `i64` range.
pub type Direction = [i128; 3];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SuperbridgeError {
    #[error("direction is orthogonal to edge {0}")]
    NonGenericDirection(usize),
    #[error("no generic direction among the candidates")]
    NoGenericDirectionFound,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Gordan(#[from] GordanError),
    #[error("torus knot parameters must be coprime, got ({0}, {1})")]
    NotCoprime(u64, u64),
    #[error("torus knot parameters need 2 <= p < q, got ({0}, {1})")]
    BadRange(u64, u64),
}

/// A generic direction together with its descent count.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DirectionWitness {
    pub direction: Direction,
    pub count: usize,
    /// Sign of `e_i·v` for each edge, `+1` or `-1`.
    pub signs: Vec<i8>,
}

impl fmt::Display for DirectionWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.direction;
        let signs: String = self
            .signs
            .iter()
            .map(|&s| if s > 0 { '+' } else { '-' })
            .collect();
        write!(f, "direction ({}, {}, {}) maxima {} signs {}", d[0], d[1], d[2], self.count, signs)
    }
}

pub fn dot_wide(e: &Vec3, v: &Direction) -> i128 {
    e.iter().zip(v).map(|(&a, &b)| a as i128 * b).sum()
}

fn cross_wide(a: &Direction, b: &Direction) -> Direction {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn widen(e: &Vec3) -> Direction {
    [e[0] as i128, e[1] as i128, e[2] as i128]
}

/// Divides out the gcd of the components.
pub fn primitive(v: Direction) -> Direction {
    let g = v.iter().fold(0i128, |g, x| g.gcd(x));
    if g == 0 {
        v
    } else {
        v.map(|x| x / g)
    }
}

pub fn bridge_count(edges: &EdgeVectors, v: &Direction) -> Result<DirectionWitness, SuperbridgeError> {
    let mut signs = Vec::with_capacity(edges.len());
    for (i, e) in edges.iter().enumerate() {
        match dot_wide(e, v).signum() {
            0 => return Err(SuperbridgeError::NonGenericDirection(i + 1)),
            s => signs.push(s as i8),
        }
    }
    let n = signs.len();
    let count = (0..n)
        .filter(|&i| signs[i] > 0 && signs[(i + 1) % n] < 0)
        .count();
    Ok(DirectionWitness {
        direction: *v,
        count,
        signs,
    })
}

/// Directions next to every vertex `w = e_i × e_j` of the great-circle
/// arrangement `{x : x·e_k = 0}`.
///
/// For each sign of `w` and each sign pair `(s_i, s_j)` the candidate is
/// `K w + s_i (e_j × w) + s_j (w × e_i)`: the two correction terms are
/// orthogonal to `e_j` and `e_i` respectively, so the candidate has sign `s_i`
/// on `e_i` and `s_j` on `e_j`, and `K` is chosen exactly so that no other
/// nonzero sign of `w·e_k` flips.
pub fn arrangement_candidates(edges: &EdgeVectors) -> Vec<Direction> {
    let es: Vec<Direction> = edges.iter().map(widen).collect();
    let n = es.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let w = cross_wide(&es[i], &es[j]);
            if w == [0, 0, 0] {
                continue;
            }
            let toward_i = cross_wide(&es[j], &w);
            let toward_j = cross_wide(&w, &es[i]);
            for sw in [1i128, -1] {
                let base = w.map(|x| x * sw);
                for (si, sj) in [(1i128, 1i128), (1, -1), (-1, 1), (-1, -1)] {
                    let p: Direction =
                        std::array::from_fn(|k| si * toward_i[k] + sj * toward_j[k]);
                    let mut scale = 1i128;
                    for e in &es {
                        let b: i128 = (0..3).map(|k| base[k] * e[k]).sum();
                        if b == 0 {
                            continue;
                        }
                        let q: i128 = (0..3).map(|k| p[k] * e[k]).sum();
                        scale = scale.max(q.abs() / b.abs() + 1);
                    }
                    let cand: Direction = std::array::from_fn(|k| scale * base[k] + p[k]);
                    out.push(primitive(cand));
                }
            }
        }
    }
    out
}

/// Seeded integer directions with entries in `[-10⁶, 10⁶]`, zero vector excluded.
pub fn random_directions(budget: usize, seed: u64) -> Vec<Direction> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(budget);
    while out.len() < budget {
        let v: Direction = std::array::from_fn(|_| rng.gen_range(-1_000_000i128..=1_000_000));
        if v != [0, 0, 0] {
            out.push(v);
        }
    }
    out
}

/// Best direction witness over the arrangement candidates and `budget` seeded
/// random directions. Ties go to the lexicographically smallest primitive
/// direction, so the answer does not depend on how work is scheduled.
pub fn witness_search(
    p: &PolygonalKnot,
    budget: usize,
    seed: u64,
    exec: Execution,
) -> Result<DirectionWitness, SuperbridgeError> {
    let edges = edge_vectors(p);
    let mut candidates = arrangement_candidates(&edges);
    candidates.extend(random_directions(budget, seed).into_iter().map(primitive));
    exec.map(&candidates, |v| bridge_count(&edges, v).ok())
        .into_iter()
        .flatten()
        .min_by_key(|w| (Reverse(w.count), w.direction))
        .ok_or(SuperbridgeError::NoGenericDirectionFound)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SbBoundKind {
    UpperRealization,
    LowerRealization,
}

/// A bound on the superbridge number of one realization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SbBound {
    pub kind: SbBoundKind,
    pub value: usize,
    pub provenance: Citation,
    pub certificate: Option<GordanCertificate>,
}

impl SbBound {
    pub fn from_witness(w: &DirectionWitness) -> Self {
        SbBound {
            kind: SbBoundKind::LowerRealization,
            value: w.count,
            provenance: Citation::Witness,
            certificate: None,
        }
    }
}

/// `sb(γ) <= n/2 - 1` when the alternating sign matrix admits a Gordan
/// certificate; `None` means some direction attains `n/2` maxima.
pub fn upper_bound_from_certificate(p: &PolygonalKnot) -> Result<Option<SbBound>, SuperbridgeError> {
    let e = sign_matrix(&edge_vectors(p))?;
    Ok(match gordan_check(&e)? {
        GordanVerdict::CertificateExists(u) => Some(SbBound {
            kind: SbBoundKind::UpperRealization,
            value: p.len() / 2 - 1,
            provenance: Citation::Gordan,
            certificate: Some(u),
        }),
        GordanVerdict::DirectionExists(_) => None,
    })
}

/// `sb[K] <= stick[K] / 2`.
pub fn jin_bound(n: usize) -> usize {
    n / 2
}

/// Superbridge index `min(2p, q)` of the `(p, q)` torus knot.
pub fn torus_superbridge(p: u64, q: u64) -> Result<u64, SuperbridgeError> {
    if p < 2 || p >= q {
        return Err(SuperbridgeError::BadRange(p, q));
    }
    if p.gcd(&q) != 1 {
        return Err(SuperbridgeError::NotCoprime(p, q));
    }
    Ok((2 * p).min(q))
}

/// `sb[K] <= 3 b[K] - 1`.
pub fn adams_bound(bridge_index: u64) -> u64 {
    3 * bridge_index - 1
}
