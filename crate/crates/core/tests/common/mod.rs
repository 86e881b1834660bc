//! Independent oracles and fixture helpers shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use superbridge_core::diagram::{parse_pd, KnotDiagram};
use superbridge_core::poly::{parse_polygon, PolygonalKnot, SignMatrix, Vec3};
use superbridge_core::projection::frame;
use superbridge_core::wirtinger::{Transposition, TranspositionLabeling, WirtingerPresentation};

pub const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";
pub const FIGURE_EIGHT: &str = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";
pub const CINQUEFOIL: &str = "X[1,6,2,7] X[3,8,4,9] X[5,10,6,1] X[7,2,8,3] X[9,4,10,5]";
pub const THREE_TWIST: &str = "X[1,4,2,5] X[3,8,4,9] X[5,10,6,1] X[9,6,10,7] X[7,2,8,3]";

pub const HIGH_CROSSING: [&str; 10] = [
    "13n_226", "13n_328", "13n_342", "13n_343", "13n_350", "13n_512", "13n_973", "13n_2641",
    "13n_5018", "14n_1753",
];

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(data_dir().join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn polygon(knot: &str) -> PolygonalKnot {
    parse_polygon(&read_fixture(&format!("{knot}.poly"))).unwrap()
}

pub fn diagram(knot: &str) -> KnotDiagram {
    parse_pd(&read_fixture(&format!("{knot}.pd"))).unwrap()
}

pub fn all_knots() -> Vec<String> {
    superbridge_core::KnowledgeTable::default().knots()
}

// ---------------------------------------------------------------------------
// Gordan feasibility by support enumeration.
// ---------------------------------------------------------------------------

type Q = BigRational;

/// Kernel basis of a 3×k rational matrix given by its columns.
fn kernel(cols: &[Vec3]) -> Vec<Vec<Q>> {
    let k = cols.len();
    let mut a: Vec<Vec<Q>> = (0..3)
        .map(|r| cols.iter().map(|c| Q::from_integer(BigInt::from(c[r]))).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..k {
        let Some(p) = (row..3).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let lead = a[row][col].clone();
        for x in a[row].iter_mut() {
            *x = &*x / &lead;
        }
        for r in 0..3 {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..k {
                    let v = &a[row][c] * &f;
                    a[r][c] -= v;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == 3 {
            break;
        }
    }
    (0..k)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Q::zero(); k];
            v[free] = Q::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[r][free].clone();
            }
            v
        })
        .collect()
}

fn subsets(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max {
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, max, cur, out);
            cur.pop();
        }
    }
    rec(0, n, max, &mut cur, &mut out);
    out
}

/// A nonzero `u >= 0` with `E u = 0` exists iff some set of at most four
/// columns has a one-dimensional kernel spanned by a vector whose entries are
/// all nonzero with one sign (a minimal-support solution).
pub fn gordan_oracle_feasible(e: &SignMatrix) -> bool {
    subsets(e.ncols(), 4).into_iter().any(|s| {
        let cols: Vec<Vec3> = s.iter().map(|&i| e.columns()[i]).collect();
        let ker = kernel(&cols);
        ker.len() == 1
            && (ker[0].iter().all(Signed::is_positive) || ker[0].iter().all(Signed::is_negative))
    })
}

// ---------------------------------------------------------------------------
// Crossing count of a projection by checking every pair of segments.
// ---------------------------------------------------------------------------

fn orient(a: [i128; 2], b: [i128; 2], c: [i128; 2]) -> i128 {
    ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])).signum()
}

/// Number of pairs of non-adjacent projected segments that cross properly.
pub fn all_pairs_crossings(p: &PolygonalKnot, d: &Vec3) -> usize {
    let (a, b) = frame(d);
    let proj: Vec<[i128; 2]> = p
        .vertices()
        .iter()
        .map(|v| {
            let w = [v[0] as i128, v[1] as i128, v[2] as i128];
            [
                (0..3).map(|k| a[k] * w[k]).sum(),
                (0..3).map(|k| b[k] * w[k]).sum(),
            ]
        })
        .collect();
    let n = proj.len();
    let mut count = 0;
    for i in 0..n {
        for j in i + 1..n {
            if j == i + 1 || (i == 0 && j == n - 1) {
                continue;
            }
            let (p1, p2) = (proj[i], proj[(i + 1) % n]);
            let (q1, q2) = (proj[j], proj[(j + 1) % n]);
            let d1 = orient(p1, p2, q1);
            let d2 = orient(p1, p2, q2);
            let d3 = orient(q1, q2, p1);
            let d4 = orient(q1, q2, p2);
            if d1 * d2 < 0 && d3 * d4 < 0 {
                count += 1;
            }
        }
    }
    count
}

// ---------------------------------------------------------------------------
// Knot determinant from a Goeritz matrix of a checkerboard colouring.
// ---------------------------------------------------------------------------

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    parent[x] = r;
    r
}

/// Faces of the diagram as classes of crossing corners; corner `4c + p`
/// lies between positions `p` and `p + 1` of crossing `c`.
fn faces(pd: &[[u32; 4]]) -> Vec<usize> {
    let n = pd.len();
    let mut parent: Vec<usize> = (0..4 * n).collect();
    let mut slots: std::collections::HashMap<u32, Vec<(usize, usize)>> = Default::default();
    for (c, x) in pd.iter().enumerate() {
        for (p, &e) in x.iter().enumerate() {
            slots.entry(e).or_default().push((c, p));
        }
    }
    for (c, x) in pd.iter().enumerate() {
        for p in 0..4 {
            let e = x[(p + 1) % 4];
            let &(d, q) = slots[&e].iter().find(|&&s| s != (c, (p + 1) % 4)).unwrap();
            let (a, b) = (find(&mut parent, 4 * c + p), find(&mut parent, 4 * d + q));
            parent[a] = b;
        }
    }
    (0..4 * n).map(|i| find(&mut parent, i)).collect()
}

fn bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(s) => {
                    a.swap(k, s);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `|det|` of the reduced Goeritz matrix of a connected PD code.
pub fn goeritz_determinant(pd: &[[u32; 4]]) -> BigInt {
    if pd.is_empty() {
        return BigInt::one();
    }
    let corner_face = faces(pd);
    let ids: Vec<usize> = corner_face.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let index = |f: usize| ids.iter().position(|&x| x == f).unwrap();
    let nf = ids.len();
    // adjacent corners at a crossing lie in faces of opposite colour
    let mut adj = vec![Vec::new(); nf];
    for c in 0..pd.len() {
        for p in 0..4 {
            let (f, g) = (index(corner_face[4 * c + p]), index(corner_face[4 * c + (p + 1) % 4]));
            adj[f].push(g);
            adj[g].push(f);
        }
    }
    let mut colour = vec![None; nf];
    colour[0] = Some(0u8);
    let mut queue = VecDeque::from([0]);
    while let Some(f) = queue.pop_front() {
        for &g in &adj[f] {
            match colour[g] {
                None => {
                    colour[g] = Some(1 - colour[f].unwrap());
                    queue.push_back(g);
                }
                Some(c) => assert_ne!(Some(c), colour[f], "diagram is not checkerboard colourable"),
            }
        }
    }
    let shaded: Vec<usize> = (0..nf).filter(|&f| colour[f] == Some(0)).collect();
    let pos = |f: usize| shaded.iter().position(|&x| x == f);
    let k = shaded.len();
    let mut g = vec![vec![BigInt::zero(); k]; k];
    for c in 0..pd.len() {
        let faces_at: Vec<usize> = (0..4).map(|p| index(corner_face[4 * c + p])).collect();
        let shaded_corners: Vec<usize> = (0..4).filter(|&p| colour[faces_at[p]] == Some(0)).collect();
        let eta: i64 = if shaded_corners == [1, 3] { 1 } else { -1 };
        let (i, j) = (pos(faces_at[shaded_corners[0]]).unwrap(), pos(faces_at[shaded_corners[1]]).unwrap());
        if i != j {
            g[i][j] -= eta;
            g[j][i] -= eta;
            g[i][i] += eta;
            g[j][j] += eta;
        }
    }
    let reduced: Vec<Vec<BigInt>> = g[1..].iter().map(|r| r[1..].to_vec()).collect();
    bareiss(reduced).abs()
}

pub fn pd_tuples(d: &KnotDiagram) -> Vec<[u32; 4]> {
    d.crossings().iter().map(|c| c.pd).collect()
}

// ---------------------------------------------------------------------------
// Transposition labelings by exhaustive enumeration.
// ---------------------------------------------------------------------------

/// Every assignment of transpositions to arcs, filtered by the relations and
/// surjectivity, reduced to canonical representatives.
pub fn naive_hom_search(p: &WirtingerPresentation, m: u8) -> Vec<TranspositionLabeling> {
    let ts = Transposition::all(m);
    let n = p.generators;
    let mut out = BTreeSet::new();
    let mut idx = vec![0usize; n];
    loop {
        let l = TranspositionLabeling::complete(m, idx.iter().map(|&i| ts[i]).collect());
        if l.violated_relation(p).is_none() && l.is_surjective() {
            out.insert(l.canonical());
        }
        let mut k = 0;
        while k < n {
            idx[k] += 1;
            if idx[k] < ts.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
    }
    out.into_iter().collect()
}

pub fn permutations(m: u8) -> Vec<Vec<u8>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(m - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, m);
            out.push(q);
        }
    }
    out
}

/// Lexicographically least relabeling, by trying every permutation.
pub fn brute_canonical(l: &TranspositionLabeling) -> TranspositionLabeling {
    permutations(l.m)
        .into_iter()
        .map(|perm| l.relabeled(|x| perm[x as usize - 1]))
        .min()
        .unwrap()
}

/// Order of the subgroup of `S_m` generated by the given transpositions.
pub fn generated_order(m: u8, gens: &[Transposition]) -> usize {
    let id: Vec<u8> = (1..=m).collect();
    let mut seen: HashSet<Vec<u8>> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for t in gens {
            let q: Vec<u8> = p.iter().map(|&x| t.apply(x)).collect();
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen.len()
}

pub fn factorial(m: u8) -> usize {
    (1..=m as usize).product()
}
