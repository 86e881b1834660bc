//! Both sides of Gordan's alternative for a 3×n integer matrix `E`:
//! either some `v` has `vᵀE > 0` entrywise, or some nonzero `u >= 0` has
//! `E u = 0`. Each side is decided by an exact simplex and returns an integer
//! witness that is re-verified before it leaves this module.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::poly::SignMatrix;
use crate::simplex::{feasible_point, rat, LpStatus, Rat, Tableau};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GordanError {
    #[error("certificate has {found} entries but the matrix has {expected} columns")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("entry {0} is negative")]
    NegativeEntry(usize),
    #[error("zero vector")]
    ZeroVector,
    #[error("line {line}: `{token}` is not an integer")]
    BadToken { line: usize, token: String },
    #[error("both or neither alternative found a witness (certificate: {certificate}, direction: {direction})")]
    InternalContradiction { certificate: bool, direction: bool },
}

/// A nonzero, nonnegative, primitive integer vector `u` with `E u = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GordanCertificate {
    u: Vec<BigInt>,
}

impl GordanCertificate {
    pub fn entries(&self) -> &[BigInt] {
        &self.u
    }

    pub fn len(&self) -> usize {
        self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.u
    }
}

impl fmt::Display for GordanCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.u.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A nonzero primitive integer direction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DirectionVector {
    v: [BigInt; 3],
}

impl DirectionVector {
    /// Reduces to the primitive positive multiple. Returns `None` for zero.
    pub fn new(v: [BigInt; 3]) -> Option<Self> {
        let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if g.is_zero() {
            return None;
        }
        Some(DirectionVector {
            v: v.map(|x| x / &g),
        })
    }

    pub fn components(&self) -> &[BigInt; 3] {
        &self.v
    }

    pub fn to_i128(&self) -> Option<[i128; 3]> {
        let c = |x: &BigInt| i128::try_from(x).ok();
        Some([c(&self.v[0])?, c(&self.v[1])?, c(&self.v[2])?])
    }

    /// `vᵀc` for every column.
    pub fn projections(&self, e: &SignMatrix) -> Vec<BigInt> {
        e.columns()
            .iter()
            .map(|c| {
                (0..3)
                    .map(|k| &self.v[k] * BigInt::from(c[k]))
                    .fold(BigInt::zero(), |a, b| a + b)
            })
            .collect()
    }
}

impl fmt::Display for DirectionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.v[0], self.v[1], self.v[2])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GordanVerdict {
    DirectionExists(DirectionVector),
    CertificateExists(GordanCertificate),
}

impl GordanVerdict {
    pub fn certificate(&self) -> Option<&GordanCertificate> {
        match self {
            GordanVerdict::CertificateExists(u) => Some(u),
            GordanVerdict::DirectionExists(_) => None,
        }
    }

    pub fn direction(&self) -> Option<&DirectionVector> {
        match self {
            GordanVerdict::DirectionExists(v) => Some(v),
            GordanVerdict::CertificateExists(_) => None,
        }
    }
}

/// Outcome of checking a candidate certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub residual: [BigInt; 3],
    pub nonnegative: bool,
    pub nonzero: bool,
}

impl Verification {
    pub fn holds(&self) -> bool {
        self.nonnegative && self.nonzero && self.residual.iter().all(Zero::is_zero)
    }
}

pub fn verify_certificate(e: &SignMatrix, u: &[BigInt]) -> Result<Verification, GordanError> {
    if u.len() != e.ncols() {
        return Err(GordanError::DimensionMismatch {
            expected: e.ncols(),
            found: u.len(),
        });
    }
    let mut residual = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
    for (col, x) in e.columns().iter().zip(u) {
        for k in 0..3 {
            residual[k] += BigInt::from(col[k]) * x;
        }
    }
    Ok(Verification {
        residual,
        nonnegative: u.iter().all(|x| !x.is_negative()),
        nonzero: u.iter().any(|x| !x.is_zero()),
    })
}

/// Clears denominators by their lcm and divides out the gcd.
pub fn canonicalize(u: &[Rat]) -> Result<GordanCertificate, GordanError> {
    if let Some(i) = u.iter().position(Signed::is_negative) {
        return Err(GordanError::NegativeEntry(i));
    }
    if u.iter().all(Zero::is_zero) {
        return Err(GordanError::ZeroVector);
    }
    let lcm = u.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = u
        .iter()
        .map(|x| (x * Rat::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    Ok(GordanCertificate {
        u: ints.into_iter().map(|x| x / &g).collect(),
    })
}

/// Searches for a nonzero `u >= 0` with `E u = 0` by phase-1 simplex on
/// `{E u = 0, Σu = 1, u >= 0}`.
pub fn find_certificate(e: &SignMatrix) -> Option<GordanCertificate> {
    let n = e.ncols();
    if n == 0 {
        return None;
    }
    let mut a: Vec<Vec<Rat>> = (0..3)
        .map(|row| (0..n).map(|col| rat(e.entry(row, col))).collect())
        .collect();
    a.push(vec![rat(1); n]);
    let b = vec![rat(0), rat(0), rat(0), rat(1)];
    let x = feasible_point(&a, &b)?;
    let cert = canonicalize(&x).expect("simplex point is nonnegative and sums to one");
    debug_assert!(verify_certificate(e, cert.entries()).unwrap().holds());
    Some(cert)
}

/// Searches for `v` with `vᵀc > 0` for every column `c`.
///
/// Maximizes a margin `t` subject to `vᵀc_j >= t`, `-1 <= v_k <= 1` and
/// `0 <= t <= 1`, with `v = p - q` split into nonnegative parts. The origin is
/// feasible, so no phase 1 is needed; a direction exists iff `t* > 0`.
pub fn find_direction(e: &SignMatrix) -> Option<DirectionVector> {
    let n = e.ncols();
    // columns: p0..p2, q0..q2, t, s_0..s_{n-1}, rp0..rp2, rq0..rq2, rt
    let p = 0;
    let q = 3;
    let t = 6;
    let s = 7;
    let rp = s + n;
    let rq = rp + 3;
    let rt = rq + 3;
    let ncols = rt + 1;
    let mut rows = Vec::with_capacity(n + 7);
    let mut rhs = Vec::with_capacity(n + 7);
    let mut basis = Vec::with_capacity(n + 7);
    for (j, col) in e.columns().iter().enumerate() {
        // t - vᵀc_j + s_j = 0
        let mut row = vec![rat(0); ncols];
        for k in 0..3 {
            row[p + k] = rat(-col[k]);
            row[q + k] = rat(col[k]);
        }
        row[t] = rat(1);
        row[s + j] = rat(1);
        rows.push(row);
        rhs.push(rat(0));
        basis.push(s + j);
    }
    for (var, slack) in (0..3)
        .map(|k| (p + k, rp + k))
        .chain((0..3).map(|k| (q + k, rq + k)))
        .chain(std::iter::once((t, rt)))
    {
        let mut row = vec![rat(0); ncols];
        row[var] = rat(1);
        row[slack] = rat(1);
        rows.push(row);
        rhs.push(rat(1));
        basis.push(slack);
    }
    let mut tab = Tableau::with_basis(rows, rhs, basis);
    let mut c = vec![rat(0); ncols];
    c[t] = rat(1);
    let status = tab.maximize(&c, |_| true);
    debug_assert_eq!(status, LpStatus::Optimal);
    let x = tab.solution();
    if !x[t].is_positive() {
        return None;
    }
    let v: Vec<Rat> = (0..3).map(|k| &x[p + k] - &x[q + k]).collect();
    let lcm = v.iter().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
    let scale = Rat::from_integer(lcm);
    let ints: Vec<BigInt> = v.iter().map(|r| (r * &scale).to_integer()).collect();
    let dir = DirectionVector::new([ints[0].clone(), ints[1].clone(), ints[2].clone()])?;
    assert!(
        dir.projections(e).iter().all(Signed::is_positive),
        "margin LP returned a non-separating direction"
    );
    Some(dir)
}

/// Runs both searches and insists that exactly one succeeds.
pub fn gordan_check(e: &SignMatrix) -> Result<GordanVerdict, GordanError> {
    match (find_certificate(e), find_direction(e)) {
        (Some(u), None) => Ok(GordanVerdict::CertificateExists(u)),
        (None, Some(v)) => Ok(GordanVerdict::DirectionExists(v)),
        (u, v) => Err(GordanError::InternalContradiction {
            certificate: u.is_some(),
            direction: v.is_some(),
        }),
    }
}

/// Parses a certificate file: one integer per line, `#` comments.
pub fn parse_certificate(text: &str) -> Result<Vec<BigInt>, GordanError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let value = line.parse::<BigInt>().map_err(|_| GordanError::BadToken {
            line: idx + 1,
            token: line.to_string(),
        })?;
        out.push(value);
    }
    Ok(out)
}

pub fn format_certificate(u: &[BigInt]) -> String {
    u.iter().map(|x| format!("{x}\n")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{edge_vectors, parse_polygon, sign_matrix};

    const KNOT_8_5: &str = "0 0 0\n1000 0 0\n155 535 0\n57 -456 94\n572 183 -478\n842 108 482\n-104 233 181\n781 398 -254\n482 -67 579\n182 877 444\n";

    fn big(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn matrix_8_5() -> SignMatrix {
        sign_matrix(&edge_vectors(&parse_polygon(KNOT_8_5).unwrap())).unwrap()
    }

    fn square() -> SignMatrix {
        SignMatrix::from_columns(vec![[1, 0, 0], [0, -1, 0], [-1, 0, 0], [0, 1, 0]])
    }

    #[test]
    fn published_8_5_certificate_verifies() {
        let u = big(&[
            1,
            1,
            8061667015,
            1,
            1,
            1,
            496072961,
            2237736971,
            3514960071,
            4046282755,
        ]);
        assert!(verify_certificate(&matrix_8_5(), &u).unwrap().holds());
    }

    #[test]
    fn single_column_residual() {
        let mut u = big(&[0; 10]);
        u[0] = BigInt::from(1);
        let report = verify_certificate(&matrix_8_5(), &u).unwrap();
        assert!(!report.holds());
        assert_eq!(report.residual, [1000, 0, 0].map(BigInt::from));
    }

    #[test]
    fn square_certificate() {
        assert!(verify_certificate(&square(), &big(&[1, 1, 1, 1])).unwrap().holds());
        assert!(!verify_certificate(&square(), &big(&[0, 0, 0, 0])).unwrap().holds());
        assert!(!verify_certificate(&square(), &big(&[-1, -1, -1, -1])).unwrap().holds());
        assert_eq!(
            verify_certificate(&square(), &big(&[1, 1])).unwrap_err(),
            GordanError::DimensionMismatch {
                expected: 4,
                found: 2
            }
        );
    }

    #[test]
    fn forced_certificate() {
        let e = SignMatrix::from_columns(vec![[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -1]]);
        assert_eq!(find_certificate(&e).unwrap().entries(), &big(&[1, 1, 1, 1])[..]);
        assert!(find_direction(&e).is_none());
    }

    #[test]
    fn finds_certificate_for_8_5() {
        let e = matrix_8_5();
        let u = find_certificate(&e).unwrap();
        assert!(verify_certificate(&e, u.entries()).unwrap().holds());
        assert!(find_direction(&e).is_none());
        assert!(matches!(gordan_check(&e), Ok(GordanVerdict::CertificateExists(_))));
    }

    #[test]
    fn parallel_columns_have_a_direction() {
        let e = SignMatrix::from_columns(vec![[1, 0, 0]; 4]);
        let v = find_direction(&e).unwrap();
        assert_eq!(v.components(), &[1, 0, 0].map(BigInt::from));
        assert!(find_certificate(&e).is_none());
    }

    #[test]
    fn square_verdict() {
        let verdict = gordan_check(&square()).unwrap();
        let u = verdict.certificate().unwrap();
        assert!(verify_certificate(&square(), u.entries()).unwrap().holds());
    }

    #[test]
    fn canonicalize_examples() {
        let half = rat(1) / rat(2);
        let third = rat(1) / rat(3);
        assert_eq!(
            canonicalize(&[half, third, rat(0)]).unwrap().entries(),
            &big(&[3, 2, 0])[..]
        );
        let c = canonicalize(&[rat(2), rat(4), rat(6)]).unwrap();
        assert_eq!(c.entries(), &big(&[1, 2, 3])[..]);
        let again: Vec<Rat> = c.entries().iter().cloned().map(Rat::from_integer).collect();
        assert_eq!(canonicalize(&again).unwrap(), c);
        assert_eq!(canonicalize(&[rat(1), rat(-1)]).unwrap_err(), GordanError::NegativeEntry(1));
        assert_eq!(canonicalize(&[rat(0), rat(0)]).unwrap_err(), GordanError::ZeroVector);
    }

    #[test]
    fn published_8_5_certificate_is_primitive() {
        // gcd of the published entries, computed independently
        let u: [u64; 10] = [1, 1, 8061667015, 1, 1, 1, 496072961, 2237736971, 3514960071, 4046282755];
        assert_eq!(u.iter().fold(0u64, |g, &x| g.gcd(&x)), 1);
        let r: Vec<Rat> = u.iter().map(|&x| rat(x as i64)).collect();
        assert_eq!(canonicalize(&r).unwrap().entries(), &big(&u.map(|x| x as i64))[..]);
    }

    #[test]
    fn certificate_file_round_trip() {
        let text = "# c\n1\n2\n\n30000000000\n";
        let u = parse_certificate(text).unwrap();
        assert_eq!(u, big(&[1, 2, 30000000000]));
        assert_eq!(parse_certificate(&format_certificate(&u)).unwrap(), u);
        assert!(matches!(
            parse_certificate("1\nx\n"),
            Err(GordanError::BadToken { line: 2, .. })
        ));
    }
}
