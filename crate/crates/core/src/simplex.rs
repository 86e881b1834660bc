//! Dense exact-rational simplex with Bland's anti-cycling rule.
//!
//! Only what the Gordan engine needs: equality-form programs `A x = b`,
//! `x >= 0`, solved either from a caller-supplied feasible basis or from an
//! artificial phase-1 basis. Problem sizes here are a handful of rows and a
//! few dozen columns, so the tableau is kept dense.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(x: i64) -> Rat {
    Rat::from_integer(BigInt::from(x))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Unbounded,
}

/// Simplex tableau kept in canonical form with respect to `basis`.
#[derive(Clone, Debug)]
pub struct Tableau {
    rows: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    basis: Vec<usize>,
    ncols: usize,
    pivots: usize,
}

impl Tableau {
    /// Starts from a basis that is already feasible: the columns named by
    /// `basis` must form an identity submatrix of `a` and `b >= 0`.
    pub fn with_basis(a: Vec<Vec<Rat>>, b: Vec<Rat>, basis: Vec<usize>) -> Self {
        let ncols = a.first().map_or(0, Vec::len);
        debug_assert_eq!(a.len(), b.len());
        debug_assert_eq!(a.len(), basis.len());
        debug_assert!(b.iter().all(|x| !x.is_negative()));
        for (i, &bcol) in basis.iter().enumerate() {
            for (r, row) in a.iter().enumerate() {
                debug_assert_eq!(row[bcol], if r == i { Rat::one() } else { Rat::zero() });
            }
        }
        Tableau {
            rows: a,
            rhs: b,
            basis,
            ncols,
            pivots: 0,
        }
    }

    pub fn pivots(&self) -> usize {
        self.pivots
    }

    /// Current value of every variable.
    pub fn solution(&self) -> Vec<Rat> {
        let mut x = vec![Rat::zero(); self.ncols];
        for (i, &j) in self.basis.iter().enumerate() {
            x[j] = self.rhs[i].clone();
        }
        x
    }

    pub fn objective_value(&self, c: &[Rat]) -> Rat {
        self.solution()
            .iter()
            .zip(c)
            .map(|(x, c)| x * c)
            .fold(Rat::zero(), |acc, v| acc + v)
    }

    fn reduced_cost(&self, c: &[Rat], j: usize) -> Rat {
        let mut r = c[j].clone();
        for (i, &bj) in self.basis.iter().enumerate() {
            if !c[bj].is_zero() && !self.rows[i][j].is_zero() {
                r -= &c[bj] * &self.rows[i][j];
            }
        }
        r
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.rows[row][col].clone();
        for x in self.rows[row].iter_mut() {
            *x /= &p;
        }
        self.rhs[row] /= &p;
        let pivot_row = self.rows[row].clone();
        let pivot_rhs = self.rhs[row].clone();
        for r in 0..self.rows.len() {
            if r == row || self.rows[r][col].is_zero() {
                continue;
            }
            let f = self.rows[r][col].clone();
            for (x, y) in self.rows[r].iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            self.rhs[r] -= &f * &pivot_rhs;
        }
        self.basis[row] = col;
        self.pivots += 1;
    }

    /// Maximizes `c·x` over the columns allowed by `eligible`. Bland's rule:
    /// the lowest-index improving column enters, ratio ties leave by lowest
    /// basic index.
    pub fn maximize(&mut self, c: &[Rat], eligible: impl Fn(usize) -> bool) -> LpStatus {
        loop {
            let entering = (0..self.ncols)
                .filter(|&j| eligible(j) && !self.basis.contains(&j))
                .find(|&j| self.reduced_cost(c, j).is_positive());
            let Some(col) = entering else {
                return LpStatus::Optimal;
            };
            let mut leave: Option<(usize, Rat)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[r] / a;
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => {
                        ratio < *best || (ratio == *best && self.basis[r] < self.basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            match leave {
                Some((row, _)) => self.pivot(row, col),
                None => return LpStatus::Unbounded,
            }
        }
    }
}

/// Phase 1: finds some `x >= 0` with `a x = b`, or `None` when infeasible.
pub fn feasible_point(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        let mut r: Vec<Rat> = row
            .iter()
            .map(|x| if flip { -x.clone() } else { x.clone() })
            .collect();
        r.extend((0..m).map(|k| if k == i { Rat::one() } else { Rat::zero() }));
        rows.push(r);
        rhs.push(if flip { -bi.clone() } else { bi.clone() });
    }
    let basis = (n..n + m).collect();
    let mut t = Tableau::with_basis(rows, rhs, basis);
    let c: Vec<Rat> = (0..n + m)
        .map(|j| if j < n { Rat::zero() } else { -Rat::one() })
        .collect();
    let status = t.maximize(&c, |j| j < n);
    debug_assert_eq!(status, LpStatus::Optimal);
    if !t.objective_value(&c).is_zero() {
        return None;
    }
    let mut x = t.solution();
    x.truncate(n);
    Some(x)
}
