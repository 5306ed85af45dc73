//! Exact linear algebra over the integers: an incremental row-echelon
//! space for rational rank computations (integer rows with cross
//! multiplication and gcd normalization, so no fractions appear), and a
//! small Smith normal form for torsion checks.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// A growing echelon basis of a subspace of `Q^cols`, kept with integer
/// coordinates.  Rows are stored sorted by pivot column, gcd-reduced, with
/// positive pivots.
#[derive(Clone, Debug)]
pub struct RowSpace {
    cols: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(cols: usize) -> Self {
        RowSpace { cols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// Eliminates `v` against the current basis and returns the residue
    /// (gcd-normalized; zero iff `v` is in the span).
    pub fn reduce(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let scale = v[p].clone();
                let lead = row[p].clone();
                for (out, r) in v.iter_mut().zip(row) {
                    *out = &*out * &lead - r * &scale;
                }
                debug_assert!(v[p].is_zero());
                normalize(&mut v);
            }
        }
        v
    }

    /// Adds `v` to the space; returns `true` when the rank grew.
    pub fn insert(&mut self, v: Vec<BigInt>) -> bool {
        let v = self.reduce(v);
        let Some(pivot) = v.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let at = self.pivots.partition_point(|&p| p < pivot);
        self.pivots.insert(at, pivot);
        self.rows.insert(at, v);
        true
    }
}

/// Divides a row by the gcd of its entries and makes the leading
/// coefficient positive.
fn normalize(v: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for c in v.iter() {
        if !c.is_zero() {
            g = g.gcd(c);
        }
    }
    if g.is_zero() {
        return;
    }
    if let Some(first) = v.iter().find(|c| !c.is_zero()) {
        if first.is_negative() {
            g = -g;
        }
    }
    for c in v.iter_mut() {
        *c = &*c / &g;
    }
}

/// Elementary divisors (diagonal of the Smith normal form), without the
/// trailing zeros.  Intended for small matrices.
#[allow(clippy::needless_range_loop)] // index pairs of `m` are mutated in place
pub fn elementary_divisors(matrix: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut m: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut divisors = Vec::new();
    let mut top = 0usize;
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut left = 0usize;
    while top < rows && left < cols {
        // locate a smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in top..rows {
            for j in left..cols {
                if !m[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(top, bi);
        for row in m.iter_mut() {
            row.swap(left, bj);
        }
        // clear the row and column, restarting whenever a remainder shrinks
        // the pivot
        loop {
            let mut clean = true;
            for i in top + 1..rows {
                if !m[i][left].is_zero() {
                    let q = &m[i][left] / &m[top][left];
                    for j in left..cols {
                        let sub = &q * &m[top][j];
                        m[i][j] -= sub;
                    }
                    if !m[i][left].is_zero() {
                        m.swap(top, i);
                        clean = false;
                    }
                }
            }
            for j in left + 1..cols {
                if !m[top][j].is_zero() {
                    let q = &m[top][j] / &m[top][left];
                    for i in top..rows {
                        let sub = &q * &m[i][left];
                        m[i][j] -= sub;
                    }
                    if !m[top][j].is_zero() {
                        for row in m.iter_mut().skip(top) {
                            row.swap(left, j);
                        }
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        divisors.push(m[top][left].abs());
        top += 1;
        left += 1;
    }
    // enforce the divisibility chain
    let mut changed = true;
    while changed {
        changed = false;
        for i in 1..divisors.len() {
            let (a, b) = (divisors[i - 1].clone(), divisors[i].clone());
            if !(&b % &a).is_zero() {
                let g = a.gcd(&b);
                let l = &a * &b / &g;
                divisors[i - 1] = g;
                divisors[i] = l;
                changed = true;
            }
        }
    }
    divisors
}
