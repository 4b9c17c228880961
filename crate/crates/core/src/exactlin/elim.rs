//! Dense Gauss-Jordan elimination over the rationals.
//!
//! Pivots are taken at the first nonzero entry scanning columns left to right and rows top
//! to bottom, so results only depend on the input order.

use num_traits::{One, Zero};

use super::rational::Rational;

/// Reduced row echelon form of a dense matrix.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub rows: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis of the null space `{x : A x = 0}`, one vector per free column (in column order).
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.ncols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Rational::zero(); self.ncols];
            v[free] = Rational::one();
            for (r, &p) in self.pivots.iter().enumerate() {
                v[p] = -self.rows[r][free].clone();
            }
            out.push(v);
        }
        out
    }
}

pub fn rref(mut rows: Vec<Vec<Rational>>, ncols: usize) -> Echelon {
    let m = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r >= m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][c];
        if !inv.is_one() {
            for x in rows[r].iter_mut().skip(c) {
                *x *= &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(pivot_row.iter()).skip(c) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r.max(pivots.len()));
    rows.truncate(pivots.len());
    Echelon {
        rows,
        pivots,
        ncols,
    }
}

pub fn rank(rows: Vec<Vec<Rational>>, ncols: usize) -> usize {
    rref(rows, ncols).rank()
}

/// Solves `A x = b` for a dense `m x n` matrix. Returns one solution (free variables set to
/// zero) or `None` when the system is inconsistent.
pub fn solve(a: &[Vec<Rational>], b: &[Rational], ncols: usize) -> Option<Vec<Rational>> {
    let rows: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let e = rref(rows, ncols + 1);
    if e.pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (r, &p) in e.pivots.iter().enumerate() {
        x[p] = e.rows[r][ncols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rational::int;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn rank_deficient_kernel() {
        let e = rref(m(&[&[1, 2], &[2, 4]]), 2);
        assert_eq!(e.rank(), 1);
        assert_eq!(e.kernel(), vec![vec![int(-2), int(1)]]);
    }

    #[test]
    fn inconsistent_system() {
        let a = m(&[&[1, 1], &[1, 1]]);
        assert!(solve(&a, &[int(1), int(2)], 2).is_none());
        assert_eq!(solve(&a, &[int(3), int(3)], 2).unwrap(), vec![int(3), int(0)]);
    }
}
