//! Smith normal form of integer matrices.
//!
//! Used for abelianizations of finitely presented groups: the cokernel of a
//! relation matrix is read off the diagonal of its Smith normal form.  The
//! reduction pivots on a smallest-magnitude entry, clears its row and column
//! with nearest-integer quotients, and repairs any divisibility violation by
//! folding the offending row into the pivot row, so the final diagonal is a
//! divisibility chain d1 | d2 | ...

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// A dense matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    /// Build from row slices of machine integers.  Panics on ragged input.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let mut m = IntMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[a] -= q * row[b]
    fn row_sub(&mut self, a: usize, b: usize, q: &BigInt) {
        for j in 0..self.cols {
            let delta = q * self.get(b, j);
            let v = self.get(a, j) - delta;
            self.set(a, j, v);
        }
    }

    /// col[a] -= q * col[b]
    fn col_sub(&mut self, a: usize, b: usize, q: &BigInt) {
        for i in 0..self.rows {
            let delta = q * self.get(i, b);
            let v = self.get(i, a) - delta;
            self.set(i, a, v);
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Result of a Smith reduction: the diagonalised matrix and the nonzero
/// diagonal entries (`1`s included), each dividing the next.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SmithNormalForm {
    pub matrix: IntMatrix,
    pub invariant_factors: Vec<BigInt>,
}

/// Nearest-integer quotient: `a - q*b` has magnitude at most `|b|/2`.
fn div_nearest(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if &r.abs() * 2 > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Smith normal form over the integers (diagonal only; the unimodular
/// transforms are not tracked).
pub fn smith_normal_form(input: &IntMatrix) -> SmithNormalForm {
    let mut m = input.clone();
    let n = m.rows.min(m.cols);
    let mut t = 0;
    while t < n {
        // Pivot: smallest nonzero magnitude in the trailing submatrix.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..m.rows {
            for j in t..m.cols {
                if m.get(i, j).is_zero() {
                    continue;
                }
                if pivot.is_none_or(|(pi, pj)| m.get(i, j).abs() < m.get(pi, pj).abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else {
            break; // trailing submatrix is zero
        };
        m.swap_rows(t, pi);
        m.swap_cols(t, pj);

        // Clear row and column t; a nonzero remainder after the subtraction
        // becomes the new (smaller) pivot on the next sweep.
        let mut clean = false;
        while !clean {
            clean = true;
            for i in t + 1..m.rows {
                if m.get(i, t).is_zero() {
                    continue;
                }
                let q = div_nearest(m.get(i, t), m.get(t, t));
                m.row_sub(i, t, &q);
                if !m.get(i, t).is_zero() {
                    m.swap_rows(t, i);
                    clean = false;
                }
            }
            for j in t + 1..m.cols {
                if m.get(t, j).is_zero() {
                    continue;
                }
                let q = div_nearest(m.get(t, j), m.get(t, t));
                m.col_sub(j, t, &q);
                if !m.get(t, j).is_zero() {
                    m.swap_cols(t, j);
                    clean = false;
                }
            }
        }

        // Divisibility repair: the pivot must divide every trailing entry.
        let mut repaired = false;
        'scan: for i in t + 1..m.rows {
            for j in t + 1..m.cols {
                if !m.get(i, j).mod_floor(m.get(t, t)).is_zero() {
                    // Fold row i into row t and redo this pivot step.
                    let one = BigInt::from(-1);
                    m.row_sub(t, i, &one);
                    repaired = true;
                    break 'scan;
                }
            }
        }
        if repaired {
            continue;
        }

        if m.get(t, t).is_negative() {
            let v = -m.get(t, t).clone();
            m.set(t, t, v);
        }
        t += 1;
    }

    let invariant_factors = (0..n)
        .map(|k| m.get(k, k).clone())
        .take_while(|d| !d.is_zero())
        .collect();
    SmithNormalForm {
        matrix: m,
        invariant_factors,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors(rows: &[Vec<i64>]) -> Vec<i64> {
        smith_normal_form(&IntMatrix::from_rows(rows))
            .invariant_factors
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn two_by_two_forms() {
        assert_eq!(factors(&[vec![0, 2], vec![-3, 0]]), vec![1, 6]);
        assert_eq!(factors(&[vec![0, 2], vec![3, 2]]), vec![1, 6]);
        assert_eq!(factors(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(factors(&[vec![2, 4], vec![6, 8]]), vec![2, 4]);
    }

    #[test]
    fn rank_deficiency_and_zero() {
        assert_eq!(factors(&[vec![1, 2], vec![2, 4]]), vec![1]);
        assert_eq!(factors(&[vec![0, 0], vec![0, 0]]), Vec::<i64>::new());
        assert_eq!(factors(&[vec![-5]]), vec![5]);
    }

    #[test]
    fn rectangular() {
        assert_eq!(factors(&[vec![2, 4, 4]]), vec![2]);
        assert_eq!(
            factors(&[vec![6, 0], vec![0, 10], vec![0, 0]]),
            vec![2, 30]
        );
    }

    fn det_cofactor(m: &IntMatrix) -> BigInt {
        let n = m.rows();
        if n == 1 {
            return m.get(0, 0).clone();
        }
        let mut acc = BigInt::zero();
        for j in 0..n {
            if m.get(0, j).is_zero() {
                continue;
            }
            let mut minor = IntMatrix::zeros(n - 1, n - 1);
            for i in 1..n {
                let mut cc = 0;
                for c in 0..n {
                    if c == j {
                        continue;
                    }
                    minor.set(i - 1, cc, m.get(i, c).clone());
                    cc += 1;
                }
            }
            let term = m.get(0, j) * det_cofactor(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn divisibility_chain_holds() {
        let m = IntMatrix::from_rows(&[
            vec![2, 1, 0, 3],
            vec![0, 4, 6, -2],
            vec![10, 4, 4, 0],
            vec![8, 0, 0, 9],
        ]);
        let snf = smith_normal_form(&m);
        let f = &snf.invariant_factors;
        for k in 1..f.len() {
            assert!((&f[k] % &f[k - 1]).is_zero(), "chain broken: {f:?}");
        }
        // Product of invariant factors equals |det| for full-rank square input.
        let det: BigInt = f.iter().product();
        assert_eq!(det, det_cofactor(&m).abs());
    }

    #[test]
    fn diagonal_matrix_output_shape() {
        let snf = smith_normal_form(&IntMatrix::from_rows(&[vec![0, 2], vec![-3, 0]]));
        let d = &snf.matrix;
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                if i != j {
                    assert!(d.get(i, j).is_zero());
                }
            }
        }
    }
}
