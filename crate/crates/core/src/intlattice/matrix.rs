//! Dense matrices over the integers with Hermite and Smith normal forms.
//!
//! Everything is exact; entries are `BigInt` so intermediate coefficient
//! growth never overflows.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
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

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<BigInt>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r.iter().cloned());
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_rows(cols, &rows)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_vec(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Rows `r` of the matrix selected in the given order.
    pub fn select_rows(&self, which: &[usize]) -> IntMatrix {
        let rows: Vec<Vec<BigInt>> = which.iter().map(|&i| self.row(i).to_vec()).collect();
        Self::from_rows(self.cols, &rows)
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

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * q;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += q * col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * q;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let idx = r * self.cols + j;
            self.data[idx] = -std::mem::take(&mut self.data[idx]);
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Row Hermite normal form. Returns `(H, U)` with `U * M = H`, `U` unimodular.
///
/// `H` has the same shape as `M`; its nonzero rows come first, have strictly
/// increasing pivot columns with positive pivots, and entries above each
/// pivot lie in `[0, pivot)`.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.nrows());
    let mut pivot_row = 0;
    for col in 0..h.ncols() {
        if pivot_row == h.nrows() {
            break;
        }
        // Euclid on the column below pivot_row until a single nonzero entry is left.
        loop {
            let mut best: Option<usize> = None;
            for r in pivot_row..h.nrows() {
                if h[(r, col)].is_zero() {
                    continue;
                }
                if best.is_none_or(|b| h[(r, col)].abs() < h[(b, col)].abs()) {
                    best = Some(r);
                }
            }
            let Some(b) = best else { break };
            h.swap_rows(pivot_row, b);
            u.swap_rows(pivot_row, b);
            let mut done = true;
            for r in pivot_row + 1..h.nrows() {
                if h[(r, col)].is_zero() {
                    continue;
                }
                let q = h[(r, col)].div_floor(&h[(pivot_row, col)]);
                let nq = -q;
                h.add_row(r, pivot_row, &nq);
                u.add_row(r, pivot_row, &nq);
                if !h[(r, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(pivot_row, col)].is_zero() {
            continue;
        }
        if h[(pivot_row, col)].is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        for r in 0..pivot_row {
            let q = h[(r, col)].div_floor(&h[(pivot_row, col)]);
            if !q.is_zero() {
                let nq = -q;
                h.add_row(r, pivot_row, &nq);
                u.add_row(r, pivot_row, &nq);
            }
        }
        pivot_row += 1;
    }
    (h, u)
}

/// Smith normal form. Returns `(S, U, V)` with `U * M * V = S`, `U` and `V`
/// unimodular, `S` diagonal with nonnegative entries `d_1 | d_2 | ...`.
pub fn snf(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let mut s = m.clone();
    let mut u = IntMatrix::identity(m.nrows());
    let mut v = IntMatrix::identity(m.ncols());
    let (rows, cols) = (s.nrows(), s.ncols());
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero magnitude in the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if s[(i, j)].is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| s[(i, j)].abs() < s[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        s.swap_rows(t, bi);
        u.swap_rows(t, bi);
        s.swap_cols(t, bj);
        v.swap_cols(t, bj);

        let mut clean = true;
        for i in t + 1..rows {
            if s[(i, t)].is_zero() {
                continue;
            }
            let q = -s[(i, t)].div_floor(&s[(t, t)]);
            s.add_row(i, t, &q);
            u.add_row(i, t, &q);
            if !s[(i, t)].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..cols {
            if s[(t, j)].is_zero() {
                continue;
            }
            let q = -s[(t, j)].div_floor(&s[(t, t)]);
            s.add_col(j, t, &q);
            v.add_col(j, t, &q);
            if !s[(t, j)].is_zero() {
                clean = false;
            }
        }
        if !clean {
            // A smaller remainder appeared; pick a new pivot.
            continue;
        }
        // Divisibility: the pivot must divide everything in the trailing block.
        let mut offender = None;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if !s[(i, j)].is_multiple_of(&s[(t, t)]) {
                    offender = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = offender {
            let one = BigInt::one();
            s.add_row(t, i, &one);
            u.add_row(t, i, &one);
            continue;
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    (s, u, v)
}

/// The diagonal of a matrix in Smith normal form.
pub fn diagonal(s: &IntMatrix) -> Vec<BigInt> {
    (0..s.nrows().min(s.ncols()))
        .map(|i| s[(i, i)].clone())
        .collect()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(m: &IntMatrix) -> BigInt {
    assert_eq!(m.nrows(), m.ncols(), "determinant of non-square matrix");
    let n = m.nrows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                return BigInt::zero();
            };
            a.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                a[(i, j)] = num / &prev;
            }
        }
        prev = a[(k, k)].clone();
    }
    sign * a[(n - 1, n - 1)].clone()
}

/// Inverse of a unimodular matrix, or `None` if `|det m| != 1`.
pub fn unimodular_inverse(m: &IntMatrix) -> Option<IntMatrix> {
    if m.nrows() != m.ncols() || !det(m).abs().is_one() {
        return None;
    }
    // HNF of a unimodular matrix is the identity, so the transform is the inverse.
    let (h, u) = hnf(m);
    debug_assert_eq!(h, IntMatrix::identity(m.nrows()));
    Some(u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn hnf_small_example() {
        let m = IntMatrix::from_i64(&[&[2, 1], &[4, 1]]);
        let (h, u) = hnf(&m);
        assert_eq!(h, IntMatrix::from_i64(&[&[2, 0], &[0, 1]]));
        assert_eq!(u.mul(&m), h);
        assert!(det(&u).abs().is_one());
    }

    #[test]
    fn hnf_identity_and_zero() {
        let id = IntMatrix::identity(3);
        let (h, u) = hnf(&id);
        assert_eq!(h, id);
        assert_eq!(u, id);

        let z = IntMatrix::zeros(2, 3);
        let (h, u) = hnf(&z);
        assert!(h.is_zero());
        assert_eq!(u, IntMatrix::identity(2));
    }

    #[test]
    fn snf_examples() {
        let m = IntMatrix::from_i64(&[&[2, 4], &[6, 8]]);
        let (s, u, v) = snf(&m);
        assert_eq!(diagonal(&s), vec![big(2), big(4)]);
        assert_eq!(u.mul(&m).mul(&v), s);

        let m = IntMatrix::from_i64(&[&[1, 0], &[0, 0]]);
        assert_eq!(diagonal(&snf(&m).0), vec![big(1), big(0)]);

        let m = IntMatrix::from_i64(&[&[0]]);
        assert_eq!(diagonal(&snf(&m).0), vec![big(0)]);
    }

    #[test]
    fn snf_needs_divisibility_fix() {
        // diag(2, 3) is not in Smith form; the result must be diag(1, 6).
        let m = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        let (s, u, v) = snf(&m);
        assert_eq!(diagonal(&s), vec![big(1), big(6)]);
        assert_eq!(u.mul(&m).mul(&v), s);
    }

    #[test]
    fn det_and_inverse() {
        let m = IntMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        assert_eq!(det(&m), big(1));
        let inv = unimodular_inverse(&m).unwrap();
        assert_eq!(inv.mul(&m), IntMatrix::identity(2));
        assert!(unimodular_inverse(&IntMatrix::from_i64(&[&[2, 0], &[0, 1]])).is_none());
        assert_eq!(
            det(&IntMatrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 5]])),
            big(-5)
        );
    }
}
