//! Integer matrices, Hermite row reduction and Smith normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
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
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows_i64(cols: usize, rows: &[Vec<i64>]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged row");
            for (j, x) in r.iter().enumerate() {
                m.data[i * cols + j] = BigInt::from(*x);
            }
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r);
        }
        IntMatrix { rows: n, cols, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_i64()).collect())
            .collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] += a * other.get(k, j);
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.rows, "shape mismatch");
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += xi * self.get(i, j);
            }
        }
        out
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
            let v = self.data[src * self.cols + j].clone();
            self.data[dst * self.cols + j] += q * v;
        }
    }

    /// col[dst] += q * col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.data[i * self.cols + src].clone();
            self.data[i * self.cols + dst] += q * v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = v;
        }
    }
}

/// Row-style Hermite normal form of the lattice spanned by `rows`: nonzero
/// rows in echelon form with positive pivots and entries above each pivot
/// reduced into `[0, pivot)`.
pub fn hermite_rows(cols: usize, rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for col in 0..cols {
        // gcd-combine all remaining rows on this column into one pivot row
        loop {
            let mut best: Option<usize> = None;
            for (i, r) in a.iter().enumerate() {
                if !r[col].is_zero() && best.is_none_or(|b| r[col].abs() < a[b][col].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            let mut done = true;
            let pivot_row = a[b].clone();
            for i in 0..a.len() {
                if i == b || a[i][col].is_zero() {
                    continue;
                }
                let q = a[i][col].div_floor(&pivot_row[col]);
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
                if !a[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                let mut p = a.swap_remove(b);
                if p[col].is_negative() {
                    for x in p.iter_mut() {
                        *x = -std::mem::take(x);
                    }
                }
                out.push(p);
                pivots.push(col);
                a.retain(|r| r.iter().any(|x| !x.is_zero()));
                break;
            }
        }
    }
    // reduce above pivots
    for k in 0..out.len() {
        let col = pivots[k];
        let p = out[k].clone();
        for r in out.iter_mut().take(k) {
            let q = r[col].div_floor(&p[col]);
            if !q.is_zero() {
                for (x, y) in r.iter_mut().zip(&p) {
                    *x -= &q * y;
                }
            }
        }
    }
    out
}

pub fn hermite_rows_i64(cols: usize, rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let big: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    hermite_rows(cols, &big)
        .into_iter()
        .map(|r| r.iter().map(|x| x.to_i64().expect("entry fits in i64")).collect())
        .collect()
}

/// Solve `x · basis = y` for a Hermite basis, if `y` is in the span.
pub fn solve_in_hermite(basis: &[Vec<BigInt>], y: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut rest: Vec<BigInt> = y.to_vec();
    let mut x = Vec::with_capacity(basis.len());
    for r in basis {
        let col = r.iter().position(|v| !v.is_zero())?;
        let (q, rem) = rest[col].div_rem(&r[col]);
        if !rem.is_zero() {
            return None;
        }
        for (a, b) in rest.iter_mut().zip(r) {
            *a -= &q * b;
        }
        x.push(q);
    }
    if rest.iter().all(|v| v.is_zero()) {
        Some(x)
    } else {
        None
    }
}

/// `P · A · Q = D` with `P`, `Q` unimodular and `D` diagonal with
/// `d_1 | d_2 | ⋯`, nonnegative.
#[derive(Debug, Clone)]
pub struct Smith {
    pub d: IntMatrix,
    pub p: IntMatrix,
    pub q: IntMatrix,
}

impl Smith {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> Smith {
    let (d, p, q) = smith_impl(a.clone(), true, true);
    Smith {
        d,
        p: p.expect("tracked"),
        q: q.expect("tracked"),
    }
}

/// Diagonal and column transform only, which is all a cokernel needs.
pub(crate) fn smith_columns(a: IntMatrix) -> (IntMatrix, IntMatrix) {
    let (d, _, q) = smith_impl(a, false, true);
    (d, q.expect("tracked"))
}

fn smith_impl(
    mut a: IntMatrix,
    track_p: bool,
    track_q: bool,
) -> (IntMatrix, Option<IntMatrix>, Option<IntMatrix>) {
    let mut p = track_p.then(|| IntMatrix::identity(a.rows));
    let mut q = track_q.then(|| IntMatrix::identity(a.cols));
    let n = a.rows.min(a.cols);
    let mut t = 0;
    while t < n {
        // smallest nonzero entry in the lower-right block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..a.rows {
            for j in t..a.cols {
                let v = a.get(i, j);
                if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < a.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap_rows(t, bi);
        if let Some(p) = p.as_mut() {
            p.swap_rows(t, bi);
        }
        a.swap_cols(t, bj);
        if let Some(q) = q.as_mut() {
            q.swap_cols(t, bj);
        }

        let mut clean = true;
        for i in t + 1..a.rows {
            if a.get(i, t).is_zero() {
                continue;
            }
            let f = -a.get(i, t).div_floor(a.get(t, t));
            a.add_row(i, t, &f);
            if let Some(p) = p.as_mut() {
                p.add_row(i, t, &f);
            }
            if !a.get(i, t).is_zero() {
                clean = false;
            }
        }
        for j in t + 1..a.cols {
            if a.get(t, j).is_zero() {
                continue;
            }
            let f = -a.get(t, j).div_floor(a.get(t, t));
            a.add_col(j, t, &f);
            if let Some(q) = q.as_mut() {
                q.add_col(j, t, &f);
            }
            if !a.get(t, j).is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // divisibility: fold an offending row into the pivot row and retry
        let piv = a.get(t, t).clone();
        let mut offending = None;
        'outer: for i in t + 1..a.rows {
            for j in t + 1..a.cols {
                if !a.get(i, j).is_multiple_of(&piv) {
                    offending = Some(i);
                    break 'outer;
                }
            }
        }
        if let Some(i) = offending {
            a.add_row(t, i, &BigInt::one());
            if let Some(p) = p.as_mut() {
                p.add_row(t, i, &BigInt::one());
            }
            continue;
        }
        if piv.is_negative() {
            a.negate_row(t);
            if let Some(p) = p.as_mut() {
                p.negate_row(t);
            }
        }
        t += 1;
    }
    (a, p, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(cols: usize, rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows_i64(cols, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    fn diag(s: &Smith) -> Vec<i64> {
        s.diagonal().iter().map(|x| x.to_i64().unwrap()).collect()
    }

    #[test]
    fn classic_example() {
        let a = m(3, &[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith_normal_form(&a);
        assert_eq!(diag(&s), vec![2, 6, 12]);
        assert_eq!(s.p.mul(&a).mul(&s.q), s.d);
    }

    #[test]
    fn rectangular_and_zero() {
        let a = m(2, &[&[0, 0], &[0, 0], &[0, 0]]);
        let s = smith_normal_form(&a);
        assert_eq!(diag(&s), vec![0, 0]);
        let b = m(3, &[&[2, 0, 0], &[0, 3, 0]]);
        let s = smith_normal_form(&b);
        assert_eq!(diag(&s), vec![1, 6]);
        assert_eq!(s.p.mul(&b).mul(&s.q), s.d);
    }

    #[test]
    fn hermite_basis_and_solve() {
        let rows = vec![vec![2, 4], vec![6, 8], vec![0, 0]];
        let h = hermite_rows_i64(2, &rows);
        assert_eq!(h, vec![vec![2, 0], vec![0, 4]]);
        let hb: Vec<Vec<BigInt>> = h
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let y = vec![BigInt::from(4), BigInt::from(-8)];
        assert_eq!(
            solve_in_hermite(&hb, &y).unwrap(),
            vec![BigInt::from(2), BigInt::from(-2)]
        );
        assert!(solve_in_hermite(&hb, &[BigInt::from(1), BigInt::from(0)]).is_none());
    }
}
