//! Arbitrary-precision integer and rational linear algebra: Hermite and Smith
//! normal forms, saturated integer kernels, and exact Gaussian elimination.
//!
//! Conventions: matrices are dense and row-major. The Hermite normal form is
//! row-style (`U * A = H`) with positive pivots and the entries above each
//! pivot reduced into `[0, pivot)`, so outputs are canonical and usable as
//! golden values in tests.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Int, Rat};

// ---------------------------------------------------------------------------
// vector helpers

pub fn vdot(a: &[Int], b: &[Int]) -> Int {
    assert_eq!(a.len(), b.len(), "dot product of unequal lengths");
    let mut acc = Int::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

pub fn vadd(a: &[Int], b: &[Int]) -> Vec<Int> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vsub(a: &[Int], b: &[Int]) -> Vec<Int> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vneg(a: &[Int]) -> Vec<Int> {
    a.iter().map(|x| -x).collect()
}

pub fn vscale(c: &Int, a: &[Int]) -> Vec<Int> {
    a.iter().map(|x| c * x).collect()
}

pub fn is_zero_vec(a: &[Int]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// Gcd of the entries (non-negative); zero for the zero vector.
pub fn content(a: &[Int]) -> Int {
    let mut g = Int::zero();
    for x in a {
        g = g.gcd(x);
    }
    g
}

/// Divides out the content, keeping orientation. Zero vectors are returned
/// unchanged.
pub fn primitive(a: &[Int]) -> Vec<Int> {
    let g = content(a);
    if g.is_zero() || g.is_one() {
        return a.to_vec();
    }
    a.iter().map(|x| x / &g).collect()
}

pub fn rvdot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

pub fn rvadd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn rvsub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn rvscale(c: &Rat, a: &[Rat]) -> Vec<Rat> {
    a.iter().map(|x| c * x).collect()
}

/// Pairing of an integer functional with a rational point.
pub fn irdot(a: &[Int], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        acc += Rat::from(x.clone()) * y;
    }
    acc
}

pub fn to_rat_vec(a: &[Int]) -> Vec<Rat> {
    a.iter().map(|x| Rat::from(x.clone())).collect()
}

/// Rounds a rational vector that must be integral; panics otherwise.
pub fn rat_vec_to_int(a: &[Rat]) -> Vec<Int> {
    a.iter()
        .map(|x| {
            assert!(x.is_integer(), "expected integral coordinate, got {}", x);
            x.to_integer()
        })
        .collect()
}

// ---------------------------------------------------------------------------
// integer matrices

/// Dense integer matrix, row-major, arbitrary precision.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn from_rows(rows: Vec<Vec<Int>>) -> IntMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        IntMatrix { rows: r, cols: c, data }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows.iter().map(|r| crate::ivec(r)).collect())
    }

    pub fn zero(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Int::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * other.at(k, j);
                    *out.at_mut(i, j) += add;
                }
            }
        }
        out
    }

    /// Matrix-vector product `A * v`.
    pub fn apply(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len(), "shape mismatch in apply");
        (0..self.rows).map(|i| vdot(self.row(i), v)).collect()
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

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.at(r, j).clone();
            *self.at_mut(r, j) = v;
        }
    }

    /// row[dst] += c * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let add = c * self.at(src, j);
            *self.at_mut(dst, j) += add;
        }
    }

    fn add_col_multiple(&mut self, dst: usize, src: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let add = c * self.at(i, src);
            *self.at_mut(i, dst) += add;
        }
    }

    /// Replaces rows (a, b) by (x·a + y·b, p·a + q·b); the 2x2 transform must
    /// be unimodular (callers pass extended-gcd data).
    fn combine_rows(&mut self, a: usize, b: usize, x: &Int, y: &Int, p: &Int, q: &Int) {
        for j in 0..self.cols {
            let va = self.at(a, j).clone();
            let vb = self.at(b, j).clone();
            *self.at_mut(a, j) = x * &va + y * &vb;
            *self.at_mut(b, j) = p * &va + q * &vb;
        }
    }

    fn combine_cols(&mut self, a: usize, b: usize, x: &Int, y: &Int, p: &Int, q: &Int) {
        for i in 0..self.rows {
            let va = self.at(i, a).clone();
            let vb = self.at(i, b).clone();
            *self.at_mut(i, a) = x * &va + y * &vb;
            *self.at_mut(i, b) = p * &va + q * &vb;
        }
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        is_zero_vec(self.row(i))
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Int {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut m = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if m.at(k, k).is_zero() {
                let pivot = (k + 1..n).find(|&r| !m.at(r, k).is_zero());
                match pivot {
                    Some(r) => {
                        m.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                    *m.at_mut(i, j) = num / &prev;
                }
                *m.at_mut(i, k) = Int::zero();
            }
            prev = m.at(k, k).clone();
        }
        sign * m.at(n - 1, n - 1).clone()
    }

    pub fn rank(&self) -> usize {
        let h = hermite_normal_form(self).h;
        (0..h.rows()).filter(|&i| !h.is_zero_row(i)).count()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

// ---------------------------------------------------------------------------
// Hermite normal form

pub struct Hnf {
    /// Row Hermite form of the input.
    pub h: IntMatrix,
    /// Unimodular transform with `u * a = h`.
    pub u: IntMatrix,
}

/// Row-style Hermite normal form. Pivots are positive, entries above each
/// pivot lie in `[0, pivot)`, zero rows sink to the bottom.
pub fn hermite_normal_form(a: &IntMatrix) -> Hnf {
    let m = a.rows();
    let n = a.cols();
    let mut h = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut pr = 0usize;
    for col in 0..n {
        if pr == m {
            break;
        }
        let pivot = (pr..m).find(|&r| !h.at(r, col).is_zero());
        let Some(pivot) = pivot else { continue };
        h.swap_rows(pr, pivot);
        u.swap_rows(pr, pivot);
        for r in pr + 1..m {
            if h.at(r, col).is_zero() {
                continue;
            }
            let a0 = h.at(pr, col).clone();
            let b0 = h.at(r, col).clone();
            let eg = a0.extended_gcd(&b0);
            let (mut g, mut x, mut y) = (eg.gcd, eg.x, eg.y);
            if g.is_negative() {
                g = -g;
                x = -x;
                y = -y;
            }
            let p = -(&b0 / &g);
            let q = &a0 / &g;
            // det of [[x, y], [p, q]] = x*q - y*p = (x*a0 + y*b0)/g = 1
            h.combine_rows(pr, r, &x, &y, &p, &q);
            u.combine_rows(pr, r, &x, &y, &p, &q);
        }
        if h.at(pr, col).is_negative() {
            h.negate_row(pr);
            u.negate_row(pr);
        }
        let piv = h.at(pr, col).clone();
        for r in 0..pr {
            let q = h.at(r, col).div_floor(&piv);
            let c = -q;
            h.add_row_multiple(r, pr, &c);
            u.add_row_multiple(r, pr, &c);
        }
        pr += 1;
    }
    Hnf { h, u }
}

/// Canonical basis of the saturated lattice `{v : A v = 0}`, as the rows of
/// the kernel's own Hermite form.
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<Int>> {
    let at = a.transpose();
    let hnf = hermite_normal_form(&at);
    let mut basis: Vec<Vec<Int>> = Vec::new();
    for i in 0..hnf.h.rows() {
        if hnf.h.is_zero_row(i) {
            basis.push(hnf.u.row(i).to_vec());
        }
    }
    if basis.is_empty() {
        return basis;
    }
    let canon = hermite_normal_form(&IntMatrix::from_rows(basis));
    (0..canon.h.rows())
        .filter(|&i| !canon.h.is_zero_row(i))
        .map(|i| canon.h.row(i).to_vec())
        .collect()
}

// ---------------------------------------------------------------------------
// Smith normal form

pub struct Snf {
    /// Diagonal matrix with the divisibility chain d1 | d2 | ...
    pub s: IntMatrix,
    /// Unimodular row transform.
    pub u: IntMatrix,
    /// Unimodular column transform; `u * a * v = s`.
    pub v: IntMatrix,
    /// The nonzero diagonal entries.
    pub divisors: Vec<Int>,
}

pub fn smith_normal_form(a: &IntMatrix) -> Snf {
    let m = a.rows();
    let n = a.cols();
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let steps = m.min(n);
    for t in 0..steps {
        // Deterministic pivot: smallest |value| among nonzero entries of the
        // trailing submatrix, ties broken by position.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if s.at(i, j).is_zero() {
                    continue;
                }
                match pivot {
                    None => pivot = Some((i, j)),
                    Some((pi, pj)) => {
                        if s.at(i, j).abs() < s.at(pi, pj).abs() {
                            pivot = Some((i, j));
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            for r in t + 1..m {
                if s.at(r, t).is_zero() {
                    continue;
                }
                let a0 = s.at(t, t).clone();
                let b0 = s.at(r, t).clone();
                // When the pivot already divides the entry, subtract a plain
                // multiple so the pivot row stays fixed; the extended-gcd
                // combine below would otherwise shuffle rows without shrinking
                // the pivot and the clear/re-clear cycle need not terminate.
                if (&b0 % &a0).is_zero() {
                    let q = -(&b0 / &a0);
                    s.add_row_multiple(r, t, &q);
                    u.add_row_multiple(r, t, &q);
                    continue;
                }
                let eg = a0.extended_gcd(&b0);
                let (mut g, mut x, mut y) = (eg.gcd, eg.x, eg.y);
                if g.is_negative() {
                    g = -g;
                    x = -x;
                    y = -y;
                }
                let p = -(&b0 / &g);
                let q = &a0 / &g;
                s.combine_rows(t, r, &x, &y, &p, &q);
                u.combine_rows(t, r, &x, &y, &p, &q);
            }
            for c in t + 1..n {
                if s.at(t, c).is_zero() {
                    continue;
                }
                let a0 = s.at(t, t).clone();
                let b0 = s.at(t, c).clone();
                if (&b0 % &a0).is_zero() {
                    let q = -(&b0 / &a0);
                    s.add_col_multiple(c, t, &q);
                    v.add_col_multiple(c, t, &q);
                    continue;
                }
                let eg = a0.extended_gcd(&b0);
                let (mut g, mut x, mut y) = (eg.gcd, eg.x, eg.y);
                if g.is_negative() {
                    g = -g;
                    x = -x;
                    y = -y;
                }
                let p = -(&b0 / &g);
                let q = &a0 / &g;
                s.combine_cols(t, c, &x, &y, &p, &q);
                v.combine_cols(t, c, &x, &y, &p, &q);
            }
            let col_clear = (t + 1..m).all(|r| s.at(r, t).is_zero());
            let row_clear = (t + 1..n).all(|c| s.at(t, c).is_zero());
            if !(col_clear && row_clear) {
                continue;
            }
            let d = s.at(t, t).clone();
            let mut fixed = false;
            'scan: for i in t + 1..m {
                for j in t + 1..n {
                    if !s.at(i, j).mod_floor(&d).is_zero() {
                        s.add_row_multiple(t, i, &Int::one());
                        u.add_row_multiple(t, i, &Int::one());
                        fixed = true;
                        break 'scan;
                    }
                }
            }
            if !fixed {
                break;
            }
        }
        if s.at(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    let divisors = (0..steps)
        .map(|t| s.at(t, t).clone())
        .filter(|d| !d.is_zero())
        .collect();
    Snf { s, u, v, divisors }
}

// ---------------------------------------------------------------------------
// exact rational elimination

/// Reduces `rows` in place to reduced row echelon form; returns the pivot
/// columns in order.
pub fn rref(rows: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let m = rows.len();
    if m == 0 {
        return Vec::new();
    }
    let n = rows[0].len();
    let mut pivots = Vec::new();
    let mut pr = 0usize;
    for col in 0..n {
        if pr == m {
            break;
        }
        let Some(pivot) = (pr..m).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pr, pivot);
        let inv = rows[pr][col].clone();
        for x in rows[pr].iter_mut() {
            *x = &*x / &inv;
        }
        for r in 0..m {
            if r == pr || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            for j in 0..n {
                let sub = &factor * &rows[pr][j];
                rows[r][j] -= sub;
            }
        }
        pivots.push(col);
        pr += 1;
    }
    pivots
}

pub fn rat_rank(rows: &[Vec<Rat>]) -> usize {
    let mut work = rows.to_vec();
    rref(&mut work).len()
}

pub fn int_rows_rank(rows: &[Vec<Int>]) -> usize {
    rat_rank(&rows.iter().map(|r| to_rat_vec(r)).collect::<Vec<_>>())
}

/// One exact solution of `A x = b` (rows of `a`), free variables set to zero;
/// `None` if inconsistent.
pub fn rat_solve(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(a.len(), b.len(), "solve: row/rhs mismatch");
    if a.is_empty() {
        return Some(Vec::new());
    }
    let n = a[0].len();
    let mut work: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut work);
    if pivots.contains(&n) {
        return None; // pivot in the augmented column
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = work[i][n].clone();
    }
    Some(x)
}

/// Like `rat_nullspace`, but with the ambient dimension made explicit so the
/// empty system returns the standard basis.
pub fn rat_nullspace_of(rows: &[Vec<Rat>], n: usize) -> Vec<Vec<Rat>> {
    if rows.is_empty() {
        return (0..n)
            .map(|i| {
                let mut v = vec![Rat::zero(); n];
                v[i] = Rat::one();
                v
            })
            .collect();
    }
    rat_nullspace(rows)
}

/// Exact determinant of a square rational matrix.
pub fn rat_det(rows: &[Vec<Rat>]) -> Rat {
    let n = rows.len();
    if n == 0 {
        return Rat::one();
    }
    assert!(rows.iter().all(|r| r.len() == n), "determinant of non-square matrix");
    let mut m = rows.to_vec();
    let mut det = Rat::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return Rat::zero();
        };
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        det *= &m[k][k];
        let pivot = m[k][k].clone();
        for r in k + 1..n {
            if m[r][k].is_zero() {
                continue;
            }
            let f = &m[r][k] / &pivot;
            for c in k..n {
                let sub = &f * &m[k][c];
                m[r][c] -= sub;
            }
        }
    }
    det
}

/// Basis of the rational nullspace `{x : A x = 0}`.
pub fn rat_nullspace(a: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    if a.is_empty() {
        return Vec::new();
    }
    let n = a[0].len();
    let mut work = a.to_vec();
    let pivots = rref(&mut work);
    let pivot_set: Vec<bool> = {
        let mut s = vec![false; n];
        for &c in &pivots {
            s[c] = true;
        }
        s
    };
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_set[free] {
            continue;
        }
        let mut v = vec![Rat::zero(); n];
        v[free] = Rat::one();
        for (i, &col) in pivots.iter().enumerate() {
            v[col] = -work[i][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Solves `A x = b` for integer `x`, if an integral solution exists.
/// Uses the Hermite form of the transpose: solutions of `x^T A^T = b^T`.
pub fn int_solve(a: &IntMatrix, b: &[Int]) -> Option<Vec<Int>> {
    assert_eq!(a.rows(), b.len(), "int_solve: shape mismatch");
    // Solve over Q first, then clear denominators against the kernel lattice;
    // simpler: HNF of A^T gives U A^T = H; we need x with A x = b, i.e.
    // (x^T)(A^T)^T ... work with y = x: A x = b  <=>  x^T A^T = b^T.
    // Row-reduce [A^T | I] so that solving becomes back-substitution on H.
    let at = a.transpose(); // cols(a) x rows(a)
    let hnf = hermite_normal_form(&at);
    // x^T A^T = b^T  <=>  (x^T U^{-1}) (U A^T) = b^T  <=>  z H = b^T with
    // x^T = z U. Solve z H = b^T over the integers by forward substitution.
    let h = &hnf.h;
    let m = h.rows();
    let n = h.cols();
    let mut z = vec![Int::zero(); m];
    let mut rem: Vec<Int> = b.to_vec();
    for i in 0..m {
        // pivot column of row i
        let Some(pc) = (0..n).find(|&j| !h.at(i, j).is_zero()) else {
            break;
        };
        let piv = h.at(i, pc);
        if rem[pc].mod_floor(piv).is_zero() {
            let q = rem[pc].div_floor(piv);
            if !q.is_zero() {
                for j in 0..n {
                    let sub = &q * h.at(i, j);
                    rem[j] -= sub;
                }
            }
            z[i] = q;
        }
    }
    if rem.iter().any(|x| !x.is_zero()) {
        return None;
    }
    // x = z * U
    let mut x = vec![Int::zero(); hnf.u.cols()];
    for (i, zi) in z.iter().enumerate() {
        if zi.is_zero() {
            continue;
        }
        for j in 0..hnf.u.cols() {
            let add = zi * hnf.u.at(i, j);
            x[j] += add;
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, ivec};

    fn im(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    #[test]
    fn hnf_identity_is_fixed() {
        let a = IntMatrix::identity(3);
        let hnf = hermite_normal_form(&a);
        assert_eq!(hnf.h, a);
        assert_eq!(hnf.u, a);
    }

    #[test]
    fn hnf_two_by_two() {
        let a = im(&[&[2, 4], &[6, 8]]);
        let hnf = hermite_normal_form(&a);
        assert_eq!(hnf.h, im(&[&[2, 0], &[0, 4]]));
        assert_eq!(hnf.u.mul(&a), hnf.h);
        assert_eq!(hnf.u.det().abs(), int(1));
    }

    #[test]
    fn hnf_reduces_above_pivots() {
        let a = im(&[&[1, 7], &[0, 3]]);
        let hnf = hermite_normal_form(&a);
        assert_eq!(hnf.h, im(&[&[1, 1], &[0, 3]]));
    }

    #[test]
    fn hnf_handles_zero_rows_and_rectangles() {
        let a = im(&[&[0, 0, 0], &[2, 4, 6]]);
        let hnf = hermite_normal_form(&a);
        assert_eq!(hnf.h, im(&[&[2, 4, 6], &[0, 0, 0]]));
        assert_eq!(hnf.u.mul(&a), hnf.h);
    }

    #[test]
    fn kernel_of_zero_map_is_standard_basis() {
        let a = im(&[&[0, 0, 0]]);
        let k = integer_kernel(&a);
        assert_eq!(k, IntMatrix::identity(3).row_vecs());
    }

    #[test]
    fn kernel_of_difference_functional() {
        let a = im(&[&[1, -1]]);
        let k = integer_kernel(&a);
        assert_eq!(k, alloc::vec![ivec(&[1, 1])]);
    }

    #[test]
    fn kernel_is_saturated() {
        // (2, 4) and (1, 2) span the same rational line; the kernel of the
        // projection must be generated by the primitive vector.
        let a = im(&[&[2, -1, 0]]);
        let k = integer_kernel(&a);
        assert_eq!(k, alloc::vec![ivec(&[1, 2, 0]), ivec(&[0, 0, 1])]);
        for v in &k {
            assert!(is_zero_vec(&a.apply(v)));
        }
    }

    #[test]
    fn snf_two_by_two() {
        let a = im(&[&[2, 0], &[0, 3]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.divisors, alloc::vec![int(1), int(6)]);
        assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.s);
        assert_eq!(snf.u.det().abs(), int(1));
        assert_eq!(snf.v.det().abs(), int(1));
    }

    #[test]
    fn snf_identity() {
        let a = IntMatrix::identity(4);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.s, a);
    }

    #[test]
    fn snf_divisibility_chain() {
        let a = im(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.s);
        for w in snf.divisors.windows(2) {
            assert!(w[1].mod_floor(&w[0]).is_zero(), "chain broken: {:?}", snf.divisors);
        }
    }

    #[test]
    fn snf_rectangular_unimodular_columns() {
        // Tall matrix of unit entries; the pivot divides everything at each
        // step, which exercises the plain-subtraction path.
        let a = im(&[&[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.divisors, alloc::vec![int(1), int(1), int(1)]);
        assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.s);
        assert_eq!(snf.u.det().abs(), int(1));
        assert_eq!(snf.v.det().abs(), int(1));
    }

    #[test]
    fn snf_wide_with_torsion() {
        let a = im(&[&[2, 0, 0, 4], &[0, 6, 2, 0]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.s);
        assert_eq!(snf.divisors, alloc::vec![int(2), int(2)]);
    }

    #[test]
    fn bareiss_determinant() {
        assert_eq!(im(&[&[3]]).det(), int(3));
        assert_eq!(im(&[&[1, 2], &[3, 4]]).det(), int(-2));
        assert_eq!(im(&[&[2, 0, 1], &[1, 1, 0], &[0, 3, 1]]).det(), int(5));
        assert_eq!(im(&[&[1, 2], &[2, 4]]).det(), int(0));
    }

    #[test]
    fn rank_plus_kernel_is_cols() {
        let mats = [
            im(&[&[1, 2, 3], &[4, 5, 6]]),
            im(&[&[1, 2, 3], &[2, 4, 6]]),
            im(&[&[0, 0], &[0, 0]]),
            im(&[&[5]]),
        ];
        for a in mats {
            assert_eq!(a.rank() + integer_kernel(&a).len(), a.cols());
        }
    }

    #[test]
    fn rational_solve_and_nullspace() {
        let a = alloc::vec![
            alloc::vec![Rat::from(int(1)), Rat::from(int(1))],
            alloc::vec![Rat::from(int(1)), Rat::from(int(-1))],
        ];
        let b = alloc::vec![Rat::from(int(4)), Rat::from(int(0))];
        let x = rat_solve(&a, &b).unwrap();
        assert_eq!(x, alloc::vec![Rat::from(int(2)), Rat::from(int(2))]);

        let dep = alloc::vec![alloc::vec![
            Rat::from(int(1)),
            Rat::from(int(2)),
            Rat::from(int(-1))
        ]];
        let ns = rat_nullspace(&dep);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(rvdot(&dep[0], &v).is_zero());
        }

        let inconsistent = alloc::vec![
            alloc::vec![Rat::from(int(1)), Rat::from(int(0))],
            alloc::vec![Rat::from(int(1)), Rat::from(int(0))],
        ];
        let b2 = alloc::vec![Rat::from(int(1)), Rat::from(int(2))];
        assert!(rat_solve(&inconsistent, &b2).is_none());
    }

    #[test]
    fn integral_solve() {
        let a = im(&[&[2, 0], &[0, 3]]);
        assert_eq!(int_solve(&a, &ivec(&[4, 9])), Some(ivec(&[2, 3])));
        assert_eq!(int_solve(&a, &ivec(&[1, 0])), None);
        // underdetermined but integrally solvable
        let b = im(&[&[2, 3]]);
        let x = int_solve(&b, &ivec(&[1])).unwrap();
        assert_eq!(vdot(&b.row(0), &x), int(1));
    }

    #[test]
    fn ray_matrix_rank_and_kernel() {
        // 5x7 ray map in the basis (E1, E2, E3, E4, e3); columns are the rays
        // s0, s1, x, x2, x3, x4, x5 of the ambient fan.
        let rays = im(&[
            &[0, -1, -1, 1, 0, 0, 0],
            &[0, -1, -1, 0, 1, 0, 0],
            &[-1, 0, -1, 0, 0, 1, 0],
            &[-1, 0, -1, 0, 0, 0, 1],
            &[1, -1, 0, 0, 0, 0, 0],
        ]);
        let hnf = hermite_normal_form(&rays);
        let nonzero = (0..5).filter(|&i| !hnf.h.is_zero_row(i)).count();
        assert_eq!(nonzero, 5);
        let k = integer_kernel(&rays);
        assert_eq!(k.len(), 2);
        // canonical HNF basis of the span of (1,1,-1,0,0,0,0), (0,0,1,1,1,1,1)
        assert_eq!(k[0], ivec(&[1, 1, 0, 1, 1, 1, 1]));
        assert_eq!(k[1], ivec(&[0, 0, 1, 1, 1, 1, 1]));
        for v in &k {
            assert!(is_zero_vec(&rays.apply(v)));
        }
    }
}
