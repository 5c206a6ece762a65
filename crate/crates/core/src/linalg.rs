//! Exact linear algebra over GF(p).
//!
//! Two elimination paths share one field context: a dense row-major Gaussian
//! elimination, and an incremental sparse echelon form ([`EchelonBasis`]) that takes
//! one vector at a time and only reduces leading entries. Koszul and product matrices
//! start out very sparse, so [`rank_profile`] uses the sparse path unless the input is
//! already more than 20% full.

use serde::{Deserialize, Serialize};

use crate::field::PrimeField;

const NONE: u32 = u32::MAX;

/// Density above which elimination switches to the dense kernel.
pub const DENSE_THRESHOLD: f64 = 0.20;

/// Rank data of a matrix; `rank + kernel_dim == cols`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankProfile {
    pub rank: usize,
    pub kernel_dim: usize,
    pub rows: usize,
    pub cols: usize,
}

impl RankProfile {
    pub fn new(rank: usize, rows: usize, cols: usize) -> Self {
        debug_assert!(rank <= rows.min(cols));
        Self {
            rank,
            kernel_dim: cols - rank,
            rows,
            cols,
        }
    }
}

/// `x * c mod p` with a precomputed Shoup quotient for the fixed multiplier `c`.
#[derive(Clone, Copy)]
struct ShoupMul {
    c: u64,
    q: u64,
    p: u64,
}

impl ShoupMul {
    #[inline]
    fn new(c: u32, p: u32) -> Self {
        Self {
            c: c as u64,
            q: ((c as u64) << 32) / p as u64,
            p: p as u64,
        }
    }

    // wrapping ops cannot overflow here; they keep the loop free of overflow checks
    #[inline(always)]
    fn mul(self, x: u32) -> u32 {
        let x = x as u64;
        let q = x.wrapping_mul(self.q) >> 32;
        let r = x.wrapping_mul(self.c).wrapping_sub(q.wrapping_mul(self.p)) as u32;
        let p = self.p as u32;
        if r >= p {
            r - p
        } else {
            r
        }
    }
}

/// `dst[j] -= c * src[j]` over the whole slice.
#[inline]
fn axpy_neg(field: PrimeField, dst: &mut [u32], src: &[u32], c: u32) {
    let p = field.modulus();
    let m = ShoupMul::new(field.neg(c), p);
    for (d, &s) in dst.iter_mut().zip(src) {
        let t = d.wrapping_add(m.mul(s));
        *d = if t >= p { t.wrapping_sub(p) } else { t };
    }
}

fn scale_row(field: PrimeField, row: &mut [u32], c: u32) {
    let m = ShoupMul::new(c, field.modulus());
    for x in row {
        *x = m.mul(*x);
    }
}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, field: PrimeField, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = DenseMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                axpy_neg(field, dst, other.row(k), field.neg(a));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        let (first, second) = self.data.split_at_mut(hi * self.cols);
        first[lo * self.cols..(lo + 1) * self.cols].swap_with_slice(&mut second[..self.cols]);
    }

    /// In-place reduced row echelon form. Returns the pivot columns; the first
    /// `pivots.len()` rows hold the reduced basis, the remaining rows are zero.
    pub fn rref(&mut self, field: PrimeField) -> Vec<usize> {
        self.eliminate(field, true)
    }

    /// Rank by forward elimination only (destroys the matrix contents).
    pub fn rank_in_place(&mut self, field: PrimeField) -> usize {
        self.eliminate(field, false).len()
    }

    fn eliminate(&mut self, field: PrimeField, reduce_above: bool) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            self.swap_rows(r, piv);
            let inv = field.inv(self.get(r, c));
            scale_row(field, &mut self.data[r * cols + c..(r + 1) * cols], inv);
            let pivot_row: Vec<u32> = self.data[r * cols + c..(r + 1) * cols].to_vec();
            let first = if reduce_above { 0 } else { r + 1 };
            for i in first..rows {
                if i == r {
                    continue;
                }
                let v = self.data[i * cols + c];
                if v != 0 {
                    axpy_neg(field, &mut self.data[i * cols + c..(i + 1) * cols], &pivot_row, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }
}

/// Compressed sparse row matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<u32>,
    vals: Vec<u32>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            row_ptr: vec![0; rows + 1],
            col_idx: Vec::new(),
            vals: Vec::new(),
        }
    }

    /// Build from `(row, col, value)` triplets; duplicates are summed, zeros dropped.
    pub fn from_triplets(
        field: PrimeField,
        rows: usize,
        cols: usize,
        mut trip: Vec<(u32, u32, u32)>,
    ) -> Self {
        trip.sort_unstable_by_key(|t| (t.0, t.1));
        let mut row_ptr = vec![0usize; rows + 1];
        let mut col_idx = Vec::with_capacity(trip.len());
        let mut vals: Vec<u32> = Vec::with_capacity(trip.len());
        let mut last: Option<(u32, u32)> = None;
        let mut counts = vec![0usize; rows];
        for (r, c, v) in trip {
            assert!((r as usize) < rows && (c as usize) < cols);
            if last == Some((r, c)) {
                let x = vals.last_mut().unwrap();
                *x = field.add(*x, v);
            } else {
                col_idx.push(c);
                vals.push(v % field.modulus());
                counts[r as usize] += 1;
                last = Some((r, c));
            }
        }
        // drop cancellations
        let mut k = 0;
        let mut out_c = Vec::with_capacity(col_idx.len());
        let mut out_v = Vec::with_capacity(vals.len());
        for (r, &cnt) in counts.iter().enumerate() {
            for _ in 0..cnt {
                if vals[k] != 0 {
                    out_c.push(col_idx[k]);
                    out_v.push(vals[k]);
                }
                k += 1;
            }
            row_ptr[r + 1] = out_c.len();
        }
        Self {
            rows,
            cols,
            row_ptr,
            col_idx: out_c,
            vals: out_v,
        }
    }

    pub fn from_dense(m: &DenseMatrix) -> Self {
        let mut row_ptr = vec![0];
        let mut col_idx = Vec::new();
        let mut vals = Vec::new();
        for i in 0..m.rows() {
            for (j, &v) in m.row(i).iter().enumerate() {
                if v != 0 {
                    col_idx.push(j as u32);
                    vals.push(v);
                }
            }
            row_ptr.push(col_idx.len());
        }
        Self {
            rows: m.rows(),
            cols: m.cols(),
            row_ptr,
            col_idx,
            vals,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn density(&self) -> f64 {
        if self.rows == 0 || self.cols == 0 {
            0.0
        } else {
            self.nnz() as f64 / (self.rows as f64 * self.cols as f64)
        }
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, u32)> + '_ {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        self.col_idx[r.clone()]
            .iter()
            .zip(&self.vals[r])
            .map(|(&c, &v)| (c as usize, v))
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for (j, v) in self.row(i) {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut counts = vec![0usize; self.cols + 1];
        for &c in &self.col_idx {
            counts[c as usize + 1] += 1;
        }
        for j in 0..self.cols {
            counts[j + 1] += counts[j];
        }
        let row_ptr = counts.clone();
        let mut next = counts;
        let mut col_idx = vec![0u32; self.nnz()];
        let mut vals = vec![0u32; self.nnz()];
        for i in 0..self.rows {
            for (j, v) in self.row(i) {
                let k = next[j];
                col_idx[k] = i as u32;
                vals[k] = v;
                next[j] += 1;
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            row_ptr,
            col_idx,
            vals,
        }
    }

    /// Sparse product `self * other`.
    pub fn mul(&self, field: PrimeField, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows);
        let mut acc = vec![0u32; other.cols];
        let mut touched: Vec<u32> = Vec::new();
        let mut mark = vec![false; other.cols];
        let mut row_ptr = vec![0];
        let mut col_idx = Vec::new();
        let mut vals = Vec::new();
        for i in 0..self.rows {
            for (k, a) in self.row(i) {
                for (j, b) in other.row(k) {
                    if !mark[j] {
                        mark[j] = true;
                        touched.push(j as u32);
                    }
                    acc[j] = field.add(acc[j], field.mul(a, b));
                }
            }
            touched.sort_unstable();
            for &j in &touched {
                let j = j as usize;
                if acc[j] != 0 {
                    col_idx.push(j as u32);
                    vals.push(acc[j]);
                }
                acc[j] = 0;
                mark[j] = false;
            }
            touched.clear();
            row_ptr.push(col_idx.len());
        }
        SparseMatrix {
            rows: self.rows,
            cols: other.cols,
            row_ptr,
            col_idx,
            vals,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.nnz() == 0
    }
}

/// Exact rank and kernel dimension of a sparse matrix.
pub fn rank_profile(field: PrimeField, m: &SparseMatrix) -> RankProfile {
    let rank = if m.rows() == 0 || m.cols() == 0 || m.nnz() == 0 {
        0
    } else if m.density() > DENSE_THRESHOLD {
        m.to_dense().rank_in_place(field)
    } else {
        // eliminate along the shorter dimension
        let t;
        let src = if m.cols() <= m.rows() {
            m
        } else {
            t = m.transpose();
            &t
        };
        let mut ech = EchelonBasis::new(field, src.cols());
        for i in 0..src.rows() {
            let entries: Vec<(u32, u32)> = src.row(i).map(|(c, v)| (c as u32, v)).collect();
            ech.insert_sparse(&entries);
            if ech.rank() == src.cols() {
                break;
            }
        }
        ech.rank()
    };
    RankProfile::new(rank, m.rows(), m.cols())
}

/// Rank of a dense matrix (copied; the input is left untouched).
pub fn rank_profile_dense(field: PrimeField, m: &DenseMatrix) -> RankProfile {
    let rank = m.clone().rank_in_place(field);
    RankProfile::new(rank, m.rows(), m.cols())
}

/// A row of an echelon basis, stored sparse until it fills in.
#[derive(Debug, Clone)]
enum Row {
    Sparse(Vec<u32>, Vec<u32>),
    /// Dense tail starting at the pivot column.
    Dense(Vec<u32>),
}

/// Incremental row echelon form keyed by pivot column. Each stored row is monic at its
/// pivot and has no entries left of it; entries right of the pivot are not reduced.
#[derive(Debug, Clone)]
pub struct EchelonBasis {
    field: PrimeField,
    len: usize,
    pivot_row: Vec<u32>,
    rows: Vec<(usize, Row)>,
    acc: Vec<u32>,
}

impl EchelonBasis {
    pub fn new(field: PrimeField, len: usize) -> Self {
        Self {
            field,
            len,
            pivot_row: vec![NONE; len],
            rows: Vec::new(),
            acc: vec![0; len],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.len
    }

    pub fn has_pivot(&self, col: usize) -> bool {
        self.pivot_row[col] != NONE
    }

    /// Insert a sparse vector given as `(col, value)` pairs (any order, no duplicate
    /// columns). Returns `true` when it was independent of the current rows.
    pub fn insert_sparse(&mut self, entries: &[(u32, u32)]) -> bool {
        let mut lead = usize::MAX;
        for &(c, v) in entries {
            let v = v % self.field.modulus();
            if v != 0 {
                self.acc[c as usize] = v;
                lead = lead.min(c as usize);
            }
        }
        if lead == usize::MAX {
            return false;
        }
        self.reduce_acc_and_store(lead)
    }

    /// Insert a dense vector of length `len`.
    pub fn insert_dense(&mut self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.len);
        let Some(lead) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        for (a, &x) in self.acc.iter_mut().zip(v).skip(lead) {
            *a = x % self.field.modulus();
        }
        self.reduce_acc_and_store(lead)
    }

    /// Reduce the accumulator from `lead` on; store the remainder as a new row if
    /// nonzero. The accumulator is left zeroed.
    fn reduce_acc_and_store(&mut self, lead: usize) -> bool {
        let f = self.field;
        let mut j = lead;
        while j < self.len {
            let v = self.acc[j];
            if v == 0 {
                j += 1;
                continue;
            }
            let r = self.pivot_row[j];
            if r == NONE {
                break;
            }
            match &self.rows[r as usize].1 {
                Row::Sparse(cols, vals) => {
                    let nv = f.neg(v);
                    let m = ShoupMul::new(nv, f.modulus());
                    for (&c, &x) in cols.iter().zip(vals) {
                        let a = &mut self.acc[c as usize];
                        *a = f.add(*a, m.mul(x));
                    }
                }
                Row::Dense(tail) => {
                    axpy_neg(f, &mut self.acc[j..j + tail.len()], tail, v);
                }
            }
            debug_assert_eq!(self.acc[j], 0);
            j += 1;
        }
        if j >= self.len {
            return false;
        }
        // new pivot at j; normalize and store
        let inv = f.inv(self.acc[j]);
        let inv_m = ShoupMul::new(inv, f.modulus());
        let nnz = self.acc[j..].iter().filter(|&&x| x != 0).count();
        let tail_len = self.len - j;
        let row = if (nnz as f64) > DENSE_THRESHOLD * tail_len as f64 && tail_len > 16 {
            let mut tail: Vec<u32> = self.acc[j..].to_vec();
            for x in tail.iter_mut() {
                *x = inv_m.mul(*x);
            }
            Row::Dense(tail)
        } else {
            let mut cols = Vec::with_capacity(nnz);
            let mut vals = Vec::with_capacity(nnz);
            for (c, &x) in self.acc.iter().enumerate().skip(j) {
                if x != 0 {
                    cols.push(c as u32);
                    vals.push(inv_m.mul(x));
                }
            }
            Row::Sparse(cols, vals)
        };
        self.acc[j..].iter_mut().for_each(|x| *x = 0);
        self.pivot_row[j] = self.rows.len() as u32;
        self.rows.push((j, row));
        true
    }

    /// Whether a dense vector lies in the span.
    pub fn contains_dense(&mut self, v: &[u32]) -> bool {
        let r = self.reduce_dense(v);
        r.iter().all(|&x| x == 0)
    }

    /// Fully reduce a dense vector against the basis (every pivot entry cleared).
    pub fn reduce_dense(&mut self, v: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out: Vec<u32> = v.iter().map(|&x| x % f.modulus()).collect();
        for j in 0..self.len {
            let x = out[j];
            if x == 0 {
                continue;
            }
            let r = self.pivot_row[j];
            if r == NONE {
                continue;
            }
            match &self.rows[r as usize].1 {
                Row::Sparse(cols, vals) => {
                    for (&c, &y) in cols.iter().zip(vals) {
                        let a = &mut out[c as usize];
                        *a = f.sub(*a, f.mul(x, y));
                    }
                }
                Row::Dense(tail) => axpy_neg(f, &mut out[j..], tail, x),
            }
        }
        out
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.rows.iter().map(|(c, _)| *c).collect();
        p.sort_unstable();
        p
    }

    /// The basis in reduced row echelon form, rows ordered by pivot.
    pub fn to_rref(&self) -> (Vec<Vec<u32>>, Vec<usize>) {
        let f = self.field;
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_unstable_by_key(|&i| self.rows[i].0);
        let mut dense: Vec<Vec<u32>> = order
            .iter()
            .map(|&i| {
                let (c, row) = &self.rows[i];
                let mut v = vec![0u32; self.len];
                match row {
                    Row::Sparse(cols, vals) => {
                        for (&cc, &x) in cols.iter().zip(vals) {
                            v[cc as usize] = x;
                        }
                    }
                    Row::Dense(tail) => v[*c..].copy_from_slice(tail),
                }
                v
            })
            .collect();
        let pivots: Vec<usize> = order.iter().map(|&i| self.rows[i].0).collect();
        // back substitution, bottom up
        for k in (0..dense.len()).rev() {
            let pc = pivots[k];
            let (above, below) = dense.split_at_mut(k);
            let prow = &below[0];
            for row in above.iter_mut() {
                let x = row[pc];
                if x != 0 {
                    axpy_neg(f, &mut row[pc..], &prow[pc..], x);
                }
            }
        }
        (dense, pivots)
    }
}

/// Basis of the right kernel `{x : M x = 0}` of a dense matrix.
pub fn kernel_basis(field: PrimeField, m: &DenseMatrix) -> Vec<Vec<u32>> {
    let mut r = m.clone();
    let pivots = r.rref(field);
    let cols = m.cols();
    let mut is_pivot = vec![usize::MAX; cols];
    for (i, &c) in pivots.iter().enumerate() {
        is_pivot[c] = i;
    }
    let mut out = Vec::new();
    for free in 0..cols {
        if is_pivot[free] != usize::MAX {
            continue;
        }
        let mut v = vec![0u32; cols];
        v[free] = 1;
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = field.neg(r.get(i, free));
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf() -> PrimeField {
        PrimeField::new(65521).unwrap()
    }

    fn random_dense(rng: &mut ChaCha8Rng, rows: usize, cols: usize, fill: f64) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if rng.gen_bool(fill) {
                    m.set(i, j, rng.gen_range(0..65521));
                }
            }
        }
        m
    }

    /// Rank by elimination on columns, scanning pivots right to left: a different
    /// elimination order than both production paths.
    fn rank_reverse_columns(f: PrimeField, m: &DenseMatrix) -> usize {
        let mut a = m.transpose().row_vecs();
        let mut rank = 0;
        let cols = m.rows();
        for c in (0..cols).rev() {
            let Some(p) = (rank..a.len()).find(|&i| a[i][c] != 0) else {
                continue;
            };
            a.swap(rank, p);
            let inv = f.inv(a[rank][c]);
            for i in 0..a.len() {
                if i != rank && a[i][c] != 0 {
                    let k = f.mul(a[i][c], inv);
                    for j in 0..cols {
                        a[i][j] = f.sub(a[i][j], f.mul(k, a[rank][j]));
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn zero_and_identity() {
        let f = gf();
        let z = SparseMatrix::zeros(3, 4);
        assert_eq!(rank_profile(f, &z), RankProfile::new(0, 3, 4));
        assert_eq!(rank_profile(f, &z).kernel_dim, 4);
        let id = SparseMatrix::from_dense(&DenseMatrix::identity(5));
        let rp = rank_profile(f, &id);
        assert_eq!((rp.rank, rp.kernel_dim), (5, 0));
    }

    #[test]
    fn random_rank_matches_independent_order() {
        let f = gf();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (rows, cols, fill, rank) in [(50, 80, 1.0, 50), (80, 50, 0.05, 0), (60, 60, 0.1, 0)] {
            // low-rank products as well as full random matrices
            let m = random_dense(&mut rng, rows, cols, fill);
            if rank > 0 {
                assert_eq!(rank_reverse_columns(f, &m), rank);
            }
            let expect = rank_reverse_columns(f, &m);
            assert_eq!(rank_profile_dense(f, &m).rank, expect);
            assert_eq!(rank_profile(f, &SparseMatrix::from_dense(&m)).rank, expect);
        }
        let a = random_dense(&mut rng, 40, 7, 1.0);
        let b = random_dense(&mut rng, 7, 30, 1.0);
        let m = a.mul(f, &b);
        assert_eq!(rank_reverse_columns(f, &m), 7);
        assert_eq!(rank_profile(f, &SparseMatrix::from_dense(&m)).rank, 7);
        assert_eq!(rank_profile_dense(f, &m).rank, 7);
    }

    #[test]
    fn rank_invariant_under_row_shuffle_and_scaling() {
        let f = gf();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let a = random_dense(&mut rng, 30, 9, 0.5);
            let b = random_dense(&mut rng, 9, 25, 0.3);
            let m = a.mul(f, &b);
            let base = rank_profile(f, &SparseMatrix::from_dense(&m)).rank;
            let mut rows = m.row_vecs();
            for r in rows.iter_mut() {
                let s = rng.gen_range(1..65521);
                for x in r.iter_mut() {
                    *x = f.mul(*x, s);
                }
            }
            for i in (1..rows.len()).rev() {
                rows.swap(i, rng.gen_range(0..=i));
            }
            let shuffled = DenseMatrix::from_rows(25, &rows);
            assert_eq!(rank_profile(f, &SparseMatrix::from_dense(&shuffled)).rank, base);
            assert_eq!(rank_profile_dense(f, &shuffled).rank, base);
        }
    }

    #[test]
    fn rref_and_kernel() {
        let f = gf();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_dense(&mut rng, 12, 5, 1.0);
        let b = random_dense(&mut rng, 5, 20, 1.0);
        let m = a.mul(f, &b);
        let mut r = m.clone();
        let piv = r.rref(f);
        assert_eq!(piv.len(), 5);
        for (i, &c) in piv.iter().enumerate() {
            for k in 0..r.rows() {
                assert_eq!(r.get(k, c), u32::from(k == i));
            }
        }
        let ker = kernel_basis(f, &m);
        assert_eq!(ker.len(), 15);
        let kt = DenseMatrix::from_rows(20, &ker).transpose();
        assert!(m.mul(f, &kt).is_zero());

        let mut ech = EchelonBasis::new(f, 20);
        for row in m.row_vecs() {
            ech.insert_dense(&row);
        }
        let (rows, pivots) = ech.to_rref();
        assert_eq!(pivots, piv);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.as_slice(), r.row(i));
        }
    }

    #[test]
    fn sparse_product_and_transpose() {
        let f = gf();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let a = random_dense(&mut rng, 9, 13, 0.3);
        let b = random_dense(&mut rng, 13, 6, 0.3);
        let sa = SparseMatrix::from_dense(&a);
        let sb = SparseMatrix::from_dense(&b);
        assert_eq!(sa.mul(f, &sb).to_dense(), a.mul(f, &b));
        assert_eq!(sa.transpose().to_dense(), a.transpose());
        let t = SparseMatrix::from_triplets(f, 2, 2, vec![(0, 1, 3), (0, 1, 65518), (1, 0, 2)]);
        assert_eq!(t.nnz(), 1);
    }
}
