//! Koszul complexes of a linear system `W ⊂ S^N` acting on `S` or on a Jacobian ring:
//!
//! ```text
//! M^a ⊗ Λ^{s+1} W  --δ_in-->  M^{a+N} ⊗ Λ^s W  --δ_out-->  M^{a+2N} ⊗ Λ^{s-1} W
//! ```
//!
//! with `δ(m ⊗ w_{i0} ∧ ... ∧ w_{is}) = Σ_j (-1)^j (w_{ij} m) ⊗ (wedge without w_{ij})`.
//! The basis of `W` is its row-reduced basis; exterior powers use increasing index tuples
//! in lexicographic order and a tensor `(m, J)` sits at `m * C(w, |J|) + rank(J)`.

use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::jacobian::{certify, JacobianRing};
use crate::linalg::{EchelonBasis, SparseMatrix};
use crate::monomial::ProductTable;
use crate::quotient::GradedQuotient;
use crate::ring::PolyRing;
use crate::sampling::{random_bpf_subspace, random_hyperplane_containing, DEFAULT_ATTEMPTS};
use crate::subspace::GradedSubspace;

/// Coefficient module of the complex.
#[derive(Debug, Clone, Copy)]
pub enum ModuleKind<'a> {
    Polynomial,
    Jacobian(&'a JacobianRing),
    Quotient(&'a GradedQuotient),
}

impl ModuleKind<'_> {
    pub fn label(&self) -> &'static str {
        match self {
            ModuleKind::Polynomial => "S",
            ModuleKind::Jacobian(_) => "R_f",
            ModuleKind::Quotient(_) => "S/I",
        }
    }

    fn dim(&self, ring: PolyRing, k: i64) -> Result<usize> {
        match self {
            ModuleKind::Polynomial => ring.dim(k),
            ModuleKind::Jacobian(r) => r.hilbert(k),
            ModuleKind::Quotient(q) => q.hilbert(k),
        }
    }
}

/// `C(n, k)` for small arguments.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All increasing `k`-tuples from `0..n`, in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(n, k));
    if k > n {
        return out;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        let Some(i) = (0..k).rev().find(|&i| c[i] < n - k + i) else {
            return out;
        };
        c[i] += 1;
        for j in i + 1..k {
            c[j] = c[j - 1] + 1;
        }
    }
}

/// Position of an increasing tuple in [`combinations`]`(n, tuple.len())`.
pub fn combination_rank(n: usize, tuple: &[usize]) -> usize {
    let k = tuple.len();
    let mut rank = 0;
    let mut prev = 0;
    for (t, &v) in tuple.iter().enumerate() {
        for skipped in prev..v {
            rank += binomial(n - skipped - 1, k - t - 1);
        }
        prev = v + 1;
    }
    rank
}

/// Multiplication by each basis vector of `W`: `table[j][b]` is the sparse image of the
/// `b`-th basis element of `M^k` in `M^{k+N}`.
type Action = Vec<Vec<Vec<(u32, u32)>>>;

fn action(kind: ModuleKind, w: &GradedSubspace, k: i64) -> Result<Action> {
    let ring = w.ring();
    let n = ring.nvars();
    let big_n = w.degree();
    let f = ring.field();
    let src = kind.dim(ring, k)?;
    let tgt = kind.dim(ring, k + big_n as i64)?;
    let rows: Vec<Vec<(usize, u32)>> = w
        .basis()
        .iter()
        .map(|v| {
            v.iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (i, c))
                .collect()
        })
        .collect();
    if src == 0 || tgt == 0 {
        return Ok(vec![vec![Vec::new(); src]; rows.len()]);
    }
    let k = k as usize;
    let table = ProductTable::new(n, k, big_n);
    let out = match kind {
        ModuleKind::Polynomial => rows
            .iter()
            .map(|wv| {
                (0..src)
                    .map(|b| {
                        let mut img: Vec<(u32, u32)> =
                            wv.iter().map(|&(v, c)| (table.get(b, v) as u32, c)).collect();
                        img.sort_unstable();
                        img
                    })
                    .collect()
            })
            .collect(),
        ModuleKind::Jacobian(_) | ModuleKind::Quotient(_) => {
            let q = match kind {
                ModuleKind::Jacobian(r) => r.quotient(),
                ModuleKind::Quotient(q) => q,
                ModuleKind::Polynomial => unreachable!(),
            };
            let std = q.standard_indices(k)?.to_vec();
            let mut acc = vec![0u32; tgt];
            rows.iter()
                .map(|wv| {
                    std.iter()
                        .map(|&b| {
                            acc.iter_mut().for_each(|x| *x = 0);
                            for &(v, c) in wv {
                                let nf = q.nf_row(k + big_n, table.get(b as usize, v))?;
                                for (a, &y) in acc.iter_mut().zip(nf) {
                                    if y != 0 {
                                        *a = f.add(*a, f.mul(c, y));
                                    }
                                }
                            }
                            Ok(acc
                                .iter()
                                .enumerate()
                                .filter(|(_, &x)| x != 0)
                                .map(|(i, &x)| (i as u32, x))
                                .collect())
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?
        }
    };
    Ok(out)
}

/// The Koszul differential `M^k ⊗ Λ^e W -> M^{k+N} ⊗ Λ^{e-1} W`, built column by column.
/// Returns the columns as sparse vectors in the target.
fn differential_columns(
    f: PrimeField,
    act: &Action,
    src_dim: usize,
    w: usize,
    e: usize,
) -> Vec<Vec<(u32, u32)>> {
    if e == 0 {
        return vec![Vec::new(); src_dim];
    }
    let combos = combinations(w, e);
    let lower = binomial(w, e - 1);
    // rank of J minus its t-th entry
    let faces: Vec<Vec<usize>> = combos
        .iter()
        .map(|j| {
            (0..e)
                .map(|t| {
                    let mut face = j.clone();
                    face.remove(t);
                    combination_rank(w, &face)
                })
                .collect()
        })
        .collect();
    let mut cols = Vec::with_capacity(src_dim * combos.len());
    for m in 0..src_dim {
        for (j, face) in combos.iter().zip(&faces) {
            let mut col: Vec<(u32, u32)> = Vec::new();
            for (t, (&i, &fr)) in j.iter().zip(face).enumerate() {
                for &(tm, c) in &act[i][m] {
                    let v = if t % 2 == 0 { c } else { f.neg(c) };
                    col.push(((tm as usize * lower + fr) as u32, v));
                }
            }
            col.sort_unstable_by_key(|&(r, _)| r);
            cols.push(col);
        }
    }
    cols
}

fn to_sparse(rows: usize, cols: &[Vec<(u32, u32)>], f: PrimeField) -> SparseMatrix {
    let trip = cols
        .iter()
        .enumerate()
        .flat_map(|(c, col)| col.iter().map(move |&(r, v)| (r, c as u32, v)))
        .collect();
    SparseMatrix::from_triplets(f, rows, cols.len(), trip)
}

/// Rank of the span of sparse vectors of length `len`, stopping once `cap` is reached.
fn span_rank(f: PrimeField, len: usize, vecs: &[Vec<(u32, u32)>], cap: usize) -> usize {
    let mut ech = EchelonBasis::new(f, len);
    for v in vecs {
        if ech.rank() >= cap {
            break;
        }
        ech.insert_sparse(v);
    }
    ech.rank()
}

fn transpose_cols(rows: usize, cols: &[Vec<(u32, u32)>]) -> Vec<Vec<(u32, u32)>> {
    let mut out = vec![Vec::new(); rows];
    for (c, col) in cols.iter().enumerate() {
        for &(r, v) in col {
            out[r as usize].push((c as u32, v));
        }
    }
    out
}

/// Rank of a matrix given by columns, eliminating along the shorter side.
fn column_rank(f: PrimeField, rows: usize, cols: &[Vec<(u32, u32)>], cap: usize) -> usize {
    if rows == 0 || cols.is_empty() {
        return 0;
    }
    if rows <= cols.len() {
        span_rank(f, rows, cols, cap)
    } else {
        span_rank(f, cols.len(), &transpose_cols(rows, cols), cap)
    }
}

/// One middle slice of the Koszul complex, with both differentials explicit.
#[derive(Debug, Clone)]
pub struct KoszulSlice {
    pub module: &'static str,
    pub w: usize,
    pub a: i64,
    pub s: usize,
    /// `dim M^a`, `dim M^{a+N}`, `dim M^{a+2N}`.
    pub module_dims: [usize; 3],
    pub delta_in: SparseMatrix,
    pub delta_out: SparseMatrix,
}

impl KoszulSlice {
    pub fn composition_is_zero(&self, f: PrimeField) -> bool {
        self.delta_out.mul(f, &self.delta_in).is_zero()
    }
}

struct RawSlice {
    module: &'static str,
    w: usize,
    module_dims: [usize; 3],
    in_rows: usize,
    in_cols: Vec<Vec<(u32, u32)>>,
    out_rows: usize,
    out_cols: Vec<Vec<(u32, u32)>>,
}

fn raw_slice(kind: ModuleKind, w: &GradedSubspace, a: i64, s: usize) -> Result<RawSlice> {
    let ring = w.ring();
    match kind {
        ModuleKind::Jacobian(r) => r.ring().same_as(&ring)?,
        ModuleKind::Quotient(q) => q.ring().same_as(&ring)?,
        ModuleKind::Polynomial => {}
    }
    let big_n = w.degree() as i64;
    let wd = w.dim();
    let f = ring.field();
    let dims = [
        kind.dim(ring, a)?,
        kind.dim(ring, a + big_n)?,
        kind.dim(ring, a + 2 * big_n)?,
    ];
    let in_cols_n = dims[0] * binomial(wd, s + 1);
    let mid = dims[1] * binomial(wd, s);
    let out_rows = if s == 0 { 0 } else { dims[2] * binomial(wd, s - 1) };
    // elimination keeps at most min(rows, cols) rows of length min(rows, cols)
    let short_in = mid.min(in_cols_n);
    let short_out = mid.min(out_rows);
    ring.check_budget("Koszul differential δ_in", short_in, short_in)?;
    ring.check_budget("Koszul differential δ_out", short_out, short_out)?;
    let in_cols = if in_cols_n == 0 {
        Vec::new()
    } else {
        differential_columns(f, &action(kind, w, a)?, dims[0], wd, s + 1)
    };
    let out_cols = if mid == 0 {
        Vec::new()
    } else if s == 0 {
        vec![Vec::new(); mid]
    } else {
        differential_columns(f, &action(kind, w, a + big_n)?, dims[1], wd, s)
    };
    Ok(RawSlice {
        module: kind.label(),
        w: wd,
        module_dims: dims,
        in_rows: mid,
        in_cols,
        out_rows,
        out_cols,
    })
}

/// Explicit differentials of the slice at left degree `a` and exterior index `s`.
pub fn koszul_slice(kind: ModuleKind, w: &GradedSubspace, a: i64, s: usize) -> Result<KoszulSlice> {
    let raw = raw_slice(kind, w, a, s)?;
    let f = w.ring().field();
    Ok(KoszulSlice {
        module: raw.module,
        w: raw.w,
        a,
        s,
        module_dims: raw.module_dims,
        delta_in: to_sparse(raw.in_rows, &raw.in_cols, f),
        delta_out: to_sparse(raw.out_rows, &raw.out_cols, f),
    })
}

/// How the ranks of a report were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Elimination on the slice itself.
    Direct,
    /// Homology of `K(W'; S/(u))` for a regular sequence `u` in `W`, `W = <u> ⊕ W'`,
    /// lifted back to ranks of the original strand.
    RegularSequence,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KoszulReport {
    pub module: String,
    pub a: i64,
    pub s: usize,
    pub w: usize,
    pub rank_in: usize,
    pub kernel_out: usize,
    pub defect: usize,
    pub exact: bool,
    /// `[rows, cols]` of δ_in and δ_out.
    pub shape_in: [usize; 2],
    pub shape_out: [usize; 2],
    pub method: Method,
}

/// Exact rank of δ_in, kernel of δ_out and the homology dimension between them.
///
/// Over `S` with `dim W >= n` the computation first looks for a regular sequence inside
/// `W` and works over the Artinian quotient, which keeps large strands small; the ranks
/// reported are those of the original complex either way.
pub fn middle_exactness(
    kind: ModuleKind,
    w: &GradedSubspace,
    a: i64,
    s: usize,
) -> Result<KoszulReport> {
    if let ModuleKind::Polynomial = kind {
        if let Some(rep) = reduced_report(w, a, s)? {
            return Ok(rep);
        }
    }
    middle_exactness_direct(kind, w, a, s)
}

/// [`middle_exactness`] by elimination on the slice itself.
pub fn middle_exactness_direct(
    kind: ModuleKind,
    w: &GradedSubspace,
    a: i64,
    s: usize,
) -> Result<KoszulReport> {
    let raw = raw_slice(kind, w, a, s)?;
    let f = w.ring().field();
    let mid = raw.in_rows;
    let rank_out = column_rank(f, raw.out_rows, &raw.out_cols, usize::MAX);
    let kernel_out = mid - rank_out;
    // image ⊆ kernel, so the elimination can stop at kernel_out
    let rank_in = column_rank(f, mid, &raw.in_cols, kernel_out);
    debug_assert!(rank_in <= kernel_out);
    let defect = kernel_out - rank_in;
    Ok(KoszulReport {
        module: raw.module.to_string(),
        a,
        s,
        w: raw.w,
        rank_in,
        kernel_out,
        defect,
        exact: defect == 0,
        shape_in: [mid, raw.in_cols.len()],
        shape_out: [raw.out_rows, mid],
        method: Method::Direct,
    })
}

/// Ranks of `δ_i : M^{T-iN} ⊗ Λ^i W -> M^{T-(i-1)N} ⊗ Λ^{i-1} W` for `i = 0..=top`
/// (`δ_0 = 0`).
fn strand_ranks(kind: ModuleKind, w: &GradedSubspace, t: i64, top: usize) -> Result<Vec<usize>> {
    let ring = w.ring();
    let f = ring.field();
    let big_n = w.degree() as i64;
    let wd = w.dim();
    let mut ranks = vec![0usize; top + 1];
    for i in 1..=top {
        let src_deg = t - i as i64 * big_n;
        let src = kind.dim(ring, src_deg)? * binomial(wd, i);
        let tgt = kind.dim(ring, src_deg + big_n)? * binomial(wd, i - 1);
        if src == 0 || tgt == 0 {
            continue;
        }
        let short = src.min(tgt);
        ring.check_budget("Koszul strand differential", short, short)?;
        let act = action(kind, w, src_deg)?;
        let cols = differential_columns(f, &act, kind.dim(ring, src_deg)?, wd, i);
        // the image lies in the kernel of the previous map
        let cap = tgt - ranks[i - 1];
        ranks[i] = column_rank(f, tgt, &cols, cap);
    }
    Ok(ranks)
}

/// Fixed seed for choosing the regular sequence; the reported ranks do not depend on it.
const REDUCTION_SEED: u64 = 0x5eed;
const REDUCTION_ATTEMPTS: usize = 4;

fn reduced_report(w: &GradedSubspace, a: i64, s: usize) -> Result<Option<KoszulReport>> {
    use rand::Rng;
    let ring = w.ring();
    let n = ring.nvars();
    let big_n = w.degree();
    let wd = w.dim();
    if big_n == 0 || wd < n {
        return Ok(None);
    }
    let f = ring.field();
    let p = f.modulus();
    let len = w.ambient_dim();
    let top = n * (big_n - 1) + 1;
    let mut rng = crate::sampling::rng_from_seed(REDUCTION_SEED);
    for _ in 0..REDUCTION_ATTEMPTS {
        let u: Vec<Vec<u32>> = (0..n)
            .map(|_| {
                let mut v = vec![0u32; len];
                for row in w.basis() {
                    let c = rng.gen_range(0..p);
                    for (x, &y) in v.iter_mut().zip(row) {
                        *x = f.add(*x, f.mul(c, y));
                    }
                }
                v
            })
            .collect();
        let q = match GradedQuotient::new(ring, u.clone(), big_n, top) {
            Ok(q) => q,
            Err(Error::SizeBudget { .. }) => return Ok(None),
            Err(e) => return Err(e),
        };
        if q.hilbert(top as i64)? != 0 {
            continue;
        }
        // W' spanned by the rows of W independent of u
        let mut ech = EchelonBasis::new(f, len);
        for v in &u {
            ech.insert_dense(v);
        }
        let rest: Vec<Vec<u32>> = w
            .basis()
            .iter()
            .filter(|row| ech.insert_dense(row))
            .cloned()
            .collect();
        debug_assert_eq!(rest.len(), wd - n);
        let w_rest = GradedSubspace::from_vectors(ring, big_n, rest)?;
        let t = a + (s as i64 + 1) * big_n as i64;
        let ranks_q = match strand_ranks(ModuleKind::Quotient(&q), &w_rest, t, s + 1) {
            Ok(r) => r,
            Err(Error::SizeBudget { .. }) => return Ok(None),
            Err(e) => return Err(e),
        };
        // homology of the reduced strand equals that of the original one
        let wr = w_rest.dim();
        let mut rank_s = vec![0usize; s + 2];
        let mut k_dims = vec![0usize; s + 2];
        for i in 0..=s + 1 {
            k_dims[i] = ring.dim(t - (i * big_n) as i64)? * binomial(wd, i);
        }
        let mut h_s = 0;
        for i in 0..=s {
            let kq = q.hilbert(t - (i * big_n) as i64)? * binomial(wr, i);
            let h = kq - ranks_q[i] - ranks_q[i + 1];
            rank_s[i + 1] = k_dims[i] - h - rank_s[i];
            h_s = h;
        }
        let rank_in = rank_s[s + 1];
        let kernel_out = k_dims[s] - rank_s[s];
        debug_assert_eq!(kernel_out - rank_in, h_s);
        let out_rows = if s == 0 {
            0
        } else {
            ring.dim(t - ((s - 1) * big_n) as i64)? * binomial(wd, s - 1)
        };
        return Ok(Some(KoszulReport {
            module: ModuleKind::Polynomial.label().to_string(),
            a,
            s,
            w: wd,
            rank_in,
            kernel_out,
            defect: h_s,
            exact: h_s == 0,
            shape_in: [k_dims[s], k_dims[s + 1]],
            shape_out: [out_rows, k_dims[s]],
            method: Method::RegularSequence,
        }));
    }
    Ok(None)
}

/// Parameters of a Green-range scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreenScanConfig {
    pub n: usize,
    pub degree: usize,
    pub codims: Vec<usize>,
    pub a_max: i64,
    pub s_max: usize,
    pub trials: usize,
    /// Record oversize cells as skipped instead of failing the scan.
    pub skip_oversize: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CellOutcome {
    Evaluated(KoszulReport),
    Skipped { reason: String },
    /// No certified base-point-free `W` of this codimension was drawn.
    Unsampled { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreenCell {
    pub n: usize,
    #[serde(rename = "N")]
    pub degree: usize,
    pub codim: usize,
    pub trial: usize,
    pub a: i64,
    pub s: usize,
    /// Degree at which base-point-freeness of the sampled `W` was certified.
    pub bpf_degree: Option<usize>,
    /// `a >= s + codim`: the range where exactness is predicted.
    pub bound_holds: bool,
    pub outcome: CellOutcome,
}

impl GreenCell {
    pub fn exact(&self) -> Option<bool> {
        match &self.outcome {
            CellOutcome::Evaluated(r) => Some(r.exact),
            CellOutcome::Skipped { .. } | CellOutcome::Unsampled { .. } => None,
        }
    }

    /// An evaluated in-range cell that is not exact.
    pub fn violates_bound(&self) -> bool {
        self.bound_holds && self.exact() == Some(false)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreenScan {
    pub prime: u32,
    pub cells: Vec<GreenCell>,
}

pub const GREEN_CSV_HEADER: &str =
    "n,N,codim,trial,a,s,rank_in,kernel_out,defect,bound_holds,exact";

impl GreenScan {
    pub fn violations(&self) -> usize {
        self.cells.iter().filter(|c| c.violates_bound()).count()
    }

    pub fn evaluated(&self) -> usize {
        self.cells.iter().filter(|c| c.exact().is_some()).count()
    }

    pub fn skipped(&self) -> usize {
        self.cells
            .iter()
            .filter(|c| matches!(c.outcome, CellOutcome::Skipped { .. }))
            .count()
    }

    pub fn unsampled(&self) -> usize {
        self.cells
            .iter()
            .filter(|c| matches!(c.outcome, CellOutcome::Unsampled { .. }))
            .count()
    }

    /// One line per cell; skipped cells leave the rank columns empty and print `skipped`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(GREEN_CSV_HEADER);
        out.push('\n');
        for c in &self.cells {
            let tail = match &c.outcome {
                CellOutcome::Evaluated(r) => format!(
                    "{},{},{},{},{}",
                    r.rank_in, r.kernel_out, r.defect, c.bound_holds, r.exact
                ),
                CellOutcome::Skipped { .. } => format!(",,,{},skipped", c.bound_holds),
                CellOutcome::Unsampled { .. } => format!(",,,{},unsampled", c.bound_holds),
            };
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                c.n, c.degree, c.codim, c.trial, c.a, c.s, tail
            ));
        }
        out
    }
}

/// Sample `trials` certified base-point-free `W` of each codimension and evaluate every
/// cell `0 <= a <= a_max`, `0 <= s <= s_max`.
pub fn green_scan(
    field: PrimeField,
    cfg: &GreenScanConfig,
    budget: u128,
    rng: &mut ChaCha8Rng,
) -> Result<GreenScan> {
    let ring = PolyRing::new(cfg.n, field)?;
    let mut cells = Vec::new();
    for &c in &cfg.codims {
        for trial in 0..cfg.trials {
            let sample = match random_bpf_subspace(ring, cfg.degree, c, rng, DEFAULT_ATTEMPTS) {
                Ok((w, m)) => Ok((w.with_budget(budget), m)),
                Err(e @ (Error::SamplingFailed { .. } | Error::InvalidInput(_))) => {
                    Err(e.to_string())
                }
                Err(e) => return Err(e),
            };
            for a in 0..=cfg.a_max {
                for s in 0..=cfg.s_max {
                    let outcome = match &sample {
                        Err(reason) => CellOutcome::Unsampled {
                            reason: reason.clone(),
                        },
                        Ok((w, _)) => match middle_exactness(ModuleKind::Polynomial, w, a, s) {
                            Ok(r) => CellOutcome::Evaluated(r),
                            Err(e @ Error::SizeBudget { .. }) if cfg.skip_oversize => {
                                CellOutcome::Skipped {
                                    reason: e.to_string(),
                                }
                            }
                            Err(e) => return Err(e),
                        },
                    };
                    cells.push(GreenCell {
                        n: cfg.n,
                        degree: cfg.degree,
                        codim: c,
                        trial,
                        a,
                        s,
                        bpf_degree: sample.as_ref().ok().map(|(_, m)| *m),
                        bound_holds: a >= (s + c) as i64,
                        outcome,
                    });
                }
            }
        }
    }
    Ok(GreenScan {
        prime: field.modulus(),
        cells,
    })
}

/// Report for the Jacobian-ring complex at left degree `a = N p - d - 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobianKoszulReport {
    pub p: i64,
    pub codim: usize,
    pub report: KoszulReport,
    /// `a >= s + codim W`.
    pub green_range: bool,
    /// `N(p+1) - d - 2 >= N - 1`: the middle degree is past the generators of `J_f`.
    pub transfer_range: bool,
}

/// Middle exactness of the `R_f` complex for `W ⊇ J_f^N`.
pub fn jacobian_koszul_check(
    ring: &JacobianRing,
    w: &GradedSubspace,
    p: i64,
    s: usize,
) -> Result<JacobianKoszulReport> {
    if let crate::jacobian::SmoothnessCertificate::NotCertified(why) = certify(ring) {
        return Err(Error::NotSmooth(why));
    }
    let x = ring.source();
    let big_n = x.degree();
    if w.degree() != big_n {
        return Err(Error::AmbientMismatch(format!(
            "W must lie in S^{big_n}, got degree {}",
            w.degree()
        )));
    }
    let j = ring.jacobian_piece(big_n)?;
    if !w.contains(&j)? {
        return Err(Error::InvalidInput("W does not contain J_f^N".into()));
    }
    let d = x.dim() as i64;
    let nn = big_n as i64;
    let a = nn * p - d - 2;
    let report = middle_exactness(ModuleKind::Jacobian(ring), w, a, s)?;
    Ok(JacobianKoszulReport {
        p,
        codim: w.codim(),
        green_range: a >= (s + w.codim()) as i64,
        transfer_range: nn * (p + 1) - d - 2 >= nn - 1,
        report,
    })
}

/// `W = J_f^N + (random complement of codimension c)`, i.e. a random codimension-`c`
/// subspace of `S^N` containing `J_f^N`.
pub fn random_system_containing_jacobian(
    ring: &JacobianRing,
    codim: usize,
    rng: &mut ChaCha8Rng,
) -> Result<GradedSubspace> {
    let big_n = ring.source().degree();
    let mut w = GradedSubspace::full(ring.ring(), big_n)?;
    let j = ring.jacobian_piece(big_n)?;
    if codim > j.codim() {
        return Err(Error::InvalidInput(format!(
            "codimension {codim} exceeds dim R^N = {}",
            j.codim()
        )));
    }
    // intersect c random hyperplanes through J
    for _ in 0..codim {
        loop {
            let h = random_hyperplane_containing(&j, rng)?;
            let next = w.intersection(&h)?;
            if next.dim() + 1 == w.dim() {
                w = next;
                break;
            }
        }
    }
    Ok(w)
}
