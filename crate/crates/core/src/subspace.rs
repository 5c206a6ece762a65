//! Linear subspaces of a single graded piece `S^k`, kept in reduced row echelon form
//! over the graded-lex monomial basis.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, DenseMatrix, EchelonBasis};
use crate::monomial::ProductTable;
use crate::poly::Polynomial;
use crate::ring::PolyRing;

#[derive(Clone)]
pub struct GradedSubspace {
    ring: PolyRing,
    degree: usize,
    ambient_dim: usize,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

/// Equality of spans; the size guard carried by the ring is ignored.
impl PartialEq for GradedSubspace {
    fn eq(&self, other: &Self) -> bool {
        self.ring.nvars() == other.ring.nvars()
            && self.ring.field() == other.ring.field()
            && self.degree == other.degree
            && self.basis == other.basis
    }
}

impl Eq for GradedSubspace {}

impl GradedSubspace {
    pub fn zero(ring: PolyRing, degree: usize) -> Result<Self> {
        Ok(Self {
            ring,
            degree,
            ambient_dim: ring.dim(degree as i64)?,
            basis: Vec::new(),
            pivots: Vec::new(),
        })
    }

    /// The whole of `S^k`.
    pub fn full(ring: PolyRing, degree: usize) -> Result<Self> {
        let d = ring.dim(degree as i64)?;
        ring.check_budget("full graded piece", d, d)?;
        let basis = (0..d)
            .map(|i| {
                let mut v = vec![0; d];
                v[i] = 1;
                v
            })
            .collect();
        Ok(Self {
            ring,
            degree,
            ambient_dim: d,
            basis,
            pivots: (0..d).collect(),
        })
    }

    /// Span of arbitrary coordinate vectors of length `dim S^k`.
    pub fn from_vectors<I>(ring: PolyRing, degree: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<u32>>,
    {
        let d = ring.dim(degree as i64)?;
        let mut ech = EchelonBasis::new(ring.field(), d);
        for v in vectors {
            if v.len() != d {
                return Err(Error::AmbientMismatch(format!(
                    "vector of length {} in S^{degree} of dimension {d}",
                    v.len()
                )));
            }
            ech.insert_dense(&v);
            if ech.is_full() {
                break;
            }
        }
        Self::from_echelon(ring, degree, &ech)
    }

    pub(crate) fn from_echelon(ring: PolyRing, degree: usize, ech: &EchelonBasis) -> Result<Self> {
        let d = ech.len();
        ring.check_budget("subspace basis", ech.rank(), d)?;
        let (basis, pivots) = ech.to_rref();
        Ok(Self {
            ring,
            degree,
            ambient_dim: d,
            basis,
            pivots,
        })
    }

    /// Span of homogeneous polynomials of degree `k`.
    pub fn from_polys(ring: PolyRing, degree: usize, polys: &[Polynomial]) -> Result<Self> {
        let vs = polys
            .iter()
            .map(|p| {
                if p.nvars() != ring.nvars() || p.field() != ring.field() {
                    return Err(Error::AmbientMismatch("polynomial ring differs".into()));
                }
                p.to_dense(degree)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_vectors(ring, degree, vs)
    }

    /// Trusted constructor for rows already in reduced row echelon form.
    pub(crate) fn from_rref_unchecked(
        ring: PolyRing,
        degree: usize,
        basis: Vec<Vec<u32>>,
        pivots: Vec<usize>,
    ) -> Self {
        let ambient_dim = ring.dim(degree as i64).expect("validated degree");
        debug_assert!(basis.iter().all(|r| r.len() == ambient_dim));
        debug_assert!(pivots.windows(2).all(|w| w[0] < w[1]));
        Self {
            ring,
            degree,
            ambient_dim,
            basis,
            pivots,
        }
    }

    pub fn ring(&self) -> PolyRing {
        self.ring
    }

    /// Same subspace with a different size guard for later operations.
    pub fn with_budget(mut self, cells: u128) -> Self {
        self.ring = self.ring.with_budget(cells);
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient_dim - self.dim()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Reduced row echelon basis, rows ordered by pivot column.
    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns without a pivot; their monomials span a complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient_dim).filter(|&j| !is_pivot[j]).collect()
    }

    pub fn to_polynomials(&self) -> Vec<Polynomial> {
        self.basis
            .iter()
            .map(|v| Polynomial::from_dense(self.ring.nvars(), self.ring.field(), self.degree, v))
            .collect()
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        self.ring.same_as(&other.ring)?;
        if self.degree != other.degree {
            return Err(Error::AmbientMismatch(format!(
                "subspaces of S^{} and S^{}",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    /// Remainder of `v` after clearing every pivot coordinate.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.ambient_dim);
        let f = self.ring.field();
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = out[p];
            if c == 0 {
                continue;
            }
            for (o, &r) in out[p..].iter_mut().zip(&row[p..]) {
                if r != 0 {
                    *o = f.sub(*o, f.mul(c, r));
                }
            }
        }
        out
    }

    pub fn contains_vector(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn contains(&self, other: &Self) -> Result<bool> {
        self.compatible(other)?;
        Ok(other.basis.iter().all(|v| self.contains_vector(v)))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Self::from_vectors(
            self.ring,
            self.degree,
            self.basis.iter().chain(&other.basis).cloned(),
        )
    }

    /// Intersection via the Zassenhaus sum: rows `[a | a]` and `[b | 0]`; echelon rows
    /// whose left half vanishes span `A ∩ B` in their right half.
    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let d = self.ambient_dim;
        self.ring
            .check_budget("Zassenhaus matrix", self.dim() + other.dim(), 2 * d)?;
        let mut ech = EchelonBasis::new(self.ring.field(), 2 * d);
        for a in &self.basis {
            let mut v = a.clone();
            v.extend_from_slice(a);
            ech.insert_dense(&v);
        }
        for b in &other.basis {
            let mut v = b.clone();
            v.extend(std::iter::repeat_n(0, d));
            ech.insert_dense(&v);
        }
        let (rows, pivots) = ech.to_rref();
        let right = rows
            .into_iter()
            .zip(pivots)
            .filter(|(_, p)| *p >= d)
            .map(|(r, _)| r[d..].to_vec());
        Self::from_vectors(self.ring, self.degree, right)
    }
}

impl fmt::Debug for GradedSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GradedSubspace(S^{}, dim {}/{})",
            self.degree,
            self.dim(),
            self.ambient_dim
        )
    }
}

/// Span of all products `a * b` with `a` in `A` and `b` in `B`, inside `S^{deg A + deg B}`.
pub fn product_span(a: &GradedSubspace, b: &GradedSubspace) -> Result<GradedSubspace> {
    a.ring.same_as(&b.ring)?;
    let ring = a.ring;
    let f = ring.field();
    let deg = a.degree + b.degree;
    let target = ring.dim(deg as i64)?;
    ring.check_budget("product span", a.dim().saturating_mul(b.dim()).min(target), target)?;
    let table = ProductTable::new(ring.nvars(), a.degree, b.degree);
    let sparse = |v: &[u32]| -> Vec<(usize, u32)> {
        v.iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| (i, x))
            .collect()
    };
    let bs: Vec<_> = b.basis.iter().map(|v| sparse(v)).collect();
    // symmetric input: only unordered pairs are needed
    let same = a == b;
    let mut ech = EchelonBasis::new(f, target);
    let mut acc: Vec<(u32, u32)> = Vec::new();
    let mut dense = vec![0u32; target];
    let mut touched: Vec<usize> = Vec::new();
    'outer: for (ia, va) in a.basis.iter().enumerate() {
        let sa = sparse(va);
        let start = if same { ia } else { 0 };
        for sb in &bs[start..] {
            for &(i, x) in &sa {
                for &(j, y) in sb {
                    let k = table.get(i, j);
                    if dense[k] == 0 {
                        touched.push(k);
                    }
                    // an index may be pushed twice after cancelling to zero; harmless
                    dense[k] = f.add(dense[k], f.mul(x, y));
                }
            }
            acc.clear();
            for &k in &touched {
                if dense[k] != 0 {
                    acc.push((k as u32, dense[k]));
                    dense[k] = 0;
                }
            }
            touched.clear();
            ech.insert_sparse(&acc);
            if ech.is_full() {
                break 'outer;
            }
        }
    }
    GradedSubspace::from_echelon(ring, deg, &ech)
}

/// `[K : S^1] = { g in S^{m-1} : x_i g in K for every i }`.
pub fn colon_by_linear_forms(k: &GradedSubspace) -> Result<GradedSubspace> {
    let ring = k.ring;
    let m = k.degree;
    if m == 0 {
        return Err(Error::InvalidInput("colon needs K in degree >= 1".into()));
    }
    let n = ring.nvars();
    let src = ring.dim(m as i64 - 1)?;
    if k.is_full() {
        return GradedSubspace::full(ring, m - 1);
    }
    // quotient coordinates of each monomial of S^m modulo K
    let comp = k.complement_indices();
    let q = comp.len();
    ring.check_budget("colon system", n * q, src)?;
    let mut pos = vec![usize::MAX; k.ambient_dim];
    for (i, &c) in comp.iter().enumerate() {
        pos[c] = i;
    }
    let f = ring.field();
    let mut quot = vec![vec![0u32; q]; k.ambient_dim];
    for (row, &p) in k.basis.iter().zip(&k.pivots) {
        for (i, &c) in comp.iter().enumerate() {
            quot[p][i] = f.neg(row[c]);
        }
    }
    for (i, &c) in comp.iter().enumerate() {
        quot[c][i] = 1;
    }
    let table = ProductTable::new(n, 1, m - 1);
    let mut sys = DenseMatrix::zeros(n * q, src);
    for u in 0..src {
        for var in 0..n {
            let prod = table.get(var, u);
            for (i, &x) in quot[prod].iter().enumerate() {
                if x != 0 {
                    sys.set(var * q + i, u, x);
                }
            }
        }
    }
    GradedSubspace::from_vectors(ring, m - 1, kernel_basis(f, &sys))
}

/// Outcome of the base-point-freeness semi-decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum BpfStatus {
    /// The ideal generated by `W` contains all of `S^m`.
    Verified(usize),
    Unknown,
}

impl BpfStatus {
    pub fn is_verified(self) -> bool {
        matches!(self, BpfStatus::Verified(_))
    }
}

/// Least `m <= m_max` with `S^{m-N} W = S^m`.
pub fn bpf_check(w: &GradedSubspace, m_max: usize) -> Result<BpfStatus> {
    let ring = w.ring;
    let one = GradedSubspace::full(ring, 1)?;
    let mut cur = w.clone();
    let mut m = w.degree;
    while m <= m_max {
        if cur.is_full() {
            return Ok(BpfStatus::Verified(m));
        }
        if cur.is_zero() || m == m_max {
            break;
        }
        cur = product_span(&one, &cur)?;
        m += 1;
    }
    Ok(BpfStatus::Unknown)
}
