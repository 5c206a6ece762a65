//! Graded quotients `S / I` of the polynomial ring by an ideal generated by forms of a
//! single degree `D`, computed degree by degree.
//!
//! Below `D` nothing is killed; in degree `D` the generators are row reduced directly.
//! From degree `D + 1` on, `I^k = S^1 I^{k-1}`, so
//!
//! ```text
//! (S/I)^k = (S^1 ⊗ (S/I)^{k-1}) / < x_i ⊗ NF(x_j m) - x_j ⊗ NF(x_i m) : m in S^{k-2}, i < j >
//! ```
//!
//! where `NF` is the normal form of the previous degree. Columns of that relation
//! system are ordered by the monomial `x_i * b` they represent, which makes its
//! non-pivot columns exactly the graded-lex standard monomials of `I^k`: the same
//! complement a direct row reduction of `I^k` would produce, at a fraction of the
//! width once the quotient is small.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::{DenseMatrix, EchelonBasis};
use crate::monomial::{monomial_basis, Monomial, ProductTable};
use crate::ring::PolyRing;
use crate::subspace::GradedSubspace;

/// `I^k` by direct row reduction of `{ m * g : g a generator, deg m = k - D }`.
pub fn ideal_piece_direct(
    ring: PolyRing,
    gens: &[Vec<u32>],
    gen_degree: usize,
    k: usize,
) -> Result<GradedSubspace> {
    if k < gen_degree || gens.is_empty() {
        return GradedSubspace::zero(ring, k);
    }
    let shift = k - gen_degree;
    let n = ring.nvars();
    let target = ring.dim(k as i64)?;
    let nmult = ring.dim(shift as i64)?;
    ring.check_budget("ideal generator matrix", gens.len() * nmult, target)?;
    let table = ProductTable::new(n, shift, gen_degree);
    let mut ech = EchelonBasis::new(ring.field(), target);
    let mut entries: Vec<(u32, u32)> = Vec::new();
    'outer: for m in 0..nmult {
        for g in gens {
            entries.clear();
            entries.extend(
                g.iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(j, &c)| (table.get(m, j) as u32, c)),
            );
            ech.insert_sparse(&entries);
            if ech.is_full() {
                break 'outer;
            }
        }
    }
    GradedSubspace::from_echelon(ring, k, &ech)
}

/// One graded piece of the quotient.
#[derive(Debug, Clone)]
struct QuotientPiece {
    /// Basis positions in `S^k` of the standard monomials, ascending.
    standard: Vec<u32>,
    /// Row `u` holds the coordinates of the monomial `u` of `S^k` in the quotient.
    nf: DenseMatrix,
}

impl QuotientPiece {
    fn identity(size: usize) -> Self {
        Self {
            standard: (0..size as u32).collect(),
            nf: DenseMatrix::identity(size),
        }
    }

    fn dim(&self) -> usize {
        self.standard.len()
    }
}

/// `S / I` with every graded piece up to `max_degree` computed.
#[derive(Debug, Clone)]
pub struct GradedQuotient {
    ring: PolyRing,
    gen_degree: usize,
    gens: Vec<Vec<u32>>,
    pieces: Vec<QuotientPiece>,
}

impl GradedQuotient {
    /// `gens` are coordinate vectors in `S^{gen_degree}`.
    pub fn new(
        ring: PolyRing,
        gens: Vec<Vec<u32>>,
        gen_degree: usize,
        max_degree: usize,
    ) -> Result<Self> {
        let dd = ring.dim(gen_degree as i64)?;
        if gens.iter().any(|g| g.len() != dd) {
            return Err(Error::AmbientMismatch(format!(
                "generators must be vectors of S^{gen_degree}"
            )));
        }
        let n = ring.nvars();
        let f = ring.field();
        let mut pieces: Vec<QuotientPiece> = Vec::with_capacity(max_degree + 1);
        for k in 0..=max_degree {
            let dk = ring.dim(k as i64)?;
            let piece = if k < gen_degree {
                ring.check_budget("normal form table", dk, dk)?;
                QuotientPiece::identity(dk)
            } else if k == gen_degree {
                Self::piece_from_subspace(&ideal_piece_direct(ring, &gens, gen_degree, k)?)
            } else if pieces[k - 1].dim() == 0 {
                QuotientPiece {
                    standard: Vec::new(),
                    nf: DenseMatrix::zeros(dk, 0),
                }
            } else {
                Self::next_piece(ring, &pieces[k - 1], k, n, f)?
            };
            pieces.push(piece);
        }
        Ok(Self {
            ring,
            gen_degree,
            gens,
            pieces,
        })
    }

    pub fn ring(&self) -> PolyRing {
        self.ring
    }

    pub fn generator_degree(&self) -> usize {
        self.gen_degree
    }

    pub fn generators(&self) -> &[Vec<u32>] {
        &self.gens
    }

    fn piece_from_subspace(jac: &GradedSubspace) -> QuotientPiece {
        let standard: Vec<u32> = jac.complement_indices().iter().map(|&c| c as u32).collect();
        let d = jac.ambient_dim();
        let mut nf = DenseMatrix::zeros(d, standard.len());
        let f = jac.ring().field();
        for (pos, &c) in standard.iter().enumerate() {
            nf.set(c as usize, pos, 1);
        }
        for (row, &p) in jac.basis().iter().zip(jac.pivots()) {
            for (pos, &c) in standard.iter().enumerate() {
                nf.set(p, pos, f.neg(row[c as usize]));
            }
        }
        QuotientPiece { standard, nf }
    }

    fn next_piece(
        ring: PolyRing,
        prev: &QuotientPiece,
        k: usize,
        n: usize,
        f: PrimeField,
    ) -> Result<QuotientPiece> {
        let sprev = prev.dim();
        let dk = ring.dim(k as i64)?;
        let ncols = n * sprev;
        let nrel = n * (n - 1) / 2 * ring.dim(k as i64 - 2)?;
        ring.check_budget("quotient relation system", nrel, ncols)?;

        // columns (x_i, b) sorted by the monomial x_i * b, then by i
        let prev_basis = monomial_basis(n, k - 1);
        let lift = ProductTable::new(n, 1, k - 1);
        let mut cols: Vec<(u32, u32, u32)> = Vec::with_capacity(ncols);
        for i in 0..n {
            for (bpos, &b) in prev.standard.iter().enumerate() {
                cols.push((lift.get(i, b as usize) as u32, i as u32, bpos as u32));
            }
        }
        cols.sort_unstable();
        let mut col_of = vec![0u32; ncols];
        for (c, &(_, i, bpos)) in cols.iter().enumerate() {
            col_of[i as usize * sprev + bpos as usize] = c as u32;
        }

        let mut ech = EchelonBasis::new(f, ncols);
        if k >= 2 {
            let low = ProductTable::new(n, 1, k - 2);
            let dlow = ring.dim(k as i64 - 2)?;
            let mut entries: Vec<(u32, u32)> = Vec::with_capacity(2 * sprev);
            'rel: for m in 0..dlow {
                for i in 0..n {
                    for j in i + 1..n {
                        // x_i ⊗ NF(x_j m) - x_j ⊗ NF(x_i m)
                        let nf_jm = prev.nf.row(low.get(j, m));
                        let nf_im = prev.nf.row(low.get(i, m));
                        entries.clear();
                        for b in 0..sprev {
                            if nf_jm[b] != 0 {
                                entries.push((col_of[i * sprev + b], nf_jm[b]));
                            }
                            if nf_im[b] != 0 {
                                entries.push((col_of[j * sprev + b], f.neg(nf_im[b])));
                            }
                        }
                        ech.insert_sparse(&entries);
                        if ech.is_full() {
                            break 'rel;
                        }
                    }
                }
            }
        }
        let (rows, pivots) = ech.to_rref();
        let mut is_pivot = vec![usize::MAX; ncols];
        for (r, &c) in pivots.iter().enumerate() {
            is_pivot[c] = r;
        }
        let free: Vec<usize> = (0..ncols).filter(|&c| is_pivot[c] == usize::MAX).collect();
        let standard: Vec<u32> = free.iter().map(|&c| cols[c].0).collect();
        debug_assert!(standard.windows(2).all(|w| w[0] < w[1]));
        let sk = standard.len();
        ring.check_budget("normal form table", dk, sk)?;

        // image of each column (x_i, b) in degree k
        let mut proj = DenseMatrix::zeros(ncols, sk);
        for (pos, &c) in free.iter().enumerate() {
            proj.set(c, pos, 1);
        }
        for (row, &c) in rows.iter().zip(&pivots) {
            for (pos, &fc) in free.iter().enumerate() {
                let v = row[fc];
                if v != 0 {
                    proj.set(c, pos, f.neg(v));
                }
            }
        }

        // NF_k(u) = sum_b NF_{k-1}(u / x_i)[b] * proj(x_i, b), i the first variable of u
        let mut nf = DenseMatrix::zeros(dk, sk);
        let basis_k = monomial_basis(n, k);
        let mut acc = vec![0u32; sk];
        for (u, mono) in basis_k.iter().enumerate() {
            let i = mono
                .exponents()
                .iter()
                .position(|&e| e > 0)
                .expect("degree >= 1");
            let below = mono.div_var(i).expect("x_i divides u").index();
            debug_assert!(below < prev_basis.len());
            acc.iter_mut().for_each(|x| *x = 0);
            for (b, &c) in prev.nf.row(below).iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let prow = proj.row(col_of[i * sprev + b] as usize);
                for (a, &y) in acc.iter_mut().zip(prow) {
                    if y != 0 {
                        *a = f.add(*a, f.mul(c, y));
                    }
                }
            }
            for (pos, &x) in acc.iter().enumerate() {
                nf.set(u, pos, x);
            }
        }
        Ok(QuotientPiece { standard, nf })
    }

    /// Highest degree with cached data.
    pub fn max_degree(&self) -> usize {
        self.pieces.len() - 1
    }

    fn piece(&self, k: usize) -> Result<&QuotientPiece> {
        self.pieces.get(k).ok_or_else(|| {
            Error::InvalidInput(format!(
                "degree {k} beyond the computed range 0..={}",
                self.max_degree()
            ))
        })
    }

    /// `dim (S/I)^k`. Degrees past the cached range are answered when the ring has
    /// already vanished (a standard graded algebra stays zero once it is zero).
    pub fn hilbert(&self, k: i64) -> Result<usize> {
        if k < 0 {
            return Ok(0);
        }
        let k = k as usize;
        if k > self.max_degree() {
            if self.pieces.last().is_some_and(|p| p.dim() == 0) {
                return Ok(0);
            }
            return Err(Error::InvalidInput(format!(
                "dim (S/I)^{k} needs a quotient computed to degree {k}"
            )));
        }
        Ok(self.pieces[k].dim())
    }

    /// Hilbert function on `0..=max_degree`.
    pub fn hilbert_function(&self) -> Vec<usize> {
        self.pieces.iter().map(QuotientPiece::dim).collect()
    }

    /// Standard monomials of degree `k` (a complement of `I^k`).
    pub fn standard_monomials(&self, k: usize) -> Result<Vec<Monomial>> {
        let basis = monomial_basis(self.ring.nvars(), k);
        Ok(self
            .piece(k)?
            .standard
            .iter()
            .map(|&i| basis[i as usize].clone())
            .collect())
    }

    pub fn standard_indices(&self, k: usize) -> Result<&[u32]> {
        Ok(&self.piece(k)?.standard)
    }

    /// Coordinates in `(S/I)^k` of the monomial at basis position `u` of `S^k`.
    pub fn nf_row(&self, k: usize, u: usize) -> Result<&[u32]> {
        Ok(self.piece(k)?.nf.row(u))
    }

    /// Coordinates in `(S/I)^k` of an arbitrary vector of `S^k`.
    pub fn normal_form(&self, k: usize, v: &[u32]) -> Result<Vec<u32>> {
        let piece = self.piece(k)?;
        if v.len() != piece.nf.rows() {
            return Err(Error::AmbientMismatch(format!(
                "vector of length {} in S^{k}",
                v.len()
            )));
        }
        let f = self.ring.field();
        let mut out = vec![0u32; piece.dim()];
        for (u, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &y) in out.iter_mut().zip(piece.nf.row(u)) {
                if y != 0 {
                    *o = f.add(*o, f.mul(c, y));
                }
            }
        }
        Ok(out)
    }

    /// `I^k` read off the normal form table: one row `u - NF(u)` per non-standard `u`.
    pub fn ideal_piece(&self, k: usize) -> Result<GradedSubspace> {
        let piece = self.piece(k)?;
        let ring = self.ring;
        let dk = piece.nf.rows();
        ring.check_budget("ideal piece", dk - piece.dim(), dk)?;
        let f = ring.field();
        let mut is_std = vec![false; dk];
        for &s in &piece.standard {
            is_std[s as usize] = true;
        }
        let mut rows = Vec::with_capacity(dk - piece.dim());
        let mut pivots = Vec::with_capacity(dk - piece.dim());
        for u in (0..dk).filter(|&u| !is_std[u]) {
            let mut v = vec![0u32; dk];
            v[u] = 1;
            for (pos, &s) in piece.standard.iter().enumerate() {
                let c = piece.nf.get(u, pos);
                if c != 0 {
                    debug_assert!(s as usize > u, "normal form must only involve smaller monomials");
                    v[s as usize] = f.neg(c);
                }
            }
            rows.push(v);
            pivots.push(u);
        }
        Ok(GradedSubspace::from_rref_unchecked(ring, k, rows, pivots))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::poly::Polynomial;

    fn ring(n: usize) -> PolyRing {
        PolyRing::new(n, PrimeField::new(65521).unwrap()).unwrap()
    }

    fn gens(r: PolyRing, k: usize, text: &[&str]) -> Vec<Vec<u32>> {
        text.iter()
            .map(|t| Polynomial::parse(t, r.nvars(), r.field()).unwrap().to_dense(k).unwrap())
            .collect()
    }

    #[test]
    fn monomial_complete_intersection() {
        let r = ring(2);
        let q = GradedQuotient::new(r, gens(r, 2, &["x0^2", "x1^2"]), 2, 4).unwrap();
        assert_eq!(q.hilbert_function(), [1, 2, 1, 0, 0]);
        assert_eq!(q.hilbert(9).unwrap(), 0);
        assert_eq!(q.standard_monomials(2).unwrap()[0].exponents(), [1, 1]);
    }

    #[test]
    fn non_artinian_quotient_refuses_unknown_degrees() {
        let r = ring(3);
        let q = GradedQuotient::new(r, gens(r, 2, &["x0^2", "x1^2"]), 2, 5).unwrap();
        // S/(x0^2, x1^2) is k[x2] tensored with a 4-dimensional algebra
        assert_eq!(q.hilbert_function(), [1, 3, 4, 4, 4, 4]);
        assert!(q.hilbert(6).is_err());
    }

    #[test]
    fn normal_forms_kill_the_ideal_and_fix_standard_monomials() {
        let r = ring(3);
        let g = gens(r, 2, &["x0^2 + 3*x1*x2", "x1^2 - x0*x2", "x2^2 + x0*x1"]);
        let q = GradedQuotient::new(r, g, 2, 5).unwrap();
        for k in 0..=5 {
            let ideal = q.ideal_piece(k).unwrap();
            assert_eq!(ideal.codim(), q.hilbert(k as i64).unwrap());
            for v in ideal.basis() {
                assert!(q.normal_form(k, v).unwrap().iter().all(|&x| x == 0));
            }
            for (pos, &s) in q.standard_indices(k).unwrap().iter().enumerate() {
                let row = q.nf_row(k, s as usize).unwrap();
                assert!(row.iter().enumerate().all(|(j, &x)| x == u32::from(j == pos)));
            }
        }
    }

    #[test]
    fn rejects_wrong_generator_length() {
        let r = ring(2);
        assert!(GradedQuotient::new(r, vec![vec![1, 0]], 2, 3).is_err());
    }

    #[test]
    fn budget_applies() {
        let r = ring(4).with_budget(10);
        let g = gens(r, 2, &["x0^2", "x1^2", "x2^2", "x3^2"]);
        assert!(matches!(
            GradedQuotient::new(r, g, 2, 3),
            Err(Error::SizeBudget { .. })
        ));
    }
}
