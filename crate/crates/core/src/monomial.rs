//! Monomials and the graded-lex basis of each homogeneous piece `S^k`.
//!
//! Within a degree, monomials are ordered lexicographically with `x0 > x1 > ...`;
//! position 0 of a basis is `x0^k`, the last position is `x_{n-1}^k`. A basis index
//! is computed in closed form by [`Monomial::index`], so no lookup tables are needed
//! to locate a product inside a larger degree.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Dimension of `S^k` for a polynomial ring in `n` variables: `C(k+n-1, n-1)`,
/// zero for negative `k`.
pub fn dim_graded(n: usize, k: i64) -> Result<usize> {
    if n == 0 {
        return Err(Error::InvalidInput("polynomial ring needs n >= 1".into()));
    }
    if k < 0 {
        return Ok(0);
    }
    let k = k as u128;
    // C(k+n-1, n-1) built incrementally; each partial product is itself a binomial.
    let mut acc: u128 = 1;
    for i in 1..n as u128 {
        acc = acc
            .checked_mul(k + i)
            .ok_or_else(|| too_large(n, k))?
            / i;
    }
    usize::try_from(acc).map_err(|_| too_large(n, k))
}

fn too_large(n: usize, k: u128) -> Error {
    Error::ParameterTooLarge(format!("dim S^{k} in {n} variables"))
}

/// Infallible variant for internal use where `n` and `k` are already validated.
#[inline]
pub(crate) fn dim(n: usize, k: i64) -> usize {
    dim_graded(n, k).expect("graded dimension out of range")
}

/// An exponent vector with cached total degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Self { exps, degree }
    }

    pub fn one(n: usize) -> Self {
        Self::new(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self::new(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    /// `self / x_i`, or `None` when `x_i` does not divide.
    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        (self.exps[i] > 0).then(|| {
            let mut exps = self.exps.clone();
            exps[i] -= 1;
            Monomial {
                exps,
                degree: self.degree - 1,
            }
        })
    }

    /// Position of this monomial in [`monomial_basis`] of its own degree.
    pub fn index(&self) -> usize {
        index_of(&self.exps)
    }
}

/// Rank of an exponent vector inside the graded-lex basis of its degree.
///
/// Monomials ahead of `e` are those whose first differing exponent is larger; summing
/// them per position telescopes to `dim(n-i, k_i - e_i - 1)` with `k_i` the degree left
/// after the first `i` exponents.
pub fn index_of(exps: &[u32]) -> usize {
    let n = exps.len();
    let mut left: i64 = exps.iter().map(|&e| e as i64).sum();
    let mut idx = 0usize;
    for (i, &e) in exps.iter().enumerate().take(n.saturating_sub(1)) {
        idx += dim(n - i, left - e as i64 - 1);
        left -= e as i64;
    }
    idx
}

impl Ord for Monomial {
    /// Graded order; within a degree, basis position order (so `x0^2 < x0*x1`
    /// in this `Ord`, matching ascending basis index).
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// All monomials of degree `k` in `n` variables in graded-lex order.
pub fn monomial_basis(n: usize, k: usize) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(dim(n, k as i64));
    let mut cur = vec![0u32; n];
    fill(&mut cur, 0, k as u32, &mut out);
    out
}

fn fill(cur: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<Monomial>) {
    let n = cur.len();
    if pos + 1 == n {
        cur[pos] = left;
        out.push(Monomial::new(cur.clone()));
        return;
    }
    for e in (0..=left).rev() {
        cur[pos] = e;
        fill(cur, pos + 1, left - e, out);
    }
    cur[pos] = 0;
}

/// Index table for products `S^a x S^b -> S^{a+b}`: entry `[i * dim S^b + j]` is the
/// position of `basis_a[i] * basis_b[j]`.
pub struct ProductTable {
    pub dim_a: usize,
    pub dim_b: usize,
    idx: Vec<u32>,
}

impl ProductTable {
    pub fn new(n: usize, a: usize, b: usize) -> Self {
        let ba = monomial_basis(n, a);
        let bb = monomial_basis(n, b);
        let mut idx = Vec::with_capacity(ba.len() * bb.len());
        let mut scratch = vec![0u32; n];
        for ma in &ba {
            for mb in &bb {
                for (s, (x, y)) in scratch.iter_mut().zip(ma.exps.iter().zip(&mb.exps)) {
                    *s = x + y;
                }
                idx.push(index_of(&scratch) as u32);
            }
        }
        Self {
            dim_a: ba.len(),
            dim_b: bb.len(),
            idx,
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.idx[i * self.dim_b + j] as usize
    }
}
