//! Seeded random instances. Every generator draws from a caller-owned [`ChaCha8Rng`], so a
//! fixed seed reproduces the same forms and subspaces on every platform.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::jacobian::{certify, Hypersurface, JacobianRing};
use crate::monomial::monomial_basis;
use crate::poly::Polynomial;
use crate::ring::PolyRing;
use crate::subspace::{bpf_check, BpfStatus, GradedSubspace};

pub const DEFAULT_ATTEMPTS: usize = 50;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn nonzero(rng: &mut ChaCha8Rng, p: u32) -> u32 {
    rng.gen_range(1..p)
}

/// A random smooth form of degree `N`: `Σ a_i x_i^N` with random nonzero `a_i` plus a
/// handful of random terms, redrawn until the smoothness certificate passes.
pub fn random_smooth_hypersurface(
    ring: PolyRing,
    degree: usize,
    rng: &mut ChaCha8Rng,
    max_attempts: usize,
) -> Result<(Hypersurface, JacobianRing)> {
    let n = ring.nvars();
    let field = ring.field();
    let p = field.modulus();
    let basis = monomial_basis(n, degree);
    for _ in 0..max_attempts {
        let mut terms: Vec<(i64, Vec<u32>)> = (0..n)
            .map(|i| {
                let mut e = vec![0u32; n];
                e[i] = degree as u32;
                (nonzero(rng, p) as i64, e)
            })
            .collect();
        let extra = rng.gen_range(n..=2 * n);
        for _ in 0..extra {
            let m = &basis[rng.gen_range(0..basis.len())];
            terms.push((nonzero(rng, p) as i64, m.exponents().to_vec()));
        }
        let f = Polynomial::from_terms(n, field, terms);
        if f.degree() != Some(degree as u32) {
            continue;
        }
        let x = Hypersurface::new(ring, f)?;
        let r = JacobianRing::new(&x)?;
        if certify(&r).is_smooth() {
            return Ok((x, r));
        }
    }
    Err(Error::SamplingFailed {
        what: format!("smooth form of degree {degree} in {n} variables"),
        attempts: max_attempts,
    })
}

/// Degree bound at which `n` general forms of degree `N` generate everything.
pub fn default_bpf_bound(n: usize, degree: usize) -> usize {
    n * (degree.max(1) - 1) + 1
}

/// Span of `dim S^N - c` uniformly random vectors of `S^N`. Its codimension is `c` unless
/// the draw is degenerate.
pub fn random_subspace(
    ring: PolyRing,
    degree: usize,
    codim: usize,
    rng: &mut ChaCha8Rng,
) -> Result<GradedSubspace> {
    let total = ring.dim(degree as i64)?;
    let p = ring.field().modulus();
    let vs: Vec<Vec<u32>> = (0..total.saturating_sub(codim))
        .map(|_| (0..total).map(|_| rng.gen_range(0..p)).collect())
        .collect();
    GradedSubspace::from_vectors(ring, degree, vs)
}

/// A random `W ⊂ S^N` of codimension `c`, spanned by `dim S^N - c` random vectors and
/// redrawn until its dimension is exact and base-point-freeness is certified.
/// Returns `W` and the degree at which the certificate was found.
pub fn random_bpf_subspace(
    ring: PolyRing,
    degree: usize,
    codim: usize,
    rng: &mut ChaCha8Rng,
    max_attempts: usize,
) -> Result<(GradedSubspace, usize)> {
    let n = ring.nvars();
    let total = ring.dim(degree as i64)?;
    if codim >= total || total - codim < n {
        return Err(Error::InvalidInput(format!(
            "codimension {codim} leaves fewer than {n} forms in S^{degree} (dim {total})"
        )));
    }
    let m_max = default_bpf_bound(n, degree).max(degree);
    for _ in 0..max_attempts {
        let w = random_subspace(ring, degree, codim, rng)?;
        if w.codim() != codim {
            continue;
        }
        if let BpfStatus::Verified(m) = bpf_check(&w, m_max)? {
            return Ok((w, m));
        }
    }
    Err(Error::SamplingFailed {
        what: format!("base-point-free subspace of codimension {codim} in S^{degree}"),
        attempts: max_attempts,
    })
}

/// Kernel of a uniformly random nonzero functional on `S^k / j`: a random hyperplane of
/// `S^k` containing `j`.
pub fn random_hyperplane_containing(
    j: &GradedSubspace,
    rng: &mut ChaCha8Rng,
) -> Result<GradedSubspace> {
    let comp = j.complement_indices();
    if comp.is_empty() {
        return Err(Error::InvalidInput(
            "a full subspace lies in no hyperplane".into(),
        ));
    }
    let f = j.ring().field();
    let p = f.modulus();
    let mu = loop {
        let mu: Vec<u32> = comp.iter().map(|_| rng.gen_range(0..p)).collect();
        if mu.iter().any(|&x| x != 0) {
            break mu;
        }
    };
    let last = mu.iter().rposition(|&x| x != 0).expect("nonzero functional");
    let inv = f.inv(mu[last]);
    let len = j.ambient_dim();
    let mut vs: Vec<Vec<u32>> = j.basis().to_vec();
    for (i, &c) in comp.iter().enumerate() {
        if i == last {
            continue;
        }
        // e_c - (mu_c / mu_last) e_last lies in the kernel
        let mut v = vec![0u32; len];
        v[c] = 1;
        v[comp[last]] = f.neg(f.mul(mu[i], inv));
        vs.push(v);
    }
    let k = GradedSubspace::from_vectors(j.ring(), j.degree(), vs)?;
    debug_assert_eq!(k.codim(), 1);
    Ok(k)
}
