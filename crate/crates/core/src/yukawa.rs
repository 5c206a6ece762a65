//! Multiplication into the socle of a Calabi-Yau Jacobian ring (`N = d + 2`, socle degree
//! `σ = d(d+2)`), and the chain of linear-system identities showing that the `d`-fold
//! product of a hyperplane `K ⊇ J_f^{d+2}` still reaches the socle.

use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jacobian::{Hypersurface, JacobianRing};
use crate::linalg::{rank_profile_dense, DenseMatrix};
use crate::monomial::ProductTable;
use crate::ring::PolyRing;
use crate::sampling::{random_hyperplane_containing, random_smooth_hypersurface};
use crate::subspace::{bpf_check, colon_by_linear_forms, product_span, BpfStatus, GradedSubspace};

fn certified(jr: &JacobianRing) -> Result<usize> {
    if !jr.is_smooth_certified() {
        return Err(Error::NotSmooth("socle is not one-dimensional".into()));
    }
    Ok(jr.source().socle_degree() as usize)
}

/// Rank of `A × B -> R_f^σ ≅ GF(p)`, `(a, b) ↦ λ(ab)` with `λ` the socle functional.
pub fn socle_pairing_rank(jr: &JacobianRing, a: &GradedSubspace, b: &GradedSubspace) -> Result<usize> {
    let sigma = certified(jr)?;
    let ring = jr.ring();
    ring.same_as(&a.ring())?;
    ring.same_as(&b.ring())?;
    if a.degree() + b.degree() != sigma {
        return Err(Error::AmbientMismatch(format!(
            "degrees {} + {} do not add up to the socle degree {sigma}",
            a.degree(),
            b.degree()
        )));
    }
    if a.is_zero() || b.is_zero() {
        return Ok(0);
    }
    let f = ring.field();
    let lambda = jr.socle_functional()?;
    // Gram matrix on standard monomials, then both sides in normal form coordinates
    let std_a = jr.quotient().standard_indices(a.degree())?.to_vec();
    let std_b = jr.quotient().standard_indices(b.degree())?.to_vec();
    let table = ProductTable::new(ring.nvars(), a.degree(), b.degree());
    let mut gram = DenseMatrix::zeros(std_a.len(), std_b.len());
    for (i, &u) in std_a.iter().enumerate() {
        for (j, &v) in std_b.iter().enumerate() {
            gram.set(i, j, lambda[table.get(u as usize, v as usize)]);
        }
    }
    let na: Vec<Vec<u32>> = a
        .basis()
        .iter()
        .map(|v| jr.normal_form(a.degree(), v))
        .collect::<Result<_>>()?;
    let nb: Vec<Vec<u32>> = b
        .basis()
        .iter()
        .map(|v| jr.normal_form(b.degree(), v))
        .collect::<Result<_>>()?;
    let ma = DenseMatrix::from_rows(std_a.len(), &na);
    let mb = DenseMatrix::from_rows(std_b.len(), &nb);
    let pairing = ma.mul(f, &gram).mul(f, &mb.transpose());
    Ok(rank_profile_dense(f, &pairing).rank)
}

fn check_calabi_yau(x: &Hypersurface) -> Result<usize> {
    let d = x.dim();
    if x.degree() != d + 2 {
        return Err(Error::InvalidInput(format!(
            "needs N = d + 2 = {}, got N = {}",
            d + 2,
            x.degree()
        )));
    }
    debug_assert_eq!(x.socle_degree(), (d * (d + 2)) as i64);
    Ok(d)
}

fn check_contains_jacobian(jr: &JacobianRing, k: &GradedSubspace) -> Result<()> {
    let big_n = jr.source().degree();
    if k.degree() != big_n {
        return Err(Error::AmbientMismatch(format!(
            "K must lie in S^{big_n}, got degree {}",
            k.degree()
        )));
    }
    if !k.contains(&jr.jacobian_piece(big_n)?)? {
        return Err(Error::InvalidInput("K does not contain J_f^{d+2}".into()));
    }
    Ok(())
}

/// `K^e` by iterated product spans, row reduced after every factor.
pub fn power_span(k: &GradedSubspace, e: usize) -> Result<GradedSubspace> {
    if e == 0 {
        return GradedSubspace::full(k.ring(), 0);
    }
    let mut acc = k.clone();
    for _ in 1..e {
        acc = product_span(&acc, k)?;
    }
    Ok(acc)
}

fn socle_image_nonzero(jr: &JacobianRing, top: &GradedSubspace) -> Result<bool> {
    let lambda = jr.socle_functional()?;
    let f = jr.ring().field();
    Ok(top.basis().iter().any(|v| {
        v.iter()
            .zip(&lambda)
            .fold(0u32, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
            != 0
    }))
}

/// Whether `K^d` reaches the socle `R_f^{d(d+2)}`, i.e. is not inside `J_f^{d(d+2)}`.
pub fn yukawa_nonvanishing(jr: &JacobianRing, k: &GradedSubspace) -> Result<bool> {
    certified(jr)?;
    let d = check_calabi_yau(jr.source())?;
    check_contains_jacobian(jr, k)?;
    socle_image_nonzero(jr, &power_span(k, d)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StepValue {
    Int(u64),
    Bool(bool),
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStep {
    pub step: String,
    pub expected: String,
    pub got: StepValue,
    pub ok: bool,
}

impl ChainStep {
    fn new(step: &str, expected: String, got: StepValue, ok: bool) -> Self {
        Self {
            step: step.to_string(),
            expected,
            got,
            ok,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct YukawaChainReport {
    pub d: usize,
    #[serde(rename = "N")]
    pub degree: usize,
    pub sigma: usize,
    pub k_dim: usize,
    pub steps: Vec<ChainStep>,
    pub all_ok: bool,
}

impl YukawaChainReport {
    pub fn step(&self, name: &str) -> Option<&ChainStep> {
        self.steps.iter().find(|s| s.step == name)
    }
}

/// Every step from a hyperplane `K ⊇ J_f^{d+2}` to the socle, with exact dimensions.
/// A failing step is reported, not raised.
pub fn yukawa_chain(jr: &JacobianRing, k: &GradedSubspace) -> Result<YukawaChainReport> {
    let sigma = certified(jr)?;
    let d = check_calabi_yau(jr.source())?;
    check_contains_jacobian(jr, k)?;
    if k.codim() != 1 {
        return Err(Error::InvalidInput(format!(
            "K must be a hyperplane of S^{}, got codimension {}",
            d + 2,
            k.codim()
        )));
    }
    run_chain(jr, k, sigma, d)
}

/// The same steps for any `K ⊇ J_f^{d+2}` of any codimension. Degenerate choices such as
/// `K = J_f^{d+2}` simply report failing steps.
pub fn yukawa_chain_any(jr: &JacobianRing, k: &GradedSubspace) -> Result<YukawaChainReport> {
    let sigma = certified(jr)?;
    let d = check_calabi_yau(jr.source())?;
    check_contains_jacobian(jr, k)?;
    run_chain(jr, k, sigma, d)
}

fn run_chain(
    jr: &JacobianRing,
    k: &GradedSubspace,
    sigma: usize,
    d: usize,
) -> Result<YukawaChainReport> {
    let ring = jr.ring();
    let mut steps = Vec::new();

    let kp = colon_by_linear_forms(k)?;
    steps.push(ChainStep::new(
        "colon_codim",
        format!("<= {}", d + 2),
        StepValue::Int(kp.codim() as u64),
        kp.codim() <= d + 2,
    ));

    let bpf = bpf_check(&kp, 2 * d + 4)?;
    steps.push(ChainStep::new(
        "colon_bpf",
        format!("verified by degree {}", 2 * d + 4),
        StepValue::Text(match bpf {
            BpfStatus::Verified(m) => format!("verified({m})"),
            BpfStatus::Unknown => "unknown".into(),
        }),
        bpf.is_verified(),
    ));

    let top2 = ring.dim(2 * d as i64 + 4)?;
    let s_kp = product_span(&GradedSubspace::full(ring, d + 3)?, &kp)?;
    steps.push(ChainStep::new(
        "s_d3_colon_span",
        format!("= {top2}"),
        StepValue::Int(s_kp.dim() as u64),
        s_kp.dim() == top2,
    ));

    let k2 = product_span(k, k)?;
    steps.push(ChainStep::new(
        "k_squared",
        format!("= {top2}"),
        StepValue::Int(k2.dim() as u64),
        k2.dim() == top2,
    ));

    let kd = if d == 2 { k2 } else { power_span(k, d)? };
    let topd = ring.dim(sigma as i64)?;
    steps.push(ChainStep::new(
        "k_power_d",
        format!("= {topd}"),
        StepValue::Int(kd.dim() as u64),
        kd.dim() == topd,
    ));

    let hit = socle_image_nonzero(jr, &kd)?;
    steps.push(ChainStep::new(
        "socle_image_nonzero",
        "true".into(),
        StepValue::Bool(hit),
        hit,
    ));

    let all_ok = steps.iter().all(|s| s.ok);
    Ok(YukawaChainReport {
        d,
        degree: d + 2,
        sigma,
        k_dim: k.dim(),
        steps,
        all_ok,
    })
}

/// A random smooth Calabi-Yau hypersurface of dimension `d` with a random hyperplane
/// `K ⊇ J_f^{d+2}`.
pub fn random_chain_instance(
    ring: PolyRing,
    rng: &mut ChaCha8Rng,
    max_attempts: usize,
) -> Result<(Hypersurface, JacobianRing, GradedSubspace)> {
    let d = ring.nvars() - 2;
    let (x, jr) = random_smooth_hypersurface(ring, d + 2, rng, max_attempts)?;
    let k = random_hyperplane_containing(&jr.jacobian_piece(d + 2)?, rng)?;
    Ok((x, jr, k))
}
