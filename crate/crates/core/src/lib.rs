//! Exact computations on Jacobian rings of projective hypersurfaces over prime fields:
//! Hilbert functions and primitive Hodge numbers, Koszul exactness for linear systems,
//! integer degree criteria for sweeping families, and multiplication maps into the
//! socle of Calabi-Yau Jacobian rings.

pub mod criteria;
pub mod error;
pub mod field;
pub mod jacobian;
pub mod koszul;
pub mod linalg;
pub mod monomial;
pub mod poly;
pub mod quotient;
pub mod ring;
pub mod sampling;
pub mod subspace;
pub mod yukawa;

pub use criteria::{
    abelian_sweep_table, gamma, gamma_i, genus_threshold, per_i_monotonicity, sweep_criterion,
    CriterionInput, CriterionReport,
};
pub use error::{Error, Result};
pub use field::{FieldScalar, PrimeField, DEFAULT_PRIME};
pub use jacobian::{
    certify, hilbert_r, hodge_from_ring, hodge_level, hodge_numbers_prim, jacobian_degree_piece,
    jacobian_generators, smoothness_certificate, HodgeEntry, HodgeVector, Hypersurface,
    JacobianRing, SmoothnessCertificate,
};
pub use koszul::{
    green_scan, jacobian_koszul_check, koszul_slice, middle_exactness, GreenScan, GreenScanConfig,
    JacobianKoszulReport, KoszulReport, KoszulSlice, Method, ModuleKind,
};
pub use linalg::{rank_profile, DenseMatrix, EchelonBasis, RankProfile, SparseMatrix};
pub use monomial::{dim_graded, monomial_basis, Monomial};
pub use poly::Polynomial;
pub use quotient::GradedQuotient;
pub use ring::{PolyRing, DEFAULT_CELL_BUDGET};
pub use subspace::{bpf_check, colon_by_linear_forms, product_span, BpfStatus, GradedSubspace};
pub use yukawa::{
    random_chain_instance, socle_pairing_rank, yukawa_chain, yukawa_chain_any, yukawa_nonvanishing,
    ChainStep, StepValue, YukawaChainReport,
};
