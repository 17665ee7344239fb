//! Finite cyclic groups `ℤ_n`, their embeddings, and the Katětov functor
//! into `ℚ/ℤ = ⊕_p U(p)`.

pub mod arith;
pub mod embedding;
pub mod katetov;
pub mod qz;

pub use embedding::{amalgamate, lemma_solve, Amalgam, CyclicEmbedding};
pub use katetov::{
    cyclic_uniform_report, eta, extend_automorphism, generic_section_exists,
    is_homomorphic_extension, k_apply, katetov_restriction, CyclicUniformReport, SectionDefect,
    SubgroupSection,
};
pub use qz::{prufer_decompose, PruferVector, QZElem};
