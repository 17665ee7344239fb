//! Homogeneity analysis for finite structures.
//!
//! The crate decides homogeneity, set-homogeneity and uniform homogeneity of
//! finite relational structures, constructs extension functors where they
//! exist, checks the Katětov-functor obstruction for finite Fraïssé limits,
//! implements exact `ℚ/ℤ` arithmetic for the Katětov functor on finite
//! cyclic groups, and exhaustively classifies small digraphs.
//!
//! Permutations compose right-to-left: `(g ∘ h)(x) = g(h(x))`.

pub mod cyclic;
pub mod ens;
pub mod error;
pub mod fixtures;
pub mod homogeneity;
pub mod iso;
pub mod perm;
pub mod search;
pub mod structure;
pub mod verify;

pub use error::{Error, ErrorKind, Result};
pub use homogeneity::{
    analyze, build_uniform_functor, is_homogeneous, is_set_homogeneous, is_uniformly_homogeneous,
    katetov_obstruction, section_search, HomogeneityReport, Obstruction, PartialIso,
    SectionWitness, UniformFunctor, Verdict,
};
pub use iso::{age, automorphism_group, canonical_form, find_isomorphisms, CanonicalForm};
pub use perm::{embed_sym, group_closure, is_homomorphism, Perm, PermGroup};
pub use structure::{FinStructure, RelationSymbol, Signature, StructureFile};
