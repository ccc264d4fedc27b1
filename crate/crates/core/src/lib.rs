//! A workbench for finite ai-semirings satisfying `x^n ≈ x`.
//!
//! Algebras are operation tables over dense indices. On top of that sit
//! identity checking for terms of the free ai-semiring, congruence lattices,
//! Green's relations of the multiplicative reduct, constructions of flat
//! extensions of groups, an enumerator of small algebras, and a suite that
//! checks the structure theory of the subvariety `M_n` on concrete instances.

pub mod algebra;
pub mod congruence;
pub mod constructions;
pub mod enumerate;
pub mod error;
pub mod iso;
pub mod partition;
pub mod semigroup;
pub mod terms;
pub mod text;
pub mod verify;

pub use algebra::{
    generated_subalgebras, validate_axioms, Elem, FiniteGroup, FiniteSemiring, MulTable,
    SubsetClosure,
};
pub use congruence::Congruence;
pub use error::{Error, Result};
pub use iso::are_isomorphic;
pub use partition::Partition;
pub use terms::{Identity, SemiringTerm, VarietySpec, Word};
