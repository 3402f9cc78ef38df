//! A computational kernel for Coxeter systems: canonical reduced words,
//! inversion sets, parabolic quotient projections, weak and Bruhat order,
//! and machine verification of the descent-set identities relating them,
//! on desk-scale finite groups.
//!
//! The crate is organized around one immutable [`CoxeterSystem`] value per
//! group; elements are plain data (their ShortLex normal forms) and every
//! operation is a method on the system. The descent decisions all reduce to
//! the root sign test of the standard geometric representation.

pub mod calculus;
pub mod element;
pub mod enumeration;
pub mod geometry;
pub mod groupspec;
pub mod oracle;
pub mod sweeps;
pub mod system;
pub mod theorems;

pub use calculus::{CalculusError, JoinError, ParabolicFactorization, ReflectionSet};
pub use element::{ElementParseError, EngineError, GroupElement, Word, WordParseError};
pub use enumeration::EnumeratedGroup;
pub use geometry::{DegenerateSign, RootVector, SignClass, SIGN_EPSILON};
pub use groupspec::{GroupSpec, SpecFileError};
pub use oracle::{OracleElement, OracleModel, Permutation, SignedPermutation, UnsupportedType};
pub use sweeps::{SweepOptions, SweepScope, SweepSummary, Sweeper};
pub use system::{
    BilinearForm, Bond, CatalogError, CoxeterMatrix, CoxeterSystem, DescentSet, GeneratorId,
    GeneratorSet, MatrixError, NamedType, ParabolicMask, DEFAULT_LENGTH_CAP, MAX_RANK,
};
pub use theorems::{Memo, PreconditionError, StatementId, TheoremError, VerificationReport};
