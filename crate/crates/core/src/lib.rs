//! Symbolic classification engine for torus manifolds with compact
//! non-abelian symmetry groups.
//!
//! The crate enumerates the combinatorial invariants (admissible 5-tuples)
//! that classify such manifolds up to equivariant diffeomorphism, realizes
//! each invariant as a symbolic manifold expression, and reproduces the
//! known classification tables from first principles.

pub mod acceptance;
pub mod classify;
pub mod fivetuples;
pub mod liegroups;
pub mod manifolds;
pub mod weyl;
