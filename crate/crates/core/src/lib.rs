//! Finite lattices, their sup-preserving endomaps `Q(L, L)`, the Raney
//! transforms between sup- and inf-preserving maps, and exhaustive checks
//! of the quantale identities that relate them.
//!
//! - [`lattice`]: finite posets and lattices, duals, downset lattices,
//!   irreducibles, automorphisms, JSON files.
//! - [`maps`]: sup/inf-preserving maps between two lattices, adjoints,
//!   generator maps, Raney transforms, factorization.
//! - [`endo`]: the enumerated homset `Q(L, L)` with composition, residuals,
//!   tight maps, cyclic and dualizing elements.
//! - [`quantale`]: residual tables for any finite quantale.
//! - [`structures`]: explicit quantales, irreducibles of `Q`, weakening
//!   relations, natural transformations.
//! - [`suite`]: the named checks and serializable reports.
//! - [`oracle`]: brute-force references used to cross-check the above.

pub mod endo;
pub mod lattice;
pub mod maps;
pub mod oracle;
pub mod quantale;
pub mod structures;
pub mod suite;
