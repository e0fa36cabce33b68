//! Characters of fusion products of symmetric-power `sl_n` modules:
//! fermionic and recursive formulas, restricted Kostka polynomials,
//! level-restricted coinvariants, explicit PBW-type bases, and brute-force
//! oracles that compute the same graded dimensions by linear algebra.

pub mod basisgen;
pub mod characters;
pub mod coinvariants;
pub mod error;
pub mod kostka;
pub mod oracle;
pub mod partitions;
pub mod polyring;
pub mod report;
pub mod verify;

pub use basisgen::{build_basis, verify_basis, BasisMonomial, BasisReport};
pub use error::{Error, Result};
pub use partitions::{Factor, FusionSpec, MChain, Partition};
pub use polyring::{MPoly, Monomial};
pub use report::IdentityReport;
