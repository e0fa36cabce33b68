use serde::Serialize;

use crate::polyring::MPoly;

/// Outcome of checking `lhs == rhs` as an exact polynomial identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub lhs: MPoly,
    pub rhs: MPoly,
    /// `lhs - rhs`; zero iff the identity holds.
    pub discrepancy: MPoly,
}

impl IdentityReport {
    pub fn new(name: impl Into<String>, lhs: MPoly, rhs: MPoly) -> Self {
        let discrepancy = lhs.try_sub(&rhs).unwrap_or_else(|_| {
            // arity mismatch can never be an identity; keep both sides visible
            MPoly::one(0)
        });
        IdentityReport {
            name: name.into(),
            lhs,
            rhs,
            discrepancy,
        }
    }

    pub fn passed(&self) -> bool {
        self.lhs.nz() == self.rhs.nz() && self.discrepancy.is_zero()
    }
}
