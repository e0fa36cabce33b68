//! The short exact sequence `0 -> W' -> W -> W'' -> 0` checked on characters
//! computed by the quotient-ring oracle.

use num_bigint::BigInt;
use serde::Serialize;

use super::ring::hilbert_character;
use crate::error::{Error, Result};
use crate::partitions::{Factor, FusionSpec};
use crate::polyring::{MPoly, Monomial};
use crate::report::IdentityReport;

#[derive(Clone, Debug, Serialize)]
pub struct ExactSequenceReport {
    pub spec: String,
    pub pivot: Factor,
    pub sub_spec: String,
    pub quotient_spec: String,
    pub identity: IdentityReport,
    pub dims: [BigInt; 3],
}

impl ExactSequenceReport {
    pub fn passed(&self) -> bool {
        self.identity.passed() && self.dims[0] == &self.dims[1] + &self.dims[2]
    }
}

/// Whether factor `p` satisfies `n_p >= 2`, `k_p > 0`, and `k_s <= k_p` whenever `n_s >= n_p`.
pub fn is_admissible_pivot(spec: &FusionSpec, p: usize) -> bool {
    let Some(f) = spec.factors().get(p) else {
        return false;
    };
    f.n >= 2 && f.k > 0 && spec.factors().iter().all(|s| s.n < f.n || s.k <= f.k)
}

/// Indices of admissible pivots, one per distinct factor.
pub fn admissible_pivots(spec: &FusionSpec) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for p in 0..spec.num_factors() {
        if is_admissible_pivot(spec, p) && out.iter().all(|&q| spec.factors()[q] != spec.factors()[p]) {
            out.push(p);
        }
    }
    out
}

/// `W'` (`n_p -> n_p - 1`) and `W''` (`k_p -> k_p - 1`).
pub fn sequence_specs(spec: &FusionSpec, p: usize) -> Result<(FusionSpec, FusionSpec)> {
    if !is_admissible_pivot(spec, p) {
        return Err(Error::Precondition(format!(
            "factor #{p} of {spec} is not an admissible pivot"
        )));
    }
    let mut sub: Vec<Factor> = spec.factors().to_vec();
    sub[p].n -= 1;
    let mut quo: Vec<Factor> = spec.factors().to_vec();
    quo[p].k -= 1;
    Ok((FusionSpec::new(&sub, spec.rank())?, FusionSpec::new(&quo, spec.rank())?))
}

/// Checks `ch W = ch W' (z_a -> q z_a) + z_a ch W''` with `a = n_p - 1`.
pub fn exact_sequence_check(spec: &FusionSpec, p: usize) -> Result<ExactSequenceReport> {
    exact_sequence_check_with(spec, p, &mut |s| hilbert_character(s))
}

/// As [`exact_sequence_check`] with a caller-supplied character source
/// (lets sweeps share one cache).
pub fn exact_sequence_check_with(
    spec: &FusionSpec,
    p: usize,
    character: &mut dyn FnMut(&FusionSpec) -> Result<MPoly>,
) -> Result<ExactSequenceReport> {
    let (sub, quo) = sequence_specs(spec, p)?;
    let pivot = spec.factors()[p];
    let var = pivot.n as usize - 2;
    let nz = spec.rank() - 1;
    let whole = character(spec)?;
    let ch_sub = character(&sub)?;
    let ch_quo = character(&quo)?;
    let mut z = vec![0; nz];
    z[var] = 1;
    let rhs = &ch_sub.shift_z_by_q(var, 1)? + &ch_quo.mul_monomial(&Monomial::new(0, z));
    let dims = [whole.eval_at_one(), ch_sub.eval_at_one(), ch_quo.eval_at_one()];
    Ok(ExactSequenceReport {
        spec: spec.to_spec_string(),
        pivot,
        sub_spec: sub.to_spec_string(),
        quotient_spec: quo.to_spec_string(),
        identity: IdentityReport::new(
            format!("exact sequence of {} at {pivot}", spec.to_spec_string()),
            whole,
            rhs,
        ),
        dims,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> FusionSpec {
        FusionSpec::parse(s, None).unwrap()
    }

    #[test]
    fn eighteen_is_six_plus_twelve() {
        let s = spec("2:2,2:2,2:1");
        let pivots = admissible_pivots(&s);
        assert_eq!(pivots, vec![0]);
        let r = exact_sequence_check(&s, 0).unwrap();
        assert!(r.passed());
        assert_eq!(r.dims, [BigInt::from(18), BigInt::from(6), BigInt::from(12)]);
        assert_eq!(r.sub_spec, "2:2,2:1");
        assert_eq!(r.quotient_spec, "2:2,2:1,2:1");
    }

    #[test]
    fn pivots_at_lower_levels() {
        let s = spec("3:1,2:2");
        assert_eq!(admissible_pivots(&s), vec![0, 1]);
        for p in admissible_pivots(&s) {
            assert!(exact_sequence_check(&s, p).unwrap().passed());
        }
        let t = spec("3:1,3:2");
        assert_eq!(admissible_pivots(&t), vec![0]);
    }

    #[test]
    fn inadmissible_pivot_rejected() {
        let s = spec("3:1,3:2");
        assert!(matches!(exact_sequence_check(&s, 1), Err(Error::Precondition(_))));
        assert!(matches!(exact_sequence_check(&s, 7), Err(Error::Precondition(_))));
    }
}
