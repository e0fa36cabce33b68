//! The recursive monomial basis of `W^(n)[mu^(n), .., mu^(1)]`:
//! `B = iota(B[.., mu^(n-1) + (1^k), ..]) ⊔ x_a[0] B[mu^(n) - e_k, ..]`
//! with `a = n - 1` and `iota: x_a[i] -> x_a[i+1]`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::characters::{reduce_step, Reduction};
use crate::error::{domain, Error, Result};
use crate::oracle::linalg::EchelonBasis;
use crate::oracle::ring::{OracleOptions, QuotientRing, VarIndex};
use crate::partitions::{FusionSpec, MChain};
use num_bigint::BigInt;

/// Monomial in the `x_a[i]`, stored as a sorted multiset of variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BasisMonomial {
    factors: Vec<(usize, usize)>,
}

impl BasisMonomial {
    pub fn one() -> Self {
        BasisMonomial { factors: Vec::new() }
    }

    pub fn from_vars(vars: impl IntoIterator<Item = VarIndex>) -> Self {
        let mut factors: Vec<(usize, usize)> = vars.into_iter().map(|v| (v.a, v.i)).collect();
        factors.sort_unstable();
        BasisMonomial { factors }
    }

    pub fn vars(&self) -> impl Iterator<Item = VarIndex> + '_ {
        self.factors.iter().map(|&(a, i)| VarIndex { a, i })
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, i)| i as u32).sum()
    }

    pub fn weight(&self, labels: usize) -> Vec<u32> {
        let mut m = vec![0u32; labels];
        for &(a, _) in &self.factors {
            m[a - 1] += 1;
        }
        m
    }

    fn shifted(&self, a: usize) -> Self {
        BasisMonomial {
            factors: self
                .factors
                .iter()
                .map(|&(b, i)| if b == a { (b, i + 1) } else { (b, i) })
                .collect(),
        }
    }

    fn times(&self, v: VarIndex) -> Self {
        let mut factors = self.factors.clone();
        let at = factors.partition_point(|&f| f < (v.a, v.i));
        factors.insert(at, (v.a, v.i));
        BasisMonomial { factors }
    }

    fn contains(&self, v: VarIndex) -> bool {
        self.factors.binary_search(&(v.a, v.i)).is_ok()
    }

    /// `x{a}[{i}]^{e}` factors, or `e[{i}]^{e}` when `sl2` is set.
    pub fn to_text(&self, sl2: bool) -> String {
        if self.factors.is_empty() {
            return "1".to_string();
        }
        let mut counts: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        for &f in &self.factors {
            *counts.entry(f).or_default() += 1;
        }
        let mut s = String::new();
        for ((a, i), e) in counts {
            if sl2 && a == 1 {
                s.push_str(&format!("e[{i}]"));
            } else {
                s.push_str(&format!("x{a}[{i}]"));
            }
            if e > 1 {
                s.push_str(&format!("^{e}"));
            }
        }
        s
    }

    /// `(weight, degree, factors)`.
    fn sort_key(&self, labels: usize) -> (Vec<u32>, u32, Vec<(usize, usize)>) {
        (self.weight(labels), self.degree(), self.factors.clone())
    }
}

impl fmt::Display for BasisMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(false))
    }
}

impl FromStr for BasisMonomial {
    type Err = Error;

    /// Accepts `1`, or factors `x{a}[{i}]` / `e[{i}]` with optional `^{e}`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(Self::one());
        }
        let bad = || Error::Parse(format!("bad monomial {s:?}"));
        let mut factors = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let (a, after) = if let Some(r) = rest.strip_prefix("e[") {
                (1usize, r)
            } else if let Some(r) = rest.strip_prefix('x') {
                let open = r.find('[').ok_or_else(bad)?;
                (r[..open].parse().map_err(|_| bad())?, &r[open + 1..])
            } else {
                return Err(bad());
            };
            let close = after.find(']').ok_or_else(bad)?;
            let i: usize = after[..close].parse().map_err(|_| bad())?;
            rest = &after[close + 1..];
            let mut e = 1u32;
            if let Some(r) = rest.strip_prefix('^') {
                let end = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
                e = r[..end].parse().map_err(|_| bad())?;
                rest = &r[end..];
            }
            if a == 0 {
                return Err(bad());
            }
            factors.extend(std::iter::repeat_n((a, i), e as usize));
        }
        factors.sort_unstable();
        Ok(BasisMonomial { factors })
    }
}

/// The basis of `W` for `spec`, sorted by `(weight, degree, factors)`.
pub fn build_basis(spec: &FusionSpec) -> Result<Vec<BasisMonomial>> {
    build_basis_for_chain(spec.chain())
}

pub fn build_basis_for_chain(chain: &MChain) -> Result<Vec<BasisMonomial>> {
    if !chain.is_spec_chain() {
        return Err(domain(format!("{chain} is not a spec-derived chain")));
    }
    let mut memo = HashMap::new();
    let mut out = basis_rec(chain, &mut memo)?;
    let labels = chain.rank() - 1;
    out.sort_by_cached_key(|b| b.sort_key(labels));
    Ok(out)
}

fn basis_rec(chain: &MChain, memo: &mut HashMap<String, Vec<BasisMonomial>>) -> Result<Vec<BasisMonomial>> {
    let key = chain.key();
    if let Some(b) = memo.get(&key) {
        return Ok(b.clone());
    }
    let out = match reduce_step(chain)? {
        Reduction::Base => vec![BasisMonomial::one()],
        Reduction::DropLevel(lower) => basis_rec(&lower, memo)?,
        Reduction::Split { iota, psi } => {
            let a = chain.rank() - 1;
            let x0 = VarIndex { a, i: 0 };
            let sub: Vec<BasisMonomial> = basis_rec(&iota.target, memo)?.iter().map(|b| b.shifted(a)).collect();
            let quo: Vec<BasisMonomial> = basis_rec(&psi.target, memo)?.iter().map(|b| b.times(x0)).collect();
            if sub.iter().any(|b| b.contains(x0)) || !quo.iter().all(|b| b.contains(x0)) {
                return Err(Error::Consistency(format!(
                    "branches of the basis recursion overlap at {chain}"
                )));
            }
            sub.into_iter().chain(quo).collect()
        }
    };
    memo.insert(key, out.clone());
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisReport {
    pub size: usize,
    pub expected_size: u128,
    /// One line per graded piece that failed, naming `(d, m)`.
    pub failures: Vec<String>,
}

impl BasisReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.size as u128 == self.expected_size
    }
}

/// Checks the census per graded piece against the quotient ring and that the
/// monomials are independent modulo `J(n,k)`.
pub fn verify_basis(basis: &[BasisMonomial], spec: &FusionSpec) -> Result<BasisReport> {
    verify_basis_with(basis, spec, &OracleOptions::default())
}

pub fn verify_basis_with(basis: &[BasisMonomial], spec: &FusionSpec, opts: &OracleOptions) -> Result<BasisReport> {
    let ring = QuotientRing::new(spec, opts)?;
    let layout = ring.layout();
    let labels = layout.labels();
    let mut failures = Vec::new();
    let mut by_piece: BTreeMap<(Vec<u32>, u32), Vec<&BasisMonomial>> = BTreeMap::new();
    for b in basis {
        if b.vars().any(|v| v.a == 0 || v.a > labels || v.i >= layout.modes(v.a)) {
            failures.push(format!("{b} uses a variable outside R"));
            continue;
        }
        by_piece.entry((b.weight(labels), b.degree())).or_default().push(b);
    }
    let mut seen = HashSet::new();
    for p in ring.pieces() {
        let members = by_piece.remove(&(p.m.clone(), p.d)).unwrap_or_default();
        if members.len() != p.quotient_dim() {
            failures.push(format!(
                "d={} m={:?}: {} monomials for a {}-dimensional piece",
                p.d,
                p.m,
                members.len(),
                p.quotient_dim()
            ));
        }
        let mut span = EchelonBasis::new(p.monomials.len());
        for row in &p.relations {
            span.insert_sparse(row);
        }
        for b in members {
            let mut e = vec![0u8; layout.nvars()];
            for v in b.vars() {
                e[layout.var(v)] += 1;
            }
            let col = p.index_of(&e).expect("graded monomial in its piece");
            if !seen.insert(b.clone()) || !span.insert_sparse(&[(col as u32, BigInt::from(1))]) {
                failures.push(format!("d={} m={:?}: {b} is dependent modulo J", p.d, p.m));
            }
        }
    }
    for ((m, d), members) in by_piece {
        failures.push(format!("d={d} m={m:?}: {} monomials in a zero piece", members.len()));
    }
    Ok(BasisReport {
        size: basis.len(),
        expected_size: spec.dimension(),
        failures,
    })
}


#[cfg(test)]
mod example {
    use super::*;

    #[test]
    fn eighteen_monomials() {
        let fs = FusionSpec::parse("2:2,2:2,2:1", None).unwrap();
        let b = build_basis(&fs).unwrap();
        let got: HashSet<String> = b.iter().map(|m| m.to_text(true)).collect();
        let want: HashSet<String> = [
            "1",
            "e[0]",
            "e[0]^2",
            "e[0]^3",
            "e[0]^4",
            "e[0]^5",
            "e[1]",
            "e[0]e[1]",
            "e[0]^2e[1]",
            "e[0]^3e[1]",
            "e[2]",
            "e[1]^2",
            "e[0]e[2]",
            "e[0]e[1]^2",
            "e[0]^2e[2]",
            "e[0]^2e[1]^2",
            "e[1]e[2]",
            "e[1]^3",
        ]
        .into_iter()
        .map(String::from)
        .collect();
        assert_eq!(b.len(), 18);
        assert_eq!(got, want);
        let mut per_weight = [0usize; 6];
        for m in &b {
            per_weight[m.weight(1)[0] as usize] += 1;
        }
        assert_eq!(per_weight, [1, 3, 5, 5, 3, 1]);
        assert!(verify_basis(&b, &fs).unwrap().passed());
    }
}
