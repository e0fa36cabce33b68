//! Characters of `W^(n)[mu^(n), .., mu^(1)]`: the fermionic sum over
//! partition sequences, the two-branch recursion coming from the short
//! exact sequence, and q-supernomial coefficients read off from them.

use std::collections::HashMap;
use std::num::NonZeroUsize;
use std::sync::{Mutex, OnceLock};

use lru::LruCache;

use crate::error::{domain, Result};
use crate::partitions::{vec_length, MChain, Partition};
use crate::polyring::{q_binomial, MPoly, Monomial};
use crate::report::IdentityReport;

/// `F_{kappa,nu}(q)` with the product running over `max(len kappa, len nu)`
/// rows. Any vanishing binomial makes the whole factor zero.
pub fn f_factor(kappa: &[i64], nu: &[i64]) -> MPoly {
    let len = vec_length(kappa).max(vec_length(nu));
    f_factor_with_len(kappa, nu, len)
}

/// `F_{kappa,nu}(q) = q^{sum_{a<len} nu_{a+1}(kappa_a - nu_a)}
///   prod_{a<=len} [kappa_a - nu_{a+1} choose nu_a - nu_{a+1}]`.
pub fn f_factor_with_len(kappa: &[i64], nu: &[i64], len: usize) -> MPoly {
    let at = |v: &[i64], i: usize| -> i64 {
        if i == 0 {
            0
        } else {
            v.get(i - 1).copied().unwrap_or(0)
        }
    };
    let mut exp: i64 = 0;
    for a in 1..len {
        exp += at(nu, a + 1) * (at(kappa, a) - at(nu, a));
    }
    let mut acc = MPoly::one(0);
    for a in 1..=len {
        let b = q_binomial(at(kappa, a) - at(nu, a + 1), at(nu, a) - at(nu, a + 1));
        if b.is_zero() {
            return MPoly::zero(0);
        }
        acc = &acc * &b;
    }
    // With every binomial nonzero the exponent is a sum of nonnegative terms.
    debug_assert!(exp >= 0);
    acc.mul_monomial(&Monomial::new(exp as u32, vec![]))
}

pub fn f_factor_partitions(kappa: &Partition, nu: &Partition) -> MPoly {
    f_factor(&kappa.minus(&Partition::empty()), &nu.minus(&Partition::empty()))
}

/// Which side of the exact sequence a reduction step follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// Subspace: `mu^(n-1) += (1^k)`, character taken at `z_{n-1} -> q z_{n-1}`.
    Iota,
    /// Quotient: `mu^(n) -= e_k`, character multiplied by `z_{n-1}`.
    Psi,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub branch: Branch,
    pub source: MChain,
    pub target: MChain,
    /// Length of `mu^(n) - mu^(n-1)`.
    pub k_row: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduction {
    /// Rank one: the trivial module.
    Base,
    /// `mu^(n) = mu^(n-1)`: the same module at rank `n - 1`.
    DropLevel(MChain),
    Split {
        iota: ReductionStep,
        psi: ReductionStep,
    },
}

/// One step of the exact-sequence recursion on a spec-derived chain.
pub fn reduce_step(chain: &MChain) -> Result<Reduction> {
    let n = chain.rank();
    if n == 1 {
        return Ok(Reduction::Base);
    }
    let top = chain.top();
    let below = chain.level(n - 1);
    if top == below {
        return Ok(Reduction::DropLevel(chain.drop_top()));
    }
    let diff = top.minus(below);
    if Partition::from_vec(&diff).is_none() {
        return Err(domain(format!("top difference of {chain} is not a partition")));
    }
    let k = vec_length(&diff);
    let raised = below
        .plus_vec(&vec![1i64; k])
        .ok_or_else(|| domain(format!("{below} + (1^{k}) is not a partition")))?;
    let mut ek = vec![0i64; k];
    ek[k - 1] = -1;
    let lowered = top
        .plus_vec(&ek)
        .ok_or_else(|| domain(format!("{top} - e_{k} is not a partition")))?;
    let iota_target = chain.with_level(n - 1, raised);
    let psi_target = chain.with_level(n, lowered);
    for t in [&iota_target, &psi_target] {
        if !t.is_spec_chain() {
            return Err(domain(format!("reduction of {chain} left the spec family at {t}")));
        }
    }
    Ok(Reduction::Split {
        iota: ReductionStep {
            branch: Branch::Iota,
            source: chain.clone(),
            target: iota_target,
            k_row: k,
        },
        psi: ReductionStep {
            branch: Branch::Psi,
            source: chain.clone(),
            target: psi_target,
            k_row: k,
        },
    })
}

/// Terms of the one-level expansion: every `nu` with
/// `mu^(n) ⊃ nu ⊃ mu^(n-1)` and coefficient
/// `z_{n-1}^{|mu^(n)|-|nu|} F_{mu^(n)-mu^(n-1), nu-mu^(n-1)}(q)`
/// (in `q` and `z_1..z_{n-1}`). Zero coefficients are omitted.
pub fn reduce_one_level(chain: &MChain) -> Result<Vec<(Partition, MPoly)>> {
    let n = chain.rank();
    if n < 2 {
        return Err(crate::error::Error::Arity { left: n, right: 2 });
    }
    let nz = n - 1;
    let top = chain.top();
    let below = chain.level(n - 1);
    let kappa = top.minus(below);
    let mut out = Vec::new();
    for nu in Partition::between(top, below) {
        let f = f_factor(&kappa, &nu.minus(below));
        if f.is_zero() {
            continue;
        }
        let zexp = (top.size() - nu.size()) as i32;
        let coeff = &f.lift(nz) * &MPoly::z_pow(nz - 1, zexp, nz);
        out.push((nu, coeff));
    }
    Ok(out)
}

/// Fermionic character: sum over `mu^(n) = nu^(n) ⊃ .. ⊃ nu^(1)`,
/// `nu^(a) ⊃ mu^(a)`, of `prod_a z_a^{|nu^(a+1)|-|nu^(a)|} F_{nu^(a+1)-mu^(a), nu^(a)-mu^(a)}`.
pub fn char_fermionic(chain: &MChain) -> MPoly {
    let nz = chain.rank() - 1;
    let mut memo = HashMap::new();
    fermionic_from(chain, chain.rank(), chain.top(), nz, &mut memo)
}

fn fermionic_from(
    chain: &MChain,
    level: usize,
    nu: &Partition,
    nz: usize,
    memo: &mut HashMap<(usize, Partition), MPoly>,
) -> MPoly {
    if level == 1 {
        return MPoly::one(nz);
    }
    if let Some(p) = memo.get(&(level, nu.clone())) {
        return p.clone();
    }
    let below = chain.level(level - 1);
    let mut acc = MPoly::zero(nz);
    if nu.contains(below) {
        let kappa = nu.minus(below);
        for lower in Partition::between(nu, below) {
            let f = f_factor(&kappa, &lower.minus(below));
            if f.is_zero() {
                continue;
            }
            let zexp = (nu.size() - lower.size()) as i32;
            let rest = fermionic_from(chain, level - 1, &lower, nz, memo);
            let mut z = vec![0; nz];
            z[level - 2] = zexp;
            acc += &(&f.lift(nz) * &rest).mul_monomial(&Monomial::new(0, z));
        }
    }
    memo.insert((level, nu.clone()), acc.clone());
    acc
}

/// Bounded memo table for [`char_recursive`], shared across threads.
pub struct CharCache {
    inner: Mutex<LruCache<(String, usize), MPoly>>,
}

impl CharCache {
    pub fn new(capacity: usize) -> Self {
        let cap = NonZeroUsize::new(capacity.max(1)).expect("nonzero");
        CharCache {
            inner: Mutex::new(LruCache::new(cap)),
        }
    }

    fn get(&self, key: &(String, usize)) -> Option<MPoly> {
        self.inner.lock().expect("cache lock").get(key).cloned()
    }

    /// Inserts unless another thread got there first; returns the stored value.
    fn insert(&self, key: (String, usize), value: MPoly) -> MPoly {
        let mut guard = self.inner.lock().expect("cache lock");
        guard.get_or_insert(key, || value).clone()
    }

    pub fn len(&self) -> usize {
        self.inner.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub const DEFAULT_CACHE_CAPACITY: usize = 1 << 16;

pub fn default_cache() -> &'static CharCache {
    static CACHE: OnceLock<CharCache> = OnceLock::new();
    CACHE.get_or_init(|| CharCache::new(DEFAULT_CACHE_CAPACITY))
}

/// Character by the two-branch recursion
/// `chi[mu^(n), mu^(n-1), ..] = chi[mu^(n), mu^(n-1)+(1^k), ..](z_{n-1} -> q z_{n-1})
///   + z_{n-1} chi[mu^(n) - e_k, mu^(n-1), ..]`.
pub fn char_recursive(chain: &MChain) -> Result<MPoly> {
    char_recursive_with(chain, default_cache())
}

pub fn char_recursive_with(chain: &MChain, cache: &CharCache) -> Result<MPoly> {
    if !chain.is_spec_chain() {
        return Err(domain(format!("{chain} is not a spec-derived chain")));
    }
    recursive_inner(chain, chain.rank() - 1, cache)
}

fn recursive_inner(chain: &MChain, nz: usize, cache: &CharCache) -> Result<MPoly> {
    let key = (chain.key(), nz);
    if let Some(p) = cache.get(&key) {
        return Ok(p);
    }
    let value = match reduce_step(chain)? {
        Reduction::Base => MPoly::one(nz),
        Reduction::DropLevel(lower) => recursive_inner(&lower, nz, cache)?,
        Reduction::Split { iota, psi } => {
            let var = chain.rank() - 2;
            let sub = recursive_inner(&iota.target, nz, cache)?.shift_z_by_q(var, 1)?;
            let quo = recursive_inner(&psi.target, nz, cache)?;
            &sub + &quo.mul_monomial(&unit_z(var, nz))
        }
    };
    Ok(cache.insert(key, value))
}

fn unit_z(var: usize, nz: usize) -> Monomial {
    let mut z = vec![0; nz];
    z[var] = 1;
    Monomial::new(0, z)
}

/// `S~_{lambda,mu}(q)`: coefficient of `z_1^{lambda_2} .. z_{n-1}^{lambda_n}`
/// in `chi^(n)[mu]`, `n = lambda.len()`.
pub fn supernomial(lambda: &[u32], mu: &Partition) -> Result<MPoly> {
    if lambda.is_empty() {
        return Err(domain("lambda must have at least one component"));
    }
    let total: u32 = lambda.iter().sum();
    if total != mu.size() {
        return Err(domain(format!("|lambda| = {total} but |mu| = {}", mu.size())));
    }
    let chi = char_fermionic(&MChain::top_only(mu.clone(), lambda.len()));
    let z: Vec<i32> = lambda[1..].iter().map(|&x| x as i32).collect();
    Ok(chi.z_coefficient(&z))
}

/// Checks `chi[chain] = chi[iota target](z_{n-1} -> q z_{n-1}) + z_{n-1} chi[psi target]`
/// with every character computed by the fermionic formula.
pub fn exact_sequence_char_identity(chain: &MChain) -> Result<IdentityReport> {
    let nz = chain.rank().saturating_sub(1);
    let lhs = char_fermionic(chain);
    let rhs = match reduce_step(chain)? {
        Reduction::Base => MPoly::one(nz),
        Reduction::DropLevel(lower) => char_fermionic(&lower).lift(nz),
        Reduction::Split { iota, psi } => {
            let var = chain.rank() - 2;
            let sub = char_fermionic(&iota.target).shift_z_by_q(var, 1)?;
            let quo = char_fermionic(&psi.target).mul_monomial(&unit_z(var, nz));
            &sub + &quo
        }
    };
    Ok(IdentityReport::new(format!("exact sequence at {chain}"), lhs, rhs))
}
