//! sl_2 Kostka polynomials: the level-restricted fermionic sum, the
//! unrestricted ones peeled off the rank-two character, the alternating-sum
//! relation between them, and the branching coefficients `X_{j,lambda}`.

use std::collections::BTreeMap;

use crate::characters::{char_fermionic, f_factor_partitions};
use crate::error::{domain, Error, Result};
use crate::partitions::{partition_to_mvec, MChain, Partition};
use crate::polyring::{q_binomial, MPoly, Monomial};
use crate::report::IdentityReport;

/// Data of the restricted fermionic sum for a fixed `(k, l, mu)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedKostkaParams {
    pub k: usize,
    pub l: usize,
    pub m: Vec<u32>,
    pub v: Vec<i64>,
}

impl RestrictedKostkaParams {
    pub fn new(k: u32, l: u32, mu: &Partition) -> Result<Self> {
        if l > k {
            return Err(domain(format!("label l = {l} outside [0, {k}]")));
        }
        let (k, l) = (k as usize, l as usize);
        let m = partition_to_mvec(mu, k)?;
        let v = (1..=k).map(|i| (i as i64 - k as i64 + l as i64).max(0)).collect();
        Ok(RestrictedKostkaParams { k, l, m, v })
    }

    /// `A_ij = min(i, j)`, 1-based.
    pub fn a(i: usize, j: usize) -> i64 {
        i.min(j) as i64
    }

    /// `(A u)_i` for 1-based `i`.
    pub fn apply_a(u: &[i64], i: usize) -> i64 {
        u.iter().enumerate().map(|(j, &x)| Self::a(i, j + 1) * x).sum()
    }

    pub fn quadratic(s: &[i64]) -> i64 {
        (1..=s.len()).map(|i| s[i - 1] * Self::apply_a(s, i)).sum()
    }

    /// `|u| = sum_i i u_i`.
    pub fn norm(u: &[i64]) -> i64 {
        u.iter().enumerate().map(|(i, &x)| (i as i64 + 1) * x).sum()
    }

    /// Every `s >= 0` with `|s| = target`.
    pub fn summation_vectors(&self, target: i64) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        let mut cur = vec![0i64; self.k];
        fill_s(self.k, target, &mut cur, &mut out);
        out
    }

    /// Contribution of one summation vector.
    pub fn term(&self, s: &[i64]) -> MPoly {
        let m: Vec<i64> = self.m.iter().map(|&x| x as i64).collect();
        let reduced: Vec<i64> = m.iter().zip(s).map(|(&mi, &si)| mi - 2 * si).collect();
        let mut acc = MPoly::one(0);
        for i in 1..=self.k {
            let top = Self::apply_a(&reduced, i) - self.v[i - 1] + s[i - 1];
            let b = q_binomial(top, s[i - 1]);
            if b.is_zero() {
                return b;
            }
            acc = &acc * &b;
        }
        let vs: i64 = self.v.iter().zip(s).map(|(a, b)| a * b).sum();
        let exp = Self::quadratic(s) + vs;
        acc.mul_monomial(&Monomial::new(exp as u32, vec![]))
    }
}

// Coordinates are filled from the highest index down, so `s_i <= rest / i`.
fn fill_s(i: usize, rest: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if i == 0 {
        if rest == 0 {
            out.push(cur.clone());
        }
        return;
    }
    for si in 0..=rest / i as i64 {
        cur[i - 1] = si;
        fill_s(i - 1, rest - si * i as i64, cur, out);
    }
    cur[i - 1] = 0;
}

/// `K^(k)_{l,mu}(q)`.
pub fn restricted_kostka(k: u32, l: u32, mu: &Partition) -> Result<MPoly> {
    let params = RestrictedKostkaParams::new(k, l, mu)?;
    let size = mu.size() as i64;
    let l = l as i64;
    if size < l || (size - l) % 2 != 0 {
        return Ok(MPoly::zero(0));
    }
    let mut acc = MPoly::zero(0);
    for s in params.summation_vectors((size - l) / 2) {
        acc += &params.term(&s);
    }
    Ok(acc)
}

/// All `K_{j,mu}(q)`, `j = |mu|, |mu|-2, ..`, read off `chi^(2)[mu]`.
pub fn unrestricted_kostka_all(mu: &Partition) -> Result<BTreeMap<u32, MPoly>> {
    let size = mu.size() as i32;
    let mut rest = char_fermionic(&MChain::top_only(mu.clone(), 2));
    let mut out = BTreeMap::new();
    let mut j = size;
    while j >= 0 {
        let top = (size + j) / 2;
        let kj = rest.z_coefficient(&[top]);
        if !kj.is_zero() {
            let mut string = MPoly::zero(1);
            for t in (size - j) / 2..=top {
                string += &MPoly::z_pow(0, t, 1);
            }
            rest = &rest - &(&kj.lift(1) * &string);
        }
        out.insert(j as u32, kj);
        j -= 2;
    }
    if !rest.is_zero() {
        return Err(Error::Consistency(format!(
            "peel-off of chi^(2)[{mu}] left remainder {rest}"
        )));
    }
    Ok(out)
}

/// `K_{j,mu}(q)`; zero when `j` and `|mu|` differ in parity or `j > |mu|`.
pub fn unrestricted_kostka(j: u32, mu: &Partition) -> Result<MPoly> {
    if j > mu.size() {
        return Err(domain(format!("j = {j} exceeds |mu| = {}", mu.size())));
    }
    Ok(unrestricted_kostka_all(mu)?
        .remove(&j)
        .unwrap_or_else(|| MPoly::zero(0)))
}

fn kostka_or_zero(table: &BTreeMap<u32, MPoly>, j: i64) -> MPoly {
    if j < 0 {
        return MPoly::zero(0);
    }
    table.get(&(j as u32)).cloned().unwrap_or_else(|| MPoly::zero(0))
}

/// Runs the alternating sum over `i` with a caller-supplied `j -> K_j`,
/// stopping once both indices pass `bound`.
pub(crate) fn alternating_sum<F>(k: u32, l: u32, bound: u32, nz: usize, mut kj: F) -> Result<MPoly>
where
    F: FnMut(i64) -> Result<MPoly>,
{
    let (k, l, bound) = (k as i64, l as i64, bound as i64);
    let mut acc = MPoly::zero(nz);
    for i in 0i64.. {
        let plus = 2 * (k + 2) * i + l;
        let minus = 2 * (k + 2) * i - l - 2;
        if i > 0 && plus > bound && minus > bound {
            break;
        }
        if plus <= bound {
            let e = (k + 2) * i * i + (l + 1) * i;
            acc += &kj(plus)?.mul_monomial(&Monomial::new(e as u32, vec![0; nz]));
        }
        if i > 0 && (0..=bound).contains(&minus) {
            let e = (k + 2) * i * i - (l + 1) * i;
            acc = &acc - &kj(minus)?.mul_monomial(&Monomial::new(e as u32, vec![0; nz]));
        }
    }
    Ok(acc)
}

/// `sum_i q^{..} K_{2(k+2)i+l, mu} - q^{..} K_{2(k+2)i-l-2, mu}` from the unrestricted table.
pub fn alternating_kostka(k: u32, l: u32, mu: &Partition) -> Result<MPoly> {
    let table = unrestricted_kostka_all(mu)?;
    alternating_sum(k, l, mu.size(), 0, |j| Ok(kostka_or_zero(&table, j)))
}

/// Compares `K^(k)_{l,mu}` with its expression through unrestricted Kostka polynomials.
pub fn check_alternating_sum(k: u32, l: u32, mu: &Partition) -> Result<IdentityReport> {
    let lhs = restricted_kostka(k, l, mu)?;
    let rhs = alternating_kostka(k, l, mu)?;
    Ok(IdentityReport::new(
        format!("alternating sum k={k} l={l} mu={mu}"),
        lhs,
        rhs,
    ))
}

/// `X_{j,lambda}(q, z) = sum_{mu ⊂ lambda} z^{|mu|} F_{lambda,mu}(q) K_{j,mu}(q)`,
/// the coefficient of `chi_j(z_1)` in
/// `chi^(3)[lambda] = z_2^{|lambda|} sum_j chi_j(z_1) X_{j,lambda}(q, z_1^{1/2} z_2^{-1})`.
pub fn x_coefficient(j: u32, lambda: &Partition, k_level: u32) -> Result<MPoly> {
    if lambda.len() > k_level as usize {
        return Err(Error::Shape(format!("lambda = {lambda} has more than {k_level} rows")));
    }
    let mut acc = MPoly::zero(1);
    for mu in Partition::between(lambda, &Partition::empty()) {
        if j > mu.size() || !(mu.size() - j).is_multiple_of(2) {
            continue;
        }
        let kj = unrestricted_kostka(j, &mu)?;
        if kj.is_zero() {
            continue;
        }
        let f = f_factor_partitions(lambda, &mu);
        let term = (&f * &kj).lift(1);
        acc += &(&term * &MPoly::z_pow(0, mu.size() as i32, 1));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn p(rows: &[u32]) -> Partition {
        Partition::new(rows.to_vec()).unwrap()
    }

    fn q(coeffs: &[i64]) -> MPoly {
        MPoly::from_q_coeffs(coeffs.iter().copied())
    }

    #[test]
    fn restricted_examples() {
        for k in 1..4 {
            assert_eq!(restricted_kostka(k, 0, &Partition::empty()).unwrap(), MPoly::one(0));
            assert!(restricted_kostka(k, 1, &Partition::empty()).unwrap().is_zero());
        }
        assert_eq!(restricted_kostka(2, 0, &p(&[2])).unwrap(), q(&[0, 1]));
        assert_eq!(restricted_kostka(1, 1, &p(&[1])).unwrap(), MPoly::one(0));
        assert_eq!(restricted_kostka(1, 0, &p(&[2])).unwrap(), q(&[0, 1]));
        assert!(restricted_kostka(2, 1, &p(&[2])).unwrap().is_zero());
    }

    #[test]
    fn restricted_errors() {
        assert!(matches!(restricted_kostka(1, 2, &p(&[1])), Err(Error::Domain(_))));
        assert!(matches!(restricted_kostka(1, 0, &p(&[1, 1])), Err(Error::Shape(_))));
    }

    #[test]
    fn quadratic_form_is_positive() {
        let params = RestrictedKostkaParams::new(4, 0, &p(&[4])).unwrap();
        for t in 1..6 {
            for s in params.summation_vectors(t) {
                assert!(RestrictedKostkaParams::quadratic(&s) > 0);
                assert_eq!(RestrictedKostkaParams::norm(&s), t);
            }
        }
    }

    #[test]
    fn unrestricted_examples() {
        let mu = p(&[2]);
        assert_eq!(unrestricted_kostka(2, &mu).unwrap(), MPoly::one(0));
        assert_eq!(unrestricted_kostka(0, &mu).unwrap(), q(&[0, 1]));
        assert!(unrestricted_kostka(1, &mu).unwrap().is_zero());
        for mu in [p(&[3, 1]), p(&[2, 2, 1]), p(&[4]), p(&[1, 1, 1])] {
            assert_eq!(unrestricted_kostka(mu.size(), &mu).unwrap(), MPoly::one(0));
        }
        assert!(unrestricted_kostka(3, &mu).is_err());
    }

    #[test]
    fn unrestricted_kostka_of_a_single_row_counts_tableaux() {
        // mu = (n) is the n-fold product of the 2-dim module: K_{j,(n)}(1)
        // counts standard tableaux of shape ((n+j)/2, (n-j)/2).
        for n in 0..7u32 {
            let mu = Partition::new(vec![n]).unwrap();
            let table = unrestricted_kostka_all(&mu).unwrap();
            for (&j, kj) in &table {
                let b = (n - j) / 2;
                let ballot = crate::partitions::binomial(n as u64, b as u64) as i64
                    - if b == 0 {
                        0
                    } else {
                        crate::partitions::binomial(n as u64, b as u64 - 1) as i64
                    };
                assert_eq!(kj.eval_at_one(), BigInt::from(ballot), "n={n} j={j}");
            }
            // a single symmetric power is irreducible
            let col = Partition::new(vec![1; n as usize]).unwrap();
            for (&j, kj) in &unrestricted_kostka_all(&col).unwrap() {
                let want = if j == n { MPoly::one(0) } else { MPoly::zero(0) };
                assert_eq!(kj, &want);
            }
        }
    }

    #[test]
    fn alternating_examples() {
        assert!(check_alternating_sum(2, 0, &p(&[2])).unwrap().passed());
        let r = check_alternating_sum(2, 0, &Partition::empty()).unwrap();
        assert!(r.passed());
        assert_eq!(r.lhs, MPoly::one(0));
    }

    #[test]
    fn x_coefficient_examples() {
        let lam = p(&[2]);
        assert!(x_coefficient(3, &lam, 1).unwrap().is_zero());
        assert_eq!(x_coefficient(2, &lam, 1).unwrap(), MPoly::z_pow(0, 2, 1));
        let mut want = MPoly::one(1);
        want += &(&q(&[0, 1]).lift(1) * &MPoly::z_pow(0, 2, 1));
        assert_eq!(x_coefficient(0, &lam, 1).unwrap(), want);
        assert!(x_coefficient(0, &p(&[1, 1]), 1).is_err());
    }

    /// Rebuilds `chi^(3)[lambda]` from the `X_j` and the sl_2 characters `chi_j`.
    #[test]
    fn x_coefficients_expand_the_rank_three_character() {
        for lam in [p(&[2]), p(&[2, 1]), p(&[3, 1]), p(&[2, 2]), p(&[3, 2, 1])] {
            let size = lam.size() as i32;
            let mut rebuilt = MPoly::zero(2);
            for j in 0..=lam.size() {
                let x = x_coefficient(j, &lam, 3).unwrap();
                for (mono, c) in x.terms() {
                    let e = mono.z[0];
                    assert_eq!((e - j as i32) % 2, 0);
                    for t in 0..=j as i32 {
                        let z1 = (e - j as i32) / 2 + t;
                        let m = Monomial::new(mono.q, vec![z1, size - e]);
                        rebuilt += &MPoly::term(c.clone(), m);
                    }
                }
            }
            assert_eq!(rebuilt, char_fermionic(&MChain::top_only(lam.clone(), 3)), "{lam}");
        }
    }
}
