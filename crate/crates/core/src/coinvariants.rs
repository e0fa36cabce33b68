//! Level-k sl_2 Verlinde algebra and the characters of the coinvariant
//! spaces `L^(k)_l / Y_lambda` in fermionic, rank-three and alternating form.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::characters::f_factor_partitions;
use crate::error::{domain, Error, Result};
use crate::kostka::{alternating_sum, restricted_kostka, x_coefficient};
use crate::partitions::{partition_to_mvec, Partition};
use crate::polyring::{MPoly, Monomial};

/// Element `sum_l c_l [l]` of the level-`k` Verlinde algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerlindeElement {
    level: u32,
    coeffs: Vec<BigInt>,
}

impl VerlindeElement {
    pub fn zero(level: u32) -> Self {
        VerlindeElement {
            level,
            coeffs: vec![BigInt::zero(); level as usize + 1],
        }
    }

    /// The basis element `[l]`.
    pub fn basis(level: u32, l: u32) -> Result<Self> {
        if l > level {
            return Err(domain(format!("[{l}] is not a level-{level} weight")));
        }
        let mut e = Self::zero(level);
        e.coeffs[l as usize] = BigInt::from(1);
        Ok(e)
    }

    pub fn unit(level: u32) -> Self {
        Self::basis(level, 0).expect("[0] exists at every level")
    }

    /// `[0] + [1] + .. + [top]`.
    pub fn ladder(level: u32, top: u32) -> Result<Self> {
        let mut e = Self::zero(level);
        for l in 0..=top {
            e = e.add(&Self::basis(level, l)?)?;
        }
        Ok(e)
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `(self : [l])`.
    pub fn coeff(&self, l: u32) -> BigInt {
        self.coeffs.get(l as usize).cloned().unwrap_or_default()
    }

    fn same_level(&self, other: &Self) -> Result<()> {
        if self.level != other.level {
            return Err(domain(format!(
                "Verlinde levels differ: {} vs {}",
                self.level, other.level
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_level(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(VerlindeElement {
            level: self.level,
            coeffs,
        })
    }

    /// Bilinear extension of `[a][b] = sum [c]`,
    /// `|a-b| <= c <= min(a+b, 2k-a-b)`, `c = a+b mod 2`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_level(other)?;
        let k = self.level as i64;
        let mut out = Self::zero(self.level);
        for (a, ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in other.coeffs.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let (a, b) = (a as i64, b as i64);
                let prod = ca * cb;
                let hi = (a + b).min(2 * k - a - b);
                let mut c = (a - b).abs();
                while c <= hi {
                    out.coeffs[c as usize] += &prod;
                    c += 2;
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::unit(self.level);
        for _ in 0..e {
            acc = acc.mul(self).expect("same level");
        }
        acc
    }
}

/// Ideal data for `I^(k)_l`: generated by `h_23[0] + l`, `e_23[0]`, `e_23[1]^{k-l+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoinvariantIdealSpec {
    pub k: u32,
    pub l: u32,
}

impl CoinvariantIdealSpec {
    pub fn new(k: u32, l: u32) -> Result<Self> {
        if l > k {
            return Err(domain(format!("label l = {l} outside [0, {k}]")));
        }
        Ok(CoinvariantIdealSpec { k, l })
    }

    /// Power of `e_23[1]` (alias `x_1[1]`) in the third generator.
    pub fn e1_power(&self) -> u32 {
        self.k - self.l + 1
    }

    pub fn generators(&self) -> Vec<String> {
        vec![
            format!("h23[0] + {}", self.l),
            "e23[0]".to_string(),
            format!("e23[1]^{}", self.e1_power()),
        ]
    }
}

fn check_args(k: u32, l: u32, lambda: &Partition) -> Result<()> {
    CoinvariantIdealSpec::new(k, l)?;
    if lambda.len() > k as usize {
        return Err(Error::Shape(format!("lambda = {lambda} has more than {k} rows")));
    }
    Ok(())
}

/// `([k]^{m_k} .. [1]^{m_1})` in the level-`k` Verlinde algebra; its
/// coefficients are `K^(k)_{l,mu}(1)`.
pub fn verlinde_expansion(k: u32, mu: &Partition) -> Result<VerlindeElement> {
    let m = partition_to_mvec(mu, k as usize)?;
    let mut acc = VerlindeElement::unit(k);
    for (i, &mi) in m.iter().enumerate() {
        acc = acc.mul(&VerlindeElement::basis(k, i as u32 + 1)?.pow(mi))?;
    }
    Ok(acc)
}

/// `(([0]+..+[k])^{M_k} .. ([0]+[1])^{M_1} : [l])` with `M_i = lambda_i - lambda_{i+1}`.
pub fn verlinde_rule_dim(lambda: &Partition, k: u32, l: u32) -> Result<BigInt> {
    check_args(k, l, lambda)?;
    let big_m = partition_to_mvec(lambda, k as usize)?;
    let mut acc = VerlindeElement::unit(k);
    for (i, &mi) in big_m.iter().enumerate() {
        acc = acc.mul(&VerlindeElement::ladder(k, i as u32 + 1)?.pow(mi))?;
    }
    Ok(acc.coeff(l))
}

/// `sum_{mu ⊂ lambda, |mu| = l mod 2} F_{lambda,mu}(1) K^(k)_{l,mu}(1)`.
pub fn fermionic_dim(lambda: &Partition, k: u32, l: u32) -> Result<BigInt> {
    check_args(k, l, lambda)?;
    let mut acc = BigInt::zero();
    for mu in Partition::between(lambda, &Partition::empty()) {
        if !(mu.size() + l).is_multiple_of(2) {
            continue;
        }
        acc += f_factor_partitions(lambda, &mu).eval_at_one() * restricted_kostka(k, l, &mu)?.eval_at_one();
    }
    Ok(acc)
}

/// Dimension of the coinvariants by the Verlinde rule, cross-checked against
/// the fermionic sum at `q = 1`.
pub fn verlinde_dim(lambda: &Partition, k: u32, l: u32) -> Result<BigInt> {
    let rule = verlinde_rule_dim(lambda, k, l)?;
    let ferm = fermionic_dim(lambda, k, l)?;
    if rule != ferm {
        return Err(Error::Consistency(format!(
            "Verlinde rule gives {rule} but the fermionic sum gives {ferm} for lambda={lambda} k={k} l={l}"
        )));
    }
    Ok(rule)
}

/// `sum_{mu ⊂ lambda, |mu| = l mod 2} z^{|mu|} F_{lambda,mu}(q) K^(k)_{l,mu}(q)`.
pub fn coinv_character(k: u32, l: u32, lambda: &Partition) -> Result<MPoly> {
    check_args(k, l, lambda)?;
    let mut acc = MPoly::zero(1);
    for mu in Partition::between(lambda, &Partition::empty()) {
        if !(mu.size() + l).is_multiple_of(2) {
            continue;
        }
        let coeff = &f_factor_partitions(lambda, &mu) * &restricted_kostka(k, l, &mu)?;
        acc += &coeff.lift(1).mul_monomial(&Monomial::new(0, vec![mu.size() as i32]));
    }
    Ok(acc)
}

/// `sum z_1^{(|mu|-l)/2} z_2^{|lambda|-|mu|} F_{lambda,mu}(q) K^(k)_{l,mu}(q)`.
pub fn coinv_character_w3(k: u32, l: u32, lambda: &Partition) -> Result<MPoly> {
    check_args(k, l, lambda)?;
    let mut acc = MPoly::zero(2);
    for mu in Partition::between(lambda, &Partition::empty()) {
        if mu.size() < l || !(mu.size() - l).is_multiple_of(2) {
            continue;
        }
        let coeff = &f_factor_partitions(lambda, &mu) * &restricted_kostka(k, l, &mu)?;
        let z = vec![((mu.size() - l) / 2) as i32, (lambda.size() - mu.size()) as i32];
        acc += &coeff.lift(2).mul_monomial(&Monomial::new(0, z));
    }
    Ok(acc)
}

/// Alternating sum of the `X_{j,lambda}` with the same q-weights as the
/// restricted/unrestricted Kostka relation.
pub fn coinv_character_alternating(k: u32, l: u32, lambda: &Partition) -> Result<MPoly> {
    check_args(k, l, lambda)?;
    alternating_sum(k, l, lambda.size(), 1, |j| x_coefficient(j as u32, lambda, k))
}

/// `z^{|lambda|} chi(q, z_1 = 1, z_2 = z^{-1})`.
pub fn restrict_character(chi3: &MPoly, lambda: &Partition) -> Result<MPoly> {
    if chi3.nz() != 2 {
        return Err(Error::Arity {
            left: chi3.nz(),
            right: 2,
        });
    }
    let size = lambda.size() as i32;
    let mut out = MPoly::zero(1);
    for (m, c) in chi3.terms() {
        let e = size - m.z[1];
        if e < 0 {
            return Err(Error::Consistency(format!(
                "restriction produced z^{e} from q^{}*z1^{}*z2^{}",
                m.q, m.z[0], m.z[1]
            )));
        }
        out += &MPoly::term(c.clone(), Monomial::new(m.q, vec![e]));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(rows: &[u32]) -> Partition {
        Partition::new(rows.to_vec()).unwrap()
    }

    fn b(k: u32, l: u32) -> VerlindeElement {
        VerlindeElement::basis(k, l).unwrap()
    }

    fn one_plus_qz2() -> MPoly {
        let mut want = MPoly::one(1);
        want += &MPoly::term(1, Monomial::new(1, vec![2]));
        want
    }

    #[test]
    fn verlinde_products() {
        assert_eq!(b(1, 1).mul(&b(1, 1)).unwrap(), b(1, 0));
        assert_eq!(b(2, 1).mul(&b(2, 1)).unwrap(), b(2, 0).add(&b(2, 2)).unwrap());
        assert_eq!(b(3, 2).mul(&b(3, 2)).unwrap(), b(3, 0).add(&b(3, 2)).unwrap());
        for l in 0..=3 {
            assert_eq!(VerlindeElement::unit(3).mul(&b(3, l)).unwrap(), b(3, l));
        }
        assert!(b(1, 1).mul(&b(2, 1)).is_err());
        assert!(VerlindeElement::basis(1, 2).is_err());
    }

    #[test]
    fn verlinde_dim_examples() {
        assert_eq!(verlinde_dim(&p(&[1]), 1, 0).unwrap(), BigInt::from(1));
        assert_eq!(verlinde_dim(&p(&[1]), 1, 1).unwrap(), BigInt::from(1));
        assert_eq!(verlinde_dim(&p(&[2]), 1, 0).unwrap(), BigInt::from(2));
        for k in 1..4 {
            for l in 0..=k {
                let want = if l == 0 { 1 } else { 0 };
                assert_eq!(verlinde_dim(&Partition::empty(), k, l).unwrap(), BigInt::from(want));
            }
        }
    }

    #[test]
    fn coinv_character_examples() {
        assert_eq!(coinv_character(1, 0, &p(&[1])).unwrap(), MPoly::one(1));
        assert_eq!(coinv_character(1, 1, &p(&[1])).unwrap(), MPoly::z_pow(0, 1, 1));
        assert_eq!(coinv_character(1, 0, &p(&[2])).unwrap(), one_plus_qz2());
        assert!(coinv_character(1, 0, &p(&[1, 1])).is_err());
        assert!(coinv_character(1, 2, &p(&[1])).is_err());
    }

    #[test]
    fn w3_and_restriction_examples() {
        let w3 = coinv_character_w3(1, 0, &p(&[2])).unwrap();
        let mut want = MPoly::z_pow(1, 2, 2);
        want += &MPoly::term(1, Monomial::new(1, vec![1, 0]));
        assert_eq!(w3, want);
        assert_eq!(restrict_character(&w3, &p(&[2])).unwrap(), one_plus_qz2());
        assert_eq!(coinv_character_w3(2, 0, &Partition::empty()).unwrap(), MPoly::one(2));
        assert_eq!(
            restrict_character(&MPoly::one(2), &Partition::empty()).unwrap(),
            MPoly::one(1)
        );
        assert!(restrict_character(&MPoly::z_pow(1, 3, 2), &p(&[2])).is_err());
    }

    #[test]
    fn alternating_examples() {
        assert_eq!(coinv_character_alternating(1, 0, &p(&[2])).unwrap(), one_plus_qz2());
        for k in 1..4 {
            for l in 0..=k {
                let want = if l == 0 { MPoly::one(1) } else { MPoly::zero(1) };
                assert_eq!(coinv_character_alternating(k, l, &Partition::empty()).unwrap(), want);
            }
        }
    }

    #[test]
    fn forms_agree_on_small_lambda() {
        for k in 1..=3u32 {
            for lam in [p(&[1]), p(&[2, 1]), p(&[3]), p(&[2, 2]), p(&[3, 1, 1])] {
                if lam.len() > k as usize {
                    continue;
                }
                for l in 0..=k {
                    let ferm = coinv_character(k, l, &lam).unwrap();
                    let w3 = coinv_character_w3(k, l, &lam).unwrap();
                    assert_eq!(restrict_character(&w3, &lam).unwrap(), ferm);
                    assert_eq!(coinv_character_alternating(k, l, &lam).unwrap(), ferm);
                    assert_eq!(ferm.eval_at_one(), verlinde_dim(&lam, k, l).unwrap());
                }
            }
        }
    }

    #[test]
    fn ideal_spec() {
        let s = CoinvariantIdealSpec::new(3, 1).unwrap();
        assert_eq!(s.e1_power(), 3);
        assert_eq!(s.generators()[2], "e23[1]^3");
        assert!(CoinvariantIdealSpec::new(1, 2).is_err());
    }
}
