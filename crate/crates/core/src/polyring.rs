//! Sparse polynomials in `q` and Laurent variables `z_1..z_r` with
//! arbitrary-precision integer coefficients.
//!
//! `q` exponents are nonnegative, `z` exponents are signed. Terms are kept
//! in a `BTreeMap` keyed by [`Monomial`], whose derived ordering is the
//! lexicographic order on `(q, z_1, .., z_r)`; this is also the
//! serialization order.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub q: u32,
    pub z: Vec<i32>,
}

impl Monomial {
    pub fn new(q: u32, z: Vec<i32>) -> Self {
        Monomial { q, z }
    }

    pub fn one(nz: usize) -> Self {
        Monomial { q: 0, z: vec![0; nz] }
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            q: self.q + other.q,
            z: self.z.iter().zip(&other.z).map(|(a, b)| a + b).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "JsonPoly", try_from = "JsonPoly")]
pub struct MPoly {
    nz: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

/// Target of a single `z`-variable substitution in [`MPoly::specialize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Subst {
    /// `z_i` stays `z_i` (same index in the output).
    Keep,
    /// `z_i -> c`.
    Value(i64),
    /// `z_i -> q^q_shift * z_target^power`; `target: None` drops the
    /// `z` part and leaves only the power of `q`.
    Monomial {
        q_shift: i64,
        target: Option<usize>,
        power: i32,
    },
}

impl MPoly {
    pub fn zero(nz: usize) -> Self {
        MPoly {
            nz,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nz: usize) -> Self {
        Self::constant(BigInt::one(), nz)
    }

    pub fn constant(c: impl Into<BigInt>, nz: usize) -> Self {
        Self::term(c, Monomial::one(nz))
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> Self {
        let nz = m.z.len();
        let mut p = MPoly::zero(nz);
        p.add_term(m, c.into());
        p
    }

    /// `q^d`
    pub fn q_pow(d: u32, nz: usize) -> Self {
        Self::term(1, Monomial { q: d, z: vec![0; nz] })
    }

    /// `z_{var+1}^power` (0-based `var`).
    pub fn z_pow(var: usize, power: i32, nz: usize) -> Self {
        assert!(var < nz, "z-variable {var} out of range for {nz} variables");
        let mut z = vec![0; nz];
        z[var] = power;
        Self::term(1, Monomial { q: 0, z })
    }

    /// Builds a polynomial in `q` alone from its coefficient list.
    pub fn from_q_coeffs<I, C>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = C>,
        C: Into<BigInt>,
    {
        let mut p = MPoly::zero(0);
        for (d, c) in coeffs.into_iter().enumerate() {
            p.add_term(Monomial { q: d as u32, z: vec![] }, c.into());
        }
        p
    }

    pub fn nz(&self) -> usize {
        self.nz
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: BigInt) {
        debug_assert_eq!(m.z.len(), self.nz);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_arity(&self, other: &MPoly) -> Result<()> {
        if self.nz != other.nz {
            return Err(Error::Arity {
                left: self.nz,
                right: other.nz,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MPoly) -> Result<MPoly> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MPoly) -> Result<MPoly> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &MPoly) -> Result<MPoly> {
        self.check_arity(other)?;
        let mut out = MPoly::zero(self.nz);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> MPoly {
        let mut out = MPoly::zero(self.nz);
        if c.is_zero() {
            return out;
        }
        for (m, a) in &self.terms {
            out.terms.insert(m.clone(), a * c);
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MPoly {
        assert_eq!(m.z.len(), self.nz);
        MPoly {
            nz: self.nz,
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one(self.nz);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Embeds into a ring with `nz >= self.nz` variables; the existing
    /// variables keep their indices.
    pub fn lift(&self, nz: usize) -> MPoly {
        assert!(nz >= self.nz, "cannot lift {} variables into {}", self.nz, nz);
        let mut out = MPoly::zero(nz);
        for (m, c) in &self.terms {
            let mut z = m.z.clone();
            z.resize(nz, 0);
            out.terms.insert(Monomial { q: m.q, z }, c.clone());
        }
        out
    }

    /// `z_var -> q^shift * z_var`.
    pub fn shift_z_by_q(&self, var: usize, shift: i64) -> Result<MPoly> {
        let mut subs = vec![Subst::Keep; self.nz];
        subs[var] = Subst::Monomial {
            q_shift: shift,
            target: Some(var),
            power: 1,
        };
        self.specialize(None, &subs, self.nz)
    }

    /// Exact substitution. `q_val` replaces `q` by an integer; `subs[i]`
    /// describes the image of `z_{i+1}`; the result has `out_nz` variables.
    pub fn specialize(&self, q_val: Option<i64>, subs: &[Subst], out_nz: usize) -> Result<MPoly> {
        if subs.len() != self.nz {
            return Err(Error::Arity {
                left: self.nz,
                right: subs.len(),
            });
        }
        let mut out = MPoly::zero(out_nz);
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut qexp = m.q as i64;
            let mut z = vec![0i32; out_nz];
            for (i, (&e, s)) in m.z.iter().zip(subs).enumerate() {
                match s {
                    Subst::Keep => {
                        if i >= out_nz {
                            return Err(domain(format!("kept variable z{} missing from output", i + 1)));
                        }
                        z[i] += e;
                    }
                    Subst::Value(v) => {
                        if e < 0 && v.abs() != 1 {
                            return Err(domain(format!("z{}^{} at z{}={} is not integral", i + 1, e, i + 1, v)));
                        }
                        coeff *= BigInt::from(*v).pow(e.unsigned_abs());
                    }
                    Subst::Monomial { q_shift, target, power } => {
                        qexp += q_shift * e as i64;
                        if let Some(t) = target {
                            if *t >= out_nz {
                                return Err(domain(format!("target z{} out of range", t + 1)));
                            }
                            z[*t] += power * e;
                        }
                    }
                }
            }
            if qexp < 0 {
                return Err(domain(format!("substitution produced q^{qexp}")));
            }
            match q_val {
                Some(v) => {
                    coeff *= BigInt::from(v).pow(qexp as u32);
                    out.add_term(Monomial { q: 0, z }, coeff);
                }
                None => out.add_term(Monomial { q: qexp as u32, z }, coeff),
            }
        }
        Ok(out)
    }

    /// Coefficient of `z_{var+1}^power`, as a polynomial in the remaining
    /// variables (`nz - 1` of them).
    pub fn coefficient_of(&self, var: usize, power: i32) -> Result<MPoly> {
        if var >= self.nz {
            return Err(domain(format!("variable index {var} >= {}", self.nz)));
        }
        let mut out = MPoly::zero(self.nz - 1);
        for (m, c) in &self.terms {
            if m.z[var] == power {
                let mut z = m.z.clone();
                z.remove(var);
                out.add_term(Monomial { q: m.q, z }, c.clone());
            }
        }
        Ok(out)
    }

    /// Coefficient of a full `z`-monomial, as a polynomial in `q`.
    pub fn z_coefficient(&self, z: &[i32]) -> MPoly {
        assert_eq!(z.len(), self.nz);
        let mut out = MPoly::zero(0);
        for (m, c) in &self.terms {
            if m.z == z {
                out.add_term(Monomial { q: m.q, z: vec![] }, c.clone());
            }
        }
        out
    }

    /// Groups the terms by their `z`-exponent, each group a polynomial in `q`.
    pub fn z_groups(&self) -> BTreeMap<Vec<i32>, MPoly> {
        let mut out: BTreeMap<Vec<i32>, MPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.z.clone())
                .or_insert_with(|| MPoly::zero(0))
                .add_term(Monomial { q: m.q, z: vec![] }, c.clone());
        }
        out
    }

    /// Value at `q = 1` and all `z = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn assert_nonnegative(&self, what: &str) -> Result<()> {
        match self.terms.iter().find(|(_, c)| c.is_negative()) {
            None => Ok(()),
            Some((m, c)) => Err(Error::Consistency(format!(
                "{what}: negative coefficient {c} at q^{} z^{:?}",
                m.q, m.z
            ))),
        }
    }

    pub fn max_q_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.q).max()
    }

    /// Human-readable form grouped by `z`-monomial, e.g.
    /// `1 + (1+q)*z1 + z1^2`.
    pub fn to_grouped_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut groups: Vec<(Vec<i32>, MPoly)> = self.z_groups().into_iter().collect();
        groups.sort_by(|(a, _), (b, _)| {
            let da: i64 = a.iter().map(|&x| x as i64).sum();
            let db: i64 = b.iter().map(|&x| x as i64).sum();
            (da, a).cmp(&(db, b))
        });
        let mut parts = Vec::with_capacity(groups.len());
        for (z, qpoly) in groups {
            let zs = z_text(&z);
            let qs = q_poly_compact(&qpoly);
            let part = if zs.is_empty() {
                qs
            } else if qpoly.len() > 1 {
                format!("({qs})*{zs}")
            } else if qs == "1" {
                zs
            } else if qs == "-1" {
                format!("-{zs}")
            } else {
                format!("{qs}*{zs}")
            };
            parts.push(part);
        }
        parts.join(" + ")
    }
}

fn z_text(z: &[i32]) -> String {
    z.iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("z{}", i + 1)
            } else {
                format!("z{}^{}", i + 1, e)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

fn q_text(d: u32) -> String {
    match d {
        0 => String::new(),
        1 => "q".to_string(),
        _ => format!("q^{d}"),
    }
}

fn q_poly_compact(p: &MPoly) -> String {
    let mut s = String::new();
    for (i, (m, c)) in p.terms().enumerate() {
        let qs = q_text(m.q);
        let body = if qs.is_empty() {
            c.abs().to_string()
        } else if c.abs().is_one() {
            qs
        } else {
            format!("{}*{}", c.abs(), qs)
        };
        if c.is_negative() {
            s.push('-');
        } else if i > 0 {
            s.push('+');
        }
        s.push_str(&body);
    }
    s
}

/// Flat form: `c*q^d*z1^m1*...` terms joined by ` + `, canonical order.
impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut factors = Vec::new();
            let qs = q_text(m.q);
            if !qs.is_empty() {
                factors.push(qs);
            }
            let zs = z_text(&m.z);
            if !zs.is_empty() {
                factors.push(zs);
            }
            if factors.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else if (-c).is_one() {
                write!(f, "-{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", c, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl<'a> $tr<&'a MPoly> for &'a MPoly {
            type Output = MPoly;
            /// Panics on arity mismatch; use the `try_` form to get an error.
            fn $method(self, rhs: &'a MPoly) -> MPoly {
                self.$try(rhs).expect("MPoly arity mismatch")
            }
        }
        impl $tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl AddAssign<&MPoly> for MPoly {
    fn add_assign(&mut self, rhs: &MPoly) {
        assert_eq!(self.nz, rhs.nz, "MPoly arity mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&BigInt::from(-1))
    }
}

fn q_binomial_coeffs(m: usize, n: usize) -> Vec<BigInt> {
    // q-Pascal: [i, j] = [i-1, j-1] + q^j [i-1, j]
    let mut row: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for i in 1..=m {
        let mut next = Vec::with_capacity(i + 1);
        for j in 0..=i {
            let mut c = if j >= 1 { row[j - 1].clone() } else { Vec::new() };
            if j < i {
                let prev = &row[j];
                if c.len() < prev.len() + j {
                    c.resize(prev.len() + j, BigInt::zero());
                }
                for (d, v) in prev.iter().enumerate() {
                    c[d + j] += v;
                }
            }
            next.push(c);
        }
        row = next;
    }
    row.swap_remove(n)
}

/// Gaussian binomial `[m choose n]_q`; zero unless `0 <= n <= m`.
pub fn q_binomial(m: i64, n: i64) -> MPoly {
    if n < 0 || m < 0 || n > m {
        return MPoly::zero(0);
    }
    MPoly::from_q_coeffs(q_binomial_coeffs(m as usize, n as usize))
}

/// `[n]_q = 1 + q + ... + q^{n-1}`.
pub fn q_integer(n: u32) -> MPoly {
    MPoly::from_q_coeffs((0..n).map(|_| 1))
}

/// `[n]_q!`
pub fn q_factorial(n: u32) -> MPoly {
    (1..=n).fold(MPoly::one(0), |acc, j| &acc * &q_integer(j))
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    q: u32,
    z: Vec<i32>,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct JsonPoly {
    nz: usize,
    terms: Vec<JsonTerm>,
}

impl From<MPoly> for JsonPoly {
    fn from(p: MPoly) -> Self {
        JsonPoly {
            nz: p.nz,
            terms: p
                .terms
                .into_iter()
                .map(|(m, c)| JsonTerm {
                    q: m.q,
                    z: m.z,
                    c: c.to_string(),
                })
                .collect(),
        }
    }
}

impl TryFrom<JsonPoly> for MPoly {
    type Error = Error;
    fn try_from(j: JsonPoly) -> Result<MPoly> {
        let mut p = MPoly::zero(j.nz);
        for t in j.terms {
            if t.z.len() != j.nz {
                return Err(Error::Parse(format!(
                    "term has {} z-exponents, expected {}",
                    t.z.len(),
                    j.nz
                )));
            }
            let c: BigInt =
                t.c.parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient {:?}", t.c)))?;
            p.add_term(Monomial { q: t.q, z: t.z }, c);
        }
        Ok(p)
    }
}

impl MPoly {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("MPoly serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<MPoly> {
        serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(coeffs: &[i64]) -> MPoly {
        MPoly::from_q_coeffs(coeffs.iter().copied())
    }

    /// 1 + z(1+q) + z^2, the two-factor sl_2 character.
    fn v1v1() -> MPoly {
        let z = MPoly::z_pow(0, 1, 1);
        &(&MPoly::one(1) + &(&z * &q(&[1, 1]).lift(1))) + &MPoly::z_pow(0, 2, 1)
    }

    #[test]
    fn arithmetic_basics() {
        assert_eq!(&q(&[1, 1]) + &q(&[0, 1]), q(&[1, 2]));
        assert!((&q(&[3, 0, 5]) * &MPoly::zero(0)).is_zero());
        assert_eq!(&q(&[1, 1]) * &q(&[1, 1]), q(&[1, 2, 1]));
        assert_eq!((&q(&[1, 1]) - &q(&[1, 1])).len(), 0);
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let a = MPoly::one(1);
        let b = MPoly::one(2);
        assert_eq!(a.try_add(&b), Err(Error::Arity { left: 1, right: 2 }));
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn q_binomial_values() {
        assert_eq!(q_binomial(2, 1), q(&[1, 1]));
        for m in 0..6 {
            assert_eq!(q_binomial(m, 0), MPoly::one(0));
        }
        assert!(q_binomial(1, 2).is_zero());
        assert!(q_binomial(3, -1).is_zero());
        assert!(q_binomial(-1, -1).is_zero());
        assert_eq!(q_binomial(4, 2).eval_at_one(), BigInt::from(6));
        assert_eq!(q_binomial(4, 2), q(&[1, 1, 2, 1, 1]));
    }

    #[test]
    fn q_binomial_matches_factorial_quotient() {
        // [m]! = [n]! [m-n]! [m choose n]
        for m in 0..8u32 {
            for n in 0..=m {
                let lhs = q_factorial(m);
                let rhs = &(&q_factorial(n) * &q_factorial(m - n)) * &q_binomial(m as i64, n as i64);
                assert_eq!(lhs, rhs, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn specialize_examples() {
        // (1 + q z) with z -> q z
        let p = &MPoly::one(1) + &(&MPoly::q_pow(1, 1) * &MPoly::z_pow(0, 1, 1));
        let shifted = p.shift_z_by_q(0, 1).unwrap();
        let want = &MPoly::one(1) + &(&MPoly::q_pow(2, 1) * &MPoly::z_pow(0, 1, 1));
        assert_eq!(shifted, want);

        // z1 z2 with z1 -> 1, z2 -> z^{-1}
        let p = MPoly::term(1, Monomial::new(0, vec![1, 1]));
        let subs = [
            Subst::Value(1),
            Subst::Monomial {
                q_shift: 0,
                target: Some(0),
                power: -1,
            },
        ];
        assert_eq!(p.specialize(None, &subs, 1).unwrap(), MPoly::z_pow(0, -1, 1));

        // dim of V_1 (x) V_1
        let total = v1v1().specialize(Some(1), &[Subst::Value(1)], 0).unwrap();
        assert_eq!(total, MPoly::constant(4, 0));
    }

    #[test]
    fn negative_q_exponent_is_rejected() {
        let p = MPoly::z_pow(0, 1, 1);
        assert!(matches!(p.shift_z_by_q(0, -1), Err(Error::Domain(_))));
        let p = MPoly::z_pow(0, -1, 1);
        assert!(p.specialize(None, &[Subst::Value(2)], 0).is_err());
    }

    #[test]
    fn coefficient_extraction() {
        assert_eq!(v1v1().coefficient_of(0, 1).unwrap(), q(&[1, 1]));
        assert!(v1v1().coefficient_of(0, 5).unwrap().is_zero());
        let seven = MPoly::constant(7, 1);
        assert_eq!(seven.coefficient_of(0, 0).unwrap(), MPoly::constant(7, 0));
        assert!(seven.coefficient_of(1, 0).is_err());
    }

    #[test]
    fn text_forms() {
        assert_eq!(v1v1().to_grouped_text(), "1 + (1+q)*z1 + z1^2");
        assert_eq!(v1v1().to_string(), "1 + z1 + z1^2 + q*z1");
        assert_eq!(q(&[0, 1]).to_string(), "q");
        assert_eq!(MPoly::zero(2).to_string(), "0");
        assert_eq!(q(&[0, -2]).to_string(), "-2*q");
    }

    #[test]
    fn json_shape() {
        let j = v1v1().to_json();
        assert_eq!(j["nz"], 1);
        assert_eq!(j["terms"][0], serde_json::json!({"q": 0, "z": [0], "c": "1"}));
        assert_eq!(MPoly::from_json(&j).unwrap(), v1v1());
        let bad = serde_json::json!({"nz": 2, "terms": [{"q": 0, "z": [1], "c": "1"}]});
        assert!(MPoly::from_json(&bad).is_err());
    }

    fn arb_poly(nz: usize) -> impl Strategy<Value = MPoly> {
        prop::collection::vec((0u32..4, prop::collection::vec(-2i32..3, nz), -5i64..6), 0..6).prop_map(move |ts| {
            let mut p = MPoly::zero(nz);
            for (q, z, c) in ts {
                p.add_term(Monomial { q, z }, BigInt::from(c));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(2), b in arb_poly(2), c in arb_poly(2)) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
            prop_assert!(a.terms().all(|(_, c)| !c.is_zero()));
        }

        #[test]
        fn json_round_trip(a in arb_poly(3)) {
            prop_assert_eq!(MPoly::from_json(&a.to_json()).unwrap(), a);
        }

        #[test]
        fn q_binomial_symmetry(m in 0i64..12, n in 0i64..12) {
            prop_assume!(n <= m);
            prop_assert_eq!(q_binomial(m, n), q_binomial(m, m - n));
            let plain: u64 = (0..n).fold(1u64, |acc, i| acc * (m - i) as u64 / (i + 1) as u64);
            prop_assert_eq!(q_binomial(m, n).eval_at_one(), BigInt::from(plain));
            prop_assert!(q_binomial(m, n).is_nonnegative());
        }
    }
}
