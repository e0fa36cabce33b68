//! Coinvariant quotients `W / (x_1[0] W + x_1[1]^{k-l+1} W)` restricted to
//! the weights selected by the label `l`.

use num_bigint::BigInt;

use super::ring::{OracleOptions, QuotientRing, RingLayout, RingPoly, VarIndex};
use crate::coinvariants::{coinv_character_w3, CoinvariantIdealSpec};
use crate::error::{Error, Result};
use crate::kostka::restricted_kostka;
use crate::partitions::{FusionSpec, MChain, Partition};
use crate::polyring::{MPoly, Monomial};
use crate::report::IdentityReport;

/// `W^(n)[lambda]` with all lower levels empty.
pub fn symmetric_spec(lambda: &Partition, n: usize) -> Result<FusionSpec> {
    FusionSpec::from_chain(&MChain::top_only(lambda.clone(), n))
}

fn monomial(layout: &RingLayout, v: VarIndex, power: u8) -> RingPoly {
    let mut e = vec![0u8; layout.nvars()];
    e[layout.var(v)] = power;
    RingPoly::from([(e, BigInt::from(1))])
}

/// The images of `e_23[0]` and `e_23[1]^{k-l+1}` in `R`, as far as the
/// variables exist.
pub fn coinv_extra_generators(layout: &RingLayout, ideal: CoinvariantIdealSpec) -> Vec<RingPoly> {
    let mut out = Vec::new();
    if layout.labels() == 0 {
        return out;
    }
    if layout.modes(1) >= 1 {
        out.push(monomial(layout, VarIndex { a: 1, i: 0 }, 1));
    }
    if layout.modes(1) >= 2 {
        out.push(monomial(layout, VarIndex { a: 1, i: 1 }, ideal.e1_power() as u8));
    }
    out
}

fn shape(spec: &FusionSpec) -> Result<Partition> {
    let n = spec.rank();
    let chain = spec.chain();
    let symmetric = (1..n).all(|a| chain.level(a).is_empty());
    if !(n == 2 || (n == 3 && symmetric)) {
        return Err(Error::Precondition(format!(
            "coinvariant quotients need a rank-2 spec or a rank-3 symmetric spec, got {spec}"
        )));
    }
    Ok(chain.top().clone())
}

/// Character of the coinvariant quotient on the weights `2 m_1 = |mu| - l`
/// (rank 2) or `2 m_1 + m_2 = |lambda| - l` (rank 3).
pub fn coinv_quotient_character(spec: &FusionSpec, k: u32, l: u32) -> Result<MPoly> {
    coinv_quotient_character_with(spec, k, l, &OracleOptions::default())
}

pub fn coinv_quotient_character_with(spec: &FusionSpec, k: u32, l: u32, opts: &OracleOptions) -> Result<MPoly> {
    let ideal = CoinvariantIdealSpec::new(k, l)?;
    let lambda = shape(spec)?;
    if lambda.len() > k as usize {
        return Err(Error::Shape(format!("{lambda} has more than {k} rows")));
    }
    let layout = RingLayout::new(spec);
    let extra = coinv_extra_generators(&layout, ideal);
    let ring = QuotientRing::with_extra(spec, &extra, opts)?;
    let size = lambda.size() as i64;
    let l = l as i64;
    Ok(ring.character_where(|p| {
        let lhs = match p.m.as_slice() {
            [m1] => 2 * *m1 as i64,
            [m1, m2] => 2 * *m1 as i64 + *m2 as i64,
            _ => return false,
        };
        lhs == size - l
    }))
}

/// Compares the quotient with `z^{(|mu|-l)/2} K^(k)_{l,mu}` (rank 2) or with
/// the rank-three coinvariant character (rank 3).
pub fn coinv_quotient_check(spec: &FusionSpec, k: u32, l: u32) -> Result<IdentityReport> {
    let lhs = coinv_quotient_character(spec, k, l)?;
    let lambda = shape(spec)?;
    let rhs = if spec.rank() == 2 {
        let size = lambda.size();
        if size < l || !(size - l).is_multiple_of(2) {
            MPoly::zero(1)
        } else {
            let kk = restricted_kostka(k, l, &lambda)?;
            kk.lift(1)
                .mul_monomial(&Monomial::new(0, vec![((size - l) / 2) as i32]))
        }
    } else {
        coinv_character_w3(k, l, &lambda)?
    };
    Ok(IdentityReport::new(
        format!("coinvariant quotient of {} at k={k} l={l}", spec.to_spec_string()),
        lhs,
        rhs,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(rows: &[u32]) -> Partition {
        Partition::new(rows.to_vec()).unwrap()
    }

    #[test]
    fn rank_two_example() {
        let s = symmetric_spec(&p(&[2]), 2).unwrap();
        let chi = coinv_quotient_character(&s, 2, 0).unwrap();
        assert_eq!(chi, MPoly::term(1, Monomial::new(1, vec![1])));
        assert!(coinv_quotient_check(&s, 2, 0).unwrap().passed());
    }

    #[test]
    fn rank_three_example() {
        let s = symmetric_spec(&p(&[2]), 3).unwrap();
        let chi = coinv_quotient_character(&s, 1, 0).unwrap();
        let mut want = MPoly::z_pow(1, 2, 2);
        want += &MPoly::term(1, Monomial::new(1, vec![1, 0]));
        assert_eq!(chi, want);
        assert!(coinv_quotient_check(&s, 1, 0).unwrap().passed());
    }

    #[test]
    fn top_label_single_row() {
        for k in 1..=3u32 {
            let s = symmetric_spec(&p(&[k]), 2).unwrap();
            let r = coinv_quotient_check(&s, k, k).unwrap();
            assert!(r.passed(), "k={k}: {} vs {}", r.lhs, r.rhs);
        }
    }

    #[test]
    fn rejects_bad_input() {
        let s = symmetric_spec(&p(&[2]), 2).unwrap();
        assert!(coinv_quotient_character(&s, 1, 2).is_err());
        let tall = symmetric_spec(&p(&[1, 1]), 2).unwrap();
        assert!(matches!(coinv_quotient_character(&tall, 1, 0), Err(Error::Shape(_))));
        let mixed = FusionSpec::parse("3:1,2:1", None).unwrap();
        assert!(matches!(
            coinv_quotient_character(&mixed, 1, 0),
            Err(Error::Precondition(_))
        ));
    }
}
