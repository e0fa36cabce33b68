//! Exact linear algebra over the integers: an incremental fraction-free
//! echelon basis and a batch Bareiss rank.
//!
//! The echelon basis works in checked `i64` arithmetic while entries stay
//! small and promotes itself to `BigInt` on the first overflow, so results
//! never depend on which path ran.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Sparse integer vector: `(column, value)` pairs, strictly increasing columns,
/// no zero values.
pub type SparseRow = Vec<(u32, BigInt)>;

trait Scalar: Clone + PartialEq + Sized {
    fn nil() -> Self;
    fn vanishes(&self) -> bool;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn sub(&self, other: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, other: &Self) -> Self;
    fn is_unit(&self) -> bool;
    fn negative(&self) -> bool;
    fn neg(&self) -> Option<Self>;
    fn from_big(v: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Scalar for i64 {
    fn nil() -> Self {
        0
    }
    fn vanishes(&self) -> bool {
        *self == 0
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        self.checked_sub(*other)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn negative(&self) -> bool {
        *self < 0
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        // keep i64::MIN out so negation and gcd never overflow
        v.to_i64().filter(|&x| x != i64::MIN)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

#[derive(Clone, Debug)]
struct Row<S> {
    pivot: usize,
    entries: Vec<(u32, S)>,
}

#[derive(Clone, Debug)]
struct Echelon<S> {
    ncols: usize,
    rows: Vec<Row<S>>,
}

struct Overflow;

impl<S: Scalar> Echelon<S> {
    fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            rows: Vec::new(),
        }
    }

    /// Clears every pivot column of `v`. `Err` on arithmetic overflow.
    fn reduce(&self, v: &mut [S]) -> Result<(), Overflow> {
        for row in &self.rows {
            let b = &v[row.pivot];
            if b.vanishes() {
                continue;
            }
            let a = &row.entries[0].1;
            let g = a.gcd(b);
            let a = a.div_exact(&g);
            let b = b.div_exact(&g);
            if !a.is_unit() || a.negative() {
                for x in v.iter_mut() {
                    if !x.vanishes() {
                        *x = x.mul(&a).ok_or(Overflow)?;
                    }
                }
            }
            for (c, val) in &row.entries {
                let c = *c as usize;
                v[c] = v[c].sub(&b.mul(val).ok_or(Overflow)?).ok_or(Overflow)?;
            }
            debug_assert!(v[row.pivot].vanishes());
            if !a.is_unit() {
                normalize(v);
            }
        }
        Ok(())
    }

    /// Returns whether `v` enlarged the span.
    fn insert(&mut self, v: &mut [S]) -> Result<bool, Overflow> {
        self.reduce(v)?;
        let Some(pivot) = v.iter().position(|x| !x.vanishes()) else {
            return Ok(false);
        };
        normalize(v);
        if v[pivot].negative() {
            for x in v.iter_mut() {
                *x = x.neg().ok_or(Overflow)?;
            }
        }
        let entries = v
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.vanishes())
            .map(|(c, x)| (c as u32, x.clone()))
            .collect();
        let at = self.rows.partition_point(|r| r.pivot < pivot);
        self.rows.insert(at, Row { pivot, entries });
        Ok(true)
    }

    fn promote(&self) -> Echelon<BigInt> {
        Echelon {
            ncols: self.ncols,
            rows: self
                .rows
                .iter()
                .map(|r| Row {
                    pivot: r.pivot,
                    entries: r.entries.iter().map(|(c, x)| (*c, x.to_big())).collect(),
                })
                .collect(),
        }
    }
}

fn normalize<S: Scalar>(v: &mut [S]) {
    let mut g = S::nil();
    for x in v.iter() {
        if !x.vanishes() {
            g = g.gcd(x);
            if g.is_unit() {
                return;
            }
        }
    }
    if g.vanishes() {
        return;
    }
    for x in v.iter_mut() {
        if !x.vanishes() {
            *x = x.div_exact(&g);
        }
    }
}

#[derive(Clone, Debug)]
enum Inner {
    Small(Echelon<i64>),
    Big(Echelon<BigInt>),
}

/// Row-echelon basis of a growing subspace of `Q^ncols`, kept integral and
/// content-free.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    inner: Inner,
}

impl EchelonBasis {
    pub fn new(ncols: usize) -> Self {
        EchelonBasis {
            inner: Inner::Small(Echelon::new(ncols)),
        }
    }

    pub fn ncols(&self) -> usize {
        match &self.inner {
            Inner::Small(e) => e.ncols,
            Inner::Big(e) => e.ncols,
        }
    }

    pub fn rank(&self) -> usize {
        match &self.inner {
            Inner::Small(e) => e.rows.len(),
            Inner::Big(e) => e.rows.len(),
        }
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.ncols()
    }

    /// True once the basis has left the `i64` path.
    pub fn is_promoted(&self) -> bool {
        matches!(self.inner, Inner::Big(_))
    }

    pub fn insert_sparse(&mut self, v: &[(u32, BigInt)]) -> bool {
        let n = self.ncols();
        if let Inner::Small(e) = &mut self.inner {
            let mut dense = vec![0i64; n];
            let fits = v.iter().all(|(c, x)| match i64::from_big(x) {
                Some(x) => {
                    dense[*c as usize] = x;
                    true
                }
                None => false,
            });
            if fits {
                if let Ok(added) = e.insert(&mut dense) {
                    return added;
                }
            }
            self.inner = Inner::Big(e.promote());
        }
        let Inner::Big(e) = &mut self.inner else { unreachable!() };
        let mut dense = vec![BigInt::zero(); n];
        for (c, x) in v {
            dense[*c as usize] = x.clone();
        }
        e.insert(&mut dense)
            .unwrap_or_else(|_| unreachable!("BigInt never overflows"))
    }

    pub fn insert_dense(&mut self, v: &[BigInt]) -> bool {
        self.insert_sparse(&to_sparse(v))
    }

    /// Whether `v` lies in the span.
    pub fn contains_dense(&self, v: &[BigInt]) -> bool {
        let mut probe = self.clone();
        !probe.insert_dense(v)
    }

    /// Basis rows in pivot order.
    pub fn rows(&self) -> Vec<SparseRow> {
        match &self.inner {
            Inner::Small(e) => e
                .rows
                .iter()
                .map(|r| r.entries.iter().map(|(c, x)| (*c, BigInt::from(*x))).collect())
                .collect(),
            Inner::Big(e) => e.rows.iter().map(|r| r.entries.clone()).collect(),
        }
    }

    pub fn pivots(&self) -> Vec<usize> {
        match &self.inner {
            Inner::Small(e) => e.rows.iter().map(|r| r.pivot).collect(),
            Inner::Big(e) => e.rows.iter().map(|r| r.pivot).collect(),
        }
    }
}

pub fn to_sparse(v: &[BigInt]) -> SparseRow {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(c, x)| (c as u32, x.clone()))
        .collect()
}

/// Rank by one-shot fraction-free (Bareiss) elimination.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let num = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                debug_assert!((&num % &prev).is_zero());
                m[i][j] = num / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_examples() {
        let mut e = EchelonBasis::new(3);
        assert!(e.insert_dense(&big(&[2, 4, 6])));
        assert!(!e.insert_dense(&big(&[1, 2, 3])));
        assert!(e.insert_dense(&big(&[0, 1, 1])));
        assert!(!e.insert_dense(&big(&[2, 5, 7])));
        assert_eq!(e.rank(), 2);
        assert!(!e.is_full());
        assert!(e.contains_dense(&big(&[3, 7, 10])));
        assert!(!e.contains_dense(&big(&[0, 0, 1])));
        assert_eq!(e.rows()[0], to_sparse(&big(&[1, 2, 3])));
        assert!(!e.insert_dense(&big(&[0, 0, 0])));
    }

    #[test]
    fn overflow_promotes_without_changing_the_answer() {
        let huge = i64::MAX / 3;
        let rows = [
            big(&[huge, 1, 0]),
            big(&[7, huge, 1]),
            big(&[huge - 1, huge, huge]),
            big(&[1, 1, 1]),
        ];
        let mut e = EchelonBasis::new(3);
        for r in &rows {
            e.insert_dense(r);
        }
        assert!(e.is_promoted());
        assert_eq!(e.rank(), bareiss_rank(rows.to_vec()));
    }

    #[test]
    fn bareiss_examples() {
        assert_eq!(bareiss_rank(vec![big(&[1, 2]), big(&[2, 4])]), 1);
        assert_eq!(bareiss_rank(vec![big(&[0, 0, 1]), big(&[0, 1, 0]), big(&[1, 1, 1])]), 3);
        assert_eq!(bareiss_rank(vec![]), 0);
        assert_eq!(bareiss_rank(vec![big(&[0, 0])]), 0);
    }

    fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..7, 1usize..7).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-4i64..5, c), r))
    }

    proptest! {
        #[test]
        fn incremental_rank_matches_bareiss(m in matrix()) {
            let rows: Vec<Vec<BigInt>> = m.iter().map(|r| big(r)).collect();
            let mut e = EchelonBasis::new(rows[0].len());
            for r in &rows {
                e.insert_dense(r);
            }
            prop_assert_eq!(e.rank(), bareiss_rank(rows));
        }

        #[test]
        fn rank_ignores_row_order(m in matrix(), seed in any::<u64>()) {
            let rows: Vec<Vec<BigInt>> = m.iter().map(|r| big(r)).collect();
            let mut shuffled = rows.clone();
            let n = shuffled.len();
            let mut s = seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                shuffled.swap(i, (s >> 33) as usize % (i + 1));
            }
            let rank = |rs: &[Vec<BigInt>]| {
                let mut e = EchelonBasis::new(rs[0].len());
                rs.iter().for_each(|r| { e.insert_dense(r); });
                e.rank()
            };
            prop_assert_eq!(rank(&rows), rank(&shuffled));
        }
    }
}
