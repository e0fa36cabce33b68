//! The graded quotient `R / J(n,k)` computed piece by piece.
//!
//! `J_{d,m}` is spanned by the defining generator living in `(d,m)` (if any)
//! together with `y * J_{(d,m) - wt y}` for every variable `y`, so pieces are
//! filled in order of total weight, each by exact elimination.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use rayon::prelude::*;

use super::linalg::{EchelonBasis, SparseRow};
use crate::error::{Error, Result};
use crate::partitions::{mu_nu_k, FusionSpec};
use crate::polyring::{MPoly, Monomial};

/// Exponent vector over the flattened variables `x_a[i]`.
pub type Exponents = Vec<u8>;
/// Homogeneous element of `R`, keyed by exponent vector.
pub type RingPoly = BTreeMap<Exponents, BigInt>;

/// Variable layout of `R = C[x_a[i] : 1 <= a < n, 0 <= i < N_a]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingLayout {
    rank: usize,
    big_n: Vec<usize>,
    offsets: Vec<usize>,
}

/// `x_a[i]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarIndex {
    pub a: usize,
    pub i: usize,
}

impl RingLayout {
    pub fn new(spec: &FusionSpec) -> Self {
        let rank = spec.rank();
        let big_n: Vec<usize> = (1..rank).map(|a| spec.big_n(a)).collect();
        let mut offsets = Vec::with_capacity(big_n.len() + 1);
        let mut acc = 0;
        for &n in &big_n {
            offsets.push(acc);
            acc += n;
        }
        offsets.push(acc);
        RingLayout { rank, big_n, offsets }
    }

    /// Number of current labels `a = 1..n-1`.
    pub fn labels(&self) -> usize {
        self.big_n.len()
    }

    /// `N_a`, `a` 1-based.
    pub fn modes(&self, a: usize) -> usize {
        self.big_n[a - 1]
    }

    pub fn nvars(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }

    pub fn var(&self, v: VarIndex) -> usize {
        debug_assert!(v.i < self.modes(v.a));
        self.offsets[v.a - 1] + v.i
    }

    pub fn var_index(&self, flat: usize) -> VarIndex {
        let a = (0..self.labels())
            .rfind(|&a| self.offsets[a] <= flat)
            .expect("flat index in range");
        VarIndex {
            a: a + 1,
            i: flat - self.offsets[a],
        }
    }

    /// `(degree, weight)` of a monomial.
    pub fn grading(&self, e: &[u8]) -> (u32, Vec<u32>) {
        let mut d = 0u32;
        let mut m = vec![0u32; self.labels()];
        for (flat, &x) in e.iter().enumerate() {
            if x > 0 {
                let v = self.var_index(flat);
                d += v.i as u32 * x as u32;
                m[v.a - 1] += x as u32;
            }
        }
        (d, m)
    }

    /// Largest degree present in weight `m`: `sum_a m_a (N_a - 1)`.
    pub fn max_degree(&self, m: &[u32]) -> u32 {
        m.iter()
            .zip(&self.big_n)
            .map(|(&ma, &n)| ma * (n as u32).saturating_sub(1))
            .sum()
    }

    /// All monomials of degree `d` and weight `m`, in a fixed order.
    pub fn monomials(&self, d: u32, m: &[u32]) -> Vec<Exponents> {
        let mut out = Vec::new();
        if m.iter().zip(&self.big_n).any(|(&ma, &n)| ma > 0 && n == 0) {
            return out;
        }
        let mut cur = vec![0u8; self.nvars()];
        let mut left = m.to_vec();
        self.fill(0, &mut left, d, &mut cur, &mut out);
        out
    }

    fn fill(&self, flat: usize, left: &mut [u32], deg: u32, cur: &mut Exponents, out: &mut Vec<Exponents>) {
        if flat == self.nvars() {
            if deg == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let v = self.var_index(flat);
        let avail = left[v.a - 1];
        // the last mode of each label takes whatever weight is left
        let lo = if v.i + 1 == self.modes(v.a) { avail } else { 0 };
        for c in lo..=avail {
            let cost = c * v.i as u32;
            if cost > deg {
                break;
            }
            cur[flat] = c as u8;
            left[v.a - 1] -= c;
            self.fill(flat + 1, left, deg - cost, cur, out);
            left[v.a - 1] += c;
        }
        cur[flat] = 0;
    }

    pub fn format_monomial(&self, e: &[u8]) -> String {
        let mut s = String::new();
        for (flat, &x) in e.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let v = self.var_index(flat);
            if self.rank == 2 {
                s.push_str(&format!("e[{}]", v.i));
            } else {
                s.push_str(&format!("x{}[{}]", v.a, v.i));
            }
            if x > 1 {
                s.push_str(&format!("^{x}"));
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }
}

/// One graded piece `R_{d,m}` with the relation subspace `J_{d,m}`.
#[derive(Clone, Debug)]
pub struct Piece {
    pub d: u32,
    pub m: Vec<u32>,
    pub monomials: Vec<Exponents>,
    index: HashMap<Exponents, u32>,
    /// Echelon rows spanning the relations in this piece.
    pub relations: Vec<SparseRow>,
}

impl Piece {
    pub fn rank(&self) -> usize {
        self.relations.len()
    }

    pub fn quotient_dim(&self) -> usize {
        self.monomials.len() - self.relations.len()
    }

    pub fn index_of(&self, e: &[u8]) -> Option<usize> {
        self.index.get(e).map(|&i| i as usize)
    }
}

#[derive(Clone, Debug)]
pub struct OracleOptions {
    /// Refuse to run when the graded pieces hold more monomials than this.
    pub max_monomials: usize,
    /// Also compute one layer past the weight bounds and require it to vanish.
    pub check_bounds: bool,
}

pub const DEFAULT_MAX_MONOMIALS: usize = 4_000_000;

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            max_monomials: DEFAULT_MAX_MONOMIALS,
            check_bounds: false,
        }
    }
}

/// The graded pieces of `R / (J(n,k) + extra)` within the weight bounds.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    layout: RingLayout,
    spec: FusionSpec,
    pieces: HashMap<(Vec<u32>, u32), Piece>,
}

impl QuotientRing {
    pub fn new(spec: &FusionSpec, opts: &OracleOptions) -> Result<Self> {
        Self::with_extra(spec, &[], opts)
    }

    /// Quotient by `J(n,k)` plus the homogeneous elements `extra`.
    pub fn with_extra(spec: &FusionSpec, extra: &[RingPoly], opts: &OracleOptions) -> Result<Self> {
        let layout = RingLayout::new(spec);
        let labels = layout.labels();
        let total = spec.total_boxes();
        let slack = u32::from(opts.check_bounds);
        let caps: Vec<u32> = (1..=labels).map(|a| spec.weight_cap(a) + slack).collect();
        let extra: Vec<(u32, Vec<u32>, &RingPoly)> = extra
            .iter()
            .filter_map(|p| {
                let first = p.keys().next()?;
                let (d, m) = layout.grading(first);
                Some((d, m, p))
            })
            .collect();

        let mut ring = QuotientRing {
            layout,
            spec: spec.clone(),
            pieces: HashMap::new(),
        };
        let mut seen = 0usize;
        for layer in 0..=total + slack {
            let weights = weights_with_sum(&caps, layer);
            let keys: Vec<(Vec<u32>, u32)> = weights
                .into_iter()
                .flat_map(|m| {
                    let top = ring.layout.max_degree(&m);
                    (0..=top).map(move |d| (m.clone(), d))
                })
                .collect();
            let monos: Vec<Vec<Exponents>> = keys.par_iter().map(|(m, d)| ring.layout.monomials(*d, m)).collect();
            seen += monos.iter().map(Vec::len).sum::<usize>();
            if seen > opts.max_monomials {
                return Err(Error::ResourceCap {
                    what: "graded monomials",
                    needed: seen,
                    cap: opts.max_monomials,
                });
            }
            let built: Vec<Piece> = keys
                .par_iter()
                .zip(monos)
                .map(|((m, d), monomials)| ring.build_piece(*d, m, monomials, &extra))
                .collect();
            for p in built {
                ring.pieces.insert((p.m.clone(), p.d), p);
            }
        }

        if opts.check_bounds {
            for p in ring.pieces.values() {
                let inside = p.m.iter().sum::<u32>() <= total
                    && p.m.iter().enumerate().all(|(a, &ma)| ma <= spec.weight_cap(a + 1));
                if !inside && p.quotient_dim() > 0 {
                    return Err(Error::Consistency(format!(
                        "quotient is nonzero at d={} m={:?} outside the weight bounds",
                        p.d, p.m
                    )));
                }
            }
        }
        Ok(ring)
    }

    fn build_piece(&self, d: u32, m: &[u32], monomials: Vec<Exponents>, extra: &[(u32, Vec<u32>, &RingPoly)]) -> Piece {
        let index: HashMap<Exponents, u32> = monomials
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i as u32))
            .collect();
        let mut basis = EchelonBasis::new(monomials.len());
        let mut piece = Piece {
            d,
            m: m.to_vec(),
            monomials,
            index,
            relations: Vec::new(),
        };
        if piece.monomials.is_empty() {
            return piece;
        }
        if let Some(g) = defining_generator(&self.layout, &self.spec, d, m, &piece) {
            basis.insert_sparse(&g);
        }
        for (ed, em, poly) in extra {
            if basis.is_full() {
                break;
            }
            if *ed == d && em.as_slice() == m {
                basis.insert_sparse(&poly_to_row(poly, &piece));
            }
        }
        'vars: for flat in 0..self.layout.nvars() {
            let v = self.layout.var_index(flat);
            if m[v.a - 1] == 0 || v.i as u32 > d {
                continue;
            }
            let mut lower = m.to_vec();
            lower[v.a - 1] -= 1;
            let Some(src) = self.pieces.get(&(lower, d - v.i as u32)) else {
                continue;
            };
            for row in &src.relations {
                if basis.is_full() {
                    break 'vars;
                }
                let mapped = shift_row(row, src, &piece, flat);
                basis.insert_sparse(&mapped);
            }
        }
        piece.relations = basis.rows();
        piece
    }

    pub fn layout(&self) -> &RingLayout {
        &self.layout
    }

    pub fn spec(&self) -> &FusionSpec {
        &self.spec
    }

    pub fn piece(&self, d: u32, m: &[u32]) -> Option<&Piece> {
        self.pieces.get(&(m.to_vec(), d))
    }

    /// Pieces in canonical `(weight, degree)` order.
    pub fn pieces(&self) -> Vec<&Piece> {
        let mut v: Vec<&Piece> = self.pieces.values().collect();
        v.sort_by(|a, b| (&a.m, a.d).cmp(&(&b.m, b.d)));
        v
    }

    pub fn character(&self) -> MPoly {
        self.character_where(|_| true)
    }

    /// Character restricted to the pieces accepted by `keep`.
    pub fn character_where<F: Fn(&Piece) -> bool>(&self, keep: F) -> MPoly {
        let nz = self.layout.labels();
        let mut out = MPoly::zero(nz);
        for p in self.pieces.values() {
            let dim = p.quotient_dim();
            if dim > 0 && keep(p) {
                let z = p.m.iter().map(|&x| x as i32).collect();
                out += &MPoly::term(dim as u64, Monomial::new(p.d, z));
            }
        }
        out
    }
}

fn shift_row(row: &SparseRow, src: &Piece, dst: &Piece, flat: usize) -> SparseRow {
    let mut out: SparseRow = row
        .iter()
        .map(|(c, x)| {
            let mut e = src.monomials[*c as usize].clone();
            e[flat] += 1;
            let col = dst.index_of(&e).expect("shifted monomial lies in the target piece");
            (col as u32, x.clone())
        })
        .collect();
    out.sort_by_key(|(c, _)| *c);
    out
}

fn poly_to_row(poly: &RingPoly, piece: &Piece) -> SparseRow {
    let mut row: SparseRow = poly
        .iter()
        .filter_map(|(e, c)| piece.index_of(e).map(|i| (i as u32, c.clone())))
        .collect();
    row.sort_by_key(|(c, _)| *c);
    row
}

/// Weight vectors `m <= caps` with `sum m = total`.
fn weights_with_sum(caps: &[u32], total: u32) -> Vec<Vec<u32>> {
    fn go(caps: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == caps.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for x in 0..=left.min(caps[i]) {
            cur.push(x);
            go(caps, i + 1, left - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(caps, 0, total, &mut Vec::new(), &mut out);
    out
}

fn multinomial_weight(layout: &RingLayout, e: &[u8]) -> BigInt {
    let mut acc = BigInt::from(1);
    for a in 1..=layout.labels() {
        let mut total = 0u32;
        for i in 0..layout.modes(a) {
            let c = e[layout.var(VarIndex { a, i })] as u32;
            for t in 1..=c {
                total += 1;
                acc *= total;
                acc /= t;
            }
        }
    }
    acc
}

/// The coefficient of `z^j` in `prod_a x_a(z)^{nu_a}` as a row over the
/// monomials of `piece`, where `piece` has weight `nu` and degree
/// `sum_a nu_a (N_a - 1) - j`; `None` unless `j < mu(nu, k)`.
fn defining_generator(layout: &RingLayout, spec: &FusionSpec, d: u32, nu: &[u32], piece: &Piece) -> Option<SparseRow> {
    if nu.iter().all(|&x| x == 0) {
        return None;
    }
    let j = layout.max_degree(nu).checked_sub(d)?;
    let bound = mu_nu_k(nu, spec).ok()?;
    if j >= bound {
        return None;
    }
    Some(
        piece
            .monomials
            .iter()
            .enumerate()
            .map(|(c, e)| (c as u32, multinomial_weight(layout, e)))
            .collect(),
    )
}

/// Explicit spanning set of `J ∩ R_{d,m}`: every defining generator of
/// weight `nu <= m` times every monomial cofactor of complementary grading.
#[derive(Clone, Debug)]
pub struct GeneratorListing {
    pub monomials: Vec<Exponents>,
    pub rows: Vec<SparseRow>,
}

pub fn ideal_generators(spec: &FusionSpec, d: u32, m: &[u32]) -> Result<GeneratorListing> {
    let layout = RingLayout::new(spec);
    if m.len() != layout.labels() {
        return Err(Error::Arity {
            left: m.len(),
            right: layout.labels(),
        });
    }
    let monomials = layout.monomials(d, m);
    let index: HashMap<Exponents, u32> = monomials
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), i as u32))
        .collect();
    let target = Piece {
        d,
        m: m.to_vec(),
        monomials: monomials.clone(),
        index,
        relations: Vec::new(),
    };
    let mut rows = Vec::new();
    for nu in boxes_below(m) {
        let top = layout.max_degree(&nu);
        for e in 0..=top.min(d) {
            let gen_monos = layout.monomials(e, &nu);
            if gen_monos.is_empty() {
                continue;
            }
            let gen_piece = Piece {
                d: e,
                m: nu.clone(),
                index: HashMap::new(),
                monomials: gen_monos,
                relations: Vec::new(),
            };
            let Some(g) = defining_generator(&layout, spec, e, &nu, &gen_piece) else {
                continue;
            };
            let rest: Vec<u32> = m.iter().zip(&nu).map(|(a, b)| a - b).collect();
            for cof in layout.monomials(d - e, &rest) {
                let mut row: SparseRow = g
                    .iter()
                    .map(|(c, x)| {
                        let mono = &gen_piece.monomials[*c as usize];
                        let prod: Exponents = mono.iter().zip(&cof).map(|(a, b)| a + b).collect();
                        (target.index_of(&prod).expect("product in R_{d,m}") as u32, x.clone())
                    })
                    .collect();
                row.sort_by_key(|(c, _)| *c);
                // equal products of distinct generator monomials cannot occur:
                // multiplication by a fixed cofactor is injective
                rows.push(row);
            }
        }
    }
    Ok(GeneratorListing { monomials, rows })
}

fn boxes_below(m: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &ma in m {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=ma).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out.retain(|v| v.iter().any(|&x| x > 0));
    out
}

/// `ch R/J(n,k)` from exact ranks of every graded piece.
pub fn hilbert_character(spec: &FusionSpec) -> Result<MPoly> {
    hilbert_character_with(spec, &OracleOptions::default())
}

pub fn hilbert_character_with(spec: &FusionSpec, opts: &OracleOptions) -> Result<MPoly> {
    Ok(QuotientRing::new(spec, opts)?.character())
}
