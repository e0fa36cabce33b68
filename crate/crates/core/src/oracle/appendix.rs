//! Filtrations of tensor products of evaluation modules generated from two
//! different cyclic vectors: `G^i` from the lowest-weight tensor under the
//! whole current algebra, `F^i` from the exponentially shifted vector under
//! the smaller subalgebra. The two must agree level by level.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::fusion::integral_points;
use super::linalg::{to_sparse, EchelonBasis, SparseRow};
use crate::error::{domain, Result};
use crate::partitions::binomial;

/// A finite-dimensional irreducible factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Irrep {
    /// `sl_2` irrep of dimension `r + 1`.
    Sl2(u32),
    /// `S^r(C^3)` for `sl_3`.
    Sl3Sym(u32),
}

impl Irrep {
    fn is_sl2(self) -> bool {
        matches!(self, Irrep::Sl2(_))
    }

    fn dim(self) -> usize {
        match self {
            Irrep::Sl2(r) => r as usize + 1,
            Irrep::Sl3Sym(r) => binomial(r as u64 + 2, 2) as usize,
        }
    }
}

/// Local action of one Lie algebra element: column `j` maps to `(row, coeff)` pairs.
type LocalOp = Vec<Vec<(usize, i64)>>;

struct Factor {
    ops_g: Vec<LocalOp>,
    ops_f: Vec<LocalOp>,
    lowest: Vec<i64>,
    shifted: Vec<i64>,
}

fn sl2_factor(r: u32) -> Factor {
    let r = r as i64;
    let n = r as usize + 1;
    let e: LocalOp = (0..n)
        .map(|j| {
            if (j as i64) < r {
                vec![(j + 1, r - j as i64)]
            } else {
                vec![]
            }
        })
        .collect();
    let f: LocalOp = (0..n)
        .map(|j| if j > 0 { vec![(j - 1, j as i64)] } else { vec![] })
        .collect();
    let h: LocalOp = (0..n).map(|j| vec![(j, 2 * j as i64 - r)]).collect();
    let mut lowest = vec![0; n];
    lowest[0] = 1;
    // exp(e) w_0 = sum_j binom(r, j) w_j
    let shifted = (0..n).map(|j| binomial(r as u64, j as u64) as i64).collect();
    Factor {
        ops_g: vec![e, f, h.clone()],
        ops_f: vec![h],
        lowest,
        shifted,
    }
}

fn sl3_factor(r: u32) -> Factor {
    let mut basis: Vec<[u32; 3]> = Vec::new();
    for a in 0..=r {
        for b in 0..=r - a {
            basis.push([a, b, r - a - b]);
        }
    }
    let index = |v: [u32; 3]| basis.iter().position(|&u| u == v).expect("monomial in basis");
    // e_ij acts as u_i d/du_j
    let e = |i: usize, j: usize| -> LocalOp {
        basis
            .iter()
            .map(|&v| {
                if v[j] == 0 {
                    return vec![];
                }
                let mut u = v;
                u[j] -= 1;
                u[i] += 1;
                vec![(index(u), v[j] as i64)]
            })
            .collect()
    };
    let h = |i: usize, j: usize| -> LocalOp {
        basis
            .iter()
            .enumerate()
            .map(|(c, &v)| vec![(c, v[i] as i64 - v[j] as i64)])
            .collect()
    };
    let mut lowest = vec![0; basis.len()];
    lowest[index([0, 0, r])] = 1;
    // exp(e_13) u_3^r = (u_1 + u_3)^r
    let mut shifted = vec![0; basis.len()];
    for i in 0..=r {
        shifted[index([i, 0, r - i])] = binomial(r as u64, i as u64) as i64;
    }
    Factor {
        ops_g: vec![e(0, 1), e(0, 2), e(1, 0), e(1, 2), e(2, 0), e(2, 1), h(0, 1), h(1, 2)],
        ops_f: vec![e(1, 2), e(2, 1), h(1, 2)],
        lowest,
        shifted,
    }
}

struct Tensor {
    dims: Vec<usize>,
    strides: Vec<usize>,
    total: usize,
}

impl Tensor {
    fn new(dims: Vec<usize>) -> Self {
        let mut strides = vec![1; dims.len()];
        for p in (0..dims.len().saturating_sub(1)).rev() {
            strides[p] = strides[p + 1] * dims[p + 1];
        }
        let total = dims.iter().product();
        Tensor { dims, strides, total }
    }

    fn pure(&self, parts: &[Vec<i64>]) -> Vec<BigInt> {
        let mut v = vec![BigInt::from(1); self.total];
        for (idx, x) in v.iter_mut().enumerate() {
            for (p, part) in parts.iter().enumerate() {
                *x *= part[(idx / self.strides[p]) % self.dims[p]];
            }
        }
        v
    }

    /// `sum_p z_p^i op^(p)` on a sparse vector.
    fn apply(&self, locals: &[&LocalOp], powers: &[BigInt], v: &SparseRow) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.total];
        for (c, x) in v {
            let idx = *c as usize;
            for (p, op) in locals.iter().enumerate() {
                if powers[p].is_zero() {
                    continue;
                }
                let j = (idx / self.strides[p]) % self.dims[p];
                for &(i, coeff) in &op[j] {
                    let target = idx - j * self.strides[p] + i * self.strides[p];
                    out[target] += x * &powers[p] * coeff;
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AppendixReport {
    pub irreps: Vec<Irrep>,
    /// `dim F^i` for `i = 0, 1, ..` until stable.
    pub f_dims: Vec<usize>,
    /// `dim G^i` likewise.
    pub g_dims: Vec<usize>,
    pub total_dim: usize,
}

impl AppendixReport {
    pub fn passed(&self) -> bool {
        let len = self.f_dims.len().max(self.g_dims.len());
        let at = |v: &[usize], i: usize| v.get(i).or(v.last()).copied().unwrap_or(0);
        (0..len).all(|i| at(&self.f_dims, i) == at(&self.g_dims, i))
    }
}

/// Filtration dimensions generated from `start` by the operators `ops` with
/// modes `0..=modes`; stops once `modes + 1` consecutive levels agree.
fn filtration(
    tensor: &Tensor,
    ops: &[Vec<&LocalOp>],
    powers: &[Vec<BigInt>],
    start: &[BigInt],
    modes: usize,
) -> Vec<usize> {
    let mut levels: Vec<Vec<SparseRow>> = Vec::new();
    let mut dims: Vec<usize> = Vec::new();
    for i in 0.. {
        let mut basis = EchelonBasis::new(tensor.total);
        if i == 0 {
            basis.insert_dense(start);
        } else {
            for row in &levels[i - 1] {
                basis.insert_sparse(row);
            }
        }
        for j in 1..=modes.min(i) {
            for row in &levels[i - j] {
                for op in ops {
                    basis.insert_dense(&tensor.apply(op, &powers[j], row));
                }
            }
        }
        // close under mode zero
        loop {
            let before = basis.rank();
            for row in basis.rows() {
                for op in ops {
                    basis.insert_dense(&tensor.apply(op, &powers[0], &row));
                }
            }
            if basis.rank() == before {
                break;
            }
        }
        dims.push(basis.rank());
        levels.push(basis.rows());
        let n = dims.len();
        if n > modes && dims[n - 1 - modes..].iter().all(|&d| d == dims[n - 1]) {
            break;
        }
    }
    dims
}

pub fn appendix_filtration_check(irreps: &[Irrep], z: &[BigRational]) -> Result<AppendixReport> {
    appendix_filtration_check_with_modes(irreps, z, 0)
}

/// As [`appendix_filtration_check`] with operator modes `0..N-1+extra_modes`.
pub fn appendix_filtration_check_with_modes(
    irreps: &[Irrep],
    z: &[BigRational],
    extra_modes: usize,
) -> Result<AppendixReport> {
    if irreps.len() != z.len() {
        return Err(domain(format!(
            "{} irreps but {} evaluation points",
            irreps.len(),
            z.len()
        )));
    }
    if irreps.is_empty() {
        return Ok(AppendixReport {
            irreps: vec![],
            f_dims: vec![1],
            g_dims: vec![1],
            total_dim: 1,
        });
    }
    let sl2 = irreps[0].is_sl2();
    if irreps.iter().any(|r| r.is_sl2() != sl2) {
        return Err(domain("irreps must all be sl2 or all sl3"));
    }
    let factors: Vec<Factor> = irreps
        .iter()
        .map(|r| match *r {
            Irrep::Sl2(r) => sl2_factor(r),
            Irrep::Sl3Sym(r) => sl3_factor(r),
        })
        .collect();
    let tensor = Tensor::new(irreps.iter().map(|r| r.dim()).collect());
    let modes = irreps.len() - 1 + extra_modes;
    let zi = integral_points(z);
    let powers: Vec<Vec<BigInt>> = (0..=modes)
        .map(|i| zi.iter().map(|x| num_traits::pow(x.clone(), i)).collect())
        .collect();
    let per_factor = |pick: fn(&Factor) -> &Vec<LocalOp>| -> Vec<Vec<&LocalOp>> {
        let count = pick(&factors[0]).len();
        (0..count)
            .map(|o| factors.iter().map(|f| &pick(f)[o]).collect())
            .collect()
    };
    let ops_g = per_factor(|f| &f.ops_g);
    let ops_f = per_factor(|f| &f.ops_f);
    let w0 = tensor.pure(&factors.iter().map(|f| f.lowest.clone()).collect::<Vec<_>>());
    let w = tensor.pure(&factors.iter().map(|f| f.shifted.clone()).collect::<Vec<_>>());
    debug_assert!(!to_sparse(&w).is_empty());
    Ok(AppendixReport {
        irreps: irreps.to_vec(),
        f_dims: filtration(&tensor, &ops_f, &powers, &w, modes),
        g_dims: filtration(&tensor, &ops_g, &powers, &w0, modes),
        total_dim: tensor.total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()
    }

    #[test]
    fn single_factor_is_whole_module_at_level_zero() {
        for irrep in [Irrep::Sl2(3), Irrep::Sl3Sym(2)] {
            let r = appendix_filtration_check(&[irrep], &ints(&[4])).unwrap();
            assert!(r.passed());
            assert_eq!(r.f_dims[0], irrep.dim());
            assert_eq!(r.g_dims[0], irrep.dim());
        }
    }

    #[test]
    fn two_doublets() {
        let r = appendix_filtration_check(&[Irrep::Sl2(1), Irrep::Sl2(1)], &ints(&[1, -1])).unwrap();
        assert!(r.passed());
        // spin 1 + spin 0: the triplet at level 0, the singlet at level 1
        assert_eq!(r.g_dims[..2], [3, 4]);
        let coincident = appendix_filtration_check(&[Irrep::Sl2(1), Irrep::Sl2(1)], &ints(&[0, 0])).unwrap();
        assert!(coincident.passed());
        assert_eq!(*coincident.g_dims.last().unwrap(), 3);
    }

    #[test]
    fn sl3_pair() {
        let r = appendix_filtration_check(&[Irrep::Sl3Sym(1), Irrep::Sl3Sym(2)], &ints(&[2, -1])).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(*r.g_dims.last().unwrap(), 18);
    }

    #[test]
    fn mode_margin_changes_nothing() {
        let irreps = [Irrep::Sl2(2), Irrep::Sl2(1), Irrep::Sl2(1)];
        let z = ints(&[1, 2, -3]);
        let base = appendix_filtration_check(&irreps, &z).unwrap();
        let wide = appendix_filtration_check_with_modes(&irreps, &z, 2).unwrap();
        assert!(base.passed() && wide.passed());
        assert_eq!(base.g_dims.last(), wide.g_dims.last());
        let at = |v: &[usize], i: usize| *v.get(i).unwrap_or(v.last().unwrap());
        for i in 0..wide.g_dims.len() {
            assert_eq!(at(&base.g_dims, i), at(&wide.g_dims, i));
        }
    }

    #[test]
    fn rejects_mixed_input() {
        assert!(appendix_filtration_check(&[Irrep::Sl2(1), Irrep::Sl3Sym(1)], &ints(&[0, 1])).is_err());
        assert!(appendix_filtration_check(&[Irrep::Sl2(1)], &ints(&[0, 1])).is_err());
    }
}
