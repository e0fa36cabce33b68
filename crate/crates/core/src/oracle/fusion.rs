//! Filtered tensor products of abelian evaluation modules `V^(n_p)_{k_p}(z_p)`
//! and their associated graded characters.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::linalg::{EchelonBasis, SparseRow};
use crate::error::{Error, Result};
use crate::partitions::FusionSpec;
use crate::polyring::{MPoly, Monomial};

/// `C[x_1..x_{n-1}] / (x_a for a >= m, all monomials of degree k+1)` with
/// cyclic vector `1`: basis the monomials in `x_1..x_{m-1}` of degree `<= k`.
#[derive(Clone, Debug)]
pub struct AbelianModule {
    pub m: usize,
    pub k: u32,
    /// Exponents over `x_1..x_{n-1}`.
    pub basis: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl AbelianModule {
    pub fn new(m: usize, k: u32, labels: usize) -> Self {
        let mut basis = Vec::new();
        let active = m.saturating_sub(1).min(labels);
        let mut cur = vec![0u32; labels];
        fill(&mut cur, 0, active, k, &mut basis);
        let index = basis.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        AbelianModule { m, k, basis, index }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `x_a` applied to basis element `j`, `a` 1-based.
    pub fn act(&self, a: usize, j: usize) -> Option<usize> {
        let mut e = self.basis[j].clone();
        e[a - 1] += 1;
        self.index.get(&e).copied()
    }
}

fn fill(cur: &mut Vec<u32>, i: usize, active: usize, left: u32, out: &mut Vec<Vec<u32>>) {
    if i == active {
        out.push(cur.clone());
        return;
    }
    for c in 0..=left {
        cur[i] = c;
        fill(cur, i + 1, active, left - c, out);
    }
    cur[i] = 0;
}

/// Clears denominators: `z_p = a_p / D`. Scaling `x[i]` by `D^i` leaves every
/// span unchanged, so the integers `a_p` can stand in for the `z_p`.
pub fn integral_points(z: &[BigRational]) -> Vec<BigInt> {
    let d = z.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    z.iter()
        .map(|r| (r * BigRational::from_integer(d.clone())).to_integer())
        .collect()
}

/// Per weight: tensor basis (one local index per factor) and its index.
type WeightSpaces = HashMap<Vec<u32>, (Vec<Vec<usize>>, HashMap<Vec<usize>, usize>)>;

struct TensorSpace {
    labels: usize,
    factors: Vec<AbelianModule>,
    spaces: WeightSpaces,
}

impl TensorSpace {
    fn new(spec: &FusionSpec) -> Self {
        let labels = spec.rank() - 1;
        let factors: Vec<AbelianModule> = spec
            .factors()
            .iter()
            .map(|f| AbelianModule::new(f.n as usize, f.k, labels))
            .collect();
        let mut spaces: WeightSpaces = HashMap::new();
        let mut cur = Vec::new();
        enumerate_tensor(&factors, &mut cur, &mut vec![0u32; labels], &mut spaces);
        for (basis, index) in spaces.values_mut() {
            basis.sort();
            *index = basis.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        }
        TensorSpace {
            labels,
            factors,
            spaces,
        }
    }

    fn dim(&self, m: &[u32]) -> usize {
        self.spaces.get(m).map_or(0, |(b, _)| b.len())
    }

    /// `x_a[i] = sum_p z_p^i x_a^(p)` applied to a vector of weight `m`.
    fn apply(&self, a: usize, powers: &[BigInt], v: &SparseRow, m: &[u32]) -> SparseRow {
        let mut target = m.to_vec();
        target[a - 1] += 1;
        let (src_basis, _) = &self.spaces[m];
        let Some((_, dst_index)) = self.spaces.get(&target) else {
            return Vec::new();
        };
        let mut acc: HashMap<usize, BigInt> = HashMap::new();
        for (c, x) in v {
            let t = &src_basis[*c as usize];
            for (p, f) in self.factors.iter().enumerate() {
                if powers[p].is_zero() {
                    continue;
                }
                if let Some(j) = f.act(a, t[p]) {
                    let mut u = t.clone();
                    u[p] = j;
                    *acc.entry(dst_index[&u]).or_insert_with(BigInt::zero) += x * &powers[p];
                }
            }
        }
        let mut row: SparseRow = acc
            .into_iter()
            .filter(|(_, x)| !x.is_zero())
            .map(|(c, x)| (c as u32, x))
            .collect();
        row.sort_by_key(|(c, _)| *c);
        row
    }
}

fn enumerate_tensor(factors: &[AbelianModule], cur: &mut Vec<usize>, weight: &mut Vec<u32>, out: &mut WeightSpaces) {
    if cur.len() == factors.len() {
        out.entry(weight.clone()).or_default().0.push(cur.clone());
        return;
    }
    let f = &factors[cur.len()];
    for j in 0..f.dim() {
        for (w, e) in weight.iter_mut().zip(&f.basis[j]) {
            *w += e;
        }
        cur.push(j);
        enumerate_tensor(factors, cur, weight, out);
        cur.pop();
        for (w, e) in weight.iter_mut().zip(&f.basis[j]) {
            *w -= e;
        }
    }
}

/// Associated graded character of the filtered tensor product at points `z`.
pub fn fusion_gr_character(spec: &FusionSpec, z: &[BigRational]) -> Result<MPoly> {
    fusion_gr_character_with_modes(spec, z, 0)
}

/// As [`fusion_gr_character`], with operator modes `0..N-1+extra_modes`.
pub fn fusion_gr_character_with_modes(spec: &FusionSpec, z: &[BigRational], extra_modes: usize) -> Result<MPoly> {
    if z.len() != spec.num_factors() {
        return Err(Error::Precondition(format!(
            "{} evaluation points for {} factors",
            z.len(),
            spec.num_factors()
        )));
    }
    for i in 0..z.len() {
        for j in 0..i {
            if z[i] == z[j] {
                return Err(Error::Precondition(format!("evaluation point {} repeated", z[i])));
            }
        }
    }
    let zi = integral_points(z);
    let space = TensorSpace::new(spec);
    let labels = space.labels;
    let modes = spec.num_factors().saturating_sub(1) + extra_modes;
    let powers: Vec<Vec<BigInt>> = (0..=modes)
        .map(|i| zi.iter().map(|x| num_traits::pow(x.clone(), i)).collect())
        .collect();

    // filtration[m][d] = basis rows of F^d in weight m, kept until stable
    let mut filtration: HashMap<Vec<u32>, Vec<Vec<SparseRow>>> = HashMap::new();
    let mut weights: Vec<Vec<u32>> = space.spaces.keys().cloned().collect();
    weights.sort_by(|a, b| (a.iter().sum::<u32>(), a).cmp(&(b.iter().sum::<u32>(), b)));
    let mut out = MPoly::zero(labels);
    for m in weights {
        let full = space.dim(&m);
        let mut levels: Vec<Vec<SparseRow>> = Vec::new();
        let mut prev_dim = 0usize;
        for d in 0.. {
            let mut basis = EchelonBasis::new(full);
            if m.iter().all(|&x| x == 0) {
                // the cyclic vector is the unique weight-zero tensor
                basis.insert_sparse(&[(0, BigInt::one())]);
            }
            for a in 1..=labels {
                if m[a - 1] == 0 {
                    continue;
                }
                let mut lower = m.clone();
                lower[a - 1] -= 1;
                let Some(src) = filtration.get(&lower) else {
                    continue;
                };
                for i in 0..=modes.min(d) {
                    let lvl = &src[(d - i).min(src.len() - 1)];
                    for row in lvl {
                        basis.insert_sparse(&space.apply(a, &powers[i], row, &lower));
                        if basis.is_full() {
                            break;
                        }
                    }
                }
            }
            let dim = basis.rank();
            if dim > prev_dim {
                out += &MPoly::term(
                    (dim - prev_dim) as u64,
                    Monomial::new(d as u32, m.iter().map(|&x| x as i32).collect()),
                );
            }
            levels.push(basis.rows());
            if dim == full {
                break;
            }
            if d > full * (modes + 1) + 1 {
                return Err(Error::Consistency(format!(
                    "filtration in weight {m:?} stalled at {dim} of {full}"
                )));
            }
            prev_dim = dim;
        }
        filtration.insert(m, levels);
    }
    Ok(out)
}

/// `n` distinct rationals, varied by `seed`, for Z-independence sweeps.
pub fn sample_points(n: usize, seed: u64) -> Vec<BigRational> {
    let mut s = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1;
    let mut out: Vec<BigRational> = Vec::with_capacity(n);
    while out.len() < n {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        let num = (s % 19) as i64 - 9;
        let den = ((s >> 8) % 4) as i64 + 1;
        let r = BigRational::new(BigInt::from(num), BigInt::from(den));
        if !out.contains(&r) {
            out.push(r);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::char_fermionic;

    fn spec(s: &str) -> FusionSpec {
        FusionSpec::parse(s, None).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()
    }

    #[test]
    fn abelian_module_dimensions() {
        for m in 1..=5usize {
            for k in 0..=5u32 {
                let want = crate::partitions::binomial(k as u64 + m as u64 - 1, m as u64 - 1);
                assert_eq!(AbelianModule::new(m, k, 4).dim() as u128, want);
            }
        }
    }

    #[test]
    fn two_points_example() {
        let s = spec("2:1,2:1");
        let chi = fusion_gr_character(&s, &ints(&[1, -1])).unwrap();
        assert_eq!(chi, char_fermionic(s.chain()));
    }

    #[test]
    fn single_factor_is_all_degree_zero() {
        let s = spec("3:2");
        let chi = fusion_gr_character(&s, &ints(&[5])).unwrap();
        assert_eq!(chi.max_q_degree(), Some(0));
        assert_eq!(chi, char_fermionic(s.chain()));
    }

    #[test]
    fn independent_of_points_and_mode_margin() {
        for s in ["2:2,2:1,2:1", "3:1,2:2", "3:1,3:1,2:1"] {
            let fs = spec(s);
            let want = char_fermionic(fs.chain());
            for seed in 0..3 {
                let z = sample_points(fs.num_factors(), seed);
                assert_eq!(fusion_gr_character(&fs, &z).unwrap(), want, "{s}");
                assert_eq!(fusion_gr_character_with_modes(&fs, &z, 2).unwrap(), want, "{s}");
            }
        }
    }

    #[test]
    fn rational_points_scale() {
        let z = vec![
            BigRational::new(BigInt::from(1), BigInt::from(2)),
            BigRational::new(BigInt::from(-2), BigInt::from(3)),
        ];
        assert_eq!(integral_points(&z), vec![BigInt::from(3), BigInt::from(-4)]);
        let s = spec("2:1,2:1");
        assert_eq!(fusion_gr_character(&s, &z).unwrap(), char_fermionic(s.chain()));
    }

    #[test]
    fn repeated_points_rejected() {
        let s = spec("2:1,2:1");
        assert!(matches!(
            fusion_gr_character(&s, &ints(&[2, 2])),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            fusion_gr_character(&s, &ints(&[2])),
            Err(Error::Precondition(_))
        ));
    }
}
