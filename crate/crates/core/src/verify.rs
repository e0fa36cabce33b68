//! Sweeps that cross-check every identity against the oracles. Failures are
//! collected into reports, never raised.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::basisgen::{build_basis, verify_basis};
use crate::characters::{char_fermionic, char_recursive};
use crate::coinvariants::{
    coinv_character, coinv_character_alternating, coinv_character_w3, restrict_character, verlinde_dim,
    verlinde_expansion,
};
use crate::error::{Error, Result};
use crate::kostka::{alternating_kostka, restricted_kostka, unrestricted_kostka_all};
use crate::oracle::appendix::{appendix_filtration_check, Irrep};
use crate::oracle::coinv::{coinv_quotient_check, symmetric_spec};
use crate::oracle::fusion::{fusion_gr_character, sample_points, AbelianModule};
use crate::oracle::ring::hilbert_character;
use crate::oracle::sequence::{admissible_pivots, exact_sequence_check_with};
use crate::partitions::{binomial, Factor, FusionSpec, Partition};
use crate::polyring::MPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    WorkedExample,
    TripleAgreement,
    ZIndependence,
    ExactSequence,
    CoinvariantsRank2,
    CoinvariantsRank3,
    Verlinde,
    AlternatingSums,
    Appendix,
    Structural,
    Basis,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::WorkedExample,
        Suite::TripleAgreement,
        Suite::ZIndependence,
        Suite::ExactSequence,
        Suite::CoinvariantsRank2,
        Suite::CoinvariantsRank3,
        Suite::Verlinde,
        Suite::AlternatingSums,
        Suite::Appendix,
        Suite::Structural,
        Suite::Basis,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::WorkedExample => "worked-example",
            Suite::TripleAgreement => "triple-agreement",
            Suite::ZIndependence => "z-independence",
            Suite::ExactSequence => "exact-sequence",
            Suite::CoinvariantsRank2 => "coinvariants-rank2",
            Suite::CoinvariantsRank3 => "coinvariants-rank3",
            Suite::Verlinde => "verlinde",
            Suite::AlternatingSums => "alternating-sums",
            Suite::Appendix => "appendix",
            Suite::Structural => "structural",
            Suite::Basis => "basis",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// Sweep sizes. The defaults are the acceptance sizes; [`SweepBounds::capped`]
/// clamps overrides to [`SweepBounds::LIMIT`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepBounds {
    /// Largest rank `n` of the spec sweeps.
    pub max_rank: usize,
    /// `sum k_p` bound for ranks up to 3.
    pub max_boxes: u32,
    /// `sum k_p` bound for ranks 4 and up.
    pub high_rank_boxes: u32,
    /// `sum k_p` bound for the basis sweep.
    pub basis_boxes: u32,
    pub z_max_factors: usize,
    pub z_max_k: u32,
    pub z_choices: usize,
    pub max_level: u32,
    /// Rank-2 coinvariant shapes fit in the `box_side x box_side` square.
    pub box_side: u32,
    pub coinv3_boxes: u32,
    pub verlinde_boxes: u32,
    pub kostka_boxes: u32,
    pub sl2_factors: usize,
    pub sl2_max_dim: u32,
    pub sl3_factors: usize,
    pub sl3_max_k: u32,
    pub module_max_m: usize,
    pub module_max_k: u32,
}

impl Default for SweepBounds {
    fn default() -> Self {
        SweepBounds {
            max_rank: 4,
            max_boxes: 6,
            high_rank_boxes: 4,
            basis_boxes: 5,
            z_max_factors: 4,
            z_max_k: 2,
            z_choices: 3,
            max_level: 3,
            box_side: 3,
            coinv3_boxes: 6,
            verlinde_boxes: 7,
            kostka_boxes: 8,
            sl2_factors: 3,
            sl2_max_dim: 4,
            sl3_factors: 2,
            sl3_max_k: 2,
            module_max_m: 5,
            module_max_k: 5,
        }
    }
}

impl SweepBounds {
    pub const LIMIT: SweepBounds = SweepBounds {
        max_rank: 5,
        max_boxes: 9,
        high_rank_boxes: 6,
        basis_boxes: 8,
        z_max_factors: 5,
        z_max_k: 3,
        z_choices: 8,
        max_level: 5,
        box_side: 4,
        coinv3_boxes: 8,
        verlinde_boxes: 12,
        kostka_boxes: 14,
        sl2_factors: 4,
        sl2_max_dim: 5,
        sl3_factors: 3,
        sl3_max_k: 3,
        module_max_m: 8,
        module_max_k: 8,
    };

    /// Sets the main box bound and lowers the other size bounds to at most `boxes`.
    pub fn with_max_boxes(mut self, boxes: u32) -> Self {
        self.max_boxes = boxes;
        self.high_rank_boxes = self.high_rank_boxes.min(boxes);
        self.basis_boxes = self.basis_boxes.min(boxes);
        self.coinv3_boxes = self.coinv3_boxes.min(boxes);
        self.verlinde_boxes = self.verlinde_boxes.min(boxes);
        self.kostka_boxes = self.kostka_boxes.min(boxes);
        self
    }

    pub fn capped(self) -> Self {
        let l = Self::LIMIT;
        SweepBounds {
            max_rank: self.max_rank.min(l.max_rank),
            max_boxes: self.max_boxes.min(l.max_boxes),
            high_rank_boxes: self.high_rank_boxes.min(l.high_rank_boxes),
            basis_boxes: self.basis_boxes.min(l.basis_boxes),
            z_max_factors: self.z_max_factors.min(l.z_max_factors),
            z_max_k: self.z_max_k.min(l.z_max_k),
            z_choices: self.z_choices.min(l.z_choices),
            max_level: self.max_level.min(l.max_level),
            box_side: self.box_side.min(l.box_side),
            coinv3_boxes: self.coinv3_boxes.min(l.coinv3_boxes),
            verlinde_boxes: self.verlinde_boxes.min(l.verlinde_boxes),
            kostka_boxes: self.kostka_boxes.min(l.kostka_boxes),
            sl2_factors: self.sl2_factors.min(l.sl2_factors),
            sl2_max_dim: self.sl2_max_dim.min(l.sl2_max_dim),
            sl3_factors: self.sl3_factors.min(l.sl3_factors),
            sl3_max_k: self.sl3_max_k.min(l.sl3_max_k),
            module_max_m: self.module_max_m.min(l.module_max_m),
            module_max_k: self.module_max_k.min(l.module_max_k),
        }
    }

    fn boxes_for_rank(&self, n: usize) -> u32 {
        if n <= 3 {
            self.max_boxes
        } else {
            self.high_rank_boxes
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteStatus {
    Passed,
    Failed,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub status: SuiteStatus,
    /// Number of individual identities checked.
    pub checked: usize,
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl SuiteReport {
    fn from_outcomes(suite: Suite, outcomes: Vec<Outcome>) -> Self {
        let checked = outcomes.len();
        let failures: Vec<String> = outcomes.into_iter().filter_map(|o| o.err()).collect();
        SuiteReport {
            suite,
            status: if failures.is_empty() {
                SuiteStatus::Passed
            } else {
                SuiteStatus::Failed
            },
            checked,
            failures,
            note: None,
        }
    }

    fn skipped(suite: Suite, why: impl Into<String>) -> Self {
        SuiteReport {
            suite,
            status: SuiteStatus::Skipped,
            checked: 0,
            failures: Vec::new(),
            note: Some(why.into()),
        }
    }

    pub fn passed(&self) -> bool {
        self.status != SuiteStatus::Failed
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub bounds: SweepBounds,
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }
}

/// `Ok(())` for a passing identity, `Err(description)` otherwise.
type Outcome = std::result::Result<(), String>;

fn outcome(label: impl fmt::Display, check: impl FnOnce() -> Result<Option<String>>) -> Outcome {
    match check() {
        Ok(None) => Ok(()),
        Ok(Some(why)) => Err(format!("{label}: {why}")),
        Err(e) => Err(format!("{label}: {e}")),
    }
}

fn mismatch(what: &str, a: &MPoly, b: &MPoly) -> Option<String> {
    (a != b).then(|| format!("{what}: {a} != {b}"))
}

pub fn run_suites(suites: &[Suite], bounds: &SweepBounds) -> VerifyReport {
    VerifyReport {
        bounds: bounds.clone(),
        suites: suites.iter().map(|&s| run_suite(s, bounds)).collect(),
    }
}

pub fn run_suite(suite: Suite, bounds: &SweepBounds) -> SuiteReport {
    match suite {
        Suite::WorkedExample => worked_example(),
        Suite::TripleAgreement => triple_agreement(bounds),
        Suite::ZIndependence => z_independence(bounds),
        Suite::ExactSequence => exact_sequence(bounds),
        Suite::CoinvariantsRank2 => coinvariants_rank2(bounds),
        Suite::CoinvariantsRank3 => coinvariants_rank3(bounds),
        Suite::Verlinde => verlinde(bounds),
        Suite::AlternatingSums => alternating_sums_with(bounds, &restricted_kostka),
        Suite::Appendix => appendix(bounds),
        Suite::Structural => structural(bounds),
        Suite::Basis => basis(bounds),
    }
}

/// Multisets of factors `(n, k)` with `2 <= n <= max_n`, `1 <= k <= max_k`,
/// at most `max_factors` factors and `sum k <= max_boxes`.
pub fn factor_multisets(max_n: u32, max_k: u32, max_factors: usize, max_boxes: u32) -> Vec<Vec<Factor>> {
    let kinds: Vec<Factor> = (2..=max_n)
        .flat_map(|n| (1..=max_k).map(move |k| Factor { n, k }))
        .collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    grow(&kinds, 0, max_factors, max_boxes, &mut cur, &mut out);
    out
}

fn grow(kinds: &[Factor], from: usize, slots: usize, boxes: u32, cur: &mut Vec<Factor>, out: &mut Vec<Vec<Factor>>) {
    if !cur.is_empty() {
        out.push(cur.clone());
    }
    if slots == 0 {
        return;
    }
    for (i, f) in kinds.iter().enumerate().skip(from) {
        if f.k <= boxes {
            cur.push(*f);
            grow(kinds, i, slots - 1, boxes - f.k, cur, out);
            cur.pop();
        }
    }
}

/// Specs of rank `2..=max_rank` with factors `n_p <= rank` and the rank's
/// box bound.
pub fn sweep_specs(bounds: &SweepBounds) -> Vec<FusionSpec> {
    let mut out = Vec::new();
    for n in 2..=bounds.max_rank {
        let boxes = bounds.boxes_for_rank(n);
        for fs in factor_multisets(n as u32, boxes, boxes as usize, boxes) {
            out.push(FusionSpec::new(&fs, n).expect("valid factors"));
        }
    }
    out
}

/// Partitions with at most `rows` rows, parts at most `width`, size at most `boxes`.
pub fn partitions_in_box(rows: usize, width: u32, boxes: u32) -> Vec<Partition> {
    (0..=boxes)
        .flat_map(Partition::all_of)
        .filter(|p| p.len() <= rows && p.part(1) <= width)
        .collect()
}

fn worked_example() -> SuiteReport {
    const LISTED: [&str; 18] = [
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
    ];
    let o = outcome("2:2,2:2,2:1", || {
        let spec = FusionSpec::parse("2:2,2:2,2:1", None)?;
        let b = build_basis(&spec)?;
        let got: HashSet<String> = b.iter().map(|m| m.to_text(true)).collect();
        let want: HashSet<String> = LISTED.iter().map(|s| s.to_string()).collect();
        if b.len() != 18 || got != want {
            return Ok(Some(format!("basis {got:?} differs from the listed 18 monomials")));
        }
        let r = verify_basis(&b, &spec)?;
        Ok((!r.passed()).then(|| r.failures.join("; ")))
    });
    SuiteReport::from_outcomes(Suite::WorkedExample, vec![o])
}

fn triple_agreement(bounds: &SweepBounds) -> SuiteReport {
    let outcomes = sweep_specs(bounds)
        .par_iter()
        .map(|s| {
            outcome(s, || {
                let ferm = char_fermionic(s.chain());
                let rec = char_recursive(s.chain())?;
                let hilb = hilbert_character(s)?;
                Ok(mismatch("fermionic vs recursive", &ferm, &rec)
                    .or_else(|| mismatch("fermionic vs oracle", &ferm, &hilb)))
            })
        })
        .collect();
    SuiteReport::from_outcomes(Suite::TripleAgreement, outcomes)
}

/// `count` distinct point sets for `n` factors.
fn distinct_choices(n: usize, count: usize) -> Vec<Vec<BigRational>> {
    let mut out: Vec<Vec<BigRational>> = Vec::new();
    let mut seed = 0;
    while out.len() < count {
        let z = sample_points(n, seed);
        if !out.contains(&z) {
            out.push(z);
        }
        seed += 1;
    }
    out
}

fn z_independence(bounds: &SweepBounds) -> SuiteReport {
    let mut specs = Vec::new();
    for n in 2..=bounds.max_rank.min(3) {
        for fs in factor_multisets(n as u32, bounds.z_max_k, bounds.z_max_factors, u32::MAX) {
            specs.push(FusionSpec::new(&fs, n).expect("valid factors"));
        }
    }
    let outcomes = specs
        .par_iter()
        .map(|s| {
            outcome(s, || {
                let hilb = hilbert_character(s)?;
                for z in distinct_choices(s.num_factors(), bounds.z_choices) {
                    let gr = fusion_gr_character(s, &z)?;
                    if gr != hilb {
                        let pts: Vec<String> = z.iter().map(|x| x.to_string()).collect();
                        return Ok(Some(format!("at z = ({}): {gr} != {hilb}", pts.join(", "))));
                    }
                }
                Ok(None)
            })
        })
        .collect();
    SuiteReport::from_outcomes(Suite::ZIndependence, outcomes)
}

fn exact_sequence(bounds: &SweepBounds) -> SuiteReport {
    let cache: Mutex<HashMap<(String, usize), MPoly>> = Mutex::new(HashMap::new());
    let character = |s: &FusionSpec| -> Result<MPoly> {
        let key = (s.to_spec_string(), s.rank());
        if let Some(c) = cache.lock().expect("cache lock").get(&key) {
            return Ok(c.clone());
        }
        let c = hilbert_character(s)?;
        cache.lock().expect("cache lock").insert(key, c.clone());
        Ok(c)
    };
    let mut outcomes: Vec<Outcome> = sweep_specs(bounds)
        .par_iter()
        .flat_map_iter(|s| {
            admissible_pivots(s)
                .into_iter()
                .map(|p| {
                    outcome(format!("{s} at {}", s.factors()[p]), || {
                        let r = exact_sequence_check_with(s, p, &mut |t| character(t))?;
                        Ok((!r.passed()).then(|| {
                            format!(
                                "{} != {}, dims {} vs {} + {}",
                                r.identity.lhs, r.identity.rhs, r.dims[0], r.dims[1], r.dims[2]
                            )
                        }))
                    })
                })
                .collect::<Vec<_>>()
        })
        .collect();
    outcomes.push(outcome("2:2,2:2,2:1 at 2:2", || {
        let s = FusionSpec::parse("2:2,2:2,2:1", None)?;
        let r = exact_sequence_check_with(&s, 0, &mut |t| character(t))?;
        let want = [18, 6, 12].map(BigInt::from);
        Ok((!r.passed() || r.dims != want).then(|| format!("dims {:?}, expected 18 = 6 + 12", r.dims)))
    }));
    SuiteReport::from_outcomes(Suite::ExactSequence, outcomes)
}

fn labelled_cases(bounds: &SweepBounds, shapes: impl Fn(u32) -> Vec<Partition>) -> Vec<(u32, u32, Partition)> {
    let mut out = Vec::new();
    for k in 0..=bounds.max_level {
        for shape in shapes(k) {
            for l in 0..=k {
                out.push((k, l, shape.clone()));
            }
        }
    }
    out
}

fn coinvariants_rank2(bounds: &SweepBounds) -> SuiteReport {
    let side = bounds.box_side;
    let cases = labelled_cases(bounds, |k| partitions_in_box(side.min(k) as usize, side, side * side));
    let outcomes = cases
        .par_iter()
        .map(|(k, l, mu)| {
            outcome(format!("k={k} l={l} mu={mu}"), || {
                let r = coinv_quotient_check(&symmetric_spec(mu, 2)?, *k, *l)?;
                Ok((!r.passed()).then(|| format!("{} != {}", r.lhs, r.rhs)))
            })
        })
        .collect();
    SuiteReport::from_outcomes(Suite::CoinvariantsRank2, outcomes)
}

fn rank3_cases(bounds: &SweepBounds) -> Vec<(u32, u32, Partition)> {
    let boxes = bounds.coinv3_boxes;
    labelled_cases(bounds, |k| partitions_in_box(k as usize, boxes, boxes))
}

fn coinvariants_rank3(bounds: &SweepBounds) -> SuiteReport {
    if bounds.max_rank < 3 {
        return SuiteReport::skipped(Suite::CoinvariantsRank3, "needs rank 3");
    }
    let outcomes = rank3_cases(bounds)
        .par_iter()
        .map(|(k, l, lambda)| {
            outcome(format!("k={k} l={l} lambda={lambda}"), || {
                let r = coinv_quotient_check(&symmetric_spec(lambda, 3)?, *k, *l)?;
                if !r.passed() {
                    return Ok(Some(format!("oracle {} != {}", r.lhs, r.rhs)));
                }
                let restricted = restrict_character(&coinv_character_w3(*k, *l, lambda)?, lambda)?;
                Ok(mismatch("restriction", &restricted, &coinv_character(*k, *l, lambda)?))
            })
        })
        .collect();
    SuiteReport::from_outcomes(Suite::CoinvariantsRank3, outcomes)
}

fn verlinde(bounds: &SweepBounds) -> SuiteReport {
    let boxes = bounds.verlinde_boxes;
    let mut outcomes: Vec<Outcome> = labelled_cases(bounds, |k| partitions_in_box(k as usize, boxes, boxes))
        .par_iter()
        .map(|(k, l, lambda)| {
            outcome(format!("dim k={k} l={l} lambda={lambda}"), || {
                let at_one = coinv_character(*k, *l, lambda)?.eval_at_one();
                let dim = verlinde_dim(lambda, *k, *l)?;
                Ok((at_one != dim).then(|| format!("character at 1 is {at_one}, Verlinde gives {dim}")))
            })
        })
        .collect();
    let expansions: Vec<Outcome> = (0..=bounds.max_level)
        .flat_map(|k| {
            partitions_in_box(k as usize, boxes, boxes)
                .into_iter()
                .map(move |mu| (k, mu))
        })
        .collect::<Vec<_>>()
        .par_iter()
        .map(|(k, mu)| {
            outcome(format!("expansion k={k} mu={mu}"), || {
                let e = verlinde_expansion(*k, mu)?;
                for l in 0..=*k {
                    let want = restricted_kostka(*k, l, mu)?.eval_at_one();
                    if e.coeff(l) != want {
                        return Ok(Some(format!("coefficient of [{l}] is {}, K(1) = {want}", e.coeff(l))));
                    }
                }
                Ok(None)
            })
        })
        .collect();
    outcomes.extend(expansions);
    SuiteReport::from_outcomes(Suite::Verlinde, outcomes)
}

/// Alternating-sum suite with a caller-supplied restricted Kostka polynomial,
/// so a deliberately broken formula can be shown to fail.
pub fn alternating_sums_with(
    bounds: &SweepBounds,
    restricted: &(dyn Fn(u32, u32, &Partition) -> Result<MPoly> + Sync),
) -> SuiteReport {
    let boxes = bounds.kostka_boxes;
    let mut outcomes: Vec<Outcome> = labelled_cases(bounds, |k| partitions_in_box(k as usize, boxes, boxes))
        .par_iter()
        .map(|(k, l, mu)| {
            outcome(format!("kostka k={k} l={l} mu={mu}"), || {
                Ok(mismatch(
                    "restricted vs alternating",
                    &restricted(*k, *l, mu)?,
                    &alternating_kostka(*k, *l, mu)?,
                ))
            })
        })
        .collect();
    if bounds.max_rank >= 3 {
        let coinv: Vec<Outcome> = rank3_cases(bounds)
            .par_iter()
            .map(|(k, l, lambda)| {
                outcome(format!("coinvariants k={k} l={l} lambda={lambda}"), || {
                    let alt = coinv_character_alternating(*k, *l, lambda)?;
                    Ok(mismatch(
                        "alternating vs fermionic",
                        &alt,
                        &coinv_character(*k, *l, lambda)?,
                    ))
                })
            })
            .collect();
        outcomes.extend(coinv);
    }
    SuiteReport::from_outcomes(Suite::AlternatingSums, outcomes)
}

fn irrep_multisets(max_factors: usize, labels: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    fn rec(labels: &[u32], from: usize, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if slots == 0 {
            return;
        }
        for i in from..labels.len() {
            cur.push(labels[i]);
            rec(labels, i, slots - 1, cur, out);
            cur.pop();
        }
    }
    rec(labels, 0, max_factors, &mut Vec::new(), &mut out);
    out
}

fn point_sets(n: usize) -> Vec<(&'static str, Vec<BigRational>)> {
    let int = |x: i64| BigRational::from_integer(BigInt::from(x));
    let mut out = vec![("distinct", sample_points(n, 0))];
    if n >= 2 {
        out.push(("coincident", vec![int(1); n]));
    }
    if n >= 3 {
        let mut z = vec![int(2); n];
        z[0] = int(-1);
        out.push(("partly coincident", z));
    }
    out
}

fn appendix(bounds: &SweepBounds) -> SuiteReport {
    let mut cases: Vec<Vec<Irrep>> = Vec::new();
    let sl2_labels: Vec<u32> = (0..bounds.sl2_max_dim).collect();
    for rs in irrep_multisets(bounds.sl2_factors, &sl2_labels) {
        cases.push(rs.into_iter().map(Irrep::Sl2).collect());
    }
    if bounds.max_rank >= 3 {
        let sl3_labels: Vec<u32> = (0..=bounds.sl3_max_k).collect();
        for rs in irrep_multisets(bounds.sl3_factors, &sl3_labels) {
            cases.push(rs.into_iter().map(Irrep::Sl3Sym).collect());
        }
    }
    let outcomes = cases
        .par_iter()
        .flat_map_iter(|irreps| {
            point_sets(irreps.len())
                .into_iter()
                .map(|(kind, z)| {
                    outcome(format!("{irreps:?} at {kind} points"), || {
                        let r = appendix_filtration_check(irreps, &z)?;
                        Ok((!r.passed()).then(|| format!("F {:?} vs G {:?}", r.f_dims, r.g_dims)))
                    })
                })
                .collect::<Vec<_>>()
        })
        .collect();
    SuiteReport::from_outcomes(Suite::Appendix, outcomes)
}

fn structural(bounds: &SweepBounds) -> SuiteReport {
    let mut outcomes = Vec::new();
    for m in 1..=bounds.module_max_m {
        for k in 0..=bounds.module_max_k {
            outcomes.push(outcome(format!("dim V^({m})_{k}"), || {
                let want = binomial(k as u64 + m as u64 - 1, m as u64 - 1);
                let module = AbelianModule::new(m, k, m.saturating_sub(1)).dim() as u128;
                let spec = FusionSpec::new(&[Factor { n: m as u32, k }], m)?;
                let ferm = char_fermionic(spec.chain()).eval_at_one();
                let agree = module == want && spec.dimension() == want && ferm == BigInt::from(want);
                Ok((!agree).then(|| format!("binomial {want}, module {module}, character {ferm}")))
            }));
        }
    }
    for size in 0..=bounds.kostka_boxes {
        for mu in Partition::all_of(size) {
            outcomes.push(outcome(format!("peel-off mu={mu}"), || {
                unrestricted_kostka_all(&mu).map(|_| None)
            }));
        }
    }
    let rank2 = SweepBounds {
        max_rank: 2,
        ..bounds.clone()
    };
    for s in sweep_specs(&rank2) {
        outcomes.push(outcome(format!("palindromy {s}"), || {
            let total = s.total_boxes() as i32;
            let chi = char_fermionic(s.chain());
            let at = |m: i32| chi.z_coefficient(&[m]).eval_at_one();
            Ok((0..=total)
                .find(|&m| at(m) != at(total - m))
                .map(|m| format!("z^{m} has {} but z^{} has {}", at(m), total - m, at(total - m))))
        }));
    }
    SuiteReport::from_outcomes(Suite::Structural, outcomes)
}

fn basis(bounds: &SweepBounds) -> SuiteReport {
    let b = SweepBounds {
        max_rank: bounds.max_rank.min(3),
        max_boxes: bounds.basis_boxes,
        ..bounds.clone()
    };
    let outcomes = sweep_specs(&b)
        .par_iter()
        .map(|s| {
            outcome(s, || {
                let basis = build_basis(s)?;
                let r = verify_basis(&basis, s)?;
                Ok((!r.passed()).then(|| r.failures.join("; ")))
            })
        })
        .collect();
    SuiteReport::from_outcomes(Suite::Basis, outcomes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SweepBounds {
        SweepBounds {
            max_rank: 3,
            z_max_factors: 3,
            ..SweepBounds::default()
        }
        .with_max_boxes(3)
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn factor_multiset_counts() {
        // (2,1), (2,2) and their multisets of total weight <= 2
        let all = factor_multisets(2, 2, 2, 2);
        assert_eq!(all.len(), 3);
        assert!(factor_multisets(3, 2, 4, u32::MAX).iter().all(|f| f.len() <= 4));
    }

    #[test]
    fn small_sweep_passes() {
        let r = run_suites(&Suite::ALL, &small());
        for s in &r.suites {
            assert!(s.passed(), "{}: {:?}", s.suite, s.failures);
        }
    }

    #[test]
    fn rank_two_bounds_skip_rank_three_suites() {
        let b = SweepBounds { max_rank: 2, ..small() };
        let r = run_suite(Suite::CoinvariantsRank3, &b);
        assert_eq!(r.status, SuiteStatus::Skipped);
        assert_eq!(run_suite(Suite::TripleAgreement, &b).status, SuiteStatus::Passed);
    }

    #[test]
    fn flipped_sign_in_kostka_exponent_fails() {
        use crate::kostka::RestrictedKostkaParams;
        use crate::polyring::Monomial;
        let broken = |k: u32, l: u32, mu: &Partition| -> Result<MPoly> {
            let params = RestrictedKostkaParams::new(k, l, mu)?;
            let size = mu.size() as i64;
            if size < l as i64 || (size - l as i64) % 2 != 0 {
                return Ok(MPoly::zero(0));
            }
            let mut acc = MPoly::zero(0);
            for s in params.summation_vectors((size - l as i64) / 2) {
                // q^{Q(s) - v.s} in place of q^{Q(s) + v.s}
                let vs: i64 = params.v.iter().zip(&s).map(|(a, b)| a * b).sum();
                let t = params.term(&s);
                for (m, c) in t.terms() {
                    let e = m.q as i64 - 2 * vs;
                    acc += &MPoly::term(c.clone(), Monomial::new(e.max(0) as u32, vec![]));
                }
            }
            Ok(acc)
        };
        let r = alternating_sums_with(&small(), &broken);
        assert_eq!(r.status, SuiteStatus::Failed);
    }

    #[test]
    fn capped_bounds() {
        let b = SweepBounds::default().with_max_boxes(50).capped();
        assert_eq!(b.max_boxes, SweepBounds::LIMIT.max_boxes);
        assert_eq!(b, b.clone().capped());
    }
}
