//! Exact purities, Schmidt ranks, rank indices and Concentratable
//! Entanglement of graph states.
//!
//! The purity of the reduced state on `B` is `1/k` with `k` the number of
//! distinct generator sets left after tracing out the complement, i.e.
//! `2^-r` with `r` the GF(2) rank of the cut matrix. Everything here is exact.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::dyadic::DyadicRational;
use crate::graph::{Graph, GraphError, QubitSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricsError {
    #[error("Concentratable Entanglement needs a non-empty qubit set")]
    EmptySubset,
    #[error("cut size {m} out of range 1..={max}")]
    CutSizeOutOfRange { m: usize, max: usize },
    #[error("qubit count must be at least 1")]
    ZeroQubits,
    #[error("{0} qubits is too many for exact evaluation")]
    TooLarge(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn check_universe(g: &Graph, set: &QubitSet) -> Result<(), MetricsError> {
    if set.universe() != g.n() {
        return Err(GraphError::UniverseMismatch {
            expected: g.n(),
            actual: set.universe(),
        }
        .into());
    }
    Ok(())
}

/// `−log2 Tr ρ_B²`: the rank of the cut matrix between `B` and its complement.
pub fn schmidt_rank(g: &Graph, kept: &QubitSet) -> Result<u32, MetricsError> {
    check_universe(g, kept)?;
    Ok(g.cut_rank(kept) as u32)
}

/// `Tr ρ_B²` of the reduced state on `kept`. The smaller side of the cut is
/// the one traced out, which leaves the value unchanged.
pub fn purity(g: &Graph, kept: &QubitSet) -> Result<DyadicRational, MetricsError> {
    Ok(DyadicRational::pow2_neg(schmidt_rank(g, kept)?))
}

/// `1 − 2^-|s| Σ_{α ⊆ s} Tr ρ_α²`.
///
/// The full set is evaluated from the purity spectrum (each cut counted with
/// its complement); proper subsets sum over every `α ⊆ s` directly.
pub fn concentratable_entanglement(
    g: &Graph,
    subset: &QubitSet,
) -> Result<DyadicRational, MetricsError> {
    check_universe(g, subset)?;
    if subset.is_empty() {
        return Err(MetricsError::EmptySubset);
    }
    if subset.is_full() {
        let spectrum = purity_spectrum(g)?;
        Ok(DyadicRational::ONE - spectrum.total_purity().halve(g.n() as u32))
    } else {
        concentratable_entanglement_exhaustive(g, subset)
    }
}

/// CE by summing the purity of every subset of `s`, no symmetry used.
pub fn concentratable_entanglement_exhaustive(
    g: &Graph,
    subset: &QubitSet,
) -> Result<DyadicRational, MetricsError> {
    check_universe(g, subset)?;
    if subset.is_empty() {
        return Err(MetricsError::EmptySubset);
    }
    if subset.len() > 40 {
        return Err(MetricsError::TooLarge(subset.len()));
    }
    let total = sum_purities(g, subset.subsets().collect());
    Ok(DyadicRational::ONE - total.halve(subset.len() as u32))
}

fn sum_purities(g: &Graph, sets: Vec<QubitSet>) -> DyadicRational {
    // exact addition is associative, so the parallel reduction is order-free
    sets.into_par_iter()
        .map(|alpha| DyadicRational::pow2_neg(g.cut_rank(&alpha) as u32))
        .reduce(|| DyadicRational::ZERO, |a, b| a + b)
}

/// Purities of all cuts of one size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PurityLevel {
    /// Size of the smaller side.
    pub m: usize,
    /// Number of cuts at this level.
    pub cuts: usize,
    /// Schmidt rank → number of cuts with that rank (purity `2^-rank`).
    pub by_rank: BTreeMap<u32, usize>,
}

impl PurityLevel {
    /// `(purity, count)` pairs, smallest purity first.
    pub fn tallies(&self) -> Vec<(DyadicRational, usize)> {
        self.by_rank
            .iter()
            .rev()
            .map(|(&r, &c)| (DyadicRational::pow2_neg(r), c))
            .collect()
    }

    pub fn sum(&self) -> DyadicRational {
        self.by_rank
            .iter()
            .map(|(&r, &c)| DyadicRational::new(c as u128, r))
            .sum()
    }
}

/// Purity multisets for every cut size `m = 0..=⌊n/2⌋`. For even `n` the
/// middle level counts each unordered bipartition once (the side containing
/// the lowest-numbered qubit).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PuritySpectrum {
    pub n: usize,
    pub levels: Vec<PurityLevel>,
}

impl PuritySpectrum {
    pub fn level(&self, m: usize) -> Option<&PurityLevel> {
        self.levels.get(m)
    }

    /// `Σ_{α ⊆ S} Tr ρ_α²` recovered from the halved spectrum: every cut
    /// at every level stands for itself and its complement.
    pub fn total_purity(&self) -> DyadicRational {
        let half: DyadicRational = self.levels.iter().map(PurityLevel::sum).sum();
        half + half
    }

    /// Distinct purity values over all proper non-empty cuts.
    pub fn distinct_purities(&self) -> usize {
        let mut ranks: Vec<u32> = self
            .levels
            .iter()
            .skip(1)
            .flat_map(|l| l.by_rank.keys().copied())
            .collect();
        ranks.sort_unstable();
        ranks.dedup();
        ranks.len()
    }

    /// Every cut attains the minimal purity `2^-m`.
    pub fn is_maximal(&self) -> bool {
        self.levels
            .iter()
            .all(|l| l.by_rank.keys().all(|&r| r as usize == l.m))
    }
}

impl fmt::Display for PuritySpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, level) in self.levels.iter().enumerate().skip(1) {
            if i > 1 {
                f.write_str("\n")?;
            }
            write!(f, "m={} ({} cuts):", level.m, level.cuts)?;
            for (p, c) in level.tallies() {
                write!(f, " {c}x{p}")?;
            }
        }
        Ok(())
    }
}

/// Cuts of size `m` used at spectrum level `m`.
fn level_cuts(n: usize, m: usize) -> Vec<QubitSet> {
    let full = QubitSet::full(n);
    let mut out = Vec::new();
    combinations(n, m, &mut |mask| {
        // pair B with its complement once on the middle layer
        if 2 * m == n && m > 0 && mask & 1 == 0 {
            return;
        }
        out.push(QubitSet::from_mask(n, mask).expect("mask within universe"));
    });
    debug_assert!(out.iter().all(|s| s.is_subset(&full)));
    out
}

/// Calls `f` on every `m`-subset of `0..n` as a bit mask.
fn combinations(n: usize, m: usize, f: &mut dyn FnMut(u64)) {
    fn rec(start: usize, n: usize, left: usize, mask: u64, f: &mut dyn FnMut(u64)) {
        if left == 0 {
            f(mask);
            return;
        }
        for v in start..=n - left {
            rec(v + 1, n, left - 1, mask | 1 << v, f);
        }
    }
    if m <= n {
        rec(0, n, m, 0, f);
    }
}

pub fn purity_spectrum(g: &Graph) -> Result<PuritySpectrum, MetricsError> {
    let n = g.n();
    if n > 40 {
        return Err(MetricsError::TooLarge(n));
    }
    let levels = (0..=n / 2)
        .map(|m| {
            let cuts = level_cuts(n, m);
            let ranks: Vec<u32> = cuts.par_iter().map(|c| g.cut_rank(c) as u32).collect();
            let mut by_rank = BTreeMap::new();
            for r in ranks {
                *by_rank.entry(r).or_insert(0) += 1;
            }
            PurityLevel {
                m,
                cuts: cuts.len(),
                by_rank,
            }
        })
        .collect();
    Ok(PuritySpectrum { n, levels })
}

/// Occurrences of Schmidt rank `m, m−1, …, 1` over the cuts whose smaller
/// side has `m` qubits. Rank-zero cuts (disconnected graphs only) are kept
/// apart in `rank_zero`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankIndex {
    pub m: usize,
    pub counts: Vec<usize>,
    pub rank_zero: usize,
}

impl fmt::Display for RankIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(|c| c.to_string()).collect();
        write!(f, "RI_{} = ({})", self.m, parts.join(","))
    }
}

pub fn rank_index(g: &Graph, m: usize) -> Result<RankIndex, MetricsError> {
    let max = g.n() / 2;
    if m == 0 || m > max {
        return Err(MetricsError::CutSizeOutOfRange { m, max });
    }
    let mut counts = vec![0; m];
    let mut rank_zero = 0;
    for cut in level_cuts(g.n(), m) {
        match g.cut_rank(&cut) {
            0 => rank_zero += 1,
            r => counts[m - r] += 1,
        }
    }
    Ok(RankIndex {
        m,
        counts,
        rank_zero,
    })
}

/// Binomial coefficient, exact for the sizes used here.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Lower and upper bounds on CE of the full set of a connected `n`-qubit
/// graph state: `1/2 − 2^-n` (every cut has purity 1/2) and
/// `1 − 2^-n Σ_j C(n,j) 2^-min(j, n−j)` (every cut maximally mixed).
pub fn ce_bounds(n: usize) -> Result<(DyadicRational, DyadicRational), MetricsError> {
    if n == 0 {
        return Err(MetricsError::ZeroQubits);
    }
    if n > 64 {
        return Err(MetricsError::TooLarge(n));
    }
    let n32 = n as u32;
    let min = DyadicRational::new(1, 1) - DyadicRational::pow2_neg(n32);
    let total: DyadicRational = (0..=n)
        .map(|j| DyadicRational::new(binomial(n as u64, j as u64), j.min(n - j) as u32))
        .sum();
    let max = DyadicRational::ONE - total.halve(n32);
    Ok((min, max))
}

/// `1 − (3/4)^n`: CE of a pair-free `n`-qubit subset of the `2n`-qubit
/// snowflake, such as all core or all pendant qubits.
pub fn snowflake_subset_ce(n: usize) -> Result<DyadicRational, MetricsError> {
    if n == 0 {
        return Err(MetricsError::ZeroQubits);
    }
    if n > 63 {
        return Err(MetricsError::TooLarge(n));
    }
    let three_pow = 3u128.pow(n as u32);
    Ok(DyadicRational::ONE - DyadicRational::new(three_pow, 2 * n as u32))
}

/// CE of one qubit subset together with the context needed to judge it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CeReport {
    pub graph_id: String,
    pub subset: QubitSet,
    pub ce: DyadicRational,
    pub connected: bool,
    /// Present when `subset` is the full set.
    pub spectrum: Option<PuritySpectrum>,
    /// Bounds for the full set of `n` qubits.
    pub bounds: (DyadicRational, DyadicRational),
    pub achieves_min: bool,
    pub achieves_max: bool,
}

pub fn ce_report(
    g: &Graph,
    graph_id: impl Into<String>,
    subset: &QubitSet,
) -> Result<CeReport, MetricsError> {
    let connected = g.is_connected();
    if !connected {
        log::warn!("graph is disconnected; closed-form bounds do not apply");
    }
    let ce = concentratable_entanglement(g, subset)?;
    let bounds = ce_bounds(g.n())?;
    let spectrum = subset.is_full().then(|| purity_spectrum(g)).transpose()?;
    let full = subset.is_full();
    Ok(CeReport {
        graph_id: graph_id.into(),
        subset: *subset,
        ce,
        connected,
        achieves_min: full && ce == bounds.0,
        achieves_max: full && ce == bounds.1,
        spectrum,
        bounds,
    })
}
