//! Isomorph-free enumeration of connected graphs and the CE landscape over
//! them.
//!
//! Connected graphs on `n` vertices are grown from the connected graphs on
//! `n − 1` vertices: every connected graph has a vertex whose removal keeps
//! it connected, so adding one vertex with every non-empty neighborhood to
//! every class representative reaches every class. Candidates are
//! deduplicated by canonical key.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::canon::{canonical_labeling, CanonError, CanonicalKey, DEFAULT_CANON_BOUND};
use crate::dyadic::DyadicRational;
use crate::graph::{Family, Graph, GraphError, QubitSet};
use crate::graph6::{parse_graph6, write_graph6, Graph6Error};
use crate::metrics::{
    ce_bounds, concentratable_entanglement, purity_spectrum, snowflake_subset_ce, MetricsError,
};

/// Default enumeration bound; sizes 7 and 8 are the slower end.
pub const SURVEY_MAX_VERTICES: usize = DEFAULT_CANON_BOUND;

#[derive(Debug, Error)]
pub enum SurveyError {
    #[error("survey size {n} outside 1..={bound}")]
    SizeOutOfRange { n: usize, bound: usize },
    #[error(transparent)]
    Canon(#[from] CanonError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Graph6(#[from] Graph6Error),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// One representative per isomorphism class of connected graphs on `n`
/// vertices, in canonical form, ordered by canonical key.
pub fn enumerate_connected(n: usize) -> Result<Vec<Graph>, SurveyError> {
    enumerate_connected_bounded(n, SURVEY_MAX_VERTICES)
}

pub fn enumerate_connected_bounded(n: usize, bound: usize) -> Result<Vec<Graph>, SurveyError> {
    if n == 0 || n > bound {
        return Err(SurveyError::SizeOutOfRange { n, bound });
    }
    let mut layer = vec![Graph::empty(1)?];
    for size in 2..=n {
        layer = extend_layer(&layer, size, bound)?;
    }
    Ok(layer)
}

fn extend_layer(previous: &[Graph], size: usize, bound: usize) -> Result<Vec<Graph>, SurveyError> {
    let old = size - 1;
    let candidates: Vec<(usize, u64)> = (0..previous.len())
        .flat_map(|i| (1u64..1 << old).map(move |mask| (i, mask)))
        .collect();
    let keyed: Vec<(CanonicalKey, Graph)> = candidates
        .par_iter()
        .map(|&(i, mask)| {
            let base = &previous[i];
            let mut edges = base.edges();
            edges.extend(
                QubitSet::from_mask(old, mask)
                    .expect("mask")
                    .iter()
                    .map(|v| (v, old)),
            );
            let g = Graph::from_edges(size, &edges).expect("valid extension");
            let labeling = canonical_labeling(&g, bound)?;
            let rep = labeling.apply(&g);
            Ok((labeling.key, rep))
        })
        .collect::<Result<_, SurveyError>>()?;
    let unique: BTreeMap<CanonicalKey, Graph> = keyed.into_iter().collect();
    Ok(unique.into_values().collect())
}

/// CE of the full set for one isomorphism class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurveyRecord {
    pub graph6: String,
    pub n: usize,
    pub ce: DyadicRational,
    /// Distinct purity values over all proper non-empty cuts.
    pub distinct_purities: usize,
    pub achieves_min: bool,
    pub achieves_max: bool,
}

impl SurveyRecord {
    pub fn evaluate(g: &Graph) -> Result<Self, SurveyError> {
        let n = g.n();
        let ce = concentratable_entanglement(g, &QubitSet::full(n))?;
        let spectrum = purity_spectrum(g)?;
        let (min, max) = ce_bounds(n)?;
        Ok(Self {
            graph6: write_graph6(g)?,
            n,
            ce,
            distinct_purities: spectrum.distinct_purities(),
            achieves_min: ce == min,
            achieves_max: ce == max,
        })
    }

    pub fn graph(&self) -> Graph {
        parse_graph6(&self.graph6).expect("record holds a valid graph6 string")
    }

    pub fn row(&self) -> SurveyRow {
        SurveyRow {
            graph6: self.graph6.clone(),
            n: self.n,
            ce_num: self.ce.numerator(),
            ce_log2_den: self.ce.log2_denominator(),
            achieves_min: self.achieves_min,
            achieves_max: self.achieves_max,
            distinct_purities: self.distinct_purities,
        }
    }
}

/// Flat CSV / JSON-lines row for a survey record.
#[derive(Debug, Clone, Serialize)]
pub struct SurveyRow {
    pub graph6: String,
    pub n: usize,
    pub ce_num: u128,
    pub ce_log2_den: u32,
    pub achieves_min: bool,
    pub achieves_max: bool,
    pub distinct_purities: usize,
}

/// All classes of one size with their CE values.
#[derive(Debug, Clone)]
pub struct CeSurvey {
    pub n: usize,
    /// Sorted by `(CE, graph6)`.
    pub records: Vec<SurveyRecord>,
}

impl CeSurvey {
    pub fn distinct_values(&self) -> BTreeSet<DyadicRational> {
        self.records.iter().map(|r| r.ce).collect()
    }

    pub fn distinct_value_count(&self) -> usize {
        self.distinct_values().len()
    }

    /// Classes grouped by CE value.
    pub fn value_groups(&self) -> BTreeMap<DyadicRational, Vec<&SurveyRecord>> {
        let mut groups: BTreeMap<DyadicRational, Vec<&SurveyRecord>> = BTreeMap::new();
        for r in &self.records {
            groups.entry(r.ce).or_default().push(r);
        }
        groups
    }

    pub fn max_achievers(&self) -> impl Iterator<Item = &SurveyRecord> {
        self.records.iter().filter(|r| r.achieves_max)
    }

    pub fn min_achievers(&self) -> impl Iterator<Item = &SurveyRecord> {
        self.records.iter().filter(|r| r.achieves_min)
    }
}

pub fn ce_survey(n: usize) -> Result<CeSurvey, SurveyError> {
    let graphs = enumerate_connected(n)?;
    let mut records = graphs
        .par_iter()
        .map(SurveyRecord::evaluate)
        .collect::<Result<Vec<_>, _>>()?;
    records.sort_by(|a, b| a.ce.cmp(&b.ce).then_with(|| a.graph6.cmp(&b.graph6)));
    Ok(CeSurvey { n, records })
}

/// Classes whose every cut is maximally mixed, i.e. CE at the upper bound.
pub fn max_achievers(n: usize) -> Result<Vec<Graph>, SurveyError> {
    let graphs = enumerate_connected(n)?;
    graphs
        .into_iter()
        .filter_map(|g| match purity_spectrum(&g) {
            Ok(s) if s.is_maximal() => Some(Ok(g)),
            Ok(_) => None,
            Err(e) => Some(Err(e.into())),
        })
        .collect()
}

/// Survey rows sorted by `(n, CE, graph6)` written as CSV with a header.
pub fn write_survey_csv<W: Write>(surveys: &[CeSurvey], out: W) -> Result<(), SurveyError> {
    let mut rows: Vec<&SurveyRecord> = surveys.iter().flat_map(|s| &s.records).collect();
    rows.sort_by(|a, b| {
        a.n.cmp(&b.n)
            .then_with(|| a.ce.cmp(&b.ce))
            .then_with(|| a.graph6.cmp(&b.graph6))
    });
    let mut writer = csv::Writer::from_writer(out);
    for r in rows {
        writer.serialize(r.row())?;
    }
    writer.flush()?;
    Ok(())
}

/// CE of a core (or pendant) subset of a snowflake, with the closed form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnowflakeCore {
    pub core_ce: DyadicRational,
    pub pendant_ce: DyadicRational,
    pub closed_form: DyadicRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyRecord {
    pub kind: Family,
    pub size: usize,
    pub record: SurveyRecord,
    pub snowflake: Option<SnowflakeCore>,
}

impl FamilyRecord {
    pub fn row(&self) -> FamilyRow {
        let r = &self.record;
        FamilyRow {
            kind: self.kind.name(),
            size: self.size,
            graph6: r.graph6.clone(),
            n: r.n,
            ce_num: r.ce.numerator(),
            ce_log2_den: r.ce.log2_denominator(),
            achieves_min: r.achieves_min,
            achieves_max: r.achieves_max,
            distinct_purities: r.distinct_purities,
            core_ce_num: self.snowflake.as_ref().map(|s| s.core_ce.numerator()),
            core_ce_log2_den: self
                .snowflake
                .as_ref()
                .map(|s| s.core_ce.log2_denominator()),
            core_matches_closed_form: self
                .snowflake
                .as_ref()
                .map(|s| s.core_ce == s.closed_form && s.pendant_ce == s.closed_form),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyRow {
    pub kind: &'static str,
    pub size: usize,
    pub graph6: String,
    pub n: usize,
    pub ce_num: u128,
    pub ce_log2_den: u32,
    pub achieves_min: bool,
    pub achieves_max: bool,
    pub distinct_purities: usize,
    pub core_ce_num: Option<u128>,
    pub core_ce_log2_den: Option<u32>,
    pub core_matches_closed_form: Option<bool>,
}

/// CE of the full set for each member of a family over a size range.
/// Snowflakes also report the core and pendant subset CE.
pub fn family_sweep(
    kind: Family,
    sizes: RangeInclusive<usize>,
) -> Result<Vec<FamilyRecord>, SurveyError> {
    sizes
        .map(|size| {
            let g = Graph::family(kind, size)?;
            let record = SurveyRecord::evaluate(&g)?;
            let snowflake = if kind == Family::Snowflake {
                let core = QubitSet::from_mask(g.n(), (1u64 << size) - 1)?;
                Some(SnowflakeCore {
                    core_ce: concentratable_entanglement(&g, &core)?,
                    pendant_ce: concentratable_entanglement(&g, &core.complement())?,
                    closed_form: snowflake_subset_ce(size)?,
                })
            } else {
                None
            };
            Ok(FamilyRecord {
                kind,
                size,
                record,
                snowflake,
            })
        })
        .collect()
}

pub fn write_family_csv<W: Write>(records: &[FamilyRecord], out: W) -> Result<(), SurveyError> {
    let mut writer = csv::Writer::from_writer(out);
    for r in records {
        writer.serialize(r.row())?;
    }
    writer.flush()?;
    Ok(())
}
