//! Canonical forms for isomorphism rejection on small graphs.
//!
//! The key is the lexicographically smallest upper-triangle encoding (graph6
//! bit order) over all vertex orderings that list vertices by their refined
//! color. Colors come from iterated neighborhood refinement seeded with
//! degrees; they are assigned by sorting label-free signatures, so isomorphic
//! graphs receive the same cells and therefore the same minimum.

use std::cmp::Ordering;

use thiserror::Error;

use crate::graph::Graph;

/// Default vertex bound for [`canonical_form`].
pub const DEFAULT_CANON_BOUND: usize = 8;
/// Hard limit imposed by the 128-bit encoding.
pub const CANON_HARD_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonError {
    #[error("graph has {n} vertices, above the canonical-form bound {bound}")]
    TooLarge { n: usize, bound: usize },
}

/// Canonical byte key: vertex count followed by the minimal encoding.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

/// A canonical key together with the relabelling that realises it.
#[derive(Debug, Clone)]
pub struct CanonicalLabeling {
    pub key: CanonicalKey,
    /// `position[v]` is the canonical index of vertex `v`.
    pub position: Vec<usize>,
}

impl CanonicalLabeling {
    /// The representative graph whose encoding is the key.
    pub fn apply(&self, g: &Graph) -> Graph {
        g.permuted(&self.position)
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalKey, CanonError> {
    canonical_form_bounded(g, DEFAULT_CANON_BOUND)
}

pub fn canonical_form_bounded(g: &Graph, bound: usize) -> Result<CanonicalKey, CanonError> {
    canonical_labeling(g, bound).map(|l| l.key)
}

pub fn canonical_labeling(g: &Graph, bound: usize) -> Result<CanonicalLabeling, CanonError> {
    let n = g.n();
    let bound = bound.min(CANON_HARD_LIMIT);
    if n > bound {
        return Err(CanonError::TooLarge { n, bound });
    }
    let colors = refined_colors(g);
    let mut slots: Vec<u32> = colors.clone();
    slots.sort_unstable();

    let mut search = Search {
        g,
        colors: &colors,
        slots: &slots,
        total_bits: (n * n.saturating_sub(1) / 2) as u32,
        order: Vec::with_capacity(n),
        used: 0,
        best: None,
    };
    search.descend(0);
    let (code, order) = search.best.unwrap_or((0, Vec::new()));

    let mut position = vec![0; n];
    for (pos, &v) in order.iter().enumerate() {
        position[v] = pos;
    }
    let code_bytes = (search.total_bits as usize).div_ceil(8);
    let mut key = Vec::with_capacity(1 + code_bytes);
    key.push(n as u8);
    let aligned = if search.total_bits == 0 {
        0
    } else {
        code << (128 - search.total_bits)
    };
    key.extend_from_slice(&aligned.to_be_bytes()[..code_bytes]);
    Ok(CanonicalLabeling {
        key: CanonicalKey(key),
        position,
    })
}

/// Stable vertex colors: degree, refined by the multiset of neighbor colors
/// until the partition stops splitting.
fn refined_colors(g: &Graph) -> Vec<u32> {
    let n = g.n();
    let mut colors: Vec<u32> = (0..n).map(|v| g.degree(v) as u32).collect();
    let mut classes = count_classes(&colors);
    loop {
        let signatures: Vec<(u32, Vec<u32>)> = (0..n)
            .map(|v| {
                let mut around: Vec<u32> = (0..n)
                    .filter(|&u| g.has_edge(u, v))
                    .map(|u| colors[u])
                    .collect();
                around.sort_unstable();
                (colors[v], around)
            })
            .collect();
        let mut distinct = signatures.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<u32> = signatures
            .iter()
            .map(|s| distinct.binary_search(s).expect("signature present") as u32)
            .collect();
        let next_classes = distinct.len();
        colors = next;
        if next_classes == classes {
            return colors;
        }
        classes = next_classes;
    }
}

fn count_classes(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

struct Search<'a> {
    g: &'a Graph,
    colors: &'a [u32],
    slots: &'a [u32],
    total_bits: u32,
    order: Vec<usize>,
    used: u64,
    best: Option<(u128, Vec<usize>)>,
}

impl Search<'_> {
    fn descend(&mut self, code: u128) {
        let depth = self.order.len();
        if depth == self.slots.len() {
            if self.best.as_ref().is_none_or(|(b, _)| code < *b) {
                self.best = Some((code, self.order.clone()));
            }
            return;
        }
        let want = self.slots[depth];
        for v in 0..self.slots.len() {
            if self.used >> v & 1 == 1 || self.colors[v] != want {
                continue;
            }
            let mut column = 0u128;
            for &u in &self.order {
                column = column << 1 | self.g.has_edge(u, v) as u128;
            }
            let next = code << depth | column;
            let len = (depth * (depth + 1) / 2) as u32;
            if let Some((best, _)) = &self.best {
                let prefix = if len == 0 {
                    0
                } else {
                    best >> (self.total_bits - len)
                };
                if next.cmp(&prefix) == Ordering::Greater {
                    continue;
                }
            }
            self.order.push(v);
            self.used |= 1 << v;
            self.descend(next);
            self.used &= !(1 << v);
            self.order.pop();
        }
    }
}
