//! Stabilizer tableaux of graph states and their Z-basis trace-out.
//!
//! A tableau holds one signed Pauli generator per qubit, kept in qubit order:
//! the generator stored for qubit `q` is `S_q` while `q` is live and `±Z_q`
//! once `q` has been measured. Tracing out a set `A` by Z measurements leaves
//! the generators of `G − A` on the remaining qubits `B`, with signs fixed by
//! the outcome bitstring. The Pauli parts do not depend on the outcome, so two
//! outcomes give the same generator set exactly when they give the same sign
//! vector, which is a linear function of the outcome (the support map
//! `z ↦ Γ[B,A] z`). The number of distinct sets is therefore `2^rank`.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::gf2::{Gf2Error, Gf2Vector};
use crate::graph::{Graph, GraphError, QubitSet};

/// Largest `|A|` for which [`count_distinct_sets`] enumerates outcomes.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StabilizerError {
    #[error("qubit {0} has already been measured")]
    AlreadyMeasured(usize),
    #[error("qubit {qubit} out of range for {n} qubits")]
    QubitOutOfRange { qubit: usize, n: usize },
    #[error("generator of qubit {0} anticommutes with Z on the measured qubit")]
    Anticommuting(usize),
    #[error("outcome support {actual} does not match traced set {expected}")]
    SupportMismatch {
        expected: QubitSet,
        actual: QubitSet,
    },
    #[error("outcome has {actual} bits for a support of {expected} qubits")]
    OutcomeLength { expected: usize, actual: usize },
    #[error("enumerating 2^{size} outcomes exceeds the limit 2^{limit}; use the rank formula")]
    EnumerationLimit { size: usize, limit: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
}

/// A Z-measurement outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Plus,
    Minus,
}

impl Outcome {
    /// Bit convention: `+1 ↦ 0`, `−1 ↦ 1`.
    pub fn from_bit(bit: bool) -> Self {
        if bit {
            Outcome::Minus
        } else {
            Outcome::Plus
        }
    }

    pub fn bit(self) -> bool {
        self == Outcome::Minus
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Plus => "+1",
            Outcome::Minus => "-1",
        })
    }
}

/// `±∏ X^{x_i} Z^{z_i}` on `n` qubits.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliGenerator {
    pub negative: bool,
    pub x: Gf2Vector,
    pub z: Gf2Vector,
}

impl PauliGenerator {
    pub fn identity(n: usize) -> Self {
        Self {
            negative: false,
            x: Gf2Vector::zeros(n),
            z: Gf2Vector::zeros(n),
        }
    }

    /// `±Z_q`.
    pub fn z_on(n: usize, q: usize, negative: bool) -> Self {
        Self {
            negative,
            x: Gf2Vector::zeros(n),
            z: Gf2Vector::unit(n, q),
        }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// Whether the two operators commute (symplectic product zero).
    pub fn commutes_with(&self, other: &Self) -> bool {
        let a = self.x.dot(&other.z).expect("equal qubit counts");
        let b = self.z.dot(&other.x).expect("equal qubit counts");
        a == b
    }

    /// Qubits on which the operator acts non-trivially.
    pub fn support(&self) -> Gf2Vector {
        let mut s = self.x.clone();
        for q in self.z.ones() {
            s.set(q, true);
        }
        s
    }

    /// The stacked `(x | z)` row.
    pub fn symplectic_row(&self) -> Gf2Vector {
        let n = self.n();
        let mut row = Gf2Vector::zeros(2 * n);
        for q in self.x.ones() {
            row.set(q, true);
        }
        for q in self.z.ones() {
            row.set(n + q, true);
        }
        row
    }
}

impl fmt::Display for PauliGenerator {
    /// Renders in qubit order with 1-indexed labels, e.g. `-Z_2 X_3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            f.write_str("-")?;
        }
        let mut first = true;
        for q in 0..self.n() {
            for (set, letter) in [(self.x.get(q), 'X'), (self.z.get(q), 'Z')] {
                if set {
                    if !first {
                        f.write_str(" ")?;
                    }
                    write!(f, "{letter}_{}", q + 1)?;
                    first = false;
                }
            }
        }
        if first {
            f.write_str("I")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliGenerator({self})")
    }
}

/// One generator per qubit in `qubits`, in ascending qubit order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StabilizerTableau {
    qubits: QubitSet,
    generators: Vec<PauliGenerator>,
}

impl StabilizerTableau {
    /// A tableau owning one generator per member of `qubits`, ascending.
    pub fn from_generators(
        qubits: QubitSet,
        generators: Vec<PauliGenerator>,
    ) -> Result<Self, StabilizerError> {
        if generators.len() != qubits.len() {
            return Err(StabilizerError::OutcomeLength {
                expected: qubits.len(),
                actual: generators.len(),
            });
        }
        if let Some(bad) = generators.iter().find(|g| g.n() != qubits.universe()) {
            return Err(StabilizerError::QubitOutOfRange {
                qubit: bad.n(),
                n: qubits.universe(),
            });
        }
        Ok(Self { qubits, generators })
    }

    pub fn n(&self) -> usize {
        self.qubits.universe()
    }

    /// The qubits that own a generator.
    pub fn qubits(&self) -> QubitSet {
        self.qubits
    }

    pub fn generators(&self) -> &[PauliGenerator] {
        &self.generators
    }

    /// `(qubit, generator)` pairs in qubit order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &PauliGenerator)> {
        self.qubits.iter().zip(&self.generators)
    }

    pub fn generator(&self, q: usize) -> Option<&PauliGenerator> {
        self.qubits.rank_of(q).map(|i| &self.generators[i])
    }

    fn generator_mut(&mut self, q: usize) -> Option<&mut PauliGenerator> {
        self.qubits.rank_of(q).map(|i| &mut self.generators[i])
    }

    /// Signs of the generators, in qubit order (`true` = negative).
    pub fn sign_vector(&self) -> Gf2Vector {
        let bits: Vec<bool> = self.generators.iter().map(|g| g.negative).collect();
        Gf2Vector::from_bools(&bits)
    }

    pub fn is_measured(&self, q: usize) -> bool {
        self.generator(q)
            .is_some_and(|g| g.x.is_zero() && g.z.count_ones() == 1 && g.z.get(q))
    }

    /// Every pair of generators commutes.
    pub fn is_commuting(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    /// The stacked symplectic rows are linearly independent.
    pub fn is_independent(&self) -> bool {
        let rows = self.generators.iter().map(|g| g.symplectic_row()).collect();
        let m = crate::gf2::Gf2Matrix::from_rows(2 * self.n(), rows).expect("uniform width");
        m.rank() == self.generators.len()
    }

    /// Z measurement of qubit `q` with the given outcome.
    ///
    /// The generator of `q` becomes `±Z_q`; every other generator with a
    /// `Z_q` factor is multiplied by `±Z_q`, which removes that factor and,
    /// for outcome `−1`, flips its sign.
    pub fn measure_z(&self, q: usize, outcome: Outcome) -> Result<Self, StabilizerError> {
        let n = self.n();
        if q >= n {
            return Err(StabilizerError::QubitOutOfRange { qubit: q, n });
        }
        match self.generator(q) {
            Some(g) if g.x.get(q) => {}
            _ => return Err(StabilizerError::AlreadyMeasured(q)),
        }
        let mut next = self.clone();
        for (other, g) in next.qubits.iter().zip(next.generators.iter_mut()) {
            if other == q {
                continue;
            }
            if g.x.get(q) {
                return Err(StabilizerError::Anticommuting(other));
            }
            if g.z.get(q) {
                g.z.set(q, false);
                g.negative ^= outcome.bit();
            }
        }
        *next.generator_mut(q).expect("checked above") = PauliGenerator::z_on(n, q, outcome.bit());
        Ok(next)
    }

    /// Drops the generators of every qubit outside `keep`.
    pub fn restricted_to(&self, keep: &QubitSet) -> Self {
        let (qubits, generators): (Vec<usize>, Vec<PauliGenerator>) = self
            .iter()
            .filter(|(q, _)| keep.contains(*q))
            .map(|(q, g)| (q, g.clone()))
            .unzip();
        Self {
            qubits: QubitSet::from_indices(self.n(), &qubits).expect("subset of tableau"),
            generators,
        }
    }
}

impl fmt::Display for StabilizerTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (q, g)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "S_{} = {g}", q + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for StabilizerTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("StabilizerTableau {")?;
        for (q, g) in self.iter() {
            write!(f, " {}: {g};", q + 1)?;
        }
        f.write_str(" }")
    }
}

/// A Z-outcome for every qubit of `support`; bit `i` belongs to the `i`-th
/// member in ascending order, `0` meaning `+1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OutcomeBitstring {
    support: QubitSet,
    bits: Gf2Vector,
}

impl OutcomeBitstring {
    pub fn new(support: QubitSet, bits: Gf2Vector) -> Result<Self, StabilizerError> {
        if bits.len() != support.len() {
            return Err(StabilizerError::OutcomeLength {
                expected: support.len(),
                actual: bits.len(),
            });
        }
        Ok(Self { support, bits })
    }

    pub fn zeros(support: QubitSet) -> Self {
        Self {
            bits: Gf2Vector::zeros(support.len()),
            support,
        }
    }

    /// The `index`-th outcome in listing order: the lowest-labelled qubit of
    /// the support is the most significant bit of `index`.
    pub fn from_index(support: QubitSet, index: u64) -> Self {
        let k = support.len();
        let bits: Vec<bool> = (0..k).map(|i| index >> (k - 1 - i) & 1 == 1).collect();
        Self {
            support,
            bits: Gf2Vector::from_bools(&bits),
        }
    }

    /// All `2^|support|` outcomes in listing order.
    pub fn all(support: QubitSet) -> impl Iterator<Item = OutcomeBitstring> {
        let count = 1u64 << support.len();
        (0..count).map(move |i| Self::from_index(support, i))
    }

    pub fn support(&self) -> QubitSet {
        self.support
    }

    pub fn bits(&self) -> &Gf2Vector {
        &self.bits
    }

    /// Outcomes paired with their qubits, ascending.
    pub fn outcomes(&self) -> impl Iterator<Item = (usize, Outcome)> + '_ {
        self.support
            .iter()
            .enumerate()
            .map(|(i, q)| (q, Outcome::from_bit(self.bits.get(i))))
    }

    pub fn xor(&self, other: &Self) -> Result<Self, StabilizerError> {
        if self.support != other.support {
            return Err(StabilizerError::SupportMismatch {
                expected: self.support,
                actual: other.support,
            });
        }
        Ok(Self {
            support: self.support,
            bits: self.bits.xor(&other.bits)?,
        })
    }
}

impl fmt::Display for OutcomeBitstring {
    /// Renders the measured generators, e.g. `{-Z_4, Z_6}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (q, o)) in self.outcomes().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            let sign = if o == Outcome::Minus { "-" } else { "" };
            write!(f, "{sign}Z_{}", q + 1)?;
        }
        f.write_str("}")
    }
}

/// The generators `S_a = X_a ∏_{b ∈ n(a)} Z_b` of the graph state.
pub fn graph_generators(g: &Graph) -> StabilizerTableau {
    let n = g.n();
    let generators = (0..n)
        .map(|a| PauliGenerator {
            negative: false,
            x: Gf2Vector::unit(n, a),
            z: Gf2Vector::from_mask(n, g.row_mask(a)),
        })
        .collect();
    StabilizerTableau {
        qubits: g.vertices(),
        generators,
    }
}

fn check_support(
    g: &Graph,
    traced: &QubitSet,
    z: &OutcomeBitstring,
) -> Result<(), StabilizerError> {
    if traced.universe() != g.n() {
        return Err(GraphError::UniverseMismatch {
            expected: g.n(),
            actual: traced.universe(),
        }
        .into());
    }
    if z.support != *traced {
        return Err(StabilizerError::SupportMismatch {
            expected: *traced,
            actual: z.support,
        });
    }
    Ok(())
}

/// Z-support of `U(z)` on the kept qubits `B = complement(A)`, indexed in
/// ascending order of `B`: bit `b` is the parity of `z` over `n(b) ∩ A`.
pub fn unitary_support(
    g: &Graph,
    traced: &QubitSet,
    z: &OutcomeBitstring,
) -> Result<Gf2Vector, StabilizerError> {
    check_support(g, traced, z)?;
    let kept = traced.complement();
    let map = g.biadjacency(&kept, traced)?;
    Ok(map.mat_vec(&z.bits)?)
}

/// The generator set on `B = complement(A)` left after measuring `A` with
/// outcome `z`: the generators of `G − A` with the sign of `S'_b` flipped
/// whenever `b` is in the support of `U(z)`.
pub fn traced_generator_set(
    g: &Graph,
    traced: &QubitSet,
    z: &OutcomeBitstring,
) -> Result<StabilizerTableau, StabilizerError> {
    let signs = unitary_support(g, traced, z)?;
    let kept = traced.complement();
    let pruned = graph_generators(&g.without_edges_to(traced)).restricted_to(&kept);
    let generators = pruned
        .generators
        .into_iter()
        .enumerate()
        .map(|(i, mut gen)| {
            gen.negative = signs.get(i);
            gen
        })
        .collect();
    Ok(StabilizerTableau {
        qubits: kept,
        generators,
    })
}

/// Measures every qubit of `A` in turn (in the given order) and returns the
/// full tableau, including the `±Z_a` generators.
pub fn measure_all(
    g: &Graph,
    order: &[usize],
    z: &OutcomeBitstring,
) -> Result<StabilizerTableau, StabilizerError> {
    let mut t = graph_generators(g);
    for &q in order {
        let i = z
            .support
            .rank_of(q)
            .ok_or(StabilizerError::QubitOutOfRange { qubit: q, n: g.n() })?;
        t = t.measure_z(q, Outcome::from_bit(z.bits.get(i)))?;
    }
    Ok(t)
}

/// Groups all outcomes on `A` by the support of `U(z)`, returning each
/// distinct support with its multiplicity, in order of first appearance.
pub fn distinct_supports(
    g: &Graph,
    traced: &QubitSet,
    limit: usize,
) -> Result<Vec<(Gf2Vector, OutcomeBitstring, usize)>, StabilizerError> {
    if traced.len() > limit {
        return Err(StabilizerError::EnumerationLimit {
            size: traced.len(),
            limit,
        });
    }
    let map = g.biadjacency(&traced.complement(), traced)?;
    let mut index: HashMap<Gf2Vector, usize> = HashMap::new();
    let mut groups: Vec<(Gf2Vector, OutcomeBitstring, usize)> = Vec::new();
    for z in OutcomeBitstring::all(*traced) {
        let support = map.mat_vec(&z.bits)?;
        match index.get(&support) {
            Some(&i) => groups[i].2 += 1,
            None => {
                index.insert(support.clone(), groups.len());
                groups.push((support, z, 1));
            }
        }
    }
    Ok(groups)
}

/// The distinct generator sets left after tracing out `A`, each paired with
/// the first outcome producing it and its multiplicity.
pub fn distinct_generator_sets(
    g: &Graph,
    traced: &QubitSet,
) -> Result<Vec<(OutcomeBitstring, StabilizerTableau, usize)>, StabilizerError> {
    distinct_supports(g, traced, DEFAULT_ENUMERATION_LIMIT)?
        .into_iter()
        .map(|(_, z, count)| Ok((z.clone(), traced_generator_set(g, traced, &z)?, count)))
        .collect()
}

/// `k`: the number of distinct generator sets over all `2^|A|` outcomes,
/// found by enumeration.
pub fn count_distinct_sets(g: &Graph, traced: &QubitSet) -> Result<u64, StabilizerError> {
    count_distinct_sets_with_limit(g, traced, DEFAULT_ENUMERATION_LIMIT)
}

pub fn count_distinct_sets_with_limit(
    g: &Graph,
    traced: &QubitSet,
    limit: usize,
) -> Result<u64, StabilizerError> {
    Ok(distinct_supports(g, traced, limit)?.len() as u64)
}

/// `k = 2^rank Γ[A, B]`: outcomes in the kernel of the support map give the
/// identity unitary, so `2^|A|` outcomes collapse onto `2^(|A| − kernel)`
/// distinct sets.
pub fn count_distinct_sets_fast(g: &Graph, traced: &QubitSet) -> Result<u64, StabilizerError> {
    let rank = g.biadjacency(traced, &traced.complement())?.rank();
    Ok(1u64 << rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::branched_path;
    use crate::graph::Family;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn set(n: usize, labels: &[usize]) -> QubitSet {
        QubitSet::from_labels(n, labels).unwrap()
    }

    fn rendered(t: &StabilizerTableau) -> Vec<String> {
        t.generators().iter().map(|g| g.to_string()).collect()
    }

    fn outcome(support: QubitSet, bits: &str) -> OutcomeBitstring {
        OutcomeBitstring::new(support, Gf2Vector::parse_bits(bits).unwrap()).unwrap()
    }

    #[test]
    fn generators_of_branched_path() {
        let t = graph_generators(&branched_path());
        assert_eq!(
            rendered(&t),
            [
                "X_1 Z_2",
                "Z_1 X_2 Z_3",
                "Z_2 X_3 Z_4 Z_6",
                "Z_3 X_4 Z_5",
                "Z_4 X_5",
                "Z_3 X_6"
            ]
        );
        let s3 = t.generator(2).unwrap();
        assert_eq!(s3.x.ones().collect::<Vec<_>>(), vec![2]);
        assert_eq!(s3.z.ones().collect::<Vec<_>>(), vec![1, 3, 5]);
        assert!(t.is_commuting());
        assert!(t.is_independent());
    }

    #[test]
    fn generators_of_small_graphs() {
        let k2 = graph_generators(&Graph::family(Family::Complete, 2).unwrap());
        assert_eq!(rendered(&k2), ["X_1 Z_2", "Z_1 X_2"]);
        let single = graph_generators(&Graph::empty(1).unwrap());
        assert_eq!(rendered(&single), ["X_1"]);
    }

    #[test]
    fn measure_branched_path_qubits_4_then_6() {
        let t = graph_generators(&branched_path())
            .measure_z(3, Outcome::Minus)
            .unwrap()
            .measure_z(5, Outcome::Plus)
            .unwrap();
        assert_eq!(
            rendered(&t),
            ["X_1 Z_2", "Z_1 X_2 Z_3", "-Z_2 X_3", "-Z_4", "-X_5", "Z_6"]
        );
        assert!(t.is_commuting());
        assert!(t.is_independent());
        assert!(t.is_measured(3) && t.is_measured(5) && !t.is_measured(2));
    }

    #[test]
    fn measure_isolated_qubit_changes_only_itself() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        let before = graph_generators(&g);
        let after = before.measure_z(2, Outcome::Plus).unwrap();
        assert_eq!(&before.generators()[..2], &after.generators()[..2]);
        assert_eq!(after.generator(2).unwrap().to_string(), "Z_3");
    }

    #[test]
    fn measure_k2_minus() {
        let k2 = graph_generators(&Graph::family(Family::Complete, 2).unwrap());
        let t = k2.measure_z(0, Outcome::Minus).unwrap();
        assert_eq!(rendered(&t), ["-Z_1", "-X_2"]);
    }

    #[test]
    fn measure_errors() {
        let t = graph_generators(&branched_path())
            .measure_z(0, Outcome::Plus)
            .unwrap();
        assert_eq!(
            t.measure_z(0, Outcome::Minus),
            Err(StabilizerError::AlreadyMeasured(0))
        );
        assert_eq!(
            t.measure_z(9, Outcome::Plus),
            Err(StabilizerError::QubitOutOfRange { qubit: 9, n: 6 })
        );
    }

    #[test]
    fn unitary_support_examples() {
        let g = branched_path();
        let a = set(6, &[4, 6]);
        let zero = OutcomeBitstring::zeros(a);
        assert!(unitary_support(&g, &a, &zero).unwrap().is_zero());
        // z_4 = 1, z_6 = 0 flips S'_3 and S'_5; B = {1,2,3,5}
        let s = unitary_support(&g, &a, &outcome(a, "10")).unwrap();
        assert_eq!(s, Gf2Vector::parse_bits("0011").unwrap());
        let k2 = Graph::family(Family::Complete, 2).unwrap();
        let a1 = set(2, &[1]);
        assert_eq!(
            unitary_support(&k2, &a1, &outcome(a1, "1")).unwrap(),
            Gf2Vector::parse_bits("1").unwrap()
        );
        let wrong = OutcomeBitstring::zeros(set(6, &[4]));
        assert!(matches!(
            unitary_support(&g, &a, &wrong),
            Err(StabilizerError::SupportMismatch { .. })
        ));
    }

    #[test]
    fn traced_sets_of_branched_path() {
        let g = branched_path();
        let a = set(6, &[4, 6]);
        let sets: Vec<Vec<String>> = OutcomeBitstring::all(a)
            .map(|z| rendered(&traced_generator_set(&g, &a, &z).unwrap()))
            .collect();
        assert_eq!(
            sets,
            [
                vec!["X_1 Z_2", "Z_1 X_2 Z_3", "Z_2 X_3", "X_5"],
                vec!["X_1 Z_2", "Z_1 X_2 Z_3", "-Z_2 X_3", "X_5"],
                vec!["X_1 Z_2", "Z_1 X_2 Z_3", "-Z_2 X_3", "-X_5"],
                vec!["X_1 Z_2", "Z_1 X_2 Z_3", "Z_2 X_3", "-X_5"],
            ]
        );
        let labels: Vec<String> = OutcomeBitstring::all(a).map(|z| z.to_string()).collect();
        assert_eq!(
            labels,
            ["{Z_4, Z_6}", "{Z_4, -Z_6}", "{-Z_4, Z_6}", "{-Z_4, -Z_6}"]
        );
    }

    #[test]
    fn traced_set_of_empty_trace_is_graph_generators() {
        let g = branched_path();
        let empty = QubitSet::empty(6);
        let t = traced_generator_set(&g, &empty, &OutcomeBitstring::zeros(empty)).unwrap();
        assert_eq!(t, graph_generators(&g));
    }

    #[test]
    fn snowflake_pair_gives_two_sets() {
        for n in 2..=6 {
            let g = Graph::family(Family::Snowflake, n).unwrap();
            let pair = QubitSet::from_indices(2 * n, &[0, n]).unwrap();
            let at = |bits| traced_generator_set(&g, &pair, &outcome(pair, bits)).unwrap();
            assert_ne!(at("11"), at("00"));
            assert_eq!(at("11"), at("10"));
            assert_eq!(count_distinct_sets(&g, &pair).unwrap(), 2);
        }
    }

    #[test]
    fn distinct_set_counts_from_examples() {
        let g = branched_path();
        assert_eq!(count_distinct_sets(&g, &set(6, &[4, 6])).unwrap(), 4);
        assert_eq!(count_distinct_sets(&g, &set(6, &[3, 4, 6])).unwrap(), 4);
        assert_eq!(count_distinct_sets_fast(&g, &set(6, &[4, 6])).unwrap(), 4);
        assert_eq!(
            count_distinct_sets_fast(&g, &QubitSet::empty(6)).unwrap(),
            1
        );
        for a in 0..6 {
            let single = QubitSet::from_indices(6, &[a]).unwrap();
            assert_eq!(count_distinct_sets(&g, &single).unwrap(), 2);
        }
        for n in 2..=10 {
            let star = Graph::family(Family::Star, n).unwrap();
            let leaves = QubitSet::from_indices(n, &[0]).unwrap().complement();
            assert_eq!(count_distinct_sets_fast(&star, &leaves).unwrap(), 2);
        }
    }

    #[test]
    fn branched_path_three_qubit_trace_lists_four_sets() {
        let sets = distinct_generator_sets(&branched_path(), &set(6, &[3, 4, 6])).unwrap();
        let shown: Vec<(String, Vec<String>, usize)> = sets
            .iter()
            .map(|(z, t, c)| (z.to_string(), rendered(t), *c))
            .collect();
        assert_eq!(
            shown,
            [
                (
                    "{Z_3, Z_4, Z_6}".into(),
                    vec!["X_1 Z_2".into(), "Z_1 X_2".into(), "X_5".into()],
                    2
                ),
                (
                    "{Z_3, -Z_4, Z_6}".into(),
                    vec!["X_1 Z_2".into(), "Z_1 X_2".into(), "-X_5".into()],
                    2
                ),
                (
                    "{-Z_3, Z_4, Z_6}".into(),
                    vec!["X_1 Z_2".into(), "-Z_1 X_2".into(), "X_5".into()],
                    2
                ),
                (
                    "{-Z_3, -Z_4, Z_6}".into(),
                    vec!["X_1 Z_2".into(), "-Z_1 X_2".into(), "-X_5".into()],
                    2
                ),
            ]
        );
    }

    #[test]
    fn enumeration_limit() {
        let g = Graph::family(Family::Star, 8).unwrap();
        let a = QubitSet::from_indices(8, &[1, 2, 3, 4]).unwrap();
        assert!(matches!(
            count_distinct_sets_with_limit(&g, &a, 3),
            Err(StabilizerError::EnumerationLimit { size: 4, limit: 3 })
        ));
    }

    #[test]
    fn fold_order_independence_and_agreement() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..100 {
            let n = rng.gen_range(2..=10);
            let g = Graph::random(n, &mut rng);
            let a = QubitSet::from_mask(n, rng.gen::<u64>() & ((1 << n) - 1)).unwrap();
            let z = OutcomeBitstring::from_index(a, rng.gen::<u64>() & ((1 << a.len()) - 1));
            let mut order: Vec<usize> = a.iter().collect();
            let reference = measure_all(&g, &order, &z).unwrap();
            assert!(reference.is_commuting());
            assert!(reference.is_independent());
            order.shuffle(&mut rng);
            assert_eq!(measure_all(&g, &order, &z).unwrap(), reference);
            let direct = traced_generator_set(&g, &a, &z).unwrap();
            assert_eq!(reference.restricted_to(&a.complement()), direct);
            for (q, _) in reference.iter().filter(|(q, _)| a.contains(*q)) {
                assert!(reference.is_measured(q));
            }
        }
    }

    #[test]
    fn support_map_is_linear() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let n = rng.gen_range(2..=10);
            let g = Graph::random(n, &mut rng);
            let mut a = QubitSet::empty(n);
            for v in (0..n)
                .collect::<Vec<_>>()
                .choose_multiple(&mut rng, n.min(6))
            {
                if rng.gen_bool(0.7) {
                    a.insert(*v);
                }
            }
            let outcomes: Vec<_> = OutcomeBitstring::all(a).collect();
            for z in &outcomes {
                for w in &outcomes {
                    let lhs = unitary_support(&g, &a, &z.xor(w).unwrap()).unwrap();
                    let rhs = unitary_support(&g, &a, z)
                        .unwrap()
                        .xor(&unitary_support(&g, &a, w).unwrap())
                        .unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn multiplicities_are_uniform() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..200 {
            let n = rng.gen_range(2..=9);
            let g = Graph::random_connected(n, 0.3, &mut rng);
            let a = QubitSet::from_mask(n, rng.gen::<u64>() & ((1 << n) - 1)).unwrap();
            let groups = distinct_supports(&g, &a, 20).unwrap();
            let k = groups.len() as u64;
            assert!(k.is_power_of_two());
            assert_eq!((1u64 << a.len()) % k, 0);
            for (_, _, count) in &groups {
                assert_eq!(*count as u64, (1u64 << a.len()) / k);
            }
            assert_eq!(k, count_distinct_sets_fast(&g, &a).unwrap());
        }
    }
}
