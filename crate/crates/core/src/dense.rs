//! Brute-force state-vector reference for graph states.
//!
//! Index convention: qubit 0 (label 1) is the most significant bit of a
//! basis-state index, qubit `n − 1` the least significant.

use num_complex::Complex64;
use thiserror::Error;

use crate::graph::{Graph, QubitSet};
use crate::stabilizer::{
    graph_generators, unitary_support, Outcome, OutcomeBitstring, PauliGenerator, StabilizerError,
    StabilizerTableau,
};

/// Largest graph the oracle will expand into a state vector.
pub const DENSE_MAX_QUBITS: usize = 14;

const EIGEN_TOLERANCE: f64 = 1e-12;
const STATE_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{n} qubits exceeds the dense limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("projection onto the requested outcome has zero probability")]
    ZeroProbability,
    #[error(transparent)]
    Stabilizer(#[from] StabilizerError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn from_amplitudes(n: usize, amplitudes: Vec<Complex64>) -> Self {
        assert_eq!(amplitudes.len(), 1 << n, "amplitude count");
        Self { n, amplitudes }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    fn bit(&self, q: usize) -> usize {
        1 << (self.n - 1 - q)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn inner(&self, other: &Self) -> Complex64 {
        assert_eq!(self.n, other.n, "qubit count");
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Equal up to a global phase.
    pub fn same_ray(&self, other: &Self) -> bool {
        (self.inner(other).norm() - 1.0).abs() < STATE_TOLERANCE
    }

    pub fn apply_z(&mut self, q: usize) {
        let bit = self.bit(q);
        for (i, a) in self.amplitudes.iter_mut().enumerate() {
            if i & bit != 0 {
                *a = -*a;
            }
        }
    }

    pub fn apply_x(&mut self, q: usize) {
        let bit = self.bit(q);
        for i in 0..self.amplitudes.len() {
            if i & bit == 0 {
                self.amplitudes.swap(i, i | bit);
            }
        }
    }

    pub fn apply_cz(&mut self, p: usize, q: usize) {
        let mask = self.bit(p) | self.bit(q);
        for (i, a) in self.amplitudes.iter_mut().enumerate() {
            if i & mask == mask {
                *a = -*a;
            }
        }
    }

    /// Applies `±∏ X^{x_q} Z^{z_q}` (on each qubit Z acts first).
    pub fn apply_pauli(&mut self, p: &PauliGenerator) {
        assert_eq!(p.n(), self.n, "qubit count");
        for q in p.z.ones() {
            self.apply_z(q);
        }
        for q in p.x.ones() {
            self.apply_x(q);
        }
        if p.negative {
            self.amplitudes.iter_mut().for_each(|a| *a = -*a);
        }
    }

    /// Projects `qubits` onto the computational basis values in `outcome`
    /// (`+1 ↦ |0⟩`, `−1 ↦ |1⟩`), renormalizes, and drops those qubits.
    pub fn project_out(&self, outcome: &OutcomeBitstring) -> Result<StateVector, OracleError> {
        let support = outcome.support();
        let mut fixed_mask = 0usize;
        let mut fixed_value = 0usize;
        for (q, o) in outcome.outcomes() {
            fixed_mask |= self.bit(q);
            if o == Outcome::Minus {
                fixed_value |= self.bit(q);
            }
        }
        let kept: Vec<usize> = support.complement().iter().collect();
        let m = kept.len();
        let mut out = vec![Complex64::new(0.0, 0.0); 1 << m];
        for (j, slot) in out.iter_mut().enumerate() {
            let mut index = fixed_value;
            for (pos, &q) in kept.iter().enumerate() {
                if j >> (m - 1 - pos) & 1 == 1 {
                    index |= self.bit(q);
                }
            }
            debug_assert_eq!(index & fixed_mask, fixed_value);
            *slot = self.amplitudes[index];
        }
        let norm: f64 = out.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-300 {
            return Err(OracleError::ZeroProbability);
        }
        out.iter_mut().for_each(|a| *a /= norm);
        Ok(StateVector::from_amplitudes(m, out))
    }
}

/// `|G⟩`: CZ across every edge of `|+⟩^⊗n`.
pub fn build_state(g: &Graph) -> Result<StateVector, OracleError> {
    let n = g.n();
    if n > DENSE_MAX_QUBITS {
        return Err(OracleError::TooLarge {
            n,
            limit: DENSE_MAX_QUBITS,
        });
    }
    let amp = Complex64::new((0.5f64).powf(n as f64 / 2.0), 0.0);
    let mut psi = StateVector::from_amplitudes(n, vec![amp; 1 << n]);
    for (u, v) in g.edges() {
        psi.apply_cz(u, v);
    }
    Ok(psi)
}

/// Reduced density matrix on `kept`, row-major, `2^|B| × 2^|B|`, indexed
/// with the lowest kept qubit as the most significant bit.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    pub dim: usize,
    pub data: Vec<Complex64>,
}

impl DensityMatrix {
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    pub fn purity(&self) -> f64 {
        self.data.iter().map(|e| e.norm_sqr()).sum()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// `ρ_B = Tr_A |ψ⟩⟨ψ|` by explicit summation over the traced qubits.
pub fn reduced_density_matrix(psi: &StateVector, kept: &QubitSet) -> DensityMatrix {
    let kept_q: Vec<usize> = kept.iter().collect();
    let traced_q: Vec<usize> = kept.complement().iter().collect();
    let (kb, tb) = (kept_q.len(), traced_q.len());
    let compose = |bits: usize, qubits: &[usize]| -> usize {
        let len = qubits.len();
        qubits
            .iter()
            .enumerate()
            .filter(|(pos, _)| bits >> (len - 1 - pos) & 1 == 1)
            .fold(0, |acc, (_, &q)| acc | psi.bit(q))
    };
    let kept_index: Vec<usize> = (0..1 << kb).map(|i| compose(i, &kept_q)).collect();
    let traced_index: Vec<usize> = (0..1 << tb).map(|i| compose(i, &traced_q)).collect();
    let dim = 1 << kb;
    let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            data[i * dim + j] = traced_index
                .iter()
                .map(|&t| {
                    psi.amplitudes[kept_index[i] | t] * psi.amplitudes[kept_index[j] | t].conj()
                })
                .sum();
        }
    }
    DensityMatrix { dim, data }
}

/// `Tr ρ_B²` from the explicit reduced density matrix.
pub fn dense_purity(psi: &StateVector, kept: &QubitSet) -> f64 {
    reduced_density_matrix(psi, kept).purity()
}

/// Whether every generator of `tableau` fixes `psi` (and, for up to six
/// generators, every product of them).
pub fn stabilizes(psi: &StateVector, tableau: &StabilizerTableau) -> bool {
    let gens = tableau.generators();
    let fixes = |word: &[&PauliGenerator]| {
        let mut phi = psi.clone();
        for p in word.iter().rev() {
            phi.apply_pauli(p);
        }
        phi.amplitudes
            .iter()
            .zip(&psi.amplitudes)
            .all(|(a, b)| (a - b).norm() < EIGEN_TOLERANCE)
    };
    if !gens.iter().all(|g| fixes(&[g])) {
        return false;
    }
    if gens.len() <= 6 {
        for mask in 1u32..1 << gens.len() {
            let word: Vec<&PauliGenerator> = (0..gens.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| &gens[i])
                .collect();
            if !fixes(&word) {
                return false;
            }
        }
    }
    true
}

/// `S|G⟩ = |G⟩` for the graph generators of `g`.
pub fn check_stabilizer(g: &Graph) -> Result<bool, OracleError> {
    Ok(stabilizes(&build_state(g)?, &graph_generators(g)))
}

/// Applies `∏_{b ∈ support} Z_b` to a state on the qubits of `kept`, where
/// `support` is indexed in ascending order of `kept`.
fn apply_support(psi: &mut StateVector, support: impl Iterator<Item = usize>) {
    for pos in support {
        psi.apply_z(pos);
    }
}

/// `U(z)|G − A⟩` on the kept qubits, with `U(z) = ∏_{a ∈ A} (∏_{b ∈ n(a) ∩ B} Z_b)^{z_a}`
/// applied factor by factor.
pub fn corrected_state(
    g: &Graph,
    traced: &QubitSet,
    z: &OutcomeBitstring,
) -> Result<StateVector, OracleError> {
    let kept = traced.complement();
    let mut psi = build_state(&g.induced(&kept))?;
    for (a, o) in z.outcomes() {
        if o == Outcome::Minus {
            let targets = g.neighborhood(a).map_err(StabilizerError::from)?;
            let local = targets
                .intersection(&kept)
                .iter()
                .map(|b| kept.rank_of(b).expect("kept qubit"))
                .collect::<Vec<_>>();
            apply_support(&mut psi, local.into_iter());
        }
    }
    Ok(psi)
}

/// Measuring qubit `a` of `|G⟩` in Z with the given outcome and discarding
/// it leaves `U_±|G − {a}⟩` (`U_+ = I`, `U_− = ∏_{b ∈ n(a)} Z_b`), and the
/// measured tableau stabilizes the projected state.
pub fn check_measurement_rule(g: &Graph, a: usize, outcome: Outcome) -> Result<bool, OracleError> {
    if g.n() > 12 {
        return Err(OracleError::TooLarge {
            n: g.n(),
            limit: 12,
        });
    }
    let psi = build_state(g)?;
    let single = QubitSet::from_indices(g.n(), &[a]).map_err(StabilizerError::from)?;
    let z = OutcomeBitstring::from_index(single, outcome.bit() as u64);
    let projected = psi.project_out(&z)?;

    let kept = single.complement();
    let mut expected = build_state(&g.induced(&kept))?;
    if outcome == Outcome::Minus {
        for b in g.neighborhood(a).map_err(StabilizerError::from)?.iter() {
            expected.apply_z(kept.rank_of(b).expect("neighbor is kept"));
        }
    }
    if !projected.same_ray(&expected) {
        return Ok(false);
    }

    // full post-measurement state, qubit a left in |0⟩ or |1⟩
    let mut post = psi.clone();
    let bit = post.bit(a);
    for (i, amp) in post.amplitudes.iter_mut().enumerate() {
        if (i & bit != 0) != outcome.bit() {
            *amp = Complex64::new(0.0, 0.0);
        }
    }
    let norm = post.norm_sqr().sqrt();
    post.amplitudes.iter_mut().for_each(|x| *x /= norm);
    let tableau = graph_generators(g).measure_z(a, outcome)?;
    Ok(stabilizes(&post, &tableau))
}

/// For every pair of outcomes on `traced`, checks the corrected states:
/// equal supports give equal states, different supports orthogonal ones.
pub fn check_outcome_orthogonality(g: &Graph, traced: &QubitSet) -> Result<bool, OracleError> {
    if traced.len() > 8 || g.n() > 12 {
        return Err(OracleError::TooLarge {
            n: g.n(),
            limit: 12,
        });
    }
    let outcomes: Vec<OutcomeBitstring> = OutcomeBitstring::all(*traced).collect();
    let mut entries = Vec::with_capacity(outcomes.len());
    for z in &outcomes {
        entries.push((
            unitary_support(g, traced, z)?,
            corrected_state(g, traced, z)?,
        ));
    }
    for (i, (si, psi)) in entries.iter().enumerate() {
        for (sj, phi) in &entries[i..] {
            let overlap = psi.inner(phi).norm();
            let ok = if si == sj {
                (overlap - 1.0).abs() < STATE_TOLERANCE
            } else {
                overlap < STATE_TOLERANCE
            };
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Post-measurement states of `B` obtained by projecting `|G⟩` onto every
/// outcome on `A`, grouped up to global phase: returns each class size.
pub fn outcome_state_classes(g: &Graph, traced: &QubitSet) -> Result<Vec<usize>, OracleError> {
    let psi = build_state(g)?;
    let mut classes: Vec<(StateVector, usize)> = Vec::new();
    for z in OutcomeBitstring::all(*traced) {
        let state = psi.project_out(&z)?;
        match classes.iter_mut().find(|(rep, _)| rep.same_ray(&state)) {
            Some((_, count)) => *count += 1,
            None => classes.push((state, 1)),
        }
    }
    Ok(classes.into_iter().map(|(_, c)| c).collect())
}

/// `ρ_B` rebuilt as the uniform mixture of the distinct projected states.
pub fn mixture_of_outcomes(g: &Graph, traced: &QubitSet) -> Result<DensityMatrix, OracleError> {
    let psi = build_state(g)?;
    let mut reps: Vec<StateVector> = Vec::new();
    for z in OutcomeBitstring::all(*traced) {
        let state = psi.project_out(&z)?;
        if !reps.iter().any(|r| r.same_ray(&state)) {
            reps.push(state);
        }
    }
    let dim = 1 << traced.complement().len();
    let weight = 1.0 / reps.len() as f64;
    let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
    for r in &reps {
        for i in 0..dim {
            for j in 0..dim {
                data[i * dim + j] += r.amplitudes[i] * r.amplitudes[j].conj() * weight;
            }
        }
    }
    Ok(DensityMatrix { dim, data })
}
