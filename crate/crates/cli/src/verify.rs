//! The `verify` command: tableau results against the dense oracle on random
//! instances.

use std::io::Write;

use graph_ce::dense::{
    build_state, check_measurement_rule, check_outcome_orthogonality, check_stabilizer,
    dense_purity, mixture_of_outcomes, outcome_state_classes, reduced_density_matrix,
};
use graph_ce::stabilizer::{count_distinct_sets, Outcome};
use graph_ce::{purity, DyadicRational, Graph, QubitSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::CliError;

const TOLERANCE: f64 = 1e-10;

struct Instance {
    graph: Graph,
    traced: QubitSet,
}

impl Instance {
    fn random(rng: &mut ChaCha8Rng, max_n: usize, max_traced: usize) -> Self {
        let n = rng.gen_range(2..=max_n);
        let p = rng.gen_range(0.15..0.85);
        let graph = Graph::random_connected(n, p, rng);
        let size = rng.gen_range(1..=max_traced.min(n - 1));
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        let traced = QubitSet::from_indices(n, &order[..size]).expect("indices in range");
        Self { graph, traced }
    }

    fn describe(&self) -> String {
        let edges: Vec<String> = self
            .graph
            .edges()
            .iter()
            .map(|(u, v)| format!("{}-{}", u + 1, v + 1))
            .collect();
        format!(
            "n={} edges [{}] traced {}",
            self.graph.n(),
            edges.join(" "),
            self.traced
        )
    }
}

type CheckFn = fn(&Instance) -> Result<Option<String>, String>;

fn eigenstate(inst: &Instance) -> Result<Option<String>, String> {
    let ok = check_stabilizer(&inst.graph).map_err(|e| e.to_string())?;
    Ok((!ok).then(|| "generators do not stabilize the state".into()))
}

fn measurement_rule(inst: &Instance) -> Result<Option<String>, String> {
    for a in inst.traced.iter() {
        for outcome in [Outcome::Plus, Outcome::Minus] {
            if !check_measurement_rule(&inst.graph, a, outcome).map_err(|e| e.to_string())? {
                return Ok(Some(format!("qubit {} outcome {outcome}", a + 1)));
            }
        }
    }
    Ok(None)
}

fn outcome_orthogonality(inst: &Instance) -> Result<Option<String>, String> {
    let ok = check_outcome_orthogonality(&inst.graph, &inst.traced).map_err(|e| e.to_string())?;
    Ok((!ok).then(|| "outcome states violate equal-or-orthogonal".into()))
}

fn purity_equivalence(inst: &Instance) -> Result<Option<String>, String> {
    let kept = inst.traced.complement();
    let exact = purity(&inst.graph, &kept).map_err(|e| e.to_string())?;
    let k = count_distinct_sets(&inst.graph, &inst.traced).map_err(|e| e.to_string())?;
    let psi = build_state(&inst.graph).map_err(|e| e.to_string())?;
    let dense = dense_purity(&psi, &kept);
    let from_count = DyadicRational::pow2_neg(k.trailing_zeros());
    if !k.is_power_of_two() || exact != from_count || (dense - exact.to_f64()).abs() > TOLERANCE {
        return Ok(Some(format!("purity {exact}, dense {dense}, k = {k}")));
    }
    Ok(None)
}

fn multiplicity(inst: &Instance) -> Result<Option<String>, String> {
    let k = count_distinct_sets(&inst.graph, &inst.traced).map_err(|e| e.to_string())? as usize;
    let classes = outcome_state_classes(&inst.graph, &inst.traced).map_err(|e| e.to_string())?;
    let each = (1usize << inst.traced.len()) / k;
    let ok = classes.len() == k && classes.iter().all(|&c| c == each);
    Ok((!ok).then(|| format!("k = {k}, state classes {classes:?}")))
}

fn mixture(inst: &Instance) -> Result<Option<String>, String> {
    let psi = build_state(&inst.graph).map_err(|e| e.to_string())?;
    let rho = reduced_density_matrix(&psi, &inst.traced.complement());
    let mix = mixture_of_outcomes(&inst.graph, &inst.traced).map_err(|e| e.to_string())?;
    let diff = rho.max_abs_diff(&mix);
    Ok((diff > TOLERANCE).then(|| format!("max elementwise difference {diff:e}")))
}

pub fn run<W: Write>(seed: u64, count: usize, max_n: usize, out: &mut W) -> Result<(), CliError> {
    let io = crate::output::io_failure;
    writeln!(out, "seed: {seed}").map_err(io)?;
    let checks: [(&str, usize, CheckFn); 6] = [
        ("stabilizer eigenstate", 1, eigenstate),
        ("single-qubit measurement rule", 2, measurement_rule),
        (
            "equal or orthogonal outcome states",
            6,
            outcome_orthogonality,
        ),
        ("purity against dense reduced state", 8, purity_equivalence),
        ("distinct states and multiplicities", 6, multiplicity),
        ("reduced state as mixture of outcomes", 4, mixture),
    ];
    let mut failed = 0;
    for (i, (name, max_traced, check)) in checks.into_iter().enumerate() {
        // one stream per check so each can be rerun alone with the same seed
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
        let mut failure = None;
        for _ in 0..count {
            let inst = Instance::random(&mut rng, max_n, max_traced);
            match check(&inst) {
                Ok(None) => {}
                Ok(Some(why)) => failure = Some(format!("{why} ({})", inst.describe())),
                Err(e) => failure = Some(format!("{e} ({})", inst.describe())),
            }
            if failure.is_some() {
                break;
            }
        }
        match failure {
            None => writeln!(out, "PASS {name}: {count} instances").map_err(io)?,
            Some(why) => {
                failed += 1;
                writeln!(out, "FAIL {name}: {why}").map_err(io)?;
            }
        }
    }
    out.flush().map_err(io)?;
    if failed == 0 {
        Ok(())
    } else {
        Err(CliError::Failed(format!(
            "{failed} verification check(s) failed"
        )))
    }
}
