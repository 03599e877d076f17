//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit status if
//! any criterion fails or overruns its time budget.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use graph_ce::canon::canonical_form;
use graph_ce::dense::{
    build_state, check_measurement_rule, check_outcome_orthogonality, dense_purity,
    outcome_state_classes,
};
use graph_ce::metrics::{ce_bounds, purity_spectrum, rank_index, snowflake_subset_ce};
use graph_ce::stabilizer::{
    count_distinct_sets, count_distinct_sets_fast, unitary_support, Outcome, OutcomeBitstring,
};
use graph_ce::survey::{ce_survey, enumerate_connected, max_achievers};
use graph_ce::{concentratable_entanglement, purity, DyadicRational, Family, Graph, QubitSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;

struct Criterion {
    name: &'static str,
    budget: Duration,
    check: fn() -> Check,
}

fn criterion(name: &'static str, secs: u64, check: fn() -> Check) -> Criterion {
    Criterion {
        name,
        budget: Duration::from_secs(secs),
        check,
    }
}

fn d(s: &str) -> DyadicRational {
    s.parse().expect("dyadic literal")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn branched_path() -> Graph {
    Graph::parse_edge_list("6\n1 2\n2 3\n3 4\n4 5\n3 6\n").expect("edge list")
}

fn random_graph(rng: &mut ChaCha8Rng, lo: usize, hi: usize) -> Graph {
    let n = rng.gen_range(lo..=hi);
    let p = rng.gen_range(0.15..0.85);
    Graph::random_connected(n, p, rng)
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize) -> QubitSet {
    loop {
        let mask = rng.gen_range(0..1u64 << n);
        if mask != 0 {
            return QubitSet::from_mask(n, mask).expect("mask in range");
        }
    }
}

/// Random traced set with `1 ≤ |A| ≤ max` leaving at least one qubit kept.
fn random_traced(rng: &mut ChaCha8Rng, n: usize, max: usize) -> QubitSet {
    let size = rng.gen_range(1..=max.min(n - 1));
    let mut order: Vec<usize> = (0..n).collect();
    rand::seq::SliceRandom::shuffle(order.as_mut_slice(), rng);
    QubitSet::from_indices(n, &order[..size]).expect("indices in range")
}

fn golden_branched_path() -> Check {
    let g = branched_path();
    let full = QubitSet::full(6);
    let ce = concentratable_entanglement(&g, &full).map_err(err)?;
    ensure(ce == d("21/32"), || format!("CE(full) = {ce}"))?;
    for labels in [[1, 2, 3, 5].as_slice(), &[1, 2, 5]] {
        let s = QubitSet::from_labels(6, labels).map_err(err)?;
        let p = purity(&g, &s).map_err(err)?;
        ensure(p == d("1/4"), || format!("purity({s}) = {p}"))?;
    }
    let ri2 = rank_index(&g, 2).map_err(err)?;
    ensure(ri2.counts == [12, 3], || ri2.to_string())?;
    let ri3 = rank_index(&g, 3).map_err(err)?;
    ensure(ri3.counts == [4, 4, 2], || ri3.to_string())?;
    let spectrum = purity_spectrum(&g).map_err(err)?;
    let expected = [
        vec![(d("1/2"), 6)],
        vec![(d("1/4"), 12), (d("1/2"), 3)],
        vec![(d("1/8"), 4), (d("1/4"), 4), (d("1/2"), 2)],
    ];
    for (m, want) in (1..=3).zip(expected) {
        let got = spectrum
            .level(m)
            .ok_or(format!("missing level {m}"))?
            .tallies();
        ensure(got == want, || format!("m={m} tallies {got:?}"))?;
    }
    Ok(())
}

fn single_vertex_ce() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..500 {
        let g = random_graph(&mut rng, 2, 10);
        for a in 0..g.n() {
            let s = QubitSet::from_indices(g.n(), &[a]).map_err(err)?;
            let ce = concentratable_entanglement(&g, &s).map_err(err)?;
            ensure(ce == d("1/4"), || {
                format!("CE({s}) = {ce} on {:?}", g.edges())
            })?;
        }
    }
    Ok(())
}

fn star_and_complete_minimum() -> Check {
    for n in 3..=9 {
        let want = d("1/2") - DyadicRational::pow2_neg(n as u32);
        let (min, _) = ce_bounds(n).map_err(err)?;
        ensure(min == want, || format!("lower bound n={n} is {min}"))?;
        for kind in [Family::Star, Family::Complete] {
            let g = Graph::family(kind, n).map_err(err)?;
            let ce = concentratable_entanglement(&g, &QubitSet::full(n)).map_err(err)?;
            ensure(ce == want, || format!("{kind}({n}) CE = {ce}, want {want}"))?;
        }
    }
    Ok(())
}

fn snowflake_subsets() -> Check {
    for n in 2..=6 {
        let g = Graph::family(Family::Snowflake, n).map_err(err)?;
        let core = QubitSet::from_mask(2 * n, (1u64 << n) - 1).map_err(err)?;
        let want = snowflake_subset_ce(n).map_err(err)?;
        let three_quarters_pow = (0..n).fold(DyadicRational::ONE, |acc, _| acc * d("3/4"));
        ensure(want == DyadicRational::ONE - three_quarters_pow, || {
            format!("closed form n={n}")
        })?;
        for s in [core, core.complement()] {
            let ce = concentratable_entanglement(&g, &s).map_err(err)?;
            ensure(ce == want, || {
                format!("snowflake({n}) CE({s}) = {ce}, want {want}")
            })?;
        }
        for c in 0..n {
            let pair = QubitSet::from_indices(2 * n, &[c, c + n]).map_err(err)?;
            let k = count_distinct_sets(&g, &pair).map_err(err)?;
            ensure(k == 2, || format!("snowflake({n}) pair {pair}: k = {k}"))?;
        }
    }
    Ok(())
}

fn max_achiever_sizes() -> Check {
    let mut with_achievers = Vec::new();
    for n in 2..=6 {
        if !max_achievers(n).map_err(err)?.is_empty() {
            with_achievers.push(n);
        }
    }
    ensure(with_achievers == [2, 3, 5, 6], || {
        format!("achievers at {with_achievers:?}")
    })?;
    let ring5 = canonical_form(&Graph::family(Family::Ring, 5).map_err(err)?).map_err(err)?;
    let found = max_achievers(5)
        .map_err(err)?
        .iter()
        .any(|g| canonical_form(g).map(|k| k == ring5).unwrap_or(false));
    ensure(found, || "ring(5) not among n = 5 achievers".into())
}

fn seven_vertex_collisions() -> Check {
    let survey = ce_survey(7).map_err(err)?;
    ensure(survey.records.len() == 853, || {
        format!("{} classes", survey.records.len())
    })?;
    let count = survey.distinct_value_count();
    ensure(count == 16, || format!("{count} distinct CE values"))
}

fn oracle_equivalence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..500 {
        let g = random_graph(&mut rng, 2, 10);
        let kept = random_subset(&mut rng, g.n());
        let k = count_distinct_sets(&g, &kept.complement()).map_err(err)?;
        let exact = purity(&g, &kept).map_err(err)?;
        ensure(
            exact == DyadicRational::pow2_neg(k.trailing_zeros()) && k.is_power_of_two(),
            || format!("purity {exact} vs k = {k}"),
        )?;
        let psi = build_state(&g).map_err(err)?;
        let dense = dense_purity(&psi, &kept);
        let diff = (dense - 1.0 / k as f64).abs();
        ensure(diff <= 1e-10, || {
            format!("dense {dense} vs 1/{k} on {:?} kept {kept}", g.edges())
        })?;
    }
    for _ in 0..200 {
        let g = random_graph(&mut rng, 2, 10);
        let a = rng.gen_range(0..g.n());
        let outcome = Outcome::from_bit(rng.gen());
        let ok = check_measurement_rule(&g, a, outcome).map_err(err)?;
        ensure(ok, || {
            format!(
                "measurement rule fails at {a} {outcome:?} on {:?}",
                g.edges()
            )
        })?;
    }
    Ok(())
}

fn distinct_set_counts() -> Check {
    for n in 2..=7 {
        for g in enumerate_connected(n).map_err(err)? {
            for traced in QubitSet::full(n).subsets() {
                if traced.is_full() {
                    continue;
                }
                let k = count_distinct_sets(&g, &traced).map_err(err)?;
                let fast = count_distinct_sets_fast(&g, &traced).map_err(err)?;
                let rank = g
                    .biadjacency(&traced, &traced.complement())
                    .map_err(err)?
                    .rank();
                ensure(k == fast && fast == 1 << rank, || {
                    format!(
                        "{:?} traced {traced}: {k} vs {fast} vs rank {rank}",
                        g.edges()
                    )
                })?;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..100 {
        let g = random_graph(&mut rng, 2, 10);
        let traced = random_traced(&mut rng, g.n(), 6);
        let k = count_distinct_sets_fast(&g, &traced).map_err(err)? as usize;
        let classes = outcome_state_classes(&g, &traced).map_err(err)?;
        let each = (1usize << traced.len()) / k;
        ensure(
            classes.len() == k && classes.iter().all(|&c| c == each),
            || {
                format!(
                    "{:?} traced {traced}: classes {classes:?}, k = {k}",
                    g.edges()
                )
            },
        )?;
    }
    Ok(())
}

fn support_map_linearity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..100 {
        let g = random_graph(&mut rng, 2, 10);
        let traced = random_traced(&mut rng, g.n(), 6);
        let outcomes: Vec<OutcomeBitstring> = OutcomeBitstring::all(traced).collect();
        let supports = outcomes
            .iter()
            .map(|z| unitary_support(&g, &traced, z))
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        for (i, z) in outcomes.iter().enumerate() {
            for (j, w) in outcomes.iter().enumerate() {
                let sum = unitary_support(&g, &traced, &z.xor(w).map_err(err)?).map_err(err)?;
                let parts = supports[i].xor(&supports[j]).map_err(err)?;
                ensure(sum == parts, || {
                    format!("{:?} traced {traced}: {z} + {w}", g.edges())
                })?;
            }
        }
        ensure(
            check_outcome_orthogonality(&g, &traced).map_err(err)?,
            || format!("overlap check fails on {:?} traced {traced}", g.edges()),
        )?;
    }
    Ok(())
}

fn ring_versus_linear() -> Check {
    for n in 3..=9 {
        let full = QubitSet::full(n);
        let ring =
            concentratable_entanglement(&Graph::family(Family::Ring, n).map_err(err)?, &full)
                .map_err(err)?;
        let line =
            concentratable_entanglement(&Graph::family(Family::Linear, n).map_err(err)?, &full)
                .map_err(err)?;
        let ok = if n <= 4 { ring == line } else { ring > line };
        ensure(ok, || format!("n={n}: ring {ring}, linear {line}"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria = [
        criterion("six-vertex golden values", 1, golden_branched_path),
        criterion("single-vertex CE is 1/4", 10, single_vertex_ce),
        criterion(
            "star and complete reach the minimum",
            30,
            star_and_complete_minimum,
        ),
        criterion("snowflake core and pendant subsets", 10, snowflake_subsets),
        criterion("maximum-CE achievers for n = 2..6", 120, max_achiever_sizes),
        criterion(
            "n = 7 distinct CE values (stretch)",
            900,
            seven_vertex_collisions,
        ),
        criterion("dense oracle agreement", 120, oracle_equivalence),
        criterion("distinct generator-set counts", 300, distinct_set_counts),
        criterion(
            "support-map linearity and orthogonality",
            120,
            support_map_linearity,
        ),
        criterion("ring versus linear ordering", 60, ring_versus_linear),
    ];
    let mut failures = 0;
    for (i, c) in criteria.iter().enumerate() {
        let (name, budget) = (c.name, c.budget);
        let start = Instant::now();
        let result = (c.check)();
        let elapsed = start.elapsed();
        let outcome = match result {
            Ok(()) if elapsed <= budget => Ok(()),
            Ok(()) => Err(format!("took {elapsed:.2?}, budget {budget:?}")),
            Err(e) => Err(e),
        };
        match outcome {
            Ok(()) => println!("PASS criterion {:>2}: {name} ({elapsed:.2?})", i + 1),
            Err(e) => {
                failures += 1;
                println!("FAIL criterion {:>2}: {name} ({elapsed:.2?}): {e}", i + 1);
            }
        }
    }
    println!("{} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
