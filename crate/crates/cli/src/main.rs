//! `graph-ce`: purities, CE and surveys of graph states from the command line.

mod output;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use graph_ce::graph6::{parse_graph6, write_graph6};
use graph_ce::metrics::{ce_bounds, ce_report, purity_spectrum, rank_index, schmidt_rank};
use graph_ce::stabilizer::distinct_generator_sets;
use graph_ce::survey::{ce_survey, family_sweep, CeSurvey, SurveyError};
use graph_ce::{purity, Family, Graph, QubitSet};
use serde::Serialize;

use output::{Emitter, Format};

/// Largest survey size run without `--stretch`.
const STANDARD_SURVEY_LIMIT: usize = 6;
const STRETCH_SURVEY_LIMIT: usize = 8;

#[derive(Parser)]
#[command(
    name = "graph-ce",
    version,
    about = "Purity and Concentratable Entanglement of graph states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// CE of a qubit subset (the full set by default).
    Ce {
        #[command(flatten)]
        graph: GraphSource,
        /// 1-indexed qubit labels, e.g. "1,3,5".
        #[arg(long)]
        subset: Option<String>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Purity of the reduced state on a subset or on one side of a cut.
    Purity {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long, conflicts_with = "cut", required_unless_present = "cut")]
        subset: Option<String>,
        /// Bipartition "A|B", e.g. "1,2|3,4,5,6".
        #[arg(long)]
        cut: Option<String>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Occurrences of each Schmidt rank over cuts of a given size.
    RankIndex {
        #[command(flatten)]
        graph: GraphSource,
        /// Size of the smaller side; every size when omitted.
        #[arg(long)]
        m: Option<usize>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Purity tallies at every cut size.
    Spectrum {
        #[command(flatten)]
        graph: GraphSource,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Distinct generator sets left after measuring out a qubit set in Z.
    Sets {
        #[command(flatten)]
        graph: GraphSource,
        /// Traced-out qubits, e.g. "4,6".
        #[arg(long)]
        trace: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// CE of every connected graph class on n vertices.
    Survey {
        #[arg(long, conflicts_with_all = ["from", "to"], required_unless_present_any = ["from", "to"])]
        size: Option<usize>,
        #[arg(long, requires = "to")]
        from: Option<usize>,
        #[arg(long, requires = "from")]
        to: Option<usize>,
        /// Allow the slower sizes 7 and 8.
        #[arg(long)]
        stretch: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// CE across a size range of one graph family.
    Family {
        #[arg(long)]
        kind: Family,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Randomized cross-checks against the dense state-vector oracle.
    Verify {
        /// Seed for the random instances; drawn and printed when omitted.
        #[arg(long)]
        seed: Option<u64>,
        /// Random instances per check.
        #[arg(long, default_value_t = 200)]
        count: usize,
        /// Largest graph size drawn.
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(2..=12))]
        max_n: u64,
    },
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true).args(["graph6", "edges", "family"])))]
struct GraphSource {
    /// Graph in graph6 format.
    #[arg(long)]
    graph6: Option<String>,
    /// Edge-list file: vertex count, then one "u v" pair per line.
    #[arg(long)]
    edges: Option<PathBuf>,
    /// Named family; needs --size.
    #[arg(long, requires = "size")]
    family: Option<Family>,
    #[arg(long)]
    size: Option<usize>,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Print values as decimals instead of exact fractions.
    #[arg(long)]
    decimal: bool,
}

enum CliError {
    Usage(String),
    Failed(String),
    /// The reader went away, e.g. output piped into `head`.
    Closed,
}

type CliResult = Result<(), CliError>;

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

impl GraphSource {
    fn load(&self) -> Result<(Graph, String), CliError> {
        let g = if let Some(text) = &self.graph6 {
            parse_graph6(text)
                .map_err(|e| CliError::Usage(format!("invalid graph6 {text:?}: {e}")))?
        } else if let Some(path) = &self.edges {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            Graph::parse_edge_list(&text)
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
        } else {
            let kind = self.family.expect("clap enforces one graph source");
            let size = self.size.expect("clap enforces --size with --family");
            Graph::family(kind, size).map_err(usage)?
        };
        let id = write_graph6(&g).unwrap_or_else(|_| format!("n{}", g.n()));
        Ok((g, id))
    }
}

fn parse_set(g: &Graph, text: &str) -> Result<QubitSet, CliError> {
    QubitSet::parse_labels(g.n(), text).map_err(usage)
}

fn parse_cut(g: &Graph, text: &str) -> Result<QubitSet, CliError> {
    let (a, b) = text
        .split_once('|')
        .ok_or_else(|| CliError::Usage(format!("cut {text:?} must look like \"A|B\"")))?;
    let (a, b) = (parse_set(g, a)?, parse_set(g, b)?);
    if !a.is_disjoint(&b) {
        return Err(CliError::Usage(format!(
            "cut sides overlap on {}",
            a.intersection(&b)
        )));
    }
    if !a.union(&b).is_full() {
        let missing = a.union(&b).complement();
        return Err(CliError::Usage(format!("cut leaves out {missing}")));
    }
    Ok(a)
}

#[derive(Serialize)]
struct CeRow {
    graph: String,
    n: usize,
    subset: String,
    ce: String,
    ce_num: u128,
    ce_log2_den: u32,
    connected: bool,
    achieves_min: bool,
    achieves_max: bool,
}

#[derive(Serialize)]
struct PurityRow {
    graph: String,
    n: usize,
    kept: String,
    purity: String,
    purity_num: u128,
    purity_log2_den: u32,
    schmidt_rank: u32,
    distinct_sets: u64,
}

#[derive(Serialize)]
struct RankRow {
    graph: String,
    m: usize,
    schmidt_rank: usize,
    count: usize,
}

#[derive(Serialize)]
struct SpectrumRow {
    graph: String,
    m: usize,
    cuts: usize,
    purity: String,
    count: usize,
}

#[derive(Serialize)]
struct SetRow {
    graph: String,
    traced: String,
    outcome: String,
    multiplicity: usize,
    generators: String,
}

fn run(cli: Cli) -> CliResult {
    let mut stdout = std::io::stdout().lock();
    match cli.command {
        Command::Ce { graph, subset, out } => {
            let (g, id) = graph.load()?;
            let s = match subset {
                Some(text) => parse_set(&g, &text)?,
                None => g.vertices(),
            };
            let report = ce_report(&g, id, &s).map_err(usage)?;
            let value = output::value(report.ce, out.decimal);
            let row = CeRow {
                graph: report.graph_id,
                n: g.n(),
                subset: s.to_string(),
                ce: value.clone(),
                ce_num: report.ce.numerator(),
                ce_log2_den: report.ce.log2_denominator(),
                connected: report.connected,
                achieves_min: report.achieves_min,
                achieves_max: report.achieves_max,
            };
            let mut e = Emitter::new(out.format, &mut stdout);
            e.row(&row, || value)?;
            e.finish()
        }
        Command::Purity {
            graph,
            subset,
            cut,
            out,
        } => {
            let (g, id) = graph.load()?;
            let kept = match (subset, cut) {
                (Some(text), _) => parse_set(&g, &text)?,
                (None, Some(text)) => parse_cut(&g, &text)?,
                (None, None) => unreachable!("clap requires --subset or --cut"),
            };
            let p = purity(&g, &kept).map_err(usage)?;
            let rank = schmidt_rank(&g, &kept).map_err(usage)?;
            let value = output::value(p, out.decimal);
            let row = PurityRow {
                graph: id,
                n: g.n(),
                kept: kept.to_string(),
                purity: value.clone(),
                purity_num: p.numerator(),
                purity_log2_den: p.log2_denominator(),
                schmidt_rank: rank,
                distinct_sets: 1 << rank,
            };
            let mut e = Emitter::new(out.format, &mut stdout);
            e.row(&row, || value)?;
            e.finish()
        }
        Command::RankIndex { graph, m, out } => {
            let (g, id) = graph.load()?;
            let sizes: Vec<usize> = match m {
                Some(m) => vec![m],
                None => (1..=g.n() / 2).collect(),
            };
            let mut e = Emitter::new(out.format, &mut stdout);
            for m in sizes {
                let ri = rank_index(&g, m).map_err(usage)?;
                let line = ri.to_string();
                let rows: Vec<RankRow> = ri
                    .counts
                    .iter()
                    .enumerate()
                    .map(|(i, &count)| RankRow {
                        graph: id.clone(),
                        m,
                        schmidt_rank: m - i,
                        count,
                    })
                    .collect();
                e.rows(&rows, || line)?;
            }
            e.finish()
        }
        Command::Spectrum { graph, out } => {
            let (g, id) = graph.load()?;
            let spectrum = purity_spectrum(&g).map_err(usage)?;
            let mut e = Emitter::new(out.format, &mut stdout);
            for level in spectrum.levels.iter().skip(1) {
                let tallies = level.tallies();
                let line = tallies
                    .iter()
                    .map(|(p, c)| format!("{c}x{}", output::value(*p, out.decimal)))
                    .collect::<Vec<_>>()
                    .join(" ");
                let rows: Vec<SpectrumRow> = tallies
                    .into_iter()
                    .map(|(p, count)| SpectrumRow {
                        graph: id.clone(),
                        m: level.m,
                        cuts: level.cuts,
                        purity: output::value(p, out.decimal),
                        count,
                    })
                    .collect();
                e.rows(&rows, || {
                    format!("m={} ({} cuts): {line}", level.m, level.cuts)
                })?;
            }
            e.finish()
        }
        Command::Sets { graph, trace, out } => {
            let (g, id) = graph.load()?;
            let traced = parse_set(&g, &trace)?;
            if traced.is_full() {
                return Err(CliError::Usage("cannot trace out every qubit".into()));
            }
            let sets = distinct_generator_sets(&g, &traced).map_err(usage)?;
            let mut e = Emitter::new(out.format, &mut stdout);
            for (z, tableau, multiplicity) in &sets {
                let row = SetRow {
                    graph: id.clone(),
                    traced: traced.to_string(),
                    outcome: z.to_string(),
                    multiplicity: *multiplicity,
                    generators: tableau
                        .generators()
                        .iter()
                        .map(|p| p.to_string())
                        .collect::<Vec<_>>()
                        .join("; "),
                };
                e.row(&row, || format!("{z} x{multiplicity}\n{tableau}"))?;
            }
            e.table_line(&format!("k = {}", sets.len()))?;
            e.finish()
        }
        Command::Survey {
            size,
            from,
            to,
            stretch,
            out,
        } => {
            let (lo, hi) = match (size, from, to) {
                (Some(n), _, _) => (n, n),
                (None, Some(a), Some(b)) => (a, b),
                _ => unreachable!("clap requires --size or --from/--to"),
            };
            let limit = if stretch {
                STRETCH_SURVEY_LIMIT
            } else {
                STANDARD_SURVEY_LIMIT
            };
            if lo == 0 || lo > hi {
                return Err(CliError::Usage(format!("empty size range {lo}..={hi}")));
            }
            if hi > limit {
                let hint = if stretch {
                    ""
                } else {
                    " (sizes 7 and 8 need --stretch)"
                };
                return Err(CliError::Usage(format!(
                    "survey size {hi} exceeds {limit}{hint}"
                )));
            }
            let mut surveys = Vec::new();
            for n in lo..=hi {
                log::info!("surveying connected graphs on {n} vertices");
                surveys.push(ce_survey(n).map_err(usage)?);
            }
            survey_output(&surveys, out, &mut stdout)
        }
        Command::Family {
            kind,
            from,
            to,
            out,
        } => {
            if from > to {
                return Err(CliError::Usage(format!("empty size range {from}..={to}")));
            }
            let records = family_sweep(kind, from..=to).map_err(usage)?;
            let mut e = Emitter::new(out.format, &mut stdout);
            for r in &records {
                let mut line = format!(
                    "{kind}({}) n={} CE={}",
                    r.size,
                    r.record.n,
                    output::value(r.record.ce, out.decimal)
                );
                if r.record.achieves_min {
                    line.push_str(" [min]");
                }
                if r.record.achieves_max {
                    line.push_str(" [max]");
                }
                if let Some(core) = &r.snowflake {
                    line.push_str(&format!(
                        " core={} pendant={} closed-form={}",
                        output::value(core.core_ce, out.decimal),
                        output::value(core.pendant_ce, out.decimal),
                        output::value(core.closed_form, out.decimal)
                    ));
                }
                e.row(&r.row(), || line)?;
            }
            e.finish()
        }
        Command::Verify { seed, count, max_n } => {
            let seed = seed.unwrap_or_else(rand::random);
            verify::run(seed, count, max_n as usize, &mut stdout)
        }
    }
}

fn survey_output<W: std::io::Write>(surveys: &[CeSurvey], out: OutputArgs, w: &mut W) -> CliResult {
    if out.format == Format::Csv {
        return graph_ce::survey::write_survey_csv(surveys, w).map_err(|e| match e {
            SurveyError::Csv(e) => output::csv_failure(e),
            SurveyError::Io(e) => output::io_failure(e),
            other => CliError::Failed(other.to_string()),
        });
    }
    let mut e = Emitter::new(out.format, w);
    for s in surveys {
        let (min, max) = ce_bounds(s.n).map_err(usage)?;
        let groups = s.value_groups();
        e.table_line(&format!(
            "n={}: {} classes, {} distinct CE values, bounds [{}, {}]",
            s.n,
            s.records.len(),
            groups.len(),
            output::value(min, out.decimal),
            output::value(max, out.decimal)
        ))?;
        for (value, members) in &groups {
            let mut tag = String::new();
            if *value == min {
                tag.push_str(" [min]");
            }
            if *value == max {
                tag.push_str(" [max]");
            }
            e.table_line(&format!(
                "  {:>12} {:>5}{tag}",
                output::value(*value, out.decimal),
                members.len()
            ))?;
        }
        let rows: Vec<_> = s.records.iter().map(|r| r.row()).collect();
        e.rows(&rows, String::new)?;
    }
    e.finish()
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) | Err(CliError::Closed) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
