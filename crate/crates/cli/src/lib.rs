//! `kerlab` command-line front end: argument parsing, dispatch and output.
//!
//! [`run`] returns what would be printed plus the exit code, so the binary is
//! a thin wrapper and tests can drive commands in-process.

pub mod report;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kerlab_core::corpus::{family_g2k1, fixture, random_unicyclic, FixtureName};
use kerlab_core::graph::fmt_labels;
use kerlab_core::lab::{
    check_named, search_problem1, search_problem2, sweep, Family, Problem1Report, Problem2Report, SweepOptions,
    SweepSummary, TheoremId, TheoremReport,
};
use kerlab_core::{parse_edge_list, Budget, Error, Graph};
use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "kerlab",
    version,
    about = "Exact independence invariants and theorem checks for small graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct BudgetArgs {
    /// Largest graph whose maximum independent sets or maximum matchings are enumerated
    #[arg(long, default_value_t = Budget::default().max_enum_n)]
    pub max_enum_n: usize,
    /// Largest component handed to the branch-and-bound independence solver
    #[arg(long, default_value_t = Budget::default().max_bnb_n)]
    pub max_bnb_n: usize,
    /// Largest graph for the 2^n subset sweep (critical sets, ker)
    #[arg(long, default_value_t = Budget::default().max_subset_n)]
    pub max_subset_n: usize,
    /// Maximum number of maximum matchings enumerated per graph
    #[arg(long, default_value_t = Budget::default().matching_limit)]
    pub matching_limit: usize,
    /// Largest order for isomorphism-deduplicated enumeration
    #[arg(long, default_value_t = Budget::default().max_dedupe_n)]
    pub max_dedupe_n: usize,
    /// Largest order for labeled enumeration
    #[arg(long, default_value_t = Budget::default().max_labeled_n)]
    pub max_labeled_n: usize,
}

impl From<&BudgetArgs> for Budget {
    fn from(b: &BudgetArgs) -> Self {
        Budget {
            max_enum_n: b.max_enum_n,
            max_bnb_n: b.max_bnb_n,
            max_subset_n: b.max_subset_n,
            matching_limit: b.matching_limit,
            max_dedupe_n: b.max_dedupe_n,
            max_labeled_n: b.max_labeled_n,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Tree,
    Unicyclic,
    Connected,
    All,
    G2k1,
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Edge-list file
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Built-in fixture
    #[arg(long)]
    pub fixture: Option<String>,
    /// Enumerated family (bounded by --max-n, or --k for g2k1)
    #[arg(long, value_enum)]
    pub family: Option<FamilyKind>,
    /// Number of random connected graphs (sizes up to --size, seeded by --seed)
    #[arg(long)]
    pub random: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute every invariant of one graph
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Check theorems on a graph, a family or a random corpus
    Verify {
        /// Comma-separated theorem ids, or ALL
        #[arg(long = "theorem", value_delimiter = ',', required = true)]
        theorems: Vec<String>,
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        min_n: Option<usize>,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        /// Largest k for the g2k1 family
        #[arg(long, default_value_t = 6)]
        k: usize,
        /// Enumerate labeled graphs instead of one per isomorphism class (tree, unicyclic)
        #[arg(long)]
        labeled: bool,
        /// Largest order of random graphs
        #[arg(long, default_value_t = 12)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Stop after the first block of graphs containing a counterexample
        #[arg(long)]
        fail_fast: bool,
        /// Worker threads (0 = available parallelism)
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Search the small-graph space around the two open problems
    Search {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        problem: u8,
        #[arg(long, default_value_t = 7)]
        max_n: usize,
        /// Family for problem 2
        #[arg(long, value_enum, default_value_t = FamilyKind::Unicyclic)]
        family: FamilyKind,
        /// Exemplars kept per class or bucket
        #[arg(long, default_value_t = 3)]
        exemplars: usize,
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Print a graph as a canonical edge list
    Generate {
        #[arg(long, group = "what")]
        fixture: Option<String>,
        /// Only g2k1 is generated by family
        #[arg(long, value_enum, group = "what", requires = "k")]
        family: Option<FamilyKind>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, group = "what", requires = "n")]
        random_unicyclic: bool,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn error(e: &Error) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: if e.is_budget() { EXIT_BUDGET } else { EXIT_USAGE },
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: EXIT_USAGE,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    execute(cli.command).unwrap_or_else(|e| Outcome::error(&e))
}

fn execute(command: Command) -> Result<Outcome, Error> {
    match command {
        Command::Analyze { file, format, budget } => {
            let g = read_graph(&file)?;
            let r = report::analyze(&display_name(&file), &g, &Budget::from(&budget))?;
            Ok(Outcome::ok(match format {
                Format::Text => report::render_text(&r),
                Format::Json => to_json(&r),
            }))
        }
        Command::Verify {
            theorems,
            source,
            min_n,
            max_n,
            k,
            labeled,
            size,
            seed,
            fail_fast,
            workers,
            format,
            budget,
        } => {
            let ids = parse_theorems(&theorems)?;
            let family = resolve_family(&source, min_n, max_n, k, !labeled, size, seed)?;
            let options = SweepOptions {
                budget: Budget::from(&budget),
                workers,
                fail_fast,
            };
            verify(family, &ids, &options, format)
        }
        Command::Search {
            problem,
            max_n,
            family,
            exemplars,
            workers,
            format,
            budget,
        } => {
            let budget = Budget::from(&budget);
            let pool = rayon_pool(workers)?;
            let out = pool.install(|| -> Result<String, Error> {
                Ok(if problem == 1 {
                    let r = search_problem1(max_n, exemplars, &budget)?;
                    match format {
                        Format::Text => render_problem1(&r),
                        Format::Json => to_json(&r),
                    }
                } else {
                    let fam = family_for(family, None, max_n, 6, true)?;
                    let r = search_problem2(&fam, exemplars, &budget)?;
                    match format {
                        Format::Text => render_problem2(&r),
                        Format::Json => to_json(&r),
                    }
                })
            })?;
            Ok(Outcome::ok(out))
        }
        Command::Generate {
            fixture: name,
            family,
            k,
            random_unicyclic: random,
            n,
            seed,
        } => {
            let g = if let Some(name) = name {
                fixture(name.parse::<FixtureName>()?)
            } else if let Some(family) = family {
                if family != FamilyKind::G2k1 {
                    return Err(Error::InvalidArgument("generate --family only supports g2k1".into()));
                }
                family_g2k1(k.expect("clap requires --k"))?
            } else if random {
                random_unicyclic(n.expect("clap requires --n"), seed)?
            } else {
                return Err(Error::InvalidArgument(
                    "choose one of --fixture, --family g2k1 --k K, --random-unicyclic --n N".into(),
                ));
            };
            Ok(Outcome::ok(g.to_edge_list()))
        }
    }
}

fn rayon_pool(workers: usize) -> Result<rayon::ThreadPool, Error> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("worker pool: {e}")))
}

fn display_name(path: &std::path::Path) -> String {
    path.file_name()
        .map_or_else(|| path.display().to_string(), |f| f.to_string_lossy().into_owned())
}

fn read_graph(path: &std::path::Path) -> Result<Graph, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    parse_edge_list(&text)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn parse_theorems(raw: &[String]) -> Result<Vec<TheoremId>, Error> {
    if raw.iter().any(|t| t.eq_ignore_ascii_case("all")) {
        return Ok(TheoremId::ALL.to_vec());
    }
    let mut ids = raw
        .iter()
        .map(|t| t.trim().parse())
        .collect::<Result<Vec<TheoremId>, _>>()?;
    ids.sort();
    ids.dedup();
    Ok(ids)
}

fn family_for(kind: FamilyKind, min_n: Option<usize>, max_n: usize, k: usize, dedupe: bool) -> Result<Family, Error> {
    Ok(match kind {
        FamilyKind::Tree => Family::Trees {
            min_n: min_n.unwrap_or(1),
            max_n,
            dedupe,
        },
        FamilyKind::Unicyclic => Family::Unicyclic {
            min_n: min_n.unwrap_or(3),
            max_n,
            dedupe,
        },
        FamilyKind::Connected => Family::Connected { max_n },
        FamilyKind::All => Family::All { max_n },
        FamilyKind::G2k1 => Family::G2k1 { max_k: k },
    })
}

fn resolve_family(
    source: &Source,
    min_n: Option<usize>,
    max_n: usize,
    k: usize,
    dedupe: bool,
    size: usize,
    seed: u64,
) -> Result<Family, Error> {
    if let Some(path) = &source.graph {
        return Ok(Family::Single {
            name: display_name(path),
            graph: read_graph(path)?,
        });
    }
    if let Some(name) = &source.fixture {
        return Ok(Family::Single {
            name: name.clone(),
            graph: fixture(name.parse()?),
        });
    }
    if let Some(kind) = source.family {
        return family_for(kind, min_n, max_n, k, dedupe);
    }
    let count = source.random.expect("clap requires one source");
    Ok(Family::RandomConnected {
        count,
        max_n: size,
        seed,
    })
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    summary: &'a SweepSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    reports: Option<Vec<TheoremReport>>,
}

fn verify(family: Family, ids: &[TheoremId], options: &SweepOptions, format: Format) -> Result<Outcome, Error> {
    let reports = match &family {
        Family::Single { name, graph } => Some(
            ids.iter()
                .map(|&id| check_named(id, name, graph, &options.budget))
                .collect::<Result<Vec<_>, _>>()?,
        ),
        _ => None,
    };
    let summary = sweep(&family, ids, options)?;
    let stdout = match format {
        Format::Json => to_json(&VerifyOutput {
            summary: &summary,
            reports,
        }),
        Format::Text => render_sweep(&summary, reports.as_deref()),
    };
    Ok(Outcome {
        stdout,
        stderr: format!("elapsed {:.3}s\n", summary.elapsed.as_secs_f64()),
        code: verify_exit_code(&summary),
    })
}

/// A counterexample outranks a truncated sweep.
pub fn verify_exit_code(summary: &SweepSummary) -> i32 {
    if !summary.failures.is_empty() {
        EXIT_COUNTEREXAMPLE
    } else if summary.truncated {
        EXIT_BUDGET
    } else {
        EXIT_OK
    }
}

fn describe(family: &Family) -> String {
    match family {
        Family::Single { name, .. } => format!("graph {name}"),
        Family::Trees { min_n, max_n, dedupe } => format!("trees, n={min_n}..{max_n}{}", dedupe_note(*dedupe)),
        Family::Unicyclic { min_n, max_n, dedupe } => {
            format!("unicyclic graphs, n={min_n}..{max_n}{}", dedupe_note(*dedupe))
        }
        Family::Connected { max_n } => format!("connected graphs, n<={max_n}, up to isomorphism"),
        Family::All { max_n } => format!("all graphs, n<={max_n}, up to isomorphism"),
        Family::G2k1 { max_k } => format!("G_(2k+1), k=1..{max_k}"),
        Family::RandomConnected { count, max_n, seed } => {
            format!("{count} random connected graphs, n<={max_n}, seed {seed}")
        }
    }
}

fn dedupe_note(dedupe: bool) -> &'static str {
    if dedupe {
        ", up to isomorphism"
    } else {
        ", labeled"
    }
}

fn one_line(edge_list: &str) -> String {
    edge_list.lines().collect::<Vec<_>>().join("; ")
}

fn render_sweep(s: &SweepSummary, reports: Option<&[TheoremReport]>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "family      {}", describe(&s.family));
    let _ = writeln!(out, "graphs      {}", s.graphs_tested);
    let _ = writeln!(
        out,
        "{:<10}{:>12}{:>16}{:>10}{:>10}",
        "theorem", "applicable", "not applicable", "held", "failed"
    );
    for (id, t) in &s.tallies {
        let _ = writeln!(
            out,
            "{:<10}{:>12}{:>16}{:>10}{:>10}",
            id.as_str(),
            t.applicable,
            t.not_applicable,
            t.held,
            t.failed
        );
    }
    if let Some(reports) = reports {
        for r in reports {
            let verdict = match r.holds {
                None => "not applicable".to_string(),
                Some(true) => "holds".to_string(),
                Some(false) => "FAILS".to_string(),
            };
            let _ = writeln!(out, "{:<10}{verdict}", r.theorem.as_str());
            for (k, v) in &r.witness {
                let _ = writeln!(
                    out,
                    "    {k} = {}",
                    serde_json::to_string(v).expect("payload serializes")
                );
            }
        }
    }
    if let Some(reason) = &s.truncation_reason {
        let _ = writeln!(out, "truncated   {reason}");
    }
    let _ = writeln!(out, "failures    {}", s.failures.len());
    for f in &s.failures {
        let _ = writeln!(
            out,
            "  {} on {}: {}",
            f.report.theorem,
            f.report.graph_id,
            one_line(&f.graph)
        );
        if let Some(ce) = &f.report.counterexample {
            let _ = writeln!(
                out,
                "    counterexample {}",
                serde_json::to_string(ce).expect("payload serializes")
            );
        }
    }
    out
}

fn render_problem1(r: &Problem1Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "non-bipartite unicyclic König-Egerváry graphs, n<={}", r.max_n);
    let _ = writeln!(out, "unicyclic graphs examined  {}", r.graphs_examined);
    let _ = writeln!(out, "non-bipartite KE           {}", r.non_bipartite_ke);
    for (title, class) in [
        ("core = ker", &r.core_equals_ker),
        ("core != ker", &r.core_differs_from_ker),
    ] {
        let _ = writeln!(out, "{title}: {}", class.count);
        for e in &class.exemplars {
            let _ = writeln!(
                out,
                "  n={} core={} ker={}  {}",
                e.n,
                fmt_labels(&e.core),
                fmt_labels(&e.ker),
                one_line(&e.graph)
            );
        }
    }
    out
}

fn render_problem2(r: &Problem2Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "sum defect |corona|+|core|-2alpha over {}", describe(&r.family));
    let _ = writeln!(out, "graphs examined  {}", r.graphs_examined);
    for (defect, b) in &r.buckets {
        let _ = writeln!(out, "defect {defect}: {}", b.count);
        for g in &b.exemplars {
            let _ = writeln!(out, "  {}", one_line(g));
        }
    }
    out
}
