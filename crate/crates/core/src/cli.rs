//! Command-line surface: ingest -> project -> analyze -> report, plus
//! fixture validation replaying the published table values.
//!
//! All reports are dot-decimal, LF, UTF-8 regardless of locale, and every
//! subcommand is deterministic given its input bytes and flags; in
//! particular `--workers` never changes output bytes.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::centrality::{self, ClosenessVariant};
use crate::cohesion;
use crate::concordance;
use crate::graph::{AffiliationNetwork, JournalGraph, VertexId};
use crate::ingest::{self, FixtureDistRow, FixtureRowA1};
use crate::project;

#[derive(Parser)]
#[command(
    name = "interlock",
    about = "Valued journal-network analysis: projection, centrality, m-slices, concordance",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    /// `editor,journal` CSV of board seats (gets projected).
    AffiliationCsv,
    /// Pajek `.net` network file (already one-mode).
    PajekNet,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Closeness {
    Verbal,
    Corrected,
}

impl From<Closeness> for ClosenessVariant {
    fn from(c: Closeness) -> Self {
        match c {
            Closeness::Verbal => ClosenessVariant::Verbal,
            Closeness::Corrected => ClosenessVariant::Corrected,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct InputArgs {
    /// Input data file.
    #[arg(long)]
    input: PathBuf,
    /// Input format; inferred from the extension (.csv / .net) when omitted.
    #[arg(long, value_enum)]
    format: Option<InputFormat>,
}

#[derive(Subcommand)]
enum Command {
    /// Project an affiliation CSV to the valued journal network.
    Project {
        #[command(flatten)]
        input: InputArgs,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
    /// Centrality, centralization and concordance reports.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "corrected")]
        closeness: Closeness,
        /// Worker threads; 0 means the runtime default.
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[arg(long, value_enum, default_value = "csv")]
        report: ReportFormat,
    },
    /// Component census per m-slice threshold plus membership listings.
    Slices {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        out: PathBuf,
        /// Thresholds, e.g. `--m 2,3,6`; strictly increasing, all >= 1.
        #[arg(long, value_delimiter = ',', required = true)]
        m: Vec<u32>,
        /// Smallest component worth listing members for.
        #[arg(long, default_value_t = 2)]
        min_size: usize,
    },
    /// Connected components of the plain network (.clu + census).
    Components {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Rank concordance of the three centrality measures.
    Concord {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "corrected")]
        closeness: Closeness,
    },
    /// Read either input format, write the canonical Pajek .net form.
    Convert {
        #[command(flatten)]
        input: InputArgs,
        /// Output .net file.
        #[arg(long)]
        out: PathBuf,
    },
    /// Replay the published table fixtures and verify every derivable value.
    Validate {
        /// Directory holding table_a1.csv, table_1.csv, table_3.csv.
        #[arg(long)]
        fixtures: PathBuf,
    },
    /// Generate a seeded random valued network (for testing).
    Gen {
        /// Output .net file.
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        edges: usize,
        #[arg(long, default_value_t = 1)]
        max_value: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Runs the CLI; the error exit is handled by `main`.
pub fn run() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Project { input, out } => cmd_project(&input, &out),
        Command::Analyze {
            input,
            out,
            closeness,
            workers,
            report,
        } => cmd_analyze(&input, &out, closeness.into(), workers, report),
        Command::Slices {
            input,
            out,
            m,
            min_size,
        } => cmd_slices(&input, &out, &m, min_size),
        Command::Components { input, out } => cmd_components(&input, &out),
        Command::Concord {
            input,
            out,
            closeness,
        } => cmd_concord(&input, &out, closeness.into()),
        Command::Convert { input, out } => cmd_convert(&input, &out),
        Command::Validate { fixtures } => cmd_validate(&fixtures),
        Command::Gen {
            out,
            vertices,
            edges,
            max_value,
            seed,
        } => cmd_gen(&out, vertices, edges, max_value, seed),
    }
}

fn infer_format(input: &InputArgs) -> Result<InputFormat> {
    if let Some(f) = input.format {
        return Ok(f);
    }
    match input.input.extension().and_then(|e| e.to_str()) {
        Some("csv") => Ok(InputFormat::AffiliationCsv),
        Some("net") => Ok(InputFormat::PajekNet),
        _ => bail!(
            "cannot infer format of {}; pass --format",
            input.input.display()
        ),
    }
}

fn open_input(path: &Path) -> Result<File> {
    File::open(path).with_context(|| format!("cannot open {}", path.display()))
}

/// Loads the journal graph; the affiliation network comes along when the
/// input was two-mode.
fn load(input: &InputArgs) -> Result<(JournalGraph, Option<AffiliationNetwork>)> {
    match infer_format(input)? {
        InputFormat::AffiliationCsv => {
            let ingested = ingest::read_affiliation_csv(open_input(&input.input)?)
                .with_context(|| format!("parsing {}", input.input.display()))?;
            if ingested.duplicate_rows > 0 {
                eprintln!(
                    "warning: {} duplicate seat row(s) collapsed",
                    ingested.duplicate_rows
                );
            }
            let graph = project::project(&ingested.network);
            Ok((graph, Some(ingested.network)))
        }
        InputFormat::PajekNet => {
            let ingested = ingest::read_pajek_net(open_input(&input.input)?)
                .with_context(|| format!("parsing {}", input.input.display()))?;
            if ingested.coordinate_lines > 0 {
                eprintln!(
                    "warning: coordinates on {} vertex line(s) ignored",
                    ingested.coordinate_lines
                );
            }
            Ok((ingested.graph, None))
        }
    }
}

fn create_out(dir: &Path, name: &str) -> Result<BufWriter<File>> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    Ok(BufWriter::new(File::create(&path).with_context(|| {
        format!("cannot create {}", path.display())
    })?))
}

fn cmd_project(input: &InputArgs, out: &Path) -> Result<()> {
    if infer_format(input)? != InputFormat::AffiliationCsv {
        bail!("project needs an affiliation CSV input (the .net form is already projected)");
    }
    let (graph, network) = load(input)?;
    let network = network.expect("affiliation input");
    ingest::write_pajek_net(&graph, &mut create_out(out, "network.net")?)?;
    let summary = project::summarize(&network, &graph)?;
    ingest::write_summary_csv(&summary, &mut create_out(out, "summary.csv")?)?;
    ingest::write_distribution_csv(
        &project::degree_distribution(&graph),
        "degree",
        &mut create_out(out, "degree_distribution.csv")?,
    )?;
    ingest::write_distribution_csv(
        &project::line_value_distribution(&graph),
        "line_value",
        &mut create_out(out, "line_values.csv")?,
    )?;
    println!(
        "projected {} journals, {} lines -> {}",
        summary.journals,
        summary.lines,
        out.display()
    );
    Ok(())
}

fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if workers == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .context("building worker pool")?;
    Ok(pool.install(f))
}

fn cmd_analyze(
    input: &InputArgs,
    out: &Path,
    variant: ClosenessVariant,
    workers: usize,
    format: ReportFormat,
) -> Result<()> {
    let (graph, _) = load(input)?;
    let (report, indices) = with_workers(workers, || {
        let report = centrality::centrality_report(&graph, variant)?;
        let indices = centrality::centralization(&graph)?;
        Ok::<_, crate::AnalysisError>((report, indices))
    })??;
    let concordance = concordance::centrality_concordance(&report)?;
    match format {
        ReportFormat::Csv => {
            ingest::write_centrality_csv(&report, &mut create_out(out, "centrality.csv")?)?;
            ingest::write_centralization_csv(
                &indices,
                &mut create_out(out, "centralization.csv")?,
            )?;
        }
        ReportFormat::Json => {
            serde_json::to_writer_pretty(&mut create_out(out, "centrality.json")?, &report)?;
            serde_json::to_writer_pretty(&mut create_out(out, "centralization.json")?, &indices)?;
        }
    }
    serde_json::to_writer_pretty(&mut create_out(out, "concordance.json")?, &concordance)?;
    println!(
        "analyzed {} journals: centralization degree {:.3} closeness {:.3} betweenness {:.3}, W {:.3}",
        report.len(),
        indices.degree,
        indices.closeness,
        indices.betweenness,
        concordance.w
    );
    Ok(())
}

fn cmd_slices(input: &InputArgs, out: &Path, thresholds: &[u32], min_size: usize) -> Result<()> {
    if thresholds.is_empty() {
        bail!("at least one threshold is required");
    }
    if thresholds[0] < 1 || thresholds.windows(2).any(|w| w[0] >= w[1]) {
        bail!("thresholds must be >= 1 and strictly increasing");
    }
    if min_size < 2 {
        bail!("--min-size must be at least 2");
    }
    let (graph, _) = load(input)?;
    let censuses: Vec<_> = thresholds
        .iter()
        .map(|&m| cohesion::slice_census(&graph, m))
        .collect();
    ingest::write_slices_csv(&censuses, &mut create_out(out, "slices.csv")?)?;
    for &m in thresholds {
        let members = cohesion::component_members(&graph, m, min_size)?;
        ingest::write_component_members(
            &members,
            &mut create_out(out, &format!("components_m{m}.txt"))?,
        )?;
    }
    println!("sliced at m = {thresholds:?} -> {}", out.display());
    Ok(())
}

fn cmd_components(input: &InputArgs, out: &Path) -> Result<()> {
    let (graph, _) = load(input)?;
    let parts = cohesion::components(&graph);
    ingest::write_pajek_clu(&parts, &mut create_out(out, "components.clu")?)?;
    let mut census = create_out(out, "components.csv")?;
    writeln!(census, "component,size")?;
    for (id, size) in parts.sizes.iter().enumerate() {
        writeln!(census, "{},{}", id + 1, size)?;
    }
    println!(
        "{} components, giant size {} -> {}",
        parts.component_count(),
        parts.giant_size(),
        out.display()
    );
    Ok(())
}

fn cmd_concord(input: &InputArgs, out: &Path, variant: ClosenessVariant) -> Result<()> {
    let (graph, _) = load(input)?;
    let report = centrality::centrality_report(&graph, variant)?;
    let result = concordance::centrality_concordance(&report)?;
    serde_json::to_writer_pretty(&mut create_out(out, "concordance.json")?, &result)?;
    println!(
        "W = {:.3} (competition-rank variant {:.3}) over {} journals",
        result.w, result.w_competition_ranks, result.items
    );
    Ok(())
}

fn cmd_convert(input: &InputArgs, out: &Path) -> Result<()> {
    let (graph, _) = load(input)?;
    if let Some(parent) = out.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    let mut writer = BufWriter::new(File::create(out)?);
    ingest::write_pajek_net(&graph, &mut writer)?;
    println!(
        "wrote {} ({} vertices, {} edges)",
        out.display(),
        graph.vertex_count(),
        graph.edge_count()
    );
    Ok(())
}

fn cmd_gen(out: &Path, vertices: usize, edges: usize, max_value: u32, seed: u64) -> Result<()> {
    let max_edges = vertices * vertices.saturating_sub(1) / 2;
    if edges > max_edges {
        bail!("{edges} edges do not fit in a simple graph on {vertices} vertices");
    }
    if max_value < 1 {
        bail!("--max-value must be at least 1");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = JournalGraph::new();
    let width = vertices.to_string().len();
    for i in 0..vertices {
        g.add_vertex(&format!("J{i:0width$}")).expect("generated labels unique");
    }
    let mut pairs: Vec<(usize, usize)> = (0..vertices)
        .flat_map(|u| ((u + 1)..vertices).map(move |v| (u, v)))
        .collect();
    pairs.shuffle(&mut rng);
    for &(u, v) in pairs.iter().take(edges) {
        let value = rng.gen_range(1..=max_value);
        g.add_edge(VertexId::new(u), VertexId::new(v), value)
            .expect("pairs are distinct");
    }
    if let Some(parent) = out.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    let mut writer = BufWriter::new(File::create(out)?);
    ingest::write_pajek_net(&g, &mut writer)?;
    println!("generated {} vertices, {} edges -> {}", vertices, edges, out.display());
    Ok(())
}

// Published anchor values the fixture replay verifies.
const DEGREE_CENTRALIZATION: f64 = 0.14;
const BETWEENNESS_CENTRALIZATION: f64 = 0.04;
const KENDALL_W: f64 = 0.95;
const DENSITY: f64 = 0.023;
const MEAN_DEGREE: f64 = 17.18;
const VALUE_ONE_SHARE: f64 = 74.61;
const MAX_LINE_VALUE: u64 = 40;

struct Verdicts {
    run: usize,
    failures: usize,
}

impl Verdicts {
    fn check(&mut self, name: &str, ok: bool, detail: String) {
        self.run += 1;
        if ok {
            println!("ok   {name}: {detail}");
        } else {
            println!("FAIL {name}: {detail}");
            self.failures += 1;
        }
    }
}

fn read_fixture_file(dir: &Path, name: &str) -> Result<File> {
    File::open(dir.join(name))
        .with_context(|| format!("missing fixture file {}", dir.join(name).display()))
}

/// Every derivable quantity is recomputed from the fixture tables and
/// compared against the published values. Degree ranks must reproduce
/// exactly; the closeness and betweenness columns are printed at 3 decimal
/// places, so their published ranks (computed from unrounded values) are
/// checked for consistency with the rounded columns: each printed rank must
/// fall inside the competition-rank span of its rounded tie group and must
/// never invert a strict ordering of the rounded values.
fn cmd_validate(fixtures: &Path) -> Result<()> {
    let a1 = ingest::read_fixture_a1(read_fixture_file(fixtures, "table_a1.csv")?)?;
    let t1 = ingest::read_fixture_distribution(read_fixture_file(fixtures, "table_1.csv")?)?;
    let t3 = ingest::read_fixture_distribution(read_fixture_file(fixtures, "table_3.csv")?)?;
    let mut v = Verdicts { run: 0, failures: 0 };
    validate_fixtures(&a1, &t1, &t3, &mut v);
    println!("{} check(s) run, {} failure(s)", v.run, v.failures);
    if v.failures > 0 {
        bail!("{} validation check(s) failed", v.failures);
    }
    Ok(())
}

fn ranks_consistent(values: &[f64], printed: &[u32]) -> (bool, usize) {
    let min_ranks = centrality::competition_ranks(values);
    let mut bad = 0usize;
    for (i, &value) in values.iter().enumerate() {
        let ties = values.iter().filter(|&&u| u == value).count();
        let min = min_ranks[i];
        let max = min + ties - 1;
        let p = printed[i] as usize;
        if p < min || p > max {
            bad += 1;
        }
    }
    (bad == 0, bad)
}

fn validate_fixtures(
    a1: &[FixtureRowA1],
    t1: &[FixtureDistRow],
    t3: &[FixtureDistRow],
    v: &mut Verdicts,
) {
    let n = a1.len();
    let degrees: Vec<f64> = a1.iter().map(|r| r.degree as f64).collect();
    let closeness: Vec<f64> = a1.iter().map(|r| r.closeness).collect();
    let betweenness: Vec<f64> = a1.iter().map(|r| r.betweenness_x100 / 100.0).collect();

    // normalized degree reproduces degree/(n-1) at print precision
    let worst_nd = a1
        .iter()
        .map(|r| (r.normalized_degree - r.degree as f64 / (n - 1) as f64).abs())
        .fold(0.0f64, f64::max);
    v.check(
        "normalized-degree",
        worst_nd <= 0.0005,
        format!("max |printed - degree/{}| = {worst_nd:.6}", n - 1),
    );

    // degree ranks: exact competition-min reproduction
    let rank_degree = centrality::competition_ranks(&degrees);
    let mismatches = a1
        .iter()
        .zip(&rank_degree)
        .filter(|(r, &rank)| r.rank_degree as usize != rank)
        .count();
    v.check(
        "rank-degree",
        mismatches == 0,
        format!("{mismatches} mismatching row(s) of {n}"),
    );

    let (ok, bad) = ranks_consistent(&closeness, &a1.iter().map(|r| r.rank_closeness).collect::<Vec<_>>());
    v.check(
        "rank-closeness",
        ok,
        format!("{bad} row(s) outside the tie-group rank span"),
    );
    let (ok, bad) = ranks_consistent(
        &betweenness,
        &a1.iter().map(|r| r.rank_betweenness).collect::<Vec<_>>(),
    );
    v.check(
        "rank-betweenness",
        ok,
        format!("{bad} row(s) outside the tie-group rank span"),
    );

    // spot anchors
    let pacific = a1.iter().find(|r| r.journal == "Pacific Economic Review");
    let pacific_ok = pacific.is_some_and(|r| {
        r.rank_degree == 1 && r.rank_closeness == 1 && r.rank_betweenness == 1 && r.degree == 124
    });
    let zero_rows: Vec<_> = a1.iter().filter(|r| r.degree == 0).collect();
    let zeros_ok = zero_rows.len() == 74
        && zero_rows
            .iter()
            .all(|r| r.rank_degree == 673 && r.closeness == 0.0 && r.betweenness_x100 == 0.0);
    v.check(
        "spot-anchors",
        pacific_ok && zeros_ok,
        format!(
            "most central journal ranks 1/1/1: {pacific_ok}; {} degree-0 rows all rank 673: {zeros_ok}",
            zero_rows.len()
        ),
    );

    // degree centralization, both from the column and from published counts
    let int_degrees: Vec<usize> = a1.iter().map(|r| r.degree as usize).collect();
    let cd = centrality::degree_centralization(&int_degrees).unwrap_or(f64::NAN);
    let lines: u64 = t3.iter().map(|r| r.freq).sum();
    let cd_counts =
        (n as f64 * 124.0 - 2.0 * lines as f64) / ((n - 1) as f64 * (n - 2) as f64);
    v.check(
        "degree-centralization",
        (cd - DEGREE_CENTRALIZATION).abs() <= 0.005
            && (cd_counts - DEGREE_CENTRALIZATION).abs() <= 0.005,
        format!("column {cd:.4}, from counts {cd_counts:.4}, published {DEGREE_CENTRALIZATION}"),
    );

    let cb = centrality::betweenness_centralization(&betweenness).unwrap_or(f64::NAN);
    v.check(
        "betweenness-centralization",
        (cb - BETWEENNESS_CENTRALIZATION).abs() <= 0.005,
        format!("column {cb:.4}, published {BETWEENNESS_CENTRALIZATION}"),
    );

    // Kendall's W over the three value columns
    let matrix = concordance::RankMatrix::from_values(&[
        degrees.clone(),
        closeness.clone(),
        betweenness.clone(),
    ]);
    let w = matrix
        .and_then(|m| concordance::kendall_w(&m))
        .unwrap_or(f64::NAN);
    let comp_rows: Vec<Vec<f64>> = [&degrees, &closeness, &betweenness]
        .iter()
        .map(|c| {
            centrality::competition_ranks(c)
                .iter()
                .map(|&r| r as f64)
                .collect()
        })
        .collect();
    let w_comp = concordance::kendall_w_from_rank_rows(&comp_rows).unwrap_or(f64::NAN);
    v.check(
        "kendall-w",
        (w - KENDALL_W).abs() <= 0.01,
        format!("mid-rank {w:.4} (competition-rank variant {w_comp:.4}), published {KENDALL_W}"),
    );

    // density and mean degree from published counts
    let density = lines as f64 / (n as f64 * (n - 1) as f64 / 2.0);
    let mean_degree = 2.0 * lines as f64 / n as f64;
    v.check(
        "density-mean-degree",
        (density - DENSITY).abs() <= 0.0005 && (mean_degree - MEAN_DEGREE).abs() <= 0.005,
        format!("density {density:.4} vs {DENSITY}, mean degree {mean_degree:.3} vs {MEAN_DEGREE}"),
    );

    // Table I: totals, recomputed percentages, agreement with the A1 column
    let t1_total: u64 = t1.iter().map(|r| r.freq).sum();
    let worst_pct = t1
        .iter()
        .map(|r| (r.freq_pct - 100.0 * r.freq as f64 / t1_total as f64).abs())
        .fold(0.0f64, f64::max);
    let a1_agrees = t1.iter().all(|row| {
        a1.iter().filter(|r| r.degree as u64 == row.value).count() as u64 == row.freq
    });
    v.check(
        "degree-distribution",
        t1_total == n as u64 && worst_pct <= 0.05 && a1_agrees,
        format!(
            "total {t1_total} (journals {n}), max pct error {worst_pct:.4}, per-journal column agrees: {a1_agrees}"
        ),
    );

    // Table III: total lines, value-1 share, maximum multiplicity
    let one_share = t3
        .iter()
        .find(|r| r.value == 1)
        .map_or(f64::NAN, |r| 100.0 * r.freq as f64 / lines as f64);
    let max_value = t3.iter().map(|r| r.value).max().unwrap_or(0);
    v.check(
        "line-value-distribution",
        lines == 6407 && (one_share - VALUE_ONE_SHARE).abs() <= 0.05 && max_value == MAX_LINE_VALUE,
        format!(
            "total {lines}, value-1 share {one_share:.2}% vs {VALUE_ONE_SHARE}%, max value {max_value}"
        ),
    );

    // isolated journals score zero on the path-based measures
    let iso_ok = a1
        .iter()
        .filter(|r| r.degree == 0)
        .all(|r| r.closeness == 0.0 && r.betweenness_x100 == 0.0);
    v.check(
        "isolated-zero",
        iso_ok,
        "every degree-0 journal has closeness 0 and betweenness 0".to_string(),
    );

    // Table III percentages recompute as well
    let worst_pct3 = t3
        .iter()
        .map(|r| (r.freq_pct - 100.0 * r.freq as f64 / lines as f64).abs())
        .fold(0.0f64, f64::max);
    v.check(
        "line-value-percentages",
        worst_pct3 <= 0.05,
        format!("max pct error {worst_pct3:.4}"),
    );
}
