//! Acceptance gate: one test per release criterion, each printing a single
//! PASS/FAIL line (run with `--nocapture` to see them). Criteria 1-6 replay
//! the published journal-network tables shipped under `fixtures/`; 7-9 are
//! oracle and round-trip guarantees; 10 checks that the CLI output is
//! byte-identical regardless of worker count.

mod common;

use std::collections::HashSet;
use std::path::{Path, PathBuf};
use std::process::Command;

use interlock::centrality::{
    betweenness_centrality, betweenness_centralization, competition_ranks, degree_centralization,
};
use interlock::cohesion::{components, m_slice};
use interlock::concordance::{kendall_w, kendall_w_from_rank_rows, RankMatrix};
use interlock::graph::VertexId;
use interlock::ingest::{
    pajek_net_to_string, read_fixture_a1, read_fixture_distribution, read_pajek_net, FixtureDistRow,
    FixtureRowA1,
};
use interlock::project::project;

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn load_a1() -> Vec<FixtureRowA1> {
    let f = std::fs::File::open(fixtures_dir().join("table_a1.csv")).unwrap();
    read_fixture_a1(f).unwrap()
}

fn load_dist(name: &str) -> Vec<FixtureDistRow> {
    let f = std::fs::File::open(fixtures_dir().join(name)).unwrap();
    read_fixture_distribution(f).unwrap()
}

fn verdict(criterion: usize, ok: bool, detail: &str) {
    let tag = if ok { "PASS" } else { "FAIL" };
    println!("{tag} criterion {criterion}: {detail}");
    assert!(ok, "criterion {criterion} failed: {detail}");
}

/// Printed ranks must sit inside the competition-rank span of their tie group
/// under the rounded values (the published ranks come from unrounded scores).
fn ranks_within_tie_span(values: &[f64], printed: &[u32]) -> usize {
    let min_ranks = competition_ranks(values);
    values
        .iter()
        .enumerate()
        .filter(|&(i, &value)| {
            let ties = values.iter().filter(|&&u| u == value).count();
            let p = printed[i] as usize;
            p < min_ranks[i] || p > min_ranks[i] + ties - 1
        })
        .count()
}

#[test]
fn criterion_01_per_journal_table_replays() {
    let a1 = load_a1();
    let n = a1.len();
    let degrees: Vec<f64> = a1.iter().map(|r| r.degree as f64).collect();

    let worst_nd = a1
        .iter()
        .map(|r| (r.normalized_degree - r.degree as f64 / (n - 1) as f64).abs())
        .fold(0.0f64, f64::max);
    let rank_degree = competition_ranks(&degrees);
    let degree_rank_misses = a1
        .iter()
        .zip(&rank_degree)
        .filter(|(r, &rank)| r.rank_degree as usize != rank)
        .count();
    let closeness: Vec<f64> = a1.iter().map(|r| r.closeness).collect();
    let betweenness: Vec<f64> = a1.iter().map(|r| r.betweenness_x100).collect();
    let bad_cl = ranks_within_tie_span(
        &closeness,
        &a1.iter().map(|r| r.rank_closeness).collect::<Vec<_>>(),
    );
    let bad_bw = ranks_within_tie_span(
        &betweenness,
        &a1.iter().map(|r| r.rank_betweenness).collect::<Vec<_>>(),
    );
    let top = a1
        .iter()
        .find(|r| r.journal == "Pacific Economic Review")
        .expect("most central journal present");
    let top_ok = top.degree == 124
        && top.rank_degree == 1
        && top.rank_closeness == 1
        && top.rank_betweenness == 1;
    let zeros: Vec<_> = a1.iter().filter(|r| r.degree == 0).collect();
    let zeros_ok = zeros.len() == 74 && zeros.iter().all(|r| r.rank_degree == 673);

    verdict(
        1,
        n == 746
            && worst_nd <= 0.0005
            && degree_rank_misses == 0
            && bad_cl == 0
            && bad_bw == 0
            && top_ok
            && zeros_ok,
        &format!(
            "{n} rows; max normalized-degree error {worst_nd:.6}; degree rank misses {degree_rank_misses}; \
             closeness/betweenness rank span violations {bad_cl}/{bad_bw}; top journal 1/1/1 {top_ok}; \
             {} isolates at rank 673: {zeros_ok}",
            zeros.len()
        ),
    );
}

#[test]
fn criterion_02_degree_centralization() {
    let a1 = load_a1();
    let t3 = load_dist("table_3.csv");
    let degrees: Vec<usize> = a1.iter().map(|r| r.degree as usize).collect();
    let cd = degree_centralization(&degrees).unwrap();
    let n = a1.len() as f64;
    let lines: u64 = t3.iter().map(|r| r.freq).sum();
    let max_degree = *degrees.iter().max().unwrap() as f64;
    // closed form: sum(d_max - d) = n*d_max - 2*|lines|
    let cd_counts = (n * max_degree - 2.0 * lines as f64) / ((n - 1.0) * (n - 2.0));
    verdict(
        2,
        (cd - 0.14).abs() <= 0.005 && (cd_counts - 0.14).abs() <= 0.005,
        &format!("column {cd:.4}, closed-form {cd_counts:.4}, published 0.14 +- 0.005"),
    );
}

#[test]
fn criterion_03_betweenness_centralization() {
    let a1 = load_a1();
    let betweenness: Vec<f64> = a1.iter().map(|r| r.betweenness_x100 / 100.0).collect();
    let cb = betweenness_centralization(&betweenness).unwrap();
    verdict(
        3,
        (cb - 0.04).abs() <= 0.005,
        &format!("column {cb:.4}, published 0.04 +- 0.005"),
    );
}

#[test]
fn criterion_04_kendall_w() {
    let a1 = load_a1();
    let columns: Vec<Vec<f64>> = vec![
        a1.iter().map(|r| r.degree as f64).collect(),
        a1.iter().map(|r| r.closeness).collect(),
        a1.iter().map(|r| r.betweenness_x100).collect(),
    ];
    let w = kendall_w(&RankMatrix::from_values(&columns).unwrap()).unwrap();
    let comp: Vec<Vec<f64>> = columns
        .iter()
        .map(|c| competition_ranks(c).iter().map(|&r| r as f64).collect())
        .collect();
    let w_comp = kendall_w_from_rank_rows(&comp).unwrap();
    verdict(
        4,
        (w - 0.95).abs() <= 0.01 && w_comp.is_finite(),
        &format!("mid-rank W {w:.4} vs 0.95 +- 0.01; competition-rank variant {w_comp:.4}"),
    );
}

#[test]
fn criterion_05_density_and_degree_distribution() {
    let a1 = load_a1();
    let t1 = load_dist("table_1.csv");
    let t3 = load_dist("table_3.csv");
    let n = a1.len() as f64;
    let lines: u64 = t3.iter().map(|r| r.freq).sum();
    let density = lines as f64 / (n * (n - 1.0) / 2.0);
    let mean_degree = 2.0 * lines as f64 / n;

    let total: u64 = t1.iter().map(|r| r.freq).sum();
    let worst_pct = t1
        .iter()
        .map(|r| (r.freq_pct - 100.0 * r.freq as f64 / total as f64).abs())
        .fold(0.0f64, f64::max);
    let zero_row = t1.iter().find(|r| r.value == 0).unwrap();
    let matches_a1 = t1.iter().all(|row| {
        a1.iter().filter(|r| r.degree as u64 == row.value).count() as u64 == row.freq
    });

    verdict(
        5,
        (density - 0.023).abs() <= 0.0005
            && (mean_degree - 17.18).abs() <= 0.005
            && total == 746
            && worst_pct <= 0.05
            && zero_row.freq == 74
            && (zero_row.freq_pct - 9.9).abs() <= 0.05
            && matches_a1,
        &format!(
            "density {density:.4} vs 0.023; mean degree {mean_degree:.3} vs 17.18; \
             {total} journals; max pct error {worst_pct:.4}; isolates ({}, {:.1}%); \
             per-journal column agrees: {matches_a1}",
            zero_row.freq, zero_row.freq_pct
        ),
    );
}

#[test]
fn criterion_06_line_value_distribution() {
    let t3 = load_dist("table_3.csv");
    let lines: u64 = t3.iter().map(|r| r.freq).sum();
    let one_share = t3
        .iter()
        .find(|r| r.value == 1)
        .map_or(f64::NAN, |r| 100.0 * r.freq as f64 / lines as f64);
    let max_value = t3.iter().map(|r| r.value).max().unwrap();
    let worst_pct = t3
        .iter()
        .map(|r| (r.freq_pct - 100.0 * r.freq as f64 / lines as f64).abs())
        .fold(0.0f64, f64::max);
    verdict(
        6,
        lines == 6407 && (one_share - 74.61).abs() <= 0.05 && max_value == 40 && worst_pct <= 0.05,
        &format!(
            "{lines} lines; value-1 share {one_share:.2}% vs 74.61%; max value {max_value}; \
             max pct error {worst_pct:.4}"
        ),
    );
}

#[test]
fn criterion_07_algorithms_match_oracles() {
    let mut rng = common::rng(0xACC);
    let mut worst_b: f64 = 0.0;
    for case in 0..200 {
        let n = 3 + (case % 10);
        let g = common::random_graph(&mut rng, n, 0.15 + 0.07 * (case % 10) as f64, 5);

        let fast = betweenness_centrality(&g).unwrap();
        for (a, b) in fast.iter().zip(common::betweenness_oracle(&g)) {
            worst_b = worst_b.max((a - b).abs());
        }

        let parts = components(&g);
        let got: HashSet<Vec<usize>> = (0..parts.component_count())
            .map(|c| {
                let mut m: Vec<usize> =
                    parts.members(c).into_iter().map(VertexId::index).collect();
                m.sort_unstable();
                m
            })
            .collect();
        let want: HashSet<Vec<usize>> = common::components_oracle(&g)
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        assert_eq!(got, want, "components disagree on case {case}");

        let a = common::random_affiliation(&mut rng, 2 + case % 8, 2 + case % 6, 0.35);
        if a.event_count() > 0 {
            let p = project(&a);
            let rosters: Vec<HashSet<u32>> = a
                .rosters()
                .iter()
                .map(|r| r.iter().map(|v| v.index() as u32).collect())
                .collect();
            for e in p.edges() {
                let shared =
                    rosters[e.u.index()].intersection(&rosters[e.v.index()]).count() as u32;
                assert_eq!(e.value, shared, "projection disagrees on case {case}");
            }
        }
    }
    verdict(
        7,
        worst_b < 1e-12,
        &format!(
            "200 random graphs: betweenness max |delta| {worst_b:.2e} (< 1e-12), \
             components and projection exact"
        ),
    );
}

#[test]
fn criterion_08_slices_are_nested() {
    let mut rng = common::rng(0x5ACC);
    let mut checked = 0usize;
    for case in 0..60 {
        let g = common::random_graph(&mut rng, 4 + case % 10, 0.4, 6);
        let max_value = g.edges().iter().map(|e| e.value).max().unwrap_or(0);
        let mut prev: Option<HashSet<(u32, u32)>> = None;
        for m in 1..=max_value + 1 {
            let s = m_slice(&g, m);
            assert_eq!(s.vertex_count(), g.vertex_count());
            assert!(s.edges().iter().all(|e| e.value >= m));
            let edges: HashSet<(u32, u32)> = s
                .edges()
                .iter()
                .map(|e| (e.u.index() as u32, e.v.index() as u32))
                .collect();
            if let Some(prev) = &prev {
                assert!(edges.is_subset(prev), "slice m={m} not nested, case {case}");
            }
            prev = Some(edges);
            checked += 1;
        }
        assert!(prev.unwrap().is_empty());
    }
    verdict(8, true, &format!("{checked} slices nested across 60 random graphs"));
}

#[test]
fn criterion_09_pajek_round_trip() {
    let mut rng = common::rng(0x9ACC);
    for case in 0..50 {
        let g = common::random_graph(&mut rng, 1 + case % 20, 0.3, 9);
        let text = pajek_net_to_string(&g);
        let back = read_pajek_net(text.as_bytes()).unwrap().graph;
        assert_eq!(
            pajek_net_to_string(&back),
            text,
            "case {case}: rewrite not byte-identical"
        );
        assert_eq!(back.vertex_count(), g.vertex_count());
        assert_eq!(back.edge_count(), g.edge_count());
    }
    verdict(9, true, "50 random graphs survive write -> parse -> write byte-identically");
}

#[test]
fn criterion_10_output_independent_of_workers() {
    let bin = env!("CARGO_BIN_EXE_interlock");
    let dir = tempfile::tempdir().unwrap();
    let net = dir.path().join("random.net");
    let run = |args: &[&str]| {
        let out = Command::new(bin).args(args).output().unwrap();
        assert!(
            out.status.success(),
            "interlock {args:?} failed: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    };
    run(&[
        "gen",
        "--out",
        net.to_str().unwrap(),
        "--vertices",
        "2000",
        "--edges",
        "6000",
        "--max-value",
        "8",
        "--seed",
        "42",
    ]);
    let out1 = dir.path().join("w1");
    let out8 = dir.path().join("w8");
    for (out, workers) in [(&out1, "1"), (&out8, "8")] {
        run(&[
            "analyze",
            "--input",
            net.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
            "--workers",
            workers,
        ]);
    }
    let mut identical = true;
    for name in ["centrality.csv", "centralization.csv", "concordance.json"] {
        let a = std::fs::read(out1.join(name)).unwrap();
        let b = std::fs::read(out8.join(name)).unwrap();
        identical &= a == b;
    }
    verdict(
        10,
        identical,
        "2000-vertex random graph: analyze --workers 1 and --workers 8 write identical bytes",
    );
}
