//! External data formats: the affiliation CSV, Pajek `.net` and `.clu`
//! files, the table fixture CSVs and the CSV/JSON report writers.
//!
//! Only the undirected valued subset of the Pajek dialect is supported:
//! `*Vertices` and `*Edges` sections plus `%` comments. `*Arcs` is rejected
//! as directed input, any other section keyword is a parse error and vertex
//! coordinates are ignored (counted as warnings). Output is canonical --
//! always-quoted labels, 1-based ids, `u v value` lines sorted with `u < v`,
//! LF endings -- so golden files can be compared byte for byte.

use std::io::{BufRead, BufReader, Read, Write};

use thiserror::Error;

use crate::centrality::{CentralityReport, CentralizationIndices};
use crate::cohesion::{ComponentMembers, ComponentPartition, SliceCensus};
use crate::graph::{AffiliationNetwork, GraphError, JournalGraph, VertexId};
use crate::project::{DistributionTable, NetworkSummary};

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: edge references unknown vertex id {id}")]
    UnknownVertex { line: usize, id: usize },
    #[error("line {line}: *Arcs section found; directed networks are not supported")]
    UnsupportedDirected { line: usize },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn parse_err(line: usize, message: impl Into<String>) -> IngestError {
    IngestError::Parse {
        line,
        message: message.into(),
    }
}

/// Result of reading an affiliation CSV: the network plus data-quality
/// counters (duplicate seat rows are collapsed, not rejected).
#[derive(Debug)]
pub struct AffiliationIngest {
    pub network: AffiliationNetwork,
    pub duplicate_rows: usize,
}

/// Reads `editor,journal` rows (RFC-4180 quoting) into an affiliation
/// network. One actor per distinct editor label, one event per distinct
/// journal, one seat per distinct pair.
pub fn read_affiliation_csv(reader: impl Read) -> Result<AffiliationIngest, IngestError> {
    let mut csv_reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(reader);
    {
        let headers = csv_reader
            .headers()
            .map_err(|e| parse_err(1, e.to_string()))?;
        if headers.len() != 2 || &headers[0] != "editor" || &headers[1] != "journal" {
            return Err(parse_err(1, "expected header `editor,journal`"));
        }
    }
    let mut network = AffiliationNetwork::new();
    let mut duplicate_rows = 0usize;
    for record in csv_reader.records() {
        let record = record.map_err(|e| {
            let line = e
                .position()
                .map(|p| p.line() as usize)
                .unwrap_or(0);
            parse_err(line, e.to_string())
        })?;
        let line = record
            .position()
            .map(|p| p.line() as usize)
            .unwrap_or(0);
        if record.len() != 2 {
            return Err(parse_err(
                line,
                format!("expected 2 fields, found {}", record.len()),
            ));
        }
        let editor = record[0].trim();
        let journal = record[1].trim();
        if editor.is_empty() || journal.is_empty() {
            return Err(parse_err(line, "empty editor or journal field"));
        }
        if !network.add_seat(editor, journal) {
            duplicate_rows += 1;
        }
    }
    Ok(AffiliationIngest {
        network,
        duplicate_rows,
    })
}

/// Result of reading a Pajek `.net` file.
#[derive(Debug)]
pub struct PajekIngest {
    pub graph: JournalGraph,
    /// Vertex lines that carried coordinates (ignored).
    pub coordinate_lines: usize,
}

/// Parses a Pajek `.net` network: `*Vertices n`, n vertex lines with 1-based
/// ids and quoted labels, then `*Edges` lines `u v value` (value optional,
/// default 1). Ids are remapped to 0-based dense indices in file order.
pub fn read_pajek_net(reader: impl Read) -> Result<PajekIngest, IngestError> {
    #[derive(PartialEq)]
    enum Section {
        Preamble,
        Vertices,
        Edges,
    }
    let mut graph = JournalGraph::new();
    let mut section = Section::Preamble;
    let mut declared = 0usize;
    let mut seen_vertices = 0usize;
    let mut coordinate_lines = 0usize;

    for (idx, line) in BufReader::new(reader).lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('*') {
            let mut parts = rest.split_whitespace();
            let keyword = parts.next().unwrap_or("").to_ascii_lowercase();
            match keyword.as_str() {
                "vertices" => {
                    let count = parts
                        .next()
                        .ok_or_else(|| parse_err(line_no, "*Vertices without a count"))?;
                    declared = count.parse().map_err(|_| {
                        parse_err(line_no, format!("invalid vertex count {count:?}"))
                    })?;
                    section = Section::Vertices;
                }
                "edges" => {
                    if seen_vertices != declared {
                        return Err(parse_err(
                            line_no,
                            format!(
                                "vertex count mismatch: declared {declared}, found {seen_vertices}"
                            ),
                        ));
                    }
                    section = Section::Edges;
                }
                "arcs" => return Err(IngestError::UnsupportedDirected { line: line_no }),
                other => {
                    return Err(parse_err(line_no, format!("unsupported section *{other}")))
                }
            }
            continue;
        }
        match section {
            Section::Preamble => {
                return Err(parse_err(line_no, "data before *Vertices section"))
            }
            Section::Vertices => {
                let (id, label, had_coords) = parse_vertex_line(trimmed, line_no)?;
                if id != seen_vertices + 1 {
                    return Err(parse_err(
                        line_no,
                        format!("expected vertex id {}, found {id}", seen_vertices + 1),
                    ));
                }
                if seen_vertices >= declared {
                    return Err(parse_err(
                        line_no,
                        format!("more than the declared {declared} vertices"),
                    ));
                }
                graph
                    .add_vertex(&label)
                    .map_err(|source| IngestError::Graph {
                        line: line_no,
                        source,
                    })?;
                seen_vertices += 1;
                if had_coords {
                    coordinate_lines += 1;
                }
            }
            Section::Edges => {
                let mut parts = trimmed.split_whitespace();
                let u: usize = parse_int(parts.next(), "edge source", line_no)?;
                let v: usize = parse_int(parts.next(), "edge target", line_no)?;
                let value: i64 = match parts.next() {
                    Some(tok) => tok
                        .parse()
                        .map_err(|_| parse_err(line_no, format!("non-integer edge value {tok:?}")))?,
                    None => 1,
                };
                if value < 1 {
                    return Err(parse_err(line_no, format!("edge value {value} must be >= 1")));
                }
                for id in [u, v] {
                    if id == 0 || id > declared {
                        return Err(IngestError::UnknownVertex { line: line_no, id });
                    }
                }
                graph
                    .add_edge(VertexId::new(u - 1), VertexId::new(v - 1), value as u32)
                    .map_err(|source| IngestError::Graph {
                        line: line_no,
                        source,
                    })?;
            }
        }
    }
    if section == Section::Vertices && seen_vertices != declared {
        return Err(parse_err(
            0,
            format!("vertex count mismatch: declared {declared}, found {seen_vertices}"),
        ));
    }
    Ok(PajekIngest {
        graph,
        coordinate_lines,
    })
}

fn parse_int(token: Option<&str>, what: &str, line: usize) -> Result<usize, IngestError> {
    let tok = token.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| parse_err(line, format!("invalid {what} {tok:?}")))
}

/// Splits a vertex line into (1-based id, label, had-coordinates). Labels
/// are normally double-quoted, with doubled quotes as the escape; a bare
/// token is accepted as a fallback.
fn parse_vertex_line(line: &str, line_no: usize) -> Result<(usize, String, bool), IngestError> {
    let mut chars = line.char_indices();
    let id_end = line
        .find(char::is_whitespace)
        .ok_or_else(|| parse_err(line_no, "vertex line without a label"))?;
    let id: usize = line[..id_end]
        .parse()
        .map_err(|_| parse_err(line_no, format!("invalid vertex id {:?}", &line[..id_end])))?;
    let rest = line[id_end..].trim_start();
    if let Some(stripped) = rest.strip_prefix('"') {
        let mut label = String::new();
        let mut iter = stripped.chars().peekable();
        let mut closed = false;
        while let Some(c) = iter.next() {
            if c == '"' {
                if iter.peek() == Some(&'"') {
                    label.push('"');
                    iter.next();
                } else {
                    closed = true;
                    break;
                }
            } else {
                label.push(c);
            }
        }
        if !closed {
            return Err(parse_err(line_no, "unterminated quoted label"));
        }
        let trailing: String = iter.collect();
        let had_coords = !trailing.trim().is_empty();
        Ok((id, label, had_coords))
    } else {
        let _ = &mut chars; // id parsing done above
        let mut parts = rest.split_whitespace();
        let label = parts
            .next()
            .ok_or_else(|| parse_err(line_no, "vertex line without a label"))?;
        let had_coords = parts.next().is_some();
        Ok((id, label.to_string(), had_coords))
    }
}

fn quote_label(label: &str) -> String {
    format!("\"{}\"", label.replace('"', "\"\""))
}

/// Writes the canonical Pajek form: vertex lines in id order with quoted
/// labels, edge lines `u v value` with `u < v` sorted by (u, v), the value
/// written even when 1.
pub fn write_pajek_net(g: &JournalGraph, writer: &mut impl Write) -> std::io::Result<()> {
    writeln!(writer, "*Vertices {}", g.vertex_count())?;
    for v in g.vertices() {
        writeln!(writer, "{} {}", v.index() + 1, quote_label(g.label(v)))?;
    }
    writeln!(writer, "*Edges")?;
    let mut edges: Vec<_> = g.edges().to_vec();
    edges.sort_by_key(|e| (e.u, e.v));
    for e in edges {
        writeln!(writer, "{} {} {}", e.u.index() + 1, e.v.index() + 1, e.value)?;
    }
    Ok(())
}

pub fn pajek_net_to_string(g: &JournalGraph) -> String {
    let mut buf = Vec::new();
    write_pajek_net(g, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("labels are valid UTF-8")
}

/// Writes a Pajek `.clu` partition: `*Vertices n` then one 1-based component
/// number per vertex in id order. Component numbering follows the partition's
/// own ordering (decreasing size, ties by smallest member id).
pub fn write_pajek_clu(p: &ComponentPartition, writer: &mut impl Write) -> std::io::Result<()> {
    writeln!(writer, "*Vertices {}", p.assignment.len())?;
    for &c in &p.assignment {
        writeln!(writer, "{}", c + 1)?;
    }
    Ok(())
}

/// One row of the per-journal fixture table: the three centrality values at
/// print precision with their published competition ranks.
#[derive(Clone, Debug, PartialEq)]
pub struct FixtureRowA1 {
    pub journal: String,
    pub degree: u32,
    pub normalized_degree: f64,
    pub rank_degree: u32,
    pub closeness: f64,
    pub rank_closeness: u32,
    pub betweenness_x100: f64,
    pub rank_betweenness: u32,
}

/// Reads the 8-column per-journal fixture CSV.
pub fn read_fixture_a1(reader: impl Read) -> Result<Vec<FixtureRowA1>, IngestError> {
    let mut csv_reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(reader);
    let mut rows = Vec::new();
    for record in csv_reader.records() {
        let record = record.map_err(|e| {
            parse_err(e.position().map(|p| p.line() as usize).unwrap_or(0), e.to_string())
        })?;
        let line = record.position().map(|p| p.line() as usize).unwrap_or(0);
        if record.len() != 8 {
            return Err(parse_err(
                line,
                format!("expected 8 fields, found {}", record.len()),
            ));
        }
        let field = |i: usize| record[i].trim().to_string();
        let num = |i: usize| -> Result<f64, IngestError> {
            record[i]
                .trim()
                .parse()
                .map_err(|_| parse_err(line, format!("non-numeric field {:?}", &record[i])))
        };
        let int = |i: usize| -> Result<u32, IngestError> {
            record[i]
                .trim()
                .parse()
                .map_err(|_| parse_err(line, format!("non-integer field {:?}", &record[i])))
        };
        rows.push(FixtureRowA1 {
            journal: field(0),
            degree: int(1)?,
            normalized_degree: num(2)?,
            rank_degree: int(3)?,
            closeness: num(4)?,
            rank_closeness: int(5)?,
            betweenness_x100: num(6)?,
            rank_betweenness: int(7)?,
        });
    }
    Ok(rows)
}

/// One row of a distribution fixture (`value,freq,freq_pct`).
#[derive(Clone, Debug, PartialEq)]
pub struct FixtureDistRow {
    pub value: u64,
    pub freq: u64,
    pub freq_pct: f64,
}

/// Reads a 3-column distribution fixture (Table I / Table III shape). The
/// header names are not checked beyond the column count, so the same reader
/// serves both tables.
pub fn read_fixture_distribution(reader: impl Read) -> Result<Vec<FixtureDistRow>, IngestError> {
    let mut csv_reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(reader);
    let mut rows = Vec::new();
    for record in csv_reader.records() {
        let record = record.map_err(|e| {
            parse_err(e.position().map(|p| p.line() as usize).unwrap_or(0), e.to_string())
        })?;
        let line = record.position().map(|p| p.line() as usize).unwrap_or(0);
        if record.len() != 3 {
            return Err(parse_err(
                line,
                format!("expected 3 fields, found {}", record.len()),
            ));
        }
        let parse = |i: usize, what: &str| -> Result<u64, IngestError> {
            record[i]
                .trim()
                .parse()
                .map_err(|_| parse_err(line, format!("non-integer {what} {:?}", &record[i])))
        };
        let pct: f64 = record[2]
            .trim()
            .parse()
            .map_err(|_| parse_err(line, format!("non-numeric percentage {:?}", &record[2])))?;
        rows.push(FixtureDistRow {
            value: parse(0, "value")?,
            freq: parse(1, "frequency")?,
            freq_pct: pct,
        });
    }
    Ok(rows)
}

fn csv_quote(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

/// Writes a centrality report in the fixture column order; values at 3
/// decimal places, betweenness multiplied by 100 as in the published table.
pub fn write_centrality_csv(
    report: &CentralityReport,
    writer: &mut impl Write,
) -> std::io::Result<()> {
    writeln!(
        writer,
        "journal,degree,normalized_degree,rank_degree,closeness,rank_closeness,betweenness_x100,rank_betweenness"
    )?;
    for i in 0..report.len() {
        writeln!(
            writer,
            "{},{},{:.3},{},{:.3},{},{:.3},{}",
            csv_quote(&report.labels[i]),
            report.degree[i],
            report.normalized_degree[i],
            report.rank_degree[i],
            report.closeness[i],
            report.rank_closeness[i],
            report.betweenness[i] * 100.0,
            report.rank_betweenness[i],
        )?;
    }
    Ok(())
}

pub fn write_summary_csv(summary: &NetworkSummary, writer: &mut impl Write) -> std::io::Result<()> {
    writeln!(writer, "statistic,value")?;
    writeln!(writer, "journals,{}", summary.journals)?;
    writeln!(writer, "editors,{}", summary.editors)?;
    writeln!(writer, "seats,{}", summary.seats)?;
    writeln!(writer, "mean_seats_per_journal,{:.3}", summary.mean_seats_per_journal)?;
    writeln!(writer, "mean_participation,{:.3}", summary.mean_participation)?;
    writeln!(writer, "lines,{}", summary.lines)?;
    writeln!(writer, "density,{:.3}", summary.density)?;
    writeln!(writer, "mean_degree,{:.3}", summary.mean_degree)?;
    writeln!(writer, "median_degree,{:.3}", summary.median_degree)?;
    writeln!(writer, "degree_sd,{:.3}", summary.degree_sd)?;
    Ok(())
}

/// Writes a distribution table with the fixture schema; `value_header` names
/// the first column (`degree` or `line_value`).
pub fn write_distribution_csv(
    table: &DistributionTable,
    value_header: &str,
    writer: &mut impl Write,
) -> std::io::Result<()> {
    writeln!(writer, "{value_header},freq,freq_pct")?;
    for row in &table.rows {
        writeln!(writer, "{},{},{:.2}", row.value, row.freq, row.freq_pct)?;
    }
    Ok(())
}

pub fn write_centralization_csv(
    idx: &CentralizationIndices,
    writer: &mut impl Write,
) -> std::io::Result<()> {
    writeln!(writer, "index,value")?;
    writeln!(writer, "degree_centralization,{:.3}", idx.degree)?;
    writeln!(writer, "closeness_centralization,{:.3}", idx.closeness)?;
    writeln!(writer, "betweenness_centralization,{:.3}", idx.betweenness)?;
    writeln!(
        writer,
        "closeness_subnetwork_size,{}",
        idx.closeness_subnetwork_size
    )?;
    Ok(())
}

/// One row per threshold: `m,components,journals,isolated,giant`.
pub fn write_slices_csv(censuses: &[SliceCensus], writer: &mut impl Write) -> std::io::Result<()> {
    writeln!(writer, "m,components,journals,isolated,giant")?;
    for c in censuses {
        writeln!(
            writer,
            "{},{},{},{},{}",
            c.m, c.component_count_nontrivial, c.journals_in_nontrivial, c.isolated, c.giant_size
        )?;
    }
    Ok(())
}

/// Per-component text blocks: members with their full-network betweenness,
/// then the induced valued edges.
pub fn write_component_members(
    groups: &[ComponentMembers],
    writer: &mut impl Write,
) -> std::io::Result<()> {
    for g in groups {
        writeln!(writer, "component {} ({} journals)", g.component + 1, g.members.len())?;
        for (label, betweenness) in &g.members {
            writeln!(writer, "  {label} (betweenness {:.3})", betweenness * 100.0)?;
        }
        for (u, v, value) in &g.edges {
            writeln!(writer, "  {u} -- {v} : {value}")?;
        }
        writeln!(writer)?;
    }
    Ok(())
}
