//! Text formats.
//!
//! Graphs: `p <n> <m>` header, then `m` lines `e <u> <v> [w]` with 0-based
//! ids and optional rational weight (`3` or `3/2`); `#` starts a comment.
//! The writer is canonical (edges sorted, lowest endpoint first, unit
//! weights omitted), so write-then-read is byte-identical for canonical
//! files.
//!
//! Certificates: one line per round, `r <i> : u1-v1 u2-v2 ...`.
//! Cuts: `c <u> <v> <numerator>/<h>`; demands: `d <u> <v> <value>`;
//! flows: `f <value> : v0 v1 ... vk`. All little languages report parse
//! errors with line numbers.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_rational::Rational64;
use num_traits::One;

use crate::cuts::{Demand, Flow, MovingCut};
use crate::error::{Error, Result};
use crate::graph::{key, Graph, VertexId};
use crate::pg::PgSequence;

pub type RatGraph = Graph<Rational64>;

/// Parses `a` or `a/b` into an exact rational (command-line flavor).
pub fn parse_rational_str(tok: &str) -> Result<Rational64> {
    parse_rational(tok, 0).map_err(|_| Error::InvalidParameter(format!("invalid rational '{tok}'")))
}

fn parse_rational(tok: &str, line: usize) -> Result<Rational64> {
    let mk_err = || Error::Parse { line, msg: format!("invalid rational '{tok}'") };
    match tok.split_once('/') {
        Some((num, den)) => {
            let num: i64 = num.parse().map_err(|_| mk_err())?;
            let den: i64 = den.parse().map_err(|_| mk_err())?;
            if den == 0 {
                return Err(Error::Parse { line, msg: format!("zero denominator in '{tok}'") });
            }
            Ok(Rational64::new(num, den))
        }
        None => {
            let num: i64 = tok.parse().map_err(|_| mk_err())?;
            Ok(Rational64::from_integer(num))
        }
    }
}

fn format_rational(r: &Rational64) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse().map_err(|_| Error::Parse { line, msg: format!("invalid {what} '{tok}'") })
}

/// Lines with their 1-based numbers, comments and blanks dropped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn read_graph(text: &str) -> Result<RatGraph> {
    let mut lines = content_lines(text);
    let (pline_no, pline) = lines
        .next()
        .ok_or(Error::Parse { line: 1, msg: "missing 'p <n> <m>' header".to_string() })?;
    let toks: Vec<&str> = pline.split_ascii_whitespace().collect();
    if toks.len() != 3 || toks[0] != "p" {
        return Err(Error::Parse { line: pline_no, msg: format!("expected 'p <n> <m>', got '{pline}'") });
    }
    let n = parse_usize(toks[1], pline_no, "vertex count")?;
    let m = parse_usize(toks[2], pline_no, "edge count")?;

    let mut edges: Vec<(VertexId, VertexId, Rational64)> = Vec::with_capacity(m);
    for (line_no, line) in lines {
        let toks: Vec<&str> = line.split_ascii_whitespace().collect();
        if toks.is_empty() || toks[0] != "e" || !(toks.len() == 3 || toks.len() == 4) {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("expected 'e <u> <v> [w]', got '{line}'"),
            });
        }
        let u = parse_usize(toks[1], line_no, "vertex id")?;
        let v = parse_usize(toks[2], line_no, "vertex id")?;
        let w = if toks.len() == 4 {
            parse_rational(toks[3], line_no)?
        } else {
            Rational64::one()
        };
        edges.push((u, v, w));
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: 1,
            msg: format!("header promises {m} edges, found {}", edges.len()),
        });
    }
    Graph::weighted(n, &edges)
}

pub fn read_graph_path(path: impl AsRef<Path>) -> Result<RatGraph> {
    read_graph(&fs::read_to_string(path)?)
}

/// Canonical form: `p` header, edges sorted by normalized endpoints, unit
/// weights omitted.
pub fn write_graph(g: &RatGraph) -> String {
    let mut rows: Vec<((VertexId, VertexId), Rational64)> = g
        .edges()
        .iter()
        .map(|e| (key(e.u, e.v), e.len))
        .collect();
    rows.sort_by_key(|&(k, _)| k);
    let mut out = String::new();
    let _ = writeln!(out, "p {} {}", g.vertex_count(), g.edge_count());
    for ((u, v), w) in rows {
        if w.is_one() {
            let _ = writeln!(out, "e {u} {v}");
        } else {
            let _ = writeln!(out, "e {u} {v} {}", format_rational(&w));
        }
    }
    out
}

pub fn write_graph_path(g: &RatGraph, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, write_graph(g))?;
    Ok(())
}

pub fn write_certificate(seq: &PgSequence) -> String {
    let mut out = String::new();
    for (i, round) in seq.rounds.iter().enumerate() {
        let edges: Vec<String> = round.iter().map(|(u, v)| format!("{u}-{v}")).collect();
        let _ = writeln!(out, "r {} : {}", i + 1, edges.join(" "));
    }
    out
}

pub fn write_certificate_path(seq: &PgSequence, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, write_certificate(seq))?;
    Ok(())
}

/// Reads a certificate; the vertex count is inferred as one past the largest
/// id mentioned (callers verifying against a graph pass its count anyway).
pub fn read_certificate(text: &str) -> Result<PgSequence> {
    let mut rounds = Vec::new();
    let mut max_vertex = 0usize;
    for (line_no, line) in content_lines(text) {
        let toks: Vec<&str> = line.split_ascii_whitespace().collect();
        if toks.len() < 3 || toks[0] != "r" || toks[2] != ":" {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("expected 'r <i> : u-v ...', got '{line}'"),
            });
        }
        let idx = parse_usize(toks[1], line_no, "round index")?;
        if idx != rounds.len() + 1 {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("round index {idx} out of order (expected {})", rounds.len() + 1),
            });
        }
        let mut round = Vec::new();
        for tok in &toks[3..] {
            let (u, v) = tok.split_once('-').ok_or(Error::Parse {
                line: line_no,
                msg: format!("invalid edge '{tok}'"),
            })?;
            let u = parse_usize(u, line_no, "vertex id")?;
            let v = parse_usize(v, line_no, "vertex id")?;
            max_vertex = max_vertex.max(u).max(v);
            round.push((u, v));
        }
        rounds.push(round);
    }
    let n = if rounds.iter().all(|r| r.is_empty()) { 0 } else { max_vertex + 1 };
    Ok(PgSequence::new(n, rounds))
}

pub fn read_certificate_path(path: impl AsRef<Path>) -> Result<PgSequence> {
    read_certificate(&fs::read_to_string(path)?)
}

/// Writes a cut's support as `c <u> <v> <numerator>/<h>` lines, sorted by
/// endpoints. Numerators are kept literal over the grid denominator.
pub fn write_cut(g: &RatGraph, cut: &MovingCut) -> Result<String> {
    let mut rows = Vec::new();
    for (eid, k) in cut.support() {
        let e = g.edge(eid)?;
        rows.push((key(e.u, e.v), k));
    }
    rows.sort_unstable();
    let mut out = String::new();
    for ((u, v), k) in rows {
        let _ = writeln!(out, "c {u} {v} {k}/{}", cut.h());
    }
    Ok(out)
}

/// Reads a cut against `g`: endpoints resolve to edge ids and all lines must
/// share the grid denominator `h`. Zero-numerator lines are dropped.
pub fn read_cut(text: &str, g: &RatGraph) -> Result<MovingCut> {
    let mut entries: Vec<(usize, u64, usize)> = Vec::new();
    let mut h: Option<(u64, usize)> = None;
    for (line_no, line) in content_lines(text) {
        let toks: Vec<&str> = line.split_ascii_whitespace().collect();
        if toks.len() != 4 || toks[0] != "c" {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("expected 'c <u> <v> <k>/<h>', got '{line}'"),
            });
        }
        let u = parse_usize(toks[1], line_no, "vertex id")?;
        let v = parse_usize(toks[2], line_no, "vertex id")?;
        let (k, denom) = toks[3].split_once('/').ok_or(Error::Parse {
            line: line_no,
            msg: format!("cut value '{}' must be '<numerator>/<h>'", toks[3]),
        })?;
        let k: u64 = k
            .parse()
            .map_err(|_| Error::Parse { line: line_no, msg: format!("invalid numerator '{k}'") })?;
        let denom: u64 = denom
            .parse()
            .map_err(|_| Error::Parse { line: line_no, msg: format!("invalid denominator '{denom}'") })?;
        match h {
            None => h = Some((denom, line_no)),
            Some((prev, _)) if prev != denom => {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("mixed cut denominators {prev} and {denom}"),
                });
            }
            _ => {}
        }
        let eid = g
            .find_edge(u, v)
            .ok_or(Error::Parse { line: line_no, msg: format!("edge {{{u}, {v}}} not in graph") })?;
        entries.push((eid, k, line_no));
    }
    let (h, _) = h.ok_or(Error::Parse { line: 1, msg: "cut file has no entries".to_string() })?;
    let mut cut = MovingCut::new(h)?;
    for (eid, k, line_no) in entries {
        cut.set_numerator(eid, k)
            .map_err(|e| Error::Parse { line: line_no, msg: e.to_string() })?;
    }
    Ok(cut)
}

pub fn write_demand(d: &Demand<Rational64>) -> String {
    let mut out = String::new();
    for (&(u, v), val) in d.iter() {
        let _ = writeln!(out, "d {u} {v} {}", format_rational(val));
    }
    out
}

pub fn read_demand(text: &str, n: usize) -> Result<Demand<Rational64>> {
    let mut d = Demand::new(n);
    for (line_no, line) in content_lines(text) {
        let toks: Vec<&str> = line.split_ascii_whitespace().collect();
        if toks.len() != 4 || toks[0] != "d" {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("expected 'd <u> <v> <value>', got '{line}'"),
            });
        }
        let u = parse_usize(toks[1], line_no, "vertex id")?;
        let v = parse_usize(toks[2], line_no, "vertex id")?;
        let val = parse_rational(toks[3], line_no)?;
        d.add(u, v, val)
            .map_err(|e| Error::Parse { line: line_no, msg: e.to_string() })?;
    }
    Ok(d)
}

pub fn write_flow(f: &Flow<Rational64>) -> String {
    let mut out = String::new();
    for (path, value) in f.paths() {
        let verts: Vec<String> = path.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "f {} : {}", format_rational(value), verts.join(" "));
    }
    out
}

pub fn read_flow(text: &str) -> Result<Flow<Rational64>> {
    let mut f = Flow::new();
    for (line_no, line) in content_lines(text) {
        let toks: Vec<&str> = line.split_ascii_whitespace().collect();
        if toks.len() < 4 || toks[0] != "f" || toks[2] != ":" {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("expected 'f <value> : v0 v1 ...', got '{line}'"),
            });
        }
        let value = parse_rational(toks[1], line_no)?;
        let path: Result<Vec<usize>> = toks[3..]
            .iter()
            .map(|t| parse_usize(t, line_no, "vertex id"))
            .collect();
        f.add_path(path?, value)
            .map_err(|e| Error::Parse { line: line_no, msg: e.to_string() })?;
    }
    Ok(f)
}

/// One experiment row. `girth = None` encodes an acyclic output;
/// `arboricity` is the exact value when computed within budget, otherwise a
/// lower bound flagged by `arboricity_exact = false`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub n: usize,
    pub m_input: usize,
    pub t: u32,
    pub algorithm: String,
    pub strategy: String,
    pub seed: u64,
    pub m_spanner: usize,
    pub rounds: usize,
    pub girth: Option<u64>,
    pub degeneracy: u32,
    pub arboricity: u32,
    pub arboricity_exact: bool,
    pub max_stretch: Option<Rational64>,
    pub millis: u128,
}

pub const REPORT_HEADER: &str =
    "n,m_input,t,algorithm,strategy,seed,m_spanner,rounds,girth,degeneracy,arboricity,max_stretch,millis";

impl ReportRow {
    pub fn to_csv(&self) -> String {
        let girth = match self.girth {
            Some(g) => g.to_string(),
            None => "inf".to_string(),
        };
        let arble = if self.arboricity_exact {
            self.arboricity.to_string()
        } else {
            format!(">={}", self.arboricity)
        };
        let stretch = match &self.max_stretch {
            Some(s) => format_rational(s),
            None => format!(">{}", self.t),
        };
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.n,
            self.m_input,
            self.t,
            self.algorithm,
            self.strategy,
            self.seed,
            self.m_spanner,
            self.rounds,
            girth,
            self.degeneracy,
            arble,
            stretch,
            self.millis
        )
    }
}

pub fn write_report_csv(rows: &[ReportRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{REPORT_HEADER}");
    for row in rows {
        let _ = writeln!(out, "{}", row.to_csv());
    }
    out
}

pub fn write_report_csv_path(rows: &[ReportRow], path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, write_report_csv(rows))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn canonical_round_trip_is_byte_identical() {
        let g = crate::generate::complete(4).unwrap();
        let text = write_graph(&g);
        let back = read_graph(&text).unwrap();
        assert_eq!(back.edge_count(), 6);
        assert_eq!(write_graph(&back), text);
    }

    #[test]
    fn weighted_round_trip_preserves_rationals() {
        let g = RatGraph::weighted(
            3,
            &[(0, 1, Rational64::new(3, 2)), (1, 2, Rational64::from_integer(1))],
        )
        .unwrap();
        let text = write_graph(&g);
        assert!(text.contains("e 0 1 3/2"));
        assert!(text.contains("e 1 2\n"));
        let back = read_graph(&text).unwrap();
        assert_eq!(write_graph(&back), text);
    }

    #[test]
    fn truncated_edge_line_names_its_line() {
        let text = "p 4 2\ne 0 1\ne 1\n";
        match read_graph(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn comments_and_blanks_are_ignored() {
        let text = "# a comment\np 3 1\n\n# another\ne 0 2\n";
        let g = read_graph(text).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert!(g.contains_edge(0, 2));
    }

    #[test]
    fn certificate_round_trip() {
        let seq = PgSequence::new(4, vec![vec![(0, 1), (2, 3)], vec![(1, 2), (3, 0)]]);
        let text = write_certificate(&seq);
        assert_eq!(text, "r 1 : 0-1 2-3\nr 2 : 0-3 1-2\n");
        let back = read_certificate(&text).unwrap();
        assert_eq!(back, seq);
    }

    #[test]
    fn cut_round_trip_keeps_literal_numerators() {
        let g = crate::generate::cycle(4).unwrap();
        let mut cut = MovingCut::new(6).unwrap();
        cut.set_numerator(0, 3).unwrap();
        cut.set_numerator(2, 6).unwrap();
        let text = write_cut(&g, &cut).unwrap();
        assert!(text.contains("3/6"), "numerators stay unreduced: {text}");
        let back = read_cut(&text, &g).unwrap();
        assert_eq!(back, cut);
    }

    #[test]
    fn demand_and_flow_round_trips() {
        let mut d = Demand::new(4);
        d.add(0, 2, Rational64::new(1, 3)).unwrap();
        d.add(1, 3, Rational64::from_integer(2)).unwrap();
        let back = read_demand(&write_demand(&d), 4).unwrap();
        assert_eq!(back, d);
        assert!(back.loads_consistent());

        let mut f = Flow::new();
        f.add_path(vec![0, 1, 2], Rational64::new(1, 2)).unwrap();
        let back = read_flow(&write_flow(&f)).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn report_rows_format_girth_and_stretch_sentinels() {
        let row = ReportRow {
            n: 8,
            m_input: 12,
            t: 3,
            algorithm: "par".to_string(),
            strategy: "greedy".to_string(),
            seed: 7,
            m_spanner: 12,
            rounds: 3,
            girth: None,
            degeneracy: 3,
            arboricity: 2,
            arboricity_exact: true,
            max_stretch: Some(Rational64::zero() + Rational64::from_integer(1)),
            millis: 5,
        };
        let csv = row.to_csv();
        assert!(csv.contains(",inf,"));
        assert!(csv.ends_with(",5"));
        let bad = ReportRow { max_stretch: None, ..row };
        assert!(bad.to_csv().contains(">3"));
    }
}
