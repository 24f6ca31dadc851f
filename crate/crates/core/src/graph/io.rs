//! Text formats.
//!
//! Graphs and digraphs: first line `n m`, then `m` lines `u v`.
//! Hypergraphs: first line `d n m`, then `m` lines of `d` ids.

use std::io::{BufRead, Write};

use super::{Adjacency, Digraph, Graph, Hypergraph};
use crate::error::{GraphError, Result};

struct Tokens<R> {
    reader: R,
    line: usize,
    buf: String,
}

impl<R: BufRead> Tokens<R> {
    fn new(reader: R) -> Self {
        Self { reader, line: 0, buf: String::new() }
    }

    /// Next non-empty line split into integers; `None` at end of input.
    fn next_row(&mut self) -> Result<Option<Vec<u64>>> {
        loop {
            self.buf.clear();
            self.line += 1;
            let read = self.reader.read_line(&mut self.buf).map_err(|e| GraphError::Parse {
                line: self.line,
                msg: e.to_string(),
            })?;
            if read == 0 {
                return Ok(None);
            }
            let trimmed = self.buf.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let row = trimmed
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<u64>().map_err(|_| GraphError::Parse {
                        line: self.line,
                        msg: format!("not a nonnegative integer: {tok:?}"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok(Some(row));
        }
    }

    fn expect_row(&mut self, width: usize) -> Result<Vec<u64>> {
        match self.next_row()? {
            Some(row) if row.len() == width => Ok(row),
            Some(row) => Err(GraphError::Parse {
                line: self.line,
                msg: format!("expected {width} fields, found {}", row.len()),
            }),
            None => Err(GraphError::Parse { line: self.line, msg: "unexpected end of input".into() }),
        }
    }

    fn expect_end(&mut self, expected: u64) -> Result<()> {
        let mut extra = 0u64;
        while self.next_row()?.is_some() {
            extra += 1;
        }
        if extra > 0 {
            return Err(GraphError::CountMismatch { expected, found: expected + extra });
        }
        Ok(())
    }
}

fn id(x: u64, n: usize) -> Result<u32> {
    if x >= n as u64 {
        return Err(GraphError::VertexOutOfRange { vertex: x, n });
    }
    Ok(x as u32)
}

fn read_pairs<R: BufRead>(reader: R) -> Result<(usize, Vec<(u32, u32)>)> {
    let mut tokens = Tokens::new(reader);
    let header = tokens.expect_row(2)?;
    let (n, m) = (header[0] as usize, header[1]);
    if n > u32::MAX as usize {
        return Err(GraphError::Parameter(format!("n = {n} exceeds 32-bit ids")));
    }
    let mut pairs = Vec::with_capacity(m.min(1 << 24) as usize);
    for _ in 0..m {
        let row = tokens.expect_row(2)?;
        pairs.push((id(row[0], n)?, id(row[1], n)?));
    }
    tokens.expect_end(m)?;
    Ok((n, pairs))
}

pub fn read_graph<R: BufRead>(reader: R) -> Result<Graph> {
    let (n, pairs) = read_pairs(reader)?;
    Graph::from_edges(n, &pairs)
}

pub fn read_digraph<R: BufRead>(reader: R) -> Result<Digraph> {
    let (n, pairs) = read_pairs(reader)?;
    Digraph::from_arcs(n, &pairs)
}

pub fn read_hypergraph<R: BufRead>(reader: R) -> Result<Hypergraph> {
    let mut tokens = Tokens::new(reader);
    let header = tokens.expect_row(3)?;
    let (d, n, m) = (header[0] as usize, header[1] as usize, header[2]);
    if d < 2 {
        return Err(GraphError::BadUniformity(d));
    }
    let mut edges = Vec::new();
    for _ in 0..m {
        let row = tokens.expect_row(d)?;
        edges.push(row.iter().map(|&x| id(x, n)).collect::<Result<Vec<_>>>()?);
    }
    tokens.expect_end(m)?;
    Hypergraph::from_edges(n, d, &edges)
}

pub fn write_graph<W: Write>(g: &Graph, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{} {}", g.n(), g.m())?;
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

pub fn write_digraph<W: Write>(g: &Digraph, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{} {}", g.n(), g.arc_count())?;
    for (u, v) in g.arcs() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

pub fn write_hypergraph<W: Write>(h: &Hypergraph, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{} {} {}", h.d(), h.n(), h.edge_count())?;
    for e in h.edges() {
        let line: Vec<String> = e.iter().map(u32::to_string).collect();
        writeln!(out, "{}", line.join(" "))?;
    }
    Ok(())
}
