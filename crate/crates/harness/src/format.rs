//! Text formats for partitions and vertex sets.
//!
//! Biclique partitions: a header `bicliques n k`, then one line per member
//! `|L| |R| L... R...`. d-clique partitions: `dcliques d n k`, then one line
//! per member with the `d` part sizes followed by the ids of each part.
//! Vertex sets: one id per line. Blank lines and `#` comments are skipped.

use std::io::{BufRead, Write};

use biclique_core::partition::{DClique, DCliquePartition};
use biclique_core::{BicliquePartition, GraphError};

pub enum AnyPartition {
    Bicliques(BicliquePartition),
    DCliques(DCliquePartition),
}

fn parse_err(line: usize, msg: impl Into<String>) -> GraphError {
    GraphError::Parse { line, msg: msg.into() }
}

struct Lines<R> {
    reader: R,
    line: usize,
    buf: String,
}

impl<R: BufRead> Lines<R> {
    fn next(&mut self) -> Result<Option<Vec<String>>, GraphError> {
        loop {
            self.buf.clear();
            self.line += 1;
            if self.reader.read_line(&mut self.buf).map_err(|e| parse_err(self.line, e.to_string()))? == 0 {
                return Ok(None);
            }
            let t = self.buf.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            return Ok(Some(t.split_whitespace().map(str::to_owned).collect()));
        }
    }

    fn numbers(&mut self) -> Result<Option<Vec<u64>>, GraphError> {
        let Some(row) = self.next()? else { return Ok(None) };
        row.iter()
            .map(|tok| tok.parse::<u64>().map_err(|_| parse_err(self.line, format!("not a nonnegative integer: {tok:?}"))))
            .collect::<Result<Vec<_>, _>>()
            .map(Some)
    }

    fn expect_numbers(&mut self) -> Result<Vec<u64>, GraphError> {
        self.numbers()?.ok_or_else(|| parse_err(self.line, "unexpected end of input"))
    }
}

fn ids(row: &[u64], n: usize) -> Result<Vec<u32>, GraphError> {
    row.iter()
        .map(|&v| if v < n as u64 { Ok(v as u32) } else { Err(GraphError::VertexOutOfRange { vertex: v, n }) })
        .collect()
}

pub fn write_partition<W: Write>(p: &BicliquePartition, mut out: W) -> std::io::Result<()> {
    writeln!(out, "bicliques {} {}", p.host_n(), p.len())?;
    let mut line = String::new();
    for b in p.iter() {
        line.clear();
        line.push_str(&format!("{} {}", b.left.len(), b.right.len()));
        for v in b.left.iter().chain(b.right) {
            line.push(' ');
            line.push_str(&v.to_string());
        }
        writeln!(out, "{line}")?;
    }
    out.flush()
}

pub fn write_dpartition<W: Write>(p: &DCliquePartition, mut out: W) -> std::io::Result<()> {
    writeln!(out, "dcliques {} {} {}", p.d, p.host_n, p.len())?;
    for c in &p.cliques {
        let sizes = c.parts.iter().map(|s| s.len().to_string());
        let members = c.parts.iter().flatten().map(u32::to_string);
        writeln!(out, "{}", sizes.chain(members).collect::<Vec<_>>().join(" "))?;
    }
    out.flush()
}

pub fn read_any_partition<R: BufRead>(reader: R) -> Result<AnyPartition, GraphError> {
    let mut lines = Lines { reader, line: 0, buf: String::new() };
    let header = lines.next()?.ok_or_else(|| parse_err(1, "empty input"))?;
    let nums = |fields: &[String]| -> Result<Vec<u64>, GraphError> {
        fields.iter().map(|t| t.parse::<u64>().map_err(|_| parse_err(1, format!("bad header field {t:?}")))).collect()
    };
    match header.first().map(String::as_str) {
        Some("bicliques") if header.len() == 3 => {
            let h = nums(&header[1..])?;
            let (n, k) = (h[0] as usize, h[1]);
            let mut p = BicliquePartition::new(n);
            for index in 0..k {
                let row = lines.expect_numbers()?;
                if row.len() < 2 {
                    return Err(parse_err(lines.line, "missing side lengths"));
                }
                let (l, r) = (row[0] as usize, row[1] as usize);
                if row.len() != 2 + l + r {
                    return Err(parse_err(lines.line, format!("expected {} ids, found {}", l + r, row.len() - 2)));
                }
                let members = ids(&row[2..], n)?;
                p.push(&members[..l], &members[l..]);
                if !p.get(index as usize).is_well_formed() {
                    return Err(parse_err(lines.line, "sides must be nonempty, sorted and disjoint"));
                }
            }
            expect_end(&mut lines, k)?;
            Ok(AnyPartition::Bicliques(p))
        }
        Some("dcliques") if header.len() == 4 => {
            let h = nums(&header[1..])?;
            let (d, n, k) = (h[0] as usize, h[1] as usize, h[2]);
            if d < 2 {
                return Err(GraphError::BadUniformity(d));
            }
            let mut p = DCliquePartition::new(n, d);
            for _ in 0..k {
                let row = lines.expect_numbers()?;
                if row.len() < d {
                    return Err(parse_err(lines.line, "missing part sizes"));
                }
                let sizes: Vec<usize> = row[..d].iter().map(|&s| s as usize).collect();
                if row.len() != d + sizes.iter().sum::<usize>() {
                    return Err(parse_err(lines.line, "part sizes do not match the ids"));
                }
                let members = ids(&row[d..], n)?;
                let mut at = 0;
                let parts = sizes
                    .iter()
                    .map(|&s| {
                        at += s;
                        members[at - s..at].to_vec()
                    })
                    .collect();
                p.cliques.push(DClique { parts });
            }
            expect_end(&mut lines, k)?;
            Ok(AnyPartition::DCliques(p))
        }
        _ => Err(parse_err(lines.line, "expected a `bicliques n k` or `dcliques d n k` header")),
    }
}

pub fn read_partition<R: BufRead>(reader: R) -> Result<BicliquePartition, GraphError> {
    match read_any_partition(reader)? {
        AnyPartition::Bicliques(p) => Ok(p),
        AnyPartition::DCliques(_) => Err(parse_err(1, "expected a biclique partition, found d-cliques")),
    }
}

fn expect_end<R: BufRead>(lines: &mut Lines<R>, k: u64) -> Result<(), GraphError> {
    let mut extra = 0;
    while lines.next()?.is_some() {
        extra += 1;
    }
    if extra > 0 {
        return Err(GraphError::CountMismatch { expected: k, found: k + extra });
    }
    Ok(())
}

/// One id per line.
pub fn read_vertex_set<R: BufRead>(reader: R) -> Result<Vec<u32>, GraphError> {
    let mut lines = Lines { reader, line: 0, buf: String::new() };
    let mut out = Vec::new();
    while let Some(row) = lines.numbers()? {
        if row.len() != 1 {
            return Err(parse_err(lines.line, "expected one id per line"));
        }
        let v = u32::try_from(row[0]).map_err(|_| parse_err(lines.line, "id exceeds 32 bits"))?;
        out.push(v);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn biclique_round_trip() {
        let mut p = BicliquePartition::new(6);
        p.push(&[0, 1], &[2, 3, 4]);
        p.push(&[5], &[0]);
        let mut buf = Vec::new();
        write_partition(&p, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "bicliques 6 2\n2 3 0 1 2 3 4\n1 1 5 0\n");
        assert_eq!(read_partition(&buf[..]).unwrap(), p);
    }

    #[test]
    fn dclique_round_trip() {
        let mut p = DCliquePartition::new(5, 3);
        p.cliques.push(DClique { parts: vec![vec![0], vec![1, 2], vec![3, 4]] });
        let mut buf = Vec::new();
        write_dpartition(&p, &mut buf).unwrap();
        match read_any_partition(&buf[..]).unwrap() {
            AnyPartition::DCliques(q) => assert_eq!(q, p),
            AnyPartition::Bicliques(_) => panic!("wrong kind"),
        }
    }

    #[test]
    fn rejects_bad_partitions() {
        for text in ["", "bicliques 3 1\n1 1 0 0\n", "bicliques 3 1\n1 1 0 5\n", "bicliques 3 1\n", "bicliques 3 0\n1 1 0 1\n", "nope 1 2\n"] {
            assert!(read_partition(text.as_bytes()).is_err(), "{text:?}");
        }
    }

    #[test]
    fn vertex_sets() {
        assert_eq!(read_vertex_set("# S\n3\n\n1\n".as_bytes()).unwrap(), vec![3, 1]);
        assert!(read_vertex_set("1 2\n".as_bytes()).is_err());
        assert!(read_vertex_set("x\n".as_bytes()).is_err());
    }
}
