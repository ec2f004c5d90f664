//! Edge-list and graph6 text formats.
//!
//! Edge list: lines starting with `#` are comments, blank lines are ignored,
//! the first remaining line is the order `n` and every following line is an
//! edge `u v`.
//!
//! graph6: <https://users.cecs.anu.edu.au/~bdm/data/formats.txt>

use std::fmt::Write as _;

use super::Graph;
use crate::error::{Error, Result};

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (first, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        msg: "missing vertex count".into(),
    })?;
    let n: usize = header.parse().map_err(|_| Error::Parse {
        line: first,
        msg: format!("expected vertex count, found `{header}`"),
    })?;

    let mut edges = Vec::new();
    for (line, text) in lines {
        let fields: Vec<&str> = text.split_whitespace().collect();
        let parse = |s: &str| {
            s.parse::<usize>().map_err(|_| Error::Parse {
                line,
                msg: format!("`{s}` is not a vertex"),
            })
        };
        let [a, b] = fields[..] else {
            return Err(Error::Parse {
                line,
                msg: format!("expected `u v`, found `{text}`"),
            });
        };
        let (u, v) = (parse(a)?, parse(b)?);
        if u >= n || v >= n {
            return Err(Error::Parse {
                line,
                msg: format!("vertex {} out of range for order {n}", u.max(v)),
            });
        }
        if u == v {
            return Err(Error::Parse {
                line,
                msg: format!("self-loop at vertex {u}"),
            });
        }
        edges.push((u, v));
    }
    Graph::new(n, edges)
}

/// Inverse of [`parse_edge_list`].
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    if let Some(name) = g.name() {
        let _ = writeln!(out, "# {name}");
    }
    let _ = writeln!(out, "{}", g.order());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Decodes one graph6 line. The `>>graph6<<` header is optional.
pub fn parse_graph6(line: &str) -> Result<Graph> {
    let err = |msg: String| Error::Parse { line: 1, msg };
    let body = line.trim();
    let body = body.strip_prefix(">>graph6<<").unwrap_or(body);
    let bytes: Vec<u8> = body
        .bytes()
        .map(|b| {
            if (63..=126).contains(&b) {
                Ok(b - 63)
            } else {
                Err(err(format!("byte {b} outside graph6 range 63..=126")))
            }
        })
        .collect::<Result<_>>()?;

    let (n, header_len) = match bytes.as_slice() {
        [] => return Err(err("empty graph6 string".into())),
        [63, 63, rest @ ..] if rest.len() >= 6 => (
            rest[..6]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | b as usize),
            8,
        ),
        [63, rest @ ..] if rest.len() >= 3 && rest[0] != 63 => (
            rest[..3]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | b as usize),
            4,
        ),
        [63, ..] => return Err(err("truncated graph6 size header".into())),
        [b, ..] => (*b as usize, 1),
    };

    let bits_needed = n * n.saturating_sub(1) / 2;
    let data = &bytes[header_len..];
    if data.len() != bits_needed.div_ceil(6) {
        return Err(err(format!(
            "expected {} data bytes for order {n}, found {}",
            bits_needed.div_ceil(6),
            data.len()
        )));
    }
    let mut edges = Vec::new();
    let mut pos = 0;
    for j in 1..n {
        for i in 0..j {
            if (data[pos / 6] >> (5 - pos % 6)) & 1 == 1 {
                edges.push((i, j));
            }
            pos += 1;
        }
    }
    Graph::new(n, edges)
}

/// Reads every non-empty line of a graph6 file.
pub fn read_graph6(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            parse_graph6(l).map_err(|e| match e {
                Error::Parse { msg, .. } => Error::Parse { line: i + 1, msg },
                other => other,
            })
        })
        .collect()
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    if n < 63 {
        out.push(n as u8);
    } else if n < 258_048 {
        out.push(63);
        out.extend((0..3).rev().map(|k| ((n >> (6 * k)) & 63) as u8));
    } else {
        out.extend([63, 63]);
        out.extend((0..6).rev().map(|k| ((n >> (6 * k)) & 63) as u8));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(acc << (6 - filled));
    }
    out.into_iter().map(|b| (b + 63) as char).collect()
}
