//! Plain-text edge lists.
//!
//! ```text
//! # optional comment lines
//! n m
//! u v
//! ...
//! ```
//!
//! Vertices are 0-based. Blank lines and lines starting with `#` are skipped.
//! Serialization always writes the canonical form: deduplicated arcs in
//! lexicographic order.

use std::fmt::Write as _;
use std::path::Path;

use super::Digraph;
use crate::error::{Error, Result};

pub fn parse_edge_list(text: &str) -> Result<Digraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing \"n m\" header".into(),
    })?;
    let [n, m] = parse_pair(header_line, header)?;

    let mut arcs = Vec::with_capacity(m);
    for (line, body) in lines {
        if arcs.len() == m {
            return Err(Error::Parse {
                line,
                message: format!("more arc lines than the {m} declared in the header"),
            });
        }
        let [u, v] = parse_pair(line, body)?;
        if u >= n || v >= n {
            return Err(Error::Parse {
                line,
                message: format!("vertex {} out of range for n = {n}", u.max(v)),
            });
        }
        if u == v {
            return Err(Error::Parse {
                line,
                message: format!("self-loop at vertex {u}"),
            });
        }
        arcs.push((u, v));
    }
    if arcs.len() != m {
        return Err(Error::Parse {
            line: text.lines().count(),
            message: format!("header declares {m} arcs, found {}", arcs.len()),
        });
    }
    Digraph::new(n, arcs)
}

fn parse_pair(line: usize, body: &str) -> Result<[usize; 2]> {
    let mut fields = body.split_whitespace();
    let mut next = || -> Result<usize> {
        let token = fields.next().ok_or_else(|| Error::Parse {
            line,
            message: "expected two integers".into(),
        })?;
        token.parse().map_err(|_| Error::Parse {
            line,
            message: format!("not a nonnegative integer: {token:?}"),
        })
    };
    let pair = [next()?, next()?];
    if fields.next().is_some() {
        return Err(Error::Parse {
            line,
            message: "trailing fields after two integers".into(),
        });
    }
    Ok(pair)
}

pub fn serialize_edge_list(d: &Digraph) -> String {
    let mut out = String::with_capacity(8 * (d.arc_count() + 1));
    let _ = writeln!(out, "{} {}", d.n(), d.arc_count());
    for (u, v) in d.arcs() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn read_edge_list(path: impl AsRef<Path>) -> Result<Digraph> {
    parse_edge_list(&std::fs::read_to_string(path)?)
}

pub fn write_edge_list(d: &Digraph, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, serialize_edge_list(d))?;
    Ok(())
}
