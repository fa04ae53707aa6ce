//! Text formats: `.gr` graphs, `.w` rational weights and `.td` decompositions.
//! All of them use 1-indexed vertices.

use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::treedec::TreeDecomposition;
use crate::weights::Rational;

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Format {
        line,
        msg: msg.into(),
    }
}

fn index(tok: &str, n: usize, line: usize) -> Result<usize> {
    match tok.parse::<usize>() {
        Ok(v) if (1..=n).contains(&v) => Ok(v - 1),
        _ => Err(err(line, format!("vertex `{tok}` is not in 1..={n}"))),
    }
}

/// Parses `p edge <n> <m>` followed by `e <u> <v>` lines; `c` lines are comments.
pub fn parse_gr(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t: Vec<&str> = raw.split_whitespace().collect();
        match t.as_slice() {
            [] | ["c", ..] => {}
            ["p", "edge", n, m] if header.is_none() => {
                let n = n.parse().map_err(|_| err(line, "bad vertex count"))?;
                let m = m.parse().map_err(|_| err(line, "bad edge count"))?;
                header = Some((n, m));
            }
            ["e", u, v] => {
                let (n, _) = header.ok_or_else(|| err(line, "edge before `p edge` header"))?;
                edges.push((index(u, n, line)?, index(v, n, line)?));
            }
            _ => return Err(err(line, format!("unrecognized line `{}`", raw.trim()))),
        }
    }
    let (n, m) = header.ok_or_else(|| err(0, "missing `p edge` header"))?;
    if edges.len() != m {
        return Err(err(
            0,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    Graph::from_edges(n, &edges)
}

pub fn write_gr(g: &Graph) -> String {
    let mut s = format!("p edge {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        writeln!(s, "e {} {}", u + 1, v + 1).unwrap();
    }
    s
}

/// Parses `w <v> <num> <den>` lines, one per vertex. Vertices without a line
/// are an error unless a `default 0` line is present.
pub fn parse_weights(text: &str, n: usize) -> Result<Vec<Rational>> {
    let mut vals: Vec<Option<Rational>> = vec![None; n];
    let mut default_zero = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t: Vec<&str> = raw.split_whitespace().collect();
        match t.as_slice() {
            [] | ["c", ..] => {}
            ["default", "0"] => default_zero = true,
            ["w", v, p, q] => {
                let v = index(v, n, line)?;
                let p: BigInt = p.parse().map_err(|_| err(line, "bad numerator"))?;
                let q: BigInt = q.parse().map_err(|_| err(line, "bad denominator"))?;
                if q.is_zero() {
                    return Err(err(line, "zero denominator"));
                }
                let x = Rational::new(p, q);
                if x.is_negative() {
                    return Err(err(line, "negative weight"));
                }
                if vals[v].replace(x).is_some() {
                    return Err(err(line, format!("vertex {} weighted twice", v + 1)));
                }
            }
            _ => return Err(err(line, format!("unrecognized line `{}`", raw.trim()))),
        }
    }
    vals.into_iter()
        .enumerate()
        .map(|(v, x)| match x {
            Some(x) => Ok(x),
            None if default_zero => Ok(Rational::zero()),
            None => Err(err(
                0,
                format!("vertex {} has no weight and no `default 0`", v + 1),
            )),
        })
        .collect()
}

pub fn write_weights(values: &[Rational]) -> String {
    let mut s = String::new();
    for (v, x) in values.iter().enumerate() {
        writeln!(s, "w {} {} {}", v + 1, x.numer(), x.denom()).unwrap();
    }
    s
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    parse_gr(&std::fs::read_to_string(path)?)
}

pub fn read_weights(path: &Path, n: usize) -> Result<Vec<Rational>> {
    parse_weights(&std::fs::read_to_string(path)?, n)
}

pub fn read_td(path: &Path, n: usize) -> Result<TreeDecomposition> {
    TreeDecomposition::from_pace(&std::fs::read_to_string(path)?, n)
}
