//! Plain-text edge lists.
//!
//! ```text
//! n=5 seed=7 mode=GNP param=0.4
//! 0 3
//! 1 2
//! ```
//!
//! The header carries everything needed to regenerate the network; each
//! following line is one undirected edge `i j` with `i < j`.

use std::io::{self, BufRead, Write};

use sinet_core::netgen::{GenMode, Network};

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("edge list line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("edge list: {0}")]
    Invalid(#[from] sinet_core::Error),
    #[error("edge list: {0}")]
    Io(#[from] io::Error),
}

fn malformed(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Malformed {
        line,
        msg: msg.into(),
    }
}

pub fn write_edge_list<W: Write>(net: &Network, mut out: W) -> io::Result<()> {
    writeln!(out, "n={} seed={} {}", net.n(), net.seed(), net.mode())?;
    for (i, j) in net.edges() {
        writeln!(out, "{i} {j}")?;
    }
    out.flush()
}

fn parse_header(header: &str) -> Result<(usize, u64, GenMode), ParseError> {
    let (mut n, mut seed, mut mode, mut param) = (None, None, None, None);
    for token in header.split_whitespace() {
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| malformed(1, format!("bad header field {token:?}")))?;
        let slot = match key {
            "n" => &mut n,
            "seed" => &mut seed,
            "mode" => &mut mode,
            "param" => &mut param,
            _ => return Err(malformed(1, format!("unknown header field {key:?}"))),
        };
        if slot.replace(value).is_some() {
            return Err(malformed(1, format!("repeated header field {key:?}")));
        }
    }
    let missing = |k: &str| malformed(1, format!("header lacks {k}="));
    let n = n
        .ok_or_else(|| missing("n"))?
        .parse()
        .map_err(|e| malformed(1, format!("n: {e}")))?;
    let seed = seed
        .ok_or_else(|| missing("seed"))?
        .parse()
        .map_err(|e| malformed(1, format!("seed: {e}")))?;
    let param = param.ok_or_else(|| missing("param"))?;
    let mode = match mode.ok_or_else(|| missing("mode"))? {
        "GNP" => GenMode::Gnp(
            param
                .parse()
                .map_err(|e| malformed(1, format!("param: {e}")))?,
        ),
        "GNL" => GenMode::Gnl(
            param
                .parse()
                .map_err(|e| malformed(1, format!("param: {e}")))?,
        ),
        other => return Err(malformed(1, format!("unknown mode {other:?}"))),
    };
    Ok((n, seed, mode))
}

/// Parses an edge list. Blank lines are ignored; duplicate edges, self-loops
/// and out-of-range ids are rejected.
pub fn read_edge_list<R: BufRead>(input: R) -> Result<Network, ParseError> {
    let mut lines = input.lines();
    let header = lines.next().ok_or_else(|| malformed(1, "empty input"))??;
    let (n, seed, mode) = parse_header(&header)?;
    let mut edges = Vec::new();
    for (idx, line) in lines.enumerate() {
        let line = line?;
        let lineno = idx + 2;
        let mut parts = line.split_whitespace();
        let Some(a) = parts.next() else { continue };
        let b = parts
            .next()
            .ok_or_else(|| malformed(lineno, "expected two node ids"))?;
        if parts.next().is_some() {
            return Err(malformed(lineno, "expected two node ids"));
        }
        let id = |s: &str| {
            s.parse::<u32>()
                .map_err(|e| malformed(lineno, format!("{s:?}: {e}")))
        };
        edges.push((id(a)?, id(b)?));
    }
    Ok(Network::from_edges(n, &edges, mode, seed)?)
}
