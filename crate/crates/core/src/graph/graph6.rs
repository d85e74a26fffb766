use super::{Graph, MAX_VERTICES};
use crate::error::{Error, Result};

const HEADER: &[u8] = b">>graph6<<";

fn parse_err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        reason: reason.into(),
    }
}

/// Parses one line of graph6 text. A trailing newline and a leading
/// `>>graph6<<` header are accepted.
pub fn parse_graph6(bytes: &[u8]) -> Result<Graph> {
    let mut line = bytes;
    while let [rest @ .., b'\n' | b'\r'] = line {
        line = rest;
    }
    let base = if line.starts_with(HEADER) {
        HEADER.len()
    } else {
        0
    };
    let body = &line[base..];

    if let Some(pos) = body.iter().position(|b| !(63..=126).contains(b)) {
        return Err(parse_err(
            base + pos,
            format!("byte {:#04x} outside the graph6 range [63, 126]", body[pos]),
        ));
    }
    let Some(&first) = body.first() else {
        return Err(parse_err(base, "empty input"));
    };

    let (n, header_len) = if first < 126 {
        ((first - 63) as usize, 1)
    } else {
        if body.len() < 4 {
            return Err(parse_err(
                base + body.len(),
                "truncated vertex-count prefix",
            ));
        }
        if body[1] == 126 {
            return Err(parse_err(
                base + 1,
                format!("8-byte vertex-count prefix exceeds the {MAX_VERTICES}-vertex cap"),
            ));
        }
        let n = body[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        if n < 63 {
            return Err(parse_err(
                base,
                format!("non-canonical long prefix for n = {n}"),
            ));
        }
        (n, 4)
    };
    if n == 0 || n > MAX_VERTICES {
        return Err(parse_err(
            base,
            format!("vertex count {n} outside 1..={MAX_VERTICES}"),
        ));
    }

    let nbits = n * (n - 1) / 2;
    let nbytes = nbits.div_ceil(6);
    let data = &body[header_len..];
    if data.len() != nbytes {
        let offset = base + header_len + data.len().min(nbytes);
        return Err(parse_err(
            offset,
            format!(
                "expected {nbytes} edge bytes for n = {n}, found {}",
                data.len()
            ),
        ));
    }

    let pad = nbytes * 6 - nbits;
    if pad > 0 {
        let last = data[nbytes - 1] - 63;
        if last & ((1 << pad) - 1) != 0 {
            return Err(parse_err(
                base + header_len + nbytes - 1,
                "nonzero padding bits",
            ));
        }
    }

    let mut g = Graph::empty(n)?;
    let mut bit = 0usize;
    for v in 1..n {
        for u in 0..v {
            let byte = data[bit / 6] - 63;
            if byte >> (5 - bit % 6) & 1 == 1 {
                g.insert_edge(u, v);
            }
            bit += 1;
        }
    }
    Ok(g)
}

/// Canonical graph6 encoding, without a trailing newline.
pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n < 63 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    // every byte lies in [63, 126]
    String::from_utf8(out).expect("graph6 output is ASCII")
}
