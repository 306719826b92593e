//! graph6 text format, bit-exact with the standard tooling.
//!
//! A record is a header encoding `n` followed by the upper triangle of the
//! adjacency matrix in column-major order — for each column `j = 1..n` the
//! bits `(0,j) .. (j-1,j)` — packed six bits per character, most
//! significant bit first, each character offset by 63. Orders up to 62 use
//! a one-character header; `63..=258047` use `~` plus three characters;
//! larger orders up to `2^36 - 1` use `~~` plus six characters.

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty graph6 record")]
    Empty,
    #[error("byte {byte:#04x} at position {pos} is outside the graph6 range 63..=126")]
    InvalidChar { pos: usize, byte: u8 },
    #[error("truncated header: record has {got} bytes, the header alone needs {needed}")]
    TruncatedHeader { needed: usize, got: usize },
    #[error("non-canonical header: order {n} must use the {expected} form")]
    NonCanonicalHeader { n: u64, expected: &'static str },
    #[error("record for order {n} must have {expected} body characters, got {got}")]
    WrongLength { n: u64, expected: usize, got: usize },
    #[error("padding bit {bit} of the final character (position {pos}) is set")]
    NonzeroPadding { pos: usize, bit: usize },
    #[error("order {n} exceeds the graph6 limit 2^36 - 1")]
    OrderTooLarge { n: usize },
}

const MAX_ORDER: u64 = (1 << 36) - 1;

/// Parses one graph6 record into a labeled graph.
pub fn parse_graph6(line: &str) -> Result<Graph, Graph6Error> {
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    for (pos, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::InvalidChar { pos, byte: b });
        }
    }

    let (n, body_start) = parse_header(bytes)?;
    let bit_count = n * (n.saturating_sub(1)) / 2;
    let expected = (bit_count as usize).div_ceil(6);
    let body = &bytes[body_start..];
    if body.len() != expected {
        return Err(Graph6Error::WrongLength {
            n,
            expected,
            got: body.len(),
        });
    }

    // length is validated, so the allocation below is proportional to the
    // input line
    let n = n as usize;
    let mut edges = Vec::new();
    let mut k = 0usize;
    'outer: for j in 1..n {
        for i in 0..j {
            let value = body[k / 6] - 63;
            if value >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
            if k == bit_count as usize {
                break 'outer;
            }
        }
    }
    // unused bits of the final character must be zero
    for pad in bit_count as usize..expected * 6 {
        let value = body[pad / 6] - 63;
        let bit = 5 - pad % 6;
        if value >> bit & 1 == 1 {
            return Err(Graph6Error::NonzeroPadding {
                pos: body_start + pad / 6,
                bit: pad % 6,
            });
        }
    }

    Ok(Graph::from_edges(n, &edges).expect("decoded edges are in range"))
}

fn parse_header(bytes: &[u8]) -> Result<(u64, usize), Graph6Error> {
    if bytes[0] != b'~' {
        return Ok(((bytes[0] - 63) as u64, 1));
    }
    if bytes.len() >= 2 && bytes[1] != b'~' {
        if bytes.len() < 4 {
            return Err(Graph6Error::TruncatedHeader {
                needed: 4,
                got: bytes.len(),
            });
        }
        let n = bytes[1..4]
            .iter()
            .fold(0u64, |acc, &b| acc << 6 | (b - 63) as u64);
        if n < 63 {
            return Err(Graph6Error::NonCanonicalHeader {
                n,
                expected: "one-character",
            });
        }
        return Ok((n, 4));
    }
    if bytes.len() < 8 {
        return Err(Graph6Error::TruncatedHeader {
            needed: 8,
            got: bytes.len(),
        });
    }
    let n = bytes[2..8]
        .iter()
        .fold(0u64, |acc, &b| acc << 6 | (b - 63) as u64);
    if n < 258048 {
        return Err(Graph6Error::NonCanonicalHeader {
            n,
            expected: "four-character",
        });
    }
    Ok((n, 8))
}

/// Encodes a labeled graph as its canonical graph6 record.
pub fn emit_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.n();
    if n as u64 > MAX_ORDER {
        return Err(Graph6Error::OrderTooLarge { n });
    }
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258047 {
        out.push(b'~');
        for shift in [12u32, 6, 0] {
            out.push((n >> shift & 0x3f) as u8 + 63);
        }
    } else {
        out.extend([b'~', b'~']);
        for shift in [30u32, 24, 18, 12, 6, 0] {
            out.push((n as u64 >> shift & 0x3f) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0u8;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
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
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}
