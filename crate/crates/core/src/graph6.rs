//! The graph6 short format (graphs on at most 62 vertices).
//!
//! Byte 0 is `n + 63`. The upper triangle of the adjacency matrix follows in
//! column-major order (`(0,1), (0,2), (1,2), (0,3), …`), six bits per byte,
//! most significant bit first, each byte offset by 63, the final group
//! zero-padded.

use thiserror::Error;

use crate::graph::Graph;

pub const GRAPH6_MAX_VERTICES: usize = 62;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {offset}: character {byte:#04x} outside the graph6 range 63..=126")]
    OutOfRange { offset: usize, byte: u8 },
    #[error("byte 0: unsupported length byte {0:#04x} (only n <= 62 is supported)")]
    LengthByte(u8),
    #[error("byte {offset}: expected {expected} bytes in total, found {found}")]
    WrongLength {
        offset: usize,
        expected: usize,
        found: usize,
    },
    #[error("byte {offset}: padding bits are not zero")]
    NonZeroPadding { offset: usize },
    #[error("graph has {0} vertices; graph6 short form holds at most 62")]
    TooLarge(usize),
}

fn body_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    let (&head, body) = bytes.split_first().ok_or(Graph6Error::Empty)?;
    if let Some(offset) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(Graph6Error::OutOfRange {
            offset,
            byte: bytes[offset],
        });
    }
    if head > 63 + GRAPH6_MAX_VERTICES as u8 {
        return Err(Graph6Error::LengthByte(head));
    }
    let n = (head - 63) as usize;
    let expected = body_len(n);
    if body.len() != expected {
        return Err(Graph6Error::WrongLength {
            offset: 1 + body.len().min(expected),
            expected: expected + 1,
            found: bytes.len(),
        });
    }
    let total_bits = n * n.saturating_sub(1) / 2;
    let bit = |k: usize| -> bool { (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1 };
    if let Some(k) = (total_bits..expected * 6).find(|&k| bit(k)) {
        return Err(Graph6Error::NonZeroPadding { offset: 1 + k / 6 });
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::from_edges(n, &edges).expect("decoded edges are in range"))
}

pub fn write_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.n();
    if n > GRAPH6_MAX_VERTICES {
        return Err(Graph6Error::TooLarge(n));
    }
    let mut out = Vec::with_capacity(1 + body_len(n));
    out.push(63 + n as u8);
    let mut group = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            group = group << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(63 + group);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (group << (6 - filled)));
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}
