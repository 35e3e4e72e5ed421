//! graph6 encoding and decoding.
//!
//! The format packs the upper triangle of the adjacency matrix column by
//! column (bit order x_{0,1}, x_{0,2}, x_{1,2}, x_{0,3}, ...) into 6-bit
//! groups stored as printable bytes 63..=126, preceded by an order header.
//! Orders 63 and 64 use the long `~`-prefixed header.

use crate::graph::{Graph, MAX_ORDER};
use std::io::BufRead;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("invalid graph6 byte 0x{byte:02x} at offset {offset}")]
    InvalidByte { byte: u8, offset: usize },
    #[error("graph order {order} exceeds 64 (header ending at offset {offset})")]
    OrderTooLarge { order: usize, offset: usize },
    #[error("graph order 0 not supported (header at offset 0)")]
    OrderZero,
    #[error("truncated graph6 string: need {expected} data bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("trailing bytes starting at offset {offset}")]
    TrailingBytes { offset: usize },
    #[error("nonzero padding bits in final byte at offset {offset}")]
    BadPadding { offset: usize },
}

const OPTIONAL_HEADER: &str = ">>graph6<<";

fn sextet(bytes: &[u8], offset: usize) -> Result<u64, Graph6Error> {
    match bytes.get(offset) {
        None => Err(Graph6Error::Truncated {
            expected: offset + 1,
            found: bytes.len(),
        }),
        Some(&b) if (63..=126).contains(&b) => Ok((b - 63) as u64),
        Some(&b) => Err(Graph6Error::InvalidByte { byte: b, offset }),
    }
}

/// Decodes a graph6 string (an optional `>>graph6<<` prefix is accepted).
pub fn from_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let text = text.strip_prefix(OPTIONAL_HEADER).unwrap_or(text);
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    let (order, mut offset) = if bytes[0] == 126 {
        if bytes.get(1) == Some(&126) {
            // 8-byte form encodes orders >= 258048, far past our cap.
            return Err(Graph6Error::OrderTooLarge {
                order: usize::MAX,
                offset: 7,
            });
        }
        let mut n = 0usize;
        for i in 1..=3 {
            n = (n << 6) | sextet(bytes, i)? as usize;
        }
        (n, 4)
    } else {
        (sextet(bytes, 0)? as usize, 1)
    };
    if order == 0 {
        return Err(Graph6Error::OrderZero);
    }
    if order > MAX_ORDER {
        return Err(Graph6Error::OrderTooLarge {
            order,
            offset: offset - 1,
        });
    }

    let nbits = order * (order - 1) / 2;
    let nbytes = nbits.div_ceil(6);
    let mut adj = vec![0u64; order];
    let mut t = 0usize; // bit index into the upper-triangle stream
    let mut col = 1usize;
    let mut row = 0usize;
    for _ in 0..nbytes {
        let group = sextet(bytes, offset)?;
        for k in (0..6).rev() {
            let b = (group >> k) & 1;
            if t < nbits {
                if b == 1 {
                    adj[row] |= 1u64 << col;
                    adj[col] |= 1u64 << row;
                }
                row += 1;
                if row == col {
                    col += 1;
                    row = 0;
                }
            } else if b == 1 {
                return Err(Graph6Error::BadPadding { offset });
            }
            t += 1;
        }
        offset += 1;
    }
    if offset < bytes.len() {
        return Err(Graph6Error::TrailingBytes { offset });
    }
    Ok(Graph::from_rows_unchecked(adj))
}

/// Encodes a graph as a graph6 string.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(63 + n as u8);
    } else {
        out.push(126);
        out.push(63 + ((n >> 12) & 63) as u8);
        out.push(63 + ((n >> 6) & 63) as u8);
        out.push(63 + (n & 63) as u8);
    }
    let mut group = 0u8;
    let mut filled = 0u8;
    for col in 1..n {
        for row in 0..col {
            group = (group << 1) | g.has_edge(row, col) as u8;
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
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Reads newline-delimited graph6 records, skipping blank lines.
pub fn read_graph6_lines<R: BufRead>(reader: R) -> Result<Vec<Graph>, Graph6Error> {
    let mut out = Vec::new();
    for line in reader.lines() {
        let line = line.map_err(|_| Graph6Error::Empty)?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        out.push(from_graph6(line)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_strings() {
        // Single vertex.
        let k1 = from_graph6("@").unwrap();
        assert_eq!(k1.order(), 1);
        assert_eq!(to_graph6(&k1), "@");
        // Two isolated vertices.
        let e2 = from_graph6("A?").unwrap();
        assert_eq!((e2.order(), e2.edge_count()), (2, 0));
        assert_eq!(to_graph6(&e2), "A?");
        // The 5-vertex star "D?{" round-trips.
        let s = from_graph6("D?{").unwrap();
        assert_eq!(s.order(), 5);
        assert_eq!(s.degree(4), 4);
        assert_eq!(to_graph6(&s), "D?{");
    }

    #[test]
    fn path_structure_from_graph6() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let decoded = from_graph6(&to_graph6(&p3)).unwrap();
        let mut degs: Vec<usize> = (0..3).map(|v| decoded.degree(v)).collect();
        degs.sort_unstable();
        assert_eq!(degs, vec![1, 1, 2]);
    }

    #[test]
    fn long_header_for_orders_63_and_64() {
        for n in [63usize, 64] {
            let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
            let g = Graph::from_edges(n, &edges).unwrap();
            let s = to_graph6(&g);
            assert_eq!(s.as_bytes()[0], 126);
            let h = from_graph6(&s).unwrap();
            assert_eq!(h, g);
        }
    }

    #[test]
    fn optional_file_header_is_accepted() {
        assert_eq!(from_graph6(">>graph6<<D?{").unwrap().order(), 5);
    }

    #[test]
    fn error_offsets() {
        assert_eq!(from_graph6("").unwrap_err(), Graph6Error::Empty);
        assert_eq!(
            from_graph6("D?{X?").unwrap_err(),
            Graph6Error::TrailingBytes { offset: 3 }
        );
        assert_eq!(
            from_graph6("D?").unwrap_err(),
            Graph6Error::Truncated { expected: 3, found: 2 }
        );
        assert!(matches!(
            from_graph6("D?\x1f").unwrap_err(),
            Graph6Error::InvalidByte { offset: 2, .. }
        ));
        // Order 65 uses the long header; we must reject it.
        assert!(matches!(
            from_graph6("~?@@").unwrap_err(),
            Graph6Error::OrderTooLarge { order: 65, .. }
        ));
        assert_eq!(from_graph6("?").unwrap_err(), Graph6Error::OrderZero);
        // 2-vertex graph whose data sextet sets a pad bit ('O' = 010000).
        assert_eq!(
            from_graph6("AO").unwrap_err(),
            Graph6Error::BadPadding { offset: 1 }
        );
    }
}
