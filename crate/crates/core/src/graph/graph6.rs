//! graph6 reader and writer.
//!
//! Size header: one byte `n + 63` for `n <= 62`, otherwise `~` followed by
//! three 6-bit big-endian bytes. Payload: the upper triangle in column-major
//! order (`x(0,1) x(0,2) x(1,2) x(0,3) ...`), six bits per byte, zero padded,
//! each byte offset by 63.

use super::{bit, Graph, MAX_ORDER};
use crate::error::{Error, Result};

const BIAS: u8 = 63;
const HEADER: &str = ">>graph6<<";

fn payload_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

pub(crate) fn write_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::with_capacity(4 + payload_len(n));
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else {
        out.push(b'~');
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        let row = g.neighbors(j);
        for i in 0..j {
            acc = (acc << 1) | u8::from(row & bit(i) != 0);
            filled += 1;
            if filled == 6 {
                out.push(acc + BIAS);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Parses one graph6 line. A leading `>>graph6<<` marker and surrounding
/// whitespace are ignored.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let text = text.trim();
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Graph6Empty);
    }
    for (offset, &byte) in bytes.iter().enumerate() {
        if !(BIAS..=126).contains(&byte) {
            return Err(Error::Graph6Byte { byte, offset });
        }
    }
    let (n, body) = if bytes[0] != b'~' {
        ((bytes[0] - BIAS) as usize, &bytes[1..])
    } else if bytes.len() >= 2 && bytes[1] == b'~' {
        return Err(Error::Graph6Header(
            "8-byte size form exceeds the 64-vertex limit".into(),
        ));
    } else if bytes.len() < 4 {
        return Err(Error::Graph6Header("incomplete 4-byte size form".into()));
    } else {
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - BIAS) as usize);
        if n <= 62 {
            return Err(Error::Graph6Header(format!(
                "order {n} must use the 1-byte size form"
            )));
        }
        (n, &bytes[4..])
    };
    if n > MAX_ORDER {
        return Err(Error::OrderOutOfRange {
            n,
            min: 0,
            max: MAX_ORDER,
        });
    }
    let expected = payload_len(n);
    if body.len() < expected {
        return Err(Error::Graph6Truncated {
            expected,
            got: body.len(),
        });
    }
    if body.len() > expected {
        return Err(Error::Graph6Trailing {
            expected,
            got: body.len(),
        });
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - BIAS;
            if byte & (0x20 >> (k % 6)) != 0 {
                g.set(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Bit-by-bit writer kept apart from the production path: builds the
    /// column-major bit string first, then packs it.
    fn reference_graph6(n: usize, adj: &dyn Fn(usize, usize) -> bool) -> String {
        let mut bits = Vec::new();
        for j in 1..n {
            for i in 0..j {
                bits.push(adj(i, j));
            }
        }
        while bits.len() % 6 != 0 {
            bits.push(false);
        }
        let mut s = String::new();
        if n <= 62 {
            s.push((n as u8 + 63) as char);
        } else {
            s.push('~');
            s.push((((n >> 12) & 63) as u8 + 63) as char);
            s.push((((n >> 6) & 63) as u8 + 63) as char);
            s.push(((n & 63) as u8 + 63) as char);
        }
        for chunk in bits.chunks(6) {
            let v = chunk.iter().fold(0u8, |a, &b| (a << 1) | b as u8);
            s.push((v + 63) as char);
        }
        s
    }

    #[test]
    fn oracle_values() {
        assert_eq!(reference_graph6(5, &|_, _| true), "D~{");
        assert_eq!(reference_graph6(2, &|_, _| true), "A_");
        assert_eq!(reference_graph6(1, &|_, _| true), "@");
    }

    #[test]
    fn known_strings() {
        let k5 = parse_graph6("D~{").unwrap();
        assert_eq!(k5, Graph::complete(5).unwrap());
        let k2 = parse_graph6("A_").unwrap();
        assert_eq!(k2.order(), 2);
        assert!(k2.has_edge(0, 1));
        assert_eq!(Graph::complete(1).unwrap().to_graph6(), "@");
        assert_eq!(Graph::complete(5).unwrap().to_graph6(), "D~{");
        assert_eq!(parse_graph6(">>graph6<<D~{\n").unwrap(), k5);
    }

    #[test]
    fn matches_reference_writer() {
        for n in [3usize, 7, 13, 62, 63, 64] {
            let g = Graph::cycle(n).unwrap();
            let expect = reference_graph6(n, &|i, j| g.has_edge(i, j));
            assert_eq!(g.to_graph6(), expect, "n = {n}");
            assert_eq!(parse_graph6(&expect).unwrap(), g);
        }
    }

    #[test]
    fn errors_are_distinct() {
        assert_eq!(parse_graph6(""), Err(Error::Graph6Empty));
        assert_eq!(parse_graph6("  \n"), Err(Error::Graph6Empty));
        assert!(matches!(parse_graph6("D~"), Err(Error::Graph6Truncated { .. })));
        assert!(matches!(parse_graph6("D~{?"), Err(Error::Graph6Trailing { .. })));
        assert!(matches!(parse_graph6("D~ {"), Err(Error::Graph6Byte { .. })));
        assert!(matches!(parse_graph6("~~"), Err(Error::Graph6Header(_))));
        assert!(matches!(parse_graph6("~?"), Err(Error::Graph6Header(_))));
        assert!(matches!(parse_graph6("~??D"), Err(Error::Graph6Header(_))));
        // n = 65
        assert!(matches!(
            parse_graph6("~?@@"),
            Err(Error::OrderOutOfRange { n: 65, .. })
        ));
    }
}
