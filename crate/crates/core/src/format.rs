//! Plain-text file formats.
//!
//! System files (`.hl3`):
//!
//! ```text
//! # comment
//! n 7
//! red 0 1 2
//! red 0 3 4
//! ```
//!
//! or, equivalently, a single `bits <hex>` row holding the colex bit array as
//! a hexadecimal integer (bit `r` has weight `2^r`), written most significant
//! digit first and zero-padded to `ceil(C(n,3) / 4)` digits. A file uses one
//! encoding, never both.
//!
//! Graph files: `n <N>` followed by `edge <u> <v> [w]` rows, weight 1 when
//! omitted. Point files: one `x y` integer pair per row.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::system::{triple_count, triple_rank, Colouring};
use crate::treespace::{Tree, WeightedGraph};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Non-empty rows with comments stripped, paired with 1-based line numbers.
fn rows(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let body = l.split('#').next().unwrap_or("");
        let fields: Vec<&str> = body.split_whitespace().collect();
        (!fields.is_empty()).then_some((i + 1, fields))
    })
}

fn parse_num<T: std::str::FromStr>(line: usize, field: &str, what: &str) -> Result<T> {
    field.parse().map_err(|_| perr(line, format!("bad {what} '{field}'")))
}

fn parse_header<'a>(rows: &mut impl Iterator<Item = (usize, Vec<&'a str>)>) -> Result<(usize, usize)> {
    match rows.next() {
        Some((ln, f)) if f[0] == "n" => {
            if f.len() != 2 {
                return Err(perr(ln, "expected 'n <N>'"));
            }
            Ok((ln, parse_num(ln, f[1], "point count")?))
        }
        Some((ln, _)) => Err(perr(ln, "first row must be 'n <N>'")),
        None => Err(perr(1, "empty file")),
    }
}

pub fn parse_hl3(text: &str) -> Result<Colouring> {
    let mut it = rows(text);
    let (hl, n) = parse_header(&mut it)?;
    let mut s = Colouring::empty(n).map_err(|e| perr(hl, e.to_string()))?;
    let mut saw_red = false;
    let mut saw_bits = false;
    for (ln, f) in it {
        match f[0] {
            "red" => {
                if saw_bits {
                    return Err(perr(ln, "'red' rows cannot follow a 'bits' row"));
                }
                saw_red = true;
                if f.len() != 4 {
                    return Err(perr(ln, "expected 'red <i> <j> <k>'"));
                }
                let i: usize = parse_num(ln, f[1], "index")?;
                let j: usize = parse_num(ln, f[2], "index")?;
                let k: usize = parse_num(ln, f[3], "index")?;
                if k >= n {
                    return Err(perr(ln, format!("index {k} outside 0..{n}")));
                }
                let r = triple_rank(i, j, k).map_err(|e| perr(ln, e.to_string()))?;
                if s.bit(r) {
                    return Err(perr(ln, format!("triple {i} {j} {k} listed twice")));
                }
                s.set_bit(r, true);
            }
            "bits" => {
                if saw_red || saw_bits {
                    return Err(perr(ln, "a file holds exactly one encoding"));
                }
                saw_bits = true;
                let hex = match f.len() {
                    1 => "",
                    2 => f[1],
                    _ => return Err(perr(ln, "expected 'bits <hex>'")),
                };
                decode_bits(&mut s, hex).map_err(|m| perr(ln, m))?;
            }
            "n" => return Err(perr(ln, "duplicate 'n' row")),
            other => return Err(perr(ln, format!("unknown row kind '{other}'"))),
        }
    }
    Ok(s)
}

fn decode_bits(s: &mut Colouring, hex: &str) -> std::result::Result<(), String> {
    let len = s.len();
    let digits = len.div_ceil(4);
    if hex.len() != digits {
        return Err(format!(
            "expected {digits} hex digits for n = {}, got {}",
            s.n(),
            hex.len()
        ));
    }
    for (pos, ch) in hex.chars().enumerate() {
        let v = ch.to_digit(16).ok_or_else(|| format!("bad hex digit '{ch}'"))?;
        // digit `pos` from the left covers ranks base..base+4
        let base = 4 * (digits - 1 - pos);
        for b in 0..4 {
            if v >> b & 1 == 1 {
                if base + b >= len {
                    return Err("bits set beyond C(n,3)".into());
                }
                s.set_bit(base + b, true);
            }
        }
    }
    Ok(())
}

/// `red` row encoding, triples in colex order.
pub fn to_hl3(s: &Colouring) -> String {
    let mut out = format!("n {}\n", s.n());
    for (i, j, k) in s.red_triples() {
        writeln!(out, "red {i} {j} {k}").unwrap();
    }
    out
}

/// `bits` row encoding.
pub fn to_hl3_bits(s: &Colouring) -> String {
    let len = triple_count(s.n());
    let digits = len.div_ceil(4);
    let mut hex = String::with_capacity(digits);
    for pos in 0..digits {
        let base = 4 * (digits - 1 - pos);
        let v = (0..4)
            .filter(|b| base + b < len && s.bit(base + b))
            .fold(0u32, |acc, b| acc | 1 << b);
        hex.push(char::from_digit(v, 16).unwrap());
    }
    format!("n {}\nbits {hex}\n", s.n())
}

pub fn parse_graph(text: &str) -> Result<WeightedGraph> {
    let mut it = rows(text);
    let (hl, n) = parse_header(&mut it)?;
    let mut edges = Vec::new();
    for (ln, f) in it {
        if f[0] != "edge" {
            return Err(perr(ln, format!("unknown row kind '{}'", f[0])));
        }
        let (u, v, w) = match f.len() {
            3 | 4 => (
                parse_num(ln, f[1], "vertex")?,
                parse_num(ln, f[2], "vertex")?,
                if f.len() == 4 {
                    parse_num(ln, f[3], "weight")?
                } else {
                    1
                },
            ),
            _ => return Err(perr(ln, "expected 'edge <u> <v> [w]'")),
        };
        edges.push((u, v, w));
    }
    WeightedGraph::new(n, edges).map_err(|e| perr(hl, e.to_string()))
}

pub fn graph_to_text(g: &WeightedGraph) -> String {
    let mut out = format!("n {}\n", g.n());
    for &(u, v, w) in g.edges() {
        if w == 1 {
            writeln!(out, "edge {u} {v}").unwrap();
        } else {
            writeln!(out, "edge {u} {v} {w}").unwrap();
        }
    }
    out
}

pub fn tree_to_text(t: &Tree) -> String {
    graph_to_text(&t.to_graph())
}

pub fn parse_points(text: &str) -> Result<Vec<(i64, i64)>> {
    rows(text)
        .map(|(ln, f)| {
            if f.len() != 2 {
                return Err(perr(ln, "expected 'x y'"));
            }
            Ok((parse_num(ln, f[0], "coordinate")?, parse_num(ln, f[1], "coordinate")?))
        })
        .collect()
}
