#![allow(dead_code)]

use std::collections::BTreeSet;

use hyperlines::{Colour, Colouring, LineSummary};
use rand::Rng;

pub fn random_colouring<R: Rng>(rng: &mut R, n: usize) -> Colouring {
    let mut s = Colouring::empty(n).unwrap();
    let density: f64 = rng.gen();
    for r in 0..s.len() {
        s.set_bit(r, rng.gen_bool(density));
    }
    s
}

/// Lines as sorted point lists, built one triple lookup at a time.
pub fn naive_lines(s: &Colouring, c: Colour) -> BTreeSet<Vec<usize>> {
    let n = s.n();
    let mut lines = BTreeSet::new();
    for u in 0..n {
        for v in u + 1..n {
            let mut l = vec![u, v];
            for p in 0..n {
                if p != u && p != v && s.colour(u, v, p).unwrap() == c {
                    l.push(p);
                }
            }
            l.sort_unstable();
            lines.insert(l);
        }
    }
    lines
}

pub fn as_lists(sum: &LineSummary, c: Colour) -> BTreeSet<Vec<usize>> {
    sum.lines(c).iter().map(|l| l.to_vec()).collect()
}

/// `(m_red, m_blue)` from the naive enumerator.
pub fn naive_counts(s: &Colouring) -> (usize, usize) {
    (naive_lines(s, Colour::Red).len(), naive_lines(s, Colour::Blue).len())
}
