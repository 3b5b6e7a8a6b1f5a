//! Bi-coloured systems and their red/blue lines.
//!
//! A system on `n` points assigns every 3-subset of `0..n` one of two
//! colours. Triples are addressed by their colex rank, so the colouring is a
//! flat bit array of length `C(n, 3)` (bit set = red). Lines are subsets of
//! the point set and live in a single machine word, which caps `n` at 64.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{invalid, unsupported, Result};

/// Largest supported point count.
pub const MAX_POINTS: usize = 64;

/// Largest point count accepted by [`canonical`].
pub const MAX_CANONICAL_POINTS: usize = 8;

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Number of unordered pairs on `n` points.
pub fn pair_count(n: usize) -> usize {
    binomial(n as u64, 2) as usize
}

/// Number of triples on `n` points.
pub fn triple_count(n: usize) -> usize {
    binomial(n as u64, 3) as usize
}

#[inline]
pub(crate) fn rank_unchecked(i: usize, j: usize, k: usize) -> usize {
    i + j * (j - 1) / 2 + k * (k - 1) * (k - 2) / 6
}

/// Colex rank of `i < j < k`: `C(i,1) + C(j,2) + C(k,3)`.
pub fn triple_rank(i: usize, j: usize, k: usize) -> Result<usize> {
    if !(i < j && j < k) {
        return Err(invalid(format!("triple ({i},{j},{k}) is not strictly increasing")));
    }
    if k >= MAX_POINTS {
        return Err(invalid(format!("point {k} exceeds the {MAX_POINTS}-point cap")));
    }
    Ok(rank_unchecked(i, j, k))
}

/// Inverse of [`triple_rank`].
pub fn triple_unrank(rank: usize) -> (usize, usize, usize) {
    let mut r = rank;
    let mut k = 2;
    while binomial(k as u64 + 1, 3) as usize <= r {
        k += 1;
    }
    r -= binomial(k as u64, 3) as usize;
    let mut j = 1;
    while binomial(j as u64 + 1, 2) as usize <= r {
        j += 1;
    }
    r -= binomial(j as u64, 2) as usize;
    (r, j, k)
}

#[inline]
fn sorted_rank(a: usize, b: usize, c: usize) -> usize {
    let (mut x, mut y, mut z) = (a, b, c);
    if x > y {
        std::mem::swap(&mut x, &mut y);
    }
    if y > z {
        std::mem::swap(&mut y, &mut z);
    }
    if x > y {
        std::mem::swap(&mut x, &mut y);
    }
    rank_unchecked(x, y, z)
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Colour {
    Red,
    Blue,
}

impl Colour {
    pub fn flip(self) -> Colour {
        match self {
            Colour::Red => Colour::Blue,
            Colour::Blue => Colour::Red,
        }
    }
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Colour::Red => "red",
            Colour::Blue => "blue",
        })
    }
}

/// A subset of `0..n` stored as a bit mask.
///
/// Ordering compares the mask as an unsigned integer, which gives lines a
/// stable, diffable print order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet {
    mask: u64,
    n: u8,
}

impl PointSet {
    pub fn empty(n: usize) -> Result<PointSet> {
        if n > MAX_POINTS {
            return Err(invalid(format!("{n} points exceeds the {MAX_POINTS}-point cap")));
        }
        Ok(PointSet { mask: 0, n: n as u8 })
    }

    pub fn full(n: usize) -> Result<PointSet> {
        let mut s = PointSet::empty(n)?;
        s.mask = full_mask(n);
        Ok(s)
    }

    pub fn from_mask(n: usize, mask: u64) -> Result<PointSet> {
        let s = PointSet::empty(n)?;
        if mask & !full_mask(n) != 0 {
            return Err(invalid(format!("mask {mask:#x} has points outside 0..{n}")));
        }
        Ok(PointSet { mask, ..s })
    }

    pub fn from_points<I: IntoIterator<Item = usize>>(n: usize, points: I) -> Result<PointSet> {
        let mut s = PointSet::empty(n)?;
        for p in points {
            if p >= n {
                return Err(invalid(format!("point {p} outside 0..{n}")));
            }
            s.mask |= 1 << p;
        }
        Ok(s)
    }

    #[inline]
    pub(crate) fn raw(n: usize, mask: u64) -> PointSet {
        debug_assert!(n <= MAX_POINTS && mask & !full_mask(n) == 0);
        PointSet { mask, n: n as u8 }
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    /// Ambient point count.
    pub fn universe(&self) -> usize {
        self.n as usize
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn contains(&self, p: usize) -> bool {
        p < 64 && self.mask >> p & 1 == 1
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        PointSet {
            mask: self.mask & other.mask,
            n: self.n,
        }
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        PointSet {
            mask: self.mask | other.mask,
            n: self.n.max(other.n),
        }
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn points(&self) -> impl Iterator<Item = usize> + '_ {
        let mut m = self.mask;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let p = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(p)
            }
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.points().collect()
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.points().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

/// Colour assignment on all triples of `0..n`; bit `r` set means the triple
/// of colex rank `r` is red.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Colouring {
    n: usize,
    words: Vec<u64>,
}

impl Colouring {
    /// All triples blue.
    pub fn empty(n: usize) -> Result<Colouring> {
        if !(2..=MAX_POINTS).contains(&n) {
            return Err(invalid(format!("point count {n} outside 2..={MAX_POINTS}")));
        }
        Ok(Colouring {
            n,
            words: vec![0; triple_count(n).div_ceil(64)],
        })
    }

    /// All triples red.
    pub fn complete(n: usize) -> Result<Colouring> {
        Ok(Colouring::empty(n)?.complement())
    }

    /// Builds a colouring from packed bits (bit `r` of word `r / 64`).
    pub fn from_words(n: usize, words: Vec<u64>) -> Result<Colouring> {
        let mut c = Colouring::empty(n)?;
        if words.len() != c.words.len() {
            return Err(invalid(format!(
                "expected {} words for n = {n}, got {}",
                c.words.len(),
                words.len()
            )));
        }
        c.words = words;
        if c.tail_garbage() {
            return Err(invalid("bits set beyond C(n,3)"));
        }
        Ok(c)
    }

    /// Colouring for `n ≤ 8`, whose `C(n,3) ≤ 56` bits fit one word.
    pub fn from_packed(n: usize, bits: u64) -> Result<Colouring> {
        if triple_count(n) > 64 {
            return Err(unsupported(format!("n = {n} does not fit a packed word")));
        }
        let words = if triple_count(n) == 0 { Vec::new() } else { vec![bits] };
        Colouring::from_words(n, words)
    }

    pub fn from_red_triples<I>(n: usize, triples: I) -> Result<Colouring>
    where
        I: IntoIterator<Item = (usize, usize, usize)>,
    {
        let mut c = Colouring::empty(n)?;
        for (a, b, d) in triples {
            c.set(a, b, d, Colour::Red)?;
        }
        Ok(c)
    }

    fn tail_garbage(&self) -> bool {
        let len = self.len();
        match self.words.last() {
            Some(&w) if !len.is_multiple_of(64) => w >> (len % 64) != 0,
            _ => false,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of triples, i.e. the bit length.
    pub fn len(&self) -> usize {
        triple_count(self.n)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// The single-word encoding; `None` when `C(n,3) > 64`.
    pub fn packed(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    #[inline]
    pub fn bit(&self, rank: usize) -> bool {
        self.words[rank / 64] >> (rank % 64) & 1 == 1
    }

    #[inline]
    pub fn set_bit(&mut self, rank: usize, red: bool) {
        let (w, b) = (rank / 64, rank % 64);
        if red {
            self.words[w] |= 1 << b;
        } else {
            self.words[w] &= !(1 << b);
        }
    }

    pub fn flip_bit(&mut self, rank: usize) {
        self.words[rank / 64] ^= 1 << (rank % 64);
    }

    fn check_triple(&self, a: usize, b: usize, c: usize) -> Result<usize> {
        if a == b || b == c || a == c {
            return Err(invalid(format!("triple ({a},{b},{c}) has repeated points")));
        }
        if a.max(b).max(c) >= self.n {
            return Err(invalid(format!("triple ({a},{b},{c}) outside 0..{}", self.n)));
        }
        Ok(sorted_rank(a, b, c))
    }

    /// Colour of `{a, b, c}`, given in any order.
    pub fn colour(&self, a: usize, b: usize, c: usize) -> Result<Colour> {
        let r = self.check_triple(a, b, c)?;
        Ok(if self.bit(r) { Colour::Red } else { Colour::Blue })
    }

    pub fn set(&mut self, a: usize, b: usize, c: usize, colour: Colour) -> Result<()> {
        let r = self.check_triple(a, b, c)?;
        self.set_bit(r, colour == Colour::Red);
        Ok(())
    }

    pub fn red_count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Red triples in colex order.
    pub fn red_triples(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.len()).filter(|&r| self.bit(r)).map(triple_unrank)
    }

    /// Swaps the two colours on every triple.
    pub fn complement(&self) -> Colouring {
        let mut c = self.clone();
        for w in &mut c.words {
            *w = !*w;
        }
        let len = c.len();
        if !len.is_multiple_of(64) {
            if let Some(last) = c.words.last_mut() {
                *last &= (1u64 << (len % 64)) - 1;
            }
        }
        c
    }

    /// True when every triple has the same colour.
    pub fn is_uniform(&self) -> bool {
        let red = self.red_count();
        red == 0 || red == self.len()
    }

    #[inline]
    pub(crate) fn red_mask(&self, u: usize, v: usize) -> u64 {
        let mut mask = (1u64 << u) | (1u64 << v);
        for p in 0..self.n {
            if p != u && p != v && self.bit(sorted_rank(u, v, p)) {
                mask |= 1 << p;
            }
        }
        mask
    }

    /// Red and blue line masks of every pair `u < v`, in colex pair order.
    pub(crate) fn pair_line_masks(&self) -> Vec<(usize, usize, u64, u64)> {
        let all = full_mask(self.n);
        let mut out = Vec::with_capacity(pair_count(self.n));
        for v in 1..self.n {
            for u in 0..v {
                let red = self.red_mask(u, v);
                let blue = (all & !red) | (1 << u) | (1 << v);
                out.push((u, v, red, blue));
            }
        }
        out
    }

    /// Distinct (red, blue) line counts without materialising line sets.
    pub fn line_counts(&self) -> (usize, usize) {
        let masks = self.pair_line_masks();
        let mut red: Vec<u64> = masks.iter().map(|m| m.2).collect();
        let mut blue: Vec<u64> = masks.iter().map(|m| m.3).collect();
        red.sort_unstable();
        red.dedup();
        blue.sort_unstable();
        blue.dedup();
        (red.len(), blue.len())
    }
}

fn check_pair(s: &Colouring, u: usize, v: usize) -> Result<()> {
    if u == v {
        return Err(invalid(format!("line needs two distinct points, got {u} twice")));
    }
    if u >= s.n || v >= s.n {
        return Err(invalid(format!("pair ({u},{v}) outside 0..{}", s.n)));
    }
    Ok(())
}

/// The line of colour `c` generated by `u` and `v`.
pub fn line(s: &Colouring, u: usize, v: usize, c: Colour) -> Result<PointSet> {
    check_pair(s, u, v)?;
    let red = s.red_mask(u, v);
    let mask = match c {
        Colour::Red => red,
        Colour::Blue => (full_mask(s.n) & !red) | (1 << u) | (1 << v),
    };
    Ok(PointSet::raw(s.n, mask))
}

/// Deduplicated red and blue lines of a system with their counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineSummary {
    pub n: usize,
    pub red_lines: BTreeSet<PointSet>,
    pub blue_lines: BTreeSet<PointSet>,
    pub m_red: usize,
    pub m_blue: usize,
    pub m: usize,
    pub m_star: usize,
}

impl LineSummary {
    pub fn from_lines(n: usize, red_lines: BTreeSet<PointSet>, blue_lines: BTreeSet<PointSet>) -> Self {
        let (m_red, m_blue) = (red_lines.len(), blue_lines.len());
        LineSummary {
            n,
            red_lines,
            blue_lines,
            m_red,
            m_blue,
            m: m_red + m_blue,
            m_star: m_red * m_blue,
        }
    }

    pub fn lines(&self, c: Colour) -> &BTreeSet<PointSet> {
        match c {
            Colour::Red => &self.red_lines,
            Colour::Blue => &self.blue_lines,
        }
    }
}

pub fn summarize(s: &Colouring) -> LineSummary {
    let mut red = BTreeSet::new();
    let mut blue = BTreeSet::new();
    for (_, _, r, b) in s.pair_line_masks() {
        red.insert(PointSet::raw(s.n, r));
        blue.insert(PointSet::raw(s.n, b));
    }
    LineSummary::from_lines(s.n, red, blue)
}

pub fn complement(s: &Colouring) -> Colouring {
    s.complement()
}

fn check_permutation(n: usize, sigma: &[usize]) -> Result<()> {
    if sigma.len() != n {
        return Err(invalid(format!("permutation has length {}, expected {n}", sigma.len())));
    }
    let mut seen = 0u64;
    for &p in sigma {
        if p >= n || seen >> p & 1 == 1 {
            return Err(invalid("sigma is not a bijection on 0..n"));
        }
        seen |= 1 << p;
    }
    Ok(())
}

/// Relabels points: the triple `{σ(a), σ(b), σ(c)}` of the result takes the
/// colour of `{a, b, c}` in `s`.
pub fn permute(s: &Colouring, sigma: &[usize]) -> Result<Colouring> {
    check_permutation(s.n, sigma)?;
    let mut out = Colouring::empty(s.n)?;
    for (a, b, c) in s.red_triples() {
        out.set_bit(sorted_rank(sigma[a], sigma[b], sigma[c]), true);
    }
    Ok(out)
}

/// `a` precedes `b` in lexicographic order of bit arrays read from rank 0,
/// with blue (0) before red (1).
#[inline]
pub(crate) fn packed_lex_less(a: u64, b: u64) -> bool {
    let diff = a ^ b;
    diff != 0 && a >> diff.trailing_zeros() & 1 == 0
}

/// Precomputed rank images of every permutation of `0..n`, `n ≤ 8`.
pub(crate) struct PermutationTable {
    pub(crate) n: usize,
    /// `maps[p][r]` is the rank image of triple `r` under permutation `p`.
    pub(crate) maps: Vec<Vec<u8>>,
}

impl PermutationTable {
    pub(crate) fn new(n: usize) -> PermutationTable {
        let t = triple_count(n);
        let triples: Vec<_> = (0..t).map(triple_unrank).collect();
        let mut maps = Vec::new();
        for_each_permutation(n, |sigma| {
            maps.push(
                triples
                    .iter()
                    .map(|&(a, b, c)| sorted_rank(sigma[a], sigma[b], sigma[c]) as u8)
                    .collect(),
            );
        });
        PermutationTable { n, maps }
    }

    #[inline]
    pub(crate) fn apply(&self, p: usize, bits: u64) -> u64 {
        let map = &self.maps[p];
        let mut out = 0u64;
        let mut m = bits;
        while m != 0 {
            let r = m.trailing_zeros() as usize;
            out |= 1 << map[r];
            m &= m - 1;
        }
        out
    }

    pub(crate) fn canonical_packed(&self, bits: u64, colour_swap: bool) -> u64 {
        let all = full_mask(triple_count(self.n));
        let mut best = bits;
        for p in 0..self.maps.len() {
            let img = self.apply(p, bits);
            if packed_lex_less(img, best) {
                best = img;
            }
            if colour_swap {
                let comp = !img & all;
                if packed_lex_less(comp, best) {
                    best = comp;
                }
            }
        }
        best
    }

    /// True iff no image of `bits` precedes it; exits at the first smaller image.
    pub(crate) fn is_canonical_packed(&self, bits: u64, colour_swap: bool) -> bool {
        let all = full_mask(triple_count(self.n));
        if colour_swap && packed_lex_less(!bits & all, bits) {
            return false;
        }
        for p in 1..self.maps.len() {
            let img = self.apply(p, bits);
            if packed_lex_less(img, bits) {
                return false;
            }
            if colour_swap && packed_lex_less(!img & all, bits) {
                return false;
            }
        }
        true
    }
}

/// Visits every permutation of `0..n` (Heap's algorithm), identity first.
pub(crate) fn for_each_permutation(n: usize, mut visit: impl FnMut(&[usize])) {
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    visit(&a);
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            visit(&a);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Lexicographically least image of `s` under all point relabellings (and,
/// with `include_colour_swap`, colour complementation). Two systems are
/// isomorphic under the chosen group iff their canonical forms are equal.
pub fn canonical(s: &Colouring, include_colour_swap: bool) -> Result<Colouring> {
    if s.n > MAX_CANONICAL_POINTS {
        return Err(unsupported(format!(
            "canonical form scans n! permutations; n = {} exceeds {MAX_CANONICAL_POINTS}",
            s.n
        )));
    }
    let bits = s.packed().expect("n <= 8 fits one word");
    let table = PermutationTable::new(s.n);
    Colouring::from_packed(s.n, table.canonical_packed(bits, include_colour_swap))
}

/// For each colour, every distinct line mapped to the pairs `(u, v)`, `u < v`,
/// that generate it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingPairMap {
    pub red: BTreeMap<PointSet, Vec<(usize, usize)>>,
    pub blue: BTreeMap<PointSet, Vec<(usize, usize)>>,
}

impl GeneratingPairMap {
    pub fn get(&self, c: Colour) -> &BTreeMap<PointSet, Vec<(usize, usize)>> {
        match c {
            Colour::Red => &self.red,
            Colour::Blue => &self.blue,
        }
    }
}

pub fn generating_pairs(s: &Colouring) -> GeneratingPairMap {
    let mut red: BTreeMap<PointSet, Vec<(usize, usize)>> = BTreeMap::new();
    let mut blue: BTreeMap<PointSet, Vec<(usize, usize)>> = BTreeMap::new();
    for (u, v, r, b) in s.pair_line_masks() {
        red.entry(PointSet::raw(s.n, r)).or_default().push((u, v));
        blue.entry(PointSet::raw(s.n, b)).or_default().push((u, v));
    }
    GeneratingPairMap { red, blue }
}

/// Largest intersection of two distinct red lines.
pub fn max_red_intersection(s: &Colouring) -> Result<usize> {
    let lines: Vec<u64> = summarize(s).red_lines.iter().map(|l| l.mask()).collect();
    if lines.len() < 2 {
        return Err(unsupported("fewer than two distinct red lines"));
    }
    let mut k = 0;
    for (i, a) in lines.iter().enumerate() {
        for b in &lines[i + 1..] {
            k = k.max((a & b).count_ones() as usize);
        }
    }
    Ok(k)
}

/// `dist[t]` is the number of distinct lines of colour `c` with `t` points;
/// indices 0 and 1 are always zero.
pub fn line_size_distribution(s: &Colouring, c: Colour) -> Vec<usize> {
    let mut dist = vec![0; s.n + 1];
    for l in summarize(s).lines(c) {
        dist[l.len()] += 1;
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fano() -> Colouring {
        Colouring::from_red_triples(
            7,
            [
                (0, 1, 2),
                (0, 3, 4),
                (0, 5, 6),
                (1, 3, 5),
                (1, 4, 6),
                (2, 3, 6),
                (2, 4, 5),
            ],
        )
        .unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(triple_rank(0, 1, 2).unwrap(), 0);
        assert_eq!(triple_rank(0, 1, 3).unwrap(), 1);
        assert_eq!(triple_rank(1, 2, 3).unwrap(), 3);
        assert!(triple_rank(1, 1, 3).is_err());
        assert!(triple_rank(2, 1, 3).is_err());
        assert!(triple_rank(0, 1, 64).is_err());
    }

    #[test]
    fn rank_is_colex_bijection() {
        let n = 9;
        let mut expected = 0;
        for k in 0..n {
            for j in 0..k {
                for i in 0..j {
                    assert_eq!(triple_rank(i, j, k).unwrap(), expected);
                    assert_eq!(triple_unrank(expected), (i, j, k));
                    expected += 1;
                }
            }
        }
        assert_eq!(expected, triple_count(n));
    }

    #[test]
    fn line_examples() {
        let e = Colouring::empty(4).unwrap();
        assert_eq!(line(&e, 0, 1, Colour::Blue).unwrap().to_vec(), vec![0, 1, 2, 3]);
        assert_eq!(line(&e, 0, 1, Colour::Red).unwrap().to_vec(), vec![0, 1]);
        assert!(line(&e, 2, 2, Colour::Red).is_err());
        assert!(line(&e, 0, 4, Colour::Red).is_err());

        let f = fano();
        for (a, b, c) in f.red_triples() {
            let expect = PointSet::from_points(7, [a, b, c]).unwrap();
            assert_eq!(line(&f, a, b, Colour::Red).unwrap(), expect);
            assert_eq!(line(&f, c, a, Colour::Red).unwrap(), expect);
        }
    }

    #[test]
    fn summarize_examples() {
        let full = Colouring::complete(5).unwrap();
        let s = summarize(&full);
        assert_eq!((s.m_red, s.m_blue), (1, 10));

        let s = summarize(&Colouring::empty(5).unwrap());
        assert_eq!((s.m_red, s.m_blue, s.m), (10, 1, 11));

        let s = summarize(&Colouring::empty(2).unwrap());
        assert_eq!((s.m_red, s.m_blue, s.m), (1, 1, 2));
        assert_eq!(Colouring::empty(2).unwrap().len(), 0);
    }

    #[test]
    fn fano_counts_and_complement() {
        let f = fano();
        let s = summarize(&f);
        assert_eq!((s.m_red, s.m_blue), (7, 7));
        let c = summarize(&f.complement());
        assert_eq!((c.m_red, c.m_blue), (7, 7));
        assert_eq!(max_red_intersection(&f).unwrap(), 1);
    }

    #[test]
    fn complement_is_involution_and_swaps_uniform() {
        let e = Colouring::empty(6).unwrap();
        assert_eq!(e.complement(), Colouring::complete(6).unwrap());
        assert_eq!(e.complement().complement(), e);
        let odd = Colouring::empty(9).unwrap().complement();
        assert_eq!(odd.red_count(), 84);
        assert!(!odd.tail_garbage());
    }

    #[test]
    fn permute_identity_and_errors() {
        let f = fano();
        let id: Vec<usize> = (0..7).collect();
        assert_eq!(permute(&f, &id).unwrap(), f);
        assert!(permute(&f, &[0, 1, 2, 3, 4, 5, 5]).is_err());
        assert!(permute(&f, &[0, 1, 2]).is_err());
    }

    #[test]
    fn canonical_basics() {
        let e = Colouring::empty(5).unwrap();
        assert_eq!(canonical(&e, false).unwrap(), e);
        assert_eq!(canonical(&e.complement(), true).unwrap(), e);
        assert!(canonical(&Colouring::empty(9).unwrap(), false).is_err());
        let f = fano();
        assert_eq!(canonical(&f, true).unwrap(), canonical(&f.complement(), true).unwrap());
    }

    #[test]
    fn permutation_enumeration_is_complete() {
        let mut seen = BTreeSet::new();
        for_each_permutation(5, |p| {
            seen.insert(p.to_vec());
        });
        assert_eq!(seen.len(), 120);
    }

    #[test]
    fn generating_pairs_examples() {
        let g = generating_pairs(&Colouring::complete(6).unwrap());
        assert_eq!(g.red.len(), 1);
        assert_eq!(g.red.values().next().unwrap().len(), 15);

        let g = generating_pairs(&Colouring::empty(4).unwrap());
        assert!(g.red.values().all(|p| p.len() == 1));
        assert_eq!(g.red.len(), 6);
    }

    #[test]
    fn max_intersection_needs_two_lines() {
        assert!(max_red_intersection(&Colouring::complete(5).unwrap()).is_err());
        assert_eq!(max_red_intersection(&Colouring::empty(4).unwrap()).unwrap(), 1);
    }

    #[test]
    fn distribution_of_complete() {
        let d = line_size_distribution(&Colouring::complete(6).unwrap(), Colour::Red);
        assert_eq!(d, vec![0, 0, 0, 0, 0, 0, 1]);
    }

    #[test]
    fn point_set_bounds() {
        assert!(PointSet::from_points(4, [4]).is_err());
        assert!(PointSet::from_mask(3, 0b1000).is_err());
        assert!(PointSet::empty(65).is_err());
        assert_eq!(PointSet::full(64).unwrap().len(), 64);
        assert_eq!(PointSet::from_points(5, [3, 1]).unwrap().to_string(), "{1,3}");
    }
}
