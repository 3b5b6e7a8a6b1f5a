//! Minimising `m = m_red + m_blue` over all colourings on `n` points.
//!
//! Three strategies, sharing one report type:
//!
//! * [`exhaustive_min`] scans all `2^C(n,3)` colourings (`n ≤ 6`), optionally
//!   keeping only the canonical representative of each orbit under point
//!   relabelling and colour swap;
//! * [`anneal_min`] runs single-triple-flip simulated annealing and yields an
//!   upper bound;
//! * [`bnb_min`] walks triples in colex order and prunes partial assignments
//!   whose guaranteed number of distinct lines already reaches the incumbent.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::analysis::sum_lower_bound;
use crate::error::{invalid, unsupported, Result};
use crate::generators::{compose, uniform};
use crate::system::{
    full_mask, pair_count, rank_unchecked, triple_count, triple_unrank, Colour, Colouring, PermutationTable,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    Anneal,
    Bnb,
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchMode::Exhaustive => "exhaustive",
            SearchMode::Anneal => "anneal",
            SearchMode::Bnb => "bnb",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub n: usize,
    pub best_m: usize,
    pub witness: Colouring,
    /// The search provably covered every colouring, so `best_m = m(n)`.
    pub exhaustive: bool,
    pub nodes_visited: u64,
    pub mode: SearchMode,
    pub seed: Option<u64>,
}

impl fmt::Display for SearchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MIN n={} m={} exhaustive={}", self.n, self.best_m, self.exhaustive)
    }
}

/// `(u, v, [(p, rank of {u,v,p})])`.
type PairTriples = (usize, usize, Vec<(u8, u32)>);

/// Triple ranks through each pair in colex pair order, precomputed for one `n`.
pub struct LineCounter {
    n: usize,
    pairs: Vec<PairTriples>,
}

impl LineCounter {
    pub fn new(n: usize) -> LineCounter {
        let mut pairs = Vec::with_capacity(pair_count(n));
        for v in 1..n {
            for u in 0..v {
                let through = (0..n)
                    .filter(|&p| p != u && p != v)
                    .map(|p| {
                        let mut t = [u, v, p];
                        t.sort_unstable();
                        (p as u8, rank_unchecked(t[0], t[1], t[2]) as u32)
                    })
                    .collect();
                pairs.push((u, v, through));
            }
        }
        LineCounter { n, pairs }
    }

    #[inline]
    fn red_mask_with(&self, pair: usize, bit: impl Fn(usize) -> bool) -> u64 {
        let (u, v, ref through) = self.pairs[pair];
        let mut mask = (1u64 << u) | (1u64 << v);
        for &(p, r) in through {
            if bit(r as usize) {
                mask |= 1 << p;
            }
        }
        mask
    }

    fn counts_with(&self, bit: impl Fn(usize) -> bool + Copy) -> (usize, usize) {
        let all = full_mask(self.n);
        let mut red = Vec::with_capacity(self.pairs.len());
        let mut blue = Vec::with_capacity(self.pairs.len());
        for (i, &(u, v, _)) in self.pairs.iter().enumerate() {
            let r = self.red_mask_with(i, bit);
            red.push(r);
            blue.push((all & !r) | (1 << u) | (1 << v));
        }
        red.sort_unstable();
        red.dedup();
        blue.sort_unstable();
        blue.dedup();
        (red.len(), blue.len())
    }

    pub fn counts(&self, s: &Colouring) -> (usize, usize) {
        debug_assert_eq!(s.n(), self.n);
        self.counts_with(|r| s.bit(r))
    }

    /// Counts for a colouring packed into one word (`n ≤ 8`).
    pub fn counts_packed(&self, bits: u64) -> (usize, usize) {
        self.counts_with(|r| bits >> r & 1 == 1)
    }

    pub fn m_packed(&self, bits: u64) -> usize {
        let (r, b) = self.counts_packed(bits);
        r + b
    }
}

/// Largest `n` accepted by [`exhaustive_min`].
pub const MAX_EXHAUSTIVE_POINTS: usize = 6;

/// Exact `m(n)` by scanning every colouring, `2 ≤ n ≤ 6`.
pub fn exhaustive_min(n: usize, symmetry: bool) -> Result<SearchReport> {
    exhaustive_min_threads(n, symmetry, 1)
}

/// [`exhaustive_min`] split across `threads` workers; the witness is the
/// least-`m` colouring with the smallest packed value, independent of the
/// thread count.
pub fn exhaustive_min_threads(n: usize, symmetry: bool, threads: usize) -> Result<SearchReport> {
    if n < 2 {
        return Err(invalid(format!("need at least 2 points, got {n}")));
    }
    if n > MAX_EXHAUSTIVE_POINTS {
        return Err(unsupported(format!(
            "exhaustive search stops at n = {MAX_EXHAUSTIVE_POINTS}; use anneal or bnb for n = {n}"
        )));
    }
    let total = 1u64 << triple_count(n);
    let counter = LineCounter::new(n);
    let table = symmetry.then(|| PermutationTable::new(n));
    let scan = |range: std::ops::Range<u64>| -> (usize, u64, u64) {
        let mut best = (usize::MAX, 0u64);
        let mut visited = 0;
        for bits in range {
            if let Some(t) = &table {
                if !t.is_canonical_packed(bits, true) {
                    continue;
                }
            }
            visited += 1;
            let m = counter.m_packed(bits);
            if m < best.0 {
                best = (m, bits);
            }
        }
        (best.0, best.1, visited)
    };
    let (best_m, bits, visited) = if threads <= 1 {
        scan(0..total)
    } else {
        let chunk = (total / (threads as u64 * 8)).max(1);
        let ranges: Vec<_> = (0..total)
            .step_by(chunk as usize)
            .map(|s| s..(s + chunk).min(total))
            .collect();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| invalid(e.to_string()))?;
        pool.install(|| {
            ranges.into_par_iter().map(scan).reduce(
                || (usize::MAX, 0, 0),
                |a, b| {
                    let best = if (a.0, a.1) <= (b.0, b.1) {
                        (a.0, a.1)
                    } else {
                        (b.0, b.1)
                    };
                    (best.0, best.1, a.2 + b.2)
                },
            )
        })
    };
    Ok(SearchReport {
        n,
        best_m,
        witness: Colouring::from_packed(n, bits)?,
        exhaustive: true,
        nodes_visited: visited,
        mode: SearchMode::Exhaustive,
        seed: None,
    })
}

/// The distinct values of `m` seen by a scan, for orbit-soundness checks.
pub fn m_spectrum(n: usize, symmetry: bool) -> Result<std::collections::BTreeSet<usize>> {
    if !(2..=MAX_EXHAUSTIVE_POINTS).contains(&n) {
        return Err(unsupported(format!(
            "spectrum scan supports 2..={MAX_EXHAUSTIVE_POINTS}"
        )));
    }
    let counter = LineCounter::new(n);
    let table = symmetry.then(|| PermutationTable::new(n));
    Ok((0..1u64 << triple_count(n))
        .filter(|&b| table.as_ref().is_none_or(|t| t.is_canonical_packed(b, true)))
        .map(|b| counter.m_packed(b))
        .collect())
}

/// Geometric cooling: temperature `initial · rate^step`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnealSchedule {
    pub initial_temperature: f64,
    pub cooling_rate: f64,
}

impl Default for AnnealSchedule {
    fn default() -> Self {
        AnnealSchedule {
            initial_temperature: 2.0,
            cooling_rate: 0.99995,
        }
    }
}

impl AnnealSchedule {
    /// Cooling rate that takes `initial_temperature` down to `final_temperature`
    /// over `steps` steps.
    pub fn spanning(initial_temperature: f64, final_temperature: f64, steps: u64) -> AnnealSchedule {
        let rate = (final_temperature / initial_temperature).powf(1.0 / steps.max(1) as f64);
        AnnealSchedule {
            initial_temperature,
            cooling_rate: rate,
        }
    }
}

/// Per-pair red masks with multiplicity maps, so flipping one triple updates
/// `m` by touching only the three pairs inside it.
pub struct IncrementalLines {
    s: Colouring,
    red: Vec<u64>,
    red_count: HashMap<u64, u32>,
    blue_count: HashMap<u64, u32>,
}

fn pair_index(u: usize, v: usize) -> usize {
    let (u, v) = (u.min(v), u.max(v));
    v * (v - 1) / 2 + u
}

impl IncrementalLines {
    pub fn new(s: Colouring) -> IncrementalLines {
        let masks = s.pair_line_masks();
        let mut st = IncrementalLines {
            red: masks.iter().map(|m| m.2).collect(),
            s,
            red_count: HashMap::new(),
            blue_count: HashMap::new(),
        };
        for (i, (u, v, r, _)) in masks.into_iter().enumerate() {
            debug_assert_eq!(pair_index(u, v), i);
            st.add(u, v, r);
        }
        st
    }

    fn blue_of(&self, u: usize, v: usize, red: u64) -> u64 {
        (full_mask(self.s.n()) & !red) | (1 << u) | (1 << v)
    }

    fn add(&mut self, u: usize, v: usize, red: u64) {
        let blue = self.blue_of(u, v, red);
        *self.red_count.entry(red).or_default() += 1;
        *self.blue_count.entry(blue).or_default() += 1;
    }

    fn remove(&mut self, u: usize, v: usize, red: u64) {
        let blue = self.blue_of(u, v, red);
        for (map, key) in [(&mut self.red_count, red), (&mut self.blue_count, blue)] {
            let c = map.get_mut(&key).expect("line present");
            *c -= 1;
            if *c == 0 {
                map.remove(&key);
            }
        }
    }

    pub fn m(&self) -> usize {
        self.red_count.len() + self.blue_count.len()
    }

    pub fn colouring(&self) -> &Colouring {
        &self.s
    }

    /// Flips triple `rank` and returns the new `m`.
    pub fn flip(&mut self, rank: usize) -> usize {
        let (a, b, c) = triple_unrank(rank);
        self.s.flip_bit(rank);
        for (u, v, p) in [(a, b, c), (a, c, b), (b, c, a)] {
            let i = pair_index(u, v);
            let old = self.red[i];
            self.remove(u, v, old);
            let new = old ^ (1 << p);
            self.red[i] = new;
            self.add(u, v, new);
        }
        self.m()
    }
}

/// Simulated annealing from the empty colouring.
pub fn anneal_min(n: usize, seed: u64, steps: u64, schedule: AnnealSchedule) -> Result<SearchReport> {
    if !(3..=crate::system::MAX_POINTS).contains(&n) {
        return Err(invalid(format!("annealing needs 3..=64 points, got {n}")));
    }
    anneal_from(Colouring::empty(n)?, seed, steps, schedule)
}

/// Simulated annealing with single-triple flips, starting at `start`.
/// Deterministic in `(start, seed, steps, schedule)`.
pub fn anneal_from(start: Colouring, seed: u64, steps: u64, schedule: AnnealSchedule) -> Result<SearchReport> {
    let n = start.n();
    if n < 3 {
        return Err(invalid("annealing needs at least one triple"));
    }
    if !(schedule.initial_temperature > 0.0 && schedule.cooling_rate > 0.0 && schedule.cooling_rate <= 1.0) {
        return Err(invalid("temperature must be positive and cooling rate in (0, 1]"));
    }
    let t = triple_count(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = IncrementalLines::new(start);
    let mut current = state.m();
    let mut best = (current, state.colouring().clone());
    let mut temperature = schedule.initial_temperature;
    for _ in 0..steps {
        let rank = rng.gen_range(0..t);
        let next = state.flip(rank);
        let delta = next as f64 - current as f64;
        if delta <= 0.0 || rng.gen::<f64>() < (-delta / temperature).exp() {
            current = next;
            if current < best.0 {
                best = (current, state.colouring().clone());
            }
        } else {
            state.flip(rank);
        }
        temperature *= schedule.cooling_rate;
    }
    Ok(SearchReport {
        n,
        best_m: best.0,
        witness: best.1,
        exhaustive: false,
        nodes_visited: steps,
        mode: SearchMode::Anneal,
        seed: Some(seed),
    })
}

/// Largest `n` accepted by [`bnb_min`].
pub const MAX_BNB_POINTS: usize = 7;

/// Deterministic starting witness for branch and bound: the composition of
/// two empty systems of sizes `floor(n/2)` and `ceil(n/2)`, or the empty
/// system below four points.
pub fn composition_seed(n: usize) -> Result<Colouring> {
    if n < 4 {
        return uniform(n, Colour::Blue);
    }
    compose(&uniform(n / 2, Colour::Blue)?, &uniform(n - n / 2, Colour::Blue)?)
}

struct BnbShared {
    incumbent: AtomicUsize,
    best: Mutex<Option<(usize, u64)>>,
    nodes: AtomicU64,
    budget: u64,
    out_of_budget: AtomicBool,
}

impl BnbShared {
    fn offer(&self, m: usize, bits: u64) {
        // the incumbent only ever decreases
        self.incumbent.fetch_min(m, Ordering::SeqCst);
        let mut best = self.best.lock().unwrap();
        if best.is_none_or(|b| (m, bits) < b) {
            *best = Some((m, bits));
        }
    }
}

struct BnbWorker<'a> {
    triples: Vec<(usize, usize, usize)>,
    /// Per pair: points known to be on / off its red line.
    red_in: Vec<u64>,
    red_out: Vec<u64>,
    pair_bits: Vec<u64>,
    counter: &'a LineCounter,
    floor: usize,
    shared: &'a BnbShared,
}

impl<'a> BnbWorker<'a> {
    fn new(n: usize, counter: &'a LineCounter, shared: &'a BnbShared) -> Self {
        let pair_bits: Vec<u64> = (1..n)
            .flat_map(|v| (0..v).map(move |u| (1u64 << u) | (1u64 << v)))
            .collect();
        BnbWorker {
            triples: (0..triple_count(n)).map(triple_unrank).collect(),
            red_in: pair_bits.clone(),
            red_out: vec![0; pair_bits.len()],
            pair_bits,
            counter,
            floor: sum_lower_bound(n) as usize,
            shared,
        }
    }

    fn assign(&mut self, rank: usize, red: bool) {
        let (a, b, c) = self.triples[rank];
        for (u, v, p) in [(a, b, c), (a, c, b), (b, c, a)] {
            let i = pair_index(u, v);
            if red {
                self.red_in[i] |= 1 << p;
            } else {
                self.red_out[i] |= 1 << p;
            }
        }
    }

    fn unassign(&mut self, rank: usize) {
        let (a, b, c) = self.triples[rank];
        for (u, v, p) in [(a, b, c), (a, c, b), (b, c, a)] {
            let i = pair_index(u, v);
            self.red_in[i] &= !(1 << p);
            self.red_out[i] &= !(1 << p);
        }
    }

    /// Size of a greedily built set of pairs whose lines are certainly
    /// pairwise distinct in every completion.
    fn distinct_floor(ins: &[u64], outs: &[u64]) -> usize {
        let mut chosen: Vec<usize> = Vec::with_capacity(ins.len());
        for i in 0..ins.len() {
            if chosen.iter().all(|&j| ins[i] & outs[j] != 0 || outs[i] & ins[j] != 0) {
                chosen.push(i);
            }
        }
        chosen.len()
    }

    fn lower_bound(&self) -> usize {
        let red = Self::distinct_floor(&self.red_in, &self.red_out);
        // blue line: contains the pair and the points known off the red line
        let blue_in: Vec<u64> = self.red_out.iter().zip(&self.pair_bits).map(|(o, p)| o | p).collect();
        let blue_out: Vec<u64> = self.red_in.iter().zip(&self.pair_bits).map(|(i, p)| i & !p).collect();
        let blue = Self::distinct_floor(&blue_in, &blue_out);
        (red + blue).max(self.floor)
    }

    /// Returns false when the budget ran out.
    fn dfs(&mut self, rank: usize, bits: u64) -> bool {
        let visited = self.shared.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if visited > self.shared.budget {
            self.shared.out_of_budget.store(true, Ordering::Relaxed);
            return false;
        }
        if self.lower_bound() >= self.shared.incumbent.load(Ordering::SeqCst) {
            return true;
        }
        if rank == self.triples.len() {
            let m = self.counter.m_packed(bits);
            if m < self.shared.incumbent.load(Ordering::SeqCst) {
                self.shared.offer(m, bits);
            }
            return true;
        }
        for red in [false, true] {
            self.assign(rank, red);
            let ok = self.dfs(rank + 1, bits | (u64::from(red) << rank));
            self.unassign(rank);
            if !ok {
                return false;
            }
        }
        true
    }
}

/// Branch and bound over colex-ordered triples, `n ≤ 7`.
///
/// The incumbent starts at [`composition_seed`] (or `initial_upper + 1` when
/// that is smaller); a partial assignment is pruned once the number of lines
/// it already forces to be distinct, or the global sum bound, reaches the
/// incumbent. Colour swap symmetry fixes the first triple blue.
/// `exhaustive` is reported only when the whole tree was closed within
/// `budget` nodes and the returned witness lies within the proven range.
pub fn bnb_min(n: usize, budget: Option<u64>, initial_upper: Option<usize>) -> Result<SearchReport> {
    bnb_min_threads(n, budget, initial_upper, 1)
}

pub fn bnb_min_threads(
    n: usize,
    budget: Option<u64>,
    initial_upper: Option<usize>,
    threads: usize,
) -> Result<SearchReport> {
    if !(2..=MAX_BNB_POINTS).contains(&n) {
        return Err(unsupported(format!(
            "branch and bound supports 2..={MAX_BNB_POINTS} points, got {n}"
        )));
    }
    let seed = composition_seed(n)?;
    let counter = LineCounter::new(n);
    let seed_bits = seed.packed().expect("n <= 7 fits one word");
    let seed_m = counter.m_packed(seed_bits);
    let cutoff = initial_upper.map_or(seed_m, |u| seed_m.min(u + 1));
    let shared = BnbShared {
        incumbent: AtomicUsize::new(cutoff),
        best: Mutex::new(None),
        nodes: AtomicU64::new(0),
        budget: budget.unwrap_or(u64::MAX),
        out_of_budget: AtomicBool::new(false),
    };
    if seed_m <= cutoff {
        shared.offer(seed_m, seed_bits);
    }
    let t = triple_count(n);
    if t == 0 {
        shared.nodes.fetch_add(1, Ordering::Relaxed);
    } else {
        // fix triple 0 blue, then fan out over the next `depth` triples
        let depth = if threads > 1 { (t - 1).min(6) } else { 0 };
        let prefixes: Vec<u64> = (0..1u64 << depth).map(|p| p << 1).collect();
        let run = |prefix: u64| {
            let mut w = BnbWorker::new(n, &counter, &shared);
            w.assign(0, false);
            for r in 1..=depth {
                w.assign(r, prefix >> r & 1 == 1);
            }
            w.dfs(depth + 1, prefix);
        };
        if threads > 1 {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| invalid(e.to_string()))?;
            pool.install(|| prefixes.into_par_iter().for_each(run));
        } else {
            prefixes.into_iter().for_each(run);
        }
    }
    let (best_m, bits) = shared.best.lock().unwrap().unwrap_or((seed_m, seed_bits));
    let closed = !shared.out_of_budget.load(Ordering::Relaxed);
    Ok(SearchReport {
        n,
        best_m,
        witness: Colouring::from_packed(n, bits)?,
        exhaustive: closed && best_m <= cutoff,
        nodes_visited: shared.nodes.load(Ordering::Relaxed).min(shared.budget),
        mode: SearchMode::Bnb,
        seed: None,
    })
}

/// Exact `m(n)` for `2 ≤ n ≤ max_n` (capped at six) by exhaustive search.
pub fn table(max_n: usize, symmetry: bool, threads: usize) -> Result<Vec<SearchReport>> {
    (2..=max_n.min(MAX_EXHAUSTIVE_POINTS))
        .map(|n| exhaustive_min_threads(n, symmetry, threads))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::summarize;

    #[test]
    fn counter_matches_summarize() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 3..=9 {
            let counter = LineCounter::new(n);
            for _ in 0..20 {
                let mut s = Colouring::empty(n).unwrap();
                for r in 0..s.len() {
                    s.set_bit(r, rng.gen());
                }
                let sum = summarize(&s);
                assert_eq!(counter.counts(&s), (sum.m_red, sum.m_blue));
                if let Some(p) = s.packed() {
                    assert_eq!(counter.counts_packed(p), (sum.m_red, sum.m_blue));
                }
            }
        }
    }

    #[test]
    fn incremental_matches_full_recount() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut inc = IncrementalLines::new(Colouring::empty(9).unwrap());
        for _ in 0..500 {
            let r = rng.gen_range(0..triple_count(9));
            let m = inc.flip(r);
            assert_eq!(m, summarize(inc.colouring()).m);
        }
    }

    #[test]
    fn small_exhaustive_values() {
        let got: Vec<usize> = (2..=5).map(|n| exhaustive_min(n, false).unwrap().best_m).collect();
        assert_eq!(got, vec![2, 4, 7, 11]);
        let sym: Vec<usize> = (2..=5).map(|n| exhaustive_min(n, true).unwrap().best_m).collect();
        assert_eq!(sym, got);
        assert!(exhaustive_min(7, false).is_err());
        assert!(exhaustive_min(1, false).is_err());
    }

    #[test]
    fn witness_reproduces_best() {
        for n in 2..=5 {
            let r = exhaustive_min(n, true).unwrap();
            assert_eq!(summarize(&r.witness).m, r.best_m);
        }
    }

    #[test]
    fn threads_do_not_change_the_answer() {
        let a = exhaustive_min_threads(5, false, 1).unwrap();
        let b = exhaustive_min_threads(5, false, 4).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn orbit_soundness() {
        for n in 3..=5 {
            assert_eq!(m_spectrum(n, true).unwrap(), m_spectrum(n, false).unwrap());
        }
    }

    #[test]
    fn anneal_is_deterministic() {
        let s = AnnealSchedule::default();
        let a = anneal_min(6, 9, 5_000, s).unwrap();
        let b = anneal_min(6, 9, 5_000, s).unwrap();
        assert_eq!(a, b);
        assert_eq!(summarize(&a.witness).m, a.best_m);
        assert!(anneal_min(2, 0, 10, s).is_err());
        assert!(anneal_min(
            6,
            0,
            10,
            AnnealSchedule {
                initial_temperature: 0.0,
                cooling_rate: 0.5
            }
        )
        .is_err());
    }

    #[test]
    fn bnb_small() {
        let r = bnb_min(5, None, None).unwrap();
        assert_eq!((r.best_m, r.exhaustive), (11, true));
        assert_eq!(summarize(&r.witness).m, 11);
        for n in 2..=4 {
            let r = bnb_min(n, None, None).unwrap();
            assert_eq!(r.best_m, [2, 4, 7][n - 2]);
            assert!(r.exhaustive);
        }
        assert!(bnb_min(8, None, None).is_err());
    }

    #[test]
    fn bnb_with_too_low_upper_is_not_exact() {
        let r = bnb_min(5, None, Some(9)).unwrap();
        assert!(!r.exhaustive);
        assert_eq!(summarize(&r.witness).m, r.best_m);
    }

    #[test]
    fn bnb_budget_exhaustion() {
        let r = bnb_min(6, Some(10), None).unwrap();
        assert!(!r.exhaustive);
        assert_eq!(summarize(&r.witness).m, r.best_m);
    }

    /// Brute-force oracle: the least `m` over all completions of a prefix.
    fn min_over_completions(counter: &LineCounter, n: usize, prefix_len: usize, prefix: u64) -> usize {
        let free = triple_count(n) - prefix_len;
        (0..1u64 << free)
            .map(|rest| counter.m_packed(prefix | rest << prefix_len))
            .min()
            .unwrap()
    }

    #[test]
    fn pruning_bound_is_admissible() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for n in [5usize, 6] {
            let t = triple_count(n);
            let counter = LineCounter::new(n);
            let shared = BnbShared {
                incumbent: AtomicUsize::new(usize::MAX),
                best: Mutex::new(None),
                nodes: AtomicU64::new(0),
                budget: u64::MAX,
                out_of_budget: AtomicBool::new(false),
            };
            for _ in 0..300 {
                let len = rng.gen_range(0..=t).max(t.saturating_sub(13));
                let prefix: u64 = rng.gen::<u64>() & ((1u64 << len) - 1);
                let mut w = BnbWorker::new(n, &counter, &shared);
                for r in 0..len {
                    w.assign(r, prefix >> r & 1 == 1);
                }
                let exact = min_over_completions(&counter, n, len, prefix);
                assert!(w.lower_bound() <= exact, "n={n} len={len} prefix={prefix:#x}");
                if len == t {
                    assert_eq!(w.lower_bound(), exact);
                }
            }
        }
    }

    #[test]
    fn seven_points_closed_by_bnb() {
        let r = bnb_min(7, Some(10_000_000), None).unwrap();
        assert!(r.exhaustive);
        assert_eq!(r.best_m, 14);
        assert_eq!(summarize(&r.witness).m, 14);
    }

    #[test]
    fn composition_seed_values() {
        assert_eq!(summarize(&composition_seed(6).unwrap()).m, 14);
        assert!(summarize(&composition_seed(7).unwrap()).m <= 18);
    }
}
