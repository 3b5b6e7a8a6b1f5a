//! Bound calculators and executable checks of the line-count theorems.
//!
//! Every checker returns a report value rather than a boolean so callers can
//! print what was measured; a failing report is a finding, not an error.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Result;
use crate::generators::compose;
use crate::system::{
    binomial, generating_pairs, line, max_red_intersection, pair_count, summarize, Colour, Colouring, LineSummary,
    PointSet,
};
use crate::treespace::{
    is_extremal_tree, is_red_floor_tree, tree_blue_count, tree_line_violations, tree_m_lower_bound, tree_red_floor,
    tree_twin_violations, twin_decomposition, Tree,
};

/// Common surface of every checker report.
pub trait Check {
    fn name(&self) -> &'static str;
    fn passed(&self) -> bool;
    fn measured(&self) -> u64;
    fn bound(&self) -> u64;

    /// `CHECK <name> <pass|fail> <measured> <bound>`.
    fn check_line(&self) -> String {
        format!(
            "CHECK {} {} {} {}",
            self.name(),
            if self.passed() { "pass" } else { "fail" },
            self.measured(),
            self.bound()
        )
    }
}

fn ceil_sqrt(x: u64) -> u64 {
    let mut r = (x as f64).sqrt() as u64;
    while r * r < x {
        r += 1;
    }
    while r > 0 && (r - 1) * (r - 1) >= x {
        r -= 1;
    }
    r
}

/// `ceil(2·sqrt(C(n,2)))`, the least integer `m` with `m² ≥ 4·C(n,2)`.
pub fn sum_lower_bound(n: usize) -> u64 {
    ceil_sqrt(4 * binomial(n as u64, 2))
}

/// `C(n,2)`, the exact minimum of `m_red · m_blue`.
pub fn product_lower_bound(n: usize) -> u64 {
    binomial(n as u64, 2)
}

/// `ceil(C(n,2) / C(k+2,2))` for systems whose red lines pairwise share at
/// most `k` points.
pub fn small_intersection_bound(n: usize, k: usize) -> u64 {
    binomial(n as u64, 2).div_ceil(binomial(k as u64 + 2, 2))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EasyBoundReport {
    pub n: usize,
    pub m: u64,
    pub m_star: u64,
    pub sum_bound: u64,
    pub product_bound: u64,
    /// `m_star` meets the product bound exactly.
    pub product_equality: bool,
    pub uniform: bool,
}

impl Check for EasyBoundReport {
    fn name(&self) -> &'static str {
        "easy"
    }
    fn passed(&self) -> bool {
        self.m >= self.sum_bound && self.m_star >= self.product_bound && self.product_equality == self.uniform
    }
    fn measured(&self) -> u64 {
        self.m_star
    }
    fn bound(&self) -> u64 {
        self.product_bound
    }
}

/// Sum and product bounds, with equality in the product bound cross-checked
/// against uniformity of the colouring.
pub fn check_easy_bound(s: &Colouring) -> EasyBoundReport {
    let (r, b) = s.line_counts();
    let (m, m_star) = ((r + b) as u64, (r * b) as u64);
    let product_bound = product_lower_bound(s.n());
    EasyBoundReport {
        n: s.n(),
        m,
        m_star,
        sum_bound: sum_lower_bound(s.n()),
        product_bound,
        product_equality: m_star == product_bound,
        uniform: s.is_uniform(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaSimpleReport {
    pub lines_checked: usize,
    pub violations: Vec<String>,
}

impl Check for LemmaSimpleReport {
    fn name(&self) -> &'static str {
        "simple"
    }
    fn passed(&self) -> bool {
        self.violations.is_empty()
    }
    fn measured(&self) -> u64 {
        self.violations.len() as u64
    }
    fn bound(&self) -> u64 {
        0
    }
}

/// For each line `L` with generating pairs `{a_i, b_i}`, the opposite-colour
/// lines of those pairs are pairwise distinct and each meets
/// `X = ∪{a_i, b_i}` in exactly its own pair. Checked in both colours.
pub fn check_lemma_simple(s: &Colouring) -> LemmaSimpleReport {
    let n = s.n();
    let gp = generating_pairs(s);
    let mut report = LemmaSimpleReport {
        lines_checked: 0,
        violations: Vec::new(),
    };
    for colour in [Colour::Red, Colour::Blue] {
        for (l, pairs) in gp.get(colour) {
            report.lines_checked += 1;
            let x = PointSet::from_points(n, pairs.iter().flat_map(|&(a, b)| [a, b])).unwrap();
            let mut others: Vec<PointSet> = Vec::with_capacity(pairs.len());
            for &(a, b) in pairs {
                let other = line(s, a, b, colour.flip()).unwrap();
                let pair = PointSet::from_points(n, [a, b]).unwrap();
                if other.intersection(&x) != pair {
                    report.violations.push(format!(
                        "{colour} line {l}: {} line of ({a},{b}) meets X in {}",
                        colour.flip(),
                        other.intersection(&x)
                    ));
                }
                others.push(other);
            }
            others.sort();
            let before = others.len();
            others.dedup();
            if others.len() != before {
                report
                    .violations
                    .push(format!("{colour} line {l}: opposite lines of its generators coincide"));
            }
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallIntersectionReport {
    pub n: usize,
    /// Largest intersection of two distinct red lines.
    pub k: usize,
    pub m: u64,
    pub bound: u64,
    /// Number of generator-line entries (one per pair).
    pub entries: usize,
    /// Distinct lines among the entries.
    pub distinct_entries: usize,
    pub max_red_repeat: usize,
    pub red_repeat_cap: usize,
    pub max_blue_repeat: usize,
}

impl Check for SmallIntersectionReport {
    fn name(&self) -> &'static str {
        "smallinter"
    }
    fn passed(&self) -> bool {
        self.m >= self.bound
            && self.entries == pair_count(self.n)
            && self.max_red_repeat <= self.red_repeat_cap
            && self.max_blue_repeat <= 1
            && self.distinct_entries as u64 >= self.bound
    }
    fn measured(&self) -> u64 {
        self.m
    }
    fn bound(&self) -> u64 {
        self.bound
    }
}

/// Small-intersection bound together with the counting facts behind it:
/// every pair `{a, b}` contributes its red line when `|R(ab)| ≤ k + 2` and its
/// blue line otherwise; red entries repeat at most `C(k+2, 2)` times and blue
/// entries never repeat.
pub fn check_small_intersection(s: &Colouring) -> Result<SmallIntersectionReport> {
    let k = max_red_intersection(s)?;
    let n = s.n();
    let mut red: BTreeMap<PointSet, usize> = BTreeMap::new();
    let mut blue: BTreeMap<PointSet, usize> = BTreeMap::new();
    let mut entries = 0;
    for v in 1..n {
        for u in 0..v {
            let r = line(s, u, v, Colour::Red)?;
            if r.len() <= k + 2 {
                *red.entry(r).or_default() += 1;
            } else {
                *blue.entry(line(s, u, v, Colour::Blue)?).or_default() += 1;
            }
            entries += 1;
        }
    }
    let (mr, mb) = s.line_counts();
    Ok(SmallIntersectionReport {
        n,
        k,
        m: (mr + mb) as u64,
        bound: small_intersection_bound(n, k),
        entries,
        distinct_entries: red.len() + blue.len(),
        max_red_repeat: red.values().copied().max().unwrap_or(0),
        red_repeat_cap: binomial(k as u64 + 2, 2) as usize,
        max_blue_repeat: blue.values().copied().max().unwrap_or(0),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairCountReport {
    pub colour: Colour,
    pub n: usize,
    /// Total generating pairs over distinct lines.
    pub partition_total: u64,
    pub pairs: u64,
    /// `Σ_t C(t,2)·m_t` over the line-size distribution.
    pub weighted_sizes: u64,
    /// Lines whose generating-pair count differs from `C(|L|, 2)`.
    pub deficient_lines: Vec<PointSet>,
}

impl PairCountReport {
    /// Every line is generated by all pairs of its points, so
    /// `Σ_t C(t,2)·m_t = C(n,2)`.
    pub fn strengthened_holds(&self) -> bool {
        self.deficient_lines.is_empty() && self.weighted_sizes == self.pairs
    }
}

impl Check for PairCountReport {
    fn name(&self) -> &'static str {
        "paircount"
    }
    fn passed(&self) -> bool {
        self.partition_total == self.pairs
    }
    fn measured(&self) -> u64 {
        self.partition_total
    }
    fn bound(&self) -> u64 {
        self.pairs
    }
}

pub fn check_pair_count(s: &Colouring, c: Colour) -> PairCountReport {
    let gp = generating_pairs(s);
    let lines = gp.get(c);
    let mut report = PairCountReport {
        colour: c,
        n: s.n(),
        partition_total: 0,
        pairs: pair_count(s.n()) as u64,
        weighted_sizes: 0,
        deficient_lines: Vec::new(),
    };
    for (l, pairs) in lines {
        let full = binomial(l.len() as u64, 2);
        report.partition_total += pairs.len() as u64;
        report.weighted_sizes += full;
        if pairs.len() as u64 != full {
            report.deficient_lines.push(*l);
        }
    }
    report
}

/// The six line families of a composed system, in the order
/// `V1+v`, `v+V2`, `L1_red+V2`, `L1_blue`, `L2_red`, `V1+L2_blue`.
pub const COMPOSITION_FAMILIES: [&str; 6] = [
    "V1+v (red)",
    "v+V2 (blue)",
    "L+V2 (red, L red in S1)",
    "L (blue, from S1)",
    "L (red, from S2)",
    "V1+L (blue, L blue in S2)",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionReport {
    pub n1: usize,
    pub n2: usize,
    pub m1: u64,
    pub m2: u64,
    pub m: u64,
    pub m_red: u64,
    pub m_blue: u64,
    /// Which of the six families were found among the composed lines.
    pub families_present: [bool; 6],
    /// Family members counted without merging coincident lines.
    pub family_lines: u64,
}

impl CompositionReport {
    pub fn bound(&self) -> u64 {
        self.m1 + self.m2 + (self.n1 + self.n2) as u64
    }

    /// Family lines that coincide with another family member of the same
    /// colour.
    pub fn coincidences(&self) -> u64 {
        self.family_lines - self.m
    }
}

impl Check for CompositionReport {
    fn name(&self) -> &'static str {
        "compose"
    }
    fn passed(&self) -> bool {
        self.m <= CompositionReport::bound(self) && self.families_present.iter().all(|&p| p)
    }
    fn measured(&self) -> u64 {
        self.m
    }
    fn bound(&self) -> u64 {
        CompositionReport::bound(self)
    }
}

pub fn check_composition(s1: &Colouring, s2: &Colouring) -> Result<CompositionReport> {
    let c = compose(s1, s2)?;
    let (n1, n2) = (s1.n(), s2.n());
    let n = n1 + n2;
    let sum = summarize(&c);
    let (a, b) = (summarize(s1), summarize(s2));
    let v1 = PointSet::from_points(n, 0..n1)?;
    let v2 = PointSet::from_points(n, n1..n)?;
    let lift1 = |l: &PointSet| PointSet::from_mask(n, l.mask()).unwrap();
    let lift2 = |l: &PointSet| PointSet::from_mask(n, l.mask() << n1).unwrap();
    let single = |v: usize| PointSet::from_points(n, [v]).unwrap();

    let families: [(Colour, Vec<PointSet>); 6] = [
        (Colour::Red, (n1..n).map(|v| v1.union(&single(v))).collect()),
        (Colour::Blue, (0..n1).map(|v| v2.union(&single(v))).collect()),
        (Colour::Red, a.red_lines.iter().map(|l| lift1(l).union(&v2)).collect()),
        (Colour::Blue, a.blue_lines.iter().map(lift1).collect()),
        (Colour::Red, b.red_lines.iter().map(lift2).collect()),
        (Colour::Blue, b.blue_lines.iter().map(|l| v1.union(&lift2(l))).collect()),
    ];
    let mut families_present = [false; 6];
    let mut family_lines = 0;
    for (i, (colour, lines)) in families.iter().enumerate() {
        families_present[i] = lines.iter().all(|l| sum.lines(*colour).contains(l));
        family_lines += lines.len() as u64;
    }
    Ok(CompositionReport {
        n1,
        n2,
        m1: a.m as u64,
        m2: b.m as u64,
        m: sum.m as u64,
        m_red: sum.m_red as u64,
        m_blue: sum.m_blue as u64,
        families_present,
        family_lines,
    })
}

/// Line counts and formula checks for one tree-derived system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeReport {
    pub n: usize,
    pub a: usize,
    pub b: usize,
    pub s: usize,
    pub m_red: u64,
    pub m_blue: u64,
    pub blue_formula: u64,
    pub lower_bound: u64,
    pub extremal: bool,
    /// Red floor and whether the tree belongs to its equality family, for
    /// trees that are neither paths nor stars.
    pub red_floor: Option<(u64, bool)>,
    pub lemma_violations: Vec<String>,
}

impl TreeReport {
    pub fn m(&self) -> u64 {
        self.m_red + self.m_blue
    }

    pub fn blue_formula_holds(&self) -> bool {
        self.m_blue == self.blue_formula
    }

    pub fn lower_bound_holds(&self) -> bool {
        self.m() >= self.lower_bound && (self.m() == self.lower_bound) == self.extremal
    }

    pub fn red_floor_holds(&self) -> bool {
        match self.red_floor {
            None => true,
            Some((floor, family)) => self.m_red >= floor && (self.m_red == floor) == family,
        }
    }
}

impl Check for TreeReport {
    fn name(&self) -> &'static str {
        "trees"
    }
    fn passed(&self) -> bool {
        self.blue_formula_holds()
            && self.lower_bound_holds()
            && self.red_floor_holds()
            && self.lemma_violations.is_empty()
    }
    fn measured(&self) -> u64 {
        self.m()
    }
    fn bound(&self) -> u64 {
        self.lower_bound
    }
}

/// Compares a tree system's measured counts with the closed forms. The
/// per-line facts are checked when `with_lemmas` is set.
pub fn check_tree(t: &Tree, with_lemmas: bool) -> TreeReport {
    let dec = twin_decomposition(t);
    let (r, b) = t.system().line_counts();
    let mut lemma_violations = Vec::new();
    if with_lemmas {
        lemma_violations.extend(tree_line_violations(t));
        lemma_violations.extend(tree_twin_violations(t));
    }
    TreeReport {
        n: t.n(),
        a: dec.a,
        b: dec.b,
        s: dec.s,
        m_red: r as u64,
        m_blue: b as u64,
        blue_formula: tree_blue_count(&dec),
        lower_bound: tree_m_lower_bound(t.n()),
        extremal: is_extremal_tree(t),
        red_floor: tree_red_floor(&dec).ok().map(|f| (f, is_red_floor_tree(t))),
        lemma_violations,
    }
}

/// Outcome of running [`check_easy_bound`] over every colouring on `n` points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EasyCensus {
    pub n: usize,
    pub systems: u64,
    pub failures: u64,
    /// Colourings meeting the product bound with equality.
    pub equality: u64,
    /// Uniform colourings meeting it (should equal `equality`).
    pub equality_uniform: u64,
    pub min_m_star: u64,
}

impl Check for EasyCensus {
    fn name(&self) -> &'static str {
        "easy-census"
    }
    fn passed(&self) -> bool {
        self.failures == 0 && self.equality == 2 && self.equality_uniform == 2
    }
    fn measured(&self) -> u64 {
        self.min_m_star
    }
    fn bound(&self) -> u64 {
        product_lower_bound(self.n)
    }
}

/// All `2^C(n,3)` colourings, `3 ≤ n ≤ 6`.
pub fn all_colourings(n: usize) -> Result<impl Iterator<Item = Colouring>> {
    if !(3..=6).contains(&n) {
        return Err(crate::error::unsupported(format!(
            "exhaustive sweeps cover 3..=6 points, got {n}"
        )));
    }
    let t = crate::system::triple_count(n);
    Ok((0..1u64 << t).map(move |bits| Colouring::from_packed(n, bits).unwrap()))
}

pub fn easy_bound_census(n: usize) -> Result<EasyCensus> {
    let mut census = EasyCensus {
        n,
        systems: 0,
        failures: 0,
        equality: 0,
        equality_uniform: 0,
        min_m_star: u64::MAX,
    };
    for s in all_colourings(n)? {
        let r = check_easy_bound(&s);
        census.systems += 1;
        census.failures += u64::from(!r.passed());
        census.equality += u64::from(r.product_equality);
        census.equality_uniform += u64::from(r.product_equality && r.uniform);
        census.min_m_star = census.min_m_star.min(r.m_star);
    }
    Ok(census)
}

impl fmt::Display for LineSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.m_red, self.m_blue, self.m, self.m_star)
    }
}
