//! Acceptance gate: one line per criterion, non-zero exit if any fails.

mod common;

use std::time::{Duration, Instant};

use common::{as_lists, naive_lines, random_colouring};
use hyperlines::analysis::{
    all_colourings, check_composition, check_easy_bound, check_lemma_simple, check_pair_count,
    check_small_intersection, check_tree, easy_bound_census, Check,
};
use hyperlines::generators::{btree_colouring, compose, grid, planar, projective_plane, steiner, uniform};
use hyperlines::search::{anneal_min, exhaustive_min, AnnealSchedule};
use hyperlines::system::binomial;
use hyperlines::treespace::{
    all_pairs_shortest, derive, enumerate_trees, is_extremal_tree, random_tree, sample_trees, tree_blue_count,
    tree_m_lower_bound, twin_decomposition, Tree,
};
use hyperlines::{summarize, Colour, Colouring};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seed and step count whose annealing run at n = 7 is recorded in the README.
const N7_SEED: u64 = 7;
const N7_STEPS: u64 = 200_000;

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(elapsed <= limit, || format!("{what} took {elapsed:?}, limit {limit:?}"))
}

fn table_reproduction() -> Outcome {
    let expected = [2, 4, 7, 11, 14];
    let start = Instant::now();
    let mut got = Vec::new();
    for n in 2..=5 {
        let r = exhaustive_min(n, false).map_err(|e| e.to_string())?;
        ensure(r.exhaustive && summarize(&r.witness).m == r.best_m, || {
            format!("n={n}: bad report")
        })?;
        got.push(r.best_m);
    }
    within(start.elapsed(), Duration::from_secs(5), "n <= 5")?;
    let start = Instant::now();
    let six = exhaustive_min(6, false).map_err(|e| e.to_string())?;
    within(start.elapsed(), Duration::from_secs(600), "n = 6")?;
    got.push(six.best_m);
    let sym = exhaustive_min(6, true).map_err(|e| e.to_string())?;
    ensure(sym.best_m == six.best_m, || "symmetry mode disagrees at n = 6".into())?;
    ensure(got == expected, || format!("m(2..6) = {got:?}, expected {expected:?}"))?;
    Ok(format!("m(2..6) = {got:?} (n=6 full scan {:?})", start.elapsed()))
}

fn seven_point_witness() -> Outcome {
    let start = Instant::now();
    let r =
        anneal_min(7, N7_SEED, N7_STEPS, AnnealSchedule::spanning(2.0, 0.05, N7_STEPS)).map_err(|e| e.to_string())?;
    within(start.elapsed(), Duration::from_secs(600), "annealing")?;
    ensure(r.best_m <= 17, || format!("anneal reached only {}", r.best_m))?;
    ensure(summarize(&r.witness).m == r.best_m, || "stale witness".into())?;
    ensure(!r.exhaustive, || "annealing must not claim exactness".into())?;

    let start = Instant::now();
    let e3 = uniform(3, Colour::Blue).unwrap();
    let e4 = uniform(4, Colour::Blue).unwrap();
    let fallback = summarize(&compose(&e3, &e4).unwrap()).m;
    within(start.elapsed(), Duration::from_millis(100), "composition fallback")?;
    ensure(fallback <= 18, || format!("composition gives {fallback}"))?;
    Ok(format!(
        "anneal seed {N7_SEED}: m = {} <= 17; compose(empty3, empty4): m = {fallback} <= 18",
        r.best_m
    ))
}

fn product_theorem() -> Outcome {
    let start = Instant::now();
    let census = easy_bound_census(5).map_err(|e| e.to_string())?;
    within(start.elapsed(), Duration::from_secs(1), "n = 5 census")?;
    ensure(census.systems == 1024, || format!("{} systems scanned", census.systems))?;
    ensure(census.failures == 0, || format!("{} failures", census.failures))?;
    ensure(census.min_m_star == 10, || format!("min m* = {}", census.min_m_star))?;
    ensure(census.equality == 2 && census.equality_uniform == 2, || {
        format!("equality census {}", census.equality)
    })?;
    Ok(format!(
        "1024 colourings, min m* = 10, equality census = {}",
        census.equality
    ))
}

fn lemma_simple() -> Outcome {
    let mut checked = 0u64;
    for n in 3..=5 {
        for s in all_colourings(n).unwrap() {
            let r = check_lemma_simple(&s);
            ensure(r.passed(), || format!("n={n}: {:?}", r.violations))?;
            checked += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in 6..=8 {
        for _ in 0..10_000 {
            let s = random_colouring(&mut rng, n);
            let r = check_lemma_simple(&s);
            ensure(r.passed(), || format!("n={n}: {:?}", r.violations))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} systems, zero violations"))
}

fn binary_tree_construction() -> Outcome {
    let start = Instant::now();
    let mut tightest = (0usize, 0u64, u64::MAX);
    for n in 2..=64usize {
        let m = summarize(&btree_colouring(n).unwrap()).m as u64;
        let bound = n as u64 * (n as f64).log2().ceil() as u64;
        ensure(m <= bound, || format!("n={n}: m = {m} > {bound}"))?;
        if n > 2 && bound - m < tightest.2 - tightest.1.min(tightest.2) {
            tightest = (n, m, bound);
        }
    }
    within(start.elapsed(), Duration::from_secs(30), "n = 2..64")?;
    Ok(format!(
        "m <= n*ceil(log2 n) for n = 2..64; tightest n={} ({} <= {})",
        tightest.0, tightest.1, tightest.2
    ))
}

fn composition() -> Outcome {
    let e3 = uniform(3, Colour::Blue).unwrap();
    let s = summarize(&compose(&e3, &e3).unwrap());
    ensure((s.m, s.m_red, s.m_blue) == (14, 9, 5), || {
        format!("compose(e3,e3) = {} {} {}", s.m, s.m_red, s.m_blue)
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..100 {
        let n1 = rng.gen_range(2..=10);
        let n2 = rng.gen_range(2..=12 - n1);
        let (a, b) = (random_colouring(&mut rng, n1), random_colouring(&mut rng, n2));
        let r = check_composition(&a, &b).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("{r:?}"))?;
    }
    Ok("compose(e3,e3): m = 14 (9 red, 5 blue); 100 random pairs pass".into())
}

fn census(max_n: usize) -> Vec<Tree> {
    (3..=max_n).flat_map(|n| enumerate_trees(n).unwrap()).collect()
}

fn sampled_trees() -> Vec<Tree> {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    (0..200)
        .map(|_| random_tree(rng.gen_range(9..=16), &mut rng).unwrap())
        .collect()
}

fn tree_blue_formula() -> Outcome {
    let classes: Vec<usize> = (2..=8).map(|n| enumerate_trees(n).unwrap().count()).collect();
    ensure(classes == [1, 1, 2, 3, 6, 11, 23], || format!("census {classes:?}"))?;
    let trees: Vec<Tree> = census(8).into_iter().chain(sampled_trees()).collect();
    for t in &trees {
        let m_blue = summarize(&t.system()).m_blue as u64;
        let formula = tree_blue_count(&twin_decomposition(t));
        ensure(m_blue == formula, || {
            format!("{:?}: m_blue {m_blue} vs formula {formula}", t.edges())
        })?;
    }
    Ok(format!("census {classes:?}; {} trees, blue count exact", trees.len()))
}

fn tree_theorem() -> Outcome {
    let mut equality = 0;
    let trees: Vec<Tree> = census(8).into_iter().chain(sampled_trees()).collect();
    for t in &trees {
        let r = check_tree(t, t.n() <= 8);
        ensure(r.passed(), || format!("{:?}: {r:?}", t.edges()))?;
        ensure(r.m() >= tree_m_lower_bound(t.n()), || "bound".into())?;
        ensure((r.m() == r.lower_bound) == is_extremal_tree(t), || "equality".into())?;
        equality += usize::from(r.m() == r.lower_bound);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    for _ in 0..100 {
        let n = rng.gen_range(3..=16);
        let t = random_tree(n, &mut rng).unwrap();
        let w: Vec<u64> = (0..n - 1).map(|_| rng.gen_range(1..=1_000_000)).collect();
        let weighted = derive(&all_pairs_shortest(&t.with_weights(&w).unwrap()).unwrap()).unwrap();
        ensure(weighted == t.system(), || format!("weights change {:?}", t.edges()))?;
    }
    let sampled_big = sample_trees(12, 50, 4).unwrap();
    for t in &sampled_big {
        ensure(check_tree(t, false).passed(), || format!("{:?}", t.edges()))?;
    }
    Ok(format!(
        "{} trees, {equality} at equality (all extremal); 100 weightings invariant",
        trees.len()
    ))
}

fn small_intersection() -> Outcome {
    let systems: Vec<(&str, Colouring)> = vec![
        ("steiner(9)", steiner(9).unwrap()),
        ("steiner(15)", steiner(15).unwrap()),
        ("pg(2)", projective_plane(2).unwrap()),
        ("pg(3)", projective_plane(3).unwrap()),
        ("grid 3x3", planar(&grid(3)).unwrap()),
        ("grid 4x4", planar(&grid(4)).unwrap()),
    ];
    let mut parts = Vec::new();
    for (name, s) in &systems {
        let r = check_small_intersection(s).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("{name}: {r:?}"))?;
        ensure(r.max_blue_repeat <= 1 && r.max_red_repeat <= r.red_repeat_cap, || {
            format!("{name}: repeats")
        })?;
        parts.push(format!("{name} k={} m={}>={}", r.k, r.m, r.bound));
    }
    Ok(parts.join("; "))
}

fn pair_count_identity() -> Outcome {
    let geometric: Vec<(&str, Colouring)> = vec![
        ("grid 3x3", planar(&grid(3)).unwrap()),
        ("grid 4x4", planar(&grid(4)).unwrap()),
        ("pg(2)", projective_plane(2).unwrap()),
        ("pg(3)", projective_plane(3).unwrap()),
        ("pg(5)", projective_plane(5).unwrap()),
        ("pg(7)", projective_plane(7).unwrap()),
        (
            "planar mix",
            planar(&[(0, 0), (2, 0), (4, 0), (1, 1), (2, 2), (0, 4), (3, 7), (-1, -1)]).unwrap(),
        ),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut others: Vec<Colouring> = vec![steiner(9).unwrap(), steiner(15).unwrap(), btree_colouring(20).unwrap()];
    others.extend((0..200).map(|_| {
        let n = rng.gen_range(2..=12);
        random_colouring(&mut rng, n)
    }));
    for s in geometric.iter().map(|g| &g.1).chain(&others) {
        for c in [Colour::Red, Colour::Blue] {
            let r = check_pair_count(s, c);
            ensure(r.passed(), || format!("partition fails: {r:?}"))?;
        }
    }
    for (name, s) in &geometric {
        let r = check_pair_count(s, Colour::Red);
        ensure(r.strengthened_holds(), || format!("{name}: per-line identity fails"))?;
    }
    let r = check_pair_count(&geometric[0].1, Colour::Red);
    ensure(r.weighted_sizes == 36, || {
        format!("3x3 grid weighted sum {}", r.weighted_sizes)
    })?;
    Ok(format!(
        "partition on {} systems x 2 colours; per-line identity on {} geometric; 3x3: 8*3+12*1 = 36",
        geometric.len() + others.len(),
        geometric.len()
    ))
}

fn named_counts() -> Outcome {
    let counts = |s: &Colouring| {
        let x = summarize(s);
        (x.m_red, x.m_blue)
    };
    ensure(counts(&projective_plane(3).unwrap()) == (13, 78), || "pg(3)".into())?;
    ensure(counts(&steiner(9).unwrap()) == (12, 9), || "steiner(9)".into())?;
    for n in 4..=10usize {
        let c = counts(&uniform(n, Colour::Red).unwrap());
        ensure(c == (1, binomial(n as u64, 2) as usize), || {
            format!("uniform({n}, red) = {c:?}")
        })?;
    }
    let pg2 = counts(&projective_plane(2).unwrap());
    ensure(pg2.0 == 7, || format!("pg(2) red = {}", pg2.0))?;
    Ok(format!(
        "pg(3) (13, 78); steiner(9) (12, 9); uniform red (1, C(n,2)) n=4..10; pg(2) red 7, blue measured {} (not C(7,2) = 21)",
        pg2.1
    ))
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for i in 0..1000 {
        let n = rng.gen_range(2..=8);
        let s = random_colouring(&mut rng, n);
        let sum = summarize(&s);
        let (red, blue) = (naive_lines(&s, Colour::Red), naive_lines(&s, Colour::Blue));
        ensure(
            as_lists(&sum, Colour::Red) == red && as_lists(&sum, Colour::Blue) == blue,
            || format!("system {i} (n={n}) differs"),
        )?;
        ensure(sum.m_red == red.len() && sum.m_blue == blue.len(), || "counts".into())?;
        ensure(check_easy_bound(&s).passed(), || "easy".into())?;
    }
    Ok("1000 random systems, n <= 8, identical line sets".into())
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("AC01", "table reproduction", table_reproduction),
        ("AC02", "n = 7 witness", seven_point_witness),
        ("AC03", "product theorem census", product_theorem),
        ("AC04", "generating-pair lemma", lemma_simple),
        ("AC05", "binary-tree construction", binary_tree_construction),
        ("AC06", "composition", composition),
        ("AC07", "tree blue-line formula", tree_blue_formula),
        ("AC08", "tree lower bound", tree_theorem),
        ("AC09", "small-intersection bound", small_intersection),
        ("AC10", "pair-count identity", pair_count_identity),
        ("AC11", "named example counts", named_counts),
        ("AC12", "oracle equivalence", oracle_equivalence),
    ];
    let mut failed = 0;
    for (id, name, run) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {id} {name} [{:.2?}]: {detail}", start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL {id} {name} [{:.2?}]: {why}", start.elapsed());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
