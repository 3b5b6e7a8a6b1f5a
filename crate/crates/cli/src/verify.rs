use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use hyperlines::analysis::{
    all_colourings, check_composition, check_easy_bound, check_lemma_simple, check_pair_count,
    check_small_intersection, check_tree, product_lower_bound, Check,
};
use hyperlines::format::{to_hl3, tree_to_text};
use hyperlines::generators::{btree_colouring, compose, grid, planar, projective_plane, steiner, uniform};
use hyperlines::treespace::{enumerate_trees, MAX_CENSUS_ORDER};
use hyperlines::{Colour, Colouring};

use crate::read_system;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Easy,
    Simple,
    Smallinter,
    Paircount,
    Compose,
    Trees,
    All,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: Suite,
    /// Also sweep every colouring on 3..=N points (easy suite, N ≤ 6).
    #[arg(long, default_value_t = 5)]
    exhaustive_n: usize,
    /// Largest tree order in the census (trees suite).
    #[arg(long, default_value_t = 8)]
    max_n: usize,
    /// Print a `CHECK <name> <pass|fail> <measured> <bound>` row per check.
    #[arg(long)]
    summary: bool,
    /// Write failing witnesses here instead of stderr.
    #[arg(long)]
    witness_out: Option<PathBuf>,
    /// `.hl3` systems to check; a built-in corpus when omitted.
    inputs: Vec<PathBuf>,
}

struct Runner<'a> {
    args: &'a VerifyArgs,
    checks: usize,
    failed: usize,
    witnesses: String,
}

impl Runner<'_> {
    fn record(&mut self, label: &str, c: &dyn Check, witness: impl FnOnce() -> String) {
        self.checks += 1;
        let verdict = if c.passed() { "pass" } else { "fail" };
        println!(
            "{:<12} {:<24} {verdict}  measured={} bound={}",
            c.name(),
            label,
            c.measured(),
            c.bound()
        );
        if self.args.summary {
            println!("{}", c.check_line());
        }
        if !c.passed() {
            self.failed += 1;
            self.witnesses
                .push_str(&format!("# failing witness: {} {label}\n{}", c.name(), witness()));
        }
    }

    fn note(&self, label: &str, msg: &str) {
        println!("{:<12} {label:<24} {msg}", "");
    }
}

fn corpus() -> Vec<(String, Colouring)> {
    let mut v = vec![
        ("uniform(5,blue)".to_string(), uniform(5, Colour::Blue).unwrap()),
        ("uniform(5,red)".to_string(), uniform(5, Colour::Red).unwrap()),
        ("steiner(9)".to_string(), steiner(9).unwrap()),
        ("steiner(15)".to_string(), steiner(15).unwrap()),
        ("btree(8)".to_string(), btree_colouring(8).unwrap()),
    ];
    for q in [2, 3] {
        v.push((format!("pg({q})"), projective_plane(q).unwrap()));
    }
    for k in [3, 4] {
        v.push((format!("grid({k}x{k})"), planar(&grid(k)).unwrap()));
    }
    let e3 = uniform(3, Colour::Blue).unwrap();
    v.push(("compose(e3,e3)".to_string(), compose(&e3, &e3).unwrap()));
    v
}

fn inputs(args: &VerifyArgs) -> Result<Vec<(String, Colouring)>> {
    if args.inputs.is_empty() {
        return Ok(corpus());
    }
    args.inputs
        .iter()
        .map(|p| Ok((p.display().to_string(), read_system(p)?)))
        .collect()
}

/// First colouring breaking the product bound, or meeting it without being uniform.
fn sweep_easy(r: &mut Runner, n: usize) -> Result<()> {
    struct Sweep {
        n: usize,
        equality: u64,
        min_m_star: u64,
        bad: Option<Colouring>,
    }
    impl Check for Sweep {
        fn name(&self) -> &'static str {
            "easy-census"
        }
        fn passed(&self) -> bool {
            self.bad.is_none() && self.equality == 2
        }
        fn measured(&self) -> u64 {
            self.min_m_star
        }
        fn bound(&self) -> u64 {
            product_lower_bound(self.n)
        }
    }
    let mut sweep = Sweep {
        n,
        equality: 0,
        min_m_star: u64::MAX,
        bad: None,
    };
    for s in all_colourings(n)? {
        let rep = check_easy_bound(&s);
        sweep.min_m_star = sweep.min_m_star.min(rep.m_star);
        sweep.equality += u64::from(rep.product_equality);
        if sweep.bad.is_none() && (!rep.passed() || rep.product_equality && !rep.uniform) {
            sweep.bad = Some(s);
        }
    }
    let label = format!("all n={n} (equality {})", sweep.equality);
    let bad = sweep.bad.clone();
    r.record(&label, &sweep, || {
        bad.map_or_else(|| "# equality census differs from 2\n".into(), |s| to_hl3(&s))
    });
    Ok(())
}

pub fn run(args: &VerifyArgs) -> Result<bool> {
    let on = |s: Suite| args.suite == s || args.suite == Suite::All;
    if on(Suite::Easy) && !(3..=6).contains(&args.exhaustive_n) {
        bail!("--exhaustive-n must lie in 3..=6");
    }
    if on(Suite::Trees) && !(3..=MAX_CENSUS_ORDER).contains(&args.max_n) {
        bail!("--max-n must lie in 3..={MAX_CENSUS_ORDER}");
    }
    let systems = inputs(args)?;
    let mut r = Runner {
        args,
        checks: 0,
        failed: 0,
        witnesses: String::new(),
    };

    if on(Suite::Easy) {
        for (label, s) in &systems {
            r.record(label, &check_easy_bound(s), || to_hl3(s));
        }
        for n in 3..=args.exhaustive_n {
            sweep_easy(&mut r, n)?;
        }
    }
    if on(Suite::Simple) {
        for (label, s) in &systems {
            let rep = check_lemma_simple(s);
            r.record(label, &rep, || {
                format!("# {}\n{}", rep.violations.join("; "), to_hl3(s))
            });
        }
    }
    if on(Suite::Smallinter) {
        for (label, s) in &systems {
            match check_small_intersection(s) {
                Ok(rep) => r.record(label, &rep, || to_hl3(s)),
                Err(e) => r.note(label, &format!("skipped: {e}")),
            }
        }
    }
    if on(Suite::Paircount) {
        for (label, s) in &systems {
            for (c, tag) in [(Colour::Red, "red"), (Colour::Blue, "blue")] {
                let rep = check_pair_count(s, c);
                r.record(&format!("{label} {tag}"), &rep, || to_hl3(s));
                if c == Colour::Red && rep.passed() && rep.strengthened_holds() {
                    r.note(&format!("{label} {tag}"), "every line generated by all its pairs");
                }
            }
        }
    }
    if on(Suite::Compose) {
        let builtin: Vec<(String, Colouring)> = vec![
            ("e3".into(), uniform(3, Colour::Blue)?),
            ("f3".into(), uniform(3, Colour::Red)?),
            ("e4".into(), uniform(4, Colour::Blue)?),
            ("pg(2)".into(), projective_plane(2)?),
            ("btree(5)".into(), btree_colouring(5)?),
        ];
        let pool = if args.inputs.is_empty() { &builtin } else { &systems };
        for (la, a) in pool {
            for (lb, b) in pool {
                let rep = check_composition(a, b)?;
                r.record(&format!("{la}+{lb}"), &rep, || format!("{}{}", to_hl3(a), to_hl3(b)));
            }
        }
    }
    if on(Suite::Trees) {
        for n in 3..=args.max_n {
            let mut classes = 0;
            for t in enumerate_trees(n)? {
                classes += 1;
                let rep = check_tree(&t, true);
                if !rep.passed() {
                    r.record(&format!("tree n={n}"), &rep, || {
                        format!("# {}\n{}", rep.lemma_violations.join("; "), tree_to_text(&t))
                    });
                } else {
                    r.checks += 1;
                }
            }
            r.note(&format!("trees n={n}"), &format!("{classes} classes checked"));
        }
    }

    println!("verify: {} checks, {} failed", r.checks, r.failed);
    if r.failed > 0 {
        match &args.witness_out {
            Some(p) => fs::write(p, &r.witnesses).with_context(|| format!("writing {}", p.display()))?,
            None => eprint!("{}", r.witnesses),
        }
    }
    Ok(r.failed == 0)
}
