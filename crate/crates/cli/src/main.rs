//! `hyperlines` command-line front end.

mod verify;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use hyperlines::format::{parse_graph, parse_hl3, parse_points, to_hl3, to_hl3_bits};
use hyperlines::generators::{btree_colouring, compose, grid, planar, projective_plane, steiner, uniform};
use hyperlines::search::{anneal_min, bnb_min_threads, exhaustive_min_threads, table, AnnealSchedule};
use hyperlines::treespace::{all_pairs_shortest, derive};
use hyperlines::{generating_pairs, line_size_distribution, summarize, Colour, Colouring};

#[derive(Parser)]
#[command(name = "hyperlines", version, about = "Lines in bi-coloured 3-uniform systems")]
struct Cli {
    /// Worker threads for the parallel search modes.
    #[arg(long, global = true, env = "HYPERLINES_THREADS", default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Uniform,
    Steiner,
    Pg,
    Planar,
    Btree,
    Compose,
}

#[derive(Clone, Copy, ValueEnum)]
enum ColourArg {
    Red,
    Blue,
}

impl From<ColourArg> for Colour {
    fn from(c: ColourArg) -> Colour {
        match c {
            ColourArg::Red => Colour::Red,
            ColourArg::Blue => Colour::Blue,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Anneal,
    Bnb,
}

#[derive(clap::Args)]
struct Output {
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Use the single-row `bits` encoding.
    #[arg(long)]
    bits: bool,
}

impl Output {
    fn emit(&self, s: &Colouring) -> Result<()> {
        let text = if self.bits { to_hl3_bits(s) } else { to_hl3(s) };
        match &self.out {
            Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a system from one of the built-in families.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        /// Number of points (uniform, steiner, btree).
        #[arg(long)]
        n: Option<usize>,
        /// Prime order of the projective plane.
        #[arg(long)]
        q: Option<usize>,
        /// Colour of every triple for `uniform`.
        #[arg(long, value_enum, default_value = "blue")]
        colour: ColourArg,
        /// Point file for `planar`.
        #[arg(long, conflicts_with = "grid")]
        points: Option<PathBuf>,
        /// Side of a square integer grid for `planar`.
        #[arg(long)]
        grid: Option<usize>,
        /// The two `.hl3` inputs for `compose`.
        #[arg(num_args = 0..=2)]
        inputs: Vec<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Report line counts of a system.
    Lines {
        input: PathBuf,
        /// Line-size distributions.
        #[arg(long)]
        dist: bool,
        /// Generating-pair multiplicity of every line.
        #[arg(long)]
        pairs: bool,
        /// Every line as a sorted point list.
        #[arg(long)]
        lines: bool,
    },
    /// Derive a system from a weighted graph's shortest-path metric.
    Derive {
        graph: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Run verification suites.
    Verify(verify::VerifyArgs),
    /// Search for a system with few lines.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: Mode,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 200_000)]
        steps: u64,
        #[arg(long, default_value_t = 2.0)]
        initial_temp: f64,
        #[arg(long, default_value_t = 0.05)]
        final_temp: f64,
        /// Node budget for branch and bound.
        #[arg(long)]
        budget: Option<u64>,
        /// Known upper bound handed to branch and bound.
        #[arg(long)]
        upper: Option<usize>,
        /// Scan one colouring per relabelling orbit.
        #[arg(long)]
        symmetry: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Print the table of minimum line counts.
    Table {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// Node budget for the seven-point branch and bound.
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// Compose two systems.
    Compose {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        output: Output,
    },
}

pub(crate) fn read_system(p: &Path) -> Result<Colouring> {
    let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
    parse_hl3(&text).with_context(|| p.display().to_string())
}

fn need<T>(v: Option<T>, flag: &str, family: &str) -> Result<T> {
    v.with_context(|| format!("--family {family} needs {flag}"))
}

fn generate(
    family: Family,
    n: Option<usize>,
    q: Option<usize>,
    colour: Colour,
    points: Option<PathBuf>,
    side: Option<usize>,
    inputs: &[PathBuf],
) -> Result<Colouring> {
    Ok(match family {
        Family::Uniform => uniform(need(n, "--n", "uniform")?, colour)?,
        Family::Steiner => steiner(need(n, "--n", "steiner")?)?,
        Family::Btree => btree_colouring(need(n, "--n", "btree")?)?,
        Family::Pg => projective_plane(need(q, "--q", "pg")?)?,
        Family::Planar => match (points, side) {
            (Some(p), _) => {
                let text = fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?;
                planar(&parse_points(&text).with_context(|| p.display().to_string())?)?
            }
            (None, Some(k)) => planar(&grid(k))?,
            (None, None) => bail!("--family planar needs --points or --grid"),
        },
        Family::Compose => match inputs {
            [a, b] => compose(&read_system(a)?, &read_system(b)?)?,
            _ => bail!("--family compose needs two input files"),
        },
    })
}

fn print_lines(input: &Path, dist: bool, pairs: bool, lines: bool) -> Result<()> {
    let s = read_system(input)?;
    let sum = summarize(&s);
    println!("{sum}");
    let colours = [(Colour::Red, "red"), (Colour::Blue, "blue")];
    if dist {
        for (c, name) in colours {
            let d = line_size_distribution(&s, c);
            let cells: Vec<String> = d
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(size, k)| format!("{size}:{k}"))
                .collect();
            println!("dist {name} {}", cells.join(" "));
        }
    }
    if pairs {
        let gp = generating_pairs(&s);
        for (c, name) in colours {
            for (l, ps) in gp.get(c) {
                println!("pairs {name} {l} {}", ps.len());
            }
        }
    }
    if lines {
        for (c, name) in colours {
            for l in sum.lines(c) {
                let pts: Vec<String> = l.points().map(|p| p.to_string()).collect();
                println!("{name} {}", pts.join(" "));
            }
        }
    }
    Ok(())
}

fn print_table(max_n: usize, budget: u64, threads: usize) -> Result<()> {
    let rows = table(max_n, true, threads)?;
    let seven = bnb_min_threads(7, Some(budget), None, threads)?;
    let mut ns: Vec<String> = rows.iter().map(|r| r.n.to_string()).collect();
    let mut ms: Vec<String> = rows.iter().map(|r| r.best_m.to_string()).collect();
    ns.push("7".into());
    ms.push(if seven.exhaustive {
        seven.best_m.to_string()
    } else {
        format!("≤{}", seven.best_m)
    });
    println!("n {}", ns.join(" "));
    println!("m {}", ms.join(" "));
    Ok(())
}

/// `Ok(true)` on success, `Ok(false)` when a check failed.
fn run(cli: Cli) -> Result<bool> {
    let threads = cli.threads.max(1);
    match cli.command {
        Command::Gen {
            family,
            n,
            q,
            colour,
            points,
            grid,
            inputs,
            output,
        } => {
            output.emit(&generate(family, n, q, colour.into(), points, grid, &inputs)?)?;
        }
        Command::Lines {
            input,
            dist,
            pairs,
            lines,
        } => print_lines(&input, dist, pairs, lines)?,
        Command::Derive { graph, output } => {
            let text = fs::read_to_string(&graph).with_context(|| format!("reading {}", graph.display()))?;
            let g = parse_graph(&text).with_context(|| graph.display().to_string())?;
            output.emit(&derive(&all_pairs_shortest(&g)?)?)?;
        }
        Command::Verify(args) => return verify::run(&args),
        Command::Search {
            n,
            mode,
            seed,
            steps,
            initial_temp,
            final_temp,
            budget,
            upper,
            symmetry,
            output,
        } => {
            let report = match mode {
                Mode::Exhaustive => exhaustive_min_threads(n, symmetry, threads)?,
                Mode::Anneal => anneal_min(
                    n,
                    seed,
                    steps,
                    AnnealSchedule::spanning(initial_temp, final_temp, steps),
                )?,
                Mode::Bnb => bnb_min_threads(n, budget, upper, threads)?,
            };
            println!("{report}");
            if output.out.is_some() {
                output.emit(&report.witness)?;
            }
        }
        Command::Table { max_n, budget } => print_table(max_n, budget, threads)?,
        Command::Compose { first, second, output } => {
            output.emit(&compose(&read_system(&first)?, &read_system(&second)?)?)?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
