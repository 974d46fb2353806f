use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use relex::canonical::{canonical_form, CanonicalSequence, Permutation};
use relex::inference::{
    estimate_f, exact_distribution_phi, max_tv_over_permutations, test_exchangeability_mc,
};
use relex::io as rio;
use relex::simplex::{sample_epsilon_phi, SimplexPoint};
use relex::starmap::{roundtrip_check, DEFAULT_RECURRENCE_THRESHOLD};

#[derive(Parser)]
#[command(name = "relex", version, about = "Relationally exchangeable structures")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Mc,
}

#[derive(Subcommand)]
enum Command {
    /// Draw one canonical sequence from a model (point or mixture).
    Sample {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Canonicalize a sequence file or an edge list.
    Canon {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Read `src dst` lines instead of a sequence file.
        #[arg(long)]
        edge_list: bool,
        /// With --edge-list, store both orientations of every edge.
        #[arg(long)]
        undirected: bool,
    },
    /// Estimate the simplex point of a sequence.
    Estimate {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_RECURRENCE_THRESHOLD)]
        threshold: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print a code-frequency table to stderr.
        #[arg(long)]
        summary: bool,
    },
    /// Check invariance of a model's law under permutations of positions.
    TestExch {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "exact")]
        mode: Mode,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// 1-based images for --mode mc, e.g. 2,3,4,1; defaults to reversal.
        #[arg(long, value_delimiter = ',')]
        sigma: Option<Vec<usize>>,
        /// Print the class-probability table to stderr (exact mode).
        #[arg(long)]
        summary: bool,
    },
    /// Label, star, dagger and canonicalize; exit 0 iff the class is unchanged.
    Roundtrip {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Canonical form of the first K items.
    Restrict {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Prefix distance between two sequences.
    Dist {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        depth: Option<usize>,
    },
}

fn output(path: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn load_canonical(path: &Path) -> anyhow::Result<CanonicalSequence> {
    let x = rio::read_sequence(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(canonical_form(&x))
}

fn write_canonical(x: &CanonicalSequence, out: Option<&Path>) -> anyhow::Result<()> {
    rio::write_sequence_to(&x.to_sequence(), output(out)?)?;
    Ok(())
}

fn summary_table(f: &SimplexPoint) {
    eprintln!("{:<40} weight", "code");
    for code in f.codes_in_enumeration_order() {
        eprintln!("{:<40} {}", code.encode(), f.support()[code]);
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.cmd {
        Command::Sample { model, n, seed, out } => {
            let m = rio::read_model(&model).with_context(|| format!("reading {}", model.display()))?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = sample_epsilon_phi(&m.mixing_measure(), n, &mut rng);
            write_canonical(&x, out.as_deref())?;
        }
        Command::Canon { input, out, edge_list, undirected } => {
            let x = if edge_list {
                rio::read_edge_list(&input, !undirected)
            } else {
                rio::read_sequence(&input)
            }
            .with_context(|| format!("reading {}", input.display()))?;
            write_canonical(&canonical_form(&x), out.as_deref())?;
        }
        Command::Estimate { input, threshold, out, summary } => {
            let x = load_canonical(&input)?;
            let fhat = estimate_f(&x, threshold)?;
            if summary {
                summary_table(&fhat);
            }
            let mut w = output(out.as_deref())?;
            writeln!(w, "{}", rio::point_to_json(&fhat))?;
            w.flush()?;
        }
        Command::TestExch { model, n, mode, samples, seed, sigma, summary } => {
            let m = rio::read_model(&model).with_context(|| format!("reading {}", model.display()))?;
            let phi = m.mixing_measure();
            let report = match mode {
                Mode::Exact => {
                    let dist = exact_distribution_phi(&phi, n)?;
                    if summary {
                        eprintln!("{:<60} probability", "class");
                        for (k, p) in dist.probs() {
                            eprintln!("{k:<60} {p}");
                        }
                    }
                    max_tv_over_permutations(&dist)?.to_json()
                }
                Mode::Mc => {
                    let sigma = match sigma {
                        Some(s) => Permutation::from_one_based(&s)?,
                        None => Permutation::reversal(n),
                    };
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    test_exchangeability_mc(&phi, n, &sigma, samples, &mut rng)?.to_json()
                }
            };
            println!("{report}");
        }
        Command::Roundtrip { input, seed } => {
            let x = load_canonical(&input)?;
            if x.is_empty() {
                bail!("round trip needs a non-empty sequence");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let ok = roundtrip_check(&x, &mut rng);
            println!("{}", json!({"roundtrip": ok, "n": x.len()}));
            if !ok {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Restrict { input, n, out } => {
            let x = load_canonical(&input)?;
            write_canonical(&x.restrict(n)?, out.as_deref())?;
        }
        Command::Dist { a, b, depth } => {
            let x = load_canonical(&a)?;
            let y = load_canonical(&b)?;
            let depth = depth.unwrap_or(x.len().min(y.len()));
            let d = x.distance_at_depth(&y, depth)?;
            println!("{}", json!({"distance": d.to_string(), "depth": depth}));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn fail(msg: String) -> ExitCode {
    eprintln!("{}", json!({"error": msg}));
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(e.render().to_string().trim().to_string()),
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => fail(e.chain().map(|c| c.to_string()).collect::<Vec<_>>().join(": ")),
    }
}
