//! Command-line front end: dissociation numbers, spectral radii, family
//! construction, enumeration streams, extremal searches and the
//! verification harness.
//!
//! Exit codes: 0 on success or a passing verification, 1 when a
//! verification fails (the counterexample is printed), 2 on usage errors.

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use diss_spectra::enumeration::{connected_graphs, filter_by_diss, free_trees};
use diss_spectra::extremal::{
    min_rho_search, verify_claims, verify_theorem, SearchConfig, SearchMode, TheoremCase,
};
use diss_spectra::families::FamilySpec;
use diss_spectra::graph::Graph;
use diss_spectra::graph6::{from_graph6, to_graph6};
use diss_spectra::spectral::spectral_radius;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "diss-spectra",
    about = "Dissociation numbers, spectral radii and extremal searches on small graphs",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Spectral tolerance (default 1e-10; env DISS_SPECTRA_TOL).
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Tie gap for co-minimizers (default 1e-8, must be >= tol).
    #[arg(long = "tie-gap", global = true)]
    tie_gap: Option<f64>,

    /// Worker threads (default: available parallelism; env DISS_SPECTRA_WORKERS).
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write output to a file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Directory for temporary stream spills (reserved; the supported
    /// enumeration sizes stay in memory).
    #[arg(long = "spill-dir", global = true)]
    spill_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Dissociation number and a witnessing set ("-" reads graph6 from stdin).
    Diss { graph: String },
    /// Spectral radius, residual and iteration count.
    Rho { graph: String },
    /// Build a family instance and print its graph6 string.
    Family { spec: String },
    /// Stream all connected graphs (or trees) of one order as graph6 lines.
    Enumerate {
        n: usize,
        /// Enumerate free trees instead of connected graphs.
        #[arg(long)]
        trees: bool,
        /// Keep only graphs with this dissociation number.
        #[arg(long)]
        diss: Option<usize>,
    },
    /// Minimum-spectral-radius search over the (n, k) class.
    Search {
        n: usize,
        k: usize,
        #[arg(long)]
        trees: bool,
    },
    /// Verify one characterization case over an order range.
    Verify {
        /// One of: tree_claim, k_n1, k_n2, k_ceil23, k_floor23, k_2,
        /// max_join, corollary1.
        case: String,
        /// Inclusive order range, e.g. "5..9" (or a single order).
        #[arg(long = "n-range")]
        n_range: String,
        #[arg(long)]
        trees: bool,
    },
    /// Check the closed-form and inequality-chain table.
    Claims {
        /// Largest parameter sum in the inequality chains.
        #[arg(long, default_value_t = 8)]
        max: usize,
    },
}

/// Runtime configuration: flags win over environment variables.
struct Config {
    tol: f64,
    tie_gap: f64,
    workers: usize,
    format: Format,
    out: Option<PathBuf>,
}

impl Config {
    fn resolve(cli: &Cli) -> Result<Config> {
        let env_f64 = |name: &str| -> Result<Option<f64>> {
            match std::env::var(name) {
                Ok(v) => Ok(Some(v.parse().with_context(|| format!("bad {name}"))?)),
                Err(_) => Ok(None),
            }
        };
        let env_usize = |name: &str| -> Result<Option<usize>> {
            match std::env::var(name) {
                Ok(v) => Ok(Some(v.parse().with_context(|| format!("bad {name}"))?)),
                Err(_) => Ok(None),
            }
        };
        let tol = cli
            .tol
            .or(env_f64("DISS_SPECTRA_TOL")?)
            .unwrap_or(diss_spectra::spectral::DEFAULT_TOL);
        let tie_gap = cli.tie_gap.unwrap_or(diss_spectra::spectral::TIE_GAP);
        if tol <= 0.0 {
            return Err(anyhow!("--tol must be positive"));
        }
        if tie_gap < tol {
            return Err(anyhow!("--tie-gap must be at least --tol"));
        }
        let workers = cli
            .workers
            .or(env_usize("DISS_SPECTRA_WORKERS")?)
            .unwrap_or_else(|| {
                std::thread::available_parallelism().map_or(1, |p| p.get())
            });
        if workers == 0 {
            return Err(anyhow!("--workers must be positive"));
        }
        Ok(Config {
            tol,
            tie_gap,
            workers,
            format: cli.format,
            out: cli.out.clone(),
        })
    }

    fn search_config(&self) -> SearchConfig {
        SearchConfig {
            tol: self.tol,
            tie_gap: self.tie_gap,
        }
    }
}

/// Resolves a graph argument: "-" reads one graph6 line from stdin, a
/// name with parentheses parses as a family spec, anything else tries
/// graph6 first and falls back to a bare family name.
fn resolve_graph(arg: &str) -> Result<Graph> {
    if arg == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        let line = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty())
            .ok_or_else(|| anyhow!("empty standard input"))?;
        return Ok(from_graph6(line)?);
    }
    let leading_letter = arg.chars().next().is_some_and(|c| c.is_ascii_alphabetic());
    if leading_letter && arg.contains('(') {
        return Ok(FamilySpec::parse(arg)?.build()?);
    }
    match from_graph6(arg) {
        Ok(g) => Ok(g),
        Err(g6err) => FamilySpec::parse(arg)
            .and_then(|s| s.build())
            .map_err(|_| anyhow!("not a graph6 string ({g6err}) and not a family spec")),
    }
}

fn parse_range(text: &str) -> Result<(usize, usize)> {
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: usize = lo.trim().parse().context("bad range start")?;
        let hi: usize = hi.trim().parse().context("bad range end")?;
        if lo > hi {
            return Err(anyhow!("empty range {text}"));
        }
        Ok((lo, hi))
    } else {
        let n: usize = text.trim().parse().context("bad order")?;
        Ok((n, n))
    }
}

fn float(v: f64) -> String {
    format!("{v:.12}")
}

/// Buffered output plus the final exit code.
fn run(cli: &Cli, cfg: &Config) -> Result<(String, u8)> {
    let scfg = cfg.search_config();
    let mut out = String::new();
    let mut code = 0u8;
    match &cli.cmd {
        Cmd::Diss { graph } => {
            let g = resolve_graph(graph)?;
            let r = diss_spectra::dissociation::diss_exact(&g);
            let witness = r.witness_vertices();
            match cfg.format {
                Format::Json => {
                    let _ = writeln!(
                        out,
                        "{}",
                        serde_json::json!({"value": r.value, "witness": witness})
                    );
                }
                Format::Csv => {
                    let parts: Vec<String> = witness.iter().map(|v| v.to_string()).collect();
                    let _ = writeln!(out, "value,witness");
                    let _ = writeln!(out, "{},{}", r.value, parts.join(" "));
                }
                Format::Text => {
                    let _ = writeln!(out, "diss = {}", r.value);
                    let _ = writeln!(out, "witness = {witness:?}");
                }
            }
        }
        Cmd::Rho { graph } => {
            let g = resolve_graph(graph)?;
            let r = spectral_radius(&g, cfg.tol)?;
            match cfg.format {
                Format::Json => {
                    let _ = writeln!(
                        out,
                        "{}",
                        serde_json::json!({
                            "rho": r.rho,
                            "residual": r.residual,
                            "iterations": r.iterations
                        })
                    );
                }
                Format::Csv => {
                    let _ = writeln!(out, "rho,residual,iterations");
                    let _ = writeln!(out, "{},{:e},{}", float(r.rho), r.residual, r.iterations);
                }
                Format::Text => {
                    let _ = writeln!(out, "rho = {}", float(r.rho));
                    let _ = writeln!(out, "residual = {:e}", r.residual);
                    let _ = writeln!(out, "iterations = {}", r.iterations);
                }
            }
        }
        Cmd::Family { spec } => {
            let g = FamilySpec::parse(spec)?.build()?;
            let _ = writeln!(out, "{}", to_graph6(&g));
        }
        Cmd::Enumerate { n, trees, diss } => {
            let stream = if *trees { free_trees(*n)? } else { connected_graphs(*n)? };
            let stream = match diss {
                Some(k) => filter_by_diss(&stream, *k),
                None => stream,
            };
            for g in stream.iter() {
                let _ = writeln!(out, "{}", to_graph6(g));
            }
        }
        Cmd::Search { n, k, trees } => {
            let mode = if *trees { SearchMode::Trees } else { SearchMode::Connected };
            let report = min_rho_search(*n, *k, mode, &scfg)?;
            let rendered = match cfg.format {
                Format::Json => report.to_json() + "\n",
                Format::Csv => report.to_csv(),
                Format::Text => report.to_text(),
            };
            out.push_str(&rendered);
        }
        Cmd::Verify { case, n_range, trees } => {
            let case = TheoremCase::parse(case)
                .ok_or_else(|| anyhow!("unknown case {case:?}"))?;
            let (lo, hi) = parse_range(n_range)?;
            let mode = if *trees { SearchMode::Trees } else { SearchMode::Connected };
            let outcomes = verify_theorem(case, lo, hi, mode, &scfg)?;
            let failed = outcomes.iter().any(|o| !o.passed);
            match cfg.format {
                Format::Json => {
                    let _ = writeln!(out, "{}", serde_json::to_string(&outcomes)?);
                }
                _ => {
                    for o in &outcomes {
                        let tag = if !o.passed {
                            "FAIL"
                        } else if o.exploratory {
                            "INFO"
                        } else {
                            "PASS"
                        };
                        let _ = writeln!(out, "[{tag}] {} n={}: {}", o.case, o.n, o.detail);
                        if let Some(w) = &o.counterexample {
                            let _ = writeln!(out, "       counterexample: {w}");
                        }
                    }
                }
            }
            if failed {
                code = 1;
            }
        }
        Cmd::Claims { max } => {
            let table = verify_claims(*max, &scfg);
            match cfg.format {
                Format::Json => {
                    let _ = writeln!(out, "{}", table.to_json());
                }
                _ => out.push_str(&table.to_text()),
            }
            if !table.all_passed() {
                code = 1;
            }
        }
    }
    Ok((out, code))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match Config::resolve(&cli) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    // The worker pool is configured once, before any parallel work starts.
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build_global();
    match run(&cli, &cfg) {
        Ok((text, code)) => {
            let emitted = match &cfg.out {
                Some(path) => std::fs::File::create(path)
                    .and_then(|mut f| f.write_all(text.as_bytes())),
                None => std::io::stdout().write_all(text.as_bytes()),
            };
            if let Err(e) = emitted {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
