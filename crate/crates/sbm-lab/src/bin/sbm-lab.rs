//! Thin command-line front end; every subcommand maps onto one library call.

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use sbm_lab::{
    compare_partitions, counts_from_density, emit_csv, emit_svg, find_threshold, format_graph,
    format_partition, inversion_gap_lower_bound, inverted_entropy, local_search_min_entropy,
    parse_graph, parse_partition, partition_entropy, planted_entropy, run_sweep, sample_iid,
    sample_uniform, DensityModel, MultiGraph, Partition, SbmModel, SeedSpec, SplitMergeSpec,
    SweepConfig, DEFAULT_TOLERANCE,
};
use serde::Deserialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "sbm-lab",
    version,
    about = "Microcanonical block-model entropy, sampling, and sweeps"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Uniform,
    Iid,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the exact ensemble entropy of a graph under a partition
    /// (nats to six decimals, then rounded for eyeballing tables)
    Entropy {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        partition: PathBuf,
    },
    /// Compare two partitions of one graph: winner and entropy delta
    Compare {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        partition: PathBuf,
        #[arg(long = "partition-b")]
        partition_b: PathBuf,
        /// Deltas within this are reported as a tie
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
    },
    /// Draw graphs from the flat ensemble of a density config (--config)
    /// or of the counts measured from a graph/partition pair
    Sample {
        /// JSON with "sizes" and "density" keys
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, requires = "partition", conflicts_with = "config")]
        graph: Option<PathBuf>,
        #[arg(long, requires = "graph")]
        partition: Option<PathBuf>,
        /// Number of draws; draw i uses the derived stream (seed, i)
        #[arg(long, default_value_t = 1)]
        samples: u64,
        #[arg(long, value_enum, default_value_t = Mode::Uniform)]
        mode: Mode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path; with --samples N > 1, files get .0, .1, ... suffixes
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a recovery-rate sweep from a JSON config and emit CSV (and SVG)
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// CSV destination; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Locate the smallest multiplier where the split/merge inversion sets in
    Threshold {
        /// JSON with "s", "q", "m0", "m" (array), and "c_max" keys
        #[arg(long)]
        config: PathBuf,
    },
    /// Greedy size-preserving entropy minimization from a starting partition
    Search {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        partition: PathBuf,
        /// Budget of accepted swaps
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Partition destination; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Deserialize)]
struct DensityConfig {
    sizes: Vec<usize>,
    density: Vec<Vec<f64>>,
}

#[derive(Deserialize)]
struct ThresholdConfig {
    s: u64,
    q: u64,
    m0: u64,
    m: Vec<u64>,
    c_max: u64,
}

fn read_graph(path: &Path) -> sbm_lab::Result<MultiGraph> {
    parse_graph(&std::fs::read_to_string(path)?)
}

fn read_partition(path: &Path) -> sbm_lab::Result<Partition> {
    parse_partition(&std::fs::read_to_string(path)?)
}

fn write_or_print(out: Option<&Path>, text: &str) -> sbm_lab::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

/// Honor SBM_LAB_THREADS by running `f` inside a pool of that many workers.
fn with_thread_cap<T: Send>(f: impl FnOnce() -> T + Send) -> sbm_lab::Result<T> {
    match std::env::var("SBM_LAB_THREADS") {
        Ok(v) => {
            let n: usize = v.parse().map_err(|_| {
                sbm_lab::Error::Precondition(format!("SBM_LAB_THREADS={v} is not a thread count"))
            })?;
            if n == 0 {
                return Err(sbm_lab::Error::Precondition(
                    "SBM_LAB_THREADS must be positive".into(),
                ));
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| sbm_lab::Error::Precondition(e.to_string()))?;
            Ok(pool.install(f))
        }
        Err(_) => Ok(f()),
    }
}

fn run(cli: Cli) -> sbm_lab::Result<()> {
    match cli.cmd {
        Cmd::Entropy { graph, partition } => {
            let g = read_graph(&graph)?;
            let p = read_partition(&partition)?;
            let s = partition_entropy(&g, &p)?.value();
            println!("{s:.6}\t{s:.0}");
        }
        Cmd::Compare {
            graph,
            partition,
            partition_b,
            tolerance,
        } => {
            let g = read_graph(&graph)?;
            let a = read_partition(&partition)?;
            let b = read_partition(&partition_b)?;
            let cmp = compare_partitions(&g, &a, &b, tolerance)?;
            println!("{}\t{:.6}", cmp.winner, cmp.delta);
        }
        Cmd::Sample {
            config,
            graph,
            partition,
            samples,
            mode,
            seed,
            out,
        } => {
            let model = match (config, graph, partition) {
                (Some(path), None, None) => {
                    let cfg: DensityConfig =
                        serde_json::from_str(&std::fs::read_to_string(&path)?)?;
                    counts_from_density(&DensityModel::new(cfg.sizes, &cfg.density)?)
                }
                (None, Some(gpath), Some(ppath)) => {
                    let g = read_graph(&gpath)?;
                    let p = read_partition(&ppath)?;
                    SbmModel::of_graph(&g, &p)?
                }
                _ => {
                    Cli::command()
                        .error(
                            ErrorKind::MissingRequiredArgument,
                            "sample needs --config or --graph with --partition",
                        )
                        .exit();
                }
            };
            for i in 0..samples {
                let spec = SeedSpec::new(seed, i);
                let g = match mode {
                    Mode::Uniform => sample_uniform(&model, spec),
                    Mode::Iid => sample_iid(&model, spec),
                };
                let text = format_graph(&g);
                match (&out, samples) {
                    (None, _) => print!("{text}"),
                    (Some(path), 1) => std::fs::write(path, text)?,
                    (Some(path), _) => {
                        let mut name = path.clone().into_os_string();
                        name.push(format!(".{i}"));
                        std::fs::write(PathBuf::from(name), text)?;
                    }
                }
            }
        }
        Cmd::Sweep { config, out, svg } => {
            let cfg: SweepConfig = serde_json::from_str(&std::fs::read_to_string(&config)?)?;
            let started = Instant::now();
            let records = with_thread_cap(|| run_sweep(&cfg))??;
            eprintln!(
                "swept {} densities x {} samples in {:.1}s",
                cfg.d_values.len(),
                cfg.samples_per_d,
                started.elapsed().as_secs_f64()
            );
            write_or_print(out.as_deref(), &emit_csv(&records)?)?;
            if let Some(path) = svg {
                std::fs::write(path, emit_svg(&records)?)?;
            }
        }
        Cmd::Threshold { config } => {
            let cfg: ThresholdConfig = serde_json::from_str(&std::fs::read_to_string(&config)?)?;
            let spec = SplitMergeSpec::new(cfg.s, cfg.q, cfg.m0, cfg.m)?;
            match find_threshold(&spec, cfg.c_max) {
                None => println!("none"),
                Some(c) => {
                    let s1 = planted_entropy(&spec, c as f64)?.value();
                    let s2 = inverted_entropy(&spec, c as f64)?.value();
                    let bound = match inversion_gap_lower_bound(&spec, c) {
                        Ok(b) => format!("{b:.6}"),
                        Err(_) => "na".into(),
                    };
                    println!("{c}\t{s1:.6}\t{s2:.6}\t{bound}");
                }
            }
        }
        Cmd::Search {
            graph,
            partition,
            samples,
            seed,
            out,
        } => {
            let g = read_graph(&graph)?;
            let p = read_partition(&partition)?;
            let before = partition_entropy(&g, &p)?.value();
            let improved = local_search_min_entropy(&g, &p, samples, SeedSpec::new(seed, 0))?;
            let after = partition_entropy(&g, &improved)?.value();
            eprintln!("entropy {before:.6} -> {after:.6}");
            write_or_print(out.as_deref(), &format_partition(&improved))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
