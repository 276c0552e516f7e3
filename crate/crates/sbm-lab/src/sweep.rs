//! Density-sweep recovery experiments.
//!
//! The protocol: fix a block profile with one big block and `q` equal small
//! ones, set the big block's internal density to a swept value `d`, derive
//! exact counts, and repeatedly (a) sample a graph from the ensemble,
//! (b) score the planted partition against its split/merge inversion, and
//! (c) record how often the planted partition has strictly lower entropy.
//! Per-sample seeds come from `derive_seed(master, sample_index)`, so results
//! are byte-identical regardless of thread count or the order of `d` values.

use crate::entropy::{compare_partitions, Winner, DEFAULT_TOLERANCE};
use crate::error::{Error, Result};
use crate::graph::{counts_from_density, split_merge_invert, DensityModel, Partition};
use crate::sample::{sample_iid, sample_uniform, SeedSpec};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Which generator places edges within block pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SamplerMode {
    /// Flat distribution over multisets — the ensemble's own distribution.
    Uniform,
    /// Independent placement per edge (multinomial) — sensitivity check.
    Iid,
}

fn default_tolerance() -> f64 {
    DEFAULT_TOLERANCE
}

fn default_sampler() -> SamplerMode {
    SamplerMode::Uniform
}

/// A full sweep description; serializes to/from the JSON config format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    /// Block sizes; exactly one big block and `p-1` equal small blocks.
    pub sizes: Vec<usize>,
    /// Base density matrix; the swept entry is overwritten per `d`.
    pub density: Vec<Vec<f64>>,
    /// Row/column of the swept diagonal entry (the big block).
    pub swept_entry: [usize; 2],
    /// Densities to sweep, in output order.
    pub d_values: Vec<f64>,
    pub samples_per_d: u64,
    /// Master seed; sample `i` uses the stream `derive_seed(seed, i)`.
    pub seed: u64,
    #[serde(default = "default_sampler")]
    pub sampler: SamplerMode,
    /// Entropy ties closer than this count as neither correct nor incorrect.
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    /// Free-form provenance note carried through config files.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Aggregated outcome of one swept density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    pub d: f64,
    pub n_samples: u64,
    /// Samples where the planted partition had strictly lower entropy.
    pub n_correct_lower: u64,
    pub n_ties: u64,
    /// `100 · n_correct_lower / n_samples`.
    pub pct_correct: f64,
}

struct Prepared {
    base: DensityModel,
    planted: Partition,
    inverted: Partition,
}

impl SweepConfig {
    fn prepare(&self) -> Result<Prepared> {
        let p = self.sizes.len();
        let [r, c] = self.swept_entry;
        if r != c || r >= p {
            return Err(Error::Precondition(format!(
                "swept entry [{r}, {c}] must be a diagonal entry below p={p}"
            )));
        }
        if self.samples_per_d == 0 {
            return Err(Error::Precondition("samples_per_d must be positive".into()));
        }
        if self.d_values.is_empty() {
            return Err(Error::EmptyInput("d_values"));
        }
        for &d in &self.d_values {
            if !d.is_finite() || d < 0.0 {
                return Err(Error::Precondition(format!("swept density {d} invalid")));
            }
        }
        if !self.tolerance.is_finite() || self.tolerance < 0.0 {
            return Err(Error::Precondition(format!(
                "tolerance {} invalid",
                self.tolerance
            )));
        }
        let base = DensityModel::new(self.sizes.clone(), &self.density)?;
        let planted = Partition::contiguous(&self.sizes)?;
        // split_merge_invert re-validates the one-big/q-equal-smalls profile
        let inverted = split_merge_invert(&planted, r, p - 1)?;
        Ok(Prepared {
            base,
            planted,
            inverted,
        })
    }
}

fn run_one(config: &SweepConfig, prep: &Prepared, d: f64) -> Result<SweepRecord> {
    if !d.is_finite() || d < 0.0 {
        return Err(Error::Precondition(format!("swept density {d} invalid")));
    }
    let mut density = prep.base.clone();
    density.set_density(config.swept_entry[0], config.swept_entry[1], d);
    let model = counts_from_density(&density);

    let (n_correct_lower, n_ties) = (0..config.samples_per_d)
        .into_par_iter()
        .map(|i| {
            let seed = SeedSpec::new(config.seed, i);
            let graph = match config.sampler {
                SamplerMode::Uniform => sample_uniform(&model, seed),
                SamplerMode::Iid => sample_iid(&model, seed),
            };
            let cmp = compare_partitions(&graph, &prep.planted, &prep.inverted, config.tolerance)
                .expect("profile validated");
            match cmp.winner {
                Winner::First => (1u64, 0u64),
                Winner::Tie => (0, 1),
                Winner::Second => (0, 0),
            }
        })
        .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));

    Ok(SweepRecord {
        d,
        n_samples: config.samples_per_d,
        n_correct_lower,
        n_ties,
        pct_correct: 100.0 * n_correct_lower as f64 / config.samples_per_d as f64,
    })
}

/// Run the experiment at a single density (the swept entry set to `d`).
pub fn recovery_rate(config: &SweepConfig, d: f64) -> Result<SweepRecord> {
    run_one(config, &config.prepare()?, d)
}

/// Run the experiment at every density in `config.d_values`, in order.
/// Samples within a density are evaluated in parallel under the ambient
/// rayon thread pool; results do not depend on the pool's size.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<SweepRecord>> {
    let prep = config.prepare()?;
    config
        .d_values
        .iter()
        .map(|&d| run_one(config, &prep, d))
        .collect()
}

/// Shortest float representation that round-trips, padded to at least
/// `min_decimals` fractional digits (padding zeros cannot change the value).
fn fmt_float(x: f64, min_decimals: usize) -> String {
    let mut s = x.to_string();
    let decimals = match s.find('.') {
        Some(pos) => s.len() - pos - 1,
        None => {
            s.push('.');
            0
        }
    };
    for _ in decimals..min_decimals {
        s.push('0');
    }
    s
}

const CSV_HEADER: &str = "d,n_samples,n_correct_lower,n_ties,pct_correct";

/// Render records as CSV (schema: `d,n_samples,n_correct_lower,n_ties,pct_correct`).
pub fn emit_csv(records: &[SweepRecord]) -> Result<String> {
    if records.is_empty() {
        return Err(Error::EmptyInput("no sweep records to format"));
    }
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            fmt_float(r.d, 2),
            r.n_samples,
            r.n_correct_lower,
            r.n_ties,
            fmt_float(r.pct_correct, 1)
        ));
    }
    Ok(out)
}

/// Inverse of [`emit_csv`]; `parse_csv(emit_csv(r)) == r` exactly.
pub fn parse_csv(text: &str) -> Result<Vec<SweepRecord>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    match lines.next() {
        Some((_, h)) if h == CSV_HEADER => {}
        Some((line, h)) => {
            return Err(Error::Parse {
                line,
                msg: format!("expected header {CSV_HEADER:?}, got {h:?}"),
            })
        }
        None => return Err(Error::EmptyInput("empty CSV")),
    }
    let mut records = Vec::new();
    for (line, l) in lines {
        let f: Vec<&str> = l.split(',').collect();
        if f.len() != 5 {
            return Err(Error::Parse {
                line,
                msg: format!("expected 5 fields, got {}", f.len()),
            });
        }
        let bad = |what: &str| Error::Parse {
            line,
            msg: format!("bad {what}"),
        };
        records.push(SweepRecord {
            d: f[0].parse().map_err(|_| bad("d"))?,
            n_samples: f[1].parse().map_err(|_| bad("n_samples"))?,
            n_correct_lower: f[2].parse().map_err(|_| bad("n_correct_lower"))?,
            n_ties: f[3].parse().map_err(|_| bad("n_ties"))?,
            pct_correct: f[4].parse().map_err(|_| bad("pct_correct"))?,
        });
    }
    Ok(records)
}

/// Render a line chart of `pct_correct` against `d` as a standalone SVG.
pub fn emit_svg(records: &[SweepRecord]) -> Result<String> {
    if records.is_empty() {
        return Err(Error::EmptyInput("no sweep records to plot"));
    }
    let (width, height) = (640.0, 420.0);
    let (left, right, top, bottom) = (70.0, 610.0, 20.0, 360.0);
    let d_min = records.iter().map(|r| r.d).fold(f64::INFINITY, f64::min);
    let d_max = records.iter().map(|r| r.d).fold(f64::NEG_INFINITY, f64::max);
    let span = if d_max > d_min { d_max - d_min } else { 1.0 };
    let x = |d: f64| left + (d - d_min) / span * (right - left);
    let y = |pct: f64| bottom - pct / 100.0 * (bottom - top);

    let mut svg = String::new();
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\">\n"
    ));
    svg.push_str(&format!(
        "  <rect x=\"0\" y=\"0\" width=\"{width}\" height=\"{height}\" fill=\"white\"/>\n"
    ));
    // axes
    svg.push_str(&format!(
        "  <line x1=\"{left}\" y1=\"{bottom}\" x2=\"{right}\" y2=\"{bottom}\" stroke=\"black\"/>\n"
    ));
    svg.push_str(&format!(
        "  <line x1=\"{left}\" y1=\"{top}\" x2=\"{left}\" y2=\"{bottom}\" stroke=\"black\"/>\n"
    ));
    // y ticks and labels
    for pct in [0.0, 25.0, 50.0, 75.0, 100.0] {
        let yy = y(pct);
        svg.push_str(&format!(
            "  <line x1=\"{}\" y1=\"{yy}\" x2=\"{left}\" y2=\"{yy}\" stroke=\"black\"/>\n",
            left - 5.0
        ));
        svg.push_str(&format!(
            "  <text x=\"{}\" y=\"{}\" text-anchor=\"end\" font-size=\"12\">{pct}</text>\n",
            left - 9.0,
            yy + 4.0
        ));
    }
    // x ticks at each swept density
    for r in records {
        let xx = x(r.d);
        svg.push_str(&format!(
            "  <line x1=\"{xx}\" y1=\"{bottom}\" x2=\"{xx}\" y2=\"{}\" stroke=\"black\"/>\n",
            bottom + 5.0
        ));
        svg.push_str(&format!(
            "  <text x=\"{xx}\" y=\"{}\" text-anchor=\"middle\" font-size=\"12\">{}</text>\n",
            bottom + 20.0,
            fmt_float(r.d, 2)
        ));
    }
    // axis titles
    svg.push_str(&format!(
        "  <text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"14\">swept density d</text>\n",
        (left + right) / 2.0,
        bottom + 42.0
    ));
    svg.push_str(&format!(
        "  <text x=\"18\" y=\"{}\" text-anchor=\"middle\" font-size=\"14\" \
         transform=\"rotate(-90 18 {})\">% planted partition lower</text>\n",
        (top + bottom) / 2.0,
        (top + bottom) / 2.0
    ));
    // the series
    let points: Vec<String> = records
        .iter()
        .map(|r| format!("{},{}", x(r.d), y(r.pct_correct)))
        .collect();
    svg.push_str(&format!(
        "  <polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"{}\"/>\n",
        points.join(" ")
    ));
    svg.push_str("</svg>\n");
    Ok(svg)
}
