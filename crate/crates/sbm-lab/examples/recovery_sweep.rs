//! A trimmed recovery-rate sweep: one heterogeneous profile, a handful of
//! swept densities, CSV on stdout and an SVG dropped in the temp dir.
//!
//! The profile plants one 100-node community over ten 10-node communities
//! (internal density 0.15, background 0.01) and sweeps the big community's
//! internal density d. At low d the planted partition wins every sample;
//! past the threshold it never does. The full-size configs live in
//! `configs/`, runnable via the `sbm-lab sweep` subcommand.

use sbm_lab::{emit_csv, emit_svg, run_sweep, SamplerMode, SweepConfig};

fn main() -> sbm_lab::Result<()> {
    let p = 11;
    let mut density = vec![vec![0.01; p]; p];
    for (i, row) in density.iter_mut().enumerate().skip(1) {
        row[i] = 0.15;
    }
    density[0][0] = 0.0; // overwritten by each swept value

    let config = SweepConfig {
        sizes: vec![100, 10, 10, 10, 10, 10, 10, 10, 10, 10, 10],
        density,
        swept_entry: [0, 0],
        d_values: vec![0.05, 0.14, 0.18, 0.22, 0.30],
        samples_per_d: 50,
        seed: 3,
        sampler: SamplerMode::Uniform,
        tolerance: 1e-9,
        note: None,
    };

    let records = run_sweep(&config)?;
    print!("{}", emit_csv(&records)?);

    let svg_path = std::env::temp_dir().join("recovery_sweep.svg");
    std::fs::write(&svg_path, emit_svg(&records)?)?;
    eprintln!("plot written to {}", svg_path.display());
    Ok(())
}
