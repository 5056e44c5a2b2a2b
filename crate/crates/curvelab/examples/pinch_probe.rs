//! Watching a curve family as the cuffs of a decomposition are pinched.
//!
//! Shrinking every cuff length by a factor t forces any curve that
//! crosses the decomposition to traverse collars of half-width
//! arcsinh(1 / sinh(t·ℓ/2)), which grow without bound as t → 0. The
//! probe tracks the family's orbit-minimal length along a decreasing
//! t-grid next to that collar certificate and classifies the series:
//! DIVERGING when the measured lengths outgrow the start by the
//! configured factor with certified rising bounds, BOUNDED when they
//! stay in a fixed band, UNDETERMINED otherwise.
//!
//! Run with `cargo run --example pinch_probe`.

use curvelab::experiments::{boundedness_probe, presets, ProbeConfig};

fn print_series(series: &curvelab::experiments::ProbeSeries) {
    println!(
        "  i_min {} (exhaustive {}) -> {:?}",
        series.i_min, series.i_min_exhaustive, series.classification
    );
    println!("  {:>8}  {:>10}  {:>11}  cert", "t", "min length", "lower bound");
    for k in 0..series.t_values.len() {
        println!(
            "  {:>8.5}  {:>10.4}  {:>11.4}  {}",
            series.t_values[k],
            series.min_lengths[k],
            series.lower_bounds[k],
            series.certified[k]
        );
    }
    if let Some(note) = &series.note {
        println!("  note: {note}");
    }
}

fn main() -> curvelab::Result<()> {
    // A pair of slopes meeting once on the punctured torus: every orbit
    // image still crosses the pinched curve, so the minimum diverges.
    let crossing = presets::by_name("crossing-pair")?;
    println!("preset `{}`:", crossing.name);
    print_series(&crossing.run_probe()?);

    // A single slope family contains a member disjoint from the pinched
    // cuff; its length stays flat no matter how thin the collar gets.
    let bounded = presets::by_name("bounded-slope")?;
    println!("\npreset `{}`:", bounded.name);
    print_series(&bounded.run_probe()?);

    // The verdict is honest about what the evidence shows. Demanding an
    // absurd divergence factor on the same rising series downgrades the
    // call to UNDETERMINED rather than overstating it.
    let mut cfg = ProbeConfig {
        depth: crossing.depth,
        radius: crossing.radius,
        ..ProbeConfig::default()
    };
    cfg.t_grid.truncate(6);
    cfg.divergence_factor = 1.0e6;
    let family = crossing.family_multicurves()?;
    let series = boundedness_probe(
        &crossing.base_point()?,
        &family[crossing.probe_member],
        &cfg,
    )?;
    println!("\nsame family, divergence factor 1e6, short grid:");
    print_series(&series);

    Ok(())
}
