//! Minimizing over a mapping-class orbit.
//!
//! Dehn-twist generators act on curve classes; breadth-first search over
//! the move ball finds the least crossing number with a pants
//! decomposition and the least total length, each with a witness move
//! sequence and, where possible, a proof that the ball minimum is the
//! orbit minimum.
//!
//! Run with `cargo run --example orbit_search`.

use curvelab::hyperbolic::{build_holonomy, FNPoint};
use curvelab::search::{orbit_min_intersection, orbit_min_length};
use curvelab::topology::{Multicurve, SurfaceSig};

fn main() -> curvelab::Result<()> {
    let s11 = SurfaceSig::new(1, 1)?;
    let p = FNPoint::reference(s11);
    let h = build_holonomy(&p)?;

    // The slope 5/7 can be carried onto the decomposition curve; the
    // continued-fraction route needs five twists.
    let m = Multicurve::parse(s11, "5/7")?;
    for depth in [4, 5] {
        let r = orbit_min_intersection(&h, &p.decomposition, &m, depth, 6)?;
        println!(
            "5/7 vs decomposition, depth {depth}: min {} (exhaustive {}), witness {:?}",
            r.best_value.as_f64(),
            r.exhaustive,
            r.witness.move_names()
        );
    }

    // Two crossing slopes can never be pulled apart: the minimum is 1
    // and the slope arithmetic certifies there is nothing better.
    let pair = Multicurve::parse(s11, "1/0,0/1")?;
    let r = orbit_min_intersection(&h, &p.decomposition, &pair, 6, 6)?;
    println!(
        "\ncrossing pair vs decomposition: min {} (exhaustive {})",
        r.best_value.as_f64(),
        r.exhaustive
    );

    // Length minimization at a pinched structure: the orbit of a single
    // slope reaches the short cuff itself, while the crossing pair pays
    // the collar toll of the curve it cannot avoid.
    let pinched = FNPoint::new(p.decomposition.clone(), vec![0.1], vec![0.0])?;
    let hp = build_holonomy(&pinched)?;
    let single = Multicurve::parse(s11, "0/1")?;
    let r1 = orbit_min_length(&hp, &single, 6)?;
    let r2 = orbit_min_length(&hp, &pair, 6)?;
    println!("\nat cuff length 0.1:");
    println!(
        "  single slope orbit min length {:.6} (exhaustive {})",
        r1.best_value.as_f64(),
        r1.exhaustive
    );
    println!(
        "  crossing pair orbit min length {:.6} (exhaustive {})",
        r2.best_value.as_f64(),
        r2.exhaustive
    );
    let collar = 2.0 * (1.0 / (0.05f64).sinh()).asinh() + 0.1;
    println!("  collar floor for the pair    {collar:.6}");

    // Genus 2: the separating class abAB crosses the all-nonseparating
    // theta decomposition twice, and no twist sequence does better.
    let s20 = SurfaceSig::CLOSED_GENUS2;
    let p20 = FNPoint::reference(s20);
    let h20 = build_holonomy(&p20)?;
    let sep = Multicurve::parse(s20, "abAB")?;
    let r = orbit_min_intersection(&h20, &p20.decomposition, &sep, 2, 4)?;
    println!(
        "\nabAB vs theta decomposition: min {} (certified {})",
        r.best_value.as_f64(),
        r.certified
    );
    Ok(())
}
