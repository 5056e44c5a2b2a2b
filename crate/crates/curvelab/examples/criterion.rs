//! Deciding boundedness of a curve family over all hyperbolic structures.
//!
//! A family of multicurves keeps bounded minimal length over the whole
//! parameter space exactly when, for every pants-decomposition type,
//! some member can be moved off the decomposition entirely. The checker
//! searches the mapping-class orbit per type and reports a verdict with
//! per-type evidence: BOUNDED needs a certified zero everywhere,
//! UNBOUNDED needs one type with a provably positive minimum.
//!
//! Run with `cargo run --example criterion`.

use curvelab::experiments::presets;
use curvelab::search::{criterion_check, enumerate_pants_types};
use curvelab::topology::{Multicurve, SurfaceSig};

fn main() -> curvelab::Result<()> {
    // The surfaces carry few decomposition types: one on (1,1), two on
    // (2,0) — the theta (all cuffs nonseparating) and the dumbbell (one
    // separating cuff).
    for sig in [SurfaceSig::new(1, 1)?, SurfaceSig::CLOSED_GENUS2] {
        let types = enumerate_pants_types(sig);
        let tags: Vec<&str> = types.iter().map(|t| t.type_tag.as_str()).collect();
        println!("({},{}) pants types: {tags:?}", sig.genus, sig.cusps);
    }

    // Shipped presets, two per side of the dichotomy.
    println!("\npreset verdicts:");
    for preset in presets::PRESETS {
        let v = preset.run_criterion()?;
        println!("  {:<18} {:?}", preset.name, v.verdict);
        for f in &v.per_pants_type {
            println!(
                "    {:<9} min {} certified {} exhaustive {} witness {:?}",
                f.tag, f.min_intersection, f.certified, f.exhaustive, f.witness_moves
            );
        }
    }

    // A custom family: a single nonseparating genus-2 curve is a cuff of
    // some decomposition of either type, so it stays bounded.
    let s20 = SurfaceSig::CLOSED_GENUS2;
    let family = [Multicurve::parse(s20, "a")?];
    let v = criterion_check(s20, &family, 2, 4);
    println!("\nfamily {{a}} on (2,0): {:?} ({})", v.verdict, v.note);
    Ok(())
}
