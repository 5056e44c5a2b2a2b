//! Geodesic lengths from Fenchel–Nielsen coordinates.
//!
//! Builds hyperbolic structures on the four supported surfaces, measures
//! curve classes against two closed-form anchors, and shows how lengths
//! respond to the twist parameter.
//!
//! Run with `cargo run --example lengths`.

use curvelab::hyperbolic::{
    build_holonomy, collar_width, curve_length, multicurve_length, FNPoint,
};
use curvelab::topology::word::parse_word;
use curvelab::topology::{Multicurve, SurfaceSig};

fn main() -> curvelab::Result<()> {
    // Thrice-punctured sphere: its hyperbolic structure is rigid, and the
    // figure-eight class a·b⁻¹ has length exactly 2·arccosh(3).
    let s03 = SurfaceSig::new(0, 3)?;
    let p03 = FNPoint::reference(s03);
    let h03 = build_holonomy(&p03)?;
    let fig8 = parse_word(s03, "aB")?;
    println!("figure-eight on (0,3): {:.12}", curve_length(&h03, &fig8)?);
    println!("2·arccosh(3)         : {:.12}", 2.0 * 3.0f64.acosh());

    // Square punctured torus: the systole is threefold degenerate; a, b
    // and ab all realize 2·arccosh(3/2).
    let s11 = SurfaceSig::new(1, 1)?;
    let p11 = FNPoint::reference(s11);
    let h11 = build_holonomy(&p11)?;
    println!("\nsquare torus anchors (want {:.12}):", 2.0 * 1.5f64.acosh());
    for name in ["a", "b", "ab"] {
        let w = parse_word(s11, name)?;
        println!("  {name:>2}: {:.12}", curve_length(&h11, &w)?);
    }

    // Twisting lengthens the dual curve: sweep the twist at fixed cuff.
    println!("\ntwist response of b on (1,1) with cuff length 2:");
    for k in 0..=4 {
        let tw = 0.25 * k as f64;
        let p = FNPoint::new(p11.decomposition.clone(), vec![2.0], vec![tw])?;
        let h = build_holonomy(&p)?;
        let b = parse_word(s11, "b")?;
        println!("  twist {tw:.2}: {:.6}", curve_length(&h, &b)?);
    }

    // Multicurve lengths aggregate per component: total by default, the
    // longest component under the max aggregator.
    let mc_sum = Multicurve::parse(s11, "1/0,0/1")?;
    let mc_max = Multicurve::parse(s11, "max:1/0,0/1")?;
    println!("\nmulticurve {{a, b}} at the square point:");
    println!("  sum: {:.6}", multicurve_length(&h11, &mc_sum)?);
    println!("  max: {:.6}", multicurve_length(&h11, &mc_max)?);

    // Collar widths: every embedded geodesic of length ℓ carries a collar
    // of half-width arcsinh(1/sinh(ℓ/2)), the engine's divergence lever.
    println!("\ncollar half-widths:");
    for l in [2.0, 1.0, 0.5, 0.1] {
        println!("  length {l:>4}: {:.6}", collar_width(l));
    }

    // Closed genus-2 surface at its reference point.
    let s20 = SurfaceSig::CLOSED_GENUS2;
    let p20 = FNPoint::reference(s20);
    let h20 = build_holonomy(&p20)?;
    println!("\ngenus-2 reference decomposition cuffs:");
    for (curve, l) in p20.decomposition.curves.iter().zip(&p20.lengths) {
        let measured = curve_length(&h20, curve)?;
        println!(
            "  {}: prescribed {l}, measured {measured:.12}",
            curvelab::topology::word::format_word(curve)
        );
    }
    Ok(())
}
