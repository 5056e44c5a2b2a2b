//! End-to-end acceptance battery. Each test checks one headline
//! guarantee of the library at its stated tolerance and prints a single
//! PASS line (visible with `--nocapture`); a failure panics with the
//! offending values. The whole battery is budgeted to finish in well
//! under five minutes.

use std::collections::BTreeSet;
use std::process::Command;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

use curvelab::experiments::presets;
use curvelab::experiments::{thick_sample, ProbeClassification};
use curvelab::hyperbolic::pants::{
    fig8_length, fig8_length_derivative, stretch_derivative, CuffAxis, Fig8, InteriorClass,
    PantsCuffs, FD_STEP,
};
use curvelab::hyperbolic::{build_holonomy, curve_length, FNPoint};
use curvelab::intersection::{Intersector, RadiusPolicy, RADIUS_DEFAULT};
use curvelab::search::Verdict;
use curvelab::topology::slope::{slope_intersection, word_of_slope, Slope};
use curvelab::topology::word::parse_word;
use curvelab::topology::SurfaceSig;

fn sig(genus: u32, cusps: u32) -> SurfaceSig {
    SurfaceSig::new(genus, cusps).unwrap()
}

#[test]
fn a01_closed_form_length_anchors() {
    // Thrice-punctured sphere: the figure-eight class has length
    // 2·arccosh(3), both through the closed form and the holonomy.
    let want_fig8 = 2.0 * 3.0f64.acosh();
    let cusps = PantsCuffs::new(0.0, 0.0, 0.0).unwrap();
    let closed = fig8_length(cusps, Fig8::XY);
    assert!(
        (closed - want_fig8).abs() <= 1e-8,
        "closed form {closed} vs {want_fig8}"
    );
    let p03 = FNPoint::reference(sig(0, 3));
    let h03 = build_holonomy(&p03).unwrap();
    let fig8 = parse_word(sig(0, 3), "aB").unwrap();
    let got = curve_length(&h03, &fig8).unwrap();
    assert!(
        (got - want_fig8).abs() <= 1e-8,
        "holonomy length {got} vs {want_fig8}"
    );

    // Square punctured torus: a, b and ab all have length 2·arccosh(3/2).
    let want_sys = 2.0 * 1.5f64.acosh();
    let p11 = FNPoint::reference(sig(1, 1));
    let h11 = build_holonomy(&p11).unwrap();
    for s in ["a", "b", "ab"] {
        let w = parse_word(sig(1, 1), s).unwrap();
        let l = curve_length(&h11, &w).unwrap();
        assert!((l - want_sys).abs() <= 1e-8, "length of {s}: {l} vs {want_sys}");
    }
    println!("PASS a01 closed-form length anchors (figure-eight 2·arccosh 3, torus systole 2·arccosh 3/2)");
}

#[test]
fn a02_trace_identity_on_500_random_pairs() {
    let p = FNPoint::reference(sig(1, 1));
    let h = build_holonomy(&p).unwrap();
    let mut rng = ChaCha20Rng::seed_from_u64(0);
    let mut mk = |rng: &mut ChaCha20Rng| {
        let len = rng.gen_range(1..=6);
        let w: Vec<i8> = (0..len)
            .map(|_| [1i8, -1, 2, -2][rng.gen_range(0..4)])
            .collect();
        h.matrix_of(&curvelab::topology::word::Word(w))
    };
    for k in 0..500 {
        let a = mk(&mut rng);
        let b = mk(&mut rng);
        let lhs = a.mul(&b.inverse()).trace();
        let rhs = a.trace() * b.trace() - a.mul(&b).trace();
        assert!(
            (lhs - rhs).abs() <= 1e-9 * (1.0 + rhs.abs()),
            "pair {k}: tr(AB⁻¹)={lhs} vs tr(A)tr(B)−tr(AB)={rhs}"
        );
    }
    println!("PASS a02 trace identity tr(AB⁻¹)=tr(A)tr(B)−tr(AB) on 500 seeded pairs at 1e-9");
}

#[test]
fn a03_stretch_monotone_on_cuff_grid() {
    // 10×10×10 grid over (0, 6]³. At a zero cuff the derivative in that
    // direction vanishes exactly (sinh 0), so the grid starts just off
    // the boundary where strict positivity is the true statement.
    let vals: Vec<f64> = (1..=10).map(|k| 0.6 * k as f64).collect();
    let classes = [Fig8::XY, Fig8::YZ, Fig8::XZ];
    let axes = [CuffAxis::X, CuffAxis::Y, CuffAxis::Z];
    let mut checked = 0usize;
    for &x in &vals {
        for &y in &vals {
            for &z in &vals {
                let c = PantsCuffs::new(x, y, z).unwrap();
                for f in classes {
                    for ax in axes {
                        let analytic = fig8_length_derivative(c, f, ax);
                        assert!(
                            analytic > 0.0,
                            "derivative not positive at ({x},{y},{z}) {f:?} {ax:?}: {analytic}"
                        );
                        let fd = stretch_derivative(c, &InteriorClass::Fig8(f), ax, FD_STEP)
                            .unwrap();
                        let rel = (fd - analytic).abs() / analytic.abs();
                        assert!(
                            rel <= 1e-5,
                            "finite difference off at ({x},{y},{z}) {f:?} {ax:?}: fd {fd} vs {analytic} (rel {rel:.2e})"
                        );
                        checked += 1;
                    }
                }
            }
        }
    }
    assert_eq!(checked, 9000);
    println!("PASS a03 stretch derivatives positive and matching finite differences (1e-5 rel) on 1000-point grid");
}

#[test]
fn a04_interior_lengths_dominated_by_corner() {
    let corner = PantsCuffs::new(5.0, 5.0, 5.0).unwrap();
    let classes = [Fig8::XY, Fig8::YZ, Fig8::XZ];
    let at_corner: Vec<f64> = classes.iter().map(|&f| fig8_length(corner, f)).collect();
    let mut rng = ChaCha20Rng::seed_from_u64(4);
    for k in 0..100 {
        let c = PantsCuffs::new(
            rng.gen_range(0.0..5.0),
            rng.gen_range(0.0..5.0),
            rng.gen_range(0.0..5.0),
        )
        .unwrap();
        for (i, &f) in classes.iter().enumerate() {
            let l = fig8_length(c, f);
            assert!(
                l <= at_corner[i] + 1e-9,
                "triple {k} ({},{},{}) {f:?}: {l} exceeds corner {}",
                c.x,
                c.y,
                c.z,
                at_corner[i]
            );
            // Interior draws stay strictly below: equality needs the corner.
            assert!(
                l < at_corner[i] - 1e-9,
                "triple {k} off the corner should be strictly dominated"
            );
        }
    }
    // At the corner itself the comparison is equality within slack.
    for (i, &f) in classes.iter().enumerate() {
        assert!((fig8_length(corner, f) - at_corner[i]).abs() <= 1e-9);
    }
    println!("PASS a04 interior lengths on 100 random cuff triples ≤ 5 are dominated by the (5,5,5) corner");
}

/// All canonical primitive slopes with |p|, |q| ≤ 8.
fn primitive_slopes(cap: i64) -> Vec<Slope> {
    let mut set = BTreeSet::new();
    set.insert(Slope::canonical(1, 0));
    for q in 1..=cap {
        for p in -cap..=cap {
            if gcd(p.unsigned_abs(), q.unsigned_abs()) == 1 {
                let s = Slope::canonical(p, q);
                set.insert(s);
            }
        }
    }
    set.into_iter().collect()
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[test]
fn a05_intersection_oracle_matches_slope_arithmetic() {
    let s11 = sig(1, 1);
    let slopes = primitive_slopes(8);
    let words: Vec<_> = slopes
        .iter()
        .map(|&s| word_of_slope(s11, s).unwrap())
        .collect();
    let pairs: Vec<(usize, usize)> = (0..slopes.len())
        .flat_map(|i| (i + 1..slopes.len()).map(move |j| (i, j)))
        .collect();

    let mut rng = ChaCha20Rng::seed_from_u64(5);
    for point in 0..3 {
        let l = rng.gen_range(1.0..3.0);
        let tw = rng.gen_range(-0.5..0.5);
        let base = FNPoint::reference(s11);
        let p = FNPoint::new(base.decomposition.clone(), vec![l], vec![tw]).unwrap();
        let h = build_holonomy(&p).unwrap();
        let engine = Intersector::new(&h);
        let mismatches: Vec<String> = pairs
            .par_iter()
            .filter_map(|&(i, j)| {
                let want = slope_intersection(slopes[i], slopes[j]) as usize;
                match engine.pair_count(&words[i], &words[j], RADIUS_DEFAULT, RadiusPolicy::Adaptive)
                {
                    Ok(r) if r.certified && r.count == want => None,
                    Ok(r) => Some(format!(
                        "{:?} vs {:?}: got {} (certified {}), oracle {want}",
                        slopes[i], slopes[j], r.count, r.certified
                    )),
                    Err(e) => Some(format!("{:?} vs {:?}: {e}", slopes[i], slopes[j])),
                }
            })
            .collect();
        assert!(
            mismatches.is_empty(),
            "point {point} (l={l:.3}, tw={tw:.3}): {} mismatches, first: {}",
            mismatches.len(),
            mismatches[0]
        );
    }
    println!(
        "PASS a05 certified counts equal |p₁q₂−q₁p₂| for all {} primitive slope pairs (|p|,|q| ≤ 8) on 3 random points",
        pairs.len()
    );
}

#[test]
fn a06_bounded_family_concordance() {
    let preset = presets::by_name("bounded-slope").unwrap();
    let verdict = preset.run_criterion().unwrap();
    assert_eq!(verdict.verdict, Verdict::Bounded, "{:?}", verdict.per_pants_type);
    let series = preset.run_probe().unwrap();
    assert_eq!(series.classification, ProbeClassification::Bounded);
    let first = series.min_lengths[0];
    for (t, l) in series.t_values.iter().zip(&series.min_lengths) {
        assert!(
            *l <= 2.0 * first + 1e-9,
            "t={t}: min length {l} left the 2× band around {first}"
        );
    }
    println!("PASS a06 bounded side: single-slope family verdict BOUNDED, probe BOUNDED within the 2× band");
}

#[test]
fn a07_unbounded_family_collar_certificates() {
    let preset = presets::by_name("crossing-pair").unwrap();
    let verdict = preset.run_criterion().unwrap();
    assert_eq!(verdict.verdict, Verdict::Unbounded, "{:?}", verdict.per_pants_type);
    assert!(
        verdict
            .per_pants_type
            .iter()
            .any(|f| f.min_intersection > 0 && f.exhaustive),
        "unbounded verdict must rest on an exhaustive positive minimum"
    );

    let series = preset.run_probe().unwrap();
    assert_eq!(series.classification, ProbeClassification::Diverging);
    let ell = preset.base_lengths[0];
    for (k, (&t, &min_l)) in series
        .t_values
        .iter()
        .zip(&series.min_lengths)
        .enumerate()
    {
        // Collar certificate: any curve forced to cross the pinched cuff
        // is at least twice the collar half-width of its length.
        let cert = 2.0 * (1.0 / (t * ell / 2.0).sinh()).asinh();
        assert!(
            min_l + 1e-9 >= cert,
            "step {k}: minimum {min_l} under the collar certificate {cert}"
        );
        assert!(series.certified[k], "step {k} not certified");
    }
    let first = series.lower_bounds[0];
    let last = *series.lower_bounds.last().unwrap();
    assert!(
        last > 10.0 * first,
        "certificate growth too small: {first} → {last}"
    );
    println!("PASS a07 unbounded side: crossing pair exhaustively UNBOUNDED; collar certificates hold and grow {:.2}×", last / first);
}

#[test]
fn a08_separating_curve_exhaustive_by_homology() {
    let preset = presets::by_name("separating-curve").unwrap();
    let verdict = preset.run_criterion().unwrap();
    assert_eq!(verdict.verdict, Verdict::Unbounded, "{:?}", verdict.per_pants_type);
    let positive = verdict
        .per_pants_type
        .iter()
        .find(|f| f.min_intersection > 0)
        .expect("some pants type must be crossed");
    assert_eq!(
        positive.min_intersection, 2,
        "a separating curve crosses an all-nonseparating decomposition exactly twice"
    );
    assert!(positive.certified);
    assert!(
        positive.exhaustive,
        "the homology argument must mark the minimum exhaustive"
    );
    let series = preset.run_probe().unwrap();
    assert_eq!(series.classification, ProbeClassification::Diverging);
    assert_eq!(series.i_min, 2);
    println!("PASS a08 separating curve on genus 2: UNBOUNDED with homology-exhaustive minimum 2, diverging probe");
}

#[test]
fn a09_homology_basis_within_length_bound() {
    let s20 = sig(2, 0);
    let bound = 45.0 + 6.0 * 2.0f64.asinh(); // 53.6618…, quoted as 53.662
    let sample = thick_sample(s20, 0.5, 20, 9, 6).unwrap();
    let mut worst: f64 = 0.0;
    for (k, p) in sample.points.iter().enumerate() {
        let h = build_holonomy(p).unwrap();
        let basis = curvelab::experiments::homology_basis_search(&h, 6, RADIUS_DEFAULT).unwrap();
        assert!(
            basis.max_length <= 53.662,
            "point {k}: basis max length {} above {bound}",
            basis.max_length
        );
        // Re-verify the crossing pattern δ: α₁β₁ and α₂β₂ meet once,
        // every other pair is disjoint — with certified counts.
        let engine = Intersector::new(&h);
        let c = &basis.curves;
        for i in 0..4 {
            for j in (i + 1)..4 {
                let want = usize::from((i, j) == (0, 1) || (i, j) == (2, 3));
                let r = engine
                    .pair_count(&c[i], &c[j], RADIUS_DEFAULT, RadiusPolicy::Adaptive)
                    .unwrap();
                assert!(
                    r.certified && r.count == want,
                    "point {k}: slots {i},{j} count {} (certified {}), want {want}",
                    r.count,
                    r.certified
                );
            }
        }
        worst = worst.max(basis.max_length);
    }
    println!("PASS a09 canonical homology bases on 20 thick points: certified δ-pattern, max length {worst:.3} ≤ 53.662");
}

#[test]
fn a10_bers_greedy_completes_on_thick_points() {
    let s20 = sig(2, 0);
    let sample = thick_sample(s20, 0.5, 20, 9, 6).unwrap();
    let mut worst: f64 = 0.0;
    for (k, p) in sample.points.iter().enumerate() {
        let h = build_holonomy(p).unwrap();
        let r = curvelab::experiments::bers_greedy(&h, 6, RADIUS_DEFAULT).unwrap();
        assert_eq!(
            r.decomposition.curves.len(),
            3,
            "point {k}: incomplete decomposition"
        );
        assert!(r.max_cuff.is_finite() && r.max_cuff > 0.0);
        // Re-verify: simple and pairwise disjoint, certified.
        let engine = Intersector::new(&h);
        for (i, w) in r.decomposition.curves.iter().enumerate() {
            let sc = engine
                .self_count(w, RADIUS_DEFAULT, RadiusPolicy::Adaptive)
                .unwrap();
            assert!(sc.certified && sc.count == 0, "point {k}: curve {i} not simple");
            for v in &r.decomposition.curves[i + 1..] {
                let pc = engine
                    .pair_count(w, v, RADIUS_DEFAULT, RadiusPolicy::Adaptive)
                    .unwrap();
                assert!(pc.certified && pc.count == 0, "point {k}: curves not disjoint");
            }
        }
        worst = worst.max(r.max_cuff);
    }
    println!("PASS a10 greedy short decompositions complete on 20 thick points; recorded max cuff {worst:.3}");
}

#[test]
fn a11_cli_byte_determinism() {
    let bin = env!("CARGO_BIN_EXE_curvelab");
    let runs: &[&[&str]] = &[
        &["length", "--surface", "0,3", "--word", "aB"],
        &["systole", "--surface", "1,1"],
        &["intersect", "--surface", "1,1", "--multicurve", "2/3", "--multicurve", "1/0"],
        &["orbit-min", "--surface", "1,1", "--multicurve", "0/1", "--depth", "3"],
        &["criterion", "--preset", "bounded-slope"],
        &["pinch-probe", "--preset", "crossing-pair"],
        &["bers", "--surface", "2,0", "--budget", "4"],
        &["homology-basis", "--surface", "2,0", "--budget", "4"],
        &[
            "thick-sample", "--surface", "1,1", "--epsilon", "0.5", "--count", "5", "--seed",
            "7", "--format", "csv",
        ],
        &[
            "empirical-k", "--surface", "1,1", "--multicurve", "1/0,0/1", "--epsilon", "0.5",
            "--count", "3", "--seed", "3", "--depth", "3",
        ],
        &["selftest"],
    ];
    for args in runs {
        let one = Command::new(bin).args(*args).output().unwrap();
        let two = Command::new(bin).args(*args).output().unwrap();
        assert!(
            one.status.success(),
            "{args:?} failed: {}",
            String::from_utf8_lossy(&one.stderr)
        );
        assert_eq!(one.status.code(), two.status.code(), "{args:?} exit codes differ");
        assert_eq!(
            one.stdout, two.stdout,
            "{args:?} produced different bytes across two runs"
        );
    }
    println!("PASS a11 all {} CLI invocations byte-identical across two runs", runs.len());
}
