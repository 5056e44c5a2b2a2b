//! The two independent lines of evidence the library produces for a
//! curve family — the pants-type criterion verdict and the pinch-probe
//! classification — must agree on every shipped preset: a family judged
//! BOUNDED must probe BOUNDED, and a family judged UNBOUNDED must probe
//! DIVERGING with certified collar lower bounds.

use curvelab::experiments::presets;
use curvelab::experiments::ProbeClassification;
use curvelab::search::Verdict;

fn check_concordance(name: &str) {
    let preset = presets::by_name(name).unwrap();
    let verdict = preset.run_criterion().unwrap().verdict;
    let series = preset.run_probe().unwrap();
    match verdict {
        Verdict::Bounded => {
            assert_eq!(
                series.classification,
                ProbeClassification::Bounded,
                "{name}: BOUNDED verdict but probe said {:?}",
                series.classification
            );
        }
        Verdict::Unbounded => {
            assert_eq!(
                series.classification,
                ProbeClassification::Diverging,
                "{name}: UNBOUNDED verdict but probe said {:?}",
                series.classification
            );
            assert!(
                series.certified.iter().all(|&c| c),
                "{name}: diverging probe must certify every collar bound"
            );
            for (l, b) in series.min_lengths.iter().zip(&series.lower_bounds) {
                assert!(
                    l + 1e-9 >= *b,
                    "{name}: minimum length {l} fell below its certificate {b}"
                );
            }
        }
        Verdict::Inconclusive => {
            panic!("{name}: preset verdicts must be conclusive, got INCONCLUSIVE")
        }
    }
}

#[test]
fn bounded_slope_preset_is_concordant() {
    check_concordance("bounded-slope");
}

#[test]
fn crossing_pair_preset_is_concordant() {
    check_concordance("crossing-pair");
}

#[test]
fn pants_multicurve_preset_is_concordant() {
    check_concordance("pants-multicurve");
}

#[test]
fn separating_curve_preset_is_concordant() {
    check_concordance("separating-curve");
}
