//! Named experiment families pairing a boundedness verdict with a pinch
//! probe, used by the CLI, the examples, and the concordance tests.
//!
//! Each preset fixes a surface, a family of multicurves, a base point
//! for the pinch path, and search budgets, so that the two independent
//! pipelines — the per-pants-type orbit search and the degeneration
//! probe — can be compared on the same input.

use crate::error::{Error, Result};
use crate::hyperbolic::FNPoint;
use crate::search::{criterion_check, CriterionVerdict, Verdict};
use crate::topology::slope::parse_multicurve_spec;
use crate::topology::{pants_type_by_tag, Multicurve, SurfaceSig};

use super::{boundedness_probe, t_grid, ProbeConfig, ProbeSeries};

/// A fully specified experiment family.
#[derive(Debug, Clone)]
pub struct Preset {
    pub name: &'static str,
    /// Surface signature as (genus, cusps).
    pub sig: (u32, u32),
    /// Multicurve strings (slope or word form), one per family member.
    pub family: &'static [&'static str],
    /// Decomposition pinched by the probe.
    pub type_tag: &'static str,
    pub base_lengths: &'static [f64],
    pub base_twists: &'static [f64],
    /// Family member the probe follows.
    pub probe_member: usize,
    /// Pinch-grid length. The genus-two builder loses the relator beyond
    /// t = 1/8 (its gluing products run out of f64 precision), so closed
    /// presets stop there; punctured-torus presets run the full grid.
    pub t_steps: usize,
    pub depth: usize,
    pub radius: usize,
    /// Probe divergence threshold; presets use 2 because the collar
    /// growth over the default grid is logarithmic in t.
    pub divergence_factor: f64,
    /// Verdict the family is designed to exhibit.
    pub expected: Verdict,
}

pub const PRESETS: &[Preset] = &[
    // A single slope: its orbit reaches every primitive slope, so it
    // meets the decomposition curve disjointly and stays bounded.
    Preset {
        name: "bounded-slope",
        sig: (1, 1),
        family: &["5/7"],
        type_tag: "standard",
        base_lengths: &[2.0],
        base_twists: &[0.0],
        probe_member: 0,
        t_steps: 8,
        depth: 6,
        radius: 6,
        divergence_factor: 2.0,
        expected: Verdict::Bounded,
    },
    // Two slopes crossing once: every image pair still crosses, so the
    // pinch path forces collar-driven growth.
    Preset {
        name: "crossing-pair",
        sig: (1, 1),
        family: &["1/0,0/1"],
        type_tag: "standard",
        base_lengths: &[4.0],
        base_twists: &[0.0],
        probe_member: 0,
        t_steps: 8,
        depth: 6,
        radius: 6,
        divergence_factor: 2.0,
        expected: Verdict::Unbounded,
    },
    // One member per decomposition type, each the pinched curve system
    // itself: certified zero crossings everywhere.
    Preset {
        name: "pants-multicurve",
        sig: (2, 0),
        family: &["a,c,ac", "abAB,a,c"],
        type_tag: "theta",
        base_lengths: &[1.9, 2.3, 2.7],
        base_twists: &[0.31, 0.47, 0.59],
        probe_member: 0,
        t_steps: 4,
        depth: 2,
        radius: 4,
        divergence_factor: 2.0,
        expected: Verdict::Bounded,
    },
    // A separating curve against the all-nonseparating decomposition:
    // the crossing minimum of 2 is forced by homology.
    Preset {
        name: "separating-curve",
        sig: (2, 0),
        family: &["abAB"],
        type_tag: "theta",
        base_lengths: &[1.9, 2.3, 2.7],
        base_twists: &[0.31, 0.47, 0.59],
        probe_member: 0,
        t_steps: 4,
        depth: 2,
        radius: 4,
        divergence_factor: 2.0,
        expected: Verdict::Unbounded,
    },
];

pub fn all() -> &'static [Preset] {
    PRESETS
}

pub fn by_name(name: &str) -> Result<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name).ok_or_else(|| {
        Error::Parse(format!(
            "unknown preset `{name}`; known: {}",
            PRESETS
                .iter()
                .map(|p| p.name)
                .collect::<Vec<_>>()
                .join(", ")
        ))
    })
}

impl Preset {
    pub fn surface(&self) -> SurfaceSig {
        SurfaceSig::new(self.sig.0, self.sig.1).expect("preset surface")
    }

    pub fn base_point(&self) -> Result<FNPoint> {
        FNPoint::new(
            pants_type_by_tag(self.surface(), self.type_tag)?,
            self.base_lengths.to_vec(),
            self.base_twists.to_vec(),
        )
    }

    pub fn family_multicurves(&self) -> Result<Vec<Multicurve>> {
        self.family
            .iter()
            .map(|s| parse_multicurve_spec(self.surface(), s))
            .collect()
    }

    pub fn probe_config(&self) -> ProbeConfig {
        ProbeConfig {
            t_grid: t_grid(self.t_steps),
            depth: self.depth,
            radius: self.radius,
            divergence_factor: self.divergence_factor,
        }
    }

    /// Pinch probe on the configured member of the family.
    pub fn run_probe(&self) -> Result<ProbeSeries> {
        let family = self.family_multicurves()?;
        boundedness_probe(
            &self.base_point()?,
            &family[self.probe_member],
            &self.probe_config(),
        )
    }

    /// Orbit-search verdict over all pants types.
    pub fn run_criterion(&self) -> Result<CriterionVerdict> {
        Ok(criterion_check(
            self.surface(),
            &self.family_multicurves()?,
            self.depth,
            self.radius,
        ))
    }
}
