//! Experiment drivers built on the search and intersection layers.
//!
//! * [`pinch_family`] walks a degeneration path: selected decomposition
//!   curves are scaled toward zero length while twists stay fixed.
//! * [`boundedness_probe`] tracks the orbit-minimal multicurve length
//!   along such a path and pairs every sample with a collar-width lower
//!   bound, classifying the series as bounded or diverging.
//! * [`bers_greedy`] builds a short pants decomposition greedily from
//!   certified-simple, certified-disjoint curves.
//! * [`homology_basis_search`] finds four simple curves realizing the
//!   standard symplectic intersection pattern on the genus-2 surface.
//! * [`thick_sample`] draws seeded Fenchel–Nielsen points conditioned on
//!   a systole floor, and [`empirical_k`] reports the largest
//!   orbit-minimal length seen over such a sample.

pub mod presets;

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hyperbolic::{
    build_holonomy, collar_width, curve_length, systole_estimate, FNPoint, Holonomy, ENUM_CAP,
};
use crate::intersection::{Intersector, RadiusPolicy};
use crate::search::{homology_exhaustive, orbit_min_intersection, orbit_min_length, OrbitValue};
use crate::topology::word::{canonical_class, enumerate_words, homology_class, Word};
use crate::topology::{pants_type_by_tag, Multicurve, PantsDecomposition, SurfaceSig};

/// Default divergence threshold: the final orbit minimum must exceed
/// this multiple of the value at t = 1 before a series is called
/// diverging. Deliberately conservative; presets override it.
pub const DIVERGENCE_FACTOR_DEFAULT: f64 = 10.0;

/// A series is bounded when every sample stays within this multiple of
/// the value at t = 1.
pub const BOUNDED_FACTOR: f64 = 2.0;

/// Slack allowed when checking collar lower bounds against measured
/// orbit minima.
pub const PROBE_SLACK: f64 = 1e-6;

/// Draw count after which rejection sampling checks its acceptance rate.
pub const STALL_CHECK_DRAWS: usize = 10_000;

/// Minimum acceptance rate below which rejection sampling gives up.
pub const STALL_MIN_RATE: f64 = 0.01;

/// Certifier-call budget for the homology-basis backtracking search.
pub const BASIS_CALL_BUDGET: usize = 20_000;

/// Geometric pinch grid 1, 1/2, …, 1/2^(steps−1).
pub fn t_grid(steps: usize) -> Vec<f64> {
    (0..steps as i32).map(|k| 0.5f64.powi(k)).collect()
}

/// Eight geometric pinch steps from 1 down to 1/128.
pub fn default_t_grid() -> Vec<f64> {
    t_grid(8)
}

// ---------------------------------------------------------------------
// Pinch paths
// ---------------------------------------------------------------------

/// Scale the targeted decomposition-curve lengths of `x` by `t`, keeping
/// twists and all other coordinates fixed. `t` must lie in (0, 1];
/// `t = 1` returns the point unchanged, and pinching at `t` then `s`
/// equals pinching at `t·s`.
pub fn pinch_family(x: &FNPoint, targets: &[usize], t: f64) -> Result<FNPoint> {
    if !t.is_finite() || t <= 0.0 || t > 1.0 {
        return Err(Error::Parse(format!(
            "pinch parameter must lie in (0, 1], got {t}"
        )));
    }
    let mut seen = HashSet::new();
    let mut lengths = x.lengths.clone();
    for &i in targets {
        if i >= lengths.len() {
            return Err(Error::Parse(format!(
                "pinch target {i} out of range for {} curves",
                lengths.len()
            )));
        }
        if seen.insert(i) {
            lengths[i] *= t;
        }
    }
    FNPoint::new(x.decomposition.clone(), lengths, x.twists.clone())
}

// ---------------------------------------------------------------------
// Boundedness probes
// ---------------------------------------------------------------------

/// How a probed length series behaved along the pinch path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeClassification {
    /// Every sample stayed within [`BOUNDED_FACTOR`] times the t = 1 value.
    Bounded,
    /// The final sample exceeded the configured factor times the t = 1
    /// value, with certified collar bounds rising over the final three
    /// steps.
    Diverging,
    /// Neither rule fired (or the series was truncated too early).
    Undetermined,
}

impl ProbeClassification {
    pub fn as_str(&self) -> &'static str {
        match self {
            ProbeClassification::Bounded => "BOUNDED",
            ProbeClassification::Diverging => "DIVERGING",
            ProbeClassification::Undetermined => "UNDETERMINED",
        }
    }
}

/// Tuning knobs for [`boundedness_probe`].
#[derive(Debug, Clone)]
pub struct ProbeConfig {
    /// Decreasing pinch parameters in (0, 1]; at least 4 entries.
    pub t_grid: Vec<f64>,
    /// Move-ball depth for the per-t orbit minimization.
    pub depth: usize,
    /// Conjugator radius for intersection certification.
    pub radius: usize,
    /// Multiple of the t = 1 value the final sample must exceed for a
    /// DIVERGING call.
    pub divergence_factor: f64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            t_grid: default_t_grid(),
            depth: 6,
            radius: crate::intersection::RADIUS_DEFAULT,
            divergence_factor: DIVERGENCE_FACTOR_DEFAULT,
        }
    }
}

/// One pinch-path experiment: per-t orbit-minimal lengths, collar
/// certificates, and the resulting classification.
#[derive(Debug, Clone)]
pub struct ProbeSeries {
    pub t_values: Vec<f64>,
    pub min_lengths: Vec<f64>,
    /// Per-t collar certificate 2 · i_min · w(t · ℓ_ref), where ℓ_ref is
    /// the longest pinched base length (narrowest collar, hence valid
    /// for crossings of any pinched curve).
    pub lower_bounds: Vec<f64>,
    /// Least total crossing number of the orbit with the pinched curve
    /// system (t-independent).
    pub i_min: usize,
    /// The crossing minimum is provably the orbit minimum, so the lower
    /// bounds are genuine bounds.
    pub i_min_exhaustive: bool,
    /// Row-level trust: lower bound proven and length measurement
    /// certified.
    pub certified: Vec<bool>,
    pub classification: ProbeClassification,
    /// Set when the series stopped early (pinched lengths under the
    /// holonomy floor).
    pub note: Option<String>,
}

impl ProbeSeries {
    /// Plot-ready CSV rows (no file header; the caller prepends one).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,min_length,lower_bound,i_min,certified\n");
        for k in 0..self.t_values.len() {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                self.t_values[k],
                self.min_lengths[k],
                self.lower_bounds[k],
                self.i_min,
                self.certified[k]
            ));
        }
        if let Some(note) = &self.note {
            out.push_str(&format!("# note: {note}\n"));
        }
        out.push_str(&format!(
            "# classification: {}\n",
            self.classification.as_str()
        ));
        out
    }
}

/// Pinch every decomposition curve of `base` along the configured grid
/// and follow the orbit-minimal length of `m`, pairing each sample with
/// a collar-width certificate.
///
/// The crossing minimum with the pinched curve system is computed once
/// at the base point (it is a topological quantity). Grid points whose
/// pinched lengths fall under the holonomy builder's floor truncate the
/// series with a note instead of failing.
pub fn boundedness_probe(base: &FNPoint, m: &Multicurve, cfg: &ProbeConfig) -> Result<ProbeSeries> {
    let sig = base.sig();
    if m.sig != sig {
        return Err(Error::WrongSurface {
            op: "boundedness_probe",
            genus: sig.genus,
            cusps: sig.cusps,
        });
    }
    if cfg.t_grid.len() < 4 {
        return Err(Error::Parse(format!(
            "pinch grid needs at least 4 steps, got {}",
            cfg.t_grid.len()
        )));
    }
    for pair in cfg.t_grid.windows(2) {
        if !(pair[1] < pair[0]) {
            return Err(Error::Parse(format!(
                "pinch grid must be strictly decreasing, got {} then {}",
                pair[0], pair[1]
            )));
        }
    }
    if !(cfg.t_grid[0] > 0.0 && cfg.t_grid[0] <= 1.0)
        || !(*cfg.t_grid.last().unwrap() > 0.0)
    {
        return Err(Error::Parse("pinch grid must lie in (0, 1]".into()));
    }

    let decomposition = &base.decomposition;
    let h0 = build_holonomy(base)?;
    let (i_min, i_certified, mut i_exhaustive) =
        match orbit_min_intersection(&h0, decomposition, m, cfg.depth, cfg.radius) {
            Ok(rep) => match rep.best_value {
                OrbitValue::Count(c) => (c, rep.certified, rep.exhaustive),
                OrbitValue::Length(_) => unreachable!("crossing search yields counts"),
            },
            // An uncertified state undercut the certified best: keep the
            // pessimistic bound but mark the certificates untrusted.
            Err(Error::UncertifiedState { bound, .. }) => (bound, false, false),
            Err(e) => return Err(e),
        };
    if !i_exhaustive && homology_exhaustive(sig, decomposition, m, &h0, cfg.radius, i_min) {
        i_exhaustive = true;
    }
    let bound_valid = i_certified && i_exhaustive;
    let l_ref = base
        .lengths
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max);
    let all_targets: Vec<usize> = (0..base.lengths.len()).collect();

    let samples: Vec<Result<(f64, bool)>> = cfg
        .t_grid
        .par_iter()
        .map(|&t| {
            let pinched = pinch_family(base, &all_targets, t)?;
            let h = build_holonomy(&pinched)?;
            let rep = orbit_min_length(&h, m, cfg.depth)?;
            Ok((rep.best_value.as_f64(), rep.certified))
        })
        .collect();

    let mut t_values = Vec::new();
    let mut min_lengths = Vec::new();
    let mut lower_bounds = Vec::new();
    let mut certified = Vec::new();
    let mut note = None;
    for (&t, sample) in cfg.t_grid.iter().zip(samples) {
        match sample {
            Ok((min_len, len_certified)) => {
                let lb = 2.0 * i_min as f64 * collar_width(t * l_ref);
                if bound_valid && lb > min_len + PROBE_SLACK {
                    return Err(Error::NumericDegeneracy {
                        what: format!(
                            "collar bound {lb} exceeds measured minimum {min_len} at t = {t}"
                        ),
                    });
                }
                t_values.push(t);
                min_lengths.push(min_len);
                lower_bounds.push(lb);
                certified.push(bound_valid && len_certified);
            }
            Err(Error::NumericDegeneracy { what }) => {
                note = Some(format!("series truncated at t = {t}: {what}"));
                break;
            }
            Err(e) => return Err(e),
        }
    }
    if t_values.is_empty() {
        return Err(Error::NumericDegeneracy {
            what: note.unwrap_or_else(|| "no pinch step could be evaluated".into()),
        });
    }

    let classification = classify_series(
        &min_lengths,
        &lower_bounds,
        &certified,
        cfg.divergence_factor,
    );
    Ok(ProbeSeries {
        t_values,
        min_lengths,
        lower_bounds,
        i_min,
        i_min_exhaustive: bound_valid,
        certified,
        classification,
        note,
    })
}

fn classify_series(
    min_lengths: &[f64],
    lower_bounds: &[f64],
    certified: &[bool],
    divergence_factor: f64,
) -> ProbeClassification {
    let n = min_lengths.len();
    if n == 0 {
        return ProbeClassification::Undetermined;
    }
    let first = min_lengths[0];
    let rising = n >= 3
        && lower_bounds[n - 3..]
            .windows(2)
            .all(|w| w[1] > w[0] + 1e-12);
    let trusted = certified.iter().all(|&c| c);
    if min_lengths[n - 1] > divergence_factor * first && rising && trusted {
        return ProbeClassification::Diverging;
    }
    if min_lengths
        .iter()
        .all(|&v| v <= BOUNDED_FACTOR * first + 1e-9)
    {
        return ProbeClassification::Bounded;
    }
    ProbeClassification::Undetermined
}

// ---------------------------------------------------------------------
// Greedy short pants decompositions
// ---------------------------------------------------------------------

/// A pants decomposition assembled from certified-simple, certified-
/// disjoint curves, with its cuff-length statistics.
#[derive(Debug, Clone)]
pub struct BersResult {
    pub decomposition: PantsDecomposition,
    pub cuff_lengths: Vec<f64>,
    pub max_cuff: f64,
    pub total_cuff: f64,
}

/// Greedily pick the shortest essential simple curves that are pairwise
/// disjoint and non-isotopic until a full pants decomposition (3g−3+n
/// curves) is assembled. Candidates whose simplicity or disjointness
/// cannot be certified are skipped, never trusted.
pub fn bers_greedy(h: &Holonomy, word_budget: usize, radius: usize) -> Result<BersResult> {
    let sig = h.sig;
    let need = sig.decomposition_size();
    if need == 0 {
        return Err(Error::WrongSurface {
            op: "bers_greedy",
            genus: sig.genus,
            cusps: sig.cusps,
        });
    }
    let mut candidates: Vec<(f64, Word)> = enumerate_words(sig, word_budget, ENUM_CAP)?
        .into_iter()
        .filter_map(|w| curve_length(h, &w).ok().map(|l| (l, w)))
        .collect();
    candidates.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then_with(|| a.1.cmp_keyed(&b.1)));

    let engine = Intersector::new(h);
    let mut chosen: Vec<(f64, Word)> = Vec::new();
    let mut used: HashSet<Word> = HashSet::new();
    for (l, w) in candidates {
        if chosen.len() == need {
            break;
        }
        if used.contains(&w) {
            continue;
        }
        match engine.self_count(&w, radius, RadiusPolicy::Adaptive) {
            Ok(c) if c.count == 0 && c.certified => {}
            _ => continue,
        }
        let disjoint = chosen.iter().all(|(_, prev)| {
            matches!(
                engine.pair_count(prev, &w, radius, RadiusPolicy::Adaptive),
                Ok(c) if c.count == 0 && c.certified
            )
        });
        if !disjoint {
            continue;
        }
        used.insert(w.clone());
        used.insert(canonical_class(sig, &w.inverse())?);
        chosen.push((l, w));
    }
    if chosen.len() < need {
        return Err(Error::SearchExhausted {
            what: "greedy pants decomposition",
            budget: word_budget,
        });
    }

    // Identify the decomposition type to attach the right dual graph:
    // on the closed genus-2 surface a null-homologous (separating) cuff
    // means the dumbbell, otherwise the theta.
    let tag = match (sig.genus, sig.cusps) {
        (2, 0) => {
            if chosen
                .iter()
                .any(|(_, w)| homology_class(sig, w).iter().all(|&x| x == 0))
            {
                "dumbbell"
            } else {
                "theta"
            }
        }
        _ => "standard",
    };
    // The dumbbell table lists its separating cuff first; mirror that.
    if tag == "dumbbell" {
        chosen.sort_by_key(|(_, w)| homology_class(sig, w).iter().any(|&x| x != 0));
    }
    let mut decomposition = pants_type_by_tag(sig, tag)?;
    decomposition.curves = chosen.iter().map(|(_, w)| w.clone()).collect();
    let cuff_lengths: Vec<f64> = chosen.iter().map(|&(l, _)| l).collect();
    let max_cuff = cuff_lengths.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let total_cuff = cuff_lengths.iter().sum();
    Ok(BersResult {
        decomposition,
        cuff_lengths,
        max_cuff,
        total_cuff,
    })
}

// ---------------------------------------------------------------------
// Canonical homology bases
// ---------------------------------------------------------------------

/// Four simple curves α₁, β₁, α₂, β₂ with certified crossing pattern
/// i(αᵢ, βⱼ) = δᵢⱼ and i(α₁, α₂) = i(β₁, β₂) = 0, whose homology classes
/// form a basis of Z⁴.
#[derive(Debug, Clone)]
pub struct HomologyBasis {
    /// In slot order α₁, β₁, α₂, β₂.
    pub curves: Vec<Word>,
    pub lengths: Vec<f64>,
    pub max_length: f64,
    /// Homology classes (rows), unimodular as a 4×4 integer matrix.
    pub classes: Vec<Vec<i64>>,
}

/// Crossing requirements of slot k against the previously filled slots.
const BASIS_PATTERN: [&[usize]; 4] = [&[], &[1], &[0, 0], &[0, 0, 1]];

/// Backtracking search, greedy by length, for a canonical homology
/// basis on the closed genus-2 surface. Every crossing count used is
/// certified; candidates with uncertifiable counts are skipped.
pub fn homology_basis_search(h: &Holonomy, word_budget: usize, radius: usize) -> Result<HomologyBasis> {
    let sig = h.sig;
    if sig != SurfaceSig::CLOSED_GENUS2 {
        return Err(Error::WrongSurface {
            op: "homology_basis_search",
            genus: sig.genus,
            cusps: sig.cusps,
        });
    }
    if word_budget < 4 {
        return Err(Error::Parse(format!(
            "homology basis search needs word budget >= 4, got {word_budget}"
        )));
    }
    let mut candidates: Vec<(f64, Word)> = enumerate_words(sig, word_budget, ENUM_CAP)?
        .into_iter()
        .filter_map(|w| curve_length(h, &w).ok().map(|l| (l, w)))
        .collect();
    candidates.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then_with(|| a.1.cmp_keyed(&b.1)));

    let engine = Intersector::new(h);
    let mut calls = 0usize;
    let mut simple_cache: Vec<Option<bool>> = vec![None; candidates.len()];
    let mut chosen: Vec<usize> = Vec::new();

    fn extend(
        engine: &Intersector,
        sig: SurfaceSig,
        candidates: &[(f64, Word)],
        radius: usize,
        calls: &mut usize,
        simple_cache: &mut Vec<Option<bool>>,
        chosen: &mut Vec<usize>,
    ) -> Result<bool> {
        if chosen.len() == 4 {
            // Unimodular homology classes certify a genuine basis of Z⁴.
            let rows: Vec<Vec<i64>> = chosen
                .iter()
                .map(|&i| homology_class(sig, &candidates[i].1))
                .collect();
            return Ok(det4(&rows).abs() == 1);
        }
        let pattern = BASIS_PATTERN[chosen.len()];
        for i in 0..candidates.len() {
            if chosen.contains(&i) {
                continue;
            }
            if *calls >= BASIS_CALL_BUDGET {
                return Ok(false);
            }
            let w = &candidates[i].1;
            // A slot-mate equal to a chosen curve (or its reverse) would
            // trivially pass the zero-crossing checks; reject it.
            if chosen.iter().any(|&j| {
                let c = &candidates[j].1;
                c == w || canonical_class(sig, &c.inverse()).as_ref() == Ok(w)
            }) {
                continue;
            }
            let is_simple = match simple_cache[i] {
                Some(s) => s,
                None => {
                    *calls += 1;
                    let s = matches!(
                        engine.self_count(w, radius, RadiusPolicy::Adaptive),
                        Ok(c) if c.count == 0 && c.certified
                    );
                    simple_cache[i] = Some(s);
                    s
                }
            };
            if !is_simple {
                continue;
            }
            let fits = pattern.iter().enumerate().all(|(slot, &want)| {
                *calls += 1;
                matches!(
                    engine.pair_count(&candidates[chosen[slot]].1, w, radius, RadiusPolicy::Adaptive),
                    Ok(c) if c.count == want && c.certified
                )
            });
            if !fits {
                continue;
            }
            chosen.push(i);
            if extend(engine, sig, candidates, radius, calls, simple_cache, chosen)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }

    let found = extend(
        &engine,
        sig,
        &candidates,
        radius,
        &mut calls,
        &mut simple_cache,
        &mut chosen,
    )?;
    if !found {
        return Err(Error::SearchExhausted {
            what: "canonical homology basis",
            budget: word_budget,
        });
    }
    let curves: Vec<Word> = chosen.iter().map(|&i| candidates[i].1.clone()).collect();
    let lengths: Vec<f64> = chosen.iter().map(|&i| candidates[i].0).collect();
    let max_length = lengths.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let classes = curves.iter().map(|w| homology_class(sig, w)).collect();
    Ok(HomologyBasis {
        curves,
        lengths,
        max_length,
        classes,
    })
}

/// Determinant of a 4×4 integer matrix by cofactor expansion.
fn det4(rows: &[Vec<i64>]) -> i64 {
    fn det3(m: [[i64; 3]; 3]) -> i64 {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }
    let mut det = 0i64;
    for col in 0..4 {
        let mut minor = [[0i64; 3]; 3];
        for (r, row) in rows[1..].iter().enumerate() {
            let mut cc = 0;
            for c in 0..4 {
                if c == col {
                    continue;
                }
                minor[r][cc] = row[c];
                cc += 1;
            }
        }
        let sign = if col % 2 == 0 { 1 } else { -1 };
        det += sign * rows[0][col] * det3(minor);
    }
    det
}

// ---------------------------------------------------------------------
// Thick-part sampling
// ---------------------------------------------------------------------

/// Seeded sample of Fenchel–Nielsen points whose systole estimate meets
/// a floor. Lengths are drawn log-uniformly from [min(ε, 6), 6], twists
/// uniformly from [0, ℓᵢ); draws failing the systole floor are rejected.
#[derive(Debug, Clone)]
pub struct ThickSample {
    pub sig: SurfaceSig,
    pub points: Vec<FNPoint>,
    pub epsilon: f64,
    pub seed: u64,
    pub word_budget: usize,
    pub rejected: usize,
}

/// Rejection-sample `count` points with systole estimate ≥ `epsilon`.
/// Deterministic for a fixed seed. Gives up with `REJECTION_STALLED`
/// when fewer than 1% of at least 10,000 draws were accepted.
pub fn thick_sample(
    sig: SurfaceSig,
    epsilon: f64,
    count: usize,
    seed: u64,
    word_budget: usize,
) -> Result<ThickSample> {
    if !epsilon.is_finite() || epsilon <= 0.0 {
        return Err(Error::Parse(format!(
            "thickness epsilon must be positive, got {epsilon}"
        )));
    }
    let decomposition = FNPoint::reference(sig).decomposition;
    let n = decomposition.curves.len();
    let lo = epsilon.min(6.0);
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(count);
    let mut rejected = 0usize;
    let mut draws = 0usize;
    while points.len() < count {
        draws += 1;
        if draws >= STALL_CHECK_DRAWS && (points.len() as f64) < STALL_MIN_RATE * draws as f64 {
            return Err(Error::RejectionStalled {
                accepted: points.len(),
                draws,
            });
        }
        let lengths: Vec<f64> = (0..n)
            .map(|_| {
                if lo >= 6.0 {
                    6.0
                } else {
                    rng.gen_range(lo.ln()..=6f64.ln()).exp()
                }
            })
            .collect();
        let twists: Vec<f64> = lengths.iter().map(|&l| rng.gen_range(0.0..l)).collect();
        let point = FNPoint::new(decomposition.clone(), lengths, twists)?;
        let accepted = match build_holonomy(&point) {
            Ok(h) => matches!(systole_estimate(&h, word_budget), Ok(se) if se.value >= epsilon),
            Err(_) => false,
        };
        if accepted {
            points.push(point);
        } else {
            rejected += 1;
        }
    }
    Ok(ThickSample {
        sig,
        points,
        epsilon,
        seed,
        word_budget,
        rejected,
    })
}

// ---------------------------------------------------------------------
// Empirical orbit-minimum maxima
// ---------------------------------------------------------------------

/// The largest orbit-minimal length of a type over a sample: an
/// empirical lower bound for the thick-part constant, never an upper one
/// (no sample certifies a maximum over the whole thick part).
#[derive(Debug, Clone)]
pub struct EmpiricalK {
    pub value: f64,
    pub per_point: Vec<f64>,
    /// Index of the sample point attaining the maximum (first on ties).
    pub argmax: usize,
}

/// Maximize the orbit-minimal length of `m` over the sample points.
pub fn empirical_k(sample: &ThickSample, m: &Multicurve, depth: usize) -> Result<EmpiricalK> {
    if sample.points.is_empty() {
        return Err(Error::Parse("empirical maximum needs a nonempty sample".into()));
    }
    if m.sig != sample.sig {
        return Err(Error::WrongSurface {
            op: "empirical_k",
            genus: sample.sig.genus,
            cusps: sample.sig.cusps,
        });
    }
    let per_point: Vec<f64> = sample
        .points
        .par_iter()
        .map(|pt| {
            let h = build_holonomy(pt)?;
            Ok(orbit_min_length(&h, m, depth)?.best_value.as_f64())
        })
        .collect::<Result<Vec<f64>>>()?;
    let mut argmax = 0;
    for (i, &v) in per_point.iter().enumerate() {
        if v > per_point[argmax] {
            argmax = i;
        }
    }
    Ok(EmpiricalK {
        value: per_point[argmax],
        per_point,
        argmax,
    })
}
