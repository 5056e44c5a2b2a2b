//! Certified geometric intersection counts for geodesic curve classes.
//!
//! Crossings of two closed geodesics lift to double cosets ⟨α⟩·g·⟨β⟩ of
//! the deck group whose conjugated axes cross transversally. The engine
//! enumerates conjugators g over word balls of growing radius, tests
//! whether the conjugated axis links the base axis on the boundary
//! circle, and deduplicates cosets by a canonical matrix representative.
//! A count is *certified* when consecutive radii agree — so enlarging
//! the ball stopped changing the answer — and the count has the parity
//! its homological crossing form forces.
//!
//! Working frame: everything is conjugated so the first curve's axis is
//! the imaginary axis (repelling endpoint 0, attracting ∞). An axis then
//! crosses it exactly when its fixed points straddle 0, and the residual
//! ⟨α⟩-action is the exact diagonal shift b ↦ b·e^{kℓ}, c ↦ c·e^{−kℓ}
//! used for canonicalization.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::hyperbolic::mat2::Mat2;
use crate::hyperbolic::Holonomy;
use crate::topology::word::{canonical_class, format_word, homology_class, is_dehn_reduced, rank, Word};
use crate::topology::{Multicurve, SurfaceSig};

/// Angular separation below which axis endpoints are indistinguishable.
pub const AXIS_SEP_TOL: f64 = 1e-9;
/// Relative tolerance for matching canonical coset representatives.
pub const MATCH_REL_TOL: f64 = 1e-6;
/// Per-candidate conjugation-noise coefficient: a computed conjugate
/// g·B·g⁻¹ carries roundoff of order ε·‖g‖²·‖B‖ from cancellation in
/// the triple product, so matching widens by this scaled term.
pub const CONJ_NOISE_EPS: f64 = 1e-14;
/// Conditioning cap, relative to the conjugate's entry scale. A
/// candidate with conjugation noise above this cannot be classified
/// reliably and is dropped: its double coset, if it names a genuine
/// crossing, is also reached through a shorter, well-conditioned
/// conjugator.
pub const WELL_COND_REL: f64 = 1e-8;
/// Default conjugator-ball radius.
pub const RADIUS_DEFAULT: usize = 6;
/// Consecutive equal radii required for adaptive early termination.
/// Early termination is additionally deferred until the ball depth is a
/// sizable fraction of the longer word's length: long classes keep
/// acquiring crossing cosets at depths that scale with their length, so
/// an earlier plateau is unearned.
pub const ADAPTIVE_STREAK: usize = 3;

/// Mod-2 parity that any transverse crossing count of two distinct
/// classes must have: the geometric count is congruent to the
/// homological intersection form, which is the standard symplectic
/// pairing in genus ≥ 1 and vanishes identically on planar surfaces.
/// A count with the wrong parity is provably incomplete and is never
/// certified. (Self-crossing counts carry no such constraint.)
fn crossing_parity(sig: SurfaceSig, wa: &Word, wb: &Word) -> usize {
    let u = homology_class(sig, wa);
    let v = homology_class(sig, wb);
    let form = match sig.genus {
        1 if u.len() >= 2 && v.len() >= 2 => u[0] * v[1] - u[1] * v[0],
        2 if u.len() >= 4 && v.len() >= 4 => {
            u[0] * v[1] - u[1] * v[0] + u[2] * v[3] - u[3] * v[2]
        }
        _ => 0,
    };
    form.rem_euclid(2) as usize
}

/// How the conjugator radius is spent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RadiusPolicy {
    /// Enumerate exactly to the configured radius; certify by agreement
    /// of the last two radii.
    Fixed,
    /// Stop early once three consecutive radii agree, the ball is deep
    /// enough relative to the word lengths, and the count has the parity
    /// forced by homology; otherwise run to the configured cap and
    /// certify by the last two.
    Adaptive,
}

/// A (possibly uncertified) intersection count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntersectionCount {
    pub count: usize,
    pub certified: bool,
    pub radius_used: usize,
}

impl IntersectionCount {
    fn exact(count: usize) -> Self {
        IntersectionCount {
            count,
            certified: true,
            radius_used: 0,
        }
    }

    fn merge_sum(&mut self, other: &IntersectionCount) {
        self.count += other.count;
        self.certified &= other.certified;
        self.radius_used = self.radius_used.max(other.radius_used);
    }
}

type CacheKey = (Vec<i8>, Vec<i8>, bool, usize, RadiusPolicy);

/// Intersection engine bound to one holonomy, with a memo cache keyed by
/// canonical class pairs.
pub struct Intersector<'a> {
    pub holonomy: &'a Holonomy,
    cache: Mutex<HashMap<CacheKey, IntersectionCount>>,
}

impl<'a> Intersector<'a> {
    pub fn new(holonomy: &'a Holonomy) -> Self {
        Intersector {
            holonomy,
            cache: Mutex::new(HashMap::new()),
        }
    }

    fn sig(&self) -> SurfaceSig {
        self.holonomy.sig
    }

    /// Hyperbolic image of a class, with the class word attached to any
    /// failure.
    fn class_matrix(&self, w: &Word) -> Result<Mat2> {
        let m = self.holonomy.matrix_of(w);
        if !m.is_hyperbolic() {
            return Err(Error::NotHyperbolic {
                word: format_word(w),
                abs_trace: m.trace().abs(),
            });
        }
        Ok(m)
    }

    /// Mutual intersection number of two distinct classes. Classes with
    /// equal canonical form count 0: parallel copies of one geodesic are
    /// realized disjointly.
    pub fn pair_count(
        &self,
        w1: &Word,
        w2: &Word,
        radius: usize,
        policy: RadiusPolicy,
    ) -> Result<IntersectionCount> {
        let c1 = canonical_class(self.sig(), w1)?;
        let c2 = canonical_class(self.sig(), w2)?;
        if c1 == c2 {
            return Ok(IntersectionCount::exact(0));
        }
        // Key with the lesser word first: the count is symmetric.
        let (ka, kb) = if c1.cmp_keyed(&c2) == std::cmp::Ordering::Less {
            (c1.clone(), c2.clone())
        } else {
            (c2.clone(), c1.clone())
        };
        let key: CacheKey = (ka.0.clone(), kb.0.clone(), false, radius, policy);
        if let Some(hit) = self.cache.lock().unwrap().get(&key) {
            return Ok(*hit);
        }
        let a = self.class_matrix(&ka)?;
        let b = self.class_matrix(&kb)?;
        let out = self.count_cosets(&a, &b, &ka, &kb, false, radius, policy)?;
        self.cache.lock().unwrap().insert(key, out);
        Ok(out)
    }

    /// Self-intersection number of one class (0 exactly when the class
    /// is simple).
    pub fn self_count(
        &self,
        w: &Word,
        radius: usize,
        policy: RadiusPolicy,
    ) -> Result<IntersectionCount> {
        let c = canonical_class(self.sig(), w)?;
        let key: CacheKey = (c.0.clone(), c.0.clone(), true, radius, policy);
        if let Some(hit) = self.cache.lock().unwrap().get(&key) {
            return Ok(*hit);
        }
        let a = self.class_matrix(&c)?;
        let out = self.count_cosets(&a, &a, &c, &c, true, radius, policy)?;
        self.cache.lock().unwrap().insert(key, out);
        Ok(out)
    }

    /// Total self-intersection of a multicurve: component self-crossings
    /// plus crossings between distinct components.
    pub fn multicurve_self_intersection(
        &self,
        m: &Multicurve,
        radius: usize,
        policy: RadiusPolicy,
    ) -> Result<IntersectionCount> {
        let mut total = IntersectionCount::exact(0);
        for (i, w) in m.components.iter().enumerate() {
            total.merge_sum(&self.self_count(w, radius, policy)?);
            for v in &m.components[i + 1..] {
                total.merge_sum(&self.pair_count(w, v, radius, policy)?);
            }
        }
        Ok(total)
    }

    /// Total crossing number between two multicurves (sum over component
    /// pairs).
    pub fn multicurve_mutual(
        &self,
        m1: &Multicurve,
        m2: &Multicurve,
        radius: usize,
        policy: RadiusPolicy,
    ) -> Result<IntersectionCount> {
        let mut total = IntersectionCount::exact(0);
        for w in &m1.components {
            for v in &m2.components {
                total.merge_sum(&self.pair_count(w, v, radius, policy)?);
            }
        }
        Ok(total)
    }

    /// Total crossing number between a multicurve and a fixed curve
    /// system (e.g. the curves of a pants decomposition).
    pub fn multicurve_vs_curves(
        &self,
        m: &Multicurve,
        curves: &[Word],
        radius: usize,
        policy: RadiusPolicy,
    ) -> Result<IntersectionCount> {
        let mut total = IntersectionCount::exact(0);
        for w in &m.components {
            for c in curves {
                total.merge_sum(&self.pair_count(w, c, radius, policy)?);
            }
        }
        Ok(total)
    }

    /// Coset enumeration in the frame where `a` is diagonal.
    fn count_cosets(
        &self,
        a: &Mat2,
        b: &Mat2,
        wa: &Word,
        wb: &Word,
        self_mode: bool,
        radius: usize,
        policy: RadiusPolicy,
    ) -> Result<IntersectionCount> {
        let st = a.standardizer()?;
        let st_inv = st.inverse();
        let ell = a.translation_length()?;
        let b_st = st.mul(b).mul(&st_inv);
        // Generator images in the standardized frame, in letter-key order
        // a, A, b, B, ... so the enumeration is deterministic.
        let r = rank(self.sig());
        let letters: Vec<i8> = (0..2 * r)
            .map(|k| {
                let idx = (k / 2 + 1) as i8;
                if k % 2 == 0 {
                    idx
                } else {
                    -idx
                }
            })
            .collect();
        let images: HashMap<i8, Mat2> = letters
            .iter()
            .map(|&l| {
                let g = self.holonomy.letter_image(l);
                (l, st.mul(&g).mul(&st_inv))
            })
            .collect();
        let dehn_prune = self.sig() == SurfaceSig::CLOSED_GENUS2;
        // A conjugator carrying a literal ⟨α⟩-prefix or ⟨β⟩-suffix names
        // the same double coset as its stripped form, which the ball
        // already contains at shorter length. Skipping these removes the
        // duplicates with the worst conjugation noise; partially
        // cancelled redundancies are still merged numerically.
        let skip = CosetSkip::new(wa, wb);

        let parity = if self_mode {
            None
        } else {
            Some(crossing_parity(self.sig(), wa, wb))
        };
        let parity_ok = |n: usize| parity.is_none_or(|p| n % 2 == p);
        let min_exit_depth = (ADAPTIVE_STREAK - 1).max((wa.0.len().max(wb.0.len()) + 2) / 3);

        let mut found = CrossingSet::new(ell);
        let mut counts: Vec<usize> = Vec::with_capacity(radius + 1);
        // Layer 0: the identity conjugator.
        let mut layer: Vec<(Word, Mat2)> = vec![(Word::empty(), Mat2::IDENTITY)];
        self.process_layer(&layer, &b_st, self_mode, &skip, &mut found)?;
        counts.push(found.len());
        let mut radius_used = 0;
        for depth in 1..=radius {
            let mut next: Vec<(Word, Mat2)> = Vec::with_capacity(layer.len() * (2 * r - 1));
            for (w, g) in &layer {
                for &l in &letters {
                    if w.0.last().is_some_and(|&p| p == -l) {
                        continue;
                    }
                    let mut nw = w.0.clone();
                    nw.push(l);
                    let nw = Word(nw);
                    // A word with a long relator run equals a shorter
                    // word; the shorter form is enumerated anyway, and
                    // every extension keeps the run, so prune the branch.
                    if dehn_prune && !is_dehn_reduced(&nw) {
                        continue;
                    }
                    let ng = g.mul(&images[&l]);
                    next.push((nw, ng));
                }
            }
            layer = next;
            self.process_layer(&layer, &b_st, self_mode, &skip, &mut found)?;
            counts.push(found.len());
            radius_used = depth;
            if policy == RadiusPolicy::Adaptive && depth >= min_exit_depth {
                let n = counts.len();
                if counts[n - ADAPTIVE_STREAK..].windows(2).all(|p| p[0] == p[1])
                    && parity_ok(found.len())
                {
                    return Ok(IntersectionCount {
                        count: found.len(),
                        certified: true,
                        radius_used,
                    });
                }
            }
        }
        let n = counts.len();
        let certified = n >= 2 && counts[n - 1] == counts[n - 2] && parity_ok(found.len());
        if !certified && std::env::var("CURVELAB_DEBUG").is_ok() {
            eprintln!("counts per radius: {counts:?}");
            for (i, e) in found.entries.iter().enumerate() {
                eprintln!(
                    "  entry {i}: tr={:.6e} b={:.6e} c={:.6e} noise={:.2e}",
                    e.forms[0].trace(),
                    e.forms[0].b,
                    e.forms[0].c,
                    e.noise
                );
            }
        }
        Ok(IntersectionCount {
            count: found.len(),
            certified,
            radius_used,
        })
    }

    fn process_layer(
        &self,
        layer: &[(Word, Mat2)],
        b_st: &Mat2,
        self_mode: bool,
        skip: &CosetSkip,
        found: &mut CrossingSet,
    ) -> Result<()> {
        for (wg, g) in layer {
            if skip.redundant(wg) {
                continue;
            }
            let noise = CONJ_NOISE_EPS * g.norm() * g.norm() * b_st.norm();
            if noise > WELL_COND_REL * (1.0 + b_st.norm()) {
                continue;
            }
            let c = g.mul(b_st).mul(&g.inverse());
            match classify_axis(&c)? {
                AxisPosition::SameAxis | AxisPosition::Disjoint => continue,
                AxisPosition::Crossing => {}
            }
            let form = canonical_form(&c, found.ell);
            let partner = if self_mode {
                let c2 = g.inverse().mul(b_st).mul(g);
                canonical_form(&c2, found.ell)
            } else {
                form
            };
            found.insert(Crossing {
                forms: [form, partner],
                noise,
            });
        }
        Ok(())
    }
}

/// Literal prefix/suffix tests marking conjugators whose double coset a
/// shorter ball element already names.
struct CosetSkip {
    prefixes: Vec<Vec<i8>>,
    suffixes: Vec<Vec<i8>>,
}

impl CosetSkip {
    fn new(wa: &Word, wb: &Word) -> Self {
        let ai: Vec<i8> = wa.inverse().0;
        let bi: Vec<i8> = wb.inverse().0;
        CosetSkip {
            prefixes: vec![wa.0.clone(), ai],
            suffixes: vec![wb.0.clone(), bi],
        }
    }

    fn redundant(&self, w: &Word) -> bool {
        self.prefixes.iter().any(|p| w.0.starts_with(p))
            || self.suffixes.iter().any(|s| w.0.ends_with(s))
    }
}

enum AxisPosition {
    Crossing,
    Disjoint,
    SameAxis,
}

fn circle_dist(x: f64, y: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let d = (x - y).rem_euclid(two_pi);
    d.min(two_pi - d)
}

/// Where the axis of `c` sits relative to the imaginary axis (the
/// standardized base axis with boundary angles 0 and π).
fn classify_axis(c: &Mat2) -> Result<AxisPosition> {
    let pi = std::f64::consts::PI;
    let (rep, att) = match c.axis_endpoints() {
        Ok(e) => e,
        // Conjugates keep the trace; a failure here is float noise on a
        // nearly-parabolic class, which cannot produce a crossing.
        Err(_) => return Ok(AxisPosition::Disjoint),
    };
    let phi = [rep.angle(), att.angle()];
    let near: Vec<f64> = phi
        .iter()
        .map(|&x| circle_dist(x, 0.0).min(circle_dist(x, pi)))
        .collect();
    let on_axis = [near[0] < AXIS_SEP_TOL, near[1] < AXIS_SEP_TOL];
    match (on_axis[0], on_axis[1]) {
        (true, true) => return Ok(AxisPosition::SameAxis),
        (false, false) => {}
        _ => {
            return Err(Error::TangentAxes {
                separation: near[0].min(near[1]),
            })
        }
    }
    let upper = [phi[0] > 0.0 && phi[0] < pi, phi[1] > 0.0 && phi[1] < pi];
    if upper[0] != upper[1] {
        Ok(AxisPosition::Crossing)
    } else {
        Ok(AxisPosition::Disjoint)
    }
}

/// Canonical representative of the ⟨diag⟩-conjugation orbit of `c`:
/// balance the off-diagonal magnitudes with the exact diagonal action,
/// then normalize the sign so the trace is positive.
fn canonical_form(c: &Mat2, ell: f64) -> Mat2 {
    debug_assert!(c.b != 0.0 && c.c != 0.0, "crossing axis has nonzero off-diagonals");
    let k = ((c.c.abs().ln() - c.b.abs().ln()) / (2.0 * ell)).round();
    let e = Mat2::translation(k * ell);
    let m = e.mul(c).mul(&e.inverse());
    if m.trace() < 0.0 {
        m.neg()
    } else {
        m
    }
}

/// One discovered crossing: canonical coset forms plus the numerical
/// noise of the conjugation that produced them. In self mode each
/// crossing keeps both the g- and g⁻¹-coset forms, since either may be
/// met first.
struct Crossing {
    forms: [Mat2; 2],
    noise: f64,
}

/// Set of crossings found so far, deduplicated by canonical coset form.
struct CrossingSet {
    ell: f64,
    entries: Vec<Crossing>,
}

impl CrossingSet {
    fn new(ell: f64) -> Self {
        CrossingSet {
            ell,
            entries: Vec::new(),
        }
    }

    fn len(&self) -> usize {
        self.entries.len()
    }

    fn same_form(&self, x: &Mat2, y: &Mat2, tol: f64) -> bool {
        // Allow a one-step diagonal shift either way: near the rounding
        // boundary the balancing power can differ by one.
        for j in [-1.0f64, 0.0, 1.0] {
            let e = Mat2::translation(j * self.ell);
            let shifted = e.mul(x).mul(&e.inverse());
            if shifted.proj_dist(y) <= tol {
                return true;
            }
        }
        false
    }

    fn insert(&mut self, cand: Crossing) {
        for entry in &self.entries {
            for have in &entry.forms {
                for form in &cand.forms {
                    let scale = form.norm().max(have.norm()).max(1.0);
                    let tol = MATCH_REL_TOL * scale + entry.noise + cand.noise;
                    if self.same_form(form, have, tol) {
                        return;
                    }
                }
            }
        }
        self.entries.push(cand);
    }
}
