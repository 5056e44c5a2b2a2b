//! Hyperbolic structures: Fenchel–Nielsen coordinates, holonomy
//! representations into SL(2, R), geodesic lengths, and collar widths.
//!
//! Every supported surface gets an explicit holonomy builder whose output
//! satisfies exact algebraic normalizations (relator to ±identity, cuff
//! traces −2·cosh(ℓ/2), cusp traces ±2); the builders verify these
//! invariants on every call and report a numeric-degeneracy error when a
//! verification falls outside its roundoff budget, which happens only
//! when the requested lengths push the gluing products past f64 range.

pub mod mat2;
pub mod pants;

use crate::error::{Error, Result};
use crate::topology::word::{cyclic_reduce, format_word, parse_word, Word};
use crate::topology::{Aggregator, Multicurve, PantsDecomposition, SurfaceSig};
use mat2::{Mat2, HYPERBOLIC_MARGIN};
use pants::PantsCuffs;

/// Entrywise tolerance for the surface-group relator mapping to ±identity.
pub const RELATOR_TOL: f64 = 1e-7;
/// Tolerance on |trace| − 2 for cusp classes.
pub const CUSP_TOL: f64 = 1e-7;
/// Tolerance on decomposition-curve traces against 2·cosh(ℓ/2).
pub const DECOMP_TRACE_TOL: f64 = 1e-7;
/// Cuff lengths below this floor degrade the builder numerically.
pub const LENGTH_MIN: f64 = 1e-4;
/// Cuff lengths above this ceiling overflow e^{ℓ/2} products.
pub const LENGTH_MAX: f64 = 50.0;
/// Default word-length budget for systole scans.
pub const SYSTOLE_BUDGET_DEFAULT: usize = 6;
/// Cap on enumeration pools used by scans.
pub const ENUM_CAP: usize = 200_000;

/// A point of the Fenchel–Nielsen parameter space: a pants decomposition
/// together with one (length, twist) pair per decomposition curve.
#[derive(Debug, Clone, PartialEq)]
pub struct FNPoint {
    pub decomposition: PantsDecomposition,
    pub lengths: Vec<f64>,
    pub twists: Vec<f64>,
}

impl FNPoint {
    pub fn new(
        decomposition: PantsDecomposition,
        lengths: Vec<f64>,
        twists: Vec<f64>,
    ) -> Result<Self> {
        let n = decomposition.curves.len();
        if lengths.len() != n || twists.len() != n {
            return Err(Error::Parse(format!(
                "decomposition has {n} curves but got {} lengths / {} twists",
                lengths.len(),
                twists.len()
            )));
        }
        for (i, &l) in lengths.iter().enumerate() {
            if !l.is_finite() || l <= 0.0 {
                return Err(Error::Parse(format!("length {i} must be positive, got {l}")));
            }
        }
        for (i, &t) in twists.iter().enumerate() {
            if !t.is_finite() {
                return Err(Error::Parse(format!("twist {i} must be finite, got {t}")));
            }
        }
        Ok(FNPoint {
            decomposition,
            lengths,
            twists,
        })
    }

    pub fn sig(&self) -> SurfaceSig {
        self.decomposition.sig
    }

    /// A documented generic base point for each surface.
    ///
    /// On the once-punctured torus this is the square point with trace
    /// triple (3, 3, 3); elsewhere the values are generic (no extra
    /// symmetry, all twists nonzero).
    pub fn reference(sig: SurfaceSig) -> FNPoint {
        match (sig.genus, sig.cusps) {
            (0, 3) => FNPoint::from_table(sig, "trivial", vec![], vec![]),
            (1, 1) => {
                let t = 1.5f64.acosh();
                FNPoint::from_table(sig, "standard", vec![2.0 * t], vec![-t])
            }
            (0, 4) => FNPoint::from_table(sig, "standard", vec![2.0], vec![0.37]),
            (2, 0) => FNPoint::from_table(
                sig,
                "theta",
                vec![1.9, 2.3, 2.7],
                vec![0.31, 0.47, 0.59],
            ),
            _ => unreachable!(),
        }
    }

    /// Build a point over a tagged decomposition from the type table.
    pub fn from_table(
        sig: SurfaceSig,
        tag: &str,
        lengths: Vec<f64>,
        twists: Vec<f64>,
    ) -> FNPoint {
        let dec = crate::topology::pants_type_by_tag(sig, tag).expect("known tag");
        FNPoint::new(dec, lengths, twists).expect("valid reference data")
    }

    /// Serialize as a key-value text record with 17 significant digits.
    pub fn to_text_record(&self) -> String {
        let sig = self.sig();
        let mut out = String::new();
        out.push_str(&format!("surface={},{}\n", sig.genus, sig.cusps));
        out.push_str(&format!("pants_type={}\n", self.decomposition.type_tag));
        for (i, curve) in self.decomposition.curves.iter().enumerate() {
            out.push_str(&format!(
                "curve={} length={:.16e} twist={:.16e}\n",
                format_word(curve),
                self.lengths[i],
                self.twists[i]
            ));
        }
        out
    }

    /// Parse the record format produced by [`FNPoint::to_text_record`].
    pub fn from_text_record(text: &str) -> Result<FNPoint> {
        let mut sig: Option<SurfaceSig> = None;
        let mut tag: Option<String> = None;
        let mut curves: Vec<(String, f64, f64)> = Vec::new();
        for raw in text.lines() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(v) = line.strip_prefix("surface=") {
                sig = Some(SurfaceSig::parse(v)?);
            } else if let Some(v) = line.strip_prefix("pants_type=") {
                tag = Some(v.to_string());
            } else if let Some(v) = line.strip_prefix("curve=") {
                let mut length = None;
                let mut twist = None;
                let parts: Vec<&str> = v.split_whitespace().collect();
                if parts.is_empty() {
                    return Err(Error::Parse(format!("bad curve line `{line}`")));
                }
                let name = Some(parts[0].to_string());
                for p in &parts[1..] {
                    if let Some(x) = p.strip_prefix("length=") {
                        length = Some(parse_float(x)?);
                    } else if let Some(x) = p.strip_prefix("twist=") {
                        twist = Some(parse_float(x)?);
                    } else {
                        return Err(Error::Parse(format!("unknown token `{p}`")));
                    }
                }
                match (name, length, twist) {
                    (Some(n), Some(l), Some(t)) => curves.push((n, l, t)),
                    _ => {
                        return Err(Error::Parse(format!(
                            "curve line `{line}` needs length= and twist="
                        )))
                    }
                }
            } else {
                return Err(Error::Parse(format!("unknown record line `{line}`")));
            }
        }
        let sig = sig.ok_or_else(|| Error::Parse("missing surface= line".into()))?;
        let tag = tag.ok_or_else(|| Error::Parse("missing pants_type= line".into()))?;
        let dec = crate::topology::pants_type_by_tag(sig, &tag)?;
        if curves.len() != dec.curves.len() {
            return Err(Error::Parse(format!(
                "pants type `{tag}` needs {} curve lines, got {}",
                dec.curves.len(),
                curves.len()
            )));
        }
        let mut lengths = Vec::new();
        let mut twists = Vec::new();
        for (i, (name, l, t)) in curves.iter().enumerate() {
            let expect = format_word(&dec.curves[i]);
            if *name != expect {
                return Err(Error::Parse(format!(
                    "curve {i} of `{tag}` must be `{expect}`, got `{name}`"
                )));
            }
            lengths.push(*l);
            twists.push(*t);
        }
        FNPoint::new(dec, lengths, twists)
    }
}

fn parse_float(s: &str) -> Result<f64> {
    s.parse::<f64>()
        .map_err(|_| Error::Parse(format!("bad number `{s}`")))
}

/// A holonomy representation: one unit-determinant matrix per generator.
#[derive(Debug, Clone)]
pub struct Holonomy {
    pub sig: SurfaceSig,
    pub gens: Vec<Mat2>,
}

impl Holonomy {
    /// Image of one generator letter (negative = inverse).
    pub fn letter_image(&self, l: i8) -> Mat2 {
        let g = self.gens[(l.unsigned_abs() - 1) as usize];
        if l > 0 {
            g
        } else {
            g.inverse()
        }
    }

    /// Image of a word under the representation.
    pub fn matrix_of(&self, w: &Word) -> Mat2 {
        let mut m = Mat2::IDENTITY;
        for &l in &w.0 {
            m = m.mul(&self.letter_image(l));
        }
        m
    }
}

/// Verification roundoff budget per unit of squared peak partial-product
/// norm: generator entries carry errors ~ε·‖·‖ and the remaining factors
/// of a word amplify them by another norm factor, so a product whose
/// partials reach `peak` can only be verified to ~ε·peak². The factor
/// covers word length.
pub const VERIFY_ROUNDOFF: f64 = 64.0 * f64::EPSILON;

fn verify(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::NumericDegeneracy {
            what: format!("holonomy verification failed: {what}"),
        })
    }
}

/// Word image together with the peak norm among partial products, which
/// bounds the roundoff the product can accumulate. Near-pinched points
/// have generator entries ~1/ℓ, so fixed absolute tolerances would
/// misfire there.
fn matrix_and_peak(h: &Holonomy, w: &Word) -> (Mat2, f64) {
    let mut m = Mat2::IDENTITY;
    let mut peak: f64 = 1.0;
    for &l in &w.0 {
        m = m.mul(&h.letter_image(l));
        peak = peak.max(m.norm());
    }
    (m, peak)
}

fn check_cusp(h: &Holonomy, word: &str) -> Result<()> {
    let w = parse_word(h.sig, word).expect("cusp word");
    let (m, peak) = matrix_and_peak(h, &w);
    let t = m.trace().abs();
    verify(
        (t - 2.0).abs() <= CUSP_TOL + VERIFY_ROUNDOFF * peak * peak,
        &format!("cusp class `{word}` has |trace| {t}"),
    )
}

fn check_decomp_trace(h: &Holonomy, curve: &Word, l: f64) -> Result<()> {
    let (m, peak) = matrix_and_peak(h, curve);
    let t = m.trace().abs();
    let expect = 2.0 * (l / 2.0).cosh();
    verify(
        (t - expect).abs() <= DECOMP_TRACE_TOL * expect.max(1.0) + VERIFY_ROUNDOFF * peak * peak,
        &format!(
            "decomposition curve `{}` trace {t} vs 2cosh(l/2) = {expect}",
            format_word(curve)
        ),
    )
}

/// Build the holonomy representation for a Fenchel–Nielsen point.
///
/// Errors with `NUMERIC_DEGENERACY` when a length leaves [1e−4, 50] or
/// when the built matrices fail their structural verification (cusp
/// traces, decomposition traces, the genus-two relator) beyond the
/// roundoff budget — callers can treat that as "this point is outside
/// the numerically trustworthy regime".
pub fn build_holonomy(point: &FNPoint) -> Result<Holonomy> {
    let sig = point.sig();
    for &l in &point.lengths {
        if l > LENGTH_MAX {
            return Err(Error::NumericDegeneracy {
                what: format!("cuff length {l} exceeds ceiling {LENGTH_MAX}"),
            });
        }
        if l < LENGTH_MIN {
            return Err(Error::NumericDegeneracy {
                what: format!("cuff length {l} below floor {LENGTH_MIN}"),
            });
        }
    }
    let h = match (sig.genus, sig.cusps) {
        (0, 3) => build_03(sig),
        (1, 1) => build_11(sig, point.lengths[0], point.twists[0]),
        (0, 4) => build_04(sig, point.lengths[0], point.twists[0])?,
        (2, 0) => build_20(sig, &point.lengths, &point.twists)?,
        _ => unreachable!(),
    };
    // Shared invariant checks per surface.
    match (sig.genus, sig.cusps) {
        (0, 3) => {
            for w in ["a", "b", "ab"] {
                check_cusp(&h, w)?;
            }
        }
        (1, 1) => {
            check_cusp(&h, "abAB")?;
            check_decomp_trace(&h, &point.decomposition.curves[0], point.lengths[0])?;
        }
        (0, 4) => {
            for w in ["a", "b", "c", "abc"] {
                check_cusp(&h, w)?;
            }
            check_decomp_trace(&h, &point.decomposition.curves[0], point.lengths[0])?;
        }
        (2, 0) => {
            let relator = Word(crate::topology::word::GENUS2_RELATOR.to_vec());
            let (img, peak) = matrix_and_peak(&h, &relator);
            verify(
                img.proj_dist(&Mat2::IDENTITY) <= RELATOR_TOL + VERIFY_ROUNDOFF * peak * peak,
                &format!("relator image off identity by {}", img.proj_dist(&Mat2::IDENTITY)),
            )?;
            for (i, curve) in point.decomposition.curves.iter().enumerate() {
                check_decomp_trace(&h, curve, point.lengths[i])?;
            }
        }
        _ => unreachable!(),
    }
    Ok(h)
}

fn build_03(sig: SurfaceSig) -> Holonomy {
    Holonomy {
        sig,
        gens: vec![Mat2::new(1.0, 2.0, 0.0, 1.0), Mat2::new(1.0, 0.0, -2.0, 1.0)],
    }
}

fn build_11(sig: SurfaceSig, l: f64, tau: f64) -> Holonomy {
    let a = Mat2::translation(l);
    let sh = (l / 2.0).sinh();
    let ch = (l / 2.0).cosh();
    let cth = ch / sh;
    let csc = 1.0 / sh;
    // cth² − csc² = 1 analytically, but at small l the rounded quotients
    // drift off the unit determinant by ~ε·coth²(l/2), which the
    // commutator verification then amplifies. Rescaling by the computed
    // determinant pins it back to 1 up to a couple of ulps.
    let s = (cth * cth - csc * csc).sqrt();
    let b0 = Mat2::new(cth / s, csc / s, csc / s, cth / s);
    let b = Mat2::translation(tau).mul(&b0);
    Holonomy {
        sig,
        gens: vec![a, b],
    }
}

fn build_04(sig: SurfaceSig, l: f64, tau: f64) -> Result<Holonomy> {
    let cuffs = PantsCuffs::new(0.0, 0.0, l)?;
    let (pa, pb) = pants::pants_pair_cuff_normalized(cuffs)?;
    // Mirror copy of the front pants, glued across the shared cuff axis.
    // Using the inverted mirrored pair reverses the cuff orientation, so
    // c·d travels the cuff opposite to a·b; the twist slides the copy
    // along the axis. The fourth cusp is then parabolic exactly:
    // tr σ(B⁻¹) = tr B = −2.
    let g = Mat2::translation(tau);
    let pc = pb.inverse().mirror().conj(&g);
    Ok(Holonomy {
        sig,
        gens: vec![pa, pb, pc],
    })
}

fn build_20(sig: SurfaceSig, lengths: &[f64], twists: &[f64]) -> Result<Holonomy> {
    let (l_a, l_c, l_ac) = (lengths[0], lengths[1], lengths[2]);
    let (th_a, th_c, tau_ac) = (twists[0], twists[1], twists[2]);
    let cuffs = PantsCuffs::new(l_a, l_c, l_ac)?;
    // Front pants: X₂·X₃ = D = −diag(e^{L/2}, e^{−L/2}) along the
    // imaginary axis. Back pants: the mirror image across that axis,
    // slid by the twist of the shared third cuff, and generated so its
    // cuff product runs the axis the opposite way:
    //   Z₂ = E·σ(X₂)⁻¹·E⁻¹,  Z₃ = E·σ(X₂)σ(X₃)⁻¹σ(X₂)⁻¹·E⁻¹,
    //   Z₂·Z₃ = E·σ(D)⁻¹·E⁻¹ = D⁻¹.
    let (x2, x3) = pants::pants_pair_cuff_normalized(cuffs)?;
    let e = Mat2::translation(tau_ac);
    let x2m = x2.mirror();
    let x3m = x3.mirror();
    let z2 = x2m.inverse().conj(&e);
    let z3 = x2m.mul(&x3m.inverse()).mul(&x2m.inverse()).conj(&e);
    // Stable letters glue the remaining two cuffs: sᵢ carries the back
    // copy of the cuff onto the front copy reversed (sᵢ·Zᵢ·sᵢ⁻¹ = Xᵢ⁻¹),
    // composed with the twist translation along the back cuff axis.
    let w2 = x2.inverse().axis_alignment(&z2)?;
    let w3 = x3.inverse().axis_alignment(&z3)?;
    let s2 = w2.mul(&z2.axis_translation(th_a)?);
    let s3 = w3.mul(&z3.axis_translation(th_c)?);
    // Standard generators: a = Z₂, b = Z₃·s₂, c = Z₃, d = s₃; the surface
    // relator collapses to Z₂·Z₃·D = identity.
    Ok(Holonomy {
        sig,
        gens: vec![z2, z3.mul(&s2), z3, s3],
    })
}

/// Geodesic length of an essential curve class: 2·arccosh(|tr|/2).
pub fn curve_length(h: &Holonomy, w: &Word) -> Result<f64> {
    let red = cyclic_reduce(h.sig, w)?;
    let m = h.matrix_of(&red);
    let t = m.trace().abs();
    if t <= 2.0 + HYPERBOLIC_MARGIN {
        return Err(Error::NotHyperbolic {
            word: format_word(&red),
            abs_trace: t,
        });
    }
    Ok(2.0 * (t / 2.0).acosh())
}

/// Aggregated multicurve length (sum or max of component lengths).
pub fn multicurve_length(h: &Holonomy, mc: &Multicurve) -> Result<f64> {
    let mut total: f64 = 0.0;
    let mut max: f64 = 0.0;
    for comp in &mc.components {
        let l = curve_length(h, comp)?;
        total += l;
        max = max.max(l);
    }
    Ok(match mc.aggregator {
        Aggregator::Sum => total,
        Aggregator::Max => max,
    })
}

/// Half-width of the embedded collar around a geodesic of length `l`:
/// arcsinh(1 / sinh(l/2)).
pub fn collar_width(l: f64) -> f64 {
    debug_assert!(l > 0.0);
    (1.0 / (l / 2.0).sinh()).asinh()
}

/// Length lower bound for a curve crossing a geodesic of length `l` at
/// least `crossings` times: each crossing spends 2·w(l) inside the collar.
pub fn crossing_bound(crossings: u64, l: f64) -> f64 {
    2.0 * crossings as f64 * collar_width(l)
}

/// Result of a systole scan over the word pool.
#[derive(Debug, Clone, PartialEq)]
pub struct SystoleEstimate {
    pub value: f64,
    pub witness: Word,
    pub word_budget: usize,
}

/// Shortest curve among all classes of word length ≤ `word_budget`.
///
/// Non-hyperbolic classes (cusps) are skipped. The witness is the first
/// pool word attaining the minimum, so ties resolve deterministically in
/// length-then-keyed-lex order.
pub fn systole_estimate(h: &Holonomy, word_budget: usize) -> Result<SystoleEstimate> {
    let pool = crate::topology::word::enumerate_words(h.sig, word_budget, ENUM_CAP)?;
    let mut best: Option<(f64, Word)> = None;
    for w in pool {
        match curve_length(h, &w) {
            Ok(l) => {
                if best.as_ref().is_none_or(|(bl, _)| l < *bl) {
                    best = Some((l, w));
                }
            }
            Err(_) => continue,
        }
    }
    match best {
        Some((value, witness)) => Ok(SystoleEstimate {
            value,
            witness,
            word_budget,
        }),
        None => Err(Error::SearchExhausted {
            what: "systole candidate pool",
            budget: word_budget,
        }),
    }
}
