//! Hyperbolic pairs of pants: boundary-trace parametrization, the
//! figure-eight interior classes in closed form, and stretch derivatives.
//!
//! Boundary convention: a cuff of length ℓ ≥ 0 is carried by a generator of
//! trace −2·cosh(ℓ/2); a cusp is the ℓ = 0 case with trace −2. With this
//! sign choice the figure-eight length formula has all-positive terms.

use crate::error::{Error, Result};
use crate::hyperbolic::mat2::Mat2;
use crate::topology::word::{canonical_class, cyclic_reduce, format_word, Word};
use crate::topology::SurfaceSig;

/// Cuff lengths of a pair of pants; 0 encodes a cusp.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PantsCuffs {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl PantsCuffs {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        for v in [x, y, z] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::Parse(format!("invalid cuff length {v}")));
            }
        }
        Ok(PantsCuffs { x, y, z })
    }
}

/// The three non-simple interior classes encircling two of the cuffs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fig8 {
    XY,
    YZ,
    XZ,
}

/// Axis of cuff-space differentiation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CuffAxis {
    X,
    Y,
    Z,
}

/// Finite-difference step default.
pub const FD_STEP: f64 = 1e-4;
/// Relative disagreement between the h and h/2 estimates beyond which a
/// Richardson extrapolation is returned instead.
pub const FD_RICHARDSON_REL: f64 = 1e-3;

fn boundary_trace(l: f64) -> f64 {
    -2.0 * (l / 2.0).cosh()
}

/// Two generators with prescribed boundary traces t₁ = −2cosh(x/2),
/// t₂ = −2cosh(y/2) and product trace −2cosh(z/2). Valid for all cuff
/// lengths ≥ 0 including cusps.
pub fn pants_pair(c: PantsCuffs) -> (Mat2, Mat2) {
    let t1 = boundary_trace(c.x);
    let t2 = boundary_trace(c.y);
    // Product trace −2cosh(z/2) via μ + 1/μ with μ = −e^{z/2}.
    let mu = -(c.z / 2.0).exp();
    let a = Mat2::new(t1, -1.0, 1.0, 0.0);
    let b = Mat2::new(0.0, mu, -1.0 / mu, t2);
    (a, b)
}

/// Sign of the off-diagonal split in the cuff-normalized pants pair. Both
/// choices are mirror-conjugate gauges of the same representation; the
/// value is fixed once so serialized matrices are reproducible.
pub const PANTS_SIDE_SIGN: f64 = 1.0;

/// Generators (A, B) with tr A = −2cosh(x/2), tr B = −2cosh(y/2) and
/// A·B = −diag(e^{z/2}, e^{−z/2}) exactly: the z-cuff is the translation
/// along the imaginary axis, ready for twist-gluing. Requires z > 0.
pub fn pants_pair_cuff_normalized(c: PantsCuffs) -> Result<(Mat2, Mat2)> {
    if c.z <= 0.0 {
        return Err(Error::NumericDegeneracy {
            what: format!("cuff-normalized pants needs z > 0, got {}", c.z),
        });
    }
    let t1 = boundary_trace(c.x);
    let t2 = boundary_trace(c.y);
    let lam = (c.z / 2.0).exp();
    let d = -(t1 + t2 * lam) / (lam * lam - 1.0);
    let a = t1 - d;
    let bc = a * d - 1.0;
    debug_assert!(bc < 0.0, "off-diagonal product must be negative");
    let b = PANTS_SIDE_SIGN * (-bc).sqrt();
    let mat_a = Mat2::new(a, b, bc / b, d);
    let mat_b = mat_a
        .inverse()
        .mul(&Mat2::translation(c.z).neg());
    Ok((mat_a, mat_b))
}

fn fig8_cosh_half(c: PantsCuffs, which: Fig8) -> f64 {
    let (u, v, w) = match which {
        Fig8::XY => (c.x, c.y, c.z),
        Fig8::YZ => (c.y, c.z, c.x),
        Fig8::XZ => (c.x, c.z, c.y),
    };
    2.0 * (u / 2.0).cosh() * (v / 2.0).cosh() + (w / 2.0).cosh()
}

/// Closed-form length of a figure-eight class:
/// 2·arccosh(2·cosh(u/2)·cosh(v/2) + cosh(w/2)) with (u,v) its two cuffs.
pub fn fig8_length(c: PantsCuffs, which: Fig8) -> f64 {
    2.0 * fig8_cosh_half(c, which).acosh()
}

/// Analytic partial derivative of `fig8_length` in one cuff direction.
pub fn fig8_length_derivative(c: PantsCuffs, which: Fig8, axis: CuffAxis) -> f64 {
    let u = fig8_cosh_half(c, which);
    let denom = (u * u - 1.0).sqrt();
    let half_sinh = |t: f64| (t / 2.0).sinh();
    let half_cosh = |t: f64| (t / 2.0).cosh();
    // d/dt of each term contributing to u, times 2/denom.
    let du = match (which, axis) {
        (Fig8::XY, CuffAxis::X) => half_sinh(c.x) * half_cosh(c.y),
        (Fig8::XY, CuffAxis::Y) => half_cosh(c.x) * half_sinh(c.y),
        (Fig8::XY, CuffAxis::Z) => 0.5 * half_sinh(c.z),
        (Fig8::YZ, CuffAxis::Y) => half_sinh(c.y) * half_cosh(c.z),
        (Fig8::YZ, CuffAxis::Z) => half_cosh(c.y) * half_sinh(c.z),
        (Fig8::YZ, CuffAxis::X) => 0.5 * half_sinh(c.x),
        (Fig8::XZ, CuffAxis::X) => half_sinh(c.x) * half_cosh(c.z),
        (Fig8::XZ, CuffAxis::Z) => half_cosh(c.x) * half_sinh(c.z),
        (Fig8::XZ, CuffAxis::Y) => 0.5 * half_sinh(c.y),
    };
    2.0 * du / denom
}

/// Interior class selector: one of the figure-eight classes or a general
/// non-boundary word over the pants generators a, b.
#[derive(Debug, Clone)]
pub enum InteriorClass {
    Fig8(Fig8),
    Word(Word),
}

/// True when the cyclic class of `w` is a power of a boundary generator
/// a, b or of the third boundary (ab)⁻¹.
fn is_boundary_power(sig: SurfaceSig, w: &Word) -> Result<bool> {
    let canon = canonical_class(sig, w)?;
    let n = canon.len();
    // Powers of a single generator.
    if canon.0.iter().all(|&l| l == canon.0[0]) {
        return Ok(true);
    }
    // Powers of the ab class: canonical form of (ab)^k.
    if n % 2 == 0 {
        let k = n / 2;
        let ab_pow = Word([1i8, 2].repeat(k));
        if canonical_class(sig, &ab_pow)? == canon {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Length of an interior class on the pants with cuffs `c`.
///
/// Figure-eight classes use the closed form; general words are evaluated
/// through the boundary-trace pants pair. Boundary powers are rejected.
pub fn pants_interior_length(c: PantsCuffs, class: &InteriorClass) -> Result<f64> {
    match class {
        InteriorClass::Fig8(f) => Ok(fig8_length(c, *f)),
        InteriorClass::Word(w) => {
            let sig = SurfaceSig::new(0, 3).unwrap();
            let red = cyclic_reduce(sig, w)?;
            if is_boundary_power(sig, &red)? {
                return Err(Error::BoundaryClass {
                    word: format_word(&red),
                });
            }
            let (ma, mb) = pants_pair(c);
            let mut m = Mat2::IDENTITY;
            for &l in &red.0 {
                let g = match l {
                    1 => ma,
                    -1 => ma.inverse(),
                    2 => mb,
                    -2 => mb.inverse(),
                    _ => unreachable!("pants words use two generators"),
                };
                m = m.mul(&g);
            }
            let t = m.trace().abs();
            if t <= 2.0 + crate::hyperbolic::mat2::HYPERBOLIC_MARGIN {
                return Err(Error::NotHyperbolic {
                    word: format_word(&red),
                    abs_trace: t,
                });
            }
            Ok(2.0 * (t / 2.0).acosh())
        }
    }
}

/// Finite-difference stretch of an interior class along one cuff axis:
/// central difference when both offsets are valid cuffs, forward
/// difference at the 0 boundary, with Richardson extrapolation when the
/// h and h/2 estimates disagree.
pub fn stretch_derivative(
    c: PantsCuffs,
    class: &InteriorClass,
    axis: CuffAxis,
    h: f64,
) -> Result<f64> {
    let offset = |c: PantsCuffs, delta: f64| -> PantsCuffs {
        match axis {
            CuffAxis::X => PantsCuffs { x: c.x + delta, ..c },
            CuffAxis::Y => PantsCuffs { y: c.y + delta, ..c },
            CuffAxis::Z => PantsCuffs { z: c.z + delta, ..c },
        }
    };
    let axis_value = match axis {
        CuffAxis::X => c.x,
        CuffAxis::Y => c.y,
        CuffAxis::Z => c.z,
    };
    let diff = |h: f64| -> Result<f64> {
        if axis_value - h >= 0.0 {
            let hi = pants_interior_length(offset(c, h), class)?;
            let lo = pants_interior_length(offset(c, -h), class)?;
            Ok((hi - lo) / (2.0 * h))
        } else {
            let hi = pants_interior_length(offset(c, h), class)?;
            let base = pants_interior_length(c, class)?;
            Ok((hi - base) / h)
        }
    };
    let d1 = diff(h)?;
    let d2 = diff(h / 2.0)?;
    let scale = d1.abs().max(d2.abs()).max(1e-300);
    if (d1 - d2).abs() / scale > FD_RICHARDSON_REL {
        Ok((4.0 * d2 - d1) / 3.0)
    } else {
        Ok(d2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::word::parse_word;

    fn assert_close(x: f64, y: f64, tol: f64) {
        assert!((x - y).abs() <= tol, "{x} vs {y}");
    }

    #[test]
    fn pants_pair_traces() {
        let c = PantsCuffs::new(1.0, 2.0, 3.0).unwrap();
        let (a, b) = pants_pair(c);
        assert_close(a.trace(), -2.0 * (0.5f64).cosh(), 1e-12);
        assert_close(b.trace(), -2.0 * (1.0f64).cosh(), 1e-12);
        assert_close(a.mul(&b).trace(), -2.0 * (1.5f64).cosh(), 1e-12);
        assert_close(a.det(), 1.0, 1e-12);
        assert_close(b.det(), 1.0, 1e-12);
    }

    #[test]
    fn cuff_normalized_pair_matches_traces_and_product() {
        let c = PantsCuffs::new(1.3, 0.0, 2.1).unwrap();
        let (a, b) = pants_pair_cuff_normalized(c).unwrap();
        assert_close(a.trace(), -2.0 * (1.3f64 / 2.0).cosh(), 1e-10);
        assert_close(b.trace(), -2.0, 1e-10);
        let d = a.mul(&b);
        let expect = Mat2::translation(2.1).neg();
        assert!(d.dist(&expect) < 1e-10);
    }

    #[test]
    fn fig8_closed_form_at_cusps() {
        let c = PantsCuffs::new(0.0, 0.0, 0.0).unwrap();
        assert_close(fig8_length(c, Fig8::XY), 2.0 * 3.0f64.acosh(), 1e-12);
    }

    #[test]
    fn fig8_formula_symmetric_in_its_two_cuffs() {
        let c = PantsCuffs::new(1.0, 2.5, 0.7).unwrap();
        let swapped = PantsCuffs::new(2.5, 1.0, 0.7).unwrap();
        assert_close(
            fig8_length(c, Fig8::XY),
            fig8_length(swapped, Fig8::XY),
            1e-12,
        );
    }

    #[test]
    fn fig8_value_at_two_two_two() {
        let c = PantsCuffs::new(2.0, 2.0, 2.0).unwrap();
        let u = 2.0 * 1.0f64.cosh() * 1.0f64.cosh() + 1.0f64.cosh();
        assert_close(fig8_length(c, Fig8::XY), 2.0 * u.acosh(), 1e-12);
    }

    #[test]
    fn word_route_agrees_with_closed_form() {
        let sig = SurfaceSig::new(0, 3).unwrap();
        let cases = [
            ("aB", Fig8::XY),
            ("abb", Fig8::YZ),
            ("aab", Fig8::XZ),
        ];
        for cuffs in [
            PantsCuffs::new(0.0, 0.0, 0.0).unwrap(),
            PantsCuffs::new(1.0, 2.0, 3.0).unwrap(),
            PantsCuffs::new(0.3, 0.0, 4.0).unwrap(),
        ] {
            for (word_txt, which) in &cases {
                let word = parse_word(sig, word_txt).unwrap();
                let via_word =
                    pants_interior_length(cuffs, &InteriorClass::Word(word)).unwrap();
                let closed = fig8_length(cuffs, *which);
                assert_close(via_word, closed, 1e-8);
            }
        }
    }

    #[test]
    fn boundary_powers_rejected() {
        let sig = SurfaceSig::new(0, 3).unwrap();
        let c = PantsCuffs::new(1.0, 1.0, 1.0).unwrap();
        for txt in ["a", "bb", "ab", "abab", "BA"] {
            let w = parse_word(sig, txt).unwrap();
            match pants_interior_length(c, &InteriorClass::Word(w)) {
                Err(Error::BoundaryClass { .. }) => {}
                other => panic!("expected BOUNDARY_CLASS for {txt}, got {other:?}"),
            }
        }
    }

    #[test]
    fn stretch_positive_and_matches_analytic() {
        let c = PantsCuffs::new(1.0, 1.0, 1.0).unwrap();
        for which in [Fig8::XY, Fig8::YZ, Fig8::XZ] {
            for axis in [CuffAxis::X, CuffAxis::Y, CuffAxis::Z] {
                let fd =
                    stretch_derivative(c, &InteriorClass::Fig8(which), axis, FD_STEP).unwrap();
                let an = fig8_length_derivative(c, which, axis);
                assert!(fd > 0.0);
                assert!(
                    (fd - an).abs() / an.abs() < 1e-5,
                    "axis derivative mismatch: {fd} vs {an}"
                );
            }
        }
    }

    #[test]
    fn one_sided_difference_at_cusp_is_positive() {
        let c = PantsCuffs::new(0.0, 1.0, 1.0).unwrap();
        let fd = stretch_derivative(c, &InteriorClass::Fig8(Fig8::XY), CuffAxis::X, FD_STEP)
            .unwrap();
        assert!(fd > 0.0);
        // Z enters without the product factor: smaller but still positive.
        let fz = stretch_derivative(
            PantsCuffs::new(1.0, 1.0, 0.0).unwrap(),
            &InteriorClass::Fig8(Fig8::XY),
            CuffAxis::Z,
            FD_STEP,
        )
        .unwrap();
        assert!(fz > 0.0);
    }

    #[test]
    fn xz_axis_ordering_at_unit_cuffs() {
        let c = PantsCuffs::new(1.0, 1.0, 1.0).unwrap();
        let dx = fig8_length_derivative(c, Fig8::XY, CuffAxis::X);
        let dz = fig8_length_derivative(c, Fig8::XY, CuffAxis::Z);
        assert!(dz > 0.0 && dz < dx);
    }
}
