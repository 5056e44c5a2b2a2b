//! Unit-determinant 2×2 real matrices acting on the upper half-plane.
//!
//! Conventions: row-major `[[a, b], [c, d]]`; the Möbius action is
//! z ↦ (az + b)/(cz + d). Boundary points of the half-plane are kept
//! projectively as pairs (v1, v2) meaning v1/v2, with (1, 0) = ∞, and are
//! mapped to circle angles by θ = 2·atan2(v1, v2), so ∞ ↦ ±π and the real
//! line wraps once around the circle.

use crate::error::{Error, Result};

/// Determinant drift threshold above which a product is renormalized.
pub const DET_DRIFT: f64 = 1e-12;

/// Hard determinant tolerance: beyond this a matrix is considered corrupt.
pub const DET_TOL: f64 = 1e-9;

/// Margin above |trace| = 2 required to treat an element as hyperbolic.
pub const HYPERBOLIC_MARGIN: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

/// A boundary point of the half-plane in projective coordinates.
///
/// Normalized so that v2 > 0, or v2 == 0 and v1 > 0 (the point ∞).
#[derive(Debug, Clone, Copy)]
pub struct BoundaryPoint {
    pub v1: f64,
    pub v2: f64,
}

impl BoundaryPoint {
    pub fn new(v1: f64, v2: f64) -> Self {
        let (v1, v2) = if v2 < 0.0 || (v2 == 0.0 && v1 < 0.0) {
            (-v1, -v2)
        } else {
            (v1, v2)
        };
        let n = v1.hypot(v2);
        BoundaryPoint {
            v1: v1 / n,
            v2: v2 / n,
        }
    }

    /// Angle on the boundary circle in (−π, π]; ∞ maps to π.
    pub fn angle(&self) -> f64 {
        let t = 2.0 * self.v1.atan2(self.v2);
        // v2 ≥ 0 puts atan2 in [-π/2, π/2], so t ∈ [-π, π]; fold -π to π.
        if t <= -std::f64::consts::PI {
            std::f64::consts::PI
        } else {
            t
        }
    }
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
    };

    /// Quarter-turn rotation about i: z ↦ −1/z composed with sign flips;
    /// swaps the diagonal under conjugation.
    pub const ROT: Mat2 = Mat2 {
        a: 0.0,
        b: 1.0,
        c: -1.0,
        d: 0.0,
    };

    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2 { a, b, c, d }
    }

    /// diag(e^{t/2}, e^{−t/2}): translation by t along the imaginary axis.
    pub fn translation(t: f64) -> Self {
        let e = (t / 2.0).exp();
        Mat2::new(e, 0.0, 0.0, 1.0 / e)
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn neg(&self) -> Self {
        Mat2::new(-self.a, -self.b, -self.c, -self.d)
    }

    pub fn inverse(&self) -> Self {
        // Unit determinant assumed (maintained by renormalization).
        Mat2::new(self.d, -self.b, -self.c, self.a)
    }

    /// Conjugation by diag(1, −1): the reflection z ↦ −z̄ applied on both
    /// sides. Mirrors a configuration across the imaginary axis.
    pub fn mirror(&self) -> Self {
        Mat2::new(self.a, -self.b, -self.c, self.d)
    }

    /// Raw product. Deliberately does not rescale to unit determinant:
    /// when a product collapses (e.g. a commutator of a pinched curve
    /// with its dual), the computed determinant carries entry-noise
    /// ~ε·‖terms‖² that dwarfs the true drift, and dividing by it would
    /// corrupt otherwise accurate entries. Factors are kept unit-det at
    /// construction instead; drift compounds only ~ε per factor.
    pub fn mul(&self, o: &Mat2) -> Self {
        Mat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }

    /// Divide by sqrt(det) when drift exceeds `DET_DRIFT`. Only for
    /// freshly constructed matrices whose determinant is trustworthy.
    pub fn renormalized(&self) -> Self {
        let det = self.det();
        if (det - 1.0).abs() > DET_DRIFT && det > 0.0 {
            let s = det.sqrt();
            Mat2::new(self.a / s, self.b / s, self.c / s, self.d / s)
        } else {
            *self
        }
    }

    pub fn conj(&self, by: &Mat2) -> Self {
        by.mul(self).mul(&by.inverse())
    }

    /// Entrywise max-norm distance to another matrix.
    pub fn dist(&self, o: &Mat2) -> f64 {
        (self.a - o.a)
            .abs()
            .max((self.b - o.b).abs())
            .max((self.c - o.c).abs())
            .max((self.d - o.d).abs())
    }

    /// Max-norm of the entries.
    pub fn norm(&self) -> f64 {
        self.a.abs().max(self.b.abs()).max(self.c.abs()).max(self.d.abs())
    }

    /// Distance to ±other, whichever is closer (projective comparison).
    pub fn proj_dist(&self, o: &Mat2) -> f64 {
        self.dist(o).min(self.dist(&o.neg()))
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.trace().abs() > 2.0 + HYPERBOLIC_MARGIN
    }

    /// Translation length 2·arccosh(|tr|/2); error if not hyperbolic.
    pub fn translation_length(&self) -> Result<f64> {
        let t = self.trace().abs();
        if t <= 2.0 + HYPERBOLIC_MARGIN {
            return Err(Error::NotHyperbolic {
                word: String::new(),
                abs_trace: t,
            });
        }
        Ok(2.0 * (t / 2.0).acosh())
    }

    /// Fixed points on the boundary: (repelling, attracting).
    ///
    /// Eigenvectors are picked per eigenvalue from whichever of the two row
    /// formulas is better conditioned, so near-diagonal and near-triangular
    /// matrices are handled without special cases.
    pub fn axis_endpoints(&self) -> Result<(BoundaryPoint, BoundaryPoint)> {
        let tr = self.trace();
        if tr.abs() <= 2.0 + HYPERBOLIC_MARGIN {
            return Err(Error::NotHyperbolic {
                word: String::new(),
                abs_trace: tr.abs(),
            });
        }
        let s = tr.signum();
        // (tr−2)(tr+2) avoids cancellation near |tr| = 2.
        let disc = ((tr.abs() - 2.0) * (tr.abs() + 2.0)).sqrt();
        let lam_plus = s * (tr.abs() + disc) / 2.0; // |λ| > 1: attracting
        let lam_minus = s * 2.0 / (tr.abs() + disc); // |λ| < 1: repelling
        let eigvec = |lam: f64| -> BoundaryPoint {
            let vb = (self.b, lam - self.a);
            let vc = (lam - self.d, self.c);
            if vb.0.hypot(vb.1) >= vc.0.hypot(vc.1) {
                BoundaryPoint::new(vb.0, vb.1)
            } else {
                BoundaryPoint::new(vc.0, vc.1)
            }
        };
        Ok((eigvec(lam_minus), eigvec(lam_plus)))
    }

    /// Unit-determinant map sending the axis of `self` to the imaginary
    /// axis (repelling endpoint to 0, attracting to ∞) and the axis summit
    /// to i. For vertical axes the point at height 1 plays the summit role.
    pub fn standardizer(&self) -> Result<Mat2> {
        let (rep, att) = self.axis_endpoints()?;
        let st = if att.v2.abs() <= 1e-14 * att.v1.abs() {
            // attracting endpoint at ∞, repelling at x₋: z ↦ z − x₋
            let xm = rep.v1 / rep.v2;
            Mat2::new(1.0, -xm, 0.0, 1.0)
        } else if rep.v2.abs() <= 1e-14 * rep.v1.abs() {
            // repelling at ∞, attracting at x₊: z ↦ −1/(z − x₊)
            let xp = att.v1 / att.v2;
            Mat2::new(0.0, -1.0, 1.0, -xp)
        } else {
            let xm = rep.v1 / rep.v2;
            let xp = att.v1 / att.v2;
            // (z − x₋)/(±(z − x₊)) with the sign that preserves orientation;
            // both choices send the axis summit to i exactly.
            let raw = if xp > xm {
                Mat2::new(1.0, -xm, -1.0, xp)
            } else {
                Mat2::new(1.0, -xm, 1.0, -xp)
            };
            let s = raw.det().sqrt();
            Mat2::new(raw.a / s, raw.b / s, raw.c / s, raw.d / s)
        };
        Ok(st)
    }

    /// Translation by distance `t` along the oriented axis of `self`.
    pub fn axis_translation(&self, t: f64) -> Result<Mat2> {
        let st = self.standardizer()?;
        Ok(st.inverse().mul(&Mat2::translation(t)).mul(&st))
    }

    /// A matrix W with W·target·W⁻¹ = ±source_inverse-style alignment:
    /// maps the oriented axis of `other` onto the oriented axis of `self`,
    /// summit to summit. Then W·other·W⁻¹ agrees with `self` in PSL(2,R)
    /// whenever both translate by the same length.
    pub fn axis_alignment(&self, other: &Mat2) -> Result<Mat2> {
        let st_self = self.standardizer()?;
        let st_other = other.standardizer()?;
        Ok(st_self.inverse().mul(&st_other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(x: f64, y: f64, tol: f64) {
        assert!((x - y).abs() <= tol, "{x} vs {y}");
    }

    #[test]
    fn translation_matrix_acts_diagonally() {
        let m = Mat2::translation(3.0);
        assert_close(m.trace(), 2.0 * (1.5f64).cosh(), 1e-12);
        assert_close(m.translation_length().unwrap(), 3.0, 1e-12);
    }

    #[test]
    fn inverse_and_det() {
        let m = Mat2::new(2.0, 1.0, 3.0, 2.0);
        assert_close(m.det(), 1.0, 1e-12);
        let p = m.mul(&m.inverse());
        assert!(p.dist(&Mat2::IDENTITY) < 1e-12);
    }

    #[test]
    fn endpoints_of_diagonal_matrix() {
        let m = Mat2::translation(2.0);
        let (rep, att) = m.axis_endpoints().unwrap();
        // repelling 0, attracting ∞
        assert!(rep.v1.abs() < 1e-12 && rep.v2 > 0.9);
        assert!(att.v2.abs() < 1e-12 && att.v1 > 0.9);
        assert_close(rep.angle(), 0.0, 1e-12);
        assert_close(att.angle(), std::f64::consts::PI, 1e-12);
    }

    #[test]
    fn standardizer_diagonalizes() {
        // A hyperbolic matrix with a generic axis.
        let g = Mat2::new(2.0, 0.3, 0.5, (1.0 + 0.15) / 2.0);
        let m = Mat2::translation(1.7).conj(&g);
        let st = m.standardizer().unwrap();
        let d = m.conj(&st);
        let e = Mat2::translation(1.7);
        assert!(
            d.proj_dist(&e) < 1e-9,
            "standardized form {d:?} vs {e:?}"
        );
    }

    #[test]
    fn axis_translation_full_length_recovers_matrix() {
        let g = Mat2::new(1.0, 2.0, 0.5, 2.0);
        let m = Mat2::translation(0.9).conj(&g);
        let t = m.axis_translation(0.9).unwrap();
        assert!(t.proj_dist(&m) < 1e-9);
    }

    #[test]
    fn axis_alignment_conjugates_between_equal_length_elements() {
        let g = Mat2::new(1.0, 2.0, 0.5, 2.0);
        let h = Mat2::new(3.0, 1.0, 1.0, 2.0 / 3.0);
        let m = Mat2::translation(1.3).conj(&g);
        let n = Mat2::translation(1.3).conj(&h);
        let w = m.axis_alignment(&n).unwrap();
        assert!(n.conj(&w).proj_dist(&m) < 1e-9);
    }

    #[test]
    fn mirror_preserves_trace_and_det() {
        let m = Mat2::new(1.0, 2.0, 0.5, 2.0);
        let s = m.mirror();
        assert_close(s.trace(), m.trace(), 0.0);
        assert_close(s.det(), 1.0, 1e-12);
    }

    #[test]
    fn boundary_angles_wrap_once() {
        let pts = [-5.0, -1.0, -0.2, 0.0, 0.3, 1.0, 7.0];
        let mut prev = BoundaryPoint::new(pts[0], 1.0).angle();
        for x in &pts[1..] {
            let a = BoundaryPoint::new(*x, 1.0).angle();
            assert!(a > prev, "angles must be increasing along R");
            prev = a;
        }
        assert!(BoundaryPoint::new(1.0, 0.0).angle() > prev);
    }
}
