//! Slope coordinates for simple closed curves on the once-punctured torus.
//!
//! A primitive pair (p, q) labels the curve with homology class p·a + q·b.
//! Canonical sign: q > 0, or q = 0 and p = 1. Slopes convert to and from
//! curve words through the mapping-class action, which keeps the word
//! simple by construction.

use crate::error::{Error, Result};
use crate::topology::mapping_class::{
    apply_mapping_class, apply_move_to_slope, move_by_name, MappingClassWord,
};
use crate::topology::word::{format_word, homology_class, parse_word, Word};
use crate::topology::SurfaceSig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slope {
    pub p: i64,
    pub q: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Slope {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p == 0 && q == 0 {
            return Err(Error::Parse("slope 0/0 is not a curve".into()));
        }
        if gcd(p, q) != 1 {
            return Err(Error::Parse(format!("slope {p}/{q} is not primitive")));
        }
        Ok(Slope::canonical(p, q))
    }

    /// Normalize sign: q > 0, or q = 0 and p = 1.
    pub fn canonical(p: i64, q: i64) -> Self {
        if q < 0 || (q == 0 && p < 0) {
            Slope { p: -p, q: -q }
        } else {
            Slope { p, q }
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split('/').collect();
        if parts.len() != 2 {
            return Err(Error::Parse(format!("slope `{s}` is not of the form p/q")));
        }
        let p = parts[0]
            .trim()
            .parse::<i64>()
            .map_err(|_| Error::Parse(format!("bad numerator `{}` in slope `{s}`", parts[0])))?;
        let q = parts[1]
            .trim()
            .parse::<i64>()
            .map_err(|_| Error::Parse(format!("bad denominator `{}` in slope `{s}`", parts[1])))?;
        Slope::new(p, q)
    }
}

impl std::fmt::Display for Slope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// Geometric intersection number of two slopes: |p₁q₂ − q₁p₂|.
pub fn slope_intersection(s1: Slope, s2: Slope) -> u64 {
    (s1.p * s2.q - s1.q * s2.p).unsigned_abs()
}

/// A move sequence carrying (p, q) to (±1, 0), recorded in application
/// order (first entry acts first).
pub fn route_to_base(sig: SurfaceSig, s: Slope) -> Result<Vec<usize>> {
    let t = move_by_name(sig, "T")?;
    let t_inv = move_by_name(sig, "T'")?;
    let u = move_by_name(sig, "U")?;
    let u_inv = move_by_name(sig, "U'")?;
    let (mut p, mut q) = (s.p, s.q);
    let mut route = Vec::new();
    let push = |route: &mut Vec<usize>, mv: usize, p: &mut i64, q: &mut i64| {
        let (np, nq) = apply_move_to_slope(sig, mv, (*p, *q));
        *p = np;
        *q = nq;
        route.push(mv);
    };
    if p == 0 {
        // (0, ±1): two steps to (±1, 0).
        push(&mut route, u, &mut p, &mut q);
        push(&mut route, t_inv, &mut p, &mut q);
    }
    while q != 0 {
        debug_assert!(p != 0);
        if p.abs() > q.abs() {
            // Shrink p by ±q.
            let mv = if (p > 0) == (q > 0) { u_inv } else { u };
            push(&mut route, mv, &mut p, &mut q);
        } else {
            // Shrink q by ±p (also handles |p| == |q| == 1).
            let mv = if (p > 0) == (q > 0) { t_inv } else { t };
            push(&mut route, mv, &mut p, &mut q);
        }
    }
    debug_assert!(p.abs() == 1 && q == 0);
    Ok(route)
}

/// Parse a comma-separated multicurve whose tokens are either all `p/q`
/// slopes (once-punctured torus only) or all generator words. An optional
/// `max:` prefix switches the aggregator from SUM to MAX. Mixing the two
/// token kinds in one multicurve is rejected.
pub fn parse_multicurve_spec(sig: SurfaceSig, input: &str) -> Result<crate::topology::Multicurve> {
    use crate::topology::{Aggregator, Multicurve};
    let (agg, body) = match input.trim().strip_prefix("max:") {
        Some(rest) => (Aggregator::Max, rest),
        None => (Aggregator::Sum, input.trim()),
    };
    let tokens: Vec<&str> = body.split(',').map(str::trim).collect();
    let slope_tokens = tokens.iter().filter(|t| t.contains('/')).count();
    if slope_tokens == 0 {
        return Ok(Multicurve::parse(sig, body)?.with_aggregator(agg));
    }
    if slope_tokens != tokens.len() {
        return Err(Error::Parse(format!(
            "multicurve `{input}` mixes slope and word tokens"
        )));
    }
    if (sig.genus, sig.cusps) != (1, 1) {
        return Err(Error::Parse(format!(
            "slope token `{}` requires surface 1,1; got ({},{})",
            tokens[0], sig.genus, sig.cusps
        )));
    }
    let words = tokens
        .iter()
        .map(|t| word_of_slope(sig, Slope::parse(t)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(Multicurve::new(sig, words)?.with_aggregator(agg))
}

/// The curve word of a slope: the image of the generator word `a` under the
/// inverse of the reduction route. Simple by construction, with homology
/// class ±(p, q), normalized to match the canonical slope sign.
pub fn word_of_slope(sig: SurfaceSig, s: Slope) -> Result<Word> {
    if (sig.genus, sig.cusps) != (1, 1) {
        return Err(Error::WrongSurface {
            op: "word_of_slope",
            genus: sig.genus,
            cusps: sig.cusps,
        });
    }
    let table = crate::topology::mapping_class::move_table(sig);
    let route = route_to_base(sig, s)?;
    // Inverse map: invert each move, keep application order reversed twice
    // (see MappingClassWord::apply convention), which lands on the same
    // left-to-right listing as the route itself.
    let inv_moves: Vec<usize> = route.iter().map(|&m| table[m].inverse).collect();
    let mcw = MappingClassWord {
        sig,
        moves: inv_moves,
    };
    let base = parse_word(sig, "a")?;
    let word = apply_mapping_class(&mcw, &base)?;
    let h = homology_class(sig, &word);
    let canon = Slope::canonical(h[0], h[1]);
    debug_assert_eq!(canon, s, "slope word homology mismatch");
    if (h[0], h[1]) == (s.p, s.q) {
        Ok(word)
    } else {
        Ok(word.inverse())
    }
}

/// The slope of a simple curve word. `simplicity` decides certified
/// self-intersection zero; non-simple or non-primitive words are rejected.
pub fn slope_of_word(
    sig: SurfaceSig,
    w: &Word,
    simplicity: impl Fn(&Word) -> Result<usize>,
) -> Result<Slope> {
    if (sig.genus, sig.cusps) != (1, 1) {
        return Err(Error::WrongSurface {
            op: "slope_of_word",
            genus: sig.genus,
            cusps: sig.cusps,
        });
    }
    let h = homology_class(sig, w);
    if gcd(h[0], h[1]) != 1 {
        return Err(Error::NotSimple {
            word: format_word(w),
            count: usize::MAX,
        });
    }
    let self_count = simplicity(w)?;
    if self_count > 0 {
        return Err(Error::NotSimple {
            word: format_word(w),
            count: self_count,
        });
    }
    Ok(Slope::canonical(h[0], h[1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::word::canonical_class;

    fn sig() -> SurfaceSig {
        SurfaceSig::new(1, 1).unwrap()
    }

    #[test]
    fn canonical_signs() {
        assert_eq!(Slope::new(1, 0).unwrap(), Slope { p: 1, q: 0 });
        assert_eq!(Slope::new(-1, 0).unwrap(), Slope { p: 1, q: 0 });
        assert_eq!(Slope::new(2, -3).unwrap(), Slope { p: -2, q: 3 });
        assert!(Slope::new(2, 4).is_err());
        assert!(Slope::new(0, 0).is_err());
    }

    #[test]
    fn intersection_formula() {
        let s10 = Slope::new(1, 0).unwrap();
        let s01 = Slope::new(0, 1).unwrap();
        let s23 = Slope::new(2, 3).unwrap();
        assert_eq!(slope_intersection(s10, s01), 1);
        assert_eq!(slope_intersection(s10, s10), 0);
        assert_eq!(slope_intersection(s23, s10), 3);
        assert_eq!(slope_intersection(s23, s01), 2);
        assert_eq!(slope_intersection(s23, s23), 0);
    }

    #[test]
    fn generator_slopes() {
        assert_eq!(
            word_of_slope(sig(), Slope::new(1, 0).unwrap()).unwrap(),
            parse_word(sig(), "a").unwrap()
        );
        let w01 = word_of_slope(sig(), Slope::new(0, 1).unwrap()).unwrap();
        assert_eq!(
            canonical_class(sig(), &w01).unwrap(),
            parse_word(sig(), "b").unwrap()
        );
        let w11 = word_of_slope(sig(), Slope::new(1, 1).unwrap()).unwrap();
        assert_eq!(
            canonical_class(sig(), &w11).unwrap(),
            canonical_class(sig(), &parse_word(sig(), "ab").unwrap()).unwrap()
        );
    }

    #[test]
    fn homology_matches_slope_up_to_eight() {
        for p in -8i64..=8 {
            for q in -8i64..=8 {
                if (p, q) == (0, 0) || gcd(p, q) != 1 {
                    continue;
                }
                let s = Slope::canonical(p, q);
                let w = word_of_slope(sig(), s).unwrap();
                let h = homology_class(sig(), &w);
                assert_eq!((h[0], h[1]), (s.p, s.q), "slope {s}");
            }
        }
    }

    #[test]
    fn route_reduces_to_base() {
        for (p, q) in [(5i64, 7i64), (8, 3), (-4, 9), (0, 1), (1, 0), (3, -8)] {
            if gcd(p, q) != 1 {
                continue;
            }
            let s = Slope::canonical(p, q);
            let route = route_to_base(sig(), s).unwrap();
            let mut cur = (s.p, s.q);
            for &mv in &route {
                cur = apply_move_to_slope(sig(), mv, cur);
            }
            assert_eq!((cur.0.abs(), cur.1), (1, 0), "route fails for {s}");
        }
    }

    #[test]
    fn five_seven_route_length() {
        // Continued-fraction route for (5,7): five single-generator moves.
        let route = route_to_base(sig(), Slope::new(5, 7).unwrap()).unwrap();
        assert_eq!(route.len(), 5);
    }

    #[test]
    fn nonprimitive_word_rejected() {
        let w = parse_word(sig(), "aa").unwrap();
        let r = slope_of_word(sig(), &w, |_| Ok(0));
        assert!(matches!(r, Err(Error::NotSimple { .. })));
    }

    #[test]
    fn exponent_sum_slope_of_simple_word() {
        let w = parse_word(sig(), "aab").unwrap();
        let s = slope_of_word(sig(), &w, |_| Ok(0)).unwrap();
        assert_eq!(s, Slope { p: 2, q: 1 });
    }
}
