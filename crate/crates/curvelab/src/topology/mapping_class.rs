//! Mapping-class generator tables and their action on curve words.
//!
//! Each supported surface carries a fixed finite list of generator moves
//! (Dehn twists or half-twists together with their inverses), given as
//! substitutions on the fundamental-group generators. On the once-punctured
//! torus every move also acts on slopes by an integer matrix, and the two
//! actions agree on homology.

use crate::error::{Error, Result};
use crate::topology::word::{cyclic_reduce, parse_word, rank, Word};
use crate::topology::SurfaceSig;

/// A single generator move: name, substitution images per generator, and
/// the index of its inverse move in the surface's table.
#[derive(Debug, Clone)]
pub struct Move {
    pub name: &'static str,
    /// images[k] is the image word of generator k+1.
    pub images: Vec<Vec<i8>>,
    pub inverse: usize,
    /// Slope matrix [[m00, m01], [m10, m11]] acting (p,q) ↦ (m00·p + m01·q,
    /// m10·p + m11·q); only present on the once-punctured torus.
    pub slope_matrix: Option<[[i64; 2]; 2]>,
}

/// A word in the generator moves of one surface's table.
///
/// `apply` composes right-to-left: the last move in `moves` is applied to
/// the curve first, so concatenation of sequences matches composition of
/// the induced maps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MappingClassWord {
    pub sig: SurfaceSig,
    pub moves: Vec<usize>,
}

impl MappingClassWord {
    pub fn identity(sig: SurfaceSig) -> Self {
        MappingClassWord { sig, moves: vec![] }
    }

    pub fn move_names(&self) -> Vec<&'static str> {
        let table = move_table(self.sig);
        self.moves.iter().map(|&i| table[i].name).collect()
    }
}

/// The generator-move table for a surface.
pub fn move_table(sig: SurfaceSig) -> &'static [Move] {
    use std::sync::OnceLock;
    static T03: OnceLock<Vec<Move>> = OnceLock::new();
    static T11: OnceLock<Vec<Move>> = OnceLock::new();
    static T04: OnceLock<Vec<Move>> = OnceLock::new();
    static T20: OnceLock<Vec<Move>> = OnceLock::new();

    fn build(sig: SurfaceSig, spec: &[(&'static str, &[(usize, &str)], usize)]) -> Vec<Move> {
        let r = rank(sig);
        spec.iter()
            .map(|(name, subs, inverse)| {
                let mut images: Vec<Vec<i8>> =
                    (1..=r).map(|g| vec![g as i8]).collect();
                for (g, s) in subs.iter() {
                    images[*g - 1] = parse_word(sig, s).expect("move table word").0;
                }
                Move {
                    name,
                    images,
                    inverse: *inverse,
                    slope_matrix: None,
                }
            })
            .collect()
    }

    match (sig.genus, sig.cusps) {
        (0, 3) => T03.get_or_init(|| {
            let sig = SurfaceSig::new(0, 3).unwrap();
            // Half-twists on the three punctures a, b, (ab)⁻¹.
            build(
                sig,
                &[
                    ("s1", &[(1, "abA"), (2, "a")], 1),
                    ("s1'", &[(1, "b"), (2, "Bab")], 0),
                    ("s2", &[(2, "AB")], 3),
                    ("s2'", &[(2, "BA")], 2),
                ],
            )
        }),
        (1, 1) => T11.get_or_init(|| {
            let sig = SurfaceSig::new(1, 1).unwrap();
            let mut table = build(
                sig,
                &[
                    ("T", &[(1, "ab")], 1),
                    ("T'", &[(1, "aB")], 0),
                    ("U", &[(2, "ba")], 3),
                    ("U'", &[(2, "bA")], 2),
                ],
            );
            table[0].slope_matrix = Some([[1, 0], [1, 1]]);
            table[1].slope_matrix = Some([[1, 0], [-1, 1]]);
            table[2].slope_matrix = Some([[1, 1], [0, 1]]);
            table[3].slope_matrix = Some([[1, -1], [0, 1]]);
            table
        }),
        (0, 4) => T04.get_or_init(|| {
            let sig = SurfaceSig::new(0, 4).unwrap();
            // Half-twists on the four punctures a, b, c, (abc)⁻¹.
            build(
                sig,
                &[
                    ("s1", &[(1, "abA"), (2, "a")], 1),
                    ("s1'", &[(1, "b"), (2, "Bab")], 0),
                    ("s2", &[(2, "bcB"), (3, "b")], 3),
                    ("s2'", &[(2, "c"), (3, "Cbc")], 2),
                    ("s3", &[(3, "BAC")], 5),
                    ("s3'", &[(3, "CBA")], 4),
                ],
            )
        }),
        (2, 0) => T20.get_or_init(|| {
            let sig = SurfaceSig::CLOSED_GENUS2;
            // The five chain twists (and inverses) along the curves
            // a, b, ac, d, c in the classical generators a, b, c, d.
            build(
                sig,
                &[
                    ("t1", &[(2, "ba")], 1),
                    ("t1'", &[(2, "bA")], 0),
                    ("t2", &[(1, "ab")], 3),
                    ("t2'", &[(1, "aB")], 2),
                    (
                        "t3",
                        &[(1, "Cac"), (2, "CAcabac"), (3, "CAcac"), (4, "dac")],
                        5,
                    ),
                    (
                        "t3'",
                        &[(1, "acaCA"), (2, "acACbCA"), (3, "acA"), (4, "dCA")],
                        4,
                    ),
                    ("t4", &[(3, "cd")], 7),
                    ("t4'", &[(3, "cD")], 6),
                    ("t5", &[(4, "dc")], 9),
                    ("t5'", &[(4, "dC")], 8),
                ],
            )
        }),
        _ => unreachable!(),
    }
}

pub fn move_count(sig: SurfaceSig) -> usize {
    move_table(sig).len()
}

pub fn move_by_name(sig: SurfaceSig, name: &str) -> Result<usize> {
    move_table(sig)
        .iter()
        .position(|m| m.name == name)
        .ok_or_else(|| Error::Parse(format!("unknown move `{name}` on ({},{})", sig.genus, sig.cusps)))
}

/// Substitute one move through a freely reduced word (no cyclic reduction).
fn substitute(mv: &Move, w: &Word) -> Word {
    let mut out: Vec<i8> = Vec::with_capacity(w.0.len() * 2);
    for &l in &w.0 {
        let img = &mv.images[(l.unsigned_abs() - 1) as usize];
        if l > 0 {
            out.extend_from_slice(img);
        } else {
            out.extend(img.iter().rev().map(|&x| -x));
        }
    }
    Word(out).free_reduce()
}

/// Apply a move sequence to a curve word, returning the reduced image.
///
/// The rightmost move acts first; the empty sequence is the identity.
pub fn apply_mapping_class(mcw: &MappingClassWord, w: &Word) -> Result<Word> {
    let table = move_table(mcw.sig);
    let mut cur = w.clone();
    for &i in mcw.moves.iter().rev() {
        cur = substitute(&table[i], &cur);
    }
    cyclic_reduce(mcw.sig, &cur)
}

/// Apply a single move (by table index) and reduce.
pub fn apply_move(sig: SurfaceSig, move_idx: usize, w: &Word) -> Result<Word> {
    let table = move_table(sig);
    cyclic_reduce(sig, &substitute(&table[move_idx], w))
}

/// Apply a single move to a slope on the once-punctured torus.
pub fn apply_move_to_slope(sig: SurfaceSig, move_idx: usize, pq: (i64, i64)) -> (i64, i64) {
    let m = move_table(sig)[move_idx]
        .slope_matrix
        .expect("slope action only on (1,1)");
    (
        m[0][0] * pq.0 + m[0][1] * pq.1,
        m[1][0] * pq.0 + m[1][1] * pq.1,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::word::{canonical_class, enumerate_words, format_word, GENUS2_RELATOR};

    fn sig(g: u32, n: u32) -> SurfaceSig {
        SurfaceSig::new(g, n).unwrap()
    }

    fn w(s: SurfaceSig, t: &str) -> Word {
        parse_word(s, t).unwrap()
    }

    /// Free-group composition check: applying a move then its inverse is the
    /// identity on every generator, before any cyclic reduction.
    #[test]
    fn inverse_pairs_cancel_freely() {
        for s in [sig(0, 3), sig(1, 1), sig(0, 4), sig(2, 0)] {
            let table = move_table(s);
            for (i, mv) in table.iter().enumerate() {
                let inv = &table[mv.inverse];
                assert_eq!(table[mv.inverse].inverse, i, "inverse pairing broken");
                for g in 1..=rank(s) {
                    let gen = Word(vec![g as i8]);
                    let img = substitute(inv, &substitute(mv, &gen)).free_reduce();
                    assert_eq!(
                        img, gen,
                        "{}∘{} not identity on generator {g} of ({},{})",
                        mv.name, inv.name, s.genus, s.cusps
                    );
                }
            }
        }
    }

    /// Every genus-2 move must send the surface relator to a conjugate of
    /// itself (orientation-preserving automorphisms fix the relator class).
    #[test]
    fn genus2_moves_preserve_relator() {
        let s = SurfaceSig::CLOSED_GENUS2;
        let relator = Word(GENUS2_RELATOR.to_vec());
        let relator_canon = {
            // Compare as plain cyclic words in the free group: bypass the
            // relator shortening, which would erase the relator itself.
            let mut best: Option<Word> = None;
            for k in 0..8 {
                for cand in [relator.rotated(k), relator.inverse().rotated(k)] {
                    if best
                        .as_ref()
                        .is_none_or(|b| cand.cmp_keyed(b) == std::cmp::Ordering::Less)
                    {
                        best = Some(cand);
                    }
                }
            }
            best.unwrap()
        };
        for mv in move_table(s) {
            let img = substitute(mv, &relator);
            // Cyclically reduce in the free group only.
            let mut cur = img.free_reduce();
            while cur.0.len() >= 2 && cur.0[0] == -cur.0[cur.0.len() - 1] {
                cur = Word(cur.0[1..cur.0.len() - 1].to_vec()).free_reduce();
            }
            assert_eq!(cur.0.len(), 8, "move {} distorts relator length", mv.name);
            let mut best: Option<Word> = None;
            for k in 0..8 {
                for cand in [cur.rotated(k), cur.inverse().rotated(k)] {
                    if best
                        .as_ref()
                        .is_none_or(|b| cand.cmp_keyed(b) == std::cmp::Ordering::Less)
                    {
                        best = Some(cand);
                    }
                }
            }
            assert_eq!(
                best.unwrap(),
                relator_canon,
                "move {} does not preserve the relator class",
                mv.name
            );
        }
    }

    /// The twist curve of each genus-2 move is fixed by the move.
    #[test]
    fn genus2_twists_fix_their_curves() {
        let s = SurfaceSig::CLOSED_GENUS2;
        let fixed = [
            ("t1", "a"),
            ("t1'", "a"),
            ("t2", "b"),
            ("t2'", "b"),
            ("t3", "ac"),
            ("t3'", "ac"),
            ("t4", "d"),
            ("t4'", "d"),
            ("t5", "c"),
            ("t5'", "c"),
        ];
        for (name, curve) in fixed {
            let idx = move_by_name(s, name).unwrap();
            let img = apply_move(s, idx, &w(s, curve)).unwrap();
            assert_eq!(
                canonical_class(s, &img).unwrap(),
                canonical_class(s, &w(s, curve)).unwrap(),
                "{name} moves its own twist curve"
            );
        }
    }

    #[test]
    fn identity_sequence_is_identity() {
        let s = sig(1, 1);
        let mcw = MappingClassWord::identity(s);
        let word = w(s, "abaB");
        assert_eq!(apply_mapping_class(&mcw, &word).unwrap(), word);
    }

    #[test]
    fn slope_action_matches_example() {
        let s = sig(1, 1);
        let t = move_by_name(s, "T").unwrap();
        assert_eq!(apply_move_to_slope(s, t, (1, 0)), (1, 1));
    }

    /// Word action and slope-matrix action agree on homology.
    #[test]
    fn word_and_slope_actions_agree_on_homology() {
        use crate::topology::word::homology_class;
        let s = sig(1, 1);
        for (mi, _) in move_table(s).iter().enumerate() {
            for word_txt in ["a", "b", "ab", "aB", "aab", "abb"] {
                let word = w(s, word_txt);
                let h = homology_class(s, &word);
                let img = apply_move(s, mi, &word).unwrap();
                let hi = homology_class(s, &img);
                let expect = apply_move_to_slope(s, mi, (h[0], h[1]));
                assert_eq!((hi[0], hi[1]), expect);
            }
        }
    }

    /// Composition property over random move sequences.
    #[test]
    fn composition_matches_sequencing() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as usize
        };
        for s in [sig(0, 3), sig(1, 1), sig(0, 4), sig(2, 0)] {
            let nmoves = move_count(s);
            let pool = enumerate_words(s, 3, 10_000).unwrap();
            for _ in 0..20 {
                let len1 = next() % 3;
                let len2 = next() % 3;
                let m1: Vec<usize> = (0..len1).map(|_| next() % nmoves).collect();
                let m2: Vec<usize> = (0..len2).map(|_| next() % nmoves).collect();
                let word = pool[next() % pool.len()].clone();
                let seq = MappingClassWord {
                    sig: s,
                    moves: [m1.clone(), m2.clone()].concat(),
                };
                let lhs = apply_mapping_class(&seq, &word).unwrap();
                let inner = apply_mapping_class(&MappingClassWord { sig: s, moves: m2 }, &word).unwrap();
                let rhs =
                    apply_mapping_class(&MappingClassWord { sig: s, moves: m1 }, &inner).unwrap();
                // Compare as conjugacy classes.
                assert_eq!(
                    canonical_class(s, &lhs).unwrap(),
                    canonical_class(s, &rhs).unwrap(),
                    "composition mismatch on ({},{}) word {}",
                    s.genus,
                    s.cusps,
                    format_word(&word)
                );
            }
        }
    }
}
