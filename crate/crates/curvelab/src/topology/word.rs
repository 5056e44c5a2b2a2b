//! Cyclic words over the fundamental-group generators.
//!
//! Letters are nonzero `i8` values: +k is the k-th generator, −k its
//! inverse. Serialization uses `a, b, c, d` for generators 1..4 and
//! uppercase for inverses. A `Word` always stores a freely reduced
//! letter sequence; conjugacy-class representatives are additionally
//! cyclically reduced, and on the closed genus-2 surface shortened with
//! the one-relator rewriting rule.

use crate::error::{Error, Result};
use crate::topology::SurfaceSig;

pub type Letter = i8;

/// Octagon relator of the closed genus-2 surface: a b a⁻¹ b⁻¹ c d c⁻¹ d⁻¹.
pub const GENUS2_RELATOR: [Letter; 8] = [1, 2, -1, -2, 3, 4, -3, -4];

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

/// Total order on letters used everywhere ordering matters:
/// a < A < b < B < c < C < d < D.
pub fn letter_key(l: Letter) -> u8 {
    debug_assert!(l != 0);
    ((l.unsigned_abs() - 1) << 1) + u8::from(l < 0)
}

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Freely reduce: cancel adjacent inverse pairs.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last().is_some_and(|&p| p == -l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&l| -l).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v).free_reduce()
    }

    pub fn rotated(&self, k: usize) -> Word {
        let n = self.0.len();
        if n == 0 {
            return Word::empty();
        }
        let k = k % n;
        let mut v = Vec::with_capacity(n);
        v.extend_from_slice(&self.0[k..]);
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    /// Lexicographic comparison under the fixed letter order, length first.
    pub fn cmp_keyed(&self, other: &Word) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| {
                let ka = self.0.iter().map(|&l| letter_key(l));
                let kb = other.0.iter().map(|&l| letter_key(l));
                ka.cmp(kb)
            })
    }

    /// True if the cyclic word is a proper power u^k, k ≥ 2.
    pub fn is_proper_power(&self) -> bool {
        let n = self.0.len();
        if n < 2 {
            return false;
        }
        for d in 1..n {
            if n % d != 0 {
                continue;
            }
            if (0..n).all(|i| self.0[i] == self.0[(i + d) % n]) {
                return true;
            }
        }
        false
    }

    /// Sum of letter exponents per generator, as a vector of length `rank`.
    pub fn exponent_sums(&self, rank: usize) -> Vec<i64> {
        let mut v = vec![0i64; rank];
        for &l in &self.0 {
            let i = (l.unsigned_abs() - 1) as usize;
            if l > 0 {
                v[i] += 1;
            } else {
                v[i] -= 1;
            }
        }
        v
    }
}

/// Number of fundamental-group generators for the surface.
pub fn rank(sig: SurfaceSig) -> usize {
    match (sig.genus, sig.cusps) {
        (0, 3) | (1, 1) => 2,
        (0, 4) => 3,
        (2, 0) => 4,
        _ => unreachable!("unsupported signature"),
    }
}

pub fn parse_word(sig: SurfaceSig, s: &str) -> Result<Word> {
    let r = rank(sig) as u8;
    let mut letters = Vec::with_capacity(s.len());
    for ch in s.chars() {
        let (idx, neg) = match ch {
            'a'..='d' => (ch as u8 - b'a' + 1, false),
            'A'..='D' => (ch as u8 - b'A' + 1, true),
            _ => return Err(Error::Parse(format!("invalid letter `{ch}` in word `{s}`"))),
        };
        if idx > r {
            return Err(Error::Parse(format!(
                "letter `{ch}` outside the rank-{r} alphabet of ({},{})",
                sig.genus, sig.cusps
            )));
        }
        letters.push(if neg { -(idx as i8) } else { idx as i8 });
    }
    Ok(Word(letters))
}

pub fn format_word(w: &Word) -> String {
    w.0.iter()
        .map(|&l| {
            let base = b'a' + (l.unsigned_abs() - 1);
            if l > 0 {
                base as char
            } else {
                base.to_ascii_uppercase() as char
            }
        })
        .collect()
}

/// All 16 cyclic rotations of the genus-2 relator and of its inverse.
fn relator_rotations() -> &'static Vec<Vec<Letter>> {
    use std::sync::OnceLock;
    static ROTS: OnceLock<Vec<Vec<Letter>>> = OnceLock::new();
    ROTS.get_or_init(|| {
        let r = Word(GENUS2_RELATOR.to_vec());
        let ri = r.inverse();
        let mut out = Vec::with_capacity(16);
        for k in 0..8 {
            out.push(r.rotated(k).0);
            out.push(ri.rotated(k).0);
        }
        out
    })
}

/// Longest run of `w` (viewed cyclically, starting at `start`) matching a
/// prefix of rotation `rot`, capped at 8.
fn run_length(w: &[Letter], start: usize, rot: &[Letter]) -> usize {
    let n = w.len();
    let mut k = 0;
    while k < 8 && k < n && w[(start + k) % n] == rot[k] {
        k += 1;
    }
    k
}

/// One pass of the one-relator shortening rule on a cyclic word: find a
/// cyclic subword longer than half the relator (≥ 5 of 8 letters) and
/// replace it by the inverse of the complementary part (≤ 3 letters).
/// Returns None when no such subword exists.
fn dehn_step(w: &Word) -> Option<Word> {
    let n = w.0.len();
    if n < 5 {
        return None;
    }
    for start in 0..n {
        for rot in relator_rotations() {
            let k = run_length(&w.0, start, rot).min(n);
            if k >= 5 {
                // rotation = matched · tail, relator trivial in the group,
                // so matched = tail⁻¹.
                let tail = Word(rot[k..].to_vec()).inverse();
                let mut v = tail.0;
                for i in k..n {
                    v.push(w.0[(start + i) % n]);
                }
                return Some(Word(v).free_reduce());
            }
        }
    }
    None
}

/// True when no cyclic subword exceeds half of the relator.
pub fn is_dehn_reduced(w: &Word) -> bool {
    dehn_step(w).is_none()
}

/// Cyclically reduce a word to a conjugacy-class representative.
///
/// For the closed genus-2 surface the representative is additionally
/// shortened with the relator rule until none applies. Errors with
/// `EMPTY_AFTER_REDUCTION` if the class is trivial.
pub fn cyclic_reduce(sig: SurfaceSig, w: &Word) -> Result<Word> {
    let mut cur = w.free_reduce();
    loop {
        // Trim cyclic inverse pairs at the ends.
        while cur.0.len() >= 2 && cur.0[0] == -cur.0[cur.0.len() - 1] {
            let v = cur.0[1..cur.0.len() - 1].to_vec();
            cur = Word(v).free_reduce();
        }
        if sig == SurfaceSig::CLOSED_GENUS2 {
            if let Some(next) = dehn_step(&cur) {
                cur = next;
                continue;
            }
        }
        break;
    }
    if cur.is_empty() {
        return Err(Error::EmptyAfterReduction {
            word: format_word(w),
        });
    }
    Ok(cur)
}

/// Canonical representative of the unoriented conjugacy class: the keyed-lex
/// least among all rotations of the word and of its inverse.
pub fn canonical_class(sig: SurfaceSig, w: &Word) -> Result<Word> {
    let red = cyclic_reduce(sig, w)?;
    let n = red.0.len();
    let inv = red.inverse();
    let mut best: Option<Word> = None;
    for k in 0..n {
        for cand in [red.rotated(k), inv.rotated(k)] {
            if best
                .as_ref()
                .is_none_or(|b| cand.cmp_keyed(b) == std::cmp::Ordering::Less)
            {
                best = Some(cand);
            }
        }
    }
    Ok(best.unwrap())
}

/// Homology class in the abelianization: exponent sums over the standard
/// generators. Length 2·genus + max(cusps − 1, 0).
pub fn homology_class(sig: SurfaceSig, w: &Word) -> Vec<i64> {
    // On the supported surfaces the generator count equals the homology
    // rank, and the genus-2 relator abelianizes to zero, so exponent sums
    // are already well defined on homology.
    w.exponent_sums(rank(sig))
}

/// One representative per unoriented conjugacy class of cyclic words of
/// length ≤ `max_len`, ordered by length then keyed-lex, excluding proper
/// powers. Errors with `BUDGET_EXCEEDED` when the pool passes `cap`.
///
/// Pools are memoized per (signature, length): sampling and greedy
/// searches re-request the same pool many times, and canonicalizing the
/// genus-2 ball dominates their runtime otherwise. The cap is enforced
/// against the memoized pool as if it were freshly enumerated.
pub fn enumerate_words(sig: SurfaceSig, max_len: usize, cap: usize) -> Result<Vec<Word>> {
    use std::collections::HashMap;
    use std::sync::{Mutex, OnceLock};
    static POOLS: OnceLock<Mutex<HashMap<(SurfaceSig, usize), Vec<Word>>>> = OnceLock::new();
    let pools = POOLS.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(pool) = pools.lock().unwrap().get(&(sig, max_len)) {
        if pool.len() > cap {
            return Err(Error::BudgetExceeded {
                what: "word enumeration pool",
                cap,
            });
        }
        return Ok(pool.clone());
    }
    let pool = enumerate_words_uncached(sig, max_len, cap)?;
    pools
        .lock()
        .unwrap()
        .entry((sig, max_len))
        .or_insert_with(|| pool.clone());
    Ok(pool)
}

fn enumerate_words_uncached(sig: SurfaceSig, max_len: usize, cap: usize) -> Result<Vec<Word>> {
    let r = rank(sig);
    // Letters in keyed order: a, A, b, B, ...
    let alphabet: Vec<Letter> = (0..2 * r)
        .map(|k| {
            let idx = (k / 2 + 1) as i8;
            if k % 2 == 0 {
                idx
            } else {
                -idx
            }
        })
        .collect();
    let mut out = Vec::new();
    let mut stack: Vec<Letter> = Vec::new();

    fn dfs(
        sig: SurfaceSig,
        alphabet: &[Letter],
        stack: &mut Vec<Letter>,
        target: usize,
        out: &mut Vec<Word>,
        cap: usize,
    ) -> Result<()> {
        if stack.len() == target {
            let w = Word(stack.clone());
            // Cyclically reduced?
            if w.0.len() >= 2 && w.0[0] == -w.0[w.0.len() - 1] {
                return Ok(());
            }
            if sig == SurfaceSig::CLOSED_GENUS2 && !is_dehn_reduced(&w) {
                return Ok(());
            }
            if w.is_proper_power() {
                return Ok(());
            }
            let canon = canonical_class(sig, &w)?;
            if canon == w {
                out.push(w);
                if out.len() > cap {
                    return Err(Error::BudgetExceeded {
                        what: "word enumeration pool",
                        cap,
                    });
                }
            }
            return Ok(());
        }
        for &l in alphabet {
            if stack.last().is_some_and(|&p| p == -l) {
                continue;
            }
            stack.push(l);
            dfs(sig, alphabet, stack, target, out, cap)?;
            stack.pop();
        }
        Ok(())
    }

    for len in 1..=max_len {
        dfs(sig, &alphabet, &mut stack, len, &mut out, cap)?;
    }
    Ok(out)
}
