//! Free group word calculus.
//!
//! Words are kept in freely reduced, run-length encoded form: a list of
//! syllables `(generator, exponent)` where adjacent syllables use distinct
//! generators and no exponent is zero. Because every operation reduces
//! eagerly, two words denote the same free group element iff they compare
//! equal structurally.

mod parse;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use parse::parse_word;

/// Generator index; `g1` has index 1.
pub type Gen = u32;

/// Upper bound on the number of letters a single word may expand to.
pub const MAX_WORD_LETTERS: u64 = 1 << 22;

/// A freely reduced element of the free group on `g1, g2, ...`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    syllables: Vec<(Gen, i64)>,
}

impl Word {
    /// The empty word.
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn generator(index: Gen) -> Self {
        assert!(index > 0, "generator indices are 1-based");
        Word {
            syllables: vec![(index, 1)],
        }
    }

    /// Builds a word from arbitrary syllables, reducing as it goes.
    pub fn from_syllables<I: IntoIterator<Item = (Gen, i64)>>(syllables: I) -> Self {
        let mut w = Word::identity();
        for (g, e) in syllables {
            w.push(g, e);
        }
        w
    }

    pub fn syllables(&self) -> &[(Gen, i64)] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of letters (sum of absolute exponents).
    pub fn letter_count(&self) -> u64 {
        self.syllables.iter().map(|&(_, e)| e.unsigned_abs()).sum()
    }

    /// Generator indices occurring in the word, ascending.
    pub fn variables(&self) -> BTreeSet<Gen> {
        self.syllables.iter().map(|&(g, _)| g).collect()
    }

    pub fn max_generator(&self) -> Gen {
        self.syllables.iter().map(|&(g, _)| g).max().unwrap_or(0)
    }

    // Appends one syllable and cancels against the tail.
    fn push(&mut self, g: Gen, e: i64) {
        if e == 0 {
            return;
        }
        match self.syllables.last_mut() {
            Some((last, exp)) if *last == g => {
                *exp += e;
                if *exp == 0 {
                    self.syllables.pop();
                }
            }
            _ => self.syllables.push((g, e)),
        }
    }

    fn extend_from(&mut self, other: &Word) {
        for &(g, e) in &other.syllables {
            self.push(g, e);
        }
    }

    pub fn multiply(&self, other: &Word) -> Word {
        let mut w = self.clone();
        w.extend_from(other);
        w
    }

    pub fn inverse(&self) -> Word {
        Word {
            syllables: self.syllables.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    /// `self^n`, failing if the result would be unreasonably long.
    pub fn pow(&self, n: i64) -> Result<Word> {
        if n == 0 || self.is_identity() {
            return Ok(Word::identity());
        }
        if let [(g, e)] = self.syllables[..] {
            let exp = e
                .checked_mul(n)
                .ok_or_else(|| Error::WordTooLong(format!("exponent overflow in g{g}^{e}^{n}")))?;
            return Ok(Word {
                syllables: vec![(g, exp)],
            });
        }
        if self.letter_count().saturating_mul(n.unsigned_abs()) > MAX_WORD_LETTERS {
            return Err(Error::WordTooLong(format!("({self})^{n}")));
        }
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out.extend_from(&base);
        }
        Ok(out)
    }

    /// `[u, v] = u v u^-1 v^-1`.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        let mut w = u.multiply(v);
        w.extend_from(&u.inverse());
        w.extend_from(&v.inverse());
        w
    }

    pub fn exponent_sums(&self) -> ExponentVector {
        let mut v = ExponentVector::default();
        for &(g, e) in &self.syllables {
            v.add_entry(g, e);
        }
        v
    }

    /// Renames generators; unmapped generators are kept.
    pub fn rename(&self, map: &BTreeMap<Gen, Gen>) -> Word {
        Word::from_syllables(
            self.syllables
                .iter()
                .map(|&(g, e)| (*map.get(&g).unwrap_or(&g), e)),
        )
    }
}

impl Mul for &Word {
    type Output = Word;
    fn mul(self, rhs: &Word) -> Word {
        self.multiply(rhs)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("1");
        }
        for (i, &(g, e)) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "g{g}")?;
            } else {
                write!(f, "g{g}^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_word(s)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_word(&text).map_err(serde::de::Error::custom)
    }
}

/// An endomorphism of the free group, given by finitely many generator
/// images. Generators without an image are fixed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Endomorphism {
    images: BTreeMap<Gen, Word>,
}

impl Endomorphism {
    pub fn identity() -> Self {
        Endomorphism::default()
    }

    pub fn new<I: IntoIterator<Item = (Gen, Word)>>(images: I) -> Self {
        let mut e = Endomorphism::default();
        for (g, w) in images {
            e.set(g, w);
        }
        e
    }

    pub fn set(&mut self, g: Gen, image: Word) {
        if image == Word::generator(g) {
            self.images.remove(&g);
        } else {
            self.images.insert(g, image);
        }
    }

    pub fn images(&self) -> &BTreeMap<Gen, Word> {
        &self.images
    }

    pub fn image(&self, g: Gen) -> Word {
        self.images
            .get(&g)
            .cloned()
            .unwrap_or_else(|| Word::generator(g))
    }

    pub fn apply(&self, w: &Word) -> Word {
        let mut out = Word::identity();
        for &(g, e) in w.syllables() {
            match self.images.get(&g) {
                None => out.push(g, e),
                Some(img) => {
                    let base = if e < 0 { img.inverse() } else { img.clone() };
                    for _ in 0..e.unsigned_abs() {
                        out.extend_from(&base);
                    }
                }
            }
        }
        out
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &Endomorphism) -> Endomorphism {
        let keys: BTreeSet<Gen> = self
            .images
            .keys()
            .chain(inner.images.keys())
            .copied()
            .collect();
        Endomorphism::new(keys.into_iter().map(|g| (g, self.apply(&inner.image(g)))))
    }
}

/// `apply_endo` as a free function.
pub fn apply_endo(e: &Endomorphism, w: &Word) -> Word {
    e.apply(w)
}

/// Exponent sum of each generator; zero entries are absent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct ExponentVector {
    entries: BTreeMap<Gen, i64>,
}

impl ExponentVector {
    pub fn entries(&self) -> &BTreeMap<Gen, i64> {
        &self.entries
    }

    pub fn get(&self, g: Gen) -> i64 {
        self.entries.get(&g).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    fn add_entry(&mut self, g: Gen, e: i64) {
        let slot = self.entries.entry(g).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.entries.remove(&g);
        }
    }

    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        let mut v = self.clone();
        for (&g, &e) in &other.entries {
            v.add_entry(g, e);
        }
        v
    }

    /// True iff every entry is divisible by `m`.
    pub fn is_zero_mod(&self, m: u64) -> bool {
        self.entries.values().all(|&e| e.rem_euclid(m as i64) == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    // Symbol-list cancellation, letter by letter, independent of the
    // syllable stack.
    fn naive_reduce(letters: &[(Gen, i64)]) -> Vec<(Gen, i64)> {
        let mut flat: Vec<(Gen, i64)> = Vec::new();
        for &(g, e) in letters {
            for _ in 0..e.unsigned_abs() {
                flat.push((g, e.signum()));
            }
        }
        loop {
            let mut changed = false;
            let mut i = 0;
            while i + 1 < flat.len() {
                if flat[i].0 == flat[i + 1].0 && flat[i].1 == -flat[i + 1].1 {
                    flat.drain(i..i + 2);
                    changed = true;
                } else {
                    i += 1;
                }
            }
            if !changed {
                break;
            }
        }
        let mut out: Vec<(Gen, i64)> = Vec::new();
        for (g, s) in flat {
            match out.last_mut() {
                Some((lg, le)) if *lg == g => *le += s,
                _ => out.push((g, s)),
            }
        }
        out
    }

    #[test]
    fn multiply_examples() {
        let a = Word::from_syllables([(1, 1)]);
        let b = Word::from_syllables([(1, -1)]);
        assert!(a.multiply(&b).is_identity());
        let a = Word::from_syllables([(1, 2)]);
        let b = Word::from_syllables([(1, 3)]);
        assert_eq!(a.multiply(&b).syllables(), &[(1, 5)]);
        let a = Word::from_syllables([(1, 1), (2, 1)]);
        let b = Word::from_syllables([(2, -1), (3, 1)]);
        let expected = naive_reduce(&[(1, 1), (2, 1), (2, -1), (3, 1)]);
        assert_eq!(expected, vec![(1, 1), (3, 1)]);
        assert_eq!(a.multiply(&b).syllables(), expected.as_slice());
    }

    #[test]
    fn invert_examples() {
        assert!(Word::identity().inverse().is_identity());
        assert_eq!(
            Word::from_syllables([(1, 2)]).inverse().syllables(),
            &[(1, -2)]
        );
        assert_eq!(
            Word::from_syllables([(1, 1), (2, -3)])
                .inverse()
                .syllables(),
            &[(2, 3), (1, -1)]
        );
    }

    #[test]
    fn endo_examples() {
        let c = w("[g1,g2]");
        assert_eq!(Endomorphism::identity().apply(&c), c);

        let e = Endomorphism::new([(1, w("g1*g2"))]);
        // Brute-force substitution: spell out the letters, then reduce.
        let letters = [(1, 1), (2, 1), (2, 1), (2, -1), (1, -1), (2, -1)];
        let expected = naive_reduce(&letters);
        assert_eq!(e.apply(&c).syllables(), expected.as_slice());
        assert_eq!(e.apply(&c), w("g1 g2 g1^-1 g2^-1"));

        let kill = Endomorphism::new([(1, Word::identity())]);
        assert!(kill.apply(&c).is_identity());
    }

    #[test]
    fn exponent_sum_examples() {
        assert!(w("[g1,g2]").exponent_sums().is_zero());
        assert_eq!(
            w("g1^6").exponent_sums().entries(),
            &BTreeMap::from([(1, 6)])
        );
        assert_eq!(
            w("g1^2*g2^-1*g1").exponent_sums().entries(),
            &BTreeMap::from([(1, 3), (2, -1)])
        );
    }

    #[test]
    fn compose_matches_sequential_application() {
        let a = Endomorphism::new([(1, w("g2^2")), (2, w("g1 g3"))]);
        let b = Endomorphism::new([(2, w("g1^-1")), (3, w("[g1,g2]"))]);
        let u = w("g1 g2^3 g3^-1 [g2,g3]");
        assert_eq!(a.compose(&b).apply(&u), a.apply(&b.apply(&u)));
    }

    #[test]
    fn pow_guards_length() {
        assert!(w("g1 g2").pow(1 << 30).is_err());
        assert_eq!(w("g1 g2").pow(-2).unwrap(), w("g2^-1 g1^-1 g2^-1 g1^-1"));
        assert_eq!(w("g3^2").pow(3).unwrap(), w("g3^6"));
    }

    #[test]
    fn display_round_trip_examples() {
        for s in ["1", "g1", "g1^-3*g2", "[g1,g2]^2", "(g1 g2)^-1"] {
            let parsed = w(s);
            assert_eq!(w(&parsed.to_string()), parsed);
        }
        assert_eq!(w("[g1,g2]").to_string(), "g1*g2*g1^-1*g2^-1");
    }
}
