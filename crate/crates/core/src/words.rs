//! Free-group word algebra in run-length (syllable) form.
//!
//! Words are stored as sequences of `(generator, exponent)` syllables so that
//! a power like `x^1000000` costs one syllable. All operations keep words
//! freely reduced: adjacent syllables always have distinct generators and no
//! exponent is zero.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("letter '{0}' is not in the alphabet")]
    UnknownLetter(char),
    #[error("argument out of domain: {0}")]
    Domain(String),
}

/// A generator symbol, identified by its index in the owning alphabet.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Gen(pub u8);

/// Ordered set of generator symbols. Lowercase ASCII letters name generators;
/// the corresponding uppercase letters name their inverses.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Alphabet {
    letters: Vec<char>,
}

impl Alphabet {
    pub fn new(letters: &[char]) -> Self {
        for &c in letters {
            assert!(c.is_ascii_lowercase(), "generator names must be lowercase ascii");
        }
        let mut seen = std::collections::HashSet::new();
        for &c in letters {
            assert!(seen.insert(c), "duplicate generator name '{c}'");
        }
        Alphabet { letters: letters.to_vec() }
    }

    /// The `{x, t}` alphabet used throughout the Baumslag-Gersten material.
    pub fn xt() -> Self {
        Alphabet::new(&['x', 't'])
    }

    pub fn size(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn name(&self, g: Gen) -> char {
        self.letters[g.0 as usize]
    }

    /// Maps a character to `(generator, sign)`; uppercase means inverse.
    pub fn classify(&self, c: char) -> Result<(Gen, i64), WordError> {
        let lower = c.to_ascii_lowercase();
        let sign = if c.is_ascii_uppercase() { -1 } else { 1 };
        match self.letters.iter().position(|&l| l == lower) {
            Some(i) => Ok((Gen(i as u8), sign)),
            None => Err(WordError::UnknownLetter(c)),
        }
    }
}

/// A freely reduced word in syllable form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Word {
    syllables: Vec<(Gen, i64)>,
}

impl Word {
    pub fn empty() -> Self {
        Word { syllables: Vec::new() }
    }

    pub fn generator(g: Gen) -> Self {
        Word { syllables: vec![(g, 1)] }
    }

    pub fn power(g: Gen, e: i64) -> Self {
        if e == 0 {
            Word::empty()
        } else {
            Word { syllables: vec![(g, e)] }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn syllables(&self) -> &[(Gen, i64)] {
        &self.syllables
    }

    /// Word length: the sum of absolute exponents.
    pub fn len(&self) -> u64 {
        self.syllables.iter().map(|&(_, e)| e.unsigned_abs()).sum()
    }

    /// Appends one syllable, merging and cancelling against the tail.
    pub fn push(&mut self, g: Gen, e: i64) {
        if e == 0 {
            return;
        }
        if let Some(last) = self.syllables.last_mut() {
            if last.0 == g {
                last.1 += e;
                if last.1 == 0 {
                    self.syllables.pop();
                }
                return;
            }
        }
        self.syllables.push((g, e));
    }

    /// In-place concatenation with free reduction at the seam.
    pub fn extend(&mut self, other: &Word) {
        for &(g, e) in &other.syllables {
            self.push(g, e);
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        w.extend(other);
        w
    }

    pub fn inverse(&self) -> Word {
        Word {
            syllables: self.syllables.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    /// Removes matching prefix/suffix inverse pairs (and merges a wrapping
    /// syllable), returning a cyclically reduced representative.
    pub fn cyclically_reduced(&self) -> Word {
        let mut s = self.syllables.clone();
        while s.len() >= 2 && s[0].0 == s[s.len() - 1].0 {
            let sum = s[0].1 + s[s.len() - 1].1;
            s.pop();
            if sum == 0 {
                s.remove(0);
            } else {
                s[0].1 = sum;
                break;
            }
        }
        Word { syllables: s }
    }

    /// Parses whitespace-tolerant ASCII word syntax: lowercase = generator,
    /// uppercase = inverse.
    pub fn parse(ab: &Alphabet, text: &str) -> Result<Word, WordError> {
        let mut w = Word::empty();
        for c in text.chars() {
            if c.is_whitespace() {
                continue;
            }
            let (g, sign) = ab.classify(c)?;
            w.push(g, sign);
        }
        Ok(w)
    }

    pub fn display<'a>(&'a self, ab: &'a Alphabet) -> WordDisplay<'a> {
        WordDisplay { word: self, ab }
    }

    /// Expands into ±1 letters. Intended for short words only.
    pub fn letters(&self) -> Vec<(Gen, i64)> {
        let mut out = Vec::new();
        for &(g, e) in &self.syllables {
            let sign = e.signum();
            for _ in 0..e.unsigned_abs() {
                out.push((g, sign));
            }
        }
        out
    }

    /// Encodes as packed signed letters: `2g` for a generator, `2g+1` for its
    /// inverse. The inverse of letter `l` is `l ^ 1`.
    pub fn to_letter_vec(&self) -> Vec<u8> {
        self.letters()
            .into_iter()
            .map(|(g, s)| (g.0 << 1) | u8::from(s < 0))
            .collect()
    }

    pub fn from_letter_vec(letters: &[u8]) -> Word {
        let mut w = Word::empty();
        for &l in letters {
            w.push(Gen(l >> 1), if l & 1 == 0 { 1 } else { -1 });
        }
        w
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    ab: &'a Alphabet,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &(g, e) in &self.word.syllables {
            let c = self.ab.name(g);
            let c = if e < 0 { c.to_ascii_uppercase() } else { c };
            for _ in 0..e.unsigned_abs() {
                write!(f, "{c}")?;
            }
        }
        Ok(())
    }
}

/// Free reduction of packed signed letters (see [`Word::to_letter_vec`]).
pub fn reduce_letters(letters: &[u8]) -> Vec<u8> {
    let mut out: Vec<u8> = Vec::with_capacity(letters.len());
    for &l in letters {
        if out.last() == Some(&(l ^ 1)) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn invert_letters(letters: &[u8]) -> Vec<u8> {
    letters.iter().rev().map(|&l| l ^ 1).collect()
}

/// `conjugate(base, by) = by · base · by⁻¹`.
///
/// Note the convention: the superscript acts on the left, so that
/// `x^{x^t} = x²` is exactly the Baumslag-Gersten relation.
pub fn conjugate(base: &Word, by: &Word) -> Word {
    let mut w = by.clone();
    w.extend(base);
    w.extend(&by.inverse());
    w
}

/// `[a, b] = a b a⁻¹ b⁻¹`.
pub fn commutator(a: &Word, b: &Word) -> Word {
    let mut w = a.clone();
    w.extend(b);
    w.extend(&a.inverse());
    w.extend(&b.inverse());
    w
}

/// The doubling words `V_m` over `{x, t}`: `V₀ = x`,
/// `V_{m+1} = x^{V_m^t} = (V_m^t) · x · (V_m^t)⁻¹`.
///
/// In the Baumslag-Gersten group `V_m` represents `x^{E(m)}`, and
/// `|V_m| = 6·2^m − 5`.
pub fn build_big_power_word(m: u32) -> Word {
    let x = Word::generator(Gen(0));
    let t = Word::generator(Gen(1));
    let mut v = x.clone();
    for _ in 0..m {
        v = conjugate(&x, &conjugate(&v, &t));
    }
    v
}

/// The words `v_n` of length `O(n)` representing `x^{E(⌊log₂ n⌋)}`.
pub fn build_vn(n: u64) -> Result<Word, WordError> {
    if n == 0 {
        return Err(WordError::Domain("v_n requires n >= 1".into()));
    }
    Ok(build_big_power_word(n.ilog2()))
}
