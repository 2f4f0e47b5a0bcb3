//! Free-group words in syllable (run-length) form.
//!
//! A [`Word`] is a sequence of syllables `g^k` with `k != 0` and no two
//! adjacent syllables on the same generator. Every constructor goes through
//! [`Word::reduce`], so two words are equal as free-group elements exactly
//! when they are structurally equal.

use std::collections::HashMap;
use std::fmt;

use crate::error::{EvalError, NameError};

/// Interned generator id. Names live in an [`Alphabet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator(pub(crate) u32);

impl Generator {
    pub fn new(index: usize) -> Self {
        Generator(u32::try_from(index).expect("generator index fits in u32"))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// One run `generator^exponent` of a reduced word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Syllable {
    pub generator: Generator,
    pub exponent: i64,
}

/// Characters that may never appear in a generator name.
const RESERVED: &[char] = &['^', '*', '(', ')', ',', '|', '<', '>', ':', '#'];

/// Checks the lexical rule for generator and marker names.
pub fn validate_name(name: &str) -> Result<(), NameError> {
    let bad = |reason| {
        Err(NameError {
            name: name.to_string(),
            reason,
        })
    };
    if name.is_empty() {
        return bad("empty name");
    }
    if name.starts_with(|c: char| c.is_ascii_digit() || c == '-' || c == '+') {
        return bad("names may not start with a digit or sign");
    }
    if name.chars().any(char::is_whitespace) {
        return bad("names may not contain whitespace");
    }
    if name.chars().any(|c| RESERVED.contains(&c)) {
        return bad("names may not contain any of ^ * ( ) , | < > : #");
    }
    Ok(())
}

/// An ordered set of generator names with interned ids `0..len`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, Generator>,
}

impl Alphabet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds an alphabet from names, rejecting duplicates and bad names.
    pub fn from_names<I, S>(names: I) -> Result<Self, NameError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut alphabet = Alphabet::new();
        for name in names {
            alphabet.push(name.into())?;
        }
        Ok(alphabet)
    }

    pub fn push(&mut self, name: String) -> Result<Generator, NameError> {
        validate_name(&name)?;
        if self.index.contains_key(&name) {
            return Err(NameError {
                name,
                reason: "duplicate generator",
            });
        }
        let g = Generator::new(self.names.len());
        self.index.insert(name.clone(), g);
        self.names.push(name);
        Ok(g)
    }

    pub fn get(&self, name: &str) -> Option<Generator> {
        self.index.get(name).copied()
    }

    pub fn name(&self, g: Generator) -> &str {
        &self.names[g.index()]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn generators(&self) -> impl ExactSizeIterator<Item = Generator> {
        (0..self.names.len()).map(Generator::new)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Parses a word in the presentation grammar against this alphabet.
    pub fn parse_word(&self, text: &str) -> Result<Word, crate::error::ParseError> {
        crate::parse::parse_word(text, self)
    }
}

/// A freely reduced word.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    syllables: Vec<Syllable>,
}

/// Incremental free reduction: a stack of syllables where each push merges
/// with or cancels against the top.
#[derive(Default)]
struct Reducer {
    stack: Vec<Syllable>,
}

impl Reducer {
    fn with_capacity(n: usize) -> Self {
        Reducer {
            stack: Vec::with_capacity(n),
        }
    }

    fn push(&mut self, generator: Generator, exponent: i64) {
        if exponent == 0 {
            return;
        }
        match self.stack.last_mut() {
            Some(top) if top.generator == generator => {
                top.exponent = top
                    .exponent
                    .checked_add(exponent)
                    .expect("word exponent overflow");
                if top.exponent == 0 {
                    self.stack.pop();
                }
            }
            _ => self.stack.push(Syllable {
                generator,
                exponent,
            }),
        }
    }

    fn extend(&mut self, word: &Word) {
        for s in &word.syllables {
            self.push(s.generator, s.exponent);
        }
    }

    fn finish(self) -> Word {
        Word {
            syllables: self.stack,
        }
    }
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    /// The word `g`.
    pub fn generator(g: Generator) -> Self {
        Word::syllable(g, 1)
    }

    /// The word `g^k` (identity when `k == 0`).
    pub fn syllable(g: Generator, k: i64) -> Self {
        Word::reduce([(g, k)])
    }

    /// Free reduction of a raw list of `(generator, exponent)` pairs.
    pub fn reduce<I>(raw: I) -> Self
    where
        I: IntoIterator<Item = (Generator, i64)>,
    {
        let mut r = Reducer::default();
        for (g, k) in raw {
            r.push(g, k);
        }
        r.finish()
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    /// Number of syllables.
    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Length as a product of letters `g^{±1}`.
    pub fn letter_length(&self) -> u64 {
        self.syllables
            .iter()
            .map(|s| s.exponent.unsigned_abs())
            .sum()
    }

    pub fn exponent_sum(&self, g: Generator) -> i64 {
        self.syllables
            .iter()
            .filter(|s| s.generator == g)
            .map(|s| s.exponent)
            .sum()
    }

    /// Generators occurring in the word, in order of first occurrence.
    pub fn generators(&self) -> Vec<Generator> {
        let mut seen = Vec::new();
        for s in &self.syllables {
            if !seen.contains(&s.generator) {
                seen.push(s.generator);
            }
        }
        seen
    }

    pub fn multiply(&self, other: &Word) -> Word {
        let mut r = Reducer::with_capacity(self.len() + other.len());
        r.extend(self);
        r.extend(other);
        r.finish()
    }

    pub fn invert(&self) -> Word {
        Word {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable {
                    generator: s.generator,
                    exponent: -s.exponent,
                })
                .collect(),
        }
    }

    pub fn power(&self, k: i64) -> Word {
        let base = if k < 0 { self.invert() } else { self.clone() };
        let mut r = Reducer::with_capacity(base.len() * (k.unsigned_abs() as usize).min(1 << 16));
        for _ in 0..k.unsigned_abs() {
            r.extend(&base);
        }
        r.finish()
    }

    /// `g · self · g^-1`.
    pub fn conjugate(&self, g: &Word) -> Word {
        let mut r = Reducer::with_capacity(2 * g.len() + self.len());
        r.extend(g);
        r.extend(self);
        r.extend(&g.invert());
        r.finish()
    }

    /// Substitutes generator images and multiplies in `group`.
    pub fn evaluate<G: GroupOps>(
        &self,
        images: &HashMap<Generator, G::Elem>,
        group: &G,
    ) -> Result<G::Elem, EvalError> {
        let mut acc = group.identity();
        for s in &self.syllables {
            let img = images
                .get(&s.generator)
                .ok_or(EvalError::MissingImage(s.generator))?;
            acc = group.mul(&acc, &group.pow(img, s.exponent));
        }
        Ok(acc)
    }

    /// Renders the word with names from `alphabet`; the identity is `1`.
    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> WordDisplay<'a> {
        WordDisplay {
            word: self,
            alphabet,
        }
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    alphabet: &'a Alphabet,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_identity() {
            return f.write_str("1");
        }
        for (i, s) in self.word.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            f.write_str(self.alphabet.name(s.generator))?;
            if s.exponent != 1 {
                write!(f, "^{}", s.exponent)?;
            }
        }
        Ok(())
    }
}

/// Minimal group interface used for word evaluation.
pub trait GroupOps {
    type Elem: Clone;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inverse(&self, a: &Self::Elem) -> Self::Elem;

    /// `a^k` by repeated squaring; implementors with known element orders
    /// may reduce `k` first.
    fn pow(&self, a: &Self::Elem, k: i64) -> Self::Elem {
        let mut base = if k < 0 { self.inverse(a) } else { a.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}
