//! Words over the carrier of a partial monoid (the free monoid on its
//! elements), the prefix order, and irreducible words.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::monoid::{Elem, PartialMonoid, EMPTY_WORD_TOKEN};

/// A finite sequence of elements. The empty word is `ε`.
///
/// Words compare letter-wise; [`Word::shortlex_cmp`] gives the
/// length-then-lexicographic order used for deterministic output.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Word(Vec<Elem>);

impl Word {
    pub const fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(x: Elem) -> Self {
        Word(vec![x])
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Elem>) -> Self {
        Word(letters.into_iter().collect())
    }

    pub fn letters(&self) -> &[Elem] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Elem> {
        self.0
    }

    pub(crate) fn letters_mut(&mut self) -> &mut Vec<Elem> {
        &mut self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, x: Elem) {
        self.0.push(x);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `self` is a prefix of `other`: `other = self · w` for some `w`.
    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    /// All prefixes in increasing length, from `ε` to the word itself.
    pub fn prefixes(&self) -> Vec<Word> {
        (0..=self.len())
            .map(|k| Word(self.0[..k].to_vec()))
            .collect()
    }

    pub fn shortlex_cmp(&self, other: &Word) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }

    /// Renders with the given separator; `ε` renders as `eps`.
    pub fn display<'a>(&'a self, m: &'a PartialMonoid, sep: &'a str) -> WordDisplay<'a> {
        WordDisplay { word: self, m, sep }
    }

    /// The `·`-joined form used in reports.
    pub fn render(&self, m: &PartialMonoid) -> String {
        self.display(m, "·").to_string()
    }

    /// Space-separated form accepted by [`parse_word`].
    pub fn render_plain(&self, m: &PartialMonoid) -> String {
        self.display(m, " ").to_string()
    }
}

impl FromIterator<Elem> for Word {
    fn from_iter<I: IntoIterator<Item = Elem>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    m: &'a PartialMonoid,
    sep: &'a str,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str(EMPTY_WORD_TOKEN);
        }
        for (i, &x) in self.word.letters().iter().enumerate() {
            if i > 0 {
                f.write_str(self.sep)?;
            }
            f.write_str(self.m.name(x))?;
        }
        Ok(())
    }
}

/// Parses space-separated element names; `eps` alone is the empty word.
/// A `·` between names is accepted as a separator too, so rendered words
/// parse back.
pub fn parse_word(m: &PartialMonoid, text: &str) -> Result<Word> {
    let tokens: Vec<&str> = text
        .split(|c: char| c.is_whitespace() || c == '·')
        .filter(|t| !t.is_empty())
        .collect();
    match tokens.as_slice() {
        [] | [EMPTY_WORD_TOKEN] => Ok(Word::empty()),
        _ => tokens.iter().map(|t| m.elem(t)).collect(),
    }
}

/// The one-letter word of an element.
pub fn embed(m: &PartialMonoid, name: &str) -> Result<Word> {
    Ok(Word::letter(m.elem(name)?))
}

/// No identity letter and no adjacent pair in the domain.
pub fn is_irreducible(m: &PartialMonoid, w: &Word) -> bool {
    let id = m.identity();
    let letters = w.letters();
    !letters.contains(&id) && letters.windows(2).all(|p| !m.is_defined(p[0], p[1]))
}

/// All irreducible words of length at most `max_len`, shortest first, then
/// lexicographic by element index.
///
/// Built by extending irreducible words one letter at a time, which reaches
/// every irreducible word since they are closed under prefixes.
pub fn enumerate_irreducible(
    m: &PartialMonoid,
    max_len: usize,
    limits: &Limits,
) -> Result<Vec<Word>> {
    if max_len > limits.max_word_len {
        return Err(Error::EnumerationCap {
            what: "word length",
            cap: limits.max_word_len,
        });
    }
    let mut out = vec![Word::empty()];
    let mut level_start = 0;
    for _ in 0..max_len {
        let level_end = out.len();
        for i in level_start..level_end {
            for x in m.non_identity() {
                let fits = out[i]
                    .letters()
                    .last()
                    .is_none_or(|&last| !m.is_defined(last, x));
                if fits {
                    let mut ext = out[i].clone();
                    ext.push(x);
                    out.push(ext);
                    if out.len() > limits.max_words {
                        return Err(Error::EnumerationCap {
                            what: "irreducible words",
                            cap: limits.max_words,
                        });
                    }
                }
            }
        }
        if out.len() == level_end {
            break;
        }
        level_start = level_end;
    }
    Ok(out)
}

/// All words of length at most `max_len` over `alphabet`, shortest first.
pub fn enumerate_words(alphabet: &[Elem], max_len: usize, limits: &Limits) -> Result<Vec<Word>> {
    if max_len > limits.max_word_len {
        return Err(Error::EnumerationCap {
            what: "word length",
            cap: limits.max_word_len,
        });
    }
    let mut total: usize = 0;
    let mut level: usize = 1;
    for _ in 0..=max_len {
        total = total.saturating_add(level);
        level = level.saturating_mul(alphabet.len());
    }
    if total > limits.max_words {
        return Err(Error::EnumerationCap {
            what: "words",
            cap: limits.max_words,
        });
    }
    let mut out = Vec::with_capacity(total);
    out.push(Word::empty());
    let mut level_start = 0;
    for _ in 0..max_len {
        let level_end = out.len();
        for i in level_start..level_end {
            for &x in alphabet {
                let mut ext = out[i].clone();
                ext.push(x);
                out.push(ext);
            }
        }
        level_start = level_end;
    }
    Ok(out)
}
