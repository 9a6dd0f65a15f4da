/// Size caps for carriers, generators and exhaustive enumerations.
///
/// Everything in this crate is desk-scale: exhaustive scans over triples,
/// words and trees. The caps turn an accidental blow-up into an error instead
/// of a hang.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest accepted carrier (number of elements, identity included).
    pub max_carrier: usize,
    /// Largest `n` accepted by the disjoint-union generator (carrier `2^n`).
    pub max_disjoint_union: usize,
    /// Largest alphabet accepted by the no-common-letters generator.
    pub max_letters: usize,
    /// Longest word length accepted by word enumerations.
    pub max_word_len: usize,
    /// Largest number of words an enumeration may produce.
    pub max_words: usize,
}

pub const DEFAULT_MAX_CARRIER: usize = 256;

/// Environment variable overriding [`Limits::max_carrier`].
pub const MAX_CARRIER_ENV: &str = "PARMON_MAX_CARRIER";

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_carrier: DEFAULT_MAX_CARRIER,
            max_disjoint_union: 4,
            max_letters: 4,
            max_word_len: 12,
            max_words: 5_000_000,
        }
    }
}

impl Limits {
    /// Defaults, with the carrier cap taken from `PARMON_MAX_CARRIER` when it
    /// holds a positive integer.
    pub fn from_env() -> Self {
        let mut limits = Self::default();
        if let Some(cap) = std::env::var(MAX_CARRIER_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&c| c > 0)
        {
            limits.max_carrier = cap;
        }
        limits
    }
}
