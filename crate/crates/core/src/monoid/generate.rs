//! The two standard families of partial monoids: subsets under disjoint
//! union, and words with pairwise distinct letters under concatenation.

use super::PartialMonoid;
use crate::error::{Error, Result};
use crate::limits::Limits;

/// Subsets of `{0, .., n-1}`; `A * B = A ∪ B` when `A ∩ B = ∅`.
///
/// The empty set is the identity and is named `1`; the subset `{0, 2}` is
/// named `s02`. Elements are ordered by bitmask.
pub fn gen_disjoint_union_monoid(n: usize, limits: &Limits) -> Result<PartialMonoid> {
    if n > limits.max_disjoint_union || n >= usize::BITS as usize {
        return Err(Error::GeneratorCap {
            got: n,
            cap: limits.max_disjoint_union,
        });
    }
    let size = 1usize << n;
    if size > limits.max_carrier {
        return Err(Error::CarrierCap {
            size,
            cap: limits.max_carrier,
        });
    }
    let names = (0..size)
        .map(|mask| {
            if mask == 0 {
                "1".to_string()
            } else {
                let digits: String = (0..n)
                    .filter(|b| mask & (1 << b) != 0)
                    .map(|b| char::from_digit(b as u32, 36).expect("n is small"))
                    .collect();
                format!("s{digits}")
            }
        })
        .collect();
    PartialMonoid::from_fn(names, 0, |a, b| (a & b == 0).then_some(a | b))
}

/// Words over `letters` with no repeated letter; the product is concatenation
/// when the two words share no letter. The empty word is the identity, named
/// `1`. Elements are ordered by length, then lexicographically with respect to
/// the order of `letters`.
pub fn gen_no_common_letters_monoid(letters: &[char], limits: &Limits) -> Result<PartialMonoid> {
    for (i, &c) in letters.iter().enumerate() {
        if !c.is_ascii_alphabetic() || letters[..i].contains(&c) {
            return Err(Error::InvalidLetter(c.to_string()));
        }
    }
    if letters.len() > limits.max_letters {
        return Err(Error::GeneratorCap {
            got: letters.len(),
            cap: limits.max_letters,
        });
    }

    // Arrangements as index sequences, length-lexicographic.
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..letters.len() {
        let mut next = Vec::new();
        for w in &frontier {
            for l in 0..letters.len() {
                if !w.contains(&l) {
                    let mut ext = w.clone();
                    ext.push(l);
                    next.push(ext);
                }
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    if words.len() > limits.max_carrier {
        return Err(Error::CarrierCap {
            size: words.len(),
            cap: limits.max_carrier,
        });
    }

    let masks: Vec<u32> = words
        .iter()
        .map(|w| w.iter().fold(0u32, |m, &l| m | (1 << l)))
        .collect();
    let position: std::collections::HashMap<&[usize], usize> = words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.as_slice(), i))
        .collect();
    let names = words
        .iter()
        .map(|w| {
            if w.is_empty() {
                "1".to_string()
            } else {
                w.iter().map(|&l| letters[l]).collect()
            }
        })
        .collect();
    PartialMonoid::from_fn(names, 0, |i, j| {
        if masks[i] & masks[j] != 0 {
            return None;
        }
        let cat: Vec<usize> = words[i].iter().chain(&words[j]).copied().collect();
        Some(position[cat.as_slice()])
    })
}
