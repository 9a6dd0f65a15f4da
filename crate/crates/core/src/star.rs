//! The product `u ⋆ v = lstd(u·v)` on irreducible words.
//!
//! `⋆` is always associative up to the Thue congruence, and strictly
//! associative exactly when the rewriting system is confluent. This module
//! searches for associativity counterexamples, checks the congruence-level
//! law with explicit conversion paths, and compares the two verdicts.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::confluence::is_confluent;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::monoid::PartialMonoid;
use crate::rewriting::{lstd, require_irreducible, BoundedCongruence, Convertibility};
use crate::words::{enumerate_irreducible, enumerate_words, is_irreducible, Word};

/// `lstd(u·v)` for irreducible `u` and `v`.
pub fn star(m: &PartialMonoid, u: &Word, v: &Word) -> Result<Word> {
    require_irreducible(m, u)?;
    require_irreducible(m, v)?;
    Ok(lstd(m, &u.concat(v)))
}

/// `u ⋆ v` for every pair of irreducible words up to a length bound.
#[derive(Debug, Clone)]
pub struct StarTable {
    bound: usize,
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    products: Vec<Word>,
}

impl StarTable {
    pub fn build(m: &PartialMonoid, bound: usize, limits: &Limits) -> Result<Self> {
        let words = enumerate_irreducible(m, bound, limits)?;
        let n = words.len();
        if n.saturating_mul(n) > limits.max_words {
            return Err(Error::EnumerationCap {
                what: "star table entries",
                cap: limits.max_words,
            });
        }
        let index = words
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect();
        let mut products = Vec::with_capacity(n * n);
        for u in &words {
            for v in &words {
                products.push(lstd(m, &u.concat(v)));
            }
        }
        Ok(Self {
            bound,
            words,
            index,
            products,
        })
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// The irreducible words covered, shortest first.
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn get(&self, u: &Word, v: &Word) -> Option<&Word> {
        let i = *self.index.get(u)?;
        let j = *self.index.get(v)?;
        Some(&self.products[i * self.words.len() + j])
    }

    fn by_index(&self, i: usize, j: usize) -> &Word {
        &self.products[i * self.words.len() + j]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssocCounterexample {
    pub u: Word,
    pub v: Word,
    pub w: Word,
    /// `(u ⋆ v) ⋆ w`
    pub left: Word,
    /// `u ⋆ (v ⋆ w)`
    pub right: Word,
    /// Bounded search for `left ⟺* right` with cap `|u|+|v|+|w|`.
    pub congruence: Convertibility,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssocReport {
    pub associative: bool,
    pub bound: usize,
    pub triples_checked: usize,
    /// The first counterexample, or all of them when requested.
    pub counterexamples: Vec<AssocCounterexample>,
}

impl AssocReport {
    pub fn counterexample(&self) -> Option<&AssocCounterexample> {
        self.counterexamples.first()
    }
}

/// Tests `(u⋆v)⋆w = u⋆(v⋆w)` over all irreducible words of length at most
/// `bound`, in length-lexicographic triple order. Stops at the first failure
/// unless `all` is set.
pub fn associativity_search(
    m: &PartialMonoid,
    bound: usize,
    all: bool,
    limits: &Limits,
) -> Result<AssocReport> {
    let table = StarTable::build(m, bound, limits)?;
    let congruence = BoundedCongruence::new(m);
    let n = table.words.len();
    let mut counterexamples = Vec::new();
    let mut triples_checked = 0;
    'outer: for i in 0..n {
        for j in 0..n {
            let uv = table.by_index(i, j);
            for k in 0..n {
                triples_checked += 1;
                let vw = table.by_index(j, k);
                let (u, w) = (&table.words[i], &table.words[k]);
                let left = lstd(m, &uv.concat(w));
                let right = lstd(m, &u.concat(vw));
                if left != right {
                    let v = &table.words[j];
                    let cap = u.len() + v.len() + w.len();
                    counterexamples.push(AssocCounterexample {
                        congruence: congruence.search(&left, &right, cap),
                        u: u.clone(),
                        v: v.clone(),
                        w: w.clone(),
                        left,
                        right,
                    });
                    if !all {
                        break 'outer;
                    }
                }
            }
        }
    }
    Ok(AssocReport {
        associative: counterexamples.is_empty(),
        bound,
        triples_checked,
        counterexamples,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TripleCongruence {
    pub u: Word,
    pub v: Word,
    pub w: Word,
    pub left: Word,
    pub right: Word,
    pub result: Convertibility,
}

/// For every irreducible triple up to `bound`, searches for
/// `(u⋆v)⋆w ⟺* u⋆(v⋆w)` through words no longer than `|u|+|v|+|w|`.
/// Equal sides give a one-word path.
pub fn verify_assoc_mod_congruence(
    m: &PartialMonoid,
    bound: usize,
    limits: &Limits,
) -> Result<Vec<TripleCongruence>> {
    let table = StarTable::build(m, bound, limits)?;
    let congruence = BoundedCongruence::new(m);
    let mut cache: HashMap<(Word, Word, usize), Convertibility> = HashMap::new();
    let words = table.words();
    let mut out = Vec::with_capacity(words.len().pow(3));
    for (i, u) in words.iter().enumerate() {
        for (j, v) in words.iter().enumerate() {
            for (k, w) in words.iter().enumerate() {
                let left = lstd(m, &table.by_index(i, j).concat(w));
                let right = lstd(m, &u.concat(table.by_index(j, k)));
                let cap = u.len() + v.len() + w.len();
                let result = if left == right {
                    Convertibility::Yes(vec![left.clone()])
                } else {
                    cache
                        .entry((left.clone(), right.clone(), cap))
                        .or_insert_with(|| congruence.search(&left, &right, cap))
                        .clone()
                };
                out.push(TripleCongruence {
                    u: u.clone(),
                    v: v.clone(),
                    w: w.clone(),
                    left,
                    right,
                    result,
                });
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AssocConfluence {
    pub associative: bool,
    pub confluent: bool,
    /// `associative == confluent`
    pub holds: bool,
}

/// Compares the associativity search at `bound` with the essential-triple
/// confluence verdict. An A0 triple always yields a counterexample of single
/// letters, so `bound = 1` already separates the non-confluent case.
pub fn verify_assoc_iff_confluent(
    m: &PartialMonoid,
    bound: usize,
    limits: &Limits,
) -> Result<AssocConfluence> {
    let associative = associativity_search(m, bound, false, limits)?.associative;
    let confluent = is_confluent(m).confluent;
    Ok(AssocConfluence {
        associative,
        confluent,
        holds: associative == confluent,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientClass {
    pub representative: Word,
    pub members: Vec<Word>,
    pub irreducible_members: usize,
    /// Every member reaches the representative within the length bound.
    pub all_convertible: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientReport {
    pub bound: usize,
    pub classes: Vec<QuotientClass>,
}

impl QuotientReport {
    /// One irreducible word per class, all members convertible to it.
    pub fn consistent(&self) -> bool {
        self.classes
            .iter()
            .all(|c| c.irreducible_members == 1 && c.all_convertible)
    }
}

/// Groups every word of length at most `bound` by its normal form. Only for
/// confluent systems, where each class holds exactly one irreducible word.
pub fn quotient_representatives(
    m: &PartialMonoid,
    bound: usize,
    limits: &Limits,
) -> Result<QuotientReport> {
    if !is_confluent(m).confluent {
        return Err(Error::NotConfluent);
    }
    let alphabet: Vec<_> = m.elements().collect();
    let mut groups: BTreeMap<Word, Vec<Word>> = BTreeMap::new();
    for w in enumerate_words(&alphabet, bound, limits)? {
        groups.entry(lstd(m, &w)).or_default().push(w);
    }
    let congruence = BoundedCongruence::new(m);
    let mut classes: Vec<QuotientClass> = groups
        .into_iter()
        .map(|(representative, members)| QuotientClass {
            irreducible_members: members.iter().filter(|w| is_irreducible(m, w)).count(),
            all_convertible: members
                .iter()
                .all(|w| congruence.search(w, &representative, bound).is_yes()),
            representative,
            members,
        })
        .collect();
    classes.sort_by(|a, b| a.representative.shortlex_cmp(&b.representative));
    Ok(QuotientReport { bound, classes })
}

/// For a total monoid, checks that `ε ↦ 1`, `[x] ↦ x` is a bijection from
/// the irreducible words onto the carrier and carries `⋆` to the product.
/// `None` when the monoid is not total.
pub fn total_isomorphism_holds(m: &PartialMonoid) -> Option<bool> {
    if !m.is_total() {
        return None;
    }
    let irr = enumerate_irreducible(m, 2, &Limits::default()).ok()?;
    let phi = |w: &Word| match w.letters() {
        [] => Some(m.identity()),
        [x] => Some(*x),
        _ => None,
    };
    let images: Option<Vec<_>> = irr.iter().map(phi).collect();
    let Some(mut images) = images else {
        return Some(false);
    };
    images.sort();
    images.dedup();
    if images.len() != irr.len() || images.len() != m.len() {
        return Some(false);
    }
    Some(irr.iter().all(|u| {
        irr.iter().all(|v| {
            let uv = star(m, u, v).expect("irreducible operands");
            phi(&uv).is_some() && phi(&uv) == m.multiply(phi(u).unwrap(), phi(v).unwrap())
        })
    }))
}
