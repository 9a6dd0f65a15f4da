//! Confluence of the rewriting system of a partial monoid.
//!
//! Two routes to the same verdict:
//!
//! * **Essential triples.** Every `(x, y, z)` with `(x, y)` and `(y, z)`
//!   defined yields the pair `(a·z, x·b)` with `a = x*y`, `b = y*z`. It is
//!   class B when `(a, z)` is defined (one more step joins both sides), A1 when
//!   not and `a = x`, `b = z` (the two sides coincide), and A0 otherwise. The
//!   system is confluent exactly when no A0 triple exists.
//! * **Generic critical pairs.** All overlap and inclusion ambiguities among
//!   the rule left-hand sides, each checked for a common reduct. Since the
//!   system terminates, that is local confluence and hence confluence.
//!
//! The two are independent implementations and must agree on every valid
//! monoid.

use serde::Serialize;

use crate::monoid::{Elem, PartialMonoid};
use crate::rewriting::{build_rules, NormalForms, Rule};
use crate::words::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PairClass {
    A0,
    A1,
    B,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EssentialTriple {
    pub x: Elem,
    pub y: Elem,
    pub z: Elem,
    /// `x * y`
    pub a: Elem,
    /// `y * z`
    pub b: Elem,
    /// `(a·z, x·b)`
    pub pair: (Word, Word),
    pub class: PairClass,
}

impl EssentialTriple {
    pub fn superposition(&self) -> Word {
        Word::from_letters([self.x, self.y, self.z])
    }
}

/// Every triple with both adjacent products defined, classified, in index
/// order. Distinct middle letters giving the same pair are kept as separate
/// entries.
pub fn essential_critical_pairs(m: &PartialMonoid) -> Vec<EssentialTriple> {
    let mut out = Vec::new();
    for x in m.elements() {
        for y in m.elements() {
            let Some(a) = m.multiply(x, y) else { continue };
            for z in m.elements() {
                let Some(b) = m.multiply(y, z) else { continue };
                let class = if m.is_defined(a, z) {
                    PairClass::B
                } else if a == x && b == z {
                    PairClass::A1
                } else {
                    PairClass::A0
                };
                out.push(EssentialTriple {
                    x,
                    y,
                    z,
                    a,
                    b,
                    pair: (Word::from_letters([a, z]), Word::from_letters([x, b])),
                    class,
                });
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictMethod {
    Essential,
    GenericNewman,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfluenceVerdict {
    pub confluent: bool,
    pub a0_witnesses: Vec<EssentialTriple>,
    pub method: VerdictMethod,
}

/// Confluent exactly when there is no A0 triple; all A0 triples are reported.
pub fn is_confluent(m: &PartialMonoid) -> ConfluenceVerdict {
    let a0_witnesses: Vec<EssentialTriple> = essential_critical_pairs(m)
        .into_iter()
        .filter(|t| t.class == PairClass::A0)
        .collect();
    ConfluenceVerdict {
        confluent: a0_witnesses.is_empty(),
        a0_witnesses,
        method: VerdictMethod::Essential,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AmbiguityKind {
    Overlap,
    Inclusion,
}

/// A critical pair from superposing two rule left-hand sides.
///
/// For an overlap, `first` is the rule matching at the start of the
/// superposition and `second` the one ending it; `pair` is
/// `(u1·r_second, r_first·v2)`. For an inclusion, `first` is the outer rule and
/// `second` sits at `offset` inside it; `pair` is `(r_first, v1·r_second·v2)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenericCriticalPair {
    pub kind: AmbiguityKind,
    pub first: Rule,
    pub second: Rule,
    pub offset: usize,
    pub superposition: Word,
    pub pair: (Word, Word),
}

impl GenericCriticalPair {
    pub fn is_trivial(&self) -> bool {
        self.pair.0 == self.pair.1
    }
}

fn splice(prefix: &[Elem], middle: &Word, suffix: &[Elem]) -> Word {
    prefix
        .iter()
        .chain(middle.letters())
        .chain(suffix)
        .copied()
        .collect()
}

/// All critical pairs of the system by direct superposition of left-hand
/// sides, identity erasure included.
///
/// Overlaps use the usual proper-overlap condition: the second left side
/// starts strictly inside the first and ends strictly after it.
pub fn generic_critical_pairs(m: &PartialMonoid) -> Vec<GenericCriticalPair> {
    let rules: Vec<Rule> = build_rules(m).rules().collect();
    let sides: Vec<(Word, Word)> = rules.iter().map(|r| (r.lhs(), r.rhs())).collect();
    let mut out = Vec::new();

    for (i, (l1, r1)) in sides.iter().enumerate() {
        for (j, (l2, r2)) in sides.iter().enumerate() {
            let (a, b) = (l1.letters(), l2.letters());

            // Overlap: a suffix of l1 equals a proper prefix of l2.
            for start in 1..a.len() {
                let shared = a.len() - start;
                if shared >= b.len() || a[start..] != b[..shared] {
                    continue;
                }
                let superposition = splice(a, &Word::empty(), &b[shared..]);
                out.push(GenericCriticalPair {
                    kind: AmbiguityKind::Overlap,
                    first: rules[i],
                    second: rules[j],
                    offset: start,
                    superposition,
                    pair: (splice(&a[..start], r2, &[]), splice(&[], r1, &b[shared..])),
                });
            }

            // Inclusion: l2 occurs inside l1 (not as the same rule in place).
            if b.len() <= a.len() {
                for offset in 0..=a.len() - b.len() {
                    if i == j && offset == 0 {
                        continue;
                    }
                    if a[offset..offset + b.len()] != *b {
                        continue;
                    }
                    out.push(GenericCriticalPair {
                        kind: AmbiguityKind::Inclusion,
                        first: rules[i],
                        second: rules[j],
                        offset,
                        superposition: l1.clone(),
                        pair: (r1.clone(), splice(&a[..offset], r2, &a[offset + b.len()..])),
                    });
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NewmanReport {
    pub critical_pairs: usize,
    pub non_convergent: Vec<GenericCriticalPair>,
}

impl NewmanReport {
    pub fn confluent(&self) -> bool {
        self.non_convergent.is_empty()
    }
}

/// Checks every generic critical pair for a common reduct.
pub fn newman_report(m: &PartialMonoid) -> NewmanReport {
    let pairs = generic_critical_pairs(m);
    let mut nf = NormalForms::new(m);
    let critical_pairs = pairs.len();
    let non_convergent = pairs
        .into_iter()
        .filter(|p| !nf.joinable(&p.pair.0, &p.pair.1))
        .collect();
    NewmanReport {
        critical_pairs,
        non_convergent,
    }
}

/// Local confluence by critical pairs; equals confluence since every rule
/// shortens words.
pub fn newman_check(m: &PartialMonoid) -> bool {
    newman_report(m).confluent()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::parse_monoid;
    use crate::monoid::tests::{group2, letters_abc, xyz};
    use crate::rewriting::normal_forms;
    use crate::words::parse_word;

    fn e(m: &PartialMonoid, n: &str) -> Elem {
        m.elem(n).unwrap()
    }

    fn class_of(m: &PartialMonoid, x: &str, y: &str, z: &str) -> PairClass {
        essential_critical_pairs(m)
            .into_iter()
            .find(|t| (t.x, t.y, t.z) == (e(m, x), e(m, y), e(m, z)))
            .unwrap()
            .class
    }

    #[test]
    fn xyz_classification() {
        let m = xyz();
        let triples = essential_critical_pairs(&m);
        assert!(triples.iter().all(|t| t.class != PairClass::A0));
        assert_eq!(class_of(&m, "x", "y", "y"), PairClass::B);
        assert_eq!(class_of(&m, "y", "y", "y"), PairClass::B);
        assert_eq!(class_of(&m, "y", "y", "z"), PairClass::B);
        assert_eq!(class_of(&m, "x", "y", "z"), PairClass::A1);
        assert_eq!(class_of(&m, "x", "1", "z"), PairClass::A1);
        assert!(is_confluent(&m).confluent);
    }

    #[test]
    fn letters_abc_a0_witness() {
        let m = letters_abc();
        let t = essential_critical_pairs(&m)
            .into_iter()
            .find(|t| (t.x, t.y, t.z) == (e(&m, "a"), e(&m, "b"), e(&m, "a")))
            .unwrap();
        assert_eq!(t.class, PairClass::A0);
        assert_eq!(t.pair.0, parse_word(&m, "ab a").unwrap());
        assert_eq!(t.pair.1, parse_word(&m, "a ba").unwrap());

        let v = is_confluent(&m);
        assert!(!v.confluent);
        assert!(v
            .a0_witnesses
            .iter()
            .any(|w| w.superposition() == parse_word(&m, "a b a").unwrap()));
    }

    #[test]
    fn identity_middle_is_a1() {
        let m = letters_abc();
        let id = m.identity();
        for t in essential_critical_pairs(&m).iter().filter(|t| t.y == id) {
            if !m.is_defined(t.x, t.z) {
                assert_eq!(t.class, PairClass::A1);
            }
        }
        assert_eq!(class_of(&m, "a", "1", "a"), PairClass::A1);
    }

    #[test]
    fn classes_are_consistent_with_invariants() {
        for m in [xyz(), letters_abc(), group2()] {
            for t in essential_critical_pairs(&m) {
                match t.class {
                    PairClass::A1 => assert_eq!(t.pair.0, t.pair.1),
                    PairClass::B => {
                        let left = m.multiply(t.a, t.z).unwrap();
                        let right = m.multiply(t.x, t.b).unwrap();
                        assert_eq!(left, right);
                    }
                    PairClass::A0 => {
                        assert_ne!(t.pair.0, t.pair.1);
                        let id = m.identity();
                        assert!(![t.x, t.y, t.z, t.a, t.b].contains(&id));
                        assert!(normal_forms(&m, &t.superposition()).len() >= 2);
                    }
                }
            }
        }
    }

    #[test]
    fn total_monoid_is_confluent() {
        let g = group2();
        assert!(is_confluent(&g).confluent);
        assert!(newman_check(&g));
    }

    #[test]
    fn generic_pairs_xyz() {
        let m = xyz();
        let pairs = generic_critical_pairs(&m);
        let xyy = parse_word(&m, "x y y").unwrap();
        assert!(pairs
            .iter()
            .any(|p| p.kind == AmbiguityKind::Overlap && p.superposition == xyy));

        // Identity erasure inside x·1 → x.
        let (x, id) = (e(&m, "x"), m.identity());
        let inc = pairs
            .iter()
            .find(|p| {
                p.kind == AmbiguityKind::Inclusion
                    && p.superposition == Word::from_letters([x, id])
                    && p.second.lhs() == Word::letter(id)
            })
            .unwrap();
        assert_eq!(inc.pair, (Word::letter(x), Word::letter(x)));
        assert!(inc.is_trivial());
    }

    #[test]
    fn generic_pairs_trivial_monoid() {
        let m = parse_monoid("elements: 1\nidentity: 1\n").unwrap();
        let pairs = generic_critical_pairs(&m);
        assert!(!pairs.is_empty());
        assert!(pairs.iter().all(GenericCriticalPair::is_trivial));
        assert!(newman_check(&m));
    }

    #[test]
    fn reconstruct_pairs_from_superposition() {
        for m in [xyz(), letters_abc()] {
            for p in generic_critical_pairs(&m) {
                let (first, second) = (p.first.lhs(), p.second.lhs());
                let s = p.superposition.letters();
                // Both kinds place `first` at 0 and `second` at `offset`.
                let (first_at, second_at) = (0, p.offset);
                assert_eq!(&s[first_at..first_at + first.len()], first.letters());
                assert_eq!(&s[second_at..second_at + second.len()], second.letters());
                let rewrite = |at: usize, rule: &Rule| -> Word {
                    let l = rule.lhs().len();
                    s[..at]
                        .iter()
                        .chain(rule.rhs().letters())
                        .chain(&s[at + l..])
                        .copied()
                        .collect()
                };
                let by_first = rewrite(first_at, &p.first);
                let by_second = rewrite(second_at, &p.second);
                let got = [p.pair.0.clone(), p.pair.1.clone()];
                assert!(got.contains(&by_first) && got.contains(&by_second));
            }
        }
    }

    #[test]
    fn newman_examples() {
        assert!(newman_check(&xyz()));
        let r = newman_report(&letters_abc());
        assert!(!r.confluent());
        assert!(r
            .non_convergent
            .iter()
            .all(|p| p.kind == AmbiguityKind::Overlap));
    }
}
