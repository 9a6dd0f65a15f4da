//! Finite partial monoids.
//!
//! A partial monoid is a carrier with a distinguished identity and a
//! multiplication defined on a subset `dom` of pairs. The identity multiplies
//! with everything, and a triple `(x, y, z)` satisfies: `(x, y)` and
//! `(x*y, z)` are both defined exactly when `(y, z)` and `(x, y*z)` are, in
//! which case the two products agree.
//!
//! Elements are interned to dense indices ([`Elem`]); the rest of the crate
//! speaks indices and only converts back to names for display.

mod generate;
mod parse;

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub use generate::{gen_disjoint_union_monoid, gen_no_common_letters_monoid};
pub use parse::{parse_monoid, parse_monoid_with, serialize_monoid};

/// Dense index of an element of a [`PartialMonoid`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Elem(u32);

impl Elem {
    pub const fn new(index: usize) -> Self {
        Elem(index as u32)
    }

    #[inline]
    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

/// Reserved token for the empty word in word syntax; never an element name.
pub const EMPTY_WORD_TOKEN: &str = "eps";

/// Returns true for tokens over `[A-Za-z0-9_]`, which is the element name syntax.
pub fn is_name_token(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialMonoid {
    names: Vec<String>,
    index: HashMap<String, Elem>,
    identity: Elem,
    /// Row-major `len * len` table; `None` marks a pair outside `dom`.
    table: Vec<Option<Elem>>,
}

/// Incremental construction of a [`PartialMonoid`] table.
///
/// Identity-involving products are filled in on creation; an explicit
/// definition of one of them is accepted only if it agrees.
#[derive(Debug, Clone)]
pub struct MonoidBuilder {
    names: Vec<String>,
    index: HashMap<String, Elem>,
    identity: Elem,
    table: Vec<Option<Elem>>,
    explicit: HashSet<(Elem, Elem)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DefineError {
    /// The pair was already given explicitly.
    Duplicate,
    /// The pair has a forced or previously defined value that differs.
    Conflict {
        expected: Elem,
    },
    IndexOutOfRange(usize),
}

impl MonoidBuilder {
    pub fn new(names: Vec<String>, identity: &str) -> Result<Self> {
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if name == EMPTY_WORD_TOKEN {
                return Err(Error::ReservedName { line: None });
            }
            if !is_name_token(name) {
                return Err(Error::Syntax {
                    line: 0,
                    message: format!("invalid element name `{name}`"),
                });
            }
            if index.insert(name.clone(), Elem::new(i)).is_some() {
                return Err(Error::DuplicateElement {
                    line: None,
                    name: name.clone(),
                });
            }
        }
        let identity = *index.get(identity).ok_or_else(|| Error::UnknownElement {
            line: None,
            name: identity.to_string(),
        })?;
        let n = names.len();
        let mut table = vec![None; n * n];
        for i in 0..n {
            let x = Elem::new(i);
            table[identity.index() * n + i] = Some(x);
            table[i * n + identity.index()] = Some(x);
        }
        Ok(Self {
            names,
            index,
            identity,
            table,
            explicit: HashSet::new(),
        })
    }

    pub fn elem(&self, name: &str) -> Option<Elem> {
        self.index.get(name).copied()
    }

    pub fn name(&self, x: Elem) -> &str {
        &self.names[x.index()]
    }

    pub fn define(&mut self, x: Elem, y: Elem, z: Elem) -> Result<(), DefineError> {
        let n = self.names.len();
        for e in [x, y, z] {
            if e.index() >= n {
                return Err(DefineError::IndexOutOfRange(e.index()));
            }
        }
        if !self.explicit.insert((x, y)) {
            return Err(DefineError::Duplicate);
        }
        let slot = &mut self.table[x.index() * n + y.index()];
        match *slot {
            Some(expected) if expected != z => Err(DefineError::Conflict { expected }),
            _ => {
                *slot = Some(z);
                Ok(())
            }
        }
    }

    pub fn build(self) -> PartialMonoid {
        PartialMonoid {
            names: self.names,
            index: self.index,
            identity: self.identity,
            table: self.table,
        }
    }
}

impl PartialMonoid {
    /// Builds a monoid from a closure over indices. Identity products are
    /// forced regardless of what `product` returns for them.
    pub fn from_fn<F>(names: Vec<String>, identity: usize, mut product: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Option<usize>,
    {
        let n = names.len();
        if identity >= n {
            return Err(Error::IndexOutOfRange(identity));
        }
        let id_name = names[identity].clone();
        let mut builder = MonoidBuilder::new(names, &id_name)?;
        for i in 0..n {
            for j in 0..n {
                if i == identity || j == identity {
                    continue;
                }
                if let Some(k) = product(i, j) {
                    if k >= n {
                        return Err(Error::IndexOutOfRange(k));
                    }
                    builder
                        .define(Elem::new(i), Elem::new(j), Elem::new(k))
                        .expect("fresh non-identity pair");
                }
            }
        }
        Ok(builder.build())
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    #[inline]
    pub fn identity(&self) -> Elem {
        self.identity
    }

    pub fn elements(&self) -> impl DoubleEndedIterator<Item = Elem> + ExactSizeIterator + Clone {
        (0..self.len()).map(Elem::new)
    }

    /// Elements other than the identity, in index order.
    pub fn non_identity(&self) -> impl Iterator<Item = Elem> + Clone + '_ {
        let id = self.identity;
        self.elements().filter(move |&e| e != id)
    }

    pub fn name(&self, x: Elem) -> &str {
        &self.names[x.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn lookup(&self, name: &str) -> Option<Elem> {
        self.index.get(name).copied()
    }

    pub fn elem(&self, name: &str) -> Result<Elem> {
        self.lookup(name).ok_or_else(|| Error::UnknownElement {
            line: None,
            name: name.to_string(),
        })
    }

    /// `x * y` when `(x, y)` is in `dom`.
    #[inline]
    pub fn multiply(&self, x: Elem, y: Elem) -> Option<Elem> {
        self.table[x.index() * self.len() + y.index()]
    }

    #[inline]
    pub fn is_defined(&self, x: Elem, y: Elem) -> bool {
        self.multiply(x, y).is_some()
    }

    /// Name-level multiplication.
    pub fn multiply_names(&self, x: &str, y: &str) -> Result<Option<Elem>> {
        Ok(self.multiply(self.elem(x)?, self.elem(y)?))
    }

    /// All `(x, y, x*y)` with `(x, y)` in `dom`, in lexicographic index order.
    pub fn defined_pairs(&self) -> impl Iterator<Item = (Elem, Elem, Elem)> + '_ {
        self.elements().flat_map(move |x| {
            self.elements()
                .filter_map(move |y| self.multiply(x, y).map(|z| (x, y, z)))
        })
    }

    /// Number of pairs in `dom`.
    pub fn domain_size(&self) -> usize {
        self.table.iter().filter(|e| e.is_some()).count()
    }

    pub fn is_total(&self) -> bool {
        self.table.iter().all(Option::is_some)
    }

    /// Exhaustive check of the partial associativity axiom over all triples.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for x in self.elements() {
            for y in self.elements() {
                for z in self.elements() {
                    if let Some(kind) = self.triple_violation(x, y, z) {
                        violations.push(Violation {
                            x,
                            y,
                            z,
                            kind,
                            message: self.violation_message(x, y, z, kind),
                        });
                    }
                }
            }
        }
        ValidationReport {
            valid: violations.is_empty(),
            violations,
        }
    }

    fn triple_violation(&self, x: Elem, y: Elem, z: Elem) -> Option<ViolationKind> {
        let left = self.multiply(x, y).and_then(|xy| self.multiply(xy, z));
        let right = self.multiply(y, z).and_then(|yz| self.multiply(x, yz));
        match (left, right) {
            (Some(_), None) => Some(ViolationKind::LeftOnly),
            (None, Some(_)) => Some(ViolationKind::RightOnly),
            (Some(l), Some(r)) if l != r => Some(ViolationKind::ValuesDiffer),
            _ => None,
        }
    }

    fn violation_message(&self, x: Elem, y: Elem, z: Elem, kind: ViolationKind) -> String {
        let (xn, yn, zn) = (self.name(x), self.name(y), self.name(z));
        match kind {
            ViolationKind::LeftOnly => {
                format!("({xn}*{yn})*{zn} is defined but {xn}*({yn}*{zn}) is not")
            }
            ViolationKind::RightOnly => {
                format!("{xn}*({yn}*{zn}) is defined but ({xn}*{yn})*{zn} is not")
            }
            ViolationKind::ValuesDiffer => {
                let l = self
                    .multiply(x, y)
                    .and_then(|xy| self.multiply(xy, z))
                    .expect("left side defined");
                let r = self
                    .multiply(y, z)
                    .and_then(|yz| self.multiply(x, yz))
                    .expect("right side defined");
                format!(
                    "({xn}*{yn})*{zn} = {} but {xn}*({yn}*{zn}) = {}",
                    self.name(l),
                    self.name(r)
                )
            }
        }
    }

    /// The total monoid `P ∪ {0}` in which undefined products go to an
    /// absorbing zero. The zero gets index `len()`.
    pub fn totalize(&self) -> TotalMonoid {
        let n = self.len();
        let size = n + 1;
        let zero = Elem::new(n);
        let mut table = vec![zero; size * size];
        for x in 0..n {
            for y in 0..n {
                if let Some(z) = self.table[x * n + y] {
                    table[x * size + y] = z;
                }
            }
        }
        TotalMonoid {
            size,
            zero,
            identity: self.identity,
            table,
        }
    }

    /// Catenary associativity: for `y` other than the identity, `(x, y)` and
    /// `(y, z)` defined force `(x*y, z)` defined. The first failing triple in
    /// index order is returned as a witness.
    pub fn is_catenary(&self) -> CatenaryCheck {
        for x in self.elements() {
            for y in self.non_identity() {
                let Some(xy) = self.multiply(x, y) else {
                    continue;
                };
                for z in self.elements() {
                    if self.is_defined(y, z) && !self.is_defined(xy, z) {
                        return CatenaryCheck {
                            catenary: false,
                            witness: Some([x, y, z]),
                        };
                    }
                }
            }
        }
        CatenaryCheck {
            catenary: true,
            witness: None,
        }
    }

    /// One-sided invertibility of every element, plus a scan of the
    /// consequence that must hold in any valid partial monoid: a
    /// right-invertible `x` has `(y, x)` defined for every `y`, a
    /// left-invertible `x` has `(x, y)` defined for every `y`.
    pub fn invertibility_report(&self) -> InvertibilityReport {
        let id = self.identity;
        let entries: Vec<Invertibility> = self
            .elements()
            .map(|x| Invertibility {
                elem: x,
                right_invertible: self.elements().any(|x2| self.multiply(x, x2) == Some(id)),
                left_invertible: self.elements().any(|x2| self.multiply(x2, x) == Some(id)),
            })
            .collect();
        let mut lemma_violations = Vec::new();
        for e in &entries {
            for y in self.elements() {
                if e.right_invertible && !self.is_defined(y, e.elem) {
                    lemma_violations.push((y, e.elem));
                }
                if e.left_invertible && !self.is_defined(e.elem, y) {
                    lemma_violations.push((e.elem, y));
                }
            }
        }
        InvertibilityReport {
            entries,
            lemma_violations,
        }
    }

    pub fn is_right_invertible(&self, x: Elem) -> bool {
        self.elements()
            .any(|x2| self.multiply(x, x2) == Some(self.identity))
    }

    pub fn is_left_invertible(&self, x: Elem) -> bool {
        self.elements()
            .any(|x2| self.multiply(x2, x) == Some(self.identity))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    /// `(x*y)*z` defined, `x*(y*z)` not.
    LeftOnly,
    /// `x*(y*z)` defined, `(x*y)*z` not.
    RightOnly,
    /// Both defined with different values.
    ValuesDiffer,
}

impl ViolationKind {
    pub fn code(self) -> &'static str {
        match self {
            ViolationKind::LeftOnly => "left-only",
            ViolationKind::RightOnly => "right-only",
            ViolationKind::ValuesDiffer => "values-differ",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub x: Elem,
    pub y: Elem,
    pub z: Elem,
    pub kind: ViolationKind,
    pub message: String,
}

impl Violation {
    pub fn triple(&self) -> [Elem; 3] {
        [self.x, self.y, self.z]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn first_witness(&self) -> Option<[Elem; 3]> {
        self.violations.first().map(Violation::triple)
    }
}

/// A total monoid table, produced by [`PartialMonoid::totalize`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotalMonoid {
    size: usize,
    zero: Elem,
    identity: Elem,
    table: Vec<Elem>,
}

impl TotalMonoid {
    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.size).map(Elem::new)
    }

    #[inline]
    pub fn multiply(&self, x: Elem, y: Elem) -> Elem {
        self.table[x.index() * self.size + y.index()]
    }

    /// Triples on which the total product fails to associate, in index order.
    pub fn associativity_witnesses(&self) -> Vec<[Elem; 3]> {
        let mut out = Vec::new();
        for x in self.elements() {
            for y in self.elements() {
                let xy = self.multiply(x, y);
                for z in self.elements() {
                    if self.multiply(xy, z) != self.multiply(x, self.multiply(y, z)) {
                        out.push([x, y, z]);
                    }
                }
            }
        }
        out
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_witnesses().is_empty()
    }

    pub fn zero_is_absorbing(&self) -> bool {
        self.elements().all(|x| {
            self.multiply(x, self.zero) == self.zero && self.multiply(self.zero, x) == self.zero
        })
    }

    /// True when every defined product of `partial` has the same value here.
    pub fn extends(&self, partial: &PartialMonoid) -> bool {
        partial
            .defined_pairs()
            .all(|(x, y, z)| self.multiply(x, y) == z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CatenaryCheck {
    pub catenary: bool,
    pub witness: Option<[Elem; 3]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Invertibility {
    pub elem: Elem,
    pub left_invertible: bool,
    pub right_invertible: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvertibilityReport {
    pub entries: Vec<Invertibility>,
    /// Pairs `(y, x)` that should be in `dom` by the invertibility lemma but
    /// are not. Always empty for a valid monoid.
    pub lemma_violations: Vec<(Elem, Elem)>,
}

impl fmt::Display for PartialMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_monoid(self))
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) const XYZ: &str = "elements: 1 x y z\nidentity: 1\nx y = x\ny y = y\ny z = z\n";

    pub(crate) fn xyz() -> PartialMonoid {
        parse_monoid(XYZ).unwrap()
    }

    pub(crate) fn group2() -> PartialMonoid {
        parse_monoid("elements: 1 g\nidentity: 1\ng g = 1\n").unwrap()
    }

    pub(crate) fn letters_abc() -> PartialMonoid {
        gen_no_common_letters_monoid(&['a', 'b', 'c'], &crate::Limits::default()).unwrap()
    }

    fn e(m: &PartialMonoid, name: &str) -> Elem {
        m.elem(name).unwrap()
    }

    #[test]
    fn xyz_shape() {
        let m = xyz();
        assert_eq!(m.len(), 4);
        assert_eq!(m.domain_size(), 7 + 3);
        let nontrivial: Vec<_> = m
            .defined_pairs()
            .filter(|&(x, y, _)| x != m.identity() && y != m.identity())
            .map(|(x, y, z)| (m.name(x), m.name(y), m.name(z)))
            .collect();
        assert_eq!(
            nontrivial,
            [("x", "y", "x"), ("y", "y", "y"), ("y", "z", "z")]
        );
    }

    #[test]
    fn multiply_examples() {
        let m = xyz();
        assert_eq!(m.multiply(e(&m, "x"), e(&m, "y")), Some(e(&m, "x")));
        for x in m.elements() {
            assert_eq!(m.multiply(x, m.identity()), Some(x));
            assert_eq!(m.multiply(m.identity(), x), Some(x));
        }
        let p = letters_abc();
        assert_eq!(p.multiply_names("ab", "a").unwrap(), None);
        assert!(matches!(
            p.multiply_names("ab", "q"),
            Err(Error::UnknownElement { .. })
        ));
    }

    #[test]
    fn validate_examples() {
        assert!(xyz().validate().valid);
        assert!(letters_abc().validate().valid);
        let bad = parse_monoid("elements: 1 x y a\nidentity: 1\nx y = a\na a = a\n").unwrap();
        let report = bad.validate();
        assert!(!report.valid);
        let w = report.first_witness().unwrap();
        assert_eq!(w, [e(&bad, "x"), e(&bad, "y"), e(&bad, "a")]);
        assert_eq!(report.violations[0].kind, ViolationKind::LeftOnly);
    }

    #[test]
    fn invalid_table_with_right_only_witnesses() {
        // (x,y,a) itself is consistent here (neither side defined); the
        // failures are at (y,x,y) and (y,y,a).
        let m = parse_monoid("elements: 1 x y a\nidentity: 1\nx y = a\ny a = a\n").unwrap();
        let report = m.validate();
        assert!(!report.valid);
        let witnesses: Vec<_> = report.violations.iter().map(Violation::triple).collect();
        assert_eq!(
            witnesses,
            [
                [e(&m, "y"), e(&m, "x"), e(&m, "y")],
                [e(&m, "y"), e(&m, "y"), e(&m, "a")]
            ]
        );
        assert!(report
            .violations
            .iter()
            .all(|v| v.kind == ViolationKind::RightOnly));
    }

    #[test]
    fn totalize_examples() {
        let m = xyz();
        let t = m.totalize();
        assert_eq!(t.len(), 5);
        assert_eq!(t.multiply(e(&m, "x"), e(&m, "z")), t.zero());
        assert!(t.zero_is_absorbing());
        assert!(t.extends(&m));
        assert!(t.is_associative());

        let triv = parse_monoid("elements: 1\nidentity: 1\n").unwrap();
        let t = triv.totalize();
        assert_eq!(t.len(), 2);
        assert_eq!(t.multiply(t.zero(), t.identity()), t.zero());
        assert_eq!(t.multiply(t.identity(), t.identity()), t.identity());
    }

    #[test]
    fn totalization_finds_the_same_witnesses() {
        let bad = parse_monoid("elements: 1 x y a\nidentity: 1\nx y = a\na a = a\n").unwrap();
        let via_scan: Vec<_> = bad
            .validate()
            .violations
            .iter()
            .map(Violation::triple)
            .collect();
        assert_eq!(bad.totalize().associativity_witnesses(), via_scan);
    }

    #[test]
    fn catenary_examples() {
        let g = group2();
        assert!(g.is_total());
        assert!(g.is_catenary().catenary);
        assert!(!letters_abc().is_catenary().catenary);
        let m = xyz();
        let c = m.is_catenary();
        assert!(!c.catenary);
        assert_eq!(c.witness, Some([e(&m, "x"), e(&m, "y"), e(&m, "z")]));
    }

    #[test]
    fn invertibility_examples() {
        let g = group2();
        let r = g.invertibility_report();
        let ge = r.entries[1];
        assert!(ge.left_invertible && ge.right_invertible);
        assert!(r.lemma_violations.is_empty());

        for m in [xyz(), letters_abc()] {
            let r = m.invertibility_report();
            for inv in &r.entries {
                let expect = inv.elem == m.identity();
                assert_eq!(inv.left_invertible, expect);
                assert_eq!(inv.right_invertible, expect);
            }
            assert!(r.lemma_violations.is_empty());
        }
    }

    #[test]
    fn builder_rejects_bad_names() {
        assert!(matches!(
            MonoidBuilder::new(vec!["1".into(), "eps".into()], "1"),
            Err(Error::ReservedName { .. })
        ));
        assert!(matches!(
            MonoidBuilder::new(vec!["1".into(), "1".into()], "1"),
            Err(Error::DuplicateElement { .. })
        ));
        assert!(matches!(
            MonoidBuilder::new(vec!["1".into()], "e"),
            Err(Error::UnknownElement { .. })
        ));
    }

    #[test]
    fn builder_identity_products_must_agree() {
        let mut b = MonoidBuilder::new(vec!["1".into(), "x".into()], "1").unwrap();
        let (one, x) = (Elem::new(0), Elem::new(1));
        assert_eq!(b.define(x, one, x), Ok(()));
        assert_eq!(b.define(x, one, x), Err(DefineError::Duplicate));
        assert_eq!(
            b.define(one, x, one),
            Err(DefineError::Conflict { expected: x })
        );
    }
}
