//! The string rewriting system of a partial monoid and its left-standard
//! reduction strategy.
//!
//! Rules are `x·y → x*y` for every defined pair and `1 → ε` for the identity.
//! Every rule shortens a word, so all reduction graphs are finite DAGs.
//!
//! The left-standard strategy erases identity letters, then repeatedly
//! contracts the leftmost adjacent defined pair (dropping it entirely when
//! the product is the identity). It always reaches a single normal form,
//! [`lstd`], which is also one of the normal forms of the full system.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::rc::Rc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monoid::{Elem, PartialMonoid};
use crate::words::{is_irreducible, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ProductRule {
    pub left: Elem,
    pub right: Elem,
    pub result: Elem,
}

/// One rule of the system: a product rule or the identity erasure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Rule {
    Product(ProductRule),
    EraseIdentity { identity: Elem },
}

impl Rule {
    pub fn lhs(&self) -> Word {
        match *self {
            Rule::Product(p) => Word::from_letters([p.left, p.right]),
            Rule::EraseIdentity { identity } => Word::letter(identity),
        }
    }

    pub fn rhs(&self) -> Word {
        match *self {
            Rule::Product(p) => Word::letter(p.result),
            Rule::EraseIdentity { .. } => Word::empty(),
        }
    }

    pub fn describe(&self, m: &PartialMonoid) -> String {
        format!("{}→{}", self.lhs().render(m), rhs_name(&self.rhs(), m))
    }
}

fn rhs_name(w: &Word, m: &PartialMonoid) -> String {
    if w.is_empty() {
        "ε".to_string()
    } else {
        w.render(m)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuleSet {
    pub product_rules: Vec<ProductRule>,
    pub identity: Elem,
}

impl RuleSet {
    /// Product rules followed by the identity erasure.
    pub fn rules(&self) -> impl Iterator<Item = Rule> + '_ {
        self.product_rules
            .iter()
            .map(|&p| Rule::Product(p))
            .chain(std::iter::once(Rule::EraseIdentity {
                identity: self.identity,
            }))
    }

    pub fn len(&self) -> usize {
        self.product_rules.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// One product rule per pair in the domain (lexicographic order), plus `1 → ε`.
pub fn build_rules(m: &PartialMonoid) -> RuleSet {
    RuleSet {
        product_rules: m
            .defined_pairs()
            .map(|(left, right, result)| ProductRule {
                left,
                right,
                result,
            })
            .collect(),
        identity: m.identity(),
    }
}

/// A single rule application.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    pub position: usize,
    pub rule: Rule,
    pub result: Word,
}

/// Every rule application on `w`, by position; at a given position the
/// product rule comes before the identity erasure.
pub fn successors(m: &PartialMonoid, w: &Word) -> Vec<Step> {
    let id = m.identity();
    let letters = w.letters();
    let mut out = Vec::new();
    for i in 0..letters.len() {
        if i + 1 < letters.len() {
            if let Some(p) = m.multiply(letters[i], letters[i + 1]) {
                let mut r = Vec::with_capacity(letters.len() - 1);
                r.extend_from_slice(&letters[..i]);
                r.push(p);
                r.extend_from_slice(&letters[i + 2..]);
                out.push(Step {
                    position: i,
                    rule: Rule::Product(ProductRule {
                        left: letters[i],
                        right: letters[i + 1],
                        result: p,
                    }),
                    result: Word::from_letters(r),
                });
            }
        }
        if letters[i] == id {
            let mut r = letters.to_vec();
            r.remove(i);
            out.push(Step {
                position: i,
                rule: Rule::EraseIdentity { identity: id },
                result: Word::from_letters(r),
            });
        }
    }
    out
}

/// All single-step reducts of `w` with their rewrite position. Empty exactly
/// when `w` is irreducible.
pub fn one_step_reductions(m: &PartialMonoid, w: &Word) -> BTreeSet<(usize, Word)> {
    successors(m, w)
        .into_iter()
        .map(|s| (s.position, s.result))
        .collect()
}

/// Memoized normal-form sets, shareable across many queries on one monoid.
pub struct NormalForms<'m> {
    m: &'m PartialMonoid,
    memo: HashMap<Word, Rc<BTreeSet<Word>>>,
}

impl<'m> NormalForms<'m> {
    pub fn new(m: &'m PartialMonoid) -> Self {
        Self {
            m,
            memo: HashMap::new(),
        }
    }

    pub fn of(&mut self, w: &Word) -> Rc<BTreeSet<Word>> {
        if let Some(hit) = self.memo.get(w) {
            return Rc::clone(hit);
        }
        let succ = successors(self.m, w);
        let set = if succ.is_empty() {
            BTreeSet::from([w.clone()])
        } else {
            let mut acc = BTreeSet::new();
            let mut seen = BTreeSet::new();
            for s in succ {
                if seen.insert(s.result.clone()) {
                    acc.extend(self.of(&s.result).iter().cloned());
                }
            }
            acc
        };
        let set = Rc::new(set);
        self.memo.insert(w.clone(), Rc::clone(&set));
        set
    }

    /// The two words have a common reduct.
    pub fn joinable(&mut self, u: &Word, v: &Word) -> bool {
        let a = self.of(u);
        let b = self.of(v);
        !a.is_disjoint(&b)
    }

    pub fn cached(&self) -> usize {
        self.memo.len()
    }
}

/// Every normal form reachable from `w`.
pub fn normal_forms(m: &PartialMonoid, w: &Word) -> BTreeSet<Word> {
    let set = NormalForms::new(m).of(w);
    Rc::try_unwrap(set).unwrap_or_else(|rc| (*rc).clone())
}

/// Erases every identity letter.
pub fn strip_identities(m: &PartialMonoid, w: &Word) -> Word {
    let id = m.identity();
    w.letters().iter().copied().filter(|&x| x != id).collect()
}

/// `w = u·x·y·v` where `u·x` is the longest irreducible prefix of `w` and
/// `(x, y)` is the leftmost adjacent pair in the domain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LstdDecomposition {
    pub u: Word,
    pub x: Elem,
    pub y: Elem,
    pub v: Word,
}

impl LstdDecomposition {
    /// `u·x`, the maximum irreducible prefix.
    pub fn max_irreducible_prefix(&self) -> Word {
        let mut p = self.u.clone();
        p.push(self.x);
        p
    }
}

pub fn left_standard_decomposition(m: &PartialMonoid, w: &Word) -> Result<LstdDecomposition> {
    let letters = w.letters();
    if letters.contains(&m.identity()) {
        return Err(Error::ContainsIdentity(w.render(m)));
    }
    let i = letters
        .windows(2)
        .position(|p| m.is_defined(p[0], p[1]))
        .ok_or_else(|| Error::AlreadyIrreducible(w.render(m)))?;
    Ok(LstdDecomposition {
        u: Word::from_letters(letters[..i].iter().copied()),
        x: letters[i],
        y: letters[i + 1],
        v: Word::from_letters(letters[i + 2..].iter().copied()),
    })
}

/// One move of the left-standard strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LstMove {
    /// Erase the identity letter at `position`.
    EraseIdentity { position: usize },
    /// Drop the pair `x·y` at `position`, whose product is the identity.
    Cancel { position: usize, x: Elem, y: Elem },
    /// Replace the pair `x·y` at `position` by its product.
    Contract {
        position: usize,
        x: Elem,
        y: Elem,
        product: Elem,
    },
}

impl LstMove {
    pub fn position(&self) -> usize {
        match *self {
            LstMove::EraseIdentity { position }
            | LstMove::Cancel { position, .. }
            | LstMove::Contract { position, .. } => position,
        }
    }

    pub fn describe(&self, m: &PartialMonoid) -> String {
        match *self {
            LstMove::EraseIdentity { .. } => format!("{}→ε", m.name(m.identity())),
            LstMove::Cancel { x, y, .. } => format!("{}·{}→ε", m.name(x), m.name(y)),
            LstMove::Contract { x, y, product, .. } => {
                format!("{}·{}→{}", m.name(x), m.name(y), m.name(product))
            }
        }
    }
}

/// The next left-standard move on `w` and its result, or `None` when `w` is
/// irreducible.
pub fn left_standard_move(m: &PartialMonoid, w: &Word) -> Option<(LstMove, Word)> {
    let id = m.identity();
    let letters = w.letters();
    if let Some(position) = letters.iter().position(|&x| x == id) {
        let mut r = letters.to_vec();
        r.remove(position);
        return Some((LstMove::EraseIdentity { position }, Word::from_letters(r)));
    }
    let d = left_standard_decomposition(m, w).ok()?;
    let position = d.u.len();
    let product = m.multiply(d.x, d.y).expect("decomposition pair is defined");
    let mut r = d.u.into_letters();
    let mv = if product == id {
        LstMove::Cancel {
            position,
            x: d.x,
            y: d.y,
        }
    } else {
        r.push(product);
        LstMove::Contract {
            position,
            x: d.x,
            y: d.y,
            product,
        }
    };
    r.extend_from_slice(d.v.letters());
    Some((mv, Word::from_letters(r)))
}

/// One step of the left-standard strategy: erase the leftmost identity if
/// there is one, otherwise act on the left-standard decomposition `(u,x,y,v)`
/// giving `v` when `x*y` is the identity and `u·(x*y)·v` otherwise.
pub fn left_standard_step(m: &PartialMonoid, w: &Word) -> Result<Word> {
    left_standard_move(m, w)
        .map(|(_, r)| r)
        .ok_or_else(|| Error::AlreadyIrreducible(w.render(m)))
}

/// Successors of `w` under the left-standard relation taken as a union of
/// relations: erasure of any identity occurrence, or, on identity-free words,
/// the single decomposition step. Used to check that the strategy's normal
/// form does not depend on the erasure schedule.
pub fn left_standard_successors(m: &PartialMonoid, w: &Word) -> Vec<Word> {
    let id = m.identity();
    let letters = w.letters();
    let erasures: Vec<Word> = letters
        .iter()
        .enumerate()
        .filter(|&(_, &x)| x == id)
        .map(|(i, _)| {
            let mut r = letters.to_vec();
            r.remove(i);
            Word::from_letters(r)
        })
        .collect();
    if !erasures.is_empty() {
        return erasures;
    }
    left_standard_step(m, w).into_iter().collect()
}

/// The left-standard normal form of `w`.
pub fn lstd(m: &PartialMonoid, w: &Word) -> Word {
    let mut word = strip_identities(m, w);
    lstd_identity_free(m, word.letters_mut());
    word
}

/// Runs the contraction phase in place. `letters[..=i]` stays irreducible, so
/// after a contraction at `i` the next leftmost defined pair starts at `i - 1`
/// or later.
fn lstd_identity_free(m: &PartialMonoid, letters: &mut Vec<Elem>) {
    let id = m.identity();
    let mut i = 0;
    while i + 1 < letters.len() {
        match m.multiply(letters[i], letters[i + 1]) {
            None => i += 1,
            Some(p) if p == id => {
                letters.drain(i..i + 2);
                i = i.saturating_sub(1);
            }
            Some(p) => {
                letters[i] = p;
                letters.remove(i + 1);
                i = i.saturating_sub(1);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub word: Word,
    pub applied: LstMove,
    pub result: Word,
}

/// The sequence of left-standard moves from a word to its normal form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionTrace {
    pub start: Word,
    pub steps: Vec<TraceStep>,
}

impl ReductionTrace {
    pub fn result(&self) -> &Word {
        self.steps.last().map_or(&self.start, |s| &s.result)
    }

    /// One line per step, `<word>  --[rule@pos]-->`, then the normal form.
    pub fn render_text(&self, m: &PartialMonoid) -> String {
        let mut out = String::new();
        for s in &self.steps {
            out.push_str(&format!(
                "{}  --[{}@{}]-->\n",
                s.word.render(m),
                s.applied.describe(m),
                s.applied.position()
            ));
        }
        out.push_str(&self.result().render(m));
        out.push('\n');
        out
    }

    /// One JSON object per step.
    pub fn render_jsonl(&self, m: &PartialMonoid) -> String {
        let names = |w: &Word| -> Vec<&str> { w.letters().iter().map(|&x| m.name(x)).collect() };
        let mut out = String::new();
        for (i, s) in self.steps.iter().enumerate() {
            let line = serde_json::json!({
                "step": i,
                "word": names(&s.word),
                "rule": s.applied.describe(m),
                "position": s.applied.position(),
                "result": names(&s.result),
            });
            out.push_str(&line.to_string());
            out.push('\n');
        }
        out
    }
}

/// [`lstd`] with every move recorded: all identity erasures first, then the
/// leftmost contractions.
pub fn lstd_traced(m: &PartialMonoid, w: &Word) -> ReductionTrace {
    let mut steps = Vec::new();
    let mut current = w.clone();
    while let Some((applied, next)) = left_standard_move(m, &current) {
        steps.push(TraceStep {
            word: std::mem::replace(&mut current, next.clone()),
            applied,
            result: next,
        });
    }
    ReductionTrace {
        start: w.clone(),
        steps,
    }
}

/// Outcome of a bounded convertibility search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", content = "path", rename_all = "kebab-case")]
pub enum Convertibility {
    /// A path of single steps, each a reduction or an expansion, from the
    /// first word to the second.
    Yes(Vec<Word>),
    /// No path within the length cap. Not a proof of non-convertibility.
    Unknown,
}

impl Convertibility {
    pub fn is_yes(&self) -> bool {
        matches!(self, Convertibility::Yes(_))
    }
}

impl fmt::Display for Convertibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Convertibility::Yes(p) => write!(f, "yes ({} steps)", p.len().saturating_sub(1)),
            Convertibility::Unknown => f.write_str("unknown"),
        }
    }
}

/// Breadth-first search over the symmetric one-step relation, restricted to
/// words no longer than a cap. Holds the inverse product table so repeated
/// queries on one monoid stay cheap.
pub struct BoundedCongruence<'m> {
    m: &'m PartialMonoid,
    preimages: Vec<Vec<(Elem, Elem)>>,
}

impl<'m> BoundedCongruence<'m> {
    pub fn new(m: &'m PartialMonoid) -> Self {
        let mut preimages = vec![Vec::new(); m.len()];
        for (x, y, z) in m.defined_pairs() {
            preimages[z.index()].push((x, y));
        }
        Self { m, preimages }
    }

    /// Reducts and expansions of `w`; expansions only up to `max_len`.
    pub fn neighbours(&self, w: &Word, max_len: usize) -> Vec<Word> {
        let mut out: Vec<Word> = successors(self.m, w)
            .into_iter()
            .map(|s| s.result)
            .collect();
        if w.len() < max_len {
            let letters = w.letters();
            for (i, &c) in letters.iter().enumerate() {
                for &(x, y) in &self.preimages[c.index()] {
                    let mut r = Vec::with_capacity(letters.len() + 1);
                    r.extend_from_slice(&letters[..i]);
                    r.push(x);
                    r.push(y);
                    r.extend_from_slice(&letters[i + 1..]);
                    out.push(Word::from_letters(r));
                }
            }
            for j in 0..=letters.len() {
                let mut r = letters.to_vec();
                r.insert(j, self.m.identity());
                out.push(Word::from_letters(r));
            }
        }
        out
    }

    /// Bidirectional search for a conversion path from `u` to `v` through
    /// words of length at most `max_len`.
    pub fn search(&self, u: &Word, v: &Word, max_len: usize) -> Convertibility {
        if u.len() > max_len || v.len() > max_len {
            return Convertibility::Unknown;
        }
        if u == v {
            return Convertibility::Yes(vec![u.clone()]);
        }
        let mut fwd: HashMap<Word, Option<Word>> = HashMap::from([(u.clone(), None)]);
        let mut bwd: HashMap<Word, Option<Word>> = HashMap::from([(v.clone(), None)]);
        let mut fwd_frontier = VecDeque::from([u.clone()]);
        let mut bwd_frontier = VecDeque::from([v.clone()]);

        while !fwd_frontier.is_empty() && !bwd_frontier.is_empty() {
            let forward = fwd_frontier.len() <= bwd_frontier.len();
            let (frontier, seen, other) = if forward {
                (&mut fwd_frontier, &mut fwd, &bwd)
            } else {
                (&mut bwd_frontier, &mut bwd, &fwd)
            };
            let mut next = VecDeque::new();
            let mut meet = None;
            'level: for w in frontier.drain(..) {
                for n in self.neighbours(&w, max_len) {
                    if seen.contains_key(&n) {
                        continue;
                    }
                    seen.insert(n.clone(), Some(w.clone()));
                    if other.contains_key(&n) {
                        meet = Some(n);
                        break 'level;
                    }
                    next.push_back(n);
                }
            }
            if let Some(meet) = meet {
                return Convertibility::Yes(join_paths(&fwd, &bwd, meet));
            }
            *frontier = next;
        }
        Convertibility::Unknown
    }
}

fn join_paths(
    fwd: &HashMap<Word, Option<Word>>,
    bwd: &HashMap<Word, Option<Word>>,
    meet: Word,
) -> Vec<Word> {
    let mut path = Vec::new();
    let mut cur = Some(meet.clone());
    while let Some(w) = cur {
        cur = fwd[&w].clone();
        path.push(w);
    }
    path.reverse();
    let mut cur = bwd[&meet].clone();
    while let Some(w) = cur {
        cur = bwd[&w].clone();
        path.push(w);
    }
    path
}

/// Searches for `u ⟺* v` through words of length at most `max_len`, which
/// defaults to `|u| + |v|`.
pub fn convertible_bounded(
    m: &PartialMonoid,
    u: &Word,
    v: &Word,
    max_len: Option<usize>,
) -> Convertibility {
    let cap = max_len.unwrap_or(u.len() + v.len());
    BoundedCongruence::new(m).search(u, v, cap)
}

/// True when `a` and `b` differ by one rewrite step in either direction.
pub fn is_single_conversion(m: &PartialMonoid, a: &Word, b: &Word) -> bool {
    successors(m, a).iter().any(|s| &s.result == b)
        || successors(m, b).iter().any(|s| &s.result == a)
}

/// Checks a conversion path: right endpoints, each link a single step.
pub fn is_conversion_path(m: &PartialMonoid, path: &[Word], u: &Word, v: &Word) -> bool {
    path.first() == Some(u)
        && path.last() == Some(v)
        && path
            .windows(2)
            .all(|p| is_single_conversion(m, &p[0], &p[1]))
}

/// Irreducibility check returning an error naming the word.
pub(crate) fn require_irreducible(m: &PartialMonoid, w: &Word) -> Result<()> {
    if is_irreducible(m, w) {
        Ok(())
    } else {
        Err(Error::NotIrreducible(w.render(m)))
    }
}
