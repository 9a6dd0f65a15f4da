//! Binary trees over irreducible words, the bracket-moving rule
//! `(t1 t2) t3 → t1 (t2 t3)`, and evaluation into `(Irr, ⋆)`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::monoid::{PartialMonoid, EMPTY_WORD_TOKEN};
use crate::rewriting::{lstd, require_irreducible, BoundedCongruence, Convertibility};
use crate::words::Word;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tree {
    Leaf(Word),
    Node(Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn leaf(w: Word) -> Self {
        Tree::Leaf(w)
    }

    pub fn node(l: Tree, r: Tree) -> Self {
        Tree::Node(Box::new(l), Box::new(r))
    }

    /// Number of leaves.
    pub fn leaves(&self) -> usize {
        match self {
            Tree::Leaf(_) => 1,
            Tree::Node(l, r) => l.leaves() + r.leaves(),
        }
    }

    /// Leaf labels from left to right.
    pub fn leaf_labels(&self) -> Vec<&Word> {
        fn go<'a>(t: &'a Tree, out: &mut Vec<&'a Word>) {
            match t {
                Tree::Leaf(w) => out.push(w),
                Tree::Node(l, r) => {
                    go(l, out);
                    go(r, out);
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }

    /// Total number of letters over all leaf labels.
    pub fn letter_count(&self) -> usize {
        self.leaf_labels().iter().map(|w| w.len()).sum()
    }

    /// `rk(leaf) = 0`, `rk(t1 t2) = rk(t1) + rk(t2) + ℓ(t1) − 1`.
    pub fn rank(&self) -> usize {
        match self {
            Tree::Leaf(_) => 0,
            Tree::Node(l, r) => l.rank() + r.rank() + l.leaves() - 1,
        }
    }

    /// Every left subtree is a leaf.
    pub fn is_right_comb(&self) -> bool {
        match self {
            Tree::Leaf(_) => true,
            Tree::Node(l, r) => matches!(**l, Tree::Leaf(_)) && r.is_right_comb(),
        }
    }

    /// All results of one rewrite `(t1 t2) t3 → t1 (t2 t3)` at any position.
    pub fn ass_one_step(&self) -> BTreeSet<Tree> {
        let mut out = BTreeSet::new();
        if let Tree::Node(l, r) = self {
            if let Tree::Node(a, b) = &**l {
                out.insert(Tree::node(
                    (**a).clone(),
                    Tree::node((**b).clone(), (**r).clone()),
                ));
            }
            for l2 in l.ass_one_step() {
                out.insert(Tree::node(l2, (**r).clone()));
            }
            for r2 in r.ass_one_step() {
                out.insert(Tree::node((**l).clone(), r2));
            }
        }
        out
    }

    /// The normal form, by rewriting until no redex is left.
    pub fn right_comb(&self) -> Tree {
        let mut t = self.clone();
        while let Some(next) = t.ass_one_step().into_iter().next() {
            t = next;
        }
        t
    }

    /// Every tree reachable by zero or more rewrites, `self` included.
    pub fn ass_reachable(&self) -> BTreeSet<Tree> {
        let mut seen = BTreeSet::from([self.clone()]);
        let mut stack = vec![self.clone()];
        while let Some(t) = stack.pop() {
            for n in t.ass_one_step() {
                if seen.insert(n.clone()) {
                    stack.push(n);
                }
            }
        }
        seen
    }

    /// Renders leaves by name: a one-letter leaf as its name, others as
    /// `[a b]`, the empty word as `eps`.
    pub fn display<'a>(&'a self, m: &'a PartialMonoid) -> TreeDisplay<'a> {
        TreeDisplay { tree: self, m }
    }

    pub fn render(&self, m: &PartialMonoid) -> String {
        self.display(m).to_string()
    }
}

/// The right comb `x1 (x2 (… xn))` on the given labels. Panics on no labels.
pub fn comb(labels: &[Word]) -> Tree {
    let (last, rest) = labels.split_last().expect("a tree has at least one leaf");
    rest.iter().rev().fold(Tree::leaf(last.clone()), |acc, w| {
        Tree::node(Tree::leaf(w.clone()), acc)
    })
}

/// Every bracketing of the given leaf sequence. Panics on no labels.
pub fn all_bracketings(labels: &[Word]) -> Vec<Tree> {
    assert!(!labels.is_empty(), "a tree has at least one leaf");
    if labels.len() == 1 {
        return vec![Tree::leaf(labels[0].clone())];
    }
    let mut out = Vec::new();
    for k in 1..labels.len() {
        let lefts = all_bracketings(&labels[..k]);
        let rights = all_bracketings(&labels[k..]);
        for l in &lefts {
            for r in &rights {
                out.push(Tree::node(l.clone(), r.clone()));
            }
        }
    }
    out
}

pub struct TreeDisplay<'a> {
    tree: &'a Tree,
    m: &'a PartialMonoid,
}

impl fmt::Display for TreeDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tree {
            Tree::Leaf(w) if w.len() == 1 => f.write_str(self.m.name(w.letters()[0])),
            Tree::Leaf(w) if w.is_empty() => f.write_str(EMPTY_WORD_TOKEN),
            Tree::Leaf(w) => write!(f, "[{}]", w.render_plain(self.m)),
            Tree::Node(l, r) => write!(f, "({} {})", l.display(self.m), r.display(self.m)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token<'a> {
    Open,
    Close,
    LBracket,
    RBracket,
    Name(&'a str),
}

fn tokenize(text: &str) -> Vec<(usize, Token<'_>)> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        let tok = match c {
            '(' => Token::Open,
            ')' => Token::Close,
            '[' => Token::LBracket,
            ']' => Token::RBracket,
            c if c.is_whitespace() => {
                chars.next();
                continue;
            }
            _ => {
                let mut end = text.len();
                while let Some(&(j, c)) = chars.peek() {
                    if c.is_whitespace() || "()[]".contains(c) {
                        end = j;
                        break;
                    }
                    chars.next();
                }
                out.push((i, Token::Name(&text[i..end])));
                continue;
            }
        };
        chars.next();
        out.push((i, tok));
    }
    out
}

struct TreeParser<'a, 'm> {
    m: &'m PartialMonoid,
    tokens: Vec<(usize, Token<'a>)>,
    pos: usize,
    end: usize,
}

impl TreeParser<'_, '_> {
    fn err(&self, message: impl Into<String>) -> Error {
        let offset = self.tokens.get(self.pos).map_or(self.end, |t| t.0);
        Error::TreeSyntax {
            offset,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<&Token<'_>> {
        self.tokens.get(self.pos).map(|t| &t.1)
    }

    fn name(&self, name: &str) -> Result<crate::monoid::Elem> {
        self.m
            .lookup(name)
            .ok_or_else(|| self.err(format!("unknown element `{name}`")))
    }

    fn tree(&mut self) -> Result<Tree> {
        match self.peek() {
            Some(Token::Open) => {
                self.pos += 1;
                let l = self.tree()?;
                let r = self.tree()?;
                match self.peek() {
                    Some(Token::Close) => {
                        self.pos += 1;
                        Ok(Tree::node(l, r))
                    }
                    _ => Err(self.err("expected `)` after two subtrees")),
                }
            }
            Some(Token::LBracket) => {
                self.pos += 1;
                let mut w = Word::empty();
                loop {
                    match self.peek() {
                        Some(Token::RBracket) => {
                            self.pos += 1;
                            return Ok(Tree::leaf(w));
                        }
                        Some(Token::Name(n)) => {
                            let n = *n;
                            w.push(self.name(n)?);
                            self.pos += 1;
                        }
                        _ => return Err(self.err("expected a name or `]`")),
                    }
                }
            }
            Some(Token::Name(n)) if *n == EMPTY_WORD_TOKEN => {
                self.pos += 1;
                Ok(Tree::leaf(Word::empty()))
            }
            Some(Token::Name(n)) => {
                let x = self.name(n)?;
                self.pos += 1;
                Ok(Tree::leaf(Word::letter(x)))
            }
            Some(Token::Close) => Err(self.err("unexpected `)`")),
            Some(Token::RBracket) => Err(self.err("unexpected `]`")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses a fully bracketed tree: `(l r)` for a node, an element name for a
/// one-letter leaf, `[a b]` for a longer leaf, `eps` for the empty leaf.
/// Leaf labels are not checked for irreducibility here.
pub fn parse_tree(m: &PartialMonoid, text: &str) -> Result<Tree> {
    let mut p = TreeParser {
        m,
        tokens: tokenize(text),
        pos: 0,
        end: text.len(),
    };
    let t = p.tree()?;
    if p.pos < p.tokens.len() {
        return Err(p.err("trailing input after tree"));
    }
    Ok(t)
}

/// `ev(leaf) = label`, `ev(t1 t2) = ev(t1) ⋆ ev(t2)`.
pub fn evaluate(m: &PartialMonoid, t: &Tree) -> Result<Word> {
    for w in t.leaf_labels() {
        require_irreducible(m, w)?;
    }
    Ok(eval_unchecked(m, t))
}

fn eval_unchecked(m: &PartialMonoid, t: &Tree) -> Word {
    match t {
        Tree::Leaf(w) => w.clone(),
        Tree::Node(l, r) => lstd(m, &eval_unchecked(m, l).concat(&eval_unchecked(m, r))),
    }
}

/// Evaluation of every reachable tree, with a conversion search from the
/// evaluation of the start tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketingEntry {
    pub tree: Tree,
    pub value: Word,
    pub convertibility: Convertibility,
}

/// Checks that rewriting brackets never leaves the congruence class of the
/// evaluation. Shares search state across calls on one monoid.
pub struct BracketingChecker<'m> {
    m: &'m PartialMonoid,
    congruence: BoundedCongruence<'m>,
    cache: HashMap<(Word, Word, usize), Convertibility>,
}

impl<'m> BracketingChecker<'m> {
    pub fn new(m: &'m PartialMonoid) -> Self {
        Self {
            m,
            congruence: BoundedCongruence::new(m),
            cache: HashMap::new(),
        }
    }

    fn convert(&mut self, u: &Word, v: &Word, cap: usize) -> Convertibility {
        if u == v {
            return Convertibility::Yes(vec![u.clone()]);
        }
        let congruence = &self.congruence;
        self.cache
            .entry((u.clone(), v.clone(), cap))
            .or_insert_with(|| congruence.search(u, v, cap))
            .clone()
    }

    /// One entry per reachable tree, the start tree first.
    pub fn entries(&mut self, t: &Tree) -> Result<Vec<BracketingEntry>> {
        let start = evaluate(self.m, t)?;
        let cap = t.letter_count();
        let mut out = Vec::new();
        let mut reachable = t.ass_reachable();
        reachable.remove(t);
        for tree in std::iter::once(t.clone()).chain(reachable) {
            let value = eval_unchecked(self.m, &tree);
            let convertibility = self.convert(&start, &value, cap);
            out.push(BracketingEntry {
                tree,
                value,
                convertibility,
            });
        }
        Ok(out)
    }

    pub fn check(&mut self, t: &Tree) -> Result<bool> {
        Ok(self.entries(t)?.iter().all(|e| e.convertibility.is_yes()))
    }
}

/// Every tree reachable from `t` evaluates to a word convertible to `ev(t)`
/// within the total letter count of the leaves.
pub fn verify_bracketing_invariance(m: &PartialMonoid, t: &Tree) -> Result<bool> {
    BracketingChecker::new(m).check(t)
}
