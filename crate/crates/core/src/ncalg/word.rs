//! Paths in a quiver, possibly through formal inverses of invertible arrows.

use std::cmp::Ordering;

use super::quiver::{ArrowId, Quiver, VertexId};

/// An arrow or the formal inverse of an invertible arrow.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Token {
    pub arrow: ArrowId,
    pub inverse: bool,
}

impl Token {
    pub fn new(arrow: ArrowId) -> Self {
        Token { arrow, inverse: false }
    }

    pub fn inv(arrow: ArrowId) -> Self {
        Token { arrow, inverse: true }
    }

    pub fn source(&self, q: &Quiver) -> VertexId {
        let a = q.arrow(self.arrow);
        if self.inverse {
            a.target
        } else {
            a.source
        }
    }

    pub fn target(&self, q: &Quiver) -> VertexId {
        let a = q.arrow(self.arrow);
        if self.inverse {
            a.source
        } else {
            a.target
        }
    }

    pub fn degree(&self, q: &Quiver) -> i32 {
        let d = q.arrow(self.arrow).degree;
        if self.inverse {
            -d
        } else {
            d
        }
    }

    pub fn weight(&self, q: &Quiver) -> i32 {
        let w = q.arrow(self.arrow).weight;
        if self.inverse {
            -w
        } else {
            w
        }
    }

    fn cancels(&self, other: &Token) -> bool {
        self.arrow == other.arrow && self.inverse != other.inverse
    }

    pub fn label(&self, q: &Quiver) -> String {
        let n = &q.arrow(self.arrow).name;
        if self.inverse {
            format!("{n}^-1")
        } else {
            n.clone()
        }
    }
}

/// A reduced path. Composition is right to left: in `tokens = [a, b]` the
/// arrow `b` is traversed first, so `source = source(b)` and `target = target(a)`.
/// The empty path at vertex `i` is the idempotent `e_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    tokens: Vec<Token>,
    source: VertexId,
    target: VertexId,
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.tokens
            .len()
            .cmp(&other.tokens.len())
            .then_with(|| self.tokens.cmp(&other.tokens))
            .then_with(|| self.source.cmp(&other.source))
            .then_with(|| self.target.cmp(&other.target))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    pub fn idempotent(v: VertexId) -> Self {
        Word { tokens: Vec::new(), source: v, target: v }
    }

    pub fn token(q: &Quiver, t: Token) -> Self {
        Word { tokens: vec![t], source: t.source(q), target: t.target(q) }
    }

    /// Build from tokens listed left to right, reducing `x x^-1` pairs.
    /// Returns `None` if consecutive tokens do not compose.
    pub fn from_tokens(q: &Quiver, tokens: &[Token]) -> Option<Self> {
        let (first, rest) = tokens.split_last()?;
        let mut w = Word::token(q, *first);
        for t in rest.iter().rev() {
            w = Word::token(q, *t).mul(q, &w)?;
        }
        Some(w)
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn target(&self) -> VertexId {
        self.target
    }

    pub fn is_cycle(&self) -> bool {
        self.source == self.target
    }

    pub fn degree(&self, q: &Quiver) -> i32 {
        self.tokens.iter().map(|t| t.degree(q)).sum()
    }

    pub fn weight(&self, q: &Quiver) -> i32 {
        self.tokens.iter().map(|t| t.weight(q)).sum()
    }

    /// `self * other`: `other` is traversed first.
    pub fn mul(&self, _q: &Quiver, other: &Word) -> Option<Word> {
        if self.source != other.target {
            return None;
        }
        let mut left = self.tokens.clone();
        let mut skip = 0;
        while let (Some(l), Some(r)) = (left.last(), other.tokens.get(skip)) {
            if l.cancels(r) {
                left.pop();
                skip += 1;
            } else {
                break;
            }
        }
        left.extend_from_slice(&other.tokens[skip..]);
        Some(Word { tokens: left, source: other.source, target: self.target })
    }

    /// Split `self = first * rest` at the leftmost token.
    pub fn split_first(&self, q: &Quiver) -> Option<(Word, Word)> {
        let (t, rest) = self.tokens.split_first()?;
        let head = Word::token(q, *t);
        let tail = Word { tokens: rest.to_vec(), source: self.source, target: t.source(q) };
        Some((head, tail))
    }

    /// Split `self = rest * last` at the rightmost token.
    pub fn split_last(&self, q: &Quiver) -> Option<(Word, Word)> {
        let (t, rest) = self.tokens.split_last()?;
        let last = Word::token(q, *t);
        let front = Word { tokens: rest.to_vec(), source: t.target(q), target: self.target };
        Some((front, last))
    }

    /// The subword made of `tokens[start..end]`; empty ranges give the
    /// idempotent at the matching vertex.
    pub fn sub(&self, q: &Quiver, start: usize, end: usize) -> Word {
        if start >= end {
            let v = if start == 0 {
                self.target
            } else if start >= self.tokens.len() {
                self.source
            } else {
                self.tokens[start].target(q)
            };
            return Word::idempotent(v);
        }
        let toks = self.tokens[start..end].to_vec();
        Word { source: toks[toks.len() - 1].source(q), target: toks[0].target(q), tokens: toks }
    }

    pub fn label(&self, q: &Quiver) -> String {
        if self.tokens.is_empty() {
            format!("e_{}", q.vertices()[self.source])
        } else {
            self.tokens.iter().map(|t| t.label(q)).collect::<Vec<_>>().join(" ")
        }
    }
}
