//! Terms of the free self-dual reflexive globular magma.
//!
//! Every node carries its duality word, its dimension, its node count and a
//! structural hash. Boundaries are computed on first use and cached in the
//! node; the cache is a pure memo and never changes what a term means.

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use crate::duality::{DualityIndex, DualityWord};
use crate::error::{Error, Result};
use crate::globular::Side;

/// A generator leaf: either a named cell of a presentation, or a whole term
/// used as a cell of the next free structure up (an element of `T(T(Q))`).
#[derive(Clone)]
pub enum Leaf {
    Cell { name: Arc<str>, dim: usize, boundary: Option<(Term, Term)> },
    Quote(Term),
}

impl PartialEq for Leaf {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Leaf::Cell { name: a, dim: da, .. }, Leaf::Cell { name: b, dim: db, .. }) => da == db && a == b,
            (Leaf::Quote(a), Leaf::Quote(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Leaf {}

impl Leaf {
    pub fn dim(&self) -> usize {
        match self {
            Leaf::Cell { dim, .. } => *dim,
            Leaf::Quote(t) => t.dim(),
        }
    }

    pub fn name(&self) -> Option<&str> {
        match self {
            Leaf::Cell { name, .. } => Some(name),
            Leaf::Quote(_) => None,
        }
    }

    fn boundary(&self) -> Option<(Term, Term)> {
        match self {
            Leaf::Cell { boundary, .. } => boundary.clone(),
            Leaf::Quote(t) => {
                let (s, t) = t.boundaries()?;
                Some((Term::quote(s), Term::quote(t)))
            }
        }
    }
}

/// The shape of a node, without its duality word.
#[derive(Clone, PartialEq, Eq)]
pub enum Kind {
    Gen(Leaf),
    Id(Term),
    /// `later ∘_depth earlier`: `earlier` is traversed first.
    Comp {
        depth: usize,
        later: Term,
        earlier: Term,
    },
    /// A contraction cell from `source` to `target`.
    Ctr {
        source: Term,
        target: Term,
    },
}

struct Node {
    kind: Kind,
    word: DualityWord,
    dim: usize,
    size: usize,
    leaves: usize,
    weight: usize,
    hash: u64,
    boundary: OnceLock<Option<(Term, Term)>>,
}

/// A cell of the free magma. Cloning is cheap.
#[derive(Clone)]
pub struct Term(Arc<Node>);

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.hash == other.0.hash
                && self.0.dim == other.0.dim
                && self.0.size == other.0.size
                && self.0.word == other.0.word
                && self.0.kind == other.0.kind)
    }
}

impl Eq for Term {}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

fn structural_hash(kind: &Kind, word: &DualityWord, dim: usize) -> u64 {
    let mut h = DefaultHasher::new();
    dim.hash(&mut h);
    word.hash(&mut h);
    match kind {
        Kind::Gen(Leaf::Cell { name, dim, .. }) => {
            0u8.hash(&mut h);
            name.hash(&mut h);
            dim.hash(&mut h);
        }
        Kind::Gen(Leaf::Quote(t)) => {
            1u8.hash(&mut h);
            t.0.hash.hash(&mut h);
        }
        Kind::Id(z) => {
            2u8.hash(&mut h);
            z.0.hash.hash(&mut h);
        }
        Kind::Comp { depth, later, earlier } => {
            3u8.hash(&mut h);
            depth.hash(&mut h);
            later.0.hash.hash(&mut h);
            earlier.0.hash.hash(&mut h);
        }
        Kind::Ctr { source, target } => {
            4u8.hash(&mut h);
            source.0.hash.hash(&mut h);
            target.0.hash.hash(&mut h);
        }
    }
    h.finish()
}

impl Term {
    fn build(kind: Kind, word: DualityWord) -> Term {
        let (dim, size, leaves, weight) = match &kind {
            Kind::Gen(leaf) => (leaf.dim(), 1, 1, 0),
            Kind::Id(z) => (z.dim() + 1, 1 + z.size(), z.leaves(), z.weight()),
            Kind::Comp { later, earlier, .. } => (
                later.dim(),
                1 + later.size() + earlier.size(),
                later.leaves() + earlier.leaves(),
                later.weight() + earlier.weight(),
            ),
            Kind::Ctr { source, target } => (
                source.dim() + 1,
                1 + source.size() + target.size(),
                source.leaves() + target.leaves(),
                source.weight() + target.weight(),
            ),
        };
        let hash = structural_hash(&kind, &word, dim);
        let weight = weight + word.len();
        Term(Arc::new(Node { kind, word, dim, size, leaves, weight, hash, boundary: OnceLock::new() }))
    }

    /// A named generator of dimension `dim` with the given boundary generators.
    pub(crate) fn cell(name: Arc<str>, dim: usize, boundary: Option<(Term, Term)>) -> Term {
        Term::build(Kind::Gen(Leaf::Cell { name, dim, boundary }), DualityWord::empty())
    }

    /// Wraps a term as a generator of the next free structure.
    pub fn quote(t: Term) -> Term {
        Term::build(Kind::Gen(Leaf::Quote(t)), DualityWord::empty())
    }

    pub(crate) fn raw_id(z: Term, word: DualityWord) -> Term {
        Term::build(Kind::Id(z), word)
    }

    pub(crate) fn raw_comp(depth: usize, later: Term, earlier: Term, word: DualityWord) -> Term {
        Term::build(Kind::Comp { depth, later, earlier }, word)
    }

    pub(crate) fn raw_ctr(source: Term, target: Term, word: DualityWord) -> Term {
        Term::build(Kind::Ctr { source, target }, word)
    }

    /// The same node with a different duality word.
    pub(crate) fn with_word(&self, word: DualityWord) -> Term {
        if word == self.0.word {
            return self.clone();
        }
        Term::build(self.0.kind.clone(), word)
    }

    /// The same node with its duality word removed.
    pub fn bare(&self) -> Term {
        self.with_word(DualityWord::empty())
    }

    pub fn kind(&self) -> &Kind {
        &self.0.kind
    }

    pub fn word(&self) -> &DualityWord {
        &self.0.word
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    /// Node count; duality words do not contribute.
    pub fn size(&self) -> usize {
        self.0.size
    }

    /// Number of generator occurrences; identities add none of their own.
    pub fn leaves(&self) -> usize {
        self.0.leaves
    }

    /// Total number of duality applications anywhere in the term.
    pub fn weight(&self) -> usize {
        self.0.weight
    }

    pub fn ptr_eq(&self, other: &Term) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self.0.kind, Kind::Gen(_))
    }

    pub fn contains_contraction(&self) -> bool {
        match &self.0.kind {
            Kind::Gen(_) => false,
            Kind::Id(z) => z.contains_contraction(),
            Kind::Comp { later, earlier, .. } => later.contains_contraction() || earlier.contains_contraction(),
            Kind::Ctr { .. } => true,
        }
    }

    /// Source and target, or `None` for 0-cells.
    pub fn boundaries(&self) -> Option<(Term, Term)> {
        self.0.boundary.get_or_init(|| self.compute_boundaries()).clone()
    }

    fn compute_boundaries(&self) -> Option<(Term, Term)> {
        if self.dim() == 0 {
            return None;
        }
        let m = self.dim();
        let (s, t) = match &self.0.kind {
            Kind::Gen(leaf) => leaf.boundary()?,
            Kind::Id(z) => (z.clone(), z.clone()),
            Kind::Comp { depth, later, earlier } => {
                let (ls, lt) = later.boundaries()?;
                let (es, et) = earlier.boundaries()?;
                if *depth + 1 == m {
                    (es, lt)
                } else {
                    (
                        Term::raw_comp(*depth, ls, es, DualityWord::empty()),
                        Term::raw_comp(*depth, lt, et, DualityWord::empty()),
                    )
                }
            }
            Kind::Ctr { source, target } => (source.clone(), target.clone()),
        };
        let word = &self.0.word;
        if word.is_empty() {
            return Some((s, t));
        }
        let (s, t) = if word.delta().contains(m - 1) { (t, s) } else { (s, t) };
        let redress = |b: Term| {
            let w = b.word().concat(word);
            b.with_word(w)
        };
        Some((redress(s), redress(t)))
    }

    pub fn source(&self) -> Result<Term> {
        self.boundary(Side::Source)
    }

    pub fn target(&self) -> Result<Term> {
        self.boundary(Side::Target)
    }

    pub fn boundary(&self, side: Side) -> Result<Term> {
        let (s, t) = self.boundaries().ok_or_else(|| Error::Dimension("0-cells have no boundary".into()))?;
        Ok(match side {
            Side::Source => s,
            Side::Target => t,
        })
    }

    /// The boundary at depth `depth` on one side: `s^q ... s^{dim-1}(t)`.
    pub fn iterated(&self, depth: usize, side: Side) -> Result<Term> {
        if depth >= self.dim() {
            return Err(Error::Dimension(format!("boundary at depth {depth} of a {}-cell", self.dim())));
        }
        let mut t = self.clone();
        while t.dim() > depth {
            t = t.boundary(side)?;
        }
        Ok(t)
    }

    /// Formal identity, checked against the truncation level.
    pub fn identity(t: &Term, truncation: usize) -> Result<Term> {
        if t.dim() >= truncation {
            return Err(Error::TruncationExceeded { dim: t.dim() + 1, truncation });
        }
        Ok(Term::raw_id(t.clone(), DualityWord::empty()))
    }

    /// Formal composite `later ∘_depth earlier`, checked for composability.
    pub fn compose(depth: usize, later: &Term, earlier: &Term) -> Result<Term> {
        if later.dim() != earlier.dim() {
            return Err(Error::DimensionMismatch(later.dim(), earlier.dim()));
        }
        let m = later.dim();
        if depth >= m {
            return Err(Error::Depth { depth, dim: m });
        }
        let t = earlier.iterated(depth, Side::Target)?;
        let s = later.iterated(depth, Side::Source)?;
        if t != s {
            return Err(Error::BoundaryMismatch(format!(
                "target {t} of the earlier factor differs from source {s} of the later factor at depth {depth}"
            )));
        }
        Ok(Term::raw_comp(depth, later.clone(), earlier.clone(), DualityWord::empty()))
    }

    /// Appends `alpha` to the duality word of the outermost node.
    pub fn dual(alpha: DualityIndex, t: &Term, truncation: usize) -> Result<Term> {
        if alpha.bound() > truncation {
            return Err(Error::Index { index: alpha.bound() - 1, truncation });
        }
        Ok(t.with_word(t.word().appended(alpha)))
    }

    /// Direct subterms, in serialization order.
    pub fn children(&self) -> Vec<Term> {
        match &self.0.kind {
            Kind::Gen(_) => Vec::new(),
            Kind::Id(z) => vec![z.clone()],
            Kind::Comp { later, earlier, .. } => vec![later.clone(), earlier.clone()],
            Kind::Ctr { source, target } => vec![source.clone(), target.clone()],
        }
    }

    /// Rebuilds this node with new children (same arity) and the same word.
    pub(crate) fn with_children(&self, children: &[Term]) -> Term {
        let word = self.0.word.clone();
        match &self.0.kind {
            Kind::Gen(_) => self.clone(),
            Kind::Id(_) => Term::raw_id(children[0].clone(), word),
            Kind::Comp { depth, .. } => Term::raw_comp(*depth, children[0].clone(), children[1].clone(), word),
            Kind::Ctr { .. } => Term::raw_ctr(children[0].clone(), children[1].clone(), word),
        }
    }

    /// Checks every composability and parallelism condition syntactically.
    pub fn check_well_formed(&self) -> Result<()> {
        match &self.0.kind {
            Kind::Gen(Leaf::Quote(t)) => t.check_well_formed(),
            Kind::Gen(_) => Ok(()),
            Kind::Id(z) => z.check_well_formed(),
            Kind::Comp { depth, later, earlier } => {
                later.check_well_formed()?;
                earlier.check_well_formed()?;
                Term::compose(*depth, later, earlier).map(|_| ())
            }
            Kind::Ctr { source, target } => {
                source.check_well_formed()?;
                target.check_well_formed()?;
                if source.dim() != target.dim() {
                    return Err(Error::DimensionMismatch(source.dim(), target.dim()));
                }
                if source.boundaries() != target.boundaries() {
                    return Err(Error::Domain(format!("{source} and {target} are not parallel")));
                }
                Ok(())
            }
        }
    }

    pub fn is_well_formed(&self) -> bool {
        self.check_well_formed().is_ok()
    }

    fn write_base(&self, out: &mut String) {
        match &self.0.kind {
            Kind::Gen(Leaf::Cell { name, .. }) => out.push_str(name),
            Kind::Gen(Leaf::Quote(t)) => {
                out.push('[');
                t.write(out);
                out.push(']');
            }
            Kind::Id(z) => {
                out.push_str("(id ");
                z.write(out);
                out.push(')');
            }
            Kind::Comp { depth, later, earlier } => {
                out.push_str("(comp ");
                out.push_str(&depth.to_string());
                out.push(' ');
                later.write(out);
                out.push(' ');
                earlier.write(out);
                out.push(')');
            }
            Kind::Ctr { source, target } => {
                out.push_str("(ctr ");
                source.write(out);
                out.push(' ');
                target.write(out);
                out.push(')');
            }
        }
    }

    fn write(&self, out: &mut String) {
        let word = self.0.word.indices();
        for alpha in word.iter().rev() {
            out.push_str("(dual ");
            out.push_str(&alpha.to_string());
            out.push(' ');
        }
        self.write_base(out);
        for _ in word {
            out.push(')');
        }
    }

    /// Minimal-whitespace serialization.
    pub fn serialize(&self) -> String {
        let mut s = String::new();
        self.write(&mut s);
        s
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Term({})", self.serialize())
    }
}

/// Total order on terms: node count, then serialized form.
pub fn term_order(a: &Term, b: &Term) -> Ordering {
    a.size().cmp(&b.size()).then_with(|| a.serialize().cmp(&b.serialize()))
}

/// Symmetric difference of a term's duality word.
pub fn delta(t: &Term) -> DualityIndex {
    t.word().delta()
}

/// Cached node dimension.
pub fn dim(t: &Term) -> usize {
    t.dim()
}
