//! The oriented rewriting system on magma terms.
//!
//! Rules, by tag:
//! - dualities on identities, composites and contraction cells move inward,
//!   one index at a time, swapping composite factors when the depth is in
//!   the index and swapping contraction endpoints when their dimension is;
//! - leaf words cancel adjacent equal indices and sort by the index order;
//! - composites with an identity tower on the matching boundary collapse;
//! - a composite of two identities becomes the identity of the composite,
//!   also when the second identity heads a composite of the same depth;
//! - same-depth composites associate to the right;
//! - a contraction cell with equal endpoints becomes an identity.
//!
//! [`reduce`] is the fast bottom-up normalizer. [`step`] applies exactly one
//! rule in the same strategy, and [`reduce_traced`] records every step with
//! the termination measure before and after it.

use std::fmt;

use crate::duality::DualityWord;
use crate::term::{Kind, Term};

/// The rule applied by a single rewriting step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    DualOverIdentity,
    DualOverComposite,
    DualOverContraction,
    CancelDuals,
    SortDuals,
    UnitLeft,
    UnitRight,
    IdentityFunctoriality,
    MergeIdentities,
    Associate,
    DiagonalContraction,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::DualOverIdentity => "dual-over-id",
            Rule::DualOverComposite => "dual-over-comp",
            Rule::DualOverContraction => "dual-over-ctr",
            Rule::CancelDuals => "cancel-duals",
            Rule::SortDuals => "sort-duals",
            Rule::UnitLeft => "unit-left",
            Rule::UnitRight => "unit-right",
            Rule::IdentityFunctoriality => "id-functoriality",
            Rule::MergeIdentities => "merge-ids",
            Rule::Associate => "assoc",
            Rule::DiagonalContraction => "diagonal-ctr",
        })
    }
}

/// Lexicographic termination measure: duality weight above the leaves
/// (each index weighted by the size of the node carrying it), node count,
/// left nesting of same-depth composites, and leaf word inversions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Measure {
    pub duality_mass: usize,
    pub nodes: usize,
    pub left_nesting: usize,
    pub inversions: usize,
}

pub fn measure(t: &Term) -> Measure {
    let mut m = Measure { duality_mass: 0, nodes: t.size(), left_nesting: 0, inversions: 0 };
    accumulate(t, &mut m);
    m
}

fn accumulate(t: &Term, m: &mut Measure) {
    m.duality_mass += t.word().len() * t.size();
    match t.kind() {
        Kind::Gen(_) => m.inversions += t.word().inversions(),
        Kind::Comp { depth, later, .. } => {
            if matches!(later.kind(), Kind::Comp { depth: d, .. } if d == depth) {
                m.left_nesting += later.size();
            }
        }
        _ => {}
    }
    for c in t.children() {
        accumulate(&c, m);
    }
}

fn add_word(t: &Term, word: &DualityWord) -> Term {
    t.with_word(t.word().concat(word))
}

/// Pushes `word` through a composite at `depth`, returning the new factors.
fn push_through_comp(depth: usize, later: &Term, earlier: &Term, word: &DualityWord) -> (Term, Term) {
    let (mut a, mut b) = (later.clone(), earlier.clone());
    for &alpha in word.indices() {
        if alpha.contains(depth) {
            std::mem::swap(&mut a, &mut b);
        }
        a = a.with_word(a.word().appended(alpha));
        b = b.with_word(b.word().appended(alpha));
    }
    (a, b)
}

/// Pushes `word` through a contraction cell between cells of dimension `dim`.
fn push_through_ctr(dim: usize, x: &Term, y: &Term, word: &DualityWord) -> (Term, Term) {
    let (mut a, mut b) = (x.clone(), y.clone());
    for &alpha in word.indices() {
        if alpha.contains(dim) {
            std::mem::swap(&mut a, &mut b);
        }
        a = a.with_word(a.word().appended(alpha));
        b = b.with_word(b.word().appended(alpha));
    }
    (a, b)
}

/// True when `t` is an identity tower of exactly `height` undecorated
/// identity nodes.
fn is_tower(t: &Term, height: usize) -> bool {
    let mut cur = t.clone();
    for _ in 0..height {
        if !cur.word().is_empty() {
            return false;
        }
        match cur.kind() {
            Kind::Id(z) => cur = z.clone(),
            _ => return false,
        }
    }
    true
}

/// Normal form under the oriented rules.
pub fn reduce(t: &Term) -> Term {
    match t.kind() {
        Kind::Gen(_) => {
            if t.word().is_normalized() {
                t.clone()
            } else {
                t.with_word(t.word().normalized())
            }
        }
        Kind::Id(z) => {
            let inner = reduce(&add_word(z, t.word()));
            if t.word().is_empty() && inner.ptr_eq(z) {
                return t.clone();
            }
            Term::raw_id(inner, DualityWord::empty())
        }
        Kind::Comp { depth, later, earlier } => {
            let (a, b) = push_through_comp(*depth, later, earlier, t.word());
            build_comp(*depth, reduce(&a), reduce(&b))
        }
        Kind::Ctr { source, target } => {
            let (x, y) = push_through_ctr(source.dim(), source, target, t.word());
            let (x, y) = (reduce(&x), reduce(&y));
            if x == y {
                Term::raw_id(x, DualityWord::empty())
            } else {
                Term::raw_ctr(x, y, DualityWord::empty())
            }
        }
    }
}

/// For `a = id(_)` and `b = id(_) ∘_depth c`, the factors `id(_)` and `c` of
/// `b`. Merging the two identities first closes the overlap between
/// identity functoriality and association.
fn identity_head(a: &Term, b: &Term, depth: usize) -> Option<(Term, Term)> {
    if !matches!(a.kind(), Kind::Id(_)) || !a.word().is_empty() || !b.word().is_empty() {
        return None;
    }
    match b.kind() {
        Kind::Comp { depth: d, later: b1, earlier: b2 }
            if *d == depth && b1.word().is_empty() && matches!(b1.kind(), Kind::Id(_)) =>
        {
            Some((b1.clone(), b2.clone()))
        }
        _ => None,
    }
}

/// Composite of two reduced factors, reduced at the root.
pub(crate) fn build_comp(depth: usize, a: Term, b: Term) -> Term {
    let height = a.dim() - depth;
    if is_tower(&a, height) {
        return b;
    }
    if is_tower(&b, height) {
        return a;
    }
    if depth + 1 < a.dim() {
        if let (Kind::Id(a0), Kind::Id(b0)) = (a.kind(), b.kind()) {
            if a.word().is_empty() && b.word().is_empty() {
                return Term::raw_id(build_comp(depth, a0.clone(), b0.clone()), DualityWord::empty());
            }
        }
        if let Some((b1, b2)) = identity_head(&a, &b, depth) {
            return build_comp(depth, build_comp(depth, a, b1), b2);
        }
    }
    if let Kind::Comp { depth: d, later: a1, earlier: a2 } = a.kind() {
        if *d == depth && a.word().is_empty() {
            let rest = build_comp(depth, a2.clone(), b);
            return build_comp(depth, a1.clone(), rest);
        }
    }
    Term::raw_comp(depth, a, b, DualityWord::empty())
}

fn step_word(word: &DualityWord) -> Option<(Rule, DualityWord)> {
    let v = word.indices();
    for i in 0..v.len().saturating_sub(1) {
        if v[i] == v[i + 1] {
            let mut w = v[..i].to_vec();
            w.extend_from_slice(&v[i + 2..]);
            return Some((Rule::CancelDuals, DualityWord::from_indices(w)));
        }
    }
    for i in 0..v.len().saturating_sub(1) {
        if v[i] > v[i + 1] {
            let mut w = v.to_vec();
            w.swap(i, i + 1);
            return Some((Rule::SortDuals, DualityWord::from_indices(w)));
        }
    }
    None
}

fn rest_of(word: &DualityWord) -> (DualityWord, DualityWord) {
    let v = word.indices();
    (DualityWord::from_indices(v[..1].to_vec()), DualityWord::from_indices(v[1..].to_vec()))
}

/// One rewriting step, or `None` if `t` is already reduced.
pub fn step(t: &Term) -> Option<(Rule, Term)> {
    if !t.word().is_empty() && !t.is_leaf() {
        let (first, rest) = rest_of(t.word());
        let out = match t.kind() {
            Kind::Id(z) => (Rule::DualOverIdentity, Term::raw_id(add_word(z, &first), rest)),
            Kind::Comp { depth, later, earlier } => {
                let (a, b) = push_through_comp(*depth, later, earlier, &first);
                (Rule::DualOverComposite, Term::raw_comp(*depth, a, b, rest))
            }
            Kind::Ctr { source, target } => {
                let (x, y) = push_through_ctr(source.dim(), source, target, &first);
                (Rule::DualOverContraction, Term::raw_ctr(x, y, rest))
            }
            Kind::Gen(_) => unreachable!(),
        };
        return Some(out);
    }
    if t.is_leaf() {
        return step_word(t.word()).map(|(r, w)| (r, t.with_word(w)));
    }
    let children = t.children();
    for (i, c) in children.iter().enumerate() {
        if let Some((rule, c2)) = step(c) {
            let mut new = children.clone();
            new[i] = c2;
            return Some((rule, t.with_children(&new)));
        }
    }
    match t.kind() {
        Kind::Ctr { source, target } if source == target => {
            Some((Rule::DiagonalContraction, Term::raw_id(source.clone(), DualityWord::empty())))
        }
        Kind::Comp { depth, later, earlier } => {
            let height = t.dim() - depth;
            if is_tower(later, height) {
                return Some((Rule::UnitLeft, earlier.clone()));
            }
            if is_tower(earlier, height) {
                return Some((Rule::UnitRight, later.clone()));
            }
            if depth + 1 < t.dim() {
                if let (Kind::Id(a0), Kind::Id(b0)) = (later.kind(), earlier.kind()) {
                    if later.word().is_empty() && earlier.word().is_empty() {
                        let inner = Term::raw_comp(*depth, a0.clone(), b0.clone(), DualityWord::empty());
                        return Some((Rule::IdentityFunctoriality, Term::raw_id(inner, DualityWord::empty())));
                    }
                }
                if let Some((b1, b2)) = identity_head(later, earlier, *depth) {
                    let (Kind::Id(a0), Kind::Id(b0)) = (later.kind(), b1.kind()) else { unreachable!() };
                    let inner = Term::raw_comp(*depth, a0.clone(), b0.clone(), DualityWord::empty());
                    let merged = Term::raw_id(inner, DualityWord::empty());
                    return Some((Rule::MergeIdentities, Term::raw_comp(*depth, merged, b2, DualityWord::empty())));
                }
            }
            if let Kind::Comp { depth: d, later: a1, earlier: a2 } = later.kind() {
                if d == depth && later.word().is_empty() {
                    let inner = Term::raw_comp(*depth, a2.clone(), earlier.clone(), DualityWord::empty());
                    return Some((Rule::Associate, Term::raw_comp(*depth, a1.clone(), inner, DualityWord::empty())));
                }
            }
            None
        }
        _ => None,
    }
}

/// One recorded rewriting step.
#[derive(Clone, Debug)]
pub struct TraceStep {
    pub rule: Rule,
    pub before: Measure,
    pub after: Measure,
}

impl TraceStep {
    pub fn decreases(&self) -> bool {
        self.after < self.before
    }
}

/// Rewrites to normal form one rule at a time, recording each step.
pub fn reduce_traced(t: &Term) -> (Term, Vec<TraceStep>) {
    let mut cur = t.clone();
    let mut before = measure(&cur);
    let mut trace = Vec::new();
    while let Some((rule, next)) = step(&cur) {
        let after = measure(&next);
        debug_assert!(after < before, "{rule} did not decrease the measure on {cur}");
        trace.push(TraceStep { rule, before, after });
        cur = next;
        before = after;
    }
    (cur, trace)
}

pub fn is_reduced(t: &Term) -> bool {
    step(t).is_none()
}
