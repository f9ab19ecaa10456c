//! Equality in the free strict involutive category.
//!
//! A term's class is represented by the least term, in the order
//! (node count, serialized form), reachable from its reduced form by the
//! size-preserving moves: binary exchange in either direction (with factors
//! read off same-depth spines, so associativity and identity functoriality
//! are used in both directions), and collapsing a contraction cell to the
//! identity on either endpoint. Every visited state is reduced again.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::duality::DualityWord;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::globular::Side;
use crate::rewrite::reduce;
use crate::term::{Kind, Term};

/// Orbit states explored before giving up on an equality.
pub const DEFAULT_BOUND: usize = 100_000;

/// A class representative and whether its orbit was fully explored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub rep: Term,
    pub exhausted: bool,
    pub states: usize,
}

fn order_key(t: &Term) -> (usize, String) {
    (t.size(), t.serialize())
}

/// Right-associated composite of `factors` at `depth`.
fn join(depth: usize, factors: &[Term]) -> Term {
    let mut it = factors.iter().rev();
    let mut acc = it.next().expect("non-empty spine").clone();
    for f in it {
        acc = Term::raw_comp(depth, f.clone(), acc, DualityWord::empty());
    }
    acc
}

fn spine(t: &Term, depth: usize, out: &mut Vec<Term>) {
    match t.kind() {
        Kind::Comp { depth: d, later, earlier } if *d == depth && t.word().is_empty() => {
            spine(later, depth, out);
            spine(earlier, depth, out);
        }
        _ => out.push(t.clone()),
    }
}

/// Ways of reading `t` as a composite `a ∘_depth b`.
fn splits(t: &Term, depth: usize) -> Vec<(Term, Term)> {
    let mut out = Vec::new();
    let mut factors = Vec::new();
    spine(t, depth, &mut factors);
    if factors.len() == 1 {
        if let Kind::Id(x) = t.kind() {
            if t.word().is_empty() && depth < x.dim() {
                let mut inner = Vec::new();
                spine(x, depth, &mut inner);
                if inner.len() > 1 {
                    factors = inner.into_iter().map(|f| Term::raw_id(f, DualityWord::empty())).collect();
                }
            }
        }
    }
    for i in 1..factors.len() {
        out.push((join(depth, &factors[..i]), join(depth, &factors[i..])));
    }
    let height = t.dim() - depth;
    let tower = |b: Term| {
        let mut x = b;
        for _ in 0..height {
            x = Term::raw_id(x, DualityWord::empty());
        }
        x
    };
    if let (Ok(s), Ok(tt)) = (t.iterated(depth, Side::Source), t.iterated(depth, Side::Target)) {
        out.push((t.clone(), tower(s)));
        out.push((tower(tt), t.clone()));
    }
    out
}

fn local_moves(t: &Term, out: &mut Vec<Term>) {
    match t.kind() {
        Kind::Comp { depth: r, later, earlier } if t.word().is_empty() => {
            for s in (0..t.dim()).filter(|s| s != r) {
                let ls = splits(later, s);
                let rs = splits(earlier, s);
                for (a1, a2) in &ls {
                    for (b1, b2) in &rs {
                        let top = Term::raw_comp(*r, a1.clone(), b1.clone(), DualityWord::empty());
                        let bottom = Term::raw_comp(*r, a2.clone(), b2.clone(), DualityWord::empty());
                        out.push(Term::raw_comp(s, top, bottom, DualityWord::empty()));
                    }
                }
            }
        }
        Kind::Ctr { source, target } => {
            out.push(Term::raw_id(source.clone(), t.word().clone()));
            out.push(Term::raw_id(target.clone(), t.word().clone()));
        }
        _ => {}
    }
}

/// Every term one move away from `t`, at any position, not yet checked.
fn raw_moves(t: &Term) -> Vec<Term> {
    let mut out = Vec::new();
    local_moves(t, &mut out);
    let children = t.children();
    for (i, c) in children.iter().enumerate() {
        for m in raw_moves(c) {
            let mut new = children.clone();
            new[i] = m;
            out.push(t.with_children(&new));
        }
    }
    out
}

/// Well-formed, reduced neighbours of a reduced term within `size_limit`.
pub fn neighbours(t: &Term, size_limit: usize) -> Vec<Term> {
    let mut out = Vec::new();
    for m in raw_moves(t) {
        if m.size() > size_limit + 2 * t.dim() + 2 || !m.is_well_formed() {
            continue;
        }
        let r = reduce(&m);
        if r.size() <= size_limit && &r != t {
            out.push(r);
        }
    }
    out
}

/// Least element of the reduced orbit of `t`.
pub fn canonical(t: &Term, bound: usize) -> CanonicalForm {
    let start = reduce(t);
    let limit = start.size();
    let mut visited: HashSet<Term> = HashSet::new();
    visited.insert(start.clone());
    let mut queue = VecDeque::from([start.clone()]);
    let mut best_key = order_key(&start);
    let mut best = start;
    let mut exhausted = true;
    'search: while let Some(x) = queue.pop_front() {
        for y in neighbours(&x, limit) {
            if visited.contains(&y) {
                continue;
            }
            if visited.len() >= bound {
                exhausted = false;
                break 'search;
            }
            let key = order_key(&y);
            if key < best_key {
                best_key = key;
                best = y.clone();
            }
            visited.insert(y.clone());
            queue.push_back(y);
        }
    }
    CanonicalForm { rep: best, exhausted, states: visited.len() }
}

/// The quotient map; the same as [`canonical`].
pub fn pi(t: &Term, bound: usize) -> CanonicalForm {
    canonical(t, bound)
}

/// Canonical forms of a batch of terms, in input order.
pub fn canonical_all(terms: &[Term], bound: usize, exec: Execution) -> Vec<CanonicalForm> {
    exec.map(terms, |t| canonical(t, bound))
}

/// Decides equality in the quotient. Reports [`Error::BoundExceeded`]
/// instead of answering `false` when an orbit was cut short.
pub fn eq(t1: &Term, t2: &Term, bound: usize) -> Result<bool> {
    if t1.dim() != t2.dim() {
        return Err(Error::DimensionMismatch(t1.dim(), t2.dim()));
    }
    if reduce(t1) == reduce(t2) {
        return Ok(true);
    }
    let c1 = canonical(t1, bound);
    let c2 = canonical(t2, bound);
    if c1.rep == c2.rep {
        return Ok(true);
    }
    if c1.exhausted && c2.exhausted {
        Ok(false)
    } else {
        Err(Error::BoundExceeded(bound))
    }
}

/// The axiom family an [`AxiomPair`] instantiates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomTag {
    Involutive,
    DualCommute,
    DualOverComp,
    DualOverId,
    Assoc,
    Exchange,
    IdFunctoriality,
    UnitLeft,
    UnitRight,
    ContractionToIdentity,
}

impl AxiomTag {
    pub const ALL: [AxiomTag; 10] = [
        AxiomTag::Involutive,
        AxiomTag::DualCommute,
        AxiomTag::DualOverComp,
        AxiomTag::DualOverId,
        AxiomTag::Assoc,
        AxiomTag::Exchange,
        AxiomTag::IdFunctoriality,
        AxiomTag::UnitLeft,
        AxiomTag::UnitRight,
        AxiomTag::ContractionToIdentity,
    ];
}

impl fmt::Display for AxiomTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AxiomTag::Involutive => "involutive",
            AxiomTag::DualCommute => "dual-commute",
            AxiomTag::DualOverComp => "dual-over-comp",
            AxiomTag::DualOverId => "dual-over-id",
            AxiomTag::Assoc => "assoc",
            AxiomTag::Exchange => "exchange",
            AxiomTag::IdFunctoriality => "id-functoriality",
            AxiomTag::UnitLeft => "unit-left",
            AxiomTag::UnitRight => "unit-right",
            AxiomTag::ContractionToIdentity => "contraction-to-identity",
        })
    }
}

/// One generating instance of the congruence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AxiomPair {
    pub lhs: Term,
    pub rhs: Term,
    pub tag: AxiomTag,
}

/// Instances of every axiom family rooted at `t`, without membership checks.
pub fn axiom_instances(t: &Term) -> Vec<(AxiomTag, Term)> {
    let mut out = Vec::new();
    let word = t.word().indices();
    if word.len() >= 2 {
        let n = word.len();
        let (a, b) = (word[n - 2], word[n - 1]);
        let base = DualityWord::from_indices(word[..n - 2].to_vec());
        if a == b {
            out.push((AxiomTag::Involutive, t.with_word(base)));
        } else {
            let mut swapped = base;
            swapped.push(b);
            swapped.push(a);
            out.push((AxiomTag::DualCommute, t.with_word(swapped)));
        }
    }
    if word.len() == 1 {
        let alpha = word[0];
        match t.kind() {
            Kind::Id(z) => out.push((
                AxiomTag::DualOverId,
                Term::raw_id(z.with_word(z.word().appended(alpha)), DualityWord::empty()),
            )),
            Kind::Comp { depth, later, earlier } => {
                let (a, b) = if alpha.contains(*depth) { (earlier, later) } else { (later, earlier) };
                out.push((
                    AxiomTag::DualOverComp,
                    Term::raw_comp(
                        *depth,
                        a.with_word(a.word().appended(alpha)),
                        b.with_word(b.word().appended(alpha)),
                        DualityWord::empty(),
                    ),
                ));
            }
            _ => {}
        }
    }
    if !word.is_empty() {
        return out;
    }
    match t.kind() {
        Kind::Comp { depth, later, earlier } => {
            let m = t.dim();
            let height = m - depth;
            let tower_of = |x: &Term| {
                let mut cur = x.clone();
                for _ in 0..height {
                    match cur.kind() {
                        Kind::Id(z) if cur.word().is_empty() => cur = z.clone(),
                        _ => return false,
                    }
                }
                true
            };
            if tower_of(later) {
                out.push((AxiomTag::UnitLeft, earlier.clone()));
            }
            if tower_of(earlier) {
                out.push((AxiomTag::UnitRight, later.clone()));
            }
            if let Kind::Comp { depth: d, later: a, earlier: b } = later.kind() {
                if d == depth && later.word().is_empty() {
                    let inner = Term::raw_comp(*depth, b.clone(), earlier.clone(), DualityWord::empty());
                    out.push((AxiomTag::Assoc, Term::raw_comp(*depth, a.clone(), inner, DualityWord::empty())));
                }
            }
            if let (Kind::Id(a), Kind::Id(b)) = (later.kind(), earlier.kind()) {
                if later.word().is_empty() && earlier.word().is_empty() && *depth < a.dim() {
                    let inner = Term::raw_comp(*depth, a.clone(), b.clone(), DualityWord::empty());
                    out.push((AxiomTag::IdFunctoriality, Term::raw_id(inner, DualityWord::empty())));
                }
            }
            if let (
                Kind::Comp { depth: s1, later: a1, earlier: a2 },
                Kind::Comp { depth: s2, later: b1, earlier: b2 },
            ) = (later.kind(), earlier.kind())
            {
                if s1 == s2 && s1 != depth && later.word().is_empty() && earlier.word().is_empty() {
                    let top = Term::raw_comp(*depth, a1.clone(), b1.clone(), DualityWord::empty());
                    let bottom = Term::raw_comp(*depth, a2.clone(), b2.clone(), DualityWord::empty());
                    let rhs = Term::raw_comp(*s1, top, bottom, DualityWord::empty());
                    if rhs.is_well_formed() {
                        out.push((AxiomTag::Exchange, rhs));
                    }
                }
            }
        }
        Kind::Ctr { source, .. } => {
            out.push((AxiomTag::ContractionToIdentity, Term::raw_id(source.clone(), DualityWord::empty())));
        }
        _ => {}
    }
    out
}

/// Every axiom instance whose two sides both lie in `universe`.
pub fn axiom_pairs(universe: &[Term]) -> Vec<AxiomPair> {
    let members: HashSet<&Term> = universe.iter().collect();
    let mut out = Vec::new();
    for t in universe {
        for (tag, rhs) in axiom_instances(t) {
            if members.contains(&rhs) {
                out.push(AxiomPair { lhs: t.clone(), rhs, tag });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::globular::fixtures;
    use crate::magma::Magma;

    fn q2() -> Magma {
        Magma::new(fixtures::q2())
    }

    fn equal(m: &Magma, a: &str, b: &str) -> Result<bool> {
        eq(&m.parse(a).unwrap(), &m.parse(b).unwrap(), DEFAULT_BOUND)
    }

    #[test]
    fn exchange_instance_in_qx() {
        let m = Magma::new(fixtures::qx());
        let lhs = m.parse("(comp 0 (comp 1 y' y) (comp 1 x' x))").unwrap();
        let rhs = m.parse("(comp 1 (comp 0 y' x') (comp 0 y x))").unwrap();
        let (a, b) = (canonical(&lhs, DEFAULT_BOUND), canonical(&rhs, DEFAULT_BOUND));
        assert!(a.exhausted && b.exhausted);
        assert_eq!(a.rep, b.rep);
    }

    #[test]
    fn whiskered_exchange() {
        let m = Magma::new(fixtures::qx());
        assert_eq!(equal(&m, "(comp 1 (comp 0 y (id f2)) (comp 0 (id g1) x))", "(comp 0 y x)"), Ok(true));
        assert_eq!(equal(&m, "(comp 1 (comp 0 (id g2) x) (comp 0 y (id f1)))", "(comp 0 y x)"), Ok(true));
    }

    #[test]
    fn atoms_are_their_own_class() {
        let m = q2();
        let c = canonical(&m.gen("f").unwrap(), DEFAULT_BOUND);
        assert_eq!(c.rep.serialize(), "f");
        assert!(c.exhausted);
    }

    #[test]
    fn association_either_way() {
        let m = q2();
        assert_eq!(equal(&m, "(comp 0 (comp 0 f g) f)", "(comp 0 f (comp 0 g f))"), Ok(true));
    }

    #[test]
    fn dual_examples() {
        let m = q2();
        assert_eq!(equal(&m, "(dual {} f)", "f"), Ok(false));
        assert_eq!(equal(&m, "(dual {0} (dual {1} u))", "(dual {1} (dual {0} u))"), Ok(true));
        assert_eq!(equal(&m, "(comp 0 (id g) (id f))", "(id (comp 0 g f))"), Ok(true));
        assert_eq!(equal(&m, "f", "h"), Ok(false));
        assert_eq!(equal(&m, "f", "u"), Err(Error::DimensionMismatch(1, 2)));
    }

    #[test]
    fn tiny_bound_is_undecided_not_false() {
        let m = Magma::new(fixtures::qx());
        let lhs = m.parse("(comp 0 (comp 1 y' y) (comp 1 x' x))").unwrap();
        let rhs = m.parse("(comp 1 (comp 0 y' x') (comp 0 y x))").unwrap();
        for bound in 1..4 {
            assert!(matches!(eq(&lhs, &rhs, bound), Ok(true) | Err(Error::BoundExceeded(_))));
        }
        assert_eq!(eq(&lhs, &rhs, DEFAULT_BOUND), Ok(true));
    }

    #[test]
    fn axiom_pair_examples() {
        let m = q2();
        let universe = m.universe(1, 2, 1);
        let pairs = axiom_pairs(&universe);
        let find = |l: &str, r: &str, tag: AxiomTag| {
            pairs.iter().any(|p| p.lhs.serialize() == l && p.rhs.serialize() == r && p.tag == tag)
        };
        assert!(find("(comp 0 f (id A))", "f", AxiomTag::UnitRight));
        assert!(find("(comp 0 (id B) f)", "f", AxiomTag::UnitLeft));
        assert!(axiom_pairs(&[]).is_empty());
        let universe = m.universe(1, 1, 2);
        let pairs = axiom_pairs(&universe);
        assert!(pairs.iter().any(|p| p.lhs.serialize() == "(dual {0} (dual {0} f))"
            && p.rhs.serialize() == "f"
            && p.tag == AxiomTag::Involutive));
    }
}
