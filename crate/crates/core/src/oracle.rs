//! Brute-force congruence closure over a finite universe of terms.
//!
//! Starts from the axiom instances inside the universe and merges classes
//! under compatibility with every operation until nothing changes. It shares
//! nothing with the rewriting engine beyond the axiom list, so it serves as
//! an independent check on [`crate::congruence::eq`].

use std::collections::HashMap;

use crate::congruence::axiom_pairs;
use crate::duality::DualityIndex;
use crate::term::{term_order, Kind, Term};

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// How a term is built from its immediate parts, up to the classes of those parts.
#[derive(Clone, PartialEq, Eq, Hash)]
enum Signature {
    Dual(usize, DualityIndex),
    Id(usize),
    Comp(usize, usize, usize),
    Ctr(usize, usize),
}

/// A partition of a universe of terms into congruence classes.
#[derive(Clone, Debug)]
pub struct Partition {
    classes: Vec<Vec<Term>>,
    index: HashMap<Term, usize>,
}

impl Partition {
    pub fn classes(&self) -> &[Vec<Term>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, t: &Term) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn same_class(&self, a: &Term, b: &Term) -> bool {
        matches!((self.class_of(a), self.class_of(b)), (Some(x), Some(y)) if x == y)
    }

    /// One line per class, members tab-separated, classes sorted by their
    /// least member.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for class in &self.classes {
            let line: Vec<String> = class.iter().map(Term::serialize).collect();
            out.push_str(&line.join("\t"));
            out.push('\n');
        }
        out
    }
}

/// Least congruence on `universe` containing the axiom instances inside it.
pub fn oracle_closure(universe: &[Term]) -> Partition {
    let mut terms: Vec<Term> = universe.to_vec();
    terms.sort_by_cached_key(|t| (t.size(), t.serialize()));
    terms.dedup();
    let position: HashMap<Term, usize> = terms.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    let mut uf = UnionFind::new(terms.len());
    for pair in axiom_pairs(&terms) {
        uf.union(position[&pair.lhs], position[&pair.rhs]);
    }
    let parts: Vec<Option<(Signature, Vec<usize>)>> = terms
        .iter()
        .map(|t| {
            let pos = |x: &Term| position.get(x).copied();
            if let Some((rest, alpha)) = t.word().split_last() {
                return Some((Signature::Dual(0, alpha), vec![pos(&t.with_word(rest))?]));
            }
            match t.kind() {
                Kind::Gen(_) => None,
                Kind::Id(z) => Some((Signature::Id(0), vec![pos(z)?])),
                Kind::Comp { depth, later, earlier } => {
                    Some((Signature::Comp(*depth, 0, 0), vec![pos(later)?, pos(earlier)?]))
                }
                Kind::Ctr { source, target } => Some((Signature::Ctr(0, 0), vec![pos(source)?, pos(target)?])),
            }
        })
        .collect();
    loop {
        let mut seen: HashMap<Signature, usize> = HashMap::new();
        let mut changed = false;
        for (i, part) in parts.iter().enumerate() {
            let Some((shape, kids)) = part else { continue };
            let classes: Vec<usize> = kids.iter().map(|&k| uf.find(k)).collect();
            let sig = match shape {
                Signature::Dual(_, a) => Signature::Dual(classes[0], *a),
                Signature::Id(_) => Signature::Id(classes[0]),
                Signature::Comp(p, _, _) => Signature::Comp(*p, classes[0], classes[1]),
                Signature::Ctr(_, _) => Signature::Ctr(classes[0], classes[1]),
            };
            match seen.get(&sig) {
                Some(&j) => changed |= uf.union(i, j),
                None => {
                    seen.insert(sig, i);
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut groups: HashMap<usize, Vec<Term>> = HashMap::new();
    for (i, t) in terms.iter().enumerate() {
        groups.entry(uf.find(i)).or_default().push(t.clone());
    }
    let mut classes: Vec<Vec<Term>> = groups.into_values().collect();
    for c in &mut classes {
        c.sort_by(term_order);
    }
    classes.sort_by(|a, b| term_order(&a[0], &b[0]));
    let mut index = HashMap::new();
    for (i, c) in classes.iter().enumerate() {
        for t in c {
            index.insert(t.clone(), i);
        }
    }
    Partition { classes, index }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::globular::fixtures;
    use crate::magma::Magma;

    #[test]
    fn unit_instances_share_a_class() {
        let m = Magma::new(fixtures::q2());
        let universe = m.universe(1, 3, 1);
        let p = oracle_closure(&universe);
        let f = m.gen("f").unwrap();
        assert!(p.same_class(&f, &m.parse("(comp 0 f (id A))").unwrap()));
        assert!(p.same_class(&f, &m.parse("(comp 0 (id B) f)").unwrap()));
        assert!(!p.same_class(&f, &m.gen("h").unwrap()));
    }

    #[test]
    fn empty_universe() {
        assert!(oracle_closure(&[]).is_empty());
    }

    #[test]
    fn render_is_stable() {
        let m = Magma::new(fixtures::q2());
        let universe = m.universe(1, 2, 1);
        assert_eq!(oracle_closure(&universe).render(), oracle_closure(&universe).render());
    }
}
