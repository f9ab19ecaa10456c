//! Term construction over a presentation, and bounded enumeration.

use std::collections::HashMap;
use std::sync::Arc;

use crate::duality::{DualityIndex, DualityWord};
use crate::error::Result;
use crate::globular::{CellId, GlobularSet, Side};
use crate::term::{term_order, Term};

/// The free self-dual reflexive globular magma over a presentation.
///
/// Holds one generator term per presentation cell; every constructor checks
/// its preconditions against the truncation level.
#[derive(Clone)]
pub struct Magma {
    presentation: Arc<GlobularSet>,
    generators: Vec<Vec<Term>>,
}

impl Magma {
    pub fn new(presentation: GlobularSet) -> Magma {
        let mut generators: Vec<Vec<Term>> = Vec::new();
        for dim in 0..=presentation.truncation() {
            let mut row = Vec::with_capacity(presentation.cell_count(dim));
            for cell in presentation.cells(dim) {
                let boundary = if dim == 0 {
                    None
                } else {
                    let s = presentation.boundary(cell, Side::Source).unwrap();
                    let t = presentation.boundary(cell, Side::Target).unwrap();
                    Some((generators[dim - 1][s.index].clone(), generators[dim - 1][t.index].clone()))
                };
                row.push(Term::cell(presentation.name_arc(cell), dim, boundary));
            }
            generators.push(row);
        }
        Magma { presentation: Arc::new(presentation), generators }
    }

    pub fn presentation(&self) -> &GlobularSet {
        &self.presentation
    }

    pub fn truncation(&self) -> usize {
        self.presentation.truncation()
    }

    /// The generator named `name`, in whichever dimension it lives.
    pub fn gen(&self, name: &str) -> Result<Term> {
        let cell = self.presentation.resolve(name)?;
        Ok(self.generator(cell))
    }

    pub fn generator(&self, cell: CellId) -> Term {
        self.generators[cell.dim][cell.index].clone()
    }

    pub fn generators(&self, dim: usize) -> &[Term] {
        self.generators.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn id(&self, t: &Term) -> Result<Term> {
        Term::identity(t, self.truncation())
    }

    /// Identity tower of height `height` on `t`.
    pub fn id_tower(&self, t: &Term, height: usize) -> Result<Term> {
        let mut out = t.clone();
        for _ in 0..height {
            out = self.id(&out)?;
        }
        Ok(out)
    }

    pub fn comp(&self, depth: usize, later: &Term, earlier: &Term) -> Result<Term> {
        Term::compose(depth, later, earlier)
    }

    pub fn dual(&self, alpha: DualityIndex, t: &Term) -> Result<Term> {
        Term::dual(alpha, t, self.truncation())
    }

    /// Builds a duality index from explicit dimensions.
    pub fn index(&self, dims: &[usize]) -> Result<DualityIndex> {
        DualityIndex::new(dims.iter().copied(), self.truncation())
    }

    /// All duality indices available at this truncation, in canonical order.
    pub fn indices(&self) -> Vec<DualityIndex> {
        DualityIndex::all(self.truncation())
    }

    /// Every well-formed contraction-free term of dimension `dim` with at
    /// most `size_bound` generator occurrences and total duality weight at
    /// most `gamma_bound`, sorted by the canonical term order.
    ///
    /// Identity nodes do not count towards the size, so `(id A)` has size 1.
    /// The weight bound counts every duality application in the term, so
    /// the resulting set is closed under subterms and boundaries.
    pub fn enumerate(&self, dim: usize, size_bound: usize, gamma_bound: usize) -> Vec<Term> {
        if dim > self.truncation() {
            return Vec::new();
        }
        let table = Enumeration::build(self, dim, size_bound, gamma_bound);
        let mut out: Vec<Term> = (1..=size_bound).flat_map(|s| table.at(dim, s).iter().cloned()).collect();
        out.sort_by_cached_key(|t| (t.size(), t.serialize()));
        out.dedup();
        out
    }

    /// Union of [`Magma::enumerate`] over every dimension up to `max_dim`.
    pub fn universe(&self, max_dim: usize, size_bound: usize, gamma_bound: usize) -> Vec<Term> {
        let mut out = Vec::new();
        for d in 0..=max_dim.min(self.truncation()) {
            out.extend(self.enumerate(d, size_bound, gamma_bound));
        }
        out
    }
}

/// Every duality word of exactly `len` letters.
fn words_of_length(indices: &[DualityIndex], len: usize) -> Vec<DualityWord> {
    let mut words = vec![DualityWord::empty()];
    for _ in 0..len {
        words = words.iter().flat_map(|w| indices.iter().map(move |a| w.appended(*a))).collect();
    }
    words
}

/// Terms indexed by dimension and generator count.
struct Enumeration {
    by_dim_size: Vec<Vec<Vec<Term>>>,
}

impl Enumeration {
    fn at(&self, dim: usize, size: usize) -> &[Term] {
        &self.by_dim_size[dim][size]
    }

    fn build(magma: &Magma, max_dim: usize, size_bound: usize, gamma_bound: usize) -> Self {
        let indices = magma.indices();
        let words: Vec<Vec<DualityWord>> = (0..=gamma_bound).map(|k| words_of_length(&indices, k)).collect();
        let mut by_dim_size = vec![vec![Vec::<Term>::new(); size_bound + 1]; max_dim + 1];
        let decorate = |bare: Term, out: &mut Vec<Term>| {
            let budget = gamma_bound.saturating_sub(bare.weight());
            for ws in words.iter().take(budget + 1) {
                for w in ws {
                    out.push(bare.with_word(w.clone()));
                }
            }
        };
        for size in 1..=size_bound {
            for dim in 0..=max_dim {
                let mut level = Vec::new();
                if size == 1 {
                    for g in magma.generators(dim) {
                        decorate(g.clone(), &mut level);
                    }
                }
                if dim >= 1 {
                    for z in &by_dim_size[dim - 1][size] {
                        decorate(Term::raw_id(z.clone(), DualityWord::empty()), &mut level);
                    }
                }
                if dim >= 1 && size >= 2 {
                    for depth in 0..dim {
                        let mut by_source: Vec<HashMap<Term, Vec<usize>>> = vec![HashMap::new(); size];
                        for (ls, bucket) in by_source.iter_mut().enumerate().skip(1) {
                            for (i, a) in by_dim_size[dim][ls].iter().enumerate() {
                                let s = a.iterated(depth, Side::Source).expect("positive dimension");
                                bucket.entry(s).or_default().push(i);
                            }
                        }
                        for es in 1..size {
                            let ls = size - es;
                            for b in &by_dim_size[dim][es] {
                                let t = b.iterated(depth, Side::Target).expect("positive dimension");
                                let Some(cands) = by_source[ls].get(&t) else { continue };
                                for &i in cands {
                                    let a = &by_dim_size[dim][ls][i];
                                    if a.weight() + b.weight() > gamma_bound {
                                        continue;
                                    }
                                    let bare = Term::raw_comp(depth, a.clone(), b.clone(), DualityWord::empty());
                                    decorate(bare, &mut level);
                                }
                            }
                        }
                    }
                }
                by_dim_size[dim][size] = level;
            }
        }
        Enumeration { by_dim_size }
    }
}

/// Sorts terms by the canonical term order.
pub fn sort_terms(terms: &mut [Term]) {
    terms.sort_by(term_order);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::globular::fixtures;

    fn q2() -> Magma {
        Magma::new(fixtures::q2())
    }

    #[test]
    fn generators_have_presentation_dimensions() {
        let m = q2();
        assert_eq!(m.gen("f").unwrap().dim(), 1);
        assert_eq!(m.gen("A").unwrap().dim(), 0);
        assert_eq!(m.gen("zz"), Err(Error::UnknownCell("zz".into())));
    }

    #[test]
    fn identity_boundaries_and_truncation() {
        let m = q2();
        let a = m.gen("A").unwrap();
        let ia = m.id(&a).unwrap();
        assert_eq!(ia.dim(), 1);
        assert_eq!(ia.source().unwrap(), a);
        assert_eq!(ia.target().unwrap(), a);
        let f = m.gen("f").unwrap();
        assert_eq!(m.id(&f).unwrap().source().unwrap(), f);
        assert_eq!(m.id(&f).unwrap().dim(), 2);
        let u = m.gen("u").unwrap();
        assert_eq!(m.id(&u), Err(Error::TruncationExceeded { dim: 3, truncation: 2 }));
    }

    #[test]
    fn composition_takes_source_from_the_earlier_factor() {
        let m = q2();
        let (f, g) = (m.gen("f").unwrap(), m.gen("g").unwrap());
        let gf = m.comp(0, &g, &f).unwrap();
        assert_eq!(gf.dim(), 1);
        assert_eq!(gf.source().unwrap(), m.gen("A").unwrap());
        assert_eq!(gf.target().unwrap(), m.gen("A").unwrap());
        assert!(matches!(m.comp(0, &f, &f), Err(Error::BoundaryMismatch(_))));
        assert!(matches!(m.comp(1, &f, &f), Err(Error::Depth { depth: 1, dim: 1 })));
        let u = m.gen("u").unwrap();
        assert_eq!(m.comp(0, &u, &f), Err(Error::DimensionMismatch(2, 1)));
    }

    #[test]
    fn vertical_composite_in_qx() {
        let m = Magma::new(fixtures::qx());
        let (x, x2) = (m.gen("x").unwrap(), m.gen("x'").unwrap());
        let c = m.comp(1, &x2, &x).unwrap();
        assert_eq!(c.source().unwrap(), m.gen("f1").unwrap());
        assert_eq!(c.target().unwrap(), m.gen("f3").unwrap());
    }

    #[test]
    fn duals_append_and_stay_distinct() {
        let m = q2();
        let f = m.gen("f").unwrap();
        let z = m.index(&[0]).unwrap();
        let ff = m.dual(z, &m.dual(z, &f).unwrap()).unwrap();
        assert_eq!(ff.word().len(), 2);
        assert_ne!(ff, f);
        assert_eq!(m.index(&[2]), Err(Error::Index { index: 2, truncation: 2 }));
    }

    #[test]
    fn dual_boundaries_follow_variance() {
        let m = q2();
        let f = m.gen("f").unwrap();
        let z = m.index(&[0]).unwrap();
        let fz = m.dual(z, &f).unwrap();
        assert_eq!(fz.source().unwrap(), m.dual(z, &m.gen("B").unwrap()).unwrap());
        assert_eq!(fz.target().unwrap(), m.dual(z, &m.gen("A").unwrap()).unwrap());
        let fe = m.dual(DualityIndex::EMPTY, &f).unwrap();
        assert_eq!(fe.source().unwrap(), m.dual(DualityIndex::EMPTY, &m.gen("A").unwrap()).unwrap());
        let one = m.index(&[1]).unwrap();
        let u1 = m.dual(one, &m.gen("u").unwrap()).unwrap();
        let s = u1.source().unwrap();
        assert_eq!(s, m.dual(one, &m.gen("h").unwrap()).unwrap());
        assert_eq!(s.source().unwrap(), m.dual(one, &m.gen("A").unwrap()).unwrap());
    }

    #[test]
    fn small_enumerations() {
        let m = q2();
        let objs = m.enumerate(0, 1, 0);
        let names: Vec<String> = objs.iter().map(Term::serialize).collect();
        assert_eq!(names, vec!["A", "B"]);
        let one = m.enumerate(1, 1, 0);
        let names: Vec<String> = one.iter().map(Term::serialize).collect();
        assert_eq!(names, vec!["f", "g", "h", "(id A)", "(id B)"]);
    }

    #[test]
    fn enumeration_is_deterministic() {
        let m = q2();
        assert_eq!(m.enumerate(2, 4, 1), m.enumerate(2, 4, 1));
    }
}
