//! Seeded random terms, boundary-exact variants, and random nestings.
//!
//! All law checkers draw from these generators so that a seed fixes every
//! sample they see.

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::duality::DualityWord;
use crate::globular::Side;
use crate::magma::Magma;
use crate::term::{Kind, Leaf, Term};

/// Bounds on sampled terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleConfig {
    /// Maximum node count.
    pub max_size: usize,
    /// Maximum length of any single duality word.
    pub max_word: usize,
    pub max_dim: usize,
    /// Whether contraction cells may appear.
    pub contractions: bool,
}

impl SampleConfig {
    pub fn new(max_size: usize, max_word: usize, max_dim: usize) -> Self {
        SampleConfig { max_size, max_word, max_dim, contractions: false }
    }

    pub fn with_contractions(mut self) -> Self {
        self.contractions = true;
        self
    }
}

fn max_word_len(t: &Term) -> usize {
    t.children().iter().map(max_word_len).max().unwrap_or(0).max(t.word().len())
}

/// Grows a pool of well-formed terms by random constructor applications.
pub struct TermSampler<'a> {
    magma: &'a Magma,
    config: SampleConfig,
    rng: ChaCha8Rng,
    pool: Vec<Term>,
    seen: HashSet<Term>,
    by_source: HashMap<(usize, usize, Term), Vec<usize>>,
}

impl<'a> TermSampler<'a> {
    pub fn new(magma: &'a Magma, config: SampleConfig, seed: u64) -> Self {
        let mut s = TermSampler {
            magma,
            config,
            rng: ChaCha8Rng::seed_from_u64(seed),
            pool: Vec::new(),
            seen: HashSet::new(),
            by_source: HashMap::new(),
        };
        for d in 0..=magma.truncation().min(config.max_dim) {
            for g in magma.generators(d) {
                s.admit(g.clone());
            }
        }
        s
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn admit(&mut self, t: Term) -> bool {
        if t.size() > self.config.max_size
            || t.dim() > self.config.max_dim
            || max_word_len(&t) > self.config.max_word
            || self.seen.contains(&t)
        {
            return false;
        }
        let i = self.pool.len();
        for depth in 0..t.dim() {
            let s = t.iterated(depth, Side::Source).expect("positive dimension");
            self.by_source.entry((t.dim(), depth, s)).or_default().push(i);
        }
        self.seen.insert(t.clone());
        self.pool.push(t);
        true
    }

    fn pick(&mut self) -> Term {
        let i = self.rng.gen_range(0..self.pool.len());
        self.pool[i].clone()
    }

    fn attempt(&mut self) -> Option<Term> {
        let n = self.magma.truncation();
        match self.rng.gen_range(0..10) {
            0..=1 => {
                let t = self.pick();
                self.magma.id(&t).ok()
            }
            2..=3 => {
                let t = self.pick();
                let indices = self.magma.indices();
                let alpha = *indices.choose(&mut self.rng)?;
                self.magma.dual(alpha, &t).ok()
            }
            4 if self.config.contractions => {
                let x = self.pick();
                if x.dim() == 0 || x.dim() >= n {
                    return None;
                }
                let vs = variants(self.magma, &x);
                let y = vs.choose(&mut self.rng)?.clone();
                crate::contraction::contract_trusted(x, y, n).ok()
            }
            _ => {
                let b = self.pick();
                if b.dim() == 0 {
                    return None;
                }
                let depth = self.rng.gen_range(0..b.dim());
                let t = b.iterated(depth, Side::Target).ok()?;
                let key = (b.dim(), depth, t.clone());
                let a = match self.by_source.get(&key) {
                    Some(c) if self.rng.gen_bool(0.85) => self.pool[*c.choose(&mut self.rng)?].clone(),
                    _ => self.magma.id_tower(&t, b.dim() - depth).ok()?,
                };
                self.magma.comp(depth, &a, &b).ok()
            }
        }
    }

    /// The next new term, or `None` when the pool cannot grow.
    pub fn next_term(&mut self) -> Option<Term> {
        if self.pool.is_empty() {
            return None;
        }
        for _ in 0..200 {
            if let Some(t) = self.attempt() {
                if self.admit(t.clone()) {
                    return Some(t);
                }
            }
        }
        None
    }

    /// `count` terms: every generator first, then newly built terms, then
    /// repeats from the pool once it stops growing.
    pub fn sample(&mut self, count: usize) -> Vec<Term> {
        let mut out: Vec<Term> = self.pool.iter().take(count).cloned().collect();
        while out.len() < count {
            match self.next_term() {
                Some(t) => out.push(t),
                None if self.pool.is_empty() => break,
                None => {
                    let t = self.pick();
                    out.push(t);
                }
            }
        }
        out
    }
}

/// Cells parallel to `t` on the nose and equal to it in the quotient:
/// unit insertion and rebracketing at the top depth, and moving a duality
/// inward where that keeps boundaries syntactically fixed.
pub fn variants(magma: &Magma, t: &Term) -> Vec<Term> {
    let mut out = vec![t.clone()];
    if t.dim() == 0 {
        return out;
    }
    let top = t.dim() - 1;
    let (s, tt) = t.boundaries().expect("positive dimension");
    if let Ok(i) = magma.id(&s) {
        out.push(Term::raw_comp(top, t.clone(), i, DualityWord::empty()));
    }
    if let Ok(i) = magma.id(&tt) {
        out.push(Term::raw_comp(top, i, t.clone(), DualityWord::empty()));
    }
    if t.word().is_empty() {
        if let Kind::Comp { depth, later, earlier } = t.kind() {
            if *depth == top {
                if let Kind::Comp { depth: d, later: b, earlier: c } = earlier.kind() {
                    if d == depth && earlier.word().is_empty() {
                        let left = Term::raw_comp(top, later.clone(), b.clone(), DualityWord::empty());
                        out.push(Term::raw_comp(top, left, c.clone(), DualityWord::empty()));
                    }
                }
                if let Kind::Comp { depth: d, later: a, earlier: b } = later.kind() {
                    if d == depth && later.word().is_empty() {
                        let right = Term::raw_comp(top, b.clone(), earlier.clone(), DualityWord::empty());
                        out.push(Term::raw_comp(top, a.clone(), right, DualityWord::empty()));
                    }
                }
            }
        }
    }
    if let Some((rest, alpha)) = t.word().split_last() {
        let bare = t.with_word(rest);
        let pushed = match bare.kind() {
            Kind::Id(z) if bare.word().is_empty() => {
                Some(Term::raw_id(z.with_word(z.word().appended(alpha)), DualityWord::empty()))
            }
            Kind::Comp { depth, later, earlier } if *depth == top && bare.word().is_empty() => {
                let (a, b) = if alpha.contains(*depth) { (earlier, later) } else { (later, earlier) };
                Some(Term::raw_comp(
                    *depth,
                    a.with_word(a.word().appended(alpha)),
                    b.with_word(b.word().appended(alpha)),
                    DualityWord::empty(),
                ))
            }
            _ => None,
        };
        out.extend(pushed);
    }
    out.retain(|v| v.is_well_formed() && v.boundaries() == t.boundaries());
    out
}

/// Tη: every leaf becomes the quotation of itself, words staying outside.
pub fn quote_leaves(t: &Term) -> Term {
    match t.kind() {
        Kind::Gen(_) => Term::quote(t.bare()).with_word(t.word().clone()),
        _ => {
            let kids: Vec<Term> = t.children().iter().map(quote_leaves).collect();
            t.with_children(&kids)
        }
    }
}

fn chunk_once(t: &Term, rng: &mut ChaCha8Rng, p: f64) -> Term {
    if t.is_leaf() || rng.gen_bool(p) {
        if t.word().is_empty() || rng.gen_bool(0.5) {
            return Term::quote(t.clone());
        }
        return Term::quote(t.bare()).with_word(t.word().clone());
    }
    let kids: Vec<Term> = t.children().iter().map(|c| chunk_once(c, rng, p)).collect();
    t.with_children(&kids)
}

/// A random nesting of `t` one level up whose flattening is `t`: subterms
/// are quoted at random, falling back to quoting every leaf when no random
/// choice is well formed.
pub fn nest(t: &Term, rng: &mut ChaCha8Rng) -> Term {
    for attempt in 0..8 {
        let p = 0.45 - 0.05 * attempt as f64;
        let n = chunk_once(t, rng, p);
        if n.is_well_formed() {
            return n;
        }
    }
    quote_leaves(t)
}

/// True when every generator leaf of `t` is a quotation.
pub fn is_nested(t: &Term) -> bool {
    match t.kind() {
        Kind::Gen(Leaf::Quote(_)) => true,
        Kind::Gen(_) => false,
        _ => t.children().iter().all(is_nested),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::{eq, DEFAULT_BOUND};
    use crate::globular::fixtures;

    #[test]
    fn samples_are_well_formed_and_bounded() {
        let m = Magma::new(fixtures::q2());
        let cfg = SampleConfig::new(12, 2, 2);
        let mut s = TermSampler::new(&m, cfg, 3);
        let terms = s.sample(300);
        assert_eq!(terms.len(), 300);
        for t in &terms {
            assert!(t.is_well_formed(), "{t}");
            assert!(t.size() <= 12);
        }
    }

    #[test]
    fn seeded_sampling_is_reproducible() {
        let m = Magma::new(fixtures::qx());
        let cfg = SampleConfig::new(10, 1, 2).with_contractions();
        let a = TermSampler::new(&m, cfg, 11).sample(100);
        let b = TermSampler::new(&m, cfg, 11).sample(100);
        assert_eq!(a, b);
    }

    #[test]
    fn empty_presentation_gives_no_samples() {
        let m = Magma::new(crate::globular::GlobularSet::empty(2));
        assert!(TermSampler::new(&m, SampleConfig::new(5, 1, 2), 0).sample(10).is_empty());
    }

    #[test]
    fn variants_are_parallel_and_equal() {
        let m = Magma::new(fixtures::q2());
        let mut s = TermSampler::new(&m, SampleConfig::new(8, 1, 1), 5);
        for t in s.sample(60) {
            for v in variants(&m, &t) {
                assert_eq!(v.boundaries(), t.boundaries());
                assert_eq!(eq(&v, &t, DEFAULT_BOUND), Ok(true), "{v} vs {t}");
            }
        }
    }

    #[test]
    fn nestings_are_well_formed() {
        let m = Magma::new(fixtures::q2());
        let mut s = TermSampler::new(&m, SampleConfig::new(9, 1, 2), 8);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for t in s.sample(100) {
            let n = nest(&t, &mut rng);
            assert!(n.is_well_formed());
            assert!(is_nested(&n));
            assert!(quote_leaves(&t).is_well_formed());
        }
    }
}
