//! The free-structure monad: unit, action on morphisms, and flattening.
//!
//! A nested term is a term whose generator leaves are quotations of terms
//! one level down. Flattening substitutes each quotation, carrying the
//! leaf's duality word onto the substituted term, and rebuilds identities,
//! composites and contraction cells with the checked constructors.

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::congruence::eq;
use crate::contraction::contract_trusted;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::globular::{GlobularMorphism, GlobularSet};
use crate::magma::Magma;
use crate::report::{LawResult, Report};
use crate::sample::{nest, quote_leaves, SampleConfig, TermSampler};
use crate::term::{Kind, Leaf, Term};

/// η: a presentation cell as a term.
pub fn unit_embed(magma: &Magma, name: &str) -> Result<Term> {
    magma.gen(name)
}

/// The action of the monad on a globular morphism: relabels every named
/// leaf, including those inside quotations and contraction cells.
pub fn map_morphism(sigma: &GlobularMorphism, domain: &GlobularSet, codomain: &Magma, t: &Term) -> Result<Term> {
    let rebuilt = match t.kind() {
        Kind::Gen(Leaf::Cell { name, dim, .. }) => {
            let cell = domain
                .lookup(*dim, name)
                .ok_or_else(|| Error::Morphism(format!("`{name}` is not a {dim}-cell of the domain")))?;
            return Ok(codomain.generator(sigma.apply(cell)).with_word(t.word().clone()));
        }
        Kind::Gen(Leaf::Quote(inner)) => Term::quote(map_morphism(sigma, domain, codomain, inner)?),
        Kind::Ctr { source, target } => {
            let x = map_morphism(sigma, domain, codomain, source)?;
            let y = map_morphism(sigma, domain, codomain, target)?;
            contract_trusted(x, y, codomain.truncation())?
        }
        _ => {
            let kids =
                t.children().iter().map(|c| map_morphism(sigma, domain, codomain, c)).collect::<Result<Vec<_>>>()?;
            t.bare().with_children(&kids)
        }
    };
    Ok(rebuilt.with_word(rebuilt.word().concat(t.word())))
}

fn incoherent(e: Error) -> Error {
    Error::Substitution(e.to_string())
}

/// μ: substitutes every quotation leaf by the quoted term.
pub fn flatten(nt: &Term, truncation: usize) -> Result<Term> {
    let body = match nt.kind() {
        Kind::Gen(Leaf::Quote(inner)) => inner.clone(),
        Kind::Gen(Leaf::Cell { name, .. }) => {
            return Err(Error::Substitution(format!("leaf `{name}` is not a quotation")));
        }
        Kind::Id(z) => Term::identity(&flatten(z, truncation)?, truncation).map_err(incoherent)?,
        Kind::Comp { depth, later, earlier } => {
            let a = flatten(later, truncation)?;
            let b = flatten(earlier, truncation)?;
            Term::compose(*depth, &a, &b).map_err(incoherent)?
        }
        Kind::Ctr { source, target } => {
            let x = flatten(source, truncation)?;
            let y = flatten(target, truncation)?;
            if x.boundaries() != y.boundaries() {
                return Err(Error::Substitution(format!("contraction endpoints {x} and {y} are not parallel")));
            }
            contract_trusted(x, y, truncation).map_err(incoherent)?
        }
    };
    Ok(body.with_word(body.word().concat(nt.word())))
}

/// Tμ: flattens the quoted term inside every leaf.
pub fn flatten_leaves(nt: &Term, truncation: usize) -> Result<Term> {
    match nt.kind() {
        Kind::Gen(Leaf::Quote(inner)) => Ok(Term::quote(flatten(inner, truncation)?).with_word(nt.word().clone())),
        Kind::Gen(_) => Ok(nt.clone()),
        _ => {
            let kids = nt.children().iter().map(|c| flatten_leaves(c, truncation)).collect::<Result<Vec<_>>>()?;
            Ok(nt.with_children(&kids))
        }
    }
}

/// The monad operations a law check exercises.
pub trait MonadOps: Sync {
    /// η at the level of terms: a term as a single quoted leaf.
    fn unit(&self, t: &Term) -> Term;
    /// Tη: quote every leaf.
    fn lift_unit(&self, t: &Term) -> Term;
    fn flatten(&self, nt: &Term) -> Result<Term>;
    fn lift_flatten(&self, nt: &Term) -> Result<Term>;
}

/// The free-structure monad at a fixed truncation.
#[derive(Clone, Copy, Debug)]
pub struct FreeMonad {
    pub truncation: usize,
}

impl MonadOps for FreeMonad {
    fn unit(&self, t: &Term) -> Term {
        Term::quote(t.clone())
    }

    fn lift_unit(&self, t: &Term) -> Term {
        quote_leaves(t)
    }

    fn flatten(&self, nt: &Term) -> Result<Term> {
        flatten(nt, self.truncation)
    }

    fn lift_flatten(&self, nt: &Term) -> Result<Term> {
        flatten_leaves(nt, self.truncation)
    }
}

/// Settings for [`check_monad_laws_with`].
#[derive(Clone, Copy, Debug)]
pub struct MonadCheck {
    pub unit_samples: usize,
    pub nested_samples: usize,
    pub seed: u64,
    pub bound: usize,
    pub config: SampleConfig,
    pub exec: Execution,
}

impl MonadCheck {
    pub fn new(samples: usize, seed: u64, bound: usize, truncation: usize) -> Self {
        MonadCheck {
            unit_samples: samples,
            nested_samples: samples,
            seed,
            bound,
            config: SampleConfig::new(9, 1, truncation).with_contractions(),
            exec: Execution::default(),
        }
    }
}

enum Outcome {
    Pass,
    Fail(String),
    Undecided(String),
}

fn compare(lhs: Result<Term>, rhs: Result<Term>, bound: usize, context: &Term) -> Outcome {
    match (lhs, rhs) {
        (Ok(a), Ok(b)) => match eq(&a, &b, bound) {
            Ok(true) => Outcome::Pass,
            Ok(false) => Outcome::Fail(format!("{context}: {a} differs from {b}")),
            Err(Error::BoundExceeded(_)) => Outcome::Undecided(format!("{context}")),
            Err(e) => Outcome::Fail(format!("{context}: {e}")),
        },
        (Err(e), _) | (_, Err(e)) => Outcome::Fail(format!("{context}: {e}")),
    }
}

fn tally(law: &mut LawResult, outcomes: Vec<Outcome>) {
    for o in outcomes {
        match o {
            Outcome::Pass => law.pass(),
            Outcome::Fail(s) => law.fail(s),
            Outcome::Undecided(s) => law.undecided(s),
        }
    }
}

/// Checks both unit triangles and the associativity square on seeded samples.
pub fn check_monad_laws_with(ops: &dyn MonadOps, magma: &Magma, check: &MonadCheck) -> Report {
    let mut sampler = TermSampler::new(magma, check.config, check.seed);
    let terms = sampler.sample(check.unit_samples.max(check.nested_samples));
    let mut rng = ChaCha8Rng::seed_from_u64(check.seed ^ 0x5eed);
    let units: Vec<Term> = terms.iter().take(check.unit_samples).cloned().collect();
    let triples: Vec<(Term, Term)> = terms
        .iter()
        .take(check.nested_samples)
        .map(|t| {
            let two = nest(t, &mut rng);
            (t.clone(), nest(&two, &mut rng))
        })
        .collect();
    let bound = check.bound;
    let mut left = LawResult::new("unit-left");
    tally(&mut left, check.exec.map(&units, |t| compare(ops.flatten(&ops.unit(t)), Ok(t.clone()), bound, t)));
    let mut right = LawResult::new("unit-right");
    tally(&mut right, check.exec.map(&units, |t| compare(ops.flatten(&ops.lift_unit(t)), Ok(t.clone()), bound, t)));
    let mut assoc = LawResult::new("associativity");
    tally(
        &mut assoc,
        check.exec.map(&triples, |(_, n3)| {
            let lhs = ops.lift_flatten(n3).and_then(|n| ops.flatten(&n));
            let rhs = ops.flatten(n3).and_then(|n| ops.flatten(&n));
            compare(lhs, rhs, bound, n3)
        }),
    );
    let mut report = Report::new();
    report.push(left);
    report.push(right);
    report.push(assoc);
    report
}

/// Monad law check with the standard operations over a presentation.
pub fn check_monad_laws(presentation: &GlobularSet, samples: usize, seed: u64, bound: usize) -> Report {
    let magma = Magma::new(presentation.clone());
    let ops = FreeMonad { truncation: magma.truncation() };
    check_monad_laws_with(&ops, &magma, &MonadCheck::new(samples, seed, bound, magma.truncation()))
}

/// Builds a morphism from pairs of names, for tests and the command line.
pub fn morphism_from_pairs(
    domain: &GlobularSet,
    codomain: &GlobularSet,
    pairs: &[(&str, &str)],
) -> Result<GlobularMorphism> {
    let mut map: HashMap<String, String> = HashMap::new();
    for cell in domain.all_cells() {
        let name = domain.name(cell).to_string();
        map.insert(name.clone(), name);
    }
    for (a, b) in pairs {
        map.insert(a.to_string(), b.to_string());
    }
    GlobularMorphism::new(domain, codomain, &map)
}

/// `g` without the named cells; cells above a dropped cell must be dropped too.
pub fn restrict(g: &GlobularSet, drop: &[&str]) -> GlobularSet {
    let mut out = GlobularSet::empty(g.truncation());
    for cell in g.all_cells() {
        let name = g.name(cell);
        if drop.contains(&name) {
            continue;
        }
        if cell.dim == 0 {
            out.add_object(name).expect("unique names");
        } else {
            let s = g.name(g.boundary(cell, crate::globular::Side::Source).unwrap()).to_string();
            let t = g.name(g.boundary(cell, crate::globular::Side::Target).unwrap()).to_string();
            out.add_cell(cell.dim, name, &s, &t).expect("boundaries kept");
        }
    }
    out
}
