//! Finite strict involutive categories as algebras of the monad.
//!
//! A [`FiniteInvolutiveCategory`] stores its operations as tables. Partial
//! tables are allowed when the category declares a window: a missing entry
//! then means the result lies outside the window, and law checkers skip the
//! sample instead of counting it.

use std::collections::HashMap;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::congruence::canonical;
use crate::duality::DualityIndex;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::globular::{CellId, GlobularSet, Side};
use crate::magma::Magma;
use crate::monad::flatten;
use crate::report::{LawResult, Report};
use crate::rewrite::reduce;
use crate::sample::{nest, SampleConfig, TermSampler};
use crate::term::{Kind, Leaf, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
struct Cell {
    name: Arc<str>,
    boundary: Option<(usize, usize)>,
}

/// A strict involutive truncated category with finitely many cells in view.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteInvolutiveCategory {
    name: String,
    truncation: usize,
    cells: Vec<Vec<Cell>>,
    by_name: Vec<HashMap<Arc<str>, usize>>,
    identity: Vec<Vec<Option<usize>>>,
    compose: HashMap<(usize, usize, usize, usize), usize>,
    dual: HashMap<(usize, u32, usize), usize>,
    window: Option<usize>,
}

impl FiniteInvolutiveCategory {
    pub fn new(name: &str, truncation: usize) -> Self {
        FiniteInvolutiveCategory {
            name: name.to_string(),
            truncation,
            cells: vec![Vec::new(); truncation + 1],
            by_name: vec![HashMap::new(); truncation + 1],
            identity: vec![Vec::new(); truncation + 1],
            compose: HashMap::new(),
            dual: HashMap::new(),
            window: None,
        }
    }

    /// Declares that composition is partial beyond `window`.
    pub fn with_window(mut self, window: usize) -> Self {
        self.window = Some(window);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn window(&self) -> Option<usize> {
        self.window
    }

    pub fn cell_count(&self, dim: usize) -> usize {
        self.cells.get(dim).map_or(0, Vec::len)
    }

    pub fn cells(&self, dim: usize) -> impl Iterator<Item = CellId> {
        (0..self.cell_count(dim)).map(move |index| CellId { dim, index })
    }

    pub fn all_cells(&self) -> impl Iterator<Item = CellId> + '_ {
        (0..=self.truncation).flat_map(move |d| self.cells(d))
    }

    pub fn cell_name(&self, c: CellId) -> &str {
        &self.cells[c.dim][c.index].name
    }

    pub fn lookup(&self, dim: usize, name: &str) -> Option<CellId> {
        let index = *self.by_name.get(dim)?.get(name)?;
        Some(CellId { dim, index })
    }

    /// Adds a cell; `boundary` names the source and target one dimension down.
    pub fn add_cell(&mut self, dim: usize, name: &str, boundary: Option<(&str, &str)>) -> Result<CellId> {
        if dim > self.truncation {
            return Err(Error::TruncationExceeded { dim, truncation: self.truncation });
        }
        if self.by_name[dim].contains_key(name) {
            return Err(Error::Model(format!("duplicate {dim}-cell `{name}`")));
        }
        let boundary = match (dim, boundary) {
            (0, None) => None,
            (0, Some(_)) => return Err(Error::Model("0-cells have no boundary".into())),
            (_, None) => return Err(Error::Model(format!("{dim}-cell `{name}` needs a boundary"))),
            (d, Some((s, t))) => {
                let find = |n: &str| {
                    self.lookup(d - 1, n).map(|c| c.index).ok_or_else(|| Error::UnresolvedReference(n.to_string()))
                };
                Some((find(s)?, find(t)?))
            }
        };
        let name: Arc<str> = Arc::from(name);
        let index = self.cells[dim].len();
        self.cells[dim].push(Cell { name: name.clone(), boundary });
        self.by_name[dim].insert(name, index);
        self.identity[dim].push(None);
        Ok(CellId { dim, index })
    }

    pub fn set_identity(&mut self, x: CellId, id: CellId) {
        debug_assert_eq!(id.dim, x.dim + 1);
        self.identity[x.dim][x.index] = Some(id.index);
    }

    /// Sets `later ∘_depth earlier`, overwriting any previous entry.
    pub fn set_compose(&mut self, depth: usize, later: CellId, earlier: CellId, result: CellId) {
        self.compose.insert((later.dim, depth, later.index, earlier.index), result.index);
    }

    pub fn set_dual(&mut self, alpha: DualityIndex, x: CellId, result: CellId) {
        self.dual.insert((x.dim, alpha.bits(), x.index), result.index);
    }

    pub fn boundary(&self, x: CellId, side: Side) -> Option<CellId> {
        let (s, t) = self.cells[x.dim][x.index].boundary?;
        let index = match side {
            Side::Source => s,
            Side::Target => t,
        };
        Some(CellId { dim: x.dim - 1, index })
    }

    /// The boundary of `x` at depth `depth` on one side.
    pub fn iterated(&self, x: CellId, depth: usize, side: Side) -> CellId {
        let mut c = x;
        while c.dim > depth {
            c = self.boundary(c, side).expect("positive dimension");
        }
        c
    }

    pub fn identity(&self, x: CellId) -> Result<CellId> {
        if x.dim >= self.truncation {
            return Err(Error::TruncationExceeded { dim: x.dim + 1, truncation: self.truncation });
        }
        self.identity[x.dim][x.index]
            .map(|index| CellId { dim: x.dim + 1, index })
            .ok_or_else(|| Error::Model(format!("no identity on `{}`", self.cell_name(x))))
    }

    /// The identity of `x` raised to dimension `dim`.
    pub fn identity_tower(&self, x: CellId, dim: usize) -> Result<CellId> {
        let mut c = x;
        while c.dim < dim {
            c = self.identity(c)?;
        }
        Ok(c)
    }

    pub fn composable(&self, depth: usize, later: CellId, earlier: CellId) -> bool {
        later.dim == earlier.dim
            && depth < later.dim
            && self.iterated(earlier, depth, Side::Target) == self.iterated(later, depth, Side::Source)
    }

    pub fn compose(&self, depth: usize, later: CellId, earlier: CellId) -> Result<CellId> {
        if later.dim != earlier.dim {
            return Err(Error::DimensionMismatch(later.dim, earlier.dim));
        }
        if depth >= later.dim {
            return Err(Error::Depth { depth, dim: later.dim });
        }
        if !self.composable(depth, later, earlier) {
            return Err(Error::BoundaryMismatch(format!(
                "`{}` and `{}` do not compose at depth {depth}",
                self.cell_name(later),
                self.cell_name(earlier)
            )));
        }
        match self.compose.get(&(later.dim, depth, later.index, earlier.index)) {
            Some(&index) => Ok(CellId { dim: later.dim, index }),
            None => Err(match self.window {
                Some(w) => Error::WindowExceeded(w),
                None => Error::Model(format!(
                    "no composite of `{}` and `{}` at depth {depth}",
                    self.cell_name(later),
                    self.cell_name(earlier)
                )),
            }),
        }
    }

    /// `x^{*_α}`; the empty index acts as the identity map.
    pub fn dual(&self, alpha: DualityIndex, x: CellId) -> Result<CellId> {
        if alpha.bound() > self.truncation {
            return Err(Error::Index { index: alpha.bound() - 1, truncation: self.truncation });
        }
        if alpha.is_empty() {
            return Ok(x);
        }
        self.dual
            .get(&(x.dim, alpha.bits(), x.index))
            .map(|&index| CellId { dim: x.dim, index })
            .ok_or_else(|| Error::Model(format!("no {alpha}-dual of `{}`", self.cell_name(x))))
    }

    /// The underlying globular set; cell ids coincide with this category's.
    pub fn underlying(&self) -> GlobularSet {
        let mut g = GlobularSet::empty(self.truncation);
        for c in self.all_cells() {
            let name = self.cell_name(c);
            let r = match (self.boundary(c, Side::Source), self.boundary(c, Side::Target)) {
                (Some(s), Some(t)) => g.add_cell(c.dim, name, self.cell_name(s), self.cell_name(t)),
                _ => g.add_object(name),
            };
            r.expect("cell names are unique per dimension");
        }
        g
    }

    /// Evaluates a term whose leaves are interpreted by `leaf`.
    pub fn evaluate(&self, t: &Term, leaf: &dyn Fn(&Leaf) -> Result<CellId>) -> Result<CellId> {
        let mut v = match t.kind() {
            Kind::Gen(l) => leaf(l)?,
            Kind::Id(z) => self.identity(self.evaluate(z, leaf)?)?,
            Kind::Comp { depth, later, earlier } => {
                let a = self.evaluate(later, leaf)?;
                let b = self.evaluate(earlier, leaf)?;
                self.compose(*depth, a, b)?
            }
            Kind::Ctr { source, target } => {
                let x = self.evaluate(source, leaf)?;
                let y = self.evaluate(target, leaf)?;
                if x != y {
                    return Err(Error::Evaluation(format!(
                        "contraction {t} joins `{}` and `{}`",
                        self.cell_name(x),
                        self.cell_name(y)
                    )));
                }
                self.identity(x)?
            }
        };
        for &alpha in t.word().indices() {
            v = self.dual(alpha, v)?;
        }
        Ok(v)
    }
}

/// Where each base cell goes in the category.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment {
    map: HashMap<(usize, Arc<str>), CellId>,
}

impl Assignment {
    pub fn new() -> Self {
        Assignment::default()
    }

    /// Every cell of the underlying globular set to itself.
    pub fn identity(a: &FiniteInvolutiveCategory) -> Self {
        let mut asg = Assignment::new();
        for c in a.all_cells() {
            asg.insert(c.dim, a.cell_name(c), c);
        }
        asg
    }

    pub fn insert(&mut self, dim: usize, name: &str, cell: CellId) {
        self.map.insert((dim, Arc::from(name)), cell);
    }

    pub fn get(&self, dim: usize, name: &str) -> Option<CellId> {
        self.map.get(&(dim, Arc::from(name))).copied()
    }

    /// Checks that every base cell has an image and that boundaries are preserved.
    pub fn check(&self, base: &GlobularSet, a: &FiniteInvolutiveCategory) -> Result<()> {
        for c in base.all_cells() {
            let name = base.name(c);
            let img = self.get(c.dim, name).ok_or_else(|| Error::Morphism(format!("no image for `{name}`")))?;
            if img.dim != c.dim || img.index >= a.cell_count(img.dim) {
                return Err(Error::Morphism(format!("image of `{name}` is not a {}-cell", c.dim)));
            }
            for side in [Side::Source, Side::Target] {
                if let Some(b) = base.boundary(c, side) {
                    let expected = self.get(b.dim, base.name(b));
                    if a.boundary(img, side) != expected {
                        return Err(Error::Morphism(format!("{side} of `{name}` is not preserved")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// θ: evaluates a term over the base through the assignment.
pub fn eval_theta(a: &FiniteInvolutiveCategory, asg: &Assignment, t: &Term) -> Result<CellId> {
    a.evaluate(t, &|l| match l {
        Leaf::Cell { name, dim, .. } => {
            asg.get(*dim, name).ok_or_else(|| Error::Evaluation(format!("no image for `{name}`")))
        }
        Leaf::Quote(inner) => Err(Error::Evaluation(format!("nested leaf [{inner}]"))),
    })
}

/// θ ∘ Tθ: evaluates each quoted leaf first, then the outer term.
pub fn eval_nested(a: &FiniteInvolutiveCategory, asg: &Assignment, nt: &Term) -> Result<CellId> {
    a.evaluate(nt, &|l| match l {
        Leaf::Quote(inner) => eval_theta(a, asg, inner),
        Leaf::Cell { name, .. } => Err(Error::Evaluation(format!("leaf `{name}` is not a quotation"))),
    })
}

enum Outcome {
    Pass,
    Fail(String),
    Skip,
}

fn judge(a: &FiniteInvolutiveCategory, what: &Term, lhs: Result<CellId>, rhs: Result<CellId>) -> Outcome {
    match (lhs, rhs) {
        (Err(Error::WindowExceeded(_)), _) | (_, Err(Error::WindowExceeded(_))) => Outcome::Skip,
        (Ok(x), Ok(y)) if x == y => Outcome::Pass,
        (Ok(x), Ok(y)) => Outcome::Fail(format!("{what}: `{}` vs `{}`", a.cell_name(x), a.cell_name(y))),
        (Err(e), _) | (_, Err(e)) => Outcome::Fail(format!("{what}: {e}")),
    }
}

fn tally(law: &mut LawResult, outcomes: Vec<Outcome>) {
    for o in outcomes {
        match o {
            Outcome::Pass => law.pass(),
            Outcome::Fail(s) => law.fail(s),
            Outcome::Skip => law.skip(),
        }
    }
}

/// Algebra laws on seeded samples over `base`:
/// `unit` checks θ∘η on every cell of the category, `multiplication`
/// compares θ∘Tθ with θ of the reduced flattening on nested samples, and
/// `quotient` checks that θ is constant on congruence classes.
pub fn check_algebra(
    a: &FiniteInvolutiveCategory,
    base: &Magma,
    asg: &Assignment,
    samples: usize,
    seed: u64,
    bound: usize,
) -> Report {
    check_algebra_with(a, base, asg, samples, seed, bound, Execution::default())
}

pub fn check_algebra_with(
    a: &FiniteInvolutiveCategory,
    base: &Magma,
    asg: &Assignment,
    samples: usize,
    seed: u64,
    bound: usize,
    exec: Execution,
) -> Report {
    let mut report = Report::new();
    if let Some(w) = a.window() {
        report.note(format!("WINDOW {w}"));
    }
    if let Err(e) = asg.check(base.presentation(), a) {
        let mut law = LawResult::new("assignment");
        law.fail(e.to_string());
        report.push(law);
        return report;
    }

    let own = Magma::new(a.underlying());
    let own_asg = Assignment::identity(a);
    let mut unit = LawResult::new("unit");
    for c in a.all_cells() {
        let t = own.generator(c);
        let got = eval_theta(a, &own_asg, &t);
        tally(&mut unit, vec![judge(a, &t, got, Ok(c))]);
    }
    report.push(unit);

    let n = base.truncation();
    let config = SampleConfig::new(9, 1, n).with_contractions();
    let terms = TermSampler::new(base, config, seed).sample(samples);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xa16e);
    let nested: Vec<Term> = terms.iter().map(|t| nest(t, &mut rng)).collect();

    let mut mult = LawResult::new("multiplication");
    tally(
        &mut mult,
        exec.map(&nested, |nt| {
            let lhs = eval_nested(a, asg, nt);
            let rhs = flatten(nt, n).and_then(|t| eval_theta(a, asg, &reduce(&t)));
            judge(a, nt, lhs, rhs)
        }),
    );
    report.push(mult);

    let mut quotient = LawResult::new("quotient");
    tally(
        &mut quotient,
        exec.map(&terms, |t| {
            let direct = eval_theta(a, asg, t);
            match judge(a, t, direct.clone(), eval_theta(a, asg, &reduce(t))) {
                Outcome::Pass => judge(a, t, direct, eval_theta(a, asg, &canonical(t, bound).rep)),
                other => other,
            }
        }),
    );
    report.push(quotient);
    report
}

fn composable_pairs(a: &FiniteInvolutiveCategory, dim: usize, depth: usize) -> Vec<(CellId, CellId)> {
    let mut by_source: HashMap<CellId, Vec<CellId>> = HashMap::new();
    for x in a.cells(dim) {
        by_source.entry(a.iterated(x, depth, Side::Source)).or_default().push(x);
    }
    let mut out = Vec::new();
    for b in a.cells(dim) {
        if let Some(ls) = by_source.get(&a.iterated(b, depth, Side::Target)) {
            out.extend(ls.iter().map(|&l| (l, b)));
        }
    }
    out
}

/// Exhaustive axiom check over every cell of the category (within its window).
pub fn check_involutive_category(a: &FiniteInvolutiveCategory) -> Report {
    let n = a.truncation();
    let name = |c: CellId| a.cell_name(c).to_string();
    let mut report = Report::new();
    if let Some(w) = a.window() {
        report.note(format!("WINDOW {w}"));
    }

    let mut glob = LawResult::new("globularity");
    for x in (2..=n).flat_map(|d| a.cells(d)) {
        let s = a.boundary(x, Side::Source).unwrap();
        let t = a.boundary(x, Side::Target).unwrap();
        glob.record(
            a.boundary(s, Side::Source) == a.boundary(t, Side::Source)
                && a.boundary(s, Side::Target) == a.boundary(t, Side::Target),
            || format!("`{}` has non-parallel boundaries", name(x)),
        );
    }
    report.push(glob);

    let mut assoc = LawResult::new("associativity");
    let mut unital = LawResult::new("unitality");
    let mut idf = LawResult::new("identity-functoriality");
    let mut variance = LawResult::new("variance");
    for m in 1..=n {
        for p in 0..m {
            let pairs = composable_pairs(a, m, p);
            let mut by_target: HashMap<CellId, Vec<CellId>> = HashMap::new();
            for x in a.cells(m) {
                by_target.entry(a.iterated(x, p, Side::Target)).or_default().push(x);
            }
            for &(x, y) in &pairs {
                let Ok(xy) = a.compose(p, x, y) else {
                    assoc.skip();
                    continue;
                };
                for &z in by_target.get(&a.iterated(y, p, Side::Source)).into_iter().flatten() {
                    let lhs = a.compose(p, xy, z);
                    let rhs = a.compose(p, y, z).and_then(|yz| a.compose(p, x, yz));
                    match (lhs, rhs) {
                        (Ok(l), Ok(r)) => assoc.record(l == r, || {
                            format!(
                                "associativity at depth {p} for ({}, {}, {}): `{}` vs `{}`",
                                name(x),
                                name(y),
                                name(z),
                                name(l),
                                name(r)
                            )
                        }),
                        _ => assoc.skip(),
                    }
                }
                if m < n {
                    let lhs = a.identity(xy);
                    let rhs = a.identity(x).and_then(|ix| a.identity(y).and_then(|iy| a.compose(p, ix, iy)));
                    match (lhs, rhs) {
                        (Ok(l), Ok(r)) => {
                            idf.record(l == r, || format!("identity of `{}` at depth {p} with `{}`", name(x), name(y)))
                        }
                        (Err(Error::WindowExceeded(_)), _) | (_, Err(Error::WindowExceeded(_))) => idf.skip(),
                        (Err(e), _) | (_, Err(e)) => idf.fail(format!("`{}` with `{}`: {e}", name(x), name(y))),
                    }
                }
                for alpha in DualityIndex::all(n).into_iter().filter(|al| !al.is_empty()) {
                    let lhs = a.dual(alpha, xy);
                    let (u, v) = if alpha.contains(p) { (y, x) } else { (x, y) };
                    let rhs = a.dual(alpha, u).and_then(|du| a.dual(alpha, v).and_then(|dv| a.compose(p, du, dv)));
                    match (lhs, rhs) {
                        (Ok(l), Ok(r)) => variance.record(l == r, || {
                            format!("{alpha}-dual of `{}` at depth {p} after `{}`", name(x), name(y))
                        }),
                        (Err(Error::WindowExceeded(_)), _) | (_, Err(Error::WindowExceeded(_))) => variance.skip(),
                        (Err(e), _) | (_, Err(e)) => {
                            variance.fail(format!("{alpha}-dual of `{}` after `{}`: {e}", name(x), name(y)))
                        }
                    }
                }
            }
            for x in a.cells(m) {
                let s = a.iterated(x, p, Side::Source);
                let t = a.iterated(x, p, Side::Target);
                let right = a.identity_tower(s, m).and_then(|i| a.compose(p, x, i));
                let left = a.identity_tower(t, m).and_then(|i| a.compose(p, i, x));
                for (side, r) in [("right", right), ("left", left)] {
                    match r {
                        Ok(v) => unital.record(v == x, || {
                            format!("{side} unit at depth {p} on `{}` gives `{}`", name(x), name(v))
                        }),
                        Err(Error::WindowExceeded(_)) => unital.skip(),
                        Err(e) => unital.fail(format!("{side} unit at depth {p} on `{}`: {e}", name(x))),
                    }
                }
            }
        }
    }
    report.push(assoc);
    report.push(unital);
    report.push(idf);

    let mut exchange = LawResult::new("exchange");
    for m in 2..=n {
        for p in 1..m {
            let pairs = composable_pairs(a, m, p);
            for q in 0..p {
                for &(x1, y1) in &pairs {
                    for &(x2, y2) in &pairs {
                        if !a.composable(q, x1, x2) || !a.composable(q, y1, y2) {
                            continue;
                        }
                        let lhs =
                            a.compose(p, x1, y1).and_then(|l| a.compose(p, x2, y2).and_then(|r| a.compose(q, l, r)));
                        let rhs =
                            a.compose(q, x1, x2).and_then(|l| a.compose(q, y1, y2).and_then(|r| a.compose(p, l, r)));
                        match (lhs, rhs) {
                            (Ok(l), Ok(r)) => exchange.record(l == r, || {
                                format!(
                                    "exchange at depths {p}/{q} for ({}, {}, {}, {})",
                                    name(x1),
                                    name(y1),
                                    name(x2),
                                    name(y2)
                                )
                            }),
                            (Err(Error::WindowExceeded(_)), _) | (_, Err(Error::WindowExceeded(_))) => exchange.skip(),
                            (Err(e), _) | (_, Err(e)) => exchange.fail(format!(
                                "exchange for ({}, {}, {}, {}): {e}",
                                name(x1),
                                name(y1),
                                name(x2),
                                name(y2)
                            )),
                        }
                    }
                }
            }
        }
    }
    report.push(exchange);

    let mut involutive = LawResult::new("involutive");
    let mut commute = LawResult::new("commutation");
    let indices: Vec<DualityIndex> = DualityIndex::all(n).into_iter().filter(|al| !al.is_empty()).collect();
    for x in a.all_cells() {
        for &alpha in &indices {
            match a.dual(alpha, x) {
                Ok(d) => {
                    if x.dim > 0 {
                        let top = x.dim - 1;
                        let (s, t) = (a.boundary(x, Side::Source).unwrap(), a.boundary(x, Side::Target).unwrap());
                        let (s, t) = if alpha.contains(top) { (t, s) } else { (s, t) };
                        let ok = a.dual(alpha, s).ok() == a.boundary(d, Side::Source)
                            && a.dual(alpha, t).ok() == a.boundary(d, Side::Target);
                        variance.record(ok, || format!("{alpha}-dual of `{}` has the wrong boundary", name(x)));
                    }
                    if x.dim < n {
                        let lhs = a.identity(x).and_then(|i| a.dual(alpha, i));
                        let rhs = a.identity(d);
                        variance.record(lhs.is_ok() && lhs == rhs, || {
                            format!("{alpha}-dual does not commute with the identity on `{}`", name(x))
                        });
                    }
                    let back = a.dual(alpha, d);
                    involutive.record(back == Ok(x), || format!("{alpha}-dual twice on `{}`", name(x)));
                }
                Err(e) => variance.fail(format!("{alpha}-dual of `{}`: {e}", name(x))),
            }
            for &beta in &indices {
                let ab = a.dual(alpha, x).and_then(|v| a.dual(beta, v));
                let ba = a.dual(beta, x).and_then(|v| a.dual(alpha, v));
                commute.record(ab.is_ok() && ab == ba, || format!("{alpha} and {beta} duals on `{}`", name(x)));
            }
        }
    }
    report.push(variance);
    report.push(involutive);
    report.push(commute);
    report
}
