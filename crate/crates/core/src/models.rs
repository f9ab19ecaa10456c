//! Concrete strict involutive categories.
//!
//! [`cyclic_group_category`] is a one-object group seen as a 2-truncated
//! category with identity 2-cells. [`edge_path_groupoid`] is the groupoid of
//! reduced edge paths of a finite graph, cut off at a window of path lengths.

use std::collections::HashMap;

use serde::Deserialize;

use crate::algebra::{Assignment, FiniteInvolutiveCategory};
use crate::duality::DualityIndex;
use crate::error::{Error, Result};
use crate::globular::{CellId, GlobularSet};

const TRUNCATION: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct Edge {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

/// A finite directed graph.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct Graph {
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
}

impl Graph {
    /// Parses the JSON form and checks that every endpoint is a vertex.
    pub fn parse(text: &str) -> Result<Graph> {
        let g: Graph = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut seen = std::collections::HashSet::new();
        for v in &g.vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::Parse(format!("duplicate vertex `{v}`")));
            }
        }
        let mut names = std::collections::HashSet::new();
        for e in &g.edges {
            if !names.insert(e.name.as_str()) {
                return Err(Error::Parse(format!("duplicate edge `{}`", e.name)));
            }
            for end in [&e.src, &e.tgt] {
                if !seen.contains(end.as_str()) {
                    return Err(Error::UnresolvedReference(format!("edge `{}` endpoint `{end}`", e.name)));
                }
            }
        }
        Ok(g)
    }

    fn vertex(&self, name: &str) -> usize {
        self.vertices.iter().position(|v| v == name).expect("validated graph")
    }

    /// The graph as a globular set: vertices, then edges, nothing above.
    pub fn globular_set(&self) -> GlobularSet {
        let mut g = GlobularSet::empty(TRUNCATION);
        for v in &self.vertices {
            g.add_object(v).expect("distinct vertices");
        }
        for e in &self.edges {
            g.add_cell(1, &e.name, &e.src, &e.tgt).expect("validated graph");
        }
        g
    }
}

/// A category together with a base presentation and where the base goes.
#[derive(Clone, Debug)]
pub struct Instance {
    pub category: FiniteInvolutiveCategory,
    pub base: GlobularSet,
    pub assignment: Assignment,
}

fn identity_two_cells(a: &mut FiniteInvolutiveCategory) -> Vec<CellId> {
    let ones: Vec<CellId> = a.cells(1).collect();
    ones.iter()
        .map(|&p| {
            let name = a.cell_name(p).to_string();
            let c = a.add_cell(2, &format!("={name}"), Some((&name, &name))).expect("fresh name");
            a.set_identity(p, c);
            c
        })
        .collect()
}

/// Fills in everything determined by the 1-cell tables: identity 2-cells,
/// their composites, and all duals.
fn complete(a: &mut FiniteInvolutiveCategory, reverse: &dyn Fn(CellId) -> CellId) {
    let twos = identity_two_cells(a);
    let ones: Vec<CellId> = a.cells(1).collect();
    for &x in &ones {
        for &y in &ones {
            if let Ok(xy) = a.compose(0, x, y) {
                a.set_compose(0, twos[x.index], twos[y.index], twos[xy.index]);
            }
        }
        a.set_compose(1, twos[x.index], twos[x.index], twos[x.index]);
    }
    for alpha in DualityIndex::all(TRUNCATION).into_iter().filter(|al| !al.is_empty()) {
        let flip = |c: CellId| if alpha.contains(0) { reverse(c) } else { c };
        for v in a.cells(0).collect::<Vec<_>>() {
            a.set_dual(alpha, v, v);
        }
        for &x in &ones {
            let d = flip(x);
            a.set_dual(alpha, x, d);
            a.set_dual(alpha, twos[x.index], twos[d.index]);
        }
    }
}

/// ℤ/n as a one-object category: composition is addition, duals containing
/// 0 negate, and 2-cells are identities only.
pub fn cyclic_group_category(n: usize) -> Result<FiniteInvolutiveCategory> {
    if n == 0 {
        return Err(Error::Model("the cyclic group needs at least one element".into()));
    }
    let mut a = FiniteInvolutiveCategory::new(&format!("cyclic:{n}"), TRUNCATION);
    let o = a.add_cell(0, "o", None)?;
    let elems: Vec<CellId> = (0..n).map(|k| a.add_cell(1, &k.to_string(), Some(("o", "o")))).collect::<Result<_>>()?;
    a.set_identity(o, elems[0]);
    for i in 0..n {
        for j in 0..n {
            a.set_compose(0, elems[i], elems[j], elems[(i + j) % n]);
        }
    }
    complete(&mut a, &|c| elems[(n - c.index) % n]);
    Ok(a)
}

/// The cyclic group over its own underlying globular set.
pub fn cyclic_instance(n: usize) -> Result<Instance> {
    let category = cyclic_group_category(n)?;
    let base = category.underlying();
    let assignment = Assignment::identity(&category);
    Ok(Instance { category, base, assignment })
}

type Step = (usize, bool);

/// Reduced edge paths: a start vertex and steps along edges, a `true` flag
/// meaning the edge is walked backwards.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Path {
    start: usize,
    steps: Vec<Step>,
}

impl Path {
    fn end(&self, g: &Graph) -> usize {
        match self.steps.last() {
            None => self.start,
            Some(&(e, back)) => {
                let edge = &g.edges[e];
                g.vertex(if back { &edge.src } else { &edge.tgt })
            }
        }
    }

    fn name(&self, g: &Graph) -> String {
        if self.steps.is_empty() {
            return format!("id:{}", g.vertices[self.start]);
        }
        let letters: Vec<String> =
            self.steps.iter().map(|&(e, back)| format!("{}{}", g.edges[e].name, if back { "~" } else { "" })).collect();
        letters.join(".")
    }

    fn reversed(&self, g: &Graph) -> Path {
        Path { start: self.end(g), steps: self.steps.iter().rev().map(|&(e, b)| (e, !b)).collect() }
    }

    /// `self` followed by `next`, with backtracking cancelled.
    fn then(&self, next: &Path) -> Path {
        let mut steps = self.steps.clone();
        for &(e, b) in &next.steps {
            if steps.last() == Some(&(e, !b)) {
                steps.pop();
            } else {
                steps.push((e, b));
            }
        }
        Path { start: self.start, steps }
    }
}

fn reduced_paths(g: &Graph, window: usize) -> Vec<Path> {
    let mut out: Vec<Path> = (0..g.vertices.len()).map(|start| Path { start, steps: Vec::new() }).collect();
    let mut frontier = out.clone();
    for _ in 0..window {
        let mut next = Vec::new();
        for p in &frontier {
            let here = p.end(g);
            for (e, edge) in g.edges.iter().enumerate() {
                for back in [false, true] {
                    let from = if back { &edge.tgt } else { &edge.src };
                    if g.vertex(from) != here || p.steps.last() == Some(&(e, !back)) {
                        continue;
                    }
                    let mut q = p.clone();
                    q.steps.push((e, back));
                    next.push(q);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Reduced edge paths of length at most `window` with concatenation,
/// reversal under duals containing 0, and identity 2-cells. Composites
/// longer than the window are absent and raise a window error.
pub fn edge_path_groupoid(g: &Graph, window: usize) -> Result<FiniteInvolutiveCategory> {
    let mut a = FiniteInvolutiveCategory::new(&format!("edgepath:{window}"), TRUNCATION).with_window(window);
    for v in &g.vertices {
        a.add_cell(0, v, None)?;
    }
    let paths = reduced_paths(g, window);
    let mut index: HashMap<Path, CellId> = HashMap::new();
    for p in &paths {
        let (s, t) = (&g.vertices[p.start], &g.vertices[p.end(g)]);
        let c = a.add_cell(1, &p.name(g), Some((s, t)))?;
        index.insert(p.clone(), c);
        if p.steps.is_empty() {
            a.set_identity(CellId { dim: 0, index: p.start }, c);
        }
    }
    for earlier in &paths {
        for later in &paths {
            if later.start != earlier.end(g) {
                continue;
            }
            if let Some(&c) = index.get(&earlier.then(later)) {
                a.set_compose(0, index[later], index[earlier], c);
            }
        }
    }
    let by_cell: Vec<CellId> = paths.iter().map(|p| index[&p.reversed(g)]).collect();
    complete(&mut a, &|c| by_cell[c.index]);
    Ok(a)
}

/// The edge-path groupoid over the graph itself, each edge sent to its
/// one-step path.
pub fn edge_path_instance(g: &Graph, window: usize) -> Result<Instance> {
    let category = edge_path_groupoid(g, window)?;
    let base = g.globular_set();
    let mut assignment = Assignment::new();
    for v in &g.vertices {
        assignment.insert(0, v, category.lookup(0, v).expect("vertex"));
    }
    for e in &g.edges {
        let c = category.lookup(1, &e.name).ok_or(Error::WindowExceeded(window))?;
        assignment.insert(1, &e.name, c);
    }
    Ok(Instance { category, base, assignment })
}

/// Graph fixtures shipped with the repository.
pub mod fixtures {
    use super::Graph;

    pub const TRIANGLE_JSON: &str = include_str!("../../../fixtures/triangle.json");
    pub const TWO_CYCLE_JSON: &str = include_str!("../../../fixtures/two_cycle.json");

    pub fn triangle() -> Graph {
        Graph::parse(TRIANGLE_JSON).expect("triangle fixture is valid")
    }

    pub fn two_cycle() -> Graph {
        Graph::parse(TWO_CYCLE_JSON).expect("two-cycle fixture is valid")
    }
}
