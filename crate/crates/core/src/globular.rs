//! Truncated globular sets.
//!
//! A presentation lists named cells per dimension up to a truncation level,
//! with source and target maps into the dimension below. Loading checks that
//! every reference resolves and that the globularity equations hold.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

/// Which boundary to take.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Source,
    Target,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Source => Side::Target,
            Side::Target => Side::Source,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Source => "source",
            Side::Target => "target",
        })
    }
}

/// Position of a cell: its dimension and its index within that dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellId {
    pub dim: usize,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct CellEntry {
    name: Arc<str>,
    /// Index of the source and target cells in dimension `dim - 1`.
    boundary: Option<(usize, usize)>,
}

/// A finite globular set truncated at a fixed dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobularSet {
    truncation: usize,
    cells: Vec<Vec<CellEntry>>,
    by_name: Vec<HashMap<Arc<str>, usize>>,
}

/// A cell whose boundaries break globularity, with the equations that fail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub dim: usize,
    pub cell: String,
    pub equations: Vec<&'static str>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dimension {} cell {}: {}", self.dim, self.cell, self.equations.join(", "))
    }
}

#[derive(Deserialize)]
struct RawDocument {
    truncation: usize,
    #[serde(default)]
    cells: BTreeMap<String, Vec<Value>>,
}

#[derive(Serialize, Deserialize)]
struct RawCell {
    name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    src: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tgt: Option<String>,
}

impl GlobularSet {
    /// An empty globular set truncated at `truncation`.
    pub fn empty(truncation: usize) -> Self {
        GlobularSet {
            truncation,
            cells: vec![Vec::new(); truncation + 1],
            by_name: vec![HashMap::new(); truncation + 1],
        }
    }

    /// Parses a presentation and checks reference resolution, but not globularity.
    pub fn parse_structure(text: &str) -> Result<Self> {
        let raw: RawDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if raw.truncation >= crate::duality::MAX_TRUNCATION {
            return Err(Error::Parse(format!("truncation {} too large", raw.truncation)));
        }
        let mut per_dim: Vec<Vec<RawCell>> = (0..=raw.truncation).map(|_| Vec::new()).collect();
        for (key, entries) in raw.cells {
            let dim: usize =
                key.parse().map_err(|_| Error::Parse(format!("cell dimension key `{key}` is not a number")))?;
            if dim > raw.truncation {
                return Err(Error::Parse(format!(
                    "cells given in dimension {dim} above truncation {}",
                    raw.truncation
                )));
            }
            for entry in entries {
                let cell = match entry {
                    Value::String(name) => RawCell { name, src: None, tgt: None },
                    other => serde_json::from_value::<RawCell>(other)
                        .map_err(|e| Error::Parse(format!("dimension {dim}: {e}")))?,
                };
                per_dim[dim].push(cell);
            }
        }
        let mut g = GlobularSet::empty(raw.truncation);
        for (dim, cells) in per_dim.into_iter().enumerate() {
            for cell in cells {
                g.push_raw(dim, cell)?;
            }
        }
        Ok(g)
    }

    fn push_raw(&mut self, dim: usize, cell: RawCell) -> Result<()> {
        let boundary = match (dim, cell.src, cell.tgt) {
            (0, None, None) => None,
            (0, _, _) => return Err(Error::Parse(format!("0-cell `{}` cannot have a boundary", cell.name))),
            (_, Some(s), Some(t)) => {
                let lookup = |n: &str| {
                    self.by_name[dim - 1].get(n).copied().ok_or_else(|| {
                        Error::UnresolvedReference(format!(
                            "{dim}-cell `{}` refers to unknown {}-cell `{n}`",
                            cell.name,
                            dim - 1
                        ))
                    })
                };
                Some((lookup(&s)?, lookup(&t)?))
            }
            _ => return Err(Error::Parse(format!("{dim}-cell `{}` needs both src and tgt", cell.name))),
        };
        self.insert(dim, &cell.name, boundary)
    }

    fn insert(&mut self, dim: usize, name: &str, boundary: Option<(usize, usize)>) -> Result<()> {
        let name: Arc<str> = Arc::from(name);
        if self.by_name[dim].contains_key(&name) {
            return Err(Error::Parse(format!("duplicate {dim}-cell name `{name}`")));
        }
        self.by_name[dim].insert(name.clone(), self.cells[dim].len());
        self.cells[dim].push(CellEntry { name, boundary });
        Ok(())
    }

    /// Adds a 0-cell.
    pub fn add_object(&mut self, name: &str) -> Result<CellId> {
        self.insert(0, name, None)?;
        Ok(CellId { dim: 0, index: self.cells[0].len() - 1 })
    }

    /// Adds a cell of dimension `dim >= 1` between two named cells of dimension `dim - 1`.
    pub fn add_cell(&mut self, dim: usize, name: &str, src: &str, tgt: &str) -> Result<CellId> {
        if dim == 0 || dim > self.truncation {
            return Err(Error::Dimension(format!(
                "cannot add a {dim}-cell with boundary at truncation {}",
                self.truncation
            )));
        }
        self.push_raw(dim, RawCell { name: name.to_string(), src: Some(src.to_string()), tgt: Some(tgt.to_string()) })?;
        Ok(CellId { dim, index: self.cells[dim].len() - 1 })
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn cell_count(&self, dim: usize) -> usize {
        self.cells.get(dim).map_or(0, Vec::len)
    }

    pub fn cells(&self, dim: usize) -> impl Iterator<Item = CellId> + '_ {
        (0..self.cell_count(dim)).map(move |index| CellId { dim, index })
    }

    pub fn all_cells(&self) -> impl Iterator<Item = CellId> + '_ {
        (0..=self.truncation).flat_map(move |d| self.cells(d))
    }

    pub fn name(&self, cell: CellId) -> &str {
        &self.cells[cell.dim][cell.index].name
    }

    pub(crate) fn name_arc(&self, cell: CellId) -> Arc<str> {
        self.cells[cell.dim][cell.index].name.clone()
    }

    pub fn lookup(&self, dim: usize, name: &str) -> Option<CellId> {
        self.by_name.get(dim)?.get(name).map(|&index| CellId { dim, index })
    }

    /// Finds a cell by name in any dimension; names shared between
    /// dimensions are reported as ambiguous.
    pub fn resolve(&self, name: &str) -> Result<CellId> {
        let mut found = None;
        for dim in 0..=self.truncation {
            if let Some(c) = self.lookup(dim, name) {
                if found.is_some() {
                    return Err(Error::AmbiguousCell(name.to_string()));
                }
                found = Some(c);
            }
        }
        found.ok_or_else(|| Error::UnknownCell(name.to_string()))
    }

    /// Immediate source or target; `None` for 0-cells.
    pub fn boundary(&self, cell: CellId, side: Side) -> Option<CellId> {
        let (s, t) = self.cells[cell.dim][cell.index].boundary?;
        let index = match side {
            Side::Source => s,
            Side::Target => t,
        };
        Some(CellId { dim: cell.dim - 1, index })
    }

    /// `s^q ... s^{dim-1}(x)` or `t^q ... t^{dim-1}(x)`.
    pub fn iterated_boundary(&self, cell: CellId, depth: usize, side: Side) -> Result<CellId> {
        if depth >= cell.dim {
            return Err(Error::Dimension(format!("boundary at depth {depth} of a {}-cell", cell.dim)));
        }
        let mut c = cell;
        while c.dim > depth {
            c = self.boundary(c, side).expect("positive-dimensional cell has a boundary");
        }
        Ok(c)
    }

    /// Every (dimension, cell, equation) triple violating globularity.
    pub fn validate_globularity(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for dim in 2..=self.truncation {
            for cell in self.cells(dim) {
                let s = self.boundary(cell, Side::Source).unwrap();
                let t = self.boundary(cell, Side::Target).unwrap();
                let mut equations = Vec::new();
                if self.boundary(s, Side::Source) != self.boundary(t, Side::Source) {
                    equations.push("s(s(x)) = s(t(x))");
                }
                if self.boundary(s, Side::Target) != self.boundary(t, Side::Target) {
                    equations.push("t(s(x)) = t(t(x))");
                }
                if !equations.is_empty() {
                    out.push(Violation { dim, cell: self.name(cell).to_string(), equations });
                }
            }
        }
        out
    }

    /// Returns a copy with one boundary reference replaced, without checking globularity.
    pub fn with_boundary(&self, dim: usize, name: &str, side: Side, new: &str) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Dimension("0-cells have no boundary".into()));
        }
        let cell = self.lookup(dim, name).ok_or_else(|| Error::UnknownCell(name.to_string()))?;
        let replacement = self.lookup(dim - 1, new).ok_or_else(|| Error::UnresolvedReference(new.to_string()))?;
        let mut g = self.clone();
        let entry = &mut g.cells[dim][cell.index];
        let (s, t) = entry.boundary.unwrap();
        entry.boundary = Some(match side {
            Side::Source => (replacement.index, t),
            Side::Target => (s, replacement.index),
        });
        Ok(g)
    }

    /// Serializes back into the presentation document format.
    pub fn to_json(&self) -> String {
        let mut cells = serde_json::Map::new();
        for dim in 0..=self.truncation {
            let entries: Vec<Value> = self
                .cells(dim)
                .map(|c| {
                    if dim == 0 {
                        Value::String(self.name(c).to_string())
                    } else {
                        let raw = RawCell {
                            name: self.name(c).to_string(),
                            src: Some(self.name(self.boundary(c, Side::Source).unwrap()).to_string()),
                            tgt: Some(self.name(self.boundary(c, Side::Target).unwrap()).to_string()),
                        };
                        serde_json::to_value(raw).unwrap()
                    }
                })
                .collect();
            cells.insert(dim.to_string(), Value::Array(entries));
        }
        let doc = serde_json::json!({ "truncation": self.truncation, "cells": cells });
        serde_json::to_string(&doc).unwrap()
    }
}

/// Parses a presentation document and checks all invariants.
pub fn load_presentation(text: &str) -> Result<GlobularSet> {
    let g = GlobularSet::parse_structure(text)?;
    let violations = g.validate_globularity();
    if !violations.is_empty() {
        let msg = violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ");
        return Err(Error::Globularity(msg));
    }
    Ok(g)
}

/// Total report of globularity violations.
pub fn validate_globularity(g: &GlobularSet) -> Vec<Violation> {
    g.validate_globularity()
}

/// `s^q ... s^{dim-1}(x)` or the target analogue.
pub fn iterated_boundary(g: &GlobularSet, cell: CellId, depth: usize, side: Side) -> Result<CellId> {
    g.iterated_boundary(cell, depth, side)
}

/// A covariant morphism of globular sets, as a cell map per dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobularMorphism {
    maps: Vec<Vec<usize>>,
}

impl GlobularMorphism {
    /// Builds a morphism from name assignments, checking totality and that
    /// sources and targets are preserved.
    pub fn new(domain: &GlobularSet, codomain: &GlobularSet, assignment: &HashMap<String, String>) -> Result<Self> {
        if domain.truncation() > codomain.truncation() {
            return Err(Error::Morphism("codomain truncated below domain".into()));
        }
        let mut maps = Vec::new();
        for dim in 0..=domain.truncation() {
            let mut m = Vec::with_capacity(domain.cell_count(dim));
            for cell in domain.cells(dim) {
                let name = domain.name(cell);
                let image =
                    assignment.get(name).ok_or_else(|| Error::Morphism(format!("no image for cell `{name}`")))?;
                let img = codomain
                    .lookup(dim, image)
                    .ok_or_else(|| Error::Morphism(format!("image `{image}` is not a {dim}-cell of the codomain")))?;
                m.push(img.index);
            }
            maps.push(m);
        }
        let phi = GlobularMorphism { maps };
        for cell in domain.all_cells().filter(|c| c.dim > 0) {
            for side in [Side::Source, Side::Target] {
                let lhs = codomain.boundary(phi.apply(cell), side);
                let rhs = domain.boundary(cell, side).map(|b| phi.apply(b));
                if lhs != rhs {
                    return Err(Error::Morphism(format!("{side} of `{}` is not preserved", domain.name(cell))));
                }
            }
        }
        Ok(phi)
    }

    pub fn identity(g: &GlobularSet) -> Self {
        GlobularMorphism { maps: (0..=g.truncation()).map(|d| (0..g.cell_count(d)).collect()).collect() }
    }

    pub fn apply(&self, cell: CellId) -> CellId {
        CellId { dim: cell.dim, index: self.maps[cell.dim][cell.index] }
    }
}

/// Presentation fixtures shipped with the repository.
pub mod fixtures {
    use super::*;

    pub const Q2_JSON: &str = include_str!("../../../fixtures/Q2.json");
    pub const QX_JSON: &str = include_str!("../../../fixtures/QX.json");

    pub fn q2() -> GlobularSet {
        load_presentation(Q2_JSON).expect("Q2 fixture is valid")
    }

    pub fn qx() -> GlobularSet {
        load_presentation(QX_JSON).expect("QX fixture is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn loads_q2() {
        let g = q2();
        assert_eq!(g.truncation(), 2);
        assert_eq!((g.cell_count(0), g.cell_count(1), g.cell_count(2)), (2, 3, 1));
        assert!(g.validate_globularity().is_empty());
        assert!(qx().validate_globularity().is_empty());
    }

    #[test]
    fn rejects_non_globular_cell() {
        let doc = r#"{"truncation":2,"cells":{"0":["A","B"],
            "1":[{"name":"f","src":"A","tgt":"B"},{"name":"g","src":"B","tgt":"A"}],
            "2":[{"name":"u","src":"f","tgt":"g"}]}}"#;
        assert!(matches!(load_presentation(doc), Err(Error::Globularity(_))));
    }

    #[test]
    fn empty_presentation_is_valid() {
        let g = load_presentation(r#"{"truncation":2,"cells":{"0":[],"1":[],"2":[]}}"#).unwrap();
        assert_eq!(g.all_cells().count(), 0);
        let g = load_presentation(r#"{"truncation":1}"#).unwrap();
        assert_eq!(g.truncation(), 1);
    }

    #[test]
    fn unresolved_and_malformed() {
        let doc = r#"{"truncation":1,"cells":{"0":["A"],"1":[{"name":"f","src":"A","tgt":"Z"}]}}"#;
        assert!(matches!(load_presentation(doc), Err(Error::UnresolvedReference(_))));
        assert!(matches!(load_presentation("{not json"), Err(Error::Parse(_))));
        let doc = r#"{"truncation":1,"cells":{"0":["A","A"]}}"#;
        assert!(matches!(load_presentation(doc), Err(Error::Parse(_))));
        let doc = r#"{"truncation":1,"cells":{"2":[]}}"#;
        assert!(matches!(load_presentation(doc), Err(Error::Parse(_))));
    }

    #[test]
    fn mutated_q2_reports_one_dimension_two_violation() {
        let g = q2().with_boundary(2, "u", Side::Target, "g").unwrap();
        let v = g.validate_globularity();
        assert_eq!(v.len(), 1);
        assert_eq!((v[0].dim, v[0].cell.as_str()), (2, "u"));
        // u : f => g has s(s u) = A, s(t u) = B and t(s u) = B, t(t u) = A.
        assert_eq!(v[0].equations.len(), 2);
    }

    #[test]
    fn iterated_boundaries() {
        let g = q2();
        let u = g.lookup(2, "u").unwrap();
        let f = g.lookup(1, "f").unwrap();
        assert_eq!(g.name(g.iterated_boundary(u, 0, Side::Source).unwrap()), "A");
        assert_eq!(g.name(g.iterated_boundary(f, 0, Side::Target).unwrap()), "B");
        assert_eq!(g.name(g.iterated_boundary(u, 1, Side::Target).unwrap()), "h");
        assert!(g.iterated_boundary(f, 1, Side::Source).is_err());
    }

    #[test]
    fn json_round_trip() {
        for g in [q2(), qx()] {
            assert_eq!(load_presentation(&g.to_json()).unwrap(), g);
        }
    }

    #[test]
    fn morphisms_commute_with_boundaries() {
        let g = q2();
        let swap: HashMap<String, String> = [("A", "A"), ("B", "B"), ("f", "h"), ("h", "f"), ("g", "g"), ("u", "u")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        // u : f => h cannot stay fixed when f and h swap.
        assert!(GlobularMorphism::new(&g, &g, &swap).is_err());
        let g1 = load_presentation(
            r#"{"truncation":1,"cells":{"0":["A","B"],"1":[{"name":"f","src":"A","tgt":"B"},{"name":"h","src":"A","tgt":"B"}]}}"#,
        )
        .unwrap();
        let swap: HashMap<String, String> = [("A", "A"), ("B", "B"), ("f", "h"), ("h", "f")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        let phi = GlobularMorphism::new(&g1, &g1, &swap).unwrap();
        assert_eq!(g1.name(phi.apply(g1.lookup(1, "f").unwrap())), "h");
    }
}
