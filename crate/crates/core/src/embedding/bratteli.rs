use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

use super::chain::{ChainLevel, ChainSpec};
use super::EmbeddingError;
use crate::graded::IdentityComponentIdeal;
use crate::group::GroupElement;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BratteliNode {
    pub label: GroupElement,
    pub dimension: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BratteliEdge {
    pub from: GroupElement,
    pub to: GroupElement,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Transition {
    /// Whether the embedding maps identity to identity.
    pub unital: bool,
    pub edges: Vec<BratteliEdge>,
}

/// Simple ideals of the identity components along a chain, with inclusion
/// multiplicities between consecutive levels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BratteliDiagram {
    pub levels: Vec<Vec<BratteliNode>>,
    pub transitions: Vec<Transition>,
}

fn nodes(ideals: &[IdentityComponentIdeal]) -> Vec<BratteliNode> {
    ideals
        .iter()
        .map(|i| BratteliNode {
            label: i.label.clone(),
            dimension: i.block_dimension,
        })
        .collect()
}

/// Traces `E_jj ↦ Σ_c E_{j+ck, j+ck}` for one index `j` of each source
/// class and counts the hits per target class.
fn trace(from: &ChainLevel, to: &ChainLevel) -> Vec<BratteliEdge> {
    let (k, m, _) = to.shape.expect("levels after the first have a shape");
    let mut edges = Vec::new();
    for ideal in IdentityComponentIdeal::of_tuple(&from.tuple) {
        let j = ideal.indices[0];
        let mut hits: BTreeMap<&GroupElement, usize> = BTreeMap::new();
        for c in 0..m {
            *hits.entry(to.tuple.get(j + c * k)).or_default() += 1;
        }
        edges.extend(hits.into_iter().map(|(to, multiplicity)| BratteliEdge {
            from: ideal.label.clone(),
            to: to.clone(),
            multiplicity,
        }));
    }
    edges
}

impl BratteliDiagram {
    pub fn from_levels(levels: &[ChainLevel]) -> Self {
        Self {
            levels: levels
                .iter()
                .map(|l| nodes(&IdentityComponentIdeal::of_tuple(&l.tuple)))
                .collect(),
            transitions: levels
                .windows(2)
                .map(|w| Transition {
                    unital: w[1].is_unital(),
                    edges: trace(&w[0], &w[1]),
                })
                .collect(),
        }
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Each target dimension equals the multiplicity-weighted sum of the
    /// source dimensions for unital steps, and is at least that sum
    /// otherwise.
    pub fn bookkeeping_holds(&self) -> bool {
        self.transitions.iter().enumerate().all(|(i, t)| {
            let source: BTreeMap<&GroupElement, usize> =
                self.levels[i].iter().map(|n| (&n.label, n.dimension)).collect();
            self.levels[i + 1].iter().all(|node| {
                let weighted: usize = t
                    .edges
                    .iter()
                    .filter(|e| e.to == node.label)
                    .map(|e| e.multiplicity * source[&e.from])
                    .sum();
                if t.unital {
                    weighted == node.dimension
                } else {
                    weighted <= node.dimension
                }
            })
        })
    }

    /// Graphviz rendering with one rank per level.
    pub fn to_dot(&self, name: &str) -> String {
        let id = |level: usize, label: &GroupElement| format!("\"L{}{}\"", level + 1, label);
        let mut out = String::new();
        writeln!(out, "digraph {name} {{").unwrap();
        writeln!(out, "  rankdir=TB;").unwrap();
        for (i, level) in self.levels.iter().enumerate() {
            writeln!(out, "  subgraph level_{} {{", i + 1).unwrap();
            writeln!(out, "    rank=same;").unwrap();
            for node in level {
                writeln!(
                    out,
                    "    {} [label=\"{} dim {}\"];",
                    id(i, &node.label),
                    node.label,
                    node.dimension
                )
                .unwrap();
            }
            writeln!(out, "  }}").unwrap();
        }
        for (i, t) in self.transitions.iter().enumerate() {
            for e in &t.edges {
                writeln!(
                    out,
                    "  {} -> {} [label=\"{}\"];",
                    id(i, &e.from),
                    id(i + 1, &e.to),
                    e.multiplicity
                )
                .unwrap();
            }
        }
        writeln!(out, "}}").unwrap();
        out
    }
}

pub fn bratteli_of_chain(spec: &ChainSpec, depth: usize) -> Result<BratteliDiagram, EmbeddingError> {
    bratteli_of_chain_bounded(spec, depth, usize::MAX)
}

pub fn bratteli_of_chain_bounded(
    spec: &ChainSpec,
    depth: usize,
    max_dim: usize,
) -> Result<BratteliDiagram, EmbeddingError> {
    if depth == 0 {
        return Err(EmbeddingError::InvalidDepth);
    }
    Ok(BratteliDiagram::from_levels(&spec.unfold_bounded(depth, max_dim)?))
}

/// Level-wise equality of labels, dimensions and edge multiplicities.
pub fn diagrams_equal(a: &BratteliDiagram, b: &BratteliDiagram) -> bool {
    a.levels == b.levels
        && a.transitions.len() == b.transitions.len()
        && a.transitions.iter().zip(&b.transitions).all(|(x, y)| x.edges == y.edges)
}

/// Index of the first level whose incoming edges differ, if any.
pub fn first_difference(a: &BratteliDiagram, b: &BratteliDiagram) -> Option<usize> {
    let depth = a.depth().max(b.depth());
    (0..depth).find(|&i| {
        let nodes_differ = a.levels.get(i) != b.levels.get(i);
        let edges_differ = i > 0
            && a.transitions.get(i - 1).map(|t| &t.edges) != b.transitions.get(i - 1).map(|t| &t.edges);
        nodes_differ || edges_differ
    })
}
