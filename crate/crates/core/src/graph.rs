//! Simple undirected graphs, group actions on them, and s-arcs.
//!
//! An s-arc is a walk `(v_0, …, v_s)` with consecutive vertices adjacent
//! and `v_{i-1} != v_{i+1}`. A group acting on the graph is
//! s-arc-transitive when it is transitive on the set of s-arcs; this is
//! decided by orbit arithmetic, `|G| / |G_arc|` against the arc count,
//! without materializing any orbit.

use std::collections::VecDeque;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::util::big_string;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<u32>>,
}

/// JSON shape of a graph: `{vertex_count, edges}` with `u < v`, sorted.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertex_count: usize,
    pub edges: Vec<[usize; 2]>,
}

impl Graph {
    /// Builds a simple graph; loops are rejected, repeated edges merged.
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "edge {u}-{v} out of range for {vertex_count} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            adjacency[u].push(v as u32);
            adjacency[v].push(u as u32);
        }
        Ok(Graph::from_adjacency(adjacency))
    }

    /// Sorts and deduplicates; the lists must already be symmetric.
    pub(crate) fn from_adjacency(mut adjacency: Vec<Vec<u32>>) -> Graph {
        for list in adjacency.iter_mut() {
            list.sort_unstable();
            list.dedup();
        }
        Graph { adjacency }
    }

    pub fn empty(n: usize) -> Graph {
        Graph {
            adjacency: vec![Vec::new(); n],
        }
    }

    pub fn complete(n: usize) -> Graph {
        Graph {
            adjacency: (0..n)
                .map(|v| (0..n as u32).filter(|&u| u as usize != v).collect())
                .collect(),
        }
    }

    pub fn cycle(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).expect("cycle needs at least 3 vertices")
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v].iter().map(|&u| u as usize)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&(v as u32)).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adjacency.iter().enumerate() {
            for &v in list {
                if u < v as usize {
                    out.push((u, v as usize));
                }
            }
        }
        out
    }

    /// Common degree, or `None` when the graph is not regular.
    pub fn valency(&self) -> Option<usize> {
        let d = self.adjacency.first().map_or(0, Vec::len);
        self.adjacency.iter().all(|l| l.len() == d).then_some(d)
    }

    /// `K_m` recognition: regular of valency `m - 1`.
    pub fn is_complete(&self) -> bool {
        self.valency() == Some(self.vertex_count().saturating_sub(1))
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for u in self.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    queue.push_back(u);
                }
            }
        }
        count == n
    }

    /// Number of s-arcs.
    pub fn count_s_arcs(&self, s: usize) -> BigUint {
        let n = self.vertex_count();
        match s {
            0 => BigUint::from(n),
            1 => BigUint::from(2 * self.edge_count()),
            2 => self
                .adjacency
                .iter()
                .map(|l| BigUint::from(l.len() * l.len().saturating_sub(1)))
                .sum(),
            _ => self.count_long_arcs(s),
        }
    }

    /// Dynamic programme over directed arcs: the number of s-arcs ending
    /// with `v -> w` is the number of (s-1)-arcs ending at `v` minus those
    /// ending with `w -> v`.
    fn count_long_arcs(&self, s: usize) -> BigUint {
        let n = self.vertex_count();
        let mut offset = vec![0usize; n + 1];
        for v in 0..n {
            offset[v + 1] = offset[v] + self.degree(v);
        }
        let arc_index = |u: usize, v: usize| -> usize {
            offset[u] + self.adjacency[u].binary_search(&(v as u32)).unwrap()
        };
        let mut counts: Vec<BigUint> = vec![BigUint::one(); offset[n]];
        for _ in 1..s {
            let mut incoming: Vec<BigUint> = vec![BigUint::zero(); n];
            for u in 0..n {
                for (k, v) in self.neighbors(u).enumerate() {
                    incoming[v] += &counts[offset[u] + k];
                }
            }
            let mut next = vec![BigUint::zero(); offset[n]];
            for v in 0..n {
                for (k, w) in self.neighbors(v).enumerate() {
                    next[offset[v] + k] = &incoming[v] - &counts[arc_index(w, v)];
                }
            }
            counts = next;
        }
        counts.into_iter().sum()
    }

    /// The lexicographically least s-arc, if any.
    pub fn least_s_arc(&self, s: usize) -> Option<Vec<usize>> {
        fn extend(g: &Graph, arc: &mut Vec<usize>, s: usize) -> bool {
            if arc.len() == s + 1 {
                return true;
            }
            let last = arc[arc.len() - 1];
            let prev = (arc.len() >= 2).then(|| arc[arc.len() - 2]);
            for u in g.neighbors(last) {
                if Some(u) == prev {
                    continue;
                }
                arc.push(u);
                if extend(g, arc, s) {
                    return true;
                }
                arc.pop();
            }
            false
        }
        let mut arc = Vec::with_capacity(s + 1);
        for v in 0..self.vertex_count() {
            arc.push(v);
            if extend(self, &mut arc, s) {
                return Some(arc);
            }
            arc.pop();
        }
        None
    }

    /// One `u v` line per edge, `u < v`, ascending.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Parses an edge list. Without `vertex_count`, the largest endpoint
    /// plus one is used.
    pub fn from_edge_list(text: &str, vertex_count: Option<usize>) -> Result<Graph> {
        let mut edges = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse = |s: &str| {
                s.parse::<usize>().map_err(|_| Error::ParseLine {
                    line: i + 1,
                    message: format!("bad vertex `{s}`"),
                })
            };
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 2 {
                return Err(Error::ParseLine {
                    line: i + 1,
                    message: "expected two vertices".into(),
                });
            }
            edges.push((parse(parts[0])?, parse(parts[1])?));
        }
        let n = vertex_count.unwrap_or_else(|| {
            edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0)
        });
        Graph::from_edges(n, &edges)
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph {name} {{\n");
        for v in 0..self.vertex_count() {
            if self.degree(v) == 0 {
                let _ = writeln!(out, "  {v};");
            }
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            vertex_count: self.vertex_count(),
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }

    pub fn from_json(json: &GraphJson) -> Result<Graph> {
        let edges: Vec<(usize, usize)> = json.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_edges(json.vertex_count, &edges)
    }
}

/// Valency equality of a graph and a quotient; both must be regular.
pub fn is_normal_cover(graph: &Graph, quotient: &Graph) -> Result<bool> {
    match (graph.valency(), quotient.valency()) {
        (Some(a), Some(b)) => Ok(a == b),
        _ => Err(Error::NotRegular),
    }
}

/// A permutation group acting on the vertices of a graph by automorphisms.
#[derive(Clone, Debug)]
pub struct GroupAction {
    group: PermGroup,
    graph: Graph,
}

/// Outcome of an s-arc-transitivity test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoArcReport {
    pub s: usize,
    #[serde(with = "big_string")]
    pub total_arcs: BigUint,
    pub sample_arc: Vec<usize>,
    #[serde(with = "big_string")]
    pub arc_stabilizer_order: BigUint,
    #[serde(with = "big_string")]
    pub orbit_size: BigUint,
    pub transitive: bool,
}

/// A normal quotient `Γ_M` with the vertex-to-orbit map.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub graph: Graph,
    pub orbit_of: Vec<usize>,
    pub orbits: Vec<Vec<usize>>,
    /// Edges with both ends in one orbit, dropped from the quotient.
    pub dropped_edges: usize,
}

/// Hypotheses and conclusions of the normal-quotient theorem for one `M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientReport {
    pub m_normal: bool,
    pub orbit_count: usize,
    pub connected: bool,
    pub two_arc_transitive: bool,
    pub hypotheses_met: bool,
    pub semiregular: bool,
    pub graph_valency: Option<usize>,
    pub quotient_valency: Option<usize>,
    pub normal_cover: bool,
    pub dropped_edges: usize,
    /// False only when the hypotheses hold but a conclusion fails.
    pub consistent: bool,
}

impl GroupAction {
    /// Validates that every generator maps edges to edges.
    pub fn new(group: PermGroup, graph: Graph) -> Result<GroupAction> {
        if group.degree() != graph.vertex_count() {
            return Err(Error::DegreeMismatch {
                left: graph.vertex_count(),
                right: group.degree(),
            });
        }
        for (index, g) in group.generators().iter().enumerate() {
            for (u, v) in graph.edges() {
                if !graph.has_edge(g.apply(u), g.apply(v)) {
                    return Err(Error::NotAnAutomorphism { index });
                }
            }
        }
        Ok(GroupAction { group, graph })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_parts(self) -> (PermGroup, Graph) {
        (self.group, self.graph)
    }

    /// Tests transitivity on s-arcs using the least s-arc as the sample.
    pub fn is_s_arc_transitive(&self, s: usize) -> Result<TwoArcReport> {
        let total = self.graph.count_s_arcs(s);
        let arc = self.graph.least_s_arc(s).ok_or_else(|| {
            Error::InvalidGraph(format!("graph has no {s}-arcs"))
        })?;
        let chain = self.group.chain_with_base(&arc)?;
        let mut distinct = arc.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let stab = chain.order_from(distinct.len());
        let orbit = chain.order() / &stab;
        Ok(TwoArcReport {
            s,
            transitive: orbit == total,
            total_arcs: total,
            sample_arc: arc,
            arc_stabilizer_order: stab,
            orbit_size: orbit,
        })
    }

    /// The normal quotient by the orbits of `m`.
    pub fn quotient_graph(&self, m: &PermGroup) -> Result<Quotient> {
        m.require_subgroup_of(&self.group)?;
        let orbits = m.orbits();
        let mut orbit_of = vec![0usize; self.graph.vertex_count()];
        for (i, o) in orbits.iter().enumerate() {
            for &v in o {
                orbit_of[v] = i;
            }
        }
        let mut adjacency = vec![Vec::new(); orbits.len()];
        let mut dropped = 0;
        for (u, v) in self.graph.edges() {
            let (a, b) = (orbit_of[u], orbit_of[v]);
            if a == b {
                dropped += 1;
            } else {
                adjacency[a].push(b as u32);
                adjacency[b].push(a as u32);
            }
        }
        Ok(Quotient {
            graph: Graph::from_adjacency(adjacency),
            orbit_of,
            orbits,
            dropped_edges: dropped,
        })
    }

    /// Evaluates the normal-quotient theorem for `m`: when `m` is normal
    /// with at least three orbits on a connected (G,2)-arc-transitive graph,
    /// `m` should be semiregular and the graph a normal cover of `Γ_M`.
    /// Violations are reported, not raised.
    pub fn semiregular_quotient_check(&self, m: &PermGroup) -> Result<QuotientReport> {
        let quotient = self.quotient_graph(m)?;
        let mut m_normal = true;
        for g in self.group.generators() {
            if !m.is_normalized_by(g)? {
                m_normal = false;
                break;
            }
        }
        let connected = self.graph.is_connected();
        let two_arc_transitive = self.graph.edge_count() > 0
            && self.is_s_arc_transitive(2).map(|r| r.transitive).unwrap_or(false);
        let orbit_count = quotient.orbits.len();
        let hypotheses_met = m_normal && orbit_count >= 3 && connected && two_arc_transitive;
        let semiregular = m.is_semiregular();
        let graph_valency = self.graph.valency();
        let quotient_valency = quotient.graph.valency();
        let normal_cover = matches!((graph_valency, quotient_valency), (Some(a), Some(b)) if a == b);
        Ok(QuotientReport {
            m_normal,
            orbit_count,
            connected,
            two_arc_transitive,
            hypotheses_met,
            semiregular,
            graph_valency,
            quotient_valency,
            normal_cover,
            dropped_edges: quotient.dropped_edges,
            consistent: !hypotheses_met || (semiregular && normal_cover),
        })
    }
}
