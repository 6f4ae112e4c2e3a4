//! Marked multigraphs and the edge operations every invariant engine consumes.
//!
//! Graphs may contain loops and parallel edges. Every edge carries a stable
//! integer id, so deleting or contracting edges never renumbers the rest and
//! parallel edges stay distinguishable. All operations are pure: they return
//! new graphs and never mutate their input.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::mark::Mark;

pub type VertexId = u32;
pub type EdgeId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    /// Endpoints as an ordered pair (min, max).
    pub fn ends(&self) -> (VertexId, VertexId) {
        (self.u.min(self.v), self.u.max(self.v))
    }

    pub fn other_end(&self, x: VertexId) -> VertexId {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// A multigraph with a [`Mark`] on every vertex.
///
/// Weighted graphs are the all-`d = 0` special case and unweighted graphs the
/// all-`(1, 0)` case.
#[derive(Clone, Debug)]
pub struct MarkedGraph {
    verts: BTreeMap<VertexId, Mark>,
    edges: Vec<Edge>,
    next_edge_id: EdgeId,
}

impl PartialEq for MarkedGraph {
    /// Structural equality: same vertex ids with the same marks and the same
    /// edge multiset (ids included, endpoints unordered).
    fn eq(&self, other: &Self) -> bool {
        if self.verts != other.verts {
            return false;
        }
        let mut a: Vec<(EdgeId, (VertexId, VertexId))> =
            self.edges.iter().map(|e| (e.id, e.ends())).collect();
        let mut b: Vec<(EdgeId, (VertexId, VertexId))> =
            other.edges.iter().map(|e| (e.id, e.ends())).collect();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }
}

impl Eq for MarkedGraph {}

impl MarkedGraph {
    pub fn new() -> MarkedGraph {
        MarkedGraph {
            verts: BTreeMap::new(),
            edges: Vec::new(),
            next_edge_id: 0,
        }
    }

    /// Build a graph from `(id, mark)` vertices and `(u, v)` edge endpoints.
    /// Edges receive ids `0, 1, 2, ...` in input order.
    pub fn from_parts(
        vertices: impl IntoIterator<Item = (VertexId, Mark)>,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<MarkedGraph> {
        let mut g = MarkedGraph::new();
        for (id, m) in vertices {
            g.add_vertex(id, m)?;
        }
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// An unweighted graph: all marks `(1, 0)`, vertices `0..n`.
    pub fn unweighted(n: u32, edges: impl IntoIterator<Item = (VertexId, VertexId)>) -> MarkedGraph {
        MarkedGraph::from_parts((0..n).map(|i| (i, Mark::UNIT)), edges)
            .expect("vertex ids are distinct and edges in range")
    }

    /// A weighted graph: marks `(w_i, 0)`, vertices `0..n` in weight order.
    pub fn weighted(
        weights: &[u32],
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<MarkedGraph> {
        let verts: Vec<(VertexId, Mark)> = weights
            .iter()
            .enumerate()
            .map(|(i, &w)| Ok((i as VertexId, Mark::weight(w)?)))
            .collect::<Result<_>>()?;
        MarkedGraph::from_parts(verts, edges)
    }

    /// A weighted path with the given vertex weights, in order.
    pub fn weighted_path(weights: &[u32]) -> Result<MarkedGraph> {
        let n = weights.len() as u32;
        MarkedGraph::weighted(weights, (1..n).map(|i| (i - 1, i)))
    }

    pub fn add_vertex(&mut self, id: VertexId, mark: Mark) -> Result<()> {
        if self.verts.insert(id, mark).is_some() {
            return Err(Error::DuplicateVertex(id));
        }
        Ok(())
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId> {
        if !self.verts.contains_key(&u) {
            return Err(Error::UnknownVertex(u));
        }
        if !self.verts.contains_key(&v) {
            return Err(Error::UnknownVertex(v));
        }
        let id = self.next_edge_id;
        self.next_edge_id += 1;
        self.edges.push(Edge { id, u, v });
        Ok(id)
    }

    pub fn n(&self) -> usize {
        self.verts.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = (VertexId, Mark)> + '_ {
        self.verts.iter().map(|(&v, &m)| (v, m))
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.verts.keys().copied()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Result<&Edge> {
        self.edges
            .iter()
            .find(|e| e.id == id)
            .ok_or(Error::UnknownEdge(id))
    }

    pub fn mark(&self, v: VertexId) -> Result<Mark> {
        self.verts.get(&v).copied().ok_or(Error::UnknownVertex(v))
    }

    /// Total weight `ω(G) = Σ_v w_v`.
    pub fn total_weight(&self) -> u64 {
        self.verts.values().map(|m| m.w() as u64).sum()
    }

    /// Degree of `v`; a loop contributes 2.
    pub fn degree(&self, v: VertexId) -> usize {
        self.edges
            .iter()
            .map(|e| (e.u == v) as usize + (e.v == v) as usize)
            .sum()
    }

    pub fn is_unweighted(&self) -> bool {
        self.verts.values().all(|m| *m == Mark::UNIT)
    }

    /// All marks of the form `(w, 0)`.
    pub fn is_weighted_only(&self) -> bool {
        self.verts.values().all(|m| m.d() == 0)
    }

    /// All marks strict (`w >= d + 2`).
    pub fn is_strictly_marked(&self) -> bool {
        self.verts.values().all(|m| m.is_strict())
    }

    pub fn has_loop(&self) -> bool {
        self.edges.iter().any(|e| e.is_loop())
    }

    pub fn is_simple(&self) -> bool {
        if self.has_loop() {
            return false;
        }
        let mut seen = BTreeSet::new();
        self.edges.iter().all(|e| seen.insert(e.ends()))
    }

    /// Loop-free and acyclic (parallel edges count as cycles).
    pub fn is_forest(&self) -> bool {
        let mut dsu = Dsu::new(&self.verts);
        for e in &self.edges {
            if e.is_loop() || !dsu.union(e.u, e.v) {
                return false;
            }
        }
        true
    }

    // ---- Edge operations -------------------------------------------------

    /// `G \ e`: remove one copy of the edge; vertices and marks unchanged.
    pub fn delete_edge(&self, e: EdgeId) -> Result<MarkedGraph> {
        self.edge(e)?;
        let mut g = self.clone();
        g.edges.retain(|x| x.id != e);
        Ok(g)
    }

    /// `G / e`: contract a non-loop edge. The endpoints merge into the
    /// smaller endpoint id, whose mark becomes the dot-sum `m(u) ∔ m(v)`.
    /// All other edges re-attach; parallel edges and loops may appear.
    pub fn contract_edge(&self, e: EdgeId) -> Result<MarkedGraph> {
        let edge = *self.edge(e)?;
        if edge.is_loop() {
            return Err(Error::LoopContraction(e));
        }
        let (keep, gone) = (edge.u.min(edge.v), edge.u.max(edge.v));
        let mut g = self.clone();
        let m_keep = g.verts.remove(&keep).expect("endpoint exists");
        let m_gone = g.verts.remove(&gone).expect("endpoint exists");
        g.verts.insert(keep, m_keep.dot_sum(m_gone));
        g.edges.retain(|x| x.id != e);
        for x in &mut g.edges {
            if x.u == gone {
                x.u = keep;
            }
            if x.v == gone {
                x.v = keep;
            }
        }
        Ok(g)
    }

    /// Contract a set of edges one by one in ascending id order. The edges
    /// must be pairwise distinct and none may be (or become) a loop.
    pub fn contract_edges(&self, ids: &[EdgeId]) -> Result<MarkedGraph> {
        let mut ids = ids.to_vec();
        ids.sort_unstable();
        let mut g = self.clone();
        for id in ids {
            g = g.contract_edge(id)?;
        }
        Ok(g)
    }

    /// `G ⊙ e`: near-contraction. Contract `e`, then attach a new leaf with
    /// mark `(1, 0)` to the contracted vertex by a fresh pendant edge `ℓ_e`,
    /// and give the contracted vertex mark `(w_u + w_v - 1, d_u + d_v)`.
    /// Total weight and vertex count are preserved.
    ///
    /// Returns the new graph together with the id of `ℓ_e`.
    pub fn near_contract(&self, e: EdgeId) -> Result<(MarkedGraph, EdgeId)> {
        let edge = *self.edge(e)?;
        if edge.is_loop() {
            return Err(Error::LoopContraction(e));
        }
        let mu = self.mark(edge.u)?;
        let mv = self.mark(edge.v)?;
        let mut g = self.contract_edge(e)?;
        let center = edge.u.min(edge.v);
        let center_mark = Mark::new(mu.w() + mv.w() - 1, mu.d() + mv.d())
            .expect("w_u + w_v - 1 >= d_u + d_v + 1 for valid marks");
        g.verts.insert(center, center_mark);
        // Fresh id past the *original* graph's ids, so the removed endpoint's
        // id is never recycled.
        let leaf = self.verts.keys().next_back().map_or(0, |&m| m + 1);
        g.verts.insert(leaf, Mark::UNIT);
        let pendant = g.next_edge_id;
        g.next_edge_id += 1;
        g.edges.push(Edge {
            id: pendant,
            u: center,
            v: leaf,
        });
        Ok((g, pendant))
    }

    /// `G^s`: remove all loops and collapse each class of parallel edges to
    /// the single copy with the smallest edge id. Marks are unchanged.
    pub fn simplify(&self) -> MarkedGraph {
        let mut keep: BTreeMap<(VertexId, VertexId), EdgeId> = BTreeMap::new();
        for e in &self.edges {
            if e.is_loop() {
                continue;
            }
            let slot = keep.entry(e.ends()).or_insert(e.id);
            if e.id < *slot {
                *slot = e.id;
            }
        }
        let kept: BTreeSet<EdgeId> = keep.values().copied().collect();
        let mut g = self.clone();
        g.edges.retain(|e| kept.contains(&e.id));
        g
    }

    /// The absorbable endpoint of `e`, if any: a vertex of degree 1 with
    /// mark `(1, 0)`. When both endpoints qualify the larger id is reported,
    /// so absorption always merges into the smaller id.
    pub fn absorbable_endpoint(&self, e: EdgeId) -> Option<VertexId> {
        let edge = self.edge(e).ok()?;
        if edge.is_loop() {
            return None;
        }
        let mut candidates: Vec<VertexId> = [edge.u, edge.v]
            .into_iter()
            .filter(|&x| self.degree(x) == 1 && self.verts[&x] == Mark::UNIT)
            .collect();
        candidates.sort_unstable();
        candidates.pop()
    }

    /// Absorb a pendant edge incident to an absorbable vertex: the `(1, 0)`
    /// leaf disappears and the surviving endpoint's mark gains one weight,
    /// `(w, d) -> (w + 1, d)`.
    pub fn absorb(&self, e: EdgeId) -> Result<MarkedGraph> {
        let leaf = self.absorbable_endpoint(e).ok_or(Error::NotAbsorbable(e))?;
        let edge = *self.edge(e)?;
        let survivor = edge.other_end(leaf);
        let mut g = self.clone();
        g.verts.remove(&leaf);
        let m = g.verts.remove(&survivor).expect("endpoint exists");
        g.verts.insert(survivor, m.absorb_leaf());
        g.edges.retain(|x| x.id != e);
        Ok(g)
    }

    fn first_absorbable_edge(&self) -> Option<EdgeId> {
        let mut ids: Vec<EdgeId> = self
            .edges
            .iter()
            .filter(|e| self.absorbable_endpoint(e.id).is_some())
            .map(|e| e.id)
            .collect();
        ids.sort_unstable();
        ids.first().copied()
    }

    /// The core: absorb absorbable edges until none remain. Absorptions are
    /// performed in ascending edge-id order; the result is mark-isomorphic
    /// regardless of the order chosen.
    pub fn core(&self) -> MarkedGraph {
        let mut g = self.clone();
        while let Some(e) = g.first_absorbable_edge() {
            g = g.absorb(e).expect("edge reported absorbable");
        }
        g
    }

    pub fn has_absorbable_vertex(&self) -> bool {
        self.first_absorbable_edge().is_some()
    }

    /// Inverse of [`core`](Self::core) on trees with all `d = 0`: every
    /// vertex of mark `(w, 0)` becomes an unweighted vertex with `w - 1` new
    /// unweighted leaves attached.
    pub fn uncore(&self) -> Result<MarkedGraph> {
        if !self.is_weighted_only() {
            return Err(Error::DottedMark);
        }
        let mut g = self.clone();
        let mut next = g.verts.keys().next_back().map_or(0, |&m| m + 1);
        for (v, m) in self.vertices() {
            g.verts.insert(v, Mark::UNIT);
            for _ in 1..m.w() {
                g.verts.insert(next, Mark::UNIT);
                let id = g.next_edge_id;
                g.next_edge_id += 1;
                g.edges.push(Edge { id, u: v, v: next });
                next += 1;
            }
        }
        Ok(g)
    }

    // ---- Spanning subgraphs ----------------------------------------------

    /// Connected components of the spanning subgraph `G|_A`, as the list of
    /// vertex sets (each sorted, list sorted by smallest member).
    pub fn components_of(&self, subset: &[EdgeId]) -> Result<Vec<Vec<VertexId>>> {
        let chosen: BTreeSet<EdgeId> = subset.iter().copied().collect();
        for &id in subset {
            self.edge(id)?;
        }
        let mut dsu = Dsu::new(&self.verts);
        for e in &self.edges {
            if chosen.contains(&e.id) {
                dsu.union(e.u, e.v);
            }
        }
        Ok(dsu.components())
    }

    /// The M-partition induced by `A`: total marks (dot-sums) of the
    /// components of `G|_A`, plus `|A|` and the rank `r_G(A) = |V| - k(G|_A)`.
    pub fn spanning_partition(&self, subset: &[EdgeId]) -> Result<(MPartition, usize, usize)> {
        let comps = self.components_of(subset)?;
        let rank = self.n() - comps.len();
        let marks = comps
            .iter()
            .map(|c| {
                let mut it = c.iter().map(|v| self.verts[v]);
                let first = it.next().expect("component is non-empty");
                it.fold(first, Mark::dot_sum)
            })
            .collect();
        Ok((MPartition::new(marks), subset.len(), rank))
    }

    /// Same as [`spanning_partition`](Self::spanning_partition) but on the
    /// full graph's connected components.
    pub fn component_count(&self) -> usize {
        let mut dsu = Dsu::new(&self.verts);
        for e in &self.edges {
            dsu.union(e.u, e.v);
        }
        dsu.components().len()
    }

    /// Assorted counts used throughout: pendant/internal edges follow the
    /// convention that an internal edge is a non-loop edge both of whose
    /// endpoints have degree greater than 1.
    pub fn stats(&self) -> GraphStats {
        let degree: BTreeMap<VertexId, usize> = self
            .verts
            .keys()
            .map(|&v| (v, self.degree(v)))
            .collect();
        let mut internal: Vec<EdgeId> = self
            .edges
            .iter()
            .filter(|e| !e.is_loop() && degree[&e.u] > 1 && degree[&e.v] > 1)
            .map(|e| e.id)
            .collect();
        internal.sort_unstable();
        let leaves: Vec<VertexId> = degree
            .iter()
            .filter(|&(_, &d)| d == 1)
            .map(|(&v, _)| v)
            .collect();
        let isolated = degree.values().filter(|&&d| d == 0).count();
        GraphStats {
            n: self.n(),
            edges: self.num_edges(),
            isolated,
            internal_edges: internal,
            leaves,
            components: self.component_count(),
        }
    }

    /// Number of isolated vertices, `ι(G)`.
    pub fn isolated_count(&self) -> usize {
        self.verts.keys().filter(|&&v| self.degree(v) == 0).count()
    }

    pub fn internal_edge_ids(&self) -> Vec<EdgeId> {
        self.stats().internal_edges
    }

    /// Apply a function to every mark, keeping the structure.
    pub fn map_marks(&self, f: impl Fn(Mark) -> Mark) -> MarkedGraph {
        let mut g = self.clone();
        for m in g.verts.values_mut() {
            *m = f(*m);
        }
        g
    }

    /// Disjoint union, offsetting the other graph's vertex and edge ids past
    /// this graph's.
    pub fn disjoint_union(&self, other: &MarkedGraph) -> MarkedGraph {
        let voff = self.verts.keys().next_back().map_or(0, |&m| m + 1);
        let mut g = self.clone();
        for (v, m) in other.vertices() {
            g.verts.insert(v + voff, m);
        }
        for e in other.edges() {
            let id = g.next_edge_id;
            g.next_edge_id += 1;
            g.edges.push(Edge {
                id,
                u: e.u + voff,
                v: e.v + voff,
            });
        }
        g
    }

    /// The subgraph induced by a vertex set: all edges with both endpoints
    /// inside, ids preserved.
    pub fn induced(&self, vs: &[VertexId]) -> MarkedGraph {
        let set: BTreeSet<VertexId> = vs.iter().copied().collect();
        let mut g = MarkedGraph::new();
        for (&v, &m) in &self.verts {
            if set.contains(&v) {
                g.verts.insert(v, m);
            }
        }
        for e in &self.edges {
            if set.contains(&e.u) && set.contains(&e.v) {
                g.edges.push(*e);
            }
        }
        g.next_edge_id = self.next_edge_id;
        g
    }
}

impl Default for MarkedGraph {
    fn default() -> Self {
        MarkedGraph::new()
    }
}

/// Multiset of marks induced by the components of a spanning subgraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPartition(Vec<Mark>);

impl MPartition {
    pub fn new(mut marks: Vec<Mark>) -> MPartition {
        marks.sort_unstable_by(|a, b| b.cmp(a));
        MPartition(marks)
    }

    pub fn marks(&self) -> &[Mark] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The dot-sum of all parts, i.e. the mark this is an M-partition of.
    pub fn total(&self) -> Option<Mark> {
        let mut it = self.0.iter().copied();
        let first = it.next()?;
        Some(it.fold(first, Mark::dot_sum))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphStats {
    pub n: usize,
    pub edges: usize,
    pub isolated: usize,
    pub internal_edges: Vec<EdgeId>,
    pub leaves: Vec<VertexId>,
    pub components: usize,
}

/// Union-find over an arbitrary set of vertex ids.
pub(crate) struct Dsu {
    index: BTreeMap<VertexId, usize>,
    ids: Vec<VertexId>,
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(verts: &BTreeMap<VertexId, Mark>) -> Dsu {
        let ids: Vec<VertexId> = verts.keys().copied().collect();
        let index = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let parent = (0..ids.len()).collect();
        Dsu { index, ids, parent }
    }

    fn find(&mut self, i: usize) -> usize {
        if self.parent[i] != i {
            let r = self.find(self.parent[i]);
            self.parent[i] = r;
        }
        self.parent[i]
    }

    /// Returns false when both endpoints were already in one component.
    pub(crate) fn union(&mut self, a: VertexId, b: VertexId) -> bool {
        let (i, j) = (self.index[&a], self.index[&b]);
        let (ri, rj) = (self.find(i), self.find(j));
        if ri == rj {
            return false;
        }
        self.parent[ri.max(rj)] = ri.min(rj);
        true
    }

    pub(crate) fn components(&mut self) -> Vec<Vec<VertexId>> {
        let mut map: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
        for i in 0..self.ids.len() {
            let r = self.find(i);
            map.entry(r).or_default().push(self.ids[i]);
        }
        map.into_values().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mark::mk;

    fn triangle_with_pendant() -> MarkedGraph {
        // Vertices 0,1,2 form the triangle; 3 hangs off 2.
        MarkedGraph::unweighted(4, vec![(0, 1), (0, 2), (1, 2), (2, 3)])
    }

    #[test]
    fn delete_keeps_vertices() {
        let g = triangle_with_pendant();
        let h = g.delete_edge(0).unwrap();
        assert_eq!(h.n(), 4);
        assert_eq!(h.num_edges(), 3);
        assert!(g.delete_edge(99).is_err());
    }

    #[test]
    fn delete_single_edge_leaves_isolated_vertices() {
        let g = MarkedGraph::unweighted(2, vec![(0, 1)]);
        let h = g.delete_edge(0).unwrap();
        assert_eq!(h.n(), 2);
        assert_eq!(h.isolated_count(), 2);
    }

    #[test]
    fn delete_one_parallel_copy() {
        let g = MarkedGraph::unweighted(2, vec![(0, 1), (0, 1)]);
        let h = g.delete_edge(0).unwrap();
        assert_eq!(h.num_edges(), 1);
        assert_eq!(h.edges()[0].id, 1);
    }

    #[test]
    fn contract_dot_sums_marks() {
        let g = MarkedGraph::from_parts(vec![(0, mk(4, 1)), (1, mk(2, 0))], vec![(0, 1)]).unwrap();
        let h = g.contract_edge(0).unwrap();
        assert_eq!(h.n(), 1);
        assert_eq!(h.mark(0).unwrap(), mk(6, 2));
    }

    #[test]
    fn contract_weighted_path_edge() {
        let g = MarkedGraph::weighted_path(&[4, 1, 2]).unwrap();
        let h = g.contract_edge(0).unwrap();
        assert_eq!(h.n(), 2);
        assert_eq!(h.mark(0).unwrap(), mk(5, 1));
        assert_eq!(h.mark(2).unwrap(), mk(2, 0));
        assert_eq!(h.num_edges(), 1);
    }

    #[test]
    fn contract_parallel_pair_creates_loop() {
        let g = MarkedGraph::unweighted(2, vec![(0, 1), (0, 1)]);
        let h = g.contract_edge(0).unwrap();
        assert_eq!(h.n(), 1);
        assert_eq!(h.num_edges(), 1);
        assert!(h.edges()[0].is_loop());
    }

    #[test]
    fn contract_rejects_loop() {
        let g = MarkedGraph::unweighted(1, vec![(0, 0)]);
        assert!(matches!(
            g.contract_edge(0),
            Err(Error::LoopContraction(0))
        ));
    }

    #[test]
    fn near_contract_preserves_weight_and_count() {
        let g = MarkedGraph::unweighted(2, vec![(0, 1)]);
        let (h, pendant) = g.near_contract(0).unwrap();
        assert_eq!(h.n(), 2);
        assert_eq!(h.total_weight(), 2);
        assert_eq!(h.mark(0).unwrap(), Mark::UNIT);
        let e = h.edge(pendant).unwrap();
        assert_eq!(e.ends(), (0, 2));
    }

    #[test]
    fn near_contract_mark_formulas() {
        let g = MarkedGraph::from_parts(vec![(0, mk(4, 1)), (1, mk(2, 0))], vec![(0, 1)]).unwrap();
        let (h, pendant) = g.near_contract(0).unwrap();
        assert_eq!(h.mark(0).unwrap(), mk(5, 1));
        let leaf = h.edge(pendant).unwrap().other_end(0);
        assert_eq!(h.mark(leaf).unwrap(), Mark::UNIT);
        assert_eq!(h.total_weight(), g.total_weight());
    }

    #[test]
    fn near_contract_then_contract_pendant_equals_contract() {
        // First identity inside the deletion-near-contraction proof.
        let g = triangle_with_pendant();
        for e in g.edges().to_vec() {
            let (h, pendant) = g.near_contract(e.id).unwrap();
            let lhs = h.contract_edge(pendant).unwrap();
            let rhs = g.contract_edge(e.id).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn simplify_collapses_parallels_and_loops() {
        let g = MarkedGraph::unweighted(2, vec![(0, 1), (0, 1), (0, 0)]);
        let h = g.simplify();
        assert_eq!(h.num_edges(), 1);
        assert_eq!(h.edges()[0].id, 0);
        let s = triangle_with_pendant().simplify();
        assert_eq!(s, triangle_with_pendant());
    }

    #[test]
    fn absorb_and_core() {
        // Spider: three centers carrying 3, 2, 1 unweighted leaves.
        let mut g = MarkedGraph::unweighted(3, vec![(0, 1), (1, 2)]);
        let mut next = 3;
        for (c, k) in [(0u32, 3u32), (1, 2), (2, 1)] {
            for _ in 0..k {
                g.add_vertex(next, Mark::UNIT).unwrap();
                g.add_edge(c, next).unwrap();
                next += 1;
            }
        }
        assert_eq!(g.n(), 9);
        let k = g.core();
        assert_eq!(k.n(), 3);
        assert_eq!(k.mark(0).unwrap(), mk(4, 0));
        assert_eq!(k.mark(1).unwrap(), mk(3, 0));
        assert_eq!(k.mark(2).unwrap(), mk(2, 0));
        assert_eq!(k.num_edges(), 2);
        // Idempotent.
        assert_eq!(k.core(), k);
    }

    #[test]
    fn core_of_star_is_single_vertex() {
        let k = 7u32;
        let star = MarkedGraph::unweighted(k, (1..k).map(|i| (0, i)));
        let c = star.core();
        assert_eq!(c.n(), 1);
        assert_eq!(c.mark(0).unwrap(), mk(k, 0));
    }

    #[test]
    fn core_without_absorbable_leaves_is_identity() {
        let g = MarkedGraph::weighted_path(&[4, 3, 2]).unwrap();
        assert_eq!(g.core(), g);
    }

    #[test]
    fn absorb_rejects_non_absorbable() {
        let g = MarkedGraph::weighted_path(&[4, 3, 2]).unwrap();
        assert!(matches!(g.absorb(0), Err(Error::NotAbsorbable(0))));
    }

    #[test]
    fn uncore_spider_roundtrip() {
        let k = MarkedGraph::weighted_path(&[4, 3, 2]).unwrap();
        let g = k.uncore().unwrap();
        assert_eq!(g.n(), 9);
        assert!(g.is_unweighted());
        assert_eq!(g.core(), k);
    }

    #[test]
    fn uncore_rejects_dots() {
        let g = MarkedGraph::from_parts(vec![(0, mk(3, 1))], vec![]).unwrap();
        assert!(g.uncore().is_err());
    }

    #[test]
    fn spanning_partition_cases() {
        let g = MarkedGraph::weighted_path(&[4, 1, 2]).unwrap();
        let (p, a, r) = g.spanning_partition(&[]).unwrap();
        assert_eq!(p.marks(), &[mk(4, 0), mk(2, 0), mk(1, 0)]);
        assert_eq!((a, r), (0, 0));
        let (p, a, r) = g.spanning_partition(&[0, 1]).unwrap();
        assert_eq!(p.marks(), &[mk(7, 2)]);
        assert_eq!((a, r), (2, 2));
        assert!(g.spanning_partition(&[9]).is_err());
    }

    #[test]
    fn stats_on_named_graphs() {
        let g = triangle_with_pendant();
        let s = g.stats();
        assert_eq!(s.n, 4);
        assert_eq!(s.edges, 4);
        assert_eq!(s.isolated, 0);
        assert_eq!(s.internal_edges, vec![0, 1, 2]);
        assert_eq!(s.leaves, vec![3]);
        assert_eq!(s.components, 1);

        let single = MarkedGraph::unweighted(1, vec![]);
        let s = single.stats();
        assert_eq!((s.n, s.edges, s.isolated), (1, 0, 1));

        let star9 = MarkedGraph::unweighted(9, (1..9).map(|i| (0, i)));
        let s = star9.stats();
        assert_eq!(s.internal_edges.len(), 0);
        assert_eq!(s.leaves.len(), 8);
    }

    #[test]
    fn total_weight_invariance() {
        let g = triangle_with_pendant();
        let w = g.total_weight();
        assert_eq!(g.contract_edge(0).unwrap().total_weight(), w);
        assert_eq!(g.near_contract(0).unwrap().0.total_weight(), w);
        assert_eq!(g.core().total_weight(), w);
        assert_eq!(g.contract_edge(0).unwrap().n(), g.n() - 1);
        assert_eq!(g.near_contract(0).unwrap().0.n(), g.n());
    }
}
