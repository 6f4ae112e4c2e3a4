//! The Star-Expansion algorithm.
//!
//! For a simple unweighted graph, recursively apply the
//! deletion-near-contraction relation to an internal edge `e`,
//!
//! ```text
//! X_H = X_{H \ e} + X_{(H ⊙ e)^s} - X_{(H ⊙ e)^s \ ℓ_e},
//! ```
//!
//! until every leaf of the computation tree is a star forest. The star-basis
//! expansion is then `X_G = Σ_leaves (-1)^(ι(H) - ι(G)) st_{λ(H)}`, where
//! `ι` counts isolated vertices, and no cancellation ever occurs: for each
//! partition λ all contributions carry the same sign.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, MarkedGraph};
use crate::partition::IntPartition;
use crate::symfunc::{Basis, SymFn};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// Signs of the three children, in order: delete, near-contract,
/// near-contract minus the pendant edge.
pub const CHILD_SIGNS: [Sign; 3] = [Sign::Plus, Sign::Plus, Sign::Minus];

/// The rooted deletion-near-contraction computation tree. Every internal
/// node records the internal edge it expanded; every leaf is a star forest.
#[derive(Clone, Debug)]
pub enum DncTree {
    Leaf(MarkedGraph),
    Node {
        graph: MarkedGraph,
        edge: EdgeId,
        children: Box<[DncTree; 3]>,
    },
}

impl DncTree {
    pub fn graph(&self) -> &MarkedGraph {
        match self {
            DncTree::Leaf(g) => g,
            DncTree::Node { graph, .. } => graph,
        }
    }

    pub fn leaves(&self) -> Vec<(&MarkedGraph, i64)> {
        let mut out = Vec::new();
        self.collect_leaves(1, &mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, sign: i64, out: &mut Vec<(&'a MarkedGraph, i64)>) {
        match self {
            DncTree::Leaf(g) => out.push((g, sign)),
            DncTree::Node { children, .. } => {
                for (child, s) in children.iter().zip(CHILD_SIGNS) {
                    child.collect_leaves(sign * s.value(), out);
                }
            }
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            DncTree::Leaf(_) => 1,
            DncTree::Node { children, .. } => {
                1 + children.iter().map(DncTree::node_count).sum::<usize>()
            }
        }
    }

    /// Follow a root-to-leaf path given by child indices (0, 1, 2).
    pub fn descend(&self, path: &[usize]) -> Result<&DncTree> {
        let mut cur = self;
        for &i in path {
            match cur {
                DncTree::Node { children, .. } if i < 3 => cur = &children[i],
                _ => return Err(Error::InvalidInput("path leaves the tree".into())),
            }
        }
        Ok(cur)
    }

    /// Indented text rendering with +/- edge labels.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(0, None, &mut out);
        out
    }

    fn render_into(&self, depth: usize, label: Option<Sign>, out: &mut String) {
        let indent = "  ".repeat(depth);
        let tag = match label {
            None => String::new(),
            Some(Sign::Plus) => "[+] ".to_string(),
            Some(Sign::Minus) => "[-] ".to_string(),
        };
        match self {
            DncTree::Leaf(g) => {
                out.push_str(&format!(
                    "{indent}{tag}leaf {} st{}\n",
                    describe(g),
                    leaf_partition(g)
                ));
            }
            DncTree::Node { graph, edge, children } => {
                let e = graph.edge(*edge).expect("edge exists");
                out.push_str(&format!(
                    "{indent}{tag}node {} expand e{}=({},{})\n",
                    describe(graph),
                    edge,
                    e.ends().0,
                    e.ends().1
                ));
                for (child, s) in children.iter().zip(CHILD_SIGNS) {
                    child.render_into(depth + 1, Some(s), out);
                }
            }
        }
    }
}

fn describe(g: &MarkedGraph) -> String {
    let mut edges: Vec<(u32, u32)> = g.edges().iter().map(|e| e.ends()).collect();
    edges.sort_unstable();
    let body = edges
        .iter()
        .map(|(u, v)| format!("{u}-{v}"))
        .collect::<Vec<_>>()
        .join(",");
    format!("n={} E={{{body}}}", g.n())
}

/// Partition of a star forest by component orders.
fn leaf_partition(g: &MarkedGraph) -> IntPartition {
    let ids: Vec<EdgeId> = g.edges().iter().map(|e| e.id).collect();
    let comps = g.components_of(&ids).expect("own edges");
    IntPartition::new(comps.iter().map(|c| c.len() as u32).collect())
}

/// Deterministic default choice: the internal edge with lexicographically
/// smallest (min endpoint, max endpoint).
pub fn default_edge_choice(g: &MarkedGraph) -> Option<EdgeId> {
    g.internal_edge_ids()
        .into_iter()
        .min_by_key(|&id| g.edge(id).expect("internal edge").ends())
}

/// Star-expansion of the chromatic symmetric function of a simple graph,
/// streaming leaf contributions without materializing the tree.
pub fn dnc_expand(g: &MarkedGraph) -> Result<SymFn> {
    check_input(g)?;
    let mut memo = HashMap::new();
    Ok(expand_rec(g, &default_edge_choice, &mut memo))
}

/// Star-expansion with an explicit internal-edge selection rule; the result
/// never depends on the rule even though the tree does.
pub fn dnc_expand_with_choice(
    g: &MarkedGraph,
    choice: &impl Fn(&MarkedGraph) -> Option<EdgeId>,
) -> Result<SymFn> {
    check_input(g)?;
    let mut memo = HashMap::new();
    Ok(expand_rec(g, choice, &mut memo))
}

/// Star-expansion that also materializes the computation tree.
pub fn dnc_expand_with_tree(g: &MarkedGraph) -> Result<(DncTree, SymFn)> {
    check_input(g)?;
    let tree = build_tree(g, &default_edge_choice);
    let mut x = SymFn::zero(Basis::Star);
    for (leaf, sign) in tree.leaves() {
        x.add_term(leaf_partition(leaf), BigInt::from(sign));
    }
    Ok((tree, x))
}

fn check_input(g: &MarkedGraph) -> Result<()> {
    if !g.is_simple() {
        return Err(Error::NotSimple);
    }
    if !g.is_unweighted() {
        return Err(Error::InvalidInput(
            "star expansion takes unweighted graphs; weighted inputs go through the D-polynomial"
                .into(),
        ));
    }
    Ok(())
}

fn children_of(g: &MarkedGraph, e: EdgeId) -> [MarkedGraph; 3] {
    let deleted = g.delete_edge(e).expect("edge exists");
    let (ncon, pendant) = g.near_contract(e).expect("internal edges are not loops");
    let ncon = ncon.simplify();
    let minus_pendant = ncon.delete_edge(pendant).expect("pendant survives simplify");
    [deleted, ncon, minus_pendant]
}

fn expand_rec(
    g: &MarkedGraph,
    choice: &impl Fn(&MarkedGraph) -> Option<EdgeId>,
    memo: &mut HashMap<String, SymFn>,
) -> SymFn {
    let e = match choice(g) {
        None => return SymFn::monomial(Basis::Star, leaf_partition(g), BigInt::one()),
        Some(e) => e,
    };
    // The recursion keeps the vertex count fixed, so forests reachable from
    // one root share canonical keys.
    let key = if g.is_forest() {
        let k = canonical_form(g).expect("forest");
        if let Some(f) = memo.get(&k) {
            return f.clone();
        }
        Some(k)
    } else {
        None
    };
    let [del, ncon, minus] = children_of(g, e);
    let x = expand_rec(&del, choice, memo)
        .add(&expand_rec(&ncon, choice, memo))
        .sub(&expand_rec(&minus, choice, memo));
    if let Some(k) = key {
        memo.insert(k, x.clone());
    }
    x
}

fn build_tree(g: &MarkedGraph, choice: &impl Fn(&MarkedGraph) -> Option<EdgeId>) -> DncTree {
    match choice(g) {
        None => DncTree::Leaf(g.clone()),
        Some(e) => {
            let [del, ncon, minus] = children_of(g, e);
            DncTree::Node {
                graph: g.clone(),
                edge: e,
                children: Box::new([
                    build_tree(&del, choice),
                    build_tree(&ncon, choice),
                    build_tree(&minus, choice),
                ]),
            }
        }
    }
}

/// Sign of a root-to-leaf path: `(-1)^(number of minus-labeled edges)`.
/// Must equal `(-1)^(ι(leaf) - ι(root))`.
pub fn dnc_sign(tree: &DncTree, path: &[usize]) -> Result<i64> {
    tree.descend(path)?;
    let mut sign = 1i64;
    for &i in path {
        sign *= CHILD_SIGNS[i].value();
    }
    Ok(sign)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfunc::{csf_power, p_to_st};

    fn triangle_with_pendant() -> MarkedGraph {
        MarkedGraph::unweighted(4, vec![(0, 1), (0, 2), (1, 2), (2, 3)])
    }

    #[test]
    fn golden_triangle_pendant() {
        let x = dnc_expand(&triangle_with_pendant()).unwrap();
        assert_eq!(x.to_string(), "2*st[4] - 2*st[3,1] + 1*st[2,2]");
    }

    #[test]
    fn star_forest_is_single_leaf() {
        let mut g = MarkedGraph::unweighted(4, vec![(0, 1), (0, 2)]);
        g.add_vertex(4, crate::mark::mk(1, 0)).unwrap();
        g.add_edge(3, 4).unwrap();
        let (tree, x) = dnc_expand_with_tree(&g).unwrap();
        assert_eq!(tree.node_count(), 1);
        assert_eq!(
            x,
            SymFn::monomial(Basis::Star, IntPartition::new(vec![3, 2]), BigInt::one())
        );
    }

    #[test]
    fn rejects_non_simple_and_weighted() {
        let multi = MarkedGraph::unweighted(2, vec![(0, 1), (0, 1)]);
        assert!(dnc_expand(&multi).is_err());
        let weighted = MarkedGraph::weighted(&[2, 1], vec![(0, 1)]).unwrap();
        assert!(dnc_expand(&weighted).is_err());
    }

    #[test]
    fn matches_power_sum_oracle() {
        let graphs = [
            triangle_with_pendant(),
            MarkedGraph::unweighted(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]),
            MarkedGraph::unweighted(5, vec![(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (3, 4)]),
            MarkedGraph::unweighted(5, vec![(0, 1), (1, 2), (2, 3), (3, 4)]),
        ];
        for g in &graphs {
            let by_dnc = dnc_expand(g).unwrap();
            let by_oracle = p_to_st(&csf_power(g).unwrap());
            assert_eq!(by_dnc, by_oracle);
        }
    }

    #[test]
    fn tree_matches_streaming_and_signs() {
        let g = triangle_with_pendant();
        let (tree, x) = dnc_expand_with_tree(&g).unwrap();
        assert_eq!(x, dnc_expand(&g).unwrap());
        // Signs along every root-to-leaf path match the isolated-vertex rule.
        let root_iso = g.isolated_count() as i64;
        fn walk(t: &DncTree, path: &mut Vec<usize>, tree: &DncTree, root_iso: i64) {
            match t {
                DncTree::Leaf(h) => {
                    let sign = dnc_sign(tree, path).unwrap();
                    let expect = if (h.isolated_count() as i64 - root_iso) % 2 == 0 {
                        1
                    } else {
                        -1
                    };
                    assert_eq!(sign, expect);
                }
                DncTree::Node { children, .. } => {
                    for (i, c) in children.iter().enumerate() {
                        path.push(i);
                        walk(c, path, tree, root_iso);
                        path.pop();
                    }
                }
            }
        }
        walk(&tree, &mut Vec::new(), &tree, root_iso);
        assert_eq!(dnc_sign(&tree, &[]).unwrap(), 1);
        assert_eq!(dnc_sign(&tree, &[2]).unwrap(), -1);
    }

    #[test]
    fn no_cancellation_per_partition() {
        // Group leaf contributions by partition: one sign per partition.
        let g = MarkedGraph::unweighted(5, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]);
        let (tree, _) = dnc_expand_with_tree(&g).unwrap();
        let mut signs: std::collections::BTreeMap<IntPartition, i64> =
            std::collections::BTreeMap::new();
        for (leaf, sign) in tree.leaves() {
            let ids: Vec<EdgeId> = leaf.edges().iter().map(|e| e.id).collect();
            let comps = leaf.components_of(&ids).unwrap();
            let p = IntPartition::new(comps.iter().map(|c| c.len() as u32).collect());
            let prev = signs.insert(p.clone(), sign);
            if let Some(prev) = prev {
                assert_eq!(prev, sign, "cancellation at {p}");
            }
        }
    }

    #[test]
    fn choice_rule_does_not_change_result() {
        let g = MarkedGraph::unweighted(5, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]);
        let largest = |h: &MarkedGraph| {
            h.internal_edge_ids()
                .into_iter()
                .max_by_key(|&id| h.edge(id).unwrap().ends())
        };
        assert_eq!(
            dnc_expand(&g).unwrap(),
            dnc_expand_with_choice(&g, &largest).unwrap()
        );
    }

    #[test]
    fn node_count_bound_and_internal_decrease() {
        // Strict internal-edge decrease gives at most 3^k leaves and the
        // matching geometric bound on total nodes (P4 shows total nodes can
        // exceed 3^k itself: 4 nodes, 3 leaves, one internal edge).
        for g in [
            triangle_with_pendant(),
            MarkedGraph::unweighted(4, vec![(0, 1), (1, 2), (2, 3)]),
        ] {
            let (tree, _) = dnc_expand_with_tree(&g).unwrap();
            let internal = g.internal_edge_ids().len() as u32;
            assert!(tree.leaves().len() <= 3usize.pow(internal));
            assert!(tree.node_count() <= (3usize.pow(internal + 1) - 1) / 2);
            check(&tree);
        }
        fn check(t: &DncTree) {
            if let DncTree::Node { graph, children, .. } = t {
                let own = graph.internal_edge_ids().len();
                for c in children.iter() {
                    assert!(c.graph().internal_edge_ids().len() < own);
                    check(c);
                }
            }
        }
    }
}
