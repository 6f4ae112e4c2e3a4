//! Exhaustive generation of small instances: free trees (one per
//! isomorphism class), proper trees of diameter at most 5, and unlabeled
//! simple graphs on few vertices.
//!
//! Rooted trees come from the canonical level-sequence successor algorithm
//! (constant amortized time per tree); free trees are the rooted trees whose
//! root is the canonical centroid. Small general graphs are canonicalized by
//! minimizing the adjacency bitmask over all vertex permutations, which is
//! only ever used for n <= 8.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::graph::{MarkedGraph, VertexId};
use crate::mark::Mark;
use crate::partition::partitions_with;

/// Cap on free-tree enumeration size.
pub const FREE_TREE_CAP: u32 = 14;

// ---- Rooted trees by canonical level sequences ------------------------------

/// Iterator over canonical level sequences of rooted trees on `n` vertices
/// (root depth 0), in decreasing lexicographic order.
pub struct LevelSequences {
    next: Option<Vec<u32>>,
}

impl LevelSequences {
    pub fn new(n: u32) -> LevelSequences {
        LevelSequences {
            next: if n == 0 { None } else { Some((0..n).collect()) },
        }
    }
}

impl Iterator for LevelSequences {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let cur = self.next.take()?;
        // Successor: truncate at the last entry of depth >= 2 and tile the
        // tail with the block that starts at that entry's parent.
        let n = cur.len();
        if let Some(p) = (0..n).rev().find(|&i| cur[i] >= 2) {
            let q = (0..p).rev().find(|&i| cur[i] == cur[p] - 1).expect("parent exists");
            let mut next = Vec::with_capacity(n);
            next.extend_from_slice(&cur[..p]);
            while next.len() < n {
                let src = q + (next.len() - p) % (p - q);
                let d = next[src];
                next.push(d);
            }
            self.next = Some(next);
        }
        Some(cur)
    }
}

/// Unweighted tree from a level sequence, vertices `0..n` in preorder.
pub fn tree_from_level_sequence(seq: &[u32]) -> MarkedGraph {
    let n = seq.len() as u32;
    let mut last_at_depth: Vec<usize> = vec![0; seq.len() + 1];
    let mut edges = Vec::with_capacity(seq.len().saturating_sub(1));
    for (i, &d) in seq.iter().enumerate().skip(1) {
        let parent = last_at_depth[(d - 1) as usize];
        edges.push((parent as VertexId, i as VertexId));
        last_at_depth[d as usize] = i;
    }
    MarkedGraph::unweighted(n, edges)
}

fn tree_adjacency(g: &MarkedGraph) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); g.n()];
    for e in g.edges() {
        adj[e.u as usize].push(e.v as usize);
        adj[e.v as usize].push(e.u as usize);
    }
    adj
}

fn tree_centroids(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    if n == 1 {
        return vec![0];
    }
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![usize::MAX; n];
    let mut stack = vec![0usize];
    let mut seen = vec![false; n];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        order.push(v);
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = v;
                stack.push(w);
            }
        }
    }
    let mut size = vec![1usize; n];
    for &v in order.iter().rev() {
        if parent[v] != usize::MAX {
            size[parent[v]] += size[v];
        }
    }
    let mut best = usize::MAX;
    let mut out = Vec::new();
    for v in 0..n {
        let mut heaviest = n - size[v];
        for &w in &adj[v] {
            if parent[w] == v {
                heaviest = heaviest.max(size[w]);
            }
        }
        match heaviest.cmp(&best) {
            std::cmp::Ordering::Less => {
                best = heaviest;
                out = vec![v];
            }
            std::cmp::Ordering::Equal => out.push(v),
            _ => {}
        }
    }
    out
}

fn rooted_shape_code(adj: &[Vec<usize>], root: usize, parent: usize) -> String {
    let mut kids: Vec<String> = adj[root]
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| rooted_shape_code(adj, w, root))
        .collect();
    kids.sort();
    format!("({})", kids.concat())
}

/// Exactly one unweighted tree per isomorphism class on `n` vertices.
/// Rooted trees stream from the level-sequence successor; a tree is kept
/// when its root is the canonical centroid of its free tree.
pub fn enumerate_free_trees(n: u32) -> Result<Vec<MarkedGraph>> {
    if n > FREE_TREE_CAP {
        return Err(Error::BudgetExceeded {
            what: "tree vertices",
            actual: n as usize,
            limit: FREE_TREE_CAP as usize,
        });
    }
    let mut out = Vec::new();
    for seq in LevelSequences::new(n) {
        let tree = tree_from_level_sequence(&seq);
        let adj = tree_adjacency(&tree);
        let centroids = tree_centroids(&adj);
        let keep = match centroids.as_slice() {
            [c] => *c == 0,
            [c1, c2] => {
                if *c1 != 0 && *c2 != 0 {
                    false
                } else {
                    let other = if *c1 == 0 { *c2 } else { *c1 };
                    // One representative per free tree: the rooting whose
                    // whole-tree code is not smaller than its twin's.
                    rooted_shape_code(&adj, 0, usize::MAX)
                        >= rooted_shape_code(&adj, other, usize::MAX)
                }
            }
            _ => unreachable!(),
        };
        if keep {
            out.push(tree);
        }
    }
    Ok(out)
}

/// Labeled trees on `0..n` from all Prüfer sequences; the independent
/// oracle that free-tree enumeration is validated against.
pub fn labeled_trees_prufer(n: u32) -> Vec<MarkedGraph> {
    if n == 1 {
        return vec![MarkedGraph::unweighted(1, vec![])];
    }
    if n == 2 {
        return vec![MarkedGraph::unweighted(2, vec![(0, 1)])];
    }
    let len = (n - 2) as usize;
    let total = (n as u64).pow(len as u32);
    let mut out = Vec::with_capacity(total as usize);
    for code in 0..total {
        let mut seq = Vec::with_capacity(len);
        let mut c = code;
        for _ in 0..len {
            seq.push((c % n as u64) as u32);
            c /= n as u64;
        }
        let mut degree = vec![1u32; n as usize];
        for &v in &seq {
            degree[v as usize] += 1;
        }
        let mut edges = Vec::with_capacity((n - 1) as usize);
        for &v in &seq {
            let leaf = (0..n).find(|&u| degree[u as usize] == 1).unwrap();
            edges.push((leaf, v));
            degree[leaf as usize] = 0;
            degree[v as usize] -= 1;
        }
        let rest: Vec<u32> = (0..n).filter(|&u| degree[u as usize] == 1).collect();
        edges.push((rest[0], rest[1]));
        out.push(MarkedGraph::unweighted(n, edges));
    }
    out
}

// ---- Tree predicates --------------------------------------------------------

/// Every internal vertex is adjacent to at least one leaf.
pub fn is_proper_tree(g: &MarkedGraph) -> bool {
    if !g.is_forest() || g.component_count() != 1 {
        return false;
    }
    let adj = tree_adjacency(g);
    (0..g.n()).all(|v| adj[v].len() <= 1 || adj[v].iter().any(|&w| adj[w].len() == 1))
}

/// Longest shortest-path length (in edges); 0 for a single vertex.
pub fn diameter(g: &MarkedGraph) -> usize {
    let adj = tree_adjacency(g);
    let n = g.n();
    let mut best = 0;
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        best = best.max(
            dist.iter()
                .filter(|&&d| d != usize::MAX)
                .max()
                .copied()
                .unwrap_or(0),
        );
    }
    best
}

// ---- Proper trees of diameter <= 5 -------------------------------------------

/// Strictly weighted stars and 2-stars of total weight `n`, one per
/// mark-isomorphism class: exactly the cores of proper trees of diameter
/// <= 5 on `n` vertices (plus the single strict vertex).
pub fn enumerate_strict_cores(n: u32) -> Vec<MarkedGraph> {
    let mut out = Vec::new();
    if n >= 2 {
        out.push(MarkedGraph::weighted(&[n], vec![]).unwrap());
    }
    // Single edges {a, b}, a >= b >= 2.
    for b in 2..=n / 2 {
        let a = n - b;
        if a >= b {
            out.push(MarkedGraph::weighted(&[a, b], vec![(0, 1)]).unwrap());
        }
    }
    // Stars: center u >= 2 with k >= 2 leaves, all >= 2.
    for u in 2..n {
        let rest = n - u;
        for k in 2..=(rest / 2) as usize {
            for leaves in partitions_with(rest, k, 2) {
                let mut weights = vec![u];
                weights.extend_from_slice(leaves.parts());
                out.push(MarkedGraph::weighted(&weights, (1..=k as u32).map(|i| (0, i))).unwrap());
            }
        }
    }
    // 2-stars: adjacent centers u0, u1 >= 2, each with >= 1 leaf, all
    // leaves >= 2; sides ordered to kill the swap duplicate.
    for u0 in 2..n {
        for u1 in 2..n.saturating_sub(u0) {
            let rest = n - u0 - u1;
            if rest < 4 {
                continue;
            }
            for s0 in 2..=rest - 2 {
                let s1 = rest - s0;
                for k0 in 1..=(s0 / 2) as usize {
                    for l0 in partitions_with(s0, k0, 2) {
                        for k1 in 1..=(s1 / 2) as usize {
                            for l1 in partitions_with(s1, k1, 2) {
                                let side0 = (u0, l0.parts().to_vec());
                                let side1 = (u1, l1.parts().to_vec());
                                if side0 > side1 {
                                    continue;
                                }
                                let mut weights = vec![u0, u1];
                                weights.extend_from_slice(l0.parts());
                                weights.extend_from_slice(l1.parts());
                                let mut edges = vec![(0u32, 1u32)];
                                let mut next = 2u32;
                                for _ in l0.parts() {
                                    edges.push((0, next));
                                    next += 1;
                                }
                                for _ in l1.parts() {
                                    edges.push((1, next));
                                    next += 1;
                                }
                                out.push(MarkedGraph::weighted(&weights, edges).unwrap());
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Every proper tree of diameter <= 5 on `n` vertices, one per isomorphism
/// class, generated by uncoring the strictly weighted stars and 2-stars of
/// total weight `n`.
pub fn enumerate_proper_diam5(n: u32) -> Result<Vec<MarkedGraph>> {
    if n > FREE_TREE_CAP {
        return Err(Error::BudgetExceeded {
            what: "tree vertices",
            actual: n as usize,
            limit: FREE_TREE_CAP as usize,
        });
    }
    if n == 1 {
        return Ok(vec![MarkedGraph::unweighted(1, vec![])]);
    }
    enumerate_strict_cores(n).iter().map(|core| core.uncore()).collect()
}

// ---- Small general graphs up to isomorphism ----------------------------------

/// Pair index of `(i, j)`, `i < j`, in the packed upper triangle.
fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

/// Minimizes adjacency bitmasks over all vertex permutations of `n <= 8`
/// labeled vertices. A memo/dedupe key for small graphs only; not a general
/// canonicalization facility.
pub struct SmallGraphCanon {
    n: usize,
    tables: Vec<Vec<u8>>,
}

impl SmallGraphCanon {
    pub fn new(n: usize) -> SmallGraphCanon {
        assert!(n <= 8, "bitmask canonicalization is for n <= 8");
        let pairs = n * (n - 1) / 2;
        let mut tables = Vec::new();
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            let mut table = vec![0u8; pairs];
            for j in 1..n {
                for i in 0..j {
                    let (a, b) = (perm[i].min(perm[j]), perm[i].max(perm[j]));
                    table[pair_index(i, j)] = pair_index(a, b) as u8;
                }
            }
            tables.push(table);
            if !next_permutation(&mut perm) {
                break;
            }
        }
        SmallGraphCanon { n, tables }
    }

    pub fn canon(&self, mask: u64) -> u64 {
        let pairs = self.n * (self.n - 1) / 2;
        let mut best = u64::MAX;
        for table in &self.tables {
            let mut im = 0u64;
            for p in 0..pairs {
                if mask >> p & 1 == 1 {
                    im |= 1 << table[p];
                }
            }
            best = best.min(im);
        }
        best
    }

    /// Adjacency mask of a simple graph, vertices taken in sorted-id order.
    pub fn mask_of(g: &MarkedGraph) -> u64 {
        let ids: Vec<VertexId> = g.vertex_ids().collect();
        let index: BTreeMap<VertexId, usize> =
            ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut mask = 0u64;
        for e in g.edges() {
            let (a, b) = (index[&e.u], index[&e.v]);
            let (i, j) = (a.min(b), a.max(b));
            mask |= 1 << pair_index(i, j);
        }
        mask
    }
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

fn mask_to_graph(n: usize, mask: u64) -> MarkedGraph {
    let mut edges = Vec::new();
    for j in 1..n {
        for i in 0..j {
            if mask >> pair_index(i, j) & 1 == 1 {
                edges.push((i as VertexId, j as VertexId));
            }
        }
    }
    MarkedGraph::unweighted(n as u32, edges)
}

/// One representative per isomorphism class of connected simple graphs on
/// exactly `n <= 7` vertices, grown by vertex augmentation from all classes
/// on `n - 1` vertices.
pub fn connected_graph_classes(n: usize) -> Result<Vec<MarkedGraph>> {
    if n > 7 {
        return Err(Error::BudgetExceeded {
            what: "vertices",
            actual: n,
            limit: 7,
        });
    }
    let mut classes: Vec<u64> = vec![0];
    for k in 2..=n {
        let canon = SmallGraphCanon::new(k);
        let mut next: HashSet<u64> = HashSet::new();
        for &mask in &classes {
            for nbrs in 0u64..(1 << (k - 1)) {
                let mut m = mask;
                for i in 0..k - 1 {
                    if nbrs >> i & 1 == 1 {
                        m |= 1 << pair_index(i, k - 1);
                    }
                }
                next.insert(canon.canon(m));
            }
        }
        let mut sorted: Vec<u64> = next.into_iter().collect();
        sorted.sort_unstable();
        classes = sorted;
    }
    Ok(classes
        .into_iter()
        .map(|mask| mask_to_graph(n, mask))
        .filter(|g| g.component_count() == 1)
        .collect())
}

/// Memo key for graphs reachable inside one star-expansion sweep: canonical
/// string for forests, canonical bitmask for small non-forests.
pub fn dnc_memo_key(
    g: &MarkedGraph,
    canon: &mut HashMap<usize, SmallGraphCanon>,
) -> Option<String> {
    if g.is_forest() {
        return Some(format!("F{}", crate::canon::canonical_form(g).expect("forest")));
    }
    if g.n() <= 8 && g.vertices().all(|(_, m)| m == Mark::UNIT) {
        let c = canon.entry(g.n()).or_insert_with(|| SmallGraphCanon::new(g.n()));
        return Some(format!("B{}:{:x}", g.n(), c.canon(SmallGraphCanon::mask_of(g))));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_form;

    #[test]
    fn rooted_tree_counts() {
        // A000081.
        let expect = [1usize, 1, 2, 4, 9, 20, 48, 115, 286];
        for (i, &e) in expect.iter().enumerate() {
            let n = (i + 1) as u32;
            assert_eq!(LevelSequences::new(n).count(), e, "rooted n={n}");
        }
    }

    #[test]
    fn free_tree_counts() {
        // A000055.
        let expect = [1usize, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551];
        for (i, &e) in expect.iter().enumerate() {
            let n = (i + 1) as u32;
            assert_eq!(enumerate_free_trees(n).unwrap().len(), e, "free n={n}");
        }
        assert!(enumerate_free_trees(FREE_TREE_CAP + 1).is_err());
    }

    #[test]
    fn free_trees_match_prufer_oracle() {
        for n in 1u32..=8 {
            let mine: Vec<String> = enumerate_free_trees(n)
                .unwrap()
                .iter()
                .map(|t| canonical_form(t).unwrap())
                .collect();
            let mine_set: HashSet<String> = mine.iter().cloned().collect();
            assert_eq!(mine.len(), mine_set.len(), "no dups n={n}");
            let oracle: HashSet<String> = labeled_trees_prufer(n)
                .iter()
                .map(|t| canonical_form(t).unwrap())
                .collect();
            assert_eq!(mine_set, oracle, "n={n}");
        }
    }

    #[test]
    fn n4_gives_path_and_star() {
        let trees = enumerate_free_trees(4).unwrap();
        assert_eq!(trees.len(), 2);
        let mut max_deg: Vec<usize> = trees
            .iter()
            .map(|t| (0..4).map(|v| t.degree(v)).max().unwrap())
            .collect();
        max_deg.sort_unstable();
        assert_eq!(max_deg, vec![2, 3]);
    }

    #[test]
    fn proper_and_diameter_predicates() {
        let p6 = MarkedGraph::unweighted(6, (1..6).map(|i| (i - 1, i)));
        assert_eq!(diameter(&p6), 5);
        assert!(!is_proper_tree(&p6)); // middle vertices lack leaves
        let star = MarkedGraph::unweighted(5, (1..5).map(|i| (0, i)));
        assert_eq!(diameter(&star), 2);
        assert!(is_proper_tree(&star));
    }

    #[test]
    fn proper_diam5_matches_filtering() {
        for n in 1u32..=10 {
            let trees = enumerate_proper_diam5(n).unwrap();
            let by_cores: HashSet<String> = trees
                .iter()
                .map(|t| canonical_form(t).unwrap())
                .collect();
            assert_eq!(by_cores.len(), trees.len(), "no dups n={n}");
            let by_filter: HashSet<String> = enumerate_free_trees(n)
                .unwrap()
                .iter()
                .filter(|t| is_proper_tree(t) && diameter(t) <= 5)
                .map(|t| canonical_form(t).unwrap())
                .collect();
            assert_eq!(by_cores, by_filter, "n={n}");
        }
    }

    #[test]
    fn every_core_is_star_or_twostar_and_strict() {
        for n in 2u32..=12 {
            for tree in enumerate_proper_diam5(n).unwrap() {
                let core = tree.core();
                assert!(core.is_strictly_marked(), "core strict");
                let s = core.stats();
                let leaves = s.leaves.len();
                let ok = s.n <= 2 || leaves == s.n - 1 || leaves == s.n - 2;
                assert!(ok, "core must be a star or 2-star");
            }
        }
    }

    #[test]
    fn n3_proper_is_just_the_star() {
        let trees = enumerate_proper_diam5(3).unwrap();
        assert_eq!(trees.len(), 1);
        assert_eq!(trees[0].n(), 3);
    }

    #[test]
    fn connected_class_counts() {
        // A001349.
        let expect = [1usize, 1, 2, 6, 21, 112, 853];
        for (i, &e) in expect.iter().enumerate() {
            let n = i + 1;
            assert_eq!(connected_graph_classes(n).unwrap().len(), e, "n={n}");
        }
    }

    #[test]
    fn bitmask_canon_identifies_relabelings() {
        let canon = SmallGraphCanon::new(5);
        let a = MarkedGraph::unweighted(5, vec![(0, 1), (1, 2), (2, 3), (3, 4)]);
        let b = MarkedGraph::unweighted(5, vec![(2, 0), (0, 4), (4, 1), (1, 3)]);
        assert_eq!(
            canon.canon(SmallGraphCanon::mask_of(&a)),
            canon.canon(SmallGraphCanon::mask_of(&b))
        );
        let c = MarkedGraph::unweighted(5, vec![(0, 1), (0, 2), (0, 3), (0, 4)]);
        assert_ne!(
            canon.canon(SmallGraphCanon::mask_of(&a)),
            canon.canon(SmallGraphCanon::mask_of(&c))
        );
    }
}
