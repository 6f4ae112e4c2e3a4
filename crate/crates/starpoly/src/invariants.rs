//! The polynomial invariant engines.
//!
//! The M-polynomial of a marked graph is computed by three independent
//! routes: the deletion-contraction recursion, the states model
//! `M = Σ_{A ⊆ E} z_{λ(G,m,A)} (y-1)^{|A|-r(A)}`, and the bond-lattice sum
//! over connected vertex partitions weighted by Tutte evaluations at
//! `(1, y)`. The W-polynomial is the dot-forgetting image of M, the
//! D-polynomial its undotting (computed through the core), and the
//! V-polynomial is the generic-semigroup generalization with exact rational
//! edge weights.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeId, MarkedGraph, VertexId};
use crate::mark::Mark;
use crate::symfunc::SUBSET_BUDGET;
use crate::util::{binomial, subsets_budget};
use crate::zpoly::{undot, ZMonomial, ZPoly};

/// Budget for the bond-lattice engine (set-partition enumeration).
pub const BOND_BUDGET: usize = 9;

// ---- M-polynomial -----------------------------------------------------------

/// M-polynomial via the states model when the edge count permits, falling
/// back to the deletion-contraction recursion.
pub fn m_poly(g: &MarkedGraph) -> ZPoly {
    if g.num_edges() <= SUBSET_BUDGET {
        m_poly_states(g).expect("within budget")
    } else {
        m_poly_dc(g)
    }
}

/// M-polynomial by the defining deletion-contraction recursion:
/// isolated vertices give the product of their variables, a loop multiplies
/// by `y`, and a non-loop edge splits as delete + contract. Forest nodes are
/// memoized on their canonical form.
pub fn m_poly_dc(g: &MarkedGraph) -> ZPoly {
    let mut memo = HashMap::new();
    m_dc_rec(g, &|g| g.edges().iter().map(|e| e.id).min(), &mut memo)
}

/// Deletion-contraction with an explicit edge priority: at every step the
/// surviving edge earliest in `priority` is processed first. The result is
/// independent of the order; tests exercise exactly that.
pub fn m_poly_dc_with_order(g: &MarkedGraph, priority: &[EdgeId]) -> ZPoly {
    let rank: BTreeMap<EdgeId, usize> =
        priority.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let pick = move |g: &MarkedGraph| {
        g.edges()
            .iter()
            .map(|e| e.id)
            .min_by_key(|id| rank.get(id).copied().unwrap_or(usize::MAX))
    };
    let mut memo = HashMap::new();
    m_dc_rec(g, &pick, &mut memo)
}

fn m_dc_rec(
    g: &MarkedGraph,
    pick: &impl Fn(&MarkedGraph) -> Option<EdgeId>,
    memo: &mut HashMap<String, ZPoly>,
) -> ZPoly {
    let e = match pick(g) {
        None => {
            let marks: Vec<Mark> = g.vertices().map(|(_, m)| m).collect();
            return ZPoly::from_marks(&marks);
        }
        Some(e) => e,
    };
    let key = if g.is_forest() {
        let k = canonical_form(g).expect("forest");
        if let Some(p) = memo.get(&k) {
            return p.clone();
        }
        Some(k)
    } else {
        None
    };
    let edge = *g.edge(e).expect("picked edge exists");
    let result = if edge.is_loop() {
        m_dc_rec(&g.delete_edge(e).unwrap(), pick, memo).mul_y()
    } else {
        let del = m_dc_rec(&g.delete_edge(e).unwrap(), pick, memo);
        let con = m_dc_rec(&g.contract_edge(e).unwrap(), pick, memo);
        del.add(&con)
    };
    if let Some(k) = key {
        memo.insert(k, result.clone());
    }
    result
}

/// M-polynomial by the states model `Σ_A z_{λ(G,m,A)} (y-1)^{|A|-r(A)}`.
pub fn m_poly_states(g: &MarkedGraph) -> Result<ZPoly> {
    subsets_budget(g.num_edges(), SUBSET_BUDGET)?;
    let ids: Vec<EdgeId> = g.edges().iter().map(|e| e.id).collect();
    let mut out = ZPoly::zero();
    let mut subset = Vec::with_capacity(ids.len());
    for mask in 0u64..(1u64 << ids.len()) {
        subset.clear();
        for (i, &id) in ids.iter().enumerate() {
            if mask >> i & 1 == 1 {
                subset.push(id);
            }
        }
        let (partition, a, r) = g.spanning_partition(&subset)?;
        let base = ZMonomial::from_marks(partition.marks());
        // (y - 1)^(a - r) expanded binomially.
        let k = (a - r) as u64;
        for j in 0..=k {
            let sign = if (k - j) % 2 == 0 {
                BigInt::one()
            } else {
                -BigInt::one()
            };
            let mut m = base.clone();
            m = m.mul(&ZMonomial::y(j as u32));
            out.add_term(m, sign * binomial(k, j));
        }
    }
    Ok(out)
}

/// M-polynomial by the bond-lattice representation: the sum over connected
/// vertex partitions π of `Π_i z_{m(V_i)} · Π_i T_{G[V_i]}(1, y)`.
pub fn m_poly_bond(g: &MarkedGraph) -> Result<ZPoly> {
    if g.n() > BOND_BUDGET {
        return Err(Error::BudgetExceeded {
            what: "vertices",
            actual: g.n(),
            limit: BOND_BUDGET,
        });
    }
    let verts: Vec<VertexId> = g.vertex_ids().collect();
    let mut out = ZPoly::zero();
    let mut blocks: Vec<Vec<VertexId>> = Vec::new();
    partition_rec(g, &verts, 0, &mut blocks, &mut out)?;
    Ok(out)
}

fn partition_rec(
    g: &MarkedGraph,
    verts: &[VertexId],
    i: usize,
    blocks: &mut Vec<Vec<VertexId>>,
    out: &mut ZPoly,
) -> Result<()> {
    if i == verts.len() {
        let mut term = ZPoly::one();
        for block in blocks.iter() {
            let sub = g.induced(block);
            if sub.component_count() != 1 {
                return Ok(());
            }
            let total = block
                .iter()
                .map(|v| g.mark(*v).unwrap())
                .reduce(Mark::dot_sum)
                .expect("non-empty block");
            term = term.mul(&ZPoly::var(total));
            term = term.mul(&tutte_at_1y(&sub)?);
        }
        *out = out.add(&term);
        return Ok(());
    }
    for b in 0..blocks.len() {
        blocks[b].push(verts[i]);
        partition_rec(g, verts, i + 1, blocks, out)?;
        blocks[b].pop();
    }
    blocks.push(vec![verts[i]]);
    partition_rec(g, verts, i + 1, blocks, out)?;
    blocks.pop();
    Ok(())
}

/// `T_G(1, y)` for connected G, as a polynomial in `y`: the subset-sum
/// definition keeps only spanning-connected A, giving
/// `Σ_{A: r(A) = r(E)} (y-1)^{|A| - r(A)}`.
fn tutte_at_1y(g: &MarkedGraph) -> Result<ZPoly> {
    subsets_budget(g.num_edges(), SUBSET_BUDGET)?;
    let ids: Vec<EdgeId> = g.edges().iter().map(|e| e.id).collect();
    let full_rank = g.n() - g.component_count();
    let mut out = ZPoly::zero();
    let mut subset = Vec::with_capacity(ids.len());
    for mask in 0u64..(1u64 << ids.len()) {
        subset.clear();
        for (i, &id) in ids.iter().enumerate() {
            if mask >> i & 1 == 1 {
                subset.push(id);
            }
        }
        let comps = g.components_of(&subset)?.len();
        let rank = g.n() - comps;
        if rank != full_rank {
            continue;
        }
        let k = (subset.len() - rank) as u64;
        for j in 0..=k {
            let sign = if (k - j) % 2 == 0 {
                BigInt::one()
            } else {
                -BigInt::one()
            };
            out.add_term(ZMonomial::y(j as u32), sign * binomial(k, j));
        }
    }
    Ok(out)
}

// ---- W-polynomial -----------------------------------------------------------

/// W-polynomial of a weighted graph: the dot-forgetting image of the
/// M-polynomial of its marked version. Rejects dotted input.
pub fn w_poly(g: &MarkedGraph) -> Result<ZPoly> {
    if !g.is_weighted_only() {
        return Err(Error::DottedMark);
    }
    Ok(crate::zpoly::forget_dots(&m_poly(g)))
}

// ---- D-polynomial -----------------------------------------------------------

/// D-polynomial: the undotting substitution applied to the M-polynomial.
/// Computed through the core, which leaves the value unchanged and avoids
/// the cancellations the absorbable leaves would cause.
pub fn d_poly(g: &MarkedGraph) -> ZPoly {
    undot(&m_poly(&g.core()))
}

/// For strictly weighted graphs the W-polynomial has no `z_1` and equals the
/// D-polynomial with `z_1` killed. Rejects non-strict or dotted input.
pub fn w_from_d(g: &MarkedGraph) -> Result<ZPoly> {
    if !g.is_weighted_only() {
        return Err(Error::DottedMark);
    }
    if !g.is_strictly_marked() {
        return Err(Error::NotStrict);
    }
    Ok(crate::zpoly::kill_z1(&d_poly(g)))
}

// ---- V-polynomial -----------------------------------------------------------

/// A commutative semigroup whose elements can key polynomial variables.
pub trait Semigroup {
    type Elem: Clone + Ord + fmt::Debug;
    fn combine(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Text key for the variable `z_s`.
    fn var_key(&self, a: &Self::Elem) -> String;
}

/// Positive integers under addition (plain weights).
pub struct WeightAdd;

impl Semigroup for WeightAdd {
    type Elem = u64;
    fn combine(&self, a: &u64, b: &u64) -> u64 {
        a + b
    }
    fn var_key(&self, a: &u64) -> String {
        format!("z[{a}]")
    }
}

/// Marks under dot-sum.
pub struct MarkDotSum;

impl Semigroup for MarkDotSum {
    type Elem = Mark;
    fn combine(&self, a: &Mark, b: &Mark) -> Mark {
        a.dot_sum(*b)
    }
    fn var_key(&self, a: &Mark) -> String {
        if a.d() == 0 {
            format!("z[{}]", a.w())
        } else {
            format!("z[{},{}]", a.w(), a.d())
        }
    }
}

/// Spot-check commutativity and associativity on sampled triples.
pub fn check_semigroup_laws<S: Semigroup>(semi: &S, samples: &[S::Elem]) -> bool {
    for a in samples {
        for b in samples {
            if semi.combine(a, b) != semi.combine(b, a) {
                return false;
            }
            for c in samples {
                let ab_c = semi.combine(&semi.combine(a, b), c);
                let a_bc = semi.combine(a, &semi.combine(b, c));
                if ab_c != a_bc {
                    return false;
                }
            }
        }
    }
    true
}

/// Exact rational edge weights, one per edge.
pub type EdgeWeights = BTreeMap<EdgeId, BigRational>;

/// Uniform edge weights.
pub fn uniform_gamma(g: &MarkedGraph, value: BigRational) -> EdgeWeights {
    g.edges().iter().map(|e| (e.id, value.clone())).collect()
}

/// An S-weighted graph: the underlying multigraph of a [`MarkedGraph`] with
/// semigroup elements on the vertices.
#[derive(Clone, Debug)]
pub struct SGraph<E> {
    verts: BTreeMap<VertexId, E>,
    edges: Vec<Edge>,
}

impl<E: Clone + Ord + fmt::Debug> SGraph<E> {
    /// Relabel a marked graph's vertices through `f`.
    pub fn from_marked(g: &MarkedGraph, f: impl Fn(Mark) -> E) -> SGraph<E> {
        SGraph {
            verts: g.vertices().map(|(v, m)| (v, f(m))).collect(),
            edges: g.edges().to_vec(),
        }
    }

    fn delete(&self, id: EdgeId) -> SGraph<E> {
        let mut g = self.clone();
        g.edges.retain(|e| e.id != id);
        g
    }

    fn contract<S: Semigroup<Elem = E>>(&self, semi: &S, id: EdgeId) -> SGraph<E> {
        let edge = *self.edges.iter().find(|e| e.id == id).expect("edge exists");
        assert!(!edge.is_loop(), "loop contraction");
        let (keep, gone) = (edge.u.min(edge.v), edge.u.max(edge.v));
        let mut g = self.clone();
        let a = g.verts.remove(&keep).unwrap();
        let b = g.verts.remove(&gone).unwrap();
        g.verts.insert(keep, semi.combine(&a, &b));
        g.edges.retain(|e| e.id != id);
        for e in &mut g.edges {
            if e.u == gone {
                e.u = keep;
            }
            if e.v == gone {
                e.v = keep;
            }
        }
        g
    }

    /// Sorted multiset of total component weights of the spanning subgraph.
    fn partition_of<S: Semigroup<Elem = E>>(&self, semi: &S, subset: &[EdgeId]) -> Vec<E> {
        let mut ids: Vec<VertexId> = self.verts.keys().copied().collect();
        ids.sort_unstable();
        let index: BTreeMap<VertexId, usize> =
            ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut parent: Vec<usize> = (0..ids.len()).collect();
        fn find(parent: &mut Vec<usize>, i: usize) -> usize {
            if parent[i] != i {
                let r = find(parent, parent[i]);
                parent[i] = r;
            }
            parent[i]
        }
        for e in &self.edges {
            if subset.contains(&e.id) {
                let (a, b) = (find(&mut parent, index[&e.u]), find(&mut parent, index[&e.v]));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut groups: BTreeMap<usize, E> = BTreeMap::new();
        for (i, v) in ids.iter().enumerate() {
            let r = find(&mut parent, i);
            let w = self.verts[v].clone();
            groups
                .entry(r)
                .and_modify(|acc| *acc = semi.combine(acc, &w))
                .or_insert(w);
        }
        let mut parts: Vec<E> = groups.into_values().collect();
        parts.sort_unstable();
        parts
    }
}

/// Polynomial over the variables `z_s`, `s` in the semigroup, with exact
/// rational coefficients. Keys are sorted multisets of elements.
pub type VPoly<E> = BTreeMap<Vec<E>, BigRational>;

fn vpoly_add_term<E: Ord>(p: &mut VPoly<E>, key: Vec<E>, c: BigRational) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match p.entry(key) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

fn vpoly_scale_add<E: Clone + Ord>(acc: &mut VPoly<E>, p: &VPoly<E>, k: &BigRational) {
    for (key, c) in p {
        vpoly_add_term(acc, key.clone(), c * k);
    }
}

/// V-polynomial by its states model: `Σ_{A ⊆ E} z_{λ(G,s,A)} Π_{e ∈ A} γ_e`.
pub fn v_poly_states<S: Semigroup>(
    g: &SGraph<S::Elem>,
    semi: &S,
    gamma: &EdgeWeights,
) -> Result<VPoly<S::Elem>> {
    subsets_budget(g.edges.len(), SUBSET_BUDGET)?;
    for e in &g.edges {
        if !gamma.contains_key(&e.id) {
            return Err(Error::InvalidInput(format!("missing gamma for edge {}", e.id)));
        }
    }
    let ids: Vec<EdgeId> = g.edges.iter().map(|e| e.id).collect();
    let mut out = VPoly::new();
    let mut subset = Vec::with_capacity(ids.len());
    for mask in 0u64..(1u64 << ids.len()) {
        subset.clear();
        let mut weight = BigRational::one();
        for (i, &id) in ids.iter().enumerate() {
            if mask >> i & 1 == 1 {
                subset.push(id);
                weight *= &gamma[&id];
            }
        }
        let key = g.partition_of(semi, &subset);
        vpoly_add_term(&mut out, key, weight);
    }
    Ok(out)
}

/// V-polynomial by its defining rules: isolated vertices give the product of
/// their variables, a loop multiplies by `γ_e + 1`, and a non-loop edge
/// splits as `V(G\e) + γ_e V(G/e)`. Must agree with the states model.
pub fn v_poly_dc<S: Semigroup>(
    g: &SGraph<S::Elem>,
    semi: &S,
    gamma: &EdgeWeights,
) -> Result<VPoly<S::Elem>> {
    for e in &g.edges {
        if !gamma.contains_key(&e.id) {
            return Err(Error::InvalidInput(format!("missing gamma for edge {}", e.id)));
        }
    }
    Ok(v_dc_rec(g, semi, gamma))
}

fn v_dc_rec<S: Semigroup>(g: &SGraph<S::Elem>, semi: &S, gamma: &EdgeWeights) -> VPoly<S::Elem> {
    let e = match g.edges.iter().map(|e| e.id).min() {
        None => {
            let mut key: Vec<S::Elem> = g.verts.values().cloned().collect();
            key.sort_unstable();
            let mut out = VPoly::new();
            vpoly_add_term(&mut out, key, BigRational::one());
            return out;
        }
        Some(e) => e,
    };
    let edge = *g.edges.iter().find(|x| x.id == e).unwrap();
    if edge.is_loop() {
        let rest = v_dc_rec(&g.delete(e), semi, gamma);
        let mut out = VPoly::new();
        vpoly_scale_add(&mut out, &rest, &(&gamma[&e] + BigRational::one()));
        out
    } else {
        let mut out = v_dc_rec(&g.delete(e), semi, gamma);
        let con = v_dc_rec(&g.contract(semi, e), semi, gamma);
        vpoly_scale_add(&mut out, &con, &gamma[&e]);
        out
    }
}

/// The recipe recursion: `f(G) = α_e f(G\e) + β_e f(G/e)` on non-loop edges,
/// `f(G) = (α_e + β_e) f(G\e)` on loops, products of variables on edgeless
/// graphs. Satisfies `f = (Π_e α_e) · V(γ_e = β_e / α_e)`.
pub fn recipe_recursion<S: Semigroup>(
    g: &SGraph<S::Elem>,
    semi: &S,
    alpha: &EdgeWeights,
    beta: &EdgeWeights,
) -> Result<VPoly<S::Elem>> {
    for e in &g.edges {
        match alpha.get(&e.id) {
            None => {
                return Err(Error::InvalidInput(format!("missing alpha for edge {}", e.id)))
            }
            Some(a) if a.is_zero() => {
                return Err(Error::InvalidInput(format!("alpha must be nonzero on edge {}", e.id)))
            }
            _ => {}
        }
        if !beta.contains_key(&e.id) {
            return Err(Error::InvalidInput(format!("missing beta for edge {}", e.id)));
        }
    }
    Ok(recipe_rec(g, semi, alpha, beta))
}

fn recipe_rec<S: Semigroup>(
    g: &SGraph<S::Elem>,
    semi: &S,
    alpha: &EdgeWeights,
    beta: &EdgeWeights,
) -> VPoly<S::Elem> {
    let e = match g.edges.iter().map(|e| e.id).min() {
        None => {
            let mut key: Vec<S::Elem> = g.verts.values().cloned().collect();
            key.sort_unstable();
            let mut out = VPoly::new();
            vpoly_add_term(&mut out, key, BigRational::one());
            return out;
        }
        Some(e) => e,
    };
    let edge = *g.edges.iter().find(|x| x.id == e).unwrap();
    let mut out = VPoly::new();
    if edge.is_loop() {
        let rest = recipe_rec(&g.delete(e), semi, alpha, beta);
        vpoly_scale_add(&mut out, &rest, &(&alpha[&e] + &beta[&e]));
    } else {
        let del = recipe_rec(&g.delete(e), semi, alpha, beta);
        vpoly_scale_add(&mut out, &del, &alpha[&e]);
        let con = recipe_rec(&g.contract(semi, e), semi, alpha, beta);
        vpoly_scale_add(&mut out, &con, &beta[&e]);
    }
    out
}

/// Render a V-polynomial with a semigroup's variable keys, in a canonical
/// order (degree descending, then key text).
pub fn vpoly_to_string<S: Semigroup>(p: &VPoly<S::Elem>, semi: &S) -> String {
    if p.is_empty() {
        return "0".to_string();
    }
    let mut items: Vec<(usize, String, BigRational)> = p
        .iter()
        .map(|(key, c)| {
            let name = if key.is_empty() {
                "1".to_string()
            } else {
                key.iter().map(|e| semi.var_key(e)).collect::<Vec<_>>().join("*")
            };
            (key.len(), name, c.clone())
        })
        .collect();
    items.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    let mut out = String::new();
    for (i, (_, name, c)) in items.iter().enumerate() {
        let neg = c < &BigRational::zero();
        let mag = if neg { -c.clone() } else { c.clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&format!("{mag}*{name}"));
    }
    out
}

/// Evaluate a ZPoly at a rational `y`, grouping by z-monomial.
pub fn eval_y_rational(p: &ZPoly, y: &BigRational) -> BTreeMap<Vec<Mark>, BigRational> {
    let mut out: BTreeMap<Vec<Mark>, BigRational> = BTreeMap::new();
    for (m, c) in p.terms() {
        let mut factor = BigRational::from(c.clone());
        for _ in 0..m.y_exp() {
            factor *= y;
        }
        let mut key = m.expanded_marks();
        key.sort_unstable();
        let entry = out.entry(key).or_insert_with(BigRational::zero);
        *entry += factor;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mark::mk;

    fn marked_triangle() -> MarkedGraph {
        MarkedGraph::from_parts(
            vec![(0, mk(4, 1)), (1, mk(1, 0)), (2, mk(2, 0))],
            vec![(0, 1), (1, 2), (2, 0)],
        )
        .unwrap()
    }

    /// The golden value from the worked triangle computation:
    /// z20*z41*z10 + z41*z31 + z10*z62 + z52*z20 + (2+y)*z73.
    fn triangle_m_expected() -> ZPoly {
        let t = |marks: &[(u32, u32)]| {
            ZPoly::from_marks(&marks.iter().map(|&(w, d)| mk(w, d)).collect::<Vec<_>>())
        };
        t(&[(2, 0), (4, 1), (1, 0)])
            .add(&t(&[(4, 1), (3, 1)]))
            .add(&t(&[(1, 0), (6, 2)]))
            .add(&t(&[(5, 2), (2, 0)]))
            .add(&t(&[(7, 3)]).scale(&BigInt::from(2)))
            .add(&t(&[(7, 3)]).mul_y())
    }

    #[test]
    fn triangle_m_all_engines() {
        let g = marked_triangle();
        let expect = triangle_m_expected();
        assert_eq!(m_poly_dc(&g), expect);
        assert_eq!(m_poly_states(&g).unwrap(), expect);
        assert_eq!(m_poly_bond(&g).unwrap(), expect);
    }

    #[test]
    fn isolated_vertices_product() {
        let g = MarkedGraph::from_parts(vec![(0, mk(4, 1)), (1, mk(2, 0))], vec![]).unwrap();
        let expect = ZPoly::from_marks(&[mk(4, 1), mk(2, 0)]);
        assert_eq!(m_poly_dc(&g), expect);
        assert_eq!(m_poly_bond(&g).unwrap(), expect);
    }

    #[test]
    fn weighted_path_states_model() {
        let g = MarkedGraph::weighted_path(&[4, 1, 2]).unwrap();
        let t = |marks: &[(u32, u32)]| {
            ZPoly::from_marks(&marks.iter().map(|&(w, d)| mk(w, d)).collect::<Vec<_>>())
        };
        let expect = t(&[(4, 0), (1, 0), (2, 0)])
            .add(&t(&[(4, 0), (3, 1)]))
            .add(&t(&[(5, 1), (2, 0)]))
            .add(&t(&[(7, 2)]));
        assert_eq!(m_poly_states(&g).unwrap(), expect);
        // Forests never see y.
        assert!(expect.terms().all(|(m, _)| m.y_exp() == 0));
        // Agreement with the bond lattice, term for term.
        assert_eq!(m_poly_bond(&g).unwrap(), expect);
    }

    #[test]
    fn loop_rule_agrees_with_states() {
        let g = MarkedGraph::from_parts(vec![(0, mk(3, 1))], vec![(0, 0)]).unwrap();
        let expect = ZPoly::var(mk(3, 1)).mul_y();
        assert_eq!(m_poly_dc(&g), expect);
        assert_eq!(m_poly_states(&g).unwrap(), expect);
    }

    #[test]
    fn multiplicative_over_components() {
        let a = marked_triangle();
        let b = MarkedGraph::weighted_path(&[2, 3]).unwrap();
        let both = a.disjoint_union(&b);
        assert_eq!(m_poly(&both), m_poly(&a).mul(&m_poly(&b)));
    }

    #[test]
    fn y0_collapses_parallel_edges() {
        // At y = 0 the M-polynomial cannot see parallel multiplicities.
        // (A loop is different: it forces a factor of y, so a loopy graph
        // vanishes at y = 0 while its simplification does not.)
        let g = MarkedGraph::from_parts(
            vec![(0, mk(2, 0)), (1, mk(3, 1)), (2, mk(1, 0))],
            vec![(0, 1), (0, 1), (1, 2), (0, 1)],
        )
        .unwrap();
        assert_eq!(m_poly(&g).eval_y(0), m_poly(&g.simplify()).eval_y(0));
        let loopy = MarkedGraph::from_parts(vec![(0, mk(2, 0))], vec![(0, 0)]).unwrap();
        assert!(m_poly(&loopy).eval_y(0).is_zero());
    }

    #[test]
    fn deletion_near_contraction_three_term() {
        let g = marked_triangle();
        for e in g.edges().to_vec() {
            let (ncon, pendant) = g.near_contract(e.id).unwrap();
            let lhs = m_poly(&g);
            let rhs = m_poly(&g.delete_edge(e.id).unwrap())
                .sub(&m_poly(&ncon.delete_edge(pendant).unwrap()))
                .add(&m_poly(&ncon));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn w_poly_golden_path() {
        let g = MarkedGraph::weighted_path(&[4, 1, 2]).unwrap();
        let w = w_poly(&g).unwrap();
        let z = ZPoly::zw;
        let expect = z(4)
            .mul(&z(1))
            .mul(&z(2))
            .add(&z(4).mul(&z(3)))
            .add(&z(5).mul(&z(2)))
            .add(&z(7));
        assert_eq!(w, expect);
    }

    #[test]
    fn w_poly_rejects_dots() {
        let g = MarkedGraph::from_parts(vec![(0, mk(3, 1))], vec![]).unwrap();
        assert!(w_poly(&g).is_err());
    }

    #[test]
    fn loebl_pair_same_w() {
        let a = MarkedGraph::weighted_path(&[2, 1, 2, 3, 1]).unwrap();
        let b = MarkedGraph::weighted_path(&[2, 3, 1, 2, 1]).unwrap();
        assert_eq!(w_poly(&a).unwrap(), w_poly(&b).unwrap());
        assert!(!crate::canon::mark_isomorphic(&a, &b).unwrap());
    }

    #[test]
    fn forest_w_coefficients_count_edge_sets() {
        let g = MarkedGraph::weighted_path(&[4, 1, 2]).unwrap();
        let w = w_poly(&g).unwrap();
        // Coefficient of z4*z3 counts A with partition {4,3}: exactly {e1}.
        let m = ZMonomial::from_marks(&[mk(4, 0), mk(3, 0)]);
        assert_eq!(w.coeff(&m), BigInt::one());
    }

    #[test]
    fn d_poly_of_spider_and_core_theorem() {
        let core = MarkedGraph::weighted_path(&[4, 3, 2]).unwrap();
        let spider = core.uncore().unwrap();
        let z = ZPoly::zw;
        let expect = z(4)
            .mul(&z(3))
            .mul(&z(2))
            .add(&z(5).mul(&z(4)))
            .sub(&z(4).mul(&z(4)).mul(&z(1)))
            .add(&z(7).mul(&z(2)))
            .sub(&z(6).mul(&z(2)).mul(&z(1)))
            .add(&z(9))
            .sub(&z(8).mul(&z(1)).scale(&BigInt::from(2)))
            .add(&z(7).mul(&z(1)).mul(&z(1)));
        assert_eq!(d_poly(&spider), expect);
        // The core theorem: computing through the core changes nothing.
        assert_eq!(undot(&m_poly(&spider)), expect);
    }

    #[test]
    fn d_satisfies_deletion_contraction_and_dnc() {
        let g = marked_triangle();
        for e in g.edges().to_vec() {
            let d = |h: &MarkedGraph| undot(&m_poly(h));
            let lhs = d(&g);
            assert_eq!(
                lhs,
                d(&g.delete_edge(e.id).unwrap()).add(&d(&g.contract_edge(e.id).unwrap()))
            );
            let (ncon, pendant) = g.near_contract(e.id).unwrap();
            assert_eq!(
                lhs,
                d(&g.delete_edge(e.id).unwrap())
                    .sub(&d(&ncon.delete_edge(pendant).unwrap()))
                    .add(&d(&ncon))
            );
        }
    }

    #[test]
    fn w_from_d_on_strict_graphs() {
        for weights in [&[4u32, 3, 2][..], &[2, 2], &[5, 2, 3, 4]] {
            let g = MarkedGraph::weighted_path(weights).unwrap();
            assert_eq!(w_from_d(&g).unwrap(), w_poly(&g).unwrap());
        }
        let star = MarkedGraph::weighted(&[3, 2, 4, 5], vec![(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(w_from_d(&star).unwrap(), w_poly(&star).unwrap());
        let nonstrict = MarkedGraph::weighted_path(&[4, 1, 2]).unwrap();
        assert!(w_from_d(&nonstrict).is_err());
    }

    #[test]
    fn v_poly_routes_agree() {
        let g = marked_triangle();
        let sg = SGraph::from_marked(&g, |m| m);
        let semi = MarkDotSum;
        let gamma = uniform_gamma(&g, BigRational::from(BigInt::from(3)));
        assert_eq!(
            v_poly_states(&sg, &semi, &gamma).unwrap(),
            v_poly_dc(&sg, &semi, &gamma).unwrap()
        );
    }

    #[test]
    fn v_poly_edgeless() {
        let g = MarkedGraph::from_parts(vec![(0, mk(2, 0)), (1, mk(5, 1))], vec![]).unwrap();
        let sg = SGraph::from_marked(&g, |m| m);
        let v = v_poly_states(&sg, &MarkDotSum, &EdgeWeights::new()).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[&vec![mk(2, 0), mk(5, 1)]], BigRational::one());
    }

    #[test]
    fn v_specializes_to_m() {
        // M(z, y) = (y-1)^{-|V|} V((y-1) z, gamma = y-1), checked at numeric y.
        let g = marked_triangle();
        let sg = SGraph::from_marked(&g, |m| m);
        let m = m_poly(&g);
        for y_num in [3i64, -1, 7] {
            let y = BigRational::from(BigInt::from(y_num));
            let gamma = uniform_gamma(&g, &y - BigRational::one());
            let v = v_poly_states(&sg, &MarkDotSum, &gamma).unwrap();
            let m_at_y = eval_y_rational(&m, &y);
            // For each partition key: V_coeff * (y-1)^len == (y-1)^{|V|} * M_coeff.
            let ym1 = &y - BigRational::one();
            let mut keys: Vec<Vec<Mark>> = v.keys().cloned().collect();
            keys.extend(m_at_y.keys().cloned());
            keys.sort();
            keys.dedup();
            for key in keys {
                let vl = v.get(&key).cloned().unwrap_or_else(BigRational::zero);
                let ml = m_at_y.get(&key).cloned().unwrap_or_else(BigRational::zero);
                let mut lhs = vl;
                for _ in 0..key.len() {
                    lhs *= &ym1;
                }
                let mut rhs = ml;
                for _ in 0..g.n() {
                    rhs *= &ym1;
                }
                assert_eq!(lhs, rhs, "key {key:?} at y={y_num}");
            }
        }
    }

    #[test]
    fn recipe_identity() {
        let g = MarkedGraph::unweighted(4, vec![(0, 1), (1, 2), (2, 0), (2, 3), (0, 0)]);
        let sg = SGraph::from_marked(&g, |m| m.w() as u64);
        let semi = WeightAdd;
        let rat = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        let alpha: EdgeWeights = g
            .edges()
            .iter()
            .enumerate()
            .map(|(i, e)| (e.id, rat(2 + i as i64, 3)))
            .collect();
        let beta: EdgeWeights = g
            .edges()
            .iter()
            .enumerate()
            .map(|(i, e)| (e.id, rat(1 - 2 * i as i64, 5)))
            .collect();
        let f = recipe_recursion(&sg, &semi, &alpha, &beta).unwrap();
        let gamma: EdgeWeights = alpha
            .iter()
            .map(|(&e, a)| (e, &beta[&e] / a))
            .collect();
        let v = v_poly_states(&sg, &semi, &gamma).unwrap();
        let scale: BigRational = alpha.values().product();
        let mut expect = VPoly::new();
        vpoly_scale_add(&mut expect, &v, &scale);
        assert_eq!(f, expect);
    }

    #[test]
    fn order_independence_sample() {
        let g = marked_triangle();
        let ids: Vec<EdgeId> = g.edges().iter().map(|e| e.id).collect();
        let base = m_poly_dc(&g);
        // All 6 permutations of the 3 edges.
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        for p in perms {
            let priority: Vec<EdgeId> = p.iter().map(|&i| ids[i]).collect();
            assert_eq!(m_poly_dc_with_order(&g, &priority), base);
        }
    }

    #[test]
    fn semigroup_laws_hold() {
        assert!(check_semigroup_laws(&WeightAdd, &[1, 2, 3, 7]));
        assert!(check_semigroup_laws(
            &MarkDotSum,
            &[mk(1, 0), mk(2, 0), mk(4, 1), mk(5, 3)]
        ));
    }
}
