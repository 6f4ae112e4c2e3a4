//! Verification campaigns and seeded randomized property batteries, plus
//! the report type the CLI prints as JSON.
//!
//! All randomness flows from one 64-bit seed through ChaCha8; reports are
//! byte-for-byte deterministic for a fixed (inputs, seed) once timings are
//! zeroed through [`RunReport::deterministic_view`].

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, mark_isomorphic};
use crate::enumerate::{
    connected_graph_classes, enumerate_free_trees, enumerate_strict_cores, labeled_trees_prufer,
};
use crate::error::Result;
use crate::graph::{EdgeId, MarkedGraph};
use crate::invariants::{
    d_poly, eval_y_rational, m_poly, m_poly_bond, m_poly_dc, m_poly_dc_with_order, m_poly_states,
    recipe_recursion, uniform_gamma, v_poly_dc, v_poly_states, w_from_d, w_poly, EdgeWeights,
    MarkDotSum, SGraph,
};
use crate::mark::Mark;
use crate::mprime::{m_prime, m_prime_undot_check, MarkOrder};
use crate::partition::IntPartition;
use crate::reconstruct::{star_from_d, star_from_m, stats_from_m, twostar_from_d, twostar_from_m};
use crate::star_expansion::{dnc_expand, dnc_expand_with_choice, default_edge_choice};
use crate::symfunc::{
    chromatic_poly_eval, csf_power, p_to_st, power_to_monomials, st_to_p, weighted_csf, Basis,
    SymFn,
};
use crate::zpoly::{d_bullet, undot, undot_is_cancellation_free, ZPoly};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CheckResult {
    pub id: String,
    pub pass: u64,
    pub fail: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RunReport {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub config: BTreeMap<String, String>,
    pub instances: u64,
    pub checks: Vec<CheckResult>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub collisions: Vec<String>,
    pub timing_ns: BTreeMap<String, u64>,
}

impl RunReport {
    pub fn new(command: &str) -> RunReport {
        RunReport {
            command: command.to_string(),
            seed: None,
            config: BTreeMap::new(),
            instances: 0,
            checks: Vec::new(),
            collisions: Vec::new(),
            timing_ns: BTreeMap::new(),
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.fail == 0) && self.collisions.is_empty()
    }

    /// The report with wall-clock fields zeroed; equal across reruns with
    /// the same seed.
    pub fn deterministic_view(&self) -> RunReport {
        let mut out = self.clone();
        for v in out.timing_ns.values_mut() {
            *v = 0;
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

// ---- Seeded instance generators ----------------------------------------------

pub fn rand_mark(rng: &mut impl Rng, max_w: u32) -> Mark {
    let w = rng.gen_range(1..=max_w);
    let d = rng.gen_range(0..w);
    Mark::new(w, d).expect("d < w")
}

pub fn rand_tree_edges(rng: &mut impl Rng, n: u32) -> Vec<(u32, u32)> {
    (1..n).map(|v| (rng.gen_range(0..v), v)).collect()
}

pub fn rand_weighted_tree(rng: &mut impl Rng, n: u32, max_w: u32) -> MarkedGraph {
    let edges = rand_tree_edges(rng, n);
    let weights: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=max_w)).collect();
    MarkedGraph::weighted(&weights, edges).expect("positive weights")
}

pub fn rand_marked_tree(rng: &mut impl Rng, n: u32, max_w: u32) -> MarkedGraph {
    let edges = rand_tree_edges(rng, n);
    let verts: Vec<(u32, Mark)> = (0..n).map(|v| (v, rand_mark(rng, max_w))).collect();
    MarkedGraph::from_parts(verts, edges).expect("fresh ids")
}

pub fn rand_marked_forest(rng: &mut impl Rng, n: u32, max_w: u32) -> MarkedGraph {
    let tree = rand_marked_tree(rng, n, max_w);
    let mut g = tree;
    for e in g.edges().to_vec() {
        if rng.gen_bool(0.25) {
            g = g.delete_edge(e.id).expect("own edge");
        }
    }
    g
}

/// Multigraph with loops and parallel edges allowed.
pub fn rand_marked_multigraph(
    rng: &mut impl Rng,
    max_n: u32,
    max_e: usize,
    max_w: u32,
) -> MarkedGraph {
    let n = rng.gen_range(1..=max_n);
    let verts: Vec<(u32, Mark)> = (0..n).map(|v| (v, rand_mark(rng, max_w))).collect();
    let mut g = MarkedGraph::from_parts(verts, vec![]).expect("fresh ids");
    let e = rng.gen_range(0..=max_e);
    for _ in 0..e {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        g.add_edge(u, v).expect("in range");
    }
    g
}

pub fn rand_connected_simple(rng: &mut impl Rng, n: u32, extra: usize) -> MarkedGraph {
    let mut g = MarkedGraph::unweighted(n, rand_tree_edges(rng, n));
    for _ in 0..extra {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            let exists = g
                .edges()
                .iter()
                .any(|e| e.ends() == (u.min(v), u.max(v)));
            if !exists {
                g.add_edge(u, v).expect("in range");
            }
        }
    }
    g
}

fn rand_zpoly(rng: &mut impl Rng, max_terms: usize, max_w: u32) -> ZPoly {
    let mut p = ZPoly::zero();
    for _ in 0..rng.gen_range(0..=max_terms) {
        let marks: Vec<Mark> = (0..rng.gen_range(0..=3))
            .map(|_| rand_mark(rng, max_w))
            .collect();
        let mut mono = crate::zpoly::ZMonomial::from_marks(&marks);
        mono = mono.mul(&crate::zpoly::ZMonomial::y(rng.gen_range(0..=2)));
        p.add_term(mono, BigInt::from(rng.gen_range(-5i64..=5)));
    }
    p
}

/// Absorb absorbable edges in a random order; mark-isomorphism class of the
/// result must not depend on the order.
pub fn core_with_random_order(g: &MarkedGraph, rng: &mut impl Rng) -> MarkedGraph {
    let mut g = g.clone();
    loop {
        let absorbable: Vec<EdgeId> = g
            .edges()
            .iter()
            .filter(|e| g.absorbable_endpoint(e.id).is_some())
            .map(|e| e.id)
            .collect();
        if absorbable.is_empty() {
            return g;
        }
        let pick = absorbable[rng.gen_range(0..absorbable.len())];
        g = g.absorb(pick).expect("absorbable");
    }
}

// ---- The Stanley sweep ---------------------------------------------------------

/// Compute the star-basis chromatic symmetric function of every free tree
/// with up to `max_n` vertices and report any pair with equal expansions.
pub fn verify_stanley(max_n: u32) -> Result<RunReport> {
    let mut report = RunReport::new("verify stanley");
    report
        .config
        .insert("max_n".to_string(), max_n.to_string());
    let total_start = Instant::now();
    for n in 1..=max_n {
        let start = Instant::now();
        let trees = enumerate_free_trees(n)?;
        let mut by_csf: HashMap<String, Vec<usize>> = HashMap::new();
        let mut memo = HashMap::new();
        for (i, tree) in trees.iter().enumerate() {
            let x = dnc_expand_memoized(tree, &mut memo)?;
            by_csf.entry(x.to_string()).or_default().push(i);
        }
        let mut collisions = 0;
        let mut groups: Vec<(&String, &Vec<usize>)> =
            by_csf.iter().filter(|(_, v)| v.len() > 1).collect();
        groups.sort();
        for (csf, members) in groups {
            collisions += 1;
            report
                .collisions
                .push(format!("n={n}: trees {members:?} share {csf}"));
        }
        report.instances += trees.len() as u64;
        report.checks.push(CheckResult {
            id: format!("distinct-csf-n{n}"),
            pass: trees.len() as u64,
            fail: collisions,
            notes: Vec::new(),
        });
        report
            .timing_ns
            .insert(format!("n{n}"), start.elapsed().as_nanos() as u64);
    }
    report
        .timing_ns
        .insert("total".to_string(), total_start.elapsed().as_nanos() as u64);
    Ok(report)
}

/// Star expansion with a memo shared across a sweep of same-order trees.
pub fn dnc_expand_memoized(
    g: &MarkedGraph,
    memo: &mut HashMap<String, SymFn>,
) -> Result<SymFn> {
    if let Some(key) = forest_key(g) {
        if let Some(x) = memo.get(&key) {
            return Ok(x.clone());
        }
        let x = dnc_expand(g)?;
        memo.insert(key, x.clone());
        return Ok(x);
    }
    dnc_expand(g)
}

fn forest_key(g: &MarkedGraph) -> Option<String> {
    if g.is_forest() {
        canonical_form(g).ok()
    } else {
        None
    }
}

// ---- The invariant battery -----------------------------------------------------

type Check = fn(&mut ChaCha8Rng, u64) -> CheckResult;

fn result(id: &str, pass: u64, fail: u64, notes: Vec<String>) -> CheckResult {
    CheckResult {
        id: id.to_string(),
        pass,
        fail,
        notes,
    }
}

/// Count an assertion into (pass, fail) and record a note on failure.
macro_rules! tally {
    ($pass:ident, $fail:ident, $notes:ident, $cond:expr, $msg:expr) => {
        if $cond {
            $pass += 1;
        } else {
            $fail += 1;
            if $notes.len() < 8 {
                $notes.push($msg.to_string());
            }
        }
    };
}

fn check_graph_weight_counts(rng: &mut ChaCha8Rng, trials: u64) -> CheckResult {
    let (mut pass, mut fail, mut notes) = (0, 0, Vec::new());
    for t in 0..trials {
        let g = rand_marked_multigraph(rng, 6, 9, 5);
        if g.num_edges() == 0 {
            pass += 1;
            continue;
        }
        let e = g.edges()[rng.gen_range(0..g.num_edges())].id;
        let w = g.total_weight();
        let mut ok = true;
        if !g.edge(e).unwrap().is_loop() {
            let c = g.contract_edge(e).unwrap();
            ok &= c.total_weight() == w && c.n() == g.n() - 1;
            let (nc, _) = g.near_contract(e).unwrap();
            ok &= nc.total_weight() == w && nc.n() == g.n();
        }
        let k = g.core();
        ok &= k.total_weight() == w && !k.has_absorbable_vertex() && k.core() == k;
        tally!(pass, fail, notes, ok, format!("trial {t}"));
    }
    result("graph.weight-and-counts", pass, fail, notes)
}

fn check_near_contract_contract(rng: &mut ChaCha8Rng, trials: u64) -> CheckResult {
    let (mut pass, mut fail, mut notes) = (0, 0, Vec::new());
    for t in 0..trials {
        let g = rand_marked_multigraph(rng, 6, 8, 4);
        let non_loop: Vec<EdgeId> = g
            .edges()
            .iter()
            .filter(|e| !e.is_loop())
            .map(|e| e.id)
            .collect();
        if non_loop.is_empty() {
            pass += 1;
            continue;
        }
        let e = non_loop[rng.gen_range(0..non_loop.len())];
        let (nc, pendant) = g.near_contract(e).unwrap();
        let ok = nc.contract_edge(pendant).unwrap() == g.contract_edge(e).unwrap();
        tally!(pass, fail, notes, ok, format!("trial {t}"));
    }
    result("graph.near-contract-then-contract", pass, fail, notes)
}

fn check_core_confluence(rng: &mut ChaCha8Rng, trials: u64) -> CheckResult {
    let (mut pass, mut fail, mut notes) = (0, 0, Vec::new());
    for t in 0..trials {
        let n = rng.gen_range(2..=8);
        let g = rand_marked_forest(rng, n, 3);
        let reference = canonical_form(&g.core()).unwrap();
        let random = canonical_form(&core_with_random_order(&g, rng)).unwrap();
        tally!(pass, fail, notes, reference == random, format!("trial {t}"));
    }
    result("graph.core-confluence", pass, fail, notes)
}

fn check_uncore_roundtrip(rng: &mut ChaCha8Rng, trials: u64) -> CheckResult {
    let (mut pass, mut fail, mut notes) = (0, 0, Vec::new());
    for t in 0..trials {
        let n = rng.gen_range(1..=6);
        let weights: Vec<u32> = (0..n).map(|_| rng.gen_range(2..=5)).collect();
        let tree =
            MarkedGraph::weighted(&weights, rand_tree_edges(rng, n)).expect("positive");
        let ok = mark_isomorphic(&tree.uncore().unwrap().core(), &tree).unwrap();
        tally!(pass, fail, notes, ok, format!("trial {t}"));
    }
    result("graph.uncore-roundtrip", pass, fail, notes)
}

fn check_involution(rng: &mut ChaCha8Rng, trials: u64) -> CheckResult {
    let (mut pass, mut fail, mut notes) = (0, 0, Vec::new());
    for t in 0..trials {
        let mut f = SymFn::zero(Basis::Star);
        for _ in 0..rng.gen_range(1..=4) {
            let parts: Vec<u32> = (0..rng.gen_range(1..=3))
                .map(|_| rng.gen_range(1..=4))
                .collect();
            f.add_term(IntPartition::new(parts), BigInt::from(rng.gen_range(-9i64..=9)));
        }
        let ok = p_to_st(&st_to_p(&f)) == f;
        tally!(pass, fail, notes, ok, format!("trial {t}"));
    }
    result("symfunc.involution-roundtrip", pass, fail, notes)
}

fn check_tree_p_coefficients(rng: &mut ChaCha8Rng, trials: u64) -> CheckResult {
    let (mut pass, mut fail, mut notes) = (0, 0, Vec::new());
    for t in 0..trials {
        let n = rng.gen_range(2..=7);
        let tree = MarkedGraph::unweighted(n, rand_tree_edges(rng, n));
        let x = csf_power(&tree).unwrap();
        let ids: Vec<EdgeId> = tree.edges().iter().map(|e| e.id).collect();
        let mut counts: BTreeMap<IntPartition, i64> = BTreeMap::new();
        let mut ok = true;
        crate::util::for_each_subset(&ids, |subset| {
            let comps = tree.components_of(subset).unwrap();
            ok &= comps.len() == tree.n() - subset.len();
            let parts = IntPartition::new(comps.iter().map(|c| c.len() as u32).collect());
            *counts.entry(parts).or_insert(0) += 1;
        });
        for (idx, c) in x.terms() {
            ok &= c.abs() == BigInt::from(counts[idx]);
        }
        tally!(pass, fail, notes, ok, format!("trial {t}"));
    }
    result("symfunc.tree-p-coefficients", pass, fail, notes)
}

fn check_noble_welsh(rng: &mut ChaCha8Rng, trials: u64) -> CheckResult {
    let (mut pass, mut fail, mut notes) = (0, 0, Vec::new());
    for t in 0..trials {
        let g = loop {
            let g = rand_marked_multigraph(rng, 4, 5, 3).map_marks(|m| {
                Mark::weight(m.w()).expect("positive")
            });
            if g.num_edges() <= 5 {
                break g;
            }
        };
        let w = w_poly(&g).unwrap();
        // X = (-1)^{|V|} W(z_i = -p_i, y = 0).
        let mut x = SymFn::zero(Basis::Power);
        for (mono, c) in w.eval_y(0).terms() {
            let parts: Vec<u32> = mono.expanded_marks().iter().map(Mark::w).collect();
            let sign = if (g.n() + parts.len()) % 2 == 0 {
                BigInt::one()
            } else {
                -BigInt::one()
            };
            x.add_term(IntPartition::new(parts), c * sign);
        }
        let nvars = 3;
        let ok = power_to_monomials(&x, nvars) == weighted_csf(&g, nvars).unwrap();
        tally!(pass, fail, notes, ok, format!("trial {t}"));
    }
    result("symfunc.noble-welsh-specialization", pass, fail, notes)
}

fn check_chromatic_eval(rng: &mut ChaCha8Rng, trials: u64) -> CheckResult {
    let (mut pass, mut fail, mut notes) = (0, 0, Vec::new());
    for t in 0..trials {
        let n = rng.gen_range(2..=6);
        let g = rand_connected_simple(rng, n, 3);
        let x = csf_power(&g).unwrap();
        let mut ok = true;
        for k in 0..=4u64 {
            ok &= chromatic_poly_eval(&g, k).unwrap() == x.eval_all_generators(&BigInt::from(k));
        }
        let n = rng.gen_range(2..=7);
        let tree = MarkedGraph::unweighted(n, rand_tree_edges(rng, n));
        for k in 1..=4u64 {
            let expect = BigInt::from(k) * BigInt::from(k as i64 - 1).pow(n - 1);
            ok &= chromatic_poly_eval(&tree, k).unwrap() == expect;
        }
        tally!(pass, fail, notes, ok, format!("trial {t}"));
    }
    result("symfunc.chromatic-eval", pass, fail, notes)
}

fn check_ring_laws(rng: &mut ChaCha8Rng, trials: u64) -> CheckResult {
    let (mut pass, mut fail, mut notes) = (0, 0, Vec::new());
    for t in 0..trials {
        let a = rand_zpoly(rng, 4, 5);
        let b = rand_zpoly(rng, 4, 5);
        let c = rand_zpoly(rng, 4, 5);
        let ok = a.mul(&b) == b.mul(&a)
            && a.mul(&b.mul(&c)) == a.mul(&b).mul(&c)
            && a.mul(&b.add(&c)) == a.mul(&b).add(&a.mul(&c))
            && a.add(&b) == b.add(&a);
        tally!(pass, fail, notes, ok, format!("trial {t}"));
    }
    result("zpoly.ring-laws", pass, fail, notes)
}

fn check_undot_homomorphism(rng: &mut ChaCha8Rng, trials: u64) -> CheckResult {
    let (mut pass, mut fail, mut notes) = (0, 0, Vec::new());
    for t in 0..trials {
        let a = rand_zpoly(rng, 3, 5);
        let b = rand_zpoly(rng, 3, 5);
        let ok = undot(&a.mul(&b)) == undot(&a).mul(&undot(&b))
            && undot(&a.add(&b)) == undot(&a).add(&undot(&b));
        tally!(pass, fail, notes, ok, format!("trial {t}"));
    }
    result("zpoly.undot-homomorphism", pass, fail, notes)
}

fn check_pascal(_rng: &mut ChaCha8Rng, _trials: u64) -> CheckResult {
    let (mut pass, mut fail, mut notes) = (0, 0, Vec::new());
    for w in 2u32..=9 {
        for d in 1..w {
            let lhs = d_bullet(w, d).unwrap();
            let rhs = d_bullet(w, d - 1)
                .unwrap()
                .sub(&ZPoly::zw(1).mul(&d_bullet(w - 1, d - 1).unwrap()));
            tally!(pass, fail, notes, lhs == rhs, format!("({w},{d})"));
        }
    }
    result("zpoly.pascal-identity", pass, fail, notes)
}

fn check_engines_agree(rng: &mut ChaCha8Rng, trials: u64) -> CheckResult {
    let (mut pass, mut fail, mut notes) = (0, 0, Vec::new());
    for t in 0..trials {
        let g = rand_marked_multigraph(rng, 5, 7, 4);
        let dc = m_poly_dc(&g);
        let states = m_poly_states(&g).unwrap();
        let bond = m_poly_bond(&g).unwrap();
        let mut ok = dc == states && states == bond;
        let mut ids: Vec<EdgeId> = g.edges().iter().map(|e| e.id).collect();
        for _ in 0..3 {
            for i in (1..ids.len()).rev() {
                ids.swap(i, rng.gen_range(0..=i));
            }
            ok &= m_poly_dc_with_order(&g, &ids) == states;
        }
        tally!(pass, fail, notes, ok, format!("trial {t}"));
    }
    result("invariants.m-engines-agree", pass, fail, notes)
}

fn check_multiplicative(rng: &mut ChaCha8Rng, trials: u64) -> CheckResult {
    let (mut pass, mut fail, mut notes) = (0, 0, Vec::new());
    for t in 0..trials {
        let a = rand_marked_multigraph(rng, 4, 5, 4);
        let b = rand_marked_multigraph(rng, 3, 4, 4);
        let ok = m_poly(&a.disjoint_union(&b)) == m_poly(&a).mul(&m_poly(&b));
        tally!(pass, fail, notes, ok, format!("trial {t}"));
    }
    result("invariants.m-multiplicative", pass, fail, notes)
}

fn check_y0_simplification(rng: &mut ChaCha8Rng, trials: u64) -> CheckResult {
    let (mut pass, mut fail, mut notes) = (0, 0, Vec::new());
    for t in 0..trials {
        let g = loop {
            let g = rand_marked_multigraph(rng, 5, 8, 4);
            if !g.has_loop() {
                break g;
            }
        };
        let ok = m_poly(&g).eval_y(0) == m_poly(&g.simplify()).eval_y(0);
        tally!(pass, fail, notes, ok, format!("trial {t}"));
    }
    result("invariants.y0-simplification", pass, fail, notes)
}

fn check_dnc_three_term(rng: &mut ChaCha8Rng, trials: u64) -> CheckResult {
    let (mut pass, mut fail, mut notes) = (0, 0, Vec::new());
    for t in 0..trials {
        let g = rand_marked_multigraph(rng, 5, 7, 4);
        let non_loop: Vec<EdgeId> = g
            .edges()
            .iter()
            .filter(|e| !e.is_loop())
            .map(|e| e.id)
            .collect();
        if non_loop.is_empty() {
            pass += 1;
            continue;
        }
        let e = non_loop[rng.gen_range(0..non_loop.len())];
        let (nc, pendant) = g.near_contract(e).unwrap();
        let rhs = m_poly(&g.delete_edge(e).unwrap())
            .sub(&m_poly(&nc.delete_edge(pendant).unwrap()))
            .add(&m_poly(&nc));
        tally!(pass, fail, notes, m_poly(&g) == rhs, format!("trial {t}"));
    }
    result("invariants.deletion-near-contraction", pass, fail, notes)
}

fn check_cor_3n1(rng: &mut ChaCha8Rng, trials: u64) -> CheckResult {
    let (mut pass, mut fail, mut notes) = (0, 0, Vec::new());
    for t in 0..trials {
        let n = rng.gen_range(1..=6);
        let tree = rand_weighted_tree(rng, n, 4);
        let strict = tree.is_strictly_marked();
        let mass = d_poly(&tree).coeff_abs_sum();
        let expect = BigInt::from(3u32).pow(n - 1);
        let ok = (mass == expect) == strict;
        tally!(pass, fail, notes, ok, format!("trial {t}"));
    }
    result("invariants.d-coefficient-mass-3pow", pass, fail, notes)
}

fn check_cancellation_dichotomy(rng: &mut ChaCha8Rng, trials: u64) -> CheckResult {
    let (mut pass, mut fail, mut notes) = (0, 0, Vec::new());
    for t in 0..trials {
        let n = rng.gen_range(2..=6);
        let tree = rand_marked_tree(rng, n, 4);
        let m = m_poly_states(&tree).unwrap();
        let ok = undot_is_cancellation_free(&m) == tree.is_strictly_marked();
        tally!(pass, fail, notes, ok, format!("trial {t}"));
    }
    result("invariants.undot-cancellation-dichotomy", pass, fail, notes)
}

fn check_w_from_d(rng: &mut ChaCha8Rng, trials: u64) -> CheckResult {
    let (mut pass, mut fail, mut notes) = (0, 0, Vec::new());
    for t in 0..trials {
        let n = rng.gen_range(1..=6);
        let weights: Vec<u32> = (0..n).map(|_| rng.gen_range(2..=5)).collect();
        let tree = MarkedGraph::weighted(&weights, rand_tree_edges(rng, n)).unwrap();
        let w = w_poly(&tree).unwrap();
        let mut ok = w_from_d(&tree).unwrap() == w;
        // z_1 genuinely absent from W of strict graphs.
        ok &= w
            .terms()
            .all(|(mono, _)| mono.z1_exp() == 0);
        tally!(pass, fail, notes, ok, format!("trial {t}"));
    }
    result("invariants.w-from-d", pass, fail, notes)
}

fn check_v_recipe(rng: &mut ChaCha8Rng, trials: u64) -> CheckResult {
    let (mut pass, mut fail, mut notes) = (0, 0, Vec::new());
    for t in 0..trials {
        let g = rand_marked_multigraph(rng, 4, 6, 3);
        let sg = SGraph::from_marked(&g, |m| m);
        let semi = MarkDotSum;
        let rat = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        let gamma: EdgeWeights = g
            .edges()
            .iter()
            .map(|e| (e.id, rat(rng.gen_range(-4i64..=4), rng.gen_range(1..=3))))
            .collect();
        let mut ok = v_poly_states(&sg, &semi, &gamma).unwrap()
            == v_poly_dc(&sg, &semi, &gamma).unwrap();
        // Recipe with random nonzero alphas.
        let alpha: EdgeWeights = g
            .edges()
            .iter()
            .map(|e| {
                let mut a = rng.gen_range(-3i64..=3);
                if a == 0 {
                    a = 1;
                }
                (e.id, rat(a, rng.gen_range(1..=2)))
            })
            .collect();
        let f = recipe_recursion(&sg, &semi, &alpha, &gamma).unwrap();
        let scaled_gamma: EdgeWeights =
            alpha.iter().map(|(&e, a)| (e, &gamma[&e] / a)).collect();
        let v = v_poly_states(&sg, &semi, &scaled_gamma).unwrap();
        let scale: BigRational = alpha.values().product();
        for (key, c) in &v {
            ok &= f.get(key).cloned().unwrap_or_else(BigRational::zero) == c * &scale;
        }
        ok &= f.len() == v.len();
        // The (y-1) scaling identity against M at a numeric y.
        let y = rat(rng.gen_range(2..=5), 1);
        let ym1 = &y - BigRational::one();
        let gm: EdgeWeights = uniform_gamma(&g, ym1.clone());
        let v2 = v_poly_states(&sg, &semi, &gm).unwrap();
        let m_at = eval_y_rational(&m_poly(&g), &y);
        let mut keys: Vec<Vec<Mark>> = v2.keys().cloned().collect();
        keys.extend(m_at.keys().cloned());
        keys.sort();
        keys.dedup();
        for key in keys {
            let vl = v2.get(&key).cloned().unwrap_or_else(BigRational::zero);
            let ml = m_at.get(&key).cloned().unwrap_or_else(BigRational::zero);
            let mut lhs = vl;
            for _ in 0..key.len() {
                lhs *= &ym1;
            }
            let mut rhs = ml;
            for _ in 0..g.n() {
                rhs *= &ym1;
            }
            ok &= lhs == rhs;
        }
        tally!(pass, fail, notes, ok, format!("trial {t}"));
    }
    result("invariants.v-recipe-and-scaling", pass, fail, notes)
}

fn check_star_oracle(rng: &mut ChaCha8Rng, trials: u64) -> CheckResult {
    let (mut pass, mut fail, mut notes) = (0, 0, Vec::new());
    for t in 0..trials {
        let n = rng.gen_range(2..=7);
        let g = rand_connected_simple(rng, n, 2);
        let by_dnc = dnc_expand(&g).unwrap();
        let by_oracle = p_to_st(&csf_power(&g).unwrap());
        let by_d = crate::zpoly::subst_star(&d_poly(&g).eval_y(0)).unwrap();
        let ok = by_dnc == by_oracle && by_dnc == by_d;
        tally!(pass, fail, notes, ok, format!("trial {t}"));
    }
    result("star.oracle-equivalence", pass, fail, notes)
}

fn check_star_choice_independence(rng: &mut ChaCha8Rng, trials: u64) -> CheckResult {
    let (mut pass, mut fail, mut notes) = (0, 0, Vec::new());
    for t in 0..trials {
        let n = rng.gen_range(2..=6);
        let g = rand_connected_simple(rng, n, 2);
        let largest = |h: &MarkedGraph| {
            h.internal_edge_ids()
                .into_iter()
                .max_by_key(|&id| h.edge(id).unwrap().ends())
        };
        let ok = dnc_expand(&g).unwrap() == dnc_expand_with_choice(&g, &largest).unwrap()
            && default_edge_choice(&g)
                .map(|e| g.edge(e).is_ok())
                .unwrap_or(true);
        tally!(pass, fail, notes, ok, format!("trial {t}"));
    }
    result("star.choice-independence", pass, fail, notes)
}

fn check_mprime(rng: &mut ChaCha8Rng, trials: u64) -> CheckResult {
    let (mut pass, mut fail, mut notes) = (0, 0, Vec::new());
    for t in 0..trials {
        let n = rng.gen_range(1..=7);
        let forest = rand_marked_forest(rng, n, 4);
        let mut ok = true;
        for _ in 0..3 {
            let ord = MarkOrder::Seeded(rng.gen());
            ok &= m_prime_undot_check(&forest, ord).unwrap();
        }
        ok &= m_prime_undot_check(&forest, MarkOrder::Lex).unwrap();
        tally!(pass, fail, notes, ok, format!("trial {t}"));
    }
    result("mprime.undot-equals-d", pass, fail, notes)
}

fn check_mprime_partial_states(rng: &mut ChaCha8Rng, trials: u64) -> CheckResult {
    let (mut pass, mut fail, mut notes) = (0, 0, Vec::new());
    for t in 0..trials {
        let n = rng.gen_range(2..=6);
        let tree = rand_marked_tree(rng, n, 4);
        let m = m_poly(&tree);
        let ids: Vec<EdgeId> = tree.edges().iter().map(|e| e.id).collect();
        // One random B per trial.
        let b: Vec<EdgeId> = ids.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        let mut total = ZPoly::zero();
        crate::util::for_each_subset(&b, |a1| {
            let mut child = tree.clone();
            for &e in &b {
                if !a1.contains(&e) {
                    child = child.delete_edge(e).unwrap();
                }
            }
            let child = child.contract_edges(a1).unwrap();
            total = total.add(&m_poly(&child));
        });
        tally!(pass, fail, notes, total == m, format!("trial {t}"));
    }
    result("mprime.partial-states-lemma", pass, fail, notes)
}

fn check_mprime_strict_vars(rng: &mut ChaCha8Rng, trials: u64) -> CheckResult {
    let (mut pass, mut fail, mut notes) = (0, 0, Vec::new());
    for t in 0..trials {
        // Almost strictly marked tree: marks strict or exactly (1,0).
        let n = rng.gen_range(2..=7);
        let verts: Vec<(u32, Mark)> = (0..n)
            .map(|v| {
                let m = if rng.gen_bool(0.4) {
                    Mark::UNIT
                } else {
                    loop {
                        let m = rand_mark(rng, 5);
                        if m.is_strict() {
                            break m;
                        }
                    }
                };
                (v, m)
            })
            .collect();
        let tree = MarkedGraph::from_parts(verts, rand_tree_edges(rng, n)).unwrap();
        let mp = m_prime(&tree, MarkOrder::Lex).unwrap();
        let mut ok = mp
            .terms()
            .all(|(mono, _)| mono.factors().iter().all(|(m, _)| m.is_strict()));
        ok &= undot_is_cancellation_free(&mp);
        tally!(pass, fail, notes, ok, format!("trial {t}"));
    }
    result("mprime.almost-strict-variables", pass, fail, notes)
}

fn check_reconstruct_stats(rng: &mut ChaCha8Rng, trials: u64) -> CheckResult {
    let (mut pass, mut fail, mut notes) = (0, 0, Vec::new());
    for t in 0..trials {
        let n = rng.gen_range(1..=7);
        let tree = rand_weighted_tree(rng, n, 5);
        let stats = stats_from_m(&m_poly(&tree)).unwrap();
        let gstats = tree.stats();
        let mut weights: Vec<u32> = tree.vertices().map(|(_, m)| m.w()).collect();
        weights.sort_unstable_by(|a, b| b.cmp(a));
        let mut leaf_weights: Vec<u32> = if n <= 2 {
            weights.clone()
        } else {
            gstats
                .leaves
                .iter()
                .map(|&v| tree.mark(v).unwrap().w())
                .collect()
        };
        leaf_weights.sort_unstable_by(|a, b| b.cmp(a));
        let ok = stats.n == tree.n()
            && stats.total_weight as u64 == tree.total_weight()
            && stats.weights == weights
            && stats.leaf_weights == leaf_weights;
        tally!(pass, fail, notes, ok, format!("trial {t}"));
    }
    result("reconstruct.stats-complete", pass, fail, notes)
}

fn check_reconstruct_roundtrips(rng: &mut ChaCha8Rng, trials: u64) -> CheckResult {
    let (mut pass, mut fail, mut notes) = (0, 0, Vec::new());
    for t in 0..trials {
        // Random weighted star (any weights) reconstructed from M.
        let k = rng.gen_range(0..=4);
        let leaves: Vec<u32> = (0..k).map(|_| rng.gen_range(1..=5)).collect();
        let center = rng.gen_range(1..=5);
        let mut weights = vec![center];
        weights.extend(&leaves);
        let star =
            MarkedGraph::weighted(&weights, (1..=k).map(|i| (0, i))).expect("positive");
        let mut ok = mark_isomorphic(&star_from_m(&m_poly(&star)).unwrap(), &star).unwrap();
        // Random strict star and 2-star from both M and D.
        let k = rng.gen_range(1..=3);
        let mut weights: Vec<u32> = vec![rng.gen_range(2..=4)];
        weights.extend((0..k).map(|_| rng.gen_range(2..=4)));
        let sstar = MarkedGraph::weighted(&weights, (1..=k).map(|i| (0, i))).unwrap();
        ok &= mark_isomorphic(&star_from_d(&d_poly(&sstar)).unwrap(), &sstar).unwrap();
        let (k0, k1) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
        let mut weights: Vec<u32> = vec![rng.gen_range(2..=4), rng.gen_range(2..=4)];
        let mut edges = vec![(0u32, 1u32)];
        let mut next = 2u32;
        for i in 0..k0 + k1 {
            weights.push(rng.gen_range(2..=4));
            edges.push((if i < k0 { 0 } else { 1 }, next));
            next += 1;
        }
        let twostar = MarkedGraph::weighted(&weights, edges).unwrap();
        ok &= mark_isomorphic(&twostar_from_m(&m_poly(&twostar)).unwrap(), &twostar).unwrap();
        ok &= mark_isomorphic(&twostar_from_d(&d_poly(&twostar)).unwrap(), &twostar).unwrap();
        tally!(pass, fail, notes, ok, format!("trial {t}"));
    }
    result("reconstruct.roundtrips", pass, fail, notes)
}

fn check_enumeration(_rng: &mut ChaCha8Rng, _trials: u64) -> CheckResult {
    let (mut pass, mut fail, mut notes) = (0, 0, Vec::new());
    let expect = [1usize, 1, 1, 2, 3, 6, 11, 23, 47, 106];
    for (i, &e) in expect.iter().enumerate() {
        let n = (i + 1) as u32;
        tally!(
            pass,
            fail,
            notes,
            enumerate_free_trees(n).unwrap().len() == e,
            format!("count n={n}")
        );
    }
    for n in 1u32..=7 {
        let mine: std::collections::HashSet<String> = enumerate_free_trees(n)
            .unwrap()
            .iter()
            .map(|t| canonical_form(t).unwrap())
            .collect();
        let oracle: std::collections::HashSet<String> = labeled_trees_prufer(n)
            .iter()
            .map(|t| canonical_form(t).unwrap())
            .collect();
        tally!(pass, fail, notes, mine == oracle, format!("prufer n={n}"));
    }
    tally!(
        pass,
        fail,
        notes,
        connected_graph_classes(6).unwrap().len() == 112,
        "connected classes n=6"
    );
    result("enumerate.free-trees-and-classes", pass, fail, notes)
}

/// Informational only: scan small weighted trees for M-polynomial
/// collisions. Whether such a pair exists is open; nothing is asserted, the
/// check always passes and reports what it saw.
fn check_m_twin_scan(_rng: &mut ChaCha8Rng, _trials: u64) -> CheckResult {
    let mut seen: HashMap<String, String> = HashMap::new();
    let mut found = Vec::new();
    let mut scanned = 0u64;
    for total in 2u32..=9 {
        for core in enumerate_strict_cores(total) {
            let m = m_poly(&core).to_string();
            let form = canonical_form(&core).unwrap();
            scanned += 1;
            if let Some(prev) = seen.insert(m, form.clone()) {
                if prev != form {
                    found.push(format!("twin at weight {total}"));
                }
            }
        }
    }
    let mut notes = vec![format!("scanned {scanned} strict cores, found {} twins", found.len())];
    notes.extend(found);
    result("info.m-twin-scan", scanned, 0, notes)
}

/// The registry of invariant checks, in the order they run and report.
pub fn invariant_registry() -> Vec<(&'static str, Check)> {
    vec![
        ("graph.weight-and-counts", check_graph_weight_counts),
        ("graph.near-contract-then-contract", check_near_contract_contract),
        ("graph.core-confluence", check_core_confluence),
        ("graph.uncore-roundtrip", check_uncore_roundtrip),
        ("symfunc.involution-roundtrip", check_involution),
        ("symfunc.tree-p-coefficients", check_tree_p_coefficients),
        ("symfunc.noble-welsh-specialization", check_noble_welsh),
        ("symfunc.chromatic-eval", check_chromatic_eval),
        ("zpoly.ring-laws", check_ring_laws),
        ("zpoly.undot-homomorphism", check_undot_homomorphism),
        ("zpoly.pascal-identity", check_pascal),
        ("invariants.m-engines-agree", check_engines_agree),
        ("invariants.m-multiplicative", check_multiplicative),
        ("invariants.y0-simplification", check_y0_simplification),
        ("invariants.deletion-near-contraction", check_dnc_three_term),
        ("invariants.d-coefficient-mass-3pow", check_cor_3n1),
        ("invariants.undot-cancellation-dichotomy", check_cancellation_dichotomy),
        ("invariants.w-from-d", check_w_from_d),
        ("invariants.v-recipe-and-scaling", check_v_recipe),
        ("star.oracle-equivalence", check_star_oracle),
        ("star.choice-independence", check_star_choice_independence),
        ("mprime.undot-equals-d", check_mprime),
        ("mprime.partial-states-lemma", check_mprime_partial_states),
        ("mprime.almost-strict-variables", check_mprime_strict_vars),
        ("reconstruct.stats-complete", check_reconstruct_stats),
        ("reconstruct.roundtrips", check_reconstruct_roundtrips),
        ("enumerate.free-trees-and-classes", check_enumeration),
        ("info.m-twin-scan", check_m_twin_scan),
    ]
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

/// Run the whole randomized property battery with one master seed.
pub fn verify_invariants(seed: u64, trials: u64) -> RunReport {
    let mut report = RunReport::new("verify invariants");
    report.seed = Some(seed);
    report.config.insert("trials".to_string(), trials.to_string());
    let total_start = Instant::now();
    for (i, (id, check)) in invariant_registry().into_iter().enumerate() {
        let start = Instant::now();
        // Each check gets its own stream so additions never reshuffle others.
        let mut rng = ChaCha8Rng::seed_from_u64(splitmix(seed ^ (i as u64) << 32));
        let res = check(&mut rng, trials);
        debug_assert_eq!(res.id, id);
        report.instances += res.pass + res.fail;
        report.checks.push(res);
        report
            .timing_ns
            .insert(id.to_string(), start.elapsed().as_nanos() as u64);
    }
    report
        .timing_ns
        .insert("total".to_string(), total_start.elapsed().as_nanos() as u64);
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stanley_small() {
        let report = verify_stanley(6).unwrap();
        assert!(report.all_passed());
        assert_eq!(report.instances, 1 + 1 + 1 + 2 + 3 + 6);
        assert!(report.collisions.is_empty());
    }

    #[test]
    fn invariants_battery_deterministic_and_green() {
        let a = verify_invariants(42, 6);
        assert!(a.all_passed(), "failing checks: {:#?}", a.checks.iter().filter(|c| c.fail > 0).collect::<Vec<_>>());
        let b = verify_invariants(42, 6);
        assert_eq!(a.deterministic_view(), b.deterministic_view());
        assert_eq!(
            a.deterministic_view().to_json(),
            b.deterministic_view().to_json()
        );
        // The default run covers every registered invariant id.
        let ids: Vec<&str> = a.checks.iter().map(|c| c.id.as_str()).collect();
        let expect: Vec<&str> = invariant_registry().iter().map(|(id, _)| *id).collect();
        assert_eq!(ids, expect);
    }

    #[test]
    fn different_seeds_differ_somewhere() {
        // Not a hard guarantee, but with these generators the instance
        // streams differ; notes stay empty so reports still compare clean.
        let a = verify_invariants(1, 3);
        let b = verify_invariants(2, 3);
        assert!(a.all_passed() && b.all_passed());
    }

    #[test]
    fn stanley_path_vs_star_signatures() {
        let trees = enumerate_free_trees(4).unwrap();
        let mut sigs: Vec<String> = trees
            .iter()
            .map(|t| dnc_expand(t).unwrap().to_string())
            .collect();
        sigs.sort();
        sigs.dedup();
        assert_eq!(sigs.len(), 2);
    }
}
