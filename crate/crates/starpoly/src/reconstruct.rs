//! Reconstruction of weighted stars and 2-stars from their M- and
//! D-polynomials, and recovery of proper trees of diameter at most 5 from
//! the chromatic symmetric function.
//!
//! From M the tree statistics are read off directly: the unique degree-1
//! term is `z[N,n-1]`, the top-degree term is the weight multiset, and the
//! degree-2 terms with a dotless factor list the leaf weights. From D the
//! same data is recovered through the strict-pair peel-off of the degree-2
//! layer and, for 2-stars with equal centers, coefficient extractions with
//! the shared-vertex correction terms. Everything is exact integer
//! arithmetic; inputs outside the supported families surface as errors.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::MarkedGraph;
use crate::mark::Mark;
use crate::partition::partitions_with;
use crate::symfunc::{Basis, SymFn};
use crate::zpoly::{d_bullet, ZMonomial, ZPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeShape {
    Star,
    TwoStar,
    Other,
}

/// Aggregate data read off a weighted tree's M-polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeStats {
    pub n: usize,
    pub total_weight: u32,
    /// Multiset of vertex weights, descending.
    pub weights: Vec<u32>,
    /// Multiset of leaf weights, descending.
    pub leaf_weights: Vec<u32>,
    pub shape: TreeShape,
}

fn classify(n: usize, leaves: usize) -> TreeShape {
    if n <= 2 || leaves == n - 1 {
        TreeShape::Star
    } else if leaves == n - 2 {
        TreeShape::TwoStar
    } else {
        TreeShape::Other
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

// ---- Reading the M-polynomial ------------------------------------------------

/// (n, N, weight multiset, leaf weights, shape) from a weighted tree's
/// M-polynomial.
pub fn stats_from_m(m: &ZPoly) -> Result<TreeStats> {
    if m.terms().any(|(mono, _)| mono.y_exp() > 0) {
        return Err(bad("tree M-polynomials have no y terms"));
    }
    // Unique degree-1 term z[N, n-1].
    let deg1: Vec<(&ZMonomial, &BigInt)> =
        m.terms().filter(|(mono, _)| mono.z_degree() == 1).collect();
    let [(mono1, c1)] = deg1.as_slice() else {
        return Err(bad("expected a unique degree-1 term"));
    };
    if !c1.is_one() {
        return Err(bad("degree-1 term must have coefficient 1"));
    }
    let head = mono1.expanded_marks()[0];
    let total_weight = head.w();
    let n = head.d() as usize + 1;
    // Unique top-degree term: the dotless weight multiset.
    let top: Vec<(&ZMonomial, &BigInt)> = m
        .terms()
        .filter(|(mono, _)| mono.z_degree() as usize == n)
        .collect();
    let [(mono_top, c_top)] = top.as_slice() else {
        return Err(bad("expected a unique top-degree term"));
    };
    if !c_top.is_one() || m.z_degree() as usize != n {
        return Err(bad("top-degree term must be the unique maximal term with coefficient 1"));
    }
    let mut weights = Vec::with_capacity(n);
    for mark in mono_top.expanded_marks() {
        if mark.d() != 0 {
            return Err(bad("top-degree term of a weighted tree is dotless"));
        }
        weights.push(mark.w());
    }
    weights.sort_unstable_by(|a, b| b.cmp(a));
    if weights.iter().map(|&w| w as u64).sum::<u64>() != total_weight as u64 {
        return Err(bad("weight multiset does not sum to the total weight"));
    }
    // Leaf weights from degree-2 terms with a dotless factor.
    let leaf_weights = if n <= 2 {
        weights.clone()
    } else {
        let mut out = Vec::new();
        for (mono, c) in m.terms().filter(|(mono, _)| mono.z_degree() == 2) {
            let marks = mono.expanded_marks();
            let dotless: Vec<&Mark> = marks.iter().filter(|mk| mk.d() == 0).collect();
            match dotless.as_slice() {
                [] => {}
                [leaf] => {
                    let count = c
                        .to_u32()
                        .ok_or_else(|| bad("leaf multiplicity out of range"))?;
                    for _ in 0..count {
                        out.push(leaf.w());
                    }
                }
                _ => return Err(bad("degree-2 term with two dotless factors only occurs at n = 2")),
            }
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    };
    let shape = classify(n, leaf_weights.len());
    Ok(TreeStats {
        n,
        total_weight,
        weights,
        leaf_weights,
        shape,
    })
}

fn counts(ws: &[u32]) -> BTreeMap<u32, i64> {
    let mut out = BTreeMap::new();
    for &w in ws {
        *out.entry(w).or_insert(0) += 1;
    }
    out
}

/// Remove `take` from the multiset `from`; None when short.
fn multiset_sub(from: &[u32], take: &[u32]) -> Option<Vec<u32>> {
    let mut c = counts(from);
    for &w in take {
        let e = c.get_mut(&w)?;
        *e -= 1;
        if *e < 0 {
            return None;
        }
    }
    let mut out = Vec::new();
    for (w, k) in c {
        for _ in 0..k {
            out.push(w);
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    Some(out)
}

fn dotless_monomial(ws: &[u32]) -> ZMonomial {
    let marks: Vec<Mark> = ws.iter().map(|&w| Mark::weight(w).expect("positive")).collect();
    ZMonomial::from_marks(&marks)
}

/// Coefficient of `z[w1+w2,1] * z_(W \ {w1,w2})` in a degree-(n-1)-bearing
/// polynomial: the number of edges joining weights w1 and w2.
pub fn alpha_in(m: &ZPoly, weights: &[u32], w1: u32, w2: u32) -> BigInt {
    let Some(rest) = multiset_sub(weights, &[w1, w2]) else {
        return BigInt::zero();
    };
    let mut marks: Vec<Mark> = rest.iter().map(|&w| Mark::weight(w).unwrap()).collect();
    marks.push(Mark::new(w1 + w2, 1).expect("w1+w2 >= 2"));
    m.coeff(&ZMonomial::from_marks(&marks))
}

/// Coefficient counting independent edge pairs joining `w0` with `w1` and
/// `w0` with `w2`.
pub fn beta_in(m: &ZPoly, weights: &[u32], w0: u32, w1: u32, w2: u32) -> BigInt {
    let Some(rest) = multiset_sub(weights, &[w0, w0, w1, w2]) else {
        return BigInt::zero();
    };
    let mut marks: Vec<Mark> = rest.iter().map(|&w| Mark::weight(w).unwrap()).collect();
    marks.push(Mark::new(w0 + w1, 1).expect("valid"));
    marks.push(Mark::new(w0 + w2, 1).expect("valid"));
    m.coeff(&ZMonomial::from_marks(&marks))
}

/// `alpha(w1, w2)` of a weighted tree, read from its M-polynomial.
pub fn alpha(m: &ZPoly, w1: u32, w2: u32) -> Result<BigInt> {
    let stats = stats_from_m(m)?;
    Ok(alpha_in(m, &stats.weights, w1, w2))
}

/// `beta(w0, w1, w2)` of a weighted tree, read from its M-polynomial.
pub fn beta(m: &ZPoly, w0: u32, w1: u32, w2: u32) -> Result<BigInt> {
    let stats = stats_from_m(m)?;
    Ok(beta_in(m, &stats.weights, w0, w1, w2))
}

// ---- Building trees -----------------------------------------------------------

fn build_star(center: u32, leaves: &[u32]) -> MarkedGraph {
    let mut weights = vec![center];
    weights.extend_from_slice(leaves);
    MarkedGraph::weighted(&weights, (1..=leaves.len() as u32).map(|i| (0, i)))
        .expect("positive weights")
}

fn build_twostar(u0: u32, u1: u32, w: &[u32], l0: &[i64], l1: &[i64]) -> MarkedGraph {
    let mut weights = vec![u0, u1];
    let mut edges = vec![(0u32, 1u32)];
    let mut next = 2u32;
    for (j, &wj) in w.iter().enumerate() {
        for _ in 0..l0[j] {
            weights.push(wj);
            edges.push((0, next));
            next += 1;
        }
    }
    for (j, &wj) in w.iter().enumerate() {
        for _ in 0..l1[j] {
            weights.push(wj);
            edges.push((1, next));
            next += 1;
        }
    }
    MarkedGraph::weighted(&weights, edges).expect("positive weights")
}

fn star_from_stats(stats: &TreeStats) -> Result<MarkedGraph> {
    if stats.shape != TreeShape::Star {
        return Err(bad("input is not the polynomial of a weighted star"));
    }
    match stats.n {
        1 => Ok(build_star(stats.total_weight, &[])),
        2 => Ok(build_star(stats.weights[0], &stats.weights[1..])),
        _ => {
            let center = multiset_sub(&stats.weights, &stats.leaf_weights)
                .filter(|rest| rest.len() == 1)
                .ok_or_else(|| bad("weights minus leaf weights must leave one center"))?;
            Ok(build_star(center[0], &stats.leaf_weights))
        }
    }
}

/// Reconstruct a weighted star from its M-polynomial.
pub fn star_from_m(m: &ZPoly) -> Result<MarkedGraph> {
    star_from_stats(&stats_from_m(m)?)
}

/// Distinct leaf weights with multiplicities, descending.
fn leaf_tally(leaf_weights: &[u32]) -> (Vec<u32>, Vec<i64>) {
    let mut w = Vec::new();
    let mut mu = Vec::new();
    for (&weight, &count) in counts(leaf_weights).iter().rev() {
        w.push(weight);
        mu.push(count);
    }
    (w, mu)
}

fn center_pair(stats: &TreeStats) -> Result<(u32, u32)> {
    let centers = multiset_sub(&stats.weights, &stats.leaf_weights)
        .filter(|rest| rest.len() == 2)
        .ok_or_else(|| bad("weights minus leaf weights must leave two centers"))?;
    Ok((centers[0], centers[1]))
}

/// Leaf placement when the centers have different weights: pendant counts
/// are alpha coefficients except where a leaf weight collides with the other
/// center's weight, where the multiplicity complement is used instead.
fn solve_distinct_centers(
    u0: u32,
    u1: u32,
    w: &[u32],
    mu: &[i64],
    alpha_of: &impl Fn(u32, u32) -> BigInt,
) -> Result<(Vec<i64>, Vec<i64>)> {
    let small = |x: &BigInt| -> Result<i64> {
        x.to_i64().ok_or_else(|| bad("leaf count out of range"))
    };
    let mut l0 = vec![0i64; w.len()];
    let mut l1 = vec![0i64; w.len()];
    for (j, &wj) in w.iter().enumerate() {
        l0[j] = if wj == u1 {
            mu[j] - small(&alpha_of(u1, u1))?
        } else {
            small(&alpha_of(u0, wj))?
        };
        l1[j] = if wj == u0 {
            mu[j] - small(&alpha_of(u0, u0))?
        } else {
            small(&alpha_of(u1, wj))?
        };
        if l0[j] < 0 || l1[j] < 0 || l0[j] + l1[j] != mu[j] {
            return Err(bad(format!(
                "inconsistent pendant counts for leaf weight {wj}: {} + {} != {}",
                l0[j], l1[j], mu[j]
            )));
        }
    }
    Ok((l0, l1))
}

/// Leaf placement for equal centers: solve `x + y = mu_j, x*y = beta_j` via
/// the discriminant; once some asymmetric weight pins the two centers the
/// rest is a linear system.
fn solve_equal_centers(
    w: &[u32],
    mu: &[i64],
    beta_of: &impl Fn(usize, usize) -> Result<BigInt>,
) -> Result<(Vec<i64>, Vec<i64>)> {
    let k = w.len();
    let mut delta = vec![0i64; k];
    for j in 0..k {
        let b = beta_of(j, j)?
            .to_i64()
            .ok_or_else(|| bad("beta out of range"))?;
        delta[j] = mu[j] * mu[j] - 4 * b;
        if delta[j] < 0 {
            return Err(bad(format!("negative discriminant for leaf weight {}", w[j])));
        }
    }
    let mut l0 = vec![0i64; k];
    let mut l1 = vec![0i64; k];
    match (0..k).find(|&j| delta[j] != 0) {
        None => {
            for j in 0..k {
                if mu[j] % 2 != 0 {
                    return Err(bad("all discriminants vanish but a multiplicity is odd"));
                }
                l0[j] = mu[j] / 2;
                l1[j] = mu[j] / 2;
            }
        }
        Some(j1) => {
            let s = integer_sqrt(delta[j1])
                .ok_or_else(|| bad("discriminant is not a perfect square"))?;
            if (mu[j1] + s) % 2 != 0 || mu[j1] < s {
                return Err(bad("quadratic system has no integer solution"));
            }
            l0[j1] = (mu[j1] + s) / 2;
            l1[j1] = (mu[j1] - s) / 2;
            for j2 in 0..k {
                if j2 == j1 {
                    continue;
                }
                let b = beta_of(j1, j2)?
                    .to_i64()
                    .ok_or_else(|| bad("beta out of range"))?;
                let denom = l1[j1] - l0[j1];
                let num = b - l0[j1] * mu[j2];
                if denom == 0 || num % denom != 0 {
                    return Err(bad("linear system has no integer solution"));
                }
                l0[j2] = num / denom;
                l1[j2] = mu[j2] - l0[j2];
                if l0[j2] < 0 || l1[j2] < 0 {
                    return Err(bad("negative leaf count"));
                }
            }
        }
    }
    Ok((l0, l1))
}

fn integer_sqrt(x: i64) -> Option<i64> {
    let r = (x as f64).sqrt().round() as i64;
    for cand in r.saturating_sub(2)..=r + 2 {
        if cand >= 0 && cand * cand == x {
            return Some(cand);
        }
    }
    None
}

/// Reconstruct a weighted 2-star from its M-polynomial.
pub fn twostar_from_m(m: &ZPoly) -> Result<MarkedGraph> {
    let stats = stats_from_m(m)?;
    if stats.shape != TreeShape::TwoStar {
        return Err(bad("input is not the polynomial of a weighted 2-star"));
    }
    let (u0, u1) = center_pair(&stats)?;
    let (w, mu) = leaf_tally(&stats.leaf_weights);
    let (l0, l1) = if u0 != u1 {
        let alpha_of = |a: u32, b: u32| alpha_in(m, &stats.weights, a, b);
        solve_distinct_centers(u0, u1, &w, &mu, &alpha_of)?
    } else {
        let beta_of =
            |j1: usize, j2: usize| Ok(beta_in(m, &stats.weights, u0, w[j1], w[j2]));
        solve_equal_centers(&w, &mu, &beta_of)?
    };
    Ok(build_twostar(u0, u1, &w, &l0, &l1))
}

// ---- Reading the D-polynomial --------------------------------------------------

/// (N, n, weight multiset) of a strictly weighted tree from its
/// D-polynomial: N from the unique degree-1 term, n and the weights from
/// the unique top-degree term not divisible by z1.
pub fn top_and_degree_one_from_d(d: &ZPoly) -> Result<(u32, usize, Vec<u32>)> {
    if d.terms().any(|(mono, _)| mono.y_exp() > 0) {
        return Err(bad("tree D-polynomials have no y terms"));
    }
    let deg1: Vec<(&ZMonomial, &BigInt)> =
        d.terms().filter(|(mono, _)| mono.z_degree() == 1).collect();
    let [(mono1, c1)] = deg1.as_slice() else {
        return Err(bad("expected a unique degree-1 term"));
    };
    if !c1.is_one() {
        return Err(bad("degree-1 term must have coefficient 1"));
    }
    let total = mono1.expanded_marks()[0].w();
    let z1_free: Vec<(&ZMonomial, &BigInt)> = d
        .terms()
        .filter(|(mono, _)| mono.z1_exp() == 0)
        .collect();
    let top_degree = z1_free
        .iter()
        .map(|(mono, _)| mono.z_degree())
        .max()
        .ok_or_else(|| bad("no z1-free terms"))?;
    let top: Vec<_> = z1_free
        .iter()
        .filter(|(mono, _)| mono.z_degree() == top_degree)
        .collect();
    let [(mono_top, c_top)] = top.as_slice() else {
        return Err(bad("top z1-free term is not unique; input is not strictly weighted"));
    };
    if !c_top.is_one() {
        return Err(bad("top z1-free term must have coefficient 1"));
    }
    let mut weights: Vec<u32> = mono_top.expanded_marks().iter().map(Mark::w).collect();
    if weights.iter().any(|&w| w < 2) {
        return Err(bad("strictness violated: a weight below 2 appears"));
    }
    weights.sort_unstable_by(|a, b| b.cmp(a));
    if weights.iter().map(|&w| w as u64).sum::<u64>() != total as u64 {
        return Err(bad("weights do not sum to the total"));
    }
    Ok((total, top_degree as usize, weights))
}

/// The degree-2 layer of D: terms whose count of non-z1 factors is exactly
/// two. For strictly weighted trees this is the undotting of the degree-2
/// layer of M.
pub fn d2_layer(d: &ZPoly) -> ZPoly {
    let mut out = ZPoly::zero();
    for (mono, c) in d.terms() {
        if mono.z_degree() - mono.z1_exp() == 2 {
            out.add_term(mono.clone(), c.clone());
        }
    }
    out
}

/// The strict pairs whose `d_bullet` products sum to `d2`: the peel-off
/// loop takes the smallest `a0` with `[z[N-a0] z[a0]]` nonzero, the largest
/// `d0` with `[z[N-a0] z[a0-d0] z1^d0]` nonzero, subtracts the product of
/// bullets, and recurses until zero.
pub fn strict_pairs_from_d2(d2: &ZPoly, total: u32, n: usize) -> Result<Vec<(Mark, Mark)>> {
    let dots = n as i64 - 2;
    if dots < 0 {
        if d2.is_zero() {
            return Ok(Vec::new());
        }
        return Err(bad("degree-2 layer must vanish for n < 2"));
    }
    let mut q = d2.clone();
    let mut pairs = Vec::new();
    let mut budget = d2.coeff_abs_sum();
    while !q.is_zero() {
        let a0 = (1..=total / 2)
            .find(|&a| !q.coeff(&dotless_monomial(&[total - a, a])).is_zero())
            .ok_or_else(|| bad("peel-off found no z[N-a]z[a] term"))?;
        if a0 < 2 {
            return Err(bad("strictness violated in the degree-2 layer"));
        }
        let d0 = (0..=(a0 - 2).min(dots as u32))
            .rev()
            .find(|&d| {
                let mut ws = vec![total - a0, a0 - d];
                ws.extend(std::iter::repeat(1).take(d as usize));
                !q.coeff(&dotless_monomial(&ws)).is_zero()
            })
            .expect("d0 = 0 matches the a0 witness");
        let d_big = dots as u32;
        if d0 > d_big {
            return Err(bad("dot count out of range"));
        }
        let big = Mark::new(total - a0, d_big - d0)
            .map_err(|_| bad("peeled mark is invalid"))?;
        let small = Mark::new(a0, d0).map_err(|_| bad("peeled mark is invalid"))?;
        if !big.is_strict() || !small.is_strict() {
            return Err(bad("peeled pair is not strict"));
        }
        let product = d_bullet(big.w(), big.d())
            .unwrap()
            .mul(&d_bullet(small.w(), small.d()).unwrap());
        q = q.sub(&product);
        let next_budget = q.coeff_abs_sum();
        if next_budget >= budget {
            return Err(bad("peel-off is not converging; input is not a strict degree-2 layer"));
        }
        budget = next_budget;
        pairs.push((big, small));
    }
    Ok(pairs)
}

/// The degree-(n-1) layer of M, rebuilt from D: every partition of N into
/// n-1 parts >= 2 with a positive coefficient in D names a merged pair of
/// weights, contributing `a * z[u+v,1] * z_(W \ {u,v})`.
pub fn mdeg_n1_from_d(d: &ZPoly, total: u32, n: usize, weights: &[u32]) -> Result<ZPoly> {
    let mut out = ZPoly::zero();
    if n < 2 {
        return Ok(out);
    }
    for tau in partitions_with(total, n - 1, 2) {
        let c = d.coeff(&dotless_monomial(tau.parts()));
        if c.is_zero() {
            continue;
        }
        if c.is_negative() {
            return Err(bad("negative edge count in the degree-(n-1) layer"));
        }
        // tau = W with {u, v} replaced by u+v: split the count difference
        // into the surplus side (the merged weight) and the deficit side.
        let mut diff = counts(tau.parts());
        for &w in weights {
            *diff.entry(w).or_insert(0) -= 1;
        }
        let mut merged = Vec::new();
        let mut removed = Vec::new();
        for (&w, &k) in &diff {
            for _ in 0..k.abs() {
                if k > 0 {
                    merged.push(w);
                } else {
                    removed.push(w);
                }
            }
        }
        let [s] = merged.as_slice() else {
            return Err(bad("no consistent merged pair for a degree-(n-1) term"));
        };
        let [u, v] = removed.as_slice() else {
            return Err(bad("no consistent merged pair for a degree-(n-1) term"));
        };
        if u + v != *s {
            return Err(bad("merged pair does not sum correctly"));
        }
        let rest = multiset_sub(weights, &removed).expect("removed came from weights");
        let mut marks: Vec<Mark> = rest.iter().map(|&w| Mark::weight(w).unwrap()).collect();
        marks.push(Mark::new(*s, 1).expect("valid"));
        out.add_term(ZMonomial::from_marks(&marks), c);
    }
    Ok(out)
}

fn leaf_weights_from_pairs(pairs: &[(Mark, Mark)], n: usize) -> Result<Vec<u32>> {
    if pairs.len() != n.saturating_sub(1) {
        return Err(bad(format!(
            "degree-2 layer lists {} edges but the tree has {}",
            pairs.len(),
            n.saturating_sub(1)
        )));
    }
    let mut out = Vec::new();
    for (a, b) in pairs {
        for m in [a, b] {
            if m.d() == 0 {
                out.push(m.w());
            }
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    Ok(out)
}

/// Reconstruct a strictly weighted star from its D-polynomial.
pub fn star_from_d(d: &ZPoly) -> Result<MarkedGraph> {
    let stats = stats_from_d(d)?;
    star_from_stats(&stats)
}

/// The same statistics as [`stats_from_m`], but recovered from D.
pub fn stats_from_d(d: &ZPoly) -> Result<TreeStats> {
    let (total, n, weights) = top_and_degree_one_from_d(d)?;
    let leaf_weights = if n <= 2 {
        weights.clone()
    } else {
        let pairs = strict_pairs_from_d2(&d2_layer(d), total, n)?;
        leaf_weights_from_pairs(&pairs, n)?
    };
    let shape = classify(n, leaf_weights.len());
    Ok(TreeStats {
        n,
        total_weight: total,
        weights,
        leaf_weights,
        shape,
    })
}

/// Reconstruct a strictly weighted 2-star from its D-polynomial.
pub fn twostar_from_d(d: &ZPoly) -> Result<MarkedGraph> {
    let stats = stats_from_d(d)?;
    if stats.shape != TreeShape::TwoStar {
        return Err(bad("input is not the D-polynomial of a weighted 2-star"));
    }
    let (u0, u1) = center_pair(&stats)?;
    let (w, mu) = leaf_tally(&stats.leaf_weights);
    let (l0, l1) = if u0 != u1 {
        let m_layer = mdeg_n1_from_d(d, stats.total_weight, stats.n, &stats.weights)?;
        let alpha_of = |a: u32, b: u32| alpha_in(&m_layer, &stats.weights, a, b);
        solve_distinct_centers(u0, u1, &w, &mu, &alpha_of)?
    } else {
        let ctx = EqualCenterContext {
            d,
            weights: &stats.weights,
            u0,
            w: &w,
            mu: &mu,
            j3: w.iter().position(|&x| x == u0),
        };
        let beta_of = |j1: usize, j2: usize| ctx.beta(j1, j2);
        solve_equal_centers(&w, &mu, &beta_of)?
    };
    Ok(build_twostar(u0, u1, &w, &l0, &l1))
}

/// Coefficient extraction context for equal-center 2-stars: beta values come
/// from D-coefficients corrected by the shared-vertex counts K.
struct EqualCenterContext<'a> {
    d: &'a ZPoly,
    weights: &'a [u32],
    u0: u32,
    w: &'a [u32],
    mu: &'a [i64],
    /// Index of the leaf weight equal to the center weight, if any.
    j3: Option<usize>,
}

impl EqualCenterContext<'_> {
    /// `[z_(W(j1,j2))] D`: the coefficient of the partition obtained by
    /// merging u0 with w[j1] and u0 with w[j2]. Zero when W lacks copies.
    fn coeff_w(&self, j1: usize, j2: usize) -> BigInt {
        let Some(rest) = multiset_sub(self.weights, &[self.u0, self.u0, self.w[j1], self.w[j2]])
        else {
            return BigInt::zero();
        };
        let mut ws = rest;
        ws.push(self.u0 + self.w[j1]);
        ws.push(self.u0 + self.w[j2]);
        self.d.coeff(&dotless_monomial(&ws))
    }

    /// β(u0, w[j1], w[j2]) recovered from D. The correction K counts
    /// shared-vertex edge pairs that produce the same partition, which only
    /// exist when one weight is the other plus u0.
    fn beta(&self, j1: usize, j2: usize) -> Result<BigInt> {
        if multiset_sub(self.weights, &[self.u0, self.u0, self.w[j1], self.w[j2]]).is_none() {
            return Ok(BigInt::zero());
        }
        let base = self.coeff_w(j1, j2);
        let k = if self.w[j1] == self.u0 + self.w[j2] {
            self.k_shared(j2)?
        } else if self.w[j2] == self.u0 + self.w[j1] {
            self.k_shared(j1)?
        } else {
            BigInt::zero()
        };
        Ok(base - k)
    }

    /// K: pairs of edges sharing a center whose other endpoints have weights
    /// {u0, w[j_small]}: the central edge with a w[j_small]-leaf pendant,
    /// plus same-center leaf pairs counted as total minus different-center.
    fn k_shared(&self, j_small: usize) -> Result<BigInt> {
        let mut k = BigInt::from(self.mu[j_small]);
        if let Some(j3) = self.j3 {
            let total = if j3 == j_small {
                BigInt::from(self.mu[j3] * (self.mu[j3] - 1) / 2)
            } else {
                BigInt::from(self.mu[j3] * self.mu[j_small])
            };
            k += total - self.beta(j3, j_small)?;
        }
        Ok(k)
    }
}

// ---- End to end: from the chromatic symmetric function --------------------------

/// Rebuild the D-polynomial of a tree's core from a star-basis chromatic
/// symmetric function (st_λ coefficients become z_λ coefficients).
pub fn csf_to_core_d(x: &SymFn) -> Result<ZPoly> {
    if x.basis() != Basis::Star {
        return Err(bad("expected a star-basis symmetric function"));
    }
    let mut d = ZPoly::zero();
    for (idx, c) in x.terms() {
        d.add_term(dotless_monomial(idx.parts()), c.clone());
    }
    Ok(d)
}

/// Recover an unweighted tree from its chromatic symmetric function in the
/// star basis, for proper trees of diameter at most 5: classify the core as
/// a star or 2-star from the degree-2 layer, reconstruct it from D, and
/// undo the core.
pub fn tree_from_csf_star(x: &SymFn) -> Result<MarkedGraph> {
    // Pure stars first: X = st_w is the whole-star core (w, 0).
    let terms: Vec<_> = x.terms().collect();
    if let [(idx, c)] = terms.as_slice() {
        if c.is_one() && idx.len() == 1 {
            let core = MarkedGraph::weighted(&[idx.parts()[0]], vec![]).unwrap();
            return core.uncore();
        }
    }
    let d = csf_to_core_d(x)?;
    let stats = stats_from_d(&d)?;
    let core = match stats.shape {
        TreeShape::Star => star_from_d(&d)?,
        TreeShape::TwoStar => twostar_from_d(&d)?,
        TreeShape::Other => {
            return Err(bad(
                "chromatic symmetric function is outside the diameter-5 proper tree family",
            ))
        }
    };
    core.uncore()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::mark_isomorphic;
    use crate::invariants::{d_poly, m_poly};
    use crate::star_expansion::dnc_expand;

    #[test]
    fn stats_of_path_412() {
        let g = MarkedGraph::weighted_path(&[4, 1, 2]).unwrap();
        let stats = stats_from_m(&m_poly(&g)).unwrap();
        assert_eq!(stats.n, 3);
        assert_eq!(stats.total_weight, 7);
        assert_eq!(stats.weights, vec![4, 2, 1]);
        assert_eq!(stats.leaf_weights, vec![4, 2]);
        assert_eq!(stats.shape, TreeShape::Star);
    }

    #[test]
    fn stats_of_single_vertex() {
        let g = MarkedGraph::weighted(&[9], vec![]).unwrap();
        let stats = stats_from_m(&m_poly(&g)).unwrap();
        assert_eq!((stats.n, stats.total_weight), (1, 9));
        assert_eq!(stats.shape, TreeShape::Star);
    }

    #[test]
    fn stats_complete_on_assorted_trees() {
        // A 6-vertex tree with two adjacent internal vertices (a 2-star).
        let g = MarkedGraph::weighted(
            &[3, 1, 2, 5, 1, 4],
            vec![(0, 1), (1, 2), (2, 3), (2, 4), (2, 5)],
        )
        .unwrap();
        let stats = stats_from_m(&m_poly(&g)).unwrap();
        assert_eq!(stats.n, 6);
        assert_eq!(stats.total_weight, 16);
        assert_eq!(stats.weights, vec![5, 4, 3, 2, 1, 1]);
        assert_eq!(stats.leaf_weights, vec![5, 4, 3, 1]);
        assert_eq!(stats.shape, TreeShape::TwoStar);
        // A weighted path on 5 vertices has three internal vertices: Other.
        let p5 = MarkedGraph::weighted_path(&[2, 3, 4, 3, 2]).unwrap();
        assert_eq!(stats_from_m(&m_poly(&p5)).unwrap().shape, TreeShape::Other);
    }

    #[test]
    fn alpha_and_beta_on_path() {
        let g = MarkedGraph::weighted_path(&[4, 1, 2]).unwrap();
        let m = m_poly(&g);
        assert_eq!(alpha(&m, 4, 1).unwrap(), BigInt::one());
        assert_eq!(alpha(&m, 1, 2).unwrap(), BigInt::one());
        assert_eq!(alpha(&m, 4, 2).unwrap(), BigInt::zero());
        // Insufficient multiplicity means beta = 0 by definition.
        assert_eq!(beta(&m, 4, 4, 2).unwrap(), BigInt::zero());
    }

    #[test]
    fn beta_counts_independent_pairs() {
        // 2-star: centers 2,2; leaves {3} and {3,4}.
        let g = build_twostar(2, 2, &[4, 3], &[0, 1], &[1, 1]);
        let m = m_poly(&g);
        assert_eq!(beta(&m, 2, 3, 3).unwrap(), BigInt::one());
        assert_eq!(beta(&m, 2, 3, 4).unwrap(), BigInt::one());
        assert_eq!(beta(&m, 2, 4, 4).unwrap(), BigInt::zero());
    }

    #[test]
    fn star_roundtrip_from_m() {
        for (center, leaves) in [(3u32, vec![2u32, 2, 5]), (1, vec![4, 1]), (2, vec![])] {
            let star = build_star(center, &leaves);
            let rec = star_from_m(&m_poly(&star)).unwrap();
            assert!(mark_isomorphic(&star, &rec).unwrap());
        }
    }

    #[test]
    fn twostar_roundtrip_from_m_distinct_and_equal() {
        let cases = [
            build_twostar(2, 3, &[4, 2], &[1, 0], &[1, 2]),
            build_twostar(2, 2, &[3], &[1], &[2]),
            // Symmetric instance: all discriminants vanish.
            build_twostar(3, 3, &[2], &[2], &[2]),
            // Leaf weights colliding with center weights.
            build_twostar(2, 3, &[3, 2], &[1, 1], &[2, 0]),
            build_twostar(4, 4, &[4, 2], &[1, 1], &[2, 1]),
        ];
        for t in cases {
            let rec = twostar_from_m(&m_poly(&t)).unwrap();
            assert!(
                mark_isomorphic(&t, &rec).unwrap(),
                "failed on {t:?} -> {rec:?}"
            );
        }
    }

    #[test]
    fn paper_n12_star_from_d() {
        // D with total weight 12, weights {2,3,3,4}: a star with center 2.
        let star = build_star(2, &[3, 3, 4]);
        let d = d_poly(&star);
        // Headline reads.
        let (total, n, weights) = top_and_degree_one_from_d(&d).unwrap();
        assert_eq!((total, n), (12, 4));
        assert_eq!(weights, vec![4, 3, 3, 2]);
        // 3^(n-1) coefficient mass for a strictly weighted tree.
        assert_eq!(d.coeff_abs_sum(), BigInt::from(27));
        // The strict-pair peel: ((9,2),(3,0)) with multiplicity 2 and
        // ((8,2),(4,0)); dot totals are n-2 per pair, and expanding these
        // bullets reproduces the displayed D2 layer exactly.
        let pairs = strict_pairs_from_d2(&d2_layer(&d), total, n).unwrap();
        let mk = |w, d| Mark::new(w, d).unwrap();
        assert_eq!(
            pairs,
            vec![
                (mk(9, 2), mk(3, 0)),
                (mk(9, 2), mk(3, 0)),
                (mk(8, 2), mk(4, 0))
            ]
        );
        let rebuilt = d_bullet(9, 2)
            .unwrap()
            .mul(&d_bullet(3, 0).unwrap())
            .scale(&BigInt::from(2))
            .add(&d_bullet(8, 2).unwrap().mul(&d_bullet(4, 0).unwrap()));
        assert_eq!(rebuilt, d2_layer(&d));
        let rec = star_from_d(&d).unwrap();
        assert!(mark_isomorphic(&star, &rec).unwrap());
    }

    #[test]
    fn paper_n28_twostar_from_d() {
        // Centers of weight 2 with leaves {6,5,3} and {2,3,4}.
        let t = build_twostar(2, 2, &[6, 5, 4, 3, 2], &[1, 1, 0, 1, 0], &[0, 0, 1, 1, 1]);
        let d = d_poly(&t);
        // Spot-check displayed coefficients of the paper's D2 layer.
        let coeff = |ws: &[u32], z1: usize| {
            let mut all = ws.to_vec();
            all.extend(std::iter::repeat(1).take(z1));
            d.coeff(&dotless_monomial(&all))
        };
        assert_eq!(coeff(&[8, 13], 6), BigInt::from(1));
        assert_eq!(coeff(&[9, 13], 5), BigInt::from(-3));
        assert_eq!(coeff(&[3, 22], 2), BigInt::from(30));
        assert_eq!(coeff(&[2, 25], 0), BigInt::from(1));
        assert_eq!(coeff(&[3, 24], 0), BigInt::from(2));
        let rec = twostar_from_d(&d).unwrap();
        assert!(mark_isomorphic(&t, &rec).unwrap());
    }

    #[test]
    fn mdeg_n1_matches_m() {
        let t = build_twostar(2, 3, &[4, 3], &[1, 0], &[1, 1]);
        let m = m_poly(&t);
        let d = d_poly(&t);
        let stats = stats_from_m(&m).unwrap();
        let layer = mdeg_n1_from_d(&d, stats.total_weight, stats.n, &stats.weights).unwrap();
        // Compare against the true degree-(n-1) terms of M.
        let mut expect = ZPoly::zero();
        for (mono, c) in m.terms() {
            if mono.z_degree() as usize == stats.n - 1 {
                expect.add_term(mono.clone(), c.clone());
            }
        }
        assert_eq!(layer, expect);
    }

    #[test]
    fn single_strict_edge_layers() {
        let t = MarkedGraph::weighted_path(&[5, 3]).unwrap();
        let d = d_poly(&t);
        let (total, n, weights) = top_and_degree_one_from_d(&d).unwrap();
        assert_eq!((total, n, weights), (8, 2, vec![5, 3]));
        let layer = mdeg_n1_from_d(&d, total, n, &[5, 3]).unwrap();
        assert_eq!(layer, ZPoly::var(Mark::new(8, 1).unwrap()));
        let rec = star_from_d(&d).unwrap();
        assert!(mark_isomorphic(&t, &rec).unwrap());
    }

    #[test]
    fn empty_d2_peels_to_nothing() {
        assert!(strict_pairs_from_d2(&ZPoly::zero(), 9, 1)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn spider_roundtrip_from_csf() {
        let core = MarkedGraph::weighted_path(&[4, 3, 2]).unwrap();
        let spider = core.uncore().unwrap();
        let x = dnc_expand(&spider).unwrap();
        let rec = tree_from_csf_star(&x).unwrap();
        assert!(mark_isomorphic(&spider, &rec).unwrap());
    }

    #[test]
    fn pure_star_csf() {
        for w in 1u32..=6 {
            let x = SymFn::generator(Basis::Star, w);
            let rec = tree_from_csf_star(&x).unwrap();
            let star = MarkedGraph::unweighted(w, (1..w).map(|i| (0, i)));
            assert!(mark_isomorphic(&star, &rec).unwrap());
        }
    }

    #[test]
    fn rejects_out_of_family() {
        // P6 is not proper, its core is a path on 4 vertices: shape Other.
        let p6 = MarkedGraph::unweighted(6, (1..6).map(|i| (i - 1, i)));
        let x = dnc_expand(&p6).unwrap();
        assert!(tree_from_csf_star(&x).is_err());
    }
}
