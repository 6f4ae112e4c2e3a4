//! Symmetric functions in the power-sum and star bases, with exact
//! integer coefficients, plus the brute-force chromatic oracles.
//!
//! Both bases are multiplicative (`p_λ = Π p_{λ_i}`, `st_λ = Π st_{λ_i}`), so
//! a function is a sparse integer combination of partitions tagged with its
//! basis. The change of basis expands generator by generator through
//!
//! ```text
//! st_{n+1} = Σ_{r=0..n} (-1)^r C(n,r) p_{(r+1,1^{n-r})}
//! ```
//!
//! and the mirror identity with `p` and `st` exchanged; the transition is a
//! linear involution.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::MarkedGraph;
use crate::partition::IntPartition;
use crate::util::{binomial, subsets_budget};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    Power,
    Star,
}

impl Basis {
    pub fn tag(&self) -> &'static str {
        match self {
            Basis::Power => "p",
            Basis::Star => "st",
        }
    }
}

/// A basis-tagged sparse symmetric function with `BigInt` coefficients.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct SymFn {
    basis: Basis,
    terms: BTreeMap<IntPartition, BigInt>,
}

impl SymFn {
    pub fn zero(basis: Basis) -> SymFn {
        SymFn {
            basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(basis: Basis) -> SymFn {
        SymFn::monomial(basis, IntPartition::empty(), BigInt::one())
    }

    pub fn monomial(basis: Basis, idx: IntPartition, coeff: BigInt) -> SymFn {
        let mut f = SymFn::zero(basis);
        f.add_term(idx, coeff);
        f
    }

    /// The generator st_k or p_k.
    pub fn generator(basis: Basis, k: u32) -> SymFn {
        SymFn::monomial(basis, IntPartition::single(k), BigInt::one())
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IntPartition, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, idx: &IntPartition) -> BigInt {
        self.terms.get(idx).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, idx: IntPartition, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(idx) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &SymFn) -> SymFn {
        assert_eq!(self.basis, other.basis, "basis mismatch");
        let mut out = self.clone();
        for (idx, c) in &other.terms {
            out.add_term(idx.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SymFn) -> SymFn {
        assert_eq!(self.basis, other.basis, "basis mismatch");
        let mut out = self.clone();
        for (idx, c) in &other.terms {
            out.add_term(idx.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> SymFn {
        let mut out = SymFn::zero(self.basis);
        for (idx, c) in &self.terms {
            out.add_term(idx.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &SymFn) -> SymFn {
        assert_eq!(self.basis, other.basis, "basis mismatch");
        let mut out = SymFn::zero(self.basis);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.concat(b), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> SymFn {
        let mut out = SymFn::zero(self.basis);
        for (idx, c) in &self.terms {
            out.add_term(idx.clone(), c * k);
        }
        out
    }

    /// Substitute p_i = x (or st_i = x) for every i; this is the principal
    /// specialization hook used to cross-check the chromatic polynomial.
    pub fn eval_all_generators(&self, x: &BigInt) -> BigInt {
        let mut total = BigInt::zero();
        for (idx, c) in &self.terms {
            let mut v = c.clone();
            for _ in 0..idx.len() {
                v *= x;
            }
            total += v;
        }
        total
    }

    /// Terms in canonical display order (degree desc, partition lex desc).
    pub fn sorted_terms(&self) -> Vec<(IntPartition, BigInt)> {
        let mut v: Vec<(IntPartition, BigInt)> = self
            .terms
            .iter()
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        v.sort_by(|(a, _), (b, _)| a.display_cmp(b));
        v
    }

    /// Parse the canonical text form, e.g. `2*st[4] - 2*st[3,1] + 1*st[2,2]`.
    pub fn parse(s: &str) -> Result<SymFn> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty symmetric function".into()));
        }
        if s == "0" {
            // The basis is unknowable from "0"; default to star, which is
            // what every CLI consumer of this parser expects.
            return Ok(SymFn::zero(Basis::Star));
        }
        let mut basis: Option<Basis> = None;
        let mut out: Option<SymFn> = None;
        for (sign, term) in split_signed_terms(s)? {
            let (coeff_str, rest) = term
                .split_once('*')
                .ok_or_else(|| Error::Parse(format!("term {term:?} lacks coeff*basis form")))?;
            let coeff: BigInt = coeff_str
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("bad coefficient {coeff_str:?}: {e}")))?;
            let rest = rest.trim();
            let (b, idx_str) = if let Some(t) = rest.strip_prefix("st") {
                (Basis::Star, t)
            } else if let Some(t) = rest.strip_prefix('p') {
                (Basis::Power, t)
            } else {
                return Err(Error::Parse(format!("unknown basis in {rest:?}")));
            };
            match basis {
                None => basis = Some(b),
                Some(prev) if prev != b => {
                    return Err(Error::Parse("mixed bases in one expression".into()))
                }
                _ => {}
            }
            let idx = IntPartition::parse_bracketed(idx_str.trim())?;
            let f = out.get_or_insert_with(|| SymFn::zero(b));
            f.add_term(idx, if sign { coeff } else { -coeff });
        }
        out.ok_or_else(|| Error::Parse("no terms".into()))
    }
}

/// Split "a - b + c" into (+,a), (-,b), (+,c) (true = plus).
fn split_signed_terms(s: &str) -> Result<Vec<(bool, String)>> {
    let mut out = Vec::new();
    let mut sign = true;
    let mut cur = String::new();
    let mut depth = 0i32;
    let mut started = false;
    for ch in s.chars() {
        match ch {
            '[' => {
                depth += 1;
                cur.push(ch);
                started = true;
            }
            ']' => {
                depth -= 1;
                cur.push(ch);
            }
            '+' | '-' if depth == 0 && started => {
                if !cur.trim().is_empty() {
                    out.push((sign, cur.trim().to_string()));
                }
                cur = String::new();
                sign = ch == '+';
                started = false;
            }
            '-' if depth == 0 && !started && cur.trim().is_empty() => {
                sign = !sign;
            }
            c if c.is_whitespace() && !started => {}
            _ => {
                cur.push(ch);
                started = true;
            }
        }
    }
    if !cur.trim().is_empty() {
        out.push((sign, cur.trim().to_string()));
    }
    if out.is_empty() {
        return Err(Error::Parse("no terms found".into()));
    }
    Ok(out)
}

impl fmt::Display for SymFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (idx, c)) in self.sorted_terms().iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{}*{}{}", mag, self.basis.tag(), idx)?;
        }
        Ok(())
    }
}

impl fmt::Debug for SymFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// ---- Basis change ---------------------------------------------------------

/// Expansion of the degree-k generator of one basis in the other basis; the
/// coefficients are the same in both directions.
fn generator_expansion(target: Basis, k: u32) -> SymFn {
    let n = k - 1;
    let mut out = SymFn::zero(target);
    for r in 0..=n {
        let sign = if r % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        out.add_term(
            IntPartition::hook(r + 1, (n - r) as usize),
            sign * binomial(n as u64, r as u64),
        );
    }
    out
}

fn change_basis(f: &SymFn, from: Basis, to: Basis) -> SymFn {
    assert_eq!(f.basis(), from, "basis mismatch");
    let mut out = SymFn::zero(to);
    for (idx, c) in f.terms() {
        let mut prod = SymFn::one(to);
        for &part in idx.parts() {
            prod = prod.mul(&generator_expansion(to, part));
        }
        out = out.add(&prod.scale(c));
    }
    out
}

/// Expand a star-basis function in the power-sum basis.
pub fn st_to_p(f: &SymFn) -> SymFn {
    change_basis(f, Basis::Star, Basis::Power)
}

/// Expand a power-sum-basis function in the star basis.
pub fn p_to_st(f: &SymFn) -> SymFn {
    change_basis(f, Basis::Power, Basis::Star)
}

// ---- Chromatic oracles ------------------------------------------------------

pub const SUBSET_BUDGET: usize = 22;

/// Power-sum expansion of the (weighted) chromatic symmetric function by the
/// edge-subset sum `X = Σ_{A ⊆ E} (-1)^{|A|} p_{λ(A)}`, with parts given by
/// total component weights. Loopy graphs give zero. Exponential in `|E|`.
pub fn csf_power(g: &MarkedGraph) -> Result<SymFn> {
    csf_power_with_budget(g, SUBSET_BUDGET)
}

pub fn csf_power_with_budget(g: &MarkedGraph, budget: usize) -> Result<SymFn> {
    subsets_budget(g.num_edges(), budget)?;
    let mut out = SymFn::zero(Basis::Power);
    if g.has_loop() {
        return Ok(out);
    }
    let ids: Vec<_> = g.edges().iter().map(|e| e.id).collect();
    let mut subset = Vec::new();
    for mask in 0u64..(1u64 << ids.len()) {
        subset.clear();
        for (i, &id) in ids.iter().enumerate() {
            if mask >> i & 1 == 1 {
                subset.push(id);
            }
        }
        let comps = g.components_of(&subset)?;
        let parts: Vec<u32> = comps
            .iter()
            .map(|c| c.iter().map(|v| g.mark(*v).unwrap().w()).sum())
            .collect();
        let sign = if subset.len() % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        out.add_term(IntPartition::new(parts), sign);
    }
    Ok(out)
}

/// Number of proper k-colorings, via the Whitney rank expansion
/// `χ_G(k) = Σ_{A ⊆ E} (-1)^{|A|} k^{c(A)}`. Marks are ignored.
pub fn chromatic_poly_eval(g: &MarkedGraph, k: u64) -> Result<BigInt> {
    subsets_budget(g.num_edges(), SUBSET_BUDGET)?;
    if g.has_loop() {
        return Ok(BigInt::zero());
    }
    let ids: Vec<_> = g.edges().iter().map(|e| e.id).collect();
    let kk = BigInt::from(k);
    let mut total = BigInt::zero();
    let mut subset = Vec::new();
    for mask in 0u64..(1u64 << ids.len()) {
        subset.clear();
        for (i, &id) in ids.iter().enumerate() {
            if mask >> i & 1 == 1 {
                subset.push(id);
            }
        }
        let comps = g.components_of(&subset)?.len();
        let mut pow = BigInt::one();
        for _ in 0..comps {
            pow *= &kk;
        }
        if subset.len() % 2 == 0 {
            total += pow;
        } else {
            total -= pow;
        }
    }
    Ok(total)
}

/// Truncated monomial table in `nvars` variables: exponent vector -> coeff.
pub type MonomialTable = BTreeMap<Vec<u32>, BigInt>;

/// Weighted chromatic symmetric function by direct enumeration of proper
/// colorings with colors `1..=nvars`. The independent oracle for the
/// specialization identity `X = (-1)^{|V|} W(z_i = -p_i, y = 0)`.
pub fn weighted_csf(g: &MarkedGraph, nvars: usize) -> Result<MonomialTable> {
    if !g.is_weighted_only() {
        return Err(Error::DottedMark);
    }
    let n = g.n();
    let states = (nvars as u128).pow(n as u32);
    if states > 4_000_000 {
        return Err(Error::BudgetExceeded {
            what: "colorings",
            actual: states.min(usize::MAX as u128) as usize,
            limit: 4_000_000,
        });
    }
    let mut out = MonomialTable::new();
    if g.has_loop() {
        return Ok(out);
    }
    let verts: Vec<_> = g.vertices().collect();
    let index: BTreeMap<_, _> = verts.iter().enumerate().map(|(i, (v, _))| (*v, i)).collect();
    let mut coloring = vec![0usize; n];
    loop {
        let proper = g
            .edges()
            .iter()
            .all(|e| coloring[index[&e.u]] != coloring[index[&e.v]]);
        if proper {
            let mut expo = vec![0u32; nvars];
            for (i, (_, m)) in verts.iter().enumerate() {
                expo[coloring[i]] += m.w();
            }
            *out.entry(expo).or_insert_with(BigInt::zero) += 1;
        }
        // Odometer step.
        let mut i = 0;
        loop {
            if i == n {
                return Ok(out);
            }
            coloring[i] += 1;
            if coloring[i] < nvars {
                break;
            }
            coloring[i] = 0;
            i += 1;
        }
    }
}

/// Expand a power-sum symmetric function into the same truncated monomial
/// table, for comparison against [`weighted_csf`].
pub fn power_to_monomials(f: &SymFn, nvars: usize) -> MonomialTable {
    assert_eq!(f.basis(), Basis::Power);
    let mut out = MonomialTable::new();
    for (idx, c) in f.terms() {
        // Π_i p_{λ_i} expanded over variable choices.
        let mut table: MonomialTable = MonomialTable::new();
        table.insert(vec![0; nvars], BigInt::one());
        for &part in idx.parts() {
            let mut next = MonomialTable::new();
            for (expo, coeff) in &table {
                for v in 0..nvars {
                    let mut e2 = expo.clone();
                    e2[v] += part;
                    *next.entry(e2).or_insert_with(BigInt::zero) += coeff;
                }
            }
            table = next;
        }
        for (expo, coeff) in table {
            *out.entry(expo).or_insert_with(BigInt::zero) += coeff * c;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}
