//! Sparse exact polynomials in the doubly indexed indeterminates `z[w,d]`
//! and `y`, the carrier for the M-, W-, D- and V-style invariants.
//!
//! Monomial keys are canonically ordered mark lists, coefficients are
//! `BigInt`, and zero coefficients are never stored. The text format is
//! `c*y^k*z[w,d]^e*...` with `d` and `^1` elided when zero/one; terms are
//! sorted by total z-degree descending, then lexicographically on keys.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::mark::Mark;
use crate::partition::IntPartition;
use crate::symfunc::{Basis, SymFn};
use crate::util::binomial;

/// A product of `z[w,d]` powers and a power of `y`. Factors are stored
/// sorted descending by `(w, d)` with positive exponents.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZMonomial {
    factors: Vec<(Mark, u32)>,
    y_exp: u32,
}

impl ZMonomial {
    pub fn one() -> ZMonomial {
        ZMonomial {
            factors: Vec::new(),
            y_exp: 0,
        }
    }

    pub fn var(m: Mark) -> ZMonomial {
        ZMonomial {
            factors: vec![(m, 1)],
            y_exp: 0,
        }
    }

    pub fn y(k: u32) -> ZMonomial {
        ZMonomial {
            factors: Vec::new(),
            y_exp: k,
        }
    }

    pub fn from_marks(marks: &[Mark]) -> ZMonomial {
        let mut sorted = marks.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let mut factors: Vec<(Mark, u32)> = Vec::new();
        for m in sorted {
            match factors.last_mut() {
                Some((last, e)) if *last == m => *e += 1,
                _ => factors.push((m, 1)),
            }
        }
        ZMonomial { factors, y_exp: 0 }
    }

    pub fn factors(&self) -> &[(Mark, u32)] {
        &self.factors
    }

    pub fn y_exp(&self) -> u32 {
        self.y_exp
    }

    /// Total degree in the z variables.
    pub fn z_degree(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    pub fn mul(&self, other: &ZMonomial) -> ZMonomial {
        let mut marks: Vec<Mark> = Vec::with_capacity((self.z_degree() + other.z_degree()) as usize);
        for &(m, e) in self.factors.iter().chain(other.factors.iter()) {
            for _ in 0..e {
                marks.push(m);
            }
        }
        let mut out = ZMonomial::from_marks(&marks);
        out.y_exp = self.y_exp + other.y_exp;
        out
    }

    /// The marks with multiplicity, largest first.
    pub fn expanded_marks(&self) -> Vec<Mark> {
        let mut out = Vec::with_capacity(self.z_degree() as usize);
        for &(m, e) in &self.factors {
            for _ in 0..e {
                out.push(m);
            }
        }
        out
    }

    /// Exponent of `z[1,0]` (equivalently `z_1`) in this monomial.
    pub fn z1_exp(&self) -> u32 {
        self.factors
            .iter()
            .find(|(m, _)| *m == Mark::UNIT)
            .map_or(0, |&(_, e)| e)
    }

    pub fn all_dots_zero(&self) -> bool {
        self.factors.iter().all(|(m, _)| m.d() == 0)
    }

    /// Display order: z-degree descending, then factor lists compared with
    /// larger leading variables first, then y ascending.
    fn display_cmp(&self, other: &ZMonomial) -> std::cmp::Ordering {
        other
            .z_degree()
            .cmp(&self.z_degree())
            .then_with(|| other.factors.cmp(&self.factors))
            .then_with(|| self.y_exp.cmp(&other.y_exp))
    }
}

impl fmt::Display for ZMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if self.y_exp > 0 {
            write!(f, "y")?;
            if self.y_exp > 1 {
                write!(f, "^{}", self.y_exp)?;
            }
            first = false;
        }
        for &(m, e) in &self.factors {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if m.d() == 0 {
                write!(f, "z[{}]", m.w())?;
            } else {
                write!(f, "z[{},{}]", m.w(), m.d())?;
            }
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ZMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Sparse polynomial: monomial -> nonzero `BigInt` coefficient.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ZPoly {
    terms: BTreeMap<ZMonomial, BigInt>,
}

impl ZPoly {
    pub fn zero() -> ZPoly {
        ZPoly::default()
    }

    pub fn one() -> ZPoly {
        ZPoly::monomial(ZMonomial::one(), BigInt::one())
    }

    pub fn constant(c: i64) -> ZPoly {
        ZPoly::monomial(ZMonomial::one(), BigInt::from(c))
    }

    pub fn var(m: Mark) -> ZPoly {
        ZPoly::monomial(ZMonomial::var(m), BigInt::one())
    }

    /// The variable `z_w = z[w,0]`.
    pub fn zw(w: u32) -> ZPoly {
        ZPoly::var(Mark::weight(w).expect("positive weight"))
    }

    pub fn y() -> ZPoly {
        ZPoly::monomial(ZMonomial::y(1), BigInt::one())
    }

    pub fn monomial(m: ZMonomial, c: BigInt) -> ZPoly {
        let mut p = ZPoly::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_marks(marks: &[Mark]) -> ZPoly {
        ZPoly::monomial(ZMonomial::from_marks(marks), BigInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ZMonomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &ZMonomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, m: ZMonomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
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

    pub fn add(&self, other: &ZPoly) -> ZPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &ZPoly) -> ZPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> ZPoly {
        let mut out = ZPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &ZPoly) -> ZPoly {
        let mut out = ZPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> ZPoly {
        let mut out = ZPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * k);
        }
        out
    }

    pub fn mul_y(&self) -> ZPoly {
        let mut out = ZPoly::zero();
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            m2.y_exp += 1;
            out.add_term(m2, c.clone());
        }
        out
    }

    /// Substitute a numeric value for `y` (used at `y = 0` a lot).
    pub fn eval_y(&self, y: i64) -> ZPoly {
        let y = BigInt::from(y);
        let mut out = ZPoly::zero();
        for (m, c) in &self.terms {
            let mut factor = BigInt::one();
            for _ in 0..m.y_exp {
                factor *= &y;
            }
            let mut m2 = m.clone();
            m2.y_exp = 0;
            out.add_term(m2, c * factor);
        }
        out
    }

    /// Maximum total z-degree, or 0 for the zero polynomial.
    pub fn z_degree(&self) -> u32 {
        self.terms.keys().map(ZMonomial::z_degree).max().unwrap_or(0)
    }

    /// Sum of the absolute values of all coefficients.
    pub fn coeff_abs_sum(&self) -> BigInt {
        let mut total = BigInt::zero();
        for c in self.terms.values() {
            total += c.abs();
        }
        total
    }

    /// Apply a per-variable substitution `z[w,d] -> image(w, d)`; a ring
    /// homomorphism fixing `y`.
    pub fn substitute(&self, image: &mut impl FnMut(Mark) -> ZPoly) -> ZPoly {
        let mut out = ZPoly::zero();
        for (m, c) in &self.terms {
            let mut prod = ZPoly::monomial(ZMonomial::y(m.y_exp), c.clone());
            for &(mark, e) in m.factors() {
                let img = image(mark);
                for _ in 0..e {
                    prod = prod.mul(&img);
                }
            }
            out = out.add(&prod);
        }
        out
    }

    /// Terms in canonical display order.
    pub fn sorted_terms(&self) -> Vec<(ZMonomial, BigInt)> {
        let mut v: Vec<(ZMonomial, BigInt)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        v.sort_by(|(a, _), (b, _)| a.display_cmp(b));
        v
    }

    pub fn parse(s: &str) -> Result<ZPoly> {
        parse_zpoly(s)
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.sorted_terms().iter().enumerate() {
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
            write!(f, "{mag}*{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// ---- The undotting substitution and friends ---------------------------------

/// `D_bullet(w, d) = Σ_{i=0..d} (-1)^i C(d,i) z[w-i] z[1]^i`, the
/// D-polynomial of the one-vertex graph with mark `(w, d)`.
pub fn d_bullet(w: u32, d: u32) -> Result<ZPoly> {
    let _ = Mark::new(w, d)?;
    let mut out = ZPoly::zero();
    for i in 0..=d {
        let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        let mut marks = vec![Mark::weight(w - i).expect("w - i >= 1")];
        for _ in 0..i {
            marks.push(Mark::UNIT);
        }
        out.add_term(
            ZMonomial::from_marks(&marks),
            sign * binomial(d as u64, i as u64),
        );
    }
    Ok(out)
}

/// Replace every `z[w,d]` by `d_bullet(w, d)`. Afterwards only `z[.,0]`
/// variables (and `y`) remain. A ring homomorphism.
pub fn undot(f: &ZPoly) -> ZPoly {
    f.substitute(&mut |m| d_bullet(m.w(), m.d()).expect("marks in a ZPoly are valid"))
}

/// Replace every `z[w,d]` by `z[w,0]` (the dot-forgetting substitution).
pub fn forget_dots(f: &ZPoly) -> ZPoly {
    f.substitute(&mut |m| ZPoly::zw(m.w()))
}

/// Kill every term divisible by `z[1,0]` (the `z_1 = 0` specialization).
pub fn kill_z1(f: &ZPoly) -> ZPoly {
    let mut out = ZPoly::zero();
    for (m, c) in f.terms() {
        if m.z1_exp() == 0 {
            out.add_term(m.clone(), c.clone());
        }
    }
    out
}

/// Map `z[w1,0]*...*z[wk,0] -> st_{(w1..wk)}`, dropping all `y > 0` terms.
/// Errors if a surviving term still carries dots.
pub fn subst_star(f: &ZPoly) -> Result<SymFn> {
    let mut out = SymFn::zero(Basis::Star);
    for (m, c) in f.terms() {
        if m.y_exp() > 0 {
            continue;
        }
        if !m.all_dots_zero() {
            return Err(Error::InvalidInput(format!(
                "monomial {m} still carries dots; undot first"
            )));
        }
        let parts: Vec<u32> = m.expanded_marks().iter().map(Mark::w).collect();
        out.add_term(IntPartition::new(parts), c.clone());
    }
    Ok(out)
}

/// Expand `undot(f)` term by term and report whether the expansion is
/// cancellation-free: every resulting monomial receives contributions of one
/// sign only (merging equal signs is fine, opposite signs are not).
pub fn undot_is_cancellation_free(f: &ZPoly) -> bool {
    let mut seen: BTreeMap<ZMonomial, i8> = BTreeMap::new();
    for (m, c) in f.terms() {
        let base_sign: i8 = if c.is_negative() { -1 } else { 1 };
        let mut expansion = ZPoly::monomial(ZMonomial::y(m.y_exp()), BigInt::one());
        for &(mark, e) in m.factors() {
            let img = d_bullet(mark.w(), mark.d()).expect("valid mark");
            for _ in 0..e {
                expansion = expansion.mul(&img);
            }
        }
        // d_bullet products never cancel internally per fixed z1-power, so
        // the merged expansion's signs are the contribution signs.
        for (mono, coeff) in expansion.terms() {
            let sign = base_sign * if coeff.is_negative() { -1 } else { 1 };
            match seen.get(mono) {
                None => {
                    seen.insert(mono.clone(), sign);
                }
                Some(&prev) if prev != sign => return false,
                _ => {}
            }
        }
    }
    true
}

/// The pair of distinct polynomials with equal undottings: the witness that
/// the undotting substitution is not injective on raw polynomials.
pub fn undot_nonuniqueness_demo() -> (ZPoly, ZPoly) {
    let m = |w, d| Mark::new(w, d).unwrap();
    let f = ZPoly::from_marks(&[m(4, 1), m(5, 2)]).add(&ZPoly::from_marks(&[m(4, 2), m(5, 2)]));
    let g = ZPoly::from_marks(&[m(4, 1), m(5, 3)]).add(&ZPoly::from_marks(&[m(4, 2), m(5, 1)]));
    (f, g)
}

// ---- Parser -----------------------------------------------------------------

fn parse_zpoly(s: &str) -> Result<ZPoly> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut out = ZPoly::zero();
    for (sign, term) in split_terms(s)? {
        let (m, c) = parse_term(&term)?;
        out.add_term(m, if sign { c } else { -c });
    }
    Ok(out)
}

fn split_terms(s: &str) -> Result<Vec<(bool, String)>> {
    let mut out = Vec::new();
    let mut sign = true;
    let mut cur = String::new();
    let mut depth = 0i32;
    for ch in s.chars() {
        match ch {
            '[' => {
                depth += 1;
                cur.push(ch);
            }
            ']' => {
                depth -= 1;
                cur.push(ch);
            }
            '+' | '-' if depth == 0 && !cur.trim().is_empty() => {
                out.push((sign, std::mem::take(&mut cur)));
                sign = ch == '+';
            }
            '-' if depth == 0 && cur.trim().is_empty() => {
                sign = !sign;
            }
            '+' if depth == 0 && cur.trim().is_empty() => {}
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        out.push((sign, cur));
    }
    if out.is_empty() {
        return Err(Error::Parse("no terms".into()));
    }
    Ok(out)
}

fn parse_term(term: &str) -> Result<(ZMonomial, BigInt)> {
    let mut coeff = BigInt::one();
    let mut marks: Vec<Mark> = Vec::new();
    let mut y_exp = 0u32;
    for factor in term.split('*') {
        let factor = factor.trim();
        if factor.is_empty() {
            return Err(Error::Parse(format!("empty factor in {term:?}")));
        }
        if let Ok(c) = factor.parse::<BigInt>() {
            coeff *= c;
            continue;
        }
        let (base, exp) = match factor.split_once('^') {
            Some((b, e)) => (
                b.trim(),
                e.trim()
                    .parse::<u32>()
                    .map_err(|err| Error::Parse(format!("bad exponent in {factor:?}: {err}")))?,
            ),
            None => (factor, 1),
        };
        if base == "y" {
            y_exp += exp;
        } else if base == "1" {
            // multiplicative unit, nothing to record
        } else if let Some(idx) = base.strip_prefix('z') {
            let inner = idx
                .trim()
                .strip_prefix('[')
                .and_then(|t| t.strip_suffix(']'))
                .ok_or_else(|| Error::Parse(format!("expected z[..] in {factor:?}")))?;
            let (w, d) = match inner.split_once(',') {
                Some((w, d)) => (
                    w.trim().parse::<u32>().map_err(|e| Error::Parse(e.to_string()))?,
                    d.trim().parse::<u32>().map_err(|e| Error::Parse(e.to_string()))?,
                ),
                None => (
                    inner.trim().parse::<u32>().map_err(|e| Error::Parse(e.to_string()))?,
                    0,
                ),
            };
            let m = Mark::new(w, d)?;
            for _ in 0..exp {
                marks.push(m);
            }
        } else {
            return Err(Error::Parse(format!("unknown factor {factor:?}")));
        }
    }
    let mut m = ZMonomial::from_marks(&marks);
    m.y_exp = y_exp;
    Ok((m, coeff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mark::mk;

    #[test]
    fn d_bullet_examples() {
        assert_eq!(d_bullet(5, 0).unwrap(), ZPoly::zw(5));
        // (4,1) -> z4 - z3*z1
        let b41 = d_bullet(4, 1).unwrap();
        assert_eq!(b41, ZPoly::zw(4).sub(&ZPoly::zw(3).mul(&ZPoly::zw(1))));
        // (7,3) -> z7 - 3 z6 z1 + 3 z5 z1^2 - z4 z1^3
        let b73 = d_bullet(7, 3).unwrap();
        let z1 = ZPoly::zw(1);
        let expect = ZPoly::zw(7)
            .sub(&ZPoly::zw(6).mul(&z1).scale(&BigInt::from(3)))
            .add(&ZPoly::zw(5).mul(&z1).mul(&z1).scale(&BigInt::from(3)))
            .sub(&ZPoly::zw(4).mul(&z1).mul(&z1).mul(&z1));
        assert_eq!(b73, expect);
        assert!(d_bullet(2, 3).is_err());
    }

    #[test]
    fn pascal_identity() {
        for w in 2u32..=8 {
            for d in 1..w {
                let lhs = d_bullet(w, d).unwrap();
                let rhs = d_bullet(w, d - 1)
                    .unwrap()
                    .sub(&ZPoly::zw(1).mul(&d_bullet(w - 1, d - 1).unwrap()));
                assert_eq!(lhs, rhs, "({w},{d})");
            }
        }
    }

    #[test]
    fn undot_fixes_weight_variables() {
        let p = ZPoly::from_marks(&[mk(4, 0), mk(2, 0)]);
        assert_eq!(undot(&p), p);
    }

    #[test]
    fn undot_nonuniqueness_witness() {
        let (f, g) = undot_nonuniqueness_demo();
        assert_ne!(f, g);
        let uf = undot(&f);
        assert_eq!(uf, undot(&g));
        // The expansion displayed alongside the witness.
        let z = ZPoly::zw;
        let expect = z(5).mul(&z(4)).scale(&BigInt::from(2))
            .sub(&z(5).mul(&z(3)).mul(&z(1)).scale(&BigInt::from(3)))
            .add(&z(5).mul(&z(2)).mul(&z(1)).mul(&z(1)))
            .sub(&z(4).mul(&z(4)).mul(&z(1)).scale(&BigInt::from(4)))
            .add(&z(4).mul(&z(3)).mul(&z(1)).mul(&z(1)).scale(&BigInt::from(8)))
            .sub(&z(4).mul(&z(2)).mul(&z(1)).mul(&z(1)).mul(&z(1)).scale(&BigInt::from(2)))
            .sub(&z(3).mul(&z(3)).mul(&z(1)).mul(&z(1)).mul(&z(1)).scale(&BigInt::from(3)))
            .add(&z(3).mul(&z(2)).mul(&z(1)).mul(&z(1)).mul(&z(1)).mul(&z(1)));
        assert_eq!(uf, expect);
        // Re-verify by an independent expansion of each d_bullet product.
        let direct = |pairs: &[(u32, u32); 2]| {
            d_bullet(pairs[0].0, pairs[0].1)
                .unwrap()
                .mul(&d_bullet(pairs[1].0, pairs[1].1).unwrap())
        };
        let f2 = direct(&[(4, 1), (5, 2)]).add(&direct(&[(4, 2), (5, 2)]));
        let g2 = direct(&[(4, 1), (5, 3)]).add(&direct(&[(4, 2), (5, 1)]));
        assert_eq!(f2, g2);
        assert_eq!(f2, uf);
    }

    #[test]
    fn forget_dots_and_subst_star() {
        let p = ZPoly::from_marks(&[mk(5, 1), mk(2, 0)]);
        assert_eq!(forget_dots(&p), ZPoly::from_marks(&[mk(5, 0), mk(2, 0)]));
        let f = subst_star(&forget_dots(&p)).unwrap();
        assert_eq!(
            f,
            SymFn::monomial(Basis::Star, IntPartition::new(vec![5, 2]), BigInt::one())
        );
        assert!(subst_star(&p).is_err());
        // y terms are dropped.
        let q = p.mul_y();
        assert!(subst_star(&q).unwrap().is_zero());
    }

    #[test]
    fn display_format() {
        let p = ZPoly::from_marks(&[mk(7, 3)])
            .scale(&BigInt::from(2))
            .add(&ZPoly::from_marks(&[mk(7, 3)]).mul_y())
            .add(&ZPoly::from_marks(&[mk(4, 1), mk(1, 0), mk(1, 0)]).neg());
        assert_eq!(p.to_string(), "-1*z[4,1]*z[1]^2 + 2*z[7,3] + 1*y*z[7,3]");
        assert_eq!(ZPoly::zero().to_string(), "0");
        assert_eq!(ZPoly::constant(-3).to_string(), "-3*1");
    }

    #[test]
    fn parse_roundtrip() {
        let p = ZPoly::from_marks(&[mk(7, 3)])
            .scale(&BigInt::from(2))
            .add(&ZPoly::from_marks(&[mk(7, 3)]).mul_y())
            .add(&ZPoly::from_marks(&[mk(4, 1), mk(1, 0), mk(1, 0)]).neg())
            .add(&ZPoly::constant(5));
        let text = p.to_string();
        assert_eq!(ZPoly::parse(&text).unwrap(), p);
        assert_eq!(ZPoly::parse("z[3]").unwrap(), ZPoly::zw(3));
        assert_eq!(ZPoly::parse("-z[3] + z[3]").unwrap(), ZPoly::zero());
        assert_eq!(ZPoly::parse("2*y^2*z[4,1]^2").unwrap().num_terms(), 1);
        assert!(ZPoly::parse("2*q[4]").is_err());
    }
}
