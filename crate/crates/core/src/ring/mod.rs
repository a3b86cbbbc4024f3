//! Sparse polynomials with coefficients in Z/p^N.
//!
//! Besides plain arithmetic this covers the monomial Frobenius lift and
//! truncation modulo Frobenius powers of the maximal ideal.

mod monomial;
mod parse;

pub use monomial::{Monomial, NVARS, VAR_NAMES};
pub use parse::parse_poly;

use std::collections::BTreeMap;
use std::fmt;
use std::ops;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};

/// Returns true when `p` is prime.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A residue modulo `p^level`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Coeff {
    value: u64,
    modulus: u64,
}

impl Coeff {
    pub fn new(value: i64, modulus: u64) -> Self {
        let m = modulus as i64;
        Coeff { value: value.rem_euclid(m) as u64, modulus }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }
}

impl ops::Add for Coeff {
    type Output = Coeff;

    fn add(self, o: Coeff) -> Coeff {
        debug_assert_eq!(self.modulus, o.modulus);
        Coeff { value: (self.value + o.value) % self.modulus, modulus: self.modulus }
    }
}

impl ops::Mul for Coeff {
    type Output = Coeff;

    fn mul(self, o: Coeff) -> Coeff {
        debug_assert_eq!(self.modulus, o.modulus);
        Coeff { value: (self.value * o.value) % self.modulus, modulus: self.modulus }
    }
}

impl ops::Neg for Coeff {
    type Output = Coeff;

    fn neg(self) -> Coeff {
        Coeff { value: (self.modulus - self.value) % self.modulus, modulus: self.modulus }
    }
}

/// The monomial ideal `(x^{p^E}, y^{p^E}, z^{p^E})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrobPowerIdeal {
    p: u64,
    level: u32,
}

impl FrobPowerIdeal {
    pub fn new(p: u64, level: u32) -> Self {
        FrobPowerIdeal { p, level }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// `p^E`, saturating at `u64::MAX` so huge levels simply cut nothing.
    pub fn bound(&self) -> u64 {
        self.p.checked_pow(self.level).unwrap_or(u64::MAX)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        let b = self.bound();
        (0..3).any(|i| m.exp(i) as u64 >= b)
    }

    pub fn as_box(&self) -> ExponentBox {
        let b = self.bound();
        ExponentBox::new([b, b, b])
    }
}

/// Per-variable truncation: a monomial survives iff `e_i < bounds[i]` for
/// the three geometric variables. Every cap in the crate is one of these.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExponentBox {
    bounds: [u64; 3],
}

impl ExponentBox {
    pub fn new(bounds: [u64; 3]) -> Self {
        ExponentBox { bounds }
    }

    pub fn unbounded() -> Self {
        ExponentBox { bounds: [u64::MAX; 3] }
    }

    pub fn bounds(&self) -> [u64; 3] {
        self.bounds
    }

    #[inline]
    pub fn keeps(&self, m: &Monomial) -> bool {
        (0..3).all(|i| (m.exp(i) as u64) < self.bounds[i])
    }
}

/// Sparse polynomial with coefficients in `Z/p^level`, `level ∈ {1, 2}`.
///
/// Zero coefficients are never stored, so equal polynomials have identical
/// term maps.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    p: u64,
    level: u32,
    terms: BTreeMap<Monomial, u64>,
}

impl Poly {
    pub fn zero(p: u64, level: u32) -> Self {
        Poly { p, level, terms: BTreeMap::new() }
    }

    pub fn constant(p: u64, level: u32, c: i64) -> Self {
        Self::term(p, level, Monomial::one(), c)
    }

    pub fn one(p: u64, level: u32) -> Self {
        Self::constant(p, level, 1)
    }

    pub fn term(p: u64, level: u32, m: Monomial, c: i64) -> Self {
        let mut out = Poly::zero(p, level);
        let v = Coeff::new(c, out.modulus()).value();
        if v != 0 {
            out.terms.insert(m, v);
        }
        out
    }

    pub fn monomial(p: u64, level: u32, exps: [u32; 3]) -> Self {
        Self::term(p, level, Monomial::new(exps), 1)
    }

    pub fn variable(p: u64, level: u32, i: usize) -> Self {
        Self::term(p, level, Monomial::var(i), 1)
    }

    /// Builds a polynomial from raw `(monomial, coefficient)` pairs, summing
    /// repeated monomials.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, i64)>>(p: u64, level: u32, it: I) -> Self {
        let mut out = Poly::zero(p, level);
        let md = out.modulus();
        for (m, c) in it {
            out.add_term(m, Coeff::new(c, md).value());
        }
        out
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn modulus(&self) -> u64 {
        self.p.pow(self.level)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending grevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, u64)> + '_ {
        self.terms.iter().map(|(m, c)| (m, *c))
    }

    pub fn coeff(&self, m: &Monomial) -> Coeff {
        Coeff { value: self.terms.get(m).copied().unwrap_or(0), modulus: self.modulus() }
    }

    /// Largest monomial in grevlex order.
    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Largest exponent of variable `i` among all terms.
    pub fn max_exp(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(i)).max().unwrap_or(0)
    }

    /// True when every term only involves the variables x, y, z.
    pub fn is_geometric(&self) -> bool {
        self.terms.keys().all(|m| (3..NVARS).all(|i| m.exp(i) == 0))
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: u64) {
        if c == 0 {
            return;
        }
        let md = self.modulus();
        let e = self.terms.entry(m).or_insert(0);
        *e = (*e + c) % md;
        if *e == 0 {
            self.terms.remove(&m);
        }
    }

    fn check_same(&self, o: &Poly) -> Result<()> {
        if self.p != o.p || self.level != o.level {
            return Err(Error::ModulusMismatch { left: self.modulus(), right: o.modulus() });
        }
        Ok(())
    }

    pub fn add(&self, o: &Poly) -> Result<Poly> {
        self.check_same(o)?;
        let mut out = self.clone();
        for (m, c) in o.terms() {
            out.add_term(*m, c);
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Poly) -> Result<Poly> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Poly {
        let md = self.modulus();
        Poly {
            p: self.p,
            level: self.level,
            terms: self.terms.iter().map(|(m, c)| (*m, (md - c) % md)).collect(),
        }
    }

    pub fn scale(&self, c: i64) -> Poly {
        let md = self.modulus();
        let c = Coeff::new(c, md).value();
        let mut out = Poly::zero(self.p, self.level);
        for (m, v) in self.terms() {
            out.add_term(*m, (v * c) % md);
        }
        out
    }

    /// Multiplies every term by the monomial `m`.
    pub fn shift(&self, m: &Monomial) -> Result<Poly> {
        let mut terms = BTreeMap::new();
        for (t, c) in self.terms() {
            terms.insert(t.mul(m)?, c);
        }
        Ok(Poly { p: self.p, level: self.level, terms })
    }

    pub fn mul(&self, o: &Poly) -> Result<Poly> {
        self.mul_filtered(o, |_| true)
    }

    /// Product with every monomial outside `cap` discarded during accumulation.
    pub fn mul_capped(&self, o: &Poly, cap: &ExponentBox) -> Result<Poly> {
        self.mul_filtered(o, |m| cap.keeps(m))
    }

    /// Product keeping only monomials accepted by `keep`.
    pub fn mul_filtered<F: Fn(&Monomial) -> bool>(&self, o: &Poly, keep: F) -> Result<Poly> {
        self.check_same(o)?;
        let md = self.modulus();
        let mut acc: FxHashMap<Monomial, u64> = FxHashMap::default();
        for (a, ca) in self.terms() {
            for (b, cb) in o.terms() {
                let m = a.mul(b)?;
                if !keep(&m) {
                    continue;
                }
                let e = acc.entry(m).or_insert(0);
                *e = (*e + ca * cb) % md;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        Ok(Poly { p: self.p, level: self.level, terms })
    }

    pub fn pow(&self, k: u64) -> Result<Poly> {
        self.pow_capped(k, &ExponentBox::unbounded())
    }

    /// `self^k` by repeated squaring, truncating to `cap` after each product.
    pub fn pow_capped(&self, mut k: u64, cap: &ExponentBox) -> Result<Poly> {
        let mut result = Poly::one(self.p, self.level).truncate(cap);
        let mut base = self.truncate(cap);
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul_capped(&base, cap)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_capped(&base, cap)?;
            }
        }
        Ok(result)
    }

    /// Drops every monomial outside `cap`.
    pub fn truncate(&self, cap: &ExponentBox) -> Poly {
        Poly {
            p: self.p,
            level: self.level,
            terms: self.terms.iter().filter(|(m, _)| cap.keeps(m)).map(|(m, c)| (*m, *c)).collect(),
        }
    }

    /// The monomial Frobenius lift: exponents times `p`, coefficients fixed.
    pub fn frobenius_lift(&self) -> Result<Poly> {
        self.scale_exponents(self.p)
    }

    /// Over the prime field, `g^{p^e}` is obtained by scaling exponents by `p^e`.
    pub fn frobenius_power(&self, e: u32) -> Result<Poly> {
        if self.level != 1 {
            return Err(Error::Internal("frobenius_power needs coefficients in F_p".into()));
        }
        let q = self.p.checked_pow(e).ok_or(Error::ExponentOverflow)?;
        self.scale_exponents(q)
    }

    pub(crate) fn scale_exponents(&self, q: u64) -> Result<Poly> {
        let mut terms = BTreeMap::new();
        for (m, c) in self.terms() {
            terms.insert(m.scale(q)?, c);
        }
        Ok(Poly { p: self.p, level: self.level, terms })
    }

    /// Reduction to `F_p` coefficients.
    pub fn reduce_mod_p(&self) -> Poly {
        let mut out = Poly::zero(self.p, 1);
        for (m, c) in self.terms() {
            out.add_term(*m, c % self.p);
        }
        out
    }

    /// Reinterprets coefficients as residues modulo `p^2` (the natural lift).
    pub fn lift_to_level2(&self) -> Poly {
        Poly { p: self.p, level: 2, terms: self.terms.clone() }
    }

    /// Exact division by `p` of a polynomial over `Z/p^2`.
    pub fn div_exact_p(&self) -> Result<Poly> {
        if self.level != 2 {
            return Err(Error::Internal("exact division by p needs level 2".into()));
        }
        let mut out = Poly::zero(self.p, 1);
        for (m, c) in self.terms() {
            if c % self.p != 0 {
                return Err(Error::Internal(format!("coefficient {c} of {m} is not divisible by {}", self.p)));
            }
            out.add_term(*m, c / self.p);
        }
        Ok(out)
    }

    /// Canonical representative modulo `(x^{p^E}, y^{p^E}, z^{p^E})`.
    pub fn reduce_mod_frob_power(&self, e: u32) -> Poly {
        self.truncate(&FrobPowerIdeal::new(self.p, e).as_box())
    }

    /// True when every monomial lies in the Frobenius power ideal.
    pub fn in_frob_power(&self, e: u32) -> bool {
        let f = FrobPowerIdeal::new(self.p, e);
        self.terms.keys().all(|m| f.contains(m))
    }

    /// Makes the leading coefficient one (prime-field coefficients only).
    pub fn monic(&self) -> Poly {
        match self.terms.values().next_back() {
            None => self.clone(),
            Some(&lc) => self.scale(inverse_mod(lc, self.p) as i64),
        }
    }

    /// Canonical string: descending grevlex, least non-negative residues.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            if !out.is_empty() {
                out.push('+');
            }
            if m.is_one() {
                out.push_str(&c.to_string());
            } else if *c == 1 {
                out.push_str(&m.to_string());
            } else {
                out.push_str(&format!("{c}*{m}"));
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}; mod {}]", self.render(), self.modulus())
    }
}

/// Inverse of a unit modulo a prime.
pub fn inverse_mod(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(s: &str, p: u64) -> Poly {
        parse_poly(s, p, 1).unwrap()
    }

    #[test]
    fn freshman_dream_in_char_two() {
        let a = fp("x+y", 2);
        assert_eq!(a.mul(&a).unwrap(), fp("x^2+y^2", 2));
        let f = fp("z^2+x^3+y^5", 2);
        assert_eq!(f.mul(&f).unwrap(), fp("z^4+x^6+y^10", 2));
    }

    #[test]
    fn capped_square_drops_large_exponents() {
        let a = fp("x+1", 2);
        let cap = FrobPowerIdeal::new(2, 1).as_box();
        assert_eq!(a.mul_capped(&a, &cap).unwrap(), fp("1", 2));
    }

    #[test]
    fn frobenius_lift_scales_exponents() {
        let g = parse_poly("x+2*y", 2, 2).unwrap();
        assert_eq!(g.frobenius_lift().unwrap(), parse_poly("x^2+2*y^2", 2, 2).unwrap());
        assert_eq!(fp("1", 3).frobenius_lift().unwrap(), fp("1", 3));
        assert_eq!(fp("x*y*z", 3).frobenius_lift().unwrap(), fp("x^3*y^3*z^3", 3));
    }

    #[test]
    fn reduction_mod_frobenius_powers() {
        assert_eq!(fp("x^2+x*y", 2).reduce_mod_frob_power(1), fp("x*y", 2));
        assert_eq!(fp("z^2+x^3+y^5", 2).reduce_mod_frob_power(2), fp("z^2+x^3", 2));
        assert!(fp("0", 2).reduce_mod_frob_power(3).is_zero());
    }

    #[test]
    fn coefficient_arithmetic_wraps() {
        let a = Coeff::new(3, 4);
        assert_eq!((a + Coeff::new(2, 4)).value(), 1);
        assert_eq!((a * a).value(), 1);
        assert_eq!((-a).value(), 1);
        assert_eq!(Coeff::new(-1, 3).value(), 2);
    }

    #[test]
    fn exact_division_and_mismatch() {
        let g = parse_poly("2*x+2*y^2", 3, 2).unwrap();
        assert!(g.div_exact_p().is_err());
        let h = parse_poly("3*x+6*y^2", 3, 2).unwrap();
        assert_eq!(h.div_exact_p().unwrap(), fp("x+2*y^2", 3));
        assert!(matches!(fp("x", 2).add(&fp("x", 3)), Err(Error::ModulusMismatch { .. })));
    }

    #[test]
    fn monic_and_inverse() {
        assert_eq!(inverse_mod(3, 7), 5);
        assert_eq!(fp("2*x+y", 5).monic(), fp("x+3*y", 5));
    }
}
