//! Macaulay inverse systems.
//!
//! An m-primary ideal `J` of F_p[x, y, z] with a one-dimensional socle
//! modulo it is the annihilator of a single dual polynomial `Φ` under the
//! contraction action `x^a ∘ X^b = X^{b−a}` (zero unless `a ≤ b`). With
//! `J = ann(Φ)` every question the colon recursion asks becomes cheap:
//!
//! * `g ∈ J^{[q]}` iff `g ∘ Φ^{[q]} = 0`, where `Φ^{[q]} = (XYZ)^{q−1}·Φ(X^q, Y^q, Z^q)`;
//! * `(J^{[q]} : g) = ann(g ∘ Φ^{[q]})`.
//!
//! The canonical reduced basis of `ann(Φ)` is recovered with a
//! Buchberger–Möller style walk over monomials in increasing order.

use std::collections::{BTreeSet, HashMap};

use super::IdealFp;
use crate::error::Result;
use crate::ring::{inverse_mod, Monomial, Poly};

/// `f ∘ Φ`, with both polynomials over F_p in x, y, z.
pub fn contract(f: &Poly, phi: &Poly) -> Result<Poly> {
    let p = f.p();
    let mut out = Poly::zero(p, 1);
    for (a, ca) in f.terms() {
        for (b, cb) in phi.terms() {
            if a.divides(b) {
                out.add_term(a.quotient_of(b), ca * cb % p);
            }
        }
    }
    Ok(out)
}

/// `x^a ∘ Φ` for a single monomial.
pub fn contract_monomial(a: &Monomial, phi: &Poly) -> Poly {
    let mut out = Poly::zero(phi.p(), 1);
    for (b, c) in phi.terms() {
        if a.divides(b) {
            out.add_term(a.quotient_of(b), c);
        }
    }
    out
}

/// `Φ^{[q]}`, the dual generator of `ann(Φ)^{[q]}`.
pub fn dual_frobenius(phi: &Poly, q: u64) -> Result<Poly> {
    let shift = Monomial::new([1, 1, 1]).scale(q - 1)?;
    phi.scale_exponents(q)?.shift(&shift)
}

/// True when `g ∈ ann(Φ)^{[q]}`.
pub fn in_frobenius_power(g: &Poly, phi: &Poly, q: u64) -> Result<bool> {
    Ok(contract(g, &dual_frobenius(phi, q)?)?.is_zero())
}

/// Canonical reduced grevlex basis of `ann(Φ)` together with its colength.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Annihilator {
    pub basis: Vec<Poly>,
    pub colength: usize,
}

impl Annihilator {
    pub fn ideal(&self, p: u64) -> IdealFp {
        let mut i = IdealFp::new(p, self.basis.clone());
        i.gb_override(self.basis.clone());
        i
    }
}

/// Reduced basis of `ann(Φ)`, or `None` once the colength exceeds `budget`.
pub fn annihilator(phi: &Poly, budget: usize) -> Result<Option<Annihilator>> {
    let p = phi.p();
    // Echelon rows keyed by pivot: (vector, expression in standard monomials).
    let mut rows: HashMap<Monomial, (Poly, Poly)> = HashMap::new();
    let mut leads: Vec<Monomial> = Vec::new();
    let mut basis: Vec<Poly> = Vec::new();
    let mut standard = 0usize;
    let mut queue: BTreeSet<Monomial> = BTreeSet::new();
    let mut seen: BTreeSet<Monomial> = BTreeSet::new();
    queue.insert(Monomial::one());
    while let Some(m) = queue.pop_first() {
        if !seen.insert(m) || leads.iter().any(|l| l.divides(&m)) {
            continue;
        }
        let mut v = contract_monomial(&m, phi);
        let mut expr = Poly::term(p, 1, m, 1);
        while let Some(piv) = v.leading_monomial().copied() {
            match rows.get(&piv) {
                Some((rv, re)) => {
                    let c = v.coeff(&piv).value() as i64;
                    v = v.sub(&rv.scale(c))?;
                    expr = expr.sub(&re.scale(c))?;
                }
                None => break,
            }
        }
        match v.leading_monomial().copied() {
            None => {
                leads.push(m);
                basis.push(expr);
            }
            Some(piv) => {
                let inv = inverse_mod(v.coeff(&piv).value(), p) as i64;
                rows.insert(piv, (v.scale(inv), expr.scale(inv)));
                standard += 1;
                if standard > budget {
                    return Ok(None);
                }
                for i in 0..3 {
                    queue.insert(m.mul(&Monomial::var(i))?);
                }
            }
        }
    }
    basis.sort_by(|a, b| b.leading_monomial().cmp(&a.leading_monomial()));
    Ok(Some(Annihilator { basis, colength: standard }))
}
