//! The trace `u`, dual to `(xyz)^{p−1}`, and the twisted trace
//! `θ(g) = u(Δ₁(f^{p−1})·g)`.
//!
//! Both maps also act on ideals. Intersecting with the kernel of `u` is
//! done by linear algebra in bounded degree or exactly through syzygies.

use std::collections::BTreeMap;

use crate::delta::LiftSpec;
use crate::error::{Error, Result};
use crate::groebner::{IdealFp, MonomialOrder};
use crate::ring::{inverse_mod, Monomial, Poly};

#[derive(Debug, Clone)]
pub struct TraceContext {
    p: u64,
    dfp: Poly,
    fbar: Poly,
}

impl TraceContext {
    pub fn new(spec: &LiftSpec) -> Self {
        TraceContext { p: spec.p(), dfp: spec.dfp().clone(), fbar: spec.fbar().clone() }
    }

    pub fn from_parts(dfp: Poly, fbar: Poly) -> Result<Self> {
        if dfp.p() != fbar.p() || dfp.level() != 1 || fbar.level() != 1 {
            return Err(Error::ModulusMismatch { left: dfp.modulus(), right: fbar.modulus() });
        }
        Ok(TraceContext { p: fbar.p(), dfp, fbar })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn dfp(&self) -> &Poly {
        &self.dfp
    }

    pub fn fbar(&self) -> &Poly {
        &self.fbar
    }
}

#[inline]
fn in_top_class(m: &Monomial, p: u64) -> bool {
    (0..3).all(|i| (m.exp(i) as u64) % p == p - 1)
}

#[inline]
fn top_class_preimage(m: &Monomial, p: u64) -> Monomial {
    let e = m.xyz();
    Monomial::new([
        ((e[0] as u64 - (p - 1)) / p) as u32,
        ((e[1] as u64 - (p - 1)) / p) as u32,
        ((e[2] as u64 - (p - 1)) / p) as u32,
    ])
}

/// `u(F_* g)`: keeps monomials with every exponent `≡ p−1 (mod p)` and
/// maps `x^{pa+p−1}` to `x^a`.
pub fn trace_u(g: &Poly) -> Poly {
    let p = g.p();
    let mut out = Poly::zero(p, 1);
    for (m, c) in g.terms() {
        if in_top_class(m, p) {
            out.add_term(top_class_preimage(m, p), c);
        }
    }
    out
}

/// `θ(F_* g) = u(F_*(Δ₁(f^{p−1})·g))`; only the surviving residue class of
/// the product is ever formed.
pub fn theta(ctx: &TraceContext, g: &Poly) -> Result<Poly> {
    let p = ctx.p;
    let prod = ctx.dfp.mul_filtered(g, |m| in_top_class(m, p))?;
    Ok(trace_u(&prod))
}

/// All shifts `x^a y^b z^c` with `0 ≤ a, b, c < p`.
pub fn residue_shifts(p: u64) -> Vec<Monomial> {
    let p = p as u32;
    let mut out = Vec::with_capacity((p * p * p) as usize);
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                out.push(Monomial::new([a, b, c]));
            }
        }
    }
    out
}

fn image_generators<F: Fn(&Poly) -> Result<Poly>>(ideal: &IdealFp, map: F) -> Result<Vec<Poly>> {
    let mut gens: Vec<Poly> = Vec::new();
    for g in ideal.basis_or_generators() {
        for s in residue_shifts(ideal.p()) {
            let img = map(&g.shift(&s)?)?;
            if !img.is_zero() {
                gens.push(img.monic());
            }
        }
    }
    gens.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    gens.dedup();
    Ok(gens)
}

/// `u(F_* I)` with its reduced basis.
pub fn ideal_image_u(ideal: &IdealFp, degree_ceiling: u32) -> Result<IdealFp> {
    let gens = image_generators(ideal, |g| Ok(trace_u(g)))?;
    IdealFp::new(ideal.p(), gens).with_gb(degree_ceiling)
}

/// `θ(F_* I)` with its reduced basis.
pub fn ideal_image_theta(ctx: &TraceContext, ideal: &IdealFp, degree_ceiling: u32) -> Result<IdealFp> {
    let gens = image_generators(ideal, |g| theta(ctx, g))?;
    IdealFp::new(ideal.p(), gens).with_gb(degree_ceiling)
}

/// An F_p-basis of `{g ∈ I : deg g ≤ D, u(F_* g) = 0}` inside the span of
/// monomial multiples of the generators of `I` of degree at most `D`.
pub fn kernel_u_intersect(ideal: &IdealFp, degree_bound: u32) -> Result<Vec<Poly>> {
    let p = ideal.p();
    let gens = ideal.basis_or_generators();
    for g in gens {
        let d = g.total_degree().unwrap_or(0);
        if d > degree_bound {
            return Err(Error::DegreeBound { bound: degree_bound, degree: d });
        }
    }
    // Column key: top-class monomials sort above all others, so any row
    // whose pivot lies outside the class has no top-class entries at all.
    type Row = BTreeMap<(bool, Monomial), u64>;
    let mut pivots: BTreeMap<(bool, Monomial), Row> = BTreeMap::new();
    for g in gens {
        let d = g.total_degree().unwrap_or(0);
        for m in monomials_up_to(degree_bound - d) {
            let mut row: Row = BTreeMap::new();
            for (t, c) in g.terms() {
                let tm = t.mul(&m)?;
                row.insert((in_top_class(&tm, p), tm), c);
            }
            while let Some((&piv, &c)) = row.iter().next_back() {
                match pivots.get(&piv) {
                    Some(prow) => {
                        for (k, v) in prow {
                            let e = row.entry(*k).or_insert(0);
                            *e = (*e + (p - c) * v) % p;
                            if *e == 0 {
                                row.remove(k);
                            }
                        }
                    }
                    None => {
                        let inv = inverse_mod(c, p);
                        for v in row.values_mut() {
                            *v = *v * inv % p;
                        }
                        pivots.insert(piv, row);
                        break;
                    }
                }
            }
        }
    }
    Ok(pivots
        .into_iter()
        .filter(|((class, _), _)| !class)
        .map(|(_, row)| Poly::from_terms(p, 1, row.into_iter().map(|((_, m), c)| (m, c as i64))))
        .collect())
}

/// Monomials in x, y, z of total degree at most `d`, ascending.
pub fn monomials_up_to(d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for deg in 0..=d {
        for a in (0..=deg).rev() {
            for b in (0..=deg - a).rev() {
                out.push(Monomial::new([a, b, deg - a - b]));
            }
        }
    }
    out.sort();
    out
}

/// `θ(F_*(I ∩ Ker u))`, computed exactly from the syzygies of the trace
/// images of the shift generators.
///
/// With shift generators `s_j` of `I` as a module over `p`-th powers, an
/// element `Σ a_j^p s_j` lies in `Ker u` iff `Σ a_j u(s_j) = 0`, and then its
/// θ-image is `Σ a_j θ(s_j)`. So the answer is the second projection of the
/// part of the module generated by `(u(s_j), θ(s_j))` with first entry
/// zero, read off from a position-over-term basis.
pub fn theta_of_kernel(ctx: &TraceContext, ideal: &IdealFp, degree_ceiling: u32) -> Result<IdealFp> {
    let p = ctx.p;
    let e1 = Poly::variable(p, 1, 3);
    let e2 = Poly::variable(p, 1, 4);
    let mut gens: Vec<Poly> = vec![e1.mul(&e1)?, e1.mul(&e2)?, e2.mul(&e2)?];
    for g in ideal.basis_or_generators() {
        for s in residue_shifts(p) {
            let sj = g.shift(&s)?;
            let w = trace_u(&sj);
            let t = theta(ctx, &sj)?;
            let elem = w.mul(&e1)?.add(&t.mul(&e2)?)?;
            if !elem.is_zero() {
                gens.push(elem);
            }
        }
    }
    let module = IdealFp::with_order(p, MonomialOrder::Module, gens).with_gb(degree_ceiling)?;
    let mut out = Vec::new();
    for b in module.gb().unwrap_or_default() {
        let lead = MonomialOrder::Module.leading_monomial(b).expect("nonzero");
        if lead.exp(3) == 0 && lead.exp(4) == 1 {
            let mut coeff = Poly::zero(p, 1);
            for (m, c) in b.terms() {
                let mut e = m.exps();
                e[4] -= 1;
                coeff.add_term(Monomial::from_slots(e), c);
            }
            out.push(coeff);
        }
    }
    IdealFp::new(p, out).with_gb(degree_ceiling)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::DEFAULT_DEGREE_CEILING;
    use crate::ring::parse_poly;

    fn fp(s: &str, p: u64) -> Poly {
        parse_poly(s, p, 1).unwrap()
    }

    #[test]
    fn trace_normalization() {
        for p in [2u64, 3, 5] {
            let m = Poly::monomial(p, 1, [p as u32 - 1; 3]);
            assert_eq!(trace_u(&m), Poly::one(p, 1));
            assert!(trace_u(&fp("x", p)).is_zero());
        }
        assert_eq!(trace_u(&fp("x^3*y*z^5+x*y*z", 2)), fp("x*z^2+1", 2));
    }

    #[test]
    fn theta_of_zero() {
        let spec = LiftSpec::parse(2, "z^2+x^3+y^5", "0").unwrap();
        let ctx = TraceContext::new(&spec);
        assert!(theta(&ctx, &Poly::zero(2, 1)).unwrap().is_zero());
    }

    #[test]
    fn images_of_principal_ideals() {
        let p = 3;
        let i = IdealFp::new(p, vec![fp("x^3", p)]);
        assert_eq!(ideal_image_u(&i, DEFAULT_DEGREE_CEILING).unwrap().render(), vec!["x"]);
        let one = IdealFp::new(p, vec![fp("1", p)]);
        assert_eq!(ideal_image_u(&one, DEFAULT_DEGREE_CEILING).unwrap().render(), vec!["1"]);
    }

    #[test]
    fn kernel_of_principal_top_class_generator() {
        let p = 2;
        let i = IdealFp::new(p, vec![fp("x*y*z", p)]);
        let ker = kernel_u_intersect(&i, 4).unwrap();
        assert!(!ker.is_empty());
        for g in &ker {
            assert!(trace_u(g).is_zero());
        }
        assert!(!ker.contains(&fp("x*y*z", p)));
    }

    #[test]
    fn kernel_without_top_class_is_whole_span() {
        let i = IdealFp::new(2, vec![fp("x", 2)]);
        let ker = kernel_u_intersect(&i, 2).unwrap();
        assert_eq!(ker.len(), 4);
    }

    #[test]
    fn kernel_rejects_small_bound() {
        let i = IdealFp::new(2, vec![fp("x^3", 2)]);
        assert_eq!(kernel_u_intersect(&i, 2), Err(Error::DegreeBound { bound: 2, degree: 3 }));
    }

    #[test]
    fn monomial_enumeration_counts() {
        assert_eq!(monomials_up_to(0).len(), 1);
        assert_eq!(monomials_up_to(2).len(), 10);
    }
}
