//! Ideals `J` with `J ⊆ u(F_*(f^{p−1}J + I^{[p]}))`. For such a `J`, once
//! some `a ∈ J` survives the accumulated product after step `r`, every
//! later height equals one.

use crate::delta::{frobenius_power_capped, FhLadder, LiftSpec};
use crate::error::{Error, Result};
use crate::groebner::IdealFp;
use crate::ring::{ExponentBox, Monomial, Poly};
use crate::trace::{ideal_image_u, monomials_up_to};

/// `u(F_*(f^{p−1}J + (f^p)))`.
fn stable_image(spec: &LiftSpec, gens: &[Poly], ceiling: u32) -> Result<IdealFp> {
    let p = spec.p();
    let mut src: Vec<Poly> = gens.iter().map(|g| g.mul(spec.f_pm1())).collect::<Result<_>>()?;
    src.push(spec.f_pm1().mul(spec.fbar())?);
    ideal_image_u(&IdealFp::new(p, src), ceiling)
}

/// True when `J ⊆ u(F_*(f^{p−1}J + I^{[p]}))`.
pub fn stable_one_precondition(spec: &LiftSpec, j: &IdealFp, ceiling: u32) -> Result<bool> {
    let image = stable_image(spec, j.basis_or_generators(), ceiling)?;
    for g in j.basis_or_generators() {
        if !image.member(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn minimal_monomials(mut ms: Vec<Monomial>) -> Vec<Monomial> {
    ms.sort();
    let mut out: Vec<Monomial> = Vec::new();
    for m in ms {
        if !out.iter().any(|o| o.divides(&m)) {
            out.push(m);
        }
    }
    out
}

/// Minimal generators of the largest ideal generated by monomials of
/// degree at most `max_degree` satisfying the stability inclusion.
///
/// Starting from all such monomials, repeatedly discard those outside the
/// image of the ideal they generate; the inclusion is monotone, so the
/// fixed point contains every stable monomial ideal of this kind.
pub fn greatest_stable_ideal(spec: &LiftSpec, max_degree: u32, ceiling: u32) -> Result<Vec<Monomial>> {
    let p = spec.p();
    let mut live: Vec<Monomial> = monomials_up_to(max_degree);
    loop {
        let gens = minimal_monomials(live.clone());
        if gens.is_empty() {
            return Ok(gens);
        }
        let polys: Vec<Poly> = gens.iter().map(|m| Poly::term(p, 1, *m, 1)).collect();
        let image = stable_image(spec, &polys, ceiling)?;
        let mut next = Vec::with_capacity(live.len());
        for m in &live {
            if image.member(&Poly::term(p, 1, *m, 1))? {
                next.push(*m);
            }
        }
        if next.len() == live.len() {
            return Ok(gens);
        }
        live = next;
    }
}

/// `a·f_{h_0}^{p^{h_1+⋯+h_r}}⋯f_{h_r} ∉ m^{[p^{h_0+⋯+h_r}]}` for a monomial
/// ideal `J` meeting the stability inclusion and `a ∈ J`.
///
/// A failed precondition is reported as an error, distinct from `false`.
pub fn stable_one_test(spec: &LiftSpec, prefix: &[u32], j: &IdealFp, a: &Poly, ceiling: u32) -> Result<bool> {
    let p = spec.p();
    if prefix.is_empty() || prefix.contains(&0) {
        return Err(Error::InvalidInput("prefix must be nonempty and positive".into()));
    }
    if j.basis_or_generators().iter().any(|g| g.len() != 1) {
        return Err(Error::Precondition("J is not generated by monomials".into()));
    }
    let j = j.clone().with_gb(ceiling)?;
    if !j.member(a)? {
        return Err(Error::Precondition("a is not in J".into()));
    }
    if !stable_one_precondition(spec, &j, ceiling)? {
        return Err(Error::Precondition("J is not contained in its stability image".into()));
    }
    let total: u32 = prefix.iter().sum();
    let bound = p.checked_pow(total).filter(|&b| b <= 1 << 32).ok_or(Error::ExponentOverflow)?;
    let h_max = *prefix.iter().max().expect("nonempty");
    let ladder = FhLadder::build(spec, h_max, ExponentBox::new([bound; 3]))?;
    let mut acc = Poly::one(p, 1);
    let mut partial = 0u32;
    for &h in prefix {
        partial += h;
        let b = ExponentBox::new([p.pow(partial); 3]);
        acc = frobenius_power_capped(&acc, h, &b)?.mul_capped(&ladder.entry(h).truncate(&b), &b)?;
    }
    let cap = ExponentBox::new([bound; 3]);
    Ok(!a.mul_capped(&acc, &cap)?.is_zero())
}
