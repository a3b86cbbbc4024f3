//! Gröbner bases over F_p and the ideal operations built on them.
//!
//! Macaulay inverse systems live in [`inverse`].

mod buchberger;
pub mod inverse;

use std::fmt;

pub use buchberger::DEFAULT_DEGREE_CEILING;

use crate::error::{Error, Result};
use crate::ring::{FrobPowerIdeal, Monomial, Poly};

/// Monomial orders understood by the engine.
///
/// `Grevlex` is the default. `EliminateT` puts the auxiliary slot `t` in a
/// block above x, y, z. `Module` is a position-over-term order on the two
/// auxiliary slots (used to encode rank-two modules as ideals).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Grevlex,
    EliminateT,
    Module,
}

pub(crate) type Key = [u32; 5];

impl MonomialOrder {
    /// Sort key: larger key means larger monomial.
    #[inline]
    pub(crate) fn key(self, m: &Monomial) -> Key {
        let e = m.exps();
        match self {
            MonomialOrder::Grevlex => [m.degree(), !e[4], !e[3], !e[2], !e[1]],
            MonomialOrder::EliminateT => [e[3], e[0] + e[1] + e[2] + e[4], !e[4], !e[2], !e[1]],
            MonomialOrder::Module => [e[3], e[4], e[0] + e[1] + e[2], !e[2], !e[1]],
        }
    }

    pub fn leading_monomial(self, g: &Poly) -> Option<Monomial> {
        match self {
            MonomialOrder::Grevlex => g.leading_monomial().copied(),
            _ => g.terms().map(|(m, _)| *m).max_by_key(|m| self.key(m)),
        }
    }
}

/// Ideal of F_p[x, y, z] (plus auxiliary slots) with an optional reduced
/// Gröbner basis.
#[derive(Clone, PartialEq, Eq)]
pub struct IdealFp {
    p: u64,
    order: MonomialOrder,
    generators: Vec<Poly>,
    gb: Option<Vec<Poly>>,
}

impl IdealFp {
    pub fn new(p: u64, generators: Vec<Poly>) -> Self {
        Self::with_order(p, MonomialOrder::Grevlex, generators)
    }

    pub fn with_order(p: u64, order: MonomialOrder, generators: Vec<Poly>) -> Self {
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        IdealFp { p, order, generators, gb: None }
    }

    /// The maximal ideal `(x, y, z)`.
    pub fn maximal(p: u64) -> Self {
        Self::new(p, (0..3).map(|i| Poly::variable(p, 1, i)).collect())
    }

    /// `(x^{p^e}, y^{p^e}, z^{p^e})` with its basis already known.
    pub fn frob_power_of_maximal(p: u64, e: u32) -> Result<Self> {
        let q = u32::try_from(p.checked_pow(e).ok_or(Error::ExponentOverflow)?).map_err(|_| Error::ExponentOverflow)?;
        let gens: Vec<Poly> = (0..3)
            .map(|i| {
                let mut exps = [0; 3];
                exps[i] = q;
                Poly::monomial(p, 1, exps)
            })
            .collect();
        Ok(IdealFp { p, order: MonomialOrder::Grevlex, generators: gens.clone(), gb: Some(gens) })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn gb(&self) -> Option<&[Poly]> {
        self.gb.as_deref()
    }

    /// The reduced basis if known, otherwise the generators.
    pub fn basis_or_generators(&self) -> &[Poly] {
        self.gb.as_deref().unwrap_or(&self.generators)
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// Ideal generated by the union of both generator lists.
    pub fn sum(&self, other: &IdealFp) -> IdealFp {
        let mut gens = self.basis_or_generators().to_vec();
        gens.extend(other.basis_or_generators().iter().cloned());
        IdealFp::with_order(self.p, self.order, gens)
    }

    /// Computes and caches the reduced basis.
    pub fn with_gb(mut self, degree_ceiling: u32) -> Result<IdealFp> {
        if self.gb.is_none() {
            self.gb = Some(buchberger::reduced_basis(self.p, self.order, &self.generators, degree_ceiling)?);
        }
        Ok(self)
    }

    /// Installs a basis already known to be the reduced one.
    pub(crate) fn gb_override(&mut self, gb: Vec<Poly>) {
        self.gb = Some(gb);
    }

    fn require_gb(&self) -> Result<&[Poly]> {
        self.gb.as_deref().ok_or_else(|| Error::Precondition("ideal has no cached Gröbner basis".into()))
    }

    pub fn normal_form(&self, g: &Poly) -> Result<Poly> {
        let gb = self.require_gb()?;
        buchberger::normal_form(self.order, g, gb)
    }

    pub fn member(&self, g: &Poly) -> Result<bool> {
        Ok(self.normal_form(g)?.is_zero())
    }

    /// True when the ideal is the whole ring.
    pub fn is_unit(&self) -> Result<bool> {
        let gb = self.require_gb()?;
        Ok(gb.iter().any(|g| g.leading_monomial().is_some_and(|m| m.is_one())))
    }

    /// `I^{[p^e]}`, generated by `p^e`-th powers of the generators.
    pub fn frobenius_power(&self, e: u32) -> Result<IdealFp> {
        let gens = self.basis_or_generators().iter().map(|g| g.frobenius_power(e)).collect::<Result<Vec<_>>>()?;
        Ok(IdealFp::with_order(self.p, self.order, gens))
    }

    /// `I ⊆ (x^{p^e}, y^{p^e}, z^{p^e})`, decided term by term.
    pub fn contained_in_frob_power(&self, e: u32) -> bool {
        self.generators.iter().all(|g| g.in_frob_power(e))
    }

    /// The ideal's basis rendered as canonical strings.
    pub fn render(&self) -> Vec<String> {
        self.basis_or_generators().iter().map(|g| g.render()).collect()
    }
}

impl fmt::Debug for IdealFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.render().join(", "))
    }
}

pub fn reduced_gb(ideal: &IdealFp, degree_ceiling: u32) -> Result<IdealFp> {
    ideal.clone().with_gb(degree_ceiling)
}

pub fn normal_form(g: &Poly, ideal: &IdealFp) -> Result<Poly> {
    ideal.normal_form(g)
}

pub fn ideal_member(g: &Poly, ideal: &IdealFp) -> Result<bool> {
    ideal.member(g)
}

pub fn frobenius_power(ideal: &IdealFp, e: u32) -> Result<IdealFp> {
    ideal.frobenius_power(e)
}

pub fn ideal_contained_in_monomial(ideal: &IdealFp, target: FrobPowerIdeal) -> bool {
    ideal.contained_in_frob_power(target.level())
}

/// Equality via identical reduced bases.
pub fn ideal_equal(a: &IdealFp, b: &IdealFp, degree_ceiling: u32) -> Result<bool> {
    let a = reduced_gb(a, degree_ceiling)?;
    let b = reduced_gb(b, degree_ceiling)?;
    Ok(a.gb == b.gb)
}

/// `a ⊆ b`.
pub fn ideal_contained(a: &IdealFp, b: &IdealFp, degree_ceiling: u32) -> Result<bool> {
    let b = reduced_gb(b, degree_ceiling)?;
    for g in a.generators() {
        if !b.member(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(I : g)` by eliminating `t` from `t·I + (1 − t)·g`.
pub fn colon_ideal(ideal: &IdealFp, g: &Poly, degree_ceiling: u32) -> Result<IdealFp> {
    if g.is_zero() {
        return Err(Error::Precondition("colon by the zero polynomial".into()));
    }
    let p = ideal.p();
    let t = Poly::variable(p, 1, 3);
    let one_minus_t = Poly::one(p, 1).sub(&t)?;
    let mut gens = Vec::new();
    for h in ideal.basis_or_generators() {
        gens.push(t.mul(h)?);
    }
    gens.push(one_minus_t.mul(g)?);
    let elim = IdealFp::with_order(p, MonomialOrder::EliminateT, gens).with_gb(degree_ceiling)?;
    let mut quotients = Vec::new();
    for h in elim.gb().unwrap_or_default() {
        if h.terms().all(|(m, _)| m.exp(3) == 0) {
            quotients.push(divide_exact(h, g)?);
        }
    }
    IdealFp::new(p, quotients).with_gb(degree_ceiling)
}

/// `h / g` when `g` divides `h`; an internal error otherwise.
pub fn divide_exact(h: &Poly, g: &Poly) -> Result<Poly> {
    let lg = *g.leading_monomial().ok_or_else(|| Error::Internal("division by zero".into()))?;
    let inv = crate::ring::inverse_mod(g.coeff(&lg).value(), g.p());
    let mut rest = h.clone();
    let mut q = Poly::zero(h.p(), h.level());
    while let Some(lh) = rest.leading_monomial().copied() {
        if !lg.divides(&lh) {
            return Err(Error::Internal(format!("{g} does not divide {h}")));
        }
        let c = rest.coeff(&lh).value() * inv % h.p();
        let m = lg.quotient_of(&lh);
        let step = Poly::term(h.p(), h.level(), m, c as i64);
        rest = rest.sub(&step.mul(g)?)?;
        q = q.add(&step)?;
    }
    Ok(q)
}
