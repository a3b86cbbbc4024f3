//! The δ-operation `Δ₁(g) = (g^p − φ(g))/p`, the lift `f = f₀ + p·G`, and
//! the ladder `f_h = f^{p−1}·Δ₁(f^{p−1})^{1+p+⋯+p^{h−2}}`.

use crate::error::{Error, Result};
use crate::ring::{is_prime, parse_poly, ExponentBox, FrobPowerIdeal, Poly};

/// `Δ₁(g)` for `g` over `Z/p²`, returned over `F_p`.
pub fn delta1(g: &Poly) -> Result<Poly> {
    if g.level() != 2 {
        return Err(Error::Internal("delta1 expects coefficients modulo p^2".into()));
    }
    let diff = g.pow(g.p())?.sub(&g.frobenius_lift()?)?;
    diff.div_exact_p()
}

/// A lift `f = f₀ + p·G` over `Z/p²`, with the derived data every
/// pipeline needs computed once.
#[derive(Debug, Clone)]
pub struct LiftSpec {
    p: u64,
    f0: Poly,
    g: Poly,
    f: Poly,
    fbar: Poly,
    fpm1: Poly,
    dfp: Poly,
}

impl LiftSpec {
    /// `f0` and `g` may be given at either coefficient level; they are
    /// read as integer polynomials and reduced modulo `p²`.
    pub fn new(p: u64, f0: &Poly, g: &Poly) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let f0 = at_level2(p, f0)?;
        let g = at_level2(p, g)?;
        if !f0.is_geometric() || !g.is_geometric() {
            return Err(Error::InvalidInput("only the variables x, y, z are allowed".into()));
        }
        let fbar = f0.reduce_mod_p();
        if fbar.is_zero() {
            return Err(Error::InvalidInput("f0 vanishes modulo p, so p, f is not a regular sequence".into()));
        }
        let f = f0.add(&g.scale(p as i64))?;
        let fp1 = f.pow(p - 1)?;
        let dfp = delta1(&fp1)?;
        let fpm1 = fp1.reduce_mod_p();
        Ok(LiftSpec { p, f0, g, f, fbar, fpm1, dfp })
    }

    pub fn parse(p: u64, f0: &str, g: &str) -> Result<Self> {
        let f0 = parse_poly(f0, p, 2)?;
        let g = parse_poly(g, p, 2)?;
        Self::new(p, &f0, &g)
    }

    /// Natural lift of a polynomial over F_p (coefficients read as integers).
    pub fn natural(fbar: &Poly) -> Result<Self> {
        Self::new(fbar.p(), &fbar.reduce_mod_p().lift_to_level2(), &Poly::zero(fbar.p(), 2))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f0(&self) -> &Poly {
        &self.f0
    }

    pub fn g(&self) -> &Poly {
        &self.g
    }

    /// `f₀ + p·G` over `Z/p²`.
    pub fn f(&self) -> &Poly {
        &self.f
    }

    /// `f mod p`.
    pub fn fbar(&self) -> &Poly {
        &self.fbar
    }

    /// `f^{p−1} mod p`.
    pub fn f_pm1(&self) -> &Poly {
        &self.fpm1
    }

    /// `Δ₁(f^{p−1}) mod p`.
    pub fn dfp(&self) -> &Poly {
        &self.dfp
    }

    pub fn ladder(&self, h_max: u32, cap: ExponentBox) -> Result<FhLadder> {
        FhLadder::build(self, h_max, cap)
    }
}

fn at_level2(p: u64, g: &Poly) -> Result<Poly> {
    if g.p() != p {
        return Err(Error::ModulusMismatch { left: p, right: g.p() });
    }
    Ok(if g.level() == 2 { g.clone() } else { g.lift_to_level2() })
}

/// `g^{p^e}` over F_p restricted to `cap`, never forming exponents that
/// the cap would discard (so huge `e` cannot overflow).
pub fn frobenius_power_capped(g: &Poly, e: u32, cap: &ExponentBox) -> Result<Poly> {
    let q = g.p().checked_pow(e).unwrap_or(u64::MAX);
    let b = cap.bounds();
    let mut out = Poly::zero(g.p(), 1);
    for (m, c) in g.terms() {
        let xyz = m.xyz();
        let keep = (0..3).all(|i| (xyz[i] as u128) * (q as u128) < b[i] as u128);
        if keep {
            out.add_term(m.scale(q)?, c);
        }
    }
    Ok(out)
}

/// The entries `f_1, …, f_{h_max}` truncated to a box.
#[derive(Debug, Clone)]
pub struct FhLadder {
    cap: ExponentBox,
    entries: Vec<Poly>,
    dfp: Poly,
}

impl FhLadder {
    pub fn build(spec: &LiftSpec, h_max: u32, cap: ExponentBox) -> Result<Self> {
        Self::from_parts(spec.f_pm1(), spec.dfp(), h_max, cap)
    }

    pub fn from_parts(fpm1: &Poly, dfp: &Poly, h_max: u32, cap: ExponentBox) -> Result<Self> {
        if h_max == 0 {
            return Err(Error::InvalidInput("ladder height must be at least 1".into()));
        }
        let mut entries = vec![fpm1.truncate(&cap)];
        for h in 1..h_max {
            let factor = frobenius_power_capped(dfp, h - 1, &cap)?;
            let next = entries[h as usize - 1].mul_capped(&factor, &cap)?;
            entries.push(next);
        }
        Ok(FhLadder { cap, entries, dfp: dfp.clone() })
    }

    /// `f_h` for `1 ≤ h ≤ h_max`.
    pub fn entry(&self, h: u32) -> &Poly {
        &self.entries[h as usize - 1]
    }

    pub fn len(&self) -> u32 {
        self.entries.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn cap(&self) -> ExponentBox {
        self.cap
    }

    pub fn dfp(&self) -> &Poly {
        &self.dfp
    }
}

/// The ladder truncated modulo `(x^{p^E}, y^{p^E}, z^{p^E})`.
pub fn fh_ladder(spec: &LiftSpec, h_max: u32, cap_level: u32) -> Result<FhLadder> {
    FhLadder::build(spec, h_max, FrobPowerIdeal::new(spec.p(), cap_level).as_box())
}
