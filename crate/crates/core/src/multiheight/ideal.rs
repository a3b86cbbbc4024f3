//! The ideal recursion
//!
//! ```text
//! I_1             = f^{p−1} + I^{[p]}
//! I_{(1, n…)}     = u(F_* I_{(n…)})·f^{p−1} + I^{[p]}
//! I_{(n, n…)}     = θ(F_* I_{(n−1, n…)}) + I_1
//! ```
//!
//! built from the innermost entry outwards, and the repetition criterion
//! that certifies a pre-periodic candidate from finitely many ideals.

use std::collections::HashMap;

use super::{EngineConfig, HeightSeq};
use crate::delta::LiftSpec;
use crate::error::{Error, Result};
use crate::groebner::IdealFp;
use crate::ring::Poly;
use crate::trace::{ideal_image_theta, ideal_image_u, kernel_u_intersect, theta, theta_of_kernel, TraceContext};

/// How the θ-steps are taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum ChainMode {
    /// `θ(F_* I)`.
    Full,
    /// `θ(F_*(I ∩ Ker u))`, exactly.
    KernelExact,
    /// `θ(F_*(I ∩ Ker u))` from the kernel elements of degree at most the bound.
    KernelBounded(u32),
}

/// Memoized ideals `I_{(n_0, …, n_r)}` of one lift.
pub struct IdealChain {
    ctx: TraceContext,
    mode: ChainMode,
    ceiling: u32,
    fpm1: Poly,
    fp: Poly,
    i1: IdealFp,
    memo: HashMap<Vec<u32>, IdealFp>,
}

impl IdealChain {
    pub fn new(spec: &LiftSpec, degree_ceiling: u32) -> Self {
        Self::with_mode(spec, degree_ceiling, ChainMode::Full)
    }

    pub(crate) fn with_mode(spec: &LiftSpec, degree_ceiling: u32, mode: ChainMode) -> Self {
        let p = spec.p();
        let fpm1 = spec.f_pm1().clone();
        let fp = fpm1.mul(spec.fbar()).expect("same modulus");
        let mut i1 = IdealFp::new(p, vec![fpm1.clone()]);
        i1.gb_override(vec![fpm1.monic()]);
        IdealChain { ctx: TraceContext::new(spec), mode, ceiling: degree_ceiling, fpm1, fp, i1, memo: HashMap::new() }
    }

    pub fn p(&self) -> u64 {
        self.ctx.p()
    }

    /// `I_{seq}` with its reduced basis.
    pub fn ideal(&mut self, seq: &[u32]) -> Result<IdealFp> {
        if seq.is_empty() || seq.contains(&0) {
            return Err(Error::InvalidInput("index sequences must be nonempty and positive".into()));
        }
        if let Some(i) = self.memo.get(seq) {
            return Ok(i.clone());
        }
        let out = if seq == [1] {
            self.i1.clone()
        } else if seq[0] == 1 {
            let inner = self.ideal(&seq[1..])?;
            self.outer_step(&inner)?
        } else {
            let mut prev = seq.to_vec();
            prev[0] -= 1;
            let inner = self.ideal(&prev)?;
            self.theta_step(&inner)?
        };
        self.memo.insert(seq.to_vec(), out.clone());
        Ok(out)
    }

    /// `I_{seq} ⊄ m^{[p]}`.
    pub fn escapes(&mut self, seq: &[u32]) -> Result<bool> {
        Ok(!self.ideal(seq)?.contained_in_frob_power(1))
    }

    fn outer_step(&self, inner: &IdealFp) -> Result<IdealFp> {
        let image = ideal_image_u(inner, self.ceiling)?;
        let mut gens = Vec::with_capacity(image.gb().map_or(0, |g| g.len()) + 1);
        for g in image.basis_or_generators() {
            gens.push(g.mul(&self.fpm1)?);
        }
        gens.push(self.fp.clone());
        IdealFp::new(self.p(), gens).with_gb(self.ceiling)
    }

    fn theta_step(&self, inner: &IdealFp) -> Result<IdealFp> {
        let image = match self.mode {
            ChainMode::Full => ideal_image_theta(&self.ctx, inner, self.ceiling)?,
            ChainMode::KernelExact => theta_of_kernel(&self.ctx, inner, self.ceiling)?,
            ChainMode::KernelBounded(d) => {
                let ker = kernel_u_intersect(inner, d)?;
                let mut gens = Vec::new();
                for k in &ker {
                    let t = theta(&self.ctx, k)?;
                    if !t.is_zero() {
                        gens.push(t);
                    }
                }
                IdealFp::new(self.p(), gens).with_gb(self.ceiling)?
            }
        };
        image.sum(&self.i1).with_gb(self.ceiling)
    }
}

/// The ideals `I_{(n_0)}, I_{(n_0, n_1)}, …` for every prefix of `seq`.
pub fn multiheight_ideal(spec: &LiftSpec, seq: &[u32], degree_ceiling: u32) -> Result<Vec<IdealFp>> {
    let mut chain = IdealChain::new(spec, degree_ceiling);
    (1..=seq.len()).map(|k| chain.ideal(&seq[..k])).collect()
}

/// `n_r = min{n : I_{(n_0, …, n_{r−1}, n)} ⊄ m^{[p]}}` for `r < count`.
pub(crate) fn chain_heights(chain: &mut IdealChain, count: usize, h_cap: u32, bounded_by_first: bool) -> Result<Vec<u32>> {
    let mut out: Vec<u32> = Vec::new();
    while out.len() < count {
        let limit = match out.first() {
            Some(&h0) if bounded_by_first => h0,
            _ => h_cap,
        };
        let mut found = None;
        for h in 1..=limit {
            let mut seq = out.clone();
            seq.push(h);
            if chain.escapes(&seq)? {
                found = Some(h);
                break;
            }
        }
        match found {
            Some(h) => out.push(h),
            None if out.is_empty() => return Err(Error::NotQuasiFSplit(h_cap)),
            None => return Err(Error::Internal(format!("no height at most {limit} at step {}", out.len()))),
        }
    }
    Ok(out)
}

/// Heights from the ideal recursion.
pub fn ideal_heights(spec: &LiftSpec, count: usize, cfg: &EngineConfig) -> Result<Vec<u32>> {
    let mut chain = IdealChain::new(spec, cfg.degree_ceiling);
    chain_heights(&mut chain, count, cfg.h_cap, true)
}

/// One comparison made while checking the repetition criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TranscriptEntry {
    /// `I_{seq} ⊄ m^{[p]}` and, when the last entry is at least 2, the
    /// decremented index gives an ideal inside `m^{[p]}`.
    Minimal { seq: Vec<u32>, holds: bool },
    /// `I_{left} = I_{right}`.
    Equal { left: Vec<u32>, right: Vec<u32>, holds: bool },
}

impl TranscriptEntry {
    pub fn holds(&self) -> bool {
        match self {
            TranscriptEntry::Minimal { holds, .. } | TranscriptEntry::Equal { holds, .. } => *holds,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certification {
    pub holds: bool,
    pub transcript: Vec<TranscriptEntry>,
}

/// Checks that `candidate` is the multi-height using `t` repetitions of
/// its period: minimality of the first `r + t·s` entries, and equality of
/// the suffix ideals after `t − 1` and `t` periods (also with the last
/// entry decremented when that entry is at least 2).
pub fn certify_preperiodic(chain: &mut IdealChain, candidate: &HeightSeq, t: usize) -> Result<Certification> {
    if t == 0 {
        return Err(Error::InvalidInput("t must be positive".into()));
    }
    let r = candidate.preperiod().len();
    let per = candidate.period().to_vec();
    let s = per.len();
    let mut transcript = Vec::new();
    let finish = |transcript: Vec<TranscriptEntry>| {
        let holds = transcript.iter().all(TranscriptEntry::holds);
        Ok(Certification { holds, transcript })
    };
    for m in 0..(r + t * s) {
        let seq = candidate.prefix(m + 1);
        let mut holds = chain.escapes(&seq)?;
        if holds && seq[m] >= 2 {
            let mut lower = seq.clone();
            lower[m] -= 1;
            holds = !chain.escapes(&lower)?;
        }
        transcript.push(TranscriptEntry::Minimal { seq, holds });
        if !holds {
            return finish(transcript);
        }
    }
    let repeated = |k: usize| -> Vec<u32> { per.iter().cycle().take(k * s).copied().collect() };
    for u in 0..s {
        let tail: Vec<u32> = per[..=u].to_vec();
        let mut variants = vec![tail.clone()];
        if per[u] >= 2 {
            let mut dec = tail.clone();
            dec[u] -= 1;
            variants.push(dec);
        }
        for v in variants {
            let mut left = repeated(t - 1);
            left.extend(&v);
            let mut right = repeated(t);
            right.extend(&v);
            let a = chain.ideal(&left)?;
            let b = chain.ideal(&right)?;
            let holds = a.gb() == b.gb();
            transcript.push(TranscriptEntry::Equal { left, right, holds });
            if !holds {
                return finish(transcript);
            }
        }
    }
    finish(transcript)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::DEFAULT_DEGREE_CEILING;

    fn spec(p: u64, f: &str, g: &str) -> LiftSpec {
        LiftSpec::parse(p, f, g).unwrap()
    }

    #[test]
    fn first_ideal_of_a1() {
        let s = spec(2, "x*y+z^2", "0");
        let chain = multiheight_ideal(&s, &[1], DEFAULT_DEGREE_CEILING).unwrap();
        assert_eq!(chain[0].render(), vec!["x*y+z^2"]);
        assert!(!chain[0].contained_in_frob_power(1));
    }

    #[test]
    fn ideal_heights_match_known_prefixes() {
        let cfg = EngineConfig::default();
        assert_eq!(ideal_heights(&spec(2, "z^2+x^3+y^5", "0"), 3, &cfg).unwrap(), vec![4, 1, 1]);
        assert_eq!(ideal_heights(&spec(2, "z^2+x^3+x*y^3+y^3*z", "0"), 3, &cfg).unwrap(), vec![2, 2, 2]);
    }

    #[test]
    fn repetition_criterion() {
        let s = spec(2, "x*y+z^2", "0");
        let mut chain = IdealChain::new(&s, DEFAULT_DEGREE_CEILING);
        assert!(certify_preperiodic(&mut chain, &HeightSeq::f_pure(), 1).unwrap().holds);

        let s = spec(2, "z^2+x^3+x*y^3+x^2*y*z", "0");
        let mut chain = IdealChain::new(&s, DEFAULT_DEGREE_CEILING);
        let good = HeightSeq::new(vec![], vec![3], false).unwrap();
        // One period is not enough: I_(2) and I_(3,2) differ.
        let once = certify_preperiodic(&mut chain, &good, 1).unwrap();
        assert!(!once.holds);
        assert!(matches!(once.transcript.last(), Some(TranscriptEntry::Equal { .. })));
        assert!(certify_preperiodic(&mut chain, &good, 2).unwrap().holds);
        let bad = HeightSeq::new(vec![], vec![2], false).unwrap();
        assert!(!certify_preperiodic(&mut chain, &bad, 1).unwrap().holds);
    }
}
