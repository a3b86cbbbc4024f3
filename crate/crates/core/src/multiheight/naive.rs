use super::ideal::{chain_heights, ChainMode, IdealChain};
use crate::delta::LiftSpec;
use crate::error::Result;
use crate::ring::Poly;

/// How `Ī ∩ Ker u` is handled in the θ-steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NaiveMode {
    /// Exact, through syzygies of the trace images.
    Exact,
    /// Linear algebra on elements of total degree at most the bound.
    Bounded(u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaiveReport {
    pub prefix: Vec<u32>,
    pub mode: NaiveMode,
}

/// Naive multi-height prefix of length `r_max` for `f̄`, using its
/// natural lift (the result does not depend on the lift).
pub fn naive_multiheight(fbar: &Poly, r_max: usize, h_cap: u32, mode: NaiveMode, degree_ceiling: u32) -> Result<NaiveReport> {
    naive_multiheight_for(&LiftSpec::natural(fbar)?, r_max, h_cap, mode, degree_ceiling)
}

/// Same, starting from a given lift.
pub fn naive_multiheight_for(spec: &LiftSpec, r_max: usize, h_cap: u32, mode: NaiveMode, degree_ceiling: u32) -> Result<NaiveReport> {
    let chain_mode = match mode {
        NaiveMode::Exact => ChainMode::KernelExact,
        NaiveMode::Bounded(d) => ChainMode::KernelBounded(d),
    };
    let mut chain = IdealChain::with_mode(spec, degree_ceiling, chain_mode);
    let prefix = chain_heights(&mut chain, r_max, h_cap, false)?;
    Ok(NaiveReport { prefix, mode })
}
