//! The colon recursion `J_{r+1} = (J_r^{[p^{h_r}]} : f_{h_r})` with
//! `J_0 = m`, carried out on dual generators: `J_r = ann(Φ_r)`, `Φ_0 = 1`,
//! `Φ_{r+1} = f_{h_r} ∘ Φ_r^{[p^{h_r}]}`.

use std::collections::HashMap;

use super::ideal::{certify_preperiodic, IdealChain};
use super::stable::greatest_stable_ideal;
use super::{qfs_height, Certificate, EngineConfig, HeightReport, HeightSeq, Pipeline};
use crate::delta::{FhLadder, LiftSpec};
use crate::error::{Error, Result};
use crate::groebner::inverse::{annihilator, contract, contract_monomial, dual_frobenius, Annihilator};
use crate::ring::{ExponentBox, Monomial, Poly};

/// Largest number of period repetitions tried by the fallback certificate.
const MAX_REPETITIONS: usize = 3;

/// One transition of the recursion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColonStep {
    pub height: u32,
    pub next: Poly,
}

struct Walker<'a> {
    spec: &'a LiftSpec,
    h0: u32,
    ladders: HashMap<ExponentBox, FhLadder>,
}

impl Walker<'_> {
    /// Smallest `h ≤ h0` with `f_h ∉ ann(Φ)^{[p^h]}`, and the next state.
    fn step(&mut self, phi: &Poly) -> Result<Option<ColonStep>> {
        let p = self.spec.p();
        let q_max = p.checked_pow(self.h0).ok_or(Error::ExponentOverflow)?;
        // Terms of f_h with an exponent beyond those of Φ^{[q]} contract to zero.
        let mut bounds = [0u64; 3];
        for (i, b) in bounds.iter_mut().enumerate() {
            *b = q_max * (phi.max_exp(i) as u64 + 1);
        }
        let cap = ExponentBox::new(bounds);
        if !self.ladders.contains_key(&cap) {
            let ladder = FhLadder::build(self.spec, self.h0, cap)?;
            self.ladders.insert(cap, ladder);
        }
        let ladder = &self.ladders[&cap];
        for h in 1..=self.h0 {
            let dual = dual_frobenius(phi, p.pow(h))?;
            let next = contract(ladder.entry(h), &dual)?;
            if !next.is_zero() {
                return Ok(Some(ColonStep { height: h, next }));
            }
        }
        Ok(None)
    }
}

/// Replays `steps` transitions from the dual generator `phi`.
pub fn replay_colon(spec: &LiftSpec, phi: &Poly, steps: usize, h_cap: u32) -> Result<Vec<ColonStep>> {
    let h0 = qfs_height(spec, h_cap)?.require()?;
    let mut w = Walker { spec, h0, ladders: HashMap::new() };
    let mut out = Vec::new();
    let mut cur = phi.clone();
    for _ in 0..steps {
        let s = w.step(&cur)?.ok_or_else(|| Error::Internal("no admissible height".into()))?;
        cur = s.next.clone();
        out.push(s);
    }
    Ok(out)
}

/// Multi-height by the colon recursion.
///
/// Certificates, tried in order after every step: a repeated colon state,
/// a surviving monomial of the greatest stable ideal, and (once the walk
/// ends without either) the ideal-recursion repetition criterion.
pub fn multiheight_colon(spec: &LiftSpec, cfg: &EngineConfig) -> Result<HeightReport> {
    let p = spec.p();
    let h0 = qfs_height(spec, cfg.h_cap)?.require()?;
    let stable: Vec<Monomial> = greatest_stable_ideal(spec, cfg.stable_degree, cfg.degree_ceiling)?;
    let mut walker = Walker { spec, h0, ladders: HashMap::new() };
    let mut seen: HashMap<Annihilator, usize> = HashMap::new();
    let mut phi = Poly::one(p, 1);
    let mut heights: Vec<u32> = Vec::new();
    let mut certificate = Certificate::None;
    for r in 0..=cfg.r_max {
        if let Some(ann) = annihilator(&phi, cfg.colength_budget)? {
            if let Some(&s) = seen.get(&ann) {
                certificate = Certificate::ColonCycle { s, t: r };
                break;
            }
            seen.insert(ann, r);
        }
        if r == cfg.r_max {
            break;
        }
        let step = walker
            .step(&phi)?
            .ok_or_else(|| Error::Internal(format!("no height at most {h0} at step {r}")))?;
        heights.push(step.height);
        phi = step.next;
        if let Some(a) = stable.iter().find(|a| !contract_monomial(a, &phi).is_zero()) {
            certificate = Certificate::StableOne { step: r, witness: a.to_string() };
            break;
        }
    }
    let steps_computed = heights.len();
    let seq = match &certificate {
        Certificate::ColonCycle { s, t } => {
            HeightSeq::new(heights[..*s].to_vec(), heights[*s..*t].to_vec(), true)?
        }
        Certificate::StableOne { .. } => HeightSeq::new(heights.clone(), vec![1], true)?,
        _ => {
            let observed = observed_sequence(&heights)?;
            if cfg.repeating_fallback {
                let mut chain = IdealChain::new(spec, cfg.degree_ceiling);
                for t in 1..=MAX_REPETITIONS {
                    if let Ok(cert) = certify_preperiodic(&mut chain, &observed, t) {
                        if cert.holds {
                            return Ok(HeightReport {
                                seq: observed.with_certified(true),
                                pipeline: Pipeline::Colon,
                                steps_computed,
                                certificate: Certificate::Repeating { t },
                            });
                        }
                    }
                }
            }
            observed
        }
    };
    Ok(HeightReport { seq, pipeline: Pipeline::Colon, steps_computed, certificate })
}

/// Best uncertified guess: the shortest period explaining the tail.
fn observed_sequence(heights: &[u32]) -> Result<HeightSeq> {
    let n = heights.len();
    for total in 1..=n {
        for period in 1..=total {
            let pre = total - period;
            let fits = (pre..n).all(|i| heights[i] == heights[pre + (i - pre) % period]);
            // Require at least two full repetitions of the guessed period.
            if fits && n >= pre + 2 * period {
                return HeightSeq::new(heights[..pre].to_vec(), heights[pre..pre + period].to_vec(), false);
            }
        }
    }
    HeightSeq::new(heights[..n.saturating_sub(1)].to_vec(), vec![*heights.last().unwrap_or(&1)], false)
}
