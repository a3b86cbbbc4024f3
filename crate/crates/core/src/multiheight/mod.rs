//! Multi-heights by three independent routes (element ladder, ideal
//! recursion, colon iteration), their certificates of pre-periodicity,
//! and the naive multi-height of the special fiber.

mod colon;
mod element;
mod ideal;
mod naive;
mod seq;
mod stable;

pub use colon::{multiheight_colon, replay_colon, ColonStep};
pub use element::{element_heights, qfs_height, QfsHeight};
pub use ideal::{certify_preperiodic, ideal_heights, multiheight_ideal, Certification, IdealChain, TranscriptEntry};
pub use naive::{naive_multiheight, naive_multiheight_for, NaiveMode, NaiveReport};
pub use seq::HeightSeq;
pub use stable::{greatest_stable_ideal, stable_one_precondition, stable_one_test};

use serde_json::{json, Value};

use crate::groebner::DEFAULT_DEGREE_CEILING;

/// Limits shared by every pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineConfig {
    /// Largest first height searched before declaring failure.
    pub h_cap: u32,
    /// Largest number of recursion steps.
    pub r_max: usize,
    /// Total-degree ceiling for Gröbner computations.
    pub degree_ceiling: u32,
    /// Colon states whose colength exceeds this are not canonicalized.
    pub colength_budget: usize,
    /// Degree bound for the monomial generators of the stable ideal.
    pub stable_degree: u32,
    /// Try the ideal-recursion certificate when the colon walk ends
    /// without one.
    pub repeating_fallback: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            h_cap: 12,
            r_max: 64,
            degree_ceiling: DEFAULT_DEGREE_CEILING,
            colength_budget: 1024,
            stable_degree: 4,
            repeating_fallback: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pipeline {
    Element,
    Ideal,
    Colon,
}

impl Pipeline {
    pub fn name(self) -> &'static str {
        match self {
            Pipeline::Element => "element",
            Pipeline::Ideal => "ideal",
            Pipeline::Colon => "colon",
        }
    }
}

/// What proved the sequence pre-periodic, if anything.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// The colon states at steps `s < t` coincide.
    ColonCycle { s: usize, t: usize },
    /// A monomial `witness` of a stable ideal survives after step `step`,
    /// so every later height is one.
    StableOne { step: usize, witness: String },
    /// The ideal recursion's repetition criterion holds with `t` periods.
    Repeating { t: usize },
    None,
}

impl Certificate {
    pub fn name(&self) -> &'static str {
        match self {
            Certificate::ColonCycle { .. } => "colon-cycle",
            Certificate::StableOne { .. } => "stable-one",
            Certificate::Repeating { .. } => "repeating",
            Certificate::None => "none",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightReport {
    pub seq: HeightSeq,
    pub pipeline: Pipeline,
    pub steps_computed: usize,
    pub certificate: Certificate,
}

impl HeightReport {
    pub fn to_json(&self) -> Value {
        let cycle = match self.certificate {
            Certificate::ColonCycle { s, t } => json!([s, t]),
            _ => Value::Null,
        };
        let mut v = json!({
            "preperiod": self.seq.preperiod(),
            "period": self.seq.period(),
            "certified": self.seq.certified(),
            "pipeline": self.pipeline.name(),
            "cycle": cycle,
            "certificate": self.certificate.name(),
            "steps": self.steps_computed,
        });
        if let Certificate::StableOne { step, witness } = &self.certificate {
            v["stable_step"] = json!(step);
            v["stable_witness"] = json!(witness);
        }
        if let Certificate::Repeating { t } = self.certificate {
            v["repeating_t"] = json!(t);
        }
        v
    }
}
