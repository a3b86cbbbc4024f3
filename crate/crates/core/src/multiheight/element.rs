use super::EngineConfig;
use crate::delta::{frobenius_power_capped, FhLadder, LiftSpec};
use crate::error::{Error, Result};
use crate::ring::{ExponentBox, Poly};

/// Outcome of the first-height search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QfsHeight {
    Height(u32),
    NotQuasiFSplitUpTo(u32),
}

impl QfsHeight {
    pub fn height(self) -> Option<u32> {
        match self {
            QfsHeight::Height(h) => Some(h),
            QfsHeight::NotQuasiFSplitUpTo(_) => None,
        }
    }

    pub fn require(self) -> Result<u32> {
        match self {
            QfsHeight::Height(h) => Ok(h),
            QfsHeight::NotQuasiFSplitUpTo(c) => Err(Error::NotQuasiFSplit(c)),
        }
    }
}

fn pow_bound(p: u64, e: u64) -> Option<u64> {
    let e = u32::try_from(e).ok()?;
    p.checked_pow(e).filter(|&b| b <= 1 << 32)
}

fn cube(b: u64) -> ExponentBox {
    ExponentBox::new([b, b, b])
}

/// Smallest `h ≤ h_cap` with `f_h ∉ (x^{p^h}, y^{p^h}, z^{p^h})`.
pub fn qfs_height(spec: &LiftSpec, h_cap: u32) -> Result<QfsHeight> {
    if h_cap == 0 {
        return Err(Error::InvalidInput("h_cap must be at least 1".into()));
    }
    for h in 1..=h_cap {
        let bound = pow_bound(spec.p(), h as u64).ok_or(Error::ExponentOverflow)?;
        let ladder = FhLadder::build(spec, h, cube(bound))?;
        if !ladder.entry(h).is_zero() {
            return Ok(QfsHeight::Height(h));
        }
    }
    Ok(QfsHeight::NotQuasiFSplitUpTo(h_cap))
}

/// Heights from the element criterion
/// `h_r = min{h : F_{r−1}^{p^h}·f_h ∉ m^{[p^{H_{r−1}+h}]}}`.
///
/// Stops early (returning a shorter prefix) once the exponents involved
/// would no longer fit in 32 bits.
pub fn element_heights(spec: &LiftSpec, count: usize, cfg: &EngineConfig) -> Result<Vec<u32>> {
    let p = spec.p();
    let h0 = qfs_height(spec, cfg.h_cap)?.require()?;
    let mut out = Vec::new();
    let mut acc = Poly::one(p, 1);
    let mut total: u64 = 0;
    while out.len() < count {
        let Some(top) = pow_bound(p, total + h0 as u64) else { break };
        let ladder = FhLadder::build(spec, h0, cube(top))?;
        let mut found = None;
        for h in 1..=h0 {
            let b = cube(pow_bound(p, total + h as u64).expect("below top bound"));
            let lifted = frobenius_power_capped(&acc, h, &b)?;
            let cand = lifted.mul_capped(&ladder.entry(h).truncate(&b), &b)?;
            if !cand.is_zero() {
                found = Some((h, cand));
                break;
            }
        }
        let (h, cand) = found.ok_or_else(|| {
            Error::Internal(format!("no height at most {h0} at step {}", out.len()))
        })?;
        out.push(h);
        acc = cand;
        total += h as u64;
    }
    Ok(out)
}
