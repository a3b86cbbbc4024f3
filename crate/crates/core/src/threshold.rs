//! Exact conversion between multi-heights and perfectoid pure thresholds.
//!
//! A multi-height `(h_0, h_1, …)` with cumulative sums `H_r = h_0 + ⋯ + h_r`
//! gives the base-`p` expansion `Σ c_m p^{−m}` where `c_m = p − 1` when `m`
//! is some `H_r` and `c_m = p − 2` otherwise. Summing that expansion yields
//! `(p−2)/(p−1) + Σ_r p^{−H_r}`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::multiheight::HeightSeq;

/// A reduced rational with positive denominator, always printed as `a/b`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PptRational(BigRational);

impl PptRational {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        Ok(PptRational(BigRational::new(num.into(), den.into())))
    }

    pub fn from_ratio(r: BigRational) -> Self {
        PptRational(r)
    }

    pub fn one() -> Self {
        PptRational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

impl fmt::Display for PptRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for PptRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("not a rational: '{s}'"));
        let (n, d) = match s.trim().split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(PptRational(BigRational::new(n, d)))
    }
}

fn inv_pow(p: u64, e: u64) -> BigRational {
    let e = usize::try_from(e).expect("exponent fits in usize");
    BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(p), e))
}

/// `(p−2)/(p−1) + Σ_r p^{−H_r}`, with the periodic tail summed as a
/// geometric series.
pub fn height_seq_to_ppt(seq: &HeightSeq, p: u64) -> PptRational {
    let big = |v: u64| BigRational::from_integer(BigInt::from(v));
    let mut total = (big(p) - big(2)) / (big(p) - big(1));
    let mut h: u64 = 0;
    for &x in seq.preperiod() {
        h += x as u64;
        total += inv_pow(p, h);
    }
    let mut block = BigRational::zero();
    let mut s: u64 = 0;
    for &x in seq.period() {
        s += x as u64;
        block += inv_pow(p, h + s);
    }
    // Each further pass through the period scales the block by p^{−s}.
    total += block / (BigRational::one() - inv_pow(p, s));
    PptRational(total)
}

/// The first `count` base-`p` digits of `r ∈ (0, 1]`, never ending in
/// zeros: an exact `p`-adic fraction is written with a tail of `p − 1`.
pub fn ppt_digits(r: &PptRational, p: u64, count: usize) -> Result<Vec<u64>> {
    let x = &r.0;
    if !x.is_positive() || *x > BigRational::one() {
        return Err(Error::InvalidInput(format!("{r} is outside (0, 1]")));
    }
    if p < 2 {
        return Err(Error::InvalidInput("base must be at least 2".into()));
    }
    let den = x.denom().clone();
    let pb = BigInt::from(p);
    // Invariant: the remaining value is num/den with 0 < num ≤ den.
    let mut num = x.numer().clone();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let scaled = &num * &pb;
        let (mut d, mut rem) = scaled.div_rem(&den);
        if rem.is_zero() {
            d -= 1;
            rem = den.clone();
        }
        out.push(u64::try_from(&d).expect("digit below the base"));
        num = rem;
    }
    Ok(out)
}

/// Positions (1-based) of the digits equal to `p − 1`, which are the
/// cumulative sums `H_r` when the digits come from a multi-height.
pub fn cumulative_heights_from_digits(digits: &[u64], p: u64) -> Vec<u64> {
    digits
        .iter()
        .enumerate()
        .filter(|(_, &d)| d == p - 1)
        .map(|(i, _)| i as u64 + 1)
        .collect()
}
