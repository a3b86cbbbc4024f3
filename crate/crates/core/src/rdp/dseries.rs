use std::fmt;
use std::str::FromStr;

use crate::delta::{FhLadder, LiftSpec};
use crate::error::{Error, Result};
use crate::multiheight::HeightSeq;
use crate::ring::{ExponentBox, Monomial};
use crate::threshold::{height_seq_to_ppt, PptRational};

/// `D_{2n}^r : z² + x²y + xy^n + xy^{n−r}z` or
/// `D_{2n+1}^r : z² + x²y + y^n z + xy^{n−r}z`; for `r = 0` the last
/// monomial is absent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DFamily {
    Even,
    Odd,
}

impl DFamily {
    pub fn name(self) -> &'static str {
        match self {
            DFamily::Even => "D2n",
            DFamily::Odd => "D2n+1",
        }
    }

    /// The type index `2n` or `2n + 1`.
    pub fn index(self, n: u32) -> u32 {
        match self {
            DFamily::Even => 2 * n,
            DFamily::Odd => 2 * n + 1,
        }
    }
}

impl FromStr for DFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "d2n" | "even" => Ok(DFamily::Even),
            "d2n+1" | "d2n1" | "odd" => Ok(DFamily::Odd),
            _ => Err(Error::UnknownType(s.to_string())),
        }
    }
}

fn y_pow(k: u32) -> String {
    if k == 1 {
        "y".to_string()
    } else {
        format!("y^{k}")
    }
}

pub fn d_equation(family: DFamily, n: u32, r: u32) -> String {
    let head = match family {
        DFamily::Even => format!("z^2+x^2*y+x*{}", y_pow(n)),
        DFamily::Odd => format!("z^2+x^2*y+{}*z", y_pow(n)),
    };
    if r == 0 {
        head
    } else {
        format!("{head}+x*{}*z", y_pow(n - r))
    }
}

/// Whether the `xz` coefficient of `G` is a unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    NoXz,
    Xz,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::NoXz => "no-xz",
            Variant::Xz => "xz",
        }
    }
}

/// The two perturbations with a closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GTag {
    Zero,
    Xz,
}

impl GTag {
    pub fn variant(self) -> Variant {
        match self {
            GTag::Zero => Variant::NoXz,
            GTag::Xz => Variant::Xz,
        }
    }

    pub fn poly(self) -> &'static str {
        match self {
            GTag::Zero => "0",
            GTag::Xz => "x*z",
        }
    }
}

/// The sequences `α_i, e_i` up to and including the first repeated `α`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaESeq {
    pub variant: Variant,
    /// `α_0, …, α_t` with `α_t = α_s`.
    pub alphas: Vec<u64>,
    /// `e_0, …, e_{t−1}`.
    pub es: Vec<u32>,
    pub cycle: (usize, usize),
}

impl AlphaESeq {
    fn wrap(&self, i: usize) -> usize {
        let (s, t) = self.cycle;
        if i < t {
            i
        } else {
            s + (i - s) % (t - s)
        }
    }

    pub fn alpha(&self, i: usize) -> u64 {
        self.alphas[self.wrap(i)]
    }

    pub fn e(&self, i: usize) -> u32 {
        self.es[self.wrap(i)]
    }

    /// The `e`-sequence as a pre-periodic sequence.
    pub fn e_seq(&self) -> Result<HeightSeq> {
        let (s, t) = self.cycle;
        HeightSeq::new(self.es[..s].to_vec(), self.es[s..t].to_vec(), true)
    }
}

/// Runs the recursion for `d = n − r`; the `α_i` stay in `[0, d)`, so a
/// repeat appears within `d + 1` steps.
pub fn alpha_e_sequence(n: u32, r: u32, variant: Variant, step_cap: usize) -> Result<AlphaESeq> {
    if r >= n {
        return Err(Error::InvalidInput(format!("need r < n, got r={r}, n={n}")));
    }
    let d = (n - r) as u64;
    let mut alphas: Vec<u64> = vec![0];
    let mut es: Vec<u32> = Vec::new();
    loop {
        let a = *alphas.last().expect("nonempty");
        if let Some(s) = alphas[..alphas.len() - 1].iter().position(|&b| b == a) {
            let t = alphas.len() - 1;
            return Ok(AlphaESeq { variant, alphas, es, cycle: (s, t) });
        }
        if es.len() >= step_cap.max(d as usize + 1) {
            return Err(Error::Internal("alpha recursion did not repeat".into()));
        }
        let value = |e: u32| -> i128 {
            let base = (1i128 << e) * (1 + a as i128);
            match variant {
                Variant::NoXz => base - (1i128 << (e - 1)) - d as i128,
                Variant::Xz => base - 1 - d as i128,
            }
        };
        let e = (1..).find(|&e| value(e) >= 0).expect("grows without bound");
        es.push(e);
        alphas.push(value(e) as u64);
    }
}

/// Which case of the closed form applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedFormCase {
    /// Every `α_i < r`: the heights are the `e_i`.
    AllBelow,
    /// `m` is the first index with `α_m ≥ r`: the heights are
    /// `e_0, …, e_{m−1}` followed by ones.
    FirstAtLeast { m: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedForm {
    pub seq: HeightSeq,
    pub ppt: PptRational,
    pub case: ClosedFormCase,
}

/// Predicted multi-height and threshold of a `D_{2n}^r` or `D_{2n+1}^r`
/// lift with `G = 0` or `G = xz` (both families behave identically).
///
/// For `G = xz` with some `α_m ≥ r` there is no closed form and the result
/// is `None`.
pub fn dseries_closed_form(n: u32, r: u32, g: GTag) -> Result<Option<ClosedForm>> {
    if r == 0 {
        return Err(Error::InvalidInput("closed forms need 1 ≤ r".into()));
    }
    let seq = alpha_e_sequence(n, r, g.variant(), 0)?;
    let d = (n - r) as i64;
    let (_, t) = seq.cycle;
    let first_big = (0..t).find(|&i| seq.alphas[i] >= r as u64);
    let out = match (first_big, g) {
        (None, GTag::Zero) => ClosedForm {
            seq: seq.e_seq()?,
            ppt: PptRational::new(1, 2 * d - 1)?,
            case: ClosedFormCase::AllBelow,
        },
        (None, GTag::Xz) => ClosedForm { seq: seq.e_seq()?, ppt: PptRational::new(1, d)?, case: ClosedFormCase::AllBelow },
        (Some(m), GTag::Zero) => {
            let hs = HeightSeq::new((0..m).map(|i| seq.e(i)).collect(), vec![1], true)?;
            let ppt = height_seq_to_ppt(&hs, 2);
            ClosedForm { seq: hs, ppt, case: ClosedFormCase::FirstAtLeast { m } }
        }
        (Some(_), GTag::Xz) => return Ok(None),
    };
    Ok(Some(out))
}

/// How `f_h` looks modulo `(x^{2^h}, y^{2^h(1+α)}, z^{2^h}, 2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FhShape {
    Zero,
    /// A unit multiple of the predicted monomial: that monomial occurs and
    /// divides every surviving term.
    Predicted(Monomial),
    /// Anything else; the listed monomials are the surviving terms.
    Other(Vec<Monomial>),
}

impl fmt::Display for FhShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FhShape::Zero => write!(f, "zero"),
            FhShape::Predicted(m) => write!(f, "predicted {m}"),
            FhShape::Other(ms) => {
                let names: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
                write!(f, "other [{}]", names.join(", "))
            }
        }
    }
}

/// Reduces `f_h` of a type-D lift (`p = 2`, `d = n − r`) and compares the
/// remainder with `x^{2^h−1} y^k z^{2^h−1}`, where `k = 2^{h−1} − 1 + d`
/// without a unit `xz` term and `k = d` with one.
pub fn fh_shape_check(spec: &LiftSpec, d: u32, variant: Variant, alpha: u64, h: u32) -> Result<FhShape> {
    if spec.p() != 2 {
        return Err(Error::Precondition("shape check needs p = 2".into()));
    }
    if h == 0 || h > 30 {
        return Err(Error::InvalidInput(format!("height {h} out of range")));
    }
    let q = 1u64 << h;
    let ybound = q.checked_mul(1 + alpha).ok_or(Error::ExponentOverflow)?;
    let ladder = FhLadder::build(spec, h, ExponentBox::new([q, ybound, q]))?;
    let rem = ladder.entry(h);
    if rem.is_zero() {
        return Ok(FhShape::Zero);
    }
    let k = match variant {
        Variant::NoXz => (q / 2 - 1) + d as u64,
        Variant::Xz => d as u64,
    };
    let k = u32::try_from(k).map_err(|_| Error::ExponentOverflow)?;
    let predicted = Monomial::new([(q - 1) as u32, k, (q - 1) as u32]);
    let terms: Vec<Monomial> = rem.terms().map(|(m, _)| *m).collect();
    if terms.contains(&predicted) && terms.iter().all(|t| predicted.divides(t)) {
        Ok(FhShape::Predicted(predicted))
    } else {
        Ok(FhShape::Other(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_examples() {
        let s = alpha_e_sequence(17, 6, Variant::NoXz, 0).unwrap();
        assert_eq!(s.cycle, (0, 2));
        assert_eq!((0..4).map(|i| s.alpha(i)).collect::<Vec<_>>(), vec![0, 5, 0, 5]);
        assert_eq!((0..4).map(|i| s.e(i)).collect::<Vec<_>>(), vec![5, 1, 5, 1]);

        let s = alpha_e_sequence(10, 2, Variant::NoXz, 0).unwrap();
        assert_eq!(s.cycle, (0, 1));
        assert_eq!((s.alpha(3), s.e(3)), (0, 4));

        let s = alpha_e_sequence(6, 3, Variant::Xz, 0).unwrap();
        assert_eq!((s.alpha(2), s.e(2)), (0, 2));
    }

    #[test]
    fn alpha_bounds_and_first_e() {
        for d in 1..40u32 {
            let log = 32 - (d - 1).leading_zeros();
            let s = alpha_e_sequence(d + 1, 1, Variant::NoXz, 0).unwrap();
            assert_eq!(s.e(0), log + 1);
            assert!(s.alphas.iter().all(|&a| a < d as u64));
            let s = alpha_e_sequence(d + 1, 1, Variant::Xz, 0).unwrap();
            assert_eq!(s.e(0), 32 - d.leading_zeros());
            assert!(s.alphas.iter().all(|&a| a < d as u64) && s.es.iter().all(|&e| e >= 1));
        }
    }

    #[test]
    fn closed_forms() {
        let c = dseries_closed_form(17, 6, GTag::Zero).unwrap().unwrap();
        assert_eq!(c.ppt.to_string(), "1/21");
        assert_eq!(c.seq.to_string(), "(5,1)");
        assert_eq!(height_seq_to_ppt(&c.seq, 2), c.ppt);

        let c = dseries_closed_form(17, 2, GTag::Zero).unwrap().unwrap();
        assert_eq!(c.case, ClosedFormCase::FirstAtLeast { m: 2 });
        assert_eq!(c.seq.to_string(), "5,4,(1)");
        assert_eq!(c.ppt.to_string(), "9/256");

        // Here e_2 = 2, yet h_2 is already 1.
        let c = dseries_closed_form(17, 3, GTag::Zero).unwrap().unwrap();
        assert_eq!(c.case, ClosedFormCase::FirstAtLeast { m: 2 });
        assert_eq!(c.seq.to_string(), "5,3,(1)");
        assert_eq!(c.ppt.to_string(), "5/128");

        for m in 2..=8 {
            let c = dseries_closed_form(2 * m, m, GTag::Xz).unwrap().unwrap();
            assert_eq!(c.ppt, PptRational::new(1, m as i64).unwrap());
        }
    }

    #[test]
    fn closed_form_rationals_agree_with_heights() {
        for n in 2..=20 {
            for r in 1..n {
                for g in [GTag::Zero, GTag::Xz] {
                    if let Some(c) = dseries_closed_form(n, r, g).unwrap() {
                        assert_eq!(height_seq_to_ppt(&c.seq, 2), c.ppt, "n={n} r={r} {g:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn shapes() {
        let spec = LiftSpec::parse(2, &d_equation(DFamily::Even, 10, 2), "0").unwrap();
        let got = fh_shape_check(&spec, 8, Variant::NoXz, 0, 4).unwrap();
        assert_eq!(got, FhShape::Predicted(Monomial::new([15, 15, 15])));

        let spec = LiftSpec::parse(2, &d_equation(DFamily::Even, 8, 4), "x*z").unwrap();
        let got = fh_shape_check(&spec, 4, Variant::Xz, 0, 3).unwrap();
        assert_eq!(got, FhShape::Predicted(Monomial::new([7, 4, 7])));

        let spec = LiftSpec::parse(2, &d_equation(DFamily::Even, 17, 2), "0").unwrap();
        assert!(matches!(fh_shape_check(&spec, 15, Variant::NoXz, 9, 1).unwrap(), FhShape::Other(_)));
    }

    #[test]
    fn equations() {
        assert_eq!(d_equation(DFamily::Even, 3, 0), "z^2+x^2*y+x*y^3");
        assert_eq!(d_equation(DFamily::Odd, 5, 4), "z^2+x^2*y+y^5*z+x*y*z");
        assert_eq!("d2n+1".parse::<DFamily>().unwrap(), DFamily::Odd);
    }
}
