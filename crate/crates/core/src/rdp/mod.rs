//! Rational double point equations.
//!
//! The catalog pairs each non-taut equation with its known thresholds and
//! lists taut witnesses separately. Type D has its own submodules for the
//! `(α_i, e_i)` recursions and for parameter scans.

mod dseries;
mod scan;

pub use dseries::{
    alpha_e_sequence, d_equation, dseries_closed_form, fh_shape_check, AlphaESeq, ClosedForm, ClosedFormCase, DFamily,
    FhShape, GTag, Variant,
};
pub use scan::{sigma_scan, ScanCell, ScanReport, ScanRequest, ScanValue};

use std::fmt;
use std::str::FromStr;

use crate::delta::LiftSpec;
use crate::error::{Error, Result};
use crate::ring::{parse_poly, Poly};
use crate::threshold::PptRational;

/// An RDP type: `A_n`, `D_N^r` (with `N ≥ 4`) or `E_k^r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RdpType {
    A(u32),
    D { index: u32, r: u32 },
    E6(u32),
    E7(u32),
    E8(u32),
}

impl fmt::Display for RdpType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RdpType::A(n) => write!(f, "A_{n}"),
            RdpType::D { index, r } => write!(f, "D_{index}^{r}"),
            RdpType::E6(r) => write!(f, "E_6^{r}"),
            RdpType::E7(r) => write!(f, "E_7^{r}"),
            RdpType::E8(r) => write!(f, "E_8^{r}"),
        }
    }
}

impl FromStr for RdpType {
    type Err = Error;

    /// Accepts `E_8^2`, `E8^2`, `E8`, `D_{34}^1`, `D34^1`, `A_1`, `A1`.
    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownType(s.to_string());
        let cleaned: String = s.chars().filter(|c| !matches!(c, '_' | '{' | '}' | ' ')).collect();
        let mut chars = cleaned.chars();
        let letter = chars.next().ok_or_else(unknown)?.to_ascii_uppercase();
        let rest: String = chars.collect();
        let (index, r) = match rest.split_once('^') {
            Some((i, r)) => (i.to_string(), r.parse::<u32>().map_err(|_| unknown())?),
            None => (rest, 0),
        };
        let index: u32 = index.parse().map_err(|_| unknown())?;
        match (letter, index) {
            ('A', n) if n >= 1 && r == 0 => Ok(RdpType::A(n)),
            ('D', n) if n >= 4 => Ok(RdpType::D { index: n, r }),
            ('E', 6) => Ok(RdpType::E6(r)),
            ('E', 7) => Ok(RdpType::E7(r)),
            ('E', 8) => Ok(RdpType::E8(r)),
            _ => Err(unknown()),
        }
    }
}

/// A catalog equation `f̄` with integer coefficients; its natural lift to
/// `W(k)` reads the same coefficients as integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RdpSpec {
    pub p: u64,
    pub kind: RdpType,
    pub equation: String,
}

impl RdpSpec {
    pub fn poly(&self) -> Result<Poly> {
        parse_poly(&self.equation, self.p, 2)
    }

    /// The lift `f + pG`.
    pub fn lift(&self, g: &str) -> Result<LiftSpec> {
        LiftSpec::parse(self.p, &self.equation, g)
    }
}

/// One non-taut row: the equation and every `(ppt, G)` pair listed for it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableRow {
    pub p: u64,
    pub kind: RdpType,
    pub equation: &'static str,
    pub values: &'static [(&'static str, &'static str)],
}

impl TableRow {
    pub fn spec(&self) -> RdpSpec {
        RdpSpec { p: self.p, kind: self.kind, equation: self.equation.to_string() }
    }

    pub fn expected(&self) -> Vec<(PptRational, &'static str)> {
        self.values.iter().map(|(v, g)| (v.parse().expect("catalog rational"), *g)).collect()
    }
}

const fn row(
    p: u64,
    kind: RdpType,
    equation: &'static str,
    values: &'static [(&'static str, &'static str)],
) -> TableRow {
    TableRow { p, kind, equation, values }
}

/// Non-taut rows other than the type-D families.
pub const TABLE: &[TableRow] = &[
    row(2, RdpType::E6(0), "z^2+x^3+y^2*z", &[("1/2", "0")]),
    row(2, RdpType::E6(1), "z^2+x^3+y^2*z+x*y*z", &[("1", "0")]),
    row(2, RdpType::E7(0), "z^2+x^3+x*y^3", &[("1/8", "0"), ("1/4", "y^2"), ("1/2", "1")]),
    row(2, RdpType::E7(1), "z^2+x^3+x*y^3+x^2*y*z", &[("1/7", "0"), ("1/4", "y^2"), ("1/2", "1")]),
    row(2, RdpType::E7(2), "z^2+x^3+x*y^3+y^3*z", &[("1/3", "0"), ("1/2", "1")]),
    row(2, RdpType::E7(3), "z^2+x^3+x*y^3+x*y*z", &[("1", "0")]),
    row(2, RdpType::E8(0), "z^2+x^3+y^5", &[("1/8", "0"), ("1/4", "y^2"), ("1/2", "1")]),
    row(
        2,
        RdpType::E8(1),
        "z^2+x^3+y^5+x*y^3*z",
        &[("1/8", "0"), ("1/7", "y^2*z"), ("1/4", "y^2"), ("1/3", "x*z"), ("1/2", "1")],
    ),
    row(2, RdpType::E8(2), "z^2+x^3+y^5+x*y^2*z", &[("1/7", "0"), ("1/4", "y^2"), ("1/2", "1")]),
    row(2, RdpType::E8(3), "z^2+x^3+y^5+y^3*z", &[("1/3", "0"), ("1/2", "1")]),
    row(2, RdpType::E8(4), "z^2+x^3+y^5+x*y*z", &[("1", "0")]),
    row(3, RdpType::E6(0), "z^2+x^3+y^4", &[("2/3", "0")]),
    row(3, RdpType::E6(1), "z^2+x^3+y^4+x^2*y^2", &[("1", "0")]),
    row(3, RdpType::E7(0), "z^2+x^3+x*y^3", &[("2/3", "0")]),
    row(3, RdpType::E7(1), "z^2+x^3+x*y^3+x^2*y^2", &[("1", "0")]),
    row(3, RdpType::E8(0), "z^2+x^3+y^5", &[("5/9", "0"), ("2/3", "1")]),
    row(3, RdpType::E8(1), "z^2+x^3+y^5+x^2*y^3", &[("5/8", "0"), ("2/3", "1")]),
    row(3, RdpType::E8(2), "z^2+x^3+y^5+x^2*y^2", &[("1", "0")]),
    row(5, RdpType::E8(0), "z^2+x^3+y^5", &[("4/5", "0")]),
    row(5, RdpType::E8(1), "z^2+x^3+y^5+x*y^4", &[("1", "0")]),
];

pub fn table_rows(p: u64) -> Vec<TableRow> {
    TABLE.iter().filter(|r| r.p == p).copied().collect()
}

fn ceil_log2(n: u32) -> u32 {
    u32::BITS - n.saturating_sub(1).leading_zeros()
}

/// The `(ppt, G)` pairs of the `D_{2n}^0` and `D_{2n+1}^0` rows:
/// `1/2^{⌈log₂ n⌉}` for `G = 0` and `1/2^i` for `G = y^{2^{i−1}}`,
/// `1 ≤ i < ⌈log₂ n⌉`.
pub fn d_zero_values(n: u32) -> Vec<(PptRational, String)> {
    let top = ceil_log2(n);
    let mut out = vec![(PptRational::new(1, 1 << top).expect("nonzero"), "0".to_string())];
    for i in 1..top {
        out.push((PptRational::new(1, 1 << i).expect("nonzero"), format!("y^{}", 1u32 << (i - 1))));
    }
    out
}

/// The equation of `(p, kind)`.
///
/// Non-taut `E` types come from [`TABLE`]; `A_n` is `xy + z^{n+1}`; at
/// `p = 2` the type-D equations follow the two templates, and at odd `p`
/// `D_N` is `z² + x²y + y^{N−1}`.
pub fn catalog_equation(p: u64, kind: RdpType) -> Result<RdpSpec> {
    let unknown = || Error::UnknownType(format!("{kind} at p={p}"));
    let equation = match kind {
        RdpType::A(n) => format!("x*y+z^{}", n + 1),
        RdpType::D { index, r } if p == 2 => {
            let family = if index % 2 == 0 { DFamily::Even } else { DFamily::Odd };
            let n = index / 2;
            if r >= n {
                return Err(unknown());
            }
            d_equation(family, n, r)
        }
        RdpType::D { index, r: 0 } => format!("z^2+x^2*y+y^{}", index - 1),
        RdpType::D { .. } => return Err(unknown()),
        _ => match TABLE.iter().find(|row| row.p == p && row.kind == kind) {
            Some(row) => row.equation.to_string(),
            None => match kind {
                RdpType::E6(0) | RdpType::E7(0) if p >= 5 => taut_e(kind).to_string(),
                RdpType::E8(0) if p >= 7 => taut_e(kind).to_string(),
                _ => return Err(unknown()),
            },
        },
    };
    Ok(RdpSpec { p, kind, equation })
}

fn taut_e(kind: RdpType) -> &'static str {
    match kind {
        RdpType::E6(_) => "z^2+x^3+y^4",
        RdpType::E7(_) => "z^2+x^3+x*y^3",
        _ => "z^2+x^3+y^5",
    }
}

/// Taut RDPs: one per type where the characteristic allows it.
pub fn taut_witnesses() -> Vec<RdpSpec> {
    let list: &[(u64, RdpType)] = &[
        (2, RdpType::A(1)),
        (2, RdpType::A(3)),
        (3, RdpType::A(1)),
        (3, RdpType::A(2)),
        (5, RdpType::A(1)),
        (5, RdpType::A(4)),
        (3, RdpType::D { index: 5, r: 0 }),
        (5, RdpType::D { index: 6, r: 0 }),
        (5, RdpType::E6(0)),
        (5, RdpType::E7(0)),
        (7, RdpType::E8(0)),
    ];
    list.iter().map(|&(p, k)| catalog_equation(p, k).expect("catalog entry")).collect()
}
