use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Number of exponent slots. Slots 0..3 are x, y, z; the remaining two are
/// auxiliary variables used by elimination and module computations.
pub const NVARS: usize = 5;

pub const VAR_NAMES: [&str; NVARS] = ["x", "y", "z", "t", "w"];

/// An exponent vector, ordered by graded reverse lexicographic order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial([u32; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn new(xyz: [u32; 3]) -> Self {
        Monomial([xyz[0], xyz[1], xyz[2], 0, 0])
    }

    pub fn from_slots(e: [u32; NVARS]) -> Self {
        Monomial(e)
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; NVARS];
        e[i] = 1;
        Monomial(e)
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn exps(&self) -> [u32; NVARS] {
        self.0
    }

    pub fn xyz(&self) -> [u32; 3] {
        [self.0[0], self.0[1], self.0[2]]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    #[inline]
    pub fn mul(&self, o: &Monomial) -> Result<Monomial> {
        let mut e = [0; NVARS];
        for (i, slot) in e.iter_mut().enumerate() {
            *slot = self.0[i].checked_add(o.0[i]).ok_or(Error::ExponentOverflow)?;
        }
        Ok(Monomial(e))
    }

    pub fn scale(&self, q: u64) -> Result<Monomial> {
        let mut e = [0; NVARS];
        for (i, slot) in e.iter_mut().enumerate() {
            let v = self.0[i] as u64 * q;
            *slot = u32::try_from(v).map_err(|_| Error::ExponentOverflow)?;
        }
        Ok(Monomial(e))
    }

    #[inline]
    pub fn divides(&self, o: &Monomial) -> bool {
        (0..NVARS).all(|i| self.0[i] <= o.0[i])
    }

    /// `o / self`, assuming `self` divides `o`.
    #[inline]
    pub fn quotient_of(&self, o: &Monomial) -> Monomial {
        let mut e = [0; NVARS];
        for (i, slot) in e.iter_mut().enumerate() {
            *slot = o.0[i] - self.0[i];
        }
        Monomial(e)
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        let mut e = [0; NVARS];
        for (i, slot) in e.iter_mut().enumerate() {
            *slot = self.0[i].max(o.0[i]);
        }
        Monomial(e)
    }

    pub fn is_coprime(&self, o: &Monomial) -> bool {
        (0..NVARS).all(|i| self.0[i] == 0 || o.0[i] == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| {
            for i in (0..NVARS).rev() {
                match self.0[i].cmp(&o.0[i]) {
                    Ordering::Equal => continue,
                    other => return other.reverse(),
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(VAR_NAMES[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
