use std::fmt;

use crate::error::{Error, Result};

/// A pre-periodic sequence of positive integers.
///
/// Stored with a primitive period and the shortest possible preperiod,
/// which together determine the rotation of the period uniquely.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HeightSeq {
    preperiod: Vec<u32>,
    period: Vec<u32>,
    certified: bool,
}

impl HeightSeq {
    pub fn new(preperiod: Vec<u32>, period: Vec<u32>, certified: bool) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidInput("period must be nonempty".into()));
        }
        if preperiod.iter().chain(&period).any(|&h| h == 0) {
            return Err(Error::InvalidInput("heights must be positive".into()));
        }
        let mut seq = HeightSeq { preperiod, period, certified };
        seq.canonicalize();
        let h0 = seq.entry(0);
        if seq.preperiod.iter().chain(&seq.period).any(|&h| h > h0) {
            return Err(Error::InvalidInput(format!("entry exceeds the first height {h0}")));
        }
        Ok(seq)
    }

    /// All heights equal to one.
    pub fn f_pure() -> Self {
        HeightSeq { preperiod: vec![], period: vec![1], certified: true }
    }

    fn canonicalize(&mut self) {
        let n = self.period.len();
        if let Some(d) = (1..=n).find(|&d| n.is_multiple_of(d) && (d..n).all(|i| self.period[i] == self.period[i - d])) {
            self.period.truncate(d);
        }
        while let Some(&last) = self.preperiod.last() {
            if last != *self.period.last().expect("nonempty period") {
                break;
            }
            self.preperiod.pop();
            self.period.rotate_right(1);
        }
    }

    pub fn preperiod(&self) -> &[u32] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u32] {
        &self.period
    }

    pub fn certified(&self) -> bool {
        self.certified
    }

    pub fn with_certified(mut self, certified: bool) -> Self {
        self.certified = certified;
        self
    }

    pub fn entry(&self, i: usize) -> u32 {
        if i < self.preperiod.len() {
            self.preperiod[i]
        } else {
            self.period[(i - self.preperiod.len()) % self.period.len()]
        }
    }

    pub fn prefix(&self, n: usize) -> Vec<u32> {
        (0..n).map(|i| self.entry(i)).collect()
    }

    /// `h_0 + ⋯ + h_k`.
    pub fn cumulative(&self, k: usize) -> u64 {
        (0..=k).map(|i| self.entry(i) as u64).sum()
    }
}

impl fmt::Display for HeightSeq {
    /// `4,(1)` reads as 4, 1, 1, 1, …
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| v.iter().map(|h| h.to_string()).collect::<Vec<_>>().join(",");
        if !self.preperiod.is_empty() {
            write!(f, "{},", join(&self.preperiod))?;
        }
        write!(f, "({})", join(&self.period))
    }
}

impl std::str::FromStr for HeightSeq {
    type Err = Error;

    /// Parses the display form, such as `4,(1)` or `(5,1)`; the result is
    /// marked uncertified.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("not a height sequence: '{s}'"));
        let s = s.trim();
        let open = s.find('(').ok_or_else(bad)?;
        let inner = s[open + 1..].strip_suffix(')').ok_or_else(bad)?;
        let list = |t: &str| -> Result<Vec<u32>> {
            t.split(',').filter(|x| !x.trim().is_empty()).map(|x| x.trim().parse::<u32>().map_err(|_| bad())).collect()
        };
        let head = s[..open].trim().trim_end_matches(',');
        HeightSeq::new(list(head)?, list(inner)?, false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_is_unique() {
        let a = HeightSeq::new(vec![5, 1, 5], vec![1, 5], true).unwrap();
        let b = HeightSeq::new(vec![], vec![5, 1, 5, 1], true).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.preperiod(), &[] as &[u32]);
        assert_eq!(a.period(), &[5, 1]);
    }

    #[test]
    fn trailing_ones_merge_into_period() {
        let s = HeightSeq::new(vec![4, 1, 1], vec![1], false).unwrap();
        assert_eq!(s.preperiod(), &[4]);
        assert_eq!(s.period(), &[1]);
        assert_eq!(s.to_string(), "4,(1)");
    }

    #[test]
    fn invalid_sequences() {
        assert!(HeightSeq::new(vec![], vec![], true).is_err());
        assert!(HeightSeq::new(vec![0], vec![1], true).is_err());
        assert!(HeightSeq::new(vec![2], vec![3], true).is_err());
    }

    #[test]
    fn parses_display_form() {
        for text in ["4,(1)", "(5,1)", "5,4,(1)", "(3)"] {
            let s: HeightSeq = text.parse().unwrap();
            assert_eq!(s.to_string(), text);
            assert!(!s.certified());
        }
        assert!("4,1".parse::<HeightSeq>().is_err());
        assert!("(a)".parse::<HeightSeq>().is_err());
    }

    #[test]
    fn entries_and_sums() {
        let s = HeightSeq::new(vec![5], vec![4, 1], true).unwrap();
        assert_eq!(s.prefix(5), vec![5, 4, 1, 4, 1]);
        assert_eq!(s.cumulative(2), 10);
    }
}
