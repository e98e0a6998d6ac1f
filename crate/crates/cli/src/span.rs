use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

/// Inclusive integer interval written `lo..hi`, or a single value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub lo: u32,
    pub hi: u32,
}

impl Span {
    pub const fn new(lo: u32, hi: u32) -> Self {
        Self { lo, hi }
    }

    pub fn iter(self) -> RangeInclusive<u32> {
        self.lo..=self.hi
    }

    /// Intersection with `lo..=hi`, possibly empty.
    pub fn clip(self, lo: u32, hi: u32) -> RangeInclusive<u32> {
        self.lo.max(lo)..=self.hi.min(hi)
    }
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| t.trim().parse::<u32>().map_err(|_| format!("invalid range bound {t:?} in {s:?}"));
        let (lo, hi) = match s.split_once("..") {
            Some((lo, hi)) => (parse(lo)?, parse(hi)?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range {s:?} (lo > hi)"));
        }
        Ok(Span { lo, hi })
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_ranges_and_points() {
        assert_eq!("1..32".parse::<Span>().unwrap(), Span::new(1, 32));
        assert_eq!("7".parse::<Span>().unwrap(), Span::new(7, 7));
        assert_eq!(" 2 .. 3".parse::<Span>().unwrap(), Span::new(2, 3));
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "3..1", "a..2", "1..", "-1..2", "1...3"] {
            assert!(bad.parse::<Span>().is_err(), "{bad}");
        }
    }

    #[test]
    fn clip_intersects() {
        assert_eq!(Span::new(0, 10).clip(1, 4), 1..=4);
        assert!(Span::new(5, 6).clip(0, 2).is_empty());
    }
}
