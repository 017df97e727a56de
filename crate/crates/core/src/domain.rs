use std::fmt;

/// An integer interval `[lo, hi]`, or the distinguished empty domain.
///
/// Arbitrary subsets of the line would qualify as domains too; intervals
/// cover every construction in this toolkit and keep the file formats
/// simple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IntervalDomain {
    bounds: Option<(i64, i64)>,
}

impl IntervalDomain {
    pub const EMPTY: IntervalDomain = IntervalDomain { bounds: None };

    /// Interval `[lo, hi]`. Panics if `lo > hi`; use `EMPTY` for the empty domain.
    pub fn new(lo: i64, hi: i64) -> Self {
        assert!(lo <= hi, "interval bounds out of order: [{lo}, {hi}]");
        IntervalDomain {
            bounds: Some((lo, hi)),
        }
    }

    pub fn singleton(x: i64) -> Self {
        IntervalDomain::new(x, x)
    }

    pub fn is_empty(&self) -> bool {
        self.bounds.is_none()
    }

    pub fn bounds(&self) -> Option<(i64, i64)> {
        self.bounds
    }

    pub fn lo(&self) -> Option<i64> {
        self.bounds.map(|(lo, _)| lo)
    }

    pub fn hi(&self) -> Option<i64> {
        self.bounds.map(|(_, hi)| hi)
    }

    pub fn len(&self) -> u64 {
        match self.bounds {
            None => 0,
            Some((lo, hi)) => (hi - lo) as u64 + 1,
        }
    }

    pub fn contains(&self, x: i64) -> bool {
        matches!(self.bounds, Some((lo, hi)) if lo <= x && x <= hi)
    }

    pub fn contains_domain(&self, other: &IntervalDomain) -> bool {
        match other.bounds {
            None => true,
            Some((lo, hi)) => self.contains(lo) && self.contains(hi),
        }
    }

    /// Position of `x` within the interval, counting from `lo`.
    pub fn index_of(&self, x: i64) -> Option<usize> {
        match self.bounds {
            Some((lo, hi)) if lo <= x && x <= hi => Some((x - lo) as usize),
            _ => None,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        let bounds = self.bounds;
        bounds.map(|(lo, hi)| lo..=hi).into_iter().flatten()
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &IntervalDomain) -> IntervalDomain {
        match (self.bounds, other.bounds) {
            (None, b) => IntervalDomain { bounds: b },
            (a, None) => IntervalDomain { bounds: a },
            (Some((a, b)), Some((c, d))) => IntervalDomain::new(a.min(c), b.max(d)),
        }
    }

    /// Widens both ends by `r`. The empty domain stays empty.
    pub fn expand(&self, r: i64) -> IntervalDomain {
        match self.bounds {
            None => IntervalDomain::EMPTY,
            Some((lo, hi)) => IntervalDomain::new(lo - r, hi + r),
        }
    }

    pub fn translate(&self, k: i64) -> IntervalDomain {
        match self.bounds {
            None => IntervalDomain::EMPTY,
            Some((lo, hi)) => IntervalDomain::new(lo + k, hi + k),
        }
    }
}

impl fmt::Display for IntervalDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.bounds {
            None => write!(f, "empty"),
            Some((lo, hi)) => write!(f, "[{lo},{hi}]"),
        }
    }
}
