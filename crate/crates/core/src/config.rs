//! Bi-infinite configurations in two-sided eventually periodic form,
//! finite patterns, and cylinders.

use rand::Rng;

use crate::alphabet::{Alphabet, Symbol};
use crate::domain::IntervalDomain;
use crate::error::{Error, Result};

/// A configuration: left-periodic tail, finite center word, right-periodic
/// tail. The center starts at `anchor`; the left tail keeps its period word
/// in natural reading order (the cell just left of the center holds the
/// word's last symbol).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    name: String,
    alphabet: Alphabet,
    left: Vec<Symbol>,
    center: Vec<Symbol>,
    anchor: i64,
    right: Vec<Symbol>,
}

impl Configuration {
    pub fn two_sided(
        name: impl Into<String>,
        alphabet: Alphabet,
        left: Vec<Symbol>,
        center: Vec<Symbol>,
        anchor: i64,
        right: Vec<Symbol>,
    ) -> Result<Self> {
        if left.is_empty() || right.is_empty() {
            return Err(Error::Invalid(
                "configuration tails need nonempty period words".into(),
            ));
        }
        for &s in left.iter().chain(&center).chain(&right) {
            alphabet.check(s)?;
        }
        Ok(Configuration {
            name: name.into(),
            alphabet,
            left,
            center,
            anchor,
            right,
        })
    }

    /// The constant configuration.
    pub fn constant(name: impl Into<String>, alphabet: Alphabet, sym: Symbol) -> Result<Self> {
        Configuration::two_sided(name, alphabet, vec![sym], vec![], 0, vec![sym])
    }

    /// A finite word on a constant background.
    pub fn finite(
        name: impl Into<String>,
        alphabet: Alphabet,
        background: Symbol,
        center: Vec<Symbol>,
        anchor: i64,
    ) -> Result<Self> {
        Configuration::two_sided(name, alphabet, vec![background], center, anchor, vec![background])
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn left_period(&self) -> &[Symbol] {
        &self.left
    }

    pub fn center(&self) -> &[Symbol] {
        &self.center
    }

    pub fn anchor(&self) -> i64 {
        self.anchor
    }

    pub fn right_period(&self) -> &[Symbol] {
        &self.right
    }

    /// The symbol at cell `x`.
    pub fn value_at(&self, x: i64) -> Symbol {
        let center_len = self.center.len() as i64;
        if x < self.anchor {
            let d = (self.anchor - 1 - x) as usize;
            self.left[self.left.len() - 1 - (d % self.left.len())]
        } else if x < self.anchor + center_len {
            self.center[(x - self.anchor) as usize]
        } else {
            let e = (x - self.anchor - center_len) as usize;
            self.right[e % self.right.len()]
        }
    }

    /// The restriction of the configuration to an interval.
    pub fn restrict(&self, d: &IntervalDomain) -> Pattern {
        Pattern {
            domain: *d,
            symbols: d.iter().map(|x| self.value_at(x)).collect(),
        }
    }

    /// The configuration `x ↦ c(x + k)`.
    pub fn shifted(&self, k: i64) -> Configuration {
        let mut out = self.clone();
        out.anchor -= k;
        out
    }

    pub fn agrees_on(&self, other: &Configuration, d: &IntervalDomain) -> bool {
        d.iter().all(|x| self.value_at(x) == other.value_at(x))
    }

    /// A random two-sided configuration with short periods and center, for
    /// seeded trial generation.
    pub fn random<R: Rng>(name: impl Into<String>, alphabet: &Alphabet, rng: &mut R) -> Configuration {
        let s = alphabet.size() as u32;
        fn word<R: Rng>(rng: &mut R, s: u32, len: usize) -> Vec<Symbol> {
            (0..len).map(|_| rng.gen_range(0..s) as Symbol).collect()
        }
        let left_len = rng.gen_range(1..=3);
        let left = word(rng, s, left_len);
        let center_len = rng.gen_range(0..=4);
        let center = word(rng, s, center_len);
        let right_len = rng.gen_range(1..=3);
        let right = word(rng, s, right_len);
        let anchor = rng.gen_range(-3..=3);
        Configuration::two_sided(name, alphabet.clone(), left, center, anchor, right)
            .expect("generated words are valid")
    }
}

/// A finite pattern: symbols on an interval domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    domain: IntervalDomain,
    symbols: Vec<Symbol>,
}

impl Pattern {
    pub fn new(domain: IntervalDomain, symbols: Vec<Symbol>) -> Result<Self> {
        if symbols.len() as u64 != domain.len() {
            return Err(Error::DomainMismatch {
                expected: format!("{} symbols on {domain}", domain.len()),
                got: format!("{} symbols", symbols.len()),
            });
        }
        Ok(Pattern { domain, symbols })
    }

    pub fn empty() -> Self {
        Pattern {
            domain: IntervalDomain::EMPTY,
            symbols: Vec::new(),
        }
    }

    pub fn domain(&self) -> &IntervalDomain {
        &self.domain
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn at(&self, x: i64) -> Option<Symbol> {
        self.domain.index_of(x).map(|i| self.symbols[i])
    }

    /// The pattern `x ↦ p(x + k)`, on the translated domain.
    pub fn shifted(&self, k: i64) -> Pattern {
        Pattern {
            domain: self.domain.translate(-k),
            symbols: self.symbols.clone(),
        }
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        alphabet.render(&self.symbols)
    }
}

/// All configurations agreeing with `base` on `domain`.
#[derive(Debug, Clone)]
pub struct Cylinder {
    base: Configuration,
    domain: IntervalDomain,
}

impl Cylinder {
    pub fn new(base: Configuration, domain: IntervalDomain) -> Self {
        Cylinder { base, domain }
    }

    pub fn base(&self) -> &Configuration {
        &self.base
    }

    pub fn domain(&self) -> &IntervalDomain {
        &self.domain
    }

    pub fn member(&self, e: &Configuration) -> bool {
        e.agrees_on(&self.base, &self.domain)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binary() -> Alphabet {
        Alphabet::binary()
    }

    #[test]
    fn constant_configuration() {
        let c = Configuration::constant("ones", binary(), 1).unwrap();
        for x in [-1000, -1, 0, 1, 12345] {
            assert_eq!(c.value_at(x), 1);
        }
    }

    #[test]
    fn center_read() {
        let c = Configuration::two_sided("c", binary(), vec![0], vec![1, 0, 1], 0, vec![0]).unwrap();
        assert_eq!(c.value_at(0), 1);
        assert_eq!(c.value_at(1), 0);
        assert_eq!(c.value_at(2), 1);
        assert_eq!(c.value_at(-1), 0);
        assert_eq!(c.value_at(3), 0);
    }

    #[test]
    fn left_tail_reading_convention() {
        // left period "01", empty center anchored at 0: … 0 1 0 1 | 0 1 …
        let c =
            Configuration::two_sided("c", binary(), vec![0, 1], vec![], 0, vec![0, 1]).unwrap();
        assert_eq!(c.value_at(-1), 1);
        assert_eq!(c.value_at(-2), 0);
        for x in -20..20i64 {
            assert_eq!(c.value_at(x), (x.rem_euclid(2)) as Symbol);
        }
    }

    #[test]
    fn shift_moves_values() {
        let c = Configuration::finite("c", binary(), 0, vec![1], 0).unwrap();
        let shifted = c.shifted(1);
        assert_eq!(shifted.value_at(-1), 1);
        assert_eq!(shifted.value_at(0), 0);
        for x in -10..10 {
            assert_eq!(shifted.value_at(x), c.value_at(x + 1));
        }
        let zero = c.shifted(0);
        for x in -10..10 {
            assert_eq!(zero.value_at(x), c.value_at(x));
        }
    }

    #[test]
    fn cylinder_membership() {
        let base = Configuration::constant("ones", binary(), 1).unwrap();
        let cyl = Cylinder::new(base.clone(), IntervalDomain::new(0, 3));
        assert!(cyl.member(&base));
        let inside = Configuration::finite("d", binary(), 1, vec![0], 2).unwrap();
        assert!(!cyl.member(&inside));
        let outside = Configuration::finite("d", binary(), 1, vec![0], 9).unwrap();
        assert!(cyl.member(&outside));
    }

    #[test]
    fn pattern_shift() {
        let p = Pattern::new(IntervalDomain::new(2, 4), vec![1, 0, 1]).unwrap();
        let q = p.shifted(1);
        assert_eq!(*q.domain(), IntervalDomain::new(1, 3));
        assert_eq!(q.at(1), Some(1));
        assert_eq!(q.at(3), Some(1));
        assert_eq!(q.at(2), p.at(3));
    }

    #[test]
    fn pattern_length_checked() {
        assert!(Pattern::new(IntervalDomain::new(0, 2), vec![0, 1]).is_err());
        assert!(Pattern::new(IntervalDomain::EMPTY, vec![]).is_ok());
    }
}
