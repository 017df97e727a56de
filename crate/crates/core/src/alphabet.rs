use crate::error::{Error, Result};

/// A cell state, stored as an index into its alphabet.
///
/// Glyphs exist only at I/O boundaries; everything internal works on indices.
pub type Symbol = u8;

const GLYPH_POOL: &str = "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";

/// A finite state set with one display glyph per state.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    glyphs: Vec<char>,
}

impl Alphabet {
    pub fn new(glyphs: impl IntoIterator<Item = char>) -> Result<Self> {
        let glyphs: Vec<char> = glyphs.into_iter().collect();
        if glyphs.is_empty() {
            return Err(Error::Invalid("alphabet must have at least one glyph".into()));
        }
        if glyphs.len() > Symbol::MAX as usize + 1 {
            return Err(Error::Invalid(format!(
                "alphabet of size {} exceeds the supported maximum {}",
                glyphs.len(),
                Symbol::MAX as usize + 1
            )));
        }
        for (i, g) in glyphs.iter().enumerate() {
            if g.is_whitespace() || *g == ',' || *g == '"' {
                return Err(Error::Invalid(format!("glyph {g:?} is not printable-safe")));
            }
            if glyphs[..i].contains(g) {
                return Err(Error::Invalid(format!("duplicate glyph {g:?}")));
            }
        }
        Ok(Alphabet { glyphs })
    }

    /// Parses a glyph string such as `01` or `0123`.
    pub fn parse(s: &str) -> Result<Self> {
        Alphabet::new(s.chars())
    }

    pub fn binary() -> Self {
        Alphabet::parse("01").expect("binary alphabet")
    }

    /// An alphabet of the given size drawn from a fixed glyph pool.
    pub fn canonical(size: usize) -> Result<Self> {
        let pool: Vec<char> = GLYPH_POOL.chars().collect();
        if size > pool.len() {
            return Err(Error::Invalid(format!(
                "no canonical glyphs for alphabet of size {size} (max {})",
                pool.len()
            )));
        }
        Alphabet::new(pool[..size].iter().copied())
    }

    pub fn size(&self) -> usize {
        self.glyphs.len()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.glyphs.len()).map(|i| i as Symbol)
    }

    pub fn contains(&self, s: Symbol) -> bool {
        (s as usize) < self.glyphs.len()
    }

    pub fn check(&self, s: Symbol) -> Result<()> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(Error::SymbolRange {
                symbol: s as usize,
                size: self.size(),
            })
        }
    }

    pub fn glyph(&self, s: Symbol) -> char {
        self.glyphs[s as usize]
    }

    pub fn glyph_string(&self) -> String {
        self.glyphs.iter().collect()
    }

    pub fn symbol_of(&self, glyph: char) -> Result<Symbol> {
        self.glyphs
            .iter()
            .position(|g| *g == glyph)
            .map(|i| i as Symbol)
            .ok_or_else(|| Error::Invalid(format!("glyph {glyph:?} not in alphabet {}", self.glyph_string())))
    }

    /// Renders a symbol word as a glyph string.
    pub fn render(&self, word: &[Symbol]) -> String {
        word.iter().map(|s| self.glyph(*s)).collect()
    }

    /// Reads a glyph string back into a symbol word.
    pub fn read(&self, word: &str) -> Result<Vec<Symbol>> {
        word.chars().map(|g| self.symbol_of(g)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicate_glyphs() {
        assert!(Alphabet::parse("010").is_err());
    }

    #[test]
    fn rejects_empty() {
        assert!(Alphabet::parse("").is_err());
    }

    #[test]
    fn round_trips_words() {
        let a = Alphabet::parse("0123").unwrap();
        let word = a.read("3120").unwrap();
        assert_eq!(word, vec![3, 1, 2, 0]);
        assert_eq!(a.render(&word), "3120");
    }

    #[test]
    fn canonical_sizes() {
        assert_eq!(Alphabet::canonical(4).unwrap(), Alphabet::parse("0123").unwrap());
        assert_eq!(Alphabet::canonical(16).unwrap().size(), 16);
        assert!(Alphabet::canonical(100).is_err());
    }
}
