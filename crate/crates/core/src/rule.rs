//! Local rules and rule sets: finite truth tables over symmetric windows.

use std::collections::BTreeMap;

use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};
use crate::words::{check_cap, word_code, WordIter};

/// A radius-`r` local rule: a total table from windows of length `2r+1` to
/// single symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalRule {
    name: String,
    radius: usize,
    alphabet: Alphabet,
    table: Vec<Symbol>,
}

fn check_name(name: &str) -> Result<()> {
    if name.is_empty() {
        return Err(Error::Invalid("rule name must be nonempty".into()));
    }
    if name.chars().any(|c| c.is_whitespace() || c == ',' || c == '"') {
        return Err(Error::Invalid(format!(
            "rule name `{name}` may not contain whitespace, commas or quotes"
        )));
    }
    Ok(())
}

impl LocalRule {
    /// Builds the full table by evaluating `f` on every window.
    pub fn from_fn(
        name: impl Into<String>,
        alphabet: &Alphabet,
        radius: usize,
        f: impl Fn(&[Symbol]) -> Symbol,
    ) -> Result<Self> {
        let name = name.into();
        check_name(&name)?;
        let width = 2 * radius + 1;
        check_cap(alphabet.size(), width as u64, 1 << 30)?;
        let mut table = Vec::new();
        let mut it = WordIter::new(alphabet.size(), width);
        while let Some(w) = it.next_word() {
            let out = f(w);
            alphabet.check(out)?;
            table.push(out);
        }
        Ok(LocalRule {
            name,
            radius,
            alphabet: alphabet.clone(),
            table,
        })
    }

    /// Wraps an explicit table; entry `i` is the output for the window whose
    /// code (leftmost-most-significant) is `i`.
    pub fn from_table(
        name: impl Into<String>,
        alphabet: &Alphabet,
        radius: usize,
        table: Vec<Symbol>,
    ) -> Result<Self> {
        let name = name.into();
        check_name(&name)?;
        let width = 2 * radius + 1;
        let expected = crate::words::word_count(alphabet.size(), width as u64);
        if table.len() as u128 != expected {
            return Err(Error::Invalid(format!(
                "rule `{name}`: table has {} entries, radius {radius} over {} symbols needs {expected}",
                table.len(),
                alphabet.size()
            )));
        }
        for &out in &table {
            alphabet.check(out)?;
        }
        Ok(LocalRule {
            name,
            radius,
            alphabet: alphabet.clone(),
            table,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn window_len(&self) -> usize {
        2 * self.radius + 1
    }

    pub fn table(&self) -> &[Symbol] {
        &self.table
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        check_name(&name)?;
        self.name = name;
        Ok(self)
    }

    /// Applies the rule to one window.
    pub fn eval(&self, window: &[Symbol]) -> Result<Symbol> {
        if window.len() != self.window_len() {
            return Err(Error::WindowLength {
                radius: self.radius,
                expected: self.window_len(),
                got: window.len(),
            });
        }
        for &s in window {
            self.alphabet.check(s)?;
        }
        Ok(self.table[word_code(window, self.alphabet.size())])
    }

    /// Table lookup by window code; callers guarantee the code is in range.
    pub fn eval_code(&self, code: usize) -> Symbol {
        self.table[code]
    }
}

/// True when the two rules induce the same map after projecting the wider
/// window onto the narrower one.
pub fn rules_identical(a: &LocalRule, b: &LocalRule) -> Result<bool> {
    if a.alphabet != b.alphabet {
        return Err(Error::AlphabetMismatch(format!(
            "`{}` is over {}, `{}` is over {}",
            a.name,
            a.alphabet.glyph_string(),
            b.name,
            b.alphabet.glyph_string()
        )));
    }
    let (small, large) = if a.radius <= b.radius { (a, b) } else { (b, a) };
    let trim = large.radius - small.radius;
    let mut it = WordIter::new(large.alphabet.size(), large.window_len());
    while let Some(w) = it.next_word() {
        let inner = &w[trim..w.len() - trim];
        if large.eval_code(word_code(w, large.alphabet.size()))
            != small.eval_code(word_code(inner, small.alphabet.size()))
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A finite set of named local rules over one alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSet {
    alphabet: Alphabet,
    rules: Vec<LocalRule>,
}

impl RuleSet {
    pub fn new(alphabet: Alphabet, rules: Vec<LocalRule>) -> Result<Self> {
        for (i, rule) in rules.iter().enumerate() {
            if rule.alphabet() != &alphabet {
                return Err(Error::AlphabetMismatch(format!(
                    "rule `{}` is not over alphabet {}",
                    rule.name(),
                    alphabet.glyph_string()
                )));
            }
            if rules[..i].iter().any(|r| r.name() == rule.name()) {
                return Err(Error::Invalid(format!("duplicate rule name `{}`", rule.name())));
            }
        }
        Ok(RuleSet { alphabet, rules })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rules(&self) -> &[LocalRule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&LocalRule> {
        self.rules.iter().find(|r| r.name() == name)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.rules.iter().position(|r| r.name() == name)
    }

    pub fn rule(&self, index: usize) -> &LocalRule {
        &self.rules[index]
    }
}

/// Collapses identical rules to one representative each.
///
/// The representative of a class is its lowest-radius member, ties broken by
/// lexicographically smallest name. The returned map sends every original
/// name to its representative's name.
pub fn normalize_ruleset(rs: &RuleSet) -> Result<(RuleSet, BTreeMap<String, String>)> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, rule) in rs.rules().iter().enumerate() {
        let mut placed = false;
        for class in classes.iter_mut() {
            if rules_identical(rule, &rs.rules()[class[0]], )? {
                class.push(i);
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push(vec![i]);
        }
    }
    let mut renaming = BTreeMap::new();
    let mut kept = Vec::new();
    for class in &classes {
        let rep = *class
            .iter()
            .min_by_key(|&&i| (rs.rules()[i].radius(), rs.rules()[i].name().to_string()))
            .expect("class is nonempty");
        for &i in class {
            renaming.insert(rs.rules()[i].name().to_string(), rs.rules()[rep].name().to_string());
        }
        kept.push(rs.rules()[rep].clone());
    }
    Ok((RuleSet::new(rs.alphabet().clone(), kept)?, renaming))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binary() -> Alphabet {
        Alphabet::binary()
    }

    fn xor3(a: &Alphabet) -> LocalRule {
        LocalRule::from_fn("xor3", a, 1, |w| w[0] ^ w[1] ^ w[2]).unwrap()
    }

    fn center_proj(name: &str, a: &Alphabet, radius: usize) -> LocalRule {
        LocalRule::from_fn(name, a, radius, |w| w[w.len() / 2]).unwrap()
    }

    #[test]
    fn eval_matches_defining_function() {
        let a = binary();
        let f = xor3(&a);
        assert_eq!(f.eval(&[1, 1, 0]).unwrap(), 0);
        assert_eq!(f.eval(&[1, 0, 0]).unwrap(), 1);
        let g = center_proj("g", &a, 1);
        assert_eq!(g.eval(&[1, 0, 1]).unwrap(), 0);
    }

    #[test]
    fn eval_rejects_bad_windows() {
        let a = binary();
        let f = xor3(&a);
        assert!(matches!(
            f.eval(&[1, 0]),
            Err(Error::WindowLength { expected: 3, got: 2, .. })
        ));
        assert!(f.eval(&[0, 2, 0]).is_err());
    }

    #[test]
    fn totality_over_all_windows() {
        let a = Alphabet::parse("0123").unwrap();
        let f = LocalRule::from_fn("maxr", &a, 1, |w| *w.iter().max().unwrap()).unwrap();
        assert_eq!(f.table().len(), 64);
        let mut it = WordIter::new(4, 3);
        while let Some(w) = it.next_word() {
            assert!(a.contains(f.eval(w).unwrap()));
        }
    }

    #[test]
    fn identical_projections_of_different_radii() {
        let a = binary();
        let g1 = center_proj("g1", &a, 1);
        let g2 = center_proj("g2", &a, 2);
        assert!(rules_identical(&g1, &g2).unwrap());
        assert!(rules_identical(&g1, &g1).unwrap());
    }

    #[test]
    fn example_pair_rules_are_not_identical() {
        let a = binary();
        let fl = LocalRule::from_fn("fL", &a, 1, |w| w[0] ^ w[1]).unwrap();
        let fr = LocalRule::from_fn("fR", &a, 1, |w| w[1] ^ w[2]).unwrap();
        // fL(1,0,0) = 1 but fR(1,0,0) = 0
        assert_eq!(fl.eval(&[1, 0, 0]).unwrap(), 1);
        assert_eq!(fr.eval(&[1, 0, 0]).unwrap(), 0);
        assert!(!rules_identical(&fl, &fr).unwrap());
    }

    #[test]
    fn identical_requires_same_alphabet() {
        let f = center_proj("f", &binary(), 1);
        let g = center_proj("g", &Alphabet::parse("0123").unwrap(), 1);
        assert!(rules_identical(&f, &g).is_err());
    }

    #[test]
    fn identical_is_an_equivalence_on_small_sets() {
        let a = binary();
        let rules = [
            center_proj("p1", &a, 1),
            center_proj("p2", &a, 2),
            xor3(&a),
            LocalRule::from_fn("left", &a, 1, |w| w[0]).unwrap(),
            LocalRule::from_fn("xor5", &a, 2, |w| w[1] ^ w[2] ^ w[3]).unwrap(),
        ];
        let n = rules.len();
        for i in 0..n {
            assert!(rules_identical(&rules[i], &rules[i]).unwrap());
            for j in 0..n {
                assert_eq!(
                    rules_identical(&rules[i], &rules[j]).unwrap(),
                    rules_identical(&rules[j], &rules[i]).unwrap()
                );
                for k in 0..n {
                    let ij = rules_identical(&rules[i], &rules[j]).unwrap();
                    let jk = rules_identical(&rules[j], &rules[k]).unwrap();
                    let ik = rules_identical(&rules[i], &rules[k]).unwrap();
                    if ij && jk {
                        assert!(ik);
                    }
                }
            }
        }
    }

    #[test]
    fn normalize_collapses_center_projections() {
        let a = binary();
        let rs = RuleSet::new(
            a.clone(),
            vec![center_proj("wide", &a, 2), center_proj("narrow", &a, 1)],
        )
        .unwrap();
        let (normalized, renaming) = normalize_ruleset(&rs).unwrap();
        assert_eq!(normalized.len(), 1);
        assert_eq!(normalized.rules()[0].name(), "narrow");
        assert_eq!(renaming["wide"], "narrow");
        assert_eq!(renaming["narrow"], "narrow");
        // no identical pair remains
        for (i, r) in normalized.rules().iter().enumerate() {
            for s in &normalized.rules()[i + 1..] {
                assert!(!rules_identical(r, s).unwrap());
            }
        }
    }

    #[test]
    fn normalize_keeps_distinct_rules() {
        let a = binary();
        let rs = RuleSet::new(
            a.clone(),
            vec![
                LocalRule::from_fn("fL", &a, 1, |w| w[0] ^ w[1]).unwrap(),
                LocalRule::from_fn("fR", &a, 1, |w| w[1] ^ w[2]).unwrap(),
                center_proj("g", &a, 1),
            ],
        )
        .unwrap();
        let (normalized, renaming) = normalize_ruleset(&rs).unwrap();
        assert_eq!(normalized.len(), 3);
        for (from, to) in &renaming {
            assert_eq!(from, to);
        }
    }

    #[test]
    fn normalize_empty_set() {
        let rs = RuleSet::new(binary(), vec![]).unwrap();
        let (normalized, renaming) = normalize_ruleset(&rs).unwrap();
        assert!(normalized.is_empty());
        assert!(renaming.is_empty());
    }

    #[test]
    fn ruleset_rejects_duplicate_names() {
        let a = binary();
        assert!(RuleSet::new(a.clone(), vec![xor3(&a), xor3(&a)]).is_err());
    }
}
