//! The finite-domain restriction of the global transition, exhaustive
//! pre-image counting, balance audits, and mutual-erasability search.

use crate::alphabet::Symbol;
use crate::config::Pattern;
use crate::distribution::RuleDistribution;
use crate::domain::IntervalDomain;
use crate::error::{Error, Result};
use crate::words::{check_cap, decode_word, word_code, word_count, WordIter};

/// Default budget for exhaustive enumeration, in evaluated windows.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 26;

/// The restriction `H_{θ|D}: Σ^{N_θ(D)} → Σ^D` for an interval `D`.
pub struct FiniteNucaMap<'a> {
    theta: &'a RuleDistribution,
    domain: IntervalDomain,
    extended: IntervalDomain,
    /// Per output cell: rule index and the window's offset within `extended`.
    cells: Vec<(usize, usize, usize)>,
}

impl<'a> FiniteNucaMap<'a> {
    pub fn new(theta: &'a RuleDistribution, domain: IntervalDomain) -> Self {
        let extended = theta.neighborhood_of(&domain);
        let cells = domain
            .iter()
            .map(|x| {
                let idx = theta.rule_index_at(x);
                let rule = theta.ruleset().rule(idx);
                let r = rule.radius() as i64;
                let start = extended.index_of(x - r).expect("E contains every window");
                (idx, start, rule.window_len())
            })
            .collect();
        FiniteNucaMap {
            theta,
            domain,
            extended,
            cells,
        }
    }

    pub fn domain(&self) -> &IntervalDomain {
        &self.domain
    }

    /// `N_θ(D)`, the input domain.
    pub fn extended(&self) -> &IntervalDomain {
        &self.extended
    }

    /// Pointwise rule application on a raw word over the extended domain.
    pub fn apply_word(&self, q: &[Symbol]) -> Vec<Symbol> {
        let s = self.theta.alphabet().size();
        self.cells
            .iter()
            .map(|&(idx, start, len)| {
                self.theta
                    .ruleset()
                    .rule(idx)
                    .eval_code(word_code(&q[start..start + len], s))
            })
            .collect()
    }

    /// `H_{θ|D}` on a pattern over `N_θ(D)`.
    pub fn apply(&self, q: &Pattern) -> Result<Pattern> {
        if *q.domain() != self.extended {
            return Err(Error::DomainMismatch {
                expected: self.extended.to_string(),
                got: q.domain().to_string(),
            });
        }
        Pattern::new(self.domain, self.apply_word(q.symbols()))
    }
}

/// Counts the pre-images of `p` under `H_{θ|D}` by exhaustive enumeration of
/// `Σ^{N_θ(D)}`; optionally lists them.
pub fn preimage_count(
    theta: &RuleDistribution,
    domain: IntervalDomain,
    p: &Pattern,
    list_witnesses: bool,
    cap: u64,
) -> Result<(u64, Option<Vec<Pattern>>)> {
    if *p.domain() != domain {
        return Err(Error::DomainMismatch {
            expected: domain.to_string(),
            got: p.domain().to_string(),
        });
    }
    let map = FiniteNucaMap::new(theta, domain);
    let s = theta.alphabet().size();
    check_cap(s, map.extended().len(), cap)?;
    let mut count = 0u64;
    let mut listing = if list_witnesses { Some(Vec::new()) } else { None };
    let mut it = WordIter::new(s, map.extended().len() as usize);
    while let Some(q) = it.next_word() {
        if map.apply_word(q) == p.symbols() {
            count += 1;
            if let Some(listing) = listing.as_mut() {
                listing.push(Pattern::new(*map.extended(), q.to_vec())?);
            }
        }
    }
    Ok((count, listing))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BalanceVerdict {
    Balanced,
    Unbalanced,
}

impl std::fmt::Display for BalanceVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BalanceVerdict::Balanced => write!(f, "Balanced"),
            BalanceVerdict::Unbalanced => write!(f, "Unbalanced"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BalanceWitness {
    pub pattern: Pattern,
    pub count: u64,
    pub expected: u64,
}

/// Outcome of a balance audit over one finite domain.
#[derive(Debug, Clone)]
pub struct BalanceReport {
    pub domain: IntervalDomain,
    pub extended: IntervalDomain,
    pub verdict: BalanceVerdict,
    /// First pattern (in lexicographic order) whose pre-image count deviates.
    pub witness: Option<BalanceWitness>,
    /// Pre-image count per pattern code over `D`.
    pub tally: Vec<u64>,
    pub expected: u64,
}

impl BalanceReport {
    pub fn pattern_of_code(&self, code: usize, alphabet_size: usize) -> Pattern {
        Pattern::new(
            self.domain,
            decode_word(code, alphabet_size, self.domain.len() as usize),
        )
        .expect("decoded word has domain length")
    }
}

/// Audits whether every pattern over `D` has exactly `s^{|E|-|D|}`
/// pre-images under `H_{θ|D}`.
pub fn balance_audit(
    theta: &RuleDistribution,
    domain: IntervalDomain,
    cap: u64,
) -> Result<BalanceReport> {
    let map = FiniteNucaMap::new(theta, domain);
    let s = theta.alphabet().size();
    check_cap(s, map.extended().len(), cap)?;
    let expected_128 = word_count(s, map.extended().len() - domain.len());
    let expected = expected_128 as u64;
    let mut tally = vec![0u64; word_count(s, domain.len()) as usize];
    let mut it = WordIter::new(s, map.extended().len() as usize);
    while let Some(q) = it.next_word() {
        tally[word_code(&map.apply_word(q), s)] += 1;
    }
    let witness = tally.iter().position(|&c| c != expected).map(|code| BalanceWitness {
        pattern: Pattern::new(domain, decode_word(code, s, domain.len() as usize))
            .expect("tally codes decode onto D"),
        count: tally[code],
        expected,
    });
    Ok(BalanceReport {
        domain,
        extended: *map.extended(),
        verdict: if witness.is_some() {
            BalanceVerdict::Unbalanced
        } else {
            BalanceVerdict::Balanced
        },
        witness,
        tally,
        expected,
    })
}

/// Two distinct patterns on one interval that pad out to asymptotic
/// configurations with equal global images.
#[derive(Debug, Clone)]
pub struct ErasablePair {
    pub interval: IntervalDomain,
    pub pad: Symbol,
    pub first: Pattern,
    pub second: Pattern,
    /// The shared image on the interval under the padded finite map.
    pub image: Pattern,
}

/// Searches the interval for a mutually erasable pair against a constant
/// `pad` background.
///
/// Candidates must agree on the leftmost and rightmost `radius_bound` cells
/// of the interval, so that both padded extensions see identical windows
/// everywhere outside the interval and the equal windowed images certify
/// equal global images.
pub fn mutual_erasability_search(
    theta: &RuleDistribution,
    interval: IntervalDomain,
    pad: Symbol,
    cap: u64,
) -> Result<Option<ErasablePair>> {
    theta.alphabet().check(pad)?;
    if interval.is_empty() {
        return Ok(None);
    }
    let len = interval.len() as usize;
    let rho = theta.radius_bound();
    if 2 * rho >= len {
        // boundary agreement pins every cell; no distinct pair can qualify
        return Ok(None);
    }
    let s = theta.alphabet().size();
    check_cap(s, 2 * interval.len(), cap)?;
    let map = FiniteNucaMap::new(theta, interval);
    let offset = interval
        .lo()
        .and_then(|lo| map.extended().index_of(lo))
        .expect("E contains the interval");

    let mut patterns: Vec<Vec<Symbol>> = Vec::new();
    let mut images: Vec<Vec<Symbol>> = Vec::new();
    let mut padded = vec![pad; map.extended().len() as usize];
    let mut it = WordIter::new(s, len);
    while let Some(w) = it.next_word() {
        padded[offset..offset + len].copy_from_slice(w);
        patterns.push(w.to_vec());
        images.push(map.apply_word(&padded));
    }

    let agrees_on_boundary = |a: &[Symbol], b: &[Symbol]| {
        a[..rho] == b[..rho] && a[len - rho..] == b[len - rho..]
    };
    for i in 0..patterns.len() {
        for j in i + 1..patterns.len() {
            if images[i] == images[j] && agrees_on_boundary(&patterns[i], &patterns[j]) {
                return Ok(Some(ErasablePair {
                    interval,
                    pad,
                    first: Pattern::new(interval, patterns[i].clone())?,
                    second: Pattern::new(interval, patterns[j].clone())?,
                    image: Pattern::new(interval, images[i].clone())?,
                }));
            }
        }
    }
    Ok(None)
}

/// Necessary condition for surjectivity: every pattern over `D` is locally
/// attainable. `false` proves non-surjectivity and returns the orphan;
/// `true` is inconclusive.
pub fn surjectivity_window_check(
    theta: &RuleDistribution,
    domain: IntervalDomain,
    cap: u64,
) -> Result<(bool, Option<Pattern>)> {
    let map = FiniteNucaMap::new(theta, domain);
    let s = theta.alphabet().size();
    check_cap(s, map.extended().len(), cap)?;
    let mut reached = vec![false; word_count(s, domain.len()) as usize];
    let mut it = WordIter::new(s, map.extended().len() as usize);
    while let Some(q) = it.next_word() {
        reached[word_code(&map.apply_word(q), s)] = true;
    }
    match reached.iter().position(|&r| !r) {
        None => Ok((true, None)),
        Some(code) => Ok((
            false,
            Some(Pattern::new(
                domain,
                decode_word(code, s, domain.len() as usize),
            )?),
        )),
    }
}
