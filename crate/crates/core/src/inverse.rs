//! Local-inverse rule construction: per-cell candidate search, conflict
//! witnesses, inverse assembly over an interval, and composition checks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::alphabet::Symbol;
use crate::config::{Configuration, Pattern};
use crate::distribution::RuleDistribution;
use crate::domain::IntervalDomain;
use crate::error::{Error, Result};
use crate::evolve::evolve_window;
use crate::finitemap::FiniteNucaMap;
use crate::rule::{normalize_ruleset, LocalRule, RuleSet};
use crate::words::{check_cap, decode_word, word_code, word_count, WordIter};

/// Two extended patterns with equal image windows but different center
/// symbols: no radius-`radius` rule can invert the transition at `cell`.
#[derive(Debug, Clone)]
pub struct ConflictWitness {
    pub cell: i64,
    pub radius: usize,
    /// Patterns over the extended window `N_θ([cell-R, cell+R])`.
    pub first: Pattern,
    pub second: Pattern,
    /// The shared image on `[cell-R, cell+R]`.
    pub image: Pattern,
}

#[derive(Debug, Clone)]
pub enum InverseSearchOutcome {
    /// A radius-`R` rule mapping every realized image window to the unique
    /// center symbol of its pre-images. Unrealized windows map to symbol 0.
    Candidate(LocalRule),
    Conflict(ConflictWitness),
}

/// Enumerates all patterns on the extended window around `x` and either
/// builds a radius-`radius` inverse candidate for cell `x` or returns the
/// first conflict found in lexicographic enumeration order (the stored
/// partner is the lexicographically first pattern realizing that image).
pub fn local_inverse_candidate(
    theta: &RuleDistribution,
    x: i64,
    radius: usize,
    cap: u64,
) -> Result<InverseSearchOutcome> {
    let r = radius as i64;
    let domain = IntervalDomain::new(x - r, x + r);
    let map = FiniteNucaMap::new(theta, domain);
    let s = theta.alphabet().size();
    check_cap(s, map.extended().len(), cap)?;
    let center_idx = map
        .extended()
        .index_of(x)
        .expect("extended window contains the cell");

    let mut seen: Vec<Option<(Symbol, usize)>> =
        vec![None; word_count(s, domain.len()) as usize];
    let mut it = WordIter::new(s, map.extended().len() as usize);
    let mut wcode = 0usize;
    while let Some(w) = it.next_word() {
        let image = map.apply_word(w);
        let icode = word_code(&image, s);
        match seen[icode] {
            None => seen[icode] = Some((w[center_idx], wcode)),
            Some((center, first_code)) => {
                if center != w[center_idx] {
                    let ext_len = map.extended().len() as usize;
                    return Ok(InverseSearchOutcome::Conflict(ConflictWitness {
                        cell: x,
                        radius,
                        first: Pattern::new(*map.extended(), decode_word(first_code, s, ext_len))?,
                        second: Pattern::new(*map.extended(), w.to_vec())?,
                        image: Pattern::new(domain, image)?,
                    }));
                }
            }
        }
        wcode += 1;
    }
    let table: Vec<Symbol> = seen
        .into_iter()
        .map(|entry| entry.map(|(center, _)| center).unwrap_or(0))
        .collect();
    let rule = LocalRule::from_table(format!("inv_c{x}"), theta.alphabet(), radius, table)?;
    Ok(InverseSearchOutcome::Candidate(rule))
}

/// Configuration-level certificate that no radius-`radius` inverse exists at
/// `x`: the configurations differ at `x` but their one-step images agree on
/// the whole window `[x-R, x+R]`.
pub fn verify_conflict_with_configs(
    theta: &RuleDistribution,
    x: i64,
    radius: usize,
    c: &Configuration,
    e: &Configuration,
) -> Result<bool> {
    if c.value_at(x) == e.value_at(x) {
        return Ok(false);
    }
    let r = radius as i64;
    let window = IntervalDomain::new(x - r, x + r);
    Ok(evolve_window(theta, c, &window, 1)? == evolve_window(theta, e, &window, 1)?)
}

/// Per-cell inverse rules over an interval, deduplicated into a finite rule
/// set, or the first conflict encountered.
#[derive(Debug)]
pub struct PartialInverseDistribution {
    pub interval: IntervalDomain,
    pub radius: usize,
    /// Deduplicated rule set (no pair of identical rules).
    pub rules: RuleSet,
    /// Rule name per cell, in interval order; shorter than the interval when
    /// assembly stopped at a conflict.
    pub assignment: Vec<String>,
    pub failure: Option<ConflictWitness>,
}

impl PartialInverseDistribution {
    pub fn rule_at(&self, x: i64) -> Option<&LocalRule> {
        let idx = self.interval.index_of(x)?;
        self.assignment.get(idx).and_then(|name| self.rules.get(name))
    }
}

/// Runs the candidate search at every cell of the interval, stopping at the
/// first conflict. Successful assemblies are deduplicated with the
/// identical-rule relation.
pub fn assemble_inverse(
    theta: &RuleDistribution,
    interval: IntervalDomain,
    radius: usize,
    cap: u64,
) -> Result<PartialInverseDistribution> {
    let mut candidates = Vec::new();
    let mut failure = None;
    for x in interval.iter() {
        match local_inverse_candidate(theta, x, radius, cap)? {
            InverseSearchOutcome::Candidate(rule) => candidates.push(rule),
            InverseSearchOutcome::Conflict(witness) => {
                failure = Some(witness);
                break;
            }
        }
    }
    let raw = RuleSet::new(theta.alphabet().clone(), candidates)?;
    let (rules, renaming) = normalize_ruleset(&raw)?;
    let assignment = raw
        .rules()
        .iter()
        .map(|rule| renaming[rule.name()].clone())
        .collect();
    Ok(PartialInverseDistribution {
        interval,
        radius,
        rules,
        assignment,
        failure,
    })
}

#[derive(Debug, Clone)]
pub struct ComposeCounterexample {
    pub trial: u32,
    pub cell: i64,
    pub expected: Symbol,
    pub got: Symbol,
}

#[derive(Debug, Clone)]
pub struct ComposeReport {
    pub ok: bool,
    pub trials: u32,
    pub seed: u64,
    pub cells_checked: u64,
    pub counterexample: Option<ComposeCounterexample>,
}

/// Checks `H_φ ∘ H_θ = id` on seeded random two-sided configurations, at
/// every cell of the interval's R-interior.
pub fn compose_check(
    theta: &RuleDistribution,
    inverse: &PartialInverseDistribution,
    trials: u32,
    seed: u64,
) -> Result<ComposeReport> {
    if inverse.failure.is_some() {
        return Err(Error::Invalid(
            "compose check needs a fully assembled inverse".into(),
        ));
    }
    let r = inverse.radius as i64;
    let interior = match inverse.interval.bounds() {
        Some((lo, hi)) if lo + r <= hi - r => IntervalDomain::new(lo + r, hi - r),
        _ => IntervalDomain::EMPTY,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cells_checked = 0u64;
    for trial in 0..trials {
        let c = Configuration::random("trial", theta.alphabet(), &mut rng);
        for x in interior.iter() {
            let window = IntervalDomain::new(x - r, x + r);
            let image = evolve_window(theta, &c, &window, 1)?;
            let rule = inverse.rule_at(x).expect("interior cell has a rule");
            let got = rule.eval(image.symbols())?;
            cells_checked += 1;
            if got != c.value_at(x) {
                return Ok(ComposeReport {
                    ok: false,
                    trials,
                    seed,
                    cells_checked,
                    counterexample: Some(ComposeCounterexample {
                        trial,
                        cell: x,
                        expected: c.value_at(x),
                        got,
                    }),
                });
            }
        }
    }
    Ok(ComposeReport {
        ok: true,
        trials,
        seed,
        cells_checked,
        counterexample: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::distribution::DistributionKind;
    use crate::finitemap::DEFAULT_ENUMERATION_CAP as CAP;
    use crate::rule::rules_identical;

    fn binary() -> Alphabet {
        Alphabet::binary()
    }

    fn uniform(rule: LocalRule) -> RuleDistribution {
        let rs = RuleSet::new(rule.alphabet().clone(), vec![rule.clone()]).unwrap();
        RuleDistribution::uniform(format!("u_{}", rule.name()), rs, rule.name()).unwrap()
    }

    fn left_shift() -> RuleDistribution {
        uniform(LocalRule::from_fn("shift", &binary(), 1, |w| w[2]).unwrap())
    }

    fn uniform_xor3() -> RuleDistribution {
        uniform(LocalRule::from_fn("xor3", &binary(), 1, |w| w[0] ^ w[1] ^ w[2]).unwrap())
    }

    fn example1_pyramid() -> RuleDistribution {
        let a = binary();
        let rs = RuleSet::new(
            a.clone(),
            vec![
                LocalRule::from_fn("fR", &a, 1, |w| w[1] ^ w[2]).unwrap(),
                LocalRule::from_fn("g", &a, 1, |w| w[1]).unwrap(),
                LocalRule::from_fn("fL", &a, 1, |w| w[0] ^ w[1]).unwrap(),
            ],
        )
        .unwrap();
        RuleDistribution::new(
            "example1",
            rs,
            DistributionKind::MirroredPyramid {
                fr: "fR".into(),
                g: "g".into(),
                fl: "fL".into(),
            },
        )
        .unwrap()
    }

    /// Center of the first fR-run of the given length.
    fn fr_run_center(theta: &RuleDistribution, run: usize) -> i64 {
        let mut start = 0i64;
        let mut len = 0usize;
        for x in 0..100_000i64 {
            if theta.at(x).name() == "fR" {
                if len == 0 {
                    start = x;
                }
                len += 1;
                if len == run {
                    return start + (run as i64 - 1) / 2;
                }
            } else {
                len = 0;
            }
        }
        panic!("no fR run of length {run} found");
    }

    #[test]
    fn shift_inverse_is_take_left_neighbor() {
        let theta = left_shift();
        let expected = LocalRule::from_fn("left", &binary(), 1, |w| w[0]).unwrap();
        for x in [-2, 0, 5] {
            match local_inverse_candidate(&theta, x, 1, CAP).unwrap() {
                InverseSearchOutcome::Candidate(rule) => {
                    assert_eq!(rule.table(), expected.table());
                    assert!(rules_identical(&rule, &expected).unwrap());
                }
                InverseSearchOutcome::Conflict(_) => panic!("shift is invertible"),
            }
        }
    }

    #[test]
    fn identity_automaton_is_self_inverse_at_radius_zero() {
        let theta = uniform(LocalRule::from_fn("id", &binary(), 1, |w| w[1]).unwrap());
        match local_inverse_candidate(&theta, 0, 0, CAP).unwrap() {
            InverseSearchOutcome::Candidate(rule) => {
                assert_eq!(rule.radius(), 0);
                assert_eq!(rule.table(), &[0, 1]);
            }
            InverseSearchOutcome::Conflict(_) => panic!("identity is invertible"),
        }
    }

    #[test]
    fn candidate_recovers_centers_of_realized_windows() {
        let theta = left_shift();
        let rule = match local_inverse_candidate(&theta, 0, 1, CAP).unwrap() {
            InverseSearchOutcome::Candidate(rule) => rule,
            _ => panic!("shift is invertible"),
        };
        let map = FiniteNucaMap::new(&theta, IntervalDomain::new(-1, 1));
        let center_idx = map.extended().index_of(0).unwrap();
        let mut it = WordIter::new(2, map.extended().len() as usize);
        while let Some(w) = it.next_word() {
            let image = map.apply_word(w);
            assert_eq!(rule.eval(&image).unwrap(), w[center_idx]);
        }
    }

    #[test]
    fn xor3_is_not_locally_invertible() {
        let theta = uniform_xor3();
        match local_inverse_candidate(&theta, 0, 1, CAP).unwrap() {
            InverseSearchOutcome::Conflict(witness) => {
                // re-check the witness against the finite map
                let map = FiniteNucaMap::new(&theta, IntervalDomain::new(-1, 1));
                let center = map.extended().index_of(0).unwrap();
                assert_ne!(
                    witness.first.symbols()[center],
                    witness.second.symbols()[center]
                );
                assert_eq!(map.apply(&witness.first).unwrap(), witness.image);
                assert_eq!(map.apply(&witness.second).unwrap(), witness.image);
            }
            InverseSearchOutcome::Candidate(_) => panic!("xor3 is not injective"),
        }
    }

    #[test]
    fn example1_conflicts_persist_at_fr_run_centers() {
        let theta = example1_pyramid();
        for radius in 1..=4usize {
            let x = fr_run_center(&theta, 2 * radius + 1);
            match local_inverse_candidate(&theta, x, radius, CAP).unwrap() {
                InverseSearchOutcome::Conflict(witness) => {
                    assert_eq!(witness.cell, x);
                    let r = radius as i64;
                    let map = FiniteNucaMap::new(&theta, IntervalDomain::new(x - r, x + r));
                    assert_eq!(map.apply(&witness.first).unwrap(), witness.image);
                    assert_eq!(map.apply(&witness.second).unwrap(), witness.image);
                }
                InverseSearchOutcome::Candidate(_) => {
                    panic!("no radius-{radius} inverse exists inside an fR run")
                }
            }
        }
    }

    #[test]
    fn all_zero_all_one_certify_example1_conflicts() {
        let theta = example1_pyramid();
        let zeros = Configuration::constant("zeros", binary(), 0).unwrap();
        let ones = Configuration::constant("ones", binary(), 1).unwrap();
        for radius in 1..=3usize {
            let x = fr_run_center(&theta, 2 * radius + 1);
            assert!(
                verify_conflict_with_configs(&theta, x, radius, &zeros, &ones).unwrap(),
                "fR maps both constant configurations to zero on the run"
            );
        }
    }

    #[test]
    fn equal_configs_never_certify() {
        let theta = example1_pyramid();
        let zeros = Configuration::constant("zeros", binary(), 0).unwrap();
        assert!(!verify_conflict_with_configs(&theta, 0, 1, &zeros, &zeros).unwrap());
    }

    #[test]
    fn shifted_difference_is_visible_to_the_shift_rule() {
        let theta = left_shift();
        let c = Configuration::constant("zeros", binary(), 0).unwrap();
        let e = Configuration::finite("e", binary(), 0, vec![1], 1).unwrap();
        // c and e differ at x+1 = 1, so the image windows at x = 0 differ
        assert!(!verify_conflict_with_configs(&theta, 0, 1, &c, &e).unwrap());
    }

    #[test]
    fn assemble_shift_inverse_dedups_to_one_rule() {
        let theta = left_shift();
        let inv = assemble_inverse(&theta, IntervalDomain::new(-3, 3), 1, CAP).unwrap();
        assert!(inv.failure.is_none());
        assert_eq!(inv.rules.len(), 1);
        assert_eq!(inv.assignment.len(), 7);
        let name = inv.rules.rules()[0].name();
        assert!(inv.assignment.iter().all(|n| n == name));
    }

    #[test]
    fn assemble_fails_inside_fr_run() {
        let theta = example1_pyramid();
        let x = fr_run_center(&theta, 5);
        let inv = assemble_inverse(&theta, IntervalDomain::new(x - 1, x + 1), 2, CAP).unwrap();
        let failure = inv.failure.expect("a conflict inside the run");
        assert!(inv.interval.contains(failure.cell));
    }

    #[test]
    fn assemble_fails_on_xor3() {
        let theta = uniform_xor3();
        let inv = assemble_inverse(&theta, IntervalDomain::new(0, 2), 1, CAP).unwrap();
        assert!(inv.failure.is_some());
    }

    #[test]
    fn assemble_succeeds_near_the_g_cells() {
        // cells [0, 2] of the pyramid are fR g fL; images around g determine
        // the centers at radius 1
        let theta = example1_pyramid();
        let inv = assemble_inverse(&theta, IntervalDomain::new(0, 2), 1, CAP).unwrap();
        assert!(inv.failure.is_none(), "local inverse exists near the g cell");
        let report = compose_check(&theta, &inv, 100, 1234).unwrap();
        assert!(report.ok, "counterexample: {:?}", report.counterexample);
        assert_eq!(report.cells_checked, 100);
    }

    #[test]
    fn compose_check_accepts_shift_inverse() {
        let theta = left_shift();
        let inv = assemble_inverse(&theta, IntervalDomain::new(-3, 3), 1, CAP).unwrap();
        let report = compose_check(&theta, &inv, 100, 99).unwrap();
        assert!(report.ok);
        assert_eq!(report.cells_checked, 100 * 5);
    }

    #[test]
    fn compose_check_catches_a_corrupted_table() {
        let theta = left_shift();
        let mut inv = assemble_inverse(&theta, IntervalDomain::new(-3, 3), 1, CAP).unwrap();
        let rule = inv.rules.rules()[0].clone();
        let mut table = rule.table().to_vec();
        table[0] ^= 1;
        let corrupted = LocalRule::from_table(rule.name(), rule.alphabet(), 1, table).unwrap();
        inv.rules = RuleSet::new(rule.alphabet().clone(), vec![corrupted]).unwrap();
        let report = compose_check(&theta, &inv, 100, 99).unwrap();
        assert!(!report.ok);
        let cx = report.counterexample.unwrap();
        assert_eq!(cx.expected ^ 1, cx.got);
    }

    #[test]
    fn compose_check_requires_success() {
        let theta = uniform_xor3();
        let inv = assemble_inverse(&theta, IntervalDomain::new(0, 2), 1, CAP).unwrap();
        assert!(compose_check(&theta, &inv, 10, 1).is_err());
    }
}
