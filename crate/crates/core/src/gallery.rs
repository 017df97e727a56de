//! Executable catalog of the named constructions: rule tables transcribed
//! row-exactly, their distributions, reference configurations, and pinned
//! machine-checkable facts.

use crate::alphabet::{Alphabet, Symbol};
use crate::config::{Configuration, Pattern};
use crate::distribution::{DistributionKind, RuleDistribution};
use crate::domain::IntervalDomain;
use crate::dynamics::{cylinder_invariance_check, divergence_search};
use crate::error::{Error, Result};
use crate::evolve::evolve_cell;
use crate::finitemap::{
    balance_audit, mutual_erasability_search, preimage_count, surjectivity_window_check,
    BalanceVerdict, DEFAULT_ENUMERATION_CAP,
};
use crate::inverse::{local_inverse_candidate, verify_conflict_with_configs, InverseSearchOutcome};
use crate::rule::{normalize_ruleset, LocalRule, RuleSet};

type FactCheck = Box<dyn Fn(&GalleryEntry) -> std::result::Result<(), String> + Send + Sync>;

pub struct PinnedFact {
    pub label: String,
    check: FactCheck,
}

#[derive(Debug, Clone)]
pub struct FactOutcome {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

/// A named automaton with its rule set, distribution, reference
/// configurations and pinned facts. Building an entry twice yields
/// identical tables.
pub struct GalleryEntry {
    pub name: String,
    pub ruleset: RuleSet,
    pub distribution: RuleDistribution,
    pub configurations: Vec<Configuration>,
    facts: Vec<PinnedFact>,
}

impl GalleryEntry {
    pub fn configuration(&self, name: &str) -> Option<&Configuration> {
        self.configurations.iter().find(|c| c.name() == name)
    }

    pub fn facts(&self) -> impl Iterator<Item = &str> {
        self.facts.iter().map(|f| f.label.as_str())
    }

    /// Executes every pinned fact, collecting one pass/fail line each.
    pub fn run_pinned_facts(&self) -> Vec<FactOutcome> {
        self.facts
            .iter()
            .map(|fact| match (fact.check)(self) {
                Ok(()) => FactOutcome {
                    label: fact.label.clone(),
                    passed: true,
                    detail: "ok".into(),
                },
                Err(detail) => FactOutcome {
                    label: fact.label.clone(),
                    passed: false,
                    detail,
                },
            })
            .collect()
    }
}

pub const ENTRY_NAMES: [&str; 7] = [
    "example1",
    "balance_counterexample",
    "traffic_halfplane",
    "fourstate_halfplane",
    "uniform_shift",
    "uniform_xor3",
    "uniform_and",
];

const CAP: u64 = DEFAULT_ENUMERATION_CAP;

fn fact(
    label: &str,
    check: impl Fn(&GalleryEntry) -> std::result::Result<(), String> + Send + Sync + 'static,
) -> PinnedFact {
    PinnedFact {
        label: label.to_string(),
        check: Box::new(check),
    }
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> std::result::Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

fn expect_row(
    entry: &GalleryEntry,
    rule: &str,
    window: &[Symbol],
    want: Symbol,
) -> std::result::Result<(), String> {
    let rule = entry
        .ruleset
        .get(rule)
        .ok_or_else(|| format!("missing rule {rule}"))?;
    let got = rule.eval(window).map_err(|e| e.to_string())?;
    expect_eq(&format!("{}{window:?}", rule.name()), got, want)
}

fn singleton_pattern(sym: Symbol) -> Pattern {
    Pattern::new(IntervalDomain::singleton(0), vec![sym]).expect("singleton pattern")
}

/// The traffic rule: cars move left, blocked by cars ahead.
fn traffic_rule(a: &Alphabet) -> Result<LocalRule> {
    LocalRule::from_fn("tau", a, 1, |w| match (w[0], w[1], w[2]) {
        (0, 1, _) => 0,
        (_, 0, 1) => 1,
        (_, b, _) => b,
    })
}

/// The four-state rule: six explicit clauses, everything else to 0.
fn fourstate_rule(a: &Alphabet) -> Result<LocalRule> {
    LocalRule::from_fn("f", a, 1, |w| match (w[0], w[1], w[2]) {
        (_, 0, 3) => 3,
        (1, 1, 1) => 1,
        (1, 1, 2) => 1,
        (_, 1, 3) => 3,
        (1, 2, _) => 2,
        (_, 3, 3) => 3,
        _ => 0,
    })
}

fn center_projection(name: &str, a: &Alphabet) -> Result<LocalRule> {
    LocalRule::from_fn(name, a, 1, |w| w[1])
}

fn halfplane(name: &str, ruleset: RuleSet, negative: &str, positive: &str) -> Result<RuleDistribution> {
    RuleDistribution::new(
        name,
        ruleset,
        DistributionKind::TwoSided {
            left: vec![negative.to_string()],
            center: vec![],
            anchor: 1,
            right: vec![positive.to_string()],
        },
    )
}

fn constant_configs(a: &Alphabet) -> Result<Vec<Configuration>> {
    Ok(vec![
        Configuration::constant("all_zeros", a.clone(), 0)?,
        Configuration::constant("all_ones", a.clone(), 1)?,
    ])
}

/// Center of the first fR-run of the given length in the example1 pyramid.
fn fr_run_center(theta: &RuleDistribution, run: i64) -> i64 {
    let mut len = 0i64;
    for x in 0..100_000i64 {
        if theta.at(x).name() == "fR" {
            len += 1;
            if len == run {
                return x - (run - 1) / 2;
            }
        } else {
            len = 0;
        }
    }
    unreachable!("fR runs of every length occur");
}

fn build_example1() -> Result<GalleryEntry> {
    let a = Alphabet::binary();
    let ruleset = RuleSet::new(
        a.clone(),
        vec![
            LocalRule::from_fn("fR", &a, 1, |w| w[1] ^ w[2])?,
            LocalRule::from_fn("g", &a, 1, |w| w[1])?,
            LocalRule::from_fn("fL", &a, 1, |w| w[0] ^ w[1])?,
        ],
    )?;
    let distribution = RuleDistribution::new(
        "example1",
        ruleset.clone(),
        DistributionKind::MirroredPyramid {
            fr: "fR".into(),
            g: "g".into(),
            fl: "fL".into(),
        },
    )?;
    let facts = vec![
        fact("rule rows: fL = a xor b, fR = b xor c, g = b", |e| {
            expect_row(e, "fL", &[1, 0, 0], 1)?;
            expect_row(e, "fL", &[0, 1, 1], 1)?;
            expect_row(e, "fR", &[1, 0, 0], 0)?;
            expect_row(e, "fR", &[0, 0, 1], 1)?;
            expect_row(e, "g", &[1, 0, 1], 0)?;
            expect_row(e, "g", &[0, 1, 0], 1)
        }),
        fact("the three rules are pairwise non-identical", |e| {
            let (normalized, _) = normalize_ruleset(&e.ruleset).map_err(|e| e.to_string())?;
            expect_eq("rules kept by normalization", normalized.len(), 3)
        }),
        fact("w1 sits on cells 0..2 as fR g fL", |e| {
            expect_eq("cell 0", e.distribution.at(0).name(), "fR")?;
            expect_eq("cell 1", e.distribution.at(1).name(), "g")?;
            expect_eq("cell 2", e.distribution.at(2).name(), "fL")
        }),
        fact("u1 recurs within offset 100", |e| {
            let d = IntervalDomain::new(0, 2);
            let k = e
                .distribution
                .recurrence_witness(&d, 100, CAP)
                .map_err(|e| e.to_string())?
                .ok_or("no witness found")?;
            for x in 0..=2 {
                expect_eq(
                    &format!("copy at offset {k}, cell {x}"),
                    e.distribution.at(x + k).name(),
                    e.distribution.at(x).name(),
                )?;
            }
            Ok(())
        }),
        fact("balanced on [0,4]", |e| {
            let report =
                balance_audit(&e.distribution, IntervalDomain::new(0, 4), CAP).map_err(|e| e.to_string())?;
            expect_eq("verdict", report.verdict, BalanceVerdict::Balanced)
        }),
        fact("no erasable pair on [0,6] against pad 0", |e| {
            match mutual_erasability_search(&e.distribution, IntervalDomain::new(0, 6), 0, CAP)
                .map_err(|e| e.to_string())?
            {
                None => Ok(()),
                Some(pair) => Err(format!(
                    "unexpected pair {} / {}",
                    pair.first.render(e.ruleset.alphabet()),
                    pair.second.render(e.ruleset.alphabet())
                )),
            }
        }),
        fact(
            "radius-2 inverse conflicts at an fR-run center, certified by the constant configurations",
            |e| {
                let x = fr_run_center(&e.distribution, 5);
                match local_inverse_candidate(&e.distribution, x, 2, CAP).map_err(|e| e.to_string())? {
                    InverseSearchOutcome::Conflict(_) => {}
                    InverseSearchOutcome::Candidate(_) => {
                        return Err(format!("unexpected candidate at {x}"));
                    }
                }
                let zeros = e.configuration("all_zeros").ok_or("missing all_zeros")?;
                let ones = e.configuration("all_ones").ok_or("missing all_ones")?;
                match verify_conflict_with_configs(&e.distribution, x, 2, zeros, ones) {
                    Ok(true) => Ok(()),
                    Ok(false) => Err("constant configurations do not certify".into()),
                    Err(err) => Err(err.to_string()),
                }
            },
        ),
    ];
    Ok(GalleryEntry {
        name: "example1".into(),
        configurations: constant_configs(&a)?,
        ruleset,
        distribution,
        facts,
    })
}

fn build_balance_counterexample() -> Result<GalleryEntry> {
    let a = Alphabet::binary();
    let ruleset = RuleSet::new(
        a.clone(),
        vec![
            LocalRule::from_fn("f", &a, 1, |w| w[0] ^ w[1] ^ w[2])?,
            LocalRule::from_fn("g", &a, 1, |w| w[1].max(w[2]))?,
        ],
    )?;
    let distribution = RuleDistribution::new(
        "balance_counterexample",
        ruleset.clone(),
        DistributionKind::TwoSided {
            left: vec!["f".into()],
            center: vec!["g".into()],
            anchor: 0,
            right: vec!["f".into()],
        },
    )?;
    let facts = vec![
        fact("rule rows: f = xor3, g = max(b,c)", |e| {
            expect_row(e, "f", &[1, 1, 0], 0)?;
            expect_row(e, "f", &[1, 0, 0], 1)?;
            expect_row(e, "g", &[0, 1, 0], 1)?;
            expect_row(e, "g", &[1, 0, 0], 0)?;
            expect_row(e, "g", &[0, 0, 1], 1)
        }),
        fact("g applies at the origin only", |e| {
            expect_eq("cell 0", e.distribution.at(0).name(), "g")?;
            expect_eq("cell -1", e.distribution.at(-1).name(), "f")?;
            expect_eq("cell 1", e.distribution.at(1).name(), "f")?;
            expect_eq("cell 40", e.distribution.at(40).name(), "f")
        }),
        fact("pattern 1 on {0} has 6 pre-images where 4 were expected", |e| {
            let d = IntervalDomain::singleton(0);
            let (count, _) = preimage_count(&e.distribution, d, &singleton_pattern(1), false, CAP)
                .map_err(|e| e.to_string())?;
            expect_eq("count", count, 6)
        }),
        fact("pattern 0 on {0} has the complementary 2 pre-images", |e| {
            let d = IntervalDomain::singleton(0);
            let (count, _) = preimage_count(&e.distribution, d, &singleton_pattern(0), false, CAP)
                .map_err(|e| e.to_string())?;
            expect_eq("count", count, 2)
        }),
        fact("unbalanced on {0}", |e| {
            let report = balance_audit(&e.distribution, IntervalDomain::singleton(0), CAP)
                .map_err(|e| e.to_string())?;
            expect_eq("verdict", report.verdict, BalanceVerdict::Unbalanced)?;
            expect_eq("expected pre-image count", report.expected, 4)?;
            expect_eq("tally", report.tally.clone(), vec![2, 6])
        }),
        fact("every pattern on {0} is locally attainable", |e| {
            let (ok, _) = surjectivity_window_check(&e.distribution, IntervalDomain::singleton(0), CAP)
                .map_err(|e| e.to_string())?;
            expect_eq("attainable", ok, true)
        }),
    ];
    Ok(GalleryEntry {
        name: "balance_counterexample".into(),
        configurations: constant_configs(&a)?,
        ruleset,
        distribution,
        facts,
    })
}

fn build_traffic_halfplane() -> Result<GalleryEntry> {
    let a = Alphabet::binary();
    let ruleset = RuleSet::new(a.clone(), vec![center_projection("id", &a)?, traffic_rule(&a)?])?;
    let distribution = halfplane("traffic_halfplane", ruleset.clone(), "id", "tau")?;
    let mut configurations = constant_configs(&a)?;
    configurations.push(Configuration::finite("one_at_4", a.clone(), 0, vec![1], 4)?);
    let facts = vec![
        fact("tau rows: 0 if a=0,b=1; 1 if b=0,c=1; b otherwise", |e| {
            expect_row(e, "tau", &[0, 1, 1], 0)?;
            expect_row(e, "tau", &[0, 1, 0], 0)?;
            expect_row(e, "tau", &[1, 0, 1], 1)?;
            expect_row(e, "tau", &[0, 0, 1], 1)?;
            expect_row(e, "tau", &[1, 1, 0], 1)?;
            expect_row(e, "tau", &[0, 0, 0], 0)
        }),
        fact("tau right of the origin, id at and left of it", |e| {
            expect_eq("cell 1", e.distribution.at(1).name(), "tau")?;
            expect_eq("cell 0", e.distribution.at(0).name(), "id")?;
            expect_eq("cell -9", e.distribution.at(-9).name(), "id")
        }),
        fact("all-ones is a fixed point", |e| {
            let ones = e.configuration("all_ones").ok_or("missing all_ones")?;
            for x in -6..=6 {
                let got = evolve_cell(&e.distribution, ones, x, 1).map_err(|e| e.to_string())?;
                expect_eq(&format!("cell {x}"), got, 1)?;
            }
            Ok(())
        }),
        fact("all-ones cylinder on [0,4] is invariant", |e| {
            let ones = e.configuration("all_ones").ok_or("missing all_ones")?;
            let cert = cylinder_invariance_check(&e.distribution, ones, IntervalDomain::new(0, 4), CAP)
                .map_err(|e| e.to_string())?;
            expect_eq("invariant", cert.is_invariant(), true)
        }),
        fact("divergence witness at cell 1 from all-zeros", |e| {
            let zeros = e.configuration("all_zeros").ok_or("missing all_zeros")?;
            let witness = divergence_search(
                &e.distribution,
                zeros,
                &IntervalDomain::new(-3, 3),
                &IntervalDomain::singleton(1),
                &[vec![0], vec![1]],
                64,
            )
            .map_err(|e| e.to_string())?
            .ok_or("no witness within 64 steps")?;
            expect_eq("witness cell", witness.cell, 1)?;
            match witness.replay(&e.distribution, zeros) {
                Ok(true) => Ok(()),
                Ok(false) => Err("witness does not replay".into()),
                Err(err) => Err(err.to_string()),
            }
        }),
        fact("the id id tau boundary pattern never recurs within 10^4", |e| {
            let found = e
                .distribution
                .recurrence_witness(&IntervalDomain::new(-1, 1), 10_000, CAP)
                .map_err(|e| e.to_string())?;
            expect_eq("witness", found, None)
        }),
    ];
    Ok(GalleryEntry {
        name: "traffic_halfplane".into(),
        configurations,
        ruleset,
        distribution,
        facts,
    })
}

fn build_fourstate_halfplane() -> Result<GalleryEntry> {
    let a = Alphabet::parse("0123")?;
    let ruleset = RuleSet::new(a.clone(), vec![center_projection("id", &a)?, fourstate_rule(&a)?])?;
    let distribution = halfplane("fourstate_halfplane", ruleset.clone(), "id", "f")?;
    let configurations = vec![
        Configuration::constant("all_ones", a.clone(), 1)?,
        Configuration::constant("all_zeros", a.clone(), 0)?,
        // 1…12 with the 2 at cell 6
        Configuration::finite("blocking", a.clone(), 1, vec![2], 6)?,
        // 2 at the origin: the smallest x with c(x-1) = 2 is x = 1
        Configuration::finite("barrier_at_0", a.clone(), 1, vec![2], 0)?,
    ];
    let facts = vec![
        fact("the six explicit clauses hold row-exactly", |e| {
            for arg in 0..4 {
                expect_row(e, "f", &[arg, 0, 3], 3)?;
                expect_row(e, "f", &[arg, 1, 3], 3)?;
                expect_row(e, "f", &[arg, 3, 3], 3)?;
                expect_row(e, "f", &[1, 2, arg], 2)?;
            }
            expect_row(e, "f", &[1, 1, 1], 1)?;
            expect_row(e, "f", &[1, 1, 2], 1)
        }),
        fact("unlisted windows map to 0", |e| {
            expect_row(e, "f", &[0, 0, 0], 0)?;
            expect_row(e, "f", &[2, 2, 2], 0)?;
            expect_row(e, "f", &[3, 0, 0], 0)?;
            expect_row(e, "f", &[0, 2, 3], 0)?;
            expect_row(e, "f", &[2, 1, 1], 0)
        }),
        fact("f right of the origin, id elsewhere", |e| {
            expect_eq("cell 3", e.distribution.at(3).name(), "f")?;
            expect_eq("cell 0", e.distribution.at(0).name(), "id")
        }),
        fact("the blocking word protects [0,6]", |e| {
            let c = e.configuration("blocking").ok_or("missing blocking")?;
            let cert = cylinder_invariance_check(&e.distribution, c, IntervalDomain::new(0, 6), CAP)
                .map_err(|e| e.to_string())?;
            expect_eq("invariant", cert.is_invariant(), true)
        }),
        fact("a 2 shadowed by a non-1 dies in x2-x1 steps", |e| {
            for d in 2..=12i64 {
                let mut center = vec![1 as Symbol; (d + 1) as usize];
                center[0] = 0;
                *center.last_mut().unwrap() = 2;
                let c = Configuration::finite("flood", e.ruleset.alphabet().clone(), 1, center, 1)
                    .map_err(|e| e.to_string())?;
                let got =
                    evolve_cell(&e.distribution, &c, 1 + d, d as u32).map_err(|e| e.to_string())?;
                expect_eq(&format!("H^{d}(c)({})", 1 + d), got, 0)?;
            }
            Ok(())
        }),
        fact("divergence witness with probes 0 and 3", |e| {
            let c = e.configuration("barrier_at_0").ok_or("missing barrier_at_0")?;
            let witness = divergence_search(
                &e.distribution,
                c,
                &IntervalDomain::new(-2, 2),
                &IntervalDomain::singleton(1),
                &[vec![0], vec![3]],
                32,
            )
            .map_err(|e| e.to_string())?
            .ok_or("no witness within 32 steps")?;
            match witness.replay(&e.distribution, c) {
                Ok(true) => Ok(()),
                Ok(false) => Err("witness does not replay".into()),
                Err(err) => Err(err.to_string()),
            }
        }),
    ];
    Ok(GalleryEntry {
        name: "fourstate_halfplane".into(),
        configurations,
        ruleset,
        distribution,
        facts,
    })
}

fn build_uniform(name: &str, rule: LocalRule, facts: Vec<PinnedFact>) -> Result<GalleryEntry> {
    let a = rule.alphabet().clone();
    let rule_name = rule.name().to_string();
    let ruleset = RuleSet::new(a.clone(), vec![rule])?;
    let distribution = RuleDistribution::uniform(name, ruleset.clone(), &rule_name)?;
    Ok(GalleryEntry {
        name: name.into(),
        configurations: constant_configs(&a)?,
        ruleset,
        distribution,
        facts,
    })
}

fn build_uniform_shift() -> Result<GalleryEntry> {
    let a = Alphabet::binary();
    let rule = LocalRule::from_fn("shift", &a, 1, |w| w[2])?;
    let facts = vec![
        fact("the rule returns the right neighbor", |e| {
            expect_row(e, "shift", &[0, 0, 1], 1)?;
            expect_row(e, "shift", &[1, 1, 0], 0)
        }),
        fact("balanced on [0,3]", |e| {
            let report = balance_audit(&e.distribution, IntervalDomain::new(0, 3), CAP)
                .map_err(|e| e.to_string())?;
            expect_eq("verdict", report.verdict, BalanceVerdict::Balanced)
        }),
        fact("assembly at radius 1 dedups to one rule and composes to the identity", |e| {
            let inv = crate::inverse::assemble_inverse(&e.distribution, IntervalDomain::new(-2, 2), 1, CAP)
                .map_err(|e| e.to_string())?;
            if inv.failure.is_some() {
                return Err("assembly failed".into());
            }
            expect_eq("rules", inv.rules.len(), 1)?;
            let report = crate::inverse::compose_check(&e.distribution, &inv, 20, 7)
                .map_err(|e| e.to_string())?;
            expect_eq("compose", report.ok, true)
        }),
    ];
    build_uniform("uniform_shift", rule, facts)
}

fn build_uniform_xor3() -> Result<GalleryEntry> {
    let a = Alphabet::binary();
    let rule = LocalRule::from_fn("xor3", &a, 1, |w| w[0] ^ w[1] ^ w[2])?;
    let facts = vec![
        fact("xor3 rows", |e| {
            expect_row(e, "xor3", &[1, 1, 0], 0)?;
            expect_row(e, "xor3", &[1, 1, 1], 1)?;
            expect_row(e, "xor3", &[0, 1, 0], 1)
        }),
        fact("pattern 1 on {0} has 4 pre-images", |e| {
            let d = IntervalDomain::singleton(0);
            let (count, _) = preimage_count(&e.distribution, d, &singleton_pattern(1), false, CAP)
                .map_err(|e| e.to_string())?;
            expect_eq("count", count, 4)
        }),
        fact("no erasable pair on [0,4] against pad 0", |e| {
            let found = mutual_erasability_search(&e.distribution, IntervalDomain::new(0, 4), 0, CAP)
                .map_err(|e| e.to_string())?;
            expect_eq("pair", found.is_none(), true)
        }),
        fact("no radius-1 inverse exists anywhere", |e| {
            match local_inverse_candidate(&e.distribution, 0, 1, CAP).map_err(|e| e.to_string())? {
                InverseSearchOutcome::Conflict(_) => Ok(()),
                InverseSearchOutcome::Candidate(_) => Err("xor3 is not injective".into()),
            }
        }),
    ];
    build_uniform("uniform_xor3", rule, facts)
}

fn build_uniform_and() -> Result<GalleryEntry> {
    let a = Alphabet::binary();
    let rule = LocalRule::from_fn("and", &a, 1, |w| w[1] & w[2])?;
    let facts = vec![
        fact("the rule is b and c", |e| {
            expect_row(e, "and", &[0, 1, 1], 1)?;
            expect_row(e, "and", &[1, 1, 0], 0)?;
            expect_row(e, "and", &[1, 0, 1], 0)
        }),
        fact("an erasable pair exists on [0,2] against pad 0", |e| {
            let pair = mutual_erasability_search(&e.distribution, IntervalDomain::new(0, 2), 0, CAP)
                .map_err(|e| e.to_string())?
                .ok_or("no pair found")?;
            expect_eq("patterns differ", pair.first != pair.second, true)
        }),
        fact("unbalanced on {0}", |e| {
            let report = balance_audit(&e.distribution, IntervalDomain::singleton(0), CAP)
                .map_err(|e| e.to_string())?;
            expect_eq("verdict", report.verdict, BalanceVerdict::Unbalanced)
        }),
    ];
    build_uniform("uniform_and", rule, facts)
}

/// Builds a catalog entry by name.
pub fn build_entry(name: &str) -> Result<GalleryEntry> {
    match name {
        "example1" => build_example1(),
        "balance_counterexample" => build_balance_counterexample(),
        "traffic_halfplane" => build_traffic_halfplane(),
        "fourstate_halfplane" => build_fourstate_halfplane(),
        "uniform_shift" => build_uniform_shift(),
        "uniform_xor3" => build_uniform_xor3(),
        "uniform_and" => build_uniform_and(),
        other => Err(Error::UnknownName(other.to_string())),
    }
}

/// The non-recurrent one-sided variant of example1, `(fR)^∞ g (fL)^∞`,
/// exposed for ad-hoc use without a catalog entry of its own.
pub fn example1_one_sided_variant() -> Result<RuleDistribution> {
    let entry = build_entry("example1")?;
    RuleDistribution::new(
        "example1_one_sided",
        entry.ruleset,
        DistributionKind::TwoSided {
            left: vec!["fR".into()],
            center: vec!["g".into()],
            anchor: 0,
            right: vec!["fL".into()],
        },
    )
}
