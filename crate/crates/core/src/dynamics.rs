//! Equicontinuity and sensitivity experiments: cylinder-invariance
//! certificates, bounded divergence search, temporal recurrence, and the
//! product pairing of a distribution with itself.

use crate::alphabet::{Alphabet, Symbol};
use crate::config::{Configuration, Pattern};
use crate::distribution::RuleDistribution;
use crate::domain::IntervalDomain;
use crate::error::{Error, Result};
use crate::evolve::Evolver;
use crate::finitemap::FiniteNucaMap;
use crate::rule::{LocalRule, RuleSet};
use crate::words::{check_cap, word_code, WordIter};

#[derive(Debug, Clone)]
pub enum InvarianceResult {
    /// Every one-step image of the cylinder stays in the cylinder, so by
    /// induction the whole orbit does.
    Invariant,
    /// Some boundary extension escapes; `extension` is the full input
    /// pattern over the extended domain, `image` its one-step image on the
    /// domain.
    Escapes { extension: Pattern, image: Pattern },
}

#[derive(Debug, Clone)]
pub struct InvarianceCertificate {
    pub domain: IntervalDomain,
    pub extended: IntervalDomain,
    pub result: InvarianceResult,
}

impl InvarianceCertificate {
    pub fn is_invariant(&self) -> bool {
        matches!(self.result, InvarianceResult::Invariant)
    }
}

/// Exhaustively checks `H_θ(Cyl(c, D)) ⊆ Cyl(c, D)`.
///
/// One step on `D` depends only on `N_θ(D)`, so enumerating the patterns on
/// `N_θ(D) \ D` is exhaustive. An `Invariant` answer certifies that `c` is
/// an equicontinuity point for every observation window inside `D`.
pub fn cylinder_invariance_check(
    theta: &RuleDistribution,
    c: &Configuration,
    domain: IntervalDomain,
    cap: u64,
) -> Result<InvarianceCertificate> {
    let map = FiniteNucaMap::new(theta, domain);
    let extended = *map.extended();
    if domain.is_empty() {
        return Ok(InvarianceCertificate {
            domain,
            extended,
            result: InvarianceResult::Invariant,
        });
    }
    let s = theta.alphabet().size();
    let boundary: Vec<i64> = extended.iter().filter(|x| !domain.contains(*x)).collect();
    check_cap(s, boundary.len() as u64, cap)?;
    let base: Vec<Symbol> = domain.iter().map(|x| c.value_at(x)).collect();
    let mut word = vec![0 as Symbol; extended.len() as usize];
    for x in domain.iter() {
        word[extended.index_of(x).unwrap()] = c.value_at(x);
    }
    let mut it = WordIter::new(s, boundary.len());
    while let Some(u) = it.next_word() {
        for (i, &x) in boundary.iter().enumerate() {
            word[extended.index_of(x).unwrap()] = u[i];
        }
        let image = map.apply_word(&word);
        if image != base {
            return Ok(InvarianceCertificate {
                domain,
                extended,
                result: InvarianceResult::Escapes {
                    extension: Pattern::new(extended, word.clone())?,
                    image: Pattern::new(domain, image)?,
                },
            });
        }
    }
    Ok(InvarianceCertificate {
        domain,
        extended,
        result: InvarianceResult::Invariant,
    })
}

/// A reproducible sensitivity witness: a probe in `Cyl(c, D)` whose orbit
/// leaves `Cyl(H_θ^n(c), E)` at time `n`, cell `cell`.
#[derive(Debug, Clone)]
pub struct DivergenceWitness {
    pub probe_index: usize,
    pub probe_background: Vec<Symbol>,
    pub probe: Configuration,
    pub time: u32,
    pub observed: IntervalDomain,
    pub cell: i64,
    pub probe_value: Symbol,
    pub base_value: Symbol,
}

impl DivergenceWitness {
    /// Re-simulates both orbits from scratch and confirms the recorded
    /// inequality at `(cell, time)`.
    pub fn replay(&self, theta: &RuleDistribution, c: &Configuration) -> Result<bool> {
        let probe_value = Evolver::new(theta, &self.probe)?.cell(self.cell, self.time);
        let base_value = Evolver::new(theta, c)?.cell(self.cell, self.time);
        Ok(probe_value != base_value
            && probe_value == self.probe_value
            && base_value == self.base_value)
    }
}

/// Builds the probe configuration that agrees with `c` on `d` and carries a
/// periodic `background` word outside.
pub fn probe_configuration(
    c: &Configuration,
    d: &IntervalDomain,
    background: &[Symbol],
    index: usize,
) -> Result<Configuration> {
    let (lo, _) = d
        .bounds()
        .ok_or_else(|| Error::Invalid("probe construction needs a nonempty domain".into()))?;
    Configuration::two_sided(
        format!("probe{index}"),
        c.alphabet().clone(),
        background.to_vec(),
        c.restrict(d).symbols().to_vec(),
        lo,
        background.to_vec(),
    )
}

/// Simulates each probe against the base configuration for up to `t_max`
/// steps, returning the first difference observed inside `observed`.
/// Absence within the bound proves nothing.
pub fn divergence_search(
    theta: &RuleDistribution,
    c: &Configuration,
    d: &IntervalDomain,
    observed: &IntervalDomain,
    probes: &[Vec<Symbol>],
    t_max: u32,
) -> Result<Option<DivergenceWitness>> {
    for background in probes {
        if background.is_empty() {
            return Err(Error::Invalid("probe background words must be nonempty".into()));
        }
        for &s in background {
            theta.alphabet().check(s)?;
        }
    }
    let configs: Vec<Configuration> = probes
        .iter()
        .enumerate()
        .map(|(i, background)| probe_configuration(c, d, background, i))
        .collect::<Result<_>>()?;
    let mut base = Evolver::new(theta, c)?;
    let mut evolvers: Vec<Evolver> = configs
        .iter()
        .map(|probe| Evolver::new(theta, probe))
        .collect::<Result<_>>()?;
    for n in 1..=t_max {
        let base_row = base.window(observed, n);
        for (i, ev) in evolvers.iter_mut().enumerate() {
            let probe_row = ev.window(observed, n);
            for x in observed.iter() {
                let pv = probe_row.at(x).unwrap();
                let bv = base_row.at(x).unwrap();
                if pv != bv {
                    return Ok(Some(DivergenceWitness {
                        probe_index: i,
                        probe_background: probes[i].clone(),
                        probe: configs[i].clone(),
                        time: n,
                        observed: *observed,
                        cell: x,
                        probe_value: pv,
                        base_value: bv,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Smallest `n ∈ [1, t_max]` with `H_θ^n(c) ∈ Cyl(c, D)`, if any.
pub fn temporal_recurrence_search(
    theta: &RuleDistribution,
    c: &Configuration,
    d: &IntervalDomain,
    t_max: u32,
) -> Result<Option<u32>> {
    let base = c.restrict(d);
    let mut ev = Evolver::new(theta, c)?;
    for n in 1..=t_max {
        if ev.window(d, n) == base {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// `a*s + b`: the paired symbol of `(a, b)` over an alphabet of size `s`.
pub fn pair_symbol(a: Symbol, b: Symbol, s: usize) -> Symbol {
    (a as usize * s + b as usize) as Symbol
}

pub fn unpair_symbol(p: Symbol, s: usize) -> (Symbol, Symbol) {
    ((p as usize / s) as Symbol, (p as usize % s) as Symbol)
}

pub fn pair_alphabet(alphabet: &Alphabet) -> Result<Alphabet> {
    Alphabet::canonical(alphabet.size() * alphabet.size())
}

/// The distribution on pairs that applies `θ(x)` to both components
/// independently. Radii are preserved.
pub fn product_pairing(theta: &RuleDistribution) -> Result<RuleDistribution> {
    let s = theta.alphabet().size();
    let paired_alphabet = pair_alphabet(theta.alphabet())?;
    let rename = |name: &str| format!("pair_{name}");
    let paired_rules: Vec<LocalRule> = theta
        .ruleset()
        .rules()
        .iter()
        .map(|rule| {
            LocalRule::from_fn(rename(rule.name()), &paired_alphabet, rule.radius(), |w| {
                let first: Vec<Symbol> = w.iter().map(|&p| unpair_symbol(p, s).0).collect();
                let second: Vec<Symbol> = w.iter().map(|&p| unpair_symbol(p, s).1).collect();
                pair_symbol(
                    rule.eval_code(word_code(&first, s)),
                    rule.eval_code(word_code(&second, s)),
                    s,
                )
            })
        })
        .collect::<Result<_>>()?;
    let paired_set = RuleSet::new(paired_alphabet, paired_rules)?;
    use crate::distribution::DistributionKind as K;
    let kind = match theta.kind() {
        K::Uniform { rule } => K::Uniform { rule: rename(&rule) },
        K::TwoSided {
            left,
            center,
            anchor,
            right,
        } => K::TwoSided {
            left: left.iter().map(|n| rename(n)).collect(),
            center: center.iter().map(|n| rename(n)).collect(),
            anchor,
            right: right.iter().map(|n| rename(n)).collect(),
        },
        K::MirroredPyramid { fr, g, fl } => K::MirroredPyramid {
            fr: rename(&fr),
            g: rename(&g),
            fl: rename(&fl),
        },
    };
    RuleDistribution::new(format!("pair_{}", theta.name()), paired_set, kind)
}

/// Interleaves two configurations over the paired alphabet.
pub fn pair_configurations(c1: &Configuration, c2: &Configuration) -> Result<Configuration> {
    if c1.alphabet() != c2.alphabet() {
        return Err(Error::AlphabetMismatch(
            "paired configurations need a common alphabet".into(),
        ));
    }
    let s = c1.alphabet().size();
    let paired_alphabet = pair_alphabet(c1.alphabet())?;
    let pair_at = |x: i64| pair_symbol(c1.value_at(x), c2.value_at(x), s);
    let lo = c1.anchor().min(c2.anchor());
    let hi = (c1.anchor() + c1.center().len() as i64).max(c2.anchor() + c2.center().len() as i64);
    let left_period = lcm(c1.left_period().len(), c2.left_period().len()) as i64;
    let right_period = lcm(c1.right_period().len(), c2.right_period().len()) as i64;
    Configuration::two_sided(
        format!("pair_{}_{}", c1.name(), c2.name()),
        paired_alphabet,
        (lo - left_period..lo).map(pair_at).collect(),
        (lo..hi).map(pair_at).collect(),
        lo,
        (hi..hi + right_period).map(pair_at).collect(),
    )
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distribution::DistributionKind;
    use crate::evolve::{evolve_cell, evolve_window};
    use crate::finitemap::DEFAULT_ENUMERATION_CAP as CAP;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn binary() -> Alphabet {
        Alphabet::binary()
    }

    fn traffic_halfplane() -> RuleDistribution {
        let a = binary();
        let rs = RuleSet::new(
            a.clone(),
            vec![
                LocalRule::from_fn("id", &a, 1, |w| w[1]).unwrap(),
                LocalRule::from_fn("tau", &a, 1, |w| match (w[0], w[1], w[2]) {
                    (0, 1, _) => 0,
                    (_, 0, 1) => 1,
                    (_, b, _) => b,
                })
                .unwrap(),
            ],
        )
        .unwrap();
        RuleDistribution::new(
            "traffic",
            rs,
            DistributionKind::TwoSided {
                left: vec!["id".into()],
                center: vec![],
                anchor: 1,
                right: vec!["tau".into()],
            },
        )
        .unwrap()
    }

    fn fourstate_halfplane() -> RuleDistribution {
        let a = Alphabet::parse("0123").unwrap();
        let f = LocalRule::from_fn("f", &a, 1, |w| match (w[0], w[1], w[2]) {
            (_, 0, 3) => 3,
            (1, 1, 1) => 1,
            (1, 1, 2) => 1,
            (_, 1, 3) => 3,
            (1, 2, _) => 2,
            (_, 3, 3) => 3,
            _ => 0,
        })
        .unwrap();
        let id = LocalRule::from_fn("id", &a, 1, |w| w[1]).unwrap();
        let rs = RuleSet::new(a, vec![id, f]).unwrap();
        RuleDistribution::new(
            "fourstate",
            rs,
            DistributionKind::TwoSided {
                left: vec!["id".into()],
                center: vec![],
                anchor: 1,
                right: vec!["f".into()],
            },
        )
        .unwrap()
    }

    #[test]
    fn all_ones_cylinder_is_invariant_when_anchored_at_origin() {
        let theta = traffic_halfplane();
        let ones = Configuration::constant("ones", binary(), 1).unwrap();
        // D = E ∪ [0, k] for E = [2, 4]
        let cert = cylinder_invariance_check(&theta, &ones, IntervalDomain::new(0, 4), CAP).unwrap();
        assert!(cert.is_invariant());
    }

    #[test]
    fn gap_to_origin_lets_traffic_escape() {
        let theta = traffic_halfplane();
        let ones = Configuration::constant("ones", binary(), 1).unwrap();
        let cert = cylinder_invariance_check(&theta, &ones, IntervalDomain::new(2, 4), CAP).unwrap();
        match cert.result {
            InvarianceResult::Escapes { extension, image } => {
                // a 0 entering at cell 1 annihilates the 1 at cell 2
                assert_eq!(extension.at(1), Some(0));
                assert_ne!(image.at(2), Some(1));
            }
            InvarianceResult::Invariant => panic!("the gap admits an escaping extension"),
        }
    }

    #[test]
    fn blocking_word_protects_the_fourstate_segment() {
        let theta = fourstate_halfplane();
        let a = Alphabet::parse("0123").unwrap();
        // c(j) = 2 and c(x) = 1 elsewhere, with j = 6; D = [min(i,0), j] for i = 2
        let c = Configuration::finite("blocking", a, 1, vec![2], 6).unwrap();
        let cert = cylinder_invariance_check(&theta, &c, IntervalDomain::new(0, 6), CAP).unwrap();
        assert!(cert.is_invariant());
    }

    #[test]
    fn invariant_certificates_are_one_step_sound() {
        let theta = traffic_halfplane();
        let ones = Configuration::constant("ones", binary(), 1).unwrap();
        let d = IntervalDomain::new(0, 4);
        let cert = cylinder_invariance_check(&theta, &ones, d, CAP).unwrap();
        assert!(cert.is_invariant());
        let base = ones.restrict(&d);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            // a random member of Cyl(c, D)
            let center: Vec<Symbol> = (-3..=7)
                .map(|x| {
                    if d.contains(x) {
                        ones.value_at(x)
                    } else {
                        rng.gen_range(0..2) as Symbol
                    }
                })
                .collect();
            let e = Configuration::two_sided(
                "e",
                binary(),
                vec![rng.gen_range(0..2) as Symbol],
                center,
                -3,
                vec![rng.gen_range(0..2) as Symbol],
            )
            .unwrap();
            for t in 1..=10 {
                assert_eq!(
                    evolve_window(&theta, &e, &d, t).unwrap(),
                    base,
                    "orbit left the cylinder at t={t}"
                );
            }
        }
    }

    #[test]
    fn divergence_found_for_traffic_with_zero_at_origin() {
        let theta = traffic_halfplane();
        let zeros = Configuration::constant("zeros", binary(), 0).unwrap();
        let witness = divergence_search(
            &theta,
            &zeros,
            &IntervalDomain::new(-3, 3),
            &IntervalDomain::singleton(1),
            &[vec![0], vec![1]],
            64,
        )
        .unwrap()
        .expect("traffic arrives from the right");
        assert_eq!(witness.cell, 1);
        assert!(witness.replay(&theta, &zeros).unwrap());
        // the all-ones probe is the one that delivers traffic
        assert_eq!(witness.probe_background, vec![1]);
    }

    #[test]
    fn no_divergence_for_protected_all_ones() {
        let theta = traffic_halfplane();
        let ones = Configuration::constant("ones", binary(), 1).unwrap();
        let found = divergence_search(
            &theta,
            &ones,
            &IntervalDomain::new(0, 4),
            &IntervalDomain::new(2, 4),
            &[vec![0], vec![1]],
            64,
        )
        .unwrap();
        assert!(found.is_none(), "the anchored cylinder is invariant");
    }

    #[test]
    fn fourstate_divergence_with_zero_and_three_probes() {
        let theta = fourstate_halfplane();
        let a = Alphabet::parse("0123").unwrap();
        // c(0) = 2 on an all-ones background; observe cell 1, just right of the barrier
        let c = Configuration::finite("barrier", a, 1, vec![2], 0).unwrap();
        let witness = divergence_search(
            &theta,
            &c,
            &IntervalDomain::new(-2, 2),
            &IntervalDomain::singleton(1),
            &[vec![0], vec![3]],
            32,
        )
        .unwrap()
        .expect("threes flood in from the right");
        assert_eq!(witness.probe_background, vec![3]);
        assert_eq!(witness.probe_value, 3);
        assert!(witness.replay(&theta, &c).unwrap());
    }

    #[test]
    fn traffic_ones_count_never_increases_on_positive_cells() {
        let theta = traffic_halfplane();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..50 {
            let width = rng.gen_range(1..=12);
            let word: Vec<Symbol> = (0..width).map(|_| rng.gen_range(0..2) as Symbol).collect();
            let c = Configuration::finite("c", binary(), 0, word, 1).unwrap();
            let horizon = IntervalDomain::new(1, 14);
            let mut ev = Evolver::new(&theta, &c).unwrap();
            let mut prev = ev
                .window(&horizon, 0)
                .symbols()
                .iter()
                .filter(|&&s| s == 1)
                .count();
            for t in 1..=100u32 {
                let count = ev
                    .window(&horizon, t)
                    .symbols()
                    .iter()
                    .filter(|&&s| s == 1)
                    .count();
                assert!(count <= prev, "ones increased at t={t}");
                prev = count;
            }
        }
    }

    #[test]
    fn fourstate_flood_law() {
        // a 2 with a non-1 between it and the origin dies in x2-x1 steps
        let theta = fourstate_halfplane();
        let a = Alphabet::parse("0123").unwrap();
        for d in 2..=12i64 {
            let x1 = 1;
            let x2 = x1 + d;
            let mut center = vec![1 as Symbol; (d + 1) as usize];
            center[0] = 0;
            *center.last_mut().unwrap() = 2;
            let c = Configuration::finite("flood", a.clone(), 1, center, x1).unwrap();
            assert_eq!(
                evolve_cell(&theta, &c, x2, d as u32).unwrap(),
                0,
                "the 2 at {x2} must be gone after {d} steps"
            );
        }
    }

    #[test]
    fn temporal_recurrence_of_fixed_points() {
        let a = binary();
        let rs = RuleSet::new(
            a.clone(),
            vec![LocalRule::from_fn("id", &a, 1, |w| w[1]).unwrap()],
        )
        .unwrap();
        let theta = RuleDistribution::uniform("id", rs, "id").unwrap();
        let c = Configuration::finite("c", binary(), 0, vec![1, 0, 1], 0).unwrap();
        assert_eq!(
            temporal_recurrence_search(&theta, &c, &IntervalDomain::new(-2, 4), 8).unwrap(),
            Some(1)
        );
    }

    #[test]
    fn temporal_recurrence_of_shifted_periodic_words() {
        let a = binary();
        let rs = RuleSet::new(
            a.clone(),
            vec![LocalRule::from_fn("shift", &a, 1, |w| w[2]).unwrap()],
        )
        .unwrap();
        let theta = RuleDistribution::uniform("shift", rs, "shift").unwrap();
        let word = vec![0, 1, 1];
        let c = Configuration::two_sided("c", binary(), word.clone(), vec![], 0, word).unwrap();
        assert_eq!(
            temporal_recurrence_search(&theta, &c, &IntervalDomain::new(0, 2), 10).unwrap(),
            Some(3),
            "a 3-periodic word returns after 3 shifts"
        );
    }

    #[test]
    fn traffic_all_ones_is_temporally_recurrent_immediately() {
        let theta = traffic_halfplane();
        let ones = Configuration::constant("ones", binary(), 1).unwrap();
        assert_eq!(
            temporal_recurrence_search(&theta, &ones, &IntervalDomain::new(-4, 4), 4).unwrap(),
            Some(1)
        );
    }

    #[test]
    fn pairing_of_center_projection_is_center_projection() {
        let a = binary();
        let rs = RuleSet::new(
            a.clone(),
            vec![LocalRule::from_fn("id", &a, 1, |w| w[1]).unwrap()],
        )
        .unwrap();
        let theta = RuleDistribution::uniform("id", rs, "id").unwrap();
        let paired = product_pairing(&theta).unwrap();
        assert_eq!(paired.alphabet().size(), 4);
        let rule = paired.at(0);
        assert_eq!(rule.radius(), 1, "pairing preserves radius");
        let mut it = WordIter::new(4, 3);
        while let Some(w) = it.next_word() {
            assert_eq!(rule.eval(w).unwrap(), w[1]);
        }
    }

    #[test]
    fn pairing_evolves_componentwise() {
        let theta = traffic_halfplane();
        let paired = product_pairing(&theta).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..100 {
            let c1 = Configuration::random("c1", &binary(), &mut rng);
            let c2 = Configuration::random("c2", &binary(), &mut rng);
            let pc = pair_configurations(&c1, &c2).unwrap();
            let x = rng.gen_range(-6..=6);
            let t = rng.gen_range(0..=5u32);
            let got = evolve_cell(&paired, &pc, x, t).unwrap();
            let want = pair_symbol(
                evolve_cell(&theta, &c1, x, t).unwrap(),
                evolve_cell(&theta, &c2, x, t).unwrap(),
                2,
            );
            assert_eq!(got, want);
        }
    }

    #[test]
    fn pairing_of_pyramid_keeps_the_block_structure() {
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
        let theta = RuleDistribution::new(
            "example1",
            rs,
            DistributionKind::MirroredPyramid {
                fr: "fR".into(),
                g: "g".into(),
                fl: "fL".into(),
            },
        )
        .unwrap();
        let paired = product_pairing(&theta).unwrap();
        for x in -30..30 {
            assert_eq!(paired.at(x).name(), format!("pair_{}", theta.at(x).name()));
        }
    }
}
