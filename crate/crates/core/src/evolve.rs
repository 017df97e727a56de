//! The global transition: pointwise cell evolution over the dependency
//! cone, windowed evolution, dense space-time grids, and a closed-form
//! one-step map on two-sided descriptions.

use std::collections::HashMap;

use crate::alphabet::{Alphabet, Symbol};
use crate::config::{Configuration, Pattern};
use crate::distribution::RuleDistribution;
use crate::domain::IntervalDomain;
use crate::error::{Error, Result};
use crate::words::word_code;

fn check_alphabets(theta: &RuleDistribution, c: &Configuration) -> Result<()> {
    if theta.alphabet() != c.alphabet() {
        return Err(Error::AlphabetMismatch(format!(
            "distribution `{}` is over {}, configuration `{}` over {}",
            theta.name(),
            theta.alphabet().glyph_string(),
            c.name(),
            c.alphabet().glyph_string()
        )));
    }
    Ok(())
}

/// Evaluates one global step at a single cell, reading straight from the
/// configuration description.
fn one_step_value(theta: &RuleDistribution, c: &Configuration, x: i64) -> Symbol {
    let rule = theta.at(x);
    let r = rule.radius() as i64;
    let window: Vec<Symbol> = (x - r..=x + r).map(|y| c.value_at(y)).collect();
    rule.eval_code(word_code(&window, theta.alphabet().size()))
}

/// Iterated-transition evaluator with a transient memo keyed by
/// `(cell, time)`. One instance serves many queries against the same
/// distribution and start configuration; results are pure functions of the
/// inputs, so dropping the evaluator loses nothing but time.
pub struct Evolver<'a> {
    theta: &'a RuleDistribution,
    config: &'a Configuration,
    rows: Vec<HashMap<i64, Symbol>>,
}

impl<'a> Evolver<'a> {
    pub fn new(theta: &'a RuleDistribution, config: &'a Configuration) -> Result<Self> {
        check_alphabets(theta, config)?;
        Ok(Evolver {
            theta,
            config,
            rows: vec![HashMap::new()],
        })
    }

    /// `H_θ^t(c)(x)`.
    pub fn cell(&mut self, x: i64, t: u32) -> Symbol {
        self.ensure(&IntervalDomain::singleton(x), t);
        self.rows[t as usize][&x]
    }

    /// `H_θ^t(c)` restricted to `window`.
    pub fn window(&mut self, window: &IntervalDomain, t: u32) -> Pattern {
        self.ensure(window, t);
        let row = &self.rows[t as usize];
        Pattern::new(*window, window.iter().map(|x| row[&x]).collect())
            .expect("window cells are ensured")
    }

    fn ensure(&mut self, window: &IntervalDomain, t: u32) {
        if window.is_empty() {
            return;
        }
        let t = t as usize;
        if self.rows.len() <= t {
            self.rows.resize_with(t + 1, HashMap::new);
        }
        // dependency cone, using per-cell radii
        let mut spans = vec![IntervalDomain::EMPTY; t + 1];
        spans[t] = *window;
        for k in (1..=t).rev() {
            spans[k - 1] = self.theta.neighborhood_of(&spans[k]);
        }
        for x in spans[0].iter() {
            if !self.rows[0].contains_key(&x) {
                self.rows[0].insert(x, self.config.value_at(x));
            }
        }
        let s = self.theta.alphabet().size();
        for (k, span) in spans.iter().enumerate().skip(1) {
            let (done, rest) = self.rows.split_at_mut(k);
            let prev = &done[k - 1];
            let row = &mut rest[0];
            for x in span.iter() {
                if row.contains_key(&x) {
                    continue;
                }
                let rule = self.theta.at(x);
                let r = rule.radius() as i64;
                let win: Vec<Symbol> = (x - r..=x + r).map(|y| prev[&y]).collect();
                row.insert(x, rule.eval_code(word_code(&win, s)));
            }
        }
    }
}

/// `H_θ^t(c)(x)` with a transient per-call memo.
pub fn evolve_cell(theta: &RuleDistribution, c: &Configuration, x: i64, t: u32) -> Result<Symbol> {
    Ok(Evolver::new(theta, c)?.cell(x, t))
}

/// `H_θ^t(c)` restricted to `window`, one shared memo per call.
pub fn evolve_window(
    theta: &RuleDistribution,
    c: &Configuration,
    window: &IntervalDomain,
    t: u32,
) -> Result<Pattern> {
    Ok(Evolver::new(theta, c)?.window(window, t))
}

/// A dense space-time diagram: row `t`, column `x` holds `H_θ^t(c)(x)`.
#[derive(Debug, Clone)]
pub struct SpaceTimeGrid {
    alphabet: Alphabet,
    window: IntervalDomain,
    rows: Vec<Vec<Symbol>>,
}

impl SpaceTimeGrid {
    pub fn window(&self) -> &IntervalDomain {
        &self.window
    }

    pub fn steps(&self) -> u32 {
        self.rows.len() as u32 - 1
    }

    pub fn rows(&self) -> &[Vec<Symbol>] {
        &self.rows
    }

    pub fn row(&self, t: u32) -> &[Symbol] {
        &self.rows[t as usize]
    }

    pub fn value(&self, x: i64, t: u32) -> Option<Symbol> {
        let i = self.window.index_of(x)?;
        self.rows.get(t as usize).map(|row| row[i])
    }

    /// One text row per time step, one glyph per cell, top row is `t = 0`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            out.push_str(&self.alphabet.render(row));
            out.push('\n');
        }
        out
    }

    /// Plain PGM ("P2"), symbol `i` mapped to gray `floor(255·i/(s-1))`.
    pub fn to_pgm(&self) -> String {
        let s = self.alphabet.size();
        let gray = |sym: Symbol| -> u32 {
            if s <= 1 {
                0
            } else {
                255 * sym as u32 / (s as u32 - 1)
            }
        };
        let mut out = format!("P2\n{} {}\n255\n", self.window.len(), self.rows.len());
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|&sym| gray(sym).to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Simulates `steps` applications of the transition over `window`,
/// row by row over the dependency cone.
pub fn spacetime(
    theta: &RuleDistribution,
    c: &Configuration,
    window: &IntervalDomain,
    steps: u32,
) -> Result<SpaceTimeGrid> {
    check_alphabets(theta, c)?;
    let t_max = steps as usize;
    let mut spans = vec![IntervalDomain::EMPTY; t_max + 1];
    spans[t_max] = *window;
    for k in (1..=t_max).rev() {
        spans[k - 1] = theta.neighborhood_of(&spans[k]);
    }
    let s = theta.alphabet().size();
    let mut rows_out: Vec<Vec<Symbol>> = Vec::with_capacity(t_max + 1);
    let mut prev_span = spans[0];
    let mut prev_row: Vec<Symbol> = spans[0].iter().map(|x| c.value_at(x)).collect();
    let slice_to_window = |span: &IntervalDomain, row: &[Symbol]| -> Vec<Symbol> {
        window
            .iter()
            .map(|x| row[span.index_of(x).expect("cone spans cover the window")])
            .collect()
    };
    rows_out.push(slice_to_window(&prev_span, &prev_row));
    for &span in spans.iter().skip(1) {
        let row: Vec<Symbol> = span
            .iter()
            .map(|x| {
                let rule = theta.at(x);
                let r = rule.radius() as i64;
                let lo = prev_span.index_of(x - r).expect("cone invariant");
                let code = word_code(&prev_row[lo..lo + rule.window_len()], s);
                rule.eval_code(code)
            })
            .collect();
        rows_out.push(slice_to_window(&span, &row));
        prev_span = span;
        prev_row = row;
    }
    Ok(SpaceTimeGrid {
        alphabet: theta.alphabet().clone(),
        window: *window,
        rows: rows_out,
    })
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

/// One global step in closed form: maps a two-sided configuration to a
/// two-sided configuration, provided the distribution's description is
/// eventually periodic on both sides. Beyond a bound covering both anchors
/// plus twice the radius bound, the image tails are periodic with period
/// `lcm` of the rule-word and symbol-word periods.
pub fn step_config(theta: &RuleDistribution, c: &Configuration) -> Result<Configuration> {
    check_alphabets(theta, c)?;
    let (ptl, theta_anchor, theta_center, ptr) = theta.periodic_description().ok_or_else(|| {
        Error::UnsupportedClosedForm(format!(
            "distribution `{}` has no eventually periodic description; step cells individually instead",
            theta.name()
        ))
    })?;
    let rho = theta.radius_bound() as i64;
    let right_start = (theta_anchor + theta_center as i64).max(c.anchor() + c.center().len() as i64);
    let left_start = theta_anchor.min(c.anchor());
    let hi = right_start + 2 * rho; // right tail of the image is periodic from here
    let lo = left_start - 2 * rho; // and the left tail below here
    let left_period = lcm(ptl, c.left_period().len()) as i64;
    let right_period = lcm(ptr, c.right_period().len()) as i64;

    let left: Vec<Symbol> = (lo - left_period..lo)
        .map(|x| one_step_value(theta, c, x))
        .collect();
    let center: Vec<Symbol> = (lo..hi).map(|x| one_step_value(theta, c, x)).collect();
    let right: Vec<Symbol> = (hi..hi + right_period)
        .map(|x| one_step_value(theta, c, x))
        .collect();
    Configuration::two_sided(c.name(), c.alphabet().clone(), left, center, lo, right)
}
