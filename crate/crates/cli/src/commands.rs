//! Subcommand implementations. Each returns the text that goes to stdout;
//! artifacts requested via `--out` are written to disk.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use nuca_core::dynamics::{cylinder_invariance_check, divergence_search, InvarianceResult};
use nuca_core::gallery::{build_entry, ENTRY_NAMES};
use nuca_core::io::{self, ExperimentSpec};
use nuca_core::{
    assemble_inverse, balance_audit, compose_check, mutual_erasability_search, preimage_count,
    spacetime, Configuration, IntervalDomain, Pattern, RuleDistribution,
};

use crate::resolve::{
    check_alphabets, input_err, load_configuration, load_distribution, parse_glyph,
    parse_interval, CliError, CliResult,
};

fn write_out(path: &Path, content: &str) -> CliResult<()> {
    fs::write(path, content)
        .map_err(|e| input_err(format!("cannot write {}: {e}", path.display())))
}

/// Routes the primary artifact to `--out` when given, to stdout otherwise.
fn emit(out: &Option<PathBuf>, content: String) -> CliResult<String> {
    match out {
        Some(path) => {
            write_out(path, &content)?;
            Ok(format!("wrote {}\n", path.display()))
        }
        None => Ok(content),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum DiagramFormat {
    Text,
    Pgm,
}

pub fn simulate(
    distribution: &str,
    rules: &[PathBuf],
    config: &str,
    window: &str,
    steps: u32,
    format: DiagramFormat,
    out: &Option<PathBuf>,
) -> CliResult<String> {
    let source = load_distribution(distribution, rules)?;
    let c = load_configuration(config)?;
    check_alphabets(&source.distribution, &c)?;
    let window = parse_interval(window)?;
    let grid = spacetime(&source.distribution, &c, &window, steps)?;
    let rendered = match format {
        DiagramFormat::Text => grid.to_text(),
        DiagramFormat::Pgm => grid.to_pgm(),
    };
    emit(out, rendered)
}

fn balance_csv(theta: &RuleDistribution, domain: IntervalDomain, cap: u64) -> CliResult<String> {
    let report = balance_audit(theta, domain, cap)?;
    let alphabet = theta.alphabet();
    let mut csv = String::from("pattern,count,expected\n");
    for (code, &count) in report.tally.iter().enumerate() {
        let pattern = report.pattern_of_code(code, alphabet.size());
        writeln!(csv, "{},{count},{}", pattern.render(alphabet), report.expected)
            .expect("writing to a string");
    }
    writeln!(csv, "# verdict={}", report.verdict).expect("writing to a string");
    Ok(csv)
}

pub fn balance(
    distribution: &str,
    rules: &[PathBuf],
    domain: &str,
    cap: u64,
    out: &Option<PathBuf>,
) -> CliResult<String> {
    let source = load_distribution(distribution, rules)?;
    let domain = parse_interval(domain)?;
    emit(out, balance_csv(&source.distribution, domain, cap)?)
}

pub fn preimages(
    distribution: &str,
    rules: &[PathBuf],
    domain: &str,
    pattern: &str,
    list: bool,
    cap: u64,
    out: &Option<PathBuf>,
) -> CliResult<String> {
    let source = load_distribution(distribution, rules)?;
    let theta = &source.distribution;
    let domain = parse_interval(domain)?;
    let symbols = theta.alphabet().read(pattern)?;
    let p = Pattern::new(domain, symbols)
        .map_err(|_| input_err(format!("pattern `{pattern}` does not fit {domain}")))?;
    let (count, listing) = preimage_count(theta, domain, &p, list, cap)?;
    let report = balance_audit(theta, domain, cap)?;
    let mut csv = String::from("pattern,count,expected\n");
    writeln!(csv, "{pattern},{count},{}", report.expected).expect("writing to a string");
    if let Some(listing) = listing {
        for q in listing {
            writeln!(csv, "# preimage {}", q.render(theta.alphabet())).expect("writing to a string");
        }
    }
    writeln!(csv, "# verdict={}", report.verdict).expect("writing to a string");
    emit(out, csv)
}

pub fn erasable(
    distribution: &str,
    rules: &[PathBuf],
    interval: &str,
    pad: &str,
    cap: u64,
    out: &Option<PathBuf>,
) -> CliResult<String> {
    let source = load_distribution(distribution, rules)?;
    let theta = &source.distribution;
    let interval = parse_interval(interval)?;
    let pad_sym = parse_glyph(theta.alphabet(), pad)?;
    let alphabet = theta.alphabet();
    let mut text = format!("interval {interval}\npad {pad}\n");
    match mutual_erasability_search(theta, interval, pad_sym, cap)? {
        Some(pair) => {
            writeln!(text, "first {}", pair.first.render(alphabet)).expect("writing to a string");
            writeln!(text, "second {}", pair.second.render(alphabet)).expect("writing to a string");
            writeln!(text, "image {}", pair.image.render(alphabet)).expect("writing to a string");
        }
        None => {
            text.push_str("result none\n");
        }
    }
    emit(out, text)
}

#[allow(clippy::too_many_arguments)]
pub fn inverse(
    distribution: &str,
    rules: &[PathBuf],
    interval: &str,
    radius: usize,
    cap: u64,
    out: &Option<PathBuf>,
    verify_trials: u32,
    seed: Option<u64>,
) -> CliResult<String> {
    if verify_trials > 0 && seed.is_none() {
        return Err(input_err("--verify-trials needs --seed for reproducible trials"));
    }
    let source = load_distribution(distribution, rules)?;
    let theta = &source.distribution;
    let interval = parse_interval(interval)?;
    let alphabet = theta.alphabet();
    let assembled = assemble_inverse(theta, interval, radius, cap)?;
    if let Some(conflict) = &assembled.failure {
        let mut text = format!("conflict cell={} radius={radius}\n", conflict.cell);
        writeln!(text, "extended {}", conflict.first.domain()).expect("writing to a string");
        writeln!(text, "first {}", conflict.first.render(alphabet)).expect("writing to a string");
        writeln!(text, "second {}", conflict.second.render(alphabet)).expect("writing to a string");
        writeln!(text, "image_window {}", conflict.image.domain()).expect("writing to a string");
        writeln!(text, "image {}", conflict.image.render(alphabet)).expect("writing to a string");
        return emit(out, text);
    }
    let rule_file = io::write_rules(assembled.rules.rules());
    let mut trailer = String::new();
    for (i, x) in interval.iter().enumerate() {
        writeln!(trailer, "# cell {x} -> {}", assembled.assignment[i]).expect("writing to a string");
    }
    if verify_trials > 0 {
        let seed = seed.expect("checked above");
        let report = compose_check(theta, &assembled, verify_trials, seed)?;
        writeln!(
            trailer,
            "# compose trials={} seed={} cells_checked={} ok={}",
            report.trials, report.seed, report.cells_checked, report.ok
        )
        .expect("writing to a string");
        if let Some(cx) = report.counterexample {
            writeln!(trailer, "# counterexample trial={} cell={}", cx.trial, cx.cell)
                .expect("writing to a string");
        }
    }
    match out {
        Some(path) => {
            write_out(path, &rule_file)?;
            Ok(format!("wrote {}\n{trailer}", path.display()))
        }
        None => Ok(format!("{rule_file}{trailer}")),
    }
}

fn resolve_experiment_inputs(
    spec: &ExperimentSpec,
    rules: &[PathBuf],
    distribution_flag: &Option<String>,
    config_flags: &[String],
) -> CliResult<(RuleDistribution, Configuration)> {
    let source = match distribution_flag {
        Some(flag) => {
            let source = load_distribution(flag, rules)?;
            if source.distribution.name() != spec.distribution {
                return Err(input_err(format!(
                    "spec names distribution `{}` but --distribution provides `{}`",
                    spec.distribution,
                    source.distribution.name()
                )));
            }
            source
        }
        None => load_distribution(&format!("gallery:{}", spec.distribution), rules)
            .map_err(|_| {
                input_err(format!(
                    "distribution `{}` is not a gallery entry; pass --distribution <file>",
                    spec.distribution
                ))
            })?,
    };
    for flag in config_flags {
        let c = load_configuration(flag)?;
        if c.name() == spec.base {
            check_alphabets(&source.distribution, &c)?;
            return Ok((source.distribution, c));
        }
    }
    if let Some(entry) = &source.entry {
        if let Some(c) = entry.configuration(&spec.base) {
            return Ok((source.distribution, c.clone()));
        }
    }
    Err(input_err(format!(
        "base configuration `{}` not found among --config inputs or gallery references",
        spec.base
    )))
}

pub fn experiment(
    spec_path: &Path,
    rules: &[PathBuf],
    distribution_flag: &Option<String>,
    config_flags: &[String],
    cap: u64,
    render_dir: &Option<PathBuf>,
    out: &Option<PathBuf>,
) -> CliResult<String> {
    let text = fs::read_to_string(spec_path)
        .map_err(|e| input_err(format!("cannot read {}: {e}", spec_path.display())))?;
    let spec = io::parse_experiment(&text)?;
    let (theta, base) = resolve_experiment_inputs(&spec, rules, distribution_flag, config_flags)?;
    let alphabet = theta.alphabet().clone();
    let probes: Vec<Vec<_>> = spec
        .probes
        .iter()
        .map(|word| alphabet.read(word))
        .collect::<Result<_, _>>()?;

    let mut report = String::new();
    writeln!(report, "experiment {}", spec.name).expect("writing to a string");
    writeln!(report, "distribution {}", spec.distribution).expect("writing to a string");
    writeln!(report, "base {}", spec.base).expect("writing to a string");
    writeln!(report, "D {}", spec.domain).expect("writing to a string");
    writeln!(report, "E {}", spec.observed).expect("writing to a string");
    writeln!(report, "tmax {}", spec.t_max).expect("writing to a string");

    let certificate = cylinder_invariance_check(&theta, &base, spec.domain, cap)?;
    match &certificate.result {
        InvarianceResult::Invariant => {
            report.push_str("invariance Invariant\n");
        }
        InvarianceResult::Escapes { extension, image } => {
            writeln!(
                report,
                "invariance Escapes extension={} image={}",
                extension.render(&alphabet),
                image.render(&alphabet)
            )
            .expect("writing to a string");
        }
    }

    let witness = divergence_search(&theta, &base, &spec.domain, &spec.observed, &probes, spec.t_max)?;
    match &witness {
        None => {
            writeln!(report, "divergence none within tmax={}", spec.t_max)
                .expect("writing to a string");
        }
        Some(w) => {
            if !w.replay(&theta, &base).map_err(|e| CliError::Internal(e.to_string()))? {
                return Err(CliError::Internal(format!(
                    "divergence witness at (cell {}, time {}) failed to replay",
                    w.cell, w.time
                )));
            }
            writeln!(
                report,
                "divergence probe={} time={} cell={} probe_value={} base_value={}",
                alphabet.render(&w.probe_background),
                w.time,
                w.cell,
                alphabet.glyph(w.probe_value),
                alphabet.glyph(w.base_value)
            )
            .expect("writing to a string");
        }
    }

    if let Some(dir) = render_dir {
        fs::create_dir_all(dir)
            .map_err(|e| input_err(format!("cannot create {}: {e}", dir.display())))?;
        let window = spec.domain.hull(&spec.observed);
        let horizon = witness.as_ref().map(|w| w.time).unwrap_or(spec.t_max);
        let base_grid = spacetime(&theta, &base, &window, horizon)?;
        write_out(&dir.join(format!("{}_base.txt", spec.name)), &base_grid.to_text())?;
        if let Some(w) = &witness {
            let probe_grid = spacetime(&theta, &w.probe, &window, horizon)?;
            write_out(&dir.join(format!("{}_probe.txt", spec.name)), &probe_grid.to_text())?;
        }
    }
    emit(out, report)
}

#[allow(clippy::too_many_arguments)]
pub fn recurrence(
    distribution: &str,
    rules: &[PathBuf],
    domain: &str,
    bound: Option<u64>,
    gap: Option<u64>,
    span: Option<String>,
    cap: u64,
    out: &Option<PathBuf>,
) -> CliResult<String> {
    let source = load_distribution(distribution, rules)?;
    let theta = &source.distribution;
    let domain = parse_interval(domain)?;
    let mut text = format!("distribution {}\nD {domain}\n", theta.name());
    match (bound, gap, span) {
        (Some(bound), None, None) => {
            writeln!(text, "bound {bound}").expect("writing to a string");
            match theta.recurrence_witness(&domain, bound, cap)? {
                Some(k) => writeln!(text, "witness {k}").expect("writing to a string"),
                None => writeln!(text, "witness none (inconclusive within bound {bound})")
                    .expect("writing to a string"),
            }
        }
        (None, Some(gap), Some(span)) => {
            let span = parse_interval(&span)?;
            writeln!(text, "gap {gap}\nspan {span}").expect("writing to a string");
            let (ok, violation) = theta.uniform_recurrence_probe(&domain, gap, &span)?;
            if ok {
                writeln!(text, "uniform_recurrence holds over the probed span")
                    .expect("writing to a string");
            } else {
                writeln!(text, "uniform_recurrence violated_at={}", violation.expect("violation position"))
                    .expect("writing to a string");
            }
        }
        _ => {
            return Err(input_err(
                "pass either --bound <k> for a recurrence witness or --gap <g> --span LO:HI for the uniform probe",
            ));
        }
    }
    emit(out, text)
}

pub fn gallery_list() -> CliResult<String> {
    let mut text = String::new();
    for name in ENTRY_NAMES {
        text.push_str(name);
        text.push('\n');
    }
    Ok(text)
}

pub fn gallery_export(name: &str, dir: &Path) -> CliResult<String> {
    let entry = build_entry(name)?;
    fs::create_dir_all(dir).map_err(|e| input_err(format!("cannot create {}: {e}", dir.display())))?;
    let rules_path = dir.join(format!("{name}.rules"));
    let dist_path = dir.join(format!("{name}.dist"));
    let configs_path = dir.join(format!("{name}.configs"));
    write_out(&rules_path, &io::write_rules(entry.ruleset.rules()))?;
    write_out(&dist_path, &io::write_distribution(&entry.distribution))?;
    write_out(&configs_path, &io::write_configurations(&entry.configurations))?;
    Ok(format!(
        "wrote {}\nwrote {}\nwrote {}\n",
        rules_path.display(),
        dist_path.display(),
        configs_path.display()
    ))
}

pub fn gallery_check(name: &str) -> CliResult<String> {
    let entry = build_entry(name)?;
    let mut text = String::new();
    for outcome in entry.run_pinned_facts() {
        if outcome.passed {
            writeln!(text, "[PASS] {name}: {}", outcome.label).expect("writing to a string");
        } else {
            writeln!(text, "[FAIL] {name}: {}: {}", outcome.label, outcome.detail)
                .expect("writing to a string");
        }
    }
    Ok(text)
}
