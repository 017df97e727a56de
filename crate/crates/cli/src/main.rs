//! `nuca`: simulate non-uniform cellular automata and audit their
//! finite-domain behavior from the command line.
//!
//! Exit codes: 0 completed (verdicts live in the output), 2 unusable input,
//! 3 enumeration cap exceeded, 4 internal invariant violation.

mod commands;
mod resolve;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use commands::DiagramFormat;
use nuca_core::DEFAULT_ENUMERATION_CAP;
use resolve::CliResult;

#[derive(Parser)]
#[command(name = "nuca", version, about = "Non-uniform cellular automata toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Render a space-time diagram.
    Simulate {
        /// Distribution file or gallery:<entry>.
        #[arg(long)]
        distribution: String,
        /// Rule files backing a distribution file.
        #[arg(long = "rules")]
        rules: Vec<PathBuf>,
        /// Configuration file, file#name, or gallery:<entry>/<config>.
        #[arg(long)]
        config: String,
        /// Cell window LO:HI.
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        /// Number of steps (rows beyond the initial one).
        #[arg(long)]
        steps: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: DiagramFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Audit pre-image balance over a finite domain; emits a CSV tally.
    Balance {
        #[arg(long)]
        distribution: String,
        #[arg(long = "rules")]
        rules: Vec<PathBuf>,
        /// Domain LO:HI.
        #[arg(short = 'D', long, allow_hyphen_values = true)]
        domain: String,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count (and optionally list) the pre-images of one pattern.
    Preimages {
        #[arg(long)]
        distribution: String,
        #[arg(long = "rules")]
        rules: Vec<PathBuf>,
        #[arg(short = 'D', long, allow_hyphen_values = true)]
        domain: String,
        /// The pattern as glyphs, leftmost cell first.
        #[arg(long)]
        pattern: String,
        /// List every pre-image as a comment row.
        #[arg(long)]
        list: bool,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search an interval for a mutually erasable pattern pair.
    Erasable {
        #[arg(long)]
        distribution: String,
        #[arg(long = "rules")]
        rules: Vec<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        interval: String,
        /// Constant padding glyph outside the interval.
        #[arg(long)]
        pad: String,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Assemble per-cell inverse rules, or report the blocking conflict.
    Inverse {
        #[arg(long)]
        distribution: String,
        #[arg(long = "rules")]
        rules: Vec<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        interval: String,
        /// Radius of the inverse rules to search for.
        #[arg(long)]
        radius: usize,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Randomized composition trials after a successful assembly.
        #[arg(long, default_value_t = 0)]
        verify_trials: u32,
        /// Seed for the composition trials (mandatory with --verify-trials).
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run an experiment spec: invariance certificate plus divergence search.
    Experiment {
        /// Experiment spec file.
        spec: PathBuf,
        #[arg(long = "rules")]
        rules: Vec<PathBuf>,
        /// Distribution file or gallery:<entry>, when the spec's name is not
        /// a gallery entry.
        #[arg(long)]
        distribution: Option<String>,
        /// Configuration sources searched for the spec's base name.
        #[arg(long = "config")]
        configs: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u64,
        /// Write space-time renders of the base and the witness probe here.
        #[arg(long)]
        render_dir: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Probe spatial recurrence of the rule word.
    Recurrence {
        #[arg(long)]
        distribution: String,
        #[arg(long = "rules")]
        rules: Vec<PathBuf>,
        #[arg(short = 'D', long, allow_hyphen_values = true)]
        domain: String,
        /// Search offsets |k| <= bound for a translated copy.
        #[arg(long)]
        bound: Option<u64>,
        /// Window length for the uniform-recurrence probe.
        #[arg(long)]
        gap: Option<u64>,
        /// Left endpoints LO:HI scanned by the uniform-recurrence probe.
        #[arg(long, allow_hyphen_values = true)]
        span: Option<String>,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Inspect or export the built-in catalog.
    Gallery {
        #[command(subcommand)]
        action: GalleryAction,
    },
}

#[derive(Subcommand)]
enum GalleryAction {
    /// List catalog entries.
    List,
    /// Write an entry's rule, distribution and configuration files.
    Export {
        name: String,
        #[arg(long)]
        dir: PathBuf,
    },
    /// Run an entry's pinned facts.
    Check { name: String },
}

fn run(command: Command) -> CliResult<String> {
    match command {
        Command::Simulate {
            distribution,
            rules,
            config,
            window,
            steps,
            format,
            out,
        } => commands::simulate(&distribution, &rules, &config, &window, steps, format, &out),
        Command::Balance {
            distribution,
            rules,
            domain,
            cap,
            out,
        } => commands::balance(&distribution, &rules, &domain, cap, &out),
        Command::Preimages {
            distribution,
            rules,
            domain,
            pattern,
            list,
            cap,
            out,
        } => commands::preimages(&distribution, &rules, &domain, &pattern, list, cap, &out),
        Command::Erasable {
            distribution,
            rules,
            interval,
            pad,
            cap,
            out,
        } => commands::erasable(&distribution, &rules, &interval, &pad, cap, &out),
        Command::Inverse {
            distribution,
            rules,
            interval,
            radius,
            cap,
            out,
            verify_trials,
            seed,
        } => commands::inverse(
            &distribution,
            &rules,
            &interval,
            radius,
            cap,
            &out,
            verify_trials,
            seed,
        ),
        Command::Experiment {
            spec,
            rules,
            distribution,
            configs,
            cap,
            render_dir,
            out,
        } => commands::experiment(&spec, &rules, &distribution, &configs, cap, &render_dir, &out),
        Command::Recurrence {
            distribution,
            rules,
            domain,
            bound,
            gap,
            span,
            cap,
            out,
        } => commands::recurrence(&distribution, &rules, &domain, bound, gap, span, cap, &out),
        Command::Gallery { action } => match action {
            GalleryAction::List => commands::gallery_list(),
            GalleryAction::Export { name, dir } => commands::gallery_export(&name, &dir),
            GalleryAction::Check { name } => commands::gallery_check(&name),
        },
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(stdout) => print!("{stdout}"),
        Err(error) => {
            eprintln!("error: {}", error.message());
            std::process::exit(error.exit_code());
        }
    }
}
