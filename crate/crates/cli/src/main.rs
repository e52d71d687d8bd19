use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use morphic::ivp::{check_ivp, verify_coding_grid, verify_prop4};
use morphic::regularity::{self, Source};
use morphic::tml::{self, locate_in_t, witness};
use morphic::{
    digit_sum, mirror, parse_morphism, tau, Coding, ComplexityTable, FixedPointStream, Morphism,
    Report,
};

#[derive(Parser)]
#[command(
    name = "morphic",
    version,
    about = "Fixed points of morphisms and their complexity functions"
)]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Longest prefix any enumeration may materialize, in symbols.
    #[arg(long, global = true)]
    window_cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SourceArgs {
    /// Built-in morphism: tml or sigma3.
    #[arg(long, conflicts_with = "morphism")]
    preset: Option<String>,
    /// Morphism file with one `letter -> image` rule per line.
    #[arg(long)]
    morphism: Option<PathBuf>,
    /// Letter to iterate from (defaults to the first letter).
    #[arg(long)]
    seed: Option<String>,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, ValueEnum)]
enum SourceKind {
    Closed,
    Enumerated,
}

impl From<SourceKind> for Source {
    fn from(s: SourceKind) -> Self {
        match s {
            SourceKind::Closed => Source::Closed,
            SourceKind::Enumerated => Source::Enumerated,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print a prefix of the fixed point.
    Generate {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        length: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Complexity table over a range of lengths.
    Complexity {
        #[command(flatten)]
        source: SourceArgs,
        /// Inline coding (`a=0,b=1,c=3` or `0,1,3`) or a coding file.
        #[arg(long)]
        coding: Option<String>,
        #[arg(long, default_value_t = 1)]
        n_from: usize,
        #[arg(long)]
        n_to: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a named verification.
    Verify {
        /// theorem1, ds-bounds, witness, sigma-tau, mirror-closure, dc-counts,
        /// prefix-suffix, tech-lemma, ivp-small, additive-recurrence, kernel,
        /// prop4, subword-recurrence, shift-scan, sandwich, coding-grid or all.
        check: String,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        k_max: Option<usize>,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long)]
        l_max: Option<usize>,
        #[arg(long)]
        e_max: Option<u32>,
        #[arg(long)]
        len: Option<usize>,
        #[arg(long, value_enum, default_value = "enumerated")]
        source: SourceKind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Intermediate value property of digit sums under a coding.
    Ivp {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        coding: String,
        #[arg(long, default_value_t = 3)]
        n_from: usize,
        #[arg(long, default_value_t = 300)]
        n_to: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// 2-kernel of the additive complexity of t.
    Kernel {
        #[arg(long, default_value_t = 6)]
        e_max: u32,
        #[arg(long, default_value_t = 256)]
        len: usize,
        #[arg(long, value_enum, default_value = "enumerated")]
        source: SourceKind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The maximal-digit-sum word W(n) and where it sits in t.
    Witness {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

const CHECKS: &[&str] = &[
    "theorem1",
    "ds-bounds",
    "witness",
    "sigma-tau",
    "mirror-closure",
    "dc-counts",
    "prefix-suffix",
    "tech-lemma",
    "ivp-small",
    "additive-recurrence",
    "kernel",
    "prop4",
    "subword-recurrence",
    "shift-scan",
    "sandwich",
    "coding-grid",
];

struct Ranges {
    n_max: Option<usize>,
    k_max: Option<usize>,
    max_len: Option<usize>,
    l_max: Option<usize>,
    e_max: Option<u32>,
    len: Option<usize>,
    source: Source,
}

fn with_cap(seq: FixedPointStream, cap: Option<usize>) -> FixedPointStream {
    match cap {
        Some(c) => seq.with_cap(c),
        None => seq,
    }
}

fn load_source(args: &SourceArgs, default: &str) -> Result<(FixedPointStream, Option<Coding>)> {
    let (morphism, mut seed, coding) = match &args.morphism {
        Some(path) => {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let spec = parse_morphism(&text).with_context(|| format!("in {}", path.display()))?;
            (spec.morphism, spec.seed, spec.coding)
        }
        None => (
            Morphism::preset(args.preset.as_deref().unwrap_or(default))?,
            0,
            None,
        ),
    };
    if let Some(name) = &args.seed {
        seed = morphism
            .alphabet()
            .index_of(name)
            .ok_or_else(|| anyhow!("seed {name:?} is not a letter of the alphabet"))?;
    }
    Ok((FixedPointStream::new(morphism, seed)?, coding))
}

fn load_coding(seq: &FixedPointStream, text: &str) -> Result<Coding> {
    let alphabet = seq.alphabet().clone();
    if Path::new(text).is_file() {
        let body = fs::read_to_string(text).with_context(|| format!("reading {text}"))?;
        Ok(Coding::parse_file(alphabet, &body).with_context(|| format!("in {text}"))?)
    } else {
        Ok(Coding::parse_inline(alphabet, text)?)
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            println!("{}", text.trim_end());
            Ok(())
        }
    }
}

fn run_check(name: &str, r: &Ranges, cap: Option<usize>) -> Result<Report> {
    let t = with_cap(FixedPointStream::tml(), cap);
    let w = with_cap(FixedPointStream::sigma3(), cap);
    let n = |default: usize| r.n_max.unwrap_or(default);
    let report = match name {
        "theorem1" => tml::verify_theorem1(&t, n(4096))?,
        "ds-bounds" => tml::verify_ds_bounds(&t, n(4096))?,
        "witness" => tml::verify_witness(&t, 1, n(4096))?,
        "sigma-tau" => tml::verify_sigma_tau_commutation(&t, r.max_len.unwrap_or(10))?,
        "mirror-closure" => tml::verify_mirror_closure(&t, r.max_len.unwrap_or(10))?,
        "dc-counts" => tml::verify_dc_counts(r.l_max.unwrap_or(24))?,
        "prefix-suffix" => tml::verify_prefix_suffix_lemma(r.k_max.unwrap_or(12))?,
        "tech-lemma" => tml::verify_tech_lemma(&t)?,
        "ivp-small" => tml::verify_ivp_small(&t, n(128))?,
        "additive-recurrence" => regularity::verify_additive_recurrence(&t, n(256))?,
        "kernel" => regularity::verify_kernel_affine(
            &t,
            r.source,
            r.e_max.unwrap_or(6),
            r.len.unwrap_or(256),
            4096,
        )?,
        "prop4" => verify_prop4(&w, n(300))?,
        "subword-recurrence" => tml::verify_subword_recurrence(&t, n(256))?,
        "shift-scan" => tml::verify_shift_scan(&t, n(64))?,
        "sandwich" => tml::verify_sandwich(&t, n(64))?,
        "coding-grid" => verify_coding_grid(&w, 5, 3, n(120))?,
        other => bail!(
            "unknown check {other:?}; expected one of {} or all",
            CHECKS.join(", ")
        ),
    };
    Ok(report)
}

fn run(cli: Cli) -> Result<bool> {
    let cap = cli.window_cap;
    match cli.command {
        Command::Generate {
            source,
            length,
            out,
        } => {
            let (seq, _) = load_source(&source, "tml")?;
            let seq = with_cap(seq, cap);
            let prefix = seq.prefix(length)?;
            emit(&out, &prefix.to_string())?;
            Ok(true)
        }
        Command::Complexity {
            source,
            coding,
            n_from,
            n_to,
            format,
            out,
        } => {
            let (seq, file_coding) = load_source(&source, "tml")?;
            let seq = with_cap(seq, cap);
            let coding = match (coding, file_coding) {
                (Some(text), _) => load_coding(&seq, &text)?,
                (None, Some(c)) => c,
                (None, None) => Coding::identity(seq.alphabet().clone())?,
            };
            let table = ComplexityTable::compute(&seq, &coding, n_from, n_to)?;
            let text = match format {
                Format::Csv => table.to_csv(),
                Format::Json => table.to_json(),
            };
            emit(&out, &text)?;
            Ok(table.rows.iter().all(|r| r.is_complete()))
        }
        Command::Verify {
            check,
            n_max,
            k_max,
            max_len,
            l_max,
            e_max,
            len,
            source,
            out,
        } => {
            let ranges = Ranges {
                n_max,
                k_max,
                max_len,
                l_max,
                e_max,
                len,
                source: source.into(),
            };
            if check == "all" {
                let mut reports = Vec::new();
                for name in CHECKS {
                    let report = run_check(name, &ranges, cap)?;
                    eprintln!(
                        "{:<20} {} ({} cases, {} ms)",
                        name,
                        if report.passed() { "pass" } else { "FAIL" },
                        report.tuples_checked,
                        report.elapsed_ms
                    );
                    reports.push(report);
                }
                emit(&out, &serde_json::to_string_pretty(&reports)?)?;
                Ok(reports.iter().all(Report::passed))
            } else {
                let report = run_check(&check, &ranges, cap)?;
                emit(&out, &report.to_json())?;
                Ok(report.passed())
            }
        }
        Command::Ivp {
            source,
            coding,
            n_from,
            n_to,
            out,
        } => {
            let (seq, _) = load_source(&source, "sigma3")?;
            let seq = with_cap(seq, cap);
            let coding = load_coding(&seq, &coding)?;
            let report = check_ivp(&seq, &coding, n_from, n_to)?;
            emit(&out, &report.to_json())?;
            Ok(true)
        }
        Command::Kernel {
            e_max,
            len,
            source,
            out,
        } => {
            let t = with_cap(FixedPointStream::tml(), cap);
            let analysis = regularity::analyze_kernel(&t, source.into(), e_max, len, 4096)?;
            let report = analysis.report;
            let body = json!({
                "distinct": analysis.distinct.iter().map(|el| json!({
                    "e": el.e,
                    "c": el.c,
                    "head": &el.values[..el.values.len().min(16)],
                })).collect::<Vec<_>>(),
                "report": report,
            });
            emit(&out, &serde_json::to_string_pretty(&body)?)?;
            Ok(report.passed())
        }
        Command::Witness { n, out } => {
            let t = with_cap(FixedPointStream::tml(), cap);
            let w = witness(n)?;
            let m = mirror(&tau(1, &w.whole)?);
            let body = json!({
                "n": w.n,
                "k": w.k,
                "bits": w.bits,
                "left": w.left.to_string(),
                "right": w.right.to_string(),
                "whole": w.whole.to_string(),
                "digit_sum": digit_sum(&w.whole, &tml::identity())?,
                "first_index": locate_in_t(&t, w.whole.symbols(), None)?,
                "mirror": m.to_string(),
                "mirror_digit_sum": digit_sum(&m, &tml::identity())?,
                "mirror_first_index": locate_in_t(&t, m.symbols(), None)?,
            });
            emit(&out, &serde_json::to_string_pretty(&body)?)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
