use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use booklink::dt::dt_code;
use booklink::identify::identify;
use booklink::invariant::jones_by_slices;
use booklink::moves::{self, Routing, Strategy};
use booklink::sample::{random_knot, SampleParams};
use booklink::spectrum::{check_spectrum, composite_combine, parse_raw, split_combine, Spectrum};
use booklink::table::{self, default_data_dir, Format};
use booklink::trace::{backward_arcs, trace_components};
use booklink::word::{parse_word, BooklinkWord};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(
    name = "booklink",
    version,
    about = "Booklink words, invariants and bridge-braid spectra"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a word file.
    Validate { file: PathBuf },
    /// Print bridge index, braid count and component count.
    Invariants { file: PathBuf },
    /// Name the knot by its Jones polynomial, up to mirror image.
    Identify {
        file: PathBuf,
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Print the Jones polynomial.
    Jones { file: PathBuf },
    /// Print the canonical Dowker-Thistlethwaite code.
    Dt { file: PathBuf },
    #[command(subcommand)]
    Spectrum(SpectrumCommand),
    /// Apply one move and print the resulting word.
    Move {
        #[command(subcommand)]
        name: MoveCommand,
    },
    /// Resolve every bridge and print the braid word.
    ToBraid {
        file: PathBuf,
        /// Search all resolution orders, up to this many resolutions.
        #[arg(long, value_name = "N")]
        exhaustive: Option<usize>,
    },
    #[command(subcommand)]
    Table(TableCommand),
    /// Check on random knots that moves preserve the Jones polynomial.
    Check {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

#[derive(Subcommand)]
enum SpectrumCommand {
    /// Spectrum of a split union.
    Split { s1: String, s2: String },
    /// Spectrum of a connected sum.
    Compose { s1: String, s2: String },
    /// Report every rule a spectrum breaks.
    Check { s: String },
}

#[derive(Subcommand)]
enum MoveCommand {
    AddCriticalPair {
        file: PathBuf,
        slice: usize,
        position: usize,
    },
    CancelCriticalPair {
        file: PathBuf,
        index: usize,
    },
    Stabilize {
        file: PathBuf,
    },
    Destabilize {
        file: PathBuf,
    },
    Exchange {
        file: PathBuf,
        site: usize,
    },
    ResolveBridge {
        file: PathBuf,
        #[arg(default_value_t = 0)]
        arc: usize,
        #[arg(long, value_enum, default_value_t = RoutingArg::Innermost)]
        routing: RoutingArg,
    },
    PlatFreeStrand {
        file: PathBuf,
    },
    Trade {
        file: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RoutingArg {
    Innermost,
    Outermost,
}

#[derive(Subcommand)]
enum TableCommand {
    /// Rebuild the spectrum table from the knot data and witness words.
    Regenerate {
        #[arg(long)]
        knots: Option<PathBuf>,
        #[arg(long)]
        witnesses: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Markdown)]
        format: FormatArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Markdown,
    Csv,
}

type Outcome = Result<String, String>;

fn read_word(path: &Path) -> Result<BooklinkWord, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_word(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_spectrum(s: &str) -> Result<Spectrum, String> {
    s.parse::<Spectrum>().map_err(|e| format!("{s}: {e}"))
}

fn words(w: BooklinkWord) -> Outcome {
    Ok(w.serialize())
}

fn run_move(m: MoveCommand) -> Outcome {
    let err = |e: moves::MoveError| e.to_string();
    match m {
        MoveCommand::AddCriticalPair {
            file,
            slice,
            position,
        } => words(moves::add_critical_pair(&read_word(&file)?, slice, position).map_err(err)?),
        MoveCommand::CancelCriticalPair { file, index } => {
            words(moves::cancel_critical_pair(&read_word(&file)?, index).map_err(err)?)
        }
        MoveCommand::Stabilize { file } => {
            words(moves::stabilize(&read_word(&file)?).map_err(err)?)
        }
        MoveCommand::Destabilize { file } => {
            words(moves::destabilize(&read_word(&file)?).map_err(err)?)
        }
        MoveCommand::Exchange { file, site } => {
            words(moves::exchange_move(&read_word(&file)?, site).map_err(err)?)
        }
        MoveCommand::ResolveBridge { file, arc, routing } => {
            let routing = match routing {
                RoutingArg::Innermost => Routing::Innermost,
                RoutingArg::Outermost => Routing::Outermost,
            };
            words(moves::resolve_bridge(&read_word(&file)?, arc, routing).map_err(err)?)
        }
        MoveCommand::PlatFreeStrand { file } => {
            words(moves::plat_free_strand_resolve(&read_word(&file)?).map_err(err)?)
        }
        MoveCommand::Trade { file } => {
            words(moves::trade_braid_for_bridge(&read_word(&file)?).map_err(err)?)
        }
    }
}

fn regenerate(
    knots: Option<PathBuf>,
    witnesses: Option<PathBuf>,
    out: Option<PathBuf>,
    format: FormatArg,
) -> Outcome {
    let data = default_data_dir();
    let knots = knots.unwrap_or_else(|| data.join("knots.csv"));
    let witnesses = witnesses.unwrap_or_else(|| data.join("witnesses"));
    let records = table::load_knot_data(&knots).map_err(|e| e.to_string())?;
    let entries = table::load_witnesses(&witnesses).map_err(|e| e.to_string())?;
    let results = table::regenerate_rows(&records, &entries);
    let total = results.len();
    let mut doc = table::TableDocument::default();
    let mut failures = Vec::new();
    for r in results {
        match r {
            Ok(row) => doc.rows.push(row),
            Err(e) => failures.push(e.to_string()),
        }
    }
    let format = match format {
        FormatArg::Markdown => Format::Markdown,
        FormatArg::Csv => Format::Csv,
    };
    let text = table::emit(&doc, format);
    let summary = format!("{}/{} rows match", doc.rows.len(), total);
    match out {
        Some(path) => fs::write(&path, &text).map_err(|e| format!("{}: {e}", path.display()))?,
        None => print!("{text}"),
    }
    if failures.is_empty() && total == table::KNOT_COUNT {
        Ok(summary)
    } else {
        failures.push(summary);
        Err(failures.join("\n"))
    }
}

/// Every move applied to `count` random knots, compared by Jones polynomial.
fn check(seed: u64, count: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = SampleParams {
        max_width: 4,
        length: 8,
    };
    let mut failures = Vec::new();
    for _ in 0..count {
        let w = random_knot(&mut rng, params);
        let v = jones_by_slices(&w);
        let mut images = vec![("stabilize", moves::stabilize(&w))];
        images.push(("add-critical-pair", moves::add_critical_pair(&w, 0, 1)));
        images.push(("trade", moves::trade_braid_for_bridge(&w)));
        for a in 0..backward_arcs(&w).len() {
            for r in [Routing::Innermost, Routing::Outermost] {
                images.push(("resolve-bridge", moves::resolve_bridge(&w, a, r)));
            }
        }
        for (name, image) in images {
            if let Ok(u) = image {
                if jones_by_slices(&u) != v {
                    failures.push(format!(
                        "{name} changed Jones on {}",
                        w.serialize().replace('\n', " ")
                    ));
                }
            }
        }
    }
    if failures.is_empty() {
        Ok(format!(
            "{count} random knots: every move preserved Jones (seed {seed})"
        ))
    } else {
        Err(failures.join("\n"))
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Validate { file } => {
            let w = read_word(&file)?;
            Ok(format!(
                "valid: {} generators, seam {}",
                w.len(),
                w.seam_strands()
            ))
        }
        Command::Invariants { file } => {
            let w = read_word(&file)?;
            Ok(format!(
                "d={} n={} components={}",
                w.bridge_index(),
                w.braid_count(),
                trace_components(&w)
            ))
        }
        Command::Identify { file, table } => {
            let w = read_word(&file)?;
            let path = table.unwrap_or_else(|| default_data_dir().join("knots.csv"));
            let records = table::load_knot_data(&path).map_err(|e| e.to_string())?;
            let id = identify(&w, &records).map_err(|e| e.to_string())?;
            let names = id.candidates.join(" ");
            Ok(if id.is_unique() {
                names
            } else {
                format!("{names} (ambiguous)")
            })
        }
        Command::Jones { file } => Ok(jones_by_slices(&read_word(&file)?).render("t", 4)),
        Command::Dt { file } => dt_code(&read_word(&file)?)
            .map(|c| c.to_string())
            .map_err(|e| e.to_string()),
        Command::Spectrum(SpectrumCommand::Split { s1, s2 }) => {
            Ok(split_combine(&read_spectrum(&s1)?, &read_spectrum(&s2)?).to_string())
        }
        Command::Spectrum(SpectrumCommand::Compose { s1, s2 }) => {
            Ok(composite_combine(&read_spectrum(&s1)?, &read_spectrum(&s2)?).to_string())
        }
        Command::Spectrum(SpectrumCommand::Check { s }) => {
            let raw = parse_raw(&s).map_err(|e| e.to_string())?;
            let errs = check_spectrum(&raw);
            if errs.is_empty() {
                Ok(format!(
                    "{} ok",
                    Spectrum::new(&raw).map_err(|e| e.to_string())?
                ))
            } else {
                Err(errs
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join("\n"))
            }
        }
        Command::Move { name } => run_move(name),
        Command::ToBraid { file, exhaustive } => {
            let strategy = exhaustive.map_or(Strategy::Greedy, Strategy::Exhaustive);
            words(moves::to_braid(&read_word(&file)?, strategy).map_err(|e| e.to_string())?)
        }
        Command::Table(TableCommand::Regenerate {
            knots,
            witnesses,
            out,
            format,
        }) => regenerate(knots, witnesses, out, format),
        Command::Check { seed, count } => check(seed, count),
    }
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors.
    match run(Cli::parse()) {
        Ok(text) => {
            println!("{}", text.trim_end());
            ExitCode::SUCCESS
        }
        Err(text) => {
            eprintln!("{text}");
            ExitCode::from(1)
        }
    }
}
