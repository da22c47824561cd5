use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use singquandle::alexander::{self, AlexanderParams};
use singquandle::coloring::{self, Fig8Side, Verdict};
use singquandle::diagram::{self, SingularDiagram};
use singquandle::enumeration::{self, MAX_ORDER};
use singquandle::format::{self, TableFile};
use singquandle::quandle;
use singquandle::tangle::{braid_closure, TangleWord};

#[derive(Parser)]
#[command(
    name = "singquandle",
    version,
    about = "Singquandle checker and coloring counts for singular links"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of a table file.
    Check {
        tables: PathBuf,
        /// Table entries and printed witnesses use 1..=n.
        #[arg(long)]
        one_indexed: bool,
    },
    /// Alexander structures over Z_n.
    Alexander {
        #[command(subcommand)]
        command: AlexanderCommand,
    },
    /// Count colorings of a diagram.
    Color(ColorArgs),
    /// Solve the two simplified conditions of the singular crossing followed by 2k+1 classical ones.
    Fig8System {
        k: u64,
        #[arg(value_enum)]
        side: Side,
        n: u64,
        #[arg(allow_hyphen_values = true)]
        t: i64,
        #[arg(allow_hyphen_values = true)]
        b: i64,
    },
    /// Find the first Alexander structure whose counts differ on two diagrams.
    Distinguish {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, default_value_t = 10)]
        alexander_max_n: u64,
    },
    /// Print a generated diagram.
    Gen {
        #[command(subcommand)]
        name: GenCommand,
    },
    /// Enumerate every singquandle of order n.
    Enumerate {
        n: usize,
        /// Also print one canonical representative per isomorphism class.
        #[arg(long)]
        up_to_iso: bool,
    },
}

#[derive(Subcommand)]
enum AlexanderCommand {
    /// Valid (t, b) pairs for Z_n.
    Find { n: u64 },
    /// Table file for the given parameters.
    Tables {
        n: u64,
        #[arg(allow_hyphen_values = true)]
        t: i64,
        #[arg(allow_hyphen_values = true)]
        b: i64,
    },
}

#[derive(Args)]
struct ColorArgs {
    diagram: PathBuf,
    /// Table file of the coloring structure.
    #[arg(required_unless_present = "alexander", conflicts_with = "alexander")]
    tables: Option<PathBuf>,
    /// Use the Alexander structure with parameters n t b.
    #[arg(long, num_args = 3, value_names = ["N", "T", "B"], allow_hyphen_values = true)]
    alexander: Option<Vec<i64>>,
    #[arg(long)]
    one_indexed: bool,
    /// Print the colorings, sorted.
    #[arg(long)]
    list: bool,
    #[arg(long, value_enum, default_value_t = BackendArg::Brute)]
    backend: BackendArg,
}

#[derive(Subcommand)]
enum GenCommand {
    #[command(name = "fig9-left")]
    Fig9Left,
    #[command(name = "fig9-right")]
    Fig9Right,
    /// Closure of a braid word such as `t1 s1 S2`.
    Braid {
        k: usize,
        #[arg(required = false, num_args = 0..)]
        letters: Vec<String>,
    },
    #[command(name = "fig8-left", hide = true)]
    Fig8Left,
    #[command(name = "fig8-right", hide = true)]
    Fig8Right,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BackendArg {
    Brute,
    Linear,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_diagram(path: &Path) -> Result<SingularDiagram> {
    diagram::parse_diagram(&read(path)?).with_context(|| path.display().to_string())
}

fn load_tables(path: &Path, one_indexed: bool) -> Result<TableFile> {
    format::parse_tables(&read(path)?, one_indexed).with_context(|| path.display().to_string())
}

fn params(n: u64, t: i64, b: i64) -> Result<AlexanderParams> {
    Ok(AlexanderParams::new(n, t, b)?)
}

fn run(cli: Cli, out: &mut String) -> Result<u8> {
    match cli.command {
        Command::Check {
            tables,
            one_indexed,
        } => {
            let offset = usize::from(one_indexed);
            let (report, extra) = match load_tables(&tables, one_indexed)? {
                TableFile::Singquandle(s) => (s.verify(), None),
                TableFile::Quandle(t) => {
                    let connected = quandle::is_connected(&t)
                        .ok()
                        .map(|c| format!("connected {}", if c { "yes" } else { "no" }));
                    (singquandle::axioms::check_quandle_axioms(&t), connected)
                }
            };
            write!(out, "{}", report.render(offset))?;
            if let Some(line) = extra {
                writeln!(out, "{line}")?;
            }
            let ok = report.all_pass();
            writeln!(out, "{}", if ok { "verified" } else { "not verified" })?;
            Ok(if ok { 0 } else { 1 })
        }
        Command::Alexander { command } => {
            match command {
                AlexanderCommand::Find { n } => {
                    if n == 0 {
                        bail!("n must be positive");
                    }
                    for p in alexander::find_params(n) {
                        writeln!(out, "{} {}", p.t, p.b)?;
                    }
                }
                AlexanderCommand::Tables { n, t, b } => {
                    let s = alexander::build_tables(&params(n, t, b)?)?;
                    write!(out, "{}", format::serialize_tables(&s))?;
                }
            }
            Ok(0)
        }
        Command::Color(args) => {
            let d = load_diagram(&args.diagram)?;
            let mut report = match (&args.alexander, &args.tables) {
                (Some(v), _) => {
                    let n = u64::try_from(v[0]).context("n must be positive")?;
                    let p = params(n, v[1], v[2])?;
                    match args.backend {
                        BackendArg::Linear if args.list => {
                            bail!("--list needs the brute backend")
                        }
                        BackendArg::Linear => coloring::count_colorings_linear(&d, &p),
                        BackendArg::Brute => {
                            let s = alexander::build_tables(&p)?;
                            coloring::count_colorings_bruteforce(&d, &s, args.list)
                        }
                    }
                }
                (None, Some(path)) => {
                    if args.backend == BackendArg::Linear {
                        bail!("the linear backend needs --alexander");
                    }
                    let s = match load_tables(path, args.one_indexed)? {
                        TableFile::Singquandle(s) => s,
                        TableFile::Quandle(_) => {
                            bail!("{}: r1 and r2 tables are required", path.display())
                        }
                    };
                    coloring::count_colorings_bruteforce(&d, &s, args.list)
                }
                (None, None) => unreachable!("clap requires tables or --alexander"),
            };
            if args.one_indexed {
                // listed colors follow the table file's labels
                if let Some(cs) = report.colorings.as_mut() {
                    cs.iter_mut().flatten().for_each(|c| *c += 1);
                }
            }
            write!(out, "{report}")?;
            Ok(0)
        }
        Command::Fig8System { k, side, n, t, b } => {
            if k == 0 {
                bail!("k must be positive");
            }
            let side = match side {
                Side::Left => Fig8Side::Left,
                Side::Right => Fig8Side::Right,
            };
            write!(
                out,
                "{}",
                coloring::fig8_system_count(k, side, &params(n, t, b)?)
            )?;
            Ok(0)
        }
        Command::Distinguish {
            first,
            second,
            alexander_max_n,
        } => {
            let (d1, d2) = (load_diagram(&first)?, load_diagram(&second)?);
            let family: Vec<AlexanderParams> = (2..=alexander_max_n)
                .flat_map(alexander::find_params)
                .collect();
            match coloring::distinguish(&d1, &d2, &family) {
                Verdict::Separated {
                    index,
                    first,
                    second,
                } => {
                    writeln!(out, "separator {}", family[index])?;
                    writeln!(out, "count {first}")?;
                    writeln!(out, "count {second}")?;
                    Ok(0)
                }
                Verdict::NotSeparated => {
                    writeln!(out, "not separated")?;
                    Ok(1)
                }
            }
        }
        Command::Gen { name } => {
            let d = match name {
                GenCommand::Fig9Left => diagram::fig9_left(),
                GenCommand::Fig9Right => diagram::fig9_right(),
                GenCommand::Braid { k, letters } => {
                    braid_closure(&TangleWord::parse(k, &letters.join(" "))?)
                }
                GenCommand::Fig8Left | GenCommand::Fig8Right => bail!(
                    "this diagram has no text encoding; use `fig8-system <k> <side> <n> <t> <b>`"
                ),
            };
            write!(out, "{}", diagram::serialize_diagram(&d))?;
            Ok(0)
        }
        Command::Enumerate { n, up_to_iso } => {
            if !(1..=MAX_ORDER).contains(&n) {
                bail!(format!("order must be between 1 and {MAX_ORDER}"));
            }
            write!(
                out,
                "{}",
                enumeration::enumerate_singquandles(n, up_to_iso)?
            )?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let code = match run(cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    };
    // a closed pipe downstream is not an error
    let _ = io::stdout().lock().write_all(out.as_bytes());
    ExitCode::from(code)
}
