//! `qo`: surfaces, chord diagrams and the modular envelope of cyclic orders
//! from the command line.

use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qo_core::canonical::{all_canonical_diagrams, canonical_diagram};
use qo_core::enumerate::genus_distribution_with;
use qo_core::envelope::checks::{
    check_axioms, check_envelope, Budget, CheckReport, EnvelopeBounds,
};
use qo_core::envelope::samples::{PointSamples, SurfaceSamples};
use qo_core::envelope::{QoTarget, Terminal};
use qo_core::rewrite::{equivalent, find_certificate_with};
use qo_core::text::{parse_diagram, parse_renaming, parse_surface};
use qo_core::{ChordDiagram, Error, Execution, Label, Mutation, Surface};

#[derive(Parser)]
#[command(
    name = "qo",
    version,
    about = "Surfaces as the modular envelope of cyclic orders"
)]
struct Cli {
    /// Run checks and searches on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a chord diagram to a surface.
    Eval {
        /// Diagram text, or `-` for stdin.
        diagram: String,
        #[arg(long)]
        json: bool,
    },
    /// Print the canonical chord diagram of a surface.
    Canon {
        surface: String,
        /// Print every canonical expression.
        #[arg(long)]
        all: bool,
    },
    /// Glue `a` on the first surface to `b` on the second.
    Compose {
        s1: String,
        a: String,
        s2: String,
        b: String,
        #[arg(long)]
        json: bool,
    },
    /// Self-glue `a` and `b` on one surface.
    Glue {
        surface: String,
        a: String,
        b: String,
        #[arg(long)]
        json: bool,
    },
    /// Rename labels with a map `a=x,b=y`; unmentioned labels are kept.
    Rename {
        surface: String,
        map: String,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether two diagrams evaluate to the same surface.
    Equal {
        d1: String,
        d2: String,
        /// Search for a sequence of moves from the first to the second.
        #[arg(long)]
        certificate: bool,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Check the modular operad axioms on a target.
    CheckAxioms {
        #[arg(long, value_enum, default_value_t = TargetArg::Qo)]
        target: TargetArg,
        #[arg(long, default_value_t = 3)]
        max_labels: usize,
        #[arg(long, default_value_t = 1)]
        max_g: u32,
        /// Most boundary cycles of a sample surface (default: max-labels).
        #[arg(long)]
        max_b: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        random: usize,
        /// Check a deliberately wrong variant of the qo rules.
        #[arg(long, value_enum)]
        mutation: Option<MutationArg>,
        #[arg(long)]
        json: bool,
    },
    /// Check the universal property of the envelope on a finite family.
    CheckEnvelope {
        #[arg(long, default_value_t = 3)]
        max_labels: usize,
        #[arg(long, default_value_t = 1)]
        max_g: u32,
        #[arg(long)]
        max_b: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long)]
        json: bool,
    },
    /// Genus distribution over all matchings of N chords on a circle.
    HzTable {
        #[arg(long)]
        chords: usize,
        #[arg(long)]
        json: bool,
    },
    /// Render a diagram as graph text.
    Render {
        diagram: String,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Qo,
    Terminal,
}

#[derive(Clone, Copy, ValueEnum)]
enum MutationArg {
    MergeGenusDropped,
    SplitBlocksSwapped,
    ComposeGenusDropped,
    SplitBlockReversed,
}

impl From<MutationArg> for Mutation {
    fn from(m: MutationArg) -> Self {
        match m {
            MutationArg::MergeGenusDropped => Mutation::MergeGenusDropped,
            MutationArg::SplitBlocksSwapped => Mutation::SplitBlocksSwapped,
            MutationArg::ComposeGenusDropped => Mutation::ComposeGenusDropped,
            MutationArg::SplitBlockReversed => Mutation::SplitBlockReversed,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
}

enum Failure {
    Usage(String),
    Parse(String),
    Precondition(String),
    Check,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) | Failure::Parse(_) => 1,
            Failure::Precondition(_) => 2,
            Failure::Check => 3,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_parse() {
            Failure::Parse(e.to_string())
        } else {
            Failure::Precondition(e.to_string())
        }
    }
}

fn input(arg: &str) -> Result<String, Failure> {
    if arg != "-" {
        return Ok(arg.to_string());
    }
    let mut s = String::new();
    std::io::stdin()
        .read_to_string(&mut s)
        .map_err(|e| Failure::Usage(format!("cannot read stdin: {e}")))?;
    Ok(s)
}

fn surface(arg: &str) -> Result<Surface, Failure> {
    Ok(parse_surface(&input(arg)?)?)
}

fn diagram(arg: &str) -> Result<ChordDiagram, Failure> {
    Ok(parse_diagram(&input(arg)?)?)
}

fn label(arg: &str) -> Result<Label, Failure> {
    Label::new(arg).map_err(|e| Failure::Parse(e.to_string()))
}

fn print_surface(q: &Surface, json: bool) {
    if json {
        println!("{}", serde_json::to_string(q).expect("surfaces serialize"));
    } else {
        println!("{q}");
    }
}

fn print_report(report: &CheckReport, json: bool) -> Result<(), Failure> {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(report).expect("reports serialize")
        );
    } else {
        println!("{report}");
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    match cli.command {
        Command::Eval { diagram: d, json } => print_surface(&diagram(&d)?.evaluate(), json),
        Command::Canon { surface: s, all } => {
            let q = surface(&s)?;
            if all {
                let exprs = all_canonical_diagrams(&q);
                for (i, e) in exprs.iter().enumerate() {
                    if i > 0 {
                        println!();
                    }
                    println!("{e}");
                }
            } else {
                println!("{}", canonical_diagram(&q));
            }
        }
        Command::Compose { s1, a, s2, b, json } => {
            let (q, r) = (surface(&s1)?, surface(&s2)?);
            print_surface(&q.compose(&label(&a)?, &r, &label(&b)?)?, json);
        }
        Command::Glue {
            surface: s,
            a,
            b,
            json,
        } => {
            let q = surface(&s)?;
            print_surface(&q.self_glue(&label(&a)?, &label(&b)?)?, json);
        }
        Command::Rename {
            surface: s,
            map,
            json,
        } => {
            let q = surface(&s)?;
            let rho = parse_renaming(&map)?.extended_by_identity(&q.labels())?;
            print_surface(&q.rename(&rho)?, json);
        }
        Command::Equal {
            d1,
            d2,
            certificate,
            depth,
        } => {
            let (x, y) = (diagram(&d1)?, diagram(&d2)?);
            let same = equivalent(&x, &y);
            println!("{}", if same { "equivalent" } else { "not equivalent" });
            println!("left:  {}", x.evaluate());
            println!("right: {}", y.evaluate());
            if certificate {
                match find_certificate_with(&x, &y, depth, exec) {
                    Some(moves) => {
                        println!("certificate: {} moves", moves.len());
                        for m in moves {
                            println!("  {m}");
                        }
                    }
                    None => println!("certificate: none within depth {depth}"),
                }
            }
        }
        Command::CheckAxioms {
            target,
            max_labels,
            max_g,
            max_b,
            seed,
            random,
            mutation,
            json,
        } => {
            let budget = Budget {
                max_labels,
                random,
                seed,
                exec,
                ..Budget::default()
            };
            let report = match target {
                TargetArg::Qo => {
                    let t = match mutation {
                        Some(m) => QoTarget::mutated(m.into()),
                        None => QoTarget::standard(),
                    };
                    let samples =
                        SurfaceSamples::new(max_g).with_boundaries(max_b.unwrap_or(max_labels));
                    check_axioms(&t, &samples, &budget)
                }
                TargetArg::Terminal => {
                    if mutation.is_some() {
                        return Err(Failure::Usage(
                            "--mutation applies to the qo target only".into(),
                        ));
                    }
                    // points of grade up to that of the largest sample surface
                    let max_grade = 2 * max_g + max_b.unwrap_or(max_labels).max(1) as u32 - 1;
                    check_axioms(&Terminal, &PointSamples { max_grade }, &budget)
                }
            };
            print_report(&report, json)?;
        }
        Command::CheckEnvelope {
            max_labels,
            max_g,
            max_b,
            seed,
            random,
            json,
        } => {
            let bounds = EnvelopeBounds {
                max_labels,
                max_genus: max_g,
                max_boundaries: max_b.unwrap_or(max_labels).max(1),
            };
            let budget = Budget {
                max_labels,
                random,
                seed,
                exec,
                ..Budget::default()
            };
            print_report(&check_envelope(bounds, &budget), json)?;
        }
        Command::HzTable { chords, json } => {
            let table = genus_distribution_with(chords, exec);
            if json {
                println!(
                    "{}",
                    serde_json::to_string(&table).expect("tables serialize")
                );
            } else {
                println!("{table}");
            }
        }
        Command::Render { diagram: d, format } => match format {
            Format::Dot => print!("{}", diagram(&d)?.render_dot()),
        },
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Usage(m) => eprintln!("usage error: {m}"),
                Failure::Parse(m) => eprintln!("error: {m}"),
                Failure::Precondition(m) => eprintln!("error: {m}"),
                Failure::Check => eprintln!("check failed"),
            }
            ExitCode::from(f.code())
        }
    }
}
