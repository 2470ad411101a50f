mod commands;
mod error;
mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::commands::Outcome;

/// Surgery and classification tools for face-word 2-complexes.
#[derive(Parser, Debug)]
#[command(name = "cxs", version)]
struct Cli {
    /// Print reports as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Print emitted complexes in canonical form.
    #[arg(long, global = true)]
    canonical: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct ComplexArg {
    /// Complex file (`[[1,2,3],...]`); `v23`, `xprime`, `xpp` and `w158` name
    /// the shipped complexes when no such file exists.
    file: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Links of all vertices in graph text format.
    Links(ComplexArg),
    /// Check every interior link against a type.
    CheckType {
        #[command(flatten)]
        complex: ComplexArg,
        /// rank74, A2q2, rank158 or fake74.
        #[arg(long = "type")]
        type_name: String,
        /// Also require every allowed link to occur.
        #[arg(long)]
        strict: bool,
    },
    /// Girth of interior links is at least 6.
    Curvature(ComplexArg),
    /// Cellular homology.
    Homology {
        #[command(flatten)]
        complex: ComplexArg,
        /// Z, Q or Z/p.
        #[arg(long, default_value = "Z")]
        coefficients: String,
    },
    /// Euler characteristic and cell counts.
    Euler(ComplexArg),
    /// Connected double covers, one per isomorphism class.
    Covers {
        #[command(flatten)]
        complex: ComplexArg,
        /// Write `cover_<i>.cplx` and the map `cover_<i>.map` here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Check that an edge map is a double covering.
    VerifyCover {
        cover: PathBuf,
        base: PathBuf,
        /// Lines `x -> y` from cover edges to base edges.
        #[arg(long)]
        map: PathBuf,
    },
    /// Find a free involution (a deck transformation).
    Involution(ComplexArg),
    /// The collar between the two vertices of a two-vertex complex.
    Collar(ComplexArg),
    /// Collar predicates and the H-collar certificate.
    Predicates(ComplexArg),
    /// Rewrite single letters of face words.
    SurgeryFlip {
        #[command(flatten)]
        complex: ComplexArg,
        /// `face:position:edge`, with a signed edge label; repeatable.
        #[arg(long = "replace", required = true)]
        replacements: Vec<String>,
    },
    /// Glue two cobordism files.
    Compose {
        first: PathBuf,
        second: PathBuf,
        /// Explicit collar matching, lines `x -> y`.
        #[arg(long)]
        matching: Option<PathBuf>,
        /// Fail unless the matching is unique.
        #[arg(long)]
        unique: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Split a two-vertex complex along its collar into two fillings.
    Split {
        #[command(flatten)]
        complex: ComplexArg,
        /// Write `left.toml` and `right.toml` here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Assemble the complex of a word in the two blocks.
    Omega {
        /// Comma-separated letters `3/2` and `2`.
        #[arg(long)]
        seq: String,
        #[arg(long, default_value = "segment")]
        shape: String,
        #[arg(long, default_value_t = 0)]
        base: usize,
    },
    /// Group all words of a length by pointed isomorphism.
    Fibers {
        /// Last index of a segment, or the length of a circle.
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "segment")]
        shape: String,
    },
    /// Find an isomorphism between two complexes.
    Iso {
        first: PathBuf,
        second: PathBuf,
        /// Basepoints `x,y` to be matched.
        #[arg(long)]
        pointed: Option<String>,
    },
    /// Classify the non-filling cobordisms of rank 7/4.
    ClassifySt {
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Nerves of minimal thick collars.
    StEnum {
        /// Also list the excluded graphs on two and three vertices.
        #[arg(long)]
        raw: bool,
    },
    /// Boundary weights of the model geometries and the weight equation.
    Weights(ComplexArg),
    /// The graph of vertices joined by edges.
    BaseGraph(ComplexArg),
    /// Raw presentation of the model group at a vertex.
    ModelGroup {
        #[command(flatten)]
        complex: ComplexArg,
        #[arg(long, default_value_t = 0)]
        vertex: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let opts = commands::Options {
        canonical: cli.canonical,
    };
    match commands::run(cli.command, opts) {
        Ok(outcome) => {
            emit(&outcome, cli.json);
            ExitCode::from(if outcome.ok { 0 } else { 2 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn emit(outcome: &Outcome, json: bool) {
    let mut out = std::io::stdout().lock();
    let text = if json {
        serde_json::to_string_pretty(&outcome.json).expect("json values serialize")
    } else {
        outcome.text.trim_end().to_string()
    };
    let _ = writeln!(out, "{text}");
}
