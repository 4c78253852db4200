//! `evgeom`: build the point sets, run the verifiers, evaluate bounds and
//! export codes. Reports go to stdout, one JSON object per line with `--json`.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on usage,
//! I/O, parse or budget errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use evgeom::bounds::{bound, BoundKind};
use evgeom::codes::{export_check_matrix, min_distance, CheckMatrix};
use evgeom::constructions::{ConstructionSpec, Family};
use evgeom::geometry::io;
use evgeom::verify::{
    affine_check, completeness_check, hyperplane_spectrum, is_k_general, is_rs_set, is_transitive,
    seven_point_lemma, solid_cubic_lemma,
};
use evgeom::{Error, PointSet, VerificationReport, VerifyOptions};

#[derive(Parser, Debug)]
#[command(name = "evgeom", version, about = "Subspace-evasive point sets over finite fields")]
struct Cli {
    /// Maximum number of rank evaluations.
    #[arg(long, global = true, env = "EVGEOM_BUDGET", value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,

    /// Worker threads (default: available parallelism).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,

    /// Count every violation instead of stopping at the first.
    #[arg(long, global = true)]
    census: bool,

    /// Emit reports as JSON lines.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a point set and write it to a file.
    Construct {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        out: PathBuf,
        /// Index of the irreducible polynomial defining the ambient field.
        #[arg(long, default_value_t = 0)]
        modulus_index: usize,
        /// Drop the group generators from the output.
        #[arg(long)]
        no_group: bool,
    },
    /// Run a verifier.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Evaluate an upper bound.
    Bounds {
        #[arg(long)]
        kind: BoundKind,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: u64,
    },
    /// Parity-check matrices and minimum distance.
    #[command(subcommand)]
    Code(CodeCommand),
}

#[derive(Args, Debug)]
struct Input {
    /// Point set file.
    #[arg(long = "in")]
    input: PathBuf,
    /// Ignore attached group generators.
    #[arg(long)]
    no_reduction: bool,
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// Every k points are linearly independent.
    General {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        input: Input,
    },
    /// The three (r, s)-set conditions.
    Rs {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Histogram of hyperplane intersection sizes.
    Spectrum {
        /// Comma-separated list of admissible sizes; fail on any other.
        #[arg(long, value_delimiter = ',')]
        allowed: Option<Vec<usize>>,
        #[command(flatten)]
        input: Input,
    },
    /// Five points of the ovoid in a solid lie on a twisted cubic.
    CubicLemma {
        #[arg(long)]
        q: u64,
    },
    /// Seven points of the ovoid in a 4-space include four on a twisted cubic.
    SevenLemma {
        #[arg(long)]
        q: u64,
    },
    /// The attached group is transitive on the set.
    Transitive {
        #[command(flatten)]
        input: Input,
    },
    /// Points whose addition keeps condition (i) of an (r, s)-set.
    Complete {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Some hyperplane misses the set.
    Affine {
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Subcommand, Debug)]
enum CodeCommand {
    /// Write the parity-check matrix of a point set.
    Export {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Minimum distance of the code with the given parity-check matrix.
    Mindist {
        /// Matrix file.
        #[arg(long = "in")]
        input: PathBuf,
    },
}

struct Output {
    json: bool,
}

impl Output {
    fn report(&self, rep: &VerificationReport) {
        if self.json {
            println!("{}", serde_json::to_string(rep).expect("reports serialize"));
            return;
        }
        let verdict = if rep.passed { "PASS" } else { "FAIL" };
        let counts: Vec<String> = rep.counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
        println!("{verdict} {} work={} reduction={:?} {}", rep.check, rep.work, rep.reduction, counts.join(" "));
        for sub in &rep.subchecks {
            let v = if sub.passed { "PASS" } else { "FAIL" };
            println!("  {v} {} work={}", sub.check, sub.work);
        }
        if let Some(w) = &rep.witness {
            println!("  witness {w:?}");
        }
        if let Some(e) = &rep.example {
            println!("  example {e:?}");
        }
        for p in &rep.points {
            println!("  point {p:?}");
        }
    }

    fn value(&self, v: serde_json::Value, human: String) {
        if self.json {
            println!("{v}");
        } else {
            println!("{human}");
        }
    }
}

fn load_set(input: &Input) -> Result<PointSet, Error> {
    io::read_point_set(&io::load(&input.input)?)
}

fn verify(cmd: VerifyCommand, opts: VerifyOptions, out: &Output) -> Result<bool, Error> {
    let with = |input: &Input| opts.clone().use_group(!input.no_reduction);
    let rep = match cmd {
        VerifyCommand::General { k, input } => is_k_general(&load_set(&input)?, k, &with(&input))?,
        VerifyCommand::Rs { r, s, input } => is_rs_set(&load_set(&input)?, r, s, &with(&input))?,
        VerifyCommand::Spectrum { allowed, input } => {
            hyperplane_spectrum(&load_set(&input)?, allowed.as_deref(), &with(&input))?
        }
        VerifyCommand::CubicLemma { q } => solid_cubic_lemma(q, &opts)?,
        VerifyCommand::SevenLemma { q } => seven_point_lemma(q, &opts)?,
        VerifyCommand::Transitive { input } => is_transitive(&load_set(&input)?)?,
        VerifyCommand::Complete { r, s, input } => completeness_check(&load_set(&input)?, r, s, &with(&input))?,
        VerifyCommand::Affine { input } => affine_check(&load_set(&input)?, &with(&input))?,
    };
    out.report(&rep);
    Ok(rep.passed)
}

fn run(cli: Cli) -> Result<bool, Error> {
    let mut opts = VerifyOptions::default().census(cli.census);
    if let Some(b) = cli.budget {
        opts = opts.with_budget(b);
    }
    let out = Output { json: cli.json };
    match cli.command {
        Command::Construct { family, q, out: path, modulus_index, no_group } => {
            let spec = ConstructionSpec::new(family, q)?.modulus_index(modulus_index).with_group(!no_group);
            for w in spec.warnings() {
                eprintln!("warning: {w}");
            }
            let set = spec.build()?;
            io::save(&path, &io::write_point_set(&set))?;
            out.value(
                serde_json::json!({
                    "family": family.name(),
                    "q": q,
                    "ambient_dim": set.ambient_dim(),
                    "size": set.len(),
                    "generators": set.generators().len(),
                    "out": path.display().to_string(),
                }),
                format!("{family} q={q}: {} points in PG({}, {q}) -> {}", set.len(), set.ambient_dim(), path.display()),
            );
            Ok(true)
        }
        Command::Verify(cmd) => verify(cmd, opts, &out),
        Command::Bounds { kind, n, q } => {
            let b = bound(kind, n, q)?;
            out.value(
                serde_json::to_value(&b).expect("bounds serialize"),
                format!("{} = {} (floor of {:.6})", b.exact_expression, b.value, b.exact),
            );
            Ok(true)
        }
        Command::Code(CodeCommand::Export { input, out: path }) => {
            let set = io::read_point_set(&io::load(&input)?)?;
            let h = export_check_matrix(&set)?;
            io::save(&path, &io::write_matrix(h.field(), h.matrix()))?;
            out.value(
                serde_json::json!({
                    "q": h.field().q(),
                    "rows": h.matrix().rows(),
                    "cols": h.length(),
                    "dimension": h.dimension(),
                    "out": path.display().to_string(),
                }),
                format!("{}x{} check matrix of a code of dimension {} -> {}", h.matrix().rows(), h.length(), h.dimension(), path.display()),
            );
            Ok(true)
        }
        Command::Code(CodeCommand::Mindist { input }) => {
            let (f, m) = io::read_matrix(&io::load(&input)?)?;
            let h = CheckMatrix::new(f, m)?;
            let d = min_distance(&h, &opts)?;
            out.value(
                serde_json::json!({
                    "q": h.field().q(),
                    "length": h.length(),
                    "dimension": h.dimension(),
                    "min_distance": d,
                }),
                format!("[{}, {}, {}]_{} code", h.length(), h.dimension(), d, h.field().q()),
            );
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t as usize).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
