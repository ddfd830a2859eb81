//! `stickbound`: build, check and tabulate polygonal knots from arc
//! presentations.
//!
//! Exit codes: 0 success, 1 invalid input, 2 verification failure,
//! 3 invariant mismatch.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use stickbound::arcpres::{self, random_presentation};
use stickbound::bounds::bound_report;
use stickbound::construct::{
    build_full_with, format_obj, parse_polygon_json, rational_string, stick_bound, BuildOptions,
    PolygonJson, DEFAULT_MAX_EXTENSION,
};
use stickbound::invariants::{project, KnotInvariants};
use stickbound::{ArcPresentation, Error, Rational};

const MAX_L_VAR: &str = "STICKBOUND_MAX_L";

#[derive(Parser)]
#[command(
    name = "stickbound",
    version,
    about = "Polygonal knots with few sticks from arc presentations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a reduced polygon from an .arc file and print it as JSON.
    Build {
        input: PathBuf,
        /// Write the JSON here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the polygon as a Wavefront OBJ polyline.
        #[arg(long)]
        obj: Option<PathBuf>,
        /// Stop before the final move around the top chord.
        #[arg(long)]
        no_top_reduction: bool,
    },
    /// Re-check a stored polygon against its presentation.
    Verify { arc: PathBuf, polygon: PathBuf },
    /// Remove top chords by destabilization while possible.
    Simplify {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write random presentations, one .arc file each.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Build every input (.arc files or directories of them) into a CSV.
    Batch {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        no_top_reduction: bool,
    },
    /// Tabulate stick-number and arc-index bounds by crossing number.
    Bounds {
        #[arg(long, default_value_t = 3)]
        cmin: u64,
        #[arg(long, default_value_t = 20)]
        cmax: u64,
        #[arg(long)]
        nonalternating_prime: bool,
    },
}

/// A failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    fn verification(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn mismatch(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Verification(_) => Failure::verification(e.to_string()),
            _ => Failure::invalid(e.to_string()),
        }
    }
}

type CliResult<T = ()> = Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> CliResult {
    fs::write(path, text).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> CliResult {
    match out {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_arc(path: &Path) -> CliResult<ArcPresentation> {
    arcpres::parse(&read(path)?).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

/// Seed recorded by `random` in a `# seed: N` comment.
fn recorded_seed(text: &str) -> Option<u64> {
    text.lines()
        .filter_map(|l| l.trim().strip_prefix('#'))
        .find_map(|c| {
            c.trim()
                .strip_prefix("seed:")
                .and_then(|s| s.trim().parse().ok())
        })
}

fn build_options(no_top_reduction: bool) -> CliResult<BuildOptions> {
    let max_extension = match std::env::var(MAX_L_VAR) {
        Ok(v) => v.trim().parse::<u64>().map_err(|_| {
            Failure::invalid(format!("{MAX_L_VAR} must be a positive integer, got {v:?}"))
        })?,
        Err(_) => DEFAULT_MAX_EXTENSION,
    };
    Ok(BuildOptions {
        top_reduction: !no_top_reduction,
        max_extension,
    })
}

fn cmd_build(
    input: &Path,
    out: Option<&Path>,
    obj: Option<&Path>,
    no_top_reduction: bool,
) -> CliResult {
    let ap = read_arc(input)?;
    let (knot, cert) = build_full_with(&ap, &build_options(no_top_reduction)?)?;
    emit(out, &PolygonJson::new(&knot, &cert)?.to_json())?;
    if let Some(p) = obj {
        write(p, &format_obj(&knot))?;
    }
    eprintln!("{cert}");
    if !cert.invariants_match {
        return Err(Failure::mismatch("invariants of input and output differ"));
    }
    Ok(())
}

fn cmd_verify(arc: &Path, polygon: &Path) -> CliResult {
    let ap = read_arc(arc)?;
    ap.validate()
        .map_err(|v| Failure::invalid(format!("invalid presentation: {v:?}")))?;
    let stored = parse_polygon_json(&read(polygon)?)?;
    let knot = stored.knot()?;

    let embedded = knot.embedded()?;
    if !embedded.is_embedded() {
        return Err(Failure::verification(format!(
            "stored polygon is not embedded: {embedded}"
        )));
    }
    let input = KnotInvariants::of(&ap.diagram()?)?;
    let output = KnotInvariants::of(&project(&knot.vertices)?.diagram)?;
    if !input.consistent_with(&output) {
        return Err(Failure::mismatch(format!(
            "invariants differ: det {} vs {}, Alexander {} vs {}",
            input.determinant, output.determinant, input.alexander, output.alexander
        )));
    }
    let sticks = knot.stick_count();
    if sticks != stored.sticks {
        return Err(Failure::verification(format!(
            "stored stick count {} but polygon has {sticks}",
            stored.sticks
        )));
    }
    let bound = stick_bound(ap.n());
    let satisfied = Rational::from_integer(sticks.into()) <= bound;
    if satisfied != stored.bound_satisfied {
        return Err(Failure::verification(format!(
            "stored bound verdict {} but {sticks} sticks against bound {} gives {satisfied}",
            stored.bound_satisfied,
            rational_string(&bound)
        )));
    }
    println!(
        "ok: embedded, {sticks} sticks (bound {}, {}), invariants consistent (det {})",
        rational_string(&bound),
        if satisfied { "satisfied" } else { "exceeded" },
        output.determinant
    );
    Ok(())
}

fn cmd_simplify(input: &Path, out: Option<&Path>) -> CliResult {
    let ap = read_arc(input)?;
    ap.validate()
        .map_err(|v| Failure::invalid(format!("invalid presentation: {v:?}")))?;
    let (reduced, steps) = ap.simplify();
    eprintln!("removed {steps} chord(s): {} -> {}", ap.n(), reduced.n());
    emit(out, &arcpres::serialize(&reduced))
}

fn cmd_random(n: usize, seed: u64, count: usize, dir: &Path) -> CliResult {
    fs::create_dir_all(dir).map_err(|e| Failure::invalid(format!("{}: {e}", dir.display())))?;
    for i in 0..count {
        let s = seed.wrapping_add(i as u64);
        let ap = random_presentation(n, s)?;
        let path = dir.join(format!("n{n}_s{s}.arc"));
        write(&path, &format!("# seed: {s}\n{}", arcpres::serialize(&ap)))?;
        println!("{}", path.display());
    }
    Ok(())
}

#[derive(Serialize)]
struct BatchRow {
    id: String,
    n: Option<usize>,
    beta1: Option<usize>,
    beta2: Option<usize>,
    beta3: Option<usize>,
    shift: Option<usize>,
    sticks: Option<usize>,
    bound: Option<String>,
    bound_satisfied: bool,
    top_reduction: String,
    embedded: bool,
    invariants_match: bool,
    determinant: Option<String>,
    seed: Option<u64>,
}

fn arc_inputs(inputs: &[PathBuf]) -> CliResult<Vec<PathBuf>> {
    let mut files = Vec::new();
    for p in inputs {
        if p.is_dir() {
            let mut found: Vec<PathBuf> = fs::read_dir(p)
                .map_err(|e| Failure::invalid(format!("{}: {e}", p.display())))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|f| f.extension().is_some_and(|x| x == "arc"))
                .collect();
            found.sort();
            files.extend(found);
        } else {
            files.push(p.clone());
        }
    }
    Ok(files)
}

/// One row and the failure code it would have produced on its own.
fn batch_row(path: &Path, opts: &BuildOptions) -> (BatchRow, u8) {
    let id = path.file_stem().map_or_else(
        || path.display().to_string(),
        |s| s.to_string_lossy().into(),
    );
    let text = fs::read_to_string(path);
    let seed = text.as_ref().ok().and_then(|t| recorded_seed(t));
    let mut row = BatchRow {
        id,
        n: None,
        beta1: None,
        beta2: None,
        beta3: None,
        shift: None,
        sticks: None,
        bound: None,
        bound_satisfied: false,
        top_reduction: String::new(),
        embedded: false,
        invariants_match: false,
        determinant: None,
        seed,
    };
    let built = text
        .map_err(|e| Failure::invalid(e.to_string()))
        .and_then(|t| arcpres::parse(&t).map_err(Failure::from))
        .and_then(|ap| {
            row.n = Some(ap.n());
            build_full_with(&ap, opts).map_err(Failure::from)
        });
    match built {
        Ok((_, cert)) => {
            row.beta1 = Some(cert.beta.beta1);
            row.beta2 = Some(cert.beta.beta2);
            row.beta3 = Some(cert.beta.beta3);
            row.shift = Some(cert.shift);
            row.sticks = Some(cert.sticks_k3);
            row.bound = Some(rational_string(&cert.bound));
            row.bound_satisfied = cert.bound_satisfied;
            row.top_reduction = cert.top_reduction.to_string();
            row.embedded = cert.embedded();
            row.invariants_match = cert.invariants_match;
            row.determinant = Some(cert.output_invariants.determinant.to_string());
            let code = if cert.invariants_match { 0 } else { 3 };
            (row, code)
        }
        Err(f) => {
            row.top_reduction = format!("error:{}", f.message);
            (row, f.code)
        }
    }
}

fn cmd_batch(inputs: &[PathBuf], csv_path: Option<&Path>, no_top_reduction: bool) -> CliResult {
    let opts = build_options(no_top_reduction)?;
    let files = arc_inputs(inputs)?;
    let rows: Vec<(BatchRow, u8)> = files.par_iter().map(|f| batch_row(f, &opts)).collect();

    let mut w = csv::Writer::from_writer(Vec::new());
    for (row, _) in &rows {
        w.serialize(row)
            .map_err(|e| Failure::invalid(e.to_string()))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Failure::invalid(e.to_string()))?;
    emit(
        csv_path,
        &String::from_utf8(bytes).expect("csv output is UTF-8"),
    )?;

    let failed = rows.iter().filter(|(_, c)| *c != 0).count();
    eprintln!("{} instance(s), {failed} failed", rows.len());
    // most severe code: mismatch, then verification, then invalid input
    let code = [3, 2, 1]
        .into_iter()
        .find(|c| rows.iter().any(|(_, rc)| rc == c));
    match code {
        Some(code) => Err(Failure {
            code,
            message: format!("{failed} of {} instance(s) failed", rows.len()),
        }),
        None => Ok(()),
    }
}

#[derive(Serialize)]
struct BoundsRow {
    c: u64,
    arc_index_upper: u64,
    negami_lower: String,
    negami_lower_ceil: u64,
    negami_upper: u64,
    huh_oh_upper: String,
}

fn cmd_bounds(cmin: u64, cmax: u64, nonalternating_prime: bool) -> CliResult {
    if cmin > cmax {
        return Err(Failure::invalid(format!(
            "--cmin {cmin} exceeds --cmax {cmax}"
        )));
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    for c in cmin..=cmax {
        let r = bound_report(c, nonalternating_prime)?;
        w.serialize(BoundsRow {
            c,
            arc_index_upper: r.a_upper,
            negami_lower: r.negami_lower.to_string(),
            negami_lower_ceil: r.negami_lower.ceil(),
            negami_upper: r.negami_upper,
            huh_oh_upper: r.huh_oh_upper.to_string(),
        })
        .map_err(|e| Failure::invalid(e.to_string()))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Failure::invalid(e.to_string()))?;
    print!("{}", String::from_utf8(bytes).expect("csv output is UTF-8"));
    Ok(())
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Build {
            input,
            out,
            obj,
            no_top_reduction,
        } => cmd_build(&input, out.as_deref(), obj.as_deref(), no_top_reduction),
        Command::Verify { arc, polygon } => cmd_verify(&arc, &polygon),
        Command::Simplify { input, out } => cmd_simplify(&input, out.as_deref()),
        Command::Random {
            n,
            seed,
            count,
            out,
        } => cmd_random(n, seed, count, &out),
        Command::Batch {
            inputs,
            csv,
            no_top_reduction,
        } => cmd_batch(&inputs, csv.as_deref(), no_top_reduction),
        Command::Bounds {
            cmin,
            cmax,
            nonalternating_prime,
        } => cmd_bounds(cmin, cmax, nonalternating_prime),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
