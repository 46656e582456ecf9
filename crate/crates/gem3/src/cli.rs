//! Command-line front end. All logic lives in the library; the binary is a
//! one-line wrapper around [`run`], which is also what the integration
//! tests drive. Diagnostics go to the error stream, data to the output
//! stream or file, so commands compose in pipelines.
//!
//! Exit codes: 0 success, 1 input or usage errors, 2 internal invariant
//! violations.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::catalogue::{
    classify_batch, enumerate_crystallizations, parse_gems_lenient, read_jsonl, serialize_gem,
    write_csv, write_jsonl, BatchOptions, CatalogueEntry, EnumerateOptions, DEFAULT_CEILING,
};
use crate::error::{GemError, Result};
use crate::gm::{admissible_sum_pairs, Grouping};
use crate::graph::ColouredGraph;
use crate::invariants::{gem_complexity_bound, homology_h1};

#[derive(Parser)]
#[command(
    name = "gem3",
    about = "Invariants of 4-edge-coloured graphs encoding closed orientable 3-manifolds",
    version
)]
struct Cli {
    /// Worker threads for the GM choice space and census partitions
    /// (default: available parallelism). Outputs do not depend on this.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Gem,
    Jsonl,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum GroupBy {
    Signature,
    Name,
}

#[derive(Args)]
struct InputArgs {
    /// Input file (GEM text or JSONL).
    input: PathBuf,
    /// Input format; inferred from the extension when omitted.
    #[arg(long)]
    format: Option<Format>,
}

#[derive(Subcommand)]
enum Command {
    /// Validate every record of a file, reporting per-record diagnostics.
    Validate(InputArgs),
    /// Print the invariants of each graph in a file.
    Info(InputArgs),
    /// Compute GM-complexity for each graph in a file.
    Gm {
        #[command(flatten)]
        input: InputArgs,
        /// Also print the witness choice (partition, deleted residues,
        /// region faces).
        #[arg(long)]
        witness: bool,
        /// Also print the full per-choice value table.
        #[arg(long)]
        table: bool,
    },
    /// Enumerate the census of connected contracted gems up to an order.
    Enumerate {
        /// Largest (even) order to enumerate.
        #[arg(long)]
        max_order: usize,
        #[arg(long)]
        bipartite_only: bool,
        #[arg(long)]
        rigid_only: bool,
        #[arg(long)]
        manifold_only: bool,
        /// Raise the enumeration ceiling (default 10) at your own risk.
        #[arg(long, default_value_t = DEFAULT_CEILING)]
        ceiling: usize,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Gem)]
        format: Format,
        /// Output file (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Form the connected sum of the first graphs of two files.
    Sum {
        first: PathBuf,
        second: PathBuf,
        /// Vertices to delete, as "v1,v2" (default: the smallest
        /// admissible pair).
        #[arg(long)]
        at: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Classify a catalogue and write the CSV report.
    Batch {
        #[command(flatten)]
        input: InputArgs,
        /// Grouping for the per-manifold bounds.
        #[arg(long, value_enum, default_value_t = GroupBy::Signature)]
        group_by: GroupBy,
        /// JSONL file whose name/known_complexity/tags are merged into
        /// matching input ids.
        #[arg(long)]
        seed_annotations: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Runs the CLI against explicit argument and stream handles; returns the
/// process exit code.
pub fn run<I, S>(args: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    1
                }
            };
        }
    };

    if cli.jobs == Some(0) {
        let _ = writeln!(err, "error: --jobs must be at least 1");
        return 1;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.unwrap_or(0))
        .build();
    let pool = match pool {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 1;
        }
    };

    match pool.install(|| dispatch(&cli.command, out, err)) {
        Ok(code) => code,
        // A consumer that stopped reading is not an error for a pipeline
        // producer.
        Err(e) if is_broken_pipe(&e) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_internal() {
                2
            } else {
                1
            }
        }
    }
}

fn is_broken_pipe(e: &GemError) -> bool {
    match e {
        GemError::Io(io) => io.kind() == std::io::ErrorKind::BrokenPipe,
        GemError::Semantic { source, .. } | GemError::File { source, .. } => {
            is_broken_pipe(source)
        }
        _ => false,
    }
}

fn dispatch(command: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Validate(input) => cmd_validate(input, out, err),
        Command::Info(input) => cmd_info(input, out),
        Command::Gm { input, witness, table } => cmd_gm(input, *witness, *table, out),
        Command::Enumerate {
            max_order,
            bipartite_only,
            rigid_only,
            manifold_only,
            ceiling,
            format,
            output,
        } => {
            let opts = EnumerateOptions {
                max_order: *max_order,
                bipartite_only: *bipartite_only,
                rigid_only: *rigid_only,
                manifold_only: *manifold_only,
                ceiling: *ceiling,
            };
            with_output(output.as_deref(), out, |w| cmd_enumerate(&opts, *format, w))
        }
        Command::Sum { first, second, at, output } => {
            with_output(output.as_deref(), out, |w| cmd_sum(first, second, at.as_deref(), w))
        }
        Command::Batch { input, group_by, seed_annotations, output } => {
            let grouping = match group_by {
                GroupBy::Signature => Grouping::Signature,
                GroupBy::Name => Grouping::Name,
            };
            with_output(output.as_deref(), out, |w| {
                cmd_batch(input, grouping, seed_annotations.as_deref(), w, err)
            })
        }
    }
}

fn with_output<F>(path: Option<&Path>, out: &mut dyn Write, f: F) -> Result<i32>
where
    F: FnOnce(&mut dyn Write) -> Result<i32>,
{
    match path {
        None => f(out),
        Some(path) => {
            let file = fs::File::create(path)?;
            let mut writer = std::io::BufWriter::new(file);
            let code = f(&mut writer)?;
            writer.flush()?;
            Ok(code)
        }
    }
}

fn infer_format(input: &InputArgs) -> Format {
    input.format.unwrap_or_else(|| {
        match input.input.extension().and_then(|e| e.to_str()) {
            Some("jsonl") | Some("json") => Format::Jsonl,
            _ => Format::Gem,
        }
    })
}

/// Reads a file into entries. GEM records get synthetic ids r0, r1, ...
fn read_entries(input: &InputArgs) -> Result<Vec<CatalogueEntry>> {
    let text = fs::read_to_string(&input.input).map_err(|e| GemError::File {
        path: input.input.display().to_string(),
        source: Box::new(e.into()),
    })?;
    let entries = match infer_format(input) {
        Format::Jsonl => read_jsonl(&text),
        Format::Gem => crate::catalogue::parse_gems(&text).map(|graphs| {
            graphs
                .into_iter()
                .enumerate()
                .map(|(k, graph)| CatalogueEntry::new(format!("r{k}"), graph))
                .collect()
        }),
    };
    entries.map_err(|e| GemError::File {
        path: input.input.display().to_string(),
        source: Box::new(e),
    })
}

fn cmd_validate(input: &InputArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let text = fs::read_to_string(&input.input)?;
    let results: Vec<Result<ColouredGraph>> = match infer_format(input) {
        Format::Gem => parse_gems_lenient(&text),
        // Line by line, so one bad record does not hide the rest.
        Format::Jsonl => text
            .lines()
            .enumerate()
            .filter(|(_, line)| !line.trim().is_empty())
            .map(|(idx, line)| {
                let mut records = read_jsonl(line).map_err(|e| match e {
                    GemError::Semantic { source, .. } => GemError::Semantic {
                        line: idx + 1,
                        source,
                    },
                    other => other,
                })?;
                Ok(records.remove(0).graph)
            })
            .collect(),
    };
    let mut failures = 0;
    for (k, result) in results.iter().enumerate() {
        match result {
            Ok(g) => writeln!(out, "record {k}: ok (order {})", g.order())?,
            Err(e) => {
                failures += 1;
                writeln!(err, "record {k}: {e}")?;
            }
        }
    }
    if results.is_empty() {
        writeln!(err, "no records found")?;
        return Ok(1);
    }
    Ok(if failures == 0 { 0 } else { 1 })
}

fn cmd_info(input: &InputArgs, out: &mut dyn Write) -> Result<i32> {
    let entries = read_entries(input)?;
    for entry in &entries {
        let g = &entry.graph;
        writeln!(out, "id: {}", entry.id)?;
        if let Some(name) = &entry.name {
            writeln!(out, "name: {name}")?;
        }
        writeln!(out, "order: {}", g.order())?;
        writeln!(out, "bipartite: {}", g.is_bipartite())?;
        writeln!(out, "contracted: {}", g.is_contracted())?;
        writeln!(out, "manifold: {}", g.is_manifold_gem())?;
        writeln!(out, "rigid: {}", g.is_rigid())?;
        let counts = g.pair_counts();
        writeln!(
            out,
            "g01 g02 g03 g12 g13 g23: {} {} {} {} {} {}",
            counts[0], counts[1], counts[2], counts[3], counts[4], counts[5]
        )?;
        match crate::gm::minimal_genus(g) {
            Ok(genus) => writeln!(out, "genus_min: {genus}")?,
            Err(e) => writeln!(out, "genus_min: unavailable ({e})")?,
        }
        match homology_h1(g) {
            Ok(h1) => writeln!(out, "h1: {h1}")?,
            Err(e) => writeln!(out, "h1: unavailable ({e})")?,
        }
        match gem_complexity_bound(g) {
            Ok(k) => writeln!(out, "k_bound: {k}")?,
            Err(e) => writeln!(out, "k_bound: unavailable ({e})")?,
        }
        writeln!(out, "rho_pairs: {}", g.rho_pairs().len())?;
        writeln!(out)?;
    }
    Ok(0)
}

fn cmd_gm(input: &InputArgs, witness: bool, table: bool, out: &mut dyn Write) -> Result<i32> {
    let entries = read_entries(input)?;
    let single = entries.len() == 1;
    for entry in &entries {
        let report = if table {
            crate::gm::gm_complexity_with_table(&entry.graph)?
        } else {
            crate::gm::gm_complexity(&entry.graph)?
        };
        if single {
            writeln!(out, "{}", report.value)?;
        } else {
            writeln!(out, "{} {}", entry.id, report.value)?;
        }
        if witness {
            let w = &report.witness;
            writeln!(
                out,
                "witness: partition={} D={} D'={} region_faces={:?} region_vertices={:?}",
                w.partition, w.d_index, w.dp_index, w.region.face_indices, w.region.vertices
            )?;
        }
        if let Some(rows) = &report.table {
            for row in rows {
                writeln!(
                    out,
                    "choice partition={} D={} D'={} region={} value={}",
                    row.partition, row.d_index, row.dp_index, row.region_key, row.value
                )?;
            }
        }
    }
    Ok(0)
}

fn cmd_enumerate(opts: &EnumerateOptions, format: Format, out: &mut dyn Write) -> Result<i32> {
    let graphs = enumerate_crystallizations(opts)?;
    match format {
        Format::Gem => {
            for (k, graph) in graphs.iter().enumerate() {
                writeln!(out, "# g{}_{k}", graph.order())?;
                write!(out, "{}", serialize_gem(graph))?;
            }
        }
        Format::Jsonl => {
            let entries: Vec<CatalogueEntry> = graphs
                .into_iter()
                .enumerate()
                .map(|(k, graph)| {
                    let id = format!("g{}_{k}", graph.order());
                    CatalogueEntry::new(id, graph)
                })
                .collect();
            write!(out, "{}", write_jsonl(&entries))?;
        }
    }
    Ok(0)
}

fn cmd_sum(
    first: &Path,
    second: &Path,
    at: Option<&str>,
    out: &mut dyn Write,
) -> Result<i32> {
    let read_first_graph = |path: &Path| -> Result<ColouredGraph> {
        let input = InputArgs { input: path.to_path_buf(), format: None };
        let entries = read_entries(&input)?;
        entries
            .into_iter()
            .next()
            .map(|e| e.graph)
            .ok_or_else(|| GemError::Parameter(format!("{}: no records", path.display())))
    };
    let g1 = read_first_graph(first)?;
    let g2 = read_first_graph(second)?;
    let (v1, v2) = match at {
        Some(spec) => {
            let parts: Vec<&str> = spec.split(',').collect();
            let parse = |s: &str| -> Result<u32> {
                s.trim()
                    .parse()
                    .map_err(|_| GemError::Parameter(format!("bad vertex '{s}' in --at")))
            };
            if parts.len() != 2 {
                return Err(GemError::Parameter("--at takes 'v1,v2'".into()));
            }
            (parse(parts[0])?, parse(parts[1])?)
        }
        None => admissible_sum_pairs(&g1, &g2)
            .into_iter()
            .next()
            .ok_or_else(|| GemError::Parameter("no admissible vertex pair".into()))?,
    };
    let sum = g1.connected_sum(v1, &g2, v2)?;
    write!(out, "{}", serialize_gem(&sum))?;
    Ok(0)
}

fn cmd_batch(
    input: &InputArgs,
    grouping: Grouping,
    seed: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let mut entries = read_entries(input)?;
    if let Some(seed_path) = seed {
        let text = fs::read_to_string(seed_path)?;
        let seeds = read_jsonl(&text)?;
        for seed_entry in seeds {
            if let Some(target) = entries.iter_mut().find(|e| e.id == seed_entry.id) {
                if seed_entry.name.is_some() {
                    target.name = seed_entry.name;
                }
                if seed_entry.known_complexity.is_some() {
                    target.known_complexity = seed_entry.known_complexity;
                }
                target.tags.extend(seed_entry.tags);
            }
        }
    }
    let report = classify_batch(&entries, &BatchOptions { grouping });
    write_csv(&report, &mut *out)?;
    for bound in &report.bounds {
        writeln!(
            err,
            "group {} best_gm={} minimal_order={} code={}",
            bound.manifold_key,
            bound.best_value,
            bound.minimal_order_flag,
            hex(&bound.best_graph)
        )?;
    }
    Ok(0)
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}
