use std::fs;
use std::io::{self, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::Duration;

use clap::{Parser, Subcommand};
use momcensus::group::word_to_letters;
use momcensus::pipeline::survey::{checkpoint_path, manifest_stats};
use momcensus::pipeline::{analyze, parse_description, subdivide_to_tetrahedra, SurveyOptions};
use momcensus::{pyramid_sets_for_mom, run_survey, DipyramidSpec, Error, SymmetryMode};

#[derive(Parser)]
#[command(name = "momcensus", version, about = "Census of Mom-n cusped 3-manifold gluings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the dipyramid side-count sets of a Mom-n.
    Sets { n: usize },
    /// Enumerate, filter and analyze every gluing of a Mom-n.
    Survey {
        n: usize,
        #[arg(long, default_value_t = SymmetryMode::Rotational)]
        mode: SymmetryMode,
        /// Worker threads (0 = one per CPU).
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Continue from the checkpoint next to the manifest.
        #[arg(long)]
        resume: bool,
        /// Manifest path (JSON Lines).
        #[arg(long)]
        out: PathBuf,
        /// Restrict to one polyhedron set, e.g. "3,3,4"; repeatable.
        #[arg(long = "spec", value_parser = parse_spec)]
        specs: Vec<DipyramidSpec>,
        /// Search depth at which the tree is split into shards.
        #[arg(long, default_value_t = 4)]
        shard_depth: usize,
        /// Shards per checkpointed batch (0 = four per worker).
        #[arg(long, default_value_t = 0)]
        batch_shards: usize,
        /// Stop with a checkpoint after this many seconds.
        #[arg(long)]
        time_limit: Option<u64>,
        /// Stop with a checkpoint after this many batches.
        #[arg(long)]
        max_batches: Option<usize>,
    },
    /// Analyze one gluing description.
    Analyze {
        description: String,
        /// Print the manifest record instead of a report.
        #[arg(long)]
        json: bool,
    },
    /// Validate a file of gluing descriptions and print them normalized.
    Parse { file: PathBuf },
    /// Write the tetrahedral triangulation of a surviving gluing.
    ExportTri {
        description: String,
        #[arg(long)]
        out: PathBuf,
        /// Also write the simplified presentation here.
        #[arg(long)]
        presentation: Option<PathBuf>,
    },
    /// Summarize a survey manifest.
    Stats { manifest: PathBuf },
}

fn parse_spec(text: &str) -> Result<DipyramidSpec, String> {
    let sides = text
        .trim_matches(|c| c == '{' || c == '}')
        .split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|e| format!("{s:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    DipyramidSpec::new(sides).map_err(|e| e.to_string())
}

enum Failure {
    Validation(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) | Error::Checkpoint(_) | Error::Sink(_) => Failure::Io(e.to_string()),
            _ => Failure::Validation(e.to_string()),
        }
    }
}

fn io_failure(path: &std::path::Path, e: std::io::Error) -> Failure {
    Failure::Io(format!("{}: {e}", path.display()))
}

/// `println!` that ends the command quietly once stdout is closed.
macro_rules! say {
    ($($arg:tt)*) => {
        if let Err(e) = writeln!(io::stdout(), $($arg)*) {
            return stdout_closed(e);
        }
    };
}

fn stdout_closed(e: io::Error) -> Result<ExitCode, Failure> {
    if e.kind() == io::ErrorKind::BrokenPipe {
        Ok(ExitCode::SUCCESS)
    } else {
        Err(Failure::Io(format!("stdout: {e}")))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(Failure::Validation(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Failure> {
    match command {
        Command::Sets { n } => {
            for spec in pyramid_sets_for_mom(n)? {
                say!("{spec}");
            }
        }
        Command::Survey {
            n,
            mode,
            workers,
            resume,
            out,
            specs,
            shard_depth,
            batch_shards,
            time_limit,
            max_batches,
        } => {
            let interrupt = Arc::new(AtomicBool::new(false));
            let flag = Arc::clone(&interrupt);
            ctrlc::set_handler(move || flag.store(true, Ordering::SeqCst))
                .map_err(|e| Failure::Io(format!("signal handler: {e}")))?;
            let options = SurveyOptions {
                mode,
                workers,
                resume,
                only: (!specs.is_empty()).then_some(specs),
                shard_depth,
                batch_shards,
                time_limit: time_limit.map(Duration::from_secs),
                max_batches,
                interrupt: Some(interrupt),
            };
            let outcome = run_survey(n, &out, &options)?;
            let summary = &outcome.summary;
            for s in &summary.specs {
                eprintln!(
                    "{}: candidates {} survivors {} commutator hits {} boundary {:?}",
                    s.spec,
                    s.candidates,
                    s.survivors,
                    s.commutator_hits.len(),
                    s.boundary_histogram
                );
            }
            eprintln!("total: candidates {} survivors {}", summary.candidates(), summary.survivors());
            say!("{}", serde_json::to_string_pretty(summary).expect("summary serializes"));
            if outcome.interrupted {
                eprintln!("stopped early; resume with --resume (checkpoint {})", checkpoint_path(&out).display());
                return Ok(ExitCode::from(3));
            }
        }
        Command::Analyze { description, json } => {
            let d = parse_description(&description)?;
            let a = analyze(&d)?;
            if json {
                say!("{}", a.record().to_json_line());
                return Ok(ExitCode::SUCCESS);
            }
            say!("gluing: {}", a.description);
            say!("spec: {}", d.spec);
            match a.filter.reason {
                None => say!("filter: passed"),
                Some(reason) => say!("filter: rejected ({reason:?})"),
            }
            say!("vertex classes: {}", a.complex.num_vertex_classes());
            for (class, link) in a.complex.links.iter().enumerate() {
                say!(
                    "  class {class}: link euler {} {}",
                    link.euler(),
                    if link.orientable { "orientable" } else { "nonorientable" }
                );
            }
            say!("edge classes: {}", a.complex.num_edge_classes());
            say!("boundary components: {}", a.filter.boundary_count);
            if let Some(g) = &a.group {
                let letters = |rs: &[Vec<i32>]| rs.iter().map(|r| word_to_letters(r)).collect::<Vec<_>>().join(", ");
                say!("spine presentation: {} generators; {}", g.spine.generators, letters(&g.spine.relators));
                let p = &g.simplified.presentation;
                say!(
                    "simplified: {} generators; {}{}",
                    p.generators,
                    letters(&p.relators),
                    if g.simplified.exhausted { " (budget exhausted)" } else { "" }
                );
                say!("deficiency: {}", p.deficiency());
                say!("abelianization: {}", g.homology);
                match g.commutator_power {
                    Some(n) => say!("commutator power: [a,b^{n}]"),
                    None => say!("commutator power: none"),
                }
            }
        }
        Command::Parse { file } => {
            let text = fs::read_to_string(&file).map_err(|e| io_failure(&file, e))?;
            let mut count = 0;
            for (no, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let d = parse_description(line)
                    .map_err(|e| Failure::Validation(format!("{}:{}: {e}", file.display(), no + 1)))?;
                say!("{d}");
                count += 1;
            }
            eprintln!("{count} valid descriptions");
        }
        Command::ExportTri { description, out, presentation } => {
            let d = parse_description(&description)?;
            let a = analyze(&d)?;
            let Some(group) = &a.group else {
                return Err(Failure::Validation(format!(
                    "gluing does not pass the topological filter ({:?})",
                    a.filter.reason
                )));
            };
            let tri = subdivide_to_tetrahedra(&a.complex);
            fs::write(&out, tri.to_text()).map_err(|e| io_failure(&out, e))?;
            if let Some(path) = presentation {
                let text = group.simplified.presentation.to_text()?;
                fs::write(&path, text).map_err(|e| io_failure(&path, e))?;
            }
            eprintln!("{} tetrahedra written to {}", tri.num_tetrahedra(), out.display());
        }
        Command::Stats { manifest } => {
            let text = fs::read_to_string(&manifest).map_err(|e| io_failure(&manifest, e))?;
            let stats = manifest_stats(&text)?;
            let (mut records, mut survivors) = (0, 0);
            for (spec, s) in &stats {
                say!(
                    "{spec}: records {} survivors {} commutator hits {} boundary {:?}",
                    s.records, s.survivors, s.commutator_hits, s.boundary_histogram
                );
                records += s.records;
                survivors += s.survivors;
            }
            say!("total: records {records} survivors {survivors}");
        }
    }
    Ok(ExitCode::SUCCESS)
}
