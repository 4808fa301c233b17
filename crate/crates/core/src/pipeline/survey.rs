//! Census driver: enumerates every spec of a Mom-n, analyzes each canonical
//! pairing and streams one JSON record per line to a manifest.
//!
//! Shards of the search tree are processed in ordered batches on a worker
//! pool; the coordinator appends their records in shard order, so the
//! manifest is sorted by (spec, pairing) and independent of the worker
//! count. After every batch a checkpoint records the manifest length and the
//! next shard, and a resumed run truncates the manifest to that length.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::{count_orbits_burnside, Pairing, PairingSearch, SearchOptions};
use crate::error::{Error, Result};
use crate::pipeline::analysis::{analyze, SurveyRecord};
use crate::pipeline::description::GluingDescription;
use crate::polyhedra::{pyramid_sets_for_mom, DipyramidSpec, SymmetryMode};

pub const SURVEY_CHECKPOINT_VERSION: u32 = 1;

#[derive(Debug, Clone)]
pub struct SurveyOptions {
    pub mode: SymmetryMode,
    /// Worker threads; 0 uses one per CPU.
    pub workers: usize,
    pub resume: bool,
    /// Restrict the survey to these specs (each must belong to the Mom-n).
    pub only: Option<Vec<DipyramidSpec>>,
    pub shard_depth: usize,
    /// Shards per batch; 0 means four per worker.
    pub batch_shards: usize,
    /// Stop with a checkpoint once this much time has passed.
    pub time_limit: Option<Duration>,
    /// Stop with a checkpoint after this many batches in this run.
    pub max_batches: Option<usize>,
    /// Stop with a checkpoint once this flag is raised.
    pub interrupt: Option<Arc<AtomicBool>>,
}

impl Default for SurveyOptions {
    fn default() -> Self {
        SurveyOptions {
            mode: SymmetryMode::Rotational,
            workers: 0,
            resume: false,
            only: None,
            shard_depth: 4,
            batch_shards: 0,
            time_limit: None,
            max_batches: None,
            interrupt: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutatorHit {
    pub description: String,
    pub n: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecSummary {
    pub spec: DipyramidSpec,
    /// Orbits of all pairings, by Burnside's lemma.
    pub candidates: u64,
    /// Canonical pairings that survived search-time pruning.
    pub emitted: u64,
    pub survivors: u64,
    pub nodes: u64,
    pub boundary_histogram: BTreeMap<usize, u64>,
    pub commutator_hits: Vec<CommutatorHit>,
    pub exhausted_simplifications: u64,
}

impl SpecSummary {
    fn new(spec: DipyramidSpec, mode: SymmetryMode) -> Self {
        let candidates = u64::try_from(count_orbits_burnside(&spec, mode)).expect("candidate count fits u64");
        SpecSummary {
            spec,
            candidates,
            emitted: 0,
            survivors: 0,
            nodes: 0,
            boundary_histogram: BTreeMap::new(),
            commutator_hits: Vec::new(),
            exhausted_simplifications: 0,
        }
    }

    fn absorb(&mut self, record: &SurveyRecord) {
        self.emitted += 1;
        if !record.passed {
            return;
        }
        self.survivors += 1;
        *self.boundary_histogram.entry(record.boundary_count).or_default() += 1;
        if let Some(n) = record.commutator_power {
            self.commutator_hits.push(CommutatorHit { description: record.description.clone(), n });
        }
        if record.presentation.as_ref().is_some_and(|p| p.exhausted) {
            self.exhausted_simplifications += 1;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveySummary {
    pub n: usize,
    pub mode: SymmetryMode,
    pub specs: Vec<SpecSummary>,
    pub complete: bool,
}

impl SurveySummary {
    pub fn candidates(&self) -> u64 {
        self.specs.iter().map(|s| s.candidates).sum()
    }

    pub fn survivors(&self) -> u64 {
        self.specs.iter().map(|s| s.survivors).sum()
    }

    pub fn boundary_histogram(&self) -> BTreeMap<usize, u64> {
        let mut out = BTreeMap::new();
        for s in &self.specs {
            for (&b, &count) in &s.boundary_histogram {
                *out.entry(b).or_default() += count;
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurveyOutcome {
    pub summary: SurveySummary,
    /// Stopped early; the checkpoint allows resuming.
    pub interrupted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct SurveyCheckpoint {
    version: u32,
    n: usize,
    mode: SymmetryMode,
    specs: Vec<DipyramidSpec>,
    shard_depth: usize,
    spec_index: usize,
    next_shard: usize,
    manifest_bytes: u64,
    summary: SurveySummary,
}

pub fn checkpoint_path(manifest: &Path) -> PathBuf {
    suffixed(manifest, ".checkpoint.json")
}

pub fn summary_path(manifest: &Path) -> PathBuf {
    suffixed(manifest, ".summary.json")
}

fn suffixed(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn write_atomically(path: &Path, contents: &[u8]) -> Result<()> {
    let tmp = suffixed(path, ".tmp");
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

struct ShardResult {
    records: Vec<SurveyRecord>,
    nodes: u64,
}

fn run_shard(search: &PairingSearch, prefix: &[u8]) -> Result<ShardResult> {
    let spec = search.spec();
    let mut records = Vec::new();
    let outcome = search.run_subtree(
        prefix,
        None,
        SearchOptions { prune_topology: true, node_budget: None },
        &mut |perm: &[usize]| {
            let pairing = Pairing::new(spec, perm.to_vec())?;
            let analysis = analyze(&GluingDescription { spec: spec.clone(), pairing })?;
            records.push(analysis.record());
            Ok(())
        },
    )?;
    Ok(ShardResult { records, nodes: outcome.nodes })
}

fn survey_specs(n: usize, only: Option<&[DipyramidSpec]>) -> Result<Vec<DipyramidSpec>> {
    let all = pyramid_sets_for_mom(n)?;
    match only {
        None => Ok(all),
        Some(chosen) => {
            if let Some(stray) = chosen.iter().find(|s| !all.contains(s)) {
                return Err(Error::Domain(format!("{stray} is not a polyhedron set of a Mom-{n}")));
            }
            Ok(all.into_iter().filter(|s| chosen.contains(s)).collect())
        }
    }
}

/// Runs (or resumes) the survey of Mom-`n` gluings into the manifest at
/// `out`, writing `<out>.checkpoint.json` after every batch and
/// `<out>.summary.json` on completion.
pub fn run_survey(n: usize, out: &Path, options: &SurveyOptions) -> Result<SurveyOutcome> {
    let specs = survey_specs(n, options.only.as_deref())?;
    let ckpt_path = checkpoint_path(out);

    let fresh = SurveyCheckpoint {
        version: SURVEY_CHECKPOINT_VERSION,
        n,
        mode: options.mode,
        specs: specs.clone(),
        shard_depth: options.shard_depth,
        spec_index: 0,
        next_shard: 0,
        manifest_bytes: 0,
        summary: SurveySummary { n, mode: options.mode, specs: Vec::new(), complete: false },
    };
    let mut state = if options.resume {
        let text = fs::read_to_string(&ckpt_path)
            .map_err(|e| Error::Checkpoint(format!("cannot read {}: {e}", ckpt_path.display())))?;
        let loaded: SurveyCheckpoint =
            serde_json::from_str(&text).map_err(|e| Error::Checkpoint(e.to_string()))?;
        if loaded.version != SURVEY_CHECKPOINT_VERSION {
            return Err(Error::Checkpoint(format!("unsupported version {}", loaded.version)));
        }
        if (loaded.n, loaded.mode, &loaded.specs, loaded.shard_depth)
            != (n, options.mode, &specs, options.shard_depth)
        {
            return Err(Error::Checkpoint("checkpoint belongs to a different survey".into()));
        }
        loaded
    } else {
        fresh
    };

    let file = if options.resume {
        let f = OpenOptions::new().write(true).open(out)?;
        if f.metadata()?.len() < state.manifest_bytes {
            return Err(Error::Checkpoint("manifest is shorter than the checkpoint records".into()));
        }
        f.set_len(state.manifest_bytes)?;
        let mut f = f;
        std::io::Seek::seek(&mut f, std::io::SeekFrom::End(0))?;
        f
    } else {
        File::create(out)?
    };
    let mut manifest = BufWriter::new(file);

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.workers)
        .build()
        .map_err(|e| Error::Domain(format!("worker pool: {e}")))?;
    let batch = if options.batch_shards > 0 { options.batch_shards } else { 4 * pool.current_num_threads() };
    let started = Instant::now();
    let mut batches_done = 0usize;

    while state.spec_index < specs.len() {
        let spec = &specs[state.spec_index];
        if state.summary.specs.len() <= state.spec_index {
            state.summary.specs.push(SpecSummary::new(spec.clone(), options.mode));
        }
        let search = PairingSearch::new(spec, options.mode);
        let shards = search.shards(options.shard_depth, true);
        while state.next_shard < shards.len() {
            let stop_requested = options.interrupt.as_ref().is_some_and(|f| f.load(Ordering::SeqCst))
                || options.time_limit.is_some_and(|t| started.elapsed() >= t)
                || options.max_batches.is_some_and(|m| batches_done >= m);
            if stop_requested {
                return Ok(SurveyOutcome { summary: state.summary, interrupted: true });
            }
            let end = (state.next_shard + batch).min(shards.len());
            let results: Vec<Result<ShardResult>> =
                pool.install(|| shards[state.next_shard..end].par_iter().map(|s| run_shard(&search, s)).collect());
            let summary = state.summary.specs.last_mut().expect("current spec summary");
            for result in results {
                let result = result?;
                summary.nodes += result.nodes;
                for record in &result.records {
                    summary.absorb(record);
                    writeln!(manifest, "{}", record.to_json_line())?;
                }
            }
            manifest.flush()?;
            manifest.get_ref().sync_data()?;
            state.manifest_bytes = manifest.get_ref().metadata()?.len();
            state.next_shard = end;
            batches_done += 1;
            save_checkpoint(&ckpt_path, &state)?;
        }
        state.spec_index += 1;
        state.next_shard = 0;
        save_checkpoint(&ckpt_path, &state)?;
    }

    state.summary.complete = true;
    let json = serde_json::to_string_pretty(&state.summary).expect("summary serializes");
    write_atomically(&summary_path(out), json.as_bytes())?;
    fs::remove_file(&ckpt_path)?;
    Ok(SurveyOutcome { summary: state.summary, interrupted: false })
}

fn save_checkpoint(path: &Path, state: &SurveyCheckpoint) -> Result<()> {
    let json = serde_json::to_vec(state).expect("checkpoint serializes");
    write_atomically(path, &json)
}

/// Totals recomputed from a manifest.
pub fn manifest_stats(text: &str) -> Result<BTreeMap<String, SpecSummaryLite>> {
    let mut out: BTreeMap<String, SpecSummaryLite> = BTreeMap::new();
    for (no, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let record: SurveyRecord = serde_json::from_str(line)
            .map_err(|e| Error::Parse { position: no + 1, message: e.to_string() })?;
        let d: GluingDescription = record.description.parse()?;
        let entry = out.entry(d.spec.to_string()).or_default();
        entry.records += 1;
        if record.passed {
            entry.survivors += 1;
            *entry.boundary_histogram.entry(record.boundary_count).or_default() += 1;
            if record.commutator_power.is_some() {
                entry.commutator_hits += 1;
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecSummaryLite {
    pub records: u64,
    pub survivors: u64,
    pub boundary_histogram: BTreeMap<usize, u64>,
    pub commutator_hits: u64,
}
