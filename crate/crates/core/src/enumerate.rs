//! Orderly generation of face pairings, one representative per symmetry orbit.
//!
//! A pairing is a fixed-point-free involution `p` on face indices, compared
//! lexicographically as the sequence `(p(0), .., p(F-1))`. A pairing is
//! canonical when no symmetry `g` makes `g∘p∘g⁻¹` lexicographically smaller.
//!
//! The search always pairs the smallest unpaired face next, so a node's
//! pairing is known on a prefix of positions. For each symmetry that could
//! still produce a smaller conjugate the search keeps the first position not
//! yet decided; any conjugate that is already smaller prunes the subtree.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::complex::{PartialTopology, TopologyTables};
use crate::error::{Error, Result};
use crate::polyhedra::{symmetry_group, DipyramidSpec, SymmetryMode, MAX_FACES};

/// A validated fixed-point-free involution on the faces of a spec.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Pairing {
    perm: Vec<usize>,
}

impl Pairing {
    pub fn new(spec: &DipyramidSpec, perm: Vec<usize>) -> Result<Self> {
        validate_pairing(spec, &perm)?;
        Ok(Pairing { perm })
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn partner(&self, face: usize) -> usize {
        self.perm[face]
    }

    /// `g∘p∘g⁻¹`, given `g` and its inverse as face permutations.
    pub fn conjugate(&self, g: &[usize], g_inv: &[usize]) -> Pairing {
        let perm = (0..self.perm.len()).map(|i| g[self.perm[g_inv[i]]]).collect();
        Pairing { perm }
    }
}

pub fn validate_pairing(spec: &DipyramidSpec, perm: &[usize]) -> Result<()> {
    let len = spec.num_faces();
    if perm.len() != len {
        return Err(Error::LengthMismatch { expected: len, found: perm.len() });
    }
    if let Some((index, &value)) = perm.iter().enumerate().find(|(_, &v)| v >= len) {
        return Err(Error::OutOfRange { index, value, len });
    }
    let fixed: Vec<usize> = (0..len).filter(|&i| perm[i] == i).collect();
    if !fixed.is_empty() {
        return Err(Error::FixedPoints(fixed));
    }
    for (index, &image) in perm.iter().enumerate() {
        if perm[image] != index {
            return Err(Error::NotInvolution { index, image, back: perm[image] });
        }
    }
    Ok(())
}

/// Every fixed-point-free involution on `n` points, in lexicographic order.
pub fn all_involutions(n: usize) -> Vec<Vec<usize>> {
    fn rec(p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(i) = p.iter().position(|&x| x == usize::MAX) else {
            out.push(p.clone());
            return;
        };
        for j in i + 1..p.len() {
            if p[j] == usize::MAX {
                p[i] = j;
                p[j] = i;
                rec(p, out);
                p[i] = usize::MAX;
                p[j] = usize::MAX;
            }
        }
    }
    let mut out = Vec::new();
    if n.is_multiple_of(2) {
        rec(&mut vec![usize::MAX; n], &mut out);
    }
    out
}

pub fn is_canonical(spec: &DipyramidSpec, p: &Pairing, mode: SymmetryMode) -> bool {
    symmetry_group(spec, mode).iter().all(|g| {
        let inv = g.inverse_perm();
        p.conjugate(&g.face_perm, &inv) >= *p
    })
}

/// Distinct conjugates of `p`, sorted.
pub fn orbit_of(spec: &DipyramidSpec, p: &Pairing, mode: SymmetryMode) -> Vec<Pairing> {
    let mut out: Vec<Pairing> = symmetry_group(spec, mode)
        .iter()
        .map(|g| p.conjugate(&g.face_perm, &g.inverse_perm()))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Lexicographically least element of the orbit of `p`.
pub fn canonical_form(spec: &DipyramidSpec, p: &Pairing, mode: SymmetryMode) -> Pairing {
    orbit_of(spec, p, mode).into_iter().next().expect("orbit contains p")
}

/// Number of orbits of fixed-point-free involutions, by Burnside's lemma.
///
/// An involution commuting with `g` permutes the cycles of `g`, sending each
/// cycle to one of the same length. A cycle of even length `L` may map to
/// itself (as the rotation by `L/2`); two cycles of length `L` may be swapped
/// in `L` alignments.
pub fn count_orbits_burnside(spec: &DipyramidSpec, mode: SymmetryMode) -> u128 {
    let group = symmetry_group(spec, mode);
    let mut total: u128 = 0;
    for g in &group {
        let n = g.face_perm.len();
        let mut seen = vec![false; n];
        let mut cycles_by_len = vec![0usize; n + 1];
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = g.face_perm[x];
                len += 1;
            }
            cycles_by_len[len] += 1;
        }
        let mut fixed: u128 = 1;
        for (len, &count) in cycles_by_len.iter().enumerate().skip(1) {
            fixed *= commuting_involutions(len, count);
            if fixed == 0 {
                break;
            }
        }
        total += fixed;
    }
    assert_eq!(total % group.len() as u128, 0);
    total / group.len() as u128
}

/// Fixed-point-free involutions on `count` cycles of length `len` that commute
/// with the cycle rotation.
fn commuting_involutions(len: usize, count: usize) -> u128 {
    // a(c) = [len even] a(c-1) + (c-1) len a(c-2)
    let self_map: u128 = u128::from(len.is_multiple_of(2));
    let (mut prev, mut cur): (u128, u128) = (0, 1);
    for c in 1..=count {
        let next = self_map * cur + (c as u128 - 1) * len as u128 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

const UNSET: u8 = u8::MAX;

#[derive(Clone)]
struct GroupPerm {
    fwd: [u8; MAX_FACES],
    inv: [u8; MAX_FACES],
}

/// Symmetry still able to produce a smaller conjugate, with the first
/// position where the comparison is undecided.
#[derive(Clone, Copy)]
struct Live {
    element: u32,
    position: u8,
}

/// What the search did.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub emitted: u64,
    pub nodes: u64,
    /// Decision stack of the first node not processed when the node budget
    /// ran out; `None` if the search completed.
    pub stopped_at: Option<Vec<u8>>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SearchOptions {
    /// Prune subtrees with a closed vertex class failing the topological filter.
    pub prune_topology: bool,
    /// Stop after this many nodes, reporting where.
    pub node_budget: Option<u64>,
}

/// Reusable search over one spec and symmetry mode.
pub struct PairingSearch {
    spec: DipyramidSpec,
    mode: SymmetryMode,
    faces: usize,
    group: Vec<GroupPerm>,
    tables: TopologyTables,
}

enum Flow {
    Continue,
    Stop,
}

struct Run<'a, F> {
    options: SearchOptions,
    sink: &'a mut F,
    p: [u8; MAX_FACES],
    path: Vec<u8>,
    /// Decisions that must be followed before free search begins.
    forced: &'a [u8],
    /// Depth below which the search never leaves `forced`.
    floor: usize,
    emitted: u64,
    nodes: u64,
    stopped_at: Option<Vec<u8>>,
    error: Option<Error>,
    buffers: Vec<Vec<Live>>,
}

impl PairingSearch {
    pub fn new(spec: &DipyramidSpec, mode: SymmetryMode) -> Self {
        let faces = spec.num_faces();
        let group = symmetry_group(spec, mode)
            .into_iter()
            .filter(|g| !g.is_identity())
            .map(|g| {
                let mut fwd = [0u8; MAX_FACES];
                let mut inv = [0u8; MAX_FACES];
                for (i, &j) in g.face_perm.iter().enumerate() {
                    fwd[i] = j as u8;
                    inv[j] = i as u8;
                }
                GroupPerm { fwd, inv }
            })
            .collect();
        PairingSearch { spec: spec.clone(), mode, faces, group, tables: TopologyTables::new(spec) }
    }

    pub fn spec(&self) -> &DipyramidSpec {
        &self.spec
    }

    pub fn mode(&self) -> SymmetryMode {
        self.mode
    }

    pub fn group_order(&self) -> usize {
        self.group.len() + 1
    }

    /// Runs the whole search, emitting canonical pairings in increasing order.
    pub fn run<F>(&self, options: SearchOptions, sink: &mut F) -> Result<SearchOutcome>
    where
        F: FnMut(&[usize]) -> Result<()>,
    {
        self.run_subtree(&[], None, options, sink)
    }

    /// Runs the subtree below `prefix`, optionally resuming at the node
    /// `resume` (which must extend `prefix`).
    pub fn run_subtree<F>(
        &self,
        prefix: &[u8],
        resume: Option<&[u8]>,
        options: SearchOptions,
        sink: &mut F,
    ) -> Result<SearchOutcome>
    where
        F: FnMut(&[usize]) -> Result<()>,
    {
        let forced = match resume {
            Some(r) => {
                if !r.starts_with(prefix) {
                    return Err(Error::Checkpoint("resume point lies outside the shard".into()));
                }
                r
            }
            None => prefix,
        };
        let mut run = Run {
            options,
            sink,
            p: [UNSET; MAX_FACES],
            path: Vec::with_capacity(self.faces / 2),
            forced,
            floor: prefix.len(),
            emitted: 0,
            nodes: 0,
            stopped_at: None,
            error: None,
            buffers: vec![Vec::new(); self.faces / 2 + 1],
        };
        run.buffers[0] = (0..self.group.len())
            .map(|element| Live { element: element as u32, position: 0 })
            .collect();
        let topo = PartialTopology::new(&self.tables);
        self.descend(&mut run, 0, topo);
        if let Some(e) = run.error {
            return Err(e);
        }
        Ok(SearchOutcome { emitted: run.emitted, nodes: run.nodes, stopped_at: run.stopped_at })
    }

    /// Decision stacks of the nodes at `depth` (or leaves above it), in
    /// search order. Their subtrees partition the search.
    pub fn shards(&self, depth: usize, prune_topology: bool) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        let mut sink = |_: &[usize]| Ok(());
        let mut run = Run {
            options: SearchOptions { prune_topology, node_budget: None },
            sink: &mut sink,
            p: [UNSET; MAX_FACES],
            path: Vec::new(),
            forced: &[],
            floor: 0,
            emitted: 0,
            nodes: 0,
            stopped_at: None,
            error: None,
            buffers: vec![Vec::new(); self.faces / 2 + 1],
        };
        run.buffers[0] = (0..self.group.len())
            .map(|element| Live { element: element as u32, position: 0 })
            .collect();
        let topo = PartialTopology::new(&self.tables);
        self.collect_shards(&mut run, 0, topo, depth.max(1), &mut out);
        out
    }

    fn collect_shards<F>(
        &self,
        run: &mut Run<'_, F>,
        depth: usize,
        topo: PartialTopology,
        target: usize,
        out: &mut Vec<Vec<u8>>,
    ) where
        F: FnMut(&[usize]) -> Result<()>,
    {
        if depth == target || depth == self.faces / 2 {
            out.push(run.path.clone());
            return;
        }
        let i = self.first_unpaired(&run.p);
        for j in i + 1..self.faces {
            if run.p[j] != UNSET {
                continue;
            }
            if let Some(child) = self.try_child(run, depth, topo, i, j) {
                run.path.push(j as u8);
                self.collect_shards(run, depth + 1, child, target, out);
                run.path.pop();
            }
            run.p[i] = UNSET;
            run.p[j] = UNSET;
        }
    }

    fn first_unpaired(&self, p: &[u8; MAX_FACES]) -> usize {
        (0..self.faces).find(|&i| p[i] == UNSET).expect("incomplete pairing")
    }

    /// Sets `p(i) = j` and runs the pruning checks. On success the child's
    /// live symmetries are in `run.buffers[depth + 1]`. The caller resets
    /// `p[i]`, `p[j]`.
    fn try_child<F>(
        &self,
        run: &mut Run<'_, F>,
        depth: usize,
        topo: PartialTopology,
        i: usize,
        j: usize,
    ) -> Option<PartialTopology> {
        run.p[i] = j as u8;
        run.p[j] = i as u8;
        let mut child = topo;
        if run.options.prune_topology && child.glue(&self.tables, i, j).is_err() {
            return None;
        }
        let (lo, hi) = run.buffers.split_at_mut(depth + 1);
        let next = &mut hi[0];
        next.clear();
        let p = &run.p;
        for live in &lo[depth] {
            let g = &self.group[live.element as usize];
            let mut pos = live.position as usize;
            let keep = loop {
                if pos == self.faces {
                    // g stabilizes p
                    break false;
                }
                let a = p[pos];
                if a == UNSET {
                    break true;
                }
                let b = p[g.inv[pos] as usize];
                if b == UNSET {
                    // the conjugate takes a value <= a at pos only through
                    // an unpaired preimage of pos+1..=a
                    break (pos + 1..=a as usize).any(|z| p[g.inv[z] as usize] == UNSET);
                }
                let q = g.fwd[b as usize];
                if q < a {
                    return None;
                }
                if q > a {
                    break false;
                }
                pos += 1;
            };
            if keep {
                next.push(Live { element: live.element, position: pos as u8 });
            }
        }
        Some(child)
    }

    fn descend<F>(&self, run: &mut Run<'_, F>, depth: usize, topo: PartialTopology) -> Flow
    where
        F: FnMut(&[usize]) -> Result<()>,
    {
        if depth == self.faces / 2 {
            let perm: Vec<usize> = run.p[..self.faces].iter().map(|&x| x as usize).collect();
            if let Err(e) = (run.sink)(&perm) {
                run.error = Some(e);
                run.stopped_at = Some(run.path.clone());
                return Flow::Stop;
            }
            run.emitted += 1;
            return Flow::Continue;
        }
        let i = self.first_unpaired(&run.p);
        let start = if depth < run.forced.len() { run.forced[depth] as usize } else { i + 1 };
        let shard_locked = depth < run.floor;
        for j in start..self.faces {
            if run.p[j] != UNSET {
                continue;
            }
            // replayed nodes were counted by the run that reached them
            let replay = depth < run.forced.len() && j == run.forced[depth] as usize;
            if let Some(child) = self.try_child(run, depth, topo, i, j) {
                run.path.push(j as u8);
                let flow = if !replay && run.options.node_budget.is_some_and(|b| run.nodes >= b) {
                    run.stopped_at = Some(run.path.clone());
                    Flow::Stop
                } else {
                    if !replay {
                        run.nodes += 1;
                    }
                    self.descend(run, depth + 1, child)
                };
                run.path.pop();
                if let Flow::Stop = flow {
                    run.p[i] = UNSET;
                    run.p[j] = UNSET;
                    return Flow::Stop;
                }
            }
            run.p[i] = UNSET;
            run.p[j] = UNSET;
            if replay {
                run.forced = &run.forced[..depth];
            }
            if shard_locked {
                break;
            }
        }
        Flow::Continue
    }
}

/// Decision stack leading the search to the leaf `perm`: the partner of the
/// smallest unpaired face at each step. Running the subtree of this prefix
/// emits `perm` iff the search would emit it.
pub fn decision_path(perm: &[usize]) -> Vec<u8> {
    let mut paired = vec![false; perm.len()];
    let mut out = Vec::with_capacity(perm.len() / 2);
    for i in 0..perm.len() {
        if !paired[i] {
            paired[i] = true;
            paired[perm[i]] = true;
            out.push(perm[i] as u8);
        }
    }
    out
}

/// Collects every canonical pairing of a spec.
pub fn enumerate_pairings<F>(spec: &DipyramidSpec, mode: SymmetryMode, sink: &mut F) -> Result<u64>
where
    F: FnMut(&Pairing) -> Result<()>,
{
    let search = PairingSearch::new(spec, mode);
    let mut adapter = |perm: &[usize]| sink(&Pairing { perm: perm.to_vec() });
    Ok(search.run(SearchOptions::default(), &mut adapter)?.emitted)
}

pub const CHECKPOINT_VERSION: u32 = 1;

/// Resumable position of a single search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchCheckpoint {
    pub version: u32,
    pub spec: Vec<usize>,
    pub mode: SymmetryMode,
    pub prune_topology: bool,
    /// Partner chosen at each depth on the way to the next unprocessed node.
    pub decisions: Vec<u8>,
    pub emitted: u64,
}

impl SearchCheckpoint {
    pub fn save(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self)
            .map_err(|e| Error::Checkpoint(e.to_string()))?;
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, text + "\n")?;
        fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        let cp: SearchCheckpoint =
            serde_json::from_str(&text).map_err(|e| Error::Checkpoint(e.to_string()))?;
        if cp.version != CHECKPOINT_VERSION {
            return Err(Error::Checkpoint(format!("unsupported version {}", cp.version)));
        }
        Ok(cp)
    }
}

/// Runs a search in slices of `slice_nodes` nodes, saving a checkpoint after
/// each slice. Starts from `checkpoint_path` if it exists and `resume` is set.
/// Returns the total emitted count once the search is exhausted, or `None`
/// after `max_slices` slices.
pub fn enumerate_with_checkpoints<F>(
    search: &PairingSearch,
    prune_topology: bool,
    checkpoint_path: &Path,
    slice_nodes: u64,
    max_slices: Option<usize>,
    resume: bool,
    sink: &mut F,
) -> Result<Option<u64>>
where
    F: FnMut(&[usize]) -> Result<()>,
{
    let mut state = if resume && checkpoint_path.exists() {
        let cp = SearchCheckpoint::load(checkpoint_path)?;
        if cp.spec != search.spec().sides() || cp.mode != search.mode() {
            return Err(Error::Checkpoint("checkpoint belongs to a different search".into()));
        }
        cp
    } else {
        SearchCheckpoint {
            version: CHECKPOINT_VERSION,
            spec: search.spec().sides().to_vec(),
            mode: search.mode(),
            prune_topology,
            decisions: Vec::new(),
            emitted: 0,
        }
    };
    let mut first = resume && !state.decisions.is_empty();
    let mut slices = 0;
    loop {
        if max_slices.is_some_and(|m| slices >= m) {
            return Ok(None);
        }
        let options = SearchOptions { prune_topology: state.prune_topology, node_budget: Some(slice_nodes) };
        let at = first.then(|| state.decisions.clone());
        let outcome = search.run_subtree(&[], at.as_deref(), options, sink)?;
        first = true;
        slices += 1;
        state.emitted += outcome.emitted;
        match outcome.stopped_at {
            Some(decisions) => {
                state.decisions = decisions;
                state.save(checkpoint_path)?;
            }
            None => {
                state.decisions.clear();
                state.save(checkpoint_path)?;
                return Ok(Some(state.emitted));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &[usize]) -> DipyramidSpec {
        DipyramidSpec::new(s.to_vec()).unwrap()
    }

    fn collect(s: &DipyramidSpec, mode: SymmetryMode, prune: bool) -> Vec<Vec<usize>> {
        let search = PairingSearch::new(s, mode);
        let mut out = Vec::new();
        search
            .run(SearchOptions { prune_topology: prune, node_budget: None }, &mut |p: &[usize]| {
                out.push(p.to_vec());
                Ok(())
            })
            .unwrap();
        out
    }

    #[test]
    fn involution_counts() {
        assert_eq!(all_involutions(6).len(), 15);
        assert_eq!(all_involutions(8).len(), 105);
        assert!(all_involutions(5).is_empty());
    }

    #[test]
    fn validation_errors_are_distinct() {
        let s = spec(&[3]);
        assert!(matches!(
            Pairing::new(&s, vec![1, 0]),
            Err(Error::LengthMismatch { expected: 6, found: 2 })
        ));
        assert!(matches!(Pairing::new(&s, vec![0, 2, 1, 4, 3, 5]), Err(Error::FixedPoints(f)) if f == vec![0, 5]));
        assert!(matches!(Pairing::new(&s, vec![1, 2, 0, 4, 5, 3]), Err(Error::NotInvolution { .. })));
        assert!(matches!(Pairing::new(&s, vec![9, 2, 1, 4, 3, 5]), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn identity_only_group_gives_all_involutions() {
        // {3} with a group reduced to the identity: build the search and drop
        // every symmetry
        let s = spec(&[3]);
        let mut search = PairingSearch::new(&s, SymmetryMode::Rotational);
        search.group.clear();
        let mut n = 0;
        search.run(SearchOptions::default(), &mut |_: &[usize]| {
            n += 1;
            Ok(())
        })
        .unwrap();
        assert_eq!(n, 15);
    }

    #[test]
    fn output_is_strictly_increasing_and_canonical() {
        let s = spec(&[3, 4]);
        let out = collect(&s, SymmetryMode::Rotational, false);
        assert!(out.windows(2).all(|w| w[0] < w[1]));
        for p in out.iter().step_by(97) {
            let pairing = Pairing::new(&s, p.clone()).unwrap();
            assert!(is_canonical(&s, &pairing, SymmetryMode::Rotational));
        }
        assert_eq!(out.len() as u128, count_orbits_burnside(&s, SymmetryMode::Rotational));
    }

    #[test]
    fn burnside_agrees_with_search() {
        for sides in [vec![3], vec![4], vec![5], vec![3, 3]] {
            let s = spec(&sides);
            for mode in [SymmetryMode::Rotational, SymmetryMode::Full] {
                let n = collect(&s, mode, false).len() as u128;
                assert_eq!(n, count_orbits_burnside(&s, mode), "{sides:?} {mode}");
            }
        }
    }

    #[test]
    fn identity_never_rejects() {
        let s = spec(&[3]);
        let p = Pairing::new(&s, vec![3, 4, 5, 0, 1, 2]).unwrap();
        let id: Vec<usize> = (0..6).collect();
        assert_eq!(p.conjugate(&id, &id), p);
    }

    #[test]
    fn shards_partition_the_search() {
        let s = spec(&[3, 3]);
        let whole = collect(&s, SymmetryMode::Rotational, true);
        let search = PairingSearch::new(&s, SymmetryMode::Rotational);
        for depth in [1, 2, 3] {
            let mut joined = Vec::new();
            for shard in search.shards(depth, true) {
                search
                    .run_subtree(
                        &shard,
                        None,
                        SearchOptions { prune_topology: true, node_budget: None },
                        &mut |p: &[usize]| {
                            joined.push(p.to_vec());
                            Ok(())
                        },
                    )
                    .unwrap();
            }
            assert_eq!(joined, whole, "depth {depth}");
        }
    }

    #[test]
    fn decision_paths_select_single_leaves() {
        let s = spec(&[4]);
        let emitted = collect(&s, SymmetryMode::Rotational, false);
        let search = PairingSearch::new(&s, SymmetryMode::Rotational);
        let options = SearchOptions { prune_topology: false, node_budget: None };
        for p in all_involutions(8) {
            let mut seen = Vec::new();
            search
                .run_subtree(&decision_path(&p), None, options, &mut |q: &[usize]| {
                    seen.push(q.to_vec());
                    Ok(())
                })
                .unwrap();
            let expected = if emitted.contains(&p) { vec![p] } else { vec![] };
            assert_eq!(seen, expected);
        }
    }

    #[test]
    fn budgeted_runs_resume_to_the_same_output() {
        let s = spec(&[3, 4]);
        let whole = collect(&s, SymmetryMode::Rotational, false);
        let search = PairingSearch::new(&s, SymmetryMode::Rotational);
        for budget in [1u64, 7, 100] {
            let mut out = Vec::new();
            let mut at: Option<Vec<u8>> = None;
            loop {
                let outcome = search
                    .run_subtree(
                        &[],
                        at.as_deref(),
                        SearchOptions { prune_topology: false, node_budget: Some(budget) },
                        &mut |p: &[usize]| {
                            out.push(p.to_vec());
                            Ok(())
                        },
                    )
                    .unwrap();
                match outcome.stopped_at {
                    Some(d) => at = Some(d),
                    None => break,
                }
            }
            assert_eq!(out, whole, "budget {budget}");
        }
    }

    #[test]
    fn sink_errors_propagate() {
        let s = spec(&[3]);
        let search = PairingSearch::new(&s, SymmetryMode::Rotational);
        let r = search.run(SearchOptions::default(), &mut |_: &[usize]| Err(Error::Sink("full".into())));
        assert!(matches!(r, Err(Error::Sink(_))));
    }

    #[test]
    fn checkpoint_file_resume() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("search.ckpt");
        let s = spec(&[3, 4]);
        let search = PairingSearch::new(&s, SymmetryMode::Rotational);
        let whole = collect(&s, SymmetryMode::Rotational, true);

        let mut out = Vec::new();
        let first = enumerate_with_checkpoints(&search, true, &path, 50, Some(3), false, &mut |p: &[usize]| {
            out.push(p.to_vec());
            Ok(())
        })
        .unwrap();
        assert_eq!(first, None);
        let cp = SearchCheckpoint::load(&path).unwrap();
        assert_eq!(cp.emitted as usize, out.len());
        let done = enumerate_with_checkpoints(&search, true, &path, 50, None, true, &mut |p: &[usize]| {
            out.push(p.to_vec());
            Ok(())
        })
        .unwrap();
        assert_eq!(done, Some(whole.len() as u64));
        assert_eq!(out, whole);
    }
}
