//! Ideal dipyramids: face numbering, corner and edge incidence, and the
//! combinatorial symmetry groups acting on face labels.
//!
//! A `k`-dipyramid has poles `N`, `S` and equatorial vertices
//! `e_0 .. e_{k-1}`. North face `m` is the triangle `(N, e_m, e_{m+1})`,
//! south face `m` is `(S, e_m, e_{m+1})`, so the two share the equatorial
//! edge `(e_m, e_{m+1})`.
//!
//! Faces of a whole [`DipyramidSpec`] are numbered with every north face
//! first (polyhedron 0, then 1, ...), followed by every south face in the
//! same polyhedron order.
//!
//! Corners of a face are `Apex` (the pole) and two equatorial corners named
//! so that `(Apex, EqCw, EqCcw)` is the boundary orientation of the face
//! seen from outside the dipyramid, using one fixed orientation for every
//! dipyramid. For a north face that means `EqCw = e_m`, `EqCcw = e_{m+1}`;
//! for a south face the two are exchanged.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest face count any supported spec can reach (`{3,3,3,3}` and `{6}`
/// families stay well below this).
pub const MAX_FACES: usize = 32;

/// Ordered multiset of dipyramid side counts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DipyramidSpec {
    sides: Vec<usize>,
}

impl DipyramidSpec {
    pub fn new(mut sides: Vec<usize>) -> Result<Self> {
        if sides.is_empty() {
            return Err(Error::InvalidSpec("no polyhedra".into()));
        }
        if let Some(k) = sides.iter().find(|&&k| k < 3) {
            return Err(Error::InvalidSpec(format!("side count {k} is below 3")));
        }
        sides.sort_unstable();
        let spec = DipyramidSpec { sides };
        if spec.num_faces() > MAX_FACES {
            return Err(Error::InvalidSpec(format!(
                "{} faces exceeds the supported maximum of {MAX_FACES}",
                spec.num_faces()
            )));
        }
        Ok(spec)
    }

    pub fn sides(&self) -> &[usize] {
        &self.sides
    }

    pub fn num_polyhedra(&self) -> usize {
        self.sides.len()
    }

    /// Number of faces on one side of the equators, `Σ k_i`.
    pub fn half_faces(&self) -> usize {
        self.sides.iter().sum()
    }

    pub fn num_faces(&self) -> usize {
        2 * self.half_faces()
    }

    pub fn num_vertices(&self) -> usize {
        self.sides.iter().map(|k| k + 2).sum()
    }

    pub fn num_edges(&self) -> usize {
        3 * self.half_faces()
    }

    /// Index of north face 0 of polyhedron `p`.
    pub fn north_offset(&self, p: usize) -> usize {
        self.sides[..p].iter().sum()
    }

    pub fn south_offset(&self, p: usize) -> usize {
        self.half_faces() + self.north_offset(p)
    }

    pub fn vertex_offset(&self, p: usize) -> usize {
        self.sides[..p].iter().map(|k| k + 2).sum()
    }

    pub fn face_index(&self, face: FaceInfo) -> usize {
        let base = match face.hemisphere {
            Hemisphere::North => self.north_offset(face.polyhedron),
            Hemisphere::South => self.south_offset(face.polyhedron),
        };
        base + face.position
    }

    pub fn face_info(&self, index: usize) -> FaceInfo {
        let half = self.half_faces();
        assert!(index < 2 * half, "face {index} out of range");
        let (hemisphere, mut rest) = if index < half {
            (Hemisphere::North, index)
        } else {
            (Hemisphere::South, index - half)
        };
        for (polyhedron, &k) in self.sides.iter().enumerate() {
            if rest < k {
                return FaceInfo { polyhedron, hemisphere, position: rest };
            }
            rest -= k;
        }
        unreachable!()
    }
}

impl fmt::Display for DipyramidSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sides.iter().map(|k| k.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Hemisphere {
    North,
    South,
}

/// Location of a face: owning polyhedron, hemisphere, position around the axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FaceInfo {
    pub polyhedron: usize,
    pub hemisphere: Hemisphere,
    pub position: usize,
}

/// Face numbering for a spec.
#[derive(Debug, Clone)]
pub struct FaceTable {
    faces: Vec<FaceInfo>,
}

impl FaceTable {
    pub fn faces(&self) -> &[FaceInfo] {
        &self.faces
    }

    pub fn get(&self, index: usize) -> FaceInfo {
        self.faces[index]
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }
}

pub fn face_table(spec: &DipyramidSpec) -> FaceTable {
    FaceTable { faces: (0..spec.num_faces()).map(|i| spec.face_info(i)).collect() }
}

/// Corner of a triangular face.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Slot {
    Apex,
    EqCw,
    EqCcw,
}

impl Slot {
    pub const ALL: [Slot; 3] = [Slot::Apex, Slot::EqCw, Slot::EqCcw];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Corner matched to this one on the partner face of a gluing.
    pub fn glued(self) -> Slot {
        match self {
            Slot::Apex => Slot::Apex,
            Slot::EqCw => Slot::EqCcw,
            Slot::EqCcw => Slot::EqCw,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Corner {
    pub face: usize,
    pub slot: Slot,
}

/// Edge of a triangular face: the two polar edges and the equatorial edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeSlot {
    /// Polar edge from the apex to `EqCw`.
    Cw,
    /// Polar edge from the apex to `EqCcw`.
    Ccw,
    Equator,
}

impl EdgeSlot {
    pub const ALL: [EdgeSlot; 3] = [EdgeSlot::Cw, EdgeSlot::Ccw, EdgeSlot::Equator];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn corners(self) -> (Slot, Slot) {
        match self {
            EdgeSlot::Cw => (Slot::Apex, Slot::EqCw),
            EdgeSlot::Ccw => (Slot::Apex, Slot::EqCcw),
            EdgeSlot::Equator => (Slot::EqCw, Slot::EqCcw),
        }
    }

    /// Edge slot on the partner face under the gluing corner rule.
    pub fn glued(self) -> EdgeSlot {
        match self {
            EdgeSlot::Cw => EdgeSlot::Ccw,
            EdgeSlot::Ccw => EdgeSlot::Cw,
            EdgeSlot::Equator => EdgeSlot::Equator,
        }
    }
}

/// Local vertex numbering within one dipyramid: 0 = N, 1 = S, 2 + m = e_m.
pub fn local_corner_vertex(k: usize, hemisphere: Hemisphere, m: usize, slot: Slot) -> usize {
    let eq = |i: usize| 2 + i % k;
    match (hemisphere, slot) {
        (Hemisphere::North, Slot::Apex) => 0,
        (Hemisphere::South, Slot::Apex) => 1,
        (Hemisphere::North, Slot::EqCw) | (Hemisphere::South, Slot::EqCcw) => eq(m),
        (Hemisphere::North, Slot::EqCcw) | (Hemisphere::South, Slot::EqCw) => eq(m + 1),
    }
}

/// The other face of the same dipyramid containing the given edge, with the
/// slot that edge occupies there.
pub fn intra_adjacency(spec: &DipyramidSpec, face: usize, edge: EdgeSlot) -> (usize, EdgeSlot) {
    let info = spec.face_info(face);
    let k = spec.sides()[info.polyhedron];
    let m = info.position;
    let prev = (m + k - 1) % k;
    let next = (m + 1) % k;
    let at = |hemisphere, position| {
        spec.face_index(FaceInfo { polyhedron: info.polyhedron, hemisphere, position })
    };
    match (info.hemisphere, edge) {
        (Hemisphere::North, EdgeSlot::Cw) => (at(Hemisphere::North, prev), EdgeSlot::Ccw),
        (Hemisphere::North, EdgeSlot::Ccw) => (at(Hemisphere::North, next), EdgeSlot::Cw),
        (Hemisphere::South, EdgeSlot::Cw) => (at(Hemisphere::South, next), EdgeSlot::Ccw),
        (Hemisphere::South, EdgeSlot::Ccw) => (at(Hemisphere::South, prev), EdgeSlot::Cw),
        (Hemisphere::North, EdgeSlot::Equator) => (at(Hemisphere::South, m), EdgeSlot::Equator),
        (Hemisphere::South, EdgeSlot::Equator) => (at(Hemisphere::North, m), EdgeSlot::Equator),
    }
}

/// Precomputed incidence of faces, corners, polyhedral vertices and edges.
///
/// Vertex and edge ids are global across the spec. Edge ends are numbered
/// `2 * edge + end` where end 0 is the endpoint with the smaller vertex id.
#[derive(Debug, Clone)]
pub struct Incidence {
    pub spec: DipyramidSpec,
    /// `corner_vertex[face][slot]`
    pub corner_vertex: Vec<[usize; 3]>,
    /// `face_edge[face][edge_slot]`
    pub face_edge: Vec<[usize; 3]>,
    /// Endpoints of each edge, smaller vertex first.
    pub edge_vertices: Vec<(usize, usize)>,
    pub vertex_polyhedron: Vec<usize>,
    pub is_pole: Vec<bool>,
    /// Polyhedral vertex → number of faces incident to it.
    pub vertex_degree: Vec<usize>,
}

impl Incidence {
    pub fn new(spec: &DipyramidSpec) -> Self {
        let faces = spec.num_faces();
        let mut corner_vertex = Vec::with_capacity(faces);
        for i in 0..faces {
            let info = spec.face_info(i);
            let k = spec.sides()[info.polyhedron];
            let base = spec.vertex_offset(info.polyhedron);
            let mut row = [0; 3];
            for slot in Slot::ALL {
                row[slot.index()] =
                    base + local_corner_vertex(k, info.hemisphere, info.position, slot);
            }
            corner_vertex.push(row);
        }

        let mut edge_ids: HashMap<(usize, usize), usize> = HashMap::new();
        let mut edge_vertices = Vec::new();
        let mut face_edge = Vec::with_capacity(faces);
        for corners in &corner_vertex {
            let mut row = [0; 3];
            for edge in EdgeSlot::ALL {
                let (a, b) = edge.corners();
                let (u, v) = (corners[a.index()], corners[b.index()]);
                let key = (u.min(v), u.max(v));
                let id = *edge_ids.entry(key).or_insert_with(|| {
                    edge_vertices.push(key);
                    edge_vertices.len() - 1
                });
                row[edge.index()] = id;
            }
            face_edge.push(row);
        }
        debug_assert_eq!(edge_vertices.len(), spec.num_edges());

        let mut vertex_polyhedron = Vec::new();
        let mut is_pole = Vec::new();
        for (p, &k) in spec.sides().iter().enumerate() {
            for local in 0..k + 2 {
                vertex_polyhedron.push(p);
                is_pole.push(local < 2);
            }
        }
        let mut vertex_degree = vec![0; spec.num_vertices()];
        for corners in &corner_vertex {
            for &v in corners {
                vertex_degree[v] += 1;
            }
        }

        Incidence {
            spec: spec.clone(),
            corner_vertex,
            face_edge,
            edge_vertices,
            vertex_polyhedron,
            is_pole,
            vertex_degree,
        }
    }

    pub fn num_faces(&self) -> usize {
        self.corner_vertex.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_polyhedron.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edge_vertices.len()
    }

    /// Edge-end id of `edge` at `vertex`.
    pub fn edge_end(&self, edge: usize, vertex: usize) -> usize {
        let (u, v) = self.edge_vertices[edge];
        debug_assert!(vertex == u || vertex == v);
        2 * edge + usize::from(vertex != u)
    }

    pub fn end_vertex(&self, end: usize) -> usize {
        let (u, v) = self.edge_vertices[end / 2];
        if end.is_multiple_of(2) {
            u
        } else {
            v
        }
    }
}

/// Which symmetries of the dipyramids are used when identifying pairings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SymmetryMode {
    /// Orientation-preserving symmetries only; mirror-image gluings stay distinct.
    #[default]
    Rotational,
    /// Adds a simultaneous reflection of every dipyramid.
    Full,
}

impl std::str::FromStr for SymmetryMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rotational" => Ok(SymmetryMode::Rotational),
            "full" => Ok(SymmetryMode::Full),
            other => Err(Error::Parse { position: 0, message: format!("unknown mode {other:?}") }),
        }
    }
}

impl fmt::Display for SymmetryMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SymmetryMode::Rotational => "rotational",
            SymmetryMode::Full => "full",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Preserving,
    Reversing,
}

/// A combinatorial symmetry of the polyhedron set, as it acts on faces.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymmetryElement {
    pub face_perm: Vec<usize>,
    /// `true` where the face's `EqCw`/`EqCcw` corners are exchanged.
    pub corner_swap: Vec<bool>,
    pub orientation: Orientation,
}

impl SymmetryElement {
    pub fn inverse_perm(&self) -> Vec<usize> {
        let mut inv = vec![0; self.face_perm.len()];
        for (i, &j) in self.face_perm.iter().enumerate() {
            inv[j] = i;
        }
        inv
    }

    /// Image of a corner.
    pub fn map_corner(&self, corner: Corner) -> Corner {
        let slot = match (corner.slot, self.corner_swap[corner.face]) {
            (Slot::Apex, _) => Slot::Apex,
            (s, false) => s,
            (s, true) => s.glued(),
        };
        Corner { face: self.face_perm[corner.face], slot }
    }

    pub fn is_identity(&self) -> bool {
        self.face_perm.iter().enumerate().all(|(i, &j)| i == j)
    }
}

/// Turns a map on polyhedral vertices into its action on faces.
fn element_from_vertex_map(inc: &Incidence, vmap: &[usize]) -> SymmetryElement {
    let mut by_vertices: HashMap<[usize; 3], usize> = HashMap::new();
    for (face, corners) in inc.corner_vertex.iter().enumerate() {
        let mut key = *corners;
        key[1..].sort_unstable();
        by_vertices.insert(key, face);
    }
    let faces = inc.num_faces();
    let mut face_perm = vec![0; faces];
    let mut corner_swap = vec![false; faces];
    for (face, corners) in inc.corner_vertex.iter().enumerate() {
        let image = [vmap[corners[0]], vmap[corners[1]], vmap[corners[2]]];
        let mut key = image;
        key[1..].sort_unstable();
        let target = by_vertices[&key];
        face_perm[face] = target;
        corner_swap[face] = inc.corner_vertex[target][Slot::EqCw.index()] != image[1];
    }
    // Every face flips together or none does; the first face decides.
    let orientation = if corner_swap[0] { Orientation::Reversing } else { Orientation::Preserving };
    SymmetryElement { face_perm, corner_swap, orientation }
}

fn identity_vertex_map(n: usize) -> Vec<usize> {
    (0..n).collect()
}

fn dipyramid_generators(spec: &DipyramidSpec, mode: SymmetryMode) -> Vec<Vec<usize>> {
    let nv = spec.num_vertices();
    let mut gens = Vec::new();
    for (p, &k) in spec.sides().iter().enumerate() {
        let base = spec.vertex_offset(p);
        let eq = |m: usize| base + 2 + m % k;

        let mut rotate = identity_vertex_map(nv);
        let mut flip = identity_vertex_map(nv);
        for m in 0..k {
            rotate[eq(m)] = eq(m + 1);
            flip[eq(m)] = eq(k - m);
        }
        flip[base] = base + 1;
        flip[base + 1] = base;
        gens.push(rotate);
        gens.push(flip);
    }
    for p in 0..spec.num_polyhedra() {
        for q in p + 1..spec.num_polyhedra() {
            if spec.sides()[p] != spec.sides()[q] {
                continue;
            }
            let mut swap = identity_vertex_map(nv);
            let (bp, bq) = (spec.vertex_offset(p), spec.vertex_offset(q));
            for local in 0..spec.sides()[p] + 2 {
                swap[bp + local] = bq + local;
                swap[bq + local] = bp + local;
            }
            gens.push(swap);
        }
    }
    if mode == SymmetryMode::Full {
        let mut mirror = identity_vertex_map(nv);
        for (p, &k) in spec.sides().iter().enumerate() {
            let base = spec.vertex_offset(p);
            for m in 0..k {
                mirror[base + 2 + m] = base + 2 + (k - m) % k;
            }
        }
        gens.push(mirror);
    }
    gens
}

/// Explicit closure of the symmetry group. The identity comes first; the
/// remaining elements follow in breadth-first discovery order.
pub fn symmetry_group(spec: &DipyramidSpec, mode: SymmetryMode) -> Vec<SymmetryElement> {
    let inc = Incidence::new(spec);
    let gens = dipyramid_generators(spec, mode);
    let identity = identity_vertex_map(spec.num_vertices());

    let mut seen: HashMap<Vec<usize>, ()> = HashMap::new();
    let mut order = vec![identity.clone()];
    seen.insert(identity.clone(), ());
    let mut queue = VecDeque::from([identity]);
    while let Some(current) = queue.pop_front() {
        for g in &gens {
            let next: Vec<usize> = current.iter().map(|&v| g[v]).collect();
            if seen.insert(next.clone(), ()).is_none() {
                order.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    order.iter().map(|vmap| element_from_vertex_map(&inc, vmap)).collect()
}

/// Dipyramid sets dual to a Mom-`n`: partitions of `3n` into `n` parts of
/// size at least 2, with the 2's dropped.
pub fn pyramid_sets_for_mom(n: usize) -> Result<Vec<DipyramidSpec>> {
    if !(2..=4).contains(&n) {
        return Err(Error::Domain(format!("Mom-{n} is outside the supported range 2..=4")));
    }
    let mut out = Vec::new();
    let mut parts = Vec::new();
    partitions(3 * n, n, 2, &mut parts, &mut out);
    let mut specs: Vec<DipyramidSpec> = out
        .into_iter()
        .filter_map(|p: Vec<usize>| {
            let sides: Vec<usize> = p.into_iter().filter(|&k| k > 2).collect();
            (!sides.is_empty()).then(|| DipyramidSpec::new(sides).expect("sides are >= 3"))
        })
        .collect();
    specs.sort_by(|a, b| b.num_polyhedra().cmp(&a.num_polyhedra()).then(a.cmp(b)));
    specs.dedup();
    Ok(specs)
}

/// Non-decreasing partitions of `total` into exactly `count` parts `>= min`.
fn partitions(
    total: usize,
    count: usize,
    min: usize,
    parts: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if count == 0 {
        if total == 0 {
            out.push(parts.clone());
        }
        return;
    }
    let mut k = min;
    while k * count <= total {
        parts.push(k);
        partitions(total - k, count - 1, k, parts, out);
        parts.pop();
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &[usize]) -> DipyramidSpec {
        DipyramidSpec::new(s.to_vec()).unwrap()
    }

    #[test]
    fn pyramid_sets() {
        let show = |n| -> Vec<Vec<usize>> {
            pyramid_sets_for_mom(n).unwrap().iter().map(|s| s.sides().to_vec()).collect()
        };
        assert_eq!(show(2), vec![vec![3, 3], vec![4]]);
        assert_eq!(show(3), vec![vec![3, 3, 3], vec![3, 4], vec![5]]);
        assert_eq!(
            show(4),
            vec![vec![3, 3, 3, 3], vec![3, 3, 4], vec![3, 5], vec![4, 4], vec![6]]
        );
        assert!(pyramid_sets_for_mom(1).is_err());
        assert!(pyramid_sets_for_mom(5).is_err());
    }

    #[test]
    fn face_numbering_matches_worked_example() {
        let s = spec(&[3, 3, 4]);
        let info = s.face_info(7);
        assert_eq!((info.polyhedron, info.hemisphere, info.position), (2, Hemisphere::North, 1));
        let info = s.face_info(13);
        assert_eq!((info.polyhedron, info.hemisphere, info.position), (1, Hemisphere::South, 0));
        // square dipyramid: faces 6..=9 and 16..=19
        let square: Vec<usize> =
            (0..20).filter(|&i| s.face_info(i).polyhedron == 2).collect();
        assert_eq!(square, vec![6, 7, 8, 9, 16, 17, 18, 19]);
        assert_eq!(spec(&[3, 3, 3, 3]).num_faces(), 24);

        let single = face_table(&spec(&[4]));
        for i in 0..8 {
            let expect = if i < 4 { Hemisphere::North } else { Hemisphere::South };
            assert_eq!(single.get(i).hemisphere, expect);
        }
    }

    #[test]
    fn face_index_round_trip() {
        for s in [spec(&[3]), spec(&[3, 3, 4]), spec(&[3, 5]), spec(&[6])] {
            for i in 0..s.num_faces() {
                assert_eq!(s.face_index(s.face_info(i)), i);
            }
        }
    }

    #[test]
    fn spec_validation() {
        assert!(DipyramidSpec::new(vec![]).is_err());
        assert!(DipyramidSpec::new(vec![3, 2]).is_err());
        assert_eq!(spec(&[4, 3, 3]).sides(), &[3, 3, 4]);
    }

    #[test]
    fn intra_adjacency_examples() {
        let s = spec(&[3]);
        assert_eq!(intra_adjacency(&s, 1, EdgeSlot::Equator), (4, EdgeSlot::Equator));
        assert_eq!(intra_adjacency(&s, 0, EdgeSlot::Ccw), (1, EdgeSlot::Cw));
        let s4 = spec(&[4]);
        for face in 0..8 {
            let mut others: Vec<usize> =
                EdgeSlot::ALL.iter().map(|&e| intra_adjacency(&s4, face, e).0).collect();
            others.sort_unstable();
            others.dedup();
            assert_eq!(others.len(), 3);
            assert!(!others.contains(&face));
        }
    }

    #[test]
    fn intra_adjacency_is_an_involution_sharing_the_edge() {
        for s in [spec(&[3]), spec(&[3, 4]), spec(&[6])] {
            let inc = Incidence::new(&s);
            for face in 0..s.num_faces() {
                for e in EdgeSlot::ALL {
                    let (g, t) = intra_adjacency(&s, face, e);
                    assert_eq!(intra_adjacency(&s, g, t), (face, e));
                    assert_eq!(inc.face_edge[face][e.index()], inc.face_edge[g][t.index()]);
                }
            }
        }
    }

    #[test]
    fn each_edge_in_exactly_two_faces() {
        let s = spec(&[3, 3, 4]);
        let inc = Incidence::new(&s);
        assert_eq!(inc.num_edges(), 30);
        let mut count = vec![0; inc.num_edges()];
        for row in &inc.face_edge {
            for &e in row {
                count[e] += 1;
            }
        }
        assert!(count.iter().all(|&c| c == 2));
    }

    #[test]
    fn group_orders() {
        assert_eq!(symmetry_group(&spec(&[4]), SymmetryMode::Rotational).len(), 8);
        assert_eq!(symmetry_group(&spec(&[3, 3]), SymmetryMode::Rotational).len(), 72);
        assert_eq!(symmetry_group(&spec(&[3, 4]), SymmetryMode::Rotational).len(), 48);
        assert_eq!(symmetry_group(&spec(&[4]), SymmetryMode::Full).len(), 16);
        assert_eq!(symmetry_group(&spec(&[3, 3]), SymmetryMode::Full).len(), 144);
        let g = symmetry_group(&spec(&[3]), SymmetryMode::Rotational);
        assert!(g[0].is_identity());
        assert!(g.iter().all(|e| e.orientation == Orientation::Preserving));
    }

    #[test]
    fn group_is_closed_and_respects_structure() {
        for (sides, mode) in [
            (vec![3, 3], SymmetryMode::Rotational),
            (vec![3, 4], SymmetryMode::Full),
            (vec![5], SymmetryMode::Full),
        ] {
            let s = spec(&sides);
            let g = symmetry_group(&s, mode);
            let perms: std::collections::HashSet<Vec<usize>> =
                g.iter().map(|e| e.face_perm.clone()).collect();
            assert_eq!(perms.len(), g.len());
            for a in &g {
                assert!(perms.contains(&a.inverse_perm()));
                for b in g.iter().take(12) {
                    let comp: Vec<usize> = b.face_perm.iter().map(|&x| a.face_perm[x]).collect();
                    assert!(perms.contains(&comp));
                }
                for face in 0..s.num_faces() {
                    let (p, q) = (s.face_info(face), s.face_info(a.face_perm[face]));
                    assert_eq!(s.sides()[p.polyhedron], s.sides()[q.polyhedron]);
                    let image = a.map_corner(Corner { face, slot: Slot::Apex });
                    assert_eq!(image.slot, Slot::Apex);
                    // conjugating adjacency gives adjacency
                    for e in EdgeSlot::ALL {
                        let (nb, _) = intra_adjacency(&s, face, e);
                        let mapped: Vec<usize> = EdgeSlot::ALL
                            .iter()
                            .map(|&t| intra_adjacency(&s, a.face_perm[face], t).0)
                            .collect();
                        assert!(mapped.contains(&a.face_perm[nb]));
                    }
                }
            }
        }
    }
}
