//! The polyhedral complex obtained by gluing dipyramid faces in pairs, and
//! the topological filters applied to it.
//!
//! Face `i` is glued to face `p(i)` apex to apex, with `EqCw(i)` matched to
//! `EqCcw(p(i))` and `EqCcw(i)` to `EqCw(p(i))`. Since every dipyramid carries
//! the same orientation, this gluing reverses the induced orientation of the
//! two faces and the result is oriented.

use serde::{Deserialize, Serialize};

use crate::enumerate::{validate_pairing, Pairing};
use crate::error::Result;
use crate::polyhedra::{intra_adjacency, DipyramidSpec, EdgeSlot, Incidence, Slot};

#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes; the smaller root survives.
    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    /// Class index of every element, classes numbered by smallest member.
    pub(crate) fn labels(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut label = vec![usize::MAX; n];
        let mut out = vec![0; n];
        let mut count = 0;
        for x in 0..n {
            let r = self.find(x);
            if label[r] == usize::MAX {
                label[r] = count;
                count += 1;
            }
            out[x] = label[r];
        }
        (out, count)
    }
}

/// Cell counts of one vertex link.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkData {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub orientable: bool,
}

impl LinkData {
    pub fn euler(&self) -> i64 {
        self.vertices as i64 - self.edges as i64 + self.faces as i64
    }
}

/// One step of an edge-class cycle: leave `face` through edge `slot`, cross
/// the gluing into `p(face)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    pub face: usize,
    pub slot: EdgeSlot,
}

#[derive(Debug, Clone)]
pub struct EdgeClass {
    /// Polyhedral edges in the class.
    pub edges: Vec<usize>,
    /// Crossings met walking once around the class.
    pub cycle: Vec<Crossing>,
}

#[derive(Debug, Clone)]
pub struct GluedComplex {
    pub incidence: Incidence,
    pub pairing: Pairing,
    /// Polyhedral vertex → vertex class.
    pub vertex_class: Vec<usize>,
    pub vertex_classes: Vec<Vec<usize>>,
    /// Polyhedral edge → edge class.
    pub edge_class: Vec<usize>,
    pub edge_classes: Vec<EdgeClass>,
    pub links: Vec<LinkData>,
    /// Edge classes identified with themselves in reverse.
    pub reversed_edges: usize,
}

impl GluedComplex {
    pub fn spec(&self) -> &DipyramidSpec {
        &self.incidence.spec
    }

    pub fn num_vertex_classes(&self) -> usize {
        self.vertex_classes.len()
    }

    pub fn num_edge_classes(&self) -> usize {
        self.edge_classes.len()
    }

    /// Vertex class containing the poles of polyhedron 0.
    pub fn polar_class(&self) -> usize {
        self.vertex_class[0]
    }

    pub fn polar_classes(&self) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.incidence.num_vertices())
            .filter(|&v| self.incidence.is_pole[v])
            .map(|v| self.vertex_class[v])
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}


pub fn build_complex(spec: &DipyramidSpec, pairing: &Pairing) -> Result<GluedComplex> {
    validate_pairing(spec, pairing.as_slice())?;
    let inc = Incidence::new(spec);
    let p = pairing.as_slice();
    let faces = inc.num_faces();

    let mut vertices = UnionFind::new(inc.num_vertices());
    let mut edges = UnionFind::new(inc.num_edges());
    let mut ends = UnionFind::new(2 * inc.num_edges());
    for i in 0..faces {
        let j = p[i];
        if j < i {
            continue;
        }
        for slot in Slot::ALL {
            vertices.union(
                inc.corner_vertex[i][slot.index()],
                inc.corner_vertex[j][slot.glued().index()],
            );
        }
        for e in EdgeSlot::ALL {
            let (ei, ej) = (inc.face_edge[i][e.index()], inc.face_edge[j][e.glued().index()]);
            edges.union(ei, ej);
            let (a, b) = e.corners();
            for s in [a, b] {
                let vi = inc.corner_vertex[i][s.index()];
                let vj = inc.corner_vertex[j][s.glued().index()];
                ends.union(inc.edge_end(ei, vi), inc.edge_end(ej, vj));
            }
        }
    }

    let (vertex_class, nv) = vertices.labels();
    let mut vertex_classes = vec![Vec::new(); nv];
    for (v, &c) in vertex_class.iter().enumerate() {
        vertex_classes[c].push(v);
    }

    let (edge_class, ne) = edges.labels();
    let mut edge_classes: Vec<EdgeClass> =
        (0..ne).map(|_| EdgeClass { edges: Vec::new(), cycle: Vec::new() }).collect();
    for (e, &c) in edge_class.iter().enumerate() {
        edge_classes[c].edges.push(e);
    }
    let mut started = vec![false; ne];
    for f in 0..faces {
        for s in EdgeSlot::ALL {
            let c = edge_class[inc.face_edge[f][s.index()]];
            if started[c] {
                continue;
            }
            started[c] = true;
            edge_classes[c].cycle = trace_edge_cycle(spec, p, f, s);
        }
    }

    let (end_class, _) = ends.labels();
    let mut reversed_edges = 0;
    for class in &edge_classes {
        let e = class.edges[0];
        if end_class[2 * e] == end_class[2 * e + 1] {
            reversed_edges += 1;
        }
    }

    let links = link_data(&inc, p, &vertex_class, nv, &end_class);

    Ok(GluedComplex {
        incidence: inc,
        pairing: pairing.clone(),
        vertex_class,
        vertex_classes,
        edge_class,
        edge_classes,
        links,
        reversed_edges,
    })
}

/// Walks around an edge class: cross the gluing at the current face-edge,
/// then pivot to the other face of the new polyhedron sharing that edge.
fn trace_edge_cycle(spec: &DipyramidSpec, p: &[usize], face: usize, slot: EdgeSlot) -> Vec<Crossing> {
    let mut cycle = Vec::new();
    let (mut f, mut s) = (face, slot);
    loop {
        cycle.push(Crossing { face: f, slot: s });
        let (g, t) = intra_adjacency(spec, p[f], s.glued());
        f = g;
        s = t;
        if (f, s) == (face, slot) {
            return cycle;
        }
    }
}

fn link_data(
    inc: &Incidence,
    p: &[usize],
    vertex_class: &[usize],
    nv: usize,
    end_class: &[usize],
) -> Vec<LinkData> {
    let mut links = vec![LinkData { vertices: 0, edges: 0, faces: 0, orientable: true }; nv];
    for v in 0..inc.num_vertices() {
        let link = &mut links[vertex_class[v]];
        link.faces += 1;
        link.edges += inc.vertex_degree[v];
    }
    for link in &mut links {
        debug_assert_eq!(link.edges % 2, 0);
        link.edges /= 2;
    }
    let mut counted = vec![false; end_class.len()];
    for end in 0..end_class.len() {
        let c = end_class[end];
        if !counted[c] {
            counted[c] = true;
            links[vertex_class[inc.end_vertex(end)]].vertices += 1;
        }
    }

    for (c, orientable) in link_orientability(inc, p, vertex_class).into_iter().enumerate() {
        links[c].orientable = orientable;
    }
    links
}

/// Each link polygon inherits an orientation from its dipyramid. A gluing
/// identifies a side of one polygon with a side of another; the link is
/// orientable iff the polygons can be signed so every identification
/// reverses direction.
fn link_orientability(inc: &Incidence, p: &[usize], vertex_class: &[usize]) -> Vec<bool> {
    let nverts = inc.num_vertices();
    // union-find with parity relative to root
    let mut parent: Vec<usize> = (0..nverts).collect();
    let mut parity = vec![0u8; nverts];
    fn find(parent: &mut [usize], parity: &mut [u8], x: usize) -> (usize, u8) {
        let mut root = x;
        let mut acc = 0;
        while parent[root] != root {
            acc ^= parity[root];
            root = parent[root];
        }
        // compress
        let mut cur = x;
        let mut cur_par = acc;
        while parent[cur] != cur {
            let next = parent[cur];
            let next_par = cur_par ^ parity[cur];
            parent[cur] = root;
            parity[cur] = cur_par;
            cur = next;
            cur_par = next_par;
        }
        (root, acc)
    }
    let classes = vertex_class.iter().copied().max().map_or(0, |m| m + 1);
    let mut ok = vec![true; classes];

    // Direction of the link side at corner `slot` of face `f`: ends at the
    // incoming boundary edge, then the outgoing one.
    let side = |f: usize, slot: Slot| -> (usize, usize) {
        let (incoming, outgoing) = match slot {
            Slot::Apex => (EdgeSlot::Ccw, EdgeSlot::Cw),
            Slot::EqCw => (EdgeSlot::Cw, EdgeSlot::Equator),
            Slot::EqCcw => (EdgeSlot::Equator, EdgeSlot::Ccw),
        };
        let v = inc.corner_vertex[f][slot.index()];
        (
            inc.edge_end(inc.face_edge[f][incoming.index()], v),
            inc.edge_end(inc.face_edge[f][outgoing.index()], v),
        )
    };
    let end_image = |i: usize, j: usize, end: usize| -> usize {
        // map an edge end of face i to the matching end on face j
        let v = inc.end_vertex(end);
        let e = end / 2;
        let slot_e = EdgeSlot::ALL
            .into_iter()
            .find(|s| inc.face_edge[i][s.index()] == e)
            .expect("edge on face");
        let corner = Slot::ALL
            .into_iter()
            .find(|s| inc.corner_vertex[i][s.index()] == v)
            .expect("vertex on face");
        inc.edge_end(
            inc.face_edge[j][slot_e.glued().index()],
            inc.corner_vertex[j][corner.glued().index()],
        )
    };

    for i in 0..p.len() {
        let j = p[i];
        if j < i {
            continue;
        }
        for slot in Slot::ALL {
            let (a, b) = side(i, slot);
            let (c, d) = side(j, slot.glued());
            let (ia, ib) = (end_image(i, j, a), end_image(i, j, b));
            // same direction after mapping means orientations agree, which
            // must be compensated by opposite polygon signs
            let rel: u8 = if (ia, ib) == (c, d) {
                1
            } else {
                debug_assert_eq!((ia, ib), (d, c));
                0
            };
            let u = inc.corner_vertex[i][slot.index()];
            let w = inc.corner_vertex[j][slot.glued().index()];
            let (ru, pu) = find(&mut parent, &mut parity, u);
            let (rw, pw) = find(&mut parent, &mut parity, w);
            if ru == rw {
                if pu ^ pw != rel {
                    ok[vertex_class[u]] = false;
                }
            } else {
                parent[rw] = ru;
                parity[rw] = pu ^ pw ^ rel;
            }
        }
    }
    ok
}

/// Euler characteristic of the link of vertex class `class`.
pub fn link_euler(c: &GluedComplex, class: usize) -> i64 {
    c.links[class].euler()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RejectReason {
    NotInvolution,
    PolarClassSplit,
    NontorusLink(usize),
    NonorientableLink(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterOutcome {
    pub passed: bool,
    pub reason: Option<RejectReason>,
    pub boundary_count: usize,
    pub edge_class_count: usize,
}

/// Cheap checks first: involution, then polar classes, then link χ.
pub fn filter(spec: &DipyramidSpec, perm: &[usize]) -> FilterOutcome {
    let reject = |reason, boundary_count, edge_class_count| FilterOutcome {
        passed: false,
        reason: Some(reason),
        boundary_count,
        edge_class_count,
    };
    let pairing = match Pairing::new(spec, perm.to_vec()) {
        Ok(p) => p,
        Err(_) => return reject(RejectReason::NotInvolution, 0, 0),
    };
    if !polar_vertices_joined(spec, perm) {
        return reject(RejectReason::PolarClassSplit, 0, 0);
    }
    let c = build_complex(spec, &pairing).expect("validated pairing");
    let (nv, ne) = (c.num_vertex_classes(), c.num_edge_classes());
    for (class, link) in c.links.iter().enumerate() {
        if link.euler() != 0 {
            return reject(RejectReason::NontorusLink(class), nv, ne);
        }
        if !link.orientable {
            return reject(RejectReason::NonorientableLink(class), nv, ne);
        }
    }
    FilterOutcome { passed: true, reason: None, boundary_count: nv, edge_class_count: ne }
}

fn polar_vertices_joined(spec: &DipyramidSpec, perm: &[usize]) -> bool {
    let inc = Incidence::new(spec);
    let mut uf = UnionFind::new(inc.num_vertices());
    for (i, &j) in perm.iter().enumerate() {
        uf.union(inc.corner_vertex[i][0], inc.corner_vertex[j][0]);
    }
    let root = uf.find(0);
    (0..inc.num_vertices()).filter(|&v| inc.is_pole[v]).all(|v| uf.find(v) == root)
}

const MAX_VERTS: usize = 48;
const MAX_ENDS: usize = 128;

/// Static tables for [`PartialTopology`].
#[derive(Debug, Clone)]
pub(crate) struct TopologyTables {
    corner_vertex: Vec<[u8; 3]>,
    /// Per edge slot of face `i`, the two ends as (vertex-corner order).
    face_ends: Vec<[[u8; 2]; 3]>,
    vertex_degree: Vec<u8>,
    vertex_ends: Vec<Vec<u8>>,
    num_vertices: usize,
    num_ends: usize,
    num_poles: u8,
    is_pole: Vec<bool>,
}

impl TopologyTables {
    pub(crate) fn new(spec: &DipyramidSpec) -> Self {
        let inc = Incidence::new(spec);
        assert!(inc.num_vertices() <= MAX_VERTS && 2 * inc.num_edges() <= MAX_ENDS);
        let corner_vertex = inc
            .corner_vertex
            .iter()
            .map(|c| [c[0] as u8, c[1] as u8, c[2] as u8])
            .collect();
        let mut face_ends = Vec::new();
        for f in 0..inc.num_faces() {
            let mut row = [[0u8; 2]; 3];
            for e in EdgeSlot::ALL {
                let edge = inc.face_edge[f][e.index()];
                let (a, b) = e.corners();
                row[e.index()] = [
                    inc.edge_end(edge, inc.corner_vertex[f][a.index()]) as u8,
                    inc.edge_end(edge, inc.corner_vertex[f][b.index()]) as u8,
                ];
            }
            face_ends.push(row);
        }
        let mut vertex_ends = vec![Vec::new(); inc.num_vertices()];
        for end in 0..2 * inc.num_edges() {
            vertex_ends[inc.end_vertex(end)].push(end as u8);
        }
        TopologyTables {
            corner_vertex,
            face_ends,
            vertex_degree: inc.vertex_degree.iter().map(|&d| d as u8).collect(),
            vertex_ends,
            num_vertices: inc.num_vertices(),
            num_ends: 2 * inc.num_edges(),
            num_poles: 2 * spec.num_polyhedra() as u8,
            is_pole: inc.is_pole.clone(),
        }
    }
}

/// Union-find state over vertices and edge ends for a partial gluing. Copied
/// per search node. A vertex class whose corners are all glued is closed;
/// its link is final and can be checked before the pairing is complete.
#[derive(Clone, Copy)]
pub(crate) struct PartialTopology {
    vparent: [u8; MAX_VERTS],
    /// At roots: corners of the class on faces not yet glued.
    vopen: [u8; MAX_VERTS],
    vpoles: [u8; MAX_VERTS],
    eparent: [u8; MAX_ENDS],
}

impl PartialTopology {
    pub(crate) fn new(t: &TopologyTables) -> Self {
        let mut s = PartialTopology {
            vparent: [0; MAX_VERTS],
            vopen: [0; MAX_VERTS],
            vpoles: [0; MAX_VERTS],
            eparent: [0; MAX_ENDS],
        };
        for v in 0..t.num_vertices {
            s.vparent[v] = v as u8;
            s.vopen[v] = t.vertex_degree[v];
            s.vpoles[v] = u8::from(t.is_pole[v]);
        }
        for e in 0..t.num_ends {
            s.eparent[e] = e as u8;
        }
        s
    }

    fn vfind(&mut self, mut x: u8) -> u8 {
        while self.vparent[x as usize] != x {
            let gp = self.vparent[self.vparent[x as usize] as usize];
            self.vparent[x as usize] = gp;
            x = gp;
        }
        x
    }

    fn efind(&mut self, mut x: u8) -> u8 {
        while self.eparent[x as usize] != x {
            let gp = self.eparent[self.eparent[x as usize] as usize];
            self.eparent[x as usize] = gp;
            x = gp;
        }
        x
    }

    /// Glues face `i` to face `j` and checks every vertex class this closes.
    pub(crate) fn glue(
        &mut self,
        t: &TopologyTables,
        i: usize,
        j: usize,
    ) -> std::result::Result<(), RejectReason> {
        let mut roots = [0u8; 3];
        for (k, slot) in Slot::ALL.into_iter().enumerate() {
            let a = self.vfind(t.corner_vertex[i][slot.index()]);
            let b = self.vfind(t.corner_vertex[j][slot.glued().index()]);
            let root = if a == b {
                self.vopen[a as usize] -= 2;
                a
            } else {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                self.vparent[hi as usize] = lo;
                self.vopen[lo as usize] += self.vopen[hi as usize];
                self.vopen[lo as usize] -= 2;
                self.vpoles[lo as usize] += self.vpoles[hi as usize];
                lo
            };
            roots[k] = root;
        }
        for e in EdgeSlot::ALL {
            let ei = t.face_ends[i][e.index()];
            let ej = t.face_ends[j][e.glued().index()];
            // corners() order is (apex, cw) / (apex, ccw) / (cw, ccw); the
            // glued slot reverses cw/ccw, so the equator's ends swap
            let (j0, j1) = if e == EdgeSlot::Equator { (ej[1], ej[0]) } else { (ej[0], ej[1]) };
            for (a, b) in [(ei[0], j0), (ei[1], j1)] {
                let (ra, rb) = (self.efind(a), self.efind(b));
                if ra != rb {
                    let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
                    self.eparent[hi as usize] = lo;
                }
            }
        }
        for k in 0..3 {
            let r = self.vfind(roots[k]);
            if self.vopen[r as usize] == 0 && !roots[..k].iter().any(|&q| self.vfind(q) == r) {
                self.check_closed(t, r)?;
            }
        }
        Ok(())
    }

    fn check_closed(&mut self, t: &TopologyTables, root: u8) -> std::result::Result<(), RejectReason> {
        let poles = self.vpoles[root as usize];
        if poles != 0 && poles != t.num_poles {
            return Err(RejectReason::PolarClassSplit);
        }
        let mut faces = 0i32;
        let mut corners = 0i32;
        let mut seen = [false; MAX_ENDS];
        let mut link_vertices = 0i32;
        for v in 0..t.num_vertices {
            if self.vfind(v as u8) != root {
                continue;
            }
            faces += 1;
            corners += i32::from(t.vertex_degree[v]);
            for &end in &t.vertex_ends[v] {
                let r = self.efind(end) as usize;
                if !seen[r] {
                    seen[r] = true;
                    link_vertices += 1;
                }
            }
        }
        if link_vertices - corners / 2 + faces != 0 {
            return Err(RejectReason::NontorusLink(root as usize));
        }
        Ok(())
    }
}
