//! Subdivision of a glued dipyramid complex into tetrahedra, with a plain
//! text gluing-table format.
//!
//! The tetrahedron for position `m` of a `k`-dipyramid has vertex slots
//! `0 = N`, `1 = S`, `2 = e_m`, `3 = e_{m+1}`. Face `f` of a tetrahedron is
//! the face opposite slot `f`. A gluing of face `f` of tetrahedron `t` is a
//! target `(t', f')` and a slot permutation `π` with `π(f) = f'`, carrying
//! the vertices of `t` on that face to the vertices of `t'` they meet.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::complex::{GluedComplex, UnionFind};
use crate::error::{Error, Result};
use crate::polyhedra::{Hemisphere, Slot};

pub type SlotPerm = [u8; 4];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FaceGluing {
    pub tet: usize,
    pub face: u8,
    pub perm: SlotPerm,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TetrahedralTriangulation {
    /// `gluings[t][f]` for every tetrahedron and face.
    pub gluings: Vec<[FaceGluing; 4]>,
}

/// Where a tetrahedron sits in the dipyramid complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TetOrigin {
    pub polyhedron: usize,
    pub position: usize,
}

fn invert(perm: SlotPerm) -> SlotPerm {
    let mut inv = [0u8; 4];
    for (i, &j) in perm.iter().enumerate() {
        inv[j as usize] = i as u8;
    }
    inv
}

fn is_permutation(perm: SlotPerm) -> bool {
    let mut seen = [false; 4];
    perm.iter().all(|&j| j < 4 && !std::mem::replace(&mut seen[j as usize], true))
}

/// Tetrahedra in dipyramid order, `k` per dipyramid.
pub fn tet_origins(c: &GluedComplex) -> Vec<TetOrigin> {
    c.spec()
        .sides()
        .iter()
        .enumerate()
        .flat_map(|(polyhedron, &k)| (0..k).map(move |position| TetOrigin { polyhedron, position }))
        .collect()
}

/// Global polyhedral vertex at a slot of a tetrahedron.
pub fn slot_vertex(c: &GluedComplex, origin: TetOrigin, slot: usize) -> usize {
    let spec = c.spec();
    let k = spec.sides()[origin.polyhedron];
    let local = match slot {
        0 => 0,
        1 => 1,
        2 => 2 + origin.position,
        _ => 2 + (origin.position + 1) % k,
    };
    spec.vertex_offset(origin.polyhedron) + local
}

/// Link Euler characteristics of the tetrahedral model indexed by the
/// vertex classes of `c`, or `None` if the two models disagree on which
/// vertices are identified.
pub fn link_euler_by_class(c: &GluedComplex, t: &TetrahedralTriangulation) -> Option<Vec<i64>> {
    let origins = tet_origins(c);
    if origins.len() != t.num_tetrahedra() {
        return None;
    }
    let (tet_class, count) = t.vertex_classes();
    if count != c.num_vertex_classes() {
        return None;
    }
    let mut to_poly = vec![usize::MAX; count];
    for (ti, &origin) in origins.iter().enumerate() {
        for slot in 0..4 {
            let poly = c.vertex_class[slot_vertex(c, origin, slot)];
            let tc = tet_class[4 * ti + slot];
            if to_poly[tc] == usize::MAX {
                to_poly[tc] = poly;
            } else if to_poly[tc] != poly {
                return None;
            }
        }
    }
    let mut out = vec![0; count];
    for (tc, euler) in t.link_euler().into_iter().enumerate() {
        out[to_poly[tc]] = euler;
    }
    Some(out)
}

pub fn subdivide_to_tetrahedra(c: &GluedComplex) -> TetrahedralTriangulation {
    let spec = c.spec();
    let tet_base: Vec<usize> = spec
        .sides()
        .iter()
        .scan(0, |acc, &k| {
            let base = *acc;
            *acc += k;
            Some(base)
        })
        .collect();
    let total: usize = spec.sides().iter().sum();
    let placeholder = FaceGluing { tet: usize::MAX, face: 0, perm: [0, 1, 2, 3] };
    let mut gluings = vec![[placeholder; 4]; total];

    // the dipyramid face occupies face 1 (north) or 0 (south) of its tetrahedron
    let locate = |face: usize| {
        let info = spec.face_info(face);
        let tet = tet_base[info.polyhedron] + info.position;
        match info.hemisphere {
            Hemisphere::North => (tet, 1u8, [0u8, 2, 3]),
            Hemisphere::South => (tet, 0u8, [1u8, 3, 2]),
        }
    };

    for (polyhedron, &k) in spec.sides().iter().enumerate() {
        for m in 0..k {
            let t = tet_base[polyhedron] + m;
            let u = tet_base[polyhedron] + (m + 1) % k;
            gluings[t][2] = FaceGluing { tet: u, face: 3, perm: [0, 1, 3, 2] };
            gluings[u][3] = FaceGluing { tet: t, face: 2, perm: [0, 1, 3, 2] };
        }
    }
    let p = c.pairing.as_slice();
    for (i, &j) in p.iter().enumerate() {
        let (ti, fi, si) = locate(i);
        let (tj, fj, sj) = locate(j);
        let mut perm = [0u8; 4];
        perm[fi as usize] = fj;
        for slot in Slot::ALL {
            perm[si[slot.index()] as usize] = sj[slot.glued().index()];
        }
        gluings[ti][fi as usize] = FaceGluing { tet: tj, face: fj, perm };
    }
    let t = TetrahedralTriangulation { gluings };
    debug_assert!(t.validate().is_ok());
    t
}

impl TetrahedralTriangulation {
    pub fn num_tetrahedra(&self) -> usize {
        self.gluings.len()
    }

    /// Checks that the gluing table is a fixed-point-free involution on
    /// `(tet, face)` with mutually inverse slot permutations.
    pub fn validate(&self) -> Result<()> {
        let n = self.gluings.len();
        let bad = |t: usize, f: usize, why: &str| Error::Domain(format!("tetrahedron {t} face {f}: {why}"));
        for (t, faces) in self.gluings.iter().enumerate() {
            for (f, g) in faces.iter().enumerate() {
                if g.tet >= n || g.face > 3 {
                    return Err(bad(t, f, "target out of range"));
                }
                if !is_permutation(g.perm) {
                    return Err(bad(t, f, "not a permutation"));
                }
                if g.perm[f] != g.face {
                    return Err(bad(t, f, "permutation does not carry the face to its target"));
                }
                if g.tet == t && g.face as usize == f {
                    return Err(bad(t, f, "glued to itself"));
                }
                let back = self.gluings[g.tet][g.face as usize];
                if back.tet != t || back.face as usize != f || back.perm != invert(g.perm) {
                    return Err(bad(t, f, "gluing is not reciprocated"));
                }
            }
        }
        Ok(())
    }

    /// Vertex classes as a label per `(tet, slot)`, numbered by first
    /// appearance.
    pub fn vertex_classes(&self) -> (Vec<usize>, usize) {
        let mut uf = UnionFind::new(4 * self.gluings.len());
        for (t, faces) in self.gluings.iter().enumerate() {
            for (f, g) in faces.iter().enumerate() {
                for v in (0..4).filter(|&v| v != f) {
                    uf.union(4 * t + v, 4 * g.tet + g.perm[v] as usize);
                }
            }
        }
        uf.labels()
    }

    /// Euler characteristic of each vertex link, indexed by class label.
    ///
    /// Each corner contributes a triangle; link edges pair up across glued
    /// faces; link vertices are classes of tetrahedron edge ends.
    pub fn link_euler(&self) -> Vec<i64> {
        let (class, count) = self.vertex_classes();
        let end = |t: usize, v: usize, w: usize| 16 * t + 4 * v + w;
        let mut uf = UnionFind::new(16 * self.gluings.len());
        for (t, faces) in self.gluings.iter().enumerate() {
            for (f, g) in faces.iter().enumerate() {
                for v in (0..4).filter(|&v| v != f) {
                    for w in (0..4).filter(|&w| w != f && w != v) {
                        uf.union(end(t, v, w), end(g.tet, g.perm[v] as usize, g.perm[w] as usize));
                    }
                }
            }
        }
        let (end_class, _) = uf.labels();
        let mut corners = vec![0i64; count];
        let mut ends = vec![std::collections::BTreeSet::new(); count];
        for t in 0..self.gluings.len() {
            for v in 0..4 {
                let c = class[4 * t + v];
                corners[c] += 1;
                for w in (0..4).filter(|&w| w != v) {
                    ends[c].insert(end_class[end(t, v, w)]);
                }
            }
        }
        // V - E + F with E = 3F/2
        (0..count).map(|c| ends[c].len() as i64 - corners[c] / 2).collect()
    }

    /// `tetrahedra N` then one line per tetrahedron with four entries
    /// `target:perm`, one per face in order.
    pub fn to_text(&self) -> String {
        let mut out = format!("tetrahedra {}\n", self.gluings.len());
        for faces in &self.gluings {
            let entries: Vec<String> = faces
                .iter()
                .map(|g| {
                    let perm: String = g.perm.iter().map(|d| char::from(b'0' + d)).collect();
                    format!("{}:{perm}", g.tet)
                })
                .collect();
            writeln!(out, "{}", entries.join(" ")).expect("write to string");
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let parse_err = |line: usize, message: String| Error::Parse { position: line, message };
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let (head_no, head) = lines.next().ok_or_else(|| parse_err(0, "empty input".into()))?;
        let count: usize = head
            .trim()
            .strip_prefix("tetrahedra")
            .and_then(|c| c.trim().parse().ok())
            .ok_or_else(|| parse_err(head_no + 1, "expected `tetrahedra <count>`".into()))?;
        let mut gluings = Vec::with_capacity(count);
        for (no, line) in lines {
            let mut faces = Vec::with_capacity(4);
            for (f, entry) in line.split_whitespace().enumerate() {
                let err = || parse_err(no + 1, format!("face {f}: expected `tet:perm`, found {entry:?}"));
                let (tet, perm) = entry.split_once(':').ok_or_else(err)?;
                let tet: usize = tet.parse().map_err(|_| err())?;
                let digits: Vec<u8> = perm.bytes().map(|b| b.wrapping_sub(b'0')).collect();
                let perm: SlotPerm = digits.try_into().map_err(|_| err())?;
                if !is_permutation(perm) {
                    return Err(err());
                }
                faces.push(FaceGluing { tet, face: perm[f], perm });
            }
            let faces: [FaceGluing; 4] = faces
                .try_into()
                .map_err(|_| parse_err(no + 1, "expected four face entries".into()))?;
            gluings.push(faces);
        }
        if gluings.len() != count {
            return Err(parse_err(head_no + 1, format!("declared {count} tetrahedra, found {}", gluings.len())));
        }
        let t = TetrahedralTriangulation { gluings };
        t.validate()?;
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_complex;
    use crate::pipeline::description::parse_description;

    const FIRST: &str = "(3,3,4 ; 3,6,8,0,13,19,1,15,2,17,14,18,16,4,10,7,12,9,11,5)";

    #[test]
    fn first_entry_subdivides() {
        let d = parse_description(FIRST).unwrap();
        let c = build_complex(&d.spec, &d.pairing).unwrap();
        let t = subdivide_to_tetrahedra(&c);
        assert_eq!(t.num_tetrahedra(), 10);
        t.validate().unwrap();
        assert_eq!(TetrahedralTriangulation::parse_text(&t.to_text()).unwrap(), t);
        assert!(t.link_euler().iter().all(|&e| e == 0));
        let poly: Vec<i64> = c.links.iter().map(|l| l.euler()).collect();
        assert_eq!(link_euler_by_class(&c, &t), Some(poly));
    }

    #[test]
    fn nonmanifold_links_agree_too() {
        for text in ["(3 ; 1,0,3,2,5,4)", "(3 ; 3,4,5,0,1,2)", "(3,3 ; 6,7,8,9,10,11,0,1,2,3,4,5)"] {
            let d = parse_description(text).unwrap();
            let c = build_complex(&d.spec, &d.pairing).unwrap();
            let t = subdivide_to_tetrahedra(&c);
            let poly: Vec<i64> = c.links.iter().map(|l| l.euler()).collect();
            assert_eq!(link_euler_by_class(&c, &t), Some(poly), "{text}");
        }
    }

    #[test]
    fn corrupted_tables_are_rejected() {
        let d = parse_description("(3 ; 1,0,3,2,5,4)").unwrap();
        let c = build_complex(&d.spec, &d.pairing).unwrap();
        let text = subdivide_to_tetrahedra(&c).to_text();
        let mut lines: Vec<String> = text.lines().map(String::from).collect();
        lines[1] = lines[1].replacen(':', "9:", 1);
        assert!(TetrahedralTriangulation::parse_text(&lines.join("\n")).is_err());
        assert!(TetrahedralTriangulation::parse_text("tetrahedra 1\n0:0123 0:1023 0:0132 0:0123").is_err());
        assert!(TetrahedralTriangulation::parse_text("tetrahedra 2\n").is_err());
    }
}
