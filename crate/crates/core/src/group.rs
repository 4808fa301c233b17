//! Finite presentations of the fundamental group read off the dual spine,
//! Tietze simplification, abelian invariants, and recognition of the
//! one-relator groups `⟨a, b | [a, bⁿ]⟩`.
//!
//! Words are sequences of nonzero letters: `g + 1` for generator `g` and
//! `-(g + 1)` for its inverse.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{GluedComplex, UnionFind};
use crate::error::{Error, Result};

pub type Word = Vec<i32>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: usize,
    pub relators: Vec<Word>,
}

pub fn inverse(word: &[i32]) -> Word {
    word.iter().rev().map(|&x| -x).collect()
}

pub fn free_reduce(word: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(word.len());
    for &x in word {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

pub fn cyclic_reduce(word: &[i32]) -> Word {
    let w = free_reduce(word);
    let mut lo = 0;
    let mut hi = w.len();
    while hi - lo >= 2 && w[lo] == -w[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    w[lo..hi].to_vec()
}

/// Least rotation of the word or of its inverse; equal for relators that
/// define the same normal closure by those moves.
fn cyclic_key(word: &[i32]) -> Word {
    let mut best: Option<Word> = None;
    for w in [word.to_vec(), inverse(word)] {
        for r in 0..w.len().max(1) {
            let mut rot = w[r..].to_vec();
            rot.extend_from_slice(&w[..r]);
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}

impl Presentation {
    pub fn new(generators: usize, relators: Vec<Word>) -> Result<Self> {
        for r in &relators {
            if let Some(&x) = r.iter().find(|&&x| x == 0 || x.unsigned_abs() as usize > generators) {
                return Err(Error::Domain(format!("letter {x} outside {generators} generators")));
            }
        }
        Ok(Presentation { generators, relators })
    }

    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Vec::len).sum()
    }

    pub fn deficiency(&self) -> i64 {
        self.generators as i64 - self.relators.len() as i64
    }

    /// `gens: g` followed by one relator per line, `a..z` for generators and
    /// `A..Z` for inverses, `1` for the empty word.
    pub fn to_text(&self) -> Result<String> {
        if self.generators > 26 {
            return Err(Error::Domain("more than 26 generators cannot be lettered".into()));
        }
        let mut out = format!("gens: {}\n", self.generators);
        for r in &self.relators {
            out.push_str(&word_to_letters(r));
            out.push('\n');
        }
        Ok(out)
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let head = lines.next().ok_or(Error::Parse { position: 0, message: "empty input".into() })?;
        let generators = head
            .trim()
            .strip_prefix("gens:")
            .and_then(|g| g.trim().parse::<usize>().ok())
            .ok_or(Error::Parse { position: 0, message: "expected `gens: <count>`".into() })?;
        let mut relators = Vec::new();
        for line in lines {
            relators.push(letters_to_word(line.trim())?);
        }
        Presentation::new(generators, relators)
    }
}

pub fn word_to_letters(word: &[i32]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    word.iter()
        .map(|&x| {
            let base = if x > 0 { b'a' } else { b'A' };
            (base + (x.unsigned_abs() - 1) as u8) as char
        })
        .collect()
}

pub fn letters_to_word(text: &str) -> Result<Word> {
    if text == "1" {
        return Ok(Vec::new());
    }
    text.char_indices()
        .map(|(i, c)| match c {
            'a'..='z' => Ok(c as i32 - 'a' as i32 + 1),
            'A'..='Z' => Ok(-(c as i32 - 'A' as i32 + 1)),
            _ => Err(Error::Parse { position: i, message: format!("unexpected {c:?}") }),
        })
        .collect()
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| word_to_letters(r)).collect();
        write!(f, "<{} gens | {}>", self.generators, rels.join(", "))
    }
}

/// Presentation of the spine dual to the cell structure: one generator per
/// face pair off a spanning tree of the dual graph, one relator per edge
/// class.
pub fn spine_presentation(c: &GluedComplex) -> Result<Presentation> {
    let polar = c.polar_classes();
    if polar.len() != 1 || c.links.iter().any(|l| l.euler() != 0 || !l.orientable) {
        return Err(Error::Unfiltered);
    }
    let spec = c.spec();
    let p = c.pairing.as_slice();
    let faces = p.len();

    // arcs in order of their lower face; tree arcs chosen greedily
    let mut tree = UnionFind::new(spec.num_polyhedra());
    let mut generator_of = vec![None; faces];
    let mut next = 0;
    for f in 0..faces {
        let g = p[f];
        if g < f {
            continue;
        }
        let (a, b) = (spec.face_info(f).polyhedron, spec.face_info(g).polyhedron);
        if tree.find(a) != tree.find(b) {
            tree.union(a, b);
        } else {
            generator_of[f] = Some(next);
            generator_of[g] = Some(next);
            next += 1;
        }
    }

    let mut relators = Vec::with_capacity(c.edge_classes.len());
    for class in &c.edge_classes {
        let mut word = Vec::new();
        for step in &class.cycle {
            let (f, g) = (step.face, p[step.face]);
            if let Some(gen) = generator_of[f] {
                let letter = gen as i32 + 1;
                word.push(if f < g { letter } else { -letter });
            }
        }
        relators.push(word);
    }
    Presentation::new(next, relators)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Simplified {
    pub presentation: Presentation,
    /// Set when a generator could still be eliminated but only by exceeding
    /// the length budget.
    pub exhausted: bool,
}

pub fn default_budget(p: &Presentation) -> usize {
    (10 * p.total_length()).max(16)
}

/// Free and cyclic reduction, dropping empty and repeated relators,
/// and eliminating generators that occur exactly once in some relator,
/// until nothing changes. Total relator length never exceeds `budget`.
pub fn tietze_simplify(p: &Presentation, budget: usize) -> Simplified {
    let mut generators = p.generators;
    let mut relators: Vec<Word> = p.relators.clone();
    let mut exhausted = false;
    loop {
        tidy(&mut relators);
        match choose_elimination(generators, &relators, budget) {
            Elimination::Apply { relator, position } => {
                let r = relators.remove(relator);
                let x = r[position];
                let g = x.abs();
                // r = u x v  ⇒  x = u⁻¹ v⁻¹ ;  r = u x⁻¹ v  ⇒  x = v u
                let (u, v) = (&r[..position], &r[position + 1..]);
                let value: Word = if x > 0 {
                    let mut w = inverse(u);
                    w.extend(inverse(v));
                    w
                } else {
                    let mut w = v.to_vec();
                    w.extend_from_slice(u);
                    w
                };
                let value_inv = inverse(&value);
                for rel in relators.iter_mut() {
                    let mut out = Vec::with_capacity(rel.len());
                    for &y in rel.iter() {
                        if y == g {
                            out.extend_from_slice(&value);
                        } else if y == -g {
                            out.extend_from_slice(&value_inv);
                        } else {
                            out.push(y);
                        }
                    }
                    // generators above the eliminated one shift down
                    for y in out.iter_mut().filter(|y| y.abs() > g) {
                        *y -= y.signum();
                    }
                    *rel = out;
                }
                generators -= 1;
            }
            Elimination::OverBudget => {
                exhausted = true;
                break;
            }
            Elimination::None => break,
        }
    }
    tidy(&mut relators);
    Simplified { presentation: Presentation { generators, relators }, exhausted }
}

fn tidy(relators: &mut Vec<Word>) {
    for r in relators.iter_mut() {
        *r = cyclic_reduce(r);
    }
    relators.retain(|r| !r.is_empty());
    let mut seen = std::collections::HashSet::new();
    relators.retain(|r| seen.insert(cyclic_key(r)));
}

enum Elimination {
    Apply { relator: usize, position: usize },
    OverBudget,
    None,
}

fn choose_elimination(generators: usize, relators: &[Word], budget: usize) -> Elimination {
    let total: usize = relators.iter().map(Vec::len).sum();
    let mut occurrences = vec![0usize; generators + 1];
    for r in relators {
        for &x in r {
            occurrences[x.unsigned_abs() as usize] += 1;
        }
    }
    let mut order: Vec<usize> = (0..relators.len()).collect();
    order.sort_by_key(|&i| (relators[i].len(), i));
    let mut blocked = false;
    for i in order {
        let r = &relators[i];
        let mut counts = vec![0usize; generators + 1];
        for &x in r {
            counts[x.unsigned_abs() as usize] += 1;
        }
        for g in 1..=generators {
            if counts[g] != 1 {
                continue;
            }
            let elsewhere = occurrences[g] - 1;
            let new_total = total - r.len() + elsewhere * (r.len() - 1) - elsewhere;
            if new_total > budget {
                blocked = true;
                continue;
            }
            let position = r.iter().position(|&x| x.unsigned_abs() as usize == g).unwrap();
            return Elimination::Apply { relator: i, position };
        }
    }
    if blocked {
        Elimination::OverBudget
    } else {
        Elimination::None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    /// Torsion coefficients `d_1 | d_2 | ...`, each greater than 1.
    pub torsion: Vec<u64>,
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".to_string() } else { format!("Z^{}", self.free_rank) });
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

pub fn exponent_matrix(p: &Presentation) -> Vec<Vec<i64>> {
    p.relators
        .iter()
        .map(|r| {
            let mut row = vec![0i64; p.generators];
            for &x in r {
                row[x.unsigned_abs() as usize - 1] += i64::from(x.signum());
            }
            row
        })
        .collect()
}

pub fn abelianization(p: &Presentation) -> AbelianInvariants {
    let diagonal = smith_diagonal(&exponent_matrix(p));
    AbelianInvariants {
        free_rank: p.generators - diagonal.len(),
        torsion: diagonal.into_iter().filter(|&d| d > 1).collect(),
    }
}

/// Nonzero invariant factors of an integer matrix, in divisibility order.
pub fn smith_diagonal(matrix: &[Vec<i64>]) -> Vec<u64> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<i128>> =
        matrix.iter().map(|r| r.iter().map(|&x| i128::from(x)).collect()).collect();
    let mut diagonal = Vec::new();
    for t in 0..rows.min(cols) {
        // pivot: smallest nonzero magnitude in the remaining block
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].abs());
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t] / a[t][t];
                if q != 0 {
                    for j in t..cols {
                        a[i][j] -= q * a[t][j];
                    }
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = a[t][j] / a[t][t];
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                if a[t][j] != 0 {
                    clean = false;
                }
            }
            if clean {
                // the pivot must divide the rest of the block
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| a[i][j] % a[t][t] != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            a[t][j] += a[i][j];
                        }
                        continue;
                    }
                }
            }
            // move the smallest nonzero entry of row/column t to the pivot
            let mut best = (t, t);
            for i in t..rows {
                if a[i][t] != 0 && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if a[t][j] != 0 && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diagonal.push(a[t][t].unsigned_abs() as u64);
    }
    diagonal
}

/// `n` when the presentation has two generators and one relator equal, up
/// to cyclic rotation, inversion, exchanging the generators and inverting
/// either of them, to `x yⁿ x⁻¹ y⁻ⁿ`.
pub fn recognize_commutator_power(p: &Presentation) -> Option<u32> {
    if p.generators != 2 || p.relators.len() != 1 {
        return None;
    }
    commutator_power_of_word(&p.relators[0])
}

pub fn commutator_power_of_word(word: &[i32]) -> Option<u32> {
    let w = cyclic_reduce(word);
    let len = w.len();
    if len < 4 || !len.is_multiple_of(2) {
        return None;
    }
    let n = (len - 2) / 2;
    for candidate in [w.clone(), inverse(&w)] {
        for r in 0..len {
            let at = |i: usize| candidate[(r + i) % len];
            let (x, y) = (at(0), at(1));
            if x.abs() == y.abs() {
                continue;
            }
            let matches = (1..=n).all(|i| at(i) == y)
                && at(n + 1) == -x
                && (n + 2..len).all(|i| at(i) == -y);
            if matches {
                return Some(n as u32);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str) -> Word {
        letters_to_word(s).unwrap()
    }

    fn pres(g: usize, rels: &[&str]) -> Presentation {
        Presentation::new(g, rels.iter().map(|r| word(r)).collect()).unwrap()
    }

    #[test]
    fn reductions() {
        assert_eq!(free_reduce(&word("aAbBc")), word("c"));
        assert_eq!(cyclic_reduce(&word("bacAB")), word("c"));
        assert_eq!(cyclic_reduce(&word("aA")), Vec::<i32>::new());
    }

    #[test]
    fn tietze_examples() {
        let p = pres(3, &["c", "Cab"]);
        let s = tietze_simplify(&p, default_budget(&p));
        assert_eq!(s.presentation.relators.len(), 0);
        assert_eq!(s.presentation.generators, 1);
        assert!(!s.exhausted);

        let fixed = pres(2, &["abAB"]);
        let s = tietze_simplify(&fixed, 100);
        assert_eq!(s.presentation, fixed);
    }

    #[test]
    fn tietze_renumbers_substituted_letters() {
        let p = pres(3, &["abc", "aaccb", "bbbc"]);
        let s = tietze_simplify(&p, default_budget(&p));
        let q = &s.presentation;
        assert!(q.relators.iter().flatten().all(|x| x.unsigned_abs() as usize <= q.generators));
        assert_eq!(abelianization(q), abelianization(&p));
    }

    #[test]
    fn tietze_budget_flag() {
        // eliminating either generator would lengthen the other relator
        let p = pres(2, &["abbb", "aaaabbbbb"]);
        let s = tietze_simplify(&p, p.total_length());
        assert!(s.exhausted);
        assert!(s.presentation.total_length() <= p.total_length());
    }

    #[test]
    fn abelian_examples() {
        assert_eq!(abelianization(&pres(2, &["abbbABBB"])), AbelianInvariants { free_rank: 2, torsion: vec![] });
        assert_eq!(abelianization(&pres(2, &["aa", "bbb"])), AbelianInvariants { free_rank: 0, torsion: vec![6] });
        assert_eq!(abelianization(&pres(4, &[])), AbelianInvariants { free_rank: 4, torsion: vec![] });
        assert_eq!(smith_diagonal(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(abelianization(&pres(2, &["aaaaa"])).to_string(), "Z + Z/5");
    }

    #[test]
    fn commutator_powers() {
        assert_eq!(recognize_commutator_power(&pres(2, &["abbbABBB"])), Some(3));
        assert_eq!(recognize_commutator_power(&pres(2, &["BBBBBAbbbbba"])), Some(5));
        assert_eq!(recognize_commutator_power(&pres(2, &["abABB"])), None);
        assert_eq!(recognize_commutator_power(&pres(2, &["aaaabAAAAB"])), Some(4));
        assert_eq!(recognize_commutator_power(&pres(3, &["abAB"])), None);
    }

    #[test]
    fn text_round_trip() {
        let p = pres(3, &["abC", "", "cAB"]);
        let text = p.to_text().unwrap();
        assert_eq!(text, "gens: 3\nabC\n1\ncAB\n");
        assert_eq!(Presentation::parse_text(&text).unwrap(), p);
        assert!(Presentation::parse_text("gens: 1\nab\n").is_err());
        assert!(Presentation::parse_text("a\n").is_err());
    }
}
