//! Mom-n handle structures recorded as incidence counts: which 1-handles each
//! 2-handle runs over, and how many times.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::polyhedra::DipyramidSpec;

/// A 2-handle and the 1-handles it runs over, with multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoHandle {
    pub name: String,
    /// (1-handle index, multiplicity), one entry per distinct 1-handle.
    pub incidences: Vec<(usize, u32)>,
}

/// 1-handles and 2-handles attached to `T × 1`; there are no 0-handles.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HandleStructure {
    one_handles: Vec<String>,
    two_handles: Vec<TwoHandle>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Complexity {
    pub rho1: u64,
    pub num_one_handles: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Mom(usize),
    /// Weak Mom-n with at least one valence-2 2-handle.
    StrictlyWeakMom(usize),
    Invalid,
}

impl Classification {
    /// Every Mom-n is also a weak Mom-n.
    pub fn is_weak_mom(self) -> bool {
        !matches!(self, Classification::Invalid)
    }
}

impl HandleStructure {
    pub fn new(one_handles: Vec<String>, two_handles: Vec<TwoHandle>) -> Result<Self> {
        let mut names = one_handles.clone();
        names.sort();
        if names.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidHandles("duplicate 1-handle name".into()));
        }
        for sigma in &two_handles {
            for &(b, mult) in &sigma.incidences {
                if b >= one_handles.len() {
                    return Err(Error::InvalidHandles(format!(
                        "{} references missing 1-handle #{b}",
                        sigma.name
                    )));
                }
                if mult == 0 {
                    return Err(Error::InvalidHandles(format!(
                        "{} has a zero multiplicity",
                        sigma.name
                    )));
                }
            }
        }
        Ok(HandleStructure { one_handles, two_handles })
    }

    /// Builds a structure from per-2-handle lists of `(1-handle index,
    /// multiplicity)`, naming handles `lambda1..` and `sigma1..`.
    pub fn from_incidences(num_one_handles: usize, two: &[Vec<(usize, u32)>]) -> Result<Self> {
        let one = (1..=num_one_handles).map(|i| format!("lambda{i}")).collect();
        let two = two
            .iter()
            .enumerate()
            .map(|(i, inc)| TwoHandle { name: format!("sigma{}", i + 1), incidences: inc.clone() })
            .collect();
        HandleStructure::new(one, two)
    }

    pub fn one_handles(&self) -> &[String] {
        &self.one_handles
    }

    pub fn two_handles(&self) -> &[TwoHandle] {
        &self.two_handles
    }

    pub fn one_handle_valences(&self) -> Vec<u32> {
        let mut v = vec![0; self.one_handles.len()];
        for sigma in &self.two_handles {
            for &(b, mult) in &sigma.incidences {
                v[b] += mult;
            }
        }
        v
    }

    pub fn two_handle_valences(&self) -> Vec<u32> {
        self.two_handles.iter().map(|s| s.incidences.iter().map(|&(_, m)| m).sum()).collect()
    }

    /// Valence of the handle named `id`; 1-handle names are searched first.
    pub fn valence(&self, id: &str) -> Result<u32> {
        if let Some(b) = self.one_handles.iter().position(|n| n == id) {
            return Ok(self.one_handle_valences()[b]);
        }
        if let Some(s) = self.two_handles.iter().position(|s| s.name == id) {
            return Ok(self.two_handle_valences()[s]);
        }
        Err(Error::UnknownHandle(id.to_string()))
    }

    /// Σ over 1-handles of `max(valence - 2, 0)`.
    pub fn rho1(&self) -> u64 {
        self.one_handle_valences().iter().map(|&v| u64::from(v.saturating_sub(2))).sum()
    }

    /// ρ1 from handle counts: total 2-handle valence, minus twice the number
    /// of 1-handles, plus the valence-1 count, plus twice the valence-0
    /// count. Equals [`rho1`](Self::rho1) on every structure.
    pub fn rho1_formula(&self) -> i64 {
        let valences = self.one_handle_valences();
        let plates: i64 = self.two_handle_valences().iter().map(|&v| i64::from(v)).sum();
        let ones = valences.iter().filter(|&&v| v == 1).count() as i64;
        let zeros = valences.iter().filter(|&&v| v == 0).count() as i64;
        plates - 2 * valences.len() as i64 + ones + 2 * zeros
    }

    pub fn complexity(&self) -> Complexity {
        Complexity { rho1: self.rho1(), num_one_handles: self.one_handles.len() }
    }

    pub fn classify(&self) -> Classification {
        let ones = self.one_handle_valences();
        let twos = self.two_handle_valences();
        if ones.len() != twos.len()
            || ones.iter().any(|&v| v < 2)
            || twos.iter().any(|&v| v != 2 && v != 3)
        {
            return Classification::Invalid;
        }
        let n = twos.iter().filter(|&&v| v == 3).count();
        if twos.contains(&2) {
            Classification::StrictlyWeakMom(n)
        } else {
            Classification::Mom(n)
        }
    }

    /// Side counts of the dual dipyramids: one `k`-dipyramid per valence-`k`
    /// 1-handle with `k >= 3`. Valence-2 1-handles give digonal pyramids,
    /// which collapse away.
    pub fn dual_pyramid_spec(&self) -> Result<DipyramidSpec> {
        let n = match self.classify() {
            Classification::Mom(n) => n,
            other => return Err(Error::NotMom(format!("classified as {other:?}"))),
        };
        let valences = self.one_handle_valences();
        // each 1-handle end v has n_v = valence + 1; Σ_v (n_v - 1) = 6n
        let ends: u32 = valences.iter().map(|&v| 2 * v).sum();
        assert_eq!(ends as usize, 6 * n);
        let sides = valences.into_iter().filter(|&v| v > 2).map(|v| v as usize).collect();
        DipyramidSpec::new(sides)
    }

    /// Parses the fixture format:
    ///
    /// ```text
    /// # optional declaration, needed only for 1-handles no 2-handle uses
    /// one-handles: lambda1 lambda2
    /// sigma1: lambda1*2 lambda2*1
    /// sigma2: lambda1*2 lambda2
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut one: Vec<String> = Vec::new();
        let mut two = Vec::new();
        let mut offset = 0;
        for line in text.split_inclusive('\n') {
            let start = offset;
            offset += line.len();
            let content = line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (head, rest) = content.split_once(':').ok_or_else(|| Error::Parse {
                position: start,
                message: "expected `name: ...`".into(),
            })?;
            let head = head.trim();
            if head == "one-handles" {
                for name in rest.split_whitespace() {
                    if !one.iter().any(|n| n == name) {
                        one.push(name.to_string());
                    }
                }
                continue;
            }
            let mut counts: BTreeMap<usize, u32> = BTreeMap::new();
            for token in rest.split_whitespace() {
                let (name, mult) = match token.split_once('*') {
                    Some((name, m)) => {
                        let mult = m.parse::<u32>().map_err(|_| Error::Parse {
                            position: start,
                            message: format!("bad multiplicity in {token:?}"),
                        })?;
                        (name, mult)
                    }
                    None => (token, 1),
                };
                let index = match one.iter().position(|n| n == name) {
                    Some(i) => i,
                    None => {
                        one.push(name.to_string());
                        one.len() - 1
                    }
                };
                *counts.entry(index).or_insert(0) += mult;
            }
            two.push(TwoHandle { name: head.to_string(), incidences: counts.into_iter().collect() });
        }
        HandleStructure::new(one, two)
    }
}

impl fmt::Display for HandleStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "one-handles: {}", self.one_handles.join(" "))?;
        for sigma in &self.two_handles {
            let terms: Vec<String> = sigma
                .incidences
                .iter()
                .map(|&(b, m)| format!("{}*{m}", self.one_handles[b]))
                .collect();
            writeln!(f, "{}: {}", sigma.name, terms.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIGURE_EIGHT: &str = include_str!("../fixtures/figure8.handles");
    const M003: &str = include_str!("../fixtures/m003.handles");
    const M011: &str = include_str!("../fixtures/m011.handles");
    const M017: &str = include_str!("../fixtures/m017.handles");

    #[test]
    fn figure_eight() {
        let h = HandleStructure::parse(FIGURE_EIGHT).unwrap();
        assert_eq!(h.valence("lambda1").unwrap(), 4);
        assert_eq!(h.valence("lambda2").unwrap(), 2);
        assert_eq!(h.valence("sigma1").unwrap(), 3);
        assert_eq!(h.rho1(), 2);
        assert_eq!(h.rho1_formula(), 2);
        assert_eq!(h.complexity(), Complexity { rho1: 2, num_one_handles: 2 });
        assert_eq!(h.classify(), Classification::Mom(2));
        assert_eq!(h.dual_pyramid_spec().unwrap().sides(), &[4]);
    }

    #[test]
    fn three_sided_pairs() {
        for text in [M003, M011] {
            let h = HandleStructure::parse(text).unwrap();
            assert_eq!(h.one_handle_valences(), vec![3, 3]);
            assert_eq!(h.classify(), Classification::Mom(2));
            assert_eq!(h.complexity(), Complexity { rho1: 2, num_one_handles: 2 });
            assert_eq!(h.dual_pyramid_spec().unwrap().sides(), &[3, 3]);
        }
        let h = HandleStructure::parse(M017).unwrap();
        assert_eq!(h.dual_pyramid_spec().unwrap().sides(), &[4]);
    }

    #[test]
    fn five_sided_mom3() {
        let h = HandleStructure::from_incidences(
            3,
            &[vec![(0, 2), (1, 1)], vec![(0, 2), (2, 1)], vec![(0, 1), (1, 1), (2, 1)]],
        )
        .unwrap();
        assert_eq!(h.one_handle_valences(), vec![5, 2, 2]);
        assert_eq!(h.classify(), Classification::Mom(3));
        assert_eq!(h.complexity(), Complexity { rho1: 3, num_one_handles: 3 });
        assert_eq!(h.dual_pyramid_spec().unwrap().sides(), &[5]);
    }

    #[test]
    fn unknown_and_empty() {
        let h = HandleStructure::parse(FIGURE_EIGHT).unwrap();
        assert!(matches!(h.valence("lambda9"), Err(Error::UnknownHandle(_))));
        let empty = HandleStructure::default();
        assert_eq!(empty.rho1(), 0);
        assert_eq!(empty.rho1_formula(), 0);
        assert_eq!(empty.complexity(), Complexity { rho1: 0, num_one_handles: 0 });
        let lonely = HandleStructure::parse("one-handles: a b\ns: a*2\n").unwrap();
        assert_eq!(lonely.valence("b").unwrap(), 0);
    }

    #[test]
    fn classification_cases() {
        let weak = HandleStructure::from_incidences(
            3,
            &[vec![(0, 2), (1, 1)], vec![(1, 1), (2, 2)], vec![(0, 1), (2, 1)]],
        )
        .unwrap();
        assert_eq!(weak.two_handle_valences(), vec![3, 3, 2]);
        assert_eq!(weak.classify(), Classification::StrictlyWeakMom(2));
        assert!(weak.classify().is_weak_mom());
        assert!(weak.dual_pyramid_spec().is_err());

        let thin = HandleStructure::from_incidences(2, &[vec![(0, 3)], vec![(0, 2), (1, 1)]]).unwrap();
        assert_eq!(thin.valence("lambda2").unwrap(), 1);
        assert_eq!(thin.classify(), Classification::Invalid);
        // formula branch with valence-1 and valence-0 handles
        assert_eq!(thin.rho1(), 3);
        assert_eq!(thin.rho1_formula(), 3);
    }

    #[test]
    fn construction_errors() {
        let bad = HandleStructure::from_incidences(1, &[vec![(3, 1)]]);
        assert!(matches!(bad, Err(Error::InvalidHandles(_))));
        let zero = HandleStructure::from_incidences(1, &[vec![(0, 0)]]);
        assert!(matches!(zero, Err(Error::InvalidHandles(_))));
        assert!(HandleStructure::parse("sigma lambda").is_err());
        assert!(HandleStructure::parse("s: a*x").is_err());
    }

    #[test]
    fn display_round_trip() {
        let h = HandleStructure::parse(M011).unwrap();
        assert_eq!(HandleStructure::parse(&h.to_string()).unwrap(), h);
    }
}
