use serde::{Deserialize, Serialize};

use crate::complex::{build_complex, filter, FilterOutcome, GluedComplex, RejectReason};
use crate::error::{Error, Result};
use crate::group::{
    abelianization, default_budget, recognize_commutator_power, spine_presentation, tietze_simplify,
    word_to_letters, AbelianInvariants, Presentation, Simplified,
};
use crate::pipeline::description::GluingDescription;

/// Everything computed for one gluing.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub description: GluingDescription,
    pub filter: FilterOutcome,
    pub complex: GluedComplex,
    /// Present iff the filter passed.
    pub group: Option<GroupAnalysis>,
}

#[derive(Debug, Clone)]
pub struct GroupAnalysis {
    pub spine: Presentation,
    pub simplified: Simplified,
    pub homology: AbelianInvariants,
    pub commutator_power: Option<u32>,
}

pub fn analyze(description: &GluingDescription) -> Result<Analysis> {
    let outcome = filter(&description.spec, description.pairing.as_slice());
    let complex = build_complex(&description.spec, &description.pairing)?;
    let group = if outcome.passed {
        check_survivor(&complex)?;
        let spine = spine_presentation(&complex)?;
        if spine.deficiency() != 1 {
            return Err(Error::Invariant(format!("spine presentation has deficiency {}", spine.deficiency())));
        }
        let simplified = tietze_simplify(&spine, default_budget(&spine));
        let homology = abelianization(&simplified.presentation);
        if homology != abelianization(&spine) {
            return Err(Error::Invariant("simplification changed the abelianization".into()));
        }
        if homology.free_rank == 0 {
            return Err(Error::Invariant("abelianization has free rank 0".into()));
        }
        let commutator_power = recognize_commutator_power(&simplified.presentation);
        Some(GroupAnalysis { spine, simplified, homology, commutator_power })
    } else {
        None
    };
    Ok(Analysis { description: description.clone(), filter: outcome, complex, group })
}

/// Structural identities every filtered complex satisfies: one polar class,
/// torus links whose Euler characteristics sum to zero, and `F/2 - P` edge
/// classes.
pub fn check_survivor(c: &GluedComplex) -> Result<()> {
    let spec = c.spec();
    let expected_edges = spec.num_faces() / 2 - spec.num_polyhedra();
    if c.num_edge_classes() != expected_edges {
        return Err(Error::Invariant(format!(
            "{} edge classes, expected {expected_edges}",
            c.num_edge_classes()
        )));
    }
    if c.polar_classes().len() != 1 {
        return Err(Error::Invariant(format!("{} polar classes", c.polar_classes().len())));
    }
    if let Some((class, link)) = c.links.iter().enumerate().find(|(_, l)| l.euler() != 0 || !l.orientable) {
        return Err(Error::Invariant(format!(
            "link of class {class} has euler characteristic {} (orientable: {})",
            link.euler(),
            link.orientable
        )));
    }
    let total: i64 = c.links.iter().map(|l| l.euler()).sum();
    if total != 0 {
        return Err(Error::Invariant(format!("link euler characteristics sum to {total}")));
    }
    Ok(())
}

/// One manifest line. Field order is part of the format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyRecord {
    pub description: String,
    pub passed: bool,
    pub reject_reason: Option<RejectReason>,
    pub boundary_count: usize,
    pub edge_class_count: usize,
    pub homology: Option<AbelianInvariants>,
    pub commutator_power: Option<u32>,
    pub presentation: Option<PresentationRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationRecord {
    pub generators: usize,
    pub relators: Vec<String>,
    pub total_length: usize,
    /// Simplification stopped at the length budget.
    pub exhausted: bool,
}

impl Analysis {
    pub fn record(&self) -> SurveyRecord {
        let group = self.group.as_ref();
        SurveyRecord {
            description: self.description.to_string(),
            passed: self.filter.passed,
            reject_reason: self.filter.reason,
            boundary_count: self.filter.boundary_count,
            edge_class_count: self.filter.edge_class_count,
            homology: group.map(|g| g.homology.clone()),
            commutator_power: group.and_then(|g| g.commutator_power),
            presentation: group.map(|g| {
                let p = &g.simplified.presentation;
                PresentationRecord {
                    generators: p.generators,
                    relators: p.relators.iter().map(|r| word_to_letters(r)).collect(),
                    total_length: p.total_length(),
                    exhausted: g.simplified.exhausted,
                }
            }),
        }
    }
}

impl SurveyRecord {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}
