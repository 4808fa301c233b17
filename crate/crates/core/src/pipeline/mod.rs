//! Gluing descriptions, per-gluing analysis, tetrahedral export and the
//! survey driver.

pub mod analysis;
pub mod description;
pub mod survey;
pub mod tetra;

pub use analysis::{analyze, check_survivor, Analysis, GroupAnalysis, PresentationRecord, SurveyRecord};
pub use description::{emit_description, parse_description, parse_description_list, GluingDescription};
pub use survey::{run_survey, SpecSummary, SurveyOptions, SurveyOutcome, SurveySummary};
pub use tetra::{link_euler_by_class, subdivide_to_tetrahedra, TetrahedralTriangulation};
