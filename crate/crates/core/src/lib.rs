//! Enumeration of ideal dipyramid gluings dual to Mom-n handle structures,
//! with topological filtering, fundamental group analysis and tetrahedral
//! export.

pub mod complex;
pub mod enumerate;
pub mod error;
pub mod group;
pub mod handles;
pub mod pipeline;
pub mod polyhedra;

pub use complex::{build_complex, filter, FilterOutcome, GluedComplex, RejectReason};
pub use enumerate::{count_orbits_burnside, enumerate_pairings, is_canonical, orbit_of, Pairing, PairingSearch};
pub use error::{Error, Result};
pub use group::{abelianization, recognize_commutator_power, spine_presentation, tietze_simplify, AbelianInvariants, Presentation};
pub use handles::{Classification, HandleStructure};
pub use pipeline::{analyze, parse_description, run_survey, GluingDescription, SurveyRecord, TetrahedralTriangulation};
pub use polyhedra::{pyramid_sets_for_mom, symmetry_group, DipyramidSpec, SymmetryMode};
