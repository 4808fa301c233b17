//! Inputs shared by the benchmarks.

use momcensus::pipeline::{parse_description_list, GluingDescription};

const FIGURE_TWO: &str = include_str!("../../core/fixtures/unidentified_mom4.txt");

/// The 34 unidentified Mom-4 gluings shipped with the core crate.
pub fn unidentified_mom4() -> Vec<GluingDescription> {
    parse_description_list(FIGURE_TWO).expect("fixture parses")
}
