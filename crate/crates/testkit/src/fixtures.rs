//! Small worked instances, in memory and on disk.

use std::path::PathBuf;

use metaplex::inference::{infer_metaplex, InferenceConfig, Metaplex};
use metaplex::rational::from_int;
use metaplex::{ConcentrationMap, Graph};

/// Directory holding the fixture files.
pub fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn path(name: &str) -> PathBuf {
    dir().join(name)
}

/// Fixtures with an edge-list or complex source and a concentration file.
pub const INPUTS: [(&str, &str, &str); 4] = [
    ("k4", "k4.edges", "k4.conc"),
    ("triangle", "triangle.edges", "triangle.conc"),
    ("labelled", "labelled.edges", "labelled.conc"),
    ("mixed", "mixed.json", "mixed.conc"),
];

/// Vertex concentrations (1, 1, 1, 9).
pub fn k4_concentrations() -> ConcentrationMap {
    ConcentrationMap::new(
        [1, 1, 1, 9]
            .iter()
            .enumerate()
            .map(|(v, &c)| (v, from_int(c))),
    )
    .expect("positive")
}

/// Inference on the complete graph on four vertices with the default config.
pub fn k4_metaplex() -> Metaplex {
    infer_metaplex(
        &Graph::complete(4),
        &k4_concentrations(),
        &InferenceConfig::default(),
    )
    .expect("fixture infers")
}
