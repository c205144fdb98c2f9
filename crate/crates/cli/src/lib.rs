//! Knot table, JSON views, rendering and the acceptance suite behind the
//! `knotperi` command.

pub mod acceptance;
pub mod json;
pub mod render;
pub mod suite;
pub mod table;

use knotperi_core::diagram::{compute_regions, LabeledDiagram, PdCode};
use knotperi_core::peripheral::{build_complex, build_fundamental_block, PeripheralComplex};
use knotperi_core::presentation::{build_augmented_dehn, SymmetrizedPresentation};

/// Everything derived from one diagram.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub diagram: LabeledDiagram,
    pub presentation: SymmetrizedPresentation,
    pub complex: PeripheralComplex,
}

impl Analysis {
    pub fn new(pd: &PdCode, outer: Option<usize>) -> knotperi_core::Result<Analysis> {
        let diagram = compute_regions(pd, outer)?;
        let presentation = build_augmented_dehn(&diagram)?;
        let complex = build_complex(build_fundamental_block(&diagram, &presentation)?);
        Ok(Analysis { diagram, presentation, complex })
    }
}
