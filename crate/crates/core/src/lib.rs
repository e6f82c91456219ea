//! Edge ideals of graph families: generators, graded Betti numbers,
//! Stanley depth and checks of recursive regularity formulas.

pub mod betti;
pub mod cli;
pub mod closed_form;
pub mod decomp;
pub mod error;
pub mod families;
pub mod graph;
pub mod ideal;
pub mod iso;
pub mod linalg;
pub mod props;
pub mod recursion;
pub mod sdepth;
pub mod verify;

pub use betti::{betti_table, betti_table_taylor, invariants, BettiOptions, BettiTable, InvariantBundle};
pub use closed_form::{closed_form, ClosedForm, Prediction};
pub use decomp::{verify_decomposition, DecompositionReport, Rule, RuleKind, CATALOGUE};
pub use error::{Error, Result};
pub use families::{build_family, FamilyParams};
pub use graph::{LabeledGraph, VertexLabel};
pub use ideal::{edge_ideal, Monomial, MonomialIdeal};
pub use linalg::Field;
pub use recursion::{
    graph_regularity_by_recursion, regularity_by_recursion, PivotStrategy, RecursionOptions, RegValue,
};
pub use sdepth::{face_poset, sdepth_bounds, stanley_depth, IntervalPartition, StanleyDepth, StanleyOptions};
pub use verify::{verify_grid, Cell, GridRanges, IntRange, Status, VerificationReport, VerifyConfig, THEOREMS};
