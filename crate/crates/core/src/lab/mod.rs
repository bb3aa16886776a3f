//! Tree classification, predicted extremal values, verification recipes
//! and report rendering.

pub mod predict;
pub mod recipes;
pub mod report;
pub mod tree;

pub use predict::{predicted_value, PredictedValue, Target, Threshold};
pub use recipes::{
    verify_figure_claims, verify_freeness_sweep, verify_lemma_tfree, verify_split_decomposition,
    verify_star_constant, RecipeOptions,
};
pub use report::{emit_report, Check, ReportFormat, Status, VerificationReport};
pub use tree::{classify_tree, TreeClassification, Verdict};
