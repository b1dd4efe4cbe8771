//! Module-theoretic verdicts: intertwiner counts, irreducibility, the
//! generated algebra, restriction, and the BMW-type relations.

pub mod algebra;
pub mod bmw;
pub mod branch;
pub mod hom;
pub mod localize;

pub use algebra::{
    algebra_span, center_dim, faithful_rep, localization_triangle_check, radical_dim, semisimplicity_check,
    AlgebraSpan, FaithfulRep, SemisimplicityReport, TriangleReport,
};
pub use bmw::{bmw_check, BmwRelationResult, BmwReport};
pub use branch::{
    branch_certified, branching_graph, harmonic_dim, is_e_null, predicted_branching, restrict_and_branch,
    weight_coords, BranchReport, BranchSummand, BranchingGraph, GraphEdge, GraphNode,
};
pub use hom::{
    end_dim, hom_dim, is_irreducible, spin_basis, standard_generators, ActionModule, IrreducibilityMethod,
    IrreducibilityVerdict,
};
pub use localize::{
    localization_table, predicted_localization, predicted_young_localization_dim, LocalizationRow,
};
