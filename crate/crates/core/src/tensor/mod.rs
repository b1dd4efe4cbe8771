//! The diagonal loop representations `τ_N` on `(C^N)^{⊗n}`: actions on
//! colour words, fixed-charge blocks, the commuting colour permutations,
//! Young and harmonic modules, and localization by `f_N`.

mod module;
mod rep;
mod words;
mod young;

pub use module::{
    harmonic_decompose, harmonic_module, localize, row_classes, young_module, HarmonicLabel, ModuleLabel, ModuleSpec,
};
pub use rep::{f_operator, FOperator, MonomialOp, TauRep};
pub use words::{charge_blocks, compositions, right_color_action, ChargeBlock, ChargeDecomposition, ColorWord};
pub use young::{factorial, partitions, permutations_of, sign_of, ColourAlgebraElement, ColourPerm, Partition};
