//! Finitely presented modules: annihilators, Hom and Ext, free resolutions,
//! grade, and certified isomorphism, splitting and quasi-Gorenstein tests.

mod ext;
mod hom;
mod iso;
mod module;

pub use ext::{
    annihilator, element_annihilator, ext, free_resolution, grade, hom_dual_sequence, DualSequence, FreeResolution,
    Grade, GradeValue,
};
pub use hom::{hom_module, ModuleHom};
pub use iso::{
    coefficient_pool, find_injective_hom, invariant_obstruction, is_isomorphic, is_quasi_gorenstein,
    module_fitting_ideal, permutation_transpose, split_test, IsoBounds, IsoResult, IsoWitness, Obstruction, QgResult,
    QgWitness, SplitReport, SplitVerdict,
};
pub use module::FPModule;
