//! Power-torsion and eventual division for cyclic graded modules, Smith
//! normal forms, local cohomology at `(p)` and nonrealizability
//! certificates.

mod certificate;
mod groebner;
mod module;
mod smith;

#[cfg(test)]
mod tests;

pub use certificate::{
    realizability_obstruction, NonTorsionWitness, NormalFormWitness, ObstructionCertificate, Rule, SearchBounds,
    TorsionStatus, Verdict,
};
pub use groebner::{groebner_basis, normal_form, GroebnerBasis};
pub use module::{
    eventual_division_module, is_vn_power_torsion, CyclicModulePresentation, ModuleContext, ModuleDivisionWitness,
    TorsionResult,
};
pub use smith::{local_cohomology_degreewise, smith_normal_form, DegreeCohomology, LocalCohomologyReport, SmithForm};
