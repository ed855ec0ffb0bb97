//! Tame filtered rings: Hilbert bases, idempotent ideals and universal tame quotients.

mod hilbert;
mod ideal;
mod quotient;

pub use hilbert::{
    f0_generators, hilbert_basis, HilbertLimits, Monomial, WeightConstraint, WeightedFreePresentation,
    CANDIDATE_LIMIT_VAR,
};
pub use ideal::{is_idempotent, MonomialIdealData};
pub use quotient::{
    describe_specialization, tame_quotient, ComponentFiltration, ComponentGroupData, ComponentSpecialization,
    FInfinity, FiberComponent, FiltrationSummary, GroupMapDescription, IdealAdicComponent, IdealAdicPresentation,
    IdealKind, SpecializationDescription, TameQuotientResult,
};
