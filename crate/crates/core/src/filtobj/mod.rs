//! Filtered objects on simple chains and the subcategories cut out by quotients.

mod artin_rees;
mod object;
mod subcategory;

pub use artin_rees::{artin_rees, rees_chain, GradedInjectionChain};
pub use object::{
    divisibility_check, filtered_hom_dim, is_tame, rescale, tame_truncate, validate_cn_object, CnOptions, Degree,
    FilteredObject, Line,
};
pub use subcategory::{
    classify_local_systems, classify_under_tame_quotient, flat_tame_criterion, top_wedge_criterion,
    SubcategoryPredicate, TameQuotientDatum,
};
