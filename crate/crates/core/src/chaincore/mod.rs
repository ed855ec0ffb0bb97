//! Chains, fastening data and the line-bundle classification engine.

mod admissible;
mod chain;
mod graph;
#[cfg(test)]
pub(crate) mod testing;

pub use admissible::check_admissible;
pub use chain::{
    classify_line_bundles_simple, degree_class_in, degree_class_via_fiber_product, line_bundle_fiber_product, m_class,
    nearby_cycles, validate_simple_chain, ComponentData, LineBundleClass, ResidueClass, SimpleChainDatum, TopWedgeData,
};
pub use graph::{
    build_chain_graph, classify_line_bundles_graph, is_contractible, validate_assembly, Assembly, ChainGraph,
    ContractedVertex, EdgeDatum, GammaVertex, GraphDescription, LineAssembly, OrbitDatum, VectorAssembly,
};
