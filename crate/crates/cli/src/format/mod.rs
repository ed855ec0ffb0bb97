//! The chain file: a versioned TOML schema for groups, homomorphisms, chains,
//! graphs, filtered objects, rings and command results.

mod datasets;
mod load;
mod schema;
mod write;

pub use datasets::{bundled, BUNDLED};
pub use load::{
    hom_on_generators, load_path, load_str, AssemblyEntry, ChainEntry, ChainFile, ErrorKind, FormatError, GroupEntry,
    HomEntry, LoadErrors, ObjectEntry, QuotientEntry, RingEntry, SimpleEntry, FORMAT_VERSION,
};
pub use schema::*;
pub use write::{condition_text, subgroup_record, to_i64, write_machine};
