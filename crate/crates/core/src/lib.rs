//! Counting and classifying partial Latin squares that admit a given
//! autotopism.
//!
//! An isotopism `Θ = (α, β, γ)` acts on the triples `(row, column, symbol)`
//! of a partial Latin square. The squares it fixes are unions of orbits of
//! that action, so every count here reduces to a search over conflict-free
//! sets of orbits. Counts only depend on the cycle structure of `Θ`.
//!
//! ```
//! use autotopism::{delta_census, Isotopism, SearchOptions};
//!
//! let z = "2.1,2.1,2.1".parse().unwrap();
//! let report = delta_census(&Isotopism::canonical(&z), &SearchOptions::default()).unwrap();
//! assert_eq!(report.total, 117u32.into());
//! ```

mod bits;
pub mod census;
pub mod completion;
pub mod error;
pub mod export;
pub mod isotopism;
pub mod orbits;
pub mod perm;
pub mod pls;
mod search;
mod serde_big;
pub mod structure;
pub mod tables;

pub use census::{
    candidate_sizes, census_up_to, delta_census, delta_closed_nnn, delta_closed_row_col_ncycle, delta_full,
    delta_isotopism_class, delta_min_size, delta_size_one, invariant_squares, size_bounds, CensusReport, SizeBounds,
};
pub use completion::{
    basis_from_shape, completability_census, completability_census_by_class, completion_set, count_completions,
    delta_via_symmetry, homogeneous_basis, is_theta_completable, CompletabilityReport, ShapeMode, ShapeSet, ThetaBasis,
};
pub use error::{Error, Result};
pub use export::{
    decode_solution, encode, encode_assignment, export_ideal, export_ip, parse_assignment, ExportOptions, ModelText,
    WeightedModel,
};
pub use isotopism::{conjugating_isotopism, Isotopism, Parastrophy, Triple};
pub use orbits::{build_valid_orbits, triple_orbits, TripleOrbit, ValidOrbitSet};
pub use perm::Permutation;
pub use pls::{
    autotopism_group, is_autotopism, isotopism_canonical_form, isotopisms_between, theta_decomposition,
    PartialLatinSquare, DEFAULT_SEARCH_ORDER_LIMIT,
};
pub use search::{SearchOptions, MAX_ORBITS};
pub use structure::{
    count_autotopism_structures, cs_nm_count, enumerate_autotopism_structures, is_autotopism_structure, is_lcm_triple,
    parastrophic_class_count, parastrophic_class_representatives, CycleStructure, IsotopismStructure, StructureCount,
};
pub use tables::{reproduce, Table, TableCheck};
