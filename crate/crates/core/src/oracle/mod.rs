//! Brute-force verification: character tables with exact cyclotomic values,
//! Galois classes, the character-theoretic Wedderburn decomposition, GVZ
//! predicates and primitive central idempotents.

mod algebra;
mod cyclotomic;
mod modp;
mod predicates;
mod table;

pub use algebra::{
    epsilon, idempotent_e, idempotent_eq, verify_pci_theorem, verify_pci_with_table, CheckResult,
    CheckStatus, GroupAlgebraElement, Scalar, VerificationReport,
};
pub use cyclotomic::Cyclotomic;
pub use predicates::{
    char_center, char_kernel, field_conductor, field_degree, galois_classes, is_central_type,
    is_gvz, is_nested_gvz, rational_decomposition, rational_decomposition_from_table,
    rational_decomposition_with_bound,
};
pub use table::{
    character_table, character_table_with_bound, gvz_fast_table, CharTable, ClassData, GvzWitness,
    WitnessLayer, DEFAULT_BOUND,
};
