//! Workbench for finite residuated lattices: table-based algebras, identity
//! checking, congruence filters, constructions (ordinal sums, partial gluings,
//! rotations), chain enumeration, and amalgamation search with obstruction
//! certificates.

pub mod algebra;
pub mod amalgamation;
pub mod constructions;
pub mod doc;
pub mod enumeration;
pub mod error;
pub mod filters;
pub mod identity;
pub mod morphism;
pub mod partial;
pub mod report;
pub mod table;

pub use algebra::{residuals_from_product, AlgebraParts, Check, FiniteRL, Order, Poset, Property, ValidationReport};
pub use error::{Error, Result};
pub use filters::{congruence_filters, congruence_to_filter, filter_to_congruence, quotient, CongruenceFilter, Partition};
pub use identity::{check_identity, parse_identity, Identity, IdentityVerdict, Relation, Term};
pub use morphism::{find_embeddings, find_homomorphisms, is_isomorphic, subalgebra_generated, MorphKind, Morphism};
pub use partial::{Masks, PartialIRL, PartialParts};
pub use table::Table;
