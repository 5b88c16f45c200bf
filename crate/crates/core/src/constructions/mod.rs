//! Algebra constructors: ordinal sums, partial gluings, nucleus images,
//! rotations, and the builtin algebras.

mod builtin;
mod gluing;
mod ordinal;
mod rotation;

pub use builtin::{
    builtin, builtin_algebra, godel, lukasiewicz, trivial, two, vs_a, vs_b, vs_c, vs_k_triple, Builtin,
    BUILTIN_NAMES,
};
pub use gluing::{partial_gluing, validate_triple, LowerCompatibleTriple};
pub use ordinal::ordinal_sum;
pub use rotation::{
    disconnected_rotation, generalized_rotation, nucleus_image, rotate_morphism, validate_nucleus, Nucleus,
};
