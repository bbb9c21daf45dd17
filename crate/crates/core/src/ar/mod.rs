//! Auslander-Reiten triangles of perfect complexes and Auslander-Reiten
//! sequences of modules.

pub mod radical;
mod sequence;
mod triangle;

pub use radical::{algebra_radical, certify_radical, locality, FdAlgebra, Locality};
pub use sequence::{ar_sequence, e_complex, has_section, ArSequence, SequenceReport};
pub use triangle::{
    ar_triangle_ending_at, ar_triangle_starting_at, radical_endomorphisms, sample_objects, socle_connecting_map,
    socle_connecting_maps, triangle_on, verify_ar_triangle, Check, Outcome, Triangle, TriangleReport,
};
