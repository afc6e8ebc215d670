//! Intersection tables of thrackled polygons, musquash and bi-musquash
//! generation rules, Gauss-word realizability, exhaustive search and exact
//! geometric constructions.

pub mod cli;
pub mod gauss;
pub mod geometry;
pub mod graph;
pub mod render;
pub mod search;
pub mod tables;

pub use gauss::{gauss_word, CrossingId, DoubleOccurrenceWord, GaussWord};
pub use tables::{
    expand_bimusquash, expand_musquash, set_generators, GeneratorPair, GeneratorSet,
    IntersectionTable,
};
