//! Explicit finite rings and modules.

pub mod ideals;
pub mod lattice;
pub mod module;
pub mod ring;

pub use ideals::{
    enumerate_ideals, enumerate_spec, hom_from_ideal, noetherian_witness, FiniteIdeal,
    NoetherianReport,
};
pub use lattice::Lattice;
pub use module::{direct_sum, hom_all, hom_graphs, DirectSum, FiniteModule, HomGraph, ModuleMap};
pub use ring::{FiniteRing, RING_BOUND};
