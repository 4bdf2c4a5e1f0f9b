//! Executable finiteness results for sheaves of ideals on Noetherian affine
//! schemes.
//!
//! The crate is organised bottom-up:
//!
//! - [`field`], [`poly`], [`parse`], [`unipoly`], [`groebner`] and [`ring`]
//!   form the exact polynomial kernel (presented rings, canonical ideal
//!   forms, saturation, radical membership);
//! - [`finite`] holds explicit finite rings and modules (ideal enumeration,
//!   Noetherian witnesses, direct sums, Hom sets);
//! - [`topology`] is the lattice of distinguished opens and finite spaces;
//! - [`digraph`] encodes sheaves of ideals as finite digraphs of global
//!   generators and extracts them from sheaf oracles;
//! - [`cech`], [`baer`] and [`etale`] are the cohomology, injective-module
//!   and étale-tower layers;
//! - [`json`] and [`cli`] carry the file formats and the job runner used by
//!   the `noether` binary.

pub mod baer;
pub mod cech;
pub mod cli;
pub mod digraph;
pub mod error;
pub mod etale;
pub mod field;
pub mod finite;
pub mod groebner;
pub mod json;
pub mod parse;
pub mod poly;
pub mod ring;
pub mod topology;
pub mod unipoly;

pub use error::{Error, Result};
pub use field::Field;
pub use poly::{MonomialOrder, Polynomial};
pub use ring::{IdealHandle, PresentedRing, RingRef};
