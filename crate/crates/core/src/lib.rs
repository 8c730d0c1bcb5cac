//! Exact finite-level computation of limit measures on lattices of regular
//! subextensions, modelled group-theoretically through the Galois
//! correspondence.
//!
//! The crate is layered bottom-up:
//!
//! * [`group`], [`subgroup`], [`hom`], [`catalog`]: finite groups over
//!   canonical element indices, subgroup enumeration, homomorphism search.
//! * [`frattini`]: Frattini subgroups, Frattini covers, embedding property.
//! * [`galois`]: setups `(G, N, σ′)` and their subextension lattices.
//! * [`measure`]: the first measure, its iterates and the exact limit.
//! * [`invsys`]: complete systems `S(G)` and their dual groups.
//! * [`verify`]: invariant suites shared by the CLI and the tests.

pub mod catalog;
mod elemset;
pub mod error;
pub mod frattini;
pub mod galois;
pub mod group;
pub mod hom;
pub mod invsys;
pub mod linalg;
pub mod markov;
pub mod measure;
pub mod subgroup;
pub mod verify;

pub use elemset::ElemSet;
pub use error::{Error, Result};
pub use group::{Elem, FiniteGroup, GroupDescription};
pub use hom::{quotient, GroupHom};
pub use num_rational::BigRational;
pub use subgroup::Subgroup;
