//! Operads of decorated cliques over unitary magmas.

pub mod acceptance;
pub mod bases;
pub mod cli;
pub mod clique;
pub mod enumeration;
pub mod error;
pub mod io;
pub mod known_operads;
pub mod magma;
pub mod operad;
pub mod ratfct;
pub mod substructures;

pub use clique::Clique;
pub use error::{Error, Result};
pub use magma::{Elem, Magma, MagmaRef, UNIT};
