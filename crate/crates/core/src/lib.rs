pub mod arith;
pub mod error;
pub mod hom;
pub mod instance;
pub mod lattice;
pub mod maps;
pub mod naive;
pub mod report;
pub mod module;
pub mod ring;
pub mod spectrum;
pub mod theorems;
pub mod topology;
pub mod variety;

pub use error::{Error, Result};
