//! Finite set-theoretic solutions of the Frobenius–Separability equation,
//! Kimura semigroups, functional digraphs and the counting sequences that
//! classify them.

mod canon;
pub mod counting;
pub mod enumerate;
pub mod error;
pub mod fse;
pub mod funcgraph;
pub mod kimura;
pub mod maps;

pub use enumerate::Method;
pub use error::{Error, Result};
pub use fse::{ClassFlags, Quadruple, Solution};
pub use funcgraph::TreeCode;
pub use kimura::{KimuraStructure, OpTable, RectFactorization};
pub use maps::{EndoMap, PairMap, Perm};
