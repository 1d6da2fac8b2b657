//! Exact computations on signed differential posets: signed Young lattices,
//! signed Fibonacci posets and their reflection extensions, the up/down
//! operator algebra, sign-imbalance of tableaux and truncated generating
//! functions.

pub mod error;
mod extensions;
pub mod fibonacci;
pub mod identities;
pub mod operators;
pub mod poset;
pub mod series;
pub mod sign;
pub mod young;

pub use error::{PosetError, Result};
pub use operators::{
    apply_down, apply_up, apply_word, inner, inner_v, normal_order, verify_axioms, word_vanishes,
    Axiom, AxiomReport, DownMode, OperatorWord, RankVector,
};
pub use poset::{ElementId, GradedSignedPoset, SignedCover, Variant};
pub use sign::Sign;
