//! Exact construction and verification of additive, CSS and nonadditive
//! quantum error-correcting codes.
//!
//! Everything is finite and exact: GF(2) linear algebra on packed bit
//! vectors, signed Pauli words with ±1 phases, and unnormalized states with
//! big-integer coefficients. No floating point enters any verification.

pub mod bounds;
pub mod css;
pub mod error;
pub mod gf2;
pub mod nonadditive;
pub mod pauli;
pub mod stabilizer;
pub mod states;
pub mod verify;

pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVector, SymplecticVector};
pub use pauli::PauliWord;
pub use states::{QuantumCodeBasis, SignedSuperposition};
