//! Balanced presentations of the trivial group built from the
//! Baumslag-Gersten group, coset-enumeration triviality certificates,
//! relator-application (Dehn) probes, bistellar moves on triangulations,
//! and a combinatorial filling-length functional on presentation 2-complexes.

pub mod cli;
pub mod filling;
pub mod pachner;
pub mod presentations;
pub mod tower;
pub mod triviality;
pub mod words;
