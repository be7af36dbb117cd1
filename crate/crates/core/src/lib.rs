//! Exact shuffle-algebra computations for simple modules of quantum loop algebras:
//! Hopf pairings, residue conditions, l-weight space dimensions, q-characters,
//! normalization characters and QQ-system checks.

pub mod cartan;
pub mod charring;
pub mod cli;
pub mod hopfpair;
pub mod laurent;
pub mod linalg;
pub mod lweights;
pub mod residue;
pub mod scalars;
pub mod shuffle;
pub mod simplemod;
