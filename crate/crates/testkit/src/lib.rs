//! Random generators and slow, obviously-correct oracles for property tests.

pub mod agreement;
pub mod amr;
pub mod graphs;
pub mod rdf;
