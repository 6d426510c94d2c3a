//! Exact semi-invariants of binary forms and the polynomial identities they
//! induce on Appell sequences.

pub mod exact_poly;
pub mod forms;
pub mod catalog;
pub mod appell;
