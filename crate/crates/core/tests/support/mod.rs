//! Seeded instance generators and brute-force reference implementations
//! shared by the property and acceptance suites.

#![allow(dead_code)]

pub mod gen;
pub mod oracle;
