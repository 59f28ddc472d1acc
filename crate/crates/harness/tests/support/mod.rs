//! Helpers for building replay caches in tests.

#![allow(dead_code)]

pub mod replay;
