//! Serialization, fixtures, generators and graph export.

pub mod bundle;
pub mod document;
pub mod dot;
pub mod fixtures;
pub mod manufacturing;
