//! Enumeration and verification of dynamical skew braces over small finite
//! groups, the skew bracoids they define, and their braidings.

pub mod enumeration;
pub mod error;
pub mod group;
pub mod holomorph;
pub mod named;
pub mod parallelise;
pub mod quiver;
pub mod structures;

pub use error::{Error, GroupError, Result};
