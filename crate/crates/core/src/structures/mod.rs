//! Dynamical skew braces, skew bracoids and their braidings.

mod bracoid;
mod braiding;
mod dsb;
mod report;

pub use bracoid::{semiloopoid_of_dsb, verify_bracoid, BracoidJson, BracoidReport, SkewBracoid};
pub use braiding::{
    braiding_of_qtsb, verify_braiding, BraidingEntry, BraidingReport, QuiverBraiding,
};
pub use dsb::{dsb_from_subgroup_family, verify_dsb, DsbJson, DsbReport, DynamicalSkewBrace};
pub use report::{Check, Report, Witness};
