//! Twisted and mixed structures in characteristic p.
//!
//! `fields` has exact arithmetic and the blended/mixed field structures,
//! `catcore` the finite-category engine for tC and mC, `algebra` presented
//! algebras and twisted/mixed rings, and `groups` the Chevalley group
//! machinery behind the Suzuki-Ree and Tits mixed groups. `suite` runs the
//! acceptance criteria.

pub mod algebra;
pub mod catcore;
pub mod fields;
pub mod groups;
pub mod suite;
