//! Exact modular invariant theory over finite fields.
//!
//! The crate covers the finite field and polynomial substrate ([`gf`],
//! [`poly`]), finite linear groups and their invariant rings
//! ([`group_action`]), the Steenrod reduced power operations ([`steenrod`]),
//! the Dickson invariants ([`dickson`]), the Cartan operators on
//! localizations ([`cartan_frac`]) and graded local cohomology windows with
//! their induced operators and annihilator/depth probes ([`localcoh`]).
//! [`json`] holds the serialized forms used by the command-line tool.

pub mod cartan_frac;
pub mod dickson;
pub mod error;
pub mod gf;
pub mod group_action;
pub mod json;
pub mod localcoh;
pub mod poly;
pub mod steenrod;

pub use error::{Error, Result};
pub use gf::{Elem, Field, FieldElement, FieldSpec};
pub use poly::{Matrix, Monomial, PolyRing, Polynomial};
