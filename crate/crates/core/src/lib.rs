//! Finite planar nearrings built from Ferrero pairs and nearvector spaces.
//!
//! The crate constructs planar nearrings, computes their distributive
//! elements, zero multipliers, ideals and generalized centre, checks the
//! structural results about them by exhaustion, and enumerates all planar
//! nearrings of small order up to isomorphism.

pub mod analysis;
pub mod catalog;
pub mod design;
pub mod document;
pub mod enumeration;
pub mod error;
pub mod examples;
pub mod ferrero;
pub mod group;
pub mod nearfield;
pub mod nearvector;

pub use error::{Error, Result};
