//! Simulation and control of tactile-sensing planar pushing with a mobile base.
//!
//! The crate is organised bottom-up: [`geometry`] holds planar poses and
//! angles, [`tactile`] turns object proximity into contact reports, [`controller`]
//! maps a contact and a target to a base twist, [`sim`] advances the pushed
//! object under friction, and [`harness`] runs trials and campaigns.

pub mod controller;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod sim;
pub mod tactile;

pub use error::{Error, Result};
