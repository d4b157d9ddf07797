//! Chamber-system toolkit: Coxeter groups, buildings, walls, quotients, and
//! free-subgroup certificates.
//!
//! The core objects are [`CoxeterSystem`] (words reduced by braid moves, with
//! a canonical shortlex-least form) and [`Building`] (a chamber system with a
//! Weyl distance valued in the group).  On top of those sit apartment and wall
//! machinery, quotients by a finite factor of the Weyl group, a Markov walk
//! along periodic wall-crossing galleries, and an end-to-end certificate that
//! two group elements generate a free subgroup of rank two.

pub mod apartment;
pub mod building;
pub mod config;
pub mod coxeter;
pub mod error;
pub mod report;

pub use apartment::Apartment;
pub use building::{Building, ChamberId, Gallery, Panel};
pub use config::Config;
pub use coxeter::{Bond, CoxeterMatrix, CoxeterSystem, Elem, OrderResult, Word};
pub use error::{Error, Result};
pub use report::{Check, Report};
