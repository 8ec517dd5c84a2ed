//! Exact rational generating functions for rooted trees with finitely many
//! lineal isomorphism classes.

pub mod combid;
pub mod commclass;
pub mod error;
pub mod exactalg;
pub mod grouper;
pub mod matalg;
pub mod orbit;
pub mod treegen;

pub use error::{Error, Result};
