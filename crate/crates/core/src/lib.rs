//! Homotopy classes of maps from finite simplicial sets into Postnikov stages.

pub mod abelian;
pub mod em;
pub mod error;
pub mod homotopy;
pub mod intlinalg;
pub mod io;
pub mod postnikov;
pub mod samples;
pub mod simplicial;

pub use error::{Error, Result};
