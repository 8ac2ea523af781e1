pub mod cyclofield;
pub mod ellcurve;
pub mod error;
pub mod etaeval;
pub mod heegner;
pub mod lseries;
pub mod modcurve;
pub mod qseries;
pub mod verify;

mod case;

pub use case::Case;
pub use cyclofield::{CycloNumber, Lattice};
pub use error::{Error, Result};
