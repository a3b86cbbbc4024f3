//! Quasi-F-split multi-heights and perfectoid pure thresholds of
//! hypersurface lifts `W(k)[[x,y,z]]/(f)`, computed exactly through
//! Fedder-type ideal criteria over the prime field.

pub mod cli;
pub mod delta;
pub mod error;
pub mod groebner;
pub mod multiheight;
pub mod rdp;
pub mod ring;
pub mod threshold;
pub mod trace;

pub use error::{Error, Result};
