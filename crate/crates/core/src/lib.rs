pub mod descent;
pub mod dioph;
pub mod error;
pub mod exactnum;
pub mod hyperchi;
pub mod measure;
pub mod quadfield;
pub mod report;
pub mod rouche;
pub mod series;

pub use error::{Error, Result};
