pub mod contphf;
pub mod discretephf;
pub mod error;
pub mod exactalg;
pub mod gridcheck;
pub mod limits;
pub mod phfcli;
pub mod walkcount;
pub mod walkmodel;

pub use error::{Error, Result};
