//! Berezin transforms and Berezin ranges of operators on the weighted Hardy
//! space `H_γ(𝔻)`.

pub mod cli;
pub mod closed_form;
pub mod error;
pub mod geometry;
pub mod kernel;
pub mod operators;
pub mod roots;
pub mod series;
pub mod series_oracle;

pub use closed_form::{predict_range, CriticalPoint, RangeDescription, RangeReport};
pub use error::{Error, Result};
pub use kernel::{DiskPoint, SpaceParams};
pub use operators::{berezin_transform, OperatorSpec, Symbol};
pub use series::PowerSeries;
