use thiserror::Error;

use crate::gset::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input is not a Brauer G-set: {0:?}")]
    Invalid(Box<ValidationReport>),
    #[error("input is not an fms-BG (U = E with fixed-point-free tau required)")]
    NotFmsBg,
    #[error("input is not a modified Brauer graph (U = E with integral f-degree required)")]
    NotModifiedBg,
    #[error("input is not connected")]
    NotConnected,
    #[error("invalid walk: {0}")]
    InvalidWalk(String),
    #[error("map is not a covering: {0}")]
    NotCovering(String),
    #[error("generated group exceeds the closure bound of {0} elements")]
    GroupBound(usize),
    #[error("{0}")]
    Domain(String),
}
