//! Error type shared by every fallible operation in the crate.

use thiserror::Error;

use crate::space::{RepId, Space};

#[derive(Debug, Error)]
pub enum Error {
    /// A rep id was used with a space that does not produce it.
    #[error("rep {id:?} does not belong to {space}")]
    RepNotInSpace { space: Space, id: RepId },

    /// Two objects built over different space models were combined.
    #[error("space mismatch: expected {expected}, got {got}")]
    SpaceMismatch { expected: Space, got: Space },

    /// An integrability/summability index is outside its admissible range.
    #[error("invalid index: {0}")]
    InvalidIndex(String),

    /// A degree or band limit exceeds the configured resource cap.
    #[error("{what} = {requested} exceeds the resource cap {cap} for {space}")]
    ResourceCap {
        space: Space,
        what: &'static str,
        requested: f64,
        cap: f64,
    },

    /// Convolution requested on a proper homogeneous space (not a group).
    #[error("convolution is only defined on group models, not {space}")]
    NotAGroup { space: Space },

    /// The parameters fall outside the hypotheses of the checked statement.
    /// Distinct from a numerical failure: the check never ran.
    #[error("parameters outside the statement's regime: {0}")]
    RegimeInvalid(String),

    /// A grid was used whose exactness degree is too small for the operation.
    #[error("grid exact_degree {exact_degree} is below the required {required}")]
    GridTooCoarse { exact_degree: f64, required: f64 },

    /// Malformed serialized data (fields, families, norm specs).
    #[error("deserialization: {0}")]
    Deserialize(String),
}

pub type Result<T> = std::result::Result<T, Error>;
