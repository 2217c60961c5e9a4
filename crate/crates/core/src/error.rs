use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong while building posets, completions,
/// extensions, instance documents or verification runs.
#[derive(Debug, Error)]
pub enum Error {
    #[error("elements `{0}` and `{1}` are mutually related; the relation has a cycle")]
    Cycle(String, String),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("duplicate element label `{0}`")]
    DuplicateElement(String),

    #[error("poset has {kind} `{element}`")]
    HasExtremum { kind: &'static str, element: String },

    #[error("subset is not contained in the reference set")]
    NotASubset,

    #[error("{what} of size {size} exceeds the cap of {cap}")]
    SizeCap {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("cuts or subsets belong to different base posets")]
    MixedBase,

    #[error("invalid cofinal selector: {0}")]
    InvalidSelector(String),

    #[error("instance generation exhausted after {attempts} attempts: {reason}")]
    GenerationExhausted { attempts: usize, reason: String },

    #[error("unknown check `{0}`")]
    UnknownCheck(String),

    #[error("parse error at `{path}`: {message}")]
    Parse { path: String, message: String },

    #[error("validation error: {0}")]
    Validation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
