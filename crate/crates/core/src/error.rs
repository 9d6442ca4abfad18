use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operation requires a nonempty word")]
    EmptyWord,

    #[error("no image given for variable x{0}")]
    MissingImage(u32),

    #[error("image of variable x{0} has a constant term")]
    ConstantTermImage(u32),

    #[error("sigma of the empty word needs a bounded truncation level")]
    UnboundedEmptyWord,

    #[error("{what} = {value} exceeds the configured cap {cap}")]
    ResourceCap {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("variable x{0} is not assigned")]
    UnassignedVariable(u32),

    #[error("parameter t{} is not assigned", .0 + 1)]
    UnassignedParameter(usize),
}

impl Error {
    pub fn is_resource_cap(&self) -> bool {
        matches!(self, Error::ResourceCap { .. })
    }
}
