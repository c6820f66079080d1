use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("scale parameter must be {requirement}, got {value}")]
    InvalidScale {
        requirement: &'static str,
        value: f64,
    },

    #[error("derivative order {order} outside supported range {min}..={max}")]
    OrderOutOfRange { order: u32, min: u32, max: u32 },

    #[error("kernel radius {radius} leaves no valid samples in a signal of length {len}")]
    SupportTooLarge { radius: usize, len: usize },

    #[error("kernel has only zero coefficients")]
    ZeroKernel,

    #[error("{width}x{height} image too small for radius-{radius} evaluation at the center")]
    ImageTooSmall {
        width: usize,
        height: usize,
        radius: usize,
    },

    #[error("signature has no extremum to select")]
    NoExtremum,

    #[error("{0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
        Err(Error::InvalidArgument(msg.into()))
    }
}
