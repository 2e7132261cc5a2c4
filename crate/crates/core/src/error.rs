use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported root system type {0}")]
    UnsupportedType(String),
    #[error("Weyl group exceeds the enumeration cap of {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("algebra of dimension {dim} exceeds the exterior algebra cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("unsupported prime {0}: need a prime p >= 5")]
    UnsupportedPrime(u64),
    #[error("finite group of order {order} exceeds the cap of {cap}")]
    CapExceeded { order: u128, cap: u128 },
    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
