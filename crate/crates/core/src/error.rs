use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("field construction: {0}")]
    BadField(String),

    #[error("permutation: {0}")]
    BadPerm(String),

    #[error("geometry: {0}")]
    BadGeometry(String),

    #[error("group certificate failed: {0}")]
    Certificate(String),

    #[error("unknown group name {0:?}")]
    UnknownGroup(String),

    #[error("design invalid: {0}")]
    DesignInvalid(String),

    #[error("search exhausted: {0}")]
    SearchExhausted(String),

    #[error("sieve data: {0}")]
    SieveData(String),

    #[error("resource guard: {0} (pass the slow option to override)")]
    ResourceGuard(String),
}

pub type Result<T> = std::result::Result<T, Error>;
