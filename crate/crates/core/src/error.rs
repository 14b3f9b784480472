use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("pole at q = {at}: {detail}")]
    Pole { at: String, detail: String },

    #[error("degenerate weighted query (n={n}, h={h}, r={r}): factor j+h-k = 0 at j={j}, k={k}; the closed form leaves the rational function field")]
    Degenerate { n: u32, h: i64, r: u32, j: u32, k: u32 },

    #[error("resource guard: {0}")]
    Resource(String),

    #[error("invalid input: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Resource(_) => 3,
            _ => 2,
        }
    }
}
