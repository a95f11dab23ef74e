use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("width k = {0} is outside the supported range 3..=4096")]
    WidthOutOfRange(u32),

    #[error("operands have different widths (k = {left} and k = {right})")]
    WidthMismatch { left: u32, right: u32 },

    #[error("{value} is even; the operation is only defined for odd residues")]
    EvenInput { value: String },

    #[error(
        "{h} is not a semi-primitive root base modulo 2^{k}: h mod 8 = {mod8}, but a base must satisfy h mod 8 = 3 or 5"
    )]
    InvalidBase { h: String, k: u32, mod8: u8 },

    #[error("bit index {index} is out of range for width k = {width}")]
    BitIndex { index: u32, width: u32 },

    #[error("cannot truncate a width-{from} residue to the wider width {to}")]
    Widening { from: u32, to: u32 },

    #[error("{what} is limited to k <= {limit} (got k = {k})")]
    TooLarge {
        what: &'static str,
        k: u32,
        limit: u32,
    },

    #[error("invalid {what}: {reason}")]
    Invalid { what: &'static str, reason: String },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn invalid(what: &'static str, reason: impl Into<String>) -> Self {
        Error::Invalid {
            what,
            reason: reason.into(),
        }
    }
}
