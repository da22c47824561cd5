use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("order must be at least 1")]
    ZeroOrder,

    #[error("order {order} outside the supported range {min}..={max}")]
    OrderOutOfRange {
        order: usize,
        min: usize,
        max: usize,
    },

    #[error("tables have mismatched orders ({0} vs {1})")]
    OrderMismatch(usize, usize),

    #[error("entry {value} at ({row}, {col}) is out of range for order {order}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },

    #[error("table is not a quandle")]
    NotQuandle,

    #[error("invalid Alexander parameters (n={n}, t={t}, b={b}): {violated} is not 0 mod n")]
    InvalidParams {
        n: u64,
        t: u64,
        b: u64,
        violated: &'static str,
    },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("crossing {crossing}: arc label {label} out of range for {arcs} arcs")]
    ArcOutOfRange {
        crossing: usize,
        label: usize,
        arcs: usize,
    },

    #[error("crossing index {0} out of range")]
    CrossingOutOfRange(usize),

    #[error("crossing {0} is classical, expected a singular crossing")]
    NotSingular(usize),

    #[error("invalid tangle word: {0}")]
    InvalidWord(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
