use thiserror::Error;

/// Row/column discriminator for Latin-property violations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Row,
    Column,
}

impl std::fmt::Display for Axis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Axis::Row => "row",
            Axis::Column => "column",
        })
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("table is empty")]
    EmptyTable,

    #[error("table is not square: row {row} has {found} entries, expected {expected}")]
    NotSquare { row: usize, expected: usize, found: usize },

    #[error("entry {value} at row {row}, column {col} is out of range for order {order}")]
    BadEntry { row: usize, col: usize, value: usize, order: usize },

    #[error("not a Latin square: {axis} {index} repeats symbol {symbol}")]
    NotLatin { axis: Axis, index: usize, symbol: u8 },

    #[error("generator set is empty")]
    EmptyGenerators,

    #[error("order {order} exceeds the supported bound {max} for this operation")]
    OrderTooLarge { order: usize, max: usize },

    #[error("syntax error at byte {position}: expected {expected}")]
    Syntax { position: usize, expected: &'static str },

    #[error("unbound variable `{name}`")]
    UnboundVariable { name: String },

    #[error("unknown identity key `{name}` (expected one of M, Sl, Sr, Fl, Fr, El, Er, K, or an equation)")]
    UnknownIdentityKey { name: String },

    #[error("unknown statement `{name}`")]
    UnknownStatement { name: String },

    #[error("`{spec}` appears in both the satisfy and violate sets")]
    ConflictingConstraint { spec: String },

    #[error("min order {min} exceeds max order {max}")]
    InvalidOrderRange { min: usize, max: usize },

    #[error("invalid parastrophe kind `{name}` (expected l, r, or opp)")]
    UnknownParastrophe { name: String },

    #[error("bad table file: {0}")]
    TableFormat(String),

    #[error("bad corpus file: {0}")]
    CorpusFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
