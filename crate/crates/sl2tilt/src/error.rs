use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("index {value} out of range 0..={max}")]
    OutOfRange { value: i64, max: i64 },
    #[error("index {0} is the Steinberg index q-1 and has no layer")]
    NoLayer(i64),
    #[error("symbol {0} is not invertible symbolically: omega = 0 and index is not a rim index")]
    NotInvertibleSymbolically(String),
    #[error("zero symbol has no {0}")]
    ZeroSymbol(&'static str),
    #[error("omega restricted to {{0,1}}, got {0}")]
    OmegaOutOfRange(i64),
    #[error("ext_cor1 called outside its dichotomy: m_(s-1)+b_s and lower digits of m={m} do not match a case for b={b}")]
    InvalidCase { m: i64, b: i64 },
    #[error("step {m}: symbol for simple {a} is {got} but the one-step rewrite predicts {expected}")]
    StateMismatch {
        m: i64,
        a: i64,
        got: String,
        expected: String,
    },
    #[error("step {m}: extension dimension {dim} for simple {a} (all runtime dimensions must be 0 or 1)")]
    ExtensionDimension { m: i64, a: i64, dim: u64 },
    #[error("step {m}: ceiling-form symbol for simple {a} still admits an extension to {c}")]
    ResidualExtension { m: i64, a: i64, c: i64 },
    #[error("no surjection found from the projective cover candidate (convention bug)")]
    NoSurjectionFound,
    #[error("module is projective; Heller translate undefined")]
    ProjectiveInput,
    #[error("not applicable: {0}")]
    NotApplicable(&'static str),
    #[error("module convention self-test failed: {0}. If this fires after local edits, flip the exponent sign of the torus generator (Holloway convention).")]
    Convention(String),
    #[error("fixture parse error: {0}")]
    Fixture(String),
}

pub type Result<T> = std::result::Result<T, Error>;
