use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("alphabet size {0} is outside 2..=9")]
    InvalidAlphabet(u8),

    #[error("symbol {symbol} is not in [{m}]")]
    InvalidSymbol { symbol: u8, m: u8 },

    #[error("length {len} exceeds the packed capacity {capacity} for alphabet size {m}")]
    CapacityExceeded { len: usize, m: u8, capacity: usize },

    #[error("colour space does not fit in 64 bits")]
    ColourOverflow,

    #[error("profile does not match: {0}")]
    ProfileMismatch(String),

    #[error("template has no letters")]
    EmptyTemplate,

    #[error("placement has {blocks} blocks but the template has {letters} letters")]
    ArityMismatch { blocks: usize, letters: usize },

    #[error("invalid placement: {0}")]
    InvalidPlacement(String),

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("invalid size mode: {0}")]
    InvalidSizeMode(String),

    #[error("ambient length {n} is too small, need at least {required}")]
    AmbientTooSmall { n: usize, required: usize },

    #[error("substitution mismatch: {0}")]
    SubstitutionMismatch(String),

    #[error("index {index} is outside 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("word {0} is not in the family of 2/3-words with the required number of 2's")]
    NotInFamilyA(String),

    #[error("word {0} is outside the colouring's domain")]
    DomainError(String),

    #[error("encoding mismatch: {0}")]
    EncodingMismatch(String),

    #[error("generator supports overlap")]
    SupportOverlap,

    #[error("invalid generator set: {0}")]
    InvalidGenerators(String),

    #[error("invalid box: {0}")]
    InvalidBox(String),

    #[error("subset is not homogeneous for the induced colouring")]
    NotHomogeneous,

    #[error("no two of the z-words share a colour: base colouring uses more than {k} colours")]
    NoCollision { k: usize },

    #[error("extraction produced a non-monochromatic block set")]
    ExtractionContradiction,

    #[error("re-evaluation disagrees with the search result")]
    VerificationFailed,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
