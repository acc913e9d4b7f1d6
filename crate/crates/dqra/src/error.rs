use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
///
/// Build-hypothesis variants carry the spelling used in reports
/// (`not-order-automorphism`, `aba-condition-failed`, ...) so that callers can
/// match on the text as well as on the variant.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("index {index} out of range for a carrier of size {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("containment error: pair ({0},{1}) lies outside the ambient relation")]
    NotContained(usize, usize),

    #[error("not a partial order: {0}")]
    NotPartialOrder(String),

    #[error("E is not an equivalence relation: {0}")]
    NotEquivalence(String),

    #[error("order pair ({0},{1}) is not inside E")]
    OrderNotInsideE(usize, usize),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("not-order-automorphism: alpha {0}")]
    NotOrderAutomorphism(String),

    #[error("beta-not-dual-automorphism: {0}")]
    BetaNotDualAutomorphism(String),

    #[error("beta-not-self-inverse: beta(beta({x})) = {image}")]
    BetaNotSelfInverse { x: usize, image: usize },

    #[error("gamma-not-inside-E: ({x},{image}) of {map} is not in E")]
    GammaNotInsideE {
        map: &'static str,
        x: usize,
        image: usize,
    },

    #[error("aba-condition-failed: alpha(beta(alpha({x}))) = {found} but beta({x}) = {expected}")]
    AbaConditionFailed {
        x: usize,
        found: usize,
        expected: usize,
    },

    #[error("carrier-cap-exceeded: found at least {found} up-sets (cap {cap})")]
    CarrierCapExceeded { found: usize, cap: usize },

    #[error("twisted order has {0} points; enumeration supports at most 128")]
    TooManyPoints(usize),

    #[error("relation {0} is not an element of the carrier")]
    NotInCarrier(String),

    #[error("malformed tables: {0}")]
    Malformed(String),

    #[error("not a lattice: {0}")]
    NotLattice(String),

    #[error("unresiduated: {0}")]
    Unresiduated(String),

    #[error("not-involutive: {0}")]
    NotInvolutive(String),

    #[error("not closed under {op}: {detail}")]
    NotClosed { op: &'static str, detail: String },

    #[error("{op} is not preserved at {args}: {detail}")]
    Preservation {
        op: &'static str,
        args: String,
        detail: String,
    },

    #[error("not injective: {0} and {1} have the same image")]
    NotInjective(String, String),

    #[error("assignment does not generate the algebra; unreached: {0}")]
    NotGenerated(String),

    #[error("unknown element name {0:?}")]
    UnknownElement(String),

    #[error("json error at {context}: {source}")]
    Json {
        context: String,
        #[source]
        source: serde_json::Error,
    },

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn json(context: impl Into<String>, source: serde_json::Error) -> Self {
        Error::Json {
            context: context.into(),
            source,
        }
    }
}
