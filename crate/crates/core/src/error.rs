use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("search budget exhausted ({0} nodes)")]
    BudgetExhausted(u64),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("packing invalid: {0}")]
    Packing(String),

    #[error(
        "excluded parameter pair: U_{t_plus_1}(n,{r}) is outside the covered range \
         (the union-free density is open for (3,2s-1), (s+1,s+1), (s+1,s+2) with s>=2, and (4,7))"
    )]
    ExcludedPair { t_plus_1: usize, r: usize },

    #[error("m({n},{r},{lambda}) is not known exactly in this regime")]
    UnsolvedMatchingValue { n: usize, r: usize, lambda: usize },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn parameter(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }
}
