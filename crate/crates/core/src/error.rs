use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: weight `{token}` is not a real number")]
    Weight { line: usize, token: String },

    #[error("edge list is empty")]
    EmptyInput,

    #[error("vertex index {index} out of range for graph with {n} vertices")]
    VertexOutOfRange { index: usize, n: usize },

    #[error("unknown vertex label `{0}`")]
    UnknownLabel(String),

    #[error("vertex subset is empty")]
    EmptySubset,

    #[error("adjacency matrix has spectral radius 0; centrality is undefined")]
    ZeroSpectrum,

    #[error("dominant eigenvalue is not simple (algebraic multiplicity {0})")]
    NotSimple(usize),

    #[error("graph is not connected; analyse each component separately")]
    Disconnected,

    #[error("operation requires an undirected graph")]
    Directed,

    #[error("hike enumeration requires an unweighted graph (all weights 1)")]
    Weighted,

    #[error("budget exceeded: {count} items would be generated, budget is {budget}")]
    Budget { count: u64, budget: u64 },

    #[error("{parts} parts give 2^{parts} intersection terms; evaluate the union directly instead")]
    TooManyParts { parts: usize },

    #[error("power iteration did not converge on a {n}-vertex graph; the graph is probably periodic")]
    NoConvergence { n: usize },

    #[error("{0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
