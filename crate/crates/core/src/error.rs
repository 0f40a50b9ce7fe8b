use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("not a bijection on {len} vertices")]
    NotBijection { len: usize },
    #[error("vertex count mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("q = {q} must satisfy q mod 4 = {expected}")]
    WrongResidue { q: u64, expected: u64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph with {n} vertices exceeds oracle budget of {max_n}")]
    TooManyVertices { n: usize, max_n: usize },
    #[error("oracle enumeration exceeded {max_perms} permutations")]
    TooManyPermutations { max_perms: u64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RefineError {
    #[error("cell index {index} out of range ({cells} cells)")]
    NoSuchCell { index: usize, cells: usize },
    #[error("pivot vertex {vertex} is not in cell {cell}")]
    PivotNotInCell { vertex: usize, cell: usize },
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
}
