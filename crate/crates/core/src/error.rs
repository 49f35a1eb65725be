use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a generalized Cartan matrix: {0}")]
    NotGcm(String),
    #[error("matrix is not symmetrizable: {0}")]
    NotSymmetrizable(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("Cartan data of the operands differ")]
    CartanMismatch,
    #[error("Cartan datum is not of finite type")]
    NotFiniteType,
    #[error("Cartan matrix is singular; the symmetric form on fundamental weights is undefined")]
    SingularCartan,
    #[error("expansion in v^-1 impossible: leading denominator coefficient {0} is not a unit")]
    NotExpandable(String),
    #[error("arrow count {arrows} between orbits {from} and {to} is not divisible by orbit size {size}")]
    NonIntegerEntry {
        from: usize,
        to: usize,
        arrows: usize,
        size: usize,
    },
    #[error("quiver is not admissible: {0}")]
    NotAdmissible(String),
    #[error("framing vector {copy} is not constant on a-orbits")]
    NonInvariantFraming { copy: usize },
    #[error("weight window exceeded: height {height} > depth {depth}")]
    DepthExceeded { height: usize, depth: usize },
    #[error("operator leaves the computed weight window at {0:?}")]
    WeightOutOfRange(Vec<i64>),
    #[error("highest-weight vertex is not fixed by the automorphism")]
    NonInvariantHighestWeight,
    #[error("string data differs along orbit {orbit} at vertex {vertex}")]
    OrbitOperatorMismatch { orbit: usize, vertex: usize },
    #[error("linear system for Θ at degree {0:?} has a nontrivial kernel")]
    Underdetermined(Vec<i64>),
    #[error("linear system for Θ at degree {0:?} has no solution")]
    Inconsistent(Vec<i64>),
    #[error("crystal is truncated at depth {0}; the operation needs a complete crystal")]
    IncompleteCrystal(i64),
    #[error("index {index} out of range (size {size})")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("internal arithmetic error: {0}")]
    Internal(String),
}
