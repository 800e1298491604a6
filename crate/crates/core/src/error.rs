use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Cones are reported by their ray indices in the fan they belong to, which
/// matches the index sets used in the text formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero vector has no primitive representative")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("ray {index} is not primitive")]
    NotPrimitiveRay { index: usize },
    #[error("ray {index} is the zero vector")]
    ZeroRay { index: usize },
    #[error("ray {index} duplicates ray {first}")]
    DuplicateRay { index: usize, first: usize },
    #[error("ray index {index} out of range")]
    RayIndexOutOfRange { index: usize },
    #[error("cone {cone:?} is not strongly convex")]
    NotStronglyConvex { cone: Vec<usize> },
    #[error("ray {ray} is not an extreme ray of cone {cone:?}")]
    NotExtremeRay { ray: usize, cone: Vec<usize> },
    #[error("ray {index} lies in no cone")]
    UnusedRay { index: usize },
    #[error("cones {first:?} and {second:?} do not meet in a common face")]
    BadIntersection { first: Vec<usize>, second: Vec<usize> },
    #[error("ray {ray} lies outside the support of the fan")]
    RayOutsideSupport { ray: String },
    #[error("ray {ray} is already a ray of the fan")]
    RayAlreadyPresent { ray: String },
    #[error("lattice rank {0} is not supported here (at most 2)")]
    RankTooHigh(usize),
    #[error("cone {cone} has no target cone containing its image")]
    Incompatible { cone: String },

    #[error("cone {cone:?} is not a cone of the fan")]
    ConeNotInFan { cone: Vec<usize> },
    #[error("operands live on different fans")]
    FanMismatch,
    #[error("image of orbit {cone:?} is not a union of torus orbits")]
    NotOrbitRepresentable { cone: Vec<usize> },

    #[error("cycle dimension {k} is out of range for lattice rank {rank}")]
    BadDimension { k: usize, rank: usize },
    #[error("morphism is neither from a complete fan nor a support-preserving refinement")]
    NotProper,
    #[error("fan is not complete")]
    NotComplete,
    #[error("fan is not smooth")]
    NotSmooth,
    #[error("cycle is not homogeneous of positive dimension")]
    BadGrade,

    #[error("the two decompositions expand to different functions")]
    NotSameFunction,

    #[error("diagram node {node} is not complete")]
    NodeNotComplete { node: String },
    #[error("base fan is not a subfan of node {node}")]
    BaseNotSubfan { node: String },
    #[error("edge {source_node} -> {target_node} is not a support-preserving refinement")]
    EdgeNotRefinement { source_node: String, target_node: String },
    #[error("unknown diagram node {0}")]
    UnknownNode(String),
    #[error("cone {cone:?} is not a cone of the base fan")]
    ConeNotInBase { cone: Vec<usize> },
    #[error("function is not the constant function 1 on the base")]
    NotConstantOne,
    #[error("procsm family differs from the sum of distinguished classes at node {node}")]
    DistinguishedSumMismatch { node: String },

    #[error("{line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
