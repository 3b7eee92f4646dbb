use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("not a lattice of flats: {0}")]
    NotALattice(String),

    #[error("cover-partition axiom fails above flat {flat}: {detail}")]
    CoverPartitionViolation { flat: String, detail: String },

    #[error("matroid has loops: the empty set is not a flat")]
    HasLoops,

    #[error("duplicate ground label {0:?}")]
    DuplicateLabel(String),

    #[error("unknown ground label {0:?}")]
    UnknownLabel(String),

    #[error("ground set too large: {0} elements (limit {limit})", limit = crate::flat::MAX_GROUND)]
    GroundTooLarge(usize),

    #[error("ground labels collide in direct sum: {0:?}")]
    LabelCollision(String),

    #[error("{0} is not a flat")]
    NotAFlat(String),

    #[error("building sets may not contain the empty flat")]
    EmptyMember,

    #[error("not a building set: {0}")]
    NotABuildingSet(String),

    #[error("flat {0} is not a member of the building set")]
    XNotInBuildingSet(String),

    #[error("flat {0} is a maximal member of the building set")]
    XMaximal(String),

    #[error("enumeration cap exceeded: {needed} candidates, cap {cap}")]
    CapExceeded { needed: u128, cap: u128 },

    #[error("{0}")]
    NotNested(String),

    #[error("flat {x} is not in the link of {z}")]
    NotInLink { z: String, x: String },

    #[error("Gram matrix of facet {0} is singular")]
    SingularGram(String),

    #[error("no cubical function found after {attempts} attempts")]
    SearchExhausted { attempts: usize },

    #[error("facets {0} and {1} share a vertex")]
    DuplicateVertices(String, String),

    #[error("cubical function is missing a value for {0}")]
    MissingValue(String),

    #[error("not an NL-labeling: {0}")]
    NotALabeling(String),

    #[error("function is not cubical: {0}")]
    NonCubical(String),

    #[error("vector length {got} does not match ground set size {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("gamma does not separate facets {0} and {1}")]
    GammaTie(String, String),

    #[error("complex is not pure: facet sizes {0} and {1}")]
    NotPure(usize, usize),

    #[error("facet {0} appears twice in the order")]
    DuplicateFacet(String),

    #[error("orders are over different facet sets")]
    MismatchedFacetSets,

    #[error("the EL order needs the maximal building set")]
    ELRequiresMaximal,

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
