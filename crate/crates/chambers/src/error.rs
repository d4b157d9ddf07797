//! Crate-wide error type.
//!
//! Every fallible operation in the crate returns [`Error`].  Variants are
//! grouped roughly by the layer that raises them: Coxeter matrices and words,
//! buildings, apartments and walls, quotients, chamber dynamics, and the
//! free-subgroup search.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    // --- Coxeter matrices and words ---------------------------------------
    #[error("a Coxeter matrix must have at least one generator")]
    RankZero,
    #[error("generator index {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },
    #[error("conflicting entries for pair ({i}, {j}): the matrix must be symmetric")]
    AsymmetricEntry { i: usize, j: usize },
    #[error("matrix entry for pair ({i}, {j}) must be at least 2 (got {m})")]
    EntryTooSmall { i: usize, j: usize, m: u32 },
    #[error("diagonal entries are implicitly 1 and may not be set (pair ({i}, {i}))")]
    DiagonalEntry { i: usize },
    #[error("word uses letter {letter} but the system has rank {rank}")]
    LetterOutOfRange { letter: usize, rank: usize },
    #[error("elements belong to different Coxeter systems")]
    SystemMismatch,
    #[error("braid-move closure exceeded the cap of {cap} words; raise the cap to proceed")]
    BraidCapExceeded { cap: usize },
    #[error("unknown generator name {name:?}")]
    UnknownGenerator { name: String },
    #[error("subgroup enumeration exceeded {cap} elements; the chosen generators likely span an infinite subgroup")]
    SubgroupCapExceeded { cap: usize },
    #[error("generators {gens:?} do not span a finite-type subdiagram")]
    SubgroupNotFinite { gens: Vec<String> },

    // --- buildings --------------------------------------------------------
    #[error("chamber id {0} is not materialized in this building")]
    UnknownChamber(u32),
    #[error("unknown chamber name {name:?}")]
    UnknownChamberName { name: String },
    #[error("request reaches depth {needed} but the building is only defined out to radius {horizon}")]
    HorizonExceeded { needed: u32, horizon: u32 },
    #[error("panel of type {ty} at chamber {chamber} is truncated by the ball boundary")]
    PanelIncomplete { chamber: u32, ty: String },
    #[error("chamber budget of {cap} exceeded while enumerating the ball")]
    ChamberBudgetExceeded { cap: usize },
    #[error("explicit building is malformed: {reason}")]
    MalformedExplicit { reason: String },
    #[error("chambers are not gallery-connected")]
    Disconnected,
    #[error("graph-product vertex {name:?} needs group size at least 2 (got {size})")]
    VertexGroupTooSmall { name: String, size: u32 },
    #[error("generator names collide across product factors: {name:?}")]
    ProductNameCollision { name: String },
    #[error("operation requires a group-like building (thin or graph-product backend)")]
    NotGroupLike,
    #[error("gallery is malformed: {reason}")]
    BadGallery { reason: String },

    // --- apartments and walls ---------------------------------------------
    #[error("no apartment of radius {radius} through the requested chambers (search exhausted)")]
    ApartmentSearchExhausted { radius: u32 },
    #[error("apartment of radius {radius} does not fit inside the building ball (needs margin {needed})")]
    ApartmentOutOfRoom { radius: u32, needed: u32 },
    #[error("chamber is not in the image of the apartment")]
    NotInApartment,
    #[error("the two walls coincide; a wall-to-wall gallery needs distinct walls")]
    SameWall,
    #[error("wall lies outside the apartment ball")]
    WallOutsideBall,
    #[error("no wall parallel to the given one can exist: the system has the finite direct factor {factor:?}; quotient it away first")]
    NoParallelWall { factor: Vec<String> },
    #[error("parallel-wall search exhausted radius {radius} without an exact certificate")]
    ParallelUncertified { radius: u32 },
    #[error("wall has no branching panel, so branching cannot propagate")]
    WallNotBranching,

    // --- quotients ---------------------------------------------------------
    #[error("generators {gens:?} are not a union of finite diagram components")]
    BadQuotientGenerators { gens: Vec<String> },
    #[error("quotient class map is inconsistent: {reason}")]
    BadQuotient { reason: String },

    // --- dynamics ----------------------------------------------------------
    #[error("action generator {gen:?} breaks the W-metric on pair ({a}, {b})")]
    ActionNotIsometric { gen: String, a: String, b: String },
    #[error("action generator {gen:?} is not a partial bijection: {reason}")]
    ActionNotBijective { gen: String, reason: String },
    #[error("action is undefined on chamber {chamber} (left multiplication leaves the ball)")]
    ActionOutOfBall { chamber: u32 },
    #[error("period word must have positive even length")]
    BadPeriodWord,
    #[error("transition ({a}, {pa}) -> ({b}, {pb}) needs consecutive phases and a shared panel")]
    BadTransition { a: u32, pa: u32, b: u32, pb: u32 },
    #[error("no return path to the target orbit within the explored quotient graph ({nodes} nodes)")]
    NoReturnPath { nodes: usize },
    #[error("the building is not thin near the base chamber, so chamber distances do not define a homomorphism")]
    NotThin,

    // --- free-subgroup search ----------------------------------------------
    #[error("no branching panel within radius {radius}; the building is thin there (use the thin-case homomorphism instead)")]
    NoBranchingPanel { radius: u32 },
    #[error("free word is not freely reduced: {reason}")]
    FreeWordNotReduced { reason: String },
    #[error("{what} budget of {cap} exhausted")]
    BudgetExhausted { what: String, cap: usize },
    #[error("freeness certificate failed: {reason}")]
    CertificateFailed { reason: String },

    // --- documents ----------------------------------------------------------
    #[error("document error: {0}")]
    Document(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
