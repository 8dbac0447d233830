use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is singular (det = {0:e})")]
    Singular(f64),
    #[error("identity has no fixed points")]
    IdentityMap,
    #[error("geodesic endpoints coincide (chordal separation {0:e})")]
    DegenerateGeodesic(f64),
    #[error("geodesics are identical")]
    IdenticalGeodesics,
    #[error("geodesics share an endpoint and have no common perpendicular")]
    AsymptoticGeodesics,
    #[error("{0} is not loxodromic")]
    NotLoxodromic(String),
    #[error("word `{0}` represents the identity")]
    TrivialWord(String),
    #[error("cannot parse word: {0}")]
    WordParse(String),
    #[error("invalid genus {0}: surfaces need genus >= 2")]
    InvalidGenus(usize),
    #[error("relator residual {0:e} exceeds tolerance")]
    RelatorViolation(f64),
    #[error("representation is not {0}")]
    WrongKind(&'static str),
    #[error("no element with non-real trace up to word length {0}")]
    NoComplexTrace(usize),
    #[error("growth fit needs at least 3 radii, got {0}")]
    GrowthGridTooSmall(usize),
    #[error("spectrum is already entropy-normalized")]
    AlreadyNormalized,
    #[error("normalization factor must be positive, got {0}")]
    NonPositiveScale(f64),
    #[error("spectra have no common classes")]
    EmptyOverlap,
    #[error("chart image is at 0 or infinity")]
    ExcludedPoint,
    #[error("spiral witness search failed: {0}")]
    Witness(String),
    #[error("no separation certificate found; best aligned ratio {}", best_ratio.map_or("none".to_string(), |r| r.to_string()))]
    NoCertificate { best_ratio: Option<f64> },
    #[error("{config} pair ({a}, {b}) violates its length inequality: slack {slack:e}")]
    TriangleViolation { a: String, b: String, config: &'static str, slack: f64 },
    #[error("image axes do not cross (common perpendicular {0:e})")]
    NonCrossingAxes(f64),
    #[error("schema mismatch: expected `{expected}`, found `{found}`")]
    Schema { expected: String, found: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
