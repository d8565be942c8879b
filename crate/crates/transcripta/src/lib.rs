//! Algebraic representations of time series.
//!
//! Real-valued series are turned into sequences of ordinal patterns —
//! permutations ranking each sliding window — and pairs of such symbolic
//! series are compared through *transcripts*: for group elements `a` and `b`,
//! the transcript `T(a, b) = b·a⁻¹` is the unique element mapping `a` to `b`.
//! On top of this sit permutation metrics (Cayley and Kendall), their
//! transport to arbitrary finite groups through the regular embedding,
//! entropic measures on transcript distributions, directed coupling
//! estimators, and a coupled Hénon-map laboratory that exercises the whole
//! pipeline.
//!
//! Real-valued computations are generic over [`Scalar`] (`f32`/`f64`);
//! every generic type defaults its scalar parameter to `f64`, so the
//! common case needs no type annotations.

pub mod alphabet;
pub mod coupling;
pub mod embed;
pub mod error;
pub mod group;
pub mod henon;
pub mod metric;
pub mod perm;
pub mod prob;
pub mod scalar;
pub mod series;

pub use alphabet::Alphabet;
pub use coupling::{
    ccc, coupling_report, directionality_indicator, mutual_information,
    symbolic_transfer_entropy, transcript_mutual_information, CouplingReport,
};
pub use embed::{
    distance_matrix, transported_distance_matrix, AdmissibleDistances, DistanceMatrix, Metric,
};
pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupElement, GroupSpec};
pub use henon::{
    experiment_entropy_complexity, experiment_order_classes, experiment_similarity,
    experiment_te_tmi, simulate, EntropyComplexityRow, HenonConfig, OrderClassRow, SimilarityRow,
    SweepConfig, TransferRow,
};
pub use metric::{
    distance_distribution, distance_series, lump_by_order_class, similarity_distance,
    similarity_distance_with, sliding_lp_series, window_lp_distance, DistanceHistogram,
    DistanceNormalization, DistanceSeries, OrderClassDist,
};
pub use perm::{
    cayley_distance, conjugate_transcript, kendall_distance, transcript, Permutation,
};
pub use prob::{
    estimate_dist, estimate_joint, independent_product_dist, js_distance, js_divergence,
    kl_divergence, normalized_entropy, shannon_entropy, statistical_complexity,
    symmetrized_kl, transcript_dist_from_joint, JointDist, LogBase, ProbDist,
};
pub use scalar::Scalar;
pub use series::{
    ordinal_pattern, pairwise_transcriptions, symbolize, transcribe, transcribe_padded,
    RealSeries, SymbolSeries, TieRule, TranscriptSeries,
};
