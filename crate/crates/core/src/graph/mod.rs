//! Similarity graphs over labeled items: MapAll candidate construction,
//! genome decoding, vertex importance and the importance classifier.

mod class_graph;
mod classify;
mod importance;
mod map;
mod similarity;

pub use class_graph::{decode, ClassGraph};
pub use classify::{link_weight, score_query, ImportanceClassifier, Prediction, QueryLinks};
pub use importance::{
    compute_importance, degree_importance, pagerank_importance, ImportanceConfig,
    ImportanceMeasure,
};
pub use map::{build_map_all, MapMatrix};
pub use similarity::{compute_similarity, Metric, SimilarityMatrix};
