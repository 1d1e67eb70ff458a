//! Metrics, paired significance tests, rank-based classifier comparison and
//! critical difference diagrams.

pub mod cd;
pub mod comparison;
pub mod metrics;
pub mod wilcoxon;

pub use cd::{render_cd_svg, render_cd_text};
pub use comparison::{average_ranks, build_cliques, ComparisonReport, DEFAULT_ALPHA, MIN_DATASETS};
pub use metrics::{compute_metrics, MetricReport, PredictionRecord, NLL_FLOOR};
pub use wilcoxon::{holm_adjust, wilcoxon_signed_rank, WilcoxonResult, EXACT_MAX_N, WILCOXON_MIN_N};
