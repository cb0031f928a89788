//! From-scratch enumeration of standard bases and the canonical `A_2`
//! forms that bound it.

mod canonical;
mod enumerate;
mod forms;
mod run;

pub use canonical::{canonicalize, CanonicalizationCertificate};
pub use enumerate::{
    enumerate_standard_bases, Rejection, SearchShard, SearchStats, ShardPlan, REJECTION_SAMPLE,
};
pub use forms::{a2_candidates, A2Family, A2Form};
pub use run::{
    classify_bases, full_classification, read_results, RunReport, SearchOptions, SearchOutcome,
    DEFAULT_SHARDS,
};
