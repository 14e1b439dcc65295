//! Passport records on disk and the statistics computed from them.

pub mod error;
pub mod jsonl;
pub mod record;
pub mod stats;

pub use error::{DbError, Result};
pub use jsonl::{parse_jsonl, read_jsonl, to_jsonl, write_jsonl};
pub use record::{parse_key, passport_key, GroupRecord, KeyParts, Keyed, OrbitRecord, PassportRecord, PointedRecord};
pub use stats::{beta, counts_table, max_size_table, passport_weight, BetaValue, StatsTable};
