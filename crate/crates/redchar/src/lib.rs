//! Exact character theory of `SO4(F_q)` and its building blocks.
//!
//! Every character value is an exact element of a cyclotomic field ([`cyclo::Cyc`]).
//! The crate computes conjugacy classes of `SO4(F_q) = GL_{2,2}(F_q)/F_q^×` both
//! symbolically and by brute-force orbit enumeration, evaluates the complete
//! irreducible character table, checks it against an independent
//! Dixon–Schneider oracle, and builds Deligne–Lusztig characters, Green
//! functions and finite stability tests on top of it. A small `SL3(F_q)` module
//! handles regular unipotent labels for `q ≡ 1 (mod 3)`.
//!
//! ```
//! use redchar::{chartab, classes::So4};
//!
//! let g = So4::new(3).unwrap();
//! let table = chartab::list_irreducibles(&g).unwrap();
//! assert_eq!(table.len(), g.num_classes());
//! ```

pub mod chartab;
pub mod classes;
pub mod classfn;
pub mod cyclo;
pub mod dl;
pub mod ff;
pub mod groups;
pub mod parahoric;
pub mod report;
pub mod sl3;
pub mod stability;

pub use cyclo::{Cyc, Rat};

/// Errors raised by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Bad parameters, such as `q` not an odd prime or a cubic check with `q ≢ 1 (mod 3)`.
    #[error("usage error: {0}")]
    Usage(String),
    /// An argument outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A brute-force computation would exceed its time or size budget.
    #[error("resource budget exceeded: {0}")]
    Budget(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Seconds allowed for oracle runs, read from `REDCHAR_BUDGET_SECS` (default 600).
pub fn budget_secs() -> u64 {
    std::env::var("REDCHAR_BUDGET_SECS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(600)
}
