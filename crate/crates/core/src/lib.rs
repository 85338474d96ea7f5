//! Exact construction and analysis of the stretched Birkhoff polytope
//! 𝒯ₙ(ε): the convex hull of all n×n permutation matrices after tours
//! (single n-cycles) are scaled by 1+ε and non-tours are shifted by ε/n
//! in every entry.
//!
//! Everything is computed in exact rational arithmetic: point
//! construction ([`transform`]), extreme-point classification with
//! membership/separation certificates ([`extremality`]), an LP-based
//! Hamiltonicity decision with theorem-bound checks ([`hamilton`]), and
//! complete facet enumeration by double description ([`facets`]), all on
//! top of a certificate-producing exact simplex solver ([`lp`]).

pub mod error;
pub mod extremality;
pub mod facets;
pub mod hamilton;
pub mod lp;
pub mod perm;
pub mod rational;
pub mod transform;

pub use error::{Error, Result};

/// Caps the global rayon pool; 0 leaves the default (one thread per core).
/// Later calls after the pool exists are ignored, matching rayon.
pub fn configure_parallelism(threads: usize) {
    if threads == 0 {
        return;
    }
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
}
