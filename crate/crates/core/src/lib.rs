//! Weighted-coordinates poset block metrics on `Z_m^N`.
//!
//! A space is described by a poset on the block labels `[n]`, a label map giving each
//! block its length `k_i`, and a coordinate weight on `Z_m`. On top of that the crate
//! provides
//!
//! - weight and distance evaluation ([`blockspace`]),
//! - exact weight distributions and ball sizes ([`distribution`]), cross-checked
//!   against exhaustive enumeration,
//! - Singleton bound and MDS analysis for codes ([`codes`]),
//! - the chain (NRT block space) closed forms, packing radius and minimum distance
//!   relations ([`nrt`]).
//!
//! All counts are exact [`num_bigint::BigUint`] values.

pub mod blockspace;
pub mod codes;
pub mod distribution;
pub mod error;
pub mod nrt;
pub mod poset;
pub mod weights;

pub use blockspace::{BlockSpace, BlockVector, LabelMap};
pub use codes::{Code, CodeAnalysis, Metric};
pub use distribution::{Method, WeightDistribution};
pub use error::{Error, Result};
pub use poset::{enumerate_ideals, Ideal, IdealIndex, LabelSet, Poset};
pub use weights::{WeightFunction, WeightKind};

/// Resource guards for the exhaustive routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest `m^N` the brute-force enumerations will walk.
    pub brute_cap: u64,
    /// Largest number of ideals (including the empty one) to materialise.
    pub ideal_cap: usize,
    /// Largest number of codewords to iterate for a linear code.
    pub codeword_cap: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            brute_cap: 10_000_000,
            ideal_cap: poset::DEFAULT_IDEAL_CAP,
            codeword_cap: 1_000_000,
        }
    }
}
