//! Seeded random sampling of towers and tetragonal covers, and the batch
//! runner used by the acceptance suites and the command line.
//!
//! Randomness comes from ChaCha8 (`rand_chacha`) seeded with a 64-bit integer,
//! so a seed reproduces the same instance on every platform.

mod batch;
mod sample;

pub use batch::{configs_for, run_batch, BatchReport, InstanceResult, Suite};
pub use sample::{
    sample_h_tuple, sample_m0_tetragonal, sample_tower, ProfileMix, SampleConfig,
    DEFAULT_MAX_RETRIES,
};
