//! Branched covers of the projective line as monodromy data, and the trigonal
//! construction for double covers of trigonal curves ramified in two points.
//!
//! The crate is organised bottom-up:
//!
//! - [`covers`]: permutations, covers, genus, components, isomorphism, nodal models;
//! - [`tower`]: degree-6 towers `C̃ → C → P¹` with their block system;
//! - [`forward`]: sections curve `Y`, involution, tetragonal quotient `X`, orientation cover `O`;
//! - [`inverse`]: the tetragonal-to-trigonal direction via unordered pairs of sheets;
//! - [`coefficients`]: exact evaluation of the binomial coefficient chain;
//! - [`toolkit`]: seeded sampling and batch verification;
//! - [`format`]: the JSON wire formats.

pub mod coefficients;
pub mod covers;
pub mod format;
pub mod forward;
pub mod inverse;
pub mod report;
pub mod toolkit;
pub mod tower;

mod error;

pub use error::Error;
