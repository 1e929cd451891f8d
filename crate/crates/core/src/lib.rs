//! Tsallis, cumulative Tsallis and residual Tsallis entropies of simple
//! random, ranked set and maximum ranked set (unequal samples) designs.

pub mod bounds;
pub mod cumulative;
pub mod dist;
pub mod error;
pub mod residual;
pub mod sim;
pub mod special;
pub mod theorems;
pub mod tsallis;

pub use dist::{BetaKernel, CustomLaw, DistributionModel, Family, MaxOrderStatLaw};
pub use error::{Error, Result};
pub use tsallis::{Design, DesignSpec, EntropyOrder, EntropyReport, Method, Route};
