//! Symbolic Penrose transform for homogeneous bundles on flag manifolds of
//! `SL(n+1, C)`.

pub mod bbw;
pub mod charlib;
pub mod cli;
pub mod error;
pub mod flagspace;
pub mod penrose;
pub mod relforms;
pub mod render;
pub mod rootsys;

pub use bbw::{cohomology, direct_images, CohomologyEntry, CohomologyResult};
pub use error::{Error, Result};
pub use flagspace::{Bundle, BundleSum, FlagSpace, SpaceKind};
pub use penrose::{transform, Complex, E1Page, GradedInput, Transform};
pub use rootsys::Weight;
