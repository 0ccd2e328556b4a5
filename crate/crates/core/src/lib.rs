//! Exact computation of Schubert, key and top Lascoux polynomials.
//!
//! The crate computes every family by its operator recursion and cross-checks
//! it against independent routes: bumpless pipedream enumeration, the
//! reverse-complement transfer `r_{m,n}` between Schubert and top Lascoux
//! polynomials, perfect-tableau supports, and greedy basis expansions for
//! structure constants. All arithmetic is over exact rationals.

pub mod bases;
pub mod composition;
pub mod config;
pub mod diagram;
pub mod error;
pub mod expansion;
pub mod permutation;
pub mod pipedream;
pub mod poly;
pub mod snp;
pub mod tableau;
pub mod verify;

pub use bases::Engine;
pub use composition::WeakComposition;
pub use config::{Config, Limits, OutputFormat, Parallelism};
pub use diagram::{Diagram, Label};
pub use error::{Error, Result};
pub use expansion::{BasisExpansion, BasisIndex, BasisKind};
pub use permutation::Permutation;
pub use pipedream::{PipeGrid, Tile};
pub use poly::{Coeff, Polynomial};
pub use tableau::PerfectTableau;
