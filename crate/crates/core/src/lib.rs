//! Exact combinatorics and stochastic simulation around the oriented swap
//! process (OSP), the corner growth process and last passage percolation
//! (LPP).
//!
//! The crate is organized bottom-up:
//!
//! * [`shapes`]: Young diagrams, tableaux, staircase standard tableaux and
//!   their path parameters.
//! * [`sortnet`]: sorting networks (reduced words of the reverse
//!   permutation) and their path parameters.
//! * [`edelman_greene`]: the Schützenberger operator and the Edelman–Greene
//!   bijection between the two families.
//! * [`rsk`]: LPP tableaux, the RSK and Burge correspondences on arbitrary
//!   shapes through non-intersecting path maxima, and an exact oracle for the
//!   border-strip laws under geometric weights.
//! * [`genfun`]: exact partial-fraction arithmetic for the permutation-indexed
//!   generating functions of both random walks.
//! * [`processes`]: seeded samplers for the OSP, corner growth and LPP, plus
//!   the two-sample statistics used to compare them.
//! * [`densities`]: hypoexponential laws, path-decomposed joint densities,
//!   the LPP density recursion and the LOE distribution function.

pub mod densities;
pub mod edelman_greene;
pub mod error;
pub mod factor;
pub mod genfun;
pub mod io;
pub mod perm;
pub mod processes;
pub mod report;
pub mod rsk;
pub mod shapes;
pub mod sortnet;

pub use error::{Error, Result};
pub use factor::GeneratingFactor;
pub use perm::Permutation;
pub use report::{TestReport, Verdict};
pub use shapes::{Cell, StandardTableau, Tableau, YoungDiagram};
pub use sortnet::SortingNetwork;
