//! Exact Ehrhart δ-vectors, Newton spectra, box elements and ages, and the
//! hard Lefschetz / KKP criteria for simplicial lattice polytopes and
//! weighted simplices.

pub mod error;
pub mod exactmath;
pub mod fanbox;
pub mod lefschetz;
pub mod polytope;
pub mod spectrum;
pub mod weights;

pub use error::{Error, Result};
pub use exactmath::{Int, IntMatrix, Rat};
pub use fanbox::{AgePair, BoxElement, Fan, MaximalCone};
pub use lefschetz::{HLVerdict, Method, Witness};
pub use polytope::{DeltaVector, Facet, LatticePolytope};
pub use spectrum::FractionalPolynomial;
pub use weights::{SectorData, WeightSystem};
