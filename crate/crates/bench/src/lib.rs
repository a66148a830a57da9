//! Fixtures shared by the benchmarks.

use hlspec_core::weights::{construct_simplex, enumerate_reflexive};
use hlspec_core::{LatticePolytope, WeightSystem};

/// The reflexive 4-simplex with the largest weight sum.
pub fn heaviest_reflexive_4simplex() -> (WeightSystem, LatticePolytope) {
    let w = enumerate_reflexive(4)
        .expect("dimension 4 is supported")
        .into_iter()
        .max_by_key(|w| w.mu())
        .expect("nonempty");
    let p = construct_simplex(&w).expect("reduced");
    (w, p)
}

pub fn simplex(q: &[u64]) -> LatticePolytope {
    let w = WeightSystem::new(q.to_vec()).expect("valid weights");
    construct_simplex(&w).expect("reduced")
}
