//! Deterministic inputs shared by the benchmarks.

use comonoid::coalg::interval_coalgebra;
use comonoid::comod::ComoduleMap;
use comonoid::random::{
    random_comodule, random_comodule_map, random_complex, trial_rng, GeneratorConfig,
};
use comonoid::{ChainComplex, Field};

const SEED: u64 = 0x5eed;

/// `count` random complexes with up to `max_dim` basis vectors per degree.
pub fn complexes(field: Field, max_dim: usize, count: u64) -> Vec<ChainComplex> {
    let cfg = GeneratorConfig::default().with_max_dim(max_dim);
    (0..count)
        .map(|t| random_complex(&mut trial_rng(SEED, t), field, &cfg))
        .collect()
}

/// `count` random maps between comodules over the interval coalgebra.
pub fn comodule_maps(field: Field, max_dim: usize, count: u64) -> Vec<ComoduleMap> {
    let c = interval_coalgebra(field, false).object;
    let cfg = GeneratorConfig::default();
    (0..count)
        .map(|t| {
            let mut rng = trial_rng(SEED, t);
            let m = random_comodule(&mut rng, &c, max_dim, &cfg).expect("comodule");
            let n = random_comodule(&mut rng, &c, max_dim, &cfg).expect("comodule");
            random_comodule_map(&mut rng, &m, &n, &cfg).expect("comodule map")
        })
        .collect()
}
