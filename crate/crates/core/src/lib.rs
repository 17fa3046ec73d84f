pub mod cache;
pub mod character;
pub mod error;
pub mod fixtures;
pub mod functor;
pub mod gf;
pub mod mullineux;
pub mod partition;
pub mod rank_one;
pub mod schur;
pub mod tableau;
pub mod tilting;
pub mod weights;

pub use error::{Error, Result};
pub use partition::Partition;

/// Property-test settings: `TILTLAB_SEED` overrides the fixed default seed.
#[cfg(test)]
pub(crate) fn prop_config(cases: u32) -> proptest::test_runner::Config {
    use proptest::test_runner::{Config, RngSeed};
    let seed = std::env::var("TILTLAB_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0x5eed);
    Config { cases, rng_seed: RngSeed::Fixed(seed), failure_persistence: None, ..Config::default() }
}
