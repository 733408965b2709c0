#![allow(dead_code)]

pub mod props;

/// Seed for every randomized property; also recorded in the acceptance manifest.
pub const SEED: u64 = 0x5eed_2017;

/// Draws per randomized property.
pub const DRAWS: usize = 100;
