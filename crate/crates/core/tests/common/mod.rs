#![allow(dead_code)]

use std::sync::Arc;

use rand::rngs::StdRng;
use rand::SeedableRng;

use smpkit::oracle::{closure_oracle_with, OracleConfig};
use smpkit::{Semigroup, SmpInstance, Tup};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn oracle(inst: &SmpInstance) -> bool {
    closure_oracle_with(
        inst,
        OracleConfig {
            cap: None,
            stop_at_target: true,
        },
    )
    .unwrap()
    .member
}

pub fn instance(s: &Arc<Semigroup>, gens: Vec<Tup>, target: Tup) -> SmpInstance {
    SmpInstance::new(s.clone(), gens, target).unwrap()
}

/// Every associative table of order 1 to 3.
pub fn small_semigroups() -> Vec<Semigroup> {
    let mut out = Vec::new();
    for order in 1..=3usize {
        let cells = order * order;
        for mut code in 0..order.pow(cells as u32) {
            let rows: Vec<Vec<usize>> = (0..order)
                .map(|_| {
                    (0..order)
                        .map(|_| {
                            let x = code % order + 1;
                            code /= order;
                            x
                        })
                        .collect()
                })
                .collect();
            if let Ok(s) = Semigroup::from_table(&rows, None) {
                out.push(s);
            }
        }
    }
    out
}
