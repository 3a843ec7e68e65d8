//! Reference semigroups and random instance generation.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::builtin::builtin;
use crate::error::Result;
use crate::semigroup::{Elem, Semigroup};
use crate::tuple::{SmpInstance, Tup};

/// Every catalog semigroup, by builtin name.
pub const CATALOG: &[&str] = &[
    "Z2_1",
    "null(2)",
    "null(3)",
    "semilattice_chain(1)",
    "semilattice_chain(2)",
    "semilattice_chain(3)",
    "cyclic_group(2)",
    "cyclic_group(3)",
    "cyclic_group(4)",
    "symmetric_group(3)",
    "T(2)",
    "T(3)",
    "direct_product(semilattice_chain(2),cyclic_group(2))",
];

/// Catalog semigroups that are Clifford.
pub const CLIFFORD_CATALOG: &[&str] = &[
    "semilattice_chain(1)",
    "semilattice_chain(2)",
    "semilattice_chain(3)",
    "cyclic_group(2)",
    "cyclic_group(3)",
    "cyclic_group(4)",
    "symmetric_group(3)",
    "direct_product(semilattice_chain(2),cyclic_group(2))",
];

/// Catalog semigroups that are nilpotent.
pub const NILPOTENT_CATALOG: &[&str] = &["null(2)", "null(3)"];

/// Ideal extensions of a Clifford semigroup by a nilpotent one. The last two
/// are neither Clifford nor nilpotent.
pub const EXTENSION_CATALOG: &[&str] = &[
    "null(2)",
    "null(3)",
    "direct_product(null(2),cyclic_group(2))",
    "direct_product(null(2),semilattice_chain(2))",
];

/// Semigroup used by the Clifford performance smoke test.
pub const CLIFFORD_BENCH: &str = "direct_product(semilattice_chain(2),cyclic_group(2))";

pub fn load(names: &[&str]) -> Vec<Arc<Semigroup>> {
    names
        .iter()
        .map(|n| Arc::new(builtin(n).expect("catalog names are valid builtins")))
        .collect()
}

pub fn random_elem<R: Rng + ?Sized>(s: &Semigroup, rng: &mut R) -> Elem {
    s.elem(rng.gen_range(0..s.order())).expect("in range")
}

pub fn random_tuple<R: Rng + ?Sized>(s: &Semigroup, n: usize, rng: &mut R) -> Tup {
    (0..n).map(|_| random_elem(s, rng)).collect()
}

/// Product of 1 to `max_len` generators chosen at random.
pub fn random_product<R: Rng + ?Sized>(
    s: &Semigroup,
    gens: &[Tup],
    max_len: usize,
    rng: &mut R,
) -> Tup {
    let len = rng.gen_range(1..=max_len.max(1));
    let mut out = gens.choose(rng).expect("at least one generator").clone();
    for _ in 1..len {
        out.mul_assign(s, gens.choose(rng).expect("at least one generator"));
    }
    out
}

/// `k` uniform generators in `S^n`; the target is a planted product of
/// generators half of the time and uniform otherwise.
pub fn random_instance<R: Rng + ?Sized>(
    s: &Arc<Semigroup>,
    n: usize,
    k: usize,
    rng: &mut R,
) -> Result<SmpInstance> {
    let gens: Vec<Tup> = (0..k).map(|_| random_tuple(s, n, rng)).collect();
    let target = if rng.gen_bool(0.5) {
        random_product(s, &gens, 2 * s.order() + 2, rng)
    } else {
        random_tuple(s, n, rng)
    };
    SmpInstance::new(s.clone(), gens, target)
}

/// [`random_instance`] with `n` and `k` drawn from `1..=max_n`, `1..=max_k`.
pub fn random_small_instance<R: Rng + ?Sized>(
    s: &Arc<Semigroup>,
    max_n: usize,
    max_k: usize,
    rng: &mut R,
) -> Result<SmpInstance> {
    let n = rng.gen_range(1..=max_n);
    let k = rng.gen_range(1..=max_k);
    random_instance(s, n, k, rng)
}

/// Clifford smoke instance over [`CLIFFORD_BENCH`]: uniform generators and
/// a product of 64 of them as target. The target lies in the bottom group
/// at every coordinate with high probability, so no generator is filtered.
pub fn clifford_bench_instance<R: Rng + ?Sized>(
    n: usize,
    k: usize,
    rng: &mut R,
) -> Result<SmpInstance> {
    let s = Arc::new(builtin(CLIFFORD_BENCH)?);
    let gens: Vec<Tup> = (0..k).map(|_| random_tuple(&s, n, rng)).collect();
    let mut target = gens.choose(rng).expect("k >= 1").clone();
    for _ in 1..64 {
        target.mul_assign(&s, gens.choose(rng).expect("k >= 1"));
    }
    SmpInstance::new(s, gens, target)
}

/// `T(2)` smoke instance. Half the generators are permutations and the
/// other half are permutations made constant at three coordinates; the
/// target is a planted product, so elimination runs over long vectors and
/// the recursion goes several levels deep.
pub fn t2_bench_instance<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Result<SmpInstance> {
    let s = Arc::new(builtin("T(2)")?);
    let word = |w: &str| s.elem_by_name(w).expect("T(2) word");
    let (units, constants) = ([word("12"), word("21")], [word("11"), word("22")]);
    let gens: Vec<Tup> = (0..k)
        .map(|j| {
            let mut t: Vec<Elem> = (0..n)
                .map(|_| *units.choose(rng).expect("nonempty"))
                .collect();
            if j % 2 == 1 {
                for _ in 0..3 {
                    t[rng.gen_range(0..n)] = *constants.choose(rng).expect("nonempty");
                }
            }
            Tup::new(t)
        })
        .collect();
    let target = random_product(&s, &gens, 12, rng);
    SmpInstance::new(s, gens, target)
}
