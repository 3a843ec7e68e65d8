//! Polynomial-time SMP over the full transformation monoid `T(2)`.
//!
//! Elements of `T(2)` are the constants `ZERO`, `ONE` and the permutations
//! `ID`, `FLIP`. Tuples whose coordinates are all permutations form a copy
//! of `Z_2^n`, handled by Gaussian elimination over GF(2); a tuple with
//! constant coordinates fixes the matching coordinates of every product it
//! ends, which lets the search recurse on the remaining coordinates.

use serde::Serialize;

use crate::builtin::Builtin;
use crate::error::{Error, Result};
use crate::semigroup::Elem;
use crate::tuple::{SmpInstance, Tup};

/// `T(2)` elements by image word: `11`, `12`, `21`, `22`.
pub const ZERO: Elem = Elem::new(0);
pub const ID: Elem = Elem::new(1);
pub const FLIP: Elem = Elem::new(2);
pub const ONE: Elem = Elem::new(3);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Z2Outcome {
    pub member: bool,
    /// Indices (0-based, possibly repeated) of vectors summing to the
    /// target.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub combination: Option<Vec<usize>>,
}

/// Bit vectors packed into 64-bit words.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn zeros(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn from_bools(v: &[bool]) -> Self {
        let mut b = Bits::zeros(v.len());
        for (i, _) in v.iter().enumerate().filter(|(_, &x)| x) {
            b.set(i);
        }
        b
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn xor(&mut self, other: &Bits) {
        for (x, y) in self.0.iter_mut().zip(&other.0) {
            *x ^= y;
        }
    }

    fn lowest(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
}

/// Whether `target` is the sum of a nonempty (or, with `allow_empty`,
/// possibly empty) multiset of `vectors` over GF(2).
pub fn z2_membership(
    vectors: &[Vec<bool>],
    target: &[bool],
    allow_empty: bool,
) -> Result<Z2Outcome> {
    if let Some(v) = vectors.iter().find(|v| v.len() != target.len()) {
        return Err(Error::LengthMismatch {
            expected: target.len(),
            found: v.len(),
        });
    }
    let k = vectors.len();
    // basis rows: (vector, combination of inputs), keyed by lowest set bit
    let mut basis: Vec<(usize, Bits, Bits)> = Vec::new();
    let reduce = |basis: &[(usize, Bits, Bits)], mut v: Bits, mut comb: Bits| {
        for (pivot, row, row_comb) in basis {
            if v.get(*pivot) {
                v.xor(row);
                comb.xor(row_comb);
            }
        }
        (v, comb)
    };
    for (i, v) in vectors.iter().enumerate() {
        let mut comb = Bits::zeros(k);
        comb.set(i);
        let (v, comb) = reduce(&basis, Bits::from_bools(v), comb);
        if let Some(pivot) = v.lowest() {
            // rows stay sorted by pivot
            let position = basis.partition_point(|(p, _, _)| *p < pivot);
            basis.insert(position, (pivot, v, comb));
        }
    }
    let (rest, comb) = reduce(&basis, Bits::from_bools(target), Bits::zeros(k));
    if rest.lowest().is_some() {
        return Ok(Z2Outcome {
            member: false,
            combination: None,
        });
    }
    let mut combination: Vec<usize> = (0..k).filter(|&i| comb.get(i)).collect();
    if combination.is_empty() && !allow_empty {
        if k == 0 {
            return Ok(Z2Outcome {
                member: false,
                combination: None,
            });
        }
        combination = vec![0, 0];
    }
    Ok(Z2Outcome {
        member: true,
        combination: Some(combination),
    })
}

fn is_constant(x: Elem) -> bool {
    x == ZERO || x == ONE
}

fn constant_part(a: &Tup) -> Vec<usize> {
    (0..a.len()).filter(|&j| is_constant(a[j])).collect()
}

fn t2_mul(x: Elem, y: Elem) -> Elem {
    // right action: apply x, then y
    match (x, y) {
        (_, y) if is_constant(y) => y,
        (x, y) if y == ID => x,
        (x, _) if x == ZERO => ONE,
        (x, _) if x == ONE => ZERO,
        (x, _) if x == ID => FLIP,
        _ => ID,
    }
}

fn tup_mul(a: &Tup, b: &Tup) -> Tup {
    a.iter()
        .zip(b.iter())
        .map(|(&x, &y)| t2_mul(x, y))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct T2Outcome {
    pub member: bool,
    /// Deepest recursion level reached, counting the top call as 0.
    pub depth: usize,
}

/// Exact membership over the builtin `T(2)`.
pub fn t2_smp(inst: &SmpInstance) -> Result<bool> {
    Ok(t2_smp_traced(inst)?.member)
}

/// [`t2_smp`] that also reports the recursion depth.
pub fn t2_smp_traced(inst: &SmpInstance) -> Result<T2Outcome> {
    if inst.semigroup().origin() != Some(&Builtin::Transformation(2)) {
        return Err(Error::WrongSemigroup("expected builtin T(2)".into()));
    }
    let mut depth = 0;
    let member = solve(
        inst.generators().to_vec(),
        inst.target().clone(),
        0,
        &mut depth,
    )?;
    assert!(depth <= inst.n(), "recursion deeper than n");
    Ok(T2Outcome { member, depth })
}

fn solve(gens: Vec<Tup>, b: Tup, level: usize, depth: &mut usize) -> Result<bool> {
    *depth = (*depth).max(level);
    let cp_b: Vec<bool> = b.iter().map(|&x| is_constant(x)).collect();
    let gens: Vec<Tup> = gens
        .into_iter()
        .filter(|a| constant_part(a).iter().all(|&j| cp_b[j]))
        .collect();
    let (units, others): (Vec<&Tup>, Vec<&Tup>) =
        gens.iter().partition(|a| constant_part(a).is_empty());
    let flips =
        |a: &Tup, coords: &[usize]| -> Vec<bool> { coords.iter().map(|&j| a[j] == FLIP).collect() };

    if !cp_b.contains(&true) {
        let all: Vec<usize> = (0..b.len()).collect();
        let vectors: Vec<Vec<bool>> = units.iter().map(|a| flips(a, &all)).collect();
        return Ok(z2_membership(&vectors, &flips(&b, &all), false)?.member);
    }
    for a in others {
        let cp = constant_part(a);
        let vectors: Vec<Vec<bool>> = units.iter().map(|u| flips(u, &cp)).collect();
        let target: Vec<bool> = cp.iter().map(|&j| a[j] != b[j]).collect();
        let Some(combination) = z2_membership(&vectors, &target, true)?.combination else {
            continue;
        };
        let c = combination
            .iter()
            .fold(b.clone(), |c, &j| tup_mul(&c, units[j]));
        let ncp: Vec<usize> = (0..b.len()).filter(|&j| !is_constant(a[j])).collect();
        let projected = gens.iter().map(|g| g.project(&ncp)).collect();
        return solve(projected, c.project(&ncp), level + 1, depth);
    }
    Ok(false)
}
