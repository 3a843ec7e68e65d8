//! Exponent-vector witnesses for commutative semigroups.
//!
//! Over a commutative `S`, `b ∈ <a_1, ..., a_k>` iff
//! `b = a_1^l_1 ... a_k^l_k` for some nonzero `(l_1, ..., l_k) ∈ {0..r}^k`,
//! where `r` is the number of distinct powers of the tuple listing all of
//! `S`. Verification is polynomial; finding a witness is a backtracking
//! search and exponential in `k` in the worst case.

use std::rc::Rc;

use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::semigroup::{Elem, Semigroup};
use crate::tuple::{SmpInstance, Tup};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentWitness {
    pub exponents: Vec<u64>,
    pub r: u64,
}

/// Number of distinct powers of `(s_1, ..., s_|S|)`: its index plus its
/// period minus one.
pub fn exponent_bound(s: &Semigroup) -> u64 {
    let (mut index, mut period) = (1, 1);
    for x in s.elements() {
        let (i, p) = s.index_period(x);
        index = index.max(i);
        period = period / gcd(period, p) * p;
    }
    (index + period - 1) as u64
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `a_1^l_1 ... a_k^l_k == b`, skipping zero exponents.
pub fn verify_exponent_witness(inst: &SmpInstance, w: &ExponentWitness) -> Result<bool> {
    if w.exponents.len() != inst.k() {
        return Err(Error::LengthMismatch {
            expected: inst.k(),
            found: w.exponents.len(),
        });
    }
    if w.exponents.iter().all(|&l| l == 0) {
        return Err(Error::ZeroExponentWitness);
    }
    if let Some(&l) = w.exponents.iter().find(|&&l| l > w.r) {
        return Err(Error::ExponentTooLarge {
            value: l,
            bound: w.r,
        });
    }
    let s = inst.semigroup();
    let mut product: Option<Tup> = None;
    for (a, &l) in inst.generators().iter().zip(&w.exponents) {
        if l == 0 {
            continue;
        }
        let p = a.pow(s, l);
        product = Some(match product {
            None => p,
            Some(mut q) => {
                q.mul_assign(s, &p);
                q
            }
        });
    }
    Ok(product.as_ref() == Some(inst.target()))
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutativeOutcome {
    pub member: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ExponentWitness>,
}

/// `Σ_j (|S| - |a(j)S¹|)`: how strongly `a` restricts the coordinates it
/// multiplies into.
fn tightness(s: &Semigroup, a: &Tup) -> usize {
    a.iter()
        .map(|&x| {
            let mut ideal = vec![false; s.order()];
            ideal[x.idx()] = true;
            for &y in s.row(x) {
                ideal[y.idx()] = true;
            }
            s.order() - ideal.iter().filter(|&&v| v).count()
        })
        .sum()
}

struct Search<'a> {
    s: &'a Semigroup,
    target: &'a Tup,
    /// Distinct powers `(l, a^l)` with `1 <= l <= r`, per search position.
    powers: Vec<Vec<(u64, Tup)>>,
    /// `alive[p][j]`: values (index `|S|` for the empty product) from which
    /// `b(j)` is reachable with the factors at positions `p..`.
    alive: Vec<Vec<Rc<Vec<bool>>>>,
    failed: FxHashSet<(usize, Tup)>,
    exponents: Vec<u64>,
}

impl Search<'_> {
    fn viable(&self, p: usize, partial: &Tup) -> bool {
        let empty = self.s.order();
        (0..self.target.len()).all(|j| {
            let v = if partial.is_empty() {
                empty
            } else {
                partial[j].idx()
            };
            self.alive[p][j][v]
        })
    }

    fn run(&mut self, p: usize, partial: Tup) -> bool {
        if !partial.is_empty() && partial == *self.target {
            return true;
        }
        if p == self.powers.len() || !self.viable(p, &partial) {
            return false;
        }
        if self.failed.contains(&(p, partial.clone())) {
            return false;
        }
        for i in 0..self.powers[p].len() {
            let (l, ref power) = self.powers[p][i];
            let next = if partial.is_empty() {
                power.clone()
            } else {
                partial.mul(self.s, power)
            };
            self.exponents[p] = l;
            if self.run(p + 1, next) {
                return true;
            }
        }
        self.exponents[p] = 0;
        if self.run(p + 1, partial.clone()) {
            return true;
        }
        self.failed.insert((p, partial));
        false
    }
}

/// Values `v` (with index `|S|` standing for the empty product) such that
/// `v · m = target` for some `m` in the monoid generated by `values`.
fn backward_reachable(s: &Semigroup, values: &[Elem], target: Elem) -> Vec<bool> {
    let generated = s.generated(values);
    let mut alive = vec![false; s.order() + 1];
    alive[s.order()] = generated[target.idx()];
    for v in s.elements() {
        alive[v.idx()] = v == target
            || s.elements()
                .any(|m| generated[m.idx()] && s.mul(v, m) == target);
    }
    alive
}

/// Exact membership over a commutative semigroup, with an exponent witness
/// in the original generator order.
pub fn commutative_smp(inst: &SmpInstance) -> Result<CommutativeOutcome> {
    let s = inst.semigroup();
    if !s.is_commutative() {
        return Err(Error::NotCommutative);
    }
    let r = exponent_bound(s);
    let k = inst.k();
    let mut order: Vec<usize> = (0..k).collect();
    let tight: Vec<usize> = inst.generators().iter().map(|a| tightness(s, a)).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(tight[i]));

    let powers: Vec<Vec<(u64, Tup)>> = order
        .iter()
        .map(|&i| {
            let a = &inst.generators()[i];
            let mut seen = FxHashSet::default();
            let mut out = Vec::new();
            let mut p = a.clone();
            for l in 1..=r {
                if l > 1 {
                    p = p.mul(s, a);
                }
                if seen.insert(p.clone()) {
                    out.push((l, p.clone()));
                }
            }
            out
        })
        .collect();

    let target = inst.target();
    let mut memo: FxHashMap<(Vec<Elem>, Elem), Rc<Vec<bool>>> = FxHashMap::default();
    let alive: Vec<Vec<Rc<Vec<bool>>>> = (0..=k)
        .map(|p| {
            (0..inst.n())
                .map(|j| {
                    let mut values: Vec<Elem> = order[p..]
                        .iter()
                        .map(|&i| inst.generators()[i][j])
                        .collect();
                    values.sort();
                    values.dedup();
                    memo.entry((values, target[j]))
                        .or_insert_with_key(|(v, t)| Rc::new(backward_reachable(s, v, *t)))
                        .clone()
                })
                .collect()
        })
        .collect();

    let mut search = Search {
        s,
        target,
        powers,
        alive,
        failed: FxHashSet::default(),
        exponents: vec![0; k],
    };
    if !search.run(0, Tup::new(Vec::new())) {
        return Ok(CommutativeOutcome {
            member: false,
            witness: None,
        });
    }
    let mut exponents = vec![0; k];
    for (p, &i) in order.iter().enumerate() {
        exponents[i] = search.exponents[p];
    }
    Ok(CommutativeOutcome {
        member: true,
        witness: Some(ExponentWitness { exponents, r }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::builtin;
    use std::sync::Arc;

    fn inst(name: &str, gens: &[&[&str]], target: &[&str]) -> SmpInstance {
        let s = Arc::new(builtin(name).unwrap());
        let t = |names: &[&str]| {
            names
                .iter()
                .map(|n| s.elem_by_name(n).unwrap())
                .collect::<Tup>()
        };
        SmpInstance::new(s.clone(), gens.iter().map(|g| t(g)).collect(), t(target)).unwrap()
    }

    #[test]
    fn bounds() {
        assert_eq!(exponent_bound(&builtin("Z2_1").unwrap()), 2);
        assert_eq!(exponent_bound(&builtin("cyclic_group(1)").unwrap()), 1);
        assert_eq!(exponent_bound(&builtin("cyclic_group(3)").unwrap()), 3);
        // index 2 from null(2), period 3 from Z3
        let s = builtin("direct_product(null(2),cyclic_group(3))").unwrap();
        assert_eq!(exponent_bound(&s), 4);
    }

    #[test]
    fn verification() {
        let i = inst("Z2_1", &[&["a", "1"], &["1", "a"]], &["a", "a"]);
        let w = |e: Vec<u64>| ExponentWitness { exponents: e, r: 2 };
        assert!(verify_exponent_witness(&i, &w(vec![1, 1])).unwrap());
        assert!(!verify_exponent_witness(&i, &w(vec![1, 0])).unwrap());
        assert!(matches!(
            verify_exponent_witness(&i, &w(vec![0, 0])),
            Err(Error::ZeroExponentWitness)
        ));
        assert!(verify_exponent_witness(&i, &w(vec![3, 1])).is_err());

        let i = inst("Z2_1", &[&["a", "a"]], &["a", "0"]);
        for l in 1..=2 {
            assert!(!verify_exponent_witness(&i, &w(vec![l])).unwrap());
        }
    }

    #[test]
    fn search_finds_verifying_witness() {
        let i = inst("Z2_1", &[&["a", "1"], &["1", "a"]], &["a", "a"]);
        let out = commutative_smp(&i).unwrap();
        assert!(out.member);
        assert!(verify_exponent_witness(&i, &out.witness.unwrap()).unwrap());
        let i = inst("Z2_1", &[&["a", "a"]], &["a", "0"]);
        assert!(!commutative_smp(&i).unwrap().member);
    }

    #[test]
    fn rejects_non_commutative() {
        let i = inst("T(2)", &[&["12"]], &["12"]);
        assert!(matches!(commutative_smp(&i), Err(Error::NotCommutative)));
    }
}
