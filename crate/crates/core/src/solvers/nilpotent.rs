//! SMP over an ideal extension `S` of `C` whose Rees quotient `S/C` is
//! `d`-nilpotent, by reduction to SMP over `C`.
//!
//! A target outside `C^n` can only be a product of fewer than `d`
//! generators. A target inside `C^n` is generated by `A` iff it is generated
//! by the set `B` of products of fewer than `2d` generators that land in
//! `C^n`.

use std::sync::Arc;

use rustc_hash::FxHashSet;

use crate::error::{Error, Result};
use crate::semigroup::{Elem, Semigroup};
use crate::structure::{nilpotency_degree, rees_quotient};
use crate::tuple::{SmpInstance, Tup};

/// Checks that `ideal` is an ideal of `s` with `d`-nilpotent quotient and
/// returns its membership mask.
pub fn validate_extension(s: &Semigroup, ideal: &[Elem], d: usize) -> Result<Vec<bool>> {
    let q = rees_quotient(s, ideal)?;
    match nilpotency_degree(&q.semigroup) {
        Some(degree) if degree <= d => {}
        _ => return Err(Error::NotNilpotent { d }),
    }
    let mut inside = vec![false; s.order()];
    for &x in ideal {
        inside[x.idx()] = true;
    }
    Ok(inside)
}

/// Distinct products of exactly `1..=max_len` generators, layer by layer.
/// `visit` sees every new tuple and may stop the search by
/// returning `true`.
fn products(
    s: &Semigroup,
    gens: &[Tup],
    max_len: usize,
    mut visit: impl FnMut(&Tup) -> bool,
) -> bool {
    let mut seen = FxHashSet::default();
    let mut layer: Vec<Tup> = gens.iter().filter(|g| seen.insert(*g)).cloned().collect();
    for len in 1..=max_len {
        for t in &layer {
            if visit(t) {
                return true;
            }
        }
        if len == max_len {
            break;
        }
        let mut next_seen = FxHashSet::default();
        let mut next = Vec::new();
        for t in &layer {
            for g in gens {
                let p = t.mul(s, g);
                if next_seen.insert(p.clone()) {
                    next.push(p);
                }
            }
        }
        layer = next;
    }
    false
}

fn in_ideal(inside: &[bool], t: &Tup) -> bool {
    t.iter().all(|x| inside[x.idx()])
}

/// The generator set `B` for a target inside `C^n`: distinct products of
/// fewer than `2d` generators lying in `C^n`, in order of first discovery.
pub fn extension_generators(inst: &SmpInstance, ideal: &[Elem], d: usize) -> Result<Vec<Tup>> {
    let inside = validate_extension(inst.semigroup(), ideal, d)?;
    Ok(collect_b(inst, &inside, d))
}

fn collect_b(inst: &SmpInstance, inside: &[bool], d: usize) -> Vec<Tup> {
    let mut seen = FxHashSet::default();
    let mut b = Vec::new();
    products(inst.semigroup(), inst.generators(), 2 * d - 1, |t| {
        if in_ideal(inside, t) && seen.insert(t.clone()) {
            b.push(t.clone());
        }
        false
    });
    b
}

/// Exact membership given an exact solver `inner` for instances over the
/// subsemigroup `C`. `inner` receives instances whose semigroup is `C` with
/// elements in the order of `ideal`.
pub fn ideal_extension_smp(
    inst: &SmpInstance,
    ideal: &[Elem],
    d: usize,
    mut inner: impl FnMut(&SmpInstance) -> Result<bool>,
) -> Result<bool> {
    let s = inst.semigroup();
    let inside = validate_extension(s, ideal, d)?;
    let target = inst.target();
    if !in_ideal(&inside, target) {
        return Ok(products(s, inst.generators(), d.saturating_sub(1), |t| {
            t == target
        }));
    }
    let b = collect_b(inst, &inside, d);
    if b.is_empty() {
        return Ok(false);
    }
    let (sub, embedding) = s.subsemigroup(ideal)?;
    let mut position = vec![Elem::new(0); s.order()];
    for (i, x) in embedding.iter().enumerate() {
        position[x.idx()] = Elem::new(i);
    }
    let translate = |t: &Tup| -> Tup { t.iter().map(|x| position[x.idx()]).collect() };
    let sub_inst = SmpInstance::new(
        Arc::new(sub),
        b.iter().map(translate).collect(),
        translate(target),
    )?;
    inner(&sub_inst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::builtin;
    use crate::oracle::closure_oracle;

    fn oracle_inner(i: &SmpInstance) -> Result<bool> {
        Ok(closure_oracle(i, None)?.member)
    }

    fn tup(s: &Semigroup, names: &[&str]) -> Tup {
        names.iter().map(|n| s.elem_by_name(n).unwrap()).collect()
    }

    #[test]
    fn null_three_needs_target_in_generators() {
        let s = Arc::new(builtin("null(3)").unwrap());
        let zero = s.elem_by_name("0").unwrap();
        let a = tup(&s, &["n1", "n2"]);
        let inst = SmpInstance::new(s.clone(), vec![a.clone()], a.clone()).unwrap();
        assert!(ideal_extension_smp(&inst, &[zero], 2, oracle_inner).unwrap());
        let other = SmpInstance::new(s.clone(), vec![a.clone()], tup(&s, &["n2", "n1"])).unwrap();
        assert!(!ideal_extension_smp(&other, &[zero], 2, oracle_inner).unwrap());
        let zeros = SmpInstance::new(s.clone(), vec![a], tup(&s, &["0", "0"])).unwrap();
        assert!(ideal_extension_smp(&zeros, &[zero], 2, oracle_inner).unwrap());
    }

    #[test]
    fn rejects_bad_ideals() {
        let s = Arc::new(builtin("Z2_1").unwrap());
        let inst = SmpInstance::new(s.clone(), vec![tup(&s, &["a"])], tup(&s, &["a"])).unwrap();
        let (zero, a) = (s.elem_by_name("0").unwrap(), s.elem_by_name("a").unwrap());
        assert!(matches!(
            ideal_extension_smp(&inst, &[a], 2, oracle_inner),
            Err(Error::NotAnIdeal { .. })
        ));
        // S/{0, a} is {zero, 1} with 1 idempotent: never nilpotent
        assert!(matches!(
            ideal_extension_smp(&inst, &[zero, a], 5, oracle_inner),
            Err(Error::NotNilpotent { .. })
        ));
    }

    #[test]
    fn b_lies_in_the_ideal() {
        let s = Arc::new(builtin("direct_product(null(2),cyclic_group(2))").unwrap());
        let ideal: Vec<Elem> = s
            .elements()
            .filter(|&x| s.name(x).starts_with("(0,"))
            .collect();
        let gens = vec![
            tup(&s, &["(n1,1)", "(0,0)"]),
            tup(&s, &["(n1,0)", "(n1,1)"]),
        ];
        let inst = SmpInstance::new(s.clone(), gens, tup(&s, &["(0,1)", "(0,1)"])).unwrap();
        let b = extension_generators(&inst, &ideal, 2).unwrap();
        assert!(b.len() <= 2 + 4 + 8);
        assert!(b.iter().all(|t| t.iter().all(|x| ideal.contains(x))));
        let direct = closure_oracle(&inst, None).unwrap().member;
        assert_eq!(
            ideal_extension_smp(&inst, &ideal, 2, oracle_inner).unwrap(),
            direct
        );
    }
}
