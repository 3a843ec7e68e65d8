//! SMP over Clifford semigroups by reduction to a single group instance.

use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::semigroup::Elem;
use crate::structure::{gamma, natural_preorder, CliffordDecomposition};
use crate::tuple::{SmpInstance, Tup};

use super::group::StabilizerChain;

/// Generators that survive the preorder filter: `a(i) >= b(i)` at every
/// coordinate.
pub fn filter_generators(inst: &SmpInstance, dec: &CliffordDecomposition) -> Vec<usize> {
    let b = inst.target();
    (0..inst.k())
        .filter(|&j| {
            let a = &inst.generators()[j];
            (0..inst.n()).all(|i| natural_preorder(dec, b[i], a[i]))
        })
        .collect()
}

/// Exact membership for an instance over a Clifford semigroup.
pub fn clifford_smp(inst: &SmpInstance, dec: &CliffordDecomposition) -> Result<bool> {
    let s = inst.semigroup();
    let d = dec.semigroup();
    if d.order() != s.order() || s.elements().any(|x| d.row(x) != s.row(x)) {
        return Err(Error::NotClifford(
            "decomposition belongs to a different semigroup".into(),
        ));
    }
    let kept = filter_generators(inst, dec);
    if kept.is_empty() {
        return Ok(false);
    }
    let gens: Vec<&Tup> = kept.iter().map(|&j| &inst.generators()[j]).collect();
    let b = inst.target();
    let e = b.idempotent_power(s);

    let mut memo: FxHashMap<Vec<Elem>, Vec<bool>> = FxHashMap::default();
    for i in 0..inst.n() {
        let mut values: Vec<Elem> = gens.iter().map(|a| a[i]).collect();
        values.sort();
        values.dedup();
        let reachable = memo.entry(values).or_insert_with_key(|v| s.generated(v));
        if !reachable[e[i].idx()] {
            return Ok(false);
        }
    }

    let slots = dec.idempotents().len();
    let flatten = |t: &Tup| -> Tup { t.iter().flat_map(|&x| gamma(dec, x)).collect() };
    let identity: Tup = (0..inst.n())
        .flat_map(|_| dec.idempotents().iter().copied())
        .collect();
    debug_assert_eq!(identity.len(), inst.n() * slots);
    let group_gens: Vec<Tup> = gens.iter().map(|a| flatten(&a.mul(s, &e))).collect();
    let mut chain =
        StabilizerChain::build(Arc::clone(inst.semigroup_arc()), identity, &group_gens)?;
    Ok(chain.contains(&flatten(b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::builtin;
    use crate::oracle::closure_oracle;
    use crate::structure::clifford_decompose;

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
    fn chain_examples() {
        let i = inst(
            "semilattice_chain(2)",
            &[&["1", "0"], &["0", "1"]],
            &["0", "0"],
        );
        let dec = clifford_decompose(i.semigroup()).unwrap();
        assert_eq!(filter_generators(&i, &dec), vec![0, 1]);
        assert!(clifford_smp(&i, &dec).unwrap());

        let i = inst(
            "semilattice_chain(2)",
            &[&["1", "0"], &["0", "1"]],
            &["1", "1"],
        );
        assert!(filter_generators(&i, &dec).is_empty());
        assert!(!clifford_smp(&i, &dec).unwrap());
    }

    #[test]
    fn target_among_generators() {
        let i = inst(
            "direct_product(semilattice_chain(2),cyclic_group(2))",
            &[&["(1,1)", "(0,0)"], &["(0,1)", "(1,1)"]],
            &["(0,1)", "(1,1)"],
        );
        let dec = clifford_decompose(i.semigroup()).unwrap();
        assert!(clifford_smp(&i, &dec).unwrap());
    }

    #[test]
    fn parity_across_groups() {
        let name = "direct_product(semilattice_chain(2),cyclic_group(2))";
        let i = inst(
            name,
            &[&["(1,1)", "(1,1)"], &["(0,0)", "(1,0)"]],
            &["(0,1)", "(1,0)"],
        );
        let dec = clifford_decompose(i.semigroup()).unwrap();
        let oracle = closure_oracle(&i, None).unwrap().member;
        assert_eq!(clifford_smp(&i, &dec).unwrap(), oracle);
        let i = inst(
            name,
            &[&["(1,1)", "(1,1)"], &["(0,0)", "(1,0)"]],
            &["(0,1)", "(1,1)"],
        );
        assert_eq!(
            clifford_smp(&i, &dec).unwrap(),
            closure_oracle(&i, None).unwrap().member
        );
    }

    #[test]
    fn rejects_foreign_decomposition() {
        let i = inst("semilattice_chain(2)", &[&["1"]], &["1"]);
        let dec = clifford_decompose(&builtin("cyclic_group(2)").unwrap()).unwrap();
        assert!(clifford_smp(&i, &dec).is_err());
    }
}
