use std::sync::Arc;

use crate::error::{Error, Result};
use crate::semigroup::{Elem, Semigroup};

use super::central_violation;

/// A Clifford semigroup as a strong semilattice of groups.
///
/// The semilattice is the set of idempotents with meet `e ∧ f = ef` and order
/// `e <= f iff ef = e`. Each element `x` lies in the maximal subgroup `G_i`
/// of its idempotent power `i`, and the structure map `φ_{i,j}` for `i >= j`
/// is `x ↦ x·j`.
#[derive(Clone, Debug)]
pub struct CliffordDecomposition {
    s: Arc<Semigroup>,
    idempotents: Vec<Elem>,
    /// Element -> position of its idempotent in `idempotents`.
    slot: Vec<usize>,
    groups: Vec<Vec<Elem>>,
}

pub fn clifford_decompose(s: &Semigroup) -> Result<CliffordDecomposition> {
    if let Some(x) = s.elements().find(|&x| !s.generates_group(x)) {
        return Err(Error::NotClifford(format!(
            "not completely regular: element {} lies in no subgroup",
            s.name(x)
        )));
    }
    if let Some((e, x)) = central_violation(s) {
        return Err(Error::NotClifford(format!(
            "idempotent {} does not commute with {}",
            s.name(e),
            s.name(x)
        )));
    }
    let idempotents = s.idempotents();
    let mut position = vec![usize::MAX; s.order()];
    for (i, &e) in idempotents.iter().enumerate() {
        position[e.idx()] = i;
    }
    let mut groups = vec![Vec::new(); idempotents.len()];
    let slot: Vec<usize> = s
        .elements()
        .map(|x| {
            let i = position[s.idempotent_power(x).idx()];
            groups[i].push(x);
            i
        })
        .collect();
    Ok(CliffordDecomposition {
        s: Arc::new(s.clone()),
        idempotents,
        slot,
        groups,
    })
}

impl CliffordDecomposition {
    pub fn semigroup(&self) -> &Semigroup {
        &self.s
    }

    /// The semilattice `I`, in element order.
    pub fn idempotents(&self) -> &[Elem] {
        &self.idempotents
    }

    /// Position of `x`'s group among [`Self::idempotents`].
    pub fn slot_of(&self, x: Elem) -> usize {
        self.slot[x.idx()]
    }

    /// The idempotent (identity of the maximal subgroup) of `x`.
    pub fn group_of(&self, x: Elem) -> Elem {
        self.idempotents[self.slot[x.idx()]]
    }

    pub fn group(&self, slot: usize) -> &[Elem] {
        &self.groups[slot]
    }

    pub fn groups(&self) -> &[Vec<Elem>] {
        &self.groups
    }

    pub fn meet(&self, e: Elem, f: Elem) -> Elem {
        self.s.mul(e, f)
    }

    /// Semilattice order on idempotents.
    pub fn leq(&self, e: Elem, f: Elem) -> bool {
        self.s.mul(e, f) == e
    }

    /// Structure map `φ_{i,j}` applied to `x ∈ G_i`, defined when `i >= j`.
    pub fn phi(&self, i: Elem, j: Elem, x: Elem) -> Option<Elem> {
        (self.leq(j, i) && self.group_of(x) == i && self.group_of(j) == j).then(|| self.s.mul(x, j))
    }

    /// Product recomputed from the semilattice data:
    /// `x * y = φ_{i,i∧j}(x) · φ_{j,i∧j}(y)`.
    pub fn rebuilt_product(&self, x: Elem, y: Elem) -> Elem {
        let (i, j) = (self.group_of(x), self.group_of(y));
        let m = self.meet(i, j);
        let x_down = self.phi(i, m, x).expect("i >= i∧j");
        let y_down = self.phi(j, m, y).expect("j >= i∧j");
        self.s.mul(x_down, y_down)
    }
}

/// `x <= y` iff the group of `x` lies below the group of `y`.
pub fn natural_preorder(dec: &CliffordDecomposition, x: Elem, y: Elem) -> bool {
    dec.leq(dec.group_of(x), dec.group_of(y))
}

/// `γ(x)`: component `i` is `x` if `x ∈ G_i`, else the identity of `G_i`.
/// Components follow [`CliffordDecomposition::idempotents`].
pub fn gamma(dec: &CliffordDecomposition, x: Elem) -> Vec<Elem> {
    let home = dec.slot_of(x);
    dec.idempotents
        .iter()
        .enumerate()
        .map(|(i, &e)| if i == home { x } else { e })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::builtin;

    fn by_name(dec: &CliffordDecomposition, name: &str) -> Elem {
        dec.semigroup().elem_by_name(name).unwrap()
    }

    #[test]
    fn chain_of_two() {
        let dec = clifford_decompose(&builtin("semilattice_chain(2)").unwrap()).unwrap();
        let (zero, one) = (by_name(&dec, "0"), by_name(&dec, "1"));
        assert_eq!(dec.idempotents(), &[zero, one]);
        assert_eq!(dec.groups(), &[vec![zero], vec![one]]);
        assert!(natural_preorder(&dec, zero, one));
        assert!(!natural_preorder(&dec, one, zero));
        // components ordered (0, 1): γ(0) = (0, 1)
        assert_eq!(gamma(&dec, zero), vec![zero, one]);
        assert_eq!(gamma(&dec, one), vec![zero, one]);
    }

    #[test]
    fn cyclic_group_is_one_group() {
        let s = builtin("cyclic_group(3)").unwrap();
        let dec = clifford_decompose(&s).unwrap();
        assert_eq!(dec.idempotents().len(), 1);
        assert_eq!(dec.group(0).len(), 3);
    }

    #[test]
    fn chain_times_z2() {
        let s = builtin("direct_product(semilattice_chain(2),cyclic_group(2))").unwrap();
        let dec = clifford_decompose(&s).unwrap();
        assert_eq!(dec.idempotents().len(), 2);
        assert!(dec.groups().iter().all(|g| g.len() == 2));
        let (lo, hi) = (by_name(&dec, "(0,0)"), by_name(&dec, "(1,0)"));
        assert!(dec.leq(lo, hi) && !dec.leq(hi, lo));
        let x = by_name(&dec, "(1,1)");
        assert_eq!(dec.phi(hi, lo, x), Some(by_name(&dec, "(0,1)")));
        assert_eq!(dec.phi(lo, hi, lo), None);
    }

    #[test]
    fn rejects_non_clifford() {
        let err = clifford_decompose(&builtin("Z2_1").unwrap()).unwrap_err();
        assert!(err.to_string().contains("completely regular"), "{err}");
        let err = clifford_decompose(&builtin("T(2)").unwrap()).unwrap_err();
        assert!(matches!(err, Error::NotClifford(_)));
    }
}
