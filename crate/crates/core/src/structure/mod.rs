//! Structural analysis of finite semigroups.
//!
//! [`classify`] evaluates the four equivalent characterisations of ideal
//! extensions of Clifford semigroups by nilpotent semigroups, each through
//! its own computational route:
//!
//! 1. the ideal `I` generated by the idempotents is Clifford and `S/I` is
//!    nilpotent;
//! 2. `I` is Clifford;
//! 3. idempotents are central, and whenever `ea = a` for an idempotent `e`,
//!    `<a>` is a group;
//! 4. [`build_embedding`] produces a verified embedding into `C x N`.
//!
//! For commutative semigroups these decide between polynomial-time and
//! NP-complete subpower membership.

mod clifford;
mod embedding;
mod rees;

pub use clifford::{clifford_decompose, gamma, natural_preorder, CliffordDecomposition};
pub use embedding::{build_embedding, EmbeddingWitness};
pub use rees::{rees_quotient, ReesQuotient};

use serde::Serialize;

use crate::semigroup::{Elem, Semigroup};

/// Complexity class of `SMP(S)` for commutative `S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Dichotomy {
    #[serde(rename = "P")]
    P,
    #[serde(rename = "NP-complete")]
    NpComplete,
    /// `S` is not commutative; the dichotomy does not speak about it.
    #[serde(rename = "not-applicable")]
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub order: usize,
    pub is_commutative: bool,
    pub is_group: bool,
    pub idempotents: Vec<Elem>,
    pub idempotents_central: bool,
    pub is_completely_regular: bool,
    pub is_clifford: bool,
    pub nilpotency_degree: Option<usize>,
    pub ideal_of_idempotents: Vec<Elem>,
    pub cond1: bool,
    pub cond2: bool,
    pub cond3: bool,
    pub cond4: bool,
    pub dichotomy: Dichotomy,
}

impl ClassificationReport {
    /// Whether the four conditions agree, as they must.
    pub fn conditions_agree(&self) -> bool {
        self.cond1 == self.cond2 && self.cond2 == self.cond3 && self.cond3 == self.cond4
    }
}

pub fn classify(s: &Semigroup) -> ClassificationReport {
    let is_commutative = s.is_commutative();
    let idempotents = s.idempotents();
    let central = idempotents_central(s);
    let completely_regular = is_completely_regular(s);
    let ideal = ideal_of_idempotents(s);
    let ideal_clifford = is_clifford_subset(s, &ideal);
    let quotient_nilpotent = ideal_clifford
        && rees_quotient(s, &ideal)
            .map(|q| nilpotency_degree(&q.semigroup).is_some())
            .unwrap_or(false);
    let cond1 = ideal_clifford && quotient_nilpotent;
    let cond2 = ideal_clifford;
    let cond3 = central && condition_3b_violation(s).is_none();
    let cond4 = build_embedding(s).is_ok();
    let dichotomy = match (is_commutative, cond1) {
        (false, _) => Dichotomy::NotApplicable,
        (true, true) => Dichotomy::P,
        (true, false) => Dichotomy::NpComplete,
    };
    ClassificationReport {
        order: s.order(),
        is_commutative,
        is_group: is_group(s),
        idempotents,
        idempotents_central: central,
        is_completely_regular: completely_regular,
        is_clifford: completely_regular && central,
        nilpotency_degree: nilpotency_degree(s),
        ideal_of_idempotents: ideal,
        cond1,
        cond2,
        cond3,
        cond4,
        dichotomy,
    }
}

pub fn is_group(s: &Semigroup) -> bool {
    match s.identity() {
        Some(e) => s
            .elements()
            .all(|x| s.elements().any(|y| s.mul(x, y) == e && s.mul(y, x) == e)),
        None => false,
    }
}

pub fn idempotents_central(s: &Semigroup) -> bool {
    central_violation(s).is_none()
}

pub(crate) fn central_violation(s: &Semigroup) -> Option<(Elem, Elem)> {
    s.idempotents().into_iter().find_map(|e| {
        s.elements()
            .find(|&x| s.mul(e, x) != s.mul(x, e))
            .map(|x| (e, x))
    })
}

/// Every element lies in a subgroup.
pub fn is_completely_regular(s: &Semigroup) -> bool {
    s.elements().all(|x| s.generates_group(x))
}

pub fn is_clifford(s: &Semigroup) -> bool {
    is_completely_regular(s) && idempotents_central(s)
}

/// Whether `set` is a Clifford subsemigroup of `s`.
pub fn is_clifford_subset(s: &Semigroup, set: &[Elem]) -> bool {
    let mut inside = vec![false; s.order()];
    for &x in set {
        inside[x.idx()] = true;
    }
    let closed = set
        .iter()
        .all(|&x| set.iter().all(|&y| inside[s.mul(x, y).idx()]));
    closed
        && set.iter().all(|&x| s.generates_group(x))
        && set
            .iter()
            .filter(|&&e| s.is_idempotent(e))
            .all(|&e| set.iter().all(|&x| s.mul(e, x) == s.mul(x, e)))
}

/// Smallest `d` such that all products of `d` elements coincide.
pub fn nilpotency_degree(s: &Semigroup) -> Option<usize> {
    let mut products = vec![true; s.order()];
    for d in 1..=s.order() + 1 {
        if products.iter().filter(|&&p| p).count() == 1 {
            return Some(d);
        }
        let mut next = vec![false; s.order()];
        for p in s.elements().filter(|p| products[p.idx()]) {
            for &q in s.row(p) {
                next[q.idx()] = true;
            }
        }
        products = next;
    }
    None
}

/// `E ∪ SE ∪ ES ∪ SES` for the idempotents `E`, sorted.
pub fn ideal_of_idempotents(s: &Semigroup) -> Vec<Elem> {
    let mut inside = vec![false; s.order()];
    for e in s.idempotents() {
        inside[e.idx()] = true;
        for x in s.elements() {
            let xe = s.mul(x, e);
            inside[xe.idx()] = true;
            inside[s.mul(e, x).idx()] = true;
            for y in s.elements() {
                inside[s.mul(xe, y).idx()] = true;
            }
        }
    }
    s.elements().filter(|x| inside[x.idx()]).collect()
}

/// First `(e, a)` with `e` idempotent, `ea = a`, and `<a>` not a group.
pub fn condition_3b_violation(s: &Semigroup) -> Option<(Elem, Elem)> {
    s.idempotents().into_iter().find_map(|e| {
        s.elements()
            .find(|&a| s.mul(e, a) == a && !s.generates_group(a))
            .map(|a| (e, a))
    })
}
