use crate::error::{Error, Result};
use crate::semigroup::{Elem, Semigroup};

use super::{
    condition_3b_violation, is_clifford_subset, nilpotency_degree, rees_quotient, ReesQuotient,
};

/// An embedding `β: S -> C x N` with `C = α(S)` Clifford and `N = S/C`
/// nilpotent, where `α(x) = x^(k+1)`.
#[derive(Clone, Debug)]
pub struct EmbeddingWitness {
    /// Least exponent with `x^k` idempotent for every `x`.
    pub k: usize,
    pub alpha: Vec<Elem>,
    /// `α(S)`, sorted.
    pub clifford_part: Vec<Elem>,
    pub quotient: ReesQuotient,
    /// Nilpotency degree of the quotient.
    pub quotient_degree: usize,
}

impl EmbeddingWitness {
    pub fn beta(&self, x: Elem) -> (Elem, Elem) {
        (self.alpha[x.idx()], self.quotient.class_of[x.idx()])
    }
}

/// Least `k` such that `x^k` is idempotent for all `x`.
pub(crate) fn common_idempotent_exponent(s: &Semigroup) -> usize {
    let (mut max_index, mut lcm) = (1usize, 1usize);
    for x in s.elements() {
        let (index, period) = s.index_period(x);
        max_index = max_index.max(index);
        lcm = lcm / gcd(lcm, period) * period;
    }
    max_index.div_ceil(lcm) * lcm
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Constructs `α`, `C`, `N` and `β` and verifies every property of the
/// embedding. On failure, reports an idempotent `e` and an element `a` with
/// `ea = a` and `<a>` not a group when such a pair exists.
pub fn build_embedding(s: &Semigroup) -> Result<EmbeddingWitness> {
    construct(s).map_err(|reason| match condition_3b_violation(s) {
        Some((e, a)) => Error::NonGroupFixedElement {
            e: e.one_based(),
            a: a.one_based(),
        },
        None => Error::Embedding(reason),
    })
}

fn construct(s: &Semigroup) -> std::result::Result<EmbeddingWitness, String> {
    let k = common_idempotent_exponent(s);
    let alpha: Vec<Elem> = s.elements().map(|x| s.pow(x, k as u64 + 1)).collect();
    let a = |x: Elem| alpha[x.idx()];
    for x in s.elements() {
        if a(a(x)) != a(x) {
            return Err(format!("alpha is not idempotent at {}", s.name(x)));
        }
        for y in s.elements() {
            if a(s.mul(x, y)) != s.mul(a(x), a(y)) {
                return Err(format!(
                    "alpha is not multiplicative at ({}, {})",
                    s.name(x),
                    s.name(y)
                ));
            }
        }
    }
    let mut clifford_part = alpha.clone();
    clifford_part.sort();
    clifford_part.dedup();
    if !is_clifford_subset(s, &clifford_part) {
        return Err("alpha(S) is not a Clifford subsemigroup".into());
    }
    let quotient = rees_quotient(s, &clifford_part).map_err(|e| format!("alpha(S): {e}"))?;
    let quotient_degree = nilpotency_degree(&quotient.semigroup)
        .filter(|&d| d <= quotient.semigroup.order())
        .ok_or_else(|| "S/alpha(S) is not |N|-nilpotent".to_string())?;
    let witness = EmbeddingWitness {
        k,
        alpha,
        clifford_part,
        quotient,
        quotient_degree,
    };
    let n = &witness.quotient.semigroup;
    let mut images = std::collections::HashSet::new();
    for x in s.elements() {
        if !images.insert(witness.beta(x)) {
            return Err(format!("beta is not injective at {}", s.name(x)));
        }
        for y in s.elements() {
            let (cx, nx) = witness.beta(x);
            let (cy, ny) = witness.beta(y);
            if witness.beta(s.mul(x, y)) != (s.mul(cx, cy), n.mul(nx, ny)) {
                return Err(format!(
                    "beta is not multiplicative at ({}, {})",
                    s.name(x),
                    s.name(y)
                ));
            }
        }
    }
    Ok(witness)
}
