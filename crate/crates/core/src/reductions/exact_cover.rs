//! Exact Cover encoded as SMP over a commutative semigroup.
//!
//! Given an idempotent `e` and an element `a` with `ea = ae = a` and `<a>`
//! not a group, set `c_j(i) = a` for `i ∈ C_j` and `e` otherwise. Then
//! `(a, ..., a) ∈ <c_1, ..., c_k>` iff some subfamily covers `[n]` exactly.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::semigroup::{Elem, Semigroup};
use crate::structure::central_violation;
use crate::tuple::{SmpInstance, Tup};

/// Sets `C_1..C_k ⊆ [n]`, stored 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactCoverInstance {
    pub n: usize,
    pub sets: Vec<Vec<usize>>,
}

impl ExactCoverInstance {
    /// Sets are given 0-based; each is sorted and deduplicated.
    pub fn new(n: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parse("exact cover needs n >= 1".into()));
        }
        let mut clean = Vec::with_capacity(sets.len());
        for mut set in sets {
            if let Some(&x) = set.iter().find(|&&x| x >= n) {
                return Err(Error::Parse(format!("element {} outside [1, {n}]", x + 1)));
            }
            set.sort_unstable();
            set.dedup();
            clean.push(set);
        }
        Ok(ExactCoverInstance { n, sets: clean })
    }

    /// Text form: `n k`, then one line of 1-based elements per set.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim_start().starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("missing `n k` header".into()))?;
        let nums = |line: &str| -> Result<Vec<usize>> {
            line.split_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| Error::Parse(format!("bad number {t:?}")))
                })
                .collect()
        };
        let head = nums(header)?;
        let [n, k] = head[..] else {
            return Err(Error::Parse("header must be `n k`".into()));
        };
        let mut sets = Vec::with_capacity(k);
        for j in 0..k {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing line for set {}", j + 1)))?;
            let set = nums(line)?
                .into_iter()
                .map(|x| {
                    x.checked_sub(1)
                        .ok_or_else(|| Error::Parse("set elements are 1-based".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            sets.push(set);
        }
        if lines.any(|l| !l.trim().is_empty()) {
            return Err(Error::Parse(format!("more than {k} set lines")));
        }
        ExactCoverInstance::new(n, sets)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.sets.len());
        for set in &self.sets {
            let items: Vec<String> = set.iter().map(|x| (x + 1).to_string()).collect();
            let _ = writeln!(out, "{}", items.join(" "));
        }
        out
    }
}

/// Checks the hypotheses on `(e, a)`, naming the first that fails.
pub fn check_np_pair(s: &Semigroup, e: Elem, a: Elem) -> Result<()> {
    let fail = |what: String| Err(Error::ExactCoverHypothesis(what));
    if !s.is_idempotent(e) {
        return fail(format!("{} is not idempotent", s.name(e)));
    }
    if s.mul(e, a) != a {
        return fail(format!("{}·{} != {}", s.name(e), s.name(a), s.name(a)));
    }
    if s.mul(a, e) != a {
        return fail(format!("{}·{} != {}", s.name(a), s.name(e), s.name(a)));
    }
    if s.generates_group(a) {
        return fail(format!("<{}> is a group", s.name(a)));
    }
    Ok(())
}

/// Characteristic tuples `c_j` as generators, target `(a, ..., a)`.
pub fn encode_exact_cover(
    ec: &ExactCoverInstance,
    s: Arc<Semigroup>,
    e: Elem,
    a: Elem,
) -> Result<SmpInstance> {
    check_np_pair(&s, e, a)?;
    let gens = ec
        .sets
        .iter()
        .map(|set| {
            let mut t = vec![e; ec.n];
            for &i in set {
                t[i] = a;
            }
            Tup::new(t)
        })
        .collect();
    SmpInstance::new(s, gens, Tup::constant(a, ec.n))
}

/// A disjoint subfamily covering `[n]`, as 0-based set indices.
pub fn exact_cover_solution(ec: &ExactCoverInstance) -> Option<Vec<usize>> {
    fn go(ec: &ExactCoverInstance, covered: &mut [bool], chosen: &mut Vec<usize>) -> bool {
        let Some(x) = covered.iter().position(|&c| !c) else {
            return true;
        };
        for (j, set) in ec.sets.iter().enumerate() {
            if set.is_empty() || !set.contains(&x) || set.iter().any(|&y| covered[y]) {
                continue;
            }
            set.iter().for_each(|&y| covered[y] = true);
            chosen.push(j);
            if go(ec, covered, chosen) {
                return true;
            }
            chosen.pop();
            set.iter().for_each(|&y| covered[y] = false);
        }
        false
    }
    let mut covered = vec![false; ec.n];
    let mut chosen = Vec::new();
    go(ec, &mut covered, &mut chosen).then(|| {
        chosen.sort_unstable();
        chosen
    })
}

pub fn exact_cover_bruteforce(ec: &ExactCoverInstance) -> bool {
    exact_cover_solution(ec).is_some()
}

/// An `(e, a)` pair with `e` idempotent, `ea = ae = a` and `<a>` not a
/// group, when idempotents are central and such a pair exists.
pub fn find_np_witness_pair(s: &Semigroup) -> Option<(Elem, Elem)> {
    if central_violation(s).is_some() {
        return None;
    }
    s.idempotents().into_iter().find_map(|e| {
        s.elements()
            .find(|&a| check_np_pair(s, e, a).is_ok())
            .map(|a| (e, a))
    })
}
