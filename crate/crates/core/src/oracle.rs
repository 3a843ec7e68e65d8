//! Exact brute-force membership: breadth-first closure of `<A>` in `S^n`.
//!
//! States are explored in order of (word length, generator position), so the
//! witness recovered through parent links is a shortest word and identical
//! across runs.

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::semigroup::Semigroup;
use crate::tuple::{SmpInstance, Tup, Witness};

#[derive(Clone, Copy, Debug, Default)]
pub struct OracleConfig {
    /// Maximum number of distinct tuples to hold before giving up.
    pub cap: Option<usize>,
    /// Stop as soon as the target is discovered.
    pub stop_at_target: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleOutcome {
    pub member: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Number of tuples discovered; equals `|<A>|` when `complete`.
    pub closure_size: usize,
    pub complete: bool,
}

/// Full closure of `<A>`; `closure_size` is exact. Exceeding `cap` is an
/// error, never a `false` answer.
pub fn closure_oracle(inst: &SmpInstance, cap: Option<usize>) -> Result<OracleOutcome> {
    closure_oracle_with(
        inst,
        OracleConfig {
            cap,
            stop_at_target: false,
        },
    )
}

pub fn closure_oracle_with(inst: &SmpInstance, config: OracleConfig) -> Result<OracleOutcome> {
    let mut walk = Closure::new(inst.semigroup(), inst.generators(), config.cap);
    let found = walk.run(Some(inst.target()), config.stop_at_target)?;
    let witness = found.map(|i| walk.word(i));
    Ok(OracleOutcome {
        member: found.is_some(),
        witness,
        closure_size: walk.states.len(),
        complete: walk.complete,
    })
}

/// All elements of `<gens>` in discovery order.
pub fn enumerate_closure(s: &Semigroup, gens: &[Tup], cap: Option<usize>) -> Result<Vec<Tup>> {
    let mut walk = Closure::new(s, gens, cap);
    walk.run(None, false)?;
    Ok(walk.states)
}

struct Closure<'a> {
    s: &'a Semigroup,
    gens: &'a [Tup],
    cap: usize,
    states: Vec<Tup>,
    index: FxHashMap<Tup, u32>,
    /// (parent state, generator) for each state; roots have no parent.
    links: Vec<(Option<u32>, u32)>,
    complete: bool,
}

impl<'a> Closure<'a> {
    fn new(s: &'a Semigroup, gens: &'a [Tup], cap: Option<usize>) -> Self {
        Closure {
            s,
            gens,
            cap: cap.unwrap_or(usize::MAX),
            states: Vec::new(),
            index: FxHashMap::default(),
            links: Vec::new(),
            complete: false,
        }
    }

    /// Inserts `t` if new; returns its state id when inserted.
    fn insert(&mut self, t: Tup, link: (Option<u32>, u32)) -> Result<Option<u32>> {
        if self.index.contains_key(&t) {
            return Ok(None);
        }
        if self.states.len() >= self.cap {
            return Err(Error::CapExceeded { cap: self.cap });
        }
        let id = self.states.len() as u32;
        self.index.insert(t.clone(), id);
        self.states.push(t);
        self.links.push(link);
        Ok(Some(id))
    }

    fn run(&mut self, target: Option<&Tup>, stop_at_target: bool) -> Result<Option<u32>> {
        let mut found = None;
        for (g, a) in self.gens.iter().enumerate() {
            if let Some(id) = self.insert(a.clone(), (None, g as u32))? {
                if found.is_none() && target == Some(a) {
                    found = Some(id);
                    if stop_at_target {
                        return Ok(found);
                    }
                }
            }
        }
        let mut head = 0;
        while head < self.states.len() {
            for g in 0..self.gens.len() {
                let next = self.states[head].mul(self.s, &self.gens[g]);
                let hit = found.is_none() && target == Some(&next);
                if let Some(id) = self.insert(next, (Some(head as u32), g as u32))? {
                    if hit {
                        found = Some(id);
                        if stop_at_target {
                            return Ok(found);
                        }
                    }
                }
            }
            head += 1;
        }
        self.complete = true;
        Ok(found.or_else(|| target.and_then(|t| self.index.get(t).copied())))
    }

    fn word(&self, mut id: u32) -> Witness {
        let mut word = Vec::new();
        loop {
            let (parent, g) = self.links[id as usize];
            word.push(g as usize);
            match parent {
                Some(p) => id = p,
                None => break,
            }
        }
        word.reverse();
        Witness::new(word)
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;
    use std::sync::Arc;

    use super::*;
    use crate::builtin::builtin;

    fn inst(s: &Arc<Semigroup>, gens: &[&[&str]], target: &[&str]) -> SmpInstance {
        let t = |names: &[&str]| {
            names
                .iter()
                .map(|n| s.elem_by_name(n).unwrap())
                .collect::<Tup>()
        };
        SmpInstance::new(s.clone(), gens.iter().map(|g| t(g)).collect(), t(target)).unwrap()
    }

    #[test]
    fn z2_one_pair_generates_aa() {
        let s = Arc::new(builtin("Z2_1").unwrap());
        let i = inst(&s, &[&["a", "1"], &["1", "a"]], &["a", "a"]);
        let out = closure_oracle(&i, None).unwrap();
        assert!(out.member);
        assert_eq!(out.witness.as_ref().unwrap().word(), &[0, 1]);
        // <(a,1),(1,a)> = {(a,1),(1,a),(0,1),(a,a),(1,0),(0,a),(a,0),(0,0)}
        assert_eq!(out.closure_size, 8);
        assert!(out.complete);
    }

    #[test]
    fn powers_of_aa() {
        let s = Arc::new(builtin("Z2_1").unwrap());
        let i = inst(&s, &[&["a", "a"]], &["a", "0"]);
        let out = closure_oracle(&i, None).unwrap();
        assert!(!out.member);
        assert!(out.witness.is_none());
        assert_eq!(out.closure_size, 2);
    }

    #[test]
    fn generator_target_has_length_one_witness() {
        let s = Arc::new(builtin("T(2)").unwrap());
        let i = inst(&s, &[&["12", "11"], &["21", "22"]], &["21", "22"]);
        let out = closure_oracle_with(
            &i,
            OracleConfig {
                cap: None,
                stop_at_target: true,
            },
        )
        .unwrap();
        assert!(out.member);
        assert_eq!(out.witness.unwrap().word(), &[1]);
    }

    #[test]
    fn cap_exceeded_is_an_error() {
        let s = Arc::new(builtin("cyclic_group(4)").unwrap());
        let i = inst(&s, &[&["1", "0"], &["0", "1"]], &["3", "2"]);
        assert!(matches!(
            closure_oracle(&i, Some(5)),
            Err(Error::CapExceeded { cap: 5 })
        ));
        assert_eq!(closure_oracle(&i, Some(16)).unwrap().closure_size, 16);
    }

    #[test]
    fn empty_generator_list_generates_nothing() {
        let s = Arc::new(builtin("Z2_1").unwrap());
        let i = inst(&s, &[], &["1"]);
        let out = closure_oracle(&i, None).unwrap();
        assert!(!out.member);
        assert_eq!(out.closure_size, 0);
    }

    #[test]
    fn closure_is_closed_under_generators() {
        let s = Arc::new(builtin("T(2)").unwrap());
        let i = inst(
            &s,
            &[&["21", "11"], &["12", "22"], &["22", "21"]],
            &["11", "11"],
        );
        let all = enumerate_closure(&s, i.generators(), None).unwrap();
        let set: BTreeSet<&Tup> = all.iter().collect();
        assert_eq!(set.len(), all.len());
        for c in &all {
            for a in i.generators() {
                assert!(set.contains(&c.mul(&s, a)));
            }
        }
    }
}
