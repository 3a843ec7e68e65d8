//! Subpower membership for groups through a stabilizer chain over
//! coordinates.
//!
//! A subgroup `H <= G_1 x ... x G_n` is represented by levels at selected
//! coordinates (the base). The level at coordinate `c` holds one
//! representative for every value `h(c)` taken by elements of `H` that are
//! the identity on all coordinates before `c`. Strong generators are
//! saturated with Schreier generators until every Schreier generator sifts
//! through the deeper levels, so sifting decides membership exactly.
//!
//! Each coordinate has its own group: a maximal subgroup of one semigroup
//! table, identified by its identity element. Inverses are powers
//! `x^(E-1)` with `E` the exponent of the groups involved, so every stored
//! element carries a word over the original generators.

use std::collections::BTreeMap;
use std::sync::Arc;

use rustc_hash::FxHashSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::semigroup::{Elem, Semigroup};
use crate::structure::is_group;
use crate::tuple::{SmpInstance, Tup, Witness};

/// Longest witness word that is expanded from its compressed form.
pub const MAX_WITNESS_LEN: u128 = 1 << 20;

type NodeId = u32;

#[derive(Clone, Copy, Debug)]
enum Node {
    Gen(u32),
    Mul(NodeId, NodeId),
    Pow(NodeId, u64),
}

/// A word as a straight-line program; `None` is the empty word.
type Word = Option<NodeId>;

#[derive(Clone, Debug, Default)]
struct Program {
    nodes: Vec<Node>,
    lens: Vec<u128>,
}

impl Program {
    fn push(&mut self, node: Node, len: u128) -> Word {
        self.nodes.push(node);
        self.lens.push(len);
        Some((self.nodes.len() - 1) as NodeId)
    }

    fn gen(&mut self, g: usize) -> Word {
        self.push(Node::Gen(g as u32), 1)
    }

    fn mul(&mut self, a: Word, b: Word) -> Word {
        match (a, b) {
            (None, w) | (w, None) => w,
            (Some(x), Some(y)) => {
                let len = self.lens[x as usize].saturating_add(self.lens[y as usize]);
                self.push(Node::Mul(x, y), len)
            }
        }
    }

    fn pow(&mut self, a: Word, e: u64) -> Word {
        match (a, e) {
            (None, _) | (_, 0) => None,
            (w, 1) => w,
            (Some(x), e) => {
                let len = self.lens[x as usize].saturating_mul(e as u128);
                self.push(Node::Pow(x, e), len)
            }
        }
    }

    fn len(&self, w: Word) -> u128 {
        w.map_or(0, |x| self.lens[x as usize])
    }

    fn expand(&self, w: Word) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len(w) as usize);
        let mut stack: Vec<NodeId> = w.into_iter().collect();
        while let Some(id) = stack.pop() {
            match self.nodes[id as usize] {
                Node::Gen(g) => out.push(g as usize),
                Node::Mul(a, b) => {
                    stack.push(b);
                    stack.push(a);
                }
                Node::Pow(a, e) => stack.extend(std::iter::repeat_n(a, e as usize)),
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
struct Member {
    tup: Tup,
    word: Word,
}

#[derive(Clone, Debug, Default)]
struct Level {
    /// Orbit values in discovery order, with representative and inverse.
    values: Vec<Elem>,
    reps: Vec<Member>,
    inverses: Vec<Member>,
    /// Element index -> position in `values`.
    position: Vec<Option<u32>>,
    /// For each orbit point, how many strong generators of this level have
    /// been applied to it.
    applied: Vec<usize>,
}

/// A stabilizer chain for a subgroup of a product of coordinate groups.
#[derive(Clone, Debug)]
pub struct StabilizerChain {
    s: Arc<Semigroup>,
    identity: Tup,
    exponent: u64,
    program: Program,
    strong: Vec<(usize, Member)>,
    strong_set: FxHashSet<Tup>,
    levels: BTreeMap<usize, Level>,
    generator_count: usize,
}

/// Exponent of the union of all maximal subgroups of `s`.
pub fn group_exponent(s: &Semigroup) -> u64 {
    let mut lcm = 1u64;
    for x in s.elements() {
        let (index, period) = s.index_period(x);
        if index == 1 {
            let p = period as u64;
            lcm = lcm / gcd(lcm, p) * p;
        }
    }
    lcm
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl StabilizerChain {
    /// Builds the chain of `<gens>`, where coordinate `c` of every tuple
    /// lies in the maximal subgroup with identity `identity[c]`.
    pub fn build(s: Arc<Semigroup>, identity: Tup, gens: &[Tup]) -> Result<Self> {
        for g in gens {
            if g.len() != identity.len() {
                return Err(Error::LengthMismatch {
                    expected: identity.len(),
                    found: g.len(),
                });
            }
            if let Some(c) = (0..g.len()).find(|&c| s.idempotent_power(g[c]) != identity[c]) {
                return Err(Error::NotAGroup(format!(
                    "coordinate {} value {} is outside the group of {}",
                    c + 1,
                    s.name(g[c]),
                    s.name(identity[c])
                )));
            }
        }
        let exponent = group_exponent(&s);
        let mut chain = StabilizerChain {
            s,
            identity,
            exponent,
            program: Program::default(),
            strong: Vec::new(),
            strong_set: FxHashSet::default(),
            levels: BTreeMap::new(),
            generator_count: gens.len(),
        };
        for (g, tup) in gens.iter().enumerate() {
            let word = chain.program.gen(g);
            let member = Member {
                tup: tup.clone(),
                word,
            };
            let residue = chain.sift(member, 0);
            if let Some(c) = chain.first_moved(&residue.tup, 0) {
                chain.add_strong(c, residue);
                chain.saturate();
            }
        }
        Ok(chain)
    }

    fn first_moved(&self, t: &Tup, from: usize) -> Option<usize> {
        (from..t.len()).find(|&c| t[c] != self.identity[c])
    }

    fn add_strong(&mut self, coord: usize, member: Member) {
        if !self.strong_set.insert(member.tup.clone()) {
            return;
        }
        self.strong.push((coord, member));
        let order = self.s.order();
        let identity = self.identity[coord];
        self.levels.entry(coord).or_insert_with(|| {
            let mut position = vec![None; order];
            position[identity.idx()] = Some(0);
            let id = Member {
                tup: self_identity_placeholder(),
                word: None,
            };
            Level {
                values: vec![identity],
                reps: vec![id.clone()],
                inverses: vec![id],
                position,
                applied: vec![0],
            }
        });
    }

    /// Product of two members that are both trivial before `from`.
    fn mul(&mut self, a: &Member, b: &Member, from: usize) -> Member {
        let tup = match (a.tup.is_empty(), b.tup.is_empty()) {
            (true, true) => Tup::new(Vec::new()),
            (true, false) => b.tup.clone(),
            (false, true) => a.tup.clone(),
            (false, false) => {
                let mut t = a.tup.clone();
                t.mul_assign_from(&self.s, &b.tup, from);
                t
            }
        };
        Member {
            tup,
            word: self.program.mul(a.word, b.word),
        }
    }

    fn inverse(&mut self, a: &Member) -> Member {
        if a.tup.is_empty() || self.exponent == 1 {
            return Member {
                tup: Tup::new(Vec::new()),
                word: None,
            };
        }
        Member {
            tup: a.tup.pow(&self.s, self.exponent - 1),
            word: self.program.pow(a.word, self.exponent - 1),
        }
    }

    /// Strong generators whose level is at or after `coord`.
    fn strong_from(&self, coord: usize) -> Vec<usize> {
        (0..self.strong.len())
            .filter(|&i| self.strong[i].0 >= coord)
            .collect()
    }

    fn saturate(&mut self) {
        'outer: loop {
            let coords: Vec<usize> = self.levels.keys().rev().copied().collect();
            for coord in coords {
                if let Some(found) = self.process_level(coord) {
                    let c = self.first_moved(&found.tup, 0).expect("non-identity");
                    self.add_strong(c, found);
                    continue 'outer;
                }
            }
            return;
        }
    }

    /// Extends the orbit at `coord` and checks its pending Schreier
    /// generators; returns the first one that fails to sift.
    fn process_level(&mut self, coord: usize) -> Option<Member> {
        let gens = self.strong_from(coord);
        let mut point = 0;
        loop {
            let level = &self.levels[&coord];
            if point >= level.values.len() {
                return None;
            }
            let start = level.applied[point];
            if start >= gens.len() {
                point += 1;
                continue;
            }
            let g = gens[start];
            self.levels.get_mut(&coord).unwrap().applied[point] = start + 1;

            let level = &self.levels[&coord];
            let value = level.values[point];
            let gen_value = self.strong[g].1.tup[coord];
            let image = self.s.mul(value, gen_value);
            let rep_is_identity = level.reps[point].tup.is_empty();
            match level.position[image.idx()] {
                None => {
                    let rep = level.reps[point].clone();
                    let gen = self.strong[g].1.clone();
                    let new_rep = self.mul(&rep, &gen, coord);
                    let new_inv = self.inverse(&new_rep);
                    let level = self.levels.get_mut(&coord).unwrap();
                    level.position[image.idx()] = Some(level.values.len() as u32);
                    level.values.push(image);
                    level.reps.push(new_rep);
                    level.inverses.push(new_inv);
                    level.applied.push(0);
                }
                Some(target) => {
                    if rep_is_identity && gen_value == self.identity[coord] {
                        // Schreier generator is the strong generator itself
                        continue;
                    }
                    let rep = level.reps[point].clone();
                    let inv = level.inverses[target as usize].clone();
                    let gen = self.strong[g].1.clone();
                    let partial = self.mul(&rep, &gen, coord);
                    let schreier = self.mul(&partial, &inv, coord);
                    if schreier.tup.is_empty()
                        || self.is_identity(&schreier.tup)
                        || self.strong_set.contains(&schreier.tup)
                    {
                        continue;
                    }
                    let residue = self.sift(schreier, coord + 1);
                    if !self.is_identity(&residue.tup) {
                        return Some(residue);
                    }
                }
            }
        }
    }

    fn is_identity(&self, t: &Tup) -> bool {
        t.is_empty() || t[..] == self.identity[..]
    }

    /// Divides `x` by level representatives from coordinate `from` on.
    fn sift(&mut self, mut x: Member, from: usize) -> Member {
        if x.tup.is_empty() {
            return x;
        }
        let coords: Vec<usize> = self.levels.range(from..).map(|(&c, _)| c).collect();
        for c in coords {
            let value = x.tup[c];
            if value == self.identity[c] {
                continue;
            }
            let level = &self.levels[&c];
            let Some(p) = level.position[value.idx()] else {
                return x;
            };
            let inv = &level.inverses[p as usize];
            let inv_word = inv.word;
            if !inv.tup.is_empty() {
                x.tup.mul_assign_from(&self.s, &inv.tup, c);
            }
            x.word = self.program.mul(x.word, inv_word);
        }
        x
    }

    /// Whether `b` lies in the group, with a compressed word when it does.
    fn sift_target(&mut self, b: &Tup) -> Option<Word> {
        let x = Member {
            tup: b.clone(),
            word: None,
        };
        // b · r1⁻¹ · ... · rm⁻¹ = 1 gives b = rm · ... · r1
        let coords: Vec<usize> = self.levels.keys().copied().collect();
        let mut current = x.tup;
        let mut factors = Vec::new();
        for c in coords {
            let value = current[c];
            if value == self.identity[c] {
                continue;
            }
            let level = &self.levels[&c];
            let p = level.position[value.idx()]? as usize;
            factors.push(level.reps[p].word);
            let inv = &level.inverses[p].tup;
            if !inv.is_empty() {
                current.mul_assign_from(&self.s, inv, c);
            }
        }
        if !self.is_identity(&current) {
            return None;
        }
        let mut word = None;
        for f in factors {
            word = self.program.mul(f, word);
        }
        Some(word)
    }

    /// Exact membership test.
    pub fn contains(&mut self, b: &Tup) -> bool {
        b.len() == self.identity.len() && self.sift_target(b).is_some()
    }

    /// Membership with a witness word over the original generators. The word
    /// is `None` when `b` is a member but the word would exceed
    /// [`MAX_WITNESS_LEN`].
    pub fn membership(&mut self, b: &Tup) -> Option<Option<Witness>> {
        if b.len() != self.identity.len() || self.generator_count == 0 {
            return None;
        }
        let mut word = self.sift_target(b)?;
        if word.is_none() {
            // the identity as a nonempty product: a_1^E
            let g = self.program.gen(0);
            word = self.program.pow(g, self.exponent);
        }
        if self.program.len(word) > MAX_WITNESS_LEN {
            return Some(None);
        }
        Some(Some(Witness::new(self.program.expand(word))))
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.keys().copied().collect()
    }

    /// Number of non-identity representatives over all levels.
    pub fn representative_count(&self) -> usize {
        self.levels.values().map(|l| l.values.len() - 1).sum()
    }

    /// `(coordinate, value, representative, word)` for every non-identity
    /// representative.
    pub fn representatives(&self) -> Vec<(usize, Elem, Tup, Vec<usize>)> {
        self.levels
            .iter()
            .flat_map(|(&c, level)| {
                (1..level.values.len()).map(move |p| {
                    (
                        c,
                        level.values[p],
                        level.reps[p].tup.clone(),
                        self.program.expand(level.reps[p].word),
                    )
                })
            })
            .collect()
    }

    pub fn identity(&self) -> &Tup {
        &self.identity
    }
}

fn self_identity_placeholder() -> Tup {
    Tup::new(Vec::new())
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupOutcome {
    pub member: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// Exact SMP over a finite group.
pub fn group_smp(inst: &SmpInstance) -> Result<GroupOutcome> {
    let s = inst.semigroup();
    if !is_group(s) {
        return Err(Error::NotAGroup("no identity or missing inverses".into()));
    }
    let identity = s.identity().expect("groups have an identity");
    let mut chain = StabilizerChain::build(
        inst.semigroup_arc().clone(),
        Tup::constant(identity, inst.n()),
        inst.generators(),
    )?;
    Ok(match chain.membership(inst.target()) {
        None => GroupOutcome {
            member: false,
            witness: None,
        },
        Some(witness) => GroupOutcome {
            member: true,
            witness,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::builtin;

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
    fn z2_diagonal() {
        let i = inst("cyclic_group(2)", &[&["1", "1"]], &["1", "0"]);
        assert!(!group_smp(&i).unwrap().member);
        let i = inst("cyclic_group(2)", &[&["1", "1"]], &["1", "1"]);
        let out = group_smp(&i).unwrap();
        assert!(out.member);
        assert_eq!(out.witness.unwrap().word(), &[0]);
    }

    #[test]
    fn z3_squaring() {
        let i = inst("cyclic_group(3)", &[&["1", "2"]], &["2", "1"]);
        let out = group_smp(&i).unwrap();
        assert!(out.member);
        assert!(i.verifies(&out.witness.unwrap()));
    }

    #[test]
    fn identity_target_uses_a_nonempty_word() {
        let i = inst("cyclic_group(3)", &[&["1", "2"]], &["0", "0"]);
        let out = group_smp(&i).unwrap();
        assert!(out.member);
        let w = out.witness.unwrap();
        assert!(!w.is_empty());
        assert!(i.verifies(&w));
        let none = inst("cyclic_group(3)", &[], &["0", "0"]);
        assert!(!group_smp(&none).unwrap().member);
    }

    #[test]
    fn symmetric_group_pairs() {
        // <((12),(12)), ((123),(132))>: the second coordinate is the inverse
        // image pattern, so (e, (12)) is not reachable.
        let s = builtin("symmetric_group(3)").unwrap();
        let names: Vec<String> = s.elements().map(|x| s.name(x)).collect();
        assert_eq!(names.len(), 6);
        let i = inst(
            "symmetric_group(3)",
            &[&["213", "213"], &["231", "312"]],
            &["123", "213"],
        );
        let out = group_smp(&i).unwrap();
        let oracle = crate::oracle::closure_oracle(&i, None).unwrap();
        assert_eq!(out.member, oracle.member);
    }

    #[test]
    fn rejects_non_groups() {
        let i = inst("Z2_1", &[&["a"]], &["a"]);
        assert!(matches!(group_smp(&i), Err(Error::NotAGroup(_))));
    }

    #[test]
    fn representatives_are_consistent() {
        let i = inst(
            "symmetric_group(3)",
            &[
                &["213", "123", "231"],
                &["231", "213", "213"],
                &["132", "132", "123"],
            ],
            &["123", "123", "123"],
        );
        let s = i.semigroup_arc().clone();
        let id = s.identity().unwrap();
        let chain =
            StabilizerChain::build(s.clone(), Tup::constant(id, 3), i.generators()).unwrap();
        assert!(chain.representative_count() <= 3 * 6);
        for (c, value, rep, word) in chain.representatives() {
            assert_eq!(rep[c], value);
            assert!((0..c).all(|j| rep[j] == id));
            assert_eq!(i.eval_word(&Witness::new(word)).unwrap(), rep);
        }
    }
}
