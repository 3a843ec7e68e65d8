//! Kozen's composition problem encoded as SMP over `T(3)`.
//!
//! `T(3)` acts on the points `0, 1, ∞` (letters `1, 2, 3` in image words).
//! A map `g: [n] -> [n]` becomes a mapping tuple on `n² + mn` coordinates;
//! choice tuples select the next `f_i` and application tuples move each
//! marker to its image under `f_i`.

use std::collections::VecDeque;
use std::sync::Arc;

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::builtin::builtin;
use crate::error::{Error, Result};
use crate::semigroup::{Elem, Semigroup};
use crate::tuple::{SmpInstance, Tup, Witness};

/// Named `T(3)` elements, as image words over `0 -> 1, 1 -> 2, ∞ -> 3`.
pub const ZERO: &str = "113";
pub const ONE: &str = "223";
pub const ID: &str = "123";
pub const ZTOZ: &str = "133";
pub const ZTOO: &str = "233";
pub const OTOZ: &str = "313";

/// Is `f` a composition of the maps `fs` (the identity included)?
///
/// Maps are 0-based image vectors; JSON uses 1-based images.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CompositionJson", into = "CompositionJson")]
pub struct CompositionInstance {
    pub n: usize,
    pub f: Vec<usize>,
    pub fs: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct CompositionJson {
    n: usize,
    f: Vec<usize>,
    fs: Vec<Vec<usize>>,
}

impl TryFrom<CompositionJson> for CompositionInstance {
    type Error = Error;

    fn try_from(raw: CompositionJson) -> Result<Self> {
        let to_zero = |m: Vec<usize>| -> Result<Vec<usize>> {
            m.into_iter()
                .map(|x| {
                    x.checked_sub(1)
                        .ok_or_else(|| Error::Parse("map images are 1-based".into()))
                })
                .collect()
        };
        CompositionInstance::new(
            raw.n,
            to_zero(raw.f)?,
            raw.fs.into_iter().map(to_zero).collect::<Result<_>>()?,
        )
    }
}

impl From<CompositionInstance> for CompositionJson {
    fn from(c: CompositionInstance) -> Self {
        let one = |m: &[usize]| m.iter().map(|x| x + 1).collect();
        CompositionJson {
            n: c.n,
            f: one(&c.f),
            fs: c.fs.iter().map(|m| one(m)).collect(),
        }
    }
}

impl CompositionInstance {
    pub fn new(n: usize, f: Vec<usize>, fs: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parse("n must be positive".into()));
        }
        for map in std::iter::once(&f).chain(&fs) {
            if map.len() != n || map.iter().any(|&x| x >= n) {
                return Err(Error::Parse(format!("{map:?} is not a total map on [{n}]")));
            }
        }
        Ok(CompositionInstance { n, f, fs })
    }

    pub fn m(&self) -> usize {
        self.fs.len()
    }

    pub fn coordinates(&self) -> usize {
        self.n * self.n + self.m() * self.n
    }

    /// Position of `a_ijk` (0-based `i, j, k`) in the encoded generator list.
    pub fn application_index(&self, i: usize, j: usize, k: usize) -> usize {
        1 + self.m() + i * self.n * self.n + j * self.n + k
    }
}

/// `x^(gh) = (x^g)^h` on 0-based image vectors.
fn compose(g: &[usize], h: &[usize]) -> Vec<usize> {
    g.iter().map(|&x| h[x]).collect()
}

/// Membership of `f` in the monoid generated by `fs`, by BFS from the
/// identity.
pub fn composition_oracle(c: &CompositionInstance) -> bool {
    let id: Vec<usize> = (0..c.n).collect();
    let mut seen = FxHashSet::default();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        if g == c.f {
            return true;
        }
        for h in &c.fs {
            let gh = compose(&g, h);
            if seen.insert(gh.clone()) {
                queue.push_back(gh);
            }
        }
    }
    false
}

struct Named {
    zero: Elem,
    one: Elem,
    id: Elem,
    ztoz: Elem,
    ztoo: Elem,
    otoz: Elem,
}

impl Named {
    fn new(t3: &Semigroup) -> Self {
        let e = |w: &str| t3.elem_by_name(w).expect("T(3) image word");
        Named {
            zero: e(ZERO),
            one: e(ONE),
            id: e(ID),
            ztoz: e(ZTOZ),
            ztoo: e(ZTOO),
            otoz: e(OTOZ),
        }
    }
}

/// `m_g`: `ONE` at coordinates `j·n + g(j)`, `ZERO` elsewhere.
pub fn mapping_tuple(c: &CompositionInstance, g: &[usize]) -> Tup {
    let named = Named::new(&builtin("T(3)").expect("T(3) builds"));
    mapping_tuple_with(c, &named, g)
}

fn mapping_tuple_with(c: &CompositionInstance, named: &Named, g: &[usize]) -> Tup {
    let mut t = vec![named.zero; c.coordinates()];
    for (j, &gj) in g.iter().enumerate() {
        t[j * c.n + gj] = named.one;
    }
    Tup::new(t)
}

/// The SMP instance `m_f ∈ <m_1, c_1..c_m, a_111..a_mnn>`, generators in
/// that order with `a_ijk` lexicographic in `(i, j, k)`.
pub fn encode_kozen_to_t3(c: &CompositionInstance) -> Result<SmpInstance> {
    let t3 = Arc::new(builtin("T(3)")?);
    let named = Named::new(&t3);
    let (n, m) = (c.n, c.m());
    let tail = |i: usize, j: usize| n * n + i * n + j;
    let identity: Vec<usize> = (0..n).collect();

    let mut gens = vec![mapping_tuple_with(c, &named, &identity)];
    for i in 0..m {
        let mut t = vec![named.ztoz; c.coordinates()];
        t[..n * n].fill(named.id);
        for j in 0..n {
            t[tail(i, j)] = named.ztoo;
        }
        gens.push(Tup::new(t));
    }
    for (i, fi) in c.fs.iter().enumerate() {
        for j in 0..n {
            for k in 0..n {
                let mut t = vec![named.id; c.coordinates()];
                t[tail(i, j)] = named.otoz;
                if fi[k] != k {
                    t[j * n + k] = named.otoz;
                    t[j * n + fi[k]] = named.ztoo;
                }
                gens.push(Tup::new(t));
            }
        }
    }
    SmpInstance::new(t3, gens, mapping_tuple_with(c, &named, &c.f))
}

/// The word `m_1 c_i1 a_i1,1,1^g ... c_i2 ...` realising the composition
/// `f_i1 f_i2 ...` (0-based `i`), following `m_gf = m_g c_i a_i11^g ... a_inn^g`.
pub fn forward_word(c: &CompositionInstance, sequence: &[usize]) -> Witness {
    let mut g: Vec<usize> = (0..c.n).collect();
    let mut word = vec![0];
    for &i in sequence {
        word.push(1 + i);
        word.extend((0..c.n).map(|j| c.application_index(i, j, g[j])));
        g = compose(&g, &c.fs[i]);
    }
    Witness::new(word)
}
