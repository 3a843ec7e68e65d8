//! Tuples in direct powers `S^n` and subpower membership instances.

use std::ops::Deref;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semigroup::{Elem, Semigroup};

/// An element of `S^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Tup(Vec<Elem>);

impl Tup {
    pub fn new(coords: Vec<Elem>) -> Self {
        Tup(coords)
    }

    /// Constant tuple `(x, ..., x)`.
    pub fn constant(x: Elem, n: usize) -> Self {
        Tup(vec![x; n])
    }

    pub fn into_inner(self) -> Vec<Elem> {
        self.0
    }

    /// Coordinatewise product; the caller guarantees equal lengths.
    pub fn mul(&self, s: &Semigroup, other: &Tup) -> Tup {
        debug_assert_eq!(self.len(), other.len());
        Tup(self
            .0
            .iter()
            .zip(&other.0)
            .map(|(&x, &y)| s.mul(x, y))
            .collect())
    }

    /// In-place right multiplication `self := self * other`.
    pub fn mul_assign(&mut self, s: &Semigroup, other: &Tup) {
        debug_assert_eq!(self.len(), other.len());
        for (x, &y) in self.0.iter_mut().zip(&other.0) {
            *x = s.mul(*x, y);
        }
    }

    /// `self := self * other` on coordinates `from..`, for a right factor
    /// known to act trivially before `from`.
    pub(crate) fn mul_assign_from(&mut self, s: &Semigroup, other: &Tup, from: usize) {
        for (x, &y) in self.0[from..].iter_mut().zip(&other.0[from..]) {
            *x = s.mul(*x, y);
        }
    }

    /// `self^e` for `e >= 1`.
    pub fn pow(&self, s: &Semigroup, e: u64) -> Tup {
        Tup(self.0.iter().map(|&x| s.pow(x, e)).collect())
    }

    /// Coordinatewise idempotent power.
    pub fn idempotent_power(&self, s: &Semigroup) -> Tup {
        Tup(self.0.iter().map(|&x| s.idempotent_power(x)).collect())
    }

    /// Projection onto the given coordinates.
    pub fn project(&self, coords: &[usize]) -> Tup {
        Tup(coords.iter().map(|&i| self.0[i]).collect())
    }

    /// Human-readable rendering using element names.
    pub fn display(&self, s: &Semigroup) -> String {
        let parts: Vec<String> = self.0.iter().map(|&x| s.name(x)).collect();
        format!("({})", parts.join(","))
    }
}

impl Deref for Tup {
    type Target = [Elem];

    fn deref(&self) -> &[Elem] {
        &self.0
    }
}

impl FromIterator<Elem> for Tup {
    fn from_iter<I: IntoIterator<Item = Elem>>(iter: I) -> Self {
        Tup(iter.into_iter().collect())
    }
}

/// Checked coordinatewise product of two tuples.
pub fn tup_mul(s: &Semigroup, u: &Tup, v: &Tup) -> Result<Tup> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch {
            expected: u.len(),
            found: v.len(),
        });
    }
    Ok(u.mul(s, v))
}

/// A word over generator positions (0-based internally, 1-based when
/// serialized) whose left-to-right product is the witnessed tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Witness(Vec<usize>);

impl Witness {
    pub fn new(word: Vec<usize>) -> Self {
        Witness(word)
    }

    /// Builds a witness from 1-based generator positions.
    pub fn from_one_based(word: &[usize]) -> Result<Self> {
        word.iter()
            .map(|&i| {
                i.checked_sub(1)
                    .ok_or(Error::WordIndexOutOfRange { index: i, count: 0 })
            })
            .collect::<Result<Vec<_>>>()
            .map(Witness)
    }

    pub fn word(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }
}

impl Serialize for Witness {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.one_based().serialize(serializer)
    }
}

/// An SMP instance: generators `A` and target `b` in `S^n`.
#[derive(Clone, Debug)]
pub struct SmpInstance {
    semigroup: Arc<Semigroup>,
    n: usize,
    generators: Vec<Tup>,
    target: Tup,
}

impl SmpInstance {
    /// Validates lengths and element ranges. `generators` may be empty.
    pub fn new(semigroup: Arc<Semigroup>, generators: Vec<Tup>, target: Tup) -> Result<Self> {
        let n = target.len();
        if n == 0 {
            return Err(Error::EmptyTuple);
        }
        let order = semigroup.order();
        for t in generators.iter().chain(std::iter::once(&target)) {
            if t.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: t.len(),
                });
            }
            if let Some(x) = t.iter().find(|x| x.idx() >= order) {
                return Err(Error::ElementOutOfRange {
                    index: x.one_based(),
                    order,
                });
            }
        }
        Ok(SmpInstance {
            semigroup,
            n,
            generators,
            target,
        })
    }

    pub fn semigroup(&self) -> &Semigroup {
        &self.semigroup
    }

    pub fn semigroup_arc(&self) -> &Arc<Semigroup> {
        &self.semigroup
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Tup] {
        &self.generators
    }

    pub fn target(&self) -> &Tup {
        &self.target
    }

    /// Same semigroup and target, different generators.
    pub fn with_generators(&self, generators: Vec<Tup>) -> Result<SmpInstance> {
        SmpInstance::new(self.semigroup.clone(), generators, self.target.clone())
    }

    /// Left-to-right product of the generators selected by `w`.
    pub fn eval_word(&self, w: &Witness) -> Result<Tup> {
        eval_word(self, w)
    }

    /// Whether `w` evaluates to the target.
    pub fn verifies(&self, w: &Witness) -> bool {
        matches!(self.eval_word(w), Ok(t) if t == self.target)
    }
}

/// Left-to-right product of the generators selected by `w`.
pub fn eval_word(inst: &SmpInstance, w: &Witness) -> Result<Tup> {
    let (&first, rest) = w.word().split_first().ok_or(Error::EmptyWord)?;
    let pick = |i: usize| {
        inst.generators.get(i).ok_or(Error::WordIndexOutOfRange {
            index: i + 1,
            count: inst.k(),
        })
    };
    let mut acc = pick(first)?.clone();
    for &i in rest {
        acc.mul_assign(&inst.semigroup, pick(i)?);
    }
    Ok(acc)
}
