//! Finite semigroups given by Cayley tables.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::builtin::Builtin;
use crate::error::{Error, Result};

/// Largest order accepted for a Cayley table.
pub const MAX_ORDER: usize = 4096;

/// An element of a finite semigroup.
///
/// Stored 0-based; displayed, parsed and serialized 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(u16);

impl Elem {
    /// Element from a 0-based index.
    #[inline]
    pub const fn new(index: usize) -> Self {
        debug_assert!(index < MAX_ORDER);
        Elem(index as u16)
    }

    /// Element from a 1-based index, as used in files and reports.
    pub fn from_one_based(index: usize) -> Option<Self> {
        (1..=MAX_ORDER)
            .contains(&index)
            .then(|| Elem::new(index - 1))
    }

    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }

    pub fn one_based(self) -> usize {
        self.idx() + 1
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.one_based())
    }
}

impl Serialize for Elem {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_u64(self.one_based() as u64)
    }
}

impl<'de> Deserialize<'de> for Elem {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = usize::deserialize(deserializer)?;
        Elem::from_one_based(raw)
            .ok_or_else(|| serde::de::Error::custom(format!("element index {raw} out of range")))
    }
}

/// A finite semigroup: a validated associative Cayley table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Semigroup {
    order: usize,
    table: Vec<Elem>,
    names: Option<Vec<String>>,
    origin: Option<Builtin>,
}

impl Semigroup {
    /// Builds a semigroup from a table of 1-based entries.
    pub fn from_table(rows: &[Vec<usize>], names: Option<Vec<String>>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::EmptyTable);
        }
        if order > MAX_ORDER {
            return Err(Error::OrderTooLarge(order));
        }
        let mut table = Vec::with_capacity(order * order);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::NotSquare {
                    row: r + 1,
                    expected: order,
                    found: row.len(),
                });
            }
            for (c, &value) in row.iter().enumerate() {
                if value == 0 || value > order {
                    return Err(Error::EntryOutOfRange {
                        row: r + 1,
                        col: c + 1,
                        value,
                        order,
                    });
                }
                table.push(Elem::new(value - 1));
            }
        }
        Self::from_raw(order, table, names)
    }

    /// Builds a semigroup from a 0-based product function.
    pub fn from_fn(
        order: usize,
        names: Option<Vec<String>>,
        product: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        if order == 0 {
            return Err(Error::EmptyTable);
        }
        if order > MAX_ORDER {
            return Err(Error::OrderTooLarge(order));
        }
        let mut table = Vec::with_capacity(order * order);
        for x in 0..order {
            for y in 0..order {
                let value = product(x, y);
                if value >= order {
                    return Err(Error::EntryOutOfRange {
                        row: x + 1,
                        col: y + 1,
                        value: value + 1,
                        order,
                    });
                }
                table.push(Elem::new(value));
            }
        }
        Self::from_raw(order, table, names)
    }

    fn from_raw(order: usize, table: Vec<Elem>, names: Option<Vec<String>>) -> Result<Self> {
        if let Some(names) = &names {
            if names.len() != order {
                return Err(Error::NameCount {
                    expected: order,
                    found: names.len(),
                });
            }
        }
        let s = Semigroup {
            order,
            table,
            names,
            origin: None,
        };
        s.check_associative()?;
        Ok(s)
    }

    fn check_associative(&self) -> Result<()> {
        for x in self.elements() {
            for y in self.elements() {
                let xy = self.mul(x, y);
                for z in self.elements() {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return Err(Error::NonAssociative {
                            x: x.one_based(),
                            y: y.one_based(),
                            z: z.one_based(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub(crate) fn with_origin(mut self, origin: Builtin) -> Self {
        self.origin = Some(origin);
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The builtin this semigroup was constructed from, if any.
    pub fn origin(&self) -> Option<&Builtin> {
        self.origin.as_ref()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.order).map(Elem::new)
    }

    /// Checked conversion from a 0-based index.
    pub fn elem(&self, index: usize) -> Result<Elem> {
        if index < self.order {
            Ok(Elem::new(index))
        } else {
            Err(Error::ElementOutOfRange {
                index: index + 1,
                order: self.order,
            })
        }
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.table[x.idx() * self.order + y.idx()]
    }

    /// Row of the table for left factor `x`.
    #[inline]
    pub fn row(&self, x: Elem) -> &[Elem] {
        &self.table[x.idx() * self.order..(x.idx() + 1) * self.order]
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Display name; falls back to the 1-based index.
    pub fn name(&self, x: Elem) -> String {
        match &self.names {
            Some(names) => names[x.idx()].clone(),
            None => x.one_based().to_string(),
        }
    }

    /// Looks up an element by display name.
    pub fn elem_by_name(&self, name: &str) -> Option<Elem> {
        self.names
            .as_ref()?
            .iter()
            .position(|n| n == name)
            .map(Elem::new)
    }

    /// `x^e` for `e >= 1`, by repeated squaring.
    pub fn pow(&self, x: Elem, e: u64) -> Elem {
        assert!(e >= 1, "semigroup powers start at 1");
        let mut base = x;
        let mut e = e;
        let mut acc: Option<Elem> = None;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base,
                    Some(a) => self.mul(a, base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(base, base);
            }
        }
        acc.expect("e >= 1")
    }

    /// Index and period of `x`: the least `i, p` with `x^(i+p) = x^i`.
    pub fn index_period(&self, x: Elem) -> (usize, usize) {
        let mut seen = vec![0usize; self.order];
        let mut current = x;
        let mut t = 1;
        loop {
            if seen[current.idx()] != 0 {
                let index = seen[current.idx()];
                return (index, t - index);
            }
            seen[current.idx()] = t;
            current = self.mul(current, x);
            t += 1;
        }
    }

    pub fn is_idempotent(&self, x: Elem) -> bool {
        self.mul(x, x) == x
    }

    /// The unique idempotent among `x, x^2, x^3, ...`.
    pub fn idempotent_power(&self, x: Elem) -> Elem {
        let (index, period) = self.index_period(x);
        let t = index.div_ceil(period) * period;
        self.pow(x, t as u64)
    }

    /// Whether `<x>` is a group, i.e. `x^t = x` for some `t >= 2`.
    pub fn generates_group(&self, x: Elem) -> bool {
        self.index_period(x).0 == 1
    }

    pub fn idempotents(&self) -> Vec<Elem> {
        self.elements().filter(|&x| self.is_idempotent(x)).collect()
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|x| self.elements().all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Two-sided identity, if one exists.
    pub fn identity(&self) -> Option<Elem> {
        self.elements().find(|&e| {
            self.elements()
                .all(|x| self.mul(e, x) == x && self.mul(x, e) == x)
        })
    }

    /// Membership mask of the subsemigroup generated by `gens`.
    pub fn generated(&self, gens: &[Elem]) -> Vec<bool> {
        let mut member = vec![false; self.order];
        let mut queue = Vec::new();
        for &g in gens {
            if !member[g.idx()] {
                member[g.idx()] = true;
                queue.push(g);
            }
        }
        while let Some(x) = queue.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y.idx()] {
                    member[y.idx()] = true;
                    queue.push(y);
                }
            }
        }
        member
    }

    /// The 1-based table, row by row.
    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        self.elements()
            .map(|x| self.row(x).iter().map(|e| e.one_based()).collect())
            .collect()
    }

    /// Restricts the table to `elements`, which must be closed under
    /// multiplication. Returns the subsemigroup and the embedding of its
    /// elements into `self`, in the order given.
    pub fn subsemigroup(&self, elements: &[Elem]) -> Result<(Semigroup, Vec<Elem>)> {
        let mut position = vec![usize::MAX; self.order];
        for (i, &x) in elements.iter().enumerate() {
            position[x.idx()] = i;
        }
        for &x in elements {
            for &y in elements {
                let p = self.mul(x, y);
                if position[p.idx()] == usize::MAX {
                    return Err(Error::WrongSemigroup(format!(
                        "subset is not closed: {x}*{y} = {p}"
                    )));
                }
            }
        }
        let names = self
            .names
            .as_ref()
            .map(|names| elements.iter().map(|x| names[x.idx()].clone()).collect());
        let sub = Semigroup::from_fn(elements.len(), names, |i, j| {
            position[self.mul(elements[i], elements[j]).idx()]
        })?;
        Ok((sub, elements.to_vec()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2_one() -> Semigroup {
        Semigroup::from_table(
            &[vec![1, 1, 1], vec![1, 1, 2], vec![1, 2, 3]],
            Some(vec!["0".into(), "a".into(), "1".into()]),
        )
        .unwrap()
    }

    #[test]
    fn accepts_z2_one_and_trivial() {
        let s = z2_one();
        assert_eq!(s.order(), 3);
        let a = s.elem_by_name("a").unwrap();
        assert_eq!(s.name(s.mul(a, a)), "0");
        let t = Semigroup::from_table(&[vec![1]], None).unwrap();
        assert_eq!(t.order(), 1);
    }

    #[test]
    fn rejects_non_associative() {
        let rows = [vec![2, 1], vec![1, 1]];
        let mut violation = None;
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    let m = |a: usize, b: usize| rows[a][b] - 1;
                    if m(m(x, y), z) != m(x, m(y, z)) && violation.is_none() {
                        violation = Some((x + 1, y + 1, z + 1));
                    }
                }
            }
        }
        let (x, y, z) = violation.expect("table [[2,1],[1,1]] is not associative");
        match Semigroup::from_table(&rows, None) {
            Err(Error::NonAssociative { x: a, y: b, z: c }) => assert_eq!((a, b, c), (x, y, z)),
            other => panic!("expected associativity error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_out_of_range_and_ragged() {
        assert!(matches!(
            Semigroup::from_table(&[vec![1, 3], vec![1, 1]], None),
            Err(Error::EntryOutOfRange { value: 3, .. })
        ));
        assert!(matches!(
            Semigroup::from_table(&[vec![1, 1], vec![1]], None),
            Err(Error::NotSquare { row: 2, .. })
        ));
        assert!(matches!(
            Semigroup::from_table(&[], None),
            Err(Error::EmptyTable)
        ));
        assert!(matches!(
            Semigroup::from_table(&[vec![0]], None),
            Err(Error::EntryOutOfRange { .. })
        ));
    }

    #[test]
    fn idempotent_power_of_nilpotent_element() {
        let s = z2_one();
        let a = s.elem_by_name("a").unwrap();
        let zero = s.elem_by_name("0").unwrap();
        let one = s.elem_by_name("1").unwrap();
        assert_eq!(s.idempotent_power(a), zero);
        assert_eq!(s.idempotent_power(one), one);
        assert!(!s.generates_group(a));
        assert!(s.generates_group(one));
        assert_eq!(s.index_period(a), (2, 1));
    }

    #[test]
    fn pow_matches_iterated_product() {
        let s = Semigroup::from_fn(5, None, |x, y| (x + y) % 5).unwrap();
        let g = Elem::new(2);
        let mut acc = g;
        for e in 1..20u64 {
            assert_eq!(s.pow(g, e), acc);
            acc = s.mul(acc, g);
        }
    }

    #[test]
    fn subsemigroup_restricts_table() {
        let s = z2_one();
        let (sub, emb) = s.subsemigroup(&[Elem::new(0), Elem::new(2)]).unwrap();
        assert_eq!(sub.order(), 2);
        assert_eq!(emb, vec![Elem::new(0), Elem::new(2)]);
        assert_eq!(sub.to_rows(), vec![vec![1, 1], vec![1, 2]]);
        assert!(s.subsemigroup(&[Elem::new(1)]).is_err());
    }

    #[test]
    fn elem_serializes_one_based() {
        assert_eq!(serde_json::to_string(&Elem::new(0)).unwrap(), "1");
        let e: Elem = serde_json::from_str("3").unwrap();
        assert_eq!(e, Elem::new(2));
        assert!(serde_json::from_str::<Elem>("0").is_err());
    }
}
