use crate::error::{Error, Result};
use crate::semigroup::{Elem, Semigroup};

/// The Rees quotient `S/I` together with the quotient map.
#[derive(Clone, Debug)]
pub struct ReesQuotient {
    pub semigroup: Semigroup,
    /// Image of each element of `S`.
    pub class_of: Vec<Elem>,
    /// The element that collapses the ideal.
    pub zero: Elem,
}

/// Collapses the two-sided ideal `ideal` to a single zero.
///
/// The zero takes the position of the smallest ideal element; all other
/// elements keep their relative order.
pub fn rees_quotient(s: &Semigroup, ideal: &[Elem]) -> Result<ReesQuotient> {
    if ideal.is_empty() {
        return Err(Error::EmptyIdeal);
    }
    let mut inside = vec![false; s.order()];
    for &x in ideal {
        inside[x.idx()] = true;
    }
    for &x in ideal {
        for y in s.elements() {
            for (l, r) in [(x, y), (y, x)] {
                let p = s.mul(l, r);
                if !inside[p.idx()] {
                    return Err(Error::NotAnIdeal {
                        x: l.one_based(),
                        y: r.one_based(),
                        product: p.one_based(),
                    });
                }
            }
        }
    }
    let first = s.elements().find(|x| inside[x.idx()]).expect("nonempty");
    let representatives: Vec<Elem> = s
        .elements()
        .filter(|&x| !inside[x.idx()] || x == first)
        .collect();
    let mut position = vec![usize::MAX; s.order()];
    for (i, &x) in representatives.iter().enumerate() {
        position[x.idx()] = i;
    }
    let zero = Elem::new(position[first.idx()]);
    let class_of: Vec<Elem> = s
        .elements()
        .map(|x| {
            if inside[x.idx()] {
                zero
            } else {
                Elem::new(position[x.idx()])
            }
        })
        .collect();
    let names = s.names().map(|names| {
        representatives
            .iter()
            .map(|x| names[x.idx()].clone())
            .collect()
    });
    let quotient = Semigroup::from_fn(representatives.len(), names, |i, j| {
        class_of[s.mul(representatives[i], representatives[j]).idx()].idx()
    })?;
    Ok(ReesQuotient {
        semigroup: quotient,
        class_of,
        zero,
    })
}
