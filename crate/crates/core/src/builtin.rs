//! Named semigroups: full transformation semigroups, `Z2_1`, null
//! semigroups, cyclic and symmetric groups, chains, and direct products.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::semigroup::{Semigroup, MAX_ORDER};

/// Largest degree accepted for `T(m)`.
pub const MAX_TRANSFORMATION_DEGREE: usize = 4;
/// Largest degree accepted for `symmetric_group(m)`.
pub const MAX_SYMMETRIC_DEGREE: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    /// Full transformation semigroup on `m` letters.
    Transformation(usize),
    /// The 2-element null semigroup with an identity adjoined.
    Z2One,
    /// `q` elements, every product equal to the zero.
    Null(usize),
    CyclicGroup(usize),
    /// `{0, ..., q-1}` under `min`.
    SemilatticeChain(usize),
    SymmetricGroup(usize),
    DirectProduct(Box<Builtin>, Box<Builtin>),
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Transformation(m) => write!(f, "T({m})"),
            Builtin::Z2One => write!(f, "Z2_1"),
            Builtin::Null(q) => write!(f, "null({q})"),
            Builtin::CyclicGroup(q) => write!(f, "cyclic_group({q})"),
            Builtin::SemilatticeChain(q) => write!(f, "semilattice_chain({q})"),
            Builtin::SymmetricGroup(m) => write!(f, "symmetric_group({m})"),
            Builtin::DirectProduct(a, b) => write!(f, "direct_product({a},{b})"),
        }
    }
}

/// Prefix that marks a builtin reference in files and on the command line.
pub const BUILTIN_PREFIX: &str = "builtin:";

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let compact = compact.strip_prefix(BUILTIN_PREFIX).unwrap_or(&compact);
        let (parsed, rest) = parse_builtin(compact)?;
        if !rest.is_empty() {
            return Err(Error::UnknownBuiltin(text.to_string()));
        }
        Ok(parsed)
    }
}

fn parse_builtin(text: &str) -> Result<(Builtin, &str)> {
    if let Some(rest) = text.strip_prefix("Z2_1") {
        return Ok((Builtin::Z2One, rest));
    }
    let open = text
        .find('(')
        .ok_or_else(|| Error::UnknownBuiltin(text.to_string()))?;
    let head = &text[..open];
    let body = &text[open + 1..];
    if head == "direct_product" {
        let (left, rest) = parse_builtin(body)?;
        let rest = rest
            .strip_prefix(',')
            .ok_or_else(|| Error::UnknownBuiltin(text.to_string()))?;
        let (right, rest) = parse_builtin(rest)?;
        let rest = rest
            .strip_prefix(')')
            .ok_or_else(|| Error::UnknownBuiltin(text.to_string()))?;
        return Ok((
            Builtin::DirectProduct(Box::new(left), Box::new(right)),
            rest,
        ));
    }
    let close = body
        .find(')')
        .ok_or_else(|| Error::UnknownBuiltin(text.to_string()))?;
    let param: usize = body[..close].parse().map_err(|_| {
        Error::BuiltinParam(format!("{head}: {:?} is not a number", &body[..close]))
    })?;
    let rest = &body[close + 1..];
    let parsed = match head {
        "T" => Builtin::Transformation(param),
        "null" => Builtin::Null(param),
        "cyclic_group" => Builtin::CyclicGroup(param),
        "semilattice_chain" => Builtin::SemilatticeChain(param),
        "symmetric_group" => Builtin::SymmetricGroup(param),
        _ => return Err(Error::UnknownBuiltin(text.to_string())),
    };
    Ok((parsed, rest))
}

impl Builtin {
    /// Order of the semigroup, or an error for out-of-range parameters.
    pub fn order(&self) -> Result<usize> {
        let checked = |q: usize, what: &str| {
            if q == 0 || q > MAX_ORDER {
                Err(Error::BuiltinParam(format!(
                    "{what} needs 1 <= q <= {MAX_ORDER}, got {q}"
                )))
            } else {
                Ok(q)
            }
        };
        match self {
            Builtin::Transformation(m) => {
                if *m == 0 || *m > MAX_TRANSFORMATION_DEGREE {
                    return Err(Error::BuiltinParam(format!(
                        "T(m) needs 1 <= m <= {MAX_TRANSFORMATION_DEGREE}, got {m}"
                    )));
                }
                Ok(m.pow(*m as u32))
            }
            Builtin::Z2One => Ok(3),
            Builtin::Null(q) => checked(*q, "null"),
            Builtin::CyclicGroup(q) => checked(*q, "cyclic_group"),
            Builtin::SemilatticeChain(q) => checked(*q, "semilattice_chain"),
            Builtin::SymmetricGroup(m) => {
                if *m == 0 || *m > MAX_SYMMETRIC_DEGREE {
                    return Err(Error::BuiltinParam(format!(
                        "symmetric_group(m) needs 1 <= m <= {MAX_SYMMETRIC_DEGREE}, got {m}"
                    )));
                }
                Ok((1..=*m).product())
            }
            Builtin::DirectProduct(a, b) => {
                let order = a.order()? * b.order()?;
                if order > MAX_ORDER {
                    return Err(Error::BuiltinParam(format!(
                        "direct product of order {order} exceeds {MAX_ORDER}"
                    )));
                }
                Ok(order)
            }
        }
    }

    pub fn build(&self) -> Result<Semigroup> {
        self.order()?;
        let s = match self {
            Builtin::Transformation(m) => maps_semigroup(all_maps(*m))?,
            Builtin::SymmetricGroup(m) => {
                let perms = all_maps(*m)
                    .into_iter()
                    .filter(|w| {
                        let mut seen = vec![false; *m];
                        w.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
                    })
                    .collect();
                maps_semigroup(perms)?
            }
            Builtin::Z2One => Semigroup::from_table(
                &[vec![1, 1, 1], vec![1, 1, 2], vec![1, 2, 3]],
                Some(vec!["0".into(), "a".into(), "1".into()]),
            )?,
            Builtin::Null(q) => {
                let names = (0..*q)
                    .map(|i| {
                        if i == 0 {
                            "0".to_string()
                        } else {
                            format!("n{i}")
                        }
                    })
                    .collect();
                Semigroup::from_fn(*q, Some(names), |_, _| 0)?
            }
            Builtin::CyclicGroup(q) => {
                let names = (0..*q).map(|i| i.to_string()).collect();
                Semigroup::from_fn(*q, Some(names), |x, y| (x + y) % q)?
            }
            Builtin::SemilatticeChain(q) => {
                let names = (0..*q).map(|i| i.to_string()).collect();
                Semigroup::from_fn(*q, Some(names), |x, y| x.min(y))?
            }
            Builtin::DirectProduct(a, b) => {
                let left = a.build()?;
                let right = b.build()?;
                let width = right.order();
                let names = left
                    .elements()
                    .flat_map(|x| {
                        let (left, right) = (&left, &right);
                        right
                            .elements()
                            .map(move |y| format!("({},{})", left.name(x), right.name(y)))
                            .collect::<Vec<_>>()
                    })
                    .collect();
                Semigroup::from_fn(left.order() * width, Some(names), |i, j| {
                    let x = left.mul(
                        left.elem(i / width).expect("in range"),
                        left.elem(j / width).expect("in range"),
                    );
                    let y = right.mul(
                        right.elem(i % width).expect("in range"),
                        right.elem(j % width).expect("in range"),
                    );
                    x.idx() * width + y.idx()
                })?
            }
        };
        Ok(s.with_origin(self.clone()))
    }
}

/// Convenience: parse and build in one step.
pub fn builtin(name: &str) -> Result<Semigroup> {
    name.parse::<Builtin>()?.build()
}

/// All maps `[m] -> [m]` as 0-based image words, in lexicographic order.
fn all_maps(m: usize) -> Vec<Vec<usize>> {
    let count = m.pow(m as u32);
    (0..count)
        .map(|mut code| {
            let mut word = vec![0; m];
            for slot in word.iter_mut().rev() {
                *slot = code % m;
                code /= m;
            }
            word
        })
        .collect()
}

/// Image word written with 1-based letters, e.g. `"231"`.
pub fn image_word_name(word: &[usize]) -> String {
    word.iter().map(|x| (x + 1).to_string()).collect()
}

/// Semigroup of the given maps under composition acting on the right:
/// `x^(gh) = (x^g)^h`.
fn maps_semigroup(maps: Vec<Vec<usize>>) -> Result<Semigroup> {
    let position = |w: &[usize]| maps.iter().position(|m| m.as_slice() == w);
    let names = maps.iter().map(|w| image_word_name(w)).collect();
    let mut products = vec![0usize; maps.len() * maps.len()];
    for (i, g) in maps.iter().enumerate() {
        for (j, h) in maps.iter().enumerate() {
            let gh: Vec<usize> = g.iter().map(|&x| h[x]).collect();
            products[i * maps.len() + j] = position(&gh).expect("closed under composition");
        }
    }
    Semigroup::from_fn(maps.len(), Some(names), |i, j| products[i * maps.len() + j])
}
