//! File formats: `.sgp` Cayley tables and JSON SMP instances.
//!
//! ```text
//! semigroup 3
//! 1 1 1
//! 1 1 2
//! 1 2 3
//! names 0 a 1
//! ```
//!
//! An instance file names its semigroup as `builtin:NAME` or a path to a
//! `.sgp` file (relative to the instance file), and lists tuples as arrays
//! of 1-based indices or element names:
//!
//! ```json
//! {"semigroup": "builtin:T(3)", "n": 2, "generators": [["231", 1]], "target": ["312", "123"]}
//! ```

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::builtin::{Builtin, BUILTIN_PREFIX};
use crate::error::{Error, Result};
use crate::semigroup::{Elem, Semigroup};
use crate::tuple::{SmpInstance, Tup};

/// Parses the `.sgp` text format.
pub fn parse_sgp(text: &str) -> Result<Semigroup> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty .sgp file".into()))?;
    let order = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["semigroup", m] => m
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad order {m:?}")))?,
        _ => return Err(Error::Parse("first line must be `semigroup m`".into())),
    };
    let mut rows = Vec::with_capacity(order);
    for r in 0..order {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("missing table row {}", r + 1)))?;
        let row = line
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::Parse(format!("bad entry {t:?} in row {}", r + 1)))
            })
            .collect::<Result<Vec<usize>>>()?;
        rows.push(row);
    }
    let names = match lines.next() {
        None => None,
        Some(line) => {
            let mut parts = line.split_whitespace();
            if parts.next() != Some("names") {
                return Err(Error::Parse(format!("unexpected line {line:?}")));
            }
            Some(parts.map(str::to_string).collect())
        }
    };
    if let Some(extra) = lines.next() {
        return Err(Error::Parse(format!("unexpected line {extra:?}")));
    }
    Semigroup::from_table(&rows, names)
}

pub fn write_sgp(s: &Semigroup) -> String {
    let mut out = format!("semigroup {}\n", s.order());
    for row in s.to_rows() {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    if let Some(names) = s.names() {
        out.push_str("names ");
        out.push_str(&names.join(" "));
        out.push('\n');
    }
    out
}

/// Resolves `builtin:NAME` or a `.sgp` path (relative to `base`).
pub fn load_semigroup(reference: &str, base: Option<&Path>) -> Result<Semigroup> {
    let reference = reference.trim();
    if let Some(name) = reference.strip_prefix(BUILTIN_PREFIX) {
        return name.parse::<Builtin>()?.build();
    }
    let path = match base {
        Some(dir) if Path::new(reference).is_relative() => dir.join(reference),
        _ => PathBuf::from(reference),
    };
    match fs::read_to_string(&path) {
        Ok(text) => parse_sgp(&text),
        Err(_) if !path.exists() && reference.parse::<Builtin>().is_ok() => {
            reference.parse::<Builtin>()?.build()
        }
        Err(e) => Err(Error::Parse(format!(
            "cannot read semigroup {}: {e}",
            path.display()
        ))),
    }
}

/// A tuple entry: 1-based index or element name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemRef {
    Index(usize),
    Name(String),
}

impl ElemRef {
    pub fn resolve(&self, s: &Semigroup) -> Result<Elem> {
        match self {
            ElemRef::Index(i) => Elem::from_one_based(*i)
                .filter(|x| x.idx() < s.order())
                .ok_or(Error::ElementOutOfRange {
                    index: *i,
                    order: s.order(),
                }),
            ElemRef::Name(name) => s
                .elem_by_name(name)
                .ok_or_else(|| Error::UnknownElement(name.clone())),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceFile {
    pub semigroup: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub generators: Vec<Vec<ElemRef>>,
    pub target: Vec<ElemRef>,
}

impl InstanceFile {
    /// Resolves the semigroup (relative to `base`) and all tuples.
    pub fn resolve(&self, base: Option<&Path>) -> Result<SmpInstance> {
        let s = Arc::new(load_semigroup(&self.semigroup, base)?);
        let tuple =
            |refs: &[ElemRef]| -> Result<Tup> { refs.iter().map(|r| r.resolve(&s)).collect() };
        let target = tuple(&self.target)?;
        if let Some(n) = self.n {
            if n != target.len() {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: target.len(),
                });
            }
        }
        let gens = self
            .generators
            .iter()
            .map(|g| tuple(g))
            .collect::<Result<Vec<_>>>()?;
        SmpInstance::new(s, gens, target)
    }

    /// Describes `inst`, with tuples written by element name when the
    /// semigroup has names.
    pub fn describe(inst: &SmpInstance, semigroup: String) -> Self {
        let s = inst.semigroup();
        let refs = |t: &Tup| -> Vec<ElemRef> {
            t.iter()
                .map(|&x| match s.names() {
                    Some(_) => ElemRef::Name(s.name(x)),
                    None => ElemRef::Index(x.one_based()),
                })
                .collect()
        };
        InstanceFile {
            semigroup,
            n: Some(inst.n()),
            generators: inst.generators().iter().map(refs).collect(),
            target: refs(inst.target()),
        }
    }
}

/// The reference to write for a semigroup: `builtin:NAME` when it came
/// from a builtin, otherwise `fallback`.
pub fn semigroup_reference(s: &Semigroup, fallback: &str) -> String {
    match s.origin() {
        Some(b) => format!("{BUILTIN_PREFIX}{b}"),
        None => fallback.to_string(),
    }
}

/// Reads an instance file; a relative semigroup path is resolved against
/// the file's directory.
pub fn load_instance(path: &Path) -> Result<SmpInstance> {
    let text = fs::read_to_string(path)?;
    let file: InstanceFile = serde_json::from_str(&text)?;
    file.resolve(path.parent())
}
