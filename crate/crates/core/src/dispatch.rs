//! Solver selection from the structural classification.
//!
//! The automatic policy tries, in order: group, Clifford, ideal extension of
//! a Clifford semigroup by a nilpotent one, the builtin `T(2)`, commutative
//! exponent search, and finally the closure oracle.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Serialize, Serializer};

use crate::builtin::Builtin;
use crate::error::{Error, Result};
use crate::oracle::{closure_oracle_with, OracleConfig};
use crate::semigroup::Semigroup;
use crate::solvers::clifford::clifford_smp;
use crate::solvers::commutative::{commutative_smp, verify_exponent_witness, ExponentWitness};
use crate::solvers::group::group_smp;
use crate::solvers::nilpotent::ideal_extension_smp;
use crate::solvers::t2::t2_smp;
use crate::structure::{
    classify, clifford_decompose, nilpotency_degree, rees_quotient, ClassificationReport,
};
use crate::tuple::{SmpInstance, Witness};

/// Largest `|S|^n` for which cross-checking is on by default.
pub const CROSS_CHECK_LIMIT: f64 = 1e6;

/// State cap for a requested cross-check.
pub const CROSS_CHECK_CAP: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Oracle,
    Group,
    Clifford,
    NilpotentExtension,
    CommutativeSearch,
    T2,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::Oracle,
        Method::Group,
        Method::Clifford,
        Method::NilpotentExtension,
        Method::CommutativeSearch,
        Method::T2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::Group => "group",
            Method::Clifford => "clifford",
            Method::NilpotentExtension => "nilpotent-extension",
            Method::CommutativeSearch => "commutative-search",
            Method::T2 => "t2",
        }
    }

    /// Whether the method runs in polynomial time for a fixed semigroup.
    pub fn is_polynomial(self) -> bool {
        matches!(
            self,
            Method::Group | Method::Clifford | Method::NilpotentExtension | Method::T2
        )
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Method {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        Ok(match text {
            "oracle" => Method::Oracle,
            "group" => Method::Group,
            "clifford" => Method::Clifford,
            "nilpotent" | "nilpotent-extension" => Method::NilpotentExtension,
            "commutative" | "commutative-search" => Method::CommutativeSearch,
            "t2" => Method::T2,
            _ => return Err(Error::Parse(format!("unknown method {text:?}"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum SolveWitness {
    Word(Witness),
    Exponents(ExponentWitness),
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub answer: bool,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<SolveWitness>,
    pub classification: ClassificationReport,
    /// Oracle answer when a cross-check ran; it always equals `answer`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross_checked: Option<bool>,
    /// Seconds per phase.
    pub timings: BTreeMap<&'static str, f64>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SolveOptions {
    /// Forces a method; `None` selects automatically.
    pub method: Option<Method>,
    /// `None` cross-checks exactly when `|S|^n <= 10^6`.
    pub cross_check: Option<bool>,
}

/// Why `method` cannot run on `s`, if it cannot.
pub fn inapplicable(
    method: Method,
    s: &Semigroup,
    report: &ClassificationReport,
) -> Option<&'static str> {
    match method {
        Method::Oracle => None,
        Method::Group => (!report.is_group).then_some("semigroup is not a group"),
        Method::Clifford => {
            (!report.is_clifford).then_some("semigroup is not a Clifford semigroup")
        }
        Method::NilpotentExtension => (!report.cond1).then_some(
            "semigroup is not an ideal extension of a Clifford semigroup by a nilpotent semigroup",
        ),
        Method::T2 => (s.origin() != Some(&Builtin::Transformation(2)))
            .then_some("method applies to the builtin T(2) only"),
        Method::CommutativeSearch => {
            (!report.is_commutative).then_some("semigroup is not commutative")
        }
    }
}

/// The method the automatic policy picks.
pub fn select_method(s: &Semigroup, report: &ClassificationReport) -> Method {
    [
        Method::Group,
        Method::Clifford,
        Method::NilpotentExtension,
        Method::T2,
        Method::CommutativeSearch,
    ]
    .into_iter()
    .find(|&m| inapplicable(m, s, report).is_none())
    .unwrap_or(Method::Oracle)
}

/// Runs `method` (assumed applicable) and returns its answer and witness.
fn run(method: Method, inst: &SmpInstance) -> Result<(bool, Option<SolveWitness>)> {
    let s = inst.semigroup();
    Ok(match method {
        Method::Oracle => {
            let out = closure_oracle_with(
                inst,
                OracleConfig {
                    cap: None,
                    stop_at_target: true,
                },
            )?;
            (out.member, out.witness.map(SolveWitness::Word))
        }
        Method::Group => {
            let out = group_smp(inst)?;
            (out.member, out.witness.map(SolveWitness::Word))
        }
        Method::Clifford => (clifford_smp(inst, &clifford_decompose(s)?)?, None),
        Method::NilpotentExtension => {
            let ideal = crate::structure::ideal_of_idempotents(s);
            let quotient = rees_quotient(s, &ideal)?;
            let d = nilpotency_degree(&quotient.semigroup).ok_or(Error::NotNilpotent {
                d: quotient.semigroup.order(),
            })?;
            let answer = ideal_extension_smp(inst, &ideal, d, |sub| {
                clifford_smp(sub, &clifford_decompose(sub.semigroup())?)
            })?;
            (answer, None)
        }
        Method::T2 => (t2_smp(inst)?, None),
        Method::CommutativeSearch => {
            let out = commutative_smp(inst)?;
            (out.member, out.witness.map(SolveWitness::Exponents))
        }
    })
}

fn witness_verifies(inst: &SmpInstance, w: &SolveWitness) -> Result<bool> {
    match w {
        SolveWitness::Word(word) => Ok(inst.verifies(word)),
        SolveWitness::Exponents(e) => verify_exponent_witness(inst, e),
    }
}

/// Decides the instance with the selected or requested method.
pub fn solve_auto(inst: &SmpInstance, options: SolveOptions) -> Result<SolveReport> {
    let s = inst.semigroup();
    let mut timings = BTreeMap::new();

    let start = Instant::now();
    let classification = classify(s);
    timings.insert("classify", start.elapsed().as_secs_f64());

    let method = match options.method {
        None => select_method(s, &classification),
        Some(m) => {
            if let Some(reason) = inapplicable(m, s, &classification) {
                return Err(Error::MethodNotApplicable {
                    method: m.name().into(),
                    reason: reason.into(),
                });
            }
            m
        }
    };

    let start = Instant::now();
    let (answer, witness) = run(method, inst)?;
    timings.insert("solve", start.elapsed().as_secs_f64());

    if let Some(w) = &witness {
        if !answer || !witness_verifies(inst, w)? {
            return Err(Error::InvalidWitness(format!(
                "{method} produced a word that does not evaluate to the target"
            )));
        }
    }

    let small =
        (s.order() as f64).powi(inst.n().min(i32::MAX as usize) as i32) <= CROSS_CHECK_LIMIT;
    let mut cross_checked = None;
    if options.cross_check.unwrap_or(small) {
        let start = Instant::now();
        let oracle = if method == Method::Oracle {
            answer
        } else {
            closure_oracle_with(
                inst,
                OracleConfig {
                    cap: Some(CROSS_CHECK_CAP),
                    stop_at_target: true,
                },
            )?
            .member
        };
        timings.insert("cross_check", start.elapsed().as_secs_f64());
        if oracle != answer {
            return Err(Error::CrossCheckMismatch {
                method: method.name().into(),
                solver: answer,
                oracle,
            });
        }
        cross_checked = Some(oracle);
    }

    Ok(SolveReport {
        answer,
        method,
        witness,
        classification,
        cross_checked,
        timings,
    })
}
