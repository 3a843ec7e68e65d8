//! SMP over `T(3)` as intersection non-emptiness of 3-state automata.
//!
//! For coordinate `i` and start point `j ∈ {0, 1, ∞}`, the automaton
//! `F_i^j` tracks the image of `j` under the product read so far and accepts
//! in `j^b(i)`. A nonempty word is accepted by all `3n` automata iff the
//! corresponding product equals `b`.

use std::collections::{BTreeMap, VecDeque};

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::builtin::Builtin;
use crate::error::{Error, Result};
use crate::tuple::SmpInstance;

/// A complete deterministic automaton.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DfaJson", into = "DfaJson")]
pub struct Dfa {
    states: Vec<String>,
    alphabet: Vec<String>,
    initial: usize,
    accepting: Vec<bool>,
    /// `delta[state][symbol]`.
    delta: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct DfaJson {
    states: Vec<String>,
    alphabet: Vec<String>,
    initial: String,
    accepting: Vec<String>,
    transitions: BTreeMap<String, BTreeMap<String, String>>,
}

impl TryFrom<DfaJson> for Dfa {
    type Error = Error;

    fn try_from(raw: DfaJson) -> Result<Self> {
        let index: FxHashMap<&str, usize> = raw
            .states
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let state = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::BadAutomaton(format!("unknown state {name:?}")))
        };
        let mut accepting = vec![false; raw.states.len()];
        for a in &raw.accepting {
            accepting[state(a)?] = true;
        }
        let mut delta = Vec::with_capacity(raw.states.len());
        for q in &raw.states {
            let row = raw
                .transitions
                .get(q)
                .ok_or_else(|| Error::BadAutomaton(format!("no transitions from {q:?}")))?;
            let targets = raw
                .alphabet
                .iter()
                .map(|sym| {
                    row.get(sym)
                        .ok_or_else(|| {
                            Error::BadAutomaton(format!("missing transition ({q:?}, {sym:?})"))
                        })
                        .and_then(|t| state(t))
                })
                .collect::<Result<Vec<_>>>()?;
            delta.push(targets);
        }
        Dfa::new(
            raw.states.clone(),
            raw.alphabet,
            state(&raw.initial)?,
            accepting,
            delta,
        )
    }
}

impl From<Dfa> for DfaJson {
    fn from(d: Dfa) -> Self {
        let transitions = d
            .states
            .iter()
            .zip(&d.delta)
            .map(|(q, row)| {
                let row = d
                    .alphabet
                    .iter()
                    .zip(row)
                    .map(|(sym, &t)| (sym.clone(), d.states[t].clone()))
                    .collect();
                (q.clone(), row)
            })
            .collect();
        DfaJson {
            initial: d.states[d.initial].clone(),
            accepting: (0..d.states.len())
                .filter(|&q| d.accepting[q])
                .map(|q| d.states[q].clone())
                .collect(),
            states: d.states,
            alphabet: d.alphabet,
            transitions,
        }
    }
}

impl Dfa {
    pub fn new(
        states: Vec<String>,
        alphabet: Vec<String>,
        initial: usize,
        accepting: Vec<bool>,
        delta: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let q = states.len();
        if q == 0 || initial >= q || accepting.len() != q || delta.len() != q {
            return Err(Error::BadAutomaton("state data is inconsistent".into()));
        }
        if delta
            .iter()
            .any(|row| row.len() != alphabet.len() || row.iter().any(|&t| t >= q))
        {
            return Err(Error::BadAutomaton("transition table is not total".into()));
        }
        Ok(Dfa {
            states,
            alphabet,
            initial,
            accepting,
            delta,
        })
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn step(&self, q: usize, symbol: usize) -> usize {
        self.delta[q][symbol]
    }

    /// Whether the word (symbol indices) is accepted.
    pub fn accepts(&self, word: &[usize]) -> bool {
        self.accepting[word.iter().fold(self.initial, |q, &a| self.delta[q][a])]
    }
}

/// Points of `T(3)` in the order `0, 1, ∞`.
const POINTS: [&str; 3] = ["0", "1", "inf"];

/// The `3n` automata `F_i^j`, ordered by coordinate `i`, then `j ∈ {0, 1,
/// ∞}`, over the alphabet `a1..ak`. The correspondence with SMP requires
/// nonempty words (`min_length = 1`).
pub fn encode_t3_to_automata(inst: &SmpInstance) -> Result<Vec<Dfa>> {
    let s = inst.semigroup();
    if s.origin() != Some(&Builtin::Transformation(3)) {
        return Err(Error::WrongSemigroup("expected builtin T(3)".into()));
    }
    // image of point p under element x, read from its image word
    let image = |x, p: usize| -> usize {
        let word = s.name(x);
        (word.as_bytes()[p] - b'1') as usize
    };
    let states: Vec<String> = POINTS.iter().map(|p| p.to_string()).collect();
    let alphabet: Vec<String> = (1..=inst.k()).map(|l| format!("a{l}")).collect();
    let mut out = Vec::with_capacity(3 * inst.n());
    for i in 0..inst.n() {
        let delta: Vec<Vec<usize>> = (0..3)
            .map(|p| inst.generators().iter().map(|a| image(a[i], p)).collect())
            .collect();
        for j in 0..3 {
            let mut accepting = vec![false; 3];
            accepting[image(inst.target()[i], j)] = true;
            out.push(Dfa::new(
                states.clone(),
                alphabet.clone(),
                j,
                accepting,
                delta.clone(),
            )?);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionOutcome {
    pub nonempty: bool,
    /// A shortest accepted word of length at least `min_length`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word: Option<Vec<String>>,
}

/// Breadth-first search of the product automaton for a word of length at
/// least `min_length` (0 or 1) accepted by every automaton.
pub fn dfa_intersection_nonempty(dfas: &[Dfa], min_length: usize) -> Result<IntersectionOutcome> {
    let first = dfas.first().ok_or(Error::NoAutomata)?;
    if min_length > 1 {
        return Err(Error::Parse("min_length must be 0 or 1".into()));
    }
    if dfas.iter().any(|d| d.alphabet != first.alphabet) {
        return Err(Error::AlphabetMismatch);
    }
    let accepting = |state: &[usize]| dfas.iter().zip(state).all(|(d, &q)| d.accepting[q]);
    let spell = |word: Vec<usize>| {
        word.into_iter()
            .map(|a| first.alphabet[a].clone())
            .collect()
    };

    let start: Vec<usize> = dfas.iter().map(|d| d.initial).collect();
    if min_length == 0 && accepting(&start) {
        return Ok(IntersectionOutcome {
            nonempty: true,
            word: Some(Vec::new()),
        });
    }
    // parent links: state -> (previous state, symbol)
    let mut parent: FxHashMap<Vec<usize>, Option<(Vec<usize>, usize)>> = FxHashMap::default();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([start]);
    while let Some(state) = queue.pop_front() {
        for a in 0..first.alphabet.len() {
            let next: Vec<usize> = dfas
                .iter()
                .zip(&state)
                .map(|(d, &q)| d.delta[q][a])
                .collect();
            if accepting(&next) {
                let mut word = vec![a];
                let mut cur = state.clone();
                while let Some(Some((prev, sym))) = parent.get(&cur) {
                    word.push(*sym);
                    cur = prev.clone();
                }
                word.reverse();
                return Ok(IntersectionOutcome {
                    nonempty: true,
                    word: Some(spell(word)),
                });
            }
            if !parent.contains_key(&next) {
                parent.insert(next.clone(), Some((state.clone(), a)));
                queue.push_back(next);
            }
        }
    }
    Ok(IntersectionOutcome {
        nonempty: false,
        word: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::builtin;
    use crate::tuple::Tup;
    use std::sync::Arc;

    fn single(accepting: bool) -> Dfa {
        Dfa::new(
            vec!["q".into()],
            vec!["x".into()],
            0,
            vec![accepting],
            vec![vec![0]],
        )
        .unwrap()
    }

    #[test]
    fn identity_instance_accepts_one_letter() {
        let s = Arc::new(builtin("T(3)").unwrap());
        let id = Tup::new(vec![s.elem_by_name("123").unwrap()]);
        let inst = SmpInstance::new(s, vec![id.clone()], id).unwrap();
        let dfas = encode_t3_to_automata(&inst).unwrap();
        assert_eq!(dfas.len(), 3);
        for (j, d) in dfas.iter().enumerate() {
            assert_eq!(d.initial(), j);
            assert!(d.is_accepting(j));
            assert!(d.accepts(&[0]));
        }
        let out = dfa_intersection_nonempty(&dfas, 1).unwrap();
        assert_eq!(out.word, Some(vec!["a1".to_string()]));
    }

    #[test]
    fn trivial_intersections() {
        let out = dfa_intersection_nonempty(&[single(true), single(true)], 0).unwrap();
        assert_eq!(out.word, Some(vec![]));
        assert!(
            !dfa_intersection_nonempty(&[single(true), single(false)], 0)
                .unwrap()
                .nonempty
        );
        assert!(matches!(
            dfa_intersection_nonempty(&[], 0),
            Err(Error::NoAutomata)
        ));
        let other = Dfa::new(
            vec!["q".into()],
            vec!["y".into()],
            0,
            vec![true],
            vec![vec![0]],
        )
        .unwrap();
        assert!(matches!(
            dfa_intersection_nonempty(&[single(true), other], 1),
            Err(Error::AlphabetMismatch)
        ));
    }

    #[test]
    fn json_round_trip() {
        let d = single(true);
        let json = serde_json::to_value(&d).unwrap();
        assert_eq!(json["transitions"]["q"]["x"], "q");
        let back: Dfa = serde_json::from_value(json).unwrap();
        assert_eq!(back, d);
        let bad = serde_json::json!({
            "states": ["q"], "alphabet": ["x"], "initial": "q", "accepting": [],
            "transitions": {"q": {}}
        });
        assert!(serde_json::from_value::<Dfa>(bad).is_err());
    }
}
