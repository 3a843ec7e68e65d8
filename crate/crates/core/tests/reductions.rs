mod common;

use std::sync::Arc;

use rand::Rng;

use smpkit::catalog;
use smpkit::oracle::closure_oracle;
use smpkit::reductions::{
    composition_oracle, dfa_intersection_nonempty, encode_exact_cover, encode_kozen_to_t3,
    encode_t3_to_automata, exact_cover_solution, forward_word, CompositionInstance, Dfa,
    ExactCoverInstance,
};
use smpkit::{builtin, Tup};

use common::{oracle, rng};

const CAP: usize = 1_000_000;

fn random_map<R: Rng>(n: usize, rng: &mut R) -> Vec<usize> {
    (0..n).map(|_| rng.gen_range(0..n)).collect()
}

#[test]
fn kozen_sizes() {
    let mut rng = rng(21);
    for _ in 0..50 {
        let n = rng.gen_range(1..=4);
        let m = rng.gen_range(0..=3);
        let fs = (0..m).map(|_| random_map(n, &mut rng)).collect();
        let c = CompositionInstance::new(n, random_map(n, &mut rng), fs).unwrap();
        let inst = encode_kozen_to_t3(&c).unwrap();
        assert_eq!(inst.n(), n * n + m * n);
        assert_eq!(inst.k(), m * n * n + m + 1);
    }
}

#[test]
fn kozen_random_equivalence() {
    let mut rng = rng(22);
    let mut decided = 0;
    for _ in 0..20 {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=2);
        let fs: Vec<Vec<usize>> = (0..m).map(|_| random_map(n, &mut rng)).collect();
        let c = CompositionInstance::new(n, random_map(n, &mut rng), fs).unwrap();
        let inst = encode_kozen_to_t3(&c).unwrap();
        match closure_oracle(&inst, Some(CAP)) {
            Ok(out) => {
                assert_eq!(out.member, composition_oracle(&c), "{c:?}");
                decided += 1;
            }
            Err(smpkit::Error::CapExceeded { .. }) => {}
            Err(e) => panic!("{e}"),
        }
    }
    assert!(decided >= 10);
}

#[test]
fn kozen_forward_chains() {
    let mut rng = rng(23);
    for _ in 0..200 {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=3);
        let fs: Vec<Vec<usize>> = (0..m).map(|_| random_map(n, &mut rng)).collect();
        let sequence: Vec<usize> = (0..rng.gen_range(1..=5))
            .map(|_| rng.gen_range(0..m))
            .collect();
        let f = sequence.iter().fold((0..n).collect::<Vec<_>>(), |g, &i| {
            g.iter().map(|&x| fs[i][x]).collect()
        });
        let c = CompositionInstance::new(n, f, fs).unwrap();
        let inst = encode_kozen_to_t3(&c).unwrap();
        assert!(inst.verifies(&forward_word(&c, &sequence)));
    }
}

#[test]
fn exact_cover_solutions_give_words() {
    let mut rng = rng(24);
    let s = Arc::new(builtin("Z2_1").unwrap());
    let (e, a) = (s.elem_by_name("1").unwrap(), s.elem_by_name("a").unwrap());
    for _ in 0..300 {
        let n = rng.gen_range(1..=5);
        let sets = (0..rng.gen_range(1..=5))
            .map(|_| (0..n).filter(|_| rng.gen_bool(0.4)).collect())
            .collect();
        let ec = ExactCoverInstance::new(n, sets).unwrap();
        let inst = encode_exact_cover(&ec, s.clone(), e, a).unwrap();
        let solution = exact_cover_solution(&ec);
        assert_eq!(solution.is_some(), oracle(&inst), "{ec:?}");
        if let Some(chosen) = solution {
            let product = chosen
                .iter()
                .skip(1)
                .fold(inst.generators()[chosen[0]].clone(), |t, &j| {
                    t.mul(&s, &inst.generators()[j])
                });
            assert_eq!(product, *inst.target());
        }
    }
}

#[test]
fn automata_words_are_witnesses() {
    let mut rng = rng(25);
    let s = Arc::new(builtin("T(3)").unwrap());
    for _ in 0..200 {
        let inst = catalog::random_small_instance(&s, 3, 3, &mut rng).unwrap();
        let dfas = encode_t3_to_automata(&inst).unwrap();
        assert_eq!(dfas.len(), 3 * inst.n());
        let out = dfa_intersection_nonempty(&dfas, 1).unwrap();
        assert_eq!(out.nonempty, oracle(&inst));
        if let Some(word) = out.word {
            let letters: Vec<usize> = word
                .iter()
                .map(|w| w[1..].parse::<usize>().unwrap() - 1)
                .collect();
            assert!(!letters.is_empty());
            assert!(dfas.iter().all(|d| d.accepts(&letters)));
            let value = letters
                .iter()
                .skip(1)
                .fold(inst.generators()[letters[0]].clone(), |t, &j| {
                    t.mul(&s, &inst.generators()[j])
                });
            assert_eq!(value, *inst.target());
        }
    }
}

#[test]
fn empty_word_changes_the_answer() {
    // target = identity, generator = constant map: only the empty word works
    let s = Arc::new(builtin("T(3)").unwrap());
    let gen = Tup::new(vec![s.elem_by_name("111").unwrap()]);
    let id = Tup::new(vec![s.elem_by_name("123").unwrap()]);
    let inst = smpkit::SmpInstance::new(s, vec![gen], id).unwrap();
    let dfas = encode_t3_to_automata(&inst).unwrap();
    assert!(dfa_intersection_nonempty(&dfas, 0).unwrap().nonempty);
    assert!(!dfa_intersection_nonempty(&dfas, 1).unwrap().nonempty);
    assert!(!oracle(&inst));
}

#[test]
fn dfa_json_round_trips() {
    let s = Arc::new(builtin("T(3)").unwrap());
    let mut rng = rng(26);
    let inst = catalog::random_instance(&s, 2, 2, &mut rng).unwrap();
    for d in encode_t3_to_automata(&inst).unwrap() {
        let text = serde_json::to_string(&d).unwrap();
        let back: Dfa = serde_json::from_str(&text).unwrap();
        assert_eq!(back, d);
        assert_eq!(back.states(), ["0", "1", "inf"]);
    }
}
