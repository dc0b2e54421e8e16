mod common;

use aldlf::semantics::{eval, find_walk, sat_automaton};
use aldlf::syntax::{Formula, PathAutomaton};
use common::{all_traces, Gen};
use proptest::prelude::*;

fn atoms() -> Vec<String> {
    vec!["p".into(), "q".into()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn walks_exist_exactly_when_automaton_holds(seed in any::<u64>()) {
        let a = Gen::new(seed, &["p", "q"]).automaton(1, 4);
        for t in all_traces(&atoms(), 3) {
            for i in 0..t.len() {
                for j in 0..t.len() {
                    let holds = sat_automaton(&a, &t, i, j).unwrap();
                    let walk = find_walk(&a, &t, i, j).unwrap();
                    prop_assert_eq!(holds, walk.is_some());
                    if let Some(w) = walk {
                        prop_assert!(w.is_valid_for(&a, &t));
                        prop_assert_eq!((w.start, w.end), (i, j));
                    }
                }
            }
        }
    }

    #[test]
    fn accepting_start_holds_in_place(seed in any::<u64>()) {
        let a = Gen::new(seed, &["p", "q"]).automaton(1, 4);
        let rooted: Vec<PathAutomaton> = a.rerootings().filter(|r| r.is_accepting(r.start())).collect();
        for t in all_traces(&atoms(), 2) {
            for r in &rooted {
                for i in 0..t.len() {
                    prop_assert!(sat_automaton(r, &t, i, i).unwrap());
                }
            }
        }
    }

    #[test]
    fn diamond_and_box_are_dual(seed in any::<u64>()) {
        let mut gen = Gen::new(seed, &["p", "q"]);
        let a = gen.automaton(1, 3);
        let f = gen.formula(1);
        let dia = Formula::diamond(a.clone(), f.clone());
        let dia_dual = Formula::not(Formula::boxed(a.clone(), Formula::not(f.clone())));
        let bx = Formula::boxed(a.clone(), f.clone());
        let bx_dual = Formula::not(Formula::diamond(a, Formula::not(f)));
        for t in all_traces(&atoms(), 3) {
            for i in 0..t.len() {
                prop_assert_eq!(eval(&dia, &t, i).unwrap(), eval(&dia_dual, &t, i).unwrap());
                prop_assert_eq!(eval(&bx, &t, i).unwrap(), eval(&bx_dual, &t, i).unwrap());
            }
        }
    }
}
