#![allow(dead_code)]

use std::collections::BTreeSet;

use aldlf::afw::{Model, Move, PosBool};
use aldlf::frontend::{regex_to_automaton, LtlfFormula, PathExpression};
use aldlf::nfw::{AnnotationLetter, SemiElem, SemiPath, StrategyLetter};
use aldlf::semantics::Trace;
use aldlf::syntax::{formula_size, to_nnf, Formula, Interpretation, PathAutomaton, PropFormula, Transition, TransitionLabel};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Gen {
    pub rng: ChaCha8Rng,
    atoms: Vec<String>,
}

impl Gen {
    pub fn new(seed: u64, atoms: &[&str]) -> Self {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            atoms: atoms.iter().map(|a| a.to_string()).collect(),
        }
    }

    fn atom(&mut self) -> String {
        self.atoms.choose(&mut self.rng).unwrap().clone()
    }

    pub fn prop(&mut self) -> PropFormula {
        match self.rng.gen_range(0..10) {
            0..=4 => PropFormula::atom(self.atom()),
            5..=6 => PropFormula::True,
            7 => PropFormula::not(PropFormula::atom(self.atom())),
            8 => PropFormula::and(PropFormula::atom(self.atom()), PropFormula::atom(self.atom())),
            _ => PropFormula::or(PropFormula::atom(self.atom()), PropFormula::not(PropFormula::atom(self.atom()))),
        }
    }

    /// An arbitrary formula; negations may sit anywhere.
    pub fn formula(&mut self, depth: usize) -> Formula {
        let choice = if depth == 0 { self.rng.gen_range(0..3) } else { self.rng.gen_range(0..11) };
        match choice {
            0 | 1 => Formula::atom(self.atom()),
            2 => Formula::not(Formula::atom(self.atom())),
            3 => Formula::not(self.formula(depth - 1)),
            4 | 5 => Formula::and(self.formula(depth - 1), self.formula(depth - 1)),
            6 => Formula::or(self.formula(depth - 1), self.formula(depth - 1)),
            7 | 8 => Formula::diamond(self.automaton(depth - 1, 4), self.formula(depth - 1)),
            _ => Formula::boxed(self.automaton(depth - 1, 4), self.formula(depth - 1)),
        }
    }

    pub fn label(&mut self, depth: usize) -> TransitionLabel {
        match self.rng.gen_range(0..10) {
            0..=4 => TransitionLabel::Future(self.prop()),
            5..=6 => TransitionLabel::Past(self.prop()),
            _ => {
                let psi = if depth > 0 && self.rng.gen_bool(0.3) {
                    self.formula(depth - 1)
                } else {
                    self.formula(0)
                };
                TransitionLabel::Test(psi)
            }
        }
    }

    /// A valid path automaton with at most `max_states` states.
    pub fn automaton(&mut self, depth: usize, max_states: usize) -> PathAutomaton {
        let n = self.rng.gen_range(1..=max_states);
        let states: Vec<String> = (0..n).map(|i| format!("r{i}")).collect();
        let mut transitions = Vec::new();
        let extra = self.rng.gen_range(0..=2);
        for _ in 0..n.max(1) + extra {
            let from = self.rng.gen_range(0..n);
            let to = self.rng.gen_range(0..n);
            let label = self.label(depth);
            transitions.push(Transition::new(from, label, to));
        }
        for s in 0..n {
            if !transitions.iter().any(|t| t.from == s || t.to == s) {
                let other = self.rng.gen_range(0..n);
                let label = self.label(depth);
                transitions.push(Transition::new(other, label, s));
            }
        }
        let start = self.rng.gen_range(0..n);
        let accepting: Vec<usize> = (0..n).filter(|_| self.rng.gen_bool(0.5)).collect();
        PathAutomaton::new(states, transitions, start, accepting).unwrap()
    }

    /// NNF formulas with at most `max_size` size, at least `count` of them.
    pub fn nnf_population(&mut self, count: usize, max_size: usize) -> Vec<Formula> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        while out.len() < count {
            let depth = self.rng.gen_range(1..=3);
            let f = to_nnf(&self.formula(depth));
            if formula_size(&f) <= max_size && seen.insert(f.clone()) {
                out.push(f);
            }
        }
        out
    }
}

/// Every nonempty trace up to `max_len` over the given atoms.
pub fn all_traces(atoms: &[String], max_len: usize) -> Vec<Trace> {
    let letters: Vec<Interpretation> = (0u32..1 << atoms.len())
        .map(|mask| {
            atoms
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, a)| a.clone())
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Interpretation>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for prefix in &layer {
            for l in &letters {
                let mut w = prefix.clone();
                w.push(l.clone());
                out.push(Trace::new(w.clone()).unwrap());
                next.push(w);
            }
        }
        layer = next;
    }
    out
}

pub fn atoms_of(f: &Formula) -> Vec<String> {
    f.atoms().into_iter().collect()
}

impl Gen {
    pub fn ltlf(&mut self, depth: usize) -> LtlfFormula {
        let choice = if depth == 0 { self.rng.gen_range(0..3) } else { self.rng.gen_range(0..10) };
        match choice {
            0 | 1 => LtlfFormula::atom(self.atom()),
            2 => {
                if self.rng.gen_bool(0.5) {
                    LtlfFormula::True
                } else {
                    LtlfFormula::False
                }
            }
            3 => LtlfFormula::not(self.ltlf(depth - 1)),
            4 => LtlfFormula::and(self.ltlf(depth - 1), self.ltlf(depth - 1)),
            5 => LtlfFormula::or(self.ltlf(depth - 1), self.ltlf(depth - 1)),
            6 | 7 => LtlfFormula::next(self.ltlf(depth - 1)),
            _ => LtlfFormula::until(self.ltlf(depth - 1), self.ltlf(depth - 1)),
        }
    }

    /// Path expressions biased towards nested and nullable stars.
    pub fn path_expression(&mut self, depth: usize) -> PathExpression {
        let choice = if depth == 0 { self.rng.gen_range(0..4) } else { self.rng.gen_range(0..9) };
        match choice {
            0 => PathExpression::Future(self.prop()),
            1 => PathExpression::Past(self.prop()),
            2 => PathExpression::Epsilon,
            3 => PathExpression::Test(self.formula(0)),
            4 => PathExpression::concat(self.path_expression(depth - 1), self.path_expression(depth - 1)),
            5 => PathExpression::union(self.path_expression(depth - 1), self.path_expression(depth - 1)),
            _ => PathExpression::star(self.path_expression(depth - 1)),
        }
    }

    /// Formulas the parser can produce: propositional leaves are atoms or
    /// constants and automata come from path expressions.
    pub fn parseable(&mut self, depth: usize) -> Formula {
        let choice = if depth == 0 { self.rng.gen_range(0..3) } else { self.rng.gen_range(0..9) };
        match choice {
            0 | 1 => Formula::atom(self.atom()),
            2 => {
                if self.rng.gen_bool(0.5) {
                    Formula::tt()
                } else {
                    Formula::ff()
                }
            }
            3 => Formula::not(self.parseable(depth - 1)),
            4 => Formula::and(self.parseable(depth - 1), self.parseable(depth - 1)),
            5 => Formula::or(self.parseable(depth - 1), self.parseable(depth - 1)),
            6 => {
                let e = self.parseable_path(depth - 1);
                Formula::diamond(regex_to_automaton(&e), self.parseable(depth - 1))
            }
            7 => {
                let e = self.parseable_path(depth - 1);
                Formula::boxed(regex_to_automaton(&e), self.parseable(depth - 1))
            }
            _ => {
                let a = self.automaton(0, 3);
                Formula::diamond(a, self.parseable(depth - 1))
            }
        }
    }

    fn parseable_path(&mut self, depth: usize) -> PathExpression {
        match self.rng.gen_range(0..7) {
            0 | 1 => PathExpression::Future(self.prop()),
            2 => PathExpression::Past(self.prop()),
            3 => PathExpression::Test(self.parseable(depth.saturating_sub(1))),
            4 => PathExpression::concat(self.parseable_path(depth / 2), self.parseable_path(depth / 2)),
            5 => PathExpression::union(self.parseable_path(depth / 2), PathExpression::Epsilon),
            _ => PathExpression::star(self.parseable_path(depth / 2)),
        }
    }

    pub fn posbool(&mut self, depth: usize, states: usize) -> PosBool {
        let choice = if depth == 0 { self.rng.gen_range(0..4) } else { self.rng.gen_range(0..7) };
        match choice {
            0 => PosBool::True,
            1 => PosBool::False,
            2 | 3 => PosBool::atom(self.rng.gen_range(0..states), self.rng.gen_range(-1..=1)),
            4 | 5 => PosBool::and(self.posbool(depth - 1, states), self.posbool(depth - 1, states)),
            _ => PosBool::or(self.posbool(depth - 1, states), self.posbool(depth - 1, states)),
        }
    }

    pub fn model(&mut self, states: usize) -> Model {
        let mut m = Model::new();
        for q in 0..states {
            for d in -1..=1 {
                if self.rng.gen_bool(0.3) {
                    m.insert(Move::new(q, d));
                }
            }
        }
        m
    }

    /// A strategy word over `len` positions and `states` states whose
    /// directions respect the word boundaries.
    pub fn strategy_word(&mut self, len: usize, states: usize, density: f64) -> Vec<StrategyLetter> {
        (0..len)
            .map(|u| {
                let mut letter = StrategyLetter::new();
                for q in 0..states {
                    for d in -1i8..=1 {
                        if (d == -1 && u == 0) || (d == 1 && u + 1 == len) {
                            continue;
                        }
                        for q2 in 0..states {
                            if self.rng.gen_bool(density) {
                                letter.insert((q, d, q2));
                            }
                        }
                    }
                }
                letter
            })
            .collect()
    }
}

/// Clean elements at `(u, q)` on `(gamma, eta)`: the configuration itself and
/// every flag-0 cycle from `q` that avoids accepting states.
pub fn clean_elements(
    eta: &[AnnotationLetter],
    accepting: &BTreeSet<usize>,
    u: usize,
    q: usize,
) -> Vec<SemiElem> {
    let mut out = Vec::new();
    if !accepting.contains(&q) {
        out.push(SemiElem::Plain { index: u, state: q });
        for &(from, flag, to) in &eta[u] {
            if from == q && flag == 0 && !accepting.contains(&to) {
                out.push(SemiElem::Cycle { index: u, from, flag, to });
            }
        }
    }
    out
}

pub fn clean_successors(
    gamma: &[StrategyLetter],
    eta: &[AnnotationLetter],
    accepting: &BTreeSet<usize>,
    e: &SemiElem,
) -> Vec<SemiElem> {
    let j = e.index();
    let mut out = Vec::new();
    for &(q, d, q2) in &gamma[j] {
        if q == e.exit() {
            let u = (j as isize + d as isize) as usize;
            out.extend(clean_elements(eta, accepting, u, q2));
        }
    }
    out
}

/// Whether some clean `(j, q)`-semi-path of exactly `n` elements exists.
pub fn exists_semipath(
    gamma: &[StrategyLetter],
    eta: &[AnnotationLetter],
    accepting: &BTreeSet<usize>,
    (j, q): (usize, usize),
    n: usize,
) -> bool {
    fn extend(
        gamma: &[StrategyLetter],
        eta: &[AnnotationLetter],
        accepting: &BTreeSet<usize>,
        target: (usize, usize),
        path: &mut Vec<SemiElem>,
        n: usize,
    ) -> bool {
        let last = *path.last().unwrap();
        if path.len() == n {
            return SemiPath(path.clone()).endpoints() == Some(target);
        }
        for next in clean_successors(gamma, eta, accepting, &last) {
            path.push(next);
            if extend(gamma, eta, accepting, target, path, n) {
                return true;
            }
            path.pop();
        }
        false
    }
    clean_elements(eta, accepting, j, q)
        .into_iter()
        .any(|first| extend(gamma, eta, accepting, (j, q), &mut vec![first], n))
}

/// A random clean closed semi-path of length in `2..=max_len`, if one turns
/// up within a few random walks.
pub fn random_semipath(
    rng: &mut ChaCha8Rng,
    gamma: &[StrategyLetter],
    eta: &[AnnotationLetter],
    accepting: &BTreeSet<usize>,
    max_len: usize,
) -> Option<SemiPath> {
    for _ in 0..20 {
        let j = rng.gen_range(0..gamma.len());
        let q = rng.gen_range(0..gamma.iter().flatten().map(|t| t.0.max(t.2) + 1).max().unwrap_or(1));
        let firsts = clean_elements(eta, accepting, j, q);
        let Some(&first) = firsts.choose(rng) else { continue };
        let mut path = vec![first];
        let mut closed = Vec::new();
        while path.len() < max_len {
            let next = clean_successors(gamma, eta, accepting, path.last().unwrap());
            let Some(&e) = next.choose(rng) else { break };
            path.push(e);
            if e.index() == j && e.exit() == q {
                closed.push(path.len());
            }
        }
        if let Some(&n) = closed.choose(rng) {
            return Some(SemiPath(path[..n].to_vec()));
        }
    }
    None
}
