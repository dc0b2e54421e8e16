use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use super::certificate::{annotation_closure, left_annotation, origin, AnnotationLetter, Certificate, StrategyLetter};
use crate::afw::{compile_formula, minimal_models, Afw, Boundary, Model, PosBool};
use crate::semantics::{eval_trace, Trace};
use crate::syntax::{to_nnf, Formula, Interpretation};

/// Bookkeeping part of an NFW state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Control {
    /// Nothing read yet.
    Initial,
    /// The last letter was read as the final one and everything checked out.
    Ready,
    /// Letters read so far are consistent; more input is required.
    PendingRight,
    Rejected,
}

/// What is remembered about the previous position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Memory {
    pub letter: Interpretation,
    pub first: bool,
    pub gamma: StrategyLetter,
    /// Returns to the previous position that stay at or left of it.
    pub eta: AnnotationLetter,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NfwState {
    pub control: Control,
    pub memory: Option<Memory>,
}

impl NfwState {
    pub fn initial() -> Self {
        NfwState {
            control: Control::Initial,
            memory: None,
        }
    }

    pub fn is_accepting(&self) -> bool {
        self.control == Control::Ready
    }

    /// Number of triples stored in the state.
    pub fn triple_count(&self) -> usize {
        self.memory.as_ref().map_or(0, |m| m.gamma.len() + m.eta.len())
    }
}

struct Step<'a> {
    a: &'a Afw,
    letter: &'a Interpretation,
    at: Boundary,
    cache: HashMap<usize, (PosBool, Vec<Model>)>,
}

impl Step<'_> {
    fn delta(&mut self, q: usize) -> &(PosBool, Vec<Model>) {
        let (a, letter, at) = (self.a, self.letter, self.at);
        self.cache.entry(q).or_insert_with(|| {
            let theta = a.delta(q, letter, at);
            let models = minimal_models(&theta)
                .into_iter()
                .filter(|m| m.iter().all(|mv| !(mv.dir == -1 && at.first || mv.dir == 1 && at.last)))
                .collect();
            (theta, models)
        })
    }

    fn is_true(&mut self, q: usize) -> bool {
        self.delta(q).0 == PosBool::True
    }

    /// Every way of giving each state in `pending` (and each state entered
    /// by a zero move) one minimal model.
    fn assignments(&mut self, pending: Vec<usize>) -> Vec<BTreeMap<usize, Model>> {
        let mut out = Vec::new();
        self.assign(pending, BTreeMap::new(), &mut out);
        out
    }

    fn assign(&mut self, mut pending: Vec<usize>, chosen: BTreeMap<usize, Model>, out: &mut Vec<BTreeMap<usize, Model>>) {
        let Some(q) = pending.pop() else {
            out.push(chosen);
            return;
        };
        if chosen.contains_key(&q) {
            return self.assign(pending, chosen, out);
        }
        let models = self.delta(q).1.clone();
        'models: for m in models {
            let mut next = pending.clone();
            for mv in m.iter().filter(|mv| mv.dir == 0) {
                if chosen.contains_key(&mv.state) || mv.state == q || self.is_true(mv.state) {
                    continue;
                }
                if self.delta(mv.state).1.is_empty() {
                    continue 'models;
                }
                next.push(mv.state);
            }
            let mut chosen = chosen.clone();
            chosen.insert(q, m);
            self.assign(next, chosen, out);
        }
    }
}

/// Successors of `s` on reading `letter`; `at_last` marks the letter as the
/// final one of the word.
///
/// The strategy letter is guessed (one minimal model per active state, plus
/// optional extra origins that a later left move may return to); the
/// annotation is computed, never guessed.
pub fn nfw_successors(a: &Afw, s: &NfwState, letter: &Interpretation, at_last: bool) -> BTreeSet<NfwState> {
    let mut out = BTreeSet::new();
    if matches!(s.control, Control::Rejected | Control::Ready) {
        return out;
    }
    let first = s.control == Control::Initial;
    let letter: Interpretation = letter.intersection(a.atoms()).cloned().collect();
    let mut step = Step {
        a,
        letter: &letter,
        at: Boundary { first, last: at_last },
        cache: HashMap::new(),
    };
    let prev = s.memory.as_ref();
    let required: BTreeSet<usize> = match prev {
        None => BTreeSet::from([a.start()]),
        Some(m) => m.gamma.iter().filter(|t| t.1 == 1).map(|t| t.2).collect(),
    };
    let mut pending = Vec::new();
    for &q in &required {
        if step.is_true(q) {
            continue;
        }
        if step.delta(q).1.is_empty() {
            return out;
        }
        pending.push(q);
    }
    let extras: Vec<usize> = if at_last {
        Vec::new()
    } else {
        a.backward_targets()
            .into_iter()
            .filter(|q| !required.contains(q) && !step.is_true(*q) && !step.delta(*q).1.is_empty())
            .collect()
    };
    let prev_step_true = |t: usize, m: &Memory| {
        a.delta(t, &m.letter, Boundary { first: m.first, last: false }) == PosBool::True
    };
    for mask in 0u64..1 << extras.len() {
        let mut start = pending.clone();
        start.extend(extras.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, q)| *q));
        for chosen in step.assignments(start) {
            let gamma: StrategyLetter = chosen
                .iter()
                .flat_map(|(&q, m)| m.iter().map(move |mv| (q, mv.dir, mv.state)))
                .collect();
            let lefts_ok = gamma.iter().filter(|t| t.1 == -1).all(|&(_, _, t)| {
                prev.is_some_and(|m| origin(&m.gamma).contains(&t) || prev_step_true(t, m))
            });
            if !lefts_ok {
                continue;
            }
            let eta = left_annotation(a.accepting(), &gamma, prev.map(|m| (&m.gamma, &m.eta)));
            if eta.iter().any(|&(q, f, t)| q == t && f == 0) {
                continue;
            }
            out.insert(NfwState {
                control: if at_last { Control::Ready } else { Control::PendingRight },
                memory: Some(Memory {
                    letter: letter.clone(),
                    first,
                    gamma,
                    eta,
                }),
            });
        }
    }
    out
}

/// A certificate for acceptance of `w`, if `a` accepts it from position 0.
pub fn nfw_run(a: &Afw, w: &Trace) -> Option<Certificate> {
    let n = w.len();
    let mut layers: Vec<HashMap<NfwState, Option<NfwState>>> = vec![HashMap::from([(NfwState::initial(), None)])];
    for u in 0..n {
        let mut next: HashMap<NfwState, Option<NfwState>> = HashMap::new();
        let mut current: Vec<&NfwState> = layers[u].keys().collect();
        current.sort();
        for s in current {
            for t in nfw_successors(a, s, w.at(u), u + 1 == n) {
                next.entry(t).or_insert_with(|| Some(s.clone()));
            }
        }
        layers.push(next);
    }
    let mut finals: Vec<&NfwState> = layers[n].keys().filter(|s| s.is_accepting()).collect();
    finals.sort();
    let mut s = (*finals.first()?).clone();
    let mut gamma = Vec::with_capacity(n);
    for u in (1..=n).rev() {
        gamma.push(s.memory.as_ref().expect("non-initial state").gamma.clone());
        s = layers[u][&s].clone().expect("parent recorded");
    }
    gamma.reverse();
    let eta = annotation_closure(a.accepting(), &gamma);
    Some(Certificate { gamma, eta })
}

pub fn nfw_accepts(a: &Afw, w: &Trace) -> bool {
    nfw_run(a, w).is_some()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_states: usize,
    pub max_len: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_states: 500_000,
            max_len: 1_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("search exceeded {0} states")]
    StateLimit(usize),
    #[error("search exceeded witness length {0}")]
    LengthLimit(usize),
    #[error("witness failed to replay against the semantics")]
    ReplayFailed,
}

/// A shortest trace satisfying `f`, or `None` if `f` is unsatisfiable.
pub fn is_satisfiable(f: &Formula, limits: SearchLimits) -> Result<Option<Trace>, SearchError> {
    let nnf = to_nnf(f);
    let a = compile_formula(&nnf).expect("nnf output is in negation normal form");
    let letters = a.letters();
    let mut states = vec![NfwState::initial()];
    let mut parent: Vec<Option<(usize, usize)>> = vec![None];
    let mut depth = vec![0usize];
    let mut seen: HashMap<NfwState, usize> = HashMap::from([(NfwState::initial(), 0)]);
    let mut queue = VecDeque::from([0usize]);
    let mut truncated = false;
    let trace_to = |states_parent: &[Option<(usize, usize)>], mut id: usize, last: usize| {
        let mut word = vec![letters[last].clone()];
        while let Some((p, l)) = states_parent[id] {
            word.push(letters[l].clone());
            id = p;
        }
        word.reverse();
        Trace::new(word).expect("nonempty")
    };
    while let Some(id) = queue.pop_front() {
        if depth[id] + 1 > limits.max_len {
            truncated = true;
            continue;
        }
        for (l, letter) in letters.iter().enumerate() {
            if !nfw_successors(&a, &states[id], letter, true).is_empty() {
                let witness = trace_to(&parent, id, l);
                if !eval_trace(f, &witness) {
                    return Err(SearchError::ReplayFailed);
                }
                return Ok(Some(witness));
            }
        }
        for (l, letter) in letters.iter().enumerate() {
            for t in nfw_successors(&a, &states[id], letter, false) {
                if seen.contains_key(&t) {
                    continue;
                }
                if states.len() >= limits.max_states {
                    return Err(SearchError::StateLimit(limits.max_states));
                }
                let tid = states.len();
                seen.insert(t.clone(), tid);
                states.push(t);
                parent.push(Some((id, l)));
                depth.push(depth[id] + 1);
                queue.push_back(tid);
            }
        }
    }
    if truncated {
        Err(SearchError::LengthLimit(limits.max_len))
    } else {
        Ok(None)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent,
    /// A trace on which the formulas differ at position 0; `first_holds`
    /// tells which side is true there.
    Counterexample { trace: Trace, first_holds: bool },
}

pub fn equivalence(f: &Formula, g: &Formula, limits: SearchLimits) -> Result<Equivalence, SearchError> {
    let only_f = to_nnf(&Formula::and(f.clone(), Formula::not(g.clone())));
    if let Some(trace) = is_satisfiable(&only_f, limits)? {
        return Ok(Equivalence::Counterexample {
            trace,
            first_holds: true,
        });
    }
    let only_g = to_nnf(&Formula::and(Formula::not(f.clone()), g.clone()));
    if let Some(trace) = is_satisfiable(&only_g, limits)? {
        return Ok(Equivalence::Counterexample {
            trace,
            first_holds: false,
        });
    }
    Ok(Equivalence::Equivalent)
}
