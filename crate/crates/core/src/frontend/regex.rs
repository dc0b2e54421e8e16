use crate::syntax::{Formula, PathAutomaton, PropFormula, Transition, TransitionLabel};

/// Regular expressions over future, past and test labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PathExpression {
    Future(PropFormula),
    Past(PropFormula),
    Test(Formula),
    Concat(Box<PathExpression>, Box<PathExpression>),
    Union(Box<PathExpression>, Box<PathExpression>),
    Star(Box<PathExpression>),
    Epsilon,
}

impl PathExpression {
    pub fn concat(a: PathExpression, b: PathExpression) -> Self {
        PathExpression::Concat(Box::new(a), Box::new(b))
    }

    pub fn union(a: PathExpression, b: PathExpression) -> Self {
        PathExpression::Union(Box::new(a), Box::new(b))
    }

    pub fn star(a: PathExpression) -> Self {
        PathExpression::Star(Box::new(a))
    }
}

struct Builder {
    count: usize,
    transitions: Vec<Transition>,
}

impl Builder {
    fn fresh(&mut self) -> usize {
        self.count += 1;
        self.count - 1
    }

    fn edge(&mut self, from: usize, label: TransitionLabel, to: usize) {
        self.transitions.push(Transition::new(from, label, to));
    }

    fn epsilon(&mut self, from: usize, to: usize) {
        self.edge(from, TransitionLabel::Test(Formula::tt()), to);
    }

    /// Returns the (start, end) states of the fragment for `e`.
    fn build(&mut self, e: &PathExpression) -> (usize, usize) {
        match e {
            PathExpression::Future(z) => self.single(TransitionLabel::Future(z.clone())),
            PathExpression::Past(z) => self.single(TransitionLabel::Past(z.clone())),
            PathExpression::Test(psi) => self.single(TransitionLabel::Test(psi.clone())),
            PathExpression::Epsilon => self.single(TransitionLabel::Test(Formula::tt())),
            PathExpression::Concat(a, b) => {
                let (s1, e1) = self.build(a);
                let (s2, e2) = self.build(b);
                self.epsilon(e1, s2);
                (s1, e2)
            }
            PathExpression::Union(a, b) => {
                let s = self.fresh();
                let (s1, e1) = self.build(a);
                let (s2, e2) = self.build(b);
                let e = self.fresh();
                self.epsilon(s, s1);
                self.epsilon(s, s2);
                self.epsilon(e1, e);
                self.epsilon(e2, e);
                (s, e)
            }
            PathExpression::Star(a) => {
                let s = self.fresh();
                let (s1, e1) = self.build(a);
                let e = self.fresh();
                self.epsilon(s, s1);
                self.epsilon(s, e);
                self.epsilon(e1, s1);
                self.epsilon(e1, e);
                (s, e)
            }
        }
    }

    fn single(&mut self, label: TransitionLabel) -> (usize, usize) {
        let s = self.fresh();
        let e = self.fresh();
        self.edge(s, label, e);
        (s, e)
    }
}

/// Thompson construction; empty moves become `true?` tests, which pass
/// everywhere without moving.
pub fn regex_to_automaton(e: &PathExpression) -> PathAutomaton {
    let mut b = Builder {
        count: 0,
        transitions: Vec::new(),
    };
    let (start, end) = b.build(e);
    let states = (0..b.count).map(|i| format!("r{i}")).collect();
    PathAutomaton::new(states, b.transitions, start, [end]).expect("fragments connect every state")
}
