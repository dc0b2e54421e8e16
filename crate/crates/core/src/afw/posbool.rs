use std::collections::BTreeSet;
use std::fmt;

/// A pair `(state, direction)` with direction in {-1, 0, +1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Move {
    pub state: usize,
    pub dir: i8,
}

impl Move {
    pub fn new(state: usize, dir: i8) -> Self {
        debug_assert!((-1..=1).contains(&dir));
        Move { state, dir }
    }
}

/// Positive Boolean formula over moves.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PosBool {
    True,
    False,
    Atom(Move),
    And(Box<PosBool>, Box<PosBool>),
    Or(Box<PosBool>, Box<PosBool>),
}

pub type Model = BTreeSet<Move>;

impl PosBool {
    pub fn atom(state: usize, dir: i8) -> Self {
        PosBool::Atom(Move::new(state, dir))
    }

    pub fn and(lhs: PosBool, rhs: PosBool) -> Self {
        PosBool::And(Box::new(lhs), Box::new(rhs))
    }

    pub fn or(lhs: PosBool, rhs: PosBool) -> Self {
        PosBool::Or(Box::new(lhs), Box::new(rhs))
    }

    /// Conjunction of all items; the empty conjunction is `True`.
    pub fn all(items: impl IntoIterator<Item = PosBool>) -> Self {
        items
            .into_iter()
            .reduce(PosBool::and)
            .unwrap_or(PosBool::True)
    }

    /// Disjunction of all items; the empty disjunction is `False`.
    pub fn any(items: impl IntoIterator<Item = PosBool>) -> Self {
        items
            .into_iter()
            .reduce(PosBool::or)
            .unwrap_or(PosBool::False)
    }

    pub fn satisfied_by(&self, m: &Model) -> bool {
        match self {
            PosBool::True => true,
            PosBool::False => false,
            PosBool::Atom(mv) => m.contains(mv),
            PosBool::And(l, r) => l.satisfied_by(m) && r.satisfied_by(m),
            PosBool::Or(l, r) => l.satisfied_by(m) || r.satisfied_by(m),
        }
    }

    pub fn moves(&self) -> BTreeSet<Move> {
        let mut out = BTreeSet::new();
        self.collect_moves(&mut out);
        out
    }

    fn collect_moves(&self, out: &mut BTreeSet<Move>) {
        match self {
            PosBool::True | PosBool::False => {}
            PosBool::Atom(mv) => {
                out.insert(*mv);
            }
            PosBool::And(l, r) | PosBool::Or(l, r) => {
                l.collect_moves(out);
                r.collect_moves(out);
            }
        }
    }

    /// Renders atoms as `(name,dir)` using the given state names.
    pub fn render(&self, names: &[String]) -> String {
        match self {
            PosBool::True => "true".into(),
            PosBool::False => "false".into(),
            PosBool::Atom(mv) => format!("({},{})", names[mv.state], fmt_dir(mv.dir)),
            PosBool::And(l, r) => format!("{} & {}", paren(l, names, true), paren(r, names, true)),
            PosBool::Or(l, r) => format!("{} | {}", paren(l, names, false), paren(r, names, false)),
        }
    }
}

fn paren(b: &PosBool, names: &[String], in_and: bool) -> String {
    match b {
        PosBool::Or(..) if in_and => format!("({})", b.render(names)),
        _ => b.render(names),
    }
}

pub(crate) fn fmt_dir(d: i8) -> &'static str {
    match d {
        -1 => "-1",
        0 => "0",
        _ => "+1",
    }
}

impl fmt::Display for PosBool {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = {
            let max = self.moves().iter().map(|m| m.state).max().map_or(0, |m| m + 1);
            (0..max).map(|i| format!("q{i}")).collect()
        };
        write!(f, "{}", self.render(&names))
    }
}

/// The subset-minimal models of `b`: `False` has none, `True` has exactly
/// the empty model.
pub fn minimal_models(b: &PosBool) -> Vec<Model> {
    let mut models = dnf(b);
    models.sort();
    models
}

fn dnf(b: &PosBool) -> Vec<Model> {
    match b {
        PosBool::True => vec![Model::new()],
        PosBool::False => vec![],
        PosBool::Atom(mv) => vec![Model::from([*mv])],
        PosBool::Or(l, r) => {
            let mut out = dnf(l);
            out.extend(dnf(r));
            absorb(out)
        }
        PosBool::And(l, r) => {
            let left = dnf(l);
            let right = dnf(r);
            let mut out = Vec::with_capacity(left.len() * right.len());
            for a in &left {
                for b in &right {
                    out.push(a.union(b).copied().collect());
                }
            }
            absorb(out)
        }
    }
}

fn absorb(mut sets: Vec<Model>) -> Vec<Model> {
    sets.sort_by_key(|s| s.len());
    sets.dedup();
    let mut kept: Vec<Model> = Vec::new();
    for s in sets {
        if !kept.iter().any(|k| k.is_subset(&s)) {
            kept.push(s);
        }
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> PosBool {
        PosBool::atom(0, 0)
    }

    fn b() -> PosBool {
        PosBool::atom(1, 1)
    }

    #[test]
    fn models_of_atoms_and_connectives() {
        assert_eq!(minimal_models(&a()), vec![Model::from([Move::new(0, 0)])]);
        assert_eq!(
            minimal_models(&PosBool::or(a(), b())),
            vec![Model::from([Move::new(0, 0)]), Model::from([Move::new(1, 1)])]
        );
        assert_eq!(minimal_models(&PosBool::and(a(), PosBool::or(a(), b()))), vec![Model::from([Move::new(0, 0)])]);
    }

    #[test]
    fn constants() {
        assert!(minimal_models(&PosBool::False).is_empty());
        assert_eq!(minimal_models(&PosBool::True), vec![Model::new()]);
        assert_eq!(PosBool::all([]), PosBool::True);
        assert_eq!(PosBool::any([]), PosBool::False);
    }

    #[test]
    fn models_satisfy() {
        let f = PosBool::and(PosBool::or(a(), b()), PosBool::or(b(), PosBool::atom(2, -1)));
        let ms = minimal_models(&f);
        assert!(ms.iter().all(|m| f.satisfied_by(m)));
        assert!(ms.contains(&Model::from([Move::new(1, 1)])));
    }

    #[test]
    fn render() {
        let names = vec!["x".to_string(), "y".to_string()];
        let f = PosBool::and(a(), PosBool::or(a(), b()));
        assert_eq!(f.render(&names), "(x,0) & ((x,0) | (y,+1))");
    }
}
