use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::afw::{Afw, Boundary, Move, PosBool};
use crate::semantics::Trace;

/// One letter of a strategy word: moves `(from, direction, to)`.
pub type StrategyLetter = BTreeSet<(usize, i8, usize)>;

/// One letter of an annotation: returns `(from, flag, to)` to the same
/// position, flag 1 when an accepting state was visited on the way.
pub type AnnotationLetter = BTreeSet<(usize, u8, usize)>;

pub fn origin(letter: &StrategyLetter) -> BTreeSet<usize> {
    letter.iter().map(|&(q, _, _)| q).collect()
}

/// A strategy word with an annotation, one letter per input position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub gamma: Vec<StrategyLetter>,
    pub eta: Vec<AnnotationLetter>,
}

fn fin(accepting: &BTreeSet<usize>, q: usize) -> u8 {
    u8::from(accepting.contains(&q))
}

/// Entries reachable from `a` inside `eta`, paired with the flag collected;
/// the identity `(a, final(a))` comes first.
fn through(eta: &AnnotationLetter, accepting: &BTreeSet<usize>, a: usize) -> Vec<(usize, u8)> {
    let mut out = vec![(a, fin(accepting, a))];
    out.extend(eta.range((a, 0, 0)..=(a, 1, usize::MAX)).map(|&(_, f, b)| (b, f.max(fin(accepting, a)))));
    out
}

/// Returns entering and leaving a neighbouring position: `(q, d, a)` at `u`,
/// then `a` to `b` at `u + d` (directly or through its annotation), then
/// `(b, -d, c)` back to `u`.
fn returns(
    here: &StrategyLetter,
    there_gamma: &StrategyLetter,
    there_eta: &AnnotationLetter,
    dir: i8,
    accepting: &BTreeSet<usize>,
) -> Vec<(usize, u8, usize)> {
    let mut out = Vec::new();
    for &(q, d, a) in here {
        if d != dir {
            continue;
        }
        for (b, f) in through(there_eta, accepting, a) {
            for &(b2, d2, c) in there_gamma {
                if b2 == b && d2 == -dir {
                    out.push((q, f.max(fin(accepting, c)), c));
                }
            }
        }
    }
    out
}

fn transitive_closure(set: &mut AnnotationLetter) -> bool {
    let mut grew = false;
    loop {
        let mut add = Vec::new();
        for &(q, f1, q1) in set.iter() {
            for &(_, f2, q2) in set.range((q1, 0, 0)..=(q1, 1, usize::MAX)) {
                let t = (q, f1.max(f2), q2);
                if !set.contains(&t) {
                    add.push(t);
                }
            }
        }
        if add.is_empty() {
            return grew;
        }
        grew = true;
        set.extend(add);
    }
}

/// The least annotation of `gamma`.
///
/// Besides zero moves and transitivity, a return through a neighbouring
/// position may itself pass through that position's annotation, so
/// excursions of any depth and on either side are summarized.
pub fn annotation_closure(accepting: &BTreeSet<usize>, gamma: &[StrategyLetter]) -> Vec<AnnotationLetter> {
    let n = gamma.len();
    let mut eta: Vec<AnnotationLetter> = gamma
        .iter()
        .map(|letter| {
            letter
                .iter()
                .filter(|&&(_, d, _)| d == 0)
                .map(|&(q, _, t)| (q, fin(accepting, t), t))
                .collect()
        })
        .collect();
    let mut changed = true;
    while changed {
        changed = false;
        for u in 0..n {
            let mut add = Vec::new();
            if u + 1 < n {
                add.extend(returns(&gamma[u], &gamma[u + 1], &eta[u + 1], 1, accepting));
            }
            if u > 0 {
                add.extend(returns(&gamma[u], &gamma[u - 1], &eta[u - 1], -1, accepting));
            }
            for t in add {
                changed |= eta[u].insert(t);
            }
            changed |= transitive_closure(&mut eta[u]);
        }
    }
    eta
}

/// Annotation restricted to returns that never go right of the current
/// position, computed from the previous position's left annotation.
pub(crate) fn left_annotation(
    accepting: &BTreeSet<usize>,
    gamma: &StrategyLetter,
    prev: Option<(&StrategyLetter, &AnnotationLetter)>,
) -> AnnotationLetter {
    let mut eta: AnnotationLetter = gamma
        .iter()
        .filter(|&&(_, d, _)| d == 0)
        .map(|&(q, _, t)| (q, fin(accepting, t), t))
        .collect();
    if let Some((prev_gamma, prev_eta)) = prev {
        eta.extend(returns(gamma, prev_gamma, prev_eta, -1, accepting));
    }
    transitive_closure(&mut eta);
    eta
}

/// A failed condition of a certificate, in checking order.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CertificateViolation {
    #[error("length mismatch: word {word}, strategy {gamma}, annotation {eta}")]
    LengthMismatch { word: usize, gamma: usize, eta: usize },
    #[error("condition 1: initial state {state} has no moves at position 0")]
    InitialState { state: usize },
    #[error("condition 1: left move {from} -> {to} at position 0")]
    LeftAtStart { from: usize, to: usize },
    #[error("condition 2: right move {from} -> {to} at the last position")]
    RightAtEnd { from: usize, to: usize },
    #[error("condition 3: moves of state {state} do not satisfy its transition at position {position}")]
    Unsatisfied { position: usize, state: usize },
    #[error("condition 4: zero move {from} -> {to} at position {position} is not annotated")]
    ZeroMove { position: usize, from: usize, to: usize },
    #[error("condition 5: annotation at position {position} is not transitive")]
    NotTransitive { position: usize },
    #[error("condition 6: non-accepting cycle on state {state} at position {position}")]
    Cycle { position: usize, state: usize },
    #[error("condition 7: right return from state {from} at position {position} is not annotated")]
    RightReturn { position: usize, from: usize, to: usize },
    #[error("condition 8: left return from state {from} at position {position} is not annotated")]
    LeftReturn { position: usize, from: usize, to: usize },
    #[error("destination {to} of a move from {from} at position {position} is neither an origin nor accepting outright")]
    Destination { position: usize, from: usize, to: usize },
}

impl CertificateViolation {
    /// Short stable name of the violated condition.
    pub fn condition(&self) -> &'static str {
        match self {
            CertificateViolation::LengthMismatch { .. } => "length",
            CertificateViolation::InitialState { .. } | CertificateViolation::LeftAtStart { .. } => "1",
            CertificateViolation::RightAtEnd { .. } => "2",
            CertificateViolation::Unsatisfied { .. } => "3",
            CertificateViolation::ZeroMove { .. } => "4",
            CertificateViolation::NotTransitive { .. } => "5",
            CertificateViolation::Cycle { .. } => "6",
            CertificateViolation::RightReturn { .. } => "7",
            CertificateViolation::LeftReturn { .. } => "8",
            CertificateViolation::Destination { .. } => "destination",
        }
    }
}

/// Checks that `cert` witnesses acceptance of `w` by `a` from position 0.
pub fn verify_certificate(a: &Afw, w: &Trace, cert: &Certificate) -> Result<(), CertificateViolation> {
    let n = w.len();
    let (gamma, eta) = (&cert.gamma, &cert.eta);
    if gamma.len() != n || eta.len() != n {
        return Err(CertificateViolation::LengthMismatch {
            word: n,
            gamma: gamma.len(),
            eta: eta.len(),
        });
    }
    let delta = |q: usize, u: usize| a.delta(q, w.at(u), Boundary::at(u, n));
    let acc = a.accepting();

    if !origin(&gamma[0]).contains(&a.start()) && delta(a.start(), 0) != PosBool::True {
        return Err(CertificateViolation::InitialState { state: a.start() });
    }
    if let Some(&(from, _, to)) = gamma[0].iter().find(|t| t.1 == -1) {
        return Err(CertificateViolation::LeftAtStart { from, to });
    }
    if let Some(&(from, _, to)) = gamma[n - 1].iter().find(|t| t.1 == 1) {
        return Err(CertificateViolation::RightAtEnd { from, to });
    }
    for (u, letter) in gamma.iter().enumerate() {
        for q in origin(letter) {
            let moves: BTreeSet<Move> = letter
                .range((q, -1, 0)..=(q, 1, usize::MAX))
                .map(|&(_, d, t)| Move::new(t, d))
                .collect();
            if !delta(q, u).satisfied_by(&moves) {
                return Err(CertificateViolation::Unsatisfied { position: u, state: q });
            }
        }
    }
    for (u, letter) in gamma.iter().enumerate() {
        for &(q, d, t) in letter {
            if d == 0 && !eta[u].contains(&(q, fin(acc, t), t)) {
                return Err(CertificateViolation::ZeroMove {
                    position: u,
                    from: q,
                    to: t,
                });
            }
        }
    }
    for (u, letter) in eta.iter().enumerate() {
        let mut closed = letter.clone();
        if transitive_closure(&mut closed) {
            return Err(CertificateViolation::NotTransitive { position: u });
        }
    }
    for (u, letter) in eta.iter().enumerate() {
        if let Some(&(q, _, _)) = letter.iter().find(|&&(q, f, t)| q == t && f == 0) {
            return Err(CertificateViolation::Cycle { position: u, state: q });
        }
    }
    for u in 0..n {
        if u + 1 < n {
            for (q, f, t) in returns(&gamma[u], &gamma[u + 1], &eta[u + 1], 1, acc) {
                if !eta[u].contains(&(q, f, t)) {
                    return Err(CertificateViolation::RightReturn {
                        position: u,
                        from: q,
                        to: t,
                    });
                }
            }
        }
    }
    for u in 1..n {
        for (q, f, t) in returns(&gamma[u], &gamma[u - 1], &eta[u - 1], -1, acc) {
            if !eta[u].contains(&(q, f, t)) {
                return Err(CertificateViolation::LeftReturn {
                    position: u,
                    from: q,
                    to: t,
                });
            }
        }
    }
    for (u, letter) in gamma.iter().enumerate() {
        for &(q, d, t) in letter {
            let v = u as isize + d as isize;
            if v < 0 || v >= n as isize {
                continue;
            }
            let v = v as usize;
            if !origin(&gamma[v]).contains(&t) && delta(t, v) != PosBool::True {
                return Err(CertificateViolation::Destination {
                    position: u,
                    from: q,
                    to: t,
                });
            }
        }
    }
    Ok(())
}
