use std::collections::BTreeSet;

use super::certificate::{AnnotationLetter, StrategyLetter};

/// An element of a semi-path: a configuration or an annotated cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SemiElem {
    Plain { index: usize, state: usize },
    Cycle { index: usize, from: usize, flag: u8, to: usize },
}

impl SemiElem {
    pub fn index(&self) -> usize {
        match *self {
            SemiElem::Plain { index, .. } | SemiElem::Cycle { index, .. } => index,
        }
    }

    /// State in which the element is entered.
    pub fn entry(&self) -> usize {
        match *self {
            SemiElem::Plain { state, .. } => state,
            SemiElem::Cycle { from, .. } => from,
        }
    }

    /// State in which the element is left.
    pub fn exit(&self) -> usize {
        match *self {
            SemiElem::Plain { state, .. } => state,
            SemiElem::Cycle { to, .. } => to,
        }
    }

    fn is_clean(&self, accepting: &BTreeSet<usize>) -> bool {
        match *self {
            SemiElem::Plain { state, .. } => !accepting.contains(&state),
            SemiElem::Cycle { from, flag, to, .. } => {
                flag == 0 && !accepting.contains(&from) && !accepting.contains(&to)
            }
        }
    }
}

/// Whether `next` may follow `cur` on `(gamma, eta)`.
pub fn adjacent(gamma: &[StrategyLetter], cur: &SemiElem, next: &SemiElem) -> bool {
    let j = cur.index();
    let Some(letter) = gamma.get(j) else {
        return false;
    };
    let d = next.index() as isize - j as isize;
    (-1..=1).contains(&d) && letter.contains(&(cur.exit(), d as i8, next.entry()))
}

/// A finite sequence of configurations and annotated cycles.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SemiPath(pub Vec<SemiElem>);

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SemiPathError {
    #[error("semi-path is not valid for the given strategy word and annotation")]
    Invalid,
    #[error("semi-path visits an accepting state or an accepting cycle")]
    Accepting,
    #[error("semi-path does not start and end at the same configuration")]
    Endpoints,
    #[error("semi-path must have more than one element")]
    TooShort,
}

impl SemiPath {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Cycles are annotated and consecutive elements follow the strategy word.
    pub fn is_valid(&self, gamma: &[StrategyLetter], eta: &[AnnotationLetter]) -> bool {
        let cycles_ok = self.0.iter().all(|e| match *e {
            SemiElem::Plain { index, .. } => index < gamma.len(),
            SemiElem::Cycle { index, from, flag, to } => eta.get(index).is_some_and(|l| l.contains(&(from, flag, to))),
        });
        cycles_ok && self.0.windows(2).all(|w| adjacent(gamma, &w[0], &w[1]))
    }

    /// No accepting state occurs anywhere and every cycle has flag 0.
    pub fn is_non_accepting(&self, accepting: &BTreeSet<usize>) -> bool {
        self.0.iter().all(|e| e.is_clean(accepting))
    }

    /// The `(j, q)` this path starts and ends at, if it is a `(j, q)`-semi-path.
    pub fn endpoints(&self) -> Option<(usize, usize)> {
        let first = self.0.first()?;
        let last = self.0.last()?;
        let jq = (first.index(), first.entry());
        if self.0.len() == 1 {
            return matches!(first, SemiElem::Cycle { from, to, .. } if from == to).then_some(jq);
        }
        (last.index() == jq.0 && last.exit() == jq.1).then_some(jq)
    }
}

/// Replaces a non-accepting `(j, q)`-semi-path of length `n > 1` by a
/// shorter one with the same endpoints.
///
/// Adjacent elements with equal index are fused first, which removes one
/// element. Otherwise a semi-path exactly one element shorter is searched
/// for, and failing that an interior element of extremal index is fused
/// with both neighbours into one cycle, which removes two.
pub fn shorten_semipath(
    gamma: &[StrategyLetter],
    eta: &[AnnotationLetter],
    accepting: &BTreeSet<usize>,
    p: &SemiPath,
) -> Result<SemiPath, SemiPathError> {
    if p.len() < 2 {
        return Err(SemiPathError::TooShort);
    }
    if !p.is_valid(gamma, eta) {
        return Err(SemiPathError::Invalid);
    }
    if !p.is_non_accepting(accepting) {
        return Err(SemiPathError::Accepting);
    }
    if p.endpoints().is_none() {
        return Err(SemiPathError::Endpoints);
    }
    let elems = &p.0;
    let fused = |index: usize, from: usize, to: usize| SemiElem::Cycle {
        index,
        from,
        flag: 0,
        to,
    };
    let mut out = elems.clone();
    if let Some(i) = (0..elems.len() - 1).find(|&i| elems[i].index() == elems[i + 1].index()) {
        let c = fused(elems[i].index(), elems[i].entry(), elems[i + 1].exit());
        out.splice(i..i + 2, [c]);
    } else if let Some(found) = search_exact(gamma, eta, accepting, elems) {
        out = found;
    } else {
        let interior = 1..elems.len() - 1;
        let max = interior.clone().max_by_key(|&i| (elems[i].index(), i));
        let min = interior.clone().min_by_key(|&i| (elems[i].index(), i));
        let extremal = |i: usize| {
            let j = elems[i].index();
            let (a, b) = (elems[i - 1].index(), elems[i + 1].index());
            (a < j && b < j) || (a > j && b > j)
        };
        let i = [max, min]
            .into_iter()
            .flatten()
            .find(|&i| extremal(i))
            .ok_or(SemiPathError::Invalid)?;
        let c = fused(elems[i - 1].index(), elems[i - 1].entry(), elems[i + 1].exit());
        out.splice(i - 1..i + 2, [c]);
    }
    let out = SemiPath(out);
    debug_assert!(out.is_valid(gamma, eta) && out.is_non_accepting(accepting));
    Ok(out)
}

fn successors<'a>(
    gamma: &'a [StrategyLetter],
    eta: &'a [AnnotationLetter],
    accepting: &'a BTreeSet<usize>,
    e: SemiElem,
) -> impl Iterator<Item = SemiElem> + 'a {
    let j = e.index();
    gamma[j]
        .iter()
        .filter(move |&&(q, _, _)| q == e.exit())
        .flat_map(move |&(_, d, q2)| {
            let u = (j as isize + d as isize) as usize;
            elements_at(gamma, eta, accepting, u, q2)
        })
}

/// Clean elements at `u` entered in state `q`.
fn elements_at<'a>(
    gamma: &'a [StrategyLetter],
    eta: &'a [AnnotationLetter],
    accepting: &'a BTreeSet<usize>,
    u: usize,
    q: usize,
) -> impl Iterator<Item = SemiElem> + 'a {
    let plain = (u < gamma.len()).then_some(SemiElem::Plain { index: u, state: q });
    let cycles = eta
        .get(u)
        .into_iter()
        .flat_map(move |l| l.range((q, 0, 0)..=(q, 0, usize::MAX)))
        .map(move |&(from, flag, to)| SemiElem::Cycle { index: u, from, flag, to });
    plain.into_iter().chain(cycles).filter(move |e| e.is_clean(accepting))
}

/// Depth-first search for a clean semi-path with the endpoints of `elems`
/// and exactly one element fewer.
fn search_exact(
    gamma: &[StrategyLetter],
    eta: &[AnnotationLetter],
    accepting: &BTreeSet<usize>,
    elems: &[SemiElem],
) -> Option<Vec<SemiElem>> {
    let (j, q) = (elems[0].index(), elems[0].entry());
    let want = elems.len() - 1;
    let closes = |e: &SemiElem| e.index() == j && e.exit() == q;
    let mut path = Vec::with_capacity(want);
    fn go(
        gamma: &[StrategyLetter],
        eta: &[AnnotationLetter],
        accepting: &BTreeSet<usize>,
        want: usize,
        closes: &dyn Fn(&SemiElem) -> bool,
        path: &mut Vec<SemiElem>,
    ) -> bool {
        let last = *path.last().unwrap();
        if path.len() == want {
            return closes(&last) && (want > 1 || matches!(last, SemiElem::Cycle { .. }));
        }
        for next in successors(gamma, eta, accepting, last) {
            path.push(next);
            if go(gamma, eta, accepting, want, closes, path) {
                return true;
            }
            path.pop();
        }
        false
    }
    for first in elements_at(gamma, eta, accepting, j, q) {
        path.clear();
        path.push(first);
        if go(gamma, eta, accepting, want, &closes, &mut path) {
            return Some(path);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nfw::annotation_closure;

    fn plain(index: usize, state: usize) -> SemiElem {
        SemiElem::Plain { index, state }
    }

    #[test]
    fn same_index_elements_are_fused() {
        let gamma = vec![StrategyLetter::from([(0, 0, 1), (1, 0, 0)])];
        let eta = annotation_closure(&BTreeSet::new(), &gamma);
        let p = SemiPath(vec![plain(0, 0), plain(0, 1), plain(0, 0)]);
        let s = shorten_semipath(&gamma, &eta, &BTreeSet::new(), &p).unwrap();
        assert_eq!(
            s.0,
            vec![
                SemiElem::Cycle {
                    index: 0,
                    from: 0,
                    flag: 0,
                    to: 1
                },
                plain(0, 0)
            ]
        );
        assert_eq!(s.endpoints(), Some((0, 0)));
    }

    #[test]
    fn shortens_one_element_at_a_time() {
        // (0,q1), (1,q2), (0,q3) with q3 continuing back to q1 at 0
        let gamma = vec![StrategyLetter::from([(1, 1, 2), (3, 0, 1)]), StrategyLetter::from([(2, -1, 3)])];
        let eta = annotation_closure(&BTreeSet::new(), &gamma);
        let p = SemiPath(vec![plain(0, 1), plain(1, 2), plain(0, 3), plain(0, 1)]);
        let s = shorten_semipath(&gamma, &eta, &BTreeSet::new(), &p).unwrap();
        // the zero move at the end is fused first
        assert_eq!(s.len(), 3);
        let s = shorten_semipath(&gamma, &eta, &BTreeSet::new(), &s).unwrap();
        assert_eq!(s.len(), 2);
        assert!(s.is_valid(&gamma, &eta));
        let s = shorten_semipath(&gamma, &eta, &BTreeSet::new(), &s).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.endpoints(), Some((0, 1)));
    }

    /// With no same-index neighbours, no semi-path one element shorter exists.
    #[test]
    fn three_element_loop_drops_to_one() {
        let gamma = vec![StrategyLetter::from([(1, 1, 0)]), StrategyLetter::from([(0, -1, 1)])];
        let eta = annotation_closure(&BTreeSet::new(), &gamma);
        let p = SemiPath(vec![plain(1, 0), plain(0, 1), plain(1, 0)]);
        let s = shorten_semipath(&gamma, &eta, &BTreeSet::new(), &p).unwrap();
        assert_eq!(
            s.0,
            vec![SemiElem::Cycle {
                index: 1,
                from: 0,
                flag: 0,
                to: 0
            }]
        );
    }

    #[test]
    fn preconditions() {
        let gamma = vec![StrategyLetter::from([(0, 0, 0)])];
        let eta = annotation_closure(&BTreeSet::new(), &gamma);
        let p = SemiPath(vec![plain(0, 0), plain(0, 0)]);
        assert_eq!(
            shorten_semipath(&gamma, &eta, &BTreeSet::from([0]), &p),
            Err(SemiPathError::Accepting)
        );
        assert_eq!(
            shorten_semipath(&gamma, &eta, &BTreeSet::new(), &SemiPath(vec![plain(0, 0)])),
            Err(SemiPathError::TooShort)
        );
        let bad = SemiPath(vec![plain(0, 0), plain(0, 1)]);
        assert_eq!(shorten_semipath(&gamma, &eta, &BTreeSet::new(), &bad), Err(SemiPathError::Invalid));
    }
}
