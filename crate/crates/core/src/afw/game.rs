use std::collections::{HashMap, VecDeque};

use super::automaton::{Afw, Boundary};
use super::posbool::{minimal_models, Model, PosBool};
use crate::semantics::{SemanticsError, Trace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Player {
    Protagonist,
    Antagonist,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GameNode {
    Config { state: usize, pos: usize },
    Choice { state: usize, pos: usize, model: Model },
    Accept,
    Reject,
    /// Nodes of hand-built games.
    Plain(usize),
}

/// A two-player game graph with a Büchi objective for the protagonist.
#[derive(Clone, Debug, Default)]
pub struct GameGraph {
    pub nodes: Vec<GameNode>,
    pub owner: Vec<Player>,
    pub succ: Vec<Vec<usize>>,
    pub target: Vec<bool>,
}

impl GameGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, node: GameNode, owner: Player, target: bool) -> usize {
        self.nodes.push(node);
        self.owner.push(owner);
        self.succ.push(Vec::new());
        self.target.push(target);
        self.nodes.len() - 1
    }

    pub fn add_edge(&mut self, from: usize, to: usize) {
        if !self.succ[from].contains(&to) {
            self.succ[from].push(to);
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut pred = vec![Vec::new(); self.len()];
        for (u, succ) in self.succ.iter().enumerate() {
            for &v in succ {
                pred[v].push(u);
            }
        }
        pred
    }
}

fn attractor(g: &GameGraph, pred: &[Vec<usize>], alive: &[bool], goal: &[bool], player: Player) -> Vec<bool> {
    let mut attr = vec![false; g.len()];
    let mut remaining: Vec<usize> = g
        .succ
        .iter()
        .map(|s| s.iter().filter(|&&v| alive[v]).count())
        .collect();
    let mut queue = VecDeque::new();
    for v in 0..g.len() {
        if alive[v] && goal[v] {
            attr[v] = true;
            queue.push_back(v);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &u in &pred[v] {
            if !alive[u] || attr[u] {
                continue;
            }
            let pulled = if g.owner[u] == player {
                true
            } else {
                remaining[u] -= 1;
                remaining[u] == 0
            };
            if pulled {
                attr[u] = true;
                queue.push_back(u);
            }
        }
    }
    attr
}

/// Winning region of the protagonist: nodes from which it can force
/// infinitely many visits to target nodes. Every node must have a successor.
pub fn solve_buchi_game(g: &GameGraph) -> Vec<bool> {
    let pred = g.predecessors();
    let mut alive = vec![true; g.len()];
    loop {
        let goal: Vec<bool> = (0..g.len()).map(|v| alive[v] && g.target[v]).collect();
        let reach = attractor(g, &pred, &alive, &goal, Player::Protagonist);
        let trap: Vec<bool> = (0..g.len()).map(|v| alive[v] && !reach[v]).collect();
        if !trap.iter().any(|&t| t) {
            return alive;
        }
        let lost = attractor(g, &pred, &alive, &trap, Player::Antagonist);
        for v in 0..g.len() {
            if lost[v] {
                alive[v] = false;
            }
        }
    }
}

/// The acceptance game of `a` on `w` from `start_pos`. Node 0 is the
/// initial configuration.
pub fn build_game(a: &Afw, w: &Trace, start_pos: usize) -> Result<GameGraph, SemanticsError> {
    if start_pos >= w.len() {
        return Err(SemanticsError::PositionOutOfRange {
            position: start_pos,
            len: w.len(),
        });
    }
    let mut g = GameGraph::new();
    let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
    let initial = g.add_node(
        GameNode::Config {
            state: a.start(),
            pos: start_pos,
        },
        Player::Protagonist,
        a.is_accepting(a.start()),
    );
    ids.insert((a.start(), start_pos), initial);
    let accept = g.add_node(GameNode::Accept, Player::Protagonist, true);
    let reject = g.add_node(GameNode::Reject, Player::Protagonist, false);
    g.add_edge(accept, accept);
    g.add_edge(reject, reject);

    let mut queue = VecDeque::from([(a.start(), start_pos)]);
    while let Some((q, u)) = queue.pop_front() {
        let node = ids[&(q, u)];
        match a.delta(q, w.at(u), Boundary::at(u, w.len())) {
            PosBool::True => g.add_edge(node, accept),
            PosBool::False => g.add_edge(node, reject),
            theta => {
                for model in minimal_models(&theta) {
                    let moves: Vec<_> = model.iter().copied().collect();
                    let choice = g.add_node(
                        GameNode::Choice {
                            state: q,
                            pos: u,
                            model,
                        },
                        Player::Antagonist,
                        false,
                    );
                    g.add_edge(node, choice);
                    for mv in moves {
                        let v = u as isize + mv.dir as isize;
                        if v < 0 || v >= w.len() as isize {
                            g.add_edge(choice, reject);
                            continue;
                        }
                        let key = (mv.state, v as usize);
                        let next = *ids.entry(key).or_insert_with(|| {
                            queue.push_back(key);
                            g.add_node(
                                GameNode::Config {
                                    state: key.0,
                                    pos: key.1,
                                },
                                Player::Protagonist,
                                a.is_accepting(key.0),
                            )
                        });
                        g.add_edge(choice, next);
                    }
                }
            }
        }
    }
    Ok(g)
}

/// Whether `a` accepts `w` from `start_pos`.
pub fn accepts_game(a: &Afw, w: &Trace, start_pos: usize) -> Result<bool, SemanticsError> {
    let g = build_game(a, w, start_pos)?;
    Ok(solve_buchi_game(&g)[0])
}
