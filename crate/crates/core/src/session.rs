//! Interactive worksheet: a student performs the algorithm one action at a
//! time and every action is judged.
//!
//! The origin is shaded and its neighbors labelled when the session starts.
//! From then on a round is
//!
//! 1. `select_current` an unshaded node whose dist ties the lowest non-blank
//!    dist (any of the tied nodes is accepted),
//! 2. `set_label` once for every neighbor of current, either the improved
//!    label or a re-submission of the existing one when current does not
//!    improve it,
//! 3. `shade_current`.
//!
//! When no unshaded node has a dist the session is done and `finish`
//! acknowledges it. Rejected moves leave the session untouched and are not
//! recorded in the history.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dijkstra::{relax, run_dijkstra, table_from_slots, LabelTable, ShortestPaths, Slot};
use crate::graph::{Cost, Graph, GraphError, NodeId};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SessionError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("malformed move: {0}")]
    MalformedMove(String),
    #[error("the session is done; only `finish` is allowed")]
    AlreadyDone,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    SelectCurrent,
    SetLabel,
    ShadeCurrent,
    Finish,
}

/// One worksheet action.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Move {
    pub kind: MoveKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub node: Option<NodeId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dist: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub last: Option<NodeId>,
}

impl Move {
    pub fn select(node: NodeId) -> Move {
        Move {
            kind: MoveKind::SelectCurrent,
            node: Some(node),
            dist: None,
            last: None,
        }
    }

    /// `last` is only absent when re-submitting the origin's own label.
    pub fn set_label(node: NodeId, dist: f64, last: Option<NodeId>) -> Move {
        Move {
            kind: MoveKind::SetLabel,
            node: Some(node),
            dist: Some(dist),
            last,
        }
    }

    pub fn shade(node: NodeId) -> Move {
        Move {
            kind: MoveKind::ShadeCurrent,
            node: Some(node),
            dist: None,
            last: None,
        }
    }

    pub fn finish() -> Move {
        Move {
            kind: MoveKind::Finish,
            node: None,
            dist: None,
            last: None,
        }
    }

    fn check_shape(&self) -> Result<(), SessionError> {
        let malformed = |msg: &str| Err(SessionError::MalformedMove(msg.to_string()));
        match self.kind {
            MoveKind::SelectCurrent | MoveKind::ShadeCurrent if self.node.is_none() => {
                malformed("this move needs a node")
            }
            MoveKind::SetLabel if self.node.is_none() || self.dist.is_none() => {
                malformed("set_label needs node and dist (and last unless it is blank)")
            }
            MoveKind::SetLabel if !self.dist.is_some_and(f64::is_finite) => {
                malformed("dist must be a finite number")
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub accepted: bool,
    pub explanation: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
}

impl Verdict {
    fn accept(explanation: impl Into<String>) -> Verdict {
        Verdict {
            accepted: true,
            explanation: explanation.into(),
            expected: None,
        }
    }

    fn reject(explanation: impl Into<String>, expected: Option<String>) -> Verdict {
        Verdict {
            accepted: false,
            explanation: explanation.into(),
            expected,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    Selecting,
    Relaxing,
    Done,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistoryEntry {
    #[serde(rename = "move")]
    pub mv: Move,
    pub verdict: Verdict,
}

#[derive(Debug, Clone)]
pub struct Session {
    id: String,
    graph: Arc<Graph>,
    origin: usize,
    slots: Vec<Slot>,
    phase: Phase,
    current: Option<usize>,
    /// Neighbors of current already handled this round, by position in
    /// current's adjacency list.
    resolved: Vec<bool>,
    finished: bool,
    history: Vec<HistoryEntry>,
}

/// Serialisable snapshot of a session, the shape served by the HTTP API.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionState {
    pub id: String,
    pub origin: NodeId,
    pub graph: Graph,
    pub phase: Phase,
    pub current: Option<NodeId>,
    /// Neighbors of current that were handled this round.
    pub resolved: Vec<NodeId>,
    /// Neighbors of current that still need a `set_label`.
    pub pending: Vec<NodeId>,
    pub finished: bool,
    pub table: LabelTable,
    pub history: Vec<HistoryEntry>,
}

fn fmt_node(n: Option<&NodeId>) -> String {
    n.map_or_else(|| "-".to_string(), ToString::to_string)
}

impl Session {
    /// Opens a worksheet with the first step already done: origin shaded at
    /// dist 0 and each of its neighbors labelled with the edge cost.
    pub fn start(
        id: impl Into<String>,
        graph: Arc<Graph>,
        origin: &str,
    ) -> Result<Session, SessionError> {
        let o = graph.index_of(origin)?;
        let mut slots = vec![Slot::default(); graph.node_count()];
        slots[o].dist = Some(Cost::ZERO);
        slots[o].shaded = true;
        relax(&mut slots, &graph, o);
        let mut session = Session {
            id: id.into(),
            graph,
            origin: o,
            slots,
            phase: Phase::Selecting,
            current: None,
            resolved: Vec::new(),
            finished: false,
            history: Vec::new(),
        };
        session.phase = session.idle_phase();
        Ok(session)
    }

    /// Rebuilds a session by submitting `moves` in order. Fails unless every
    /// move is accepted.
    pub fn replay(
        id: impl Into<String>,
        graph: Arc<Graph>,
        origin: &str,
        moves: impl IntoIterator<Item = Move>,
    ) -> Result<Session, SessionError> {
        let mut session = Session::start(id, graph, origin)?;
        for (i, mv) in moves.into_iter().enumerate() {
            let verdict = session.submit(mv)?;
            if !verdict.accepted {
                return Err(SessionError::MalformedMove(format!(
                    "replayed move {i} was rejected: {}",
                    verdict.explanation
                )));
            }
        }
        Ok(session)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn origin(&self) -> &NodeId {
        self.graph.id(self.origin)
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn current(&self) -> Option<&NodeId> {
        self.current.map(|c| self.graph.id(c))
    }

    pub fn is_finished(&self) -> bool {
        self.finished
    }

    pub fn history(&self) -> &[HistoryEntry] {
        &self.history
    }

    pub fn moves(&self) -> impl Iterator<Item = &Move> {
        self.history.iter().map(|h| &h.mv)
    }

    pub fn table(&self) -> LabelTable {
        table_from_slots(&self.graph, self.origin, &self.slots)
    }

    pub fn state(&self) -> SessionState {
        let (resolved, pending) = match self.current {
            Some(c) => {
                let mut done = Vec::new();
                let mut todo = Vec::new();
                for (adj, &r) in self.graph.adjacent(c).iter().zip(&self.resolved) {
                    let id = self.graph.id(adj.node).clone();
                    if r {
                        done.push(id);
                    } else {
                        todo.push(id);
                    }
                }
                (done, todo)
            }
            None => (Vec::new(), Vec::new()),
        };
        SessionState {
            id: self.id.clone(),
            origin: self.origin().clone(),
            graph: (*self.graph).clone(),
            phase: self.phase,
            current: self.current().cloned(),
            resolved,
            pending,
            finished: self.finished,
            table: self.table(),
            history: self.history.clone(),
        }
    }

    /// The finished worksheet for this session's network and origin,
    /// independent of how far the student has got.
    pub fn reveal_solution(&self) -> ShortestPaths {
        run_dijkstra(&self.graph, self.origin().as_str()).expect("origin belongs to the graph")
    }

    /// Judges `mv`. Accepted moves advance the worksheet and are appended to
    /// the history; rejected moves change nothing.
    pub fn submit(&mut self, mv: Move) -> Result<Verdict, SessionError> {
        mv.check_shape()?;
        if self.phase == Phase::Done && mv.kind != MoveKind::Finish {
            return Err(SessionError::AlreadyDone);
        }
        let verdict = match mv.kind {
            MoveKind::SelectCurrent => self.select_current(mv.node.as_ref().unwrap()),
            MoveKind::SetLabel => self.set_label(
                mv.node.as_ref().unwrap(),
                mv.dist.unwrap(),
                mv.last.as_ref(),
            ),
            MoveKind::ShadeCurrent => self.shade_current(mv.node.as_ref().unwrap()),
            MoveKind::Finish => self.finish(),
        };
        if verdict.accepted {
            self.history.push(HistoryEntry {
                mv,
                verdict: verdict.clone(),
            });
        }
        Ok(verdict)
    }

    /// Every move that would be accepted right now. Empty once finished.
    pub fn correct_moves(&self) -> Vec<Move> {
        match self.phase {
            Phase::Selecting => self
                .lowest_unshaded()
                .into_iter()
                .map(|i| Move::select(self.graph.id(i).clone()))
                .collect(),
            Phase::Relaxing => {
                let c = self.current.expect("relaxing has a current node");
                let labels: Vec<Move> = self
                    .graph
                    .adjacent(c)
                    .iter()
                    .zip(&self.resolved)
                    .filter(|(_, &r)| !r)
                    .map(|(adj, _)| {
                        let (dist, last, _) = self.expected_label(c, adj.node, adj.cost);
                        Move::set_label(
                            self.graph.id(adj.node).clone(),
                            dist.value(),
                            last.map(|l| self.graph.id(l).clone()),
                        )
                    })
                    .collect();
                if labels.is_empty() {
                    vec![Move::shade(self.graph.id(c).clone())]
                } else {
                    labels
                }
            }
            Phase::Done if !self.finished => vec![Move::finish()],
            Phase::Done => Vec::new(),
        }
    }

    fn idle_phase(&self) -> Phase {
        if self.lowest_unshaded().is_empty() {
            Phase::Done
        } else {
            Phase::Selecting
        }
    }

    /// Unshaded nodes tied at the lowest non-blank dist.
    fn lowest_unshaded(&self) -> Vec<usize> {
        let open = || {
            self.slots
                .iter()
                .enumerate()
                .filter_map(|(i, s)| (!s.shaded).then_some((i, s.dist?)))
        };
        let Some(min) = open().map(|(_, d)| d).min() else {
            return Vec::new();
        };
        open().filter(|&(_, d)| d == min).map(|(i, _)| i).collect()
    }

    fn list(&self, nodes: &[usize]) -> String {
        let names: Vec<&str> = nodes.iter().map(|&i| self.graph.id(i).as_str()).collect();
        names.join(" or ")
    }

    /// The label `node` should carry after relaxing across the edge from
    /// `current`, and whether that is an update.
    fn expected_label(
        &self,
        current: usize,
        node: usize,
        cost: Cost,
    ) -> (Cost, Option<usize>, bool) {
        let candidate = self.slots[current].dist.expect("current has a dist") + cost;
        let slot = &self.slots[node];
        match slot.dist {
            Some(d) if candidate >= d => (d, slot.last, false),
            _ => (candidate, Some(current), true),
        }
    }

    fn select_current(&mut self, node: &NodeId) -> Verdict {
        if let Some(c) = self.current {
            return Verdict::reject(
                format!(
                    "{} is still the current node: handle its neighbors and shade it first",
                    self.graph.id(c)
                ),
                None,
            );
        }
        let Ok(n) = self.graph.index_of(node.as_str()) else {
            return Verdict::reject(format!("there is no node {node}"), None);
        };
        let lowest = self.lowest_unshaded();
        let hint = Some(format!("select {}", self.list(&lowest)));
        let slot = self.slots[n];
        if slot.shaded {
            return Verdict::reject(format!("{node} is already shaded"), hint);
        }
        let Some(dist) = slot.dist else {
            return Verdict::reject(
                format!("{node} has no dist yet; blank nodes cannot be chosen"),
                hint,
            );
        };
        if !lowest.contains(&n) {
            let best = self.slots[lowest[0]].dist.unwrap();
            return Verdict::reject(
                format!(
                    "{node} has dist {dist}, but {} has the lower dist {best}",
                    self.list(&lowest)
                ),
                hint,
            );
        }

        self.current = Some(n);
        self.resolved = vec![false; self.graph.adjacent(n).len()];
        self.phase = Phase::Relaxing;
        let mut why = format!("{node} has the lowest dist ({dist}) among unshaded nodes");
        if lowest.len() > 1 {
            write!(why, "; it ties with {}, so any of them may be chosen", {
                let others: Vec<usize> = lowest.into_iter().filter(|&i| i != n).collect();
                self.list(&others)
            })
            .unwrap();
        }
        Verdict::accept(why)
    }

    fn set_label(&mut self, node: &NodeId, dist: f64, last: Option<&NodeId>) -> Verdict {
        let Some(c) = self.current else {
            return Verdict::reject("choose a current node before updating labels", None);
        };
        let current = self.graph.id(c).clone();
        let Some(pos) = self
            .graph
            .adjacent(c)
            .iter()
            .position(|a| self.graph.id(a.node) == node)
        else {
            return Verdict::reject(
                format!("{node} is not a neighbor of current node {current}"),
                None,
            );
        };
        if self.resolved[pos] {
            return Verdict::reject(
                format!("{node} was already handled for current node {current}"),
                None,
            );
        }

        let adj = self.graph.adjacent(c)[pos];
        let (want_dist, want_last, update) = self.expected_label(c, adj.node, adj.cost);
        let base = self.slots[c].dist.unwrap();
        let candidate = base + adj.cost;
        let want_last_id = want_last.map(|l| self.graph.id(l).clone());
        let expected = format!("dist {want_dist}, last {}", fmt_node(want_last_id.as_ref()));
        let reasoning = match self.slots[adj.node].dist {
            None => format!(
                "{current}'s dist {base} plus edge cost {} gives {candidate}, and {node} had no dist yet",
                adj.cost
            ),
            Some(old) if update => format!(
                "{current}'s dist {base} plus edge cost {} gives {candidate}, which is smaller than {node}'s dist {old}",
                adj.cost
            ),
            Some(old) => format!(
                "{current}'s dist {base} plus edge cost {} gives {candidate}, which is not smaller than {node}'s dist {old}, so the label stays",
                adj.cost
            ),
        };

        if dist != want_dist.value() || last != want_last_id.as_ref() {
            return Verdict::reject(
                format!(
                    "{reasoning}; you entered dist {dist}, last {}",
                    fmt_node(last)
                ),
                Some(expected),
            );
        }

        if update {
            let slot = &mut self.slots[adj.node];
            slot.dist = Some(want_dist);
            slot.last = Some(c);
            slot.via = Some(adj.edge);
        }
        self.resolved[pos] = true;
        Verdict::accept(format!("{reasoning}: {node} is {expected}"))
    }

    fn shade_current(&mut self, node: &NodeId) -> Verdict {
        let Some(c) = self.current else {
            return Verdict::reject("there is no current node to shade", None);
        };
        if self.graph.id(c) != node {
            return Verdict::reject(
                format!("only the current node {} can be shaded", self.graph.id(c)),
                Some(format!("shade {}", self.graph.id(c))),
            );
        }
        let pending: Vec<usize> = self
            .graph
            .adjacent(c)
            .iter()
            .zip(&self.resolved)
            .filter(|(_, &r)| !r)
            .map(|(a, _)| a.node)
            .collect();
        if !pending.is_empty() {
            let names: Vec<&str> = pending.iter().map(|&i| self.graph.id(i).as_str()).collect();
            return Verdict::reject(
                format!("neighbors of {node} still to handle: {}", names.join(", ")),
                None,
            );
        }

        self.slots[c].shaded = true;
        self.current = None;
        self.resolved.clear();
        self.phase = self.idle_phase();
        let mut why = format!("every neighbor of {node} has been handled, so its dist is final");
        if self.phase == Phase::Done {
            why.push_str("; no unshaded node has a dist left");
        }
        Verdict::accept(why)
    }

    fn finish(&mut self) -> Verdict {
        if self.phase != Phase::Done {
            let open = self.lowest_unshaded();
            return Verdict::reject(
                format!(
                    "unshaded nodes with a dist remain, e.g. {}",
                    self.list(&open)
                ),
                None,
            );
        }
        if self.finished {
            return Verdict::reject("the session is already finished", None);
        }
        self.finished = true;
        Verdict::accept(
            "all reachable nodes are shaded; the last edges form a shortest-path spanning tree",
        )
    }
}
