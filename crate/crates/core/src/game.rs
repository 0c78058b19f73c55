//! The dot-crossing parity game on circles and Euler graphs.
//!
//! Two players alternately cross out between 1 and `m` dots. Once a player
//! has crossed `N` dots the other crosses the rest. The first player whose
//! completed turn creates a connected region holding exactly `2n` dots, all
//! crossed, `n` by each player, loses.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{ChordError, Result};
use crate::metric::{ConnSubset, EdgeId, EdgeSegment, GraphPoint, MetricGraph, VertexId};
use crate::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Player {
    One,
    Two,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::One => Player::Two,
            Player::Two => Player::One,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Player::One => 0,
            Player::Two => 1,
        }
    }

    pub fn number(self) -> u8 {
        self.index() as u8 + 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DotStatus {
    Uncrossed,
    P1,
    P2,
}

impl DotStatus {
    fn of(p: Player) -> DotStatus {
        match p {
            Player::One => DotStatus::P1,
            Player::Two => DotStatus::P2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Board {
    /// `dots` equally spaced dots on a circle, numbered in cyclic order.
    Circle { dots: usize },
    /// Dots at distinct interior points of an Euler graph.
    Graph { graph: MetricGraph, dots: Vec<GraphPoint> },
}

impl Board {
    pub fn dot_count(&self) -> usize {
        match self {
            Board::Circle { dots } => *dots,
            Board::Graph { dots, .. } => dots.len(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameConfig {
    pub board: Board,
    /// Dots per player, `N`.
    pub per_player: usize,
    /// Most dots per turn, `m`.
    pub max_per_turn: usize,
    /// Half-size of a losing region, `n`.
    pub half_window: usize,
}

impl GameConfig {
    pub fn new(board: Board, per_player: usize, max_per_turn: usize, half_window: usize) -> Result<Self> {
        let big_n = per_player;
        if big_n == 0 || board.dot_count() != 2 * big_n {
            return Err(ChordError::precondition("the board must carry exactly 2N dots, N >= 1"));
        }
        if !(1..=big_n).contains(&max_per_turn) || !(1..=big_n).contains(&half_window) {
            return Err(ChordError::precondition("m and n must lie in [1, N]"));
        }
        if let Board::Graph { graph, dots } = &board {
            if !graph.is_euler() {
                return Err(ChordError::precondition("graph boards must be Euler graphs"));
            }
            let distinct: BTreeSet<_> = dots.iter().collect();
            if distinct.len() != dots.len() || dots.iter().any(|d| d.vertex().is_some()) {
                return Err(ChordError::precondition("dots must be distinct interior edge points"));
            }
        }
        Ok(GameConfig { board, per_player, max_per_turn, half_window })
    }

    /// A circle with `2N` dots.
    pub fn circle(per_player: usize, max_per_turn: usize, half_window: usize) -> Result<Self> {
        Self::new(Board::Circle { dots: 2 * per_player }, per_player, max_per_turn, half_window)
    }
}

/// A region of `2n` crossed dots, `n` per player.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LossWitness {
    /// Dot indices in increasing order.
    pub dots: Vec<usize>,
    /// On circles: first dot of the arc in cyclic order.
    pub arc_start: Option<usize>,
    /// On graph boards: a connected subset holding exactly these dots.
    pub subset: Option<ConnSubset>,
    pub loser: Player,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameState {
    pub statuses: Vec<DotStatus>,
    pub turn: Player,
    pub counts: [usize; 2],
    pub witness: Option<LossWitness>,
    pub history: Vec<(Player, Vec<usize>)>,
}

impl GameState {
    pub fn new(config: &GameConfig) -> Self {
        GameState {
            statuses: vec![DotStatus::Uncrossed; config.board.dot_count()],
            turn: Player::One,
            counts: [0, 0],
            witness: None,
            history: Vec::new(),
        }
    }

    pub fn is_terminal(&self) -> bool {
        self.witness.is_some() || self.statuses.iter().all(|&s| s != DotStatus::Uncrossed)
    }

    pub fn winner(&self) -> Option<Player> {
        self.witness.as_ref().map(|w| w.loser.other())
    }

    fn uncrossed(&self) -> Vec<usize> {
        (0..self.statuses.len()).filter(|&i| self.statuses[i] == DotStatus::Uncrossed).collect()
    }
}

fn max_take(config: &GameConfig, state: &GameState) -> usize {
    let left = config.per_player - state.counts[state.turn.index()];
    config.max_per_turn.min(left).min(state.uncrossed().len())
}

/// All moves open to the player to move: sets of 1 to `m` uncrossed dots,
/// never taking the mover past `N`.
pub fn legal_moves(config: &GameConfig, state: &GameState) -> Result<Vec<Vec<usize>>> {
    if state.is_terminal() {
        return Err(ChordError::precondition("the game is over"));
    }
    let free = state.uncrossed();
    let mut out = Vec::new();
    for size in 1..=max_take(config, state) {
        combinations(&free, size, &mut |c| out.push(c.to_vec()));
    }
    Ok(out)
}

fn combinations(items: &[usize], k: usize, visit: &mut dyn FnMut(&[usize])) {
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            visit(cur);
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, visit);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut Vec::new(), visit);
}

/// Plays `dots` for the player to move and evaluates the position.
pub fn apply_move(config: &GameConfig, state: &GameState, dots: &[usize]) -> Result<GameState> {
    if state.is_terminal() {
        return Err(ChordError::precondition("the game is over"));
    }
    let mut picked = dots.to_vec();
    picked.sort_unstable();
    picked.dedup();
    if picked.len() != dots.len() || picked.is_empty() {
        return Err(ChordError::precondition("a move crosses one or more distinct dots"));
    }
    if picked.len() > max_take(config, state) {
        return Err(ChordError::precondition(format!(
            "at most {} dots may be crossed this turn",
            max_take(config, state)
        )));
    }
    if let Some(&d) = picked.iter().find(|&&d| state.statuses.get(d) != Some(&DotStatus::Uncrossed)) {
        return Err(ChordError::precondition(format!("dot {d} is not available")));
    }
    let mover = state.turn;
    let mut next = state.clone();
    for &d in &picked {
        next.statuses[d] = DotStatus::of(mover);
    }
    next.counts[mover.index()] += picked.len();
    next.history.push((mover, picked));
    next.turn = if next.counts[mover.other().index()] == config.per_player {
        mover
    } else {
        mover.other()
    };
    next.witness = detect_loss(config, &next.statuses, mover);
    Ok(next)
}

/// The first balanced region of `2n` crossed dots, if any, in a fixed scan
/// order, charged to `loser`.
pub fn detect_loss(config: &GameConfig, statuses: &[DotStatus], loser: Player) -> Option<LossWitness> {
    let n = config.half_window;
    match &config.board {
        Board::Circle { dots } => {
            let total = *dots;
            let starts = if 2 * n == total { 1 } else { total };
            (0..starts).find_map(|i| {
                let window: Vec<usize> = (0..2 * n).map(|j| (i + j) % total).collect();
                let p1 = window.iter().filter(|&&d| statuses[d] == DotStatus::P1).count();
                let p2 = window.iter().filter(|&&d| statuses[d] == DotStatus::P2).count();
                (p1 == n && p2 == n).then(|| {
                    let mut dots = window;
                    dots.sort_unstable();
                    LossWitness { dots, arc_start: Some(i), subset: None, loser }
                })
            })
        }
        Board::Graph { graph, dots } => {
            let layout = DotLayout::new(graph, dots);
            let by = |s: DotStatus| (0..statuses.len()).filter(|&i| statuses[i] == s).collect::<Vec<_>>();
            let (p1, p2) = (by(DotStatus::P1), by(DotStatus::P2));
            let mut found = None;
            combinations(&p1, n, &mut |a| {
                if found.is_some() {
                    return;
                }
                combinations(&p2, n, &mut |b| {
                    if found.is_some() {
                        return;
                    }
                    let mut pick: Vec<usize> = a.iter().chain(b).copied().collect();
                    pick.sort_unstable();
                    if let Some(subset) = layout.region_holding(graph, &pick) {
                        found = Some(LossWitness { dots: pick, arc_start: None, subset: Some(subset), loser });
                    }
                });
            });
            found
        }
    }
}

/// Dots and vertices as nodes, with links between consecutive nodes along
/// each edge.
struct DotLayout {
    /// Per edge: node sequence from tail to head with edge parameters.
    chains: Vec<(EdgeId, Vec<(Node, Rational)>)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Node {
    Vertex(VertexId),
    Dot(usize),
}

impl DotLayout {
    fn new(g: &MetricGraph, dots: &[GraphPoint]) -> Self {
        let mut on_edge: BTreeMap<EdgeId, Vec<(Rational, usize)>> = BTreeMap::new();
        for (i, d) in dots.iter().enumerate() {
            if let GraphPoint::Interior { edge, t } = d {
                on_edge.entry(*edge).or_default().push((t.clone(), i));
            }
        }
        let chains = g
            .edges()
            .map(|e| {
                let mut chain = vec![(Node::Vertex(g.tail(e)), Rational::zero())];
                let mut list = on_edge.remove(&e).unwrap_or_default();
                list.sort();
                chain.extend(list.into_iter().map(|(t, i)| (Node::Dot(i), t)));
                chain.push((Node::Vertex(g.head(e)), Rational::one()));
                (e, chain)
            })
            .collect();
        DotLayout { chains }
    }

    /// A connected subset containing exactly the dots `pick` (and no other
    /// dot), if one exists.
    fn region_holding(&self, g: &MetricGraph, pick: &[usize]) -> Option<ConnSubset> {
        let allowed = |n: &Node| match n {
            Node::Vertex(_) => true,
            Node::Dot(i) => pick.binary_search(i).is_ok(),
        };
        let mut links: BTreeMap<Node, Vec<Node>> = BTreeMap::new();
        for (_, chain) in &self.chains {
            for w in chain.windows(2) {
                if allowed(&w[0].0) && allowed(&w[1].0) {
                    links.entry(w[0].0).or_default().push(w[1].0);
                    links.entry(w[1].0).or_default().push(w[0].0);
                }
            }
        }
        let root = Node::Dot(*pick.first()?);
        let mut seen = BTreeSet::from([root]);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &v in links.get(&u).into_iter().flatten() {
                if seen.insert(v) {
                    queue.push_back(v);
                }
            }
        }
        if !pick.iter().all(|&i| seen.contains(&Node::Dot(i))) {
            return None;
        }
        let segs = self.chains.iter().flat_map(|(e, chain)| {
            chain
                .windows(2)
                .filter(|w| seen.contains(&w[0].0) && seen.contains(&w[1].0))
                .map(|w| EdgeSegment::new(*e, w[0].1.clone(), w[1].1.clone()))
                .collect::<Vec<_>>()
        });
        let subset = ConnSubset::from_segments(g, segs).ok()?;
        (subset.is_connected(g)).then_some(subset)
    }
}

/// How a winner guarantee was checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GuaranteeMethod {
    /// Every final colouring with `N` dots per player.
    Exhaustive,
    /// Uniformly random legal playouts.
    Playouts,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GuaranteeReport {
    pub method: GuaranteeMethod,
    pub positions: usize,
    pub violations: usize,
    /// First colourings or playout indices without a witness.
    pub examples: Vec<Vec<usize>>,
}

/// Checks that no completed game ends without a loser: exhaustively over all
/// final colourings when `2N <= 8`, otherwise by `playouts` random games.
pub fn winner_guarantee_check(config: &GameConfig, playouts: usize, seed: u64) -> GuaranteeReport {
    if config.board.dot_count() <= 8 {
        exhaustive_check(config)
    } else {
        random_playouts(config, playouts, seed)
    }
}

/// Every colouring of all dots with `N` per player has a witness.
pub fn exhaustive_check(config: &GameConfig) -> GuaranteeReport {
    let total = config.board.dot_count();
    let all: Vec<usize> = (0..total).collect();
    let mut report = GuaranteeReport { method: GuaranteeMethod::Exhaustive, positions: 0, violations: 0, examples: vec![] };
    combinations(&all, config.per_player, &mut |ones| {
        let statuses: Vec<DotStatus> = (0..total)
            .map(|i| if ones.contains(&i) { DotStatus::P1 } else { DotStatus::P2 })
            .collect();
        report.positions += 1;
        if detect_loss(config, &statuses, Player::One).is_none() {
            report.violations += 1;
            if report.examples.len() < 5 {
                report.examples.push(ones.to_vec());
            }
        }
    });
    report
}

/// Plays `count` games with a uniformly random legal mover on both sides.
pub fn random_playouts(config: &GameConfig, count: usize, seed: u64) -> GuaranteeReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = GuaranteeReport { method: GuaranteeMethod::Playouts, positions: 0, violations: 0, examples: vec![] };
    for game in 0..count {
        let mut state = GameState::new(config);
        while !state.is_terminal() {
            let moves = legal_moves(config, &state).expect("game in progress");
            let mv = moves.choose(&mut rng).expect("a game in progress has moves");
            state = apply_move(config, &state, mv).expect("legal move");
        }
        report.positions += 1;
        if state.witness.is_none() {
            report.violations += 1;
            if report.examples.len() < 5 {
                report.examples.push(vec![game]);
            }
        }
    }
    report
}

/// A figure-eight board with `per_loop` equally spaced dots on each loop.
pub fn figure_eight_board(per_loop: usize) -> Board {
    let graph = MetricGraph::figure_eight();
    let k = per_loop as i64;
    let dots = graph
        .edges()
        .flat_map(|e| (0..k).map(move |i| (e, rational::q(2 * i + 1, 2 * k))))
        .map(|(e, t)| GraphPoint::Interior { edge: e, t })
        .collect();
    Board::Graph { graph, dots }
}

/// The circle with `2N` dots as a one-loop graph board.
pub fn circle_as_graph(dots: usize) -> Board {
    let graph = MetricGraph::single_loop();
    let k = dots as i64;
    let dots = (0..k)
        .map(|i| GraphPoint::Interior { edge: EdgeId(0), t: rational::q(2 * i + 1, 2 * k) })
        .collect();
    Board::Graph { graph, dots }
}
