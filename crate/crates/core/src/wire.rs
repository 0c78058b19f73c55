//! JSON wire formats. Every number is an exact rational written `"p/q"`
//! (or `"p"`), never a float.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::chords::{ChordSolution, EvidenceReport};
use crate::cover::{ClosedPath, Traversal};
use crate::error::{ChordError, Result};
use crate::game::{Board, DotStatus, GameConfig, GameState, LossWitness, Player};
use crate::homotopy::{MoveSchedule, Tip, TipMove};
use crate::interval::{CommonChord, Interval};
use crate::metric::{ClosedSet, ConnSubset, Dir, EdgeId, EdgeSegment, GraphPoint, MetricGraph};
use crate::partition::PartitionCertificate;
use crate::rational::{self, RatStr};
use crate::step::{Step1d, StepFunction};

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("wire types always serialize")
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| ChordError::Parse(e.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub id: String,
    pub ends: [String; 2],
}

impl GraphJson {
    pub fn from_graph(g: &MetricGraph) -> Self {
        GraphJson {
            vertices: g.vertex_names().to_vec(),
            edges: g
                .edges()
                .map(|e| EdgeJson {
                    id: g.edge_name(e).to_string(),
                    ends: [g.vertex_name(g.tail(e)).to_string(), g.vertex_name(g.head(e)).to_string()],
                })
                .collect(),
        }
    }

    pub fn to_graph(&self) -> Result<MetricGraph> {
        MetricGraph::new(
            self.vertices.iter().cloned(),
            self.edges.iter().map(|e| (e.id.clone(), e.ends[0].clone(), e.ends[1].clone())),
        )
    }
}

pub fn parse_graph(text: &str) -> Result<MetricGraph> {
    from_json::<GraphJson>(text)?.to_graph()
}

fn edge_named(g: &MetricGraph, name: &str) -> Result<EdgeId> {
    g.edge_by_name(name).ok_or_else(|| ChordError::Parse(format!("unknown edge {name:?}")))
}

/// `{"edge": [["lo", "hi"], ...]}`. A vertex not reached by any segment is
/// written as a zero-length segment at the matching end of an incident edge.
pub type SubsetJson = BTreeMap<String, Vec<[RatStr; 2]>>;

pub fn subset_to_json(g: &MetricGraph, s: &ClosedSet) -> SubsetJson {
    let mut out = SubsetJson::new();
    for seg in s.segments() {
        out.entry(g.edge_name(seg.edge).to_string()).or_default().push([RatStr(seg.lo), RatStr(seg.hi)]);
    }
    let implied = ClosedSet::from_segments(g, s.segments()).expect("segments of a valid set");
    for &v in s.vertices().difference(implied.vertices()) {
        let e = g.incident(v)[0];
        let t = if g.tail(e) == v { rational::zero() } else { rational::one() };
        out.entry(g.edge_name(e).to_string()).or_default().push([RatStr(t.clone()), RatStr(t)]);
    }
    out
}

pub fn subset_from_json(g: &MetricGraph, j: &SubsetJson) -> Result<ClosedSet> {
    let mut segs = Vec::new();
    for (name, list) in j {
        let e = edge_named(g, name)?;
        segs.extend(list.iter().map(|[lo, hi]| EdgeSegment::new(e, lo.0.clone(), hi.0.clone())));
    }
    ClosedSet::from_segments(g, segs)
}

pub fn conn_subset_from_json(g: &MetricGraph, j: &SubsetJson) -> Result<ConnSubset> {
    ConnSubset::new(g, subset_from_json(g, j)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceJson {
    pub from: RatStr,
    pub to: RatStr,
    pub value: RatStr,
}

pub fn step1d_to_json(f: &Step1d) -> Vec<PieceJson> {
    f.pieces()
        .map(|(a, b, v)| PieceJson { from: RatStr(a.clone()), to: RatStr(b.clone()), value: RatStr(v.clone()) })
        .collect()
}

pub fn step1d_from_json(pieces: &[PieceJson]) -> Result<Step1d> {
    let triples: Vec<_> = pieces.iter().map(|p| (p.from.0.clone(), p.to.0.clone(), p.value.0.clone())).collect();
    Step1d::from_pieces(&triples)
}

/// `{"edge": [{"from", "to", "value"}, ...]}`; edges left out are zero.
pub type StepJson = BTreeMap<String, Vec<PieceJson>>;

pub fn step_to_json(g: &MetricGraph, f: &StepFunction) -> StepJson {
    g.edges().map(|e| (g.edge_name(e).to_string(), step1d_to_json(f.on_edge(e)))).collect()
}

pub fn step_from_json(g: &MetricGraph, j: &StepJson) -> Result<StepFunction> {
    for name in j.keys() {
        edge_named(g, name)?;
    }
    let per_edge = g
        .edges()
        .map(|e| match j.get(g.edge_name(e)) {
            Some(p) => step1d_from_json(p),
            None => Ok(Step1d::constant(rational::one(), rational::zero())),
        })
        .collect::<Result<Vec<_>>>()?;
    StepFunction::new(g, per_edge)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TipJson {
    pub edge: String,
    pub t: RatStr,
    /// `"+"` for increasing `t`, `"-"` for decreasing.
    pub dir: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveJson {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grow: Option<TipJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shrink: Option<TipJson>,
    pub dt: RatStr,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduleJson {
    pub start: SubsetJson,
    pub moves: Vec<MoveJson>,
}

fn tip_to_json(g: &MetricGraph, tip: &Tip) -> TipJson {
    TipJson {
        edge: g.edge_name(tip.edge).to_string(),
        t: RatStr(tip.t.clone()),
        dir: if tip.dir == Dir::Up { "+" } else { "-" }.to_string(),
    }
}

fn tip_from_json(g: &MetricGraph, j: &TipJson) -> Result<Tip> {
    let dir = match j.dir.as_str() {
        "+" => Dir::Up,
        "-" => Dir::Down,
        other => return Err(ChordError::Parse(format!("tip direction {other:?} is not + or -"))),
    };
    Ok(Tip::new(edge_named(g, &j.edge)?, j.t.0.clone(), dir))
}

pub fn move_to_json(g: &MetricGraph, m: &TipMove) -> MoveJson {
    let dt = RatStr(m.dt().clone());
    match m {
        TipMove::Grow { tip, .. } => MoveJson { kind: "grow".into(), grow: Some(tip_to_json(g, tip)), shrink: None, dt },
        TipMove::Shrink { tip, .. } => MoveJson { kind: "shrink".into(), grow: None, shrink: Some(tip_to_json(g, tip)), dt },
        TipMove::Pair { grow, shrink, .. } => MoveJson {
            kind: "pair".into(),
            grow: Some(tip_to_json(g, grow)),
            shrink: Some(tip_to_json(g, shrink)),
            dt,
        },
    }
}

pub fn move_from_json(g: &MetricGraph, j: &MoveJson) -> Result<TipMove> {
    let need = |t: &Option<TipJson>, what: &str| {
        t.as_ref()
            .ok_or_else(|| ChordError::Parse(format!("a {} move needs a {what} tip", j.kind)))
            .and_then(|t| tip_from_json(g, t))
    };
    let dt = j.dt.0.clone();
    Ok(match j.kind.as_str() {
        "grow" => TipMove::Grow { tip: need(&j.grow, "grow")?, dt },
        "shrink" => TipMove::Shrink { tip: need(&j.shrink, "shrink")?, dt },
        "pair" => TipMove::Pair { grow: need(&j.grow, "grow")?, shrink: need(&j.shrink, "shrink")?, dt },
        other => return Err(ChordError::Parse(format!("unknown move kind {other:?}"))),
    })
}

pub fn schedule_to_json(g: &MetricGraph, s: &MoveSchedule) -> ScheduleJson {
    ScheduleJson {
        start: subset_to_json(g, s.start()),
        moves: s.moves().iter().map(|m| move_to_json(g, m)).collect(),
    }
}

pub fn schedule_from_json(g: &MetricGraph, j: &ScheduleJson) -> Result<MoveSchedule> {
    let moves = j.moves.iter().map(|m| move_from_json(g, m)).collect::<Result<Vec<_>>>()?;
    MoveSchedule::new(g, conn_subset_from_json(g, &j.start)?, moves)
}

/// A closed path as space-separated edge names, `-name` for a traversal
/// against the edge's orientation.
pub fn path_to_json(g: &MetricGraph, p: &ClosedPath) -> String {
    p.steps()
        .iter()
        .map(|t| format!("{}{}", if t.forward { "" } else { "-" }, g.edge_name(t.edge)))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn path_from_json(g: &MetricGraph, text: &str) -> Result<ClosedPath> {
    let steps = text
        .split_whitespace()
        .map(|tok| match tok.strip_prefix('-') {
            Some(name) => Ok(Traversal::new(edge_named(g, name)?, false)),
            None => Ok(Traversal::new(edge_named(g, tok)?, true)),
        })
        .collect::<Result<Vec<_>>>()?;
    ClosedPath::new(g, steps)
}

pub fn cover_to_json(g: &MetricGraph, paths: &[ClosedPath]) -> Vec<String> {
    paths.iter().map(|p| path_to_json(g, p)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionJson {
    pub subset: SubsetJson,
    pub measure: RatStr,
    pub integral: RatStr,
    pub cover: Vec<String>,
    pub schedule_time: Option<RatStr>,
}

impl SolutionJson {
    pub fn new(g: &MetricGraph, s: &ChordSolution) -> Self {
        SolutionJson {
            subset: subset_to_json(g, &s.subset),
            measure: RatStr(s.measure.clone()),
            integral: RatStr(s.integral.clone()),
            cover: cover_to_json(g, &s.cover),
            schedule_time: s.schedule_time.clone().map(RatStr),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub subsets: Vec<SubsetJson>,
    pub r: RatStr,
    pub n: u32,
}

impl CertificateJson {
    pub fn new(g: &MetricGraph, c: &PartitionCertificate) -> Self {
        CertificateJson {
            subsets: c.subsets.iter().map(|s| subset_to_json(g, s)).collect(),
            r: RatStr(c.r.clone()),
            n: c.n,
        }
    }

    pub fn to_certificate(&self, g: &MetricGraph) -> Result<PartitionCertificate> {
        Ok(PartitionCertificate {
            subsets: self.subsets.iter().map(|s| conn_subset_from_json(g, s)).collect::<Result<_>>()?,
            r: self.r.0.clone(),
            n: self.n,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChordJson {
    pub interval: Interval,
    pub value: RatStr,
}

impl From<&CommonChord> for ChordJson {
    fn from(c: &CommonChord) -> Self {
        ChordJson { interval: c.interval.clone(), value: RatStr(c.value.clone()) }
    }
}

pub type EvidenceJson = EvidenceReport;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointJson {
    Vertex { vertex: String },
    Edge { edge: String, t: RatStr },
}

pub fn point_from_json(g: &MetricGraph, j: &PointJson) -> Result<GraphPoint> {
    match j {
        PointJson::Vertex { vertex } => g
            .vertex_by_name(vertex)
            .map(GraphPoint::Vertex)
            .ok_or_else(|| ChordError::Parse(format!("unknown vertex {vertex:?}"))),
        PointJson::Edge { edge, t } => GraphPoint::on_edge(g, edge_named(g, edge)?, t.0.clone()),
    }
}

pub fn point_to_json(g: &MetricGraph, p: &GraphPoint) -> PointJson {
    match p {
        GraphPoint::Vertex(v) => PointJson::Vertex { vertex: g.vertex_name(*v).to_string() },
        GraphPoint::Interior { edge, t } => PointJson::Edge { edge: g.edge_name(*edge).to_string(), t: RatStr(t.clone()) },
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BoardJson {
    Circle { dots: usize },
    Graph { graph: GraphJson, dots: Vec<PointJson> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameConfigJson {
    pub board: BoardJson,
    #[serde(rename = "N")]
    pub per_player: usize,
    pub m: usize,
    pub n: usize,
}

impl GameConfigJson {
    pub fn new(c: &GameConfig) -> Self {
        let board = match &c.board {
            Board::Circle { dots } => BoardJson::Circle { dots: *dots },
            Board::Graph { graph, dots } => BoardJson::Graph {
                graph: GraphJson::from_graph(graph),
                dots: dots.iter().map(|d| point_to_json(graph, d)).collect(),
            },
        };
        GameConfigJson { board, per_player: c.per_player, m: c.max_per_turn, n: c.half_window }
    }

    pub fn to_config(&self) -> Result<GameConfig> {
        let board = match &self.board {
            BoardJson::Circle { dots } => Board::Circle { dots: *dots },
            BoardJson::Graph { graph, dots } => {
                let graph = graph.to_graph()?;
                let dots = dots.iter().map(|d| point_from_json(&graph, d)).collect::<Result<_>>()?;
                Board::Graph { graph, dots }
            }
        };
        GameConfig::new(board, self.per_player, self.m, self.n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub dots: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arc_start: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subset: Option<SubsetJson>,
    pub loser: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameStateJson {
    pub version: u64,
    pub statuses: Vec<DotStatus>,
    pub turn: u8,
    pub counts: [usize; 2],
    pub finished: bool,
    pub winner: Option<u8>,
    pub witness: Option<WitnessJson>,
}

impl GameStateJson {
    pub fn new(config: &GameConfig, state: &GameState, version: u64) -> Self {
        let witness = state.witness.as_ref().map(|w: &LossWitness| WitnessJson {
            dots: w.dots.clone(),
            arc_start: w.arc_start,
            subset: match (&config.board, &w.subset) {
                (Board::Graph { graph, .. }, Some(s)) => Some(subset_to_json(graph, s)),
                _ => None,
            },
            loser: w.loser.number(),
        });
        GameStateJson {
            version,
            statuses: state.statuses.clone(),
            turn: state.turn.number(),
            counts: state.counts,
            finished: state.is_terminal(),
            winner: state.winner().map(Player::number),
            witness,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chords::graph_chord_solve;
    use crate::cover::compute_double_cover;
    use crate::game::{apply_move, figure_eight_board};
    use crate::homotopy::connect_in_xr;
    use crate::partition::construct_partition_1k;
    use crate::rational::q;

    fn reparse<T: Serialize + for<'de> Deserialize<'de> + PartialEq + std::fmt::Debug>(v: &T) {
        let text = to_json(v);
        let back: T = from_json(&text).unwrap();
        assert_eq!(&back, v);
        assert_eq!(to_json(&back), text);
    }

    #[test]
    fn graph_format() {
        let text = r#"{"vertices":["u","v"],"edges":[{"id":"a","ends":["u","v"]},{"id":"b","ends":["v","v"]}]}"#;
        let g = parse_graph(text).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(to_json(&GraphJson::from_graph(&g)), text);
        assert!(parse_graph(r#"{"vertices":["u"],"edges":[{"id":"a","ends":["u","w"]}]}"#).is_err());
        assert!(matches!(parse_graph("{"), Err(ChordError::Parse(_))));
    }

    #[test]
    fn subsets_round_trip() {
        let g = MetricGraph::theta();
        let a = g.edge_by_name("a").unwrap();
        let text = r#"{"a":[["0","1/3"],["1/2","1"]],"b":[["1/4","1/4"]]}"#;
        let s = subset_from_json(&g, &from_json(text).unwrap()).unwrap();
        assert_eq!(s.segments_on(a).len(), 2);
        assert_eq!(subset_to_json(&g, &s), from_json::<SubsetJson>(text).unwrap());
        let v = ClosedSet::point(&g, &GraphPoint::Vertex(g.tail(a)));
        let j = subset_to_json(&g, &v);
        assert_eq!(subset_from_json(&g, &j).unwrap(), v);
        assert!(subset_from_json(&g, &from_json(r#"{"z":[["0","1"]]}"#).unwrap()).is_err());
    }

    #[test]
    fn step_functions_round_trip() {
        let g = MetricGraph::triangle();
        let text = r#"{"a":[{"from":"0","to":"1/2","value":"2"},{"from":"1/2","to":"1","value":"-1"}]}"#;
        let f = step_from_json(&g, &from_json(text).unwrap()).unwrap();
        assert_eq!(crate::step::integral_graph(&f), q(1, 2));
        let j = step_to_json(&g, &f);
        assert_eq!(step_from_json(&g, &j).unwrap(), f);
        reparse(&j);
    }

    #[test]
    fn schedules_round_trip() {
        let g = MetricGraph::triangle();
        let a = ConnSubset::segment(&g, EdgeId(0), q(0, 1), q(1, 2)).unwrap();
        let b = ConnSubset::segment(&g, EdgeId(1), q(1, 4), q(3, 4)).unwrap();
        let s = connect_in_xr(&g, &a, &b, &q(1, 2)).unwrap();
        let j = schedule_to_json(&g, &s);
        reparse(&j);
        let back = schedule_from_json(&g, &j).unwrap();
        assert_eq!(back.moves(), s.moves());
        assert_eq!(back.end(), s.end());
        let text = to_json(&j.moves[0]);
        assert!(text.contains(r#""dir":"+""#) || text.contains(r#""dir":"-""#));
    }

    #[test]
    fn covers_use_edge_names() {
        let g = MetricGraph::theta();
        let cover = compute_double_cover(&g).unwrap();
        let names = cover_to_json(&g, cover.paths());
        assert_eq!(names, ["a -c b -c", "a -b"]);
        let back: Vec<ClosedPath> = names.iter().map(|p| path_from_json(&g, p).unwrap()).collect();
        assert_eq!(back, cover.paths());
    }

    #[test]
    fn solutions_and_certificates_reparse() {
        let g = MetricGraph::theta();
        let f = StepFunction::per_edge_constant(&g, &[q(1, 1), q(-1, 1), q(0, 1)]).unwrap();
        let sol = SolutionJson::new(&g, &graph_chord_solve(&g, &f, &q(1, 2)).unwrap());
        assert_eq!(sol.integral.0, q(0, 1));
        reparse(&sol);
        let cert = CertificateJson::new(&g, &construct_partition_1k(&g, 2).unwrap());
        reparse(&cert);
        assert_eq!(cert.to_certificate(&g).unwrap(), construct_partition_1k(&g, 2).unwrap());
    }

    #[test]
    fn game_payloads() {
        let c = GameConfig::new(figure_eight_board(2), 2, 1, 1).unwrap();
        let j = GameConfigJson::new(&c);
        reparse(&j);
        assert_eq!(j.to_config().unwrap(), c);
        let circle: GameConfigJson = from_json(r#"{"board":{"kind":"circle","dots":4},"N":2,"m":1,"n":1}"#).unwrap();
        let cc = circle.to_config().unwrap();
        let s = apply_move(&cc, &GameState::new(&cc), &[0]).unwrap();
        let s = apply_move(&cc, &s, &[1]).unwrap();
        let sj = GameStateJson::new(&cc, &s, 2);
        assert_eq!((sj.winner, sj.finished), (Some(1), true));
        assert!(to_json(&sj).contains(r#""statuses":["p1","p2","uncrossed","uncrossed"]"#));
        reparse(&sj);
        let gs = apply_move(&c, &GameState::new(&c), &[1]).unwrap();
        let gs = apply_move(&c, &gs, &[2]).unwrap();
        let gj = GameStateJson::new(&c, &gs, 2);
        assert!(gj.witness.as_ref().unwrap().subset.is_some());
        reparse(&gj);
    }
}
