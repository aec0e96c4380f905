//! The win-win driver: order the input along its class, then either find a
//! universal pattern and extract a large witness, or contract along the order
//! and solve exactly.

use std::str::FromStr;

use serde::Serialize;

use crate::budget::Budget;
use crate::contraction::{dyadic_contract, ContractionSequence};
use crate::error::{Error, Result};
use crate::extraction::{
    independent_set_search, polygon_independent_set_extract, polygon_sign_allowed, terrain_halfgraph_extract,
    IndependentSetWitness,
};
use crate::geometry::{
    general_position, interval_graph, intersection_graph, polygon_visibility, terrain_visibility, GridSpec,
    IntervalModel, SegmentScene, SimplePolygon, Terrain,
};
use crate::graph::{adjacency_matrix, BipPattern, Graph, VertexOrder};
use crate::matrix::{find_universal_pattern, PatternOccurrence, Side};
use crate::orders::{interval_lex_order, rdp_lex_dfs_order, segment_global_order, TreeModel};
use crate::structures::{find_semi_induced, StructureWitness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphClass {
    Interval,
    Rdp,
    Terrain,
    Polygon,
    Segments,
}

impl FromStr for GraphClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "interval" => GraphClass::Interval,
            "rdp" => GraphClass::Rdp,
            "terrain" => GraphClass::Terrain,
            "polygon" => GraphClass::Polygon,
            "segments" | "axis_parallel_unit_segments" => GraphClass::Segments,
            _ => return Err(Error::Precondition(format!("unknown class {s:?}"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Param {
    Alpha,
    Beta,
    Lambda,
}

impl FromStr for Param {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "alpha" => Param::Alpha,
            "beta" => Param::Beta,
            "lambda" => Param::Lambda,
            _ => return Err(Error::Precondition(format!("unknown parameter {s:?}"))),
        })
    }
}

/// A scene of one of the supported classes.
#[derive(Debug, Clone)]
pub enum ClassInput {
    Interval(IntervalModel),
    Rdp(TreeModel),
    Terrain(Terrain),
    Polygon(SimplePolygon),
    Segments(SegmentScene),
}

impl ClassInput {
    pub fn class(&self) -> GraphClass {
        match self {
            ClassInput::Interval(_) => GraphClass::Interval,
            ClassInput::Rdp(_) => GraphClass::Rdp,
            ClassInput::Terrain(_) => GraphClass::Terrain,
            ClassInput::Polygon(_) => GraphClass::Polygon,
            ClassInput::Segments(_) => GraphClass::Segments,
        }
    }

    /// Parses a scene file of the given class.
    pub fn parse(class: GraphClass, text: &str) -> Result<Self> {
        Ok(match class {
            GraphClass::Interval => ClassInput::Interval(IntervalModel::parse(text)?),
            GraphClass::Rdp => ClassInput::Rdp(TreeModel::parse(text)?),
            GraphClass::Terrain => ClassInput::Terrain(Terrain::parse(text)?),
            GraphClass::Polygon => ClassInput::Polygon(SimplePolygon::parse(text)?),
            GraphClass::Segments => ClassInput::Segments(SegmentScene::parse(text)?),
        })
    }

    /// The graph and its canonical order for the class.
    pub fn ordered_graph(&self) -> Result<(Graph, VertexOrder)> {
        match self {
            ClassInput::Interval(m) => Ok((interval_graph(m), interval_lex_order(m))),
            ClassInput::Rdp(tm) => {
                let min = tm.minimize()?;
                Ok((tm.graph(), rdp_lex_dfs_order(&min, false)?))
            }
            ClassInput::Terrain(t) => Ok(terrain_visibility(t)),
            ClassInput::Polygon(p) => Ok(polygon_visibility(p)),
            ClassInput::Segments(scene) => {
                if let Some(s) = scene.segments.iter().find(|s| !s.is_horizontal() && !s.is_vertical()) {
                    return Err(Error::Precondition(format!("segment {} is not axis-parallel", s.id)));
                }
                Ok((intersection_graph(scene), segment_order(scene)))
            }
        }
    }
}

/// Segments by first appearance of any of their pieces in the global order
/// of the splitting along a unit grid; identity when no such grid applies.
pub fn segment_order(scene: &SegmentScene) -> VertexOrder {
    let grid = general_position(scene, &GridSpec::unit());
    let Ok(so) = segment_global_order(scene, &grid) else {
        return VertexOrder::identity(scene.len());
    };
    let mut seen = vec![false; scene.len()];
    let mut perm = Vec::with_capacity(scene.len());
    for &v in so.order.perm() {
        let origin = so.splitting.origin[v];
        if !seen[origin] {
            seen[origin] = true;
            perm.push(origin);
        }
    }
    perm.extend((0..scene.len()).filter(|&i| !seen[i]));
    VertexOrder::new(perm).expect("each segment listed once")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    IndependentSet(IndependentSetWitness),
    Structure(StructureWitness),
}

impl Witness {
    pub fn size(&self) -> usize {
        match self {
            Witness::IndependentSet(w) => w.vertices.len(),
            Witness::Structure(w) => w.pattern.t,
        }
    }

    pub fn verify(&self, g: &Graph) -> bool {
        match self {
            Witness::IndependentSet(w) => w.verify(g),
            Witness::Structure(w) => w.verify(g),
        }
    }

    pub fn to_text(&self, g: &Graph) -> String {
        match self {
            Witness::IndependentSet(w) => w.to_text(g),
            Witness::Structure(w) => w.to_text(g),
        }
    }
}

/// Result of an exact solver run. `value` is the exact optimum when it is
/// below the target and a lower bound otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolverAnswer {
    pub value: usize,
    pub witness: Witness,
}

/// Independent set of size `k`, or a maximum one when `alpha < k`.
pub fn solve_alpha(g: &Graph, k: usize, budget: &Budget) -> Result<SolverAnswer> {
    let all: Vec<usize> = (0..g.n()).collect();
    let set = independent_set_search(g, &all, k, budget)?;
    Ok(SolverAnswer { value: set.len(), witness: Witness::IndependentSet(IndependentSetWitness { vertices: set }) })
}

/// Semi-induced `K_{t,t}` for growing `t` up to `k`.
pub fn solve_beta(g: &Graph, k: usize, budget: &Budget) -> Result<SolverAnswer> {
    grow_pattern(g, k, budget, BipPattern::biclique)
}

/// Semi-induced half-graph `H_t` for growing `t` up to `k`.
pub fn solve_lambda(g: &Graph, k: usize, budget: &Budget) -> Result<SolverAnswer> {
    grow_pattern(g, k, budget, BipPattern::half_graph)
}

fn grow_pattern(g: &Graph, k: usize, budget: &Budget, make: fn(usize) -> BipPattern) -> Result<SolverAnswer> {
    let mut best = StructureWitness { pattern: make(0), columns: vec![Vec::new(), Vec::new()] };
    for t in 1..=k {
        match find_semi_induced(g, &make(t), budget)? {
            Some(w) => best = w,
            None => break,
        }
    }
    Ok(SolverAnswer { value: best.pattern.t, witness: Witness::Structure(best) })
}

pub fn solve(param: Param, g: &Graph, k: usize, budget: &Budget) -> Result<SolverAnswer> {
    match param {
        Param::Alpha => solve_alpha(g, k, budget),
        Param::Beta => solve_beta(g, k, budget),
        Param::Lambda => solve_lambda(g, k, budget),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    Yes,
    No,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Pattern,
    Contraction,
}

#[derive(Debug, Clone, Copy)]
pub struct WinWinConfig {
    /// Pattern size searched for; defaults to `k`.
    pub k_prime: Option<usize>,
    pub budget: Budget,
}

impl Default for WinWinConfig {
    fn default() -> Self {
        WinWinConfig { k_prime: None, budget: Budget::from_env() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub sequence: ContractionSequence,
    pub red_degree: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Decision {
    pub class: GraphClass,
    pub param: Param,
    pub k: usize,
    pub outcome: Outcome,
    pub route: Option<Route>,
    /// Exact parameter value on a NO answer.
    pub value: Option<usize>,
    pub witness: Option<Witness>,
    pub occurrence: Option<PatternOccurrence>,
    pub certificate: Option<Certificate>,
    pub note: String,
}

/// Witness from a pattern occurrence, in the class's own terms. For the
/// polygon and terrain classes this is the dedicated extractor; otherwise,
/// and for the single-entry patterns of `k = 1`, the exact solver runs on
/// the occurrence's vertices.
fn pattern_witness(
    input: &ClassInput,
    param: Param,
    g: &Graph,
    ord: &VertexOrder,
    occ: &PatternOccurrence,
    budget: &Budget,
) -> Result<Option<Witness>> {
    let class = if occ.pattern.k < 2 { None } else { Some(input.class()) };
    match (class, param) {
        (Some(GraphClass::Polygon), _) if !polygon_sign_allowed(occ.pattern.s) => Err(Error::Construction(format!(
            "pattern sign {} found in a polygon visibility graph",
            occ.pattern.s.name()
        ))),
        (Some(GraphClass::Terrain), _) if !occ.pattern.s.is_arrow() => Err(Error::Construction(format!(
            "pattern sign {} found in a terrain visibility graph",
            occ.pattern.s.name()
        ))),
        (Some(GraphClass::Polygon), Param::Alpha) => {
            Ok(Some(Witness::IndependentSet(polygon_independent_set_extract(g, ord, occ)?)))
        }
        (Some(GraphClass::Terrain), Param::Lambda) => Ok(Some(Witness::Structure(terrain_halfgraph_extract(g, ord, occ)?))),
        _ => {
            let mut vs: Vec<usize> =
                occ.row_idx.iter().chain(&occ.col_idx).map(|&i| ord.vertex_at(i)).collect();
            vs.sort_unstable();
            vs.dedup();
            let sub = g.induced(&vs);
            let ans = solve(param, &sub, usize::MAX, budget)?;
            Ok(Some(match ans.witness {
                Witness::IndependentSet(w) => Witness::IndependentSet(IndependentSetWitness {
                    vertices: w.vertices.iter().map(|&v| vs[v]).collect(),
                }),
                Witness::Structure(w) => Witness::Structure(StructureWitness {
                    pattern: w.pattern,
                    columns: w.columns.iter().map(|c| c.iter().map(|&v| vs[v]).collect()).collect(),
                }),
            }))
        }
    }
}

struct PatternBranch {
    occurrence: PatternOccurrence,
    witness: Witness,
}

fn pattern_branch(
    input: &ClassInput,
    param: Param,
    g: &Graph,
    ord: &VertexOrder,
    k_prime: usize,
    budget: &Budget,
) -> Result<Option<PatternBranch>> {
    if k_prime == 0 {
        return Ok(None);
    }
    let m = adjacency_matrix(g, ord);
    for side in [Side::Below, Side::Above] {
        if let Some(occ) = find_universal_pattern(&m, k_prime, side, budget)? {
            if let Some(w) = pattern_witness(input, param, g, ord, &occ, budget)? {
                if !w.verify(g) {
                    return Err(Error::Construction("pattern witness failed to verify".into()));
                }
                return Ok(Some(PatternBranch { occurrence: occ, witness: w }));
            }
        }
    }
    Ok(None)
}

/// Decides `p(G) >= k`. The pattern search and the contract-and-solve
/// branch run concurrently; a verified pattern witness of size `k` wins,
/// otherwise the exact solver's answer is returned.
pub fn decide(input: &ClassInput, param: Param, k: usize, config: &WinWinConfig) -> Result<Decision> {
    let (g, ord) = input.ordered_graph()?;
    let k_prime = config.k_prime.unwrap_or(k);
    let budget = &config.budget;
    let (pattern, solved) = rayon::join(
        || pattern_branch(input, param, &g, &ord, k_prime, budget),
        || -> Result<(Certificate, SolverAnswer)> {
            let (sequence, red_degree) = dyadic_contract(&g, &ord)?;
            Ok((Certificate { sequence, red_degree }, solve(param, &g, k, budget)?))
        },
    );
    let mut d = Decision {
        class: input.class(),
        param,
        k,
        outcome: Outcome::Inconclusive,
        route: None,
        value: None,
        witness: None,
        occurrence: None,
        certificate: None,
        note: String::new(),
    };
    let pattern = match pattern {
        Ok(p) => p,
        Err(Error::BudgetExhausted) => {
            d.note.push_str("pattern search exhausted its budget; ");
            None
        }
        Err(e) => return Err(e),
    };
    if let Some(p) = pattern {
        d.occurrence = Some(p.occurrence);
        if p.witness.size() >= k {
            d.outcome = Outcome::Yes;
            d.route = Some(Route::Pattern);
            d.witness = Some(p.witness);
            if let Ok((cert, _)) = solved {
                d.certificate = Some(cert);
            }
            return Ok(d);
        }
        d.note.push_str(&format!("pattern witness of size {} is below k; ", p.witness.size()));
    }
    match solved {
        Ok((cert, ans)) => {
            debug_assert!(ans.witness.verify(&g));
            d.certificate = Some(cert);
            d.route = Some(Route::Contraction);
            if ans.value >= k {
                d.outcome = Outcome::Yes;
            } else {
                d.outcome = Outcome::No;
                d.value = Some(ans.value);
            }
            d.witness = Some(ans.witness);
        }
        Err(Error::BudgetExhausted) => d.note.push_str("exact solver exhausted its budget"),
        Err(e) => return Err(e),
    }
    Ok(d)
}
