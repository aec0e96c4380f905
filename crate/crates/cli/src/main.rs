use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tww::contraction::{dyadic_contract, exact_twinwidth, verify_sequence, ContractionSequence};
use tww::extraction::{
    interval_division_prepare, interval_transversal_extract, polygon_independent_set_extract,
    terrain_halfgraph_extract, IndependentSetWitness,
};
use tww::generators::{
    comb_polygon, fig1_graph, fig1_sequence, gen_bn_segments, gen_pi_tree_model, gen_polygon_family,
    gen_subcubic_encoding_segments, random_axis_segments, random_intervals, random_polygon, random_rooted_path_model,
    random_terrain, staircase_intervals, BipartiteGraph,
};
use tww::geometry::{interval_graph, polygon_visibility, terrain_visibility, IntervalModel, SimplePolygon, Terrain};
use tww::graph::{adjacency_matrix, BipPattern, Graph, OrderedMatrix, VertexOrder};
use tww::matrix::{
    find_pattern, find_universal_pattern, grid_rank_with_limit, is_rank_k_division, Division, PatternOccurrence,
    PatternSign, Side, UniversalPatternId, EXHAUSTIVE_LIMIT,
};
use tww::orders::{planar_facial_order, PlanarEmbedding};
use tww::structures::{find_semi_induced, StructureWitness};
use tww::winwin::{decide, ClassInput, GraphClass, Outcome, Param, Witness, WinWinConfig};
use tww::Budget;

#[derive(Parser)]
#[command(name = "tww", version, about = "Twin-width toolkit for geometric graph classes")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Cap on worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate an instance.
    Gen(GenArgs),
    /// Print the canonical vertex order of a scene.
    Order(OrderArgs),
    /// Print the graph of a scene.
    Visibility(SceneArgs),
    /// Print the adjacency matrix of a graph along an order.
    Matrix(MatrixArgs),
    /// Compute the grid rank of a matrix.
    Gridrank(GridrankArgs),
    /// Search a matrix for a universal pattern.
    Pattern(PatternArgs),
    /// Compute a contraction sequence.
    Contract(ContractArgs),
    /// Check a certificate against a graph or matrix.
    Verify(VerifyArgs),
    /// Extract a structural witness.
    Extract(ExtractArgs),
    /// Decide whether a parameter reaches k.
    Winwin(WinwinArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Fig1,
    Fig1Seq,
    Bn,
    Subcubic,
    PiTree,
    PolygonFamily,
    Terrain,
    Polygon,
    Intervals,
    Segments,
    Rdp,
    Staircase,
    Comb,
    Grid,
}

#[derive(Args)]
struct GenArgs {
    family: Family,
    /// Size parameter.
    #[arg(short, long, default_value_t = 8)]
    n: usize,
    /// Maximum segment length.
    #[arg(long, default_value_t = 2)]
    ell: u32,
    /// Bipartite graph file with sides labelled a* and b*.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    Interval,
    Rdp,
    Terrain,
    Polygon,
    Segments,
    Planar,
}

impl ClassArg {
    fn graph_class(self) -> Result<GraphClass> {
        Ok(match self {
            ClassArg::Interval => GraphClass::Interval,
            ClassArg::Rdp => GraphClass::Rdp,
            ClassArg::Terrain => GraphClass::Terrain,
            ClassArg::Polygon => GraphClass::Polygon,
            ClassArg::Segments => GraphClass::Segments,
            ClassArg::Planar => bail!("planar embeddings are handled by the order command only"),
        })
    }
}

#[derive(Args)]
struct SceneArgs {
    #[arg(long)]
    class: ClassArg,
    scene: PathBuf,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OrderArgs {
    #[arg(long)]
    class: ClassArg,
    scene: PathBuf,
    /// Root label for planar embeddings.
    #[arg(long)]
    root: Option<String>,
    /// Also write the scene's graph here.
    #[arg(long)]
    graph_out: Option<PathBuf>,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MatrixArgs {
    graph: PathBuf,
    /// Order file; identity when omitted.
    #[arg(long)]
    order: Option<PathBuf>,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GridrankArgs {
    matrix: PathBuf,
    #[arg(long, default_value_t = EXHAUSTIVE_LIMIT)]
    limit: usize,
    /// Write a witnessing division here.
    #[arg(long)]
    division_out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Below,
    Above,
    Both,
}

#[derive(Args)]
struct PatternArgs {
    matrix: PathBuf,
    #[arg(short, default_value_t = 2)]
    k: usize,
    #[arg(long, value_enum, default_value_t = SideArg::Both)]
    side: SideArg,
    /// Restrict to one sign: 0, 1, up, down, left, right.
    #[arg(long)]
    sign: Option<String>,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ContractArgs {
    graph: PathBuf,
    /// Order file for the dyadic sequence; identity when omitted.
    #[arg(long)]
    order: Option<PathBuf>,
    /// Compute an optimal sequence by exhaustive search.
    #[arg(long)]
    exact: bool,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Graph or matrix file.
    base: PathBuf,
    /// Sequence, witness, occurrence or division file.
    cert: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExtractKind {
    Interval,
    Polygon,
    Terrain,
    Structure,
}

#[derive(Args)]
struct ExtractArgs {
    kind: ExtractKind,
    /// Interval model, polygon, terrain or graph file.
    input: PathBuf,
    /// Transversal pair height for intervals.
    #[arg(short, default_value_t = 2)]
    t: usize,
    /// Pattern size for polygons and terrains.
    #[arg(short, default_value_t = 2)]
    k: usize,
    /// Pattern for the structure search, e.g. "half_graph 3".
    #[arg(long)]
    pattern: Option<String>,
    /// Also write the input's graph here.
    #[arg(long)]
    graph_out: Option<PathBuf>,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct WinwinArgs {
    #[arg(long)]
    class: ClassArg,
    #[arg(long)]
    param: String,
    #[arg(short)]
    k: usize,
    /// Pattern size searched for; defaults to k.
    #[arg(long)]
    k_prime: Option<usize>,
    scene: PathBuf,
    /// Prefix for the graph, witness and sequence files.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// What a command produced: text for humans, JSON for scripts, and the exit
/// status.
struct Report {
    text: String,
    json: Value,
    code: u8,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, code: 0 }
    }

    fn negative(text: String, json: Value) -> Self {
        Report { text, json, code: 1 }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Writes to `out` when given, otherwise returns the text for stdout.
fn emit(out: &Option<PathBuf>, text: String) -> Result<String> {
    match out {
        Some(p) => {
            write(p, &text)?;
            Ok(format!("wrote {}\n", p.display()))
        }
        None => Ok(text),
    }
}

fn read_graph(path: &Path) -> Result<Graph> {
    Graph::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn read_matrix(path: &Path) -> Result<OrderedMatrix> {
    OrderedMatrix::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn read_order(g: &Graph, path: &Option<PathBuf>) -> Result<VertexOrder> {
    match path {
        Some(p) => VertexOrder::parse(g, &read(p)?).with_context(|| format!("parsing {}", p.display())),
        None => Ok(VertexOrder::identity(g.n())),
    }
}

fn read_bipartite(input: &Option<PathBuf>) -> Result<BipartiteGraph> {
    let path = input.as_ref().ok_or_else(|| anyhow!("this family needs --input <bipartite graph>"))?;
    Ok(BipartiteGraph::from_graph(&read_graph(path)?)?)
}

fn labels(g: &Graph, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| g.label(v).to_string()).collect()
}

fn cmd_gen(a: &GenArgs, seed: u64) -> Result<Report> {
    let text = match a.family {
        Family::Fig1 => fig1_graph().to_text(),
        Family::Fig1Seq => fig1_sequence().to_text(),
        Family::Bn => gen_bn_segments(a.n).to_text(),
        Family::Subcubic => gen_subcubic_encoding_segments(&read_bipartite(&a.input)?)?.to_text(),
        Family::PiTree => gen_pi_tree_model(&read_bipartite(&a.input)?).to_text(),
        Family::PolygonFamily => gen_polygon_family(&read_bipartite(&a.input)?)?.polygon.to_text(),
        Family::Terrain => random_terrain(a.n, seed)?.to_text(),
        Family::Polygon => random_polygon(a.n, seed)?.to_text(),
        Family::Intervals => random_intervals(a.n, seed)?.to_text(),
        Family::Segments => random_axis_segments(a.n, a.ell, seed)?.to_text(),
        Family::Rdp => random_rooted_path_model(a.n, a.n, seed, false).to_text(),
        Family::Staircase => staircase_intervals(a.n).to_text(),
        Family::Comb => comb_polygon(a.n).to_text(),
        Family::Grid => PlanarEmbedding::grid(a.n, a.n, &[])?.to_text(),
    };
    let shown = emit(&a.out, text.clone())?;
    Ok(Report::ok(shown, json!({ "document": text })))
}

fn scene_input(class: ClassArg, path: &Path) -> Result<ClassInput> {
    ClassInput::parse(class.graph_class()?, &read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn cmd_order(a: &OrderArgs) -> Result<Report> {
    let (g, ord, extra) = match a.class {
        ClassArg::Planar => {
            let emb = PlanarEmbedding::parse(&read(&a.scene)?)?;
            let root = match &a.root {
                Some(l) => emb.graph.index_of(l)?,
                None => 0,
            };
            let lo = planar_facial_order(&emb, root)?;
            let layers = serde_json::to_value(&lo)?;
            (emb.graph.clone(), lo.order, layers)
        }
        class => {
            let (g, ord) = scene_input(class, &a.scene)?.ordered_graph()?;
            (g, ord, Value::Null)
        }
    };
    if let Some(p) = &a.graph_out {
        write(p, &g.to_text())?;
    }
    let text = ord.to_text(&g);
    let shown = emit(&a.out, text)?;
    Ok(Report::ok(shown, json!({ "order": labels(&g, ord.perm()), "layers": extra })))
}

fn cmd_visibility(a: &SceneArgs) -> Result<Report> {
    let (g, _) = scene_input(a.class, &a.scene)?.ordered_graph()?;
    let text = g.to_text();
    let shown = emit(&a.out, text.clone())?;
    Ok(Report::ok(shown, json!({ "vertices": g.n(), "edges": g.edge_count(), "graph": text })))
}

fn cmd_matrix(a: &MatrixArgs) -> Result<Report> {
    let g = read_graph(&a.graph)?;
    let ord = read_order(&g, &a.order)?;
    let text = adjacency_matrix(&g, &ord).to_text();
    let shown = emit(&a.out, text.clone())?;
    Ok(Report::ok(shown, json!({ "matrix": text })))
}

fn cmd_gridrank(a: &GridrankArgs) -> Result<Report> {
    let m = read_matrix(&a.matrix)?;
    let (gr, div) = grid_rank_with_limit(&m, a.limit)?;
    if let (Some(p), Some(d)) = (&a.division_out, &div) {
        write(p, &d.to_text())?;
    }
    Ok(Report::ok(format!("gr={gr}\n"), json!({ "grid_rank": gr, "division": div.map(|d| d.to_text()) })))
}

fn sides(s: SideArg) -> Vec<Side> {
    match s {
        SideArg::Below => vec![Side::Below],
        SideArg::Above => vec![Side::Above],
        SideArg::Both => vec![Side::Below, Side::Above],
    }
}

fn cmd_pattern(a: &PatternArgs) -> Result<Report> {
    let m = read_matrix(&a.matrix)?;
    let budget = Budget::from_env();
    let sign = match &a.sign {
        Some(s) => Some(PatternSign::parse(s).ok_or_else(|| anyhow!("unknown sign {s:?}"))?),
        None => None,
    };
    let mut found = None;
    for side in sides(a.side) {
        found = match sign {
            Some(s) => find_pattern(&m, UniversalPatternId { k: a.k, s }, side, &budget)?,
            None => find_universal_pattern(&m, a.k, side, &budget)?,
        };
        if found.is_some() {
            break;
        }
    }
    match found {
        Some(occ) => {
            let shown = emit(&a.out, occ.to_text())?;
            Ok(Report::ok(shown, serde_json::to_value(&occ)?))
        }
        None => Ok(Report::negative("none\n".into(), json!(null))),
    }
}

fn cmd_contract(a: &ContractArgs) -> Result<Report> {
    let g = read_graph(&a.graph)?;
    let (seq, d) = if a.exact {
        let (d, seq) = exact_twinwidth(&g, &Budget::from_env())?;
        (seq, d)
    } else {
        dyadic_contract(&g, &read_order(&g, &a.order)?)?
    };
    let text = match &a.out {
        Some(p) => {
            write(p, &seq.to_text())?;
            format!("d={d}\nwrote {}\n", p.display())
        }
        None => format!("d={d}\n{}", seq.to_text()),
    };
    Ok(Report::ok(text, json!({ "d": d, "exact": a.exact, "steps": seq.steps })))
}

fn first_line(text: &str) -> &str {
    text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#')).unwrap_or("")
}

fn cmd_verify(a: &VerifyArgs) -> Result<Report> {
    let base = read(&a.base)?;
    let cert = read(&a.cert)?;
    let head = first_line(&cert);
    let verdict = |ok: bool, what: &str, extra: Value| {
        let text = format!("{what}: {}\n", if ok { "ok" } else { "FAILED" });
        let json = json!({ "kind": what, "valid": ok, "details": extra });
        if ok {
            Report::ok(text, json)
        } else {
            Report::negative(text, json)
        }
    };
    if first_line(&base).starts_with("matrix") {
        let m = OrderedMatrix::parse(&base)?;
        if head.starts_with("pattern") {
            let occ = PatternOccurrence::parse(&cert)?;
            return Ok(verdict(occ.verify(&m), "pattern", serde_json::to_value(&occ)?));
        }
        let d = Division::parse(&cert)?;
        let k = d.row_sizes.len().min(d.col_sizes.len());
        let ok = d.row_sizes.len() == d.col_sizes.len() && is_rank_k_division(&m, &d, k)?;
        return Ok(verdict(ok, "division", json!({ "k": k })));
    }
    let g = Graph::parse(&base)?;
    if head.starts_with("witness") {
        let w = StructureWitness::parse(&g, &cert)?;
        return Ok(verdict(w.verify(&g), "witness", json!({ "pattern": w.pattern.name() })));
    }
    if head.starts_with("independent_set") {
        let w = IndependentSetWitness::parse(&g, &cert)?;
        return Ok(verdict(w.verify(&g), "independent_set", json!({ "size": w.vertices.len() })));
    }
    let seq = ContractionSequence::parse(&cert)?;
    let d = verify_sequence(&g, &seq)?;
    Ok(Report::ok(format!("d={d}\n"), json!({ "kind": "sequence", "valid": true, "d": d })))
}

fn cmd_extract(a: &ExtractArgs) -> Result<Report> {
    let text = read(&a.input)?;
    let budget = Budget::from_env();
    let (g, doc, size): (Graph, Option<String>, usize) = match a.kind {
        ExtractKind::Interval => {
            let model = IntervalModel::parse(&text)?;
            let g = interval_graph(&model);
            match interval_division_prepare(&model, a.t) {
                Some(p) => {
                    let ex = interval_transversal_extract(&p)?;
                    (g.clone(), Some(ex.witness.to_document(&g)), a.t)
                }
                None => (g, None, 0),
            }
        }
        ExtractKind::Polygon | ExtractKind::Terrain => {
            let (g, ord) = match a.kind {
                ExtractKind::Polygon => polygon_visibility(&SimplePolygon::parse(&text)?),
                _ => terrain_visibility(&Terrain::parse(&text)?),
            };
            let m = adjacency_matrix(&g, &ord);
            let mut occ = None;
            for side in [Side::Below, Side::Above] {
                occ = find_universal_pattern(&m, a.k, side, &budget)?;
                if occ.is_some() {
                    break;
                }
            }
            match (occ, a.kind) {
                (None, _) => (g, None, 0),
                (Some(o), ExtractKind::Polygon) => {
                    let w = polygon_independent_set_extract(&g, &ord, &o)?;
                    (g.clone(), Some(w.to_document(&g)), w.vertices.len())
                }
                (Some(o), _) => {
                    let w = terrain_halfgraph_extract(&g, &ord, &o)?;
                    (g.clone(), Some(w.to_document(&g)), w.pattern.t)
                }
            }
        }
        ExtractKind::Structure => {
            let g = Graph::parse(&text)?;
            let name = a.pattern.as_deref().ok_or_else(|| anyhow!("--pattern is required"))?;
            let p = BipPattern::parse(name)?;
            match find_semi_induced(&g, &p, &budget)? {
                Some(w) => {
                    let doc = w.to_document(&g);
                    (g, Some(doc), p.t)
                }
                None => (g, None, 0),
            }
        }
    };
    if let Some(p) = &a.graph_out {
        write(p, &g.to_text())?;
    }
    match doc {
        Some(doc) => {
            let shown = emit(&a.out, doc.clone())?;
            Ok(Report::ok(shown, json!({ "size": size, "witness": doc })))
        }
        None => Ok(Report::negative("none\n".into(), json!({ "size": null, "witness": null }))),
    }
}

fn witness_document(w: &Witness, g: &Graph) -> String {
    match w {
        Witness::IndependentSet(s) => s.to_document(g),
        Witness::Structure(s) => s.to_document(g),
    }
}

fn cmd_winwin(a: &WinwinArgs) -> Result<Report> {
    let input = scene_input(a.class, &a.scene)?;
    let param: Param = a.param.parse()?;
    let config = WinWinConfig { k_prime: a.k_prime, budget: Budget::from_env() };
    let d = decide(&input, param, a.k, &config)?;
    let (g, _) = input.ordered_graph()?;
    let mut files = Vec::new();
    if let Some(prefix) = &a.out {
        let with = |ext: &str| PathBuf::from(format!("{}.{ext}", prefix.display()));
        let gp = with("graph");
        write(&gp, &g.to_text())?;
        files.push(gp);
        if let Some(w) = &d.witness {
            let wp = with("witness");
            write(&wp, &witness_document(w, &g))?;
            files.push(wp);
        }
        if let Some(c) = &d.certificate {
            let sp = with("seq");
            write(&sp, &c.sequence.to_text())?;
            files.push(sp);
        }
    }
    let outcome = match d.outcome {
        Outcome::Yes => "YES",
        Outcome::No => "NO",
        Outcome::Inconclusive => "INCONCLUSIVE",
    };
    let mut text = format!("decision {outcome}\nparam {} k={}\n", a.param, a.k);
    if let Some(v) = d.value {
        text += &format!("value {v}\n");
    }
    if let Some(r) = d.route {
        text += &format!("route {}\n", serde_json::to_value(r)?.as_str().unwrap_or(""));
    }
    if let Some(w) = &d.witness {
        text += &witness_document(w, &g);
    }
    if let Some(c) = &d.certificate {
        text += &format!("certificate d={} steps={}\n", c.red_degree, c.sequence.len());
    }
    if !d.note.is_empty() {
        text += &format!("note {}\n", d.note.trim_end_matches("; "));
    }
    for f in &files {
        text += &format!("wrote {}\n", f.display());
    }
    let mut value = serde_json::to_value(&d)?;
    value["witness_labels"] = match &d.witness {
        Some(Witness::IndependentSet(s)) => json!(labels(&g, &s.vertices)),
        Some(Witness::Structure(s)) => json!(s.columns.iter().map(|c| labels(&g, c)).collect::<Vec<_>>()),
        None => Value::Null,
    };
    let code = match d.outcome {
        Outcome::Yes => 0,
        Outcome::No => 1,
        Outcome::Inconclusive => 2,
    };
    Ok(Report { text, json: value, code })
}

fn run(cli: &Cli) -> Result<Report> {
    match &cli.cmd {
        Cmd::Gen(a) => cmd_gen(a, cli.seed),
        Cmd::Order(a) => cmd_order(a),
        Cmd::Visibility(a) => cmd_visibility(a),
        Cmd::Matrix(a) => cmd_matrix(a),
        Cmd::Gridrank(a) => cmd_gridrank(a),
        Cmd::Pattern(a) => cmd_pattern(a),
        Cmd::Contract(a) => cmd_contract(a),
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::Extract(a) => cmd_extract(a),
        Cmd::Winwin(a) => cmd_winwin(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(r) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&r.json).expect("JSON values serialize"));
            } else {
                print!("{}", r.text);
            }
            ExitCode::from(r.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
