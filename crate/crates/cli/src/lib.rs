//! Command-line front end: subcommand dispatch, config ingestion and
//! deterministic report emission.

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use wallcross_core::arrangement::MatchWitness;
use wallcross_core::cone::{symn_arrangement_matches, symn_point, walls_through_symn_point, HilbNSModel, SymnWall};
use wallcross_core::k3::{in_limit_region, on_wall, solve_corner_stability, twisted_walls, CornerHint, KahlerPoint, LimitParams, LimitReport, WallDescriptor};
use wallcross_core::lattice::{signature, standard_lattice, MukaiVector, SurfaceConfig};
use wallcross_core::quiver::{bounded_positive_roots, crawley_boevey, ext_quiver, genuine_walls_affine, num_points, ExtQuiverData, Quiver};
use wallcross_core::rational::{canonical_line_i64, parse_q, Q};
use wallcross_core::slice::{level_one_slice, quiver_walls, slice_segments, to_svg, to_tsv};
use wallcross_voa::matrix::operator_matrix;
use wallcross_voa::relations::{relation_suite, SuiteConfig, SuiteReport};
use wallcross_voa::{Chevalley, LatticeVOA, ModeOperator};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("verification failed: {0}")]
    Verify(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verify(_) => 1,
            CliError::Config(_) | CliError::Io(_) => 2,
        }
    }
}

impl From<wallcross_core::Error> for CliError {
    fn from(e: wallcross_core::Error) -> Self {
        use wallcross_core::Error as E;
        match e {
            E::Infeasible(_) | E::OnWall(_) | E::VanishingCharge | E::NotInvariant => CliError::Verify(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "wallcross", version, about = "Exact wall-crossing computations for K3 surfaces and affine quivers")]
pub struct Cli {
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

/// Every subcommand doubles as a JSON config record, tagged by "command".
#[derive(Subcommand, Deserialize, Serialize, Debug, Clone)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Gram data, signature and parity of a catalogue lattice or surface.
    Lattice(LatticeArgs),
    /// Candidate and genuine GIT walls for a quiver dimension vector.
    QuiverWalls(QuiverWallsArgs),
    /// Bridgeland walls for the Hilbert scheme (or a twist) on a K3.
    K3Walls(K3WallsArgs),
    /// Ext quiver of a polystable decomposition.
    ExtQuiver(ExtQuiverArgs),
    /// Stability condition on all walls of a collection at once.
    CornerSolve(CornerSolveArgs),
    /// Compare walls through the Sym^n point with the affine arrangement.
    ChambersMatch(ChambersMatchArgs),
    /// Exact relation checks on a truncated lattice vertex algebra.
    VoaVerify(VoaVerifyArgs),
    /// SVG (or TSV) of a two-dimensional slice of a wall arrangement.
    Plot(PlotArgs),
    /// Run a list of commands from a JSON config.
    Report(ReportArgs),
}

#[derive(Args, Deserialize, Serialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct LatticeArgs {
    /// Catalogue name, e.g. "A2", "U", "K3", "affine-D4".
    #[arg(long)]
    pub name: Option<String>,
    /// Surface: "elliptic", "elliptic-i3" or a JSON file.
    #[arg(long)]
    pub surface: Option<String>,
}

#[derive(Args, Deserialize, Serialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct QuiverWallsArgs {
    #[arg(long)]
    pub quiver: String,
    /// Dimension vector "a,b,..." or "<n>delta".
    #[arg(long)]
    pub v: String,
    /// Framing; defaults to the first unit vector.
    #[arg(long)]
    #[serde(default)]
    pub w: Option<String>,
}

#[derive(Args, Deserialize, Serialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct K3WallsArgs {
    #[arg(long, default_value = "elliptic")]
    #[serde(default = "default_surface")]
    pub surface: String,
    #[arg(long)]
    pub n: i64,
    #[arg(long, default_value = "A1")]
    #[serde(default = "default_collection")]
    pub collection: String,
    /// Twisting class D as "a,b,...".
    #[arg(long)]
    #[serde(default)]
    pub d: Option<String>,
}

#[derive(Args, Deserialize, Serialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct ExtQuiverArgs {
    #[arg(long)]
    pub quiver: String,
    #[arg(long)]
    pub v: String,
    #[arg(long)]
    #[serde(default)]
    pub w: Option<String>,
    /// Summands "β:m;β:m" with β on the framed quiver.
    #[arg(long)]
    pub decomp: String,
    /// Framed summand β∞.
    #[arg(long)]
    pub beta_inf: String,
}

#[derive(Args, Deserialize, Serialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct CornerSolveArgs {
    #[arg(long, default_value = "elliptic-i3")]
    #[serde(default = "default_surface_i3")]
    pub surface: String,
    #[arg(long, default_value = "A2")]
    #[serde(default = "default_collection_a2")]
    pub collection: String,
    #[arg(long)]
    #[serde(default)]
    pub d: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub s: i64,
    /// Wall indices k_r, one per curve of the collection.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default)]
    pub k: Option<String>,
    #[arg(long, default_value = "200")]
    #[serde(default = "default_big_n")]
    pub big_n: String,
    #[arg(long, default_value = "1/2")]
    #[serde(default = "default_xi")]
    pub xi: String,
    #[arg(long, default_value = "10")]
    #[serde(default = "default_vol")]
    pub vol: String,
    /// Starting point "c,w0,mu" for the search.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default)]
    pub hint: Option<String>,
}

#[derive(Args, Deserialize, Serialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct ChambersMatchArgs {
    #[arg(long, default_value = "elliptic")]
    #[serde(default = "default_surface")]
    pub surface: String,
    #[arg(long, default_value = "A1")]
    #[serde(default = "default_collection")]
    pub collection: String,
    #[arg(long)]
    pub n: i64,
}

#[derive(Args, Deserialize, Serialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct VoaVerifyArgs {
    #[arg(long)]
    pub lattice: String,
    #[arg(long)]
    pub degree: u32,
    /// Markers γ with every coordinate in [−r, r].
    #[arg(long)]
    #[serde(default)]
    pub markers: Option<i64>,
    /// Modes n with |n| ≤ this.
    #[arg(long)]
    #[serde(default)]
    pub modes: Option<i64>,
    /// Comma-separated relation families; all by default.
    #[arg(long)]
    #[serde(default)]
    pub families: Option<String>,
    /// Directory for exact CSV dumps of the Chevalley generator matrices.
    #[arg(long)]
    #[serde(default)]
    pub csv_dir: Option<PathBuf>,
}

#[derive(Args, Deserialize, Serialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct PlotArgs {
    #[arg(long)]
    pub quiver: String,
    /// Must be a multiple of δ, e.g. "3delta".
    #[arg(long)]
    pub v: String,
    #[arg(long, default_value = "level1")]
    #[serde(default = "default_slice")]
    pub slice: String,
    /// Half-width of the plotted square.
    #[arg(long, default_value = "3")]
    #[serde(default = "default_extent")]
    pub extent: String,
    /// "svg" or "tsv".
    #[arg(long, default_value = "svg")]
    #[serde(default = "default_format")]
    pub format: String,
}

#[derive(Args, Deserialize, Serialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct ReportArgs {
    /// JSON file {"runs": [{"command": ..., ...}, ...]}.
    #[arg(long)]
    pub config: PathBuf,
}

fn default_surface() -> String {
    "elliptic".into()
}
fn default_surface_i3() -> String {
    "elliptic-i3".into()
}
fn default_collection() -> String {
    "A1".into()
}
fn default_collection_a2() -> String {
    "A2".into()
}
fn default_big_n() -> String {
    "200".into()
}
fn default_xi() -> String {
    "1/2".into()
}
fn default_vol() -> String {
    "10".into()
}
fn default_slice() -> String {
    "level1".into()
}
fn default_extent() -> String {
    "3".into()
}
fn default_format() -> String {
    "svg".into()
}

#[derive(Deserialize, Serialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub runs: Vec<Command>,
}

// ---- outputs ----

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct LatticeOut {
    pub name: String,
    pub rank: usize,
    pub gram: Vec<Vec<i64>>,
    pub signature: [usize; 3],
    pub even: bool,
    #[serde(default)]
    pub curves: BTreeMap<String, Vec<i64>>,
    #[serde(default)]
    pub collections: BTreeMap<String, Vec<String>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct QuiverWallsOut {
    pub quiver: String,
    pub v: Vec<i64>,
    pub w: Vec<i64>,
    /// Number of points, when the quiver is affine and w = e₀.
    pub n: Option<i64>,
    pub candidates: Vec<Vec<i64>>,
    pub walls: Vec<Vec<i64>>,
    pub excluded: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct K3WallsOut {
    pub surface: String,
    pub n: i64,
    pub collection: String,
    pub d: Vec<i64>,
    pub walls: Vec<WallDescriptor>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ExtQuiverOut {
    pub framed_dims: Vec<i64>,
    pub ext: ExtQuiverData,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CornerOut {
    pub surface: String,
    pub collection: String,
    pub d: Vec<i64>,
    pub s: i64,
    pub k: Vec<i64>,
    pub point: KahlerPoint,
    pub on_walls: Vec<bool>,
    pub limit: LimitReport,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ChambersOut {
    pub surface: String,
    pub collection: String,
    pub n: i64,
    #[serde(with = "wallcross_core::rational::serde_qvec")]
    pub point: Vec<Q>,
    pub walls: Vec<SymnWall>,
    pub witness: MatchWitness,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct RunOut {
    pub command: String,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub output: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ReportOut {
    pub runs: Vec<RunOut>,
}

/// Text produced by a command plus its exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

// ---- parsing helpers ----

fn config<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Config(e.to_string())
}

pub fn parse_ints(s: &str) -> CliResult<Vec<i64>> {
    s.split(',').map(|t| t.trim().parse::<i64>().map_err(|_| config(format!("bad integer list {s:?}")))).collect()
}

fn parse_rational(s: &str) -> CliResult<Q> {
    parse_q(s.trim()).ok_or_else(|| config(format!("bad rational {s:?}")))
}

fn load_quiver(name: &str) -> CliResult<Quiver> {
    Ok(Quiver::from_name(name)?)
}

/// "a,b,c" or "<n>delta" for an affine quiver.
fn parse_dim(qv: &Quiver, s: &str) -> CliResult<Vec<i64>> {
    if let Some(n) = s.strip_suffix("delta") {
        let n: i64 = if n.is_empty() { 1 } else { n.parse().map_err(|_| config(format!("bad multiple in {s:?}")))? };
        let d = qv.affine_data()?.delta;
        return Ok(d.iter().map(|x| n * x).collect());
    }
    let v = parse_ints(s)?;
    if v.len() != qv.n() {
        return Err(config(format!("{s:?} has {} entries, quiver has {} vertices", v.len(), qv.n())));
    }
    Ok(v)
}

fn framing(qv: &Quiver, w: &Option<String>) -> CliResult<Vec<i64>> {
    match w {
        Some(s) => parse_dim(qv, s),
        None => {
            let mut w = vec![0; qv.n()];
            w[0] = 1;
            Ok(w)
        }
    }
}

pub fn load_surface(s: &str) -> CliResult<SurfaceConfig> {
    match s {
        "elliptic" | "elliptic-K3" => Ok(SurfaceConfig::elliptic()),
        "elliptic-i3" | "elliptic-I3" => Ok(SurfaceConfig::elliptic_i3()),
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| config(format!("{path}: {e}")))?;
            Ok(SurfaceConfig::from_json(&text)?)
        }
    }
}

fn json<T: Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("serializable output");
    s.push('\n');
    s
}

// ---- commands ----

fn cmd_lattice(a: &LatticeArgs) -> CliResult<LatticeOut> {
    let (name, l, curves, collections) = match (&a.name, &a.surface) {
        (Some(n), None) => (n.clone(), standard_lattice(n)?, BTreeMap::new(), BTreeMap::new()),
        (None, Some(s)) => {
            let surf = load_surface(s)?;
            (s.clone(), surf.ns.clone(), surf.curves.clone(), surf.collections.clone())
        }
        _ => return Err(config("give exactly one of --name and --surface")),
    };
    let (p, n, z) = signature(&l);
    Ok(LatticeOut { name, rank: l.rank(), gram: l.gram.clone(), signature: [p, n, z], even: l.is_even(), curves, collections })
}

fn cmd_quiver_walls(a: &QuiverWallsArgs) -> CliResult<QuiverWallsOut> {
    let qv = load_quiver(&a.quiver)?;
    let v = parse_dim(&qv, &a.v)?;
    let w = framing(&qv, &a.w)?;
    let lines: std::collections::BTreeSet<Vec<i64>> =
        bounded_positive_roots(&qv, &v)?.iter().filter_map(|r| canonical_line_i64(r)).collect();
    let candidates: Vec<Vec<i64>> = lines.into_iter().collect();
    let mut e0 = vec![0; qv.n()];
    e0[0] = 1;
    let affine = qv.affine_data().ok();
    let mut n = None;
    let mut walls = candidates.clone();
    if let Some(ad) = affine {
        if w == e0 {
            n = Some(num_points(&qv, &v)?);
            let m = v[0];
            if m > 0 && ad.delta.iter().map(|d| m * d).collect::<Vec<_>>() == v {
                walls = genuine_walls_affine(&qv, m)?.into_iter().collect();
            }
        }
    }
    let excluded = candidates.iter().filter(|c| !walls.contains(c)).cloned().collect();
    Ok(QuiverWallsOut { quiver: a.quiver.clone(), v, w, n, candidates, walls, excluded })
}

fn cmd_k3_walls(a: &K3WallsArgs) -> CliResult<K3WallsOut> {
    let surf = load_surface(&a.surface)?;
    let d = match &a.d {
        Some(s) => parse_ints(s)?,
        None => vec![0; surf.rank()],
    };
    let walls = twisted_walls(&surf, &d, a.n, &a.collection)?;
    Ok(K3WallsOut { surface: a.surface.clone(), n: a.n, collection: a.collection.clone(), d, walls })
}

fn cmd_ext_quiver(a: &ExtQuiverArgs) -> CliResult<ExtQuiverOut> {
    let qv = load_quiver(&a.quiver)?;
    let v = parse_dim(&qv, &a.v)?;
    let w = framing(&qv, &a.w)?;
    let (qi, dims) = crawley_boevey(&qv, &v, &w)?;
    let mut decomp = Vec::new();
    for part in a.decomp.split(';').filter(|p| !p.trim().is_empty()) {
        let (b, m) = part.split_once(':').ok_or_else(|| config(format!("summand {part:?} needs the form β:m")))?;
        let m: i64 = m.trim().parse().map_err(|_| config(format!("bad multiplicity in {part:?}")))?;
        decomp.push((parse_ints(b)?, m));
    }
    let beta_inf = parse_ints(&a.beta_inf)?;
    let ext = ext_quiver(&qi, &decomp, &beta_inf, &dims)?;
    Ok(ExtQuiverOut { framed_dims: dims, ext })
}

fn cmd_corner(a: &CornerSolveArgs) -> CliResult<CornerOut> {
    let surf = load_surface(&a.surface)?;
    let roots = surf.collection(&a.collection)?;
    let d = match &a.d {
        Some(s) => parse_ints(s)?,
        None => vec![0; surf.rank()],
    };
    let k = match &a.k {
        Some(s) => parse_ints(s)?,
        None => vec![0; roots.len()],
    };
    let lp = LimitParams { n: parse_rational(&a.big_n)?, xi: parse_rational(&a.xi)?, vol: parse_rational(&a.vol)?, collection: a.collection.clone() };
    let hint = match &a.hint {
        Some(h) => {
            let t: Vec<&str> = h.split(',').collect();
            if t.len() != 3 {
                return Err(config("hint needs three entries c,w0,mu"));
            }
            Some(CornerHint { c: parse_rational(t[0])?, w0: parse_rational(t[1])?, mu: parse_rational(t[2])? })
        }
        None => None,
    };
    let point = solve_corner_stability(&surf, &d, a.s, &roots, &k, &lp, hint.as_ref())?;
    let v = MukaiVector::new(1, d.clone(), a.s);
    let mut on_walls = Vec::new();
    for (c, kr) in roots.iter().zip(&k) {
        on_walls.push(on_wall(&surf, &point, &v, &MukaiVector::new(0, c.clone(), *kr))?);
    }
    let limit = in_limit_region(&surf, &point, &lp)?;
    Ok(CornerOut { surface: a.surface.clone(), collection: a.collection.clone(), d, s: a.s, k, point, on_walls, limit })
}

fn cmd_chambers(a: &ChambersMatchArgs) -> CliResult<ChambersOut> {
    let surf = load_surface(&a.surface)?;
    let model = HilbNSModel::new(surf, a.n)?;
    let walls = walls_through_symn_point(&model, &a.collection)?;
    let point = symn_point(&model, &a.collection)?;
    let witness = symn_arrangement_matches(&model, &walls, &point)?;
    Ok(ChambersOut { surface: a.surface.clone(), collection: a.collection.clone(), n: a.n, point, walls, witness })
}

fn cmd_voa(a: &VoaVerifyArgs) -> CliResult<SuiteReport> {
    let voa = LatticeVOA::from_name(&a.lattice, a.degree + 2)?;
    let mut cfg = SuiteConfig::new(a.degree);
    if let Some(m) = a.markers {
        cfg.marker_radius = m;
    }
    if let Some(m) = a.modes {
        cfg.mode_range = m;
    }
    if let Some(f) = &a.families {
        cfg.families = f.split(',').map(|s| s.trim().to_string()).collect();
        let known = ["heisenberg", "hx", "xx", "serre", "isotropic", "l0-grading"];
        if let Some(bad) = cfg.families.iter().find(|f| !known.contains(&f.as_str())) {
            return Err(config(format!("unknown relation family {bad:?}")));
        }
    }
    if let Some(dir) = &a.csv_dir {
        std::fs::create_dir_all(dir)?;
        let zero = vec![0; voa.rank()];
        for i in 0..voa.rank() {
            let gens = [("h", Chevalley::H(i)), ("e", Chevalley::E(i)), ("f", Chevalley::F(i))];
            for (tag, gen) in gens {
                for d in 0..=a.degree {
                    let op = ModeOperator::Chevalley { gen: gen.clone(), n: 0 };
                    let m = match operator_matrix(&voa, &op, &zero, d) {
                        Ok(m) => m,
                        Err(_) => continue,
                    };
                    std::fs::write(dir.join(format!("{tag}{i}_mode0_deg{d}.csv")), m.to_csv())?;
                }
            }
        }
    }
    Ok(relation_suite(&voa, &cfg))
}

fn cmd_plot(a: &PlotArgs) -> CliResult<String> {
    let qv = load_quiver(&a.quiver)?;
    let v = parse_dim(&qv, &a.v)?;
    let ad = qv.affine_data()?;
    let n = v[0];
    if n < 1 || ad.delta.iter().map(|d| n * d).collect::<Vec<_>>() != v {
        return Err(config("plot needs v = nδ with n ≥ 1"));
    }
    if a.slice != "level1" {
        return Err(config(format!("unknown slice {:?}", a.slice)));
    }
    if qv.n() < 3 {
        return Err(config("level-one slice needs at least three vertices"));
    }
    let extent = parse_rational(&a.extent)?;
    if extent <= Q::from_integer(0.into()) {
        return Err(config("extent must be positive"));
    }
    let spec = level_one_slice(&qv, extent);
    let out = slice_segments(&spec, &quiver_walls(&qv, n)?);
    match a.format.as_str() {
        "svg" => Ok(to_svg(&spec, &out)),
        "tsv" => Ok(to_tsv(&out)),
        f => Err(config(format!("unknown format {f:?}"))),
    }
}

fn command_name(c: &Command) -> String {
    serde_json::to_value(c).ok().and_then(|v| v.get("command").and_then(|x| x.as_str()).map(String::from)).unwrap_or_default()
}

fn cmd_report(a: &ReportArgs) -> CliResult<Output> {
    let text = std::fs::read_to_string(&a.config).map_err(|e| config(format!("{}: {e}", a.config.display())))?;
    let rc: RunConfig = serde_json::from_str(&text).map_err(config)?;
    let mut runs = Vec::new();
    let mut code = 0;
    for c in &rc.runs {
        if matches!(c, Command::Report(_)) {
            return Err(config("report configs cannot nest"));
        }
        let name = command_name(c);
        let r = execute(c);
        let run = match r {
            Ok(o) => {
                code = code.max(o.code);
                let output = serde_json::from_str(&o.text).unwrap_or(serde_json::Value::String(o.text));
                RunOut { command: name, exit_code: o.code, output: Some(output), error: None }
            }
            Err(e) => {
                code = code.max(e.exit_code());
                RunOut { command: name, exit_code: e.exit_code(), output: None, error: Some(e.to_string()) }
            }
        };
        runs.push(run);
    }
    Ok(Output { text: json(&ReportOut { runs }), code })
}

/// Run one command. Verification failures still produce output, with
/// exit code 1.
pub fn execute(c: &Command) -> CliResult<Output> {
    let ok = |text: String| Ok(Output { text, code: 0 });
    match c {
        Command::Lattice(a) => ok(json(&cmd_lattice(a)?)),
        Command::QuiverWalls(a) => ok(json(&cmd_quiver_walls(a)?)),
        Command::K3Walls(a) => ok(json(&cmd_k3_walls(a)?)),
        Command::ExtQuiver(a) => ok(json(&cmd_ext_quiver(a)?)),
        Command::CornerSolve(a) => {
            let r = cmd_corner(a)?;
            let good = r.on_walls.iter().all(|&b| b) && r.limit.inside;
            Ok(Output { text: json(&r), code: if good { 0 } else { 1 } })
        }
        Command::ChambersMatch(a) => {
            let r = cmd_chambers(a)?;
            Ok(Output { code: if r.witness.matches { 0 } else { 1 }, text: json(&r) })
        }
        Command::VoaVerify(a) => {
            let r = cmd_voa(a)?;
            Ok(Output { code: if r.all_pass { 0 } else { 1 }, text: json(&r) })
        }
        Command::Plot(a) => ok(cmd_plot(a)?),
        Command::Report(a) => cmd_report(a),
    }
}

/// Check that `text` parses as the output schema of `command` and
/// re-serializes to the same bytes.
pub fn validate_output(command: &str, text: &str) -> CliResult<()> {
    fn round<T: Serialize + for<'de> Deserialize<'de>>(text: &str) -> CliResult<()> {
        let v: T = serde_json::from_str(text).map_err(config)?;
        if json(&v) != text {
            return Err(config("output does not round-trip"));
        }
        Ok(())
    }
    match command {
        "lattice" => round::<LatticeOut>(text),
        "quiver-walls" => round::<QuiverWallsOut>(text),
        "k3-walls" => round::<K3WallsOut>(text),
        "ext-quiver" => round::<ExtQuiverOut>(text),
        "corner-solve" => round::<CornerOut>(text),
        "chambers-match" => round::<ChambersOut>(text),
        "voa-verify" => round::<SuiteReport>(text),
        "report" => round::<ReportOut>(text),
        "plot" => {
            if text.starts_with("<svg") && text.ends_with("</svg>\n") || text.starts_with("wall\ttag") {
                Ok(())
            } else {
                Err(config("not an SVG or TSV slice"))
            }
        }
        other => Err(config(format!("unknown command {other:?}"))),
    }
}

fn configure_threads() -> CliResult<()> {
    if let Ok(t) = std::env::var("WALLCROSS_THREADS") {
        let n: usize = t.trim().parse().map_err(|_| config(format!("WALLCROSS_THREADS={t:?} is not a count")))?;
        if n == 0 {
            return Err(config("WALLCROSS_THREADS must be positive"));
        }
        // a second initialization in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

/// Entry point shared by the binary and the tests; returns the exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            if code == 0 {
                let _ = write!(stdout, "{e}");
            } else {
                let _ = write!(stderr, "{e}");
            }
            return code;
        }
    };
    if let Err(e) = configure_threads() {
        let _ = writeln!(stderr, "{e}");
        return e.exit_code();
    }
    let res = execute(&cli.command).and_then(|o| {
        match &cli.out {
            Some(p) => std::fs::write(p, &o.text)?,
            None => stdout.write_all(o.text.as_bytes())?,
        }
        Ok(o.code)
    });
    match res {
        Ok(code) => {
            if code != 0 {
                let _ = writeln!(stderr, "verification failed");
            }
            code
        }
        Err(e) => {
            let _ = writeln!(stderr, "{e}");
            e.exit_code()
        }
    }
}
