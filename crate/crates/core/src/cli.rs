//! The `meshroots` command line: quiver emission, single Hom/Ext queries,
//! component homology, full tables and verification suites.
//!
//! Exit codes: 0 success, 1 a checked claim failed, 2 usage or configuration
//! error, 3 a size cutoff was hit.

use std::collections::BTreeSet;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::dgalgebra::{EpsilonChoice, GradedComponent};
use crate::dynkin::{DynkinDiagram, TreeGraph};
use crate::error::{Error, Result};
use crate::exactla::{homology_dims, Limits};
use crate::hatquiver::{HatQuiver, HatVertex, HeightFunction, QuiverFormat, Sign};
use crate::meshcat::{self, Method, QuotientCache};
use crate::roots::{self, BilinearForms, RootSystemOracle};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CLAIM: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "meshroots", version, about = "Mesh categories, dg-preprojective homology and root systems of ADE diagrams")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit the translation quiver Γ̂ (window) or Γ̂_cyc.
    Quiver(QuiverArgs),
    /// Hom and Ext¹ between two indecomposables X_source, X_target.
    Hom(HomArgs),
    /// Homology of the component A_{i,j;l}.
    Homology(HomologyArgs),
    /// Full Hom/Ext¹ table over Γ̂_cyc.
    Table(TableArgs),
    /// Knitted classes of all indecomposables.
    Classes(ClassesArgs),
    /// Run verification suites and print a JSON report.
    Verify(VerifyArgs),
}

#[derive(Debug, Args, Clone)]
pub struct Common {
    /// ADE diagram such as A4, D5, E8.
    #[arg(long)]
    pub diagram: Option<String>,
    /// JSON tree `{"nodes": n, "edges": [[a, b], ...]}` instead of a diagram.
    #[arg(long, conflicts_with = "diagram")]
    pub tree: Option<PathBuf>,
    /// Basis-size cutoff per graded component (overrides MESHROOTS_CUTOFF).
    #[arg(long)]
    pub cutoff: Option<usize>,
    /// Cutoff on stored matrix entries.
    #[arg(long)]
    pub max_entries: Option<usize>,
    /// Write output here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct QuiverArgs {
    #[command(flatten)]
    pub common: Common,
    /// Γ̂_cyc (levels mod 2h).
    #[arg(long)]
    pub cyclic: bool,
    /// Level window `lo..hi`, inclusive.
    #[arg(long, allow_hyphen_values = true)]
    pub window: Option<String>,
    #[arg(long, value_enum, default_value = "dot")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct HomArgs {
    #[command(flatten)]
    pub common: Common,
    /// Vertex `i,n` of the first argument of Hom.
    #[arg(long, allow_hyphen_values = true)]
    pub source: String,
    /// Vertex `i,n` of the second argument of Hom.
    #[arg(long, allow_hyphen_values = true)]
    pub target: String,
    #[arg(long, default_value = "quotient")]
    pub method: String,
}

#[derive(Debug, Args)]
pub struct HomologyArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub i: usize,
    #[arg(long)]
    pub j: usize,
    #[arg(long)]
    pub l: usize,
    /// Also dump bases and differential matrices.
    #[arg(long)]
    pub dump: bool,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value = "knitting")]
    pub method: String,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ClassesArgs {
    #[command(flatten)]
    pub common: Common,
    /// `bipartite`, `bipartite+2k`, or explicit values `h1,h2,...`.
    #[arg(long, default_value = "bipartite", allow_hyphen_values = true)]
    pub height: String,
    /// `json` gives the vertex/class bijection, `csv` the Gram matrix.
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
    /// Comma-separated: all, cartan, roots, coxeter, serre, periodicity, bgp, nondynkin, agreement.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Largest `l` for the periodicity (default 2) and nondynkin (default 8) suites.
    #[arg(long)]
    pub lmax: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Dot,
    Json,
    Csv,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn error(e: &Error) -> Self {
        Outcome { code: exit_code(e), stdout: String::new(), stderr: format!("error: {e}\n") }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SizeLimitExceeded { .. } => EXIT_RESOURCE,
        Error::NotAComplex { .. }
        | Error::KnittingInconsistency(_)
        | Error::NotWellDefined(_)
        | Error::Mismatch(_) => EXIT_CLAIM,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let (common, result) = match &cli.command {
        Command::Quiver(a) => (&a.common, cmd_quiver(a)),
        Command::Hom(a) => (&a.common, cmd_hom(a)),
        Command::Homology(a) => (&a.common, cmd_homology(a)),
        Command::Table(a) => (&a.common, cmd_table(a)),
        Command::Classes(a) => (&a.common, cmd_classes(a)),
        Command::Verify(a) => (&a.common, cmd_verify(a)),
    };
    let mut outcome = match result {
        Ok((code, text)) => Outcome { code, stdout: text, stderr: String::new() },
        Err(e) => return Outcome::error(&e),
    };
    if let Some(path) = &common.output {
        if let Err(e) = std::fs::write(path, &outcome.stdout) {
            return Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {}: {e}\n", path.display()) };
        }
        outcome.stdout.clear();
    }
    outcome
}

/// The graph under study, with its Dynkin structure when it has one.
struct Target {
    graph: TreeGraph,
    diagram: Option<DynkinDiagram>,
    label: String,
}

impl Target {
    fn dynkin(&self) -> Result<&DynkinDiagram> {
        self.diagram.as_ref().ok_or(Error::RequiresDynkin)
    }
}

fn target(common: &Common, default_tree: bool) -> Result<Target> {
    if let Some(spec) = &common.diagram {
        let d = DynkinDiagram::parse(spec)?;
        return Ok(Target { graph: d.graph().clone(), label: d.to_string(), diagram: Some(d) });
    }
    if let Some(path) = &common.tree {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidTree(format!("{}: {e}", path.display())))?;
        let graph = TreeGraph::from_json(&text)?;
        return Ok(Target { graph, diagram: None, label: format!("tree:{}", path.display()) });
    }
    if default_tree {
        return Ok(Target { graph: TreeGraph::star(4), diagram: None, label: "star4".into() });
    }
    Err(Error::Parse("one of --diagram or --tree is required".into()))
}

fn limits(common: &Common) -> Result<Limits> {
    let mut l = Limits::from_env()?;
    if let Some(c) = common.cutoff {
        l.max_basis = c;
    }
    if let Some(m) = common.max_entries {
        l.max_entries = m;
    }
    Ok(l)
}

/// `"i,n"` with a 1-based node and a possibly negative level.
pub fn parse_vertex(s: &str) -> Result<HatVertex> {
    let bad = || Error::Parse(format!("malformed vertex {s:?}, expected \"i,n\""));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    let node = a.trim().parse().map_err(|_| bad())?;
    let level = b.trim().parse().map_err(|_| bad())?;
    Ok(HatVertex::new(node, level))
}

/// `"lo..hi"`.
pub fn parse_window(s: &str) -> Result<(i64, i64)> {
    let bad = || Error::Parse(format!("malformed window {s:?}, expected \"lo..hi\""));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let lo: i64 = a.trim().parse().map_err(|_| bad())?;
    let hi: i64 = b.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

/// `bipartite`, `bipartite+k`, `bipartite-k` (k even) or `h1,h2,...`.
pub fn parse_height(graph: &TreeGraph, s: &str) -> Result<HeightFunction> {
    let base = HeightFunction::bipartite(graph);
    if let Some(rest) = s.strip_prefix("bipartite") {
        if rest.is_empty() {
            return Ok(base);
        }
        let shift: i64 = rest
            .trim_start_matches('+')
            .parse()
            .map_err(|_| Error::InvalidHeight(format!("bad shift in {s:?}")))?;
        if shift % 2 != 0 {
            return Err(Error::InvalidHeight(format!("shift {shift} is odd")));
        }
        return Ok(base.shifted(shift));
    }
    let values = s
        .split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| Error::InvalidHeight(format!("bad values {s:?}")))?;
    HeightFunction::new(graph, values)
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn cmd_quiver(a: &QuiverArgs) -> Result<(i32, String)> {
    let t = target(&a.common, false)?;
    let format = match a.format {
        Format::Dot => QuiverFormat::Dot,
        Format::Json => QuiverFormat::Json,
        Format::Csv => return Err(Error::Parse("quiver supports --format dot or json".into())),
    };
    let quiver = match (&a.window, a.cyclic) {
        (Some(_), true) => return Err(Error::Parse("--cyclic and --window are exclusive".into())),
        (Some(w), false) => {
            let (lo, hi) = parse_window(w)?;
            match &t.diagram {
                Some(d) => HatQuiver::dynkin_window(d, lo, hi),
                None => HatQuiver::window(&t.graph, lo, hi),
            }
        }
        (None, _) => HatQuiver::cyclic(t.dynkin()?),
    };
    Ok((EXIT_OK, quiver.emit(format)))
}

fn cmd_hom(a: &HomArgs) -> Result<(i32, String)> {
    let t = target(&a.common, false)?;
    let lim = limits(&a.common)?;
    let method: Method = a.method.parse()?;
    let q = parse_vertex(&a.source)?;
    let qp = parse_vertex(&a.target)?;
    #[derive(Serialize)]
    struct Out {
        source: HatVertex,
        target: HatVertex,
        hom: u64,
        ext1: u64,
        euler: i64,
        method: Method,
        #[serde(skip_serializing_if = "Option::is_none")]
        ext_by_degree: Option<Vec<u64>>,
    }
    let Some(d) = &t.diagram else {
        // Non-Dynkin trees: window semantics only.
        if method != Method::Quotient {
            return Err(Error::RequiresDynkin);
        }
        let eps = EpsilonChoice::standard(&t.graph);
        let r = meshcat::mesh_quotient_dim(&t.graph, &eps, qp, q, &lim)?;
        let ext1 = r.ext_by_degree.get(1).copied().unwrap_or(0);
        return Ok((
            EXIT_OK,
            pretty(&Out {
                source: q,
                target: qp,
                hom: r.hom,
                ext1,
                euler: r.hom as i64 - ext1 as i64,
                method,
                ext_by_degree: Some(r.ext_by_degree),
            }),
        ));
    };
    let cyc = HatQuiver::cyclic(d);
    let (q, qp) = (cyc.normalize(q)?, cyc.normalize(qp)?);
    let out = match method {
        Method::Quotient => {
            let (i, j, l) = meshcat::cyclic_component(q, qp, cyc.period().expect("cyclic"));
            let dims = crate::dgalgebra::component_homology(&t.graph, &EpsilonChoice::standard(&t.graph), i, j, l, &lim)?;
            let (hom, ext1) = (dims.h(0) as u64, dims.h(1) as u64);
            Out {
                source: q,
                target: qp,
                hom,
                ext1,
                euler: hom as i64 - ext1 as i64,
                method,
                ext_by_degree: Some(dims.homology.iter().map(|&x| x as u64).collect()),
            }
        }
        Method::Knitting => {
            let e = meshcat::knit_euler(d, qp)?[&q];
            let p = meshcat::RHomProfile::from_euler(q, qp, e);
            Out { source: q, target: qp, hom: p.hom, ext1: p.ext1, euler: e, method, ext_by_degree: None }
        }
        Method::Oracle => {
            let cm = roots::class_knitting(d, &HeightFunction::bipartite(&t.graph))?;
            let forms = BilinearForms::new(&t.graph, &cm.height);
            let e = forms.euler(cm.class(q), cm.class(qp));
            let p = meshcat::RHomProfile::from_euler(q, qp, e);
            Out { source: q, target: qp, hom: p.hom, ext1: p.ext1, euler: e, method, ext_by_degree: None }
        }
    };
    Ok((EXIT_OK, pretty(&out)))
}

fn cmd_homology(a: &HomologyArgs) -> Result<(i32, String)> {
    let t = target(&a.common, false)?;
    let lim = limits(&a.common)?;
    for n in [a.i, a.j] {
        if n == 0 || n > t.graph.node_count() {
            return Err(Error::Parse(format!("node {n} out of range 1..={}", t.graph.node_count())));
        }
    }
    let eps = EpsilonChoice::standard(&t.graph);
    let comp = GradedComponent::build(&t.graph, &eps, a.i, a.j, a.l, &lim)?;
    let dims = homology_dims(&comp.complex, &lim)?;
    let mut out = json!({
        "i": a.i,
        "j": a.j,
        "l": a.l,
        "chain": dims.chain,
        "ranks": dims.ranks,
        "homology": dims.homology,
        "euler": dims.euler_homology(),
    });
    if a.dump {
        out["component"] = serde_json::from_str::<Value>(&comp.to_json()).expect("valid json");
    }
    Ok((EXIT_OK, pretty(&out)))
}

fn cmd_table(a: &TableArgs) -> Result<(i32, String)> {
    let t = target(&a.common, false)?;
    let lim = limits(&a.common)?;
    let method: Method = a.method.parse()?;
    let table = meshcat::hom_table(t.dynkin()?, method, &lim)?;
    match a.format {
        Format::Csv => Ok((EXIT_OK, table.to_csv())),
        Format::Json => Ok((EXIT_OK, table.to_json() + "\n")),
        Format::Dot => Err(Error::Parse("table supports --format csv or json".into())),
    }
}

fn cmd_classes(a: &ClassesArgs) -> Result<(i32, String)> {
    let t = target(&a.common, false)?;
    let d = t.dynkin()?;
    let height = parse_height(&t.graph, &a.height)?;
    match a.format {
        Format::Json => {
            let report = roots::realize_root_system(d, &height)?;
            let code = if report.passed() { EXIT_OK } else { EXIT_CLAIM };
            Ok((code, report.bijection_json() + "\n"))
        }
        Format::Csv => {
            let cm = roots::class_knitting(d, &height)?;
            Ok((EXIT_OK, roots::gram_csv(&cm, &BilinearForms::new(&t.graph, &height))))
        }
        Format::Dot => Err(Error::Parse("classes supports --format json or csv".into())),
    }
}

pub const SUITES: [&str; 8] = ["cartan", "roots", "coxeter", "serre", "periodicity", "bgp", "nondynkin", "agreement"];

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: Value,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: Value) -> Self {
        Check { name: name.into(), passed, detail }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub claim: String,
    /// `pass`, `fail` or `cutoff`.
    pub status: String,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub target: String,
    pub status: String,
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn exit_code(&self) -> i32 {
        match self.status.as_str() {
            "pass" => EXIT_OK,
            "cutoff" => EXIT_RESOURCE,
            _ => EXIT_CLAIM,
        }
    }
}

fn parse_suites(s: &str, dynkin: bool) -> Result<Vec<&'static str>> {
    let mut out = BTreeSet::new();
    for name in s.split(',').map(str::trim) {
        if name == "all" {
            if dynkin {
                out.extend(SUITES.iter().copied().filter(|&x| x != "nondynkin"));
            } else {
                out.insert("nondynkin");
            }
            continue;
        }
        let known = SUITES.iter().find(|&&x| x == name).ok_or_else(|| Error::Parse(format!("unknown suite {name:?}")))?;
        out.insert(*known);
    }
    // Report in the canonical order.
    Ok(SUITES.iter().copied().filter(|s| out.contains(s)).collect())
}

fn claim_of(suite: &str) -> &'static str {
    match suite {
        "cartan" => "the symmetrized Euler form equals the Cartan pairing; the diagram involution matches the longest Weyl element",
        "roots" => "classes of indecomposables are exactly the roots, each of norm 2",
        "coxeter" => "the translation acts on classes by a Coxeter element of order h",
        "serre" => "Serre duality Hom(X_q, X_q') = Ext1(X_q', X_{tau q})* holds on Gamma_cyc",
        "periodicity" => "H_k(A_{i,j;l}) = H_{k+2}(A_{i,j;l+2h})",
        "bgp" => "knitting from a reflected slice changes classes by the simple reflection",
        "nondynkin" => "for a non-Dynkin tree the dg-preprojective algebra has no higher homology",
        "agreement" => "quotient, knitting and oracle Hom/Ext1 tables agree; homology is epsilon-independent and single-degree",
        _ => unreachable!(),
    }
}

/// Runs the named suites. `lmax` overrides the periodicity / nondynkin ranges.
pub fn verify(
    diagram: Option<&DynkinDiagram>,
    tree: &TreeGraph,
    label: &str,
    suites: &[&str],
    lmax: Option<usize>,
    limits: &Limits,
) -> Result<VerifyReport> {
    let mut reports = Vec::new();
    for &suite in suites {
        let res = match (suite, diagram) {
            ("nondynkin", _) => suite_nondynkin(tree, lmax.unwrap_or(8), limits),
            (_, None) => return Err(Error::RequiresDynkin),
            ("cartan", Some(d)) => suite_cartan(d),
            ("roots", Some(d)) => suite_roots(d),
            ("coxeter", Some(d)) => suite_coxeter(d),
            ("serre", Some(d)) => suite_serre(d, limits),
            ("periodicity", Some(d)) => suite_periodicity(d, lmax.unwrap_or(2), limits),
            ("bgp", Some(d)) => suite_bgp(d),
            ("agreement", Some(d)) => suite_agreement(d, limits),
            _ => unreachable!(),
        };
        let (status, checks, error) = match res {
            Ok(checks) => {
                let ok = checks.iter().all(|c| c.passed);
                (if ok { "pass" } else { "fail" }, checks, None)
            }
            Err(e @ Error::SizeLimitExceeded { .. }) => ("cutoff", Vec::new(), Some(e.to_string())),
            Err(e) if exit_code(&e) == EXIT_CLAIM => ("fail", Vec::new(), Some(e.to_string())),
            Err(e) => return Err(e),
        };
        reports.push(SuiteReport {
            suite: suite.to_string(),
            claim: claim_of(suite).to_string(),
            status: status.to_string(),
            checks,
            error,
        });
    }
    let status = if reports.iter().any(|r| r.status == "fail") {
        "fail"
    } else if reports.iter().any(|r| r.status == "cutoff") {
        "cutoff"
    } else {
        "pass"
    };
    Ok(VerifyReport { target: label.to_string(), status: status.to_string(), suites: reports })
}

fn cmd_verify(a: &VerifyArgs) -> Result<(i32, String)> {
    let t = target(&a.common, true)?;
    let lim = limits(&a.common)?;
    let suites = parse_suites(&a.suite, t.diagram.is_some())?;
    let report = verify(t.diagram.as_ref(), &t.graph, &t.label, &suites, a.lmax, &lim)?;
    Ok((report.exit_code(), pretty(&report)))
}

/// Height functions reachable from bipartite in at most `moves` reflections.
fn nearby_heights(graph: &TreeGraph, moves: usize) -> Vec<HeightFunction> {
    let mut seen: BTreeSet<HeightFunction> = BTreeSet::new();
    let mut frontier = vec![HeightFunction::bipartite(graph)];
    seen.insert(frontier[0].clone());
    for _ in 0..moves {
        let mut next = Vec::new();
        for h in &frontier {
            for i in graph.nodes() {
                for sign in [Sign::Plus, Sign::Minus] {
                    if let Ok(r) = h.reflect(graph, i, sign) {
                        if seen.insert(r.clone()) {
                            next.push(r);
                        }
                    }
                }
            }
        }
        frontier = next;
    }
    seen.into_iter().collect()
}

fn suite_cartan(d: &DynkinDiagram) -> Result<Vec<Check>> {
    let g = d.graph();
    let heights = nearby_heights(g, 3);
    let bad: Vec<&[i64]> = heights
        .iter()
        .filter(|h| BilinearForms::new(g, h).sym_matrix != *d.cartan())
        .map(|h| h.values())
        .collect();
    let forms = BilinearForms::new(g, &HeightFunction::bipartite(g));
    Ok(vec![
        Check::new(
            "sym_matrix_equals_cartan",
            bad.is_empty(),
            json!({ "heights_checked": heights.len(), "violations": bad, "euler_matrix": forms.euler_matrix }),
        ),
        Check::new("involution_matches_longest_element", d.involution_check(), json!({})),
    ])
}

fn suite_roots(d: &DynkinDiagram) -> Result<Vec<Check>> {
    let g = d.graph();
    let n_h = d.rank() * d.coxeter_number() as usize;
    let oracle = RootSystemOracle::new(d)?;
    let mut checks = vec![Check::new(
        "oracle_root_count",
        oracle.roots().len() == n_h && oracle.positive_roots().len() * 2 == n_h,
        json!({ "roots": oracle.roots().len(), "expected": n_h }),
    )];
    let bip = roots::realize_root_system(d, &HeightFunction::bipartite(g))?;
    checks.push(Check::new(
        "classes_equal_roots",
        bip.passed(),
        json!({
            "classes": bip.vertex_count,
            "roots": bip.root_count,
            "missing": bip.missing_roots,
            "extra": bip.extra_classes,
            "bad_norms": bip.bad_norms,
        }),
    ));
    let cm = roots::class_knitting(d, &HeightFunction::bipartite(g))?;
    let forms = BilinearForms::new(g, &cm.height);
    let out_of_range = cm
        .classes
        .values()
        .flat_map(|a| cm.classes.values().map(move |b| (a, b)))
        .filter(|(a, b)| !(-2..=2).contains(&forms.sym(a, b)))
        .count();
    checks.push(Check::new("pairings_in_range", out_of_range == 0, json!({ "violations": out_of_range })));
    let heights = nearby_heights(g, 3);
    let failing: Vec<&[i64]> = heights
        .iter()
        .filter(|h| !roots::realize_root_system(d, h).map(|r| r.passed()).unwrap_or(false))
        .map(|h| h.values())
        .collect();
    checks.push(Check::new(
        "other_slices_realize_roots",
        failing.is_empty(),
        json!({ "heights_checked": heights.len(), "violations": failing }),
    ));
    Ok(checks)
}

fn suite_coxeter(d: &DynkinDiagram) -> Result<Vec<Check>> {
    let g = d.graph();
    let c = roots::coxeter_element(d, &HeightFunction::bipartite(g))?;
    let mut checks = vec![
        Check::new(
            "order_is_coxeter_number",
            c.order == Some(c.coxeter_number),
            json!({ "order": c.order, "h": c.coxeter_number, "matrix": c.matrix }),
        ),
        Check::new("preserves_form", c.preserves_form, json!({})),
        Check::new(
            "bipartite_factorization",
            c.bipartite_factorization == Some(true),
            json!({ "C": "prod_{p(i)=0} s_i * prod_{p(i)=1} s_i" }),
        ),
    ];
    // A non-bipartite slice gives another Coxeter element of the same order.
    let mono = nearby_heights(g, 1).into_iter().find(|h| *h != HeightFunction::bipartite(g));
    if let Some(h) = mono {
        let c2 = roots::coxeter_element(d, &h)?;
        checks.push(Check::new(
            "other_slice_coxeter",
            c2.order == Some(c2.coxeter_number) && c2.preserves_form,
            json!({ "height": h.values(), "order": c2.order }),
        ));
    }
    Ok(checks)
}

fn suite_serre(d: &DynkinDiagram, limits: &Limits) -> Result<Vec<Check>> {
    let cyc = HatQuiver::cyclic(d);
    let table = meshcat::hom_table(d, Method::Knitting, limits)?;
    let serre = meshcat::serre_violations(&table, &cyc)?;
    let equi = meshcat::tau_equivariance_violations(&table, &cyc)?;
    let rows = meshcat::row_sum_violations(&table, &cyc)?;
    let diag = meshcat::diagonal_violations(&table);
    let mixed = table.entries.values().filter(|p| p.hom * p.ext1 != 0).count();
    Ok(vec![
        Check::new("serre_duality", serre.is_empty(), json!({ "pairs": table.entries.len(), "violations": serre })),
        Check::new("tau_equivariance", equi.is_empty(), json!({ "violations": equi })),
        Check::new("row_sums_tau_invariant", rows.is_empty(), json!({ "violations": rows })),
        Check::new("diagonal_scalars", diag.is_empty(), json!({ "violations": diag })),
        Check::new("hom_ext_disjoint", mixed == 0, json!({ "violations": mixed })),
    ])
}

fn suite_periodicity(d: &DynkinDiagram, lmax: usize, limits: &Limits) -> Result<Vec<Check>> {
    let r = meshcat::periodicity_check(d, lmax, limits)?;
    if let Some(e) = r.first_cutoff {
        return Err(e);
    }
    let failing: Vec<_> = r.rows.iter().filter(|x| !x.holds).collect();
    Ok(vec![Check::new(
        "homology_shift",
        failing.is_empty(),
        json!({ "h": r.coxeter_number, "lmax": lmax, "triples": r.rows.len(), "violations": failing, "rows": r.rows }),
    )])
}

fn suite_bgp(d: &DynkinDiagram) -> Result<Vec<Check>> {
    let g = d.graph();
    let h0 = HeightFunction::bipartite(g);
    let mut checks = Vec::new();
    for i in h0.sources(g).into_iter().chain(h0.sinks(g)) {
        let r = roots::bgp_compatibility(d, &h0, i)?;
        checks.push(Check::new(
            format!("node_{i}_{}", if r.sign == "+" { "source" } else { "sink" }),
            r.mismatches.is_empty(),
            json!({ "violations": r.mismatches }),
        ));
    }
    Ok(checks)
}

fn suite_nondynkin(tree: &TreeGraph, lmax: usize, limits: &Limits) -> Result<Vec<Check>> {
    let eps = EpsilonChoice::standard(tree);
    let mut violations = Vec::new();
    let mut components = 0;
    for i in tree.nodes() {
        for j in tree.nodes() {
            for l in 0..=lmax {
                let dims = crate::dgalgebra::component_homology(tree, &eps, i, j, l, limits)?;
                components += 1;
                if dims.homology.iter().skip(1).any(|&x| x != 0) {
                    violations.push(json!({ "i": i, "j": j, "l": l, "homology": dims.homology }));
                }
            }
        }
    }
    let finite = RootSystemOracle::from_graph(tree).is_ok();
    Ok(vec![
        Check::new(
            "higher_homology_vanishes",
            violations.is_empty(),
            json!({ "lmax": lmax, "components": components, "violations": violations }),
        ),
        Check::new("not_finite_type", !finite, json!({})),
    ])
}

fn suite_agreement(d: &DynkinDiagram, limits: &Limits) -> Result<Vec<Check>> {
    let g = d.graph();
    let cyc = HatQuiver::cyclic(d);
    let period = cyc.period().expect("cyclic");
    let knit = meshcat::hom_table(d, Method::Knitting, limits)?;
    let oracle = meshcat::hom_table(d, Method::Oracle, limits)?;
    let quotient = meshcat::hom_table(d, Method::Quotient, limits)?;
    let kq = quotient.disagreements(&knit);
    let oq = quotient.disagreements(&oracle);

    let mut cache = QuotientCache::new(g, EpsilonChoice::standard(g), *limits);
    let (a, b) = g.edges()[0];
    let mut flipped = QuotientCache::new(g, EpsilonChoice::standard(g).flipped(a, b), *limits);
    let mut eps_bad = BTreeSet::new();
    for &q in cyc.vertices() {
        for &qp in cyc.vertices() {
            let (i, j, l) = meshcat::cyclic_component(q, qp, period);
            let x = cache.get(i, j, l)?.homology.clone();
            if flipped.get(i, j, l)?.homology != x {
                eps_bad.insert((i, j, l));
            }
        }
    }
    let spread = meshcat::concentration_violations(&cache);
    Ok(vec![
        Check::new("quotient_vs_knitting", kq.is_empty(), json!({ "pairs": quotient.entries.len(), "violations": kq })),
        Check::new("quotient_vs_oracle", oq.is_empty(), json!({ "violations": oq })),
        Check::new("epsilon_independence", eps_bad.is_empty(), json!({ "flipped_edge": [a, b], "violations": eps_bad })),
        Check::new("single_degree", spread.is_empty(), json!({ "violations": spread })),
    ])
}
