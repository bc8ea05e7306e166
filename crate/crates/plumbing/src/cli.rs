//! Argument parsing and the command implementations.
//!
//! Every command writes either a text report or, with `--json`, one JSON
//! document. Exit codes: 0 on success, 2 on invalid input, 3 when a
//! budgeted search could not decide.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use plumbing_core::chern::{chern_data, EnumerationBounds, EnumerationKind};
use plumbing_core::dsl::{serialize, serialize_augmented, serialize_graph, ParsedGraph};
use plumbing_core::families::{
    compactifying_verdict, describe_reason, dihedral_form_convert, find_type_in_class, realizable,
    CompactifyingVerdict, RealizabilityVerdict, TYPE_SEARCH_BUDGET,
};
use plumbing_core::group::{
    abelianization_order, is_finite_pi1, pi1_presentation, FinitenessReason, FinitenessVerdict,
};
use plumbing_core::gs::{
    classify_flowchart, exact_on_boundary, negative_gs, plan_inflation_path, positive_gs, trichotomy_witness,
    wrapping_numbers, FlowchartVerdict,
};
use plumbing_core::linalg::{is_negative_definite, SolutionSet};
use plumbing_core::moves::{
    apply, apply_augmented, equivalent_graphs, minimal_model, Equivalence, Move, SearchBudget, Separator,
};
use plumbing_core::{format_rational, format_vector, parse_rational, AugmentedGraph, Error, VertexId};
use serde_json::{json, Value};

use crate::enumerate::{enumerate_parallel, report_json, table};
use crate::formats::*;
use crate::{CliError, EXIT_INVALID, EXIT_OK, EXIT_UNKNOWN};

const GRAMMAR: &str = "\
Graph files (UTF-8, `-` or no file reads stdin):
  v <id> g<genus> s<self-int> [a<num>[/<den>]]   vertex; areas on all vertices or none
  e <id> <id>                                  edge
  statements end at a newline or `;`, `#` starts a comment

Common flags:
  --area <csv rationals>   areas, overriding those in the file (e.g. 3,2 or 1/2,5)
  --budget <int>           extra vertices allowed in equivalence searches
  --tables <path>          realizability tables replacing the bundled ones
  --json                   one JSON document instead of the text report
  --jobs <int>             worker threads for enumeration

Exit status: 0 success, 2 invalid input, 3 undecided within budget.";

#[derive(Parser)]
#[command(name = "plumbing", version, about = "Symplectic divisor plumbing graphs", after_help = GRAMMAR)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Graph file; stdin when omitted or `-`.
    file: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Concave/convex flowchart, type, boundary group and compactification.
    Classify {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        area: Option<String>,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        tables: Option<PathBuf>,
    },
    /// Lifts of the areas and the GS criteria.
    Gs {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        area: Option<String>,
    },
    /// Blows down until minimal.
    Minimize {
        #[command(flatten)]
        input: Input,
    },
    /// Applies one move.
    ApplyMove {
        #[command(flatten)]
        input: Input,
        #[arg(long = "move", value_enum)]
        kind: MoveKind,
        #[arg(long)]
        vertex: Option<String>,
        /// `u,w`
        #[arg(long)]
        edge: Option<String>,
        /// Area of the new vertex on augmented graphs.
        #[arg(long)]
        weight: Option<String>,
    },
    /// Searches for a sequence of moves relating two graphs.
    Equivalent {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Boundary fundamental group presentation and finiteness.
    Pi1 {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// First Chern class coefficients and characterizing number.
    Chern {
        #[command(flatten)]
        input: Input,
    },
    /// (P5) graphs passing the characterizing-number tests.
    Enumerate {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 20)]
        max_y: i64,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        tables: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Rewrites a graph as DSL or JSON, optionally switching the dihedral
    /// presentation.
    Convert {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        dihedral: bool,
    },
    /// Graphviz DOT.
    ExportDot {
        /// Graph file; stdin when omitted or `-`.
        file: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MoveKind {
    BlowUpVertex,
    BlowUpEdge,
    BlowDown,
    ClawExtend,
    DualBlowUp,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    ConjugateExceptions,
    QhdExceptions,
}

/// Text or JSON result of a command, plus whether something was undecided.
struct Report {
    text: String,
    json: Value,
    unknown: bool,
}

impl Report {
    fn new(text: String, json: Value) -> Self {
        Report { text, json, unknown: false }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let _ = write!(err, "{e}\n{GRAMMAR}\n");
            return EXIT_INVALID;
        }
    };
    let as_json = match &cli.command {
        Command::Classify { input, .. }
        | Command::Gs { input, .. }
        | Command::Minimize { input }
        | Command::ApplyMove { input, .. }
        | Command::Pi1 { input, .. }
        | Command::Chern { input }
        | Command::Convert { input, .. } => input.json,
        Command::Equivalent { json, .. } | Command::Enumerate { json, .. } => *json,
        Command::ExportDot { .. } => false,
    };
    match dispatch(cli.command) {
        Ok(report) => {
            if as_json {
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report.json).expect("serializable"));
            } else {
                let _ = write!(out, "{}", report.text);
            }
            if report.unknown {
                EXIT_UNKNOWN
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID
        }
    }
}

fn dispatch(cmd: Command) -> Result<Report, CliError> {
    match cmd {
        Command::Classify { input, area, budget, tables } => classify(&input, area.as_deref(), budget, tables),
        Command::Gs { input, area } => gs(&input, area.as_deref()),
        Command::Minimize { input } => minimize(&input),
        Command::ApplyMove { input, kind, vertex, edge, weight } => {
            apply_move(&input, kind, vertex.as_deref(), edge.as_deref(), weight.as_deref())
        }
        Command::Equivalent { first, second, budget, .. } => equivalent(first, second, budget),
        Command::Pi1 { input, budget } => pi1(&input, budget),
        Command::Chern { input } => chern(&input),
        Command::Enumerate { kind, max_y, jobs, tables, .. } => {
            let kind = match kind {
                Kind::ConjugateExceptions => EnumerationKind::ConjugateExceptions,
                Kind::QhdExceptions => EnumerationKind::QhdExceptions,
            };
            if max_y < 2 {
                return Err(CliError::Input("--max-y must be at least 2".into()));
            }
            let bounds = EnumerationBounds { max_y };
            let tables = load_tables(tables.as_deref())?;
            let found = enumerate_parallel(kind, bounds, &tables, jobs)?;
            Ok(Report::new(table(kind, bounds, &found), report_json(kind, bounds, &found)))
        }
        Command::Convert { input, dihedral } => convert(&input, dihedral),
        Command::ExportDot { file } => {
            let parsed = load_graph(file.as_deref())?;
            Ok(Report::new(to_dot(parsed.graph(), parsed.area()), Value::Null))
        }
    }
}

fn with_extra(default: SearchBudget, extra: Option<usize>) -> SearchBudget {
    match extra {
        Some(n) => SearchBudget { extra_vertices: n, ..default },
        None => default,
    }
}

fn flowchart_text(v: &FlowchartVerdict) -> String {
    match v {
        FlowchartVerdict::NotExactOnBoundary => "Not exact on the boundary (no lift of the areas)".into(),
        FlowchartVerdict::ConvexNegativeDefinite => "Convex (negative definite)".into(),
        FlowchartVerdict::Concave { witness } => {
            format!("Concave (positive GS witness z = {})", format_vector(witness))
        }
        FlowchartVerdict::DeformableToConcave { target_area, witness } => format!(
            "Deformable to concave (target area a = {}, witness z = {})",
            format_vector(target_area),
            format_vector(witness)
        ),
    }
}

fn flowchart_json(v: &FlowchartVerdict) -> Value {
    match v {
        FlowchartVerdict::NotExactOnBoundary => json!({ "verdict": "not-exact" }),
        FlowchartVerdict::ConvexNegativeDefinite => json!({ "verdict": "convex" }),
        FlowchartVerdict::Concave { witness } => json!({ "verdict": "concave", "witness": vector_json(witness) }),
        FlowchartVerdict::DeformableToConcave { target_area, witness } => json!({
            "verdict": "deformable-to-concave",
            "target_area": vector_json(target_area),
            "witness": vector_json(witness),
        }),
    }
}

fn finiteness_reason(r: &FinitenessReason) -> String {
    match r {
        FinitenessReason::ZeroDeterminant => "determinant zero".into(),
        FinitenessReason::TypeMatch(t) => format!("type {t}"),
        FinitenessReason::Presentation => "presentation reduces to one generator".into(),
        FinitenessReason::SeveralBranchPoints => "negative definite with several branch points".into(),
        FinitenessReason::OneBranchPoint => "one branch point, negative branches".into(),
    }
}

fn finiteness_text(v: &FinitenessVerdict) -> String {
    match v {
        FinitenessVerdict::Finite { order, cyclic, reason } => {
            let shape = if *cyclic { "cyclic" } else { "non-cyclic" };
            match order {
                Some(n) => format!("finite {shape} of order {n} ({})", finiteness_reason(reason)),
                None => format!("finite {shape} ({})", finiteness_reason(reason)),
            }
        }
        FinitenessVerdict::Infinite { reason } => format!("infinite ({})", finiteness_reason(reason)),
        FinitenessVerdict::Unknown => "unknown within budget".into(),
    }
}

fn finiteness_json(v: &FinitenessVerdict) -> Value {
    match v {
        FinitenessVerdict::Finite { order, cyclic, reason } => json!({
            "verdict": "finite",
            "order": order.as_ref().map(|n| n.to_string()),
            "cyclic": cyclic,
            "reason": finiteness_reason(reason),
        }),
        FinitenessVerdict::Infinite { reason } => json!({ "verdict": "infinite", "reason": finiteness_reason(reason) }),
        FinitenessVerdict::Unknown => json!({ "verdict": "unknown" }),
    }
}

fn realizable_text(v: &RealizabilityVerdict) -> (String, &'static str) {
    match v {
        RealizabilityVerdict::Yes(r) => (format!("yes ({})", describe_reason(r)), "yes"),
        RealizabilityVerdict::No(r) => (format!("no ({})", describe_reason(r)), "no"),
        RealizabilityVerdict::Unknown => ("unknown within budget".into(), "unknown"),
    }
}

fn compactifying_name(v: &CompactifyingVerdict) -> &'static str {
    match v {
        CompactifyingVerdict::CappingDivisor => "capping divisor",
        CompactifyingVerdict::FillingDivisor => "filling divisor",
        CompactifyingVerdict::Neither => "neither",
        CompactifyingVerdict::Unknown => "unknown within budget",
    }
}

fn classify(
    input: &Input,
    area: Option<&str>,
    budget: Option<usize>,
    tables: Option<PathBuf>,
) -> Result<Report, CliError> {
    let parsed = load_graph(input.file.as_deref())?;
    let ag = with_area(&parsed, area)?;
    let tables = load_tables(tables.as_deref())?;
    let budget = with_extra(TYPE_SEARCH_BUDGET, budget);
    let g = parsed.graph();
    let mut text = String::new();
    let mut doc = json!({ "command": "classify", "graph": graph_json(g, ag.as_ref().map(|a| a.area())) });
    let mut unknown = false;

    if let Some(ag) = &ag {
        let flow = classify_flowchart(ag);
        text.push_str(&flowchart_text(&flow));
        text.push('\n');
        doc["flowchart"] = flowchart_json(&flow);
    }
    if g.require_sphere_tree().is_err() {
        text.push_str("type: not a tree of spheres\n");
        return Ok(Report { text, json: doc, unknown });
    }

    match find_type_in_class(g, budget)? {
        Some(m) if m.trace.is_empty() => {
            text.push_str(&format!("type: {}\n", m.tag));
            doc["type"] = json!({ "name": m.tag.name(), "display": m.tag.to_string(), "moves": 0 });
        }
        Some(m) => {
            text.push_str(&format!("type: {} after {} moves\n", m.tag, m.trace.len()));
            doc["type"] = json!({ "name": m.tag.name(), "display": m.tag.to_string(), "moves": m.trace.len() });
        }
        None => {
            text.push_str("type: none found within budget\n");
            doc["type"] = Value::Null;
        }
    }

    let fin = is_finite_pi1(g, budget)?;
    text.push_str(&format!("boundary group: {}\n", finiteness_text(&fin)));
    doc["pi1"] = finiteness_json(&fin);
    unknown |= fin == FinitenessVerdict::Unknown;

    if let Some(ag) = &ag {
        match compactifying_verdict(ag, budget, &tables) {
            Ok(v) => {
                unknown |= v == CompactifyingVerdict::Unknown;
                text.push_str(&format!("compactifying: {}\n", compactifying_name(&v)));
                doc["compactifying"] = json!(compactifying_name(&v));
            }
            Err(Error::InfinitePi1) => {
                text.push_str("compactifying: not decided (infinite boundary group)\n");
                doc["compactifying"] = json!("infinite boundary group");
            }
            Err(e) => return Err(e.into()),
        }
    } else {
        match realizable(g, budget, &tables) {
            Ok(v) => {
                unknown |= v == RealizabilityVerdict::Unknown;
                let (t, short) = realizable_text(&v);
                text.push_str(&format!("realizable: {t}\n"));
                doc["realizable"] = json!(short);
            }
            Err(e @ (Error::InfinitePi1 | Error::NegativeDefinite)) => {
                let why = if e == Error::InfinitePi1 { "infinite boundary group" } else { "negative definite" };
                text.push_str(&format!("realizable: not applicable ({why})\n"));
                doc["realizable"] = json!(format!("not applicable: {why}"));
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Report { text, json: doc, unknown })
}

fn require_area(parsed: &ParsedGraph, area: Option<&str>) -> Result<AugmentedGraph, CliError> {
    with_area(parsed, area)?.ok_or_else(|| CliError::Input("areas required: give --area or a<area> in the file".into()))
}

fn gs(input: &Input, area: Option<&str>) -> Result<Report, CliError> {
    let parsed = load_graph(input.file.as_deref())?;
    let ag = require_area(&parsed, area)?;
    let q = ag.graph().intersection_matrix();
    let mut text = String::new();
    let mut doc = json!({ "command": "gs", "graph": graph_json(ag.graph(), Some(ag.area())) });

    let set = exact_on_boundary(&ag);
    match &set {
        SolutionSet::Empty => text.push_str("lift: none (not exact on the boundary)\n"),
        SolutionSet::Unique(z) => text.push_str(&format!("lift: z = {}\n", format_vector(z))),
        SolutionSet::Affine { particular, kernel } => {
            let k: Vec<String> = kernel.iter().map(|v| format_vector(v)).collect();
            text.push_str(&format!("lift: z = {} + span({})\n", format_vector(particular), k.join("; ")));
        }
    }
    doc["lift"] = match &set {
        SolutionSet::Empty => Value::Null,
        _ => json!({
            "particular": vector_json(set.particular().expect("non-empty")),
            "kernel": set.kernel().iter().map(|v| vector_json(v)).collect::<Vec<_>>(),
        }),
    };

    let pos = positive_gs(&ag);
    let neg = negative_gs(&ag);
    for (name, key, w) in [("positive GS", "positive", &pos), ("negative GS", "negative", &neg)] {
        match w {
            Some(z) => text.push_str(&format!("{name}: satisfied, z = {}\n", format_vector(z))),
            None => text.push_str(&format!("{name}: not satisfied\n")),
        }
        doc[key] = w.as_ref().map_or(Value::Null, |z| vector_json(z));
    }
    // Of the GS witness when there is one, otherwise of a particular lift.
    if let Some(z) = pos.as_deref().or(neg.as_deref()).or(set.particular()) {
        let lambda = wrapping_numbers(z);
        text.push_str(&format!("wrapping numbers: {}\n", format_vector(&lambda)));
        doc["wrapping_numbers"] = vector_json(&lambda);
    }

    if !is_negative_definite(&q) {
        match trichotomy_witness(&q) {
            Ok(z) => {
                text.push_str(&format!("trichotomy witness: z = {}\n", format_vector(&z)));
                doc["trichotomy_witness"] = vector_json(&z);
            }
            Err(e) => text.push_str(&format!("trichotomy witness: none ({e})\n")),
        }
        if let Ok(path) = plan_inflation_path(&ag) {
            text.push_str(&format!("inflation path: {} segments\n", path.segments()));
            doc["inflation_path"] = Value::Array(path.waypoints.iter().map(|w| vector_json(w)).collect());
        }
    }
    Ok(Report::new(text, doc))
}

fn minimize(input: &Input) -> Result<Report, CliError> {
    let parsed = load_graph(input.file.as_deref())?;
    let (m, trace) = minimal_model(parsed.graph())?;
    let mut text = serialize_graph(&m);
    text.push_str(&format!("# {} blow-downs\n", trace.len()));
    for s in &trace.steps {
        text.push_str(&format!("# {}\n", move_text(&s.mv)));
    }
    let doc = json!({ "command": "minimize", "graph": graph_json(&m, None), "trace": trace_json(&trace) });
    Ok(Report::new(text, doc))
}

fn apply_move(
    input: &Input,
    kind: MoveKind,
    vertex: Option<&str>,
    edge: Option<&str>,
    weight: Option<&str>,
) -> Result<Report, CliError> {
    let parsed = load_graph(input.file.as_deref())?;
    let v = || vertex.map(VertexId::from).ok_or_else(|| CliError::Input("this move needs --vertex".into()));
    let weight =
        weight.map(|w| parse_rational(w).ok_or_else(|| CliError::Input(format!("bad weight `{w}`")))).transpose()?;
    let mv = match kind {
        MoveKind::BlowUpVertex => Move::BlowUpVertex { v: v()?, weight },
        MoveKind::BlowUpEdge => {
            let (u, w) = edge
                .and_then(|e| e.split_once(','))
                .ok_or_else(|| CliError::Input("blow-up-edge needs --edge u,w".into()))?;
            Move::BlowUpEdge { u: u.trim().into(), w: w.trim().into(), weight }
        }
        MoveKind::BlowDown => Move::BlowDown { v: v()? },
        MoveKind::ClawExtend => Move::ClawExtend { v: v()? },
        MoveKind::DualBlowUp => Move::DualBlowUp { v: v()? },
    };
    // Areas follow blow-ups and blow-downs; the other moves drop them.
    let result = match (&parsed, &mv) {
        (ParsedGraph::Augmented(ag), Move::BlowUpVertex { .. } | Move::BlowUpEdge { .. } | Move::BlowDown { .. }) => {
            ParsedGraph::Augmented(apply_augmented(ag, &mv)?)
        }
        _ => ParsedGraph::Plain(apply(parsed.graph(), &mv)?),
    };
    let doc = json!({ "command": "apply-move", "move": move_json(&mv), "graph": parsed_json(&result) });
    Ok(Report::new(serialize(&result), doc))
}

fn separator_name(s: Separator) -> &'static str {
    match s {
        Separator::Determinant => "determinant",
        Separator::Inertia => "inertia",
        Separator::SmithForm => "Smith normal form",
    }
}

fn equivalent(first: PathBuf, second: PathBuf, budget: Option<usize>) -> Result<Report, CliError> {
    let a = load_graph(Some(&first))?;
    let b = load_graph(Some(&second))?;
    let budget = with_extra(SearchBudget::default(), budget);
    let result = equivalent_graphs(a.graph(), b.graph(), budget)?;
    let mut report = match &result {
        Equivalence::Proof { trace, .. } => {
            let mut text = format!("equivalent: {} moves\n", trace.len());
            for s in &trace.steps {
                text.push_str(&format!("  {}\n", move_text(&s.mv)));
            }
            Report::new(text, json!({ "command": "equivalent", "verdict": "equivalent", "trace": trace_json(trace) }))
        }
        Equivalence::NotEquivalent(s) => Report::new(
            format!("not equivalent ({} differs)\n", separator_name(*s)),
            json!({ "command": "equivalent", "verdict": "not-equivalent", "separator": separator_name(*s) }),
        ),
        Equivalence::Unknown => {
            Report::new("unknown within budget\n".into(), json!({ "command": "equivalent", "verdict": "unknown" }))
        }
    };
    report.unknown = result == Equivalence::Unknown;
    Ok(report)
}

fn pi1(input: &Input, budget: Option<usize>) -> Result<Report, CliError> {
    let parsed = load_graph(input.file.as_deref())?;
    let g = parsed.graph();
    let p = pi1_presentation(g)?;
    let order = abelianization_order(g)?;
    let fin = is_finite_pi1(g, with_extra(TYPE_SEARCH_BUDGET, budget))?;
    let mut text = p.to_text();
    match &order {
        Some(n) => text.push_str(&format!("abelianization order {n}\n")),
        None => text.push_str("abelianization infinite\n"),
    }
    text.push_str(&format!("finiteness: {}\n", finiteness_text(&fin)));
    let relators: Vec<Value> =
        p.relators().iter().map(|w| Value::Array(w.iter().map(|&(g, k)| json!([g + 1, k])).collect())).collect();
    let doc = json!({
        "command": "pi1",
        "generators": p.generators,
        "relators": relators,
        "abelianization_order": order.as_ref().map(|n| n.to_string()),
        "finiteness": finiteness_json(&fin),
    });
    let mut report = Report::new(text, doc);
    report.unknown = fin == FinitenessVerdict::Unknown;
    Ok(report)
}

fn chern(input: &Input) -> Result<Report, CliError> {
    let parsed = load_graph(input.file.as_deref())?;
    let d = chern_data(parsed.graph())?;
    let text = format!(
        "w = {}\nc1^2 = {}\nn = {}\n",
        format_vector(&d.w),
        format_rational(&d.c1_square),
        format_rational(&d.characterizing_number)
    );
    let doc = json!({
        "command": "chern",
        "w": vector_json(&d.w),
        "c1_square": rational_json(&d.c1_square),
        "characterizing_number": rational_json(&d.characterizing_number),
    });
    Ok(Report::new(text, doc))
}

fn convert(input: &Input, dihedral: bool) -> Result<Report, CliError> {
    let parsed = load_graph(input.file.as_deref())?;
    let out = if dihedral { ParsedGraph::Plain(dihedral_form_convert(parsed.graph())?) } else { parsed };
    let text = match &out {
        ParsedGraph::Plain(g) => serialize_graph(g),
        ParsedGraph::Augmented(ag) => serialize_augmented(ag),
    };
    Ok(Report::new(text, json!({ "command": "convert", "graph": parsed_json(&out) })))
}

/// Convenience for tests and embedding: runs with captured output.
pub fn run_captured<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(args, &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned(), String::from_utf8_lossy(&err).into_owned())
}
