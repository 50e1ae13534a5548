//! The `adjset` command line: argument parsing, dispatch and rendering.
//!
//! [`run`] does all the work and returns the exit code together with what
//! would go to stdout and stderr, so tests can drive it without spawning a
//! process. Exit codes: 0 when the criterion holds or sets were found, 1 for
//! a definite negative, 2 for bad input.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use adjset_core::adjustment::{
    adjust_set, amenability_violation, backdoor_verify, constructive, constructive_backdoor,
    constructive_gbc, diagnose, forbidden_set, gac_verify, gbc_verify, preprocess_exposures,
};
use adjset_core::orientation::{orient_avoiding_into, orient_to_representative};
use adjset_core::reach::m_connected;
use adjset_core::sem::{adversarial_sem, random_sem, AdversarialCase, ADVERSARIAL_GAP};
use adjset_core::{
    list_adjustment_sets, parse_graph, serialize_graph, Criterion, EnumConstraints, Error,
    FailedCondition, GraphClass, Hint, MixedGraph, NodeSet, Pattern, Verdict, Witness,
};
use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

/// Largest `|do - adjusted|` tolerated for an accepted set.
const SOUNDNESS_TOL: f64 = 1e-8;

#[derive(Parser, Debug)]
#[command(name = "adjset", version, about = "Covariate adjustment sets in causal graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Graph file.
    #[arg(long)]
    graph: PathBuf,
    /// Print a JSON document instead of text.
    #[arg(long)]
    json: bool,
    /// Report wall-clock time.
    #[arg(long)]
    timing: bool,
}

#[derive(Args, Debug)]
struct Query {
    /// Exposures, comma-separated.
    #[arg(short = 'x', value_delimiter = ',', required = true)]
    x: Vec<String>,
    /// Outcomes, comma-separated.
    #[arg(short = 'y', value_delimiter = ',', required = true)]
    y: Vec<String>,
}

#[derive(Args, Debug)]
struct Covariates {
    /// Candidate adjustment set, comma-separated.
    #[arg(short = 'z', value_delimiter = ',')]
    z: Vec<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Which {
    Gac,
    Gbc,
    Bc,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a graph and check its class constraints.
    Validate {
        #[command(flatten)]
        common: Common,
    },
    /// Whether every proper possibly directed path out of X starts visibly.
    Amenable {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        query: Query,
    },
    /// The forbidden set for (X, Y).
    Forb {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        query: Query,
    },
    /// The canonical set PossAn(X ∪ Y) minus X, Y and the forbidden set.
    Adjust {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        query: Query,
    },
    /// Check a candidate set against a criterion.
    Check {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        query: Query,
        #[command(flatten)]
        cov: Covariates,
        #[arg(long, value_enum, default_value = "gac")]
        criterion: Which,
    },
    /// Construct a set for a criterion if one exists.
    Construct {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        query: Query,
        #[arg(long, value_enum, default_value = "gac")]
        criterion: Which,
        /// Nodes the set must avoid (GAC only); closed under possible
        /// descendants together with the forbidden set.
        #[arg(long, value_delimiter = ',')]
        avoid: Vec<String>,
    },
    /// List adjustment sets in ascending order.
    List {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        query: Query,
        /// Only sets that stay valid under no single removal.
        #[arg(long)]
        minimal: bool,
        /// Nodes every set must contain.
        #[arg(long, value_delimiter = ',')]
        include: Vec<String>,
        /// Nodes a set may contain.
        #[arg(long, value_delimiter = ',')]
        restrict: Option<Vec<String>>,
        /// Stop after this many sets; 0 lists everything.
        #[arg(long, default_value_t = 10_000)]
        limit: usize,
    },
    /// Which criteria admit a set, and why the others do not.
    Diagnose {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        query: Query,
    },
    /// Drop exposures without a proper possibly directed path to Y.
    PreprocessX {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        query: Query,
    },
    /// m-separation of X and Y given Z.
    Msep {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        query: Query,
        #[command(flatten)]
        cov: Covariates,
    },
    /// Orient a CPDAG or PAG into a member of its class.
    Orient {
        #[command(flatten)]
        common: Common,
        /// Orient no circle edge into this node.
        #[arg(long)]
        avoid_into: Option<String>,
    },
    /// Compare a verdict against linear SEMs on a DAG.
    SemVerify {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        query: Query,
        #[command(flatten)]
        cov: Covariates,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random standardized SEMs drawn per check.
        #[arg(long, default_value_t = 3)]
        reps: u64,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Amenable { .. } => "amenable",
            Command::Forb { .. } => "forb",
            Command::Adjust { .. } => "adjust",
            Command::Check { .. } => "check",
            Command::Construct { .. } => "construct",
            Command::List { .. } => "list",
            Command::Diagnose { .. } => "diagnose",
            Command::PreprocessX { .. } => "preprocess-x",
            Command::Msep { .. } => "msep",
            Command::Orient { .. } => "orient",
            Command::SemVerify { .. } => "sem-verify",
        }
    }

    fn common(&self) -> &Common {
        match self {
            Command::Validate { common }
            | Command::Amenable { common, .. }
            | Command::Forb { common, .. }
            | Command::Adjust { common, .. }
            | Command::Check { common, .. }
            | Command::Construct { common, .. }
            | Command::List { common, .. }
            | Command::Diagnose { common, .. }
            | Command::PreprocessX { common, .. }
            | Command::Msep { common, .. }
            | Command::Orient { common, .. }
            | Command::SemVerify { common, .. } => common,
        }
    }
}

/// What a run produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Result of a command before rendering: the fields of the JSON document,
/// the text form and the exit code.
struct Report {
    code: i32,
    fields: Map<String, Value>,
    text: String,
}

impl Report {
    fn new(code: i32) -> Report {
        Report { code, fields: Map::new(), text: String::new() }
    }

    fn field(mut self, key: &str, value: impl Into<Value>) -> Report {
        self.fields.insert(key.into(), value.into());
        self
    }

    fn line(mut self, text: impl AsRef<str>) -> Report {
        self.text.push_str(text.as_ref());
        self.text.push('\n');
        self
    }
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let cmd = &cli.command;
    let common = cmd.common();
    let start = Instant::now();
    let result = execute(cmd);
    let elapsed = start.elapsed().as_secs_f64() * 1e3;

    let report = match result {
        Ok(r) => r,
        Err(e) => {
            let msg = format!("{e:#}");
            if common.json {
                let doc = json!({ "command": cmd.name(), "error": msg, "exit_code": 2 });
                return Outcome { code: 2, stdout: render_json(&doc), stderr: String::new() };
            }
            return Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") };
        }
    };

    if common.json {
        let mut doc = report.fields;
        doc.insert("command".into(), cmd.name().into());
        doc.insert("inputs".into(), inputs(cmd));
        doc.insert("exit_code".into(), report.code.into());
        if common.timing {
            doc.insert("timing_ms".into(), elapsed.into());
        }
        Outcome { code: report.code, stdout: render_json(&Value::Object(doc)), stderr: String::new() }
    } else {
        let mut text = report.text;
        if common.timing {
            let _ = writeln!(text, "time: {elapsed:.3} ms");
        }
        Outcome { code: report.code, stdout: text, stderr: String::new() }
    }
}

fn render_json(v: &Value) -> String {
    // serde_json keeps object keys sorted, which makes the document
    // canonical.
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn inputs(cmd: &Command) -> Value {
    let mut m = Map::new();
    m.insert("graph".into(), cmd.common().graph.display().to_string().into());
    let (query, cov) = match cmd {
        Command::Amenable { query, .. }
        | Command::Forb { query, .. }
        | Command::Adjust { query, .. }
        | Command::Construct { query, .. }
        | Command::List { query, .. }
        | Command::Diagnose { query, .. }
        | Command::PreprocessX { query, .. } => (Some(query), None),
        Command::Check { query, cov, .. }
        | Command::Msep { query, cov, .. }
        | Command::SemVerify { query, cov, .. } => (Some(query), Some(cov)),
        Command::Validate { .. } | Command::Orient { .. } => (None, None),
    };
    if let Some(q) = query {
        m.insert("x".into(), json!(q.x));
        m.insert("y".into(), json!(q.y));
    }
    if let Some(c) = cov {
        m.insert("z".into(), json!(c.z));
    }
    match cmd {
        Command::Check { criterion, .. } => {
            m.insert("criterion".into(), criterion_name(*criterion).into());
        }
        Command::Construct { criterion, avoid, .. } => {
            m.insert("criterion".into(), criterion_name(*criterion).into());
            m.insert("avoid".into(), json!(avoid));
        }
        Command::List { minimal, include, restrict, limit, .. } => {
            m.insert("minimal".into(), (*minimal).into());
            m.insert("include".into(), json!(include));
            m.insert("restrict".into(), json!(restrict));
            m.insert("limit".into(), (*limit).into());
        }
        Command::Orient { avoid_into, .. } => {
            m.insert("avoid_into".into(), json!(avoid_into));
        }
        Command::SemVerify { seed, reps, .. } => {
            m.insert("seed".into(), (*seed).into());
            m.insert("reps".into(), (*reps).into());
        }
        _ => {}
    }
    Value::Object(m)
}

fn criterion_name(c: Which) -> &'static str {
    match c {
        Which::Gac => "GAC",
        Which::Gbc => "GBC",
        Which::Bc => "BC",
    }
}

fn core_criterion_name(c: Criterion) -> &'static str {
    match c {
        Criterion::Gac => "GAC",
        Criterion::Gbc => "GBC",
        Criterion::Bc => "BC",
    }
}

fn pattern_name(p: Pattern) -> &'static str {
    match p {
        Pattern::P1 => "P1",
        Pattern::P2 => "P2",
        Pattern::P3 => "P3",
        Pattern::P4 => "P4",
    }
}

fn hint_name(h: Hint) -> &'static str {
    match h {
        Hint::ExposureForbidden => "exposure_forbidden",
        Hint::ForbiddenCharacterizes => "forbidden_characterizes",
        Hint::GacIffBc => "gac_iff_bc",
        Hint::GacIffGbc => "gac_iff_gbc",
    }
}

fn condition_name(c: FailedCondition) -> &'static str {
    match c {
        FailedCondition::Amenability => "amenability",
        FailedCondition::ForbiddenSet => "forbidden_set",
        FailedCondition::Blocking => "blocking",
    }
}

fn case_name(c: AdversarialCase) -> &'static str {
    match c {
        AdversarialCase::ColliderFreePath => "collider_free_path",
        AdversarialCase::MediatorInZ => "mediator_in_z",
        AdversarialCase::DescendantOfOutcome => "descendant_of_outcome",
        AdversarialCase::DescendantOfMediator => "descendant_of_mediator",
        AdversarialCase::ColliderPath => "collider_path",
        AdversarialCase::Generic => "generic",
    }
}

fn load(common: &Common) -> anyhow::Result<MixedGraph> {
    let path = &common.graph;
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_graph(&text).with_context(|| format!("parsing {}", path.display()))
}

fn set(g: &MixedGraph, names: &[String]) -> anyhow::Result<NodeSet> {
    Ok(g.node_set(names)?)
}

fn query_sets(g: &MixedGraph, q: &Query) -> anyhow::Result<(NodeSet, NodeSet)> {
    Ok((set(g, &q.x)?, set(g, &q.y)?))
}

fn names(g: &MixedGraph, s: &NodeSet) -> Vec<String> {
    g.set_names(s)
}

fn braces(g: &MixedGraph, s: &NodeSet) -> String {
    format!("{{{}}}", names(g, s).join(", "))
}

fn witness_json(g: &MixedGraph, w: &Witness) -> Value {
    match w {
        Witness::Path(p) => json!({
            "kind": "path",
            "path": p.display(g).to_string(),
            "nodes": p.nodes().iter().map(|&v| g.name(v)).collect::<Vec<_>>(),
        }),
        Witness::Nodes(s) => json!({ "kind": "nodes", "nodes": names(g, s) }),
    }
}

fn witness_text(g: &MixedGraph, w: &Witness) -> String {
    match w {
        Witness::Path(p) => p.display(g).to_string(),
        Witness::Nodes(s) => braces(g, s),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn execute(cmd: &Command) -> anyhow::Result<Report> {
    let g = load(cmd.common())?;
    match cmd {
        Command::Validate { .. } => Ok(Report::new(0)
            .field("valid", true)
            .field("class", g.class().as_str())
            .field("nodes", g.n())
            .field("edges", g.edge_count())
            .line(format!("valid {}: {} nodes, {} edges", g.class().as_str(), g.n(), g.edge_count()))),
        Command::Amenable { query, .. } => {
            let (x, y) = query_sets(&g, query)?;
            let violation = amenability_violation(&g, &x, &y)?;
            let witness = violation.as_ref().map(|p| p.display(&g).to_string());
            let r = Report::new(if violation.is_none() { 0 } else { 1 })
                .field("amenable", violation.is_none())
                .field("witness", json!(witness));
            Ok(match witness {
                None => r.line("amenable: yes"),
                Some(w) => r.line("amenable: no").line(format!("witness: {w}")),
            })
        }
        Command::Forb { query, .. } => {
            let (x, y) = query_sets(&g, query)?;
            let forb = forbidden_set(&g, &x, &y);
            Ok(Report::new(0)
                .field("forbidden", names(&g, &forb))
                .line(format!("Forb: {}", braces(&g, &forb))))
        }
        Command::Adjust { query, .. } => {
            let (x, y) = query_sets(&g, query)?;
            let adj = adjust_set(&g, &x, &y);
            let verdict = gac_verify(&g, &x, &y, &adj)?;
            Ok(Report::new(if verdict.ok { 0 } else { 1 })
                .field("adjust", names(&g, &adj))
                .field("valid", verdict.ok)
                .line(format!("Adjust: {}", braces(&g, &adj)))
                .line(format!("valid: {}", yes_no(verdict.ok))))
        }
        Command::Check { query, cov, criterion, .. } => {
            let (x, y) = query_sets(&g, query)?;
            let z = set(&g, &cov.z)?;
            check(&g, &x, &y, &z, *criterion)
        }
        Command::Construct { query, criterion, avoid, .. } => {
            let (x, y) = query_sets(&g, query)?;
            let found = match criterion {
                Which::Gac => {
                    let extra = set(&g, avoid)?;
                    let i = g.poss_de(&forbidden_set(&g, &x, &y).union(&extra));
                    if !amenable(&g, &x, &y)? {
                        None
                    } else {
                        constructive(&g, &x, &y, &i)?
                    }
                }
                _ if !avoid.is_empty() => bail!("--avoid only applies to the GAC"),
                Which::Gbc => constructive_gbc(&g, &x, &y)?,
                Which::Bc => constructive_backdoor(&g, &x, &y)?,
            };
            let name = criterion_name(*criterion);
            let r = Report::new(if found.is_some() { 0 } else { 1 })
                .field("found", found.is_some())
                .field("set", json!(found.as_ref().map(|s| names(&g, s))));
            Ok(match &found {
                Some(s) => r.line(format!("{name} set: {}", braces(&g, s))),
                None => r.line(format!("{name} set: none")),
            })
        }
        Command::List { query, minimal, include, restrict, limit, .. } => {
            let (x, y) = query_sets(&g, query)?;
            let c = EnumConstraints {
                must_include: set(&g, include)?,
                allowed: restrict.as_ref().map(|r| set(&g, r)).transpose()?,
                minimal_only: *minimal,
                limit: *limit,
            };
            list(&g, &x, &y, &c)
        }
        Command::Diagnose { query, .. } => {
            let (x, y) = query_sets(&g, query)?;
            let d = diagnose(&g, &x, &y)?;
            let mut r = Report::new(if d.exists(Criterion::Gac) == Some(true) { 0 } else { 1 })
                .field("amenable", d.amenable);
            let mut criteria = Vec::new();
            for c in &d.criteria {
                let name = core_criterion_name(c.criterion);
                let patterns: Vec<&str> = c.triggered.iter().map(|&p| pattern_name(p)).collect();
                criteria.push(json!({ "criterion": name, "exists": c.exists, "patterns": patterns }));
                r = if patterns.is_empty() {
                    r.line(format!("{name}: {}", yes_no(c.exists)))
                } else {
                    r.line(format!("{name}: {} ({})", yes_no(c.exists), patterns.join(", ")))
                };
            }
            let hints: Vec<&str> = d.hints.iter().map(|&h| hint_name(h)).collect();
            if !hints.is_empty() {
                r = r.line(format!("hints: {}", hints.join(", ")));
            }
            Ok(r.field("criteria", criteria).field("hints", hints))
        }
        Command::PreprocessX { query, .. } => {
            let (x, y) = query_sets(&g, query)?;
            let kept = preprocess_exposures(&g, &x, &y)?;
            Ok(Report::new(0)
                .field("exposures", names(&g, &kept))
                .field("dropped", names(&g, &x.difference(&kept)))
                .line(format!("X: {}", braces(&g, &kept))))
        }
        Command::Msep { query, cov, .. } => {
            let (x, y) = query_sets(&g, query)?;
            let z = set(&g, &cov.z)?;
            let connected = m_connected(&g, &x, &y, &z)?;
            Ok(Report::new(if connected { 1 } else { 0 })
                .field("separated", !connected)
                .line(if connected { "m-connected" } else { "m-separated" }))
        }
        Command::Orient { avoid_into, .. } => {
            let h = match avoid_into {
                Some(v) => {
                    let id = g.id(v).ok_or_else(|| Error::UnknownNode(v.clone()))?;
                    orient_avoiding_into(&g, id)?
                }
                None => orient_to_representative(&g)?,
            };
            let text = serialize_graph(&h);
            let mut r = Report::new(0).field("graph", text.clone());
            r.text = text;
            if !r.text.ends_with('\n') {
                r.text.push('\n');
            }
            Ok(r)
        }
        Command::SemVerify { query, cov, seed, reps, .. } => {
            let (x, y) = query_sets(&g, query)?;
            let z = set(&g, &cov.z)?;
            sem_verify(&g, &x, &y, &z, *seed, *reps)
        }
    }
}

fn amenable(g: &MixedGraph, x: &NodeSet, y: &NodeSet) -> anyhow::Result<bool> {
    Ok(amenability_violation(g, x, y)?.is_none())
}

fn check(g: &MixedGraph, x: &NodeSet, y: &NodeSet, z: &NodeSet, c: Which) -> anyhow::Result<Report> {
    let name = criterion_name(c);
    let (ok, verdict): (bool, Option<Verdict>) = match c {
        Which::Gac => {
            let v = gac_verify(g, x, y, z)?;
            (v.ok, Some(v))
        }
        Which::Gbc => (gbc_verify(g, x, y, z)?, None),
        Which::Bc => (backdoor_verify(g, x, y, z)?, None),
    };
    let mut r = Report::new(if ok { 0 } else { 1 }).field("ok", ok);
    match &verdict {
        Some(v) => {
            r = r
                .field("failed_condition", json!(v.failed_condition.map(condition_name)))
                .field("witness", v.witness.as_ref().map_or(Value::Null, |w| witness_json(g, w)));
            r = match v.failed_condition {
                None => r.line(format!("{name}: satisfied")),
                Some(fc) => r.line(format!("{name}: not satisfied ({})", condition_name(fc))),
            };
            if let Some(w) = &v.witness {
                r = r.line(format!("witness: {}", witness_text(g, w)));
            }
        }
        None => {
            r = r.line(format!("{name}: {}", if ok { "satisfied" } else { "not satisfied" }));
        }
    }
    Ok(r)
}

fn list(g: &MixedGraph, x: &NodeSet, y: &NodeSet, c: &EnumConstraints) -> anyhow::Result<Report> {
    let mut it = match list_adjustment_sets(g, x, y, c) {
        Ok(it) => it,
        Err(Error::NotAmenable(witness)) => {
            return Ok(Report::new(1)
                .field("amenable", false)
                .field("witness", witness.clone())
                .field("sets", Vec::<Value>::new())
                .field("count", 0)
                .field("truncated", false)
                .line("not amenable, no sets")
                .line(format!("witness: {witness}")));
        }
        Err(e) => return Err(e.into()),
    };
    let sets: Vec<NodeSet> = it.by_ref().collect();
    let truncated = it.truncated();
    let mut r = Report::new(if sets.is_empty() { 1 } else { 0 })
        .field("amenable", true)
        .field("witness", Value::Null)
        .field("sets", sets.iter().map(|s| json!(names(g, s))).collect::<Vec<_>>())
        .field("count", sets.len())
        .field("truncated", truncated);
    for s in &sets {
        r = r.line(braces(g, s));
    }
    if sets.is_empty() {
        r = r.line("no sets");
    }
    if truncated {
        r = r.line(format!("... truncated after {} sets", sets.len()));
    }
    Ok(r)
}

fn sem_verify(g: &MixedGraph, x: &NodeSet, y: &NodeSet, z: &NodeSet, seed: u64, reps: u64) -> anyhow::Result<Report> {
    if g.class() != GraphClass::Dag {
        bail!(Error::NotADag);
    }
    let verdict = gac_verify(g, x, y, z)?;
    let values = vec![1.0; x.len()];
    let mut max_gap: f64 = 0.0;
    for rep in 0..reps {
        let sem = random_sem(g, seed.wrapping_add(rep), true)?;
        for t in y {
            let gap = (sem.do_effect(x, &values, t) - sem.adjusted_estimate(x, &values, t, z)?).abs();
            max_gap = max_gap.max(gap);
        }
    }
    let adversarial = if verdict.ok { None } else { adversarial_sem(g, x, y, z, seed)? };
    let consistent = if verdict.ok {
        max_gap < SOUNDNESS_TOL
    } else {
        adversarial.as_ref().is_some_and(|a| a.gap > ADVERSARIAL_GAP)
    };
    let adv_json = adversarial.as_ref().map_or(Value::Null, |a| {
        json!({ "case": case_name(a.case), "target": g.name(a.target), "gap": a.gap })
    });
    let mut r = Report::new(if verdict.ok && consistent { 0 } else { 1 })
        .field("ok", verdict.ok)
        .field("max_gap_random", max_gap)
        .field("adversarial", adv_json)
        .field("consistent", consistent)
        .line(format!("GAC: {}", if verdict.ok { "satisfied" } else { "not satisfied" }))
        .line(format!("random SEMs: max |do - adjusted| = {max_gap:.3e} over {reps} draws"));
    if let Some(a) = &adversarial {
        r = r.line(format!(
            "adversarial SEM ({}): gap {:.3e} on {}",
            case_name(a.case),
            a.gap,
            g.name(a.target)
        ));
    }
    Ok(r.line(format!("consistent: {}", yes_no(consistent))))
}
