//! The command-line front end behind the `clonekit` binary.
//!
//! Every subcommand prints one JSON document on standard output (or DOT
//! text for `clone lattice-dot`). Exit codes: 0 on success, 1 on domain
//! errors (printed as `{"error": {"code": ..., "message": ...}}`), 2 on
//! usage errors (the synopsis goes to standard error).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::boolfn::{BoolFn, CATALOG};
use crate::classifier::{classify_modal_with, classify_prop_with, Problem};
use crate::clones::{base_of_with, identify_with, lattice_dot, leq_with, member_with, Basis, NamedClone};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::modal::{
    clos_with, measure_modal, parse_definition, parse_modal, simple_complete_with, simple_leq_with, Definition,
    KripkeModel, Logic, ModalOps, SimpleFragment,
};
use crate::proplogic::{count_models_traced, expressible_with, measure, parse, solve_sat_with, truth_table_with};
use crate::teachlearn::{
    learn_mq_with, normal_form, pc_prop, pc_reduce, standard_example_map, teach_modal_with, teach_prop_with,
    verify_pc_custom, verify_unique_modal, verify_unique_with, LabeledExample, PcKind,
};

#[derive(Parser, Debug)]
#[command(name = "clonekit", version, about = "Boolean clones, fragment complexity, and modal fragments")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalOpts {
    /// JSON file with configuration values; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    arity_cap: Option<usize>,
    #[arg(long, global = true)]
    degree_cap: Option<usize>,
    #[arg(long, global = true)]
    closure_budget: Option<usize>,
    #[arg(long, global = true)]
    brute_var_cap: Option<usize>,
    #[arg(long, global = true)]
    modal_depth_bound: Option<usize>,
    #[arg(long, global = true)]
    modal_model_bound: Option<usize>,
    /// Human-readable output instead of compact JSON.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Clone identification and lattice queries.
    #[command(subcommand)]
    Clone(CloneCmd),
    /// Complexity verdict for a problem over a fragment.
    Classify(ClassifyArgs),
    /// Satisfiability of a formula.
    Sat(FormulaArgs),
    /// Number of satisfying assignments.
    Count(FormulaArgs),
    /// Whether a formula's function is expressible over a basis.
    Express(ExpressArgs),
    /// Tree and DAG size of a formula.
    Measure(MeasureArgs),
    /// Teaching sets.
    #[command(subcommand)]
    Teach(TeachCmd),
    /// Exact learning from a truth-table oracle.
    Learn(LearnArgs),
    /// PC reductions.
    #[command(subcommand)]
    Reduce(ReduceCmd),
    /// Modal logic tools.
    #[command(subcommand)]
    Modal(ModalCmd),
}

#[derive(Subcommand, Debug)]
enum CloneCmd {
    /// Names the clone generated by a basis.
    Id {
        #[arg(long)]
        basis: String,
    },
    /// Whether a function (catalog name or `arity:hex`) lies in the clone of a basis.
    Member {
        #[arg(long)]
        function: String,
        #[arg(long)]
        basis: String,
    },
    /// Whether the clone of `left` is contained in the clone of `right`.
    Leq {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// A generating set of a named clone.
    Base {
        #[arg(long)]
        clone: String,
    },
    /// The named part of Post's lattice as a DOT digraph.
    LatticeDot,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    /// Problem tag, e.g. SAT, TAUT, MODAL_CONSISTENCY.
    #[arg(long, required_unless_present = "batch")]
    problem: Option<String>,
    #[arg(long, default_value = "")]
    basis: String,
    /// Modal operators, e.g. `box,diamond`.
    #[arg(long)]
    modal: Option<String>,
    #[arg(long, default_value = "K")]
    logic: String,
    /// JSON array of {problem, basis, modal?, logic?} requests.
    #[arg(long, conflicts_with = "problem")]
    batch: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FormulaArgs {
    #[arg(long)]
    formula: String,
    /// Declared connectives; defaults to the whole catalog.
    #[arg(long)]
    basis: Option<String>,
    /// Comma-separated variable list; defaults to the formula's variables.
    #[arg(long)]
    prop: Option<String>,
}

#[derive(Args, Debug)]
struct ExpressArgs {
    #[arg(long)]
    formula: String,
    /// Target basis.
    #[arg(long)]
    basis: String,
}

#[derive(Args, Debug)]
struct MeasureArgs {
    #[arg(long)]
    formula: String,
    /// Parse as a modal formula.
    #[arg(long)]
    modal: bool,
    /// Operator definitions `name = body`, in order.
    #[arg(long = "def")]
    defs: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum TeachCmd {
    /// Builds a teaching set.
    Make(TeachMakeArgs),
    /// Checks whether examples uniquely characterize a formula.
    Verify(TeachVerifyArgs),
}

#[derive(Args, Debug)]
struct TeachMakeArgs {
    #[arg(long)]
    formula: String,
    /// Fragment basis (propositional teaching).
    #[arg(long, required_unless_present = "modal")]
    basis: Option<String>,
    #[arg(long)]
    prop: String,
    /// Teach a formula of the modal fragment {◇, □, ¬, ⊤}.
    #[arg(long)]
    modal: bool,
}

#[derive(Args, Debug)]
struct TeachVerifyArgs {
    #[arg(long)]
    formula: String,
    #[arg(long, required_unless_present = "modal")]
    basis: Option<String>,
    #[arg(long)]
    prop: String,
    /// JSON array of labeled examples.
    #[arg(long)]
    examples: PathBuf,
    #[arg(long)]
    modal: bool,
    /// Depth bound for the modal check (default: formula depth + 1).
    #[arg(long)]
    bound: Option<usize>,
}

#[derive(Args, Debug)]
struct LearnArgs {
    #[arg(long)]
    basis: String,
    #[arg(long)]
    prop: String,
    /// File holding the hidden target as an `arity:hex` truth table over `prop`.
    #[arg(long)]
    oracle_file: PathBuf,
}

#[derive(Subcommand, Debug)]
enum ReduceCmd {
    /// Applies a reduction to a formula.
    Make {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        formula: String,
        /// Ordered variable list; defaults to the formula's variables.
        #[arg(long)]
        prop: Option<String>,
    },
    /// Checks both reduction conditions on small instances.
    Verify {
        #[arg(long)]
        kind: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// World bound for the modal kinds.
        #[arg(long, default_value_t = 4)]
        k: usize,
    },
}

#[derive(Subcommand, Debug)]
enum ModalCmd {
    /// Model checking on a JSON Kripke model.
    Mc {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        formula: String,
        /// World name; defaults to the model's point.
        #[arg(long)]
        world: Option<String>,
        #[arg(long = "def")]
        defs: Vec<String>,
        /// Reject models whose frame does not belong to this logic.
        #[arg(long)]
        logic: Option<String>,
    },
    /// The Boolean clone expressible in a simple modal fragment.
    Clos {
        #[arg(long, default_value = "K")]
        logic: String,
        #[arg(long, default_value = "")]
        modal: String,
        /// Named clone such as `V2` or `S00^3`.
        #[arg(long, conflicts_with = "basis")]
        clone: Option<String>,
        #[arg(long)]
        basis: Option<String>,
    },
    /// Expressiveness order between simple fragments.
    Leq {
        #[arg(long, default_value = "K")]
        logic: String,
        #[arg(long, default_value = "")]
        modal: String,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Expressive completeness of a simple fragment.
    Complete {
        #[arg(long, default_value = "K")]
        logic: String,
        #[arg(long, default_value = "")]
        modal: String,
        #[arg(long)]
        basis: String,
    },
}

/// The result of a subcommand.
enum Output {
    Json(Value),
    Text(String),
}

/// Runs the CLI on `argv` (including the program name), printing to the
/// process's standard streams, and returns the exit code.
pub fn run(argv: Vec<OsString>) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// [`run`] writing to the given streams.
pub fn run_with(argv: Vec<OsString>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let pretty = cli.global.pretty;
    let result = load_config(&cli.global).and_then(|cfg| dispatch(cli.command, &cfg));
    match result {
        Ok(Output::Text(t)) => {
            let _ = write!(out, "{t}");
            0
        }
        Ok(Output::Json(v)) => {
            let _ = writeln!(out, "{}", render(&v, pretty));
            0
        }
        Err(e) => {
            let v = json!({"error": {"code": e.code(), "message": e.to_string()}});
            let _ = writeln!(out, "{}", render(&v, pretty));
            1
        }
    }
}

fn render(v: &Value, pretty: bool) -> String {
    if pretty {
        let mut s = String::new();
        human(v, 0, &mut s);
        s.trim_end().to_string()
    } else {
        v.to_string()
    }
}

/// Indented `key: value` rendering for `--pretty`.
fn human(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match x {
                    Value::Object(_) | Value::Array(_) if !is_flat(x) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        human(x, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(x))),
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                if is_flat(x) {
                    out.push_str(&format!("{pad}- {}\n", scalar(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    human(x, indent + 1, out);
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(v))),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(|x| !x.is_object() && !x.is_array()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => a.iter().map(scalar).collect::<Vec<_>>().join(", "),
        other => other.to_string(),
    }
}

fn load_config(g: &GlobalOpts) -> Result<Config> {
    let mut cfg = match &g.config {
        Some(path) => {
            let text = read_file(path)?;
            serde_json::from_str::<Config>(&text).map_err(|e| Error::InvalidInput(format!("config: {e}")))?
        }
        None => Config::default(),
    };
    let set = |slot: &mut usize, v: Option<usize>| {
        if let Some(v) = v {
            *slot = v;
        }
    };
    set(&mut cfg.arity_cap, g.arity_cap);
    set(&mut cfg.degree_cap, g.degree_cap);
    set(&mut cfg.closure_budget, g.closure_budget);
    set(&mut cfg.brute_var_cap, g.brute_var_cap);
    set(&mut cfg.modal_depth_bound, g.modal_depth_bound);
    set(&mut cfg.modal_model_bound, g.modal_model_bound);
    cfg.validate()?;
    Ok(cfg)
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn to_json<T: serde::Serialize>(x: &T) -> Result<Value> {
    serde_json::to_value(x).map_err(|e| Error::InternalInconsistency(e.to_string()))
}

fn catalog_basis() -> Basis {
    let names: Vec<&str> = CATALOG.iter().map(|e| e.name).collect();
    Basis::from_names(&names).expect("catalog names resolve")
}

fn prop_list(text: &str) -> Vec<String> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect()
}

fn parse_function(text: &str) -> Result<BoolFn> {
    let t = text.trim();
    if t.contains(':') {
        BoolFn::parse_literal(t)
    } else {
        let b = Basis::parse(t)?;
        match b.connectives() {
            [c] => Ok(c.func),
            _ => Err(Error::InvalidInput(format!("expected one function, got `{t}`"))),
        }
    }
}

fn parse_defs(texts: &[String]) -> Result<Vec<std::sync::Arc<Definition>>> {
    let mut defs = Vec::new();
    for t in texts {
        let d = parse_definition(t, &defs)?;
        defs.push(d);
    }
    Ok(defs)
}

fn dispatch(cmd: Command, cfg: &Config) -> Result<Output> {
    match cmd {
        Command::Clone(c) => clone_cmd(c, cfg),
        Command::Classify(a) => classify_cmd(a, cfg),
        Command::Sat(a) => {
            let b = a.basis.as_deref().map(Basis::parse).transpose()?.unwrap_or_else(catalog_basis);
            let f = parse(&a.formula, &b)?;
            Ok(Output::Json(to_json(&solve_sat_with(&f, &b, cfg)?)?))
        }
        Command::Count(a) => {
            let b = a.basis.as_deref().map(Basis::parse).transpose()?.unwrap_or_else(catalog_basis);
            let f = parse(&a.formula, &b)?;
            let props = a.prop.as_deref().map(prop_list).unwrap_or_else(|| f.vars());
            let (count, method) = count_models_traced(&f, &b, &props, cfg)?;
            Ok(Output::Json(json!({"count": count, "method": method})))
        }
        Command::Express(a) => {
            let f = parse(&a.formula, &catalog_basis())?;
            let b = Basis::parse(&a.basis)?;
            Ok(Output::Json(json!({"expressible": expressible_with(&f, &b, cfg)?})))
        }
        Command::Measure(a) => {
            if a.modal || !a.defs.is_empty() {
                let defs = parse_defs(&a.defs)?;
                let f = parse_modal(&a.formula, None, &defs)?;
                Ok(Output::Json(to_json(&measure_modal(&f))?))
            } else {
                let f = parse(&a.formula, &catalog_basis())?;
                Ok(Output::Json(to_json(&measure(&f))?))
            }
        }
        Command::Teach(t) => teach_cmd(t, cfg),
        Command::Learn(a) => learn_cmd(a, cfg),
        Command::Reduce(r) => reduce_cmd(r, cfg),
        Command::Modal(m) => modal_cmd(m, cfg),
    }
}

fn clone_cmd(c: CloneCmd, cfg: &Config) -> Result<Output> {
    match c {
        CloneCmd::Id { basis } => {
            let b = Basis::parse(&basis)?;
            Ok(Output::Json(json!({"clone": identify_with(&b, cfg)?})))
        }
        CloneCmd::Member { function, basis } => {
            let f = parse_function(&function)?;
            let b = Basis::parse(&basis)?;
            Ok(Output::Json(json!({"member": member_with(&f, &b, cfg)?})))
        }
        CloneCmd::Leq { left, right } => {
            let l = Basis::parse(&left)?;
            let r = Basis::parse(&right)?;
            Ok(Output::Json(json!({"leq": leq_with(&l, &r, cfg)?})))
        }
        CloneCmd::Base { clone } => {
            let c: NamedClone = clone.parse()?;
            let b = base_of_with(c, cfg)?;
            let names: Vec<String> = b.connectives().iter().map(|c| c.name.clone()).collect();
            Ok(Output::Json(json!({"clone": c, "basis": names})))
        }
        CloneCmd::LatticeDot => Ok(Output::Text(lattice_dot(cfg)?)),
    }
}

fn classify_one(problem: &str, basis: &str, modal: Option<&str>, logic: &str, cfg: &Config) -> Result<Value> {
    let p: Problem = problem.parse()?;
    let b = Basis::parse(basis)?;
    let verdict = if p.is_modal() || modal.is_some() {
        let m: ModalOps = modal.unwrap_or("").parse()?;
        classify_modal_with(p, m, &b, logic, cfg)?
    } else {
        classify_prop_with(p, &b, cfg)?
    };
    to_json(&verdict)
}

fn classify_cmd(a: ClassifyArgs, cfg: &Config) -> Result<Output> {
    if let Some(path) = a.batch {
        let text = read_file(&path)?;
        let reqs: Value = serde_json::from_str(&text).map_err(|e| Error::InvalidInput(e.to_string()))?;
        let reqs = reqs
            .as_array()
            .ok_or_else(|| Error::InvalidInput("batch file must hold a JSON array".into()))?;
        let mut out = Vec::with_capacity(reqs.len());
        for r in reqs {
            let field = |k: &str| r.get(k).and_then(Value::as_str);
            let problem = field("problem").ok_or_else(|| Error::InvalidInput("request without `problem`".into()))?;
            let v = classify_one(
                problem,
                field("basis").unwrap_or(""),
                field("modal"),
                field("logic").unwrap_or("K"),
                cfg,
            )
            .unwrap_or_else(|e| json!({"error": {"code": e.code(), "message": e.to_string()}}));
            out.push(v);
        }
        return Ok(Output::Json(Value::Array(out)));
    }
    let problem = a.problem.expect("clap enforces --problem without --batch");
    Ok(Output::Json(classify_one(&problem, &a.basis, a.modal.as_deref(), &a.logic, cfg)?))
}

fn teach_cmd(t: TeachCmd, cfg: &Config) -> Result<Output> {
    match t {
        TeachCmd::Make(a) => {
            let prop = prop_list(&a.prop);
            let set = if a.modal {
                let f = parse_modal(&a.formula, None, &[])?;
                teach_modal_with(&f, &prop, cfg)?
            } else {
                let b = Basis::parse(a.basis.as_deref().unwrap_or(""))?;
                let f = parse(&a.formula, &b)?;
                teach_prop_with(&f, &b, &prop, cfg)?
            };
            Ok(Output::Json(to_json(&set)?))
        }
        TeachCmd::Verify(a) => {
            let prop = prop_list(&a.prop);
            let examples = LabeledExample::list_from_json(&read_file(&a.examples)?)?;
            if a.modal {
                let f = parse_modal(&a.formula, None, &[])?;
                let bound = a.bound.unwrap_or(normal_form(&f)?.depth() + 1);
                Ok(Output::Json(to_json(&verify_unique_modal(&f, &examples, &prop, bound)?)?))
            } else {
                let b = Basis::parse(a.basis.as_deref().unwrap_or(""))?;
                let f = parse(&a.formula, &b)?;
                Ok(Output::Json(to_json(&verify_unique_with(&f, &examples, &b, &prop, cfg)?)?))
            }
        }
    }
}

fn learn_cmd(a: LearnArgs, cfg: &Config) -> Result<Output> {
    let b = Basis::parse(&a.basis)?;
    let prop = prop_list(&a.prop);
    let target = BoolFn::parse_literal(read_file(&a.oracle_file)?.trim())?;
    if target.arity() != prop.len() {
        return Err(Error::ArityMismatch {
            expected: prop.len(),
            got: target.arity(),
        });
    }
    let mut oracle = |v: &crate::proplogic::Assignment| {
        let row = prop.iter().enumerate().fold(0usize, |acc, (i, x)| acc | (usize::from(v[x]) << i));
        target.value(row)
    };
    let learned = learn_mq_with(&b, &prop, &mut oracle, cfg)?;
    let table = truth_table_with(&learned.formula, &prop, cfg)?;
    let mut v = to_json(&learned)?;
    v["table"] = json!(table.to_literal());
    Ok(Output::Json(v))
}

fn reduce_cmd(r: ReduceCmd, cfg: &Config) -> Result<Output> {
    match r {
        ReduceCmd::Make { kind, formula, prop } => {
            let kind: PcKind = kind.parse()?;
            let f = parse(&formula, &catalog_basis())?;
            let prop = prop.as_deref().map(prop_list).unwrap_or_else(|| f.vars());
            Ok(Output::Json(to_json(&pc_reduce(kind, &f, &prop)?)?))
        }
        ReduceCmd::Verify { kind, n, k } => {
            let kind: PcKind = kind.parse()?;
            let prop = pc_prop(n)?;
            let h = standard_example_map(kind, &prop);
            Ok(Output::Json(to_json(&verify_pc_custom(kind, n, k, &h, cfg)?)?))
        }
    }
}

fn modal_cmd(m: ModalCmd, cfg: &Config) -> Result<Output> {
    match m {
        ModalCmd::Mc {
            model,
            formula,
            world,
            defs,
            logic,
        } => {
            let model = KripkeModel::from_json(&read_file(&model)?)?;
            if let Some(l) = logic {
                l.parse::<Logic>()?.check_frame(&model)?;
            }
            let defs = parse_defs(&defs)?;
            let f = parse_modal(&formula, None, &defs)?;
            let w = match world {
                Some(name) => model.world(&name)?,
                None => model
                    .point()
                    .ok_or_else(|| Error::BadModel("no --world given and the model has no point".into()))?,
            };
            Ok(Output::Json(json!({
                "world": model.worlds()[w],
                "holds": model.holds(w, &f),
            })))
        }
        ModalCmd::Clos {
            logic,
            modal,
            clone,
            basis,
        } => {
            let logic: Logic = logic.parse()?;
            let ops: ModalOps = modal.parse()?;
            let c = match (clone, basis) {
                (Some(c), _) => c.parse::<NamedClone>()?,
                (None, Some(b)) => identify_with(&Basis::parse(&b)?, cfg)?,
                (None, None) => return Err(Error::InvalidInput("give --clone or --basis".into())),
            };
            Ok(Output::Json(json!({"clone": c, "clos": clos_with(logic, ops, c, cfg)?})))
        }
        ModalCmd::Leq {
            logic,
            modal,
            left,
            right,
        } => {
            let logic: Logic = logic.parse()?;
            let ops: ModalOps = modal.parse()?;
            let l = SimpleFragment::new(ops, Basis::parse(&left)?);
            let r = SimpleFragment::new(ops, Basis::parse(&right)?);
            Ok(Output::Json(json!({"leq": simple_leq_with(&l, &r, logic, cfg)?})))
        }
        ModalCmd::Complete { logic, modal, basis } => {
            let logic: Logic = logic.parse()?;
            let f = SimpleFragment::new(modal.parse()?, Basis::parse(&basis)?);
            Ok(Output::Json(json!({"complete": simple_complete_with(&f, logic, cfg)?})))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String) {
        let mut argv: Vec<OsString> = vec!["clonekit".into()];
        argv.extend(args.iter().map(OsString::from));
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_with(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn clone_id_examples() {
        assert_eq!(call(&["clone", "id", "--basis", "nimp"]), (0, "{\"clone\":{\"family\":\"S1\"}}\n".into()));
        assert_eq!(call(&["clone", "id", "--basis", ""]), (0, "{\"clone\":{\"family\":\"I2\"}}\n".into()));
    }

    #[test]
    fn exit_codes() {
        let (code, out) = call(&["clone", "id", "--basis", "frobnicate"]);
        assert_eq!(code, 1);
        assert!(out.contains("UNKNOWN_NAME"));
        assert_eq!(call(&["clone", "id"]).0, 2);
        assert_eq!(call(&["no-such-command"]).0, 2);
    }
}
