//! Teaching sets, exact learning with membership queries, the parity lower
//! bound, and PC reductions.
//!
//! * [`teach_prop`] builds uniquely characterizing example sets for the
//!   monotone and negation fragments; [`verify_unique`] checks them against
//!   the whole clone at the given variable set.
//! * [`learn_mq`] learns conjunctions, disjunctions and affine functions
//!   with exactly `|prop| + 1` membership queries.
//! * [`parity_lower_bound`] exhibits two odd parities that fit a small
//!   example set.
//! * [`teach_modal`] and [`verify_unique_modal`] do the same for the modal
//!   fragment `{◇, □, ¬, ⊤}`.
//! * [`pc_reduce`] and [`verify_pc`] construct and check the reductions used
//!   to transfer lower bounds between fragments.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::boolfn::{BoolFn, Connective};
use crate::classifier::{classify_prop_with, Class, Problem};
use crate::clones::{close_at_arity_with, leq_with, member_with, saturate, Basis, Origin};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::modal::{expand, KripkeModel, ModalFormula};
use crate::proplogic::{apply_words, evaluate, truth_table_with, Assignment, Compiled, Formula};

// ---------------------------------------------------------------------------
// Labeled examples
// ---------------------------------------------------------------------------

/// What an example labels: a truth assignment or a pointed Kripke model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    Assignment(Assignment),
    /// A model whose distinguished point is the evaluation world.
    Model(KripkeModel),
}

/// An example together with its label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledExample {
    pub payload: Payload,
    pub label: bool,
}

impl LabeledExample {
    pub fn assignment(v: Assignment, label: bool) -> Self {
        LabeledExample {
            payload: Payload::Assignment(v),
            label,
        }
    }

    pub fn model(m: KripkeModel, label: bool) -> Self {
        LabeledExample {
            payload: Payload::Model(m),
            label,
        }
    }

    /// Parses `{"assignment": {"p": 1, ...}, "label": 1}` or
    /// `{"model": {...}, "label": 0}`; bits may be `0`/`1` or booleans.
    pub fn from_value(v: &Value) -> Result<Self> {
        let bit = |x: &Value| -> Result<bool> {
            match x {
                Value::Bool(b) => Ok(*b),
                Value::Number(n) if n.as_u64() == Some(0) => Ok(false),
                Value::Number(n) if n.as_u64() == Some(1) => Ok(true),
                _ => Err(Error::InvalidInput(format!("expected a bit, got {x}"))),
            }
        };
        let label = bit(v.get("label").ok_or_else(|| Error::InvalidInput("example without `label`".into()))?)?;
        if let Some(a) = v.get("assignment") {
            let obj = a
                .as_object()
                .ok_or_else(|| Error::InvalidInput("`assignment` must be an object".into()))?;
            let mut asg = Assignment::new();
            for (k, x) in obj {
                asg.insert(k.clone(), bit(x)?);
            }
            Ok(LabeledExample::assignment(asg, label))
        } else if let Some(m) = v.get("model") {
            let model = KripkeModel::from_value(m)?;
            if model.point().is_none() {
                return Err(Error::BadModel("example models need a `point`".into()));
            }
            Ok(LabeledExample::model(model, label))
        } else {
            Err(Error::InvalidInput("example needs `assignment` or `model`".into()))
        }
    }

    /// Parses a JSON array of examples, or an object with an `examples`
    /// array such as a serialized [`TeachingSet`].
    pub fn list_from_json(text: &str) -> Result<Vec<Self>> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))?;
        let v = v.get("examples").unwrap_or(&v);
        v.as_array()
            .ok_or_else(|| Error::InvalidInput("expected a JSON array of examples".into()))?
            .iter()
            .map(LabeledExample::from_value)
            .collect()
    }
}

impl Serialize for LabeledExample {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        match &self.payload {
            Payload::Assignment(a) => {
                let bits: BTreeMap<&str, u8> = a.iter().map(|(k, v)| (k.as_str(), *v as u8)).collect();
                m.serialize_entry("assignment", &bits)?;
            }
            Payload::Model(model) => m.serialize_entry("model", &model.to_value())?,
        }
        m.serialize_entry("label", &(self.label as u8))?;
        m.end()
    }
}

/// Something that can be checked against labeled examples.
pub trait Concept {
    /// Whether the concept contains the example's payload.
    fn holds_on(&self, payload: &Payload) -> Result<bool>;
}

impl Concept for Formula {
    fn holds_on(&self, payload: &Payload) -> Result<bool> {
        match payload {
            Payload::Assignment(v) => evaluate(self, v),
            Payload::Model(_) => Err(Error::KindMismatch),
        }
    }
}

impl Concept for ModalFormula {
    fn holds_on(&self, payload: &Payload) -> Result<bool> {
        match payload {
            Payload::Model(m) => {
                let w = m.point().ok_or_else(|| Error::BadModel("example model without a point".into()))?;
                Ok(m.holds(w, self))
            }
            Payload::Assignment(_) => Err(Error::KindMismatch),
        }
    }
}

/// Whether `phi` fits the example: it holds exactly when the label is 1.
pub fn fits<C: Concept + ?Sized>(phi: &C, ex: &LabeledExample) -> Result<bool> {
    Ok(phi.holds_on(&ex.payload)? == ex.label)
}

/// A labeled example set together with its variable universe.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TeachingSet {
    pub fragment: String,
    pub prop: Vec<String>,
    pub examples: Vec<LabeledExample>,
}

/// The assignment over `prop` whose variable `prop[i]` is bit `i` of `mask`.
pub fn assignment_of(prop: &[String], mask: u64) -> Assignment {
    prop.iter()
        .enumerate()
        .map(|(i, x)| (x.clone(), mask >> i & 1 == 1))
        .collect()
}

fn mask_of(prop: &[String], v: &Assignment) -> Result<u64> {
    let mut mask = 0u64;
    for (i, x) in prop.iter().enumerate() {
        if *v.get(x).ok_or_else(|| Error::UnboundVariable(x.clone()))? {
            mask |= 1 << i;
        }
    }
    Ok(mask)
}

fn check_prop(prop: &[String], vars: &[String]) -> Result<()> {
    if prop.is_empty() {
        return Err(Error::InvalidInput("the variable set must be nonempty".into()));
    }
    let mut seen = HashSet::new();
    for x in prop {
        if !seen.insert(x) {
            return Err(Error::InvalidInput(format!("variable `{x}` is listed twice")));
        }
    }
    match vars.iter().find(|v| !prop.contains(v)) {
        Some(v) => Err(Error::UnboundVariable(v.clone())),
        None => Ok(()),
    }
}

// ---------------------------------------------------------------------------
// Propositional teaching
// ---------------------------------------------------------------------------

fn basis(names: &[&str]) -> Basis {
    Basis::from_names(names).expect("catalog names")
}

/// A uniquely characterizing example set for `phi` relative to the
/// fragment generated by `fragment` over the variables `prop`.
///
/// Fragments inside the monotone clone get the minimal true points as
/// positives and the maximal false points as negatives (one per prime
/// implicant and prime clause); fragments inside the negation clone get two
/// examples.
pub fn teach_prop(phi: &Formula, fragment: &Basis, prop: &[String]) -> Result<TeachingSet> {
    teach_prop_with(phi, fragment, prop, &Config::default())
}

/// [`teach_prop`] with explicit limits.
pub fn teach_prop_with(phi: &Formula, fragment: &Basis, prop: &[String], cfg: &Config) -> Result<TeachingSet> {
    check_prop(prop, &phi.vars())?;
    let verdict = classify_prop_with(Problem::UniqueCharFinite, fragment, cfg)?;
    if verdict.class != Class::Yes {
        return Err(Error::FragmentNotTeachable(format!(
            "{fragment} is neither inside the monotone nor the negation clone"
        )));
    }
    let f = truth_table_with(phi, prop, cfg)?;
    if !member_with(&f, fragment, cfg)? {
        return Err(Error::NotExpressible(format!("{phi} over {fragment}")));
    }
    let n = prop.len();
    let rows = 1u64 << n;
    let mut examples = Vec::new();
    if leq_with(fragment, &basis(&["and", "or", "top", "bot"]), cfg)? {
        let value = |r: u64| f.value(r as usize);
        for r in 0..rows {
            let minimal_true = value(r) && (0..n).all(|i| r >> i & 1 == 0 || !value(r & !(1 << i)));
            if minimal_true {
                examples.push(LabeledExample::assignment(assignment_of(prop, r), true));
            }
        }
        for r in 0..rows {
            let maximal_false = !value(r) && (0..n).all(|i| r >> i & 1 == 1 || value(r | 1 << i));
            if maximal_false {
                examples.push(LabeledExample::assignment(assignment_of(prop, r), false));
            }
        }
    } else {
        let all = rows - 1;
        let pairs: Vec<(u64, bool)> = if f.is_constant() {
            let c = f.value(0);
            vec![(all, c), (0, c)]
        } else {
            let i = f.essential_vars()[0];
            // A projection is true at its own unit vector, a negation false.
            vec![(1 << i, f.value(1 << i)), (0, f.value(0))]
        };
        examples.extend(pairs.into_iter().map(|(r, l)| LabeledExample::assignment(assignment_of(prop, r), l)));
    }
    Ok(TeachingSet {
        fragment: fragment.to_string(),
        prop: prop.to_vec(),
        examples,
    })
}

/// Outcome of checking an example set against a whole fragment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Uniqueness {
    /// The target is the only fragment function fitting the examples.
    Unique,
    /// Another fragment function fits as well.
    Ambiguous { other: BoolFn, description: String },
    /// The target itself does not fit.
    NotFitting,
}

impl Serialize for Uniqueness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        match self {
            Uniqueness::Unique => m.serialize_entry("result", "unique")?,
            Uniqueness::NotFitting => m.serialize_entry("result", "not_fitting")?,
            Uniqueness::Ambiguous { description, other } => {
                m.serialize_entry("result", "ambiguous")?;
                m.serialize_entry("witness", description)?;
                m.serialize_entry("table", &other.to_literal())?;
            }
        }
        m.end()
    }
}

/// Largest variable count accepted by [`verify_unique`].
pub const VERIFY_PROP_CAP: usize = 4;

/// A readable name for an `n`-ary function over `prop`.
pub fn describe_fn(f: &BoolFn, prop: &[String]) -> String {
    if f.is_constant() {
        return if f.value(0) { "⊤".into() } else { "⊥".into() };
    }
    let ess = f.essential_vars();
    if ess.len() == 1 {
        let i = ess[0];
        return if f.value(1 << i) {
            prop[i].clone()
        } else {
            format!("¬{}", prop[i])
        };
    }
    // Restrict to the essential variables and look the result up.
    let k = ess.len();
    if let Ok(g) = BoolFn::from_fn(k, |x| {
        let mut row = 0usize;
        for (j, &i) in ess.iter().enumerate() {
            if x[j] {
                row |= 1 << i;
            }
        }
        f.value(row)
    }) {
        let args: Vec<&str> = ess.iter().map(|&i| prop[i].as_str()).collect();
        return format!("{}({})", g.display_name(), args.join(","));
    }
    f.to_literal()
}

/// Checks whether `examples` uniquely characterize `phi` among the
/// functions of the fragment over `prop` (at most [`VERIFY_PROP_CAP`]
/// variables).
pub fn verify_unique(phi: &Formula, examples: &[LabeledExample], fragment: &Basis, prop: &[String]) -> Result<Uniqueness> {
    verify_unique_with(phi, examples, fragment, prop, &Config::default())
}

/// [`verify_unique`] with explicit limits.
pub fn verify_unique_with(
    phi: &Formula,
    examples: &[LabeledExample],
    fragment: &Basis,
    prop: &[String],
    cfg: &Config,
) -> Result<Uniqueness> {
    if prop.len() > VERIFY_PROP_CAP {
        return Err(Error::PropCapExceeded {
            count: prop.len(),
            cap: VERIFY_PROP_CAP,
        });
    }
    check_prop(prop, &phi.vars())?;
    let mut rows = Vec::with_capacity(examples.len());
    for ex in examples {
        match &ex.payload {
            Payload::Assignment(v) => rows.push((mask_of(prop, v)? as usize, ex.label)),
            Payload::Model(_) => return Err(Error::KindMismatch),
        }
    }
    let target = truth_table_with(phi, prop, cfg)?;
    let fits_all = |g: &BoolFn| rows.iter().all(|&(r, l)| g.value(r) == l);
    if !fits_all(&target) {
        return Ok(Uniqueness::NotFitting);
    }
    let members = close_at_arity_with(fragment, prop.len(), cfg)?;
    if !members.contains(&target) {
        return Err(Error::NotExpressible(format!("{phi} over {fragment}")));
    }
    Ok(match members.iter().find(|g| **g != target && fits_all(g)) {
        Some(g) => Uniqueness::Ambiguous {
            other: *g,
            description: describe_fn(g, prop),
        },
        None => Uniqueness::Unique,
    })
}

// ---------------------------------------------------------------------------
// Exact learning with membership queries
// ---------------------------------------------------------------------------

/// The hypothesis family a learner works in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LearnFamily {
    Conjunction,
    Disjunction,
    Affine,
}

/// A learned formula and the number of membership queries used.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Learned {
    pub formula: Formula,
    pub queries: usize,
    pub family: LearnFamily,
}

fn chain(op: &str, vars: &[&String]) -> Formula {
    let c = Connective::named(op).expect("catalog");
    let mut it = vars.iter();
    let mut f = Formula::var(it.next().expect("nonempty chain").as_str());
    for v in it {
        f = Formula::Apply(c.clone(), vec![f, Formula::var(v.as_str())]);
    }
    f
}

fn constant_formula(value: bool, anchor: &str) -> Formula {
    Formula::app(if value { "top" } else { "bot" }, vec![Formula::var(anchor)]).expect("catalog")
}

/// Learns the target of `oracle` within the fragment over `prop`, using
/// exactly `|prop| + 1` membership queries.
///
/// Fragments inside `{∧, ⊤, ⊥}` are probed at the all-true assignment and
/// its one-bit flips, fragments inside `{∨, ⊤, ⊥}` at the all-false
/// assignment and the unit vectors, and affine fragments at the all-false
/// assignment and the unit vectors.
pub fn learn_mq(fragment: &Basis, prop: &[String], oracle: &mut dyn FnMut(&Assignment) -> bool) -> Result<Learned> {
    learn_mq_with(fragment, prop, oracle, &Config::default())
}

/// [`learn_mq`] with explicit limits.
pub fn learn_mq_with(
    fragment: &Basis,
    prop: &[String],
    oracle: &mut dyn FnMut(&Assignment) -> bool,
    cfg: &Config,
) -> Result<Learned> {
    check_prop(prop, &[])?;
    let family = if leq_with(fragment, &basis(&["and", "top", "bot"]), cfg)? {
        LearnFamily::Conjunction
    } else if leq_with(fragment, &basis(&["or", "top", "bot"]), cfg)? {
        LearnFamily::Disjunction
    } else if leq_with(fragment, &basis(&["xor", "top"]), cfg)? {
        LearnFamily::Affine
    } else {
        return Err(Error::NotLearnable(format!(
            "{fragment} is not inside the conjunction, disjunction or affine clone"
        )));
    };
    let n = prop.len();
    let all = if n == 64 { !0 } else { (1u64 << n) - 1 };
    let mut probes: Vec<(u64, bool)> = Vec::with_capacity(n + 1);
    let mut ask = |mask: u64| {
        let answer = oracle(&assignment_of(prop, mask));
        probes.push((mask, answer));
        answer
    };
    let anchor = prop[0].as_str();
    let formula = match family {
        LearnFamily::Conjunction => {
            let base = ask(all);
            let flips: Vec<bool> = (0..n).map(|i| ask(all & !(1 << i))).collect();
            let vars: Vec<&String> = prop.iter().zip(&flips).filter(|(_, &v)| !v).map(|(x, _)| x).collect();
            let mut vars = vars;
            vars.sort();
            if !base {
                constant_formula(false, anchor)
            } else if vars.is_empty() {
                constant_formula(true, anchor)
            } else {
                chain("and", &vars)
            }
        }
        LearnFamily::Disjunction => {
            let base = ask(0);
            let units: Vec<bool> = (0..n).map(|i| ask(1 << i)).collect();
            let mut vars: Vec<&String> = prop.iter().zip(&units).filter(|(_, &v)| v).map(|(x, _)| x).collect();
            vars.sort();
            if base {
                constant_formula(true, anchor)
            } else if vars.is_empty() {
                constant_formula(false, anchor)
            } else {
                chain("or", &vars)
            }
        }
        LearnFamily::Affine => {
            let c0 = ask(0);
            let units: Vec<bool> = (0..n).map(|i| ask(1 << i)).collect();
            let mut vars: Vec<&String> = prop.iter().zip(&units).filter(|(_, &v)| v != c0).map(|(x, _)| x).collect();
            vars.sort();
            if vars.is_empty() {
                constant_formula(c0, anchor)
            } else if c0 {
                Formula::app("xor", vec![constant_formula(true, vars[0]), chain("xor", &vars)]).expect("catalog")
            } else {
                chain("xor", &vars)
            }
        }
    };
    // The hypothesis must reproduce every answer and lie in the fragment.
    for &(mask, answer) in &probes {
        if evaluate(&formula, &assignment_of(prop, mask))? != answer {
            return Err(Error::OracleInconsistent(format!(
                "no {family:?} function over the variables matches the answers"
            )));
        }
    }
    if n <= cfg.arity_cap {
        let table = truth_table_with(&formula, prop, cfg)?;
        if !member_with(&table, fragment, cfg)? {
            return Err(Error::OracleInconsistent(format!(
                "the reconstructed {formula} is outside the fragment {fragment}"
            )));
        }
    }
    Ok(Learned {
        formula,
        queries: probes.len(),
        family,
    })
}

// ---------------------------------------------------------------------------
// Parity lower bound
// ---------------------------------------------------------------------------

/// Result of the parity lower-bound construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParityOutcome {
    /// Two distinct odd parities that both fit the examples.
    WitnessPair(Formula, Formula),
    /// The examples (with the all-true positive added) determine the parity.
    Saturated,
}

impl Serialize for ParityOutcome {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        match self {
            ParityOutcome::WitnessPair(a, b) => {
                m.serialize_entry("result", "witness_pair")?;
                m.serialize_entry("witnesses", &[a, b])?;
            }
            ParityOutcome::Saturated => m.serialize_entry("result", "saturated")?,
        }
        m.end()
    }
}

/// The parity of the variables selected by `a` as a left-nested xor chain.
fn parity_formula(prop: &[String], a: u64) -> Formula {
    let vars: Vec<&String> = prop.iter().enumerate().filter(|(i, _)| a >> i & 1 == 1).map(|(_, x)| x).collect();
    chain("xor", &vars)
}

/// Solves the GF(2) system given by the examples plus the all-true positive
/// and returns two distinct odd parities fitting all of them, if the system
/// is underdetermined.
pub fn parity_lower_bound(prop: &[String], examples: &[LabeledExample]) -> Result<ParityOutcome> {
    check_prop(prop, &[])?;
    let n = prop.len();
    if n > 64 {
        return Err(Error::TooManyVariables { count: n, cap: 64 });
    }
    const LABEL: u128 = 1 << 64;
    let all = if n == 64 { !0u64 } else { (1u64 << n) - 1 };
    let mut rows: Vec<u128> = vec![all as u128 | LABEL];
    for ex in examples {
        match &ex.payload {
            Payload::Assignment(v) => {
                let mut r = mask_of(prop, v)? as u128;
                if ex.label {
                    r |= LABEL;
                }
                rows.push(r);
            }
            Payload::Model(_) => return Err(Error::KindMismatch),
        }
    }
    // Reduced row echelon form.
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (column, row)
    let mut next = 0;
    for col in 0..n {
        let bit = 1u128 << col;
        let Some(p) = (next..rows.len()).find(|&r| rows[r] & bit != 0) else {
            continue;
        };
        rows.swap(next, p);
        for r in 0..rows.len() {
            if r != next && rows[r] & bit != 0 {
                rows[r] ^= rows[next];
            }
        }
        pivots.push((col, next));
        next += 1;
    }
    if rows[next..].iter().any(|&r| r == LABEL) {
        return Err(Error::Inconsistent);
    }
    if pivots.len() == n {
        return Ok(ParityOutcome::Saturated);
    }
    let pivot_cols: HashSet<usize> = pivots.iter().map(|&(c, _)| c).collect();
    let mut particular = 0u64;
    for &(c, r) in &pivots {
        if rows[r] & LABEL != 0 {
            particular |= 1 << c;
        }
    }
    // Sum of the nullspace basis vectors, one per free column.
    let mut kernel_sum = 0u64;
    for free in (0..n).filter(|c| !pivot_cols.contains(c)) {
        let mut v = 1u64 << free;
        for &(c, r) in &pivots {
            if rows[r] >> free & 1 == 1 {
                v |= 1 << c;
            }
        }
        kernel_sum ^= v;
    }
    let second = particular ^ kernel_sum;
    Ok(ParityOutcome::WitnessPair(
        parity_formula(prop, particular),
        parity_formula(prop, second),
    ))
}

// ---------------------------------------------------------------------------
// Modal teaching for {◇, □, ¬, ⊤}
// ---------------------------------------------------------------------------

/// A modal operator in a prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModalOp {
    Diamond,
    Box,
}

/// The innermost part of a normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Terminal {
    /// A variable (`true`) or its negation (`false`).
    Lit(String, bool),
    Top,
    Bot,
}

/// A formula of `{◇, □, ¬, ⊤}` as a modal prefix applied to a literal or a
/// constant. Normal forms never end in `□⊤` or `◇⊥`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm {
    pub ops: Vec<ModalOp>,
    pub terminal: Terminal,
}

impl NormalForm {
    /// Modal depth.
    pub fn depth(&self) -> usize {
        self.ops.len()
    }

    fn normalize(mut self) -> Self {
        loop {
            match (&self.terminal, self.ops.last()) {
                (Terminal::Top, Some(ModalOp::Box)) | (Terminal::Bot, Some(ModalOp::Diamond)) => {
                    self.ops.pop();
                }
                _ => return self,
            }
        }
    }

    fn is_normal(&self) -> bool {
        !matches!(
            (&self.terminal, self.ops.last()),
            (Terminal::Top, Some(ModalOp::Box)) | (Terminal::Bot, Some(ModalOp::Diamond))
        )
    }

    /// The formula as a [`ModalFormula`]; constants use `anchor` as their
    /// (irrelevant) argument.
    pub fn to_formula(&self, anchor: &str) -> ModalFormula {
        let mut f = match &self.terminal {
            Terminal::Lit(x, true) => ModalFormula::var(x.as_str()),
            Terminal::Lit(x, false) => ModalFormula::app("not", vec![ModalFormula::var(x.as_str())]).expect("catalog"),
            Terminal::Top => ModalFormula::app("top", vec![ModalFormula::var(anchor)]).expect("catalog"),
            Terminal::Bot => ModalFormula::app("bot", vec![ModalFormula::var(anchor)]).expect("catalog"),
        };
        for op in self.ops.iter().rev() {
            f = match op {
                ModalOp::Diamond => ModalFormula::diamond(f),
                ModalOp::Box => ModalFormula::boxed(f),
            };
        }
        f
    }

    /// Truth at world `w` of `m`; variables missing from a valuation are false.
    pub fn eval(&self, m: &KripkeModel, w: usize) -> bool {
        fn go(nf: &NormalForm, i: usize, m: &KripkeModel, w: usize) -> bool {
            match nf.ops.get(i) {
                None => match &nf.terminal {
                    Terminal::Lit(x, pos) => m.valuation(w).contains(x) == *pos,
                    Terminal::Top => true,
                    Terminal::Bot => false,
                },
                Some(ModalOp::Diamond) => m.successors(w).iter().any(|&v| go(nf, i + 1, m, v)),
                Some(ModalOp::Box) => m.successors(w).iter().all(|&v| go(nf, i + 1, m, v)),
            }
        }
        go(self, 0, m, w)
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for op in &self.ops {
            f.write_str(match op {
                ModalOp::Diamond => "◇",
                ModalOp::Box => "□",
            })?;
        }
        match &self.terminal {
            Terminal::Lit(x, true) => f.write_str(x),
            Terminal::Lit(x, false) => write!(f, "¬{x}"),
            Terminal::Top => f.write_str("⊤"),
            Terminal::Bot => f.write_str("⊥"),
        }
    }
}

impl Serialize for NormalForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The normal form of a formula of `{◇, □, ¬, ⊤, ⊥}`: negations are pushed
/// to the literals and redundant final `□⊤` / `◇⊥` steps are removed.
pub fn normal_form(phi: &ModalFormula) -> Result<NormalForm> {
    fn go(f: &ModalFormula, neg: bool, ops: &mut Vec<ModalOp>) -> Result<Terminal> {
        match f {
            ModalFormula::Var(x) => Ok(Terminal::Lit(x.clone(), !neg)),
            ModalFormula::Diamond(a) => {
                ops.push(if neg { ModalOp::Box } else { ModalOp::Diamond });
                go(a, neg, ops)
            }
            ModalFormula::Boxed(a) => {
                ops.push(if neg { ModalOp::Diamond } else { ModalOp::Box });
                go(a, neg, ops)
            }
            ModalFormula::Apply(c, args) => {
                let g = &c.func;
                if g.is_constant() {
                    Ok(if g.value(0) != neg { Terminal::Top } else { Terminal::Bot })
                } else if g.arity() == 1 && !g.value(0) && g.value(1) {
                    go(&args[0], neg, ops)
                } else if g.arity() == 1 && g.value(0) && !g.value(1) {
                    go(&args[0], !neg, ops)
                } else {
                    Err(Error::NotInFragment(format!(
                        "connective `{}` is not one of ¬, ⊤, ⊥",
                        c.name
                    )))
                }
            }
            ModalFormula::Defined(..) => go(&expand(f), neg, ops),
        }
    }
    let mut ops = Vec::new();
    let terminal = go(phi, false, &mut ops)?;
    Ok(NormalForm { ops, terminal }.normalize())
}

/// All normal forms of depth at most `bound` over `prop`.
pub fn enumerate_normal_forms(prop: &[String], bound: usize) -> Vec<NormalForm> {
    let mut terminals = vec![Terminal::Top, Terminal::Bot];
    for x in prop {
        terminals.push(Terminal::Lit(x.clone(), true));
        terminals.push(Terminal::Lit(x.clone(), false));
    }
    let mut out = Vec::new();
    for d in 0..=bound {
        for bits in 0..(1u64 << d) {
            let ops: Vec<ModalOp> = (0..d)
                .map(|i| if bits >> i & 1 == 1 { ModalOp::Box } else { ModalOp::Diamond })
                .collect();
            for t in &terminals {
                let nf = NormalForm {
                    ops: ops.clone(),
                    terminal: t.clone(),
                };
                if nf.is_normal() {
                    out.push(nf);
                }
            }
        }
    }
    out
}

/// The chain `0 → 1 → … → len` pointed at 0, with the given valuation.
pub fn chain_model(len: usize, val: Vec<BTreeSet<String>>) -> KripkeModel {
    let edges: Vec<(usize, usize)> = (0..len).map(|i| (i, i + 1)).collect();
    KripkeModel::from_indices(len + 1, &edges, val).expect("well-formed chain")
}

/// A single reflexive world pointed at itself.
fn loop_model(val: BTreeSet<String>) -> KripkeModel {
    KripkeModel::from_indices(1, &[(0, 0)], vec![val]).expect("well-formed loop")
}

/// The chain `0 → … → n`, a loop at `n`, and one more step `n → n+1`.
fn chain_loop_model(n: usize) -> KripkeModel {
    let mut edges: Vec<(usize, usize)> = (0..=n).map(|i| (i, i + 1)).collect();
    edges.push((n, n));
    KripkeModel::from_indices(n + 2, &edges, vec![BTreeSet::new(); n + 2]).expect("well-formed chain")
}

/// Chains of length up to `max_len` whose valuation is empty or makes a
/// single variable true at a single world. They separate any two distinct
/// normal forms of depth below `max_len`.
fn separating_pool(prop: &[String], max_len: usize) -> Vec<KripkeModel> {
    let mut pool = Vec::new();
    for len in 0..=max_len {
        pool.push(chain_model(len, vec![BTreeSet::new(); len + 1]));
        for w in 0..=len {
            for x in prop {
                let mut val = vec![BTreeSet::new(); len + 1];
                val[w].insert(x.clone());
                pool.push(chain_model(len, val));
            }
        }
    }
    pool
}

fn fits_nf(nf: &NormalForm, examples: &[LabeledExample]) -> Result<bool> {
    for ex in examples {
        match &ex.payload {
            Payload::Model(m) => {
                let w = m.point().ok_or_else(|| Error::BadModel("example model without a point".into()))?;
                if nf.eval(m, w) != ex.label {
                    return Ok(false);
                }
            }
            Payload::Assignment(_) => return Err(Error::KindMismatch),
        }
    }
    Ok(true)
}

fn modal_example(nf: &NormalForm, m: KripkeModel) -> LabeledExample {
    let label = nf.eval(&m, m.point().expect("pointed"));
    LabeledExample::model(m, label)
}

/// A teaching set for a formula of `{◇, □, ¬, ⊤}` over `prop`, unique among
/// formulas of depth up to `max(config bound, depth + 1)`.
pub fn teach_modal(phi: &ModalFormula, prop: &[String]) -> Result<TeachingSet> {
    teach_modal_with(phi, prop, &Config::default())
}

/// [`teach_modal`] with explicit limits.
pub fn teach_modal_with(phi: &ModalFormula, prop: &[String], cfg: &Config) -> Result<TeachingSet> {
    let nf = normal_form(phi)?;
    let bound = cfg.modal_depth_bound.max(nf.depth() + 1);
    teach_modal_to_bound(&nf, prop, bound)
}

/// Builds the base examples for the normal form's type and then adds
/// separating chains until no other normal form of depth at most `bound`
/// fits.
pub fn teach_modal_to_bound(nf: &NormalForm, prop: &[String], bound: usize) -> Result<TeachingSet> {
    let vars: Vec<String> = match &nf.terminal {
        Terminal::Lit(x, _) => vec![x.clone()],
        _ => Vec::new(),
    };
    check_prop(prop, &vars)?;
    let n = nf.depth();
    let all: BTreeSet<String> = prop.iter().cloned().collect();
    let mut examples = Vec::new();
    match &nf.terminal {
        Terminal::Lit(x, _) => {
            let mut val = vec![BTreeSet::new(); n + 1];
            val[n].insert(x.clone());
            examples.push(modal_example(nf, chain_model(n, val)));
            examples.push(modal_example(nf, chain_model(n, vec![BTreeSet::new(); n + 1])));
        }
        Terminal::Top | Terminal::Bot => {
            examples.push(modal_example(nf, loop_model(BTreeSet::new())));
            examples.push(modal_example(nf, loop_model(all)));
            examples.push(modal_example(nf, chain_model(n, vec![BTreeSet::new(); n + 1])));
            examples.push(modal_example(nf, chain_loop_model(n)));
        }
    }
    let pool = separating_pool(prop, bound + 1);
    for other in enumerate_normal_forms(prop, bound) {
        if other == *nf || !fits_nf(&other, &examples)? {
            continue;
        }
        if let Some(m) = pool.iter().find(|m| other.eval(m, 0) != nf.eval(m, 0)) {
            examples.push(modal_example(nf, m.clone()));
        }
    }
    Ok(TeachingSet {
        fragment: "{◇, □, ¬, ⊤}".into(),
        prop: prop.to_vec(),
        examples,
    })
}

/// Outcome of the bounded modal uniqueness check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModalUniqueness {
    /// No other normal form up to the bound fits; not a proof beyond it.
    UniqueUpToBound,
    /// An inequivalent normal form fits every example.
    Ambiguous(NormalForm),
    NotFitting,
}

impl Serialize for ModalUniqueness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        match self {
            ModalUniqueness::UniqueUpToBound => m.serialize_entry("result", "unique_up_to_bound")?,
            ModalUniqueness::Ambiguous(nf) => {
                m.serialize_entry("result", "ambiguous")?;
                m.serialize_entry("witness", nf)?;
            }
            ModalUniqueness::NotFitting => m.serialize_entry("result", "not_fitting")?,
        }
        m.end()
    }
}

/// Checks the examples against every normal form of depth at most `bound`
/// over `prop`. A reported ambiguity comes with a model separating the
/// witness from `phi`, so it is a genuine refutation.
pub fn verify_unique_modal(
    phi: &ModalFormula,
    examples: &[LabeledExample],
    prop: &[String],
    bound: usize,
) -> Result<ModalUniqueness> {
    let nf = normal_form(phi)?;
    let required = nf.depth() + 1;
    if bound < required {
        return Err(Error::BoundTooSmall { bound, required });
    }
    let vars: Vec<String> = match &nf.terminal {
        Terminal::Lit(x, _) => vec![x.clone()],
        _ => Vec::new(),
    };
    check_prop(prop, &vars)?;
    if !fits_nf(&nf, examples)? {
        return Ok(ModalUniqueness::NotFitting);
    }
    let pool = separating_pool(prop, bound + 1);
    for other in enumerate_normal_forms(prop, bound) {
        if other == nf || !fits_nf(&other, examples)? {
            continue;
        }
        if pool.iter().any(|m| other.eval(m, 0) != nf.eval(m, 0)) {
            return Ok(ModalUniqueness::Ambiguous(other));
        }
    }
    Ok(ModalUniqueness::UniqueUpToBound)
}

// ---------------------------------------------------------------------------
// PC reductions
// ---------------------------------------------------------------------------

/// The reductions available.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PcKind {
    /// Odd parities into `x ∨ (y ⊕ z)` with a guard variable.
    Oxor,
    /// `{∧, →}` into `x ∧ (y → z)` with a guard variable.
    Aimp,
    /// Any fragment into one-variable modal formulas via `pᵢ ↦ ◇ⁱp`.
    ModalDiamond,
    /// Any fragment into one-variable modal formulas via `pᵢ ↦ □ⁱp`.
    ModalBox,
}

impl PcKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PcKind::Oxor => "oxor",
            PcKind::Aimp => "aimp",
            PcKind::ModalDiamond => "modal_diamond",
            PcKind::ModalBox => "modal_box",
        }
    }

    pub fn is_modal(self) -> bool {
        matches!(self, PcKind::ModalDiamond | PcKind::ModalBox)
    }

    /// A basis of the source fragment used by [`verify_pc`].
    pub fn source_basis(self) -> Basis {
        match self {
            PcKind::Oxor => basis(&["xor3"]),
            PcKind::Aimp => basis(&["and", "imp"]),
            PcKind::ModalDiamond | PcKind::ModalBox => basis(&["and", "not"]),
        }
    }
}

impl fmt::Display for PcKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for PcKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "oxor" => Ok(PcKind::Oxor),
            "aimp" => Ok(PcKind::Aimp),
            "modal_diamond" | "diamond" => Ok(PcKind::ModalDiamond),
            "modal_box" | "box" => Ok(PcKind::ModalBox),
            _ => Err(Error::InvalidInput(format!("unknown reduction kind `{s}`"))),
        }
    }
}

/// The image of a concept under a reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PcImage {
    Prop(Formula),
    Modal(ModalFormula),
}

impl fmt::Display for PcImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PcImage::Prop(x) => write!(f, "{x}"),
            PcImage::Modal(x) => write!(f, "{x}"),
        }
    }
}

impl Serialize for PcImage {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A reduction applied to one concept.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PcReduction {
    pub kind: PcKind,
    pub image: PcImage,
    /// The fresh guard variable of the propositional reductions.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub guard: Option<String>,
    pub example_map: String,
}

/// An example of the target concept class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MappedExample {
    Assignment(Assignment),
    Pointed(KripkeModel, usize),
}

/// The variable name used by the modal reductions.
pub const MODAL_VAR: &str = "p";

fn fresh_guard(taken: &[String]) -> String {
    let mut name = "w".to_string();
    let mut i = 0;
    while taken.contains(&name) {
        i += 1;
        name = format!("w{i}");
    }
    name
}

fn only_connectives(phi: &Formula, allowed: &Basis, kind: PcKind) -> Result<()> {
    match phi {
        Formula::Var(_) => Ok(()),
        Formula::Apply(c, args) => {
            if !allowed.contains_fn(&c.func) {
                return Err(Error::NotInSourceFragment(format!(
                    "`{}` is not allowed in the source of the {kind} reduction",
                    c.name
                )));
            }
            args.iter().try_for_each(|a| only_connectives(a, allowed, kind))
        }
    }
}

fn aimp_app(x: Formula, y: Formula, z: Formula) -> Formula {
    Formula::app("aimp", vec![x, y, z]).expect("catalog")
}

fn oxor_app(x: Formula, y: Formula, z: Formula) -> Formula {
    Formula::app("oxor", vec![x, y, z]).expect("catalog")
}

/// Applies the reduction `kind` to `phi`, a formula over the ordered
/// variable list `prop` (the modal reductions map `prop[i]` to `◇ⁱp`/`□ⁱp`).
pub fn pc_reduce(kind: PcKind, phi: &Formula, prop: &[String]) -> Result<PcReduction> {
    check_prop(prop, &phi.vars())?;
    match kind {
        PcKind::Aimp => {
            only_connectives(phi, &kind.source_basis(), kind)?;
            let w = fresh_guard(prop);
            let wv = || Formula::var(w.as_str());
            let and = BoolFn::named("and", &[])?;
            fn inner(f: &Formula, w: &dyn Fn() -> Formula, and: &BoolFn) -> Formula {
                match f {
                    Formula::Var(_) => f.clone(),
                    Formula::Apply(c, args) => {
                        let a = inner(&args[0], w, and);
                        let b = inner(&args[1], w, and);
                        if c.func == *and {
                            aimp_app(a, w(), b)
                        } else {
                            aimp_app(w(), a, b)
                        }
                    }
                }
            }
            let image = aimp_app(wv(), wv(), inner(phi, &wv, &and));
            Ok(PcReduction {
                kind,
                image: PcImage::Prop(image),
                example_map: format!("h(V) = V ∪ {{{w}: 1}}"),
                guard: Some(w),
            })
        }
        PcKind::Oxor => {
            only_connectives(phi, &kind.source_basis(), kind)?;
            let w = fresh_guard(prop);
            // The source computes the parity of the variables occurring an odd
            // number of times.
            fn count(f: &Formula, acc: &mut BTreeMap<String, usize>) {
                match f {
                    Formula::Var(x) => *acc.entry(x.clone()).or_default() += 1,
                    Formula::Apply(_, args) => args.iter().for_each(|a| count(a, acc)),
                }
            }
            let mut occ = BTreeMap::new();
            count(phi, &mut occ);
            let odd: Vec<String> = prop.iter().filter(|x| occ.get(*x).is_some_and(|c| c % 2 == 1)).cloned().collect();
            let wv = || Formula::var(w.as_str());
            // chain(T) equals ⊕T whenever w is false.
            fn xchain(vars: &[String], w: &dyn Fn() -> Formula) -> Formula {
                match vars {
                    [x] => Formula::var(x.as_str()),
                    [x, rest @ ..] => oxor_app(w(), Formula::var(x.as_str()), xchain(rest, w)),
                    [] => unreachable!("odd parities have at least one variable"),
                }
            }
            let image = match odd.as_slice() {
                [x] => oxor_app(wv(), wv(), Formula::var(x.as_str())),
                [] => unreachable!("a formula over xor3 has an odd number of variable occurrences"),
                _ => xchain(&odd, &wv),
            };
            Ok(PcReduction {
                kind,
                image: PcImage::Prop(image),
                example_map: format!("h(V) = V ∪ {{{w}: 0}}"),
                guard: Some(w),
            })
        }
        PcKind::ModalDiamond | PcKind::ModalBox => {
            fn prefix(kind: PcKind, i: usize) -> ModalFormula {
                let mut f = ModalFormula::var(MODAL_VAR);
                for _ in 0..i {
                    f = if kind == PcKind::ModalDiamond {
                        ModalFormula::diamond(f)
                    } else {
                        ModalFormula::boxed(f)
                    };
                }
                f
            }
            fn lift(f: &Formula, prop: &[String], kind: PcKind) -> ModalFormula {
                match f {
                    Formula::Var(x) => prefix(kind, prop.iter().position(|y| y == x).expect("checked")),
                    Formula::Apply(c, args) => {
                        ModalFormula::Apply(c.clone(), args.iter().map(|a| lift(a, prop, kind)).collect())
                    }
                }
            }
            let op = if kind == PcKind::ModalDiamond { "◇" } else { "□" };
            Ok(PcReduction {
                kind,
                image: PcImage::Modal(lift(phi, prop, kind)),
                guard: None,
                example_map: format!(
                    "h(V) = chain 0 → … → {} pointed at 0, with {MODAL_VAR} true at world i iff V({}) = 1 (variable i ↦ {op}^i {MODAL_VAR})",
                    prop.len() - 1,
                    "variable i"
                ),
            })
        }
    }
}

/// The example map of the reduction `kind` over `prop`.
pub fn standard_example_map(kind: PcKind, prop: &[String]) -> impl Fn(&Assignment) -> MappedExample + '_ {
    let guard = fresh_guard(prop);
    move |v: &Assignment| match kind {
        PcKind::Aimp | PcKind::Oxor => {
            let mut a = v.clone();
            a.insert(guard.clone(), kind == PcKind::Aimp);
            MappedExample::Assignment(a)
        }
        PcKind::ModalDiamond | PcKind::ModalBox => {
            let val = prop
                .iter()
                .map(|x| {
                    let mut s = BTreeSet::new();
                    if v.get(x).copied().unwrap_or(false) {
                        s.insert(MODAL_VAR.to_string());
                    }
                    s
                })
                .collect();
            MappedExample::Pointed(chain_model(prop.len() - 1, val), 0)
        }
    }
}

/// Outcome of checking a reduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PcReport {
    pub kind: PcKind,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model_bound: Option<usize>,
    pub source_functions: usize,
    pub condition1: bool,
    pub condition2: bool,
    /// `pass`, `pass_at_bound` (modal condition 2 is only checked on small
    /// models) or `fail`.
    pub status: String,
    pub target_examples_checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl PcReport {
    pub fn passed(&self) -> bool {
        self.condition1 && self.condition2
    }
}

/// The source concepts: every function of the source clone at arity `n`,
/// each with a formula built from the source basis.
fn source_concepts(kind: PcKind, prop: &[String], cfg: &Config) -> Result<Vec<(BoolFn, Formula)>> {
    let b = kind.source_basis();
    let fns: Vec<BoolFn> = b.functions().collect();
    let conns = b.connectives().to_vec();
    let n = prop.len();
    let sat = saturate(&fns, n, cfg.closure_budget, None, true)?;
    let mut formulas: Vec<Formula> = Vec::with_capacity(sat.tables.len());
    for origin in &sat.origins {
        let f = match origin {
            Origin::Projection(i) => Formula::var(prop[*i].as_str()),
            Origin::Apply(gi, args) => {
                Formula::Apply(conns[*gi].clone(), args.iter().map(|&a| formulas[a].clone()).collect())
            }
        };
        formulas.push(f);
    }
    Ok(sat
        .tables
        .iter()
        .zip(formulas)
        .map(|(&t, f)| (BoolFn::from_table(n, t).expect("closure table"), f))
        .collect())
}

/// A modal formula compiled for models of at most 64 worlds.
struct SmallModalProgram {
    ops: Vec<SmallOp>,
}

enum SmallOp {
    Var,
    Apply(BoolFn),
    Diamond,
    Box,
}

impl SmallModalProgram {
    /// Compiles a formula over the single variable [`MODAL_VAR`].
    fn new(f: &ModalFormula) -> Result<Self> {
        fn go(f: &ModalFormula, ops: &mut Vec<SmallOp>) -> Result<()> {
            match f {
                ModalFormula::Var(x) if x == MODAL_VAR => ops.push(SmallOp::Var),
                ModalFormula::Var(x) => return Err(Error::UnboundVariable(x.clone())),
                ModalFormula::Apply(c, args) => {
                    for a in args {
                        go(a, ops)?;
                    }
                    ops.push(SmallOp::Apply(c.func));
                }
                ModalFormula::Diamond(a) => {
                    go(a, ops)?;
                    ops.push(SmallOp::Diamond);
                }
                ModalFormula::Boxed(a) => {
                    go(a, ops)?;
                    ops.push(SmallOp::Box);
                }
                ModalFormula::Defined(..) => go(&expand(f), ops)?,
            }
            Ok(())
        }
        let mut ops = Vec::new();
        go(f, &mut ops)?;
        Ok(SmallModalProgram { ops })
    }

    /// Extension as a world bitset; `succ[w]` is the successor set of `w`
    /// and `val` the set of worlds where the variable holds.
    fn eval(&self, succ: &[u64], val: u64) -> u64 {
        let worlds = succ.len();
        let full = if worlds == 64 { !0 } else { (1u64 << worlds) - 1 };
        let mut stack: Vec<u64> = Vec::with_capacity(8);
        for op in &self.ops {
            match op {
                SmallOp::Var => stack.push(val),
                SmallOp::Apply(g) => {
                    let at = stack.len() - g.arity();
                    let r = apply_words(g, &stack[at..]) & full;
                    stack.truncate(at);
                    stack.push(r);
                }
                SmallOp::Diamond => {
                    let inner = stack.pop().expect("operand");
                    let mut r = 0;
                    for (w, &s) in succ.iter().enumerate() {
                        if s & inner != 0 {
                            r |= 1 << w;
                        }
                    }
                    stack.push(r);
                }
                SmallOp::Box => {
                    let inner = stack.pop().expect("operand");
                    let mut r = 0;
                    for (w, &s) in succ.iter().enumerate() {
                        if s & !inner == 0 {
                            r |= 1 << w;
                        }
                    }
                    stack.push(r);
                }
            }
        }
        stack.pop().expect("well-formed program")
    }
}

/// Evaluates a one-variable modal formula on every world of a small model
/// with the bitset evaluator used by [`verify_pc`].
pub fn small_extension(f: &ModalFormula, m: &KripkeModel) -> Result<u64> {
    if m.len() > 64 {
        return Err(Error::BadModel("at most 64 worlds".into()));
    }
    let prog = SmallModalProgram::new(f)?;
    let succ: Vec<u64> = (0..m.len())
        .map(|w| m.successors(w).iter().fold(0u64, |acc, &v| acc | 1 << v))
        .collect();
    let val = (0..m.len())
        .filter(|&w| m.valuation(w).contains(MODAL_VAR))
        .fold(0u64, |acc, w| acc | 1 << w);
    Ok(prog.eval(&succ, val))
}

/// Largest source variable count for [`verify_pc`].
pub const PC_MAX_N: usize = 3;
/// Largest model size for the modal part of [`verify_pc`].
pub const PC_MAX_WORLDS: usize = 5;

/// Checks both conditions of a PC reduction with the standard example map.
///
/// Condition 1 is checked for every source function over `n` variables and
/// every assignment. Condition 2 is checked over all target assignments for
/// the propositional kinds and over all pointed models with at most `k`
/// worlds for the modal kinds.
pub fn verify_pc(kind: PcKind, n: usize, k: usize) -> Result<PcReport> {
    let prop = pc_prop(n)?;
    let h = standard_example_map(kind, &prop);
    verify_pc_custom(kind, n, k, &h, &Config::default())
}

/// The source variables `p0, …, p(n-1)`.
pub fn pc_prop(n: usize) -> Result<Vec<String>> {
    if n == 0 || n > PC_MAX_N {
        return Err(Error::InvalidInput(format!("n must be in 1..={PC_MAX_N}")));
    }
    Ok((0..n).map(|i| format!("p{i}")).collect())
}

/// [`verify_pc`] with a caller-supplied example map `h` (over the variables
/// of [`pc_prop`]).
pub fn verify_pc_custom(
    kind: PcKind,
    n: usize,
    k: usize,
    h: &dyn Fn(&Assignment) -> MappedExample,
    cfg: &Config,
) -> Result<PcReport> {
    let prop = pc_prop(n)?;
    if kind.is_modal() && (k == 0 || k > PC_MAX_WORLDS) {
        return Err(Error::InvalidInput(format!("k must be in 1..={PC_MAX_WORLDS}")));
    }
    let concepts = source_concepts(kind, &prop, cfg)?;
    let images: Vec<PcReduction> = concepts
        .iter()
        .map(|(_, f)| pc_reduce(kind, f, &prop))
        .collect::<Result<_>>()?;
    let mut report = PcReport {
        kind,
        n,
        model_bound: kind.is_modal().then_some(k),
        source_functions: concepts.len(),
        condition1: true,
        condition2: true,
        status: String::new(),
        target_examples_checked: 0,
        counterexample: None,
    };

    // Condition 1: e ∈ c iff h(e) ∈ f(c).
    'c1: for ((c, src), red) in concepts.iter().zip(&images) {
        for mask in 0..(1u64 << n) {
            let v = assignment_of(&prop, mask);
            let expected = c.value(mask as usize);
            let got = match (h(&v), &red.image) {
                (MappedExample::Assignment(a), PcImage::Prop(img)) => evaluate(img, &a)?,
                (MappedExample::Pointed(m, w), PcImage::Modal(img)) => m.holds(w, img),
                _ => return Err(Error::KindMismatch),
            };
            if got != expected {
                report.condition1 = false;
                report.counterexample = Some(format!(
                    "condition 1: source {src} at {} is {}, image {} disagrees",
                    describe_assignment(&v),
                    expected as u8,
                    red.image
                ));
                break 'c1;
            }
        }
    }

    // Condition 2: every target example is constant on the image family or
    // behaves like some source example.
    let words = concepts.len().div_ceil(64);
    let set_of = |bits: &mut dyn Iterator<Item = bool>| -> Vec<u64> {
        let mut s = vec![0u64; words];
        for (i, b) in bits.enumerate() {
            if b {
                s[i / 64] |= 1 << (i % 64);
            }
        }
        s
    };
    let mut allowed: HashSet<Vec<u64>> = HashSet::new();
    allowed.insert(set_of(&mut std::iter::repeat(false).take(concepts.len())));
    allowed.insert(set_of(&mut std::iter::repeat(true).take(concepts.len())));
    for mask in 0..(1u64 << n) {
        allowed.insert(set_of(&mut concepts.iter().map(|(c, _)| c.value(mask as usize))));
    }
    if kind.is_modal() {
        let progs: Vec<SmallModalProgram> = images
            .iter()
            .map(|r| match &r.image {
                PcImage::Modal(f) => SmallModalProgram::new(f),
                PcImage::Prop(_) => Err(Error::KindMismatch),
            })
            .collect::<Result<_>>()?;
        let mut checked = 0usize;
        'c2m: for size in 1..=k {
            let mut succ = vec![0u64; size];
            let mut exts = vec![0u64; progs.len()];
            for rel in 0..(1u64 << (size * size)) {
                for (w, s) in succ.iter_mut().enumerate() {
                    *s = rel >> (w * size) & ((1 << size) - 1);
                }
                for val in 0..(1u64 << size) {
                    for (e, p) in exts.iter_mut().zip(&progs) {
                        *e = p.eval(&succ, val);
                    }
                    for w in 0..size {
                        checked += 1;
                        let s = set_of(&mut exts.iter().map(|e| e >> w & 1 == 1));
                        if !allowed.contains(&s) {
                            report.condition2 = false;
                            report.counterexample = Some(format!(
                                "condition 2: model with {size} worlds, relation {rel:#x}, valuation {val:#x}, world {w}"
                            ));
                            break 'c2m;
                        }
                    }
                }
            }
        }
        report.target_examples_checked = checked;
    } else {
        let guard = match &images[0].guard {
            Some(g) => g.clone(),
            None => return Err(Error::InternalInconsistency("propositional reduction without guard".into())),
        };
        let mut target_vars = prop.clone();
        target_vars.push(guard);
        let rows = 1u64 << (n + 1);
        let row_mask = crate::boolfn::row_mask(n + 1);
        let tables: Vec<u64> = images
            .iter()
            .map(|r| match &r.image {
                PcImage::Prop(f) => {
                    let prog = Compiled::new(f, &target_vars)?;
                    let words: Vec<u64> = (0..=n).map(|i| crate::boolfn::projection_table(n + 1, i)).collect();
                    Ok(prog.eval_words(&words) & row_mask)
                }
                PcImage::Modal(_) => Err(Error::KindMismatch),
            })
            .collect::<Result<_>>()?;
        for row in 0..rows {
            let s = set_of(&mut tables.iter().map(|t| t >> row & 1 == 1));
            if !allowed.contains(&s) {
                report.condition2 = false;
                if report.counterexample.is_none() {
                    report.counterexample = Some(format!(
                        "condition 2: target assignment {}",
                        describe_assignment(&assignment_of(&target_vars, row))
                    ));
                }
                break;
            }
        }
        report.target_examples_checked = rows as usize;
    }
    report.status = if !report.passed() {
        "fail".into()
    } else if kind.is_modal() {
        "pass_at_bound".into()
    } else {
        "pass".into()
    };
    Ok(report)
}

fn describe_assignment(v: &Assignment) -> String {
    let parts: Vec<String> = v.iter().map(|(k, b)| format!("{k}={}", *b as u8)).collect();
    format!("{{{}}}", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modal::parse_modal;
    use crate::proplogic::parse;

    fn props(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn asg(pairs: &[(&str, bool)]) -> Assignment {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    fn b(names: &[&str]) -> Basis {
        Basis::from_names(names).unwrap()
    }

    #[test]
    fn fitting_examples() {
        let f = parse("p & q", &b(&["and"])).unwrap();
        assert!(fits(&f, &LabeledExample::assignment(asg(&[("p", true), ("q", true)]), true)).unwrap());
        assert!(fits(&f, &LabeledExample::assignment(asg(&[("p", true), ("q", false)]), false)).unwrap());
        let p = Formula::var("p");
        assert!(!fits(&p, &LabeledExample::assignment(asg(&[("p", false)]), true)).unwrap());
        let m = chain_model(0, vec![BTreeSet::new()]);
        assert_eq!(fits(&p, &LabeledExample::model(m, true)), Err(Error::KindMismatch));
    }

    #[test]
    fn teaching_examples() {
        let pq = props(&["p", "q"]);
        let f = parse("p & q", &b(&["and"])).unwrap();
        let t = teach_prop(&f, &b(&["and"]), &pq).unwrap();
        let got: Vec<(u64, bool)> = t
            .examples
            .iter()
            .map(|e| match &e.payload {
                Payload::Assignment(a) => (mask_of(&pq, a).unwrap(), e.label),
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(got, vec![(0b11, true), (0b01, false), (0b10, false)]);
        assert_eq!(verify_unique(&f, &t.examples, &b(&["and"]), &pq).unwrap(), Uniqueness::Unique);

        let p = props(&["p"]);
        let neg = parse("!p", &b(&["not", "top"])).unwrap();
        let t = teach_prop(&neg, &b(&["not", "top"]), &p).unwrap();
        assert_eq!(
            t.examples,
            vec![
                LabeledExample::assignment(asg(&[("p", true)]), false),
                LabeledExample::assignment(asg(&[("p", false)]), true)
            ]
        );

        let pqr = props(&["p", "q", "r"]);
        let m = b(&["and", "or", "top", "bot"]);
        let f = parse("(p & q) | r", &m).unwrap();
        let t = teach_prop(&f, &m, &pqr).unwrap();
        assert_eq!(t.examples.iter().filter(|e| e.label).count(), 2);
        assert_eq!(t.examples.iter().filter(|e| !e.label).count(), 2);
        assert_eq!(verify_unique(&f, &t.examples, &m, &pqr).unwrap(), Uniqueness::Unique);

        let x = parse("p ^ q", &b(&["xor"])).unwrap();
        assert!(matches!(teach_prop(&x, &b(&["xor"]), &pq), Err(Error::FragmentNotTeachable(_))));
    }

    #[test]
    fn verify_unique_examples() {
        let pq = props(&["p", "q"]);
        let f = parse("p & q", &b(&["and", "or"])).unwrap();
        let one = vec![LabeledExample::assignment(asg(&[("p", true), ("q", true)]), true)];
        assert!(matches!(
            verify_unique(&f, &one, &b(&["and", "or"]), &pq).unwrap(),
            Uniqueness::Ambiguous { .. }
        ));
        let p = Formula::var("p");
        let bad = vec![LabeledExample::assignment(asg(&[("p", false)]), true)];
        assert_eq!(verify_unique(&p, &bad, &b(&["and"]), &props(&["p"])).unwrap(), Uniqueness::NotFitting);
        let five = props(&["a", "b", "c", "d", "e"]);
        assert!(matches!(
            verify_unique(&Formula::var("a"), &[], &b(&["and"]), &five),
            Err(Error::PropCapExceeded { .. })
        ));
    }

    #[test]
    fn learner_examples() {
        let pqr = props(&["p", "q", "r"]);
        let mut calls = 0;
        let l = learn_mq(&b(&["and"]), &pqr, &mut |v: &Assignment| {
            calls += 1;
            v["p"] && v["q"]
        })
        .unwrap();
        assert_eq!((l.queries, calls), (4, 4));
        assert_eq!(l.formula.to_string(), "and(p,q)");

        let pq = props(&["p", "q"]);
        let l = learn_mq(&b(&["xor", "top"]), &pq, &mut |v: &Assignment| !(v["p"] ^ v["q"])).unwrap();
        assert_eq!(l.queries, 3);
        assert_eq!(truth_table_with(&l.formula, &pq, &Config::default()).unwrap().table(), 0b1001);

        let l = learn_mq(&b(&["and", "top"]), &props(&["p"]), &mut |_: &Assignment| true).unwrap();
        assert_eq!(l.queries, 2);
        assert_eq!(l.formula.to_string(), "top(p)");

        assert!(matches!(
            learn_mq(&b(&["and", "or"]), &pq, &mut |_: &Assignment| true),
            Err(Error::NotLearnable(_))
        ));
        assert!(matches!(
            learn_mq(&b(&["and"]), &pq, &mut |v: &Assignment| v["p"] || v["q"]),
            Err(Error::OracleInconsistent(_))
        ));
    }

    #[test]
    fn parity_examples() {
        let pqr = props(&["p", "q", "r"]);
        match parity_lower_bound(&pqr, &[]).unwrap() {
            ParityOutcome::WitnessPair(a, b) => {
                assert_eq!(a.to_string(), "p");
                assert_eq!(b.to_string(), "xor(xor(p,q),r)");
            }
            other => panic!("{other:?}"),
        }
        let pq = props(&["p", "q"]);
        let ex = vec![
            LabeledExample::assignment(asg(&[("p", true), ("q", true)]), true),
            LabeledExample::assignment(asg(&[("p", true), ("q", false)]), true),
        ];
        assert_eq!(parity_lower_bound(&pq, &ex).unwrap(), ParityOutcome::Saturated);
        let bad = vec![LabeledExample::assignment(asg(&[("p", true), ("q", true)]), false)];
        assert_eq!(parity_lower_bound(&pq, &bad), Err(Error::Inconsistent));
    }

    #[test]
    fn modal_teaching_examples() {
        let p = props(&["p"]);
        let dp = parse_modal("<>p", None, &[]).unwrap();
        let t = teach_modal(&dp, &p).unwrap();
        assert!(t.examples[0].label && !t.examples[1].label);
        assert_eq!(verify_unique_modal(&dp, &t.examples, &p, 3).unwrap(), ModalUniqueness::UniqueUpToBound);
        let single = vec![t.examples[0].clone()];
        assert!(matches!(
            verify_unique_modal(&dp, &single, &p, 2).unwrap(),
            ModalUniqueness::Ambiguous(_)
        ));
        assert_eq!(
            verify_unique_modal(&dp, &single, &p, 1),
            Err(Error::BoundTooSmall { bound: 1, required: 2 })
        );

        let dtop = parse_modal("<>top(p)", None, &[]).unwrap();
        let t = teach_modal(&dtop, &p).unwrap();
        assert!(t.examples[..4].iter().all(|e| e.label));

        let boxbot = parse_modal("[]bot(p)", None, &[]).unwrap();
        let t = teach_modal(&boxbot, &p).unwrap();
        assert_eq!(verify_unique_modal(&boxbot, &t.examples, &p, 2).unwrap(), ModalUniqueness::UniqueUpToBound);

        let and = parse_modal("p & <>p", None, &[]).unwrap();
        assert!(matches!(teach_modal(&and, &p), Err(Error::NotInFragment(_))));
    }

    #[test]
    fn normal_forms() {
        let f = parse_modal("!<>[]!p", None, &[]).unwrap();
        assert_eq!(normal_form(&f).unwrap().to_string(), "□◇p");
        let g = parse_modal("<>[]top(p)", None, &[]).unwrap();
        assert_eq!(normal_form(&g).unwrap().to_string(), "◇⊤");
        let h = parse_modal("!<>top(p)", None, &[]).unwrap();
        assert_eq!(normal_form(&h).unwrap().to_string(), "□⊥");
    }

    #[test]
    fn reduction_examples() {
        let pq = props(&["p", "q"]);
        let f = parse("p -> q", &b(&["imp"])).unwrap();
        let r = pc_reduce(PcKind::Aimp, &f, &pq).unwrap();
        assert_eq!(r.image.to_string(), "aimp(w,w,aimp(w,p,q))");
        let g = parse("p0", &b(&["and"])).unwrap();
        let r = pc_reduce(PcKind::Oxor, &g, &props(&["p0"])).unwrap();
        assert_eq!(r.image.to_string(), "oxor(w,w,p0)");
        let h = parse("p0 & p1", &b(&["and"])).unwrap();
        let r = pc_reduce(PcKind::ModalDiamond, &h, &props(&["p0", "p1"])).unwrap();
        assert_eq!(r.image.to_string(), "and(p,dia(p))");
        assert!(matches!(
            pc_reduce(PcKind::Aimp, &parse("p | q", &b(&["or"])).unwrap(), &pq),
            Err(Error::NotInSourceFragment(_))
        ));
    }

    #[test]
    fn reductions_verify() {
        for kind in [PcKind::Aimp, PcKind::Oxor] {
            for n in 2..=3 {
                let r = verify_pc(kind, n, 1).unwrap();
                assert!(r.passed(), "{kind} n={n}: {r:?}");
                assert_eq!(r.status, "pass");
            }
        }
        let r = verify_pc(PcKind::ModalDiamond, 2, 3).unwrap();
        assert_eq!(r.status, "pass_at_bound", "{r:?}");
    }
}
