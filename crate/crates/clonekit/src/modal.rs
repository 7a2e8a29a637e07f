//! Modal formulas, Kripke semantics, and simple modal fragments.
//!
//! * [`ModalFormula`] extends propositional formulas with `◇`, `□` and
//!   defined operators ([`Definition`]), which count as a single node for
//!   [`measure_modal`] and are unfolded by [`expand`].
//! * [`KripkeModel`] is a finite model; [`mc`] evaluates formulas on it by
//!   computing extensions as world bitsets.
//! * [`Logic`] is the catalog of normal modal logics with their frame
//!   conditions and Makinson types; [`clos`], [`simple_leq`] and
//!   [`simple_complete`] reduce questions about simple fragments to Post's
//!   lattice.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::boolfn::{BoolFn, Connective};
use crate::clones::{base_of_with, contains_with, identify_with, join_with, member_with, Basis, Family, NamedClone};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::proplogic::{apply_words, tokenize, Tok, INFIX_LEVELS};

// ---------------------------------------------------------------------------
// Modal operator sets
// ---------------------------------------------------------------------------

/// A subset of `{◇, □}`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModalOps {
    pub diamond: bool,
    pub boxed: bool,
}

impl ModalOps {
    pub const NONE: ModalOps = ModalOps { diamond: false, boxed: false };
    pub const DIAMOND: ModalOps = ModalOps { diamond: true, boxed: false };
    pub const BOX: ModalOps = ModalOps { diamond: false, boxed: true };
    pub const BOTH: ModalOps = ModalOps { diamond: true, boxed: true };

    pub fn is_empty(&self) -> bool {
        !self.diamond && !self.boxed
    }

    pub fn is_both(&self) -> bool {
        self.diamond && self.boxed
    }
}

impl fmt::Display for ModalOps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.diamond {
            parts.push("◇");
        }
        if self.boxed {
            parts.push("□");
        }
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for ModalOps {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut v = Vec::new();
        if self.diamond {
            v.push("diamond");
        }
        if self.boxed {
            v.push("box");
        }
        v.serialize(s)
    }
}

impl FromStr for ModalOps {
    type Err = Error;

    /// Accepts comma-separated `diamond`/`dia`/`◇`/`<>` and `box`/`□`/`[]`;
    /// the empty string and `none` denote the empty set.
    fn from_str(s: &str) -> Result<Self> {
        let mut ops = ModalOps::NONE;
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            match item.to_ascii_lowercase().as_str() {
                "diamond" | "dia" | "◇" | "<>" => ops.diamond = true,
                "box" | "□" | "[]" => ops.boxed = true,
                "none" | "{}" => {}
                _ => return Err(Error::BadModalSet(format!("unknown modal operator `{item}`"))),
            }
        }
        Ok(ops)
    }
}

// ---------------------------------------------------------------------------
// Formulas
// ---------------------------------------------------------------------------

/// A named operator defined by a modal formula. Its placeholders are the
/// variables of the body in sorted order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Definition {
    pub name: String,
    pub body: ModalFormula,
    pub params: Vec<String>,
}

impl Definition {
    pub fn new(name: impl Into<String>, body: ModalFormula) -> Arc<Self> {
        let params = body.vars();
        Arc::new(Definition {
            name: name.into(),
            body,
            params,
        })
    }

    /// Number of arguments.
    pub fn arity(&self) -> usize {
        self.params.len()
    }
}

/// A modal formula.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModalFormula {
    Var(String),
    Apply(Connective, Vec<ModalFormula>),
    Diamond(Box<ModalFormula>),
    Boxed(Box<ModalFormula>),
    Defined(Arc<Definition>, Vec<ModalFormula>),
}

impl ModalFormula {
    pub fn var(name: impl Into<String>) -> Self {
        ModalFormula::Var(name.into())
    }

    pub fn diamond(f: ModalFormula) -> Self {
        ModalFormula::Diamond(Box::new(f))
    }

    pub fn boxed(f: ModalFormula) -> Self {
        ModalFormula::Boxed(Box::new(f))
    }

    /// Application of a catalog connective by name.
    pub fn app(name: &str, args: Vec<ModalFormula>) -> Result<Self> {
        let c = Connective::named(name)?;
        if c.arity() != args.len() {
            return Err(Error::ArityMismatch {
                expected: c.arity(),
                got: args.len(),
            });
        }
        Ok(ModalFormula::Apply(c, args))
    }

    /// Application of a defined operator.
    pub fn defined(def: Arc<Definition>, args: Vec<ModalFormula>) -> Result<Self> {
        if def.arity() != args.len() {
            return Err(Error::ArityMismatch {
                expected: def.arity(),
                got: args.len(),
            });
        }
        Ok(ModalFormula::Defined(def, args))
    }

    /// Variables in sorted order.
    pub fn vars(&self) -> Vec<String> {
        let mut set = BTreeSet::new();
        self.collect_vars(&mut set);
        set.into_iter().collect()
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            ModalFormula::Var(v) => {
                out.insert(v.clone());
            }
            ModalFormula::Apply(_, args) | ModalFormula::Defined(_, args) => {
                args.iter().for_each(|a| a.collect_vars(out))
            }
            ModalFormula::Diamond(a) | ModalFormula::Boxed(a) => a.collect_vars(out),
        }
    }

    /// Nesting depth of `◇`/`□` after expansion.
    pub fn modal_depth(&self) -> usize {
        match self {
            ModalFormula::Var(_) => 0,
            ModalFormula::Apply(_, args) => args.iter().map(|a| a.modal_depth()).max().unwrap_or(0),
            ModalFormula::Diamond(a) | ModalFormula::Boxed(a) => 1 + a.modal_depth(),
            ModalFormula::Defined(..) => expand(self).modal_depth(),
        }
    }

    /// Whether the formula contains no modal operator and no definition.
    pub fn is_propositional(&self) -> bool {
        match self {
            ModalFormula::Var(_) => true,
            ModalFormula::Apply(_, args) => args.iter().all(|a| a.is_propositional()),
            _ => false,
        }
    }

    /// The modal operators and connectives used (after expansion).
    pub fn signature(&self) -> (ModalOps, Basis) {
        let mut ops = ModalOps::NONE;
        let mut b = Basis::new();
        fn go(f: &ModalFormula, ops: &mut ModalOps, b: &mut Basis) {
            match f {
                ModalFormula::Var(_) => {}
                ModalFormula::Apply(c, args) => {
                    b.push(c.clone());
                    args.iter().for_each(|a| go(a, ops, b));
                }
                ModalFormula::Diamond(a) => {
                    ops.diamond = true;
                    go(a, ops, b)
                }
                ModalFormula::Boxed(a) => {
                    ops.boxed = true;
                    go(a, ops, b)
                }
                ModalFormula::Defined(..) => go(&expand(f), ops, b),
            }
        }
        go(self, &mut ops, &mut b);
        (ops, b)
    }
}

impl fmt::Display for ModalFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, name: &str, args: &[ModalFormula]| {
            write!(f, "{name}(")?;
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{a}")?;
            }
            f.write_str(")")
        };
        match self {
            ModalFormula::Var(v) => f.write_str(v),
            ModalFormula::Apply(c, args) => list(f, &c.name, args),
            ModalFormula::Diamond(a) => write!(f, "dia({a})"),
            ModalFormula::Boxed(a) => write!(f, "box({a})"),
            ModalFormula::Defined(d, args) => list(f, &d.name, args),
        }
    }
}

impl Serialize for ModalFormula {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Applies the substitution `σ` to the free variables of `f`. Bodies of
/// defined operators are closed and left untouched; their arguments are
/// substituted.
pub fn substitute(f: &ModalFormula, sigma: &HashMap<String, ModalFormula>) -> ModalFormula {
    match f {
        ModalFormula::Var(v) => sigma.get(v).cloned().unwrap_or_else(|| f.clone()),
        ModalFormula::Apply(c, args) => {
            ModalFormula::Apply(c.clone(), args.iter().map(|a| substitute(a, sigma)).collect())
        }
        ModalFormula::Diamond(a) => ModalFormula::diamond(substitute(a, sigma)),
        ModalFormula::Boxed(a) => ModalFormula::boxed(substitute(a, sigma)),
        ModalFormula::Defined(d, args) => {
            ModalFormula::Defined(Arc::clone(d), args.iter().map(|a| substitute(a, sigma)).collect())
        }
    }
}

/// Unfolds every defined operator, yielding a formula over core nodes only.
pub fn expand(f: &ModalFormula) -> ModalFormula {
    match f {
        ModalFormula::Var(_) => f.clone(),
        ModalFormula::Apply(c, args) => ModalFormula::Apply(c.clone(), args.iter().map(expand).collect()),
        ModalFormula::Diamond(a) => ModalFormula::diamond(expand(a)),
        ModalFormula::Boxed(a) => ModalFormula::boxed(expand(a)),
        ModalFormula::Defined(d, args) => {
            let body = expand(&d.body);
            let sigma: HashMap<String, ModalFormula> =
                d.params.iter().cloned().zip(args.iter().map(expand)).collect();
            substitute(&body, &sigma)
        }
    }
}

/// Tree size and DAG size, with each defined operator counting as one node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ModalMeasure {
    pub tree: usize,
    pub dag: usize,
}

/// Sizes of a modal formula; defined operators are atomic.
pub fn measure_modal(f: &ModalFormula) -> ModalMeasure {
    fn go<'a>(f: &'a ModalFormula, seen: &mut HashSet<&'a ModalFormula>) -> usize {
        seen.insert(f);
        match f {
            ModalFormula::Var(_) => 1,
            ModalFormula::Apply(_, args) | ModalFormula::Defined(_, args) => {
                1 + args.iter().map(|a| go(a, seen)).sum::<usize>()
            }
            ModalFormula::Diamond(a) | ModalFormula::Boxed(a) => 1 + go(a, seen),
        }
    }
    let mut seen = HashSet::new();
    let tree = go(f, &mut seen);
    ModalMeasure {
        tree,
        dag: seen.len(),
    }
}

/// The contingency operator `γ(x) = ◇x ∧ ◇¬x`.
pub fn contingency() -> Arc<Definition> {
    let x = ModalFormula::var("x");
    let body = ModalFormula::app(
        "and",
        vec![
            ModalFormula::diamond(x.clone()),
            ModalFormula::diamond(ModalFormula::app("not", vec![x]).expect("catalog")),
        ],
    )
    .expect("catalog");
    Definition::new("gamma", body)
}

/// `γ(p)` for `n = 1` and `γ(φ)` with `φ` the previous formula afterwards.
pub fn gamma_chain(n: usize) -> ModalFormula {
    let g = contingency();
    let mut f = ModalFormula::Defined(Arc::clone(&g), vec![ModalFormula::var("p")]);
    for _ in 1..n {
        f = ModalFormula::Defined(Arc::clone(&g), vec![f]);
    }
    f
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

struct ModalParser<'a> {
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
    basis: Option<&'a Basis>,
    defs: &'a [Arc<Definition>],
}

impl ModalParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::SyntaxError {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&t) {
            self.i += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn connective(&self, display: &str, f: Result<BoolFn>) -> Result<Connective> {
        match self.basis {
            Some(b) => {
                if let Some(c) = b.by_name(display) {
                    return Ok(c.clone());
                }
                let func = f.map_err(|_| Error::UndeclaredConnective(display.to_string()))?;
                b.connectives()
                    .iter()
                    .find(|c| c.func == func)
                    .cloned()
                    .ok_or_else(|| Error::UndeclaredConnective(display.to_string()))
            }
            None => {
                let func = f.map_err(|_| Error::UndeclaredConnective(display.to_string()))?;
                Ok(Connective::new(func.display_name(), func))
            }
        }
    }

    fn level(&mut self, lvl: usize) -> Result<ModalFormula> {
        if lvl == INFIX_LEVELS.len() {
            return self.unary();
        }
        let mut left = self.level(lvl + 1)?;
        while let Some(Tok::Infix(op)) = self.peek() {
            let op = *op;
            if !INFIX_LEVELS[lvl].contains(&op) {
                break;
            }
            let c = self.connective(op, BoolFn::named(op, &[]))?;
            self.i += 1;
            let right = self.level(lvl + 1)?;
            left = ModalFormula::Apply(c, vec![left, right]);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<ModalFormula> {
        match self.peek() {
            Some(Tok::Not) => {
                let c = self.connective("not", BoolFn::named("not", &[]))?;
                self.i += 1;
                Ok(ModalFormula::Apply(c, vec![self.unary()?]))
            }
            Some(Tok::Diamond) => {
                self.i += 1;
                Ok(ModalFormula::diamond(self.unary()?))
            }
            Some(Tok::Box) => {
                self.i += 1;
                Ok(ModalFormula::boxed(self.unary()?))
            }
            _ => self.atom(),
        }
    }

    fn args(&mut self) -> Result<Vec<ModalFormula>> {
        self.expect(Tok::LParen, "`(`")?;
        let mut args = vec![self.level(0)?];
        while self.peek() == Some(&Tok::Comma) {
            self.i += 1;
            args.push(self.level(0)?);
        }
        self.expect(Tok::RParen, "`)` or `,`")?;
        Ok(args)
    }

    fn int_params(&mut self) -> Result<Vec<usize>> {
        self.expect(Tok::LParen, "`(`")?;
        let mut out = Vec::new();
        loop {
            match self.peek().cloned() {
                Some(Tok::Name(n)) if n.chars().all(|c| c.is_ascii_digit()) => {
                    out.push(n.parse().map_err(|_| Error::SyntaxError {
                        pos: self.pos(),
                        msg: "parameter out of range".into(),
                    })?);
                    self.i += 1;
                }
                _ => return self.err("expected an integer parameter"),
            }
            match self.peek() {
                Some(Tok::Comma) => self.i += 1,
                Some(Tok::RParen) => {
                    self.i += 1;
                    return Ok(out);
                }
                _ => return self.err("expected `,` or `)`"),
            }
        }
    }

    fn atom(&mut self) -> Result<ModalFormula> {
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.i += 1;
                let f = self.level(0)?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Some(Tok::Name(name)) => {
                let start = self.pos();
                self.i += 1;
                if self.peek() != Some(&Tok::LParen) {
                    if name.contains(':') || name.starts_with(|c: char| c.is_ascii_digit()) {
                        return Err(Error::SyntaxError {
                            pos: start,
                            msg: format!("`{name}` is not a variable name"),
                        });
                    }
                    return Ok(ModalFormula::Var(name));
                }
                match name.as_str() {
                    "dia" | "diamond" => {
                        let mut a = self.args()?;
                        if a.len() != 1 {
                            return Err(Error::SyntaxError { pos: start, msg: "`dia` takes one argument".into() });
                        }
                        return Ok(ModalFormula::diamond(a.remove(0)));
                    }
                    "box" => {
                        let mut a = self.args()?;
                        if a.len() != 1 {
                            return Err(Error::SyntaxError { pos: start, msg: "`box` takes one argument".into() });
                        }
                        return Ok(ModalFormula::boxed(a.remove(0)));
                    }
                    _ => {}
                }
                if let Some(d) = self.defs.iter().find(|d| d.name == name) {
                    let d = Arc::clone(d);
                    let args = self.args()?;
                    if args.len() != d.arity() {
                        return Err(Error::SyntaxError {
                            pos: start,
                            msg: format!("`{}` takes {} arguments, got {}", d.name, d.arity(), args.len()),
                        });
                    }
                    return Ok(ModalFormula::Defined(d, args));
                }
                let threshold_params = matches!(self.toks.get(self.i + 1), Some((_, Tok::Name(n))) if n.chars().all(|c| c.is_ascii_digit()));
                let c = if name == "threshold" || name == "t" && threshold_params {
                    let params = self.int_params()?;
                    let display = format!(
                        "threshold({})",
                        params.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
                    );
                    self.connective(&display, BoolFn::named("threshold", &params))?
                } else if name.contains(':') {
                    self.connective(&name, BoolFn::parse_literal(&name))?
                } else {
                    self.connective(&name, BoolFn::named(&name, &[]))?
                };
                let args = self.args()?;
                if args.len() != c.arity() {
                    return Err(Error::SyntaxError {
                        pos: start,
                        msg: format!("`{}` takes {} arguments, got {}", c.name, c.arity(), args.len()),
                    });
                }
                Ok(ModalFormula::Apply(c, args))
            }
            Some(_) => self.err("expected a variable, an application, a modal operator or `(`"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a modal formula. Connectives are resolved against `basis` when
/// given (and must be declared there), otherwise against the catalog.
/// Modal operators are written `◇`/`<>`/`dia(...)` and `□`/`[]`/`box(...)`
/// and bind like `¬`. Names in `defs` denote defined operators.
pub fn parse_modal(text: &str, basis: Option<&Basis>, defs: &[Arc<Definition>]) -> Result<ModalFormula> {
    let toks = tokenize(text)?;
    let mut p = ModalParser {
        toks,
        i: 0,
        end: text.len(),
        basis,
        defs,
    };
    let f = p.level(0)?;
    if p.i != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(f)
}

/// Parses a definition `name = body`; earlier definitions may be used in
/// the body.
pub fn parse_definition(text: &str, defs: &[Arc<Definition>]) -> Result<Arc<Definition>> {
    let (name, body) = text.split_once('=').ok_or_else(|| Error::SyntaxError {
        pos: 0,
        msg: "expected `name = body`".into(),
    })?;
    let name = name.trim();
    if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
        return Err(Error::SyntaxError {
            pos: 0,
            msg: format!("bad operator name `{name}`"),
        });
    }
    Ok(Definition::new(name, parse_modal(body, None, defs)?))
}

// ---------------------------------------------------------------------------
// Kripke models
// ---------------------------------------------------------------------------

/// A finite Kripke model with an optional distinguished point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KripkeModel {
    worlds: Vec<String>,
    index: HashMap<String, usize>,
    succ: Vec<Vec<usize>>,
    val: Vec<BTreeSet<String>>,
    point: Option<usize>,
}

/// A set of worlds as a bitset.
pub type WorldSet = Vec<u64>;

fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

impl KripkeModel {
    /// Builds a model from world names, edges and a valuation.
    pub fn new(
        worlds: Vec<String>,
        edges: &[(String, String)],
        val: &BTreeMap<String, BTreeSet<String>>,
        point: Option<&str>,
    ) -> Result<Self> {
        if worlds.is_empty() {
            return Err(Error::BadModel("a model needs at least one world".into()));
        }
        let mut index = HashMap::new();
        for (i, w) in worlds.iter().enumerate() {
            if index.insert(w.clone(), i).is_some() {
                return Err(Error::BadModel(format!("duplicate world `{w}`")));
            }
        }
        let lookup = |w: &str| index.get(w).copied().ok_or_else(|| Error::UnknownWorld(w.to_string()));
        let mut succ = vec![Vec::new(); worlds.len()];
        for (u, v) in edges {
            let (a, b) = (lookup(u)?, lookup(v)?);
            if !succ[a].contains(&b) {
                succ[a].push(b);
            }
        }
        succ.iter_mut().for_each(|s| s.sort_unstable());
        let mut vals = vec![BTreeSet::new(); worlds.len()];
        for (w, props) in val {
            vals[lookup(w)?] = props.clone();
        }
        let point = point.map(lookup).transpose()?;
        Ok(KripkeModel {
            worlds,
            index,
            succ,
            val: vals,
            point,
        })
    }

    /// Builds a model over worlds named `0..n` from index pairs.
    pub fn from_indices(n: usize, edges: &[(usize, usize)], val: Vec<BTreeSet<String>>) -> Result<Self> {
        if val.len() != n {
            return Err(Error::BadModel("valuation length differs from world count".into()));
        }
        let worlds: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let e: Vec<(String, String)> = edges
            .iter()
            .map(|&(a, b)| (a.to_string(), b.to_string()))
            .collect();
        let v: BTreeMap<String, BTreeSet<String>> =
            val.into_iter().enumerate().map(|(i, s)| (i.to_string(), s)).collect();
        KripkeModel::new(worlds, &e, &v, Some("0"))
    }

    /// Parses the JSON format
    /// `{"worlds":[..], "rel":[[u,v],..], "val":{"w":["p",..]}, "point":"w"}`.
    /// World names may be strings or numbers.
    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::BadModel(e.to_string()))?;
        KripkeModel::from_value(&v)
    }

    /// [`KripkeModel::from_json`] on an already parsed value.
    pub fn from_value(v: &Value) -> Result<Self> {
        let name = |x: &Value| -> Result<String> {
            match x {
                Value::String(s) => Ok(s.clone()),
                Value::Number(n) => Ok(n.to_string()),
                _ => Err(Error::BadModel(format!("bad world name {x}"))),
            }
        };
        let worlds = v
            .get("worlds")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::BadModel("missing `worlds` array".into()))?
            .iter()
            .map(name)
            .collect::<Result<Vec<_>>>()?;
        let mut edges = Vec::new();
        if let Some(rel) = v.get("rel") {
            for pair in rel.as_array().ok_or_else(|| Error::BadModel("`rel` must be an array".into()))? {
                let p = pair
                    .as_array()
                    .filter(|p| p.len() == 2)
                    .ok_or_else(|| Error::BadModel(format!("bad edge {pair}")))?;
                edges.push((name(&p[0])?, name(&p[1])?));
            }
        }
        let mut val = BTreeMap::new();
        if let Some(obj) = v.get("val") {
            let obj = obj.as_object().ok_or_else(|| Error::BadModel("`val` must be an object".into()))?;
            for (w, props) in obj {
                let set = props
                    .as_array()
                    .ok_or_else(|| Error::BadModel(format!("valuation of `{w}` must be an array")))?
                    .iter()
                    .map(|p| p.as_str().map(str::to_string).ok_or_else(|| Error::BadModel(format!("bad variable {p}"))))
                    .collect::<Result<BTreeSet<_>>>()?;
                val.insert(w.clone(), set);
            }
        }
        let point = match v.get("point") {
            None | Some(Value::Null) => None,
            Some(p) => Some(name(p)?),
        };
        KripkeModel::new(worlds, &edges, &val, point.as_deref())
    }

    /// The JSON value in the format accepted by [`KripkeModel::from_json`].
    pub fn to_value(&self) -> Value {
        let rel: Vec<Value> = self
            .edges()
            .into_iter()
            .map(|(a, b)| Value::from(vec![self.worlds[a].clone(), self.worlds[b].clone()]))
            .collect();
        let val: serde_json::Map<String, Value> = self
            .worlds
            .iter()
            .zip(&self.val)
            .map(|(w, s)| (w.clone(), Value::from(s.iter().cloned().collect::<Vec<_>>())))
            .collect();
        let mut m = serde_json::Map::new();
        m.insert("worlds".into(), Value::from(self.worlds.clone()));
        m.insert("rel".into(), Value::from(rel));
        m.insert("val".into(), Value::Object(val));
        if let Some(p) = self.point {
            m.insert("point".into(), Value::from(self.worlds[p].clone()));
        }
        Value::Object(m)
    }

    pub fn len(&self) -> usize {
        self.worlds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.worlds.is_empty()
    }

    pub fn worlds(&self) -> &[String] {
        &self.worlds
    }

    /// Index of a world by name.
    pub fn world(&self, name: &str) -> Result<usize> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownWorld(name.to_string()))
    }

    /// The distinguished point, if any.
    pub fn point(&self) -> Option<usize> {
        self.point
    }

    pub fn successors(&self, w: usize) -> &[usize] {
        &self.succ[w]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(a, s)| s.iter().map(move |&b| (a, b)))
            .collect()
    }

    pub fn valuation(&self, w: usize) -> &BTreeSet<String> {
        &self.val[w]
    }

    /// Returns a copy in which variable `x` is true exactly at `worlds`.
    pub fn revalue(&self, x: &str, worlds: &[bool]) -> Self {
        let mut m = self.clone();
        for (w, &b) in worlds.iter().enumerate() {
            if b {
                m.val[w].insert(x.to_string());
            } else {
                m.val[w].remove(x);
            }
        }
        m
    }

    fn has_edge(&self, a: usize, b: usize) -> bool {
        self.succ[a].binary_search(&b).is_ok()
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.len()).all(|w| self.has_edge(w, w))
    }

    pub fn is_irreflexive(&self) -> bool {
        (0..self.len()).all(|w| !self.has_edge(w, w))
    }

    pub fn is_serial(&self) -> bool {
        self.succ.iter().all(|s| !s.is_empty())
    }

    pub fn is_symmetric(&self) -> bool {
        self.edges().iter().all(|&(a, b)| self.has_edge(b, a))
    }

    pub fn is_transitive(&self) -> bool {
        self.edges()
            .iter()
            .all(|&(a, b)| self.succ[b].iter().all(|&c| self.has_edge(a, c)))
    }

    /// No cycles, self-loops included.
    pub fn is_acyclic(&self) -> bool {
        // Kahn's algorithm on the relation.
        let n = self.len();
        let mut indeg = vec![0usize; n];
        for &(_, b) in &self.edges() {
            indeg[b] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&w| indeg[w] == 0).collect();
        let mut seen = 0;
        while let Some(w) = stack.pop() {
            seen += 1;
            for &v in &self.succ[w] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    stack.push(v);
                }
            }
        }
        seen == n
    }

    // --- evaluation ---

    fn empty_set(&self) -> WorldSet {
        vec![0; words_for(self.len())]
    }

    fn full_set(&self) -> WorldSet {
        let n = self.len();
        let mut s = vec![!0u64; words_for(n)];
        let rem = n % 64;
        if rem != 0 {
            *s.last_mut().expect("nonempty") = (1u64 << rem) - 1;
        }
        s
    }

    fn var_set(&self, x: &str) -> WorldSet {
        let mut s = self.empty_set();
        for (w, props) in self.val.iter().enumerate() {
            if props.contains(x) {
                s[w / 64] |= 1 << (w % 64);
            }
        }
        s
    }

    fn diamond_set(&self, inner: &WorldSet) -> WorldSet {
        let mut s = self.empty_set();
        for (w, succ) in self.succ.iter().enumerate() {
            if succ.iter().any(|&v| inner[v / 64] >> (v % 64) & 1 == 1) {
                s[w / 64] |= 1 << (w % 64);
            }
        }
        s
    }

    fn box_set(&self, inner: &WorldSet) -> WorldSet {
        let mut s = self.empty_set();
        for (w, succ) in self.succ.iter().enumerate() {
            if succ.iter().all(|&v| inner[v / 64] >> (v % 64) & 1 == 1) {
                s[w / 64] |= 1 << (w % 64);
            }
        }
        s
    }

    /// The set of worlds where `f` holds. Variables missing from the
    /// valuation are false everywhere.
    pub fn extension(&self, f: &ModalFormula) -> WorldSet {
        self.ext(f, &|x: &str| self.var_set(x))
    }

    fn ext(&self, f: &ModalFormula, lookup: &dyn Fn(&str) -> WorldSet) -> WorldSet {
        match f {
            ModalFormula::Var(x) => lookup(x),
            ModalFormula::Apply(c, args) => {
                let exts: Vec<WorldSet> = args.iter().map(|a| self.ext(a, lookup)).collect();
                let full = self.full_set();
                (0..full.len())
                    .map(|i| {
                        let words: Vec<u64> = exts.iter().map(|e| e[i]).collect();
                        apply_words(&c.func, &words) & full[i]
                    })
                    .collect()
            }
            ModalFormula::Diamond(a) => self.diamond_set(&self.ext(a, lookup)),
            ModalFormula::Boxed(a) => self.box_set(&self.ext(a, lookup)),
            ModalFormula::Defined(d, args) => {
                let env: HashMap<&str, WorldSet> = d
                    .params
                    .iter()
                    .map(String::as_str)
                    .zip(args.iter().map(|a| self.ext(a, lookup)))
                    .collect();
                let empty = self.empty_set();
                self.ext(&d.body, &|x: &str| env.get(x).cloned().unwrap_or_else(|| empty.clone()))
            }
        }
    }

    /// Whether world `w` satisfies `f`.
    pub fn holds(&self, w: usize, f: &ModalFormula) -> bool {
        let e = self.extension(f);
        e[w / 64] >> (w % 64) & 1 == 1
    }
}

/// Model checking: does `f` hold at world `w` of `m`?
pub fn mc(m: &KripkeModel, w: &str, f: &ModalFormula) -> Result<bool> {
    let i = m.world(w)?;
    Ok(m.holds(i, f))
}

// ---------------------------------------------------------------------------
// Logics
// ---------------------------------------------------------------------------

/// The three types of normal modal logics relative to the one-point frames.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum MakinsonType {
    A,
    B,
    C,
}

impl fmt::Display for MakinsonType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// The catalog of modal logics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Logic {
    K,
    KD,
    T,
    K4,
    S4,
    S5,
    GL,
    /// `K ⊕ □⊥`: the logic of the irreflexive point.
    Verum,
    /// The logic of the reflexive point.
    Triv,
    /// Multi-modal `K`; used only by the classifier.
    KOmega,
}

impl Logic {
    /// The single-modality logics with Kripke semantics in this crate.
    pub const CATALOG: [Logic; 9] = [
        Logic::K,
        Logic::KD,
        Logic::T,
        Logic::K4,
        Logic::S4,
        Logic::S5,
        Logic::GL,
        Logic::Verum,
        Logic::Triv,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Logic::K => "K",
            Logic::KD => "KD",
            Logic::T => "T",
            Logic::K4 => "K4",
            Logic::S4 => "S4",
            Logic::S5 => "S5",
            Logic::GL => "GL",
            Logic::Verum => "Verum",
            Logic::Triv => "Triv",
            Logic::KOmega => "K_omega",
        }
    }

    /// Makinson type of a catalog logic.
    pub fn makinson_type(self) -> Result<MakinsonType> {
        match self {
            Logic::K | Logic::KD | Logic::T | Logic::K4 | Logic::S4 | Logic::S5 | Logic::Triv => {
                Ok(MakinsonType::A)
            }
            Logic::Verum => Ok(MakinsonType::B),
            Logic::GL => Ok(MakinsonType::C),
            Logic::KOmega => Err(Error::UnsupportedLogic(self.name().into())),
        }
    }

    /// Whether a finite model's frame belongs to the logic.
    pub fn frame_ok(self, m: &KripkeModel) -> Result<bool> {
        Ok(match self {
            Logic::K | Logic::KOmega => true,
            Logic::KD => m.is_serial(),
            Logic::T => m.is_reflexive(),
            Logic::K4 => m.is_transitive(),
            Logic::S4 => m.is_reflexive() && m.is_transitive(),
            Logic::S5 => m.is_reflexive() && m.is_transitive() && m.is_symmetric(),
            Logic::GL => m.is_transitive() && m.is_irreflexive() && m.is_acyclic(),
            Logic::Verum => m.edges().is_empty(),
            Logic::Triv => m.edges().iter().all(|&(a, b)| a == b) && m.is_reflexive(),
        })
    }

    /// Errors with `FrameViolation` unless the model's frame belongs to the logic.
    pub fn check_frame(self, m: &KripkeModel) -> Result<()> {
        if self.frame_ok(m)? {
            Ok(())
        } else {
            Err(Error::FrameViolation(self.name().into()))
        }
    }

    /// Catalog entry with the logic-specific closure facts.
    pub fn entry(self) -> Result<LogicEntry> {
        let overrides = match self {
            Logic::GL => vec![FactOverride {
                modal: ModalOps::BOTH,
                requires: "or",
                attains: "top",
                note: "top is attainable: box(x) | dia(box(x)) is a theorem of GL".into(),
            }],
            _ => Vec::new(),
        };
        Ok(LogicEntry {
            logic: self,
            makinson_type: self.makinson_type()?,
            overrides,
        })
    }
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Logic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let all = [
            Logic::K,
            Logic::KD,
            Logic::T,
            Logic::K4,
            Logic::S4,
            Logic::S5,
            Logic::GL,
            Logic::Verum,
            Logic::Triv,
        ];
        if let Some(l) = all.iter().find(|l| l.name().eq_ignore_ascii_case(t)) {
            return Ok(*l);
        }
        match t {
            "K_omega" | "K_w" | "Kω" | "K_ω" | "Komega" | "k_omega" => Ok(Logic::KOmega),
            _ => Err(Error::UnsupportedLogic(t.to_string())),
        }
    }
}

/// A logic-specific fact tightening the bounds of [`clos`]: with modal
/// operators `modal` and the connective `requires` in the clone, the
/// constant `attains` becomes expressible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactOverride {
    pub modal: ModalOps,
    pub requires: &'static str,
    pub attains: &'static str,
    pub note: String,
}

/// A catalog entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicEntry {
    pub logic: Logic,
    pub makinson_type: MakinsonType,
    pub overrides: Vec<FactOverride>,
}

// ---------------------------------------------------------------------------
// Simple fragments
// ---------------------------------------------------------------------------

/// A simple modal fragment: modal operators plus a propositional basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleFragment {
    pub modal: ModalOps,
    pub basis: Basis,
}

impl SimpleFragment {
    pub fn new(modal: ModalOps, basis: Basis) -> Self {
        SimpleFragment { modal, basis }
    }
}

/// The Boolean clone expressible in a simple fragment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Clos {
    Exact(NamedClone),
    Interval {
        lower: NamedClone,
        upper: NamedClone,
        /// Constants known to be attainable despite the interval.
        attainable: Vec<&'static str>,
        notes: Vec<String>,
    },
}

impl Clos {
    /// The largest clone known to be contained in the closure.
    pub fn effective_lower(&self, cfg: &Config) -> Result<NamedClone> {
        match self {
            Clos::Exact(c) => Ok(*c),
            Clos::Interval { lower, attainable, .. } => {
                let mut c = *lower;
                for a in attainable {
                    c = join_with(c, constant_clone(a), cfg)?;
                }
                Ok(c)
            }
        }
    }

    /// The smallest clone known to contain the closure.
    pub fn upper(&self) -> NamedClone {
        match self {
            Clos::Exact(c) => *c,
            Clos::Interval { upper, .. } => *upper,
        }
    }
}

impl Serialize for Clos {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(None)?;
        match self {
            Clos::Exact(c) => m.serialize_entry("exact", &c.to_string())?,
            Clos::Interval {
                lower,
                upper,
                attainable,
                notes,
            } => {
                m.serialize_entry("interval", &[lower.to_string(), upper.to_string()])?;
                if !attainable.is_empty() {
                    m.serialize_entry("attainable", attainable)?;
                }
                if !notes.is_empty() {
                    m.serialize_entry("notes", notes)?;
                }
            }
        }
        m.end()
    }
}

fn constant_clone(name: &str) -> NamedClone {
    match name {
        "top" => NamedClone::plain(Family::I1),
        "bot" => NamedClone::plain(Family::I0),
        _ => NamedClone::plain(Family::I),
    }
}

/// The constants that the modal operators contribute on the irreflexive point.
fn constants_for(m: ModalOps) -> Option<NamedClone> {
    match (m.diamond, m.boxed) {
        (false, false) => None,
        (true, false) => Some(NamedClone::plain(Family::I0)),
        (false, true) => Some(NamedClone::plain(Family::I1)),
        (true, true) => Some(NamedClone::plain(Family::I)),
    }
}

/// The Boolean clone of the propositional formulas expressible in the simple
/// fragment `M ∪ C` over `logic`.
pub fn clos(logic: Logic, m: ModalOps, c: NamedClone) -> Result<Clos> {
    clos_with(logic, m, c, &Config::default())
}

/// [`clos`] with explicit limits.
pub fn clos_with(logic: Logic, m: ModalOps, c: NamedClone, cfg: &Config) -> Result<Clos> {
    let entry = logic.entry()?;
    base_of_with(c, cfg)?; // checks the degree cap
    let raised = match constants_for(m) {
        Some(k) => join_with(c, k, cfg)?,
        None => c,
    };
    match entry.makinson_type {
        MakinsonType::A => Ok(Clos::Exact(c)),
        MakinsonType::B => Ok(Clos::Exact(raised)),
        MakinsonType::C => {
            if raised == c {
                return Ok(Clos::Exact(c));
            }
            let mut attainable = Vec::new();
            let mut notes = Vec::new();
            let base = base_of_with(c, cfg)?;
            for o in &entry.overrides {
                if o.modal == m && member_with(&BoolFn::named(o.requires, &[])?, &base, cfg)? {
                    attainable.push(o.attains);
                    notes.push(o.note.clone());
                }
            }
            Ok(Clos::Interval {
                lower: c,
                upper: raised,
                attainable,
                notes,
            })
        }
    }
}

/// `F1 ⪯ F2` over `logic` for fragments with the same modal operators.
pub fn simple_leq(f1: &SimpleFragment, f2: &SimpleFragment, logic: Logic) -> Result<bool> {
    simple_leq_with(f1, f2, logic, &Config::default())
}

/// [`simple_leq`] with explicit limits.
pub fn simple_leq_with(f1: &SimpleFragment, f2: &SimpleFragment, logic: Logic, cfg: &Config) -> Result<bool> {
    if f1.modal != f2.modal {
        return Err(Error::ModalSetMismatch);
    }
    if logic.makinson_type()? == MakinsonType::C {
        return Err(Error::TypeCUnsupported(logic.name().into()));
    }
    let c1 = clos_with(logic, f1.modal, identify_with(&f1.basis, cfg)?, cfg)?;
    let c2 = clos_with(logic, f2.modal, identify_with(&f2.basis, cfg)?, cfg)?;
    contains_with(c2.upper(), c1.upper(), cfg)
}

/// Three-valued answer for expressive completeness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Completeness {
    Yes,
    No,
    Unknown,
}

/// Whether the simple fragment is expressively complete over `logic`.
pub fn simple_complete(f: &SimpleFragment, logic: Logic) -> Result<Completeness> {
    simple_complete_with(f, logic, &Config::default())
}

/// [`simple_complete`] with explicit limits.
pub fn simple_complete_with(f: &SimpleFragment, logic: Logic, cfg: &Config) -> Result<Completeness> {
    let c = identify_with(&f.basis, cfg)?;
    let bf = NamedClone::plain(Family::BF);
    logic.makinson_type()?;
    if f.modal.is_empty() {
        // Without modal operators only logics in which ◇x is equivalent to a
        // propositional formula can be complete: the reflexive point (◇x ≡ x)
        // and the irreflexive point (◇x ≡ ⊥).
        let collapses = matches!(logic, Logic::Triv | Logic::Verum);
        return Ok(if collapses && c == bf {
            Completeness::Yes
        } else {
            Completeness::No
        });
    }
    let cl = clos_with(logic, f.modal, c, cfg)?;
    if cl.effective_lower(cfg)? == bf {
        Ok(Completeness::Yes)
    } else if cl.upper() != bf {
        Ok(Completeness::No)
    } else {
        Ok(Completeness::Unknown)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(text: &str) -> ModalFormula {
        parse_modal(text, None, &[]).unwrap()
    }

    fn single(reflexive: bool, props: &[&str]) -> KripkeModel {
        let edges = if reflexive { vec![(0, 0)] } else { vec![] };
        KripkeModel::from_indices(1, &edges, vec![props.iter().map(|s| s.to_string()).collect()]).unwrap()
    }

    #[test]
    fn substitution_examples() {
        let f = pm("□x ∧ ◇x");
        let sigma: HashMap<String, ModalFormula> = [("x".to_string(), pm("◇(y ∧ z)"))].into();
        assert_eq!(substitute(&f, &sigma), pm("□◇(y ∧ z) ∧ ◇◇(y ∧ z)"));
        assert_eq!(substitute(&f, &HashMap::new()), f);
        let g = pm("x ∨ w");
        let sigma: HashMap<String, ModalFormula> = [("x".to_string(), pm("bot(x)"))].into();
        assert_eq!(substitute(&g, &sigma), pm("bot(x) ∨ w"));
    }

    #[test]
    fn expansion_examples() {
        let conj = Definition::new("conj", pm("x1 ∧ x2"));
        let dia = Definition::new("d", pm("◇x"));
        let inner = ModalFormula::defined(dia, vec![ModalFormula::var("q")]).unwrap();
        let f = ModalFormula::defined(conj, vec![ModalFormula::var("p"), inner]).unwrap();
        assert_eq!(expand(&f), pm("p ∧ ◇q"));
        let g = ModalFormula::defined(contingency(), vec![ModalFormula::var("p")]).unwrap();
        assert_eq!(expand(&g), pm("◇p ∧ ◇¬p"));
        let core = pm("□(p → ◇q)");
        assert_eq!(expand(&core), core);
    }

    #[test]
    fn model_checking_examples() {
        let chain = KripkeModel::from_indices(2, &[(0, 1)], vec![BTreeSet::new(), ["p".to_string()].into()]).unwrap();
        assert!(mc(&chain, "0", &pm("◇p")).unwrap());
        assert!(mc(&single(false, &[]), "0", &pm("□bot(p)")).unwrap());
        assert!(!mc(&single(true, &["p"]), "0", &pm("◇p ∧ ◇¬p")).unwrap());
        assert!(matches!(mc(&chain, "9", &pm("p")), Err(Error::UnknownWorld(_))));
    }

    #[test]
    fn measure_examples() {
        assert_eq!(measure_modal(&gamma_chain(3)), ModalMeasure { tree: 4, dag: 4 });
        assert_eq!(measure_modal(&expand(&gamma_chain(3))).tree, 36);
        assert_eq!(measure_modal(&pm("p")), ModalMeasure { tree: 1, dag: 1 });
    }

    #[test]
    fn makinson_types() {
        assert_eq!(Logic::K.makinson_type().unwrap(), MakinsonType::A);
        assert_eq!(Logic::GL.makinson_type().unwrap(), MakinsonType::C);
        assert_eq!(Logic::Verum.makinson_type().unwrap(), MakinsonType::B);
        assert!(matches!("S7".parse::<Logic>(), Err(Error::UnsupportedLogic(_))));
    }

    #[test]
    fn clos_examples() {
        let p = NamedClone::plain;
        assert_eq!(clos(Logic::K, ModalOps::BOTH, p(Family::V2)).unwrap(), Clos::Exact(p(Family::V2)));
        assert_eq!(
            clos(Logic::Verum, ModalOps::DIAMOND, p(Family::E2)).unwrap(),
            Clos::Exact(join(p(Family::E2), p(Family::I0)))
        );
        match clos(Logic::GL, ModalOps::BOTH, p(Family::V2)).unwrap() {
            Clos::Interval { lower, upper, attainable, .. } => {
                assert_eq!(lower, p(Family::V2));
                assert_eq!(upper, p(Family::V));
                assert_eq!(attainable, vec!["top"]);
            }
            other => panic!("expected an interval, got {other:?}"),
        }
    }

    fn join(a: NamedClone, b: NamedClone) -> NamedClone {
        crate::clones::join(a, b).unwrap()
    }

    #[test]
    fn simple_leq_examples() {
        let frag = |m: ModalOps, names: &[&str]| SimpleFragment::new(m, Basis::from_names(names).unwrap());
        let d = ModalOps::DIAMOND;
        assert!(simple_leq(&frag(d, &["and"]), &frag(d, &["and", "or"]), Logic::K).unwrap());
        assert!(!simple_leq(&frag(d, &["or", "top"]), &frag(d, &["or"]), Logic::K).unwrap());
        assert!(simple_leq(&frag(d, &["or", "bot"]), &frag(d, &["or"]), Logic::Verum).unwrap());
        assert_eq!(
            simple_leq(&frag(d, &["or"]), &frag(d, &["or"]), Logic::GL),
            Err(Error::TypeCUnsupported("GL".into()))
        );
        assert_eq!(
            simple_leq(&frag(d, &["or"]), &frag(ModalOps::BOX, &["or"]), Logic::K),
            Err(Error::ModalSetMismatch)
        );
    }

    #[test]
    fn completeness_examples() {
        let frag = |m: ModalOps, names: &[&str]| SimpleFragment::new(m, Basis::from_names(names).unwrap());
        assert_eq!(simple_complete(&frag(ModalOps::DIAMOND, &["and", "not"]), Logic::K).unwrap(), Completeness::Yes);
        assert_eq!(
            simple_complete(&frag(ModalOps::BOTH, &["and", "or", "top", "bot"]), Logic::K).unwrap(),
            Completeness::No
        );
        assert_eq!(simple_complete(&frag(ModalOps::NONE, &["and", "not"]), Logic::K).unwrap(), Completeness::No);
    }

    #[test]
    fn frame_checks() {
        let cyc = KripkeModel::from_indices(2, &[(0, 1), (1, 0)], vec![BTreeSet::new(); 2]).unwrap();
        assert!(Logic::KD.frame_ok(&cyc).unwrap());
        assert!(!Logic::GL.frame_ok(&cyc).unwrap());
        assert!(!Logic::T.frame_ok(&cyc).unwrap());
        let chain = KripkeModel::from_indices(3, &[(0, 1), (1, 2), (0, 2)], vec![BTreeSet::new(); 3]).unwrap();
        assert!(Logic::GL.frame_ok(&chain).unwrap());
        assert!(Logic::Triv.frame_ok(&single(true, &[])).unwrap());
        assert!(Logic::Verum.frame_ok(&single(false, &[])).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"worlds":["a","b",3],"rel":[["a","b"],["b",3]],"val":{"b":["p"]},"point":"a"}"#;
        let m = KripkeModel::from_json(text).unwrap();
        assert_eq!(m.len(), 3);
        assert!(m.holds(m.point().unwrap(), &pm("◇p")));
        let again = KripkeModel::from_value(&m.to_value()).unwrap();
        assert_eq!(again, m);
        assert!(matches!(KripkeModel::from_json(r#"{"worlds":["a"],"rel":[["a","z"]]}"#), Err(Error::UnknownWorld(_))));
    }
}
