//! Propositional formulas over a fixed basis of connectives.
//!
//! Formulas are parsed against a [`Basis`]; every connective used must be
//! declared in it. Evaluation is bit-parallel: 64 assignments are evaluated at
//! once by packing each variable into a `u64` word, which makes truth-table
//! extraction a single pass for up to six variables and keeps the brute-force
//! fallbacks fast.
//!
//! Text syntax: prefix application `name(arg, ...)` for any declared
//! connective (catalog names, `threshold(n,m)`, or `arity:hex` literals), plus
//! infix sugar. Binding strength, tightest first: `¬` (`!`, `~`), `∧` (`&`),
//! `∨` (`|`), then `⊕` (`^`) and `↛` (`-/>`), then `→` (`->`) and `↔`
//! (`<->`). Infix operators associate to the left. The printer always emits
//! prefix form, so printing and re-parsing is the identity.
//!
//! Constants are unary connectives (`top(p)`, `bot(p)`); there are no
//! nullary symbols.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::boolfn::{projection_table, BoolFn, Connective};
use crate::clones::{member_with, Basis, Invariants};
use crate::config::Config;
use crate::error::{Error, Result};

/// A truth assignment: variable name to bit.
pub type Assignment = BTreeMap<String, bool>;

/// A propositional formula.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(String),
    Apply(Connective, Vec<Formula>),
}

impl Formula {
    /// A variable.
    pub fn var(name: impl Into<String>) -> Self {
        Formula::Var(name.into())
    }

    /// An application; the argument count must match the arity.
    pub fn apply(c: Connective, args: Vec<Formula>) -> Result<Self> {
        if c.arity() != args.len() {
            return Err(Error::ArityMismatch {
                expected: c.arity(),
                got: args.len(),
            });
        }
        Ok(Formula::Apply(c, args))
    }

    /// Application of a catalog connective by name.
    pub fn app(name: &str, args: Vec<Formula>) -> Result<Self> {
        Formula::apply(Connective::named(name)?, args)
    }

    /// The variables of the formula in sorted order.
    pub fn vars(&self) -> Vec<String> {
        let mut set = BTreeSet::new();
        self.collect_vars(&mut set);
        set.into_iter().collect()
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Var(v) => {
                out.insert(v.clone());
            }
            Formula::Apply(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    /// The distinct connectives used, as a basis.
    pub fn connectives(&self) -> Basis {
        let mut b = Basis::new();
        self.collect_connectives(&mut b);
        b
    }

    fn collect_connectives(&self, out: &mut Basis) {
        if let Formula::Apply(c, args) = self {
            out.push(c.clone());
            args.iter().for_each(|a| a.collect_connectives(out));
        }
    }

    /// Checks that every connective is declared in `b`.
    pub fn check_basis(&self, b: &Basis) -> Result<()> {
        match self {
            Formula::Var(_) => Ok(()),
            Formula::Apply(c, args) => {
                if !b.contains_fn(&c.func) {
                    return Err(Error::UndeclaredConnective(c.name.clone()));
                }
                args.iter().try_for_each(|a| a.check_basis(b))
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Var(v) => f.write_str(v),
            Formula::Apply(c, args) => {
                write!(f, "{}(", c.name)?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Tok {
    Name(String),
    LParen,
    RParen,
    Comma,
    Not,
    Diamond,
    Box,
    Infix(&'static str),
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let starts = |i: usize, pat: &str| {
        let rest: String = chars[i..].iter().map(|&(_, c)| c).take(pat.chars().count()).collect();
        rest == pat
    };
    while i < chars.len() {
        let (pos, ch) = chars[i];
        if ch.is_whitespace() {
            i += 1;
            continue;
        }
        let ascii_ops: [(&str, Tok); 7] = [
            ("<->", Tok::Infix("eq")),
            ("<>", Tok::Diamond),
            ("[]", Tok::Box),
            ("-/>", Tok::Infix("nimp")),
            ("->", Tok::Infix("imp")),
            ("&", Tok::Infix("and")),
            ("|", Tok::Infix("or")),
        ];
        if let Some((pat, tok)) = ascii_ops.iter().find(|(p, _)| starts(i, p)) {
            out.push((pos, tok.clone()));
            i += pat.chars().count();
            continue;
        }
        let tok = match ch {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            '¬' | '!' | '~' => Some(Tok::Not),
            '∧' => Some(Tok::Infix("and")),
            '∨' => Some(Tok::Infix("or")),
            '⊕' | '^' => Some(Tok::Infix("xor")),
            '→' => Some(Tok::Infix("imp")),
            '↔' => Some(Tok::Infix("eq")),
            '↛' => Some(Tok::Infix("nimp")),
            '◇' => Some(Tok::Diamond),
            '□' => Some(Tok::Box),
            _ => None,
        };
        if let Some(t) = tok {
            out.push((pos, t));
            i += 1;
            continue;
        }
        if ch.is_alphanumeric() || ch == '_' {
            let mut name = String::new();
            while i < chars.len() {
                let c = chars[i].1;
                if c.is_alphanumeric() || c == '_' || c == ':' {
                    name.push(c);
                    i += 1;
                } else {
                    break;
                }
            }
            out.push((pos, Tok::Name(name)));
            continue;
        }
        return Err(Error::SyntaxError {
            pos,
            msg: format!("unexpected character `{ch}`"),
        });
    }
    Ok(out)
}

/// Infix operators grouped by binding strength, loosest first.
pub(crate) const INFIX_LEVELS: [&[&str]; 4] = [&["imp", "eq"], &["xor", "nimp"], &["or"], &["and"]];

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
    basis: &'a Basis,
}

impl Parser<'_> {
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

    fn resolve(&self, display: &str, f: Result<BoolFn>) -> Result<Connective> {
        if let Some(c) = self.basis.by_name(display) {
            return Ok(c.clone());
        }
        match f {
            Ok(func) => self
                .basis
                .connectives()
                .iter()
                .find(|c| c.func == func)
                .cloned()
                .ok_or_else(|| Error::UndeclaredConnective(display.to_string())),
            Err(_) => Err(Error::UndeclaredConnective(display.to_string())),
        }
    }

    fn level(&mut self, lvl: usize) -> Result<Formula> {
        if lvl == INFIX_LEVELS.len() {
            return self.unary();
        }
        let mut left = self.level(lvl + 1)?;
        while let Some(Tok::Infix(op)) = self.peek() {
            let op = *op;
            if !INFIX_LEVELS[lvl].contains(&op) {
                break;
            }
            let c = self.resolve(op, BoolFn::named(op, &[]))?;
            self.i += 1;
            let right = self.level(lvl + 1)?;
            left = Formula::Apply(c, vec![left, right]);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.peek() == Some(&Tok::Not) {
            let c = self.resolve("not", BoolFn::named("not", &[]))?;
            self.i += 1;
            let arg = self.unary()?;
            return Ok(Formula::Apply(c, vec![arg]));
        }
        self.atom()
    }

    fn args(&mut self) -> Result<Vec<Formula>> {
        self.expect(Tok::LParen, "`(`")?;
        let mut args = vec![self.level(0)?];
        while self.peek() == Some(&Tok::Comma) {
            self.i += 1;
            args.push(self.level(0)?);
        }
        self.expect(Tok::RParen, "`)` or `,`")?;
        Ok(args)
    }

    fn atom(&mut self) -> Result<Formula> {
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
                    return Ok(Formula::Var(name));
                }
                let c = if name == "threshold" || name == "t" && self.is_threshold_params() {
                    let params = self.int_params()?;
                    let display = format!("threshold({})", params.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","));
                    self.resolve(&display, BoolFn::named("threshold", &params))?
                } else if name.contains(':') {
                    self.resolve(&name, BoolFn::parse_literal(&name))?
                } else {
                    self.resolve(&name, BoolFn::named(&name, &[]))?
                };
                let args = self.args()?;
                if args.len() != c.arity() {
                    return Err(Error::SyntaxError {
                        pos: start,
                        msg: format!("`{}` takes {} arguments, got {}", c.name, c.arity(), args.len()),
                    });
                }
                Ok(Formula::Apply(c, args))
            }
            Some(Tok::Diamond) | Some(Tok::Box) => {
                self.err("modal operators are not allowed in propositional formulas")
            }
            Some(_) => self.err("expected a variable, an application or `(`"),
            None => self.err("unexpected end of input"),
        }
    }

    /// `t(...)` is a threshold only when followed by integer parameters and
    /// then an argument list.
    fn is_threshold_params(&self) -> bool {
        matches!(self.toks.get(self.i + 1), Some((_, Tok::Name(n))) if n.chars().all(|c| c.is_ascii_digit()))
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
}

/// Parses `text` as a formula whose connectives must all be declared in `b`.
pub fn parse(text: &str, b: &Basis) -> Result<Formula> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        i: 0,
        end: text.len(),
        basis: b,
    };
    let f = p.level(0)?;
    if p.i != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(f)
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

/// A formula compiled to postfix form with variables numbered by position in
/// a variable list. Evaluation works on 64 assignments at once.
#[derive(Debug, Clone)]
pub struct Compiled {
    ops: Vec<Op>,
    nvars: usize,
}

#[derive(Debug, Clone)]
enum Op {
    Var(usize),
    Apply(BoolFn),
}

/// Applies `g` bitwise to argument words.
pub fn apply_words(g: &BoolFn, args: &[u64]) -> u64 {
    let m = g.arity();
    let mut out = 0u64;
    for row in 0..(1usize << m) {
        if !g.value(row) {
            continue;
        }
        let mut w = !0u64;
        for (j, a) in args.iter().enumerate() {
            w &= if row >> j & 1 == 1 { *a } else { !*a };
        }
        out |= w;
    }
    out
}

impl Compiled {
    /// Compiles `f` against the ordered variable list `vars`.
    pub fn new(f: &Formula, vars: &[String]) -> Result<Self> {
        let index: HashMap<&str, usize> = vars.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut ops = Vec::new();
        fn go(f: &Formula, index: &HashMap<&str, usize>, ops: &mut Vec<Op>) -> Result<()> {
            match f {
                Formula::Var(v) => {
                    let i = index
                        .get(v.as_str())
                        .ok_or_else(|| Error::UnboundVariable(v.clone()))?;
                    ops.push(Op::Var(*i));
                }
                Formula::Apply(c, args) => {
                    for a in args {
                        go(a, index, ops)?;
                    }
                    ops.push(Op::Apply(c.func));
                }
            }
            Ok(())
        }
        go(f, &index, &mut ops)?;
        Ok(Compiled {
            ops,
            nvars: vars.len(),
        })
    }

    /// Evaluates on 64 assignments at once; `words[i]` holds variable `i`.
    pub fn eval_words(&self, words: &[u64]) -> u64 {
        let mut stack: Vec<u64> = Vec::with_capacity(16);
        for op in &self.ops {
            match op {
                Op::Var(i) => stack.push(words[*i]),
                Op::Apply(g) => {
                    let m = g.arity();
                    let at = stack.len() - m;
                    let r = apply_words(g, &stack[at..]);
                    stack.truncate(at);
                    stack.push(r);
                }
            }
        }
        stack.pop().expect("well-formed program")
    }

    /// Evaluates at one assignment given as a bit mask (bit `i` = variable `i`).
    pub fn eval_mask(&self, mask: u64) -> bool {
        let words: Vec<u64> = (0..self.nvars)
            .map(|i| if mask >> i & 1 == 1 { !0 } else { 0 })
            .collect();
        self.eval_words(&words) & 1 == 1
    }

    /// Calls `visit(row)` for every satisfying row in increasing order until
    /// it returns `false`. Rows index assignments with variable `i` at bit `i`.
    pub fn for_each_model(&self, mut visit: impl FnMut(u64) -> bool) {
        let n = self.nvars;
        let low = n.min(6);
        let rows_per_block = 1u64 << low;
        let blocks = 1u64 << (n - low);
        let block_mask = if low == 6 { !0 } else { (1u64 << rows_per_block) - 1 };
        let mut words = vec![0u64; n];
        for (i, w) in words.iter_mut().enumerate().take(low) {
            *w = projection_table(6, i);
        }
        for block in 0..blocks {
            for i in low..n {
                words[i] = if block >> (i - low) & 1 == 1 { !0 } else { 0 };
            }
            let mut r = self.eval_words(&words) & block_mask;
            while r != 0 {
                let bit = r.trailing_zeros() as u64;
                if !visit(block * rows_per_block + bit) {
                    return;
                }
                r &= r - 1;
            }
        }
    }

    /// Number of satisfying rows.
    pub fn count(&self) -> u128 {
        let n = self.nvars;
        let low = n.min(6);
        let rows_per_block = 1u64 << low;
        let blocks = 1u64 << (n - low);
        let block_mask = if low == 6 { !0 } else { (1u64 << rows_per_block) - 1 };
        let mut words = vec![0u64; n];
        for (i, w) in words.iter_mut().enumerate().take(low) {
            *w = projection_table(6, i);
        }
        let mut total = 0u128;
        for block in 0..blocks {
            for i in low..n {
                words[i] = if block >> (i - low) & 1 == 1 { !0 } else { 0 };
            }
            total += (self.eval_words(&words) & block_mask).count_ones() as u128;
        }
        total
    }
}

/// The semantic value of `f` under `v`.
pub fn evaluate(f: &Formula, v: &Assignment) -> Result<bool> {
    match f {
        Formula::Var(x) => v.get(x).copied().ok_or_else(|| Error::UnboundVariable(x.clone())),
        Formula::Apply(c, args) => {
            let vals = args.iter().map(|a| evaluate(a, v)).collect::<Result<Vec<bool>>>()?;
            c.func.eval(&vals)
        }
    }
}

/// Tree and DAG size of a formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Measure {
    pub tree: usize,
    pub dag: usize,
}

/// Tree size (node count) and DAG size (distinct subformulas).
pub fn measure(f: &Formula) -> Measure {
    fn go<'a>(f: &'a Formula, seen: &mut HashSet<&'a Formula>) -> usize {
        seen.insert(f);
        match f {
            Formula::Var(_) => 1,
            Formula::Apply(_, args) => 1 + args.iter().map(|a| go(a, seen)).sum::<usize>(),
        }
    }
    let mut seen = HashSet::new();
    let tree = go(f, &mut seen);
    Measure {
        tree,
        dag: seen.len(),
    }
}

/// The `n`-th formula of the self-composed xor chain: `χ(p,p)` for `n = 1`
/// and `χ(φ,φ)` with `φ` the previous formula afterwards.
pub fn xor_chain(n: usize) -> Formula {
    let xor = Connective::named("xor").expect("catalog");
    let mut f = Formula::Apply(xor.clone(), vec![Formula::var("p"), Formula::var("p")]);
    for _ in 1..n {
        f = Formula::Apply(xor.clone(), vec![f.clone(), f]);
    }
    f
}

/// The Boolean function of `f` over the ordered variable list `props`
/// (variable `props[i]` is bit `i` of the row index).
pub fn truth_table(f: &Formula, props: &[String]) -> Result<BoolFn> {
    truth_table_with(f, props, &Config::default())
}

/// [`truth_table`] with explicit limits.
pub fn truth_table_with(f: &Formula, props: &[String], cfg: &Config) -> Result<BoolFn> {
    if props.is_empty() || props.len() > cfg.arity_cap {
        return Err(Error::ArityOutOfRange {
            arity: props.len(),
            cap: cfg.arity_cap,
        });
    }
    let n = props.len();
    let prog = Compiled::new(f, props)?;
    let words: Vec<u64> = (0..n).map(|i| projection_table(n, i)).collect();
    BoolFn::from_table(n, prog.eval_words(&words) & crate::boolfn::row_mask(n))
}

/// Whether `f` is equivalent to some formula over `o`.
pub fn expressible(f: &Formula, o: &Basis) -> Result<bool> {
    expressible_with(f, o, &Config::default())
}

/// [`expressible`] with explicit limits.
pub fn expressible_with(f: &Formula, o: &Basis, cfg: &Config) -> Result<bool> {
    let table = truth_table_with(f, &f.vars(), cfg)?;
    member_with(&table, o, cfg)
}

// ---------------------------------------------------------------------------
// Satisfiability and counting
// ---------------------------------------------------------------------------

/// Outcome of [`solve_sat`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "witness", rename_all = "lowercase")]
pub enum SatStatus {
    Satisfiable(Assignment),
    Unsatisfiable,
}

/// A satisfiability verdict with the tag of the algorithm that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatResult {
    pub status: SatStatus,
    pub method: &'static str,
}

impl SatResult {
    pub fn is_sat(&self) -> bool {
        matches!(self.status, SatStatus::Satisfiable(_))
    }

    pub fn witness(&self) -> Option<&Assignment> {
        match &self.status {
            SatStatus::Satisfiable(a) => Some(a),
            SatStatus::Unsatisfiable => None,
        }
    }
}

impl Serialize for SatResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(None)?;
        match &self.status {
            SatStatus::Satisfiable(w) => {
                m.serialize_entry("status", "satisfiable")?;
                m.serialize_entry("witness", w)?;
            }
            SatStatus::Unsatisfiable => m.serialize_entry("status", "unsatisfiable")?,
        }
        m.serialize_entry("method", self.method)?;
        m.end()
    }
}

fn assignment(vars: &[String], mask: u64) -> Assignment {
    vars.iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), mask >> i & 1 == 1))
        .collect()
}

fn all_ones(n: usize) -> u64 {
    if n >= 64 {
        !0
    } else {
        (1u64 << n) - 1
    }
}

/// Evaluation at masks for formulas with more than 64 variables is not
/// supported; the variable guard below keeps callers within range.
fn guard_vars(n: usize) -> Result<()> {
    if n > 63 {
        return Err(Error::TooManyVariables { count: n, cap: 63 });
    }
    Ok(())
}

/// Affine normal form `c0 ⊕ ⊕ cᵢ·xᵢ` recovered from `n + 1` evaluations.
/// Only meaningful when the formula is affine.
fn affine_coefficients(prog: &Compiled, n: usize) -> (bool, u64) {
    let c0 = prog.eval_mask(0);
    let mut coeffs = 0u64;
    for i in 0..n {
        if prog.eval_mask(1 << i) != c0 {
            coeffs |= 1 << i;
        }
    }
    (c0, coeffs)
}

/// Decides satisfiability of `f`, a formula over `b`, with the specialised
/// algorithm for the clone generated by `b` (priority affine, self-dual,
/// monotone, ⊤-reproducing) or exhaustive search otherwise.
pub fn solve_sat(f: &Formula, b: &Basis) -> Result<SatResult> {
    solve_sat_with(f, b, &Config::default())
}

/// [`solve_sat`] with explicit limits.
pub fn solve_sat_with(f: &Formula, b: &Basis, cfg: &Config) -> Result<SatResult> {
    f.check_basis(b)?;
    let vars = f.vars();
    let n = vars.len();
    guard_vars(n)?;
    let prog = Compiled::new(f, &vars)?;
    let inv = Invariants::of_basis(b);
    let sat = |mask: u64, method| SatResult {
        status: SatStatus::Satisfiable(assignment(&vars, mask)),
        method,
    };
    let unsat = |method| SatResult {
        status: SatStatus::Unsatisfiable,
        method,
    };
    if inv.linear {
        let (c0, coeffs) = affine_coefficients(&prog, n);
        return Ok(if coeffs != 0 {
            let i = coeffs.trailing_zeros();
            sat(if c0 { 0 } else { 1 << i }, "affine")
        } else if c0 {
            sat(0, "affine")
        } else {
            unsat("affine")
        });
    }
    if inv.self_dual {
        let top = all_ones(n);
        let mask = if prog.eval_mask(top) { top } else { 0 };
        if !prog.eval_mask(mask) {
            return Err(Error::InternalInconsistency(
                "self-dual formula false at both constant assignments".into(),
            ));
        }
        return Ok(sat(mask, "self-dual"));
    }
    if inv.monotone {
        let top = all_ones(n);
        return Ok(if prog.eval_mask(top) {
            sat(top, "monotone")
        } else {
            unsat("monotone")
        });
    }
    if inv.r1 {
        return Ok(sat(all_ones(n), "top-reproducing"));
    }
    if n > cfg.brute_var_cap {
        return Err(Error::TooManyVariables {
            count: n,
            cap: cfg.brute_var_cap,
        });
    }
    let mut found = None;
    prog.for_each_model(|row| {
        found = Some(row);
        false
    });
    Ok(match found {
        Some(row) => sat(row, "brute"),
        None => unsat("brute"),
    })
}

/// Exhaustive satisfiability, independent of the basis.
pub fn solve_sat_brute(f: &Formula, cfg: &Config) -> Result<SatResult> {
    let vars = f.vars();
    if vars.len() > cfg.brute_var_cap {
        return Err(Error::TooManyVariables {
            count: vars.len(),
            cap: cfg.brute_var_cap,
        });
    }
    let prog = Compiled::new(f, &vars)?;
    let mut found = None;
    prog.for_each_model(|row| {
        found = Some(row);
        false
    });
    Ok(match found {
        Some(row) => SatResult {
            status: SatStatus::Satisfiable(assignment(&vars, row)),
            method: "brute",
        },
        None => SatResult {
            status: SatStatus::Unsatisfiable,
            method: "brute",
        },
    })
}

/// Number of models of `f` over the declared variables `props`.
pub fn count_models(f: &Formula, b: &Basis, props: &[String]) -> Result<u128> {
    Ok(count_models_traced(f, b, props, &Config::default())?.0)
}

fn pow2(k: usize) -> u128 {
    1u128 << k
}

/// [`count_models`] returning also the method tag (`conjunctive`,
/// `disjunctive`, `affine`, `self-dual` or `brute`).
pub fn count_models_traced(
    f: &Formula,
    b: &Basis,
    props: &[String],
    cfg: &Config,
) -> Result<(u128, &'static str)> {
    f.check_basis(b)?;
    let total = props.len();
    if total > 127 {
        return Err(Error::TooManyVariables { count: total, cap: 127 });
    }
    let declared: BTreeSet<&String> = props.iter().collect();
    if declared.len() != total {
        return Err(Error::InvalidInput("duplicate variable in the declared list".into()));
    }
    let vars = f.vars();
    if let Some(v) = vars.iter().find(|v| !declared.contains(v)) {
        return Err(Error::UnboundVariable(v.clone()));
    }
    let n = vars.len();
    guard_vars(n)?;
    let prog = Compiled::new(f, &vars)?;
    let inv = Invariants::of_basis(b);
    let top = all_ones(n);
    if inv.conjunctive {
        if !prog.eval_mask(top) {
            return Ok((0, "conjunctive"));
        }
        let s = (0..n).filter(|&i| !prog.eval_mask(top & !(1 << i))).count();
        return Ok((pow2(total - s), "conjunctive"));
    }
    if inv.disjunctive {
        if prog.eval_mask(0) {
            return Ok((pow2(total), "disjunctive"));
        }
        let s = (0..n).filter(|&i| prog.eval_mask(1 << i)).count();
        return Ok((pow2(total) - pow2(total - s), "disjunctive"));
    }
    if inv.linear {
        let (c0, coeffs) = affine_coefficients(&prog, n);
        let count = if coeffs != 0 {
            pow2(total - 1)
        } else if c0 {
            pow2(total)
        } else {
            0
        };
        return Ok((count, "affine"));
    }
    if inv.self_dual {
        return Ok((pow2(total - 1), "self-dual"));
    }
    if total > cfg.brute_var_cap {
        return Err(Error::TooManyVariables {
            count: total,
            cap: cfg.brute_var_cap,
        });
    }
    Ok((prog.count() << (total - n), "brute"))
}

/// Exhaustive model count over `props`, independent of the basis.
pub fn count_models_brute(f: &Formula, props: &[String]) -> Result<u128> {
    let vars = f.vars();
    if let Some(v) = vars.iter().find(|v| !props.contains(v)) {
        return Err(Error::UnboundVariable(v.clone()));
    }
    let prog = Compiled::new(f, &vars)?;
    Ok(prog.count() << (props.len() - vars.len()))
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

/// All ways to write `total` as an ordered sum of `m` positive parts.
fn compositions(total: usize, m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 1..=total.saturating_sub(m - 1) {
        for mut rest in compositions(total - first, m - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All formulas over `b` and `vars` with tree size at most `max_size`,
/// grouped by size (index `s` holds the formulas of size `s`).
pub fn enumerate_formulas(b: &Basis, vars: &[String], max_size: usize) -> Vec<Vec<Formula>> {
    let mut by_size: Vec<Vec<Formula>> = vec![Vec::new(); max_size + 1];
    if max_size == 0 {
        return by_size;
    }
    by_size[1] = vars.iter().map(|v| Formula::var(v.clone())).collect();
    for s in 2..=max_size {
        let mut out = Vec::new();
        for c in b.connectives() {
            let m = c.arity();
            if m == 0 || m > s - 1 {
                continue;
            }
            for parts in compositions(s - 1, m) {
                let mut combos: Vec<Vec<Formula>> = vec![Vec::new()];
                for &p in &parts {
                    let mut next = Vec::new();
                    for prefix in &combos {
                        for g in &by_size[p] {
                            let mut v = prefix.clone();
                            v.push(g.clone());
                            next.push(v);
                        }
                    }
                    combos = next;
                }
                for args in combos {
                    out.push(Formula::Apply(c.clone(), args));
                }
            }
        }
        by_size[s] = out;
    }
    by_size
}
