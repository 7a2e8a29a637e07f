//! The clone engine over Post's lattice.
//!
//! * [`close_at_arity`] saturates the projections of a fixed arity under a
//!   basis, yielding exactly the members of the generated clone of that arity.
//! * [`member`], [`leq`] decide membership and the `⪯` pre-order.
//! * [`identify`] names the clone generated by a basis; [`base_of`] goes back.
//! * [`contains`], [`join`], [`meet`] give the lattice structure on named clones.
//!
//! Membership is decided two ways. For functions and bases of arity at most 3
//! it is decided by saturation, which is exact by definition. For larger
//! arities saturation becomes infeasible (a ternary generator applied to a
//! few thousand quaternary functions is already billions of compositions), so
//! membership is decided by invariant preservation: every clone of Post's
//! lattice is the intersection of the property classes listed in
//! [`PostProperty`](crate::boolfn::PostProperty), so `f ∈ ⟨B⟩` iff `f`
//! satisfies every such property that all of `B` satisfies. The test suite
//! cross-checks both routes wherever saturation is feasible.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::boolfn::{projection_table, row_mask, BoolFn, Connective, SepDegree, MAX_ARITY};
use crate::config::Config;
use crate::error::{Error, Result};

/// Largest arity at which membership is decided by saturation.
pub const SATURATION_ARITY: usize = 3;

// ---------------------------------------------------------------------------
// Bases
// ---------------------------------------------------------------------------

/// A finite set of connectives. Duplicated functions are dropped.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Basis {
    connectives: Vec<Connective>,
}

impl Basis {
    /// The empty basis, which generates the projections only.
    pub fn new() -> Self {
        Basis::default()
    }

    /// Builds a basis from functions, naming each by its display name.
    pub fn from_fns(fns: impl IntoIterator<Item = BoolFn>) -> Self {
        let mut b = Basis::new();
        for f in fns {
            b.push(Connective::of(f));
        }
        b
    }

    /// Builds a basis from catalog names (see [`Basis::parse`] for the syntax
    /// of a single item).
    pub fn from_names(names: &[&str]) -> Result<Self> {
        let mut b = Basis::new();
        for name in names {
            b.push(parse_item(name)?);
        }
        Ok(b)
    }

    /// Parses a comma-separated list of catalog names, `threshold(n,m)`
    /// items, and `arity:hex` literals. The empty string is the empty basis.
    pub fn parse(text: &str) -> Result<Self> {
        let mut b = Basis::new();
        let mut depth = 0usize;
        let mut start = 0usize;
        let mut items = Vec::new();
        for (i, ch) in text.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth = depth.saturating_sub(1),
                ',' if depth == 0 => {
                    items.push(&text[start..i]);
                    start = i + 1;
                }
                _ => {}
            }
        }
        items.push(&text[start..]);
        for item in items {
            if !item.trim().is_empty() {
                b.push(parse_item(item)?);
            }
        }
        Ok(b)
    }

    /// Adds a connective unless an equal function is already present.
    pub fn push(&mut self, c: Connective) {
        if !self.connectives.iter().any(|d| d.func == c.func) {
            self.connectives.push(c);
        }
    }

    /// Adds a function under its display name.
    pub fn push_fn(&mut self, f: BoolFn) {
        self.push(Connective::of(f));
    }

    pub fn connectives(&self) -> &[Connective] {
        &self.connectives
    }

    pub fn functions(&self) -> impl Iterator<Item = BoolFn> + '_ {
        self.connectives.iter().map(|c| c.func)
    }

    pub fn len(&self) -> usize {
        self.connectives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.connectives.is_empty()
    }

    pub fn contains_fn(&self, f: &BoolFn) -> bool {
        self.connectives.iter().any(|c| c.func == *f)
    }

    /// Finds a connective by its display name.
    pub fn by_name(&self, name: &str) -> Option<&Connective> {
        self.connectives.iter().find(|c| c.name == name)
    }

    /// The set union of two bases.
    pub fn union(&self, other: &Basis) -> Basis {
        let mut b = self.clone();
        for c in &other.connectives {
            b.push(c.clone());
        }
        b
    }

    /// Largest arity in the basis (0 for the empty basis).
    pub fn max_arity(&self) -> usize {
        self.functions().map(|f| f.arity()).max().unwrap_or(0)
    }

    /// Canonical cache key: the sorted function list.
    fn key(&self) -> Vec<BoolFn> {
        let mut k: Vec<BoolFn> = self.functions().collect();
        k.sort();
        k
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.connectives.iter().map(|c| c.name.as_str()).collect();
        write!(f, "{{{}}}", names.join(", "))
    }
}

fn parse_item(item: &str) -> Result<Connective> {
    let item = item.trim();
    if item.contains(':') {
        return Ok(Connective::of(BoolFn::parse_literal(item)?));
    }
    if let Some(open) = item.find('(') {
        let name = item[..open].trim();
        let inner = item[open + 1..]
            .strip_suffix(')')
            .ok_or_else(|| Error::UnknownName(item.to_string()))?;
        let params = inner
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::UnknownName(item.to_string()))?;
        let f = BoolFn::named(name, &params)?;
        return Ok(Connective::new(f.display_name(), f));
    }
    Connective::named(item)
}

// ---------------------------------------------------------------------------
// Named clones
// ---------------------------------------------------------------------------

/// The families of Post's lattice. Families ending in `n` carry a degree.
#[allow(non_camel_case_types)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    BF, R0, R1, R2, M, M0, M1, M2,
    S0, S1, S0n, S1n, S00, S00n, S01, S01n, S02, S02n, S10, S10n, S11, S11n, S12, S12n,
    D, D1, D2, L, L0, L1, L2, L3, V, V0, V1, V2, E, E0, E1, E2, N, N2, I, I0, I1, I2,
}

impl Family {
    /// Every family in a fixed, documented order.
    pub const ALL: [Family; 46] = [
        Family::BF, Family::R0, Family::R1, Family::R2, Family::M, Family::M0, Family::M1, Family::M2,
        Family::S0, Family::S1, Family::S0n, Family::S1n, Family::S00, Family::S00n, Family::S01,
        Family::S01n, Family::S02, Family::S02n, Family::S10, Family::S10n, Family::S11, Family::S11n,
        Family::S12, Family::S12n, Family::D, Family::D1, Family::D2, Family::L, Family::L0,
        Family::L1, Family::L2, Family::L3, Family::V, Family::V0, Family::V1, Family::V2, Family::E,
        Family::E0, Family::E1, Family::E2, Family::N, Family::N2, Family::I, Family::I0, Family::I1,
        Family::I2,
    ];

    /// Whether the family carries a degree parameter.
    pub fn is_parameterized(self) -> bool {
        matches!(
            self,
            Family::S0n
                | Family::S1n
                | Family::S00n
                | Family::S01n
                | Family::S02n
                | Family::S10n
                | Family::S11n
                | Family::S12n
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Family::BF => "BF", Family::R0 => "R0", Family::R1 => "R1", Family::R2 => "R2",
            Family::M => "M", Family::M0 => "M0", Family::M1 => "M1", Family::M2 => "M2",
            Family::S0 => "S0", Family::S1 => "S1", Family::S0n => "S0n", Family::S1n => "S1n",
            Family::S00 => "S00", Family::S00n => "S00n", Family::S01 => "S01", Family::S01n => "S01n",
            Family::S02 => "S02", Family::S02n => "S02n", Family::S10 => "S10", Family::S10n => "S10n",
            Family::S11 => "S11", Family::S11n => "S11n", Family::S12 => "S12", Family::S12n => "S12n",
            Family::D => "D", Family::D1 => "D1", Family::D2 => "D2", Family::L => "L",
            Family::L0 => "L0", Family::L1 => "L1", Family::L2 => "L2", Family::L3 => "L3",
            Family::V => "V", Family::V0 => "V0", Family::V1 => "V1", Family::V2 => "V2",
            Family::E => "E", Family::E0 => "E0", Family::E1 => "E1", Family::E2 => "E2",
            Family::N => "N", Family::N2 => "N2", Family::I => "I", Family::I0 => "I0",
            Family::I1 => "I1", Family::I2 => "I2",
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A clone of Post's lattice: a family plus, for the separating families, a
/// degree `n ≥ 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NamedClone {
    pub family: Family,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub degree: Option<usize>,
}

impl NamedClone {
    /// A clone without degree parameter.
    pub const fn plain(family: Family) -> Self {
        NamedClone {
            family,
            degree: None,
        }
    }

    /// Checked constructor.
    pub fn new(family: Family, degree: Option<usize>) -> Result<Self> {
        match (family.is_parameterized(), degree) {
            (true, Some(n)) if n >= 2 => Ok(NamedClone { family, degree }),
            (false, None) => Ok(NamedClone { family, degree }),
            _ => Err(Error::InvalidInput(format!(
                "family {family} {} a degree n >= 2",
                if family.is_parameterized() { "needs" } else { "takes no" }
            ))),
        }
    }

    /// A parameterized clone such as `S00n` with degree 3.
    pub fn with_degree(family: Family, n: usize) -> Result<Self> {
        NamedClone::new(family, Some(n))
    }

    fn check_cap(&self, cap: usize) -> Result<()> {
        match self.degree {
            Some(d) if d > cap => Err(Error::DegreeCapExceeded { degree: d, cap }),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for NamedClone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.degree {
            Some(n) => write!(f, "{}^{}", self.family.as_str().trim_end_matches('n'), n),
            None => f.write_str(self.family.as_str()),
        }
    }
}

impl FromStr for NamedClone {
    type Err = Error;

    /// Accepts `S00`, `S00^3` and `S00n:3`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((fam, deg)) = s.split_once('^').or_else(|| s.split_once(':')) {
            let n: usize = deg
                .trim()
                .parse()
                .map_err(|_| Error::UnknownName(s.to_string()))?;
            let fam = fam.trim();
            let family = if fam.ends_with('n') {
                fam.parse::<Family>()?
            } else {
                format!("{fam}n").parse::<Family>()?
            };
            return NamedClone::with_degree(family, n);
        }
        NamedClone::new(s.parse()?, None)
    }
}

// ---------------------------------------------------------------------------
// Invariants
// ---------------------------------------------------------------------------

/// The vector of Post properties shared by a set of functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Invariants {
    pub r0: bool,
    pub r1: bool,
    pub monotone: bool,
    pub self_dual: bool,
    pub linear: bool,
    pub disjunctive: bool,
    pub conjunctive: bool,
    pub unary: bool,
    pub trivial: bool,
    pub sep0: SepDegree,
    pub sep1: SepDegree,
}

impl Invariants {
    /// Properties of a single function.
    pub fn of(f: &BoolFn) -> Self {
        Invariants {
            r0: f.is_bot_reproducing(),
            r1: f.is_top_reproducing(),
            monotone: f.is_monotone(),
            self_dual: f.is_self_dual(),
            linear: f.is_linear(),
            disjunctive: f.is_disjunction_or_constant(),
            conjunctive: f.is_conjunction_or_constant(),
            unary: f.has_at_most_one_variable(),
            trivial: f.is_projection_or_constant(),
            sep0: f.separation_degree(false),
            sep1: f.separation_degree(true),
        }
    }

    /// The properties of the empty set: everything holds.
    pub fn top() -> Self {
        Invariants {
            r0: true,
            r1: true,
            monotone: true,
            self_dual: true,
            linear: true,
            disjunctive: true,
            conjunctive: true,
            unary: true,
            trivial: true,
            sep0: SepDegree::Infinite,
            sep1: SepDegree::Infinite,
        }
    }

    /// Properties shared by both.
    pub fn meet(self, o: Invariants) -> Self {
        Invariants {
            r0: self.r0 && o.r0,
            r1: self.r1 && o.r1,
            monotone: self.monotone && o.monotone,
            self_dual: self.self_dual && o.self_dual,
            linear: self.linear && o.linear,
            disjunctive: self.disjunctive && o.disjunctive,
            conjunctive: self.conjunctive && o.conjunctive,
            unary: self.unary && o.unary,
            trivial: self.trivial && o.trivial,
            sep0: self.sep0.min(o.sep0),
            sep1: self.sep1.min(o.sep1),
        }
    }

    /// Properties shared by every function of a basis.
    pub fn of_basis(b: &Basis) -> Self {
        b.functions()
            .fold(Invariants::top(), |acc, f| acc.meet(Invariants::of(&f)))
    }

    /// Whether a function with invariants `f` has every property in `self`.
    pub fn admits(&self, f: &Invariants) -> bool {
        let sep_ok = |need: SepDegree, have: SepDegree| match need {
            SepDegree::None => true,
            SepDegree::Finite(k) => have.at_least(k),
            SepDegree::Infinite => have == SepDegree::Infinite,
        };
        (!self.r0 || f.r0)
            && (!self.r1 || f.r1)
            && (!self.monotone || f.monotone)
            && (!self.self_dual || f.self_dual)
            && (!self.linear || f.linear)
            && (!self.disjunctive || f.disjunctive)
            && (!self.conjunctive || f.conjunctive)
            && (!self.unary || f.unary)
            && (!self.trivial || f.trivial)
            && sep_ok(self.sep0, f.sep0)
            && sep_ok(self.sep1, f.sep1)
    }
}

/// Membership of a function in a named clone, straight from the clone's
/// defining properties.
pub fn in_named_clone(f: &BoolFn, c: NamedClone) -> bool {
    let r0 = f.is_bot_reproducing();
    let r1 = f.is_top_reproducing();
    let r2 = r0 && r1;
    let m = f.is_monotone();
    let s0 = |n: Option<usize>| match n {
        Some(k) => f.separation_degree(false).at_least(k),
        None => f.separation_degree(false) == SepDegree::Infinite,
    };
    let s1 = |n: Option<usize>| match n {
        Some(k) => f.separation_degree(true).at_least(k),
        None => f.separation_degree(true) == SepDegree::Infinite,
    };
    let n = c.degree;
    use Family::*;
    match c.family {
        BF => true,
        R0 => r0,
        R1 => r1,
        R2 => r2,
        M => m,
        M0 => m && r0,
        M1 => m && r1,
        M2 => m && r2,
        S0 | S0n => s0(n),
        S1 | S1n => s1(n),
        S00 | S00n => s0(n) && r2 && m,
        S01 | S01n => s0(n) && m,
        S02 | S02n => s0(n) && r2,
        S10 | S10n => s1(n) && r2 && m,
        S11 | S11n => s1(n) && m,
        S12 | S12n => s1(n) && r2,
        D => f.is_self_dual(),
        D1 => f.is_self_dual() && r2,
        D2 => f.is_self_dual() && m,
        L => f.is_linear(),
        L0 => f.is_linear() && r0,
        L1 => f.is_linear() && r1,
        L2 => f.is_linear() && r2,
        L3 => f.is_linear() && f.is_self_dual(),
        V => f.is_disjunction_or_constant(),
        V0 => f.is_disjunction_or_constant() && r0,
        V1 => f.is_disjunction_or_constant() && r1,
        V2 => f.is_disjunction_or_constant() && r2,
        E => f.is_conjunction_or_constant(),
        E0 => f.is_conjunction_or_constant() && r0,
        E1 => f.is_conjunction_or_constant() && r1,
        E2 => f.is_conjunction_or_constant() && r2,
        N => f.has_at_most_one_variable(),
        N2 => f.has_at_most_one_variable() && f.is_self_dual(),
        I => f.is_projection_or_constant(),
        I0 => f.is_projection_or_constant() && r0,
        I1 => f.is_projection_or_constant() && r1,
        I2 => f.is_projection_or_constant() && r2,
    }
}

/// The named clone singled out by an invariant vector (the candidate step of
/// identification).
pub fn candidate(inv: &Invariants, degree_cap: usize) -> Result<NamedClone> {
    use Family::*;
    let pick = |both: Family, zero: Family, one: Family, none: Family, r0: bool, r1: bool| {
        if r0 && r1 {
            both
        } else if r0 {
            zero
        } else if r1 {
            one
        } else {
            none
        }
    };
    let plain = NamedClone::plain;
    if inv.trivial {
        return Ok(plain(pick(I2, I0, I1, I, inv.r0, inv.r1)));
    }
    if inv.unary {
        return Ok(plain(if inv.self_dual { N2 } else { N }));
    }
    if inv.conjunctive {
        return Ok(plain(pick(E2, E0, E1, E, inv.r0, inv.r1)));
    }
    if inv.disjunctive {
        return Ok(plain(pick(V2, V0, V1, V, inv.r0, inv.r1)));
    }
    if inv.linear {
        let fam = if inv.r0 && inv.r1 {
            L2
        } else if inv.r0 {
            L0
        } else if inv.r1 {
            L1
        } else if inv.self_dual {
            L3
        } else {
            L
        };
        return Ok(plain(fam));
    }
    if inv.self_dual {
        let fam = if inv.monotone {
            D2
        } else if inv.r0 && inv.r1 {
            D1
        } else {
            D
        };
        return Ok(plain(fam));
    }
    let separating = |deg: SepDegree, inf: Family, fin: Family| -> Result<NamedClone> {
        match deg {
            SepDegree::Infinite => Ok(plain(inf)),
            SepDegree::Finite(n) if n > degree_cap => Err(Error::DegreeCapExceeded {
                degree: n,
                cap: degree_cap,
            }),
            SepDegree::Finite(n) => NamedClone::with_degree(fin, n),
            SepDegree::None => unreachable!("caller checks the degree"),
        }
    };
    if inv.sep0.at_least(2) {
        let (inf, fin) = if inv.monotone && inv.r0 {
            (S00, S00n)
        } else if inv.monotone {
            (S01, S01n)
        } else if inv.r0 {
            (S02, S02n)
        } else {
            (S0, S0n)
        };
        return separating(inv.sep0, inf, fin);
    }
    if inv.sep1.at_least(2) {
        let (inf, fin) = if inv.monotone && inv.r1 {
            (S10, S10n)
        } else if inv.monotone {
            (S11, S11n)
        } else if inv.r1 {
            (S12, S12n)
        } else {
            (S1, S1n)
        };
        return separating(inv.sep1, inf, fin);
    }
    if inv.monotone {
        return Ok(plain(pick(M2, M0, M1, M, inv.r0, inv.r1)));
    }
    Ok(plain(pick(R2, R0, R1, BF, inv.r0, inv.r1)))
}

// ---------------------------------------------------------------------------
// Saturation
// ---------------------------------------------------------------------------

/// How a function entered a closure: as a projection or by applying a basis
/// function (by index into the basis) to earlier members (by index).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Origin {
    Projection(usize),
    Apply(usize, Vec<usize>),
}

/// Result of a saturation run.
#[derive(Debug, Clone)]
pub struct Saturation {
    /// Member tables in discovery order.
    pub tables: Vec<u64>,
    /// Parallel to `tables` when origins were requested.
    pub origins: Vec<Origin>,
    /// Whether the early-exit target was found.
    pub found: bool,
}

/// Applies `g` to `args` (tables of `n`-ary functions), row by row.
fn apply(g: &BoolFn, args: &[u64], n: usize) -> u64 {
    let mut out = 0u64;
    for row in 0..(1usize << n) {
        let mut idx = 0usize;
        for (j, t) in args.iter().enumerate() {
            idx |= ((t >> row & 1) as usize) << j;
        }
        if g.value(idx) {
            out |= 1 << row;
        }
    }
    out
}

/// Saturates the `n`-ary projections under `fns`.
///
/// Semi-naive: each round only composes tuples that use at least one member
/// discovered in the previous round. Iteration order is deterministic. The
/// run stops early when `target` appears; it fails once more than `budget`
/// functions are held or more than `budget * 2048` compositions were tried.
pub fn saturate(
    fns: &[BoolFn],
    n: usize,
    budget: usize,
    target: Option<u64>,
    track_origins: bool,
) -> Result<Saturation> {
    if n == 0 || n > MAX_ARITY {
        return Err(Error::ArityOutOfRange {
            arity: n,
            cap: MAX_ARITY,
        });
    }
    let mut tables: Vec<u64> = Vec::new();
    let mut origins: Vec<Origin> = Vec::new();
    let mut seen: HashSet<u64> = HashSet::new();
    let full_count: Option<usize> = if n <= 4 { Some(1usize << (1usize << n)) } else { None };
    for i in 0..n {
        let t = projection_table(n, i);
        if seen.insert(t) {
            tables.push(t);
            if track_origins {
                origins.push(Origin::Projection(i));
            }
        }
    }
    let done = |tables: &Vec<u64>| Saturation {
        found: true,
        origins: Vec::new(),
        tables: tables.clone(),
    };
    if let Some(t) = target {
        if seen.contains(&t) {
            return Ok(done(&tables));
        }
    }
    let work_limit = budget.saturating_mul(2048);
    let mut work = 0usize;
    let mut old = 0usize;
    loop {
        let len = tables.len();
        if old == len {
            break;
        }
        for (gi, g) in fns.iter().enumerate() {
            let m = g.arity();
            // Tuples with first new component at position p.
            for p in 0..m {
                let lo: Vec<usize> = (0..m).map(|j| if j == p { old } else { 0 }).collect();
                let hi: Vec<usize> = (0..m)
                    .map(|j| if j < p { old } else { len })
                    .collect();
                if (0..m).any(|j| lo[j] >= hi[j]) {
                    continue;
                }
                let mut idx = lo.clone();
                let mut args = vec![0u64; m];
                loop {
                    for j in 0..m {
                        args[j] = tables[idx[j]];
                    }
                    let t = apply(g, &args, n);
                    work += 1;
                    if seen.insert(t) {
                        tables.push(t);
                        if track_origins {
                            origins.push(Origin::Apply(gi, idx.clone()));
                        }
                        if Some(t) == target {
                            return Ok(Saturation {
                                tables,
                                origins,
                                found: true,
                            });
                        }
                        if tables.len() > budget {
                            return Err(Error::BudgetExceeded { limit: budget });
                        }
                        if full_count == Some(tables.len()) && target.is_none() && !track_origins {
                            return Ok(Saturation {
                                tables,
                                origins,
                                found: false,
                            });
                        }
                    }
                    if work > work_limit {
                        return Err(Error::BudgetExceeded { limit: budget });
                    }
                    // Odometer step, last position fastest.
                    let mut j = m;
                    loop {
                        if j == 0 {
                            break;
                        }
                        j -= 1;
                        idx[j] += 1;
                        if idx[j] < hi[j] {
                            break;
                        }
                        idx[j] = lo[j];
                        if j == 0 {
                            j = usize::MAX;
                            break;
                        }
                    }
                    if j == usize::MAX {
                        break;
                    }
                }
            }
        }
        old = len;
    }
    Ok(Saturation {
        tables,
        origins,
        found: false,
    })
}

type CacheKey = (Vec<BoolFn>, usize);

fn closure_cache() -> &'static Mutex<HashMap<CacheKey, Arc<Vec<BoolFn>>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<Vec<BoolFn>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// All `n`-ary members of the clone generated by `b`, in discovery order.
pub fn close_at_arity(b: &Basis, n: usize) -> Result<Arc<Vec<BoolFn>>> {
    close_at_arity_with(b, n, &Config::default())
}

/// [`close_at_arity`] with explicit limits.
pub fn close_at_arity_with(b: &Basis, n: usize, cfg: &Config) -> Result<Arc<Vec<BoolFn>>> {
    if n == 0 || n > cfg.arity_cap {
        return Err(Error::ArityOutOfRange {
            arity: n,
            cap: cfg.arity_cap,
        });
    }
    let key = (b.key(), n);
    if let Some(hit) = closure_cache().lock().expect("cache lock").get(&key) {
        if hit.len() > cfg.closure_budget {
            return Err(Error::BudgetExceeded {
                limit: cfg.closure_budget,
            });
        }
        return Ok(Arc::clone(hit));
    }
    let fns: Vec<BoolFn> = b.functions().collect();
    let sat = saturate(&fns, n, cfg.closure_budget, None, false)?;
    let members: Arc<Vec<BoolFn>> = Arc::new(
        sat.tables
            .iter()
            .map(|&t| BoolFn::from_table(n, t).expect("closure tables are in range"))
            .collect(),
    );
    closure_cache()
        .lock()
        .expect("cache lock")
        .insert(key, Arc::clone(&members));
    Ok(members)
}

// ---------------------------------------------------------------------------
// Membership and the pre-order
// ---------------------------------------------------------------------------

/// Whether `f` belongs to the clone generated by `b`.
pub fn member(f: &BoolFn, b: &Basis) -> Result<bool> {
    member_with(f, b, &Config::default())
}

/// [`member`] with explicit limits.
pub fn member_with(f: &BoolFn, b: &Basis, cfg: &Config) -> Result<bool> {
    if f.arity() > cfg.arity_cap {
        return Err(Error::ArityOutOfRange {
            arity: f.arity(),
            cap: cfg.arity_cap,
        });
    }
    if f.is_projection_or_constant() && !f.is_constant() || b.contains_fn(f) {
        return Ok(true);
    }
    // Sound refutation: every property class is itself a clone.
    if !Invariants::of_basis(b).admits(&Invariants::of(f)) {
        return Ok(false);
    }
    if f.arity() <= SATURATION_ARITY && b.max_arity() <= SATURATION_ARITY {
        member_by_saturation(f, b, cfg)
    } else {
        Ok(true)
    }
}

/// Membership decided purely by saturation at the arity of `f`.
pub fn member_by_saturation(f: &BoolFn, b: &Basis, cfg: &Config) -> Result<bool> {
    let key = (b.key(), f.arity());
    if let Some(hit) = closure_cache().lock().expect("cache lock").get(&key) {
        return Ok(hit.contains(f));
    }
    Ok(close_at_arity_with(b, f.arity(), cfg)?.contains(f))
}

/// Membership decided purely by invariant preservation.
pub fn member_by_invariants(f: &BoolFn, b: &Basis) -> bool {
    Invariants::of_basis(b).admits(&Invariants::of(f))
}

/// `O ⪯ O'`: every function of `o` lies in the clone generated by `o2`.
pub fn leq(o: &Basis, o2: &Basis) -> Result<bool> {
    leq_with(o, o2, &Config::default())
}

/// [`leq`] with explicit limits.
pub fn leq_with(o: &Basis, o2: &Basis, cfg: &Config) -> Result<bool> {
    for f in o.functions() {
        if !member_with(&f, o2, cfg)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Both `O ⪯ O'` and `O' ⪯ O`.
pub fn equivalent(o: &Basis, o2: &Basis) -> Result<bool> {
    Ok(leq(o, o2)? && leq(o2, o)?)
}

// ---------------------------------------------------------------------------
// Identification and bases
// ---------------------------------------------------------------------------

/// Names the clone generated by `b`.
pub fn identify(b: &Basis) -> Result<NamedClone> {
    identify_with(b, &Config::default())
}

/// [`identify`] with explicit limits.
pub fn identify_with(b: &Basis, cfg: &Config) -> Result<NamedClone> {
    for f in b.functions() {
        if f.arity() > cfg.arity_cap {
            return Err(Error::ArityOutOfRange {
                arity: f.arity(),
                cap: cfg.arity_cap,
            });
        }
    }
    let c = candidate(&Invariants::of_basis(b), cfg.degree_cap)?;
    let base = base_of_with(c, cfg)?;
    if leq_with(b, &base, cfg)? && leq_with(&base, b, cfg)? {
        Ok(c)
    } else {
        Err(Error::InternalInconsistency(format!(
            "candidate {c} for basis {b} failed confirmation"
        )))
    }
}

fn fns(names: &[&str]) -> Basis {
    Basis::from_names(names).expect("catalog names are valid")
}

fn with_threshold(names: &[&str], n: usize, m: usize) -> Basis {
    let mut b = fns(names);
    b.push_fn(BoolFn::threshold(n, m).expect("threshold parameters are valid"));
    b
}

/// The standard base of a named clone.
pub fn base_of(c: NamedClone) -> Result<Basis> {
    base_of_with(c, &Config::default())
}

/// [`base_of`] with explicit limits.
pub fn base_of_with(c: NamedClone, cfg: &Config) -> Result<Basis> {
    c.check_cap(cfg.degree_cap)?;
    let n = c.degree.unwrap_or(0);
    use Family::*;
    Ok(match c.family {
        BF => fns(&["and", "not"]),
        R0 => fns(&["and", "xor"]),
        R1 => fns(&["or", "eq"]),
        R2 => fns(&["or", "and_eq"]),
        M => fns(&["or", "and", "bot", "top"]),
        M0 => fns(&["or", "and", "bot"]),
        M1 => fns(&["or", "and", "top"]),
        M2 => fns(&["or", "and"]),
        S0 => fns(&["imp"]),
        S1 => fns(&["nimp"]),
        S0n => with_threshold(&["imp"], n + 1, 2),
        S1n => with_threshold(&["nimp"], n + 1, n),
        S00 => fns(&["or_and"]),
        S00n if n == 2 => with_threshold(&["or_and"], 3, 2),
        S00n => with_threshold(&[], n + 1, 2),
        S01 => fns(&["or_and", "top"]),
        S01n => with_threshold(&["top"], n + 1, 2),
        S02 => fns(&["or_nimp"]),
        S02n => with_threshold(&["or_nimp"], n + 1, 2),
        S10 => fns(&["and_or"]),
        S10n if n == 2 => with_threshold(&["and_or"], 3, 2),
        S10n => with_threshold(&[], n + 1, n),
        S11 => fns(&["and_or", "bot"]),
        S11n => with_threshold(&["bot"], n + 1, n),
        S12 => fns(&["aimp"]),
        S12n => with_threshold(&["aimp"], n + 1, n),
        D => fns(&["maj_nn"]),
        D1 => fns(&["maj_n"]),
        D2 => fns(&["maj"]),
        L => fns(&["xor", "top"]),
        L0 => fns(&["xor"]),
        L1 => fns(&["eq"]),
        L2 => fns(&["xor3"]),
        L3 => fns(&["xnor3"]),
        V => fns(&["or", "bot", "top"]),
        V0 => fns(&["or", "bot"]),
        V1 => fns(&["or", "top"]),
        V2 => fns(&["or"]),
        E => fns(&["and", "bot", "top"]),
        E0 => fns(&["and", "bot"]),
        E1 => fns(&["and", "top"]),
        E2 => fns(&["and"]),
        N => fns(&["not", "bot", "top"]),
        N2 => fns(&["not"]),
        I => fns(&["bot", "top"]),
        I0 => fns(&["bot"]),
        I1 => fns(&["top"]),
        I2 => Basis::new(),
    })
}

// ---------------------------------------------------------------------------
// Lattice structure
// ---------------------------------------------------------------------------

/// Every named clone with degree at most `degree_cap`, in a fixed order.
pub fn all_named(degree_cap: usize) -> Vec<NamedClone> {
    let mut out = Vec::new();
    for fam in Family::ALL {
        if fam.is_parameterized() {
            for n in 2..=degree_cap {
                out.push(NamedClone {
                    family: fam,
                    degree: Some(n),
                });
            }
        } else {
            out.push(NamedClone::plain(fam));
        }
    }
    out
}

/// `c2 ⊆ c1`.
pub fn contains(c1: NamedClone, c2: NamedClone) -> Result<bool> {
    contains_with(c1, c2, &Config::default())
}

/// [`contains`] with explicit limits.
pub fn contains_with(c1: NamedClone, c2: NamedClone, cfg: &Config) -> Result<bool> {
    leq_with(&base_of_with(c2, cfg)?, &base_of_with(c1, cfg)?, cfg)
}

/// The smallest clone containing both.
pub fn join(c1: NamedClone, c2: NamedClone) -> Result<NamedClone> {
    join_with(c1, c2, &Config::default())
}

/// [`join`] with explicit limits.
pub fn join_with(c1: NamedClone, c2: NamedClone, cfg: &Config) -> Result<NamedClone> {
    identify_with(&base_of_with(c1, cfg)?.union(&base_of_with(c2, cfg)?), cfg)
}

/// The largest named clone (within the degree cap) contained in both.
pub fn meet(c1: NamedClone, c2: NamedClone) -> Result<NamedClone> {
    meet_with(c1, c2, &Config::default())
}

/// [`meet`] with explicit limits.
pub fn meet_with(c1: NamedClone, c2: NamedClone, cfg: &Config) -> Result<NamedClone> {
    c1.check_cap(cfg.degree_cap)?;
    c2.check_cap(cfg.degree_cap)?;
    let mut below = Vec::new();
    for c in all_named(cfg.degree_cap) {
        if contains_with(c1, c, cfg)? && contains_with(c2, c, cfg)? {
            below.push(c);
        }
    }
    for &c in &below {
        let mut greatest = true;
        for &d in &below {
            if !contains_with(c, d, cfg)? {
                greatest = false;
                break;
            }
        }
        if greatest {
            return Ok(c);
        }
    }
    Err(Error::InternalInconsistency(format!(
        "no greatest lower bound for {c1} and {c2}"
    )))
}

/// Whether the clone generated by `b` lies below one of `maximal`.
pub fn in_downward_closed(maximal: &[NamedClone], b: &Basis) -> Result<bool> {
    let c = identify(b)?;
    for &m in maximal {
        if contains(m, c)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The covering relation of `contains` on the named clones within the cap:
/// pairs `(upper, lower)` with `lower ⊊ upper` and nothing strictly between.
pub fn covering_pairs(cfg: &Config) -> Result<Vec<(NamedClone, NamedClone)>> {
    let nodes = all_named(cfg.degree_cap);
    let k = nodes.len();
    let mut le = vec![vec![false; k]; k];
    for i in 0..k {
        for j in 0..k {
            le[i][j] = contains_with(nodes[i], nodes[j], cfg)?;
        }
    }
    let strict = |i: usize, j: usize| le[i][j] && !le[j][i];
    let mut out = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if strict(i, j) && !(0..k).any(|m| strict(i, m) && strict(m, j)) {
                out.push((nodes[i], nodes[j]));
            }
        }
    }
    Ok(out)
}

/// Renders the named lattice within the cap as a DOT digraph (edges point
/// from a clone to the clones it covers).
pub fn lattice_dot(cfg: &Config) -> Result<String> {
    let mut out = String::from("digraph post_lattice {\n  rankdir=BT;\n");
    for c in all_named(cfg.degree_cap) {
        out.push_str(&format!("  \"{c}\";\n"));
    }
    for (upper, lower) in covering_pairs(cfg)? {
        out.push_str(&format!("  \"{upper}\" -> \"{lower}\";\n"));
    }
    out.push_str("}\n");
    Ok(out)
}

/// The full function set of a clone at arity `n`, by filtering all functions
/// through the clone's defining properties (only for `n ≤ 4`).
pub fn enumerate_by_definition(c: NamedClone, n: usize) -> Result<Vec<BoolFn>> {
    if n == 0 || n > 4 {
        return Err(Error::ArityOutOfRange { arity: n, cap: 4 });
    }
    let rows = 1u64 << n;
    let total: u64 = 1u64 << rows;
    let mut out = Vec::new();
    for t in 0..total {
        let f = BoolFn::from_table(n, t & row_mask(n))?;
        if in_named_clone(&f, c) {
            out.push(f);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(names: &[&str]) -> Basis {
        Basis::from_names(names).unwrap()
    }

    fn f(name: &str) -> BoolFn {
        BoolFn::named(name, &[]).unwrap()
    }

    #[test]
    fn closure_examples() {
        let c = close_at_arity(&Basis::new(), 2).unwrap();
        assert_eq!(c.len(), 2);
        let c = close_at_arity(&b(&["nimp"]), 1).unwrap();
        let mut tables: Vec<u64> = c.iter().map(|g| g.table()).collect();
        tables.sort();
        assert_eq!(tables, vec![0b00, 0b10]);
        assert_eq!(close_at_arity(&b(&["and", "not"]), 2).unwrap().len(), 16);
    }

    #[test]
    fn closure_budget_is_enforced() {
        let cfg = Config {
            closure_budget: 100,
            ..Config::default()
        };
        assert!(matches!(
            close_at_arity_with(&b(&["and", "not"]), 3, &cfg),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn membership_examples() {
        assert!(member(&f("and"), &b(&["nimp"])).unwrap());
        assert!(!member(&f("not"), &b(&["and", "or", "top", "bot"])).unwrap());
        let p22 = BoolFn::projection(2, 1).unwrap();
        for names in [&[][..], &["and"], &["xor", "top"], &["maj"]] {
            assert!(member(&p22, &b(names)).unwrap());
        }
    }

    #[test]
    fn leq_examples() {
        assert!(leq(&b(&["maj"]), &b(&["and", "or"])).unwrap());
        assert!(!leq(&b(&["xor"]), &b(&["and", "or", "top", "bot"])).unwrap());
        let x = b(&["aimp", "xor"]);
        assert!(leq(&x, &x).unwrap());
    }

    #[test]
    fn identify_examples() {
        assert_eq!(identify(&b(&["nimp"])).unwrap(), NamedClone::plain(Family::S1));
        assert_eq!(identify(&b(&["and", "not"])).unwrap(), NamedClone::plain(Family::BF));
        assert_eq!(identify(&Basis::new()).unwrap(), NamedClone::plain(Family::I2));
        assert_eq!(identify(&b(&["xor"])).unwrap(), NamedClone::plain(Family::L0));
        assert_eq!(identify(&b(&["maj", "not"])).unwrap(), NamedClone::plain(Family::D));
    }

    #[test]
    fn base_examples() {
        assert_eq!(base_of(NamedClone::plain(Family::D2)).unwrap(), b(&["maj"]));
        let s3 = NamedClone::with_degree(Family::S00n, 3).unwrap();
        assert_eq!(
            base_of(s3).unwrap(),
            Basis::from_fns([BoolFn::threshold(4, 2).unwrap()])
        );
        assert_eq!(base_of(NamedClone::plain(Family::L2)).unwrap(), b(&["xor3"]));
        let s6 = NamedClone::with_degree(Family::S00n, 6).unwrap();
        assert!(matches!(base_of(s6), Err(Error::DegreeCapExceeded { .. })));
    }

    #[test]
    fn contains_examples() {
        use Family::*;
        let p = NamedClone::plain;
        assert!(contains(p(BF), p(L)).unwrap());
        assert!(!contains(p(M), p(D)).unwrap());
        assert!(!contains(p(S0), p(R1)).unwrap());
        assert!(contains(p(R1), p(S0)).unwrap());
    }

    #[test]
    fn join_meet_examples() {
        use Family::*;
        let p = NamedClone::plain;
        assert_eq!(join(p(E2), p(V2)).unwrap(), p(M2));
        assert_eq!(join(p(S12), p(S12)).unwrap(), p(S12));
        // Monotone and affine: constants and projections.
        assert_eq!(meet(p(M), p(L)).unwrap(), p(I));
    }

    #[test]
    fn downward_closed_examples() {
        use Family::*;
        let p = NamedClone::plain;
        assert!(in_downward_closed(&[p(M), p(L)], &b(&["xor"])).unwrap());
        assert!(!in_downward_closed(&[p(M)], &b(&["not"])).unwrap());
        assert!(in_downward_closed(&[p(BF)], &b(&["aimp", "maj_nn"])).unwrap());
    }

    #[test]
    fn basis_parsing() {
        let parsed = Basis::parse("nimp, threshold(4,2), 2:6").unwrap();
        assert_eq!(parsed.len(), 3);
        assert!(parsed.contains_fn(&f("xor")));
        assert!(Basis::parse("").unwrap().is_empty());
        assert!(Basis::parse("frobnicate").is_err());
    }

    #[test]
    fn named_clone_parsing() {
        let c: NamedClone = "S00^3".parse().unwrap();
        assert_eq!(c, NamedClone::with_degree(Family::S00n, 3).unwrap());
        assert_eq!("S00n:3".parse::<NamedClone>().unwrap(), c);
        assert_eq!(c.to_string(), "S00^3");
        assert_eq!("bf".parse::<NamedClone>().unwrap(), NamedClone::plain(Family::BF));
        assert!("S00n".parse::<NamedClone>().is_err());
    }
}
