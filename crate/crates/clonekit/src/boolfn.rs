//! Finitary Boolean operations as bit-packed truth tables.
//!
//! A [`BoolFn`] of arity `n` stores its `2^n` table entries in one `u64`.
//! Entry `i` is the value on the argument tuple whose binary expansion is
//! `i`, with the **least significant bit holding the first argument**. So for
//! `and` the table is `0b1000` (only index 3 = `(1,1)` is true), printed as
//! the literal `2:8`.
//!
//! Constants are unary constant functions (`top`, `bot`); there are no
//! nullary functions. Dummy variables are never normalised away: two
//! functions are equal iff their arities and tables are equal.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported arity: `2^6 = 64` table rows fit one machine word.
pub const MAX_ARITY: usize = 6;

/// A Boolean function `{0,1}^arity -> {0,1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoolFn {
    arity: u8,
    table: u64,
}

/// Mask with one bit per table row of an `arity`-ary function.
pub fn row_mask(arity: usize) -> u64 {
    if arity >= MAX_ARITY {
        u64::MAX
    } else {
        (1u64 << (1usize << arity)) - 1
    }
}

/// Table of the `i`-th projection (0-based) at the given arity.
pub fn projection_table(arity: usize, i: usize) -> u64 {
    let mut t = 0u64;
    for row in 0..(1usize << arity) {
        if row >> i & 1 == 1 {
            t |= 1 << row;
        }
    }
    t
}

fn check_arity(arity: usize) -> Result<()> {
    if arity == 0 || arity > MAX_ARITY {
        Err(Error::ArityOutOfRange {
            arity,
            cap: MAX_ARITY,
        })
    } else {
        Ok(())
    }
}

impl BoolFn {
    /// Builds a function from its table given row by row.
    pub fn make(arity: usize, table: &[bool]) -> Result<Self> {
        check_arity(arity)?;
        let expected = 1usize << arity;
        if table.len() != expected {
            return Err(Error::TableLengthMismatch {
                arity,
                expected,
                got: table.len(),
            });
        }
        let bits = table
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &b)| acc | (u64::from(b) << i));
        Ok(BoolFn {
            arity: arity as u8,
            table: bits,
        })
    }

    /// Builds a function from a packed table; bits above row `2^arity - 1`
    /// must be zero.
    pub fn from_table(arity: usize, table: u64) -> Result<Self> {
        check_arity(arity)?;
        if table & !row_mask(arity) != 0 {
            return Err(Error::TableLengthMismatch {
                arity,
                expected: 1 << arity,
                got: 64 - table.leading_zeros() as usize,
            });
        }
        Ok(BoolFn {
            arity: arity as u8,
            table,
        })
    }

    /// Tabulates a closure over all argument tuples.
    pub fn from_fn(arity: usize, f: impl Fn(&[bool]) -> bool) -> Result<Self> {
        check_arity(arity)?;
        let mut args = vec![false; arity];
        let mut table = 0u64;
        for row in 0..(1usize << arity) {
            for (j, a) in args.iter_mut().enumerate() {
                *a = row >> j & 1 == 1;
            }
            if f(&args) {
                table |= 1 << row;
            }
        }
        Ok(BoolFn {
            arity: arity as u8,
            table,
        })
    }

    /// The `i`-th projection (0-based) of the given arity.
    pub fn projection(arity: usize, i: usize) -> Result<Self> {
        check_arity(arity)?;
        if i >= arity {
            return Err(Error::ArityMismatch {
                expected: arity,
                got: i + 1,
            });
        }
        Ok(BoolFn {
            arity: arity as u8,
            table: projection_table(arity, i),
        })
    }

    /// The constant function of the given arity.
    pub fn constant(arity: usize, value: bool) -> Result<Self> {
        check_arity(arity)?;
        Ok(BoolFn {
            arity: arity as u8,
            table: if value { row_mask(arity) } else { 0 },
        })
    }

    pub fn arity(&self) -> usize {
        self.arity as usize
    }

    /// The packed table.
    pub fn table(&self) -> u64 {
        self.table
    }

    /// Number of table rows, `2^arity`.
    pub fn rows(&self) -> usize {
        1 << self.arity
    }

    /// Value at a packed row index.
    pub fn value(&self, row: usize) -> bool {
        self.table >> row & 1 == 1
    }

    /// Evaluates the function on an argument tuple.
    pub fn eval(&self, args: &[bool]) -> Result<bool> {
        if args.len() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                got: args.len(),
            });
        }
        Ok(self.value(encode_row(args)))
    }

    /// The dual function `x ↦ ¬f(¬x)`.
    pub fn dual(&self) -> BoolFn {
        let last = self.rows() - 1;
        let mut t = 0u64;
        for row in 0..self.rows() {
            if !self.value(last ^ row) {
                t |= 1 << row;
            }
        }
        BoolFn {
            arity: self.arity,
            table: t,
        }
    }

    /// Pointwise negation.
    pub fn negation(&self) -> BoolFn {
        BoolFn {
            arity: self.arity,
            table: !self.table & row_mask(self.arity()),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.table == 0 || self.table == row_mask(self.arity())
    }

    /// Whether argument `i` is essential (the function depends on it).
    pub fn depends_on(&self, i: usize) -> bool {
        (0..self.rows())
            .filter(|row| row >> i & 1 == 0)
            .any(|row| self.value(row) != self.value(row | 1 << i))
    }

    /// Indices of the essential arguments.
    pub fn essential_vars(&self) -> Vec<usize> {
        (0..self.arity()).filter(|&i| self.depends_on(i)).collect()
    }

    /// Size of the preimage of `a`.
    pub fn preimage_len(&self, a: bool) -> usize {
        let ones = self.table.count_ones() as usize;
        if a {
            ones
        } else {
            self.rows() - ones
        }
    }

    /// Renders the `arity:hexTable` literal.
    pub fn to_literal(&self) -> String {
        format!("{}:{:x}", self.arity, self.table)
    }

    /// Parses an `arity:hexTable` literal such as `2:8`.
    pub fn parse_literal(text: &str) -> Result<Self> {
        let bad = || Error::BadLiteral(text.to_string());
        let (a, t) = text.trim().split_once(':').ok_or_else(bad)?;
        let arity: usize = a.trim().parse().map_err(|_| bad())?;
        let t = t.trim().trim_start_matches("0x");
        let table = u64::from_str_radix(t, 16).map_err(|_| bad())?;
        BoolFn::from_table(arity, table)
    }

    /// Looks up a catalog function (see [`CATALOG`]); `threshold` takes the
    /// parameters `(n, m)` and is true when at least `m` of `n` inputs are.
    pub fn named(name: &str, params: &[usize]) -> Result<Self> {
        let key = name.trim().to_ascii_lowercase();
        if key == "threshold" || key == "t" {
            return match params {
                [n, m] => BoolFn::threshold(*n, *m),
                _ => Err(Error::BadThresholdParams {
                    n: params.first().copied().unwrap_or(0),
                    m: params.get(1).copied().unwrap_or(0),
                }),
            };
        }
        if !params.is_empty() {
            return Err(Error::UnknownName(format!("{name} with parameters")));
        }
        CATALOG
            .iter()
            .find(|entry| entry.name == key || entry.aliases.contains(&key.as_str()))
            .map(|entry| entry.build())
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    /// The threshold function `T^n_m`.
    pub fn threshold(n: usize, m: usize) -> Result<Self> {
        if m < 1 || n < m {
            return Err(Error::BadThresholdParams { n, m });
        }
        BoolFn::from_fn(n, |x| x.iter().filter(|&&b| b).count() >= m)
    }

    /// The catalog name of this function, if it has one.
    pub fn catalog_name(&self) -> Option<&'static str> {
        CATALOG
            .iter()
            .find(|entry| entry.build() == *self)
            .map(|entry| entry.name)
    }

    /// A display name: catalog name, `threshold(n,m)`, or the literal.
    pub fn display_name(&self) -> String {
        if let Some(name) = self.catalog_name() {
            return name.to_string();
        }
        let n = self.arity();
        for m in 1..=n {
            if BoolFn::threshold(n, m).ok() == Some(*self) {
                return format!("threshold({n},{m})");
            }
        }
        self.to_literal()
    }
}

impl fmt::Debug for BoolFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BoolFn({})", self.to_literal())
    }
}

impl fmt::Display for BoolFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_name())
    }
}

impl Serialize for BoolFn {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_literal())
    }
}

impl<'de> Deserialize<'de> for BoolFn {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        BoolFn::parse_literal(&text).map_err(serde::de::Error::custom)
    }
}

/// Packs an argument tuple into a row index (first argument = LSB).
pub fn encode_row(args: &[bool]) -> usize {
    args.iter()
        .enumerate()
        .fold(0, |acc, (i, &b)| acc | (usize::from(b) << i))
}

/// Unpacks a row index into an argument tuple.
pub fn decode_row(row: usize, arity: usize) -> Vec<bool> {
    (0..arity).map(|i| row >> i & 1 == 1).collect()
}

/// One catalog entry.
pub struct CatalogEntry {
    pub name: &'static str,
    pub aliases: &'static [&'static str],
    pub arity: usize,
    /// Human-readable definition.
    pub definition: &'static str,
    eval: fn(&[bool]) -> bool,
}

impl CatalogEntry {
    pub fn build(&self) -> BoolFn {
        BoolFn::from_fn(self.arity, self.eval).expect("catalog arities are valid")
    }
}

fn maj3(a: bool, b: bool, c: bool) -> bool {
    (a && b) || (b && c) || (a && c)
}

/// Named functions. Besides the standard connectives this includes the
/// ternary bases of the clones in Post's lattice.
pub static CATALOG: &[CatalogEntry] = &[
    CatalogEntry { name: "id", aliases: &["proj"], arity: 1, definition: "x", eval: |x| x[0] },
    CatalogEntry { name: "not", aliases: &["neg", "¬"], arity: 1, definition: "¬x", eval: |x| !x[0] },
    CatalogEntry { name: "top", aliases: &["true", "⊤"], arity: 1, definition: "⊤", eval: |_| true },
    CatalogEntry { name: "bot", aliases: &["false", "⊥"], arity: 1, definition: "⊥", eval: |_| false },
    CatalogEntry { name: "and", aliases: &["∧"], arity: 2, definition: "x∧y", eval: |x| x[0] && x[1] },
    CatalogEntry { name: "or", aliases: &["∨"], arity: 2, definition: "x∨y", eval: |x| x[0] || x[1] },
    CatalogEntry { name: "xor", aliases: &["⊕"], arity: 2, definition: "x⊕y", eval: |x| x[0] ^ x[1] },
    CatalogEntry { name: "eq", aliases: &["iff", "↔"], arity: 2, definition: "x↔y", eval: |x| x[0] == x[1] },
    CatalogEntry { name: "imp", aliases: &["→"], arity: 2, definition: "x→y", eval: |x| !x[0] || x[1] },
    CatalogEntry { name: "nimp", aliases: &["↛"], arity: 2, definition: "x∧¬y", eval: |x| x[0] && !x[1] },
    CatalogEntry { name: "xor3", aliases: &["⊕3"], arity: 3, definition: "x⊕y⊕z", eval: |x| x[0] ^ x[1] ^ x[2] },
    CatalogEntry { name: "xnor3", aliases: &[], arity: 3, definition: "x⊕y⊕z⊕⊤", eval: |x| !(x[0] ^ x[1] ^ x[2]) },
    CatalogEntry { name: "maj", aliases: &[], arity: 3, definition: "(x∧y)∨(y∧z)∨(x∧z)", eval: |x| maj3(x[0], x[1], x[2]) },
    CatalogEntry { name: "maj_n", aliases: &[], arity: 3, definition: "maj(x,y,¬z)", eval: |x| maj3(x[0], x[1], !x[2]) },
    CatalogEntry { name: "maj_nn", aliases: &[], arity: 3, definition: "maj(x,¬y,¬z)", eval: |x| maj3(x[0], !x[1], !x[2]) },
    CatalogEntry { name: "aimp", aliases: &[], arity: 3, definition: "x∧(y→z)", eval: |x| x[0] && (!x[1] || x[2]) },
    CatalogEntry { name: "oxor", aliases: &[], arity: 3, definition: "x∨(y⊕z)", eval: |x| x[0] || (x[1] ^ x[2]) },
    CatalogEntry { name: "or_and", aliases: &[], arity: 3, definition: "x∨(y∧z)", eval: |x| x[0] || (x[1] && x[2]) },
    CatalogEntry { name: "and_or", aliases: &[], arity: 3, definition: "x∧(y∨z)", eval: |x| x[0] && (x[1] || x[2]) },
    CatalogEntry { name: "or_nimp", aliases: &[], arity: 3, definition: "x∨(y∧¬z)", eval: |x| x[0] || (x[1] && !x[2]) },
    CatalogEntry { name: "and_eq", aliases: &[], arity: 3, definition: "x∧(y↔z)", eval: |x| x[0] && (x[1] == x[2]) },
];

/// Separation degree of a function with respect to a bit `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SepDegree {
    /// Not even separating of degree 2.
    None,
    /// Separating of every degree up to and including this one (≥ 2).
    Finite(usize),
    /// The whole preimage shares a coordinate fixed at `a`.
    Infinite,
}

impl SepDegree {
    /// Whether the function is separating of degree `k`.
    pub fn at_least(self, k: usize) -> bool {
        match self {
            SepDegree::None => false,
            SepDegree::Finite(d) => d >= k,
            SepDegree::Infinite => true,
        }
    }
}

impl fmt::Display for SepDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SepDegree::None => f.write_str("none"),
            SepDegree::Finite(d) => write!(f, "{d}"),
            SepDegree::Infinite => f.write_str("∞"),
        }
    }
}

/// The invariants that define the clones of Post's lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PostProperty {
    BotReproducing,
    TopReproducing,
    Monotone,
    SelfDual,
    Linear,
    /// Separating (with respect to 0) for the whole preimage.
    BotSeparating,
    /// Separating (with respect to 1) for the whole preimage.
    TopSeparating,
    BotSeparatingDeg(usize),
    TopSeparatingDeg(usize),
    DisjunctionOrConstant,
    ConjunctionOrConstant,
    AtMostOneVariable,
    ProjectionOrConstant,
}

impl BoolFn {
    /// `f(0,…,0) = 0`.
    pub fn is_bot_reproducing(&self) -> bool {
        !self.value(0)
    }

    /// `f(1,…,1) = 1`.
    pub fn is_top_reproducing(&self) -> bool {
        self.value(self.rows() - 1)
    }

    /// `x ≤ y` pointwise implies `f(x) ≤ f(y)`.
    pub fn is_monotone(&self) -> bool {
        (0..self.rows()).all(|row| {
            !self.value(row)
                || (0..self.arity())
                    .filter(|&j| row >> j & 1 == 0)
                    .all(|j| self.value(row | 1 << j))
        })
    }

    /// `f(¬x) = ¬f(x)`.
    pub fn is_self_dual(&self) -> bool {
        self.dual() == *self
    }

    /// The affine form `(c0, coefficient mask)` read off the values at the
    /// all-false row and the unit rows.
    pub fn affine_form(&self) -> (bool, u64) {
        let c0 = self.value(0);
        let coeffs = (0..self.arity())
            .filter(|&j| self.value(1 << j) != c0)
            .fold(0u64, |acc, j| acc | 1 << j);
        (c0, coeffs)
    }

    /// `f` equals an affine form over GF(2).
    pub fn is_linear(&self) -> bool {
        let (c0, coeffs) = self.affine_form();
        (0..self.rows()).all(|row| self.value(row) == (c0 ^ ((row as u64 & coeffs).count_ones() % 2 == 1)))
    }

    /// Exact separation degree with respect to `a`.
    ///
    /// A set of preimage points fails to share a coordinate fixed at `a`
    /// exactly when the coordinates where the points differ from `a` cover
    /// every coordinate. The degree is one less than the smallest such
    /// covering set; if no covering set exists the whole preimage is
    /// separated.
    pub fn separation_degree(&self, a: bool) -> SepDegree {
        let n = self.arity();
        let full = (1usize << n) - 1;
        // For each preimage point: the set of coordinates where it is not `a`.
        let covers: Vec<usize> = (0..self.rows())
            .filter(|&row| self.value(row) == a)
            .map(|row| if a { !row & full } else { row })
            .collect();
        // BFS over the union masks reachable with k points.
        let mut best = vec![usize::MAX; full + 1];
        best[0] = 0;
        let mut frontier = vec![0usize];
        let mut steps = 0;
        while !frontier.is_empty() && best[full] == usize::MAX {
            steps += 1;
            let mut next = Vec::new();
            for &mask in &frontier {
                for &c in &covers {
                    let m = mask | c;
                    if best[m] == usize::MAX {
                        best[m] = steps;
                        next.push(m);
                    }
                }
            }
            frontier = next;
        }
        match best[full] {
            usize::MAX => SepDegree::Infinite,
            k if k <= 2 => SepDegree::None,
            k => SepDegree::Finite(k - 1),
        }
    }

    /// `f` is constant or the disjunction of a nonempty set of arguments.
    pub fn is_disjunction_or_constant(&self) -> bool {
        if self.is_constant() {
            return true;
        }
        if self.value(0) {
            return false;
        }
        let support = (0..self.arity())
            .filter(|&j| self.value(1 << j))
            .fold(0usize, |acc, j| acc | 1 << j);
        (0..self.rows()).all(|row| self.value(row) == (row & support != 0))
    }

    /// `f` is constant or the conjunction of a nonempty set of arguments.
    pub fn is_conjunction_or_constant(&self) -> bool {
        self.dual().is_disjunction_or_constant()
    }

    /// `f` depends on at most one argument.
    pub fn has_at_most_one_variable(&self) -> bool {
        self.essential_vars().len() <= 1
    }

    /// `f` is constant or a projection.
    pub fn is_projection_or_constant(&self) -> bool {
        self.is_constant() || (0..self.arity()).any(|i| self.table == projection_table(self.arity(), i))
    }

    /// Evaluates a Post property.
    pub fn has_property(&self, p: PostProperty) -> bool {
        match p {
            PostProperty::BotReproducing => self.is_bot_reproducing(),
            PostProperty::TopReproducing => self.is_top_reproducing(),
            PostProperty::Monotone => self.is_monotone(),
            PostProperty::SelfDual => self.is_self_dual(),
            PostProperty::Linear => self.is_linear(),
            PostProperty::BotSeparating => self.separation_degree(false) == SepDegree::Infinite,
            PostProperty::TopSeparating => self.separation_degree(true) == SepDegree::Infinite,
            PostProperty::BotSeparatingDeg(k) => self.separation_degree(false).at_least(k),
            PostProperty::TopSeparatingDeg(k) => self.separation_degree(true).at_least(k),
            PostProperty::DisjunctionOrConstant => self.is_disjunction_or_constant(),
            PostProperty::ConjunctionOrConstant => self.is_conjunction_or_constant(),
            PostProperty::AtMostOneVariable => self.has_at_most_one_variable(),
            PostProperty::ProjectionOrConstant => self.is_projection_or_constant(),
        }
    }
}

/// A connective: a function together with the name used to print it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Connective {
    pub name: String,
    pub func: BoolFn,
}

impl Connective {
    pub fn new(name: impl Into<String>, func: BoolFn) -> Self {
        Connective {
            name: name.into(),
            func,
        }
    }

    /// A catalog connective, named by its catalog name.
    pub fn named(name: &str) -> Result<Self> {
        let func = BoolFn::named(name, &[])?;
        Ok(Connective::new(func.display_name(), func))
    }

    /// Wraps a function under its display name.
    pub fn of(func: BoolFn) -> Self {
        Connective::new(func.display_name(), func)
    }

    pub fn arity(&self) -> usize {
        self.func.arity()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(name: &str) -> BoolFn {
        BoolFn::named(name, &[]).unwrap()
    }

    #[test]
    fn make_matches_packed_tables() {
        assert_eq!(BoolFn::make(1, &[false, true]).unwrap(), BoolFn::projection(1, 0).unwrap());
        assert_eq!(BoolFn::make(2, &[false, false, false, true]).unwrap(), f("and"));
        assert_eq!(BoolFn::make(2, &[false, true, true, false]).unwrap(), f("xor"));
        assert_eq!(f("and").to_literal(), "2:8");
    }

    #[test]
    fn make_rejects_bad_input() {
        assert!(matches!(BoolFn::make(0, &[]), Err(Error::ArityOutOfRange { .. })));
        assert!(matches!(BoolFn::make(7, &[false; 128]), Err(Error::ArityOutOfRange { .. })));
        assert!(matches!(
            BoolFn::make(2, &[true, false]),
            Err(Error::TableLengthMismatch { .. })
        ));
        assert!(BoolFn::from_table(1, 0b100).is_err());
    }

    #[test]
    fn named_functions() {
        let maj = f("maj");
        assert_eq!(maj.arity(), 3);
        for row in 0..8usize {
            assert_eq!(maj.value(row), row.count_ones() >= 2);
        }
        assert_eq!(BoolFn::named("threshold", &[3, 2]).unwrap(), maj);
        let top = f("top");
        assert_eq!((top.arity(), top.table()), (1, 0b11));
        assert!(matches!(BoolFn::named("nand3", &[]), Err(Error::UnknownName(_))));
        assert!(matches!(
            BoolFn::named("threshold", &[2, 3]),
            Err(Error::BadThresholdParams { .. })
        ));
    }

    #[test]
    fn eval_examples() {
        assert!(f("nimp").eval(&[true, false]).unwrap());
        assert!(f("xor3").eval(&[true, true, true]).unwrap());
        assert!(!f("aimp").eval(&[true, true, false]).unwrap());
        assert!(matches!(f("and").eval(&[true]), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn property_examples() {
        assert!(f("and").has_property(PostProperty::Monotone));
        assert!(f("nimp").has_property(PostProperty::TopSeparatingDeg(2)));
        assert!(!f("xor").has_property(PostProperty::Monotone));
        assert!(f("maj").is_self_dual());
        assert!(f("xor3").is_linear());
        assert!(!f("maj").is_linear());
    }

    #[test]
    fn separation_degree_examples() {
        assert_eq!(f("imp").separation_degree(false), SepDegree::Infinite);
        assert_eq!(BoolFn::threshold(3, 2).unwrap().separation_degree(true), SepDegree::Finite(2));
        assert_eq!(f("xor").separation_degree(false), SepDegree::None);
        // T^{n+1}_n is 1-separating of degree exactly n.
        for n in 2..=5 {
            assert_eq!(BoolFn::threshold(n + 1, n).unwrap().separation_degree(true), SepDegree::Finite(n));
            assert_eq!(BoolFn::threshold(n + 1, 2).unwrap().separation_degree(false), SepDegree::Finite(n));
        }
        // Constants: the empty preimage is separated vacuously.
        assert_eq!(f("top").separation_degree(false), SepDegree::Infinite);
        assert_eq!(f("top").separation_degree(true), SepDegree::None);
    }

    #[test]
    fn literals_round_trip() {
        for entry in CATALOG {
            let g = entry.build();
            assert_eq!(BoolFn::parse_literal(&g.to_literal()).unwrap(), g);
            assert_eq!(g.catalog_name(), Some(entry.name));
        }
        assert!(BoolFn::parse_literal("2").is_err());
        assert!(BoolFn::parse_literal("2:zz").is_err());
        assert!(BoolFn::parse_literal("1:7").is_err());
    }

    #[test]
    fn display_names_cover_thresholds() {
        assert_eq!(BoolFn::threshold(4, 2).unwrap().display_name(), "threshold(4,2)");
        assert_eq!(f("maj").display_name(), "maj");
    }
}
