//! Complexity classification of reasoning problems for basis-restricted
//! fragments.
//!
//! Each problem is decided by an ordered list of `⪯` tests against fixed
//! threshold bases; the first matching case determines the [`Verdict`].
//! Because only [`leq`](crate::clones::leq) is consulted, two bases that
//! generate the same clone always receive the same verdict.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::clones::{leq_with, Basis};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::modal::{Logic, ModalOps};

/// A classified decision or learning problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Problem {
    Sat,
    SatFine,
    Taut,
    Count,
    Implication,
    Equivalence,
    Isomorphism,
    EvaluationTree,
    Minimization,
    Expressibility,
    UniqueCharFinite,
    UniqueCharPoly,
    LearnMq,
    ModalConsistency,
    TboxSat,
    ModalTeachability,
}

impl Problem {
    pub const ALL: [Problem; 16] = [
        Problem::Sat,
        Problem::SatFine,
        Problem::Taut,
        Problem::Count,
        Problem::Implication,
        Problem::Equivalence,
        Problem::Isomorphism,
        Problem::EvaluationTree,
        Problem::Minimization,
        Problem::Expressibility,
        Problem::UniqueCharFinite,
        Problem::UniqueCharPoly,
        Problem::LearnMq,
        Problem::ModalConsistency,
        Problem::TboxSat,
        Problem::ModalTeachability,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Problem::Sat => "SAT",
            Problem::SatFine => "SAT_FINE",
            Problem::Taut => "TAUT",
            Problem::Count => "COUNT",
            Problem::Implication => "IMPLICATION",
            Problem::Equivalence => "EQUIVALENCE",
            Problem::Isomorphism => "ISOMORPHISM",
            Problem::EvaluationTree => "EVALUATION_TREE",
            Problem::Minimization => "MINIMIZATION",
            Problem::Expressibility => "EXPRESSIBILITY",
            Problem::UniqueCharFinite => "UNIQUE_CHAR_FINITE",
            Problem::UniqueCharPoly => "UNIQUE_CHAR_POLY",
            Problem::LearnMq => "LEARN_MQ",
            Problem::ModalConsistency => "MODAL_CONSISTENCY",
            Problem::TboxSat => "TBOX_SAT",
            Problem::ModalTeachability => "MODAL_TEACHABILITY",
        }
    }

    /// Whether the problem concerns modal fragments.
    pub fn is_modal(self) -> bool {
        matches!(
            self,
            Problem::ModalConsistency | Problem::TboxSat | Problem::ModalTeachability
        )
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_uppercase().replace('-', "_");
        Problem::ALL
            .iter()
            .copied()
            .find(|p| p.as_str() == key)
            .ok_or_else(|| Error::UnknownProblem(s.to_string()))
    }
}

/// Complexity classes and answers used in verdicts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Class {
    Trivial,
    ConstantTime,
    AC0,
    AC0_2,
    NLOGTIME,
    CoNLOGTIME,
    NC1,
    Mod2Equiv,
    L,
    NL,
    ParityL,
    P,
    NP,
    CoNP,
    Theta2P,
    PSPACE,
    EXPTIME,
    SharpP,
    Yes,
    No,
    Open,
}

impl Class {
    pub fn as_str(self) -> &'static str {
        match self {
            Class::Trivial => "Trivial",
            Class::ConstantTime => "ConstantTime",
            Class::AC0 => "AC0",
            Class::AC0_2 => "AC0_2",
            Class::NLOGTIME => "NLOGTIME",
            Class::CoNLOGTIME => "coNLOGTIME",
            Class::NC1 => "NC1",
            Class::Mod2Equiv => "MOD2_equiv",
            Class::L => "L",
            Class::NL => "NL",
            Class::ParityL => "ParityL",
            Class::P => "P",
            Class::NP => "NP",
            Class::CoNP => "coNP",
            Class::Theta2P => "Theta2P",
            Class::PSPACE => "PSPACE",
            Class::EXPTIME => "EXPTIME",
            Class::SharpP => "SharpP",
            Class::Yes => "Yes",
            Class::No => "No",
            Class::Open => "Open",
        }
    }

    /// Classes strictly inside logspace, for which the choice of reduction matters.
    fn below_logspace(self) -> bool {
        matches!(
            self,
            Class::ConstantTime
                | Class::AC0
                | Class::AC0_2
                | Class::NLOGTIME
                | Class::CoNLOGTIME
                | Class::NC1
                | Class::Mod2Equiv
        )
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Class {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// How tightly a verdict pins the complexity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Completeness {
    /// Complete for the class.
    Complete,
    /// Hard for the class; no matching upper bound is known here.
    HardOnly,
    /// In the class; no matching lower bound is claimed.
    MembershipOnly,
    /// An exact answer (a yes/no property, a tractability statement, or a gap).
    Exact,
}

impl fmt::Display for Completeness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Completeness::Complete => "complete",
            Completeness::HardOnly => "hard_only",
            Completeness::MembershipOnly => "membership_only",
            Completeness::Exact => "exact",
        })
    }
}

/// A classification result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub class: Class,
    pub completeness: Completeness,
    pub citation: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} [{}]", self.class, self.completeness, self.citation)?;
        if let Some(n) = &self.note {
            write!(f, " ({n})")?;
        }
        Ok(())
    }
}

/// The literature results behind the decision lists, one label per problem.
pub const CITATIONS: &[(Problem, &str)] = &[
    (Problem::Sat, "Lewis: satisfiability of Boolean fragments"),
    (Problem::SatFine, "Reith: fine-grained satisfiability of Boolean fragments"),
    (Problem::Taut, "tautology of Boolean fragments (dual of Lewis)"),
    (Problem::Count, "Reith: model counting for Boolean fragments"),
    (Problem::Implication, "implication problem for Boolean fragments"),
    (Problem::Equivalence, "equivalence problem for Boolean fragments"),
    (Problem::Isomorphism, "formula isomorphism for Boolean fragments"),
    (Problem::EvaluationTree, "Schnoor: formula evaluation for Boolean fragments"),
    (Problem::Minimization, "formula minimization for Boolean fragments"),
    (Problem::Expressibility, "Böhler–Schnoor: expressibility of functions by fragment formulas"),
    (Problem::UniqueCharFinite, "finite unique characterizations for Boolean fragments"),
    (Problem::UniqueCharPoly, "polynomial-size unique characterizations for Boolean fragments"),
    (Problem::LearnMq, "exact learning with membership queries for Boolean fragments"),
    (Problem::ModalConsistency, "Hemaspaandra–Schnoor–Schnoor: consistency for simple modal fragments"),
    (Problem::TboxSat, "Meier et al.: TBox satisfiability for simple multi-modal fragments"),
    (Problem::ModalTeachability, "unique characterization and learnability for simple modal fragments"),
];

/// The citation label attached to every verdict for `p`.
pub fn citation(p: Problem) -> &'static str {
    CITATIONS
        .iter()
        .find(|(q, _)| *q == p)
        .map(|(_, c)| *c)
        .expect("every problem has a citation")
}

const REDUCTION_CAVEAT: &str = "under suitable reductions";

fn verdict(p: Problem, class: Class, completeness: Completeness) -> Verdict {
    Verdict {
        class,
        completeness,
        citation: citation(p),
        note: class.below_logspace().then(|| REDUCTION_CAVEAT.to_string()),
    }
}

fn with_note(mut v: Verdict, note: &str) -> Verdict {
    v.note = Some(match v.note {
        Some(n) => format!("{n}; {note}"),
        None => note.to_string(),
    });
    v
}

fn yes_no(p: Problem, yes: bool) -> Verdict {
    verdict(p, if yes { Class::Yes } else { Class::No }, Completeness::Exact)
}

/// `⪯` tests of a fixed basis against threshold bases.
struct Tests<'a> {
    o: &'a Basis,
    cfg: &'a Config,
}

fn basis(names: &[&str]) -> Basis {
    Basis::from_names(names).expect("threshold bases use catalog names")
}

impl Tests<'_> {
    /// `O ⪯ names`.
    fn le(&self, names: &[&str]) -> Result<bool> {
        leq_with(self.o, &basis(names), self.cfg)
    }

    /// `names ⪯ O`.
    fn ge(&self, names: &[&str]) -> Result<bool> {
        leq_with(&basis(names), self.o, self.cfg)
    }

    /// `O ≡ names`.
    fn eqv(&self, names: &[&str]) -> Result<bool> {
        Ok(self.le(names)? && self.ge(names)?)
    }

    fn le_any(&self, options: &[&[&str]]) -> Result<bool> {
        for names in options {
            if self.le(names)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Classifies a propositional problem for the fragment with basis `o`.
pub fn classify_prop(problem: Problem, o: &Basis) -> Result<Verdict> {
    classify_prop_with(problem, o, &Config::default())
}

/// [`classify_prop`] with explicit limits.
pub fn classify_prop_with(problem: Problem, o: &Basis, cfg: &Config) -> Result<Verdict> {
    use Class::*;
    use Completeness::*;
    if problem.is_modal() {
        return Err(Error::BadModalSet(format!(
            "{problem} is a modal problem; use classify_modal"
        )));
    }
    check_arities(o, cfg)?;
    let t = Tests { o, cfg };
    let v = |c, k| verdict(problem, c, k);
    Ok(match problem {
        Problem::Sat => {
            if t.ge(&["nimp"])? {
                v(NP, Complete)
            } else {
                v(P, Exact)
            }
        }
        Problem::SatFine => {
            let r = if t.le_any(&[&["or", "eq"], &["maj", "not"], &["not", "top", "bot"]])? {
                v(L, MembershipOnly)
            } else if t.le_any(&[&["and", "top", "bot"], &["or", "top", "bot"]])? {
                v(NL, Complete)
            } else if t.le(&["xor", "top", "bot"])? {
                v(ParityL, Complete)
            } else if t.le(&["and", "or", "top", "bot"])? {
                v(P, Complete)
            } else {
                v(NP, Complete)
            };
            with_note(
                r,
                "representation: the refinement is stated for tree representations although introduced for DAG representations",
            )
        }
        Problem::Taut => {
            if t.ge(&["imp"])? {
                v(CoNP, Complete)
            } else {
                v(P, Exact)
            }
        }
        Problem::Count => {
            if t.le_any(&[
                &["and", "top", "bot"],
                &["or", "top", "bot"],
                &["xor", "bot"],
                &["maj", "not"],
            ])? {
                v(P, Exact)
            } else {
                v(SharpP, Complete)
            }
        }
        Problem::Implication => {
            if t.ge(&["or_and"])? || t.ge(&["and_or"])? || t.ge(&["maj"])? {
                v(CoNP, Complete)
            } else if t.ge(&["xor"])? && t.le(&["eq", "bot"])? {
                v(ParityL, Complete)
            } else if t.ge(&["not"])? && t.le(&["not", "bot"])? {
                with_note(v(AC0_2, MembershipOnly), "MOD2-hard")
            } else {
                v(AC0, MembershipOnly)
            }
        }
        Problem::Equivalence => {
            if t.ge(&["or_and"])? || t.ge(&["and_or"])? || t.ge(&["maj"])? {
                v(CoNP, Complete)
            } else if t.ge(&["not"])? && t.le(&["not", "bot"])? {
                v(AC0_2, Complete)
            } else {
                v(AC0, MembershipOnly)
            }
        }
        Problem::Isomorphism => {
            if t.le_any(&[&["or", "top", "bot"], &["and", "top", "bot"], &["xor", "top"]])? {
                v(L, MembershipOnly)
            } else {
                v(CoNP, HardOnly)
            }
        }
        Problem::EvaluationTree => {
            let mut with_consts = o.clone();
            with_consts.push(crate::boolfn::Connective::named("top")?);
            with_consts.push(crate::boolfn::Connective::named("bot")?);
            let t2 = Tests { o: &with_consts, cfg };
            if t2.eqv(&["top", "bot"])? {
                v(ConstantTime, Exact)
            } else if t2.eqv(&["or", "top", "bot"])? {
                v(NLOGTIME, Complete)
            } else if t2.eqv(&["and", "top", "bot"])? {
                v(CoNLOGTIME, Complete)
            } else if t2.ge(&["not", "top", "bot"])? && t2.le(&["xor", "top"])? {
                v(Mod2Equiv, Exact)
            } else {
                v(NC1, Complete)
            }
        }
        Problem::Minimization => {
            if t.le_any(&[&["or", "top", "bot"], &["and", "top", "bot"], &["xor", "top"]])? {
                v(P, Exact)
            } else {
                v(CoNP, HardOnly)
            }
        }
        Problem::Expressibility => {
            if t.ge(&["and", "xor"])? || t.ge(&["or", "eq"])? {
                v(P, Exact)
            } else {
                v(NP, Complete)
            }
        }
        Problem::UniqueCharFinite => {
            yes_no(problem, t.le_any(&[&["and", "or", "top", "bot"], &["not", "bot"]])?)
        }
        Problem::UniqueCharPoly => yes_no(
            problem,
            t.le_any(&[&["and", "top", "bot"], &["or", "top", "bot"], &["not", "bot"]])?,
        ),
        Problem::LearnMq => yes_no(
            problem,
            t.le_any(&[&["and", "top", "bot"], &["or", "top", "bot"], &["xor", "top"]])?,
        ),
        Problem::ModalConsistency | Problem::TboxSat | Problem::ModalTeachability => {
            unreachable!("modal problems are rejected above")
        }
    })
}

fn check_arities(o: &Basis, cfg: &Config) -> Result<()> {
    let a = o.max_arity();
    if a > cfg.arity_cap {
        return Err(Error::ArityOutOfRange {
            arity: a,
            cap: cfg.arity_cap,
        });
    }
    Ok(())
}

/// A simple modal fragment `Φ = M ∪ O` for the `⪯` tests below.
struct Phi<'a> {
    m: ModalOps,
    o: &'a Basis,
}

/// `(M1, O1) ⪯ (M2, O2)`: every connective of `O1` is expressible over
/// `O2`, and every modal operator of `M1` is in `M2` or is obtained from its
/// dual through a negation expressible over `O2`.
fn modal_le(m1: ModalOps, o1: &Basis, phi2: &Phi<'_>, cfg: &Config) -> Result<bool> {
    if !leq_with(o1, phi2.o, cfg)? {
        return Ok(false);
    }
    let has_not = || leq_with(&basis(&["not"]), phi2.o, cfg);
    let diamond_ok = !m1.diamond || phi2.m.diamond || (phi2.m.boxed && has_not()?);
    let box_ok = !m1.boxed || phi2.m.boxed || (phi2.m.diamond && has_not()?);
    Ok(diamond_ok && box_ok)
}

/// `names ∪ M1 ⪯ Φ`.
fn phi_ge(phi: &Phi<'_>, m1: ModalOps, names: &[&str], cfg: &Config) -> Result<bool> {
    modal_le(m1, &basis(names), phi, cfg)
}

/// `Φ ⪯ names ∪ M2`.
fn phi_le(phi: &Phi<'_>, m2: ModalOps, names: &[&str], cfg: &Config) -> Result<bool> {
    let b = basis(names);
    modal_le(phi.m, phi.o, &Phi { m: m2, o: &b }, cfg)
}

/// Classifies a modal problem for the simple fragment `M ∪ O` over `logic`.
pub fn classify_modal(problem: Problem, m: ModalOps, o: &Basis, logic: &str) -> Result<Verdict> {
    classify_modal_with(problem, m, o, logic, &Config::default())
}

/// [`classify_modal`] with explicit limits.
pub fn classify_modal_with(
    problem: Problem,
    m: ModalOps,
    o: &Basis,
    logic: &str,
    cfg: &Config,
) -> Result<Verdict> {
    use Class::*;
    use Completeness::*;
    if !problem.is_modal() {
        return Err(Error::BadModalSet(format!(
            "{problem} is a propositional problem; use classify_prop"
        )));
    }
    check_arities(o, cfg)?;
    let logic: Logic = logic.parse()?;
    let v = |c, k| verdict(problem, c, k);
    let phi = Phi { m, o };
    let t = Tests { o, cfg };
    let both = ModalOps::BOTH;
    let none = ModalOps::NONE;
    match problem {
        Problem::ModalConsistency => {
            if m.is_empty() {
                return Err(Error::BadModalSet(
                    "consistency is classified for fragments with at least one modal operator".into(),
                ));
            }
            match logic {
                Logic::K => {
                    if phi_ge(&phi, none, &["nimp"], cfg)? || phi_ge(&phi, both, &["and_or", "bot"], cfg)? {
                        Ok(v(PSPACE, Complete))
                    } else if phi_ge(&phi, both, &["and"], cfg)?
                        && phi_le(&phi, both, &["and", "top", "bot"], cfg)?
                    {
                        Ok(v(CoNP, Complete))
                    } else {
                        Ok(v(P, Exact))
                    }
                }
                Logic::KD => Ok(with_note(v(Open, Exact), "classification not stated here")),
                Logic::T | Logic::K4 | Logic::S4 | Logic::S5 => {
                    let gap = phi_ge(&phi, none, &["xor"], cfg)? && phi_le(&phi, both, &["xor", "bot"], cfg)?;
                    Ok(with_note(
                        v(Open, Exact),
                        if gap {
                            "affine gap: left open in the literature"
                        } else {
                            "classification not stated here"
                        },
                    ))
                }
                other => Err(Error::UnsupportedLogic(other.name().into())),
            }
        }
        Problem::TboxSat => {
            if logic != Logic::KOmega {
                return Err(Error::UnsupportedLogic(logic.name().into()));
            }
            Ok(match (m.diamond, m.boxed) {
                (false, false) => {
                    if t.ge(&["and", "or", "top", "bot"])? || t.ge(&["xnor3"])? {
                        v(NP, Complete)
                    } else if t.eqv(&["and", "top", "bot"])? || t.eqv(&["or", "top", "bot"])? {
                        v(P, Complete)
                    } else if (t.ge(&["not"])? && t.le(&["not", "top", "bot"])?) || t.eqv(&["top", "bot"])? {
                        v(NL, Complete)
                    } else {
                        v(Trivial, Exact)
                    }
                }
                (true, false) => {
                    if t.ge(&["or", "top", "bot"])? || t.ge(&["not"])? {
                        v(EXPTIME, Complete)
                    } else if t.ge(&["top", "bot"])? && t.le(&["and", "top", "bot"])? {
                        v(P, Complete)
                    } else {
                        v(Trivial, Exact)
                    }
                }
                (false, true) => {
                    if t.ge(&["and", "top", "bot"])? || t.ge(&["not"])? {
                        v(EXPTIME, Complete)
                    } else if t.ge(&["top", "bot"])? && t.le(&["or", "top", "bot"])? {
                        v(P, Complete)
                    } else {
                        v(Trivial, Exact)
                    }
                }
                (true, true) => {
                    if t.ge(&["top", "bot"])? || t.ge(&["not"])? {
                        v(EXPTIME, Complete)
                    } else {
                        v(Trivial, Exact)
                    }
                }
            })
        }
        Problem::ModalTeachability => {
            if m.is_empty() {
                return Err(Error::BadModalSet(
                    "teachability is classified for fragments with at least one modal operator".into(),
                ));
            }
            if logic != Logic::K {
                return Err(Error::UnsupportedLogic(logic.name().into()));
            }
            let options: [(ModalOps, &[&str]); 6] = [
                (ModalOps::DIAMOND, &["and", "or", "top", "bot"]),
                (ModalOps::BOX, &["and", "or", "top", "bot"]),
                (both, &["and", "or"]),
                (both, &["not", "bot"]),
                (both, &["and", "top"]),
                (both, &["or", "bot"]),
            ];
            let mut yes = false;
            for (m2, names) in options {
                if phi_le(&phi, m2, names, cfg)? {
                    yes = true;
                    break;
                }
            }
            Ok(yes_no(problem, yes))
        }
        _ => unreachable!("propositional problems are rejected above"),
    }
}
