//! Modal logics over subdistributions and states.
//!
//! Three languages share this module:
//!
//! - [`Formula`]: the distribution logic and its extensions. `T`,
//!   conjunction, the threshold diamond `<a>q phi` (the successor keeps
//!   mass at least `q` and satisfies `phi`), the top-level mass test
//!   `eps>=q`, and the extensions `can(a)`, `delta(a)`, negation.
//! - [`StateFormula`]: the state logic with `<a>st q phi`, satisfied at a
//!   state when some measurable set of `phi`-states receives mass at
//!   least `q`.
//! - [`QFormula`]: the quantitative logic whose formulas evaluate to
//!   values in `[0, 1]` and whose chain fragment attains the discounted
//!   trace distance.
//!
//! Thresholds are always exact rationals, regardless of the model's
//! numeric mode; float models compare masses against them with the global
//! slack. Conjunction is restricted to finite lists; the countable cases
//! of the source definitions are approximated by finite truncation.
//!
//! `Display` renders formulas back into the concrete grammar accepted by
//! the parsers.

mod eval;
mod parse;

pub use eval::{
    distinguishing_from_basis, embed_state_formula, eval_formula, eval_qformula,
    eval_state_formula, find_distinguishing_formula, logical_distance_lower, sat_states, to_cnf,
};
pub use parse::{parse_formula, parse_qformula, parse_state_formula};

use std::fmt;

use num_traits::One;

use crate::num::Rational;

fn fmt_threshold(q: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

/// Distribution-logic formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    True,
    And(Vec<Formula>),
    /// `<a>q phi`: after `a` the successor has mass >= q and satisfies phi.
    Diamond {
        action: String,
        threshold: Rational,
        inner: Box<Formula>,
    },
    /// `eps>=q`: the current mass is at least q. Never nested under a
    /// diamond.
    EpsAtLeast(Rational),
    /// `can(a)`: the successor under `a` has positive mass.
    Can(String),
    /// `delta(a)`: the successor under `a` has zero mass.
    Delta(String),
    Not(Box<Formula>),
}

impl Formula {
    /// Chain `<a1>0 ... <ak-1>0 <ak>q T` testing mass >= q after a word.
    pub fn threshold_chain(word: &crate::model::Word, threshold: Rational) -> Formula {
        if word.is_empty() {
            return Formula::EpsAtLeast(threshold);
        }
        let mut formula = Formula::True;
        for (i, action) in word.0.iter().enumerate().rev() {
            let q = if i + 1 == word.len() {
                threshold.clone()
            } else {
                Rational::from_integer(0.into())
            };
            formula = Formula::Diamond {
                action: action.clone(),
                threshold: q,
                inner: Box::new(formula),
            };
        }
        formula
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => write!(f, "T"),
            Formula::And(parts) => {
                for (i, part) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " & ")?;
                    }
                    if matches!(part, Formula::And(_)) {
                        write!(f, "({part})")?;
                    } else {
                        write!(f, "{part}")?;
                    }
                }
                Ok(())
            }
            Formula::Diamond {
                action,
                threshold,
                inner,
            } => {
                write!(f, "<{action}>")?;
                fmt_threshold(threshold, f)?;
                if matches!(**inner, Formula::And(_)) {
                    write!(f, " ({inner})")
                } else {
                    write!(f, " {inner}")
                }
            }
            Formula::EpsAtLeast(q) => {
                write!(f, "eps>=")?;
                fmt_threshold(q, f)
            }
            Formula::Can(a) => write!(f, "can({a})"),
            Formula::Delta(a) => write!(f, "delta({a})"),
            Formula::Not(inner) => {
                if matches!(**inner, Formula::And(_)) {
                    write!(f, "!({inner})")
                } else {
                    write!(f, "!{inner}")
                }
            }
        }
    }
}

/// State-logic formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StateFormula {
    True,
    And(Vec<StateFormula>),
    /// `<a>st q phi`: some measurable set of phi-states gets mass >= q.
    DiamondSt {
        action: String,
        threshold: Rational,
        inner: Box<StateFormula>,
    },
}

impl fmt::Display for StateFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateFormula::True => write!(f, "T"),
            StateFormula::And(parts) => {
                for (i, part) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " & ")?;
                    }
                    if matches!(part, StateFormula::And(_)) {
                        write!(f, "({part})")?;
                    } else {
                        write!(f, "{part}")?;
                    }
                }
                Ok(())
            }
            StateFormula::DiamondSt {
                action,
                threshold,
                inner,
            } => {
                write!(f, "<{action}>st ")?;
                fmt_threshold(threshold, f)?;
                if matches!(**inner, StateFormula::And(_)) {
                    write!(f, " ({inner})")
                } else {
                    write!(f, " {inner}")
                }
            }
        }
    }
}

/// Quantitative-logic formulas; each evaluates to a value in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QFormula {
    /// `1`: the total mass of the argument.
    One,
    /// `phi (+) p`: truncated addition `min(phi + p, 1)`.
    OPlus(Box<QFormula>, Rational),
    /// `~phi`: `1 - phi`.
    Neg(Box<QFormula>),
    /// `min(phi_1, ..., phi_k)`: pointwise minimum.
    Conj(Vec<QFormula>),
    /// `<a>c phi`: discount times phi of the successor under `a`.
    DiamondC(String, Box<QFormula>),
}

impl QFormula {
    /// Chain `<a1>c <a2>c ... 1` whose value is `c^|w|` times the trace
    /// mass after the word.
    pub fn chain(word: &crate::model::Word) -> QFormula {
        let mut formula = QFormula::One;
        for action in word.0.iter().rev() {
            formula = QFormula::DiamondC(action.clone(), Box::new(formula));
        }
        formula
    }
}

impl fmt::Display for QFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QFormula::One => write!(f, "1"),
            QFormula::OPlus(base, p) => {
                // The postfix binds tighter than the prefix operators, so
                // prefix bases need parentheses to survive a reparse.
                if matches!(**base, QFormula::Neg(_) | QFormula::DiamondC(..)) {
                    write!(f, "({base}) (+) ")?;
                } else {
                    write!(f, "{base} (+) ")?;
                }
                fmt_threshold(p, f)
            }
            QFormula::Neg(inner) => write!(f, "~{inner}"),
            QFormula::Conj(parts) => {
                write!(f, "min(")?;
                for (i, part) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{part}")?;
                }
                write!(f, ")")
            }
            QFormula::DiamondC(action, inner) => write!(f, "<{action}>c {inner}"),
        }
    }
}
