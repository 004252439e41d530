//! Recursive-descent parsers for the three formula grammars.
//!
//! ```text
//! formula   := conj
//! conj      := unary { "&" unary }                  left associative
//! unary     := "!" unary
//!            | "<" IDENT ">" RATIONAL unary         binds tighter than "&"
//!            | atom
//! atom      := "T" | "(" formula ")" | "eps>=" RATIONAL
//!            | "can(" IDENT ")" | "delta(" IDENT ")"
//!
//! stformula := the same with "<" IDENT ">st" RATIONAL and only T, "(",
//!              conjunction
//!
//! qformula  := "~" qformula | "<" IDENT ">c" qformula | qpostfix
//! qpostfix  := qprimary { "(+)" RATIONAL }
//! qprimary  := "1" | "(" qformula ")" | "min(" qformula {"," qformula} ")"
//!
//! RATIONAL  := INT "/" INT | DECIMAL
//! ```

use num_traits::Zero;

use crate::error::{LmpError, Result};
use crate::num::{parse_rational, Rational};

use super::{Formula, QFormula, StateFormula};

struct Scanner<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(src: &'a str) -> Self {
        Scanner { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{token}`")))
        }
    }

    fn error(&self, message: &str) -> LmpError {
        LmpError::Parse(format!("at byte {}: {message}", self.pos))
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .chars()
            .take_while(|c| c.is_ascii_alphanumeric() || *c == '_')
            .map(char::len_utf8)
            .sum::<usize>();
        if len == 0 {
            return Err(self.error("expected an identifier"));
        }
        let ident = rest[..len].to_string();
        self.pos += len;
        Ok(ident)
    }

    fn rational(&mut self) -> Result<Rational> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .chars()
            .take_while(|c| c.is_ascii_digit() || *c == '/' || *c == '.')
            .count();
        if len == 0 {
            return Err(self.error("expected a rational number"));
        }
        let text = &rest[..len];
        let value = parse_rational(text).map_err(|e| self.error(&e))?;
        self.pos += len;
        Ok(value)
    }

    /// A probability threshold: a rational restricted to [0, 1].
    fn probability(&mut self) -> Result<Rational> {
        let value = self.rational()?;
        if value < Rational::zero() || value > Rational::from_integer(1.into()) {
            return Err(self.error("threshold must lie in [0, 1]"));
        }
        Ok(value)
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.src.len()
    }

    /// `T` must not be the head of a longer identifier.
    fn eat_keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        if rest.starts_with(word) {
            let after = rest[word.len()..].chars().next();
            if !matches!(after, Some(c) if c.is_ascii_alphanumeric() || c == '_') {
                self.pos += word.len();
                return true;
            }
        }
        false
    }
}

/// Parse a distribution-logic formula.
pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut scanner = Scanner::new(text);
    let formula = conj(&mut scanner, false)?;
    if !scanner.at_end() {
        return Err(scanner.error("trailing input"));
    }
    Ok(formula)
}

fn conj(s: &mut Scanner, under_diamond: bool) -> Result<Formula> {
    let mut parts = vec![unary(s, under_diamond)?];
    while s.eat("&") {
        parts.push(unary(s, under_diamond)?);
    }
    if parts.len() == 1 {
        Ok(parts.pop().unwrap())
    } else {
        Ok(Formula::And(parts))
    }
}

fn unary(s: &mut Scanner, under_diamond: bool) -> Result<Formula> {
    if s.eat("!") {
        return Ok(Formula::Not(Box::new(unary(s, under_diamond)?)));
    }
    if s.eat("<") {
        let action = s.ident()?;
        s.expect(">")?;
        let threshold = s.probability()?;
        let inner = unary(s, true)?;
        return Ok(Formula::Diamond {
            action,
            threshold,
            inner: Box::new(inner),
        });
    }
    atom(s, under_diamond)
}

fn atom(s: &mut Scanner, under_diamond: bool) -> Result<Formula> {
    if s.eat("eps>=") {
        if under_diamond {
            return Err(LmpError::Scope(format!(
                "at byte {}: `eps>=` may not appear under a diamond",
                s.pos
            )));
        }
        return Ok(Formula::EpsAtLeast(s.probability()?));
    }
    if s.eat("can(") {
        let action = s.ident()?;
        s.expect(")")?;
        return Ok(Formula::Can(action));
    }
    if s.eat("delta(") {
        let action = s.ident()?;
        s.expect(")")?;
        return Ok(Formula::Delta(action));
    }
    if s.eat_keyword("T") {
        return Ok(Formula::True);
    }
    if s.eat("(") {
        let inner = conj(s, under_diamond)?;
        s.expect(")")?;
        return Ok(inner);
    }
    Err(s.error("expected a formula"))
}

/// Parse a state-logic formula.
pub fn parse_state_formula(text: &str) -> Result<StateFormula> {
    let mut scanner = Scanner::new(text);
    let formula = st_conj(&mut scanner)?;
    if !scanner.at_end() {
        return Err(scanner.error("trailing input"));
    }
    Ok(formula)
}

fn st_conj(s: &mut Scanner) -> Result<StateFormula> {
    let mut parts = vec![st_unary(s)?];
    while s.eat("&") {
        parts.push(st_unary(s)?);
    }
    if parts.len() == 1 {
        Ok(parts.pop().unwrap())
    } else {
        Ok(StateFormula::And(parts))
    }
}

fn st_unary(s: &mut Scanner) -> Result<StateFormula> {
    if s.eat("<") {
        let action = s.ident()?;
        s.expect(">st")?;
        // The state logic allows any rational threshold; values above one
        // are simply unsatisfiable.
        let threshold = s.rational()?;
        let inner = st_unary(s)?;
        return Ok(StateFormula::DiamondSt {
            action,
            threshold,
            inner: Box::new(inner),
        });
    }
    if s.eat_keyword("T") {
        return Ok(StateFormula::True);
    }
    if s.eat("(") {
        let inner = st_conj(s)?;
        s.expect(")")?;
        return Ok(inner);
    }
    Err(s.error("expected a state formula"))
}

/// Parse a quantitative-logic formula.
pub fn parse_qformula(text: &str) -> Result<QFormula> {
    let mut scanner = Scanner::new(text);
    let formula = q_prefix(&mut scanner)?;
    if !scanner.at_end() {
        return Err(scanner.error("trailing input"));
    }
    Ok(formula)
}

fn q_prefix(s: &mut Scanner) -> Result<QFormula> {
    if s.eat("~") {
        return Ok(QFormula::Neg(Box::new(q_prefix(s)?)));
    }
    if s.eat("<") {
        let action = s.ident()?;
        s.expect(">c")?;
        return Ok(QFormula::DiamondC(action, Box::new(q_prefix(s)?)));
    }
    q_postfix(s)
}

fn q_postfix(s: &mut Scanner) -> Result<QFormula> {
    let mut base = q_primary(s)?;
    while s.eat("(+)") {
        let p = s.probability()?;
        base = QFormula::OPlus(Box::new(base), p);
    }
    Ok(base)
}

fn q_primary(s: &mut Scanner) -> Result<QFormula> {
    if s.eat("min(") {
        let mut parts = vec![q_prefix(s)?];
        while s.eat(",") {
            parts.push(q_prefix(s)?);
        }
        s.expect(")")?;
        return Ok(QFormula::Conj(parts));
    }
    if s.eat("(") {
        let inner = q_prefix(s)?;
        s.expect(")")?;
        return Ok(inner);
    }
    if s.eat("1") {
        return Ok(QFormula::One);
    }
    Err(s.error("expected a quantitative formula"))
}
