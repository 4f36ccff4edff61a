//! Text syntax for forests, decorated forests and expressions over them.
//!
//! ```text
//! expr      := term (("+" | "-") term)*
//! term      := (coeff "*")? factor ("*" factor)*      "*" is the algebra product
//! factor    := "P(" expr ")" | "(" expr ")" | decorated | forest
//! decorated := "{" forest ";" decolist "}"
//! decolist  := "1" | ident ("," ident)*
//! forest    := tree+                                 juxtaposition is concatenation
//! tree      := "o" | "[" forest "]"
//! coeff     := monomial sums over L, e.g. 2L^2-1, optionally parenthesized
//! ```
//!
//! Whitespace between tokens is ignored. A lone `-` before a factor is the
//! coefficient `-1`, and a lone `0` is the zero element.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{self, ForestSum};
use crate::coeff::{format_rational, scan_poly, LambdaPoly, Rational};
use crate::decorated::{
    diamond_decorated_sum, is_valid_symbol_name, rb_operator_decorated, DecoratedForest,
    DecoratedSum, DecorationError, Symbol,
};
use crate::forest::{Forest, Tree};
use crate::linear::{Coefficient, LinComb};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Decoration(#[from] DecorationError),
    #[error("forest literal {0} has more than one leaf and needs a decoration in a decorated expression")]
    UndecoratedLiteral(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TextError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("invalid JSON: {0}")]
    Json(String),
}

/// Parsed expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Zero,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Diamond(Box<Expr>, Box<Expr>),
    Scaled(LambdaPoly, Box<Expr>),
    Operator(Box<Expr>),
    Forest(Forest),
    Decorated(Forest, Vec<String>),
}

impl Expr {
    /// Whether any decorated literal occurs.
    pub fn is_decorated(&self) -> bool {
        match self {
            Expr::Zero | Expr::Forest(_) => false,
            Expr::Decorated(..) => true,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Diamond(a, b) => {
                a.is_decorated() || b.is_decorated()
            }
            Expr::Scaled(_, e) | Expr::Operator(e) => e.is_decorated(),
        }
    }

    /// Symbols used by decorated literals, in order of first appearance.
    pub fn symbols(&self) -> Vec<String> {
        fn walk(e: &Expr, out: &mut Vec<String>) {
            match e {
                Expr::Zero | Expr::Forest(_) => {}
                Expr::Decorated(_, d) => {
                    for s in d {
                        if !out.contains(s) {
                            out.push(s.clone());
                        }
                    }
                }
                Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Diamond(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                Expr::Scaled(_, e) | Expr::Operator(e) => walk(e, out),
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        let bytes = self.src.as_bytes();
        while bytes.get(self.pos).is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.as_bytes().get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", b as char)))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat(b'-') {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let coeff = self.coefficient()?;
        if let Some(Coeff::Zero) = coeff {
            return Ok(Expr::Zero);
        }
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = Expr::Diamond(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(match coeff {
            Some(Coeff::Poly(c)) => Expr::Scaled(c, Box::new(acc)),
            _ => acc,
        })
    }

    /// Tries `coeff "*"`, a lone `-`, or a lone `0`; restores the position
    /// when none applies.
    fn coefficient(&mut self) -> Result<Option<Coeff>, ParseError> {
        self.skip_ws();
        let start = self.pos;
        // parenthesized polynomial
        if self.eat(b'(') {
            if let Some((c, end)) = scan_poly(self.src, self.pos) {
                self.pos = end;
                if self.eat(b')') && self.eat(b'*') {
                    return Ok(Some(Coeff::Poly(c)));
                }
            }
            self.pos = start;
            return Ok(None);
        }
        if let Some((c, end)) = scan_poly(self.src, self.pos) {
            self.pos = end;
            if self.eat(b'*') {
                return Ok(Some(Coeff::Poly(c)));
            }
            if c.is_zero() && matches!(self.peek(), None | Some(b'+' | b'-' | b')')) {
                return Ok(Some(Coeff::Zero));
            }
            self.pos = start;
        }
        if self.eat(b'-') {
            return Ok(Some(match self.coefficient()? {
                Some(Coeff::Poly(c)) => Coeff::Poly(-c),
                Some(Coeff::Zero) => Coeff::Zero,
                None => Coeff::Poly(LambdaPoly::constant(-1)),
            }));
        }
        Ok(None)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(b'P') => {
                self.pos += 1;
                self.expect(b'(')?;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(Expr::Operator(Box::new(e)))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b'{') => {
                self.pos += 1;
                let f = self.forest()?;
                self.expect(b';')?;
                let decos = self.decolist()?;
                self.expect(b'}')?;
                Ok(Expr::Decorated(f, decos))
            }
            Some(b'o' | b'[') => Ok(Expr::Forest(self.forest()?)),
            Some(_) => Err(self.error("expected a forest, decorated forest, P(...) or (...)")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn forest(&mut self) -> Result<Forest, ParseError> {
        let mut trees = Vec::new();
        while let Some(t) = self.tree()? {
            trees.push(t);
        }
        Forest::new(trees).ok_or_else(|| self.error("expected a tree ('o' or '[')"))
    }

    fn tree(&mut self) -> Result<Option<Tree>, ParseError> {
        match self.peek() {
            Some(b'o') if !self.ident_char_at(self.pos + 1) || self.followed_by_tree() => {
                self.pos += 1;
                Ok(Some(Tree::leaf()))
            }
            Some(b'[') => {
                self.pos += 1;
                let inner = self.forest()?;
                self.expect(b']')?;
                Ok(Some(inner.graft()))
            }
            _ => Ok(None),
        }
    }

    fn ident_char_at(&self, pos: usize) -> bool {
        self.src
            .as_bytes()
            .get(pos)
            .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
    }

    /// `oo[o]` is three trees even though `oo` looks like an identifier.
    fn followed_by_tree(&self) -> bool {
        let rest = &self.src.as_bytes()[self.pos..];
        let run = rest
            .iter()
            .take_while(|b| b.is_ascii_alphanumeric() || **b == b'_')
            .count();
        rest[..run].iter().all(|b| *b == b'o')
    }

    fn decolist(&mut self) -> Result<Vec<String>, ParseError> {
        if self.peek() == Some(b'1') && !self.ident_char_at(self.pos + 1) {
            self.pos += 1;
            return Ok(Vec::new());
        }
        let mut out = vec![self.ident()?];
        while self.eat(b',') {
            out.push(self.ident()?);
        }
        Ok(out)
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.ident_char_at(self.pos) {
            self.pos += 1;
        }
        let name = &self.src[start..self.pos];
        if !is_valid_symbol_name(name) {
            self.pos = start;
            return Err(self.error(format!("invalid symbol name {name:?}")));
        }
        Ok(name.to_string())
    }
}

enum Coeff {
    Zero,
    Poly(LambdaPoly),
}

/// Result of evaluating an expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Forests(ForestSum),
    Decorated(DecoratedSum),
}

/// Evaluates in the forest algebra, or in the decorated algebra when the
/// expression contains a decorated literal.
pub fn evaluate(e: &Expr) -> Result<Value, EvalError> {
    if e.is_decorated() {
        evaluate_decorated(e).map(Value::Decorated)
    } else {
        Ok(Value::Forests(evaluate_forests(e)))
    }
}

pub fn evaluate_forests(e: &Expr) -> ForestSum {
    match e {
        Expr::Zero => ForestSum::zero(),
        Expr::Add(a, b) => evaluate_forests(a).add(&evaluate_forests(b)),
        Expr::Sub(a, b) => evaluate_forests(a).sub(&evaluate_forests(b)),
        Expr::Diamond(a, b) => algebra::diamond(&evaluate_forests(a), &evaluate_forests(b)),
        Expr::Scaled(c, a) => evaluate_forests(a).scale(c),
        Expr::Operator(a) => algebra::rb_operator(&evaluate_forests(a)),
        Expr::Forest(f) | Expr::Decorated(f, _) => ForestSum::basis(f.clone()),
    }
}

/// Evaluates in the decorated algebra; plain forest literals must have a
/// single leaf.
pub fn evaluate_decorated(e: &Expr) -> Result<DecoratedSum, EvalError> {
    Ok(match e {
        Expr::Zero => DecoratedSum::zero(),
        Expr::Add(a, b) => evaluate_decorated(a)?.add(&evaluate_decorated(b)?),
        Expr::Sub(a, b) => evaluate_decorated(a)?.sub(&evaluate_decorated(b)?),
        Expr::Diamond(a, b) => {
            diamond_decorated_sum(&evaluate_decorated(a)?, &evaluate_decorated(b)?)
        }
        Expr::Scaled(c, a) => evaluate_decorated(a)?.scale(c),
        Expr::Operator(a) => rb_operator_decorated(&evaluate_decorated(a)?),
        Expr::Forest(f) => {
            if f.leaf_count() != 1 {
                return Err(EvalError::UndecoratedLiteral(f.encoding()));
            }
            DecoratedSum::basis(DecoratedForest::undecorated(f.clone())?)
        }
        Expr::Decorated(f, names) => {
            let decos = names.iter().map(|n| Symbol::new(n)).collect();
            DecoratedSum::basis(DecoratedForest::new(f.clone(), decos)?)
        }
    })
}

/// Parses and evaluates.
pub fn eval_str(text: &str) -> Result<Value, TextError> {
    Ok(evaluate(&parse(text)?)?)
}

pub fn parse_forest_sum(text: &str) -> Result<ForestSum, TextError> {
    Ok(evaluate_forests(&parse(text)?))
}

pub fn parse_decorated_sum(text: &str) -> Result<DecoratedSum, TextError> {
    Ok(evaluate_decorated(&parse(text)?)?)
}

/// Output flavour.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Ascii,
    Latex,
}

/// A basis element that can be rendered.
pub trait RenderBasis {
    fn render(&self, format: Format) -> String;
}

impl RenderBasis for Forest {
    fn render(&self, format: Format) -> String {
        match format {
            Format::Ascii => self.encoding(),
            Format::Latex => latex_forest(self),
        }
    }
}

impl RenderBasis for DecoratedForest {
    fn render(&self, format: Format) -> String {
        let f = self.forest().render(format);
        if self.decorations().is_empty() {
            return f;
        }
        let names: Vec<&str> = self.decorations().iter().map(Symbol::name).collect();
        match format {
            Format::Ascii => format!("{{{f};{}}}", names.join(",")),
            Format::Latex => format!("({f}; {})", names.join(" \\otimes ")),
        }
    }
}

fn latex_tree(t: &Tree, out: &mut String) {
    if t.is_leaf() {
        out.push_str("\\bullet");
    } else {
        out.push_str("\\lfloor ");
        latex_trees(t.children(), out);
        out.push_str(" \\rfloor");
    }
}

fn latex_trees(ts: &[Tree], out: &mut String) {
    for (i, t) in ts.iter().enumerate() {
        if i > 0 {
            out.push_str(" \\sqcup ");
        }
        latex_tree(t, out);
    }
}

fn latex_forest(f: &Forest) -> String {
    let mut out = String::new();
    latex_trees(f.trees(), &mut out);
    out
}

/// A coefficient that can be rendered as a signed multiplier.
pub trait RenderCoeff: Coefficient {
    /// `(negative, magnitude)`; magnitude is `None` for 1.
    fn split_sign(&self, format: Format) -> (bool, Option<String>);
}

impl RenderCoeff for LambdaPoly {
    fn split_sign(&self, format: Format) -> (bool, Option<String>) {
        use num::Signed;
        let negative = self
            .iter()
            .next_back()
            .is_some_and(|(_, c)| c.is_negative());
        let mag = if negative { -self } else { self.clone() };
        if mag.is_one() {
            return (negative, None);
        }
        let text = match format {
            Format::Ascii => mag.to_string(),
            Format::Latex => latex_poly(&mag),
        };
        let text = if mag.num_monomials() > 1 {
            match format {
                Format::Ascii => format!("({text})"),
                Format::Latex => format!("\\left({text}\\right)"),
            }
        } else {
            text
        };
        (negative, Some(text))
    }
}

impl RenderCoeff for Rational {
    fn split_sign(&self, format: Format) -> (bool, Option<String>) {
        use num::{One, Signed};
        let negative = self.is_negative();
        let mag = self.abs();
        if mag.is_one() {
            return (negative, None);
        }
        let text = match format {
            Format::Ascii => format_rational(&mag),
            Format::Latex if mag.is_integer() => mag.numer().to_string(),
            Format::Latex => format!("\\frac{{{}}}{{{}}}", mag.numer(), mag.denom()),
        };
        (negative, Some(text))
    }
}

fn latex_poly(p: &LambdaPoly) -> String {
    use num::{One, Signed};
    let mut out = String::new();
    for (i, (e, c)) in p.iter().rev().enumerate() {
        if c.is_negative() {
            out.push_str(if i == 0 { "-" } else { " - " });
        } else if i > 0 {
            out.push_str(" + ");
        }
        let mag = c.abs();
        if e == 0 || !mag.is_one() {
            out.push_str(&mag.to_string());
        }
        match e {
            0 => {}
            1 => out.push_str("\\lambda"),
            _ => out.push_str(&format!("\\lambda^{{{e}}}")),
        }
    }
    out
}

/// Canonical text of a normalized sum, largest basis element first.
pub fn print_sum<K, C>(sum: &LinComb<K, C>, format: Format) -> String
where
    K: Ord + Clone + RenderBasis,
    C: RenderCoeff,
{
    if sum.is_zero() {
        return "0".to_string();
    }
    let times = match format {
        Format::Ascii => "*",
        Format::Latex => " ",
    };
    let mut out = String::new();
    for (i, (k, c)) in sum.iter().rev().enumerate() {
        let (negative, mag) = c.split_sign(format);
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if let Some(m) = mag {
            out.push_str(&m);
            out.push_str(times);
        }
        out.push_str(&k.render(format));
    }
    out
}

impl Value {
    pub fn print(&self, format: Format) -> String {
        match self {
            Value::Forests(s) => print_sum(s, format),
            Value::Decorated(s) => print_sum(s, format),
        }
    }

    /// Specializes λ and prints the resulting rational combination.
    pub fn print_specialized(&self, lambda: &Rational, format: Format) -> String {
        match self {
            Value::Forests(s) => print_sum(&s.map_coeffs(|c| c.specialize(lambda)), format),
            Value::Decorated(s) => print_sum(&s.map_coeffs(|c| c.specialize(lambda)), format),
        }
    }

    pub fn term_count(&self) -> usize {
        match self {
            Value::Forests(s) => s.len(),
            Value::Decorated(s) => s.len(),
        }
    }

    pub fn to_json(&self) -> JsonSum {
        match self {
            Value::Forests(s) => forest_sum_to_json(s),
            Value::Decorated(s) => decorated_sum_to_json(s),
        }
    }

    /// JSON export with λ specialized; coefficients become rationals.
    pub fn to_json_specialized(&self, lambda: &Rational) -> JsonSum {
        let terms = |rows: Vec<(String, Vec<String>, &LambdaPoly)>| JsonSum {
            terms: rows
                .into_iter()
                .rev()
                .filter_map(|(forest, deco, c)| {
                    let q = c.specialize(lambda);
                    (!num::Zero::is_zero(&q)).then(|| JsonTerm {
                        forest,
                        deco,
                        coeff: format_rational(&q),
                    })
                })
                .collect(),
        };
        match self {
            Value::Forests(s) => terms(
                s.iter()
                    .map(|(f, c)| (f.encoding(), Vec::new(), c))
                    .collect(),
            ),
            Value::Decorated(s) => terms(
                s.iter()
                    .map(|(d, c)| {
                        let deco = d
                            .decorations()
                            .iter()
                            .map(|x| x.name().to_string())
                            .collect();
                        (d.forest().encoding(), deco, c)
                    })
                    .collect(),
            ),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.print(Format::Ascii))
    }
}

/// Renders an unevaluated expression.
pub fn print_expr(e: &Expr, format: Format) -> String {
    fn go(e: &Expr, format: Format, out: &mut String) {
        let latex = format == Format::Latex;
        match e {
            Expr::Zero => out.push('0'),
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                go(a, format, out);
                out.push_str(if matches!(e, Expr::Add(..)) {
                    " + "
                } else {
                    " - "
                });
                paren_if(
                    b,
                    |x| matches!(x, Expr::Add(..) | Expr::Sub(..)),
                    format,
                    out,
                );
            }
            Expr::Diamond(a, b) => {
                paren_if(a, is_additive, format, out);
                out.push_str(if latex { " \\diamond " } else { "*" });
                paren_if(
                    b,
                    |x| is_additive(x) || matches!(x, Expr::Diamond(..) | Expr::Scaled(..)),
                    format,
                    out,
                );
            }
            Expr::Scaled(c, a) => {
                let text = if latex { latex_poly(c) } else { c.to_string() };
                if c.num_monomials() > 1 {
                    if latex {
                        out.push_str(&format!("\\left({text}\\right) "));
                    } else {
                        out.push_str(&format!("({text})*"));
                    }
                } else {
                    out.push_str(&text);
                    out.push_str(if latex { " " } else { "*" });
                }
                paren_if(a, is_additive, format, out);
            }
            Expr::Operator(a) => {
                out.push_str(if latex { "P\\left(" } else { "P(" });
                go(a, format, out);
                out.push_str(if latex { "\\right)" } else { ")" });
            }
            Expr::Forest(f) => out.push_str(&f.render(format)),
            Expr::Decorated(f, d) => {
                let fr = f.render(format);
                match (format, d.is_empty()) {
                    (Format::Ascii, true) => out.push_str(&format!("{{{fr};1}}")),
                    (Format::Ascii, false) => out.push_str(&format!("{{{fr};{}}}", d.join(","))),
                    (Format::Latex, true) => out.push_str(&format!("({fr}; 1)")),
                    (Format::Latex, false) => {
                        out.push_str(&format!("({fr}; {})", d.join(" \\otimes ")))
                    }
                }
            }
        }
    }
    fn is_additive(e: &Expr) -> bool {
        matches!(e, Expr::Add(..) | Expr::Sub(..))
    }
    fn paren_if(e: &Expr, pred: impl Fn(&Expr) -> bool, format: Format, out: &mut String) {
        if pred(e) {
            out.push_str(if format == Format::Latex {
                "\\left("
            } else {
                "("
            });
            go(e, format, out);
            out.push_str(if format == Format::Latex {
                "\\right)"
            } else {
                ")"
            });
        } else {
            go(e, format, out);
        }
    }
    let mut out = String::new();
    go(e, format, &mut out);
    out
}

/// JSON export of a sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonSum {
    pub terms: Vec<JsonTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub forest: String,
    pub deco: Vec<String>,
    pub coeff: String,
}

pub fn forest_sum_to_json(s: &ForestSum) -> JsonSum {
    JsonSum {
        terms: s
            .iter()
            .rev()
            .map(|(f, c)| JsonTerm {
                forest: f.encoding(),
                deco: Vec::new(),
                coeff: c.to_string(),
            })
            .collect(),
    }
}

pub fn decorated_sum_to_json(s: &DecoratedSum) -> JsonSum {
    JsonSum {
        terms: s
            .iter()
            .rev()
            .map(|(d, c)| JsonTerm {
                forest: d.forest().encoding(),
                deco: d
                    .decorations()
                    .iter()
                    .map(|x| x.name().to_string())
                    .collect(),
                coeff: c.to_string(),
            })
            .collect(),
    }
}

pub fn decorated_sum_from_json(j: &JsonSum) -> Result<DecoratedSum, TextError> {
    let mut out = DecoratedSum::zero();
    for t in &j.terms {
        let forest = Forest::from_encoding(&t.forest)
            .ok_or_else(|| TextError::Json(format!("bad forest encoding {:?}", t.forest)))?;
        let coeff: LambdaPoly = t
            .coeff
            .parse()
            .map_err(|e| TextError::Json(format!("{e}")))?;
        for name in &t.deco {
            if !is_valid_symbol_name(name) {
                return Err(TextError::Json(format!("bad symbol {name:?}")));
            }
        }
        let decos = t.deco.iter().map(|n| Symbol::new(n)).collect();
        let d = DecoratedForest::new(forest, decos).map_err(EvalError::from)?;
        out.add_term(d, coeff);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ascii(text: &str) -> String {
        eval_str(text).unwrap().print(Format::Ascii)
    }

    #[test]
    fn parses_forest_literals() {
        assert_eq!(parse("o").unwrap(), Expr::Forest(Forest::unit()));
        assert_eq!(
            parse(" [ o o ] ").unwrap(),
            Expr::Forest(Forest::from_encoding("[oo]").unwrap())
        );
        assert_eq!(
            parse("{[oo];x}").unwrap(),
            Expr::Decorated(Forest::from_encoding("[oo]").unwrap(), vec!["x".into()])
        );
    }

    #[test]
    fn worked_example_prints_canonically() {
        assert_eq!(ascii("[oo]*[o]"), "[o[o]] + [[oo]] + L*[oo]");
        assert_eq!(ascii("P(o)"), "[o]");
        assert_eq!(ascii("o"), "o");
    }

    #[test]
    fn specialization_printing() {
        let v = eval_str("[oo]*[o]").unwrap();
        assert_eq!(
            v.print_specialized(&Rational::from_integer((-1).into()), Format::Ascii),
            "[o[o]] + [[oo]] - [oo]"
        );
        let half = Rational::new(1.into(), 2.into());
        assert_eq!(
            v.print_specialized(&half, Format::Ascii),
            "[o[o]] + [[oo]] + 1/2*[oo]"
        );
    }

    #[test]
    fn coefficients() {
        assert_eq!(ascii("2L^2-1*[o]"), "(2L^2-1)*[o]");
        assert_eq!(ascii("(2L^2-1)*[o]"), "(2L^2-1)*[o]");
        assert_eq!(ascii("o - [o]"), "-[o] + o");
        assert_eq!(ascii("-L*[o]"), "-L*[o]");
        assert_eq!(ascii("o - o"), "0");
        assert_eq!(ascii("0"), "0");
        assert_eq!(ascii("3*o - 0"), "3*o");
        assert_eq!(ascii("(-L^2+L)*o"), "-(L^2-L)*o");
        assert_eq!(ascii("-(L^2-L)*o"), "-(L^2-L)*o");
    }

    #[test]
    fn decorated_evaluation() {
        assert_eq!(
            ascii("{[oo];x}*[o]"),
            "{[o[o]];x} + {[[oo]];x} + L*{[oo];x}"
        );
        assert_eq!(ascii("{oo;x}*{oo;y}"), "{ooo;x,y}");
        assert_eq!(ascii("{[o];1}"), "[o]");
        assert!(matches!(
            eval_str("{oo;x}*oo"),
            Err(TextError::Eval(EvalError::UndecoratedLiteral(_)))
        ));
        assert!(matches!(
            eval_str("{ooo;x}"),
            Err(TextError::Eval(EvalError::Decoration(_)))
        ));
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        let e = parse("[oo]*").unwrap_err();
        assert_eq!(e.offset, 5);
        let e = parse("[o").unwrap_err();
        assert_eq!(e.offset, 2);
        assert!(parse("{o;o}").is_err());
        assert!(parse("{oo;P}").is_err());
        assert!(parse("2").is_err());
        assert!(parse("").is_err());
        assert!(parse("o)").is_err());
    }

    #[test]
    fn latex_rendering() {
        let v = eval_str("[oo]*[o]").unwrap();
        assert_eq!(
            v.print(Format::Latex),
            "\\lfloor \\bullet \\sqcup \\lfloor \\bullet \\rfloor \\rfloor + \\lfloor \\lfloor \\bullet \\sqcup \\bullet \\rfloor \\rfloor + \\lambda \\lfloor \\bullet \\sqcup \\bullet \\rfloor"
        );
        let v = eval_str("{oo;x}*{oo;y}").unwrap();
        assert_eq!(
            v.print(Format::Latex),
            "(\\bullet \\sqcup \\bullet \\sqcup \\bullet; x \\otimes y)"
        );
    }

    #[test]
    fn expression_printing_reparses() {
        for text in [
            "[oo]*[o]",
            "2*P(o - [o])*{oo;x}",
            "(L+1)*(o + [o])*o",
            "P(P(o))",
            "{o;1}",
        ] {
            let e = parse(text).unwrap();
            let printed = print_expr(&e, Format::Ascii);
            assert_eq!(parse(&printed).unwrap(), e, "{text} -> {printed}");
        }
    }

    #[test]
    fn json_shape() {
        let v = eval_str("{[oo];x}*[o]").unwrap();
        let j = serde_json::to_string(&v.to_json()).unwrap();
        assert!(j.starts_with(r#"{"terms":[{"forest":"[o[o]]","deco":["x"],"coeff":"1"}"#));
        let Value::Decorated(s) = v else { panic!() };
        assert_eq!(
            decorated_sum_from_json(&decorated_sum_to_json(&s)).unwrap(),
            s
        );
    }
}
