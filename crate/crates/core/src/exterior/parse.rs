//! Text syntax for forms.
//!
//! `+ -` sum, `*` and `^` both denote the graded product, `/` divides by a
//! single-term scalar, `**n` is an integer power, `conj(..)` conjugates and
//! `i` is the imaginary unit unless shadowed. A number directly followed by a
//! name or `(` multiplies it, so `3i` and `2(a+b)` parse as expected.

use std::collections::HashMap;
use std::sync::Arc;

use super::form::{Form, Space};
use super::gauss::GaussRat;
use super::poly::ScalarPoly;
use super::ExteriorError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Name(String),
    Op(char),
    Pow,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<Tok>, ExteriorError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Tok::Num(s.parse().map_err(|_| ExteriorError::Parse(format!("bad number {s}")))?));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push(Tok::Name(chars[start..i].iter().collect()));
        } else if c == '*' && chars.get(i + 1) == Some(&'*') {
            out.push(Tok::Pow);
            i += 2;
        } else if "+-*/^".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else if c == '(' {
            out.push(Tok::LParen);
            i += 1;
        } else if c == ')' {
            out.push(Tok::RParen);
            i += 1;
        } else {
            return Err(ExteriorError::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    space: &'a Arc<Space>,
    consts: &'a HashMap<String, GaussRat>,
    bindings: &'a HashMap<String, Form>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok) -> Result<(), ExteriorError> {
        match self.next() {
            Some(ref x) if *x == t => Ok(()),
            other => Err(ExteriorError::Parse(format!("expected {t:?}, found {other:?}"))),
        }
    }

    fn expr(&mut self) -> Result<Form, ExteriorError> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c)) = self.peek() {
            let c = *c;
            if c != '+' && c != '-' {
                break;
            }
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { acc.add(&rhs)? } else { acc.sub(&rhs)? };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Form, ExteriorError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Op(c)) if *c == '*' || *c == '^' => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = acc.wedge(&rhs)?;
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    let inv = rhs
                        .as_scalar()
                        .and_then(|p| p.inverse())
                        .ok_or_else(|| ExteriorError::Parse("divisor must be a single nonzero scalar term".into()))?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Form, ExteriorError> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Form, ExteriorError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Pow) {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(&Tok::Op('-')) {
            self.pos += 1;
            true
        } else {
            false
        };
        let e = match self.next() {
            Some(Tok::Num(n)) => n as i32,
            other => return Err(ExteriorError::Parse(format!("bad exponent {other:?}"))),
        };
        let e = if neg { -e } else { e };
        let p = base
            .as_scalar()
            .ok_or_else(|| ExteriorError::Parse("only scalars can be raised to a power".into()))?;
        let q = p.pow(e).ok_or_else(|| ExteriorError::Parse("negative power of a non-monomial".into()))?;
        Ok(Form::scalar(self.space, q))
    }

    fn atom(&mut self) -> Result<Form, ExteriorError> {
        match self.next() {
            Some(Tok::Num(n)) => {
                let c = Form::int(self.space, n);
                match self.peek() {
                    Some(Tok::Name(_)) | Some(Tok::LParen) => Ok(c.wedge(&self.power()?)?),
                    _ => Ok(c),
                }
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Some(Tok::Name(n)) => {
                if n == "conj" && self.peek() == Some(&Tok::LParen) {
                    self.pos += 1;
                    let e = self.expr()?;
                    self.expect(Tok::RParen)?;
                    return Ok(e.conj());
                }
                if let Some(f) = self.bindings.get(&n) {
                    return Ok(f.clone());
                }
                if let Some(c) = self.consts.get(&n) {
                    return Ok(Form::constant(self.space, c.clone()));
                }
                if let Ok(s) = self.space.sym(&n) {
                    return Ok(Form::scalar(self.space, ScalarPoly::var(s)));
                }
                if let Ok(g) = self.space.index(&n) {
                    return Ok(Form::gen_index(self.space, g));
                }
                if n == "i" {
                    return Ok(Form::constant(self.space, GaussRat::i()));
                }
                Err(ExteriorError::Parse(format!("unknown name {n}")))
            }
            other => Err(ExteriorError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses `src` as a form on `space`; `consts` binds names to constants.
pub fn parse_form(space: &Arc<Space>, src: &str, consts: &HashMap<String, GaussRat>) -> Result<Form, ExteriorError> {
    parse_with(space, src, consts, &HashMap::new())
}

fn parse_with(
    space: &Arc<Space>,
    src: &str,
    consts: &HashMap<String, GaussRat>,
    bindings: &HashMap<String, Form>,
) -> Result<Form, ExteriorError> {
    let mut p = Parser { toks: lex(src)?, pos: 0, space, consts, bindings };
    let f = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(ExteriorError::Parse(format!("trailing input in {src:?}")));
    }
    Ok(f)
}

/// Parser bound to a space, named constants and named forms.
#[derive(Clone, Debug)]
pub struct FormParser {
    pub space: Arc<Space>,
    pub consts: HashMap<String, GaussRat>,
    pub bindings: HashMap<String, Form>,
}

impl FormParser {
    pub fn new(space: &Arc<Space>) -> Self {
        FormParser { space: space.clone(), consts: HashMap::new(), bindings: HashMap::new() }
    }

    pub fn with_const(mut self, name: &str, v: impl Into<GaussRat>) -> Self {
        self.consts.insert(name.to_string(), v.into());
        self
    }

    /// Binds `name` to a form; bindings shadow symbols and generators.
    pub fn bind(&mut self, name: &str, f: Form) -> &mut Self {
        self.bindings.insert(name.to_string(), f);
        self
    }

    /// Parses `src` and binds the result to `name`.
    pub fn define(&mut self, name: &str, src: &str) -> Form {
        let f = self.f(src);
        self.bind(name, f.clone());
        f
    }

    pub fn parse(&self, src: &str) -> Result<Form, ExteriorError> {
        parse_with(&self.space, src, &self.consts, &self.bindings)
    }

    /// Parses and panics on error; for transcribed tables known to be valid.
    pub fn f(&self, src: &str) -> Form {
        self.parse(src).unwrap_or_else(|e| panic!("{e} in {src:?}"))
    }

    pub fn scalar(&self, src: &str) -> Result<ScalarPoly, ExteriorError> {
        self.parse(src)?.as_scalar().ok_or_else(|| ExteriorError::Parse(format!("{src:?} is not a scalar")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::symbols::SymbolTable;

    fn parser() -> FormParser {
        let mut t = SymbolTable::new();
        t.declare_complex_bar("a").unwrap();
        t.declare_real("b").unwrap();
        let s = Space::builder(Arc::new(t)).real("kappa").complex_bar("eta").build().unwrap();
        FormParser::new(&s).with_const("eps", -1)
    }

    #[test]
    fn parses_products_and_conj() {
        let p = parser();
        let f = p.f("i*eta^etabar - eps*2i*a*kappa^eta");
        assert_eq!(f.conj(), p.f("i*eta^etabar - 2i*abar*kappa^etabar"));
        assert_eq!(p.f("conj(a*eta)"), p.f("abar*etabar"));
        assert_eq!(p.f("b**-2*b**2"), p.f("1"));
        assert_eq!(p.f("(a+b)/2"), p.f("a/2 + b/2"));
        assert_eq!(p.f("3(a+1)"), p.f("3a+3"));
    }

    #[test]
    fn rejects_garbage() {
        let p = parser();
        assert!(p.parse("a +").is_err());
        assert!(p.parse("zz").is_err());
        assert!(p.parse("1/(a+b)").is_err());
        assert!(p.parse("kappa**2").is_err());
    }
}
