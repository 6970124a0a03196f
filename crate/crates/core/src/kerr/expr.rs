//! Complex polynomials `H(z1, z2, z3)` and their small expression grammar.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use rand::Rng;

use super::KerrError;

/// Exponents of `z1, z2, z3`.
pub type Exps = [u32; 3];

#[derive(Clone, Debug, Default, PartialEq)]
pub struct HPoly {
    terms: BTreeMap<Exps, Complex64>,
}

impl HPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Complex64) -> Self {
        let mut p = Self::zero();
        p.add_term([0, 0, 0], c);
        p
    }

    /// `z_{k+1}`.
    pub fn var(k: usize) -> Self {
        let mut e = [0; 3];
        e[k] = 1;
        let mut p = Self::zero();
        p.add_term(e, Complex64::new(1.0, 0.0));
        p
    }

    pub fn add_term(&mut self, e: Exps, c: Complex64) {
        let v = self.terms.entry(e).or_default();
        *v += c;
        if *v == Complex64::new(0.0, 0.0) {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &Complex64)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| *e == [0, 0, 0])
    }

    pub fn add(&self, o: &HPoly) -> HPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, *c);
        }
        out
    }

    pub fn scale(&self, k: Complex64) -> HPoly {
        let mut out = HPoly::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, c * k);
        }
        out
    }

    pub fn mul(&self, o: &HPoly) -> HPoly {
        let mut out = HPoly::zero();
        for (e, c) in &self.terms {
            for (f, d) in &o.terms {
                out.add_term([e[0] + f[0], e[1] + f[1], e[2] + f[2]], c * d);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> HPoly {
        (0..n).fold(HPoly::constant(Complex64::new(1.0, 0.0)), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, z: [Complex64; 3]) -> Complex64 {
        self.terms.iter().map(|(e, c)| c * z[0].powu(e[0]) * z[1].powu(e[1]) * z[2].powu(e[2])).sum()
    }

    /// `dH/dz_{k+1}`.
    pub fn partial(&self, k: usize) -> HPoly {
        let mut out = HPoly::zero();
        for (e, c) in &self.terms {
            if e[k] > 0 {
                let mut f = *e;
                f[k] -= 1;
                out.add_term(f, c * e[k] as f64);
            }
        }
        out
    }

    /// Random polynomial of degree at most `deg`, coefficients uniform in the unit disk.
    pub fn random(rng: &mut impl Rng, deg: u32) -> HPoly {
        let mut out = HPoly::zero();
        for a in 0..=deg {
            for b in 0..=deg - a {
                for c in 0..=deg - a - b {
                    let r = rng.gen::<f64>().sqrt();
                    let t = rng.gen::<f64>() * std::f64::consts::TAU;
                    out.add_term([a, b, c], Complex64::from_polar(r, t));
                }
            }
        }
        out
    }

    pub fn parse(src: &str) -> Result<HPoly, KerrError> {
        let toks = tokenize(src)?;
        let mut p = Parser { toks, pos: 0 };
        let out = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(KerrError::Parse(format!("unexpected {:?} in {src:?}", p.toks[p.pos])));
        }
        Ok(out)
    }
}

impl fmt::Display for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut s = format!("({}{:+}i)", c.re, c.im);
                for (k, n) in e.iter().enumerate() {
                    match n {
                        0 => {}
                        1 => s.push_str(&format!("*z{}", k + 1)),
                        _ => s.push_str(&format!("*z{}^{n}", k + 1)),
                    }
                }
                s
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    I,
    Var(usize),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<Tok>, KerrError> {
    let cs: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < cs.len() {
        let c = cs[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let s = k;
            while k < cs.len() && (cs[k].is_ascii_digit() || cs[k] == '.') {
                k += 1;
            }
            if k < cs.len() && (cs[k] == 'e' || cs[k] == 'E') {
                let mut j = k + 1;
                if j < cs.len() && (cs[j] == '+' || cs[j] == '-') {
                    j += 1;
                }
                if j < cs.len() && cs[j].is_ascii_digit() {
                    k = j;
                    while k < cs.len() && cs[k].is_ascii_digit() {
                        k += 1;
                    }
                }
            }
            let t: String = cs[s..k].iter().collect();
            out.push(Tok::Num(t.parse().map_err(|_| KerrError::Parse(format!("bad number {t}")))?));
        } else if c == 'i' {
            out.push(Tok::I);
            k += 1;
        } else if c == 'z' {
            match cs.get(k + 1) {
                Some(d @ '1'..='3') => out.push(Tok::Var(*d as usize - '1' as usize)),
                _ => return Err(KerrError::Parse(format!("expected z1, z2 or z3 at {k}"))),
            }
            k += 2;
        } else if "+-*^()".contains(c) {
            out.push(Tok::Op(c));
            k += 1;
        } else {
            return Err(KerrError::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expr(&mut self) -> Result<HPoly, KerrError> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let t = self.term()?;
            acc = acc.add(&if c == '-' { t.scale(Complex64::new(-1.0, 0.0)) } else { t });
        }
        Ok(acc)
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_) | Tok::I | Tok::Var(_) | Tok::Op('(')))
    }

    fn term(&mut self) -> Result<HPoly, KerrError> {
        let mut acc = self.unary()?;
        loop {
            if let Some(Tok::Op('*')) = self.peek() {
                self.pos += 1;
                acc = acc.mul(&self.unary()?);
            } else if self.starts_atom() {
                acc = acc.mul(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<HPoly, KerrError> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(self.unary()?.scale(Complex64::new(-1.0, 0.0)))
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<HPoly, KerrError> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(n)) if n >= 0.0 && n.fract() == 0.0 && n <= 64.0 => {
                    self.pos += 1;
                    Ok(base.pow(n as u32))
                }
                t => Err(KerrError::Parse(format!("exponent must be a small non-negative integer, got {t:?}"))),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<HPoly, KerrError> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        match t {
            Some(Tok::Num(x)) => {
                if let Some(Tok::I) = self.peek() {
                    self.pos += 1;
                    Ok(HPoly::constant(Complex64::new(0.0, x)))
                } else {
                    Ok(HPoly::constant(Complex64::new(x, 0.0)))
                }
            }
            Some(Tok::I) => Ok(HPoly::constant(Complex64::new(0.0, 1.0))),
            Some(Tok::Var(k)) => Ok(HPoly::var(k)),
            Some(Tok::Op('(')) => {
                let e = self.expr()?;
                match self.toks.get(self.pos) {
                    Some(Tok::Op(')')) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => Err(KerrError::Parse("missing )".into())),
                }
            }
            t => Err(KerrError::Parse(format!("unexpected {t:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn parse_and_eval() {
        let h = HPoly::parse("z3 - (0.3+0.1i)").unwrap();
        assert_eq!(h.eval([c(0.0, 0.0), c(0.0, 0.0), c(0.3, 0.1)]), c(0.0, 0.0));
        let h = HPoly::parse("2i*z1^2 - z2 z3 + 1.5e-1").unwrap();
        let z = [c(1.0, 1.0), c(0.5, 0.0), c(0.0, 2.0)];
        let direct = c(0.0, 2.0) * z[0] * z[0] - z[1] * z[2] + c(0.15, 0.0);
        assert!((h.eval(z) - direct).norm() < 1e-15);
        assert_eq!(h.degree(), 2);
        assert!(HPoly::parse("z4").is_err());
        assert!(HPoly::parse("z1^-1").is_err());
        assert!(HPoly::parse("(z1").is_err());
        assert!(HPoly::parse("3 + 4").unwrap().is_constant());
    }

    #[test]
    fn partials() {
        let h = HPoly::parse("z1^2 z3 + 3 z2").unwrap();
        assert_eq!(h.partial(0), HPoly::parse("2 z1 z3").unwrap());
        assert_eq!(h.partial(1), HPoly::parse("3").unwrap());
        assert_eq!(h.partial(2), HPoly::parse("z1^2").unwrap());
    }
}
