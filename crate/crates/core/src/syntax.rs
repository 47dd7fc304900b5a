//! Text syntax for forms, cochains and coefficient paths.
//!
//! ```text
//! sum     := ['+' | '-'] term (('+' | '-') term)*
//! term    := product [suffix] | suffix
//! product := factor (['*'] factor)*
//! factor  := rational | 't' | '(' sum ')' | piecewise, each optionally '^' n
//! piecewise := '{' '[' a ',' b ']' ':' sum (';' '[' b ',' c ']' ':' sum)* '}'
//! ```
//!
//! For forms the only suffix is `dt`; for paths the suffixes are generator
//! names. Parenthesized sums and piecewise bodies take no suffix.
//! Examples: `t^2 - 1/2 t + (3t + 1) dt`, `{[0,1/2]: 1; [1/2,1]: 0} dt`,
//! `x + t y`.

use crate::forms::{PolyForm, WhitneyCochain};
use crate::lie_extension::CoefficientPath;
use crate::scalars_polys::{one, parse_rational, zero, PiecewisePoly, Poly, Rational};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected character {0:?}")]
    BadChar(char),
    #[error("unexpected {found} at token {pos}, expected {expected}")]
    Unexpected {
        found: String,
        pos: usize,
        expected: &'static str,
    },
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("bad piecewise definition: {0}")]
    Piecewise(String),
    #[error("{0} is not a Whitney cochain (need affine part + constant dt)")]
    NotWhitney(String),
    #[error("the path has a component along the unit")]
    UnitComponent,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, ParseError> {
    let chars: Vec<char> = s.chars().collect();
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
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            let text: String = chars[start..i].iter().collect();
            let q = parse_rational(&text).ok_or(ParseError::BadChar('/'))?;
            out.push(Tok::Num(q));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*^(){}[],:;".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(ParseError::BadChar(c));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    suffixes: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        ParseError::Unexpected {
            found: match self.peek() {
                Some(Tok::Num(q)) => q.to_string(),
                Some(Tok::Ident(s)) => s.clone(),
                Some(Tok::Sym(c)) => c.to_string(),
                None => "end of input".into(),
            },
            pos: self.pos,
            expected,
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char, what: &'static str) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(what))
        }
    }

    fn number(&mut self) -> Result<Rational, ParseError> {
        let negative = self.eat('-');
        match self.peek() {
            Some(Tok::Num(q)) => {
                let q = q.clone();
                self.pos += 1;
                Ok(if negative { -q } else { q })
            }
            _ => Err(self.unexpected("a number")),
        }
    }

    /// Terms keyed by suffix index (`None` for no suffix).
    fn sum(
        &mut self,
        allow_suffix: bool,
    ) -> Result<Vec<(PiecewisePoly, Option<usize>)>, ParseError> {
        let mut terms = Vec::new();
        let mut negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        loop {
            let (value, suffix) = self.term(allow_suffix)?;
            terms.push((if negative { -&value } else { value }, suffix));
            if self.eat('+') {
                negative = false;
            } else if self.eat('-') {
                negative = true;
            } else {
                return Ok(terms);
            }
        }
    }

    fn suffix_index(&self) -> Option<usize> {
        match self.peek() {
            Some(Tok::Ident(s)) => self.suffixes.iter().position(|x| x == s),
            _ => None,
        }
    }

    fn term(&mut self, allow_suffix: bool) -> Result<(PiecewisePoly, Option<usize>), ParseError> {
        if allow_suffix {
            if let Some(i) = self.suffix_index() {
                self.pos += 1;
                return Ok((PiecewisePoly::one(), Some(i)));
            }
        }
        let value = self.product()?;
        if allow_suffix {
            if let Some(i) = self.suffix_index() {
                self.pos += 1;
                return Ok((value, Some(i)));
            }
        }
        Ok((value, None))
    }

    fn starts_factor(&self) -> bool {
        match self.peek() {
            Some(Tok::Num(_)) | Some(Tok::Sym('(')) | Some(Tok::Sym('{')) => true,
            Some(Tok::Ident(s)) => s == "t",
            _ => false,
        }
    }

    fn product(&mut self) -> Result<PiecewisePoly, ParseError> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') || self.starts_factor() {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<PiecewisePoly, ParseError> {
        let base = self.factor()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let k = match self.peek() {
            Some(Tok::Num(q)) if q.is_integer() && *q >= zero() => q
                .to_integer()
                .try_into()
                .map_err(|_| self.unexpected("a small exponent"))?,
            _ => return Err(self.unexpected("an exponent")),
        };
        self.pos += 1;
        Ok(
            (0..k).fold(PiecewisePoly::one(), |acc: PiecewisePoly, _: u32| {
                &acc * &base
            }),
        )
    }

    fn factor(&mut self) -> Result<PiecewisePoly, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Num(q)) => {
                self.pos += 1;
                Ok(PiecewisePoly::constant(q))
            }
            Some(Tok::Ident(s)) if s == "t" => {
                self.pos += 1;
                Ok(Poly::t().into())
            }
            Some(Tok::Ident(s)) => Err(ParseError::UnknownSymbol(s)),
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let inner = self.plain_sum()?;
                self.expect(')', "')'")?;
                Ok(inner)
            }
            Some(Tok::Sym('{')) => {
                self.pos += 1;
                self.piecewise()
            }
            _ => Err(self.unexpected("a factor")),
        }
    }

    fn plain_sum(&mut self) -> Result<PiecewisePoly, ParseError> {
        let terms = self.sum(false)?;
        Ok(terms
            .iter()
            .fold(PiecewisePoly::zero(), |acc, (v, _)| &acc + v))
    }

    fn piecewise(&mut self) -> Result<PiecewisePoly, ParseError> {
        let mut bps: Vec<Rational> = Vec::new();
        let mut pieces: Vec<Poly> = Vec::new();
        loop {
            self.expect('[', "'['")?;
            let a = self.number()?;
            self.expect(',', "','")?;
            let b = self.number()?;
            self.expect(']', "']'")?;
            self.expect(':', "':'")?;
            match bps.last() {
                None => bps.push(a),
                Some(last) if *last == a => {}
                Some(last) => {
                    return Err(ParseError::Piecewise(format!(
                        "interval starts at {a}, previous ended at {last}"
                    )))
                }
            }
            bps.push(b);
            let body = self.plain_sum()?;
            let poly = body
                .as_poly()
                .cloned()
                .ok_or_else(|| ParseError::Piecewise("nested piecewise body".into()))?;
            pieces.push(poly);
            if self.eat('}') {
                break;
            }
            self.expect(';', "';' or '}'")?;
        }
        PiecewisePoly::new(bps, pieces).map_err(|e| ParseError::Piecewise(e.to_string()))
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.unexpected("end of input")),
        }
    }
}

fn parse_terms(
    s: &str,
    suffixes: &[String],
) -> Result<Vec<(PiecewisePoly, Option<usize>)>, ParseError> {
    let mut p = Parser {
        toks: tokenize(s)?,
        pos: 0,
        suffixes,
    };
    let terms = p.sum(true)?;
    p.finish()?;
    Ok(terms)
}

/// Parses `p(t) + q(t) dt`.
pub fn parse_form(s: &str) -> Result<PolyForm, ParseError> {
    let mut f = [PiecewisePoly::zero(), PiecewisePoly::zero()];
    for (v, suffix) in parse_terms(s, &["dt".to_string()])? {
        let slot = usize::from(suffix.is_some());
        f[slot] = &f[slot] + &v;
    }
    let [f0, f1] = f;
    Ok(PolyForm::new(f0, f1))
}

/// Parses a Whitney cochain written as a form `v0 (1 - t) + v1 t + e dt`.
pub fn parse_cochain(s: &str) -> Result<WhitneyCochain, ParseError> {
    let w = parse_form(s)?;
    let f0 = w.f0.as_poly().cloned().unwrap_or_default();
    let e = w.f1.as_poly().map(|p| p.coeff(0));
    let affine = w.f0.as_poly().is_some() && f0.degree().is_none_or(|d| d <= 1);
    let constant =
        w.f1.as_poly()
            .is_some_and(|p| p.degree().is_none_or(|d| d == 0));
    match (affine && constant, e) {
        (true, Some(e)) => Ok(WhitneyCochain::new(f0.eval(&zero()), f0.eval(&one()), e)),
        _ => Err(ParseError::NotWhitney(s.to_string())),
    }
}

/// Parses `Σ c_g(t) g` over the given generator names.
pub fn parse_path(s: &str, generators: &[String]) -> Result<CoefficientPath, ParseError> {
    let mut path = CoefficientPath::zero(generators.to_vec());
    for (v, suffix) in parse_terms(s, generators)? {
        match suffix {
            Some(g) => {
                let c = path.component_mut(g);
                *c = &*c + &v;
            }
            None if v.is_zero() => {}
            None => return Err(ParseError::UnitComponent),
        }
    }
    Ok(path)
}

/// Parses a rational such as `-3/4`.
pub fn parse_scalar(s: &str) -> Result<Rational, ParseError> {
    parse_rational(s).ok_or_else(|| ParseError::UnknownSymbol(s.to_string()))
}
