//! Canonical ASCII syntax for scalars and polynomials.
//!
//! Polynomials print as `(1+2i)*y^2*z^-1 + 3`: terms in descending lexicographic
//! order on the declared variable list, separated by ` + ` or ` - `.  The parser
//! accepts the same syntax plus parentheses, integer powers, and division;
//! `i` is reserved for the imaginary unit.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::laurent::{var_list, LaurentPoly, VarList};
use crate::scalar::GaussianRational;

type Q = GaussianRational;

fn rational_str(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn imaginary_str(r: &BigRational) -> String {
    if r.is_one() {
        "i".to_string()
    } else {
        format!("{}i", rational_str(r))
    }
}

/// Splits `c` into a sign and a magnitude string, e.g. `-(1-2i)` becomes `(true, "(1-2i)")`.
fn signed_parts(c: &Q) -> (bool, String) {
    if c.im.is_zero() {
        (c.re.is_negative(), rational_str(&c.re.abs()))
    } else if c.re.is_zero() {
        (c.im.is_negative(), imaginary_str(&c.im.abs()))
    } else {
        let neg = c.re.is_negative();
        let (re, im) = if neg { (-c.re.clone(), -c.im.clone()) } else { (c.re.clone(), c.im.clone()) };
        let sign = if im.is_negative() { '-' } else { '+' };
        (neg, format!("({}{}{})", rational_str(&re), sign, imaginary_str(&im.abs())))
    }
}

/// Canonical text of a scalar: `3`, `-1/2`, `2i`, `-i`, `(1+2i)`, `-(1-2i)`.
pub fn format_coefficient(c: &Q) -> String {
    if c.is_zero() {
        return "0".to_string();
    }
    let (neg, mag) = signed_parts(c);
    if neg {
        format!("-{mag}")
    } else {
        mag
    }
}

fn monomial_str(vars: &[String], e: &[i32]) -> String {
    let parts: Vec<String> = vars
        .iter()
        .zip(e)
        .filter(|(_, &k)| k != 0)
        .map(|(v, &k)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
        .collect();
    parts.join("*")
}

/// Canonical text of a polynomial.
pub fn format_poly(p: &LaurentPoly<Q>) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (e, c)) in p.display_terms().into_iter().enumerate() {
        let (neg, mag) = signed_parts(c);
        let mono = monomial_str(p.vars(), e);
        let body = if mono.is_empty() {
            mag
        } else if mag == "1" {
            mono
        } else {
            format!("{mag}*{mono}")
        };
        match (idx, neg) {
            (0, false) => out.push_str(&body),
            (0, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    out
}

/// Text of a fraction: the numerator alone when the denominator is 1.
pub fn format_fraction(f: &Fraction<Q>) -> String {
    if let Some(p) = f.as_poly() {
        return format_poly(&p);
    }
    format!("({})/({})", format_poly(f.num()), format_poly(f.den()))
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigRational, bool),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |i: &mut usize| -> String {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        chars[start..*i].iter().collect()
    };
    while i < chars.len() {
        let ch = chars[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let n = digits(&mut i);
            let mut value = BigRational::from_integer(n.parse::<BigInt>().unwrap());
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                i += 1;
                let d: BigInt = digits(&mut i).parse().unwrap();
                if d.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in `{s}`")));
                }
                value = BigRational::new(value.numer().clone(), d);
            }
            let imaginary = i < chars.len()
                && chars[i] == 'i'
                && !chars.get(i + 1).is_some_and(|c| c.is_alphanumeric() || *c == '_');
            if imaginary {
                i += 1;
            }
            out.push(Token::Num(value, imaginary));
        } else if ch.is_alphabetic() || ch == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(ch) {
            out.push(Token::Op(ch));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{ch}` in `{s}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    vars: VarList,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat_op(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Fraction<Q>> {
        let mut acc = if self.eat_op('-') {
            self.term()?.neg()
        } else {
            self.eat_op('+');
            self.term()?
        };
        loop {
            if self.eat_op('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat_op('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Fraction<Q>> {
        let mut acc = self.factor()?;
        loop {
            if self.eat_op('*') {
                acc = acc.mul(&self.factor()?);
            } else if self.eat_op('/') {
                let d = self.factor()?;
                if d.is_zero() {
                    return Err(Error::Parse("division by zero".into()));
                }
                acc = acc.mul(&d.inverse()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Fraction<Q>> {
        if self.eat_op('-') {
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if self.eat_op('^') {
            let neg = self.eat_op('-');
            let k = match self.peek() {
                Some(Token::Num(r, false)) if r.is_integer() => {
                    let k: i32 = r
                        .numer()
                        .try_into()
                        .map_err(|_| Error::Parse("exponent too large".into()))?;
                    self.pos += 1;
                    k
                }
                _ => return Err(Error::Parse("expected an integer exponent".into())),
            };
            let k = if neg { -k } else { k };
            if k < 0 && base.is_zero() {
                return Err(Error::Parse("division by zero".into()));
            }
            return base.pow_i(k);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Fraction<Q>> {
        let tok = self.peek().cloned().ok_or_else(|| Error::Parse("unexpected end of input".into()))?;
        self.pos += 1;
        match tok {
            Token::Num(r, imaginary) => {
                let c = if imaginary { Q::new(BigRational::zero(), r) } else { Q::real(r) };
                Ok(Fraction::from_poly(LaurentPoly::constant(&self.vars, c)))
            }
            Token::Ident(name) if name == "i" => {
                Ok(Fraction::from_poly(LaurentPoly::constant(&self.vars, Q::i())))
            }
            Token::Ident(name) => Ok(Fraction::from_poly(LaurentPoly::var(&self.vars, &name)?)),
            Token::Op('(') => {
                let e = self.expr()?;
                if !self.eat_op(')') {
                    return Err(Error::Parse("expected `)`".into()));
                }
                Ok(e)
            }
            Token::Op(c) => Err(Error::Parse(format!("unexpected `{c}`"))),
        }
    }
}

fn collect_vars(tokens: &[Token], given: Option<&VarList>) -> VarList {
    let mut names: Vec<String> = given.map(|v| v.to_vec()).unwrap_or_default();
    for t in tokens {
        if let Token::Ident(name) = t {
            if name != "i" && !names.contains(name) {
                names.push(name.clone());
            }
        }
    }
    if let Some(g) = given {
        if names.len() == g.len() {
            return g.clone();
        }
    }
    var_list(&names)
}

/// Parses a rational expression. Variables are `vars` followed by any further
/// names in order of first appearance.
pub fn parse_fraction(s: &str, vars: Option<&VarList>) -> Result<Fraction<Q>> {
    let tokens = tokenize(s)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let vars = collect_vars(&tokens, vars);
    let mut p = Parser { tokens: &tokens, pos: 0, vars };
    let f = p.expr()?;
    if p.pos != tokens.len() {
        return Err(Error::Parse(format!("trailing input in `{s}`")));
    }
    Ok(f)
}

/// Parses a Laurent polynomial; division is allowed only when the result stays polynomial.
pub fn parse_poly(s: &str, vars: Option<&VarList>) -> Result<LaurentPoly<Q>> {
    let f = parse_fraction(s, vars)?;
    f.as_poly().ok_or_else(|| Error::Parse(format!("`{s}` is not a Laurent polynomial")))
}

/// Parses a scalar literal such as `-1/2`, `3i`, or `(1+2i)`.
pub fn parse_coefficient(s: &str) -> Result<Q> {
    let p = parse_poly(s, None)?;
    if !p.vars().is_empty() {
        return Err(Error::Parse(format!("`{s}` is not a constant")));
    }
    Ok(p.as_constant().unwrap())
}

impl LaurentPoly<Q> {
    /// Parses canonical text; see [`parse_poly`].
    pub fn parse(s: &str) -> Result<Self> {
        parse_poly(s, None)
    }

    /// Parses over exactly `vars`; any other variable is an error.
    pub fn parse_in(s: &str, vars: &VarList) -> Result<Self> {
        parse_poly(s, Some(vars))?.with_vars(vars)
    }
}

impl std::fmt::Display for LaurentPoly<Q> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_poly(self))
    }
}

impl std::fmt::Display for Fraction<Q> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_fraction(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficient_forms() {
        assert_eq!(format_coefficient(&Q::from(3)), "3");
        assert_eq!(format_coefficient(&Q::ratio(-1, 2)), "-1/2");
        assert_eq!(format_coefficient(&Q::from_parts(0, 1, 2, 1)), "2i");
        assert_eq!(format_coefficient(&Q::from_parts(0, 1, -1, 1)), "-i");
        assert_eq!(format_coefficient(&Q::from_parts(1, 2, -3, 4)), "(1/2-3/4i)");
        assert_eq!(format_coefficient(&Q::from_parts(-1, 1, 2, 1)), "-(1-2i)");
    }

    #[test]
    fn round_trip_canonical_text() {
        let cases = [
            "(1+2i)*y^2*z^-1 + 3",
            "xi^2 - delta*eta^2 - 1",
            "-1/2i*y + 1/2i*y^-1",
            "y^-1*z*T",
            "0",
            "-(1-2i)*a*b + c",
        ];
        for s in cases {
            let p = LaurentPoly::parse(s).unwrap();
            assert_eq!(format_poly(&p), s, "round trip of {s}");
        }
    }

    #[test]
    fn imaginary_literals_and_reserved_i() {
        let p = LaurentPoly::parse("1/2i*y").unwrap();
        let q = LaurentPoly::parse("i*y/2").unwrap();
        assert_eq!(p, q);
        assert_eq!(p.vars().len(), 1);
    }

    #[test]
    fn division_only_when_polynomial() {
        assert!(LaurentPoly::parse("(y^2-1)/(y-1)").is_ok());
        assert!(LaurentPoly::parse("1/(z-1)").is_err());
        let f = parse_fraction("(y^2-1)/(z^2-1)", None).unwrap();
        assert_eq!(format_fraction(&f), "(y^2 - 1)/(z^2 - 1)");
    }

    #[test]
    fn parse_errors() {
        assert!(LaurentPoly::parse("y^").is_err());
        assert!(LaurentPoly::parse("y + # ").is_err());
        assert!(LaurentPoly::parse("(y").is_err());
        assert!(LaurentPoly::parse("").is_err());
    }
}
