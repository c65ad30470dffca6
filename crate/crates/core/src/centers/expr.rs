//! Arithmetic expression language for triangle-center functions.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | 's1' | 's2' | 's3' | 'A' | '(' expr ')' | 'sqrt' '(' expr ')'
//! ```
//!
//! `s1, s2, s3` are the sidelengths, `A` the triangle area. Expressions are
//! parsed once into an AST and evaluated per sample over any [`Scalar`].

use std::fmt;

/// Number-like values the AST can be evaluated over (f64 or software floats).
pub trait Scalar: Clone {
    fn from_i64(v: i64) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn div(&self, rhs: &Self) -> Self;
    fn sqrt(&self) -> Self;
    fn powi(&self, e: i32) -> Self;
    fn is_bad(&self) -> bool;
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn powi(&self, e: i32) -> Self {
        f64::powi(*self, e)
    }
    fn is_bad(&self) -> bool {
        !self.is_finite()
    }
}

/// Variables available to center functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    S1,
    S2,
    S3,
    Area,
}

/// Parsed expression tree.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(i64),
    Var(Var),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Sqrt(Box<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.pos, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: &str) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos,
            message: message.to_string(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(b'*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat(b'/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat(b'-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.integer()?;
            if !(1..=64).contains(&e) {
                return self.err("exponent out of range 1..=64");
            }
            Ok(Expr::Pow(Box::new(base), e as i32))
        } else {
            Ok(base)
        }
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| ParseError {
                pos: start,
                message: "integer overflow".into(),
            })
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Expr::Int(self.integer()?)),
            Some(b's') => {
                if self.src[self.pos..].starts_with(b"sqrt") {
                    self.pos += 4;
                    if !self.eat(b'(') {
                        return self.err("expected '(' after sqrt");
                    }
                    let e = self.expr()?;
                    if !self.eat(b')') {
                        return self.err("expected ')'");
                    }
                    return Ok(Expr::Sqrt(Box::new(e)));
                }
                let v = match self.src.get(self.pos + 1) {
                    Some(b'1') => Var::S1,
                    Some(b'2') => Var::S2,
                    Some(b'3') => Var::S3,
                    _ => return self.err("expected s1, s2, s3 or sqrt"),
                };
                self.pos += 2;
                Ok(Expr::Var(v))
            }
            Some(b'A') => {
                self.pos += 1;
                Ok(Expr::Var(Var::Area))
            }
            _ => self.err("expected atom"),
        }
    }
}

/// Parse a center-function expression.
pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

impl Expr {
    /// Evaluate with the given variable bindings (s1, s2, s3, area).
    pub fn eval<S: Scalar>(&self, s1: &S, s2: &S, s3: &S, area: &S) -> S {
        match self {
            Expr::Int(v) => S::from_i64(*v),
            Expr::Var(Var::S1) => s1.clone(),
            Expr::Var(Var::S2) => s2.clone(),
            Expr::Var(Var::S3) => s3.clone(),
            Expr::Var(Var::Area) => area.clone(),
            Expr::Neg(e) => S::from_i64(0).sub(&e.eval(s1, s2, s3, area)),
            Expr::Add(a, b) => a.eval(s1, s2, s3, area).add(&b.eval(s1, s2, s3, area)),
            Expr::Sub(a, b) => a.eval(s1, s2, s3, area).sub(&b.eval(s1, s2, s3, area)),
            Expr::Mul(a, b) => a.eval(s1, s2, s3, area).mul(&b.eval(s1, s2, s3, area)),
            Expr::Div(a, b) => a.eval(s1, s2, s3, area).div(&b.eval(s1, s2, s3, area)),
            Expr::Pow(a, e) => a.eval(s1, s2, s3, area).powi(*e),
            Expr::Sqrt(a) => a.eval(s1, s2, s3, area).sqrt(),
        }
    }

    /// True if the expression uses the area variable or a square root, i.e.
    /// is not a rational function of the sidelengths.
    pub fn is_irrational(&self) -> bool {
        match self {
            Expr::Int(_) | Expr::Var(Var::S1) | Expr::Var(Var::S2) | Expr::Var(Var::S3) => false,
            Expr::Var(Var::Area) | Expr::Sqrt(_) => true,
            Expr::Neg(e) | Expr::Pow(e, _) => e.is_irrational(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.is_irrational() || b.is_irrational()
            }
        }
    }

    /// Print in the same grammar the parser accepts (round-trip stable).
    pub fn print(&self) -> String {
        fn go(e: &Expr, parent: u8, out: &mut String) {
            let prec = |e: &Expr| match e {
                Expr::Add(..) | Expr::Sub(..) => 1u8,
                Expr::Mul(..) | Expr::Div(..) => 2,
                Expr::Neg(..) => 1,
                _ => 3,
            };
            let mine = prec(e);
            let wrap = mine < parent;
            if wrap {
                out.push('(');
            }
            match e {
                Expr::Int(v) => out.push_str(&v.to_string()),
                Expr::Var(Var::S1) => out.push_str("s1"),
                Expr::Var(Var::S2) => out.push_str("s2"),
                Expr::Var(Var::S3) => out.push_str("s3"),
                Expr::Var(Var::Area) => out.push('A'),
                Expr::Neg(a) => {
                    out.push('-');
                    go(a, 2, out);
                }
                Expr::Add(a, b) => {
                    go(a, 1, out);
                    out.push('+');
                    go(b, 2, out);
                }
                Expr::Sub(a, b) => {
                    go(a, 1, out);
                    out.push('-');
                    go(b, 2, out);
                }
                Expr::Mul(a, b) => {
                    go(a, 2, out);
                    out.push('*');
                    go(b, 3, out);
                }
                Expr::Div(a, b) => {
                    go(a, 2, out);
                    out.push('/');
                    go(b, 3, out);
                }
                Expr::Pow(a, p) => {
                    go(a, 3, out);
                    out.push('^');
                    out.push_str(&p.to_string());
                }
                Expr::Sqrt(a) => {
                    out.push_str("sqrt(");
                    go(a, 0, out);
                    out.push(')');
                }
            }
            if wrap {
                out.push(')');
            }
        }
        let mut s = String::new();
        go(self, 0, &mut s);
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_evaluates() {
        let e = parse("s2*s3*(s2+s3-s1)*(s2-s3)^2").unwrap();
        let v = e.eval(&3.0, &4.0, &5.0, &6.0);
        assert_eq!(v, 4.0 * 5.0 * 6.0 * 1.0);
        assert!(!e.is_irrational());
        let e = parse("s1*(sqrt(3)*(s1^2-s2^2-s3^2)-4*A)").unwrap();
        assert!(e.is_irrational());
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse("s4").is_err());
        assert!(parse("s1+").is_err());
        assert!(parse("(s1").is_err());
        assert!(parse("s1^0").is_err());
        assert!(parse("s1 s2").is_err());
    }

    #[test]
    fn print_round_trips() {
        for src in [
            "1",
            "1/(s2-s3)",
            "s1*(s2^2+s3^2-s1^2)",
            "(s2+s3)*(s1-s2+s3)*(s1+s2-s3)-s1*(s2+s3-s1)*(s1+s2+s3)",
            "s1^4-2*(s2^2-s3^2)^2+s1^2*(s2^2+s3^2+4*sqrt(3)*A)",
        ] {
            let e = parse(src).unwrap();
            let printed = e.print();
            let e2 = parse(&printed).unwrap();
            assert_eq!(e, e2, "round-trip failure: {src} -> {printed}");
        }
    }
}
