//! Recursive-descent parser.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := power (('*' | '/') power)*
//! power   := unary ('^' power)?
//! unary   := '-' unary | primary
//! primary := number | 'pi' | 'e' | 'x' digits | func '(' expr ')' | '(' expr ')'
//! func    := exp | ln | sin | cos | abs | sign
//! ```
//!
//! Unary minus binds tighter than `^`, so `-x1^2` is `(-x1)^2`.

use super::Expr;
use crate::error::ParseDiagnostic;

const OPERAND: &str = "number, variable, function or '('";

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn describe(tok: Option<&(usize, Tok)>) -> String {
    match tok {
        None => "end of input".into(),
        Some((_, t)) => match t {
            Tok::Num(v) => format!("number {v}"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
        },
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseDiagnostic> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' | b'.' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                // exponent only when followed by digits, so "2e" stays an error rather than "2·e"
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let lit = &text[start..i];
                let value: f64 = lit
                    .parse()
                    .map_err(|_| ParseDiagnostic::new(start, format!("malformed number '{lit}'"), "decimal literal"))?;
                if !value.is_finite() {
                    return Err(ParseDiagnostic::new(
                        start,
                        format!("number '{lit}' is out of range"),
                        "finite literal",
                    ));
                }
                out.push((start, Tok::Num(value)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ParseDiagnostic::new(
                    start,
                    format!("unexpected character '{ch}'"),
                    OPERAND,
                ));
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.len, |(o, _)| *o)
    }

    fn unexpected(&self, expected: &str) -> ParseDiagnostic {
        ParseDiagnostic::new(
            self.offset(),
            format!("unexpected {}", describe(self.toks.get(self.pos))),
            expected,
        )
    }

    fn expr(&mut self) -> Result<Expr, ParseDiagnostic> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    lhs = lhs + self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    lhs = lhs - self.term()?;
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseDiagnostic> {
        let mut lhs = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    lhs = lhs * self.power()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    lhs = lhs / self.power()?;
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn power(&mut self) -> Result<Expr, ParseDiagnostic> {
        let base = self.unary()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let exponent = self.power()?;
            return Ok(base.pow(exponent));
        }
        Ok(base)
    }

    fn unary(&mut self) -> Result<Expr, ParseDiagnostic> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Expr, ParseDiagnostic> {
        let Some((offset, tok)) = self.toks.get(self.pos).cloned() else {
            return Err(self.unexpected(OPERAND));
        };
        match tok {
            Tok::Num(v) => {
                self.pos += 1;
                Ok(Expr::Const(v))
            }
            Tok::LParen => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect_rparen()?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                self.pos += 1;
                match name.as_str() {
                    "pi" => return Ok(Expr::Const(std::f64::consts::PI)),
                    "e" => return Ok(Expr::Const(std::f64::consts::E)),
                    _ => {}
                }
                if let Some(digits) = name.strip_prefix('x') {
                    if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
                        return match digits.parse::<usize>() {
                            Ok(i) if i >= 1 => Ok(Expr::Var(i)),
                            _ => Err(ParseDiagnostic::new(
                                offset,
                                format!("invalid variable '{name}'"),
                                "x1, x2, ...",
                            )),
                        };
                    }
                }
                let build: fn(Expr) -> Expr = match name.as_str() {
                    "exp" => Expr::exp,
                    "ln" => Expr::ln,
                    "sin" => Expr::sin,
                    "cos" => Expr::cos,
                    "abs" => Expr::abs,
                    "sign" => Expr::sign,
                    _ => {
                        return Err(ParseDiagnostic::new(
                            offset,
                            format!("unknown identifier '{name}'"),
                            "variable x1..xN, pi, e, or one of exp, ln, sin, cos, abs, sign",
                        ))
                    }
                };
                if self.peek() != Some(&Tok::LParen) {
                    return Err(self.unexpected("'(' after function name"));
                }
                self.pos += 1;
                let arg = self.expr()?;
                self.expect_rparen()?;
                Ok(build(arg))
            }
            _ => Err(self.unexpected(OPERAND)),
        }
    }

    fn expect_rparen(&mut self) -> Result<(), ParseDiagnostic> {
        if self.peek() == Some(&Tok::RParen) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected("')'"))
        }
    }
}

pub(super) fn parse(text: &str) -> Result<Expr, ParseDiagnostic> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(ParseDiagnostic::new(0, "empty expression", OPERAND));
    }
    let mut parser = Parser {
        toks,
        pos: 0,
        len: text.len(),
    };
    let e = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return Err(parser.unexpected("operator or end of input"));
    }
    Ok(e)
}
