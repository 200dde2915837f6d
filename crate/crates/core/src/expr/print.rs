//! Canonical printer. Output parses back to a structurally identical tree
//! for every tree the parser can produce.

use std::fmt;

use super::Expr;

fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) => 2,
        Expr::Pow(..) => 3,
        Expr::Neg(..) => 4,
        _ => 5,
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, e: &Expr, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

fn write_binary(f: &mut fmt::Formatter<'_>, level: u8, op: &str, a: &Expr, b: &Expr) -> fmt::Result {
    write_operand(f, a, precedence(a) < level)?;
    write!(f, "{op}")?;
    write_operand(f, b, precedence(b) <= level)
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) if c.is_sign_negative() => write!(f, "(-{})", -c),
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Var(i) => write!(f, "x{i}"),
            Expr::Add(a, b) => write_binary(f, 1, " + ", a, b),
            Expr::Sub(a, b) => write_binary(f, 1, " - ", a, b),
            Expr::Mul(a, b) => write_binary(f, 2, " * ", a, b),
            Expr::Div(a, b) => write_binary(f, 2, " / ", a, b),
            Expr::Pow(a, b) => {
                // right-associative: a nested power needs parens on the left, not the right
                write_operand(f, a, precedence(a) <= 3)?;
                write!(f, "^")?;
                write_operand(f, b, precedence(b) < 3)
            }
            // a negated literal prints like a negative constant so both forms share one spelling
            Expr::Neg(u) if matches!(**u, Expr::Const(c) if !c.is_sign_negative()) => write!(f, "(-{u})"),
            Expr::Neg(u) => {
                write!(f, "-")?;
                write_operand(f, u, precedence(u) < 4)
            }
            Expr::Exp(u) => write!(f, "exp({u})"),
            Expr::Ln(u) => write!(f, "ln({u})"),
            Expr::Sin(u) => write!(f, "sin({u})"),
            Expr::Cos(u) => write!(f, "cos({u})"),
            Expr::Abs(u) => write!(f, "abs({u})"),
            Expr::Sign(u) => write!(f, "sign({u})"),
        }
    }
}
