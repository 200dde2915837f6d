//! Scalar field expressions over variables `x1..xN`.
//!
//! An [`Expr`] is an immutable tree. It is the one representation used for
//! integrands, form coefficients and the components of smooth maps, so the
//! same tree can be evaluated numerically, differentiated symbolically and
//! printed back as parseable text.
//!
//! ```
//! use prodcalc::expr::Expr;
//!
//! let f = Expr::parse("x1^2 * sin(x2)").unwrap();
//! let df = f.diff(1);
//! assert_eq!(df.to_string(), "2 * x1 * sin(x2)");
//! assert!((df.eval(&[1.0, 0.5]).unwrap() - 2.0 * 0.5f64.sin()).abs() < 1e-15);
//! ```

mod diff;
mod parser;
mod print;
mod simplify;

use std::ops;

use crate::error::{Error, ParseDiagnostic, Result};

/// Expression tree node.
///
/// `Sign` is produced only by differentiating `Abs`; it evaluates to -1, 0 or 1.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    /// 1-based variable index; `Var(1)` is `x1`.
    Var(usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Exp(Box<Expr>),
    Ln(Box<Expr>),
    Sin(Box<Expr>),
    Cos(Box<Expr>),
    Abs(Box<Expr>),
    Sign(Box<Expr>),
}

impl Expr {
    pub fn parse(text: &str) -> Result<Expr, ParseDiagnostic> {
        parser::parse(text)
    }

    /// Finite constant. Panics on NaN or infinity.
    pub fn constant(value: f64) -> Expr {
        assert!(value.is_finite(), "expression constants must be finite");
        Expr::Const(value)
    }

    /// Variable `x{index}`. Panics on index 0.
    pub fn var(index: usize) -> Expr {
        assert!(index >= 1, "variable indices start at 1");
        Expr::Var(index)
    }

    pub fn zero() -> Expr {
        Expr::Const(0.0)
    }

    pub fn one() -> Expr {
        Expr::Const(1.0)
    }

    pub fn pow(self, exponent: Expr) -> Expr {
        Expr::Pow(Box::new(self), Box::new(exponent))
    }

    pub fn powf(self, exponent: f64) -> Expr {
        self.pow(Expr::constant(exponent))
    }

    pub fn exp(self) -> Expr {
        Expr::Exp(Box::new(self))
    }

    pub fn ln(self) -> Expr {
        Expr::Ln(Box::new(self))
    }

    pub fn sin(self) -> Expr {
        Expr::Sin(Box::new(self))
    }

    pub fn cos(self) -> Expr {
        Expr::Cos(Box::new(self))
    }

    pub fn abs(self) -> Expr {
        Expr::Abs(Box::new(self))
    }

    pub fn sign(self) -> Expr {
        Expr::Sign(Box::new(self))
    }

    pub fn as_const(&self) -> Option<f64> {
        match self {
            Expr::Const(c) => Some(*c),
            _ => None,
        }
    }

    pub fn is_const(&self, value: f64) -> bool {
        matches!(self, Expr::Const(c) if *c == value)
    }

    /// Largest variable index referenced, or 0 for a closed expression.
    pub fn max_var(&self) -> usize {
        match self {
            Expr::Const(_) => 0,
            Expr::Var(i) => *i,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Pow(a, b) => {
                a.max_var().max(b.max_var())
            }
            Expr::Neg(u) | Expr::Exp(u) | Expr::Ln(u) | Expr::Sin(u) | Expr::Cos(u) | Expr::Abs(u) | Expr::Sign(u) => {
                u.max_var()
            }
        }
    }

    pub fn depends_on(&self, var: usize) -> bool {
        match self {
            Expr::Const(_) => false,
            Expr::Var(i) => *i == var,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Pow(a, b) => {
                a.depends_on(var) || b.depends_on(var)
            }
            Expr::Neg(u) | Expr::Exp(u) | Expr::Ln(u) | Expr::Sin(u) | Expr::Cos(u) | Expr::Abs(u) | Expr::Sign(u) => {
                u.depends_on(var)
            }
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Expr::Const(_) | Expr::Var(_) => 1,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Pow(a, b) => {
                1 + a.size() + b.size()
            }
            Expr::Neg(u) | Expr::Exp(u) | Expr::Ln(u) | Expr::Sin(u) | Expr::Cos(u) | Expr::Abs(u) | Expr::Sign(u) => {
                1 + u.size()
            }
        }
    }

    /// Evaluate at `point`, where `point[i - 1]` is the value of `xi`.
    pub fn eval(&self, point: &[f64]) -> Result<f64> {
        Ok(match self {
            Expr::Const(c) => *c,
            Expr::Var(i) => *point.get(i - 1).ok_or_else(|| {
                Error::ShapeMismatch(format!(
                    "expression references x{i} but the point has {} coordinates",
                    point.len()
                ))
            })?,
            Expr::Add(a, b) => a.eval(point)? + b.eval(point)?,
            Expr::Sub(a, b) => a.eval(point)? - b.eval(point)?,
            Expr::Mul(a, b) => a.eval(point)? * b.eval(point)?,
            Expr::Div(a, b) => {
                let num = a.eval(point)?;
                let den = b.eval(point)?;
                if den == 0.0 {
                    return Err(Error::Domain("division by zero".into()));
                }
                num / den
            }
            Expr::Pow(a, b) => pow_checked(a.eval(point)?, b.eval(point)?)?,
            Expr::Neg(u) => -u.eval(point)?,
            Expr::Exp(u) => u.eval(point)?.exp(),
            Expr::Ln(u) => {
                let v = u.eval(point)?;
                if v <= 0.0 {
                    return Err(Error::Domain(format!("ln of non-positive value {v}")));
                }
                v.ln()
            }
            Expr::Sin(u) => u.eval(point)?.sin(),
            Expr::Cos(u) => u.eval(point)?.cos(),
            Expr::Abs(u) => u.eval(point)?.abs(),
            Expr::Sign(u) => {
                let v = u.eval(point)?;
                if v > 0.0 {
                    1.0
                } else if v < 0.0 {
                    -1.0
                } else {
                    0.0
                }
            }
        })
    }

    /// Replace every `xi` with `values[i - 1]`. Variables beyond `values` are left alone.
    pub fn substitute(&self, values: &[Expr]) -> Expr {
        let sub = |u: &Expr| Box::new(u.substitute(values));
        match self {
            Expr::Const(c) => Expr::Const(*c),
            Expr::Var(i) => values.get(i - 1).cloned().unwrap_or(Expr::Var(*i)),
            Expr::Add(a, b) => Expr::Add(sub(a), sub(b)),
            Expr::Sub(a, b) => Expr::Sub(sub(a), sub(b)),
            Expr::Mul(a, b) => Expr::Mul(sub(a), sub(b)),
            Expr::Div(a, b) => Expr::Div(sub(a), sub(b)),
            Expr::Pow(a, b) => Expr::Pow(sub(a), sub(b)),
            Expr::Neg(u) => Expr::Neg(sub(u)),
            Expr::Exp(u) => Expr::Exp(sub(u)),
            Expr::Ln(u) => Expr::Ln(sub(u)),
            Expr::Sin(u) => Expr::Sin(sub(u)),
            Expr::Cos(u) => Expr::Cos(sub(u)),
            Expr::Abs(u) => Expr::Abs(sub(u)),
            Expr::Sign(u) => Expr::Sign(sub(u)),
        }
    }

    /// Symbolic partial derivative with respect to `x{var}`, simplified.
    pub fn diff(&self, var: usize) -> Expr {
        assert!(var >= 1, "variable indices start at 1");
        diff::diff(self, var).simplify()
    }

    /// Constant folding and identity elimination; never changes the value at a valid point.
    pub fn simplify(&self) -> Expr {
        simplify::simplify(self)
    }

    /// `ln(self)`, unwrapping `ln(exp(u))` to `u`.
    pub fn ln_of(self) -> Expr {
        match self {
            Expr::Exp(u) => *u,
            other => Expr::Ln(Box::new(other)).simplify(),
        }
    }

    /// `exp(self)`, unwrapping `exp(ln(u))` to `u`.
    ///
    /// The unwrapped form drops the positivity requirement of `ln`; callers
    /// that need it check positivity where the result is evaluated.
    pub fn exp_of(self) -> Expr {
        match self {
            Expr::Ln(u) => *u,
            other => Expr::Exp(Box::new(other)).simplify(),
        }
    }
}

fn pow_checked(base: f64, exponent: f64) -> Result<f64> {
    if base < 0.0 && exponent.fract() != 0.0 {
        return Err(Error::Domain(format!(
            "negative base {base} raised to non-integer power {exponent}"
        )));
    }
    if base == 0.0 && exponent < 0.0 {
        return Err(Error::Domain("zero raised to a negative power".into()));
    }
    Ok(base.powf(exponent))
}

impl From<f64> for Expr {
    fn from(value: f64) -> Self {
        Expr::constant(value)
    }
}

macro_rules! binary_op {
    ($trait:ident, $method:ident, $variant:ident) => {
        impl ops::$trait for Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                Expr::$variant(Box::new(self), Box::new(rhs))
            }
        }

        impl ops::$trait<f64> for Expr {
            type Output = Expr;
            fn $method(self, rhs: f64) -> Expr {
                Expr::$variant(Box::new(self), Box::new(Expr::constant(rhs)))
            }
        }
    };
}

binary_op!(Add, add, Add);
binary_op!(Sub, sub, Sub);
binary_op!(Mul, mul, Mul);
binary_op!(Div, div, Div);

impl ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

impl std::str::FromStr for Expr {
    type Err = ParseDiagnostic;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Expr::parse(s)
    }
}
