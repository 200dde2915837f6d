use super::Expr;

/// Fold a node whose children are all constants, keeping the result only when
/// evaluation succeeds and is finite. Uses the evaluator itself so folded
/// values are bit-identical to unfolded evaluation.
fn fold(e: Expr) -> Expr {
    match e.eval(&[]) {
        Ok(v) if v.is_finite() => Expr::Const(v),
        _ => e,
    }
}

pub(super) fn simplify(e: &Expr) -> Expr {
    match e {
        Expr::Const(_) | Expr::Var(_) => e.clone(),
        Expr::Add(a, b) => {
            let (a, b) = (simplify(a), simplify(b));
            match (a.as_const(), b.as_const()) {
                (Some(_), Some(_)) => fold(a + b),
                (Some(0.0), _) => b,
                (_, Some(0.0)) => a,
                _ => a + b,
            }
        }
        Expr::Sub(a, b) => {
            let (a, b) = (simplify(a), simplify(b));
            match (a.as_const(), b.as_const()) {
                (Some(_), Some(_)) => fold(a - b),
                (_, Some(0.0)) => a,
                (Some(0.0), _) => simplify(&-b),
                _ => a - b,
            }
        }
        Expr::Mul(a, b) => {
            let (a, b) = (simplify(a), simplify(b));
            match (a.as_const(), b.as_const()) {
                (Some(_), Some(_)) => fold(a * b),
                (Some(0.0), _) | (_, Some(0.0)) => Expr::zero(),
                (Some(1.0), _) => b,
                (_, Some(1.0)) => a,
                (Some(-1.0), _) => simplify(&-b),
                (_, Some(-1.0)) => simplify(&-a),
                _ => a * b,
            }
        }
        Expr::Div(a, b) => {
            let (a, b) = (simplify(a), simplify(b));
            match (a.as_const(), b.as_const()) {
                (Some(_), Some(_)) => fold(a / b),
                (_, Some(1.0)) => a,
                (Some(0.0), _) => Expr::zero(),
                _ => a / b,
            }
        }
        Expr::Pow(a, b) => {
            let (a, b) = (simplify(a), simplify(b));
            match (a.as_const(), b.as_const()) {
                (Some(_), Some(_)) => fold(a.pow(b)),
                (_, Some(1.0)) => a,
                (_, Some(0.0)) => Expr::one(),
                (Some(1.0), _) => Expr::one(),
                _ => a.pow(b),
            }
        }
        Expr::Neg(u) => match simplify(u) {
            Expr::Neg(inner) => *inner,
            Expr::Const(c) => Expr::Const(-c),
            other => -other,
        },
        Expr::Exp(u) => unary(simplify(u), Expr::exp),
        Expr::Ln(u) => unary(simplify(u), Expr::ln),
        Expr::Sin(u) => unary(simplify(u), Expr::sin),
        Expr::Cos(u) => unary(simplify(u), Expr::cos),
        Expr::Abs(u) => unary(simplify(u), Expr::abs),
        Expr::Sign(u) => unary(simplify(u), Expr::sign),
    }
}

fn unary(arg: Expr, build: fn(Expr) -> Expr) -> Expr {
    if arg.as_const().is_some() {
        fold(build(arg))
    } else {
        build(arg)
    }
}
