use super::Expr;

/// Raw derivative; the caller simplifies.
pub(super) fn diff(e: &Expr, var: usize) -> Expr {
    if !e.depends_on(var) {
        return Expr::zero();
    }
    let d = |u: &Expr| diff(u, var);
    match e {
        Expr::Const(_) => Expr::zero(),
        Expr::Var(i) => Expr::Const(if *i == var { 1.0 } else { 0.0 }),
        Expr::Add(a, b) => d(a) + d(b),
        Expr::Sub(a, b) => d(a) - d(b),
        Expr::Neg(u) => -d(u),
        Expr::Mul(a, b) => d(a) * (**b).clone() + (**a).clone() * d(b),
        Expr::Div(a, b) => {
            let (a, b) = (&**a, &**b);
            (d(a) * b.clone() - a.clone() * d(b)) / b.clone().powf(2.0)
        }
        Expr::Pow(base, exponent) => {
            let (u, v) = (&**base, &**exponent);
            if !v.depends_on(var) {
                // v * u^(v-1) * u'
                v.clone() * u.clone().pow(v.clone() - 1.0) * d(u)
            } else if !u.depends_on(var) {
                // u^v * ln(u) * v'
                e.clone() * u.clone().ln() * d(v)
            } else {
                e.clone() * (d(v) * u.clone().ln() + v.clone() * d(u) / u.clone())
            }
        }
        Expr::Exp(u) => e.clone() * d(u),
        Expr::Ln(u) => d(u) / (**u).clone(),
        Expr::Sin(u) => (**u).clone().cos() * d(u),
        Expr::Cos(u) => -((**u).clone().sin()) * d(u),
        // sign(0) = 0 at the kink
        Expr::Abs(u) => (**u).clone().sign() * d(u),
        Expr::Sign(_) => Expr::zero(),
    }
}
