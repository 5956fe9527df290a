//! Expression syntax tree and its minimal-parenthesis printer.

use std::fmt;

use opcalc::Cplx;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => " + ",
            BinOp::Sub => " - ",
            BinOp::Mul => "*",
            BinOp::Div => "/",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
        }
    }
}

/// Operator applications; parameters are numeric literals.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum OpKind {
    /// `T[α]`
    T(Cplx),
    /// `tau[q]`
    Tau(f64),
    /// `sigma[d]`
    Sigma(u32),
    /// `dds`
    Dds,
    /// `D = −s² d/ds`
    D,
    /// `Dp = −h⁻¹ d/ds`
    Dp,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Cplx),
    S,
    L,
    H,
    /// `h^{λ}`
    HPow(f64),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    /// Integer power.
    Pow(Box<Expr>, i32),
    Op(OpKind, Box<Expr>),
}

impl Expr {
    pub fn bin(op: BinOp, a: Expr, b: Expr) -> Self {
        Expr::Bin(op, Box::new(a), Box::new(b))
    }

    pub fn op(kind: OpKind, e: Expr) -> Self {
        Expr::Op(kind, Box::new(e))
    }

    /// True when no operator application occurs in the tree.
    pub fn is_operator_free(&self) -> bool {
        match self {
            Expr::Num(_) | Expr::S | Expr::L | Expr::H | Expr::HPow(_) => true,
            Expr::Neg(e) | Expr::Pow(e, _) => e.is_operator_free(),
            Expr::Bin(_, a, b) => a.is_operator_free() && b.is_operator_free(),
            Expr::Op(..) => false,
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Bin(op, ..) => op.precedence(),
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            // non-plain literals print with their own parentheses
            _ => 5,
        }
    }
}

/// Literals the parser produces directly: non-negative reals and non-negative
/// imaginaries. Anything else prints as a parenthesised sum.
fn is_plain_literal(c: Cplx) -> bool {
    (c.im == 0.0 && !c.re.is_sign_negative())
        || (c.re == 0.0 && !c.re.is_sign_negative() && c.im > 0.0)
}

/// Complex literal as accepted in operator parameters: `a`, `bi`, `a+bi`.
pub fn fmt_complex_literal(c: Cplx) -> String {
    match (c.re, c.im) {
        (re, 0.0) => format!("{re}"),
        (0.0, im) => format!("{im}i"),
        (re, im) if im < 0.0 => format!("{re}-{}i", -im),
        (re, im) => format!("{re}+{im}i"),
    }
}

fn fmt_num(c: Cplx) -> String {
    if is_plain_literal(c) {
        if c.im == 0.0 {
            format!("{}", c.re)
        } else if c.im == 1.0 {
            "i".into()
        } else {
            format!("{}i", c.im)
        }
    } else {
        format!("({})", fmt_complex_literal(c))
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, e: &Expr, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(c) => f.write_str(&fmt_num(*c)),
            Expr::S => f.write_str("s"),
            Expr::L => f.write_str("l"),
            Expr::H => f.write_str("h"),
            Expr::HPow(x) => write!(f, "h^{{{x}}}"),
            Expr::Neg(e) => {
                f.write_str("-")?;
                write_child(f, e, e.precedence() < 3)
            }
            // binary operators associate to the left
            Expr::Bin(op, a, b) => {
                let p = op.precedence();
                write_child(f, a, a.precedence() < p)?;
                f.write_str(op.symbol())?;
                write_child(f, b, b.precedence() <= p)
            }
            Expr::Pow(e, n) => {
                write_child(f, e, e.precedence() < 5)?;
                write!(f, "^{n}")
            }
            Expr::Op(kind, e) => {
                match kind {
                    OpKind::T(a) => write!(f, "T[{}]", fmt_complex_literal(*a))?,
                    OpKind::Tau(q) => write!(f, "tau[{q}]")?,
                    OpKind::Sigma(d) => write!(f, "sigma[{d}]")?,
                    OpKind::Dds => f.write_str("dds")?,
                    OpKind::D => f.write_str("D")?,
                    OpKind::Dp => f.write_str("Dp")?,
                }
                write!(f, "({e})")
            }
        }
    }
}
