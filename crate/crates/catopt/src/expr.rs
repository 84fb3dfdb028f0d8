//! Scalar expression trees over the decision variables.
//!
//! Expressions are built by the problem parser and evaluated three ways:
//! over points for feasibility checks, over boxes for rigorous range
//! enclosures, and with forward-mode interval derivatives for the smear
//! branching rule. Printing is precedence-aware, so parsing a printed
//! expression reproduces the tree.

use crate::boxes::IntervalBox;
use crate::interval::Interval;
use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Const(f64),
    Var(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Sqrt(Box<Expr>),
}

impl Expr {
    /// Records every variable index appearing in the tree.
    pub fn collect_vars(&self, out: &mut Vec<usize>) {
        match self {
            Expr::Const(_) => {}
            Expr::Var(i) => {
                if !out.contains(i) {
                    out.push(*i);
                }
            }
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Sqrt(a) => a.collect_vars(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn vars(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out.sort_unstable();
        out
    }

    /// Plain floating-point evaluation; NaN signals an invalid operation.
    pub fn eval_point(&self, p: &[f64]) -> f64 {
        match self {
            Expr::Const(c) => *c,
            Expr::Var(i) => p[*i],
            Expr::Neg(a) => -a.eval_point(p),
            Expr::Add(a, b) => a.eval_point(p) + b.eval_point(p),
            Expr::Sub(a, b) => a.eval_point(p) - b.eval_point(p),
            Expr::Mul(a, b) => a.eval_point(p) * b.eval_point(p),
            Expr::Div(a, b) => a.eval_point(p) / b.eval_point(p),
            Expr::Pow(a, k) => a.eval_point(p).powi(*k as i32),
            Expr::Sqrt(a) => a.eval_point(p).sqrt(),
        }
    }

    /// Certified range enclosure over a box.
    pub fn eval_interval(&self, b: &IntervalBox) -> Interval {
        match self {
            Expr::Const(c) => Interval::point(*c),
            Expr::Var(i) => b.comp(*i),
            Expr::Neg(a) => a.eval_interval(b).neg(),
            Expr::Add(a, c) => a.eval_interval(b).add(&c.eval_interval(b)),
            Expr::Sub(a, c) => a.eval_interval(b).sub(&c.eval_interval(b)),
            Expr::Mul(a, c) => a.eval_interval(b).mul(&c.eval_interval(b)),
            Expr::Div(a, c) => a.eval_interval(b).div(&c.eval_interval(b)),
            Expr::Pow(a, k) => a.eval_interval(b).pow(*k),
            Expr::Sqrt(a) => a.eval_interval(b).sqrt(),
        }
    }

    /// Forward-mode interval derivatives: the enclosure of the value and of
    /// every partial derivative over the box.
    pub fn gradient_interval(&self, b: &IntervalBox) -> (Interval, Vec<Interval>) {
        let n = b.dim();
        let zero = || vec![Interval::point(0.0); n];
        match self {
            Expr::Const(c) => (Interval::point(*c), zero()),
            Expr::Var(i) => {
                let mut g = zero();
                g[*i] = Interval::point(1.0);
                (b.comp(*i), g)
            }
            Expr::Neg(a) => {
                let (v, g) = a.gradient_interval(b);
                (v.neg(), g.iter().map(Interval::neg).collect())
            }
            Expr::Add(a, c) => {
                let (va, ga) = a.gradient_interval(b);
                let (vc, gc) = c.gradient_interval(b);
                (va.add(&vc), ga.iter().zip(&gc).map(|(x, y)| x.add(y)).collect())
            }
            Expr::Sub(a, c) => {
                let (va, ga) = a.gradient_interval(b);
                let (vc, gc) = c.gradient_interval(b);
                (va.sub(&vc), ga.iter().zip(&gc).map(|(x, y)| x.sub(y)).collect())
            }
            Expr::Mul(a, c) => {
                let (va, ga) = a.gradient_interval(b);
                let (vc, gc) = c.gradient_interval(b);
                let g = ga
                    .iter()
                    .zip(&gc)
                    .map(|(x, y)| x.mul(&vc).add(&va.mul(y)))
                    .collect();
                (va.mul(&vc), g)
            }
            Expr::Div(a, c) => {
                let (va, ga) = a.gradient_interval(b);
                let (vc, gc) = c.gradient_interval(b);
                let v = va.div(&vc);
                // (a/c)' = (a' - (a/c) c') / c
                let g = ga
                    .iter()
                    .zip(&gc)
                    .map(|(x, y)| x.sub(&v.mul(y)).div(&vc))
                    .collect();
                (v, g)
            }
            Expr::Pow(a, k) => {
                let (va, ga) = a.gradient_interval(b);
                let f = Interval::point(*k as f64).mul(&va.pow(k - 1));
                (va.pow(*k), ga.iter().map(|x| f.mul(x)).collect())
            }
            Expr::Sqrt(a) => {
                let (va, ga) = a.gradient_interval(b);
                let v = va.sqrt();
                // 1 / (2 sqrt a), unbounded when the range touches zero
                let f = Interval::point(1.0).div(&Interval::point(2.0).mul(&v));
                (v, ga.iter().map(|x| f.mul(x)).collect())
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Const(_) | Expr::Var(_) | Expr::Sqrt(_) => 5,
        }
    }

    fn fmt_child(
        &self,
        f: &mut fmt::Formatter<'_>,
        names: &[String],
        min_prec: u8,
    ) -> fmt::Result {
        if self.precedence() < min_prec {
            write!(f, "(")?;
            self.fmt_with(f, names)?;
            write!(f, ")")
        } else {
            self.fmt_with(f, names)
        }
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, names: &[String]) -> fmt::Result {
        match self {
            Expr::Const(c) => {
                if *c < 0.0 {
                    write!(f, "({c})")
                } else {
                    write!(f, "{c}")
                }
            }
            Expr::Var(i) => write!(f, "{}", names[*i]),
            Expr::Neg(a) => {
                write!(f, "-")?;
                a.fmt_child(f, names, 4)
            }
            Expr::Add(a, b) => {
                a.fmt_child(f, names, 1)?;
                write!(f, " + ")?;
                b.fmt_child(f, names, 2)
            }
            Expr::Sub(a, b) => {
                a.fmt_child(f, names, 1)?;
                write!(f, " - ")?;
                b.fmt_child(f, names, 2)
            }
            Expr::Mul(a, b) => {
                a.fmt_child(f, names, 2)?;
                write!(f, " * ")?;
                b.fmt_child(f, names, 3)
            }
            Expr::Div(a, b) => {
                a.fmt_child(f, names, 2)?;
                write!(f, " / ")?;
                b.fmt_child(f, names, 3)
            }
            Expr::Pow(a, k) => {
                a.fmt_child(f, names, 5)?;
                write!(f, "^{k}")
            }
            Expr::Sqrt(a) => {
                write!(f, "sqrt(")?;
                a.fmt_with(f, names)?;
                write!(f, ")")
            }
        }
    }

    /// Renders the expression with the given variable names.
    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        struct D<'a>(&'a Expr, &'a [String]);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_with(f, self.1)
            }
        }
        D(self, names)
    }
}
