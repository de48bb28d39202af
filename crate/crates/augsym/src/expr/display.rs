//! Text and LaTeX rendering.
//!
//! Text uses `S[v]`, `m[v]`, `AUG[v1;v2;...]`, `(n)_k`; denominators print
//! in factored form, `n*(n-1)*(n-2)`. LaTeX mirrors the bracket-subscript
//! notation `S_{\{\{2,1\}\}}`.

use num_traits::{One, Signed};

use crate::expr::atom::Atom;
use crate::expr::rational::{Denominator, RationalExpr};
use crate::expr::symexpr::SymExpr;
use crate::Rational;

fn atom_text(a: &Atom) -> String {
    match a {
        Atom::N => "n".to_string(),
        Atom::Falling(k) => format!("(n)_{k}"),
        Atom::PowerSum(v) => format!("S[{v}]"),
        Atom::Moment(v) => format!("m[{v}]"),
        Atom::Aug(b) => format!("AUG[{b}]"),
    }
}

fn atom_latex(a: &Atom) -> String {
    match a {
        Atom::N => "n".to_string(),
        Atom::Falling(k) => format!("(n)_{{{k}}}"),
        Atom::PowerSum(v) => format!("S_{{{v}}}"),
        Atom::Moment(v) => format!("m_{{{v}}}"),
        Atom::Aug(b) => {
            let parts: Vec<String> = b
                .parts()
                .iter()
                .map(|p| format!("\\{{{p}\\}}"))
                .collect();
            format!("S_{{\\{{{}\\}}}}", parts.join(","))
        }
    }
}

fn rational_text(c: &Rational) -> String {
    c.to_string()
}

fn rational_latex(c: &Rational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

fn render_expr(
    e: &SymExpr,
    atom_fmt: fn(&Atom) -> String,
    coeff_fmt: fn(&Rational) -> String,
    sep: &str,
    pow_open: &str,
    pow_close: &str,
) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (term, coeff)) in e.terms().enumerate() {
        let negative = coeff.is_negative();
        let mag = coeff.abs();
        let mut factors: Vec<String> = Vec::new();
        if !mag.is_one() || term.is_one() {
            factors.push(coeff_fmt(&mag));
        }
        for (a, p) in term.atoms() {
            if *p == 1 {
                factors.push(atom_fmt(a));
            } else {
                factors.push(format!("{}^{pow_open}{p}{pow_close}", atom_fmt(a)));
            }
        }
        let piece = factors.join(sep);
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else if negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&piece);
    }
    out
}

pub(crate) fn expr_text(e: &SymExpr) -> String {
    render_expr(e, atom_text, rational_text, "*", "", "")
}

pub(crate) fn expr_latex(e: &SymExpr) -> String {
    render_expr(e, atom_latex, rational_latex, " ", "{", "}")
}

pub(crate) fn denominator_text(d: &Denominator) -> String {
    let mut factors: Vec<String> = Vec::new();
    if !d.constant().is_one() {
        factors.push(rational_text(d.constant()));
    }
    for (&j, &e) in d.factors() {
        let base = if j == 0 {
            "n".to_string()
        } else {
            format!("(n-{j})")
        };
        if e == 1 {
            factors.push(base);
        } else {
            factors.push(format!("{base}^{e}"));
        }
    }
    if factors.is_empty() {
        "1".to_string()
    } else {
        factors.join("*")
    }
}

pub(crate) fn denominator_latex(d: &Denominator) -> String {
    let mut out = String::new();
    if !d.constant().is_one() {
        out.push_str(&rational_latex(d.constant()));
    }
    for (&j, &e) in d.factors() {
        let base = if j == 0 {
            "n".to_string()
        } else {
            format!("(n-{j})")
        };
        if e == 1 {
            out.push_str(&base);
        } else {
            out.push_str(&format!("{base}^{{{e}}}"));
        }
    }
    if out.is_empty() {
        "1".to_string()
    } else {
        out
    }
}

pub(crate) fn rational_expr_text(re: &RationalExpr) -> String {
    let num = expr_text(&re.num);
    if re.den.is_one() {
        return num;
    }
    let den = denominator_text(&re.den);
    let simple_num = re.num.term_count() <= 1 && !num.contains(' ');
    let simple_den = !den.contains('*') && !den.contains('^');
    if simple_num && simple_den {
        format!("{num}/{den}")
    } else {
        let num = if re.num.term_count() > 1 {
            format!("({num})")
        } else {
            num
        };
        format!("{num} / ({den})")
    }
}

pub(crate) fn rational_expr_latex(re: &RationalExpr) -> String {
    let num = expr_latex(&re.num);
    if re.den.is_one() {
        num
    } else {
        format!("\\frac{{{num}}}{{{}}}", denominator_latex(&re.den))
    }
}

impl std::fmt::Display for SymExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&expr_text(self))
    }
}

impl std::fmt::Display for RationalExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&rational_expr_text(self))
    }
}

impl std::fmt::Display for Denominator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&denominator_text(self))
    }
}

impl SymExpr {
    pub fn to_text(&self) -> String {
        expr_text(self)
    }

    pub fn to_latex(&self) -> String {
        expr_latex(self)
    }
}

impl RationalExpr {
    pub fn to_text(&self) -> String {
        rational_expr_text(self)
    }

    pub fn to_latex(&self) -> String {
        rational_expr_latex(self)
    }
}
