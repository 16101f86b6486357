//! Plain-text and LaTeX rendering of solutions and monomials.
//!
//! Monomial factors are grouped by the absolute value of their exponent.
//! Within a group, positive and negative quantities are paired into a
//! ratio `(num/den)^e`; unpaired quantities are written as single powers
//! ahead of the ratio. Pi groups put positive exponents in the numerator.

use num_traits::{One, Signed, Zero};

use crate::pi::{Coefficient, Monomial, PiSolution};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Style {
    #[default]
    Plain,
    Latex,
}

pub trait Render {
    fn render(&self, style: Style) -> String;
}

impl Render for PiSolution {
    fn render(&self, style: Style) -> String {
        let problem = self.problem();
        let names = problem.quantity_names();
        let mut pieces = Vec::new();
        if self.k() == 0 {
            pieces.push(constant(style));
        }
        pieces.extend(monomial_factors(&names, self.y(), style));
        match self.kernel() {
            [] => {}
            [x] => pieces.push(format!("f({})", pi_group(&names, x, style))),
            groups => {
                let args: Vec<String> = groups.iter().map(|x| pi_group(&names, x, style)).collect();
                pieces.push(format!("F({})", args.join(", ")));
            }
        }
        equation(&problem.target().name, pieces, style)
    }
}

impl Render for Monomial {
    fn render(&self, style: Style) -> String {
        let names: Vec<&str> = self.quantities.iter().map(String::as_str).collect();
        let mut pieces = Vec::new();
        match self.coefficient {
            Coefficient::Symbolic => pieces.push(constant(style)),
            Coefficient::Value(c) if c != 1.0 => pieces.push(format!("{c}")),
            Coefficient::Value(_) => {}
        }
        pieces.extend(monomial_factors(&names, &self.exponents, style));
        equation(&self.label, pieces, style)
    }
}

fn constant(style: Style) -> String {
    match style {
        Style::Plain => "const".into(),
        Style::Latex => r"\mathrm{const}".into(),
    }
}

fn equation(lhs: &str, pieces: Vec<String>, style: Style) -> String {
    let rhs = if pieces.is_empty() {
        "1".to_string()
    } else {
        pieces.join(times(style))
    };
    format!("{} = {}", name(lhs, style), rhs)
}

fn times(style: Style) -> &'static str {
    match style {
        Style::Plain => " * ",
        Style::Latex => r" \cdot ",
    }
}

fn name(raw: &str, style: Style) -> String {
    match style {
        Style::Plain => raw.to_string(),
        Style::Latex if raw.chars().count() == 1 => raw.to_string(),
        Style::Latex => format!(r"\mathrm{{{}}}", raw.replace('_', r"\_")),
    }
}

/// `base^e` for a nonzero exponent; `e == 1` yields `base`.
fn power(base: &str, e: &Rational, style: Style) -> String {
    if e.is_one() {
        return base.to_string();
    }
    match style {
        Style::Plain if e.is_integer() => format!("{base}^{e}"),
        Style::Plain => format!("{base}^({e})"),
        Style::Latex => format!("{base}^{{{e}}}"),
    }
}

fn is_half(e: &Rational) -> bool {
    e.numer().is_one() && *e.denom() == 2.into()
}

fn monomial_factors(names: &[&str], exponents: &[Rational], style: Style) -> Vec<String> {
    // Buckets of (|e|, positive indices, negative indices) in order of
    // first appearance.
    let mut buckets: Vec<(Rational, Vec<usize>, Vec<usize>)> = Vec::new();
    for (i, e) in exponents.iter().enumerate() {
        if e.is_zero() {
            continue;
        }
        let magnitude = e.abs();
        let slot = match buckets.iter().position(|(m, _, _)| *m == magnitude) {
            Some(slot) => slot,
            None => {
                buckets.push((magnitude, Vec::new(), Vec::new()));
                buckets.len() - 1
            }
        };
        if e.is_positive() {
            buckets[slot].1.push(i);
        } else {
            buckets[slot].2.push(i);
        }
    }

    let mut out = Vec::new();
    for (magnitude, pos, neg) in buckets {
        let paired = pos.len().min(neg.len());
        for &i in pos[paired..].iter() {
            out.push(single(names[i], &magnitude, style));
        }
        for &i in neg[paired..].iter() {
            out.push(power(&name(names[i], style), &-magnitude.clone(), style));
        }
        if paired > 0 {
            let num: Vec<String> = pos[..paired].iter().map(|&i| name(names[i], style)).collect();
            let den: Vec<String> = neg[..paired].iter().map(|&i| name(names[i], style)).collect();
            let inner = format!("{}/{}", num.join(times(style)), grouped(&den, style));
            out.push(match style {
                Style::Latex if is_half(&magnitude) => format!(r"\sqrt{{{inner}}}"),
                _ => power(&format!("({inner})"), &magnitude, style),
            });
        }
    }
    out
}

fn single(raw: &str, e: &Rational, style: Style) -> String {
    let base = name(raw, style);
    match style {
        Style::Latex if is_half(e) => format!(r"\sqrt{{{base}}}"),
        _ => power(&base, e, style),
    }
}

fn grouped(factors: &[String], style: Style) -> String {
    if factors.len() > 1 {
        format!("({})", factors.join(times(style)))
    } else {
        factors.join(times(style))
    }
}

fn pi_group(names: &[&str], x: &[Rational], style: Style) -> String {
    let mut num = Vec::new();
    let mut den = Vec::new();
    for (i, e) in x.iter().enumerate() {
        if e.is_zero() {
            continue;
        }
        let factor = power(&name(names[i], style), &e.abs(), style);
        if e.is_positive() {
            num.push(factor);
        } else {
            den.push(factor);
        }
    }
    let num_text = if num.is_empty() { "1".to_string() } else { num.join(times(style)) };
    match style {
        _ if den.is_empty() => num_text,
        Style::Plain => format!("{num_text} / {}", grouped(&den, style)),
        Style::Latex => format!(r"\frac{{{num_text}}}{{{}}}", den.join(times(style))),
    }
}
