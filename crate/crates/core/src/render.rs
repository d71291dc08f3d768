//! Plain-text and LaTeX renderers.
//!
//! The plain renderer produces text that the expression parser reads back to
//! the same polynomial. Terms appear in canonical monomial order.

use num_traits::{One, Signed, Zero};

use crate::graded::{Polynomial, Rational};

fn plain_coefficient(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn render_plain(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let ctx = p.context();
    let mut out = String::new();
    for (k, (m, c)) in p.terms().enumerate() {
        let negative = c.is_negative();
        let mag = c.abs();
        if k == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        for (i, &e) in m.iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(ctx.name(i).to_string()),
                _ => factors.push(format!("{}^{}", ctx.name(i), e)),
            }
        }
        if factors.is_empty() {
            out.push_str(&plain_coefficient(&mag));
        } else {
            if !mag.is_one() {
                out.push_str(&plain_coefficient(&mag));
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

const GREEK: &[&str] = &[
    "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta", "iota", "kappa",
    "lambda", "mu", "nu", "xi", "pi", "rho", "sigma", "tau", "phi", "chi", "psi", "omega",
];

fn greek_from_char(ch: char) -> Option<&'static str> {
    let table = [
        ('α', "alpha"), ('β', "beta"), ('γ', "gamma"), ('δ', "delta"), ('ε', "epsilon"),
        ('ζ', "zeta"), ('η', "eta"), ('θ', "theta"), ('ι', "iota"), ('κ', "kappa"),
        ('λ', "lambda"), ('μ', "mu"), ('ν', "nu"), ('ξ', "xi"), ('π', "pi"), ('ρ', "rho"),
        ('σ', "sigma"), ('τ', "tau"), ('φ', "phi"), ('χ', "chi"), ('ψ', "psi"), ('ω', "omega"),
    ];
    table.iter().find(|(c, _)| *c == ch).map(|(_, n)| *n)
}

/// LaTeX for a coordinate name: a trailing index becomes a superscript for
/// Greek stems and a subscript for Latin ones; `d(x)` renders as `\mathrm{d}x`.
pub fn latex_symbol(name: &str) -> String {
    if let Some(inner) = name.strip_prefix("d(").and_then(|s| s.strip_suffix(')')) {
        return format!("\\mathrm{{d}}{}", latex_symbol(inner));
    }
    let (stem, index) = match name.find(|c: char| c.is_ascii_digit() || c == '_') {
        Some(pos) => (&name[..pos], name[pos..].trim_start_matches('_')),
        None => (name, ""),
    };
    let mut chars = stem.chars();
    let (stem_tex, greek) = match (chars.next(), chars.next()) {
        (Some(ch), None) if greek_from_char(ch).is_some() => {
            (format!("\\{}", greek_from_char(ch).unwrap()), true)
        }
        _ if GREEK.contains(&stem) => (format!("\\{stem}"), true),
        _ => (stem.to_string(), false),
    };
    if index.is_empty() {
        stem_tex
    } else if greek {
        format!("{stem_tex}^{{{index}}}")
    } else {
        format!("{stem_tex}_{{{index}}}")
    }
}

pub fn latex_coefficient(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

pub fn render_latex(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let ctx = p.context();
    let mut out = String::new();
    for (k, (m, c)) in p.terms().enumerate() {
        let negative = c.is_negative();
        let mag = c.abs();
        if k == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let factors: Vec<String> = m
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                let s = latex_symbol(ctx.name(i));
                if e == 1 {
                    s
                } else {
                    format!("{{{s}}}^{{{e}}}")
                }
            })
            .collect();
        if factors.is_empty() {
            out.push_str(&latex_coefficient(&mag));
        } else {
            if !mag.is_one() && !mag.is_zero() {
                out.push_str(&latex_coefficient(&mag));
            }
            out.push_str(&factors.join(" "));
        }
    }
    out
}
