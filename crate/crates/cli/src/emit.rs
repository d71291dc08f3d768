use gman_core::aksz::{ActionReport, ActionTerm, Factor, SigmaModelMatch};
use gman_core::render::{latex_coefficient, latex_symbol};
use gman_core::Rational;
use serde::Serialize;

#[derive(Serialize)]
struct JsonFactor<'a> {
    field: &'a str,
    form_degree: usize,
    ghost_degree: i64,
    d: bool,
}

#[derive(Serialize)]
struct JsonTerm<'a> {
    coefficient: String,
    factors: Vec<JsonFactor<'a>>,
}

fn fraction(c: &Rational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

pub fn json_terms(terms: &[ActionTerm]) -> String {
    let list: Vec<JsonTerm> = terms
        .iter()
        .map(|t| JsonTerm {
            coefficient: fraction(&t.coefficient),
            factors: t
                .factors
                .iter()
                .map(|f| JsonFactor {
                    field: &f.field,
                    form_degree: f.form_degree,
                    ghost_degree: f.ghost_degree,
                    d: f.d,
                })
                .collect(),
        })
        .collect();
    serde_json::to_string_pretty(&list).expect("serializable")
}

fn latex_factor(f: &Factor) -> String {
    let sym = latex_symbol(&f.field);
    let sym = if sym.contains('^') { format!("{{{sym}}}") } else { sym };
    let comp = format!("{sym}^{{({})}}", f.form_degree);
    if f.d {
        format!("\\mathrm{{d}}{comp}")
    } else {
        comp
    }
}

fn latex_terms(terms: &[ActionTerm]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, t) in terms.iter().enumerate() {
        let neg = t.coefficient < Rational::from_integer(0.into());
        let mag = if neg { -t.coefficient.clone() } else { t.coefficient.clone() };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag != Rational::from_integer(1.into()) {
            out.push_str(&latex_coefficient(&mag));
        }
        out.push_str("\\int_\\Sigma ");
        let fs: Vec<String> = t.factors.iter().map(latex_factor).collect();
        out.push_str(&fs.join(" "));
    }
    out
}

fn signed(sign: i8, body: &str) -> String {
    if sign < 0 {
        format!("-{body}")
    } else {
        body.to_string()
    }
}

pub fn latex(report: &ActionReport, sigma: Option<&SigmaModelMatch>) -> Vec<String> {
    let mut out = Vec::new();
    if let Some(sm) = sigma {
        match (sm.kinetic_sign, sm.hamiltonian_sign) {
            (Some(a), Some(b)) => {
                out.push("% ghost-number-zero sector, X^i = x_i^{(0)}, \\eta_i = p_{x_i}^{(1)}".to_string());
                out.push(format!("S_0 = {}", signed(a, "\\int_\\Sigma \\eta_i \\mathrm{d}X^i")));
                out.push(format!(
                    "\\Theta_0 = {}",
                    signed(b, "\\frac{1}{2}\\int_\\Sigma \\pi^{ij}(X)\\eta_i\\eta_j")
                ));
            }
            _ => out.push("% ghost-number-zero sector does not match the sigma-model form".to_string()),
        }
    }
    out.push(format!(
        "% k = {}, n = {}, {}, action degree {}, mapping-space form degree k - n = {}",
        report.k, report.n, report.formalism, report.action_degree, report.mapping_form_degree
    ));
    out.push(format!("\\hat{{S}}_0 = {}", latex_terms(&report.kinetic_terms)));
    out.push(format!("\\hat{{\\Theta}} = {}", latex_terms(&report.hamiltonian_terms)));
    out
}
