use gman_core::aksz::{families, match_sigma_model, total_action, SourceSpec};
use gman_core::courant::check_generalized_complex;
use gman_core::parse::{Diagnostic, Model};
use gman_core::reduction::{
    cotangent_constraints, poisson_reduction_conditions, reduced_poisson, Characteristic, ConstraintLocus, Reduction,
};
use gman_core::structures::{LInfinityTruncation, PoissonStructure};
use gman_core::{Error, GradedVectorField, GradingContext, Polynomial, SymplecticForm};

use crate::emit;
use crate::{from_error, CommandOutcome, Emit, Report, Status};

type Outcome = Result<CommandOutcome, CommandOutcome>;

fn table(d: Diagnostic) -> CommandOutcome {
    match d.cause {
        Some(e) => from_error(e),
        None => CommandOutcome::error(d),
    }
}

fn symplectic(m: &Model, name: &str) -> Result<SymplecticForm, CommandOutcome> {
    let w = m
        .form(name)
        .ok_or_else(|| CommandOutcome::error(format!("no form named `{name}`")))?;
    SymplecticForm::new(m.doubled(), w.poly().clone()).map_err(from_error)
}

fn function<'a>(m: &'a Model, name: &str) -> Result<&'a Polynomial, CommandOutcome> {
    m.function(name)
        .ok_or_else(|| CommandOutcome::error(format!("no function named `{name}`")))
}

fn indices(ctx: &GradingContext, names: &[String]) -> Result<Vec<usize>, CommandOutcome> {
    names
        .iter()
        .map(|n| ctx.require(n).map_err(from_error))
        .collect()
}

fn field_lines(rep: &mut Report, label: &str, x: &GradedVectorField) {
    let ctx = x.context();
    let mut any = false;
    for (i, c) in x.components().iter().enumerate() {
        if !c.is_zero() {
            rep.line(format!("{label}({}) = {c}", ctx.name(i)));
            any = true;
        }
    }
    if !any {
        rep.line(format!("{label} = 0"));
    }
}

fn describe_form(rep: &mut Report, w: &SymplecticForm) {
    rep.line(format!(
        "omega: degree {} symplectic form, certificate {}",
        w.degree(),
        w.certificate().label()
    ));
}

pub fn check_master(m: &Model, s: &str, omega: &str) -> Outcome {
    let w = symplectic(m, omega)?;
    let f = function(m, s)?;
    let r = w.check_master_equation(f).map_err(from_error)?;
    let mut rep = Report::default();
    describe_form(&mut rep, &w);
    rep.line(format!("{s}: degree {}", f.degree()));
    rep.line(format!("Q = X_{s}: degree {}", r.q_degree));
    rep.line(format!("{{{s},{s}}} = {}", r.bracket));
    Ok(rep.finish(if r.holds { Status::Ok } else { Status::Violated }))
}

pub fn verify_lie(m: &Model) -> Outcome {
    let lie = m
        .lie_structure()
        .ok_or_else(|| CommandOutcome::error("no `lie` block"))?
        .map_err(table)?;
    let r = lie.verify();
    let mut rep = Report::default();
    field_lines(&mut rep, "Q", &r.q);
    if r.holds {
        rep.line("[Q,Q] = 0");
    } else {
        field_lines(&mut rep, "[Q,Q]", &r.square);
        if let Some(w) = &r.witness {
            rep.line(format!("Jacobi fails on: {}", w.join(", ")));
        }
    }
    Ok(rep.finish(if r.holds { Status::Ok } else { Status::Violated }))
}

pub fn verify_algebroid(m: &Model) -> Outcome {
    let a = m
        .algebroid_structure()
        .ok_or_else(|| CommandOutcome::error("no `algebroid` block"))?
        .map_err(table)?;
    let r = a.verify();
    let mut rep = Report::default();
    field_lines(&mut rep, "Q", &r.q);
    if r.holds {
        rep.line("[Q,Q] = 0");
    }
    for (name, p) in &r.anchor_residual {
        rep.line(format!("anchor fails to preserve brackets: [Q,Q]({name}) = {p}"));
    }
    for (name, p) in &r.bracket_residual {
        rep.line(format!("Jacobi fails: [Q,Q]({name}) = {p}"));
    }
    Ok(rep.finish(if r.holds { Status::Ok } else { Status::Violated }))
}

pub fn verify_linfty(m: &Model, field: &str) -> Outcome {
    let q = m
        .field(field)
        .ok_or_else(|| CommandOutcome::error(format!("no vector field named `{field}`")))?;
    let l = LInfinityTruncation::from_field(q).map_err(from_error)?;
    let r = l.verify();
    let mut rep = Report::default();
    for a in 0..=l.max_arity() {
        if let Some(p) = l.part(a) {
            field_lines(&mut rep, &format!("l{a}"), p);
        }
    }
    if r.holds {
        rep.line("[Q,Q] = 0");
    }
    let ctx = l.context();
    for (arity, comps) in &r.residuals {
        for (i, c) in comps.iter().enumerate() {
            if !c.is_zero() {
                rep.line(format!("identity of arity {arity} fails: [Q,Q]({}) = {c}", ctx.name(i)));
            }
        }
    }
    Ok(rep.finish(if r.holds { Status::Ok } else { Status::Violated }))
}

fn poisson(m: &Model) -> Result<PoissonStructure, CommandOutcome> {
    m.poisson_structure()
        .ok_or_else(|| CommandOutcome::error("no `poisson` block"))?
        .map_err(table)
}

pub fn verify_poisson(m: &Model) -> Outcome {
    let pi = poisson(m)?;
    let model = pi.cotangent_model().map_err(from_error)?;
    let r = pi.verify().map_err(from_error)?;
    let mut rep = Report::default();
    rep.line(format!("Theta = {}", model.theta));
    rep.line(format!("{{Theta,Theta}} = {}", r.bracket));
    Ok(rep.finish(if r.holds { Status::Ok } else { Status::Violated }))
}

pub fn verify_courant(m: &Model) -> Outcome {
    let built = m
        .courant_structure()
        .ok_or_else(|| CommandOutcome::error("no `courant` block"))?;
    let c = match built {
        Ok(c) => c,
        Err(Diagnostic { cause: Some(Error::NotAntisymmetric(msg)), .. }) => {
            let mut rep = Report::default();
            rep.line(format!("structure tensor is not totally antisymmetric: {msg}"));
            return Ok(rep.finish(Status::Violated));
        }
        Err(d) => return Err(table(d)),
    };
    let r = c.verify().map_err(from_error)?;
    let mut rep = Report::default();
    describe_form(&mut rep, &r.omega);
    rep.line(format!("S = {}", r.s));
    rep.line(format!("{{S,S}} = {}", r.master.bracket));
    Ok(rep.finish(if r.master.holds { Status::Ok } else { Status::Violated }))
}

pub fn verify_gcs(m: &Model, j: &str) -> Outcome {
    let c = m
        .courant_structure()
        .ok_or_else(|| CommandOutcome::error("no `courant` block"))?
        .map_err(table)?;
    let jf = function(m, j)?;
    let r = c.verify().map_err(from_error)?;
    let g = check_generalized_complex(&r.omega, &r.s, jf, c.momenta()).map_err(from_error)?;
    let mut rep = Report::default();
    rep.line(format!("S = {}", r.s));
    rep.line(format!("{j} = {jf}"));
    rep.line(format!("T = {{S,{j}}} = {}", g.t));
    rep.line(format!("{{T,{j}}} = {}", g.t_j));
    match (&g.raw_lambda, g.normalized_lambda) {
        (Some(l), Some(n)) => {
            rep.line(format!("lambda = {l}"));
            rep.line(format!("normalized lambda = {n}"));
        }
        _ => rep.line("lambda: {T,J} is not a multiple of S"),
    }
    rep.line(format!("{{S,S}} = {}", g.ss));
    rep.line(format!("{{S,T}} + {{T,S}} = {}", g.st));
    rep.line(format!("{{T,T}} = {}", g.tt));
    let status = if g.is_generalized_complex() {
        Status::Ok
    } else {
        if !g.two_parameter_holds() {
            rep.line("two-parameter master equation fails");
        }
        if g.normalized_lambda != Some(-1) {
            rep.line("{T,J} is not a negative multiple of S");
        }
        Status::Violated
    };
    Ok(rep.finish(status))
}

pub fn reduce(m: &Model, constrain: &[String], distribution: &[String], bound: u32, omega: &str) -> Outcome {
    if m.has_poisson() {
        reduce_poisson(m, constrain, distribution, bound)
    } else {
        reduce_symplectic(m, constrain, distribution, omega)
    }
}

fn reduce_poisson(m: &Model, constrain: &[String], distribution: &[String], bound: u32) -> Outcome {
    let pi = poisson(m)?;
    let ctx = pi.context().clone();
    let c = indices(&ctx, constrain)?;
    let b = indices(&ctx, distribution)?;
    let r = poisson_reduction_conditions(&pi, &c, &b, bound).map_err(from_error)?;
    let mut rep = Report::default();
    match &r.cond1_witness {
        None => rep.line("condition 1 (B spans the Hamiltonian directions of the constraints): holds"),
        Some((y, dir, p)) => rep.line(format!(
            "condition 1 (B spans the Hamiltonian directions of the constraints): fails, pi({y},{dir}) = {p} on C"
        )),
    }
    match &r.cond2_witness {
        None => rep.line(format!(
            "condition 2 (brackets of invariant functions are invariant): holds up to degree {} ({} monomials)",
            r.degree_bound, r.family_size
        )),
        Some((f, g, p)) => rep.line(format!(
            "condition 2 (brackets of invariant functions are invariant): fails, {{{f},{g}}} = {p} on C"
        )),
    }
    if !r.holds() {
        return Ok(rep.finish(Status::Violated));
    }
    let red = reduced_poisson(&pi, &c, &b).map_err(from_error)?;
    let rc = red.context();
    let mut any = false;
    for i in 0..rc.len() {
        for j in i + 1..rc.len() {
            let p = &red.matrix()[i][j];
            if !p.is_zero() {
                rep.line(format!("reduced {{{},{}}} = {p}", rc.name(i), rc.name(j)));
                any = true;
            }
        }
    }
    if !any {
        rep.line("reduced bracket = 0");
    }
    let model = pi.cotangent_model().map_err(from_error)?;
    let names = cotangent_constraints(&pi, &c, &b);
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let locus = ConstraintLocus::from_names(model.omega.base(), &refs).map_err(from_error)?;
    rep.line(format!("degree-1 locus: {} = 0", names.join(" = ")));
    match Reduction::characteristic(&model.omega, locus) {
        Ok(reduction) => {
            rep.line(format!("characteristic distribution: {}", reduction.distribution_names().join(", ")));
            match reduction.reduce_function(&model.theta) {
                Ok(t) => rep.line(format!("reduced Theta = {t}")),
                Err(e) => rep.line(format!("Theta does not reduce: {e}")),
            }
        }
        Err(e) => rep.line(format!("degree-1 reduction unavailable: {e}")),
    }
    Ok(rep.finish(Status::Ok))
}

fn reduce_symplectic(m: &Model, constrain: &[String], distribution: &[String], omega: &str) -> Outcome {
    let w = symplectic(m, omega)?;
    let ctx = w.base().clone();
    let c = indices(&ctx, constrain)?;
    let locus = ConstraintLocus::new(&ctx, &c);
    let iw = locus.pullback_form(&w).map_err(from_error)?;
    let mut rep = Report::default();
    describe_form(&mut rep, &w);
    rep.line(format!("pulled-back form = {}", iw.poly()));
    let characteristic = gman_core::reduction::characteristic_distribution(&iw).map_err(from_error)?;
    let span = match characteristic {
        Characteristic::Coordinate(d) => d,
        Characteristic::Frame(frame) => {
            let chart = locus.chart();
            for v in frame {
                let parts: Vec<String> = v
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !num_is_zero(c))
                    .map(|(i, c)| format!("{c}*d/d{}", chart.name(i)))
                    .collect();
                rep.line(format!("characteristic direction: {}", parts.join(" + ")));
            }
            rep.line("characteristic distribution is not spanned by coordinate directions");
            return Ok(rep.finish(Status::Indeterminate));
        }
        Characteristic::NonConstantRank => {
            rep.line("rank of the pulled-back form is not certified constant");
            return Ok(rep.finish(Status::Indeterminate));
        }
    };
    let reduction = Reduction::new(locus, span).map_err(from_error)?;
    let found = reduction.distribution_names();
    rep.line(format!("characteristic distribution: {}", if found.is_empty() { "0".to_string() } else { found.join(", ") }));
    if !distribution.is_empty() {
        let mut given = distribution.to_vec();
        given.sort();
        let mut have = found.clone();
        have.sort();
        if given != have {
            rep.line("given distribution differs from the characteristic distribution");
            return Ok(rep.finish(Status::Violated));
        }
    }
    let reduced = reduction.reduced_form(&w).map_err(from_error)?;
    rep.line(format!("reduced chart: {}", reduction.reduced_chart().names().join(", ")));
    rep.line(format!("reduced omega = {}", reduced.form().poly()));
    Ok(rep.finish(Status::Ok))
}

fn num_is_zero(c: &gman_core::Rational) -> bool {
    *c == gman_core::rat(0)
}

pub fn aksz(m: &Model, n: usize, format: Emit, s: &str, omega: &str) -> Outcome {
    let src = SourceSpec::new(n).map_err(from_error)?;
    let (w, theta, pi) = if m.has_poisson() {
        let pi = poisson(m)?;
        let model = pi.cotangent_model().map_err(from_error)?;
        (model.omega, model.theta, Some(pi))
    } else if m.has_courant() {
        let c = m.courant_structure().expect("present").map_err(table)?;
        (c.symplectic_form().map_err(from_error)?, c.hamiltonian(), None)
    } else {
        (symplectic(m, omega)?, function(m, s)?.clone(), None)
    };
    let master = w.check_master_equation(&theta).map_err(from_error)?;
    if !master.holds {
        let mut rep = Report::default();
        rep.line(format!("target master equation fails; {{Theta,Theta}} = {}", master.bracket));
        return Ok(rep.finish(Status::Violated));
    }
    let report = total_action(&w, &theta, &src).map_err(from_error)?;
    let sigma = match &pi {
        Some(pi) if n == 2 => Some(match_sigma_model(pi, &report).map_err(from_error)?),
        _ => None,
    };
    let status = if report.audit_passed { Status::Ok } else { Status::Violated };
    Ok(match format {
        Emit::JsonTerms => {
            let mut rep = Report::default();
            rep.line(emit::json_terms(&report.terms()));
            rep.finish_raw(status)
        }
        Emit::Latex => {
            let mut rep = Report::default();
            for l in emit::latex(&report, sigma.as_ref()) {
                rep.line(l);
            }
            rep.finish_raw(status)
        }
        Emit::Text => {
            let mut rep = Report::default();
            rep.line(format!("target degree k = {}, source dimension n = {n}", report.k));
            rep.line(format!("formalism: {}", report.formalism));
            rep.line(format!(
                "mapping-space symplectic form degree: k - n = {} (k minus the source dimension)",
                report.mapping_form_degree
            ));
            rep.line(format!("action degree: k + 1 - n = {}", report.action_degree));
            rep.line(format!("degree audit: {}", if report.audit_passed { "passed" } else { "failed" }));
            rep.line(format!("kinetic terms: {}", report.kinetic_terms.len()));
            for t in &report.kinetic_terms {
                rep.line(format!("  {t}"));
            }
            rep.line(format!("hamiltonian terms: {}", report.hamiltonian_terms.len()));
            for t in &report.hamiltonian_terms {
                rep.line(format!("  {t}"));
            }
            rep.line("ghost-zero families:");
            for (sig, coeffs) in families(&report.ghost_zero_terms()) {
                let shape: Vec<String> = sig
                    .iter()
                    .map(|(r, _, d)| if *d { format!("d[{r}]") } else { format!("[{r}]") })
                    .collect();
                let cs: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
                rep.line(format!("  {}: {}", shape.join(" "), cs.join(", ")));
            }
            if let Some(sm) = &sigma {
                match (sm.kinetic_sign, sm.hamiltonian_sign) {
                    (Some(a), Some(b)) => rep.line(format!(
                        "sigma model: {} ∫ eta_i dX^i {} 1/2 ∫ pi^ij(X) eta_i eta_j",
                        if a < 0 { "-" } else { "+" },
                        if b < 0 { "-" } else { "+" }
                    )),
                    _ => rep.line("sigma model: ghost-zero sector does not match"),
                }
            }
            rep.finish(status)
        }
    })
}

pub fn bracket(m: &Model, f: &str, g: &str, omega: &str) -> Outcome {
    let (ff, gg) = (function(m, f)?, function(m, g)?);
    let mut rep = Report::default();
    let b = if m.form(omega).is_some() || !m.has_poisson() {
        let w = symplectic(m, omega)?;
        w.poisson_bracket(ff, gg).map_err(from_error)?
    } else {
        poisson(m)?.bracket(ff, gg).map_err(from_error)?
    };
    rep.line(format!("{{{f},{g}}} = {b}"));
    Ok(rep.finish(Status::Ok))
}
