//! AKSZ actions for the source `T[1]Σ`.
//!
//! A target coordinate `a` of degree `|a|` gives superfield components
//! `a(r)`, `0 ≤ r ≤ n`, of form degree `r` and ghost degree `|a| − r`, plus
//! their source differentials `d a(r)` of form degree `r + 1`. Components are
//! formal symbols whose parity is that of `|a|` (respectively `|a| + 1`), which
//! is the parity of the corresponding θ-expansion coefficient times its θ's.
//! Integration over `T[1]Σ` keeps the part of total form degree `n`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::forms::DoubledContext;
use crate::graded::{rat, GradingContext, Polynomial, Rational};
use crate::structures::PoissonStructure;
use crate::symplectic::SymplecticForm;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SourceSpec {
    n: usize,
}

impl SourceSpec {
    pub fn new(n: usize) -> Result<Self> {
        if !(1..=3).contains(&n) {
            return Err(Error::Precondition(format!(
                "source dimension {n} is outside the supported range 1..=3"
            )));
        }
        Ok(SourceSpec { n })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn u_name(i: usize) -> String {
        format!("u{i}")
    }

    pub fn theta_name(i: usize) -> String {
        format!("θ{i}")
    }

    /// `(u¹…uⁿ, θ¹…θⁿ)` with degrees 0 and 1.
    pub fn chart(&self) -> GradingContext {
        let mut specs: Vec<(String, i64)> = (1..=self.n).map(|i| (Self::u_name(i), 0)).collect();
        specs.extend((1..=self.n).map(|i| (Self::theta_name(i), 1)));
        GradingContext::new(&specs).expect("distinct names")
    }
}

/// `∫ dθ` over all source odd generators: the coefficient of `θ¹⋯θⁿ` after
/// moving those generators to the front, on the chart without the `θ`s.
pub fn berezin_integrate(p: &Polynomial, src: &SourceSpec) -> Result<Polynomial> {
    let ctx = p.context();
    let thetas = (1..=src.dim())
        .map(|i| ctx.require(&SourceSpec::theta_name(i)))
        .collect::<Result<Vec<_>>>()?;
    let mut acc = p.clone();
    for &t in &thetas {
        acc = acc.partial(t);
    }
    let keep: Vec<usize> = (0..ctx.len()).filter(|i| !thetas.contains(i)).collect();
    acc.transfer(&ctx.restrict(&keep))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperfieldComponent {
    pub target: String,
    pub target_degree: i64,
    pub form_degree: usize,
    pub ghost_degree: i64,
}

impl SuperfieldComponent {
    pub fn symbol(&self) -> String {
        format!("{}({})", self.target, self.form_degree)
    }
}

pub fn expand_superfields(target: &GradingContext, src: &SourceSpec) -> Result<Vec<SuperfieldComponent>> {
    let mut out = Vec::new();
    for i in 0..target.len() {
        let d = target.degree(i);
        if d < 0 {
            return Err(Error::Precondition(format!(
                "target coordinate `{}` has negative degree {d}",
                target.name(i)
            )));
        }
        for r in 0..=src.dim() {
            out.push(SuperfieldComponent {
                target: target.name(i).to_string(),
                target_degree: d,
                form_degree: r,
                ghost_degree: d - r as i64,
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct FieldMeta {
    target: usize,
    form: usize,
    d: bool,
}

/// The chart of component symbols `a(r)` followed by `d a(r)`.
#[derive(Clone, Debug)]
pub struct FieldChart {
    target: GradingContext,
    src: SourceSpec,
    ctx: GradingContext,
    meta: Vec<FieldMeta>,
}

impl FieldChart {
    pub fn new(target: &GradingContext, src: &SourceSpec) -> Result<Self> {
        expand_superfields(target, src)?;
        let n = src.dim();
        let mut specs = Vec::new();
        let mut meta = Vec::new();
        for a in 0..target.len() {
            for r in 0..=n {
                specs.push((format!("{}({r})", target.name(a)), target.degree(a)));
                meta.push(FieldMeta { target: a, form: r, d: false });
            }
        }
        for a in 0..target.len() {
            for r in 0..n {
                specs.push((format!("d{}({r})", target.name(a)), target.degree(a) + 1));
                meta.push(FieldMeta { target: a, form: r, d: true });
            }
        }
        Ok(FieldChart {
            target: target.clone(),
            src: *src,
            ctx: GradingContext::new(&specs)?,
            meta,
        })
    }

    pub fn context(&self) -> &GradingContext {
        &self.ctx
    }

    pub fn target(&self) -> &GradingContext {
        &self.target
    }

    pub fn source(&self) -> &SourceSpec {
        &self.src
    }

    /// Index of `a(r)` or `d a(r)`.
    pub fn index(&self, target: usize, form: usize, d: bool) -> usize {
        self.meta
            .iter()
            .position(|m| *m == FieldMeta { target, form, d })
            .expect("component exists")
    }

    pub fn component(&self, target: usize, form: usize, d: bool) -> Polynomial {
        Polynomial::var(&self.ctx, self.index(target, form, d))
    }

    fn superfield(&self, a: usize) -> Polynomial {
        let mut acc = Polynomial::zero(&self.ctx);
        for r in 0..=self.src.dim() {
            acc = &acc + &self.component(a, r, false);
        }
        acc
    }

    fn d_superfield(&self, a: usize) -> Polynomial {
        let mut acc = Polynomial::zero(&self.ctx);
        for r in 0..self.src.dim() {
            acc = &acc + &self.component(a, r, true);
        }
        acc
    }

    pub fn form_degree_of(&self, m: &[u32]) -> usize {
        m.iter()
            .enumerate()
            .map(|(i, &e)| e as usize * (self.meta[i].form + usize::from(self.meta[i].d)))
            .sum()
    }

    pub fn ghost_degree_of(&self, m: &[u32]) -> i64 {
        m.iter()
            .enumerate()
            .map(|(i, &e)| e as i64 * (self.target.degree(self.meta[i].target) - self.meta[i].form as i64))
            .sum()
    }

    /// Substitutes superfields into a target function and keeps the top form part.
    pub fn integrate_function(&self, f: &Polynomial) -> Result<Polynomial> {
        if !f.context().same(&self.target) {
            return Err(Error::ContextMismatch);
        }
        let images: Vec<Polynomial> = (0..self.target.len()).map(|a| self.superfield(a)).collect();
        Ok(self.top(&f.compose(&self.ctx, &images)))
    }

    /// Substitutes superfields and their differentials into a target form.
    pub fn integrate_form(&self, dc: &DoubledContext, w: &Polynomial) -> Result<Polynomial> {
        if !dc.base().same(&self.target) || !w.context().same(dc.doubled()) {
            return Err(Error::ContextMismatch);
        }
        let mut images: Vec<Polynomial> = (0..self.target.len()).map(|a| self.superfield(a)).collect();
        images.extend((0..self.target.len()).map(|a| self.d_superfield(a)));
        Ok(self.top(&w.compose(&self.ctx, &images)))
    }

    fn top(&self, p: &Polynomial) -> Polynomial {
        let n = self.src.dim();
        p.filter_terms(|m| self.form_degree_of(m) == n)
    }

    pub fn terms(&self, p: &Polynomial) -> Vec<ActionTerm> {
        p.terms()
            .map(|(m, c)| {
                let mut factors = Vec::new();
                for (i, &e) in m.iter().enumerate() {
                    let meta = self.meta[i];
                    for _ in 0..e {
                        factors.push(Factor {
                            field: self.target.name(meta.target).to_string(),
                            form_degree: meta.form,
                            ghost_degree: self.target.degree(meta.target) - meta.form as i64,
                            d: meta.d,
                        });
                    }
                }
                ActionTerm {
                    coefficient: c.clone(),
                    factors,
                }
            })
            .collect()
    }

    /// The part of `p` built only from ghost-number-zero components.
    pub fn ghost_zero(&self, p: &Polynomial) -> Polynomial {
        p.filter_terms(|m| {
            m.iter().enumerate().all(|(i, &e)| {
                e == 0 || self.target.degree(self.meta[i].target) == self.meta[i].form as i64
            })
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub field: String,
    /// Form degree of the component `a(r)`; a differential adds one more.
    pub form_degree: usize,
    pub ghost_degree: i64,
    pub d: bool,
}

impl Factor {
    pub fn total_form_degree(&self) -> usize {
        self.form_degree + usize::from(self.d)
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d {
            write!(f, "d {}({})", self.field, self.form_degree)
        } else {
            write!(f, "{}({})", self.field, self.form_degree)
        }
    }
}

/// `coefficient · ∫_Σ Π factors`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionTerm {
    pub coefficient: Rational,
    pub factors: Vec<Factor>,
}

impl ActionTerm {
    pub fn form_degree(&self) -> usize {
        self.factors.iter().map(Factor::total_form_degree).sum()
    }

    pub fn ghost_degree(&self) -> i64 {
        self.factors.iter().map(|f| f.ghost_degree).sum()
    }

    pub fn is_ghost_zero(&self) -> bool {
        self.factors.iter().all(|f| f.ghost_degree == 0)
    }

    /// `(form degree, ghost degree, d)` of each factor with the target name dropped.
    pub fn signature(&self) -> Vec<(usize, i64, bool)> {
        self.factors
            .iter()
            .map(|f| (f.form_degree, f.ghost_degree, f.d))
            .collect()
    }

    /// Coefficient in index notation: divides by the number of distinct
    /// orderings of factors that share a signature.
    pub fn index_coefficient(&self) -> Rational {
        let mut groups: BTreeMap<(usize, i64, bool), Vec<&str>> = BTreeMap::new();
        for f in &self.factors {
            groups
                .entry((f.form_degree, f.ghost_degree, f.d))
                .or_default()
                .push(&f.field);
        }
        let mut orderings = Rational::one();
        for names in groups.values() {
            let mut counts: BTreeMap<&str, i64> = BTreeMap::new();
            for n in names {
                *counts.entry(n).or_default() += 1;
            }
            orderings *= factorial(names.len() as i64);
            for c in counts.values() {
                orderings /= factorial(*c);
            }
        }
        &self.coefficient / orderings
    }
}

fn factorial(n: i64) -> Rational {
    (1..=n).fold(Rational::one(), |acc, k| acc * rat(k))
}

impl fmt::Display for ActionTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.coefficient;
        if c.is_integer() {
            write!(f, "{}", c.numer())?;
        } else {
            write!(f, "{}/{}", c.numer(), c.denom())?;
        }
        write!(f, " ∫")?;
        for x in &self.factors {
            write!(f, " {x}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formalism {
    Bv,
    Bfv,
    Other(i64, i64),
}

impl fmt::Display for Formalism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formalism::Bv => f.write_str("BV"),
            Formalism::Bfv => f.write_str("BFV"),
            Formalism::Other(k, n) => write!(f, "other({k},{n})"),
        }
    }
}

pub fn classify_formalism(k: i64, n: i64) -> Formalism {
    if n == k + 1 {
        Formalism::Bv
    } else if n == k {
        Formalism::Bfv
    } else {
        Formalism::Other(k, n)
    }
}

/// `Ŝ₀`: the Liouville potential `ι_E ω / k` integrated against superfields.
pub fn kinetic_polynomial(omega: &SymplecticForm, fields: &FieldChart) -> Result<Polynomial> {
    let alpha = omega.liouville_potential()?;
    fields.integrate_form(omega.context(), alpha.poly())
}

pub fn kinetic_term(omega: &SymplecticForm, src: &SourceSpec) -> Result<Vec<ActionTerm>> {
    let fields = FieldChart::new(omega.base(), src)?;
    Ok(fields.terms(&kinetic_polynomial(omega, &fields)?))
}

/// `Θ̂`; refuses when `{Θ, Θ} ≠ 0` on the target.
pub fn hamiltonian_polynomial(omega: &SymplecticForm, theta: &Polynomial, fields: &FieldChart) -> Result<Polynomial> {
    let report = omega.check_master_equation(theta)?;
    if !report.holds {
        return Err(Error::MasterEquationFails(report.bracket.to_string()));
    }
    fields.integrate_function(theta)
}

pub fn lift_hamiltonian(omega: &SymplecticForm, theta: &Polynomial, src: &SourceSpec) -> Result<Vec<ActionTerm>> {
    let fields = FieldChart::new(omega.base(), src)?;
    Ok(fields.terms(&hamiltonian_polynomial(omega, theta, &fields)?))
}

#[derive(Clone, Debug)]
pub struct ActionReport {
    pub fields: FieldChart,
    pub kinetic: Polynomial,
    pub hamiltonian: Polynomial,
    pub kinetic_terms: Vec<ActionTerm>,
    pub hamiltonian_terms: Vec<ActionTerm>,
    pub k: i64,
    pub n: usize,
    /// Degree of the mapping-space symplectic form, `k − n`.
    pub mapping_form_degree: i64,
    /// Degree of every action term, `k + 1 − n`.
    pub action_degree: i64,
    pub formalism: Formalism,
    pub audit_passed: bool,
}

impl ActionReport {
    pub fn terms(&self) -> Vec<ActionTerm> {
        let mut all = self.kinetic_terms.clone();
        all.extend(self.hamiltonian_terms.iter().cloned());
        all
    }

    pub fn total(&self) -> Polynomial {
        &self.kinetic + &self.hamiltonian
    }

    pub fn ghost_zero_terms(&self) -> Vec<ActionTerm> {
        self.terms().into_iter().filter(ActionTerm::is_ghost_zero).collect()
    }
}

/// Every term has form degree `n` and ghost degree `k + 1 − n`.
pub fn audit(terms: &[ActionTerm], n: usize, k: i64) -> bool {
    terms
        .iter()
        .all(|t| t.form_degree() == n && t.ghost_degree() == k + 1 - n as i64)
}

pub fn total_action(omega: &SymplecticForm, theta: &Polynomial, src: &SourceSpec) -> Result<ActionReport> {
    let fields = FieldChart::new(omega.base(), src)?;
    let kinetic = kinetic_polynomial(omega, &fields)?;
    let hamiltonian = hamiltonian_polynomial(omega, theta, &fields)?;
    let kinetic_terms = fields.terms(&kinetic);
    let hamiltonian_terms = fields.terms(&hamiltonian);
    let k = omega.degree();
    let n = src.dim();
    let audit_passed = audit(&kinetic_terms, n, k) && audit(&hamiltonian_terms, n, k);
    Ok(ActionReport {
        fields,
        kinetic,
        hamiltonian,
        kinetic_terms,
        hamiltonian_terms,
        k,
        n,
        mapping_form_degree: k - n as i64,
        action_degree: k + 1 - n as i64,
        formalism: classify_formalism(k, n as i64),
        audit_passed,
    })
}

/// Ghost-zero sector of a Poisson sigma model against
/// `s ∫ η_i dX^i + t ½ ∫ π^{ij}(X) η_i η_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaModelMatch {
    /// The sign `s`, when the kinetic ghost-zero sector is `±∫ η_i dX^i`.
    pub kinetic_sign: Option<i8>,
    /// The sign `t`, when the Hamiltonian ghost-zero sector is `±½ ∫ π(X) η η`.
    pub hamiltonian_sign: Option<i8>,
}

impl SigmaModelMatch {
    pub fn matches(&self) -> bool {
        self.kinetic_sign.is_some() && self.hamiltonian_sign.is_some()
    }
}

fn sign_match(actual: &Polynomial, expected: &Polynomial) -> Option<i8> {
    if actual == expected {
        Some(1)
    } else if *actual == -expected {
        Some(-1)
    } else {
        None
    }
}

/// Compares with the Poisson sigma model, for a report built from
/// `π.cotangent_model()` on a 2-dimensional source. When `π = 0` the
/// Hamiltonian sector is empty and reported with sign `+1`.
pub fn match_sigma_model(pi: &PoissonStructure, report: &ActionReport) -> Result<SigmaModelMatch> {
    let fields = &report.fields;
    let target = fields.target();
    let n = pi.context().len();
    if target.len() != 2 * n || report.n != 2 {
        return Err(Error::Precondition("not a Poisson sigma model report".into()));
    }
    let x = |i: usize, r: usize, d: bool| fields.component(i, r, d);
    let eta = |i: usize| fields.component(n + i, 1, false);
    let mut kin = Polynomial::zero(fields.context());
    for i in 0..n {
        kin = &kin + &(&eta(i) * &x(i, 0, true));
    }
    let images: Vec<Polynomial> = (0..n).map(|i| x(i, 0, false)).collect();
    let mut ham = Polynomial::zero(fields.context());
    for i in 0..n {
        for j in 0..n {
            let p = &pi.matrix()[i][j];
            if !p.is_zero() {
                ham = &ham + &(&(&p.compose(fields.context(), &images) * &eta(i)) * &eta(j));
            }
        }
    }
    let ham = ham.scale(&Rational::new(1.into(), 2.into()));
    let kin_actual = fields.ghost_zero(&report.kinetic);
    let ham_actual = fields.ghost_zero(&report.hamiltonian);
    let hamiltonian_sign = if ham.is_zero() {
        ham_actual.is_zero().then_some(1)
    } else {
        sign_match(&ham_actual, &ham)
    };
    Ok(SigmaModelMatch {
        kinetic_sign: sign_match(&kin_actual, &kin),
        hamiltonian_sign,
    })
}

/// Number of superfield components per `(form degree, ghost degree)`.
pub fn shell_counts(components: &[SuperfieldComponent]) -> BTreeMap<(usize, i64), usize> {
    let mut out = BTreeMap::new();
    for c in components {
        *out.entry((c.form_degree, c.ghost_degree)).or_insert(0) += 1;
    }
    out
}

/// Groups terms by signature; each family lists its distinct index-notation
/// coefficients.
pub fn families(terms: &[ActionTerm]) -> BTreeMap<Vec<(usize, i64, bool)>, Vec<Rational>> {
    let mut out: BTreeMap<Vec<(usize, i64, bool)>, Vec<Rational>> = BTreeMap::new();
    for t in terms {
        let c = t.index_coefficient();
        let entry = out.entry(t.signature()).or_default();
        if !entry.contains(&c) {
            entry.push(c);
        }
    }
    out
}
