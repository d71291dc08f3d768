//! Reduction along linear constraint loci `{z = 0 : z ∈ Z}` of a chart.
//!
//! The locus chart keeps the remaining coordinates; a characteristic
//! distribution spanned by coordinate directions `B` is quotiented out by
//! dropping those coordinates, which gives the reduced chart.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::forms::{DoubledContext, Form};
use crate::graded::{GradingContext, Polynomial, Rational};
use crate::linalg;
use crate::structures::PoissonStructure;
use crate::symplectic::{certified_inverse, coefficient_matrix, SymplecticForm, DEFAULT_SERIES_BOUND};

#[derive(Clone, Debug)]
pub struct ConstraintLocus {
    ambient: GradingContext,
    constrained: Vec<usize>,
    chart: GradingContext,
}

impl ConstraintLocus {
    pub fn new(ambient: &GradingContext, constrained: &[usize]) -> Self {
        let set: BTreeSet<usize> = constrained.iter().copied().collect();
        let retained: Vec<usize> = (0..ambient.len()).filter(|i| !set.contains(i)).collect();
        ConstraintLocus {
            ambient: ambient.clone(),
            constrained: set.into_iter().collect(),
            chart: ambient.restrict(&retained),
        }
    }

    pub fn from_names(ambient: &GradingContext, names: &[&str]) -> Result<Self> {
        let idx = names
            .iter()
            .map(|n| ambient.require(n))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(ambient, &idx))
    }

    pub fn ambient(&self) -> &GradingContext {
        &self.ambient
    }

    pub fn constrained(&self) -> &[usize] {
        &self.constrained
    }

    /// The retained sub-chart.
    pub fn chart(&self) -> &GradingContext {
        &self.chart
    }

    /// `i*f`: sets the constrained coordinates to zero.
    pub fn restrict(&self, f: &Polynomial) -> Result<Polynomial> {
        if !f.context().same(&self.ambient) {
            return Err(Error::ContextMismatch);
        }
        f.set_zero(&self.constrained).transfer(&self.chart)
    }

    /// Pulls back a polynomial on the ambient doubled chart, killing `z` and `d(z)`.
    pub fn pullback(&self, ambient: &DoubledContext, w: &Polynomial) -> Result<Polynomial> {
        if !ambient.base().same(&self.ambient) {
            return Err(Error::ContextMismatch);
        }
        let target = DoubledContext::new(&self.chart);
        let mut kill = self.constrained.clone();
        kill.extend(self.constrained.iter().map(|&z| ambient.d_index(z)));
        w.set_zero(&kill).transfer(target.doubled())
    }

    /// `i*ω` on the doubled locus chart.
    pub fn pullback_form(&self, omega: &SymplecticForm) -> Result<Form> {
        let target = DoubledContext::new(&self.chart);
        let p = self.pullback(omega.context(), omega.form().poly())?;
        Form::new(&target, p)
    }
}

/// Coordinate directions `∂/∂b`, as indices into the locus chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distribution {
    pub span: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Characteristic {
    Coordinate(Distribution),
    /// Constant kernel that is not spanned by coordinate directions; rows are
    /// kernel vectors in the locus frame.
    Frame(Vec<Vec<Rational>>),
    NonConstantRank,
}

/// Kernel of a pulled-back 2-form.
pub fn characteristic_distribution(iw: &Form) -> Result<Characteristic> {
    let dc = iw.context();
    let m = coefficient_matrix(dc, iw.poly())?;
    let n = dc.n();
    if m.iter().all(|r| r.iter().all(|e| e.as_constant().is_some())) {
        let c = linalg::constant_part(&m);
        let kernel = linalg::null_space(&linalg::transpose(&c), n);
        let mut span = Vec::new();
        for v in &kernel {
            let nz: Vec<usize> = (0..n).filter(|&i| !num_traits::Zero::is_zero(&v[i])).collect();
            if nz.len() != 1 {
                return Ok(Characteristic::Frame(kernel));
            }
            span.push(nz[0]);
        }
        span.sort_unstable();
        return Ok(Characteristic::Coordinate(Distribution { span }));
    }
    match certified_inverse(dc.base(), &m, DEFAULT_SERIES_BOUND) {
        Ok(_) => Ok(Characteristic::Coordinate(Distribution { span: vec![] })),
        Err(_) => Ok(Characteristic::NonConstantRank),
    }
}

/// A locus together with a coordinate distribution on it.
#[derive(Clone, Debug)]
pub struct Reduction {
    locus: ConstraintLocus,
    distribution: Distribution,
    reduced: GradingContext,
}

impl Reduction {
    pub fn new(locus: ConstraintLocus, distribution: Distribution) -> Result<Self> {
        if let Some(&b) = distribution.span.iter().find(|&&b| b >= locus.chart().len()) {
            return Err(Error::InvalidStructure(format!("distribution index {b} out of range")));
        }
        let keep: Vec<usize> = (0..locus.chart().len())
            .filter(|i| !distribution.span.contains(i))
            .collect();
        let reduced = locus.chart().restrict(&keep);
        Ok(Reduction {
            locus,
            distribution,
            reduced,
        })
    }

    /// Builds from a locus on `omega`'s chart, computing the characteristic
    /// distribution; fails unless it is coordinate aligned.
    pub fn characteristic(omega: &SymplecticForm, locus: ConstraintLocus) -> Result<Self> {
        let iw = locus.pullback_form(omega)?;
        match characteristic_distribution(&iw)? {
            Characteristic::Coordinate(d) => Self::new(locus, d),
            Characteristic::Frame(_) => Err(Error::Precondition(
                "characteristic distribution is not spanned by coordinate directions".into(),
            )),
            Characteristic::NonConstantRank => Err(Error::NondegeneracyUnverified(
                "rank of the pulled-back form is not certified constant".into(),
            )),
        }
    }

    pub fn locus(&self) -> &ConstraintLocus {
        &self.locus
    }

    pub fn distribution(&self) -> &Distribution {
        &self.distribution
    }

    pub fn reduced_chart(&self) -> &GradingContext {
        &self.reduced
    }

    pub fn distribution_names(&self) -> Vec<String> {
        self.distribution
            .span
            .iter()
            .map(|&b| self.locus.chart().name(b).to_string())
            .collect()
    }

    pub fn is_reducible(&self, f: &Polynomial) -> Result<bool> {
        let r = self.locus.restrict(f)?;
        Ok(self.distribution.span.iter().all(|&b| r.partial(b).is_zero()))
    }

    /// `f̲` with `π* f̲ = i* f`.
    pub fn reduce_function(&self, f: &Polynomial) -> Result<Polynomial> {
        let r = self.locus.restrict(f)?;
        if let Some(&b) = self.distribution.span.iter().find(|&&b| !r.partial(b).is_zero()) {
            return Err(Error::NotReducible(format!(
                "{f} restricts to {r}, which depends on `{}`",
                self.locus.chart().name(b)
            )));
        }
        r.transfer(&self.reduced)
    }

    /// `π*`: a reduced function viewed on the locus chart.
    pub fn lift_to_locus(&self, f: &Polynomial) -> Result<Polynomial> {
        f.transfer(self.locus.chart())
    }

    /// The extension by the same expression to the ambient chart.
    pub fn extend(&self, f: &Polynomial) -> Result<Polynomial> {
        f.transfer(self.locus.ambient())
    }

    /// `{f̲, g̲}`: bracket of the extensions, restricted and reduced.
    pub fn reduced_bracket(&self, omega: &SymplecticForm, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
        let b = omega.poisson_bracket(&self.extend(f)?, &self.extend(g)?)?;
        self.reduce_function(&b).map_err(|e| match e {
            Error::NotReducible(m) => Error::NotReducible(format!("bracket of extensions: {m}")),
            other => other,
        })
    }

    /// The reduced symplectic form: `i*ω` on the reduced doubled chart.
    pub fn reduced_form(&self, omega: &SymplecticForm) -> Result<SymplecticForm> {
        let iw = self.locus.pullback_form(omega)?;
        let dc = iw.context().clone();
        let mut kill = self.distribution.span.clone();
        kill.extend(self.distribution.span.iter().map(|&b| dc.d_index(b)));
        let killed = iw.poly().set_zero(&kill);
        if killed != *iw.poly() {
            return Err(Error::Precondition(
                "pulled-back form involves the distribution directions".into(),
            ));
        }
        let target = DoubledContext::new(&self.reduced);
        SymplecticForm::new(&target, killed.transfer(target.doubled())?)
    }
}

/// `X_f(z)` restricted to the locus vanishes for every constraint `z`.
pub fn is_strongly_reducible(omega: &SymplecticForm, locus: &ConstraintLocus, f: &Polynomial) -> Result<bool> {
    let xf = omega.hamiltonian_vector_field(f)?;
    for &z in locus.constrained() {
        if !locus.restrict(xf.component(z))?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug)]
pub struct PoissonReductionReport {
    pub cond1: bool,
    pub cond2: bool,
    pub degree_bound: u32,
    /// Constraint, direction and the offending restricted component of `π♯(dy)`.
    pub cond1_witness: Option<(String, String, Polynomial)>,
    /// A pair of invariant monomials whose restricted bracket is not invariant.
    pub cond2_witness: Option<(Polynomial, Polynomial, Polynomial)>,
    pub family_size: usize,
}

impl PoissonReductionReport {
    pub fn holds(&self) -> bool {
        self.cond1 && self.cond2
    }
}

fn monomials_up_to(ctx: &GradingContext, vars: &[usize], bound: u32) -> Vec<Polynomial> {
    let mut out = Vec::new();
    fn go(ctx: &GradingContext, vars: &[usize], start: usize, left: u32, cur: &Polynomial, out: &mut Vec<Polynomial>) {
        for k in start..vars.len() {
            let next = cur * &Polynomial::var(ctx, vars[k]);
            out.push(next.clone());
            if left > 1 {
                go(ctx, vars, k, left - 1, &next, out);
            }
        }
    }
    if bound > 0 {
        go(ctx, vars, 0, bound, &Polynomial::one(ctx), &mut out);
    }
    out
}

/// The two conditions for reducing a Poisson structure along `C = {y = 0}`
/// with a coordinate distribution `B` on `C`. Indices refer to `π`'s chart.
/// The second condition is checked on invariant monomials of degree at most
/// `degree_bound`.
pub fn poisson_reduction_conditions(
    pi: &PoissonStructure,
    constraints: &[usize],
    distribution: &[usize],
    degree_bound: u32,
) -> Result<PoissonReductionReport> {
    let ctx = pi.context();
    let locus = ConstraintLocus::new(ctx, constraints);
    if distribution.iter().any(|b| constraints.contains(b)) {
        return Err(Error::InvalidStructure("distribution meets the constraints".into()));
    }
    let n = ctx.len();
    let mut cond1_witness = None;
    'outer: for &y in constraints {
        for j in 0..n {
            if distribution.contains(&j) {
                continue;
            }
            let comp = locus.restrict(&pi.matrix()[y][j])?;
            if !comp.is_zero() {
                cond1_witness = Some((ctx.name(y).to_string(), ctx.name(j).to_string(), comp));
                break 'outer;
            }
        }
    }
    let invariant_vars: Vec<usize> = (0..n)
        .filter(|i| !constraints.contains(i) && !distribution.contains(i))
        .collect();
    let family = monomials_up_to(ctx, &invariant_vars, degree_bound);
    let b_local: Vec<usize> = distribution
        .iter()
        .map(|&b| locus.chart().require(ctx.name(b)))
        .collect::<Result<_>>()?;
    let mut cond2_witness = None;
    'pairs: for (a, f) in family.iter().enumerate() {
        for g in &family[a + 1..] {
            let r = locus.restrict(&pi.bracket(f, g)?)?;
            if b_local.iter().any(|&b| !r.partial(b).is_zero()) {
                cond2_witness = Some((f.clone(), g.clone(), r));
                break 'pairs;
            }
        }
    }
    Ok(PoissonReductionReport {
        cond1: cond1_witness.is_none(),
        cond2: cond2_witness.is_none(),
        degree_bound,
        cond1_witness,
        cond2_witness,
        family_size: family.len(),
    })
}

/// The reduced bivector on the coordinates of `C` outside `B`, obtained by
/// bracketing extensions and restricting.
pub fn reduced_poisson(
    pi: &PoissonStructure,
    constraints: &[usize],
    distribution: &[usize],
) -> Result<PoissonStructure> {
    let ctx = pi.context();
    let keep: Vec<usize> = (0..ctx.len())
        .filter(|i| !constraints.contains(i) && !distribution.contains(i))
        .collect();
    let reduced = ctx.restrict(&keep);
    let locus = ConstraintLocus::new(ctx, constraints);
    let m = keep.len();
    let mut matrix = vec![vec![Polynomial::zero(&reduced); m]; m];
    for a in 0..m {
        for b in 0..m {
            let br = pi.bracket(&Polynomial::var(ctx, keep[a]), &Polynomial::var(ctx, keep[b]))?;
            let r = locus.restrict(&br)?;
            matrix[a][b] = r.transfer(&reduced).map_err(|_| {
                Error::NotReducible(format!(
                    "{{{}, {}}} restricts to {r}, which is not invariant",
                    ctx.name(keep[a]),
                    ctx.name(keep[b])
                ))
            })?;
        }
    }
    PoissonStructure::new(&reduced, matrix)
}

/// Names of the constrained coordinates of `T*[1]M` that encode `(C, B)`:
/// the constraints `y` themselves and the momenta dual to `B`.
pub fn cotangent_constraints(pi: &PoissonStructure, constraints: &[usize], distribution: &[usize]) -> Vec<String> {
    let ctx = pi.context();
    let mut names: Vec<String> = constraints.iter().map(|&y| ctx.name(y).to_string()).collect();
    names.extend(
        distribution
            .iter()
            .map(|&b| crate::structures::momentum_name(ctx.name(b))),
    );
    names
}

/// `i*(d f)` on the locus, for comparison with `π*(d f̲)`.
pub fn pullback_differential(omega: &SymplecticForm, locus: &ConstraintLocus, f: &Polynomial) -> Result<Polynomial> {
    let df = Form::from_function(omega.context(), f)?.de_rham();
    locus.pullback(omega.context(), df.poly())
}

/// `π*(d f̲)` on the locus.
pub fn lifted_differential(reduction: &Reduction, fbar: &Polynomial) -> Result<Polynomial> {
    let dc = DoubledContext::new(reduction.reduced_chart());
    let d = Form::from_function(&dc, fbar)?.de_rham();
    let target = DoubledContext::new(reduction.locus().chart());
    d.poly().transfer(target.doubled())
}
