//! Graded symplectic forms, Hamiltonian vector fields and Poisson brackets.
//!
//! Conventions: `ι_{X_f} ω = d f` and `{f, g} = (−1)^{|f|+1} X_f(g)`.
//! For `ω = d(p)d(x)` on `(x:0, p:1)` this gives `X_x = ∂/∂p` and `{x, p} = −1`.

use num_traits::{One, Zero};

use crate::derivation::GradedVectorField;
use crate::error::{Error, Result};
use crate::forms::{DoubledContext, Form};
use crate::graded::{rat, Degree, GradingContext, Polynomial, Rational};
use crate::linalg::{self, PolyMatrix};

pub const DEFAULT_SERIES_BOUND: usize = 32;

/// How the inverse of the coefficient matrix was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// The coefficient matrix is constant and invertible.
    Darboux,
    /// Constant invertible leading part; the correction series stopped after `terms` terms.
    ConstantLeading { terms: usize },
    /// Body in the degree-0 coordinates with the given constant determinant.
    Body { determinant: Rational, terms: usize },
}

impl Certificate {
    pub fn label(&self) -> &'static str {
        match self {
            Certificate::Darboux => "darboux",
            Certificate::ConstantLeading { .. } => "constant-leading",
            Certificate::Body { .. } => "body-determinant",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SymplecticForm {
    dc: DoubledContext,
    omega: Form,
    k: i64,
    matrix: PolyMatrix,
    inverse: PolyMatrix,
    certificate: Certificate,
}

/// Coefficient matrix `M_ab`, the coefficient of `d(z^b)` in `∂ω/∂d(z^a)`.
pub fn coefficient_matrix(dc: &DoubledContext, omega: &Polynomial) -> Result<PolyMatrix> {
    (0..dc.n())
        .map(|a| dc.one_form_coefficients(&omega.partial(dc.d_index(a))))
        .collect()
}

/// Inverse of [`coefficient_matrix`] on 2-forms: `ω = ½ Σ d(z^a) M_ab d(z^b)`.
pub fn form_from_matrix(dc: &DoubledContext, m: &PolyMatrix) -> Result<Polynomial> {
    let mut out = Polynomial::zero(dc.doubled());
    for (a, row) in m.iter().enumerate() {
        for (b, e) in row.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            let t = &(&dc.d_generator(a) * &dc.lift(e)?) * &dc.d_generator(b);
            out = &out + &t;
        }
    }
    Ok(out.scale(&Rational::new(1.into(), 2.into())))
}

fn series(
    ctx: &GradingContext,
    lead_inv: &PolyMatrix,
    rest: &PolyMatrix,
    bound: usize,
) -> Option<(PolyMatrix, usize)> {
    let step = linalg::neg(&linalg::mul(ctx, lead_inv, rest));
    let mut term = lead_inv.clone();
    let mut acc = term.clone();
    for m in 1..=bound {
        term = linalg::mul(ctx, &step, &term);
        if linalg::is_zero(&term) {
            return Some((acc, m));
        }
        acc = linalg::add(&acc, &term);
    }
    None
}

/// Certified two-sided inverse of a graded coefficient matrix.
pub fn certified_inverse(
    ctx: &GradingContext,
    m: &PolyMatrix,
    bound: usize,
) -> Result<(PolyMatrix, Certificate)> {
    let n = m.len();
    let body_coords: Vec<usize> = (0..ctx.len()).filter(|&i| ctx.degree(i) != 0).collect();
    let body: PolyMatrix = m
        .iter()
        .map(|r| r.iter().map(|e| e.set_zero(&body_coords)).collect())
        .collect();
    let rest = linalg::sub(m, &body);
    let body_constant = body.iter().all(|r| r.iter().all(|e| e.as_constant().is_some()));
    let no_negative = ctx.degrees().iter().all(|&d| d >= 0);

    let (body_inv, det) = if body_constant {
        let c = linalg::constant_part(&body);
        match linalg::invert(&c) {
            Some(inv) => (linalg::to_poly(ctx, &inv), None),
            None if no_negative => {
                return Err(Error::Degenerate(format!(
                    "constant part of the coefficient matrix has rank {} < {n}",
                    linalg::rank(&c)
                )))
            }
            None => {
                return Err(Error::NondegeneracyUnverified(
                    "constant part is singular and negative-degree coordinates are present".into(),
                ))
            }
        }
    } else {
        let (adj, det) = linalg::adjugate(ctx, &body);
        if det.is_zero() && no_negative {
            return Err(Error::Degenerate("body determinant vanishes identically".into()));
        }
        match det.as_constant() {
            Some(d) if !d.is_zero() => (linalg::scale(&adj, &d.recip()), Some(d)),
            _ => {
                return Err(Error::NondegeneracyUnverified(format!(
                    "body determinant {det} is not a nonzero constant"
                )))
            }
        }
    };

    let (inv, terms) = if linalg::is_zero(&rest) {
        (body_inv, 1)
    } else {
        series(ctx, &body_inv, &rest, bound).ok_or_else(|| {
            Error::NondegeneracyUnverified(format!(
                "inverse series did not terminate within {bound} terms"
            ))
        })?
    };
    if !linalg::is_identity(&linalg::mul(ctx, &inv, m)) || !linalg::is_identity(&linalg::mul(ctx, m, &inv)) {
        return Err(Error::Verification("computed inverse fails N M = M N = I".into()));
    }
    let cert = match det {
        Some(determinant) => Certificate::Body { determinant, terms },
        None if terms == 1 => Certificate::Darboux,
        None => Certificate::ConstantLeading { terms },
    };
    Ok((inv, cert))
}

impl SymplecticForm {
    pub fn new(dc: &DoubledContext, omega: Polynomial) -> Result<Self> {
        Self::with_bound(dc, omega, DEFAULT_SERIES_BOUND)
    }

    pub fn with_bound(dc: &DoubledContext, omega: Polynomial, bound: usize) -> Result<Self> {
        let omega = Form::new(dc, omega)?;
        if omega.is_zero() {
            return Err(Error::Degenerate("the zero form".into()));
        }
        match omega.form_degree() {
            Some(2) => {}
            other => {
                return Err(Error::InvalidStructure(format!(
                    "expected a 2-form, got form degree {}",
                    other.map_or_else(|| "mixed".to_string(), |d| d.to_string())
                )))
            }
        }
        let k = match omega.total_degree() {
            Degree::Homogeneous(d) => d - 2,
            _ => return Err(Error::NotHomogeneous),
        };
        let dw = omega.de_rham();
        if !dw.is_zero() {
            return Err(Error::NotClosed(dw.to_string()));
        }
        let matrix = coefficient_matrix(dc, omega.poly())?;
        let (inverse, certificate) = certified_inverse(dc.base(), &matrix, bound)?;
        Ok(SymplecticForm {
            dc: dc.clone(),
            omega,
            k,
            matrix,
            inverse,
            certificate,
        })
    }

    pub fn context(&self) -> &DoubledContext {
        &self.dc
    }

    pub fn base(&self) -> &GradingContext {
        self.dc.base()
    }

    pub fn form(&self) -> &Form {
        &self.omega
    }

    /// The degree `k` of the form, i.e. its total degree minus two.
    pub fn degree(&self) -> i64 {
        self.k
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn inverse(&self) -> &PolyMatrix {
        &self.inverse
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }

    /// `α = ι_E ω / k`, which satisfies `dα = ω` when `k ≠ 0`.
    pub fn liouville_potential(&self) -> Result<Form> {
        if self.k == 0 {
            return Err(Error::Precondition("degree-0 forms need not be exact".into()));
        }
        let e = GradedVectorField::euler(self.base());
        Ok(self.omega.contract(&e)?.scale(&rat(self.k).recip()))
    }

    /// `X_f`, the field with `ι_{X_f} ω = d f`, of degree `|f| − k`.
    pub fn hamiltonian_vector_field(&self, f: &Polynomial) -> Result<GradedVectorField> {
        let base = self.base();
        if !f.context().same(base) {
            return Err(Error::ContextMismatch);
        }
        let deg = match f.degree() {
            Degree::Homogeneous(d) => d,
            Degree::Zero => return Ok(GradedVectorField::zero(base, -self.k)),
            Degree::Nonhomogeneous => return Err(Error::NotHomogeneous),
        };
        let df = Form::from_function(&self.dc, f)?.de_rham();
        let c = self.dc.one_form_coefficients(df.poly())?;
        let n = self.dc.n();
        let comps = (0..n)
            .map(|a| {
                let mut acc = Polynomial::zero(base);
                for (b, cb) in c.iter().enumerate() {
                    if !cb.is_zero() && !self.inverse[b][a].is_zero() {
                        acc = &acc + &(cb * &self.inverse[b][a]);
                    }
                }
                acc
            })
            .collect();
        GradedVectorField::new(base, comps, deg - self.k)
    }

    /// For a symplectic field of degree `l` with `k + l ≠ 0`, the Hamiltonian
    /// `H = ι_E ι_X ω / (k + l)`, checked against `X_H = X`.
    pub fn hamiltonian_of_field(&self, x: &GradedVectorField) -> Result<Polynomial> {
        let l = x.degree();
        let lie = self.omega.lie_derivative(x)?;
        if !lie.is_zero() {
            return Err(Error::NotSymplectic(lie.to_string()));
        }
        if self.k + l == 0 {
            return Err(Error::Precondition(format!(
                "k + l = 0 for a field of degree {l}; the Hamiltonian is not determined by the Euler field"
            )));
        }
        let e = GradedVectorField::euler(self.base());
        let eta = self.omega.contract(x)?;
        let h = self
            .dc
            .lower(eta.contract(&e)?.poly())?
            .scale(&rat(self.k + l).recip());
        let back = self.hamiltonian_vector_field(&h)?;
        if back.components() != x.components() {
            return Err(Error::Verification(format!("X_H = {back} differs from X = {x}")));
        }
        Ok(h)
    }

    /// `{f, g} = (−1)^{|f|+1} X_f(g)`, extended bilinearly over homogeneous parts.
    pub fn poisson_bracket(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
        if !g.context().same(self.base()) {
            return Err(Error::ContextMismatch);
        }
        let mut out = Polynomial::zero(self.base());
        for (d, part) in f.homogeneous_parts() {
            let xf = self.hamiltonian_vector_field(&part)?;
            let v = xf.apply(g)?;
            out = &out + &v.scale(&sign(d + 1));
        }
        Ok(out)
    }

    pub fn check_master_equation(&self, s: &Polynomial) -> Result<MasterReport> {
        let degree = s.homogeneous_degree()?;
        let bracket = self.poisson_bracket(s, s)?;
        let q = self.hamiltonian_vector_field(s)?;
        Ok(MasterReport {
            holds: bracket.is_zero(),
            constant: bracket.as_constant().is_some(),
            expected_degree: self.k + 2,
            s_degree: degree,
            q_degree: q.degree(),
            bracket,
        })
    }
}

#[derive(Debug, Clone)]
pub struct MasterReport {
    pub bracket: Polynomial,
    pub holds: bool,
    /// `{S, S}` is a constant, possibly zero.
    pub constant: bool,
    /// Degree of `{S, S}` for `S` of degree `k + 1`.
    pub expected_degree: i64,
    pub s_degree: Option<i64>,
    pub q_degree: i64,
}

impl MasterReport {
    pub fn is_zero_constant(&self) -> bool {
        self.bracket.as_constant().is_some_and(|c| c.is_zero())
    }
}

/// Sign `(−1)^n` as a rational.
pub fn sign(n: i64) -> Rational {
    if n.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}
