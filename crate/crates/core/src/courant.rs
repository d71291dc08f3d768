//! Courant algebroids as degree-2 symplectic charts with a cubic Hamiltonian,
//! and generalized complex structures on them.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::forms::{DoubledContext, Form};
use crate::graded::{ratio, Degree, GradingContext, Polynomial, Rational};
use crate::linalg::PolyMatrix;
use crate::symplectic::{MasterReport, SymplecticForm};

#[derive(Clone, Debug)]
pub struct CourantStructure {
    ctx: GradingContext,
    base: Vec<usize>,
    momenta: Vec<usize>,
    fiber: Vec<usize>,
    /// `pairing[α][β] = g_αβ`, a function of the base coordinates.
    pairing: PolyMatrix,
    /// `anchor[α][i] = ρ^i_α`.
    anchor: Vec<Vec<Polynomial>>,
    /// `f[α][β][γ] = f_αβγ`.
    f: Vec<Vec<Vec<Polynomial>>>,
}

fn check_degrees(ctx: &GradingContext, idx: &[usize], d: i64, what: &str) -> Result<()> {
    match idx.iter().find(|&&i| ctx.degree(i) != d) {
        Some(&i) => Err(Error::DegreeMismatch(format!(
            "{what} coordinate `{}` has degree {}, expected {d}",
            ctx.name(i),
            ctx.degree(i)
        ))),
        None => Ok(()),
    }
}

fn base_only(p: &Polynomial, base: &[usize], what: &str) -> Result<()> {
    match p.support().into_iter().find(|i| !base.contains(i)) {
        Some(i) => Err(Error::InvalidStructure(format!(
            "{what} depends on `{}`",
            p.context().name(i)
        ))),
        None => Ok(()),
    }
}

impl CourantStructure {
    pub fn new(
        ctx: &GradingContext,
        base: Vec<usize>,
        momenta: Vec<usize>,
        fiber: Vec<usize>,
        pairing: PolyMatrix,
        anchor: Vec<Vec<Polynomial>>,
        f: Vec<Vec<Vec<Polynomial>>>,
    ) -> Result<Self> {
        check_degrees(ctx, &base, 0, "base")?;
        check_degrees(ctx, &momenta, 2, "momentum")?;
        check_degrees(ctx, &fiber, 1, "fiber")?;
        let (n, r) = (base.len(), fiber.len());
        if momenta.len() != n {
            return Err(Error::InvalidStructure(format!(
                "{n} base coordinates but {} momenta",
                momenta.len()
            )));
        }
        if n + n + r != ctx.len() {
            return Err(Error::InvalidStructure(
                "every coordinate must be a base, momentum or fiber coordinate".into(),
            ));
        }
        if pairing.len() != r || pairing.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidStructure(format!("pairing must be {r}x{r}")));
        }
        if anchor.len() != r || anchor.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidStructure(format!("anchor must be {r}x{n}")));
        }
        if f.len() != r || f.iter().any(|a| a.len() != r || a.iter().any(|b| b.len() != r)) {
            return Err(Error::InvalidStructure(format!("bracket tensor must be {r}x{r}x{r}")));
        }
        let name = |a: usize| ctx.name(fiber[a]).to_string();
        for a in 0..r {
            for b in 0..r {
                base_only(&pairing[a][b], &base, "pairing")?;
                if pairing[a][b] != pairing[b][a] {
                    return Err(Error::InvalidStructure(format!(
                        "pairing is not symmetric at ({}, {})",
                        name(a),
                        name(b)
                    )));
                }
                for c in 0..r {
                    base_only(&f[a][b][c], &base, "bracket tensor")?;
                    if f[a][b][c] != -&f[b][a][c] || f[a][b][c] != -&f[a][c][b] {
                        return Err(Error::NotAntisymmetric(format!(
                            "f({}, {}, {}) is not totally antisymmetric",
                            name(a),
                            name(b),
                            name(c)
                        )));
                    }
                }
            }
            for e in &anchor[a] {
                base_only(e, &base, "anchor")?;
            }
        }
        Ok(CourantStructure {
            ctx: ctx.clone(),
            base,
            momenta,
            fiber,
            pairing,
            anchor,
            f,
        })
    }

    pub fn context(&self) -> &GradingContext {
        &self.ctx
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn momenta(&self) -> &[usize] {
        &self.momenta
    }

    pub fn fiber(&self) -> &[usize] {
        &self.fiber
    }

    /// `ω = d(Σ p_i d(x^i) + ½ Σ g_αβ ξ^α d(ξ^β))`.
    pub fn symplectic_form(&self) -> Result<SymplecticForm> {
        let dc = DoubledContext::new(&self.ctx);
        let mut alpha = Polynomial::zero(dc.doubled());
        for (&x, &p) in self.base.iter().zip(&self.momenta) {
            alpha = &alpha + &(&dc.lift(&Polynomial::var(&self.ctx, p))? * &dc.d_generator(x));
        }
        let mut quad = Polynomial::zero(dc.doubled());
        for (a, &xa) in self.fiber.iter().enumerate() {
            for (b, &xb) in self.fiber.iter().enumerate() {
                let g = &self.pairing[a][b];
                if g.is_zero() {
                    continue;
                }
                let gx = g * &Polynomial::var(&self.ctx, xa);
                quad = &quad + &(&dc.lift(&gx)? * &dc.d_generator(xb));
            }
        }
        let alpha = &alpha + &quad.scale(&ratio(1, 2));
        let w = Form::new(&dc, alpha)?.de_rham();
        SymplecticForm::new(&dc, w.poly().clone()).map_err(|e| match e {
            Error::Degenerate(m) => Error::Degenerate(format!("pairing is not invertible: {m}")),
            other => other,
        })
    }

    /// `S = Σ ρ^i_α p_i ξ^α + 1/6 Σ f_αβγ ξ^α ξ^β ξ^γ`.
    pub fn hamiltonian(&self) -> Polynomial {
        let c = &self.ctx;
        let xi: Vec<Polynomial> = self.fiber.iter().map(|&i| Polynomial::var(c, i)).collect();
        let mut s = Polynomial::zero(c);
        for (a, row) in self.anchor.iter().enumerate() {
            for (i, rho) in row.iter().enumerate() {
                if !rho.is_zero() {
                    s = &s + &(&(rho * &Polynomial::var(c, self.momenta[i])) * &xi[a]);
                }
            }
        }
        let r = self.fiber.len();
        let mut cubic = Polynomial::zero(c);
        for a in 0..r {
            for b in 0..r {
                for g in 0..r {
                    let f = &self.f[a][b][g];
                    if !f.is_zero() {
                        cubic = &cubic + &(&(&(f * &xi[a]) * &xi[b]) * &xi[g]);
                    }
                }
            }
        }
        &s + &cubic.scale(&ratio(1, 6))
    }

    pub fn verify(&self) -> Result<CourantReport> {
        let omega = self.symplectic_form()?;
        let s = self.hamiltonian();
        let master = omega.check_master_equation(&s)?;
        Ok(CourantReport { omega, s, master })
    }
}

#[derive(Clone, Debug)]
pub struct CourantReport {
    pub omega: SymplecticForm,
    pub s: Polynomial,
    pub master: MasterReport,
}

#[derive(Clone, Debug)]
pub struct GeneralizedComplexReport {
    /// `T = {S, J}`.
    pub t: Polynomial,
    /// `{{S, J}, J}`.
    pub t_j: Polynomial,
    /// `λ` with `{{S, J}, J} = λ S`, if such a constant exists.
    pub raw_lambda: Option<Rational>,
    /// The sign of `λ`: its representative in `{−1, 0, 1}` under `J ↦ cJ`.
    pub normalized_lambda: Option<i8>,
    pub ss: Polynomial,
    /// `{S, T} + {T, S}`, the mixed coefficient of the two-parameter equation.
    pub st: Polynomial,
    pub tt: Polynomial,
}

impl GeneralizedComplexReport {
    /// `{αS + βT, αS + βT} = 0` for all `α, β`.
    pub fn two_parameter_holds(&self) -> bool {
        self.ss.is_zero() && self.st.is_zero() && self.tt.is_zero()
    }

    pub fn is_generalized_complex(&self) -> bool {
        self.normalized_lambda == Some(-1) && self.two_parameter_holds()
    }
}

/// Finds `λ` with `u = λ s`.
pub fn proportionality(u: &Polynomial, s: &Polynomial) -> Option<Rational> {
    if u.is_zero() {
        return Some(Rational::zero());
    }
    let (m, c) = s.terms().next()?;
    let lambda = u.coefficient(m) / c;
    (u == &s.scale(&lambda)).then_some(lambda)
}

/// Tests `{{S, J}, J} = λ S` together with the two-parameter master equation.
pub fn check_generalized_complex(
    omega: &SymplecticForm,
    s: &Polynomial,
    j: &Polynomial,
    momenta: &[usize],
) -> Result<GeneralizedComplexReport> {
    match j.degree() {
        Degree::Homogeneous(2) | Degree::Zero => {}
        other => return Err(Error::DegreeMismatch(format!("J has degree {other}, expected 2"))),
    }
    match s.degree() {
        Degree::Homogeneous(3) | Degree::Zero => {}
        other => return Err(Error::DegreeMismatch(format!("S has degree {other}, expected 3"))),
    }
    if let Some(&p) = j.support().iter().find(|i| momenta.contains(i)) {
        return Err(Error::InvalidStructure(format!(
            "J depends on the momentum `{}`",
            j.context().name(p)
        )));
    }
    let t = omega.poisson_bracket(s, j)?;
    let t_j = omega.poisson_bracket(&t, j)?;
    let raw_lambda = proportionality(&t_j, s);
    let normalized_lambda = raw_lambda.as_ref().map(|l| {
        if l.is_zero() {
            0
        } else if l.is_negative() {
            -1
        } else {
            1
        }
    });
    let ss = omega.poisson_bracket(s, s)?;
    let st = &omega.poisson_bracket(s, &t)? + &omega.poisson_bracket(&t, s)?;
    let tt = omega.poisson_bracket(&t, &t)?;
    Ok(GeneralizedComplexReport {
        t,
        t_j,
        raw_lambda,
        normalized_lambda,
        ss,
        st,
        tt,
    })
}
