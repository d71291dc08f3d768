//! Differential forms as functions on the shifted tangent chart.
//!
//! The doubled chart appends a generator `d(x)` of degree `|x| + 1` for every
//! base coordinate `x`, in base order. A form is a polynomial on that chart;
//! its form degree counts the `d(·)` generators.

use num_traits::One;

use crate::derivation::GradedVectorField;
use crate::error::{Error, Result};
use crate::graded::{monomial_degree, GradingContext, Polynomial, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubledContext {
    base: GradingContext,
    doubled: GradingContext,
}

pub fn d_name(name: &str) -> String {
    format!("d({name})")
}

impl DoubledContext {
    pub fn new(base: &GradingContext) -> Self {
        let mut specs: Vec<(String, i64)> = (0..base.len())
            .map(|i| (base.name(i).to_string(), base.degree(i)))
            .collect();
        for i in 0..base.len() {
            specs.push((d_name(base.name(i)), base.degree(i) + 1));
        }
        let doubled = GradingContext::new(&specs).expect("d(·) names never collide with identifiers");
        DoubledContext {
            base: base.clone(),
            doubled,
        }
    }

    pub fn base(&self) -> &GradingContext {
        &self.base
    }

    pub fn doubled(&self) -> &GradingContext {
        &self.doubled
    }

    pub fn n(&self) -> usize {
        self.base.len()
    }

    /// Index of `d(x^i)` in the doubled chart.
    pub fn d_index(&self, i: usize) -> usize {
        self.base.len() + i
    }

    /// Embeds a base polynomial as a 0-form.
    pub fn lift(&self, f: &Polynomial) -> Result<Polynomial> {
        if !f.context().same(&self.base) {
            return Err(Error::ContextMismatch);
        }
        let n = self.n();
        Ok(Polynomial::from_terms(
            &self.doubled,
            f.terms().map(|(m, c)| {
                let mut m2 = m.clone();
                m2.resize(2 * n, 0);
                (m2, c.clone())
            }),
        ))
    }

    /// Inverse of [`lift`](Self::lift) for forms of form degree zero.
    pub fn lower(&self, f: &Polynomial) -> Result<Polynomial> {
        let n = self.n();
        let mut terms = Vec::new();
        for (m, c) in f.terms() {
            if m[n..].iter().any(|&e| e > 0) {
                return Err(Error::Precondition("not a 0-form".into()));
            }
            terms.push((m[..n].to_vec(), c.clone()));
        }
        Ok(Polynomial::from_terms(&self.base, terms))
    }

    pub fn lift_field(&self, x: &GradedVectorField) -> Result<Vec<Polynomial>> {
        if !x.context().same(&self.base) {
            return Err(Error::ContextMismatch);
        }
        x.components().iter().map(|c| self.lift(c)).collect()
    }

    pub fn d_generator(&self, i: usize) -> Polynomial {
        Polynomial::var(&self.doubled, self.d_index(i))
    }

    /// The cohomological field `Σ d(x^i) ∂/∂x^i` on the doubled chart.
    pub fn de_rham_field(&self) -> GradedVectorField {
        let n = self.n();
        let mut comps = vec![Polynomial::zero(&self.doubled); 2 * n];
        for (i, c) in comps.iter_mut().enumerate().take(n) {
            *c = self.d_generator(i);
        }
        GradedVectorField::new(&self.doubled, comps, 1).expect("de Rham field is homogeneous")
    }

    /// Splits a 1-form `Σ c_b d(x^b)` into its base coefficients `c_b`.
    ///
    /// Monomials are chart ordered with base generators first, so no sign arises.
    pub fn one_form_coefficients(&self, eta: &Polynomial) -> Result<Vec<Polynomial>> {
        let n = self.n();
        let mut coeffs: Vec<Vec<(Vec<u32>, Rational)>> = vec![Vec::new(); n];
        for (m, c) in eta.terms() {
            let ds: Vec<usize> = (0..n).filter(|&b| m[n + b] > 0).collect();
            if ds.len() != 1 || m[n + ds[0]] != 1 {
                return Err(Error::Precondition(format!("not a 1-form: {eta}")));
            }
            coeffs[ds[0]].push((m[..n].to_vec(), c.clone()));
        }
        Ok(coeffs
            .into_iter()
            .map(|t| Polynomial::from_terms(&self.base, t))
            .collect())
    }
}

/// A polynomial on the doubled chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    dc: DoubledContext,
    poly: Polynomial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormDegree {
    Homogeneous(i64),
    Nonhomogeneous,
    Zero,
}

impl Form {
    pub fn new(dc: &DoubledContext, poly: Polynomial) -> Result<Self> {
        if !poly.context().same(dc.doubled()) {
            return Err(Error::ContextMismatch);
        }
        Ok(Form {
            dc: dc.clone(),
            poly,
        })
    }

    pub fn zero(dc: &DoubledContext) -> Self {
        Form {
            dc: dc.clone(),
            poly: Polynomial::zero(dc.doubled()),
        }
    }

    pub fn from_function(dc: &DoubledContext, f: &Polynomial) -> Result<Self> {
        Ok(Form {
            dc: dc.clone(),
            poly: dc.lift(f)?,
        })
    }

    pub fn context(&self) -> &DoubledContext {
        &self.dc
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn add(&self, other: &Form) -> Result<Form> {
        Form::new(&self.dc, self.poly.add(&other.poly)?)
    }

    pub fn sub(&self, other: &Form) -> Result<Form> {
        Form::new(&self.dc, self.poly.sub(&other.poly)?)
    }

    pub fn scale(&self, s: &Rational) -> Form {
        Form {
            dc: self.dc.clone(),
            poly: self.poly.scale(s),
        }
    }

    pub fn multiply(&self, other: &Form) -> Result<Form> {
        Form::new(&self.dc, self.poly.multiply(&other.poly)?)
    }

    fn monomial_form_degree(&self, m: &[u32]) -> u32 {
        m[self.dc.n()..].iter().sum()
    }

    /// Form degree when every monomial carries the same number of `d(·)`.
    pub fn form_degree(&self) -> Option<u32> {
        let mut it = self.poly.terms().map(|(m, _)| self.monomial_form_degree(m));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn total_degree(&self) -> crate::graded::Degree {
        self.poly.degree()
    }

    /// Total degree minus form degree, when constant across monomials.
    pub fn degree_of_form(&self) -> FormDegree {
        let ctx = self.dc.doubled();
        let mut it = self
            .poly
            .terms()
            .map(|(m, _)| monomial_degree(ctx, m) - self.monomial_form_degree(m) as i64);
        let Some(first) = it.next() else {
            return FormDegree::Zero;
        };
        if it.all(|d| d == first) {
            FormDegree::Homogeneous(first)
        } else {
            FormDegree::Nonhomogeneous
        }
    }

    pub fn de_rham(&self) -> Form {
        Form {
            dc: self.dc.clone(),
            poly: self
                .dc
                .de_rham_field()
                .apply(&self.poly)
                .expect("same chart"),
        }
    }

    /// `ι_X ω = Σ X^i ∂ω/∂d(x^i)`.
    pub fn contract(&self, x: &GradedVectorField) -> Result<Form> {
        let comps = self.dc.lift_field(x)?;
        let mut out = Polynomial::zero(self.dc.doubled());
        for (i, xi) in comps.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let d = self.poly.partial(self.dc.d_index(i));
            if !d.is_zero() {
                out = &out + &(xi * &d);
            }
        }
        Form::new(&self.dc, out)
    }

    /// Cartan's formula `L_X ω = ι_X dω + (−1)^{|X|} d ι_X ω`.
    pub fn lie_derivative(&self, x: &GradedVectorField) -> Result<Form> {
        let first = self.de_rham().contract(x)?;
        let second = self.contract(x)?.de_rham();
        let sign = if x.degree().rem_euclid(2) == 0 {
            Rational::one()
        } else {
            -Rational::one()
        };
        first.add(&second.scale(&sign))
    }

    /// Restricts to the part of a given form degree.
    pub fn component(&self, form_degree: u32) -> Form {
        let n = self.dc.n();
        Form {
            dc: self.dc.clone(),
            poly: self
                .poly
                .filter_terms(|m| m[n..].iter().sum::<u32>() == form_degree),
        }
    }
}

impl std::fmt::Display for Form {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.poly)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::rat;

    fn darboux() -> (DoubledContext, Polynomial, Polynomial, Polynomial, Polynomial) {
        let base = GradingContext::new(&[("x", 0), ("p", 1)]).unwrap();
        let dc = DoubledContext::new(&base);
        let c = dc.doubled().clone();
        (
            dc,
            Polynomial::var(&c, 0),
            Polynomial::var(&c, 1),
            Polynomial::var(&c, 2),
            Polynomial::var(&c, 3),
        )
    }

    #[test]
    fn d_of_coordinate() {
        let (dc, x, _, dx, _) = darboux();
        assert_eq!(Form::new(&dc, x).unwrap().de_rham().poly(), &dx);
    }

    #[test]
    fn d_of_p_dx() {
        let (dc, _, p, dx, dp) = darboux();
        let w = Form::new(&dc, &p * &dx).unwrap().de_rham();
        assert_eq!(w.poly(), &(&dp * &dx));
    }

    #[test]
    fn contraction_rules() {
        let (dc, x, p, dx, dp) = darboux();
        let dx_form = Form::new(&dc, dx.clone()).unwrap();
        let ddx = GradedVectorField::coordinate(dc.base(), 0);
        assert_eq!(dx_form.contract(&ddx).unwrap().poly(), &Polynomial::one(dc.doubled()));

        let e = GradedVectorField::euler(dc.base());
        let w = Form::new(&dc, &dp * &dx).unwrap();
        assert_eq!(w.contract(&e).unwrap().poly(), &(&p * &dx));

        let f = Form::new(&dc, &x * &p).unwrap();
        assert!(f.contract(&e).unwrap().is_zero());
    }

    #[test]
    fn lie_derivative_on_functions_and_dx() {
        let (dc, x, p, _, _) = darboux();
        let e = GradedVectorField::euler(dc.base());
        let f = dc.base();
        let fp = &Polynomial::var(f, 0) * &Polynomial::var(f, 1);
        let form = Form::from_function(&dc, &fp).unwrap();
        assert_eq!(
            form.lie_derivative(&e).unwrap().poly(),
            &dc.lift(&e.apply(&fp).unwrap()).unwrap()
        );
        let _ = (x, p);
        for i in 0..2 {
            let w = Form::new(&dc, dc.d_generator(i)).unwrap();
            assert_eq!(
                w.lie_derivative(&e).unwrap(),
                w.scale(&rat(dc.base().degree(i)))
            );
        }
    }

    #[test]
    fn form_degrees() {
        let (dc, _, _, dx, dp) = darboux();
        let w = Form::new(&dc, &dp * &dx).unwrap();
        assert_eq!(w.form_degree(), Some(2));
        assert_eq!(w.total_degree(), crate::graded::Degree::Homogeneous(3));
        assert_eq!(w.degree_of_form(), FormDegree::Homogeneous(1));

        let base = GradingContext::new(&[("x", 1)]).unwrap();
        let dc = DoubledContext::new(&base);
        let dx = dc.d_generator(0);
        let w = Form::new(&dc, &dx * &dx).unwrap();
        assert!(!w.is_zero());
        assert_eq!(w.degree_of_form(), FormDegree::Homogeneous(2));
    }
}
