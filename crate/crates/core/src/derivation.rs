//! Graded vector fields as derivations of the polynomial algebra.

use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::graded::{rat, Degree, GradingContext, Polynomial, Rational};

/// `X = Σ X^i ∂/∂x^i` with every nonzero component of degree `|x^i| + k`.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedVectorField {
    ctx: GradingContext,
    components: Vec<Polynomial>,
    degree: i64,
}

impl GradedVectorField {
    pub fn new(ctx: &GradingContext, components: Vec<Polynomial>, degree: i64) -> Result<Self> {
        if components.len() != ctx.len() {
            return Err(Error::InvalidStructure(format!(
                "expected {} components, got {}",
                ctx.len(),
                components.len()
            )));
        }
        for (i, c) in components.iter().enumerate() {
            if !c.context().same(ctx) {
                return Err(Error::ContextMismatch);
            }
            match c.degree() {
                Degree::Zero => {}
                Degree::Homogeneous(d) if d == ctx.degree(i) + degree => {}
                other => {
                    return Err(Error::DegreeMismatch(format!(
                        "component along `{}` has degree {other}, expected {}",
                        ctx.name(i),
                        ctx.degree(i) + degree
                    )))
                }
            }
        }
        Ok(GradedVectorField {
            ctx: ctx.clone(),
            components,
            degree,
        })
    }

    /// Infers the degree from the first nonzero component.
    pub fn infer(ctx: &GradingContext, components: Vec<Polynomial>) -> Result<Self> {
        let mut degree = None;
        for (i, c) in components.iter().enumerate() {
            match c.degree() {
                Degree::Homogeneous(d) => {
                    degree = Some(d - ctx.degree(i));
                    break;
                }
                Degree::Nonhomogeneous => return Err(Error::NotHomogeneous),
                Degree::Zero => {}
            }
        }
        let degree = degree.ok_or_else(|| {
            Error::Precondition("cannot infer the degree of the zero vector field".into())
        })?;
        Self::new(ctx, components, degree)
    }

    pub fn zero(ctx: &GradingContext, degree: i64) -> Self {
        GradedVectorField {
            ctx: ctx.clone(),
            components: vec![Polynomial::zero(ctx); ctx.len()],
            degree,
        }
    }

    /// The coordinate field `∂/∂x^i`, of degree `-|x^i|`.
    pub fn coordinate(ctx: &GradingContext, i: usize) -> Self {
        let mut comps = vec![Polynomial::zero(ctx); ctx.len()];
        comps[i] = Polynomial::one(ctx);
        GradedVectorField {
            ctx: ctx.clone(),
            components: comps,
            degree: -ctx.degree(i),
        }
    }

    pub fn context(&self) -> &GradingContext {
        &self.ctx
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn component(&self, i: usize) -> &Polynomial {
        &self.components[i]
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        GradedVectorField {
            ctx: self.ctx.clone(),
            components: self.components.iter().map(|c| c.scale(s)).collect(),
            degree: self.degree,
        }
    }

    pub fn add(&self, other: &GradedVectorField) -> Result<Self> {
        if !self.ctx.same(&other.ctx) {
            return Err(Error::ContextMismatch);
        }
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::DegreeMismatch(format!(
                "cannot add fields of degree {} and {}",
                self.degree, other.degree
            )));
        }
        let degree = if self.is_zero() { other.degree } else { self.degree };
        Ok(GradedVectorField {
            ctx: self.ctx.clone(),
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a + b)
                .collect(),
            degree,
        })
    }

    /// `X(f) = Σ X^i ∂f/∂x^i`.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        if !self.ctx.same(f.context()) {
            return Err(Error::ContextMismatch);
        }
        let mut out = Polynomial::zero(&self.ctx);
        for (i, xi) in self.components.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let d = f.partial(i);
            if !d.is_zero() {
                out = &out + &(xi * &d);
            }
        }
        Ok(out)
    }

    /// Graded commutator `X∘Y − (−1)^{kl} Y∘X`, read off on the coordinates.
    pub fn commutator(&self, other: &GradedVectorField) -> Result<GradedVectorField> {
        if !self.ctx.same(&other.ctx) {
            return Err(Error::ContextMismatch);
        }
        let sign = if (self.degree * other.degree).rem_euclid(2) == 0 {
            Rational::one()
        } else {
            -Rational::one()
        };
        let mut comps = Vec::with_capacity(self.ctx.len());
        for j in 0..self.ctx.len() {
            let xy = self.apply(&other.components[j])?;
            let yx = other.apply(&self.components[j])?;
            comps.push(&xy - &yx.scale(&sign));
        }
        GradedVectorField::new(&self.ctx, comps, self.degree + other.degree)
    }

    /// The graded Euler field `Σ |x^i| x^i ∂/∂x^i`.
    pub fn euler(ctx: &GradingContext) -> Self {
        let components = (0..ctx.len())
            .map(|i| Polynomial::var(ctx, i).scale(&rat(ctx.degree(i))))
            .collect();
        GradedVectorField {
            ctx: ctx.clone(),
            components,
            degree: 0,
        }
    }

    /// `true` when the field has degree 1 and `[X, X] = 0`. The zero field
    /// counts as degree 1.
    pub fn is_cohomological(&self) -> CohomologicalCheck {
        if self.is_zero() {
            return CohomologicalCheck {
                holds: true,
                degree: 1,
                witness: None,
            };
        }
        if self.degree != 1 {
            return CohomologicalCheck {
                holds: false,
                degree: self.degree,
                witness: None,
            };
        }
        let sq = self.commutator(self).expect("same chart");
        let witness = sq
            .components
            .iter()
            .enumerate()
            .find(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.ctx.name(i).to_string(), c.clone()));
        CohomologicalCheck {
            holds: witness.is_none(),
            degree: self.degree,
            witness,
        }
    }

    /// First-order expansion of the odd-time flow `x(t) = x + t v`.
    ///
    /// The velocity is `X^i`; the obstruction is `Σ_j X^j ∂X^i/∂x^j = (X∘X)(x^i)`,
    /// which is half of `[X, X]^i`.
    pub fn odd_flow_first_order(&self) -> Result<OddFlow> {
        if self.degree != 1 {
            return Err(Error::Precondition(format!(
                "odd flow needs a degree-1 field, got degree {}",
                self.degree
            )));
        }
        let obstruction = self
            .components
            .iter()
            .map(|xi| self.apply(xi))
            .collect::<Result<Vec<_>>>()?;
        Ok(OddFlow {
            velocity: self.components.clone(),
            obstruction,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologicalCheck {
    pub holds: bool,
    pub degree: i64,
    /// First nonzero component of `[X, X]`, by coordinate name.
    pub witness: Option<(String, Polynomial)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddFlow {
    pub velocity: Vec<Polynomial>,
    pub obstruction: Vec<Polynomial>,
}

impl OddFlow {
    pub fn is_integrable(&self) -> bool {
        self.obstruction.iter().all(Polynomial::is_zero)
    }
}

impl fmt::Debug for GradedVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GradedVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c}) d/d{}", self.ctx.name(i)))
            .collect();
        if parts.is_empty() {
            write!(f, "0 [degree {}]", self.degree)
        } else {
            write!(f, "{} [degree {}]", parts.join(" + "), self.degree)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_fields() {
        let c = GradingContext::new(&[("x", 0), ("p", 1)]).unwrap();
        let e = GradedVectorField::euler(&c);
        assert!(e.component(0).is_zero());
        assert_eq!(e.component(1), &Polynomial::var(&c, 1));

        let c = GradingContext::new(&[("x", 0), ("y", 0)]).unwrap();
        assert!(GradedVectorField::euler(&c).is_zero());

        let c = GradingContext::new(&[("q", -1)]).unwrap();
        let e = GradedVectorField::euler(&c);
        let q = Polynomial::var(&c, 0);
        assert_eq!(e.apply(&q).unwrap(), -q.clone());
    }

    #[test]
    fn euler_eigenvalue_on_homogeneous() {
        let c = GradingContext::new(&[("x", 0), ("p", 1), ("c", 2)]).unwrap();
        let x = Polynomial::var(&c, 0);
        let p = Polynomial::var(&c, 1);
        let cc = Polynomial::var(&c, 2);
        let f = &(&(&x * &p) * &cc) + &(&(&p * &x).scale(&rat(5)) * &cc);
        let e = GradedVectorField::euler(&c);
        assert_eq!(e.apply(&f).unwrap(), f.scale(&rat(3)));
    }

    #[test]
    fn zero_field() {
        let c = GradingContext::new(&[("x", 0)]).unwrap();
        let z = GradedVectorField::zero(&c, 1);
        assert!(z.apply(&Polynomial::var(&c, 0)).unwrap().is_zero());
        assert!(z.is_cohomological().holds);
    }

    #[test]
    fn de_rham_field_is_cohomological() {
        let c = GradingContext::new(&[("x", 0), ("y", 0), ("d(x)", 1), ("d(y)", 1)]).unwrap();
        let comps = vec![
            Polynomial::var(&c, 2),
            Polynomial::var(&c, 3),
            Polynomial::zero(&c),
            Polynomial::zero(&c),
        ];
        let q = GradedVectorField::new(&c, comps, 1).unwrap();
        assert!(q.is_cohomological().holds);
        assert!(q.odd_flow_first_order().unwrap().is_integrable());
    }

    #[test]
    fn inhomogeneous_component_rejected() {
        let c = GradingContext::new(&[("x", 0), ("p", 1)]).unwrap();
        let bad = vec![&Polynomial::var(&c, 0) + &Polynomial::var(&c, 1), Polynomial::zero(&c)];
        assert!(GradedVectorField::new(&c, bad, 0).is_err());
    }

    #[test]
    fn odd_flow_requires_degree_one() {
        let c = GradingContext::new(&[("x", 0)]).unwrap();
        assert!(GradedVectorField::zero(&c, 0).odd_flow_first_order().is_err());
    }
}
