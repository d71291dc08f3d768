//! Classical structures encoded as cohomological fields or master-equation
//! Hamiltonians: Lie algebras, Lie algebroids, truncated L∞ algebras and
//! Poisson bivectors.
//!
//! Sign convention for Lie data: with `[e_i, e_j] = Σ f_ij^k e_k` the field is
//! `Q = ½ Σ f_ij^k ξ^i ξ^j ∂/∂ξ^k`, the negative of the Chevalley–Eilenberg
//! differential. The algebroid field uses the same sign on the bracket part and
//! therefore `−ρ^i_α a^α ∂/∂x^i` on the anchor part, so that `[Q, Q] = 0`
//! exactly when the anchor is a bracket homomorphism and Jacobi holds.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::derivation::GradedVectorField;
use crate::error::{Error, Result};
use crate::forms::DoubledContext;
use crate::graded::{ratio, GradingContext, Polynomial, Rational};
use crate::linalg::PolyMatrix;
use crate::symplectic::{MasterReport, SymplecticForm};

fn half() -> Rational {
    ratio(1, 2)
}

fn require_degree(ctx: &GradingContext, idx: &[usize], degree: i64, what: &str) -> Result<()> {
    for &i in idx {
        if ctx.degree(i) != degree {
            return Err(Error::DegreeMismatch(format!(
                "{what} coordinate `{}` has degree {}, expected {degree}",
                ctx.name(i),
                ctx.degree(i)
            )));
        }
    }
    Ok(())
}

fn require_support(p: &Polynomial, allowed: &[usize], what: &str) -> Result<()> {
    let ctx = p.context();
    match p.support().into_iter().find(|i| !allowed.contains(i)) {
        Some(i) => Err(Error::InvalidStructure(format!(
            "{what} depends on `{}`",
            ctx.name(i)
        ))),
        None => Ok(()),
    }
}

/// Nonzero components of a field, keyed by coordinate name.
fn residual(f: &GradedVectorField, coords: &[usize]) -> Vec<(String, Polynomial)> {
    coords
        .iter()
        .filter(|&&i| !f.component(i).is_zero())
        .map(|&i| (f.context().name(i).to_string(), f.component(i).clone()))
        .collect()
}

#[derive(Clone, Debug)]
pub struct LieStructure {
    ctx: GradingContext,
    /// `f[i][j][k] = f_ij^k`.
    f: Vec<Vec<Vec<Rational>>>,
}

impl LieStructure {
    /// Dense constants; the chart must consist of degree-1 coordinates.
    pub fn new(ctx: &GradingContext, f: Vec<Vec<Vec<Rational>>>) -> Result<Self> {
        let n = ctx.len();
        require_degree(ctx, &(0..n).collect::<Vec<_>>(), 1, "Lie")?;
        if f.len() != n || f.iter().any(|r| r.len() != n || r.iter().any(|c| c.len() != n)) {
            return Err(Error::InvalidStructure(format!("expected an {n}x{n}x{n} table")));
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if f[i][j][k] != -f[j][i][k].clone() {
                        return Err(Error::NotAntisymmetric(format!(
                            "f_({},{})^{} = {} but f_({},{})^{} = {}",
                            ctx.name(i), ctx.name(j), ctx.name(k), f[i][j][k],
                            ctx.name(j), ctx.name(i), ctx.name(k), f[j][i][k]
                        )));
                    }
                }
            }
        }
        Ok(LieStructure { ctx: ctx.clone(), f })
    }

    /// Builds from brackets `[e_i, e_j] = Σ c_k e_k`; the transposed entries are
    /// filled in by antisymmetry and must agree when given explicitly.
    pub fn from_brackets(ctx: &GradingContext, brackets: &[(usize, usize, Vec<(usize, Rational)>)]) -> Result<Self> {
        let n = ctx.len();
        let mut f = vec![vec![vec![Rational::zero(); n]; n]; n];
        let mut seen = vec![vec![false; n]; n];
        for (i, j, rhs) in brackets {
            let (i, j) = (*i, *j);
            if seen[i][j] {
                return Err(Error::InvalidStructure(format!(
                    "bracket [{}, {}] given twice",
                    ctx.name(i),
                    ctx.name(j)
                )));
            }
            let mut row = vec![Rational::zero(); n];
            for (k, c) in rhs {
                row[*k] += c;
            }
            if i == j && row.iter().any(|c| !c.is_zero()) {
                return Err(Error::NotAntisymmetric(format!(
                    "[{0}, {0}] must vanish",
                    ctx.name(i)
                )));
            }
            if seen[j][i] {
                if f[j][i].iter().zip(&row).any(|(a, b)| a != &-b.clone()) {
                    return Err(Error::NotAntisymmetric(format!(
                        "[{0}, {1}] is not minus [{1}, {0}]",
                        ctx.name(i),
                        ctx.name(j)
                    )));
                }
            } else {
                f[j][i] = row.iter().map(|c| -c.clone()).collect();
            }
            f[i][j] = row;
            seen[i][j] = true;
        }
        Self::new(ctx, f)
    }

    pub fn context(&self) -> &GradingContext {
        &self.ctx
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.f[i][j][k]
    }

    pub fn dimension(&self) -> usize {
        self.ctx.len()
    }

    /// `Q = ½ Σ f_ij^k ξ^i ξ^j ∂/∂ξ^k`.
    pub fn to_q(&self) -> GradedVectorField {
        let n = self.ctx.len();
        let xi: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(&self.ctx, i)).collect();
        let comps = (0..n)
            .map(|k| {
                let mut acc = Polynomial::zero(&self.ctx);
                for i in 0..n {
                    for j in 0..n {
                        let c = &self.f[i][j][k];
                        if !c.is_zero() {
                            acc = &acc + &(&xi[i] * &xi[j]).scale(c);
                        }
                    }
                }
                acc.scale(&half())
            })
            .collect();
        GradedVectorField::new(&self.ctx, comps, 1).expect("quadratic in degree-1 coordinates")
    }

    pub fn verify(&self) -> LieReport {
        let q = self.to_q();
        let sq = q.commutator(&q).expect("same chart");
        let witness = sq
            .components()
            .iter()
            .find_map(|c| c.terms().next().map(|(m, _)| m.clone()))
            .map(|m| {
                let idx: Vec<String> = (0..m.len())
                    .filter(|&i| m[i] > 0)
                    .map(|i| self.ctx.name(i).to_string())
                    .collect();
                idx
            });
        LieReport {
            holds: sq.is_zero(),
            q,
            square: sq,
            witness,
        }
    }
}

#[derive(Clone, Debug)]
pub struct LieReport {
    pub holds: bool,
    pub q: GradedVectorField,
    pub square: GradedVectorField,
    /// Basis elements of a triple on which the Jacobi identity fails.
    pub witness: Option<Vec<String>>,
}

#[derive(Clone, Debug)]
pub struct AlgebroidStructure {
    ctx: GradingContext,
    base: Vec<usize>,
    fiber: Vec<usize>,
    /// `anchor[α][i] = ρ^i_α`.
    anchor: Vec<Vec<Polynomial>>,
    /// `bracket[α][β][γ] = f_αβ^γ`.
    bracket: Vec<Vec<Vec<Polynomial>>>,
}

impl AlgebroidStructure {
    pub fn new(
        ctx: &GradingContext,
        base: Vec<usize>,
        fiber: Vec<usize>,
        anchor: Vec<Vec<Polynomial>>,
        bracket: Vec<Vec<Vec<Polynomial>>>,
    ) -> Result<Self> {
        require_degree(ctx, &base, 0, "base")?;
        require_degree(ctx, &fiber, 1, "fiber")?;
        let (n, r) = (base.len(), fiber.len());
        if base.len() + fiber.len() != ctx.len() {
            return Err(Error::InvalidStructure(
                "every coordinate must be a base or a fiber coordinate".into(),
            ));
        }
        if anchor.len() != r || anchor.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidStructure(format!("anchor must be {r}x{n}")));
        }
        if bracket.len() != r
            || bracket.iter().any(|a| a.len() != r || a.iter().any(|b| b.len() != r))
        {
            return Err(Error::InvalidStructure(format!("bracket must be {r}x{r}x{r}")));
        }
        for row in &anchor {
            for e in row {
                require_support(e, &base, "anchor")?;
            }
        }
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    require_support(&bracket[a][b][c], &base, "bracket")?;
                    if bracket[a][b][c] != -&bracket[b][a][c] {
                        return Err(Error::NotAntisymmetric(format!(
                            "f_({},{})^{}",
                            ctx.name(fiber[a]),
                            ctx.name(fiber[b]),
                            ctx.name(fiber[c])
                        )));
                    }
                }
            }
        }
        Ok(AlgebroidStructure {
            ctx: ctx.clone(),
            base,
            fiber,
            anchor,
            bracket,
        })
    }

    pub fn context(&self) -> &GradingContext {
        &self.ctx
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn fiber(&self) -> &[usize] {
        &self.fiber
    }

    /// `Q = −Σ ρ^i_α a^α ∂/∂x^i + ½ Σ f_αβ^γ a^α a^β ∂/∂a^γ`.
    pub fn to_q(&self) -> GradedVectorField {
        let a: Vec<Polynomial> = self.fiber.iter().map(|&i| Polynomial::var(&self.ctx, i)).collect();
        let mut comps = vec![Polynomial::zero(&self.ctx); self.ctx.len()];
        for (bi, &x) in self.base.iter().enumerate() {
            let mut acc = Polynomial::zero(&self.ctx);
            for (al, row) in self.anchor.iter().enumerate() {
                if !row[bi].is_zero() {
                    acc = &acc - &(&row[bi] * &a[al]);
                }
            }
            comps[x] = acc;
        }
        let r = self.fiber.len();
        for (g, &y) in self.fiber.iter().enumerate() {
            let mut acc = Polynomial::zero(&self.ctx);
            for al in 0..r {
                for be in 0..r {
                    let f = &self.bracket[al][be][g];
                    if !f.is_zero() {
                        acc = &acc + &(&(f * &a[al]) * &a[be]);
                    }
                }
            }
            comps[y] = acc.scale(&half());
        }
        GradedVectorField::new(&self.ctx, comps, 1).expect("degrees checked at construction")
    }

    pub fn verify(&self) -> AlgebroidReport {
        let q = self.to_q();
        let sq = q.commutator(&q).expect("same chart");
        AlgebroidReport {
            holds: sq.is_zero(),
            anchor_residual: residual(&sq, &self.base),
            bracket_residual: residual(&sq, &self.fiber),
            q,
        }
    }
}

#[derive(Clone, Debug)]
pub struct AlgebroidReport {
    pub holds: bool,
    pub q: GradedVectorField,
    /// Components of `[Q, Q]` along base coordinates: failure of the anchor to
    /// intertwine brackets.
    pub anchor_residual: Vec<(String, Polynomial)>,
    /// Components along fiber coordinates: failure of Jacobi.
    pub bracket_residual: Vec<(String, Polynomial)>,
}

/// Arity of a monomial: the total number of coordinate factors.
fn arity(m: &[u32]) -> usize {
    m.iter().map(|&e| e as usize).sum()
}

/// A degree-1 field split into components of fixed polynomial arity; the
/// arity-`m` part encodes the multibracket `ℓ_m`.
#[derive(Clone, Debug)]
pub struct LInfinityTruncation {
    ctx: GradingContext,
    parts: BTreeMap<usize, GradedVectorField>,
}

impl LInfinityTruncation {
    pub fn new(ctx: &GradingContext, parts: Vec<(usize, GradedVectorField)>) -> Result<Self> {
        let mut map: BTreeMap<usize, GradedVectorField> = BTreeMap::new();
        for (m, q) in parts {
            if !q.context().same(ctx) {
                return Err(Error::ContextMismatch);
            }
            if q.degree() != 1 && !q.is_zero() {
                return Err(Error::DegreeMismatch(format!(
                    "the arity-{m} part has degree {}, expected 1",
                    q.degree()
                )));
            }
            for c in q.components() {
                if let Some((mono, _)) = c.terms().find(|(mono, _)| arity(mono) != m) {
                    return Err(Error::DegreeMismatch(format!(
                        "the arity-{m} part has a term of arity {}",
                        arity(mono)
                    )));
                }
            }
            let q = GradedVectorField::new(ctx, q.components().to_vec(), 1)?;
            let merged = match map.remove(&m) {
                Some(prev) => prev.add(&q)?,
                None => q,
            };
            map.insert(m, merged);
        }
        Ok(LInfinityTruncation {
            ctx: ctx.clone(),
            parts: map,
        })
    }

    /// Splits a degree-1 field by arity.
    pub fn from_field(q: &GradedVectorField) -> Result<Self> {
        let ctx = q.context();
        let mut arities: Vec<usize> = q
            .components()
            .iter()
            .flat_map(|c| c.terms().map(|(m, _)| arity(m)))
            .collect();
        arities.sort_unstable();
        arities.dedup();
        let parts = arities
            .into_iter()
            .map(|a| {
                let comps = q
                    .components()
                    .iter()
                    .map(|c| c.filter_terms(|m| arity(m) == a))
                    .collect();
                Ok((a, GradedVectorField::new(ctx, comps, q.degree())?))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ctx, parts)
    }

    pub fn context(&self) -> &GradingContext {
        &self.ctx
    }

    pub fn part(&self, m: usize) -> Option<&GradedVectorField> {
        self.parts.get(&m)
    }

    pub fn max_arity(&self) -> usize {
        self.parts.keys().next_back().copied().unwrap_or(0)
    }

    pub fn to_q(&self) -> GradedVectorField {
        let mut acc = GradedVectorField::zero(&self.ctx, 1);
        for q in self.parts.values() {
            acc = acc.add(q).expect("all parts have degree 1");
        }
        acc
    }

    /// `[Q, Q]` split by arity; the arity-`m` piece is the `m`-th generalized
    /// Jacobi identity.
    pub fn verify(&self) -> LInfinityReport {
        let q = self.to_q();
        let sq = q.commutator(&q).expect("same chart");
        let mut by_arity: BTreeMap<usize, Vec<Polynomial>> = BTreeMap::new();
        for (i, c) in sq.components().iter().enumerate() {
            for (m, coef) in c.terms() {
                let entry = by_arity
                    .entry(arity(m))
                    .or_insert_with(|| vec![Polynomial::zero(&self.ctx); self.ctx.len()]);
                entry[i] = &entry[i] + &Polynomial::term(&self.ctx, m.clone(), coef.clone());
            }
        }
        LInfinityReport {
            holds: by_arity.is_empty(),
            violated_arities: by_arity.keys().copied().collect(),
            residuals: by_arity,
            q,
        }
    }
}

#[derive(Clone, Debug)]
pub struct LInfinityReport {
    pub holds: bool,
    pub q: GradedVectorField,
    pub violated_arities: Vec<usize>,
    /// Components of `[Q, Q]` per arity, indexed by coordinate.
    pub residuals: BTreeMap<usize, Vec<Polynomial>>,
}

/// A bivector on a chart of degree-0 coordinates.
#[derive(Clone, Debug)]
pub struct PoissonStructure {
    ctx: GradingContext,
    pi: PolyMatrix,
}

/// `T*[1]M` with its Darboux form and the Hamiltonian `Θ = ½ π^{ij} p_i p_j`.
#[derive(Clone, Debug)]
pub struct CotangentModel {
    pub omega: SymplecticForm,
    pub theta: Polynomial,
    /// Indices of the base coordinates in the shifted chart.
    pub base: Vec<usize>,
    /// Indices of the momenta, aligned with `base`.
    pub momenta: Vec<usize>,
}

pub fn momentum_name(name: &str) -> String {
    format!("p_{name}")
}

impl PoissonStructure {
    pub fn new(ctx: &GradingContext, pi: PolyMatrix) -> Result<Self> {
        let n = ctx.len();
        require_degree(ctx, &(0..n).collect::<Vec<_>>(), 0, "Poisson")?;
        if pi.len() != n || pi.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidStructure(format!("bivector must be {n}x{n}")));
        }
        for i in 0..n {
            for j in 0..n {
                if !pi[i][j].context().same(ctx) {
                    return Err(Error::ContextMismatch);
                }
                if pi[i][j] != -&pi[j][i] {
                    return Err(Error::NotAntisymmetric(format!(
                        "pi({}, {})",
                        ctx.name(i),
                        ctx.name(j)
                    )));
                }
            }
        }
        Ok(PoissonStructure { ctx: ctx.clone(), pi })
    }

    pub fn context(&self) -> &GradingContext {
        &self.ctx
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.pi
    }

    /// `{f, g} = Σ π^{ij} ∂_i f ∂_j g`.
    pub fn bracket(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
        if !f.context().same(&self.ctx) || !g.context().same(&self.ctx) {
            return Err(Error::ContextMismatch);
        }
        let n = self.ctx.len();
        let df: Vec<Polynomial> = (0..n).map(|i| f.partial(i)).collect();
        let dg: Vec<Polynomial> = (0..n).map(|i| g.partial(i)).collect();
        let mut acc = Polynomial::zero(&self.ctx);
        for i in 0..n {
            for j in 0..n {
                if !self.pi[i][j].is_zero() && !df[i].is_zero() && !dg[j].is_zero() {
                    acc = &acc + &(&(&self.pi[i][j] * &df[i]) * &dg[j]);
                }
            }
        }
        Ok(acc)
    }

    pub fn cotangent_model(&self) -> Result<CotangentModel> {
        let n = self.ctx.len();
        let mut specs: Vec<(String, i64)> = self.ctx.names().iter().map(|s| (s.clone(), 0)).collect();
        specs.extend(self.ctx.names().iter().map(|s| (momentum_name(s), 1)));
        let chart = GradingContext::new(&specs)?;
        let dc = DoubledContext::new(&chart);
        let mut w = Polynomial::zero(dc.doubled());
        for i in 0..n {
            w = &w + &(&dc.d_generator(n + i) * &dc.d_generator(i));
        }
        let omega = SymplecticForm::new(&dc, w)?;
        let images: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(&chart, i)).collect();
        let mut theta = Polynomial::zero(&chart);
        for i in 0..n {
            for j in 0..n {
                if self.pi[i][j].is_zero() {
                    continue;
                }
                let coef = self.pi[i][j].compose(&chart, &images);
                let pp = &Polynomial::var(&chart, n + i) * &Polynomial::var(&chart, n + j);
                theta = &theta + &(&coef * &pp);
            }
        }
        Ok(CotangentModel {
            omega,
            theta: theta.scale(&half()),
            base: (0..n).collect(),
            momenta: (n..2 * n).collect(),
        })
    }

    /// Decides the Jacobi identity through `{Θ, Θ} = 0`.
    pub fn verify(&self) -> Result<MasterReport> {
        let model = self.cotangent_model()?;
        model.omega.check_master_equation(&model.theta)
    }
}
