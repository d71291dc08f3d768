//! Graded commutative polynomial algebras on a coordinate chart.
//!
//! A [`GradingContext`] is an ordered list of named coordinates with integer
//! degrees. Polynomials are sparse maps from exponent vectors to exact
//! rationals. Monomials are always stored in chart order; the Koszul sign
//! produced by reordering is folded into the coefficient, so two polynomials
//! are equal exactly when their term maps are equal.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, PartialEq, Eq)]
struct Chart {
    names: Vec<String>,
    degrees: Vec<i64>,
}

/// An ordered chart of named coordinates with integer degrees.
///
/// Cloning is cheap. Two contexts compare equal when they declare the same
/// names with the same degrees in the same order.
#[derive(Clone)]
pub struct GradingContext(Arc<Chart>);

impl GradingContext {
    pub fn new<S: AsRef<str>>(specs: &[(S, i64)]) -> Result<Self> {
        let mut names: Vec<String> = Vec::with_capacity(specs.len());
        let mut degrees = Vec::with_capacity(specs.len());
        for (name, degree) in specs {
            let name = name.as_ref();
            if names.iter().any(|n| n == name) {
                return Err(Error::DuplicateCoordinate(name.to_string()));
            }
            names.push(name.to_string());
            degrees.push(*degree);
        }
        Ok(GradingContext(Arc::new(Chart { names, degrees })))
    }

    pub fn len(&self) -> usize {
        self.0.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.0.degrees[i]
    }

    pub fn degrees(&self) -> &[i64] {
        &self.0.degrees
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.0.degrees[i].rem_euclid(2) == 1
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownCoordinate(name.to_string()))
    }

    pub fn same(&self, other: &GradingContext) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }

    /// Sub-chart keeping the listed coordinates, in chart order.
    pub fn restrict(&self, keep: &[usize]) -> GradingContext {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        GradingContext(Arc::new(Chart {
            names: keep.iter().map(|&i| self.0.names[i].clone()).collect(),
            degrees: keep.iter().map(|&i| self.0.degrees[i]).collect(),
        }))
    }
}

impl PartialEq for GradingContext {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for GradingContext {}

impl fmt::Debug for GradingContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for (n, d) in self.0.names.iter().zip(&self.0.degrees) {
            list.entry(&format_args!("{n}:{d}"));
        }
        list.finish()
    }
}

/// Exponent vector aligned with the chart. Odd coordinates carry exponent 0 or 1.
pub type Monomial = Vec<u32>;

/// Product of two chart-ordered monomials.
///
/// Returns `None` when an odd coordinate would be squared, otherwise the merged
/// monomial and whether the Koszul sign is negative.
pub fn monomial_product(ctx: &GradingContext, a: &[u32], b: &[u32]) -> Option<(bool, Monomial)> {
    let n = ctx.len();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        if ctx.is_odd(i) && a[i] + b[i] > 1 {
            return None;
        }
        out.push(a[i] + b[i]);
    }
    // Each odd generator of `b` moves left past the odd generators of `a`
    // that sit later in the chart.
    let mut odd_in_a_after = 0u32;
    let mut parity = 0u32;
    for i in (0..n).rev() {
        if ctx.is_odd(i) {
            if b[i] == 1 {
                parity += odd_in_a_after;
            }
            odd_in_a_after += a[i];
        }
    }
    Some((parity % 2 == 1, out))
}

pub fn monomial_degree(ctx: &GradingContext, m: &[u32]) -> i64 {
    m.iter()
        .enumerate()
        .map(|(i, &e)| e as i64 * ctx.degree(i))
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Degree {
    Homogeneous(i64),
    Nonhomogeneous,
    Zero,
}

impl Degree {
    pub fn value(&self) -> Option<i64> {
        match self {
            Degree::Homogeneous(d) => Some(*d),
            _ => None,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Homogeneous(d) => write!(f, "{d}"),
            Degree::Nonhomogeneous => f.write_str("nonhomogeneous"),
            Degree::Zero => f.write_str("zero"),
        }
    }
}

/// Exact-rational linear combination of Koszul-normalized monomials.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ctx: GradingContext,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(ctx: &GradingContext) -> Self {
        Polynomial {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: &GradingContext, c: Rational) -> Self {
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(vec![0; ctx.len()], c);
        }
        p
    }

    pub fn one(ctx: &GradingContext) -> Self {
        Self::constant(ctx, Rational::one())
    }

    pub fn var(ctx: &GradingContext, i: usize) -> Self {
        let mut m = vec![0; ctx.len()];
        m[i] = 1;
        Self::term(ctx, m, Rational::one())
    }

    pub fn var_named(ctx: &GradingContext, name: &str) -> Result<Self> {
        Ok(Self::var(ctx, ctx.require(name)?))
    }

    /// A single stored term. Callers must pass a normalized monomial.
    pub fn term(ctx: &GradingContext, m: Monomial, c: Rational) -> Self {
        debug_assert_eq!(m.len(), ctx.len());
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds from raw terms, dropping any monomial that squares an odd coordinate.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(
        ctx: &GradingContext,
        terms: I,
    ) -> Self {
        let mut p = Self::zero(ctx);
        for (m, c) in terms {
            if (0..ctx.len()).any(|i| ctx.is_odd(i) && m[i] > 1) {
                continue;
            }
            p.add_term(m, c);
        }
        p
    }

    pub fn context(&self) -> &GradingContext {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient when the polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&vec![0; self.ctx.len()])
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn coefficient(&self, m: &[u32]) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_ctx(&self, other: &Polynomial) -> Result<()> {
        if self.ctx.same(&other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Rational) -> Polynomial {
        if s.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&-Rational::one())
    }

    /// Koszul-normalized product.
    pub fn multiply(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ctx(other)?;
        let mut out = Polynomial::zero(&self.ctx);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((neg, m)) = monomial_product(&self.ctx, ma, mb) {
                    let c = ca * cb;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ctx);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn degree(&self) -> Degree {
        let mut it = self.terms.keys().map(|m| monomial_degree(&self.ctx, m));
        let Some(first) = it.next() else {
            return Degree::Zero;
        };
        if it.all(|d| d == first) {
            Degree::Homogeneous(first)
        } else {
            Degree::Nonhomogeneous
        }
    }

    /// Degree for homogeneous polynomials; the zero polynomial reports `None`.
    pub fn homogeneous_degree(&self) -> Result<Option<i64>> {
        match self.degree() {
            Degree::Homogeneous(d) => Ok(Some(d)),
            Degree::Zero => Ok(None),
            Degree::Nonhomogeneous => Err(Error::NotHomogeneous),
        }
    }

    /// Splits into homogeneous pieces keyed by degree.
    pub fn homogeneous_parts(&self) -> BTreeMap<i64, Polynomial> {
        let mut parts: BTreeMap<i64, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            parts
                .entry(monomial_degree(&self.ctx, m))
                .or_insert_with(|| Polynomial::zero(&self.ctx))
                .add_term(m.clone(), c.clone());
        }
        parts
    }

    /// Left partial derivative with respect to coordinate `i`.
    pub fn partial(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.ctx);
        let odd_i = self.ctx.is_odd(i);
        for (m, c) in &self.terms {
            let e = m[i];
            if e == 0 {
                continue;
            }
            // Hopping x^i over the odd generators that precede it.
            let neg = odd_i && (0..i).filter(|&j| self.ctx.is_odd(j) && m[j] == 1).count() % 2 == 1;
            let mut m2 = m.clone();
            m2[i] -= 1;
            let c2 = c * rat(e as i64);
            out.add_term(m2, if neg { -c2 } else { c2 });
        }
        out
    }

    pub fn partial_named(&self, name: &str) -> Result<Polynomial> {
        Ok(self.partial(self.ctx.require(name)?))
    }

    /// Algebra homomorphism into `target`, sending coordinate `i` to `images[i]`.
    ///
    /// Images must have the parity of the coordinate they replace; this is not
    /// checked here (see [`Polynomial::substitute`] for the checked version).
    pub fn compose(&self, target: &GradingContext, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.ctx.len());
        let mut out = Polynomial::zero(target);
        let mut cache: BTreeMap<(usize, u32), Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut acc = Polynomial::constant(target, c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = cache
                    .entry((i, e))
                    .or_insert_with(|| images[i].pow(e))
                    .clone();
                acc = &acc * &pw;
                if acc.is_zero() {
                    break;
                }
            }
            for (m2, c2) in acc.terms {
                out.add_term(m2, c2);
            }
        }
        out
    }

    /// Simultaneous degree-preserving substitution within the same chart.
    pub fn substitute(&self, assignment: &[(usize, Polynomial)]) -> Result<Polynomial> {
        let mut images: Vec<Polynomial> =
            (0..self.ctx.len()).map(|i| Polynomial::var(&self.ctx, i)).collect();
        for (i, q) in assignment {
            self.check_ctx(q)?;
            if let Degree::Homogeneous(d) = q.degree() {
                if d != self.ctx.degree(*i) {
                    return Err(Error::DegreeMismatch(format!(
                        "cannot substitute a polynomial of degree {d} for `{}` of degree {}",
                        self.ctx.name(*i),
                        self.ctx.degree(*i)
                    )));
                }
            } else if q.degree() == Degree::Nonhomogeneous {
                return Err(Error::DegreeMismatch(format!(
                    "substitution for `{}` is not homogeneous",
                    self.ctx.name(*i)
                )));
            }
            images[*i] = q.clone();
        }
        Ok(self.compose(&self.ctx, &images))
    }

    pub fn substitute_named(&self, assignment: &[(&str, Polynomial)]) -> Result<Polynomial> {
        let idx = assignment
            .iter()
            .map(|(n, q)| Ok((self.ctx.require(n)?, q.clone())))
            .collect::<Result<Vec<_>>>()?;
        self.substitute(&idx)
    }

    /// Re-expresses the polynomial on another chart by coordinate name.
    /// Coordinates missing from `target` must not occur.
    pub fn transfer(&self, target: &GradingContext) -> Result<Polynomial> {
        let map: Vec<Option<usize>> = (0..self.ctx.len())
            .map(|i| target.index_of(self.ctx.name(i)))
            .collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut m2 = vec![0; target.len()];
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => m2[j] = e,
                    None => return Err(Error::UnknownCoordinate(self.ctx.name(i).to_string())),
                }
            }
            // Reordering odd generators may produce a sign.
            let mut sign_neg = false;
            let odd_positions: Vec<usize> = (0..self.ctx.len())
                .filter(|&i| self.ctx.is_odd(i) && m[i] == 1)
                .map(|i| map[i].unwrap())
                .collect();
            for a in 0..odd_positions.len() {
                for b in a + 1..odd_positions.len() {
                    if odd_positions[a] > odd_positions[b] {
                        sign_neg = !sign_neg;
                    }
                }
            }
            out.add_term(m2, if sign_neg { -c.clone() } else { c.clone() });
        }
        Ok(out)
    }

    /// Drops every term in which one of `coords` occurs (evaluation at zero).
    pub fn set_zero(&self, coords: &[usize]) -> Polynomial {
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| coords.iter().all(|&i| m[i] == 0))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Keeps terms accepted by `keep`.
    pub fn filter_terms<F: Fn(&[u32]) -> bool>(&self, keep: F) -> Polynomial {
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coordinates that occur in some term.
    pub fn support(&self) -> Vec<usize> {
        (0..self.ctx.len())
            .filter(|&i| self.terms.keys().any(|m| m[i] > 0))
            .collect()
    }

    pub fn max_coefficient_bits(&self) -> u64 {
        self.terms
            .values()
            .map(|c| c.numer().abs().bits().max(c.denom().bits()))
            .max()
            .unwrap_or(0)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl std::ops::$tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            /// Panics when the operands live on different charts.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$inner(rhs).expect("polynomials on different charts")
            }
        }
        impl std::ops::$tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$inner(&rhs).expect("polynomials on different charts")
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, multiply);

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

impl std::ops::Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(&self)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::render::render_plain(self))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::render::render_plain(self))
    }
}
