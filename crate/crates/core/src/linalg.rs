//! Matrices over exact rationals and over graded polynomials.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::graded::{GradingContext, Polynomial, Rational};

pub type PolyMatrix = Vec<Vec<Polynomial>>;
pub type RatMatrix = Vec<Vec<Rational>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut RatMatrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let sub = &f * &m[r][j];
                    m[i][j] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &RatMatrix) -> usize {
    let mut w = m.clone();
    rref(&mut w).len()
}

pub fn invert(m: &RatMatrix) -> Option<RatMatrix> {
    let n = m.len();
    let mut aug: RatMatrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Basis of `{v : m v = 0}`.
pub fn null_space(m: &RatMatrix, cols: usize) -> Vec<Vec<Rational>> {
    let mut w = m.clone();
    let pivots = rref(&mut w);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -w[r][f].clone();
            }
            v
        })
        .collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn to_poly(ctx: &GradingContext, m: &RatMatrix) -> PolyMatrix {
    m.iter()
        .map(|r| r.iter().map(|c| Polynomial::constant(ctx, c.clone())).collect())
        .collect()
}

pub fn constant_part(m: &PolyMatrix) -> RatMatrix {
    m.iter()
        .map(|r| r.iter().map(Polynomial::constant_term).collect())
        .collect()
}

pub fn identity(ctx: &GradingContext, n: usize) -> PolyMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Polynomial::one(ctx) } else { Polynomial::zero(ctx) })
                .collect()
        })
        .collect()
}

pub fn mul(ctx: &GradingContext, a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![Polynomial::zero(ctx); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[l][j].is_zero() {
                    out[i][j] = &out[i][j] + &(&a[i][l] * &b[l][j]);
                }
            }
        }
    }
    out
}

pub fn add(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
        .collect()
}

pub fn sub(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect())
        .collect()
}

pub fn neg(a: &PolyMatrix) -> PolyMatrix {
    a.iter().map(|r| r.iter().map(|x| -x).collect()).collect()
}

pub fn scale(a: &PolyMatrix, s: &Rational) -> PolyMatrix {
    a.iter().map(|r| r.iter().map(|x| x.scale(s)).collect()).collect()
}

pub fn is_zero(a: &PolyMatrix) -> bool {
    a.iter().all(|r| r.iter().all(Polynomial::is_zero))
}

pub fn is_identity(a: &PolyMatrix) -> bool {
    a.iter().enumerate().all(|(i, r)| {
        r.iter().enumerate().all(|(j, x)| {
            if i == j {
                x.as_constant().is_some_and(|c| c.is_one())
            } else {
                x.is_zero()
            }
        })
    })
}

/// Determinant by cofactor expansion with memoisation on the column set.
///
/// Only meaningful for entries that commute, i.e. even polynomials.
pub fn determinant(ctx: &GradingContext, m: &PolyMatrix, rows: &[usize], cols: &[usize]) -> Polynomial {
    fn go(
        ctx: &GradingContext,
        m: &PolyMatrix,
        rows: &[usize],
        cols: &[usize],
        r: usize,
        mask: u64,
        memo: &mut HashMap<u64, Polynomial>,
    ) -> Polynomial {
        if r == rows.len() {
            return Polynomial::one(ctx);
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let mut acc = Polynomial::zero(ctx);
        let mut sign = true;
        for (k, &c) in cols.iter().enumerate() {
            if mask & (1 << k) != 0 {
                continue;
            }
            let entry = &m[rows[r]][c];
            if !entry.is_zero() {
                let minor = go(ctx, m, rows, cols, r + 1, mask | (1 << k), memo);
                let t = entry * &minor;
                acc = if sign { &acc + &t } else { &acc - &t };
            }
            sign = !sign;
        }
        memo.insert(mask, acc.clone());
        acc
    }
    assert!(cols.len() <= 63, "matrix too large for cofactor expansion");
    let mut memo = HashMap::new();
    go(ctx, m, rows, cols, 0, 0, &mut memo)
}

/// Adjugate and determinant of a matrix with commuting entries.
pub fn adjugate(ctx: &GradingContext, m: &PolyMatrix) -> (PolyMatrix, Polynomial) {
    let n = m.len();
    let all: Vec<usize> = (0..n).collect();
    let det = determinant(ctx, m, &all, &all);
    let mut adj = vec![vec![Polynomial::zero(ctx); n]; n];
    for i in 0..n {
        for j in 0..n {
            let rows: Vec<usize> = all.iter().copied().filter(|&r| r != i).collect();
            let cols: Vec<usize> = all.iter().copied().filter(|&c| c != j).collect();
            let minor = determinant(ctx, m, &rows, &cols);
            adj[j][i] = if (i + j) % 2 == 0 { minor } else { -&minor };
        }
    }
    (adj, det)
}
