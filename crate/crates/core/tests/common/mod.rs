#![allow(dead_code)]

use std::collections::BTreeMap;

use gman_core::{rat, DoubledContext, GradingContext, Polynomial, Rational, SymplecticForm};
use rand::rngs::StdRng;
use rand::Rng;

pub fn chart(degrees: &[i64]) -> GradingContext {
    let specs: Vec<(String, i64)> = degrees
        .iter()
        .enumerate()
        .map(|(i, &d)| (format!("z{i}"), d))
        .collect();
    GradingContext::new(&specs).unwrap()
}

pub fn random_chart(rng: &mut StdRng, max_len: usize, lo: i64, hi: i64) -> GradingContext {
    let n = rng.gen_range(1..=max_len);
    let degrees: Vec<i64> = (0..n).map(|_| rng.gen_range(lo..=hi)).collect();
    chart(&degrees)
}

/// Random word over the chart's coordinates.
pub fn random_word(rng: &mut StdRng, n: usize, max_len: usize) -> Vec<usize> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rng.gen_range(0..n)).collect()
}

pub fn random_coefficient(rng: &mut StdRng) -> Rational {
    let num = rng.gen_range(-4i64..=4);
    let den = rng.gen_range(1i64..=3);
    Rational::new(num.into(), den.into())
}

/// A polynomial as a list of (coefficient, word); each word is read as an
/// ordered product of coordinates.
pub type WordPoly = Vec<(Rational, Vec<usize>)>;

pub fn random_word_poly(rng: &mut StdRng, n: usize, terms: usize, max_len: usize) -> WordPoly {
    (0..rng.gen_range(0..=terms))
        .map(|_| (random_coefficient(rng), random_word(rng, n, max_len)))
        .collect()
}

/// Sorts a word by bubble sort, flipping the sign whenever two odd letters
/// are swapped; returns `None` if an odd letter repeats.
pub fn normalize_word(ctx: &GradingContext, word: &[usize]) -> Option<(bool, Vec<u32>)> {
    let mut w = word.to_vec();
    let mut neg = false;
    for i in 0..w.len() {
        for j in 0..w.len() - 1 - i {
            if w[j] > w[j + 1] {
                if ctx.is_odd(w[j]) && ctx.is_odd(w[j + 1]) {
                    neg = !neg;
                }
                w.swap(j, j + 1);
            }
        }
    }
    let mut exps = vec![0u32; ctx.len()];
    for &l in &w {
        exps[l] += 1;
        if ctx.is_odd(l) && exps[l] > 1 {
            return None;
        }
    }
    Some((neg, exps))
}

/// Oracle normal form: a map from exponent vectors to coefficients.
pub fn oracle_normal(ctx: &GradingContext, p: &WordPoly) -> BTreeMap<Vec<u32>, Rational> {
    let mut out: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
    for (c, w) in p {
        if let Some((neg, m)) = normalize_word(ctx, w) {
            let e = out.entry(m).or_insert_with(|| rat(0));
            if neg {
                *e -= c;
            } else {
                *e += c;
            }
        }
    }
    out.retain(|_, c| *c != rat(0));
    out
}

pub fn oracle_product(a: &WordPoly, b: &WordPoly) -> WordPoly {
    let mut out = Vec::new();
    for (c1, w1) in a {
        for (c2, w2) in b {
            let mut w = w1.clone();
            w.extend(w2);
            out.push((c1 * c2, w));
        }
    }
    out
}

/// Builds the polynomial with the library's own multiplication.
pub fn build(ctx: &GradingContext, p: &WordPoly) -> Polynomial {
    let mut acc = Polynomial::zero(ctx);
    for (c, w) in p {
        let mut t = Polynomial::constant(ctx, c.clone());
        for &l in w {
            t = &t * &Polynomial::var(ctx, l);
        }
        acc = &acc + &t;
    }
    acc
}

pub fn as_map(p: &Polynomial) -> BTreeMap<Vec<u32>, Rational> {
    p.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

pub fn word_degree(ctx: &GradingContext, w: &[usize]) -> i64 {
    w.iter().map(|&l| ctx.degree(l)).sum()
}

/// A random homogeneous polynomial: random words, keeping those whose
/// degree equals that of the first word.
pub fn random_homogeneous(rng: &mut StdRng, ctx: &GradingContext, terms: usize, max_len: usize) -> (WordPoly, i64) {
    let first = random_word(rng, ctx.len(), max_len);
    let d = word_degree(ctx, &first);
    let mut out = vec![(random_coefficient(rng), first)];
    for _ in 0..terms {
        let w = random_word(rng, ctx.len(), max_len);
        if word_degree(ctx, &w) == d {
            out.push((random_coefficient(rng), w));
        }
    }
    (out, d)
}

/// A random homogeneous polynomial of a prescribed degree, or zero.
pub fn random_of_degree(rng: &mut StdRng, ctx: &GradingContext, degree: i64, tries: usize, max_len: usize) -> Polynomial {
    let mut acc = Polynomial::zero(ctx);
    for _ in 0..tries {
        let w = random_word(rng, ctx.len(), max_len);
        if word_degree(ctx, &w) == degree {
            acc = &acc + &build(ctx, &vec![(random_coefficient(rng), w)]);
        }
    }
    acc
}

pub fn named_chart(prefix: &str, n: usize, degree: i64) -> GradingContext {
    let specs: Vec<(String, i64)> = (1..=n).map(|i| (format!("{prefix}{i}"), degree)).collect();
    GradingContext::new(&specs).unwrap()
}

/// Random antisymmetric bivector on a degree-0 chart, entries of degree ≤ `max_deg`.
pub fn random_bivector(rng: &mut StdRng, ctx: &GradingContext, max_deg: usize, density: f64) -> Vec<Vec<Polynomial>> {
    let n = ctx.len();
    let mut pi = vec![vec![Polynomial::zero(ctx); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            if !rng.gen_bool(density) {
                continue;
            }
            let mut e = Polynomial::zero(ctx);
            for _ in 0..rng.gen_range(1..=2) {
                let w = random_word(rng, n, max_deg);
                e = &e + &build(ctx, &vec![(rat(rng.gen_range(-2..=2)), w)]);
            }
            pi[j][i] = -&e;
            pi[i][j] = e;
        }
    }
    pi
}

/// Σ_l π^{il} ∂_l π^{jk} + cyclic, for every triple.
pub fn poisson_jacobi_oracle(pi: &[Vec<Polynomial>]) -> bool {
    let n = pi.len();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut s = Polynomial::zero(pi[0][0].context());
                for l in 0..n {
                    s = &s + &(&pi[i][l] * &pi[j][k].partial(l));
                    s = &s + &(&pi[j][l] * &pi[k][i].partial(l));
                    s = &s + &(&pi[k][l] * &pi[i][j].partial(l));
                }
                if !s.is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

pub type Table = Vec<Vec<Vec<i64>>>;

/// Antisymmetric in the lower indices, entries in {−1, 0, 1}.
pub fn random_lie_table(rng: &mut StdRng, n: usize) -> Table {
    let mut f = vec![vec![vec![0i64; n]; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                let v = rng.gen_range(-1..=1);
                f[i][j][k] = v;
                f[j][i][k] = -v;
            }
        }
    }
    f
}

/// Σ_m f_ij^m f_mk^l + cyclic = 0.
pub fn lie_jacobi_oracle(f: &Table) -> bool {
    let n = f.len();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut s = 0;
                    for m in 0..n {
                        s += f[i][j][m] * f[m][k][l] + f[j][k][m] * f[m][i][l] + f[k][i][m] * f[m][j][l];
                    }
                    if s != 0 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

pub fn table_to_rational(f: &Table) -> Vec<Vec<Vec<Rational>>> {
    f.iter()
        .map(|a| a.iter().map(|b| b.iter().map(|&c| rat(c)).collect()).collect())
        .collect()
}

/// Pairs `(q_i, p_i)` with `|q_i| + |p_i| = k` and `ω = Σ d(p_i) d(q_i)`.
pub fn darboux(rng: &mut StdRng, k: i64, pairs: usize) -> SymplecticForm {
    let mut specs = Vec::new();
    let qs: Vec<i64> = (0..pairs).map(|_| rng.gen_range(0..=k)).collect();
    for (i, q) in qs.iter().enumerate() {
        specs.push((format!("q{i}"), *q));
    }
    for (i, q) in qs.iter().enumerate() {
        specs.push((format!("p{i}"), k - q));
    }
    let ctx = GradingContext::new(&specs).unwrap();
    let dc = DoubledContext::new(&ctx);
    let mut w = Polynomial::zero(dc.doubled());
    for i in 0..pairs {
        w = &w + &(&dc.d_generator(pairs + i) * &dc.d_generator(i));
    }
    SymplecticForm::new(&dc, w).unwrap()
}
