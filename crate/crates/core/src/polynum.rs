//! Poly-Bernoulli and poly-Cauchy numbers with level 2, plus the classical
//! Bernoulli, poly-Bernoulli and poly-Cauchy numbers they generalize.
//!
//! Level-2 poly-Bernoulli numbers have the generating function
//! `Li_{2,k}(2 sin(x/2)) / (2 sin(x/2)) = sum B_n^(k) x^n / n!` and vanish at
//! odd index, so everything here is indexed by the half index `n` of
//! `B_{2n}^(k)`. Four independent routes compute them:
//!
//! 1. [`pb2_explicit`]: level-2 Stirling numbers of the second kind (canonical);
//! 2. [`pb2_multinomial`]: sums over compositions, no Stirling numbers;
//! 3. [`pb2_gf`]: expansion of the generating function;
//! 4. [`pb2_iterated_gf`]: the iterated-integral form of the generating function.

use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{Pow, Zero};

use crate::arith::{binomial_u, factorial_u, int_pow_rat, multinomial, sign, BigInt, Rat};
use crate::error::{Error, Result};
use crate::series::{
    bi_add, bi_div, bi_outer, gen_atanh, gen_cos, gen_cos_scaled, gen_cosh_scaled, gen_li2k,
    gen_two_sin_half, ps_compose, ps_div, ps_integrate, ps_mul, ps_sub, BiSeries, PSeries,
};
use crate::stirling::{Kind, StirlingTable};

/// Largest half index accepted by [`pb2_multinomial`].
pub const MULTINOMIAL_BOUND: usize = 8;

/// Index of a level-2 poly-Bernoulli (or poly-Cauchy) value `B_{2n}^(k)`.
/// Odd subscripts are identically zero and are not representable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pb2Index {
    pub n: usize,
    pub k: i64,
}

impl Pb2Index {
    /// From the actual subscript `2n`. Odd subscripts are rejected.
    pub fn from_subscript(subscript: usize, k: i64) -> Result<Self> {
        if subscript % 2 == 1 {
            return Err(Error::Domain(format!(
                "level-2 numbers vanish at odd index; subscript {subscript} is odd"
            )));
        }
        Ok(Pb2Index { n: subscript / 2, k })
    }

    pub fn subscript(&self) -> usize {
        2 * self.n
    }
}

/// Dense run of exact values; `values[i]` belongs to index `origin + i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatSequence {
    pub origin: usize,
    pub values: Vec<Rat>,
}

impl RatSequence {
    pub fn get(&self, index: usize) -> Option<&Rat> {
        index.checked_sub(self.origin).and_then(|i| self.values.get(i))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

fn level2(kind: Kind) -> Arc<StirlingTable> {
    StirlingTable::shared(kind, 2).expect("level 2 is valid")
}

fn classic(kind: Kind) -> Arc<StirlingTable> {
    StirlingTable::shared(kind, 1).expect("level 1 is valid")
}

fn fact(n: usize) -> Rat {
    Rat::from_int(factorial_u(n))
}

fn need_positive(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("relation needs n >= 1".into()));
    }
    Ok(())
}

/// Bernoulli number `B_n` with `B_1 = -1/2`, from `x / (e^x - 1)`.
pub fn bernoulli(n: usize) -> Rat {
    static CACHE: OnceLock<RwLock<Vec<Rat>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(vec![Rat::one()]));
    if let Some(b) = cache.read().expect("bernoulli cache poisoned").get(n) {
        return b.clone();
    }
    let mut cache = cache.write().expect("bernoulli cache poisoned");
    while cache.len() <= n {
        let m = cache.len();
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        let s: Rat = cache
            .iter()
            .enumerate()
            .map(|(j, b)| Rat::from_int(binomial_u(m + 1, j)) * b)
            .sum();
        cache.push(-s / Rat::from_int(BigInt::from(m + 1)));
    }
    cache[n].clone()
}

/// Classical poly-Bernoulli number `B_n^(k) = sum_m S(n,m) (-1)^{n-m} m! / (m+1)^k`.
pub fn poly_bernoulli_classic(n: usize, k: i64) -> Rat {
    let s2 = classic(Kind::Second);
    (0..=n)
        .map(|m| Rat::from_int(sign(n - m) * s2.get(n, m) * factorial_u(m)) * int_pow_rat(m as i64 + 1, -k))
        .sum()
}

/// Classical poly-Cauchy number `c_n^(k) = sum_m (-1)^{n-m} c(n,m) / (m+1)^k`.
pub fn poly_cauchy_classic(n: usize, k: i64) -> Rat {
    let s1 = classic(Kind::First);
    (0..=n)
        .map(|m| Rat::from_int(sign(n - m) * s1.get(n, m)) * int_pow_rat(m as i64 + 1, -k))
        .sum()
}

/// `c_n^(k) = sum_{m,l} (-1)^{n-m} / m! c(n,m) c(m,l) B_l^(k)`.
pub fn classic_cauchy_from_bernoulli(n: usize, k: i64) -> Rat {
    let s1 = classic(Kind::First);
    let mut acc = Rat::zero();
    for m in 1..=n {
        for l in 1..=m {
            let w = Rat::from_int(sign(n - m) * s1.get(n, m) * s1.get(m, l)) / fact(m);
            acc += w * poly_bernoulli_classic(l, k);
        }
    }
    acc
}

/// `B_n^(k) = sum_{m,l} (-1)^{n-m} m! S(n,m) S(m,l) c_l^(k)`.
pub fn classic_bernoulli_from_cauchy(n: usize, k: i64) -> Rat {
    let s2 = classic(Kind::Second);
    let mut acc = Rat::zero();
    for m in 1..=n {
        for l in 1..=m {
            let w = sign(n - m) * factorial_u(m) * s2.get(n, m) * s2.get(m, l);
            acc += Rat::from_int(w) * poly_cauchy_classic(l, k);
        }
    }
    acc
}

/// `(1/n!) sum_m c(n,m) B_m^(k)`, equal to `1/(n+1)^k`.
pub fn classic_b_sum(n: usize, k: i64) -> Rat {
    let s1 = classic(Kind::First);
    let s: Rat = (0..=n)
        .map(|m| Rat::from_int(s1.get(n, m)) * poly_bernoulli_classic(m, k))
        .sum();
    s / fact(n)
}

/// `sum_m S(n,m) c_m^(k)`, equal to `1/(n+1)^k`.
pub fn classic_c_sum(n: usize, k: i64) -> Rat {
    let s2 = classic(Kind::Second);
    (0..=n)
        .map(|m| Rat::from_int(s2.get(n, m)) * poly_cauchy_classic(m, k))
        .sum()
}

/// Integer weights `w_m = S_2(n,m) (-1)^{n-m} (2m)!` with
/// `B_{2n}^(k) = sum_m w_m / (2m+1)^k`.
pub fn pb2_coefficients(n: usize) -> Vec<BigInt> {
    let s2 = level2(Kind::Second);
    (0..=n)
        .map(|m| sign(n - m) * s2.get(n, m) * factorial_u(2 * m))
        .collect()
}

/// `B_{2n}^(k)` from level-2 Stirling numbers of the second kind.
pub fn pb2_explicit(n: usize, k: i64) -> Rat {
    pb2_coefficients(n)
        .into_iter()
        .enumerate()
        .map(|(m, w)| Rat::from_int(w) * int_pow_rat(2 * m as i64 + 1, -k))
        .sum()
}

/// Calls `f` with every composition of `total` into `parts` nonnegative parts.
fn for_each_composition(total: usize, parts: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(left: usize, slots: usize, buf: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if slots == 0 {
            if left == 0 {
                f(buf);
            }
            return;
        }
        if slots == 1 {
            buf.push(left);
            f(buf);
            buf.pop();
            return;
        }
        for v in 0..=left {
            buf.push(v);
            rec(left - v, slots - 1, buf, f);
            buf.pop();
        }
    }
    rec(total, parts, &mut Vec::with_capacity(parts), f);
}

/// `B_{2n}^(k)` as a sum over compositions `i_1 + ... + i_{2m} = n - m` of
/// `(-1/4)^{n-m} multinomial(2i_1+1, ..., 2i_{2m}+1) / (2m+1)^k`.
pub fn pb2_multinomial(n: usize, k: i64) -> Result<Rat> {
    if n > MULTINOMIAL_BOUND {
        return Err(Error::OracleBound(format!(
            "composition sum limited to n <= {MULTINOMIAL_BOUND}, got {n}"
        )));
    }
    let mut total = Rat::zero();
    for m in 0..=n {
        let mut inner = BigInt::zero();
        for_each_composition(n - m, 2 * m, &mut |parts| {
            let odd: Vec<i64> = parts.iter().map(|&i| 2 * i as i64 + 1).collect();
            inner += multinomial(&odd).expect("parts are positive");
        });
        if inner.is_zero() {
            continue;
        }
        let quarter = Rat::from_int(sign(n - m)) * int_pow_rat(4, -((n - m) as i64));
        total += Rat::from_int(inner) * quarter * int_pow_rat(2 * m as i64 + 1, -k);
    }
    Ok(total)
}

/// Reads `B_{2n} = (2n)! [x^{2n}]` off an even exponential generating
/// function, requiring the odd coefficients to vanish.
fn even_egf_values(gf: &PSeries, nmax: usize) -> Result<RatSequence> {
    let top = 2 * nmax;
    if gf.order() < top {
        return Err(Error::Inconsistency(format!(
            "generating function exact only through x^{}, need x^{top}",
            gf.order()
        )));
    }
    if let Some(i) = (0..=top).find(|&i| i % 2 == 1 && !gf.coeff(i).is_zero()) {
        return Err(Error::Inconsistency(format!(
            "odd coefficient x^{i} = {} is nonzero",
            gf.coeff(i)
        )));
    }
    let values = (0..=nmax).map(|n| gf.coeff(2 * n) * fact(2 * n)).collect();
    Ok(RatSequence { origin: 0, values })
}

/// `B_0^(k), B_2^(k), ..., B_{2 nmax}^(k)` from `Li_{2,k}(2 sin(x/2)) / (2 sin(x/2))`.
pub fn pb2_gf(k: i64, nmax: usize) -> Result<RatSequence> {
    let order = 2 * nmax + 1;
    let z = gen_two_sin_half(order);
    let li = ps_compose(&gen_li2k(k, order), &z)?;
    even_egf_values(&ps_div(&li, &z)?, nmax)
}

/// The same values from the iterated-integral form, `k >= 1`: start from
/// `atanh(2 sin(x/2))`, apply `k - 1` times `F -> int_0^x cos(t/2) / (2 sin(t/2)) F dt`,
/// then divide by `2 sin(x/2)`.
pub fn pb2_iterated_gf(k: i64, nmax: usize) -> Result<RatSequence> {
    if k < 1 {
        return Err(Error::Domain(format!("iterated-integral form needs k >= 1, got {k}")));
    }
    let order = 2 * nmax + 1;
    let z = gen_two_sin_half(order);
    let cos_half = gen_cos_scaled(&Rat::new(1, 2)?, order);
    let mut f = ps_compose(&gen_atanh(order), &z)?;
    for _ in 1..k {
        // cot factor has a simple pole; f has valuation >= 1, so divide last
        let integrand = ps_div(&ps_mul(&cos_half, &f), &z)?;
        f = ps_integrate(&integrand);
    }
    even_egf_values(&ps_div(&f, &z)?, nmax)
}

/// `B_{2n}^(k-1)` from the level-`k` values and classical Bernoulli numbers.
pub fn pb2_step_k(n: usize, k: i64) -> Rat {
    let mut acc = Rat::zero();
    for m in 0..n {
        let d = n - m;
        let weight = (sign(d) - sign(d) * BigInt::from(4).pow(d as u32)) * 4;
        acc += Rat::from_int(weight) * bernoulli(2 * d) * pb2_explicit(m + 1, k)
            / (fact(2 * d) * fact(2 * m + 1));
    }
    pb2_explicit(n, k) + fact(2 * n) * acc
}

/// Level-2 poly-Cauchy number `C_{2n}^(k) = sum_m c_2(n,m) (-4)^{n-m} / (2m+1)^k`.
pub fn pc2_explicit(n: usize, k: i64) -> Rat {
    let s1 = level2(Kind::First);
    (0..=n)
        .map(|m| {
            let w = sign(n - m) * s1.get(n, m) * BigInt::from(4).pow((n - m) as u32);
            Rat::from_int(w) * int_pow_rat(2 * m as i64 + 1, -k)
        })
        .sum()
}

/// `C_{2n}^(k) = sum_{m,l} (-4)^{n-m} / (2m)! c_2(n,m) c_2(m,l) B_{2l}^(k)`.
pub fn pc2_from_pb2(n: usize, k: i64) -> Result<Rat> {
    need_positive(n)?;
    let s1 = level2(Kind::First);
    let pb: Vec<Rat> = (0..=n).map(|l| pb2_explicit(l, k)).collect();
    let mut acc = Rat::zero();
    for m in 1..=n {
        let outer = Rat::from_int(sign(n - m) * BigInt::from(4).pow((n - m) as u32) * s1.get(n, m))
            / fact(2 * m);
        let inner: Rat = (1..=m).map(|l| Rat::from_int(s1.get(m, l)) * &pb[l]).sum();
        acc += outer * inner;
    }
    Ok(acc)
}

/// `B_{2n}^(k) = sum_{m,l} (-1)^{n-m} 4^{m-l} (2m)! S_2(n,m) S_2(m,l) C_{2l}^(k)`.
pub fn pb2_from_pc2(n: usize, k: i64) -> Result<Rat> {
    need_positive(n)?;
    let s2 = level2(Kind::Second);
    let pc: Vec<Rat> = (0..=n).map(|l| pc2_explicit(l, k)).collect();
    let mut acc = Rat::zero();
    for m in 1..=n {
        let outer = sign(n - m) * factorial_u(2 * m) * s2.get(n, m);
        let inner: Rat = (1..=m)
            .map(|l| Rat::from_int(BigInt::from(4).pow((m - l) as u32) * s2.get(m, l)) * &pc[l])
            .sum();
        acc += Rat::from_int(outer) * inner;
    }
    Ok(acc)
}

/// `(1/(2n)!) sum_m c_2(n,m) B_{2m}^(k)`, equal to `1/(2n+1)^k`.
pub fn identity_b_sum(n: usize, k: i64) -> Result<Rat> {
    need_positive(n)?;
    let s1 = level2(Kind::First);
    let s: Rat = (0..=n)
        .map(|m| Rat::from_int(s1.get(n, m)) * pb2_explicit(m, k))
        .sum();
    Ok(s / fact(2 * n))
}

/// `sum_m S_2(n,m) 4^{n-m} C_{2m}^(k)`, equal to `1/(2n+1)^k`.
pub fn identity_c_sum(n: usize, k: i64) -> Result<Rat> {
    need_positive(n)?;
    let s2 = level2(Kind::Second);
    Ok((0..=n)
        .map(|m| Rat::from_int(s2.get(n, m) * BigInt::from(4).pow((n - m) as u32)) * pc2_explicit(m, k))
        .sum())
}

/// `sum_{n,k} B_{2n}^(-2k) x^{2n}/(2n)! y^{2k}/(2k)!` through `x^{2 nx} y^{2 ny}`.
pub fn doublesum_lhs(nx: usize, ny: usize) -> BiSeries {
    BiSeries::from_fn(2 * nx, 2 * ny, |i, j| {
        if i % 2 == 1 || j % 2 == 1 {
            return Rat::zero();
        }
        let (n, k) = (i / 2, j / 2);
        pb2_explicit(n, -2 * k as i64) / (fact(i) * fact(j))
    })
}

/// `cosh y (2 cos x - 1) / (4 (1 - cos x)(1 - cosh 2y) + (2 cos x - 1)^2)`
/// through `x^{2 nx} y^{2 ny}`.
///
/// Summing `(2 sin(x/2))^{2m} cosh((2m+1) y)` over `m` with
/// `u = (2 sin(x/2))^2 = 2 (1 - cos x)` gives `cosh y (1 - u) / (1 - 2u cosh 2y + u^2)`.
pub fn doublesum_rhs(nx: usize, ny: usize) -> Result<BiSeries> {
    doublesum_closed_form(nx, ny, 2)
}

/// The same closed form with `u = 1 - cos x`, i.e.
/// `cos x cosh y / (2 (1 - cos x)(1 - cosh 2y) + cos^2 x)`. It drops the
/// factor 2 in `u` and disagrees with the double sum from the `x^2` term on
/// (`1/2` against `1`); kept as a negative control.
pub fn doublesum_rhs_unscaled(nx: usize, ny: usize) -> Result<BiSeries> {
    doublesum_closed_form(nx, ny, 1)
}

/// `cosh y (1 - u) / (1 - 2u cosh 2y + u^2)` with `u = c (1 - cos x)`, written as
/// `cosh y (1 - u) / (2u (1 - cosh 2y) + (1 - u)^2)`.
fn doublesum_closed_form(nx: usize, ny: usize, c: i64) -> Result<BiSeries> {
    let (ox, oy) = (2 * nx, 2 * ny);
    let one_x = PSeries::one(ox);
    let one_y = PSeries::one(oy);
    let u = ps_sub(&one_x, &gen_cos(ox)).scale(&Rat::from(c));
    let one_minus_u = ps_sub(&one_x, &u);
    let numer = bi_outer(&one_minus_u, &gen_cosh_scaled(1, oy));
    let cross = bi_outer(&u.scale(&Rat::from(2)), &ps_sub(&one_y, &gen_cosh_scaled(2, oy)));
    let denom = bi_add(&cross, &bi_outer(&ps_mul(&one_minus_u, &one_minus_u), &one_y));
    bi_div(&numer, &denom)
}

/// Compares both sides of the double summation formula exactly.
pub fn doublesum_check(nx: usize, ny: usize) -> Result<bool> {
    Ok(doublesum_lhs(nx, ny) == doublesum_rhs(nx, ny)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityReport {
    pub nmax: usize,
    pub kmax: usize,
    /// `B_n^(-k) = B_k^(-n)` for all `1 <= n <= nmax`, `1 <= k <= kmax`.
    pub classical_holds: bool,
    pub classical_first_failure: Option<(usize, usize)>,
    /// First `(n, k)` with `B_{2n}^(-2k) != B_{2k}^(-2n)`, with both values.
    pub level2_counterexample: Option<(usize, usize, Rat, Rat)>,
}

/// Checks classical duality and reports (without asserting) whether the
/// level-2 analogue holds on the grid.
pub fn duality_probe(nmax: usize, kmax: usize) -> DualityReport {
    let mut classical_first_failure = None;
    let mut level2_counterexample = None;
    'outer: for n in 1..=nmax {
        for k in 1..=kmax {
            if classical_first_failure.is_none()
                && poly_bernoulli_classic(n, -(k as i64)) != poly_bernoulli_classic(k, -(n as i64))
            {
                classical_first_failure = Some((n, k));
            }
            if level2_counterexample.is_none() {
                let a = pb2_explicit(n, -2 * k as i64);
                let b = pb2_explicit(k, -2 * n as i64);
                if a != b {
                    level2_counterexample = Some((n, k, a, b));
                }
            }
            if classical_first_failure.is_some() && level2_counterexample.is_some() {
                break 'outer;
            }
        }
    }
    DualityReport {
        nmax,
        kmax,
        classical_holds: classical_first_failure.is_none(),
        classical_first_failure,
        level2_counterexample,
    }
}
