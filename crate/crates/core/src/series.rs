//! Truncated formal power series with exact rational coefficients.
//!
//! A [`PSeries`] knows the order `N` through which its coefficients are exact.
//! Every operation computes the largest order through which its own result is
//! still exact, so truncation error never leaks into a reported coefficient:
//!
//! * add/sub: `min(Na, Nb)`
//! * mul: `min(Na + vb, Nb + va)` with `va`, `vb` the true valuations
//! * div: `min(Na - vb, Nb - 2 vb + va)` (quotient valuation `va - vb`)
//! * compose: `min(vi (No + 1) - 1, (j0 - 1) vi + Ni)` where `vi` is the inner
//!   valuation and `j0` the lowest nonzero outer exponent `>= 1`
//! * integrate: `N + 1`
//!
//! A series that is zero through its order has valuation `N + 1`.
//! [`BiSeries`] is the rectangular bivariate counterpart.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::{factorial_u, int_pow_rat, sign, BigInt, Rat};
use crate::error::{Error, Result};
use crate::polynum::bernoulli;

/// Default univariate truncation order.
pub const DEFAULT_ORDER: usize = 32;
/// Default bivariate truncation orders.
pub const DEFAULT_BI_ORDER: (usize, usize) = (20, 20);

#[derive(Clone, PartialEq, Eq)]
pub struct PSeries {
    /// Exponent of `coeffs[0]`; everything below is zero.
    val: usize,
    coeffs: Vec<Rat>,
    order: usize,
}

impl PSeries {
    /// Dense series from the coefficients of `x^0 ..= x^{len-1}`.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        let order = coeffs.len() - 1;
        PSeries { val: 0, coeffs, order }.normalized()
    }

    /// `coeffs` hold the exponents `val ..= val + len - 1`.
    pub fn with_valuation(val: usize, coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        let order = val + coeffs.len() - 1;
        PSeries { val, coeffs, order }.normalized()
    }

    /// Builds a series from a coefficient function over `0..=order`.
    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rat) -> Self {
        PSeries::from_coeffs((0..=order).map(f).collect())
    }

    pub fn zero(order: usize) -> Self {
        PSeries { val: order + 1, coeffs: Vec::new(), order }
    }

    pub fn one(order: usize) -> Self {
        PSeries::monomial(Rat::one(), 0, order)
    }

    /// `c x^exp + O(x^{order+1})`.
    pub fn monomial(c: Rat, exp: usize, order: usize) -> Self {
        PSeries::from_fn(order, |i| if i == exp { c.clone() } else { Rat::zero() })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Exponent of the lowest nonzero coefficient, or `order + 1`.
    pub fn valuation(&self) -> usize {
        self.val
    }

    /// Coefficient of `x^i`. Panics beyond the truncation order.
    pub fn coeff(&self, i: usize) -> Rat {
        self.try_coeff(i)
            .unwrap_or_else(|| panic!("x^{i} lies beyond truncation order {}", self.order))
    }

    pub fn try_coeff(&self, i: usize) -> Option<Rat> {
        if i > self.order {
            None
        } else if i < self.val {
            Some(Rat::zero())
        } else {
            Some(self.coeffs[i - self.val].clone())
        }
    }

    /// All coefficients `x^0 ..= x^order`.
    pub fn coefficients(&self) -> Vec<Rat> {
        (0..=self.order).map(|i| self.coeff(i)).collect()
    }

    fn normalized(mut self) -> Self {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        self.coeffs.drain(..lead);
        self.val += lead;
        self
    }

    pub fn truncate(&self, order: usize) -> Self {
        if order >= self.order {
            return self.clone();
        }
        let keep = (order + 1).saturating_sub(self.val);
        PSeries {
            val: self.val.min(order + 1),
            coeffs: self.coeffs[..keep].to_vec(),
            order,
        }
    }

    /// Equality on the common exact prefix.
    pub fn agrees_with(&self, other: &PSeries) -> bool {
        let n = self.order.min(other.order);
        (0..=n).all(|i| self.coeff(i) == other.coeff(i))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        PSeries {
            val: self.val,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            order: self.order,
        }
        .normalized()
    }

    pub fn is_even(&self) -> bool {
        (self.val..=self.order).all(|i| i % 2 == 0 || self.coeff(i).is_zero())
    }

    pub fn is_odd(&self) -> bool {
        (self.val..=self.order).all(|i| i % 2 == 1 || self.coeff(i).is_zero())
    }

    /// `self^e` with sound truncation.
    pub fn pow(&self, e: usize) -> Self {
        let mut acc = PSeries::one(self.order.max(e * self.val));
        for _ in 0..e {
            acc = ps_mul(&acc, self);
        }
        acc
    }
}

impl fmt::Display for PSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i + self.val {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                e => write!(f, "{c}*x^{e}")?,
            }
        }
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "O(x^{})", self.order + 1)
    }
}

impl fmt::Debug for PSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn combine(a: &PSeries, b: &PSeries, op: impl Fn(Rat, Rat) -> Rat) -> PSeries {
    let order = a.order.min(b.order);
    let val = a.val.min(b.val).min(order + 1);
    let coeffs = (val..=order).map(|i| op(a.coeff(i), b.coeff(i))).collect();
    PSeries { val, coeffs, order }.normalized()
}

pub fn ps_add(a: &PSeries, b: &PSeries) -> PSeries {
    combine(a, b, |x, y| x + y)
}

pub fn ps_sub(a: &PSeries, b: &PSeries) -> PSeries {
    combine(a, b, |x, y| x - y)
}

/// Cauchy product, exact through `min(Na + vb, Nb + va)`.
pub fn ps_mul(a: &PSeries, b: &PSeries) -> PSeries {
    let order = (a.order + b.val).min(b.order + a.val);
    mul_to(a, b, order)
}

fn mul_to(a: &PSeries, b: &PSeries, order: usize) -> PSeries {
    let val = a.val + b.val;
    if val > order {
        return PSeries::zero(order);
    }
    let mut coeffs = vec![Rat::zero(); order + 1 - val];
    for (i, ai) in a.coeffs.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        let ei = a.val + i;
        for (j, bj) in b.coeffs.iter().enumerate() {
            let e = ei + b.val + j;
            if e > order {
                break;
            }
            if !bj.is_zero() {
                coeffs[e - val] += ai * bj;
            }
        }
    }
    PSeries { val, coeffs, order }.normalized()
}

/// `q` with `q * b = a`. Requires `b` to be nonzero through its order and
/// `val(a) >= val(b)`.
pub fn ps_div(a: &PSeries, b: &PSeries) -> Result<PSeries> {
    let vb = b.val;
    if vb > b.order {
        return Err(Error::Series("divisor is zero through its truncation order".into()));
    }
    if a.val < vb {
        return Err(Error::Pole);
    }
    if a.order < vb {
        return Err(Error::Series("dividend is truncated below the divisor's valuation".into()));
    }
    let va = a.val.min(a.order + 1);
    let order = (a.order - vb).min(b.order + va - 2 * vb);
    let lead = b.coeff(vb).recip()?;
    let mut q: Vec<Rat> = Vec::with_capacity(order + 1);
    for i in 0..=order {
        let mut acc = a.try_coeff(i + vb).unwrap_or_else(Rat::zero);
        for (j, qj) in q.iter().enumerate() {
            if qj.is_zero() {
                continue;
            }
            let bi = b.coeff(i - j + vb);
            if !bi.is_zero() {
                acc -= &(qj * bi);
            }
        }
        q.push(acc * &lead);
    }
    Ok(PSeries { val: 0, coeffs: q, order }.normalized())
}

/// `outer(inner(x))`; `inner` must have zero constant term.
pub fn ps_compose(outer: &PSeries, inner: &PSeries) -> Result<PSeries> {
    if inner.val == 0 {
        return Err(Error::Series("inner series has a nonzero constant term".into()));
    }
    let vi = inner.val;
    let mut order = vi * (outer.order + 1) - 1;
    if let Some(j0) = (1..=outer.order).find(|&j| !outer.coeff(j).is_zero()) {
        order = order.min((j0 - 1) * vi + inner.order);
    }
    let inner = inner.truncate(order);
    let mut acc = PSeries::zero(order);
    for j in (0..=outer.order).rev() {
        acc = mul_to(&acc, &inner, order);
        let c = outer.coeff(j);
        if !c.is_zero() {
            acc = ps_add(&acc, &PSeries::monomial(c, 0, order));
        }
    }
    Ok(acc)
}

/// Termwise antiderivative with zero constant term.
pub fn ps_integrate(a: &PSeries) -> PSeries {
    let coeffs = a
        .coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| c / Rat::from_int(BigInt::from(a.val + i + 1)))
        .collect();
    PSeries { val: a.val + 1, coeffs, order: a.order + 1 }
}

/// Termwise derivative, exact through `N - 1`.
pub fn ps_derivative(a: &PSeries) -> PSeries {
    assert!(a.order >= 1, "derivative needs order >= 1");
    PSeries::from_fn(a.order - 1, |i| a.coeff(i + 1) * Rat::from_int(BigInt::from(i + 1)))
}

impl Add for &PSeries {
    type Output = PSeries;
    fn add(self, rhs: &PSeries) -> PSeries {
        ps_add(self, rhs)
    }
}

impl Sub for &PSeries {
    type Output = PSeries;
    fn sub(self, rhs: &PSeries) -> PSeries {
        ps_sub(self, rhs)
    }
}

impl Mul for &PSeries {
    type Output = PSeries;
    fn mul(self, rhs: &PSeries) -> PSeries {
        ps_mul(self, rhs)
    }
}

impl Neg for &PSeries {
    type Output = PSeries;
    fn neg(self) -> PSeries {
        self.scale(&-Rat::one())
    }
}

fn inv_fact(n: usize) -> Rat {
    Rat::new(1, factorial_u(n)).expect("factorial is nonzero")
}

/// `2 sin(x/2) = sum (-1)^l x^{2l+1} / ((2l+1)! 4^l)`.
pub fn gen_two_sin_half(order: usize) -> PSeries {
    PSeries::from_fn(order, |i| {
        if i % 2 == 0 {
            return Rat::zero();
        }
        let l = i / 2;
        inv_fact(i) * int_pow_rat(4, -(l as i64)) * Rat::from_int(sign(l))
    })
}

/// `2 tan(x/2)`, with `x^{2n-1}` coefficient `4((-1)^n - (-4)^n) B_{2n} / (2n)!`.
pub fn gen_two_tan_half(order: usize) -> PSeries {
    PSeries::from_fn(order, |i| {
        if i % 2 == 0 {
            return Rat::zero();
        }
        let n = i.div_ceil(2);
        let weight = sign(n) - sign(n) * BigInt::from(4).pow(n as u32);
        Rat::from_int(weight * 4) * bernoulli(2 * n) * inv_fact(2 * n)
    })
}

/// `(1/2) log((1+z)/(1-z)) = sum z^{2n+1} / (2n+1)`.
pub fn gen_atanh(order: usize) -> PSeries {
    gen_li2k(1, order)
}

/// Level-2 polylogarithm `sum z^{2n+1} / (2n+1)^k`, any integer `k`.
pub fn gen_li2k(k: i64, order: usize) -> PSeries {
    PSeries::from_fn(order, |i| {
        if i % 2 == 0 {
            Rat::zero()
        } else {
            int_pow_rat(i as i64, -k)
        }
    })
}

/// `e^{cx}`.
pub fn gen_exp(c: &Rat, order: usize) -> PSeries {
    let mut power = Rat::one();
    PSeries::from_fn(order, |i| {
        let term = &power * inv_fact(i);
        power = &power * c;
        term
    })
}

pub fn gen_cos(order: usize) -> PSeries {
    gen_cos_scaled(&Rat::one(), order)
}

/// `cos(cx)`.
pub fn gen_cos_scaled(c: &Rat, order: usize) -> PSeries {
    PSeries::from_fn(order, |i| {
        if i % 2 == 1 {
            return Rat::zero();
        }
        Rat::from_int(sign(i / 2)) * c.pow(i as i64).unwrap() * inv_fact(i)
    })
}

/// `cosh(cx)`.
pub fn gen_cosh_scaled(c: i64, order: usize) -> PSeries {
    PSeries::from_fn(order, |i| {
        if i % 2 == 1 {
            return Rat::zero();
        }
        int_pow_rat(c, i as i64) * inv_fact(i)
    })
}

/// Truncated bivariate series; `coeff(i, j)` multiplies `x^i y^j`.
#[derive(Clone, PartialEq, Eq)]
pub struct BiSeries {
    nx: usize,
    ny: usize,
    coeffs: Vec<Vec<Rat>>,
}

impl BiSeries {
    pub fn zero(nx: usize, ny: usize) -> Self {
        BiSeries { nx, ny, coeffs: vec![vec![Rat::zero(); ny + 1]; nx + 1] }
    }

    pub fn from_fn(nx: usize, ny: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let coeffs = (0..=nx).map(|i| (0..=ny).map(|j| f(i, j)).collect()).collect();
        BiSeries { nx, ny, coeffs }
    }

    pub fn orders(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    pub fn coeff(&self, i: usize, j: usize) -> &Rat {
        &self.coeffs[i][j]
    }

    pub fn truncate(&self, nx: usize, ny: usize) -> Self {
        let (nx, ny) = (nx.min(self.nx), ny.min(self.ny));
        BiSeries::from_fn(nx, ny, |i, j| self.coeffs[i][j].clone())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        BiSeries::from_fn(self.nx, self.ny, |i, j| &self.coeffs[i][j] * c)
    }

    /// Equality on the common exact rectangle.
    pub fn agrees_with(&self, other: &BiSeries) -> bool {
        let (nx, ny) = (self.nx.min(other.nx), self.ny.min(other.ny));
        (0..=nx).all(|i| (0..=ny).all(|j| self.coeffs[i][j] == other.coeffs[i][j]))
    }

    fn nonzero_terms(&self) -> Vec<(usize, usize, &Rat)> {
        let mut out = Vec::new();
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    out.push((i, j, c));
                }
            }
        }
        out
    }
}

impl fmt::Debug for BiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiSeries({}x{}) ", self.nx, self.ny)?;
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

/// `u(x) w(y)`.
pub fn bi_outer(u: &PSeries, w: &PSeries) -> BiSeries {
    let wc = w.coefficients();
    let uc = u.coefficients();
    BiSeries::from_fn(u.order(), w.order(), |i, j| &uc[i] * &wc[j])
}

pub fn bi_add(a: &BiSeries, b: &BiSeries) -> BiSeries {
    let (nx, ny) = (a.nx.min(b.nx), a.ny.min(b.ny));
    BiSeries::from_fn(nx, ny, |i, j| &a.coeffs[i][j] + &b.coeffs[i][j])
}

pub fn bi_mul(a: &BiSeries, b: &BiSeries) -> BiSeries {
    let (nx, ny) = (a.nx.min(b.nx), a.ny.min(b.ny));
    let mut out = BiSeries::zero(nx, ny);
    let bt = b.nonzero_terms();
    for (i, j, ac) in a.nonzero_terms() {
        for &(p, q, bc) in &bt {
            if i + p <= nx && j + q <= ny {
                out.coeffs[i + p][j + q] += ac * bc;
            }
        }
    }
    out
}

/// `a / b`; `b` must have a nonzero constant term.
pub fn bi_div(a: &BiSeries, b: &BiSeries) -> Result<BiSeries> {
    let lead = b.coeffs[0][0].recip().map_err(|_| {
        Error::Series("bivariate divisor has zero constant term".into())
    })?;
    let (nx, ny) = (a.nx.min(b.nx), a.ny.min(b.ny));
    let tail: Vec<_> = b
        .nonzero_terms()
        .into_iter()
        .filter(|&(p, q, _)| (p, q) != (0, 0))
        .collect();
    let mut q = BiSeries::zero(nx, ny);
    for i in 0..=nx {
        for j in 0..=ny {
            let mut acc = a.coeffs[i][j].clone();
            for &(p, r, bc) in &tail {
                if p <= i && r <= j {
                    let qc = &q.coeffs[i - p][j - r];
                    if !qc.is_zero() {
                        acc -= &(bc * qc);
                    }
                }
            }
            q.coeffs[i][j] = acc * &lead;
        }
    }
    Ok(q)
}
