//! Ordinary and exponential generating functions of the level-`s` Stirling
//! numbers of the second kind, checked against the recurrence table.

use num_traits::Pow;

use crate::arith::{factorial_u, sign, BigInt, Rat};
use crate::error::{Error, Result};
use crate::series::{gen_exp, ps_add, ps_div, PSeries};
use crate::stirling::{check_level, egf_weight, Kind, StirlingTable};

fn check_args(s: u32, k: usize, order: usize) -> Result<()> {
    check_level(s)?;
    if k < 1 || order < k {
        return Err(Error::Domain(format!(
            "generating function needs 1 <= k <= order, got k = {k}, order = {order}"
        )));
    }
    Ok(())
}

/// `sum_j e^{j^s x} / prod_{i=0, i != j}^{k} (j^s - i^s) + (-1)^k / (k!)^s`.
pub fn st2_egf_rhs(s: u32, k: usize, order: usize) -> Result<PSeries> {
    check_args(s, k, order)?;
    let fk: BigInt = factorial_u(k).pow(s);
    let mut acc = PSeries::monomial(Rat::new(sign(k), fk)?, 0, order);
    for j in 1..=k {
        let rate = Rat::from_int(BigInt::from(j).pow(s));
        let w = Rat::new(1, egf_weight(s, k, j))?;
        acc = ps_add(&acc, &gen_exp(&rate, order).scale(&w));
    }
    Ok(acc)
}

/// `sum_{n >= k} S_s(n, k) x^n / n!` from the table.
pub fn st2_egf_lhs(s: u32, k: usize, order: usize) -> Result<PSeries> {
    check_args(s, k, order)?;
    let table = StirlingTable::shared(Kind::Second, s)?;
    Ok(PSeries::from_fn(order, |n| {
        Rat::new(table.get(n, k), factorial_u(n)).expect("factorial is nonzero")
    }))
}

pub fn st2_egf_check(s: u32, k: usize, order: usize) -> Result<bool> {
    Ok(st2_egf_lhs(s, k, order)? == st2_egf_rhs(s, k, order)?)
}

/// Expansion of `x^k / ((1 - x)(1 - 2^s x) ... (1 - k^s x))` through `order`.
pub fn st2_ogf_series(s: u32, k: usize, order: usize) -> Result<PSeries> {
    check_args(s, k, order)?;
    let mut acc = PSeries::monomial(Rat::one(), k, order);
    for i in 1..=k {
        let c = Rat::from_int(-BigInt::from(i).pow(s));
        let factor = PSeries::from_fn(order, |e| match e {
            0 => Rat::one(),
            1 => c.clone(),
            _ => Rat::zero(),
        });
        acc = ps_div(&acc, &factor)?;
    }
    Ok(acc)
}

pub fn st2_ogf_check(s: u32, k: usize, order: usize) -> Result<bool> {
    let series = st2_ogf_series(s, k, order)?;
    let table = StirlingTable::shared(Kind::Second, s)?;
    Ok((0..=order).all(|n| series.coeff(n) == Rat::from_int(table.get(n, k))))
}
