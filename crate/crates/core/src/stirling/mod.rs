//! Stirling numbers of both kinds with level `s`.
//!
//! Level-`s` second-kind numbers satisfy
//! `S_s(n, k) = S_s(n-1, k-1) + k^s S_s(n-1, k)` and first-kind numbers
//! `c_s(n, k) = c_s(n-1, k-1) + (n-1)^s c_s(n-1, k)`. Level 1 gives the
//! classical (unsigned) numbers, level 2 the central factorial numbers
//! `T(2n, 2k)` and `t(2n, 2k)`.
//!
//! Values come from memoized recurrence tables. The explicit formulas below
//! are evaluated in exact rationals and their integrality is checked at the
//! end, so they double as independent oracles for the tables.

mod enumerate;
mod gf;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use num_traits::{One, Pow, Zero};

use crate::arith::{binomial_u, factorial_u, sign, BigInt, Rat};
use crate::error::{Error, Result};

pub use enumerate::{
    cycle_decomposition, enum_tuples_first, enum_tuples_second, set_partitions,
    PARTITION_ORACLE_BOUND, PERMUTATION_ORACLE_BOUND,
};
pub use gf::{st2_egf_check, st2_egf_lhs, st2_egf_rhs, st2_ogf_check, st2_ogf_series};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    First,
    Second,
}

/// Append-only triangle of level-`s` Stirling numbers of one kind, grown row
/// by row on demand. Safe to share between threads.
#[derive(Debug)]
pub struct StirlingTable {
    kind: Kind,
    level: u32,
    rows: RwLock<Vec<Vec<BigInt>>>,
}

impl Clone for StirlingTable {
    fn clone(&self) -> Self {
        StirlingTable {
            kind: self.kind,
            level: self.level,
            rows: RwLock::new(self.rows.read().expect("table lock poisoned").clone()),
        }
    }
}

pub(crate) fn check_level(s: u32) -> Result<()> {
    if s < 1 {
        return Err(Error::Domain(format!("level must be positive, got {s}")));
    }
    Ok(())
}

type Registry = HashMap<(Kind, u32), Arc<StirlingTable>>;

impl StirlingTable {
    pub fn new(kind: Kind, level: u32) -> Result<Self> {
        check_level(level)?;
        Ok(StirlingTable {
            kind,
            level,
            rows: RwLock::new(vec![vec![BigInt::one()]]),
        })
    }

    /// The process-wide table for `(kind, level)`.
    pub fn shared(kind: Kind, level: u32) -> Result<Arc<StirlingTable>> {
        check_level(level)?;
        static TABLES: OnceLock<Mutex<Registry>> = OnceLock::new();
        let mut map = TABLES
            .get_or_init(Default::default)
            .lock()
            .expect("table registry poisoned");
        let table = map
            .entry((kind, level))
            .or_insert_with(|| Arc::new(StirlingTable::new(kind, level).unwrap()));
        Ok(Arc::clone(table))
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    fn grow_to(&self, n: usize) {
        if self.rows.read().expect("table lock poisoned").len() > n {
            return;
        }
        let mut rows = self.rows.write().expect("table lock poisoned");
        while rows.len() <= n {
            let m = rows.len();
            let prev = &rows[m - 1];
            let mut row = vec![BigInt::zero(); m + 1];
            for k in 1..=m {
                let weight: BigInt = match self.kind {
                    Kind::Second => BigInt::from(k).pow(self.level),
                    Kind::First => BigInt::from(m - 1).pow(self.level),
                };
                let mut v = prev[k - 1].clone();
                if k < m {
                    v += weight * &prev[k];
                }
                row[k] = v;
            }
            rows.push(row);
        }
    }

    pub fn get(&self, n: usize, k: usize) -> BigInt {
        if k > n {
            return BigInt::zero();
        }
        self.grow_to(n);
        self.rows.read().expect("table lock poisoned")[n][k].clone()
    }

    /// Row `n` as `[entry(n, 0), ..., entry(n, n)]`.
    pub fn row(&self, n: usize) -> Vec<BigInt> {
        self.grow_to(n);
        self.rows.read().expect("table lock poisoned")[n].clone()
    }

    /// Overwrites one cached entry. Rows computed afterwards inherit the
    /// change. Only meant for negative-control runs of the verifier.
    pub fn override_entry(&mut self, n: usize, k: usize, value: BigInt) {
        assert!(k <= n, "entry ({n}, {k}) lies outside the triangle");
        self.grow_to(n);
        self.rows.get_mut().expect("table lock poisoned")[n][k] = value;
    }
}

/// Level-`s` Stirling number of the second kind.
pub fn stirling2_level(s: u32, n: usize, k: usize) -> Result<BigInt> {
    Ok(StirlingTable::shared(Kind::Second, s)?.get(n, k))
}

/// Level-`s` unsigned Stirling number of the first kind.
pub fn stirling1_level(s: u32, n: usize, k: usize) -> Result<BigInt> {
    Ok(StirlingTable::shared(Kind::First, s)?.get(n, k))
}

/// Multiplies `poly` (ascending coefficients) by `(x + c)`.
fn mul_linear(poly: &[BigInt], c: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); poly.len() + 1];
    for (i, a) in poly.iter().enumerate() {
        out[i + 1] += a;
        out[i] += a * c;
    }
    out
}

/// Coefficients of `x (x + 1^s) (x + 2^s) ... (x + (n-1)^s)`, lowest degree
/// first. Entry `k` is the first-kind number of order `(n, k)`.
pub fn stirling1_poly(s: u32, n: usize) -> Result<Vec<BigInt>> {
    check_level(s)?;
    let mut poly = vec![BigInt::one()];
    for i in 0..n {
        poly = mul_linear(&poly, &BigInt::from(i).pow(s));
    }
    Ok(poly)
}

/// Expands `sum_k S_s(n, k) x (x - 1^s) ... (x - (k-1)^s)` and checks that it
/// is the monomial `x^n`.
pub fn stirling2_newton_check(s: u32, n: usize) -> Result<bool> {
    let table = StirlingTable::shared(Kind::Second, s)?;
    Ok(newton_check_with(&table, n))
}

pub(crate) fn newton_check_with(table: &StirlingTable, n: usize) -> bool {
    let s = table.level();
    let mut total = vec![BigInt::zero(); n + 1];
    let mut falling = vec![BigInt::one()];
    for k in 0..=n {
        let coef = table.get(n, k);
        if !coef.is_zero() {
            for (i, a) in falling.iter().enumerate() {
                total[i] += &coef * a;
            }
        }
        falling = mul_linear(&falling, &-BigInt::from(k).pow(s));
    }
    total
        .iter()
        .enumerate()
        .all(|(i, c)| if i == n { c.is_one() } else { c.is_zero() })
}

/// `prod_{i = lo..=k, i != j} (j^s - i^s)`.
fn node_product(s: u32, k: usize, j: usize, lo: usize) -> BigInt {
    let js = BigInt::from(j).pow(s);
    (lo..=k)
        .filter(|&i| i != j)
        .map(|i| &js - BigInt::from(i).pow(s))
        .product()
}

fn check_range(n: usize, k: usize, min_k: usize) -> Result<()> {
    if k < min_k || k > n {
        return Err(Error::Domain(format!(
            "explicit formula needs {min_k} <= k <= n, got n = {n}, k = {k}"
        )));
    }
    Ok(())
}

fn integral(value: Rat, what: impl FnOnce() -> String) -> Result<BigInt> {
    value
        .to_integer()
        .ok_or_else(|| Error::Inconsistency(format!("{} evaluated to {value}", what())))
}

/// Lagrange-type closed form `sum_j j^{ns} / prod_{i != j} (j^s - i^s)`.
pub fn stirling2_explicit(s: u32, n: usize, k: usize) -> Result<BigInt> {
    check_level(s)?;
    check_range(n, k, 1)?;
    let sum: Rat = (1..=k)
        .map(|j| {
            Rat::new(BigInt::from(j).pow(n as u32 * s), node_product(s, k, j, 0))
                .expect("distinct nodes")
        })
        .sum();
    integral(sum, || format!("explicit S_{s}({n}, {k})"))
}

/// The variant that splits off the `j = k` node. `k = 1` is always 1.
pub fn stirling2_explicit_alt(s: u32, n: usize, k: usize) -> Result<BigInt> {
    check_level(s)?;
    check_range(n, k, 1)?;
    if k == 1 {
        return Ok(BigInt::one());
    }
    let e = ((n - k + 1) as u32) * s;
    let kk = BigInt::from(k).pow(e);
    let sum: Rat = (1..k)
        .map(|j| {
            let jb = BigInt::from(j);
            let num = jb.clone().pow((k as u32 - 1) * s) * (jb.pow(e) - &kk);
            Rat::new(num, node_product(s, k, j, 0)).expect("distinct nodes")
        })
        .sum();
    integral(sum, || format!("alternate explicit S_{s}({n}, {k})"))
}

/// Level-2 binomial form `2/(2k)! sum_j (-1)^{k-j} C(2k, k-j) j^{2n}`.
pub fn stirling2_binom_s2(n: usize, k: usize) -> Result<BigInt> {
    check_range(n, k, 1)?;
    let sum: BigInt = (1..=k)
        .map(|j| sign(k - j) * binomial_u(2 * k, k - j) * BigInt::from(j).pow(2 * n as u32))
        .sum();
    let value = Rat::new(sum * 2, factorial_u(2 * k))?;
    integral(value, || format!("binomial form S_2({n}, {k})"))
}

/// `(4^{n-1} - 1) / 3`, checked against the level-2 table.
pub fn stirling2_k2_closed(n: usize) -> Result<BigInt> {
    if n < 2 {
        return Err(Error::Domain(format!("closed form needs n >= 2, got {n}")));
    }
    let value = (BigInt::from(4).pow(n as u32 - 1) - 1) / 3;
    let table = stirling2_level(2, n, 2)?;
    if value != table {
        return Err(Error::Inconsistency(format!(
            "S_2({n}, 2): closed form {value} vs table {table}"
        )));
    }
    Ok(value)
}

fn orthogonality(outer: &StirlingTable, inner: &StirlingTable, m: usize, j: usize) -> BigInt {
    if j > m {
        return BigInt::zero();
    }
    (j..=m)
        .map(|l| sign(l - j) * outer.get(m, l) * inner.get(l, j))
        .sum()
}

/// `sum_{l=j}^{m} (-1)^{l-j} c_s(m, l) S_s(l, j)`; the Kronecker delta.
pub fn orthogonality_first_second(s: u32, m: usize, j: usize) -> Result<BigInt> {
    let first = StirlingTable::shared(Kind::First, s)?;
    let second = StirlingTable::shared(Kind::Second, s)?;
    Ok(orthogonality(&first, &second, m, j))
}

/// `sum_{l=j}^{m} (-1)^{l-j} S_s(m, l) c_s(l, j)`; the Kronecker delta.
pub fn orthogonality_second_first(s: u32, m: usize, j: usize) -> Result<BigInt> {
    let first = StirlingTable::shared(Kind::First, s)?;
    let second = StirlingTable::shared(Kind::Second, s)?;
    Ok(orthogonality(&second, &first, m, j))
}

pub(crate) fn orthogonality_with(
    first: &StirlingTable,
    second: &StirlingTable,
    m: usize,
    j: usize,
) -> (BigInt, BigInt) {
    (
        orthogonality(first, second, m, j),
        orthogonality(second, first, m, j),
    )
}

/// `sum_{j=1}^{k} 1 / prod_{i=0, i != j}^{k} (j^s - i^s)`, which equals
/// `(-1)^{k-1} / (k!)^s`.
pub fn egf_reciprocal_sum(s: u32, k: usize) -> Result<Rat> {
    egf_power_sum(s, k, 0)
}

/// `sum_{j=1}^{k} j^{ns} / prod_{i=0, i != j}^{k} (j^s - i^s)`; zero for
/// `1 <= n <= k-1`.
pub fn egf_power_sum(s: u32, k: usize, n: usize) -> Result<Rat> {
    check_level(s)?;
    Ok((1..=k)
        .map(|j| {
            Rat::new(BigInt::from(j).pow(n as u32 * s), node_product(s, k, j, 0))
                .expect("distinct nodes")
        })
        .sum())
}

/// `prod_{i=0, i != j}^{k} (j^s - i^s)`, the weight of `e^{j^s x}` in the EGF.
pub(crate) fn egf_weight(s: u32, k: usize, j: usize) -> BigInt {
    node_product(s, k, j, 0)
}
