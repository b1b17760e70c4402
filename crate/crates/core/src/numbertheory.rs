//! Congruences of level-2 poly-Bernoulli numbers at negative `k`, and the
//! denominators of the level-2 Bernoulli numbers `B_{2n} = B_{2n}^(1)`.
//!
//! For `n, k >= 1`, `B_{2n}^(-k) = sum_{m>=1} S_2(n,m) (-1)^{n-m} (2m)! (2m+1)^k`
//! is an integer. Modulo 5 only the `m = 1` term survives, modulo 7 the
//! `m = 1, 2` terms, which gives the closed forms in [`closed_residue`].
//!
//! `B_{2n} + sum (-1)^{n-(p-1)/2} / p` over odd primes with `(p-1) | 2n` is an
//! integer; [`vsc_defect`] checks that exactly.

use num_integer::Integer;
use num_traits::{Pow, ToPrimitive};

use crate::arith::{frac_part, sign, BigInt, Rat};
use crate::error::{Error, Result};
use crate::polynum::{bernoulli, pb2_explicit};

/// Residues of `B_{2n}^(-k) mod 5`, rows `n mod 2`, columns `k mod 4`.
pub const MOD5_GRID: [[u64; 4]; 2] = [[3, 4, 2, 1], [2, 1, 3, 4]];

/// Residues of `B_{2n}^(-k) mod 7`, rows `n mod 6`, columns `k mod 6`.
pub const MOD7_GRID: [[u64; 6]; 6] = [
    [6, 6, 0, 1, 1, 0],
    [2, 6, 4, 5, 1, 3],
    [1, 2, 1, 6, 5, 6],
    [1, 1, 0, 6, 6, 0],
    [5, 1, 3, 2, 6, 4],
    [6, 5, 6, 1, 2, 1],
];

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Odd primes `p` with `(p - 1) | 2n`, ascending.
pub fn primes_for(n: u64) -> Vec<u64> {
    let two_n = 2 * n;
    (1..=two_n)
        .filter(|d| two_n.is_multiple_of(*d))
        .map(|d| d + 1)
        .filter(|&p| p % 2 == 1 && is_prime(p))
        .collect()
}

/// Level-2 Bernoulli number `B_{2n}` (half index `n`).
pub fn bernoulli2(n: usize) -> Rat {
    pb2_explicit(n, 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VscReport {
    pub n: u64,
    /// `B_{2n}`.
    pub value: Rat,
    /// `(p, (-1)^{n-(p-1)/2} / p)` for each contributing prime.
    pub terms: Vec<(u64, Rat)>,
    /// `B_{2n} + sum terms`; an integer.
    pub defect: Rat,
    /// `frac(B_{2n}) + sum terms`; the same integrality with the integer part
    /// of `B_{2n}` removed.
    pub reduced_defect: Rat,
}

/// Builds the correction terms for `B_{2n}` and checks that they cancel its
/// fractional part.
pub fn vsc_defect(n: u64) -> Result<VscReport> {
    if n < 1 {
        return Err(Error::Domain("von Staudt-Clausen check needs n >= 1".into()));
    }
    let value = bernoulli2(n as usize);
    let terms: Vec<(u64, Rat)> = primes_for(n)
        .into_iter()
        .map(|p| {
            let e = (n as i64 - ((p - 1) / 2) as i64).unsigned_abs() as usize;
            (p, Rat::new(sign(e), p).expect("p is prime"))
        })
        .collect();
    let correction: Rat = terms.iter().map(|(_, t)| t).sum();
    let defect = &value + &correction;
    let reduced_defect = frac_part(&value) + correction;
    if !defect.is_integer() {
        return Err(Error::TheoremViolation(format!(
            "B_{} + corrections = {defect} is not an integer",
            2 * n
        )));
    }
    Ok(VscReport { n, value, terms, defect, reduced_defect })
}

/// `(2n, frac(B_{2n}))` for `0 <= n <= nmax`.
pub fn frac_table(nmax: usize) -> Vec<(usize, Rat)> {
    (0..=nmax).map(|n| (2 * n, frac_part(&bernoulli2(n)))).collect()
}

/// Cosecant number `-2 (2^{2n-1} - 1) B_{2n}`.
pub fn cosecant_number(n: usize) -> Result<Rat> {
    if n < 1 {
        return Err(Error::Domain("cosecant number needs n >= 1".into()));
    }
    let w = (BigInt::from(2).pow(2 * n as u32 - 1) - 1) * -2;
    Ok(Rat::from_int(w) * bernoulli(2 * n))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenominatorReport {
    pub nmax: usize,
    /// First `(n, den B_{2n}, den cosecant(n))` that differ.
    pub first_mismatch: Option<(usize, BigInt, BigInt)>,
}

impl DenominatorReport {
    pub fn all_match(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Compares denominators of `B_{2n}` and the cosecant numbers for
/// `1 <= n <= nmax`. Diagnostic only.
pub fn denominator_match(nmax: usize) -> DenominatorReport {
    let first_mismatch = (1..=nmax).find_map(|n| {
        let a = bernoulli2(n).denom().clone();
        let b = cosecant_number(n).expect("n >= 1").denom().clone();
        (a != b).then_some((n, a, b))
    });
    DenominatorReport { nmax, first_mismatch }
}

/// `B_{2n}^(-k) mod m` for `n, k >= 1`.
pub fn pb2_residue(n: usize, k: usize, m: u64) -> Result<u64> {
    if n < 1 || k < 1 {
        return Err(Error::Domain(format!("residues need n, k >= 1, got n = {n}, k = {k}")));
    }
    if m < 2 {
        return Err(Error::Domain(format!("modulus must be at least 2, got {m}")));
    }
    let value = pb2_explicit(n, -(k as i64));
    let int = value
        .to_integer()
        .ok_or_else(|| Error::Inconsistency(format!("B_{}^(-{k}) = {value} is not an integer", 2 * n)))?;
    Ok(int.mod_floor(&BigInt::from(m)).to_u64().expect("residue fits"))
}

fn pow_mod(base: u64, exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    let mut b = base % m;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Closed congruence forms for moduli 5 and 7 (and 6, where everything is 0):
///
/// * mod 5: `(-1)^{n-1} 2 * 3^k`
/// * mod 7: `(-1)^{n-1} 2 * 3^k + (-1)^n (4^{n-1} - 1) 5^k`
pub fn closed_residue(n: u64, k: u64, m: u64) -> Result<u64> {
    if n < 1 || k < 1 {
        return Err(Error::Domain(format!("residues need n, k >= 1, got n = {n}, k = {k}")));
    }
    let signed = |odd: bool, v: u64| if odd { (m - v % m) % m } else { v % m };
    match m {
        6 => Ok(0),
        5 => Ok(signed((n - 1) % 2 == 1, 2 * pow_mod(3, k, 5))),
        7 => {
            let first = signed((n - 1) % 2 == 1, 2 * pow_mod(3, k, 7));
            let second = signed(n % 2 == 1, (pow_mod(4, n - 1, 7) + 6) % 7 * pow_mod(5, k, 7));
            Ok((first + second) % 7)
        }
        _ => Err(Error::Domain(format!("no closed congruence form modulo {m}"))),
    }
}

/// Residues of `B_{2n}^(-k) mod m` by residue class of `(n mod rows, k mod cols)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueTable {
    pub modulus: u64,
    pub row_period: usize,
    pub col_period: usize,
    pub entries: Vec<Vec<u64>>,
}

impl ResidueTable {
    /// Fills each cell from its smallest representative `n, k >= 1`.
    pub fn build(
        modulus: u64,
        row_period: usize,
        col_period: usize,
        mut cell: impl FnMut(usize, usize) -> Result<u64>,
    ) -> Result<Self> {
        let rep = |r: usize, period: usize| if r == 0 { period } else { r };
        let entries = (0..row_period)
            .map(|r| {
                (0..col_period)
                    .map(|c| cell(rep(r, row_period), rep(c, col_period)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ResidueTable { modulus, row_period, col_period, entries })
    }

    pub fn get(&self, n: usize, k: usize) -> u64 {
        self.entries[n % self.row_period][k % self.col_period]
    }

    pub fn matches_grid<const C: usize>(&self, grid: &[[u64; C]]) -> bool {
        self.entries.len() == grid.len()
            && self.entries.iter().zip(grid).all(|(row, g)| row.as_slice() == g.as_slice())
    }
}

fn congruence_table<const C: usize>(m: u64, rows: usize, grid: &[[u64; C]]) -> Result<ResidueTable> {
    let direct = ResidueTable::build(m, rows, C, |n, k| pb2_residue(n, k, m))?;
    let closed = ResidueTable::build(m, rows, C, |n, k| closed_residue(n as u64, k as u64, m))?;
    if direct != closed {
        return Err(Error::TheoremViolation(format!(
            "mod {m}: direct residues {:?} differ from closed form {:?}",
            direct.entries, closed.entries
        )));
    }
    if !direct.matches_grid(grid) {
        return Err(Error::TheoremViolation(format!(
            "mod {m}: residues {:?} differ from the reference grid",
            direct.entries
        )));
    }
    Ok(direct)
}

/// The 2 x 4 table of residues modulo 5.
pub fn cong5_table() -> Result<ResidueTable> {
    congruence_table(5, 2, &MOD5_GRID)
}

/// The 6 x 6 table of residues modulo 7.
pub fn cong7_table() -> Result<ResidueTable> {
    congruence_table(7, 6, &MOD7_GRID)
}

/// `B_{2n}^(-k) = 0 mod 6` for `1 <= n <= nmax`, `1 <= k <= kmax`.
pub fn cong6_check(nmax: usize, kmax: usize) -> Result<bool> {
    for n in 1..=nmax {
        for k in 1..=kmax {
            if pb2_residue(n, k, 6)? != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Residues depend only on `(n mod rows, k mod cols)`: compares every cell in
/// `periods` windows against the first.
pub fn periodicity_check(m: u64, rows: usize, cols: usize, periods: usize) -> Result<bool> {
    let base = ResidueTable::build(m, rows, cols, |n, k| pb2_residue(n, k, m))?;
    for n in 1..=rows * periods {
        for k in 1..=cols * periods {
            if pb2_residue(n, k, m)? != base.get(n, k) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
