//! Brute-force counts of the combinatorial objects behind the level-`s`
//! Stirling numbers. Independent of the recurrence tables.
//!
//! Partitions are canonical: each block sorted, blocks ordered by their
//! minimum. Permutations are decomposed into cycles rotated to start at their
//! minimum, ordered by minimum. Two objects are compatible when the sets of
//! block (cycle) minima coincide, so the number of compatible ordered
//! `s`-tuples is the sum over minima sets of `count^s`.

use std::collections::HashMap;

use num_traits::{Pow, Zero};

use crate::arith::BigInt;
use crate::error::{Error, Result};

pub const PARTITION_ORACLE_BOUND: usize = 7;
pub const PERMUTATION_ORACLE_BOUND: usize = 6;

/// All set partitions of `{1, ..., n}` in canonical form.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    // restricted growth strings: a[0] = 0, a[i] <= max(a[..i]) + 1
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    fn rec(i: usize, max: usize, rgs: &mut [usize], out: &mut Vec<Vec<Vec<usize>>>) {
        let n = rgs.len();
        if i == n {
            let blocks = if n == 0 { 0 } else { max + 1 };
            let mut parts = vec![Vec::new(); blocks];
            for (e, &b) in rgs.iter().enumerate() {
                parts[b].push(e + 1);
            }
            out.push(parts);
            return;
        }
        let top = if i == 0 { 0 } else { max + 1 };
        for b in 0..=top {
            rgs[i] = b;
            rec(i + 1, max.max(b), rgs, out);
        }
    }
    rec(0, 0, &mut rgs, &mut out);
    out
}

/// Cycles of `perm` (a permutation of `0..n` in one-line notation), each
/// rotated to start at its minimum, ordered by minimum. Elements are 1-based.
pub fn cycle_decomposition(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut cycles = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        // scanning in increasing order means `start` is the cycle minimum
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cycle.push(i + 1);
            i = perm[i];
        }
        cycles.push(cycle);
    }
    cycles
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn minima_mask<'a>(groups: impl Iterator<Item = &'a Vec<usize>>) -> u64 {
    groups.fold(0, |m, g| m | 1 << g[0])
}

fn tuple_count(classes: HashMap<u64, u64>, s: u32) -> BigInt {
    classes
        .into_values()
        .map(|c| BigInt::from(c).pow(s))
        .fold(BigInt::zero(), |a, b| a + b)
}

fn check_level(s: u32) -> Result<()> {
    if s < 1 {
        return Err(Error::Domain(format!("level must be positive, got {s}")));
    }
    Ok(())
}

/// Number of ordered `s`-tuples of partitions of `[n]` into `k` blocks that
/// share the same set of block minima.
pub fn enum_tuples_second(s: u32, n: usize, k: usize) -> Result<BigInt> {
    check_level(s)?;
    if n > PARTITION_ORACLE_BOUND {
        return Err(Error::OracleBound(format!(
            "partition enumeration limited to n <= {PARTITION_ORACLE_BOUND}, got {n}"
        )));
    }
    let mut classes = HashMap::new();
    for p in set_partitions(n).iter().filter(|p| p.len() == k) {
        *classes.entry(minima_mask(p.iter())).or_insert(0u64) += 1;
    }
    Ok(tuple_count(classes, s))
}

/// Number of ordered `s`-tuples of permutations of `[n]` with `k` cycles that
/// share the same set of cycle minima.
pub fn enum_tuples_first(s: u32, n: usize, k: usize) -> Result<BigInt> {
    check_level(s)?;
    if n > PERMUTATION_ORACLE_BOUND {
        return Err(Error::OracleBound(format!(
            "permutation enumeration limited to n <= {PERMUTATION_ORACLE_BOUND}, got {n}"
        )));
    }
    let mut classes = HashMap::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let cycles = cycle_decomposition(&perm);
        if cycles.len() == k {
            *classes.entry(minima_mask(cycles.iter())).or_insert(0u64) += 1;
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(tuple_count(classes, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stirling::{stirling1_level, stirling2_level};

    #[test]
    fn partition_counts_are_bell_numbers() {
        let bell = [1, 1, 2, 5, 15, 52, 203, 877];
        for (n, &b) in bell.iter().enumerate() {
            assert_eq!(set_partitions(n).len(), b);
        }
        let p = &set_partitions(3)[1];
        assert_eq!(p, &vec![vec![1, 2], vec![3]]);
    }

    #[test]
    fn cycles_start_at_minimum() {
        // 1 -> 3 -> 2 -> 1, 4 fixed
        let cycles = cycle_decomposition(&[2, 0, 1, 3]);
        assert_eq!(cycles, vec![vec![1, 3, 2], vec![4]]);
    }

    #[test]
    fn second_kind_examples() {
        assert_eq!(enum_tuples_second(1, 4, 2).unwrap(), 7.into());
        assert_eq!(enum_tuples_second(2, 3, 2).unwrap(), 5.into());
        for s in 1..4 {
            for n in 0..=6 {
                assert_eq!(enum_tuples_second(s, n, n).unwrap(), 1.into());
            }
        }
    }

    #[test]
    fn first_kind_examples() {
        assert_eq!(enum_tuples_first(1, 4, 2).unwrap(), 11.into());
        assert_eq!(enum_tuples_first(2, 3, 2).unwrap(), 5.into());
        for s in 1..4 {
            for n in 0..=5 {
                assert_eq!(enum_tuples_first(s, n, n).unwrap(), 1.into());
            }
        }
    }

    #[test]
    fn guards() {
        assert!(matches!(enum_tuples_second(2, 8, 3), Err(Error::OracleBound(_))));
        assert!(matches!(enum_tuples_first(2, 7, 3), Err(Error::OracleBound(_))));
        assert!(enum_tuples_first(0, 3, 1).is_err());
    }

    #[test]
    fn enumeration_matches_tables() {
        for s in 1..=3 {
            for n in 0..=5 {
                for k in 0..=n {
                    assert_eq!(enum_tuples_second(s, n, k).unwrap(), stirling2_level(s, n, k).unwrap());
                    assert_eq!(enum_tuples_first(s, n, k).unwrap(), stirling1_level(s, n, k).unwrap());
                }
            }
        }
        for k in 0..=7 {
            assert_eq!(enum_tuples_second(2, 7, k).unwrap(), stirling2_level(2, 7, k).unwrap());
        }
        for k in 0..=6 {
            assert_eq!(enum_tuples_first(3, 6, k).unwrap(), stirling1_level(3, 6, k).unwrap());
        }
    }
}
