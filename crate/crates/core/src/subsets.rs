//! Support enumeration over at most 64 atoms, with supports held as bitmasks.

use std::cmp::Ordering;

use crate::error::{Error, Result};

/// Upper bound on the number of supports a solver may enumerate.
pub const ENUMERATION_LIMIT: u128 = 10_000_000;

pub fn mask_indices(mask: u64) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        }
    })
}

pub fn mask_from(indices: &[usize]) -> u64 {
    indices.iter().fold(0, |m, &i| m | (1u64 << i))
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

pub fn check_guard(count: u128) -> Result<()> {
    if count > ENUMERATION_LIMIT {
        Err(Error::GuardExceeded { count, limit: ENUMERATION_LIMIT })
    } else {
        Ok(())
    }
}

/// Lexicographic order of the sorted index lists of two supports.
pub fn lex_cmp(a: u64, b: u64) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    let low = (a ^ b).trailing_zeros();
    // the set owning the smallest differing index comes first, unless the
    // other set has simply run out of elements (a proper prefix)
    let below = (1u64 << low) - 1;
    let a_has = a >> low & 1 == 1;
    let rest = if a_has { b & !below } else { a & !below };
    match (a_has, rest == 0) {
        (true, false) => Ordering::Less,
        (true, true) => Ordering::Greater,
        (false, false) => Ordering::Greater,
        (false, true) => Ordering::Less,
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<u64> {
    assert!(n <= 64);
    let mut out = Vec::with_capacity(binomial(n, k) as usize);
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(mask_from(&idx));
        // advance the rightmost index that still has room
        let Some(pos) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return out;
        };
        idx[pos] += 1;
        for j in pos + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn indices(m: u64) -> Vec<usize> {
        mask_indices(m).collect()
    }

    #[test]
    fn combinations_are_lexicographic() {
        let c: Vec<Vec<usize>> = combinations(4, 2).into_iter().map(indices).collect();
        assert_eq!(c, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(combinations(3, 0), vec![0]);
        assert_eq!(combinations(3, 3), vec![0b111]);
        assert!(combinations(2, 3).is_empty());
    }

    #[test]
    fn lex_cmp_matches_vec_order() {
        for a in 0u64..64 {
            for b in 0u64..64 {
                assert_eq!(lex_cmp(a, b), indices(a).cmp(&indices(b)), "{a:b} vs {b:b}");
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(12, 6), 924);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(64, 32), 1_832_624_140_942_590_534);
    }
}
