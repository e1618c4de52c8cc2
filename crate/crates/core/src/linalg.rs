//! Small dense linear algebra over Q and over prime fields `F_p`.

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Solves `A x = b` for a square system given as rows `[A | b]`.
/// Returns `None` when `A` is singular.
pub fn solve_augmented(mut m: Vec<Vec<BigRational>>) -> Option<Vec<BigRational>> {
    let n = m.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for v in m[col].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let (pivot_row, row) = if r < col {
                    let (a, b) = m.split_at_mut(col);
                    (&b[0], &mut a[r])
                } else {
                    let (a, b) = m.split_at_mut(r);
                    (&a[col], &mut b[0])
                };
                for (x, p) in row.iter_mut().zip(pivot_row.iter()) {
                    *x = &*x - &f * p;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Rank of a rational matrix.
pub fn rank_rational(mut m: Vec<Vec<BigRational>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = m[rank][col].recip();
        let pivot_row: Vec<BigRational> = m[rank].iter().map(|v| v * &inv).collect();
        for r in rank + 1..rows {
            if !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for (x, p) in m[r].iter_mut().zip(&pivot_row) {
                    *x = &*x - &f * p;
                }
            }
        }
        m[rank] = pivot_row;
        rank += 1;
    }
    rank
}

pub fn identity_rational(n: usize) -> Vec<Vec<BigRational>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect()
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Reduced row echelon form over `F_p` in place; returns pivot columns.
pub fn rref_mod(m: &mut [Vec<u64>], p: u64) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let inv = inv_mod(m[r][c], p);
        for v in m[r].iter_mut() {
            *v = mul_mod(*v, inv, p);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, &pv) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p - mul_mod(f, pv, p)) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the null space of `m` (rows as equations) over `F_p`.
pub fn nullspace_mod(m: &[Vec<u64>], cols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut a: Vec<Vec<u64>> = m.to_vec();
    let pivots = rref_mod(&mut a, p);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = (p - a[i][free]) % p;
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn solve_and_rank() {
        let m = vec![vec![q(2), q(1), q(5)], vec![q(1), q(3), q(10)]];
        let x = solve_augmented(m).unwrap();
        assert_eq!(x, vec![q(1), q(3)]);
        let singular = vec![vec![q(1), q(2), q(0)], vec![q(2), q(4), q(1)]];
        assert!(solve_augmented(singular).is_none());
        assert_eq!(rank_rational(vec![vec![q(1), q(2)], vec![q(2), q(4)]]), 1);
        assert_eq!(rank_rational(identity_rational(3)), 3);
    }

    #[test]
    fn modular_nullspace() {
        let p = 7;
        let m = vec![vec![1, 2, 3], vec![2, 4, 6]];
        let ns = nullspace_mod(&m, 3, p);
        assert_eq!(ns.len(), 2);
        for v in ns {
            let s: u64 = m[0].iter().zip(&v).map(|(a, b)| a * b).sum();
            assert_eq!(s % p, 0);
        }
        assert_eq!(mul_mod(inv_mod(3, 7), 3, 7), 1);
        assert!(is_prime(421) && !is_prime(423));
    }
}
