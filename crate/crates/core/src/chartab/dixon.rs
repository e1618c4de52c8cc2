//! Dixon–Schneider: common eigenvectors of the class matrices over `F_p`,
//! followed by exact recovery of the values from eigenvalue multiplicities.

use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::linalg::{inv_mod, is_prime, mul_mod, nullspace_mod, pow_mod, rref_mod};

/// Smallest prime `p = 1 (mod e)` with `p > 2 * ceil(sqrt(n))`.
pub fn choose_prime(exponent: u64, group_order: u64) -> u64 {
    choose_prime_after(exponent, group_order, 0)
}

/// As [`choose_prime`], skipping the first `skip` suitable primes.
pub fn choose_prime_after(exponent: u64, group_order: u64, skip: u32) -> u64 {
    let root = (group_order as f64).sqrt().ceil() as u64;
    let root = (root.saturating_sub(2)..=root + 2)
        .find(|r| r * r >= group_order)
        .unwrap_or(root);
    let bound = 2 * root;
    let mut p = exponent + 1;
    let mut left = skip;
    loop {
        if p > bound && is_prime(p) {
            if left == 0 {
                return p;
            }
            left -= 1;
        }
        p += exponent;
    }
}

pub fn primitive_root(p: u64) -> u64 {
    let mut factors = Vec::new();
    let mut n = p - 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            factors.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        factors.push(n);
    }
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("prime has a primitive root")
}

/// Class multiplication coefficients `c[r][s][t] = #{x in K_r : x^-1 z_t in K_s}`.
pub fn class_coefficients(g: &Group) -> Vec<Vec<Vec<u32>>> {
    let k = g.num_classes();
    let classes = g.conjugacy_classes();
    let mut c = vec![vec![vec![0u32; k]; k]; k];
    for t in 0..k {
        let z = classes[t].rep_index;
        for x in 0..g.order() {
            let r = g.class_of_index(x);
            let s = g.class_of_index(g.mul(g.inv(x), z));
            c[r][s][t] += 1;
        }
    }
    c
}

fn hessenberg_charpoly(mut h: Vec<Vec<u64>>, p: u64) -> Vec<u64> {
    let n = h.len();
    let sub = |a: u64, b: u64| (a + p - b) % p;
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else {
            continue;
        };
        if i > m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let t = inv_mod(h[m][m - 1], p);
        for i in m + 1..n {
            let u = mul_mod(h[i][m - 1], t, p);
            if u == 0 {
                continue;
            }
            for j in 0..n {
                let v = mul_mod(u, h[m][j], p);
                h[i][j] = sub(h[i][j], v);
            }
            for row in h.iter_mut() {
                let v = mul_mod(u, row[i], p);
                row[m] = (row[m] + v) % p;
            }
        }
    }
    // polys[m] has degree m, coefficients constant term first
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        let prev = &polys[m - 1];
        let mut pm = vec![0u64; m + 1];
        for (d, &c) in prev.iter().enumerate() {
            pm[d + 1] = (pm[d + 1] + c) % p;
            pm[d] = sub(pm[d], mul_mod(h[m - 1][m - 1], c, p));
        }
        let mut t = 1u64;
        for i in 1..m {
            t = mul_mod(t, h[m - i][m - i - 1], p);
            let coef = mul_mod(t, h[m - i - 1][m - 1], p);
            for (d, &c) in polys[m - i - 1].iter().enumerate() {
                pm[d] = sub(pm[d], mul_mod(coef, c, p));
            }
        }
        polys.push(pm);
    }
    polys.pop().unwrap()
}

fn roots_mod(poly: &[u64], p: u64) -> Vec<u64> {
    (0..p)
        .filter(|&x| {
            poly.iter()
                .rev()
                .fold(0u64, |acc, &c| (mul_mod(acc, x, p) + c) % p)
                == 0
        })
        .collect()
}

/// Splits `F_p^k` into the common one-dimensional eigenspaces of the class
/// matrices, returning one eigenvector per irreducible character with
/// first coordinate 1.
fn common_eigenvectors(coeffs: &[Vec<Vec<u32>>], p: u64) -> Result<Vec<Vec<u64>>> {
    let k = coeffs.len();
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..k)
        .map(|i| (0..k).map(|j| u64::from(i == j)).collect())
        .collect()];
    for r in 1..k {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let a = &coeffs[r];
        let mut next = Vec::new();
        for basis in spaces {
            let d = basis.len();
            if d == 1 {
                next.push(basis);
                continue;
            }
            let pivots: Vec<usize> = basis
                .iter()
                .map(|b| b.iter().position(|&x| x != 0).expect("nonzero basis vector"))
                .collect();
            // images of basis vectors under A_r
            let images: Vec<Vec<u64>> = basis
                .iter()
                .map(|b| {
                    (0..k)
                        .map(|s| {
                            a[s].iter()
                                .zip(b)
                                .fold(0u64, |acc, (&c, &v)| (acc + mul_mod(c as u64 % p, v, p)) % p)
                        })
                        .collect()
                })
                .collect();
            let restricted: Vec<Vec<u64>> = (0..d)
                .map(|i| (0..d).map(|j| images[j][pivots[i]]).collect())
                .collect();
            let poly = hessenberg_charpoly(restricted.clone(), p);
            let roots = roots_mod(&poly, p);
            let mut total = 0;
            let mut pieces = Vec::new();
            for lam in roots {
                let shifted: Vec<Vec<u64>> = restricted
                    .iter()
                    .enumerate()
                    .map(|(i, row)| {
                        row.iter()
                            .enumerate()
                            .map(|(j, &x)| if i == j { (x + p - lam) % p } else { x })
                            .collect()
                    })
                    .collect();
                let ns = nullspace_mod(&shifted, d, p);
                total += ns.len();
                let mut vecs: Vec<Vec<u64>> = ns
                    .iter()
                    .map(|c| {
                        (0..k)
                            .map(|t| {
                                c.iter()
                                    .zip(&basis)
                                    .fold(0u64, |acc, (&ci, b)| (acc + mul_mod(ci, b[t], p)) % p)
                            })
                            .collect()
                    })
                    .collect();
                rref_mod(&mut vecs, p);
                pieces.push(vecs);
            }
            if total != d {
                return Err(Error::Corruption(format!(
                    "class matrix {r} is not diagonalizable on a {d}-dimensional space mod {p}"
                )));
            }
            next.extend(pieces);
        }
        spaces = next;
    }
    if spaces.len() != k || spaces.iter().any(|s| s.len() != 1) {
        return Err(Error::Corruption(
            "class matrices failed to split the centre into lines".into(),
        ));
    }
    spaces
        .into_iter()
        .map(|mut s| {
            let v = s.pop().unwrap();
            if v[0] == 0 {
                return Err(Error::Corruption("eigenvector vanishes at the identity".into()));
            }
            let inv = inv_mod(v[0], p);
            Ok(v.into_iter().map(|x| mul_mod(x, inv, p)).collect())
        })
        .collect()
}

/// Irreducible characters of `g` with exact values, one vector per character,
/// value at class `t` stored with conductor the normalized element order.
pub fn compute_characters(g: &Group) -> Result<Vec<Vec<CyclotomicNumber>>> {
    compute_characters_seeded(g, 0)
}

/// The seed selects which suitable prime is used; the resulting table is the same.
pub fn compute_characters_seeded(g: &Group, seed: u64) -> Result<Vec<Vec<CyclotomicNumber>>> {
    let classes = g.conjugacy_classes();
    let k = classes.len();
    let order = g.order() as u64;
    let e = g.exponent();
    let p = choose_prime_after(e, order, (seed % 3) as u32);
    let coeffs = class_coefficients(g);
    let vecs = common_eigenvectors(&coeffs, p)?;
    let z = primitive_root(p);
    let inv_class: Vec<usize> = (0..k).map(|t| g.inverse_class(t)).collect();
    let mut chars = Vec::with_capacity(k);
    for w in vecs {
        // chi(1)^2 = |G| / sum_t w_t w_t* / |K_t|
        let s = (0..k).fold(0u64, |acc, t| {
            let term = mul_mod(
                mul_mod(w[t], w[inv_class[t]], p),
                inv_mod(classes[t].size as u64 % p, p),
                p,
            );
            (acc + term) % p
        });
        if s == 0 {
            return Err(Error::Corruption("degree normalization vanished".into()));
        }
        let deg_sq = mul_mod(order % p, inv_mod(s, p), p);
        let degree = (1..=((order as f64).sqrt() as u64 + 1))
            .find(|&n| order % n == 0 && n * n % p == deg_sq)
            .ok_or_else(|| Error::Corruption(format!("no degree with square {deg_sq} mod {p}")))?;
        let modvals: Vec<u64> = (0..k)
            .map(|t| {
                mul_mod(
                    mul_mod(w[t], degree % p, p),
                    inv_mod(classes[t].size as u64 % p, p),
                    p,
                )
            })
            .collect();
        let mut row = Vec::with_capacity(k);
        for t in 0..k {
            let o = classes[t].element_order as u64;
            let zo = pow_mod(z, (p - 1) / o, p);
            let zo_inv = inv_mod(zo, p);
            let o_inv = inv_mod(o % p, p);
            let mut mult = vec![0i64; o as usize];
            let mut total = 0u64;
            for (a, m) in mult.iter_mut().enumerate() {
                // m_a = (1/o) sum_l chi(z^l) zeta^(-a l)
                let step = pow_mod(zo_inv, a as u64, p);
                let mut acc = 0u64;
                let mut tw = 1u64;
                for l in 0..o {
                    let c = g.power_class(t, l as i64);
                    acc = (acc + mul_mod(modvals[c], tw, p)) % p;
                    tw = mul_mod(tw, step, p);
                }
                let val = mul_mod(acc, o_inv, p);
                if val > degree {
                    return Err(Error::Corruption(format!(
                        "eigenvalue multiplicity {val} exceeds degree {degree}"
                    )));
                }
                *m = val as i64;
                total += val;
            }
            if total != degree {
                return Err(Error::Corruption(format!(
                    "eigenvalue multiplicities sum to {total}, not {degree}"
                )));
            }
            row.push(value_from_multiplicities(o as u32, &mult));
        }
        chars.push(row);
    }
    Ok(chars)
}

/// `sum_a mult[a] zeta_o^a`, written over conductor `o/2` when `o = 2 mod 4`.
pub fn value_from_multiplicities(o: u32, mult: &[i64]) -> CyclotomicNumber {
    if o % 4 == 2 {
        let m = o / 2;
        let h = ((m + 1) / 2) as usize;
        let mut folded = vec![0i64; m as usize];
        for (a, &c) in mult.iter().enumerate() {
            let sign = if a % 2 == 0 { 1 } else { -1 };
            folded[(a * h) % m as usize] += sign * c;
        }
        CyclotomicNumber::from_root_multiplicities(m, &folded)
    } else {
        CyclotomicNumber::from_root_multiplicities(o, mult)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::is_prime;

    #[test]
    fn prime_choices() {
        assert_eq!(choose_prime(420, 15120), 421);
        let p = choose_prime(8 * 9 * 17, 2448);
        assert!(is_prime(p) && p % (8 * 9 * 17) == 1 && p > 2 * 50);
        assert_eq!(primitive_root(7), 3);
    }

    #[test]
    fn charpoly_of_companion() {
        // x^2 - 3x + 2 over F_7 has roots 1 and 2
        let m = vec![vec![0, 5], vec![1, 3]];
        let poly = hessenberg_charpoly(m, 7);
        assert_eq!(poly, vec![2, 4, 1]);
        assert_eq!(roots_mod(&poly, 7), vec![1, 2]);
        let d = vec![vec![1, 2, 3], vec![4, 5, 6], vec![0, 1, 2]];
        let poly = hessenberg_charpoly(d, 11);
        // x^3 - 8x^2 + 3x: trace 8, minors 3, det 0
        assert_eq!(poly, vec![0, 3, 3, 1]);
    }

    #[test]
    fn folding_sixth_roots() {
        // zeta_6 = -zeta_3^2
        let mut m = vec![0i64; 6];
        m[1] = 1;
        let v = value_from_multiplicities(6, &m);
        assert!(v.equals(&CyclotomicNumber::root_of_unity(3, 2).neg()));
    }
}
