//! Small finite fields `GF(p^k)` with `p` odd and `k <= 2`, and 2x2 matrices
//! over them, as needed for the linear groups of dimension two.

use crate::error::{Error, Result};
use crate::linalg::is_prime;

/// `GF(q)` with elements encoded as `a + p*b` for `a + b*s`, `s^2 = n` a nonsquare.
#[derive(Clone, Debug)]
pub struct Gf {
    p: u32,
    k: u32,
    q: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
    primitive: u32,
}

impl Gf {
    pub fn new(q: u32) -> Result<Gf> {
        let (p, k) = prime_power(q)
            .filter(|&(p, k)| p % 2 == 1 && k <= 2)
            .ok_or_else(|| Error::Unsupported(format!("field of order {q}")))?;
        let n = if k == 2 {
            (2..p)
                .find(|&n| (1..p).all(|x| x * x % p != n))
                .expect("odd prime has a nonsquare")
        } else {
            0
        };
        let split = |e: u32| (e % p, e / p);
        let mut add = vec![0u32; (q * q) as usize];
        let mut mul = vec![0u32; (q * q) as usize];
        for x in 0..q {
            for y in 0..q {
                let (a, b) = split(x);
                let (c, d) = split(y);
                add[(x * q + y) as usize] = (a + c) % p + p * ((b + d) % p);
                let re = (a * c + b * d % p * n) % p;
                let im = (a * d + b * c) % p;
                mul[(x * q + y) as usize] = if k == 1 { a * c % p } else { re + p * im };
            }
        }
        let mut f = Gf {
            p,
            k,
            q,
            add,
            mul,
            primitive: 0,
        };
        f.primitive = (2..q)
            .find(|&x| f.mult_order(x) == q - 1)
            .unwrap_or(if q == 3 { 2 } else { 1 });
        Ok(f)
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn primitive(&self) -> u32 {
        self.primitive
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }

    pub fn neg(&self, a: u32) -> u32 {
        let (x, y) = (a % self.p, a / self.p);
        (self.p - x) % self.p + self.p * ((self.p - y) % self.p)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut acc = 1;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        self.pow(a, (self.q - 2) as u64)
    }

    pub fn mult_order(&self, a: u32) -> u32 {
        if a == 0 {
            return 0;
        }
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// `x -> x^p`.
    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.p as u64)
    }

    pub fn is_square(&self, a: u32) -> bool {
        a == 0 || self.pow(a, ((self.q - 1) / 2) as u64) == 1
    }
}

pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    if !is_prime(p as u64) {
        return None;
    }
    let (mut r, mut k) = (q, 0);
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

/// 2x2 matrix `[a, b, c, d]` for `(a b; c d)`, acting on row vectors from the right.
pub type Mat2 = [u32; 4];

pub fn mat_mul(f: &Gf, x: &Mat2, y: &Mat2) -> Mat2 {
    [
        f.add(f.mul(x[0], y[0]), f.mul(x[1], y[2])),
        f.add(f.mul(x[0], y[1]), f.mul(x[1], y[3])),
        f.add(f.mul(x[2], y[0]), f.mul(x[3], y[2])),
        f.add(f.mul(x[2], y[1]), f.mul(x[3], y[3])),
    ]
}

pub fn mat_det(f: &Gf, x: &Mat2) -> u32 {
    f.sub(f.mul(x[0], x[3]), f.mul(x[1], x[2]))
}

pub fn mat_inv(f: &Gf, x: &Mat2) -> Result<Mat2> {
    let det = mat_det(f, x);
    if det == 0 {
        return Err(Error::Arithmetic("singular matrix".into()));
    }
    let di = f.inv(det);
    Ok([
        f.mul(x[3], di),
        f.mul(f.neg(x[1]), di),
        f.mul(f.neg(x[2]), di),
        f.mul(x[0], di),
    ])
}

/// `v * M` for a row vector `v`.
pub fn vec_mul(f: &Gf, v: [u32; 2], m: &Mat2) -> [u32; 2] {
    [
        f.add(f.mul(v[0], m[0]), f.mul(v[1], m[2])),
        f.add(f.mul(v[0], m[1]), f.mul(v[1], m[3])),
    ]
}

/// Index of the projective point of a nonzero vector: `(x : 1) -> x`, `(1 : 0) -> q`.
pub fn projective_index(f: &Gf, v: [u32; 2]) -> usize {
    if v[1] == 0 {
        f.order() as usize
    } else {
        f.mul(v[0], f.inv(v[1])) as usize
    }
}

pub fn projective_point(f: &Gf, i: usize) -> [u32; 2] {
    if i == f.order() as usize {
        [1, 0]
    } else {
        [i as u32, 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small() {
        for q in [3, 5, 7, 9, 25] {
            let f = Gf::new(q).unwrap();
            assert_eq!(f.mult_order(f.primitive()), q - 1);
            for a in 1..q {
                assert_eq!(f.mul(a, f.inv(a)), 1, "q={q} a={a}");
                assert_eq!(f.add(a, f.neg(a)), 0);
            }
            let squares = (1..q).filter(|&a| f.is_square(a)).count();
            assert_eq!(squares as u32, (q - 1) / 2);
        }
        assert!(Gf::new(8).is_err());
        assert!(Gf::new(27).is_err());
        assert!(Gf::new(6).is_err());
    }

    #[test]
    fn frobenius_is_additive_and_multiplicative() {
        let f = Gf::new(9).unwrap();
        for a in 0..9 {
            for b in 0..9 {
                assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
                assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
            }
        }
        assert!((0..9).any(|a| f.frobenius(a) != a));
    }

    #[test]
    fn matrices() {
        let f = Gf::new(7).unwrap();
        let m: Mat2 = [2, 3, 1, 4];
        let mi = mat_inv(&f, &m).unwrap();
        assert_eq!(mat_mul(&f, &m, &mi), [1, 0, 0, 1]);
        assert_eq!(projective_index(&f, vec_mul(&f, [1, 0], &[0, 1, 1, 0])), 0);
        assert!(mat_inv(&f, &[1, 2, 2, 4]).is_err());
    }
}
