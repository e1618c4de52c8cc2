//! Arithmetic over `F_2`: polynomials, the extension fields `F_{2^k}` for
//! `k < 64`, and reduction of cyclotomic integers modulo a prime above 2.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{cyclotomic_polynomial, CyclotomicNumber};
use crate::error::{Error, Result};

/// Polynomial over `F_2`, bit `i` of the packed words is the coefficient of `x^i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Poly {
    words: Vec<u64>,
}

impl F2Poly {
    pub fn zero() -> Self {
        F2Poly { words: Vec::new() }
    }

    pub fn one() -> Self {
        F2Poly { words: vec![1] }
    }

    pub fn x() -> Self {
        F2Poly { words: vec![2] }
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut p = F2Poly::zero();
        for (i, &b) in bits.iter().enumerate() {
            if b {
                p.flip(i);
            }
        }
        p
    }

    pub fn from_u64(v: u64) -> Self {
        let mut p = F2Poly { words: vec![v] };
        p.trim();
        p
    }

    /// The polynomial as an integer, if it fits.
    pub fn to_u64(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - last.leading_zeros() as usize)
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words
            .get(i / 64)
            .is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }

    pub fn flip(&mut self, i: usize) {
        if self.words.len() <= i / 64 {
            self.words.resize(i / 64 + 1, 0);
        }
        self.words[i / 64] ^= 1 << (i % 64);
        self.trim();
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.words.len().max(other.words.len());
        let mut words = vec![0u64; n];
        for (i, w) in words.iter_mut().enumerate() {
            *w = self.words.get(i).copied().unwrap_or(0) ^ other.words.get(i).copied().unwrap_or(0);
        }
        let mut p = F2Poly { words };
        p.trim();
        p
    }

    fn shl(&self, s: usize) -> Self {
        if self.is_zero() {
            return F2Poly::zero();
        }
        let (ws, bs) = (s / 64, s % 64);
        let mut words = vec![0u64; self.words.len() + ws + 1];
        for (i, &w) in self.words.iter().enumerate() {
            words[i + ws] ^= w << bs;
            if bs > 0 {
                words[i + ws + 1] ^= w >> (64 - bs);
            }
        }
        let mut p = F2Poly { words };
        p.trim();
        p
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut acc = F2Poly::zero();
        if let Some(d) = other.degree() {
            for i in 0..=d {
                if other.coeff(i) {
                    acc = acc.add(&self.shl(i));
                }
            }
        }
        acc
    }

    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let mut rem = self.clone();
        let mut quo = F2Poly::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            quo.flip(rd - dd);
            rem = rem.add(&divisor.shl(rd - dd));
        }
        (quo, rem)
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    pub fn mul_mod(&self, other: &Self, m: &Self) -> Self {
        self.mul(other).rem(m)
    }

    /// Reduction of an integer polynomial modulo 2.
    pub fn from_integer_coeffs(coeffs: &[i64]) -> Self {
        let bits: Vec<bool> = coeffs.iter().map(|c| c.rem_euclid(2) == 1).collect();
        F2Poly::from_bits(&bits)
    }
}

impl fmt::Debug for F2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for F2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(d) = self.degree() else {
            return write!(f, "0");
        };
        let mut first = true;
        for i in (0..=d).rev() {
            if self.coeff(i) {
                if !first {
                    write!(f, "+")?;
                }
                first = false;
                match i {
                    0 => write!(f, "1")?,
                    1 => write!(f, "x")?,
                    _ => write!(f, "x^{i}")?,
                }
            }
        }
        Ok(())
    }
}

/// Splits a squarefree polynomial whose irreducible factors all have degree
/// `k` (equal-degree factorization with the trace map).
pub fn equal_degree_factors(g: &F2Poly, k: usize, seed: u64) -> Vec<F2Poly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut todo = vec![g.clone()];
    let mut done = Vec::new();
    while let Some(h) = todo.pop() {
        let d = h.degree().unwrap_or(0);
        if d <= k {
            if d > 0 {
                done.push(h);
            }
            continue;
        }
        loop {
            let bits: Vec<bool> = (0..d).map(|_| rng.gen()).collect();
            let a = F2Poly::from_bits(&bits);
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            // T(a) = a + a^2 + .. + a^(2^(k-1)) mod h
            let mut t = a.clone();
            let mut sq = a.clone();
            for _ in 1..k {
                sq = sq.mul_mod(&sq, &h);
                t = t.add(&sq);
            }
            let f = h.gcd(&t);
            let fd = f.degree().unwrap_or(0);
            if fd > 0 && fd < d {
                let (q, r) = h.div_rem(&f);
                debug_assert!(r.is_zero());
                todo.push(f);
                todo.push(q);
                break;
            }
        }
    }
    done.sort();
    done
}

/// Multiplicative order of 2 modulo an odd `m`.
pub fn order_of_two(m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    let mut k = 1;
    let mut v = 2 % m;
    while v != 1 {
        v = v * 2 % m;
        k += 1;
    }
    k
}

/// The finite field `F_2[x]/(f)` for an irreducible `f` of degree below 64.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct F2kField {
    modulus: u64,
    degree: u32,
}

/// Element of `F_{2^k}`, stored as a polynomial of degree below `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct F2kElement(pub u64);

impl F2kElement {
    pub const ZERO: F2kElement = F2kElement(0);
    pub const ONE: F2kElement = F2kElement(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for F2kElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", F2Poly::from_u64(self.0))
    }
}

impl F2kField {
    pub fn new(modulus: &F2Poly) -> Result<Self> {
        let degree = modulus
            .degree()
            .filter(|&d| (1..64).contains(&d))
            .ok_or_else(|| Error::Unsupported(format!("F_2 extension of modulus {modulus}")))?;
        Ok(F2kField {
            modulus: modulus.to_u64().expect("degree below 64"),
            degree: degree as u32,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn modulus(&self) -> F2Poly {
        F2Poly::from_u64(self.modulus)
    }

    pub fn add(&self, a: F2kElement, b: F2kElement) -> F2kElement {
        F2kElement(a.0 ^ b.0)
    }

    pub fn mul(&self, a: F2kElement, b: F2kElement) -> F2kElement {
        let mut prod: u128 = 0;
        let mut x = a.0 as u128;
        let mut y = b.0;
        while y != 0 {
            if y & 1 == 1 {
                prod ^= x;
            }
            x <<= 1;
            y >>= 1;
        }
        let k = self.degree as u32;
        let m = self.modulus as u128;
        for bit in (k..2 * k).rev() {
            if (prod >> bit) & 1 == 1 {
                prod ^= m << (bit - k);
            }
        }
        F2kElement(prod as u64)
    }

    pub fn pow(&self, a: F2kElement, mut e: u64) -> F2kElement {
        let mut acc = F2kElement::ONE;
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

    pub fn inverse(&self, a: F2kElement) -> Result<F2kElement> {
        if a.is_zero() {
            return Err(Error::Arithmetic("inverse of zero in F_2^k".into()));
        }
        Ok(self.pow(a, (1u64 << self.degree) - 2))
    }

    /// The class of `x`.
    pub fn generator(&self) -> F2kElement {
        if self.degree == 1 {
            // x = 1 mod x+1
            F2kElement(if self.modulus == 0b11 { 1 } else { 0 })
        } else {
            F2kElement(2)
        }
    }
}

/// Reduction of cyclotomic integers whose conductors divide a fixed group
/// exponent, modulo a fixed prime above 2.
#[derive(Clone, Debug)]
pub struct Mod2Reducer {
    exponent: u64,
    odd_part: u64,
    field: F2kField,
    /// Powers of the chosen primitive `odd_part`-th root of unity.
    powers: Vec<F2kElement>,
    /// Image exponent of `zeta_exponent`.
    u: u64,
}

impl Mod2Reducer {
    pub const SEED: u64 = 0x2_2_2;

    pub fn new(exponent: u64) -> Result<Self> {
        let mut odd_part = exponent.max(1);
        let mut two_power = 1u64;
        while odd_part % 2 == 0 {
            odd_part /= 2;
            two_power *= 2;
        }
        let k = order_of_two(odd_part) as usize;
        if k >= 64 {
            return Err(Error::Unsupported(format!(
                "residue field of degree {k} for exponent {exponent}"
            )));
        }
        let modulus = if odd_part == 1 {
            F2Poly::from_u64(0b11)
        } else {
            let phi = F2Poly::from_integer_coeffs(&cyclotomic_polynomial(odd_part as u32));
            let factors = equal_degree_factors(&phi, k, Self::SEED);
            factors
                .into_iter()
                .min_by_key(|f| f.to_u64().unwrap_or(u64::MAX))
                .ok_or_else(|| Error::Arithmetic("empty factorization".into()))?
        };
        let field = F2kField::new(&modulus)?;
        let t = field.generator();
        let powers: Vec<F2kElement> = (0..odd_part).map(|i| field.pow(t, i)).collect();
        if odd_part > 1 {
            debug_assert_eq!(field.pow(t, odd_part), F2kElement::ONE);
        }
        let u = if odd_part == 1 {
            0
        } else {
            let tp = BigInt::from(two_power % odd_part);
            let m = BigInt::from(odd_part);
            let g = tp.extended_gcd(&m);
            g.x.mod_floor(&m).try_into().expect("fits")
        };
        Ok(Mod2Reducer {
            exponent: exponent.max(1),
            odd_part,
            field,
            powers,
            u,
        })
    }

    pub fn field(&self) -> &F2kField {
        &self.field
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Image of `zeta_n^j` for `n` dividing the exponent.
    pub fn root_image(&self, n: u64, j: u64) -> Result<F2kElement> {
        if self.exponent % n != 0 {
            return Err(Error::Arithmetic(format!(
                "conductor {n} does not divide exponent {}",
                self.exponent
            )));
        }
        if self.odd_part == 1 {
            return Ok(F2kElement::ONE);
        }
        let step = ((self.exponent / n) % self.odd_part) * self.u % self.odd_part;
        let e = (step as u128 * (j % n) as u128 % self.odd_part as u128) as usize;
        Ok(self.powers[e])
    }

    /// Reduction of a 2-integral cyclotomic number.
    pub fn reduce(&self, x: &CyclotomicNumber) -> Result<F2kElement> {
        let n = x.conductor() as u64;
        let coeffs = x.coefficients();
        let mut acc = F2kElement::ZERO;
        for (j, c) in coeffs.iter().enumerate() {
            if c.denom().is_even() {
                return Err(Error::Arithmetic(format!("{x} is not 2-integral")));
            }
            if c.numer().is_odd() {
                acc = self.field.add(acc, self.root_image(n, j as u64)?);
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn polynomial_arithmetic() {
        let a = F2Poly::from_u64(0b111); // x^2+x+1
        let b = F2Poly::from_u64(0b11); // x+1
        assert_eq!(a.mul(&b), F2Poly::from_u64(0b1001)); // x^3+1
        assert_eq!(F2Poly::from_u64(0b1001).div_rem(&b), (a.clone(), F2Poly::zero()));
        assert_eq!(a.to_string(), "x^2+x+1");
        let big = F2Poly::one().shl(100).add(&F2Poly::one());
        assert_eq!(big.degree(), Some(100));
        assert_eq!(big.rem(&big), F2Poly::zero());
    }

    #[test]
    fn phi7_splits_into_two_cubics() {
        let phi = F2Poly::from_integer_coeffs(&cyclotomic_polynomial(7));
        let f = equal_degree_factors(&phi, 3, 1);
        assert_eq!(f, vec![F2Poly::from_u64(0b1011), F2Poly::from_u64(0b1101)]);
    }

    #[test]
    fn factorization_is_seed_independent_after_sorting() {
        let phi = F2Poly::from_integer_coeffs(&cyclotomic_polynomial(105));
        let k = order_of_two(105) as usize;
        let a = equal_degree_factors(&phi, k, 1);
        let b = equal_degree_factors(&phi, k, 99);
        assert_eq!(a, b);
        assert_eq!(a.len(), 48 / k);
        let prod = a.iter().fold(F2Poly::one(), |acc, f| acc.mul(f));
        assert_eq!(prod, phi);
    }

    #[test]
    fn reducer_respects_roots() {
        let r = Mod2Reducer::new(24).unwrap();
        // zeta_3 + zeta_3^2 = -1 reduces to 1
        let s = CyclotomicNumber::root_of_unity(3, 1).add(&CyclotomicNumber::root_of_unity(3, 2));
        assert_eq!(r.reduce(&s).unwrap(), F2kElement::ONE);
        // zeta_8 reduces to 1
        assert_eq!(
            r.reduce(&CyclotomicNumber::root_of_unity(8, 3)).unwrap(),
            F2kElement::ONE
        );
        let half = CyclotomicNumber::from_rational(&num_rational::BigRational::new(1.into(), 2.into()));
        assert!(r.reduce(&half).is_err());
        let third = CyclotomicNumber::from_rational(&num_rational::BigRational::new(1.into(), 3.into()));
        assert_eq!(r.reduce(&third).unwrap(), F2kElement::ONE);
    }

    proptest! {
        #[test]
        fn reduction_is_a_ring_map(a in prop::collection::vec(-3i64..4, 8), b in prop::collection::vec(-3i64..4, 8)) {
            // conductor 15 inside exponent 60
            let r = Mod2Reducer::new(60).unwrap();
            let x = CyclotomicNumber::from_root_multiplicities(15, &a);
            let y = CyclotomicNumber::from_root_multiplicities(15, &b);
            let f = r.field();
            prop_assert_eq!(r.reduce(&x.mul(&y)).unwrap(), f.mul(r.reduce(&x).unwrap(), r.reduce(&y).unwrap()));
            prop_assert_eq!(r.reduce(&x.add(&y)).unwrap(), f.add(r.reduce(&x).unwrap(), r.reduce(&y).unwrap()));
            // compatibility across conductors
            let e = x.embed(60).unwrap();
            prop_assert_eq!(r.reduce(&e).unwrap(), r.reduce(&x).unwrap());
        }

        #[test]
        fn field_inverse(v in 1u64..(1 << 12)) {
            let phi = F2Poly::from_integer_coeffs(&cyclotomic_polynomial(105));
            let f = equal_degree_factors(&phi, 12, 0)[0].clone();
            let k = F2kField::new(&f).unwrap();
            let a = F2kElement(v);
            prop_assert_eq!(k.mul(a, k.inverse(a).unwrap()), F2kElement::ONE);
        }
    }
}
