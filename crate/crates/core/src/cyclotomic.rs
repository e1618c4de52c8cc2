//! Exact arithmetic in cyclotomic fields `Q(zeta_n)`.
//!
//! An element is stored in the power basis `1, z, .., z^(phi(n)-1)` modulo the
//! `n`-th cyclotomic polynomial, as integer numerators over one positive common
//! denominator. The power basis is an integral basis, so an element is an
//! algebraic integer exactly when the reduced denominator is 1.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Field data for `Q(zeta_n)`: the cyclotomic polynomial and the power-basis
/// expansion of every power of `zeta_n`.
#[derive(Debug)]
struct Field {
    n: u32,
    phi: usize,
    /// Sparse expansion of `zeta^e` for `0 <= e < n`.
    powers: Vec<Vec<(u32, i64)>>,
}

fn field_cache() -> &'static RwLock<FxHashMap<u32, Arc<Field>>> {
    static CACHE: OnceLock<RwLock<FxHashMap<u32, Arc<Field>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(FxHashMap::default()))
}

fn poly_cache() -> &'static RwLock<FxHashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<RwLock<FxHashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(FxHashMap::default()))
}

/// Integer coefficients of the `n`-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    if let Some(p) = poly_cache().read().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Phi_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let div = cyclotomic_polynomial(d);
            num = poly_exact_div(&num, &div);
        }
    }
    let p = Arc::new(num);
    poly_cache().write().unwrap().insert(n, p.clone());
    p
}

fn poly_exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1);
    let qd = rem.len() - 1 - dd;
    let mut q = vec![0i64; qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd];
        q[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

fn field(n: u32) -> Arc<Field> {
    if let Some(f) = field_cache().read().unwrap().get(&n) {
        return f.clone();
    }
    let poly = cyclotomic_polynomial(n);
    let phi = poly.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..n {
        powers.push(
            cur.iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (i as u32, c))
                .collect(),
        );
        // multiply by z and reduce
        let lead = cur[phi - 1];
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if lead != 0 {
            for i in 0..phi {
                cur[i] -= lead * poly[i];
            }
        }
    }
    let f = Arc::new(Field { n, phi, powers });
    field_cache().write().unwrap().insert(n, f.clone());
    f
}

#[derive(Clone)]
pub struct CyclotomicNumber {
    conductor: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CyclotomicNumber {
    pub fn zero(conductor: u32) -> Self {
        let phi = field(conductor.max(1)).phi;
        CyclotomicNumber {
            conductor: conductor.max(1),
            num: vec![BigInt::zero(); phi],
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(v: i64) -> Self {
        CyclotomicNumber {
            conductor: 1,
            num: vec![BigInt::from(v)],
            den: BigInt::one(),
        }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        let mut x = CyclotomicNumber {
            conductor: 1,
            num: vec![r.numer().clone()],
            den: r.denom().clone(),
        };
        x.normalize();
        x
    }

    /// `zeta_n^k`.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        let f = field(n);
        let e = k.rem_euclid(n as i64) as usize;
        let mut num = vec![BigInt::zero(); f.phi];
        for &(i, c) in &f.powers[e] {
            num[i as usize] = BigInt::from(c);
        }
        CyclotomicNumber {
            conductor: n,
            num,
            den: BigInt::one(),
        }
    }

    /// `sum_a mult[a] * zeta_n^a` for a multiplicity vector of length `n`.
    pub fn from_root_multiplicities(n: u32, mult: &[i64]) -> Self {
        let f = field(n);
        let mut acc = vec![0i64; f.phi];
        for (a, &m) in mult.iter().enumerate() {
            if m != 0 {
                for &(i, c) in &f.powers[a % n as usize] {
                    acc[i as usize] += m * c;
                }
            }
        }
        CyclotomicNumber {
            conductor: n,
            num: acc.into_iter().map(BigInt::from).collect(),
            den: BigInt::one(),
        }
    }

    /// Builds a value from rational power-basis coefficients.
    pub fn from_coefficients(n: u32, coeffs: Vec<BigRational>) -> Result<Self> {
        let f = field(n);
        if coeffs.len() != f.phi {
            return Err(Error::Arithmetic(format!(
                "expected {} coefficients for conductor {n}, got {}",
                f.phi,
                coeffs.len()
            )));
        }
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut x = CyclotomicNumber {
            conductor: n,
            num,
            den,
        };
        x.normalize();
        Ok(x)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coefficients(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    /// Integer coefficients if the value is an algebraic integer.
    pub fn integer_coefficients(&self) -> Option<&[BigInt]> {
        self.den.is_one().then_some(&self.num[..])
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in &mut self.num {
                *c = -&*c;
            }
        }
        if self.den.is_one() {
            return;
        }
        let g = self
            .num
            .iter()
            .fold(self.den.clone(), |acc, c| acc.gcd(c));
        if !g.is_one() && !g.is_zero() {
            self.den = &self.den / &g;
            for c in &mut self.num {
                *c = &*c / &g;
            }
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.num.iter().skip(1).all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational()
            .then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    pub fn to_integer(&self) -> Option<i64> {
        if self.is_rational() && self.den.is_one() {
            self.num[0].to_i64()
        } else {
            None
        }
    }

    /// Image in `Q(zeta_m)` for a multiple `m` of the conductor.
    pub fn embed(&self, m: u32) -> Result<Self> {
        if m % self.conductor != 0 {
            return Err(Error::Arithmetic(format!(
                "cannot embed conductor {} into {m}",
                self.conductor
            )));
        }
        if m == self.conductor {
            return Ok(self.clone());
        }
        let f = field(m);
        let step = (m / self.conductor) as usize;
        let mut num = vec![BigInt::zero(); f.phi];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(j, r) in &f.powers[(i * step) % m as usize] {
                num[j as usize] += c * r;
            }
        }
        Ok(CyclotomicNumber {
            conductor: m,
            num,
            den: self.den.clone(),
        })
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        if self.conductor == other.conductor {
            return (self.clone(), other.clone());
        }
        let m = num_integer::lcm(self.conductor, other.conductor);
        (self.embed(m).unwrap(), other.embed(m).unwrap())
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.conductor != other.conductor {
            let (a, b) = self.common(other);
            return a.add(&b);
        }
        let den = self.den.lcm(&other.den);
        let fa = &den / &self.den;
        let fb = &den / &other.den;
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| a * &fa + b * &fb)
            .collect();
        let mut x = CyclotomicNumber {
            conductor: self.conductor,
            num,
            den,
        };
        x.normalize();
        x
    }

    pub fn neg(&self) -> Self {
        CyclotomicNumber {
            conductor: self.conductor,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.conductor != other.conductor {
            let (a, b) = self.common(other);
            return a.mul(&b);
        }
        let f = field(self.conductor);
        let n = f.n as usize;
        let mut acc = vec![BigInt::zero(); f.phi];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let prod = a * b;
                let e = (i + j) % n;
                if e < f.phi {
                    acc[e] += &prod;
                } else {
                    for &(k, r) in &f.powers[e] {
                        acc[k as usize] += &prod * r;
                    }
                }
            }
        }
        let mut x = CyclotomicNumber {
            conductor: self.conductor,
            num: acc,
            den: &self.den * &other.den,
        };
        x.normalize();
        x
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        let mut x = CyclotomicNumber {
            conductor: self.conductor,
            num: self.num.iter().map(|c| c * r.numer()).collect(),
            den: &self.den * r.denom(),
        };
        x.normalize();
        x
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&BigRational::from_integer(BigInt::from(k)))
    }

    /// Multiplicative inverse, by solving the linear system of multiplication
    /// by `self` over Q.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Arithmetic("inverse of zero".into()));
        }
        if let Some(r) = self.to_rational() {
            return Ok(Self::from_rational(&r.recip()));
        }
        let f = field(self.conductor);
        let phi = f.phi;
        // Column j of the matrix is self * z^j.
        let mut m: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); phi + 1]; phi];
        for j in 0..phi {
            let col = self.mul(&CyclotomicNumber::root_of_unity(self.conductor, j as i64));
            for (i, c) in col.coefficients().into_iter().enumerate() {
                m[i][j] = c;
            }
        }
        m[0][phi] = BigRational::one();
        let sol = crate::linalg::solve_augmented(m)
            .ok_or_else(|| Error::Arithmetic("singular multiplication matrix".into()))?;
        Self::from_coefficients(self.conductor, sol)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    /// Image under `zeta -> zeta^k`, defined for `gcd(k, n) = 1`.
    pub fn galois_apply(&self, k: i64) -> Result<Self> {
        let n = self.conductor as i64;
        if n.gcd(&k) != 1 {
            return Err(Error::Arithmetic(format!(
                "{k} is not coprime to conductor {n}"
            )));
        }
        let f = field(self.conductor);
        let k = k.rem_euclid(n) as usize;
        let mut num = vec![BigInt::zero(); f.phi];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(j, r) in &f.powers[(i * k) % n as usize] {
                num[j as usize] += c * r;
            }
        }
        Ok(CyclotomicNumber {
            conductor: self.conductor,
            num,
            den: self.den.clone(),
        })
    }

    /// Complex conjugate.
    pub fn conjugate(&self) -> Self {
        if self.conductor <= 2 {
            return self.clone();
        }
        self.galois_apply(self.conductor as i64 - 1)
            .expect("n-1 is coprime to n")
    }

    /// Value-based comparison: equal across conductors when equal as complex numbers.
    /// Equality as field elements, embedding into a common conductor if needed.
    pub fn equals(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.same_repr(other);
        }
        let (a, b) = self.common(other);
        a.same_repr(&b)
    }

    fn same_repr(&self, other: &Self) -> bool {
        self.conductor == other.conductor && self.den == other.den && self.num == other.num
    }

    /// A fixed total order used for canonical sorting (not a field ordering).
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        let (a, b) = self.common(other);
        for (x, y) in a.num.iter().zip(&b.num) {
            let l = x * &b.den;
            let r = y * &a.den;
            match l.cmp(&r) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    /// Smallest conductor `n` or `n/2` with the same field, so `zeta_{2m}`
    /// for odd `m` is rewritten over `Q(zeta_m)`.
    pub fn normalized_conductor(n: u32) -> u32 {
        if n % 4 == 2 {
            n / 2
        } else {
            n.max(1)
        }
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl Eq for CyclotomicNumber {}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{r}");
        }
        let mut first = true;
        for (i, c) in self.coefficients().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*z{}", self.conductor)?,
                _ => write!(f, "{c}*z{}^{i}", self.conductor)?,
            }
        }
        Ok(())
    }
}

/// JSON form: `{"conductor": n, "coeffs": [[num, den], ..]}` with integers
/// written as numbers when they fit in 64 bits and as strings otherwise.
#[derive(Serialize, Deserialize)]
struct CyclotomicRepr {
    conductor: u32,
    coeffs: Vec<[serde_json::Value; 2]>,
}

fn int_to_json(v: &BigInt) -> serde_json::Value {
    match v.to_i64() {
        Some(i) => serde_json::Value::from(i),
        None => serde_json::Value::from(v.to_string()),
    }
}

fn int_from_json(v: &serde_json::Value) -> std::result::Result<BigInt, String> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| format!("bad integer {n}")),
        serde_json::Value::String(s) => s.parse().map_err(|_| format!("bad integer {s}")),
        other => Err(format!("bad integer {other}")),
    }
}

impl Serialize for CyclotomicNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs = self
            .coefficients()
            .iter()
            .map(|c| [int_to_json(c.numer()), int_to_json(c.denom())])
            .collect();
        CyclotomicRepr {
            conductor: self.conductor,
            coeffs,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CyclotomicNumber {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = CyclotomicRepr::deserialize(d)?;
        if repr.conductor == 0 {
            return Err(D::Error::custom("conductor must be positive"));
        }
        let mut coeffs = Vec::with_capacity(repr.coeffs.len());
        for [n, q] in &repr.coeffs {
            let n = int_from_json(n).map_err(D::Error::custom)?;
            let q = int_from_json(q).map_err(D::Error::custom)?;
            if q.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            coeffs.push(BigRational::new(n, q));
        }
        CyclotomicNumber::from_coefficients(repr.conductor, coeffs).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(n: u32, k: i64) -> CyclotomicNumber {
        CyclotomicNumber::root_of_unity(n, k)
    }

    fn int(v: i64) -> CyclotomicNumber {
        CyclotomicNumber::from_integer(v)
    }

    #[test]
    fn small_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(105).len() - 1, 48);
        assert!(cyclotomic_polynomial(105).contains(&-2));
    }

    #[test]
    fn basic_identities() {
        assert!(z(4, 1).mul(&z(4, 1)).equals(&int(-1)));
        assert!(z(3, 1).add(&z(3, 2)).equals(&int(-1)));
        let i = z(4, 1);
        let a = int(1).add(&i.scale_int(2));
        let b = int(1).sub(&i.scale_int(2));
        assert!(a.mul(&b).equals(&int(5)));
    }

    #[test]
    fn conjugation_and_galois() {
        assert!(z(8, 1).conjugate().equals(&z(8, 7)));
        let mut x = z(5, 1);
        for _ in 0..4 {
            x = x.galois_apply(2).unwrap();
        }
        assert!(x.equals(&z(5, 1)));
        assert!(z(5, 1).galois_apply(2).unwrap().equals(&z(5, 2)));
        assert!(int(7).conjugate().equals(&int(7)));
        assert!(z(6, 1).galois_apply(3).is_err());
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert!(CyclotomicNumber::zero(5).inverse().is_err());
        let x = int(1).add(&z(5, 1));
        let y = x.inverse().unwrap();
        assert!(x.mul(&y).equals(&int(1)));
    }

    #[test]
    fn embedding_respects_roots() {
        // zeta_6 = -zeta_3^2
        assert!(z(6, 1).equals(&z(3, 2).neg()));
        assert!(z(3, 1).embed(12).unwrap().equals(&z(12, 4)));
        assert!(z(4, 1).embed(3).is_err());
    }

    #[test]
    fn json_round_trip() {
        let x = z(8, 1).scale(&BigRational::new(3.into(), 4.into())).add(&int(2));
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"conductor":8,"coeffs":[[2,1],[3,4],[0,1],[0,1]]}"#);
        let y: CyclotomicNumber = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
    }

    fn arb(n: u32) -> impl Strategy<Value = CyclotomicNumber> {
        let phi = euler_phi(n as u64) as usize;
        prop::collection::vec(-5i64..6, phi).prop_map(move |v| {
            CyclotomicNumber::from_coefficients(
                n,
                v.into_iter()
                    .map(|c| BigRational::from_integer(c.into()))
                    .collect(),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn field_laws(a in arb(12), b in arb(12), c in arb(12)) {
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.conjugate().conjugate(), a.clone());
            // Galois action is multiplicative and additive.
            let g = |x: &CyclotomicNumber| x.galois_apply(5).unwrap();
            prop_assert_eq!(g(&a.mul(&b)), g(&a).mul(&g(&b)));
            prop_assert_eq!(g(&a.add(&b)), g(&a).add(&g(&b)));
        }

        #[test]
        fn embedding_round_trip(a in arb(5), b in arb(5)) {
            let ea = a.embed(20).unwrap();
            prop_assert!(ea.equals(&a));
            prop_assert!(ea.mul(&b.embed(20).unwrap()).equals(&a.mul(&b)));
        }

        #[test]
        fn inverse_works(a in arb(8)) {
            prop_assume!(!a.is_zero());
            let inv = a.inverse().unwrap();
            prop_assert!(a.mul(&inv).equals(&CyclotomicNumber::one()));
        }
    }
}
