//! Ordinary character tables with exact cyclotomic values.

pub mod dixon;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::group::Group;

/// One value per conjugacy class of the owning table.
pub type ClassFunction = Vec<CyclotomicNumber>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassInfo {
    pub order: u32,
    pub size: usize,
    /// `powermap[k]` is the class of `rep^k` for `0 <= k < order`.
    pub powermap: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharacterTable {
    pub group_order: usize,
    pub classes: Vec<ClassInfo>,
    pub chars: Vec<ClassFunction>,
    pub eps: Vec<i8>,
}

/// Sum of cyclotomic numbers of mixed conductors, grouping by conductor first.
pub fn sum_mixed<'a>(items: impl IntoIterator<Item = CyclotomicNumber>) -> CyclotomicNumber {
    let mut by_cond: FxHashMap<u32, CyclotomicNumber> = FxHashMap::default();
    for x in items {
        let c = x.conductor();
        match by_cond.get_mut(&c) {
            Some(acc) => *acc = acc.add(&x),
            None => {
                by_cond.insert(c, x);
            }
        }
    }
    let mut keys: Vec<u32> = by_cond.keys().copied().collect();
    keys.sort_unstable();
    keys.into_iter()
        .fold(CyclotomicNumber::from_integer(0), |acc, k| acc.add(&by_cond[&k]))
}

fn ratio(n: usize, d: usize) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl CharacterTable {
    /// Computes the table, verifies orthogonality exactly and sorts characters
    /// canonically (trivial first, then by degree and value vector).
    pub fn compute(g: &Group) -> Result<CharacterTable> {
        CharacterTable::compute_seeded(g, 0)
    }

    /// As [`CharacterTable::compute`]; the seed only changes the prime used internally.
    pub fn compute_seeded(g: &Group, seed: u64) -> Result<CharacterTable> {
        let classes = class_infos(g);
        let mut chars = dixon::compute_characters_seeded(g, seed)?;
        let trivial = |c: &ClassFunction| c.iter().all(|v| v.to_integer() == Some(1));
        chars.sort_by(|a, b| {
            let da = a[0].to_integer().unwrap_or(0);
            let db = b[0].to_integer().unwrap_or(0);
            trivial(b)
                .cmp(&trivial(a))
                .then(da.cmp(&db))
                .then_with(|| {
                    a.iter()
                        .zip(b)
                        .map(|(x, y)| x.canonical_cmp(y))
                        .find(|o| *o != Ordering::Equal)
                        .unwrap_or(Ordering::Equal)
                })
        });
        let mut table = CharacterTable {
            group_order: g.order(),
            classes,
            chars,
            eps: Vec::new(),
        };
        table.verify_orthogonality()?;
        table.eps = (0..table.chars.len())
            .map(|i| table.compute_fs_indicator(i))
            .collect::<Result<_>>()?;
        Ok(table)
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn num_chars(&self) -> usize {
        self.chars.len()
    }

    pub fn degree(&self, chi: usize) -> u64 {
        self.chars[chi][0].to_integer().expect("degree is an integer") as u64
    }

    pub fn power_class(&self, t: usize, k: i64) -> usize {
        let pm = &self.classes[t].powermap;
        pm[k.rem_euclid(pm.len() as i64) as usize]
    }

    pub fn inverse_class(&self, t: usize) -> usize {
        self.power_class(t, -1)
    }

    pub fn centralizer_order(&self, t: usize) -> usize {
        self.group_order / self.classes[t].size
    }

    pub fn exponent(&self) -> u64 {
        self.classes
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.order as u64))
    }

    /// `(1/|G|) sum_t |K_t| a(t) conj(b(t))`.
    pub fn inner_product(&self, a: &[CyclotomicNumber], b: &[CyclotomicNumber]) -> CyclotomicNumber {
        self.inner_product_over(a, b, |_| true)
    }

    /// Inner product restricted to classes of odd element order, `[a, b]^0`.
    pub fn inner_product_odd(&self, a: &[CyclotomicNumber], b: &[CyclotomicNumber]) -> CyclotomicNumber {
        self.inner_product_over(a, b, |c| c.order % 2 == 1)
    }

    fn inner_product_over(
        &self,
        a: &[CyclotomicNumber],
        b: &[CyclotomicNumber],
        keep: impl Fn(&ClassInfo) -> bool,
    ) -> CyclotomicNumber {
        let terms = self.classes.iter().enumerate().filter(|(_, c)| keep(c)).map(|(t, c)| {
            a[t].mul(&b[t].conjugate()).scale_int(c.size as i64)
        });
        sum_mixed(terms).scale(&ratio(1, self.group_order))
    }

    /// Row and column orthogonality, checked exactly.
    pub fn verify_orthogonality(&self) -> Result<()> {
        let k = self.num_classes();
        if self.chars.len() != k {
            return Err(Error::Corruption(format!(
                "{} characters for {k} classes",
                self.chars.len()
            )));
        }
        let sq: u64 = (0..k).map(|i| self.degree(i).pow(2)).sum();
        if sq != self.group_order as u64 {
            return Err(Error::Corruption(format!(
                "sum of squared degrees {sq} != {}",
                self.group_order
            )));
        }
        for i in 0..k {
            for j in i..k {
                let ip = self.inner_product(&self.chars[i], &self.chars[j]);
                let want = i64::from(i == j);
                if ip.to_integer() != Some(want) {
                    return Err(Error::Corruption(format!(
                        "<chi_{i}, chi_{j}> = {ip}, expected {want}"
                    )));
                }
            }
        }
        for s in 0..k {
            for t in s..k {
                let v = sum_mixed(
                    self.chars
                        .iter()
                        .map(|c| c[s].mul(&c[t].conjugate())),
                );
                let want = if s == t { self.centralizer_order(s) as i64 } else { 0 };
                if v.to_integer() != Some(want) {
                    return Err(Error::Corruption(format!(
                        "column orthogonality at ({s},{t}): {v}, expected {want}"
                    )));
                }
            }
        }
        Ok(())
    }

    fn compute_fs_indicator(&self, chi: usize) -> Result<i8> {
        let terms = (0..self.num_classes()).map(|t| {
            self.chars[chi][self.power_class(t, 2)].scale_int(self.classes[t].size as i64)
        });
        let v = sum_mixed(terms).scale(&ratio(1, self.group_order));
        match v.to_integer() {
            Some(x @ -1..=1) => Ok(x as i8),
            _ => Err(Error::Corruption(format!("indicator of chi_{chi} is {v}"))),
        }
    }

    pub fn fs_indicator(&self, chi: usize) -> i8 {
        self.eps[chi]
    }

    /// `theta(g) = #{y : y^2 = g}` as `sum_chi eps(chi) chi`.
    pub fn sqrt_count_function(&self) -> Result<Vec<i64>> {
        (0..self.num_classes())
            .map(|t| {
                let v = sum_mixed(
                    self.chars
                        .iter()
                        .zip(&self.eps)
                        .filter(|(_, &e)| e != 0)
                        .map(|(c, &e)| c[t].scale_int(e as i64)),
                );
                v.to_integer()
                    .ok_or_else(|| Error::Corruption(format!("square-root count {v} at class {t}")))
            })
            .collect()
    }

    /// Compares the square-root counts with direct enumeration.
    pub fn verify_sqrt_counts(&self, g: &Group) -> Result<()> {
        let theta = self.sqrt_count_function()?;
        let mut counts = vec![0usize; self.num_classes()];
        for y in 0..g.order() {
            counts[g.class_of_index(g.mul(y, y))] += 1;
        }
        for t in 0..self.num_classes() {
            let direct = counts[t] / self.classes[t].size;
            if theta[t] != direct as i64 {
                return Err(Error::Corruption(format!(
                    "square roots at class {t}: {} by characters, {direct} by enumeration",
                    theta[t]
                )));
            }
        }
        Ok(())
    }

    pub fn is_real(&self, chi: usize) -> bool {
        (0..self.num_classes()).all(|t| self.chars[chi][self.inverse_class(t)] == self.chars[chi][t])
    }

    pub fn complex_conjugate_index(&self, chi: usize) -> usize {
        self.galois_image(chi, -1).expect("conjugate is irreducible")
    }

    /// Index of `chi^sigma_k`, where `sigma_k(chi)(g) = chi(g^k)`.
    pub fn galois_image(&self, chi: usize, k: i64) -> Option<usize> {
        let k_classes: Vec<usize> = (0..self.num_classes()).map(|t| self.power_class(t, k)).collect();
        (0..self.num_chars()).find(|&j| {
            (0..self.num_classes()).all(|t| self.chars[j][t] == self.chars[chi][k_classes[t]])
        })
    }

    /// Units `k mod e` with `k = 1` modulo the odd part of the exponent.
    pub fn two_galois_units(&self) -> Vec<i64> {
        let e = self.exponent() as i64;
        let mut odd = e;
        while odd % 2 == 0 {
            odd /= 2;
        }
        (1..=e)
            .filter(|&k| k % odd == 1 % odd && num_integer::gcd(k, e) == 1)
            .collect()
    }

    pub fn is_two_rational(&self, chi: usize) -> bool {
        self.two_galois_units()
            .into_iter()
            .all(|k| self.galois_image(chi, k) == Some(chi))
    }

    /// Orbits of the 2-power Galois group on characters ("2-conjugate families").
    pub fn two_conjugate_families(&self) -> Vec<Vec<usize>> {
        let units = self.two_galois_units();
        let mut seen = vec![false; self.num_chars()];
        let mut out = Vec::new();
        for chi in 0..self.num_chars() {
            if seen[chi] {
                continue;
            }
            let mut orbit: Vec<usize> = units
                .iter()
                .map(|&k| self.galois_image(chi, k).expect("Galois permutes irreducibles"))
                .collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &o in &orbit {
                seen[o] = true;
            }
            out.push(orbit);
        }
        out
    }

    /// Number of classes fixed by every 2-power Galois unit acting via power maps.
    pub fn two_rational_class_count(&self) -> usize {
        let units = self.two_galois_units();
        (0..self.num_classes())
            .filter(|&t| units.iter().all(|&k| self.power_class(t, k) == t))
            .count()
    }

    /// `omega_chi(K_t) = |K_t| chi(x_t) / chi(1)`.
    pub fn central_character(&self, chi: usize, t: usize) -> CyclotomicNumber {
        self.chars[chi][t].scale(&ratio(self.classes[t].size, self.degree(chi) as usize))
    }

    /// Values of `chi` restricted to the classes of a subgroup `h` of `g`.
    pub fn restrict(&self, g: &Group, h: &Group, values: &[CyclotomicNumber]) -> Result<ClassFunction> {
        let fusion = class_fusion(g, h)?;
        Ok(fusion.into_iter().map(|t| values[t].clone()).collect())
    }

    /// `theta^G` for a class function `theta` on `h`, given `h`'s class data.
    pub fn induce(&self, g: &Group, h: &Group, theta: &[CyclotomicNumber]) -> Result<ClassFunction> {
        let fusion = class_fusion(g, h)?;
        let hc = h.conjugacy_classes();
        let mut parts: Vec<Vec<CyclotomicNumber>> = vec![Vec::new(); self.num_classes()];
        for (l, &t) in fusion.iter().enumerate() {
            parts[t].push(theta[l].scale(&ratio(1, hc[l].centralizer_order)));
        }
        Ok(parts
            .into_iter()
            .enumerate()
            .map(|(t, ps)| sum_mixed(ps).scale_int(self.centralizer_order(t) as i64))
            .collect())
    }

    /// Number of points fixed by each class representative of `g` on its own points.
    pub fn permutation_character(g: &Group) -> ClassFunction {
        g.conjugacy_classes()
            .iter()
            .map(|c| {
                let fixed = (0..g.degree()).filter(|&i| c.representative.apply(i) == i).count();
                CyclotomicNumber::from_integer(fixed as i64)
            })
            .collect()
    }

    /// Checks a deserialized table against a group's class data and re-verifies it.
    pub fn validate_against(&self, g: &Group) -> Result<()> {
        if self.group_order != g.order() || self.classes != class_infos(g) {
            return Err(Error::Corruption("cached table does not match group classes".into()));
        }
        self.verify_orthogonality()?;
        for i in 0..self.num_chars() {
            if self.compute_fs_indicator(i)? != self.eps[i] {
                return Err(Error::Corruption("cached indicators are stale".into()));
            }
        }
        Ok(())
    }
}

pub fn class_infos(g: &Group) -> Vec<ClassInfo> {
    g.conjugacy_classes()
        .iter()
        .map(|c| ClassInfo {
            order: c.element_order,
            size: c.size,
            powermap: (0..c.element_order as i64).map(|k| g.power_class(c.index, k)).collect(),
        })
        .collect()
}

/// For each class of `h`, the class of `g` containing it.
pub fn class_fusion(g: &Group, h: &Group) -> Result<Vec<usize>> {
    if !h.is_subgroup_of(g) {
        return Err(Error::NotSubgroup("class fusion".into()));
    }
    h.conjugacy_classes()
        .iter()
        .map(|c| g.class_of(&c.representative))
        .collect()
}

/// Rational value of a cyclotomic number that must be rational.
pub fn expect_rational(x: &CyclotomicNumber, what: &str) -> Result<BigRational> {
    x.to_rational()
        .ok_or_else(|| Error::Corruption(format!("{what} = {x} is not rational")))
}

/// Integer value of a cyclotomic number that must be a nonnegative integer.
pub fn expect_count(x: &CyclotomicNumber, what: &str) -> Result<i64> {
    let r = expect_rational(x, what)?;
    if !r.is_integer() || r.is_negative() {
        return Err(Error::Corruption(format!("{what} = {r} is not a nonnegative integer")));
    }
    r.to_integer()
        .to_i64()
        .ok_or_else(|| Error::Corruption(format!("{what} overflows")))
}

pub fn is_one(x: &CyclotomicNumber) -> bool {
    x.to_rational().is_some_and(|r| r.is_one())
}

pub fn is_zero(x: &CyclotomicNumber) -> bool {
    x.is_zero() || x.to_rational().is_some_and(|r| r.is_zero())
}
