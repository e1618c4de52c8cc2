//! Isomorphism types of small 2-groups: invariant fingerprints, a catalog of
//! named groups and an exact isomorphism test by extending generator images.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factory;
use crate::group::Group;

pub const MAX_ISO_ORDER: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fingerprint {
    pub order: usize,
    pub exponent: u64,
    pub center_order: usize,
    pub derived_order: usize,
    pub abelianization: Vec<u64>,
    /// `(element order, count)` pairs in increasing order.
    pub order_histogram: Vec<(u32, usize)>,
    pub num_classes: usize,
}

impl Fingerprint {
    pub fn of(g: &Group) -> Fingerprint {
        let derived = g.derived_subgroup();
        let mut hist: BTreeMap<u32, usize> = BTreeMap::new();
        for i in 0..g.order() {
            *hist.entry(g.element_order(i)).or_default() += 1;
        }
        Fingerprint {
            order: g.order(),
            exponent: g.exponent(),
            center_order: g.center().order(),
            derived_order: derived.order(),
            abelianization: abelianization(g, &derived),
            order_histogram: hist.into_iter().collect(),
            num_classes: g.num_classes(),
        }
    }
}

/// Invariants `[n_1, n_2, ..]` (prime-power cyclic factors, decreasing) of `G/N`
/// for a normal subgroup `N` with abelian quotient.
pub fn abelianization(g: &Group, n: &Group) -> Vec<u64> {
    let index = (g.order() / n.order()) as u64;
    let mut out = Vec::new();
    let mut rest = index;
    let mut p = 2;
    while rest > 1 {
        if rest % p != 0 {
            p += 1;
            continue;
        }
        let mut a = 0;
        while rest % p == 0 {
            rest /= p;
            a += 1;
        }
        // omega[i] = #{cosets of order dividing p^i}
        let omega: Vec<u64> = (0..=a)
            .map(|i| {
                let e = p.pow(i);
                (0..g.order())
                    .filter(|&x| n.contains(&g.element(x).pow(e)))
                    .count() as u64
                    / n.order() as u64
            })
            .collect();
        // number of cyclic factors of order >= p^i is log_p(omega[i]/omega[i-1])
        let ge: Vec<u32> = (1..=a as usize)
            .map(|i| {
                let mut r = omega[i] / omega[i - 1];
                let mut k = 0;
                while r > 1 {
                    r /= p;
                    k += 1;
                }
                k
            })
            .collect();
        let mut factors = Vec::new();
        for i in (0..ge.len()).rev() {
            let exactly = ge[i] - ge.get(i + 1).copied().unwrap_or(0);
            for _ in 0..exactly {
                factors.push(p.pow(i as u32 + 1));
            }
        }
        out.extend(factors);
        p += 1;
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoType {
    pub label: String,
    pub fingerprint: Fingerprint,
}

impl fmt::Display for IsoType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// An isomorphism `a -> b` as a map on element indices, if one exists.
pub fn find_isomorphism(a: &Group, b: &Group) -> Option<Vec<usize>> {
    if a.order() != b.order() {
        return None;
    }
    if a.order() > 1 && Fingerprint::of(a) != Fingerprint::of(b) {
        return None;
    }
    let gens: Vec<usize> = {
        let small = Group::from_closed_set(a.degree(), a.elements().to_vec());
        small
            .generators()
            .iter()
            .map(|g| a.index_of(g).expect("element"))
            .collect()
    };
    let sig = |g: &Group, i: usize| (g.element_order(i), g.conjugacy_classes()[g.class_of_index(i)].size);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| (0..b.order()).filter(|&y| sig(b, y) == sig(a, x)).collect())
        .collect();
    let mut images = vec![0usize; gens.len()];
    search(a, b, &gens, &candidates, &mut images, 0)
}

fn extend(a: &Group, b: &Group, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; a.order()];
    let mut used = vec![false; b.order()];
    let (ia, ib) = (0, 0); // identities are the first elements
    map[ia] = ib;
    used[ib] = true;
    let mut queue = vec![ia];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&g, &h) in gens.iter().zip(images) {
            let y = a.mul(x, g);
            let fy = b.mul(map[x], h);
            if map[y] == usize::MAX {
                if used[fy] {
                    return None;
                }
                map[y] = fy;
                used[fy] = true;
                queue.push(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    Some(map)
}

fn search(
    a: &Group,
    b: &Group,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
    depth: usize,
) -> Option<Vec<usize>> {
    if depth == gens.len() {
        let map = extend(a, b, gens, images)?;
        return map.iter().all(|&m| m != usize::MAX).then_some(map);
    }
    for &c in &candidates[depth] {
        images[depth] = c;
        if extend(a, b, &gens[..=depth], &images[..=depth]).is_some() {
            if let Some(m) = search(a, b, gens, candidates, images, depth + 1) {
                return Some(m);
            }
        }
    }
    None
}

pub fn is_isomorphic(a: &Group, b: &Group) -> bool {
    find_isomorphism(a, b).is_some()
}

fn abelian_label(inv: &[u64]) -> String {
    if inv.is_empty() {
        return "C1".into();
    }
    inv.iter().map(|n| format!("C{n}")).collect::<Vec<_>>().join("x")
}

/// Builds a catalog group by label.
pub fn catalog_group(label: &str) -> Result<Group> {
    use factory::*;
    let g = match label {
        "D8" | "D16" | "D32" | "D64" => dihedral(label[1..].parse().unwrap())?,
        "Q8" | "Q16" | "Q32" | "Q64" => quaternion(label[1..].parse().unwrap())?,
        "SD16" | "SD32" | "SD64" => semidihedral(label[2..].parse().unwrap())?,
        "M16" => metacyclic(8, 5, 2, 0)?,
        "C4:C4" => metacyclic(4, 3, 4, 0)?,
        "C8:C4" => metacyclic(8, 5, 4, 0)?,
        "C4:C8" => metacyclic(4, 3, 8, 0)?,
        "C8:C2^2" => affine(8, &[vec![vec![3]], vec![vec![5]]])?,
        "C4wrC2" => wreath_c4_c2()?,
        "C4:Q8" => c4_by_q8()?,
        "D8*C4" => central_product(&dihedral(8)?, &cyclic(4)?)?,
        "D16*C4" => central_product(&dihedral(16)?, &cyclic(4)?)?,
        "D8xC2" => direct_product(&dihedral(8)?, &cyclic(2)?)?,
        "Q8xC2" => direct_product(&quaternion(8)?, &cyclic(2)?)?,
        "D16xC2" => direct_product(&dihedral(16)?, &cyclic(2)?)?,
        "Q16xC2" => direct_product(&quaternion(16)?, &cyclic(2)?)?,
        "SD16xC2" => direct_product(&semidihedral(16)?, &cyclic(2)?)?,
        "M16xC2" => direct_product(&metacyclic(8, 5, 2, 0)?, &cyclic(2)?)?,
        "D8xC4" => direct_product(&dihedral(8)?, &cyclic(4)?)?,
        "Q8xC4" => direct_product(&quaternion(8)?, &cyclic(4)?)?,
        "D8xC2xC2" => direct_product(&dihedral(8)?, &dihedral(4)?)?,
        "Q8xC2xC2" => direct_product(&quaternion(8)?, &dihedral(4)?)?,
        "(D8*C4)xC2" => direct_product(&central_product(&dihedral(8)?, &cyclic(4)?)?, &cyclic(2)?)?,
        "C4:C4xC2" => direct_product(&metacyclic(4, 3, 4, 0)?, &cyclic(2)?)?,
        _ => {
            // abelian labels such as C8xC4
            let parts: Option<Vec<usize>> = label
                .split('x')
                .map(|p| p.strip_prefix('C').and_then(|n| n.parse().ok()))
                .collect();
            match parts {
                Some(ps) if !ps.is_empty() => {
                    let mut g = cyclic(ps[0])?;
                    for &n in &ps[1..] {
                        g = direct_product(&g, &cyclic(n)?)?;
                    }
                    g
                }
                _ => return Err(Error::Unsupported(format!("unknown catalog label {label}"))),
            }
        }
    };
    Ok(g.named(label))
}

/// `C4 : Q8` where `Q8` acts through its quotient by `<i>` by inversion.
fn c4_by_q8() -> Result<Group> {
    let c4 = factory::cyclic(4)?;
    let q8 = factory::quaternion(8)?;
    let i = (0..8).find(|&x| q8.element_order(x) == 4).expect("Q8 has order-4 elements");
    let ker: Vec<usize> = (0..4).map(|k| (0..k).fold(0, |acc, _| q8.mul(acc, i))).collect();
    factory::semidirect(&c4, &q8, |k, n| if ker.contains(&k) { n } else { c4.inv(n) })
}

pub const NONABELIAN_CATALOG: &[&str] = &[
    "D8", "Q8", "D16", "Q16", "SD16", "M16", "C4:C4", "D8xC2", "Q8xC2", "D8*C4", "D32", "Q32",
    "SD32", "C8:C4", "C4:C8", "C8:C2^2", "C4wrC2", "C4:Q8", "D16*C4", "D16xC2", "Q16xC2",
    "SD16xC2", "M16xC2", "D8xC4", "Q8xC4", "D8xC2xC2", "Q8xC2xC2", "(D8*C4)xC2", "C4:C4xC2",
    "D64", "Q64", "SD64",
];

struct CatalogEntry {
    label: &'static str,
    group: Group,
    fingerprint: Fingerprint,
}

fn catalog() -> &'static [CatalogEntry] {
    static CAT: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CAT.get_or_init(|| {
        NONABELIAN_CATALOG
            .iter()
            .map(|&label| {
                let group = catalog_group(label).expect("catalog construction");
                let fingerprint = Fingerprint::of(&group);
                CatalogEntry {
                    label,
                    group,
                    fingerprint,
                }
            })
            .collect()
    })
}

/// Isomorphism type of a 2-group of order at most 64, with optional extra
/// named groups (e.g. loaded fixtures) tried after the built-in catalog.
pub fn iso_type_with(p: &Group, extra: &[(String, &Group)]) -> Result<IsoType> {
    if !p.order().is_power_of_two() {
        return Err(Error::Unsupported(format!("order {} is not a power of 2", p.order())));
    }
    if p.order() > MAX_ISO_ORDER {
        return Err(Error::Unsupported(format!("2-group of order {}", p.order())));
    }
    let fingerprint = Fingerprint::of(p);
    if p.is_abelian() {
        return Ok(IsoType {
            label: abelian_label(&fingerprint.abelianization),
            fingerprint,
        });
    }
    for e in catalog() {
        if e.fingerprint == fingerprint && is_isomorphic(p, &e.group) {
            return Ok(IsoType {
                label: e.label.to_string(),
                fingerprint,
            });
        }
    }
    for (name, g) in extra {
        if g.order() == p.order() && is_isomorphic(p, g) {
            return Ok(IsoType {
                label: format!("fixture:{name}"),
                fingerprint,
            });
        }
    }
    let f = &fingerprint;
    let label = format!(
        "unknown({},exp{},z{},d{},ab{:?},k{})",
        f.order, f.exponent, f.center_order, f.derived_order, f.abelianization, f.num_classes
    );
    Ok(IsoType { label, fingerprint })
}

pub fn iso_type_2group(p: &Group) -> Result<IsoType> {
    iso_type_with(p, &[])
}
