//! Finite permutation groups held as a full, sorted element list.
//!
//! Every group in this crate is small enough (at most [`DEFAULT_BOUND`]
//! elements unless configured otherwise) to enumerate, so all structure
//! computations work directly on element indices.

use std::fmt;
use std::sync::OnceLock;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::perm::Perm;

pub const DEFAULT_BOUND: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClass {
    pub index: usize,
    pub representative: Perm,
    /// Index of the representative in the group's element list.
    pub rep_index: usize,
    pub size: usize,
    pub centralizer_order: usize,
    pub element_order: u32,
}

#[derive(Clone, Debug)]
struct ClassData {
    classes: Vec<ConjClass>,
    class_of: Vec<u32>,
    /// `power[i][k]` is the class of `rep_i^k` for `0 <= k < order(rep_i)`.
    power: Vec<Vec<u32>>,
}

#[derive(Clone)]
pub struct Group {
    degree: usize,
    gens: Vec<Perm>,
    elements: Vec<Perm>,
    lookup: FxHashMap<Perm, u32>,
    inverse: Vec<u32>,
    orders: Vec<u32>,
    name: Option<String>,
    classes: OnceLock<ClassData>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("name", &self.name)
            .field("degree", &self.degree)
            .field("order", &self.order())
            .finish()
    }
}

impl Group {
    /// Closure of the generators, enumerated up to [`DEFAULT_BOUND`] elements.
    pub fn new(gens: Vec<Perm>) -> Result<Group> {
        Group::with_bound(gens, DEFAULT_BOUND)
    }

    pub fn with_bound(gens: Vec<Perm>, bound: usize) -> Result<Group> {
        let degree = match gens.first() {
            Some(g) => g.degree(),
            None => return Err(Error::Unsupported("empty generator list".into())),
        };
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        let mut seen: FxHashMap<Perm, u32> = FxHashMap::default();
        let id = Perm::identity(degree);
        let mut list = vec![id.clone()];
        seen.insert(id, 0);
        let mut head = 0;
        while head < list.len() {
            let x = list[head].clone();
            head += 1;
            for g in &gens {
                let y = &x * g;
                if !seen.contains_key(&y) {
                    if list.len() >= bound {
                        return Err(Error::TooLarge { bound });
                    }
                    seen.insert(y.clone(), 0);
                    list.push(y);
                }
            }
        }
        Ok(Group::from_sorted(degree, gens, list))
    }

    fn from_sorted(degree: usize, gens: Vec<Perm>, mut elements: Vec<Perm>) -> Group {
        elements.sort_unstable();
        let mut lookup = FxHashMap::default();
        lookup.reserve(elements.len());
        for (i, e) in elements.iter().enumerate() {
            lookup.insert(e.clone(), i as u32);
        }
        let inverse = elements.iter().map(|e| lookup[&e.inverse()]).collect();
        let orders = elements.iter().map(|e| e.order() as u32).collect();
        Group {
            degree,
            gens,
            elements,
            lookup,
            inverse,
            orders,
            name: None,
            classes: OnceLock::new(),
        }
    }

    pub fn trivial(degree: usize) -> Group {
        Group::new(vec![Perm::identity(degree.max(1))]).expect("trivial group")
    }

    pub fn named(mut self, name: impl Into<String>) -> Group {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, g: &Perm) -> Option<usize> {
        self.lookup.get(g).map(|&i| i as usize)
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.lookup.contains_key(g)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        let p = &self.elements[a] * &self.elements[b];
        self.lookup[&p] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    #[inline]
    pub fn element_order(&self, a: usize) -> u32 {
        self.orders[a]
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    pub fn exponent(&self) -> u64 {
        self.orders
            .iter()
            .fold(1u64, |acc, &o| num_integer::lcm(acc, o as u64))
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .all(|a| self.gens.iter().all(|b| &(a * b) == &(b * a)))
    }

    /// Subgroup consisting of the given elements of `self`, which must be closed.
    pub fn subgroup_from_indices(&self, indices: &[usize]) -> Group {
        let elems: Vec<Perm> = indices.iter().map(|&i| self.elements[i].clone()).collect();
        Group::from_closed_set(self.degree, elems)
    }

    /// Builds a group from a multiplicatively closed set of permutations,
    /// choosing a small generating set greedily (large element orders first).
    pub fn from_closed_set(degree: usize, elems: Vec<Perm>) -> Group {
        let mut by_order: Vec<(u64, &Perm)> = elems.iter().map(|e| (e.order(), e)).collect();
        by_order.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(b.1)));
        let mut gens: Vec<Perm> = Vec::new();
        let mut span: FxHashMap<Perm, ()> = FxHashMap::default();
        span.insert(Perm::identity(degree), ());
        for (_, e) in by_order {
            if span.len() == elems.len() {
                break;
            }
            if span.contains_key(e) {
                continue;
            }
            gens.push(e.clone());
            let mut list: Vec<Perm> = span.keys().cloned().collect();
            let mut head = 0;
            while head < list.len() {
                let x = list[head].clone();
                head += 1;
                for g in &gens {
                    let y = &x * g;
                    if !span.contains_key(&y) {
                        span.insert(y.clone(), ());
                        list.push(y);
                    }
                }
            }
        }
        if gens.is_empty() {
            gens.push(Perm::identity(degree));
        }
        debug_assert_eq!(span.len(), elems.len(), "element set is not closed");
        Group::from_sorted(degree, gens, elems)
    }

    /// Subgroup of `self` generated by the given elements.
    pub fn subgroup_generated(&self, gens: &[Perm]) -> Result<Group> {
        for g in gens {
            if !self.contains(g) {
                return Err(Error::NotInGroup);
            }
        }
        if gens.is_empty() {
            return Ok(Group::trivial(self.degree));
        }
        Group::new(gens.to_vec())
    }

    pub fn is_subgroup_of(&self, other: &Group) -> bool {
        self.degree == other.degree && self.gens.iter().all(|g| other.contains(g))
    }

    pub fn same_elements(&self, other: &Group) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    fn class_data(&self) -> &ClassData {
        self.classes.get_or_init(|| self.compute_classes())
    }

    fn compute_classes(&self) -> ClassData {
        let n = self.order();
        let mut orbit_id = vec![u32::MAX; n];
        let mut orbits: Vec<Vec<u32>> = Vec::new();
        for start in 0..n {
            if orbit_id[start] != u32::MAX {
                continue;
            }
            let id = orbits.len() as u32;
            orbit_id[start] = id;
            let mut orbit = vec![start as u32];
            let mut head = 0;
            while head < orbit.len() {
                let x = &self.elements[orbit[head] as usize];
                head += 1;
                for g in &self.gens {
                    let y = self.lookup[&x.conjugate_by(g)];
                    if orbit_id[y as usize] == u32::MAX {
                        orbit_id[y as usize] = id;
                        orbit.push(y);
                    }
                }
            }
            orbits.push(orbit);
        }
        // Canonical order: element order, class size, minimal element.
        // `start` runs over sorted elements, so orbit[0] is the minimum.
        let mut order: Vec<usize> = (0..orbits.len()).collect();
        order.sort_by_key(|&o| {
            let rep = orbits[o][0] as usize;
            (self.orders[rep], orbits[o].len(), rep)
        });
        let mut rank = vec![0u32; orbits.len()];
        for (r, &o) in order.iter().enumerate() {
            rank[o] = r as u32;
        }
        let class_of: Vec<u32> = orbit_id.iter().map(|&o| rank[o as usize]).collect();
        let classes: Vec<ConjClass> = order
            .iter()
            .enumerate()
            .map(|(i, &o)| {
                let rep = orbits[o][0] as usize;
                ConjClass {
                    index: i,
                    representative: self.elements[rep].clone(),
                    rep_index: rep,
                    size: orbits[o].len(),
                    centralizer_order: n / orbits[o].len(),
                    element_order: self.orders[rep],
                }
            })
            .collect();
        let power = classes
            .iter()
            .map(|c| {
                let mut row = Vec::with_capacity(c.element_order as usize);
                let mut cur = Perm::identity(self.degree);
                for _ in 0..c.element_order {
                    row.push(class_of[self.lookup[&cur] as usize]);
                    cur = &cur * &c.representative;
                }
                row
            })
            .collect();
        ClassData {
            classes,
            class_of,
            power,
        }
    }

    pub fn conjugacy_classes(&self) -> &[ConjClass] {
        &self.class_data().classes
    }

    pub fn num_classes(&self) -> usize {
        self.class_data().classes.len()
    }

    /// Class index of the element with the given index.
    #[inline]
    pub fn class_of_index(&self, i: usize) -> usize {
        self.class_data().class_of[i] as usize
    }

    pub fn class_of(&self, g: &Perm) -> Result<usize> {
        let i = self.index_of(g).ok_or(Error::NotInGroup)?;
        Ok(self.class_of_index(i))
    }

    /// Class of `rep_c^k`.
    pub fn power_class(&self, c: usize, k: i64) -> usize {
        let row = &self.class_data().power[c];
        let o = row.len() as i64;
        row[k.rem_euclid(o) as usize] as usize
    }

    pub fn inverse_class(&self, c: usize) -> usize {
        self.power_class(c, -1)
    }

    /// Indices of all elements in class `c`.
    pub fn class_elements(&self, c: usize) -> Vec<usize> {
        let cd = self.class_data();
        (0..self.order())
            .filter(|&i| cd.class_of[i] as usize == c)
            .collect()
    }

    pub fn centralizer(&self, g: &Perm) -> Result<Group> {
        if !self.contains(g) {
            return Err(Error::NotInGroup);
        }
        let idx: Vec<usize> = (0..self.order())
            .filter(|&i| {
                let h = &self.elements[i];
                &(h * g) == &(g * h)
            })
            .collect();
        Ok(self.subgroup_from_indices(&idx))
    }

    /// `{h : g^h in {g, g^-1}}`.
    pub fn extended_centralizer(&self, g: &Perm) -> Result<Group> {
        if !self.contains(g) {
            return Err(Error::NotInGroup);
        }
        let ginv = g.inverse();
        let idx: Vec<usize> = (0..self.order())
            .filter(|&i| {
                let c = g.conjugate_by(&self.elements[i]);
                c == *g || c == ginv
            })
            .collect();
        Ok(self.subgroup_from_indices(&idx))
    }

    pub fn normalizer(&self, h: &Group) -> Result<Group> {
        if !h.is_subgroup_of(self) {
            return Err(Error::NotSubgroup("normalizer argument".into()));
        }
        let idx: Vec<usize> = (0..self.order())
            .filter(|&i| {
                let x = &self.elements[i];
                h.gens.iter().all(|g| h.contains(&g.conjugate_by(x)))
            })
            .collect();
        Ok(self.subgroup_from_indices(&idx))
    }

    /// `H^x` as a new group.
    pub fn conjugate_subgroup(h: &Group, x: &Perm) -> Group {
        let elems = h.elements.iter().map(|e| e.conjugate_by(x)).collect();
        Group::from_closed_set(h.degree, elems)
    }

    /// Some `x` in `self` with `H^x = K`.
    pub fn conjugating_element(&self, h: &Group, k: &Group) -> Result<Option<Perm>> {
        if !h.is_subgroup_of(self) || !k.is_subgroup_of(self) {
            return Err(Error::NotSubgroup("conjugacy test arguments".into()));
        }
        if h.order() != k.order() {
            return Ok(None);
        }
        // Candidates for the image of the first generator must lie in K and in
        // the same G-class; each candidate determines a coset of a centralizer.
        let g0 = &h.gens[0];
        let c0 = self.class_of(g0)?;
        let cent = self.centralizer(g0)?;
        for k0 in k.elements.iter().filter(|e| self.class_of(e).ok() == Some(c0)) {
            let t = match self
                .elements
                .iter()
                .find(|x| &g0.conjugate_by(x) == k0)
            {
                Some(t) => t.clone(),
                None => continue,
            };
            for c in cent.elements() {
                let x = c * &t;
                if h.gens.iter().all(|g| k.contains(&g.conjugate_by(&x))) {
                    return Ok(Some(x));
                }
            }
        }
        Ok(None)
    }

    pub fn is_conjugate_subgroup(&self, h: &Group, k: &Group) -> Result<bool> {
        Ok(self.conjugating_element(h, k)?.is_some())
    }

    /// Whether some conjugate of `K` lies inside `H`.
    pub fn contains_conjugate(&self, h: &Group, k: &Group) -> Result<bool> {
        if !h.is_subgroup_of(self) || !k.is_subgroup_of(self) {
            return Err(Error::NotSubgroup("containment test arguments".into()));
        }
        if h.order() % k.order() != 0 {
            return Ok(false);
        }
        Ok(self
            .elements
            .iter()
            .any(|x| k.gens.iter().all(|g| h.contains(&g.conjugate_by(x)))))
    }

    /// A Sylow 2-subgroup, grown one step at a time inside normalizers.
    pub fn sylow2(&self) -> Group {
        self.sylow2_containing(&Group::trivial(self.degree))
            .expect("trivial subgroup is a 2-subgroup")
    }

    /// A Sylow 2-subgroup of `self` containing the 2-subgroup `p`.
    pub fn sylow2_containing(&self, p: &Group) -> Result<Group> {
        if !p.is_subgroup_of(self) || !p.order().is_power_of_two() {
            return Err(Error::NotSubgroup("seed is not a 2-subgroup".into()));
        }
        let target = 1usize << self.order().trailing_zeros();
        let mut cur_elems: Vec<Perm> = p.elements.clone();
        let mut cur = p.elements.iter().cloned().collect::<rustc_hash::FxHashSet<Perm>>();
        let mut cur_gens: Vec<Perm> = p.gens.clone();
        while cur_elems.len() < target {
            // Smallest g outside P normalizing P with g^2 in P.
            let next = self.elements.iter().find(|g| {
                !cur.contains(*g)
                    && cur.contains(&(*g * *g))
                    && cur_gens.iter().all(|h| cur.contains(&h.conjugate_by(g)))
            });
            let g = next.ok_or_else(|| {
                Error::Corruption("no 2-element in N(P) \\ P while P is not Sylow".into())
            })?;
            cur_gens.push(g.clone());
            let mut new_elems = cur_elems.clone();
            for x in &cur_elems {
                new_elems.push(x * g);
            }
            cur = new_elems.iter().cloned().collect();
            cur_elems = new_elems;
        }
        Ok(Group::from_closed_set(self.degree, cur_elems))
    }

    /// `C_H(K)` for subgroups given as groups of the same degree.
    pub fn centralizer_of_subgroup(&self, k: &Group) -> Group {
        let idx: Vec<usize> = (0..self.order())
            .filter(|&i| {
                let x = &self.elements[i];
                k.gens.iter().all(|g| &(x * g) == &(g * x))
            })
            .collect();
        self.subgroup_from_indices(&idx)
    }

    pub fn center(&self) -> Group {
        self.centralizer_of_subgroup(self)
    }

    /// Subgroup generated by commutators.
    pub fn derived_subgroup(&self) -> Group {
        let mut gens = Vec::new();
        let mut seen = rustc_hash::FxHashSet::default();
        for a in &self.gens {
            for b in &self.elements {
                let c = &(&a.inverse() * &b.inverse()) * &(a * b);
                if seen.insert(c.clone()) {
                    gens.push(c);
                }
            }
        }
        // Normal closure: add conjugates until closed.
        let mut h = Group::new(gens).expect("subgroup of a finite group");
        loop {
            let extra: Vec<Perm> = h
                .gens
                .iter()
                .flat_map(|g| self.gens.iter().map(move |x| g.conjugate_by(x)))
                .filter(|c| !h.contains(c))
                .collect();
            if extra.is_empty() {
                return h;
            }
            let mut gens = h.gens.clone();
            gens.extend(extra);
            h = Group::new(gens).expect("subgroup of a finite group");
        }
    }

    /// Number of elements `y` with `y^2 = g`, by enumeration.
    pub fn square_root_count(&self, g: &Perm) -> usize {
        self.elements.iter().filter(|y| &(*y * *y) == g).count()
    }

    pub fn involution_count(&self) -> usize {
        self.orders.iter().filter(|&&o| o == 2).count()
    }

    /// Index-2 subgroups, each as a sorted list of element indices.
    pub fn index2_subgroups(&self) -> Vec<Group> {
        // They all contain the subgroup generated by squares; enumerate
        // hyperplanes of the elementary abelian quotient.
        let squares: Vec<Perm> = self.elements.iter().map(|x| x * x).collect();
        let sq = Group::new(squares).expect("finite");
        // Coset representatives of the square subgroup, as a basis over F2.
        let mut basis: Vec<Perm> = Vec::new();
        let mut span = sq.elements.clone();
        for g in &self.gens {
            let span_set: rustc_hash::FxHashSet<&Perm> = span.iter().collect();
            if span_set.contains(g) {
                continue;
            }
            let extended: Vec<Perm> = span.iter().map(|x| x * g).collect();
            span.extend(extended);
            basis.push(g.clone());
        }
        let r = basis.len();
        let mut out = Vec::new();
        // Each nonzero functional f: F2^r -> F2 gives the kernel subgroup.
        for f in 1u32..(1u32 << r) {
            let mut gens: Vec<Perm> = sq.gens.clone();
            let mut odd: Option<&Perm> = None;
            for (i, b) in basis.iter().enumerate() {
                if f >> i & 1 == 0 {
                    gens.push(b.clone());
                } else if let Some(o) = odd {
                    gens.push(o * b);
                } else {
                    odd = Some(b);
                }
            }
            let h = Group::new(gens).expect("finite");
            debug_assert_eq!(h.order() * 2, self.order());
            out.push(h);
        }
        out.sort_by(|a, b| a.elements.cmp(&b.elements));
        out
    }
}

pub fn two_part(n: usize) -> usize {
    1usize << n.trailing_zeros()
}

pub fn nu2(n: usize) -> u32 {
    n.trailing_zeros()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, cycles: &[&[usize]]) -> Perm {
        Perm::from_cycles(n, cycles).unwrap()
    }

    fn s4() -> Group {
        Group::new(vec![p(4, &[&[0, 1, 2, 3]]), p(4, &[&[0, 1]])]).unwrap()
    }

    #[test]
    fn dihedral_order() {
        let g = Group::new(vec![p(4, &[&[0, 1, 2, 3]]), p(4, &[&[0, 2]])]).unwrap();
        assert_eq!(g.order(), 8);
        let t = Group::new(vec![Perm::identity(3)]).unwrap();
        assert_eq!(t.order(), 1);
    }

    #[test]
    fn alternating_seven_by_three_cycles() {
        let gens = vec![p(7, &[&[0, 1, 2]]), p(7, &[&[2, 3, 4, 5, 6]])];
        let g = Group::new(gens).unwrap();
        assert_eq!(g.order(), 5040 / 2);
    }

    #[test]
    fn size_guard() {
        let gens = vec![p(8, &[&[0, 1]]), p(8, &[&[0, 1, 2, 3, 4, 5, 6, 7]])];
        assert!(matches!(
            Group::with_bound(gens, 1000),
            Err(Error::TooLarge { bound: 1000 })
        ));
    }

    #[test]
    fn degree_mismatch() {
        let gens = vec![p(3, &[&[0, 1]]), p(4, &[&[0, 1]])];
        assert!(matches!(Group::new(gens), Err(Error::DegreeMismatch(3, 4))));
    }

    #[test]
    fn class_equation_s4() {
        let g = s4();
        let cls = g.conjugacy_classes();
        assert_eq!(cls.len(), 5);
        assert_eq!(cls.iter().map(|c| c.size).sum::<usize>(), 24);
        for c in cls {
            assert_eq!(c.size * c.centralizer_order, 24);
        }
        assert_eq!(cls[0].element_order, 1);
        let a = g.class_of(&p(4, &[&[0, 1], &[2, 3]])).unwrap();
        let b = g.class_of(&p(4, &[&[0, 1]])).unwrap();
        assert_ne!(a, b);
        assert_eq!(g.class_of(&Perm::identity(4)).unwrap(), 0);
        for c in 0..cls.len() {
            assert_eq!(g.power_class(c, 24), 0);
        }
    }

    #[test]
    fn extended_centralizer_s3() {
        let g = Group::new(vec![p(3, &[&[0, 1, 2]]), p(3, &[&[0, 1]])]).unwrap();
        let x = p(3, &[&[0, 1, 2]]);
        assert_eq!(g.centralizer(&x).unwrap().order(), 3);
        assert_eq!(g.extended_centralizer(&x).unwrap().order(), 6);
        let outside = p(4, &[&[0, 3]]);
        assert!(matches!(g.centralizer(&outside), Err(Error::NotInGroup)));
    }

    #[test]
    fn klein_four_is_normal_in_s4() {
        let g = s4();
        let v = Group::new(vec![p(4, &[&[0, 1], &[2, 3]]), p(4, &[&[0, 2], &[1, 3]])]).unwrap();
        assert_eq!(g.normalizer(&v).unwrap().order(), 24);
    }

    #[test]
    fn sylow_subgroups_conjugate() {
        let g = s4();
        let p1 = g.sylow2();
        assert_eq!(p1.order(), 8);
        let x = p(4, &[&[0, 3]]);
        let p2 = Group::conjugate_subgroup(&p1, &x);
        assert!(g.is_conjugate_subgroup(&p1, &p2).unwrap());
        let t = Group::new(vec![p(4, &[&[0, 1]])]).unwrap();
        let u = Group::new(vec![p(4, &[&[0, 1], &[2, 3]])]).unwrap();
        assert!(!g.is_conjugate_subgroup(&t, &u).unwrap());
        assert!(g.contains_conjugate(&p1, &u).unwrap());
    }

    #[test]
    fn sylow_of_odd_group_is_trivial() {
        let g = Group::new(vec![p(3, &[&[0, 1, 2]])]).unwrap();
        assert_eq!(g.sylow2().order(), 1);
    }

    #[test]
    fn index_two_subgroups_of_d8() {
        let g = Group::new(vec![p(4, &[&[0, 1, 2, 3]]), p(4, &[&[0, 2]])]).unwrap();
        let subs = g.index2_subgroups();
        assert_eq!(subs.len(), 3);
        assert!(subs.iter().all(|h| h.order() == 4));
    }
}
