//! 2-blocks: partition by central characters, defect, heights, l(B), defect
//! groups, defect pairs and Brauer correspondence.

use serde::Serialize;

use crate::chartab::{class_fusion, expect_rational, CharacterTable};
use crate::error::{Error, Result};
use crate::f2::{F2kElement, Mod2Reducer};
use crate::group::{nu2, Group};
use crate::iso::{iso_type_2group, IsoType};
use crate::linalg::rank_rational;
use crate::perm::Perm;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    /// Character indices, increasing.
    pub chars: Vec<usize>,
    /// `lambda_B(K^)` per class.
    #[serde(skip)]
    pub lambda: Vec<F2kElement>,
    pub defect: u32,
    /// Height per member, in the order of `chars`.
    pub heights: Vec<u32>,
    pub principal: bool,
    pub real: bool,
    pub l: usize,
}

impl Block {
    pub fn k(&self) -> usize {
        self.chars.len()
    }

    pub fn contains(&self, chi: usize) -> bool {
        self.chars.binary_search(&chi).is_ok()
    }

    pub fn height_of(&self, chi: usize) -> Option<u32> {
        self.chars.binary_search(&chi).ok().map(|i| self.heights[i])
    }
}

/// Reducer for a group whose blocks will be compared with those of subgroups:
/// subgroups must reuse this so all reductions land in one residue field.
pub fn reducer_for(table: &CharacterTable) -> Result<Mod2Reducer> {
    Mod2Reducer::new(table.exponent())
}

/// Blocks of `table`, in order of their smallest member (principal first).
pub fn block_partition(table: &CharacterTable, reducer: &Mod2Reducer) -> Result<Vec<Block>> {
    let k = table.num_classes();
    let mut lambdas: Vec<Vec<F2kElement>> = Vec::with_capacity(table.num_chars());
    for chi in 0..table.num_chars() {
        let mut row = Vec::with_capacity(k);
        for t in 0..k {
            let w = table.central_character(chi, t);
            if !w.is_integral() {
                return Err(Error::Corruption(format!(
                    "central character of chi_{chi} at class {t} is not integral: {w}"
                )));
            }
            row.push(reducer.reduce(&w)?);
        }
        lambdas.push(row);
    }
    let mut groups: Vec<(Vec<F2kElement>, Vec<usize>)> = Vec::new();
    for (chi, lam) in lambdas.into_iter().enumerate() {
        match groups.iter_mut().find(|(l, _)| *l == lam) {
            Some((_, members)) => members.push(chi),
            None => groups.push((lam, vec![chi])),
        }
    }
    let nu_g = nu2(table.group_order);
    groups
        .into_iter()
        .map(|(lambda, chars)| {
            let min_nu = chars.iter().map(|&c| nu2(table.degree(c) as usize)).min().unwrap_or(0);
            let heights = chars
                .iter()
                .map(|&c| nu2(table.degree(c) as usize) - min_nu)
                .collect();
            let real = chars
                .iter()
                .all(|&c| chars.contains(&table.complex_conjugate_index(c)));
            let l = little_l(table, &chars)?;
            Ok(Block {
                principal: chars.contains(&0),
                chars,
                lambda,
                defect: nu_g - min_nu,
                heights,
                real,
                l,
            })
        })
        .collect()
}

/// `l(B)` as the rank of the Gram matrix `[chi, psi]^0` over odd-order classes.
pub fn little_l(table: &CharacterTable, chars: &[usize]) -> Result<usize> {
    let mut gram = Vec::with_capacity(chars.len());
    for &a in chars {
        let mut row = Vec::with_capacity(chars.len());
        for &b in chars {
            let v = table.inner_product_odd(&table.chars[a], &table.chars[b]);
            row.push(expect_rational(&v, "odd-part inner product")?);
        }
        gram.push(row);
    }
    Ok(rank_rational(gram))
}

/// Odd-order classes of `g`.
pub fn odd_classes(table: &CharacterTable) -> Vec<usize> {
    (0..table.num_classes())
        .filter(|&t| table.classes[t].order % 2 == 1)
        .collect()
}

/// Odd-order classes `K` with `lambda_B(K^) != 0` whose centralizer has 2-part `2^d(B)`.
pub fn defect_classes(table: &CharacterTable, b: &Block) -> Vec<usize> {
    odd_classes(table)
        .into_iter()
        .filter(|&t| !b.lambda[t].is_zero() && nu2(table.centralizer_order(t)) == b.defect)
        .collect()
}

/// A defect group, asserting that every defect class yields a conjugate one.
pub fn defect_group(g: &Group, table: &CharacterTable, b: &Block) -> Result<Group> {
    let classes = defect_classes(table, b);
    let mut found: Option<Group> = None;
    for t in classes {
        let x = &g.conjugacy_classes()[t].representative;
        let d = g.centralizer(x)?.sylow2();
        match &found {
            None => found = Some(d),
            Some(d0) => {
                if !g.is_conjugate_subgroup(d0, &d)? {
                    return Err(Error::TheoryViolation(format!(
                        "defect classes give non-conjugate defect groups (class {t})"
                    )));
                }
            }
        }
    }
    let d = found.ok_or_else(|| Error::TheoryViolation("block has no defect class".into()))?;
    if d.order() != 1 << b.defect {
        return Err(Error::TheoryViolation(format!(
            "defect group of order {} for defect {}",
            d.order(),
            b.defect
        )));
    }
    Ok(d)
}

#[derive(Clone, Debug)]
pub struct DefectPair {
    pub d: Group,
    pub e: Group,
    /// Representative of the real defect class used.
    pub x: Perm,
}

impl DefectPair {
    pub fn d_type(&self) -> Result<IsoType> {
        iso_type_2group(&self.d)
    }

    pub fn e_type(&self) -> Result<IsoType> {
        iso_type_2group(&self.e)
    }

    /// Elements of `E \ D`.
    pub fn outer(&self) -> impl Iterator<Item = &Perm> {
        self.e.elements().iter().filter(move |x| !self.d.contains(x))
    }
}

/// Whether some `t` in `g` maps `D1 -> D2` and `E1 -> E2` simultaneously.
pub fn pairs_conjugate(g: &Group, a: (&Group, &Group), b: (&Group, &Group)) -> Result<bool> {
    let t = match g.conjugating_element(a.1, b.1)? {
        Some(t) => t,
        None => return Ok(false),
    };
    if a.0.order() != b.0.order() {
        return Ok(false);
    }
    // Every transporter of E1 to E2 lies in t N_G(E2).
    let n = g.normalizer(b.1)?;
    Ok(n.elements().iter().any(|m| {
        a.0.generators().iter().all(|h| b.0.contains(&h.conjugate_by(&t).conjugate_by(m)))
    }))
}

/// Defect pair `(D, E)` of a real block from its real defect classes; all
/// candidates must be conjugate as pairs, and `E = D` for the principal block.
pub fn defect_pair(g: &Group, table: &CharacterTable, b: &Block) -> Result<DefectPair> {
    if !b.real {
        return Err(Error::Unsupported("defect pair of a non-real block".into()));
    }
    let classes: Vec<usize> = defect_classes(table, b)
        .into_iter()
        .filter(|&t| table.inverse_class(t) == t)
        .collect();
    let mut found: Option<DefectPair> = None;
    for t in classes {
        let x = g.conjugacy_classes()[t].representative.clone();
        let d = g.centralizer(&x)?.sylow2();
        let e = g.extended_centralizer(&x)?.sylow2_containing(&d)?;
        let cand = DefectPair { d, e, x };
        match &found {
            None => found = Some(cand),
            Some(p) => {
                if !pairs_conjugate(g, (&p.d, &p.e), (&cand.d, &cand.e))? {
                    return Err(Error::TheoryViolation(format!(
                        "real defect classes give non-conjugate defect pairs (class {t})"
                    )));
                }
            }
        }
    }
    let p = found.ok_or_else(|| Error::TheoryViolation("real block without a real defect class".into()))?;
    let index = p.e.order() / p.d.order();
    if index > 2 || (index == 2) == b.principal {
        return Err(Error::TheoryViolation(format!(
            "|E:D| = {index} for a {} block",
            if b.principal { "principal" } else { "non-principal" }
        )));
    }
    Ok(p)
}

/// `lambda_b^G(K^) = lambda_b((K cap H)^)` for a block of a subgroup `h`, as a
/// vector over the classes of `g`.
pub fn induced_lambda(
    table: &CharacterTable,
    h: &Group,
    fusion: &[usize],
    hb: &Block,
    reducer: &Mod2Reducer,
) -> Vec<F2kElement> {
    debug_assert_eq!(fusion.len(), h.num_classes());
    let mut out = vec![F2kElement::ZERO; table.num_classes()];
    for (l, &t) in fusion.iter().enumerate() {
        out[t] = reducer.field().add(out[t], hb.lambda[l]);
    }
    out
}

/// Index of the block of `g` that is the Brauer correspondent of `hb`.
pub fn brauer_correspondent(
    g: &Group,
    table: &CharacterTable,
    blocks: &[Block],
    h: &Group,
    hb: &Block,
    reducer: &Mod2Reducer,
) -> Result<Option<usize>> {
    let fusion = class_fusion(g, h)?;
    let lam = induced_lambda(table, h, &fusion, hb, reducer);
    Ok(blocks.iter().position(|b| b.lambda == lam))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factory;

    fn analyse(g: &Group) -> (CharacterTable, Vec<Block>) {
        let t = CharacterTable::compute(g).unwrap();
        let r = reducer_for(&t).unwrap();
        let b = block_partition(&t, &r).unwrap();
        (t, b)
    }

    #[test]
    fn two_group_has_one_block() {
        let g = factory::dihedral(8).unwrap();
        let (t, b) = analyse(&g);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].k(), 5);
        assert_eq!(b[0].l, 1);
        assert_eq!(b[0].defect, 3);
        let p = defect_pair(&g, &t, &b[0]).unwrap();
        assert_eq!(p.e.order(), 8);
    }

    #[test]
    fn q8_times_c3() {
        let g = factory::direct_product(&factory::quaternion(8).unwrap(), &factory::cyclic(3).unwrap())
            .unwrap();
        let (t, b) = analyse(&g);
        assert_eq!(b.len(), 3);
        assert!(b[0].principal);
        assert!(b.iter().all(|x| x.k() == 5 && x.l == 1 && x.defect == 3));
        // the two non-principal blocks are complex conjugate, not real
        assert!(b[0].real && !b[1].real && !b[2].real);
        let d = defect_group(&g, &t, &b[1]).unwrap();
        assert_eq!(iso_type_2group(&d).unwrap().label, "Q8");
    }

    #[test]
    fn psl27_principal_block() {
        let g = factory::linear(factory::LinearKind::Psl, 7).unwrap();
        let (t, b) = analyse(&g);
        // the Steinberg character of degree 8 has defect zero
        assert_eq!(b.len(), 2);
        assert_eq!(b[0].k(), 5);
        assert_eq!(b[0].l, 3);
        assert_eq!(b[0].heights.iter().filter(|&&h| h == 0).count(), 4);
        let sum_l: usize = b.iter().map(|x| x.l).sum();
        assert_eq!(sum_l, odd_classes(&t).len());
        let p = defect_pair(&g, &t, &b[0]).unwrap();
        assert_eq!(p.d_type().unwrap().label, "D8");
        assert!(p.d.same_elements(&p.e));
    }

    #[test]
    fn s5_principal_l_is_two() {
        let g = factory::symmetric(5).unwrap();
        let (_, b) = analyse(&g);
        assert_eq!(b[0].l, 2);
        assert_eq!(b[0].k(), 5);
    }

    #[test]
    fn s3_brauer_correspondence() {
        let g = factory::symmetric(3).unwrap();
        let (t, b) = analyse(&g);
        let r = reducer_for(&t).unwrap();
        let h = g.centralizer(&Perm::from_cycles(3, &[&[0, 1]]).unwrap()).unwrap();
        let th = CharacterTable::compute(&h).unwrap();
        let hb = block_partition(&th, &r).unwrap();
        assert_eq!(hb.len(), 1);
        assert_eq!(brauer_correspondent(&g, &t, &b, &h, &hb[0], &r).unwrap(), Some(0));
    }
}
