//! B-subsections, Brauer data of correspondents with one Brauer character, and
//! generalized decomposition columns.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::blocks::{block_partition, brauer_correspondent, reducer_for, Block};
use crate::chartab::{class_fusion, expect_count, sum_mixed, CharacterTable, ClassFunction};
use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::f2::Mod2Reducer;
use crate::group::Group;
use crate::perm::Perm;

/// A group with its character table and 2-blocks.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub g: Group,
    pub table: CharacterTable,
    pub reducer: Mod2Reducer,
    pub blocks: Vec<Block>,
}

impl Analysis {
    pub fn new(g: Group) -> Result<Analysis> {
        let table = CharacterTable::compute(&g)?;
        Analysis::with_table(g, table)
    }

    pub fn with_table(g: Group, table: CharacterTable) -> Result<Analysis> {
        let reducer = reducer_for(&table)?;
        let blocks = block_partition(&table, &reducer)?;
        Ok(Analysis {
            g,
            table,
            reducer,
            blocks,
        })
    }

    pub fn block_of_char(&self, chi: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.contains(chi))
            .expect("blocks partition the characters")
    }

    /// Classes of elements of 2-power order, identity first.
    pub fn two_element_classes(&self) -> Vec<usize> {
        (0..self.table.num_classes())
            .filter(|&t| self.table.classes[t].order.is_power_of_two())
            .collect()
    }

    pub fn odd_classes(&self) -> Vec<usize> {
        crate::blocks::odd_classes(&self.table)
    }
}

/// Data at a 2-element `x`: `H = C_G(x)`, its table and blocks (reduced in the
/// residue field of `G`), and the Brauer correspondents of its blocks.
#[derive(Clone, Debug)]
pub struct Local {
    pub x: Perm,
    pub x_class: usize,
    pub h: Group,
    pub table: CharacterTable,
    pub blocks: Vec<Block>,
    /// `H`-class to `G`-class.
    pub fusion: Vec<usize>,
    /// `G`-block of each `H`-block.
    pub correspondent: Vec<Option<usize>>,
    /// `G`-class of `x u` for every `H`-class rep `u`.
    pub xu_class: Vec<usize>,
}

impl Local {
    pub fn new(an: &Analysis, x_class: usize) -> Result<Local> {
        let x = an.g.conjugacy_classes()[x_class].representative.clone();
        if !(an.table.classes[x_class].order as usize).is_power_of_two() {
            return Err(Error::Unsupported("subsections need a 2-element".into()));
        }
        let h = if x_class == 0 { an.g.clone() } else { an.g.centralizer(&x)? };
        let table = if x_class == 0 { an.table.clone() } else { CharacterTable::compute(&h)? };
        let blocks = block_partition(&table, &an.reducer)?;
        let fusion = class_fusion(&an.g, &h)?;
        let correspondent = blocks
            .iter()
            .map(|b| brauer_correspondent(&an.g, &an.table, &an.blocks, &h, b, &an.reducer))
            .collect::<Result<Vec<_>>>()?;
        let xu_class = h
            .conjugacy_classes()
            .iter()
            .map(|c| an.g.class_of(&(&x * &c.representative)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Local {
            x,
            x_class,
            h,
            table,
            blocks,
            fusion,
            correspondent,
            xu_class,
        })
    }

    pub fn is_odd_class(&self, l: usize) -> bool {
        self.table.classes[l].order % 2 == 1
    }
}

/// `(x, b_x)` with `b_x^G = B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Subsection {
    /// Index into the list of locals.
    pub local: usize,
    pub local_block: usize,
    pub l: usize,
}

/// All B-subsections up to conjugacy; asserts `k(B) = sum l(b_x)`.
pub fn enumerate_subsections(locals: &[Local], an: &Analysis, b: usize) -> Result<Vec<Subsection>> {
    let mut out = Vec::new();
    for (i, loc) in locals.iter().enumerate() {
        for (j, hb) in loc.blocks.iter().enumerate() {
            if loc.correspondent[j] == Some(b) {
                out.push(Subsection {
                    local: i,
                    local_block: j,
                    l: hb.l,
                });
            }
        }
    }
    let total: usize = out.iter().map(|s| s.l).sum();
    if total != an.blocks[b].k() {
        return Err(Error::TheoryViolation(format!(
            "block {b}: k(B) = {} but the subsections give sum l(b_x) = {total}",
            an.blocks[b].k()
        )));
    }
    Ok(out)
}

/// Locals for every class of 2-elements, identity first.
pub fn all_locals(an: &Analysis) -> Result<Vec<Local>> {
    an.two_element_classes()
        .into_iter()
        .map(|t| Local::new(an, t))
        .collect()
}

/// Brauer character `phi` and projective character `Phi_phi` of a block with
/// a single Brauer character.
#[derive(Clone, Debug)]
pub struct L1Data {
    /// Values on `H`-classes; zero on classes of even order.
    pub phi: ClassFunction,
    pub proj: ClassFunction,
    /// `(chi', d_chi')` for the members of the block.
    pub decomposition: Vec<(usize, i64)>,
}

pub fn l1_brauer_data(table: &CharacterTable, b: &Block) -> Result<L1Data> {
    if b.l != 1 {
        return Err(Error::Unsupported(format!("block with l = {}", b.l)));
    }
    let odd: Vec<bool> = table.classes.iter().map(|c| c.order % 2 == 1).collect();
    let psi = b
        .chars
        .iter()
        .zip(&b.heights)
        .find(|(_, &h)| h == 0)
        .map(|(&c, _)| c)
        .expect("some member has height 0");
    let zero = CyclotomicNumber::from_integer(0);
    let phi: ClassFunction = (0..table.num_classes())
        .map(|t| if odd[t] { table.chars[psi][t].clone() } else { zero.clone() })
        .collect();
    let mut decomposition = Vec::new();
    let mut proj_terms: Vec<Vec<CyclotomicNumber>> = vec![Vec::new(); table.num_classes()];
    for &c in &b.chars {
        let (dc, dp) = (table.degree(c), table.degree(psi));
        if dc % dp != 0 {
            return Err(Error::TheoryViolation(format!(
                "degree {dc} is not a multiple of {dp} in a block with l = 1"
            )));
        }
        let d = (dc / dp) as i64;
        for t in (0..table.num_classes()).filter(|&t| odd[t]) {
            if table.chars[c][t] != phi[t].scale_int(d) {
                return Err(Error::TheoryViolation(format!(
                    "chi_{c} is not {d} phi on odd class {t}"
                )));
            }
        }
        for (t, terms) in proj_terms.iter_mut().enumerate() {
            terms.push(table.chars[c][t].scale_int(d));
        }
        decomposition.push((c, d));
    }
    let proj = proj_terms.into_iter().map(sum_mixed).collect();
    Ok(L1Data {
        phi,
        proj,
        decomposition,
    })
}

/// Column `d^x_{chi, phi}` over all of `Irr(G)`.
#[derive(Clone, Debug)]
pub struct GenDecompColumn {
    pub sub: Subsection,
    pub values: Vec<CyclotomicNumber>,
}

/// `d^x_{chi phi} = (1/|C_G(x)|) sum_{u odd} chi(x u) conj(Phi_phi(u))`, with
/// integrality asserted.
pub fn gen_decomp_column(an: &Analysis, loc: &Local, sub: Subsection, l1: &L1Data) -> Result<GenDecompColumn> {
    let hcl = loc.h.conjugacy_classes();
    let scale = BigRational::new(BigInt::from(1), BigInt::from(loc.h.order()));
    let mut values = Vec::with_capacity(an.table.num_chars());
    for chi in 0..an.table.num_chars() {
        let terms = (0..hcl.len()).filter(|&l| loc.is_odd_class(l)).map(|l| {
            an.table.chars[chi][loc.xu_class[l]]
                .mul(&l1.proj[l].conjugate())
                .scale_int(hcl[l].size as i64)
        });
        let v = sum_mixed(terms).scale(&scale);
        if !v.is_integral() {
            return Err(Error::TheoryViolation(format!(
                "generalized decomposition number {v} is not an algebraic integer"
            )));
        }
        values.push(v);
    }
    Ok(GenDecompColumn { sub, values })
}

impl GenDecompColumn {
    /// `sum_chi |d_chi|^2`.
    pub fn norm(&self) -> Result<i64> {
        let v = sum_mixed(self.values.iter().map(|d| d.mul(&d.conjugate())));
        expect_count(&v, "column norm")
    }

    pub fn inner(&self, other: &GenDecompColumn) -> CyclotomicNumber {
        sum_mixed(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.mul(&b.conjugate())),
        )
    }

    /// `eps(Phi^x_phi) = sum eps(chi) d_chi`.
    pub fn eps(&self, table: &CharacterTable) -> CyclotomicNumber {
        sum_mixed(
            self.values
                .iter()
                .zip(&table.eps)
                .filter(|(_, &e)| e != 0)
                .map(|(d, &e)| d.scale_int(e as i64)),
        )
    }
}
