//! Example groups: the Fong-Reynolds gluing, extensions of SL(2,q), the
//! semilinear and starred projective groups, and the homocyclic family.

use crate::chartab::{ClassFunction, CharacterTable};
use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::factory::{self, LinearKind};
use crate::gf::{self, Gf, Mat2};
use crate::group::Group;
use crate::iso::{catalog_group, is_isomorphic, iso_type_2group};
use crate::perm::Perm;

/// `G < Hhat x S3` of index 2 gluing `Hhat/H` to `S3/A3`, with its subgroup `H x C3`.
#[derive(Clone, Debug)]
pub struct FongReynolds {
    pub g: Group,
    pub h_c3: Group,
    pub h: Group,
    pub hhat: Group,
}

pub fn fong_reynolds(h: &Group, hhat: &Group) -> Result<FongReynolds> {
    if !h.is_subgroup_of(hhat) || h.order() * 2 != hhat.order() {
        return Err(Error::Construction(format!(
            "need |Hhat : H| = 2, got orders {} and {}",
            h.order(),
            hhat.order()
        )));
    }
    let e = hhat
        .generators()
        .iter()
        .find(|x| !h.contains(x))
        .ok_or_else(|| Error::Construction("Hhat generators all lie in H".into()))?;
    let n = hhat.degree();
    let total = n + 3;
    let c3 = Perm::from_cycles(3, &[&[0, 1, 2]])?.shifted(n, total);
    let tau = Perm::from_cycles(3, &[&[0, 1]])?.shifted(n, total);
    let mut base: Vec<Perm> = h.generators().iter().map(|x| x.shifted(0, total)).collect();
    base.push(c3);
    let h_c3 = Group::new(base.clone())?;
    base.push(&e.shifted(0, total) * &tau);
    let g = Group::new(base)?;
    if g.order() != 3 * hhat.order() {
        return Err(Error::Construction(format!(
            "glued group has order {}, expected {}",
            g.order(),
            3 * hhat.order()
        )));
    }
    // Neither H x S3 nor Hhat x C3.
    if g.contains(&tau) || g.contains(&e.shifted(0, total)) {
        return Err(Error::Construction("gluing degenerated to a direct product".into()));
    }
    let name = match (h.name(), hhat.name()) {
        (Some(a), Some(b)) => Some(format!("FR({a},{b})")),
        _ => None,
    };
    Ok(FongReynolds {
        g: match name {
            Some(s) => g.named(s),
            None => g,
        },
        h_c3,
        h: h.clone(),
        hhat: hhat.clone(),
    })
}

impl FongReynolds {
    /// Index of `(1_H x theta)^G` in `table`, with `theta` a faithful character
    /// of the `C3` factor; asserts irreducibility.
    pub fn designated_character(&self, table: &CharacterTable) -> Result<usize> {
        let n = self.hhat.degree();
        let theta: ClassFunction = self
            .h_c3
            .conjugacy_classes()
            .iter()
            .map(|c| {
                let k = c.representative.apply(n) - n;
                CyclotomicNumber::root_of_unity(3, k as i64)
            })
            .collect();
        let ind = table.induce(&self.g, &self.h_c3, &theta)?;
        (0..table.num_chars())
            .find(|&i| table.chars[i] == ind)
            .ok_or_else(|| Error::Construction("induced character is reducible".into()))
    }
}

/// An index-2 overgroup together with its distinguished index-2 subgroup,
/// both in the same permutation representation.
#[derive(Clone, Debug)]
pub struct Extension {
    pub base: Group,
    pub top: Group,
}

/// `SL(2,q) <diag(z, 1/z)>` inside `SL(2,q^2)` with `z` of order `2(q-1)`,
/// acting on the orbit of `e1`.
pub fn sl2_q_extension(q: u32) -> Result<Extension> {
    let fq = Gf::new(q)?;
    if fq.degree() != 1 {
        return Err(Error::Unsupported(format!("SL(2,{q}).2 needs a prime q")));
    }
    let f = Gf::new(q * q)?;
    // GF(q) sits in GF(q^2) as the elements below q.
    let w = fq.primitive();
    let sl: Vec<Mat2> = vec![
        [1, 1, 0, 1],
        [0, 1, f.neg(1), 0],
        [w, 0, 0, f.inv(w)],
    ];
    let z = f.pow(f.primitive(), ((q + 1) / 2) as u64);
    debug_assert_eq!(f.mult_order(z), 2 * (q - 1));
    let d: Mat2 = [z, 0, 0, f.inv(z)];
    let mut all = sl.clone();
    all.push(d);
    let (base, top) = matrix_orbit_action(&f, &sl, &all)?;
    Ok(Extension {
        base: base.named(format!("SL(2,{q})")),
        top: top.named(format!("SL(2,{q}).2q")),
    })
}

/// Permutation groups of the matrices `sub` and `all` on the orbit of `e1` under `all`.
fn matrix_orbit_action(f: &Gf, sub: &[Mat2], all: &[Mat2]) -> Result<(Group, Group)> {
    let mut orbit: Vec<[u32; 2]> = vec![[1, 0]];
    let mut index = rustc_hash::FxHashMap::default();
    index.insert([1u32, 0u32], 0usize);
    let mut head = 0;
    while head < orbit.len() {
        let v = orbit[head];
        head += 1;
        for m in all {
            let w = gf::vec_mul(f, v, m);
            if !index.contains_key(&w) {
                index.insert(w, orbit.len());
                orbit.push(w);
            }
        }
    }
    let act = |m: &Mat2| Perm::from_images(orbit.iter().map(|&v| index[&gf::vec_mul(f, v, m)]).collect());
    let sub_p = sub.iter().map(act).collect::<Result<Vec<_>>>()?;
    let all_p = all.iter().map(act).collect::<Result<Vec<_>>>()?;
    Ok((Group::new(sub_p)?, Group::new(all_p)?))
}

/// `SL(2,q) : <alpha>` with `alpha` conjugation by `(0 c; 1 0)`, `c = 1` for
/// `q = 3 mod 4` and `c` a primitive root for `q = 1 mod 4`; the matrix squares
/// to a scalar, so `alpha` is an involution.
pub fn sl2_sd_extension(q: u32) -> Result<Extension> {
    let f = Gf::new(q)?;
    if f.degree() != 1 {
        return Err(Error::Unsupported(format!("SL(2,{q}).2 needs a prime q")));
    }
    let c = if q % 4 == 3 { 1 } else { f.primitive() };
    let m: Mat2 = [0, c, 1, 0];
    let mi = gf::mat_inv(&f, &m)?;
    let (mats, lookup) = factory::sl2_matrices(&f);
    let gens: Vec<usize> = [[1, 1, 0, 1], [0, 1, f.neg(1), 0], [f.primitive(), 0, 0, f.inv(f.primitive())]]
        .iter()
        .map(|g| lookup[g])
        .collect();
    let sl = factory::from_multiplication(mats.len(), &gens, |a, b| {
        lookup[&gf::mat_mul(&f, &mats[a], &mats[b])]
    })?;
    let matrix_of = |i: usize| mats[sl.element(i).apply(0)];
    let index_of: rustc_hash::FxHashMap<Mat2, usize> =
        (0..sl.order()).map(|i| (matrix_of(i), i)).collect();
    let c2 = factory::cyclic(2)?;
    let c2_id = c2.index_of(&c2.identity()).expect("identity");
    let top = factory::semidirect(&sl, &c2, |k, n| {
        if k == c2_id {
            n
        } else {
            index_of[&gf::mat_mul(&f, &gf::mat_mul(&f, &mi, &matrix_of(n)), &m)]
        }
    })?;
    let base = top.subgroup_generated(&top.generators()[..sl.generators().len()])?;
    if base.order() != sl.order() {
        return Err(Error::Construction("SL(2,q) did not embed".into()));
    }
    Ok(Extension {
        base: base.named(format!("SL(2,{q})")),
        top: top.named(format!("SL(2,{q}).2sd")),
    })
}

/// The index-2 subgroup of `PGL(2,q) : <sigma>` other than `PGL(2,q)` and
/// `PSL(2,q) : <sigma>`, recognised by its semidihedral Sylow 2-subgroup.
pub fn pgl_star(q: u32) -> Result<Extension> {
    let gamma = factory::linear(LinearKind::PglSigma, q)?;
    let psl = factory::linear(LinearKind::Psl, q)?;
    let mut found = Vec::new();
    for h in gamma.index2_subgroups() {
        if !psl.is_subgroup_of(&h) {
            continue;
        }
        let label = iso_type_2group(&h.sylow2())?.label;
        if label.starts_with("SD") {
            found.push(h);
        }
    }
    match found.len() {
        1 => Ok(Extension {
            base: psl,
            top: found.pop().expect("one").named(format!("PGLstar({q})")),
        }),
        n => Err(Error::Construction(format!(
            "{n} index-2 subgroups of PGammaL(2,{q}) with semidihedral Sylow 2-subgroup"
        ))),
    }
}

/// `H : <sigma>` for `H = PSL(2,q)` or `PGL(2,q)`, `q` a square.
pub fn semilinear(kind: LinearKind, q: u32) -> Result<Extension> {
    let (base_kind, top_kind) = match kind {
        LinearKind::Psl => (LinearKind::Psl, LinearKind::PslSigma),
        LinearKind::Pgl => (LinearKind::Pgl, LinearKind::PglSigma),
        _ => return Err(Error::Unsupported(format!("semilinear extension of {kind:?}"))),
    };
    Ok(Extension {
        base: factory::linear(base_kind, q)?,
        top: factory::linear(top_kind, q)?,
    })
}

/// Order-3 automorphism of `C4 x C4` and the swap normalising it.
pub const HOMOCYCLIC_A: [[i64; 2]; 2] = [[0, -1], [1, -1]];
pub const HOMOCYCLIC_SWAP: [[i64; 2]; 2] = [[0, 1], [1, 0]];

fn mat(m: [[i64; 2]; 2]) -> Vec<Vec<i64>> {
    m.iter().map(|r| r.to_vec()).collect()
}

/// `C4^2 : C3`.
pub fn homocyclic_base() -> Result<Group> {
    Ok(factory::affine(4, &[mat(HOMOCYCLIC_A)])?.named("C4^2:C3"))
}

/// `C4^2 : S3` over `C4^2 : C3` (extended defect group `C4 wr C2`).
pub fn homocyclic_s3() -> Result<Extension> {
    let top = factory::affine(4, &[mat(HOMOCYCLIC_A), mat(HOMOCYCLIC_SWAP)])?;
    let base = top.subgroup_generated(&top.generators()[..3])?;
    Ok(Extension {
        base: base.named("C4^2:C3"),
        top: top.named("C4^2:S3"),
    })
}

/// `H x C2` over `H` in one representation.
pub fn times_c2(h: &Group) -> Result<Extension> {
    let c2 = factory::cyclic(2)?;
    let top = factory::direct_product(h, &c2)?;
    let total = top.degree();
    let base = Group::new(h.generators().iter().map(|x| x.shifted(0, total)).collect())?;
    Ok(Extension {
        base: match h.name() {
            Some(n) => base.named(n),
            None => base,
        },
        top,
    })
}

/// Some index-2 subgroup of `top` isomorphic to `base` (first in canonical order).
pub fn find_index2_copy(base: &Group, top: &Group) -> Result<Group> {
    if base.order() * 2 != top.order() {
        return Err(Error::Construction(format!(
            "orders {} and {} are not in ratio 1:2",
            base.order(),
            top.order()
        )));
    }
    top.index2_subgroups()
        .into_iter()
        .find(|h| is_isomorphic(h, base))
        .ok_or_else(|| Error::Construction("no index-2 subgroup of the required type".into()))
}

/// The pair `(D, E)` for catalog labels, with `D` found inside `E`; direct
/// products `DxC2` use the first factor.
pub fn two_group_pair(d_label: &str, e_label: &str) -> Result<Extension> {
    let d = catalog_group(d_label)?;
    if e_label == format!("{d_label}xC2") {
        return times_c2(&d.named(d_label));
    }
    let e = catalog_group(e_label)?;
    let base = find_index2_copy(&d, &e)?;
    Ok(Extension {
        base: base.named(d_label),
        top: e.named(e_label),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fong_reynolds_d8_d16() {
        let p = two_group_pair("D8", "D16").unwrap();
        let fr = fong_reynolds(&p.base, &p.top).unwrap();
        assert_eq!(fr.g.order(), 48);
        let t = CharacterTable::compute(&fr.g).unwrap();
        let chi = fr.designated_character(&t).unwrap();
        assert!(t.is_real(chi));
        assert_eq!(t.degree(chi), 2);
    }

    #[test]
    fn sl2_extensions() {
        for q in [3u32, 5] {
            let a = sl2_q_extension(q).unwrap();
            let order = (q * (q * q - 1)) as usize;
            assert_eq!((a.base.order(), a.top.order()), (order, 2 * order));
            assert_eq!(iso_type_2group(&a.top.sylow2()).unwrap().label, "Q16");
            // non-split: no involution outside SL(2,q)
            assert!(a.top.elements().iter().all(|x| a.base.contains(x) || x.order() != 2));

            let b = sl2_sd_extension(q).unwrap();
            assert_eq!((b.base.order(), b.top.order()), (order, 2 * order));
            assert_eq!(iso_type_2group(&b.top.sylow2()).unwrap().label, "SD16");
            assert_eq!(iso_type_2group(&b.base.sylow2()).unwrap().label, "Q8");
        }
    }

    #[test]
    fn starred_and_semilinear() {
        let m10 = pgl_star(9).unwrap();
        assert_eq!(m10.top.order(), 720);
        assert_eq!(iso_type_2group(&m10.top.sylow2()).unwrap().label, "SD16");
        let s6 = semilinear(LinearKind::Psl, 9).unwrap();
        assert_eq!(s6.top.order(), 720);
        let pgaml = semilinear(LinearKind::Pgl, 9).unwrap();
        assert_eq!(pgaml.top.order(), 1440);
        assert!(pgaml.base.is_subgroup_of(&pgaml.top));
        assert_eq!(iso_type_2group(&pgaml.top.sylow2()).unwrap().label, "C8:C2^2");
    }

    #[test]
    fn homocyclic_groups() {
        let h = homocyclic_base().unwrap();
        assert_eq!(h.order(), 48);
        let e = homocyclic_s3().unwrap();
        assert_eq!(e.top.order(), 96);
        assert!(e.base.same_elements(&h));
        assert_eq!(iso_type_2group(&e.top.sylow2()).unwrap().label, "C4wrC2");
    }

    #[test]
    fn catalog_pairs() {
        for (d, e) in [("D8", "D8xC2"), ("D8", "D8*C4"), ("D8", "SD16"), ("Q8", "Q16"), ("C4xC4", "C8xC4")] {
            let p = two_group_pair(d, e).unwrap();
            assert!(p.base.is_subgroup_of(&p.top));
            assert_eq!(p.base.order() * 2, p.top.order());
        }
    }
}
