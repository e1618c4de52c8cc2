//! Constructors for the standard families of permutation groups.

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::gf::{self, Gf, Mat2};
use crate::group::Group;
use crate::perm::Perm;

fn two_power_order(n: usize, min: usize, what: &str) -> Result<()> {
    if n.is_power_of_two() && n >= min && n <= 64 {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("{what} of order {n}")))
    }
}

pub fn cyclic(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::Unsupported("cyclic group of order 0".into()));
    }
    let images: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    Ok(Group::new(vec![Perm::from_images(images)?])?.named(format!("C{n}")))
}

/// Right regular representation of a group given by a multiplication on `0..n`
/// (with identity 0) and a list of generators.
pub fn from_multiplication(
    n: usize,
    gens: &[usize],
    mul: impl Fn(usize, usize) -> usize,
) -> Result<Group> {
    let perms = gens
        .iter()
        .map(|&g| Perm::from_images((0..n).map(|x| mul(x, g)).collect()))
        .collect::<Result<Vec<_>>>()?;
    let g = Group::new(perms)?;
    if g.order() != n {
        return Err(Error::Construction(format!(
            "generators span {} of {n} elements",
            g.order()
        )));
    }
    Ok(g)
}

/// `<a, b | a^m = 1, b^s = a^t, a^b = a^r>` acting regularly on the words `a^i b^j`.
pub fn metacyclic(m: u64, r: u64, s: u64, t: u64) -> Result<Group> {
    let rm = r % m;
    let mut rs = 1 % m;
    for _ in 0..s {
        rs = rs * rm % m;
    }
    if m == 0 || s == 0 || rs != 1 % m || t * rm % m != t % m {
        return Err(Error::Construction(format!(
            "inconsistent metacyclic parameters m={m} r={r} s={s} t={t}"
        )));
    }
    // b a = a^(r^-1) b, so (a^i b^j) a = a^(i + r^-j) b^j.
    let rinv = (1..=m).find(|&x| x * rm % m == 1 % m).unwrap_or(1);
    let mut rinv_pow = vec![1 % m; s as usize];
    for j in 1..s as usize {
        rinv_pow[j] = rinv_pow[j - 1] * rinv % m;
    }
    let enc = |i: u64, j: u64| (i + m * j) as usize;
    let n = (m * s) as usize;
    let a_img: Vec<usize> = (0..n as u64)
        .map(|x| {
            let (i, j) = (x % m, x / m);
            enc((i + rinv_pow[j as usize]) % m, j)
        })
        .collect();
    let b_img: Vec<usize> = (0..n as u64)
        .map(|x| {
            let (i, j) = (x % m, x / m);
            if j + 1 == s {
                enc((i + t) % m, 0)
            } else {
                enc(i, j + 1)
            }
        })
        .collect();
    let g = Group::new(vec![Perm::from_images(a_img)?, Perm::from_images(b_img)?])?;
    if g.order() != n {
        return Err(Error::Construction("metacyclic words not regular".into()));
    }
    Ok(g)
}

pub fn dihedral(n: usize) -> Result<Group> {
    if n == 4 {
        return Ok(direct_product(&cyclic(2)?, &cyclic(2)?)?.named("C2xC2"));
    }
    two_power_order(n, 8, "dihedral group")?;
    // On the vertices of the (n/2)-gon.
    let k = n / 2;
    let rot = Perm::from_images((0..k).map(|i| (i + 1) % k).collect())?;
    let refl = Perm::from_images((0..k).map(|i| (k - i) % k).collect())?;
    Ok(Group::new(vec![rot, refl])?.named(format!("D{n}")))
}

pub fn quaternion(n: usize) -> Result<Group> {
    two_power_order(n, 8, "quaternion group")?;
    let m = n as u64 / 2;
    Ok(metacyclic(m, m - 1, 2, m / 2)?.named(format!("Q{n}")))
}

pub fn semidihedral(n: usize) -> Result<Group> {
    two_power_order(n, 16, "semidihedral group")?;
    let m = n as u64 / 2;
    Ok(metacyclic(m, m / 2 - 1, 2, 0)?.named(format!("SD{n}")))
}

pub fn symmetric(n: usize) -> Result<Group> {
    if n == 0 || n > 8 {
        return Err(Error::Unsupported(format!("symmetric group of degree {n}")));
    }
    if n == 1 {
        return Ok(Group::trivial(1).named("S1"));
    }
    let cyc = Perm::from_images((0..n).map(|i| (i + 1) % n).collect())?;
    let tr = Perm::from_cycles(n, &[&[0, 1]])?;
    Ok(Group::new(vec![cyc, tr])?.named(format!("S{n}")))
}

pub fn alternating(n: usize) -> Result<Group> {
    if n == 0 || n > 8 {
        return Err(Error::Unsupported(format!("alternating group of degree {n}")));
    }
    if n < 3 {
        return Ok(Group::trivial(n.max(1)).named(format!("A{n}")));
    }
    let gens = (2..n)
        .map(|k| Perm::from_cycles(n, &[&[0, 1, k]]))
        .collect::<Result<Vec<_>>>()?;
    Ok(Group::new(gens)?.named(format!("A{n}")))
}

/// `A x B` on the disjoint union of the point sets.
pub fn direct_product(a: &Group, b: &Group) -> Result<Group> {
    let total = a.degree() + b.degree();
    let mut gens: Vec<Perm> = a.generators().iter().map(|g| g.shifted(0, total)).collect();
    gens.extend(b.generators().iter().map(|g| g.shifted(a.degree(), total)));
    let g = Group::new(gens)?;
    let name = match (a.name(), b.name()) {
        (Some(x), Some(y)) => Some(format!("{x}x{y}")),
        _ => None,
    };
    Ok(match name {
        Some(n) => g.named(n),
        None => g,
    })
}

/// The embedding of `g in A` into `A x B` as built by [`direct_product`].
pub fn embed_left(g: &Perm, total: usize) -> Perm {
    g.shifted(0, total)
}

pub fn embed_right(g: &Perm, offset: usize, total: usize) -> Perm {
    g.shifted(offset, total)
}

/// `G/N` for a normal subgroup `N`, acting regularly on the right cosets.
pub fn quotient(g: &Group, n: &Group) -> Result<Group> {
    if !n.is_subgroup_of(g) {
        return Err(Error::NotSubgroup("quotient kernel".into()));
    }
    for x in g.generators() {
        for y in n.generators() {
            if !n.contains(&y.conjugate_by(x)) {
                return Err(Error::NotSubgroup("quotient kernel is not normal".into()));
            }
        }
    }
    let mut coset = vec![usize::MAX; g.order()];
    let mut count = 0;
    for i in 0..g.order() {
        if coset[i] != usize::MAX {
            continue;
        }
        let gi = g.element(i);
        for h in n.elements() {
            coset[g.index_of(&(h * gi)).expect("closed")] = count;
        }
        count += 1;
    }
    let reps: Vec<usize> = {
        let mut r = vec![usize::MAX; count];
        for (i, &c) in coset.iter().enumerate() {
            if r[c] == usize::MAX {
                r[c] = i;
            }
        }
        r
    };
    let gens = g
        .generators()
        .iter()
        .map(|x| {
            let xi = g.index_of(x).expect("generator");
            Perm::from_images(reps.iter().map(|&r| coset[g.mul(r, xi)]).collect())
        })
        .collect::<Result<Vec<_>>>()?;
    Group::new(gens)
}

/// The unique involution of `Z(G)`.
pub fn central_involution(g: &Group) -> Result<Perm> {
    let z = g.center();
    let inv: Vec<&Perm> = z.elements().iter().filter(|x| x.order() == 2).collect();
    match inv.as_slice() {
        [x] => Ok((*x).clone()),
        _ => Err(Error::Construction(format!(
            "center has {} involutions, expected one",
            inv.len()
        ))),
    }
}

/// `(A x B)/<(z_A, z_B)>` for the unique central involutions.
pub fn central_product(a: &Group, b: &Group) -> Result<Group> {
    let za = central_involution(a)?;
    let zb = central_involution(b)?;
    let p = direct_product(a, b)?;
    let total = p.degree();
    let z = &embed_left(&za, total) * &embed_right(&zb, a.degree(), total);
    let n = p.subgroup_generated(&[z])?;
    let q = quotient(&p, &n)?;
    Ok(match (a.name(), b.name()) {
        (Some(x), Some(y)) => q.named(format!("{x}*{y}")),
        _ => q,
    })
}

pub fn wreath_c4_c2() -> Result<Group> {
    let c = Perm::from_cycles(8, &[&[0, 1, 2, 3]])?;
    let swap = Perm::from_cycles(8, &[&[0, 4], &[1, 5], &[2, 6], &[3, 7]])?;
    Ok(Group::new(vec![c, swap])?.named("C4wrC2"))
}

/// `(Z/n)^k : <M_1, ..>`, acting affinely on the `n^k` vectors; matrices act on
/// column vectors.
pub fn affine(n: u64, matrices: &[Vec<Vec<i64>>]) -> Result<Group> {
    let k = matrices.first().map_or(1, |m| m.len());
    if matrices.iter().any(|m| m.len() != k || m.iter().any(|r| r.len() != k)) {
        return Err(Error::Construction("matrices must be square of one size".into()));
    }
    let size = n.pow(k as u32) as usize;
    let decode = |mut x: usize| -> Vec<i64> {
        (0..k)
            .map(|_| {
                let d = (x as u64 % n) as i64;
                x /= n as usize;
                d
            })
            .collect()
    };
    let encode = |v: &[i64]| -> usize {
        v.iter()
            .rev()
            .fold(0usize, |acc, &d| acc * n as usize + d.rem_euclid(n as i64) as usize)
    };
    let mut gens = Vec::new();
    for i in 0..k {
        gens.push(Perm::from_images(
            (0..size)
                .map(|x| {
                    let mut v = decode(x);
                    v[i] += 1;
                    encode(&v)
                })
                .collect(),
        )?);
    }
    for m in matrices {
        let img = (0..size)
            .map(|x| {
                let v = decode(x);
                let w: Vec<i64> = m
                    .iter()
                    .map(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum())
                    .collect();
                encode(&w)
            })
            .collect();
        gens.push(Perm::from_images(img).map_err(|_| {
            Error::Construction(format!("matrix {m:?} is not invertible mod {n}"))
        })?);
    }
    Group::new(gens)
}

/// `N : K` where `act(k, n)` gives the image of `n` under the automorphism
/// attached to `k` (a left action by element indices), as a regular
/// permutation group on pairs.
pub fn semidirect(
    n: &Group,
    k: &Group,
    act: impl Fn(usize, usize) -> usize,
) -> Result<Group> {
    let (on, ok) = (n.order(), k.order());
    // Tabulate the action once.
    let table: Vec<usize> = (0..ok)
        .flat_map(|ki| (0..on).map(move |ni| (ki, ni)))
        .map(|(ki, ni)| act(ki, ni))
        .collect();
    let nid = n.index_of(&n.identity()).expect("identity");
    let kid = k.index_of(&k.identity()).expect("identity");
    // Pair (a, x) encoded as x*on + a; identity must be 0 for the helper.
    let enc = |a: usize, x: usize| x * on + a;
    let mul = |p: usize, q: usize| {
        let (a1, x1) = (p % on, p / on);
        let (a2, x2) = (q % on, q / on);
        enc(n.mul(a1, table[x1 * on + a2]), k.mul(x1, x2))
    };
    let mut gens: Vec<usize> = n
        .generators()
        .iter()
        .map(|g| enc(n.index_of(g).expect("generator"), kid))
        .collect();
    gens.extend(
        k.generators()
            .iter()
            .map(|g| enc(nid, k.index_of(g).expect("generator"))),
    );
    // Relabel so that the identity pair is point 0.
    let id = enc(nid, kid);
    let swap = |x: usize| {
        if x == id {
            0
        } else if x == 0 {
            id
        } else {
            x
        }
    };
    from_multiplication(on * ok, &gens.iter().map(|&g| swap(g)).collect::<Vec<_>>(), |p, q| {
        swap(mul(swap(p), swap(q)))
    })
}

/// Linear groups of dimension two over `GF(q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinearKind {
    Gl,
    Sl,
    Pgl,
    Psl,
    /// `PSL(2,q) : <sigma>` for the Frobenius `sigma` (q a square).
    PslSigma,
    /// `PGL(2,q) : <sigma>`.
    PglSigma,
}

fn sl2_generators(f: &Gf) -> Vec<Mat2> {
    let w = f.primitive();
    let m1 = f.neg(1);
    vec![
        [1, 1, 0, 1],
        [1, w, 0, 1],
        [0, 1, m1, 0],
        [w, 0, 0, f.inv(w)],
    ]
}

/// Permutation action of matrices on the nonzero row vectors.
pub fn vector_action(f: &Gf, mats: &[Mat2]) -> Result<Vec<Perm>> {
    let q = f.order();
    let idx = |v: [u32; 2]| (v[0] + q * v[1]) as usize - 1;
    mats.iter()
        .map(|m| {
            Perm::from_images(
                (1..q * q)
                    .map(|x| idx(gf::vec_mul(f, [x % q, x / q], m)))
                    .collect(),
            )
        })
        .collect()
}

pub fn projective_action(f: &Gf, mats: &[Mat2]) -> Result<Vec<Perm>> {
    let q = f.order() as usize;
    mats.iter()
        .map(|m| {
            Perm::from_images(
                (0..=q)
                    .map(|i| gf::projective_index(f, gf::vec_mul(f, gf::projective_point(f, i), m)))
                    .collect(),
            )
        })
        .collect()
}

pub fn frobenius_on_line(f: &Gf) -> Result<Perm> {
    let q = f.order() as usize;
    Perm::from_images(
        (0..=q)
            .map(|i| if i == q { q } else { f.frobenius(i as u32) as usize })
            .collect(),
    )
}

pub fn linear(kind: LinearKind, q: u32) -> Result<Group> {
    let f = Gf::new(q)?;
    let w = f.primitive();
    let mut mats = sl2_generators(&f);
    if matches!(kind, LinearKind::Gl | LinearKind::Pgl | LinearKind::PglSigma) {
        mats.push([w, 0, 0, 1]);
    }
    let name = match kind {
        LinearKind::Gl => format!("GL(2,{q})"),
        LinearKind::Sl => format!("SL(2,{q})"),
        LinearKind::Pgl => format!("PGL(2,{q})"),
        LinearKind::Psl => format!("PSL(2,{q})"),
        LinearKind::PslSigma => format!("PSL(2,{q}).2sigma"),
        LinearKind::PglSigma => format!("PGL(2,{q}).2sigma"),
    };
    let gens = match kind {
        LinearKind::Gl | LinearKind::Sl => vector_action(&f, &mats)?,
        LinearKind::Pgl | LinearKind::Psl => projective_action(&f, &mats)?,
        LinearKind::PslSigma | LinearKind::PglSigma => {
            if f.degree() != 2 {
                return Err(Error::Unsupported(format!("Frobenius twist over GF({q})")));
            }
            let mut g = projective_action(&f, &mats)?;
            g.push(frobenius_on_line(&f)?);
            g
        }
    };
    Ok(Group::new(gens)?.named(name))
}

/// Elements of `SL(2,q)` as matrices, with a lookup table, for building
/// abstract extensions.
pub fn sl2_matrices(f: &Gf) -> (Vec<Mat2>, FxHashMap<Mat2, usize>) {
    let gens = sl2_generators(f);
    let id: Mat2 = [1, 0, 0, 1];
    let mut list = vec![id];
    let mut seen: FxHashMap<Mat2, usize> = FxHashMap::default();
    seen.insert(id, 0);
    let mut head = 0;
    while head < list.len() {
        let x = list[head];
        head += 1;
        for g in &gens {
            let y = gf::mat_mul(f, &x, g);
            if !seen.contains_key(&y) {
                seen.insert(y, list.len());
                list.push(y);
            }
        }
    }
    (list, seen)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_groups() {
        let d = dihedral(8).unwrap();
        assert_eq!((d.order(), d.involution_count()), (8, 5));
        let q = quaternion(8).unwrap();
        assert_eq!((q.order(), q.involution_count()), (8, 1));
        let q16 = quaternion(16).unwrap();
        assert_eq!((q16.order(), q16.involution_count()), (16, 1));
        let sd = semidihedral(16).unwrap();
        assert_eq!((sd.order(), sd.involution_count()), (16, 5));
        assert_eq!(dihedral(16).unwrap().involution_count(), 9);
        assert!(dihedral(12).is_err());
        assert!(metacyclic(8, 3, 2, 1).is_err());
    }

    #[test]
    fn products() {
        let d = dihedral(8).unwrap();
        let c4 = cyclic(4).unwrap();
        let dc = central_product(&d, &c4).unwrap();
        assert_eq!(dc.order(), 16);
        assert_eq!(dc.center().order(), 4);
        let qc = central_product(&quaternion(8).unwrap(), &c4).unwrap();
        assert_eq!(qc.order(), 16);
        assert_eq!(qc.involution_count(), dc.involution_count());
        let w = wreath_c4_c2().unwrap();
        assert_eq!(w.order(), 32);
        assert!(central_product(&direct_product(&c4, &c4).unwrap(), &c4).is_err());
    }

    #[test]
    fn linear_orders() {
        assert_eq!(linear(LinearKind::Psl, 7).unwrap().order(), 168);
        assert_eq!(linear(LinearKind::Pgl, 7).unwrap().order(), 336);
        assert_eq!(linear(LinearKind::Sl, 3).unwrap().order(), 24);
        assert_eq!(linear(LinearKind::Gl, 3).unwrap().order(), 48);
        assert_eq!(linear(LinearKind::Psl, 9).unwrap().order(), 360);
        assert_eq!(linear(LinearKind::PglSigma, 9).unwrap().order(), 1440);
        assert_eq!(linear(LinearKind::PslSigma, 9).unwrap().order(), 720);
        assert_eq!(linear(LinearKind::Psl, 17).unwrap().order(), 2448);
        assert!(linear(LinearKind::PslSigma, 7).is_err());
        let p = linear(LinearKind::Psl, 7).unwrap();
        assert_eq!(p.num_classes(), 6);
        assert_eq!(p.sylow2().order(), 8);
    }

    #[test]
    fn affine_and_semidirect() {
        let h = affine(4, &[vec![vec![0, 3], vec![1, 3]]]).unwrap();
        assert_eq!(h.order(), 48);
        let s = affine(4, &[vec![vec![0, 3], vec![1, 3]], vec![vec![0, 1], vec![1, 0]]]).unwrap();
        assert_eq!(s.order(), 96);
        assert!(affine(4, &[vec![vec![2, 0], vec![0, 1]]]).is_err());
        // C3 : C4 with inversion
        let c3 = cyclic(3).unwrap();
        let c4 = cyclic(4).unwrap();
        let gen = c4.index_of(&c4.generators()[0]).unwrap();
        let sq = c4.mul(gen, gen);
        let g = semidirect(&c3, &c4, |k, n| {
            // odd powers of the generator invert
            if k == gen || k == c4.mul(sq, gen) {
                c3.inv(n)
            } else {
                n
            }
        })
        .unwrap();
        assert_eq!(g.order(), 12);
        assert!(!g.is_abelian());
        assert_eq!(g.involution_count(), 1);
    }

    #[test]
    fn alternating_and_symmetric() {
        assert_eq!(symmetric(5).unwrap().order(), 120);
        assert_eq!(alternating(6).unwrap().order(), 360);
        assert_eq!(alternating(7).unwrap().order(), 2520);
        assert_eq!(alternating(4).unwrap().num_classes(), 4);
    }
}
