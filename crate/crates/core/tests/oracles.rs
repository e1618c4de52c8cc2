//! Values derived independently of the character-table engine: brute-force
//! sums over group elements and closed formulas for classical families.

use fsblocks::factory::{self, LinearKind};
use fsblocks::{CharacterTable, CyclotomicNumber, Group};
use proptest::prelude::*;

fn groups() -> Vec<(&'static str, Group)> {
    vec![
        ("S4", factory::symmetric(4).unwrap()),
        ("Q8", factory::quaternion(8).unwrap()),
        ("SD16", factory::semidihedral(16).unwrap()),
        ("SL(2,3)", factory::linear(LinearKind::Sl, 3).unwrap()),
        ("PSL(2,7)", factory::linear(LinearKind::Psl, 7).unwrap()),
        ("PGL(2,5)", factory::linear(LinearKind::Pgl, 5).unwrap()),
        ("C12", factory::cyclic(12).unwrap()),
    ]
}

/// `(1/|G|) sum_g chi(g^2)` summed element by element.
fn brute_indicator(g: &Group, t: &CharacterTable, chi: usize) -> i64 {
    let mut s = CyclotomicNumber::zero(1);
    for i in 0..g.order() {
        let c = g.class_of_index(g.mul(i, i));
        s = s.add(&t.chars[chi][c]);
    }
    let v = s.to_integer().expect("indicator sum is an integer");
    assert_eq!(v % g.order() as i64, 0);
    v / g.order() as i64
}

#[test]
fn indicators_match_element_sums() {
    for (name, g) in groups() {
        let t = CharacterTable::compute(&g).unwrap();
        for chi in 0..t.num_chars() {
            assert_eq!(brute_indicator(&g, &t, chi), t.eps[chi] as i64, "{name} character {chi}");
        }
    }
}

#[test]
fn square_roots_counted_directly() {
    for (name, g) in groups() {
        let t = CharacterTable::compute(&g).unwrap();
        let mut roots = vec![0i64; g.num_classes()];
        for i in 0..g.order() {
            let j = g.mul(i, i);
            if g.class_elements(g.class_of_index(j))[0] == j {
                roots[g.class_of_index(j)] += 1;
            }
        }
        for c in 0..g.num_classes() {
            let mut s = CyclotomicNumber::zero(1);
            for chi in 0..t.num_chars() {
                s = s.add(&t.chars[chi][c].scale_int(t.eps[chi] as i64));
            }
            assert_eq!(s.to_integer(), Some(roots[c]), "{name} class {c}");
        }
    }
}

#[test]
fn class_numbers_of_linear_groups() {
    for q in [3u32, 5, 7, 9, 11, 13] {
        let psl = factory::linear(LinearKind::Psl, q).unwrap();
        let pgl = factory::linear(LinearKind::Pgl, q).unwrap();
        let sl = factory::linear(LinearKind::Sl, q).unwrap();
        let k = |g: &Group| CharacterTable::compute(g).unwrap().num_chars();
        let q = q as usize;
        assert_eq!(psl.order(), q * (q * q - 1) / 2);
        assert_eq!(k(&psl), (q + 5) / 2, "PSL(2,{q})");
        assert_eq!(k(&pgl), q + 2, "PGL(2,{q})");
        assert_eq!(k(&sl), q + 4, "SL(2,{q})");
    }
}

#[test]
fn quaternion_and_dihedral_indicators() {
    for n in [8usize, 16, 32] {
        let d = CharacterTable::compute(&factory::dihedral(n).unwrap()).unwrap();
        assert!(d.eps.iter().all(|&e| e == 1), "D{n}");
        let q = CharacterTable::compute(&factory::quaternion(n).unwrap()).unwrap();
        // the n/8 faithful characters of Q(n) are symplectic
        let neg = q.eps.iter().filter(|&&e| e == -1).count();
        assert_eq!(neg, n / 8, "Q{n}");
    }
}

#[test]
fn cyclic_indicators() {
    for n in 1..=12usize {
        let t = CharacterTable::compute(&factory::cyclic(n).unwrap()).unwrap();
        let real = t.eps.iter().filter(|&&e| e == 1).count();
        assert_eq!(real, if n % 2 == 0 { 2 } else { 1 }, "C{n}");
        assert!(t.eps.iter().all(|&e| e >= 0));
    }
}

fn small_cyc() -> impl Strategy<Value = CyclotomicNumber> {
    (prop::sample::select(vec![1u32, 3, 4, 5, 8, 12, 15, 16]), prop::collection::vec((-3i64..=3, 0i64..16), 0..5)).prop_map(
        |(n, terms)| {
            terms.into_iter().fold(CyclotomicNumber::zero(n), |acc, (c, k)| {
                acc.add(&CyclotomicNumber::root_of_unity(n, k).scale_int(c))
            })
        },
    )
}

proptest! {
    #[test]
    fn galois_action_is_a_ring_homomorphism(a in small_cyc(), b in small_cyc(), k in prop::sample::select(vec![1i64, 7, 11, 13, 17, 23, 29, 31])) {
        let ga = a.galois_apply(k).unwrap();
        let gb = b.galois_apply(k).unwrap();
        prop_assert!(a.add(&b).galois_apply(k).unwrap().equals(&ga.add(&gb)));
        prop_assert!(a.mul(&b).galois_apply(k).unwrap().equals(&ga.mul(&gb)));
    }

    #[test]
    fn norm_of_conjugate_product_is_rational(a in small_cyc()) {
        let n = a.mul(&a.conjugate());
        prop_assert!(n.conjugate().equals(&n));
    }

    #[test]
    fn nonzero_elements_invert(a in small_cyc()) {
        prop_assume!(!a.is_zero());
        let inv = a.inverse().unwrap();
        prop_assert!(a.mul(&inv).equals(&CyclotomicNumber::one()));
    }
}
