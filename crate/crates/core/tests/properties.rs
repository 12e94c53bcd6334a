use std::collections::HashMap;
use std::sync::Arc;

use linkset_core::bent::{bent_linking, is_bent, kerdock_bent_set, wht, BooleanFunction};
use linkset_core::designs::{mcfarland_params, spence_params, HyperplaneFamily};
use linkset_core::diffmat::{
    build_general, build_improved, build_nonreversible, build_tyken, dm_field_elementary, dm_galois_ring, verify_dm,
    DifferenceMatrix,
};
use linkset_core::group_ring::GroupRingElement;
use linkset_core::linking::{mu_nu_candidates, Branch, ReducedLinkingSystem};
use linkset_core::{Elem, FiniteGroup};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn group_for(idx: usize) -> Arc<FiniteGroup> {
    let g = match idx % 5 {
        0 => FiniteGroup::make_abelian(&[4, 2]).unwrap(),
        1 => FiniteGroup::make_abelian(&[3, 3]).unwrap(),
        2 => FiniteGroup::make_dihedral8(),
        3 => FiniteGroup::make_quaternion8(),
        _ => FiniteGroup::direct_product(
            &FiniteGroup::make_dihedral8(),
            &FiniteGroup::make_abelian(&[2]).unwrap(),
        )
        .unwrap(),
    };
    g.into_ref()
}

fn element(group: &Arc<FiniteGroup>, coeffs: &[i64]) -> GroupRingElement {
    let v = group.order();
    GroupRingElement::from_coeffs(group.clone(), coeffs.iter().cycle().take(v).copied().collect()).unwrap()
}

fn naive_verify_dm(m: &DifferenceMatrix) -> bool {
    let g = &m.group;
    for i in 0..m.rows.len() {
        for r in 0..i {
            let mut counts: HashMap<Elem, usize> = HashMap::new();
            for (&a, &b) in m.rows[i].iter().zip(&m.rows[r]) {
                *counts.entry(g.mul(a, g.inv(b))).or_default() += 1;
            }
            if counts.len() != g.order() || counts.values().any(|&c| c != m.lambda) {
                return false;
            }
        }
    }
    true
}

fn naive_wht(f: &BooleanFunction) -> Vec<i64> {
    let n = 1usize << f.arity();
    (0..n)
        .map(|u| {
            (0..n)
                .map(|x| {
                    if (f.eval(x) as u32 + (u & x).count_ones()).is_multiple_of(2) {
                        1
                    } else {
                        -1
                    }
                })
                .sum()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_ring_associative(idx in 0usize..5, a in prop::collection::vec(-3i64..4, 16),
                              b in prop::collection::vec(-3i64..4, 16), c in prop::collection::vec(-3i64..4, 16)) {
        let g = group_for(idx);
        let (a, b, c) = (element(&g, &a), element(&g, &b), element(&g, &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn involution_reverses_products(idx in 0usize..5, a in prop::collection::vec(-3i64..4, 16),
                                    b in prop::collection::vec(-3i64..4, 16)) {
        let g = group_for(idx);
        let (a, b) = (element(&g, &a), element(&g, &b));
        prop_assert_eq!((&a * &b).involution(), &b.involution() * &a.involution());
        prop_assert_eq!(a.involution().involution(), a);
    }

    #[test]
    fn dm_verifier_matches_oracle(idx in 0usize..5, rows in 2usize..4, seed in any::<u64>(), mutate in any::<bool>()) {
        let g = group_for(idx);
        let v = g.order();
        let mut rng = StdRng::seed_from_u64(seed);
        let m = DifferenceMatrix {
            group: g.clone(),
            lambda: 1,
            rows: (0..rows).map(|_| (0..v).map(|_| rng.gen_range(0..v as Elem)).collect()).collect(),
        };
        prop_assert_eq!(verify_dm(&m), naive_verify_dm(&m));
        let mut good = dm_field_elementary(3).unwrap();
        if mutate {
            let (i, j) = (rng.gen_range(1..good.rows.len()), rng.gen_range(0..8));
            good.rows[i][j] = (good.rows[i][j] + 1) % 8;
        }
        prop_assert_eq!(verify_dm(&good), naive_verify_dm(&good));
        prop_assert_eq!(verify_dm(&good), !mutate);
    }

    #[test]
    fn wht_matches_naive(arity in 1u32..8, seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let table: Vec<bool> = (0..1usize << arity).map(|_| rng.gen()).collect();
        let f = BooleanFunction::new(arity, table).unwrap();
        let w = wht(&f);
        prop_assert_eq!(&w, &naive_wht(&f));
        let energy: i64 = w.iter().map(|x| x * x).sum();
        prop_assert_eq!(energy, 1i64 << (2 * arity));
        let back = BooleanFunction::from_hex(arity, &f.to_hex()).unwrap();
        prop_assert_eq!(back, f);
    }
}

#[test]
fn hyperplane_products() {
    for (q, max_d) in [(2u32, 3u32), (3, 3)] {
        for d in 1..=max_d {
            let dim = d as usize + 1;
            let g = FiniteGroup::make_abelian(&vec![q; dim]).unwrap().into_ref();
            let all = g.subgroup_generated(&g.generators());
            let fam = HyperplaneFamily::with_default_basis(&g, &all, q).unwrap();
            assert_eq!(fam.len(), ((q.pow(d + 1) - 1) / (q - 1)) as usize);
            let ring: Vec<GroupRingElement> = fam
                .planes
                .iter()
                .map(|h| GroupRingElement::from_subset(g.clone(), h.elements()).unwrap())
                .collect();
            let whole = GroupRingElement::all_ones(g.clone());
            let qd = (q as i64).pow(d);
            for (i, hi) in ring.iter().enumerate() {
                for (j, hj) in ring.iter().enumerate() {
                    let expect = if i == j {
                        hi.scale(qd)
                    } else {
                        whole.scale(qd / q as i64)
                    };
                    assert_eq!(hi * hj, expect, "q={q} d={d} i={i} j={j}");
                }
            }
        }
    }
}

#[test]
fn integrality_filters_single_branch() {
    // McFarland with q > 2 leaves only the upper branch; Spence only the lower
    for q in [3i64, 4, 5, 7, 8, 9] {
        for d in 1..=3 {
            let c = mu_nu_candidates(&mcfarland_params(q, d));
            assert!(c.iter().all(|m| m.branch == Branch::Upper), "q={q} d={d}");
        }
    }
    for d in 1..=4 {
        let c = mu_nu_candidates(&spence_params(d));
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].branch, Branch::Lower);
    }
}

fn constructed_systems() -> Vec<ReducedLinkingSystem> {
    let ab = |f: &[u32]| FiniteGroup::make_abelian(f).unwrap().into_ref();
    let mut out = vec![
        build_general(&ab(&[8, 2, 2, 2])).unwrap(),
        build_general(&ab(&[8, 4, 2])).unwrap(),
        build_improved(&ab(&[4, 2, 2, 2, 2])).unwrap(),
        build_improved(&ab(&[4, 4, 2, 2])).unwrap(),
        build_improved(&ab(&[4, 4, 4])).unwrap(),
        build_tyken(1, &FiniteGroup::make_abelian(&[2]).unwrap()).unwrap(),
        build_nonreversible(1).unwrap(),
        build_nonreversible(2).unwrap(),
        bent_linking(&kerdock_bent_set(1).unwrap()).unwrap(),
        bent_linking(&kerdock_bent_set(2).unwrap()).unwrap(),
    ];
    let complements: Vec<_> = out.iter().take(3).map(|s| s.complement_system()).collect();
    out.extend(complements);
    out
}

#[test]
fn constructed_systems_satisfy_integrality_and_round_trip() {
    for sys in constructed_systems() {
        let p = sys.params;
        let root = (p.n as f64).sqrt() as i64;
        assert_eq!(root * root, p.n);
        let (mu, nu) = (sys.munu.mu, sys.munu.nu);
        assert_eq!((mu - nu) * (mu - nu), p.n);
        let sign = if sys.munu.branch == Branch::Upper { 1 } else { -1 };
        assert_eq!(nu * p.v, p.k * (p.k + sign * root));
        assert_eq!(mu, nu - sign * root);
        let full = sys.expand();
        assert!(full.verify_full().unwrap());
        let back = full.reduce().unwrap();
        assert_eq!(back, sys);
        assert_eq!(back.expand(), full);
    }
}

#[test]
fn full_verifier_catches_mutations() {
    let mut rng = StdRng::seed_from_u64(7);
    for sys in constructed_systems().into_iter().filter(|s| s.group.order() <= 64) {
        let full = sys.expand();
        let g = &full.group;
        for _ in 0..100 {
            let keys: Vec<(usize, usize)> = full.sets.keys().copied().collect();
            let (i, j) = keys[rng.gen_range(0..keys.len())];
            let mut m = full.clone();
            let set = m.sets.get_mut(&(i, j)).unwrap();
            let pos = rng.gen_range(0..set.len());
            let member = g.membership(set);
            let outside: Vec<Elem> = g.elements().filter(|&x| !member[x as usize]).collect();
            set[pos] = outside[rng.gen_range(0..outside.len())];
            set.sort_unstable();
            let mutated = set.clone();
            // keep D_{j,i} = D_{i,j}^(-1) half the time so only the product check can fail
            if rng.gen() {
                let mut inv: Vec<Elem> = mutated.iter().map(|&x| g.inv(x)).collect();
                inv.sort_unstable();
                m.sets.insert((j, i), inv);
            }
            assert!(!m.verify_full().unwrap(), "mutation of D({i},{j}) went unnoticed");
        }
    }
}

#[test]
fn galois_ring_matrices_verify() {
    for (e, t) in [(1, 1), (1, 3), (2, 1), (2, 2), (3, 1), (3, 2)] {
        let m = dm_galois_ring(e, t).unwrap();
        assert!(verify_dm(&m) && naive_verify_dm(&m), "GR(2^{e},{t})");
    }
}

#[test]
fn bent_iff_flat_spectrum_small() {
    for bits in 0..16u64 {
        let f = BooleanFunction::from_bits(2, bits).unwrap();
        assert_eq!(is_bent(&f).unwrap(), f.weight() % 2 == 1);
    }
}
