use proptest::prelude::*;
use wallcross_core::lattice::{mukai_pairing, reflect, signature, standard_lattice, IntegralLattice, MukaiVector, SurfaceConfig};
use wallcross_core::rational::{q, qf};
use wallcross_core::roots::{alcove_of, fundamental_point, RootSystem};
use wallcross_core::Q;

#[test]
fn classical_root_counts() {
    let expected = [("A1", 1), ("A2", 3), ("A3", 6), ("A4", 10), ("D4", 12), ("D5", 20), ("E6", 36), ("E7", 63), ("E8", 120)];
    for (name, count) in expected {
        let r = RootSystem::from_name(name).unwrap();
        let pos = r.positive_roots().unwrap();
        assert_eq!(pos.len(), count, "{name}");
        assert!(pos.iter().all(|a| r.form(a, a) == 2), "{name}");
    }
}

#[test]
fn orbit_of_a_root_is_all_roots() {
    for name in ["A2", "A3", "D4", "E6"] {
        let r = RootSystem::from_name(name).unwrap();
        let all: std::collections::BTreeSet<Vec<i64>> = r.roots().unwrap().into_iter().collect();
        let orbit = r.weyl_orbit(&r.simple_root(0), 10_000);
        assert_eq!(orbit, all, "{name}");
    }
}

#[test]
fn zero_alcove_is_nonempty() {
    for name in ["A1", "A2", "A3"] {
        let r = RootSystem::from_name(name).unwrap();
        let x = fundamental_point(&r).unwrap();
        let a = alcove_of(&r, &x).unwrap();
        assert!(a.k.iter().all(|&k| k == 0));
        assert!(a.is_consistent());
    }
}

#[test]
fn catalogue_even_lattices_pass_diagonal_check() {
    for name in ["U", "A2", "E8", "-E8", "elliptic-K3", "elliptic-I2", "elliptic-I3", "K3", "affine-A2", "D4-cartan"] {
        let l = standard_lattice(name).unwrap();
        assert!(l.is_even(), "{name}");
        assert!(l.gram.iter().enumerate().all(|(i, row)| row[i] % 2 == 0), "{name}");
    }
    assert_eq!(signature(&standard_lattice("K3").unwrap()), (4, 20, 0));
}

#[test]
fn point_ideal_square() {
    let surf = SurfaceConfig::elliptic();
    for n in 0..8 {
        let v = MukaiVector::new(1, vec![0, 0], 1 - n);
        assert_eq!(mukai_pairing(&surf, &v, &v), 2 * n - 2);
    }
}

fn small() -> impl Strategy<Value = Q> {
    (-6i64..7, 1i64..4).prop_map(|(a, b)| qf(a, b))
}

proptest! {
    #[test]
    fn mukai_pairing_symmetric_bilinear(
        a in proptest::collection::vec(-4i64..5, 4),
        b in proptest::collection::vec(-4i64..5, 4),
        c in proptest::collection::vec(-4i64..5, 4),
        k in -3i64..4,
    ) {
        let surf = SurfaceConfig::elliptic();
        let mv = |x: &[i64]| MukaiVector::new(x[0], vec![x[1], x[2]], x[3]);
        let (va, vb, vc) = (mv(&a), mv(&b), mv(&c));
        prop_assert_eq!(mukai_pairing(&surf, &va, &vb), mukai_pairing(&surf, &vb, &va));
        let lhs = mukai_pairing(&surf, &va.scale(k).add(&vb), &vc);
        prop_assert_eq!(lhs, k * mukai_pairing(&surf, &va, &vc) + mukai_pairing(&surf, &vb, &vc));
    }

    #[test]
    fn reflection_is_isometric_involution(
        alpha in proptest::collection::vec(-2i64..3, 4),
        x in proptest::collection::vec(small(), 4),
        y in proptest::collection::vec(small(), 4),
    ) {
        let l = standard_lattice("elliptic-I3").unwrap();
        let a: Vec<Q> = alpha.iter().map(|&t| q(t)).collect();
        prop_assume!(l.pairing(&a, &a).unwrap() != q(0));
        let rx = reflect(&l, &a, &x).unwrap();
        let ry = reflect(&l, &a, &y).unwrap();
        prop_assert_eq!(reflect(&l, &a, &rx).unwrap(), x.clone());
        prop_assert_eq!(l.pairing(&rx, &ry).unwrap(), l.pairing(&x, &y).unwrap());
    }

    #[test]
    fn signature_is_additive(i in 0usize..6, j in 0usize..6) {
        let names = ["U", "A2", "-A3", "E8", "elliptic-K3", "affine-A2"];
        let a = standard_lattice(names[i]).unwrap();
        let b = standard_lattice(names[j]).unwrap();
        let (p1, n1, z1) = signature(&a);
        let (p2, n2, z2) = signature(&b);
        prop_assert_eq!(signature(&a.direct_sum(&b)), (p1 + p2, n1 + n2, z1 + z2));
    }

    #[test]
    fn generic_points_get_consistent_alcoves(a in proptest::collection::vec((-20i64..21, 1i64..8), 3)) {
        let r = RootSystem::from_name("A3").unwrap();
        let x: Vec<Q> = a.iter().map(|&(n, d)| qf(2 * n + 1, 2 * d) + qf(1, 97)).collect();
        if let Ok(al) = alcove_of(&r, &x) {
            prop_assert!(al.is_consistent());
            let inside = al.k.iter().all(|&k| k == 0);
            let pos = r.positive_roots().unwrap();
            let direct = pos.iter().all(|root| {
                let v: Q = root.iter().zip(&x).map(|(c, t)| q(*c) * t).sum();
                v > q(0) && v < q(1)
            });
            prop_assert_eq!(inside, direct);
        }
    }
}

#[test]
fn bad_gram_rejected() {
    assert!(IntegralLattice::new(vec![vec![0, 1], vec![2, 0]]).is_err());
}
