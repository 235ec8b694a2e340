use proptest::prelude::*;
use std::collections::BTreeSet;
use wallcross_core::quiver::{
    bounded_positive_roots, corner_fiber_data, crawley_boevey, genuine_walls_affine, num_points, shift_map_phi, Quiver,
};
use wallcross_core::rational::{canonical_line_i64, dot, q, qf};
use wallcross_core::Q;

fn brute_roots(qv: &Quiver, v: &[i64]) -> BTreeSet<Vec<i64>> {
    let mut out = BTreeSet::new();
    let mut cur = vec![0i64; v.len()];
    loop {
        if cur.iter().any(|&x| x != 0) && qv.form(&cur, &cur) <= 2 {
            out.insert(cur.clone());
        }
        let mut i = 0;
        while i < v.len() {
            cur[i] += 1;
            if cur[i] <= v[i] {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
        if i == v.len() {
            return out;
        }
    }
}

#[test]
fn two_points_on_a1_walls() {
    let a1 = Quiver::from_name("affine-A1").unwrap();
    let roots = bounded_positive_roots(&a1, &[2, 2]).unwrap();
    let want: BTreeSet<Vec<i64>> = [[0, 1], [1, 0], [1, 1], [1, 2], [2, 1], [2, 2]].iter().map(|x| x.to_vec()).collect();
    assert_eq!(roots, want);
    assert_eq!(roots, brute_roots(&a1, &[2, 2]));
    let walls = genuine_walls_affine(&a1, 2).unwrap();
    let want: BTreeSet<Vec<i64>> = [[1, 1], [0, 1], [1, 0], [1, 2]].iter().map(|x| x.to_vec()).collect();
    assert_eq!(walls, want);
    assert!(!walls.contains(&vec![2, 1]));
}

#[test]
fn genuine_walls_are_root_hyperplanes() {
    for (name, n) in [("affine-A1", 2), ("affine-A1", 3), ("affine-A2", 2), ("affine-A2", 3), ("affine-D4", 2)] {
        let qv = Quiver::from_name(name).unwrap();
        let delta = qv.affine_data().unwrap().delta;
        let nd: Vec<i64> = delta.iter().map(|d| n * d).collect();
        let lines: BTreeSet<Vec<i64>> =
            bounded_positive_roots(&qv, &nd).unwrap().iter().filter_map(|r| canonical_line_i64(r)).collect();
        let walls = genuine_walls_affine(&qv, n).unwrap();
        for w in &walls {
            assert!(lines.contains(&canonical_line_i64(w).unwrap()), "{name} {n}: {w:?}");
        }
        if name == "affine-A1" && n == 2 {
            assert!(walls.len() < lines.len());
        }
    }
}

fn cb_framing(qv: &Quiver, v: &[i64], beta: &[i64], ell: i64) -> i64 {
    // −((1, v − ℓβ), (0, β)) for the Cartan form of the framed quiver
    let mut w = vec![0; qv.n()];
    w[0] = 1;
    let (qi, _) = crawley_boevey(qv, v, &w).unwrap();
    let mut a = vec![1];
    a.extend(v.iter().zip(beta).map(|(x, b)| x - ell * b));
    let mut b = vec![0];
    b.extend_from_slice(beta);
    let c = qi.cartan();
    let mut s = 0;
    for i in 0..a.len() {
        for j in 0..b.len() {
            s += a[i] * c[i][j] * b[j];
        }
    }
    -s
}

#[test]
fn corner_framing_matches_cartan_pairing() {
    for name in ["affine-A1", "affine-A2"] {
        let qv = Quiver::from_name(name).unwrap();
        let ad = qv.affine_data().unwrap();
        let vs: Vec<Vec<i64>> = if name == "affine-A1" {
            vec![vec![1, 1], vec![2, 2], vec![2, 1], vec![3, 2], vec![3, 4]]
        } else {
            vec![vec![1, 1, 1], vec![2, 2, 2], vec![2, 1, 1], vec![3, 2, 1]]
        };
        for v in &vs {
            for alpha in &ad.finite_positive {
                let mut divisorial = Vec::new();
                for k in -3..=3 {
                    let cf = corner_fiber_data(&qv, v, alpha, k).unwrap();
                    assert_eq!(cf.tau, -alpha.iter().zip(qv.cv(v)).map(|(a, c)| a * c).sum::<i64>());
                    for ell in 1..=4 {
                        assert_eq!(cf.framing_dim(ell), cb_framing(&qv, v, &cf.beta_k, ell), "{name} {v:?} {alpha:?} k={k} l={ell}");
                    }
                    for &(ell, w) in &cf.allowed {
                        assert_eq!(w, cf.framing_dim(ell));
                        // Gr(ℓ, w) is a projective space
                        assert!(ell == 1 || ell == w - 1);
                    }
                    if cf.divisorial {
                        divisorial.push(k);
                    }
                }
                assert_eq!(divisorial, vec![0], "{name} {v:?} {alpha:?}");
            }
        }
    }
}

proptest! {
    #[test]
    fn bounded_roots_match_brute_force(v0 in 0i64..4, v1 in 0i64..4, v2 in 0i64..3) {
        let a2 = Quiver::from_name("affine-A2").unwrap();
        let v = [v0, v1, v2];
        let r = bounded_positive_roots(&a2, &v).unwrap();
        for t in &r {
            prop_assert!(a2.form(t, t) <= 2);
            prop_assert!(t.iter().zip(&v).all(|(a, b)| 0 <= *a && a <= b));
        }
        prop_assert_eq!(r, brute_roots(&a2, &v));
    }

    #[test]
    fn adding_delta_adds_a_point(v0 in 1i64..5, v1 in 0i64..5, v2 in 0i64..5) {
        let a2 = Quiver::from_name("affine-A2").unwrap();
        let v = vec![v0, v1, v2];
        let w: Vec<i64> = v.iter().map(|x| x + 1).collect();
        if let Ok(n) = num_points(&a2, &v) {
            prop_assert_eq!(num_points(&a2, &w), Ok(n + 1));
        }
    }

    #[test]
    fn shift_fixes_level_zero(v0 in 1i64..4, v1 in 0i64..4, v2 in 0i64..4, t in proptest::collection::vec((-9i64..10, 1i64..5), 3)) {
        let a2 = Quiver::from_name("affine-A2").unwrap();
        let phi = shift_map_phi(&a2, &[v0, v1, v2]).unwrap();
        let delta: Vec<Q> = vec![q(1), q(1), q(1)];
        let theta: Vec<Q> = t.iter().map(|&(a, b)| qf(a, b)).collect();
        let level = dot(&theta, &delta);
        let image = phi.apply(&theta);
        prop_assert_eq!(dot(&image, &delta), level.clone());
        if level == q(0) {
            prop_assert_eq!(image.clone(), theta.clone());
        }
        prop_assert_eq!(phi.inverse(&image), theta);
        let n = shift_map_phi(&a2, &[v0, v0, v0]).unwrap();
        prop_assert!(n.shift.iter().all(|x| *x == q(0)));
    }
}
