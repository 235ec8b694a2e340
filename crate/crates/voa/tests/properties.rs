use proptest::prelude::*;
use wallcross_core::Q;
use wallcross_voa::fock::monomials_of_degree;
use wallcross_voa::matrix::operator_matrix;
use wallcross_voa::relations::test_vectors;
use wallcross_voa::{weight_decomposition, LatticeVOA, ModeOperator, State, VOAElement};

fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn a2() -> LatticeVOA {
    LatticeVOA::from_name("A2", 14).unwrap()
}

fn state(voa: &LatticeVOA, gamma: Vec<i64>, d: u32, pick: usize) -> State {
    let ms = monomials_of_degree(voa.rank(), d);
    State { gamma, mono: ms[pick % ms.len()].clone() }
}

fn comm(
    x: &VOAElement,
    f: impl Fn(&VOAElement) -> VOAElement,
    g: impl Fn(&VOAElement) -> VOAElement,
) -> VOAElement {
    f(&g(x)).sub(&g(&f(x)))
}

fn mat_mul(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| (0..n).map(|j| row.iter().zip(b).map(|(x, r)| x * &r[j]).sum()).collect())
        .collect()
}

#[test]
fn heisenberg_commutators_as_dense_matrices() {
    // [a_i(k), a_j(−k)] = k⟨e_i,e_j⟩ on each component, via matrix products.
    let v = a2();
    for d in 0..=4u32 {
        for k in 1..=2i64 {
            for i in 0..2 {
                for j in 0..2 {
                    let mut hi = vec![0, 0];
                    hi[i] = 1;
                    let mut hj = vec![0, 0];
                    hj[j] = 1;
                    let up = operator_matrix(&v, &ModeOperator::Heisenberg { h: hj.clone(), n: -k }, &[1, 0], d).unwrap();
                    let down_after = operator_matrix(&v, &ModeOperator::Heisenberg { h: hi.clone(), n: k }, &[1, 0], d + k as u32).unwrap();
                    let ab = mat_mul(&down_after.entries, &up.entries);
                    let n = up.source.len();
                    if d < k as u32 {
                        // the annihilator kills the whole component
                        let want = qi(k * v.ip(&hi, &hj));
                        for (r, row) in ab.iter().enumerate() {
                            for (c, x) in row.iter().enumerate() {
                                assert_eq!(*x, if r == c { want.clone() } else { qi(0) });
                            }
                        }
                        continue;
                    }
                    let down = operator_matrix(&v, &ModeOperator::Heisenberg { h: hi.clone(), n: k }, &[1, 0], d).unwrap();
                    let up_after = operator_matrix(&v, &ModeOperator::Heisenberg { h: hj.clone(), n: -k }, &[1, 0], d - k as u32).unwrap();
                    let ba = mat_mul(&up_after.entries, &down.entries);
                    assert_eq!(up_after.target, up.source);
                    assert_eq!(down_after.target, up.source);
                    for r in 0..n {
                        for c in 0..n {
                            let want = if r == c { qi(k * v.ip(&hi, &hj)) } else { qi(0) };
                            assert_eq!(&ab[r][c] - &ba[r][c], want);
                        }
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn jacobi_spot_check(
        ai in 0usize..6, bi in 0usize..6, hi in 0usize..2,
        n in -2i64..=2, m in -2i64..=2, k in -2i64..=2,
        g0 in -1i64..=1, g1 in -1i64..=1, d in 0u32..=3, pick in 0usize..20,
    ) {
        let v = a2();
        let tv = test_vectors(&v);
        let (a, b) = (tv[ai].clone(), tv[bi].clone());
        let mut h = vec![0, 0];
        h[hi] = 1;
        let x = VOAElement::basis(state(&v, vec![g0, g1], d, pick));
        let xm = |al: &[i64], j: i64, e: &VOAElement| v.vertex_mode(al, j, e);
        let hm = |j: i64, e: &VOAElement| v.heis_act(&h, j, e);
        // [[x_n(α), x_m(β)], h(k)]
        let inner = |e: &VOAElement| comm(e, |y| xm(&a, n, y), |y| xm(&b, m, y));
        let direct = comm(&x, inner, |e| hm(k, e));
        // −⟨h,β⟩[x_n(α), x_{m+k}(β)] − ⟨h,α⟩[x_{n+k}(α), x_m(β)]
        let t1 = comm(&x, |y| xm(&a, n, y), |y| xm(&b, m + k, y));
        let t2 = comm(&x, |y| xm(&a, n + k, y), |y| xm(&b, m, y));
        let other = t1.scale(&qi(-v.ip(&h, &b))).add(&t2.scale(&qi(-v.ip(&h, &a))));
        prop_assert!(!direct.overflow && !other.overflow);
        prop_assert_eq!(direct.terms, other.terms);
    }

    #[test]
    fn weight_components_sum_and_diagonalize(
        picks in proptest::collection::vec((-1i64..=1, -1i64..=1, 0u32..=3, 0usize..10, -3i64..=3), 1..6),
    ) {
        let v = a2();
        let mut x = VOAElement::zero();
        for (g0, g1, d, p, c) in picks {
            x.add_term(state(&v, vec![g0, g1], d, p), qi(c));
        }
        let parts = weight_decomposition(&v, &x);
        let mut sum = VOAElement::zero();
        for ((gamma, dval), part) in &parts {
            for h in [[1i64, 0], [0, 1]] {
                prop_assert_eq!(v.heis_act(&h, 0, part), part.scale(&qi(v.ip(&h, gamma))));
            }
            prop_assert_eq!(v.d(part), part.scale(dval));
            sum = sum.add(part);
        }
        prop_assert_eq!(sum, x);
    }

    #[test]
    fn vertex_modes_shift_l0_by_minus_n(ai in 0usize..6, n in -3i64..=3, g0 in -1i64..=1, g1 in -1i64..=1, d in 0u32..=4, pick in 0usize..20) {
        let v = a2();
        let a = test_vectors(&v)[ai].clone();
        let x = VOAElement::basis(state(&v, vec![g0, g1], d, pick));
        let lhs = v.l0(&v.vertex_mode(&a, n, &x)).sub(&v.vertex_mode(&a, n, &v.l0(&x)));
        prop_assert_eq!(lhs, v.vertex_mode(&a, n, &x).scale(&qi(-n)));
    }

    #[test]
    fn cocycle_commutator_identity(a in proptest::collection::vec(-3i64..=3, 4), b in proptest::collection::vec(-3i64..=3, 4)) {
        let v = LatticeVOA::from_name("elliptic-I3", 2).unwrap();
        let e = v.cocycle.eps(&a, &b) * v.cocycle.eps(&b, &a);
        prop_assert_eq!(e, if v.ip(&a, &b).rem_euclid(2) == 0 { 1 } else { -1 });
    }
}
