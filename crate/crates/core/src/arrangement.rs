//! Face posets of central hyperplane arrangements, encoded as covector
//! (sign vector) sets. Computed exactly from rays; a Fourier–Motzkin
//! feasibility search is kept as a slower reference.

use crate::linalg::{feasible_point, nullspace, rank, Ineq, Mat};
use crate::rational::{dot, Q};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

pub type Covector = Vec<i8>;

/// Rows of `normals` reduced to coordinates on their own row space, so
/// feasibility runs in `rank` variables instead of the ambient dimension.
fn reduce(normals: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let mut basis: Mat = Vec::new();
    for n in normals {
        let mut trial = basis.clone();
        trial.push(n.clone());
        if rank(&trial) > basis.len() {
            basis = trial;
        }
    }
    normals.iter().map(|n| basis.iter().map(|b| dot(n, b)).collect()).collect()
}

fn constraints(f: &[Q], sign: i8) -> Vec<Ineq> {
    let neg: Vec<Q> = f.iter().map(|x| -x.clone()).collect();
    match sign {
        1 => vec![Ineq::new(f.to_vec(), Q::zero(), true)],
        -1 => vec![Ineq::new(neg, Q::zero(), true)],
        _ => vec![Ineq::new(f.to_vec(), Q::zero(), false), Ineq::new(neg, Q::zero(), false)],
    }
}

/// All sign vectors (sign(fᵢ·y))ᵢ realized by some y.
///
/// After reducing to the row space the arrangement is essential, so every
/// face is a pointed cone spanned by rays, and its covector is the
/// conformal join of theirs. Rays are the lines cut out by r − 1
/// independent hyperplanes; covectors are the join-closure of their signs.
pub fn covectors(normals: &[Vec<Q>]) -> BTreeSet<Covector> {
    let g = reduce(normals);
    let r = g.first().map_or(0, |row| row.len());
    let k = g.len();
    let mut out = BTreeSet::new();
    out.insert(vec![0i8; k]);
    if r == 0 {
        return out;
    }
    let sign_of = |y: &[Q]| -> Covector { g.iter().map(|row| sgn(&dot(row, y))).collect() };
    let mut rays = BTreeSet::new();
    let mut subset = Vec::new();
    subsets(k, r - 1, 0, &mut subset, &mut |idx| {
        let m: Mat = idx.iter().map(|&i| g[i].clone()).collect();
        let ns = nullspace(&m, r);
        if ns.len() == 1 {
            let y = &ns[0];
            let neg: Vec<Q> = y.iter().map(|x| -x.clone()).collect();
            rays.insert(sign_of(y));
            rays.insert(sign_of(&neg));
        }
    });
    let mut frontier: Vec<Covector> = rays.iter().cloned().collect();
    out.extend(rays.iter().cloned());
    let rays: Vec<Covector> = rays.into_iter().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for f in &frontier {
            for ray in &rays {
                if conformal(f, ray) {
                    let j = join(f, ray);
                    if !out.contains(&j) {
                        out.insert(j.clone());
                        next.push(j);
                    }
                }
            }
        }
        frontier = next;
    }
    out
}

fn sgn(x: &Q) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn conformal(a: &Covector, b: &Covector) -> bool {
    a.iter().zip(b).all(|(x, y)| x * y >= 0)
}

fn join(a: &Covector, b: &Covector) -> Covector {
    a.iter().zip(b).map(|(&x, &y)| if x != 0 { x } else { y }).collect()
}

fn subsets(n: usize, size: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if cur.len() == size {
        f(cur);
        return;
    }
    for i in start..n {
        if n - i < size - cur.len() {
            break;
        }
        cur.push(i);
        subsets(n, size, i + 1, cur, f);
        cur.pop();
    }
}

/// Covectors by depth-first sign assignment with a Fourier–Motzkin
/// feasibility test at every node. Slow; kept as an independent check.
pub fn covectors_by_feasibility(normals: &[Vec<Q>]) -> BTreeSet<Covector> {
    let g = reduce(normals);
    let dim = g.first().map_or(0, |r| r.len());
    let mut out = BTreeSet::new();
    let mut prefix = Vec::with_capacity(g.len());
    let mut cons = Vec::new();
    dfs(&g, dim, &mut prefix, &mut cons, &mut out);
    out
}

fn dfs(g: &[Vec<Q>], dim: usize, prefix: &mut Covector, cons: &mut Vec<Ineq>, out: &mut BTreeSet<Covector>) {
    let i = prefix.len();
    if i == g.len() {
        out.insert(prefix.clone());
        return;
    }
    for s in [-1i8, 0, 1] {
        let added = constraints(&g[i], s);
        let k = added.len();
        cons.extend(added);
        if feasible_point(dim, cons).is_some() {
            prefix.push(s);
            dfs(g, dim, prefix, cons, out);
            prefix.pop();
        }
        cons.truncate(cons.len() - k);
    }
}

pub fn chambers(cov: &BTreeSet<Covector>) -> Vec<&Covector> {
    cov.iter().filter(|c| c.iter().all(|&s| s != 0)).collect()
}

/// Number of faces by dimension, index 0 being the lowest-dimensional face.
pub fn f_vector(normals: &[Vec<Q>], cov: &BTreeSet<Covector>) -> Vec<usize> {
    let r = rank(&normals.to_vec());
    let mut counts = vec![0usize; r + 1];
    for c in cov {
        let zero: Mat = normals.iter().zip(c).filter(|(_, &s)| s == 0).map(|(n, _)| n.clone()).collect();
        counts[r - rank(&zero)] += 1;
    }
    counts
}

/// Covector x is below y in the face poset iff each nonzero sign of x
/// agrees with y.
pub fn face_le(x: &Covector, y: &Covector) -> bool {
    x.iter().zip(y).all(|(&a, &b)| a == 0 || a == b)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchWitness {
    pub matches: bool,
    /// Orientation flips εᵢ with covectors(b) = ε · covectors(a), if any.
    pub flips: Option<Vec<i8>>,
    pub f_vector_a: Vec<usize>,
    pub f_vector_b: Vec<usize>,
}

/// Whether hyperplane i of `a` and hyperplane i of `b` can be identified
/// (up to the orientation of each normal) so that the face posets agree.
/// Equal covector sets give an order isomorphism, since the order is
/// determined by the sign vectors.
pub fn arrangement_matches(a: &[Vec<Q>], b: &[Vec<Q>]) -> MatchWitness {
    let ca = covectors(a);
    let cb = covectors(b);
    let f_vector_a = f_vector(a, &ca);
    let f_vector_b = f_vector(b, &cb);
    let mut flips = None;
    if a.len() == b.len() && ca.len() == cb.len() {
        if let Some(t) = chambers(&ca).first() {
            for c in chambers(&cb) {
                let eps: Vec<i8> = t.iter().zip(c).map(|(x, y)| x * y).collect();
                let mapped: BTreeSet<Covector> = ca.iter().map(|v| v.iter().zip(&eps).map(|(x, e)| x * e).collect()).collect();
                if mapped == cb {
                    flips = Some(eps);
                    break;
                }
            }
        } else if ca == cb {
            flips = Some(vec![1; a.len()]);
        }
    }
    MatchWitness { matches: flips.is_some(), flips, f_vector_a, f_vector_b }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qvec;

    #[test]
    fn ray_closure_agrees_with_feasibility() {
        let cases: Vec<Vec<Vec<i64>>> = vec![
            vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, -1]],
            vec![vec![1, -1, 0], vec![0, 1, -1], vec![1, 0, -1]],
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 0], vec![0, 1, 1], vec![1, 1, 1], vec![1, 2, 1]],
            vec![vec![2, 0, 0, 1], vec![0, 1, 0, 1], vec![1, 1, 1, 0]],
            vec![vec![3]],
        ];
        for c in cases {
            let n: Vec<Vec<Q>> = c.iter().map(|r| qvec(r)).collect();
            assert_eq!(covectors(&n), covectors_by_feasibility(&n));
        }
    }

    #[test]
    fn lines_through_origin() {
        // four distinct lines in the plane: 8 chambers, 8 rays, 1 vertex
        let n: Vec<Vec<Q>> = [[1, 0], [0, 1], [1, 1], [1, -1]].iter().map(|r| qvec(r)).collect();
        let cov = covectors(&n);
        assert_eq!(chambers(&cov).len(), 8);
        assert_eq!(f_vector(&n, &cov), vec![1, 8, 8]);
    }

    #[test]
    fn braid_arrangement() {
        // A2 reflection arrangement in R^3: 6 chambers, rank 2
        let n: Vec<Vec<Q>> = [[1, -1, 0], [0, 1, -1], [1, 0, -1]].iter().map(|r| qvec(r)).collect();
        let cov = covectors(&n);
        assert_eq!(chambers(&cov).len(), 6);
        assert_eq!(cov.len(), 13);
    }

    #[test]
    fn matching_with_flips() {
        let a: Vec<Vec<Q>> = [[1, 0], [0, 1], [1, 1], [1, -1]].iter().map(|r| qvec(r)).collect();
        let b: Vec<Vec<Q>> = [[-2, 0], [0, 3], [-1, -1], [1, -1]].iter().map(|r| qvec(r)).collect();
        let w = arrangement_matches(&a, &b);
        assert!(w.matches);
        let flips = w.flips.unwrap();
        assert!(flips == vec![-1, 1, -1, 1] || flips == vec![1, -1, 1, -1]);
        // same lines, labels permuted so the cyclic order differs
        let b: Vec<Vec<Q>> = [[1, 0], [1, 1], [0, 1], [1, -1]].iter().map(|r| qvec(r)).collect();
        assert!(!arrangement_matches(&a, &b).matches);
        let single = arrangement_matches(&[qvec(&[1])], &[qvec(&[-5])]);
        assert!(single.matches);
        assert_eq!(single.f_vector_a, vec![1, 2]);
    }
}
