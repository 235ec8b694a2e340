//! Small dense exact linear algebra plus a Fourier–Motzkin feasibility
//! solver for strict/non-strict affine inequalities.

use crate::rational::{dot, Q};
use num_traits::{One, Signed, Zero};

pub type Mat = Vec<Vec<Q>>;

/// Row echelon form in place; returns pivot columns.
fn echelon(m: &mut Mat, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row >= m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = Q::one() / &m[row][col];
        for c in col..ncols {
            m[row][c] = &m[row][c] * &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..ncols {
                    let t = &f * &m[row][c];
                    m[r][c] -= t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank(m: &Mat) -> usize {
    if m.is_empty() {
        return 0;
    }
    let mut a = m.clone();
    let n = a[0].len();
    echelon(&mut a, n).len()
}

/// Basis of {x : m x = 0}; `n` is the number of columns.
pub fn nullspace(m: &Mat, n: usize) -> Vec<Vec<Q>> {
    let mut a = m.clone();
    let pivots = echelon(&mut a, n);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Q::zero(); n];
            x[f] = Q::one();
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = -a[r][f].clone();
            }
            x
        })
        .collect()
}

/// Solves m x = b for square invertible m.
pub fn solve(m: &Mat, b: &[Q]) -> Option<Vec<Q>> {
    let n = m.len();
    let mut a: Mat = m.iter().zip(b).map(|(row, bi)| {
        let mut r = row.clone();
        r.push(bi.clone());
        r
    }).collect();
    let piv = echelon(&mut a, n + 1);
    if piv.len() != n || piv.iter().any(|&p| p >= n) {
        return None;
    }
    Some(a.iter().map(|r| r[n].clone()).collect())
}

pub fn inverse(m: &Mat) -> Option<Mat> {
    let n = m.len();
    let mut a: Mat = m.iter().enumerate().map(|(i, row)| {
        let mut r = row.clone();
        r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
        r
    }).collect();
    let piv = echelon(&mut a, 2 * n);
    if piv.len() < n || piv[n - 1] >= n {
        return None;
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_vec(m: &Mat, x: &[Q]) -> Vec<Q> {
    m.iter().map(|r| dot(r, x)).collect()
}

/// Affine constraint `a·x + c > 0` (strict) or `>= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ineq {
    pub a: Vec<Q>,
    pub c: Q,
    pub strict: bool,
}

impl Ineq {
    pub fn new(a: Vec<Q>, c: Q, strict: bool) -> Self {
        Ineq { a, c, strict }
    }

    fn holds(&self, x: &[Q]) -> bool {
        let v = dot(&self.a, x) + &self.c;
        if self.strict { v.is_positive() } else { !v.is_negative() }
    }

    /// Scales so the first nonzero coefficient has absolute value one;
    /// used only to deduplicate.
    fn normalized(&self) -> Ineq {
        match self.a.iter().find(|v| !v.is_zero()) {
            Some(p) => {
                let s = p.abs();
                Ineq { a: self.a.iter().map(|v| v / &s).collect(), c: &self.c / &s, strict: self.strict }
            }
            None => self.clone(),
        }
    }
}

/// Decides feasibility of a system of affine inequalities in `n` variables
/// and returns a witness point when feasible.
pub fn feasible_point(n: usize, ineqs: &[Ineq]) -> Option<Vec<Q>> {
    // levels[k] holds the constraints involving only variables 0..n-k
    let mut levels: Vec<Vec<Ineq>> = vec![dedup(ineqs.to_vec())];
    for var in (0..n).rev() {
        let cur = levels.last().unwrap();
        let (mut pos, mut neg, mut rest) = (vec![], vec![], vec![]);
        for c in cur {
            if c.a[var].is_positive() {
                pos.push(c);
            } else if c.a[var].is_negative() {
                neg.push(c);
            } else {
                rest.push(c.clone());
            }
        }
        for p in &pos {
            for m in &neg {
                // p.a[var] > 0, m.a[var] < 0: combine to cancel var
                let lp = -m.a[var].clone();
                let lm = p.a[var].clone();
                let a: Vec<Q> = p.a.iter().zip(&m.a).map(|(x, y)| x * &lp + y * &lm).collect();
                let c = &p.c * &lp + &m.c * &lm;
                rest.push(Ineq { a, c, strict: p.strict || m.strict });
            }
        }
        levels.push(dedup(rest));
    }
    if !levels.last().unwrap().iter().all(|c| c.holds(&vec![Q::zero(); n])) {
        return None;
    }
    // back substitution, variable 0 first
    let mut x = vec![Q::zero(); n];
    for var in 0..n {
        let cons = &levels[n - 1 - var];
        let mut lo: Option<(Q, bool)> = None;
        let mut hi: Option<(Q, bool)> = None;
        for c in cons {
            let coef = &c.a[var];
            if coef.is_zero() {
                continue;
            }
            let mut rest = c.c.clone();
            for j in 0..var {
                rest += &c.a[j] * &x[j];
            }
            let bound = -rest / coef;
            if coef.is_positive() {
                if lo.as_ref().map_or(true, |(b, s)| bound > *b || (bound == *b && c.strict && !s)) {
                    lo = Some((bound, c.strict));
                }
            } else if hi.as_ref().map_or(true, |(b, s)| bound < *b || (bound == *b && c.strict && !s)) {
                hi = Some((bound, c.strict));
            }
        }
        x[var] = match (lo, hi) {
            (None, None) => Q::zero(),
            (Some((l, _)), None) => l.floor() + Q::one(),
            (None, Some((h, _))) => h.ceil() - Q::one(),
            (Some((l, ls)), Some((h, hs))) => {
                if l < h {
                    (l + h) / Q::from_integer(2.into())
                } else if l == h && !ls && !hs {
                    l
                } else {
                    return None;
                }
            }
        };
    }
    debug_assert!(ineqs.iter().all(|c| c.holds(&x)));
    Some(x)
}

fn dedup(v: Vec<Ineq>) -> Vec<Ineq> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for c in v {
        let k = c.normalized();
        if seen.insert(k.clone()) {
            out.push(k);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf, qvec};

    #[test]
    fn rank_and_nullspace() {
        let m = vec![qvec(&[1, 2, 3]), qvec(&[2, 4, 6])];
        assert_eq!(rank(&m), 1);
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 2);
        for x in ns {
            assert!(mat_vec(&m, &x).iter().all(|v| v.is_zero()));
        }
    }

    #[test]
    fn inverse_round_trip() {
        let m = vec![qvec(&[-2, 1]), qvec(&[1, -2])];
        let inv = inverse(&m).unwrap();
        assert_eq!(inv, vec![vec![qf(-2, 3), qf(-1, 3)], vec![qf(-1, 3), qf(-2, 3)]]);
        assert!(inverse(&vec![qvec(&[1, 1]), qvec(&[1, 1])]).is_none());
    }

    #[test]
    fn strict_interval() {
        // 0 < x < 1
        let c = vec![Ineq::new(qvec(&[1]), q(0), true), Ineq::new(qvec(&[-1]), q(1), true)];
        assert_eq!(feasible_point(1, &c), Some(vec![qf(1, 2)]));
        // 0 < x and x < 0
        let c = vec![Ineq::new(qvec(&[1]), q(0), true), Ineq::new(qvec(&[-1]), q(0), true)];
        assert!(feasible_point(1, &c).is_none());
        // x >= 0 and x <= 0 is the single point 0
        let c = vec![Ineq::new(qvec(&[1]), q(0), false), Ineq::new(qvec(&[-1]), q(0), false)];
        assert_eq!(feasible_point(1, &c), Some(vec![q(0)]));
    }

    #[test]
    fn triangle_interior() {
        let c = vec![
            Ineq::new(qvec(&[1, 0]), q(0), true),
            Ineq::new(qvec(&[0, 1]), q(0), true),
            Ineq::new(qvec(&[-1, -1]), q(1), true),
        ];
        let x = feasible_point(2, &c).unwrap();
        assert!(c.iter().all(|i| i.holds(&x)));
    }
}
