//! Simply-laced finite and affine root systems in the simple-root basis.

use crate::error::{Error, Result};
use crate::lattice::{affine_cartan, ade_cartan, signature, IntegralLattice};
use crate::linalg::{feasible_point, nullspace, Ineq};
use crate::rational::{dot, floor_i64, q, Q};
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, VecDeque};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Finite,
    Affine,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    pub cartan: IntegralLattice,
    pub kind: Kind,
    pub labels: Vec<String>,
    pub null_root: Option<Vec<i64>>,
}

impl RootSystem {
    /// Builds from a generalized Cartan matrix of finite or affine ADE type.
    pub fn from_cartan(gram: Vec<Vec<i64>>) -> Result<Self> {
        let cartan = IntegralLattice::new(gram)?;
        let n = cartan.rank();
        for i in 0..n {
            if cartan.gram[i][i] != 2 {
                return Err(Error::Invalid("Cartan diagonal must be 2".into()));
            }
            for j in 0..n {
                if i != j && !(-2..=0).contains(&cartan.gram[i][j]) {
                    return Err(Error::Invalid("off-diagonal Cartan entries must lie in {0,-1,-2}".into()));
                }
            }
        }
        let labels = (0..n).map(|i| format!("a{i}")).collect();
        match signature(&cartan) {
            (p, 0, 0) if p == n => Ok(RootSystem { cartan, kind: Kind::Finite, labels, null_root: None }),
            (p, 0, 1) if p + 1 == n => {
                let ns = nullspace(&cartan.gram_q(), n);
                let v = crate::rational::primitive_ray(&ns[0]).unwrap();
                let mut d: Vec<i64> = v.iter().map(|x| i64::try_from(x).unwrap()).collect();
                if d.iter().any(|&x| x < 0) {
                    d.iter_mut().for_each(|x| *x = -*x);
                }
                if d.iter().any(|&x| x <= 0) {
                    return Err(Error::Invalid("kernel vector is not positive".into()));
                }
                Ok(RootSystem { cartan, kind: Kind::Affine, labels, null_root: Some(d) })
            }
            _ => Err(Error::Invalid("Cartan matrix is neither finite nor affine type".into())),
        }
    }

    /// "A2", "D4", "E8", "affine-A2", ...
    pub fn from_name(name: &str) -> Result<Self> {
        let unknown = || Error::UnknownName(name.to_string());
        let (affine, rest) = match name.strip_prefix("affine-") {
            Some(r) => (true, r),
            None => (false, name.strip_suffix("-cartan").unwrap_or(name)),
        };
        let mut ch = rest.chars();
        let kind = ch.next().ok_or_else(unknown)?;
        let k: usize = ch.as_str().parse().map_err(|_| unknown())?;
        let g = if affine { affine_cartan(kind, k) } else { ade_cartan(kind, k) }.ok_or_else(unknown)?;
        let mut r = RootSystem::from_cartan(g)?;
        r.labels = (0..r.rank()).map(|i| format!("{kind}{k}.{i}")).collect();
        Ok(r)
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn simple_root(&self, i: usize) -> Vec<i64> {
        let mut e = vec![0; self.rank()];
        e[i] = 1;
        e
    }

    pub fn form(&self, x: &[i64], y: &[i64]) -> i64 {
        self.cartan.ip(x, y)
    }

    pub fn is_irreducible(&self) -> bool {
        let n = self.rank();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if !seen[j] && self.cartan.gram[i][j] != 0 {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Positive roots by closure: β + αᵢ is a root iff ⟨β, αᵢ⟩ = −1.
    /// Sorted by height, then lexicographically.
    pub fn positive_roots(&self) -> Result<Vec<Vec<i64>>> {
        if self.kind != Kind::Finite {
            return Err(Error::NotFinite);
        }
        let n = self.rank();
        let mut found: BTreeSet<Vec<i64>> = (0..n).map(|i| self.simple_root(i)).collect();
        let mut frontier: Vec<Vec<i64>> = found.iter().cloned().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for b in &frontier {
                for i in 0..n {
                    if self.form(b, &self.simple_root(i)) == -1 {
                        let mut c = b.clone();
                        c[i] += 1;
                        if found.insert(c.clone()) {
                            next.push(c);
                        }
                    }
                }
            }
            frontier = next;
        }
        let mut v: Vec<Vec<i64>> = found.into_iter().collect();
        v.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
        Ok(v)
    }

    /// All roots, positive and negative.
    pub fn roots(&self) -> Result<Vec<Vec<i64>>> {
        let pos = self.positive_roots()?;
        let mut all = pos.clone();
        all.extend(pos.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()));
        Ok(all)
    }

    pub fn highest_root(&self) -> Result<Vec<i64>> {
        if !self.is_irreducible() {
            return Err(Error::Reducible);
        }
        let pos = self.positive_roots()?;
        let maximal: Vec<&Vec<i64>> = pos
            .iter()
            .filter(|r| !pos.iter().any(|s| s != *r && s.iter().zip(r.iter()).all(|(a, b)| a >= b)))
            .collect();
        assert_eq!(maximal.len(), 1, "dominance maximum must be unique");
        Ok(maximal[0].clone())
    }

    /// Values αᵢ(x) for x given in simple-root coordinates, via the Cartan form.
    pub fn simple_values(&self, x: &[Q]) -> Vec<Q> {
        (0..self.rank())
            .map(|i| {
                let e: Vec<Q> = self.simple_root(i).iter().map(|&a| q(a)).collect();
                self.cartan.pairing(&e, x).unwrap()
            })
            .collect()
    }

    /// All images of v under Weyl words of length ≤ bound.
    pub fn weyl_orbit(&self, v: &[i64], bound: usize) -> BTreeSet<Vec<i64>> {
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::from([v.to_vec()]);
        let mut frontier = vec![v.to_vec()];
        for _ in 0..bound {
            let mut next = Vec::new();
            for x in &frontier {
                for i in 0..self.rank() {
                    let p = self.form(x, &self.simple_root(i));
                    if p == 0 {
                        continue;
                    }
                    let mut y = x.clone();
                    y[i] -= p;
                    if seen.insert(y.clone()) {
                        next.push(y);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        seen
    }
}

/// Integers k_α indexed by the positive roots (in `roots` order).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alcove {
    pub roots: Vec<Vec<i64>>,
    pub k: Vec<i64>,
}

impl Alcove {
    pub fn get(&self, root: &[i64]) -> Option<i64> {
        self.roots.iter().position(|r| r == root).map(|i| self.k[i])
    }

    /// Exact feasibility of {k_α < α(x) < k_α + 1}; returns a witness of
    /// simple-root values when consistent.
    pub fn witness(&self) -> Option<Vec<Q>> {
        let r = match self.roots.first() {
            Some(x) => x.len(),
            None => return Some(vec![]),
        };
        let mut cons = Vec::new();
        for (a, &k) in self.roots.iter().zip(&self.k) {
            let coef: Vec<Q> = a.iter().map(|&c| q(c)).collect();
            cons.push(Ineq::new(coef.clone(), q(-k), true));
            cons.push(Ineq::new(coef.iter().map(|c| -c).collect(), q(k + 1), true));
        }
        feasible_point(r, &cons)
    }

    pub fn is_consistent(&self) -> bool {
        self.witness().is_some()
    }
}

/// Alcove containing the point with simple-root values `a` (aᵢ = αᵢ(x)).
pub fn alcove_of(r: &RootSystem, a: &[Q]) -> Result<Alcove> {
    if a.len() != r.rank() {
        return Err(Error::Dimension { expected: r.rank(), got: a.len() });
    }
    let roots = r.positive_roots()?;
    let mut k = Vec::with_capacity(roots.len());
    for root in &roots {
        let c: Vec<Q> = root.iter().map(|&x| q(x)).collect();
        let val = dot(&c, a);
        if val.is_integer() {
            return Err(Error::OnWall(format!("root {root:?} takes integer value {val}")));
        }
        k.push(floor_i64(&val));
    }
    Ok(Alcove { roots, k })
}

/// Affine real root mδ + α embedded in the affine index set, where vertex
/// 0 is the extending node and `alpha` lives on vertices 1..r.
pub fn affine_root(delta: &[i64], m: i64, alpha: &[i64]) -> Vec<i64> {
    let mut v: Vec<i64> = delta.iter().map(|d| m * d).collect();
    for (i, a) in alpha.iter().enumerate() {
        v[i + 1] += a;
    }
    v
}

/// The point of the fundamental alcove used as a base for sweeps: all
/// simple values 1/(h+1) where h is the height of the highest root.
pub fn fundamental_point(r: &RootSystem) -> Result<Vec<Q>> {
    let h: i64 = r.highest_root()?.iter().sum();
    Ok(vec![Q::one() / q(h + 1); r.rank()])
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    /// Independent count: nonnegative integer vectors of Cartan norm 2 in a box.
    fn brute_positive_roots(r: &RootSystem, bound: i64) -> BTreeSet<Vec<i64>> {
        let n = r.rank();
        let mut out = BTreeSet::new();
        let mut v = vec![0i64; n];
        loop {
            if v.iter().any(|&x| x != 0) && r.form(&v, &v) == 2 {
                out.insert(v.clone());
            }
            let mut i = 0;
            while i < n {
                v[i] += 1;
                if v[i] <= bound {
                    break;
                }
                v[i] = 0;
                i += 1;
            }
            if i == n {
                return out;
            }
        }
    }

    #[test]
    fn root_counts_match_oracle() {
        for (name, count, bound) in [("A1", 1, 1), ("A2", 3, 1), ("A3", 6, 1), ("D4", 12, 2), ("D5", 20, 2), ("E6", 36, 3)] {
            let r = RootSystem::from_name(name).unwrap();
            let pos = r.positive_roots().unwrap();
            assert_eq!(pos.len(), count, "{name}");
            let set: BTreeSet<_> = pos.into_iter().collect();
            assert_eq!(set, brute_positive_roots(&r, bound), "{name}");
        }
        assert_eq!(RootSystem::from_name("E7").unwrap().positive_roots().unwrap().len(), 63);
        assert_eq!(RootSystem::from_name("E8").unwrap().positive_roots().unwrap().len(), 120);
        assert!(RootSystem::from_name("affine-A2").unwrap().positive_roots().is_err());
    }

    #[test]
    fn highest_roots() {
        assert_eq!(RootSystem::from_name("A1").unwrap().highest_root().unwrap(), vec![1]);
        assert_eq!(RootSystem::from_name("A2").unwrap().highest_root().unwrap(), vec![1, 1]);
        // D4 with central node at index 1
        assert_eq!(RootSystem::from_name("D4").unwrap().highest_root().unwrap(), vec![1, 2, 1, 1]);
        let e8 = RootSystem::from_name("E8").unwrap().highest_root().unwrap();
        assert_eq!(e8.iter().sum::<i64>(), 29);
        let red = RootSystem::from_cartan(vec![vec![2, 0], vec![0, 2]]).unwrap();
        assert_eq!(red.highest_root(), Err(Error::Reducible));
    }

    #[test]
    fn affine_null_roots() {
        assert_eq!(RootSystem::from_name("affine-A1").unwrap().null_root, Some(vec![1, 1]));
        assert_eq!(RootSystem::from_name("affine-A2").unwrap().null_root, Some(vec![1, 1, 1]));
        assert_eq!(RootSystem::from_name("affine-D4").unwrap().null_root, Some(vec![1, 1, 2, 1, 1]));
        let e8 = RootSystem::from_name("affine-E8").unwrap();
        assert_eq!(e8.null_root.as_ref().unwrap().iter().sum::<i64>(), 30);
        for name in ["affine-A3", "affine-D5", "affine-E6", "affine-E7", "affine-E8"] {
            let r = RootSystem::from_name(name).unwrap();
            let d = r.null_root.clone().unwrap();
            assert_eq!(d[0], 1, "{name}");
            for i in 0..r.rank() {
                assert_eq!(r.form(&d, &r.simple_root(i)), 0, "{name}");
            }
        }
    }

    #[test]
    fn alcove_examples() {
        let a1 = RootSystem::from_name("A1").unwrap();
        assert_eq!(alcove_of(&a1, &[qf(1, 2)]).unwrap().k, vec![0]);
        assert_eq!(alcove_of(&a1, &[qf(-3, 2)]).unwrap().k, vec![-2]);
        assert!(alcove_of(&a1, &[q(1)]).is_err());
        let a2 = RootSystem::from_name("A2").unwrap();
        let al = alcove_of(&a2, &[qf(1, 3), qf(1, 3)]).unwrap();
        assert_eq!(al.k, vec![0, 0, 0]);
        assert_eq!(al.get(&[1, 1]), Some(0));
        // sum is 2/3 + ... on the wall α1+α2 = 1
        assert!(alcove_of(&a2, &[qf(1, 2), qf(1, 2)]).is_err());
    }

    #[test]
    fn zero_alcove_nonempty() {
        for name in ["A1", "A2", "A3"] {
            let r = RootSystem::from_name(name).unwrap();
            let x = fundamental_point(&r).unwrap();
            let al = alcove_of(&r, &x).unwrap();
            assert!(al.k.iter().all(|&k| k == 0));
            assert!(al.is_consistent());
        }
    }

    #[test]
    fn inconsistent_alcove_rejected() {
        // k_{α1} = k_{α2} = 0 forces 0 < (α1+α2)(x) < 2, so k = 5 is impossible
        let al = Alcove { roots: vec![vec![1, 0], vec![0, 1], vec![1, 1]], k: vec![0, 0, 5] };
        assert!(!al.is_consistent());
        let ok = Alcove { roots: al.roots.clone(), k: vec![0, 0, 1] };
        assert!(ok.is_consistent());
    }

    #[test]
    fn weyl_orbits() {
        let a1 = RootSystem::from_name("A1").unwrap();
        assert_eq!(a1.weyl_orbit(&[1], 3), BTreeSet::from([vec![1], vec![-1]]));
        let a2 = RootSystem::from_name("A2").unwrap();
        let orb = a2.weyl_orbit(&[1, 0], 5);
        assert_eq!(orb.len(), 6);
        assert_eq!(orb, a2.roots().unwrap().into_iter().collect());
        assert_eq!(a2.weyl_orbit(&[0, 0], 4).len(), 1);
    }
}
