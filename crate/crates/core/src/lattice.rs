//! Integral lattices, Mukai vectors and surface configurations.

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::rational::{q, Q};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralLattice {
    pub gram: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl IntegralLattice {
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self> {
        let n = gram.len();
        if n == 0 {
            return Err(Error::Invalid("empty gram matrix".into()));
        }
        for row in &gram {
            if row.len() != n {
                return Err(Error::Dimension { expected: n, got: row.len() });
            }
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        Ok(IntegralLattice { gram, labels: None })
    }

    pub fn with_labels(mut self, labels: &[&str]) -> Self {
        assert_eq!(labels.len(), self.rank());
        self.labels = Some(labels.iter().map(|s| s.to_string()).collect());
        self
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[i][i] % 2 == 0)
    }

    pub fn gram_q(&self) -> Mat {
        self.gram.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    fn check(&self, len: usize) -> Result<()> {
        if len != self.rank() {
            return Err(Error::Dimension { expected: self.rank(), got: len });
        }
        Ok(())
    }

    /// Gram form on rational vectors.
    pub fn pairing(&self, x: &[Q], y: &[Q]) -> Result<Q> {
        self.check(x.len())?;
        self.check(y.len())?;
        let mut acc = Q::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if self.gram[i][j] != 0 {
                    acc += xi * yj * q(self.gram[i][j]);
                }
            }
        }
        Ok(acc)
    }

    /// Gram form on integer vectors; panics on length mismatch.
    pub fn ip(&self, x: &[i64], y: &[i64]) -> i64 {
        assert!(x.len() == self.rank() && y.len() == self.rank(), "lattice dimension mismatch");
        let mut acc = 0i64;
        for i in 0..x.len() {
            if x[i] == 0 {
                continue;
            }
            for j in 0..y.len() {
                acc += x[i] * self.gram[i][j] * y[j];
            }
        }
        acc
    }

    pub fn negated(&self) -> Self {
        IntegralLattice {
            gram: self.gram.iter().map(|r| r.iter().map(|x| -x).collect()).collect(),
            labels: self.labels.clone(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let (a, b) = (self.rank(), other.rank());
        let mut g = vec![vec![0; a + b]; a + b];
        for i in 0..a {
            g[i][..a].copy_from_slice(&self.gram[i]);
        }
        for i in 0..b {
            g[a + i][a..].copy_from_slice(&other.gram[i]);
        }
        IntegralLattice { gram: g, labels: None }
    }
}

/// Signature (positive, negative, null) by congruence diagonalization.
pub fn signature(l: &IntegralLattice) -> (usize, usize, usize) {
    let mut a = l.gram_q();
    let n = a.len();
    let mut diag = Vec::new();
    let mut active: Vec<usize> = (0..n).collect();
    while let Some(&first) = active.first() {
        // find a nonzero diagonal pivot, or create one from an off-diagonal entry
        let piv = active.iter().copied().find(|&i| !a[i][i].is_zero());
        let p = match piv {
            Some(p) => p,
            None => {
                let pair = active.iter().flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !a[i][j].is_zero());
                match pair {
                    None => {
                        diag.extend(active.iter().map(|_| Q::zero()));
                        break;
                    }
                    Some((i, j)) => {
                        // e_i <- e_i + e_j makes a[i][i] = 2 a[i][j] != 0
                        for k in 0..n {
                            let t = a[j][k].clone();
                            a[i][k] += t;
                        }
                        for k in 0..n {
                            let t = a[k][j].clone();
                            a[k][i] += t;
                        }
                        i
                    }
                }
            }
        };
        let _ = first;
        let d = a[p][p].clone();
        for &i in &active {
            if i == p || a[i][p].is_zero() {
                continue;
            }
            let f = &a[i][p] / &d;
            for k in 0..n {
                let t = &f * &a[p][k];
                a[i][k] -= t;
            }
            for k in 0..n {
                let t = &f * &a[k][p];
                a[k][i] -= t;
            }
        }
        diag.push(d);
        active.retain(|&i| i != p);
    }
    let pos = diag.iter().filter(|d| d.is_positive()).count();
    let neg = diag.iter().filter(|d| d.is_negative()).count();
    (pos, neg, n - pos - neg)
}

/// Reflection x - (2(x·α)/(α·α)) α.
pub fn reflect(l: &IntegralLattice, alpha: &[Q], x: &[Q]) -> Result<Vec<Q>> {
    let aa = l.pairing(alpha, alpha)?;
    if aa.is_zero() {
        return Err(Error::Isotropic);
    }
    let f = q(2) * l.pairing(x, alpha)? / aa;
    Ok(x.iter().zip(alpha).map(|(xi, ai)| xi - &f * ai).collect())
}

/// Integral reflection; fails if the coefficient is not an integer.
pub fn reflect_int(l: &IntegralLattice, alpha: &[i64], x: &[i64]) -> Result<Vec<i64>> {
    let aa = l.ip(alpha, alpha);
    if aa == 0 {
        return Err(Error::Isotropic);
    }
    let num = 2 * l.ip(x, alpha);
    if num % aa != 0 {
        return Err(Error::NotIntegral);
    }
    let f = num / aa;
    Ok(x.iter().zip(alpha).map(|(a, b)| a - f * b).collect())
}

fn cartan_from_edges(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0; n]; n];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(a, b) in edges {
        g[a][b] -= 1;
        g[b][a] -= 1;
    }
    g
}

fn dynkin_edges(kind: char, k: usize) -> Option<Vec<(usize, usize)>> {
    match (kind, k) {
        ('A', k) if k >= 1 => Some((1..k).map(|i| (i - 1, i)).collect()),
        ('D', k) if k >= 4 => {
            let mut e: Vec<_> = (1..k - 1).map(|i| (i - 1, i)).collect();
            e.push((k - 3, k - 1));
            Some(e)
        }
        // E_k: chain 0-1-...-(k-2) with node k-1 attached to node 2
        ('E', k) if (6..=8).contains(&k) => {
            let mut e: Vec<_> = (1..k - 1).map(|i| (i - 1, i)).collect();
            e.push((2, k - 1));
            Some(e)
        }
        _ => None,
    }
}

/// Cartan matrix of a finite ADE diagram, e.g. `('D', 4)`.
pub fn ade_cartan(kind: char, k: usize) -> Option<Vec<Vec<i64>>> {
    dynkin_edges(kind, k).map(|e| cartan_from_edges(k, &e))
}

/// Cartan matrix of the affine ADE diagram; vertex 0 is the extending node.
pub fn affine_cartan(kind: char, k: usize) -> Option<Vec<Vec<i64>>> {
    if kind == 'A' && k == 1 {
        return Some(vec![vec![2, -2], vec![-2, 2]]);
    }
    let fin = dynkin_edges(kind, k)?;
    let mut e: Vec<(usize, usize)> = fin.iter().map(|&(a, b)| (a + 1, b + 1)).collect();
    // extending node attaches where the highest root is not orthogonal
    match kind {
        'A' => {
            e.push((0, 1));
            e.push((0, k));
        }
        'D' => e.push((0, 2)),
        'E' => match k {
            6 => e.push((0, 6)),
            7 => e.push((0, 1)),
            _ => e.push((0, 7)),
        },
        _ => return None,
    }
    Some(cartan_from_edges(k + 1, &e))
}

fn parse_type(s: &str) -> Option<(char, usize)> {
    let mut ch = s.chars();
    let kind = ch.next()?;
    let k: usize = ch.as_str().parse().ok()?;
    Some((kind, k))
}

/// Catalogue lookup by name.
pub fn standard_lattice(name: &str) -> Result<IntegralLattice> {
    let unknown = || Error::UnknownName(name.to_string());
    let g = match name {
        "U" => vec![vec![0, 1], vec![1, 0]],
        "elliptic" | "elliptic-K3" => {
            return Ok(IntegralLattice::new(vec![vec![0, 1], vec![1, -2]])?.with_labels(&["F", "S0"]));
        }
        "elliptic-I2" => {
            return Ok(IntegralLattice::new(vec![vec![-2, 2, 0], vec![2, -2, 1], vec![0, 1, -2]])?
                .with_labels(&["C0", "C1", "S"]));
        }
        "elliptic-I3" => {
            return Ok(IntegralLattice::new(vec![
                vec![-2, 1, 1, 0],
                vec![1, -2, 1, 0],
                vec![1, 1, -2, 1],
                vec![0, 0, 1, -2],
            ])?
            .with_labels(&["C0", "C1", "C2", "S"]));
        }
        "K3" => {
            let u = standard_lattice("U")?;
            let e8 = standard_lattice("E8")?.negated();
            let l = u.direct_sum(&u).direct_sum(&u).direct_sum(&u).direct_sum(&e8).direct_sum(&e8);
            return Ok(l);
        }
        _ => {
            if let Some(rest) = name.strip_prefix("-") {
                return Ok(standard_lattice(rest)?.negated());
            }
            if let Some(rest) = name.strip_prefix("affine-") {
                let (kind, k) = parse_type(rest).ok_or_else(unknown)?;
                affine_cartan(kind, k).ok_or_else(unknown)?
            } else {
                let base = name.strip_suffix("-cartan").unwrap_or(name);
                let (kind, k) = parse_type(base).ok_or_else(unknown)?;
                ade_cartan(kind, k).ok_or_else(unknown)?
            }
        }
    };
    IntegralLattice::new(g)
}

/// Which bilinear form a computation uses: the intersection form of the
/// surface, or its negative (the Kac–Moody / vertex-algebra convention).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairingContext {
    Intersection,
    KacMoody,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceConfig {
    pub ns: IntegralLattice,
    /// Irreducible −2 curves, by name.
    pub curves: BTreeMap<String, Vec<i64>>,
    /// Contractible sub-collections, as lists of curve names.
    #[serde(default)]
    pub collections: BTreeMap<String, Vec<String>>,
}

#[derive(Deserialize)]
struct SurfaceFile {
    gram: Vec<Vec<i64>>,
    #[serde(default)]
    curves: BTreeMap<String, Vec<i64>>,
    #[serde(default)]
    collections: BTreeMap<String, Vec<String>>,
}

impl SurfaceConfig {
    pub fn new(
        ns: IntegralLattice,
        curves: BTreeMap<String, Vec<i64>>,
        collections: BTreeMap<String, Vec<String>>,
    ) -> Result<Self> {
        let s = SurfaceConfig { ns, curves, collections };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.ns.is_even() {
            return Err(Error::Invalid("NS lattice must be even".into()));
        }
        let names: Vec<&String> = self.curves.keys().collect();
        for (i, a) in names.iter().enumerate() {
            let ca = &self.curves[*a];
            if ca.len() != self.ns.rank() {
                return Err(Error::Dimension { expected: self.ns.rank(), got: ca.len() });
            }
            if self.ns.ip(ca, ca) != -2 {
                return Err(Error::Invalid(format!("curve {a} does not have square -2")));
            }
            for b in &names[..i] {
                let p = self.ns.ip(ca, &self.curves[*b]);
                if p != 0 && p != 1 {
                    return Err(Error::Invalid(format!("curves {a} and {b} meet with multiplicity {p}")));
                }
            }
        }
        for (cname, members) in &self.collections {
            for m in members {
                if !self.curves.contains_key(m) {
                    return Err(Error::Invalid(format!("collection {cname} names unknown curve {m}")));
                }
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: SurfaceFile = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        SurfaceConfig::new(IntegralLattice::new(f.gram)?, f.curves, f.collections)
    }

    /// Generic elliptic K3 with a section: basis (F, S0).
    pub fn elliptic() -> Self {
        let ns = standard_lattice("elliptic").unwrap();
        let curves = BTreeMap::from([("S0".to_string(), vec![0, 1])]);
        let collections = BTreeMap::from([("A1".to_string(), vec!["S0".to_string()])]);
        SurfaceConfig::new(ns, curves, collections).unwrap()
    }

    /// Elliptic K3 with an I3 fibre: basis (C0, C1, C2, S); collection
    /// "A2" = {C0, C1}, "A1" = {S}.
    pub fn elliptic_i3() -> Self {
        let ns = standard_lattice("elliptic-I3").unwrap();
        let curves = BTreeMap::from([
            ("C0".to_string(), vec![1, 0, 0, 0]),
            ("C1".to_string(), vec![0, 1, 0, 0]),
            ("C2".to_string(), vec![0, 0, 1, 0]),
            ("S".to_string(), vec![0, 0, 0, 1]),
        ]);
        let collections = BTreeMap::from([
            ("A2".to_string(), vec!["C0".to_string(), "C1".to_string()]),
            ("A1".to_string(), vec!["S".to_string()]),
        ]);
        SurfaceConfig::new(ns, curves, collections).unwrap()
    }

    pub fn rank(&self) -> usize {
        self.ns.rank()
    }

    pub fn pair(&self, ctx: PairingContext, x: &[i64], y: &[i64]) -> i64 {
        match ctx {
            PairingContext::Intersection => self.ns.ip(x, y),
            PairingContext::KacMoody => -self.ns.ip(x, y),
        }
    }

    pub fn pair_q(&self, ctx: PairingContext, x: &[Q], y: &[Q]) -> Q {
        let p = self.ns.pairing(x, y).expect("NS dimension mismatch");
        match ctx {
            PairingContext::Intersection => p,
            PairingContext::KacMoody => -p,
        }
    }

    /// Intersection product on rationals.
    pub fn dot(&self, x: &[Q], y: &[Q]) -> Q {
        self.pair_q(PairingContext::Intersection, x, y)
    }

    /// A class h with h² > 0, nonnegative coordinates and h·C ≥ 0 for every
    /// listed curve. It fixes which half of the positive cone holds Kähler
    /// classes. Smallest coordinate sum first, then lexicographic.
    pub fn positive_reference(&self) -> Option<Vec<i64>> {
        let r = self.rank();
        for total in 1..=(4 * r as i64) {
            let mut found = None;
            compositions(r, total, &mut vec![], &mut |h| {
                if found.is_none() && self.ns.ip(h, h) > 0 && self.curves.values().all(|c| self.ns.ip(c, h) >= 0) {
                    found = Some(h.to_vec());
                }
            });
            if found.is_some() {
                return found;
            }
        }
        None
    }

    /// Curve classes of a named collection, in listed order.
    pub fn collection(&self, name: &str) -> Result<Vec<Vec<i64>>> {
        let members = self.collections.get(name).ok_or_else(|| Error::UnknownName(name.to_string()))?;
        Ok(members.iter().map(|m| self.curves[m].clone()).collect())
    }
}

fn compositions(parts: usize, total: i64, prefix: &mut Vec<i64>, f: &mut dyn FnMut(&[i64])) {
    if parts == 0 {
        if total == 0 {
            f(prefix);
        }
        return;
    }
    for x in (0..=total).rev() {
        prefix.push(x);
        compositions(parts - 1, total - x, prefix, f);
        prefix.pop();
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MukaiVector {
    pub r: i64,
    pub c1: Vec<i64>,
    pub s: i64,
}

impl MukaiVector {
    pub fn new(r: i64, c1: Vec<i64>, s: i64) -> Self {
        MukaiVector { r, c1, s }
    }

    pub fn zero(rank: usize) -> Self {
        MukaiVector { r: 0, c1: vec![0; rank], s: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.r == 0 && self.s == 0 && self.c1.iter().all(|&x| x == 0)
    }

    pub fn add(&self, o: &Self) -> Self {
        MukaiVector { r: self.r + o.r, c1: self.c1.iter().zip(&o.c1).map(|(a, b)| a + b).collect(), s: self.s + o.s }
    }

    pub fn scale(&self, k: i64) -> Self {
        MukaiVector { r: k * self.r, c1: self.c1.iter().map(|a| k * a).collect(), s: k * self.s }
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn to_q(&self) -> QMukai {
        QMukai { r: q(self.r), c1: self.c1.iter().map(|&x| q(x)).collect(), s: q(self.s) }
    }

    /// Structure sheaf: (1, 0, 1).
    pub fn structure_sheaf(rank: usize) -> Self {
        MukaiVector::new(1, vec![0; rank], 1)
    }

    /// Skyscraper sheaf k(x): (0, 0, 1).
    pub fn skyscraper(rank: usize) -> Self {
        MukaiVector::new(0, vec![0; rank], 1)
    }

    /// O_C(k) for a −2 curve C: (0, C, 1 + k).
    pub fn curve_sheaf(c: &[i64], k: i64) -> Self {
        MukaiVector::new(0, c.to_vec(), 1 + k)
    }

    /// Ideal sheaf of n points: (1, 0, 1 − n).
    pub fn ideal_points(rank: usize, n: i64) -> Self {
        MukaiVector::new(1, vec![0; rank], 1 - n)
    }

    /// Line bundle with first Chern class D: (1, D, 1 + D²/2).
    pub fn line_bundle(ns: &IntegralLattice, d: &[i64]) -> Self {
        MukaiVector::new(1, d.to_vec(), 1 + ns.ip(d, d) / 2)
    }

    /// Twisted ideal sheaf L ⊗ I_Y with |Y| = n: (1, D, 1 + D²/2 − n).
    pub fn twisted_ideal(ns: &IntegralLattice, d: &[i64], n: i64) -> Self {
        MukaiVector::new(1, d.to_vec(), 1 + ns.ip(d, d) / 2 - n)
    }
}

/// Mukai vector with rational entries (images of the ℓ-map, projections).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMukai {
    pub r: Q,
    pub c1: Vec<Q>,
    pub s: Q,
}

impl QMukai {
    pub fn scale(&self, k: &Q) -> Self {
        QMukai { r: &self.r * k, c1: self.c1.iter().map(|a| a * k).collect(), s: &self.s * k }
    }

    pub fn sub(&self, o: &Self) -> Self {
        QMukai { r: &self.r - &o.r, c1: self.c1.iter().zip(&o.c1).map(|(a, b)| a - b).collect(), s: &self.s - &o.s }
    }
}

/// ((r,c,s),(r',c',s')) = c·c' − r s' − r' s.
pub fn mukai_pairing(surf: &SurfaceConfig, v: &MukaiVector, w: &MukaiVector) -> i64 {
    surf.ns.ip(&v.c1, &w.c1) - v.r * w.s - w.r * v.s
}

pub fn mukai_pairing_q(surf: &SurfaceConfig, v: &QMukai, w: &QMukai) -> Q {
    surf.dot(&v.c1, &w.c1) - &v.r * &w.s - &w.r * &v.s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MukaiClass {
    Spherical,
    Isotropic,
    Positive,
    Other,
}

pub fn classify(surf: &SurfaceConfig, v: &MukaiVector) -> MukaiClass {
    let sq = mukai_pairing(surf, v, v);
    if sq == -2 {
        MukaiClass::Spherical
    } else if sq == 0 && !v.is_zero() {
        MukaiClass::Isotropic
    } else if sq > 0 {
        MukaiClass::Positive
    } else {
        MukaiClass::Other
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qvec;

    #[test]
    fn elliptic_pairing() {
        let l = standard_lattice("elliptic").unwrap();
        assert_eq!(l.pairing(&qvec(&[1, 0]), &qvec(&[0, 1])).unwrap(), q(1));
        assert_eq!(l.pairing(&qvec(&[0, 0]), &qvec(&[3, 5])).unwrap(), q(0));
        assert!(l.pairing(&qvec(&[1]), &qvec(&[0, 1])).is_err());
    }

    #[test]
    fn e8_simple_root_norm() {
        let l = standard_lattice("E8").unwrap();
        let mut e = vec![0; 8];
        e[3] = 1;
        assert_eq!(l.ip(&e, &e), 2);
        assert_eq!(signature(&l), (8, 0, 0));
    }

    #[test]
    fn catalogue_entries() {
        assert_eq!(standard_lattice("U").unwrap().gram, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(
            standard_lattice("elliptic-I2").unwrap().gram,
            vec![vec![-2, 2, 0], vec![2, -2, 1], vec![0, 1, -2]]
        );
        assert_eq!(standard_lattice("A1-cartan").unwrap().gram, vec![vec![2]]);
        assert!(standard_lattice("Z9").is_err());
        let k3 = standard_lattice("K3").unwrap();
        assert_eq!(k3.rank(), 24);
        assert!(k3.is_even());
        assert_eq!(signature(&k3), (4, 20, 0));
    }

    #[test]
    fn signatures() {
        assert_eq!(signature(&standard_lattice("U").unwrap()), (1, 1, 0));
        assert_eq!(signature(&standard_lattice("elliptic").unwrap()), (1, 1, 0));
        assert_eq!(signature(&standard_lattice("A2").unwrap()), (2, 0, 0));
        for name in ["affine-A1", "affine-A2", "affine-D4", "affine-E6", "affine-E7", "affine-E8"] {
            let (p, n, z) = signature(&standard_lattice(name).unwrap());
            assert_eq!((n, z), (0, 1), "{name}");
            assert!(p > 0);
        }
        assert_eq!(signature(&standard_lattice("elliptic-I2").unwrap()), (1, 2, 0));
        assert_eq!(signature(&standard_lattice("elliptic-I3").unwrap()), (1, 3, 0));
    }

    #[test]
    fn reflection_examples() {
        let l = standard_lattice("elliptic").unwrap();
        let s0 = [0, 1];
        assert_eq!(reflect_int(&l, &s0, &[1, 0]).unwrap(), vec![1, 1]);
        assert_eq!(reflect_int(&l, &s0, &s0).unwrap(), vec![0, -1]);
        // 2F + S0 is orthogonal to S0
        assert_eq!(reflect_int(&l, &s0, &[2, 1]).unwrap(), vec![2, 1]);
        assert_eq!(reflect_int(&l, &[1, 0], &[0, 1]), Err(Error::Isotropic));
        let r = reflect(&l, &qvec(&s0), &qvec(&[1, 0])).unwrap();
        assert_eq!(r, qvec(&[1, 1]));
    }

    #[test]
    fn mukai_examples() {
        let s = SurfaceConfig::elliptic();
        let v = MukaiVector::ideal_points(2, 2);
        assert_eq!(mukai_pairing(&s, &v, &v), 2);
        let c = MukaiVector::new(0, vec![0, 1], 0);
        assert_eq!(mukai_pairing(&s, &c, &c), -2);
        assert_eq!(mukai_pairing(&s, &MukaiVector::new(1, vec![0, 0], -1), &MukaiVector::new(0, vec![0, 0], -1)), 1);
        assert_eq!(classify(&s, &c), MukaiClass::Spherical);
        assert_eq!(classify(&s, &MukaiVector::structure_sheaf(2)), MukaiClass::Spherical);
        assert_eq!(classify(&s, &MukaiVector::ideal_points(2, 3)), MukaiClass::Positive);
        assert_eq!(classify(&s, &MukaiVector::skyscraper(2)), MukaiClass::Isotropic);
        assert_eq!(classify(&s, &MukaiVector::zero(2)), MukaiClass::Other);
    }

    #[test]
    fn surface_json() {
        let s = SurfaceConfig::from_json(
            r#"{"gram": [[0,1],[1,-2]], "curves": {"S0": [0,1]}, "collections": {"A1": ["S0"]}}"#,
        )
        .unwrap();
        assert_eq!(s.ns.gram, SurfaceConfig::elliptic().ns.gram);
        assert_eq!(s.curves, SurfaceConfig::elliptic().curves);
        assert!(SurfaceConfig::from_json(r#"{"gram": [[0,1],[1,-2]], "curves": {"F": [1,0]}}"#).is_err());
        assert!(SurfaceConfig::from_json("{").is_err());
        assert_eq!(SurfaceConfig::elliptic_i3().collection("A2").unwrap().len(), 2);
    }

    #[test]
    fn pairing_contexts_differ_by_sign() {
        let s = SurfaceConfig::elliptic();
        assert_eq!(s.pair(PairingContext::Intersection, &[0, 1], &[0, 1]), -2);
        assert_eq!(s.pair(PairingContext::KacMoody, &[0, 1], &[0, 1]), 2);
    }
}
