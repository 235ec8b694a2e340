//! NS(S^[n]) through the Mukai homomorphism: the ℓ-map, Bayer–Macrì wall
//! generators and the walls near the Sym^n face.

use crate::arrangement::{arrangement_matches, MatchWitness};
use crate::error::{Error, Result};
use crate::k3::{CollectionRoots, KahlerPoint};
use crate::lattice::{mukai_pairing, MukaiVector, QMukai, SurfaceConfig};
use crate::linalg::Mat;
use crate::rational::{primitive_ray, q, Q};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// NS(S^[n]) = H̃ ⊕ ℤB, coordinates (α̃ coefficients, B coefficient),
/// with the surface form on the first block and B² = 2 − 2n.
#[derive(Clone, Debug)]
pub struct HilbNSModel {
    pub base: SurfaceConfig,
    pub n: i64,
}

impl HilbNSModel {
    pub fn new(base: SurfaceConfig, n: i64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Invalid("the Hilbert scheme model needs n >= 2".into()));
        }
        Ok(HilbNSModel { base, n })
    }

    pub fn dim(&self) -> usize {
        self.base.rank() + 1
    }

    /// v = (1, 0, 1 − n).
    pub fn v(&self) -> MukaiVector {
        MukaiVector::ideal_points(self.base.rank(), self.n)
    }

    pub fn gram(&self) -> Mat {
        let r = self.base.rank();
        let g = self.base.ns.gram_q();
        let mut m = vec![vec![Q::zero(); r + 1]; r + 1];
        for i in 0..r {
            m[i][..r].clone_from_slice(&g[i]);
        }
        m[r][r] = q(2 - 2 * self.n);
        m
    }

    pub fn bb(&self, x: &[Q], y: &[Q]) -> Q {
        let r = self.base.rank();
        self.base.dot(&x[..r], &y[..r]) + &x[r] * &y[r] * q(2 - 2 * self.n)
    }

    /// Linear functional y ↦ BB(x, y) as a coefficient vector.
    pub fn functional(&self, x: &[Q]) -> Vec<Q> {
        self.gram().iter().map(|row| crate::rational::dot(row, x)).collect()
    }

    /// B = |2,1^{n−2}⟩.
    pub fn b_class(&self) -> Vec<Q> {
        let mut b = vec![Q::zero(); self.dim()];
        b[self.base.rank()] = q(1);
        b
    }

    /// α̃ = θ_v((0, −α, 0)).
    pub fn tilde(&self, alpha: &[Q]) -> Vec<Q> {
        let mut x = alpha.to_vec();
        x.push(Q::zero());
        x
    }

    fn v_q(&self) -> QMukai {
        self.v().to_q()
    }

    /// θ_v on v⊥: (r, c, s) ↦ −c̃ … − rB.
    pub fn theta_v(&self, w: &QMukai) -> Result<Vec<Q>> {
        if !crate::lattice::mukai_pairing_q(&self.base, &self.v_q(), w).is_zero() {
            return Err(Error::Invalid("theta_v is defined on v-perp only".into()));
        }
        let mut x: Vec<Q> = w.c1.iter().map(|a| -a.clone()).collect();
        x.push(-w.r.clone());
        Ok(x)
    }

    /// θ_v of the orthogonal projection of w onto v⊥.
    pub fn theta_proj(&self, w: &QMukai) -> Vec<Q> {
        let v = self.v_q();
        let vv = crate::lattice::mukai_pairing_q(&self.base, &v, &v);
        let t = crate::lattice::mukai_pairing_q(&self.base, w, &v) / vv;
        self.theta_v(&w.sub(&v.scale(&t))).expect("projection lies in v-perp")
    }

    /// (r, C, s)_{ω,β} for v = (1, 0, 1 − n).
    pub fn ell_mukai(&self, kp: &KahlerPoint) -> QMukai {
        let s = &self.base;
        let v = self.v_q();
        let cw = s.dot(&v.c1, &kp.omega);
        let cb = s.dot(&v.c1, &kp.beta);
        let bw = s.dot(&kp.beta, &kp.omega);
        let half = (s.dot(&kp.beta, &kp.beta) - s.dot(&kp.omega, &kp.omega)) / q(2);
        let r = &cw - &v.r * &bw;
        let k = &v.s - &cb + &v.r * &half;
        let c1 = kp.beta.iter().zip(&kp.omega).map(|(b, w)| &r * b + &k * w).collect();
        let sv = &cw * &half + &v.s * &bw - &cw * &bw;
        QMukai { r, c1, s: sv }
    }

    /// Primitive representative of the ray ℓ(σ_{β,ω}).
    pub fn ell_map(&self, kp: &KahlerPoint) -> Result<Vec<Q>> {
        let x = self.theta_v(&self.ell_mukai(kp))?;
        let p = primitive_ray(&x).ok_or_else(|| Error::Invalid("the l-map image vanishes".into()))?;
        Ok(p.into_iter().map(Q::from_integer).collect())
    }

    /// (β·ω)β̃ + ((ω² − β²)/2 + n − 1)ω̃ + (β·ω)B, unnormalized.
    pub fn ell_shortcut(&self, kp: &KahlerPoint) -> Vec<Q> {
        let s = &self.base;
        let bw = s.dot(&kp.beta, &kp.omega);
        let k = (s.dot(&kp.omega, &kp.omega) - s.dot(&kp.beta, &kp.beta)) / q(2) + q(self.n - 1);
        let mut x: Vec<Q> = kp.beta.iter().zip(&kp.omega).map(|(b, w)| &bw * b + &k * w).collect();
        x.push(bw);
        x
    }

    /// BB(ℓ, θ_v(proj (0,C,k))); zero exactly on the image of W_{v,(0,C,k)}.
    pub fn wall_pairing(&self, kp: &KahlerPoint, c: &[i64], k: i64) -> Q {
        let ell = self.theta_v(&self.ell_mukai(kp)).expect("l lies in v-perp");
        let w = MukaiVector::new(0, c.to_vec(), k).to_q();
        self.bb(&ell, &self.theta_proj(&w))
    }

    /// x ↦ x − (2 BB(x,D)/BB(D,D)) D as a matrix acting on columns.
    pub fn markman_reflection(&self, d: &[Q]) -> Result<Mat> {
        let dd = self.bb(d, d);
        if dd.is_zero() {
            return Err(Error::Isotropic);
        }
        let f = self.functional(d);
        let n = self.dim();
        Ok((0..n)
            .map(|i| (0..n).map(|j| {
                let id = if i == j { q(1) } else { Q::zero() };
                id - q(2) * &f[j] * &d[i] / &dd
            }).collect())
            .collect())
    }
}

pub fn apply(m: &Mat, x: &[Q]) -> Vec<Q> {
    crate::linalg::mat_vec(m, x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Nef,
    Movable,
    Effective,
}

fn for_each_mukai(rank: usize, h: i64, mut f: impl FnMut(MukaiVector)) {
    let len = rank + 2;
    let mut x = vec![-h; len];
    loop {
        f(MukaiVector::new(x[0], x[1..=rank].to_vec(), x[rank + 1]));
        let mut i = 0;
        while i < len {
            x[i] += 1;
            if x[i] <= h {
                break;
            }
            x[i] = -h;
            i += 1;
        }
        if i == len {
            return;
        }
    }
}

fn parallel_to(a: &MukaiVector, v: &MukaiVector) -> bool {
    // a ∈ ℚv iff every 2×2 minor of (a, v) vanishes
    let mut av = vec![a.r];
    av.extend(&a.c1);
    av.push(a.s);
    let mut vv = vec![v.r];
    vv.extend(&v.c1);
    vv.push(v.s);
    (0..av.len()).all(|i| (0..av.len()).all(|j| av[i] * vv[j] == av[j] * vv[i]))
}

/// Classes from the Bayer–Macrì descriptions with coordinates bounded by
/// `height`, one per ± pair. Nef: α² ≥ −2, 0 ≤ (v,α) ≤ v²/2. Movable:
/// spherical s ∈ v⊥ and isotropic w with 1 ≤ (w,v) ≤ 2. Effective: the
/// exceptional classes s and v²w − (v,w)v. Multiples of v are dropped.
pub fn bm_wall_generators(model: &HilbNSModel, family: Family, height: i64) -> Vec<MukaiVector> {
    let surf = &model.base;
    let v = model.v();
    let v2 = mukai_pairing(surf, &v, &v);
    let mut found = BTreeSet::new();
    if height <= 0 {
        return vec![];
    }
    for_each_mukai(surf.rank(), height, |a| {
        if a.is_zero() || parallel_to(&a, &v) {
            return;
        }
        let a2 = mukai_pairing(surf, &a, &a);
        let va = mukai_pairing(surf, &v, &a);
        let keep = match family {
            Family::Nef => a2 >= -2 && 0 <= va && 2 * va <= v2,
            Family::Movable | Family::Effective => (a2 == -2 && va == 0) || (a2 == 0 && (1..=2).contains(&va)),
        };
        if !keep {
            return;
        }
        let cls = if family == Family::Effective && a2 == 0 { a.scale(v2).add(&v.scale(-va)) } else { a };
        let neg = cls.neg();
        found.insert(if neg > cls { neg } else { cls });
    });
    found.into_iter().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum SymnLabel {
    HilbertChow,
    Spherical { s: Vec<i64>, m: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymnWall {
    pub label: SymnLabel,
    /// BB-normal in NS(S^[n]) coordinates.
    #[serde(with = "crate::rational::serde_qvec")]
    pub normal: Vec<Q>,
    /// Matching affine root mδ + α in the basis (δ, α₁, …, α_r) of the
    /// collection, where s = Σ cᵢCᵢ gives α = c.
    pub affine_root: Vec<i64>,
}

/// W_HC and θ_v(v⊥ ∩ (0,s,m)⊥) for spherical s = ±C, C a positive root
/// class of the collection, and 0 ≤ m < n; one entry per hyperplane.
pub fn walls_through_symn_point(model: &HilbNSModel, collection: &str) -> Result<Vec<SymnWall>> {
    let cr = CollectionRoots::of(&model.base, collection)?;
    let r = cr.curves.len();
    let mut hc_root = vec![0; r + 1];
    hc_root[0] = 1;
    let mut out = vec![SymnWall { label: SymnLabel::HilbertChow, normal: model.b_class(), affine_root: hc_root }];
    let mut seen = BTreeSet::new();
    seen.insert(crate::rational::canonical_line(&model.b_class()));
    for m in 0..model.n {
        for (cls, coeff) in cr.classes.iter().zip(&cr.coeffs) {
            for sign in [1i64, -1] {
                let s: Vec<i64> = cls.iter().map(|x| sign * x).collect();
                let w = MukaiVector::new(0, s.clone(), m).to_q();
                let normal = model.theta_proj(&w);
                if !seen.insert(crate::rational::canonical_line(&normal)) {
                    continue;
                }
                let mut root = vec![m];
                root.extend(coeff.iter().map(|c| sign * c));
                out.push(SymnWall { label: SymnLabel::Spherical { s, m }, normal, affine_root: root });
            }
        }
    }
    Ok(out)
}

/// x = H̃ for a class H with H² > 0, H·C = 0 on the collection and
/// H·C > 0 on the other listed curves, searched by increasing height.
pub fn symn_point(model: &HilbNSModel, collection: &str) -> Result<Vec<Q>> {
    let surf = &model.base;
    let coll = surf.collection(collection)?;
    let href = surf.positive_reference();
    for h in 1..=6i64 {
        let mut best: Option<Vec<i64>> = None;
        for_each_mukai(surf.rank(), h, |a| {
            let x = a.c1;
            if best.is_some() || a.r != 0 || a.s != 0 || surf.ns.ip(&x, &x) <= 0 {
                return;
            }
            if let Some(r) = &href {
                if surf.ns.ip(r, &x) <= 0 {
                    return;
                }
            }
            let ok = surf.curves.values().all(|c| {
                let p = surf.ns.ip(c, &x);
                if coll.contains(c) { p == 0 } else { p > 0 }
            });
            if ok {
                best = Some(x);
            }
        });
        if let Some(x) = best {
            return Ok(model.tilde(&x.iter().map(|&a| q(a)).collect::<Vec<_>>()));
        }
    }
    Err(Error::Infeasible("no class contracting exactly the collection".into()))
}

/// Face-poset comparison of walls through x with the affine arrangement
/// {δ⊥, (mδ+α)⊥}, hyperplanes identified through the labels.
pub fn symn_arrangement_matches(model: &HilbNSModel, walls: &[SymnWall], x: &[Q]) -> Result<MatchWitness> {
    for w in walls {
        if !model.bb(&w.normal, x).is_zero() {
            return Err(Error::Invalid(format!("wall {:?} does not pass through x", w.label)));
        }
    }
    let a: Vec<Vec<Q>> = walls.iter().map(|w| model.functional(&w.normal)).collect();
    let b: Vec<Vec<Q>> = walls.iter().map(|w| w.affine_root.iter().map(|&c| q(c)).collect()).collect();
    Ok(arrangement_matches(&a, &b))
}

/// Reference arrangement {δ} ∪ {mδ + α : 0 ≤ m < n, α ∈ Δ} for a finite
/// root system in the basis (δ, α₁, …), one normal per hyperplane.
pub fn affine_reference_roots(positive: &[Vec<i64>], n: i64) -> Vec<Vec<i64>> {
    let r = positive.first().map_or(0, |p| p.len());
    let mut d = vec![0; r + 1];
    d[0] = 1;
    let mut out = vec![d];
    let mut seen = BTreeSet::new();
    for m in 0..n {
        for p in positive {
            for sign in [1, -1] {
                let mut root = vec![m];
                root.extend(p.iter().map(|c| sign * c));
                if seen.insert(crate::rational::canonical_line_i64(&root)) {
                    out.push(root);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::k3::on_wall;
    use num_traits::Signed;
    use crate::rational::qvec;

    fn model(n: i64) -> HilbNSModel {
        HilbNSModel::new(SurfaceConfig::elliptic(), n).unwrap()
    }

    #[test]
    fn theta_examples() {
        let m = model(3);
        let b = m.theta_v(&MukaiVector::new(-1, vec![0, 0], -2).to_q()).unwrap();
        assert_eq!(b, m.b_class());
        let h = m.theta_v(&MukaiVector::new(0, vec![-2, -1], 0).to_q()).unwrap();
        assert_eq!(h, qvec(&[2, 1, 0]));
        assert_eq!(m.theta_v(&MukaiVector::zero(2).to_q()).unwrap(), qvec(&[0, 0, 0]));
        assert!(m.theta_v(&MukaiVector::new(0, vec![0, 0], 1).to_q()).is_err());
        // θ_v is an isometry onto NS(S^[n])
        let w = MukaiVector::new(2, vec![1, -3], 4).to_q();
        let x = m.theta_v(&w).unwrap();
        assert_eq!(m.bb(&x, &x), crate::lattice::mukai_pairing_q(&m.base, &w, &w));
    }

    #[test]
    fn ell_examples() {
        let m = model(2);
        let kp = KahlerPoint::from_ints(&[0, 0], &[3, 1]);
        // β = 0: pure ω̃ direction
        assert_eq!(m.ell_map(&kp).unwrap(), qvec(&[3, 1, 0]));
        // β·ω = 0, β ≠ 0: B-coordinate vanishes
        let kp = KahlerPoint::new(qvec(&[1, -1]), qvec(&[3, 1]));
        assert_eq!(m.base.dot(&kp.beta, &kp.omega), q(0));
        assert!(m.ell_map(&kp).unwrap()[2].is_zero());
        // wall pullback at the wall point
        let kp = KahlerPoint::from_ints(&[0, -3], &[9, 1]);
        assert_eq!(on_wall(&m.base, &kp, &m.v(), &MukaiVector::new(0, vec![0, 1], 0)), Ok(true));
        assert!(m.wall_pairing(&kp, &[0, 1], 0).is_zero());
    }

    #[test]
    fn shortcut_agrees() {
        let m = model(3);
        let kp = KahlerPoint::new(vec![crate::rational::qf(1, 3), q(-2)], vec![q(7), crate::rational::qf(3, 2)]);
        let full = m.theta_v(&m.ell_mukai(&kp)).unwrap();
        let short = m.ell_shortcut(&kp);
        let bw = m.base.dot(&kp.beta, &kp.omega);
        let ratio = &full[2] / &short[2];
        assert!(ratio.is_positive() || bw.is_zero());
        for (a, b) in full.iter().zip(&short) {
            assert_eq!(a, &(&ratio * b));
        }
    }

    #[test]
    fn generator_examples() {
        let m = model(2);
        let nef = bm_wall_generators(&m, Family::Nef, 1);
        assert!(nef.contains(&MukaiVector::new(0, vec![0, 0], 1)) || nef.contains(&MukaiVector::new(0, vec![0, 0], -1)));
        let mov = bm_wall_generators(&m, Family::Movable, 1);
        assert!(mov.contains(&MukaiVector::new(0, vec![0, 1], 0)));
        assert!(bm_wall_generators(&m, Family::Nef, 0).is_empty());
        for e in bm_wall_generators(&m, Family::Effective, 1) {
            assert_eq!(mukai_pairing(&m.base, &e, &m.v()), 0);
        }
    }

    #[test]
    fn symn_walls_a1() {
        let m = model(2);
        let w = walls_through_symn_point(&m, "A1").unwrap();
        assert_eq!(w.len(), 4);
        let x = symn_point(&m, "A1").unwrap();
        assert_eq!(x, qvec(&[2, 1, 0]));
        let wit = symn_arrangement_matches(&m, &w, &x).unwrap();
        assert!(wit.matches);
        assert_eq!(wit.f_vector_a, vec![1, 8, 8]);
        let dropped = &w[..3];
        let roots = affine_reference_roots(&[vec![1]], 2);
        let a: Vec<Vec<Q>> = dropped.iter().map(|w| m.functional(&w.normal)).collect();
        let b: Vec<Vec<Q>> = roots.iter().map(|r| r.iter().map(|&c| q(c)).collect()).collect();
        assert!(!arrangement_matches(&a, &b).matches);
    }

    #[test]
    fn symn_walls_empty_collection() {
        let mut s = SurfaceConfig::elliptic();
        s.collections.insert("none".into(), vec![]);
        let m = HilbNSModel::new(s, 2).unwrap();
        let w = walls_through_symn_point(&m, "none").unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].label, SymnLabel::HilbertChow);
    }

    #[test]
    fn divisorial_walls_meet_hc_perpendicularly() {
        let m = HilbNSModel::new(SurfaceConfig::elliptic_i3(), 3).unwrap();
        for w in walls_through_symn_point(&m, "A2").unwrap() {
            if let SymnLabel::Spherical { m: 0, .. } = w.label {
                assert!(m.bb(&w.normal, &m.b_class()).is_zero());
            }
        }
    }

    #[test]
    fn markman_examples() {
        let m = model(2);
        let r = m.markman_reflection(&m.b_class()).unwrap();
        assert_eq!(apply(&r, &m.b_class()), qvec(&[0, 0, -1]));
        let x = qvec(&[3, 1, 0]);
        assert_eq!(apply(&r, &x), x);
        let y = qvec(&[1, -2, 5]);
        assert_eq!(apply(&r, &apply(&r, &y)), y);
        assert_eq!(m.markman_reflection(&qvec(&[1, 0, 0])), Err(Error::Isotropic));
    }
}
