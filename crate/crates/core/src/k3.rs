//! Central charges, walls and the large-volume limit region on a K3
//! surface, all in exact arithmetic.

use crate::error::{Error, Result};
use crate::lattice::{mukai_pairing, signature, IntegralLattice, MukaiVector, QMukai, SurfaceConfig};
use crate::linalg::{inverse, nullspace, solve, Mat};
use crate::rational::{floor_i64, q, qf, sqrt_ceil, Q};
use crate::roots::{Alcove, RootSystem};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KahlerPoint {
    #[serde(with = "crate::rational::serde_qvec")]
    pub beta: Vec<Q>,
    #[serde(with = "crate::rational::serde_qvec")]
    pub omega: Vec<Q>,
}

impl KahlerPoint {
    pub fn new(beta: Vec<Q>, omega: Vec<Q>) -> Self {
        KahlerPoint { beta, omega }
    }

    pub fn from_ints(beta: &[i64], omega: &[i64]) -> Self {
        KahlerPoint { beta: beta.iter().map(|&x| q(x)).collect(), omega: omega.iter().map(|&x| q(x)).collect() }
    }

    /// (β − c₁(L), ω).
    pub fn shift_beta(&self, l: &[i64]) -> Self {
        KahlerPoint { beta: self.beta.iter().zip(l).map(|(b, &x)| b - q(x)).collect(), omega: self.omega.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexQ {
    #[serde(with = "crate::rational::serde_q")]
    pub re: Q,
    #[serde(with = "crate::rational::serde_q")]
    pub im: Q,
}

impl ComplexQ {
    pub fn new(re: Q, im: Q) -> Self {
        ComplexQ { re, im }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        ComplexQ { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    /// self · conj(o)
    pub fn mul_conj(&self, o: &Self) -> Self {
        ComplexQ { re: &self.re * &o.re + &self.im * &o.im, im: &self.im * &o.re - &self.re * &o.im }
    }

    /// Maps to the half-open upper half plane (phase in (0,1]) by negation
    /// when needed; returns whether negation happened.
    fn normalized(&self) -> ComplexQ {
        if self.im.is_positive() || (self.im.is_zero() && self.re.is_negative()) {
            self.clone()
        } else {
            ComplexQ { re: -self.re.clone(), im: -self.im.clone() }
        }
    }
}

/// Compares phases in (0,1]; a charge outside the upper half plane is
/// first replaced by its negative (the phase of the shifted object).
pub fn phase_cmp(a: &ComplexQ, b: &ComplexQ) -> Ordering {
    let (a, b) = (a.normalized(), b.normalized());
    // both lie in angles (0, π]; the sign of the cross product orders them
    let cross = &a.re * &b.im - &a.im * &b.re;
    if cross.is_positive() {
        Ordering::Less
    } else if cross.is_negative() {
        Ordering::Greater
    } else {
        Ordering::Equal
    }
}

/// Z(v) = (e^{β+iω}, v): re = c·β − s − r(β²−ω²)/2, im = (c − rβ)·ω.
pub fn central_charge_q(surf: &SurfaceConfig, kp: &KahlerPoint, v: &QMukai) -> ComplexQ {
    let b2 = surf.dot(&kp.beta, &kp.beta);
    let w2 = surf.dot(&kp.omega, &kp.omega);
    let re = surf.dot(&v.c1, &kp.beta) - &v.s - &v.r * (b2 - w2) / q(2);
    let im = surf.dot(&v.c1, &kp.omega) - &v.r * surf.dot(&kp.beta, &kp.omega);
    ComplexQ { re, im }
}

pub fn central_charge(surf: &SurfaceConfig, kp: &KahlerPoint, v: &MukaiVector) -> ComplexQ {
    central_charge_q(surf, kp, &v.to_q())
}

/// Z(v) and Z(w) are real positive multiples of each other.
pub fn on_wall(surf: &SurfaceConfig, kp: &KahlerPoint, v: &MukaiVector, w: &MukaiVector) -> Result<bool> {
    let zv = central_charge(surf, kp, v);
    let zw = central_charge(surf, kp, w);
    if zv.is_zero() || zw.is_zero() {
        return Err(Error::VanishingCharge);
    }
    let p = zv.mul_conj(&zw);
    Ok(p.im.is_zero() && p.re.is_positive())
}

pub fn phase_compare(surf: &SurfaceConfig, kp: &KahlerPoint, v: &MukaiVector, w: &MukaiVector) -> Result<Ordering> {
    let zv = central_charge(surf, kp, v);
    let zw = central_charge(surf, kp, w);
    if zv.is_zero() || zw.is_zero() {
        return Err(Error::VanishingCharge);
    }
    Ok(phase_cmp(&zv, &zw))
}

/// Root data of a contractible collection: curve classes, their Gram
/// matrix, and the positive −2 classes Σ cᵢCᵢ.
#[derive(Clone, Debug)]
pub struct CollectionRoots {
    pub curves: Vec<Vec<i64>>,
    pub gram: Vec<Vec<i64>>,
    /// Coefficient vectors of positive roots, in the curve basis.
    pub coeffs: Vec<Vec<i64>>,
    /// The same roots as NS classes.
    pub classes: Vec<Vec<i64>>,
}

impl CollectionRoots {
    pub fn new(ns: &IntegralLattice, curves: Vec<Vec<i64>>) -> Result<Self> {
        let k = curves.len();
        let gram: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| ns.ip(&curves[i], &curves[j])).collect()).collect();
        if k == 0 {
            return Ok(CollectionRoots { curves, gram, coeffs: vec![], classes: vec![] });
        }
        let neg = IntegralLattice::new(gram.clone())?;
        if signature(&neg) != (0, k, 0) {
            return Err(Error::NotNegativeDefinite);
        }
        let rs = RootSystem::from_cartan(neg.negated().gram)?;
        let coeffs = rs.positive_roots()?;
        let classes = coeffs.iter().map(|c| combine(&curves, c, ns.rank())).collect();
        Ok(CollectionRoots { curves, gram, coeffs, classes })
    }

    pub fn of(surf: &SurfaceConfig, collection: &str) -> Result<Self> {
        CollectionRoots::new(&surf.ns, surf.collection(collection)?)
    }

    /// Whether the NS class x lies in the integral span of the curves.
    pub fn contains(&self, ns: &IntegralLattice, x: &[i64]) -> bool {
        if self.curves.is_empty() {
            return x.iter().all(|&a| a == 0);
        }
        let g: Mat = self.gram.iter().map(|r| r.iter().map(|&a| q(a)).collect()).collect();
        let rhs: Vec<Q> = self.curves.iter().map(|c| q(ns.ip(c, x))).collect();
        let c = solve(&g, &rhs).expect("collection gram is invertible");
        if !c.iter().all(|a| a.is_integer()) {
            return false;
        }
        let ci: Vec<i64> = c.iter().map(floor_i64).collect();
        combine(&self.curves, &ci, ns.rank()) == x
    }
}

fn combine(curves: &[Vec<i64>], c: &[i64], rank: usize) -> Vec<i64> {
    let mut v = vec![0; rank];
    for (cv, &k) in curves.iter().zip(c) {
        for i in 0..rank {
            v[i] += k * cv[i];
        }
    }
    v
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitParams {
    #[serde(with = "crate::rational::serde_q")]
    pub n: Q,
    #[serde(with = "crate::rational::serde_q")]
    pub xi: Q,
    #[serde(with = "crate::rational::serde_q")]
    pub vol: Q,
    pub collection: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitReport {
    pub inside: bool,
    pub reasons: Vec<String>,
    /// Coordinate bounds of the box searched for small isotropic and −2
    /// classes; every class violating the ξ-bounds lies in this box.
    pub search_radius: Vec<u64>,
}

/// Membership in U_{𝒞,N,ξ,V}. The quantifiers over isotropic and −2
/// classes are decided exactly: any class x with |ω·x| ≤ ξ and x² ∈ {0,−2}
/// satisfies 2(ω·x)²/ω² − x² ≤ 2 + 3ξ²/ω², a positive definite quadratic
/// form when ω² > 0, which bounds each coordinate.
pub fn in_limit_region(surf: &SurfaceConfig, kp: &KahlerPoint, lp: &LimitParams) -> Result<LimitReport> {
    limit_region(surf, kp, lp, false)
}

fn limit_region(surf: &SurfaceConfig, kp: &KahlerPoint, lp: &LimitParams, fail_fast: bool) -> Result<LimitReport> {
    let cr = CollectionRoots::of(surf, &lp.collection)?;
    let mut reasons = Vec::new();
    let n = &lp.n;
    let b2 = surf.dot(&kp.beta, &kp.beta);
    let w2 = surf.dot(&kp.omega, &kp.omega);
    let bw = surf.dot(&kp.beta, &kp.omega);
    for (name, c) in &surf.curves {
        let cq: Vec<Q> = c.iter().map(|&x| q(x)).collect();
        if surf.dot(&cq, &kp.omega).is_negative() {
            reasons.push(format!("omega is not nef: omega.{name} < 0"));
        }
    }
    if !w2.is_positive() {
        reasons.push("omega^2 > 0 violated".into());
    } else if let Some(h) = surf.positive_reference() {
        if !surf.dot(&qv(&h), &kp.omega).is_positive() {
            reasons.push("omega lies in the negative half of the positive cone".into());
        }
    }
    if b2.abs() >= *n {
        reasons.push("|beta^2| < N violated".into());
    }
    if !(-n < bw && !bw.is_positive()) {
        reasons.push("-N < beta.omega <= 0 violated".into());
    }
    if w2 <= lp.vol {
        reasons.push("omega^2 > V violated".into());
    }
    for c in &cr.curves {
        let cq: Vec<Q> = c.iter().map(|&x| q(x)).collect();
        if surf.dot(&cq, &kp.beta).abs() >= *n {
            reasons.push(format!("|C.beta| < N violated for C = {c:?}"));
        }
        let cw = surf.dot(&cq, &kp.omega);
        if cw.is_negative() {
            reasons.push(format!("0 <= C.omega violated for C = {c:?}"));
        } else if w2.is_positive() && cw >= n / &w2 {
            reasons.push(format!("exceptional curve too large: C.omega >= N/omega^2 for C = {c:?}"));
        }
    }
    let mut radius = Vec::new();
    if fail_fast && !reasons.is_empty() {
        return Ok(LimitReport { inside: false, reasons, search_radius: radius });
    }
    if w2.is_positive() {
        let g = surf.ns.gram_q();
        let gw: Vec<Q> = g.iter().map(|r| crate::rational::dot(r, &kp.omega)).collect();
        let r = surf.rank();
        let m: Mat = (0..r).map(|i| (0..r).map(|j| q(2) * &gw[i] * &gw[j] / &w2 - &g[i][j]).collect()).collect();
        let minv = inverse(&m).ok_or_else(|| Error::Invalid("NS lattice is not hyperbolic".into()))?;
        let bound = q(2) + q(3) * &lp.xi * &lp.xi / &w2;
        radius = (0..r).map(|i| {
            let b = &bound * &minv[i][i];
            sqrt_ceil(&b)
        }).collect();
        for_each_in_box(&radius, |x| {
            let sq = surf.ns.ip(x, x);
            if sq != 0 && sq != -2 {
                return;
            }
            if x.iter().all(|&a| a == 0) {
                return;
            }
            let xq: Vec<Q> = x.iter().map(|&a| q(a)).collect();
            let wx = surf.dot(&kp.omega, &xq).abs();
            if wx > lp.xi {
                return;
            }
            if sq == 0 {
                reasons.push(format!("|omega.q| > xi violated for isotropic q = {x:?}"));
            } else if !cr.contains(&surf.ns, x) {
                reasons.push(format!("|omega.alpha| > xi violated for -2 class alpha = {x:?}"));
            }
        });
    }
    Ok(LimitReport { inside: reasons.is_empty(), reasons, search_radius: radius })
}

fn for_each_in_box(radius: &[u64], mut f: impl FnMut(&[i64])) {
    let r: Vec<i64> = radius.iter().map(|&x| x as i64).collect();
    let mut x: Vec<i64> = r.iter().map(|a| -a).collect();
    loop {
        f(&x);
        let mut i = 0;
        while i < x.len() {
            x[i] += 1;
            if x[i] <= r[i] {
                break;
            }
            x[i] = -r[i];
            i += 1;
        }
        if i == x.len() {
            return;
        }
    }
}

/// A −2 class C in ℤ𝒞 with ω·C = 0 and β·C ∈ ℤ, if any.
pub fn gap_test(surf: &SurfaceConfig, kp: &KahlerPoint, collection: &str) -> Result<Option<Vec<i64>>> {
    let cr = CollectionRoots::of(surf, collection)?;
    for c in &cr.classes {
        let cq: Vec<Q> = c.iter().map(|&x| q(x)).collect();
        if surf.dot(&cq, &kp.omega).is_zero() && surf.dot(&cq, &kp.beta).is_integer() {
            return Ok(Some(c.clone()));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum WallKind {
    HilbertChow,
    CurveWall { c: Vec<i64>, k: i64 },
    Boundary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallDescriptor {
    pub v: MukaiVector,
    pub w: MukaiVector,
    pub kind: WallKind,
}

/// HC wall {β·ω = 0} plus W_{v,(0,C,k)} for positive −2 classes C ∈ ℤ𝒞 and
/// k = 0, −1, …, 1−n, with v = (1,0,1−n).
pub fn hilb_walls(surf: &SurfaceConfig, n: i64, collection: &str) -> Result<Vec<WallDescriptor>> {
    twisted_walls(surf, &vec![0; surf.rank()], n, collection)
}

/// Walls for v_D = (1, D, 1 + D²/2 − n): the HC descriptor uses v(L) and
/// curve walls use w = (0, C, C·D + k).
pub fn twisted_walls(surf: &SurfaceConfig, d: &[i64], n: i64, collection: &str) -> Result<Vec<WallDescriptor>> {
    if n < 1 {
        return Err(Error::Invalid("n must be positive".into()));
    }
    let cr = CollectionRoots::of(surf, collection)?;
    let v = MukaiVector::twisted_ideal(&surf.ns, d, n);
    let mut out = vec![WallDescriptor { v: v.clone(), w: MukaiVector::line_bundle(&surf.ns, d), kind: WallKind::HilbertChow }];
    for c in &cr.classes {
        let cd = surf.ns.ip(c, d);
        for k in (1 - n..=0).rev() {
            out.push(WallDescriptor {
                v: v.clone(),
                w: MukaiVector::new(0, c.clone(), cd + k),
                kind: WallKind::CurveWall { c: c.clone(), k },
            });
        }
    }
    Ok(out)
}

/// v · ch(L) = (r, C + rL, L·C + s + rL²/2).
pub fn tensor_shift(surf: &SurfaceConfig, v: &MukaiVector, l: &[i64]) -> MukaiVector {
    let c1: Vec<i64> = v.c1.iter().zip(l).map(|(c, x)| c + v.r * x).collect();
    let s = surf.ns.ip(l, &v.c1) + v.s + v.r * surf.ns.ip(l, l) / 2;
    MukaiVector::new(v.r, c1, s)
}

/// Checks Z_{β,ω}(v·ch L) = Z_{β−L,ω}(v).
pub fn verify_tensor_shift(surf: &SurfaceConfig, kp: &KahlerPoint, v: &MukaiVector, l: &[i64]) -> bool {
    central_charge(surf, kp, &tensor_shift(surf, v, l)) == central_charge(surf, &kp.shift_beta(l), v)
}

/// Twisted slopes μ = (c₁ − rβ)·ω / r and ν = (s − c₁·β)/r.
pub fn twisted_slopes(surf: &SurfaceConfig, kp: &KahlerPoint, e: &MukaiVector) -> Result<(Q, Q)> {
    if e.r == 0 {
        return Err(Error::Invalid("twisted slope needs nonzero rank".into()));
    }
    let c: Vec<Q> = e.c1.iter().map(|&x| q(x)).collect();
    let r = q(e.r);
    let mu = (surf.dot(&c, &kp.omega) - &r * surf.dot(&kp.beta, &kp.omega)) / &r;
    let nu = (q(e.s) - surf.dot(&c, &kp.beta)) / &r;
    Ok((mu, nu))
}

pub fn twisted_slope_compare(surf: &SurfaceConfig, kp: &KahlerPoint, e: &MukaiVector, f: &MukaiVector) -> Result<Ordering> {
    Ok(twisted_slopes(surf, kp, e)?.cmp(&twisted_slopes(surf, kp, f)?))
}

/// For each positive root class C_α, the integer k_α with
/// φ((0,C_α,k_α−1)) < φ(v_D) < φ((0,C_α,k_α)), where v_D = (1, D, s).
pub fn alcove_chamber_of(surf: &SurfaceConfig, d: &[i64], s: i64, kp: &KahlerPoint, collection: &str) -> Result<Alcove> {
    let cr = CollectionRoots::of(surf, collection)?;
    let v = MukaiVector::new(1, d.to_vec(), s);
    let zv = central_charge(surf, kp, &v);
    if !zv.im.is_positive() {
        return Err(Error::Invalid("Z(v_D) must lie in the open upper half plane".into()));
    }
    let mut k = Vec::with_capacity(cr.classes.len());
    for c in &cr.classes {
        let cq: Vec<Q> = c.iter().map(|&x| q(x)).collect();
        let cw = surf.dot(&cq, &kp.omega);
        if !cw.is_positive() {
            return Err(Error::Invalid(format!("C.omega must be positive for C = {c:?}")));
        }
        // φ(v) < φ((0,C,k)) iff k > C·β − re(Z v)(C·ω)/im(Z v)
        let t = surf.dot(&cq, &kp.beta) - &zv.re * &cw / &zv.im;
        if t.is_integer() {
            return Err(Error::OnWall(format!("v_D is on the wall of (0,{c:?},{t})")));
        }
        k.push(floor_i64(&t) + 1);
    }
    Ok(Alcove { roots: cr.coeffs, k })
}

/// Integer vectors t with (v + c_t)² ≥ −2, where c_t = Σ tᵢcᵢ; the cᵢ
/// must span a negative definite lattice. Sorted lexicographically.
pub fn stable_factor_support(surf: &SurfaceConfig, v: &MukaiVector, sph: &[MukaiVector]) -> Result<Vec<Vec<i64>>> {
    let k = sph.len();
    if k == 0 {
        return Ok(if mukai_pairing(surf, v, v) >= -2 { vec![vec![]] } else { vec![] });
    }
    let g: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| mukai_pairing(surf, &sph[i], &sph[j])).collect()).collect();
    if signature(&IntegralLattice::new(g.clone())?) != (0, k, 0) {
        return Err(Error::NotNegativeDefinite);
    }
    let neg: Mat = g.iter().map(|r| r.iter().map(|&x| q(-x)).collect()).collect();
    let ninv = inverse(&neg).unwrap();
    let b: Vec<Q> = sph.iter().map(|c| q(mukai_pairing(surf, v, c))).collect();
    let t0: Vec<Q> = ninv.iter().map(|r| crate::rational::dot(r, &b)).collect();
    let kk = q(mukai_pairing(surf, v, v) + 2) + crate::rational::dot(&b, &t0);
    if kk.is_negative() {
        return Ok(vec![]);
    }
    let mut lo = Vec::with_capacity(k);
    let mut hi = Vec::with_capacity(k);
    for i in 0..k {
        let r = q(sqrt_ceil(&(&kk * &ninv[i][i])) as i64);
        lo.push(floor_i64(&(&t0[i] - &r)));
        hi.push(floor_i64(&(&t0[i] + &r)) + 1);
    }
    let vsq = mukai_pairing(surf, v, v);
    let bi: Vec<i64> = sph.iter().map(|c| mukai_pairing(surf, v, c)).collect();
    let mut out = Vec::new();
    let mut t = lo.clone();
    loop {
        let mut sq = vsq;
        for i in 0..k {
            sq += 2 * t[i] * bi[i];
            for j in 0..k {
                sq += t[i] * g[i][j] * t[j];
            }
        }
        if sq >= -2 {
            out.push(t.clone());
        }
        let mut i = 0;
        while i < k {
            t[i] += 1;
            if t[i] <= hi[i] {
                break;
            }
            t[i] = lo[i];
            i += 1;
        }
        if i == k {
            break;
        }
    }
    out.sort();
    Ok(out)
}

/// ⟨v, cᵢ⟩ < 0 for some i.
pub fn totally_semistable(surf: &SurfaceConfig, v: &MukaiVector, c: &[MukaiVector]) -> bool {
    c.iter().any(|ci| mukai_pairing(surf, v, ci) < 0)
}

fn shifted(v: &MukaiVector, sph: &[MukaiVector], t: &[i64]) -> MukaiVector {
    sph.iter().zip(t).fold(v.clone(), |acc, (c, &k)| acc.add(&c.scale(k)))
}

fn dominant(surf: &SurfaceConfig, x: &MukaiVector, sph: &[MukaiVector]) -> bool {
    sph.iter().all(|c| mukai_pairing(surf, x, c) >= 0)
}

/// The unique m with v + c_m in the dominant chamber {⟨x, cᵢ⟩ ≥ 0 ∀i} such
/// that no v + c_{m+t}, t ≥ 0 nonzero, is dominant. Candidates outside the
/// support never matter: a dominant y = x + c_t has y² ≥ x².
pub fn base_vector_m(surf: &SurfaceConfig, v: &MukaiVector, sph: &[MukaiVector]) -> Result<Vec<i64>> {
    let support = stable_factor_support(surf, v, sph)?;
    let dom: Vec<&Vec<i64>> = support.iter().filter(|t| dominant(surf, &shifted(v, sph, t), sph)).collect();
    let maximal: Vec<&Vec<i64>> = dom
        .iter()
        .filter(|m| !dom.iter().any(|o| o != *m && o.iter().zip(m.iter()).all(|(a, b)| a >= b)))
        .copied()
        .collect();
    match maximal.len() {
        1 => Ok(maximal[0].clone()),
        0 => Err(Error::Infeasible("no dominant vector in the support".into())),
        _ => Err(Error::Invalid(format!("base vector is not unique: {maximal:?}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuliWeight {
    pub level: i64,
    pub d_degree: i64,
    /// −⟨v, cᵢ⟩
    pub finite_weights: Vec<i64>,
    /// −⟨v + s_t, sᵢ⟩
    pub h_eigenvalues: Vec<i64>,
    /// ⟨v + s_t, sᵢ⟩ − 1
    pub sign_exponents: Vec<i64>,
}

/// Weight data of the finite action at v + s_t, with v = (1, D, s).
pub fn moduli_weight(surf: &SurfaceConfig, v: &MukaiVector, sph: &[MukaiVector], t: &[i64]) -> Result<ModuliWeight> {
    if v.r != 1 {
        return Err(Error::Invalid("moduli_weight expects rank one".into()));
    }
    if t.len() != sph.len() {
        return Err(Error::Dimension { expected: sph.len(), got: t.len() });
    }
    let vt = shifted(v, sph, t);
    let pv: Vec<i64> = sph.iter().map(|c| mukai_pairing(surf, v, c)).collect();
    let pt: Vec<i64> = sph.iter().map(|c| mukai_pairing(surf, &vt, c)).collect();
    Ok(ModuliWeight {
        level: 1,
        d_degree: v.s,
        finite_weights: pv.iter().map(|x| -x).collect(),
        h_eigenvalues: pt.iter().map(|x| -x).collect(),
        sign_exponents: pt.iter().map(|x| x - 1).collect(),
    })
}

/// Free parameters of the corner construction (see `solve_corner_stability`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerHint {
    pub c: Q,
    pub w0: Q,
    pub mu: Q,
}

fn qv(x: &[i64]) -> Vec<Q> {
    x.iter().map(|&a| q(a)).collect()
}

fn lin(a: &Q, x: &[Q], b: &Q, y: &[Q]) -> Vec<Q> {
    x.iter().zip(y).map(|(u, v)| a * u + b * v).collect()
}

/// A Kähler point on every wall W_{v_D + c_t, (0, C_r, k_r)} at once.
///
/// With an isotropic F having F·C_r > 0 and f_r = F·C_r, take β in span(C_R)
/// with C_r·β = k_r + c f_r and ω = aF + W where C_r·W = w0 f_r and
/// (D−β)·W = w0 (D−β)·F. Then Z(c_r) = (f_r/κ) Z(v_D) with κ = (D−β)·F
/// as soon as re Z(v_D) = cκ, which is linear in a.
pub fn solve_corner_stability(
    surf: &SurfaceConfig,
    d: &[i64],
    s: i64,
    roots: &[Vec<i64>],
    k: &[i64],
    lp: &LimitParams,
    hint: Option<&CornerHint>,
) -> Result<KahlerPoint> {
    if roots.len() != k.len() {
        return Err(Error::Dimension { expected: roots.len(), got: k.len() });
    }
    let ns = &surf.ns;
    let rank = surf.rank();
    let v = MukaiVector::new(1, d.to_vec(), s);
    let cand_ok = |kp: &KahlerPoint| -> bool { corner_point_valid(surf, &v, roots, k, kp, lp) };
    if roots.is_empty() {
        return empty_corner(surf, &cand_ok);
    }
    CollectionRoots::new(ns, roots.to_vec())?;
    let g: Mat = roots.iter().map(|a| roots.iter().map(|b| q(ns.ip(a, b))).collect()).collect();
    let href = surf.positive_reference();
    let f = find_isotropic(ns, roots, href.as_deref()).ok_or_else(|| Error::Infeasible("no isotropic class positive on R".into()))?;
    let fq = qv(&f);
    let fr: Vec<Q> = roots.iter().map(|c| q(ns.ip(c, &f))).collect();
    let rq: Vec<Vec<Q>> = roots.iter().map(|c| qv(c)).collect();
    let cons: Mat = rq.iter().map(|c| crate::linalg::mat_vec(&ns.gram_q(), c)).collect();
    let perp = nullspace(&cons, rank);
    let dq = qv(d);
    let span = |coef: &[Q]| -> Vec<Q> {
        let mut out = vec![Q::zero(); rank];
        for (c, r) in coef.iter().zip(&rq) {
            for i in 0..rank {
                out[i] += c * &r[i];
            }
        }
        out
    };
    let attempt = |h: &CornerHint| -> Option<KahlerPoint> {
        let b: Vec<Q> = k.iter().zip(&fr).map(|(&kr, f)| q(kr) + &h.c * f).collect();
        let beta = span(&solve(&g, &b)?);
        let dmb: Vec<Q> = dq.iter().zip(&beta).map(|(a, b)| a - b).collect();
        let kappa = surf.dot(&dmb, &fq);
        if !kappa.is_positive() {
            return None;
        }
        let wr = span(&solve(&g, &fr.iter().map(|x| &h.w0 * x).collect::<Vec<_>>())?);
        let target = &h.w0 * &kappa;
        let have = surf.dot(&dmb, &wr);
        let hdir = perp.iter().find(|p| !surf.dot(&dmb, p).is_zero());
        let w = match hdir {
            Some(p) => {
                if !h.mu.is_zero() {
                    return None;
                }
                let mu = (&target - &have) / surf.dot(&dmb, p);
                lin(&Q::one(), &wr, &mu, p)
            }
            None => {
                if have != target {
                    return None;
                }
                match perp.first() {
                    Some(p) => lin(&Q::one(), &wr, &h.mu, p),
                    None => wr.clone(),
                }
            }
        };
        let fw = surf.dot(&fq, &w);
        if fw.is_zero() {
            return None;
        }
        let a = (&h.c * &kappa - surf.dot(&dq, &beta) + q(s) + surf.dot(&beta, &beta) / q(2) - surf.dot(&w, &w) / q(2)) / fw;
        if !(&a + &h.w0).is_positive() {
            return None;
        }
        let omega = lin(&a, &fq, &Q::one(), &w);
        let kp = KahlerPoint::new(beta, omega);
        if cand_ok(&kp) { Some(kp) } else { None }
    };
    if let Some(h) = hint {
        return attempt(h).ok_or_else(|| Error::Infeasible("hinted parameters fail the checks".into()));
    }
    for c in 1..=24i64 {
        for w0a in 0..=12i64 {
            for w0 in [-w0a, w0a] {
                for mu in -3..=3i64 {
                    for den in [1i64, 2] {
                        let h = CornerHint { c: q(c), w0: qf(w0, den), mu: q(mu) };
                        if let Some(kp) = attempt(&h) {
                            return Ok(kp);
                        }
                    }
                }
                if w0a == 0 {
                    break;
                }
            }
        }
    }
    Err(Error::Infeasible("no corner point within the search grid; enlarge N or V".into()))
}

fn find_isotropic(ns: &IntegralLattice, roots: &[Vec<i64>], href: Option<&[i64]>) -> Option<Vec<i64>> {
    for r in 1..=4u64 {
        let mut found: Option<Vec<i64>> = None;
        for_each_in_box(&vec![r; ns.rank()], |x| {
            if found.is_some() || ns.ip(x, x) != 0 || x.iter().all(|&a| a == 0) {
                return;
            }
            if roots.iter().all(|c| ns.ip(c, x) > 0) && href.map_or(true, |h| ns.ip(h, x) > 0) {
                found = Some(x.to_vec());
            }
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

fn empty_corner(surf: &SurfaceConfig, ok: &dyn Fn(&KahlerPoint) -> bool) -> Result<KahlerPoint> {
    let rank = surf.rank();
    for r in 1..=3u64 {
        let mut cands = Vec::new();
        for_each_in_box(&vec![r; rank], |x| {
            if surf.ns.ip(x, x) > 0 && surf.curves.values().all(|c| surf.ns.ip(c, x) >= 0) {
                cands.push(x.to_vec());
            }
        });
        for h in cands {
            for t in 1..=12i64 {
                let omega: Vec<Q> = h.iter().map(|&a| q(t * a)).collect();
                // β a small negative multiple of ω, so β·ω < 0
                let beta: Vec<Q> = h.iter().map(|&a| qf(-a, 4 * t)).collect();
                let kp = KahlerPoint::new(beta, omega);
                if ok(&kp) {
                    return Ok(kp);
                }
            }
        }
    }
    Err(Error::Infeasible("no generic limit point found".into()))
}

fn corner_point_valid(
    surf: &SurfaceConfig,
    v: &MukaiVector,
    roots: &[Vec<i64>],
    k: &[i64],
    kp: &KahlerPoint,
    lp: &LimitParams,
) -> bool {
    if !surf.dot(&kp.omega, &kp.omega).is_positive() {
        return false;
    }
    let zv = central_charge(surf, kp, v);
    if !zv.im.is_positive() {
        return false;
    }
    let limit_ok = || matches!(limit_region(surf, kp, lp, true), Ok(r) if r.inside);
    if roots.is_empty() {
        return alcove_chamber_of(surf, &v.c1, v.s, kp, &lp.collection).is_ok() && limit_ok();
    }
    let cs: Vec<MukaiVector> = roots.iter().zip(k).map(|(c, &kr)| MukaiVector::new(0, c.clone(), kr)).collect();
    let Ok(support) = stable_factor_support(surf, v, &cs) else { return false };
    for t in &support {
        let vt = shifted(v, &cs, t);
        for c in &cs {
            if !matches!(on_wall(surf, kp, &vt, c), Ok(true)) {
                return false;
            }
        }
    }
    limit_ok()
}
