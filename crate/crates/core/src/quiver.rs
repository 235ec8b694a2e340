//! GIT chamber combinatorics for Nakajima quiver varieties.

use crate::error::{Error, Result};
use crate::lattice::{ade_cartan, affine_cartan};
use crate::linalg::{rank, Mat};
use crate::rational::{canonical_line_i64, dot, q, qf, Q};
use crate::roots::{affine_root, RootSystem};
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Symmetric adjacency matrix; a loop at i contributes 2 to A[i][i] so that
/// C = 2I − A is the Cartan form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub adjacency: Vec<Vec<i64>>,
}

/// Affine data: null root δ (δ₀ = 1) and the finite roots on vertices 1..r,
/// embedded with a zero in position 0.
#[derive(Clone, Debug)]
pub struct AffineData {
    pub delta: Vec<i64>,
    pub finite_positive: Vec<Vec<i64>>,
}

impl AffineData {
    pub fn finite_roots(&self) -> Vec<Vec<i64>> {
        let mut v = self.finite_positive.clone();
        v.extend(self.finite_positive.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()));
        v
    }
}

impl Quiver {
    pub fn new(adjacency: Vec<Vec<i64>>) -> Result<Self> {
        let n = adjacency.len();
        for (i, row) in adjacency.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Dimension { expected: n, got: row.len() });
            }
            for j in 0..n {
                if row[j] < 0 || row[j] != adjacency[j][i] {
                    return Err(Error::Invalid("adjacency must be symmetric and non-negative".into()));
                }
            }
        }
        Ok(Quiver { adjacency })
    }

    pub fn from_cartan(c: &[Vec<i64>]) -> Result<Self> {
        let n = c.len();
        Quiver::new((0..n).map(|i| (0..n).map(|j| if i == j { 2 - c[i][j] } else { -c[i][j] }).collect()).collect())
    }

    /// "affine-A2", "affine-D4", "jordan", "A3", ...
    pub fn from_name(name: &str) -> Result<Self> {
        if name == "jordan" {
            return Quiver::new(vec![vec![2]]);
        }
        let unknown = || Error::UnknownName(name.to_string());
        let (affine, rest) = match name.strip_prefix("affine-") {
            Some(r) => (true, r),
            None => (false, name),
        };
        let mut ch = rest.chars();
        let kind = ch.next().ok_or_else(unknown)?;
        let k: usize = ch.as_str().parse().map_err(|_| unknown())?;
        let c = if affine { affine_cartan(kind, k) } else { ade_cartan(kind, k) }.ok_or_else(unknown)?;
        Quiver::from_cartan(&c)
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn cartan(&self) -> Vec<Vec<i64>> {
        let n = self.n();
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { 2 - self.adjacency[i][j] } else { -self.adjacency[i][j] }).collect())
            .collect()
    }

    pub fn form(&self, x: &[i64], y: &[i64]) -> i64 {
        let c = self.cartan();
        let mut acc = 0;
        for i in 0..x.len() {
            for j in 0..y.len() {
                acc += x[i] * c[i][j] * y[j];
            }
        }
        acc
    }

    pub fn cv(&self, v: &[i64]) -> Vec<i64> {
        self.cartan().iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// Affine ADE data with vertex 0 as the extending vertex; the Jordan
    /// quiver counts as affine with no finite roots.
    pub fn affine_data(&self) -> Result<AffineData> {
        if self.adjacency == vec![vec![2]] {
            return Ok(AffineData { delta: vec![1], finite_positive: vec![] });
        }
        let rs = RootSystem::from_cartan(self.cartan()).map_err(|_| Error::NotAffine)?;
        let delta = rs.null_root.clone().ok_or(Error::NotAffine)?;
        if delta[0] != 1 {
            return Err(Error::NotAffine);
        }
        let c = self.cartan();
        let sub: Vec<Vec<i64>> = c[1..].iter().map(|r| r[1..].to_vec()).collect();
        let fin = RootSystem::from_cartan(sub)?;
        let finite_positive = fin
            .positive_roots()?
            .into_iter()
            .map(|r| {
                let mut v = vec![0];
                v.extend(r);
                v
            })
            .collect();
        Ok(AffineData { delta, finite_positive })
    }
}

fn box_points(v: &[i64]) -> impl ParallelIterator<Item = Vec<i64>> + '_ {
    let total: i64 = v.iter().map(|x| x + 1).product();
    (0..total).into_par_iter().map(move |mut idx| {
        let mut out = Vec::with_capacity(v.len());
        for &b in v {
            out.push(idx % (b + 1));
            idx /= b + 1;
        }
        out
    })
}

/// R₊(v) = {θ ∈ ℕ^I : θ ≠ 0, θ·Cθ ≤ 2, θ ≤ v}.
pub fn bounded_positive_roots(qv: &Quiver, v: &[i64]) -> Result<BTreeSet<Vec<i64>>> {
    if v.len() != qv.n() {
        return Err(Error::Dimension { expected: qv.n(), got: v.len() });
    }
    if v.iter().any(|&x| x < 0) {
        return Err(Error::Invalid("dimension vector must be non-negative".into()));
    }
    Ok(box_points(v).filter(|t| t.iter().any(|&x| x != 0) && qv.form(t, t) <= 2).collect::<Vec<_>>().into_iter().collect())
}

/// Canonical normals of {δ⊥} ∪ {(mδ+α)⊥ : 0 ≤ m < n, α ∈ Δ_f}.
pub fn genuine_walls_affine(qv: &Quiver, n: i64) -> Result<BTreeSet<Vec<i64>>> {
    let ad = qv.affine_data()?;
    let mut out = BTreeSet::new();
    out.insert(canonical_line_i64(&ad.delta).unwrap());
    for m in 0..n {
        for a in ad.finite_roots() {
            if let Some(c) = canonical_line_i64(&affine_root(&ad.delta, m, &a[1..])) {
                out.insert(c);
            }
        }
    }
    Ok(out)
}

/// Sign of θ·ν for each wall normal ν.
pub fn chamber_signature(theta: &[Q], walls: &[Vec<i64>]) -> Vec<i8> {
    walls
        .iter()
        .map(|w| {
            let d = theta.iter().zip(w).fold(Q::zero(), |acc, (t, &x)| acc + t * q(x));
            if d.is_positive() {
                1
            } else if d.is_negative() {
                -1
            } else {
                0
            }
        })
        .collect()
}

pub fn is_generic(theta: &[Q], walls: &[Vec<i64>]) -> bool {
    chamber_signature(theta, walls).iter().all(|&s| s != 0)
}

/// A parameter in the chamber C(v) adjacent to the face
/// C = {θ·δ = 0, θ·αᵢ > 0} on the side θ·δ > 0.
pub fn hilb_chamber_rep(qv: &Quiver, v: &[i64]) -> Result<Vec<Q>> {
    let ad = qv.affine_data()?;
    let n = qv.n();
    if ad.finite_positive.is_empty() {
        let mut t = vec![Q::zero(); n];
        t[0] = q(1);
        return Ok(t);
    }
    // θ_C: θᵢ = 1 on finite vertices, θ₀ fixed by θ·δ = 0
    let mut base = vec![q(1); n];
    base[0] = -ad.delta[1..].iter().fold(Q::zero(), |acc, &d| acc + q(d));
    let walls: Vec<Vec<i64>> = bounded_positive_roots(qv, v)?.into_iter().collect();
    let base_sig = chamber_signature(&base, &walls);
    let mut eps = qf(1, 8);
    for _ in 0..64 {
        let mut t = base.clone();
        t[0] += &eps;
        let sig = chamber_signature(&t, &walls);
        // no wall separates θ from θ_C; walls through θ_C must be strictly positive
        let ok = sig.iter().zip(&base_sig).all(|(s, b)| if *b == 0 { *s == 1 } else { s == b });
        if ok {
            return Ok(t);
        }
        eps /= q(2);
    }
    Err(Error::Infeasible("no perturbation found".into()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum KingCheck {
    /// S ⊂ ker j, requiring θ·dim S ≤ 0.
    KernelOfJ,
    /// S ⊇ im i, requiring θ·dim S ≤ θ·dim V.
    ContainsImageOfI,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KingOutcome {
    pub check: KingCheck,
    pub lhs: Q,
    pub rhs: Q,
    pub holds: bool,
    pub equality: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KingVerdict {
    pub dim_s: Vec<i64>,
    pub outcomes: Vec<KingOutcome>,
}

impl KingVerdict {
    pub fn respects(&self) -> bool {
        self.outcomes.iter().all(|o| o.holds)
    }

    pub fn violated(&self) -> Vec<KingCheck> {
        self.outcomes.iter().filter(|o| !o.holds).map(|o| o.check.clone()).collect()
    }
}

/// A representation of the doubled framed quiver at explicit dimensions,
/// plus a candidate subspace S given by spanning vectors at each vertex.
#[derive(Clone, Debug)]
pub struct QuiverRepCertificate {
    pub v: Vec<usize>,
    pub w: Vec<usize>,
    /// (source, target, matrix of shape v[target] × v[source])
    pub edges: Vec<(usize, usize, Mat)>,
    /// i_k : W_k → V_k, shape v[k] × w[k]
    pub i_maps: Vec<Mat>,
    /// j_k : V_k → W_k, shape w[k] × v[k]
    pub j_maps: Vec<Mat>,
    pub subspace: Vec<Vec<Vec<Q>>>,
}

fn apply(m: &Mat, x: &[Q]) -> Vec<Q> {
    m.iter().map(|r| dot(r, x)).collect()
}

fn contains(span: &[Vec<Q>], x: &[Q]) -> bool {
    if x.iter().all(|a| a.is_zero()) {
        return true;
    }
    let mut m: Mat = span.to_vec();
    let r0 = rank(&m);
    m.push(x.to_vec());
    rank(&m) == r0
}

pub fn king_certificate_check(rep: &QuiverRepCertificate, theta: &[Q]) -> Result<KingVerdict> {
    let nv = rep.v.len();
    for k in 0..nv {
        for s in &rep.subspace[k] {
            if s.len() != rep.v[k] {
                return Err(Error::Dimension { expected: rep.v[k], got: s.len() });
            }
        }
    }
    for (a, b, m) in &rep.edges {
        if m.len() != rep.v[*b] || m.iter().any(|r| r.len() != rep.v[*a]) {
            return Err(Error::Invalid(format!("edge {a}->{b} has wrong shape")));
        }
        for s in &rep.subspace[*a] {
            if !contains(&rep.subspace[*b], &apply(m, s)) {
                return Err(Error::NotInvariant);
            }
        }
    }
    let dim_s: Vec<i64> = rep.subspace.iter().map(|s| rank(&s.to_vec()) as i64).collect();
    let theta_s = theta.iter().zip(&dim_s).fold(Q::zero(), |acc, (t, &d)| acc + t * q(d));
    let theta_v = theta.iter().zip(&rep.v).fold(Q::zero(), |acc, (t, &d)| acc + t * q(d as i64));
    let in_ker_j = (0..nv).all(|k| rep.subspace[k].iter().all(|s| apply(&rep.j_maps[k], s).iter().all(|x| x.is_zero())));
    let has_im_i = (0..nv).all(|k| {
        (0..rep.w[k]).all(|c| {
            let col: Vec<Q> = rep.i_maps[k].iter().map(|r| r[c].clone()).collect();
            contains(&rep.subspace[k], &col)
        })
    });
    let mut outcomes = Vec::new();
    if in_ker_j {
        outcomes.push(KingOutcome {
            check: KingCheck::KernelOfJ,
            holds: theta_s <= Q::zero(),
            equality: theta_s.is_zero(),
            lhs: theta_s.clone(),
            rhs: Q::zero(),
        });
    }
    if has_im_i {
        outcomes.push(KingOutcome {
            check: KingCheck::ContainsImageOfI,
            holds: theta_s <= theta_v,
            equality: theta_s == theta_v,
            lhs: theta_s,
            rhs: theta_v,
        });
    }
    Ok(KingVerdict { dim_s, outcomes })
}

/// Crawley–Boevey quiver: a new vertex ∞ (index 0) with wᵢ edges to vertex
/// i (shifted to index i+1); returns it with the dimension vector (1, v).
pub fn crawley_boevey(qv: &Quiver, v: &[i64], w: &[i64]) -> Result<(Quiver, Vec<i64>)> {
    let n = qv.n();
    if v.len() != n || w.len() != n {
        return Err(Error::Dimension { expected: n, got: v.len().min(w.len()) });
    }
    let mut a = vec![vec![0; n + 1]; n + 1];
    for i in 0..n {
        for j in 0..n {
            a[i + 1][j + 1] = qv.adjacency[i][j];
        }
        a[0][i + 1] = w[i];
        a[i + 1][0] = w[i];
    }
    let mut dims = vec![1];
    dims.extend_from_slice(v);
    Ok((Quiver::new(a)?, dims))
}

/// θ∞ = (−θ·v, θ).
pub fn theta_infinity(theta: &[Q], v: &[i64]) -> Vec<Q> {
    let tv = theta.iter().zip(v).fold(Q::zero(), |acc, (t, &x)| acc + t * q(x));
    let mut out = vec![-tv];
    out.extend_from_slice(theta);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtQuiverData {
    pub quiver: Quiver,
    pub dims: Vec<i64>,
    pub framing: Vec<i64>,
    pub loops: Vec<i64>,
    pub trivial_factor_dim: i64,
}

/// p(β) = 1 − (β,β)/2.
pub fn p_value(qv: &Quiver, b: &[i64]) -> i64 {
    1 - qv.form(b, b) / 2
}

/// Ext quiver of a polystable decomposition Σ nᵢβⁱ + β∞ = target on the
/// Crawley–Boevey quiver `q_inf`.
pub fn ext_quiver(q_inf: &Quiver, decomp: &[(Vec<i64>, i64)], beta_inf: &[i64], target: &[i64]) -> Result<ExtQuiverData> {
    let n = q_inf.n();
    let mut total = beta_inf.to_vec();
    for (b, m) in decomp {
        if b.len() != n {
            return Err(Error::Dimension { expected: n, got: b.len() });
        }
        for i in 0..n {
            total[i] += m * b[i];
        }
    }
    if total != target {
        return Err(Error::Invalid(format!("decomposition sums to {total:?}, expected {target:?}")));
    }
    let k = decomp.len();
    let mut adj = vec![vec![0; k]; k];
    let mut loops = Vec::with_capacity(k);
    for i in 0..k {
        let p = p_value(q_inf, &decomp[i].0);
        if p < 0 {
            return Err(Error::NegativeCount { what: format!("loops at vertex {i}"), value: p });
        }
        loops.push(p);
        adj[i][i] = 2 * p;
        for j in 0..k {
            if i != j {
                let e = -q_inf.form(&decomp[i].0, &decomp[j].0);
                if e < 0 {
                    return Err(Error::NegativeCount { what: format!("edges {i}-{j}"), value: e });
                }
                adj[i][j] = e;
            }
        }
    }
    let mut framing = Vec::with_capacity(k);
    for (i, (b, _)) in decomp.iter().enumerate() {
        let m = -q_inf.form(beta_inf, b);
        if m < 0 {
            return Err(Error::NegativeCount { what: format!("framing at vertex {i}"), value: m });
        }
        framing.push(m);
    }
    let ell = p_value(q_inf, beta_inf);
    if ell < 0 {
        return Err(Error::NegativeCount { what: "trivial factor dimension".into(), value: ell });
    }
    Ok(ExtQuiverData {
        quiver: Quiver::new(adj)?,
        dims: decomp.iter().map(|(_, m)| *m).collect(),
        framing,
        loops,
        trivial_factor_dim: ell,
    })
}

/// n = v₀ − vᵀCv/2 for the framing w₀.
pub fn num_points(qv: &Quiver, v: &[i64]) -> Result<i64> {
    qv.affine_data()?;
    let n = v[0] - qv.form(v, v) / 2;
    if n < 0 {
        return Err(Error::NegativeCount { what: "number of points".into(), value: n });
    }
    Ok(n)
}

/// θ ↦ θ + (θ·δ) s with s·δ = 0: the identity on the level-0 hyperplane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftMap {
    pub delta: Vec<i64>,
    pub shift: Vec<Q>,
}

impl ShiftMap {
    fn level(&self, theta: &[Q]) -> Q {
        theta.iter().zip(&self.delta).fold(Q::zero(), |acc, (t, &d)| acc + t * q(d))
    }

    pub fn apply(&self, theta: &[Q]) -> Vec<Q> {
        let l = self.level(theta);
        theta.iter().zip(&self.shift).map(|(t, s)| t + &l * s).collect()
    }

    pub fn inverse(&self, theta: &[Q]) -> Vec<Q> {
        let l = self.level(theta);
        theta.iter().zip(&self.shift).map(|(t, s)| t - &l * s).collect()
    }

    /// Normal of the image of the hyperplane ν⊥: ν − (s·ν)δ.
    pub fn push_normal(&self, nu: &[i64]) -> Vec<Q> {
        let sn = self.shift.iter().zip(nu).fold(Q::zero(), |acc, (s, &x)| acc + s * q(x));
        nu.iter().zip(&self.delta).map(|(&x, &d)| q(x) - &sn * q(d)).collect()
    }
}

/// The shift map Θ_{nδ} → Θ_v with u = w₀ − Cv and
/// e₀ ↦ e₀ + (−Σ_{i≠0} uᵢδᵢ, u₁, …, u_r).
pub fn shift_map_phi(qv: &Quiver, v: &[i64]) -> Result<ShiftMap> {
    let ad = qv.affine_data()?;
    let cv = qv.cv(v);
    let mut u: Vec<i64> = cv.iter().map(|x| -x).collect();
    u[0] += 1;
    let mut shift: Vec<Q> = u.iter().map(|&x| q(x)).collect();
    shift[0] = -(1..u.len()).fold(Q::zero(), |acc, i| acc + q(u[i] * ad.delta[i]));
    Ok(ShiftMap { delta: ad.delta, shift })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CornerFiber {
    pub tau: i64,
    pub k: i64,
    /// +1 when τ + k > 0, −1 otherwise.
    pub sign: i64,
    pub beta_k: Vec<i64>,
    /// Allowed (ℓ, w_ℓ) for which Gr(ℓ, w_ℓ) is a projective space.
    pub allowed: Vec<(i64, i64)>,
    pub divisorial: bool,
}

impl CornerFiber {
    /// w_ℓ = ±k + 2ℓ.
    pub fn framing_dim(&self, ell: i64) -> i64 {
        self.sign * self.k + 2 * ell
    }
}

/// Corner data for the finite root `alpha` (full index vector, alpha[0] = 0).
pub fn corner_fiber_data(qv: &Quiver, v: &[i64], alpha: &[i64], k: i64) -> Result<CornerFiber> {
    let ad = qv.affine_data()?;
    if alpha.len() != qv.n() || alpha[0] != 0 || !ad.finite_roots().iter().any(|r| r == alpha) {
        return Err(Error::Invalid(format!("{alpha:?} is not a finite root")));
    }
    let tau = -qv.form(alpha, v);
    let (sign, beta_k) = if tau + k > 0 {
        (1, affine_root(&ad.delta, tau + k, &alpha[1..].iter().map(|x| -x).collect::<Vec<_>>()))
    } else {
        (-1, affine_root(&ad.delta, -(tau + k), &alpha[1..]))
    };
    let sk = sign * k;
    let mut allowed = Vec::new();
    if sk >= 0 {
        allowed.push((1, sk + 2));
    }
    let alt = -sk + 1;
    if alt >= 1 && !allowed.iter().any(|&(l, _)| l == alt) {
        allowed.push((alt, sk + 2 * alt));
    }
    let divisorial = k == 0 && allowed.contains(&(1, 2));
    Ok(CornerFiber { tau, k, sign, beta_k, allowed, divisorial })
}

/// (ρᵢᵀ(w − Cv) + r − 1, r − 1).
pub fn hecke_fiber_dim(qv: &Quiver, v: &[i64], w: &[i64], i: usize, r: i64) -> (i64, i64) {
    let cv = qv.cv(v);
    (w[i] - cv[i] + r - 1, r - 1)
}

fn partitions(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if n == 0 {
        out.push(prefix.clone());
        return;
    }
    for part in (1..=n.min(max)).rev() {
        prefix.push(part);
        partitions(n - part, part, prefix, out);
        prefix.pop();
    }
}

/// Partitions of n in reverse lexicographic order.
pub fn integer_partitions(n: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    partitions(n, n, &mut Vec::new(), &mut out);
    out
}

/// Labels (λ, k) with |λ| + k = n, ordered by k then λ.
pub fn strata_labels(n: u32) -> Vec<(Vec<u32>, u32)> {
    (0..=n).flat_map(|k| integer_partitions(n - k).into_iter().map(move |p| (p, k))).collect()
}
