use crate::algebra::LatticeVOA;
use crate::engine::Engine;
use crate::fock::{monomials_of_degree, State, VOAElement};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use wallcross_core::Q;

fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// One operator identity LHS = RHS, checked on basis vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    /// [h(n), h'(m)] = n⟨h,h'⟩δ_{n+m,0}
    Heisenberg { h: Vec<i64>, n: i64, k: Vec<i64>, m: i64 },
    /// [h(n), x_m(α)] = ⟨h,α⟩ x_{n+m}(α)
    Hx { h: Vec<i64>, n: i64, alpha: Vec<i64>, m: i64 },
    /// [x_n(α), x_m(β)] by the three-case formula
    Xx { alpha: Vec<i64>, n: i64, beta: Vec<i64>, m: i64 },
    /// (ad x_0(αᵢ))^{1−⟨αᵢ,αⱼ⟩} x_0(αⱼ) = 0
    Serre { alpha: Vec<i64>, beta: Vec<i64> },
    /// [x_n(F), x_m(−F)] = 0 for ⟨F,F⟩ = 0
    Isotropic { f: Vec<i64>, n: i64, m: i64 },
    /// [L(0), x_n(α)] = −n x_n(α)
    L0Grading { alpha: Vec<i64>, n: i64 },
}

impl Relation {
    pub fn family(&self) -> &'static str {
        match self {
            Relation::Heisenberg { .. } => "heisenberg",
            Relation::Hx { .. } => "hx",
            Relation::Xx { .. } => "xx",
            Relation::Serre { .. } => "serre",
            Relation::Isotropic { .. } => "isotropic",
            Relation::L0Grading { .. } => "l0-grading",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum XxCase {
    Commute,
    Sum,
    Opposite,
    Other,
}


fn neg(a: &[i64]) -> Vec<i64> {
    a.iter().map(|x| -x).collect()
}

/// Operations the relation formulas need, so the same formulas run on
/// exact big rationals and on the fast interned engine.
pub trait Backend {
    type V: Clone;
    fn x(&self, a: &[i64], n: i64, v: &Self::V) -> Self::V;
    fn h(&self, h: &[i64], n: i64, v: &Self::V) -> Self::V;
    fn l0(&self, v: &Self::V) -> Self::V;
    fn lin(&self, terms: &[(i64, &Self::V)]) -> Self::V;
    fn ip(&self, a: &[i64], b: &[i64]) -> i64;
    fn eps(&self, a: &[i64], b: &[i64]) -> i64;
}

impl Backend for LatticeVOA {
    type V = VOAElement;
    fn x(&self, a: &[i64], n: i64, v: &VOAElement) -> VOAElement {
        self.vertex_mode(a, n, v)
    }
    fn h(&self, h: &[i64], n: i64, v: &VOAElement) -> VOAElement {
        self.heis_act(h, n, v)
    }
    fn l0(&self, v: &VOAElement) -> VOAElement {
        LatticeVOA::l0(self, v)
    }
    fn lin(&self, terms: &[(i64, &VOAElement)]) -> VOAElement {
        let mut out = VOAElement::zero();
        for (c, v) in terms {
            out.add_scaled(v, &qi(*c));
        }
        out
    }
    fn ip(&self, a: &[i64], b: &[i64]) -> i64 {
        LatticeVOA::ip(self, a, b)
    }
    fn eps(&self, a: &[i64], b: &[i64]) -> i64 {
        self.cocycle.eps(a, b)
    }
}

fn comm<B: Backend>(b: &B, x: &B::V, f: impl Fn(&B::V) -> B::V, g: impl Fn(&B::V) -> B::V) -> B::V {
    let fg = f(&g(x));
    let gf = g(&f(x));
    b.lin(&[(1, &fg), (-1, &gf)])
}

fn binom(n: i64, k: i64) -> i64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn xx_case_b<B: Backend>(v: &B, a: &[i64], b: &[i64]) -> XxCase {
    let ab = v.ip(a, b);
    if a.iter().zip(b).all(|(x, y)| x + y == 0) && v.ip(a, a) == 2 {
        XxCase::Opposite
    } else if ab >= 0 {
        XxCase::Commute
    } else if ab == -1 {
        XxCase::Sum
    } else {
        XxCase::Other
    }
}

fn xx_rhs<B: Backend>(b: &B, alpha: &[i64], n: i64, beta: &[i64], m: i64, x: &B::V) -> B::V {
    match xx_case_b(b, alpha, beta) {
        XxCase::Commute | XxCase::Other => b.lin(&[]),
        XxCase::Sum => {
            let s: Vec<i64> = alpha.iter().zip(beta).map(|(a, c)| a + c).collect();
            let y = b.x(&s, n + m, x);
            b.lin(&[(b.eps(alpha, beta), &y)])
        }
        XxCase::Opposite => {
            let e = b.eps(alpha, beta);
            let y = b.h(alpha, n + m, x);
            let c = if n + m == 0 { n } else { 0 };
            b.lin(&[(e, &y), (e * c, x)])
        }
    }
}

/// Both sides of each identity a relation asserts, applied to x. An xx
/// instance asserts the formula for (α,n,β,m) and, through the same
/// commutator, for the swapped pair (β,m,α,n).
pub fn evaluate<B: Backend>(b: &B, rel: &Relation, x: &B::V) -> Vec<(B::V, B::V)> {
    if let Relation::Xx { alpha, n, beta, m } = rel {
        let lhs = comm(b, x, |e| b.x(alpha, *n, e), |e| b.x(beta, *m, e));
        let rhs = xx_rhs(b, alpha, *n, beta, *m, x);
        let swapped = xx_rhs(b, beta, *m, alpha, *n, x);
        let neg_lhs = b.lin(&[(-1, &lhs)]);
        return vec![(lhs, rhs), (neg_lhs, swapped)];
    }
    vec![evaluate_one(b, rel, x)]
}

fn evaluate_one<B: Backend>(b: &B, rel: &Relation, x: &B::V) -> (B::V, B::V) {
    let zero = b.lin(&[]);
    match rel {
        Relation::Heisenberg { h, n, k, m } => {
            let lhs = comm(b, x, |e| b.h(h, *n, e), |e| b.h(k, *m, e));
            let c = if n + m == 0 { n * b.ip(h, k) } else { 0 };
            (lhs, b.lin(&[(c, x)]))
        }
        Relation::Hx { h, n, alpha, m } => {
            let lhs = comm(b, x, |e| b.h(h, *n, e), |e| b.x(alpha, *m, e));
            let y = b.x(alpha, n + m, x);
            (lhs, b.lin(&[(b.ip(h, alpha), &y)]))
        }
        Relation::Xx { .. } => unreachable!(),
        Relation::Serre { alpha, beta } => {
            let p = 1 - b.ip(alpha, beta);
            let mut parts = Vec::new();
            for k in 0..=p {
                let mut y = x.clone();
                for _ in 0..k {
                    y = b.x(alpha, 0, &y);
                }
                y = b.x(beta, 0, &y);
                for _ in 0..p - k {
                    y = b.x(alpha, 0, &y);
                }
                let sign = if k % 2 == 0 { 1 } else { -1 };
                parts.push((sign * binom(p, k), y));
            }
            let refs: Vec<(i64, &B::V)> = parts.iter().map(|(c, y)| (*c, y)).collect();
            (b.lin(&refs), zero)
        }
        Relation::Isotropic { f, n, m } => {
            let lhs = comm(b, x, |e| b.x(f, *n, e), |e| b.x(&neg(f), *m, e));
            (lhs, zero)
        }
        Relation::L0Grading { alpha, n } => {
            let lhs = comm(b, x, |e| b.l0(e), |e| b.x(alpha, *n, e));
            let y = b.x(alpha, *n, x);
            (lhs, b.lin(&[(-n, &y)]))
        }
    }
}

/// Which source vectors and relations to check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    /// Fock degrees 0..=degree are checked.
    pub degree: u32,
    /// Lattice markers γ with |γᵢ| ≤ marker_radius.
    pub marker_radius: i64,
    /// Modes n, m with |n| ≤ mode_range.
    pub mode_range: i64,
    /// Families to include; empty means all.
    pub families: Vec<String>,
}

impl SuiteConfig {
    pub fn new(degree: u32) -> Self {
        SuiteConfig { degree, marker_radius: 1, mode_range: 2, families: Vec::new() }
    }

    fn wants(&self, fam: &str) -> bool {
        self.families.is_empty() || self.families.iter().any(|f| f == fam)
    }
}

fn box_vectors(rank: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        out = out.into_iter().flat_map(|v| (-r..=r).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

/// Nonzero vectors with entries in {−1,0,1} and norm 0 or 2.
pub fn test_vectors(voa: &LatticeVOA) -> Vec<Vec<i64>> {
    box_vectors(voa.rank(), 1)
        .into_iter()
        .filter(|v| v.iter().any(|&x| x != 0) && matches!(voa.ip(v, v), 0 | 2))
        .collect()
}

fn unit(rank: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; rank];
    v[i] = 1;
    v
}

/// All relation instances for the configuration, in a fixed order.
pub fn instances(voa: &LatticeVOA, cfg: &SuiteConfig) -> Vec<Relation> {
    let r = voa.rank();
    let modes: Vec<i64> = (-cfg.mode_range..=cfg.mode_range).collect();
    let tv = test_vectors(voa);
    let basis: Vec<Vec<i64>> = (0..r).map(|i| unit(r, i)).collect();
    let mut out = Vec::new();
    if cfg.wants("heisenberg") {
        for h in &basis {
            for k in &basis {
                for &n in &modes {
                    for &m in &modes {
                        out.push(Relation::Heisenberg { h: h.clone(), n, k: k.clone(), m });
                    }
                }
            }
        }
    }
    if cfg.wants("hx") {
        for h in &basis {
            for a in &tv {
                for &n in &modes {
                    for &m in &modes {
                        out.push(Relation::Hx { h: h.clone(), n, alpha: a.clone(), m });
                    }
                }
            }
        }
    }
    if cfg.wants("xx") {
        for a in &tv {
            for b in &tv {
                if xx_case_b(voa, a, b) == XxCase::Other {
                    continue;
                }
                for &n in &modes {
                    for &m in &modes {
                        if (b, m) < (a, n) {
                            continue;
                        }
                        out.push(Relation::Xx { alpha: a.clone(), n, beta: b.clone(), m });
                    }
                }
            }
        }
    }
    if cfg.wants("serre") {
        let simple: Vec<&Vec<i64>> = basis.iter().filter(|b| voa.ip(b, b) == 2).collect();
        for a in &simple {
            for b in &simple {
                if a != b && voa.ip(a, b) <= 0 {
                    out.push(Relation::Serre { alpha: (*a).clone(), beta: (*b).clone() });
                    out.push(Relation::Serre { alpha: neg(a), beta: neg(b) });
                }
            }
        }
    }
    if cfg.wants("isotropic") {
        for f in tv.iter().filter(|f| voa.ip(f, f) == 0) {
            for &n in &modes {
                for &m in &modes {
                    out.push(Relation::Isotropic { f: f.clone(), n, m });
                }
            }
        }
    }
    if cfg.wants("l0-grading") {
        for a in &tv {
            for &n in &modes {
                out.push(Relation::L0Grading { alpha: a.clone(), n });
            }
        }
    }
    out
}

/// Basis of the graded component (γ, d) in canonical order.
pub fn component_basis(voa: &LatticeVOA, gamma: &[i64], d: u32) -> Vec<State> {
    monomials_of_degree(voa.rank(), d).into_iter().map(|m| State { gamma: gamma.to_vec(), mono: m }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub instance: Relation,
    pub source: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub relation: String,
    pub lattice: String,
    pub degree: u32,
    pub status: String,
    pub checks: u64,
    pub skipped: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub lattice: String,
    pub degree: u32,
    pub all_pass: bool,
    pub families: Vec<FamilyReport>,
}

#[derive(Default)]
struct Outcome {
    checks: u64,
    skipped: u64,
    witness: Option<(usize, Witness)>,
}

/// Check every instance on every basis vector of every component (γ, d)
/// with d ≤ degree and γ in the marker box. Vectors where the truncation
/// loses terms are skipped and counted.
pub fn relation_suite(voa: &LatticeVOA, cfg: &SuiteConfig) -> SuiteReport {
    let engine = Engine::new(voa);
    let insts = instances(voa, cfg);
    let markers = box_vectors(voa.rank(), cfg.marker_radius);
    let comps: Vec<(Vec<i64>, u32)> =
        markers.iter().flat_map(|g| (0..=cfg.degree).map(move |d| (g.clone(), d))).collect();
    let tasks: Vec<(usize, usize)> = (0..insts.len()).flat_map(|i| (0..comps.len()).map(move |c| (i, c))).collect();
    let outcomes: Vec<(usize, Outcome)> = tasks
        .par_iter()
        .map(|&(i, c)| {
            let (g, d) = &comps[c];
            let mut o = Outcome::default();
            for s in component_basis(voa, g, *d) {
                let x = engine.basis(&s);
                let pairs = evaluate(&engine, &insts[i], &x);
                if pairs.iter().any(|(l, r)| l.overflow || r.overflow) {
                    o.skipped += 1;
                    continue;
                }
                o.checks += 1;
                let bad = pairs.iter().find(|(l, r)| !l.same_value(r));
                if let (Some((l, r)), None) = (bad, &o.witness) {
                    let w = Witness {
                        instance: insts[i].clone(),
                        source: format!("{} e^{:?}", s.mono.render(), s.gamma),
                        lhs: engine.to_element(&l).render(),
                        rhs: engine.to_element(&r).render(),
                    };
                    o.witness = Some((i * comps.len() + c, w));
                }
            }
            (i, o)
        })
        .collect();
    let mut fams: Vec<FamilyReport> = Vec::new();
    let mut order: Vec<&'static str> = Vec::new();
    let mut acc: std::collections::HashMap<&'static str, Outcome> = Default::default();
    for (i, o) in outcomes {
        let f = insts[i].family();
        if !order.contains(&f) {
            order.push(f);
        }
        let a = acc.entry(f).or_default();
        a.checks += o.checks;
        a.skipped += o.skipped;
        if let Some((k, w)) = o.witness {
            if a.witness.as_ref().map_or(true, |(k0, _)| k < *k0) {
                a.witness = Some((k, w));
            }
        }
    }
    for f in order {
        let a = acc.remove(f).unwrap();
        fams.push(FamilyReport {
            relation: f.to_string(),
            lattice: voa.name.clone(),
            degree: cfg.degree,
            status: if a.witness.is_none() { "pass" } else { "fail" }.to_string(),
            checks: a.checks,
            skipped: a.skipped,
            witness: a.witness.map(|p| p.1),
        });
    }
    let all_pass = fams.iter().all(|f| f.status == "pass");
    SuiteReport { lattice: voa.name.clone(), degree: cfg.degree, all_pass, families: fams }
}
