use crate::cocycle::{build_cocycle, Cocycle};
use crate::fock::{poly_add_scaled, poly_mul, r_to_q, Monomial, Poly, State, VOAElement, R};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};
use wallcross_core::lattice::{signature, standard_lattice};
use wallcross_core::{Error, Result, Q};

fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModeOperator {
    Heisenberg { h: Vec<i64>, n: i64 },
    Vertex { alpha: Vec<i64>, n: i64 },
    L0,
    Chevalley { gen: Chevalley, n: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Chevalley {
    E(usize),
    F(usize),
    H(usize),
    C,
    D,
}

/// Memo of x_n(α) on basis states.
type ModeCache = Mutex<HashMap<(Vec<i64>, i64, State), Arc<VOAElement>>>;

/// V_Λ truncated at Fock degree `cap`. The pairing is the vertex-algebra
/// one, so −2 curves have norm 2.
pub struct LatticeVOA {
    pub name: String,
    pub gram: Vec<Vec<i64>>,
    pub cocycle: Cocycle,
    pub cap: u32,
    bcache: Mutex<HashMap<Vec<i64>, Arc<Vec<Poly>>>>,
    mcache: ModeCache,
}

impl LatticeVOA {
    pub fn new(name: &str, gram: Vec<Vec<i64>>, cap: u32) -> Result<Self> {
        let cocycle = build_cocycle(&gram)?;
        for i in 0..gram.len() {
            for j in 0..gram.len() {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        Ok(LatticeVOA {
            name: name.to_string(),
            gram,
            cocycle,
            cap,
            bcache: Mutex::new(HashMap::new()),
            mcache: Mutex::new(HashMap::new()),
        })
    }

    /// Catalogue names. Root lattices ("A1", "A2", ...) are used with their
    /// Cartan form; surface lattices ("elliptic-K3", "U", ...) are negated.
    pub fn from_name(name: &str, cap: u32) -> Result<Self> {
        let l = standard_lattice(name)?;
        let (_, neg, _) = signature(&l);
        let surface = matches!(name, "U" | "K3") || name.starts_with("elliptic");
        let l = if surface || (neg > 0 && neg == l.rank()) { l.negated() } else { l };
        LatticeVOA::new(name, l.gram.clone(), cap)
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn ip(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..a.len() {
            if a[i] == 0 {
                continue;
            }
            for j in 0..b.len() {
                s += a[i] * self.gram[i][j] * b[j];
            }
        }
        s
    }

    fn gvec(&self, a: &[i64]) -> Vec<i64> {
        (0..self.rank()).map(|l| (0..self.rank()).map(|j| self.gram[l][j] * a[j]).sum()).collect()
    }

    fn clip(&self, mut x: VOAElement) -> VOAElement {
        let cap = self.cap;
        let before = x.terms.len();
        x.terms.retain(|s, _| s.degree() <= cap);
        if x.terms.len() != before {
            x.overflow = true;
        }
        x
    }

    /// Multiplication by Σ_j h_j a_j(−k).
    fn create(&self, h: &[i64], k: u16, p: &Poly) -> Poly {
        let mut out = Poly::new();
        for (m, c) in p {
            for (j, &hj) in h.iter().enumerate() {
                if hj != 0 {
                    let e = out.entry(m.mul_var(j as u16, k)).or_insert_with(R::zero);
                    *e += c * hj;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// h(k) for k > 0: k Σ_l ⟨h,e_l⟩ ∂/∂a_l(−k).
    fn annihilate(&self, gh: &[i64], k: u16, p: &Poly) -> Poly {
        let mut out = Poly::new();
        for (m, c) in p {
            for (l, &g) in gh.iter().enumerate() {
                if g == 0 {
                    continue;
                }
                if let Some((d, e)) = m.div_var(l as u16, k) {
                    let x = out.entry(d).or_insert_with(R::zero);
                    *x += c * (g * k as i64 * e as i64);
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    fn heis_state(&self, h: &[i64], n: i64, s: &State) -> VOAElement {
        let mut p = Poly::new();
        p.insert(s.mono.clone(), R::one());
        let q = match n {
            0 => {
                let mut r = Poly::new();
                let g = self.ip(h, &s.gamma);
                if g != 0 {
                    r.insert(s.mono.clone(), R::from_integer(g));
                }
                r
            }
            n if n < 0 => self.create(h, (-n) as u16, &p),
            n => self.annihilate(&self.gvec(h), n as u16, &p),
        };
        let mut out = VOAElement::zero();
        for (m, c) in q {
            out.add_term(State { gamma: s.gamma.clone(), mono: m }, r_to_q(&c));
        }
        out
    }

    pub fn heis_act(&self, h: &[i64], n: i64, x: &VOAElement) -> VOAElement {
        let mut out = VOAElement { terms: BTreeMap::new(), overflow: x.overflow };
        for (s, c) in &x.terms {
            if n < 0 && s.degree() as i64 - n > self.cap as i64 {
                out.overflow = true;
                continue;
            }
            out.add_scaled(&self.heis_state(h, n, s), c);
        }
        self.clip(out)
    }

    /// Coefficients b_i of exp(Σ_{k>0} α(−k) z^k / k), for i ≤ upto.
    fn bpolys(&self, alpha: &[i64], upto: usize) -> Arc<Vec<Poly>> {
        if let Some(b) = self.bcache.lock().unwrap().get(alpha) {
            if b.len() > upto {
                return b.clone();
            }
        }
        let mut b: Vec<Poly> = vec![Poly::from([(Monomial::one(), R::one())])];
        for i in 1..=upto {
            let mut acc = Poly::new();
            for k in 1..=i {
                let t = self.create(alpha, k as u16, &b[i - k]);
                poly_add_scaled(&mut acc, &t, &R::new(1, i as i64));
            }
            b.push(acc);
        }
        let b = Arc::new(b);
        self.bcache.lock().unwrap().insert(alpha.to_vec(), b.clone());
        b
    }

    fn vertex_state(&self, alpha: &[i64], n: i64, s: &State) -> Arc<VOAElement> {
        let key = (alpha.to_vec(), n, s.clone());
        if let Some(r) = self.mcache.lock().unwrap().get(&key) {
            return r.clone();
        }
        let r = Arc::new(self.vertex_image(alpha, n, s));
        self.mcache.lock().unwrap().insert(key, r.clone());
        r
    }

    /// x_n(α) on one basis state, without memoization. Terms above the cap
    /// are never computed: they all share one degree, so the result is
    /// either complete or empty and flagged.
    pub(crate) fn vertex_image(&self, alpha: &[i64], n: i64, s: &State) -> VOAElement {
        let norm = self.ip(alpha, alpha);
        let g = self.ip(alpha, &s.gamma);
        // z-power: i + ⟨α,γ⟩ − j = −n − ⟨α,α⟩/2
        let shift = -n - norm / 2 - g;
        let deg = s.degree() as i64;
        let mut out = VOAElement::zero();
        // every term has Fock degree deg + shift
        if deg + shift > self.cap as i64 {
            out.overflow = true;
            return out;
        }
        let jmin = 0.max(-shift);
        if jmin <= deg {
            let ga = self.gvec(alpha);
            let mut a: Vec<Poly> = vec![Poly::from([(s.mono.clone(), R::one())])];
            for j in 1..=deg as usize {
                let mut acc = Poly::new();
                for k in 1..=j {
                    if a[j - k].is_empty() {
                        continue;
                    }
                    let t = self.annihilate(&ga, k as u16, &a[j - k]);
                    poly_add_scaled(&mut acc, &t, &R::new(-1, j as i64));
                }
                a.push(acc);
            }
            let b = self.bpolys(alpha, (deg + shift).max(0) as usize);
            let gamma: Vec<i64> = s.gamma.iter().zip(alpha).map(|(x, y)| x + y).collect();
            let eps = R::from_integer(self.cocycle.eps(alpha, &s.gamma));
            let mut total = Poly::new();
            for j in jmin..=deg {
                let i = (j + shift) as usize;
                if a[j as usize].is_empty() {
                    continue;
                }
                poly_add_scaled(&mut total, &poly_mul(&b[i], &a[j as usize]), &eps);
            }
            for (m, c) in total {
                out.terms.insert(State { gamma: gamma.clone(), mono: m }, r_to_q(&c));
            }
        }
        out
    }

    /// x_n(α), the coefficient of z^{−n−⟨α,α⟩/2} in X(e^α, z).
    pub fn vertex_mode(&self, alpha: &[i64], n: i64, x: &VOAElement) -> VOAElement {
        let mut out = VOAElement { terms: BTreeMap::new(), overflow: x.overflow };
        for (s, c) in &x.terms {
            out.add_scaled(&self.vertex_state(alpha, n, s), c);
        }
        self.clip(out)
    }

    pub fn l0_eigen(&self, s: &State) -> Q {
        qi(s.degree() as i64) + Q::new(self.ip(&s.gamma, &s.gamma).into(), 2.into())
    }

    pub fn l0(&self, x: &VOAElement) -> VOAElement {
        let mut out = VOAElement { terms: BTreeMap::new(), overflow: x.overflow };
        for (s, c) in &x.terms {
            out.add_term(s.clone(), c * self.l0_eigen(s));
        }
        out
    }

    /// The degree derivation d = −L(0).
    pub fn d(&self, x: &VOAElement) -> VOAElement {
        self.l0(x).scale(&qi(-1))
    }

    fn basis_vec(&self, i: usize) -> Result<Vec<i64>> {
        if i >= self.rank() {
            return Err(Error::Invalid(format!("generator index {i} out of range")));
        }
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        Ok(v)
    }

    pub fn chevalley_act(&self, gen: &Chevalley, n: i64, x: &VOAElement) -> Result<VOAElement> {
        Ok(match gen {
            Chevalley::E(i) | Chevalley::F(i) => {
                let mut a = self.basis_vec(*i)?;
                if self.ip(&a, &a) != 2 {
                    return Err(Error::Invalid(format!("generator {i} is not a root of norm 2")));
                }
                if matches!(gen, Chevalley::F(_)) {
                    a.iter_mut().for_each(|t| *t = -*t);
                }
                self.vertex_mode(&a, n, x)
            }
            Chevalley::H(i) => self.heis_act(&self.basis_vec(*i)?, n, x),
            Chevalley::C => x.clone(),
            Chevalley::D => self.d(x),
        })
    }

    pub fn apply(&self, op: &ModeOperator, x: &VOAElement) -> Result<VOAElement> {
        Ok(match op {
            ModeOperator::Heisenberg { h, n } => self.heis_act(h, *n, x),
            ModeOperator::Vertex { alpha, n } => self.vertex_mode(alpha, *n, x),
            ModeOperator::L0 => self.l0(x),
            ModeOperator::Chevalley { gen, n } => self.chevalley_act(gen, *n, x)?,
        })
    }
}

/// Split by lattice marker and d-eigenvalue −deg − ⟨γ,γ⟩/2.
pub fn weight_decomposition(voa: &LatticeVOA, x: &VOAElement) -> BTreeMap<(Vec<i64>, Q), VOAElement> {
    let mut out: BTreeMap<(Vec<i64>, Q), VOAElement> = BTreeMap::new();
    for (s, c) in &x.terms {
        let key = (s.gamma.clone(), -voa.l0_eigen(s));
        out.entry(key).or_default().add_term(s.clone(), c.clone());
    }
    out
}
