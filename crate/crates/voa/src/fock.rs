//! Fock space ℚ[p_{j,k}] ⊗ ℚ[Λ]: monomials in the creation modes
//! a_j(−k) = p_{j,k}, tensored with a lattice marker e^γ.

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use wallcross_core::Q;

/// Sorted list of (mode k ≥ 1, color j, exponent e ≥ 1).
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial(pub Vec<(u16, u16, u16)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(k, _, e)| k as u32 * e as u32).sum()
    }

    pub fn exponent(&self, color: u16, k: u16) -> u16 {
        self.0.iter().find(|&&(kk, c, _)| kk == k && c == color).map_or(0, |t| t.2)
    }

    pub fn mul_var(&self, color: u16, k: u16) -> Monomial {
        let mut v = self.0.clone();
        match v.binary_search_by(|&(kk, c, _)| (kk, c).cmp(&(k, color))) {
            Ok(i) => v[i].2 += 1,
            Err(i) => v.insert(i, (k, color, 1)),
        }
        Monomial(v)
    }

    /// ∂/∂p_{color,k}: the lowered monomial and the old exponent.
    pub fn div_var(&self, color: u16, k: u16) -> Option<(Monomial, u16)> {
        let i = self.0.binary_search_by(|&(kk, c, _)| (kk, c).cmp(&(k, color))).ok()?;
        let mut v = self.0.clone();
        let e = v[i].2;
        if e == 1 {
            v.remove(i);
        } else {
            v[i].2 -= 1;
        }
        Some((Monomial(v), e))
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut out: Vec<(u16, u16, u16)> = Vec::with_capacity(self.0.len() + o.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < o.0.len() {
            let a = self.0.get(i);
            let b = o.0.get(j);
            match (a, b) {
                (Some(x), Some(y)) if (x.0, x.1) == (y.0, y.1) => {
                    out.push((x.0, x.1, x.2 + y.2));
                    i += 1;
                    j += 1;
                }
                (Some(x), Some(y)) if (x.0, x.1) < (y.0, y.1) => {
                    out.push(*x);
                    i += 1;
                }
                (Some(_), Some(y)) => {
                    out.push(*y);
                    j += 1;
                }
                (Some(x), None) => {
                    out.push(*x);
                    i += 1;
                }
                (None, Some(y)) => {
                    out.push(*y);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Monomial(out)
    }

    /// Human-readable form, e.g. "a0(-1)^2 a1(-2)".
    pub fn render(&self) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|&(k, c, e)| if e == 1 { format!("a{c}(-{k})") } else { format!("a{c}(-{k})^{e}") })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Machine rationals for the internal polynomial arithmetic; overflow
/// panics (overflow checks are on in every profile).
pub type R = num_rational::Ratio<i64>;

pub fn r_to_q(c: &R) -> Q {
    Q::new((*c.numer()).into(), (*c.denom()).into())
}

pub type Poly = BTreeMap<Monomial, R>;

pub fn poly_add_scaled(acc: &mut Poly, p: &Poly, c: &R) {
    for (m, v) in p {
        let e = acc.entry(m.clone()).or_insert_with(R::zero);
        *e += v * c;
        if e.is_zero() {
            acc.remove(m);
        }
    }
}

pub fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m = ma.mul(mb);
            let e = out.entry(m.clone()).or_insert_with(R::zero);
            *e += ca * cb;
            if e.is_zero() {
                out.remove(&m);
            }
        }
    }
    out
}

/// All monomials of exact degree d in `colors` colors, in the canonical
/// order: colored partitions listed by Monomial's derived ordering.
pub fn monomials_of_degree(colors: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let vars: Vec<(u16, u16)> = (1..=d as u16).flat_map(|k| (0..colors as u16).map(move |c| (k, c))).collect();
    fn rec(vars: &[(u16, u16)], i: usize, left: u32, cur: &mut Vec<(u16, u16, u16)>, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(Monomial(cur.clone()));
            return;
        }
        if i == vars.len() {
            return;
        }
        let (k, c) = vars[i];
        let mut e = 0u16;
        while (e as u32) * (k as u32) <= left {
            if e > 0 {
                cur.push((k, c, e));
            }
            rec(vars, i + 1, left - e as u32 * k as u32, cur, out);
            if e > 0 {
                cur.pop();
            }
            e += 1;
        }
    }
    rec(&vars, 0, d, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// A basis vector v ⊗ e^γ.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct State {
    pub gamma: Vec<i64>,
    pub mono: Monomial,
}

impl State {
    pub fn vacuum(gamma: Vec<i64>) -> Self {
        State { gamma, mono: Monomial::one() }
    }

    pub fn degree(&self) -> u32 {
        self.mono.degree()
    }
}

/// Finite rational combination of basis vectors. `overflow` records that
/// some term was dropped because its degree exceeded the truncation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VOAElement {
    pub terms: BTreeMap<State, Q>,
    pub overflow: bool,
}

impl VOAElement {
    pub fn zero() -> Self {
        VOAElement::default()
    }

    pub fn basis(s: State) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(s, Q::from_integer(1.into()));
        VOAElement { terms, overflow: false }
    }

    pub fn vacuum(gamma: Vec<i64>) -> Self {
        VOAElement::basis(State::vacuum(gamma))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, s: State, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(s.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&s);
        }
    }

    pub fn add_scaled(&mut self, o: &VOAElement, c: &Q) {
        for (s, v) in &o.terms {
            self.add_term(s.clone(), v * c);
        }
        self.overflow |= o.overflow;
    }

    pub fn add(&self, o: &VOAElement) -> VOAElement {
        let mut r = self.clone();
        r.add_scaled(o, &Q::from_integer(1.into()));
        r
    }

    pub fn sub(&self, o: &VOAElement) -> VOAElement {
        let mut r = self.clone();
        r.add_scaled(o, &Q::from_integer((-1).into()));
        r
    }

    pub fn scale(&self, c: &Q) -> VOAElement {
        let mut r = VOAElement { terms: BTreeMap::new(), overflow: self.overflow };
        r.add_scaled(self, c);
        r.overflow = self.overflow;
        r
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|s| s.degree()).max()
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(s, c)| format!("({}) {} e^{:?}", wallcross_core::rational::fmt_q(c), s.mono.render(), s.gamma))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        // one color: p(d); two colors: 1, 2, 5, 10, 20, 36
        let one: Vec<usize> = (0..7).map(|d| monomials_of_degree(1, d).len()).collect();
        assert_eq!(one, vec![1, 1, 2, 3, 5, 7, 11]);
        let two: Vec<usize> = (0..6).map(|d| monomials_of_degree(2, d).len()).collect();
        assert_eq!(two, vec![1, 2, 5, 10, 20, 36]);
    }

    #[test]
    fn monomial_arithmetic() {
        let m = Monomial::one().mul_var(0, 1).mul_var(0, 1).mul_var(1, 2);
        assert_eq!(m.degree(), 4);
        assert_eq!(m.exponent(0, 1), 2);
        let (d, e) = m.div_var(0, 1).unwrap();
        assert_eq!(e, 2);
        assert_eq!(d.exponent(0, 1), 1);
        assert!(m.div_var(1, 1).is_none());
        assert_eq!(d.mul(&Monomial::one().mul_var(0, 1)), m);
    }
}
