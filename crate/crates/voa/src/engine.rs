//! Interned evaluation for the relation suite. Basis states become u32
//! ids, operator images are cached sparse columns, and a vector is stored
//! as integer numerators over one shared denominator. Arithmetic overflow
//! panics rather than wrapping.

use crate::algebra::LatticeVOA;
use crate::fock::{State, VOAElement};
use crate::relations::Backend;
use num_integer::Integer;
use num_traits::ToPrimitive;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};
use wallcross_core::Q;

/// Σ (num/den)·e_id, kept reduced: den > 0 and gcd(den, nums) = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SVec {
    /// Sorted by id, no zero numerators.
    pub terms: Vec<(u32, i128)>,
    pub den: i128,
    pub overflow: bool,
}

impl SVec {
    fn zero() -> Self {
        SVec { terms: Vec::new(), den: 1, overflow: false }
    }

    /// Same vector, ignoring the overflow flag.
    pub fn same_value(&self, o: &SVec) -> bool {
        self.terms == o.terms && self.den == o.den
    }
}

/// Sort, merge, drop zeros and reduce against the denominator.
fn build(mut v: Vec<(u32, i128)>, den: i128, overflow: bool) -> SVec {
    v.sort_unstable_by_key(|t| t.0);
    let mut out: Vec<(u32, i128)> = Vec::with_capacity(v.len());
    for (i, c) in v {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 += c,
            _ => out.push((i, c)),
        }
    }
    out.retain(|t| t.1 != 0);
    let mut g = den;
    for t in &out {
        if g == 1 {
            break;
        }
        g = g.gcd(&t.1);
    }
    if out.is_empty() {
        return SVec { terms: out, den: 1, overflow };
    }
    let g = if den < 0 { -g.abs() } else { g.abs() };
    if g != 1 {
        out.iter_mut().for_each(|t| t.1 /= g);
    }
    SVec { terms: out, den: den / g, overflow }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum OpKey {
    X(Vec<i64>, i64),
    H(Vec<i64>, i64),
}

#[derive(Default)]
struct Inner {
    ids: HashMap<State, u32>,
    states: Vec<State>,
    /// L(0) eigenvalue numerator over 2.
    l0_twice: Vec<i128>,
    ops: HashMap<OpKey, usize>,
    /// images[op][state]
    images: Vec<Vec<Option<Arc<SVec>>>>,
}

pub struct Engine<'a> {
    pub voa: &'a LatticeVOA,
    inner: Mutex<Inner>,
}

fn from_element(g: &mut Inner, voa: &LatticeVOA, e: &VOAElement) -> SVec {
    let mut den: i128 = 1;
    for c in e.terms.values() {
        den = den.lcm(&c.denom().to_i128().expect("denominator exceeds i128"));
    }
    let terms = e
        .terms
        .iter()
        .map(|(s, c)| {
            let n = c.numer().to_i128().expect("numerator exceeds i128");
            let d = c.denom().to_i128().unwrap();
            (Engine::intern_locked(voa, g, s), n * (den / d))
        })
        .collect();
    build(terms, den, e.overflow)
}

impl<'a> Engine<'a> {
    pub fn new(voa: &'a LatticeVOA) -> Self {
        Engine { voa, inner: Mutex::new(Inner::default()) }
    }

    fn intern_locked(voa: &LatticeVOA, g: &mut Inner, s: &State) -> u32 {
        if let Some(&i) = g.ids.get(s) {
            return i;
        }
        let i = g.states.len() as u32;
        g.ids.insert(s.clone(), i);
        g.states.push(s.clone());
        g.l0_twice.push(2 * s.degree() as i128 + voa.ip(&s.gamma, &s.gamma) as i128);
        i
    }

    pub fn basis(&self, s: &State) -> SVec {
        let mut g = self.inner.lock().unwrap();
        let id = Self::intern_locked(self.voa, &mut g, s);
        SVec { terms: vec![(id, 1)], den: 1, overflow: false }
    }

    pub fn to_element(&self, v: &SVec) -> VOAElement {
        let g = self.inner.lock().unwrap();
        let mut out = VOAElement { overflow: v.overflow, ..Default::default() };
        for (i, c) in &v.terms {
            out.add_term(g.states[*i as usize].clone(), Q::new((*c).into(), v.den.into()));
        }
        out
    }

    fn compute(&self, key: &OpKey, state: &State) -> VOAElement {
        match key {
            OpKey::X(a, n) => self.voa.vertex_image(a, *n, state),
            OpKey::H(h, n) => self.voa.heis_act(h, *n, &VOAElement::basis(state.clone())),
        }
    }

    fn apply(&self, key: OpKey, v: &SVec) -> SVec {
        let mut imgs: Vec<Option<Arc<SVec>>> = Vec::with_capacity(v.terms.len());
        let mut missing: Vec<(usize, State)> = Vec::new();
        let op = {
            let mut g = self.inner.lock().unwrap();
            let next = g.ops.len();
            let op = *g.ops.entry(key.clone()).or_insert(next);
            if op == g.images.len() {
                g.images.push(Vec::new());
            }
            for (k, (i, _)) in v.terms.iter().enumerate() {
                let hit = g.images[op].get(*i as usize).and_then(|x| x.clone());
                if hit.is_none() {
                    missing.push((k, g.states[*i as usize].clone()));
                }
                imgs.push(hit);
            }
            op
        };
        if !missing.is_empty() {
            let computed: Vec<(usize, VOAElement)> = missing.iter().map(|(k, st)| (*k, self.compute(&key, st))).collect();
            let mut g = self.inner.lock().unwrap();
            for (k, e) in computed {
                let r = Arc::new(from_element(&mut g, self.voa, &e));
                let id = v.terms[k].0 as usize;
                let row = &mut g.images[op];
                if row.len() <= id {
                    row.resize(id + 1, None);
                }
                row[id] = Some(r.clone());
                imgs[k] = Some(r);
            }
        }
        let imgs: Vec<Arc<SVec>> = imgs.into_iter().map(|x| x.unwrap()).collect();
        let mut l: i128 = 1;
        for img in &imgs {
            l = l.lcm(&img.den);
        }
        let mut out = Vec::new();
        let mut overflow = v.overflow;
        for ((_, c), img) in v.terms.iter().zip(&imgs) {
            overflow |= img.overflow;
            let f = c * (l / img.den);
            out.extend(img.terms.iter().map(|(j, d)| (*j, d * f)));
        }
        build(out, v.den * l, overflow)
    }
}

impl Backend for Engine<'_> {
    type V = SVec;

    fn x(&self, a: &[i64], n: i64, v: &SVec) -> SVec {
        self.apply(OpKey::X(a.to_vec(), n), v)
    }

    fn h(&self, h: &[i64], n: i64, v: &SVec) -> SVec {
        self.apply(OpKey::H(h.to_vec(), n), v)
    }

    fn l0(&self, v: &SVec) -> SVec {
        let g = self.inner.lock().unwrap();
        let terms = v.terms.iter().map(|(i, c)| (*i, c * g.l0_twice[*i as usize])).collect();
        build(terms, v.den * 2, v.overflow)
    }

    fn lin(&self, terms: &[(i64, &SVec)]) -> SVec {
        let mut l: i128 = 1;
        for (_, v) in terms {
            l = l.lcm(&v.den);
        }
        let mut out = Vec::new();
        let mut overflow = false;
        for (c, v) in terms {
            overflow |= v.overflow;
            if *c != 0 {
                let f = *c as i128 * (l / v.den);
                out.extend(v.terms.iter().map(|(i, d)| (*i, d * f)));
            }
        }
        if terms.is_empty() {
            return SVec::zero();
        }
        build(out, l, overflow)
    }

    fn ip(&self, a: &[i64], b: &[i64]) -> i64 {
        self.voa.ip(a, b)
    }

    fn eps(&self, a: &[i64], b: &[i64]) -> i64 {
        self.voa.cocycle.eps(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::{component_basis, evaluate, instances, SuiteConfig};

    #[test]
    fn engine_agrees_with_exact_backend() {
        let v = LatticeVOA::from_name("A2", 4).unwrap();
        let e = Engine::new(&v);
        let insts = instances(&v, &SuiteConfig::new(2));
        for rel in insts.iter().step_by(37) {
            for s in component_basis(&v, &[1, 0], 2) {
                let exact = evaluate(&v, rel, &VOAElement::basis(s.clone()));
                let fast = evaluate(&e, rel, &e.basis(&s));
                assert_eq!(exact.len(), fast.len());
                for ((l, r), (l2, r2)) in exact.iter().zip(&fast) {
                    assert_eq!(e.to_element(l2).terms, l.terms);
                    assert_eq!(e.to_element(r2).terms, r.terms);
                }
            }
        }
    }

    #[test]
    fn reduced_form_is_canonical() {
        let a = build(vec![(3, 4), (1, 2), (3, -4)], 6, false);
        assert_eq!(a.terms, vec![(1, 1)]);
        assert_eq!(a.den, 3);
        let b = build(vec![(1, -2)], -6, false);
        assert_eq!((b.terms.clone(), b.den), (vec![(1, 1)], 3));
    }
}
