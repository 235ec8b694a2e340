use crate::algebra::{LatticeVOA, ModeOperator};
use crate::fock::{State, VOAElement};
use crate::relations::component_basis;
use std::collections::BTreeSet;
use wallcross_core::rational::fmt_q;
use wallcross_core::{Result, Q};

/// Dense matrix of an operator restricted to one graded component. Rows
/// index `target`, columns index `source`; both in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentMatrix {
    pub source: Vec<State>,
    pub target: Vec<State>,
    pub entries: Vec<Vec<Q>>,
    pub overflow: bool,
}

pub fn operator_matrix(voa: &LatticeVOA, op: &ModeOperator, gamma: &[i64], d: u32) -> Result<ComponentMatrix> {
    let source = component_basis(voa, gamma, d);
    let mut images = Vec::with_capacity(source.len());
    let mut comps: BTreeSet<(Vec<i64>, u32)> = BTreeSet::new();
    let mut overflow = false;
    for s in &source {
        let y = voa.apply(op, &VOAElement::basis(s.clone()))?;
        overflow |= y.overflow;
        comps.extend(y.terms.keys().map(|t| (t.gamma.clone(), t.degree())));
        images.push(y);
    }
    let target: Vec<State> = comps.iter().flat_map(|(g, e)| component_basis(voa, g, *e)).collect();
    let index: std::collections::HashMap<&State, usize> = target.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut entries = vec![vec![Q::from_integer(0.into()); source.len()]; target.len()];
    for (j, y) in images.iter().enumerate() {
        for (t, c) in &y.terms {
            entries[index[t]][j] = c.clone();
        }
    }
    Ok(ComponentMatrix { source, target, entries, overflow })
}

fn label(s: &State) -> String {
    let g: Vec<String> = s.gamma.iter().map(|x| x.to_string()).collect();
    format!("e^({})|{}", g.join(";"), s.mono.render())
}

impl ComponentMatrix {
    /// Exact CSV: header of source labels, then one row per target vector.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("target");
        for s in &self.source {
            out.push(',');
            out.push_str(&label(s));
        }
        out.push('\n');
        for (t, row) in self.target.iter().zip(&self.entries) {
            out.push_str(&label(t));
            for c in row {
                out.push(',');
                out.push_str(&fmt_q(c));
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_creation_matrix() {
        let v = LatticeVOA::from_name("A1", 8).unwrap();
        let m = operator_matrix(&v, &ModeOperator::Heisenberg { h: vec![1], n: -1 }, &[0], 1).unwrap();
        assert_eq!(m.source.len(), 1);
        assert_eq!(m.target.len(), 2);
        let csv = m.to_csv();
        assert_eq!(csv, "target,e^(0)|a0(-1)\ne^(0)|a0(-1)^2,1\ne^(0)|a0(-2),0\n");
    }
}
