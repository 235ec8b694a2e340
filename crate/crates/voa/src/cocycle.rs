use serde::{Deserialize, Serialize};
use wallcross_core::{Error, Result};

/// Bimultiplicative sign on an even lattice, fixed by its values on the
/// ordered basis: ε(eᵢ,eⱼ) = 1 for i ≤ j and (−1)^{⟨eᵢ,eⱼ⟩} for i > j.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cocycle {
    /// Parity of the exponent on (eᵢ, eⱼ).
    pub table: Vec<Vec<u8>>,
}

pub fn build_cocycle(gram: &[Vec<i64>]) -> Result<Cocycle> {
    let r = gram.len();
    for (i, row) in gram.iter().enumerate() {
        if row.len() != r {
            return Err(Error::Dimension { expected: r, got: row.len() });
        }
        if row[i].rem_euclid(2) != 0 {
            return Err(Error::Invalid("lattice is not even".into()));
        }
    }
    let table = (0..r)
        .map(|i| (0..r).map(|j| if i > j { gram[i][j].rem_euclid(2) as u8 } else { 0 }).collect())
        .collect();
    Ok(Cocycle { table })
}

impl Cocycle {
    pub fn rank(&self) -> usize {
        self.table.len()
    }

    pub fn eps(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut par = 0i64;
        for (i, row) in self.table.iter().enumerate() {
            if a[i] == 0 {
                continue;
            }
            for (j, &t) in row.iter().enumerate() {
                if t != 0 {
                    par += a[i] * b[j];
                }
            }
        }
        if par.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(g: &[Vec<i64>], a: &[i64], b: &[i64]) -> i64 {
        (0..a.len()).map(|i| (0..b.len()).map(|j| a[i] * g[i][j] * b[j]).sum::<i64>()).sum()
    }

    #[test]
    fn commutator_identity_a2_and_u() {
        for g in [vec![vec![2, -1], vec![-1, 2]], vec![vec![0, -1], vec![-1, 0]], vec![vec![0, -1], vec![-1, 2]]] {
            let c = build_cocycle(&g).unwrap();
            for a0 in -2..=2 {
                for a1 in -2..=2 {
                    for b0 in -2..=2 {
                        for b1 in -2..=2 {
                            let (a, b) = ([a0, a1], [b0, b1]);
                            let lhs = c.eps(&a, &b) * c.eps(&b, &a);
                            let rhs = if ip(&g, &a, &b).rem_euclid(2) == 0 { 1 } else { -1 };
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
            assert_eq!(c.eps(&[0, 0], &[1, 1]), 1);
            assert_eq!(c.eps(&[1, 1], &[0, 0]), 1);
        }
    }

    #[test]
    fn a1_self_sign_is_trivial() {
        let c = build_cocycle(&[vec![2]]).unwrap();
        assert_eq!(c.eps(&[1], &[1]), 1);
        assert_eq!(c.eps(&[1], &[-1]), 1);
    }

    #[test]
    fn odd_lattice_rejected() {
        assert!(build_cocycle(&[vec![1]]).is_err());
    }
}
