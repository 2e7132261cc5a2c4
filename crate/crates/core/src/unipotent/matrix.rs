//! Upper unitriangular matrices over `Z/p^k` as an independent model of the
//! type-A groups.

use super::{Element, FiniteUnipotentGroup};
use crate::error::{Error, Result};
use crate::rootsystem::TypeLabel;

/// `theta_alpha(t) -> I + t eps_alpha E_{ij}` for `alpha = e_i - e_j`, with
/// signs chosen so that `x_alpha -> eps_alpha E_{ij}` is a Lie homomorphism.
#[derive(Debug, Clone)]
pub struct UnitriangularOracle {
    pub size: usize,
    pub modulus: u64,
    pub positions: Vec<(usize, usize)>,
    pub signs: Vec<i64>,
}

pub type Matrix = Vec<Vec<u64>>;

impl UnitriangularOracle {
    pub fn new(g: &FiniteUnipotentGroup) -> Result<Self> {
        let rs = &g.root_system;
        if rs.cartan_type.label != TypeLabel::A || g.slots != 1 {
            return Err(Error::InvalidInput("the matrix model covers single-slot type A".into()));
        }
        let n = rs.rank() + 1;
        let positions: Vec<(usize, usize)> = rs
            .positive_roots
            .iter()
            .map(|r| {
                let first = r.coords.iter().position(|&c| c != 0).unwrap();
                let last = r.coords.iter().rposition(|&c| c != 0).unwrap();
                (first, last + 1)
            })
            .collect();
        let m = positions.len();
        let matrix_bracket = |a: usize, b: usize| -> i64 {
            let (i, j) = positions[a];
            let (k, l) = positions[b];
            i64::from(j == k) - i64::from(l == i)
        };
        let lie = |a: usize, b: usize| -> i64 { g.algebra.bracket(a, b).first().map_or(0, |&(_, c)| c) };
        let mut signs = vec![0i64; m];
        for gamma in 0..m {
            if rs.height(gamma) == 1 {
                signs[gamma] = 1;
                continue;
            }
            let (a, b) = (0..m)
                .flat_map(|a| (0..m).map(move |b| (a, b)))
                .find(|&(a, b)| rs.sum_index(a, b) == Some(gamma) && signs[a] != 0 && signs[b] != 0)
                .expect("every non-simple root splits into lower ones");
            signs[gamma] = signs[a] * signs[b] * matrix_bracket(a, b) * lie(a, b);
        }
        for a in 0..m {
            for b in 0..m {
                let expected = match rs.sum_index(a, b) {
                    Some(c) => lie(a, b) * signs[c],
                    None => 0,
                };
                if signs[a] * signs[b] * matrix_bracket(a, b) != expected {
                    return Err(Error::InvalidInput(format!("no sign normalisation matches roots {a}, {b}")));
                }
            }
        }
        Ok(UnitriangularOracle { size: n, modulus: g.modulus, positions, signs })
    }

    pub fn identity(&self) -> Matrix {
        (0..self.size).map(|i| (0..self.size).map(|j| u64::from(i == j)).collect()).collect()
    }

    pub fn mul(&self, a: &Matrix, b: &Matrix) -> Matrix {
        let q = self.modulus;
        (0..self.size)
            .map(|i| (0..self.size).map(|j| (0..self.size).map(|t| a[i][t] * b[t][j] % q).sum::<u64>() % q).collect())
            .collect()
    }

    /// Image of a normal-form element: the ordered product of root matrices.
    pub fn matrix(&self, e: &Element) -> Matrix {
        let q = self.modulus;
        let mut acc = self.identity();
        for (r, &c) in e.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mut f = self.identity();
            let (i, j) = self.positions[r];
            f[i][j] = (c as i64 * self.signs[r]).rem_euclid(q as i64) as u64;
            acc = self.mul(&acc, &f);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsystem::RootSystem;
    use crate::unipotent::make_group;
    use std::collections::HashSet;

    #[test]
    fn a2_matches_exhaustively() {
        let rs = RootSystem::from_type("A2".parse().unwrap()).unwrap();
        let g = make_group(&rs, 5, 1).unwrap();
        let o = UnitriangularOracle::new(&g).unwrap();
        let all: Vec<Element> = (0..125).map(|i| g.decode(i)).collect();
        let mats: Vec<Matrix> = all.iter().map(|e| o.matrix(e)).collect();
        assert_eq!(mats.iter().collect::<HashSet<_>>().len(), 125);
        for (a, ma) in all.iter().zip(&mats) {
            for (b, mb) in all.iter().zip(&mats) {
                assert_eq!(o.matrix(&g.mul(a, b)), o.mul(ma, mb));
            }
        }
    }

    #[test]
    fn rejects_other_types() {
        let rs = RootSystem::from_type("B2".parse().unwrap()).unwrap();
        let g = make_group(&rs, 5, 1).unwrap();
        assert!(UnitriangularOracle::new(&g).is_err());
    }
}
