//! Weyl group enumeration, lengths, inversion sets and the dot action.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootsystem::{RootSystem, Weight};

pub const DEFAULT_WEYL_CAP: usize = 2000;

type Mat = Vec<Vec<i64>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeylElement {
    pub reduced_word: Vec<usize>,
    /// Action on fundamental-weight coordinates (column vectors).
    pub action: Mat,
    pub length: usize,
}

impl WeylElement {
    pub fn apply(&self, w: &Weight) -> Weight {
        Weight(self.action.iter().map(|row| row.iter().zip(&w.0).map(|(a, b)| a * b).sum()).collect())
    }
}

#[derive(Debug, Clone)]
pub struct WeylGroup {
    pub elements: Vec<WeylElement>,
    pub by_length: BTreeMap<usize, Vec<usize>>,
}

fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    (0..n).map(|i| (0..m).map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum()).collect()).collect()
}

/// Matrix of the simple reflection `s_i` on fundamental-weight coordinates:
/// `lambda -> lambda - lambda_i * alpha_i`.
pub fn simple_reflection(rs: &RootSystem, i: usize) -> Mat {
    let r = rs.rank();
    let mut m = identity(r);
    for (a, row) in m.iter_mut().enumerate() {
        row[i] -= rs.simple_roots[i].0[a];
    }
    m
}

/// Breadth-first closure under right multiplication by simple reflections.
pub fn enumerate_weyl_group(rs: &RootSystem) -> Result<WeylGroup> {
    enumerate_weyl_group_capped(rs, DEFAULT_WEYL_CAP)
}

pub fn enumerate_weyl_group_capped(rs: &RootSystem, cap: usize) -> Result<WeylGroup> {
    let r = rs.rank();
    let gens: Vec<Mat> = (0..r).map(|i| simple_reflection(rs, i)).collect();
    let id = WeylElement { reduced_word: Vec::new(), action: identity(r), length: 0 };
    let mut seen: HashMap<Mat, usize> = HashMap::new();
    seen.insert(id.action.clone(), 0);
    let mut elements = vec![id];
    let mut queue = VecDeque::from([0usize]);
    while let Some(idx) = queue.pop_front() {
        for (i, g) in gens.iter().enumerate() {
            let action = mat_mul(&elements[idx].action, g);
            if seen.contains_key(&action) {
                continue;
            }
            if elements.len() >= cap {
                return Err(Error::GroupTooLarge { cap });
            }
            let mut word = elements[idx].reduced_word.clone();
            word.push(i);
            seen.insert(action.clone(), elements.len());
            queue.push_back(elements.len());
            elements.push(WeylElement { length: word.len(), reduced_word: word, action });
        }
    }
    let mut by_length: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, e) in elements.iter().enumerate() {
        by_length.entry(e.length).or_default().push(i);
    }
    Ok(WeylGroup { elements, by_length })
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity_index(&self) -> usize {
        0
    }

    pub fn longest_index(&self) -> usize {
        let (_, v) = self.by_length.iter().next_back().unwrap();
        v[0]
    }

    pub fn max_length(&self) -> usize {
        *self.by_length.keys().next_back().unwrap_or(&0)
    }
}

/// Positive roots `alpha` with `alpha = w(beta)` for some negative root `beta`.
pub fn inversion_set(rs: &RootSystem, w: &WeylElement) -> Vec<usize> {
    let lookup: HashMap<Weight, usize> = (0..rs.num_positive()).map(|i| (rs.root_weight(i), i)).collect();
    let mut out: Vec<usize> =
        (0..rs.num_positive()).filter_map(|i| lookup.get(&w.apply(&rs.root_weight(i).neg())).copied()).collect();
    out.sort_unstable();
    out
}

/// `w(lambda + rho) - rho`.
pub fn dot_action(rs: &RootSystem, w: &WeylElement, lambda: &Weight) -> Weight {
    w.apply(&lambda.add(&rs.rho)).sub(&rs.rho)
}

/// Coefficients of `sum_w t^{l(w)}`.
pub fn poincare_polynomial(w: &WeylGroup) -> Vec<i128> {
    let mut coeffs = vec![0i128; w.max_length() + 1];
    for e in &w.elements {
        coeffs[e.length] += 1;
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsystem::TypeLabel;
    use std::collections::HashSet;

    fn group(s: &str) -> (RootSystem, WeylGroup) {
        let rs = RootSystem::from_type(s.parse().unwrap()).unwrap();
        let w = enumerate_weyl_group(&rs).unwrap();
        (rs, w)
    }

    fn sorted_lengths(w: &WeylGroup) -> Vec<usize> {
        let mut l: Vec<_> = w.elements.iter().map(|e| e.length).collect();
        l.sort_unstable();
        l
    }

    #[test]
    fn small_groups() {
        let (_, a2) = group("A2");
        assert_eq!(a2.order(), 6);
        assert_eq!(sorted_lengths(&a2), vec![0, 1, 1, 2, 2, 3]);
        let (_, a1) = group("A1");
        assert_eq!(sorted_lengths(&a1), vec![0, 1]);
        let (_, b2) = group("B2");
        assert_eq!(sorted_lengths(&b2), vec![0, 1, 1, 2, 2, 3, 3, 4]);
    }

    #[test]
    fn classical_orders() {
        for (s, n) in [("A3", 24), ("A4", 120), ("B3", 48), ("C3", 48), ("D4", 192), ("G2", 12), ("B4", 384)] {
            assert_eq!(group(s).1.order(), n, "{s}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        let rs = RootSystem::build(TypeLabel::A, 3).unwrap();
        assert_eq!(enumerate_weyl_group_capped(&rs, 10).unwrap_err(), Error::GroupTooLarge { cap: 10 });
    }

    #[test]
    fn a2_inversion_sets_and_dot_action() {
        let (rs, w) = group("A2");
        let e = &w.elements[w.identity_index()];
        assert!(inversion_set(&rs, e).is_empty());
        assert_eq!(dot_action(&rs, e, &Weight::zero(2)), Weight::zero(2));
        let s1 = w.elements.iter().find(|e| e.reduced_word == vec![0]).unwrap();
        assert_eq!(inversion_set(&rs, s1), vec![0]);
        assert_eq!(dot_action(&rs, s1, &Weight::zero(2)), rs.simple_roots[0].neg());
        let w0 = &w.elements[w.longest_index()];
        assert_eq!(inversion_set(&rs, w0), vec![0, 1, 2]);
        assert_eq!(dot_action(&rs, w0, &Weight::zero(2)), rs.rho.scale(-2));
    }

    #[test]
    fn poincare_examples() {
        assert_eq!(poincare_polynomial(&group("A1").1), vec![1, 1]);
        assert_eq!(poincare_polynomial(&group("A2").1), vec![1, 2, 2, 1]);
        assert_eq!(poincare_polynomial(&group("B2").1), vec![1, 2, 2, 2, 1]);
    }

    #[test]
    fn actions_permute_roots() {
        for s in ["A3", "B3", "C3", "G2", "D4"] {
            let (rs, w) = group(s);
            let mut roots: HashSet<Weight> = (0..rs.num_positive()).map(|i| rs.root_weight(i)).collect();
            let negs: Vec<Weight> = roots.iter().map(|r| r.neg()).collect();
            roots.extend(negs);
            for e in &w.elements {
                let image: HashSet<Weight> = roots.iter().map(|r| e.apply(r)).collect();
                assert_eq!(image, roots);
            }
            assert_eq!(w.max_length(), rs.num_positive());
            assert_eq!(w.by_length[&0].len(), 1);
            assert_eq!(w.by_length[&rs.num_positive()].len(), 1);
        }
    }
}
