//! Nilpotent radicals `u = Lie U` from Chevalley structure constants, and
//! their Weil restrictions as `d` commuting slots permuted by a Galois group.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::rootsystem::{RootSystem, Weight};

/// Basis vector `x_{alpha, sigma}`: a positive root in a Galois slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BasisElement {
    pub root: usize,
    pub slot: usize,
}

/// Integer linear combination of basis vectors, sorted by index, no zeros.
pub type Combination = Vec<(usize, i64)>;

#[derive(Debug, Clone)]
pub struct NilpotentLieAlgebra {
    pub root_system: RootSystem,
    /// Slot-major: index `slot * |Phi+| + root`.
    pub basis: Vec<BasisElement>,
    pub slots: usize,
    bracket_table: Vec<Vec<Combination>>,
    pub grading: Vec<i64>,
    pub min_valid_prime: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Antisymmetry { i: usize, j: usize },
    Jacobi { i: usize, j: usize, k: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JacobiReport {
    pub passed: bool,
    pub triples_checked: usize,
    pub violation: Option<Violation>,
}

type ConstraintTerm = (usize, i64, usize, i64, i64);

struct SignProblem {
    /// Unordered pairs `(i, j)` with `i < j` and `alpha_i + alpha_j` a root.
    pairs: Vec<(usize, usize, usize, i64)>,
    fixed: Vec<bool>,
    /// Each constraint: three terms `(pair_a, sign_a, pair_b, sign_b, magnitude)`.
    constraints: Vec<Vec<ConstraintTerm>>,
}

fn pair_lookup(pairs: &[(usize, usize, usize, i64)], rs: &RootSystem) -> Vec<Vec<Option<usize>>> {
    let n = rs.num_positive();
    let mut t = vec![vec![None; n]; n];
    for (id, &(i, j, _, _)) in pairs.iter().enumerate() {
        t[i][j] = Some(id);
        t[j][i] = Some(id);
    }
    t
}

fn sign_problem(rs: &RootSystem) -> SignProblem {
    let n = rs.num_positive();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if let Some(k) = rs.sum_index(i, j) {
                pairs.push((i, j, k, rs.root_string_down(i, j) + 1));
            }
        }
    }
    // Extraspecial pair for each non-simple root: the special pair (i, j)
    // whose first member comes earliest in the root order.
    let mut fixed = vec![false; pairs.len()];
    let mut done = vec![false; n];
    let mut order: Vec<usize> = (0..pairs.len()).collect();
    order.sort_by_key(|&id| (pairs[id].2, pairs[id].0));
    for id in order {
        let k = pairs[id].2;
        if !done[k] {
            done[k] = true;
            fixed[id] = true;
        }
    }
    let lookup = pair_lookup(&pairs, rs);
    // Signed reference to N_{u,v}: (pair id, +1 if u < v else -1, |N|).
    let signed = |u: usize, v: usize| -> Option<(usize, i64, i64)> {
        lookup[u][v].map(|id| (id, if u < v { 1 } else { -1 }, pairs[id].3))
    };
    let mut constraints = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                // [x_a,[x_b,x_c]] + [x_b,[x_c,x_a]] + [x_c,[x_a,x_b]] = 0
                let mut terms = Vec::new();
                for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                    if let Some(yz) = rs.sum_index(y, z) {
                        if let (Some(inner), Some(outer)) = (signed(y, z), signed(x, yz)) {
                            terms.push((inner.0, inner.1, outer.0, outer.1, inner.2 * outer.2));
                        }
                    }
                }
                if !terms.is_empty() {
                    constraints.push(terms);
                }
            }
        }
    }
    SignProblem { pairs, fixed, constraints }
}

fn solve_signs(problem: &SignProblem) -> Option<Vec<i64>> {
    let m = problem.pairs.len();
    // Assign fixed signs first, then the rest in pair order.
    let mut order: Vec<usize> = (0..m).filter(|&i| problem.fixed[i]).collect();
    order.extend((0..m).filter(|&i| !problem.fixed[i]));
    let mut position = vec![0usize; m];
    for (pos, &id) in order.iter().enumerate() {
        position[id] = pos;
    }
    // Attach each constraint to the step at which all its variables are set.
    let mut check_at: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (ci, c) in problem.constraints.iter().enumerate() {
        let last = c.iter().flat_map(|&(p, _, q, _, _)| [position[p], position[q]]).max().unwrap();
        check_at[last].push(ci);
    }
    let mut signs = vec![0i64; m];

    fn dfs(step: usize, order: &[usize], problem: &SignProblem, check_at: &[Vec<usize>], signs: &mut [i64]) -> bool {
        if step == order.len() {
            return true;
        }
        let id = order[step];
        let choices: &[i64] = if problem.fixed[id] { &[1] } else { &[1, -1] };
        for &s in choices {
            signs[id] = s;
            let ok = check_at[step].iter().all(|&ci| {
                problem.constraints[ci]
                    .iter()
                    .map(|&(p, sp, q, sq, mag)| signs[p] * sp * signs[q] * sq * mag)
                    .sum::<i64>()
                    == 0
            });
            if ok && dfs(step + 1, order, problem, check_at, signs) {
                return true;
            }
        }
        signs[id] = 0;
        false
    }

    if dfs(0, &order, problem, &check_at, &mut signs) {
        Some(signs)
    } else {
        None
    }
}

/// The nilpotent radical `u` with Chevalley structure constants (`d = 1`).
///
/// `|N_{alpha,beta}| = p + 1` with `p` maximal such that `beta - p alpha` is a
/// root; extraspecial pairs get positive constants and the remaining signs
/// are the first Jacobi-consistent assignment found by backtracking.
pub fn chevalley_structure_constants(rs: &RootSystem) -> NilpotentLieAlgebra {
    let problem = sign_problem(rs);
    let signs = solve_signs(&problem).expect("Chevalley sign system must exist for supported types");
    let n = rs.num_positive();
    let mut table = vec![vec![Vec::new(); n]; n];
    for (id, &(i, j, k, mag)) in problem.pairs.iter().enumerate() {
        let c = signs[id] * mag;
        table[i][j] = vec![(k, c)];
        table[j][i] = vec![(k, -c)];
    }
    NilpotentLieAlgebra {
        basis: (0..n).map(|root| BasisElement { root, slot: 0 }).collect(),
        slots: 1,
        bracket_table: table,
        grading: (0..n).map(|i| rs.height(i)).collect(),
        min_valid_prime: rs.min_valid_prime(),
        root_system: rs.clone(),
    }
}

/// `d` disjoint copies of a one-slot algebra with brackets inside each slot.
pub fn weil_restrict(l: &NilpotentLieAlgebra, d: usize) -> NilpotentLieAlgebra {
    assert_eq!(l.slots, 1, "weil_restrict expects a one-slot algebra");
    assert!(d >= 1);
    let n = l.dim();
    let mut table = vec![vec![Vec::new(); n * d]; n * d];
    for s in 0..d {
        for i in 0..n {
            for j in 0..n {
                table[s * n + i][s * n + j] = l.bracket_table[i][j].iter().map(|&(k, c)| (s * n + k, c)).collect();
            }
        }
    }
    NilpotentLieAlgebra {
        root_system: l.root_system.clone(),
        basis: (0..d).flat_map(|slot| l.basis.iter().map(move |b| BasisElement { root: b.root, slot })).collect(),
        slots: d,
        bracket_table: table,
        grading: (0..d).flat_map(|_| l.grading.iter().copied()).collect(),
        min_valid_prime: l.min_valid_prime,
    }
}

impl NilpotentLieAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn bracket(&self, i: usize, j: usize) -> &Combination {
        &self.bracket_table[i][j]
    }

    /// Index of `x_{root, slot}`.
    pub fn index(&self, root: usize, slot: usize) -> usize {
        slot * self.root_system.num_positive() + root
    }

    /// The Galois generator: rotation of slots `sigma -> sigma + 1 mod d`.
    pub fn rotate_slot(&self, i: usize) -> usize {
        let b = self.basis[i];
        self.index(b.root, (b.slot + 1) % self.slots)
    }

    /// Torus weight of a basis vector: its root in its slot, zero elsewhere.
    pub fn weight_of(&self, i: usize) -> Vec<Weight> {
        let rs = &self.root_system;
        let mut w = vec![Weight::zero(rs.rank()); self.slots];
        let b = self.basis[i];
        w[b.slot] = rs.root_weight(b.root);
        w
    }

    /// Bracket of a basis vector with a combination.
    pub fn bracket_with(&self, i: usize, v: &Combination) -> Combination {
        let mut acc = vec![0i64; self.dim()];
        for &(j, c) in v {
            for &(k, d) in &self.bracket_table[i][j] {
                acc[k] += c * d;
            }
        }
        acc.into_iter().enumerate().filter(|&(_, c)| c != 0).collect()
    }

    /// Copy of the algebra with the single entry `[x_i, x_j]` negated.
    pub fn with_entry_negated(&self, i: usize, j: usize) -> Self {
        let mut out = self.clone();
        for t in &mut out.bracket_table[i][j] {
            t.1 = -t.1;
        }
        out
    }

    /// Copy with both `[x_i, x_j]` and `[x_j, x_i]` negated.
    pub fn with_pair_negated(&self, i: usize, j: usize) -> Self {
        self.with_entry_negated(i, j).with_entry_negated(j, i)
    }

    /// Iterated brackets `L^1 = L`, `L^{n+1} = [L, L^n]`, as basis supports.
    /// Valid because brackets of basis vectors are multiples of basis vectors.
    pub fn lower_central_series_supports(&self) -> Vec<BTreeSet<usize>> {
        let mut out = vec![(0..self.dim()).collect::<BTreeSet<_>>()];
        loop {
            let last = out.last().unwrap();
            let next: BTreeSet<usize> = (0..self.dim())
                .flat_map(|i| last.iter().flat_map(move |&j| self.bracket_table[i][j].iter().map(|t| t.0)))
                .collect();
            let stop = next.is_empty();
            out.push(next);
            if stop {
                return out;
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rs = &self.root_system;
        let basis: Vec<_> = self
            .basis
            .iter()
            .enumerate()
            .map(|(i, b)| {
                serde_json::json!({
                    "index": i,
                    "root": rs.positive_roots[b.root].coords,
                    "slot": b.slot,
                    "height": self.grading[i],
                })
            })
            .collect();
        let mut brackets = Vec::new();
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                let c = &self.bracket_table[i][j];
                if !c.is_empty() {
                    brackets.push(serde_json::json!({
                        "i": i,
                        "j": j,
                        "value": c.iter().map(|&(k, v)| serde_json::json!([k, v])).collect::<Vec<_>>(),
                    }));
                }
            }
        }
        serde_json::json!({
            "type": rs.cartan_type.to_string(),
            "d": self.slots,
            "dim": self.dim(),
            "min_valid_prime": self.min_valid_prime,
            "basis": basis,
            "brackets": brackets,
        })
    }
}

/// Exhaustive antisymmetry and Jacobi check over all basis pairs and triples.
pub fn jacobi_check(l: &NilpotentLieAlgebra) -> JacobiReport {
    let n = l.dim();
    for i in 0..n {
        for j in i..n {
            let a = l.bracket(i, j);
            let b: Combination = l.bracket(j, i).iter().map(|&(k, c)| (k, -c)).collect();
            if *a != b {
                return JacobiReport {
                    passed: false,
                    triples_checked: 0,
                    violation: Some(Violation::Antisymmetry { i, j }),
                };
            }
        }
    }
    let mut checked = 0;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                checked += 1;
                let mut acc = vec![0i64; n];
                for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
                    for (t, c) in l.bracket_with(x, l.bracket(y, z)) {
                        acc[t] += c;
                    }
                }
                if acc.iter().any(|&c| c != 0) {
                    return JacobiReport {
                        passed: false,
                        triples_checked: checked,
                        violation: Some(Violation::Jacobi { i, j, k }),
                    };
                }
            }
        }
    }
    JacobiReport { passed: true, triples_checked: checked, violation: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsystem::TypeLabel;

    fn algebra(s: &str) -> NilpotentLieAlgebra {
        chevalley_structure_constants(&RootSystem::from_type(s.parse().unwrap()).unwrap())
    }

    #[test]
    fn a2_heisenberg() {
        let l = algebra("A2");
        assert_eq!(l.dim(), 3);
        assert_eq!(l.bracket(0, 1).len(), 1);
        assert_eq!(l.bracket(0, 1)[0].0, 2);
        assert_eq!(l.bracket(0, 1)[0].1.abs(), 1);
        assert!(l.bracket(0, 2).is_empty());
        assert!(l.bracket(1, 2).is_empty());
    }

    #[test]
    fn a1_abelian() {
        let l = algebra("A1");
        assert!(l.bracket(0, 0).is_empty());
        assert!(jacobi_check(&l).passed);
    }

    #[test]
    fn b2_constant_two() {
        let l = algebra("B2");
        let rs = &l.root_system;
        let a1 = rs.index_of(&[1, 0]).unwrap();
        let a12 = rs.index_of(&[1, 1]).unwrap();
        let top = rs.index_of(&[2, 1]).unwrap();
        assert_eq!(l.bracket(a1, a12).len(), 1);
        assert_eq!(l.bracket(a1, a12)[0].0, top);
        assert_eq!(l.bracket(a1, a12)[0].1.abs(), 2);
    }

    #[test]
    fn g2_magnitudes() {
        let l = algebra("G2");
        let rs = &l.root_system;
        let idx = |c: [i64; 2]| rs.index_of(&c).unwrap();
        let mag = |a: [i64; 2], b: [i64; 2]| l.bracket(idx(a), idx(b))[0].1.abs();
        assert_eq!(mag([1, 0], [0, 1]), 1);
        assert_eq!(mag([1, 0], [1, 1]), 2);
        assert_eq!(mag([1, 0], [2, 1]), 3);
        assert_eq!(mag([0, 1], [3, 1]), 1);
        assert_eq!(mag([1, 1], [2, 1]), 3);
        assert_eq!(l.min_valid_prime, 7);
    }

    #[test]
    fn weil_restriction() {
        let a2 = algebra("A2");
        let same = weil_restrict(&a2, 1);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(same.bracket(i, j), a2.bracket(i, j));
            }
        }
        let two = weil_restrict(&a2, 2);
        assert_eq!(two.dim(), 6);
        for i in 0..6 {
            for j in 0..6 {
                if two.basis[i].slot != two.basis[j].slot {
                    assert!(two.bracket(i, j).is_empty());
                }
            }
        }
        assert_eq!(two.bracket(3, 4), &vec![(5, a2.bracket(0, 1)[0].1)]);
        assert_eq!(two.rotate_slot(1), 4);
        assert_eq!(two.rotate_slot(4), 1);
        let a1 = weil_restrict(&algebra("A1"), 3);
        assert_eq!(a1.dim(), 3);
        assert!((0..3).all(|i| (0..3).all(|j| a1.bracket(i, j).is_empty())));
    }

    #[test]
    fn corrupted_algebras_fail() {
        let b2 = algebra("B2");
        let bad = b2.with_entry_negated(0, 2);
        let report = jacobi_check(&bad);
        assert!(!report.passed);
        assert_eq!(report.violation, Some(Violation::Antisymmetry { i: 0, j: 2 }));
        // A3 has genuine Jacobi constraints, so flipping a consistent pair fails.
        let a3 = algebra("A3");
        let bad = a3.with_pair_negated(0, 1);
        assert!(matches!(jacobi_check(&bad).violation, Some(Violation::Jacobi { .. })));
    }

    #[test]
    fn supported_algebras_are_lie_algebras() {
        for s in ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "G2"] {
            let l = algebra(s);
            assert!(jacobi_check(&l).passed, "{s}");
            let rs = &l.root_system;
            for i in 0..l.dim() {
                for j in 0..l.dim() {
                    for &(k, _) in l.bracket(i, j) {
                        assert_eq!(l.grading[k], l.grading[i] + l.grading[j]);
                    }
                }
            }
            // Lie lower central series is cut out by height.
            for (n, sup) in l.lower_central_series_supports().iter().enumerate() {
                let expected: BTreeSet<usize> = (0..l.dim()).filter(|&i| rs.height(i) > n as i64).collect();
                assert_eq!(*sup, expected, "{s} level {}", n + 1);
            }
        }
    }

    #[test]
    fn restricted_dimension() {
        let rs = RootSystem::build(TypeLabel::B, 3).unwrap();
        let l = weil_restrict(&chevalley_structure_constants(&rs), 2);
        assert_eq!(l.dim(), 2 * rs.num_positive());
        assert!(jacobi_check(&l).passed);
    }
}
