//! The finite unipotent group `U(Z/p^k)` in normal-form coordinates, its
//! lower central series and the associated graded Lie ring, and the
//! augmentation filtration of `F_p[U(Z/p^k)]`.

mod augmentation;
mod enveloping;
mod matrix;

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::nilpotent::{chevalley_structure_constants, weil_restrict, NilpotentLieAlgebra};
use crate::rootsystem::RootSystem;

pub use augmentation::{
    augmentation_powers, augmentation_powers_capped, augmentation_powers_dense, pbw_independence_check,
    pbw_independence_check_capped, pbw_monomials, pbw_weight_count, AugmentationReport, PbwDegree, PbwReport,
    DEFAULT_AUGMENTATION_CAP, DEFAULT_DENSE_CAP,
};
pub use enveloping::{commutator_table, CommutatorEntry, CommutatorTerm};
pub use matrix::UnitriangularOracle;

type CommTerm = (u32, u32, usize, u64);

pub const DEFAULT_GROUP_CAP: u128 = 100_000;

/// Coordinates `(c_alpha)`, slot-major, each in `Z/p^k`.
pub type Element = Vec<u64>;

#[derive(Debug, Clone)]
pub struct FiniteUnipotentGroup {
    pub root_system: RootSystem,
    pub p: u64,
    pub k: u32,
    pub modulus: u64,
    pub slots: usize,
    /// The Lie algebra whose constants define the group, Weil-restricted to `slots`.
    pub algebra: NilpotentLieAlgebra,
    pub commutator_table: Vec<CommutatorEntry>,
    /// `comm[a][b]`: `(i, j, root, C mod p^k)`.
    comm: Vec<Vec<Vec<CommTerm>>>,
    heights: Vec<usize>,
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, m: u64) -> u64 {
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    assert_eq!(r0, 1, "{a} is not a unit mod {m}");
    t0.rem_euclid(m as i128) as u64
}

fn reduce_signed(x: i64, m: u64) -> u64 {
    x.rem_euclid(m as i64) as u64
}

/// Builds `U(Z/p^k)^slots` from the Chevalley constants of `rs`.
pub fn make_group(rs: &RootSystem, p: u64, k: u32) -> Result<FiniteUnipotentGroup> {
    make_group_with_slots(rs, p, k, 1)
}

pub fn make_group_with_slots(rs: &RootSystem, p: u64, k: u32, slots: usize) -> Result<FiniteUnipotentGroup> {
    if p < 5 || !crate::arith::is_prime(p) {
        return Err(Error::UnsupportedPrime(p));
    }
    if k == 0 || slots == 0 {
        return Err(Error::InvalidInput("k and the slot count must be positive".into()));
    }
    let modulus = p
        .checked_pow(k)
        .filter(|&m| m < (1 << 31))
        .ok_or_else(|| Error::InvalidInput(format!("p^k = {p}^{k} is too large")))?;
    let base = chevalley_structure_constants(rs);
    let table = commutator_table(&base);
    let m = rs.num_positive();
    let mut comm = vec![vec![Vec::new(); m]; m];
    for e in &table {
        comm[e.a][e.b] = e
            .terms
            .iter()
            .map(|t| {
                let c = reduce_signed(t.numerator, modulus) * inv_mod(reduce_signed(t.denominator, modulus), modulus)
                    % modulus;
                (t.i, t.j, t.root, c)
            })
            .collect();
    }
    Ok(FiniteUnipotentGroup {
        root_system: rs.clone(),
        p,
        k,
        modulus,
        slots,
        algebra: weil_restrict(&base, slots),
        commutator_table: table,
        comm,
        heights: (0..m).map(|i| rs.height(i) as usize).collect(),
    })
}

impl FiniteUnipotentGroup {
    pub fn num_roots(&self) -> usize {
        self.heights.len()
    }

    pub fn num_coordinates(&self) -> usize {
        self.slots * self.num_roots()
    }

    pub fn order(&self) -> u128 {
        (self.modulus as u128).checked_pow(self.num_coordinates() as u32).unwrap_or(u128::MAX)
    }

    /// Height of coordinate `c` (slot-major index).
    pub fn height_of(&self, c: usize) -> usize {
        self.heights[c % self.num_roots()]
    }

    pub fn identity(&self) -> Element {
        vec![0; self.num_coordinates()]
    }

    /// `theta_root(t)` in the given slot.
    pub fn root_element(&self, root: usize, slot: usize, t: i64) -> Element {
        let mut e = self.identity();
        e[slot * self.num_roots() + root] = reduce_signed(t, self.modulus);
        e
    }

    /// Simple-root generators `theta_{alpha_i}(1)` of every slot.
    pub fn generators(&self) -> Vec<Element> {
        let rank = self.root_system.rank();
        (0..self.slots).flat_map(|s| (0..rank).map(move |i| (s, i))).map(|(s, i)| self.root_element(i, s, 1)).collect()
    }

    /// `x <- x * theta_g(t)` on one slot, by collection.
    fn mul_letter(&self, x: &mut [u64], g: usize, t: u64) {
        if t == 0 {
            return;
        }
        let q = self.modulus;
        let m = x.len();
        let tail: Vec<(usize, u64)> = (g + 1..m).filter(|&d| x[d] != 0).map(|d| (d, x[d])).collect();
        for &(d, _) in &tail {
            x[d] = 0;
        }
        x[g] = (x[g] + t) % q;
        // y_1 ... y_r theta = theta * y_1 [y_1, theta] * y_2 [y_2, theta] * ...
        for (d, u) in tail {
            self.mul_letter(x, d, u);
            for &(i, j, root, c) in &self.comm[d][g] {
                let coeff = c * pow_mod(u, i as u64, q) % q * pow_mod(t, j as u64, q) % q;
                self.mul_letter(x, root, coeff);
            }
        }
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Element {
        let m = self.num_roots();
        let mut x = a.to_vec();
        for s in 0..self.slots {
            let slot = &mut x[s * m..(s + 1) * m];
            for g in 0..m {
                self.mul_letter(slot, g, b[s * m + g]);
            }
        }
        x
    }

    pub fn inverse(&self, a: &[u64]) -> Element {
        let m = self.num_roots();
        let q = self.modulus;
        let mut x = self.identity();
        for s in 0..self.slots {
            let slot = &mut x[s * m..(s + 1) * m];
            for g in (0..m).rev() {
                self.mul_letter(slot, g, (q - a[s * m + g]) % q);
            }
        }
        x
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(&self, a: &[u64], b: &[u64]) -> Element {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(&self.inverse(&ba), &ab)
    }

    pub fn pow(&self, a: &[u64], mut e: u64) -> Element {
        let mut acc = self.identity();
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Mixed-radix index in `0..order`.
    pub fn encode(&self, a: &[u64]) -> u64 {
        a.iter().rev().fold(0u64, |acc, &c| acc * self.modulus + c)
    }

    pub fn decode(&self, mut idx: u64) -> Element {
        (0..self.num_coordinates())
            .map(|_| {
                let c = idx % self.modulus;
                idx /= self.modulus;
                c
            })
            .collect()
    }

    fn check_cap(&self, cap: u128) -> Result<()> {
        if self.order() > cap {
            return Err(Error::CapExceeded { order: self.order(), cap });
        }
        Ok(())
    }

    /// Subgroup generated by `gens`; only generators that enlarge the
    /// current subgroup are kept.
    pub fn subgroup(&self, gens: impl IntoIterator<Item = Element>) -> Subgroup {
        let mut h = Subgroup {
            generators: Vec::new(),
            elements: vec![self.identity()],
            index: HashSet::from([self.encode(&self.identity())]),
        };
        for g in gens {
            self.adjoin(&mut h, g);
        }
        h
    }

    fn adjoin(&self, h: &mut Subgroup, g: Element) -> bool {
        if h.contains(self, &g) {
            return false;
        }
        h.generators.push(g);
        let mut queue: VecDeque<Element> = h.elements.iter().cloned().collect();
        while let Some(x) = queue.pop_front() {
            for gen in &h.generators {
                let y = self.mul(&x, gen);
                if h.index.insert(self.encode(&y)) {
                    h.elements.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        true
    }

    /// Normal closure in the whole group of the subgroup generated by `gens`.
    pub fn normal_closure(&self, gens: impl IntoIterator<Item = Element>) -> Subgroup {
        let mut h = self.subgroup(gens);
        let xs = self.generators();
        let xs_inv: Vec<Element> = xs.iter().map(|x| self.inverse(x)).collect();
        let mut i = 0;
        while i < h.generators.len() {
            let y = h.generators[i].clone();
            for (x, xi) in xs.iter().zip(&xs_inv) {
                let conj = self.mul(&self.mul(xi, &y), x);
                self.adjoin(&mut h, conj);
            }
            i += 1;
        }
        h
    }
}

#[derive(Debug, Clone)]
pub struct Subgroup {
    pub generators: Vec<Element>,
    pub elements: Vec<Element>,
    index: HashSet<u64>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &FiniteUnipotentGroup, x: &[u64]) -> bool {
        self.index.contains(&g.encode(x))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LcsLevel {
    pub n: usize,
    pub order: u128,
    /// Coordinates that are nonzero somewhere in the subgroup.
    pub support: Vec<usize>,
    /// Coordinates whose root has height at least `n`.
    pub predicted_support: Vec<usize>,
    pub matches_prediction: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LcsReport {
    pub levels: Vec<LcsLevel>,
    pub all_match: bool,
}

/// `C^1 = G`, `C^{n+1} = [C^n, G]`, down to the trivial group. Uses
/// `[<Y>^G, G] = <[y, x] : y in Y, x in X>^G` for a generating set `X`.
pub fn lower_central_series(g: &FiniteUnipotentGroup) -> Result<LcsReport> {
    lower_central_series_capped(g, DEFAULT_GROUP_CAP)
}

pub fn lower_central_series_capped(g: &FiniteUnipotentGroup, cap: u128) -> Result<LcsReport> {
    g.check_cap(cap)?;
    let xs = g.generators();
    let mut current = g.subgroup(xs.clone());
    let mut levels = Vec::new();
    let mut n = 1;
    loop {
        let support: Vec<usize> =
            (0..g.num_coordinates()).filter(|&c| current.elements.iter().any(|e| e[c] != 0)).collect();
        let predicted_support: Vec<usize> = (0..g.num_coordinates()).filter(|&c| g.height_of(c) >= n).collect();
        let predicted_order = (g.modulus as u128).pow(predicted_support.len() as u32);
        levels.push(LcsLevel {
            n,
            order: current.order() as u128,
            matches_prediction: current.order() as u128 == predicted_order
                && support.iter().all(|c| predicted_support.contains(c)),
            support,
            predicted_support,
        });
        if current.order() == 1 {
            break;
        }
        let comms: Vec<Element> = current
            .generators
            .iter()
            .flat_map(|y| xs.iter().map(move |x| (y, x)))
            .map(|(y, x)| g.commutator(y, x))
            .collect();
        current = g.normal_closure(comms);
        n += 1;
    }
    Ok(LcsReport { all_match: levels.iter().all(|l| l.matches_prediction), levels })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrBracketEntry {
    pub a: usize,
    pub b: usize,
    /// `(coordinate, value)` of the group commutator at height `h(a) + h(b)`.
    pub group: Vec<(usize, u64)>,
    /// Lie bracket `[x_a, x_b]` reduced mod `p^k`.
    pub lie: Vec<(usize, u64)>,
    pub lower_terms_vanish: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrBracketReport {
    pub entries: Vec<GrBracketEntry>,
    pub passed: bool,
}

/// Compares `[theta_a(1), theta_b(1)]` in `C^{m+n} / C^{m+n+1}` with the Lie
/// bracket for every ordered pair of coordinates.
pub fn gr_bracket_check(g: &FiniteUnipotentGroup) -> GrBracketReport {
    let n = g.num_coordinates();
    let mut entries = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let xa = g.root_element(a % g.num_roots(), a / g.num_roots(), 1);
            let xb = g.root_element(b % g.num_roots(), b / g.num_roots(), 1);
            let c = g.commutator(&xa, &xb);
            let h = g.height_of(a) + g.height_of(b);
            let group: Vec<(usize, u64)> =
                (0..n).filter(|&t| g.height_of(t) == h && c[t] != 0).map(|t| (t, c[t])).collect();
            let lower_terms_vanish = (0..n).all(|t| g.height_of(t) >= h || c[t] == 0);
            let mut lie: Vec<(usize, u64)> = g
                .algebra
                .bracket(a, b)
                .iter()
                .map(|&(t, v)| (t, reduce_signed(v, g.modulus)))
                .filter(|&(_, v)| v != 0)
                .collect();
            lie.sort_unstable();
            entries.push(GrBracketEntry {
                a,
                b,
                passed: lower_terms_vanish && group == lie,
                group,
                lie,
                lower_terms_vanish,
            });
        }
    }
    GrBracketReport { passed: entries.iter().all(|e| e.passed), entries }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(s: &str, p: u64, k: u32) -> FiniteUnipotentGroup {
        make_group(&RootSystem::from_type(s.parse().unwrap()).unwrap(), p, k).unwrap()
    }

    #[test]
    fn rejects_small_primes() {
        let rs = RootSystem::from_type("A2".parse().unwrap()).unwrap();
        assert!(matches!(make_group(&rs, 3, 1), Err(Error::UnsupportedPrime(3))));
        assert!(matches!(make_group(&rs, 2, 1), Err(Error::UnsupportedPrime(2))));
    }

    #[test]
    fn a1_is_cyclic() {
        let g = group("A1", 5, 2);
        assert_eq!(g.order(), 25);
        let x = g.root_element(0, 0, 7);
        let y = g.root_element(0, 0, 21);
        assert_eq!(g.mul(&x, &y), vec![3]);
        assert_eq!(g.pow(&g.root_element(0, 0, 1), 25), g.identity());
    }

    #[test]
    fn group_axioms_exhaustive_a2() {
        let g = group("A2", 5, 1);
        let all: Vec<Element> = (0..g.order() as u64).map(|i| g.decode(i)).collect();
        for a in &all {
            assert_eq!(g.mul(&g.identity(), a), *a);
            assert_eq!(g.mul(a, &g.identity()), *a);
            assert_eq!(g.mul(a, &g.inverse(a)), g.identity());
        }
        for a in all.iter().step_by(7) {
            for b in all.iter().step_by(5) {
                for c in all.iter().step_by(11) {
                    assert_eq!(g.mul(&g.mul(a, b), c), g.mul(a, &g.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn lcs_examples() {
        let a2 = lower_central_series(&group("A2", 5, 1)).unwrap();
        assert_eq!(a2.levels.iter().map(|l| l.order).collect::<Vec<_>>(), vec![125, 5, 1]);
        assert!(a2.all_match);
        let a1 = lower_central_series(&group("A1", 5, 1)).unwrap();
        assert_eq!(a1.levels.len(), 2);
        let b2 = lower_central_series(&group("B2", 5, 1)).unwrap();
        assert_eq!(b2.levels.iter().map(|l| l.order).collect::<Vec<_>>(), vec![625, 25, 5, 1]);
        assert!(b2.all_match);
    }

    #[test]
    fn gr_examples() {
        let a2 = gr_bracket_check(&group("A2", 5, 1));
        assert!(a2.passed);
        let e = a2.entries.iter().find(|e| e.a == 0 && e.b == 1).unwrap();
        assert_eq!(e.group.len(), 1);
        assert_eq!(e.group[0].0, 2);
        assert!(e.group[0].1 == 1 || e.group[0].1 == 4);
        assert!(gr_bracket_check(&group("A1", 5, 1)).passed);
        let b2 = gr_bracket_check(&group("B2", 5, 1));
        assert!(b2.passed);
        assert!(b2.entries.iter().any(|e| e.group.iter().any(|&(_, v)| v == 2 || v == 3)));
    }

    #[test]
    fn cap_is_enforced() {
        let g = group("A2", 5, 2);
        assert!(matches!(lower_central_series_capped(&g, 1000), Err(Error::CapExceeded { .. })));
    }
}
