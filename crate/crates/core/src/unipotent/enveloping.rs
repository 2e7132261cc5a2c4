//! Truncated enveloping algebra `U(u) / U_{>c}` over `Q` in a PBW basis,
//! used to derive the commutator relations between root subgroups.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::nilpotent::NilpotentLieAlgebra;

/// PBW word: non-decreasing root indices.
type Word = Vec<u8>;
type Poly = HashMap<Word, BigRational>;

pub(crate) struct TruncatedEnveloping<'a> {
    l: &'a NilpotentLieAlgebra,
    heights: Vec<usize>,
    cap: usize,
    memo: HashMap<Word, Poly>,
}

fn add_into(acc: &mut Poly, w: Word, c: BigRational) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(w).or_insert_with(BigRational::zero);
    *e += c;
}

impl<'a> TruncatedEnveloping<'a> {
    /// Truncation above total height `cap`; `l` must have a single slot.
    pub fn new(l: &'a NilpotentLieAlgebra, cap: usize) -> Self {
        assert_eq!(l.slots, 1);
        let heights = (0..l.dim()).map(|i| l.root_system.height(i) as usize).collect();
        TruncatedEnveloping { l, heights, cap, memo: HashMap::new() }
    }

    fn word_height(&self, w: &[u8]) -> usize {
        w.iter().map(|&i| self.heights[i as usize]).sum()
    }

    /// Rewrites an arbitrary word in the PBW basis via `ba = ab + [b, a]`.
    fn straighten(&mut self, w: &[u8]) -> Poly {
        if let Some(p) = self.memo.get(w) {
            return p.clone();
        }
        let out = match (1..w.len()).find(|&i| w[i - 1] > w[i]) {
            None => Poly::from([(w.to_vec(), BigRational::one())]),
            Some(i) => {
                let (b, a) = (w[i - 1], w[i]);
                let mut swapped = w.to_vec();
                swapped.swap(i - 1, i);
                let mut acc = self.straighten(&swapped);
                for &(k, c) in self.l.bracket(b as usize, a as usize).clone().iter() {
                    let mut v = w[..i - 1].to_vec();
                    v.push(k as u8);
                    v.extend_from_slice(&w[i + 1..]);
                    for (t, val) in self.straighten(&v) {
                        add_into(&mut acc, t, val * BigRational::from_integer(BigInt::from(c)));
                    }
                }
                acc.retain(|_, v| !v.is_zero());
                acc
            }
        };
        self.memo.insert(w.to_vec(), out.clone());
        out
    }

    pub fn mul(&mut self, a: &Poly, b: &Poly) -> Poly {
        let mut acc = Poly::new();
        for (wa, ca) in a {
            for (wb, cb) in b {
                if self.word_height(wa) + self.word_height(wb) > self.cap {
                    continue;
                }
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                let coeff = ca * cb;
                for (t, v) in self.straighten(&w) {
                    add_into(&mut acc, t, v * &coeff);
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        acc
    }

    /// `exp(t x_i)`, truncated.
    pub fn exp(&self, i: usize, t: i64) -> Poly {
        let mut out = Poly::new();
        let mut coeff = BigRational::one();
        let mut m = 0usize;
        while m * self.heights[i] <= self.cap {
            out.insert(vec![i as u8; m], coeff.clone());
            m += 1;
            coeff = coeff * BigRational::from_integer(BigInt::from(t)) / BigRational::from_integer(BigInt::from(m));
        }
        out
    }

    /// Coefficient of the single-letter word `x_k`: the normal-form
    /// coordinate of a group-like element.
    pub fn coordinate(p: &Poly, k: usize) -> BigRational {
        p.get(&vec![k as u8]).cloned().unwrap_or_else(BigRational::zero)
    }
}

/// One factor `theta_root(c * u^i * t^j)` of `[theta_a(u), theta_b(t)]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommutatorTerm {
    pub i: u32,
    pub j: u32,
    pub root: usize,
    pub numerator: i64,
    pub denominator: i64,
}

impl CommutatorTerm {
    pub fn is_integral(&self) -> bool {
        self.denominator == 1
    }
}

/// `[theta_a(u), theta_b(t)] = a^-1 b^-1 a b` as an ordered product over
/// roots `i a + j b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommutatorEntry {
    pub a: usize,
    pub b: usize,
    pub terms: Vec<CommutatorTerm>,
}

fn decompose(l: &NilpotentLieAlgebra, a: usize, b: usize, g: usize) -> Option<(u32, u32)> {
    let ra = &l.root_system.positive_roots[a].coords;
    let rb = &l.root_system.positive_roots[b].coords;
    let rg = &l.root_system.positive_roots[g].coords;
    let max = l.root_system.max_height();
    for i in 1..=max {
        for j in 1..=max {
            if (0..ra.len()).all(|t| i * ra[t] + j * rb[t] == rg[t]) {
                return Some((i as u32, j as u32));
            }
        }
    }
    None
}

/// Commutator relations for all ordered pairs of distinct positive roots.
pub fn commutator_table(l: &NilpotentLieAlgebra) -> Vec<CommutatorEntry> {
    let rs = &l.root_system;
    let cap = rs.max_height() as usize;
    let m = rs.num_positive();
    let mut u = TruncatedEnveloping::new(l, cap);
    let mut out = Vec::new();
    for a in 0..m {
        for b in 0..m {
            if a == b {
                continue;
            }
            let prod = [u.exp(a, -1), u.exp(b, -1), u.exp(a, 1), u.exp(b, 1)];
            let mut g = prod[0].clone();
            for f in &prod[1..] {
                g = u.mul(&g, f);
            }
            let mut terms = Vec::new();
            for k in 0..m {
                let c = TruncatedEnveloping::coordinate(&g, k);
                if c.is_zero() {
                    continue;
                }
                let (i, j) = decompose(l, a, b, k).expect("commutator coordinate outside the root cone");
                let den = c.denom().clone();
                let num = c.numer().clone();
                assert!(den.is_positive());
                terms.push(CommutatorTerm {
                    i,
                    j,
                    root: k,
                    numerator: i64::try_from(num).expect("commutator constant overflow"),
                    denominator: i64::try_from(den).expect("commutator constant overflow"),
                });
            }
            out.push(CommutatorEntry { a, b, terms });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilpotent::chevalley_structure_constants;
    use crate::rootsystem::RootSystem;

    fn table(s: &str) -> (NilpotentLieAlgebra, Vec<CommutatorEntry>) {
        let rs = RootSystem::from_type(s.parse().unwrap()).unwrap();
        let l = chevalley_structure_constants(&rs);
        let t = commutator_table(&l);
        (l, t)
    }

    #[test]
    fn leading_term_is_the_bracket() {
        for s in ["A2", "A3", "B2", "C3", "G2"] {
            let (l, t) = table(s);
            for e in &t {
                assert!(e.terms.iter().all(CommutatorTerm::is_integral), "{s}: {e:?}");
                let lie = l.bracket(e.a, e.b);
                let c11 = e.terms.iter().find(|x| x.i == 1 && x.j == 1);
                match lie.first() {
                    Some(&(k, c)) => {
                        let c11 = c11.unwrap();
                        assert_eq!((c11.root, c11.numerator), (k, c), "{s}: {e:?}");
                    }
                    None => assert!(c11.is_none()),
                }
            }
        }
    }

    #[test]
    fn b2_has_a_quadratic_term() {
        let (l, t) = table("B2");
        let rs = &l.root_system;
        // In B2 with a short simple root, [x_short(u), x_long(t)] involves u^2 t.
        let cubic = t.iter().flat_map(|e| e.terms.iter()).any(|x| x.i + x.j == 3);
        assert!(cubic);
        assert_eq!(rs.max_height(), 3);
    }
}
