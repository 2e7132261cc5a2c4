//! Augmentation powers `I^n` of `F_p[G]` and PBW-type elements.
//!
//! The main engine works with annihilators `D_m = {f : f(I^m) = 0}` of
//! functions on the group: `f` lies in `D_m` iff `f(x_i y) - f(y)`, as a
//! function of `y`, lies in `D_{m-1}` for every generator `x_i`. A function
//! is determined by `f(1)` and these differences, so each `D_m` is the
//! solution space of the cycle constraints of the Cayley graph.

use std::collections::VecDeque;

use serde::Serialize;

use super::{Element, FiniteUnipotentGroup};
use crate::arith::{binomial, series_mul};
use crate::error::Result;
use crate::linalg::fp::Subspace;
use crate::rootsystem::RootSystem;

pub const DEFAULT_AUGMENTATION_CAP: u128 = 20_000;
pub const DEFAULT_DENSE_CAP: u128 = 700;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AugmentationReport {
    pub order: u128,
    /// `dims[n] = dim I^n / I^{n+1}`.
    pub dims: Vec<usize>,
    /// `log_p |G / [G, G] G^p|`, which must equal `dims[1]`.
    pub frattini_rank: usize,
    pub frattini_agrees: bool,
}

/// Bases of `D_0 ..= D_top` as value tables indexed by `encode`.
struct Annihilators {
    levels: Vec<Vec<Vec<u32>>>,
}

fn left_mult_table(g: &FiniteUnipotentGroup, gens: &[Element]) -> Vec<Vec<u32>> {
    let n = g.order() as usize;
    (0..n as u64)
        .map(|i| {
            let y = g.decode(i);
            gens.iter().map(|x| g.encode(&g.mul(x, &y)) as u32).collect()
        })
        .collect()
}

fn annihilators(g: &FiniteUnipotentGroup, top: usize) -> Annihilators {
    let p = g.p as u32;
    let n = g.order() as usize;
    let gens = g.generators();
    let table = left_mult_table(g, &gens);
    let ident = g.encode(&g.identity()) as usize;
    let mut levels: Vec<Vec<Vec<u32>>> = vec![Vec::new()];
    for _ in 1..=top {
        let prev = levels.last().unwrap();
        let r = prev.len();
        let u = 1 + gens.len() * r;
        let mut forms: Vec<Option<Vec<u32>>> = vec![None; n];
        let mut start = vec![0u32; u];
        start[0] = 1;
        forms[ident] = Some(start);
        let mut constraints = Subspace::zero(p, u);
        let mut queue = VecDeque::from([ident]);
        while let Some(y) = queue.pop_front() {
            let ly = forms[y].clone().unwrap();
            for (i, &z) in table[y].iter().enumerate() {
                let mut form = ly.clone();
                for (b, e) in prev.iter().enumerate() {
                    let slot = 1 + i * r + b;
                    form[slot] = (form[slot] + e[y]) % p;
                }
                match &forms[z as usize] {
                    None => {
                        forms[z as usize] = Some(form);
                        queue.push_back(z as usize);
                    }
                    Some(lz) => {
                        let diff: Vec<u32> = lz.iter().zip(&form).map(|(&a, &b)| (a + p - b) % p).collect();
                        constraints.insert(diff);
                    }
                }
            }
        }
        let forms: Vec<Vec<u32>> = forms.into_iter().map(|f| f.expect("generators must generate the group")).collect();
        let level: Vec<Vec<u32>> = constraints
            .null_space()
            .iter()
            .map(|c| {
                forms
                    .iter()
                    .map(|l| (l.iter().zip(c).map(|(&a, &b)| a as u64 * b as u64).sum::<u64>() % p as u64) as u32)
                    .collect()
            })
            .collect();
        levels.push(level);
    }
    Annihilators { levels }
}

fn frattini_rank(g: &FiniteUnipotentGroup) -> usize {
    let xs = g.generators();
    let comms: Vec<Element> =
        xs.iter().flat_map(|a| xs.iter().map(move |b| (a, b))).map(|(a, b)| g.commutator(a, b)).collect();
    let derived = g.normal_closure(comms);
    let mut seen = std::collections::HashSet::new();
    let powers = (0..g.order() as u64).map(|i| g.pow(&g.decode(i), g.p)).filter(|x| seen.insert(g.encode(x)));
    let phi = g.subgroup(derived.generators.iter().cloned().chain(powers));
    let mut quotient = g.order() / phi.order() as u128;
    let mut rank = 0;
    while quotient > 1 {
        quotient /= g.p as u128;
        rank += 1;
    }
    rank
}

/// `dim I^n / I^{n+1}` for `0 <= n <= n_max`.
pub fn augmentation_powers(g: &FiniteUnipotentGroup, n_max: usize) -> Result<AugmentationReport> {
    augmentation_powers_capped(g, n_max, DEFAULT_AUGMENTATION_CAP)
}

pub fn augmentation_powers_capped(g: &FiniteUnipotentGroup, n_max: usize, cap: u128) -> Result<AugmentationReport> {
    g.check_cap(cap)?;
    let ann = annihilators(g, n_max + 1);
    let dims: Vec<usize> = (0..=n_max).map(|n| ann.levels[n + 1].len() - ann.levels[n].len()).collect();
    let frattini = frattini_rank(g);
    Ok(AugmentationReport {
        order: g.order(),
        frattini_agrees: dims.get(1).is_none_or(|&d| d == frattini),
        dims,
        frattini_rank: frattini,
    })
}

/// Direct computation: `I^1 = span{g - 1}`, `I^{n+1} = sum_i I^n (x_i - 1)`.
pub fn augmentation_powers_dense(g: &FiniteUnipotentGroup, n_max: usize) -> Result<Vec<usize>> {
    g.check_cap(DEFAULT_DENSE_CAP)?;
    let p = g.p as u32;
    let n = g.order() as usize;
    let ident = g.encode(&g.identity()) as usize;
    let gens = g.generators();
    let right: Vec<Vec<usize>> = (0..n as u64)
        .map(|i| {
            let y = g.decode(i);
            gens.iter().map(|x| g.encode(&g.mul(&y, x)) as usize).collect()
        })
        .collect();
    let mut powers = vec![Subspace::full(p, n)];
    let mut ideal = Subspace::span(
        p,
        n,
        (0..n).filter(|&i| i != ident).map(|i| {
            let mut v = vec![0u32; n];
            v[i] = 1;
            v[ident] = p - 1;
            v
        }),
    );
    for _ in 0..=n_max {
        powers.push(ideal.clone());
        let mut next = Subspace::zero(p, n);
        for v in ideal.basis() {
            for i in 0..gens.len() {
                let mut w = vec![0u32; n];
                for (y, &c) in v.iter().enumerate() {
                    if c != 0 {
                        let t = right[y][i];
                        w[t] = (w[t] + c) % p;
                        w[y] = (w[y] + p - c) % p;
                    }
                }
                next.insert(w);
            }
        }
        ideal = next;
    }
    Ok((0..=n_max).map(|k| powers[k].dim() - powers[k + 1].dim()).collect())
}

/// Exponent vectors over the positive roots of every slot with weighted
/// degree `n`, height as the weight.
pub fn pbw_monomials(rs: &RootSystem, d: usize, n: usize) -> Vec<Vec<usize>> {
    let weights: Vec<usize> = (0..d).flat_map(|_| (0..rs.num_positive()).map(|i| rs.height(i) as usize)).collect();
    let mut out = Vec::new();
    let mut cur = vec![0usize; weights.len()];
    fn rec(k: usize, left: usize, w: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == w.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut j = 0;
        while j * w[k] <= left {
            cur[k] = j;
            rec(k + 1, left - j * w[k], w, cur, out);
            j += 1;
        }
        cur[k] = 0;
    }
    rec(0, n, &weights, &mut cur, &mut out);
    out
}

/// Coefficient of `t^n` in `prod_{alpha > 0} (1 - t^{h(alpha)})^{-d}`.
pub fn pbw_weight_count(rs: &RootSystem, d: usize, n: usize) -> u128 {
    let mut acc = vec![0i128; n + 1];
    acc[0] = 1;
    for _ in 0..d {
        for i in 0..rs.num_positive() {
            let h = rs.height(i) as usize;
            let geom: Vec<i128> = (0..=n).map(|j| i128::from(j % h == 0)).collect();
            acc = series_mul(&acc, &geom, n + 1);
        }
    }
    acc[n] as u128
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PbwDegree {
    pub n: usize,
    pub pbw_count: u128,
    pub monomials: usize,
    /// Every `v(j)` lies in `I^n`.
    pub in_ideal: bool,
    /// Rank of the images in `I^n / I^{n+1}`.
    pub rank: usize,
    pub independent: bool,
    pub quotient_dim: usize,
    pub dim_equals_count: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PbwReport {
    pub degrees: Vec<PbwDegree>,
    pub independent: bool,
    /// First degree where `dim I^n / I^{n+1}` differs from the PBW count.
    pub first_deviation: Option<usize>,
}

/// `v(j) = prod_k (x_k - 1)^{j_k}` in root order, as `(index, coefficient)`.
fn pbw_element(g: &FiniteUnipotentGroup, j: &[usize]) -> Vec<(usize, u32)> {
    let p = g.p;
    let mut out = Vec::new();
    let mut i = vec![0usize; j.len()];
    loop {
        let mut coeff = 1u64;
        for (&jk, &ik) in j.iter().zip(&i) {
            let b = (binomial(jk as u64, ik as u64) % p as u128) as u64;
            coeff = coeff * b % p;
            if (jk - ik) % 2 == 1 {
                coeff = (p - coeff) % p;
            }
        }
        if coeff != 0 {
            let e: Element = i.iter().map(|&x| x as u64 % g.modulus).collect();
            out.push((g.encode(&e) as usize, coeff as u32));
        }
        let Some(k) = (0..j.len()).find(|&k| i[k] < j[k]) else { break };
        i[k] += 1;
        for t in &mut i[..k] {
            *t = 0;
        }
    }
    out
}

fn pair(f: &[u32], v: &[(usize, u32)], p: u32) -> u32 {
    (v.iter().map(|&(i, c)| f[i] as u64 * c as u64).sum::<u64>() % p as u64) as u32
}

/// Checks that the images of `{v(j) : mu(j) = n}` in `I^n / I^{n+1}` are
/// linearly independent and compares `dim I^n / I^{n+1}` with the PBW count.
pub fn pbw_independence_check(g: &FiniteUnipotentGroup, n_max: usize) -> Result<PbwReport> {
    pbw_independence_check_capped(g, n_max, DEFAULT_AUGMENTATION_CAP)
}

pub fn pbw_independence_check_capped(g: &FiniteUnipotentGroup, n_max: usize, cap: u128) -> Result<PbwReport> {
    g.check_cap(cap)?;
    let p = g.p as u32;
    let ann = annihilators(g, n_max + 1);
    let mut degrees = Vec::new();
    for n in 0..=n_max {
        let monos = pbw_monomials(&g.root_system, g.slots, n);
        let elems: Vec<Vec<(usize, u32)>> = monos.iter().map(|j| pbw_element(g, j)).collect();
        let in_ideal = elems.iter().all(|v| ann.levels[n].iter().all(|f| pair(f, v, p) == 0));
        let rows: Vec<Vec<u32>> =
            elems.iter().map(|v| ann.levels[n + 1].iter().map(|f| pair(f, v, p)).collect()).collect();
        let rank = Subspace::span(p, ann.levels[n + 1].len(), rows).dim();
        let quotient_dim = ann.levels[n + 1].len() - ann.levels[n].len();
        let pbw_count = pbw_weight_count(&g.root_system, g.slots, n);
        degrees.push(PbwDegree {
            n,
            pbw_count,
            monomials: monos.len(),
            in_ideal,
            rank,
            independent: in_ideal && rank == monos.len(),
            quotient_dim,
            dim_equals_count: quotient_dim as u128 == pbw_count,
        });
    }
    Ok(PbwReport {
        independent: degrees.iter().all(|d| d.independent),
        first_deviation: degrees.iter().find(|d| !d.dim_equals_count).map(|d| d.n),
        degrees,
    })
}
