//! Kostant-type predictions for `H^*(u, Z)` and the Galois-orbit
//! multiplicities of Weil-restricted radicals.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::arith::{poly_pow, prime_factors};
use crate::cecohomology::{cyclotomic_poly, CohomologyResult, MonicRing};
use crate::error::{Error, Result};
use crate::linalg::int::IntMatrix;
use crate::linalg::snf::smith_normal_form_diagonal;
use crate::rootsystem::{RootSystem, Weight};
use crate::weyl::{dot_action, poincare_polynomial, WeylGroup};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KostantPrediction {
    /// `degrees[n]`: the weights `w . 0` with `l(w) = n`, sorted.
    pub degrees: Vec<Vec<Weight>>,
}

pub fn kostant_predict(rs: &RootSystem, w: &WeylGroup) -> KostantPrediction {
    let zero = Weight::zero(rs.rank());
    let mut degrees = vec![Vec::new(); w.max_length() + 1];
    for e in &w.elements {
        degrees[e.length].push(dot_action(rs, e, &zero));
    }
    for d in &mut degrees {
        d.sort();
    }
    KostantPrediction { degrees }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KostantDegree {
    pub degree: usize,
    pub passed: bool,
    pub predicted: Vec<Weight>,
    pub free_rank: usize,
    pub torsion: Vec<u128>,
    pub mismatches: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KostantReport {
    pub passed: bool,
    pub coxeter_number: i64,
    pub degrees: Vec<KostantDegree>,
}

/// Compares predicted weights with computed one-slot cohomology: every
/// predicted weight must carry a rank-one block, nothing else may survive,
/// and torsion may only involve primes below the Coxeter number.
pub fn verify_kostant(prediction: &KostantPrediction, computed: &CohomologyResult, coxeter: i64) -> KostantReport {
    assert_eq!(computed.slots, 1, "the Kostant comparison is for one-slot algebras");
    let top = prediction.degrees.len().max(computed.degrees.len());
    let mut degrees = Vec::with_capacity(top);
    for n in 0..top {
        let predicted = prediction.degrees.get(n).cloned().unwrap_or_default();
        let mut mismatches = Vec::new();
        let (free_rank, torsion, blocks) = match computed.degrees.get(n) {
            Some(d) => {
                let blocks: BTreeMap<Weight, usize> =
                    d.weights.iter().map(|wr| (wr.weight[0].clone(), wr.rank)).collect();
                (d.free_rank, d.torsion.clone(), blocks)
            }
            None => (0, Vec::new(), BTreeMap::new()),
        };
        let mut expected: BTreeMap<Weight, usize> = BTreeMap::new();
        for w in &predicted {
            *expected.entry(w.clone()).or_default() += 1;
        }
        for (w, &mult) in &expected {
            if mult > 1 {
                mismatches.push(format!("predicted weight {w} occurs {mult} times"));
            }
            match blocks.get(w) {
                None => mismatches.push(format!("predicted weight {w} missing from H^{n}")),
                Some(&r) if r != 1 => mismatches.push(format!("weight {w} has rank {r} in H^{n}, expected 1")),
                _ => {}
            }
        }
        for (w, &r) in &blocks {
            if !expected.contains_key(w) {
                mismatches.push(format!("unexpected weight {w} of rank {r} in H^{n}"));
            }
        }
        if free_rank != predicted.len() {
            mismatches.push(format!("free rank {free_rank} != {}", predicted.len()));
        }
        for &t in &torsion {
            for p in prime_factors(t) {
                if p >= coxeter as u128 {
                    mismatches.push(format!("torsion Z/{t} at prime {p} >= h = {coxeter}"));
                }
            }
        }
        degrees.push(KostantDegree {
            degree: n,
            passed: mismatches.is_empty(),
            predicted,
            free_rank,
            torsion,
            mismatches,
        });
    }
    KostantReport { passed: degrees.iter().all(|d| d.passed), coxeter_number: coxeter, degrees }
}

/// Permutation group on `0..degree`, elements listed with the identity first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PermutationGroup {
    pub degree: usize,
    pub elements: Vec<Vec<usize>>,
}

impl PermutationGroup {
    pub fn cyclic(d: usize) -> Self {
        Self::generated_by(d, &[(0..d).map(|i| (i + 1) % d).collect()]).unwrap()
    }

    pub fn generated_by(d: usize, gens: &[Vec<usize>]) -> Result<Self> {
        for g in gens {
            let set: BTreeSet<usize> = g.iter().copied().collect();
            if g.len() != d || set.len() != d || set.iter().any(|&x| x >= d) {
                return Err(Error::InvalidInput(format!("{g:?} is not a permutation of 0..{d}")));
            }
        }
        let id: Vec<usize> = (0..d).collect();
        let mut elements = vec![id.clone()];
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([id]);
        let mut i = 0;
        while i < elements.len() {
            for g in gens {
                let prod: Vec<usize> = (0..d).map(|x| elements[i][g[x]]).collect();
                if seen.insert(prod.clone()) {
                    elements.push(prod);
                }
            }
            i += 1;
        }
        Ok(PermutationGroup { degree: d, elements })
    }

    /// Parses `cyclic` or `perm:` followed by `;`-separated generators, each
    /// a comma-separated image list, e.g. `perm:1,0,2;0,2,1`.
    pub fn parse(spec: &str, d: usize) -> Result<Self> {
        let spec = spec.trim();
        if spec == "cyclic" {
            return Ok(Self::cyclic(d));
        }
        let body =
            spec.strip_prefix("perm:").ok_or_else(|| Error::InvalidInput(format!("unknown Galois spec {spec}")))?;
        let gens = body
            .split(';')
            .filter(|s| !s.is_empty())
            .map(|g| {
                g.split(',')
                    .map(|x| x.trim().parse::<usize>().map_err(|_| Error::InvalidInput(format!("bad permutation {g}"))))
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let g = Self::generated_by(d, &gens)?;
        if !g.is_transitive() {
            return Err(Error::InvalidInput(format!("Galois group {spec} is not transitive on {d} letters")));
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_transitive(&self) -> bool {
        let orbit: BTreeSet<usize> = self.elements.iter().map(|g| g[0]).collect();
        orbit.len() == self.degree
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeylMultiset {
    /// Weyl element indices, non-decreasing.
    pub entries: Vec<usize>,
    pub total_length: usize,
    /// Sum of the members' `w . 0`.
    pub character: Weight,
}

/// Unordered d-multisets of Weyl elements with total length `n`.
pub fn enumerate_multisets(rs: &RootSystem, w: &WeylGroup, d: usize, n: usize) -> Vec<WeylMultiset> {
    let zero = Weight::zero(rs.rank());
    let dots: Vec<Weight> = w.elements.iter().map(|e| dot_action(rs, e, &zero)).collect();
    let lengths: Vec<usize> = w.elements.iter().map(|e| e.length).collect();
    let max_len = w.max_length();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(d);

    #[allow(clippy::too_many_arguments)]
    fn rec(
        start: usize,
        left: usize,
        budget: usize,
        max_len: usize,
        lengths: &[usize],
        dots: &[Weight],
        current: &mut Vec<usize>,
        out: &mut Vec<WeylMultiset>,
        zero: &Weight,
        n: usize,
    ) {
        if left == 0 {
            if budget == 0 {
                let character = current.iter().fold(zero.clone(), |acc, &i| acc.add(&dots[i]));
                out.push(WeylMultiset { entries: current.clone(), total_length: n, character });
            }
            return;
        }
        if budget > left * max_len {
            return;
        }
        for i in start..lengths.len() {
            if lengths[i] <= budget {
                current.push(i);
                rec(i, left - 1, budget - lengths[i], max_len, lengths, dots, current, out, zero, n);
                current.pop();
            }
        }
    }

    rec(0, d, n, max_len, &lengths, &dots, &mut current, &mut out, &zero, n);
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub arrangements: usize,
    pub orbits: usize,
    pub burnside_orbits: usize,
    /// Orbit sizes, ascending.
    pub stabilizer_profile: Vec<usize>,
    pub all_free: bool,
}

/// Distinct sequences of length d realising the multiset.
pub fn arrangements(m: &WeylMultiset) -> Vec<Vec<usize>> {
    let mut seq = m.entries.clone();
    let mut out = vec![seq.clone()];
    // Lexicographic next-permutation over the sorted multiset.
    loop {
        let Some(i) = (1..seq.len()).rev().find(|&i| seq[i - 1] < seq[i]) else {
            return out;
        };
        let j = (i..seq.len()).rev().find(|&j| seq[j] > seq[i - 1]).unwrap();
        seq.swap(i - 1, j);
        seq[i..].reverse();
        out.push(seq.clone());
    }
}

fn act(s: &[usize], g: &[usize]) -> Vec<usize> {
    (0..s.len()).map(|x| s[g[x]]).collect()
}

/// Orbits of the Galois group acting on arrangements by precomposition.
pub fn orbit_count(m: &WeylMultiset, galois: &PermutationGroup) -> OrbitReport {
    let arrs = arrangements(m);
    let index: HashMap<Vec<usize>, usize> = arrs.iter().enumerate().map(|(i, a)| (a.clone(), i)).collect();
    let mut orbit_of = vec![usize::MAX; arrs.len()];
    let mut sizes = Vec::new();
    for start in 0..arrs.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = sizes.len();
        let mut size = 0;
        for g in &galois.elements {
            let t = index[&act(&arrs[start], g)];
            if orbit_of[t] == usize::MAX {
                orbit_of[t] = id;
                size += 1;
            }
        }
        sizes.push(size);
    }
    let fixed_total: usize = galois.elements.iter().map(|g| arrs.iter().filter(|a| act(a, g) == **a).count()).sum();
    assert_eq!(fixed_total % galois.order(), 0);
    sizes.sort_unstable();
    OrbitReport {
        arrangements: arrs.len(),
        orbits: sizes.len(),
        burnside_orbits: fixed_total / galois.order(),
        all_free: sizes.iter().all(|&s| s == galois.order()),
        stabilizer_profile: sizes,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultisetRow {
    pub entries: Vec<usize>,
    pub words: Vec<Vec<usize>>,
    pub orbit: OrbitReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterRow {
    pub character: Weight,
    pub multisets: Vec<MultisetRow>,
    /// Sum of orbit counts over contributing multisets.
    pub multiplicity: usize,
    pub arrangements: usize,
    /// Slot-summed free rank of the computed cohomology in this character, when supplied.
    pub computed_rank: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorollaryReport {
    pub d: usize,
    pub degree: usize,
    pub galois_order: usize,
    pub characters: Vec<CharacterRow>,
    pub total_arrangements: usize,
    /// Coefficient of `t^n` in `poincare(t)^d`.
    pub poincare_coefficient: i128,
    pub computed_free_rank: Option<usize>,
    /// Whether the same character arises from more than one multiset.
    pub coincidences: Vec<Weight>,
    pub burnside_agrees: bool,
    pub consistent: bool,
}

/// Groups multisets by character and tallies orbit counts. If `computed`
/// is the cohomology of the d-slot algebra, its degree-n free rank and
/// slot-summed weight ranks are compared with the arrangement counts.
pub fn corollary_report(
    rs: &RootSystem,
    w: &WeylGroup,
    d: usize,
    n: usize,
    galois: &PermutationGroup,
    computed: Option<&CohomologyResult>,
) -> CorollaryReport {
    assert_eq!(galois.degree, d);
    let multisets = enumerate_multisets(rs, w, d, n);
    let mut by_char: BTreeMap<Weight, Vec<MultisetRow>> = BTreeMap::new();
    for m in &multisets {
        by_char.entry(m.character.clone()).or_default().push(MultisetRow {
            entries: m.entries.clone(),
            words: m.entries.iter().map(|&i| w.elements[i].reduced_word.clone()).collect(),
            orbit: orbit_count(m, galois),
        });
    }
    let computed_chars: Option<BTreeMap<Weight, usize>> = computed.map(|c| {
        let mut map = BTreeMap::new();
        if let Some(deg) = c.degrees.get(n) {
            for wr in &deg.weights {
                let total = wr.weight.iter().fold(Weight::zero(rs.rank()), |acc, x| acc.add(x));
                *map.entry(total).or_default() += wr.rank;
            }
        }
        map
    });
    let characters: Vec<CharacterRow> = by_char
        .into_iter()
        .map(|(character, multisets)| CharacterRow {
            multiplicity: multisets.iter().map(|m| m.orbit.orbits).sum(),
            arrangements: multisets.iter().map(|m| m.orbit.arrangements).sum(),
            computed_rank: computed_chars.as_ref().map(|m| m.get(&character).copied().unwrap_or(0)),
            character,
            multisets,
        })
        .collect();
    let total_arrangements: usize = characters.iter().map(|c| c.arrangements).sum();
    let poincare = poly_pow(&poincare_polynomial(w), d);
    let poincare_coefficient = poincare.get(n).copied().unwrap_or(0);
    let computed_free_rank = computed.map(|c| c.degrees.get(n).map_or(0, |x| x.free_rank));
    let burnside_agrees =
        characters.iter().all(|c| c.multisets.iter().all(|m| m.orbit.orbits == m.orbit.burnside_orbits));
    let mut consistent = burnside_agrees && total_arrangements as i128 == poincare_coefficient;
    if let Some(r) = computed_free_rank {
        consistent &= r == total_arrangements;
    }
    if computed.is_some() {
        consistent &= characters.iter().all(|c| c.computed_rank == Some(c.arrangements));
    }
    CorollaryReport {
        d,
        degree: n,
        galois_order: galois.order(),
        coincidences: characters.iter().filter(|c| c.multisets.len() > 1).map(|c| c.character.clone()).collect(),
        characters,
        total_arrangements,
        poincare_coefficient,
        computed_free_rank,
        burnside_agrees,
        consistent,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleMultiset {
    pub entries: Vec<usize>,
    pub arrangements: usize,
    pub orbits: usize,
    pub all_free: bool,
    pub fixed_rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleCharacter {
    pub character: Weight,
    pub arrangements: usize,
    pub orbits: usize,
    pub d_times_orbits: usize,
    pub fixed_rank: usize,
    pub all_free: bool,
    pub multisets: Vec<OracleMultiset>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub cyclotomic_order: u64,
    pub ring_rank: usize,
    pub d: usize,
    pub degree: usize,
    pub characters: Vec<OracleCharacter>,
    /// Characters whose fixed rank equals `d * orbits`, among all-free ones.
    pub free_cases_agree: bool,
}

fn euler_phi(m: u64) -> u64 {
    (1..=m).filter(|&k| num_integer::gcd(k, m) == 1).count() as u64
}

fn unit_group_generator(m: u64) -> Option<u64> {
    let phi = euler_phi(m);
    if m <= 2 {
        return Some(1);
    }
    (2..m).find(|&g| {
        num_integer::gcd(g, m) == 1 && {
            let mut x = 1u64;
            let mut order = 0;
            loop {
                x = x * g % m;
                order += 1;
                if x == 1 {
                    break;
                }
            }
            order == phi
        }
    })
}

/// Matrix of the ring automorphism `x -> x^g` of `Z[x]/(Phi_m)` on the power basis.
fn galois_matrix(m: u64, g: u64) -> Vec<Vec<i64>> {
    let ring = MonicRing::cyclotomic(m);
    let e = ring.rank();
    let c = ring.companion();
    // Column vector of x^k by repeated multiplication by the companion matrix.
    let power = |k: u64| -> Vec<i64> {
        let mut v = vec![0i64; e];
        v[0] = 1;
        for _ in 0..k {
            v = (0..e).map(|i| (0..e).map(|j| c[i][j] * v[j]).sum()).collect();
        }
        v
    };
    let mut out = vec![vec![0i64; e]; e];
    for i in 0..e {
        let col = power(g * i as u64);
        for r in 0..e {
            out[r][i] = col[r];
        }
    }
    out
}

/// Rank over Z of the Galois-fixed part of the free R-module on all
/// arrangements, with R = Z[x]/(Phi_m), acting semilinearly: a generator
/// rotates slots and applies `x -> x^g` to coefficients.
pub fn galois_invariants_oracle(rs: &RootSystem, w: &WeylGroup, d: usize, n: usize, m: u64) -> Result<OracleReport> {
    let e = cyclotomic_poly(m).len() - 1;
    if e != d {
        return Err(Error::InvalidInput(format!("Phi_{m} has degree {e}, expected d = {d}")));
    }
    let g = unit_group_generator(m).ok_or_else(|| Error::InvalidInput(format!("(Z/{m})^x is not cyclic")))?;
    let gal = galois_matrix(m, g);
    let rotation: Vec<usize> = (0..d).map(|i| (i + 1) % d).collect();
    let cyclic = PermutationGroup::cyclic(d);

    let fixed_rank = |arrs: &[Vec<usize>]| -> usize {
        let index: HashMap<&Vec<usize>, usize> = arrs.iter().enumerate().map(|(i, a)| (a, i)).collect();
        let size = arrs.len() * e;
        let mut a = IntMatrix::zeros(size, size);
        for (s, arr) in arrs.iter().enumerate() {
            let t = index[&act(arr, &rotation)];
            for x in 0..e {
                for y in 0..e {
                    a.add_to(t * e + x, s * e + y, gal[x][y]);
                }
            }
        }
        for i in 0..size {
            a.add_to(i, i, -1);
        }
        size - smith_normal_form_diagonal(&a).len()
    };

    let multisets = enumerate_multisets(rs, w, d, n);
    let mut by_char: BTreeMap<Weight, Vec<&WeylMultiset>> = BTreeMap::new();
    for ms in &multisets {
        by_char.entry(ms.character.clone()).or_default().push(ms);
    }
    let mut characters = Vec::new();
    for (character, group) in by_char {
        let mut rows = Vec::new();
        let mut all_arrs = Vec::new();
        for ms in group {
            let arrs = arrangements(ms);
            let orbit = orbit_count(ms, &cyclic);
            rows.push(OracleMultiset {
                entries: ms.entries.clone(),
                arrangements: arrs.len(),
                orbits: orbit.orbits,
                all_free: orbit.all_free,
                fixed_rank: fixed_rank(&arrs),
            });
            all_arrs.extend(arrs);
        }
        let orbits: usize = rows.iter().map(|r| r.orbits).sum();
        characters.push(OracleCharacter {
            arrangements: all_arrs.len(),
            orbits,
            d_times_orbits: d * orbits,
            fixed_rank: fixed_rank(&all_arrs),
            all_free: rows.iter().all(|r| r.all_free),
            multisets: rows,
            character,
        });
    }
    let free_cases_agree = characters.iter().filter(|c| c.all_free).all(|c| c.fixed_rank == c.d_times_orbits);
    Ok(OracleReport { cyclotomic_order: m, ring_rank: e, d, degree: n, characters, free_cases_agree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cecohomology::{build_ce_complex, cohomology};
    use crate::nilpotent::{chevalley_structure_constants, weil_restrict};
    use crate::weyl::enumerate_weyl_group;

    fn setup(s: &str) -> (RootSystem, WeylGroup) {
        let rs = RootSystem::from_type(s.parse().unwrap()).unwrap();
        let w = enumerate_weyl_group(&rs).unwrap();
        (rs, w)
    }

    #[test]
    fn a2_prediction() {
        let (rs, w) = setup("A2");
        let p = kostant_predict(&rs, &w);
        let mut deg1 = vec![rs.simple_roots[0].neg(), rs.simple_roots[1].neg()];
        deg1.sort();
        assert_eq!(p.degrees[1], deg1);
        assert_eq!(p.degrees[0], vec![Weight::zero(2)]);
        assert_eq!(p.degrees[3], vec![rs.rho.scale(-2)]);
    }

    #[test]
    fn verify_small_types() {
        for s in ["A1", "A2"] {
            let (rs, w) = setup(s);
            let h = cohomology(&build_ce_complex(&chevalley_structure_constants(&rs)).unwrap());
            let report = verify_kostant(&kostant_predict(&rs, &w), &h, crate::coxeter_number(&rs));
            assert!(report.passed, "{s}: {report:?}");
        }
    }

    #[test]
    fn corrupted_prediction_fails() {
        let (rs, w) = setup("A2");
        let h = cohomology(&build_ce_complex(&chevalley_structure_constants(&rs)).unwrap());
        let mut p = kostant_predict(&rs, &w);
        let dropped = p.degrees[2].remove(0);
        let report = verify_kostant(&p, &h, 3);
        assert!(!report.passed);
        assert!(report.degrees[0].passed && report.degrees[1].passed && report.degrees[3].passed);
        assert!(report.degrees[2].mismatches.iter().any(|m| m.contains(&dropped.to_string())));
    }

    #[test]
    fn multisets() {
        let (rs, w) = setup("A1");
        let ms = enumerate_multisets(&rs, &w, 2, 1);
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0].entries, vec![0, 1]);
        assert_eq!(ms[0].character, rs.simple_roots[0].neg());
        let (rs2, w2) = setup("A2");
        let zero = enumerate_multisets(&rs2, &w2, 3, 0);
        assert_eq!(zero.len(), 1);
        assert_eq!(zero[0].entries, vec![0, 0, 0]);
        let top = enumerate_multisets(&rs2, &w2, 2, 6);
        assert_eq!(top.len(), 1);
        assert_eq!(top[0].entries, vec![w2.longest_index(); 2]);
        assert_eq!(enumerate_multisets(&rs2, &w2, 2, 2).len(), 5);
    }

    #[test]
    fn orbit_examples() {
        let c2 = PermutationGroup::cyclic(2);
        let m = |entries: Vec<usize>| WeylMultiset { entries, total_length: 0, character: Weight::zero(1) };
        let r = orbit_count(&m(vec![0, 1]), &c2);
        assert_eq!((r.arrangements, r.orbits, r.burnside_orbits), (2, 1, 1));
        assert!(r.all_free);
        let r = orbit_count(&m(vec![1, 1]), &c2);
        assert_eq!((r.arrangements, r.orbits), (1, 1));
        assert!(!r.all_free);
        let r = orbit_count(&m(vec![0, 0, 1]), &PermutationGroup::cyclic(3));
        assert_eq!((r.arrangements, r.orbits, r.burnside_orbits), (3, 1, 1));
        let s3 = PermutationGroup::parse("perm:1,0,2;1,2,0", 3).unwrap();
        assert_eq!(s3.order(), 6);
        let r = orbit_count(&m(vec![0, 1, 2]), &s3);
        assert_eq!((r.arrangements, r.orbits, r.burnside_orbits), (6, 1, 1));
        assert!(PermutationGroup::parse("perm:1,0,2", 3).is_err());
        assert!(PermutationGroup::parse("bogus", 3).is_err());
    }

    #[test]
    fn corollary_examples() {
        let (rs, w) = setup("A1");
        let alg = weil_restrict(&chevalley_structure_constants(&rs), 2);
        let h = cohomology(&build_ce_complex(&alg).unwrap());
        let r = corollary_report(&rs, &w, 2, 1, &PermutationGroup::cyclic(2), Some(&h));
        assert_eq!(r.characters.len(), 1);
        assert_eq!(r.characters[0].character, rs.simple_roots[0].neg());
        assert_eq!(r.characters[0].multiplicity, 1);
        assert_eq!(r.total_arrangements, 2);
        assert!(r.consistent);

        let (rs, w) = setup("A2");
        let r = corollary_report(&rs, &w, 2, 2, &PermutationGroup::cyclic(2), None);
        assert_eq!(r.total_arrangements, 8);
        assert_eq!(r.poincare_coefficient, 8);
        assert_eq!(r.characters.iter().map(|c| c.multisets.len()).sum::<usize>(), 5);
        let p = kostant_predict(&rs, &w);
        for n in 0..=3 {
            let r = corollary_report(&rs, &w, 1, n, &PermutationGroup::cyclic(1), None);
            let chars: Vec<Weight> = r.characters.iter().map(|c| c.character.clone()).collect();
            assert_eq!(chars, p.degrees[n]);
            assert!(r.characters.iter().all(|c| c.multiplicity == 1 && c.arrangements == 1));
        }
    }

    #[test]
    fn oracle_examples() {
        let (rs, w) = setup("A1");
        let r = galois_invariants_oracle(&rs, &w, 2, 1, 3).unwrap();
        assert_eq!(r.characters.len(), 1);
        assert_eq!(r.characters[0].fixed_rank, 2);
        assert!(r.free_cases_agree);
        let r = galois_invariants_oracle(&rs, &w, 2, 0, 3).unwrap();
        // {e, e}: one arrangement with full stabiliser; the invariants of R have rank 1.
        assert_eq!(r.characters[0].fixed_rank, 1);
        assert_eq!(r.characters[0].d_times_orbits, 2);
        assert_eq!(r.characters[0].arrangements, 1);
        let (rs, w) = setup("A2");
        for n in 0..=3 {
            let r = galois_invariants_oracle(&rs, &w, 1, n, 1).unwrap();
            assert!(r.characters.iter().all(|c| c.fixed_rank == c.arrangements));
        }
        assert!(galois_invariants_oracle(&rs, &w, 2, 1, 5).is_err());
    }

    #[test]
    fn galois_matrix_is_an_involution_for_m3() {
        let g = galois_matrix(3, 2);
        // x -> x^2 = -1 - x
        assert_eq!(g, vec![vec![1, -1], vec![0, -1]]);
    }
}
