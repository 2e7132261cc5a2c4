//! Split root systems of simple type.
//!
//! Roots are stored in simple-root coordinates, weights in fundamental-weight
//! coordinates (simply connected convention, so `rho` is the all-ones
//! vector). The Cartan matrix uses `cartan[i][j] = <alpha_i, alpha_j^vee>`,
//! which makes row `i` the fundamental-weight expansion of `alpha_i`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TypeLabel {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            TypeLabel::A => 'A',
            TypeLabel::B => 'B',
            TypeLabel::C => 'C',
            TypeLabel::D => 'D',
            TypeLabel::E => 'E',
            TypeLabel::F => 'F',
            TypeLabel::G => 'G',
        };
        write!(f, "{c}")
    }
}

/// A type label together with its rank, e.g. `B3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CartanType {
    pub label: TypeLabel,
    pub rank: usize,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.label, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let label = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => TypeLabel::A,
            Some('B') => TypeLabel::B,
            Some('C') => TypeLabel::C,
            Some('D') => TypeLabel::D,
            Some('E') => TypeLabel::E,
            Some('F') => TypeLabel::F,
            Some('G') => TypeLabel::G,
            _ => return Err(Error::UnsupportedType(s.to_string())),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| Error::UnsupportedType(s.to_string()))?;
        Ok(CartanType { label, rank })
    }
}

/// Options controlling which types `RootSystem::build_with` accepts.
#[derive(Debug, Clone, Copy, Default)]
pub struct BuildOptions {
    /// Accept exceptional types E/F and classical types of rank above 4.
    pub allow_large: bool,
}

/// A root in simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Root {
    pub coords: Vec<i64>,
    pub height: i64,
}

impl Root {
    pub fn new(coords: Vec<i64>) -> Self {
        let height = coords.iter().sum();
        Root { coords, height }
    }
}

/// A character in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| k * a).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    pub cartan_type: CartanType,
    pub cartan_matrix: Vec<Vec<i64>>,
    /// Simple roots in fundamental-weight coordinates (rows of the Cartan matrix).
    pub simple_roots: Vec<Weight>,
    /// Positive roots, non-decreasing in height.
    pub positive_roots: Vec<Root>,
    pub rho: Weight,
    /// `half_norms[i] = (alpha_i, alpha_i) / 2` for an integral invariant form.
    half_norms: Vec<i64>,
    index: HashMap<Vec<i64>, usize>,
}

fn cartan_matrix(ty: CartanType) -> Result<Vec<Vec<i64>>> {
    let r = ty.rank;
    let unsupported = || Error::UnsupportedType(ty.to_string());
    let mut a = vec![vec![0i64; r]; r];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let bond = |a: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match ty.label {
        TypeLabel::A => {
            if r < 1 {
                return Err(unsupported());
            }
            for i in 0..r.saturating_sub(1) {
                bond(&mut a, i, i + 1);
            }
        }
        TypeLabel::B => {
            // alpha_1 is the unique short simple root.
            if r < 2 {
                return Err(unsupported());
            }
            for i in 0..r - 1 {
                bond(&mut a, i, i + 1);
            }
            a[1][0] = -2;
        }
        TypeLabel::C => {
            // alpha_r is the unique long simple root.
            if r < 2 {
                return Err(unsupported());
            }
            for i in 0..r - 1 {
                bond(&mut a, i, i + 1);
            }
            a[r - 1][r - 2] = -2;
        }
        TypeLabel::D => {
            if r < 4 {
                return Err(unsupported());
            }
            for i in 0..r - 2 {
                bond(&mut a, i, i + 1);
            }
            bond(&mut a, r - 3, r - 1);
        }
        TypeLabel::E => {
            if !(6..=8).contains(&r) {
                return Err(unsupported());
            }
            bond(&mut a, 0, 2);
            bond(&mut a, 1, 3);
            for i in 2..r - 1 {
                bond(&mut a, i, i + 1);
            }
        }
        TypeLabel::F => {
            if r != 4 {
                return Err(unsupported());
            }
            bond(&mut a, 0, 1);
            bond(&mut a, 1, 2);
            bond(&mut a, 2, 3);
            a[1][2] = -2;
        }
        TypeLabel::G => {
            if r != 2 {
                return Err(unsupported());
            }
            a[0][1] = -1;
            a[1][0] = -3;
        }
    }
    Ok(a)
}

fn check_supported(ty: CartanType, opts: &BuildOptions) -> Result<()> {
    if opts.allow_large {
        return Ok(());
    }
    let ok = match ty.label {
        TypeLabel::A => (1..=4).contains(&ty.rank),
        TypeLabel::B | TypeLabel::C => (2..=4).contains(&ty.rank),
        TypeLabel::D => ty.rank == 4,
        TypeLabel::G => ty.rank == 2,
        TypeLabel::E | TypeLabel::F => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::UnsupportedType(ty.to_string()))
    }
}

/// Every type buildable without `allow_large`.
pub fn supported_types() -> Vec<CartanType> {
    let mut out = Vec::new();
    for (label, ranks) in [
        (TypeLabel::A, 1..=4),
        (TypeLabel::B, 2..=4),
        (TypeLabel::C, 2..=4),
        (TypeLabel::D, 4..=4),
        (TypeLabel::G, 2..=2),
    ] {
        out.extend(ranks.map(|rank| CartanType { label, rank }));
    }
    out
}

/// Solves `a[i][j] * d[j] == a[j][i] * d[i]` for positive integers `d`.
fn symmetrizer(a: &[Vec<i64>]) -> Vec<i64> {
    use num_integer::Integer;
    let r = a.len();
    // Rational d_i = num/den, propagated across the connected Dynkin graph.
    let mut d: Vec<Option<(i64, i64)>> = vec![None; r];
    d[0] = Some((1, 1));
    let mut stack = vec![0usize];
    while let Some(i) = stack.pop() {
        let (n, m) = d[i].unwrap();
        for j in 0..r {
            if i != j && a[i][j] != 0 && d[j].is_none() {
                // d_j = a[j][i] * d_i / a[i][j]
                let num = a[j][i] * n;
                let den = a[i][j] * m;
                let g = num.gcd(&den);
                let (mut num, mut den) = (num / g, den / g);
                if den < 0 {
                    num = -num;
                    den = -den;
                }
                d[j] = Some((num, den));
                stack.push(j);
            }
        }
    }
    let lcm = d.iter().fold(1i64, |acc, x| acc.lcm(&x.unwrap().1));
    let ints: Vec<i64> = d.iter().map(|x| x.unwrap().0 * (lcm / x.unwrap().1)).collect();
    let g = ints.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    ints.into_iter().map(|x| x / g).collect()
}

impl RootSystem {
    /// Builds a root system from the default supported list.
    pub fn build(label: TypeLabel, rank: usize) -> Result<Self> {
        Self::build_with(CartanType { label, rank }, &BuildOptions::default())
    }

    pub fn from_type(ty: CartanType) -> Result<Self> {
        Self::build_with(ty, &BuildOptions::default())
    }

    pub fn build_with(ty: CartanType, opts: &BuildOptions) -> Result<Self> {
        check_supported(ty, opts)?;
        let cartan = cartan_matrix(ty)?;
        let r = ty.rank;
        let half_norms = symmetrizer(&cartan);

        // Closure by adding simple roots, height by height. The alpha_i-string
        // through beta satisfies p - q = <beta, alpha_i^vee>.
        let mut roots: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                let mut v = vec![0; r];
                v[i] = 1;
                v
            })
            .collect();
        let mut seen: std::collections::HashSet<Vec<i64>> = roots.iter().cloned().collect();
        let mut frontier = roots.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for beta in &frontier {
                for i in 0..r {
                    let pairing: i64 = (0..r).map(|j| beta[j] * cartan[j][i]).sum();
                    let mut p = 0;
                    let mut probe = beta.clone();
                    loop {
                        probe[i] -= 1;
                        if seen.contains(&probe) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let q = p - pairing;
                    if q > 0 {
                        let mut sum = beta.clone();
                        sum[i] += 1;
                        if seen.insert(sum.clone()) {
                            roots.push(sum.clone());
                            next.push(sum);
                        }
                    }
                }
            }
            frontier = next;
        }

        let mut positive_roots: Vec<Root> = roots.into_iter().map(Root::new).collect();
        // Non-decreasing height; ties broken by descending lexicographic order
        // so that alpha_1 precedes alpha_2 among the simple roots.
        positive_roots.sort_by(|a, b| a.height.cmp(&b.height).then_with(|| b.coords.cmp(&a.coords)));
        let index = positive_roots.iter().enumerate().map(|(i, rt)| (rt.coords.clone(), i)).collect();
        let simple_roots = cartan.iter().map(|row| Weight(row.clone())).collect();
        Ok(RootSystem {
            cartan_type: ty,
            cartan_matrix: cartan,
            simple_roots,
            positive_roots,
            rho: Weight(vec![1; r]),
            half_norms,
            index,
        })
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }

    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn height(&self, i: usize) -> i64 {
        self.positive_roots[i].height
    }

    pub fn max_height(&self) -> i64 {
        self.positive_roots.last().map_or(0, |r| r.height)
    }

    /// Index of a positive root given in simple-root coordinates.
    pub fn index_of(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    /// Whether `coords` is a root (positive or negative).
    pub fn is_root(&self, coords: &[i64]) -> bool {
        if self.index.contains_key(coords) {
            return true;
        }
        let neg: Vec<i64> = coords.iter().map(|c| -c).collect();
        self.index.contains_key(&neg)
    }

    /// Index of `alpha_i + alpha_j` if it is a positive root.
    pub fn sum_index(&self, i: usize, j: usize) -> Option<usize> {
        let s: Vec<i64> =
            self.positive_roots[i].coords.iter().zip(&self.positive_roots[j].coords).map(|(a, b)| a + b).collect();
        self.index_of(&s)
    }

    /// Converts simple-root coordinates to fundamental-weight coordinates.
    pub fn root_to_weight(&self, coords: &[i64]) -> Weight {
        let r = self.rank();
        Weight((0..r).map(|i| (0..r).map(|j| coords[j] * self.cartan_matrix[j][i]).sum()).collect())
    }

    pub fn root_weight(&self, i: usize) -> Weight {
        self.root_to_weight(&self.positive_roots[i].coords)
    }

    /// Sum of a subset of positive roots, in fundamental-weight coordinates.
    pub fn sum_of_subset(&self, subset: &[usize]) -> Weight {
        let mut acc = vec![0i64; self.rank()];
        for &i in subset {
            for (a, c) in acc.iter_mut().zip(&self.positive_roots[i].coords) {
                *a += c;
            }
        }
        self.root_to_weight(&acc)
    }

    /// Invariant form on simple-root coordinates, normalised to be integral.
    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        let r = self.rank();
        let mut s = 0;
        for i in 0..r {
            for j in 0..r {
                s += a[i] * self.cartan_matrix[i][j] * self.half_norms[j] * b[j];
            }
        }
        s
    }

    pub fn is_simply_laced(&self) -> bool {
        self.half_norms.iter().all(|&d| d == self.half_norms[0])
    }

    /// `<alpha^vee, rho>` for the positive root with index `i`.
    pub fn coroot_pairing_rho(&self, i: usize) -> i64 {
        let c = &self.positive_roots[i].coords;
        let num: i64 = 2 * c.iter().zip(&self.half_norms).map(|(a, d)| a * d).sum::<i64>();
        let den = self.inner(c, c);
        debug_assert_eq!(num % den, 0);
        num / den
    }

    /// Largest `p` such that `beta_j - p * beta_i` is a root.
    pub fn root_string_down(&self, i: usize, j: usize) -> i64 {
        let a = &self.positive_roots[i].coords;
        let mut probe = self.positive_roots[j].coords.clone();
        let mut p = 0;
        loop {
            for (x, y) in probe.iter_mut().zip(a) {
                *x -= y;
            }
            if self.is_root(&probe) {
                p += 1;
            } else {
                return p;
            }
        }
    }

    /// Smallest prime at which the torsion-freeness hypotheses (p >= 5, p >= h) hold.
    pub fn min_valid_prime(&self) -> u64 {
        let h = coxeter_number(self) as u64;
        let mut p = h.max(5);
        while !crate::arith::is_prime(p) {
            p += 1;
        }
        p
    }
}

/// Coxeter number `max <alpha^vee, rho> + 1` over the positive roots.
pub fn coxeter_number(rs: &RootSystem) -> i64 {
    (0..rs.num_positive()).map(|i| rs.coroot_pairing_rho(i)).max().unwrap_or(0) + 1
}

/// Classical number of positive roots.
pub fn classical_positive_count(ty: CartanType) -> usize {
    let r = ty.rank;
    match ty.label {
        TypeLabel::A => r * (r + 1) / 2,
        TypeLabel::B | TypeLabel::C => r * r,
        TypeLabel::D => r * (r - 1),
        TypeLabel::E => match r {
            6 => 36,
            7 => 63,
            _ => 120,
        },
        TypeLabel::F => 24,
        TypeLabel::G => 6,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_supported() -> Vec<RootSystem> {
        ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "G2"]
            .iter()
            .map(|s| RootSystem::from_type(s.parse().unwrap()).unwrap())
            .collect()
    }

    #[test]
    fn a2_roots() {
        let rs = RootSystem::build(TypeLabel::A, 2).unwrap();
        let coords: Vec<_> = rs.positive_roots.iter().map(|r| r.coords.clone()).collect();
        assert_eq!(coords, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        let heights: Vec<_> = rs.positive_roots.iter().map(|r| r.height).collect();
        assert_eq!(heights, vec![1, 1, 2]);
    }

    #[test]
    fn a1_single_root() {
        let rs = RootSystem::build(TypeLabel::A, 1).unwrap();
        assert_eq!(rs.positive_roots, vec![Root::new(vec![1])]);
    }

    #[test]
    fn b2_heights() {
        let rs = RootSystem::build(TypeLabel::B, 2).unwrap();
        let heights: Vec<_> = rs.positive_roots.iter().map(|r| r.height).collect();
        assert_eq!(heights, vec![1, 1, 2, 3]);
        assert_eq!(rs.positive_roots[3].coords, vec![2, 1]);
    }

    #[test]
    fn coxeter_numbers() {
        let h = |s: &str| coxeter_number(&RootSystem::from_type(s.parse().unwrap()).unwrap());
        assert_eq!(h("A1"), 2);
        assert_eq!(h("A2"), 3);
        assert_eq!(h("G2"), 6);
        assert_eq!(h("B3"), 6);
        assert_eq!(h("C3"), 6);
        assert_eq!(h("D4"), 6);
        assert_eq!(h("A4"), 5);
    }

    #[test]
    fn sum_of_subset_examples() {
        let rs = RootSystem::build(TypeLabel::A, 2).unwrap();
        assert_eq!(rs.sum_of_subset(&[]), Weight::zero(2));
        assert_eq!(rs.sum_of_subset(&[0, 1, 2]), rs.rho.scale(2));
        assert_eq!(rs.sum_of_subset(&[0]), rs.simple_roots[0]);
    }

    #[test]
    fn unsupported_types() {
        assert!(matches!(RootSystem::build(TypeLabel::E, 6), Err(Error::UnsupportedType(_))));
        assert!(matches!(RootSystem::build(TypeLabel::A, 5), Err(Error::UnsupportedType(_))));
        assert!(matches!(RootSystem::build(TypeLabel::G, 3), Err(Error::UnsupportedType(_))));
        assert!("Z9".parse::<CartanType>().is_err());
        let opts = BuildOptions { allow_large: true };
        let f4 = RootSystem::build_with("F4".parse().unwrap(), &opts).unwrap();
        assert_eq!(f4.num_positive(), 24);
        let e6 = RootSystem::build_with("E6".parse().unwrap(), &opts).unwrap();
        assert_eq!(e6.num_positive(), 36);
        assert_eq!(coxeter_number(&e6), 12);
    }

    #[test]
    fn structural_invariants() {
        for rs in all_supported() {
            let ty = rs.cartan_type;
            for i in 0..rs.rank() {
                assert_eq!(rs.cartan_matrix[i][i], 2);
                for j in 0..rs.rank() {
                    if i != j {
                        assert!(rs.cartan_matrix[i][j] <= 0);
                    }
                }
            }
            assert_eq!(rs.num_positive(), classical_positive_count(ty), "{ty}");
            for w in rs.positive_roots.windows(2) {
                assert!(w[0].height <= w[1].height);
            }
            let all: Vec<usize> = (0..rs.num_positive()).collect();
            assert_eq!(rs.sum_of_subset(&all), rs.rho.scale(2), "{ty}");
            for i in 0..rs.num_positive() {
                for j in 0..rs.num_positive() {
                    let s: Vec<i64> = rs.positive_roots[i]
                        .coords
                        .iter()
                        .zip(&rs.positive_roots[j].coords)
                        .map(|(a, b)| a + b)
                        .collect();
                    if rs.is_root(&s) {
                        let k = rs.index_of(&s).expect("closure");
                        assert_eq!(rs.height(k), rs.height(i) + rs.height(j));
                    }
                }
            }
            // The highest root realises the Coxeter number.
            assert_eq!(coxeter_number(&rs), rs.max_height() + 1, "{ty}");
            if rs.is_simply_laced() {
                for i in 0..rs.num_positive() {
                    assert_eq!(rs.coroot_pairing_rho(i), rs.height(i));
                }
            }
        }
    }

    #[test]
    fn coroot_pairing_is_coroot_height_in_b2() {
        // The short root alpha_1 + alpha_2 has coroot 2 alpha_1^vee + alpha_2^vee.
        let rs = RootSystem::build(TypeLabel::B, 2).unwrap();
        let i = rs.index_of(&[1, 1]).unwrap();
        assert_eq!(rs.height(i), 2);
        assert_eq!(rs.coroot_pairing_rho(i), 3);
    }
}
