#![allow(dead_code)]

use nilcoh_core::linalg::IntMatrix;
use nilcoh_core::specseq::FilteredComplex;
use rand::Rng;

/// A filtered complex assembled from known pieces, then disguised by
/// random filtration-preserving changes of basis. The pieces determine
/// every page: a class at `(n, a)` survives forever; a pair from level `a`
/// in degree `n` to level `b >= a` in degree `n + 1` survives exactly the
/// pages `E_1 ..= E_{b-a}`.
pub struct PlantedComplex {
    pub p: u32,
    pub dims: Vec<usize>,
    pub len: usize,
    pub classes: Vec<(usize, usize)>,
    pub pairs: Vec<(usize, usize, usize)>,
    pub matrices: Vec<Vec<Vec<i64>>>,
    pub filtration: Vec<Vec<Vec<Vec<i64>>>>,
}

impl PlantedComplex {
    pub fn build(&self) -> FilteredComplex {
        FilteredComplex::new(self.p, self.dims.clone(), &self.matrices, &self.filtration).unwrap()
    }

    /// `table[n][level]` on page `r`; `None` gives `E_infinity`.
    pub fn expected_page(&self, r: Option<usize>) -> Vec<Vec<usize>> {
        let mut t = vec![vec![0usize; self.len]; self.dims.len()];
        for &(n, a) in &self.classes {
            t[n][a] += 1;
        }
        for &(n, a, b) in &self.pairs {
            if r.is_some_and(|r| b - a >= r) {
                t[n][a] += 1;
                t[n + 1][b] += 1;
            }
        }
        t
    }

    pub fn expected_cohomology(&self) -> Vec<usize> {
        let mut h = vec![0; self.dims.len()];
        for &(n, _) in &self.classes {
            h[n] += 1;
        }
        h
    }
}

fn invertible_pair<R: Rng>(rng: &mut R, n: usize, p: i64) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let mut inv = m.clone();
    for _ in 0..3 * n * n {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            let s = rng.gen_range(1..p);
            let s_inv = (1..p).find(|&t| t * s % p == 1).unwrap();
            for c in 0..n {
                m[i][c] = m[i][c] * s % p;
                inv[c][i] = inv[c][i] * s_inv % p;
            }
        } else {
            let c = rng.gen_range(1..p);
            // m <- (I + c e_ij) m, inv <- inv (I - c e_ij)
            for t in 0..n {
                m[i][t] = (m[i][t] + c * m[j][t]) % p;
                inv[t][j] = (inv[t][j] - c * inv[t][i]).rem_euclid(p);
            }
        }
    }
    (m, inv)
}

fn matmul(a: &[Vec<i64>], b: &[Vec<i64>], p: i64) -> Vec<Vec<i64>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).map(|t| row[t] * b[t][j]).sum::<i64>().rem_euclid(p)).collect())
        .collect()
}

pub fn random_planted_complex<R: Rng>(
    rng: &mut R,
    p: u32,
    max_degrees: usize,
    max_dim: usize,
    max_steps: usize,
) -> PlantedComplex {
    let degrees = rng.gen_range(1..=max_degrees);
    let len = rng.gen_range(1..=max_steps);
    let mut levels: Vec<Vec<usize>> = vec![Vec::new(); degrees];
    let mut classes = Vec::new();
    let mut pairs = Vec::new();
    let mut edges: Vec<(usize, usize, usize, i64)> = Vec::new();
    for n in 0..degrees {
        let room = max_dim - levels[n].len();
        for _ in 0..rng.gen_range(0..=room.min(3)) {
            let a = rng.gen_range(0..len);
            levels[n].push(a);
            classes.push((n, a));
        }
        if n + 1 < degrees {
            let room = (max_dim - levels[n].len()).min(max_dim - levels[n + 1].len()).min(3);
            for _ in 0..rng.gen_range(0..=room) {
                let a = rng.gen_range(0..len);
                let b = rng.gen_range(a..len);
                levels[n].push(a);
                levels[n + 1].push(b);
                pairs.push((n, a, b));
                edges.push((n, levels[n].len() - 1, levels[n + 1].len() - 1, rng.gen_range(1..p as i64)));
            }
        }
    }
    let dims: Vec<usize> = levels.iter().map(Vec::len).collect();
    let pi = p as i64;
    let bases: Vec<_> = dims.iter().map(|&d| invertible_pair(rng, d, pi)).collect();
    let mut matrices = Vec::new();
    for n in 0..degrees.saturating_sub(1) {
        let mut d = vec![vec![0i64; dims[n]]; dims[n + 1]];
        for &(m, s, t, c) in &edges {
            if m == n {
                d[t][s] = c;
            }
        }
        let conj = matmul(&matmul(&bases[n + 1].0, &d, pi), &bases[n].1, pi);
        matrices.push(conj);
    }
    let filtration = (0..degrees)
        .map(|n| {
            let p_n = &bases[n].0;
            (0..len)
                .map(|r| {
                    let mut span: Vec<Vec<i64>> = (0..dims[n])
                        .filter(|&i| levels[n][i] >= r)
                        .map(|i| (0..dims[n]).map(|row| p_n[row][i]).collect())
                        .collect();
                    if span.len() >= 2 {
                        let c = rng.gen_range(1..pi);
                        let extra: Vec<i64> = (0..dims[n]).map(|t| (span[0][t] + c * span[1][t]) % pi).collect();
                        span.push(extra);
                    }
                    span
                })
                .collect()
        })
        .collect();
    PlantedComplex { p, dims, len, classes, pairs, matrices, filtration }
}

pub fn random_int_matrix<R: Rng>(rng: &mut R, max: usize, bound: i64) -> IntMatrix {
    let rows = rng.gen_range(0..=max);
    let cols = rng.gen_range(0..=max);
    let sparse = rng.gen_bool(0.5);
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| {
            (0..cols).map(|_| if sparse && rng.gen_bool(0.6) { 0 } else { rng.gen_range(-bound..=bound) }).collect()
        })
        .collect();
    let mut m = IntMatrix::zeros(rows, cols);
    for (i, r) in data.iter().enumerate() {
        for (j, &x) in r.iter().enumerate() {
            m.set(i, j, x);
        }
    }
    m
}
