use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::int::IntMatrix;

/// `u * m * v = diag(invariant_factors, 0, ...)` with `u`, `v` unimodular.
#[derive(Debug, Clone)]
pub struct SnfResult {
    /// Positive invariant factors `d_1 | d_2 | ...`; zeros are omitted.
    pub invariant_factors: Vec<BigInt>,
    pub u: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// The full `rows x cols` diagonal matrix.
    pub fn diagonal(&self, rows: usize, cols: usize) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); cols]; rows];
        for (i, f) in self.invariant_factors.iter().enumerate() {
            d[i][i] = f.clone();
        }
        d
    }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

struct Calc {
    a: Vec<Vec<BigInt>>,
    u: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
    rows: usize,
    cols: usize,
}

impl Calc {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.a {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    /// row_i += q * row_j
    fn add_row(&mut self, i: usize, j: usize, q: &BigInt) {
        for c in 0..self.cols {
            let t = &self.a[j][c] * q;
            self.a[i][c] += t;
        }
        if let Some(u) = &mut self.u {
            for c in 0..self.rows {
                let t = &u[j][c] * q;
                u[i][c] += t;
            }
        }
    }

    /// col_i += q * col_j
    fn add_col(&mut self, i: usize, j: usize, q: &BigInt) {
        for r in 0..self.rows {
            let t = &self.a[r][j] * q;
            self.a[r][i] += t;
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                let t = &row[j] * q;
                row[i] += t;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -&*x;
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[i] {
                *x = -&*x;
            }
        }
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                if self.a[i][j].is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| self.a[i][j].abs() < self.a[bi][bj].abs()) {
                    best = Some((i, j));
                    if self.a[i][j].abs().is_one() {
                        return best;
                    }
                }
            }
        }
        best
    }

    fn run(&mut self) -> Vec<BigInt> {
        let n = self.rows.min(self.cols);
        let mut factors = Vec::new();
        for t in 0..n {
            let Some((pi, pj)) = self.min_entry(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..self.rows {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = -self.a[i][t].div_floor(&self.a[t][t]);
                    self.add_row(i, t, &q);
                    if !self.a[i][t].is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..self.cols {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = -self.a[t][j].div_floor(&self.a[t][t]);
                    self.add_col(j, t, &q);
                    if !self.a[t][j].is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    // A smaller remainder exists in row/column t; move it to the pivot.
                    let (bi, bj) = self.min_in_cross(t);
                    self.swap_rows(t, bi);
                    self.swap_cols(t, bj);
                    continue;
                }
                // Divisibility: every remaining entry must be a multiple of the pivot.
                let pivot = self.a[t][t].clone();
                let bad =
                    (t + 1..self.rows).find(|&i| (t + 1..self.cols).any(|j| !self.a[i][j].is_multiple_of(&pivot)));
                match bad {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            factors.push(self.a[t][t].clone());
        }
        factors
    }

    fn min_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t);
        for i in t..self.rows {
            if !self.a[i][t].is_zero() && self.a[i][t].abs() < self.a[best.0][best.1].abs() {
                best = (i, t);
            }
        }
        for j in t..self.cols {
            if !self.a[t][j].is_zero() && self.a[t][j].abs() < self.a[best.0][best.1].abs() {
                best = (t, j);
            }
        }
        best
    }
}

/// Exact Smith normal form with unimodular transforms.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    smith_normal_form_big(m.to_big(), m.rows, m.cols)
}

pub fn smith_normal_form_big(a: Vec<Vec<BigInt>>, rows: usize, cols: usize) -> SnfResult {
    let mut calc = Calc { a, u: Some(identity(rows)), v: Some(identity(cols)), rows, cols };
    let invariant_factors = calc.run();
    SnfResult { invariant_factors, u: calc.u.unwrap(), v: calc.v.unwrap() }
}

/// Invariant factors only, skipping the transforms.
pub fn smith_normal_form_diagonal(m: &IntMatrix) -> Vec<BigInt> {
    let mut calc = Calc { a: m.to_big(), u: None, v: None, rows: m.rows, cols: m.cols };
    calc.run()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int::{big_mul, is_unimodular};

    fn check(m: &IntMatrix) -> Vec<BigInt> {
        let r = smith_normal_form(m);
        let prod = big_mul(&big_mul(&r.u, &m.to_big()), &r.v);
        assert_eq!(prod, r.diagonal(m.rows, m.cols));
        assert!(is_unimodular(&r.u) && is_unimodular(&r.v));
        for w in r.invariant_factors.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        assert_eq!(smith_normal_form_diagonal(m), r.invariant_factors);
        r.invariant_factors
    }

    #[test]
    fn identity_matrix() {
        let f = check(&IntMatrix::identity(3));
        assert_eq!(f, vec![BigInt::one(); 3]);
    }

    #[test]
    fn two_by_two() {
        let f = check(&IntMatrix::from_rows(&[vec![2, 4], vec![0, 6]]));
        assert_eq!(f, vec![BigInt::from(2), BigInt::from(6)]);
    }

    #[test]
    fn zero_matrix() {
        assert!(check(&IntMatrix::zeros(3, 4)).is_empty());
        assert!(check(&IntMatrix::zeros(0, 4)).is_empty());
    }

    #[test]
    fn needs_divisibility_fix() {
        // diag(2, 3) is not in Smith form; the answer is diag(1, 6).
        let f = check(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(f, vec![BigInt::one(), BigInt::from(6)]);
        let f = check(&IntMatrix::from_rows(&[vec![6, 4, 0], vec![2, 8, 10], vec![0, 0, 0]]));
        assert_eq!(f, vec![BigInt::from(2), BigInt::from(10)]);
    }
}
