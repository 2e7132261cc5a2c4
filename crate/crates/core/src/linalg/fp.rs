//! Vectors, matrices and subspaces over a prime field `F_p`.

/// Dense matrix over `F_p`, row-major rows; acts on column vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    pub p: u32,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<u32>>,
}

#[inline]
pub fn reduce(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

#[inline]
fn inv(a: u32, p: u32) -> u32 {
    // Fermat: a^(p-2)
    let mut base = a as u64;
    let mut e = p as u64 - 2;
    let m = p as u64;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc as u32
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix { p, rows, cols, data: vec![vec![0; cols]; rows] }
    }

    pub fn from_i64_rows(p: u32, rows: usize, cols: usize, src: &[Vec<i64>]) -> Self {
        let mut m = Self::zeros(p, rows, cols);
        for (i, r) in src.iter().enumerate() {
            for (j, &x) in r.iter().enumerate() {
                m.data[i][j] = reduce(x, p);
            }
        }
        m
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        self.data
            .iter()
            .map(|row| (row.iter().zip(v).map(|(&a, &b)| (a as u64) * (b as u64)).sum::<u64>() % p) as u32)
            .collect()
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows);
        let p = self.p as u64;
        let mut out = FpMatrix::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.data[i][t] as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i][j] = ((out.data[i][j] as u64 + a * other.data[t][j] as u64) % p) as u32;
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(|&x| x == 0))
    }

    pub fn rank(&self) -> usize {
        Subspace::span(self.p, self.cols, self.data.iter().cloned()).dim()
    }
}

/// Subspace of `F_p^n` held as a reduced row-echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    pub p: u32,
    pub ambient: usize,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(p: u32, ambient: usize) -> Self {
        Subspace { p, ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(p: u32, ambient: usize) -> Self {
        let mut s = Self::zero(p, ambient);
        for i in 0..ambient {
            let mut e = vec![0; ambient];
            e[i] = 1;
            s.insert(e);
        }
        s
    }

    pub fn span(p: u32, ambient: usize, vectors: impl IntoIterator<Item = Vec<u32>>) -> Self {
        let mut s = Self::zero(p, ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    /// Reduces `v` modulo the subspace; the result is zero iff `v` lies in it.
    /// The reduction is linear in `v`.
    pub fn reduce(&self, v: &mut [u32]) {
        let p = self.p as u64;
        for (b, &piv) in self.basis.iter().zip(&self.pivots) {
            let c = v[piv] as u64;
            if c == 0 {
                continue;
            }
            let f = p - c;
            for (x, &y) in v.iter_mut().zip(b) {
                if y != 0 {
                    *x = ((*x as u64 + f * y as u64) % p) as u32;
                }
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, mut v: Vec<u32>) -> bool {
        debug_assert_eq!(v.len(), self.ambient);
        self.reduce(&mut v);
        let Some(piv) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let p = self.p as u64;
        let s = inv(v[piv], self.p) as u64;
        for x in v.iter_mut() {
            *x = ((*x as u64 * s) % p) as u32;
        }
        // Keep the basis fully reduced.
        for b in &mut self.basis {
            let c = b[piv] as u64;
            if c != 0 {
                let f = p - c;
                for (x, &y) in b.iter_mut().zip(&v) {
                    if y != 0 {
                        *x = ((*x as u64 + f * y as u64) % p) as u32;
                    }
                }
            }
        }
        let pos = self.pivots.partition_point(|&q| q < piv);
        self.pivots.insert(pos, piv);
        self.basis.insert(pos, v);
        true
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for b in &other.basis {
            s.insert(b.clone());
        }
        s
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    /// Zassenhaus intersection.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let n = self.ambient;
        let mut big = Subspace::zero(self.p, 2 * n);
        for b in &self.basis {
            let mut v = b.clone();
            v.extend_from_slice(b);
            big.insert(v);
        }
        for b in &other.basis {
            let mut v = b.clone();
            v.extend(std::iter::repeat_n(0, n));
            big.insert(v);
        }
        let mut out = Subspace::zero(self.p, n);
        for b in &big.basis {
            if b[..n].iter().all(|&x| x == 0) {
                out.insert(b[n..].to_vec());
            }
        }
        out
    }

    /// Image under `m` (which maps `F_p^ambient` to `F_p^{m.rows}`).
    pub fn image(&self, m: &FpMatrix) -> Subspace {
        Subspace::span(self.p, m.rows, self.basis.iter().map(|b| m.apply(b)))
    }

    /// `{x in self : m x in target}`.
    pub fn preimage(&self, m: &FpMatrix, target: &Subspace) -> Subspace {
        let residuals: Vec<Vec<u32>> = self
            .basis
            .iter()
            .map(|b| {
                let mut r = m.apply(b);
                target.reduce(&mut r);
                r
            })
            .collect();
        let p = self.p as u64;
        let mut out = Subspace::zero(self.p, self.ambient);
        for y in left_kernel(self.p, &residuals, m.rows) {
            let mut x = vec![0u32; self.ambient];
            for (c, b) in y.iter().zip(&self.basis) {
                if *c == 0 {
                    continue;
                }
                for (xi, &bi) in x.iter_mut().zip(b) {
                    *xi = ((*xi as u64 + *c as u64 * bi as u64) % p) as u32;
                }
            }
            out.insert(x);
        }
        out
    }

    /// Solutions `x` of `b . x = 0` for every basis row `b`.
    pub fn null_space(&self) -> Vec<Vec<u32>> {
        let p = self.p;
        let mut out = Vec::new();
        let mut k = 0;
        for free in 0..self.ambient {
            if k < self.pivots.len() && self.pivots[k] == free {
                k += 1;
                continue;
            }
            let mut x = vec![0u32; self.ambient];
            x[free] = 1;
            for (b, &piv) in self.basis.iter().zip(&self.pivots) {
                if b[free] != 0 {
                    x[piv] = p - b[free];
                }
            }
            out.push(x);
        }
        out
    }

    /// Kernel of `m` restricted to this subspace.
    pub fn kernel_of(&self, m: &FpMatrix) -> Subspace {
        self.preimage(m, &Subspace::zero(self.p, m.rows))
    }
}

/// All `y` with `sum_i y_i rows[i] = 0`, as a basis.
pub fn left_kernel(p: u32, rows: &[Vec<u32>], width: usize) -> Vec<Vec<u32>> {
    let k = rows.len();
    let mut aug = Subspace::zero(p, width + k);
    let mut out = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let mut v = r.clone();
        v.extend((0..k).map(|j| u32::from(i == j)));
        aug.insert(v);
    }
    for b in aug.basis() {
        if b[..width].iter().all(|&x| x == 0) {
            out.push(b[width..].to_vec());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_and_intersection() {
        let p = 5;
        let u = Subspace::span(p, 3, [vec![1, 0, 0], vec![0, 1, 0]]);
        let w = Subspace::span(p, 3, [vec![0, 1, 0], vec![0, 0, 1]]);
        let i = u.intersect(&w);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&[0, 3, 0]));
        assert_eq!(u.sum(&w).dim(), 3);
        assert!(!u.contains(&[1, 1, 1]));
    }

    #[test]
    fn preimage_and_kernel() {
        let p = 7;
        // m: (x, y, z) -> (x + y, 0)
        let m = FpMatrix::from_i64_rows(p, 2, 3, &[vec![1, 1, 0], vec![0, 0, 0]]);
        let full = Subspace::full(p, 3);
        let k = full.kernel_of(&m);
        assert_eq!(k.dim(), 2);
        assert!(k.contains(&[1, 6, 0]));
        let target = Subspace::span(p, 2, [vec![1, 0]]);
        assert_eq!(full.preimage(&m, &target).dim(), 3);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn null_space_solves_rows() {
        let p = 5;
        let rows = Subspace::span(p, 4, [vec![1, 2, 0, 3], vec![0, 1, 1, 4]]);
        let ns = rows.null_space();
        assert_eq!(ns.len(), 2);
        for x in &ns {
            for b in rows.basis() {
                let dot: u32 = b.iter().zip(x).map(|(a, c)| a * c).sum::<u32>() % p;
                assert_eq!(dot, 0);
            }
        }
        assert_eq!(Subspace::span(p, 4, ns).dim(), 2);
    }
}
