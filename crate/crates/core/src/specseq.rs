//! Spectral sequence of a finitely filtered cochain complex over `F_p`.
//!
//! Entries are indexed by filtration level `p` and total degree `n`;
//! the conventional `(p, q)` position is `(p, n - p)`.

use serde::{Deserialize, Serialize};

use crate::cecohomology::CochainComplex;
use crate::error::{Error, Result};
use crate::linalg::fp::{FpMatrix, Subspace};
use crate::nilpotent::NilpotentLieAlgebra;

/// Cochain complex `C^0 -> C^1 -> ... -> C^top` over `F_p` with a descending
/// filtration per degree, `F^0 = C^n` and `F^len = 0`.
#[derive(Debug, Clone)]
pub struct FilteredComplex {
    pub p: u32,
    pub dims: Vec<usize>,
    /// `differentials[n]: C^n -> C^{n+1}`, `dims[n+1] x dims[n]`; the last is `0 x dims[top]`.
    pub differentials: Vec<FpMatrix>,
    /// `levels[n][r] = F^r C^n` for `0 <= r <= len`.
    levels: Vec<Vec<Subspace>>,
    len: usize,
}

/// JSON input: `matrices[n]` is `d_n` as a list of rows; `filtration[n][r]`
/// spans `F^r C^n`. Missing trailing zero levels are implied.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FilteredComplexSpec {
    #[serde(default = "default_prime")]
    pub p: u32,
    #[serde(default)]
    pub dims: Option<Vec<usize>>,
    pub matrices: Vec<Vec<Vec<i64>>>,
    pub filtration: Vec<Vec<Vec<Vec<i64>>>>,
}

fn default_prime() -> u32 {
    5
}

impl FilteredComplex {
    /// Builds and validates from integer data reduced mod `p`.
    pub fn new(
        p: u32,
        dims: Vec<usize>,
        matrices: &[Vec<Vec<i64>>],
        filtration: &[Vec<Vec<Vec<i64>>>],
    ) -> Result<Self> {
        if !crate::arith::is_prime(p as u64) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        let top = dims.len().checked_sub(1).ok_or_else(|| Error::InvalidInput("no degrees".into()))?;
        if matrices.len() != top && matrices.len() != top + 1 {
            return Err(Error::InvalidInput(format!("expected {top} differentials, got {}", matrices.len())));
        }
        let mut differentials = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let rows = if n < top { dims[n + 1] } else { 0 };
            let src = matrices.get(n).map(Vec::as_slice).unwrap_or(&[]);
            if n < top && (src.len() != rows || src.iter().any(|r| r.len() != dims[n])) {
                return Err(Error::InvalidInput(format!("d_{n} must be {rows} x {}", dims[n])));
            }
            differentials.push(FpMatrix::from_i64_rows(p, rows, dims[n], if n < top { src } else { &[] }));
        }
        if filtration.len() != dims.len() {
            return Err(Error::InvalidFiltration(format!(
                "filtration given for {} of {} degrees",
                filtration.len(),
                dims.len()
            )));
        }
        let mut levels = Vec::with_capacity(dims.len());
        for (n, spans) in filtration.iter().enumerate() {
            let mut chain = Vec::with_capacity(spans.len() + 1);
            for (r, span) in spans.iter().enumerate() {
                if span.iter().any(|v| v.len() != dims[n]) {
                    return Err(Error::InvalidFiltration(format!("F^{r} C^{n}: vectors must have length {}", dims[n])));
                }
                chain.push(Subspace::span(
                    p,
                    dims[n],
                    span.iter().map(|v| v.iter().map(|&x| crate::linalg::fp::reduce(x, p)).collect()),
                ));
            }
            if chain.is_empty() {
                chain.push(Subspace::full(p, dims[n]));
            }
            levels.push(chain);
        }
        let len = levels.iter().map(|c| c.len()).max().unwrap_or(1).max(1);
        for (n, chain) in levels.iter_mut().enumerate() {
            if chain[0].dim() != dims[n] {
                return Err(Error::InvalidFiltration(format!("F^0 C^{n} is not all of C^{n}")));
            }
            while chain.len() <= len {
                chain.push(Subspace::zero(p, dims[n]));
            }
            if chain[len].dim() != 0 {
                return Err(Error::InvalidFiltration(format!("filtration of C^{n} does not reach 0")));
            }
            for r in 1..chain.len() {
                if !chain[r].is_subspace_of(&chain[r - 1]) {
                    return Err(Error::InvalidFiltration(format!("F^{r} C^{n} is not contained in F^{} C^{n}", r - 1)));
                }
            }
        }
        let c = FilteredComplex { p, dims, differentials, levels, len };
        for n in 0..top {
            if !c.differentials[n + 1].mul(&c.differentials[n]).is_zero() {
                return Err(Error::InvalidInput(format!("d_{} d_{n} != 0", n + 1)));
            }
            for r in 0..=len {
                let image = c.levels[n][r].image(&c.differentials[n]);
                if !image.is_subspace_of(&c.levels[n + 1][r]) {
                    return Err(Error::InvalidFiltration(format!("d_{n} does not preserve F^{r}")));
                }
            }
        }
        Ok(c)
    }

    pub fn from_spec(spec: &FilteredComplexSpec) -> Result<Self> {
        let dims = match &spec.dims {
            Some(d) => d.clone(),
            None => {
                if spec.matrices.is_empty() {
                    return Err(Error::InvalidInput("dims are required when there are no matrices".into()));
                }
                let mut d: Vec<usize> = spec.matrices.iter().map(|m| m.first().map_or(0, Vec::len)).collect();
                d.push(spec.matrices.last().unwrap().len());
                d
            }
        };
        Self::new(spec.p, dims, &spec.matrices, &spec.filtration)
    }

    /// Filtration by total root height: `F^r` is spanned by the monomials whose
    /// roots have height sum at least `r`.
    pub fn weight_height(l: &NilpotentLieAlgebra, c: &CochainComplex, p: u32) -> Result<Self> {
        let heights: Vec<usize> = l.basis.iter().map(|b| l.root_system.height(b.root) as usize).collect();
        let mono_height = |mask: u32| -> usize { (0..32).filter(|i| mask >> i & 1 == 1).map(|i| heights[i]).sum() };
        let max_h: usize = heights.iter().sum();
        let dims: Vec<usize> = c.basis.iter().map(Vec::len).collect();
        let filtration: Vec<Vec<Vec<Vec<i64>>>> = c
            .basis
            .iter()
            .map(|b| {
                (0..=max_h)
                    .map(|r| {
                        b.iter()
                            .enumerate()
                            .filter(|(_, &m)| mono_height(m) >= r)
                            .map(|(i, _)| {
                                let mut v = vec![0i64; b.len()];
                                v[i] = 1;
                                v
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let matrices: Vec<Vec<Vec<i64>>> = c.differential.iter().map(|d| d.to_rows()).collect();
        Self::new(p, dims, &matrices, &filtration)
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    /// Number of filtration steps: `F^len = 0` in every degree.
    pub fn filtration_length(&self) -> usize {
        self.len
    }

    /// `F^r C^n`, extended by `C^n` below 0 and by 0 above the length.
    pub fn level(&self, n: usize, r: i64) -> Subspace {
        if r <= 0 {
            self.levels[n][0].clone()
        } else if r as usize >= self.len {
            Subspace::zero(self.p, self.dims[n])
        } else {
            self.levels[n][r as usize].clone()
        }
    }

    /// `{x in F^r C^n : dx in F^{r+s} C^{n+1}}`.
    fn cycles(&self, n: usize, r: i64, s: i64) -> Subspace {
        let f = self.level(n, r);
        if n == self.top_degree() {
            return f;
        }
        f.preimage(&self.differentials[n], &self.level(n + 1, r + s))
    }

    fn kernel(&self, n: usize) -> Subspace {
        Subspace::full(self.p, self.dims[n]).kernel_of(&self.differentials[n])
    }

    fn boundaries(&self, n: usize) -> Subspace {
        if n == 0 {
            Subspace::zero(self.p, self.dims[0])
        } else {
            Subspace::full(self.p, self.dims[n - 1]).image(&self.differentials[n - 1])
        }
    }

    /// Unfiltered `dim H^n`.
    pub fn cohomology_dims(&self) -> Vec<usize> {
        (0..=self.top_degree())
            .map(|n| {
                self.dims[n] - self.differentials[n].rank() - if n > 0 { self.differentials[n - 1].rank() } else { 0 }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SSEntry {
    pub level: usize,
    pub complement: i64,
    pub degree: usize,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SSPage {
    /// Page index; `None` for `E_infinity`.
    pub r: Option<usize>,
    /// Nonzero entries ordered by degree, then level.
    pub entries: Vec<SSEntry>,
    /// Total dimension per degree.
    pub totals: Vec<usize>,
    /// Whether the page already equals `E_infinity`.
    pub stable: bool,
}

impl SSPage {
    pub fn dim(&self, level: usize, degree: usize) -> usize {
        self.entries.iter().find(|e| e.level == level && e.degree == degree).map_or(0, |e| e.dim)
    }

    fn from_table(r: Option<usize>, table: Vec<Vec<usize>>) -> Self {
        let mut entries = Vec::new();
        for (n, row) in table.iter().enumerate() {
            for (level, &dim) in row.iter().enumerate() {
                if dim > 0 {
                    entries.push(SSEntry { level, complement: n as i64 - level as i64, degree: n, dim });
                }
            }
        }
        SSPage { r, totals: table.iter().map(|row| row.iter().sum()).collect(), entries, stable: false }
    }
}

fn page_table(c: &FilteredComplex, r: usize) -> Vec<Vec<usize>> {
    let r = r as i64;
    (0..=c.top_degree())
        .map(|n| {
            (0..c.len as i64)
                .map(|p| {
                    let z = c.cycles(n, p, r);
                    let mut denom = c.cycles(n, p + 1, r - 1);
                    if n > 0 {
                        let src = c.cycles(n - 1, p - r + 1, r - 1);
                        denom = denom.sum(&src.image(&c.differentials[n - 1]));
                    }
                    z.dim() - denom.intersect(&z).dim()
                })
                .collect()
        })
        .collect()
}

fn infinity_table(c: &FilteredComplex) -> Vec<Vec<usize>> {
    (0..=c.top_degree())
        .map(|n| {
            let z = c.kernel(n);
            let b = c.boundaries(n);
            (0..c.len as i64)
                .map(|p| {
                    let zp = c.level(n, p).intersect(&z);
                    let zp1 = c.level(n, p + 1).intersect(&z);
                    let bp = c.level(n, p).intersect(&b);
                    zp.dim() - zp1.sum(&bp).dim()
                })
                .collect()
        })
        .collect()
}

/// `E_infinity` from cycles and boundaries meeting the filtration.
pub fn e_infinity(c: &FilteredComplex) -> SSPage {
    let mut page = SSPage::from_table(None, infinity_table(c));
    page.stable = true;
    page
}

/// Pages `E_1 ..= E_up_to`; `E_1` is the homology of the associated graded.
pub fn pages(c: &FilteredComplex, up_to: usize) -> Vec<SSPage> {
    let inf = infinity_table(c);
    (1..=up_to.max(1))
        .map(|r| {
            let table = page_table(c, r);
            let stable = table == inf;
            let mut page = SSPage::from_table(Some(r), table);
            page.stable = stable;
            page
        })
        .collect()
}

/// First page equal to `E_infinity`; at most the filtration length.
pub fn stabilization_page(c: &FilteredComplex) -> usize {
    let inf = infinity_table(c);
    (1..=c.len.max(1)).find(|&r| page_table(c, r) == inf).unwrap_or(c.len.max(1))
}

/// Dimensions of `F^p H^n / F^{p+1} H^n` for the induced filtration,
/// `gr[n][p]`.
pub fn gr_of_cohomology(c: &FilteredComplex) -> Vec<Vec<usize>> {
    (0..=c.top_degree())
        .map(|n| {
            let z = c.kernel(n);
            let b = c.boundaries(n);
            let image = |p: i64| c.level(n, p).intersect(&z).sum(&b).dim();
            (0..c.len as i64).map(|p| image(p) - image(p + 1)).collect()
        })
        .collect()
}

pub fn pages_as_table(page: &SSPage, c: &FilteredComplex) -> Vec<Vec<usize>> {
    (0..=c.top_degree()).map(|n| (0..c.len).map(|p| page.dim(p, n)).collect()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CollapseCertificate {
    pub certified: bool,
    pub first_mismatch: Option<usize>,
}

/// Certifies degeneration when the first-page totals already equal the
/// abutment dimensions in every degree.
pub fn collapse_certificate(e1_total: &[usize], target: &[usize]) -> CollapseCertificate {
    let n = e1_total.len().max(target.len());
    let first_mismatch = (0..n).find(|&q| e1_total.get(q).copied().unwrap_or(0) != target.get(q).copied().unwrap_or(0));
    CollapseCertificate { certified: first_mismatch.is_none(), first_mismatch }
}
