//! Order-by-order canonical transformation `e^{iS}` with block-diagonality
//! enforced at every order.
//!
//! With `H = H0 + lambda H1` and `S = sum_m lambda^m S_m`, the transformed
//! Hamiltonian expands as `sum_m lambda^m H^(m)` where
//!
//! ```text
//! H^(m) = f_m(S, H0) + f_{m-1}(S, H1),
//! f_j(S, A) = sum over ordered compositions (j_1..j_b) of j of
//!             (i^b / b!) [S_{j_1}, [S_{j_2}, ... [S_{j_b}, A]...]]
//! ```
//!
//! The only term of `H^(m)` containing `S_m` is `i[S_m, H0]`; everything else
//! is collected in `H_x^(m)`. `S_m` (off-block, Hermitian) is chosen so that
//! `i[S_m, H0]` cancels the off-block part of `H_x^(m)`, leaving
//! `H^(m) = blockdiag(H_x^(m))`.

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::linalg::{c, commutator, eigh, is_diagonal, is_finite, max_abs, submatrix, symmetrize, Mat, C64, I};
use crate::operators::{BlockPartition, HermitianOp};

/// Default smallest energy gap tolerated in a generator denominator (GHz).
pub const DEFAULT_GAP_TOL: f64 = 1e-9;

/// All ordered compositions of `k` into positive parts, in descending
/// lexicographic order: `3 -> (3), (2,1), (1,2), (1,1,1)`.
pub fn compositions(k: usize) -> Vec<Vec<usize>> {
    fn extend(remaining: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=remaining).rev() {
            prefix.push(part);
            extend(remaining - part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if k > 0 {
        extend(k, &mut Vec::new(), &mut out);
    }
    out
}

fn factorial(b: usize) -> f64 {
    (1..=b).map(|v| v as f64).product()
}

/// `(i^b / b!) [S_{j1}, [S_{j2}, ..., [S_{jb}, A]...]]`. `generators[0]` is `S_1`.
pub fn nested_commutator_term(parts: &[usize], generators: &[Mat], a: &Mat) -> Result<Mat> {
    let mut acc = a.clone();
    for &j in parts.iter().rev() {
        let s = j.checked_sub(1).and_then(|k| generators.get(k)).ok_or(Error::MissingGenerator(j))?;
        acc = commutator(s, &acc);
    }
    let b = parts.len();
    Ok(acc * (I.powu(b as u32) / c(factorial(b))))
}

/// `f_j(S, A)`; `f_0(A) = A`.
pub fn f_order(generators: &[Mat], a: &Mat, j: usize) -> Result<Mat> {
    if j == 0 {
        return Ok(a.clone());
    }
    compositions(j)
        .iter()
        .try_fold(Mat::zeros(a.nrows(), a.ncols()), |acc, parts| {
            Ok(acc + nested_commutator_term(parts, generators, a)?)
        })
}

/// `H_x^(m)`: every contribution to `H^(m)` except `i[S_m, H0]`.
pub fn collect_hx(generators: &[Mat], h0: &Mat, h1: &Mat, m: usize) -> Result<Mat> {
    let mut hx = f_order(generators, h1, m - 1)?;
    for parts in compositions(m).iter().filter(|p| p.len() > 1) {
        hx += nested_commutator_term(parts, generators, h0)?;
    }
    Ok(hx)
}

/// Solves `H0_jj S_jk - S_jk H0_kk = -i Hx_jk` for every off-block pair and
/// returns the assembled Hermitian, off-block generator.
///
/// Diagonal `H0` uses the closed form `S_pq = -i Hx_pq / (E_p - E_q)`;
/// otherwise each block pair is solved through the vectorized Sylvester system.
pub fn solve_generator(h0: &Mat, hx: &Mat, partition: &BlockPartition, gap_tol: f64) -> Result<Mat> {
    let s = if is_diagonal(h0) {
        solve_generator_diagonal(h0, hx, partition, gap_tol)?
    } else {
        solve_generator_sylvester(h0, hx, partition, gap_tol)?
    };
    if !is_finite(&s) {
        return Err(Error::NonFinite("generator"));
    }
    Ok(symmetrize(&s))
}

fn negligible(z: C64, scale: f64) -> bool {
    z.norm() <= 1e-15 * scale
}

pub fn solve_generator_diagonal(h0: &Mat, hx: &Mat, partition: &BlockPartition, gap_tol: f64) -> Result<Mat> {
    let n = h0.nrows();
    let scale = max_abs(hx);
    let mut s = Mat::zeros(n, n);
    for p in 0..n {
        for q in 0..n {
            if partition.same_block(p, q) || hx[(p, q)] == C64::new(0.0, 0.0) {
                continue;
            }
            let (ep, eq) = (h0[(p, p)].re, h0[(q, q)].re);
            if (ep - eq).abs() < gap_tol {
                if negligible(hx[(p, q)], scale) {
                    continue;
                }
                return Err(Error::SmallDenominator {
                    left: p,
                    right: q,
                    e_left: ep,
                    e_right: eq,
                });
            }
            s[(p, q)] = -I * hx[(p, q)] / c(ep - eq);
        }
    }
    Ok(s)
}

/// Block-pair solve via `(A (x) 1 - 1 (x) C^T) vec(B) = vec(D)` with
/// row-major `vec(|a><b|) = |a> (x) |b>`.
pub fn solve_generator_sylvester(h0: &Mat, hx: &Mat, partition: &BlockPartition, gap_tol: f64) -> Result<Mat> {
    let n = h0.nrows();
    let mut s = Mat::zeros(n, n);
    let spectra: Vec<Vec<f64>> = partition
        .blocks()
        .iter()
        .map(|b| eigh(&submatrix(h0, b, b)).map(|(v, _)| v))
        .collect::<Result<_>>()?;
    for (j, rows) in partition.blocks().iter().enumerate() {
        for (k, cols) in partition.blocks().iter().enumerate() {
            if j == k {
                continue;
            }
            let d = submatrix(hx, rows, cols) * (-I);
            if d.iter().all(|z| *z == C64::new(0.0, 0.0)) {
                continue;
            }
            for (p, &ep) in spectra[j].iter().enumerate() {
                for (q, &eq) in spectra[k].iter().enumerate() {
                    if (ep - eq).abs() < gap_tol {
                        return Err(Error::SmallDenominator {
                            left: rows[p.min(rows.len() - 1)],
                            right: cols[q.min(cols.len() - 1)],
                            e_left: ep,
                            e_right: eq,
                        });
                    }
                }
            }
            let a = submatrix(h0, rows, rows);
            let cmat = submatrix(h0, cols, cols);
            let (nj, nk) = (rows.len(), cols.len());
            let system = a.kronecker(&Mat::identity(nk, nk)) - Mat::identity(nj, nj).kronecker(&cmat.transpose());
            let rhs = DVector::from_iterator(nj * nk, (0..nj).flat_map(|r| (0..nk).map(move |col| (r, col))).map(|(r, col)| d[(r, col)]));
            let solution = system.lu().solve(&rhs).ok_or(Error::SingularSystem)?;
            for r in 0..nj {
                for col in 0..nk {
                    s[(rows[r], cols[col])] = solution[r * nk + col];
                }
            }
        }
    }
    Ok(s)
}

/// `H = H0 + lambda H1` with `H0` block-diagonal for `partition`.
#[derive(Debug, Clone)]
pub struct PerturbationProblem {
    pub h0: HermitianOp,
    pub h1: HermitianOp,
    pub lambda: f64,
    pub partition: BlockPartition,
    pub max_order: usize,
    pub gap_tol: f64,
}

impl PerturbationProblem {
    pub fn new(h0: HermitianOp, h1: HermitianOp, lambda: f64, partition: BlockPartition, max_order: usize) -> Result<Self> {
        if h0.dim() != h1.dim() || h0.dim() != partition.dim() {
            return Err(Error::DimensionMismatch {
                expected: h0.dim(),
                got: if h1.dim() != h0.dim() { h1.dim() } else { partition.dim() },
            });
        }
        if max_order == 0 {
            return Err(Error::InvalidParameter("max_order must be at least 1".into()));
        }
        if !partition.is_block_diagonal(h0.matrix()) {
            return Err(Error::InvalidParameter("H0 has off-block entries".into()));
        }
        if !lambda.is_finite() {
            return Err(Error::NonFinite("order parameter"));
        }
        Ok(Self {
            h0,
            h1,
            lambda,
            partition,
            max_order,
            gap_tol: DEFAULT_GAP_TOL,
        })
    }

    pub fn with_gap_tol(mut self, gap_tol: f64) -> Self {
        self.gap_tol = gap_tol;
        self
    }
}

/// Terms `H^(0..=max_order)` and generators `S_1..S_max_order`.
#[derive(Debug, Clone)]
pub struct PerturbationSeries {
    pub terms: Vec<Mat>,
    pub generators: Vec<Mat>,
    pub lambda: f64,
    /// Off-block magnitude of `i[S_m, H0] + H_x^(m)` before projection, per order.
    pub residuals: Vec<f64>,
}

impl PerturbationSeries {
    pub fn max_order(&self) -> usize {
        self.terms.len() - 1
    }

    /// `sum_{k <= m} lambda^k H^(k)`.
    pub fn h_eff_at(&self, m: usize) -> Mat {
        let m = m.min(self.max_order());
        self.terms
            .iter()
            .take(m + 1)
            .enumerate()
            .fold(Mat::zeros(self.terms[0].nrows(), self.terms[0].ncols()), |acc, (k, t)| {
                acc + t * c(self.lambda.powi(k as i32))
            })
    }

    pub fn h_eff(&self) -> Mat {
        self.h_eff_at(self.max_order())
    }

    /// `S = sum_m lambda^m S_m` truncated at the series order.
    pub fn total_generator(&self) -> Mat {
        self.generators
            .iter()
            .enumerate()
            .fold(Mat::zeros(self.terms[0].nrows(), self.terms[0].ncols()), |acc, (k, s)| {
                acc + s * c(self.lambda.powi(k as i32 + 1))
            })
    }
}

pub fn build_series(problem: &PerturbationProblem) -> Result<PerturbationSeries> {
    let h0 = problem.h0.matrix();
    let h1 = problem.h1.matrix();
    let partition = &problem.partition;
    let mut terms = vec![h0.clone()];
    let mut generators: Vec<Mat> = Vec::with_capacity(problem.max_order);
    let mut residuals = Vec::with_capacity(problem.max_order);
    for m in 1..=problem.max_order {
        let hx = collect_hx(&generators, h0, h1, m)?;
        let off = partition.off_block_part(&hx);
        let s = solve_generator(h0, &off, partition, problem.gap_tol)?;
        let full = commutator(&s, h0) * I + &hx;
        residuals.push(partition.max_off_block(&full));
        let term = symmetrize(&partition.block_diagonal_part(&full));
        if !is_finite(&term) {
            return Err(Error::NonFinite("perturbation term"));
        }
        terms.push(term);
        generators.push(s);
    }
    Ok(PerturbationSeries {
        terms,
        generators,
        lambda: problem.lambda,
        residuals,
    })
}
