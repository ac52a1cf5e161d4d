//! Exact block-diagonalization under the principle of least action.
//!
//! Given `H` with eigenvector matrix `X` (columns relabelled so that each
//! eigenvector sits on a basis state of the block it overlaps most), the
//! unitary closest to the identity that block-diagonalizes `H` is
//!
//! ```text
//! T = X X_BD^dagger (X_BD X_BD^dagger)^(-1/2)
//! ```
//!
//! where `X_BD` keeps only the block-diagonal entries of `X`. The effective
//! Hamiltonian `T^dagger H T` has the spectrum of `H` and support only on
//! the blocks.

use crate::error::{Error, Result};
use crate::linalg::{c, eigh, inv_sqrt_hpd, max_abs, submatrix, symmetrize, Mat, C64};
use crate::operators::{BlockPartition, HermitianOp};

/// Two eigenvectors whose overlaps with the contested block differ by less
/// than this are considered indistinguishable.
pub const ASSIGNMENT_TOL: f64 = 1e-6;

/// Smallest eigenvalue of `X_BD X_BD^dagger` accepted before the partition
/// is declared ill-conditioned.
pub const SINGULARITY_FLOOR: f64 = 1e-12;

/// Eigenvectors of `H` labelled by basis state.
#[derive(Debug, Clone)]
pub struct EigenAssignment {
    /// Column `k` is the eigenvector assigned to basis state `k`.
    pub vectors: Mat,
    /// Eigenvalue of each column.
    pub eigenvalues: Vec<f64>,
    /// `overlaps[k][a] = |P_a x_k|^2` for column `k`.
    pub overlaps: Vec<Vec<f64>>,
    /// Smallest overlap of a column with its own block.
    pub min_overlap: f64,
}

/// Full result of a least-action block-diagonalization.
#[derive(Debug, Clone)]
pub struct BlockDiagResult {
    pub h_eff: HermitianOp,
    /// Block-diagonalizing unitary, `h_eff = T^dagger H T`.
    pub transform: Mat,
    /// `tr(X_BD X_BD^dagger) / dim`.
    pub effectiveness: f64,
    /// Largest off-block magnitude of `T^dagger H T` before it was discarded.
    pub residual: f64,
    pub assignment: EigenAssignment,
}

/// Diagonalizes `h` and assigns each eigenvector to the block carrying most
/// of its weight, filling every block with exactly as many eigenvectors as
/// it has basis states.
pub fn assign_eigenvectors(h: &HermitianOp, partition: &BlockPartition) -> Result<EigenAssignment> {
    let n = h.dim();
    if partition.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: partition.dim(),
        });
    }
    let (values, mut vectors) = eigh(h.matrix())?;
    resolve_degenerate_clusters(&values, &mut vectors, partition, max_abs(h.matrix()))?;

    let nblocks = partition.len();
    let overlaps: Vec<Vec<f64>> = (0..n)
        .map(|j| {
            (0..nblocks)
                .map(|a| partition.block(a).iter().map(|&r| vectors[(r, j)].norm_sqr()).sum())
                .collect()
        })
        .collect();

    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..nblocks).map(move |a| (j, a))).collect();
    pairs.sort_by(|&(j1, a1), &(j2, a2)| {
        overlaps[j2][a2]
            .total_cmp(&overlaps[j1][a1])
            .then(j1.cmp(&j2))
            .then(a1.cmp(&a2))
    });

    let mut capacity: Vec<usize> = partition.blocks().iter().map(Vec::len).collect();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for (j, a) in pairs {
        if owner[j].is_some() || capacity[a] == 0 {
            continue;
        }
        if capacity[a] == 1 {
            let w = overlaps[j][a];
            if let Some(rival) =
                (0..n).find(|&k| k != j && owner[k].is_none() && (overlaps[k][a] - w).abs() < ASSIGNMENT_TOL)
            {
                return Err(Error::DegenerateAssignment {
                    block: a,
                    first: w,
                    second: overlaps[rival][a],
                    overlaps,
                });
            }
        }
        owner[j] = Some(a);
        capacity[a] -= 1;
    }

    let mut x = Mat::zeros(n, n);
    let mut eigenvalues = vec![0.0; n];
    let mut column_overlaps = vec![Vec::new(); n];
    let mut min_overlap = f64::INFINITY;
    for a in 0..nblocks {
        let mut members: Vec<usize> = (0..n).filter(|&j| owner[j] == Some(a)).collect();
        members.sort_by(|&p, &q| values[p].total_cmp(&values[q]).then(p.cmp(&q)));
        for (&slot, &j) in partition.block(a).iter().zip(&members) {
            let phase = gauge_phase(&vectors, j, partition.block(a));
            for r in 0..n {
                x[(r, slot)] = vectors[(r, j)] * phase;
            }
            eigenvalues[slot] = values[j];
            min_overlap = min_overlap.min(overlaps[j][a]);
            column_overlaps[slot] = overlaps[j].clone();
        }
    }

    Ok(EigenAssignment {
        vectors: x,
        eigenvalues,
        overlaps: column_overlaps,
        min_overlap,
    })
}

/// Phase making the largest component of column `j` inside `block` real positive.
fn gauge_phase(vectors: &Mat, j: usize, block: &[usize]) -> C64 {
    let pivot = block
        .iter()
        .copied()
        .max_by(|&p, &q| vectors[(p, j)].norm().total_cmp(&vectors[(q, j)].norm()))
        .expect("blocks are nonempty");
    let z = vectors[(pivot, j)];
    if z.norm() == 0.0 {
        c(1.0)
    } else {
        z.conj() / z.norm()
    }
}

/// Rotates each degenerate eigenspace so its basis vectors are as
/// block-pure as possible: the cluster is diagonalized against the operator
/// `sum_a (a + 1) P_a` restricted to it.
fn resolve_degenerate_clusters(values: &[f64], vectors: &mut Mat, partition: &BlockPartition, scale: f64) -> Result<()> {
    let n = values.len();
    let tol = 1e-11 * scale.max(f64::MIN_POSITIVE);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && values[end] - values[end - 1] <= tol {
            end += 1;
        }
        if end - start > 1 {
            let cols: Vec<usize> = (start..end).collect();
            let rows: Vec<usize> = (0..n).collect();
            let q = submatrix(vectors, &rows, &cols);
            let weight = Mat::from_fn(n, n, |r, col| {
                if r == col {
                    c((partition.owner(r) + 1) as f64)
                } else {
                    C64::new(0.0, 0.0)
                }
            });
            let g = symmetrize(&(q.adjoint() * weight * &q));
            let (_, rotation) = eigh(&g)?;
            let rotated = q * rotation;
            for (k, &col) in cols.iter().enumerate() {
                vectors.set_column(col, &rotated.column(k));
            }
        }
        start = end;
    }
    Ok(())
}

/// Block-diagonal projection of `x` with respect to `partition`.
pub fn block_projection(x: &Mat, partition: &BlockPartition) -> Mat {
    partition.block_diagonal_part(x)
}

/// `I(H_eff) = tr(X_BD X_BD^dagger) / dim`, the fraction of eigenvector
/// weight that survives projection onto the blocks.
pub fn effectiveness_metric(x_bd: &Mat) -> f64 {
    let n = x_bd.nrows();
    if n == 0 {
        return 0.0;
    }
    x_bd.iter().map(|z| z.norm_sqr()).sum::<f64>() / n as f64
}

pub fn least_action_blockdiag(h: &HermitianOp, partition: &BlockPartition) -> Result<BlockDiagResult> {
    let assignment = assign_eigenvectors(h, partition)?;
    let x = &assignment.vectors;
    let x_bd = block_projection(x, partition);
    let x_p = symmetrize(&(&x_bd * x_bd.adjoint()));
    let root = inv_sqrt_hpd(&x_p, SINGULARITY_FLOOR)?;
    let transform = x * x_bd.adjoint() * root;
    let raw = transform.adjoint() * h.matrix() * &transform;
    let residual = partition.max_off_block(&raw);
    let h_eff = HermitianOp::symmetrized(partition.block_diagonal_part(&raw), h.ordering());
    Ok(BlockDiagResult {
        h_eff,
        transform,
        effectiveness: effectiveness_metric(&x_bd),
        residual,
        assignment,
    })
}
