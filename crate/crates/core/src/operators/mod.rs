//! Bosonic ladder operators, Duffing transmon Hamiltonians and the coupled
//! two-transmon system, plus the bookkeeping types (orderings, partitions,
//! Pauli projections) shared by every solver.

mod ladder;
mod partition;
mod pauli;

pub use ladder::{ladder_permutation, LadderOrder};
pub use partition::BlockPartition;
pub use pauli::{pauli_coefficient, Pauli, PauliLabel, PAULI_LABELS};
pub(crate) use pauli::{decompose, reconstruct};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, hermitian_defect, max_abs, symmetrize, Mat, C64};

/// Basis ordering of a two-transmon operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ordering {
    /// Index `i1 * d + i2`.
    Kron,
    /// Computational states first, then by total excitation.
    Ladder,
}

/// A dense Hermitian matrix tagged with the basis ordering it is expressed in.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOp {
    matrix: Mat,
    ordering: Ordering,
}

/// Relative tolerance on `max|M - M^dagger|` accepted by [`HermitianOp::new`].
pub const HERMITIAN_RTOL: f64 = 1e-12;

impl HermitianOp {
    /// Checks Hermiticity to `1e-12 * max|M|` and stores the symmetrized matrix.
    pub fn new(matrix: Mat, ordering: Ordering) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() || matrix.nrows() == 0 {
            return Err(Error::InvalidDimension {
                what: "Hermitian operator",
                dim: matrix.nrows(),
            });
        }
        let scale = max_abs(&matrix);
        let defect = hermitian_defect(&matrix);
        if defect > HERMITIAN_RTOL * scale {
            return Err(Error::NotHermitian { defect, scale });
        }
        Ok(Self {
            matrix: symmetrize(&matrix),
            ordering,
        })
    }

    /// Symmetrizes unconditionally. Used after frame transformations where
    /// round-off breaks Hermiticity slightly; the defect is logged.
    pub fn symmetrized(matrix: Mat, ordering: Ordering) -> Self {
        let defect = hermitian_defect(&matrix);
        if defect > 0.0 {
            log::debug!("symmetrizing operator, pre-symmetrization defect {defect:.3e}");
        }
        Self {
            matrix: symmetrize(&matrix),
            ordering,
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn into_matrix(self) -> Mat {
        self.matrix
    }

    pub fn ordering(&self) -> Ordering {
        self.ordering
    }
}

/// Physical parameters of two transmons coupled through a bus resonator.
///
/// All frequencies are cyclic (`omega / 2 pi`) in GHz. `omega1`/`omega2` are
/// used directly as the dressed transmon frequencies of the two-transmon model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeviceParams {
    pub omega1: f64,
    pub omega2: f64,
    pub delta1: f64,
    pub delta2: f64,
    pub g1: f64,
    pub g2: f64,
    pub omega_r: f64,
    /// Exchange coupling `J`.
    pub j: f64,
    /// Levels kept per transmon.
    pub levels: usize,
}

impl DeviceParams {
    /// Fixed-frequency device used throughout the tests and default configs:
    /// 5.114/4.914 GHz transmons, -330 MHz anharmonicity, 6.31 GHz bus and
    /// the exchange coupling `J = 3.8 MHz` calibrated from a 277 kHz static ZZ.
    pub fn benchmark() -> Self {
        Self {
            omega1: 5.114,
            omega2: 4.914,
            delta1: -0.330,
            delta2: -0.330,
            g1: 0.098,
            g2: 0.083,
            omega_r: 6.31,
            j: 3.8e-3,
            levels: 5,
        }
    }

    /// Control-target detuning `omega1 - omega2`.
    pub fn detuning(&self) -> f64 {
        self.omega1 - self.omega2
    }

    pub fn with_levels(mut self, levels: usize) -> Self {
        self.levels = levels;
        self
    }

    pub fn with_detuning(mut self, delta: f64) -> Self {
        self.omega1 = self.omega2 + delta;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.levels < 2 {
            return Err(Error::InvalidDimension {
                what: "transmon levels",
                dim: self.levels,
            });
        }
        let all = [
            self.omega1, self.omega2, self.delta1, self.delta2, self.g1, self.g2, self.omega_r, self.j,
        ];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("device parameters must be finite".into()));
        }
        Ok(())
    }

    /// `|g_j / (omega_j - omega_r)|` for both transmons. Values near or above
    /// one mean the dispersive approximation behind the model is poor.
    pub fn dispersive_ratios(&self) -> [f64; 2] {
        [
            (self.g1 / (self.omega1 - self.omega_r)).abs(),
            (self.g2 / (self.omega2 - self.omega_r)).abs(),
        ]
    }
}

/// Truncated annihilation operator, `b[k-1, k] = sqrt(k)`.
pub fn annihilation(levels: usize) -> Result<Mat> {
    check_levels(levels)?;
    let mut b = Mat::zeros(levels, levels);
    for k in 1..levels {
        b[(k - 1, k)] = c((k as f64).sqrt());
    }
    Ok(b)
}

/// Number operator `diag(0, 1, ..., d-1)`.
pub fn number(levels: usize) -> Result<Mat> {
    check_levels(levels)?;
    Ok(Mat::from_fn(levels, levels, |r, col| {
        if r == col {
            c(r as f64)
        } else {
            C64::new(0.0, 0.0)
        }
    }))
}

/// `omega n + delta/2 n(n-1)` on a `levels`-dimensional space.
pub fn duffing(omega: f64, delta: f64, levels: usize) -> Result<HermitianOp> {
    check_levels(levels)?;
    let m = Mat::from_fn(levels, levels, |r, col| {
        if r == col {
            let k = r as f64;
            c(k * omega + 0.5 * delta * k * (k - 1.0))
        } else {
            C64::new(0.0, 0.0)
        }
    });
    HermitianOp::new(m, Ordering::Kron)
}

/// Lowest-order bus-mediated exchange coupling.
pub fn exchange_j(params: &DeviceParams) -> Result<f64> {
    let d1 = params.omega1 - params.omega_r;
    let d2 = params.omega2 - params.omega_r;
    if d1 == 0.0 {
        return Err(Error::Pole {
            resonance: "transmon 1 resonant with bus".into(),
            value: d1,
        });
    }
    if d2 == 0.0 {
        return Err(Error::Pole {
            resonance: "transmon 2 resonant with bus".into(),
            value: d2,
        });
    }
    Ok(params.g1 * params.g2 * (params.omega1 + params.omega2 - 2.0 * params.omega_r) / (2.0 * d1 * d2))
}

/// `A (x) 1` and `1 (x) A` for a single-transmon operator.
pub fn embed(op: &Mat, levels: usize) -> (Mat, Mat) {
    let id = Mat::identity(levels, levels);
    (op.kronecker(&id), id.kronecker(op))
}

/// Drive quadratures `(b1 + b1^dagger) (x) 1` and `1 (x) (b2 + b2^dagger)`.
pub fn quadratures(levels: usize) -> Result<[Mat; 2]> {
    let b = annihilation(levels)?;
    let x = &b + b.adjoint();
    let (x1, x2) = embed(&x, levels);
    Ok([x1, x2])
}

/// Number operators `n1 (x) 1` and `1 (x) n2`.
pub fn number_ops(levels: usize) -> Result<[Mat; 2]> {
    let (n1, n2) = embed(&number(levels)?, levels);
    Ok([n1, n2])
}

/// Static two-transmon Hamiltonian in Kronecker order:
/// `duffing(omega1) (x) 1 + 1 (x) duffing(omega2) + J (b1^dagger b2 + b1 b2^dagger)`.
pub fn two_transmon_hamiltonian(params: &DeviceParams) -> Result<HermitianOp> {
    params.validate()?;
    let d = params.levels;
    let id = Mat::identity(d, d);
    let h1 = duffing(params.omega1, params.delta1, d)?.into_matrix();
    let h2 = duffing(params.omega2, params.delta2, d)?.into_matrix();
    let b = annihilation(d)?;
    let bd = b.adjoint();
    let hop = bd.kronecker(&b) + b.kronecker(&bd);
    let h = h1.kronecker(&id) + id.kronecker(&h2) + hop * c(params.j);
    HermitianOp::new(h, Ordering::Kron)
}

fn check_levels(levels: usize) -> Result<()> {
    if levels < 2 {
        return Err(Error::InvalidDimension {
            what: "transmon levels",
            dim: levels,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eigh;

    #[test]
    fn annihilation_small_cases() {
        let b2 = annihilation(2).unwrap();
        assert_eq!(b2, Mat::from_row_slice(2, 2, &[c(0.0), c(1.0), c(0.0), c(0.0)]));
        let b3 = annihilation(3).unwrap();
        assert_eq!(b3[(0, 1)], c(1.0));
        assert!((b3[(1, 2)].re - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(b3.iter().filter(|z| z.norm() != 0.0).count(), 2);
        assert!(matches!(annihilation(1), Err(Error::InvalidDimension { .. })));
    }

    #[test]
    fn number_operator_identity() {
        let b = annihilation(5).unwrap();
        let n = b.adjoint() * &b;
        assert!(max_abs(&(n - number(5).unwrap())) < 1e-14);
    }

    #[test]
    fn duffing_diagonals() {
        let (w, a) = (4.7, -0.25);
        let h = duffing(w, a, 3).unwrap();
        let expected = [0.0, w, 2.0 * w + a];
        for (k, e) in expected.iter().enumerate() {
            assert!((h.matrix()[(k, k)].re - e).abs() < 1e-15);
        }
        let h = duffing(5.114, -0.330, 2).unwrap();
        assert_eq!(h.matrix()[(1, 1)].re, 5.114);
        let h = duffing(1.0, -0.2, 4).unwrap();
        let expected = [0.0, 1.0, 1.8, 2.4];
        for (k, e) in expected.iter().enumerate() {
            assert!((h.matrix()[(k, k)].re - e).abs() < 1e-15);
        }
    }

    #[test]
    fn exchange_coupling_from_bus() {
        let p = DeviceParams::benchmark();
        // g1 g2 (w1 + w2 - 2 wr) / (2 (w1 - wr)(w2 - wr)), evaluated in extended precision.
        assert!((exchange_j(&p).unwrap() - (-6.313_825_454_475_76e-3)).abs() < 1e-12);
        assert_eq!(exchange_j(&DeviceParams { g1: 0.0, ..p }).unwrap(), 0.0);
        let symmetric = DeviceParams {
            omega1: 6.0,
            omega2: 6.62,
            ..p
        };
        assert!(exchange_j(&symmetric).unwrap().abs() < 1e-15);
        let resonant = DeviceParams { omega1: p.omega_r, ..p };
        assert!(matches!(exchange_j(&resonant), Err(Error::Pole { .. })));
    }

    #[test]
    fn decoupled_limit_is_diagonal() {
        let p = DeviceParams {
            j: 0.0,
            levels: 3,
            ..DeviceParams::benchmark()
        };
        let h = two_transmon_hamiltonian(&p).unwrap();
        let e1 = duffing(p.omega1, p.delta1, 3).unwrap();
        let e2 = duffing(p.omega2, p.delta2, 3).unwrap();
        for i1 in 0..3 {
            for i2 in 0..3 {
                let k = i1 * 3 + i2;
                assert_eq!(h.matrix()[(k, k)].re, e1.matrix()[(i1, i1)].re + e2.matrix()[(i2, i2)].re);
            }
        }
        assert!(crate::linalg::is_diagonal(h.matrix()));
    }

    #[test]
    fn qubit_coupling_only_between_01_and_10() {
        let p = DeviceParams::benchmark().with_levels(2);
        let h = two_transmon_hamiltonian(&p).unwrap();
        let m = h.matrix();
        for r in 0..4 {
            for col in 0..4 {
                if r != col {
                    let expected = if (r, col) == (1, 2) || (r, col) == (2, 1) { p.j } else { 0.0 };
                    assert_eq!(m[(r, col)].re, expected);
                }
            }
        }
    }

    #[test]
    fn coupled_spectrum_matches_explicit_assembly() {
        let p = DeviceParams::benchmark().with_levels(3);
        let h = two_transmon_hamiltonian(&p).unwrap();
        // Assemble entry by entry from the bosonic matrix elements.
        let d = 3;
        let mut explicit = Mat::zeros(9, 9);
        for i1 in 0..d {
            for i2 in 0..d {
                let k = i1 * d + i2;
                let (n1, n2) = (i1 as f64, i2 as f64);
                explicit[(k, k)] = c(n1 * p.omega1 + 0.5 * p.delta1 * n1 * (n1 - 1.0)
                    + n2 * p.omega2
                    + 0.5 * p.delta2 * n2 * (n2 - 1.0));
                // b1^dagger b2 |i1, i2> = sqrt((i1+1) i2) |i1+1, i2-1>
                if i1 + 1 < d && i2 >= 1 {
                    let t = (i1 + 1) * d + (i2 - 1);
                    let v = c(p.j * ((i1 + 1) as f64 * i2 as f64).sqrt());
                    explicit[(t, k)] = v;
                    explicit[(k, t)] = v;
                }
            }
        }
        let (a, _) = eigh(h.matrix()).unwrap();
        let (b, _) = eigh(&explicit).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn conserves_total_excitation() {
        let p = DeviceParams::benchmark();
        let h = two_transmon_hamiltonian(&p).unwrap();
        let [n1, n2] = number_ops(p.levels).unwrap();
        let n = n1 + n2;
        let comm = crate::linalg::commutator(h.matrix(), &n);
        assert!(max_abs(&comm) <= 1e-12 * max_abs(h.matrix()));
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = Mat::from_row_slice(2, 2, &[c(0.0), c(1.0), c(0.5), c(0.0)]);
        assert!(matches!(HermitianOp::new(m, Ordering::Kron), Err(Error::NotHermitian { .. })));
    }
}
