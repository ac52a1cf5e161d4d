//! End-to-end cross-resonance effective Hamiltonian.
//!
//! dress -> drive frequency -> rotating frame + RWA -> ladder order ->
//! block-diagonalize on `{00,01}, {10,11}, {rest}` -> restore the control
//! frame -> project onto the computational states -> Pauli rates.

mod analytic;

pub use analytic::{qubit_analytic, qubit_rotating_hamiltonian, third_order_coefficients};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frames::{drive_frequency, dress, rwa_hamiltonian, CrosstalkSpec, DriveFrequencies, DriveSpec};
use crate::least_action::least_action_blockdiag;
use crate::linalg::{c, is_finite, submatrix, Mat};
use crate::operators::{decompose, reconstruct};
use crate::operators::{
    ladder_permutation, number_ops, quadratures, two_transmon_hamiltonian, BlockPartition, DeviceParams,
    HermitianOp, LadderOrder, Ordering, PauliLabel,
};
use crate::perturbation::{build_series, PerturbationProblem, DEFAULT_GAP_TOL};

/// Block-diagonalization back end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    Exact,
    Perturbative { order: usize },
}

impl Method {
    pub fn tag(self) -> MethodTag {
        match self {
            Method::Exact => MethodTag::Exact,
            Method::Perturbative { order } => MethodTag::Perturbative(order),
        }
    }
}

/// Where a [`PauliTable`] came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MethodTag {
    Exact,
    Perturbative(usize),
    AnalyticQubit,
    AnalyticThirdOrder,
}

/// Coefficients of `P/2` for all sixteen two-qubit Paulis (GHz).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PauliTable {
    pub coefficients: [f64; 16],
    pub method: MethodTag,
    /// Control drive amplitude.
    pub omega: f64,
    /// Control-target detuning.
    pub delta: f64,
}

impl PauliTable {
    pub fn zeros(method: MethodTag, omega: f64, delta: f64) -> Self {
        Self {
            coefficients: [0.0; 16],
            method,
            omega,
            delta,
        }
    }

    /// Decomposes a 4x4 computational-subspace Hamiltonian.
    pub fn from_hamiltonian(h: &Mat, method: MethodTag, omega: f64, delta: f64) -> Result<Self> {
        Ok(Self {
            coefficients: decompose(h)?,
            method,
            omega,
            delta,
        })
    }

    pub fn get(&self, label: PauliLabel) -> f64 {
        self.coefficients[label.index()]
    }

    /// Coefficient by name, e.g. `"ZX"`. Panics on a malformed label.
    pub fn coeff(&self, label: &str) -> f64 {
        self.get(label.parse().expect("valid two-qubit Pauli label"))
    }

    pub fn set(&mut self, label: &str, value: f64) {
        let l: PauliLabel = label.parse().expect("valid two-qubit Pauli label");
        self.coefficients[l.index()] = value;
    }

    /// Coefficient in MHz.
    pub fn mhz(&self, label: &str) -> f64 {
        self.coeff(label) * 1e3
    }

    /// `sum_P coeff_P P/2`.
    pub fn reconstruct(&self) -> Mat {
        reconstruct(&self.coefficients)
    }
}

/// Knobs of the end-to-end pipeline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PipelineOptions {
    /// Smallest gap tolerated in perturbative denominators and pole checks (GHz).
    pub gap_tol: f64,
    /// Split `{rest}` into one block per excitation manifold.
    pub split_rest: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        Self {
            gap_tol: DEFAULT_GAP_TOL,
            split_rest: false,
        }
    }
}

/// Everything the pipeline produces for one operating point.
#[derive(Debug, Clone)]
pub struct CrOutcome {
    pub table: PauliTable,
    /// `I(H_eff)`; only the exact back end computes it.
    pub effectiveness: Option<f64>,
    /// Block-diagonal `H_CR` in ladder order.
    pub h_cr: Mat,
    pub frequencies: DriveFrequencies,
    pub drive_frequency: f64,
}

/// Detunings where the perturbative coefficients diverge:
/// `0, -d1/2, -d1, -3 d1/2`.
pub fn perturbative_poles(delta1: f64) -> [(f64, &'static str); 4] {
    [
        (0.0, "D = 0 (qubits resonant)"),
        (-0.5 * delta1, "D = -delta1/2 (two-photon control 02 transition)"),
        (-delta1, "D = -delta1 (control 01 resonant with target 12)"),
        (-1.5 * delta1, "D = -3 delta1/2 (two-photon process)"),
    ]
}

/// Partition `{00,01}, {10,11}, {rest}` in ladder order.
pub fn cr_partition(order: &LadderOrder, split_rest: bool) -> Result<BlockPartition> {
    let dim = order.dim();
    let mut blocks = vec![vec![0, 1], vec![2, 3]];
    if dim > 4 {
        if split_rest {
            let mut manifolds: Vec<Vec<usize>> = Vec::new();
            let mut last = usize::MAX;
            for p in 4..dim {
                let (i1, i2) = order.state(p);
                if i1 + i2 != last {
                    manifolds.push(Vec::new());
                    last = i1 + i2;
                }
                manifolds.last_mut().expect("pushed above").push(p);
            }
            blocks.extend(manifolds);
        } else {
            blocks.push((4..dim).collect());
        }
    }
    BlockPartition::new(blocks, dim)
}

pub fn effective_cr(params: &DeviceParams, drive: &DriveSpec, method: Method) -> Result<PauliTable> {
    effective_cr_detailed(params, drive, method, &PipelineOptions::default()).map(|o| o.table)
}

pub fn effective_cr_detailed(
    params: &DeviceParams,
    drive: &DriveSpec,
    method: Method,
    options: &PipelineOptions,
) -> Result<CrOutcome> {
    params.validate()?;
    if !drive.is_finite() {
        return Err(Error::NonFinite("drive amplitudes"));
    }
    let delta = params.detuning();
    if let Method::Perturbative { order } = method {
        if order == 0 {
            return Err(Error::InvalidParameter("perturbative order must be at least 1".into()));
        }
        for (pole, name) in perturbative_poles(params.delta1) {
            if (delta - pole).abs() < options.gap_tol {
                return Err(Error::Pole {
                    resonance: name.to_string(),
                    value: delta - pole,
                });
            }
        }
    }

    let levels = params.levels;
    let hsys = two_transmon_hamiltonian(params)?;
    let [x1, x2] = quadratures(levels)?;
    let dressed = dress(&hsys, [&x1, &x2], levels)?;
    let frequencies = drive_frequency(&dressed);
    let omega_d = drive.frequency.unwrap_or(frequencies.target);
    let h_rwa = rwa_hamiltonian(&dressed, drive, omega_d)?;

    let order = ladder_permutation(levels)?;
    let h_ladder = HermitianOp::symmetrized(order.to_ladder(h_rwa.matrix()), Ordering::Ladder);
    let partition = cr_partition(&order, options.split_rest)?;

    let (h_eff, effectiveness) = match method {
        Method::Exact => {
            let result = least_action_blockdiag(&h_ladder, &partition)?;
            (result.h_eff.into_matrix(), Some(result.effectiveness))
        }
        Method::Perturbative { order: max_order } => {
            let m = h_ladder.matrix();
            let h0 = Mat::from_fn(m.nrows(), m.ncols(), |r, col| if r == col { m[(r, col)] } else { c(0.0) });
            let amplitude = drive.control_amplitude();
            let lambda = if amplitude > 0.0 { amplitude } else { 1.0 };
            let h1 = (m - &h0) * c(1.0 / lambda);
            let problem = PerturbationProblem::new(
                HermitianOp::new(h0, Ordering::Ladder)?,
                HermitianOp::symmetrized(h1, Ordering::Ladder),
                lambda,
                partition,
                max_order,
            )?
            .with_gap_tol(options.gap_tol);
            (build_series(&problem)?.h_eff(), None)
        }
    };

    let [n1, _] = number_ops(levels)?;
    let restore = order.to_ladder(&n1) * c(omega_d - frequencies.control);
    let h_cr = h_eff + restore;
    if !is_finite(&h_cr) {
        return Err(Error::NonFinite("effective Hamiltonian"));
    }
    let corner: Vec<usize> = (0..4).collect();
    let table = PauliTable::from_hamiltonian(
        &submatrix(&h_cr, &corner, &corner),
        method.tag(),
        drive.control_amplitude(),
        delta,
    )?;
    Ok(CrOutcome {
        table,
        effectiveness,
        h_cr,
        frequencies,
        drive_frequency: omega_d,
    })
}

/// Pipeline with the control drive `omega cos(w t + phi_c)` and cross-talk
/// `a omega cos(w t + phi_t)` on the target.
pub fn crosstalk_fit_eval(
    params: &DeviceParams,
    omega: f64,
    crosstalk: &CrosstalkSpec,
    method: Method,
) -> Result<PauliTable> {
    effective_cr(params, &DriveSpec::with_crosstalk(omega, crosstalk), method)
}

/// Exact least-action model of two ideal qubits, in the physical frame.
pub fn qubit_least_action(j: f64, delta: f64, omega: f64) -> Result<PauliTable> {
    let h = HermitianOp::new(qubit_rotating_hamiltonian(j, delta, omega), Ordering::Ladder)?;
    let partition = BlockPartition::contiguous(&[2, 2])?;
    let result = least_action_blockdiag(&h, &partition)?;
    let mut h_cr = result.h_eff.into_matrix();
    h_cr[(2, 2)] -= c(delta);
    h_cr[(3, 3)] -= c(delta);
    PauliTable::from_hamiltonian(&h_cr, MethodTag::Exact, omega, delta)
}
