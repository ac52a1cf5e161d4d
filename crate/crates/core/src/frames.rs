//! Dressing of the static two-transmon Hamiltonian, the rotating frame at
//! the drive frequency, and the rotating-wave approximation of the drive.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::least_action::least_action_blockdiag;
use crate::linalg::{c, diag_real, from_real_diagonal, Mat, C64};
use crate::operators::{number_ops, BlockPartition, HermitianOp, Ordering};

/// Constant-amplitude drive on both transmon quadratures at a common frequency.
///
/// `omega_x[k] cos(w t) + omega_y[k] sin(w t)` multiplies `b_k + b_k^dagger`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DriveSpec {
    pub omega_x: [f64; 2],
    pub omega_y: [f64; 2],
    /// Overrides the dressed-target drive frequency when set.
    pub frequency: Option<f64>,
}

/// Classical cross-talk: a copy of the control drive, scaled by `a` and
/// phase-lagged by `phi_t`, lands on the target.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrosstalkSpec {
    pub a: f64,
    pub phi_c: f64,
    pub phi_t: f64,
}

impl CrosstalkSpec {
    pub fn new(a: f64, phi_c: f64, phi_t: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&a) {
            return Err(Error::InvalidParameter(format!("cross-talk scale must lie in [0, 1], got {a}")));
        }
        if !phi_c.is_finite() || !phi_t.is_finite() {
            return Err(Error::InvalidParameter("cross-talk phases must be finite".into()));
        }
        Ok(Self { a, phi_c, phi_t })
    }

    pub fn none() -> Self {
        Self {
            a: 0.0,
            phi_c: 0.0,
            phi_t: 0.0,
        }
    }
}

impl DriveSpec {
    /// X-quadrature drive of amplitude `omega` on the control only.
    pub fn control_x(omega: f64) -> Self {
        Self {
            omega_x: [omega, 0.0],
            omega_y: [0.0, 0.0],
            frequency: None,
        }
    }

    /// `omega cos(w t + phi_c)` on the control plus `a omega cos(w t + phi_t)`
    /// on the target, expressed through the quadrature amplitudes.
    pub fn with_crosstalk(omega: f64, crosstalk: &CrosstalkSpec) -> Self {
        Self {
            omega_x: [omega * crosstalk.phi_c.cos(), crosstalk.a * omega * crosstalk.phi_t.cos()],
            omega_y: [-omega * crosstalk.phi_c.sin(), -crosstalk.a * omega * crosstalk.phi_t.sin()],
            frequency: None,
        }
    }

    /// Control drive amplitude `|omega_x1 + i omega_y1|`.
    pub fn control_amplitude(&self) -> f64 {
        self.omega_x[0].hypot(self.omega_y[0])
    }

    pub fn is_finite(&self) -> bool {
        self.omega_x.iter().chain(&self.omega_y).all(|v| v.is_finite()) && self.frequency.map_or(true, f64::is_finite)
    }
}

/// Static Hamiltonian diagonalized with bare-state labels kept.
#[derive(Debug, Clone)]
pub struct DressedSystem {
    /// Dressing unitary `U`, `H_tilde = U^dagger H U`.
    pub unitary: Mat,
    /// Diagonal dressed Hamiltonian, Kronecker order.
    pub h_tilde: HermitianOp,
    /// `U^dagger (b_k + b_k^dagger) U`.
    pub b_tilde: [Mat; 2],
    pub levels: usize,
}

impl DressedSystem {
    /// Dressed energy of the state labelled `|i1 i2>`.
    pub fn energy(&self, i1: usize, i2: usize) -> f64 {
        let k = i1 * self.levels + i2;
        self.h_tilde.matrix()[(k, k)].re
    }
}

/// Diagonalizes `hsys0` by least action with singleton blocks, i.e. with
/// each dressed state labelled by the bare state it overlaps most.
pub fn dress(hsys0: &HermitianOp, quadratures: [&Mat; 2], levels: usize) -> Result<DressedSystem> {
    let dim = levels * levels;
    if hsys0.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: hsys0.dim(),
        });
    }
    let result = least_action_blockdiag(hsys0, &BlockPartition::singletons(dim))?;
    let u = result.transform;
    let b_tilde = quadratures.map(|x| u.adjoint() * x * &u);
    let h_tilde = HermitianOp::new(from_real_diagonal(&diag_real(result.h_eff.matrix())), Ordering::Kron)?;
    Ok(DressedSystem {
        unitary: u,
        h_tilde,
        b_tilde,
        levels,
    })
}

/// Static ZZ rate `-2 J^2 (d1 + d2) / ((D + d1)(d2 - D))`.
pub fn xi_static(j: f64, delta1: f64, delta2: f64, detuning: f64) -> Result<f64> {
    let (a, b) = xi_denominators(delta1, delta2, detuning)?;
    Ok(-2.0 * j * j * (delta1 + delta2) / (a * b))
}

/// Positive `J` reproducing a measured static ZZ rate `xi`.
pub fn j_from_xi(xi: f64, delta1: f64, delta2: f64, detuning: f64) -> Result<f64> {
    let (a, b) = xi_denominators(delta1, delta2, detuning)?;
    if delta1 + delta2 == 0.0 {
        return Err(Error::Domain("d1 + d2 = 0 leaves xi independent of J".into()));
    }
    let j2 = -xi * a * b / (2.0 * (delta1 + delta2));
    if j2 < 0.0 || !j2.is_finite() {
        return Err(Error::Domain(format!("xi = {xi} implies J^2 = {j2} < 0 for these anharmonicities")));
    }
    Ok(j2.sqrt())
}

fn xi_denominators(delta1: f64, delta2: f64, detuning: f64) -> Result<(f64, f64)> {
    let a = detuning + delta1;
    let b = delta2 - detuning;
    if a == 0.0 {
        return Err(Error::Pole {
            resonance: "D = -delta1 (control 01 resonant with target 12)".into(),
            value: a,
        });
    }
    if b == 0.0 {
        return Err(Error::Pole {
            resonance: "D = delta2 (control 12 resonant with target 01)".into(),
            value: b,
        });
    }
    Ok((a, b))
}

/// Drive frequencies read off the dressed spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveFrequencies {
    /// Target transition averaged over control states.
    pub target: f64,
    /// Control transition averaged over target states.
    pub control: f64,
}

pub fn drive_frequency(dressed: &DressedSystem) -> DriveFrequencies {
    let e = |a, b| dressed.energy(a, b);
    DriveFrequencies {
        target: 0.5 * (e(1, 1) - e(1, 0) + e(0, 1) - e(0, 0)),
        control: 0.5 * (e(1, 1) - e(0, 1) + e(1, 0) - e(0, 0)),
    }
}

/// `H_tilde - omega_d (n1 + n2)`.
pub fn rotating_frame_drift(h_tilde: &HermitianOp, omega_d: f64, levels: usize) -> Result<HermitianOp> {
    let [n1, n2] = number_ops(levels)?;
    Ok(HermitianOp::symmetrized(h_tilde.matrix() - (n1 + n2) * c(omega_d), Ordering::Kron))
}

/// Total excitation `i1 + i2` of each Kronecker index.
fn excitations(levels: usize) -> Vec<i64> {
    (0..levels * levels).map(|k| (k / levels + k % levels) as i64).collect()
}

/// Rotating-wave drive: only entries changing the total excitation by one
/// survive, raising entries weighted by `(Ox - i Oy)/2`, lowering entries by
/// `(Ox + i Oy)/2`.
pub fn rwa_drive(dressed: &DressedSystem, drive: &DriveSpec) -> HermitianOp {
    let n = dressed.levels * dressed.levels;
    let exc = excitations(dressed.levels);
    let raise: [C64; 2] = [0, 1].map(|k| C64::new(drive.omega_x[k], -drive.omega_y[k]) * 0.5);
    let m = Mat::from_fn(n, n, |r, col| match exc[r] - exc[col] {
        1 => raise[0] * dressed.b_tilde[0][(r, col)] + raise[1] * dressed.b_tilde[1][(r, col)],
        -1 => raise[0].conj() * dressed.b_tilde[0][(r, col)] + raise[1].conj() * dressed.b_tilde[1][(r, col)],
        _ => C64::new(0.0, 0.0),
    });
    HermitianOp::symmetrized(m, Ordering::Kron)
}

/// Full rotating-frame Hamiltonian `drift + RWA drive`, Kronecker order.
pub fn rwa_hamiltonian(dressed: &DressedSystem, drive: &DriveSpec, omega_d: f64) -> Result<HermitianOp> {
    let drift = rotating_frame_drift(&dressed.h_tilde, omega_d, dressed.levels)?;
    let drv = rwa_drive(dressed, drive);
    Ok(HermitianOp::symmetrized(drift.matrix() + drv.matrix(), Ordering::Kron))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hermitian_defect, max_abs};
    use crate::operators::{quadratures, two_transmon_hamiltonian, DeviceParams};

    fn dressed(p: &DeviceParams) -> DressedSystem {
        let h = two_transmon_hamiltonian(p).unwrap();
        let [x1, x2] = quadratures(p.levels).unwrap();
        dress(&h, [&x1, &x2], p.levels).unwrap()
    }

    #[test]
    fn dressed_zz_matches_static_rate_to_fourth_order() {
        // E11 - E10 - E01 + E00 against the closed form; the mismatch is
        // O(J^4), so halving J must shrink the relative error about 4x.
        let rel = |j: f64| {
            let p = DeviceParams { j, ..DeviceParams::benchmark() };
            let d = dressed(&p);
            let zeta = d.energy(1, 1) - d.energy(1, 0) - d.energy(0, 1) + d.energy(0, 0);
            let xi = xi_static(j, p.delta1, p.delta2, p.detuning()).unwrap();
            (zeta - xi).abs() / xi
        };
        let (full, half) = (rel(3.8e-3), rel(1.9e-3));
        assert!(full < 0.01, "relative mismatch {full}");
        assert!((full / half - 4.0).abs() < 0.2, "ratio {}", full / half);
        let qubit = dressed(&DeviceParams::benchmark().with_levels(2));
        let zeta = qubit.energy(1, 1) - qubit.energy(1, 0) - qubit.energy(0, 1) + qubit.energy(0, 0);
        assert!(zeta.abs() < 1e-13);
    }

    #[test]
    fn decoupled_dressing_is_trivial() {
        let p = DeviceParams {
            j: 0.0,
            ..DeviceParams::benchmark().with_levels(3)
        };
        let d = dressed(&p);
        assert!(max_abs(&(&d.unitary - Mat::identity(9, 9))) < 1e-12);
        let [x1, x2] = quadratures(3).unwrap();
        assert!(max_abs(&(&d.b_tilde[0] - x1)) < 1e-12);
        assert!(max_abs(&(&d.b_tilde[1] - x2)) < 1e-12);
    }

    #[test]
    fn dressing_is_unitary_and_label_preserving() {
        let p = DeviceParams::benchmark();
        let d = dressed(&p);
        let n = p.levels * p.levels;
        assert!(max_abs(&(d.unitary.adjoint() * &d.unitary - Mat::identity(n, n))) < 1e-12);
        for k in 0..n {
            assert!(d.unitary[(k, k)].norm_sqr() > 0.5);
        }
        assert!(crate::linalg::is_diagonal(d.h_tilde.matrix()));
    }

    #[test]
    fn calibration_of_exchange_coupling() {
        let j = j_from_xi(277e-6, -0.330, -0.330, 0.200).unwrap();
        assert!((j - 3.80e-3).abs() < 0.02e-3, "J = {j}");
        assert_eq!(xi_static(0.0, -0.33, -0.33, 0.2).unwrap(), 0.0);
        let xi = xi_static(j, -0.330, -0.330, 0.200).unwrap();
        assert!((xi - 277e-6).abs() < 1e-15);
        assert!(xi > 0.0);
        assert!(matches!(xi_static(0.01, -0.33, -0.33, 0.33), Err(Error::Pole { .. })));
        assert!(matches!(j_from_xi(-277e-6, -0.33, -0.33, 0.2), Err(Error::Domain(_))));
    }

    #[test]
    fn drive_frequency_decoupled_two_level() {
        let p = DeviceParams {
            j: 0.0,
            ..DeviceParams::benchmark().with_levels(2)
        };
        let f = drive_frequency(&dressed(&p));
        assert_eq!(f.target, p.omega2);
        assert!((f.control - p.omega1).abs() < 1e-12);
    }

    #[test]
    fn drive_frequency_shifts_are_second_order() {
        let p = DeviceParams::benchmark();
        let f = drive_frequency(&dressed(&p));
        let scale = p.j * p.j / p.detuning();
        assert!((f.target - p.omega2).abs() < 1e-3);
        assert!((f.target - p.omega2).abs() < 5.0 * scale);
        assert!(((f.control - f.target) - p.detuning()).abs() < 5.0 * scale);
    }

    #[test]
    fn drift_in_target_frame() {
        let p = DeviceParams::benchmark();
        let d = dressed(&p);
        let f = drive_frequency(&d);
        let drift = rotating_frame_drift(&d.h_tilde, f.target, p.levels).unwrap();
        let e = |a: usize, b: usize| drift.matrix()[(a * p.levels + b, a * p.levels + b)].re;
        let scale = p.j * p.j / p.detuning();
        assert!(e(0, 0).abs() < 5.0 * scale && e(0, 1).abs() < 5.0 * scale);
        assert!((e(1, 0) - p.detuning()).abs() < 5.0 * scale);
        assert!((e(1, 1) - p.detuning()).abs() < 5.0 * scale);
        let unchanged = rotating_frame_drift(&d.h_tilde, 0.0, p.levels).unwrap();
        assert_eq!(unchanged.matrix(), d.h_tilde.matrix());
    }

    #[test]
    fn resonant_two_level_drift_vanishes() {
        let p = DeviceParams {
            omega1: 5.0,
            omega2: 5.0,
            j: 0.0,
            ..DeviceParams::benchmark().with_levels(2)
        };
        let d = dressed(&p);
        let drift = rotating_frame_drift(&d.h_tilde, 5.0, 2).unwrap();
        assert!(max_abs(drift.matrix()) < 1e-15);
    }

    #[test]
    fn bare_two_level_rwa() {
        let p = DeviceParams {
            j: 0.0,
            ..DeviceParams::benchmark().with_levels(2)
        };
        let omega = 0.03;
        let h = rwa_drive(&dressed(&p), &DriveSpec::control_x(omega));
        let x = crate::operators::Pauli::X.matrix().kronecker(&Mat::identity(2, 2)) * c(omega / 2.0);
        assert!(max_abs(&(h.matrix() - x)) < 1e-15);
    }

    #[test]
    fn selection_rule_and_hermiticity() {
        let p = DeviceParams::benchmark().with_levels(4);
        let d = dressed(&p);
        let drive = DriveSpec::with_crosstalk(0.05, &CrosstalkSpec::new(0.3, 0.4, -0.62).unwrap());
        let h = rwa_drive(&d, &drive);
        let exc = excitations(4);
        for r in 0..16 {
            for col in 0..16 {
                if (exc[r] - exc[col]).abs() != 1 {
                    assert_eq!(h.matrix()[(r, col)], C64::new(0.0, 0.0));
                }
            }
        }
        let full = rwa_hamiltonian(&d, &drive, 4.9).unwrap();
        assert!(hermitian_defect(full.matrix()) == 0.0);
        // <20|H|00> skips one excitation rung.
        assert_eq!(h.matrix()[(2 * 4, 0)], C64::new(0.0, 0.0));
    }

    #[test]
    fn phase_shifted_drive_weights_raising_entries() {
        let p = DeviceParams {
            j: 0.0,
            ..DeviceParams::benchmark().with_levels(2)
        };
        let (omega, phi) = (0.02, 0.7);
        let drive = DriveSpec::with_crosstalk(omega, &CrosstalkSpec::new(0.0, phi, 0.0).unwrap());
        // cos(a + b) = cos a cos b - sin a sin b
        assert!((drive.omega_x[0] - omega * phi.cos()).abs() < 1e-18);
        assert!((drive.omega_y[0] + omega * phi.sin()).abs() < 1e-18);
        let h = rwa_drive(&dressed(&p), &drive);
        let raising = h.matrix()[(2, 0)];
        let expected = C64::from_polar(omega / 2.0, phi);
        assert!((raising - expected).norm() < 1e-15);
    }

    #[test]
    fn crosstalk_off_ignores_target_phase() {
        let p = DeviceParams::benchmark().with_levels(3);
        let d = dressed(&p);
        let a = rwa_drive(&d, &DriveSpec::with_crosstalk(0.04, &CrosstalkSpec::new(0.0, 0.0, 0.1).unwrap()));
        let b = rwa_drive(&d, &DriveSpec::with_crosstalk(0.04, &CrosstalkSpec::new(0.0, 0.0, -2.3).unwrap()));
        assert_eq!(a.matrix(), b.matrix());
        assert!(CrosstalkSpec::new(1.5, 0.0, 0.0).is_err());
    }
}
